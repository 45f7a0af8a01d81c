#![no_main]

use codeweld::QubitIdentification;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(ident) = QubitIdentification::parse(s) {
        assert_eq!(QubitIdentification::parse(&ident.to_text()).unwrap(), ident);
    }
});
