#![no_main]

use codeweld::{from_text, to_text};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(code) = from_text(s) {
        assert_eq!(from_text(&to_text(&code)).unwrap(), code);
    }
});
