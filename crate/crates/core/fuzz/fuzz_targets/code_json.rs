#![no_main]

use codeweld::{from_json, to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(code) = from_json(s) {
        assert_eq!(from_json(&to_json(&code)).unwrap(), code);
    }
});
