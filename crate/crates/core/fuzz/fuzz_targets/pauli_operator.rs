#![no_main]

use codeweld::PauliOperator;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = PauliOperator::parse(s) {
        assert_eq!(PauliOperator::parse(&p.to_sparse()).unwrap(), p);
        if p.n() <= 4096 {
            assert_eq!(PauliOperator::parse(&p.to_dense()).unwrap(), p);
        }
    }
});
