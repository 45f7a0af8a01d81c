#![no_main]

use codeweld::builders::WeldGraph;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(g) = WeldGraph::parse(s) {
        let back = WeldGraph::parse(&g.to_text()).unwrap();
        assert_eq!(back.edges(), g.edges());
    }
});
