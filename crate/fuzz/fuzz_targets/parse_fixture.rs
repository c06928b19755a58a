#![no_main]

use ks_core::fixture::{parse_fixture, serialize};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_fixture(text) {
        let again = parse_fixture(&serialize(&f)).expect("serialized fixture parses");
        assert_eq!(again, f);
    }
});
