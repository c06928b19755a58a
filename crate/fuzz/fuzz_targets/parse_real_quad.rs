#![no_main]

use ks_core::scalars::parse_real_quad;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&d, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let d = u32::from(d % 16);
    if let Ok(x) = parse_real_quad(text, d) {
        assert_eq!(parse_real_quad(&x.to_string(), d).unwrap(), x);
    }
});
