#![no_main]

use leibrack::formats::{parse_poly, poly_to_document};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(f) = parse_poly(text, None) {
            let again =
                parse_poly(&poly_to_document(&f).to_string(), Some(f.nvars())).expect("round trip");
            assert_eq!(again, f);
        }
    }
});
