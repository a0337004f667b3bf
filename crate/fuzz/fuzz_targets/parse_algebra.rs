#![no_main]

use leibrack::formats::{algebra_to_value, parse_algebra, parse_algebra_unchecked};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_algebra_unchecked(text);
        if let Ok(h) = parse_algebra(text) {
            let again = parse_algebra(&algebra_to_value(&h).to_string()).expect("round trip");
            assert_eq!(algebra_to_value(&again), algebra_to_value(&h));
        }
    }
});
