#![no_main]

use leibrack::formats::{parse_rack, rack_to_value};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(x) = parse_rack(text) {
            let again = parse_rack(&rack_to_value(&x).to_string()).expect("round trip");
            assert_eq!(again.table(), x.table());
        }
    }
});
