use std::fs;
use std::path::PathBuf;

use leibrack::formats::{parse_algebra_unchecked, parse_poly, parse_problem, parse_rack};
use leibrack::foundation::parse_scalar;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            (
                path.display().to_string(),
                fs::read_to_string(&path).unwrap(),
            )
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn seeds_are_valid_inputs() {
    for (path, text) in seeds("parse_scalar") {
        assert!(parse_scalar(&text).is_ok(), "{path}");
    }
    for (path, text) in seeds("parse_algebra") {
        assert!(parse_algebra_unchecked(&text).is_ok(), "{path}");
    }
    for (path, text) in seeds("parse_rack") {
        assert!(parse_rack(&text).is_ok(), "{path}");
    }
    for (path, text) in seeds("parse_poly") {
        assert!(parse_poly(&text, None).is_ok(), "{path}");
    }
    for (path, text) in seeds("parse_problem") {
        assert!(parse_problem(&text).is_ok(), "{path}");
    }
}
