#![no_main]

use gl2_tempered::harness::parse_matrix;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(m) = parse_matrix(data) {
        assert_eq!(parse_matrix(&m.to_string()).unwrap(), m);
        assert!(m.mul(&m.inverse()).is_identity());
    }
});
