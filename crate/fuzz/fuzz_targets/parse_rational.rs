#![no_main]

use gl2_tempered::padic::{format_rational, parse_rational};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(x) = parse_rational(data) {
        assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }
});
