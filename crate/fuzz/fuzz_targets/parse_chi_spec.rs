#![no_main]

use gl2_tempered::harness::ChiSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(spec) = ChiSpec::parse(data) {
        assert_eq!(ChiSpec::parse(&spec.to_string()).unwrap(), spec);
        // resolving at a small prime must not panic either
        let _ = spec.resolve(3);
    }
});
