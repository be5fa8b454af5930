#![no_main]

use gl2_tempered::arith::is_odd_prime;
use gl2_tempered::harness::parse_primes;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(primes) = parse_primes(data) {
        assert!(!primes.is_empty());
        assert!(primes.windows(2).all(|w| w[0] < w[1]));
        assert!(primes.iter().all(|&p| is_odd_prime(p)));
    }
});
