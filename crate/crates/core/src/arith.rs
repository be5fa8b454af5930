//! Small-integer number theory used across the crate.

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d <= n / d {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn is_odd_prime(n: u64) -> bool {
    n > 2 && is_prime(n)
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn num_divisors(n: u64) -> u64 {
    factorize(n).iter().map(|&(_, e)| e as u64 + 1).product()
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Legendre symbol (a/p) for an odd prime p.
pub fn legendre(a: i64, p: u64) -> i32 {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

pub fn smallest_nonresidue(p: u64) -> u64 {
    (2..p).find(|&n| legendre(n as i64, p) == -1).expect("odd prime has a non-residue")
}

/// Smallest primitive root modulo p^2. It generates (Z/p^m)^x for every m >= 1.
pub fn primitive_root(p: u64) -> u64 {
    let order = p * (p - 1);
    let primes: Vec<u64> = factorize(order).into_iter().map(|(l, _)| l).collect();
    let m = p * p;
    (2..m)
        .find(|&g| g % p != 0 && primes.iter().all(|&l| pow_mod(g, order / l, m) != 1))
        .expect("odd prime powers have primitive roots")
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn ipow(base: u64, exp: u32) -> u64 {
    base.checked_pow(exp).expect("integer power overflow")
}

/// Largest n with phi(n) <= bound.
pub fn largest_with_phi_at_most(bound: u64) -> u64 {
    // phi(n) >= sqrt(n/2), so n <= 2 bound^2 covers every candidate
    let limit = 2 * bound * bound + 2;
    (1..=limit).rev().find(|&n| euler_phi(n) <= bound).unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_small() {
        let phis: Vec<u64> = (1..=12).map(euler_phi).collect();
        assert_eq!(phis, vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
    }

    #[test]
    fn primitive_roots_generate_prime_squares() {
        for p in [3u64, 5, 7, 11, 13, 29, 487] {
            let g = primitive_root(p);
            let m = p * p;
            let mut x = 1;
            let mut order = 0;
            loop {
                x = x * g % m;
                order += 1;
                if x == 1 {
                    break;
                }
            }
            assert_eq!(order, p * (p - 1), "p = {p}");
        }
        // 10 is a primitive root mod 487 but not mod 487^2
        assert_ne!(primitive_root(487), 10);
    }

    #[test]
    fn phi_cutoff() {
        assert_eq!(largest_with_phi_at_most(2), 6);
        assert_eq!(largest_with_phi_at_most(4), 12);
        assert_eq!(largest_with_phi_at_most(8), 30);
    }

    #[test]
    fn divisor_helpers() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(num_divisors(36), 9);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(binomial(4, 2), 6);
    }
}
