//! Small exact-integer helpers shared by the other modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Returns `(g, x, y)` with `g = gcd(a, b) >= 0` and `a*x + b*y = g`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Inverse of `a` modulo `m` (`m > 0`), reduced into `[0, m)`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let (g, x, _) = ext_gcd(a, m);
    if g.is_one() {
        Some(x.mod_floor(m))
    } else {
        None
    }
}

pub fn gcd3(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    a.gcd(b).gcd(c)
}

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    n.sqrt()
}

/// `Some(r)` with `r >= 0` and `r*r = n` when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Positive divisors of `n != 0` in increasing order, by trial division up to `sqrt|n|`.
pub fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Whether `n > 1` is prime (trial division).
pub fn is_prime(n: &BigInt) -> bool {
    if n <= &BigInt::one() {
        return false;
    }
    let mut d = BigInt::from(2);
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            return false;
        }
        d += 1;
    }
    true
}

/// Whether `n` equals `p^k` for a prime `p` and `k` in {0, 1, 2}.
pub fn is_unit_prime_or_prime_square(n: &BigInt) -> bool {
    if n.is_one() || is_prime(n) {
        return true;
    }
    match exact_sqrt(n) {
        Some(r) => is_prime(&r),
        None => false,
    }
}

/// Residue of `a` modulo 4 in `[0, 4)`.
pub fn mod4(a: &BigInt) -> u8 {
    let r = a.mod_floor(&BigInt::from(4));
    r.try_into().expect("residue fits in u8")
}

/// Checks that `d` is a nonzero discriminant (`d = 0, 1 mod 4`).
pub fn is_discriminant(d: &BigInt) -> bool {
    !d.is_zero() && matches!(mod4(d), 0 | 1)
}

/// Integer division that must be exact; panics otherwise (internal invariant).
pub(crate) fn div_exact(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    assert!(r.is_zero(), "inexact division {a} / {b}");
    q
}
