#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::Zero;
use qforms::lattice::{pair_primitive, GrossVector, KleinPair, Plane};
use qforms::{Form, Mat2, Unimodular};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn b(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn f(a: i64, bb: i64, c: i64) -> Form {
    Form::new(a, bb, c).unwrap()
}

/// A product of `len` random letters from S, T, T^-1.
pub fn random_word(rng: &mut StdRng, len: usize) -> Unimodular {
    let t_inv = Unimodular::t().inverse();
    let mut g = Unimodular::identity();
    for _ in 0..len {
        let letter = match rng.gen_range(0..3) {
            0 => Unimodular::s(),
            1 => Unimodular::t(),
            _ => t_inv.clone(),
        };
        g = g.compose(&letter);
    }
    g
}

/// A random form with coefficients in `[-r, r]` and nonzero discriminant.
pub fn random_form(rng: &mut StdRng, r: i64) -> Form {
    loop {
        let (a, bb, c) = (rng.gen_range(-r..=r), rng.gen_range(-r..=r), rng.gen_range(-r..=r));
        if let Ok(q) = Form::new(a, bb, c) {
            if !q.discriminant().is_zero() {
                return q;
            }
        }
    }
}

/// A random form of discriminant `d` with `|b| <= r`, if one is found quickly.
pub fn random_form_with_disc(rng: &mut StdRng, d: i64, r: i64) -> Option<Form> {
    for _ in 0..200 {
        let bb = rng.gen_range(-r..=r);
        if (bb * bb - d) % 4 != 0 {
            continue;
        }
        let ac = (bb * bb - d) / 4;
        if ac == 0 {
            let other = rng.gen_range(-r..=r);
            let q = if rng.gen_bool(0.5) {
                Form::new(0, bb, other)
            } else {
                Form::new(other, bb, 0)
            };
            if let Ok(q) = q {
                return Some(q);
            }
            continue;
        }
        let divisors: Vec<i64> = (1..=ac.abs())
            .filter(|k| ac % k == 0 && *k <= r && (ac / k).abs() <= r)
            .collect();
        if divisors.is_empty() {
            continue;
        }
        let mut a = divisors[rng.gen_range(0..divisors.len())];
        if rng.gen_bool(0.5) {
            a = -a;
        }
        return Some(Form::new(a, bb, ac / a).unwrap());
    }
    None
}

/// A random pair-primitive Klein pair whose Gross coordinates lie in `[-r, r]`.
pub fn random_klein_pair(rng: &mut StdRng, r: i64) -> KleinPair {
    loop {
        let q1 = random_form(rng, r);
        let d: i64 = q1.discriminant().try_into().unwrap();
        let Some(q2) = random_form_with_disc(rng, d, r) else {
            continue;
        };
        let (a1, a2) = (GrossVector::from_form(&q1), GrossVector::from_form(&q2));
        if pair_primitive(&a1, &a2) {
            return KleinPair::new(a1, a2);
        }
    }
}

/// A random plane spanned by two integer matrices with entries in `[-r, r]`
/// and nonzero discriminant.
pub fn random_plane(rng: &mut StdRng, r: i64) -> Plane {
    loop {
        let mut m = || {
            Mat2::new(
                rng.gen_range(-r..=r),
                rng.gen_range(-r..=r),
                rng.gen_range(-r..=r),
                rng.gen_range(-r..=r),
            )
        };
        let (v1, v2) = (m(), m());
        if let Ok(l) = Plane::new(&v1, &v2) {
            if let Ok(q) = qforms::lattice::q_of_plane(&l) {
                if !q.discriminant().is_zero() {
                    return l;
                }
            }
        }
    }
}
