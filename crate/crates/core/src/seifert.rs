//! Decision procedures for pairs of genus-one Seifert forms of a knot with
//! determinant `|D|`, `D = 1 mod 4`.
//!
//! Two classes `s1, s2` are realized by disjoint Seifert surfaces iff
//! `t^2 * s1 = s2` for some special class `t = [a x^2 + xy + c y^2]`,
//! `1 - 4ac = D`. Realized pairs with `s1 not in {s2, bar(s2)}` are not
//! isotopic in the 4-ball.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::arith;
use crate::compose::{
    class_compose, class_group, classes_with_content, identity, phi_n, special_form, special_pairs, special_square,
};
use crate::error::{Error, Result};
use crate::forms::FormClass;
use crate::lattice::{is_symplectic, klein_inverse, q_of_plane, symplectic_complement, GrossVector, KleinPair, Plane};
use crate::mat2::Mat2;

fn check_pair(s1: &FormClass, s2: &FormClass) -> Result<BigInt> {
    let (d1, d2) = (s1.discriminant(), s2.discriminant());
    if d1 != d2 {
        return Err(Error::MismatchedDiscriminant(d1.clone(), d2.clone()));
    }
    Ok(d1.clone())
}

/// The first `(a, c)` in witness order with `[a x^2 + xy + c y^2]^2 * s1 = s2`.
pub fn realizable_disjoint_pair(s1: &FormClass, s2: &FormClass) -> Result<Option<(BigInt, BigInt)>> {
    let d = check_pair(s1, s2)?;
    for (a, c) in special_pairs(&d)? {
        if &class_compose(&special_square(&a, &c)?, s1)? == s2 {
            return Ok(Some((a, c)));
        }
    }
    Ok(None)
}

/// `s1` differs from both `s2` and `bar(s2)`.
pub fn b4_distinguishable(s1: &FormClass, s2: &FormClass) -> Result<bool> {
    check_pair(s1, s2)?;
    Ok(s1 != s2 && *s1 != s2.bar())
}

/// The first `(a, c)` whose special class has nontrivial square.
pub fn nonisotopic_exists(d: &BigInt) -> Result<Option<(BigInt, BigInt)>> {
    let id = identity(d)?;
    for (a, c) in special_pairs(d)? {
        if special_square(&a, &c)? != id {
            return Ok(Some((a, c)));
        }
    }
    Ok(None)
}

/// The first `(a, c)` whose special class has nontrivial fourth power.
pub fn prescribed_form_exists(d: &BigInt) -> Result<Option<(BigInt, BigInt)>> {
    let id = identity(d)?;
    for (a, c) in special_pairs(d)? {
        let sq = special_square(&a, &c)?;
        if class_compose(&sq, &sq)? != id {
            return Ok(Some((a, c)));
        }
    }
    Ok(None)
}

/// For `D < 0`: a non-isotopic pair exists iff `(1 - D)/4` is not `1`, a
/// prime, or the square of a prime.
pub fn negdisc_criterion(d: &BigInt) -> Result<bool> {
    if !d.is_negative() {
        return Err(Error::NotNegative(d.clone()));
    }
    if arith::mod4(d) != 1 {
        return Err(Error::NotOneMod4(d.clone()));
    }
    let m = (BigInt::one() - d) / 4;
    Ok(!arith::is_unit_prime_or_prime_square(&m))
}

/// For odd `N > 0`: a knot of determinant `N^2` with a non-isotopic pair
/// exists iff `N > 3`, checked against `phi_N(4) != 1`.
pub fn squaredisc_criterion(n: &BigInt) -> Result<bool> {
    if !n.is_positive() || n.is_even() {
        return Err(Error::NotOddPositive(n.clone()));
    }
    let closed_form = n > &BigInt::from(3);
    let via_phi = phi_n(n, &BigInt::from(4))? != identity(&(n * n))?;
    assert_eq!(closed_form, via_phi, "phi_N(4) disagrees with N > 3 at N = {n}");
    Ok(closed_form)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RealizablePair {
    pub s1: FormClass,
    pub s2: FormClass,
    pub b4_distinguishable: bool,
}

/// All unordered pairs `{s1, s2}` (with `s1 <= s2`) realized by disjoint
/// surfaces, sorted. Primitive classes only unless `include_nonprimitive`,
/// which adds every content stratum `m * G+_{D/m^2}`.
pub fn enumerate_realizable_pairs(d: &BigInt, include_nonprimitive: bool) -> Result<Vec<RealizablePair>> {
    let pairs = special_pairs(d)?;
    let mut squares = BTreeSet::new();
    for (a, c) in &pairs {
        squares.insert(special_square(a, c)?);
    }
    let mut classes: Vec<FormClass> = class_group(d)?.elements().to_vec();
    if include_nonprimitive {
        for m in arith::positive_divisors(d) {
            if m > BigInt::one() && d.is_multiple_of(&(&m * &m)) {
                classes.extend(classes_with_content(d, &m)?);
            }
        }
    }
    classes.sort();
    classes.dedup();
    let mut out = Vec::new();
    for s1 in &classes {
        let mut partners = BTreeSet::new();
        for t in &squares {
            partners.insert(class_compose(t, s1)?);
        }
        for s2 in partners.into_iter().filter(|s2| s2 >= s1) {
            let b4 = b4_distinguishable(s1, &s2)?;
            out.push(RealizablePair {
                s1: s1.clone(),
                s2,
                b4_distinguishable: b4,
            });
        }
    }
    out.sort_by(|x, y| (&x.s1, &x.s2).cmp(&(&y.s1, &y.s2)));
    Ok(out)
}

/// The symplectic plane of the family indexed by `(p, q, k, n)` together
/// with the closed-form classes of `q_L` and `q_{L^pperp}`.
#[derive(Clone, Debug)]
pub struct FeherInstance {
    pub pair: KleinPair,
    pub plane: Plane,
    /// `(pq, 1 - 2kp, n)`.
    pub target_l: FormClass,
    /// `(pq, 2kp - 1 - 2qr, rs - 2kr + n)` with `ps - qr = 1`.
    pub target_pperp: FormClass,
    pub q_l: FormClass,
    pub q_pperp: FormClass,
    pub r: BigInt,
    pub s: BigInt,
}

impl FeherInstance {
    /// Whether the lattice computation reproduces both closed forms.
    pub fn matches(&self) -> bool {
        self.q_l == self.target_l && self.q_pperp == self.target_pperp
    }
}

pub fn feher_klein_pair(p: &BigInt, q: &BigInt, k: &BigInt, n: &BigInt) -> Result<FeherInstance> {
    let one = BigInt::one();
    if p <= &one || q <= &one {
        return Err(Error::OutOfRange(format!("p = {p}, q = {q}: both must exceed 1")));
    }
    if n < &one {
        return Err(Error::OutOfRange(format!("n = {n}: must be at least 1")));
    }
    let (g, x, y) = arith::ext_gcd(p, q);
    if !g.is_one() {
        return Err(Error::NotCoprime(p.clone(), q.clone()));
    }
    // p x + q y = 1, so s = x, r = -y gives p s - q r = 1
    let (r, s) = (-y, x);
    let two = BigInt::from(2);
    let kp = k * p;
    let a1 = Mat2::new(&two * &kp - 1, &two * q, -(&two * n * p), BigInt::one() - &two * &kp);
    let a2 = Mat2::new(1, &two * p, &two * (k * &kp - k - n * q), -1);
    let pair = KleinPair::new(GrossVector::new(a1)?, GrossVector::new(a2)?);
    let plane = klein_inverse(&pair)?;
    debug_assert!(is_symplectic(&plane)?);
    let pq = p * q;
    let target_l = FormClass::of(&crate::forms::Form::new(
        pq.clone(),
        BigInt::one() - &two * &kp,
        n.clone(),
    )?)?;
    let target_pperp = FormClass::of(&crate::forms::Form::new(
        pq,
        &two * &kp - 1 - &two * q * &r,
        &r * &s - &two * k * &r + n,
    )?)?;
    let q_l = FormClass::of(&q_of_plane(&plane)?)?;
    let q_pperp = FormClass::of(&q_of_plane(&symplectic_complement(&plane)?)?)?;
    Ok(FeherInstance {
        pair,
        plane,
        target_l,
        target_pperp,
        q_l,
        q_pperp,
        r,
        s,
    })
}

/// The special class `[a x^2 + xy + c y^2]` for a witness pair.
pub fn special_class(a: &BigInt, c: &BigInt) -> Result<FormClass> {
    FormClass::of(&special_form(a, c))
}
