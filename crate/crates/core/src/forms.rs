//! Integral binary quadratic forms `ax^2 + bxy + cy^2` and their proper
//! (SL2(Z)) equivalence classes.
//!
//! The action of SL2(Z) is the one for which the Gross-lattice embedding
//! `A(q) = ((b, 2a), (-2c, -b))` is equivariant with conjugation:
//! `A(g.q) = g A(q) g^-1`. For `g = ((p, q), (r, s))` this works out to the
//! substitution `(g.f)(x, y) = f(px - ry, -qx + sy)`.
//!
//! Canonical representatives depend on the sign of the discriminant:
//!
//! * `D < 0`: the Gauss-reduced form `|b| <= a <= c` (with `b >= 0` when
//!   `|b| = a` or `a = c`); negative definite forms are reduced through `neg`.
//! * `D > 0` not a square: the lexicographically least form on the cycle of
//!   reduced forms produced by the rho operator.
//! * `D = N^2`: `m * (a x^2 + N' xy)` with `m` the content, `N' = N / m` and
//!   `0 <= a < N'`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, div_exact, ext_gcd, isqrt};
use crate::error::{Error, Result};
use crate::mat2::Mat2;

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Form {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl Form {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let f = Form {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        };
        if f.a.is_zero() && f.b.is_zero() && f.c.is_zero() {
            return Err(Error::ZeroForm);
        }
        Ok(f)
    }

    /// Constructor for coefficients already known to be not all zero.
    pub(crate) fn raw(a: BigInt, b: BigInt, c: BigInt) -> Self {
        debug_assert!(!(a.is_zero() && b.is_zero() && c.is_zero()));
        Form { a, b, c }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn coefficients(&self) -> [BigInt; 3] {
        [self.a.clone(), self.b.clone(), self.c.clone()]
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn content(&self) -> BigInt {
        arith::gcd3(&self.a, &self.b, &self.c)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    /// `f(x, y) -> f(-x, y)`, i.e. `(a, -b, c)`.
    pub fn bar(&self) -> Form {
        Form::raw(self.a.clone(), -&self.b, self.c.clone())
    }

    pub fn neg(&self) -> Form {
        Form::raw(-&self.a, -&self.b, -&self.c)
    }

    pub fn scale(&self, k: &BigInt) -> Form {
        assert!(!k.is_zero());
        Form::raw(&self.a * k, &self.b * k, &self.c * k)
    }

    /// The primitive form `f / content(f)`.
    pub fn primitive_part(&self) -> Form {
        let m = self.content();
        Form::raw(div_exact(&self.a, &m), div_exact(&self.b, &m), div_exact(&self.c, &m))
    }

    /// `f(p x + q y, r x + s y)` for an arbitrary integer matrix `((p, q), (r, s))`.
    pub(crate) fn substitute(&self, m: &Mat2) -> Form {
        let [p, q, r, s] = m.entries();
        let a = self.eval(&p, &r);
        let c = self.eval(&q, &s);
        let b =
            BigInt::from(2) * &self.a * &p * &q + &self.b * (&p * &s + &q * &r) + BigInt::from(2) * &self.c * &r * &s;
        Form::raw(a, b, c)
    }

    /// The left action `g.f`, normalised so that `A(g.f) = g A(f) g^-1`.
    pub fn act(&self, g: &Unimodular) -> Form {
        let [p, q, r, s] = g.0.entries();
        self.substitute(&Mat2::new(p, -r, -q, s))
    }

    /// `x -> x + t y`: `(a, b + 2at, at^2 + bt + c)`.
    pub(crate) fn translate(&self, t: &BigInt) -> Form {
        let b = &self.b + BigInt::from(2) * &self.a * t;
        let c = &self.a * t * t + &self.b * t + &self.c;
        Form::raw(self.a.clone(), b, c)
    }

    /// `(x, y) -> (-y, x)`: `(c, -b, a)`.
    fn flip(&self) -> Form {
        Form::raw(self.c.clone(), -&self.b, self.a.clone())
    }

    pub fn canonical(&self) -> Result<Form> {
        let d = self.discriminant();
        match d.sign() {
            num_bigint::Sign::NoSign => Err(Error::ZeroDiscriminant),
            num_bigint::Sign::Minus => Ok(self.reduce_definite()),
            num_bigint::Sign::Plus => match arith::exact_sqrt(&d) {
                Some(n) => Ok(self.reduce_square(&n)),
                None => Ok(self.reduce_indefinite(&d)),
            },
        }
    }

    pub fn is_equivalent(&self, other: &Form) -> Result<bool> {
        let (c1, c2) = (self.canonical()?, other.canonical()?);
        Ok(c1 == c2)
    }

    fn reduce_definite(&self) -> Form {
        if self.a.is_negative() {
            return self.neg().reduce_definite().neg();
        }
        let mut f = self.clone();
        loop {
            f = f.normalize_definite();
            if f.a > f.c {
                f = f.flip();
            } else {
                break;
            }
        }
        if f.a == f.c && f.b.is_negative() {
            f.b = -f.b;
        }
        f
    }

    /// Translate so that `-a < b <= a` (requires `a > 0`).
    fn normalize_definite(&self) -> Form {
        let two_a = BigInt::from(2) * &self.a;
        // t = floor((a - b) / 2a) moves b into (-a, a].
        let t = (&self.a - &self.b).div_floor(&two_a);
        self.translate(&t)
    }

    fn reduce_indefinite(&self, d: &BigInt) -> Form {
        let s = isqrt(d);
        let mut f = normalize_indefinite(self, &s);
        while !is_reduced_indefinite(&f, &s) {
            f = rho(&f, &s);
        }
        reduced_cycle(&f, &s).into_iter().min().expect("cycle is non-empty")
    }

    fn reduce_square(&self, n: &BigInt) -> Form {
        let m = self.content();
        let p = self.primitive_part();
        let n_prim = div_exact(n, &m);
        let a = square_residue(&p, &n_prim);
        Form::raw(&m * a, n.clone(), BigInt::zero())
    }
}

/// The residue `a mod n` with `[f] = [a x^2 + n xy]`, for primitive `f` of
/// discriminant `n^2`.
///
/// `f` factors as `(alpha x + gamma y)(beta x + delta y)` with
/// `alpha delta - beta gamma = n`; moving the first factor to `x` by an
/// SL2(Z) substitution leaves `x (a x + n y)`.
pub(crate) fn square_residue(f: &Form, n: &BigInt) -> BigInt {
    let (alpha, gamma, beta, delta) = square_factors(f, n);
    let (g, u, v) = ext_gcd(&alpha, &gamma);
    debug_assert!(g.is_one());
    let a = &u * &beta + &v * &delta;
    if n.is_one() {
        BigInt::zero()
    } else {
        a.mod_floor(n)
    }
}

/// Integer linear factors `(alpha, gamma, beta, delta)` of a primitive form
/// of square discriminant `n^2`, labelled so that `alpha delta - beta gamma = n`.
fn square_factors(f: &Form, n: &BigInt) -> (BigInt, BigInt, BigInt, BigInt) {
    let (alpha, gamma, beta, delta) = if f.a.is_zero() {
        // y (b x + c y)
        (BigInt::zero(), BigInt::one(), f.b.clone(), f.c.clone())
    } else {
        // root x/y = (-b + n) / 2a = num/den in lowest terms, den > 0
        let mut num = -&f.b + n;
        let mut den = BigInt::from(2) * &f.a;
        let g = num.gcd(&den);
        num = div_exact(&num, &g);
        den = div_exact(&den, &g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        // f = (den x - num y)(beta x + delta y)
        let beta = div_exact(&f.a, &den);
        let delta = div_exact(&(&f.b + &beta * &num), &den);
        (den, -num, beta, delta)
    };
    let det = &alpha * &delta - &beta * &gamma;
    if &det == n {
        (alpha, gamma, beta, delta)
    } else {
        debug_assert_eq!(det, -n);
        (beta, delta, alpha, gamma)
    }
}

/// Indefinite normalisation with `s = floor(sqrt(D))`, `D` not a square:
/// `b` in `(-|a|, |a|]` when `|a| > sqrt(D)`, in `(sqrt(D) - 2|a|, sqrt(D))` otherwise.
fn normalize_indefinite(f: &Form, s: &BigInt) -> Form {
    let abs_a = f.a.abs();
    let two_abs_a = BigInt::from(2) * &abs_a;
    let lower = if &abs_a > s { -&abs_a + 1 } else { s - &two_abs_a + 1 };
    // smallest b' >= lower with b' = b mod 2|a|
    let gap: BigInt = &f.b - &lower;
    let b_new = &lower + gap.mod_floor(&two_abs_a);
    let shift = div_exact(&(&b_new - &f.b), &two_abs_a);
    let t = if f.a.is_negative() { -shift } else { shift };
    f.translate(&t)
}

fn is_reduced_indefinite(f: &Form, s: &BigInt) -> bool {
    let two_abs_a = BigInt::from(2) * f.a.abs();
    f.b.is_positive() && &f.b <= s && &(&two_abs_a - &f.b) <= s && &(&two_abs_a + &f.b) > s
}

fn rho(f: &Form, s: &BigInt) -> Form {
    normalize_indefinite(&f.flip(), s)
}

/// All reduced forms on the rho-cycle of the reduced form `f`.
fn reduced_cycle(f: &Form, s: &BigInt) -> Vec<Form> {
    let mut cycle = vec![f.clone()];
    let mut g = rho(f, s);
    while &g != f {
        cycle.push(g.clone());
        g = rho(&g, s);
    }
    cycle
}

/// Every reduced indefinite form of (non-square) discriminant `d > 0`.
pub(crate) fn reduced_indefinite_forms(d: &BigInt) -> Vec<Form> {
    let s = isqrt(d);
    let mut out = Vec::new();
    let mut b = BigInt::one();
    while b <= s {
        let bb = &b * &b - d;
        if (&bb % 4u8).is_zero() {
            let ac = div_exact(&bb, &BigInt::from(4));
            for abs_a in arith::positive_divisors(&ac) {
                let two_abs_a = BigInt::from(2) * &abs_a;
                if (&two_abs_a - &b) <= s && (&two_abs_a + &b) > s {
                    for a in [abs_a.clone(), -&abs_a] {
                        let c = div_exact(&ac, &a);
                        out.push(Form::raw(a, b.clone(), c));
                    }
                }
            }
        }
        b += 1;
    }
    out
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

/// An element of SL2(Z).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Unimodular(Mat2);

impl Unimodular {
    pub fn new(m: Mat2) -> Result<Self> {
        let d = m.det();
        if !d.is_one() {
            return Err(Error::NotUnimodular(d));
        }
        Ok(Unimodular(m))
    }

    pub fn from_entries(p: i64, q: i64, r: i64, s: i64) -> Result<Self> {
        Unimodular::new(Mat2::new(p, q, r, s))
    }

    pub fn identity() -> Self {
        Unimodular(Mat2::identity())
    }

    /// `((0, -1), (1, 0))`.
    pub fn s() -> Self {
        Unimodular(Mat2::new(0, -1, 1, 0))
    }

    /// `((1, 1), (0, 1))`.
    pub fn t() -> Self {
        Unimodular(Mat2::new(1, 1, 0, 1))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn inverse(&self) -> Unimodular {
        Unimodular(self.0.bar())
    }

    pub fn compose(&self, other: &Unimodular) -> Unimodular {
        Unimodular(&self.0 * &other.0)
    }
}

/// A proper equivalence class, stored by its canonical representative.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FormClass {
    representative: Form,
    discriminant: BigInt,
}

impl FormClass {
    pub fn of(f: &Form) -> Result<Self> {
        Ok(FormClass {
            representative: f.canonical()?,
            discriminant: f.discriminant(),
        })
    }

    pub fn representative(&self) -> &Form {
        &self.representative
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.discriminant
    }

    pub fn content(&self) -> BigInt {
        self.representative.content()
    }

    pub fn is_primitive(&self) -> bool {
        self.representative.is_primitive()
    }

    /// Class of `bar` of the representative; the group inverse on primitive classes.
    pub fn bar(&self) -> FormClass {
        FormClass::of(&self.representative.bar()).expect("nonzero discriminant")
    }

    pub fn neg(&self) -> FormClass {
        FormClass::of(&self.representative.neg()).expect("nonzero discriminant")
    }
}

impl Ord for FormClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.discriminant
            .cmp(&other.discriminant)
            .then_with(|| self.representative.cmp(&other.representative))
    }
}

impl PartialOrd for FormClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FormClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.representative.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(a: i64, b: i64, c: i64) -> Form {
        Form::new(a, b, c).unwrap()
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(f(1, 1, 6).discriminant(), BigInt::from(-23));
        assert_eq!(f(0, 1, 0).discriminant(), BigInt::from(1));
        assert!(f(1, 0, 0).discriminant().is_zero());
        assert_eq!(f(9, 13, 4).discriminant(), BigInt::from(25));
    }

    #[test]
    fn content_examples() {
        assert_eq!(f(2, 4, 6).content(), BigInt::from(2));
        assert_eq!(f(2, 1, 3).content(), BigInt::from(1));
        assert_eq!(f(-6, -5, -2).content(), BigInt::from(1));
    }

    #[test]
    fn zero_form_rejected() {
        assert!(matches!(Form::new(0, 0, 0), Err(Error::ZeroForm)));
    }

    #[test]
    fn act_examples() {
        let g = f(3, -7, 2);
        assert_eq!(g.act(&Unimodular::identity()), g);
        assert_eq!(f(6, 1, 1).act(&Unimodular::s()), f(1, -1, 6));
        // conjugation by T sends (a, b, c) to (a - b + c, b - 2c, c)
        assert_eq!(f(1, -1, 6).act(&Unimodular::t()), f(8, -13, 6));
        // the translation b -> b + 2a comes from the lower unipotent matrix
        let lower = Unimodular::from_entries(1, 0, -1, 1).unwrap();
        assert_eq!(f(1, -1, 6).act(&lower), f(1, 1, 6));
    }

    #[test]
    fn unimodular_rejects_bad_det() {
        assert!(matches!(
            Unimodular::from_entries(1, 1, 1, 1),
            Err(Error::NotUnimodular(_))
        ));
        assert!(matches!(
            Unimodular::from_entries(0, 1, 1, 0),
            Err(Error::NotUnimodular(_))
        ));
    }

    #[test]
    fn bar_and_neg() {
        assert_eq!(f(2, 1, 3).bar(), f(2, -1, 3));
        assert_eq!(f(1, 0, 5).bar(), f(1, 0, 5));
        assert_eq!(f(1, 1, 6).neg(), f(-1, -1, -6));
        let g = f(4, -9, -11);
        assert_eq!(g.bar().bar(), g);
        assert_eq!(g.neg().neg(), g);
        assert_eq!(g.neg().bar(), g.bar().neg());
        assert_eq!(g.neg().discriminant(), g.discriminant());
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(f(4, -11, 9).canonical().unwrap(), f(2, -1, 3));
        assert_eq!(f(9, 13, 4).canonical().unwrap(), f(4, 5, 0));
        assert_eq!(f(1, 1, 6).canonical().unwrap(), f(1, 1, 6));
        assert_eq!(f(-6, -5, -2).canonical().unwrap(), f(-2, 1, -3));
        assert!(matches!(f(1, 2, 1).canonical(), Err(Error::ZeroDiscriminant)));
    }

    #[test]
    fn definite_tie_breaks() {
        // a = c forces b >= 0; |b| = a forces b >= 0
        assert_eq!(f(2, -1, 2).canonical().unwrap(), f(2, 1, 2));
        assert_eq!(f(2, -2, 3).canonical().unwrap(), f(2, 2, 3));
    }

    #[test]
    fn square_discriminant_with_content() {
        // 3 * (9, 13, 4) has discriminant 225 = 15^2
        assert_eq!(f(27, 39, 12).canonical().unwrap(), f(12, 15, 0));
        assert_eq!(f(0, 1, 0).canonical().unwrap(), f(0, 1, 0));
        assert_eq!(f(5, 1, 0).canonical().unwrap(), f(0, 1, 0));
        assert_eq!(f(0, -1, 7).canonical().unwrap(), f(0, 1, 0));
    }

    #[test]
    fn equivalence_examples() {
        assert!(!f(2, 1, 3).is_equivalent(&f(2, -1, 3)).unwrap());
        assert!(f(6, -1, 1).is_equivalent(&f(1, 1, 6)).unwrap());
        assert!(matches!(
            f(1, 2, 1).is_equivalent(&f(1, 1, 6)),
            Err(Error::ZeroDiscriminant)
        ));
    }

    #[test]
    fn reduced_indefinite_example() {
        // D = 145: [2, 1, -18] is equivalent to a reduced form on a cycle
        let c = f(2, 1, -18).canonical().unwrap();
        assert_eq!(c.discriminant(), BigInt::from(145));
        assert_eq!(c.canonical().unwrap(), c);
    }

    fn word() -> impl Strategy<Value = Vec<u8>> {
        prop::collection::vec(0u8..3, 0..16)
    }

    fn apply_word(w: &[u8]) -> Unimodular {
        let t_inv = Unimodular::t().inverse();
        w.iter().fold(Unimodular::identity(), |acc, &l| {
            let g = match l {
                0 => Unimodular::s(),
                1 => Unimodular::t(),
                _ => t_inv.clone(),
            };
            acc.compose(&g)
        })
    }

    proptest! {
        #[test]
        fn action_preserves_invariants(a in -30i64..30, b in -30i64..30, c in -30i64..30, w in word()) {
            prop_assume!(a != 0 || b != 0 || c != 0);
            let q = f(a, b, c);
            let g = apply_word(&w);
            let gq = q.act(&g);
            prop_assert_eq!(gq.discriminant(), q.discriminant());
            prop_assert_eq!(gq.content(), q.content());
        }

        #[test]
        fn action_is_left_action(a in -20i64..20, b in -20i64..20, c in -20i64..20, w1 in word(), w2 in word()) {
            prop_assume!(a != 0 || b != 0 || c != 0);
            let q = f(a, b, c);
            let (g, h) = (apply_word(&w1), apply_word(&w2));
            prop_assert_eq!(q.act(&g.compose(&h)), q.act(&h).act(&g));
        }

        #[test]
        fn canonical_constant_on_orbits(a in -40i64..40, b in -40i64..40, c in -40i64..40, w in word()) {
            prop_assume!(b * b - 4 * a * c != 0);
            let q = f(a, b, c);
            let can = q.canonical().unwrap();
            prop_assert_eq!(can.canonical().unwrap(), can.clone());
            prop_assert_eq!(q.act(&apply_word(&w)).canonical().unwrap(), can.clone());
            prop_assert_eq!(can.discriminant(), q.discriminant());
            prop_assert_eq!(can.content(), q.content());
        }
    }
}
