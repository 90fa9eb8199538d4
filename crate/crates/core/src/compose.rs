//! Dirichlet composition, oriented class groups, special classes
//! `[ax^2 + xy + cy^2]` and the square-discriminant isomorphism
//! `(Z/N)^* -> G+_{N^2}`.
//!
//! Composition is defined for classes of equal discriminant whose contents
//! are coprime; the composite has content `m1 * m2`. Two such classes are
//! brought into the concordant layout
//!
//! ```text
//! q1 = a1 x^2 + b xy + a2 c y^2,    q2 = a2 x^2 + b xy + a1 c y^2,    gcd(a1, a2) = 1
//! ```
//!
//! and the composite is `a1 a2 x^2 + b xy + c y^2`.

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, div_exact, ext_gcd, mod_inverse};
use crate::error::{Error, Result};
use crate::forms::{self, Form, FormClass};
use crate::mat2::Mat2;

/// Replaces `f` by an equivalent form whose leading coefficient is nonzero
/// and coprime to `modulus`, searching primitively represented values
/// `f(x, y)` over boxes of doubling height. `(1, 0)` is tried first so a
/// form that already qualifies is returned unchanged.
///
/// Requires `gcd(content(f), modulus) = 1`, which guarantees such a value exists.
fn with_leading_coprime_to(f: &Form, modulus: &BigInt) -> Form {
    assert!(f.content().gcd(modulus).is_one());
    let good = |v: &BigInt| !v.is_zero() && v.gcd(modulus).is_one();
    if good(f.a()) {
        return f.clone();
    }
    let mut height: i64 = 1;
    loop {
        for y in 0..=height {
            for x in -height..=height {
                let (x, y) = (BigInt::from(x), BigInt::from(y));
                if !x.gcd(&y).is_one() {
                    continue;
                }
                if good(&f.eval(&x, &y)) {
                    let (_, u, v) = ext_gcd(&x, &y);
                    // ((x, -v), (y, u)) has determinant x u + v y = 1
                    return f.substitute(&Mat2::new(x, -v, y, u));
                }
            }
        }
        height *= 2;
    }
}

fn check_composable(f1: &Form, f2: &Form) -> Result<BigInt> {
    let (d1, d2) = (f1.discriminant(), f2.discriminant());
    if d1.is_zero() || d2.is_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    if d1 != d2 {
        return Err(Error::MismatchedDiscriminant(d1, d2));
    }
    let (m1, m2) = (f1.content(), f2.content());
    if !m1.gcd(&m2).is_one() {
        return Err(Error::NotCoprimeContent(m1, m2));
    }
    Ok(d1)
}

/// Properly equivalent representatives `(a1, b, a2 c)`, `(a2, b, a1 c)` of
/// `f1`, `f2` with `gcd(a1, a2) = 1` and `a1 a2 != 0`.
pub fn concordant_pair(f1: &Form, f2: &Form) -> Result<(Form, Form)> {
    check_composable(f1, f2)?;
    let g1 = with_leading_coprime_to(f1, &f2.content());
    let g2 = with_leading_coprime_to(f2, g1.a());
    let (a1, a2) = (g1.a().clone(), g2.a().clone());
    // b = b1 + 2 a1 t with b = b2 (mod 2 a2)
    let half_gap = div_exact(&(g2.b() - g1.b()), &BigInt::from(2));
    let m = a2.abs();
    let inv = mod_inverse(&a1, &m).expect("leading coefficients are coprime");
    let t = (half_gap * inv).mod_floor(&m);
    let h1 = g1.translate(&t);
    let t2 = div_exact(&(h1.b() - g2.b()), &(BigInt::from(2) * &a2));
    let h2 = g2.translate(&t2);
    debug_assert_eq!(h1.b(), h2.b());
    Ok((h1, h2))
}

/// Dirichlet composite `a1 a2 x^2 + b xy + c y^2` of a concordant pair.
pub fn dirichlet_compose(f1: &Form, f2: &Form) -> Result<Form> {
    let d = check_composable(f1, f2)?;
    let (h1, h2) = concordant_pair(f1, f2)?;
    let a = h1.a() * h2.a();
    let b = h1.b().clone();
    let c = div_exact(&(&b * &b - &d), &(BigInt::from(4) * &a));
    Form::new(a, b, c)
}

pub fn class_compose(s1: &FormClass, s2: &FormClass) -> Result<FormClass> {
    FormClass::of(&dirichlet_compose(s1.representative(), s2.representative())?)
}

pub fn class_inverse(s: &FormClass) -> Result<FormClass> {
    let m = s.content();
    if !m.is_one() {
        return Err(Error::NotPrimitive(m));
    }
    Ok(s.bar())
}

/// `s^k` for a primitive class, `k >= 0`.
pub fn class_power(s: &FormClass, k: u64) -> Result<FormClass> {
    let mut acc = identity(s.discriminant())?;
    for _ in 0..k {
        acc = class_compose(&acc, s)?;
    }
    Ok(acc)
}

fn check_discriminant(d: &BigInt) -> Result<()> {
    if arith::is_discriminant(d) {
        Ok(())
    } else {
        Err(Error::NotADiscriminant(d.clone()))
    }
}

fn check_one_mod_4(d: &BigInt) -> Result<()> {
    if d.is_zero() || arith::mod4(d) != 1 {
        return Err(Error::NotOneMod4(d.clone()));
    }
    Ok(())
}

/// The principal class: `x^2 - (D/4) y^2` or `x^2 + xy + ((1 - D)/4) y^2`.
pub fn identity(d: &BigInt) -> Result<FormClass> {
    check_discriminant(d)?;
    let four = BigInt::from(4);
    let f = if arith::mod4(d) == 0 {
        Form::new(1, 0, -div_exact(d, &four))?
    } else {
        Form::new(1, 1, div_exact(&(BigInt::one() - d), &four))?
    };
    FormClass::of(&f)
}

/// The oriented class group: all primitive proper classes of discriminant `D`
/// under composition, sorted by canonical representative.
#[derive(Debug)]
pub struct OrientedClassGroup {
    discriminant: BigInt,
    elements: Vec<FormClass>,
    identity_index: usize,
    index: HashMap<Form, usize>,
    table: OnceLock<Vec<Vec<usize>>>,
}

impl OrientedClassGroup {
    pub fn new(d: &BigInt) -> Result<Self> {
        check_discriminant(d)?;
        let mut reps = BTreeSet::new();
        if d.is_negative() {
            for f in positive_definite_reduced(d) {
                reps.insert(f.neg());
                reps.insert(f);
            }
        } else if let Some(n) = arith::exact_sqrt(d) {
            let mut a = BigInt::zero();
            while a < n {
                if a.gcd(&n).is_one() {
                    reps.insert(Form::new(a.clone(), n.clone(), 0)?.canonical()?);
                }
                a += 1;
            }
        } else {
            for f in forms::reduced_indefinite_forms(d) {
                if f.is_primitive() {
                    reps.insert(f.canonical()?);
                }
            }
        }
        let elements = reps
            .into_iter()
            .map(|f| FormClass::of(&f))
            .collect::<Result<Vec<_>>>()?;
        Self::assemble(d.clone(), elements, None)
    }

    /// Rebuilds a group from stored parts, checking that the elements are the
    /// canonical primitive classes of discriminant `d` and that the table is
    /// consistent in shape. Used by the on-disk cache.
    pub fn from_parts(d: &BigInt, elements: Vec<Form>, table: Option<Vec<Vec<usize>>>) -> Result<Self> {
        check_discriminant(d)?;
        let mut classes = Vec::with_capacity(elements.len());
        for f in elements {
            if &f.discriminant() != d || !f.is_primitive() || f.canonical()? != f {
                return Err(Error::Json(format!(
                    "{f} is not a canonical primitive form of discriminant {d}"
                )));
            }
            classes.push(FormClass::of(&f)?);
        }
        if classes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Json("elements are not strictly sorted".into()));
        }
        if let Some(t) = &table {
            let n = classes.len();
            if t.len() != n || t.iter().any(|row| row.len() != n || row.iter().any(|&k| k >= n)) {
                return Err(Error::Json("composition table has the wrong shape".into()));
            }
        }
        Self::assemble(d.clone(), classes, table)
    }

    fn assemble(d: BigInt, elements: Vec<FormClass>, table: Option<Vec<Vec<usize>>>) -> Result<Self> {
        let index: HashMap<Form, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, s)| (s.representative().clone(), i))
            .collect();
        let id = identity(&d)?;
        let identity_index = *index
            .get(id.representative())
            .ok_or_else(|| Error::Json("identity class missing".into()))?;
        let cell = OnceLock::new();
        if let Some(t) = table {
            let _ = cell.set(t);
        }
        Ok(OrientedClassGroup {
            discriminant: d,
            elements,
            identity_index,
            index,
            table: cell,
        })
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.discriminant
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[FormClass] {
        &self.elements
    }

    pub fn identity_index(&self) -> usize {
        self.identity_index
    }

    pub fn identity(&self) -> &FormClass {
        &self.elements[self.identity_index]
    }

    pub fn index_of(&self, s: &FormClass) -> Option<usize> {
        self.index.get(s.representative()).copied()
    }

    pub fn contains(&self, s: &FormClass) -> bool {
        self.index_of(s).is_some()
    }

    /// The full composition table, computed on first use.
    #[allow(clippy::needless_range_loop)]
    pub fn table(&self) -> &Vec<Vec<usize>> {
        self.table.get_or_init(|| {
            let n = self.order();
            let mut t = vec![vec![0; n]; n];
            for i in 0..n {
                for j in i..n {
                    let s = class_compose(&self.elements[i], &self.elements[j])
                        .expect("elements share a discriminant and are primitive");
                    let k = self.index_of(&s).expect("group is closed under composition");
                    t[i][j] = k;
                    t[j][i] = k;
                }
            }
            t
        })
    }

    pub fn table_if_computed(&self) -> Option<&Vec<Vec<usize>>> {
        self.table.get()
    }

    pub fn compose_idx(&self, i: usize, j: usize) -> usize {
        self.table()[i][j]
    }

    pub fn inverse_idx(&self, i: usize) -> usize {
        self.index_of(&self.elements[i].bar()).expect("closed under bar")
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut acc = i;
        while acc != self.identity_index {
            acc = self.compose_idx(acc, i);
            k += 1;
        }
        k
    }

    /// Invariant factors `d1 | d2 | ... | dr` of the (abelian) group.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let orders: Vec<u64> = (0..self.order()).map(|i| self.element_order(i) as u64).collect();
        let n = self.order() as u64;
        // per prime p: exponents of the cyclic p-factors, largest first
        let mut columns: Vec<Vec<u64>> = Vec::new();
        for p in prime_factors(n) {
            let valuation = |mut x: u64| {
                let mut e = 0u32;
                while x.is_multiple_of(p) {
                    x /= p;
                    e += 1;
                }
                e
            };
            let vals: Vec<u32> = orders.iter().map(|&o| valuation(o)).collect();
            let max_e = vals.iter().copied().max().unwrap_or(0);
            // number of cyclic factors with exponent >= k is log_p(c_k / c_{k-1})
            let mut at_least = Vec::new();
            let mut prev = vals.iter().filter(|&&e| e == 0).count() as u64;
            for k in 1..=max_e {
                let ck = vals.iter().filter(|&&e| e <= k).count() as u64;
                let mut ratio = ck / prev;
                let mut r = 0usize;
                while ratio > 1 {
                    ratio /= p;
                    r += 1;
                }
                at_least.push(r);
                prev = ck;
            }
            let count = at_least.first().copied().unwrap_or(0);
            let mut powers = Vec::new();
            for idx in 0..count {
                let e = at_least.iter().filter(|&&r| r > idx).count() as u32;
                powers.push(p.pow(e));
            }
            columns.push(powers);
        }
        let width = columns.iter().map(Vec::len).max().unwrap_or(0);
        let mut factors: Vec<u64> = (0..width)
            .map(|idx| columns.iter().map(|c| c.get(idx).copied().unwrap_or(1)).product())
            .collect();
        factors.reverse();
        factors
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Gauss-reduced primitive positive definite forms of discriminant `d < 0`.
fn positive_definite_reduced(d: &BigInt) -> Vec<Form> {
    let mut out = Vec::new();
    let abs_d = -d;
    let mut a = BigInt::one();
    // a <= sqrt(|D| / 3)
    while BigInt::from(3) * &a * &a <= abs_d {
        let mut b: BigInt = -&a + 1;
        while b <= a {
            let num: BigInt = &b * &b - d;
            let four_a = BigInt::from(4) * &a;
            if num.is_multiple_of(&four_a) {
                let c = &num / &four_a;
                let ok = c > a || (c == a && !b.is_negative());
                if ok {
                    let f = Form::new(a.clone(), b.clone(), c).expect("a > 0");
                    if f.is_primitive() {
                        out.push(f);
                    }
                }
            }
            b += 1;
        }
        a += 1;
    }
    out
}

pub fn class_group(d: &BigInt) -> Result<OrientedClassGroup> {
    OrientedClassGroup::new(d)
}

/// All classes of discriminant `d` and content `m`: `m` times the primitive
/// classes of discriminant `d / m^2`. Empty when `d / m^2` is not a discriminant.
pub fn classes_with_content(d: &BigInt, m: &BigInt) -> Result<Vec<FormClass>> {
    let m2 = m * m;
    if !m.is_positive() || !(d % &m2).is_zero() {
        return Ok(Vec::new());
    }
    let d0 = d / &m2;
    if !arith::is_discriminant(&d0) {
        return Ok(Vec::new());
    }
    let mut out = class_group(&d0)?
        .elements()
        .iter()
        .map(|s| FormClass::of(&s.representative().scale(m)))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// A class `[a x^2 + xy + c y^2]` of discriminant `1 - 4ac`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialClass {
    pub a: BigInt,
    pub c: BigInt,
    pub class: FormClass,
}

/// The pairs `(a, c)` with `1 - 4ac = D` in witness order: `|a|` ascending,
/// positive `a` before negative. For `D = 1` the single pair `(1, 0)` stands
/// for the (unique) class of `xy`.
pub fn special_pairs(d: &BigInt) -> Result<Vec<(BigInt, BigInt)>> {
    check_one_mod_4(d)?;
    let m = div_exact(&(BigInt::one() - d), &BigInt::from(4));
    if m.is_zero() {
        return Ok(vec![(BigInt::one(), BigInt::zero())]);
    }
    let mut out = Vec::new();
    for p in arith::positive_divisors(&m) {
        for a in [p.clone(), -&p] {
            let c = div_exact(&m, &a);
            out.push((a, c));
        }
    }
    Ok(out)
}

pub fn special_form(a: &BigInt, c: &BigInt) -> Form {
    Form::new(a.clone(), 1, c.clone()).expect("middle coefficient is 1")
}

/// Special classes of discriminant `D`, deduplicated by class (first pair in
/// witness order kept).
pub fn special_classes(d: &BigInt) -> Result<Vec<SpecialClass>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (a, c) in special_pairs(d)? {
        let class = FormClass::of(&special_form(&a, &c))?;
        if seen.insert(class.clone()) {
            out.push(SpecialClass { a, c, class });
        }
    }
    Ok(out)
}

/// `[a x^2 + xy + c y^2]^2 = [a^2 x^2 + (1 - 2ac) xy + c^2 y^2]`.
pub fn special_square(a: &BigInt, c: &BigInt) -> Result<FormClass> {
    let b = BigInt::one() - BigInt::from(2) * a * c;
    FormClass::of(&Form::new(a * a, b, c * c)?)
}

/// The subgroup generated by all special squares of discriminant `D`, sorted.
pub fn s_plus_subgroup(d: &BigInt) -> Result<Vec<FormClass>> {
    let mut gens = BTreeSet::new();
    for (a, c) in special_pairs(d)? {
        gens.insert(special_square(&a, &c)?);
    }
    let mut members = BTreeSet::new();
    let id = identity(d)?;
    members.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(s) = frontier.pop() {
        for g in &gens {
            let t = class_compose(&s, g)?;
            if members.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    Ok(members.into_iter().collect())
}

/// `(N, a)` with `0 <= a < N` and `[f] = [a x^2 + N xy]`, for primitive `f` of
/// discriminant `N^2`.
pub fn square_normal_form(f: &Form) -> Result<(BigInt, BigInt)> {
    let d = f.discriminant();
    let n = match arith::exact_sqrt(&d) {
        Some(n) if n.is_positive() => n,
        _ => return Err(Error::NotSquareDiscriminant(d)),
    };
    let m = f.content();
    if !m.is_one() {
        return Err(Error::NotPrimitive(m));
    }
    let a = forms::square_residue(f, &n);
    Ok((n, a))
}

/// `a mod N -> [a x^2 + N xy]`, the isomorphism `(Z/N)^* -> G+_{N^2}`.
pub fn phi_n(n: &BigInt, a: &BigInt) -> Result<FormClass> {
    if !n.is_positive() {
        return Err(Error::NotPositive(n.clone()));
    }
    if !a.gcd(n).is_one() {
        return Err(Error::NotCoprimeResidue(a.clone(), n.clone()));
    }
    FormClass::of(&Form::new(a.mod_floor(n), n.clone(), 0)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn f(a: i64, b: i64, c: i64) -> Form {
        Form::new(a, b, c).unwrap()
    }

    fn cls(a: i64, b: i64, c: i64) -> FormClass {
        FormClass::of(&f(a, b, c)).unwrap()
    }

    fn check_concordant(f1: &Form, f2: &Form, h1: &Form, h2: &Form) {
        assert!(h1.is_equivalent(f1).unwrap());
        assert!(h2.is_equivalent(f2).unwrap());
        assert_eq!(h1.b(), h2.b());
        assert!(!h1.a().is_zero() && !h2.a().is_zero());
        assert!(h1.a().gcd(h2.a()).is_one());
        assert!((h2.c() % h1.a()).is_zero());
        assert!((h1.c() % h2.a()).is_zero());
    }

    #[test]
    fn concordant_pair_examples() {
        let (h1, h2) = concordant_pair(&f(1, 1, 6), &f(2, 1, 3)).unwrap();
        assert_eq!((h1, h2), (f(1, 1, 6), f(2, 1, 3)));

        let (f1, f2) = (f(2, 1, 3), f(2, -1, 3));
        let (h1, h2) = concordant_pair(&f1, &f2).unwrap();
        assert_eq!((h1.clone(), h2.clone()), (f(2, 1, 3), f(3, 1, 2)));
        check_concordant(&f1, &f2, &h1, &h2);

        let g = f(3, 1, -2);
        let (h1, h2) = concordant_pair(&g, &g).unwrap();
        check_concordant(&g, &g, &h1, &h2);
    }

    #[test]
    fn concordant_pair_errors() {
        assert!(matches!(
            concordant_pair(&f(2, 2, 4), &f(2, 0, 1)),
            Err(Error::MismatchedDiscriminant(..))
        ));
        assert!(matches!(
            concordant_pair(&f(2, 2, 4), &f(4, 4, 8)),
            Err(Error::MismatchedDiscriminant(..))
        ));
        assert!(matches!(
            concordant_pair(&f(2, 4, 6), &f(4, 4, 8).scale(&b(1)).bar().neg().scale(&b(1))),
            Err(Error::MismatchedDiscriminant(..)) | Err(Error::NotCoprimeContent(..))
        ));
        assert!(matches!(
            concordant_pair(&f(2, 2, 12), &f(4, 2, 6)),
            Err(Error::NotCoprimeContent(..))
        ));
        assert!(matches!(
            dirichlet_compose(&f(1, 2, 1), &f(1, 2, 1)),
            Err(Error::ZeroDiscriminant)
        ));
    }

    #[test]
    fn dirichlet_examples() {
        let c = |x: &Form, y: &Form| FormClass::of(&dirichlet_compose(x, y).unwrap()).unwrap();
        assert_eq!(c(&f(2, 1, 3), &f(2, -1, 3)), cls(1, 1, 6));
        assert_eq!(c(&f(2, 1, 3), &f(2, 1, 3)), cls(2, -1, 3));
        assert_eq!(c(&f(3, 1, 6), &f(3, 1, 6)), cls(2, -1, 9));
    }

    #[test]
    fn class_compose_examples() {
        let s = cls(4, -3, 5);
        assert_eq!(class_compose(&s, &identity(&b(-71)).unwrap()).unwrap(), s);
        assert_eq!(class_compose(&cls(2, 1, 9), &cls(2, 1, 9)).unwrap(), cls(4, -3, 5));
        assert_eq!(class_compose(&cls(2, 1, -18), &cls(2, 1, -18)).unwrap(), cls(6, 5, -5));
    }

    #[test]
    fn content_is_multiplicative() {
        // content 3 and content 1 at D = -207 = 9 * -23
        let s1 = cls(3, 3, 18);
        let s2 = cls(2, 1, 26);
        assert_eq!(s2.discriminant(), &b(-207));
        let s = class_compose(&s1, &s2).unwrap();
        assert_eq!(s.content(), b(3));
        assert_eq!(s.discriminant(), &b(-207));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(class_inverse(&cls(2, 1, 3)).unwrap(), cls(2, -1, 3));
        let id = identity(&b(-23)).unwrap();
        assert_eq!(class_inverse(&id).unwrap(), id);
        let s = cls(3, 1, 6);
        assert_eq!(class_inverse(&class_inverse(&s).unwrap()).unwrap(), s);
        assert!(matches!(class_inverse(&cls(2, 2, 4)), Err(Error::NotPrimitive(_))));
    }

    #[test]
    fn class_group_minus_23() {
        let g = class_group(&b(-23)).unwrap();
        let expected: BTreeSet<FormClass> = [
            cls(1, 1, 6),
            cls(-1, -1, -6),
            cls(2, 1, 3),
            cls(2, -1, 3),
            cls(-2, 1, -3),
            cls(-2, -1, -3),
        ]
        .into_iter()
        .collect();
        assert_eq!(g.elements().iter().cloned().collect::<BTreeSet<_>>(), expected);
        assert_eq!(g.identity(), &cls(1, 1, 6));
        assert_eq!(g.invariant_factors(), vec![6]);
    }

    #[test]
    fn class_group_orders() {
        assert_eq!(class_group(&b(-71)).unwrap().order(), 14);
        assert_eq!(class_group(&b(-4)).unwrap().order(), 2);
        assert_eq!(class_group(&b(-3)).unwrap().order(), 2);
        let g = class_group(&b(905)).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.invariant_factors(), vec![8]);
        let g = class_group(&b(145)).unwrap();
        assert_eq!(g.invariant_factors(), vec![4]);
        assert!(g.contains(&cls(3, 7, -8)));
        let i = g.index_of(&cls(3, 7, -8)).unwrap();
        assert_eq!(g.element_order(i), 4);
        assert_eq!(class_group(&b(25)).unwrap().order(), 4);
        assert_eq!(class_group(&b(1)).unwrap().order(), 1);
        assert!(matches!(class_group(&b(-5)), Err(Error::NotADiscriminant(_))));
        assert!(matches!(class_group(&b(0)), Err(Error::NotADiscriminant(_))));
    }

    #[test]
    fn special_class_examples() {
        let got: BTreeSet<FormClass> = special_classes(&b(-23)).unwrap().into_iter().map(|s| s.class).collect();
        for s in [cls(1, 1, 6), cls(2, 1, 3), cls(3, 1, 2), cls(-1, 1, -6)] {
            assert!(got.contains(&s), "{s}");
        }
        assert!(got.iter().all(|s| s.discriminant() == &b(-23)));
        let at25: Vec<FormClass> = special_classes(&b(25)).unwrap().into_iter().map(|s| s.class).collect();
        assert!(at25.contains(&cls(3, 1, -2)));
        let at1 = special_classes(&b(1)).unwrap();
        assert_eq!(at1.len(), 1);
        assert_eq!(at1[0].class, cls(5, 1, 0));
        assert!(matches!(special_classes(&b(-24)), Err(Error::NotOneMod4(_))));
    }

    #[test]
    fn special_square_examples() {
        assert_eq!(special_square(&b(2), &b(3)).unwrap(), cls(2, -1, 3));
        assert_eq!(special_square(&b(1), &b(17)).unwrap(), identity(&b(-67)).unwrap());
        assert_eq!(special_square(&b(3), &b(-2)).unwrap(), cls(4, 5, 0));
        assert_eq!(special_square(&b(3), &b(-2)).unwrap(), phi_n(&b(5), &b(4)).unwrap());
    }

    #[test]
    fn s_plus_examples() {
        let s = s_plus_subgroup(&b(-23)).unwrap();
        assert_eq!(s, {
            let mut v = vec![cls(1, 1, 6), cls(2, 1, 3), cls(2, -1, 3)];
            v.sort();
            v
        });
        assert_eq!(s_plus_subgroup(&b(-11)).unwrap(), vec![identity(&b(-11)).unwrap()]);
        let g = class_group(&b(-71)).unwrap();
        let squares: BTreeSet<FormClass> = (0..g.order())
            .map(|i| g.elements()[g.compose_idx(i, i)].clone())
            .collect();
        let s71: BTreeSet<FormClass> = s_plus_subgroup(&b(-71)).unwrap().into_iter().collect();
        assert_eq!(s71, squares);
        assert_eq!(s71.len(), 7);
    }

    #[test]
    fn square_normal_form_examples() {
        assert_eq!(square_normal_form(&f(2, 5, 0)).unwrap(), (b(5), b(2)));
        assert_eq!(square_normal_form(&f(9, 13, 4)).unwrap(), (b(5), b(4)));
        assert_eq!(square_normal_form(&f(3, 1, -2)).unwrap(), (b(5), b(2)));
        assert!(matches!(
            square_normal_form(&f(1, 1, 6)),
            Err(Error::NotSquareDiscriminant(_))
        ));
        assert!(matches!(square_normal_form(&f(2, 10, 0)), Err(Error::NotPrimitive(_))));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_n(&b(5), &b(1)).unwrap(), identity(&b(25)).unwrap());
        let two = phi_n(&b(5), &b(2)).unwrap();
        assert_eq!(class_compose(&two, &two).unwrap(), phi_n(&b(5), &b(4)).unwrap());
        assert_eq!(phi_n(&b(5), &b(4)).unwrap(), cls(4, 5, 0));
        let three = phi_n(&b(5), &b(3)).unwrap();
        assert_eq!(class_compose(&two, &three).unwrap(), identity(&b(25)).unwrap());
        assert!(matches!(phi_n(&b(6), &b(3)), Err(Error::NotCoprimeResidue(..))));
        assert!(matches!(phi_n(&b(0), &b(1)), Err(Error::NotPositive(_))));
    }

    #[test]
    fn nonprimitive_strata() {
        let c = classes_with_content(&b(25), &b(5)).unwrap();
        assert_eq!(c, vec![cls(0, 5, 0)]);
        assert!(classes_with_content(&b(-23), &b(2)).unwrap().is_empty());
    }
}
