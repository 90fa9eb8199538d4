//! Oriented planes in `M2(Z) = Z^4` and the Klein correspondence with pairs
//! of Gross vectors.
//!
//! For a plane `L` with oriented basis `(v1, v2)`:
//!
//! ```text
//! q_L  = det(v1) x^2 + tr(v1 bar(v2)) xy + det(v2) y^2
//! a1   = 2 v1 bar(v2) - tr(v1 bar(v2)) I
//! a2   = 2 bar(v2) v1 - tr(v1 bar(v2)) I
//! ```
//!
//! and conversely `L = {x : a1 x = x a2}`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::compose::class_compose;
use crate::error::{Error, Result};
use crate::forms::{Form, FormClass, Unimodular};
use crate::intmat::{self, Matrix};
use crate::mat2::{self, Mat2};

/// A traceless integer matrix with even off-diagonal entries, i.e. an
/// element of the Gross lattice. `A(q) = ((b, 2a), (-2c, -b))`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GrossVector(Mat2);

impl GrossVector {
    pub fn new(m: Mat2) -> Result<Self> {
        let two = BigInt::from(2);
        if !m.trace().is_zero() || !m.get(0, 1).is_multiple_of(&two) || !m.get(1, 0).is_multiple_of(&two) {
            return Err(Error::NotGross);
        }
        Ok(GrossVector(m))
    }

    pub fn from_form(q: &Form) -> Self {
        let two = BigInt::from(2);
        GrossVector(Mat2::new(q.b().clone(), &two * q.a(), -(&two * q.c()), -q.b()))
    }

    /// `q_A = (A12 / 2, A11, -A21 / 2)`.
    pub fn form(&self) -> Result<Form> {
        let two = BigInt::from(2);
        let m = &self.0;
        Form::new(m.get(0, 1) / &two, m.get(0, 0).clone(), -(m.get(1, 0) / &two))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn det(&self) -> BigInt {
        self.0.det()
    }

    /// gcd of the coordinates in the lattice basis; equals the content of `q_A`.
    pub fn content(&self) -> BigInt {
        let two = BigInt::from(2);
        let m = &self.0;
        m.get(0, 0).gcd(&(m.get(0, 1) / &two)).gcd(&(m.get(1, 0) / &two))
    }

    pub fn neg(&self) -> Self {
        GrossVector(-&self.0)
    }

    /// `g A g^-1`, matching `A(g.q) = g A(q) g^-1`.
    pub fn conjugate(&self, g: &Unimodular) -> Self {
        let m = g.matrix();
        GrossVector(&(m * &self.0) * &m.bar())
    }
}

impl fmt::Display for GrossVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// No prime divides both Gross vectors inside the lattice.
pub fn pair_primitive(a1: &GrossVector, a2: &GrossVector) -> bool {
    a1.content().gcd(&a2.content()).is_one()
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct KleinPair {
    pub a1: GrossVector,
    pub a2: GrossVector,
}

impl KleinPair {
    pub fn new(a1: GrossVector, a2: GrossVector) -> Self {
        KleinPair { a1, a2 }
    }

    pub fn from_matrices(a1: Mat2, a2: Mat2) -> Result<Self> {
        Ok(KleinPair::new(GrossVector::new(a1)?, GrossVector::new(a2)?))
    }

    /// Checks membership in the image of the Klein map: equal nonzero
    /// determinants and pair-primitivity.
    pub fn validate(&self) -> Result<()> {
        let (d1, d2) = (self.a1.det(), self.a2.det());
        if d1 != d2 {
            return Err(Error::MismatchedDeterminant(d1, d2));
        }
        if d1.is_zero() {
            return Err(Error::ZeroDeterminant);
        }
        if !pair_primitive(&self.a1, &self.a2) {
            return Err(Error::NotPairPrimitive);
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        KleinPair::new(self.a1.neg(), self.a2.neg())
    }
}

/// An oriented rank-2 direct summand of `Z^4`, stored by its Hermite basis
/// with the orientation sign folded into the second vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Plane {
    v1: Mat2,
    v2: Mat2,
}

impl Plane {
    pub fn new(v1: &Mat2, v2: &Mat2) -> Result<Self> {
        Plane::from_coords(&v1.to_coords(), &v2.to_coords())
    }

    pub fn from_coords(c1: &[BigInt; 4], c2: &[BigInt; 4]) -> Result<Self> {
        if !intmat::minor_gcd(c1, c2).is_one() {
            return Err(Error::NotASummand);
        }
        let rows: Matrix = vec![c1.to_vec(), c2.to_vec()];
        let (h, v) = intmat::row_hermite(&rows);
        let sign = intmat::det(&v);
        let to_arr = |r: &[BigInt]| -> [BigInt; 4] { [r[0].clone(), r[1].clone(), r[2].clone(), r[3].clone()] };
        let h2: Vec<BigInt> = h[1].iter().map(|x| x * &sign).collect();
        Ok(Plane {
            v1: Mat2::from_coords(&to_arr(&h[0])),
            v2: Mat2::from_coords(&to_arr(&h2)),
        })
    }

    pub fn basis(&self) -> (&Mat2, &Mat2) {
        (&self.v1, &self.v2)
    }

    pub fn coords(&self) -> [[BigInt; 4]; 2] {
        [self.v1.to_coords(), self.v2.to_coords()]
    }

    /// The same plane with the opposite orientation.
    pub fn op(&self) -> Self {
        Plane::new(&self.v2, &self.v1).expect("still a summand")
    }

    /// `(s, t)` with `x = s v1 + t v2`, if `x` lies in the plane.
    pub fn coefficients(&self, x: &Mat2) -> Option<(BigInt, BigInt)> {
        let (c1, c2, cx) = (self.v1.to_coords(), self.v2.to_coords(), x.to_coords());
        let p1 = c1.iter().position(|e| !e.is_zero())?;
        let p2 = c2.iter().position(|e| !e.is_zero())?;
        let (s, r) = cx[p1].div_rem(&c1[p1]);
        if !r.is_zero() {
            return None;
        }
        let (t, r) = (&cx[p2] - &s * &c1[p2]).div_rem(&c2[p2]);
        if !r.is_zero() {
            return None;
        }
        let ok = (0..4).all(|i| &s * &c1[i] + &t * &c2[i] == cx[i]);
        ok.then_some((s, t))
    }

    pub fn contains(&self, x: &Mat2) -> bool {
        self.coefficients(x).is_some()
    }

    /// Sign of the orientation of `(w1, w2)` (both in the plane) relative to
    /// the stored orientation; `0` if they are dependent or not in the plane.
    pub fn orientation_of(&self, w1: &Mat2, w2: &Mat2) -> i32 {
        match (self.coefficients(w1), self.coefficients(w2)) {
            (Some((s1, t1)), Some((s2, t2))) => {
                let d = s1 * t2 - t1 * s2;
                if d.is_positive() {
                    1
                } else if d.is_negative() {
                    -1
                } else {
                    0
                }
            }
            _ => 0,
        }
    }

    /// `(g1, g2) . L = g1 L g2^-1`.
    pub fn transform(&self, g1: &Unimodular, g2: &Unimodular) -> Self {
        let (m1, m2inv) = (g1.matrix(), g2.inverse());
        let t = |x: &Mat2| &(m1 * x) * m2inv.matrix();
        Plane::new(&t(&self.v1), &t(&self.v2)).expect("unimodular image of a summand")
    }

    /// Whether every pair `x in self`, `y in other` has `Q(x, y) = 0`.
    pub fn is_q_orthogonal_to(&self, other: &Plane) -> bool {
        [&self.v1, &self.v2]
            .iter()
            .all(|x| [&other.v1, &other.v2].iter().all(|y| mat2::q_pair(x, y).is_zero()))
    }

    /// Whether every pair `x in self`, `y in other` has `theta(x, y) = 0`.
    pub fn is_theta_orthogonal_to(&self, other: &Plane) -> bool {
        [&self.v1, &self.v2]
            .iter()
            .all(|x| [&other.v1, &other.v2].iter().all(|y| mat2::theta(x, y).is_zero()))
    }
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.v1, self.v2)
    }
}

/// `q_L(x, y) = Q(x v1 + y v2) / 2`. Fails only for totally isotropic planes.
pub fn q_of_plane(l: &Plane) -> Result<Form> {
    let (v1, v2) = l.basis();
    q_of_basis(v1, v2)
}

/// `q_L` evaluated on a specific oriented basis.
pub fn q_of_basis(v1: &Mat2, v2: &Mat2) -> Result<Form> {
    Form::new(v1.det(), (v1 * &v2.bar()).trace(), v2.det())
}

/// The Klein map `L -> (a1(L), a2(L))`.
pub fn klein_map(l: &Plane) -> Result<KleinPair> {
    let q = q_of_plane(l).map_err(|_| Error::ZeroDiscriminant)?;
    if q.discriminant().is_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    let (v1, v2) = l.basis();
    let t = (v1 * &v2.bar()).trace();
    let ti = Mat2::identity().scale(&t);
    let two = BigInt::from(2);
    let a1 = &(v1 * &v2.bar()).scale(&two) - &ti;
    let a2 = &(&v2.bar() * v1).scale(&two) - &ti;
    Ok(KleinPair::new(GrossVector(a1), GrossVector(a2)))
}

/// `L_{a1, a2} = {x in M2(Z) : a1 x = x a2}` with the orientation for which
/// the Klein map returns `(a1, a2)`.
pub fn klein_inverse(p: &KleinPair) -> Result<Plane> {
    p.validate()?;
    let (a1, a2) = (p.a1.matrix(), p.a2.matrix());
    let mut cols = Vec::with_capacity(4);
    for j in 0..4 {
        let mut e: [BigInt; 4] = Default::default();
        e[j] = BigInt::one();
        let x = Mat2::from_coords(&e);
        cols.push((&(a1 * &x) - &(&x * a2)).to_coords());
    }
    let system: Matrix = (0..4).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    let kernel = intmat::kernel(&system);
    assert_eq!(kernel.len(), 2, "solution lattice of a1 x = x a2 has rank 2");
    let as_arr = |v: &Vec<BigInt>| -> [BigInt; 4] { [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()] };
    let l = Plane::from_coords(&as_arr(&kernel[0]), &as_arr(&kernel[1]))?;
    let image = klein_map(&l)?;
    if &image == p {
        Ok(l)
    } else if image == p.neg() {
        Ok(l.op())
    } else {
        unreachable!("Klein map of L_(a1,a2) is +-(a1, a2) for pair-primitive input")
    }
}

/// `L^perp = L_{-a1, a2}`.
pub fn orth_complement(l: &Plane) -> Result<Plane> {
    let p = klein_map(l)?;
    klein_inverse(&KleinPair::new(p.a1.neg(), p.a2))
}

/// Symplectic iff `a2(L)` has diagonal `(1, -1)`.
pub fn is_symplectic(l: &Plane) -> Result<bool> {
    let p = klein_map(l)?;
    Ok(p.a2.matrix().get(0, 0).is_one())
}

/// A basis `(v1, v2)` of `L` with `theta(v1, v2) = 1`, if `L` is symplectic.
pub fn symplectic_basis(l: &Plane) -> Result<Option<(Mat2, Mat2)>> {
    if !is_symplectic(l)? {
        return Ok(None);
    }
    let (v1, v2) = l.basis();
    // theta(v1, v2) is invariant under oriented base change
    debug_assert!(mat2::theta(v1, v2).is_one());
    Ok(Some((v1.clone(), v2.clone())))
}

/// `L^pperp` for symplectic `L`: with `a2(L) = ((1, alpha), (gamma, -1))`,
/// `Phi(L^pperp) = (-a1, ((1, -alpha), (-gamma, -1)))`.
pub fn symplectic_complement(l: &Plane) -> Result<Plane> {
    let p = klein_map(l)?;
    let a2 = p.a2.matrix();
    if !a2.get(0, 0).is_one() {
        return Err(Error::NotSymplectic);
    }
    let b2 = Mat2::new(1, -a2.get(0, 1), -a2.get(1, 0), -1);
    klein_inverse(&KleinPair::new(p.a1.neg(), GrossVector(b2)))
}

/// Computes `[q_L]` for `L = L_{a1, a2}` from the plane and as
/// `bar[q_{a1}] * [q_{a2}]`, and reports whether they agree and the content
/// of `q_L` is `content(a1) * content(a2)`.
pub fn verify_composition_identity(p: &KleinPair) -> Result<(FormClass, FormClass, bool)> {
    let l = klein_inverse(p)?;
    let via_plane = FormClass::of(&q_of_plane(&l)?)?;
    let s1 = FormClass::of(&p.a1.form()?)?.bar();
    let s2 = FormClass::of(&p.a2.form()?)?;
    let via_compose = class_compose(&s1, &s2)?;
    let content_ok = via_plane.content() == p.a1.content() * p.a2.content();
    let holds = content_ok && via_plane == via_compose;
    Ok((via_plane, via_compose, holds))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
        Mat2::new(a, b, c, d)
    }

    fn f(a: i64, b: i64, c: i64) -> Form {
        Form::new(a, b, c).unwrap()
    }

    fn example() -> Plane {
        Plane::new(&Mat2::identity(), &m(1, -6, 1, 0)).unwrap()
    }

    #[test]
    fn gross_round_trip() {
        let q = f(2, -1, 3);
        let a = GrossVector::from_form(&q);
        assert_eq!(a.matrix(), &m(-1, 4, -6, 1));
        assert_eq!(a.form().unwrap(), q);
        assert_eq!(a.det(), BigInt::from(23));
        assert!(GrossVector::new(m(1, 1, 0, -1)).is_err());
        assert!(GrossVector::new(m(1, 2, 0, 1)).is_err());
        assert_eq!(GrossVector::from_form(&f(2, 4, 6)).content(), BigInt::from(2));
    }

    #[test]
    fn example_plane() {
        let l = example();
        assert_eq!(q_of_basis(&Mat2::identity(), &m(1, -6, 1, 0)).unwrap(), f(1, 1, 6));
        assert!(q_of_plane(&l).unwrap().is_equivalent(&f(1, 1, 6)).unwrap());
        let p = klein_map(&l).unwrap();
        assert_eq!(p.a1.matrix(), &m(-1, 12, -2, 1));
        assert_eq!(p.a2.matrix(), &m(-1, 12, -2, 1));
        assert_eq!(klein_inverse(&p).unwrap(), l);
        assert!(!is_symplectic(&l).unwrap());
        assert!(is_symplectic(&l.op()).unwrap());
        assert_eq!(klein_map(&l.op()).unwrap(), p.neg());
        let (a, b, ok) = verify_composition_identity(&p).unwrap();
        assert!(ok);
        assert_eq!(a, FormClass::of(&f(1, 1, 6)).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn degenerate_planes() {
        assert_eq!(q_of_basis(&m(1, 0, 0, 0), &m(0, 0, 0, 1)).unwrap(), f(0, 1, 0));
        let iso = Plane::new(&m(1, 0, 0, 0), &m(0, 1, 0, 0)).unwrap();
        assert!(matches!(q_of_plane(&iso), Err(Error::ZeroForm)));
        assert!(matches!(klein_map(&iso), Err(Error::ZeroDiscriminant)));
        assert!(matches!(
            Plane::new(&m(2, 0, 0, 0), &m(0, 0, 0, 1)),
            Err(Error::NotASummand)
        ));
        assert!(matches!(
            Plane::new(&m(1, 2, 3, 4), &m(2, 4, 6, 8)),
            Err(Error::NotASummand)
        ));
    }

    #[test]
    fn plane_canonical_storage() {
        let l = example();
        let (v1, v2) = l.basis();
        let g = Unimodular::from_entries(3, 1, 2, 1).unwrap();
        let gm = g.matrix();
        let w1 = &v1.scale(gm.get(0, 0)) + &v2.scale(gm.get(0, 1));
        let w2 = &v1.scale(gm.get(1, 0)) + &v2.scale(gm.get(1, 1));
        assert_eq!(Plane::new(&w1, &w2).unwrap(), l);
        assert_eq!(Plane::new(&w2, &w1).unwrap(), l.op());
        assert_eq!(l.orientation_of(&w1, &w2), 1);
        assert_eq!(l.orientation_of(&w2, &w1), -1);
    }

    #[test]
    fn klein_inverse_errors() {
        let a = GrossVector::from_form(&f(1, 1, 6));
        let b = GrossVector::from_form(&f(1, 0, 1));
        assert!(matches!(
            klein_inverse(&KleinPair::new(a.clone(), b)),
            Err(Error::MismatchedDeterminant(..))
        ));
        let two_a = GrossVector::from_form(&f(2, 2, 12));
        assert!(matches!(
            klein_inverse(&KleinPair::new(two_a.clone(), two_a)),
            Err(Error::NotPairPrimitive)
        ));
        let z = GrossVector::from_form(&f(0, 1, 0)).neg();
        let z = GrossVector::new(&z.matrix().scale(&BigInt::zero()) + &Mat2::zero()).unwrap();
        assert!(matches!(
            klein_inverse(&KleinPair::new(z.clone(), z)),
            Err(Error::ZeroDeterminant)
        ));
    }

    #[test]
    fn pair_primitivity() {
        let a = GrossVector::from_form(&f(2, 1, 3));
        let b = GrossVector::from_form(&f(1, 1, 6));
        assert!(pair_primitive(&a, &b));
        let two = BigInt::from(2);
        let three = BigInt::from(3);
        let s = |g: &GrossVector, k: &BigInt| GrossVector::new(g.matrix().scale(k)).unwrap();
        assert!(!pair_primitive(&s(&a, &two), &s(&b, &two)));
        assert!(pair_primitive(&s(&a, &three), &s(&b, &two)));
    }

    #[test]
    fn complements_of_example() {
        let l = example();
        let perp = orth_complement(&l).unwrap();
        assert!(l.is_q_orthogonal_to(&perp));
        assert_eq!(q_of_plane(&perp).unwrap().discriminant(), BigInt::from(-23));
        assert!(matches!(symplectic_complement(&l), Err(Error::NotSymplectic)));
        let s = l.op();
        let pp = symplectic_complement(&s).unwrap();
        assert!(s.is_theta_orthogonal_to(&pp));
        assert_eq!(symplectic_complement(&pp).unwrap(), s);
        let (v1, v2) = symplectic_basis(&s).unwrap().unwrap();
        assert!(mat2::theta(&v1, &v2).is_one());
    }
}
