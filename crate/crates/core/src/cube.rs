//! Bhargava cubes `e(i, j, k)`, `i, j, k in {0, 1}`.
//!
//! The three slicings are
//!
//! ```text
//! 1:  M1[j][k] = e(0, j, k)   N1[j][k] = e(1, j, k)
//! 2:  M2[i][j] = e(i, j, 0)   N2[i][j] = e(i, j, 1)
//! 3:  M3[k][i] = e(i, 0, k)   N3[k][i] = e(i, 1, k)
//! ```
//!
//! and `q_i(x, y) = -det(x M_i - y N_i)`. With `(M1, N1)` an oriented basis
//! of `L = L_{a1, a2}` one has `q1 = -bar(q_L)`, `q2 = -S.q_{a2}` for
//! `S = ((0, 1), (-1, 0))`, and `q3 = q_{a1}`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::compose::class_compose;
use crate::error::{Error, Result};
use crate::forms::{Form, FormClass, Unimodular};
use crate::lattice::{klein_inverse, GrossVector, KleinPair, Plane};
use crate::mat2::Mat2;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cube {
    e: [[[BigInt; 2]; 2]; 2],
}

/// Symmetries of the cube used for the bar/negation identities.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CubeOp {
    /// `e(i, j, k) -> e(1 - i, 1 - j, 1 - k)`.
    Reflect,
    /// Negates one of the two layers cut by slicing `axis` (1, 2 or 3).
    NegateLayer { axis: u8, side: u8 },
}

impl Cube {
    /// Entries in the order `e000, e001, e010, e011, e100, e101, e110, e111`.
    pub fn from_entries(entries: &[BigInt; 8]) -> Self {
        let mut e: [[[BigInt; 2]; 2]; 2] = Default::default();
        for (n, v) in entries.iter().enumerate() {
            e[n >> 2][(n >> 1) & 1][n & 1] = v.clone();
        }
        Cube { e }
    }

    pub fn entries(&self) -> [BigInt; 8] {
        std::array::from_fn(|n| self.e[n >> 2][(n >> 1) & 1][n & 1].clone())
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &BigInt {
        &self.e[i][j][k]
    }

    /// The cube with first slicing `(M1, N1) = (m, n)`.
    pub fn from_slicing(m: &Mat2, n: &Mat2) -> Self {
        let layer = |x: &Mat2| std::array::from_fn(|j| std::array::from_fn(|k| x.get(j, k).clone()));
        Cube {
            e: [layer(m), layer(n)],
        }
    }

    pub fn from_plane(l: &Plane) -> Self {
        let (v1, v2) = l.basis();
        Cube::from_slicing(v1, v2)
    }

    /// `(M_axis, N_axis)`.
    pub fn slicing(&self, axis: u8) -> (Mat2, Mat2) {
        let e = &self.e;
        let build = |f: &dyn Fn(usize, usize) -> BigInt| Mat2::new(f(0, 0), f(0, 1), f(1, 0), f(1, 1));
        match axis {
            1 => (build(&|j, k| e[0][j][k].clone()), build(&|j, k| e[1][j][k].clone())),
            2 => (build(&|i, j| e[i][j][0].clone()), build(&|i, j| e[i][j][1].clone())),
            3 => (build(&|k, i| e[i][0][k].clone()), build(&|k, i| e[i][1][k].clone())),
            _ => panic!("slicing axis must be 1, 2 or 3"),
        }
    }

    /// `-det(x M - y N)` as coefficients; may be all zero.
    fn slice_coefficients(&self, axis: u8) -> [BigInt; 3] {
        let (m, n) = self.slicing(axis);
        [-m.det(), (&m * &n.bar()).trace(), -n.det()]
    }

    /// The three forms `(q1, q2, q3)`. Fails with `ZeroForm` if a slicing
    /// vanishes identically.
    pub fn slicings(&self) -> Result<(Form, Form, Form)> {
        let f = |axis| {
            let [a, b, c] = self.slice_coefficients(axis);
            Form::new(a, b, c)
        };
        Ok((f(1)?, f(2)?, f(3)?))
    }

    /// The common discriminant of the slicings.
    pub fn discriminant(&self) -> BigInt {
        let [a, b, c] = self.slice_coefficients(1);
        &b * &b - BigInt::from(4) * a * c
    }

    pub fn apply(&self, op: CubeOp) -> Self {
        let mut out = self.clone();
        match op {
            CubeOp::Reflect => {
                for i in 0..2 {
                    for j in 0..2 {
                        for k in 0..2 {
                            out.e[i][j][k] = self.e[1 - i][1 - j][1 - k].clone();
                        }
                    }
                }
            }
            CubeOp::NegateLayer { axis, side } => {
                let s = side as usize;
                assert!(s < 2, "layer side must be 0 or 1");
                for i in 0..2 {
                    for j in 0..2 {
                        for k in 0..2 {
                            let hit = match axis {
                                1 => i == s,
                                2 => k == s,
                                3 => j == s,
                                _ => panic!("slicing axis must be 1, 2 or 3"),
                            };
                            if hit {
                                out.e[i][j][k] = -&self.e[i][j][k];
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.entries();
        let parts: Vec<String> = e.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

pub fn slicings(c: &Cube) -> Result<(Form, Form, Form)> {
    c.slicings()
}

pub fn cube_symmetries(c: &Cube, op: CubeOp) -> Cube {
    c.apply(op)
}

/// Checks `[q_j] * [q_k] = bar[q_i]` for every cyclic arrangement whose two
/// factors have coprime contents.
pub fn cube_law_check(c: &Cube) -> Result<bool> {
    if c.discriminant().is_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    let (q1, q2, q3) = c.slicings().map_err(|_| Error::ZeroDiscriminant)?;
    let classes = [FormClass::of(&q1)?, FormClass::of(&q2)?, FormClass::of(&q3)?];
    let mut checked = false;
    for i in 0..3 {
        let (s_j, s_k) = (&classes[(i + 1) % 3], &classes[(i + 2) % 3]);
        if !s_j.content().gcd(&s_k.content()).is_one() {
            continue;
        }
        checked = true;
        if class_compose(s_j, s_k)? != classes[i].bar() {
            return Ok(false);
        }
    }
    if checked {
        Ok(true)
    } else {
        Err(Error::NoCoprimePair)
    }
}

/// A cube whose first slicing is an oriented basis of `L_{a1, a2}` for
/// `a1 = A(q1)`, `a2 = -A(S'.q2)`, `S' = ((0, -1), (1, 0))`. Its second and
/// third slicings are equivalent to `q2` and `q1`.
pub fn cube_from_forms(q1: &Form, q2: &Form) -> Result<Cube> {
    let (d1, d2) = (q1.discriminant(), q2.discriminant());
    if d1 != d2 {
        return Err(Error::MismatchedDiscriminant(d1, d2));
    }
    if d1.is_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    let s = Unimodular::new(Mat2::new(0, -1, 1, 0)).expect("determinant one");
    let a1 = GrossVector::from_form(q1);
    let a2 = GrossVector::from_form(&q2.act(&s)).neg();
    let l = klein_inverse(&KleinPair::new(a1, a2))?;
    Ok(Cube::from_plane(&l))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(a: i64, b: i64, c: i64) -> Form {
        Form::new(a, b, c).unwrap()
    }

    fn cls(q: &Form) -> FormClass {
        FormClass::of(q).unwrap()
    }

    fn cube(v: [i64; 8]) -> Cube {
        Cube::from_entries(&v.map(BigInt::from))
    }

    #[test]
    fn entries_round_trip() {
        let c = cube([1, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(c.entries(), [1, 2, 3, 4, 5, 6, 7, 8].map(BigInt::from));
        assert_eq!(c.get(1, 0, 1), &BigInt::from(6));
        let (m, n) = c.slicing(1);
        assert_eq!(Cube::from_slicing(&m, &n), c);
    }

    #[test]
    fn example_plane_cube() {
        // (M1, N1) = (I, ((1, -6), (1, 0))): q_L = (1, 1, 6)
        let c = Cube::from_slicing(&Mat2::identity(), &Mat2::new(1, -6, 1, 0));
        let (q1, q2, q3) = c.slicings().unwrap();
        assert_eq!(q1, f(1, 1, 6).bar().neg());
        let a = Mat2::new(-1, 12, -2, 1);
        let qa = GrossVector::new(a).unwrap().form().unwrap();
        assert_eq!(q3, qa);
        let s = Unimodular::new(Mat2::new(0, 1, -1, 0)).unwrap();
        assert_eq!(q2, qa.act(&s).neg());
        assert!(cube_law_check(&c).unwrap());
    }

    #[test]
    fn zero_cube_is_rejected() {
        let c = cube([0; 8]);
        assert!(matches!(cube_law_check(&c), Err(Error::ZeroDiscriminant)));
        assert!(matches!(c.slicings(), Err(Error::ZeroForm)));
    }

    #[test]
    fn from_forms_examples() {
        for (x, y) in [
            (f(2, 1, 3), f(2, 1, 3)),
            (f(1, 1, 6), f(2, -1, 3)),
            (f(3, 1, 6), f(2, 1, 9)),
        ] {
            let c = cube_from_forms(&x, &y).unwrap();
            let (q1, q2, q3) = c.slicings().unwrap();
            assert_eq!(cls(&q2), cls(&y));
            assert_eq!(cls(&q3), cls(&x));
            let third = class_compose(&cls(&x), &cls(&y)).unwrap().bar();
            assert_eq!(cls(&q1), third);
            assert!(cube_law_check(&c).unwrap());
        }
        assert!(matches!(
            cube_from_forms(&f(1, 1, 6), &f(1, 0, 1)),
            Err(Error::MismatchedDiscriminant(..))
        ));
        assert!(matches!(
            cube_from_forms(&f(2, 2, 12), &f(4, 2, 6)),
            Err(Error::NotPairPrimitive)
        ));
    }

    #[test]
    fn symmetries() {
        let c = cube_from_forms(&f(2, 1, 3), &f(2, 1, 3)).unwrap();
        let (q1, q2, q3) = c.slicings().unwrap();
        let r = c.apply(CubeOp::Reflect);
        assert_eq!(r.apply(CubeOp::Reflect), c);
        let (r1, r2, r3) = r.slicings().unwrap();
        assert_eq!(
            (cls(&r1), cls(&r2), cls(&r3)),
            (cls(&q1).bar(), cls(&q2).bar(), cls(&q3).bar())
        );
        for axis in 1..=3u8 {
            for side in 0..2u8 {
                let n = c.apply(CubeOp::NegateLayer { axis, side });
                let (n1, n2, n3) = n.slicings().unwrap();
                let orig = [&q1, &q2, &q3];
                let got = [&n1, &n2, &n3];
                for i in 0..3 {
                    let want = if i + 1 == axis as usize {
                        orig[i].bar()
                    } else {
                        orig[i].neg()
                    };
                    assert_eq!(got[i], &want);
                }
                assert_eq!(n.apply(CubeOp::NegateLayer { axis, side }), c);
            }
        }
    }

    #[test]
    fn random_cubes_share_discriminant() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..500 {
            let c = cube(std::array::from_fn(|_| rng.gen_range(-5..=5)));
            let d: Vec<BigInt> = (1..=3)
                .map(|a| {
                    let [x, y, z] = c.slice_coefficients(a);
                    &y * &y - BigInt::from(4) * x * z
                })
                .collect();
            assert!(d[0] == d[1] && d[1] == d[2]);
            if let Ok(holds) = cube_law_check(&c) {
                assert!(holds, "{c}");
            }
        }
    }
}
