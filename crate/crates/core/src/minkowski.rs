//! Linear algebra of Minkowski 4-space with the signature (3,1) inner product.
//!
//! Coordinates are taken in the fixed frame `e1, e2, e3, e4` with
//! `<e1,e1> = <e2,e2> = <e3,e3> = 1` and `<e4,e4> = -1`.

use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub, SubAssign};

use nalgebra::Matrix4;

use crate::error::{Error, Result};

/// Default absolute tolerance for degeneracy tests.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Diagonal of the metric in the fixed frame.
pub const METRIC: [f64; 4] = [1.0, 1.0, 1.0, -1.0];

/// A vector of Minkowski 4-space in the fixed frame.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SpacetimeVector(pub [f64; 4]);

impl SpacetimeVector {
    pub const ZERO: Self = Self([0.0; 4]);

    pub const fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        Self([x1, x2, x3, x4])
    }

    /// Basis vector `e_i`, `i` in `1..=4`.
    pub fn basis(i: usize) -> Self {
        assert!((1..=4).contains(&i), "basis index must be in 1..=4");
        let mut c = [0.0; 4];
        c[i - 1] = 1.0;
        Self(c)
    }

    pub fn components(&self) -> [f64; 4] {
        self.0
    }

    pub fn inner(&self, other: &Self) -> f64 {
        inner(self, other)
    }

    /// `<v,v>`.
    pub fn square(&self) -> f64 {
        inner(self, self)
    }

    pub fn max_norm(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    /// Rescale to `<v,v> = ±1`; `None` for (near-)lightlike vectors.
    pub fn pseudo_normalized(&self, tol: f64) -> Option<Self> {
        let q = self.square();
        if q.abs() <= tol {
            None
        } else {
            Some(*self * (1.0 / q.abs().sqrt()))
        }
    }
}

impl Index<usize> for SpacetimeVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for SpacetimeVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut c = self.0;
        c.iter_mut().zip(rhs.0).for_each(|(a, b)| *a += b);
        Self(c)
    }
}

impl AddAssign for SpacetimeVector {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for SpacetimeVector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut c = self.0;
        c.iter_mut().zip(rhs.0).for_each(|(a, b)| *a -= b);
        Self(c)
    }
}

impl SubAssign for SpacetimeVector {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl Neg for SpacetimeVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|c| -c))
    }
}

impl Mul<f64> for SpacetimeVector {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self(self.0.map(|c| c * s))
    }
}

impl Mul<SpacetimeVector> for f64 {
    type Output = SpacetimeVector;
    fn mul(self, v: SpacetimeVector) -> SpacetimeVector {
        v * self
    }
}

/// Causal character of a vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CausalClass {
    Spacelike,
    Timelike,
    Lightlike,
    Zero,
}

/// The signature (3,1) inner product `x1 y1 + x2 y2 + x3 y3 - x4 y4`.
///
/// Evaluated with compensated products and sums, so the result is accurate
/// even when the terms cancel, as they do for strongly boosted vectors.
pub fn inner(u: &SpacetimeVector, v: &SpacetimeVector) -> f64 {
    let mut sum = 0.0;
    let mut err = 0.0;
    for i in 0..4 {
        let a = METRIC[i] * u.0[i];
        let p = a * v.0[i];
        let p_err = a.mul_add(v.0[i], -p);
        let t = sum + p;
        let z = t - sum;
        err += (sum - (t - z)) + (p - z) + p_err;
        sum = t;
    }
    sum + err
}

pub fn causal_class(v: &SpacetimeVector, tol: f64) -> CausalClass {
    if v.max_norm() <= tol {
        return CausalClass::Zero;
    }
    let q = v.square();
    if q > tol {
        CausalClass::Spacelike
    } else if q < -tol {
        CausalClass::Timelike
    } else {
        CausalClass::Lightlike
    }
}

/// Determinant of the matrix whose columns are `a, b, c, d` in the fixed
/// frame. Positive iff the quadruple is positively oriented.
pub fn orientation_det(
    a: &SpacetimeVector,
    b: &SpacetimeVector,
    c: &SpacetimeVector,
    d: &SpacetimeVector,
) -> f64 {
    Matrix4::from_fn(|row, col| [a, b, c, d][col].0[row]).determinant()
}

fn dot(a: &SpacetimeVector, b: &SpacetimeVector) -> f64 {
    a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum()
}

fn unit(a: SpacetimeVector) -> SpacetimeVector {
    a * (1.0 / dot(&a, &a).sqrt())
}

/// Removes the components along the Euclidean-orthonormal `basis`, twice.
fn reject(mut w: SpacetimeVector, basis: &[SpacetimeVector]) -> SpacetimeVector {
    for _ in 0..2 {
        for q in basis {
            w -= dot(&w, q) * *q;
        }
    }
    w
}

/// Pseudo-orthonormal frame `(n1, n2)` of the normal plane of the spacelike
/// 2-plane spanned by `t1, t2`.
///
/// `<n1,n1> = 1`, `<n2,n2> = -1`, both orthogonal to `t1, t2`, and
/// `{t1, t2, n1, n2}` is positively oriented.
///
/// The normal plane is the Euclidean complement of `{η t1, η t2}`; an
/// orthonormal basis of it is rotated to diagonalize the induced 2x2 metric.
pub fn normal_frame(
    t1: &SpacetimeVector,
    t2: &SpacetimeVector,
    tol: f64,
) -> Result<(SpacetimeVector, SpacetimeVector)> {
    let g11 = t1.square();
    let g12 = inner(t1, t2);
    let g22 = t2.square();
    let gram = g11 * g22 - g12 * g12;
    if g11 <= tol || gram <= tol {
        return Err(Error::DegenerateTangentPlane { gram });
    }
    let eta = |t: &SpacetimeVector| SpacetimeVector(std::array::from_fn(|i| METRIC[i] * t.0[i]));
    let q1 = unit(eta(t1));
    let q2 = unit(reject(eta(t2), &[q1]));

    let largest = |basis: &[SpacetimeVector]| {
        (1..=4)
            .map(|i| reject(SpacetimeVector::basis(i), basis))
            .fold(SpacetimeVector::ZERO, |best, w| if dot(&w, &w) > dot(&best, &best) { w } else { best })
    };
    let a = unit(largest(&[q1, q2]));
    let c = unit(largest(&[q1, q2, a]));

    let (p, r, s) = (a.square(), inner(&a, &c), c.square());
    let theta = 0.5 * (2.0 * r).atan2(p - s);
    let (sin, cos) = theta.sin_cos();
    let e1 = cos * a + sin * c;
    let e2 = cos * c - sin * a;
    let (l1, l2) = (e1.square(), e2.square());
    let (n1, mut n2) = match (l1 > tol, l2 > tol, l1 < -tol, l2 < -tol) {
        (true, _, _, true) => (e1 * (1.0 / l1.sqrt()), e2 * (1.0 / (-l2).sqrt())),
        (_, true, true, _) => (e2 * (1.0 / l2.sqrt()), e1 * (1.0 / (-l1).sqrt())),
        _ => return Err(Error::LightlikeNormalDirection),
    };
    if orientation_det(t1, t2, &n1, &n2) < 0.0 {
        n2 = -n2;
    }
    Ok((n1, n2))
}
