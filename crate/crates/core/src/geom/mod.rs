//! Floating-point quandles on spheres and Grassmannians, and the spherical
//! rotation quandles, with seeded sampled axiom checks.
//!
//! Real projective space is not modelled separately: `sphere_op` commutes
//! with `x ↦ −x` in both arguments, so it descends to lines through 0.

mod sampled;

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector, Vector3};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use sampled::{
    check_axioms_sampled, AxiomReport, BijectivityResidual, CorruptedSphere, GrassmannQuandle, RotationQuandle,
    SampledQuandle, SphereQuandle, TrivialSphere,
};

/// Tolerance for subspace equality via projector distance.
pub const SUBSPACE_TOL: f64 = 1e-8;

/// A point on the unit sphere in `ℝ^{n+1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "Vec<f64>", try_from = "Vec<f64>")]
pub struct UnitVector(DVector<f64>);

impl UnitVector {
    /// Normalizes `coords`; fails on a zero or non-finite vector.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        Self::normalized(DVector::from_vec(coords))
    }

    fn normalized(v: DVector<f64>) -> Result<Self> {
        let norm = v.norm();
        if v.is_empty() || !norm.is_finite() || norm < 1e-300 {
            return Err(Error::InvalidArgument("cannot normalize a zero or non-finite vector".into()));
        }
        Ok(UnitVector(v / norm))
    }

    /// Uniform point on the sphere in `ℝ^ambient`.
    pub fn random<R: Rng + ?Sized>(ambient: usize, rng: &mut R) -> Self {
        loop {
            let v = DVector::from_fn(ambient, |_, _| rng.sample::<f64, _>(StandardNormal));
            if let Ok(u) = Self::normalized(v) {
                return u;
            }
        }
    }

    /// Dimension of the ambient space.
    pub fn ambient_dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &DVector<f64> {
        &self.0
    }

    pub fn distance(&self, other: &UnitVector) -> f64 {
        (&self.0 - &other.0).norm()
    }
}

impl From<UnitVector> for Vec<f64> {
    fn from(u: UnitVector) -> Self {
        u.0.as_slice().to_vec()
    }
}

impl TryFrom<Vec<f64>> for UnitVector {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        UnitVector::new(v)
    }
}

/// An orthonormal basis, stored as the rows of an `r × d` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthoFrame(DMatrix<f64>);

impl OrthoFrame {
    /// Orthonormalizes the rows; fails when they are linearly dependent.
    pub fn new(rows: DMatrix<f64>) -> Result<Self> {
        let (r, d) = rows.shape();
        if r == 0 || r > d {
            return Err(Error::InvalidArgument(format!("a frame needs 1 ≤ rank ≤ dimension, got {r}×{d}")));
        }
        let scale = rows.amax();
        let qr = rows.transpose().qr();
        let rr = qr.r();
        if !scale.is_finite() || (0..r).any(|i| rr[(i, i)].abs() <= 1e-12 * scale.max(1e-300)) {
            return Err(Error::InvalidArgument("frame rows are linearly dependent".into()));
        }
        Ok(OrthoFrame(qr.q().transpose()))
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let d = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::Malformed("frame rows have different lengths".into()));
        }
        Self::new(DMatrix::from_fn(rows.len(), d, |i, j| rows[i][j]))
    }

    pub fn random<R: Rng + ?Sized>(rank: usize, dim: usize, rng: &mut R) -> Self {
        loop {
            let m = DMatrix::from_fn(rank, dim, |_, _| rng.sample::<f64, _>(StandardNormal));
            if let Ok(f) = Self::new(m) {
                return f;
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.0.nrows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.0.ncols()
    }

    pub fn rows(&self) -> &DMatrix<f64> {
        &self.0
    }

    /// Orthogonal projector onto the span, `Fᵀ F`.
    pub fn projector(&self) -> DMatrix<f64> {
        self.0.transpose() * &self.0
    }

    /// Frobenius distance between projectors.
    pub fn subspace_distance(&self, other: &OrthoFrame) -> f64 {
        (self.projector() - other.projector()).norm()
    }

    pub fn same_subspace(&self, other: &OrthoFrame) -> bool {
        self.shape_matches(other) && self.subspace_distance(other) < SUBSPACE_TOL
    }

    fn shape_matches(&self, other: &OrthoFrame) -> bool {
        self.0.shape() == other.0.shape()
    }
}

/// `x ∗ y = 2(x·y)y − x`, renormalized.
pub fn sphere_op(x: &UnitVector, y: &UnitVector) -> Result<UnitVector> {
    if x.ambient_dim() != y.ambient_dim() {
        return Err(Error::InvalidArgument(format!(
            "dimension mismatch: {} vs {}",
            x.ambient_dim(),
            y.ambient_dim()
        )));
    }
    let (x, y) = (&x.0, &y.0);
    UnitVector::normalized(y * (2.0 * x.dot(y)) - x)
}

/// Reflects every row of `u` through the span of `w`: `v ↦ 2Σ(wᵢ·v)wᵢ − v`.
pub fn grassmann_op(u: &OrthoFrame, w: &OrthoFrame) -> Result<OrthoFrame> {
    if !u.shape_matches(w) {
        return Err(Error::InvalidArgument(format!(
            "frame shape mismatch: {:?} vs {:?}",
            u.0.shape(),
            w.0.shape()
        )));
    }
    let d = w.ambient_dim();
    let reflection = w.projector() * 2.0 - DMatrix::<f64>::identity(d, d);
    OrthoFrame::new(&u.0 * reflection)
}

/// Rotation of `u` about the axis `v` by `psi`, for `0 < psi < 2π`.
pub fn rotation_op(psi: f64, u: &UnitVector, v: &UnitVector) -> Result<UnitVector> {
    if !(psi > 0.0 && psi < TAU) {
        return Err(Error::InvalidArgument(format!("rotation angle {psi} outside (0, 2π)")));
    }
    if u.ambient_dim() != 3 || v.ambient_dim() != 3 {
        return Err(Error::InvalidArgument("rotation quandles live on the sphere in ℝ³".into()));
    }
    let u3 = Vector3::new(u.0[0], u.0[1], u.0[2]);
    let v3 = Vector3::new(v.0[0], v.0[1], v.0[2]);
    let (s, c) = psi.sin_cos();
    let r = u3 * c + v3.cross(&u3) * s + v3 * (v3.dot(&u3) * (1.0 - c));
    UnitVector::new(r.as_slice().to_vec())
}
