use std::f64::consts::TAU;

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{grassmann_op, rotation_op, sphere_op, OrthoFrame, UnitVector};
use crate::error::{Error, Result};

/// A quandle-like operation on a space that can be sampled and measured.
pub trait SampledQuandle: Sync {
    type Point: Send;

    fn name(&self) -> String;
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Point;
    fn op(&self, a: &Self::Point, b: &Self::Point) -> Self::Point;
    /// Solves `x ∗ b = a` for `x`, when the operation knows how.
    fn op_inv(&self, _a: &Self::Point, _b: &Self::Point) -> Option<Self::Point> {
        None
    }
    fn distance(&self, a: &Self::Point, b: &Self::Point) -> f64;
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", content = "max_residual", rename_all = "snake_case")]
pub enum BijectivityResidual {
    Checked(f64),
    Unsupported,
}

/// Maximum residual per axiom over all trials.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub op: String,
    pub seed: u64,
    pub trials: usize,
    pub tol: f64,
    pub idempotency: f64,
    pub right_bijectivity: BijectivityResidual,
    pub right_distributivity: f64,
    /// Axioms whose residual exceeded `tol`.
    pub flagged: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.flagged.is_empty()
    }
}

/// Trial `i` draws from its own ChaCha stream under `seed`, so the report
/// does not depend on thread count.
pub fn check_axioms_sampled<Q: SampledQuandle>(q: &Q, trials: usize, tol: f64, seed: u64) -> AxiomReport {
    let per_trial = |i: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let x = q.sample(&mut rng);
        let y = q.sample(&mut rng);
        let z = q.sample(&mut rng);
        let idem = q.distance(&q.op(&x, &x), &x);
        let xy = q.op(&x, &y);
        let bij = q.op_inv(&xy, &y).map(|back| q.distance(&back, &x));
        let dist = q.distance(&q.op(&xy, &z), &q.op(&q.op(&x, &z), &q.op(&y, &z)));
        (idem, bij, dist)
    };
    let max_nan = |a: f64, b: f64| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) };
    let (idem, bij, dist) = (0..trials).into_par_iter().map(per_trial).reduce(
        || (0.0, Some(0.0), 0.0),
        |a, b| (max_nan(a.0, b.0), a.1.zip(b.1).map(|(p, q)| max_nan(p, q)), max_nan(a.2, b.2)),
    );
    let right_bijectivity = match bij {
        Some(v) if supports_inverse(q) => BijectivityResidual::Checked(v),
        _ => BijectivityResidual::Unsupported,
    };
    let mut flagged = Vec::new();
    let bad = |v: f64| !(v <= tol);
    if bad(idem) {
        flagged.push("idempotency".to_string());
    }
    if let BijectivityResidual::Checked(v) = right_bijectivity {
        if bad(v) {
            flagged.push("right_bijectivity".to_string());
        }
    }
    if bad(dist) {
        flagged.push("right_distributivity".to_string());
    }
    AxiomReport {
        op: q.name(),
        seed,
        trials,
        tol,
        idempotency: idem,
        right_bijectivity,
        right_distributivity: dist,
        flagged,
    }
}

fn supports_inverse<Q: SampledQuandle>(q: &Q) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let a = q.sample(&mut rng);
    q.op_inv(&a, &a).is_some()
}

fn check_sphere_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidArgument("sphere dimension must be at least 1".into()));
    }
    Ok(())
}

/// `S^dim ⊂ ℝ^{dim+1}` with `x ∗ y = 2(x·y)y − x`; an involution in `y`.
#[derive(Clone, Copy, Debug)]
pub struct SphereQuandle {
    dim: usize,
}

impl SphereQuandle {
    pub fn new(dim: usize) -> Result<Self> {
        check_sphere_dim(dim)?;
        Ok(SphereQuandle { dim })
    }
}

impl SampledQuandle for SphereQuandle {
    type Point = UnitVector;

    fn name(&self) -> String {
        format!("sphere S^{}", self.dim)
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> UnitVector {
        UnitVector::random(self.dim + 1, rng)
    }

    fn op(&self, a: &UnitVector, b: &UnitVector) -> UnitVector {
        sphere_op(a, b).expect("sampled points share a dimension")
    }

    fn op_inv(&self, a: &UnitVector, b: &UnitVector) -> Option<UnitVector> {
        Some(self.op(a, b))
    }

    fn distance(&self, a: &UnitVector, b: &UnitVector) -> f64 {
        a.distance(b)
    }
}

/// Rotation by `psi` about the second argument, on `S²`.
#[derive(Clone, Copy, Debug)]
pub struct RotationQuandle {
    psi: f64,
}

impl RotationQuandle {
    pub fn new(psi: f64) -> Result<Self> {
        if !(psi > 0.0 && psi < TAU) {
            return Err(Error::InvalidArgument(format!("rotation angle {psi} outside (0, 2π)")));
        }
        Ok(RotationQuandle { psi })
    }
}

impl SampledQuandle for RotationQuandle {
    type Point = UnitVector;

    fn name(&self) -> String {
        format!("rotation psi={}", self.psi)
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> UnitVector {
        UnitVector::random(3, rng)
    }

    fn op(&self, a: &UnitVector, b: &UnitVector) -> UnitVector {
        rotation_op(self.psi, a, b).expect("angle and dimension checked")
    }

    fn op_inv(&self, a: &UnitVector, b: &UnitVector) -> Option<UnitVector> {
        Some(rotation_op(TAU - self.psi, a, b).expect("angle and dimension checked"))
    }

    fn distance(&self, a: &UnitVector, b: &UnitVector) -> f64 {
        a.distance(b)
    }
}

/// `Gr(rank, dim)` with reflection through the second subspace.
#[derive(Clone, Copy, Debug)]
pub struct GrassmannQuandle {
    rank: usize,
    dim: usize,
}

impl GrassmannQuandle {
    pub fn new(rank: usize, dim: usize) -> Result<Self> {
        if rank == 0 || rank > dim {
            return Err(Error::InvalidArgument(format!("need 1 ≤ rank ≤ dim, got rank {rank}, dim {dim}")));
        }
        Ok(GrassmannQuandle { rank, dim })
    }
}

impl SampledQuandle for GrassmannQuandle {
    type Point = OrthoFrame;

    fn name(&self) -> String {
        format!("grassmann Gr({},{})", self.rank, self.dim)
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> OrthoFrame {
        OrthoFrame::random(self.rank, self.dim, rng)
    }

    fn op(&self, a: &OrthoFrame, b: &OrthoFrame) -> OrthoFrame {
        grassmann_op(a, b).expect("sampled frames share a shape")
    }

    fn op_inv(&self, a: &OrthoFrame, b: &OrthoFrame) -> Option<OrthoFrame> {
        Some(self.op(a, b))
    }

    fn distance(&self, a: &OrthoFrame, b: &OrthoFrame) -> f64 {
        a.subspace_distance(b)
    }
}

/// `x ∗ y = x` on `S^dim`.
#[derive(Clone, Copy, Debug)]
pub struct TrivialSphere {
    dim: usize,
}

impl TrivialSphere {
    pub fn new(dim: usize) -> Result<Self> {
        check_sphere_dim(dim)?;
        Ok(TrivialSphere { dim })
    }
}

impl SampledQuandle for TrivialSphere {
    type Point = UnitVector;

    fn name(&self) -> String {
        format!("trivial S^{}", self.dim)
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> UnitVector {
        UnitVector::random(self.dim + 1, rng)
    }

    fn op(&self, a: &UnitVector, _b: &UnitVector) -> UnitVector {
        a.clone()
    }

    fn op_inv(&self, a: &UnitVector, _b: &UnitVector) -> Option<UnitVector> {
        Some(a.clone())
    }

    fn distance(&self, a: &UnitVector, b: &UnitVector) -> f64 {
        a.distance(b)
    }
}

/// `x ∗ y = 2(x·y)y − c·x` on raw vectors, a deliberately broken sphere
/// operation for mutation testing (`c = 1` recovers the real one).
#[derive(Clone, Copy, Debug)]
pub struct CorruptedSphere {
    dim: usize,
    c: f64,
}

impl CorruptedSphere {
    pub fn new(dim: usize, c: f64) -> Result<Self> {
        check_sphere_dim(dim)?;
        Ok(CorruptedSphere { dim, c })
    }
}

impl SampledQuandle for CorruptedSphere {
    type Point = DVector<f64>;

    fn name(&self) -> String {
        format!("corrupted S^{} c={}", self.dim, self.c)
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> DVector<f64> {
        UnitVector::random(self.dim + 1, rng).coords().clone()
    }

    fn op(&self, a: &DVector<f64>, b: &DVector<f64>) -> DVector<f64> {
        b * (2.0 * a.dot(b)) - a * self.c
    }

    fn distance(&self, a: &DVector<f64>, b: &DVector<f64>) -> f64 {
        (a - b).norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sphere_circle_residuals() {
        let r = check_axioms_sampled(&SphereQuandle::new(1).unwrap(), 1000, 1e-10, 42);
        assert!(r.passed(), "{r:?}");
        assert!(matches!(r.right_bijectivity, BijectivityResidual::Checked(v) if v < 1e-10));
        assert_eq!(r.seed, 42);
    }

    #[test]
    fn trivial_op_is_exact() {
        let r = check_axioms_sampled(&TrivialSphere::new(2).unwrap(), 200, 0.0, 1);
        assert_eq!((r.idempotency, r.right_distributivity), (0.0, 0.0));
        assert_eq!(r.right_bijectivity, BijectivityResidual::Checked(0.0));
        assert!(r.passed());
    }

    #[test]
    fn corrupted_op_is_flagged() {
        let r = check_axioms_sampled(&CorruptedSphere::new(2, 0.9).unwrap(), 1000, 1e-9, 42);
        assert!(r.right_distributivity > 0.01, "{r:?}");
        assert!(r.flagged.contains(&"right_distributivity".to_string()));
        assert_eq!(r.right_bijectivity, BijectivityResidual::Unsupported);
    }

    #[test]
    fn rotation_and_grassmann_pass() {
        let r = check_axioms_sampled(&RotationQuandle::new(2.0 * PI / 3.0).unwrap(), 1000, 1e-9, 5);
        assert!(r.passed(), "{r:?}");
        let g = check_axioms_sampled(&GrassmannQuandle::new(2, 4).unwrap(), 500, 1e-8, 5);
        assert!(g.passed(), "{g:?}");
    }

    #[test]
    fn reproducible_across_thread_counts() {
        let q = SphereQuandle::new(2).unwrap();
        let a = check_axioms_sampled(&q, 300, 1e-9, 9);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| check_axioms_sampled(&q, 300, 1e-9, 9));
        assert_eq!(a, b);
    }
}
