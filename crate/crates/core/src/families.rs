//! Seeded ping-pong families of affine representations.
//!
//! Generators are hyperbolic multiboosts about transverse axes with
//! translations pushed along their neutral directions, the classical
//! recipe for proper affine deformations. The builders only construct the
//! candidates deterministically from a seed; properness and proximality
//! are certified downstream by the scans, never assumed.
//!
//! Proper affine free actions on `R^{2n+1}` exist only for odd n; the
//! builder rejects even n outright.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affine::{AffineError, AffineMap, Representation};
use crate::invariant::{self, MargulisError};
use crate::linalg::QuadraticSpace;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error(
        "no proper affine free actions exist on R^{{2n+1}} for even n (got n = {0}); \
         use an odd signature parameter"
    )]
    EvenN(usize),
    #[error("rank must be at least 1, got {0}")]
    BadRank(usize),
    #[error("strength must exceed 1 (eigenvalue gap), got {0}")]
    BadStrength(f64),
    #[error("family parameter n must be at least 1")]
    BadN,
    #[error(transparent)]
    Affine(#[from] AffineError),
    #[error(transparent)]
    Margulis(#[from] MargulisError),
    #[error(transparent)]
    Linalg(#[from] crate::linalg::LinalgError),
}

pub type Result<T> = std::result::Result<T, FamilyError>;

/// Which seeded construction to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    /// Two-or-more hyperbolic boosts in `SO_0(1,2)` about transverse axes.
    SchottkySo21,
    /// Conjugated multiboosts in `SO_0(n,n+1)`, odd n.
    AmsOddN,
}

/// Deterministic family specification. Identical values give identical
/// representations, entry for entry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeededFamily {
    pub family: FamilyKind,
    pub n: usize,
    pub rank: usize,
    /// Eigenvalue-gap parameter: each generator's top modulus is close to
    /// this value. Larger means stronger ping-pong separation.
    pub strength: f64,
    pub translation_scale: f64,
    pub seed: u64,
}

impl Default for SeededFamily {
    fn default() -> Self {
        Self {
            family: FamilyKind::SchottkySo21,
            n: 1,
            rank: 2,
            strength: 2.5,
            translation_scale: 1.0,
            seed: 7,
        }
    }
}

/// Rotation by `angle` in the coordinate plane `(i, j)`. Both indices must
/// carry the same sign of the form, which makes this an isometry.
fn plane_rotation(dim: usize, i: usize, j: usize, angle: f64) -> DMatrix<f64> {
    let mut m = DMatrix::identity(dim, dim);
    m[(i, i)] = angle.cos();
    m[(j, j)] = angle.cos();
    m[(i, j)] = -angle.sin();
    m[(j, i)] = angle.sin();
    m
}

/// Boost of rapidity `t` in the hyperbolic plane spanned by positive
/// coordinate `p` and negative coordinate `q`.
fn plane_boost(dim: usize, p: usize, q: usize, t: f64) -> DMatrix<f64> {
    let mut m = DMatrix::identity(dim, dim);
    m[(p, p)] = t.cosh();
    m[(q, q)] = t.cosh();
    m[(p, q)] = t.sinh();
    m[(q, p)] = t.sinh();
    m
}

/// Multiboost with rapidity `theta[k]` in the hyperbolic plane spanned by
/// positive coordinate `k` and negative coordinate `n+1+k`; the middle
/// coordinate (the distinguished axis) is fixed.
fn multiboost(space: &QuadraticSpace, thetas: &[f64]) -> DMatrix<f64> {
    let n = space.n();
    let dim = space.dim();
    let mut m = DMatrix::identity(dim, dim);
    for (k, &t) in thetas.iter().enumerate() {
        let (p, q) = (k, n + 1 + k);
        m[(p, p)] = t.cosh();
        m[(q, q)] = t.cosh();
        m[(p, q)] = t.sinh();
        m[(q, p)] = t.sinh();
    }
    m
}

/// An isometry assembled from plane rotations and boosts; the inverse is
/// the reversed product of negated factors, exact up to rounding.
#[derive(Clone)]
struct Factored {
    dim: usize,
    /// (i, j, angle_or_rapidity, is_boost)
    factors: Vec<(usize, usize, f64, bool)>,
}

impl Factored {
    fn new(dim: usize) -> Self {
        Self {
            dim,
            factors: Vec::new(),
        }
    }

    fn rotate(mut self, i: usize, j: usize, angle: f64) -> Self {
        self.factors.push((i, j, angle, false));
        self
    }

    fn boost(mut self, p: usize, q: usize, t: f64) -> Self {
        self.factors.push((p, q, t, true));
        self
    }

    fn matrix(&self) -> DMatrix<f64> {
        let mut m = DMatrix::identity(self.dim, self.dim);
        for &(i, j, a, is_boost) in &self.factors {
            let f = if is_boost {
                plane_boost(self.dim, i, j, a)
            } else {
                plane_rotation(self.dim, i, j, a)
            };
            m = m * f;
        }
        m
    }

    fn inverse_matrix(&self) -> DMatrix<f64> {
        let mut m = DMatrix::identity(self.dim, self.dim);
        for &(i, j, a, is_boost) in self.factors.iter().rev() {
            let f = if is_boost {
                plane_boost(self.dim, i, j, -a)
            } else {
                plane_rotation(self.dim, i, j, -a)
            };
            m = m * f;
        }
        m
    }

    fn conjugate(&self, core: DMatrix<f64>) -> DMatrix<f64> {
        self.matrix() * core * self.inverse_matrix()
    }
}

/// Builds the seeded representation. The output is deterministic in the
/// specification and is expected to pass the proximality scan and, for
/// default parameters, a positive-uniform properness scan; both are
/// verified by the scans themselves, not assumed here.
pub fn build_family(spec: &SeededFamily) -> Result<Representation> {
    build_family_with_geometry(spec, &FamilyGeometry::default())
}

/// Internal geometric knobs of the construction; the defaults are the
/// calibrated pants-like configuration, exposed separately so the test
/// suite can probe the parameter space.
#[derive(Debug, Clone)]
pub struct FamilyGeometry {
    /// Distance between consecutive axis feet along the common geodesic.
    pub separation: f64,
    /// Alternate the translation sense of consecutive generators.
    pub alternate_sense: bool,
    /// Magnitude of the random tilt applied to each axis.
    pub tilt: f64,
}

impl Default for FamilyGeometry {
    fn default() -> Self {
        Self {
            separation: 0.9,
            alternate_sense: true,
            tilt: 0.12,
        }
    }
}

/// Builds the family with explicit geometric knobs. `build_family` uses
/// the calibrated defaults.
pub fn build_family_with_geometry(
    spec: &SeededFamily,
    geometry: &FamilyGeometry,
) -> Result<Representation> {
    if spec.n == 0 {
        return Err(FamilyError::BadN);
    }
    if spec.rank == 0 {
        return Err(FamilyError::BadRank(spec.rank));
    }
    if !(spec.strength > 1.0) {
        return Err(FamilyError::BadStrength(spec.strength));
    }
    match spec.family {
        FamilyKind::SchottkySo21 => {
            if spec.n != 1 {
                return Err(FamilyError::BadN);
            }
        }
        FamilyKind::AmsOddN => {
            if spec.n % 2 == 0 {
                return Err(FamilyError::EvenN(spec.n));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    build_configured(spec, geometry, &mut rng)
}

fn build_configured(
    spec: &SeededFamily,
    geometry: &FamilyGeometry,
    rng: &mut ChaCha8Rng,
) -> Result<Representation> {
    let space = QuadraticSpace::new(spec.n)?;
    let rank = spec.rank;
    let n = spec.n;
    let dim = space.dim();

    let mut gens: Vec<AffineMap> = Vec::with_capacity(rank);
    for i in 0..rank {
        // distinct rapidities per plane, jittered so moduli never collide
        let sense = if geometry.alternate_sense && i % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        let thetas: Vec<f64> = (0..n)
            .map(|k| {
                let jitter: f64 = rng.random_range(-0.04..0.04);
                sense * spec.strength.ln() * (1.0 + 0.11 * k as f64 + jitter)
            })
            .collect();
        let core = multiboost(&space, &thetas);

        // foot of this generator's axis along the common geodesic
        let foot = geometry.separation * (i as f64 - (rank as f64 - 1.0) / 2.0)
            * (1.0 + rng.random_range(-0.05..0.05));
        let tilt: f64 = rng.random_range(-geometry.tilt..geometry.tilt);
        let mut conj = Factored::new(dim).boost(0, n, foot).rotate(n, n + 1, tilt);
        // in higher signature, stir the remaining negative and positive
        // coordinates so the flags sit in general position
        for k in 1..n {
            let a: f64 = rng.random_range(-0.4..0.4);
            conj = conj.rotate(n, n + 1 + k, a);
            let b: f64 = rng.random_range(-0.4..0.4);
            conj = conj.rotate(k - 1, k, b);
        }
        let linear = conj.conjugate(core);

        let nd = invariant::neutral_vector(&space, &linear)?;
        // push along the neutral axis so the invariant of the generator is
        // positive: <nu|nu> = -1, so the axis component is -scale * nu
        let scale = spec.translation_scale * (1.0 + 0.25 * rng.random_range(-1.0..1.0f64));
        let mut u = &nd.nu * (-scale);
        // a small transverse component keeps the spectrum generic without
        // threatening sign uniformity
        let mut transverse = DVector::zeros(space.dim());
        for j in 0..space.dim() {
            transverse[j] = rng.random_range(-1.0..1.0);
        }
        let along = space.pairing(&transverse, &nd.nu)?;
        // remove the axis component of the noise: <nu|nu> = -1
        transverse += &nd.nu * along;
        u += transverse * (0.12 * spec.translation_scale.abs());
        gens.push(AffineMap::new(&space, linear, u)?);
    }

    let label = format!(
        "{}(n={}, rank={}, strength={}, ts={}, seed={})",
        match spec.family {
            FamilyKind::SchottkySo21 => "schottky_so21",
            FamilyKind::AmsOddN => "ams_odd_n",
        },
        spec.n,
        spec.rank,
        spec.strength,
        spec.translation_scale,
        spec.seed
    );
    Ok(Representation::new(space, gens, label)?)
}

/// A second representation with the same linear part but a differently
/// seeded translation assignment, still pushed positively along the
/// neutral axes. Useful as the far endpoint of interpolation experiments.
pub fn translation_variant(rep: &Representation, seed: u64, spread: f64) -> Result<Representation> {
    let space = rep.space().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut translations = Vec::with_capacity(rep.rank());
    for i in 0..rep.rank() {
        let nd = invariant::neutral_vector(&space, &rep.generator(i).linear)?;
        let base = rep.generator(i).translation.clone();
        let axis_gain: f64 = 1.0 + spread * rng.random_range(-1.0..1.0f64);
        let mut u = base * axis_gain;
        let mut noise = DVector::zeros(space.dim());
        for j in 0..space.dim() {
            noise[j] = rng.random_range(-1.0..1.0);
        }
        let along = space.pairing(&noise, &nd.nu)?;
        noise += &nd.nu * along;
        u += noise * (0.3 * spread);
        translations.push(u);
    }
    Ok(rep
        .with_translations(&translations)?
        .with_label(format!("{}-variant{}", rep.label(), seed)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_n_is_rejected_with_the_nonexistence_error() {
        let spec = SeededFamily {
            family: FamilyKind::AmsOddN,
            n: 2,
            ..SeededFamily::default()
        };
        match build_family(&spec) {
            Err(FamilyError::EvenN(2)) => {}
            other => panic!("expected the even-n rejection, got {other:?}"),
        }
    }

    #[test]
    fn default_family_is_deterministic_in_seed() {
        let spec = SeededFamily::default();
        let a = build_family(&spec).unwrap();
        let b = build_family(&spec).unwrap();
        for i in 0..a.rank() {
            assert_eq!(a.generator(i).linear, b.generator(i).linear);
            assert_eq!(a.generator(i).translation, b.generator(i).translation);
        }
        let c = build_family(&SeededFamily {
            seed: 8,
            ..spec
        })
        .unwrap();
        assert_ne!(a.generator(0).translation, c.generator(0).translation);
    }

    #[test]
    fn zero_translation_scale_gives_a_linear_representation() {
        let spec = SeededFamily {
            translation_scale: 0.0,
            ..SeededFamily::default()
        };
        let rep = build_family(&spec).unwrap();
        for i in 0..rep.rank() {
            assert_eq!(rep.generator(i).translation.amax(), 0.0);
        }
    }

    #[test]
    fn generator_invariants_are_positive() {
        let rep = build_family(&SeededFamily::default()).unwrap();
        for i in 0..rep.rank() {
            let nd = invariant::neutral_vector(rep.space(), &rep.generator(i).linear).unwrap();
            let a = rep
                .space()
                .pairing(&rep.generator(i).translation, &nd.nu)
                .unwrap();
            assert!(a > 0.0, "generator {i} has alpha {a}");
        }
    }

    #[test]
    fn ams_smoke_construction_n3() {
        let spec = SeededFamily {
            family: FamilyKind::AmsOddN,
            n: 3,
            rank: 2,
            strength: 2.2,
            translation_scale: 1.0,
            seed: 5,
        };
        let rep = build_family(&spec).unwrap();
        assert_eq!(rep.space().dim(), 7);
        for i in 0..rep.rank() {
            let nd = invariant::neutral_vector(rep.space(), &rep.generator(i).linear).unwrap();
            assert_eq!(nd.q_norm_sign, -1.0);
        }
    }
}
