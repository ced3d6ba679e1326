//! The pressure quadratic form, entropy normalization, constant-entropy
//! projection and the convexity experiment.
//!
//! For a fixed linear part the invariant of every class is affine in the
//! deformation parameter: `alpha_t = alpha + t alpha_dot`, exactly. All
//! stencil evaluations therefore reuse one sweep of the classes and deform
//! the spectrum algebraically, which is both faster and free of repeated
//! eigen-extraction noise.
//!
//! The pressure sample along a direction is the five-point second
//! difference of
//!
//! ```text
//! J(t) = (h(rho_t) / h(rho)) * I(rho, rho_t)
//! ```
//!
//! with `J(0) = 1` by construction. Estimator noise is propagated by a
//! fixed-seed nonparametric bootstrap over the class sample, giving a
//! principled tolerance for the positive-semidefiniteness assertion.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::affine::{Representation, TangentCocycle};
use crate::spectrum::{
    self, entropy_from_parts_unchecked, intersection_from_parts, EntropyEstimate, Properness,
    SpectrumError, SpectrumTable, Sweep, SweepRequest, TGrid,
};
use crate::tolerances::{
    BOOTSTRAP_RESAMPLES, ENTROPY_FD_STEP, RICHARDSON_REL_DEV, SHARED_LINEAR_TOL,
};
use crate::words::ClassMode;

pub type Result<T> = std::result::Result<T, SpectrumError>;

/// Spectrum of a fixed-linear-part deformation family: the base invariants
/// and their derivatives along one direction, aligned per class.
struct DeformedSpectrum {
    alphas: Vec<f64>,
    alpha_dots: Vec<f64>,
    lens: Vec<usize>,
    max_len: usize,
}

impl DeformedSpectrum {
    fn build(rep: &Representation, direction: &TangentCocycle, max_len: usize, mode: ClassMode) -> Result<(Self, SpectrumTable)> {
        let Sweep {
            table, alpha_dot, ..
        } = spectrum::sweep(&SweepRequest {
            rep,
            max_len,
            mode,
            extra_translations: Vec::new(),
            directions: vec![direction],
        })?;
        let spec = DeformedSpectrum {
            alphas: table.alphas(),
            alpha_dots: alpha_dot.into_iter().next().unwrap(),
            lens: table.word_lens(),
            max_len,
        };
        Ok((spec, table))
    }

    fn alphas_at(&self, t: f64) -> Vec<f64> {
        self.alphas
            .iter()
            .zip(self.alpha_dots.iter())
            .map(|(&a, &ad)| a + t * ad)
            .collect()
    }

    /// All stencil invariants must stay strictly on the positive side;
    /// anything else means the deformation left the proper cone.
    fn check_positive(&self, t: f64, alphas: &[f64]) -> Result<()> {
        if let Some(bad) = alphas.iter().find(|&&a| !(a > 0.0)) {
            return Err(SpectrumError::NotPositiveUniform(format!(
                "stencil point t = {t} has alpha = {bad}"
            )));
        }
        Ok(())
    }

    fn entropy_at(&self, t: f64, alphas: &[f64]) -> Result<EntropyEstimate> {
        self.check_positive(t, alphas)?;
        let grid = TGrid::default_for_parts(alphas, &self.lens, self.max_len)?;
        entropy_from_parts_unchecked(alphas, &grid)
    }
}

/// One pressure-form sample along a tangent direction.
#[derive(Debug, Clone, Serialize)]
pub struct PressureSample {
    pub direction_label: String,
    pub step: f64,
    /// J on the stencil `(-2s, -s, 0, s, 2s)`; `J(0) = 1` exactly.
    pub j_values: [f64; 5],
    /// Five-point second difference at step `s`.
    pub second_diff: f64,
    /// The same quantity recomputed at step `s/2`.
    pub second_diff_half_step: f64,
    /// Whether the two estimates agree within the Richardson tolerance
    /// (plus estimator noise).
    pub richardson_ok: bool,
    /// Bootstrap standard deviation of the second difference.
    pub eps_est: f64,
    pub accepted: bool,
    /// Intersection cut height; `None` means the whole table.
    pub t_cut: Option<f64>,
    pub classes: usize,
}

fn five_point_second_diff(j: &[f64; 5], s: f64) -> f64 {
    (-j[4] + 16.0 * j[3] - 30.0 * j[2] + 16.0 * j[1] - j[0]) / (12.0 * s * s)
}

fn j_at(
    spec: &DeformedSpectrum,
    base_entropy: f64,
    base_alphas: &[f64],
    t: f64,
    cut: f64,
) -> Result<f64> {
    let alphas_t = spec.alphas_at(t);
    let h_t = spec.entropy_at(t, &alphas_t)?;
    let i_t = intersection_from_parts(base_alphas, &alphas_t, cut)?;
    Ok(h_t.h_hat / base_entropy * i_t.value)
}

/// Configuration for a pressure sample.
#[derive(Debug, Clone, Serialize)]
pub struct PressureConfig {
    pub step: f64,
    /// Intersection cut; `None` averages over the whole table.
    pub t_cut: Option<f64>,
    pub bootstrap_resamples: usize,
    pub bootstrap_seed: u64,
}

impl Default for PressureConfig {
    fn default() -> Self {
        Self {
            step: crate::tolerances::PRESSURE_STEP,
            t_cut: None,
            bootstrap_resamples: BOOTSTRAP_RESAMPLES,
            bootstrap_seed: 0xB0075,
        }
    }
}

/// Samples the pressure quadratic form along `direction` by the five-point
/// stencil, with a Richardson consistency check at half step and a
/// bootstrap noise estimate. Every stencil representation must stay
/// positive-uniform.
pub fn pressure_quadratic(
    rep: &Representation,
    direction: &TangentCocycle,
    max_len: usize,
    mode: ClassMode,
    cfg: &PressureConfig,
) -> Result<PressureSample> {
    let (spec, _table) = DeformedSpectrum::build(rep, direction, max_len, mode)?;
    let s = cfg.step;
    let cut = cfg.t_cut.unwrap_or(f64::INFINITY);

    let base_alphas = spec.alphas_at(0.0);
    spec.check_positive(0.0, &base_alphas)?;
    let base_entropy = spec.entropy_at(0.0, &base_alphas)?.h_hat;

    let stencil = [-2.0 * s, -s, 0.0, s, 2.0 * s];
    let mut j_values = [0.0f64; 5];
    for (k, &t) in stencil.iter().enumerate() {
        j_values[k] = j_at(&spec, base_entropy, &base_alphas, t, cut)?;
    }
    let second_diff = five_point_second_diff(&j_values, s);

    // Richardson check at half step; the +-s values are shared.
    let h = s / 2.0;
    let j_half = [
        j_values[1],
        j_at(&spec, base_entropy, &base_alphas, -h, cut)?,
        j_values[2],
        j_at(&spec, base_entropy, &base_alphas, h, cut)?,
        j_values[3],
    ];
    let second_diff_half_step = five_point_second_diff(&j_half, h);

    let eps_est = bootstrap_second_diff_std(&spec, s, cut, cfg)?;
    let scale = second_diff.abs().max(second_diff_half_step.abs());
    let richardson_ok =
        (second_diff - second_diff_half_step).abs() <= RICHARDSON_REL_DEV * scale + eps_est;

    Ok(PressureSample {
        direction_label: direction.label.clone(),
        step: s,
        j_values,
        second_diff,
        second_diff_half_step,
        richardson_ok,
        eps_est,
        accepted: richardson_ok && second_diff.is_finite(),
        t_cut: cfg.t_cut,
        classes: spec.alphas.len(),
    })
}

/// Standard deviation of the second difference over bootstrap resamples of
/// the class set, everything recomputed from the cached per-class data.
fn bootstrap_second_diff_std(
    spec: &DeformedSpectrum,
    s: f64,
    cut: f64,
    cfg: &PressureConfig,
) -> Result<f64> {
    let m = spec.alphas.len();
    if m == 0 {
        return Err(SpectrumError::EmptyTable);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.bootstrap_seed);
    let stencil = [-2.0 * s, -s, 0.0, s, 2.0 * s];
    let mut samples: Vec<f64> = Vec::with_capacity(cfg.bootstrap_resamples);
    let mut failures = 0usize;
    for _ in 0..cfg.bootstrap_resamples {
        let idx: Vec<usize> = (0..m).map(|_| rng.random_range(0..m)).collect();
        let alphas: Vec<f64> = idx.iter().map(|&i| spec.alphas[i]).collect();
        let dots: Vec<f64> = idx.iter().map(|&i| spec.alpha_dots[i]).collect();
        let lens: Vec<usize> = idx.iter().map(|&i| spec.lens[i]).collect();
        let resampled = DeformedSpectrum {
            alphas,
            alpha_dots: dots,
            lens,
            max_len: spec.max_len,
        };
        let run = || -> Result<f64> {
            let base = resampled.alphas_at(0.0);
            let h0 = resampled.entropy_at(0.0, &base)?.h_hat;
            let mut j = [0.0f64; 5];
            for (k, &t) in stencil.iter().enumerate() {
                j[k] = j_at(&resampled, h0, &base, t, cut)?;
            }
            Ok(five_point_second_diff(&j, s))
        };
        match run() {
            Ok(v) => samples.push(v),
            Err(_) => failures += 1,
        }
    }
    if samples.len() < cfg.bootstrap_resamples / 2 {
        return Err(SpectrumError::InsufficientData {
            t: cut,
            count: samples.len(),
            need: cfg.bootstrap_resamples / 2,
        });
    }
    let _ = failures;
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    let var = samples.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
        / (samples.len() - 1) as f64;
    Ok(var.sqrt())
}

/// Rescales the representation so its re-estimated entropy is `k`; the
/// counting-level scaling identity makes the result exact up to grid
/// arithmetic. Returns the new representation, the applied factor and the
/// base estimate.
pub fn normalize_entropy(
    rep: &Representation,
    table: &SpectrumTable,
    k: f64,
) -> Result<(Representation, f64, EntropyEstimate)> {
    if !(k > 0.0) {
        return Err(SpectrumError::BadGrid(format!(
            "target entropy must be positive, got {k}"
        )));
    }
    let grid = TGrid::default_for(table)?;
    let est = spectrum::entropy_estimate(table, &grid)?;
    let scale = est.h_hat / k;
    Ok((rep.scale_translation(scale), scale, est))
}

/// One interior point of a convexity scan.
#[derive(Debug, Clone, Serialize)]
pub struct ConvexityPoint {
    pub t: f64,
    pub h_hat: f64,
    pub stderr: f64,
    pub positive_uniform: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvexityReport {
    pub k: f64,
    pub h0: f64,
    pub h1: f64,
    pub stderr0: f64,
    pub stderr1: f64,
    pub points: Vec<ConvexityPoint>,
    pub max_interior_h: f64,
    /// `k - max_interior_h`
    pub margin: f64,
}

/// Scans the entropy of translation interpolations between two endpoint
/// representations sharing a linear part and normalized to entropy `k`.
/// Every interior interpolant must stay in the positive cone (exact, by
/// per-class linearity); the report carries the interior maximum of the
/// entropy and its margin below `k`.
pub fn convexity_scan(
    rep0: &Representation,
    rep1: &Representation,
    k: f64,
    t_grid: &[f64],
    max_len: usize,
    mode: ClassMode,
) -> Result<ConvexityReport> {
    let dev = Representation::linear_part_deviation(rep0, rep1)?;
    if dev > SHARED_LINEAR_TOL {
        return Err(SpectrumError::NotPositiveUniform(format!(
            "endpoints do not share linear parts (deviation {dev:.3e})"
        )));
    }
    if t_grid.iter().any(|&t| !(0.0 < t && t < 1.0)) {
        return Err(SpectrumError::BadGrid(
            "convexity grid must be strictly interior to (0, 1)".into(),
        ));
    }

    let rep1_translations: Vec<_> = (0..rep1.rank())
        .map(|i| rep1.generator(i).translation.clone())
        .collect();
    let Sweep {
        table, extra_alpha, ..
    } = spectrum::sweep(&SweepRequest {
        rep: rep0,
        max_len,
        mode,
        extra_translations: vec![rep1_translations],
        directions: Vec::new(),
    })?;
    let alphas0 = table.alphas();
    let alphas1 = &extra_alpha[0];
    let lens = table.word_lens();

    let scan0 = spectrum::properness_scan(&table)?;
    if scan0.verdict != Properness::PositiveUniform {
        return Err(SpectrumError::NotPositiveUniform(format!(
            "endpoint 0 is {:?}",
            scan0.verdict
        )));
    }
    if let Some(&bad) = alphas1.iter().find(|&&a| !(a > 0.0)) {
        return Err(SpectrumError::NotPositiveUniform(format!(
            "endpoint 1 leaves the positive cone (alpha = {bad}); opposite-cone \
             endpoints cannot be interpolated"
        )));
    }

    let grid0 = TGrid::default_for_parts(&alphas0, &lens, max_len)?;
    let est0 = entropy_from_parts_unchecked(&alphas0, &grid0)?;
    let grid1 = TGrid::default_for_parts(alphas1, &lens, max_len)?;
    let est1 = entropy_from_parts_unchecked(alphas1, &grid1)?;
    for (which, est) in [(0, &est0), (1, &est1)] {
        if (est.h_hat - k).abs() > est.stderr.max(1e-9 * k) {
            return Err(SpectrumError::BadGrid(format!(
                "endpoint {which} is not normalized to entropy {k}: \
                 h = {:.6} +- {:.2e}",
                est.h_hat, est.stderr
            )));
        }
    }

    let mut points = Vec::with_capacity(t_grid.len());
    let mut max_interior_h = f64::NEG_INFINITY;
    for &t in t_grid {
        let alphas_t: Vec<f64> = alphas0
            .iter()
            .zip(alphas1.iter())
            .map(|(&a0, &a1)| (1.0 - t) * a0 + t * a1)
            .collect();
        let positive_uniform = alphas_t.iter().all(|&a| a > 0.0);
        if !positive_uniform {
            return Err(SpectrumError::NotPositiveUniform(format!(
                "interior point t = {t} left the positive cone"
            )));
        }
        let grid_t = TGrid::default_for_parts(&alphas_t, &lens, max_len)?;
        let est_t = entropy_from_parts_unchecked(&alphas_t, &grid_t)?;
        max_interior_h = max_interior_h.max(est_t.h_hat);
        points.push(ConvexityPoint {
            t,
            h_hat: est_t.h_hat,
            stderr: est_t.stderr,
            positive_uniform,
        });
    }

    Ok(ConvexityReport {
        k,
        h0: est0.h_hat,
        h1: est1.h_hat,
        stderr0: est0.stderr,
        stderr1: est1.stderr,
        points,
        max_interior_h,
        margin: k - max_interior_h,
    })
}

/// Central finite difference of the entropy along a tangent direction at
/// the configured step.
pub fn entropy_directional_derivative(
    rep: &Representation,
    direction: &TangentCocycle,
    max_len: usize,
    mode: ClassMode,
) -> Result<f64> {
    let (spec, _) = DeformedSpectrum::build(rep, direction, max_len, mode)?;
    directional_derivative_of(&spec)
}

fn directional_derivative_of(spec: &DeformedSpectrum) -> Result<f64> {
    let d = ENTROPY_FD_STEP;
    let plus = spec.alphas_at(d);
    let minus = spec.alphas_at(-d);
    let h_plus = spec.entropy_at(d, &plus)?.h_hat;
    let h_minus = spec.entropy_at(-d, &minus)?.h_hat;
    Ok((h_plus - h_minus) / (2.0 * d))
}

/// Removes the radial component of a direction so the first-order entropy
/// variation vanishes: returns `direction - lambda * radial` with
/// `lambda = dh[direction] / dh[radial]`. A direction that is itself
/// radial comes back as the zero cocycle.
pub fn constant_entropy_project(
    rep: &Representation,
    direction: &TangentCocycle,
    max_len: usize,
    mode: ClassMode,
) -> Result<TangentCocycle> {
    let radial = TangentCocycle::radial(rep);
    let Sweep {
        table, alpha_dot, ..
    } = spectrum::sweep(&SweepRequest {
        rep,
        max_len,
        mode,
        extra_translations: Vec::new(),
        directions: vec![direction, &radial],
    })?;
    let lens = table.word_lens();
    let alphas = table.alphas();
    let spec_dir = DeformedSpectrum {
        alphas: alphas.clone(),
        alpha_dots: alpha_dot[0].clone(),
        lens: lens.clone(),
        max_len,
    };
    let spec_rad = DeformedSpectrum {
        alphas,
        alpha_dots: alpha_dot[1].clone(),
        lens,
        max_len,
    };
    let dh_dir = directional_derivative_of(&spec_dir)?;
    let dh_rad = directional_derivative_of(&spec_rad)?;
    if dh_rad.abs() < 1e-12 {
        return Err(SpectrumError::NonPositiveSlope(dh_rad));
    }
    let lambda = dh_dir / dh_rad;
    let projected = direction.axpy(
        lambda,
        &radial,
        format!("{}-entropy-projected", direction.label),
    );
    Ok(projected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_family, SeededFamily};

    fn seeded() -> Representation {
        build_family(&SeededFamily::default()).unwrap()
    }

    #[test]
    fn radial_projection_is_zero() {
        let rep = seeded();
        let radial = TangentCocycle::radial(&rep);
        let projected = constant_entropy_project(&rep, &radial, 6, ClassMode::All).unwrap();
        // lambda = 1 exactly: identical arrays divide to 1.0
        assert!(projected.norm() == 0.0, "norm {}", projected.norm());
    }

    #[test]
    fn pressure_j0_is_exactly_one() {
        let rep = seeded();
        let dir = TangentCocycle::radial(&rep);
        let cfg = PressureConfig {
            bootstrap_resamples: 20,
            ..PressureConfig::default()
        };
        let sample = pressure_quadratic(&rep, &dir, 6, ClassMode::All, &cfg).unwrap();
        assert_eq!(sample.j_values[2], 1.0);
    }

    #[test]
    fn normalize_entropy_identity_scaling() {
        let rep = seeded();
        let table = spectrum::build_table(&rep, 7, ClassMode::All).unwrap();
        let grid = TGrid::default_for(&table).unwrap();
        let est = spectrum::entropy_estimate(&table, &grid).unwrap();
        let (scaled, factor, _) = normalize_entropy(&rep, &table, est.h_hat).unwrap();
        assert_eq!(factor, 1.0);
        for i in 0..rep.rank() {
            assert_eq!(
                scaled.generator(i).translation,
                rep.generator(i).translation
            );
        }
    }
}
