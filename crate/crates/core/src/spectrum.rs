//! Spectrum tables, properness sign scans, orbit counting, entropy and
//! intersection estimators.
//!
//! The invariant of a word depends on its linear part only through the
//! neutral vector, and linearly on the translations. The sweep engine
//! exploits this: one pass over the conjugacy classes evaluates the linear
//! part and neutral vector once per class and then projects any number of
//! translation assignments and tangent directions against it. Estimator
//! sums run sequentially over the sorted table, so results are identical
//! whatever the worker count.

use nalgebra::DVector;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::affine::{AffineError, Representation, TangentCocycle};
use crate::invariant::{
    self, AlphaComputation, AlphaRecord, MargulisError, SignForm,
};
use crate::linalg::LinalgError;
use crate::tolerances::{ENTROPY_MIN_COUNT, T_GRID_POINTS};
use crate::words::{self, ClassMode, WordError};

#[derive(Debug, Error)]
pub enum SpectrumError {
    #[error("spectrum table is empty")]
    EmptyTable,
    #[error("operation requires a positive-uniform table, found {0}")]
    NotPositiveUniform(String),
    #[error("insufficient data: count {count} at T = {t} is below {need}")]
    InsufficientData { t: f64, count: usize, need: usize },
    #[error("entropy slope is not positive: {0}")]
    NonPositiveSlope(f64),
    #[error("bad T-grid: {0}")]
    BadGrid(String),
    #[error("no classes with alpha <= {0}")]
    EmptyCut(f64),
    #[error(transparent)]
    Margulis(#[from] MargulisError),
    #[error(transparent)]
    Affine(#[from] AffineError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T> = std::result::Result<T, SpectrumError>;

/// Per-conjugacy-class invariants up to a length budget, sorted by
/// (length, canonical word), duplicate-free.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumTable {
    pub rep_label: String,
    pub n: usize,
    pub rank: usize,
    pub max_len: usize,
    pub class_mode: ClassMode,
    /// Normalization of the adjugate expression the run resolved to.
    pub sign_form: SignForm,
    pub records: Vec<AlphaRecord>,
    /// Words whose spectrum was too degenerate to record. Nonzero on a
    /// seeded proper family is a red flag worth investigating.
    pub skipped: usize,
}

impl SpectrumTable {
    pub fn alphas(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.alpha).collect()
    }

    pub fn word_lens(&self) -> Vec<usize> {
        self.records.iter().map(|r| r.word_len).collect()
    }
}

/// One sweep output: the base table plus the aligned projections of the
/// extra translation channels and tangent directions.
#[derive(Debug)]
pub struct Sweep {
    pub table: SpectrumTable,
    /// `extra_alpha[c][k]` is the invariant of record k under the c-th
    /// extra translation assignment (same linear part).
    pub extra_alpha: Vec<Vec<f64>>,
    /// `alpha_dot[c][k]` is the derivative of record k along the c-th
    /// tangent direction.
    pub alpha_dot: Vec<Vec<f64>>,
}

/// What a sweep should compute beyond the base table.
pub struct SweepRequest<'a> {
    pub rep: &'a Representation,
    pub max_len: usize,
    pub mode: ClassMode,
    /// Alternative generator translation assignments sharing the linear
    /// part of `rep`.
    pub extra_translations: Vec<Vec<DVector<f64>>>,
    pub directions: Vec<&'a TangentCocycle>,
}

impl<'a> SweepRequest<'a> {
    pub fn table_only(rep: &'a Representation, max_len: usize, mode: ClassMode) -> Self {
        Self {
            rep,
            max_len,
            mode,
            extra_translations: Vec::new(),
            directions: Vec::new(),
        }
    }
}

struct ClassOutcome {
    comp: AlphaComputation,
    extra: Vec<f64>,
    dots: Vec<f64>,
}

fn sweep_class(
    req: &SweepRequest<'_>,
    class: &words::ConjClass,
) -> std::result::Result<ClassOutcome, MargulisError> {
    let rep = req.rep;
    let space = rep.space();
    let dim = space.dim();
    let word = class.rep_word();

    // one pass builds the word matrix and every translation channel by the
    // cocycle law u(gh) = L(g) u(h) + u(g)
    let mut prefix = nalgebra::DMatrix::<f64>::identity(dim, dim);
    let mut base_u = DVector::<f64>::zeros(dim);
    let mut extra_u: Vec<DVector<f64>> = req
        .extra_translations
        .iter()
        .map(|_| DVector::zeros(dim))
        .collect();
    let mut dot_u: Vec<DVector<f64>> = req.directions.iter().map(|_| DVector::zeros(dim)).collect();

    for &letter in word.letters() {
        let image = rep.letter_image(letter);
        base_u += &prefix * &image.translation;
        let idx = (letter.unsigned_abs() as usize) - 1;
        for (c, set) in req.extra_translations.iter().enumerate() {
            let letter_u = if letter > 0 {
                set[idx].clone()
            } else {
                -(&rep.generator_inverse(idx).linear * &set[idx])
            };
            extra_u[c] += &prefix * letter_u;
        }
        for (c, tc) in req.directions.iter().enumerate() {
            dot_u[c] += &prefix * tc.letter_value(rep, letter);
        }
        prefix = prefix * &image.linear;
    }

    // drift monitor, same bound as plain evaluation
    let q = space.q_matrix();
    let drift = crate::linalg::max_abs(&(prefix.transpose() * q * &prefix - q));
    if drift > crate::tolerances::DRIFT_LIMIT {
        return Err(MargulisError::Affine(AffineError::DriftExceeded {
            drift,
            limit: crate::tolerances::DRIFT_LIMIT,
        }));
    }

    let nd = invariant::neutral_vector(space, &prefix)?;
    let alpha = space.pairing(&base_u, &nd.nu).map_err(MargulisError::from)?;
    let g = crate::affine::AffineMap {
        linear: prefix,
        translation: base_u,
    };
    let raw_adjugate = adjugate_ratio_for(space, &g)?;

    let extra = extra_u
        .iter()
        .map(|u| space.pairing(u, &nd.nu).map_err(MargulisError::from))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let dots = dot_u
        .iter()
        .map(|u| space.pairing(u, &nd.nu).map_err(MargulisError::from))
        .collect::<std::result::Result<Vec<_>, _>>()?;

    Ok(ClassOutcome {
        comp: AlphaComputation {
            class: class.clone(),
            word_len: word.len(),
            alpha,
            raw_adjugate,
            q_norm_sign: nd.q_norm_sign,
            regularity: nd.regularity,
        },
        extra,
        dots,
    })
}

fn adjugate_ratio_for(
    space: &crate::linalg::QuadraticSpace,
    g: &crate::affine::AffineMap,
) -> std::result::Result<f64, MargulisError> {
    let d = space.dim();
    let adj =
        crate::linalg::adjugate_cofactor(&(nalgebra::DMatrix::identity(d, d) - &g.linear))?;
    let trace = adj.trace();
    let floor = crate::tolerances::DEGENERATE_TRACE_RTOL * adj.norm();
    if trace.abs() < floor {
        return Err(MargulisError::DegenerateTrace {
            trace: trace.abs(),
            floor,
        });
    }
    Ok(space
        .pairing(&(&adj * &g.translation), &g.translation)
        .map_err(MargulisError::from)?
        / trace)
}

/// Runs the sweep: enumerate classes, compute every channel in parallel,
/// resolve the adjugate normalization over the accepted records in sorted
/// order, and assemble the table. Degenerate words are counted as skipped
/// rather than aborting the enumeration.
pub fn sweep(req: &SweepRequest<'_>) -> Result<Sweep> {
    let classes = words::enumerate_classes(req.rep.rank(), req.max_len, req.mode)?;
    let outcomes: Vec<std::result::Result<ClassOutcome, MargulisError>> =
        classes.par_iter().map(|c| sweep_class(req, c)).collect();

    let mut comps: Vec<AlphaComputation> = Vec::with_capacity(classes.len());
    let mut extra: Vec<Vec<f64>> = req
        .extra_translations
        .iter()
        .map(|_| Vec::with_capacity(classes.len()))
        .collect();
    let mut dots: Vec<Vec<f64>> = req
        .directions
        .iter()
        .map(|_| Vec::with_capacity(classes.len()))
        .collect();
    let mut skipped = 0usize;
    for outcome in outcomes {
        match outcome {
            Ok(o) => {
                comps.push(o.comp);
                for (c, v) in o.extra.into_iter().enumerate() {
                    extra[c].push(v);
                }
                for (c, v) in o.dots.into_iter().enumerate() {
                    dots[c].push(v);
                }
            }
            Err(MargulisError::NonRegular { .. })
            | Err(MargulisError::DegenerateSpectrum(_))
            | Err(MargulisError::DegenerateTrace { .. })
            | Err(MargulisError::Affine(AffineError::DriftExceeded { .. })) => {
                skipped += 1;
            }
            Err(other) => return Err(other.into()),
        }
    }

    let sign_form = invariant::resolve_sign_form(comps.iter());
    let records: Vec<AlphaRecord> = comps.into_iter().map(|c| c.into_record(sign_form)).collect();

    Ok(Sweep {
        table: SpectrumTable {
            rep_label: req.rep.label().to_string(),
            n: req.rep.space().n(),
            rank: req.rep.rank(),
            max_len: req.max_len,
            class_mode: req.mode,
            sign_form,
            records,
            skipped,
        },
        extra_alpha: extra,
        alpha_dot: dots,
    })
}

/// One invariant record per conjugacy class up to `max_len`.
pub fn build_table(rep: &Representation, max_len: usize, mode: ClassMode) -> Result<SpectrumTable> {
    Ok(sweep(&SweepRequest::table_only(rep, max_len, mode))?.table)
}

/// Properness verdict by sign uniformity of the spectrum.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Properness {
    PositiveUniform,
    NegativeUniform,
    SignMixed,
}

/// Sign scan over a spectrum table. The `alpha / word_len` extremes stand
/// in for the uniform margin constants of a proper action; they are
/// diagnostics only and enter no downstream quantity.
#[derive(Debug, Clone, Serialize)]
pub struct PropernessReport {
    pub verdict: Properness,
    pub records: usize,
    pub skipped: usize,
    pub min_alpha: f64,
    pub max_alpha: f64,
    /// min |alpha| / word_len over the table (the lower margin proxy)
    pub margin_low: f64,
    /// max |alpha| / word_len over the table (the upper margin proxy)
    pub margin_high: f64,
    /// present when the verdict is SignMixed: one word on each side
    pub witness_nonpositive: Option<String>,
    pub witness_nonnegative: Option<String>,
}

pub fn properness_scan(table: &SpectrumTable) -> Result<PropernessReport> {
    if table.records.is_empty() {
        return Err(SpectrumError::EmptyTable);
    }
    let mut min_alpha = f64::INFINITY;
    let mut max_alpha = f64::NEG_INFINITY;
    let mut margin_low = f64::INFINITY;
    let mut margin_high: f64 = 0.0;
    let mut witness_nonpositive = None;
    let mut witness_nonnegative = None;
    for r in &table.records {
        min_alpha = min_alpha.min(r.alpha);
        max_alpha = max_alpha.max(r.alpha);
        let ratio = r.alpha.abs() / r.word_len as f64;
        margin_low = margin_low.min(ratio);
        margin_high = margin_high.max(ratio);
        if r.alpha <= 0.0 && witness_nonpositive.is_none() {
            witness_nonpositive = Some(r.class.rep_word().text());
        }
        if r.alpha >= 0.0 && witness_nonnegative.is_none() {
            witness_nonnegative = Some(r.class.rep_word().text());
        }
    }
    let verdict = if min_alpha > 0.0 {
        Properness::PositiveUniform
    } else if max_alpha < 0.0 {
        Properness::NegativeUniform
    } else {
        Properness::SignMixed
    };
    let (witness_nonpositive, witness_nonnegative) = match verdict {
        Properness::SignMixed => (witness_nonpositive, witness_nonnegative),
        _ => (None, None),
    };
    Ok(PropernessReport {
        verdict,
        records: table.records.len(),
        skipped: table.skipped,
        min_alpha,
        max_alpha,
        margin_low,
        margin_high,
        witness_nonpositive,
        witness_nonnegative,
    })
}

fn require_positive_uniform(table: &SpectrumTable) -> Result<()> {
    let report = properness_scan(table)?;
    if report.verdict != Properness::PositiveUniform {
        return Err(SpectrumError::NotPositiveUniform(format!(
            "{:?} (min alpha {:.3e}, max alpha {:.3e})",
            report.verdict, report.min_alpha, report.max_alpha
        )));
    }
    Ok(())
}

/// `|{classes : alpha <= T}|`. Requires a positive-uniform table;
/// counting a sign-mixed spectrum is meaningless.
pub fn orbit_count(table: &SpectrumTable, t: f64) -> Result<usize> {
    require_positive_uniform(table)?;
    Ok(table.records.iter().filter(|r| r.alpha <= t).count())
}

/// A grid of spectrum cut heights.
#[derive(Debug, Clone, Serialize)]
pub struct TGrid(Vec<f64>);

impl TGrid {
    pub fn explicit(values: Vec<f64>) -> Result<TGrid> {
        if values.len() < 2 {
            return Err(SpectrumError::BadGrid("need at least two points".into()));
        }
        if values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(SpectrumError::BadGrid("grid must increase strictly".into()));
        }
        Ok(TGrid(values))
    }

    /// `points` geometric steps from `low` to `high`.
    pub fn geometric(low: f64, high: f64, points: usize) -> Result<TGrid> {
        if !(low > 0.0) || !(high > low) || points < 2 {
            return Err(SpectrumError::BadGrid(format!(
                "geometric grid needs 0 < low < high and >= 2 points, got [{low}, {high}] x {points}"
            )));
        }
        let ratio = high / low;
        let values = (0..points)
            .map(|j| low * ratio.powf(j as f64 / (points - 1) as f64))
            .collect();
        Ok(TGrid(values))
    }

    /// The default grid of a table: geometric from the median invariant of
    /// the sub-table at most `max_len - 2` letters long up to the largest
    /// invariant overall. Keeps the low end away from small-count noise
    /// and the high end anchored at the data.
    pub fn default_for(table: &SpectrumTable) -> Result<TGrid> {
        let alphas = table.alphas();
        let lens = table.word_lens();
        Self::default_for_parts(&alphas, &lens, table.max_len)
    }

    pub(crate) fn default_for_parts(alphas: &[f64], lens: &[usize], max_len: usize) -> Result<TGrid> {
        if max_len < 3 {
            return Err(SpectrumError::BadGrid(
                "length budget too small for a grid (need max_len >= 3)".into(),
            ));
        }
        let mut low_pool: Vec<f64> = alphas
            .iter()
            .zip(lens.iter())
            .filter(|&(_, &l)| l <= max_len - 2)
            .map(|(&a, _)| a)
            .collect();
        if low_pool.is_empty() {
            return Err(SpectrumError::BadGrid(
                "no classes short enough to anchor the grid".into(),
            ));
        }
        low_pool.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let low = low_pool[(low_pool.len() - 1) / 2];
        let high = alphas.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if !(low > 0.0) {
            return Err(SpectrumError::BadGrid(format!(
                "grid anchor must be positive, got {low}"
            )));
        }
        if high <= low {
            return Err(SpectrumError::BadGrid(format!(
                "degenerate anchor interval [{low}, {high}]"
            )));
        }
        Self::geometric(low, high, T_GRID_POINTS)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    /// Every cut multiplied by `a`.
    pub fn scaled(&self, a: f64) -> TGrid {
        TGrid(self.0.iter().map(|t| t * a).collect())
    }
}

/// Orbit-growth estimate: least-squares slope of `log |R_T|` against `T`.
#[derive(Debug, Clone, Serialize)]
pub struct EntropyEstimate {
    pub h_hat: f64,
    pub t_grid: Vec<f64>,
    pub counts: Vec<usize>,
    pub r_squared: f64,
    pub stderr: f64,
}

/// Counts and regression for the given grid. Every grid point must cover
/// at least `ENTROPY_MIN_COUNT` classes; the slope must come out positive.
pub fn entropy_estimate(table: &SpectrumTable, grid: &TGrid) -> Result<EntropyEstimate> {
    require_positive_uniform(table)?;
    entropy_from_parts_unchecked(&table.alphas(), grid)
}

/// Same estimator on a bare invariant sample (positivity checked by the
/// caller); used for stencil evaluations where tables are deformed
/// algebraically.
pub(crate) fn entropy_from_parts_unchecked(alphas: &[f64], grid: &TGrid) -> Result<EntropyEstimate> {
    let mut sorted = alphas.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut counts = Vec::with_capacity(grid.values().len());
    for &t in grid.values() {
        let count = sorted.partition_point(|&a| a <= t);
        if count < ENTROPY_MIN_COUNT {
            return Err(SpectrumError::InsufficientData {
                t,
                count,
                need: ENTROPY_MIN_COUNT,
            });
        }
        counts.push(count);
    }
    let xs: Vec<f64> = grid.values().to_vec();
    let ys: Vec<f64> = counts.iter().map(|&c| (c as f64).ln()).collect();
    let (slope, _intercept, r_squared, stderr) = ols(&xs, &ys);
    if !(slope > 0.0) {
        return Err(SpectrumError::NonPositiveSlope(slope));
    }
    Ok(EntropyEstimate {
        h_hat: slope,
        t_grid: xs,
        counts,
        r_squared,
        stderr,
    })
}

/// Ordinary least squares of y on x: (slope, intercept, r^2, stderr of
/// the slope). Sequential sums in input order.
fn ols(xs: &[f64], ys: &[f64]) -> (f64, f64, f64, f64) {
    let m = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / m;
    let mean_y = ys.iter().sum::<f64>() / m;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(ys.iter()) {
        let dx = x - mean_x;
        let dy = y - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let mut ssr = 0.0;
    for (x, y) in xs.iter().zip(ys.iter()) {
        let resid = y - (intercept + slope * x);
        ssr += resid * resid;
    }
    let dof = (xs.len().max(3) - 2) as f64;
    let stderr = (ssr / dof / sxx).sqrt();
    let r_squared = if syy > 0.0 { 1.0 - ssr / syy } else { 1.0 };
    (slope, intercept, r_squared, stderr)
}

/// Finite-cut intersection estimate: the `R_T`-average of the invariant
/// ratio of `rep1` against the base table.
#[derive(Debug, Clone, Serialize)]
pub struct IntersectionEstimate {
    pub value: f64,
    /// The cut height; `None` means the whole table.
    pub t: Option<f64>,
    pub sample_size: usize,
}

/// Averages `alpha_{rep1}(w) / alpha_base(w)` over the classes of the base
/// table with `alpha <= T`. `rep1` may share the base linear part or be an
/// independently valid deformation; its invariants are recomputed from
/// scratch either way.
pub fn intersection_estimate(
    table_base: &SpectrumTable,
    rep1: &Representation,
    t: Option<f64>,
) -> Result<IntersectionEstimate> {
    require_positive_uniform(table_base)?;
    let cut = t.unwrap_or(f64::INFINITY);
    let selected: Vec<&AlphaRecord> = table_base
        .records
        .iter()
        .filter(|r| r.alpha <= cut)
        .collect();
    if selected.is_empty() {
        return Err(SpectrumError::EmptyCut(cut));
    }
    let ratios: Vec<f64> = selected
        .par_iter()
        .map(|r| {
            invariant::alpha_of_word(rep1, r.class.rep_word())
                .map(|a1| a1 / r.alpha)
                .map_err(SpectrumError::from)
        })
        .collect::<Result<Vec<f64>>>()?;
    let mut sum = 0.0;
    for v in &ratios {
        sum += v;
    }
    Ok(IntersectionEstimate {
        value: sum / selected.len() as f64,
        t,
        sample_size: selected.len(),
    })
}

/// Intersection average against a precomputed aligned invariant channel
/// (no re-evaluation); termwise identical to the public estimator when the
/// channel came from the same sweep.
pub(crate) fn intersection_from_parts(
    base_alphas: &[f64],
    channel_alphas: &[f64],
    cut: f64,
) -> Result<IntersectionEstimate> {
    let mut sum = 0.0;
    let mut count = 0usize;
    for (&a, &a1) in base_alphas.iter().zip(channel_alphas.iter()) {
        if a <= cut {
            sum += a1 / a;
            count += 1;
        }
    }
    if count == 0 {
        return Err(SpectrumError::EmptyCut(cut));
    }
    Ok(IntersectionEstimate {
        value: sum / count as f64,
        t: if cut.is_finite() { Some(cut) } else { None },
        sample_size: count,
    })
}

/// CSV export of a table: `word,length,alpha,alpha_sq_adjugate,mismatch`.
pub fn spectrum_csv(table: &SpectrumTable) -> String {
    let mut out = String::from("word,length,alpha,alpha_sq_adjugate,mismatch\n");
    for r in &table.records {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.class.rep_word().text(),
            r.word_len,
            r.alpha,
            r.alpha_sq_adjugate,
            r.mismatch
        ));
    }
    out
}

/// CSV export of orbit counts over a grid: `T,count,log_count`.
pub fn counts_csv(table: &SpectrumTable, grid: &TGrid) -> Result<String> {
    let mut out = String::from("T,count,log_count\n");
    for &t in grid.values() {
        let c = orbit_count(table, t)?;
        let log = if c > 0 { (c as f64).ln() } else { f64::NAN };
        out.push_str(&format!("{t},{c},{log}\n"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_family, SeededFamily};

    fn seeded() -> Representation {
        build_family(&SeededFamily::default()).unwrap()
    }

    #[test]
    fn zero_translation_table_is_all_zero() {
        let rep = seeded().scale_translation(0.0);
        let table = build_table(&rep, 4, ClassMode::All).unwrap();
        assert!(table.records.iter().all(|r| r.alpha == 0.0));
        assert_eq!(table.skipped, 0);
        let report = properness_scan(&table).unwrap();
        assert_eq!(report.verdict, Properness::SignMixed);
    }

    #[test]
    fn scaling_doubles_alphas_entrywise() {
        let rep = seeded();
        let base = build_table(&rep, 4, ClassMode::All).unwrap();
        let doubled = build_table(&rep.scale_translation(2.0), 4, ClassMode::All).unwrap();
        assert_eq!(base.records.len(), doubled.records.len());
        for (a, b) in base.records.iter().zip(doubled.records.iter()) {
            assert_eq!(b.alpha, 2.0 * a.alpha);
        }
    }

    #[test]
    fn sign_flip_mirrors_the_verdict_with_equal_margins() {
        let rep = seeded();
        let table = build_table(&rep, 5, ClassMode::All).unwrap();
        let report = properness_scan(&table).unwrap();
        assert_eq!(report.verdict, Properness::PositiveUniform);

        let flipped = build_table(&rep.scale_translation(-1.0), 5, ClassMode::All).unwrap();
        let mirror = properness_scan(&flipped).unwrap();
        assert_eq!(mirror.verdict, Properness::NegativeUniform);
        assert_eq!(mirror.margin_low, report.margin_low);
        assert_eq!(mirror.margin_high, report.margin_high);
    }

    #[test]
    fn orbit_count_trivial_cuts() {
        let rep = seeded();
        let table = build_table(&rep, 5, ClassMode::All).unwrap();
        let min = table.records.iter().map(|r| r.alpha).fold(f64::INFINITY, f64::min);
        assert_eq!(orbit_count(&table, min - 1.0).unwrap(), 0);
        assert_eq!(
            orbit_count(&table, f64::INFINITY).unwrap(),
            table.records.len()
        );
        // monotone in T
        let g = TGrid::default_for(&table).unwrap();
        let counts: Vec<usize> = g
            .values()
            .iter()
            .map(|&t| orbit_count(&table, t).unwrap())
            .collect();
        assert!(counts.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn orbit_count_rejects_mixed_tables() {
        let rep = seeded().scale_translation(0.0);
        let table = build_table(&rep, 4, ClassMode::All).unwrap();
        assert!(matches!(
            orbit_count(&table, 1.0),
            Err(SpectrumError::NotPositiveUniform(_))
        ));
    }

    #[test]
    fn entropy_insufficient_data_at_tiny_budget() {
        let rep = seeded();
        let table = build_table(&rep, 3, ClassMode::All).unwrap();
        match TGrid::default_for(&table).and_then(|g| entropy_estimate(&table, &g)) {
            Err(SpectrumError::InsufficientData { .. }) | Err(SpectrumError::BadGrid(_)) => {}
            other => panic!("expected a small-sample failure, got {other:?}"),
        }
    }

    #[test]
    fn intersection_of_base_with_itself_is_one() {
        let rep = seeded();
        let table = build_table(&rep, 5, ClassMode::All).unwrap();
        let est = intersection_estimate(&table, &rep, None).unwrap();
        assert_eq!(est.value, 1.0);
        assert_eq!(est.sample_size, table.records.len());
    }

    #[test]
    fn intersection_of_scaled_rep_is_the_scale() {
        let rep = seeded();
        let table = build_table(&rep, 5, ClassMode::All).unwrap();
        for c in [0.5, 2.0] {
            let est = intersection_estimate(&table, &rep.scale_translation(c), None).unwrap();
            assert_eq!(est.value, c);
        }
        let est = intersection_estimate(&table, &rep.scale_translation(3.0), None).unwrap();
        assert!((est.value - 3.0).abs() < 1e-12);
    }

    #[test]
    fn ols_recovers_a_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [2.0, 4.0, 6.0, 8.0];
        let (slope, intercept, r2, stderr) = ols(&xs, &ys);
        assert!((slope - 2.0).abs() < 1e-12);
        assert!(intercept.abs() < 1e-12);
        assert!((r2 - 1.0).abs() < 1e-12);
        assert!(stderr < 1e-12);
    }
}
