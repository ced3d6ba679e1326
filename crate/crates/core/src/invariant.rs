//! Neutral vectors and the Margulis invariant.
//!
//! A regular element of `SO_0(n,n+1)` has a one-dimensional eigenspace of
//! eigenvalue 1, n eigenvalue moduli strictly inside the unit circle and n
//! strictly outside. The neutral vector spans the unit eigenspace,
//! normalized to `|<nu|nu>| = 1`, with its sign fixed by an orientation
//! convention: the frame
//!
//! ```text
//! [ b_1^-, ..., b_n^-, nu, b_1^+, ..., b_n^+ ]
//! ```
//!
//! must be positively oriented, where `b^-`/`b^+` are bases of the
//! contracting/expanding invariant subspaces ordered by increasing
//! eigenvalue modulus and sign-normalized so their first nonzero
//! coordinate is positive. For n = 1 this reduces to the classical
//! `(x^-, nu, x^+)` frame with future-pointing null axes, which makes the
//! invariant a class function and symmetric under inversion.
//!
//! The Margulis invariant of a group element `(L, u)` is
//! `alpha = <u | nu(L)>`. Its square is also a rational expression in the
//! matrix entries:
//!
//! ```text
//! alpha^2 = <adj(I-L) u | u> / Tr[adj(I-L)]
//! ```
//!
//! up to the sign of `<nu|nu>`, which the ambient signature forces to -1;
//! both normalizations are tried against the data and the winning form is
//! logged once per run rather than silently assumed.

use nalgebra::{Complex, DMatrix, DVector};
use std::sync::Once;
use thiserror::Error;

use crate::affine::{AffineError, Representation, TangentCocycle};
use crate::linalg::{self, LinalgError, QuadraticSpace};
use crate::tolerances::{
    ALPHA_SQ_RTOL, COBOUNDARY_FEASIBLE_RTOL, DEGENERATE_TRACE_RTOL, KERNEL_RTOL, NU_FIXED_RTOL,
    NU_UNIT_TOL, SPECTRAL_GAP_TOL,
};
use crate::words::{ConjClass, Word, WordError};

#[derive(Debug, Error)]
pub enum MargulisError {
    #[error("element is not regular: unit eigenspace has dimension {kernel_dim}")]
    NonRegular { kernel_dim: usize },
    #[error("degenerate spectrum: {0}")]
    DegenerateSpectrum(String),
    #[error("degenerate trace: |Tr[adj(I-L)]| = {trace:.3e} below {floor:.3e}")]
    DegenerateTrace { trace: f64, floor: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Affine(#[from] AffineError),
    #[error(transparent)]
    Word(#[from] WordError),
}

pub type Result<T> = std::result::Result<T, MargulisError>;

/// Neutral vector of a regular element together with its diagnostics.
#[derive(Debug, Clone)]
pub struct NeutralData {
    /// Spans the unit eigenspace; `|<nu|nu>| = 1`, sign fixed by the
    /// orientation convention.
    pub nu: DVector<f64>,
    /// Sign of `<nu|nu>`; -1 throughout the signature (n, n+1).
    pub q_norm_sign: f64,
    /// The positively-oriented frame determinant that fixed the sign.
    pub orientation_det: f64,
    /// Smallest singular value of `I - L` off the kernel.
    pub regularity: f64,
}

/// Eigenstructure of a regular element: contracting and expanding bases
/// ordered by increasing eigenvalue modulus, signs normalized.
struct SpectralSplit {
    contracting: Vec<DVector<f64>>,
    expanding: Vec<DVector<f64>>,
}

fn lex_sign_normalize(v: &mut DVector<f64>) {
    let scale = v.amax();
    if scale == 0.0 {
        return;
    }
    for i in 0..v.len() {
        if v[i].abs() > 1e-8 * scale {
            if v[i] < 0.0 {
                *v = -&*v;
            }
            return;
        }
    }
}

/// Basis of the eigenspace(s) for one eigenvalue modulus slot.
///
/// Real eigenvalues contribute the kernel of `L - lambda I`; a complex
/// conjugate pair contributes the two-dimensional kernel of the real
/// quadratic `L^2 - 2 Re(lambda) L + |lambda|^2 I`, oriented so that `L`
/// rotates the first basis vector towards the second.
fn eigen_block(l: &DMatrix<f64>, lambda: Complex<f64>, scale: f64) -> Result<Vec<DVector<f64>>> {
    let d = l.nrows();
    let is_real = lambda.im.abs() <= 1e-9 * lambda.norm();
    let singular = if is_real {
        l - DMatrix::identity(d, d) * lambda.re
    } else {
        l * l - l * (2.0 * lambda.re) + DMatrix::identity(d, d) * lambda.norm_sqr()
    };
    let svd = singular.svd(false, true);
    let v_t = svd.v_t.expect("svd with v_t");
    let want = if is_real { 1 } else { 2 };
    // The eigenvector directions are the right-singular vectors of the
    // smallest singular values; check they are actually small relative to
    // the matrix scale.
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[a]
            .partial_cmp(&svd.singular_values[b])
            .unwrap()
    });
    let mut basis = Vec::with_capacity(want);
    for &idx in order.iter().take(want) {
        if svd.singular_values[idx] > 1e-6 * scale.max(1.0) {
            return Err(MargulisError::DegenerateSpectrum(format!(
                "eigenvalue {lambda} has no numerical eigenvector (residual {:.3e})",
                svd.singular_values[idx]
            )));
        }
        basis.push(v_t.row(idx).transpose().clone_owned());
    }
    if is_real {
        lex_sign_normalize(&mut basis[0]);
    } else {
        lex_sign_normalize(&mut basis[0]);
        // orient the pair by the rotation direction of L on the block
        let image = l * &basis[0];
        let tangent = &image - &basis[0] * basis[0].dot(&image);
        if basis[1].dot(&tangent) < 0.0 {
            basis[1] = -&basis[1];
        }
    }
    Ok(basis)
}

fn spectral_split(l: &DMatrix<f64>, n: usize) -> Result<SpectralSplit> {
    let eigs = l.complex_eigenvalues();
    let scale = linalg::inf_norm(l);

    let mut contracting_eigs: Vec<Complex<f64>> = Vec::new();
    let mut expanding_eigs: Vec<Complex<f64>> = Vec::new();
    let mut unit_count = 0usize;
    for z in eigs.iter() {
        let m = z.norm();
        if (m - 1.0).abs() <= SPECTRAL_GAP_TOL {
            unit_count += 1;
        } else if m < 1.0 {
            contracting_eigs.push(*z);
        } else {
            expanding_eigs.push(*z);
        }
    }
    if unit_count != 1 || contracting_eigs.len() != n || expanding_eigs.len() != n {
        return Err(MargulisError::DegenerateSpectrum(format!(
            "modulus split ({}, {}, {}) instead of ({n}, 1, {n})",
            contracting_eigs.len(),
            unit_count,
            expanding_eigs.len()
        )));
    }

    let by_modulus = |a: &Complex<f64>, b: &Complex<f64>| {
        (a.norm(), a.re, a.im)
            .partial_cmp(&(b.norm(), b.re, b.im))
            .unwrap()
    };
    contracting_eigs.sort_by(by_modulus);
    expanding_eigs.sort_by(by_modulus);

    let collect = |eigs: &[Complex<f64>]| -> Result<Vec<DVector<f64>>> {
        let mut basis = Vec::with_capacity(n);
        let mut skip_conjugate = false;
        for z in eigs {
            if skip_conjugate {
                skip_conjugate = false;
                continue;
            }
            if z.im.abs() > 1e-9 * z.norm() {
                // conjugate partner is adjacent after the modulus sort
                skip_conjugate = true;
            }
            let block = eigen_block(l, Complex::new(z.re, z.im.abs()), scale)?;
            basis.extend(block);
        }
        if basis.len() != n {
            return Err(MargulisError::DegenerateSpectrum(format!(
                "invariant subspace basis has dimension {} instead of {n}",
                basis.len()
            )));
        }
        Ok(basis)
    };

    Ok(SpectralSplit {
        contracting: collect(&contracting_eigs)?,
        expanding: collect(&expanding_eigs)?,
    })
}

/// Neutral vector of `L`: spans the unit eigenspace, `|<nu|nu>| = 1`,
/// sign fixed by the positively-oriented frame convention. Deterministic
/// for fixed input. Fails with `NonRegular` when the unit eigenspace is
/// not a line and with `DegenerateSpectrum` when the contracting/expanding
/// split does not have the hyperbolic shape.
pub fn neutral_vector(space: &QuadraticSpace, l: &DMatrix<f64>) -> Result<NeutralData> {
    let kernel = linalg::unit_eigenspace(space, l, KERNEL_RTOL)?;
    if kernel.len() != 1 {
        return Err(MargulisError::NonRegular {
            kernel_dim: kernel.len(),
        });
    }
    let d = space.dim();
    let i_minus_l = DMatrix::identity(d, d) - l;
    let sigmas = linalg::singular_values(&i_minus_l);
    let regularity = sigmas[d - 2];

    let mut nu = kernel.into_iter().next().unwrap();
    let q_norm = space.pairing(&nu, &nu)?;
    if q_norm.abs() < 1e-12 {
        return Err(MargulisError::DegenerateSpectrum(
            "unit eigenvector is numerically isotropic".into(),
        ));
    }
    nu /= q_norm.abs().sqrt();
    let q_norm_sign = q_norm.signum();
    debug_assert!((space.pairing(&nu, &nu).unwrap().abs() - 1.0).abs() <= NU_UNIT_TOL);

    let fixed_residual = (l * &nu - &nu).norm();
    if fixed_residual > NU_FIXED_RTOL * linalg::inf_norm(l) * nu.norm() {
        return Err(MargulisError::DegenerateSpectrum(format!(
            "fixed-vector residual {fixed_residual:.3e} too large"
        )));
    }

    let split = spectral_split(l, space.n())?;
    let mut frame = DMatrix::zeros(d, d);
    for (j, b) in split.contracting.iter().enumerate() {
        frame.set_column(j, b);
    }
    frame.set_column(space.n(), &nu);
    for (j, b) in split.expanding.iter().enumerate() {
        frame.set_column(space.n() + 1 + j, b);
    }
    let det = frame.determinant();
    if det.abs() < 1e-12 {
        return Err(MargulisError::DegenerateSpectrum(
            "orientation frame is numerically singular".into(),
        ));
    }
    if det < 0.0 {
        nu = -nu;
    }
    Ok(NeutralData {
        nu,
        q_norm_sign,
        orientation_det: det.abs(),
        regularity,
    })
}

/// Which normalization of the adjugate expression matches `alpha^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignForm {
    /// `alpha^2 = <adj(I-L)u|u> / Tr[adj(I-L)]` as written.
    Raw,
    /// `alpha^2 = sign(<nu|nu>) * <adj(I-L)u|u> / Tr[adj(I-L)]`.
    QNormCorrected,
}

static SIGN_FORM_LOGGED: Once = Once::new();

fn log_sign_form(form: SignForm) {
    SIGN_FORM_LOGGED.call_once(|| {
        log::info!("adjugate identity resolved to the {form:?} normalization");
    });
}

/// Everything computed for one word before the sign form is fixed.
#[derive(Debug, Clone)]
pub struct AlphaComputation {
    pub class: ConjClass,
    pub word_len: usize,
    pub alpha: f64,
    /// `<adj(I-L)u|u> / Tr[adj(I-L)]`, unnormalized.
    pub raw_adjugate: f64,
    pub q_norm_sign: f64,
    pub regularity: f64,
}

impl AlphaComputation {
    pub fn value_under(&self, form: SignForm) -> f64 {
        match form {
            SignForm::Raw => self.raw_adjugate,
            SignForm::QNormCorrected => self.q_norm_sign * self.raw_adjugate,
        }
    }

    fn mismatch_under(&self, form: SignForm) -> f64 {
        (self.alpha * self.alpha - self.value_under(form)).abs()
    }

    /// Does this record discriminate between the two normalizations?
    pub fn vote(&self) -> Option<SignForm> {
        let tol = ALPHA_SQ_RTOL * (1.0 + self.alpha * self.alpha);
        let raw_ok = self.mismatch_under(SignForm::Raw) <= tol;
        let corr_ok = self.mismatch_under(SignForm::QNormCorrected) <= tol;
        match (raw_ok, corr_ok) {
            (true, false) => Some(SignForm::Raw),
            (false, true) => Some(SignForm::QNormCorrected),
            _ => None,
        }
    }

    pub fn into_record(self, form: SignForm) -> AlphaRecord {
        let alpha_sq_adjugate = self.value_under(form);
        AlphaRecord {
            mismatch: (self.alpha * self.alpha - alpha_sq_adjugate).abs(),
            alpha: self.alpha,
            alpha_sq_adjugate,
            word_len: self.word_len,
            class: self.class,
        }
    }
}

/// Picks the normalization supported by the first discriminating record;
/// falls back to the raw form when nothing discriminates (for instance on
/// an identically zero spectrum). Logged once per run.
pub fn resolve_sign_form<'a, I>(computations: I) -> SignForm
where
    I: IntoIterator<Item = &'a AlphaComputation>,
{
    let form = computations
        .into_iter()
        .find_map(|c| c.vote())
        .unwrap_or(SignForm::Raw);
    log_sign_form(form);
    form
}

/// One spectrum entry: the invariant computed by the pairing definition
/// and by the adjugate rational expression, with their mismatch.
#[derive(Debug, Clone, serde::Serialize)]
pub struct AlphaRecord {
    #[serde(serialize_with = "serialize_class")]
    pub class: ConjClass,
    pub alpha: f64,
    pub alpha_sq_adjugate: f64,
    pub mismatch: f64,
    pub word_len: usize,
}

fn serialize_class<S: serde::Serializer>(
    c: &ConjClass,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&c.rep_word().text())
}

/// `<adj(I-L)u | u> / Tr[adj(I-L)]`.
fn adjugate_ratio(space: &QuadraticSpace, l: &DMatrix<f64>, u: &DVector<f64>) -> Result<f64> {
    let d = space.dim();
    let adj = linalg::adjugate_cofactor(&(DMatrix::identity(d, d) - l))?;
    let trace = adj.trace();
    let floor = DEGENERATE_TRACE_RTOL * adj.norm();
    if trace.abs() < floor {
        return Err(MargulisError::DegenerateTrace {
            trace: trace.abs(),
            floor,
        });
    }
    Ok(space.pairing(&(&adj * u), u)? / trace)
}

/// Full computation for one word, before normalization is resolved.
pub fn alpha_computation_for_word(rep: &Representation, word: &Word) -> Result<AlphaComputation> {
    let g = rep.evaluate(word)?;
    let nd = neutral_vector(rep.space(), &g.linear)?;
    let alpha = rep.space().pairing(&g.translation, &nd.nu)?;
    let raw_adjugate = adjugate_ratio(rep.space(), &g.linear, &g.translation)?;
    Ok(AlphaComputation {
        class: ConjClass::canonical(word)?,
        word_len: word.len(),
        alpha,
        raw_adjugate,
        q_norm_sign: nd.q_norm_sign,
        regularity: nd.regularity,
    })
}

/// The Margulis invariant of a conjugacy class, computed by the pairing
/// definition and cross-checked against the adjugate rational expression.
pub fn alpha(rep: &Representation, class: &ConjClass) -> Result<AlphaRecord> {
    let comp = alpha_computation_for_word(rep, class.rep_word())?;
    let form = comp.vote().unwrap_or(SignForm::Raw);
    log_sign_form(form);
    Ok(comp.into_record(form))
}

/// Invariant of an arbitrary nontrivial word (not necessarily a canonical
/// class representative); equals the invariant of its class.
pub fn alpha_of_word(rep: &Representation, word: &Word) -> Result<f64> {
    let g = rep.evaluate(word)?;
    let nd = neutral_vector(rep.space(), &g.linear)?;
    Ok(rep.space().pairing(&g.translation, &nd.nu)?)
}

/// Residual of the projection identity
/// `adj(I-L) nu = Tr[adj(I-L)] nu`, relative to `|Tr nu|`.
pub fn neutral_projection_identity(space: &QuadraticSpace, l: &DMatrix<f64>) -> Result<f64> {
    let nd = neutral_vector(space, l)?;
    let d = space.dim();
    let adj = linalg::adjugate_cofactor(&(DMatrix::identity(d, d) - l))?;
    let trace = adj.trace();
    let floor = DEGENERATE_TRACE_RTOL * adj.norm();
    if trace.abs() < floor {
        return Err(MargulisError::DegenerateTrace {
            trace: trace.abs(),
            floor,
        });
    }
    let lhs = &adj * &nd.nu;
    let rhs = &nd.nu * trace;
    Ok((lhs - &rhs).norm() / rhs.norm())
}

/// Derivative of the invariant along a fixed-linear-part direction:
/// `alpha_dot = <udot(w) | nu(L(w))>` with `udot` expanded over the word
/// by the cocycle law. Equals the t-derivative of `alpha` along
/// `u_t = u + t udot`.
pub fn alpha_dot(
    rep: &Representation,
    direction: &TangentCocycle,
    class: &ConjClass,
) -> Result<f64> {
    alpha_dot_of_word(rep, direction, class.rep_word())
}

pub fn alpha_dot_of_word(
    rep: &Representation,
    direction: &TangentCocycle,
    word: &Word,
) -> Result<f64> {
    let g = rep.evaluate(word)?;
    let nd = neutral_vector(rep.space(), &g.linear)?;
    let udot = direction.evaluate(rep, word)?;
    Ok(rep.space().pairing(&udot, &nd.nu)?)
}

/// Result of the stacked least-squares solve of
/// `(I - L(a_i)) v = udot(a_i)` over all generators. Infeasibility is a
/// value, not an error: it certifies that the direction is not a
/// coboundary at the stated tolerance.
#[derive(Debug, Clone)]
pub struct CoboundaryOutcome {
    pub v: DVector<f64>,
    pub per_generator_residuals: Vec<f64>,
    pub max_residual: f64,
    pub threshold: f64,
    pub feasible: bool,
    /// Dimension of the numerical null space of the stacked system.
    pub null_dim: usize,
}

/// Solves the generator coboundary system in the least-squares sense.
pub fn solve_coboundary(
    rep: &Representation,
    direction: &TangentCocycle,
) -> Result<CoboundaryOutcome> {
    let d = rep.space().dim();
    let r = rep.rank();
    let mut stacked = DMatrix::zeros(r * d, d);
    let mut rhs = DVector::zeros(r * d);
    for i in 0..r {
        let block = DMatrix::identity(d, d) - &rep.generator(i).linear;
        stacked.view_mut((i * d, 0), (d, d)).copy_from(&block);
        rhs.rows_mut(i * d, d)
            .copy_from(&direction.dot_translations[i]);
    }
    let svd = stacked.clone().svd(true, true);
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    let rank_tol = 1e-12 * sigma_max.max(1e-300);
    let null_dim = svd
        .singular_values
        .iter()
        .filter(|&&s| s <= rank_tol)
        .count()
        + d.saturating_sub(svd.singular_values.len());
    let v = svd
        .solve(&rhs, rank_tol)
        .map_err(|e| MargulisError::DegenerateSpectrum(format!("least squares failed: {e}")))?;

    let mut per_generator_residuals = Vec::with_capacity(r);
    for i in 0..r {
        let block = DMatrix::identity(d, d) - &rep.generator(i).linear;
        let res = (&block * &v - &direction.dot_translations[i]).norm();
        per_generator_residuals.push(res);
    }
    let max_residual = per_generator_residuals
        .iter()
        .cloned()
        .fold(0.0f64, f64::max);
    let threshold = COBOUNDARY_FEASIBLE_RTOL * (1.0 + rhs.norm());
    Ok(CoboundaryOutcome {
        v,
        per_generator_residuals,
        max_residual,
        threshold,
        feasible: max_residual < threshold,
        null_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::AffineMap;

    fn space() -> QuadraticSpace {
        QuadraticSpace::new(1).unwrap()
    }

    fn boost(t: f64) -> DMatrix<f64> {
        DMatrix::from_row_slice(
            3,
            3,
            &[
                t.cosh(),
                t.sinh(),
                0.0,
                t.sinh(),
                t.cosh(),
                0.0,
                0.0,
                0.0,
                1.0,
            ],
        )
    }

    fn rotation(a: f64) -> DMatrix<f64> {
        DMatrix::from_row_slice(
            3,
            3,
            &[
                1.0,
                0.0,
                0.0,
                0.0,
                a.cos(),
                -a.sin(),
                0.0,
                a.sin(),
                a.cos(),
            ],
        )
    }

    #[test]
    fn neutral_vector_of_a_boost() {
        let s = space();
        let nd = neutral_vector(&s, &boost(0.8)).unwrap();
        // the axis is the third coordinate; the frame convention points it
        // at -e3 for a positive-rapidity boost
        assert!((nd.nu[0]).abs() < 1e-10);
        assert!((nd.nu[1]).abs() < 1e-10);
        assert!((nd.nu[2] + 1.0).abs() < 1e-10, "nu = {:?}", nd.nu);
        assert_eq!(nd.q_norm_sign, -1.0);
        assert!(nd.orientation_det > 0.0);
        let fixed = boost(0.8) * &nd.nu - &nd.nu;
        assert!(fixed.norm() < 1e-10);
    }

    #[test]
    fn identity_and_rotations_are_not_regular() {
        let s = space();
        match neutral_vector(&s, &DMatrix::identity(3, 3)) {
            Err(MargulisError::NonRegular { kernel_dim: 3 }) => {}
            other => panic!("unexpected {other:?}"),
        }
        // a rotation in the negative plane fixes a line but has no
        // hyperbolic modulus split
        match neutral_vector(&s, &rotation(0.9)) {
            Err(MargulisError::DegenerateSpectrum(_)) | Err(MargulisError::NonRegular { .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn inversion_flips_nu_for_n_equal_one() {
        let s = space();
        let nd = neutral_vector(&s, &boost(0.8)).unwrap();
        let nd_inv = neutral_vector(&s, &boost(-0.8)).unwrap();
        assert!((&nd.nu + &nd_inv.nu).norm() < 1e-10);
    }

    #[test]
    fn alpha_is_linear_in_translation() {
        let s = space();
        let u = DVector::from_vec(vec![0.2, -0.1, 1.3]);
        let gens = vec![AffineMap::new(&s, boost(0.9), u).unwrap()];
        let rep = Representation::new(s.clone(), gens, "t".into()).unwrap();
        let cls = ConjClass::canonical(&Word::reduce(&[1], 1).unwrap()).unwrap();
        let a = alpha(&rep, &cls).unwrap();

        let negated = rep.scale_translation(-1.0);
        let a_neg = alpha(&negated, &cls).unwrap();
        assert!((a.alpha + a_neg.alpha).abs() < 1e-12);

        let zeroed = rep.scale_translation(0.0);
        let a_zero = alpha(&zeroed, &cls).unwrap();
        assert_eq!(a_zero.alpha, 0.0);
        assert_eq!(a_zero.alpha_sq_adjugate, 0.0);
    }

    #[test]
    fn adjugate_expression_needs_the_sign_correction() {
        let s = space();
        let u = DVector::from_vec(vec![0.2, -0.1, 1.3]);
        let gens = vec![AffineMap::new(&s, boost(0.9), u).unwrap()];
        let rep = Representation::new(s.clone(), gens, "t".into()).unwrap();
        let w = Word::reduce(&[1], 1).unwrap();
        let comp = alpha_computation_for_word(&rep, &w).unwrap();
        assert_eq!(comp.vote(), Some(SignForm::QNormCorrected));
        let record = comp.into_record(SignForm::QNormCorrected);
        assert!(record.mismatch <= ALPHA_SQ_RTOL * (1.0 + record.alpha * record.alpha));
    }

    #[test]
    fn projection_identity_on_a_boost() {
        let s = space();
        let res = neutral_projection_identity(&s, &boost(1.1)).unwrap();
        assert!(res < 1e-9, "residual {res}");
        assert!(matches!(
            neutral_projection_identity(&s, &DMatrix::identity(3, 3)),
            Err(MargulisError::NonRegular { .. })
        ));
    }

    #[test]
    fn zero_direction_has_zero_derivative() {
        let s = space();
        let u = DVector::from_vec(vec![0.0, 0.3, 0.9]);
        let gens = vec![AffineMap::new(&s, boost(0.7), u).unwrap()];
        let rep = Representation::new(s.clone(), gens, "t".into()).unwrap();
        let tc = TangentCocycle::zero(&rep);
        let cls = ConjClass::canonical(&Word::reduce(&[1, 1], 1).unwrap()).unwrap();
        assert_eq!(alpha_dot(&rep, &tc, &cls).unwrap(), 0.0);
    }

    #[test]
    fn radial_derivative_equals_alpha() {
        let s = space();
        let u = DVector::from_vec(vec![0.1, 0.3, 0.9]);
        let gens = vec![AffineMap::new(&s, boost(0.7), u).unwrap()];
        let rep = Representation::new(s.clone(), gens, "t".into()).unwrap();
        let tc = TangentCocycle::radial(&rep);
        let cls = ConjClass::canonical(&Word::reduce(&[1, 1, 1], 1).unwrap()).unwrap();
        let a = alpha(&rep, &cls).unwrap().alpha;
        let ad = alpha_dot(&rep, &tc, &cls).unwrap();
        assert_eq!(a, ad);
    }

    #[test]
    fn coboundary_solver_trivial_cases() {
        let s = space();
        let conj = rotation(1.0) * boost(0.7) * rotation(-1.0);
        let gens = vec![
            AffineMap::new(&s, boost(0.7), DVector::zeros(3)).unwrap(),
            AffineMap::new(&s, conj, DVector::zeros(3)).unwrap(),
        ];
        let rep = Representation::new(s.clone(), gens, "t".into()).unwrap();
        let zero = TangentCocycle::zero(&rep);
        let out = solve_coboundary(&rep, &zero).unwrap();
        assert!(out.feasible);
        assert!(out.v.norm() < 1e-12);

        let v0 = DVector::from_vec(vec![0.4, -1.2, 0.7]);
        let cob = TangentCocycle::coboundary(&rep, &v0);
        let out = solve_coboundary(&rep, &cob).unwrap();
        assert!(out.feasible, "max residual {}", out.max_residual);
        assert_eq!(out.null_dim, 0);
        assert!((out.v - v0).norm() < 1e-9);
    }
}
