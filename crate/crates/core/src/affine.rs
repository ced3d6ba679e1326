//! Elements of `SO_0(n,n+1) ⋉ R^{2n+1}`, representations of free groups,
//! and fixed-linear-part tangent directions.
//!
//! An affine map is a pair `(L, u)` acting by `x -> Lx + u`; composition
//! realizes the cocycle law `u(gh) = L(g) u(h) + u(g)`. Membership in the
//! identity component is tested effectively: form preservation, unit
//! determinant, and positive orientation of the projection onto the
//! maximal positive-definite coordinate subspace.
//!
//! Representations are immutable after construction and word evaluation is
//! pure, so disjoint words may be evaluated concurrently without locking.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, LinalgError, QuadraticSpace};
use crate::tolerances::{
    DET_TOL, DRIFT_LIMIT, FORM_PRESERVATION_TOL, INVERSE_ROUNDTRIP_TOL, PROXIMALITY_GAP_MIN,
    SHARED_LINEAR_TOL,
};
use crate::words::{self, ClassMode, Word, WordError};

#[derive(Debug, Error)]
pub enum AffineError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("linear part is not in the identity component: {0}")]
    NotInGroup(String),
    #[error("translation length {got} does not match dimension {expected}")]
    TranslationDim { expected: usize, got: usize },
    #[error("representations do not share linear parts (max deviation {max_dev:.3e})")]
    LinearPartsDiffer { max_dev: f64 },
    #[error("generator count mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("generator {index} failed inverse round-trip (residual {residual:.3e})")]
    BadInverse { index: usize, residual: f64 },
    #[error("word drifted off the isometry group: |L^t Q L - Q| = {drift:.3e} > {limit:.3e}")]
    DriftExceeded { drift: f64, limit: f64 },
}

pub type Result<T> = std::result::Result<T, AffineError>;

/// An element `(L, u)` of the affine group, `x -> Lx + u`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap {
    pub linear: DMatrix<f64>,
    pub translation: DVector<f64>,
}

/// Outcome of the effective membership test for `SO_0(n,n+1)`.
#[derive(Debug, Clone, Serialize)]
pub struct MembershipReport {
    /// `|L^t Q L - Q|_inf`
    pub form_residual: f64,
    pub det: f64,
    /// Determinant of the top-left n x n block: the orientation of the
    /// projection of the image of the positive-definite subspace. Positive
    /// for the identity component.
    pub component_value: f64,
    pub accepted: bool,
}

/// Checks `L` against the three membership criteria without failing;
/// the caller decides what to do with a rejection.
pub fn check_membership(space: &QuadraticSpace, l: &DMatrix<f64>) -> Result<MembershipReport> {
    linalg::check_finite(l)?;
    if l.nrows() != space.dim() || l.ncols() != space.dim() {
        return Err(LinalgError::DimensionMismatch {
            expected: space.dim(),
            got: l.nrows(),
        }
        .into());
    }
    let q = space.q_matrix();
    let form_residual = linalg::max_abs(&(l.transpose() * q * l - q));
    let det = l.determinant();
    let component_value = l.view((0, 0), (space.n(), space.n())).determinant();
    let accepted = form_residual <= FORM_PRESERVATION_TOL
        && (det - 1.0).abs() <= DET_TOL
        && component_value > 0.0;
    Ok(MembershipReport {
        form_residual,
        det,
        component_value,
        accepted,
    })
}

impl AffineMap {
    /// Validates the linear part against the membership test.
    pub fn new(space: &QuadraticSpace, linear: DMatrix<f64>, translation: DVector<f64>) -> Result<Self> {
        if translation.len() != space.dim() {
            return Err(AffineError::TranslationDim {
                expected: space.dim(),
                got: translation.len(),
            });
        }
        linalg::check_finite_vec(&translation)?;
        let report = check_membership(space, &linear)?;
        if !report.accepted {
            return Err(AffineError::NotInGroup(format!(
                "form residual {:.3e}, det {:.6}, component value {:.6}",
                report.form_residual, report.det, report.component_value
            )));
        }
        Ok(Self { linear, translation })
    }

    pub fn identity(space: &QuadraticSpace) -> Self {
        Self {
            linear: DMatrix::identity(space.dim(), space.dim()),
            translation: DVector::zeros(space.dim()),
        }
    }

    /// `(L_a L_b, L_a u_b + u_a)`: apply `b`, then `a`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            linear: &self.linear * &other.linear,
            translation: &self.linear * &other.translation + &self.translation,
        }
    }

    /// `(L^{-1}, -L^{-1} u)`. For isometries of `Q` the inverse of the
    /// linear part is `Q L^t Q`, which avoids an LU solve; the condition
    /// guard still rejects degenerate input.
    pub fn invert(&self, space: &QuadraticSpace) -> Result<AffineMap> {
        let l_inv = space.q_matrix() * self.linear.transpose() * space.q_matrix();
        linalg::guard_condition(&self.linear, &l_inv)?;
        let translation = -(&l_inv * &self.translation);
        Ok(AffineMap {
            linear: l_inv,
            translation,
        })
    }
}

/// JSON form of a representation, the schema consumed by the command-line
/// tools: row-major matrices, decimal numbers.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepresentationFile {
    pub n: usize,
    pub rank: usize,
    pub generators: Vec<GeneratorFile>,
    pub label: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub linear: Vec<Vec<f64>>,
    pub translation: Vec<f64>,
}

/// An assignment of affine maps to free-group generators, with cached
/// inverses. Words evaluate by left-to-right composition.
#[derive(Debug, Clone)]
pub struct Representation {
    space: QuadraticSpace,
    gen_images: Vec<AffineMap>,
    inv_images: Vec<AffineMap>,
    label: String,
}

impl Representation {
    pub fn new(space: QuadraticSpace, gen_images: Vec<AffineMap>, label: String) -> Result<Self> {
        let mut inv_images = Vec::with_capacity(gen_images.len());
        for (index, g) in gen_images.iter().enumerate() {
            let inv = g.invert(&space)?;
            let round = g.compose(&inv);
            let residual = linalg::max_abs(
                &(round.linear.clone() - DMatrix::identity(space.dim(), space.dim())),
            )
            .max(round.translation.amax());
            if residual > INVERSE_ROUNDTRIP_TOL {
                return Err(AffineError::BadInverse { index, residual });
            }
            inv_images.push(inv);
        }
        Ok(Self {
            space,
            gen_images,
            inv_images,
            label,
        })
    }

    pub fn from_file(file: &RepresentationFile) -> Result<Self> {
        let space = QuadraticSpace::new(file.n)?;
        let dim = space.dim();
        if file.generators.len() != file.rank {
            return Err(AffineError::RankMismatch(file.generators.len(), file.rank));
        }
        let mut gens = Vec::with_capacity(file.rank);
        for g in &file.generators {
            if g.linear.len() != dim || g.linear.iter().any(|row| row.len() != dim) {
                return Err(LinalgError::DimensionMismatch {
                    expected: dim,
                    got: g.linear.len(),
                }
                .into());
            }
            let linear = DMatrix::from_fn(dim, dim, |i, j| g.linear[i][j]);
            let translation = DVector::from_vec(g.translation.clone());
            gens.push(AffineMap::new(&space, linear, translation)?);
        }
        Representation::new(space, gens, file.label.clone())
    }

    pub fn to_file(&self) -> RepresentationFile {
        let dim = self.space.dim();
        RepresentationFile {
            n: self.space.n(),
            rank: self.rank(),
            generators: self
                .gen_images
                .iter()
                .map(|g| GeneratorFile {
                    linear: (0..dim)
                        .map(|i| (0..dim).map(|j| g.linear[(i, j)]).collect())
                        .collect(),
                    translation: g.translation.iter().cloned().collect(),
                })
                .collect(),
            label: self.label.clone(),
        }
    }

    pub fn space(&self) -> &QuadraticSpace {
        &self.space
    }

    pub fn rank(&self) -> usize {
        self.gen_images.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn generator(&self, i: usize) -> &AffineMap {
        &self.gen_images[i]
    }

    pub fn generator_inverse(&self, i: usize) -> &AffineMap {
        &self.inv_images[i]
    }

    /// Image of a single signed letter.
    pub fn letter_image(&self, letter: i32) -> &AffineMap {
        let idx = (letter.unsigned_abs() as usize) - 1;
        if letter > 0 {
            &self.gen_images[idx]
        } else {
            &self.inv_images[idx]
        }
    }

    /// Left-to-right composition of generator images. The empty word maps
    /// to the identity. The resulting linear part is checked against the
    /// drift monitor and rejected when rounding has carried it off the
    /// isometry group.
    pub fn evaluate(&self, word: &Word) -> Result<AffineMap> {
        let mut acc = AffineMap::identity(&self.space);
        for &letter in word.letters() {
            if letter == 0 || letter.unsigned_abs() as usize > self.rank() {
                return Err(WordError::BadIndex(letter, self.rank()).into());
            }
            acc = acc.compose(self.letter_image(letter));
        }
        let q = self.space.q_matrix();
        let drift = linalg::max_abs(&(acc.linear.transpose() * q * &acc.linear - q));
        if drift > DRIFT_LIMIT {
            return Err(AffineError::DriftExceeded {
                drift,
                limit: DRIFT_LIMIT,
            });
        }
        Ok(acc)
    }

    /// Same linear parts, translations multiplied by `c`. Inverse caches
    /// are scaled in place so that power-of-two factors commute with the
    /// evaluation arithmetic bit for bit.
    pub fn scale_translation(&self, c: f64) -> Representation {
        let mut out = self.clone();
        for g in out.gen_images.iter_mut().chain(out.inv_images.iter_mut()) {
            g.translation *= c;
        }
        out
    }

    /// Translation-only convex combination `(1-t) u_0 + t u_1` of two
    /// representations sharing linear parts.
    pub fn interpolate(rep0: &Representation, rep1: &Representation, t: f64) -> Result<Representation> {
        let max_dev = Self::linear_part_deviation(rep0, rep1)?;
        if max_dev > SHARED_LINEAR_TOL {
            return Err(AffineError::LinearPartsDiffer { max_dev });
        }
        let mut out = rep0.clone();
        for (g, g1) in out.gen_images.iter_mut().zip(rep1.gen_images.iter()) {
            g.translation = &g.translation * (1.0 - t) + &g1.translation * t;
        }
        for (i, inv) in out.inv_images.iter_mut().enumerate() {
            inv.translation = -(&inv.linear * &out.gen_images[i].translation);
        }
        out.label = format!("interp({}, {}, t={t})", rep0.label, rep1.label);
        Ok(out)
    }

    /// Largest entrywise deviation between the generators' linear parts.
    pub fn linear_part_deviation(rep0: &Representation, rep1: &Representation) -> Result<f64> {
        if rep0.rank() != rep1.rank() {
            return Err(AffineError::RankMismatch(rep0.rank(), rep1.rank()));
        }
        let mut max_dev = 0.0f64;
        for (a, b) in rep0.gen_images.iter().zip(rep1.gen_images.iter()) {
            max_dev = max_dev.max(linalg::max_abs(&(a.linear.clone() - &b.linear)));
        }
        Ok(max_dev)
    }

    /// Replaces the generator translations, keeping linear parts.
    pub fn with_translations(&self, translations: &[DVector<f64>]) -> Result<Representation> {
        if translations.len() != self.rank() {
            return Err(AffineError::RankMismatch(translations.len(), self.rank()));
        }
        let mut out = self.clone();
        for (i, u) in translations.iter().enumerate() {
            if u.len() != self.space.dim() {
                return Err(AffineError::TranslationDim {
                    expected: self.space.dim(),
                    got: u.len(),
                });
            }
            out.gen_images[i].translation = u.clone();
            out.inv_images[i].translation = -(&out.inv_images[i].linear * u);
        }
        Ok(out)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Representation {
        self.label = label.into();
        self
    }
}

/// A fixed-linear-part tangent direction: the values of the derivative
/// cocycle on the generators. The linear part of the variation is zero.
#[derive(Debug, Clone)]
pub struct TangentCocycle {
    pub dot_translations: Vec<DVector<f64>>,
    pub label: String,
}

impl TangentCocycle {
    pub fn new(rep: &Representation, dot_translations: Vec<DVector<f64>>, label: impl Into<String>) -> Result<Self> {
        if dot_translations.len() != rep.rank() {
            return Err(AffineError::RankMismatch(dot_translations.len(), rep.rank()));
        }
        for v in &dot_translations {
            if v.len() != rep.space().dim() {
                return Err(AffineError::TranslationDim {
                    expected: rep.space().dim(),
                    got: v.len(),
                });
            }
            linalg::check_finite_vec(v)?;
        }
        Ok(Self {
            dot_translations,
            label: label.into(),
        })
    }

    /// The radial direction: `udot = u` on every generator.
    pub fn radial(rep: &Representation) -> Self {
        Self {
            dot_translations: (0..rep.rank())
                .map(|i| rep.generator(i).translation.clone())
                .collect(),
            label: "radial".into(),
        }
    }

    /// The coboundary direction of a vector: `udot(g) = v - L(g) v`.
    pub fn coboundary(rep: &Representation, v: &DVector<f64>) -> Self {
        Self {
            dot_translations: (0..rep.rank())
                .map(|i| v - &rep.generator(i).linear * v)
                .collect(),
            label: "coboundary".into(),
        }
    }

    pub fn zero(rep: &Representation) -> Self {
        Self {
            dot_translations: (0..rep.rank())
                .map(|_| DVector::zeros(rep.space().dim()))
                .collect(),
            label: "zero".into(),
        }
    }

    /// Value of the derivative cocycle on a single letter;
    /// `udot(g^{-1}) = -L(g)^{-1} udot(g)`.
    pub fn letter_value(&self, rep: &Representation, letter: i32) -> DVector<f64> {
        let idx = (letter.unsigned_abs() as usize) - 1;
        if letter > 0 {
            self.dot_translations[idx].clone()
        } else {
            -(&rep.generator_inverse(idx).linear * &self.dot_translations[idx])
        }
    }

    /// Expands the cocycle law `udot(gh) = L(g) udot(h) + udot(g)` over a
    /// word, left to right.
    pub fn evaluate(&self, rep: &Representation, word: &Word) -> Result<DVector<f64>> {
        let mut udot = DVector::zeros(rep.space().dim());
        let mut prefix = DMatrix::identity(rep.space().dim(), rep.space().dim());
        for &letter in word.letters() {
            if letter == 0 || letter.unsigned_abs() as usize > rep.rank() {
                return Err(WordError::BadIndex(letter, rep.rank()).into());
            }
            udot += &prefix * self.letter_value(rep, letter);
            prefix *= &self.letter_image_linear(rep, letter);
        }
        Ok(udot)
    }

    fn letter_image_linear(&self, rep: &Representation, letter: i32) -> DMatrix<f64> {
        rep.letter_image(letter).linear.clone()
    }

    /// `self - c * other`, entrywise on generators.
    pub fn axpy(&self, c: f64, other: &TangentCocycle, label: impl Into<String>) -> TangentCocycle {
        TangentCocycle {
            dot_translations: self
                .dot_translations
                .iter()
                .zip(other.dot_translations.iter())
                .map(|(a, b)| a - b * c)
                .collect(),
            label: label.into(),
        }
    }

    pub fn norm(&self) -> f64 {
        self.dot_translations
            .iter()
            .map(|v| v.norm_squared())
            .sum::<f64>()
            .sqrt()
    }
}

/// One flagged word in a proximality scan.
#[derive(Debug, Clone, Serialize)]
pub struct ProximalityFlag {
    pub word: String,
    pub length: usize,
    pub gap: f64,
}

/// Result of scanning eigenvalue-modulus gaps over all short words.
#[derive(Debug, Clone, Serialize)]
pub struct ProximalityReport {
    pub max_len: usize,
    pub words_scanned: usize,
    pub min_gap: f64,
    pub worst_word: String,
    pub threshold: f64,
    pub flags: Vec<ProximalityFlag>,
}

impl ProximalityReport {
    pub fn passed(&self) -> bool {
        self.flags.is_empty()
    }
}

/// Necessary-condition proxy for the Anosov property of the linear part:
/// for every conjugacy class up to `max_len`, the ratio of the n-th to the
/// (n+1)-th eigenvalue modulus of the word matrix must clear a threshold.
pub fn proximality_scan(rep: &Representation, max_len: usize) -> Result<ProximalityReport> {
    proximality_scan_with_threshold(rep, max_len, PROXIMALITY_GAP_MIN)
}

pub fn proximality_scan_with_threshold(
    rep: &Representation,
    max_len: usize,
    threshold: f64,
) -> Result<ProximalityReport> {
    let classes = words::enumerate_classes(rep.rank(), max_len, ClassMode::All)?;
    let n = rep.space().n();
    let mut min_gap = f64::INFINITY;
    let mut worst_word = String::new();
    let mut flags = Vec::new();
    for class in &classes {
        let g = rep.evaluate(class.rep_word())?;
        let gap = top_gap(&g.linear, n);
        if gap < min_gap {
            min_gap = gap;
            worst_word = class.rep_word().text();
        }
        if gap < threshold {
            flags.push(ProximalityFlag {
                word: class.rep_word().text(),
                length: class.len(),
                gap,
            });
        }
    }
    Ok(ProximalityReport {
        max_len,
        words_scanned: classes.len(),
        min_gap,
        worst_word,
        threshold,
        flags,
    })
}

/// Ratio of the n-th to the (n+1)-th eigenvalue modulus (descending).
fn top_gap(l: &DMatrix<f64>, n: usize) -> f64 {
    let mut moduli: Vec<f64> = l.complex_eigenvalues().iter().map(|z| z.norm()).collect();
    moduli.sort_by(|a, b| b.partial_cmp(a).unwrap());
    moduli[n - 1] / moduli[n]
}

/// Scans the conjugacy classes of `rep` for a specific word's eigenvalue
/// moduli; exposed for diagnostics.
pub fn eigenvalue_moduli(rep: &Representation, word: &Word) -> Result<Vec<f64>> {
    let g = rep.evaluate(word)?;
    let mut moduli: Vec<f64> = g.linear.complex_eigenvalues().iter().map(|z| z.norm()).collect();
    moduli.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(moduli)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::QuadraticSpace;

    fn space() -> QuadraticSpace {
        QuadraticSpace::new(1).unwrap()
    }

    /// Boost of rapidity `t` in the (0, 1) coordinate plane of `R^{1,2}`;
    /// fixes the third axis.
    pub(crate) fn boost_01(space: &QuadraticSpace, t: f64) -> DMatrix<f64> {
        let mut m = DMatrix::identity(space.dim(), space.dim());
        m[(0, 0)] = t.cosh();
        m[(0, 1)] = t.sinh();
        m[(1, 0)] = t.sinh();
        m[(1, 1)] = t.cosh();
        m
    }

    fn rotation_12(space: &QuadraticSpace, angle: f64) -> DMatrix<f64> {
        let mut m = DMatrix::identity(space.dim(), space.dim());
        m[(1, 1)] = angle.cos();
        m[(1, 2)] = -angle.sin();
        m[(2, 1)] = angle.sin();
        m[(2, 2)] = angle.cos();
        m
    }

    #[test]
    fn translations_add_under_composition() {
        let s = space();
        let u = DVector::from_vec(vec![1.0, 2.0, 3.0]);
        let v = DVector::from_vec(vec![-0.5, 0.25, 1.0]);
        let a = AffineMap::new(&s, DMatrix::identity(3, 3), u.clone()).unwrap();
        let b = AffineMap::new(&s, DMatrix::identity(3, 3), v.clone()).unwrap();
        let c = a.compose(&b);
        assert_eq!(c.translation, u + v);
        assert_eq!(c.linear, DMatrix::identity(3, 3));
    }

    #[test]
    fn inverse_examples() {
        let s = space();
        let id = AffineMap::identity(&s);
        let inv = id.invert(&s).unwrap();
        assert_eq!(inv.linear, id.linear);
        assert_eq!(inv.translation, id.translation);

        let u = DVector::from_vec(vec![1.0, -2.0, 0.5]);
        let t = AffineMap::new(&s, DMatrix::identity(3, 3), u.clone()).unwrap();
        let tinv = t.invert(&s).unwrap();
        assert_eq!(tinv.translation, -u);

        let a = AffineMap::new(&s, boost_01(&s, 0.7), DVector::from_vec(vec![0.1, 0.2, 0.3]))
            .unwrap();
        let round = a.compose(&a.invert(&s).unwrap());
        assert!(linalg::max_abs(&(round.linear - DMatrix::identity(3, 3))) < 1e-10);
        assert!(round.translation.amax() < 1e-10);
    }

    #[test]
    fn membership_examples() {
        let s = space();
        assert!(check_membership(&s, &DMatrix::identity(3, 3)).unwrap().accepted);
        // -I has determinant -1 in odd dimension
        let neg = -DMatrix::<f64>::identity(3, 3);
        let report = check_membership(&s, &neg).unwrap();
        assert!(!report.accepted);
        assert!((report.det + 1.0).abs() < 1e-12);
        // flipping the positive axis and one negative axis keeps det = +1
        // but reverses the component invariant
        let flip = DMatrix::from_diagonal(&DVector::from_vec(vec![-1.0, 1.0, -1.0]));
        let report = check_membership(&s, &flip).unwrap();
        assert!((report.det - 1.0).abs() < 1e-12);
        assert!(report.component_value < 0.0);
        assert!(!report.accepted);
        // Q itself is a half-turn in the negative-definite plane and lies
        // in the identity component
        let report = check_membership(&s, s.q_matrix()).unwrap();
        assert!(report.accepted);
    }

    #[test]
    fn boosts_and_rotations_are_members() {
        let s = space();
        assert!(check_membership(&s, &boost_01(&s, 1.3)).unwrap().accepted);
        assert!(check_membership(&s, &rotation_12(&s, 0.9)).unwrap().accepted);
    }

    fn two_boost_rep(s: &QuadraticSpace) -> Representation {
        let r = rotation_12(s, 1.1);
        let r_inv = rotation_12(s, -1.1);
        let b = boost_01(s, 0.8);
        let gens = vec![
            AffineMap::new(s, b.clone(), DVector::from_vec(vec![0.0, 0.1, 0.9])).unwrap(),
            AffineMap::new(s, &r * &b * &r_inv, DVector::from_vec(vec![0.05, -0.2, 0.8]))
                .unwrap(),
        ];
        Representation::new(s.clone(), gens, "test".into()).unwrap()
    }

    #[test]
    fn evaluate_matches_split_composition() {
        let s = space();
        let rep = two_boost_rep(&s);
        let w = Word::reduce(&[1, 2, -1, 2, 2, 1], 2).unwrap();
        let full = rep.evaluate(&w).unwrap();
        let left = rep.evaluate(&Word::reduce(&[1, 2, -1], 2).unwrap()).unwrap();
        let right = rep.evaluate(&Word::reduce(&[2, 2, 1], 2).unwrap()).unwrap();
        let glued = left.compose(&right);
        assert!(linalg::max_abs(&(full.linear.clone() - glued.linear)) < 1e-9);
        assert!((full.translation - glued.translation).amax() < 1e-9);
    }

    #[test]
    fn evaluate_handles_trivial_words() {
        let s = space();
        let rep = two_boost_rep(&s);
        let id = rep.evaluate(&Word::empty(2)).unwrap();
        assert_eq!(id.linear, DMatrix::identity(3, 3));
        let cancel = rep.evaluate(&Word::reduce(&[1], 2).unwrap()).unwrap();
        let inv = rep.evaluate(&Word::reduce(&[-1], 2).unwrap()).unwrap();
        let round = cancel.compose(&inv);
        assert!(linalg::max_abs(&(round.linear - DMatrix::identity(3, 3))) < 1e-10);
        assert!(round.translation.amax() < 1e-10);
    }

    #[test]
    fn scaling_translations_scales_word_translations() {
        let s = space();
        let rep = two_boost_rep(&s);
        let scaled = rep.scale_translation(2.0);
        let w = Word::reduce(&[1, 2, -1, 2], 2).unwrap();
        let base = rep.evaluate(&w).unwrap();
        let double = scaled.evaluate(&w).unwrap();
        assert_eq!(base.linear, double.linear);
        assert!((double.translation - base.translation * 2.0).amax() < 1e-10);

        let zero = rep.scale_translation(0.0);
        assert!(zero.evaluate(&w).unwrap().translation.amax() == 0.0);

        let chained = rep.scale_translation(0.5).scale_translation(4.0);
        let direct = rep.scale_translation(2.0);
        for i in 0..rep.rank() {
            assert_eq!(
                chained.generator(i).translation,
                direct.generator(i).translation
            );
        }
    }

    #[test]
    fn interpolation_endpoints() {
        let s = space();
        let rep0 = two_boost_rep(&s);
        let rep1 = rep0
            .with_translations(&[
                DVector::from_vec(vec![0.3, 0.0, 1.2]),
                DVector::from_vec(vec![0.0, 0.4, 0.6]),
            ])
            .unwrap();
        let at0 = Representation::interpolate(&rep0, &rep1, 0.0).unwrap();
        let at1 = Representation::interpolate(&rep0, &rep1, 1.0).unwrap();
        for i in 0..2 {
            assert_eq!(at0.generator(i).translation, rep0.generator(i).translation);
            assert_eq!(at1.generator(i).translation, rep1.generator(i).translation);
        }
        let mismatched = rep0.scale_translation(1.0);
        let mut other = mismatched.clone();
        other.gen_images[0].linear[(0, 0)] += 1e-6;
        assert!(Representation::interpolate(&rep0, &other, 0.5).is_err());
    }

    #[test]
    fn proximality_scan_flags_elliptic_generator() {
        let s = space();
        let gens = vec![
            AffineMap::new(&s, rotation_12(&s, 0.7), DVector::zeros(3)).unwrap(),
            AffineMap::new(&s, boost_01(&s, 0.9), DVector::zeros(3)).unwrap(),
        ];
        let rep = Representation::new(s.clone(), gens, "elliptic".into()).unwrap();
        let report = proximality_scan(&rep, 1).unwrap();
        assert!(!report.passed());
        assert!(report.flags.iter().any(|f| f.length == 1 && f.gap < 1.01));
    }

    #[test]
    fn proximality_scan_passes_single_boost() {
        let s = space();
        let gens = vec![AffineMap::new(&s, boost_01(&s, 0.8), DVector::zeros(3)).unwrap()];
        let rep = Representation::new(s.clone(), gens, "boost".into()).unwrap();
        let report = proximality_scan(&rep, 4).unwrap();
        assert!(report.passed(), "min gap {}", report.min_gap);
    }

    #[test]
    fn drift_monitor_rejects_blown_up_words() {
        let s = space();
        let gens = vec![
            AffineMap::new(&s, boost_01(&s, 7.0), DVector::zeros(3)).unwrap(),
            AffineMap::new(&s, rotation_12(&s, 0.3), DVector::zeros(3)).unwrap(),
        ];
        let rep = Representation::new(s.clone(), gens, "hot".into()).unwrap();
        // rapidity 7 boosts compound to |L| ~ e^{28}; the cancellation in
        // L^t Q L then sits far above the drift bound and the monitor must
        // reject the word rather than record garbage
        let w = Word::reduce(&[1, 1, 1, 1], 2).unwrap();
        match rep.evaluate(&w) {
            Err(AffineError::DriftExceeded { .. }) => {}
            other => panic!("expected drift rejection, got {other:?}"),
        }
    }

    #[test]
    fn tangent_cocycle_letter_values() {
        let s = space();
        let rep = two_boost_rep(&s);
        let tc = TangentCocycle::radial(&rep);
        let w = Word::reduce(&[1, 2], 2).unwrap();
        let udot = tc.evaluate(&rep, &w).unwrap();
        let u = rep.evaluate(&w).unwrap().translation;
        assert!((udot - u).amax() < 1e-12);

        // udot(g g^{-1}) = 0
        let cancel = tc.evaluate(&rep, &Word::empty(2)).unwrap();
        assert!(cancel.amax() == 0.0);
        let manual = tc.letter_value(&rep, 1)
            + &rep.generator(0).linear * tc.letter_value(&rep, -1);
        assert!(manual.amax() < 1e-12);
    }
}
