//! Free-group combinatorics: reduced words, cyclic reduction and
//! enumeration of conjugacy-class representatives up to a length budget.
//!
//! Letters are signed generator indices: `+i` for the i-th generator,
//! `-i` for its inverse, indices starting at 1. The total order used for
//! canonical representatives is `-r < ... < -1 < +1 < ... < +r`, which is
//! stable under rank extension.
//!
//! Conjugacy classes stand in for closed orbits of the geodesic-like flow:
//! a class and the class of its inverse are counted separately (they model
//! the orbit and its time reversal), and proper powers are enumerated as
//! their own classes by default with a `primitive` mode for sensitivity
//! checks.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tolerances::CLASS_BUDGET_CAP;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WordError {
    #[error("letter {0} out of range for rank {1}")]
    BadIndex(i32, usize),
    #[error("rank must be at least 1, got {0}")]
    BadRank(usize),
    #[error("the empty word has no conjugacy class")]
    EmptyWord,
    #[error("projected word count {projected} exceeds the budget cap {cap}")]
    BudgetExceeded { projected: u64, cap: u64 },
}

pub type Result<T> = std::result::Result<T, WordError>;

/// A freely reduced word in the free group of the given rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<i32>,
    rank: usize,
}

/// Which conjugacy classes an enumeration yields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassMode {
    /// Every class, proper powers included.
    All,
    /// Only classes of primitive elements (not proper powers).
    Primitive,
}

impl Word {
    /// Freely reduces an arbitrary letter sequence. Idempotent.
    pub fn reduce(letters: &[i32], rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(WordError::BadRank(rank));
        }
        let mut stack: Vec<i32> = Vec::with_capacity(letters.len());
        for &l in letters {
            if l == 0 || l.unsigned_abs() as usize > rank {
                return Err(WordError::BadIndex(l, rank));
            }
            if stack.last().is_some_and(|&top| top == -l) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Ok(Self {
            letters: stack,
            rank,
        })
    }

    pub fn empty(rank: usize) -> Self {
        Self {
            letters: Vec::new(),
            rank,
        }
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
            rank: self.rank,
        }
    }

    /// Concatenation followed by free reduction.
    pub fn concat(&self, other: &Word) -> Result<Self> {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self::reduce(&letters, self.rank.max(other.rank))
    }

    /// `g w g^{-1}`, reduced.
    pub fn conjugated_by(&self, g: &Word) -> Result<Self> {
        g.concat(self)?.concat(&g.inverse())
    }

    pub fn repeated(&self, k: usize) -> Result<Self> {
        let mut letters = Vec::with_capacity(self.letters.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(&self.letters);
        }
        Self::reduce(&letters, self.rank)
    }

    /// Whether the first and last letters are not inverse to each other.
    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&f), Some(&l)) => f != -l,
            _ => true,
        }
    }

    /// Splits `w = c * core * c^{-1}` with a cyclically reduced core.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let mut lo = 0usize;
        let mut hi = self.letters.len();
        while hi - lo >= 2 && self.letters[lo] == -self.letters[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        let core = Word {
            letters: self.letters[lo..hi].to_vec(),
            rank: self.rank,
        };
        let conjugator = Word {
            letters: self.letters[..lo].to_vec(),
            rank: self.rank,
        };
        (core, conjugator)
    }

    /// Plain text form: letters joined by spaces, `a1 a2 A1` with capital
    /// letters denoting inverses.
    pub fn text(&self) -> String {
        self.letters
            .iter()
            .map(|&l| {
                if l > 0 {
                    format!("a{l}")
                } else {
                    format!("A{}", -l)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Rank of a letter in the order `-r < ... < -1 < +1 < ... < +r`.
fn letter_ord(l: i32, rank: usize) -> usize {
    let r = rank as i32;
    if l < 0 {
        (r + l) as usize // -r -> 0, ..., -1 -> r-1
    } else {
        (r + l - 1) as usize // +1 -> r, ..., +r -> 2r-1
    }
}

fn lex_less(a: &[i32], b: &[i32], rank: usize) -> bool {
    for (&x, &y) in a.iter().zip(b.iter()) {
        let (ox, oy) = (letter_ord(x, rank), letter_ord(y, rank));
        if ox != oy {
            return ox < oy;
        }
    }
    a.len() < b.len()
}

/// A conjugacy class, keyed by the lexicographically least cyclic rotation
/// of a cyclically reduced representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConjClass {
    rep_word: Word,
}

impl ConjClass {
    /// Canonical class of a nonempty reduced word: cyclically reduce, then
    /// minimize over rotations. Conjugate words map to equal classes.
    pub fn canonical(w: &Word) -> Result<Self> {
        if w.is_empty() {
            return Err(WordError::EmptyWord);
        }
        let (core, _) = w.cyclic_reduce();
        if core.is_empty() {
            return Err(WordError::EmptyWord);
        }
        let letters = min_rotation(core.letters(), core.rank());
        Ok(Self {
            rep_word: Word {
                letters,
                rank: core.rank(),
            },
        })
    }

    pub fn rep_word(&self) -> &Word {
        &self.rep_word
    }

    pub fn len(&self) -> usize {
        self.rep_word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// A class is primitive when it is not a proper power, i.e. equals none
    /// of its nontrivial rotations.
    pub fn is_primitive(&self) -> bool {
        let letters = self.rep_word.letters();
        let n = letters.len();
        for d in 1..n {
            if n % d == 0 && rotation_eq(letters, d) {
                return false;
            }
        }
        true
    }

    /// Sort key: length first, then the letter order.
    pub fn sort_key(&self) -> (usize, Vec<usize>) {
        let rank = self.rep_word.rank();
        (
            self.rep_word.len(),
            self.rep_word
                .letters()
                .iter()
                .map(|&l| letter_ord(l, rank))
                .collect(),
        )
    }
}

fn rotation_eq(letters: &[i32], shift: usize) -> bool {
    let n = letters.len();
    (0..n).all(|i| letters[i] == letters[(i + shift) % n])
}

fn min_rotation(letters: &[i32], rank: usize) -> Vec<i32> {
    let n = letters.len();
    let mut best: Vec<i32> = letters.to_vec();
    let mut rotated = letters.to_vec();
    for _ in 1..n {
        rotated.rotate_left(1);
        if lex_less(&rotated, &best, rank) {
            best = rotated.clone();
        }
    }
    best
}

/// Exact count of cyclically reduced words of the given length.
fn cyclically_reduced_word_count(rank: usize, len: usize) -> u64 {
    let base = (2 * rank - 1) as u64;
    let mut c = base.saturating_pow(len as u32).saturating_add(1);
    if len % 2 == 0 {
        c = c.saturating_add((2 * rank - 2) as u64);
    }
    c
}

/// All distinct conjugacy classes of nontrivial elements with cyclically
/// reduced length at most `max_len`, each exactly once, sorted by length
/// then lexicographically. A class and its inverse's class appear as
/// separate entries whenever they are not conjugate.
///
/// Enumeration is partitioned by first letter; partitions are independent
/// and the merged result is sorted, so the output does not depend on
/// scheduling.
pub fn enumerate_classes(rank: usize, max_len: usize, mode: ClassMode) -> Result<Vec<ConjClass>> {
    enumerate_classes_with_cap(rank, max_len, mode, CLASS_BUDGET_CAP)
}

pub fn enumerate_classes_with_cap(
    rank: usize,
    max_len: usize,
    mode: ClassMode,
    cap: u64,
) -> Result<Vec<ConjClass>> {
    if rank == 0 {
        return Err(WordError::BadRank(rank));
    }
    let projected: u64 = (1..=max_len)
        .map(|l| cyclically_reduced_word_count(rank, l))
        .fold(0u64, |a, b| a.saturating_add(b));
    if projected > cap {
        return Err(WordError::BudgetExceeded { projected, cap });
    }

    let first_letters: Vec<i32> = (1..=rank as i32).flat_map(|i| [-i, i]).collect();
    let mut classes: Vec<ConjClass> = first_letters
        .par_iter()
        .map(|&first| {
            let mut bucket = Vec::new();
            let mut word = vec![first];
            collect_canonical(rank, max_len, mode, &mut word, &mut bucket);
            bucket
        })
        .reduce(Vec::new, |mut a, mut b| {
            a.append(&mut b);
            a
        });

    classes.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(classes)
}

/// Depth-first over cyclically reduced extensions of `word`, keeping the
/// words that are their own canonical rotation.
fn collect_canonical(
    rank: usize,
    max_len: usize,
    mode: ClassMode,
    word: &mut Vec<i32>,
    out: &mut Vec<ConjClass>,
) {
    let first = word[0];
    let last = *word.last().unwrap();
    if first != -last && word.as_slice() == min_rotation(word, rank).as_slice() {
        let class = ConjClass {
            rep_word: Word {
                letters: word.clone(),
                rank,
            },
        };
        if mode == ClassMode::All || class.is_primitive() {
            out.push(class);
        }
    }
    if word.len() == max_len {
        return;
    }
    for i in 1..=rank as i32 {
        for next in [i, -i] {
            if next == -last {
                continue;
            }
            word.push(next);
            collect_canonical(rank, max_len, mode, word, out);
            word.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[i32]) -> Word {
        Word::reduce(letters, 2).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert!(w(&[1, -1]).is_empty());
        assert_eq!(w(&[1, 2, -2, 1]).letters(), &[1, 1]);
        assert!(Word::reduce(&[3], 2).is_err());
        assert!(Word::reduce(&[0], 2).is_err());
    }

    #[test]
    fn cyclic_reduce_examples() {
        let (core, conj) = w(&[1, 2, -1]).cyclic_reduce();
        assert_eq!(core.letters(), &[2]);
        assert_eq!(conj.letters(), &[1]);

        let cyc = w(&[1, 2]);
        let (core, conj) = cyc.cyclic_reduce();
        assert_eq!(core, cyc);
        assert!(conj.is_empty());
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(
            ConjClass::canonical(&w(&[2, 1])).unwrap().rep_word().letters(),
            &[1, 2]
        );
        assert_eq!(
            ConjClass::canonical(&w(&[1, 2, -1])).unwrap().rep_word().letters(),
            &[2]
        );
        assert!(ConjClass::canonical(&Word::empty(2)).is_err());
    }

    #[test]
    fn letter_order_is_negatives_first() {
        // -2 < -1 < 1 < 2
        assert!(lex_less(&[-2], &[-1], 2));
        assert!(lex_less(&[-1], &[1], 2));
        assert!(lex_less(&[1], &[2], 2));
        assert_eq!(
            ConjClass::canonical(&w(&[1, -2])).unwrap().rep_word().letters(),
            &[-2, 1]
        );
    }

    #[test]
    fn enumerate_rank2_small_lengths() {
        let len1 = enumerate_classes(2, 1, ClassMode::All).unwrap();
        assert_eq!(len1.len(), 4);
        let len2 = enumerate_classes(2, 2, ClassMode::All).unwrap();
        assert_eq!(len2.len(), 12);
        assert_eq!(len2.iter().filter(|c| c.len() == 2).count(), 8);
    }

    #[test]
    fn enumeration_is_sorted_and_duplicate_free() {
        let classes = enumerate_classes(2, 5, ClassMode::All).unwrap();
        for pair in classes.windows(2) {
            assert!(pair[0].sort_key() < pair[1].sort_key());
        }
        for c in &classes {
            assert!(c.rep_word().is_cyclically_reduced());
            assert_eq!(
                c.rep_word().letters(),
                min_rotation(c.rep_word().letters(), 2).as_slice()
            );
        }
    }

    #[test]
    fn closed_under_inversion() {
        let classes = enumerate_classes(2, 4, ClassMode::All).unwrap();
        let set: std::collections::HashSet<_> = classes.iter().cloned().collect();
        for c in &classes {
            let inv = ConjClass::canonical(&c.rep_word().inverse()).unwrap();
            assert!(set.contains(&inv), "missing inverse of {:?}", c);
        }
    }

    #[test]
    fn growth_is_at_least_doubling() {
        let counts: Vec<usize> = (1..=11)
            .map(|l| enumerate_classes(2, l, ClassMode::All).unwrap().len())
            .collect();
        for l in 2..=10 {
            assert!(counts[l] > counts[l - 1], "not strictly increasing at {l}");
            // cumulative count at least doubles per extra letter
            assert!(
                counts[l] as f64 / counts[l - 1] as f64 >= 2.0,
                "growth ratio below 2 at length {}: {} / {}",
                l + 1,
                counts[l],
                counts[l - 1]
            );
        }
    }

    #[test]
    fn primitive_mode_drops_powers() {
        let all = enumerate_classes(2, 4, ClassMode::All).unwrap();
        let prim = enumerate_classes(2, 4, ClassMode::Primitive).unwrap();
        assert!(prim.len() < all.len());
        let square = ConjClass::canonical(&w(&[1, 1])).unwrap();
        assert!(all.contains(&square));
        assert!(!prim.contains(&square));
        assert!(prim.iter().all(|c| c.is_primitive()));
    }

    #[test]
    fn budget_guard_refuses_huge_enumerations() {
        let err = enumerate_classes_with_cap(2, 30, ClassMode::All, 1_000_000).unwrap_err();
        assert!(matches!(err, WordError::BudgetExceeded { .. }));
    }

    #[test]
    fn rank_one_powers() {
        let classes = enumerate_classes(1, 3, ClassMode::All).unwrap();
        // a, A, aa, AA, aaa, AAA
        assert_eq!(classes.len(), 6);
    }

    #[test]
    fn word_text_form() {
        assert_eq!(w(&[1, 2, -1]).text(), "a1 a2 A1");
    }
}
