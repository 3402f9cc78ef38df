//! Canonical element representation and arithmetic.
//!
//! A [`GroupElement`] holds the ShortLex-minimal reduced word of the element
//! it represents; equality of elements is equality of those sequences. All
//! descent decisions reduce to the root sign test of [`crate::geometry`].

use std::fmt;

use thiserror::Error;

use crate::geometry::{self, DegenerateSign, RootVector, SignClass};
use crate::system::{CoxeterSystem, GeneratorId, GeneratorSet};

/// A finite word over the generators, possibly non-reduced.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Word {
    letters: Vec<GeneratorId>,
}

impl Word {
    pub fn new(letters: Vec<GeneratorId>) -> Self {
        Word { letters }
    }

    pub fn letters(&self) -> &[GeneratorId] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_letters(&self.letters, f)
    }
}

fn fmt_letters(letters: &[GeneratorId], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if letters.is_empty() {
        return write!(f, "e");
    }
    for (i, s) in letters.iter().enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        write!(f, "{s}")?;
    }
    Ok(())
}

/// Word parse failures, with the offending token and its position.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum WordParseError {
    #[error("unknown token {token:?} at position {position} (rank {rank})")]
    UnknownToken { token: String, position: usize, rank: usize },
    #[error("the identity token \"e\" cannot be mixed with generators (position {position})")]
    MisplacedIdentity { position: usize },
}

/// Errors from the element engine.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum EngineError {
    #[error(transparent)]
    Degenerate(#[from] DegenerateSign),
    #[error("element length exceeds the cap {cap}")]
    CapExceeded { cap: usize },
}

/// An element of the group, stored as its ShortLex-minimal reduced word.
///
/// Ordering is ShortLex: by length first, then lexicographically by
/// generator index. Two elements of the same system are equal exactly when
/// their stored words are identical.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    nf: Vec<GeneratorId>,
}

impl GroupElement {
    pub(crate) fn from_normal_form(nf: Vec<GeneratorId>) -> Self {
        GroupElement { nf }
    }

    pub fn identity() -> Self {
        GroupElement { nf: Vec::new() }
    }

    pub fn normal_form(&self) -> &[GeneratorId] {
        &self.nf
    }

    pub fn length(&self) -> usize {
        self.nf.len()
    }

    pub fn is_identity(&self) -> bool {
        self.nf.is_empty()
    }

    pub fn word(&self) -> Word {
        Word::new(self.nf.clone())
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.nf
            .len()
            .cmp(&other.nf.len())
            .then_with(|| self.nf.cmp(&other.nf))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_letters(&self.nf, f)
    }
}

impl CoxeterSystem {
    /// Parses the textual element syntax: whitespace- or dot-separated
    /// generator labels, or `e` for the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordParseError> {
        let tokens: Vec<&str> = text
            .split(|c: char| c.is_whitespace() || c == '.')
            .filter(|t| !t.is_empty())
            .collect();
        let mut letters = Vec::with_capacity(tokens.len());
        for (position, token) in tokens.iter().enumerate() {
            if token.eq_ignore_ascii_case("e") {
                if tokens.len() > 1 {
                    return Err(WordParseError::MisplacedIdentity { position });
                }
                return Ok(Word::default());
            }
            match self.parse_generator(token) {
                Some(s) => letters.push(s),
                None => {
                    return Err(WordParseError::UnknownToken {
                        token: token.to_string(),
                        position,
                        rank: self.rank(),
                    })
                }
            }
        }
        Ok(Word::new(letters))
    }

    /// Builds a word from generator indices. Panics on out-of-range indices;
    /// intended for programmatic use where indices are known valid.
    pub fn word(&self, indices: &[usize]) -> Word {
        assert!(
            indices.iter().all(|&i| i < self.rank()),
            "generator index out of range for rank {}",
            self.rank()
        );
        Word::new(indices.iter().map(|&i| GeneratorId::new(i)).collect())
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity()
    }

    pub fn generator_element(&self, s: GeneratorId) -> GroupElement {
        GroupElement { nf: vec![s] }
    }

    /// The image w(alpha_s) of a simple root under the element, the quantity
    /// whose sign decides whether s is a right descent of w.
    pub fn root_image(&self, w: &GroupElement, s: GeneratorId) -> RootVector {
        let alpha = geometry::simple_root(self.rank(), s);
        // act applies first letter first, so the reversed word yields the map of w.
        geometry::act_iter(w.nf.iter().rev().copied(), &alpha, self.form())
    }

    /// True iff l(ws) < l(w), via the sign of w(alpha_s).
    pub fn is_right_descent(
        &self,
        w: &GroupElement,
        s: GeneratorId,
    ) -> Result<bool, DegenerateSign> {
        Ok(geometry::sign_of(&self.root_image(w, s))? == SignClass::Negative)
    }

    /// True iff l(sw) < l(w), via the sign of w^-1(alpha_s).
    pub fn is_left_descent(
        &self,
        w: &GroupElement,
        s: GeneratorId,
    ) -> Result<bool, DegenerateSign> {
        let alpha = geometry::simple_root(self.rank(), s);
        let image = geometry::act_iter(w.nf.iter().copied(), &alpha, self.form());
        Ok(geometry::sign_of(&image)? == SignClass::Negative)
    }

    /// The right descent set D_R(w) = {s : l(ws) < l(w)}.
    pub fn right_descents(&self, w: &GroupElement) -> Result<GeneratorSet, DegenerateSign> {
        let mut set = GeneratorSet::EMPTY;
        for s in self.generators() {
            if self.is_right_descent(w, s)? {
                set.insert(s);
            }
        }
        Ok(set)
    }

    /// The left descent set D_L(w) = {s : l(sw) < l(w)}.
    pub fn left_descents(&self, w: &GroupElement) -> Result<GeneratorSet, DegenerateSign> {
        let mut set = GeneratorSet::EMPTY;
        for s in self.generators() {
            if self.is_left_descent(w, s)? {
                set.insert(s);
            }
        }
        Ok(set)
    }

    /// Greedy ShortLex normal form: repeatedly factor out the smallest left
    /// descent. Idempotent; the result is the canonical reduced word.
    ///
    /// Errors with [`EngineError::CapExceeded`] when the element is longer
    /// than the system's length cap.
    pub fn normalize(&self, word: &Word) -> Result<GroupElement, EngineError> {
        self.normalize_letters(word.letters().to_vec())
    }

    fn normalize_letters(&self, mut cur: Vec<GeneratorId>) -> Result<GroupElement, EngineError> {
        debug_assert!(cur.iter().all(|s| s.index() < self.rank()));
        let cap = self.length_cap();
        let mut out = Vec::new();
        let rank = self.rank();
        let form = self.form();
        loop {
            // Smallest left descent of the current element: smallest s with
            // act(cur, alpha_s) negative (act(cur) is the map of the inverse).
            let mut found = None;
            for i in 0..rank {
                let s = GeneratorId::new(i);
                let alpha = geometry::simple_root(rank, s);
                let image = geometry::act_iter(cur.iter().copied(), &alpha, form);
                if geometry::sign_of(&image).map_err(EngineError::Degenerate)?
                    == SignClass::Negative
                {
                    found = Some(s);
                    break;
                }
            }
            let Some(s) = found else {
                return Ok(GroupElement { nf: out });
            };
            if out.len() >= cap {
                return Err(EngineError::CapExceeded { cap });
            }
            out.push(s);
            cur.insert(0, s);
        }
    }

    /// Normalized product a * b.
    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, EngineError> {
        let mut letters = Vec::with_capacity(a.length() + b.length());
        letters.extend_from_slice(&a.nf);
        letters.extend_from_slice(&b.nf);
        self.normalize_letters(letters)
    }

    /// The inverse, via the reversed normal form.
    pub fn inverse(&self, w: &GroupElement) -> Result<GroupElement, EngineError> {
        self.normalize_letters(w.nf.iter().rev().copied().collect())
    }

    /// The conjugate x t x^-1.
    pub fn conjugate(
        &self,
        x: &GroupElement,
        t: &GroupElement,
    ) -> Result<GroupElement, EngineError> {
        let mut letters = Vec::with_capacity(2 * x.length() + t.length());
        letters.extend_from_slice(&x.nf);
        letters.extend_from_slice(&t.nf);
        letters.extend(x.nf.iter().rev().copied());
        self.normalize_letters(letters)
    }

    /// Parses and normalizes element text in one step.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement, ElementParseError> {
        let word = self.parse_word(text)?;
        Ok(self.normalize(&word)?)
    }
}

/// Failure parsing or normalizing element text.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum ElementParseError {
    #[error(transparent)]
    Parse(#[from] WordParseError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::NamedType;

    fn sys(name: &str) -> CoxeterSystem {
        CoxeterSystem::from_named(NamedType::parse(name).unwrap())
    }

    #[test]
    fn involutive_generator_cancels() {
        let a2 = sys("A2");
        let w = a2.normalize(&a2.word(&[1, 1])).unwrap();
        assert!(w.is_identity());
        assert_eq!(w.to_string(), "e");
    }

    #[test]
    fn braid_relation_prefers_shortlex() {
        let a2 = sys("A2");
        let w = a2.normalize(&a2.word(&[1, 0, 1])).unwrap();
        assert_eq!(w.to_string(), "s0 s1 s0");
        assert_eq!(w.length(), 3);
    }

    #[test]
    fn normalize_is_idempotent() {
        let b4 = sys("B4");
        let v = b4.normalize(&b4.word(&[2, 3, 2, 1, 0, 2, 3])).unwrap();
        let again = b4.normalize(&v.word()).unwrap();
        assert_eq!(v, again);
    }

    #[test]
    fn b4_example_element_has_length_seven() {
        let b4 = sys("B4");
        let v = b4.normalize(&b4.word(&[2, 3, 2, 1, 0, 2, 3])).unwrap();
        assert_eq!(v.length(), 7);
        // Derived by hand in the signed-permutation model.
        assert_eq!(v.to_string(), "s1 s2 s1 s3 s2 s1 s0");
    }

    #[test]
    fn identity_has_no_descents() {
        let b4 = sys("B4");
        let e = b4.identity();
        for s in b4.generators() {
            assert!(!b4.is_right_descent(&e, s).unwrap());
            assert!(!b4.is_left_descent(&e, s).unwrap());
        }
        assert!(b4.right_descents(&e).unwrap().is_empty());
    }

    #[test]
    fn single_generator_is_its_own_descent() {
        let a2 = sys("A2");
        let s0 = a2.generator_element(GeneratorId::new(0));
        assert!(a2.is_right_descent(&s0, GeneratorId::new(0)).unwrap());
        assert!(!a2.is_right_descent(&s0, GeneratorId::new(1)).unwrap());
    }

    #[test]
    fn b4_descent_sets_match_worked_example() {
        let b4 = sys("B4");
        let v = b4.normalize(&b4.word(&[2, 3, 2, 1, 0, 2, 3])).unwrap();
        assert_eq!(b4.right_descents(&v).unwrap(), b4.parse_mask("s0,s2,s3").unwrap());
        assert!(!b4.is_right_descent(&v, GeneratorId::new(1)).unwrap());
        assert_eq!(b4.left_descents(&v).unwrap(), b4.parse_mask("s1,s2,s3").unwrap());

        let u = b4.normalize(&b4.word(&[2, 3, 2])).unwrap();
        assert_eq!(b4.left_descents(&u).unwrap(), b4.parse_mask("s2,s3").unwrap());
        assert_eq!(b4.right_descents(&u).unwrap(), b4.parse_mask("s2,s3").unwrap());
    }

    #[test]
    fn a2_left_descents_worked_case() {
        let a2 = sys("A2");
        let w = a2.normalize(&a2.word(&[0, 1])).unwrap();
        assert_eq!(a2.left_descents(&w).unwrap(), a2.parse_mask("s0").unwrap());
        assert_eq!(a2.right_descents(&w).unwrap(), a2.parse_mask("s1").unwrap());
    }

    #[test]
    fn b4_quotient_product_matches_paper_pair() {
        let b4 = sys("B4");
        let u = b4.normalize(&b4.word(&[2, 3, 2])).unwrap();
        let v = b4.normalize(&b4.word(&[2, 3, 2, 1, 0, 2, 3])).unwrap();
        let uinv = b4.inverse(&u).unwrap();
        let uv = b4.multiply(&uinv, &v).unwrap();
        assert_eq!(uv.to_string(), "s1 s0 s2 s3");
        assert_eq!(b4.right_descents(&uv).unwrap(), b4.parse_mask("s0,s3").unwrap());
        let uv_inv = b4.inverse(&uv).unwrap();
        assert_eq!(b4.left_descents(&uv_inv).unwrap(), b4.parse_mask("s0,s3").unwrap());
    }

    #[test]
    fn inverse_fixes_involutions_and_preserves_length() {
        let b4 = sys("B4");
        let u = b4.normalize(&b4.word(&[2, 3, 2])).unwrap();
        assert_eq!(b4.inverse(&u).unwrap(), u);
        assert_eq!(b4.inverse(&b4.identity()).unwrap(), b4.identity());
        let v = b4.normalize(&b4.word(&[2, 3, 2, 1, 0, 2, 3])).unwrap();
        assert_eq!(b4.inverse(&v).unwrap().length(), v.length());
    }

    #[test]
    fn multiply_by_inverse_is_identity() {
        let h3 = sys("H3");
        let w = h3.normalize(&h3.word(&[0, 1, 2, 0, 1, 0])).unwrap();
        let winv = h3.inverse(&w).unwrap();
        assert!(h3.multiply(&w, &winv).unwrap().is_identity());
        assert!(h3.multiply(&winv, &w).unwrap().is_identity());
    }

    #[test]
    fn cap_exceeded_on_infinite_group() {
        let sys = CoxeterSystem::from_named(NamedType::parse("I2(inf)").unwrap())
            .with_length_cap(5);
        let long: Vec<usize> = (0..8).map(|i| i % 2).collect();
        let err = sys.normalize(&sys.word(&long)).unwrap_err();
        assert_eq!(err, EngineError::CapExceeded { cap: 5 });
        // Words that collapse under the cap still normalize.
        let ok = sys.normalize(&sys.word(&[0, 1, 1, 0, 0])).unwrap();
        assert_eq!(ok.to_string(), "s0");
    }

    #[test]
    fn word_parsing_round_trips_and_reports_positions() {
        let b4 = sys("B4");
        let w = b4.parse_word("s2 s3.s2").unwrap();
        assert_eq!(w.letters().len(), 3);
        assert_eq!(w.to_string(), "s2 s3 s2");
        assert_eq!(b4.parse_word("e").unwrap(), Word::default());
        let err = b4.parse_word("s2 sx s1").unwrap_err();
        assert_eq!(
            err,
            WordParseError::UnknownToken { token: "sx".into(), position: 1, rank: 4 }
        );
        let err = b4.parse_word("s9").unwrap_err();
        assert!(matches!(err, WordParseError::UnknownToken { .. }));
    }

    #[test]
    fn shortlex_order_sorts_by_length_then_lex() {
        let a2 = sys("A2");
        let e = a2.identity();
        let s0 = a2.generator_element(GeneratorId::new(0));
        let s1 = a2.generator_element(GeneratorId::new(1));
        let s0s1 = a2.normalize(&a2.word(&[0, 1])).unwrap();
        assert!(e < s0 && s0 < s1 && s1 < s0s1);
    }
}
