//! Inversion sets, parabolic projections, and the weak and Bruhat orders.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::element::{EngineError, GroupElement};
use crate::enumeration::EnumeratedGroup;
use crate::system::{CoxeterSystem, GeneratorId, GeneratorSet};

/// A finite set of reflections, ordered by the ShortLex order on their
/// normal forms. Set operations and iteration are deterministic.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ReflectionSet {
    members: BTreeSet<GroupElement>,
}

impl ReflectionSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, t: GroupElement) -> bool {
        self.members.insert(t)
    }

    pub fn contains(&self, t: &GroupElement) -> bool {
        self.members.contains(t)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroupElement> {
        self.members.iter()
    }

    pub fn is_subset(&self, other: &ReflectionSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn union(&self, other: &ReflectionSet) -> ReflectionSet {
        ReflectionSet { members: self.members.union(&other.members).cloned().collect() }
    }

    pub fn intersection(&self, other: &ReflectionSet) -> ReflectionSet {
        ReflectionSet {
            members: self.members.intersection(&other.members).cloned().collect(),
        }
    }

    pub fn difference(&self, other: &ReflectionSet) -> ReflectionSet {
        ReflectionSet { members: self.members.difference(&other.members).cloned().collect() }
    }

    pub fn symmetric_difference(&self, other: &ReflectionSet) -> ReflectionSet {
        ReflectionSet {
            members: self.members.symmetric_difference(&other.members).cloned().collect(),
        }
    }

    /// The smallest member of `self` missing from `other`, if any. Used for
    /// deterministic witness selection.
    pub fn first_missing_from(&self, other: &ReflectionSet) -> Option<&GroupElement> {
        self.members.iter().find(|t| !other.contains(t))
    }
}

impl FromIterator<GroupElement> for ReflectionSet {
    fn from_iter<T: IntoIterator<Item = GroupElement>>(iter: T) -> Self {
        ReflectionSet { members: iter.into_iter().collect() }
    }
}

impl<'a> IntoIterator for &'a ReflectionSet {
    type Item = &'a GroupElement;
    type IntoIter = std::collections::btree_set::Iter<'a, GroupElement>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

impl fmt::Display for ReflectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, t) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "}}")
    }
}

/// The unique factorization w = w^J * w_J over a parabolic mask J.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParabolicFactorization {
    /// The minimal coset representative w^J (no right descents in J).
    pub quotient: GroupElement,
    /// The parabolic part w_J (all letters in J).
    pub parabolic: GroupElement,
}

/// Errors from inversion-set construction.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum CalculusError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("prefix conjugates of {word} are not pairwise distinct: a normal-form bug")]
    DuplicateInversion { word: String },
}

/// Errors from join computation over an enumerated universe.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum JoinError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("the inputs have no common upper bound in the enumerated universe")]
    NoUpperBound,
    #[error("no least upper bound within the enumerated universe (join lies outside it)")]
    NotAttained,
}

impl CoxeterSystem {
    /// The left inversion set T_L(w) = {t in T : l(tw) < l(w)}, built from
    /// the prefix conjugates s_1...s_i...s_1 of the normal form.
    pub fn left_inversions(&self, w: &GroupElement) -> Result<ReflectionSet, CalculusError> {
        let nf = w.normal_form();
        let mut set = ReflectionSet::new();
        let mut palindrome: Vec<GeneratorId> = Vec::with_capacity(2 * nf.len());
        for i in 0..nf.len() {
            // Palindrome s_1 ... s_i ... s_1 built incrementally.
            palindrome.clear();
            palindrome.extend_from_slice(&nf[..=i]);
            palindrome.extend(nf[..i].iter().rev());
            let t = self.normalize(&crate::element::Word::new(palindrome.clone()))?;
            set.insert(t);
        }
        if set.len() != nf.len() {
            return Err(CalculusError::DuplicateInversion { word: w.to_string() });
        }
        Ok(set)
    }

    /// The right inversion set T_R(w) = T_L(w^-1).
    pub fn right_inversions(&self, w: &GroupElement) -> Result<ReflectionSet, CalculusError> {
        let winv = self.inverse(w)?;
        self.left_inversions(&winv)
    }

    /// Conjugates every member of a reflection set by x.
    pub fn conjugate_set(
        &self,
        x: &GroupElement,
        set: &ReflectionSet,
    ) -> Result<ReflectionSet, EngineError> {
        set.iter().map(|t| self.conjugate(x, t)).collect()
    }

    /// The parabolic factorization w = w^J * w_J: right descents in J are
    /// stripped smallest-first until none remain. The factorization is
    /// unique, so the stripping order does not affect the result.
    pub fn project(
        &self,
        w: &GroupElement,
        mask: GeneratorSet,
    ) -> Result<ParabolicFactorization, EngineError> {
        self.project_with(w, mask, false)
    }

    /// Same factorization, stripping the largest eligible descent at each
    /// step. Exposed so tests can confirm order independence.
    pub fn project_largest_first(
        &self,
        w: &GroupElement,
        mask: GeneratorSet,
    ) -> Result<ParabolicFactorization, EngineError> {
        self.project_with(w, mask, true)
    }

    fn project_with(
        &self,
        w: &GroupElement,
        mask: GeneratorSet,
        largest: bool,
    ) -> Result<ParabolicFactorization, EngineError> {
        let mut cur: Vec<GeneratorId> = w.normal_form().to_vec();
        let mut stripped: Vec<GeneratorId> = Vec::new();
        for _ in 0..=w.length() {
            let mut chosen = None;
            let candidates: Vec<GeneratorId> = if largest {
                mask.iter().collect::<Vec<_>>().into_iter().rev().collect()
            } else {
                mask.iter().collect()
            };
            for s in candidates {
                let alpha = crate::geometry::simple_root(self.rank(), s);
                let image =
                    crate::geometry::act_iter(cur.iter().rev().copied(), &alpha, self.form());
                if crate::geometry::sign_of(&image)? == crate::geometry::SignClass::Negative {
                    chosen = Some(s);
                    break;
                }
            }
            let Some(s) = chosen else {
                let quotient = self.normalize(&crate::element::Word::new(cur))?;
                let parabolic = self.normalize(&crate::element::Word::new(
                    stripped.iter().rev().copied().collect(),
                ))?;
                debug_assert_eq!(quotient.length() + parabolic.length(), w.length());
                return Ok(ParabolicFactorization { quotient, parabolic });
            };
            cur.push(s);
            stripped.push(s);
        }
        unreachable!("projection strips at most l(w) descents");
    }

    /// The maximal-quotient projection P^(s), i.e. projection onto S \ {s}.
    pub fn project_maximal(
        &self,
        w: &GroupElement,
        s: GeneratorId,
    ) -> Result<GroupElement, EngineError> {
        let mask = GeneratorSet::singleton(s).complement(self.rank());
        Ok(self.project(w, mask)?.quotient)
    }

    /// Right weak order u <=_R v by the prefix criterion
    /// l(u) + l(u^-1 v) = l(v). This is the production predicate.
    pub fn weak_leq(&self, u: &GroupElement, v: &GroupElement) -> Result<bool, EngineError> {
        if u.length() > v.length() {
            return Ok(false);
        }
        let mut letters: Vec<GeneratorId> = u.normal_form().iter().rev().copied().collect();
        letters.extend_from_slice(v.normal_form());
        let uv = self.normalize(&crate::element::Word::new(letters))?;
        Ok(u.length() + uv.length() == v.length())
    }

    /// Right weak order by inversion-set containment T_L(u) <= T_L(v).
    /// Independent of [`Self::weak_leq`]; the two are cross-checked in tests.
    pub fn weak_leq_by_inversions(
        &self,
        u: &GroupElement,
        v: &GroupElement,
    ) -> Result<bool, CalculusError> {
        if u.length() > v.length() {
            return Ok(false);
        }
        let tu = self.left_inversions(u)?;
        let tv = self.left_inversions(v)?;
        Ok(tu.is_subset(&tv))
    }

    /// Bruhat order u <= v by the standard descent recursion.
    pub fn bruhat_leq(&self, u: &GroupElement, v: &GroupElement) -> Result<bool, EngineError> {
        let mut u = u.clone();
        let mut v = v.clone();
        loop {
            if u.length() > v.length() {
                return Ok(false);
            }
            if v.is_identity() {
                return Ok(u.is_identity());
            }
            let s = self
                .right_descents(&v)?
                .iter()
                .next()
                .expect("non-identity element has a right descent");
            let s_elt = self.generator_element(s);
            if self.is_right_descent(&u, s)? {
                u = self.multiply(&u, &s_elt)?;
            }
            v = self.multiply(&v, &s_elt)?;
        }
    }

    /// Bruhat comparison through maximal quotients: u <= v iff
    /// P^(s)(u) <= P^(s)(v) for every right descent s of u. Must agree with
    /// [`Self::bruhat_leq`]; tests sweep the equivalence.
    pub fn deodhar_leq(&self, u: &GroupElement, v: &GroupElement) -> Result<bool, EngineError> {
        for s in self.right_descents(u)?.iter() {
            let pu = self.project_maximal(u, s)?;
            let pv = self.project_maximal(v, s)?;
            if !self.bruhat_leq(&pu, &pv)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The join (least upper bound) of `xs` in right weak order, computed by
    /// brute force over an enumerated universe. The empty join is the
    /// identity.
    pub fn weak_join(
        &self,
        xs: &[GroupElement],
        universe: &EnumeratedGroup,
    ) -> Result<GroupElement, JoinError> {
        let mut upper: Vec<&GroupElement> = Vec::new();
        'candidates: for z in universe.elements() {
            for x in xs {
                if !self.weak_leq_in(x, z, universe)? {
                    continue 'candidates;
                }
            }
            upper.push(z);
        }
        let Some(&best) = upper.first() else {
            return Err(JoinError::NoUpperBound);
        };
        // Elements are in ShortLex order, so the first upper bound has
        // minimal length; it is the join iff it lies below every upper bound.
        for z in &upper {
            if !self.weak_leq_in(best, z, universe)? {
                return Err(JoinError::NotAttained);
            }
        }
        Ok(best.clone())
    }

    /// weak_leq via exact table walks when the universe is a complete finite
    /// group, falling back to the engine for truncated balls.
    fn weak_leq_in(
        &self,
        u: &GroupElement,
        v: &GroupElement,
        universe: &EnumeratedGroup,
    ) -> Result<bool, EngineError> {
        if universe.is_complete() {
            if let (Some(iu), Some(iv)) = (universe.index_of(u), universe.index_of(v)) {
                return Ok(universe.weak_leq_idx(iu, iv));
            }
        }
        self.weak_leq(u, v)
    }
}
