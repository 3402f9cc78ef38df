//! Independent combinatorial models used as ground truth: permutations with
//! adjacent transpositions for the A family, signed permutations for the B
//! family.
//!
//! Conventions, pinned once: in type A of rank r the model is the symmetric
//! group on {1..r+1} and s_i swaps positions i+1 and i+2 (1-indexed). In
//! type B of rank r the model is the group of signed permutations of
//! {±1..±r}; s0 negates the first entry of the one-line notation and s_i
//! (i >= 1) swaps positions i and i+1, matching the chain s1-s2-... after
//! the s0 sign generator. Products compose as functions: (a*b)(x) = a(b(x)),
//! and right multiplication by a generator permutes positions.

use thiserror::Error;

use crate::element::GroupElement;
use crate::system::{GeneratorId, GeneratorSet, NamedType};

/// Raised when a group has no oracle model (only A and B are modeled).
#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("no oracle model for group type {0}")]
pub struct UnsupportedType(pub String);

/// A permutation of {1..n} in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n as u32).collect() }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// The image w(i) for 1-indexed i.
    pub fn apply(&self, i: usize) -> u32 {
        self.images[i - 1]
    }

    pub fn one_line(&self) -> &[u32] {
        &self.images
    }

    /// Function composition (self o other)(i) = self(other(i)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&j| self.images[j as usize - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize - 1] = i as u32 + 1;
        }
        Permutation { images }
    }

    /// Inversion count #{(i,j) : i < j, w(i) > w(j)}.
    pub fn length(&self) -> usize {
        let n = self.images.len();
        let mut count = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Right descents: s_i with w(i+1) > w(i+2).
    pub fn right_descents(&self) -> GeneratorSet {
        let mut set = GeneratorSet::EMPTY;
        for i in 0..self.images.len() - 1 {
            if self.images[i] > self.images[i + 1] {
                set.insert(GeneratorId::new(i));
            }
        }
        set
    }

    pub fn left_descents(&self) -> GeneratorSet {
        self.inverse().right_descents()
    }

    /// Bruhat comparison by the dominance criterion on the rank matrix:
    /// u <= v iff #{a <= i : u(a) >= j} <= #{a <= i : v(a) >= j} for all i, j.
    pub fn bruhat_leq(&self, other: &Permutation) -> bool {
        let n = self.images.len();
        debug_assert_eq!(n, other.images.len());
        for i in 1..=n {
            for j in 1..=n {
                let cu = self.images[..i].iter().filter(|&&a| a as usize >= j).count();
                let cv = other.images[..i].iter().filter(|&&a| a as usize >= j).count();
                if cu > cv {
                    return false;
                }
            }
        }
        true
    }
}

/// A signed permutation of {±1..±n}, stored as the images of 1..n. Extends
/// to negatives by w(-i) = -w(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SignedPermutation {
    images: Vec<i32>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        SignedPermutation { images: (1..=n as i32).collect() }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// The image w(i) for i in ±1..±n.
    pub fn apply(&self, i: i32) -> i32 {
        if i > 0 {
            self.images[i as usize - 1]
        } else {
            -self.images[(-i) as usize - 1]
        }
    }

    pub fn one_line(&self) -> &[i32] {
        &self.images
    }

    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        SignedPermutation { images: other.images.iter().map(|&j| self.apply(j)).collect() }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            if j > 0 {
                images[j as usize - 1] = i as i32 + 1;
            } else {
                images[(-j) as usize - 1] = -(i as i32 + 1);
            }
        }
        SignedPermutation { images }
    }

    /// The standard signed length: inv(w) + neg(w) + nsp(w), with
    /// inv the plain inversion count, neg the number of negative entries and
    /// nsp the pairs i < j with w(i) + w(j) < 0.
    pub fn length(&self) -> usize {
        let n = self.images.len();
        let mut count = 0;
        for i in 0..n {
            if self.images[i] < 0 {
                count += 1;
            }
            for j in (i + 1)..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
                if self.images[i] + self.images[j] < 0 {
                    count += 1;
                }
            }
        }
        count
    }

    /// Right descents: s0 iff w(1) < 0, s_i iff w(i) > w(i+1).
    pub fn right_descents(&self) -> GeneratorSet {
        let mut set = GeneratorSet::EMPTY;
        if self.images[0] < 0 {
            set.insert(GeneratorId::new(0));
        }
        for i in 1..self.images.len() {
            if self.images[i - 1] > self.images[i] {
                set.insert(GeneratorId::new(i));
            }
        }
        set
    }

    pub fn left_descents(&self) -> GeneratorSet {
        self.inverse().right_descents()
    }

    /// True when the element is a reflection: an involution moving exactly
    /// one symmetric pair {i,-i} or two symmetric pairs as a double swap.
    pub fn is_reflection(&self) -> bool {
        if self.compose(self) != SignedPermutation::identity(self.n()) {
            return false;
        }
        let moved = self
            .images
            .iter()
            .enumerate()
            .filter(|(i, &v)| v != *i as i32 + 1)
            .count();
        moved == 1 || moved == 2
    }

    /// Bruhat comparison through the order-preserving relabeling into the
    /// symmetric group on {1..2n}.
    pub fn bruhat_leq(&self, other: &SignedPermutation) -> bool {
        self.embed().bruhat_leq(&other.embed())
    }

    /// Relabels ±1..±n as 1..2n (order-preserving) and returns the induced
    /// ordinary permutation.
    pub fn embed(&self) -> Permutation {
        let n = self.images.len() as i32;
        let to_signed = |k: i32| if k <= n { k - n - 1 } else { k - n };
        let to_index = |v: i32| if v > 0 { v + n } else { v + n + 1 };
        let images = (1..=2 * n).map(|k| to_index(self.apply(to_signed(k))) as u32).collect();
        Permutation { images }
    }
}

/// Oracle image of an engine element, for catalog A and B systems.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum OracleElement {
    Perm(Permutation),
    Signed(SignedPermutation),
}

impl OracleElement {
    pub fn length(&self) -> usize {
        match self {
            OracleElement::Perm(p) => p.length(),
            OracleElement::Signed(p) => p.length(),
        }
    }

    pub fn right_descents(&self) -> GeneratorSet {
        match self {
            OracleElement::Perm(p) => p.right_descents(),
            OracleElement::Signed(p) => p.right_descents(),
        }
    }

    pub fn left_descents(&self) -> GeneratorSet {
        match self {
            OracleElement::Perm(p) => p.left_descents(),
            OracleElement::Signed(p) => p.left_descents(),
        }
    }

    pub fn compose(&self, other: &OracleElement) -> OracleElement {
        match (self, other) {
            (OracleElement::Perm(a), OracleElement::Perm(b)) => OracleElement::Perm(a.compose(b)),
            (OracleElement::Signed(a), OracleElement::Signed(b)) => {
                OracleElement::Signed(a.compose(b))
            }
            _ => panic!("mixed oracle models"),
        }
    }

    pub fn inverse(&self) -> OracleElement {
        match self {
            OracleElement::Perm(p) => OracleElement::Perm(p.inverse()),
            OracleElement::Signed(p) => OracleElement::Signed(p.inverse()),
        }
    }

    pub fn bruhat_leq(&self, other: &OracleElement) -> bool {
        match (self, other) {
            (OracleElement::Perm(a), OracleElement::Perm(b)) => a.bruhat_leq(b),
            (OracleElement::Signed(a), OracleElement::Signed(b)) => a.bruhat_leq(b),
            _ => panic!("mixed oracle models"),
        }
    }
}

/// The oracle model attached to a catalog type, when one exists.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OracleModel {
    /// Symmetric group on {1..rank+1}.
    TypeA { rank: usize },
    /// Signed permutations of {±1..±rank}.
    TypeB { rank: usize },
}

impl OracleModel {
    pub fn for_type(ty: NamedType) -> Result<Self, UnsupportedType> {
        match ty {
            NamedType::A(n) => Ok(OracleModel::TypeA { rank: n }),
            NamedType::B(n) => Ok(OracleModel::TypeB { rank: n }),
            other => Err(UnsupportedType(other.to_string())),
        }
    }

    pub fn identity(self) -> OracleElement {
        match self {
            OracleModel::TypeA { rank } => OracleElement::Perm(Permutation::identity(rank + 1)),
            OracleModel::TypeB { rank } => {
                OracleElement::Signed(SignedPermutation::identity(rank))
            }
        }
    }

    /// Evaluates the normal form of an engine element through the generator
    /// assignment; a group homomorphism.
    pub fn map(self, w: &GroupElement) -> OracleElement {
        match self {
            OracleModel::TypeA { rank } => {
                let mut images: Vec<u32> = (1..=rank as u32 + 1).collect();
                for s in w.normal_form() {
                    images.swap(s.index(), s.index() + 1);
                }
                OracleElement::Perm(Permutation { images })
            }
            OracleModel::TypeB { rank } => {
                let mut images: Vec<i32> = (1..=rank as i32).collect();
                for s in w.normal_form() {
                    let i = s.index();
                    if i == 0 {
                        images[0] = -images[0];
                    } else {
                        images.swap(i - 1, i);
                    }
                }
                OracleElement::Signed(SignedPermutation { images })
            }
        }
    }
}
