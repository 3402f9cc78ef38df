//! Coxeter systems: bond matrices, the named-type catalog, generator subsets
//! and the bilinear form of the standard geometric representation.

use std::fmt;

use thiserror::Error;

/// Largest supported rank. Subsets of generators are stored as `u32` bitmasks.
pub const MAX_RANK: usize = 32;

/// A generator of a Coxeter system, identified by its index in `0..rank`.
///
/// Generators display as `s0`, `s1`, ... and order by index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorId(u8);

impl GeneratorId {
    pub fn new(index: usize) -> Self {
        assert!(index < MAX_RANK, "generator index {index} out of range");
        GeneratorId(index as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

impl fmt::Debug for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

/// A bond value m(s,t) of a Coxeter matrix: a positive integer or infinity.
///
/// Infinity is a distinct variant, never a sentinel integer, and serializes
/// as the string `"inf"` in the group-spec format.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Bond {
    Finite(u32),
    Infinite,
}

impl Bond {
    /// The form entry -cos(pi/m); infinite bonds map to -1 (the m -> inf limit).
    pub fn form_entry(self) -> f64 {
        match self {
            Bond::Finite(m) => -(std::f64::consts::PI / m as f64).cos(),
            Bond::Infinite => -1.0,
        }
    }
}

impl fmt::Display for Bond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bond::Finite(m) => write!(f, "{m}"),
            Bond::Infinite => write!(f, "inf"),
        }
    }
}

/// Validation failures for candidate Coxeter matrices.
///
/// Each variant reports the first offending entry in row-major scan order.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("rank must be positive")]
    ZeroRank,
    #[error("rank {0} exceeds the supported maximum {MAX_RANK}")]
    RankTooLarge(usize),
    #[error("bond table has {got} entries, expected {expected}")]
    WrongSize { got: usize, expected: usize },
    #[error("matrix is not symmetric at (s{s}, s{t}): {left} vs {right}")]
    NotSymmetric { s: usize, t: usize, left: Bond, right: Bond },
    #[error("diagonal entry at (s{s}, s{s}) must be 1, got {got}")]
    BadDiagonal { s: usize, got: Bond },
    #[error("m(s{s}, s{t}) = 1 is only allowed on the diagonal")]
    UnitOffDiagonal { s: usize, t: usize },
    #[error("bond at (s{s}, s{t}) must be at least 1")]
    ZeroBond { s: usize, t: usize },
    #[error("bond index s{0} out of range for rank {1}")]
    IndexOutOfRange(usize, usize),
}

/// The symmetric bond matrix defining a Coxeter system (W, S).
///
/// Invariants (enforced on construction): m(s,t) = m(t,s), m(s,t) = 1 exactly
/// when s = t, and off-diagonal entries are at least 2 or infinite.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoxeterMatrix {
    rank: usize,
    bonds: Vec<Bond>,
}

impl CoxeterMatrix {
    /// Validates a full row-major bond table and returns the matrix.
    pub fn from_bonds(rank: usize, bonds: Vec<Bond>) -> Result<Self, MatrixError> {
        if rank == 0 {
            return Err(MatrixError::ZeroRank);
        }
        if rank > MAX_RANK {
            return Err(MatrixError::RankTooLarge(rank));
        }
        if bonds.len() != rank * rank {
            return Err(MatrixError::WrongSize { got: bonds.len(), expected: rank * rank });
        }
        for s in 0..rank {
            for t in s..rank {
                let m = bonds[s * rank + t];
                let m_t = bonds[t * rank + s];
                if m != m_t {
                    return Err(MatrixError::NotSymmetric { s, t, left: m, right: m_t });
                }
                if let Bond::Finite(0) = m {
                    return Err(MatrixError::ZeroBond { s, t });
                }
                if s == t {
                    if m != Bond::Finite(1) {
                        return Err(MatrixError::BadDiagonal { s, got: m });
                    }
                } else if m == Bond::Finite(1) {
                    return Err(MatrixError::UnitOffDiagonal { s, t });
                }
            }
        }
        Ok(CoxeterMatrix { rank, bonds })
    }

    /// Builds a matrix from off-diagonal bond triples; unlisted pairs default
    /// to 2 and the diagonal is fixed at 1.
    pub fn from_bond_list(
        rank: usize,
        triples: &[(usize, usize, Bond)],
    ) -> Result<Self, MatrixError> {
        if rank == 0 {
            return Err(MatrixError::ZeroRank);
        }
        if rank > MAX_RANK {
            return Err(MatrixError::RankTooLarge(rank));
        }
        let mut bonds = vec![Bond::Finite(2); rank * rank];
        for s in 0..rank {
            bonds[s * rank + s] = Bond::Finite(1);
        }
        for &(i, j, m) in triples {
            if i >= rank {
                return Err(MatrixError::IndexOutOfRange(i, rank));
            }
            if j >= rank {
                return Err(MatrixError::IndexOutOfRange(j, rank));
            }
            bonds[i * rank + j] = m;
            bonds[j * rank + i] = m;
        }
        Self::from_bonds(rank, bonds)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bond(&self, s: GeneratorId, t: GeneratorId) -> Bond {
        self.bonds[s.index() * self.rank + t.index()]
    }

    pub fn generators(&self) -> impl Iterator<Item = GeneratorId> {
        (0..self.rank).map(GeneratorId::new)
    }

    pub fn has_infinite_bond(&self) -> bool {
        self.bonds.contains(&Bond::Infinite)
    }

    /// Off-diagonal bonds different from 2, one triple per unordered pair,
    /// sorted by (i, j). This is the canonical bond list of the group-spec
    /// file format.
    pub fn canonical_bond_list(&self) -> Vec<(usize, usize, Bond)> {
        let mut out = Vec::new();
        for i in 0..self.rank {
            for j in (i + 1)..self.rank {
                let m = self.bonds[i * self.rank + j];
                if m != Bond::Finite(2) {
                    out.push((i, j, m));
                }
            }
        }
        out
    }

    /// The bilinear form of the standard geometric representation,
    /// entry(s,t) = -cos(pi/m(s,t)).
    pub fn bilinear_form(&self) -> BilinearForm {
        let entries = self.bonds.iter().map(|b| b.form_entry()).collect();
        BilinearForm { rank: self.rank, entries }
    }
}

/// Validates a candidate bond table; alias for [`CoxeterMatrix::from_bonds`].
pub fn validate(rank: usize, bonds: Vec<Bond>) -> Result<CoxeterMatrix, MatrixError> {
    CoxeterMatrix::from_bonds(rank, bonds)
}

/// Symmetric real matrix with unit diagonal, entry(s,t) = -cos(pi/m(s,t)).
#[derive(Clone, Debug)]
pub struct BilinearForm {
    rank: usize,
    entries: Vec<f64>,
}

impl BilinearForm {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, s: GeneratorId, t: GeneratorId) -> f64 {
        self.entries[s.index() * self.rank + t.index()]
    }

    /// Row of the form at generator s, i.e. the values (alpha_s | alpha_t).
    pub fn row(&self, s: GeneratorId) -> &[f64] {
        let i = s.index() * self.rank;
        &self.entries[i..i + self.rank]
    }
}

/// Errors from the named-type catalog.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown group type {0:?}")]
    UnknownType(String),
    #[error("parameter out of range for {family}: requires {requirement}")]
    ParamOutOfRange { family: char, requirement: &'static str },
}

/// A catalog entry naming a standard finite (or dihedral) Coxeter type.
///
/// The B family uses the labeling with the 4-bond between s0 and s1 and the
/// simply-laced chain s1-s2-...; D forks at s2 with prongs s0 and s1.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum NamedType {
    A(usize),
    B(usize),
    D(usize),
    I2(Bond),
    H3,
    H4,
    F4,
    E6,
}

impl NamedType {
    pub fn parse(name: &str) -> Result<Self, CatalogError> {
        let unknown = || CatalogError::UnknownType(name.to_string());
        let t = name.trim();
        let upper = t.to_ascii_uppercase();
        if let Some(rest) = upper.strip_prefix("I2(") {
            let inner = rest.strip_suffix(')').ok_or_else(unknown)?;
            let bond = if inner.eq_ignore_ascii_case("inf") {
                Bond::Infinite
            } else {
                Bond::Finite(inner.parse().map_err(|_| unknown())?)
            };
            return NamedType::I2(bond).validated();
        }
        match upper.as_str() {
            "H3" => return Ok(NamedType::H3),
            "H4" => return Ok(NamedType::H4),
            "F4" => return Ok(NamedType::F4),
            "E6" => return Ok(NamedType::E6),
            _ => {}
        }
        let mut chars = upper.chars();
        let family = chars.next().ok_or_else(unknown)?;
        let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
        match family {
            'A' => NamedType::A(n).validated(),
            'B' => NamedType::B(n).validated(),
            'D' => NamedType::D(n).validated(),
            _ => Err(unknown()),
        }
    }

    fn validated(self) -> Result<Self, CatalogError> {
        let bad = |family, requirement| Err(CatalogError::ParamOutOfRange { family, requirement });
        match self {
            NamedType::A(n) if n < 1 => bad('A', "n >= 1"),
            NamedType::B(n) if n < 2 => bad('B', "n >= 2"),
            NamedType::D(n) if n < 4 => bad('D', "n >= 4"),
            NamedType::A(n) | NamedType::B(n) | NamedType::D(n) if n > MAX_RANK => {
                bad(match self {
                    NamedType::A(_) => 'A',
                    NamedType::B(_) => 'B',
                    _ => 'D',
                }, "rank at most 32")
            }
            NamedType::I2(Bond::Finite(m)) if m < 3 => bad('I', "m >= 3 or inf"),
            _ => Ok(self),
        }
    }

    /// The standard bond matrix for this type.
    pub fn matrix(self) -> CoxeterMatrix {
        let three = Bond::Finite(3);
        let chain = |rank: usize, extra: &[(usize, usize, Bond)]| {
            let mut triples: Vec<(usize, usize, Bond)> =
                (0..rank - 1).map(|i| (i, i + 1, three)).collect();
            triples.extend_from_slice(extra);
            CoxeterMatrix::from_bond_list(rank, &triples).expect("catalog matrix is valid")
        };
        match self {
            NamedType::A(1) => CoxeterMatrix::from_bond_list(1, &[]).expect("rank one"),
            NamedType::A(n) => chain(n, &[]),
            NamedType::B(n) => {
                let mut triples = vec![(0, 1, Bond::Finite(4))];
                triples.extend((1..n - 1).map(|i| (i, i + 1, three)));
                CoxeterMatrix::from_bond_list(n, &triples).expect("catalog matrix is valid")
            }
            NamedType::D(n) => {
                let mut triples = vec![(0, 2, three), (1, 2, three)];
                triples.extend((2..n - 1).map(|i| (i, i + 1, three)));
                CoxeterMatrix::from_bond_list(n, &triples).expect("catalog matrix is valid")
            }
            NamedType::I2(m) => {
                CoxeterMatrix::from_bond_list(2, &[(0, 1, m)]).expect("catalog matrix is valid")
            }
            NamedType::H3 => chain(3, &[(0, 1, Bond::Finite(5))]),
            NamedType::H4 => chain(4, &[(0, 1, Bond::Finite(5))]),
            NamedType::F4 => chain(4, &[(1, 2, Bond::Finite(4))]),
            NamedType::E6 => {
                let mut triples: Vec<(usize, usize, Bond)> =
                    (0..4).map(|i| (i, i + 1, three)).collect();
                triples.push((2, 5, three));
                CoxeterMatrix::from_bond_list(6, &triples).expect("catalog matrix is valid")
            }
        }
    }

    /// Group order, when finite.
    pub fn order(self) -> Option<u64> {
        fn factorial(n: usize) -> u64 {
            (2..=n as u64).product()
        }
        match self {
            NamedType::A(n) => Some(factorial(n + 1)),
            NamedType::B(n) => Some((1u64 << n) * factorial(n)),
            NamedType::D(n) => Some((1u64 << (n - 1)) * factorial(n)),
            NamedType::I2(Bond::Finite(m)) => Some(2 * m as u64),
            NamedType::I2(Bond::Infinite) => None,
            NamedType::H3 => Some(120),
            NamedType::H4 => Some(14_400),
            NamedType::F4 => Some(1_152),
            NamedType::E6 => Some(51_840),
        }
    }

    /// Length of the longest element, when the group is finite.
    pub fn longest_length(self) -> Option<usize> {
        match self {
            NamedType::A(n) => Some(n * (n + 1) / 2),
            NamedType::B(n) => Some(n * n),
            NamedType::D(n) => Some(n * n - n),
            NamedType::I2(Bond::Finite(m)) => Some(m as usize),
            NamedType::I2(Bond::Infinite) => None,
            NamedType::H3 => Some(15),
            NamedType::H4 => Some(60),
            NamedType::F4 => Some(24),
            NamedType::E6 => Some(36),
        }
    }
}

impl fmt::Display for NamedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedType::A(n) => write!(f, "A{n}"),
            NamedType::B(n) => write!(f, "B{n}"),
            NamedType::D(n) => write!(f, "D{n}"),
            NamedType::I2(m) => write!(f, "I2({m})"),
            NamedType::H3 => write!(f, "H3"),
            NamedType::H4 => write!(f, "H4"),
            NamedType::F4 => write!(f, "F4"),
            NamedType::E6 => write!(f, "E6"),
        }
    }
}

impl std::str::FromStr for NamedType {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NamedType::parse(s)
    }
}

/// Returns the standard bond matrix for a named catalog type.
pub fn from_named_type(name: &str) -> Result<CoxeterMatrix, CatalogError> {
    Ok(NamedType::parse(name)?.matrix())
}

/// A subset of the generators, stored as a bitmask.
///
/// Serves both as a descent set and as the mask J defining a parabolic
/// quotient. Displays in the mask syntax `s0,s2` (empty set displays as
/// the empty string).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GeneratorSet {
    bits: u32,
}

/// Mask of generators defining a parabolic subgroup/quotient.
pub type ParabolicMask = GeneratorSet;

/// Set of simple descents of an element.
pub type DescentSet = GeneratorSet;

impl GeneratorSet {
    pub const EMPTY: GeneratorSet = GeneratorSet { bits: 0 };

    pub fn full(rank: usize) -> Self {
        assert!(rank <= MAX_RANK);
        if rank == MAX_RANK {
            GeneratorSet { bits: u32::MAX }
        } else {
            GeneratorSet { bits: (1 << rank) - 1 }
        }
    }

    pub fn singleton(s: GeneratorId) -> Self {
        GeneratorSet { bits: 1 << s.index() }
    }

    pub fn insert(&mut self, s: GeneratorId) {
        self.bits |= 1 << s.index();
    }

    pub fn remove(&mut self, s: GeneratorId) {
        self.bits &= !(1 << s.index());
    }

    pub fn contains(self, s: GeneratorId) -> bool {
        self.bits & (1 << s.index()) != 0
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn union(self, other: Self) -> Self {
        GeneratorSet { bits: self.bits | other.bits }
    }

    pub fn intersection(self, other: Self) -> Self {
        GeneratorSet { bits: self.bits & other.bits }
    }

    pub fn difference(self, other: Self) -> Self {
        GeneratorSet { bits: self.bits & !other.bits }
    }

    pub fn complement(self, rank: usize) -> Self {
        GeneratorSet { bits: Self::full(rank).bits & !self.bits }
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn iter(self) -> impl Iterator<Item = GeneratorId> {
        (0..MAX_RANK).filter(move |i| self.bits & (1 << i) != 0).map(GeneratorId::new)
    }

    /// All subsets of this set, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = GeneratorSet> {
        // Standard subset-enumeration trick: next = (bits - full) & full.
        let full = self.bits;
        let mut cur = Some(0u32);
        std::iter::from_fn(move || {
            let bits = cur?;
            cur = if bits == full { None } else { Some(bits.wrapping_sub(full) & full) };
            Some(GeneratorSet { bits })
        })
    }
}

impl FromIterator<GeneratorId> for GeneratorSet {
    fn from_iter<T: IntoIterator<Item = GeneratorId>>(iter: T) -> Self {
        let mut set = GeneratorSet::EMPTY;
        for s in iter {
            set.insert(s);
        }
        set
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// Mask parse failures.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum MaskParseError {
    #[error("unknown generator {0:?} in mask (rank {1})")]
    UnknownGenerator(String, usize),
}

/// A Coxeter system ready for computation: the validated matrix, its bilinear
/// form, and the length cap applied to normal forms.
///
/// All fields are immutable after construction; the type is safe to share
/// across threads for concurrent reads.
#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    form: BilinearForm,
    length_cap: usize,
}

/// Default bound on element length accepted by normalization.
pub const DEFAULT_LENGTH_CAP: usize = 60;

impl CoxeterSystem {
    pub fn new(matrix: CoxeterMatrix) -> Self {
        let form = matrix.bilinear_form();
        CoxeterSystem { matrix, form, length_cap: DEFAULT_LENGTH_CAP }
    }

    pub fn from_named(ty: NamedType) -> Self {
        Self::new(ty.matrix())
    }

    pub fn with_length_cap(mut self, cap: usize) -> Self {
        self.length_cap = cap;
        self
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn length_cap(&self) -> usize {
        self.length_cap
    }

    pub fn generators(&self) -> impl Iterator<Item = GeneratorId> {
        self.matrix.generators()
    }

    pub fn full_mask(&self) -> GeneratorSet {
        GeneratorSet::full(self.rank())
    }

    /// Parses mask syntax: a comma-separated generator list such as `s0,s2`,
    /// or `~s3` for the complement of the listed set. Empty input is the
    /// empty mask.
    pub fn parse_mask(&self, text: &str) -> Result<GeneratorSet, MaskParseError> {
        let trimmed = text.trim();
        let (body, complement) = match trimmed.strip_prefix('~') {
            Some(rest) => (rest, true),
            None => (trimmed, false),
        };
        let mut set = GeneratorSet::EMPTY;
        for token in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            set.insert(self.parse_generator(token).ok_or_else(|| {
                MaskParseError::UnknownGenerator(token.to_string(), self.rank())
            })?);
        }
        Ok(if complement { set.complement(self.rank()) } else { set })
    }

    pub(crate) fn parse_generator(&self, token: &str) -> Option<GeneratorId> {
        let idx: usize = token.strip_prefix('s')?.parse().ok()?;
        (idx < self.rank()).then(|| GeneratorId::new(idx))
    }
}
