//! Executable verifiers for the descent-set identities. Each verifier checks
//! one statement on one instance and returns a structured report carrying a
//! witness when the identity fails; hypothesis violations are precondition
//! errors, kept distinct from failed verification.
//!
//! Verifiers never shortcut through the identity they check: the join
//! decomposition calls the brute-force join, the union formulas compare the
//! two inclusions directly, and so on.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use serde::Serialize;
use thiserror::Error;

use crate::calculus::{CalculusError, JoinError, ReflectionSet};
use crate::element::{EngineError, GroupElement, Word};
use crate::enumeration::EnumeratedGroup;
use crate::system::{CoxeterSystem, GeneratorId, GeneratorSet};

/// Identifier of a verifiable statement. The string ids double as CLI
/// tokens and report fields.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum StatementId {
    /// T_L(v) = T_L(u) ∪ ⋃_{J in E} T_L(v^J) for mask families E whose
    /// intersection is the complement of D_R(u^-1 v).
    DescentUnion,
    /// The finest instance: E = { S\{s} : s in D_R(u^-1 v) }.
    FinestDescentUnion,
    /// w is the join of its maximal quotients at right descents.
    JoinDecomposition,
    /// T_L along the prefixes of a reduced word covers T_L of the word.
    ReducedWordUnion,
    /// Equal maximal quotients at the descents of u^-1 v force v <= w.
    QuotientCompatibility,
    /// The quotient inversion sets over subsets of D_R(w) form a Boolean
    /// lattice of size 2^|D_R(w)|.
    BooleanQuotient,
    /// Each wsw^-1 lies only in the quotient set indexed by s: the union in
    /// the finest formula is irredundant.
    MinimalUnion,
    /// T_L(xy) = T_L(x) Δ x T_L(y) x^-1.
    InversionDifference,
}

impl StatementId {
    pub const ALL: [StatementId; 8] = [
        StatementId::DescentUnion,
        StatementId::FinestDescentUnion,
        StatementId::JoinDecomposition,
        StatementId::ReducedWordUnion,
        StatementId::QuotientCompatibility,
        StatementId::BooleanQuotient,
        StatementId::MinimalUnion,
        StatementId::InversionDifference,
    ];

    pub fn id(self) -> &'static str {
        match self {
            StatementId::DescentUnion => "thm-2.1",
            StatementId::FinestDescentUnion => "cor-2.2",
            StatementId::JoinDecomposition => "cor-2.3",
            StatementId::ReducedWordUnion => "cor-2.4",
            StatementId::QuotientCompatibility => "cor-2.5",
            StatementId::BooleanQuotient => "prop-2.6",
            StatementId::MinimalUnion => "minimal-union",
            StatementId::InversionDifference => "eq0",
        }
    }

    pub fn parse(text: &str) -> Option<StatementId> {
        StatementId::ALL.into_iter().find(|s| s.id() == text)
    }

    /// Short human description of what the statement asserts.
    pub fn describe(self) -> &'static str {
        match self {
            StatementId::DescentUnion => "descent-set union formula over a mask family",
            StatementId::FinestDescentUnion => "descent-set union formula, finest family",
            StatementId::JoinDecomposition => "join decomposition over maximal quotients",
            StatementId::ReducedWordUnion => "inversion union along reduced-word prefixes",
            StatementId::QuotientCompatibility => "quotient compatibility in weak order",
            StatementId::BooleanQuotient => "Boolean lattice of quotient inversion sets",
            StatementId::MinimalUnion => "irredundancy of the finest union",
            StatementId::InversionDifference => "inversion-set symmetric difference identity",
        }
    }
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl Serialize for StatementId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.id())
    }
}

/// Outcome of checking a statement on one instance.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VerificationReport {
    pub statement: StatementId,
    pub instance: String,
    pub holds: bool,
    /// Present exactly when the identity fails: the offending reflection or
    /// pair, first in canonical order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl VerificationReport {
    fn holds(statement: StatementId, instance: String) -> Self {
        VerificationReport { statement, instance, holds: true, witness: None }
    }

    fn fails(statement: StatementId, instance: String, witness: String) -> Self {
        VerificationReport { statement, instance, holds: false, witness: Some(witness) }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "statement={} instance=[{}] holds={}",
            self.statement, self.instance, self.holds
        )?;
        if let Some(witness) = &self.witness {
            write!(f, " witness=[{witness}]")?;
        }
        Ok(())
    }
}

/// An instance that does not satisfy the hypotheses of the statement.
#[derive(Error, Debug, Clone, PartialEq)]
#[error("precondition of {statement} violated: {violated}")]
pub struct PreconditionError {
    pub statement: StatementId,
    pub violated: String,
}

/// Errors from verifiers: hypothesis violations or engine breakdown.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum TheoremError {
    #[error(transparent)]
    Precondition(#[from] PreconditionError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error(transparent)]
    Join(#[from] JoinError),
}

/// Memoized calculus over one system: inversion sets, quotients, descent
/// sets and weak-order comparisons are computed once per argument. Purely a
/// cache; results are identical to the direct operations.
pub struct Memo<'s> {
    sys: &'s CoxeterSystem,
    tl: RefCell<HashMap<GroupElement, Rc<ReflectionSet>>>,
    quotient: RefCell<HashMap<(GroupElement, GeneratorSet), GroupElement>>,
    descents: RefCell<HashMap<GroupElement, GeneratorSet>>,
    weak: RefCell<HashMap<(GroupElement, GroupElement), bool>>,
    conj: RefCell<HashMap<(GroupElement, GroupElement), GroupElement>>,
}

impl<'s> Memo<'s> {
    pub fn new(sys: &'s CoxeterSystem) -> Self {
        Memo {
            sys,
            tl: RefCell::new(HashMap::new()),
            quotient: RefCell::new(HashMap::new()),
            descents: RefCell::new(HashMap::new()),
            weak: RefCell::new(HashMap::new()),
            conj: RefCell::new(HashMap::new()),
        }
    }

    pub fn system(&self) -> &'s CoxeterSystem {
        self.sys
    }

    pub fn left_inversions(&self, w: &GroupElement) -> Result<Rc<ReflectionSet>, CalculusError> {
        if let Some(hit) = self.tl.borrow().get(w) {
            return Ok(Rc::clone(hit));
        }
        let set = Rc::new(self.sys.left_inversions(w)?);
        self.tl.borrow_mut().insert(w.clone(), Rc::clone(&set));
        Ok(set)
    }

    pub fn quotient(
        &self,
        w: &GroupElement,
        mask: GeneratorSet,
    ) -> Result<GroupElement, EngineError> {
        let key = (w.clone(), mask);
        if let Some(hit) = self.quotient.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let q = self.sys.project(w, mask)?.quotient;
        self.quotient.borrow_mut().insert(key, q.clone());
        Ok(q)
    }

    pub fn maximal_quotient(
        &self,
        w: &GroupElement,
        s: GeneratorId,
    ) -> Result<GroupElement, EngineError> {
        self.quotient(w, GeneratorSet::singleton(s).complement(self.sys.rank()))
    }

    pub fn right_descents(&self, w: &GroupElement) -> Result<GeneratorSet, EngineError> {
        if let Some(hit) = self.descents.borrow().get(w) {
            return Ok(*hit);
        }
        let set = self.sys.right_descents(w).map_err(EngineError::Degenerate)?;
        self.descents.borrow_mut().insert(w.clone(), set);
        Ok(set)
    }

    pub fn weak_leq(&self, u: &GroupElement, v: &GroupElement) -> Result<bool, EngineError> {
        let key = (u.clone(), v.clone());
        if let Some(hit) = self.weak.borrow().get(&key) {
            return Ok(*hit);
        }
        let leq = self.sys.weak_leq(u, v)?;
        self.weak.borrow_mut().insert(key, leq);
        Ok(leq)
    }

    pub fn multiply(
        &self,
        a: &GroupElement,
        b: &GroupElement,
    ) -> Result<GroupElement, EngineError> {
        self.sys.multiply(a, b)
    }

    pub fn left_quotient(
        &self,
        u: &GroupElement,
        v: &GroupElement,
    ) -> Result<GroupElement, EngineError> {
        let uinv = self.sys.inverse(u)?;
        self.sys.multiply(&uinv, v)
    }

    pub fn conjugate(
        &self,
        x: &GroupElement,
        t: &GroupElement,
    ) -> Result<GroupElement, EngineError> {
        let key = (x.clone(), t.clone());
        if let Some(hit) = self.conj.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let c = self.sys.conjugate(x, t)?;
        self.conj.borrow_mut().insert(key, c.clone());
        Ok(c)
    }

    pub fn conjugate_set(
        &self,
        x: &GroupElement,
        set: &ReflectionSet,
    ) -> Result<ReflectionSet, EngineError> {
        set.iter().map(|t| self.conjugate(x, t)).collect()
    }
}

fn mask_family_text(masks: &[GeneratorSet]) -> String {
    let parts: Vec<String> = masks.iter().map(|m| format!("{{{m}}}")).collect();
    format!("[{}]", parts.join(", "))
}

/// Compares a target set against a union of parts; returns the canonical
/// witness of the first discrepancy, if any.
fn union_discrepancy(target: &ReflectionSet, parts: &[Rc<ReflectionSet>]) -> Option<String> {
    let mut union = ReflectionSet::new();
    for part in parts {
        union = union.union(part);
    }
    if let Some(t) = target.first_missing_from(&union) {
        return Some(format!("{t} is in the target set but not in the union"));
    }
    if let Some(t) = union.first_missing_from(target) {
        return Some(format!("{t} is in the union but not in the target set"));
    }
    None
}

fn union_statement(
    memo: &Memo,
    statement: StatementId,
    u: &GroupElement,
    v: &GroupElement,
    masks: &[GeneratorSet],
    instance: String,
) -> Result<VerificationReport, TheoremError> {
    if !memo.weak_leq(u, v)? {
        return Err(PreconditionError {
            statement,
            violated: format!("u={u} is not weak-below v={v}"),
        }
        .into());
    }
    let mut parts: Vec<Rc<ReflectionSet>> = vec![memo.left_inversions(u)?];
    for &mask in masks {
        let q = memo.quotient(v, mask)?;
        parts.push(memo.left_inversions(&q)?);
    }
    let target = memo.left_inversions(v)?;
    match union_discrepancy(&target, &parts) {
        None => Ok(VerificationReport::holds(statement, instance)),
        Some(witness) => Ok(VerificationReport::fails(statement, instance, witness)),
    }
}

/// Checks T_L(v) = T_L(u) ∪ ⋃_{J in E} T_L(v^J). Requires u weak-below v
/// and an E family with ⋂ E = S \ D_R(u^-1 v).
pub fn verify_descent_union(
    memo: &Memo,
    u: &GroupElement,
    v: &GroupElement,
    family: &[GeneratorSet],
) -> Result<VerificationReport, TheoremError> {
    let statement = StatementId::DescentUnion;
    let sys = memo.system();
    if !memo.weak_leq(u, v)? {
        return Err(PreconditionError {
            statement,
            violated: format!("u={u} is not weak-below v={v}"),
        }
        .into());
    }
    let uv = memo.left_quotient(u, v)?;
    let dr = memo.right_descents(&uv)?;
    let intersection = family
        .iter()
        .fold(sys.full_mask(), |acc, m| acc.intersection(*m));
    if intersection != dr.complement(sys.rank()) {
        return Err(PreconditionError {
            statement,
            violated: format!(
                "mask family intersects to {{{intersection}}}, expected the complement of D_R(u^-1 v) = {{{dr}}}"
            ),
        }
        .into());
    }
    let instance = format!("u={u}; v={v}; E={}", mask_family_text(family));
    union_statement(memo, statement, u, v, family, instance)
}

/// The finest instance of the union formula: E = {S\{s} : s in D_R(u^-1 v)}.
pub fn verify_finest_union(
    memo: &Memo,
    u: &GroupElement,
    v: &GroupElement,
) -> Result<VerificationReport, TheoremError> {
    let statement = StatementId::FinestDescentUnion;
    if !memo.weak_leq(u, v)? {
        return Err(PreconditionError {
            statement,
            violated: format!("u={u} is not weak-below v={v}"),
        }
        .into());
    }
    let uv = memo.left_quotient(u, v)?;
    let dr = memo.right_descents(&uv)?;
    let rank = memo.system().rank();
    let family: Vec<GeneratorSet> = dr
        .iter()
        .map(|s| GeneratorSet::singleton(s).complement(rank))
        .collect();
    let instance = format!("u={u}; v={v}");
    union_statement(memo, statement, u, v, &family, instance)
}

/// Checks w = join of { w^{S\{s}} : s in D_R(w) } via the brute-force join
/// over the enumerated universe.
pub fn verify_join_decomposition(
    memo: &Memo,
    w: &GroupElement,
    universe: &EnumeratedGroup,
) -> Result<VerificationReport, TheoremError> {
    let statement = StatementId::JoinDecomposition;
    let instance = format!("w={w}");
    let mut parts = Vec::new();
    for s in memo.right_descents(w)?.iter() {
        parts.push(memo.maximal_quotient(w, s)?);
    }
    let join = memo.system().weak_join(&parts, universe)?;
    if &join == w {
        Ok(VerificationReport::holds(statement, instance))
    } else {
        Ok(VerificationReport::fails(statement, instance, format!("join is {join}")))
    }
}

/// Checks T_L(w) = ⋃_i T_L((s_1...s_{k-i})^{S\{s_{k-i}}}) for a reduced word.
pub fn verify_reduced_word_union(
    memo: &Memo,
    word: &Word,
) -> Result<VerificationReport, TheoremError> {
    let statement = StatementId::ReducedWordUnion;
    let sys = memo.system();
    let w = sys.normalize(word)?;
    if w.length() != word.len() {
        return Err(PreconditionError {
            statement,
            violated: format!("word {word} is not reduced (length {})", w.length()),
        }
        .into());
    }
    let rank = sys.rank();
    let mut parts: Vec<Rc<ReflectionSet>> = Vec::with_capacity(word.len());
    for end in (1..=word.len()).rev() {
        let prefix = sys.normalize(&Word::new(word.letters()[..end].to_vec()))?;
        let last = word.letters()[end - 1];
        let mask = GeneratorSet::singleton(last).complement(rank);
        let q = memo.quotient(&prefix, mask)?;
        parts.push(memo.left_inversions(&q)?);
    }
    let target = memo.left_inversions(&w)?;
    let instance = format!("word={word}");
    match union_discrepancy(&target, &parts) {
        None => Ok(VerificationReport::holds(statement, instance)),
        Some(witness) => Ok(VerificationReport::fails(statement, instance, witness)),
    }
}

/// Checks that equal maximal quotients at the descents of u^-1 v force
/// v weak-below w, given u weak-below both v and w.
pub fn verify_quotient_compatibility(
    memo: &Memo,
    u: &GroupElement,
    v: &GroupElement,
    w: &GroupElement,
) -> Result<VerificationReport, TheoremError> {
    let statement = StatementId::QuotientCompatibility;
    if !memo.weak_leq(u, v)? {
        return Err(PreconditionError {
            statement,
            violated: format!("u={u} is not weak-below v={v}"),
        }
        .into());
    }
    if !memo.weak_leq(u, w)? {
        return Err(PreconditionError {
            statement,
            violated: format!("u={u} is not weak-below w={w}"),
        }
        .into());
    }
    let uv = memo.left_quotient(u, v)?;
    for s in memo.right_descents(&uv)?.iter() {
        let pv = memo.maximal_quotient(v, s)?;
        let pw = memo.maximal_quotient(w, s)?;
        if pv != pw {
            return Err(PreconditionError {
                statement,
                violated: format!("maximal quotients at {s} differ: {pv} vs {pw}"),
            }
            .into());
        }
    }
    let instance = format!("u={u}; v={v}; w={w}");
    if memo.weak_leq(v, w)? {
        Ok(VerificationReport::holds(statement, instance))
    } else {
        Ok(VerificationReport::fails(
            statement,
            instance,
            format!("v={v} is not weak-below w={w}"),
        ))
    }
}

/// Checks that {T_L(w^{K∪J}) : J ⊆ D_R(w)} has 2^|D_R(w)| distinct members
/// and that containment is exactly reverse inclusion of the index sets.
pub fn verify_boolean_quotient(
    memo: &Memo,
    w: &GroupElement,
    k: GeneratorSet,
) -> Result<VerificationReport, TheoremError> {
    let statement = StatementId::BooleanQuotient;
    let dr = memo.right_descents(w)?;
    if !k.intersection(dr).is_empty() {
        return Err(PreconditionError {
            statement,
            violated: format!("K={{{k}}} meets D_R(w)={{{dr}}}"),
        }
        .into());
    }
    let instance = format!("w={w}; K={{{k}}}");
    let subsets: Vec<GeneratorSet> = dr.subsets().collect();
    let mut sets: Vec<Rc<ReflectionSet>> = Vec::with_capacity(subsets.len());
    for &j in &subsets {
        let q = memo.quotient(w, k.union(j))?;
        sets.push(memo.left_inversions(&q)?);
    }
    for (a, ja) in sets.iter().zip(&subsets) {
        for (b, jb) in sets.iter().zip(&subsets) {
            if ja == jb {
                continue;
            }
            if a == b {
                return Ok(VerificationReport::fails(
                    statement,
                    instance,
                    format!("J={{{ja}}} and J={{{jb}}} give the same inversion set"),
                ));
            }
            let contained = a.is_subset(b);
            let reversed = jb.is_subset(*ja);
            if contained != reversed {
                return Ok(VerificationReport::fails(
                    statement,
                    instance,
                    format!(
                        "containment mismatch at I={{{ja}}}, J={{{jb}}}: sets {}, indices {}",
                        if contained { "nested" } else { "not nested" },
                        if reversed { "nested" } else { "not nested" },
                    ),
                ));
            }
        }
    }
    Ok(VerificationReport::holds(statement, instance))
}

/// Checks wsw^-1 ∈ T_L(w^{S\{s}}) and ∉ T_L(w^{S\{r}}) for r ≠ s, over all
/// right descents s of w.
pub fn verify_minimal_union(
    memo: &Memo,
    w: &GroupElement,
) -> Result<VerificationReport, TheoremError> {
    let statement = StatementId::MinimalUnion;
    let instance = format!("w={w}");
    let sys = memo.system();
    let dr = memo.right_descents(w)?;
    for s in dr.iter() {
        let t = sys.conjugate(w, &sys.generator_element(s))?;
        let own = memo.left_inversions(&memo.maximal_quotient(w, s)?)?;
        if !own.contains(&t) {
            return Ok(VerificationReport::fails(
                statement,
                instance,
                format!("{t} missing from the quotient set at {s}"),
            ));
        }
        for r in dr.iter().filter(|r| *r != s) {
            let other = memo.left_inversions(&memo.maximal_quotient(w, r)?)?;
            if other.contains(&t) {
                return Ok(VerificationReport::fails(
                    statement,
                    instance,
                    format!("{t} also appears in the quotient set at {r}"),
                ));
            }
        }
    }
    Ok(VerificationReport::holds(statement, instance))
}

/// Checks T_L(xy) = T_L(x) Δ x T_L(y) x^-1.
pub fn verify_inversion_difference(
    memo: &Memo,
    x: &GroupElement,
    y: &GroupElement,
) -> Result<VerificationReport, TheoremError> {
    let statement = StatementId::InversionDifference;
    let xy = memo.multiply(x, y)?;
    let lhs = memo.left_inversions(&xy)?;
    let tx = memo.left_inversions(x)?;
    let ty = memo.left_inversions(y)?;
    let conj = memo.conjugate_set(x, &ty)?;
    let rhs = tx.symmetric_difference(&conj);
    let instance = format!("x={x}; y={y}");
    let witness = lhs
        .first_missing_from(&rhs)
        .map(|t| format!("{t} is an inversion of xy but not in the symmetric difference"))
        .or_else(|| {
            rhs.first_missing_from(&lhs)
                .map(|t| format!("{t} is in the symmetric difference but not an inversion of xy"))
        });
    match witness {
        None => Ok(VerificationReport::holds(statement, instance)),
        Some(witness) => Ok(VerificationReport::fails(statement, instance, witness)),
    }
}
