//! Sweep drivers: run a verifier over every instance drawn from an
//! enumerated group, exhaustively or by seeded sampling, and aggregate
//! pass/skip/fail counts.
//!
//! Skip discipline: instances violating a statement's hypotheses are counted
//! as skipped, never as failed, so exhaustive sweeps distinguish vacuous
//! truth from verification. Joins that escape a truncated ball of an
//! infinite group are also skips; on complete groups they are hard errors.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::calculus::JoinError;
use crate::element::Word;
use crate::enumeration::EnumeratedGroup;
use crate::system::{CoxeterSystem, GeneratorId, GeneratorSet};
use crate::theorems::{
    verify_boolean_quotient, verify_descent_union, verify_finest_union,
    verify_inversion_difference, verify_join_decomposition, verify_minimal_union,
    verify_quotient_compatibility, verify_reduced_word_union, Memo, StatementId, TheoremError,
    VerificationReport,
};

/// How a sweep chooses its instances.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SweepScope {
    /// Exhaustive below the per-arity thresholds, sampled above.
    Auto,
    Exhaustive,
    Sample,
}

#[derive(Clone, Copy, Debug)]
pub struct SweepOptions {
    pub scope: SweepScope,
    pub seed: u64,
    /// Instances drawn per statement in sampled mode.
    pub samples: usize,
    /// Cap on failure reports retained in the summary.
    pub max_failure_reports: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { scope: SweepScope::Auto, seed: 0, samples: 500, max_failure_reports: 5 }
    }
}

/// Aggregated outcome of sweeping one statement.
#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub statement: StatementId,
    pub pass: u64,
    pub skip: u64,
    pub fail: u64,
    /// The first few failing reports, in instance order.
    pub failures: Vec<VerificationReport>,
}

impl SweepSummary {
    fn new(statement: StatementId) -> Self {
        SweepSummary { statement, pass: 0, skip: 0, fail: 0, failures: Vec::new() }
    }

    fn record(
        &mut self,
        outcome: Result<VerificationReport, TheoremError>,
        complete_universe: bool,
        max_failures: usize,
    ) -> Result<(), TheoremError> {
        match outcome {
            Ok(report) if report.holds => self.pass += 1,
            Ok(report) => {
                self.fail += 1;
                if self.failures.len() < max_failures {
                    self.failures.push(report);
                }
            }
            Err(TheoremError::Precondition(_)) => self.skip += 1,
            Err(TheoremError::Join(JoinError::NoUpperBound | JoinError::NotAttained))
                if !complete_universe =>
            {
                self.skip += 1
            }
            Err(fatal) => return Err(fatal),
        }
        Ok(())
    }
}

/// Runs statement sweeps over one enumerated group.
pub struct Sweeper<'s, 'g> {
    sys: &'s CoxeterSystem,
    group: &'g EnumeratedGroup,
    memo: Memo<'s>,
}

impl<'s, 'g> Sweeper<'s, 'g> {
    pub fn new(sys: &'s CoxeterSystem, group: &'g EnumeratedGroup) -> Self {
        Sweeper { sys, group, memo: Memo::new(sys) }
    }

    pub fn memo(&self) -> &Memo<'s> {
        &self.memo
    }

    /// Sweeps one statement and aggregates the reports.
    pub fn run(
        &self,
        statement: StatementId,
        opts: &SweepOptions,
    ) -> Result<SweepSummary, TheoremError> {
        let n = self.group.len();
        let exhaustive = match opts.scope {
            SweepScope::Exhaustive => true,
            SweepScope::Sample => false,
            SweepScope::Auto => match statement {
                StatementId::DescentUnion
                | StatementId::FinestDescentUnion
                | StatementId::InversionDifference => n <= 200,
                StatementId::QuotientCompatibility => n <= 60,
                StatementId::JoinDecomposition => n <= 500,
                StatementId::ReducedWordUnion
                | StatementId::BooleanQuotient
                | StatementId::MinimalUnion => n <= 5000,
            },
        };
        if exhaustive {
            self.run_exhaustive(statement, opts)
        } else {
            self.run_sampled(statement, opts)
        }
    }

    fn weak_leq_idx(&self, u: u32, v: u32) -> Result<bool, TheoremError> {
        if self.group.is_complete() {
            Ok(self.group.weak_leq_idx(u, v))
        } else {
            Ok(self.memo.weak_leq(self.group.element(u), self.group.element(v))?)
        }
    }

    fn run_exhaustive(
        &self,
        statement: StatementId,
        opts: &SweepOptions,
    ) -> Result<SweepSummary, TheoremError> {
        let mut summary = SweepSummary::new(statement);
        let g = self.group;
        let complete = g.is_complete();
        let n = g.len() as u32;
        match statement {
            StatementId::DescentUnion | StatementId::FinestDescentUnion => {
                for u in 0..n {
                    for v in 0..n {
                        if !self.weak_leq_idx(u, v)? {
                            continue;
                        }
                        let (eu, ev) = (g.element(u), g.element(v));
                        let outcome = if statement == StatementId::FinestDescentUnion {
                            verify_finest_union(&self.memo, eu, ev)
                        } else {
                            let family = [self.coarse_mask(eu, ev)?];
                            verify_descent_union(&self.memo, eu, ev, &family)
                        };
                        summary.record(outcome, complete, opts.max_failure_reports)?;
                    }
                }
            }
            StatementId::JoinDecomposition => {
                for w in g.elements() {
                    let outcome = verify_join_decomposition(&self.memo, w, g);
                    summary.record(outcome, complete, opts.max_failure_reports)?;
                }
            }
            StatementId::ReducedWordUnion => {
                for w in g.elements() {
                    let outcome = verify_reduced_word_union(&self.memo, &w.word());
                    summary.record(outcome, complete, opts.max_failure_reports)?;
                }
            }
            StatementId::QuotientCompatibility => {
                for u in 0..n {
                    let mut ups = Vec::new();
                    for v in 0..n {
                        if self.weak_leq_idx(u, v)? {
                            ups.push(v);
                        }
                    }
                    for &v in &ups {
                        for &w in &ups {
                            let outcome = verify_quotient_compatibility(
                                &self.memo,
                                g.element(u),
                                g.element(v),
                                g.element(w),
                            );
                            summary.record(outcome, complete, opts.max_failure_reports)?;
                        }
                    }
                }
            }
            StatementId::BooleanQuotient => {
                for w in g.elements() {
                    let dr = self.memo.right_descents(w)?;
                    for k in dr.complement(self.sys.rank()).subsets() {
                        let outcome = verify_boolean_quotient(&self.memo, w, k);
                        summary.record(outcome, complete, opts.max_failure_reports)?;
                    }
                }
            }
            StatementId::MinimalUnion => {
                for w in g.elements() {
                    let outcome = verify_minimal_union(&self.memo, w);
                    summary.record(outcome, complete, opts.max_failure_reports)?;
                }
            }
            StatementId::InversionDifference => {
                for x in g.elements() {
                    for y in g.elements() {
                        let outcome = verify_inversion_difference(&self.memo, x, y);
                        summary.record(outcome, complete, opts.max_failure_reports)?;
                    }
                }
            }
        }
        Ok(summary)
    }

    fn run_sampled(
        &self,
        statement: StatementId,
        opts: &SweepOptions,
    ) -> Result<SweepSummary, TheoremError> {
        let mut summary = SweepSummary::new(statement);
        let g = self.group;
        let complete = g.is_complete();
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..opts.samples {
            let outcome = match statement {
                StatementId::DescentUnion => {
                    let (u, v) = self.sample_weak_pair(&mut rng);
                    let (eu, ev) = (g.element(u), g.element(v));
                    let family = [self.coarse_mask(eu, ev)?];
                    verify_descent_union(&self.memo, eu, ev, &family)
                }
                StatementId::FinestDescentUnion => {
                    let (u, v) = self.sample_weak_pair(&mut rng);
                    verify_finest_union(&self.memo, g.element(u), g.element(v))
                }
                StatementId::JoinDecomposition => {
                    let w = rng.gen_range(0..g.len() as u32);
                    verify_join_decomposition(&self.memo, g.element(w), g)
                }
                StatementId::ReducedWordUnion => {
                    let word = self.sample_reduced_word(&mut rng);
                    verify_reduced_word_union(&self.memo, &word)
                }
                StatementId::QuotientCompatibility => {
                    let u = rng.gen_range(0..g.len() as u32);
                    let v = self.sample_ascent(&mut rng, u);
                    let w = self.sample_ascent(&mut rng, u);
                    verify_quotient_compatibility(
                        &self.memo,
                        g.element(u),
                        g.element(v),
                        g.element(w),
                    )
                }
                StatementId::BooleanQuotient => {
                    let w = g.element(rng.gen_range(0..g.len() as u32));
                    let dr = self.memo.right_descents(w)?;
                    let choices: Vec<GeneratorSet> =
                        dr.complement(self.sys.rank()).subsets().collect();
                    let k = *choices.choose(&mut rng).expect("subset list is never empty");
                    verify_boolean_quotient(&self.memo, w, k)
                }
                StatementId::MinimalUnion => {
                    let w = rng.gen_range(0..g.len() as u32);
                    verify_minimal_union(&self.memo, g.element(w))
                }
                StatementId::InversionDifference => {
                    let x = rng.gen_range(0..g.len() as u32);
                    let y = rng.gen_range(0..g.len() as u32);
                    verify_inversion_difference(&self.memo, g.element(x), g.element(y))
                }
            };
            summary.record(outcome, complete, opts.max_failure_reports)?;
        }
        Ok(summary)
    }

    fn coarse_mask(
        &self,
        u: &crate::element::GroupElement,
        v: &crate::element::GroupElement,
    ) -> Result<GeneratorSet, TheoremError> {
        let uv = self.memo.left_quotient(u, v)?;
        Ok(self.memo.right_descents(&uv)?.complement(self.sys.rank()))
    }

    /// A weak-order pair (u, v): v uniform, u a random descent walk down.
    fn sample_weak_pair(&self, rng: &mut ChaCha8Rng) -> (u32, u32) {
        let v = rng.gen_range(0..self.group.len() as u32);
        (self.sample_descent(rng, v), v)
    }

    fn sample_descent(&self, rng: &mut ChaCha8Rng, from: u32) -> u32 {
        let mut cur = from;
        loop {
            let dr: Vec<GeneratorId> = self.group.right_descents_idx(cur).iter().collect();
            if dr.is_empty() || rng.gen_bool(0.5) {
                return cur;
            }
            let s = dr[rng.gen_range(0..dr.len())];
            cur = self.group.right_mul(cur, s).expect("descent edges stay in the ball");
        }
    }

    fn sample_ascent(&self, rng: &mut ChaCha8Rng, from: u32) -> u32 {
        let mut cur = from;
        loop {
            if rng.gen_bool(0.4) {
                return cur;
            }
            let len = self.group.length_of(cur);
            let ups: Vec<u32> = (0..self.sys.rank())
                .filter_map(|s| self.group.right_mul(cur, GeneratorId::new(s)))
                .filter(|&j| self.group.length_of(j) > len)
                .collect();
            if ups.is_empty() {
                return cur;
            }
            cur = ups[rng.gen_range(0..ups.len())];
        }
    }

    /// A random reduced word: an ascent walk from the identity, recording
    /// letters. Reduced by construction, usually not ShortLex-minimal.
    fn sample_reduced_word(&self, rng: &mut ChaCha8Rng) -> Word {
        let mut cur = 0u32;
        let mut letters = Vec::new();
        loop {
            if !letters.is_empty() && rng.gen_bool(0.2) {
                break;
            }
            let len = self.group.length_of(cur);
            let ups: Vec<(GeneratorId, u32)> = (0..self.sys.rank())
                .filter_map(|s| {
                    let s = GeneratorId::new(s);
                    self.group.right_mul(cur, s).map(|j| (s, j))
                })
                .filter(|&(_, j)| self.group.length_of(j) > len)
                .collect();
            if ups.is_empty() {
                break;
            }
            let (s, j) = ups[rng.gen_range(0..ups.len())];
            letters.push(s);
            cur = j;
        }
        Word::new(letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::NamedType;

    fn sweep(name: &str, statement: StatementId, opts: &SweepOptions) -> SweepSummary {
        let sys = CoxeterSystem::from_named(NamedType::parse(name).unwrap());
        let g = sys.enumerated(40);
        Sweeper::new(&sys, &g).run(statement, opts).unwrap()
    }

    #[test]
    fn exhaustive_statements_hold_on_a3() {
        let opts = SweepOptions::default();
        for statement in StatementId::ALL {
            let summary = sweep("A3", statement, &opts);
            assert_eq!(summary.fail, 0, "{statement}: {:?}", summary.failures);
            assert!(summary.pass > 0, "{statement} verified nothing");
        }
    }

    #[test]
    fn sampled_statements_hold_on_b4() {
        let opts = SweepOptions {
            scope: SweepScope::Sample,
            samples: 60,
            ..SweepOptions::default()
        };
        for statement in StatementId::ALL {
            let summary = sweep("B4", statement, &opts);
            assert_eq!(summary.fail, 0, "{statement}: {:?}", summary.failures);
        }
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let opts = SweepOptions {
            scope: SweepScope::Sample,
            samples: 40,
            ..SweepOptions::default()
        };
        let a = sweep("B3", StatementId::FinestDescentUnion, &opts);
        let b = sweep("B3", StatementId::FinestDescentUnion, &opts);
        assert_eq!(a.pass, b.pass);
        assert_eq!(a.skip, b.skip);
    }

    #[test]
    fn statements_hold_on_truncated_infinite_ball() {
        let sys = CoxeterSystem::from_named(NamedType::parse("I2(inf)").unwrap());
        let g = sys.enumerated(8);
        assert!(!g.is_complete());
        let sweeper = Sweeper::new(&sys, &g);
        for statement in StatementId::ALL {
            let summary = sweeper.run(statement, &SweepOptions::default()).unwrap();
            assert_eq!(summary.fail, 0, "{statement}: {:?}", summary.failures);
            assert!(summary.pass > 0, "{statement}");
        }
    }
}
