//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Run with `cargo test -p coxkit --test acceptance`.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use coxkit::theorems::{
    verify_boolean_quotient, verify_descent_union, verify_finest_union,
    verify_inversion_difference, verify_reduced_word_union,
};
use coxkit::{
    CoxeterSystem, EnumeratedGroup, GeneratorSet, GroupElement, Memo, NamedType, OracleModel,
    StatementId, SweepOptions, SweepScope, Sweeper,
};

fn named(name: &str) -> NamedType {
    NamedType::parse(name).unwrap()
}

fn system(name: &str) -> CoxeterSystem {
    CoxeterSystem::from_named(named(name))
}

fn finish(criterion: usize, what: &str, ok: bool, started: Instant) -> bool {
    let status = if ok { "PASS" } else { "FAIL" };
    println!(
        "acceptance criterion {criterion} ({what}): {status} [{:.2?}]",
        started.elapsed()
    );
    ok
}

fn refl_set(sys: &CoxeterSystem, words: &[&str]) -> coxkit::ReflectionSet {
    words.iter().map(|w| sys.parse_element(w).unwrap()).collect()
}

#[test]
fn criterion_1_b4_golden_example() {
    let started = Instant::now();
    let b4 = system("B4");
    let memo = Memo::new(&b4);
    let u = b4.parse_element("s2 s3 s2").unwrap();
    let v = b4.parse_element("s2 s3 s2 s1 s0 s2 s3").unwrap();

    let uv = b4.multiply(&b4.inverse(&u).unwrap(), &v).unwrap();
    let mut ok = uv.to_string() == "s1 s0 s2 s3";
    ok &= b4.right_descents(&v).unwrap() == b4.parse_mask("s0,s2,s3").unwrap();
    ok &= b4.right_descents(&uv).unwrap() == b4.parse_mask("s0,s3").unwrap();

    // The four inversion-set bullets, exact set equality on canonical forms.
    ok &= b4.left_inversions(&u).unwrap() == refl_set(&b4, &["s2", "s3", "s2 s3 s2"]);
    let q3 = b4.project(&v, b4.parse_mask("~s3").unwrap()).unwrap().quotient;
    ok &= q3 == b4.parse_element("s1 s2 s3").unwrap();
    ok &= b4.left_inversions(&q3).unwrap()
        == refl_set(&b4, &["s1", "s1 s2 s1", "s1 s2 s3 s2 s1"]);
    let q0 = b4.project(&v, b4.parse_mask("~s0").unwrap()).unwrap().quotient;
    ok &= q0 == b4.parse_element("s3 s2 s1 s0").unwrap();
    ok &= b4.left_inversions(&q0).unwrap()
        == refl_set(&b4, &["s3", "s2 s3 s2", "s1 s2 s3 s2 s1", "s3 s2 s1 s0 s1 s2 s3"]);
    ok &= b4.left_inversions(&v).unwrap()
        == refl_set(
            &b4,
            &[
                "s1",
                "s2",
                "s3",
                "s1 s2 s1",
                "s2 s3 s2",
                "s1 s2 s3 s2 s1",
                "s3 s2 s1 s0 s1 s2 s3",
            ],
        );

    // The full identity on the paper instance, both the two-mask family and
    // the finest family.
    let family = [b4.parse_mask("~s0").unwrap(), b4.parse_mask("~s3").unwrap()];
    ok &= verify_descent_union(&memo, &u, &v, &family).unwrap().holds;
    ok &= verify_finest_union(&memo, &u, &v).unwrap().holds;

    let elapsed = started.elapsed();
    let ok = ok && elapsed < Duration::from_secs(1);
    assert!(finish(1, "B4 golden example", ok, started));
}

#[test]
fn criterion_2_union_formula_exhaustive() {
    let started = Instant::now();
    let mut ok = true;
    let groups = ["A3", "B3", "I2(3)", "I2(4)", "I2(5)", "I2(6)", "I2(7)", "I2(8)", "H3"];
    let opts = SweepOptions { scope: SweepScope::Exhaustive, ..SweepOptions::default() };
    for name in groups {
        let sys = system(name);
        let g = sys.enumerated(40);
        let sweeper = Sweeper::new(&sys, &g);
        for statement in [StatementId::FinestDescentUnion, StatementId::DescentUnion] {
            let summary = sweeper.run(statement, &opts).unwrap();
            if summary.fail != 0 || summary.pass == 0 {
                eprintln!("{name} {statement}: {:?}", summary.failures);
                ok = false;
            }
        }
    }
    let ok = ok && started.elapsed() < Duration::from_secs(120);
    assert!(finish(2, "union formula exhaustive", ok, started));
}

#[test]
fn criterion_3_join_decomposition_exhaustive() {
    let started = Instant::now();
    let mut ok = true;
    let opts = SweepOptions { scope: SweepScope::Exhaustive, ..SweepOptions::default() };
    for name in ["A3", "B3", "H3", "B4"] {
        let sys = system(name);
        let g = sys.enumerated(40);
        assert!(g.is_complete());
        let summary = Sweeper::new(&sys, &g)
            .run(StatementId::JoinDecomposition, &opts)
            .unwrap();
        if summary.fail != 0 || summary.pass != g.len() as u64 {
            eprintln!("{name}: {:?}", summary.failures);
            ok = false;
        }
    }
    let ok = ok && started.elapsed() < Duration::from_secs(300);
    assert!(finish(3, "join decomposition exhaustive", ok, started));
}

#[test]
fn criterion_4_reduced_word_union() {
    let started = Instant::now();
    let mut ok = true;

    // The worked reduced expression in B4.
    let b4 = system("B4");
    let memo = Memo::new(&b4);
    let word = b4.parse_word("s2 s3 s2 s1 s0 s2 s3").unwrap();
    ok &= verify_reduced_word_union(&memo, &word).unwrap().holds;

    // 200 seeded random reduced words per catalog group.
    let groups = [
        "A2", "A3", "A4", "B2", "B3", "B4", "D4", "I2(3)", "I2(5)", "I2(8)", "I2(inf)", "H3",
        "H4", "F4", "E6",
    ];
    let opts = SweepOptions {
        scope: SweepScope::Sample,
        samples: 200,
        ..SweepOptions::default()
    };
    for name in groups {
        // Inversions of length-40 words are up to 79 letters long before
        // normalization, so give the engine headroom above the ball cap.
        let sys = system(name).with_length_cap(168);
        let g = sys.enumerated(40);
        let summary = Sweeper::new(&sys, &g)
            .run(StatementId::ReducedWordUnion, &opts)
            .unwrap();
        if summary.fail != 0 || summary.pass != 200 {
            eprintln!("{name}: {:?}", summary.failures);
            ok = false;
        }
    }
    assert!(finish(4, "reduced-word union", ok, started));
}

#[test]
fn criterion_5_quotient_compatibility_exhaustive() {
    let started = Instant::now();
    let mut ok = true;
    let opts = SweepOptions { scope: SweepScope::Exhaustive, ..SweepOptions::default() };
    for name in ["A3", "B3"] {
        let sys = system(name);
        let g = sys.enumerated(40);
        let summary = Sweeper::new(&sys, &g)
            .run(StatementId::QuotientCompatibility, &opts)
            .unwrap();
        if summary.fail != 0 || summary.pass == 0 {
            eprintln!("{name}: {:?}", summary.failures);
            ok = false;
        }
    }
    let ok = ok && started.elapsed() < Duration::from_secs(600);
    assert!(finish(5, "quotient compatibility exhaustive", ok, started));
}

#[test]
fn criterion_6_boolean_quotient_poset() {
    let started = Instant::now();
    let mut ok = true;
    for name in ["A3", "B3"] {
        let sys = system(name);
        let g = sys.enumerated(40);
        let memo = Memo::new(&sys);
        for w in g.elements() {
            let k = sys.right_descents(w).unwrap().complement(sys.rank());
            let report = verify_boolean_quotient(&memo, w, k).unwrap();
            if !report.holds {
                eprintln!("{name} {}: {:?}", report.instance, report.witness);
                ok = false;
            }
        }
    }
    assert!(finish(6, "Boolean quotient poset", ok, started));
}

fn oracle_equivalence(
    sys: &CoxeterSystem,
    g: &EnumeratedGroup,
    model: OracleModel,
    pairs: &[(u32, u32)],
) -> bool {
    let mut ok = true;
    for w in g.elements() {
        let image = model.map(w);
        ok &= image.length() == w.length();
        ok &= image.right_descents() == sys.right_descents(w).unwrap();
        ok &= image.left_descents() == sys.left_descents(w).unwrap();
        ok &= sys.right_inversions(w).unwrap().len() == w.length();
        ok &= model.map(&sys.inverse(w).unwrap()) == image.inverse();
    }
    for &(i, j) in pairs {
        let (a, b) = (g.element(i), g.element(j));
        let (ia, ib) = (model.map(a), model.map(b));
        // Products: the engine product maps to the oracle composition.
        let engine = sys.multiply(a, b).unwrap();
        ok &= model.map(&engine) == ia.compose(&ib);
        // Bruhat order agreement.
        ok &= sys.bruhat_leq(a, b).unwrap() == ia.bruhat_leq(&ib);
    }
    ok
}

#[test]
fn criterion_7_oracle_equivalence() {
    let started = Instant::now();
    let mut ok = true;
    // Exhaustive on A1..A4 and B2..B3: all elements, all ordered pairs.
    for name in ["A1", "A2", "A3", "A4", "B2", "B3"] {
        let ty = named(name);
        let sys = CoxeterSystem::from_named(ty);
        let g = sys.enumerated(40);
        let model = OracleModel::for_type(ty).unwrap();
        let n = g.len() as u32;
        let pairs: Vec<(u32, u32)> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        if !oracle_equivalence(&sys, &g, model, &pairs) {
            eprintln!("oracle disagreement in {name}");
            ok = false;
        }
    }
    // 1000 seeded samples in B4.
    let ty = named("B4");
    let sys = CoxeterSystem::from_named(ty);
    let g = sys.enumerated(40);
    let model = OracleModel::for_type(ty).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let n = g.len() as u32;
    let pairs: Vec<(u32, u32)> =
        (0..1000).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    if !oracle_equivalence(&sys, &g, model, &pairs) {
        eprintln!("oracle disagreement in B4 samples");
        ok = false;
    }
    assert!(finish(7, "oracle equivalence", ok, started));
}

fn parabolic_members(g: &EnumeratedGroup, mask: GeneratorSet) -> Vec<GroupElement> {
    g.elements()
        .iter()
        .filter(|w| w.normal_form().iter().all(|s| mask.contains(*s)))
        .cloned()
        .collect()
}

#[test]
fn criterion_8_property_suites() {
    let started = Instant::now();
    let mut ok = true;
    let groups = ["A3", "B3", "B4", "D4", "H3", "I2(6)", "I2(inf)"];
    for name in groups {
        let mut sys = system(name);
        let infinite = sys.matrix().has_infinite_bond();
        if infinite {
            // Inversions and conjugates of ball elements are up to four
            // times the ball radius long.
            sys = sys.with_length_cap(160);
        }
        let g = sys.enumerated(if infinite { 20 } else { 40 });
        let memo = Memo::new(&sys);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let n = g.len() as u32;
        let full = sys.full_mask();
        let masks: Vec<GeneratorSet> = full
            .subsets()
            .filter(|m| !(infinite && *m == full))
            .collect();
        for case in 0..500 {
            let fail = |what: &str| {
                eprintln!("{name} case {case}: {what} failed");
            };

            // eq0: inversion symmetric difference.
            let x = g.element(rng.gen_range(0..n)).clone();
            let y = g.element(rng.gen_range(0..n)).clone();
            if !verify_inversion_difference(&memo, &x, &y).unwrap().holds {
                fail("eq0");
                ok = false;
            }

            // eq3: T_L(w^J) = T_L(w) \ w W_J w^-1.
            let w = g.element(rng.gen_range(0..n)).clone();
            let j = masks[rng.gen_range(0..masks.len())];
            let quotient = memo.quotient(&w, j).unwrap();
            let tq = memo.left_inversions(&quotient).unwrap();
            let tw = memo.left_inversions(&w).unwrap();
            let mut conjugates = coxkit::ReflectionSet::new();
            for x in parabolic_members(&g, j) {
                conjugates.insert(memo.conjugate(&w, &x).unwrap());
            }
            let expected: coxkit::ReflectionSet =
                tw.iter().filter(|t| !conjugates.contains(t)).cloned().collect();
            if *tq != expected {
                fail("eq3");
                ok = false;
            }

            // Projection composition: I ⊆ J implies P^J ∘ P^I = P^J.
            let big = masks[rng.gen_range(0..masks.len())];
            let small: GeneratorSet = big
                .iter()
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            let through = memo
                .quotient(&memo.quotient(&w, small).unwrap(), big)
                .unwrap();
            if through != memo.quotient(&w, big).unwrap() {
                fail("projection composition");
                ok = false;
            }

            // |T_L(w)| = l(w).
            if tw.len() != w.length() {
                fail("inversion count");
                ok = false;
            }

            // Dual weak-order implementations agree.
            let u = g.element(rng.gen_range(0..n)).clone();
            let v = g.element(rng.gen_range(0..n)).clone();
            if sys.weak_leq(&u, &v).unwrap() != sys.weak_leq_by_inversions(&u, &v).unwrap() {
                fail("weak order dual agreement");
                ok = false;
            }

            // Deodhar criterion matches the Bruhat recursion.
            if sys.deodhar_leq(&u, &v).unwrap() != sys.bruhat_leq(&u, &v).unwrap() {
                fail("deodhar");
                ok = false;
            }
        }
    }
    assert!(finish(8, "property suites", ok, started));
}

#[test]
fn criterion_9_numerical_robustness() {
    let started = Instant::now();
    let mut ok = true;
    let groups = [
        "A1", "A2", "A3", "A4", "A5", "A6",
        "B2", "B3", "B4", "B5", "B6",
        "D4", "D5", "D6",
        "I2(3)", "I2(4)", "I2(5)", "I2(6)", "I2(7)", "I2(8)", "I2(inf)",
        "H3", "H4", "F4", "E6",
    ];
    for name in groups {
        let ty = named(name);
        let sys = CoxeterSystem::from_named(ty);
        let g = sys.enumerated(40);
        match ty.longest_length() {
            Some(longest) if longest <= 40 => {
                if !g.is_complete() || g.len() as u64 != ty.order().unwrap() {
                    eprintln!("{name}: expected the whole group, got {} elements", g.len());
                    ok = false;
                }
            }
            _ => {
                if g.is_complete() {
                    eprintln!("{name}: expected a truncated ball at cap 40");
                    ok = false;
                }
            }
        }
        for w in g.elements() {
            for s in sys.generators() {
                if coxkit::geometry::sign_of(&sys.root_image(w, s)).is_err() {
                    eprintln!("{name}: degenerate sign at w={w}, s={s}");
                    ok = false;
                }
            }
        }
    }
    assert!(finish(9, "numerical robustness", ok, started));
}
