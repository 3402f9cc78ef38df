//! Cross-route consistency: the same quantities computed along independent
//! paths must agree, exhaustively on small groups.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use coxkit::{
    Bond, CoxeterSystem, EnumeratedGroup, GeneratorId, Memo, NamedType, OracleModel, Word,
};

fn system(name: &str) -> CoxeterSystem {
    CoxeterSystem::from_named(NamedType::parse(name).unwrap())
}

/// Applies one random nil/braid rewrite to a word, preserving the element.
fn random_move(sys: &CoxeterSystem, word: &mut Vec<GeneratorId>, rng: &mut ChaCha8Rng) {
    match rng.gen_range(0..3) {
        // Insert s s anywhere.
        0 => {
            let i = rng.gen_range(0..=word.len());
            let s = GeneratorId::new(rng.gen_range(0..sys.rank()));
            word.splice(i..i, [s, s]);
        }
        // Delete an adjacent equal pair, if one exists.
        1 => {
            let spots: Vec<usize> =
                (0..word.len().saturating_sub(1)).filter(|&i| word[i] == word[i + 1]).collect();
            if !spots.is_empty() {
                let i = spots[rng.gen_range(0..spots.len())];
                word.drain(i..i + 2);
            }
        }
        // Apply a braid relation at a random alternating run.
        _ => {
            for _ in 0..8 {
                if word.len() < 2 {
                    break;
                }
                let i = rng.gen_range(0..word.len() - 1);
                let (s, t) = (word[i], word[i + 1]);
                if s == t {
                    continue;
                }
                let Bond::Finite(m) = sys.matrix().bond(s, t) else { continue };
                let m = m as usize;
                if i + m > word.len() {
                    continue;
                }
                let alternating =
                    (0..m).all(|k| word[i + k] == if k % 2 == 0 { s } else { t });
                if !alternating {
                    continue;
                }
                for k in 0..m {
                    word[i + k] = if k % 2 == 0 { t } else { s };
                }
                break;
            }
        }
    }
}

#[test]
fn normal_form_is_invariant_under_word_rewrites() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in ["A3", "B3", "B4", "H3", "I2(6)", "I2(inf)"] {
        let sys = system(name);
        let cap = if name == "I2(inf)" { 10 } else { 40 };
        let g = sys.enumerated(cap);
        for _ in 0..120 {
            let w = &g.elements()[rng.gen_range(0..g.len())];
            let mut word = w.normal_form().to_vec();
            for _ in 0..8 {
                random_move(&sys, &mut word, &mut rng);
            }
            let renorm = sys.normalize(&Word::new(word)).unwrap();
            assert_eq!(&renorm, w, "{name}");
        }
    }
}

#[test]
fn exchange_sanity_length_changes_by_exactly_one() {
    for name in ["A3", "B3", "H3"] {
        let sys = system(name);
        for w in sys.enumerate(40) {
            for s in sys.generators() {
                let ws = sys.multiply(&w, &sys.generator_element(s)).unwrap();
                let descent = sys.is_right_descent(&w, s).unwrap();
                if descent {
                    assert_eq!(ws.length() + 1, w.length(), "{name}: {w} * {s}");
                } else {
                    assert_eq!(ws.length(), w.length() + 1, "{name}: {w} * {s}");
                }
            }
        }
    }
}

#[test]
fn length_additivity_iff_disjoint_inversions() {
    for name in ["A3", "B3"] {
        let sys = system(name);
        let g = sys.enumerated(40);
        let memo = Memo::new(&sys);
        for a in g.elements() {
            let tr_a = sys.right_inversions(a).unwrap();
            for b in g.elements() {
                let ab = sys.multiply(a, b).unwrap();
                let tl_b = memo.left_inversions(b).unwrap();
                let additive = ab.length() == a.length() + b.length();
                let disjoint = tr_a.intersection(&tl_b).is_empty();
                assert_eq!(additive, disjoint, "{name}: {a} * {b}");
                assert!(ab.length() <= a.length() + b.length());
                if additive {
                    // eq2: the symmetric difference is a disjoint union.
                    let tl_a = memo.left_inversions(a).unwrap();
                    let conj = memo.conjugate_set(a, &tl_b).unwrap();
                    assert!(tl_a.intersection(&conj).is_empty(), "{name}: {a} * {b}");
                }
            }
        }
    }
}

/// Reachability closure of the weak-order covers v -> vs (upward).
fn weak_close(g: &EnumeratedGroup, rank: usize) -> Vec<Vec<bool>> {
    let n = g.len();
    let mut leq = vec![vec![false; n]; n];
    // Elements are sorted by length, so a reverse sweep propagates
    // reachability from covers in one pass.
    for i in (0..n).rev() {
        leq[i][i] = true;
        for s in 0..rank {
            if let Some(j) = g.right_mul(i as u32, GeneratorId::new(s)) {
                if g.length_of(j) > g.length_of(i as u32) {
                    let row = leq[j as usize].clone();
                    for (k, reach) in row.iter().enumerate() {
                        if *reach {
                            leq[i][k] = true;
                        }
                    }
                }
            }
        }
    }
    leq
}

#[test]
fn weak_order_routes_agree_with_cover_closure() {
    for name in ["A3", "B3", "I2(3)", "I2(5)", "I2(8)", "H3"] {
        let sys = system(name);
        let g = sys.enumerated(40);
        let closure = weak_close(&g, sys.rank());
        let memo = Memo::new(&sys);
        let small = g.len() <= 50;
        for (i, u) in g.elements().iter().enumerate() {
            for (j, v) in g.elements().iter().enumerate() {
                let expect = closure[i][j];
                assert_eq!(sys.weak_leq(u, v).unwrap(), expect, "{name}: {u} vs {v}");
                let containment = if small {
                    sys.weak_leq_by_inversions(u, v).unwrap()
                } else {
                    memo.left_inversions(u)
                        .unwrap()
                        .is_subset(&memo.left_inversions(v).unwrap())
                };
                assert_eq!(containment, expect, "{name} containment: {u} vs {v}");
            }
        }
    }
}

#[test]
fn projections_are_bruhat_monotone() {
    for name in ["A3", "B3"] {
        let sys = system(name);
        let g = sys.enumerated(40);
        let memo = Memo::new(&sys);
        let masks: Vec<_> = sys.full_mask().subsets().collect();
        for u in g.elements() {
            for v in g.elements() {
                if !sys.bruhat_leq(u, v).unwrap() {
                    continue;
                }
                for &mask in &masks {
                    let pu = memo.quotient(u, mask).unwrap();
                    let pv = memo.quotient(v, mask).unwrap();
                    assert!(
                        sys.bruhat_leq(&pu, &pv).unwrap(),
                        "{name}: P^{{{mask}}} not monotone at {u} <= {v}"
                    );
                }
            }
        }
    }
}

#[test]
fn oracle_map_is_a_bijection() {
    for name in ["A3", "A4", "B3", "B4"] {
        let ty = NamedType::parse(name).unwrap();
        let sys = CoxeterSystem::from_named(ty);
        let g = sys.enumerated(40);
        let model = OracleModel::for_type(ty).unwrap();
        let images: std::collections::HashSet<_> =
            g.elements().iter().map(|w| model.map(w)).collect();
        assert_eq!(images.len() as u64, ty.order().unwrap(), "{name}");
    }
}

#[test]
fn inversion_counts_equal_length_exhaustively() {
    for name in ["A3", "B3", "B4", "D4", "H3", "I2(8)", "I2(inf)"] {
        let mut sys = system(name);
        let cap = if name == "I2(inf)" {
            sys = sys.with_length_cap(80);
            20
        } else {
            40
        };
        for w in sys.enumerate(cap) {
            let tl = sys.left_inversions(&w).unwrap();
            assert_eq!(tl.len(), w.length(), "{name}: {w}");
            for t in tl.iter() {
                assert_eq!(t.length() % 2, 1, "{name}: reflection {t} has even length");
                assert_eq!(&sys.inverse(t).unwrap(), t, "{name}: {t} is not an involution");
            }
        }
    }
}

#[test]
fn verifier_reports_are_deterministic() {
    let sys = system("B4");
    let u = sys.parse_element("s2 s3 s2").unwrap();
    let v = sys.parse_element("s2 s3 s2 s1 s0 s2 s3").unwrap();
    let run = || {
        let memo = Memo::new(&sys);
        coxkit::theorems::verify_finest_union(&memo, &u, &v).unwrap()
    };
    let a = run();
    let b = run();
    assert_eq!(a, b);
    let json = serde_json::to_string(&a).unwrap();
    assert!(json.contains("\"statement\":\"cor-2.2\""));
    assert!(json.contains("\"holds\":true"));
}
