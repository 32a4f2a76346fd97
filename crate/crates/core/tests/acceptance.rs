//! Acceptance criteria. Every criterion prints one PASS or FAIL line. The
//! process exits nonzero only when an outcome differs from the one recorded
//! in `EXPECTED_FAIL`: criteria 5, 6 and 9 concern structural statements that the
//! computed data contradict, and for those the check asserts that the
//! failure is the documented one rather than something new.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tangle3::corpus::{self, CorpusConfig, CorpusReport};
use tangle3::explorer::{check_tree, Edge, Vertex};
use tangle3::minimization::{classify_regime, plateau_cached, MoveCache, Regime};
use tangle3::oracle::{bfs_class, coordinate_box, enumerate_normal, planar, sample_valid};
use tangle3::{
    dehn_of, descend_e1, explore, is_minimal_e1, neighbors, normalize, realize, representative, ArcSystem, Ball,
    DehnCoordinate, Error, Variant,
};

struct Outcome {
    pass: bool,
    /// For an expected failure: whether it fails in the documented way.
    documented: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: String) -> Self {
        Outcome {
            pass,
            documented: false,
            detail,
        }
    }
}

const EXPECTED_FAIL: [u8; 3] = [5, 6, 9];

fn normal(c: &DehnCoordinate) -> ArcSystem {
    normalize(&realize(c).unwrap()).unwrap()
}

fn c1_round_trip() -> Outcome {
    let mut bad = 0;
    let mut keys = HashSet::new();
    let mut n = 0;
    for c in coordinate_box(10, |_| 3) {
        let Ok(s) = realize(&c) else { continue };
        n += 1;
        if dehn_of(&s) != c {
            bad += 1;
        }
        keys.insert(planar::sorted_keys(&s));
    }
    // every planar system with few line crossings comes from some coordinate
    let drawn = planar::enumerate(6);
    let realized: HashSet<_> = coordinate_box(22, |_| 5)
        .iter()
        .filter_map(|c| realize(c).ok())
        .filter(|s| planar::line_crossings(s) <= 6)
        .map(|s| planar::sorted_keys(&s))
        .collect();
    let pass = bad == 0 && keys.len() == n && drawn == realized;
    Outcome::new(
        pass,
        format!(
            "{n} coordinates, {bad} round-trip failures, {} distinct systems; planar {} vs realized {}",
            keys.len(),
            drawn.len(),
            realized.len()
        ),
    )
}

fn c2_completions(r: &CorpusReport) -> Outcome {
    let t = &r.tripwires;
    let pass = t.completions_over_three == 0 && t.brute_mismatches == 0 && t.oracle_box_edge == 0 && r.brute_checked > 0;
    Outcome::new(
        pass,
        format!(
            "{} (system, arc) pairs, sizes {:?}, {} over three, {} oracle mismatches, {} near the oracle edge",
            r.brute_checked, r.completion_sizes, t.completions_over_three, t.brute_mismatches, t.oracle_box_edge
        ),
    )
}

fn c3_involution(r: &CorpusReport) -> Outcome {
    let t = &r.tripwires;
    Outcome::new(
        t.involution_failures == 0 && t.prediction_mismatches == 0 && r.normal > 0,
        format!(
            "{} systems, {} involution failures, {} word prediction mismatches",
            r.normal, t.involution_failures, t.prediction_mismatches
        ),
    )
}

fn c4_descent(r: &CorpusReport) -> Outcome {
    let mut bad = 0;
    let mut vertices = 0;
    for c in sample_valid(12, 3, 200, 5) {
        let s = normal(&c);
        let ball = bfs_class(&s, 10);
        vertices += ball.len();
        let least = ball.iter().map(|(c, _)| realize(c).unwrap().weight1()).min().unwrap();
        if descend_e1(&s).weight1() != least {
            bad += 1;
        }
    }
    let multi = r.tripwires.multiple_decreasing;
    Outcome::new(
        multi == 0 && bad == 0,
        format!("{multi} corpus vertices with several decreasing moves; 200 seeds, {vertices} ball vertices, {bad} descents above the ball minimum"),
    )
}

fn c5_plateaus() -> Outcome {
    let mut systems: Vec<ArcSystem> = enumerate_normal(8, 3).into_iter().filter(is_minimal_e1).collect();
    systems.extend(sample_valid(20, 8, 3000, 1).iter().map(|c| descend_e1(&normal(c))));
    let mut hits: BTreeMap<Regime, usize> = BTreeMap::new();
    let mut misses: BTreeMap<(Regime, bool), usize> = BTreeMap::new();
    let mut example = None;
    let mut seen = HashSet::new();
    for m in systems {
        let mut cache = MoveCache::new();
        let pl = plateau_cached(&m, 32, &mut cache).unwrap();
        let actual = pl.complete.then(|| pl.len());
        for x in &pl.members {
            if !seen.insert(x.dehn) {
                continue;
            }
            let Some(r) = classify_regime(x, &mut cache) else { continue };
            if r.predicted == actual {
                *hits.entry(r.regime).or_default() += 1;
            } else {
                *misses.entry((r.regime, pl.complete)).or_default() += 1;
                example.get_or_insert(x.dehn);
            }
        }
    }
    let covered = [Regime::Strict, Regime::EqualPair, Regime::EqualChain, Regime::TwoEqual]
        .iter()
        .all(|g| hits.get(g).copied().unwrap_or(0) >= 5);
    let pass = covered && misses.is_empty();
    let documented = covered && !misses.is_empty() && misses.keys().all(|&(g, complete)| g == Regime::TwoEqual && !complete);
    Outcome {
        pass,
        documented,
        detail: format!(
            "matches {hits:?}; mismatches (regime, plateau complete) {misses:?}{}",
            example.map(|e| format!(", e.g. {e}")).unwrap_or_default()
        ),
    }
}

fn c6_first_window_twists() -> Outcome {
    let mut systems: Vec<ArcSystem> = enumerate_normal(8, 3);
    systems.extend(sample_valid(20, 8, 300, 3).iter().map(normal));
    let (mut t6, mut t6_bad, mut t61, mut t61_bad) = (0, 0, 0, 0);
    let mut example = None;
    for s in systems.iter().filter(|s| is_minimal_e1(s)) {
        let w1 = &s.words[0];
        let missing: Vec<u8> = (1..=3).filter(|l| !w1.contains(l)).collect();
        if s.dehn.p[0] > 0 && missing.len() == 1 {
            // moves of the two arcs meeting the first window that keep p1
            let mut dq: BTreeMap<u8, Vec<i64>> = BTreeMap::new();
            for n in neighbors(s) {
                if n.arc != missing[0] && n.result.dehn.p[0] == s.dehn.p[0] {
                    dq.entry(n.arc).or_default().push(n.result.dehn.q[0] - s.dehn.q[0]);
                }
            }
            let d: Vec<&Vec<i64>> = dq.values().collect();
            let ok = d.len() == 2 && d.iter().all(|v| v.len() == 1 && v[0].abs() == 1) && d[0][0] == -d[1][0];
            t6 += 1;
            if !ok {
                t6_bad += 1;
                example.get_or_insert(s.dehn);
            }
        }
        if s.dehn.p[0] == 0 && s.dehn != DehnCoordinate::INFINITY {
            let pl = tangle3::minimization::plateau_within(s, 16).unwrap();
            let sum = s.dehn.q[1] + s.dehn.q[2];
            t61 += 1;
            if !pl.members.iter().all(|m| m.dehn.p[1] == m.dehn.p[2] && m.dehn.q[1] + m.dehn.q[2] == sum) {
                t61_bad += 1;
            }
        }
    }
    Outcome {
        pass: t6_bad == 0 && t61_bad == 0,
        documented: t6_bad > 0 && t61_bad == 0 && t61 > 0,
        detail: format!(
            "q1 steps: {t6_bad} of {t6} minimal systems are exceptions{}; empty first window: {t61_bad} of {t61}",
            example.map(|e| format!(" (e.g. {e})")).unwrap_or_default()
        ),
    }
}

fn c7_trees() -> Outcome {
    let mut cycles = 0;
    let mut vertices = 0;
    for c in sample_valid(12, 3, 100, 7) {
        let b = explore(&realize(&c).unwrap(), 6).unwrap();
        vertices += b.vertices.len();
        if !b.is_tree() {
            cycles += 1;
        }
    }
    // a triangle must trip the CLI's cycle check
    let v = |k: i64| Vertex {
        coordinate: [k, 0, 0, 0, 0, 0],
        depth: 0,
        weight1: 0,
        total_weight: 0,
    };
    let e = |from, to| Edge {
        from,
        to,
        arc: 1,
        variant: Variant::Standard,
    };
    let triangle = Ball {
        seed: [0; 6],
        radius: 1,
        vertices: vec![v(0), v(2), v(4)],
        edges: vec![e(0, 1), e(1, 2), e(0, 2)],
    };
    let code = match check_tree(&triangle) {
        Err(err @ Error::Tripwire(_)) => tangle3::cli::exit_code(&err),
        _ => 0,
    };
    Outcome::new(
        cycles == 0 && code == tangle3::cli::EXIT_TRIPWIRE,
        format!("100 balls of radius 6, {vertices} vertices, {cycles} with a cycle; cycle exit code {code}"),
    )
}

fn c8_representatives() -> Outcome {
    let seeds = sample_valid(12, 3, 80, 11);
    let mut pool: Vec<(DehnCoordinate, usize)> = Vec::new();
    let mut reps: HashMap<DehnCoordinate, DehnCoordinate> = HashMap::new();
    let mut inconstant = 0;
    for (k, c) in seeds.iter().enumerate() {
        let ball = explore(&realize(c).unwrap(), 3).unwrap();
        let mut here = BTreeSet::new();
        for v in &ball.vertices {
            let x = DehnCoordinate::from_flat(v.coordinate).unwrap();
            let r = *reps
                .entry(x)
                .or_insert_with(|| representative(&realize(&x).unwrap()).unwrap().representative);
            here.insert(r);
            pool.push((x, k));
        }
        if here.len() != 1 {
            inconstant += 1;
        }
    }
    // certificates: a shared ball proves equivalence, different minimal first
    // weights prove the converse
    let floor: HashMap<DehnCoordinate, u64> = reps.keys().map(|x| (*x, descend_e1(&realize(x).unwrap()).weight1())).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut certified, mut disagree) = (0usize, 0usize);
    for _ in 0..40_000 {
        let (x, a) = pool[rng.gen_range(0..pool.len())];
        let (y, b) = pool[rng.gen_range(0..pool.len())];
        let same = reps[&x] == reps[&y];
        if a == b {
            certified += 1;
            disagree += usize::from(!same);
        } else if floor[&x] != floor[&y] {
            certified += 1;
            disagree += usize::from(same);
        }
    }
    Outcome::new(
        inconstant == 0 && disagree == 0 && certified >= 10_000,
        format!(
            "80 balls of radius 3, {} vertices, {inconstant} with several representatives; {certified} certified pairs, {disagree} disagreements",
            reps.len()
        ),
    )
}

fn c9_claims(r: &CorpusReport) -> Outcome {
    let c = &r.claims;
    Outcome {
        pass: c.total() == 0,
        documented: r.tripwires.total() == 0 && c.second_moves_at_minimal > 0 && c.not_unique_by_rule <= 1,
        detail: format!(
            "not unique by rule {}, second moves at minimal {}, second after second {}, both moves not increasing {}",
            c.not_unique_by_rule, c.second_moves_at_minimal, c.second_after_second, c.both_moves_not_increasing
        ),
    }
}

fn main() {
    // `cargo test` passes harness flags such as `--nocapture`; only a name
    // filter is honoured
    let filter: Option<u8> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut corpus_report = None;
    let mut report = || corpus_report.get_or_insert_with(|| corpus::run(&CorpusConfig::default())).clone();
    let names = [
        "round trip and distinct systems",
        "completions bounded and match the brute force",
        "involution and window-word prediction",
        "unique descent and ball minimum",
        "plateau counts per regime",
        "first-window twist steps",
        "balls are trees",
        "representative is a complete invariant",
        "structural tripwires",
    ];
    let mut unexpected = Vec::new();
    for (k, name) in names.iter().enumerate() {
        let id = k as u8 + 1;
        if filter.is_some_and(|f| f != id) {
            continue;
        }
        let t = Instant::now();
        let o = match id {
            1 => c1_round_trip(),
            2 => c2_completions(&report()),
            3 => c3_involution(&report()),
            4 => c4_descent(&report()),
            5 => c5_plateaus(),
            6 => c6_first_window_twists(),
            7 => c7_trees(),
            8 => c8_representatives(),
            _ => c9_claims(&report()),
        };
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {id}: {name}: {} [{:.1?}]", o.detail, t.elapsed());
        let expected_fail = EXPECTED_FAIL.contains(&id);
        if o.pass == expected_fail || (expected_fail && !o.documented) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        println!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
    println!("all outcomes as recorded; criteria {EXPECTED_FAIL:?} fail as documented");
}
