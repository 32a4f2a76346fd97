//! Corpus run: every normal coordinate in a small box plus seeded samples,
//! checked against the brute-force oracles.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::canonical::representative;
use crate::jump::{cyclic_eq, has_second_move, neighbors, predict_window_words, same_pattern, standard_neighbor, Variant};
use crate::minimization::{decreasing_neighbors, is_minimal_e1};
use crate::normal_form::normalize;
use crate::oracle::{brute_completions, enumerate_normal, sample_valid, CompletionIndex};
use crate::par;
use crate::surface::{realize, ArcSystem, DehnCoordinate};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusConfig {
    pub bound: u32,
    pub qbound: i64,
    pub samples: usize,
    pub sample_bound: u32,
    pub sample_qbound: i64,
    pub seed: u64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            bound: 8,
            qbound: 3,
            samples: 200,
            sample_bound: 12,
            sample_qbound: 3,
            seed: 0,
        }
    }
}

/// Counts collected over the corpus. `tripwires` are failures of properties
/// the implementation itself depends on; `claims` are failures of structural
/// statements about minimal systems and jump moves that the classification
/// is expected to satisfy; `stats` is descriptive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub config: Option<CorpusConfig>,
    pub normal: usize,
    pub samples: usize,
    pub completion_sizes: BTreeMap<usize, usize>,
    pub brute_checked: usize,
    pub tripwires: Tripwires,
    pub claims: Claims,
    pub stats: Stats,
    /// First few offending coordinates, per check.
    pub examples: BTreeMap<String, Vec<[i64; 6]>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tripwires {
    pub completions_over_three: usize,
    pub brute_mismatches: usize,
    /// Brute-force completions touching the edge of the oracle box.
    pub oracle_box_edge: usize,
    pub involution_failures: usize,
    pub prediction_mismatches: usize,
    pub multiple_decreasing: usize,
    /// Neighbours whose representative differs from their seed's.
    pub representative_mismatches: usize,
}

impl Tripwires {
    pub fn total(&self) -> usize {
        self.completions_over_three
            + self.brute_mismatches
            + self.oracle_box_edge
            + self.involution_failures
            + self.prediction_mismatches
            + self.multiple_decreasing
            + self.representative_mismatches
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Claims {
    /// The selection rule left a tie for the coordinate order to break.
    pub not_unique_by_rule: usize,
    pub second_moves_at_minimal: usize,
    /// After a second move on one arc, another arc has a second move.
    pub second_after_second: usize,
    /// Both moves of an arc exist but one does not raise the first weight.
    pub both_moves_not_increasing: usize,
}

impl Claims {
    pub fn total(&self) -> usize {
        self.not_unique_by_rule + self.second_moves_at_minimal + self.second_after_second + self.both_moves_not_increasing
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub branches: BTreeMap<String, usize>,
    pub plateau_incomplete: usize,
    pub minimal: usize,
}

impl CorpusReport {
    fn note(&mut self, check: &str, c: &DehnCoordinate) {
        let v = self.examples.entry(check.to_string()).or_default();
        if v.len() < 5 {
            v.push(c.flat());
        }
    }

    fn merge(&mut self, o: CorpusReport) {
        self.normal += o.normal;
        self.samples += o.samples;
        self.brute_checked += o.brute_checked;
        for (k, v) in o.completion_sizes {
            *self.completion_sizes.entry(k).or_default() += v;
        }
        let (t, u) = (&mut self.tripwires, o.tripwires);
        t.completions_over_three += u.completions_over_three;
        t.brute_mismatches += u.brute_mismatches;
        t.oracle_box_edge += u.oracle_box_edge;
        t.involution_failures += u.involution_failures;
        t.prediction_mismatches += u.prediction_mismatches;
        t.multiple_decreasing += u.multiple_decreasing;
        t.representative_mismatches += u.representative_mismatches;
        let (a, b) = (&mut self.claims, o.claims);
        a.not_unique_by_rule += b.not_unique_by_rule;
        a.second_moves_at_minimal += b.second_moves_at_minimal;
        a.second_after_second += b.second_after_second;
        a.both_moves_not_increasing += b.both_moves_not_increasing;
        let (a, b) = (&mut self.stats, o.stats);
        for (k, v) in b.branches {
            *a.branches.entry(k).or_default() += v;
        }
        a.plateau_incomplete += b.plateau_incomplete;
        a.minimal += b.minimal;
        for (k, v) in o.examples {
            let e = self.examples.entry(k).or_default();
            e.extend(v);
            e.truncate(5);
        }
    }
}

/// Checks on one normal system of the corpus box.
fn check_normal(s: &ArcSystem, index: &CompletionIndex) -> CorpusReport {
    let mut r = CorpusReport {
        normal: 1,
        ..Default::default()
    };
    for i in 1..=3u8 {
        let fast = crate::jump::completions(s, i);
        *r.completion_sizes.entry(fast.len()).or_default() += 1;
        if fast.len() > 3 {
            r.tripwires.completions_over_three += 1;
            r.note("completions_over_three", &s.dehn);
        }
        let slow = brute_completions(index, s, i);
        r.brute_checked += 1;
        if slow.iter().map(|t| t.dehn).ne(fast.iter().map(|t| t.dehn)) {
            r.tripwires.brute_mismatches += 1;
            r.note("brute_mismatches", &s.dehn);
        }
        if slow.iter().any(|t| !index.well_inside(&t.dehn)) {
            r.tripwires.oracle_box_edge += 1;
            r.note("oracle_box_edge", &s.dehn);
        }
    }
    let moves = neighbors(s);
    for i in 1..=3u8 {
        let mine: Vec<_> = moves.iter().filter(|n| n.arc == i).collect();
        if mine.len() == 2 && mine.iter().any(|n| n.result.weight1() <= s.weight1()) {
            r.claims.both_moves_not_increasing += 1;
            r.note("both_moves_not_increasing", &s.dehn);
        }
    }
    for n in &moves {
        if n.variant == Variant::Second && (1..=3).any(|j| j != n.arc && has_second_move(&n.result, j)) {
            r.claims.second_after_second += 1;
            r.note("second_after_second", &s.dehn);
        }
    }
    for n in moves {
        if n.variant == Variant::Standard && standard_neighbor(&n.result, n.arc).map(|b| b.dehn) != Some(s.dehn) {
            r.tripwires.involution_failures += 1;
            r.note("involution_failures", &s.dehn);
        }
        if !same_pattern(&n.result.words, &s.words) {
            let ok = predict_window_words(s, n.arc)
                .map(|p| (0..3).all(|m| cyclic_eq(&p[m], &n.result.words[m])))
                .unwrap_or(false);
            if !ok {
                r.tripwires.prediction_mismatches += 1;
                r.note("prediction_mismatches", &s.dehn);
            }
        }
    }
    if decreasing_neighbors(s).len() > 1 {
        r.tripwires.multiple_decreasing += 1;
        r.note("multiple_decreasing", &s.dehn);
    }
    if is_minimal_e1(s) {
        r.stats.minimal += 1;
        if neighbors(s).iter().any(|n| n.variant == Variant::Second) {
            r.claims.second_moves_at_minimal += 1;
            r.note("second_moves_at_minimal", &s.dehn);
        }
    }
    classify(s, &mut r);
    r
}

fn classify(s: &ArcSystem, r: &mut CorpusReport) -> Option<DehnCoordinate> {
    let rep = representative(s).ok()?;
    *r.stats.branches.entry(rep.branch.to_string()).or_default() += 1;
    if !rep.plateau_complete {
        r.stats.plateau_incomplete += 1;
    }
    if !rep.unique_by_rule {
        r.claims.not_unique_by_rule += 1;
        r.note("not_unique_by_rule", &s.dehn);
    }
    Some(rep.representative)
}

/// Representative of a sampled seed against those of its neighbours.
fn check_sample(c: &DehnCoordinate) -> CorpusReport {
    let mut r = CorpusReport {
        samples: 1,
        ..Default::default()
    };
    let Ok(s) = realize(c).and_then(|s| normalize(&s)) else {
        return r;
    };
    let Some(mine) = classify(&s, &mut r) else {
        return r;
    };
    for n in neighbors(&s) {
        if representative(&n.result).map(|x| x.representative).ok() != Some(mine) {
            r.tripwires.representative_mismatches += 1;
            r.note("representative_mismatches", c);
        }
    }
    r
}

pub fn run(config: &CorpusConfig) -> CorpusReport {
    let index = CompletionIndex::new(config.bound + 6, 3);
    let systems = enumerate_normal(config.bound, config.qbound);
    let seeds = sample_valid(config.sample_bound, config.sample_qbound, config.samples, config.seed);
    let mut report = CorpusReport {
        config: Some(config.clone()),
        ..Default::default()
    };
    for part in par::map(&systems, |s| check_normal(s, &index)) {
        report.merge(part);
    }
    for part in par::map(&seeds, check_sample) {
        report.merge(part);
    }
    report
}
