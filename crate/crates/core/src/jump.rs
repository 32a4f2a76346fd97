//! Normal jump moves: replacing one arc of a normal system by another arc,
//! disjoint from the other two, such that the result is again normal.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::normal_form::is_normal;
use crate::search::{self, Query};
use crate::surface::{ArcSystem, Label};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Variant {
    Standard,
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpNeighbor {
    pub arc: Label,
    pub variant: Variant,
    pub result: ArcSystem,
}

/// Every normal system that shares the two arcs other than `i` with `s`,
/// `s` included, sorted by coordinate.
pub fn completions(s: &ArcSystem, i: Label) -> Vec<ArcSystem> {
    assert!((1..=3).contains(&i), "arc label out of range");
    let max_new: [u32; 3] = std::array::from_fn(|m| {
        // dots of the new arc never touch each other on a normal window
        let kept = s.words[m].iter().filter(|&&l| l != i).count() as u32;
        kept + 1
    });
    // the new arc either keeps the pattern or follows the window rules
    let words: [Vec<Vec<Label>>; 3] = std::array::from_fn(|m| {
        let old = s.words[m].clone();
        let new = predict_cyclic(&old, i);
        if cyclic_eq(&old, &new) {
            vec![old]
        } else {
            vec![old, new]
        }
    });
    let q = Query {
        source: s,
        label: i,
        max_new,
        free_turns: 0,
        words: Some(words),
    };
    search::sharing_systems(&q)
        .into_iter()
        .filter(is_normal)
        .collect()
}

/// Position of arc `i` among the arcs joining its endpoints in the
/// complement of the other two arcs.
///
/// That complement is an annulus, and the arcs joining two points of an
/// annulus form a sequence in which two arcs have disjoint interiors exactly
/// when they are neighbours. The index is the signed count of crossings with
/// a chord from one of the other arcs to the last, so it shifts by one per
/// step along the sequence.
pub fn twist_index(s: &ArcSystem, i: Label) -> i64 {
    let [j, k] = others(i);
    let x = s.arc(j).ends.0;
    let y = s.arc(k).ends.0;
    s.arc(i).lower_crossings(x, y)
}

fn others(i: Label) -> [Label; 2] {
    match i {
        1 => [2, 3],
        2 => [1, 3],
        _ => [1, 2],
    }
}

/// Picks the standard alternative among the moves of one arc.
fn assign_variants(s: &ArcSystem, alts: &[ArcSystem]) -> Vec<Variant> {
    match alts.len() {
        0 => Vec::new(),
        1 => vec![Variant::Standard],
        _ => {
            let same: Vec<bool> = alts.iter().map(|t| same_pattern(&t.words, &s.words)).collect();
            let first_standard = if same[0] != same[1] {
                same[0]
            } else {
                let (a, b) = (&alts[0], &alts[1]);
                (a.total_weight(), a.dehn) < (b.total_weight(), b.dehn)
            };
            let mut v = vec![Variant::Second; alts.len()];
            v[if first_standard { 0 } else { 1 }] = Variant::Standard;
            v
        }
    }
}

/// Two words are equal as cyclic words (the window is read around its
/// boundary circle).
pub fn cyclic_eq(a: &[Label], b: &[Label]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|k| a[k..].iter().chain(&a[..k]).eq(b.iter()))
}

/// Same intersection pattern with all three boundary circles.
pub fn same_pattern(a: &[Vec<Label>; 3], b: &[Vec<Label>; 3]) -> bool {
    (0..3).all(|m| cyclic_eq(&a[m], &b[m]))
}

/// Moves replacing arc `i` only: the completions whose arc `i` has interior
/// disjoint from the current one.
///
/// A move and its reverse carry the same variant. When `s` is an end of a
/// three-element completion set its single move inherits the label that the
/// middle element gives it.
pub fn arc_neighbors(s: &ArcSystem, i: Label) -> Vec<JumpNeighbor> {
    let all = completions(s, i);
    let index: Vec<i64> = all.iter().map(|t| twist_index(t, i)).collect();
    let here = twist_index(s, i);
    let adjacent = |from: i64| -> Vec<usize> {
        (0..all.len()).filter(|&k| (index[k] - from).abs() == 1).collect()
    };
    let mine = adjacent(here);
    let variants: Vec<Variant> = match mine.len() {
        1 => {
            let mid = mine[0];
            let theirs = adjacent(index[mid]);
            if theirs.len() == 2 {
                let alts: Vec<ArcSystem> = theirs.iter().map(|&k| all[k].clone()).collect();
                let v = assign_variants(&all[mid], &alts);
                let me = theirs.iter().position(|&k| all[k].dehn == s.dehn).unwrap();
                vec![v[me]]
            } else {
                vec![Variant::Standard]
            }
        }
        _ => {
            let alts: Vec<ArcSystem> = mine.iter().map(|&k| all[k].clone()).collect();
            assign_variants(s, &alts)
        }
    };
    mine.into_iter()
        .zip(variants)
        .map(|(k, variant)| JumpNeighbor {
            arc: i,
            variant,
            result: all[k].clone(),
        })
        .collect()
}

/// All normal jump moves, ordered by arc and then by result coordinate.
pub fn neighbors(s: &ArcSystem) -> Vec<JumpNeighbor> {
    (1..=3).flat_map(|i| arc_neighbors(s, i)).collect()
}

pub fn standard_neighbor(s: &ArcSystem, i: Label) -> Option<ArcSystem> {
    arc_neighbors(s, i)
        .into_iter()
        .find(|n| n.variant == Variant::Standard)
        .map(|n| n.result)
}

pub fn has_second_move(s: &ArcSystem, i: Label) -> bool {
    arc_neighbors(s, i).len() == 2
}

/// Window words after a move of arc `i` that changes the pattern.
///
/// Each window is read as a circle. A dot of arc `i` survives when its two
/// neighbours have the same colour and disappears otherwise; two adjacent
/// dots of other arcs receive a new dot of arc `i` between them. A new dot
/// between the last and the first dot of a window is written at the right
/// end.
pub fn predict_window_words(s: &ArcSystem, i: Label) -> Result<[Vec<Label>; 3]> {
    if s.words.iter().all(|w| !w.contains(&i)) {
        return Err(Error::NoWindowIntersection { arc: i });
    }
    Ok(std::array::from_fn(|m| predict_cyclic(&s.words[m], i)))
}

pub(crate) fn predict_cyclic(w: &[Label], i: Label) -> Vec<Label> {
    let n = w.len();
    if n == 0 || w.iter().all(|&l| l == i) {
        return w.to_vec();
    }
    let mut out = Vec::with_capacity(n + n / 2 + 1);
    for k in 0..n {
        let cur = w[k];
        let prev = w[(k + n - 1) % n];
        if cur == i {
            let next = w[(k + 1) % n];
            if prev == next {
                out.push(cur);
            }
        } else {
            if k > 0 && prev != i {
                out.push(i);
            }
            out.push(cur);
        }
    }
    if w[0] != i && w[n - 1] != i {
        out.push(i);
    }
    out
}
