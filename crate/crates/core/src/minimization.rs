//! Descent to a minimal normal system with respect to the first disk, the
//! set of all such minima, and the pattern census of the first window.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::rc::Rc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jump::{arc_neighbors, neighbors, JumpNeighbor};
use crate::surface::{ArcSystem, DehnCoordinate, Label};

/// Counts of pattern types between consecutive frame dots of the first
/// window, read around the circle.
///
/// Arrays are indexed by `label - 1`; the frame's own entry stays zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternCensus {
    pub frame: Label,
    /// One dot of colour Y between two frame dots.
    pub n_xyx: [u32; 3],
    /// An odd number (at least 3) of dots between, both ends coloured Y.
    pub n_xy_yx: [u32; 3],
    pub min_gap: [Option<u32>; 3],
}

impl PatternCensus {
    /// `Some(true)` when the leftmost short or long type with inner colour `y`
    /// is short, `None` when neither occurs.
    pub fn leftmost_is_short(w: &[Label], frame: Label, y: Label) -> Option<bool> {
        gaps(w, frame)
            .find(|g| g.len() % 2 == 1 && g[0] == y)
            .map(|g| g.len() == 1)
    }
}

/// Runs of dots strictly between consecutive frame dots of the circle
/// `∂E1`, which meets the arcs only in the window. Ordered by the position of
/// the opening frame dot, so the run wrapping from the last frame dot around
/// to the first comes last.
pub(crate) fn gaps(w: &[Label], frame: Label) -> impl Iterator<Item = Vec<Label>> + '_ {
    let pos: Vec<usize> = (0..w.len()).filter(|&k| w[k] == frame).collect();
    let n = pos.len();
    (0..n).map(move |k| {
        let a = pos[k];
        let b = pos[(k + 1) % n];
        if k + 1 < n {
            w[a + 1..b].to_vec()
        } else {
            w[a + 1..].iter().chain(&w[..b]).copied().collect()
        }
    })
}

pub fn census(w: &[Label], frame: Label) -> PatternCensus {
    let mut c = PatternCensus {
        frame,
        n_xyx: [0; 3],
        n_xy_yx: [0; 3],
        min_gap: [None; 3],
    };
    for g in gaps(w, frame) {
        let n = g.len();
        if n % 2 == 0 || g[0] != g[n - 1] || g[0] == frame {
            continue;
        }
        let y = g[0] as usize - 1;
        if n == 1 {
            c.n_xyx[y] += 1;
        } else {
            c.n_xy_yx[y] += 1;
            let m = c.min_gap[y].get_or_insert(n as u32);
            *m = (*m).min(n as u32);
        }
    }
    c
}

/// Gap of the leftmost long type with inner colour `y`.
pub fn leftmost_long_gap(w: &[Label], frame: Label, y: Label) -> Option<u32> {
    gaps(w, frame)
        .find(|g| g.len() >= 3 && g.len() % 2 == 1 && g[0] == y)
        .map(|g| g.len() as u32)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityProfile {
    pub exists: [bool; 3],
    pub equal: [bool; 3],
}

impl EqualityProfile {
    pub fn equal_count(&self) -> usize {
        self.equal.iter().filter(|&&e| e).count()
    }
}

pub fn equality_profile(s: &ArcSystem) -> EqualityProfile {
    let mut p = EqualityProfile {
        exists: [false; 3],
        equal: [false; 3],
    };
    let w = s.weight1();
    for i in 1..=3u8 {
        let ns = arc_neighbors(s, i);
        p.exists[i as usize - 1] = !ns.is_empty();
        p.equal[i as usize - 1] = ns.iter().any(|n| n.result.weight1() == w);
    }
    p
}

pub fn is_minimal_e1(s: &ArcSystem) -> bool {
    let w = s.weight1();
    neighbors(s).iter().all(|n| n.result.weight1() >= w)
}

/// Neighbours with strictly smaller first-disk weight.
pub fn decreasing_neighbors(s: &ArcSystem) -> Vec<ArcSystem> {
    let w = s.weight1();
    neighbors(s)
        .into_iter()
        .filter(|n| n.result.weight1() < w)
        .map(|n| n.result)
        .collect()
}

/// The systems visited by greedy descent, starting with `s`.
///
/// Should several decreasing moves exist, the one with the smallest
/// `(weight1, coordinate)` is taken.
pub fn descent_path(s: &ArcSystem) -> Vec<ArcSystem> {
    let mut path = vec![s.clone()];
    loop {
        let cur = path.last().unwrap();
        let next = decreasing_neighbors(cur)
            .into_iter()
            .min_by_key(|t| (t.weight1(), t.dehn));
        match next {
            Some(t) => path.push(t),
            None => return path,
        }
    }
}

pub fn descend_e1(s: &ArcSystem) -> ArcSystem {
    descent_path(s).pop().unwrap()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plateau {
    /// Sorted by coordinate.
    pub members: Vec<ArcSystem>,
    pub weight: u64,
    /// False when the search stopped at its member limit.
    pub complete: bool,
}

impl Plateau {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn coordinates(&self) -> Vec<DehnCoordinate> {
        self.members.iter().map(|m| m.dehn).collect()
    }
}

/// All minimal systems reachable from `s` through minimal systems of the
/// same first-disk weight.
///
/// Plateaus in which some arc misses the first window can be infinite; those
/// are cut off after `DEFAULT_PLATEAU_LIMIT` members, see [`plateau_within`].
pub fn plateau(s: &ArcSystem) -> Result<Plateau> {
    plateau_within(s, DEFAULT_PLATEAU_LIMIT)
}

pub const DEFAULT_PLATEAU_LIMIT: usize = 256;

/// Memoized jump-move results, for searches that revisit systems.
#[derive(Default)]
pub struct MoveCache {
    moves: HashMap<DehnCoordinate, Rc<Vec<JumpNeighbor>>>,
}

impl MoveCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn moves(&mut self, s: &ArcSystem) -> Rc<Vec<JumpNeighbor>> {
        self.moves
            .entry(s.dehn)
            .or_insert_with(|| Rc::new(neighbors(s)))
            .clone()
    }

    pub fn is_minimal(&mut self, s: &ArcSystem) -> bool {
        let w = s.weight1();
        self.moves(s).iter().all(|n| n.result.weight1() >= w)
    }

    pub fn profile(&mut self, s: &ArcSystem) -> EqualityProfile {
        let w = s.weight1();
        let mut p = EqualityProfile {
            exists: [false; 3],
            equal: [false; 3],
        };
        for n in self.moves(s).iter() {
            let k = n.arc as usize - 1;
            p.exists[k] = true;
            p.equal[k] |= n.result.weight1() == w;
        }
        p
    }

    /// Moves staying on the plateau of `s`.
    pub fn plateau_moves(&mut self, s: &ArcSystem) -> Vec<ArcSystem> {
        let w = s.weight1();
        let ms = self.moves(s);
        ms.iter()
            .map(|n| &n.result)
            .filter(|t| t.weight1() == w && self.is_minimal(t))
            .cloned()
            .collect()
    }
}

/// Breadth-first plateau search stopping once `limit` members are known.
pub fn plateau_within(s: &ArcSystem, limit: usize) -> Result<Plateau> {
    plateau_cached(s, limit, &mut MoveCache::new())
}

pub fn plateau_cached(s: &ArcSystem, limit: usize, cache: &mut MoveCache) -> Result<Plateau> {
    if !cache.is_minimal(s) {
        return Err(Error::NotMinimal);
    }
    let w = s.weight1();
    let mut seen = BTreeMap::new();
    seen.insert(s.dehn, s.clone());
    let mut queue = VecDeque::from([s.clone()]);
    let mut complete = true;
    'bfs: while let Some(x) = queue.pop_front() {
        for t in cache.moves(&x).iter().map(|n| &n.result) {
            if seen.len() >= limit {
                complete = false;
                break 'bfs;
            }
            if t.weight1() != w || seen.contains_key(&t.dehn) || !cache.is_minimal(t) {
                continue;
            }
            seen.insert(t.dehn, t.clone());
            queue.push_back(t.clone());
        }
    }
    Ok(Plateau {
        members: seen.into_values().collect(),
        weight: w,
        complete,
    })
}


/// Plateau regimes for minimal systems whose arcs all meet the first window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Regime {
    /// Every existing move strictly increases the first weight.
    Strict,
    /// One equal arc, and every move after it is strict again.
    EqualPair,
    /// One equal arc, with a short type between frame dots.
    EqualChain,
    /// Two equal arcs.
    TwoEqual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegimeReport {
    pub regime: Regime,
    pub frame: Option<Label>,
    pub census: Option<PatternCensus>,
    /// Plateau size the census predicts, when defined.
    pub predicted: Option<usize>,
    /// For [`Regime::TwoEqual`]: no short types and equally many long types
    /// of both inner colours.
    pub preconditions: bool,
}

fn other_two(i: Label) -> [Label; 2] {
    match i {
        1 => [2, 3],
        2 => [1, 3],
        _ => [1, 2],
    }
}

/// Regime of a minimal system all of whose arcs meet the first window;
/// `None` otherwise or when the one-equality case fits neither pattern.
pub fn classify_regime(s: &ArcSystem, cache: &mut MoveCache) -> Option<RegimeReport> {
    let w1 = &s.words[0];
    if !(1..=3).all(|l| w1.contains(&l)) || !cache.is_minimal(s) {
        return None;
    }
    let w = s.weight1();
    let prof = cache.profile(s);
    let equal: Vec<Label> = (1..=3).filter(|&i| prof.equal[i as usize - 1]).collect();
    let report = |regime, frame: Option<Label>, census: Option<PatternCensus>, predicted, preconditions| RegimeReport {
        regime,
        frame,
        census,
        predicted,
        preconditions,
    };
    match equal.len() {
        0 => Some(report(Regime::Strict, None, None, Some(1), true)),
        1 => {
            let e = equal[0];
            let [a, b] = other_two(e);
            let after: Vec<ArcSystem> = cache
                .moves(s)
                .iter()
                .filter(|n| n.arc == e && n.result.weight1() == w)
                .map(|n| n.result.clone())
                .collect();
            let composite = after.iter().all(|t| {
                cache
                    .moves(t)
                    .iter()
                    .filter(|n| n.arc != e)
                    .all(|n| n.result.weight1() > w)
            });
            if composite {
                return Some(report(Regime::EqualPair, None, None, Some(2), true));
            }
            let frame = [(a, b), (b, a)]
                .into_iter()
                .find(|&(f, y)| census(w1, f).n_xyx[y as usize - 1] > 0)
                .map(|(f, _)| f)?;
            let c = census(w1, frame);
            let predicted = c.min_gap[e as usize - 1].map(|g| (g as usize).div_ceil(2));
            Some(report(Regime::EqualChain, Some(frame), Some(c), predicted, true))
        }
        2 => {
            let frame = (1..=3).find(|&i| !prof.equal[i as usize - 1]).unwrap();
            let [y1, y2] = other_two(frame);
            let c = census(w1, frame);
            let (k1, k2) = (y1 as usize - 1, y2 as usize - 1);
            let pre = c.n_xyx[k1] == 0 && c.n_xyx[k2] == 0 && c.n_xy_yx[k1] == c.n_xy_yx[k2];
            let predicted = if c.n_xy_yx[k1] == 0 {
                Some(2)
            } else {
                match (c.min_gap[k1], c.min_gap[k2]) {
                    (Some(x), Some(y)) => Some((x + y) as usize / 2),
                    _ => None,
                }
            };
            Some(report(Regime::TwoEqual, Some(frame), Some(c), predicted, pre))
        }
        _ => Some(report(Regime::TwoEqual, None, None, None, false)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::realize;

    #[test]
    fn census_examples() {
        let c = census(&[3, 2, 3], 3);
        assert_eq!(c.n_xyx, [0, 1, 0]);
        assert_eq!(c.n_xy_yx, [0; 3]);

        let c = census(&[3, 2, 1, 2, 3], 3);
        assert_eq!(c.n_xyx, [0; 3]);
        assert_eq!(c.n_xy_yx, [0, 1, 0]);
        assert_eq!(c.min_gap, [None, Some(3), None]);

        let c = census(&[3, 2, 1, 3], 3);
        assert_eq!(c, census(&[], 3));
    }

    #[test]
    fn leftmost_types() {
        let w = [3, 1, 2, 1, 3, 1, 3];
        assert_eq!(PatternCensus::leftmost_is_short(&w, 3, 1), Some(false));
        assert_eq!(leftmost_long_gap(&w, 3, 1), Some(3));
        assert_eq!(PatternCensus::leftmost_is_short(&w, 3, 2), None);
    }

    #[test]
    fn infinity() {
        let s = realize(&DehnCoordinate::INFINITY).unwrap();
        assert!(is_minimal_e1(&s));
        assert_eq!(descend_e1(&s), s);
        let p = plateau(&s).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(equality_profile(&s).exists, [false; 3]);
    }
}
