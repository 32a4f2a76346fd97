//! Selection of one minimal normal coordinate per tangle, and the resulting
//! equivalence test.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::minimization::{descend_e1, gaps, plateau_cached, MoveCache};
use crate::normal_form::normalize;
use crate::surface::{realize, ArcSystem, DehnCoordinate, Label};

/// Plateaus larger than this are treated as infinite.
pub const PLATEAU_LIMIT: usize = 32;

/// Radius of the search confirming that no cheaper plateau member lies
/// beyond a local minimum.
pub const CONFIRM_RADIUS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Infinity,
    /// 1-based disk whose window is empty.
    EmptyWindow(usize),
    StrictAll,
    OneEquality,
    TwoEqualityDisjoint,
    TwoEqualityMeeting,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Infinity => write!(f, "INFINITY"),
            Branch::EmptyWindow(d) => write!(f, "EMPTY_WINDOW({d})"),
            Branch::StrictAll => write!(f, "STRICT_ALL"),
            Branch::OneEquality => write!(f, "ONE_EQUALITY"),
            Branch::TwoEqualityDisjoint => write!(f, "TWO_EQUALITY_DISJOINT"),
            Branch::TwoEqualityMeeting => write!(f, "TWO_EQUALITY_MEETING"),
        }
    }
}

impl Serialize for Branch {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn flat<S: Serializer>(c: &DehnCoordinate, s: S) -> std::result::Result<S::Ok, S::Error> {
    c.flat().serialize(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepresentativeReport {
    #[serde(serialize_with = "flat")]
    pub representative: DehnCoordinate,
    pub branch: Branch,
    /// Members found; equals the limit when the plateau is not complete.
    pub plateau_size: usize,
    pub plateau_complete: bool,
    /// Members the selection rule was applied to.
    pub candidates: usize,
    /// False when more than one candidate met the rule equally well and the
    /// coordinate order decided.
    pub unique_by_rule: bool,
    /// Whether the chosen member meets the rule exactly (for instance
    /// `q1 = 0` in the disjoint case) rather than only coming closest.
    pub rule_exact: bool,
    /// The invariant sum of the two remaining twists for an empty window.
    pub q_sum: Option<i64>,
}

type Key = (u64, u64);

/// Ordering used inside infinite plateaus: total weight, then twist size.
fn compactness(s: &ArcSystem) -> Key {
    (s.total_weight(), s.dehn.q.iter().map(|q| q.unsigned_abs()).sum())
}

/// The members of minimal [`compactness`] in the plateau of `m`.
fn compact_core(m: &ArcSystem, cache: &mut MoveCache) -> Vec<ArcSystem> {
    let mut cur = m.clone();
    loop {
        // walk downhill
        loop {
            let next = cache
                .plateau_moves(&cur)
                .into_iter()
                .min_by_key(|t| (compactness(t), t.dehn));
            match next {
                Some(t) if compactness(&t) < compactness(&cur) => cur = t,
                _ => break,
            }
        }
        let k = compactness(&cur);
        let mut level = BTreeMap::from([(cur.dehn, cur.clone())]);
        let mut queue = VecDeque::from([cur.clone()]);
        while let Some(x) = queue.pop_front() {
            for t in cache.plateau_moves(&x) {
                if compactness(&t) == k && !level.contains_key(&t.dehn) {
                    level.insert(t.dehn, t.clone());
                    queue.push_back(t);
                }
            }
        }
        match confirm(&level, k, cache) {
            Some(better) => cur = better,
            None => return level.into_values().collect(),
        }
    }
}

/// Looks a few moves beyond the current level for a strictly better member.
fn confirm(level: &BTreeMap<DehnCoordinate, ArcSystem>, k: Key, cache: &mut MoveCache) -> Option<ArcSystem> {
    let mut seen: BTreeSet<DehnCoordinate> = level.keys().copied().collect();
    let mut frontier: Vec<ArcSystem> = level.values().cloned().collect();
    let mut best: Option<ArcSystem> = None;
    for _ in 0..CONFIRM_RADIUS {
        let mut next = Vec::new();
        for x in &frontier {
            for t in cache.plateau_moves(x) {
                if seen.insert(t.dehn) {
                    if compactness(&t) < k
                        && best.as_ref().is_none_or(|b| (compactness(&t), t.dehn) < (compactness(b), b.dehn))
                    {
                        best = Some(t.clone());
                    }
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    best
}

fn others(i: Label) -> [Label; 2] {
    match i {
        1 => [2, 3],
        2 => [1, 3],
        _ => [1, 2],
    }
}

fn is_short(g: &[Label], y: Label) -> bool {
    g.len() == 1 && g[0] == y
}

fn is_long(g: &[Label], y: Option<Label>) -> bool {
    g.len() >= 3 && g.len() % 2 == 1 && g[0] == g[g.len() - 1] && y.is_none_or(|y| g[0] == y)
}

/// Rule key for one equal arc: the first, in circle order, of the frame-short-frame and
/// frame-long-frame types decides, short preferred, then the smaller gap.
fn one_equality_key(s: &ArcSystem, frame: Label, short: Label, long: Label) -> (u8, u32) {
    for g in gaps(&s.words[0], frame) {
        if is_short(&g, short) {
            return (0, 1);
        }
        if is_long(&g, Some(long)) {
            return (1, g.len() as u32);
        }
    }
    (2, 0)
}

/// Rule key for two equal arcs: the gap of the first long type in circle
/// order.
fn two_equality_key(s: &ArcSystem, frame: Label) -> u32 {
    gaps(&s.words[0], frame)
        .find(|g| is_long(g, None))
        .map_or(u32::MAX, |g| g.len() as u32)
}

/// Twist sum of the two disks other than `a` (0-based) and the preferred
/// twist of the first of them.
fn empty_window_target(s: &ArcSystem, a: usize) -> (usize, i64, i64) {
    let rest: Vec<usize> = (0..3).filter(|&d| d != a).collect();
    let c = s.dehn.q[rest[0]] + s.dehn.q[rest[1]];
    (rest[0], c, (c + 1).div_euclid(2))
}

/// Canonical minimal normal coordinate of the tangle of `s`.
pub fn representative(s: &ArcSystem) -> Result<RepresentativeReport> {
    let m = descend_e1(&normalize(s)?);
    if m.dehn == DehnCoordinate::INFINITY {
        return Ok(RepresentativeReport {
            representative: m.dehn,
            branch: Branch::Infinity,
            plateau_size: 1,
            plateau_complete: true,
            candidates: 1,
            unique_by_rule: true,
            rule_exact: true,
            q_sum: None,
        });
    }
    let mut cache = MoveCache::new();
    let plateau = plateau_cached(&m, PLATEAU_LIMIT, &mut cache)?;
    let candidates = if plateau.complete {
        plateau.members.clone()
    } else {
        compact_core(&m, &mut cache)
    };

    // every normal form of the tangle has the same empty windows
    let empty = (0..3).find(|&d| m.dehn.p[d] == 0);
    let profiles: Vec<_> = plateau.members.iter().map(|x| cache.profile(x)).collect();
    let most = profiles.iter().map(|p| p.equal_count()).max().unwrap_or(0);

    let mut q_sum = None;
    let branch;
    // smaller is better; (0, ..) means the rule is met exactly
    let keyed: Vec<((u64, u64), &ArcSystem)> = match empty {
        Some(a) => {
            branch = Branch::EmptyWindow(a + 1);
            let c = empty_window_target(&m, a).1;
            q_sum = Some(c);
            candidates
                .iter()
                .map(|x| {
                    let (b, _, want) = empty_window_target(x, a);
                    (((x.dehn.q[b] - want).unsigned_abs(), 0), x)
                })
                .collect()
        }
        None if most == 0 => {
            branch = Branch::StrictAll;
            candidates.iter().map(|x| ((0, 0), x)).collect()
        }
        None if most == 1 => {
            branch = Branch::OneEquality;
            let equal = (0..3)
                .find(|&k| profiles.iter().any(|p| p.equal[k]))
                .unwrap() as Label
                + 1;
            let [f1, f2] = others(equal);
            let shows = |frame: Label, short: Label| {
                plateau
                    .members
                    .iter()
                    .any(|x| gaps(&x.words[0], frame).any(|g| is_short(&g, short)))
            };
            let (frame, short) = if shows(f1, f2) || !shows(f2, f1) {
                (f1, f2)
            } else {
                (f2, f1)
            };
            candidates
                .iter()
                .map(|x| {
                    let (kind, gap) = one_equality_key(x, frame, short, equal);
                    ((kind as u64, gap as u64), x)
                })
                .collect()
        }
        None => {
            let strict = profiles
                .iter()
                .filter(|p| p.equal_count() == 2)
                .map(|p| p.equal.iter().position(|&e| !e).unwrap() as Label + 1)
                .min()
                .unwrap();
            let misses = candidates.iter().all(|x| !x.words[0].contains(&strict));
            if misses {
                branch = Branch::TwoEqualityDisjoint;
                candidates
                    .iter()
                    .map(|x| ((x.dehn.q[0].unsigned_abs(), 0), x))
                    .collect()
            } else {
                branch = Branch::TwoEqualityMeeting;
                candidates
                    .iter()
                    .map(|x| ((0, two_equality_key(x, strict) as u64), x))
                    .collect()
            }
        }
    };

    let best_key = keyed.iter().map(|(k, _)| *k).min().unwrap();
    let best: Vec<&ArcSystem> = keyed
        .iter()
        .filter(|(k, _)| *k == best_key)
        .map(|(_, x)| *x)
        .collect();
    let chosen = best.iter().map(|x| x.dehn).min().unwrap();
    let rule_exact = match branch {
        Branch::EmptyWindow(_) | Branch::TwoEqualityDisjoint => best_key.0 == 0,
        Branch::OneEquality => best_key.0 < 2,
        Branch::TwoEqualityMeeting => best_key.1 != u32::MAX as u64,
        _ => true,
    };
    Ok(RepresentativeReport {
        representative: chosen,
        branch,
        plateau_size: plateau.len(),
        plateau_complete: plateau.complete,
        candidates: candidates.len(),
        unique_by_rule: best.len() == 1,
        rule_exact,
        q_sum,
    })
}

/// Whether two coordinates describe isotopic tangles.
pub fn equivalent(a: &DehnCoordinate, b: &DehnCoordinate) -> Result<bool> {
    let ra = representative(&realize(a)?)?;
    let rb = representative(&realize(b)?)?;
    Ok(ra.representative == rb.representative)
}
