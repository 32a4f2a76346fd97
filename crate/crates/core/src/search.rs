//! Search for arc systems that keep two arcs of a given system and replace
//! the third.
//!
//! Two systems in minimal position that share an arc cut the disks in the
//! same pieces, so every kept piece inside `E_m` reappears with the same
//! local crossing word. A kept puncture piece fixes the number of full turns
//! of the candidate pattern; kept separators bound it. Each disk is searched
//! separately and the surviving per-disk candidates are combined and checked
//! by realization.

use std::collections::HashMap;

use crate::surface::{outside_partners, realize, ArcKey, ArcSystem, DehnCoordinate, DiskGeometry, InnerEnd, Label, Local};

pub struct Query<'a> {
    pub source: &'a ArcSystem,
    pub label: Label,
    /// Largest number of dots of the new arc on each window.
    pub max_new: [u32; 3],
    /// Turn bound used on disks that only the replaced arc enters.
    pub free_turns: i64,
    /// When set, the window words the result may have per disk, each up to
    /// rotation.
    pub words: Option<[Vec<Vec<Label>>; 3]>,
}

fn puncture_labels(s: &ArcSystem, disk: usize) -> (Label, Label) {
    let a = 2 * disk as u8 + 1;
    let b = a + 1;
    let mut la = 0;
    let mut lb = 0;
    for (i, &(x, y)) in s.endpoints.iter().enumerate() {
        if x == a || y == a {
            la = i as u8 + 1;
        }
        if x == b || y == b {
            lb = i as u8 + 1;
        }
    }
    (la, lb)
}

type WordCounts = HashMap<Vec<Local>, usize>;

fn contains_all(have: &WordCounts, need: &WordCounts) -> bool {
    need.iter()
        .all(|(w, &k)| have.get(w).copied().unwrap_or(0) >= k)
}

/// A candidate pattern for one disk, with its window word when known.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cand {
    pub p: u32,
    pub q: i64,
    pub word: Option<Vec<Label>>,
}

/// Candidate patterns for one disk.
pub fn disk_candidates(q: &Query<'_>, disk: usize) -> Vec<Cand> {
    if let Some(words) = &q.words {
        let (la, lb) = puncture_labels(q.source, disk);
        return guided_candidates(q, disk, &words[disk], la, lb);
    }
    plain_candidates(q, disk)
        .into_iter()
        .map(|(p, q)| Cand { p, q, word: None })
        .collect()
}

fn plain_candidates(q: &Query<'_>, disk: usize) -> Vec<(u32, i64)> {
    let s = q.source;
    let j = q.label;
    let p = s.dehn.p[disk];
    let kept = s.words[disk].iter().filter(|&&l| l != j).count() as u32;
    let xmax = q.max_new[disk];
    let (la, lb) = puncture_labels(s, disk);
    let mut out = Vec::new();

    if p == 0 {
        if la != j {
            out.push((0, 0));
            return out;
        }
        for x in (0..=xmax).step_by(2) {
            push_free(&mut out, x, q.free_turns);
        }
        return out;
    }

    let g = DiskGeometry::new(p, s.dehn.q[disk]);
    let pin_a = (la != j).then(|| g.left_turns());
    let pin_b = (lb != j).then(|| g.right_turns());
    let mut need: WordCounts = HashMap::new();
    let (mut hlo, mut hhi) = (i64::MAX, i64::MIN);
    for piece in g.pieces() {
        if let InnerEnd::Window(other) = piece.end {
            if s.words[disk][piece.window] != j {
                *need.entry(piece.word).or_default() += 1;
                for h in [g.half_turns_at(piece.window), g.half_turns_at(other)] {
                    hlo = hlo.min(h);
                    hhi = hhi.max(h);
                }
            }
        }
    }

    for x in 0..=xmax {
        let size = kept + x;
        if size % 2 == 1 {
            continue;
        }
        if size == 0 {
            if kept == 0 && la == j && lb == j {
                out.push((0, 0));
            }
            continue;
        }
        let sz = size as i64;
        let n = (sz - 2) / 2;
        let range: Vec<i64> = if let Some(w) = pin_a {
            (0..sz).map(|j0| sz * w - j0).collect()
        } else if let Some(w) = pin_b {
            (0..sz).map(|j0| n + 1 + sz * w - j0).collect()
        } else if hlo <= hhi {
            let w_lo = (hlo - 2).div_euclid(2) - 1;
            let w_hi = (hhi - 1).div_euclid(2) + 1;
            (sz * w_lo..sz * (w_hi + 1)).collect()
        } else {
            let t = q.free_turns + 1;
            (-sz * t..=sz * t).collect()
        };
        for qq in range {
            let cand = DiskGeometry::new(size, qq);
            if let Some(w) = pin_a {
                if cand.left_turns() != w {
                    continue;
                }
            }
            if let Some(w) = pin_b {
                if cand.right_turns() != w {
                    continue;
                }
            }
            if !need.is_empty() {
                let mut have: WordCounts = HashMap::new();
                for piece in cand.pieces() {
                    if matches!(piece.end, InnerEnd::Window(_)) {
                        *have.entry(piece.word).or_default() += 1;
                    }
                }
                if !contains_all(&have, &need) {
                    continue;
                }
            }
            out.push((size, qq));
        }
    }
    out
}

/// A kept piece: label, kind (left puncture, right puncture, separator) and
/// the half-plane indices of its ends, which determine its local word.
type PieceSig = (Label, u8, i64, i64);

/// Half-plane index of inner slot `t` for a pattern of size `2n+2` with
/// `q = size * k + o`.
fn slot_half(n: i64, k: i64, o: i64, t: i64) -> i64 {
    let top = if t <= n { 1 } else { 2 };
    top + 2 * k + if t < o { 2 } else { 0 }
}

/// Kept pieces of a pattern whose slot `t` carries label `label(t)`.
fn signature(size: i64, k: i64, o: i64, label: &dyn Fn(i64) -> Label, skip: Label) -> Vec<PieceSig> {
    let n = (size - 2) / 2;
    let mut out = Vec::new();
    let l = label(0);
    if l != skip {
        out.push((l, 0, slot_half(n, k, o, 0), 0));
    }
    let l = label(n + 1);
    if l != skip {
        out.push((l, 1, slot_half(n, k, o, n + 1), 0));
    }
    for t in 1..=n {
        let l = label(t);
        if l != skip {
            let a = slot_half(n, k, o, t);
            let b = slot_half(n, k, o, 2 * n + 2 - t);
            out.push((l, 2, a.min(b), a.max(b)));
        }
    }
    out.sort_unstable();
    out
}

/// Candidates whose window word is a rotation of one of `allowed`.
///
/// Window `j` reaches slot `(j + q) mod size` and the slots pair up by the
/// reflection `t -> -t`, so a labelled pattern is a reflection centre `d`
/// of the cyclic word (slot `t` then carries label `W[t + d]`) together
/// with `q`. Moving the offset `o = q mod size` up by one adds a full turn
/// to one more slot; a sum test over the kept ends locates the offsets to
/// compare in full.
fn guided_candidates(
    q: &Query<'_>,
    disk: usize,
    allowed: &[Vec<Label>],
    la: Label,
    lb: Label,
) -> Vec<Cand> {
    let s = q.source;
    let j = q.label;
    let p = s.dehn.p[disk] as i64;
    let mut out = Vec::new();
    let empty = Cand {
        p: 0,
        q: 0,
        word: Some(Vec::new()),
    };
    if p == 0 {
        if allowed.iter().any(|w| w.is_empty()) {
            out.push(empty);
        }
        return out;
    }
    let qs = s.dehn.q[disk];
    let src = &s.words[disk];
    let need = signature(
        p,
        qs.div_euclid(p),
        qs.rem_euclid(p),
        &|t| src[(t - qs).rem_euclid(p) as usize],
        j,
    );
    let need_sum: i64 = need.iter().map(|x| x.2 + x.3).sum();
    let ks: Vec<i64> = if let Some(x) = need.iter().find(|x| x.1 == 0) {
        let w = (x.2 - 1).div_euclid(2);
        vec![w - 1, w]
    } else if let Some(x) = need.iter().find(|x| x.1 == 1) {
        let w = (x.2 - 2).div_euclid(2);
        vec![w - 1, w]
    } else if let (Some(lo), Some(hi)) = (
        need.iter().map(|x| x.2).min(),
        need.iter().map(|x| x.3).max(),
    ) {
        ((lo - 4).div_euclid(2)..=(hi - 1).div_euclid(2)).collect()
    } else {
        let k = qs.div_euclid(p);
        (k - 1 - q.free_turns..=k + 1 + q.free_turns).collect()
    };

    for w in allowed {
        let size = w.len() as i64;
        if size == 0 {
            if need.is_empty() {
                out.push(empty.clone());
            }
            continue;
        }
        let n = (size - 2) / 2;
        let at = |i: i64| w[i.rem_euclid(size) as usize];
        for d in 0..size {
            if at(d) != la || at(d + n + 1) != lb {
                continue;
            }
            if !(1..=n).all(|t| at(d + t) == at(d - t)) {
                continue;
            }
            let label = |t: i64| at(t + d);
            // kept slot ends, in slot order
            let mut ends: Vec<i64> = Vec::new();
            let mut base_top = 0;
            for t in 0..size {
                if label(t) != j {
                    ends.push(t);
                    base_top += if t <= n { 1 } else { 2 };
                }
            }
            // a puncture piece has one end; its second entry is 0
            let kept_ends = ends.len() as i64;
            for &k in &ks {
                let base = base_top + 2 * k * kept_ends;
                let diff = need_sum - base;
                if diff < 0 || diff % 2 == 1 {
                    continue;
                }
                let below = diff / 2;
                if below > kept_ends {
                    continue;
                }
                // offsets o with exactly `below` kept ends at slots < o
                let o_lo = if below == 0 { 0 } else { ends[below as usize - 1] + 1 };
                let o_hi = if below == kept_ends { size - 1 } else { ends[below as usize] };
                for o in o_lo..=o_hi.min(size - 1) {
                    if signature(size, k, o, &label, j) == need {
                        let qq = size * k + o;
                        // window i reaches slot i + qq, labelled W[i + qq + d]
                        let word = (0..size).map(|i| at(i + qq + d)).collect();
                        out.push(Cand {
                            p: size as u32,
                            q: qq,
                            word: Some(word),
                        });
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn push_free(out: &mut Vec<(u32, i64)>, size: u32, turns: i64) {
    if size == 0 {
        out.push((0, 0));
        return;
    }
    let sz = size as i64;
    let t = turns + 1;
    out.extend((-sz * t..=sz * t).map(|qq| (size, qq)));
}

/// All realizable systems that agree with the source on the two arcs other
/// than `label` and whose new arc respects the per-window dot bounds.
pub fn sharing_systems(q: &Query<'_>) -> Vec<ArcSystem> {
    let per_disk: [Vec<Cand>; 3] = std::array::from_fn(|d| disk_candidates(q, d));
    let keep: Vec<usize> = (0..3).filter(|&k| k + 1 != q.label as usize).collect();
    let mut found = Vec::new();
    let mut partners: HashMap<[u32; 3], [Vec<(u8, u32)>; 3]> = HashMap::new();
    for c1 in &per_disk[0] {
        for c2 in &per_disk[1] {
            for c3 in &per_disk[2] {
                let p = [c1.p, c2.p, c3.p];
                if let (Some(w1), Some(w2), Some(w3)) = (&c1.word, &c2.word, &c3.word) {
                    if p.iter().sum::<u32>() % 2 == 1 {
                        continue;
                    }
                    let out = partners
                        .entry(p)
                        .or_insert_with(|| outside_partners(p).expect("even sum"));
                    let words = [w1, w2, w3];
                    let consistent = (0..3).all(|d| {
                        out[d].iter().enumerate().all(|(pos, &(d2, pos2))| {
                            words[d][pos] == words[d2 as usize][pos2 as usize]
                        })
                    });
                    if !consistent {
                        continue;
                    }
                }
                let c = DehnCoordinate::new(p, [c1.q, c2.q, c3.q]);
                let Ok(t) = realize(&c) else { continue };
                if keep.iter().all(|&k| t.arcs[k] == q.source.arcs[k]) {
                    found.push(t);
                }
            }
        }
    }
    found.sort_by_key(|a| a.dehn);
    found
}

/// Finds the system obtained by swapping arc `label` for the arc `key`.
pub(crate) fn locate(
    source: &ArcSystem,
    label: Label,
    key: &ArcKey,
    max_new: [u32; 3],
) -> Option<ArcSystem> {
    let q = Query {
        source,
        label,
        max_new,
        free_turns: key.word.len() as i64 / 2 + 2,
        words: None,
    };
    sharing_systems(&q)
        .into_iter()
        .find(|t| t.arcs[label as usize - 1] == *key)
}
