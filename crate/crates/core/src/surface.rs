//! The fixed planar model of the six-punctured sphere and the passage between
//! Dehn coordinates and fully traced arc systems.
//!
//! Three disks `E1, E2, E3` sit left to right on the real line, disk `d`
//! holding punctures `2d-1` (left) and `2d` (right). Every intersection of the
//! arc system with a disk boundary lies on the bottom half of that boundary
//! (the window), indexed left to right from 0.
//!
//! Outside the disks the arcs follow the unique disjoint routing in the pair
//! of pants. Arcs joining distinct windows are drawn below the real line.
//! Arcs returning to the same window loop around a neighbouring disk: from
//! `E1` and `E3` they loop around `E2`, from `E2` they loop around `E3`.
//! Window positions are allotted to the routing blocks as follows (`x` and
//! `y` are the two ends of the loops, outermost loop first):
//!
//! ```text
//! window 1: [m13] [x] [m12] [y]
//! window 2: [m12] [x] [m23] [y]
//! window 3: [y] [m23] [x] [m13]
//! ```
//!
//! Inside a disk with `P = 2n + 2` window points the pattern is the rotation
//! by `q` of the untwisted pattern: puncture arcs leave the left puncture
//! downwards and the right puncture upwards, the `n` separators cross the
//! segment between the punctures, and window point `j` is joined to inner
//! slot `(j + q) mod P` after `floor((j + q) / P)` full turns.
//!
//! Isotopy classes of single arcs are compared through their reduced
//! crossing words with the real line, which passes through all six punctures
//! and cuts the sphere into two discs.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arc label, always in `1..=3`.
pub type Label = u8;

/// The six-integer parameter `(p1, q1, p2, q2, p3, q3)` of an arc system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DehnCoordinate {
    pub p: [u32; 3],
    pub q: [i64; 3],
}

impl DehnCoordinate {
    pub const INFINITY: DehnCoordinate = DehnCoordinate {
        p: [0; 3],
        q: [0; 3],
    };

    pub fn new(p: [u32; 3], q: [i64; 3]) -> Self {
        DehnCoordinate { p, q }
    }

    /// Builds from the flat order `p1, q1, p2, q2, p3, q3`.
    pub fn from_flat(v: [i64; 6]) -> Result<Self> {
        let mut p = [0u32; 3];
        for d in 0..3 {
            let raw = v[2 * d];
            if raw < 0 || raw > u32::MAX as i64 {
                return Err(Error::InvalidCoordinate(format!(
                    "p{} = {raw} must be a non-negative integer",
                    d + 1
                )));
            }
            p[d] = raw as u32;
        }
        Ok(DehnCoordinate {
            p,
            q: [v[1], v[3], v[5]],
        })
    }

    pub fn flat(&self) -> [i64; 6] {
        [
            self.p[0] as i64,
            self.q[0],
            self.p[1] as i64,
            self.q[1],
            self.p[2] as i64,
            self.q[2],
        ]
    }

    pub fn total_weight(&self) -> u64 {
        self.p.iter().map(|&x| x as u64).sum()
    }

    /// Checks the coordinate-level invariants (even p-sum, empty windows
    /// carry `q = 0`).
    pub fn validate(&self) -> Result<()> {
        let sum = self.total_weight();
        if sum % 2 == 1 {
            return Err(Error::Parity { sum });
        }
        for d in 0..3 {
            if self.p[d] == 0 && self.q[d] != 0 {
                return Err(Error::ZeroWindowTwist {
                    disk: d + 1,
                    q: self.q[d],
                });
            }
        }
        Ok(())
    }
}

impl PartialOrd for DehnCoordinate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DehnCoordinate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.flat().cmp(&other.flat())
    }
}

impl fmt::Display for DehnCoordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.flat();
        write!(f, "({},{},{},{},{},{})", v[0], v[1], v[2], v[3], v[4], v[5])
    }
}

/// Arc counts in the pair of pants outside the three disks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PantsRouting {
    pub m12: u32,
    pub m13: u32,
    pub m23: u32,
    /// Arcs with both ends on the same window, per disk.
    pub s: [u32; 3],
}

/// Solves `p_i = m_ij + m_ik + 2 s_i` for the unique disjoint routing.
pub fn route_pants(p: [u32; 3]) -> Result<PantsRouting> {
    let sum: u64 = p.iter().map(|&x| x as u64).sum();
    if sum % 2 == 1 {
        return Err(Error::Parity { sum });
    }
    let [a, b, c] = p.map(|x| x as u64);
    let mut r = PantsRouting {
        m12: 0,
        m13: 0,
        m23: 0,
        s: [0; 3],
    };
    if a > b + c {
        r.s[0] = ((a - b - c) / 2) as u32;
        r.m12 = b as u32;
        r.m13 = c as u32;
    } else if b > a + c {
        r.s[1] = ((b - a - c) / 2) as u32;
        r.m12 = a as u32;
        r.m23 = c as u32;
    } else if c > a + b {
        r.s[2] = ((c - a - b) / 2) as u32;
        r.m13 = a as u32;
        r.m23 = b as u32;
    } else {
        r.m12 = ((a + b - c) / 2) as u32;
        r.m13 = ((a + c - b) / 2) as u32;
        r.m23 = ((b + c - a) / 2) as u32;
    }
    Ok(r)
}

/// Where the inside piece starting at a window point goes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InnerEnd {
    /// The left puncture of the disk.
    Left,
    /// The right puncture of the disk.
    Right,
    /// Another window point of the same disk.
    Window(usize),
}

/// The pattern inside one disk: a rotation of the untwisted pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskPattern {
    /// Disk index, `1..=3`.
    pub disk: usize,
    pub window_size: u32,
    /// Full turns around the inner disk.
    pub twist: i64,
    /// Rotation within one turn, `0..window_size`.
    pub offset: u32,
    /// Partner of each window position.
    pub matching: Vec<InnerEnd>,
}

impl DiskPattern {
    /// Decodes `(p, q)` for one disk. With `p = 0` the two punctures are
    /// joined directly.
    pub fn decode(disk: usize, p: u32, q: i64) -> Result<Self> {
        if p == 0 {
            if q != 0 {
                return Err(Error::ZeroWindowTwist { disk, q });
            }
            return Ok(DiskPattern {
                disk,
                window_size: 0,
                twist: 0,
                offset: 0,
                matching: Vec::new(),
            });
        }
        if p % 2 == 1 {
            return Err(Error::OddWindow { disk, size: p });
        }
        let g = DiskGeometry::new(p, q);
        let matching = (0..p as usize).map(|j| g.inner_end(j)).collect();
        Ok(DiskPattern {
            disk,
            window_size: p,
            twist: q.div_euclid(p as i64),
            offset: q.rem_euclid(p as i64) as u32,
            matching,
        })
    }

    pub fn q(&self) -> i64 {
        self.twist * self.window_size as i64 + self.offset as i64
    }
}

/// Letters of the real line inside one disk: left of the left puncture,
/// between the punctures, right of the right puncture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Local {
    L,
    M,
    R,
}

/// Geometry of one disk pattern; `size > 0` and even.
#[derive(Clone, Copy, Debug)]
pub(crate) struct DiskGeometry {
    pub size: i64,
    pub q: i64,
}

impl DiskGeometry {
    pub fn new(size: u32, q: i64) -> Self {
        DiskGeometry {
            size: size as i64,
            q,
        }
    }

    fn n(&self) -> i64 {
        (self.size - 2) / 2
    }

    fn slot(&self, j: usize) -> i64 {
        (j as i64 + self.q).rem_euclid(self.size)
    }

    /// Window point reaching inner slot `t`.
    fn window_of_slot(&self, t: i64) -> usize {
        (t - self.q).rem_euclid(self.size) as usize
    }

    /// Half-plane index of the inner end of the annulus path from `j`; the
    /// window itself sits in half-plane 1.
    fn half_turns(&self, j: usize) -> i64 {
        let v = j as i64 + self.q;
        let t = v.rem_euclid(self.size);
        let w = v.div_euclid(self.size);
        let top = if t <= self.n() { 1 } else { 2 };
        top + 2 * w
    }

    /// Crossings of the annulus path from window point `j` inwards.
    pub fn annulus_word(&self, j: usize, out: &mut Vec<Local>) {
        let h = self.half_turns(j);
        if h > 1 {
            for k in 2..=h {
                out.push(if k % 2 == 0 { Local::R } else { Local::L });
            }
        } else if h < 1 {
            for k in (h + 1..=1).rev() {
                out.push(if k.rem_euclid(2) == 1 { Local::L } else { Local::R });
            }
        }
    }

    pub fn inner_end(&self, j: usize) -> InnerEnd {
        let t = self.slot(j);
        let n = self.n();
        if t == 0 {
            InnerEnd::Left
        } else if t == n + 1 {
            InnerEnd::Right
        } else {
            InnerEnd::Window(self.window_of_slot(2 * n + 2 - t))
        }
    }

    pub fn left_window(&self) -> usize {
        self.window_of_slot(0)
    }

    pub fn right_window(&self) -> usize {
        self.window_of_slot(self.n() + 1)
    }

    /// Crossing word of the inside piece from window point `j` to its end.
    pub fn piece_word(&self, j: usize, out: &mut Vec<Local>) -> InnerEnd {
        let end = self.inner_end(j);
        self.annulus_word(j, out);
        if let InnerEnd::Window(j2) = end {
            out.push(Local::M);
            let start = out.len();
            self.annulus_word(j2, out);
            out[start..].reverse();
        }
        end
    }
}

/// One inside piece of a disk pattern, described by its local crossing word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Piece {
    pub end: InnerEnd,
    /// Window point the piece starts at (the smaller one for separators).
    pub window: usize,
    /// Local word read from `window` inwards; for separators the smaller of
    /// the two reading directions.
    pub word: Vec<Local>,
}

impl DiskGeometry {
    pub fn pieces(&self) -> Vec<Piece> {
        let mut out = Vec::with_capacity(self.size as usize / 2 + 1);
        for j in 0..self.size as usize {
            let mut w = Vec::new();
            let end = self.piece_word(j, &mut w);
            if let InnerEnd::Window(j2) = end {
                if j2 < j {
                    continue;
                }
                let mut r = w.clone();
                r.reverse();
                if r < w {
                    w = r;
                }
            }
            out.push(Piece { end, window: j, word: w });
        }
        out
    }

    /// Full turns of the puncture piece at the left puncture.
    pub fn left_turns(&self) -> i64 {
        (self.left_window() as i64 + self.q).div_euclid(self.size)
    }

    /// Full turns of the puncture piece at the right puncture.
    pub fn right_turns(&self) -> i64 {
        (self.right_window() as i64 + self.q).div_euclid(self.size)
    }

    pub fn half_turns_at(&self, j: usize) -> i64 {
        self.half_turns(j)
    }
}

pub(crate) fn global_segment(disk: usize, l: Local) -> u8 {
    // disk is 0-based here
    match l {
        Local::L => {
            if disk == 0 {
                6
            } else {
                (2 * disk) as u8
            }
        }
        Local::M => (2 * disk + 1) as u8,
        Local::R => (2 * disk + 2) as u8,
    }
}

/// One step along a traced arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Step {
    /// Crossing of a real-line segment (1..=6, segment `k` joins punctures
    /// `k` and `k+1`, segment 6 passes through infinity).
    Cross(u8),
    /// Passage through a window point (0-based disk, position).
    Window(u8, u32),
}

/// A traced arc, oriented from its smaller puncture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct TracedArc {
    pub ends: (u8, u8),
    pub start_upper: bool,
    pub steps: Vec<Step>,
}

/// Canonical isotopy invariant of a single arc: endpoints, the half-plane
/// it leaves its first endpoint into, and its reduced crossing word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArcKey {
    pub ends: (u8, u8),
    pub start_upper: bool,
    pub word: Vec<u8>,
}

fn adjacent(puncture: u8, seg: u8) -> bool {
    let prev = if puncture == 1 { 6 } else { puncture - 1 };
    seg == puncture || seg == prev
}

fn punctures_adjacent(a: u8, b: u8) -> bool {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    b - a == 1 || (a == 1 && b == 6)
}

impl ArcKey {
    /// Reduces a crossing word: cancels bigons with the line and half-bigons
    /// at the punctures, then orients from the smaller puncture.
    pub fn reduce(start: u8, end: u8, start_upper: bool, word: &[u8]) -> ArcKey {
        let mut upper = start_upper;
        let mut stack: Vec<u8> = Vec::with_capacity(word.len());
        for &s in word {
            if stack.last() == Some(&s) {
                stack.pop();
            } else {
                stack.push(s);
            }
        }
        // The word is freely reduced; trimming an end cannot create a new
        // adjacent pair, but can expose another half-bigon.
        let mut lo = 0;
        let mut hi = stack.len();
        loop {
            if lo < hi && adjacent(start, stack[lo]) {
                lo += 1;
                upper = !upper;
                continue;
            }
            if lo < hi && adjacent(end, stack[hi - 1]) {
                hi -= 1;
                continue;
            }
            break;
        }
        let mut w = stack[lo..hi].to_vec();
        let (mut a, mut b) = (start, end);
        if a > b {
            if w.len() % 2 == 1 {
                upper = !upper;
            }
            w.reverse();
            std::mem::swap(&mut a, &mut b);
        }
        if w.is_empty() && punctures_adjacent(a, b) {
            upper = false;
        }
        ArcKey {
            ends: (a, b),
            start_upper: upper,
            word: w,
        }
    }
}

impl ArcKey {
    /// Signed number of crossings with the chord of the lower half-plane
    /// joining punctures `x` and `y`, neither an endpoint of this arc.
    ///
    /// The boundary circle of each half-plane carries twelve sites in cyclic
    /// order: puncture 1, segment 1, puncture 2, ..., segment 6.
    pub fn lower_crossings(&self, x: u8, y: u8) -> i64 {
        let site_p = |k: u8| 2 * (k as i64 - 1);
        let site_s = |k: u8| 2 * (k as i64 - 1) + 1;
        let (sx, sy) = (site_p(x), site_p(y));
        let inside = |a: i64| {
            let d = (a - sx).rem_euclid(12);
            d > 0 && d < (sy - sx).rem_euclid(12)
        };
        let mut sites = vec![site_p(self.ends.0)];
        sites.extend(self.word.iter().map(|&w| site_s(w)));
        sites.push(site_p(self.ends.1));
        let mut upper = self.start_upper;
        let mut total = 0;
        for c in sites.windows(2) {
            if !upper {
                match (inside(c[0]), inside(c[1])) {
                    (true, false) => total += 1,
                    (false, true) => total -= 1,
                    _ => {}
                }
            }
            upper = !upper;
        }
        total
    }
}

/// A fully realized arc system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcSystem {
    pub dehn: DehnCoordinate,
    pub routing: PantsRouting,
    pub disks: [DiskPattern; 3],
    /// Window words, labels in `1..=3`, left to right.
    pub words: [Vec<Label>; 3],
    /// Endpoints of the arcs labelled 1, 2, 3.
    pub endpoints: [(u8, u8); 3],
    /// Canonical keys of the arcs labelled 1, 2, 3.
    pub arcs: [ArcKey; 3],
    pub(crate) traced: [TracedArc; 3],
}

/// Outside partner of a window point.
#[derive(Clone, Copy, Debug)]
struct Outside {
    disk: u8,
    pos: u32,
    word: &'static [u8],
}

const NO_WORD: &[u8] = &[];
const LOOP1_X: &[u8] = &[4, 2];
const LOOP1_Y: &[u8] = &[2, 4];
const LOOP2_X: &[u8] = &[6, 4];
const LOOP2_Y: &[u8] = &[4, 6];
const LOOP3_X: &[u8] = &[2, 4];
const LOOP3_Y: &[u8] = &[4, 2];

fn outside_table(p: [u32; 3], r: &PantsRouting) -> [Vec<Outside>; 3] {
    let blank = Outside {
        disk: 0,
        pos: 0,
        word: NO_WORD,
    };
    let mut t: [Vec<Outside>; 3] = [
        vec![blank; p[0] as usize],
        vec![blank; p[1] as usize],
        vec![blank; p[2] as usize],
    ];
    // Block starts per window.
    let (m12, m13, m23) = (r.m12, r.m13, r.m23);
    let [s1, s2, s3] = r.s;
    // window 1: [m13][x][m12][y]
    let w1_m13 = 0;
    let w1_x = m13;
    let w1_m12 = m13 + s1;
    let w1_y = m13 + s1 + m12;
    // window 2: [m12][x][m23][y]
    let w2_m12 = 0;
    let w2_x = m12;
    let w2_m23 = m12 + s2;
    let w2_y = m12 + s2 + m23;
    // window 3: [y][m23][x][m13]
    let w3_y = 0;
    let w3_m23 = s3;
    let w3_x = s3 + m23;
    let w3_m13 = s3 + m23 + s3;

    let mut pair = |da: usize, a: u32, db: usize, b: u32, wa: &'static [u8], wb: &'static [u8]| {
        t[da][a as usize] = Outside {
            disk: db as u8,
            pos: b,
            word: wa,
        };
        t[db][b as usize] = Outside {
            disk: da as u8,
            pos: a,
            word: wb,
        };
    };
    for k in 0..m13 {
        pair(0, w1_m13 + k, 2, w3_m13 + (m13 - 1 - k), NO_WORD, NO_WORD);
    }
    for k in 0..m12 {
        pair(0, w1_m12 + k, 1, w2_m12 + (m12 - 1 - k), NO_WORD, NO_WORD);
    }
    for k in 0..m23 {
        pair(1, w2_m23 + k, 2, w3_m23 + (m23 - 1 - k), NO_WORD, NO_WORD);
    }
    for k in 0..s1 {
        pair(0, w1_x + k, 0, w1_y + (s1 - 1 - k), LOOP1_X, LOOP1_Y);
    }
    for k in 0..s2 {
        pair(1, w2_x + k, 1, w2_y + (s2 - 1 - k), LOOP2_X, LOOP2_Y);
    }
    for k in 0..s3 {
        pair(2, w3_y + k, 2, w3_x + (s3 - 1 - k), LOOP3_Y, LOOP3_X);
    }
    t
}

/// Outside partner `(disk, position)` of every window point, 0-based.
pub(crate) fn outside_partners(p: [u32; 3]) -> Result<[Vec<(u8, u32)>; 3]> {
    let r = route_pants(p)?;
    let t = outside_table(p, &r);
    Ok(t.map(|v| v.into_iter().map(|o| (o.disk, o.pos)).collect()))
}

/// Builds the arc system of a coordinate.
pub fn realize(c: &DehnCoordinate) -> Result<ArcSystem> {
    c.validate()?;
    let routing = route_pants(c.p)?;
    let disks = [
        DiskPattern::decode(1, c.p[0], c.q[0])?,
        DiskPattern::decode(2, c.p[1], c.q[1])?,
        DiskPattern::decode(3, c.p[2], c.q[2])?,
    ];
    let outside = outside_table(c.p, &routing);
    let geo: [Option<DiskGeometry>; 3] = std::array::from_fn(|d| {
        if c.p[d] == 0 {
            None
        } else {
            Some(DiskGeometry::new(c.p[d], c.q[d]))
        }
    });

    let mut label_of: [Vec<Label>; 3] = std::array::from_fn(|d| vec![0u8; c.p[d] as usize]);
    let mut arcs_by_start: Vec<TracedArc> = Vec::with_capacity(3);
    let mut used = [false; 7];
    let mut local = Vec::new();

    for start in 1u8..=6 {
        if used[start as usize] {
            continue;
        }
        let disk = ((start - 1) / 2) as usize;
        let mut steps = Vec::new();
        let start_upper = start % 2 == 0 && geo[disk].is_some();
        let end: u8;
        match geo[disk] {
            None => {
                end = if start % 2 == 1 { start + 1 } else { start - 1 };
            }
            Some(g) => {
                let j = if start % 2 == 1 {
                    g.left_window()
                } else {
                    g.right_window()
                };
                local.clear();
                g.annulus_word(j, &mut local);
                for &l in local.iter().rev() {
                    steps.push(Step::Cross(global_segment(disk, l)));
                }
                let (mut d, mut pos) = (disk, j);
                let mut guard = 0usize;
                loop {
                    guard += 1;
                    if guard > 4 * (c.total_weight() as usize + 4) {
                        return Err(Error::Internal("tracing did not terminate".into()));
                    }
                    steps.push(Step::Window(d as u8, pos as u32));
                    let o = outside[d][pos];
                    steps.extend(o.word.iter().map(|&s| Step::Cross(s)));
                    d = o.disk as usize;
                    pos = o.pos as usize;
                    steps.push(Step::Window(d as u8, pos as u32));
                    let g = geo[d].expect("window point on an empty disk");
                    local.clear();
                    let e = g.piece_word(pos, &mut local);
                    steps.extend(local.iter().map(|&l| Step::Cross(global_segment(d, l))));
                    match e {
                        InnerEnd::Left => {
                            end = 2 * d as u8 + 1;
                            break;
                        }
                        InnerEnd::Right => {
                            end = 2 * d as u8 + 2;
                            break;
                        }
                        InnerEnd::Window(j2) => pos = j2,
                    }
                }
            }
        }
        if end == start {
            return Err(Error::ComponentCount(format!(
                "arc from puncture {start} returns to it"
            )));
        }
        used[start as usize] = true;
        used[end as usize] = true;
        arcs_by_start.push(TracedArc {
            ends: (start, end),
            start_upper,
            steps,
        });
    }
    if arcs_by_start.len() != 3 {
        return Err(Error::ComponentCount(format!(
            "{} arcs traced",
            arcs_by_start.len()
        )));
    }

    // Labelling: the arc at puncture 1 is 1; the arc at 3 (if arc 1 ends at
    // 2) or at 2 (otherwise) is 2; the last is 3.
    let holds = |a: &TracedArc, x: u8| a.ends.0 == x || a.ends.1 == x;
    let first = arcs_by_start.iter().position(|a| holds(a, 1)).unwrap();
    let second_puncture = if holds(&arcs_by_start[first], 2) { 3 } else { 2 };
    let second = arcs_by_start
        .iter()
        .position(|a| holds(a, second_puncture))
        .unwrap();
    let third = (0..3).find(|&k| k != first && k != second).unwrap();
    let order = [first, second, third];

    let mut visited = 0usize;
    for (li, &k) in order.iter().enumerate() {
        for st in &arcs_by_start[k].steps {
            if let Step::Window(d, pos) = *st {
                let slot = &mut label_of[d as usize][pos as usize];
                if *slot == 0 {
                    visited += 1;
                }
                *slot = li as u8 + 1;
            }
        }
    }
    if visited != c.total_weight() as usize {
        return Err(Error::ClosedComponent);
    }

    let mut taken: Vec<Option<TracedArc>> = arcs_by_start.into_iter().map(Some).collect();
    let traced: [TracedArc; 3] = std::array::from_fn(|li| taken[order[li]].take().unwrap());
    let arcs: [ArcKey; 3] = std::array::from_fn(|li| traced[li].key());
    let endpoints = std::array::from_fn(|li| arcs[li].ends);
    Ok(ArcSystem {
        dehn: *c,
        routing,
        disks,
        words: label_of,
        endpoints,
        arcs,
        traced,
    })
}

impl TracedArc {
    pub fn crossing_word(&self) -> Vec<u8> {
        self.steps
            .iter()
            .filter_map(|s| match s {
                Step::Cross(x) => Some(*x),
                Step::Window(..) => None,
            })
            .collect()
    }

    pub fn key(&self) -> ArcKey {
        ArcKey::reduce(self.ends.0, self.ends.1, self.start_upper, &self.crossing_word())
    }
}

/// Reads the coordinate back off a realized system.
pub fn dehn_of(s: &ArcSystem) -> DehnCoordinate {
    let mut c = DehnCoordinate::INFINITY;
    for (d, disk) in s.disks.iter().enumerate() {
        c.p[d] = disk.window_size;
        c.q[d] = if disk.window_size == 0 { 0 } else { disk.q() };
    }
    c
}

/// Which boundary circles to count intersections with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiskSel {
    One(usize),
    All,
}

/// Intersection count with `∂E_disk` (1-based) or with all three circles.
pub fn weight(s: &ArcSystem, disk: DiskSel) -> u64 {
    match disk {
        DiskSel::One(d) => s.words[d - 1].len() as u64,
        DiskSel::All => s.words.iter().map(|w| w.len() as u64).sum(),
    }
}

impl ArcSystem {
    pub fn coordinate(&self) -> DehnCoordinate {
        self.dehn
    }

    pub fn weight1(&self) -> u64 {
        self.words[0].len() as u64
    }

    pub fn total_weight(&self) -> u64 {
        self.dehn.total_weight()
    }

    /// Dots of arc `label` on window `disk` (0-based).
    pub fn dots(&self, label: Label, disk: usize) -> usize {
        self.words[disk].iter().filter(|&&l| l == label).count()
    }

    pub fn arc(&self, label: Label) -> &ArcKey {
        &self.arcs[label as usize - 1]
    }

    /// Whether the arc with this label lies inside one disk.
    pub fn arc_inside_disk(&self, label: Label) -> bool {
        (0..3).all(|d| self.dots(label, d) == 0)
    }

    /// JSON debug dump: routing counts, disk matchings and window words.
    pub fn debug_json(&self) -> serde_json::Value {
        serde_json::json!({
            "coordinate": self.dehn.flat(),
            "routing": {
                "m12": self.routing.m12,
                "m13": self.routing.m13,
                "m23": self.routing.m23,
                "s": self.routing.s,
            },
            "disks": self.disks.iter().map(|d| serde_json::json!({
                "disk": d.disk,
                "window_size": d.window_size,
                "twist": d.twist,
                "offset": d.offset,
                "matching": d.matching.iter().map(|m| match m {
                    InnerEnd::Left => serde_json::json!("left"),
                    InnerEnd::Right => serde_json::json!("right"),
                    InnerEnd::Window(j) => serde_json::json!(j),
                }).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "words": self.words,
            "endpoints": self.endpoints,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn routing_examples() {
        assert_eq!(
            route_pants([0, 0, 0]).unwrap(),
            PantsRouting { m12: 0, m13: 0, m23: 0, s: [0; 3] }
        );
        assert_eq!(
            route_pants([2, 1, 1]).unwrap(),
            PantsRouting { m12: 1, m13: 1, m23: 0, s: [0; 3] }
        );
        assert_eq!(
            route_pants([4, 1, 1]).unwrap(),
            PantsRouting { m12: 1, m13: 1, m23: 0, s: [1, 0, 0] }
        );
        assert_eq!(route_pants([1, 1, 1]), Err(Error::Parity { sum: 3 }));
    }

    #[test]
    fn routing_balances_counts() {
        for a in 0..9u32 {
            for b in 0..9u32 {
                for c in 0..9u32 {
                    if (a + b + c) % 2 == 1 {
                        continue;
                    }
                    let r = route_pants([a, b, c]).unwrap();
                    assert_eq!(a, r.m12 + r.m13 + 2 * r.s[0]);
                    assert_eq!(b, r.m12 + r.m23 + 2 * r.s[1]);
                    assert_eq!(c, r.m13 + r.m23 + 2 * r.s[2]);
                    assert!(r.s.iter().filter(|&&x| x > 0).count() <= 1);
                    if r.s[0] > 0 {
                        assert_eq!(r.m23, 0);
                    }
                    if r.s[1] > 0 {
                        assert_eq!(r.m13, 0);
                    }
                    if r.s[2] > 0 {
                        assert_eq!(r.m12, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn infinity_tangle() {
        let s = realize(&DehnCoordinate::INFINITY).unwrap();
        assert!(s.words.iter().all(|w| w.is_empty()));
        assert_eq!(s.endpoints, [(1, 2), (3, 4), (5, 6)]);
        assert_eq!(dehn_of(&s), DehnCoordinate::INFINITY);
        assert_eq!(weight(&s, DiskSel::One(1)), 0);
    }

    #[test]
    fn zero_window_needs_zero_twist() {
        let c = DehnCoordinate::new([0, 2, 2], [1, 0, 0]);
        assert_eq!(realize(&c), Err(Error::ZeroWindowTwist { disk: 1, q: 1 }));
    }

    #[test]
    fn odd_window_is_rejected() {
        let c = DehnCoordinate::new([2, 1, 1], [0, 0, 0]);
        assert_eq!(realize(&c), Err(Error::OddWindow { disk: 2, size: 1 }));
    }

    #[test]
    fn reduction_cancels_half_bigons() {
        // leaves puncture 1, crosses segment 6 (adjacent) then 3, ends at 5
        let k = ArcKey::reduce(1, 5, false, &[6, 3]);
        assert_eq!(k.word, vec![3]);
        assert!(k.start_upper);
        // bigon
        let k = ArcKey::reduce(1, 5, false, &[3, 4, 4, 3]);
        assert!(k.word.is_empty());
        // orientation
        let k = ArcKey::reduce(5, 1, true, &[3]);
        assert_eq!(k.ends, (1, 5));
        assert!(!k.start_upper);
    }
}
