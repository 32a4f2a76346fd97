//! Breadth-first exploration of the complex of normal systems, where vertices
//! are normal coordinates and edges are jump moves.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jump::{neighbors, Variant};
use crate::normal_form::normalize;
use crate::surface::{ArcSystem, DehnCoordinate, Label};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub coordinate: [i64; 6],
    pub depth: usize,
    pub weight1: u64,
    pub total_weight: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    /// Vertex indices, `from < to`.
    pub from: usize,
    pub to: usize,
    pub arc: Label,
    pub variant: Variant,
}

/// A ball in the complex, with every edge between its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ball {
    pub seed: [i64; 6],
    pub radius: usize,
    /// Ordered by depth, then coordinate; the seed comes first.
    pub vertices: Vec<Vertex>,
    /// Ordered by endpoints.
    pub edges: Vec<Edge>,
}

impl Ball {
    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.vertices.len() && self.connected()
    }

    fn connected(&self) -> bool {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        (0..n).all(|v| find(&mut parent, v) == root)
    }

    /// An edge closing a cycle, if any.
    pub fn cycle_edge(&self) -> Option<&Edge> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                x = p[x];
            }
            x
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
            if a == b {
                return Some(e);
            }
            parent[a] = b;
        }
        None
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.from == v || e.to == v).count()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("ball serializes")
    }

    /// Graphviz rendering; identical balls give identical bytes.
    pub fn export_dot(&self) -> String {
        let mut s = String::from("graph complex {\n  node [shape=box, fontname=\"monospace\"];\n");
        for (k, v) in self.vertices.iter().enumerate() {
            let c = v.coordinate;
            let _ = write!(
                s,
                "  v{k} [label=\"({},{},{},{},{},{})\\nw1={}\"",
                c[0], c[1], c[2], c[3], c[4], c[5], v.weight1
            );
            if k == 0 {
                s.push_str(", style=bold, peripheries=2");
            }
            s.push_str("];\n");
        }
        for e in &self.edges {
            let style = match e.variant {
                Variant::Standard => "solid",
                Variant::Second => "dashed",
            };
            let _ = writeln!(s, "  v{} -- v{} [label=\"{}\", style={style}];", e.from, e.to, e.arc);
        }
        s.push_str("}\n");
        s
    }
}

/// Explores `radius` moves around the normal form of `seed`.
pub fn explore(seed: &ArcSystem, radius: usize) -> Result<Ball> {
    let start = normalize(seed)?;
    let mut depth: BTreeMap<DehnCoordinate, usize> = BTreeMap::from([(start.dehn, 0)]);
    let mut systems: BTreeMap<DehnCoordinate, ArcSystem> = BTreeMap::from([(start.dehn, start.clone())]);
    let mut raw: BTreeSet<(DehnCoordinate, DehnCoordinate, Label, Variant)> = BTreeSet::new();
    let mut frontier = vec![start.clone()];
    for d in 0..=radius {
        let mut next = Vec::new();
        for x in &frontier {
            for n in neighbors(x) {
                let t = n.result.dehn;
                if let std::collections::btree_map::Entry::Vacant(e) = depth.entry(t) {
                    if d == radius {
                        continue;
                    }
                    e.insert(d + 1);
                    systems.insert(t, n.result.clone());
                    next.push(n.result.clone());
                }
                let (a, b) = if x.dehn < t { (x.dehn, t) } else { (t, x.dehn) };
                raw.insert((a, b, n.arc, n.variant));
            }
        }
        frontier = next;
    }
    let mut order: Vec<(usize, DehnCoordinate)> = depth.iter().map(|(c, d)| (*d, *c)).collect();
    order.sort();
    let index: BTreeMap<DehnCoordinate, usize> = order.iter().enumerate().map(|(k, (_, c))| (*c, k)).collect();
    let vertices = order
        .iter()
        .map(|(d, c)| {
            let s = &systems[c];
            Vertex {
                coordinate: c.flat(),
                depth: *d,
                weight1: s.weight1(),
                total_weight: s.total_weight(),
            }
        })
        .collect();
    let mut edges: Vec<Edge> = Vec::new();
    let mut kept = BTreeSet::new();
    for (a, b, arc, variant) in raw {
        let (x, y) = (index[&a], index[&b]);
        let (from, to) = if x < y { (x, y) } else { (y, x) };
        // both directions report the move; keep one
        if kept.insert((from, to, arc)) {
            edges.push(Edge { from, to, arc, variant });
        }
    }
    edges.sort_by_key(|e| (e.from, e.to, e.arc));
    Ok(Ball {
        seed: start.dehn.flat(),
        radius,
        vertices,
        edges,
    })
}

/// Fails with [`Error::Tripwire`] naming the offending edge when the ball has
/// a cycle.
pub fn check_tree(ball: &Ball) -> Result<()> {
    match ball.cycle_edge() {
        None => Ok(()),
        Some(e) => Err(Error::Tripwire(format!(
            "cycle through {:?} and {:?}",
            ball.vertices[e.from].coordinate, ball.vertices[e.to].coordinate
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::realize;

    #[test]
    fn infinity_is_isolated() {
        let b = explore(&realize(&DehnCoordinate::INFINITY).unwrap(), 3).unwrap();
        assert_eq!(b.vertices.len(), 1);
        assert!(b.edges.is_empty());
        assert!(b.is_tree());
        assert!(b.export_dot().contains("v0 [label=\"(0,0,0,0,0,0)\\nw1=0\", style=bold"));
    }

    #[test]
    fn dot_is_stable() {
        let s = realize(&DehnCoordinate::new([2, 2, 2], [1, -1, 0])).unwrap();
        let a = explore(&s, 2).unwrap();
        let b = explore(&s, 2).unwrap();
        assert_eq!(a.export_dot(), b.export_dot());
        assert!(a.is_tree());
        assert!((0..a.vertices.len()).all(|v| a.degree(v) <= 6));
    }
}
