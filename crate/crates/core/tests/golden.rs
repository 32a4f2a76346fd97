//! Values computed once by the oracles and frozen, plus small fixed cases.

use std::collections::HashSet;

use tangle3::oracle::{bfs_class, coordinate_box, enumerate_normal, planar, sample_valid};
use tangle3::{
    completions, explore, find_violation, is_normal, normalize, realize, representative, weight, Branch, DehnCoordinate,
    DiskSel, Error,
};

fn c(v: [i64; 6]) -> DehnCoordinate {
    DehnCoordinate::from_flat(v).unwrap()
}

#[test]
fn smallest_closed_component() {
    let first = coordinate_box(6, |_| 3)
        .into_iter()
        .find(|x| x.validate().is_ok() && realize(x).is_err())
        .unwrap();
    assert_eq!(first, c([0, 0, 0, 0, 6, -1]));
    assert_eq!(realize(&first).unwrap_err(), Error::ClosedComponent);
}

#[test]
fn p_222_encodings_are_distinct() {
    let systems: Vec<_> = coordinate_box(6, |_| 3)
        .into_iter()
        .filter(|x| x.p == [2, 2, 2])
        .map(|x| realize(&x).unwrap())
        .collect();
    assert_eq!(systems.len(), 343);
    let keys: HashSet<_> = systems.iter().map(planar::sorted_keys).collect();
    assert_eq!(keys.len(), 343);
    // window words alone do not separate them: only two word triples occur
    let words: HashSet<_> = systems.iter().map(|s| s.words.clone()).collect();
    assert_eq!(words.len(), 2);
}

#[test]
fn smallest_p_222() {
    let s = realize(&c([2, -3, 2, -3, 2, -3])).unwrap();
    assert_eq!(s.words, [vec![2, 1], vec![1, 3], vec![3, 2]]);
    assert!(is_normal(&s));
}

#[test]
fn odd_window_has_no_weight() {
    assert_eq!(
        realize(&c([2, 0, 1, 0, 1, 0])).unwrap_err(),
        Error::OddWindow { disk: 2, size: 1 }
    );
    let s = realize(&c([2, 0, 2, 0, 2, 0])).unwrap();
    assert_eq!(weight(&s, DiskSel::All), 6);
    assert_eq!(weight(&s, DiskSel::One(1)), 2);
}

#[test]
fn smallest_non_normal() {
    let s = coordinate_box(6, |_| 3)
        .into_iter()
        .filter_map(|x| realize(&x).ok())
        .find(|s| !is_normal(s))
        .unwrap();
    assert_eq!(s.dehn, c([0, 0, 0, 0, 2, -3]));
    let v = find_violation(&s).unwrap();
    assert_eq!((v.disk, v.position), (3, 0));
    assert_eq!(normalize(&s).unwrap().dehn, DehnCoordinate::INFINITY);
}

#[test]
fn normal_count_6_3() {
    let v = enumerate_normal(6, 3);
    assert_eq!(v.len(), 491);
    assert!(v.windows(2).all(|w| w[0].dehn < w[1].dehn));
}

#[test]
fn first_all_meeting_completions() {
    let s = enumerate_normal(12, 3)
        .into_iter()
        .find(|s| (1..=3).all(|l| s.words[0].contains(&l)))
        .unwrap();
    assert_eq!(s.dehn, c([4, -3, 2, -3, 2, -3]));
    let sets: Vec<Vec<[i64; 6]>> = (1..=3)
        .map(|i| completions(&s, i).iter().map(|t| t.dehn.flat()).collect())
        .collect();
    assert_eq!(
        sets,
        vec![
            vec![[4, -3, 2, -3, 2, -3], [6, -6, 2, -2, 4, -6]],
            vec![[4, -3, 2, -3, 2, -3], [6, -5, 4, -6, 2, -2]],
            vec![[2, -1, 2, -3, 2, -4], [4, -3, 2, -3, 2, -3], [4, -2, 2, -4, 2, -4]],
        ]
    );
}

#[test]
fn explore_radius_4() {
    for (seed, n) in [([2, 0, 2, 0, 2, 0], 91), ([4, 1, 2, 0, 2, -1], 67)] {
        let s = realize(&c(seed)).unwrap();
        let b = explore(&s, 4).unwrap();
        assert_eq!(b.vertices.len(), n);
        assert_eq!(b.edges.len(), n - 1);
        let mut via_oracle: Vec<[i64; 6]> = bfs_class(&s, 4).iter().map(|(x, _)| x.flat()).collect();
        let mut via_explore: Vec<[i64; 6]> = b.vertices.iter().map(|v| v.coordinate).collect();
        via_oracle.sort();
        via_explore.sort();
        assert_eq!(via_oracle, via_explore);
    }
}

#[test]
fn empty_window_midpoint() {
    let r = representative(&realize(&c([0, 0, 2, -1, 2, 6])).unwrap()).unwrap();
    assert_eq!(r.branch, Branch::EmptyWindow(1));
    assert_eq!(r.q_sum, Some(5));
    assert_eq!(r.representative, c([0, 0, 2, 3, 2, 2]));
    assert!(r.unique_by_rule);
}

#[test]
fn sample_8_4_100_42() {
    let v = sample_valid(8, 4, 100, 42);
    assert_eq!(v.len(), 100);
    assert!(v.iter().all(|x| realize(x).is_ok()));
}

#[test]
fn infinity_separated() {
    let inf = DehnCoordinate::INFINITY;
    let other = c([2, 0, 2, 0, 2, 0]);
    assert!(tangle3::descend_e1(&realize(&other).unwrap()).weight1() > 0);
    assert!(!tangle3::equivalent(&inf, &other).unwrap());
    assert!(tangle3::equivalent(&inf, &inf).unwrap());
}
