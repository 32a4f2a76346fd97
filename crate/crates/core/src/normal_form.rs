//! Normality of window words and reduction to a normal system.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::search;
use crate::surface::{ArcKey, ArcSystem, Step, TracedArc};

/// Two adjacent dots of the same arc on one window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NormalityViolation {
    /// Disk index, `1..=3`.
    pub disk: usize,
    /// 0-based position of the left dot of the pair.
    pub position: usize,
}

pub fn is_normal(s: &ArcSystem) -> bool {
    find_violation(s).is_none()
}

/// The violation with the smallest `(disk, position)`.
pub fn find_violation(s: &ArcSystem) -> Option<NormalityViolation> {
    s.words.iter().enumerate().find_map(|(d, w)| {
        w.windows(2)
            .position(|x| x[0] == x[1])
            .map(|position| NormalityViolation {
                disk: d + 1,
                position,
            })
    })
}

/// Reroutes the arc through the violating pair along the window.
///
/// The run of equal dots containing the pair meets only that arc. The arc is
/// cut at the first and the last of its passages through the run and the two
/// outer pieces are joined by a path running next to the window, which meets
/// no other arc. The result joins the same punctures, so it belongs to the
/// same tangle, and it meets the windows at least once less.
pub fn bridge_replace(s: &ArcSystem, v: NormalityViolation) -> Result<ArcSystem> {
    let bad = Error::NotAViolation {
        disk: v.disk,
        position: v.position,
    };
    if v.disk == 0 || v.disk > 3 {
        return Err(bad);
    }
    let d = v.disk - 1;
    let w = &s.words[d];
    if v.position + 1 >= w.len() || w[v.position] != w[v.position + 1] {
        return Err(bad);
    }
    let label = w[v.position];
    let mut lo = v.position;
    while lo > 0 && w[lo - 1] == label {
        lo -= 1;
    }
    let mut hi = v.position + 1;
    while hi + 1 < w.len() && w[hi + 1] == label {
        hi += 1;
    }

    let arc = &s.traced[label as usize - 1];
    let in_run = |st: &Step| matches!(*st, Step::Window(dd, pos) if dd as usize == d && (lo..=hi).contains(&(pos as usize)));
    let first = arc.steps.iter().position(in_run).ok_or_else(|| Error::Internal("run not on arc".into()))?;
    let last = arc.steps.iter().rposition(in_run).unwrap();
    if first == last {
        return Err(Error::Internal("run crossed once".into()));
    }
    let mut steps: Vec<Step> = arc.steps[..first].to_vec();
    steps.extend_from_slice(&arc.steps[last + 1..]);
    let shortcut = TracedArc {
        ends: arc.ends,
        start_upper: arc.start_upper,
        steps,
    };
    let key: ArcKey = shortcut.key();

    let max_new: [u32; 3] = std::array::from_fn(|m| s.dots(label, m) as u32);
    let out = search::locate(s, label, &key, max_new).ok_or_else(|| {
        Error::Internal(format!(
            "no coordinate found after rerouting arc {label} of {}",
            s.dehn
        ))
    })?;
    if out.total_weight() >= s.total_weight() {
        return Err(Error::Internal(format!(
            "rerouting did not reduce the weight of {}",
            s.dehn
        )));
    }
    Ok(out)
}

/// Applies [`bridge_replace`] at the first violation until none is left.
pub fn normalize(s: &ArcSystem) -> Result<ArcSystem> {
    let mut cur = s.clone();
    while let Some(v) = find_violation(&cur) {
        cur = bridge_replace(&cur, v)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{realize, DehnCoordinate};

    #[test]
    fn infinity_is_normal() {
        let s = realize(&DehnCoordinate::INFINITY).unwrap();
        assert!(is_normal(&s));
        assert_eq!(find_violation(&s), None);
        assert_eq!(normalize(&s).unwrap(), s);
    }

    #[test]
    fn rejects_non_violation() {
        let s = realize(&DehnCoordinate::INFINITY).unwrap();
        let v = NormalityViolation { disk: 1, position: 0 };
        assert_eq!(
            bridge_replace(&s, v),
            Err(Error::NotAViolation { disk: 1, position: 0 })
        );
    }
}
