//! Extreme points of finite subsets and window-scale diffuseness scans.
//!
//! `a ∈ S` is extreme when no `h ≠ id` has both `h·a` and `h⁻¹·a` in `S`.
//! Since `h·a ∈ S` forces `h = s·a⁻¹` for some `s ∈ S`, and then
//! `h⁻¹·a = a·s⁻¹·a`, the check reduces to `a·s⁻¹·a ∉ S` for all
//! `s ∈ S ∖ {a}`.

use std::collections::HashSet;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec, Window};

/// Outcome of [`is_extreme`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extremality {
    Extreme,
    /// `h ≠ id` with `h·a ∈ S` and `h⁻¹·a ∈ S`.
    NotExtreme { witness: Element },
}

impl Extremality {
    pub fn is_extreme(&self) -> bool {
        matches!(self, Extremality::Extreme)
    }

    pub fn witness(&self) -> Option<&Element> {
        match self {
            Extremality::Extreme => None,
            Extremality::NotExtreme { witness } => Some(witness),
        }
    }
}

fn check_members(set: &[Element], group: &GroupSpec) -> Result<()> {
    match set.iter().find(|g| !group.contains(g)) {
        Some(g) => Err(Error::NotInGroup(g.encode())),
        None => Ok(()),
    }
}

fn extremality(a: &Element, sorted: &[Element], members: &HashSet<&Element>) -> Extremality {
    let a_left = a;
    for s in sorted.iter().filter(|s| *s != a) {
        if members.contains(&a_left.mul(&s.inverse()).mul(a)) {
            return Extremality::NotExtreme {
                witness: s.mul(&a.inverse()),
            };
        }
    }
    Extremality::Extreme
}

fn canonical(set: &[Element]) -> Vec<Element> {
    let mut v = set.to_vec();
    v.sort();
    v.dedup();
    v
}

/// Whether `a` is an extreme point of `set`. The witness, when there is
/// one, is `s·a⁻¹` for the canonically least `s` that works.
pub fn is_extreme(a: &Element, set: &[Element], group: &GroupSpec) -> Result<Extremality> {
    check_members(set, group)?;
    let sorted = canonical(set);
    if sorted.binary_search(a).is_err() {
        return Err(Error::NotMember(a.encode()));
    }
    let members: HashSet<&Element> = sorted.iter().collect();
    Ok(extremality(a, &sorted, &members))
}

/// Classification of every point of a finite set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremeReport {
    pub subset: Vec<Element>,
    pub extreme: Vec<Element>,
    /// `(a, h)` for every non-extreme `a`.
    pub witnesses: Vec<(Element, Element)>,
}

impl Serialize for ExtremeReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("extreme", &self.extreme)?;
        m.serialize_entry("subset", &self.subset)?;
        m.serialize_entry("witnesses", &self.witnesses)?;
        m.end()
    }
}

/// Extreme points of `set`, in canonical order.
pub fn extreme_points(set: &[Element], group: &GroupSpec) -> Result<ExtremeReport> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    check_members(set, group)?;
    let sorted = canonical(set);
    let members: HashSet<&Element> = sorted.iter().collect();
    let mut report = ExtremeReport {
        subset: sorted.clone(),
        extreme: Vec::new(),
        witnesses: Vec::new(),
    };
    for a in &sorted {
        match extremality(a, &sorted, &members) {
            Extremality::Extreme => report.extreme.push(a.clone()),
            Extremality::NotExtreme { witness } => report.witnesses.push((a.clone(), witness)),
        }
    }
    Ok(report)
}

/// Result of [`diffuse_scan`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub checked: u64,
    pub counterexample: Option<Vec<Element>>,
    pub budget_exhausted: bool,
}

impl Serialize for ScanReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("budget_exhausted", &self.budget_exhausted)?;
        m.serialize_entry("checked", &self.checked)?;
        let cx = self
            .counterexample
            .as_ref()
            .map(|subset| serde_json::json!({ "subset": subset }));
        m.serialize_entry("counterexample", &cx)?;
        m.end()
    }
}

/// Largest window [`diffuse_scan`] accepts.
pub const MAX_SCAN_WINDOW: usize = 128;

/// For each pair `(a, s)` of window indices, the index of `a·s⁻¹·a` if it
/// lies in the window.
struct ReflectionTable {
    n: usize,
    at: Vec<Option<u8>>,
}

impl ReflectionTable {
    fn new(window: &Window) -> Self {
        let n = window.len();
        let mut at = vec![None; n * n];
        for (i, a) in window.iter().enumerate() {
            for (j, s) in window.iter().enumerate() {
                if i != j {
                    at[i * n + j] = window.index_of(&a.mul(&s.inverse()).mul(a)).map(|k| k as u8);
                }
            }
        }
        Self { n, at }
    }

    fn has_extreme_point(&self, members: &[usize], mask: u128) -> bool {
        members.iter().any(|&i| {
            members.iter().all(|&j| match self.at[i * self.n + j] {
                Some(k) => mask & (1u128 << k) == 0,
                None => true,
            })
        })
    }
}

/// Advances `idx` to the next `k`-combination of `0..n` in lexicographic
/// order; false when exhausted.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Checks every nonempty subset of `window` with at most `max_subset_size`
/// elements for an extreme point, by size and then canonical order, and
/// stops at the first subset without one. At most `budget` subsets are
/// examined when a budget is given.
pub fn diffuse_scan(
    group: &GroupSpec,
    window: &Window,
    max_subset_size: usize,
    budget: Option<u64>,
) -> Result<ScanReport> {
    if max_subset_size == 0 {
        return Err(Error::Precondition("max_subset_size must be at least 1".into()));
    }
    if window.group() != group {
        return Err(Error::GroupMismatch(format!("window lives in {}, not {group}", window.group())));
    }
    let n = window.len();
    if n > MAX_SCAN_WINDOW {
        return Err(Error::CapExceeded {
            size: n,
            cap: MAX_SCAN_WINDOW,
        });
    }
    let table = ReflectionTable::new(window);
    let mut report = ScanReport {
        checked: 0,
        counterexample: None,
        budget_exhausted: false,
    };
    for k in 1..=max_subset_size.min(n) {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            if budget.is_some_and(|b| report.checked >= b) {
                report.budget_exhausted = true;
                return Ok(report);
            }
            report.checked += 1;
            let mask = idx.iter().fold(0u128, |m, &i| m | 1u128 << i);
            if !table.has_extreme_point(&idx, mask) {
                report.counterexample = Some(idx.iter().map(|&i| window.elements()[i].clone()).collect());
                return Ok(report);
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: i64) -> Element {
        Element::Lattice(vec![c])
    }

    fn zs(cs: &[i64]) -> Vec<Element> {
        cs.iter().map(|c| z(*c)).collect()
    }

    /// Definition-level check with `h` ranging over a ball.
    fn brute_extreme(a: &Element, set: &[Element], hs: &Window) -> bool {
        !hs.iter().any(|h| {
            !h.is_identity() && set.contains(&h.mul(a)) && set.contains(&h.inverse().mul(a))
        })
    }

    #[test]
    fn integer_examples() {
        let g = GroupSpec::integers();
        let s = zs(&[-2, -1, 0, 1, 2]);
        assert_eq!(is_extreme(&z(2), &s, &g).unwrap(), Extremality::Extreme);
        assert_eq!(
            is_extreme(&z(1), &s, &g).unwrap(),
            Extremality::NotExtreme { witness: z(-1) }
        );
        assert_eq!(is_extreme(&z(7), &s, &g).unwrap_err(), Error::NotMember("7".into()));
        assert_eq!(extreme_points(&s, &g).unwrap().extreme, zs(&[2, -2]));
        assert_eq!(extreme_points(&zs(&[4]), &g).unwrap().extreme, zs(&[4]));
        assert_eq!(extreme_points(&[], &g).unwrap_err(), Error::EmptySet);
    }

    #[test]
    fn free_example() {
        let g = GroupSpec::free(2).unwrap();
        let s = g.decode_all(&["1", "a", "A"]).unwrap();
        assert!(is_extreme(&s[1], &s, &g).unwrap().is_extreme());
        assert_eq!(is_extreme(&s[0], &s, &g).unwrap().witness(), Some(&s[1]));
    }

    #[test]
    fn lattice_example() {
        let g = GroupSpec::integer_lattice(2).unwrap();
        let s = g.decode_all(&["0,0", "1,0", "0,1"]).unwrap();
        let r = extreme_points(&s, &g).unwrap();
        assert!(r.extreme.contains(&s[1]) && r.extreme.contains(&s[2]));
    }

    #[test]
    fn report_json() {
        let g = GroupSpec::integers();
        let r = extreme_points(&zs(&[-1, 0, 1]), &g).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"extreme":["1","-1"],"subset":["0","1","-1"],"witnesses":[["0","1"]]}"#
        );
    }

    #[test]
    fn scans_find_no_counterexample() {
        let z = GroupSpec::integers();
        let r = diffuse_scan(&z, &Window::ball(&z, 3, true), 7, None).unwrap();
        assert_eq!((r.checked, r.counterexample, r.budget_exhausted), (127, None, false));
        let f = GroupSpec::free(2).unwrap();
        let r = diffuse_scan(&f, &Window::ball(&f, 1, true), 5, None).unwrap();
        assert_eq!((r.checked, r.counterexample), (31, None));
        let k = GroupSpec::klein();
        let r = diffuse_scan(&k, &Window::ball(&k, 2, true), 4, None).unwrap();
        assert_eq!(r.counterexample, None);
        assert_eq!(
            serde_json::to_string(&diffuse_scan(&z, &Window::ball(&z, 1, true), 3, Some(4)).unwrap()).unwrap(),
            r#"{"budget_exhausted":true,"checked":4,"counterexample":null}"#
        );
    }

    #[test]
    fn formula_agrees_with_definition() {
        for (g, r) in [(GroupSpec::integers(), 3), (GroupSpec::free(2).unwrap(), 1), (GroupSpec::klein(), 1)] {
            let w = Window::ball(&g, r, true);
            let hs = Window::ball(&g, 2 * r, true);
            let n = w.len();
            for mask in 1u32..(1 << n) {
                let set: Vec<Element> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| w.elements()[i].clone()).collect();
                for a in &set {
                    let fast = is_extreme(a, &set, &g).unwrap();
                    assert_eq!(fast.is_extreme(), brute_extreme(a, &set, &hs), "{a} in {set:?}");
                    if let Some(h) = fast.witness() {
                        assert!(!h.is_identity() && set.contains(&h.mul(a)) && set.contains(&h.inverse().mul(a)));
                    }
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn symmetric_sets_have_symmetric_extremes(cs in prop::collection::btree_set(1i64..30, 1..8)) {
                let g = GroupSpec::integers();
                let mut set: Vec<Element> = cs.iter().flat_map(|c| [z(*c), z(-c)]).collect();
                set.push(z(0));
                let r = extreme_points(&set, &g).unwrap();
                for a in &r.extreme {
                    prop_assert!(r.extreme.contains(&a.inverse()));
                }
            }

            #[test]
            fn maximum_is_extreme(cs in prop::collection::btree_set(-40i64..40, 1..10)) {
                let g = GroupSpec::integers();
                let set: Vec<Element> = cs.iter().map(|c| z(*c)).collect();
                let max = z(*cs.iter().max().unwrap());
                prop_assert!(is_extreme(&max, &set, &g).unwrap().is_extreme());
            }
        }
    }
}
