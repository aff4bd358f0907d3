use serde::Serialize;

use super::peel::peel_solve;
use super::problem::ExtensionProblem;
use super::rset::RSet;
use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec, Window};
use crate::order::OrderTable;

/// Agreement between the solutions on two consecutive balls.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerLink {
    pub inner: usize,
    pub outer: usize,
    pub coherent: bool,
    /// First pair of the inner window on which the two tables differ.
    pub mismatch: Option<(Element, Element)>,
}

/// Solutions on nested balls and whether each restricts to the previous one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerReport {
    pub coherent: bool,
    pub links: Vec<TowerLink>,
    pub radii: Vec<usize>,
    #[serde(skip)]
    pub tables: Vec<OrderTable>,
}

fn first_mismatch(inner: &OrderTable, outer: &OrderTable) -> Option<(Element, Element)> {
    let w = inner.window();
    w.iter()
        .flat_map(|g| w.iter().map(move |h| (g, h)))
        .find(|(g, h)| inner.less(g, h) != outer.less(g, h))
        .map(|(g, h)| (g.clone(), h.clone()))
}

/// Runs [`peel_solve`] on each ball (with `R` restricted to it) and compares
/// every solution with the restriction of the next one.
pub fn tower_solve(group: &GroupSpec, radii: &[usize], r: &RSet, require_total: bool) -> Result<TowerReport> {
    if radii.is_empty() || radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(format!(
            "radii must be nonempty and increasing, got {radii:?}"
        )));
    }
    let tables = radii
        .iter()
        .map(|&radius| {
            let window = Window::ball(group, radius, true);
            let p = ExtensionProblem::new(window.clone(), r.restrict(&window), require_total)?;
            peel_solve(&p)
        })
        .collect::<Result<Vec<_>>>()?;
    let links: Vec<TowerLink> = tables
        .windows(2)
        .zip(radii.windows(2))
        .map(|(t, rr)| {
            let mismatch = first_mismatch(&t[0], &t[1]);
            TowerLink {
                inner: rr[0],
                outer: rr[1],
                coherent: mismatch.is_none(),
                mismatch,
            }
        })
        .collect();
    Ok(TowerReport {
        coherent: links.iter().all(|l| l.coherent),
        links,
        radii: radii.to_vec(),
        tables,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::LeftOrderCone;

    #[test]
    fn integer_tower() {
        let z = GroupSpec::integers();
        let r = RSet::decode(&z, &["1", "2", "3"]).unwrap();
        let rep = tower_solve(&z, &[1, 2, 3], &r, true).unwrap();
        assert!(rep.coherent, "{rep:?}");
        assert_eq!(
            serde_json::to_string(&rep).unwrap(),
            r#"{"coherent":true,"links":[{"inner":1,"outer":2,"coherent":true,"mismatch":null},{"inner":2,"outer":3,"coherent":true,"mismatch":null}],"radii":[1,2,3]}"#
        );
    }

    #[test]
    fn klein_and_free_towers() {
        let k = GroupSpec::klein();
        let r = RSet::from_cone(&LeftOrderCone::standard(&k), &Window::ball(&k, 2, true));
        assert!(tower_solve(&k, &[1, 2], &r, true).unwrap().coherent);
        let f = GroupSpec::free(2).unwrap();
        let r = RSet::canonical_full(&Window::ball(&f, 2, true));
        assert!(tower_solve(&f, &[1, 2], &r, true).unwrap().coherent);
    }

    #[test]
    fn radii_must_increase() {
        let z = GroupSpec::integers();
        assert!(tower_solve(&z, &[2, 1], &RSet::empty(z.clone()), false).is_err());
        assert!(tower_solve(&z, &[], &RSet::empty(z.clone()), false).is_err());
    }
}
