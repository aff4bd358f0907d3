use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::field::ConeField;
use crate::group::{Element, Window};

/// Violations of the field-of-cones conditions found on a window.
///
/// `c3` is `None` unless totality was requested. Queries that a partial
/// (table-backed) field cannot answer are counted in `undetermined` and
/// otherwise ignored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub window: Window,
    pub c1: Vec<(Element, Element)>,
    pub c2: Vec<(Element, Element, Element)>,
    pub c3: Option<Vec<(Element, Element)>>,
    pub undetermined: usize,
}

impl AxiomReport {
    /// Conditions (1) and (2) hold on the window.
    pub fn is_field(&self) -> bool {
        self.c1.is_empty() && self.c2.is_empty()
    }

    /// Conditions (1), (2) and, if it was checked, (3) hold.
    pub fn is_clean(&self) -> bool {
        self.is_field() && self.c3.as_ref().map_or(true, Vec::is_empty)
    }

    pub fn total(&self) -> Option<bool> {
        self.c3.as_ref().map(|c| self.is_field() && c.is_empty())
    }
}

impl Serialize for AxiomReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("c1", &self.c1)?;
        m.serialize_entry("c2", &self.c2)?;
        m.serialize_entry("c3", &self.c3)?;
        if self.undetermined > 0 {
            m.serialize_entry("undetermined", &self.undetermined)?;
        }
        m.serialize_entry("window", self.window.elements())?;
        m.end()
    }
}

#[derive(Default)]
struct Partial {
    c1: Vec<(Element, Element)>,
    c2: Vec<(Element, Element, Element)>,
    c3: Vec<(Element, Element)>,
    undetermined: usize,
}

fn check_base(field: &ConeField, window: &Window, f: &Element, check_total: bool) -> Partial {
    let mut out = Partial::default();
    let member = |a: &Element, b: &Element, undetermined: &mut usize| -> Option<bool> {
        let r = field.try_member(a, b);
        if r.is_none() {
            *undetermined += 1;
        }
        r
    };
    let mut und = 0;

    // (1)
    for g in window {
        if g.is_identity() {
            if member(f, g, &mut und) == Some(true) {
                out.c1.push((f.clone(), g.clone()));
            }
            continue;
        }
        if let (Some(false), Some(false)) =
            (member(f, g, &mut und), member(f, &g.inverse(), &mut und))
        {
            out.c1.push((f.clone(), g.clone()));
        }
    }

    // (2): g ∈ P_f and h ∈ P_{gf} imply hg ∈ P_f
    for g in window {
        if member(f, g, &mut und) != Some(true) {
            continue;
        }
        let gf = g.mul(f);
        for h in window {
            if member(&gf, h, &mut und) != Some(true) {
                continue;
            }
            if member(f, &h.mul(g), &mut und) == Some(false) {
                out.c2.push((f.clone(), g.clone(), h.clone()));
            }
        }
    }

    // (3), with f playing the role of the first element g
    if check_total {
        for h in window.iter().filter(|h| *h != f) {
            let a = member(h, &f.mul(&h.inverse()), &mut und);
            let b = member(f, &h.mul(&f.inverse()), &mut und);
            if let (Some(false), Some(false)) = (a, b) {
                out.c3.push((f.clone(), h.clone()));
            }
        }
    }
    out.undetermined = und;
    out
}

/// Exhaustive check of conditions (1) and (2) over `f, g, h` in the window
/// and, when `check_total` is set, of condition (3) over distinct pairs.
/// Membership queries may leave the window. Witnesses come out in canonical
/// order.
pub fn cone_axiom_report(field: &ConeField, window: &Window, check_total: bool) -> AxiomReport {
    let parts: Vec<Partial> = window
        .elements()
        .par_iter()
        .map(|f| check_base(field, window, f, check_total))
        .collect();
    let mut report = AxiomReport {
        window: window.clone(),
        c1: Vec::new(),
        c2: Vec::new(),
        c3: check_total.then(Vec::new),
        undetermined: 0,
    };
    for p in parts {
        report.c1.extend(p.c1);
        report.c2.extend(p.c2);
        if let Some(c3) = report.c3.as_mut() {
            c3.extend(p.c3);
        }
        report.undetermined += p.undetermined;
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::{embed_left_order, iota, LeftOrderCone, Provenance};
    use crate::group::GroupSpec;

    fn z(c: i64) -> Element {
        Element::Lattice(vec![c])
    }

    #[test]
    fn embedded_standard_cone_is_total() {
        let g = GroupSpec::integers();
        let r = cone_axiom_report(
            &embed_left_order(&LeftOrderCone::standard(&g)),
            &Window::ball(&g, 3, true),
            true,
        );
        assert!(r.is_clean());
        assert_eq!(r.total(), Some(true));
    }

    #[test]
    fn iota_fails_totality_at_one_minus_one() {
        let g = GroupSpec::integers();
        let r = cone_axiom_report(
            &iota(&LeftOrderCone::standard(&g)),
            &Window::ball(&g, 3, true),
            true,
        );
        assert!(r.is_field());
        assert_eq!(r.c3.as_ref().unwrap().first(), Some(&(z(1), z(-1))));
    }

    #[test]
    fn lattice_and_klein_cones_embed_to_total_fields() {
        for g in [GroupSpec::integer_lattice(2).unwrap(), GroupSpec::klein()] {
            let r = cone_axiom_report(
                &embed_left_order(&LeftOrderCone::standard(&g)),
                &Window::ball(&g, 3, true),
                true,
            );
            assert!(r.is_clean(), "{g}");
        }
    }

    #[test]
    fn broken_field_is_caught() {
        let g = GroupSpec::integers();
        // P_f = {g ≠ 0} for every f: condition (1) holds, (2) fails
        let f = ConeField::new(g.clone(), Provenance::Order, "all", |_, x| !x.is_identity());
        let r = cone_axiom_report(&f, &Window::ball(&g, 2, true), false);
        assert!(r.c1.is_empty());
        assert!(!r.c2.is_empty());
        assert_eq!(r.c3, None);
        // P_f = ∅: condition (1) fails everywhere off the identity
        let f = ConeField::new(g.clone(), Provenance::Order, "none", |_, _| false);
        let r = cone_axiom_report(&f, &Window::ball(&g, 1, true), false);
        assert_eq!(r.c1.len(), 3 * 2);
    }

    #[test]
    fn report_json_shape() {
        let g = GroupSpec::integers();
        let r = cone_axiom_report(
            &iota(&LeftOrderCone::standard(&g)),
            &Window::ball(&g, 1, true),
            true,
        );
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"c1":[],"c2":[],"c3":[["1","-1"],["-1","1"]],"window":["0","1","-1"]}"#
        );
    }
}
