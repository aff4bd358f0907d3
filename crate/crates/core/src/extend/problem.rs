use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;

use super::rset::RSet;
use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec, Window};
use crate::order::{is_total, validate_strict_partial_order, OrderTable, Violation};

/// Build an order on a finite symmetric window such that
///
/// * (i) whenever `h ≠ id` and `g, hg, h⁻¹g` lie in the window, `g ≺ hg` or
///   `g ≺ h⁻¹g`;
/// * (ii) `g ≺ g⁻¹` exactly when `g ∈ R`;
///
/// and, optionally, the order is total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionProblem {
    pub window: Window,
    pub r: RSet,
    pub require_total: bool,
}

impl ExtensionProblem {
    /// The window must be symmetric. A totality request with an `R` that
    /// misses an inverse pair is accepted here: the search solver reports it
    /// as unsatisfiable and the peeling solver refuses it.
    pub fn new(window: Window, r: RSet, require_total: bool) -> Result<Self> {
        if !window.is_symmetric() {
            let g = window
                .iter()
                .find(|g| !window.contains(&g.inverse()))
                .map(Element::encode)
                .unwrap_or_default();
            return Err(Error::NotSymmetric(g));
        }
        if r.group() != window.group() {
            return Err(Error::GroupMismatch(format!(
                "R lives in {}, the window in {}",
                r.group(),
                window.group()
            )));
        }
        Ok(Self {
            window,
            r,
            require_total,
        })
    }

    pub fn group(&self) -> &GroupSpec {
        self.window.group()
    }

    /// Whether `R` decides every inverse pair of the window.
    pub fn is_covered(&self) -> bool {
        self.r.covers(&self.window)
    }

    /// Parses `{"group": …, "window": {"ball": r} | {"elements": […]},
    /// "R": […], "total": flag}`.
    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse {
            position: 0,
            message: m.to_string(),
        };
        let group: GroupSpec = value
            .get("group")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing \"group\" string"))?
            .parse()?;
        let window = value.get("window").ok_or_else(|| bad("missing \"window\""))?;
        let window = if let Some(r) = window.get("ball") {
            let r = r.as_u64().ok_or_else(|| bad("\"ball\" must be a non-negative integer"))?;
            Window::ball(&group, r as usize, true)
        } else if let Some(els) = window.get("elements").and_then(Value::as_array) {
            let texts = els
                .iter()
                .map(|v| v.as_str().ok_or_else(|| bad("window elements must be strings")))
                .collect::<Result<Vec<_>>>()?;
            Window::from_elements(group.clone(), group.decode_all(&texts)?)?
        } else {
            return Err(bad("window must be {\"ball\": r} or {\"elements\": [...]}"));
        };
        let r = match value.get("R") {
            None | Some(Value::Null) => RSet::empty(group.clone()),
            Some(Value::Array(items)) => {
                let texts = items
                    .iter()
                    .map(|v| v.as_str().ok_or_else(|| bad("R entries must be strings")))
                    .collect::<Result<Vec<_>>>()?;
                RSet::decode(&group, &texts)?
            }
            Some(_) => return Err(bad("\"R\" must be an array")),
        };
        let total = match value.get("total") {
            None | Some(Value::Null) => false,
            Some(v) => v.as_bool().ok_or_else(|| bad("\"total\" must be a boolean"))?,
        };
        Self::new(window, r, total)
    }

    /// Triples `(g, u, v)` with `u = hg`, `v = h⁻¹g = g u⁻¹ g`, all in the
    /// window and `u ≠ g`, as window indices. Each constraint reads
    /// `g ≺ u ∨ g ≺ v`.
    pub(crate) fn condition_i_triples(&self) -> Vec<(usize, usize, usize)> {
        let els = self.window.elements();
        let mut out = Vec::new();
        for (gi, g) in els.iter().enumerate() {
            for (ui, u) in els.iter().enumerate() {
                if ui == gi {
                    continue;
                }
                if let Some(vi) = self.window.index_of(&g.mul(&u.inverse()).mul(g)) {
                    out.push((gi, ui, vi));
                }
            }
        }
        out
    }
}

impl Serialize for ExtensionProblem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("R", &self.r)?;
        m.serialize_entry("group", &self.group().to_string())?;
        m.serialize_entry("total", &self.require_total)?;
        m.serialize_entry("window", &serde_json::json!({ "elements": self.window.elements() }))?;
        m.end()
    }
}

/// Everything [`validate_solution`] found wrong with a table.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub order: Vec<Violation>,
    /// `(g, u)` with `u ≠ g`, `v = g u⁻¹ g` in the window and neither
    /// `g ≺ u` nor `g ≺ v`.
    pub condition_i: Vec<(Element, Element)>,
    /// `g ≠ id` where `g ≺ g⁻¹` disagrees with `g ∈ R`.
    pub condition_ii: Vec<Element>,
    /// An incomparable pair, when totality was required.
    pub totality: Option<(Element, Element)>,
    pub window_mismatch: bool,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.order.is_empty()
            && self.condition_i.is_empty()
            && self.condition_ii.is_empty()
            && self.totality.is_none()
            && !self.window_mismatch
    }
}

impl Serialize for ValidationReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(5))?;
        m.serialize_entry("condition_i", &self.condition_i)?;
        m.serialize_entry("condition_ii", &self.condition_ii)?;
        m.serialize_entry("order", &self.order)?;
        m.serialize_entry("totality", &self.totality)?;
        m.serialize_entry("window_mismatch", &self.window_mismatch)?;
        m.end()
    }
}

/// Checks a table against a problem: strict partial order axioms,
/// conditions (i) and (ii), and totality if requested.
pub fn validate_solution(t: &OrderTable, p: &ExtensionProblem) -> ValidationReport {
    let mut report = ValidationReport::default();
    if t.window() != &p.window {
        report.window_mismatch = true;
        return report;
    }
    report.order = validate_strict_partial_order(t);
    let els = p.window.elements();
    for (g, u, v) in p.condition_i_triples() {
        if !t.less_at(g, u) && !t.less_at(g, v) {
            report.condition_i.push((els[g].clone(), els[u].clone()));
        }
    }
    for g in els.iter().filter(|g| !g.is_identity()) {
        if t.less(g, &g.inverse()) != p.r.contains(g) {
            report.condition_ii.push(g.clone());
        }
    }
    if p.require_total {
        report.totality = is_total(t).1;
    }
    report
}
