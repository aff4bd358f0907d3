use std::collections::VecDeque;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;

use super::oracle::Comparison;
use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec, Window};

/// An explicit relation `g ≺ h` on the elements of a finite window, stored
/// as a dense boolean matrix over window indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderTable {
    window: Window,
    less: Vec<bool>,
}

/// A failed strict-partial-order axiom with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Irreflexivity(Element),
    Asymmetry(Element, Element),
    Transitivity(Element, Element, Element),
}

impl Serialize for Violation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (axiom, witness): (&str, Vec<&Element>) = match self {
            Violation::Irreflexivity(g) => ("irreflexivity", vec![g]),
            Violation::Asymmetry(g, h) => ("asymmetry", vec![g, h]),
            Violation::Transitivity(g, h, k) => ("transitivity", vec![g, h, k]),
        };
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("axiom", axiom)?;
        m.serialize_entry("witness", &witness)?;
        m.end()
    }
}

impl OrderTable {
    /// A table from explicit pairs; every element must lie in `window`.
    pub fn new(window: Window, pairs: impl IntoIterator<Item = (Element, Element)>) -> Result<Self> {
        let n = window.len();
        let mut less = vec![false; n * n];
        for (g, h) in pairs {
            let i = window
                .index_of(&g)
                .ok_or_else(|| Error::OutsideWindow(g.encode()))?;
            let j = window
                .index_of(&h)
                .ok_or_else(|| Error::OutsideWindow(h.encode()))?;
            less[i * n + j] = true;
        }
        Ok(Self { window, less })
    }

    pub fn empty(window: Window) -> Self {
        let n = window.len();
        Self {
            window,
            less: vec![false; n * n],
        }
    }

    pub(crate) fn from_matrix(window: Window, less: Vec<bool>) -> Self {
        debug_assert_eq!(less.len(), window.len() * window.len());
        Self { window, less }
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn len(&self) -> usize {
        self.window.len()
    }

    pub fn is_empty(&self) -> bool {
        self.window.is_empty()
    }

    pub(crate) fn less_at(&self, i: usize, j: usize) -> bool {
        self.less[i * self.window.len() + j]
    }

    /// `g ≺ h`; false when either element is outside the window.
    pub fn less(&self, g: &Element, h: &Element) -> bool {
        match (self.window.index_of(g), self.window.index_of(h)) {
            (Some(i), Some(j)) => self.less_at(i, j),
            _ => false,
        }
    }

    /// Comparison of two window elements, `None` off the window.
    pub fn compare(&self, g: &Element, h: &Element) -> Option<Comparison> {
        let i = self.window.index_of(g)?;
        let j = self.window.index_of(h)?;
        Some(if self.less_at(i, j) {
            Comparison::Less
        } else if self.less_at(j, i) {
            Comparison::Greater
        } else {
            Comparison::Incomparable
        })
    }

    /// All pairs `(g, h)` with `g ≺ h`, in canonical order.
    pub fn pairs(&self) -> Vec<(Element, Element)> {
        let n = self.window.len();
        let els = self.window.elements();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.less_at(i, j) {
                    out.push((els[i].clone(), els[j].clone()));
                }
            }
        }
        out
    }

    /// Same relation restricted to a smaller window.
    pub fn restrict(&self, sub: &Window) -> Result<OrderTable> {
        let idx: Vec<usize> = sub
            .iter()
            .map(|g| {
                self.window
                    .index_of(g)
                    .ok_or_else(|| Error::OutsideWindow(g.encode()))
            })
            .collect::<Result<_>>()?;
        let m = idx.len();
        let mut less = vec![false; m * m];
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                less[a * m + b] = self.less_at(i, j);
            }
        }
        Ok(Self::from_matrix(sub.clone(), less))
    }

    /// Parse `{"window": [...], "pairs": [[g, h], ...]}`.
    pub fn from_json(value: &Value, group: &GroupSpec) -> Result<Self> {
        let bad = |m: &str| Error::Parse {
            position: 0,
            message: m.to_string(),
        };
        let window = value
            .get("window")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"window\" array"))?;
        let elements = window
            .iter()
            .map(|v| {
                v.as_str()
                    .ok_or_else(|| bad("window entries must be strings"))
                    .and_then(|t| group.decode(t))
            })
            .collect::<Result<Vec<_>>>()?;
        let window = Window::finite_set(group.clone(), elements)?;
        let pairs = value
            .get("pairs")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"pairs\" array"))?;
        let pairs = pairs
            .iter()
            .map(|p| {
                let p = p
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| bad("pairs must be two-element arrays"))?;
                let dec = |v: &Value| {
                    v.as_str()
                        .ok_or_else(|| bad("pair entries must be strings"))
                        .and_then(|t| group.decode(t))
                };
                Ok((dec(&p[0])?, dec(&p[1])?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(window, pairs)
    }
}

impl Serialize for OrderTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("pairs", &self.pairs())?;
        m.serialize_entry("window", self.window.elements())?;
        m.end()
    }
}

/// Every violated axiom of a strict partial order, with witnesses in
/// canonical order. Empty iff the table is irreflexive, asymmetric and
/// transitive.
pub fn validate_strict_partial_order(t: &OrderTable) -> Vec<Violation> {
    let n = t.len();
    let els = t.window.elements();
    let mut out = Vec::new();
    for (i, g) in els.iter().enumerate() {
        if t.less_at(i, i) {
            out.push(Violation::Irreflexivity(g.clone()));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && t.less_at(i, j) && t.less_at(j, i) {
                out.push(Violation::Asymmetry(els[i].clone(), els[j].clone()));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !t.less_at(i, j) {
                continue;
            }
            for k in 0..n {
                if t.less_at(j, k) && !t.less_at(i, k) {
                    out.push(Violation::Transitivity(
                        els[i].clone(),
                        els[j].clone(),
                        els[k].clone(),
                    ));
                }
            }
        }
    }
    out
}

/// The smallest transitive relation containing the table. Fails with the
/// shortest cycle through the first element that ends up below itself.
pub fn transitive_closure(t: &OrderTable) -> Result<OrderTable> {
    let n = t.len();
    let mut less = t.less.clone();
    for k in 0..n {
        for i in 0..n {
            if !less[i * n + k] {
                continue;
            }
            for j in 0..n {
                if less[k * n + j] {
                    less[i * n + j] = true;
                }
            }
        }
    }
    if let Some(start) = (0..n).find(|&i| less[i * n + i]) {
        return Err(Error::Cycle(shortest_cycle(t, start)));
    }
    Ok(OrderTable::from_matrix(t.window.clone(), less))
}

fn shortest_cycle(t: &OrderTable, start: usize) -> Vec<String> {
    let n = t.len();
    let els = t.window.elements();
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::from([start]);
    let mut seen = vec![false; n];
    let mut last = None;
    'search: while let Some(u) = queue.pop_front() {
        for v in 0..n {
            if !t.less_at(u, v) {
                continue;
            }
            if v == start {
                last = Some(u);
                break 'search;
            }
            if !seen[v] {
                seen[v] = true;
                prev[v] = u;
                queue.push_back(v);
            }
        }
    }
    let mut path = vec![start];
    let mut cur = last.expect("a cycle through start exists");
    while cur != start {
        path.push(cur);
        cur = prev[cur];
    }
    path.push(start);
    let last = path.len() - 1;
    path[1..last].reverse();
    path.iter().map(|&i| els[i].encode()).collect()
}

/// Whether every two distinct elements are comparable; otherwise the first
/// incomparable pair in canonical order.
pub fn is_total(t: &OrderTable) -> (bool, Option<(Element, Element)>) {
    let n = t.len();
    let els = t.window.elements();
    for i in 0..n {
        for j in i + 1..n {
            if !t.less_at(i, j) && !t.less_at(j, i) {
                return (false, Some((els[i].clone(), els[j].clone())));
            }
        }
    }
    (true, None)
}
