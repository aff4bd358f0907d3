use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec, Window};

use super::table::OrderTable;

/// Outcome of comparing two elements under a strict partial order.
///
/// Equal elements compare as `Incomparable`: a strict order never relates an
/// element to itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparison {
    Less,
    Greater,
    Incomparable,
}

impl Comparison {
    pub fn reverse(self) -> Self {
        match self {
            Comparison::Less => Comparison::Greater,
            Comparison::Greater => Comparison::Less,
            Comparison::Incomparable => Comparison::Incomparable,
        }
    }

    pub fn is_less(self) -> bool {
        self == Comparison::Less
    }
}

type CompareFn = dyn Fn(&Element, &Element) -> Option<Comparison> + Send + Sync;

/// A strict partial order on a whole group, given as a pure comparison
/// function. Oracles backed by a finite table are undefined off their window;
/// [`OrderOracle::compare`] reports that as [`Error::OutOfDomain`].
#[derive(Clone)]
pub struct OrderOracle {
    group: GroupSpec,
    label: String,
    compare: Arc<CompareFn>,
}

impl OrderOracle {
    pub fn new<F>(group: GroupSpec, label: impl Into<String>, compare: F) -> Self
    where
        F: Fn(&Element, &Element) -> Comparison + Send + Sync + 'static,
    {
        Self {
            group,
            label: label.into(),
            compare: Arc::new(move |g, h| Some(compare(g, h))),
        }
    }

    /// An oracle that may be undefined on some pairs.
    pub fn with_domain<F>(group: GroupSpec, label: impl Into<String>, compare: F) -> Self
    where
        F: Fn(&Element, &Element) -> Option<Comparison> + Send + Sync + 'static,
    {
        Self {
            group,
            label: label.into(),
            compare: Arc::new(compare),
        }
    }

    /// The oracle of an explicit table, defined on its window only.
    pub fn from_table(table: &OrderTable) -> Self {
        let table = table.clone();
        Self::with_domain(table.window().group().clone(), "finite-table", move |g, h| {
            table.compare(g, h)
        })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn try_compare(&self, g: &Element, h: &Element) -> Option<Comparison> {
        (self.compare)(g, h)
    }

    pub fn compare(&self, g: &Element, h: &Element) -> Result<Comparison> {
        self.try_compare(g, h)
            .ok_or_else(|| Error::OutOfDomain(g.encode(), h.encode()))
    }

    /// `g ≺ h`; undefined pairs count as unrelated.
    pub fn less(&self, g: &Element, h: &Element) -> bool {
        self.try_compare(g, h) == Some(Comparison::Less)
    }

    /// The explicit table of this order on `window`.
    pub fn restrict(&self, window: &Window) -> Result<OrderTable> {
        let mut pairs = Vec::new();
        for g in window {
            for h in window {
                if self.compare(g, h)? == Comparison::Less {
                    pairs.push((g.clone(), h.clone()));
                }
            }
        }
        OrderTable::new(window.clone(), pairs)
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

impl fmt::Debug for OrderOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrderOracle")
            .field("group", &self.group.to_string())
            .field("label", &self.label)
            .finish_non_exhaustive()
    }
}
