use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::left_order::LeftOrderCone;
use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec};
use crate::order::{Comparison, OrderOracle, OrderTable};

/// Where a field came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    EmbeddedLeftOrder,
    Iota,
    Alpha,
    Rf,
    Lex,
    FiniteTable,
    ActedOn,
    /// Built from some other order oracle.
    Order,
}

impl Provenance {
    fn of_order(order: &OrderOracle) -> Self {
        let label = order.label();
        let head = label.split('(').next().unwrap_or(label);
        match head {
            "alpha" => Provenance::Alpha,
            "lex" => Provenance::Lex,
            "finite-table" => Provenance::FiniteTable,
            _ => Provenance::Order,
        }
    }
}

type MemberFn = dyn Fn(&Element, &Element) -> Option<bool> + Send + Sync;

/// An equivariant field of cones as a membership oracle:
/// `member(f, g)` answers `g ∈ P_f`.
#[derive(Clone)]
pub struct ConeField {
    group: GroupSpec,
    label: String,
    provenance: Provenance,
    member: Arc<MemberFn>,
}

impl ConeField {
    pub fn new<F>(group: GroupSpec, provenance: Provenance, label: impl Into<String>, member: F) -> Self
    where
        F: Fn(&Element, &Element) -> bool + Send + Sync + 'static,
    {
        Self {
            group,
            label: label.into(),
            provenance,
            member: Arc::new(move |f, g| Some(member(f, g))),
        }
    }

    /// A field that may be undefined for some queries.
    pub fn with_domain<F>(
        group: GroupSpec,
        provenance: Provenance,
        label: impl Into<String>,
        member: F,
    ) -> Self
    where
        F: Fn(&Element, &Element) -> Option<bool> + Send + Sync + 'static,
    {
        Self {
            group,
            label: label.into(),
            provenance,
            member: Arc::new(member),
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn try_member(&self, f: &Element, g: &Element) -> Option<bool> {
        (self.member)(f, g)
    }

    /// `g ∈ P_f`.
    pub fn member(&self, f: &Element, g: &Element) -> Result<bool> {
        self.try_member(f, g)
            .ok_or_else(|| Error::OutOfDomain(f.encode(), g.encode()))
    }

    /// `{"group": ..., "label": ..., "provenance": ...}`.
    pub fn describe(&self) -> serde_json::Value {
        serde_json::json!({
            "group": self.group.to_string(),
            "label": self.label,
            "provenance": self.provenance,
        })
    }
}

impl fmt::Debug for ConeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConeField")
            .field("group", &self.group.to_string())
            .field("label", &self.label)
            .field("provenance", &self.provenance)
            .finish_non_exhaustive()
    }
}

/// `f ≺ g ⟺ g f⁻¹ ∈ P_f`.
pub fn order_from_field(field: &ConeField) -> OrderOracle {
    let field = field.clone();
    OrderOracle::with_domain(
        field.group.clone(),
        format!("field({})", field.label),
        move |f, g| {
            if f == g {
                return Some(Comparison::Incomparable);
            }
            if field.try_member(f, &g.mul(&f.inverse()))? {
                return Some(Comparison::Less);
            }
            Some(if field.try_member(g, &f.mul(&g.inverse()))? {
                Comparison::Greater
            } else {
                Comparison::Incomparable
            })
        },
    )
}

/// `P_f = { g : f ≺ g f }`.
pub fn field_from_order(order: &OrderOracle) -> ConeField {
    let provenance = Provenance::of_order(order);
    let label = order.label().to_string();
    let order = order.clone();
    ConeField::with_domain(order.group().clone(), provenance, label, move |f, g| {
        order.try_compare(f, &g.mul(f)).map(Comparison::is_less)
    })
}

/// The field of an explicit table, undefined off the table's window.
pub fn finite_table_field(table: &OrderTable) -> ConeField {
    let order = OrderOracle::from_table(table);
    let mut field = field_from_order(&order);
    field.provenance = Provenance::FiniteTable;
    field.label = "finite-table".into();
    field
}

/// The constant field `P_f = P`.
pub fn embed_left_order(p: &LeftOrderCone) -> ConeField {
    let cone = p.clone();
    ConeField::new(
        p.group().clone(),
        Provenance::EmbeddedLeftOrder,
        format!("i({})", p.label()),
        move |_, g| cone.is_positive(g),
    )
}

/// `P_id = P ∪ P⁻¹`, `P_f = P` for `f ∈ P` and `P_f = P⁻¹` for `f ∈ P⁻¹`.
/// Satisfies conditions (1) and (2) but never totality.
pub fn iota(p: &LeftOrderCone) -> ConeField {
    let cone = p.clone();
    ConeField::new(
        p.group().clone(),
        Provenance::Iota,
        format!("iota({})", p.label()),
        move |f, g| {
            if f.is_identity() {
                !g.is_identity()
            } else if cone.is_positive(f) {
                cone.is_positive(g)
            } else {
                cone.is_positive(&g.inverse())
            }
        },
    )
}

/// The action `(g, h)·(P_f) = (h⁻¹ P_{h f g⁻¹} h)`, i.e.
/// `x ∈ P'_f ⟺ h x h⁻¹ ∈ P_{h f g⁻¹}`.
pub fn act(g: &Element, h: &Element, field: &ConeField) -> ConeField {
    let inner = field.clone();
    let gi = g.inverse();
    let h = h.clone();
    let hi = h.inverse();
    ConeField::with_domain(
        field.group.clone(),
        Provenance::ActedOn,
        format!("act({g}, {h}, {})", field.label),
        move |f, x| inner.try_member(&h.mul(f).mul(&gi), &h.mul(x).mul(&hi)),
    )
}

/// Whether the field lies in the subbasic set `W_{(g,h)}`, i.e. `h ∈ P_g`.
pub fn subbasic_member(field: &ConeField, g: &Element, h: &Element) -> Result<bool> {
    field.member(g, h)
}
