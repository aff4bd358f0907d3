use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::Signed;

use super::magnus::magnus_sign;
use crate::error::{Error, Result};
use crate::group::{Element, GroupKind, GroupSpec, Window};
use crate::order::{Comparison, OrderOracle};

type PositiveFn = dyn Fn(&Element) -> bool + Send + Sync;

/// The positive cone `P` of a left-ordering: `P·P ⊆ P`, `P ∩ P⁻¹ = ∅` and
/// `P ∪ P⁻¹ = G ∖ {id}`.
#[derive(Clone)]
pub struct LeftOrderCone {
    group: GroupSpec,
    label: String,
    positive: Arc<PositiveFn>,
}

/// Cone axiom failures found on a window.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConeCheck {
    pub semigroup: Vec<(Element, Element)>,
    pub disjointness: Vec<Element>,
    pub totality: Vec<Element>,
}

impl ConeCheck {
    pub fn is_clean(&self) -> bool {
        self.semigroup.is_empty() && self.disjointness.is_empty() && self.totality.is_empty()
    }
}

impl LeftOrderCone {
    pub fn new<F>(group: GroupSpec, label: impl Into<String>, positive: F) -> Self
    where
        F: Fn(&Element) -> bool + Send + Sync + 'static,
    {
        Self {
            group,
            label: label.into(),
            positive: Arc::new(positive),
        }
    }

    /// The default cone of each group kind:
    ///
    /// * ℤⁿ: the last non-zero coordinate is positive;
    /// * subgroups of ℚ: `x > 0`;
    /// * free groups: the Magnus ordering;
    /// * Klein: `yᵃxᵇ` with `b > 0`, or `b = 0` and `a > 0`.
    pub fn standard(group: &GroupSpec) -> Self {
        match group.kind() {
            GroupKind::IntegerLattice { .. } => Self::new(group.clone(), "standard", |g| match g {
                Element::Lattice(v) => v.iter().rev().find(|c| **c != 0).is_some_and(|c| *c > 0),
                _ => false,
            }),
            GroupKind::RationalSubgroup { .. } => {
                Self::new(group.clone(), "standard", |g| match g {
                    Element::Rational(r) => r.is_positive(),
                    _ => false,
                })
            }
            GroupKind::Free { rank } => {
                let rank = *rank;
                Self::new(group.clone(), "magnus", move |g| match g {
                    Element::Free(w) => magnus_sign(w, rank) == Ordering::Greater,
                    _ => false,
                })
            }
            GroupKind::Klein => Self::new(group.clone(), "lex", |g| match g {
                Element::Klein(a, b) => *b > 0 || (*b == 0 && *a > 0),
                _ => false,
            }),
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_positive(&self, g: &Element) -> bool {
        (self.positive)(g)
    }

    /// `P⁻¹`.
    pub fn reversed(&self) -> Self {
        let inner = self.clone();
        Self::new(self.group.clone(), format!("reversed({})", self.label), move |g| {
            inner.is_positive(&g.inverse())
        })
    }

    /// `h⁻¹ P h`.
    pub fn conjugate(&self, h: &Element) -> Self {
        let inner = self.clone();
        let hc = h.clone();
        Self::new(self.group.clone(), format!("conj({}, {h})", self.label), move |g| {
            inner.is_positive(&g.conjugate_by(&hc.inverse()))
        })
    }

    /// `f ≺ g ⟺ g f⁻¹ ∈ P`.
    pub fn order(&self) -> OrderOracle {
        let cone = self.clone();
        OrderOracle::new(self.group.clone(), format!("cone({})", self.label), move |f, g| {
            if cone.is_positive(&g.mul(&f.inverse())) {
                Comparison::Less
            } else if cone.is_positive(&f.mul(&g.inverse())) {
                Comparison::Greater
            } else {
                Comparison::Incomparable
            }
        })
    }

    /// The cone axioms on a window.
    pub fn check(&self, window: &Window) -> ConeCheck {
        let mut out = ConeCheck::default();
        for g in window {
            let p = self.is_positive(g);
            let pi = self.is_positive(&g.inverse());
            if g.is_identity() {
                if p {
                    out.disjointness.push(g.clone());
                }
                continue;
            }
            if p && pi {
                out.disjointness.push(g.clone());
            }
            if !p && !pi {
                out.totality.push(g.clone());
            }
            if p {
                for h in window.iter().filter(|h| self.is_positive(h)) {
                    if !self.is_positive(&g.mul(h)) {
                        out.semigroup.push((g.clone(), h.clone()));
                    }
                }
            }
        }
        out
    }

    /// Checks the cone on a window and refuses an invalid one.
    pub fn validated(self, window: &Window) -> Result<Self> {
        let check = self.check(window);
        if check.is_clean() {
            Ok(self)
        } else {
            Err(Error::InvalidConstruction(format!(
                "{} is not a left-order cone on the window: {check:?}",
                self.label
            )))
        }
    }
}

impl fmt::Debug for LeftOrderCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LeftOrderCone")
            .field("group", &self.group.to_string())
            .field("label", &self.label)
            .finish_non_exhaustive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_cones_are_cones() {
        let groups = [
            GroupSpec::integers(),
            GroupSpec::integer_lattice(2).unwrap(),
            GroupSpec::rational_subgroup(&[2]).unwrap(),
            GroupSpec::klein(),
            GroupSpec::free(2).unwrap(),
        ];
        for g in &groups {
            let w = Window::ball(g, 3, true);
            let p = LeftOrderCone::standard(g);
            assert!(p.check(&w).is_clean(), "{g}");
            assert!(p.reversed().check(&w).is_clean(), "{g}");
        }
    }

    #[test]
    fn broken_cone_is_reported() {
        let z = GroupSpec::integers();
        let w = Window::ball(&z, 2, true);
        let odd = LeftOrderCone::new(z, "odd", |g| matches!(g, Element::Lattice(v) if v[0] % 2 != 0));
        let c = odd.check(&w);
        assert!(!c.semigroup.is_empty());
        assert!(!c.disjointness.is_empty());
        assert!(!c.totality.is_empty());
    }

    #[test]
    fn klein_conjugation_flips_the_kernel() {
        let k = GroupSpec::klein();
        let p = LeftOrderCone::standard(&k);
        let x = Element::Klein(0, 1);
        let q = p.conjugate(&x);
        assert!(!q.is_positive(&Element::Klein(1, 0)));
        assert!(q.is_positive(&Element::Klein(-1, 0)));
    }
}
