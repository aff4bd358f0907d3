//! Lexicographic extension across a surjection `p : G → A` onto an abelian
//! group: compare images in `A` first, and inside a coset of `H = ker p`
//! compare after translating back by the coset representative.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Element, GroupKind, GroupSpec, Window};
use crate::order::{Comparison, OrderOracle};

type MapFn = dyn Fn(&Element) -> Element + Send + Sync;
type KernelFn = dyn Fn(&Element) -> Option<Element> + Send + Sync;

/// Everything needed to extend orders on `H` and `A = G/H` to `G`.
#[derive(Clone)]
pub struct LexScheme {
    group: GroupSpec,
    projection: Arc<MapFn>,
    /// `Some(k)` exactly for kernel elements, giving their coordinates in
    /// the group the kernel order lives on.
    kernel_coordinate: Arc<KernelFn>,
    representative: Arc<MapFn>,
    kernel_order: OrderOracle,
    quotient_order: OrderOracle,
}

impl LexScheme {
    pub fn new<P, K, R>(
        group: GroupSpec,
        projection: P,
        kernel_coordinate: K,
        representative: R,
        kernel_order: OrderOracle,
        quotient_order: OrderOracle,
    ) -> Result<Self>
    where
        P: Fn(&Element) -> Element + Send + Sync + 'static,
        K: Fn(&Element) -> Option<Element> + Send + Sync + 'static,
        R: Fn(&Element) -> Element + Send + Sync + 'static,
    {
        if !quotient_order.group().is_abelian() {
            return Err(Error::InvalidConstruction(format!(
                "quotient {} is not abelian",
                quotient_order.group()
            )));
        }
        Ok(Self {
            group,
            projection: Arc::new(projection),
            kernel_coordinate: Arc::new(kernel_coordinate),
            representative: Arc::new(representative),
            kernel_order,
            quotient_order,
        })
    }

    /// Klein group `yᵃxᵇ`: `p` is the `x`-exponent, `H = ⟨y⟩` with
    /// coordinate `a`, representatives `xᵇ`. Both orders live on ℤ.
    pub fn klein(kernel_order: OrderOracle, quotient_order: OrderOracle) -> Result<Self> {
        Self::new(
            GroupSpec::klein(),
            |g| match g {
                Element::Klein(_, b) => Element::Lattice(vec![*b]),
                _ => Element::Lattice(vec![0]),
            },
            |g| match g {
                Element::Klein(a, 0) => Some(Element::Lattice(vec![*a])),
                _ => None,
            },
            |g| match g {
                Element::Klein(_, b) => Element::Klein(0, *b),
                other => other.clone(),
            },
            kernel_order,
            quotient_order,
        )
    }

    /// ℤ² onto its second coordinate; `H` is the first axis and the
    /// representatives are `(0, n)`. Both orders live on ℤ.
    pub fn lattice2(kernel_order: OrderOracle, quotient_order: OrderOracle) -> Result<Self> {
        Self::new(
            GroupSpec::integer_lattice(2)?,
            |g| match g {
                Element::Lattice(v) => Element::Lattice(vec![v[1]]),
                _ => Element::Lattice(vec![0]),
            },
            |g| match g {
                Element::Lattice(v) if v[1] == 0 => Some(Element::Lattice(vec![v[0]])),
                _ => None,
            },
            |g| match g {
                Element::Lattice(v) => Element::Lattice(vec![0, v[1]]),
                other => other.clone(),
            },
            kernel_order,
            quotient_order,
        )
    }

    /// ℤ onto itself: the kernel is trivial and the extension reproduces the
    /// quotient order. `kernel_order` only has to be an order on ℤ.
    pub fn integers(kernel_order: OrderOracle, quotient_order: OrderOracle) -> Result<Self> {
        Self::new(
            GroupSpec::integers(),
            Clone::clone,
            |g| g.is_identity().then(|| g.clone()),
            Clone::clone,
            kernel_order,
            quotient_order,
        )
    }

    /// The standard scheme for a group kind, where one exists.
    pub fn for_group(
        group: &GroupSpec,
        kernel_order: OrderOracle,
        quotient_order: OrderOracle,
    ) -> Result<Self> {
        match group.kind() {
            GroupKind::Klein => Self::klein(kernel_order, quotient_order),
            GroupKind::IntegerLattice { rank: 2 } => Self::lattice2(kernel_order, quotient_order),
            GroupKind::IntegerLattice { rank: 1 } => Self::integers(kernel_order, quotient_order),
            _ => Err(Error::InvalidConstruction(format!(
                "no lexicographic scheme for {group}"
            ))),
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn project(&self, g: &Element) -> Element {
        (self.projection)(g)
    }

    pub fn representative(&self, g: &Element) -> Element {
        (self.representative)(g)
    }

    pub fn kernel_coordinate(&self, g: &Element) -> Option<Element> {
        (self.kernel_coordinate)(g)
    }

    /// Checks on a window that `p` is a homomorphism, that its kernel is
    /// exactly what the coordinate map accepts, and that the representatives
    /// are consistent with `rep(id) = id`.
    pub fn validate(&self, window: &Window) -> Result<()> {
        let id = self.group.identity();
        if self.representative(&id) != id {
            return Err(Error::RepresentativeInconsistency(
                "the identity coset is not represented by the identity".into(),
            ));
        }
        for g in window {
            let s = self.representative(g);
            if self.kernel_coordinate(&s.inverse().mul(g)).is_none() {
                return Err(Error::RepresentativeInconsistency(format!(
                    "rep({g}) = {s} lies in another coset"
                )));
            }
            let in_kernel = self.project(g).is_identity();
            if in_kernel != self.kernel_coordinate(g).is_some() {
                return Err(Error::InvalidConstruction(format!(
                    "kernel membership of {g} disagrees with the projection"
                )));
            }
            for h in window {
                let lhs = self.project(&g.mul(h));
                let rhs = self.project(g).mul(&self.project(h));
                if lhs != rhs {
                    return Err(Error::InvalidConstruction(format!(
                        "projection is not a homomorphism at ({g}, {h})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The lexicographic order as a global oracle.
    pub fn order(&self) -> OrderOracle {
        let scheme = self.clone();
        OrderOracle::with_domain(
            self.group.clone(),
            format!(
                "lex({}, {})",
                self.kernel_order.label(),
                self.quotient_order.label()
            ),
            move |a, b| lex_compare(a, b, &scheme).ok(),
        )
    }
}

impl fmt::Debug for LexScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LexScheme")
            .field("group", &self.group.to_string())
            .field("kernel_order", &self.kernel_order.label())
            .field("quotient_order", &self.quotient_order.label())
            .finish_non_exhaustive()
    }
}

/// Compares by the quotient order when `p(g1) ≠ p(g2)`; otherwise by the
/// kernel order on `s⁻¹g1` and `s⁻¹g2` with `s = rep(g1)`.
pub fn lex_compare(g1: &Element, g2: &Element, scheme: &LexScheme) -> Result<Comparison> {
    let (p1, p2) = (scheme.project(g1), scheme.project(g2));
    if p1 != p2 {
        return scheme.quotient_order.compare(&p1, &p2);
    }
    let s_inv = scheme.representative(g1).inverse();
    let coordinate = |g: &Element| {
        scheme.kernel_coordinate(&s_inv.mul(g)).ok_or_else(|| {
            Error::RepresentativeInconsistency(format!(
                "{g} is not in the coset of rep({g1})"
            ))
        })
    };
    scheme.kernel_order.compare(&coordinate(g1)?, &coordinate(g2)?)
}
