//! Cofinal sequences, the growth functions `f_φ` built from them, and the
//! partial fields `R_f`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::cones::{ConeField, LeftOrderCone, Provenance};
use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec, Rational, Window};

/// Default cap on the index searched by [`cofinal_index`].
pub const DEFAULT_INDEX_BOUND: u64 = 10_000;

type TermFn = dyn Fn(u64) -> Element + Send + Sync;

/// A sequence `x_1, x_2, …` of positive elements, cofinal for the order of
/// a bi-ordered abelian group.
#[derive(Clone)]
pub struct CofinalScheme {
    cone: LeftOrderCone,
    term: Arc<TermFn>,
    bound: u64,
}

impl CofinalScheme {
    pub fn new<F>(cone: LeftOrderCone, term: F, bound: u64) -> Result<Self>
    where
        F: Fn(u64) -> Element + Send + Sync + 'static,
    {
        if !cone.group().is_abelian() {
            return Err(Error::InvalidConstruction(format!(
                "{} is not abelian",
                cone.group()
            )));
        }
        Ok(Self {
            cone,
            term: Arc::new(term),
            bound,
        })
    }

    /// `x_i = i` with the usual order, on ℤ and the subgroups of ℚ.
    pub fn integers_in(group: &GroupSpec) -> Result<Self> {
        if !group.is_rational() {
            return Err(Error::GroupMismatch(format!(
                "no default cofinal sequence for {group}"
            )));
        }
        let g = group.clone();
        Self::new(
            LeftOrderCone::standard(group),
            move |i| {
                g.rational_element(Rational::from_integer(i as i64))
                    .expect("integers lie in every subgroup of Q")
            },
            DEFAULT_INDEX_BOUND,
        )
    }

    pub fn with_bound(mut self, bound: u64) -> Self {
        self.bound = bound;
        self
    }

    pub fn group(&self) -> &GroupSpec {
        self.cone.group()
    }

    pub fn cone(&self) -> &LeftOrderCone {
        &self.cone
    }

    pub fn term(&self, i: u64) -> Element {
        (self.term)(i)
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// `a ≤ b` in the bi-order.
    fn le(&self, a: &Element, b: &Element) -> bool {
        a == b || self.cone.is_positive(&b.mul(&a.inverse()))
    }

    /// Checks the cofinality requirement on a window: every element lies
    /// below some term with index within the bound.
    pub fn check_cofinal(&self, window: &Window) -> Result<()> {
        for a in window {
            cofinal_index(a, self)?;
        }
        Ok(())
    }
}

impl fmt::Debug for CofinalScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CofinalScheme")
            .field("cone", &self.cone)
            .field("bound", &self.bound)
            .finish_non_exhaustive()
    }
}

/// `n_a = min { i ≥ 1 : a ≤ x_i }`.
pub fn cofinal_index(a: &Element, scheme: &CofinalScheme) -> Result<u64> {
    (1..=scheme.bound)
        .find(|&i| scheme.le(a, &scheme.term(i)))
        .ok_or_else(|| Error::SearchBound {
            bound: scheme.bound,
            what: format!("no term of the cofinal sequence above {a}"),
        })
}

type PhiFn = dyn Fn(u64) -> i64 + Send + Sync;

/// A strictly increasing `φ : ℕ_{>0} → ℕ_{>1}`.
#[derive(Clone)]
pub struct PhiFunction {
    label: String,
    f: Arc<PhiFn>,
}

impl PhiFunction {
    /// Wraps an arbitrary function; its requirements are checked by
    /// [`PhiFunction::check`].
    pub fn new<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(u64) -> i64 + Send + Sync + 'static,
    {
        Self {
            label: label.into(),
            f: Arc::new(f),
        }
    }

    /// `φ(n) = n + k`, `k ≥ 1`.
    pub fn affine(k: i64) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidConstruction(format!(
                "affine:{k} needs k ≥ 1"
            )));
        }
        Ok(Self::new(format!("affine:{k}"), move |n| n as i64 + k))
    }

    pub fn eval(&self, n: u64) -> i64 {
        (self.f)(n)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Strictly increasing with values ≥ 2 on `1..=up_to`.
    pub fn check(&self, up_to: u64) -> Result<()> {
        let mut prev = None;
        for n in 1..=up_to {
            let v = self.eval(n);
            if v < 2 || prev.is_some_and(|p| p >= v) {
                return Err(Error::InvalidConstruction(format!(
                    "{} is not strictly increasing with values ≥ 2 at n = {n}",
                    self.label
                )));
            }
            prev = Some(v);
        }
        Ok(())
    }
}

impl fmt::Debug for PhiFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PhiFunction({})", self.label)
    }
}

impl fmt::Display for PhiFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// `"affine:k"`.
impl FromStr for PhiFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let k = s
            .strip_prefix("affine:")
            .ok_or_else(|| Error::Parse {
                position: 0,
                message: format!("expected affine:k, found {s:?}"),
            })?
            .trim()
            .parse::<i64>()
            .map_err(|e| Error::Parse {
                position: 7,
                message: e.to_string(),
            })?;
        Self::affine(k)
    }
}

/// `f_φ(a) = a^{φ(n_a)}`, written additively `φ(n_a)·a`, for positive `a`.
pub fn f_phi(a: &Element, scheme: &CofinalScheme, phi: &PhiFunction) -> Result<Element> {
    if !scheme.cone.is_positive(a) {
        return Err(Error::Precondition(format!("{a} is not positive")));
    }
    Ok(a.pow(phi.eval(cofinal_index(a, scheme)?)))
}

/// Checks `a < f(a)` and the strict `f(a) + f(b) < f(a + b)` for all
/// positive `a`, `b` in the window; returns the first failing pair.
pub fn check_superadditivity(
    scheme: &CofinalScheme,
    phi: &PhiFunction,
    window: &Window,
) -> Result<Option<(Element, Element)>> {
    let cone = scheme.cone();
    let positives: Vec<&Element> = window.iter().filter(|a| cone.is_positive(a)).collect();
    for a in &positives {
        let fa = f_phi(a, scheme, phi)?;
        if !cone.is_positive(&fa.mul(&a.inverse())) {
            return Ok(Some(((*a).clone(), (*a).clone())));
        }
        for b in &positives {
            let fb = f_phi(b, scheme, phi)?;
            let fab = f_phi(&a.mul(b), scheme, phi)?;
            if !cone.is_positive(&fab.mul(&fa.mul(&fb).inverse())) {
                return Ok(Some(((*a).clone(), (*b).clone())));
            }
        }
    }
    Ok(None)
}

/// The field `R_f` for `f = f_φ`:
///
/// * `P_id = P ∪ P⁻¹`;
/// * `P_a = P⁻¹` for `a ∈ P⁻¹`;
/// * `P_a = P ∪ { b : b < f(a)⁻¹ }` for `a ∈ P`.
///
/// The strict superadditivity of `f` is checked on `window` first.
pub fn rf_field(scheme: &CofinalScheme, phi: &PhiFunction, window: &Window) -> Result<ConeField> {
    phi.check(scheme.bound().min(1_000))?;
    if let Some((a, b)) = check_superadditivity(scheme, phi, window)? {
        return Err(Error::InvalidConstruction(format!(
            "f_{phi} is not strictly superadditive at ({a}, {b})"
        )));
    }
    let scheme = scheme.clone();
    let phi_c = phi.clone();
    Ok(ConeField::with_domain(
        scheme.group().clone(),
        Provenance::Rf,
        format!("rf({phi})"),
        move |a, b| {
            let cone = scheme.cone();
            if a.is_identity() {
                return Some(!b.is_identity());
            }
            if !cone.is_positive(a) {
                return Some(cone.is_positive(&b.inverse()));
            }
            if cone.is_positive(b) {
                return Some(true);
            }
            // b < f(a)⁻¹ ⟺ f(a)⁻¹ b⁻¹ ∈ P
            let fa = f_phi(a, &scheme, &phi_c).ok()?;
            Some(cone.is_positive(&fa.mul(b).inverse()))
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::cone_axiom_report;

    fn z(c: i64) -> Element {
        Element::Lattice(vec![c])
    }

    fn dy(n: i64, d: i64) -> Element {
        Element::Rational(Rational::new(n, d))
    }

    #[test]
    fn cofinal_index_examples() {
        let s = CofinalScheme::integers_in(&GroupSpec::integers()).unwrap();
        assert_eq!(cofinal_index(&z(5), &s).unwrap(), 5);
        assert_eq!(cofinal_index(&z(-3), &s).unwrap(), 1);
        let d = CofinalScheme::integers_in(&GroupSpec::rational_subgroup(&[2]).unwrap()).unwrap();
        assert_eq!(cofinal_index(&dy(5, 2), &d).unwrap(), 3);
        let small = s.with_bound(4);
        assert!(matches!(cofinal_index(&z(5), &small), Err(Error::SearchBound { .. })));
    }

    #[test]
    fn f_phi_examples() {
        let phi: PhiFunction = "affine:1".parse().unwrap();
        let s = CofinalScheme::integers_in(&GroupSpec::integers()).unwrap();
        assert_eq!(f_phi(&z(5), &s, &phi).unwrap(), z(30));
        assert_eq!(f_phi(&z(1), &s, &phi).unwrap(), z(2));
        assert!(f_phi(&z(-1), &s, &phi).is_err());
        let d = CofinalScheme::integers_in(&GroupSpec::rational_subgroup(&[2]).unwrap()).unwrap();
        assert_eq!(f_phi(&dy(5, 2), &d, &phi).unwrap(), dy(10, 1));
    }

    #[test]
    fn phi_parsing() {
        assert_eq!("affine:3".parse::<PhiFunction>().unwrap().eval(2), 5);
        assert!("affine:0".parse::<PhiFunction>().is_err());
        assert!("linear:2".parse::<PhiFunction>().is_err());
        assert!(PhiFunction::new("const", |_| 2).check(5).is_err());
    }

    #[test]
    fn rf_membership_examples() {
        let g = GroupSpec::integers();
        let s = CofinalScheme::integers_in(&g).unwrap();
        let f = rf_field(&s, &PhiFunction::affine(1).unwrap(), &Window::ball(&g, 4, true)).unwrap();
        assert!(f.member(&z(2), &z(-7)).unwrap());
        assert!(!f.member(&z(2), &z(-6)).unwrap());
        assert!(f.member(&z(-3), &z(-1)).unwrap());
        assert!(f.member(&z(0), &z(5)).unwrap());
        assert!(!f.member(&z(0), &z(0)).unwrap());
    }

    #[test]
    fn rf_is_a_non_total_field() {
        let g = GroupSpec::integers();
        let s = CofinalScheme::integers_in(&g).unwrap();
        let phi = PhiFunction::affine(1).unwrap();
        let w = Window::ball(&g, 4, true);
        let f = rf_field(&s, &phi, &w).unwrap();
        let r = cone_axiom_report(&f, &w, true);
        assert!(r.is_field(), "{r:?}");
        assert_eq!(r.total(), Some(false));
        // (a, a·f(a)⁻¹) is never comparable
        let c3 = r.c3.unwrap();
        for a in 1..=2 {
            let fa = f_phi(&z(a), &s, &phi).unwrap();
            let h = z(a).mul(&fa.inverse());
            assert!(f.member(&h, &z(a).mul(&h.inverse())) == Ok(false));
            assert!(!f.member(&z(a), &h.mul(&z(-a))).unwrap());
            if w.contains(&h) {
                assert!(c3.contains(&(z(a), h)));
            }
        }
    }

    #[test]
    fn rf_refuses_dense_groups() {
        let g = GroupSpec::rational_subgroup(&[2]).unwrap();
        let s = CofinalScheme::integers_in(&g).unwrap();
        let err = rf_field(&s, &PhiFunction::affine(1).unwrap(), &Window::ball(&g, 2, true)).unwrap_err();
        assert!(matches!(err, Error::InvalidConstruction(_)));
    }

    #[test]
    fn rf_fields_are_separated() {
        let g = GroupSpec::integers();
        let s = CofinalScheme::integers_in(&g).unwrap();
        let w = Window::ball(&g, 2, true);
        let fields: Vec<_> = (1..=6)
            .map(|k| rf_field(&s, &PhiFunction::affine(k).unwrap(), &w).unwrap())
            .collect();
        for k in 1..=6 {
            for k2 in k + 1..=6 {
                let b = z(-(k2 + 1));
                assert!(fields[k as usize - 1].member(&z(1), &b).unwrap());
                assert!(!fields[k2 as usize - 1].member(&z(1), &b).unwrap());
            }
        }
    }
}
