use crate::error::{Error, Result};
use crate::group::{Element, Window};

use super::oracle::{Comparison, OrderOracle};

/// Which side the perturbation `h` multiplies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiForm {
    /// `g ≺ hg` or `g ≺ h⁻¹g`.
    Left,
    /// `g < gh` or `g < gh⁻¹`, the form common in the literature.
    Right,
}

/// Result of checking local invariance on a window.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LiCheck {
    /// Pairs `(g, h)` for which neither required comparison holds.
    pub violations: Vec<(Element, Element)>,
    /// Instances skipped because the oracle is undefined there.
    pub undetermined: usize,
}

impl LiCheck {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every `g` in the window and every `h ≠ id` in the window, require
/// `g ≺ hg` or `g ≺ h⁻¹g`. Products are taken in the ambient group and may
/// leave the window.
pub fn check_li_condition(order: &OrderOracle, window: &Window) -> LiCheck {
    check_li_condition_form(order, window, LiForm::Left)
}

pub fn check_li_condition_form(order: &OrderOracle, window: &Window, form: LiForm) -> LiCheck {
    let mut out = LiCheck::default();
    for g in window {
        for h in window.iter().filter(|h| !h.is_identity()) {
            let hi = h.inverse();
            let (up, down) = match form {
                LiForm::Left => (h.mul(g), hi.mul(g)),
                LiForm::Right => (g.mul(h), g.mul(&hi)),
            };
            match (order.try_compare(g, &up), order.try_compare(g, &down)) {
                (Some(Comparison::Less), _) | (_, Some(Comparison::Less)) => {}
                (Some(_), Some(_)) => out.violations.push((g.clone(), h.clone())),
                _ => out.undetermined += 1,
            }
        }
    }
    out
}

/// `g < h` iff `g⁻¹ ≺ h⁻¹`: turns the left form into the right form and back.
pub fn convert_convention(order: &OrderOracle) -> OrderOracle {
    let inner = order.clone();
    OrderOracle::with_domain(
        order.group().clone(),
        format!("converted({})", order.label()),
        move |g, h| inner.try_compare(&g.inverse(), &h.inverse()),
    )
}

/// First pair `(g, h)` of the window, in canonical order, on which the two
/// oracles disagree.
pub fn find_disagreement(
    o1: &OrderOracle,
    o2: &OrderOracle,
    window: &Window,
) -> Result<Option<(Element, Element)>> {
    if o1.group() != o2.group() {
        return Err(Error::GroupMismatch(format!("{} and {}", o1.group(), o2.group())));
    }
    for g in window {
        for h in window {
            if o1.try_compare(g, h) != o2.try_compare(g, h) {
                return Ok(Some((g.clone(), h.clone())));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn z(c: i64) -> Element {
        Element::Lattice(vec![c])
    }

    fn val(g: &Element) -> i64 {
        match g {
            Element::Lattice(v) => v[0],
            _ => unreachable!(),
        }
    }

    fn by_key(label: &str, key: fn(i64) -> i64) -> OrderOracle {
        OrderOracle::new(GroupSpec::integers(), label, move |g, h| {
            let (a, b) = (key(val(g)), key(val(h)));
            if a < b {
                Comparison::Less
            } else if a > b {
                Comparison::Greater
            } else {
                Comparison::Incomparable
            }
        })
    }

    fn standard() -> OrderOracle {
        by_key("standard", |x| x)
    }

    fn reversed() -> OrderOracle {
        by_key("reversed", |x| -x)
    }

    #[test]
    fn standard_and_reversed_are_locally_invariant() {
        let w = Window::ball(&GroupSpec::integers(), 3, true);
        assert!(check_li_condition(&standard(), &w).is_clean());
        assert!(check_li_condition(&reversed(), &w).is_clean());
    }

    #[test]
    fn absolute_value_order_fails_at_zero() {
        // g ≺ h iff |g| > |h|
        let w = Window::ball(&GroupSpec::integers(), 3, true);
        let o = by_key("abs", |x| -x.abs());
        let check = check_li_condition(&o, &w);
        assert_eq!(check.violations.first(), Some(&(z(0), z(1))));
    }

    #[test]
    fn conversion_on_integers_reverses() {
        let c = convert_convention(&standard());
        assert_eq!(c.compare(&z(1), &z(0)).unwrap(), Comparison::Less);
        let w = Window::ball(&GroupSpec::integers(), 3, true);
        assert_eq!(find_disagreement(&c, &reversed(), &w).unwrap(), None);
        assert!(check_li_condition_form(&c, &w, LiForm::Right).is_clean());
        let twice = convert_convention(&c);
        assert_eq!(find_disagreement(&twice, &standard(), &w).unwrap(), None);
    }

    #[test]
    fn conversion_fixes_trivial_window() {
        let w = Window::ball(&GroupSpec::integers(), 0, true);
        let c = convert_convention(&standard());
        assert_eq!(find_disagreement(&c, &standard(), &w).unwrap(), None);
    }

    #[test]
    fn disagreement_witness() {
        let w = Window::ball(&GroupSpec::integers(), 1, true);
        assert_eq!(find_disagreement(&standard(), &standard(), &w).unwrap(), None);
        assert_eq!(
            find_disagreement(&standard(), &reversed(), &w).unwrap(),
            Some((z(0), z(1)))
        );
        let other = OrderOracle::new(GroupSpec::klein(), "k", |_, _| Comparison::Incomparable);
        assert!(find_disagreement(&standard(), &other, &w).is_err());
    }
}
