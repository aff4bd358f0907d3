//! Total locally invariant orders on subgroups of ℚ with an irrational slope
//! on the negative half-line.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use super::quadratic::{big, ExtendedValue, QuadraticIrrational};
use crate::error::{Error, Result};
use crate::group::{Element, GroupKind, GroupSpec, Rational};
use crate::order::{Comparison, OrderOracle};

/// `f_α(r) = r` for `r ≥ 0` and `−α·r` for `r < 0`.
pub fn f_alpha_value(r: &Rational, alpha: &QuadraticIrrational) -> ExtendedValue {
    let r = big(r);
    if !r.is_negative() {
        return ExtendedValue::rational(r, alpha.d());
    }
    ExtendedValue {
        q: -alpha.a() * &r,
        c: -alpha.b() * &r,
        d: alpha.d(),
    }
}

/// `a ≺_α b ⟺ f_α(a) < f_α(b)`.
pub fn compare_alpha(a: &Rational, b: &Rational, alpha: &QuadraticIrrational) -> Comparison {
    if a == b {
        return Comparison::Incomparable;
    }
    match f_alpha_value(a, alpha).cmp_exact(&f_alpha_value(b, alpha)) {
        Ordering::Less => Comparison::Less,
        Ordering::Greater => Comparison::Greater,
        // f_α is injective for irrational α
        Ordering::Equal => Comparison::Incomparable,
    }
}

fn require_rational(group: &GroupSpec) -> Result<()> {
    if group.is_rational() {
        Ok(())
    } else {
        Err(Error::GroupMismatch(format!("{group} is not a subgroup of Q")))
    }
}

fn require_positive(alpha: &QuadraticIrrational) -> Result<()> {
    if alpha.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidConstruction(format!("α = {alpha} must be positive")))
    }
}

/// `≺_α` as a global oracle on ℤ or a subgroup of ℚ; total.
pub fn alpha_order(group: &GroupSpec, alpha: &QuadraticIrrational) -> Result<OrderOracle> {
    require_rational(group)?;
    require_positive(alpha)?;
    let alpha = alpha.clone();
    Ok(OrderOracle::with_domain(
        group.clone(),
        format!("alpha({alpha})"),
        move |a, b| Some(compare_alpha(&a.as_rational()?, &b.as_rational()?, &alpha)),
    ))
}

/// A point `a ∈ (α, β) ∩ A` separating the rescaled orders:
/// `−a ≺_{α/a} a` while `a ≺_{β/a} −a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaWitness {
    #[serde(serialize_with = "as_string")]
    pub a: Element,
    #[serde(serialize_with = "as_string")]
    pub alpha_scaled: QuadraticIrrational,
    #[serde(serialize_with = "as_string")]
    pub beta_scaled: QuadraticIrrational,
}

fn as_string<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl AlphaWitness {
    /// Re-checks both comparisons exactly.
    pub fn verify(&self) -> bool {
        let Some(a) = self.a.as_rational() else {
            return false;
        };
        compare_alpha(&-a, &a, &self.alpha_scaled) == Comparison::Less
            && compare_alpha(&a, &-a, &self.beta_scaled) == Comparison::Less
    }
}

/// Candidate denominators of `A` up to `bound`, ascending.
fn denominators(group: &GroupSpec, bound: u64) -> Vec<u64> {
    let primes: &[u64] = match group.kind() {
        GroupKind::RationalSubgroup { primes } => primes,
        _ => &[],
    };
    let mut out = vec![1u64];
    let mut i = 0;
    while i < out.len() {
        let q = out[i];
        for p in primes {
            if let Some(n) = q.checked_mul(*p).filter(|n| *n <= bound) {
                if !out.contains(&n) {
                    out.push(n);
                }
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// Least `m` with `m / q > x`, found exactly from a floating-point seed.
fn least_numerator_above(x: &QuadraticIrrational, q: u64) -> i64 {
    let qr = BigRational::from_integer(BigInt::from(q));
    let above = |m: i64| x.cmp_rational(&(BigRational::from_integer(BigInt::from(m)) / &qr)) == Ordering::Less;
    let mut m = (x.approx() * q as f64).floor() as i64;
    while above(m) {
        m -= 1;
    }
    while !above(m) {
        m += 1;
    }
    m
}

/// Searches `(α, β) ∩ A` for the element of smallest denominator (then
/// smallest value) with denominator at most `search_bound`, and returns the
/// verified witness built from it. `None` when the bound is too small.
pub fn alpha_distinctness_witness(
    alpha: &QuadraticIrrational,
    beta: &QuadraticIrrational,
    group: &GroupSpec,
    search_bound: u64,
) -> Result<Option<AlphaWitness>> {
    require_rational(group)?;
    require_positive(alpha)?;
    if alpha.cmp_exact(beta) != Ordering::Less {
        return Err(Error::Precondition(format!("need α < β, got {alpha} and {beta}")));
    }
    for q in denominators(group, search_bound) {
        let m = least_numerator_above(alpha, q);
        let qr = BigRational::from_integer(BigInt::from(q));
        let candidate = BigRational::from_integer(BigInt::from(m)) / &qr;
        if beta.cmp_rational(&candidate) != Ordering::Greater {
            continue;
        }
        let a = Rational::new(m, q as i64);
        let witness = AlphaWitness {
            a: group.rational_element(a)?,
            alpha_scaled: alpha.div_rational(&big(&a))?,
            beta_scaled: beta.div_rational(&big(&a))?,
        };
        debug_assert!(witness.verify());
        return Ok(witness.verify().then_some(witness));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Window;
    use crate::order::check_li_condition;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn sqrt(d: u64) -> QuadraticIrrational {
        QuadraticIrrational::sqrt(d).unwrap()
    }

    #[test]
    fn f_alpha_examples() {
        let s2 = sqrt(2);
        assert_eq!(f_alpha_value(&q(3, 2), &s2).to_string(), "3/2");
        assert_eq!(f_alpha_value(&q(-2, 1), &s2).to_string(), "0+2√2");
        assert_eq!(f_alpha_value(&q(0, 1), &s2).to_string(), "0");
    }

    #[test]
    fn compare_alpha_examples() {
        let s2 = sqrt(2);
        assert_eq!(compare_alpha(&q(-2, 1), &q(3, 1), &s2), Comparison::Less);
        assert_eq!(compare_alpha(&q(1, 1), &q(-1, 1), &s2), Comparison::Less);
        assert_eq!(compare_alpha(&q(5, 3), &q(5, 3), &s2), Comparison::Incomparable);
    }

    #[test]
    fn alpha_orders_are_locally_invariant_and_total() {
        for g in [GroupSpec::integers(), GroupSpec::rational_subgroup(&[2]).unwrap(), GroupSpec::rational_subgroup(&[2, 3]).unwrap()] {
            let o = alpha_order(&g, &sqrt(2)).unwrap();
            let w = Window::ball(&g, 3, true);
            assert!(check_li_condition(&o, &w).is_clean(), "{g}");
            let (total, _) = crate::order::is_total(&o.restrict(&w).unwrap());
            assert!(total);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(alpha_order(&GroupSpec::klein(), &sqrt(2)).is_err());
        let neg: QuadraticIrrational = "0-1√2".parse().unwrap();
        assert!(alpha_order(&GroupSpec::integers(), &neg).is_err());
        assert!(alpha_distinctness_witness(&sqrt(3), &sqrt(2), &GroupSpec::integers(), 10).is_err());
    }

    #[test]
    fn witness_examples() {
        let dyadic = GroupSpec::rational_subgroup(&[2]).unwrap();
        let w = alpha_distinctness_witness(&sqrt(2), &sqrt(3), &dyadic, 16).unwrap().unwrap();
        assert_eq!(w.a, Element::Rational(q(3, 2)));
        assert_eq!(w.alpha_scaled.to_string(), "0+2/3√2");
        assert_eq!(w.beta_scaled.to_string(), "0+2/3√3");
        assert!(w.verify());

        let z = GroupSpec::integers();
        let two_s2 = QuadraticIrrational::scaled_sqrt(2, 1, 2).unwrap();
        let w = alpha_distinctness_witness(&sqrt(2), &two_s2, &z, 10).unwrap().unwrap();
        assert_eq!(w.a, Element::Lattice(vec![2]));

        let close = QuadraticIrrational::scaled_sqrt(101, 100, 2).unwrap();
        assert_eq!(alpha_distinctness_witness(&sqrt(2), &close, &z, 10).unwrap(), None);
    }

    #[test]
    fn witness_is_least_by_denominator() {
        // brute force over a/q with q ≤ 64 dyadic
        let dyadic = GroupSpec::rational_subgroup(&[2]).unwrap();
        let alpha = QuadraticIrrational::scaled_sqrt(113, 100, 2).unwrap();
        let beta = QuadraticIrrational::scaled_sqrt(114, 100, 2).unwrap();
        let w = alpha_distinctness_witness(&alpha, &beta, &dyadic, 1 << 10).unwrap().unwrap();
        let a = w.a.as_rational().unwrap();
        let mut best = None;
        'outer: for k in 0..=10 {
            let d = 1i64 << k;
            for m in 0..(4 * d) {
                let c = big(&q(m, d));
                if alpha.cmp_rational(&c) == Ordering::Less && beta.cmp_rational(&c) == Ordering::Greater {
                    best = Some(q(m, d));
                    break 'outer;
                }
            }
        }
        assert_eq!(Some(a), best);
    }
}
