//! Exact numbers of the form `a + b√d` with rational `a`, `b`.
//!
//! Signs are decided by comparing squares, never by floating point.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::Rational;

pub(crate) fn big(r: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn sign(x: &BigRational) -> Ordering {
    x.cmp(&BigRational::zero())
}

/// Sign of `p + q√d` for squarefree `d > 1`.
pub(crate) fn sign_surd(p: &BigRational, q: &BigRational, d: u64) -> Ordering {
    let sp = sign(p);
    let sq = sign(q);
    if sq == Ordering::Equal {
        return sp;
    }
    if sp == Ordering::Equal || sp == sq {
        return sq;
    }
    // opposite signs: the larger magnitude wins; p² = q²d cannot happen
    let lhs = p * p;
    let rhs = q * q * BigRational::from_integer(BigInt::from(d));
    match lhs.cmp(&rhs) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Sign of `a + b√d1 + c√d2`.
pub(crate) fn sign_two_surds(
    a: &BigRational,
    b: &BigRational,
    d1: u64,
    c: &BigRational,
    d2: u64,
) -> Ordering {
    if d1 == d2 {
        return sign_surd(a, &(b + c), d1);
    }
    let su = sign_surd(a, b, d1);
    let sv = sign(c);
    if sv == Ordering::Equal {
        return su;
    }
    if su == Ordering::Equal || su == sv {
        return sv;
    }
    // compare |a + b√d1| with |c√d2| through their squares
    let d1r = BigRational::from_integer(BigInt::from(d1));
    let d2r = BigRational::from_integer(BigInt::from(d2));
    let p = a * a + b * b * &d1r - c * c * &d2r;
    let two = BigRational::from_integer(BigInt::from(2));
    let q = two * a * b;
    match sign_surd(&p, &q, d1) {
        Ordering::Greater => su,
        Ordering::Less => sv,
        Ordering::Equal => Ordering::Equal,
    }
}

fn is_squarefree(d: u64) -> bool {
    let mut p = 2u64;
    while p * p <= d {
        if d % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// `a + b√d` with `b ≠ 0` and `d > 1` squarefree, hence irrational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticIrrational {
    a: BigRational,
    b: BigRational,
    d: u64,
}

impl QuadraticIrrational {
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::InvalidConstruction(
                "the surd coefficient must be non-zero".into(),
            ));
        }
        if d < 2 || !is_squarefree(d) {
            return Err(Error::InvalidConstruction(format!(
                "{d} is not a squarefree integer greater than 1"
            )));
        }
        Ok(Self { a, b, d })
    }

    /// `√d`.
    pub fn sqrt(d: u64) -> Result<Self> {
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    /// `(n / m)·√d`.
    pub fn scaled_sqrt(n: i64, m: i64, d: u64) -> Result<Self> {
        Self::new(BigRational::zero(), big(&Rational::new(n, m)), d)
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_positive(&self) -> bool {
        sign_surd(&self.a, &self.b, self.d) == Ordering::Greater
    }

    /// `self · r` for a non-zero rational `r`.
    pub fn mul_rational(&self, r: &BigRational) -> Result<Self> {
        Self::new(&self.a * r, &self.b * r, self.d)
    }

    /// `self / r` for a non-zero rational `r`.
    pub fn div_rational(&self, r: &BigRational) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::InvalidConstruction("division by zero".into()));
        }
        self.mul_rational(&r.recip())
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        sign_surd(&(&self.a - r), &self.b, self.d)
    }

    /// Exact comparison, also across different radicands.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        sign_two_surds(&(&self.a - &other.a), &self.b, self.d, &-&other.b, other.d)
    }

    /// A floating-point approximation, only ever used to seed exact searches.
    pub(crate) fn approx(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(0.0);
        let b = self.b.to_f64().unwrap_or(0.0);
        a + b * (self.d as f64).sqrt()
    }
}

impl fmt::Display for QuadraticIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{}{op}{}√{}", self.a, self.b.abs(), self.d)
    }
}

fn parse_rational(s: &str, position: usize) -> Result<BigRational> {
    let err = || Error::Parse {
        position,
        message: format!("invalid rational {s:?}"),
    };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| err())?;
    let d: BigInt = d.trim().parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(n, d))
}

/// Literal `"a+b√d"` (or `"a-b√d"`), e.g. `"0+1√2"` or `"1/2-3/4√5"`.
/// `sqrt` is accepted in place of `√`.
impl FromStr for QuadraticIrrational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, radicand, root_at) = if let Some(i) = s.find('√') {
            (&s[..i], &s[i + '√'.len_utf8()..], i)
        } else if let Some(i) = s.find("sqrt") {
            (&s[..i], &s[i + 4..], i)
        } else {
            return Err(Error::Parse {
                position: 0,
                message: format!("expected a+b√d, found {s:?}"),
            });
        };
        let d: u64 = radicand.trim().parse().map_err(|_| Error::Parse {
            position: root_at + 1,
            message: format!("invalid radicand {radicand:?}"),
        })?;
        // the sign separating a from b is the last + or - not at the start
        let split = head
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(|| Error::Parse {
                position: 0,
                message: format!("expected a+b√d, found {s:?}"),
            })?;
        let a = parse_rational(&head[..split], 0)?;
        let mut b = parse_rational(&head[split + 1..], split + 1)?;
        if head.as_bytes()[split] == b'-' {
            b = -b;
        }
        Self::new(a, b, d)
    }
}

/// `q + c√d`, the value of `f_α` at a rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtendedValue {
    pub q: BigRational,
    pub c: BigRational,
    pub d: u64,
}

impl ExtendedValue {
    pub fn rational(q: BigRational, d: u64) -> Self {
        Self {
            q,
            c: BigRational::zero(),
            d,
        }
    }

    /// Exact comparison; values with different `d` are compared by squaring.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        sign_two_surds(&(&self.q - &other.q), &self.c, self.d, &-&other.c, other.d)
    }
}

impl fmt::Display for ExtendedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_zero() {
            write!(f, "{}", self.q)
        } else {
            let op = if self.c.is_negative() { '-' } else { '+' };
            write!(f, "{}{op}{}√{}", self.q, self.c.abs(), self.d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        big(&Rational::new(n, d))
    }

    #[test]
    fn parse_and_display() {
        let q: QuadraticIrrational = "0+1√2".parse().unwrap();
        assert_eq!(q, QuadraticIrrational::sqrt(2).unwrap());
        assert_eq!(q.to_string(), "0+1√2");
        let q: QuadraticIrrational = "1/2-3/4√5".parse().unwrap();
        assert_eq!(q.to_string(), "1/2-3/4√5");
        let q: QuadraticIrrational = "-1+2sqrt3".parse().unwrap();
        assert_eq!(q.to_string(), "-1+2√3");
        assert!("1+0√2".parse::<QuadraticIrrational>().is_err());
        assert!("0+1√4".parse::<QuadraticIrrational>().is_err());
        assert!("0+1".parse::<QuadraticIrrational>().is_err());
    }

    #[test]
    fn rational_comparisons() {
        let s2 = QuadraticIrrational::sqrt(2).unwrap();
        assert_eq!(s2.cmp_rational(&r(3, 2)), Ordering::Less);
        assert_eq!(s2.cmp_rational(&r(7, 5)), Ordering::Greater);
        let neg: QuadraticIrrational = "3-2√2".parse().unwrap(); // ≈ 0.1716
        assert!(neg.is_positive());
        assert_eq!(neg.cmp_rational(&r(17, 100)), Ordering::Greater);
        assert_eq!(neg.cmp_rational(&r(18, 100)), Ordering::Less);
    }

    #[test]
    fn cross_radicand_comparisons() {
        let s2 = QuadraticIrrational::sqrt(2).unwrap();
        let s3 = QuadraticIrrational::sqrt(3).unwrap();
        assert_eq!(s2.cmp_exact(&s3), Ordering::Less);
        assert_eq!(s3.cmp_exact(&s2), Ordering::Greater);
        // 1 + √2 ≈ 2.414 vs √6 ≈ 2.449
        let a: QuadraticIrrational = "1+1√2".parse().unwrap();
        let b = QuadraticIrrational::sqrt(6).unwrap();
        assert_eq!(a.cmp_exact(&b), Ordering::Less);
        // 1/2 + √3 ≈ 2.232 vs √5 ≈ 2.236
        let a: QuadraticIrrational = "1/2+1√3".parse().unwrap();
        let b = QuadraticIrrational::sqrt(5).unwrap();
        assert_eq!(a.cmp_exact(&b), Ordering::Less);
        assert_eq!(a.cmp_exact(&a), Ordering::Equal);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            // Agreement with floating point wherever the gap is not tiny.
            #[test]
            fn sign_matches_float(p in -200i64..200, q in -200i64..200, d in prop::sample::select(vec![2u64, 3, 5, 6, 7, 10])) {
                let exact = sign_surd(&r(p, 7), &r(q, 3), d);
                let approx = p as f64 / 7.0 + q as f64 / 3.0 * (d as f64).sqrt();
                if approx.abs() > 1e-9 {
                    prop_assert_eq!(exact, approx.partial_cmp(&0.0).unwrap());
                }
            }

            #[test]
            fn two_surds_match_float(a in -50i64..50, b in -50i64..50, c in -50i64..50) {
                let exact = sign_two_surds(&r(a, 1), &r(b, 1), 2, &r(c, 1), 3);
                let approx = a as f64 + b as f64 * 2f64.sqrt() + c as f64 * 3f64.sqrt();
                if approx.abs() > 1e-9 {
                    prop_assert_eq!(exact, approx.partial_cmp(&0.0).unwrap());
                }
            }
        }
    }
}
