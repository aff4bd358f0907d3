use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// An element of one of the concrete groups.
///
/// Every variant stores a canonical form, so structural equality is group
/// equality:
///
/// * `Lattice` is a vector in ℤⁿ.
/// * `Rational` is a reduced fraction in a subgroup of ℚ.
/// * `Free` is a freely reduced word; letter `i > 0` is the generator `aᵢ`
///   and `-i` its inverse.
/// * `Klein(a, b)` is `yᵃxᵇ` in ⟨x, y | xyx⁻¹ = y⁻¹⟩.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Lattice(Vec<i64>),
    Rational(Rational),
    Free(Vec<i32>),
    Klein(i64, i64),
}

pub(crate) fn free_reduce<I: IntoIterator<Item = i32>>(letters: I) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else if l != 0 {
            out.push(l);
        }
    }
    out
}

fn sign_flip(b: i64) -> i64 {
    if b.is_even() {
        1
    } else {
        -1
    }
}

// 0, 1, -1, 2, -2, ...
fn zigzag(c: i64) -> u64 {
    if c > 0 {
        2 * c as u64 - 1
    } else {
        2 * c.unsigned_abs()
    }
}

fn letter_key(l: i32) -> (u32, bool) {
    (l.unsigned_abs(), l < 0)
}

impl Element {
    fn variant_rank(&self) -> u8 {
        match self {
            Element::Lattice(_) => 0,
            Element::Rational(_) => 1,
            Element::Free(_) => 2,
            Element::Klein(..) => 3,
        }
    }

    fn kind_name(&self) -> &'static str {
        match self {
            Element::Lattice(_) => "integer-lattice",
            Element::Rational(_) => "rational-subgroup",
            Element::Free(_) => "free",
            Element::Klein(..) => "klein",
        }
    }

    /// Product `self · other`, failing when the operands come from different
    /// kinds of group.
    pub fn compose(&self, other: &Element) -> Result<Element> {
        Ok(match (self, other) {
            (Element::Lattice(x), Element::Lattice(y)) => {
                if x.len() != y.len() {
                    return Err(Error::GroupMismatch(format!(
                        "lattice ranks {} and {}",
                        x.len(),
                        y.len()
                    )));
                }
                Element::Lattice(x.iter().zip(y).map(|(a, b)| a + b).collect())
            }
            (Element::Rational(x), Element::Rational(y)) => Element::Rational(x + y),
            (Element::Free(x), Element::Free(y)) => {
                Element::Free(free_reduce(x.iter().chain(y.iter()).copied()))
            }
            (Element::Klein(a1, b1), Element::Klein(a2, b2)) => {
                Element::Klein(a1 + sign_flip(*b1) * a2, b1 + b2)
            }
            (x, y) => {
                return Err(Error::GroupMismatch(format!(
                    "{} and {}",
                    x.kind_name(),
                    y.kind_name()
                )))
            }
        })
    }

    /// Product `self · other`.
    ///
    /// # Panics
    ///
    /// Panics when the operands belong to different groups; use
    /// [`Element::compose`] for untrusted input.
    pub fn mul(&self, other: &Element) -> Element {
        match self.compose(other) {
            Ok(e) => e,
            Err(e) => panic!("{e}"),
        }
    }

    pub fn inverse(&self) -> Element {
        match self {
            Element::Lattice(x) => Element::Lattice(x.iter().map(|c| -c).collect()),
            Element::Rational(x) => Element::Rational(-x),
            Element::Free(w) => Element::Free(w.iter().rev().map(|l| -l).collect()),
            Element::Klein(a, b) => Element::Klein(-sign_flip(*b) * a, -b),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Element::Lattice(x) => x.iter().all(|c| *c == 0),
            Element::Rational(x) => x.is_zero(),
            Element::Free(w) => w.is_empty(),
            Element::Klein(a, b) => *a == 0 && *b == 0,
        }
    }

    /// The identity of the group this element lives in.
    pub fn identity_like(&self) -> Element {
        match self {
            Element::Lattice(x) => Element::Lattice(vec![0; x.len()]),
            Element::Rational(_) => Element::Rational(Rational::zero()),
            Element::Free(_) => Element::Free(Vec::new()),
            Element::Klein(..) => Element::Klein(0, 0),
        }
    }

    /// `self^k`, written multiplicatively.
    pub fn pow(&self, k: i64) -> Element {
        match self {
            Element::Lattice(x) => Element::Lattice(x.iter().map(|c| c * k).collect()),
            Element::Rational(x) => Element::Rational(x * Rational::from_integer(k)),
            _ => {
                let base = if k < 0 { self.inverse() } else { self.clone() };
                let mut acc = self.identity_like();
                let mut sq = base;
                let mut n = k.unsigned_abs();
                while n > 0 {
                    if n & 1 == 1 {
                        acc = acc.mul(&sq);
                    }
                    sq = sq.mul(&sq);
                    n >>= 1;
                }
                acc
            }
        }
    }

    /// `h⁻¹ · self · h`.
    pub fn conjugate_by(&self, h: &Element) -> Element {
        h.inverse().mul(self).mul(h)
    }

    /// The element as a rational number, for the rank-one abelian groups.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Element::Rational(x) => Some(*x),
            Element::Lattice(x) if x.len() == 1 => Some(Rational::from_integer(x[0])),
            _ => None,
        }
    }

    /// Canonical text encoding; see [`crate::group::GroupSpec::decode`].
    pub fn encode(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Lattice(x) => {
                for (i, c) in x.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
            Element::Rational(x) => {
                if x.is_integer() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            Element::Free(w) => {
                if w.is_empty() {
                    return f.write_str("1");
                }
                for l in w {
                    let base = b'a' + (l.unsigned_abs() - 1) as u8;
                    let c = if *l > 0 { base } else { base.to_ascii_uppercase() };
                    write!(f, "{}", c as char)?;
                }
                Ok(())
            }
            Element::Klein(a, b) => write!(f, "y^{a} x^{b}"),
        }
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.encode())
    }
}

/// Canonical order: smaller elements first (ℓ¹ size, absolute value or word
/// length), positive before negative, generators in index order with each
/// generator before its inverse.
impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Element::Lattice(x), Element::Lattice(y)) => {
                let nx: u64 = x.iter().map(|c| c.unsigned_abs()).sum();
                let ny: u64 = y.iter().map(|c| c.unsigned_abs()).sum();
                nx.cmp(&ny)
                    .then_with(|| x.len().cmp(&y.len()))
                    .then_with(|| {
                        x.iter()
                            .map(|c| zigzag(*c))
                            .cmp(y.iter().map(|c| zigzag(*c)))
                    })
            }
            (Element::Rational(x), Element::Rational(y)) => x
                .abs()
                .cmp(&y.abs())
                .then_with(|| x.is_negative().cmp(&y.is_negative())),
            (Element::Free(x), Element::Free(y)) => x
                .len()
                .cmp(&y.len())
                .then_with(|| x.iter().map(|l| letter_key(*l)).cmp(y.iter().map(|l| letter_key(*l)))),
            (Element::Klein(a1, b1), Element::Klein(a2, b2)) => (a1.unsigned_abs() + b1.unsigned_abs())
                .cmp(&(a2.unsigned_abs() + b2.unsigned_abs()))
                .then_with(|| zigzag(*b1).cmp(&zigzag(*b2)))
                .then_with(|| zigzag(*a1).cmp(&zigzag(*a2))),
            (x, y) => x.variant_rank().cmp(&y.variant_rank()),
        }
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2(a: i64, b: i64) -> Element {
        Element::Lattice(vec![a, b])
    }

    #[test]
    fn lattice_product() {
        assert_eq!(z2(1, 2).mul(&z2(3, -1)), z2(4, 1));
    }

    #[test]
    fn klein_product_and_inverse() {
        assert_eq!(Element::Klein(1, 1).mul(&Element::Klein(1, 0)), Element::Klein(0, 1));
        assert_eq!(Element::Klein(2, 1).inverse(), Element::Klein(2, -1));
        // x y x⁻¹ = y⁻¹
        let x = Element::Klein(0, 1);
        let y = Element::Klein(1, 0);
        assert_eq!(x.mul(&y).mul(&x.inverse()), Element::Klein(-1, 0));
    }

    #[test]
    fn free_reduction() {
        // ab · Ba = aa
        let ab = Element::Free(vec![1, 2]);
        let b_inv_a = Element::Free(vec![-2, 1]);
        assert_eq!(ab.mul(&b_inv_a), Element::Free(vec![1, 1]));
        assert_eq!(Element::Free(vec![1, -2]).inverse(), Element::Free(vec![2, -1]));
    }

    #[test]
    fn mismatched_kinds() {
        let err = Element::Klein(0, 1).compose(&z2(0, 0)).unwrap_err();
        assert!(matches!(err, Error::GroupMismatch(_)));
        assert!(z2(0, 0).compose(&Element::Lattice(vec![1])).is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(Element::Klein(1, 1).pow(2), Element::Klein(0, 2));
        assert_eq!(Element::Free(vec![1, 2]).pow(-2), Element::Free(vec![-2, -1, -2, -1]));
        assert_eq!(Element::Rational(Rational::new(5, 2)).pow(4), Element::Rational(Rational::from_integer(10)));
    }

    #[test]
    fn canonical_order_small_first() {
        let mut v: Vec<Element> = [0, 2, -1, -2, 1].iter().map(|c| Element::Lattice(vec![*c])).collect();
        v.sort();
        let enc: Vec<String> = v.iter().map(Element::encode).collect();
        assert_eq!(enc, ["0", "1", "-1", "2", "-2"]);
    }
}
