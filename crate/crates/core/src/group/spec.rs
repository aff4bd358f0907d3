use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use super::element::{free_reduce, Element, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// ℤⁿ.
    IntegerLattice { rank: usize },
    /// The subgroup of ℚ of fractions whose denominators factor over `primes`.
    RationalSubgroup { primes: Vec<u64> },
    /// The free group on `rank` generators a, b, c, ...
    Free { rank: usize },
    /// ⟨x, y | xyx⁻¹ = y⁻¹⟩, the fundamental group of the Klein bottle.
    Klein,
}

/// One of the concrete torsion-free groups, with a generating set used for
/// word-length balls.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    kind: GroupKind,
    generators: Vec<Element>,
}

fn parse_err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl GroupSpec {
    pub fn integer_lattice(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidConstruction("lattice rank must be positive".into()));
        }
        let generators = (0..rank)
            .map(|i| {
                let mut v = vec![0; rank];
                v[i] = 1;
                Element::Lattice(v)
            })
            .collect();
        Ok(Self {
            kind: GroupKind::IntegerLattice { rank },
            generators,
        })
    }

    /// ℤ, the most common case.
    pub fn integers() -> Self {
        Self::integer_lattice(1).expect("rank 1")
    }

    pub fn rational_subgroup(primes: &[u64]) -> Result<Self> {
        let mut primes = primes.to_vec();
        primes.sort_unstable();
        primes.dedup();
        if let Some(p) = primes.iter().find(|p| !is_prime(**p)) {
            return Err(Error::InvalidConstruction(format!("{p} is not prime")));
        }
        let mut generators = vec![Element::Rational(Rational::from_integer(1))];
        generators.extend(
            primes
                .iter()
                .map(|p| Element::Rational(Rational::new(1, *p as i64))),
        );
        Ok(Self {
            kind: GroupKind::RationalSubgroup { primes },
            generators,
        })
    }

    pub fn free(rank: usize) -> Result<Self> {
        if rank == 0 || rank > 26 {
            return Err(Error::InvalidConstruction(
                "free rank must be between 1 and 26".into(),
            ));
        }
        let generators = (1..=rank as i32).map(|i| Element::Free(vec![i])).collect();
        Ok(Self {
            kind: GroupKind::Free { rank },
            generators,
        })
    }

    pub fn klein() -> Self {
        Self {
            kind: GroupKind::Klein,
            generators: vec![Element::Klein(0, 1), Element::Klein(1, 0)],
        }
    }

    /// Replace the default generating set.
    pub fn with_generators(mut self, generators: Vec<Element>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidConstruction("empty generating set".into()));
        }
        if let Some(g) = generators.iter().find(|g| !self.contains(g)) {
            return Err(Error::NotInGroup(g.encode()));
        }
        self.generators = generators;
        Ok(self)
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn is_abelian(&self) -> bool {
        match self.kind {
            GroupKind::IntegerLattice { .. } | GroupKind::RationalSubgroup { .. } => true,
            GroupKind::Free { rank } => rank == 1,
            GroupKind::Klein => false,
        }
    }

    /// True for ℤ and the subgroups of ℚ.
    pub fn is_rational(&self) -> bool {
        matches!(
            self.kind,
            GroupKind::IntegerLattice { rank: 1 } | GroupKind::RationalSubgroup { .. }
        )
    }

    pub fn identity(&self) -> Element {
        match &self.kind {
            GroupKind::IntegerLattice { rank } => Element::Lattice(vec![0; *rank]),
            GroupKind::RationalSubgroup { .. } => Element::Rational(Rational::zero()),
            GroupKind::Free { .. } => Element::Free(Vec::new()),
            GroupKind::Klein => Element::Klein(0, 0),
        }
    }

    /// Embed a rational number, for ℤ and the subgroups of ℚ.
    pub fn rational_element(&self, r: Rational) -> Result<Element> {
        let e = match &self.kind {
            GroupKind::IntegerLattice { rank: 1 } => Element::Lattice(vec![*r.numer()]),
            GroupKind::RationalSubgroup { .. } => Element::Rational(r),
            _ => return Err(Error::GroupMismatch(format!("{self} is not a subgroup of Q"))),
        };
        if self.contains(&e) && (r.is_integer() || matches!(e, Element::Rational(_))) {
            Ok(e)
        } else {
            Err(Error::NotInGroup(r.to_string()))
        }
    }

    /// Whether `g` is a well-formed element of this group.
    pub fn contains(&self, g: &Element) -> bool {
        match (&self.kind, g) {
            (GroupKind::IntegerLattice { rank }, Element::Lattice(v)) => v.len() == *rank,
            (GroupKind::RationalSubgroup { primes }, Element::Rational(r)) => {
                self.denominator_allowed(*r.denom(), primes).is_ok()
            }
            (GroupKind::Free { rank }, Element::Free(w)) => {
                w.iter().all(|l| *l != 0 && l.unsigned_abs() as usize <= *rank)
                    && free_reduce(w.iter().copied()).len() == w.len()
            }
            (GroupKind::Klein, Element::Klein(..)) => true,
            _ => false,
        }
    }

    fn denominator_allowed(&self, q: i64, primes: &[u64]) -> std::result::Result<(), u64> {
        let mut q = q.unsigned_abs();
        for p in primes {
            while q % p == 0 {
                q /= p;
            }
        }
        if q == 1 {
            return Ok(());
        }
        // smallest offending prime
        let p = (2..).find(|d| q % d == 0).unwrap_or(q);
        Err(p)
    }

    /// Parse an element from its canonical text encoding.
    ///
    /// Grammars: lattice `"c1,...,cn"`; rational `"p/q"` in lowest terms (or
    /// an integer); free words with lowercase generators and uppercase
    /// inverses, `"1"` for the identity; Klein `"y^a x^b"`.
    pub fn decode(&self, text: &str) -> Result<Element> {
        match &self.kind {
            GroupKind::IntegerLattice { rank } => {
                let mut coords = Vec::with_capacity(*rank);
                let mut pos = 0;
                for part in text.split(',') {
                    let c = parse_int(part, pos)?;
                    coords.push(c);
                    pos += part.len() + 1;
                }
                if coords.len() != *rank {
                    return Err(parse_err(
                        text.len(),
                        format!("expected {rank} coordinates, found {}", coords.len()),
                    ));
                }
                Ok(Element::Lattice(coords))
            }
            GroupKind::RationalSubgroup { primes } => {
                let r = match text.split_once('/') {
                    None => Rational::from_integer(parse_int(text, 0)?),
                    Some((p, q)) => {
                        let num = parse_int(p, 0)?;
                        let qpos = p.len() + 1;
                        let den = parse_int(q, qpos)?;
                        if den < 1 {
                            return Err(parse_err(qpos, "denominator must be positive"));
                        }
                        let r = Rational::new(num, den);
                        if *r.denom() != den {
                            return Err(parse_err(qpos, "fraction is not in lowest terms"));
                        }
                        r
                    }
                };
                if let Err(prime) = self.denominator_allowed(*r.denom(), primes) {
                    return Err(Error::DisallowedPrime {
                        prime,
                        group: self.to_string(),
                    });
                }
                Ok(Element::Rational(r))
            }
            GroupKind::Free { rank } => {
                if text == "1" || text.is_empty() {
                    return Ok(Element::Free(Vec::new()));
                }
                let mut letters = Vec::with_capacity(text.len());
                for (i, ch) in text.chars().enumerate() {
                    if !ch.is_ascii_alphabetic() {
                        return Err(parse_err(i, format!("unexpected character {ch:?}")));
                    }
                    let idx = (ch.to_ascii_lowercase() as u8 - b'a') as usize + 1;
                    if idx > *rank {
                        return Err(parse_err(i, format!("generator {ch} exceeds rank {rank}")));
                    }
                    let l = idx as i32;
                    letters.push(if ch.is_ascii_uppercase() { -l } else { l });
                }
                let reduced = free_reduce(letters.iter().copied());
                if reduced.len() != letters.len() {
                    return Err(parse_err(0, "word is not freely reduced"));
                }
                Ok(Element::Free(reduced))
            }
            GroupKind::Klein => {
                let rest = text
                    .strip_prefix("y^")
                    .ok_or_else(|| parse_err(0, "expected \"y^\""))?;
                let (a, b) = rest
                    .split_once(" x^")
                    .ok_or_else(|| parse_err(2, "expected \" x^\""))?;
                let a = parse_int(a, 2)?;
                let b = parse_int(b, 2 + rest.find(" x^").unwrap_or(0) + 3)?;
                Ok(Element::Klein(a, b))
            }
        }
    }

    /// Decode and check membership; shared by every JSON reader.
    pub fn decode_all<S: AsRef<str>>(&self, texts: &[S]) -> Result<Vec<Element>> {
        texts.iter().map(|t| self.decode(t.as_ref())).collect()
    }
}

fn parse_int(s: &str, position: usize) -> Result<i64> {
    let t = s.trim();
    if t.is_empty() {
        return Err(parse_err(position, "expected an integer"));
    }
    let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
    if let Some(i) = digits.find(|c: char| !c.is_ascii_digit()) {
        return Err(parse_err(
            position + (t.len() - digits.len()) + i,
            format!("invalid integer {t:?}"),
        ));
    }
    t.parse::<i64>()
        .map_err(|e| parse_err(position, format!("invalid integer {t:?}: {e}")))
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GroupKind::IntegerLattice { rank } => write!(f, "zn:{rank}"),
            GroupKind::RationalSubgroup { primes } => {
                let ps: Vec<String> = primes.iter().map(u64::to_string).collect();
                write!(f, "q-sub:{}", ps.join(","))
            }
            GroupKind::Free { rank } => write!(f, "free:{rank}"),
            GroupKind::Klein => f.write_str("klein"),
        }
    }
}

/// Group spec strings: `"zn:N"`, `"q-sub:p1[,p2...]"`, `"free:K"`, `"klein"`.
impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "klein" {
            return Ok(Self::klein());
        }
        let (head, tail) = s
            .split_once(':')
            .ok_or_else(|| parse_err(0, format!("unknown group spec {s:?}")))?;
        let at = head.len() + 1;
        let count = |t: &str| -> Result<usize> {
            t.parse::<usize>()
                .map_err(|_| parse_err(at, format!("expected a positive integer, found {t:?}")))
        };
        match head {
            "zn" => Self::integer_lattice(count(tail)?),
            "free" => Self::free(count(tail)?),
            "q-sub" => {
                let primes = tail
                    .split(',')
                    .map(|p| {
                        p.trim()
                            .parse::<u64>()
                            .map_err(|_| parse_err(at, format!("expected a prime, found {p:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::rational_subgroup(&primes)
            }
            _ => Err(parse_err(0, format!("unknown group kind {head:?}"))),
        }
    }
}
