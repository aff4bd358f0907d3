//! The Magnus ordering of a free group.
//!
//! A word is sent to the power series obtained by substituting
//! `aᵢ ↦ 1 + Xᵢ` and `aᵢ⁻¹ ↦ 1 - Xᵢ + Xᵢ² - ...` in non-commuting variables.
//! A non-trivial word is positive when the coefficient of the
//! lexicographically least monomial in the lowest non-vanishing degree is
//! positive. This is a bi-ordering, so its positive cone is in particular a
//! left-order cone.

use std::cmp::Ordering;

/// Homogeneous components of a truncated series; component `d` is indexed by
/// the base-`rank` number spelled by the monomial, first variable most
/// significant.
struct Truncated {
    rank: usize,
    components: Vec<Vec<i128>>,
}

impl Truncated {
    fn one(rank: usize, degree: usize) -> Self {
        let components = (0..=degree)
            .map(|d| {
                let mut c = vec![0; rank.pow(d as u32)];
                if d == 0 {
                    c[0] = 1;
                }
                c
            })
            .collect();
        Self { rank, components }
    }

    fn degree(&self) -> usize {
        self.components.len() - 1
    }

    /// Right-multiply by the image of one letter.
    fn mul_letter(&mut self, letter: i32) {
        let var = (letter.unsigned_abs() - 1) as usize;
        let step: i128 = if letter > 0 { 1 } else { -1 };
        let top = self.degree();
        let mut next: Vec<Vec<i128>> = self.components.iter().map(|c| vec![0; c.len()]).collect();
        for d in 0..=top {
            for (idx, &c) in self.components[d].iter().enumerate() {
                if c == 0 {
                    continue;
                }
                // X_var^j appended j times; only j ≤ 1 for a generator.
                let mut tail = 0usize;
                let mut coef = 1i128;
                let mut j = 0;
                while d + j <= top {
                    let target = idx * self.rank.pow(j as u32) + tail;
                    next[d + j][target] += c * coef;
                    if letter > 0 && j == 1 {
                        break;
                    }
                    j += 1;
                    tail = tail * self.rank + var;
                    coef *= step;
                }
            }
        }
        self.components = next;
    }
}

/// Sign of `μ(w) - 1` in the Magnus order; `Equal` only for the empty word.
pub(crate) fn magnus_sign(word: &[i32], rank: usize) -> Ordering {
    if word.is_empty() {
        return Ordering::Equal;
    }
    // Degree one is the abelianization.
    let mut sums = vec![0i64; rank];
    for l in word {
        sums[(l.unsigned_abs() - 1) as usize] += l.signum() as i64;
    }
    if let Some(s) = sums.iter().find(|s| **s != 0) {
        return s.cmp(&0);
    }
    let mut degree = 2;
    loop {
        let mut series = Truncated::one(rank, degree);
        for l in word {
            series.mul_letter(*l);
        }
        if let Some(c) = series.components[degree].iter().find(|c| **c != 0) {
            return c.cmp(&0);
        }
        degree += 1;
    }
}
