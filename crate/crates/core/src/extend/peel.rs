use std::collections::HashSet;

use super::problem::ExtensionProblem;
use crate::error::{Error, Result};
use crate::group::Element;
use crate::order::OrderTable;

/// Removes extreme points layer by layer. Each layer is an inverse pair
/// `{a, a⁻¹}` (or the identity alone), outermost first.
pub(crate) fn peel_layers(p: &ExtensionProblem) -> Result<Vec<Vec<usize>>> {
    let els = p.window.elements();
    let mut remaining: Vec<usize> = (0..els.len()).collect();
    let mut layers = Vec::new();
    while !remaining.is_empty() {
        let members: HashSet<&Element> = remaining.iter().map(|&i| &els[i]).collect();
        // canonically least extreme point; indices follow canonical order
        let a = remaining.iter().copied().find(|&i| {
            let a = &els[i];
            remaining
                .iter()
                .filter(|&&j| j != i)
                .all(|&j| !members.contains(&a.mul(&els[j].inverse()).mul(a)))
        });
        let Some(a) = a else {
            return Err(Error::NoExtremePoint(
                remaining.iter().map(|&i| els[i].encode()).collect(),
            ));
        };
        let inv = els[a].inverse();
        let layer = if els[a].is_identity() {
            vec![a]
        } else if inv == els[a] {
            return Err(Error::Torsion(els[a].encode()));
        } else {
            let b = p
                .window
                .index_of(&inv)
                .ok_or_else(|| Error::NotSymmetric(els[a].encode()))?;
            vec![a, b]
        };
        remaining.retain(|i| !layer.contains(i));
        layers.push(layer);
    }
    Ok(layers)
}

/// Solves an extension problem by peeling extreme points.
///
/// Repeatedly takes the canonically least extreme point `a` of what is left,
/// puts `a` and `a⁻¹` above everything still remaining, and orients `a`
/// against `a⁻¹` as `R` prescribes, leaving them incomparable when `R`
/// contains neither. The result satisfies (i) and (ii), and is total
/// exactly when `R` covers the window.
pub fn peel_solve(p: &ExtensionProblem) -> Result<OrderTable> {
    if p.require_total {
        if let Some(g) = p.r.first_uncovered(&p.window) {
            return Err(Error::Precondition(format!(
                "a total order needs R to contain {g} or its inverse"
            )));
        }
    }
    let layers = peel_layers(p)?;
    let els = p.window.elements();
    let n = els.len();
    let mut less = vec![false; n * n];
    for (k, layer) in layers.iter().enumerate() {
        for &a in layer {
            for below in &layers[k + 1..] {
                for &s in below {
                    less[s * n + a] = true;
                }
            }
        }
        if let [a, b] = layer[..] {
            if p.r.contains(&els[a]) {
                less[a * n + b] = true;
            } else if p.r.contains(&els[b]) {
                less[b * n + a] = true;
            }
        }
    }
    Ok(OrderTable::from_matrix(p.window.clone(), less))
}
