use serde::{Serialize, Serializer};

use super::problem::ExtensionProblem;
use crate::error::{Error, Result};
use crate::order::OrderTable;

/// Largest window [`backtrack_solve`] accepts by default.
pub const DEFAULT_BACKTRACK_CAP: usize = 12;

/// Result of an exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Sat { table: OrderTable, nodes: u64 },
    /// Every branch was refuted after visiting `nodes` search nodes.
    Unsat { nodes: u64 },
}

impl SearchOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, SearchOutcome::Sat { .. })
    }

    pub fn table(&self) -> Option<&OrderTable> {
        match self {
            SearchOutcome::Sat { table, .. } => Some(table),
            SearchOutcome::Unsat { .. } => None,
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            SearchOutcome::Sat { nodes, .. } | SearchOutcome::Unsat { nodes } => *nodes,
        }
    }
}

/// A solution serializes as its table, a refutation as
/// `{"nodes": count, "unsat": true}`.
impl Serialize for SearchOutcome {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SearchOutcome::Sat { table, .. } => table.serialize(s),
            SearchOutcome::Unsat { nodes } => {
                serde_json::json!({ "nodes": nodes, "unsat": true }).serialize(s)
            }
        }
    }
}

struct Conflict;

/// A transitively closed partial assignment.
#[derive(Clone)]
struct State {
    n: usize,
    less: Vec<bool>,
    /// Pairs fixed as incomparable.
    apart: Vec<bool>,
}

impl State {
    fn lt(&self, i: usize, j: usize) -> bool {
        self.less[i * self.n + j]
    }

    fn decided(&self, i: usize, j: usize) -> bool {
        self.lt(i, j) || self.lt(j, i) || self.apart[i * self.n + j]
    }

    /// Literal `i ≺ j`: `Some(true)` if it holds, `Some(false)` if it can
    /// no longer hold.
    fn literal(&self, i: usize, j: usize) -> Option<bool> {
        if self.lt(i, j) {
            Some(true)
        } else if i == j || self.lt(j, i) || self.apart[i * self.n + j] {
            Some(false)
        } else {
            None
        }
    }

    fn assert_less(&mut self, i: usize, j: usize) -> Result<(), Conflict> {
        if self.lt(i, j) {
            return Ok(());
        }
        if self.literal(i, j) == Some(false) {
            return Err(Conflict);
        }
        let n = self.n;
        let below: Vec<usize> = (0..n).filter(|&a| a == i || self.lt(a, i)).collect();
        let above: Vec<usize> = (0..n).filter(|&b| b == j || self.lt(j, b)).collect();
        for &a in &below {
            for &b in &above {
                if a == b || self.lt(b, a) || self.apart[a * n + b] {
                    return Err(Conflict);
                }
                self.less[a * n + b] = true;
            }
        }
        Ok(())
    }

    fn separate(&mut self, i: usize, j: usize) -> Result<(), Conflict> {
        if self.lt(i, j) || self.lt(j, i) {
            return Err(Conflict);
        }
        self.apart[i * self.n + j] = true;
        self.apart[j * self.n + i] = true;
        Ok(())
    }

    /// Unit propagation of the clauses `g ≺ u ∨ g ≺ v`.
    fn propagate(&mut self, clauses: &[(usize, usize, usize)]) -> Result<(), Conflict> {
        loop {
            let mut changed = false;
            for &(g, u, v) in clauses {
                match (self.literal(g, u), self.literal(g, v)) {
                    (Some(true), _) | (_, Some(true)) => {}
                    (Some(false), Some(false)) => return Err(Conflict),
                    (Some(false), None) => {
                        self.assert_less(g, v)?;
                        changed = true;
                    }
                    (None, Some(false)) => {
                        self.assert_less(g, u)?;
                        changed = true;
                    }
                    (None, None) => {}
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }
}

struct Search {
    clauses: Vec<(usize, usize, usize)>,
    pairs: Vec<(usize, usize)>,
    allow_incomparable: bool,
    nodes: u64,
    budget: Option<u64>,
}

impl Search {
    fn run(&mut self, state: State, from: usize) -> Result<Option<State>> {
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            return Err(Error::BudgetExceeded {
                budget: self.budget.unwrap_or_default(),
            });
        }
        let Some(k) = (from..self.pairs.len()).find(|&k| {
            let (i, j) = self.pairs[k];
            !state.decided(i, j)
        }) else {
            return Ok(Some(state));
        };
        let (i, j) = self.pairs[k];
        let branches = if self.allow_incomparable { 3 } else { 2 };
        for branch in 0..branches {
            let mut next = state.clone();
            let decided = match branch {
                0 => next.assert_less(i, j),
                1 => next.assert_less(j, i),
                _ => next.separate(i, j),
            };
            if decided.is_err() || next.propagate(&self.clauses).is_err() {
                continue;
            }
            if let Some(found) = self.run(next, k + 1)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }
}

/// Exhaustive search over the orientation of every pair of the window, with
/// transitive closure and unit propagation of condition (i). Pairs are
/// decided in canonical order, trying `≺`, then `≻`, then (for partial
/// problems) incomparable. `budget` caps the number of search nodes.
pub fn backtrack_solve(p: &ExtensionProblem, cap: usize, budget: Option<u64>) -> Result<SearchOutcome> {
    let n = p.window.len();
    if n > cap {
        return Err(Error::CapExceeded { size: n, cap });
    }
    let mut state = State {
        n,
        less: vec![false; n * n],
        apart: vec![false; n * n],
    };
    let clauses = p.condition_i_triples();
    // condition (ii) is fixed before any branching
    let mut root = || -> Result<(), Conflict> {
        for (g, inv) in p.window.inverse_pairs() {
            let gi = p.window.index_of(&g).ok_or(Conflict)?;
            let ii = p.window.index_of(&inv).ok_or(Conflict)?;
            if p.r.contains(&g) {
                state.assert_less(gi, ii)?;
            } else if p.r.contains(&inv) {
                state.assert_less(ii, gi)?;
            } else if p.require_total {
                return Err(Conflict);
            } else {
                state.separate(gi, ii)?;
            }
        }
        state.propagate(&clauses)
    };
    if root().is_err() {
        return Ok(SearchOutcome::Unsat { nodes: 1 });
    }
    let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut search = Search {
        clauses,
        pairs,
        allow_incomparable: !p.require_total,
        nodes: 0,
        budget,
    };
    let found = search.run(state, 0)?;
    Ok(match found {
        Some(s) => SearchOutcome::Sat {
            table: OrderTable::from_matrix(p.window.clone(), s.less),
            nodes: search.nodes,
        },
        None => SearchOutcome::Unsat { nodes: search.nodes },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extend::{validate_solution, RSet};
    use crate::group::{GroupSpec, Window};

    fn problem(r: &[&str], total: bool) -> ExtensionProblem {
        let g = GroupSpec::integers();
        ExtensionProblem::new(Window::ball(&g, 1, true), RSet::decode(&g, r).unwrap(), total).unwrap()
    }

    #[test]
    fn examples() {
        let p = problem(&["1"], true);
        let out = backtrack_solve(&p, DEFAULT_BACKTRACK_CAP, None).unwrap();
        assert!(validate_solution(out.table().unwrap(), &p).is_clean());

        let p = problem(&[], true);
        let out = backtrack_solve(&p, DEFAULT_BACKTRACK_CAP, None).unwrap();
        assert_eq!(out, SearchOutcome::Unsat { nodes: 1 });
        assert_eq!(serde_json::to_string(&out).unwrap(), r#"{"nodes":1,"unsat":true}"#);

        let p = problem(&[], false);
        let out = backtrack_solve(&p, DEFAULT_BACKTRACK_CAP, None).unwrap();
        assert!(validate_solution(out.table().unwrap(), &p).is_clean());
    }

    #[test]
    fn cap_and_budget() {
        let g = GroupSpec::integers();
        let p = ExtensionProblem::new(Window::ball(&g, 3, true), RSet::empty(g), false).unwrap();
        assert_eq!(
            backtrack_solve(&p, 5, None).unwrap_err(),
            Error::CapExceeded { size: 7, cap: 5 }
        );
        assert!(matches!(
            backtrack_solve(&p, 12, Some(1)),
            Err(Error::BudgetExceeded { budget: 1 })
        ));
    }

    /// Brute force over every relation on three points.
    #[test]
    fn agrees_with_enumeration_on_three_points() {
        let g = GroupSpec::integers();
        let w = Window::ball(&g, 1, true);
        for r in [vec![], vec!["1"], vec!["-1"]] {
            for total in [false, true] {
                let p = ExtensionProblem::new(w.clone(), RSet::decode(&g, &r).unwrap(), total).unwrap();
                let any = (0u32..1 << 9).any(|bits| {
                    let pairs = (0..9)
                        .filter(|b| bits >> b & 1 == 1)
                        .map(|b| (w.elements()[b / 3].clone(), w.elements()[b % 3].clone()));
                    validate_solution(&OrderTable::new(w.clone(), pairs).unwrap(), &p).is_clean()
                });
                let out = backtrack_solve(&p, DEFAULT_BACKTRACK_CAP, None).unwrap();
                assert_eq!(out.is_sat(), any, "R = {r:?}, total = {total}");
            }
        }
    }
}
