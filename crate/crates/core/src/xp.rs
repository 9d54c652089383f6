//! Depth-bounded branching: from the current coloring try every single proper
//! recoloring, recursing up to the remaining budget. Polynomial for every
//! fixed budget.
//!
//! The depth-limited recursion is wrapped in iterative deepening over
//! `0..=ell`, so the first witness found is a shortest one.

use std::collections::HashMap;
use std::time::Instant;

use crate::error::SearchError;
use crate::graph::{Color, ColorLists, ColorSet, Graph, RecolorSequence, RecolorStep};

#[derive(Clone, Copy, Debug, Default)]
pub struct XpOptions {
    /// Skip colorings already expanded in the current round with at least
    /// as much remaining depth. Off by default.
    pub prune_visited: bool,
    /// Give up after generating this many colorings in total.
    pub step_budget: Option<u64>,
    pub deadline: Option<Instant>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XpResult {
    pub witness: Option<RecolorSequence>,
    /// Colorings generated over all rounds.
    pub generated: u64,
    /// Colorings generated per deepening round, the start coloring included;
    /// round `d` searches depth `d`.
    pub rounds: Vec<u64>,
}

/// `sum over d <= ell of (k n)^d`, saturating.
pub fn generated_bound(n: usize, k: u32, ell: usize) -> u64 {
    let base = (n as u64).saturating_mul(u64::from(k));
    let mut term = 1u64;
    let mut total = 0u64;
    for _ in 0..=ell {
        total = total.saturating_add(term);
        term = term.saturating_mul(base);
    }
    total
}

struct Search<'a> {
    graph: &'a Graph,
    lists: &'a ColorLists,
    beta: &'a [Color],
    opts: &'a XpOptions,
    gamma: Vec<Color>,
    mismatches: usize,
    path: Vec<RecolorStep>,
    generated: u64,
    total_before: u64,
    visited: HashMap<Vec<Color>, usize>,
}

impl Search<'_> {
    fn set(&mut self, v: usize, c: Color) {
        let was = self.gamma[v] != self.beta[v];
        self.gamma[v] = c;
        let is = c != self.beta[v];
        match (was, is) {
            (true, false) => self.mismatches -= 1,
            (false, true) => self.mismatches += 1,
            _ => {}
        }
    }

    fn charge(&mut self) -> Result<(), SearchError> {
        self.generated += 1;
        let total = self.total_before + self.generated;
        if let Some(cap) = self.opts.step_budget {
            if total > cap {
                return Err(SearchError::BudgetExhausted { explored: total });
            }
        }
        if total.is_multiple_of(4096) {
            if let Some(deadline) = self.opts.deadline {
                if Instant::now() >= deadline {
                    return Err(SearchError::Deadline { explored: total });
                }
            }
        }
        Ok(())
    }

    fn descend(&mut self, remaining: usize) -> Result<bool, SearchError> {
        if self.mismatches == 0 {
            return Ok(true);
        }
        if remaining == 0 {
            return Ok(false);
        }
        if self.opts.prune_visited {
            match self.visited.get(&self.gamma) {
                Some(&seen) if seen >= remaining => return Ok(false),
                _ => {
                    self.visited.insert(self.gamma.clone(), remaining);
                }
            }
        }
        for v in 0..self.graph.n() {
            let blocked: ColorSet = self
                .graph
                .neighbors(v)
                .iter()
                .map(|&w| self.gamma[w])
                .collect();
            let mut options = self.lists.get(v).difference(blocked);
            let old = self.gamma[v];
            options.remove(old);
            for c in options {
                self.charge()?;
                self.set(v, c);
                self.path.push(RecolorStep::new(v, c));
                if self.descend(remaining - 1)? {
                    return Ok(true);
                }
                self.path.pop();
                self.set(v, old);
            }
        }
        Ok(false)
    }
}

/// Returns a shortest list-recoloring sequence of length at most `ell`, or
/// `None` when no such sequence exists. Branch order is vertex-ascending,
/// then color-ascending.
pub fn solve_xp(
    graph: &Graph,
    lists: &ColorLists,
    alpha: &[Color],
    beta: &[Color],
    ell: usize,
    opts: &XpOptions,
) -> Result<XpResult, SearchError> {
    assert_eq!(alpha.len(), graph.n(), "start coloring length");
    assert_eq!(beta.len(), graph.n(), "target coloring length");
    let mismatches = (0..graph.n()).filter(|&v| alpha[v] != beta[v]).count();
    let mut search = Search {
        graph,
        lists,
        beta,
        opts,
        gamma: alpha.to_vec(),
        mismatches,
        path: Vec::new(),
        generated: 0,
        total_before: 0,
        visited: HashMap::new(),
    };
    let mut rounds = Vec::new();
    for depth in 0..=ell {
        search.generated = 0;
        search.visited.clear();
        search.charge()?;
        let found = search.descend(depth)?;
        rounds.push(search.generated);
        search.total_before += search.generated;
        if found {
            return Ok(XpResult {
                witness: Some(RecolorSequence::from_steps(std::mem::take(
                    &mut search.path,
                ))),
                generated: search.total_before,
                rounds,
            });
        }
    }
    Ok(XpResult {
        witness: None,
        generated: search.total_before,
        rounds,
    })
}
