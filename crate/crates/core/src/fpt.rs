//! Used-color-list guessing, fixed-parameter tractable in `k + ell`.
//!
//! [`recolor`] first guesses, for every vertex that must move, the exact set
//! of colors it will hold during the sequence. A vertex is forced to move if
//! it differs between `alpha` and `beta`, or if its start color appears in
//! the guessed set of a neighbor that moves. Guessing stops once no forced
//! vertex is left unguessed; the total slack `sum (|L(v)| - 1)` of the
//! guessed sets is bounded by the budget, which keeps the guessing tree
//! small. Each complete guess is then checked by [`list_recolor`], a plain
//! depth-bounded search over list recolorings of the moving vertices only.
//!
//! Witnesses are threaded out of the list search and lifted back to the
//! full graph, so every YES answer is independently checkable.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use crate::error::SearchError;
use crate::graph::{
    diff_set, Color, ColorLists, ColorSet, Graph, RecolorSequence, RecolorStep, Vertex,
};

/// Upper bound on the size of a guessed used-color set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SubsetBound {
    /// `2 <= |U| <= ell + 1`. A vertex recolored `ell` times can hold
    /// `ell + 1` distinct colors.
    #[default]
    Corrected,
    /// `2 <= |U| <= ell`, as originally stated. Incomplete: a single vertex
    /// with `ell = 1` is wrongly answered NO. Kept to document the gap.
    Literal,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct FptOptions {
    pub subset_bound: SubsetBound,
    pub deadline: Option<Instant>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FptStats {
    /// Calls of the guessing recursion, pruned ones included.
    pub recurse_calls: u64,
    /// Deepest guessing call; the root has depth 0.
    pub max_depth: usize,
    pub list_recolor_calls: u64,
    /// Recursive calls made inside all list searches.
    pub list_recolor_nodes: u64,
    /// Largest slack `sum over B of (|L(v)| - 1)` handed to a list search.
    pub max_base_slack: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FptResult {
    pub witness: Option<RecolorSequence>,
    pub stats: FptStats,
}

/// `2^(k (ell + 1))`, saturating.
pub fn recurse_call_bound(k: u32, ell: usize) -> u64 {
    let exp = u64::from(k).saturating_mul(ell as u64 + 1);
    if exp >= 64 {
        u64::MAX
    } else {
        1u64 << exp
    }
}

struct ListSearch<'a> {
    graph: &'a Graph,
    lists: &'a ColorLists,
    beta: &'a [Color],
    deadline: Option<Instant>,
    gamma: Vec<Color>,
    path: Vec<RecolorStep>,
    nodes: u64,
}

impl ListSearch<'_> {
    fn recurse(&mut self, budget: usize) -> Result<bool, SearchError> {
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    return Err(SearchError::Deadline {
                        explored: self.nodes,
                    });
                }
            }
        }
        if self.gamma == self.beta {
            return Ok(true);
        }
        if budget == 0 {
            return Ok(false);
        }
        for x in 0..self.graph.n() {
            let blocked: ColorSet = self
                .graph
                .neighbors(x)
                .iter()
                .map(|&w| self.gamma[w])
                .collect();
            let old = self.gamma[x];
            let mut options = self.lists.get(x).difference(blocked);
            options.remove(old);
            for c in options {
                self.gamma[x] = c;
                self.path.push(RecolorStep::new(x, c));
                if self.recurse(budget - 1)? {
                    return Ok(true);
                }
                self.path.pop();
            }
            self.gamma[x] = old;
        }
        Ok(false)
    }
}

fn list_search(
    graph: &Graph,
    lists: &ColorLists,
    alpha: &[Color],
    beta: &[Color],
    ell: usize,
    deadline: Option<Instant>,
) -> Result<(Option<RecolorSequence>, u64), SearchError> {
    assert_eq!(alpha.len(), graph.n(), "start coloring length");
    assert_eq!(beta.len(), graph.n(), "target coloring length");
    let mut search = ListSearch {
        graph,
        lists,
        beta,
        deadline,
        gamma: alpha.to_vec(),
        path: Vec::new(),
        nodes: 0,
    };
    let found = search.recurse(ell)?;
    let witness = found.then(|| RecolorSequence::from_steps(search.path));
    Ok((witness, search.nodes))
}

/// Depth-bounded search over list recolorings: from the current coloring,
/// every proper recoloring of one vertex to another color of its list.
/// Returns a sequence of at most `ell` steps, or `None` if there is none.
/// The returned sequence is not necessarily shortest.
pub fn list_recolor(
    graph: &Graph,
    lists: &ColorLists,
    alpha: &[Color],
    beta: &[Color],
    ell: usize,
) -> Option<RecolorSequence> {
    list_search(graph, lists, alpha, beta, ell, None)
        .expect("no deadline")
        .0
}

/// Like [`list_recolor`], also reporting the number of recursive calls.
pub fn list_recolor_counted(
    graph: &Graph,
    lists: &ColorLists,
    alpha: &[Color],
    beta: &[Color],
    ell: usize,
) -> (Option<RecolorSequence>, u64) {
    list_search(graph, lists, alpha, beta, ell, None).expect("no deadline")
}

/// The guessing state: `pending` vertices must move but have no guessed
/// color set yet; `guessed` vertices (in guessing order) do.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuessState {
    pub pending: BTreeSet<Vertex>,
    pub guessed: Vec<Vertex>,
    pub lists: BTreeMap<Vertex, ColorSet>,
}

impl GuessState {
    pub fn slack(&self) -> usize {
        self.lists.values().map(|l| l.len() - 1).sum()
    }

    /// Checks the state invariants: pending and guessed are disjoint; a
    /// vertex outside `guessed` is pending iff it differs between `alpha` and
    /// `beta` or its start color lies in the guessed set of a guessed
    /// neighbor; every guessed set contains both end colors and has size at
    /// least two.
    pub fn check(&self, graph: &Graph, alpha: &[Color], beta: &[Color]) -> Result<(), String> {
        let in_b: BTreeSet<Vertex> = self.guessed.iter().copied().collect();
        if in_b.len() != self.guessed.len() || in_b.len() != self.lists.len() {
            return Err("guessed vertices and lists disagree".into());
        }
        if let Some(v) = self.pending.iter().find(|v| in_b.contains(v)) {
            return Err(format!("vertex {v} both pending and guessed"));
        }
        for u in (0..graph.n()).filter(|u| !in_b.contains(u)) {
            let forced = alpha[u] != beta[u]
                || graph
                    .neighbors(u)
                    .iter()
                    .any(|w| self.lists.get(w).is_some_and(|l| l.contains(alpha[u])));
            if forced != self.pending.contains(&u) {
                return Err(format!(
                    "vertex {u}: forced = {forced}, pending = {}",
                    !forced
                ));
            }
        }
        for (&v, &l) in &self.lists {
            if !l.contains(alpha[v]) || !l.contains(beta[v]) || l.len() < 2 {
                return Err(format!("vertex {v}: bad guessed set {l:?}"));
            }
        }
        Ok(())
    }
}

/// Every `U` with `required <= U <= universe` and `lo <= |U| <= hi`, by
/// size, then lexicographically.
fn candidate_sets(universe: ColorSet, required: ColorSet, lo: usize, hi: usize) -> Vec<ColorSet> {
    let others: Vec<Color> = universe.difference(required).iter().collect();
    let base = required.len();
    let mut out = Vec::new();
    for size in lo.max(base)..=hi.min(base + others.len()) {
        let extra = size - base;
        let mut idx: Vec<usize> = (0..extra).collect();
        loop {
            let mut u = required;
            for &i in &idx {
                u.insert(others[i]);
            }
            out.push(u);
            // next combination in lexicographic order
            let Some(pos) = (0..extra)
                .rev()
                .find(|&p| idx[p] < others.len() - extra + p)
            else {
                break;
            };
            idx[pos] += 1;
            for p in pos + 1..extra {
                idx[p] = idx[p - 1] + 1;
            }
        }
    }
    out
}

struct Guesser<'a> {
    graph: &'a Graph,
    k: u32,
    lists: Option<&'a ColorLists>,
    ell: usize,
    alpha: &'a [Color],
    beta: &'a [Color],
    opts: &'a FptOptions,
    stats: FptStats,
}

impl Guesser<'_> {
    fn recurse(
        &mut self,
        state: &GuessState,
        depth: usize,
    ) -> Result<Option<RecolorSequence>, SearchError> {
        self.stats.recurse_calls += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        if let Some(deadline) = self.opts.deadline {
            if Instant::now() >= deadline {
                return Err(SearchError::Deadline {
                    explored: self.stats.recurse_calls,
                });
            }
        }
        if cfg!(debug_assertions) {
            if let Err(e) = state.check(self.graph, self.alpha, self.beta) {
                panic!("guess state invariant broken: {e}");
            }
        }
        let slack = state.slack();
        if slack > self.ell {
            return Ok(None);
        }
        let Some(&v) = state.pending.first() else {
            return self.base_case(state, slack);
        };
        let required: ColorSet = [self.alpha[v], self.beta[v]].into_iter().collect();
        let hi = match self.opts.subset_bound {
            SubsetBound::Corrected => self.ell + 1,
            SubsetBound::Literal => self.ell,
        };
        let universe = self.lists.map_or(ColorSet::full(self.k), |l| l.get(v));
        for u_set in candidate_sets(universe, required, 2, hi) {
            let mut next = state.clone();
            next.pending.remove(&v);
            next.guessed.push(v);
            next.lists.insert(v, u_set);
            for &u in self.graph.neighbors(v) {
                if !state.pending.contains(&u)
                    && !state.lists.contains_key(&u)
                    && u_set.contains(self.alpha[u])
                {
                    next.pending.insert(u);
                }
            }
            if let Some(w) = self.recurse(&next, depth + 1)? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }

    fn base_case(
        &mut self,
        state: &GuessState,
        slack: usize,
    ) -> Result<Option<RecolorSequence>, SearchError> {
        debug_assert!(slack <= self.ell);
        self.stats.list_recolor_calls += 1;
        self.stats.max_base_slack = self.stats.max_base_slack.max(slack);
        let mut moving = state.guessed.clone();
        moving.sort_unstable();
        let sub = self.graph.induced_subgraph(&moving);
        let lists = ColorLists::new(self.k, moving.iter().map(|v| state.lists[v]).collect())
            .expect("guessed sets are nonempty subsets of 1..=k");
        let alpha: Vec<Color> = moving.iter().map(|&v| self.alpha[v]).collect();
        let beta: Vec<Color> = moving.iter().map(|&v| self.beta[v]).collect();
        let (found, nodes) =
            list_search(&sub, &lists, &alpha, &beta, self.ell, self.opts.deadline)?;
        self.stats.list_recolor_nodes += nodes;
        Ok(found.map(|w| w.relabel(&moving)))
    }
}

/// Decides whether `alpha` can be recolored into `beta` within `ell` steps
/// using colors `1..=k`, returning a witness if so.
pub fn recolor(
    graph: &Graph,
    k: u32,
    ell: usize,
    alpha: &[Color],
    beta: &[Color],
    opts: &FptOptions,
) -> Result<FptResult, SearchError> {
    run(graph, k, None, ell, alpha, beta, opts)
}

/// [`recolor`] for list instances: guessed color sets are drawn from each
/// vertex's list.
pub fn recolor_lists(
    graph: &Graph,
    lists: &ColorLists,
    ell: usize,
    alpha: &[Color],
    beta: &[Color],
    opts: &FptOptions,
) -> Result<FptResult, SearchError> {
    assert_eq!(lists.len(), graph.n(), "list count");
    run(graph, lists.k(), Some(lists), ell, alpha, beta, opts)
}

fn run(
    graph: &Graph,
    k: u32,
    lists: Option<&ColorLists>,
    ell: usize,
    alpha: &[Color],
    beta: &[Color],
    opts: &FptOptions,
) -> Result<FptResult, SearchError> {
    let diff = diff_set(alpha, beta);
    let mut stats = FptStats::default();
    if diff.len() > ell {
        return Ok(FptResult {
            witness: None,
            stats,
        });
    }
    if diff.is_empty() {
        return Ok(FptResult {
            witness: Some(RecolorSequence::new()),
            stats,
        });
    }
    let mut guesser = Guesser {
        graph,
        k,
        lists,
        ell,
        alpha,
        beta,
        opts,
        stats,
    };
    let root = GuessState {
        pending: diff.into_iter().collect(),
        guessed: Vec::new(),
        lists: BTreeMap::new(),
    };
    let witness = guesser.recurse(&root, 0)?;
    stats = guesser.stats;
    Ok(FptResult { witness, stats })
}
