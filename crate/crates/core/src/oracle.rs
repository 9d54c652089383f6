//! Ground truth: breadth-first search over the color graph.
//!
//! States are list colorings, two states are adjacent when they differ on one
//! vertex. Neighbors are generated vertex-ascending, then color-ascending, so
//! witnesses are reproducible. No symmetry reduction or heuristics: this
//! module is the reference every other solver is checked against.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::time::Instant;

use crate::error::SearchError;
use crate::graph::{Color, ColorLists, ColorSet, Coloring, Graph, RecolorSequence, RecolorStep};

pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

/// A coloring packed into the smallest integer that holds `n * ceil(log2 k)`
/// bits, or the raw tuple when that does not fit in 128 bits.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ColorGraphKey {
    Word(u64),
    Wide(u128),
    Raw(Box<[Color]>),
}

#[derive(Clone, Copy, Debug)]
pub struct KeyCodec {
    n: usize,
    bits: u32,
}

impl KeyCodec {
    pub fn new(n: usize, k: u32) -> Self {
        let bits = if k <= 1 {
            0
        } else {
            32 - (k - 1).leading_zeros()
        };
        KeyCodec { n, bits }
    }

    pub fn bits_per_vertex(&self) -> u32 {
        self.bits
    }

    fn total_bits(&self) -> usize {
        self.n * self.bits as usize
    }

    pub fn encode(&self, gamma: &[Color]) -> ColorGraphKey {
        debug_assert_eq!(gamma.len(), self.n);
        let total = self.total_bits();
        if total > 128 {
            return ColorGraphKey::Raw(gamma.into());
        }
        let mut packed = 0u128;
        for (i, &c) in gamma.iter().enumerate() {
            packed |= u128::from(c - 1) << (i * self.bits as usize);
        }
        if total <= 64 {
            ColorGraphKey::Word(packed as u64)
        } else {
            ColorGraphKey::Wide(packed)
        }
    }

    pub fn decode(&self, key: &ColorGraphKey) -> Coloring {
        let packed = match key {
            ColorGraphKey::Raw(raw) => return Coloring::new(raw.to_vec()),
            ColorGraphKey::Word(w) => u128::from(*w),
            ColorGraphKey::Wide(w) => *w,
        };
        let mask = (1u128 << self.bits) - 1;
        let colors = (0..self.n)
            .map(|i| ((packed >> (i * self.bits as usize)) & mask) as Color + 1)
            .collect();
        Coloring::new(colors)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    /// Maximum number of distinct colorings discovered before giving up.
    pub node_cap: u64,
    pub deadline: Option<Instant>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            node_cap: DEFAULT_NODE_CAP,
            deadline: None,
        }
    }
}

impl OracleOptions {
    pub fn with_cap(node_cap: u64) -> Self {
        OracleOptions {
            node_cap,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    /// Length of a shortest sequence, `None` if the target is unreachable.
    pub distance: Option<usize>,
    pub witness: Option<RecolorSequence>,
    pub explored: u64,
}

struct Bfs {
    keys: Vec<ColorGraphKey>,
    parent: Vec<(u32, RecolorStep)>,
    found: Option<usize>,
}

impl Bfs {
    fn path_to(&self, mut idx: usize) -> RecolorSequence {
        let mut steps = Vec::new();
        while idx != 0 {
            let (p, step) = self.parent[idx];
            steps.push(step);
            idx = p as usize;
        }
        steps.reverse();
        RecolorSequence::from_steps(steps)
    }
}

/// Free recolorings of `gamma` in generation order.
fn for_each_move(
    graph: &Graph,
    lists: &ColorLists,
    gamma: &[Color],
    mut f: impl FnMut(RecolorStep),
) {
    for v in 0..graph.n() {
        let blocked: ColorSet = graph.neighbors(v).iter().map(|&w| gamma[w]).collect();
        let mut options = lists.get(v).difference(blocked);
        options.remove(gamma[v]);
        for c in options {
            f(RecolorStep::new(v, c));
        }
    }
}

fn bfs(
    graph: &Graph,
    lists: &ColorLists,
    start: &[Color],
    target: Option<&[Color]>,
    allowed: &dyn Fn(&[Color]) -> bool,
    opts: &OracleOptions,
) -> Result<Bfs, SearchError> {
    assert_eq!(start.len(), graph.n(), "start coloring length");
    assert_eq!(lists.len(), graph.n(), "list count");
    let codec = KeyCodec::new(graph.n(), lists.k());
    let mut out = Bfs {
        keys: vec![codec.encode(start)],
        parent: vec![(0, RecolorStep::new(0, 0))],
        found: None,
    };
    if target == Some(start) {
        out.found = Some(0);
        return Ok(out);
    }
    let target_key = target.map(|t| codec.encode(t));
    let mut index: HashMap<ColorGraphKey, u32> = HashMap::new();
    index.insert(out.keys[0].clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    let mut work = 0u64;
    while let Some(idx) = queue.pop_front() {
        work += 1;
        if work.is_multiple_of(4096) {
            if let Some(deadline) = opts.deadline {
                if Instant::now() >= deadline {
                    return Err(SearchError::Deadline {
                        explored: out.keys.len() as u64,
                    });
                }
            }
        }
        let mut gamma = codec.decode(&out.keys[idx]).into_vec();
        let mut moves = Vec::new();
        for_each_move(graph, lists, &gamma, |s| moves.push(s));
        for step in moves {
            let old = gamma[step.vertex];
            gamma[step.vertex] = step.color;
            if allowed(&gamma) {
                let key = codec.encode(&gamma);
                if !index.contains_key(&key) {
                    let new_idx = out.keys.len();
                    if new_idx as u64 >= opts.node_cap {
                        return Err(SearchError::BudgetExhausted {
                            explored: new_idx as u64,
                        });
                    }
                    let hit = target_key.as_ref() == Some(&key);
                    index.insert(key.clone(), new_idx as u32);
                    out.keys.push(key);
                    out.parent.push((idx as u32, step));
                    if hit {
                        out.found = Some(new_idx);
                        return Ok(out);
                    }
                    queue.push_back(new_idx);
                }
            }
            gamma[step.vertex] = old;
        }
    }
    Ok(out)
}

/// Shortest list-recoloring distance from `alpha` to `beta`, with a witness.
///
/// `alpha` and `beta` must be proper list colorings. Exceeding
/// `opts.node_cap` is reported as [`SearchError::BudgetExhausted`], never as
/// unreachable.
pub fn oracle_distance(
    graph: &Graph,
    lists: &ColorLists,
    alpha: &[Color],
    beta: &[Color],
    opts: &OracleOptions,
) -> Result<OracleResult, SearchError> {
    assert_eq!(beta.len(), graph.n(), "target coloring length");
    let search = bfs(graph, lists, alpha, Some(beta), &|_| true, opts)?;
    let witness = search.found.map(|idx| search.path_to(idx));
    Ok(OracleResult {
        distance: witness.as_ref().map(RecolorSequence::len),
        witness,
        explored: search.keys.len() as u64,
    })
}

/// Every list coloring reachable from `alpha`, including `alpha`.
pub fn reachable_set(
    graph: &Graph,
    lists: &ColorLists,
    alpha: &[Color],
    opts: &OracleOptions,
) -> Result<BTreeSet<ColorGraphKey>, SearchError> {
    let search = bfs(graph, lists, alpha, None, &|_| true, opts)?;
    Ok(search.keys.into_iter().collect())
}

/// Decodes keys produced by [`reachable_set`] for the same graph and lists.
pub fn decode_keys<'a>(
    graph: &Graph,
    lists: &ColorLists,
    keys: impl IntoIterator<Item = &'a ColorGraphKey>,
) -> Vec<Coloring> {
    let codec = KeyCodec::new(graph.n(), lists.k());
    keys.into_iter().map(|k| codec.decode(k)).collect()
}

/// True iff `beta` cannot be reached from `alpha` in the `k`-color graph once
/// every coloring satisfying `forbidden` is deleted.
pub fn separator_holds(
    graph: &Graph,
    k: u32,
    alpha: &[Color],
    beta: &[Color],
    forbidden: impl Fn(&[Color]) -> bool,
    opts: &OracleOptions,
) -> Result<bool, SearchError> {
    if forbidden(alpha) || forbidden(beta) {
        return Ok(true);
    }
    let lists = ColorLists::full(graph.n(), k).expect("valid color count");
    let search = bfs(graph, &lists, alpha, Some(beta), &|g| !forbidden(g), opts)?;
    Ok(search.found.is_none())
}

/// Number of distinct colors in an assignment.
pub fn distinct_colors(gamma: &[Color]) -> usize {
    gamma.iter().copied().collect::<ColorSet>().len()
}
