//! Graphs, colorings, color lists and recoloring sequences.
//!
//! Vertices are 0-indexed; colors are 1-indexed (`1..=k`). Every type here is
//! an immutable value: operations that "change" a coloring return a new one.

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;

use crate::error::CoreError;

pub type Vertex = usize;
pub type Color = u32;

/// Largest supported number of colors; color sets are 128-bit masks.
pub const MAX_COLORS: u32 = 128;

/// A subset of `1..=MAX_COLORS`, bit `c - 1` standing for color `c`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSet(u128);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    /// `{1, ..., k}`.
    pub fn full(k: u32) -> Self {
        assert!(k <= MAX_COLORS, "k = {k} exceeds MAX_COLORS");
        if k == MAX_COLORS {
            ColorSet(u128::MAX)
        } else {
            ColorSet((1u128 << k) - 1)
        }
    }

    pub fn singleton(c: Color) -> Self {
        let mut s = ColorSet::EMPTY;
        s.insert(c);
        s
    }

    pub fn from_bits(bits: u128) -> Self {
        ColorSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn contains(self, c: Color) -> bool {
        (1..=MAX_COLORS).contains(&c) && self.0 & (1u128 << (c - 1)) != 0
    }

    pub fn insert(&mut self, c: Color) {
        assert!((1..=MAX_COLORS).contains(&c), "color {c} out of range");
        self.0 |= 1u128 << (c - 1);
    }

    pub fn remove(&mut self, c: Color) {
        if (1..=MAX_COLORS).contains(&c) {
            self.0 &= !(1u128 << (c - 1));
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & other.0)
    }

    pub fn difference(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & !other.0)
    }

    pub fn min(self) -> Option<Color> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    pub fn max(self) -> Option<Color> {
        (self.0 != 0).then(|| 128 - self.0.leading_zeros())
    }

    /// Colors in ascending order.
    pub fn iter(self) -> ColorSetIter {
        ColorSetIter(self.0)
    }
}

pub struct ColorSetIter(u128);

impl Iterator for ColorSetIter {
    type Item = Color;

    fn next(&mut self) -> Option<Color> {
        if self.0 == 0 {
            return None;
        }
        let c = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(c + 1)
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        let mut s = ColorSet::EMPTY;
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl IntoIterator for ColorSet {
    type Item = Color;
    type IntoIter = ColorSetIter;

    fn into_iter(self) -> ColorSetIter {
        self.iter()
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and endpoints
    /// outside `0..n`. Edges are stored normalized (`u < v`) and sorted.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, CoreError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut normalized = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(CoreError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(CoreError::SelfLoop(u));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(CoreError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &normalized {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: normalized,
            adj,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// The subgraph induced by `vertices`; local vertex `i` is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Graph {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let edges = vertices.iter().enumerate().flat_map(|(i, &v)| {
            let local = &local;
            self.adj[v].iter().filter_map(move |&w| {
                (local[w] != usize::MAX && i < local[w]).then_some((i, local[w]))
            })
        });
        Graph::new(vertices.len(), edges.collect::<Vec<_>>()).expect("induced subgraph is simple")
    }
}

/// A total color assignment, one entry per vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring(Vec<Color>);

impl Coloring {
    pub fn new(colors: Vec<Color>) -> Self {
        Coloring(colors)
    }

    pub fn uniform(n: usize, c: Color) -> Self {
        Coloring(vec![c; n])
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Color> {
        self.0
    }

    /// Returns the coloring after `step`; rejects steps that do not change
    /// the color of their vertex.
    pub fn apply(&self, step: RecolorStep) -> Result<Coloring, CoreError> {
        let current = *self.0.get(step.vertex).ok_or(CoreError::VertexOutOfRange {
            vertex: step.vertex,
            n: self.0.len(),
        })?;
        if current == step.color {
            return Err(CoreError::NoOpStep {
                vertex: step.vertex,
                color: step.color,
            });
        }
        let mut next = self.0.clone();
        next[step.vertex] = step.color;
        Ok(Coloring(next))
    }

    pub fn restrict(&self, vertices: &[Vertex]) -> Coloring {
        Coloring(vertices.iter().map(|&v| self.0[v]).collect())
    }

    /// The set of colors used by this assignment.
    pub fn used_colors(&self) -> ColorSet {
        self.0.iter().copied().collect()
    }
}

impl Deref for Coloring {
    type Target = [Color];

    fn deref(&self) -> &[Color] {
        &self.0
    }
}

impl From<Vec<Color>> for Coloring {
    fn from(colors: Vec<Color>) -> Self {
        Coloring(colors)
    }
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coloring{:?}", self.0)
    }
}

/// Per-vertex color lists over `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorLists {
    k: u32,
    lists: Vec<ColorSet>,
}

impl ColorLists {
    pub fn new(k: u32, lists: Vec<ColorSet>) -> Result<Self, CoreError> {
        if k == 0 || k > MAX_COLORS {
            return Err(CoreError::UnsupportedColorCount(k));
        }
        let full = ColorSet::full(k);
        for (v, &list) in lists.iter().enumerate() {
            if list.is_empty() {
                return Err(CoreError::EmptyList(v));
            }
            if !list.is_subset(full) {
                let color = list.max().unwrap_or(0);
                return Err(CoreError::ColorOutOfRange { color, k });
            }
        }
        Ok(ColorLists { k, lists })
    }

    /// Every vertex may use every color of `1..=k`.
    pub fn full(n: usize, k: u32) -> Result<Self, CoreError> {
        if k == 0 || k > MAX_COLORS {
            return Err(CoreError::UnsupportedColorCount(k));
        }
        Ok(ColorLists {
            k,
            lists: vec![ColorSet::full(k); n],
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn get(&self, v: Vertex) -> ColorSet {
        self.lists[v]
    }

    pub fn as_slice(&self) -> &[ColorSet] {
        &self.lists
    }

    pub fn is_full(&self) -> bool {
        let full = ColorSet::full(self.k);
        self.lists.iter().all(|&l| l == full)
    }

    pub fn restrict(&self, vertices: &[Vertex]) -> ColorLists {
        ColorLists {
            k: self.k,
            lists: vertices.iter().map(|&v| self.lists[v]).collect(),
        }
    }

    /// `sum over v of (|L(v)| - 1)`: the number of distinct single-vertex
    /// recolorings available from any list coloring.
    pub fn slack(&self) -> usize {
        self.lists.iter().map(|l| l.len() - 1).sum()
    }
}

/// Recolor `vertex` to `color`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RecolorStep {
    pub vertex: Vertex,
    pub color: Color,
}

impl RecolorStep {
    pub fn new(vertex: Vertex, color: Color) -> Self {
        RecolorStep { vertex, color }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RecolorSequence {
    steps: Vec<RecolorStep>,
}

impl RecolorSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_steps(steps: Vec<RecolorStep>) -> Self {
        RecolorSequence { steps }
    }

    pub fn steps(&self) -> &[RecolorStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, step: RecolorStep) {
        self.steps.push(step);
    }

    pub fn extend(&mut self, other: &RecolorSequence) {
        self.steps.extend_from_slice(&other.steps);
    }

    pub fn iter(&self) -> std::slice::Iter<'_, RecolorStep> {
        self.steps.iter()
    }

    /// Renames every vertex through `map` (local id -> global id).
    pub fn relabel(&self, map: &[Vertex]) -> RecolorSequence {
        RecolorSequence {
            steps: self
                .steps
                .iter()
                .map(|s| RecolorStep::new(map[s.vertex], s.color))
                .collect(),
        }
    }

    /// The first `len` steps.
    pub fn prefix(&self, len: usize) -> RecolorSequence {
        RecolorSequence {
            steps: self.steps[..len].to_vec(),
        }
    }

    /// Every coloring visited, starting with `start`.
    pub fn trace(&self, start: &Coloring) -> Result<Vec<Coloring>, CoreError> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(start.clone());
        for &step in &self.steps {
            let next = out.last().expect("nonempty").apply(step)?;
            out.push(next);
        }
        Ok(out)
    }

    /// The final coloring.
    pub fn apply_all(&self, start: &Coloring) -> Result<Coloring, CoreError> {
        let mut colors = start.as_slice().to_vec();
        for &step in &self.steps {
            let slot = colors
                .get_mut(step.vertex)
                .ok_or(CoreError::VertexOutOfRange {
                    vertex: step.vertex,
                    n: start.len(),
                })?;
            if *slot == step.color {
                return Err(CoreError::NoOpStep {
                    vertex: step.vertex,
                    color: step.color,
                });
            }
            *slot = step.color;
        }
        Ok(Coloring(colors))
    }

    /// The same walk traversed backwards: a sequence from the final coloring
    /// back to `start`, each step restoring the color held before it.
    pub fn reversed(&self, start: &Coloring) -> Result<RecolorSequence, CoreError> {
        let mut colors = start.as_slice().to_vec();
        let mut back = Vec::with_capacity(self.steps.len());
        for &step in &self.steps {
            let slot = colors
                .get_mut(step.vertex)
                .ok_or(CoreError::VertexOutOfRange {
                    vertex: step.vertex,
                    n: start.len(),
                })?;
            if *slot == step.color {
                return Err(CoreError::NoOpStep {
                    vertex: step.vertex,
                    color: step.color,
                });
            }
            back.push(RecolorStep::new(step.vertex, *slot));
            *slot = step.color;
        }
        back.reverse();
        Ok(RecolorSequence { steps: back })
    }
}

impl FromIterator<RecolorStep> for RecolorSequence {
    fn from_iter<I: IntoIterator<Item = RecolorStep>>(iter: I) -> Self {
        RecolorSequence {
            steps: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a RecolorSequence {
    type Item = &'a RecolorStep;
    type IntoIter = std::slice::Iter<'a, RecolorStep>;

    fn into_iter(self) -> Self::IntoIter {
        self.steps.iter()
    }
}

/// One reason a color assignment fails to be a proper list coloring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Both endpoints of edge `u`-`v` have `color`.
    Conflict { u: Vertex, v: Vertex, color: Color },
    /// `color` is in `1..=k` but not in the vertex's list.
    NotInList { vertex: Vertex, color: Color },
    /// `color` is outside `1..=k`.
    OutOfRange { vertex: Vertex, color: Color },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // 1-indexed, matching the file formats.
        match *self {
            Violation::Conflict { u, v, color } => {
                write!(
                    f,
                    "edge {}-{} has both endpoints colored {}",
                    u + 1,
                    v + 1,
                    color
                )
            }
            Violation::NotInList { vertex, color } => {
                write!(
                    f,
                    "vertex {} has color {} outside its list",
                    vertex + 1,
                    color
                )
            }
            Violation::OutOfRange { vertex, color } => {
                write!(
                    f,
                    "vertex {} has color {} outside the palette",
                    vertex + 1,
                    color
                )
            }
        }
    }
}

fn check_len(graph: &Graph, lists: &ColorLists, len: usize) -> Result<(), CoreError> {
    if lists.len() != graph.n() {
        return Err(CoreError::LengthMismatch {
            expected: graph.n(),
            got: lists.len(),
        });
    }
    if len != graph.n() {
        return Err(CoreError::LengthMismatch {
            expected: graph.n(),
            got: len,
        });
    }
    Ok(())
}

fn vertex_violation(lists: &ColorLists, v: Vertex, color: Color) -> Option<Violation> {
    if color == 0 || color > lists.k() {
        Some(Violation::OutOfRange { vertex: v, color })
    } else if !lists.get(v).contains(color) {
        Some(Violation::NotInList { vertex: v, color })
    } else {
        None
    }
}

/// Every range, list and edge violation of `gamma`, vertex violations first
/// (by vertex), then conflicting edges (in edge order). An empty result means
/// `gamma` is a proper list coloring.
pub fn check_coloring(
    graph: &Graph,
    lists: &ColorLists,
    gamma: &[Color],
) -> Result<Vec<Violation>, CoreError> {
    check_len(graph, lists, gamma.len())?;
    let mut out: Vec<Violation> = gamma
        .iter()
        .enumerate()
        .filter_map(|(v, &c)| vertex_violation(lists, v, c))
        .collect();
    out.extend(graph.edges().iter().filter_map(|&(u, v)| {
        (gamma[u] == gamma[v]).then_some(Violation::Conflict {
            u,
            v,
            color: gamma[u],
        })
    }));
    Ok(out)
}

/// Violations involving vertex `v` only (its own color and its incident edges).
fn local_violation(
    graph: &Graph,
    lists: &ColorLists,
    gamma: &[Color],
    v: Vertex,
) -> Option<Violation> {
    if let Some(bad) = vertex_violation(lists, v, gamma[v]) {
        return Some(bad);
    }
    graph
        .neighbors(v)
        .iter()
        .find(|&&w| gamma[w] == gamma[v])
        .map(|&w| Violation::Conflict {
            u: v.min(w),
            v: v.max(w),
            color: gamma[v],
        })
}

/// Why [`verify_sequence`] rejected a sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvalidReason {
    /// `alpha` itself is not a proper list coloring.
    StartImproper(Violation),
    /// The step would exceed the budget `ell`.
    OverBudget {
        ell: usize,
    },
    VertexOutOfRange {
        vertex: Vertex,
    },
    /// The step recolors a vertex to its current color.
    NoOp {
        vertex: Vertex,
        color: Color,
    },
    /// The coloring after the step is improper.
    Improper(Violation),
    /// The final coloring differs from `beta` (lowest differing vertex).
    WrongTarget {
        vertex: Vertex,
    },
}

impl fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            InvalidReason::StartImproper(v) => write!(f, "start coloring is improper: {v}"),
            InvalidReason::OverBudget { ell } => {
                write!(f, "budget exceeded: more than {ell} steps")
            }
            InvalidReason::VertexOutOfRange { vertex } => {
                write!(f, "vertex {} does not exist", vertex + 1)
            }
            InvalidReason::NoOp { vertex, color } => {
                write!(f, "vertex {} already has color {}", vertex + 1, color)
            }
            InvalidReason::Improper(v) => write!(f, "{v}"),
            InvalidReason::WrongTarget { vertex } => {
                write!(
                    f,
                    "final coloring differs from target at vertex {}",
                    vertex + 1
                )
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// `step` is the 0-based index of the first failing step, or `None` when
    /// the failure is not tied to a step (bad start, wrong endpoint).
    Invalid {
        step: Option<usize>,
        reason: InvalidReason,
    },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Checks that `seq` has at most `ell` steps, keeps the coloring a proper
/// list coloring after every step, and ends at `beta`.
pub fn verify_sequence(
    graph: &Graph,
    lists: &ColorLists,
    alpha: &[Color],
    beta: &[Color],
    ell: usize,
    seq: &RecolorSequence,
) -> Result<Verdict, CoreError> {
    check_len(graph, lists, alpha.len())?;
    check_len(graph, lists, beta.len())?;
    if let Some(&bad) = check_coloring(graph, lists, alpha)?.first() {
        return Ok(Verdict::Invalid {
            step: None,
            reason: InvalidReason::StartImproper(bad),
        });
    }
    let mut gamma = alpha.to_vec();
    for (i, &step) in seq.iter().enumerate() {
        let invalid = |reason| {
            Ok(Verdict::Invalid {
                step: Some(i),
                reason,
            })
        };
        if i >= ell {
            return invalid(InvalidReason::OverBudget { ell });
        }
        if step.vertex >= graph.n() {
            return invalid(InvalidReason::VertexOutOfRange {
                vertex: step.vertex,
            });
        }
        if gamma[step.vertex] == step.color {
            return invalid(InvalidReason::NoOp {
                vertex: step.vertex,
                color: step.color,
            });
        }
        gamma[step.vertex] = step.color;
        if let Some(bad) = local_violation(graph, lists, &gamma, step.vertex) {
            return invalid(InvalidReason::Improper(bad));
        }
    }
    if let Some(vertex) = (0..graph.n()).find(|&v| gamma[v] != beta[v]) {
        return Ok(Verdict::Invalid {
            step: None,
            reason: InvalidReason::WrongTarget { vertex },
        });
    }
    Ok(Verdict::Valid)
}

/// The colors each vertex holds at some point of a sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UsedColorLists(Vec<ColorSet>);

impl UsedColorLists {
    pub fn get(&self, v: Vertex) -> ColorSet {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[ColorSet] {
        &self.0
    }

    /// `sum over v of (|U(v)| - 1)`, a lower bound on the sequence length.
    pub fn weight(&self) -> usize {
        self.0.iter().map(|u| u.len().saturating_sub(1)).sum()
    }
}

pub fn used_color_lists(alpha: &[Color], seq: &RecolorSequence) -> UsedColorLists {
    let mut used: Vec<ColorSet> = alpha.iter().map(|&c| ColorSet::singleton(c)).collect();
    for step in seq {
        used[step.vertex].insert(step.color);
    }
    UsedColorLists(used)
}

/// Vertices on which `alpha` and `beta` differ, ascending.
pub fn diff_set(alpha: &[Color], beta: &[Color]) -> Vec<Vertex> {
    assert_eq!(alpha.len(), beta.len(), "colorings of different length");
    (0..alpha.len()).filter(|&v| alpha[v] != beta[v]).collect()
}

/// A recoloring problem: graph, palette or lists, budget and endpoints, plus
/// optional role annotations attached by the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    k: u32,
    lists: Option<ColorLists>,
    ell: usize,
    alpha: Coloring,
    beta: Coloring,
    roles: BTreeMap<Vertex, String>,
}

impl Instance {
    /// Validates that both endpoints are proper list colorings.
    pub fn new(
        graph: Graph,
        k: u32,
        lists: Option<ColorLists>,
        ell: usize,
        alpha: Coloring,
        beta: Coloring,
    ) -> Result<Self, CoreError> {
        if k == 0 || k > MAX_COLORS {
            return Err(CoreError::UnsupportedColorCount(k));
        }
        if let Some(lists) = &lists {
            if lists.k() != k {
                return Err(CoreError::domain(format!(
                    "lists are over {} colors, instance has k = {}",
                    lists.k(),
                    k
                )));
            }
        }
        let inst = Instance {
            graph,
            k,
            lists,
            ell,
            alpha,
            beta,
            roles: BTreeMap::new(),
        };
        let effective = inst.lists();
        for (which, gamma) in [("alpha", &inst.alpha), ("beta", &inst.beta)] {
            if let Some(&violation) = check_coloring(&inst.graph, &effective, gamma)?.first() {
                return Err(CoreError::Improper { which, violation });
            }
        }
        drop(effective);
        Ok(inst)
    }

    pub fn with_roles(mut self, roles: BTreeMap<Vertex, String>) -> Self {
        self.roles = roles;
        self
    }

    pub fn with_ell(mut self, ell: usize) -> Self {
        self.ell = ell;
        self
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The explicit lists, if any were given.
    pub fn explicit_lists(&self) -> Option<&ColorLists> {
        self.lists.as_ref()
    }

    /// The effective lists: explicit ones, or `1..=k` everywhere.
    pub fn lists(&self) -> Cow<'_, ColorLists> {
        match &self.lists {
            Some(l) => Cow::Borrowed(l),
            None => Cow::Owned(ColorLists::full(self.graph.n(), self.k).expect("k validated")),
        }
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn alpha(&self) -> &Coloring {
        &self.alpha
    }

    pub fn beta(&self) -> &Coloring {
        &self.beta
    }

    pub fn roles(&self) -> &BTreeMap<Vertex, String> {
        &self.roles
    }

    pub fn verify(&self, seq: &RecolorSequence) -> Verdict {
        verify_sequence(
            &self.graph,
            &self.lists(),
            &self.alpha,
            &self.beta,
            self.ell,
            seq,
        )
        .expect("instance lengths validated at construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(cs: &[Color]) -> ColorSet {
        cs.iter().copied().collect()
    }

    /// B_2 by hand: b11=0, b12=1, b21=2, b22=3; edges b11-b22, b12-b21.
    fn b2() -> Graph {
        Graph::new(4, [(0, 3), (1, 2)]).unwrap()
    }

    #[test]
    fn graph_rejects_bad_edges() {
        assert_eq!(Graph::new(2, [(0, 0)]), Err(CoreError::SelfLoop(0)));
        assert_eq!(
            Graph::new(2, [(0, 1), (1, 0)]),
            Err(CoreError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::new(2, [(0, 2)]),
            Err(CoreError::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn adjacency_matches_edges() {
        let g = Graph::new(4, [(2, 1), (0, 3), (1, 3)]).unwrap();
        assert_eq!(g.edges(), &[(0, 3), (1, 2), (1, 3)]);
        assert_eq!(g.neighbors(1), &[2, 3]);
        assert_eq!(g.neighbors(3), &[0, 1]);
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(g.has_edge(u, v), g.edges().contains(&(u.min(v), u.max(v))));
            }
        }
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = Graph::complete(4);
        let h = g.induced_subgraph(&[3, 1]);
        assert_eq!(h.n(), 2);
        assert_eq!(h.edges(), &[(0, 1)]);
    }

    #[test]
    fn color_set_basics() {
        let s = set(&[3, 1, 128]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 3, 128]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.min(), Some(1));
        assert_eq!(s.max(), Some(128));
        assert!(!s.contains(0) && !s.contains(129) && !s.contains(2));
        assert_eq!(ColorSet::full(3), set(&[1, 2, 3]));
        assert_eq!(ColorSet::full(128).len(), 128);
    }

    #[test]
    fn check_coloring_single_edge_conflict() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let lists = ColorLists::full(2, 2).unwrap();
        assert_eq!(
            check_coloring(&g, &lists, &[1, 1]).unwrap(),
            vec![Violation::Conflict {
                u: 0,
                v: 1,
                color: 1
            }]
        );
    }

    #[test]
    fn check_coloring_b2_rows_are_proper() {
        let lists = ColorLists::full(4, 2).unwrap();
        assert!(check_coloring(&b2(), &lists, &[1, 1, 2, 2])
            .unwrap()
            .is_empty());
    }

    #[test]
    fn check_coloring_list_violation() {
        let g = Graph::empty(1);
        let lists = ColorLists::new(4, vec![set(&[3, 4])]).unwrap();
        assert_eq!(
            check_coloring(&g, &lists, &[1]).unwrap(),
            vec![Violation::NotInList {
                vertex: 0,
                color: 1
            }]
        );
        assert_eq!(
            check_coloring(&g, &lists, &[5]).unwrap(),
            vec![Violation::OutOfRange {
                vertex: 0,
                color: 5
            }]
        );
    }

    #[test]
    fn check_coloring_length_mismatch() {
        let g = Graph::empty(2);
        let lists = ColorLists::full(2, 2).unwrap();
        assert!(matches!(
            check_coloring(&g, &lists, &[1]),
            Err(CoreError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn apply_step_examples() {
        let a = Coloring::new(vec![1, 2]);
        assert_eq!(a.apply(RecolorStep::new(0, 2)).unwrap().as_slice(), &[2, 2]);
        assert_eq!(a.as_slice(), &[1, 2]);
        let b = Coloring::new(vec![1, 1, 2, 2]);
        assert_eq!(
            b.apply(RecolorStep::new(1, 3)).unwrap().as_slice(),
            &[1, 3, 2, 2]
        );
        assert_eq!(
            Coloring::new(vec![1]).apply(RecolorStep::new(0, 1)),
            Err(CoreError::NoOpStep {
                vertex: 0,
                color: 1
            })
        );
    }

    fn b2_witness() -> RecolorSequence {
        // b12 -> 3, b21 -> 1, b12 -> 2
        RecolorSequence::from_steps(vec![
            RecolorStep::new(1, 3),
            RecolorStep::new(2, 1),
            RecolorStep::new(1, 2),
        ])
    }

    #[test]
    fn verify_sequence_examples() {
        let g = b2();
        let lists = ColorLists::full(4, 3).unwrap();
        let alpha = [1, 1, 2, 2];
        let beta = [1, 2, 1, 2];
        let empty = RecolorSequence::new();
        assert_eq!(
            verify_sequence(&g, &lists, &alpha, &alpha, 0, &empty).unwrap(),
            Verdict::Valid
        );
        let seq = b2_witness();
        assert_eq!(
            verify_sequence(&g, &lists, &alpha, &beta, 3, &seq).unwrap(),
            Verdict::Valid
        );
        assert_eq!(
            verify_sequence(&g, &lists, &alpha, &beta, 2, &seq).unwrap(),
            Verdict::Invalid {
                step: Some(2),
                reason: InvalidReason::OverBudget { ell: 2 }
            }
        );
    }

    #[test]
    fn verify_sequence_reports_first_failure() {
        let g = b2();
        let lists = ColorLists::full(4, 3).unwrap();
        let alpha = [1, 1, 2, 2];
        // b21 -> 1 first conflicts with b12 (color 1).
        let seq = RecolorSequence::from_steps(vec![RecolorStep::new(2, 1)]);
        assert_eq!(
            verify_sequence(&g, &lists, &alpha, &alpha, 5, &seq).unwrap(),
            Verdict::Invalid {
                step: Some(0),
                reason: InvalidReason::Improper(Violation::Conflict {
                    u: 1,
                    v: 2,
                    color: 1
                })
            }
        );
        let seq = RecolorSequence::from_steps(vec![RecolorStep::new(0, 3)]);
        assert_eq!(
            verify_sequence(&g, &lists, &alpha, &alpha, 5, &seq).unwrap(),
            Verdict::Invalid {
                step: None,
                reason: InvalidReason::WrongTarget { vertex: 0 }
            }
        );
    }

    #[test]
    fn used_color_lists_examples() {
        let alpha = [1, 1, 2, 2];
        let none = used_color_lists(&alpha, &RecolorSequence::new());
        assert_eq!(
            none.as_slice(),
            &[set(&[1]), set(&[1]), set(&[2]), set(&[2])]
        );
        assert_eq!(none.weight(), 0);
        let used = used_color_lists(&alpha, &b2_witness());
        assert_eq!(used.get(1), set(&[1, 2, 3]));
        assert_eq!(used.get(2), set(&[1, 2]));
        assert_eq!(used.get(0), set(&[1]));
        assert_eq!(used.get(3), set(&[2]));
        assert_eq!(used.weight(), 3);
    }

    #[test]
    fn diff_set_examples() {
        assert!(diff_set(&[1, 2], &[1, 2]).is_empty());
        assert_eq!(diff_set(&[1, 1, 2, 2], &[1, 2, 1, 2]), vec![1, 2]);
        assert_eq!(diff_set(&[1, 2], &[2, 1]), vec![0, 1]);
    }

    #[test]
    fn reversal_of_b2_witness() {
        let g = b2();
        let lists = ColorLists::full(4, 3).unwrap();
        let alpha = Coloring::new(vec![1, 1, 2, 2]);
        let beta = [1, 2, 1, 2];
        let back = b2_witness().reversed(&alpha).unwrap();
        assert_eq!(back.len(), 3);
        assert_eq!(
            verify_sequence(&g, &lists, &beta, &alpha, 3, &back).unwrap(),
            Verdict::Valid
        );
    }

    #[test]
    fn instance_rejects_improper_endpoints() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let err = Instance::new(g, 2, None, 1, vec![1, 1].into(), vec![1, 2].into()).unwrap_err();
        assert!(matches!(err, CoreError::Improper { which: "alpha", .. }));
    }
}
