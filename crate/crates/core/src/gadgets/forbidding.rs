//! `(a, b)`-forbidding paths: seven-vertex list-colored paths from `u` to
//! `v` whose endpoint colorings are exactly `L(u) x L(v)` minus `(a, b)`,
//! and along which any admissible endpoint change can be realized while
//! recoloring each internal vertex at most once.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Mutex, OnceLock};

use crate::error::CoreError;
use crate::graph::{
    check_coloring, Color, ColorLists, ColorSet, Coloring, Graph, RecolorSequence, RecolorStep,
    Vertex,
};

/// Number of vertices on a forbidding path (length six).
pub const PATH_VERTICES: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddingPath {
    /// The path `0 - 1 - ... - 6`; `0` is `u`, `6` is `v`.
    pub graph: Graph,
    pub lists: ColorLists,
    pub forbidden: (Color, Color),
}

fn template(lu: ColorSet, lv: ColorSet, [a, b, c, d, e, f]: [Color; 6]) -> ForbiddingPath {
    let pair = |x: Color, y: Color| [x, y].into_iter().collect::<ColorSet>();
    let lists = vec![
        lu,
        pair(a, c),
        pair(c, e),
        pair(e, f),
        pair(f, d),
        pair(d, b),
        lv,
    ];
    ForbiddingPath {
        graph: Graph::path(PATH_VERTICES),
        lists: ColorLists::new(4, lists).expect("colors within 1..=4"),
        forbidden: (a, b),
    }
}

type Key = (u128, u128, Color, Color);

fn cache() -> &'static Mutex<HashMap<Key, Option<[Color; 4]>>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Option<[Color; 4]>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Builds the path with lists `L_u, {a,c}, {c,e}, {e,f}, {f,d}, {d,b}, L_v`
/// where `c` is outside `L_u`, `d` outside `L_v`, `e` outside `{a,c}` and
/// `f` outside `{b,d,e}`.
///
/// Choices are tried in lexicographic order of `(c, d, e, f)` and the first
/// one satisfying [`ForbiddingPath::satisfies_definition`] is kept. The
/// plain smallest choice can give two adjacent internal vertices the same
/// two-color list, which freezes both. When `a = b` and the endpoint lists
/// are large enough no choice works, and this returns an error.
pub fn build_forbidding_path(
    lu: ColorSet,
    lv: ColorSet,
    a: Color,
    b: Color,
) -> Result<ForbiddingPath, CoreError> {
    let full = ColorSet::full(4);
    for (name, l) in [("L_u", lu), ("L_v", lv)] {
        if l.is_empty() || !l.is_subset(full) || l == full {
            return Err(CoreError::domain(format!(
                "{name} must be a nonempty proper subset of 1..=4, got {l:?}"
            )));
        }
    }
    if !lu.contains(a) {
        return Err(CoreError::domain(format!("a = {a} not in L_u {lu:?}")));
    }
    if !lv.contains(b) {
        return Err(CoreError::domain(format!("b = {b} not in L_v {lv:?}")));
    }
    let key = (lu.bits(), lv.bits(), a, b);
    let cached = cache().lock().expect("cache poisoned").get(&key).copied();
    let choice = match cached {
        Some(choice) => choice,
        None => {
            let choice = search_choice(lu, lv, a, b);
            cache().lock().expect("cache poisoned").insert(key, choice);
            choice
        }
    };
    match choice {
        Some([c, d, e, f]) => Ok(template(lu, lv, [a, b, c, d, e, f])),
        None => Err(CoreError::domain(format!(
            "no six-vertex ({a}, {b})-forbidding path exists for L_u = {lu:?}, L_v = {lv:?}"
        ))),
    }
}

fn search_choice(lu: ColorSet, lv: ColorSet, a: Color, b: Color) -> Option<[Color; 4]> {
    let full = ColorSet::full(4);
    for c in full.difference(lu) {
        for d in full.difference(lv) {
            for e in (1..=4).filter(|&e| e != a && e != c) {
                for f in (1..=4).filter(|&f| f != b && f != d && f != e) {
                    if template(lu, lv, [a, b, c, d, e, f]).satisfies_definition() {
                        return Some([c, d, e, f]);
                    }
                }
            }
        }
    }
    None
}

impl ForbiddingPath {
    pub const U: Vertex = 0;
    pub const V: Vertex = PATH_VERTICES - 1;

    pub fn list(&self, i: Vertex) -> ColorSet {
        self.lists.get(i)
    }

    pub fn is_admissible(&self, x: Color, y: Color) -> bool {
        self.list(Self::U).contains(x) && self.list(Self::V).contains(y) && (x, y) != self.forbidden
    }

    /// Every list coloring of the path, lexicographic.
    pub fn colorings(&self) -> Vec<[Color; PATH_VERTICES]> {
        fn go(
            fp: &ForbiddingPath,
            i: usize,
            cur: &mut [Color; PATH_VERTICES],
            out: &mut Vec<[Color; PATH_VERTICES]>,
        ) {
            if i == PATH_VERTICES {
                out.push(*cur);
                return;
            }
            for c in fp.list(i) {
                if i == 0 || cur[i - 1] != c {
                    cur[i] = c;
                    go(fp, i + 1, cur, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, 0, &mut [0; PATH_VERTICES], &mut out);
        out
    }

    /// Checks both defining properties exhaustively: the endpoint pairs of
    /// list colorings are exactly the admissible ones, and from every list
    /// coloring every admissible pair sharing an endpoint color is reached
    /// recoloring each internal vertex at most once.
    pub fn satisfies_definition(&self) -> bool {
        let colorings = self.colorings();
        let mut realized = HashSet::new();
        for g in &colorings {
            realized.insert((g[Self::U], g[Self::V]));
        }
        let (lu, lv) = (self.list(Self::U), self.list(Self::V));
        let pairs: Vec<(Color, Color)> = lu
            .iter()
            .flat_map(|x| lv.iter().map(move |y| (x, y)))
            .collect();
        if pairs
            .iter()
            .any(|&(x, y)| realized.contains(&(x, y)) != self.is_admissible(x, y))
        {
            return false;
        }
        colorings.iter().all(|g| {
            pairs
                .iter()
                .filter(|&&(x, y)| self.is_admissible(x, y) && (x == g[Self::U] || y == g[Self::V]))
                .all(|&target| self.shift_internals(g, target).is_ok())
        })
    }

    /// Colors `p_i` can take in some list coloring of `p_i..p_6` with
    /// `p_6 = y`.
    fn completable(&self, y: Color) -> [ColorSet; PATH_VERTICES] {
        let mut ok = [ColorSet::EMPTY; PATH_VERTICES];
        if self.list(Self::V).contains(y) {
            ok[Self::V] = ColorSet::singleton(y);
        }
        for i in (0..Self::V).rev() {
            ok[i] = self
                .list(i)
                .iter()
                .filter(|&c| ok[i + 1].iter().any(|c2| c2 != c))
                .collect();
        }
        ok
    }

    /// A list coloring with endpoints `(x, y)`, built from `u` towards `v`
    /// taking the smallest color that still completes. `None` iff no list
    /// coloring has these endpoints.
    pub fn extend(&self, x: Color, y: Color) -> Option<Coloring> {
        let ok = self.completable(y);
        if !ok[Self::U].contains(x) {
            return None;
        }
        let mut colors = vec![x];
        for i in 1..PATH_VERTICES {
            let prev = colors[i - 1];
            let c = ok[i].iter().find(|&c| c != prev)?;
            colors.push(c);
        }
        Some(Coloring::new(colors))
    }

    /// The same path read from `v` to `u`: a `(b, a)`-forbidding path.
    pub fn reversed(&self) -> ForbiddingPath {
        let lists = (0..PATH_VERTICES).rev().map(|i| self.list(i)).collect();
        ForbiddingPath {
            graph: self.graph.clone(),
            lists: ColorLists::new(4, lists).expect("same lists"),
            forbidden: (self.forbidden.1, self.forbidden.0),
        }
    }

    fn check_shift(
        &self,
        current: &[Color],
        target: (Color, Color),
    ) -> Result<Option<Vertex>, CoreError> {
        if let Some(&violation) = check_coloring(&self.graph, &self.lists, current)?.first() {
            return Err(CoreError::Improper {
                which: "current path coloring",
                violation,
            });
        }
        let (x, y) = target;
        if !self.is_admissible(x, y) {
            return Err(CoreError::domain(format!(
                "endpoint pair ({x}, {y}) is not admissible"
            )));
        }
        match (current[Self::U] == x, current[Self::V] == y) {
            (true, true) => Ok(None),
            (true, false) => Ok(Some(Self::V)),
            (false, true) => Ok(Some(Self::U)),
            (false, false) => Err(CoreError::domain(format!(
                "target ({x}, {y}) changes both endpoints of ({}, {})",
                current[Self::U],
                current[Self::V]
            ))),
        }
    }

    /// Recolors internal vertices, each at most once, until the endpoint
    /// that differs from `target` can move. The endpoint step itself is not
    /// included. Shortest such prefix, internal vertex ascending then color
    /// ascending.
    pub fn shift_internals(
        &self,
        current: &[Color],
        target: (Color, Color),
    ) -> Result<RecolorSequence, CoreError> {
        let Some(end) = self.check_shift(current, target)? else {
            return Ok(RecolorSequence::new());
        };
        let (goal_color, next_to_end) = if end == Self::U {
            (target.0, 1)
        } else {
            (target.1, Self::V - 1)
        };
        type State = ([Color; PATH_VERTICES], u8);
        let mut start = [0; PATH_VERTICES];
        start.copy_from_slice(current);
        let mut seen: HashSet<State> = HashSet::from([(start, 0)]);
        let mut queue: VecDeque<(State, Vec<RecolorStep>)> =
            VecDeque::from([((start, 0), Vec::new())]);
        while let Some(((colors, moved), steps)) = queue.pop_front() {
            if colors[next_to_end] != goal_color {
                return Ok(RecolorSequence::from_steps(steps));
            }
            for i in 1..Self::V {
                if moved & (1 << i) != 0 {
                    continue;
                }
                for c in self.list(i) {
                    if c == colors[i] || c == colors[i - 1] || c == colors[i + 1] {
                        continue;
                    }
                    let mut next = colors;
                    next[i] = c;
                    let state = (next, moved | (1 << i));
                    if seen.insert(state) {
                        let mut s = steps.clone();
                        s.push(RecolorStep::new(i, c));
                        queue.push_back((state, s));
                    }
                }
            }
        }
        Err(CoreError::domain(format!(
            "no shift to ({}, {}) recoloring internal vertices at most once",
            target.0, target.1
        )))
    }
}

/// Moves the path's endpoints from `current` to the admissible `target`,
/// which must agree with `current` on at least one endpoint. Internal
/// vertices are recolored at most once; the endpoint moves in the last step.
/// Vertex ids are path-local (`0` is `u`, `6` is `v`).
pub fn shift_path(
    fp: &ForbiddingPath,
    current: &[Color],
    target: (Color, Color),
) -> Result<RecolorSequence, CoreError> {
    let mut seq = fp.shift_internals(current, target)?;
    if current[ForbiddingPath::U] != target.0 {
        seq.push(RecolorStep::new(ForbiddingPath::U, target.0));
    } else if current[ForbiddingPath::V] != target.1 {
        seq.push(RecolorStep::new(ForbiddingPath::V, target.1));
    }
    Ok(seq)
}
