//! Reduction from graph 3-colorability to list recoloring with lists in
//! `1..=4`.
//!
//! Source vertices become an independent set with lists `{1,2,3}`, all
//! starting at color 1. Every source edge `uv` gets a gadget `x, y, z` wired
//! by forbidding paths so that `z` can leave color 4 only while `u` and `v`
//! are colored differently. The special vertices `a, b, c, d` can swap the
//! colors of `a` and `b` only after `c` moves to 4, which requires every `z`
//! to have left 4 at the same time.

use std::collections::BTreeMap;

use crate::error::CoreError;
use crate::gadgets::forbidding::{build_forbidding_path, ForbiddingPath, PATH_VERTICES};
use crate::graph::{
    check_coloring, Color, ColorLists, ColorSet, Coloring, Graph, Instance, RecolorSequence,
    RecolorStep, Vertex,
};

/// Which gadget vertex a forbidding path attaches to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum End {
    U,
    V,
    X,
    Y,
    Z,
}

impl End {
    fn tag(self) -> &'static str {
        match self {
            End::U => "u",
            End::V => "v",
            End::X => "x",
            End::Y => "y",
            End::Z => "z",
        }
    }
}

/// The forbidding paths of one edge gadget: `(from, to, a, b)` is an
/// `(a, b)`-forbidding path from `from` to `to`.
pub const GADGET_PATHS: [(End, End, Color, Color); 8] = [
    (End::U, End::X, 1, 2),
    (End::U, End::X, 3, 1),
    (End::U, End::Y, 2, 3),
    (End::V, End::X, 2, 1),
    (End::V, End::X, 3, 2),
    (End::V, End::Y, 1, 3),
    (End::X, End::Z, 4, 1),
    (End::Y, End::Z, 4, 2),
];

const INTERNAL: usize = PATH_VERTICES - 2;

pub fn source_list() -> ColorSet {
    ColorSet::from_iter([1, 2, 3])
}

pub fn x_list() -> ColorSet {
    ColorSet::from_iter([1, 2, 4])
}

pub fn y_list() -> ColorSet {
    ColorSet::from_iter([3, 4])
}

pub fn z_list() -> ColorSet {
    ColorSet::from_iter([1, 2, 4])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetPath {
    pub from: Vertex,
    pub to: Vertex,
    pub internals: [Vertex; INTERNAL],
    pub path: ForbiddingPath,
}

impl GadgetPath {
    /// Global id of path-local vertex `i` (`0` is `from`, `6` is `to`).
    pub fn global(&self, i: Vertex) -> Vertex {
        match i {
            0 => self.from,
            i if i == PATH_VERTICES - 1 => self.to,
            i => self.internals[i - 1],
        }
    }

    pub fn vertices(&self) -> [Vertex; PATH_VERTICES] {
        std::array::from_fn(|i| self.global(i))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGadget {
    /// Lower-id endpoint of the source edge.
    pub u: Vertex,
    pub v: Vertex,
    pub x: Vertex,
    pub y: Vertex,
    pub z: Vertex,
    pub paths: Vec<GadgetPath>,
}

impl EdgeGadget {
    fn end(&self, e: End) -> Vertex {
        match e {
            End::U => self.u,
            End::V => self.v,
            End::X => self.x,
            End::Y => self.y,
            End::Z => self.z,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NpInstance {
    pub instance: Instance,
    pub source: Graph,
    pub gadgets: Vec<EdgeGadget>,
    /// `a, b, c, d`.
    pub special: [Vertex; 4],
}

/// Builds the list instance for `source`. Edges are oriented from their
/// lower-id endpoint `u`; the budget is `4 |V(G')|`.
pub fn np_reduce(source: &Graph) -> Result<NpInstance, CoreError> {
    let n = source.n();
    let m = source.m();
    let total = n + m * (3 + GADGET_PATHS.len() * INTERNAL) + 4;
    let mut lists: Vec<ColorSet> = Vec::with_capacity(total);
    let mut alpha: Vec<Color> = Vec::with_capacity(total);
    let mut roles: BTreeMap<Vertex, String> = BTreeMap::new();
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut add = |list: ColorSet,
                   color: Color,
                   role: String,
                   lists: &mut Vec<ColorSet>,
                   alpha: &mut Vec<Color>| {
        let id = lists.len();
        lists.push(list);
        alpha.push(color);
        roles.insert(id, role);
        id
    };
    for w in 0..n {
        add(
            source_list(),
            1,
            format!("src:{}", w + 1),
            &mut lists,
            &mut alpha,
        );
    }
    let mut gadgets = Vec::with_capacity(m);
    for &(u, v) in source.edges() {
        let name = format!("{}:{}", u + 1, v + 1);
        let x = add(x_list(), 4, format!("x:{name}"), &mut lists, &mut alpha);
        let y = add(y_list(), 4, format!("y:{name}"), &mut lists, &mut alpha);
        let z = add(z_list(), 4, format!("z:{name}"), &mut lists, &mut alpha);
        edges.push((u, x));
        edges.push((u, y));
        let mut gadget = EdgeGadget {
            u,
            v,
            x,
            y,
            z,
            paths: Vec::with_capacity(GADGET_PATHS.len()),
        };
        for (from_end, to_end, a, b) in GADGET_PATHS {
            let from = gadget.end(from_end);
            let to = gadget.end(to_end);
            let path = build_forbidding_path(lists[from], lists[to], a, b)?;
            let ext = path
                .extend(alpha[from], alpha[to])
                .ok_or_else(|| CoreError::domain("start colors inadmissible on a gadget path"))?;
            let internals: [Vertex; INTERNAL] = std::array::from_fn(|i| {
                add(
                    path.list(i + 1),
                    ext[i + 1],
                    format!(
                        "path:{}{}:{a}{b}:{name}:{}",
                        from_end.tag(),
                        to_end.tag(),
                        i + 1
                    ),
                    &mut lists,
                    &mut alpha,
                )
            });
            let gp = GadgetPath {
                from,
                to,
                internals,
                path,
            };
            let vs = gp.vertices();
            edges.extend(vs.windows(2).map(|w| (w[0], w[1])));
            gadget.paths.push(gp);
        }
        gadgets.push(gadget);
    }
    let special_lists = [[1, 2, 3].as_slice(), &[1, 2], &[3, 4], &[4]];
    let special: [Vertex; 4] = std::array::from_fn(|i| {
        add(
            special_lists[i].iter().copied().collect(),
            i as Color + 1,
            ["a", "b", "c", "d"][i].to_string(),
            &mut lists,
            &mut alpha,
        )
    });
    let [a, b, c, d] = special;
    edges.extend([(a, b), (a, c), (a, d), (b, c), (b, d)]);
    edges.extend(gadgets.iter().map(|g| (g.z, c)));
    debug_assert_eq!(lists.len(), total);

    let graph = Graph::new(total, edges)?;
    let mut beta = alpha.clone();
    beta.swap(a, b);
    let instance = Instance::new(
        graph,
        4,
        Some(ColorLists::new(4, lists)?),
        4 * total,
        Coloring::new(alpha),
        Coloring::new(beta),
    )?
    .with_roles(roles);
    Ok(NpInstance {
        instance,
        source: source.clone(),
        gadgets,
        special,
    })
}

/// Decides whether the quintuple `(u, v, x, y, z)` of gadget `edge` extends
/// to a list coloring of that gadget, treating each forbidding path as the
/// constraint "endpoint pair is admissible" and keeping the direct edges
/// `u-x` and `u-y`.
pub fn gadget_abstraction_check(
    np: &NpInstance,
    edge: usize,
    quintuple: [Color; 5],
) -> Result<bool, CoreError> {
    let gadget = np
        .gadgets
        .get(edge)
        .ok_or_else(|| CoreError::domain(format!("no gadget for edge index {edge}")))?;
    let ends = [End::U, End::V, End::X, End::Y, End::Z];
    let lists = np.instance.lists();
    for (end, &color) in ends.iter().zip(&quintuple) {
        let vertex = gadget.end(*end);
        if !lists.get(vertex).contains(color) {
            return Err(CoreError::domain(format!(
                "color {color} not in the list of {} ({:?})",
                end.tag(),
                lists.get(vertex)
            )));
        }
    }
    let color_of = |e: End| quintuple[ends.iter().position(|&x| x == e).expect("known end")];
    if color_of(End::U) == color_of(End::X) || color_of(End::U) == color_of(End::Y) {
        return Ok(false);
    }
    let ok = GADGET_PATHS
        .iter()
        .zip(&gadget.paths)
        .all(|(&(from, to, _, _), gp)| gp.path.is_admissible(color_of(from), color_of(to)));
    Ok(ok)
}

/// Tracks the current coloring while steps are appended, rejecting any step
/// that would break properness.
struct Walk<'a> {
    graph: &'a Graph,
    lists: &'a ColorLists,
    current: Vec<Color>,
    seq: RecolorSequence,
}

impl Walk<'_> {
    fn step(&mut self, v: Vertex, c: Color) -> Result<(), CoreError> {
        let clash = self
            .graph
            .neighbors(v)
            .iter()
            .find(|&&w| self.current[w] == c);
        if !self.lists.get(v).contains(c) || clash.is_some() || self.current[v] == c {
            return Err(CoreError::domain(format!(
                "witness construction stuck recoloring vertex {} to {c}",
                v + 1
            )));
        }
        self.current[v] = c;
        self.seq.push(RecolorStep::new(v, c));
        Ok(())
    }
}

struct Mover<'a> {
    np: &'a NpInstance,
    incident: Vec<Vec<&'a GadgetPath>>,
    internal: Vec<bool>,
}

impl<'a> Mover<'a> {
    fn new(np: &'a NpInstance) -> Self {
        let n = np.instance.graph().n();
        let mut incident = vec![Vec::new(); n];
        let mut internal = vec![false; n];
        for gp in np.gadgets.iter().flat_map(|g| &g.paths) {
            incident[gp.from].push(gp);
            incident[gp.to].push(gp);
            for &i in &gp.internals {
                internal[i] = true;
            }
        }
        Mover {
            np,
            incident,
            internal,
        }
    }

    fn target(gp: &GadgetPath, w: Vertex, c: Color, current: &[Color]) -> (Color, Color) {
        if gp.from == w {
            (c, current[gp.to])
        } else {
            (current[gp.from], c)
        }
    }

    /// Whether `w` can move to `c` after shifting its incident paths.
    fn can_move(&self, walk: &Walk<'_>, w: Vertex, c: Color) -> bool {
        let cur = &walk.current;
        walk.lists.get(w).contains(c)
            && cur[w] != c
            && self
                .np
                .instance
                .graph()
                .neighbors(w)
                .iter()
                .all(|&x| self.internal[x] || cur[x] != c)
            && self.incident[w].iter().all(|gp| {
                let (p, q) = Self::target(gp, w, c, cur);
                gp.path.is_admissible(p, q)
            })
    }

    fn move_to(&self, walk: &mut Walk<'_>, w: Vertex, c: Color) -> Result<(), CoreError> {
        for gp in &self.incident[w] {
            let local: Vec<Color> = gp.vertices().iter().map(|&v| walk.current[v]).collect();
            let target = Self::target(gp, w, c, &walk.current);
            for step in &gp.path.shift_internals(&local, target)? {
                walk.step(gp.global(step.vertex), step.color)?;
            }
        }
        walk.step(w, c)
    }
}

/// A recoloring sequence from `alpha` to `beta` of the reduced instance,
/// given a proper 3-coloring `c3` of the source graph with colors `1..=3`.
///
/// Source vertices move to `c3`; each gadget then frees its `z` from color
/// 4; `c` moves to 4, letting `a` and `b` swap through color 3; finally all
/// earlier steps except the swap are undone in reverse order.
pub fn np_witness(np: &NpInstance, c3: &[Color]) -> Result<RecolorSequence, CoreError> {
    let source = &np.source;
    let palette = ColorLists::new(3, vec![ColorSet::full(3); source.n()])?;
    match check_coloring(source, &palette, c3) {
        Ok(v) if v.is_empty() => {}
        Ok(v) => {
            return Err(CoreError::Improper {
                which: "3-coloring",
                violation: v[0],
            })
        }
        Err(e) => return Err(e),
    }
    let inst = &np.instance;
    let lists = inst.lists();
    let mut walk = Walk {
        graph: inst.graph(),
        lists: &lists,
        current: inst.alpha().as_slice().to_vec(),
        seq: RecolorSequence::new(),
    };
    let mover = Mover::new(np);
    for (w, &c) in c3.iter().enumerate().take(source.n()) {
        if c != 1 {
            mover.move_to(&mut walk, w, c)?;
        }
    }
    for g in &np.gadgets {
        let (w, c) = [(g.x, 1), (g.x, 2), (g.y, 3)]
            .into_iter()
            .find(|&(w, c)| mover.can_move(&walk, w, c))
            .ok_or_else(|| {
                CoreError::domain(format!(
                    "gadget of edge {}-{} cannot open",
                    g.u + 1,
                    g.v + 1
                ))
            })?;
        mover.move_to(&mut walk, w, c)?;
        let zc = [1, 2]
            .into_iter()
            .find(|&c| mover.can_move(&walk, g.z, c))
            .ok_or_else(|| {
                CoreError::domain(format!("z of edge {}-{} cannot leave 4", g.u + 1, g.v + 1))
            })?;
        mover.move_to(&mut walk, g.z, zc)?;
    }
    let [a, b, c, _] = np.special;
    walk.step(c, 4)?;
    let forward = walk.seq.clone();
    walk.step(a, 3)?;
    walk.step(b, 1)?;
    walk.step(a, 2)?;
    for step in &forward.reversed(inst.alpha())? {
        walk.step(step.vertex, step.color)?;
    }
    Ok(walk.seq)
}
