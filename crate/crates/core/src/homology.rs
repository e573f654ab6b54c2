//! Simple closed curves in the dual graph of a dessin.
//!
//! A dual loop is a cyclic sequence of steps, each crossing one dessin edge
//! from one of its sides to the other. Inside every face it passes through,
//! the loop runs along a chord joining the side it entered by to the side it
//! leaves by. The loop is a simple closed curve on the surface exactly when
//! no edge is crossed twice and, within every face, its chords do not
//! interleave around the polygon; faces may be visited several times.
//!
//! Triviality is tested over GF(2): the curve is null-homologous mod 2 iff it
//! crosses every cycle of a primal cycle basis an even number of times. On
//! the torus this is exact for simple curves.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::dessin::{Dessin, SideDirection, SideLocation};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// Leave through the white-to-black side, enter through the black-to-white one.
    Forward,
    Backward,
}

impl Direction {
    pub fn index(self) -> usize {
        match self {
            Direction::Forward => 0,
            Direction::Backward => 1,
        }
    }

    pub fn from_index(i: usize) -> Option<Direction> {
        match i {
            0 => Some(Direction::Forward),
            1 => Some(Direction::Backward),
            _ => None,
        }
    }

    pub fn flipped(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// Dual of dessin edge `edge`, joining the faces holding its two sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualEdge {
    pub edge: usize,
    pub white_to_black: SideLocation,
    pub black_to_white: SideLocation,
}

impl DualEdge {
    pub fn exit(&self, dir: Direction) -> SideLocation {
        match dir {
            Direction::Forward => self.white_to_black,
            Direction::Backward => self.black_to_white,
        }
    }

    pub fn entry(&self, dir: Direction) -> SideLocation {
        self.exit(dir.flipped())
    }

    pub fn is_self_loop(&self) -> bool {
        self.white_to_black.face == self.black_to_white.face
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    pub node_count: usize,
    pub edges: Vec<DualEdge>,
}

impl DualGraph {
    pub fn is_connected(&self) -> bool {
        if self.node_count == 0 {
            return true;
        }
        let mut adjacent = vec![Vec::new(); self.node_count];
        for e in &self.edges {
            adjacent[e.white_to_black.face].push(e.black_to_white.face);
            adjacent[e.black_to_white.face].push(e.white_to_black.face);
        }
        let mut seen = vec![false; self.node_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(f) = queue.pop_front() {
            for &g in &adjacent[f] {
                if !std::mem::replace(&mut seen[g], true) {
                    queue.push_back(g);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

pub fn dual_graph(dessin: &Dessin) -> DualGraph {
    DualGraph {
        node_count: dessin.face_count(),
        edges: (0..dessin.edge_count())
            .map(|edge| DualEdge {
                edge,
                white_to_black: dessin.side_location(edge, SideDirection::WhiteToBlack),
                black_to_white: dessin.side_location(edge, SideDirection::BlackToWhite),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub edge: usize,
    pub direction: Direction,
}

impl Step {
    pub fn new(edge: usize, direction: Direction) -> Self {
        Step { edge, direction }
    }
}

/// Passage of a loop through a face, as walk positions of the entry and exit sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chord {
    pub face: usize,
    pub entry: usize,
    pub exit: usize,
}

/// A validated simple loop. `chords()[i]` is the passage through the face
/// that step `i` leaves (and step `i - 1` enters, cyclically).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualLoop {
    steps: Vec<Step>,
    chords: Vec<Chord>,
}

impl DualLoop {
    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Same curve traversed the other way.
    pub fn reversed_steps(&self) -> Vec<Step> {
        self.steps
            .iter()
            .rev()
            .map(|s| Step::new(s.edge, s.direction.flipped()))
            .collect()
    }
}

/// Whether `x` lies strictly inside the arc running from `a` up to `b`
/// around a polygon with `m` sides.
fn strictly_inside(x: usize, a: usize, b: usize, m: usize) -> bool {
    x != a && (x + m - a) % m < (b + m - a) % m
}

/// Chords with four distinct endpoints interleave iff exactly one endpoint
/// of the second lies inside the arc cut off by the first.
fn interleaved(p: (usize, usize), q: (usize, usize), m: usize) -> bool {
    strictly_inside(q.0, p.0, p.1, m) != strictly_inside(q.1, p.0, p.1, m)
}

/// One crossing-word letter: polygon size `2k` and the offset of the exit
/// side from the entry side, `1 <= offset < 2k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub face_size: usize,
    pub offset: usize,
}

impl Letter {
    /// Named letters for squares, hexagons and octagons crossed between
    /// non-adjacent sides. Offset 2 in a hexagon is `H_r`, offset 4 is `H_l`;
    /// the octagon follows the same orientation.
    pub fn standard_name(&self) -> Option<&'static str> {
        Some(match (self.face_size, self.offset) {
            (4, 2) => "S",
            (6, 3) => "H_d",
            (6, 2) => "H_r",
            (6, 4) => "H_l",
            (8, 4) => "O_d",
            (8, 3) => "O_r",
            (8, 5) => "O_l",
            (8, 2) => "O_R",
            (8, 6) => "O_L",
            _ => return None,
        })
    }

    pub fn name(&self) -> String {
        match self.standard_name() {
            Some(n) => n.to_string(),
            None if self.face_size == 2 => "P_2".to_string(),
            None => format!("P_{}:{}", self.face_size, self.offset),
        }
    }

    pub fn is_even(&self) -> bool {
        self.offset % 2 == 0
    }

    pub fn reversed(&self) -> Letter {
        Letter {
            face_size: self.face_size,
            offset: self.face_size - self.offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingWord {
    pub letters: Vec<Letter>,
}

impl CrossingWord {
    pub fn names(&self) -> Vec<String> {
        self.letters.iter().map(Letter::name).collect()
    }

    /// Letters crossing between sides of equal parity; always even in number
    /// for a closed loop, since every edge crossing swaps side parity.
    pub fn even_letters(&self) -> usize {
        self.letters.iter().filter(|l| l.is_even()).count()
    }
}

/// `{"steps": [[edge_id, dir], ...], "word": ["H_d", ...], "trivial": bool}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoopJson {
    pub steps: Vec<[usize; 2]>,
    pub word: Vec<String>,
    pub trivial: bool,
}

/// Loop machinery over one dessin: dual graph plus a primal cycle basis.
#[derive(Debug, Clone)]
pub struct LoopSpace<'a> {
    dessin: &'a Dessin,
    graph: DualGraph,
    basis: Vec<Vec<usize>>,
}

impl<'a> LoopSpace<'a> {
    pub fn new(dessin: &'a Dessin) -> Self {
        let order: Vec<usize> = (0..dessin.edge_count()).collect();
        Self::with_edge_order(dessin, &order)
    }

    /// Uses a spanning tree grown by scanning edges in `order`.
    pub fn with_edge_order(dessin: &'a Dessin, order: &[usize]) -> Self {
        LoopSpace {
            dessin,
            graph: dual_graph(dessin),
            basis: cycle_basis_with_order(dessin, order),
        }
    }

    pub fn dessin(&self) -> &Dessin {
        self.dessin
    }

    pub fn graph(&self) -> &DualGraph {
        &self.graph
    }

    pub fn basis(&self) -> &[Vec<usize>] {
        &self.basis
    }

    /// Validates a step sequence as a simple loop and derives its chords.
    pub fn check(&self, steps: &[Step]) -> Result<DualLoop> {
        let d = self.graph.edges.len();
        if steps.is_empty() {
            return Err(Error::MalformedLoop("no steps".into()));
        }
        let mut used = vec![false; d];
        for s in steps {
            if s.edge >= d {
                return Err(Error::MalformedLoop(format!(
                    "edge {} out of range",
                    s.edge
                )));
            }
            if std::mem::replace(&mut used[s.edge], true) {
                return Err(Error::MalformedLoop(format!(
                    "edge {} crossed twice",
                    s.edge
                )));
            }
        }
        let n = steps.len();
        let mut chords = Vec::with_capacity(n);
        for i in 0..n {
            let prev = steps[(i + n - 1) % n];
            let entry = self.graph.edges[prev.edge].entry(prev.direction);
            let exit = self.graph.edges[steps[i].edge].exit(steps[i].direction);
            if entry.face != exit.face {
                return Err(Error::MalformedLoop(format!(
                    "step {i} leaves face {} but the loop is in face {}",
                    exit.face, entry.face
                )));
            }
            chords.push(Chord {
                face: exit.face,
                entry: entry.position,
                exit: exit.position,
            });
        }
        for (i, a) in chords.iter().enumerate() {
            let m = self.face_size(a.face);
            for b in &chords[i + 1..] {
                if a.face == b.face && interleaved((a.entry, a.exit), (b.entry, b.exit), m) {
                    return Err(Error::MalformedLoop(format!(
                        "chords cross inside face {}",
                        a.face
                    )));
                }
            }
        }
        Ok(DualLoop {
            steps: steps.to_vec(),
            chords,
        })
    }

    fn face_size(&self, face: usize) -> usize {
        2 * self.dessin.faces()[face].len()
    }

    /// GF(2) intersection with every basis cycle vanishes.
    pub fn is_trivial(&self, l: &DualLoop) -> Result<bool> {
        let l = self.check(&l.steps)?;
        let mut crossed = vec![false; self.graph.edges.len()];
        for s in &l.steps {
            crossed[s.edge] = true;
        }
        Ok(self
            .basis
            .iter()
            .all(|c| c.iter().filter(|&&e| crossed[e]).count() % 2 == 0))
    }

    pub fn word(&self, l: &DualLoop) -> Result<CrossingWord> {
        let l = self.check(&l.steps)?;
        Ok(CrossingWord {
            letters: l
                .chords
                .iter()
                .map(|c| {
                    let m = self.face_size(c.face);
                    Letter {
                        face_size: m,
                        offset: (c.exit + m - c.entry) % m,
                    }
                })
                .collect(),
        })
    }

    pub fn to_json(&self, l: &DualLoop) -> Result<LoopJson> {
        Ok(LoopJson {
            steps: l
                .steps
                .iter()
                .map(|s| [s.edge, s.direction.index()])
                .collect(),
            word: self.word(l)?.names(),
            trivial: self.is_trivial(l)?,
        })
    }

    /// Visits every simple loop with exactly `n` steps once, as its canonical
    /// representative: the rotation and orientation that start by crossing
    /// the loop's least edge forward. That representative is also the
    /// lexicographically least one, and loops are visited in lexicographic
    /// order of their step sequences.
    pub fn for_each_simple_loop<F>(&self, n: usize, mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(DualLoop) -> ControlFlow<()>,
    {
        if n == 0 {
            return ControlFlow::Continue(());
        }
        let d = self.graph.edges.len();
        let mut walk = LoopWalk {
            space: self,
            n,
            first: 0,
            start: SideLocation {
                face: 0,
                position: 0,
            },
            used: vec![false; d],
            steps: Vec::with_capacity(n),
            chords: vec![Vec::new(); self.dessin.face_count()],
        };
        for first in 0..d {
            let step = Step::new(first, Direction::Forward);
            walk.first = first;
            walk.start = self.graph.edges[first].exit(Direction::Forward);
            walk.used[first] = true;
            walk.steps.push(step);
            let entry = self.graph.edges[first].entry(Direction::Forward);
            let flow = walk.extend(entry, &mut visit);
            walk.steps.pop();
            walk.used[first] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }

    pub fn simple_loops(&self, n: usize) -> Vec<DualLoop> {
        let mut out = Vec::new();
        let _ = self.for_each_simple_loop(n, |l| {
            out.push(l);
            ControlFlow::Continue(())
        });
        out
    }

    /// Shortest non-trivial simple loop with at most `max_len` steps, the
    /// first one in enumeration order at that length.
    pub fn min_nontrivial_loop(&self, max_len: usize) -> Option<(usize, DualLoop)> {
        // A simple loop crosses each edge at most once.
        for n in 1..=max_len.min(self.graph.edges.len()) {
            let mut found = None;
            let _ = self.for_each_simple_loop(n, |l| {
                if self.is_trivial(&l).expect("enumerated loops are simple") {
                    ControlFlow::Continue(())
                } else {
                    found = Some(l);
                    ControlFlow::Break(())
                }
            });
            if let Some(l) = found {
                return Some((n, l));
            }
        }
        None
    }
}

struct LoopWalk<'s, 'a> {
    space: &'s LoopSpace<'a>,
    n: usize,
    first: usize,
    start: SideLocation,
    used: Vec<bool>,
    steps: Vec<Step>,
    /// Chords fixed so far, per face; the chord closing the loop in the
    /// start face is only known at the end.
    chords: Vec<Vec<(usize, usize)>>,
}

impl LoopWalk<'_, '_> {
    fn fits(&self, face: usize, chord: (usize, usize)) -> bool {
        let m = self.space.face_size(face);
        self.chords[face].iter().all(|&c| !interleaved(c, chord, m))
    }

    fn extend<F>(&mut self, entry: SideLocation, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(DualLoop) -> ControlFlow<()>,
    {
        if self.steps.len() == self.n {
            if entry.face == self.start.face
                && self.fits(entry.face, (entry.position, self.start.position))
            {
                let l = self
                    .space
                    .check(&self.steps)
                    .expect("walk builds simple loops");
                return visit(l);
            }
            return ControlFlow::Continue(());
        }
        let edges = &self.space.graph.edges;
        for e in self.first + 1..edges.len() {
            if self.used[e] {
                continue;
            }
            for dir in [Direction::Forward, Direction::Backward] {
                let exit = edges[e].exit(dir);
                let chord = (entry.position, exit.position);
                if exit.face != entry.face || !self.fits(entry.face, chord) {
                    continue;
                }
                self.used[e] = true;
                self.steps.push(Step::new(e, dir));
                self.chords[entry.face].push(chord);
                let flow = self.extend(edges[e].entry(dir), visit);
                self.chords[entry.face].pop();
                self.steps.pop();
                self.used[e] = false;
                flow?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Fundamental cycles of a BFS spanning forest of the primal graph (white
/// and black vertices, dessin edges), scanning edges in `order`.
fn cycle_basis_with_order(dessin: &Dessin, order: &[usize]) -> Vec<Vec<usize>> {
    let whites = dessin.white_vertices().len();
    let v = dessin.vertex_count();
    let ends: Vec<(usize, usize)> = (0..dessin.edge_count())
        .map(|e| {
            let (w, b) = dessin.endpoints(e);
            (w.id, whites + b.id)
        })
        .collect();
    let mut adjacent = vec![Vec::new(); v];
    for &e in order {
        let (a, b) = ends[e];
        adjacent[a].push((e, b));
        adjacent[b].push((e, a));
    }
    // parent[x] = (parent vertex, tree edge)
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; v];
    let mut depth = vec![usize::MAX; v];
    let mut tree_edge = vec![false; ends.len()];
    let roots = std::iter::once(order.first().map_or(0, |&e| ends[e].0)).chain(0..v);
    for root in roots {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(e, y) in &adjacent[x] {
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    parent[y] = Some((x, e));
                    tree_edge[e] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    let mut basis = Vec::new();
    for &e in order {
        if tree_edge[e] {
            continue;
        }
        let (mut a, mut b) = ends[e];
        let mut cycle = vec![e];
        while a != b {
            if depth[a] < depth[b] {
                std::mem::swap(&mut a, &mut b);
            }
            let (up, via) = parent[a].expect("non-root vertex has a parent");
            cycle.push(via);
            a = up;
        }
        cycle.sort_unstable();
        basis.push(cycle);
    }
    basis
}

pub fn primal_cycle_basis(dessin: &Dessin) -> Vec<Vec<usize>> {
    LoopSpace::new(dessin).basis
}

pub fn is_loop_trivial(dessin: &Dessin, l: &DualLoop) -> Result<bool> {
    LoopSpace::new(dessin).is_trivial(l)
}

pub fn enumerate_simple_loops(dessin: &Dessin, n: usize) -> Vec<DualLoop> {
    LoopSpace::new(dessin).simple_loops(n)
}

pub fn min_nontrivial_loop(dessin: &Dessin, max_len: usize) -> Option<(usize, DualLoop)> {
    LoopSpace::new(dessin).min_nontrivial_loop(max_len)
}

pub fn loop_word(dessin: &Dessin, l: &DualLoop) -> Result<CrossingWord> {
    LoopSpace::new(dessin).word(l)
}
