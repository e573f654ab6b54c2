//! Permutations of `{0..d-1}`.
//!
//! Composition convention, shared by every module: `p.compose(q)` is the
//! permutation `x -> p(q(x))`, i.e. the right factor is applied first. A
//! constellation `(s1, s2, s3)` satisfies `s1.compose(s2).compose(s3) == id`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::model::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &y in &images {
            if y >= d {
                return Err(Error::NotAPermutation(format!(
                    "image {y} out of range 0..{d}"
                )));
            }
            if std::mem::replace(&mut seen[y], true) {
                return Err(Error::NotAPermutation(format!("image {y} repeated")));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles; points not mentioned are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::NotAPermutation(format!(
                        "point {x} out of range 0..{degree}"
                    )));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::NotAPermutation(format!("point {x} in two cycles")));
                }
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses the text form `"(0 1 2)(3 4)"`; `"()"` is the identity.
    pub fn parse(degree: usize, text: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::NotAPermutation(format!("cannot parse {text:?}")))?;
            let cycle = body
                .0
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::NotAPermutation(format!("bad point {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body.1.trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `x -> self(q(x))`.
    pub fn compose(&self, q: &Permutation) -> Result<Permutation> {
        if self.degree() != q.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: q.degree(),
            });
        }
        Ok(Permutation {
            images: q.images.iter().map(|&y| self.images[y]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Permutation { images }
    }

    /// `g * self * g^-1`.
    pub fn conjugate_by(&self, g: &Permutation) -> Result<Permutation> {
        g.compose(self)?.compose(&g.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn cycles(&self) -> CycleDecomposition {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut cycles = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            cycles.push(cycle);
        }
        // Each cycle already starts at its minimum; the sort is stable on minima.
        cycles.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        CycleDecomposition { cycles }
    }

    pub fn cycle_type(&self) -> Partition {
        let lengths = self.cycles().cycles.iter().map(Vec::len).collect();
        Partition::from_parts(lengths).expect("cycles are non-empty")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "()");
        }
        for cycle in self.cycles().cycles.iter().filter(|c| c.len() > 1) {
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Disjoint cycles including fixed points, each rotated to start at its
/// minimum, sorted by length descending then by minimum ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn into_cycles(self) -> Vec<Vec<usize>> {
        self.cycles
    }
}

pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    p.compose(q)
}

pub fn inverse(p: &Permutation) -> Permutation {
    p.inverse()
}

pub fn cycle_type(p: &Permutation) -> Partition {
    p.cycle_type()
}

/// The permutation whose cycles are consecutive blocks of integers, taken
/// in the (descending) order of the parts.
pub fn canonical_of_type(pi: &Partition) -> Permutation {
    let mut images = Vec::with_capacity(pi.total());
    let mut start = 0;
    for &k in pi.parts() {
        images.extend(start + 1..start + k);
        images.push(start);
        start += k;
    }
    Permutation { images }
}

struct DisjointSets {
    parent: Vec<usize>,
    components: usize,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            components: n,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
            self.components -= 1;
        }
    }
}

/// Whether the group generated by `perms` acts transitively on `{0..d-1}`.
pub fn is_transitive(perms: &[Permutation], d: usize) -> Result<bool> {
    if let Some(p) = perms.iter().find(|p| p.degree() != d) {
        return Err(Error::DegreeMismatch {
            left: p.degree(),
            right: d,
        });
    }
    Ok(transitive_images(perms.iter().map(Permutation::images), d))
}

pub(crate) fn transitive_images<'a>(gens: impl Iterator<Item = &'a [usize]>, d: usize) -> bool {
    if d <= 1 {
        return true;
    }
    let mut sets = DisjointSets::new(d);
    for images in gens {
        for (x, &y) in images.iter().enumerate() {
            sets.union(x, y);
        }
    }
    sets.components == 1
}

/// Generators of the centralizer of `canonical_of_type(pi)`: a rotation of
/// every non-trivial cycle and a block swap of every adjacent pair of
/// equal-length cycles.
pub fn centralizer_generators(pi: &Partition) -> Vec<Permutation> {
    let d = pi.total();
    let canonical = canonical_of_type(pi);
    let mut gens = Vec::new();
    let mut start = 0;
    let parts = pi.parts();
    for (i, &k) in parts.iter().enumerate() {
        if k > 1 {
            let mut images: Vec<usize> = (0..d).collect();
            images[start..start + k].copy_from_slice(&canonical.images[start..start + k]);
            gens.push(Permutation { images });
        }
        if i + 1 < parts.len() && parts[i + 1] == k {
            let mut images: Vec<usize> = (0..d).collect();
            for j in 0..k {
                images[start + j] = start + k + j;
                images[start + k + j] = start + j;
            }
            gens.push(Permutation { images });
        }
        start += k;
    }
    gens
}

/// All elements of the centralizer of `canonical_of_type(pi)`, obtained by
/// closing the generators under composition. Returns `None` when the group
/// order exceeds `limit`.
pub fn centralizer_elements(pi: &Partition, limit: usize) -> Option<Vec<Permutation>> {
    if pi.centralizer_order() > limit as u128 {
        return None;
    }
    let gens = centralizer_generators(pi);
    let identity = Permutation::identity(pi.total());
    let mut seen: HashSet<Permutation> = HashSet::from([identity.clone()]);
    let mut elements = vec![identity.clone()];
    let mut queue = VecDeque::from([identity]);
    while let Some(g) = queue.pop_front() {
        for s in &gens {
            let h = s.compose(&g).expect("same degree");
            if seen.insert(h.clone()) {
                elements.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    elements.sort();
    Some(elements)
}

const UNSET: usize = usize::MAX;

#[derive(Clone, Copy)]
enum Undo {
    Close {
        len: usize,
    },
    Extend {
        tail: usize,
        head: usize,
        old_len: usize,
    },
}

/// Depth-first assignment of `images[0], images[1], ...` in ascending order,
/// so complete permutations come out in lexicographic order of their image
/// sequences. Partial assignments are tracked as open paths that must close
/// into cycles of the prescribed lengths.
#[derive(Clone)]
pub(crate) struct TypeSearch {
    d: usize,
    images: Vec<usize>,
    has_preimage: Vec<bool>,
    /// For a path tail: its head and its number of points.
    head: Vec<usize>,
    len: Vec<usize>,
    /// For a path head: its tail.
    tail: Vec<usize>,
    /// Cycles still to be closed, indexed by length.
    remaining: Vec<usize>,
    open_paths: usize,
    open_cycles: usize,
    depth: usize,
    next_choice: Vec<usize>,
    undo: Vec<Undo>,
    floor: usize,
    started: bool,
}

impl TypeSearch {
    pub(crate) fn new(pi: &Partition) -> Self {
        let d = pi.total();
        let mut remaining = vec![0; d + 1];
        for &k in pi.parts() {
            remaining[k] += 1;
        }
        TypeSearch {
            d,
            images: vec![UNSET; d],
            has_preimage: vec![false; d],
            head: (0..d).collect(),
            len: vec![1; d],
            tail: (0..d).collect(),
            remaining,
            open_paths: d,
            open_cycles: pi.len(),
            depth: 0,
            next_choice: vec![0; d + 1],
            undo: Vec::with_capacity(d),
            floor: 0,
            started: false,
        }
    }

    pub(crate) fn images(&self) -> &[usize] {
        &self.images
    }

    fn max_remaining(&self) -> usize {
        (1..=self.d)
            .rev()
            .find(|&k| self.remaining[k] > 0)
            .unwrap_or(0)
    }

    /// Next admissible image for the current position, at or after `from`.
    fn next_admissible(&self, from: usize) -> Option<usize> {
        let pos = self.depth;
        let h = self.head[pos];
        let l = self.len[pos];
        let can_close = self.remaining[l] > 0;
        // Joining two paths leaves one more path than cycles to close.
        let cap = if self.open_paths > self.open_cycles {
            self.max_remaining()
        } else {
            0
        };
        (from..self.d).find(|&j| {
            !self.has_preimage[j]
                && if j == h {
                    can_close
                } else {
                    l + self.len[self.tail[j]] <= cap
                }
        })
    }

    fn apply(&mut self, j: usize) {
        let pos = self.depth;
        let h = self.head[pos];
        let l = self.len[pos];
        self.images[pos] = j;
        self.has_preimage[j] = true;
        if j == h {
            self.remaining[l] -= 1;
            self.open_cycles -= 1;
            self.undo.push(Undo::Close { len: l });
        } else {
            let t = self.tail[j];
            self.undo.push(Undo::Extend {
                tail: t,
                head: self.head[t],
                old_len: self.len[t],
            });
            self.head[t] = h;
            self.len[t] += l;
            self.tail[h] = t;
        }
        self.open_paths -= 1;
        self.depth += 1;
        self.next_choice[self.depth] = 0;
    }

    fn retract(&mut self) {
        self.depth -= 1;
        let pos = self.depth;
        let j = self.images[pos];
        self.images[pos] = UNSET;
        self.has_preimage[j] = false;
        self.open_paths += 1;
        match self.undo.pop().expect("undo stack matches depth") {
            Undo::Close { len } => {
                self.remaining[len] += 1;
                self.open_cycles += 1;
            }
            Undo::Extend {
                tail,
                head,
                old_len,
            } => {
                let h = self.head[tail];
                self.tail[h] = pos;
                self.head[tail] = head;
                self.len[tail] = old_len;
            }
        }
    }

    /// Advances to the next state at depth `stop`, in lexicographic order.
    pub(crate) fn advance_to(&mut self, stop: usize) -> bool {
        if !self.started {
            self.started = true;
            if self.depth == stop {
                return true;
            }
        } else {
            if self.depth == self.floor {
                return false;
            }
            self.retract();
        }
        loop {
            let pos = self.depth;
            match self.next_admissible(self.next_choice[pos]) {
                Some(j) => {
                    self.next_choice[pos] = j + 1;
                    self.apply(j);
                    if self.depth == stop {
                        return true;
                    }
                }
                None => {
                    if self.depth == self.floor {
                        return false;
                    }
                    self.retract();
                }
            }
        }
    }

    /// A fresh search over the subtree below the current state.
    pub(crate) fn subtree(&self) -> TypeSearch {
        let mut s = self.clone();
        s.floor = s.depth;
        s.started = false;
        s.next_choice[s.depth] = 0;
        s
    }

    /// Splits the search into subtrees rooted at the first depth having at
    /// least `min_blocks` feasible prefixes. Subtrees are returned in
    /// lexicographic order, so concatenating their outputs reproduces the
    /// unsplit order.
    pub(crate) fn split(pi: &Partition, min_blocks: usize) -> Vec<TypeSearch> {
        let d = pi.total();
        let mut depth = 0;
        loop {
            let mut root = TypeSearch::new(pi);
            let mut blocks = Vec::new();
            while root.advance_to(depth) {
                blocks.push(root.subtree());
            }
            if blocks.len() >= min_blocks || depth + 1 >= d {
                return blocks;
            }
            depth += 1;
        }
    }
}

/// Every permutation of cycle type `pi`, each exactly once, in lexicographic
/// order of image sequences.
pub struct TypedPermutations {
    search: TypeSearch,
    done: bool,
}

impl TypedPermutations {
    /// Lending variant of `next`; avoids an allocation per permutation.
    pub fn next_images(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if self.search.advance_to(self.search.d) {
            Some(self.search.images())
        } else {
            self.done = true;
            None
        }
    }
}

impl Iterator for TypedPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        self.next_images().map(|images| Permutation {
            images: images.to_vec(),
        })
    }
}

pub fn enumerate_of_type(pi: &Partition) -> TypedPermutations {
    TypedPermutations {
        search: TypeSearch::new(pi),
        done: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(d: usize, s: &str) -> Permutation {
        Permutation::parse(d, s).unwrap()
    }

    fn part(v: &[usize]) -> Partition {
        Partition::from_parts(v.to_vec()).unwrap()
    }

    fn partitions_of(n: usize, max: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=n.min(max)).rev() {
            for mut rest in partitions_of(n - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    // Heap's algorithm: all d! permutations, independent of the typed enumerator.
    fn all_permutations(d: usize) -> Vec<Vec<usize>> {
        fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k <= 1 {
                out.push(a.clone());
                return;
            }
            for i in 0..k {
                heap(k - 1, a, out);
                if k % 2 == 0 {
                    a.swap(i, k - 1);
                } else {
                    a.swap(0, k - 1);
                }
            }
        }
        let mut out = Vec::new();
        heap(d, &mut (0..d).collect(), &mut out);
        out
    }

    #[test]
    fn compose_examples() {
        let c = perm(3, "(0 1 2)");
        assert_eq!(c.compose(&c).unwrap(), perm(3, "(0 2 1)"));
        let q = perm(4, "(0 3)(1 2)");
        assert_eq!(Permutation::identity(4).compose(&q).unwrap(), q);
        let t = perm(2, "(0 1)");
        assert!(t.compose(&t).unwrap().is_identity());
        assert_eq!(
            c.compose(&t),
            Err(Error::DegreeMismatch { left: 3, right: 2 })
        );
        // apply the right factor first: (0 1) then (0 1 2) sends 0 -> 1 -> 2
        assert_eq!(c.compose(&perm(3, "(0 1)")).unwrap().apply(0), 2);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(perm(3, "(0 1 2)").inverse(), perm(3, "(0 2 1)"));
        assert_eq!(Permutation::identity(5).inverse(), Permutation::identity(5));
        let p = perm(4, "(0 1)(2 3)");
        assert_eq!(p.inverse(), p);
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(perm(6, "(0 1 2)(3 4 5)").cycle_type(), part(&[3, 3]));
        assert_eq!(Permutation::identity(4).cycle_type(), part(&[1, 1, 1, 1]));
        assert_eq!(perm(6, "(0 1 2 3)(4 5)").cycle_type(), part(&[4, 2]));
    }

    #[test]
    fn text_form() {
        assert_eq!(perm(6, "(4 5)(0 1 2 3)").to_string(), "(0 1 2 3)(4 5)");
        assert_eq!(perm(6, "(5 3)(2 1)(4 0)").to_string(), "(0 4)(1 2)(3 5)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(perm(3, "()"), Permutation::identity(3));
        assert_eq!(
            perm(5, "(3 4)(1 2 0)").cycles().cycles(),
            &[vec![0, 1, 2], vec![3, 4]]
        );
        assert!(Permutation::parse(3, "(0 1)(1 2)").is_err());
        assert!(Permutation::parse(3, "(0 3)").is_err());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_of_type(&part(&[4, 2])), perm(6, "(0 1 2 3)(4 5)"));
        assert_eq!(canonical_of_type(&part(&[3, 3])), perm(6, "(0 1 2)(3 4 5)"));
        assert!(canonical_of_type(&part(&[1, 1])).is_identity());
    }

    #[test]
    fn transitivity_examples() {
        assert!(!is_transitive(&[perm(6, "(0 1 2)(3 4 5)")], 6).unwrap());
        assert!(!is_transitive(&[perm(6, "(0 1 2)"), perm(6, "(3 4 5)")], 6).unwrap());
        assert!(is_transitive(&[perm(6, "(0 1 2 3 4 5)")], 6).unwrap());
        assert!(is_transitive(&[perm(3, "(0 1 2)"), perm(3, "(0 1)")], 3).unwrap());
        assert!(is_transitive(&[], 1).unwrap());
        assert!(is_transitive(&[perm(3, "(0 1)")], 4).is_err());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_of_type(&part(&[2, 2])).count(), 3);
        assert_eq!(enumerate_of_type(&part(&[3, 3])).count(), 40);
        let ids: Vec<_> = enumerate_of_type(&part(&[1])).collect();
        assert_eq!(ids, vec![Permutation::identity(1)]);
        let first_two: Vec<_> = enumerate_of_type(&part(&[3])).collect();
        assert_eq!(first_two, vec![perm(3, "(0 1 2)"), perm(3, "(0 2 1)")]);
    }

    #[test]
    fn enumeration_matches_brute_force_up_to_degree_6() {
        for d in 1..=6 {
            let everything = all_permutations(d);
            for parts in partitions_of(d, d) {
                let pi = part(&parts);
                let mut expected: Vec<Vec<usize>> = everything
                    .iter()
                    .filter(|im| Permutation::from_images(im.to_vec()).unwrap().cycle_type() == pi)
                    .cloned()
                    .collect();
                expected.sort();
                let got: Vec<Vec<usize>> = enumerate_of_type(&pi)
                    .map(|p| p.images().to_vec())
                    .collect();
                assert_eq!(got, expected, "type {pi}");
                assert_eq!(got.len() as u128, pi.class_size(), "type {pi}");
            }
        }
    }

    #[test]
    fn split_blocks_concatenate_to_full_order() {
        for parts in [vec![3, 3], vec![4, 2], vec![2, 2, 1, 1], vec![3, 2, 1, 1]] {
            let pi = part(&parts);
            let full: Vec<_> = enumerate_of_type(&pi).collect();
            for min_blocks in [1, 4, 50] {
                let mut joined = Vec::new();
                for mut block in TypeSearch::split(&pi, min_blocks) {
                    while block.advance_to(pi.total()) {
                        joined.push(Permutation::from_images(block.images().to_vec()).unwrap());
                    }
                }
                assert_eq!(joined, full, "type {pi}, {min_blocks} blocks");
            }
        }
    }

    #[test]
    fn centralizer_examples() {
        let gens = centralizer_generators(&part(&[3, 3]));
        assert_eq!(
            gens,
            vec![
                perm(6, "(0 1 2)"),
                perm(6, "(0 3)(1 4)(2 5)"),
                perm(6, "(3 4 5)")
            ]
        );
        assert_eq!(
            centralizer_elements(&part(&[3, 3]), 1000).unwrap().len(),
            18
        );
        assert_eq!(
            centralizer_generators(&part(&[5])),
            vec![perm(5, "(0 1 2 3 4)")]
        );
        assert_eq!(centralizer_elements(&part(&[5]), 1000).unwrap().len(), 5);
        assert_eq!(
            centralizer_generators(&part(&[1, 1, 1, 1])),
            vec![perm(4, "(0 1)"), perm(4, "(1 2)"), perm(4, "(2 3)")]
        );
        assert_eq!(
            centralizer_elements(&part(&[1, 1, 1, 1]), 1000)
                .unwrap()
                .len(),
            24
        );
        assert!(centralizer_elements(&part(&[1; 10]), 1000).is_none());
        let big = part(&[4, 2, 3, 3, 3]);
        assert_eq!(centralizer_elements(&big, 10_000).unwrap().len(), 1296);
    }

    #[test]
    fn centralizer_orders_match_formula() {
        for d in 1..=7 {
            for parts in partitions_of(d, d) {
                let pi = part(&parts);
                let c = canonical_of_type(&pi);
                for g in centralizer_generators(&pi) {
                    assert_eq!(g.compose(&c).unwrap(), c.compose(&g).unwrap());
                }
                let elements = centralizer_elements(&pi, 10_000).unwrap();
                assert_eq!(elements.len() as u128, pi.centralizer_order(), "type {pi}");
            }
        }
    }

    fn arb_perm(d: usize) -> impl Strategy<Value = Permutation> {
        Just((0..d).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    fn arb_triple() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
        (1usize..10).prop_flat_map(|d| (arb_perm(d), arb_perm(d), arb_perm(d)))
    }

    proptest! {
        #[test]
        fn group_laws((p, q, r) in arb_triple()) {
            let left = p.compose(&q).unwrap().compose(&r).unwrap();
            let right = p.compose(&q.compose(&r).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
            prop_assert_eq!(p.inverse().inverse(), p.clone());
            prop_assert_eq!(p.conjugate_by(&q).unwrap().cycle_type(), p.cycle_type());
            prop_assert_eq!(Permutation::parse(p.degree(), &p.to_string()).unwrap(), p);
        }
    }
}
