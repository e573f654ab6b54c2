//! Exhaustive constellation search.
//!
//! For a three-point datum one partition is assigned the *fixed* role and
//! its permutation is frozen to `canonical_of_type`; realizability is
//! invariant under simultaneous conjugation, so one representative of that
//! class suffices. A second partition is the *free* variable, enumerated in
//! lexicographic order, and the third permutation is derived as
//! `(fixed . free)^-1`. The fixed role goes to the partition with the
//! smallest centralizer (largest class), the free role to the remaining one
//! with the largest centralizer (smallest class); ties go to the earlier
//! input position.
//!
//! With centralizer reduction, free candidates are restricted to the
//! lexicographic minima of their orbits under conjugation by the centralizer
//! of the fixed permutation. That conjugation preserves every acceptance
//! condition, so decisions do not change and counts are recovered from
//! orbit sizes.

use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{BranchDatum, Partition};
use crate::perm::{self, canonical_of_type, centralizer_elements, Permutation, TypeSearch};

/// Centralizers larger than this are not materialized; the search then runs
/// unreduced and reports `reduced: false`.
pub const CENTRALIZER_LIMIT: usize = 100_000;

const CANCEL_CHECK_INTERVAL: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub use_centralizer_reduction: bool,
    pub parallelism_hint: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            use_centralizer_reduction: true,
            parallelism_hint: 1,
        }
    }
}

/// Permutations `s1..sn` of a common degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constellation {
    sigmas: Vec<Permutation>,
}

impl Constellation {
    pub fn new(sigmas: Vec<Permutation>) -> Result<Self> {
        let d = sigmas.first().map_or(0, Permutation::degree);
        if let Some(p) = sigmas.iter().find(|p| p.degree() != d) {
            return Err(Error::DegreeMismatch {
                left: d,
                right: p.degree(),
            });
        }
        Ok(Constellation { sigmas })
    }

    pub fn degree(&self) -> usize {
        self.sigmas.first().map_or(0, Permutation::degree)
    }

    pub fn sigmas(&self) -> &[Permutation] {
        &self.sigmas
    }

    /// Product `s1 . s2 . ... . sn` (rightmost applied first).
    pub fn product(&self) -> Permutation {
        self.sigmas
            .iter()
            .fold(Permutation::identity(self.degree()), |acc, s| {
                acc.compose(s).expect("degrees checked at construction")
            })
    }

    /// Datum read off the cycle types, if it is a valid one.
    pub fn induced_datum(&self) -> Result<BranchDatum> {
        BranchDatum::from_partitions(
            self.degree(),
            self.sigmas.iter().map(Permutation::cycle_type).collect(),
        )
    }

    pub fn to_json(&self) -> WitnessJson {
        WitnessJson {
            degree: self.degree(),
            sigma: self
                .sigmas
                .iter()
                .map(|s| s.cycles().into_cycles())
                .collect(),
            partitions: None,
        }
    }

    pub fn from_json(w: &WitnessJson) -> Result<Self> {
        let sigmas = w
            .sigma
            .iter()
            .map(|cycles| Permutation::from_cycles(w.degree, cycles))
            .collect::<Result<Vec<_>>>()?;
        Constellation::new(sigmas)
    }
}

/// Witness file: `{"degree": d, "sigma": [[[cycle],...], ...]}`, optionally
/// carrying the `partitions` it is claimed to realize.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessJson {
    pub degree: usize,
    pub sigma: Vec<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partitions: Option<Vec<Vec<i64>>>,
}

/// Datum positions assigned to the fixed, free and derived permutations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Roles {
    pub fixed: usize,
    pub free: usize,
    pub derived: usize,
}

impl Roles {
    pub fn choose(datum: &BranchDatum) -> Roles {
        let orders: Vec<u128> = datum
            .partitions()
            .iter()
            .map(Partition::centralizer_order)
            .collect();
        let fixed = (0..3)
            .min_by_key(|&i| (orders[i], i))
            .expect("three points");
        let rest: Vec<usize> = (0..3).filter(|&i| i != fixed).collect();
        let (free, derived) = if orders[rest[1]] > orders[rest[0]] {
            (rest[1], rest[0])
        } else {
            (rest[0], rest[1])
        };
        Roles {
            fixed,
            free,
            derived,
        }
    }

    fn is_cyclic(&self) -> bool {
        self.free == (self.fixed + 1) % 3
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub realizable: bool,
    pub witness: Option<Constellation>,
    pub candidates_examined: u64,
    pub reduced: bool,
    pub roles: Roles,
    /// Set when the caller asked for a full count.
    pub count: Option<u64>,
}

#[derive(Serialize)]
struct DecisionJson {
    realizable: bool,
    witness: Option<WitnessJson>,
    candidates_examined: u64,
    reduced: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<u64>,
}

impl Decision {
    /// `{"realizable": bool, "witness": <witness|null>, "candidates_examined": int, "reduced": bool}`
    /// with a trailing `"count"` when present.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&DecisionJson {
            realizable: self.realizable,
            witness: self.witness.as_ref().map(Constellation::to_json),
            candidates_examined: self.candidates_examined,
            reduced: self.reduced,
            count: self.count,
        })
        .expect("decision serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub count: u64,
    pub candidates_examined: u64,
    /// Size of the free variable's conjugacy class.
    pub candidates_total: u128,
    pub reduced: bool,
    pub roles: Roles,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub product_is_identity: bool,
    pub cycle_types_match: Vec<bool>,
    pub transitive: bool,
}

impl WitnessReport {
    pub fn passes(&self) -> bool {
        self.product_is_identity && self.transitive && self.cycle_types_match.iter().all(|&b| b)
    }
}

/// Checks the three constellation conditions independently.
pub fn verify_witness(datum: &BranchDatum, c: &Constellation) -> Result<WitnessReport> {
    verify_witness_partitions(datum.degree(), datum.partitions(), c)
}

/// Same as [`verify_witness`] against bare partitions, which need not form a
/// valid datum (a disconnected cover has Euler characteristic above 2).
pub fn verify_witness_partitions(
    degree: usize,
    partitions: &[Partition],
    c: &Constellation,
) -> Result<WitnessReport> {
    if c.degree() != degree {
        return Err(Error::DegreeMismatch {
            left: c.degree(),
            right: degree,
        });
    }
    if c.sigmas().len() != partitions.len() {
        return Err(Error::Unsupported(format!(
            "witness has {} permutations, datum has {} branching points",
            c.sigmas().len(),
            partitions.len()
        )));
    }
    Ok(WitnessReport {
        product_is_identity: c.product().is_identity(),
        cycle_types_match: c
            .sigmas()
            .iter()
            .zip(partitions)
            .map(|(s, p)| &s.cycle_type() == p)
            .collect(),
        transitive: perm::is_transitive(c.sigmas(), c.degree())?,
    })
}

/// Non-identity centralizer elements with their inverses, as flat image tables.
struct Centralizer {
    degree: usize,
    forward: Vec<usize>,
    backward: Vec<usize>,
}

impl Centralizer {
    fn new(elements: &[Permutation]) -> Self {
        let degree = elements.first().map_or(0, Permutation::degree);
        let mut forward = Vec::new();
        let mut backward = Vec::new();
        for g in elements.iter().filter(|g| !g.is_identity()) {
            forward.extend_from_slice(g.images());
            backward.extend_from_slice(g.inverse().images());
        }
        Centralizer {
            degree,
            forward,
            backward,
        }
    }

    fn pairs(&self) -> impl Iterator<Item = (&[usize], &[usize])> {
        let d = self.degree.max(1);
        self.forward
            .chunks_exact(d)
            .zip(self.backward.chunks_exact(d))
    }

    /// Whether no conjugate `g t g^-1` is lexicographically smaller than `t`.
    fn is_orbit_min(&self, t: &[usize]) -> bool {
        for (g, ginv) in self.pairs() {
            for y in 0..t.len() {
                let c = g[t[ginv[y]]];
                if c < t[y] {
                    return false;
                }
                if c > t[y] {
                    break;
                }
            }
        }
        true
    }

    fn orbit_size(&self, t: &[usize]) -> u64 {
        let mut orbit: HashSet<Vec<usize>> = HashSet::from([t.to_vec()]);
        for (g, ginv) in self.pairs() {
            orbit.insert((0..t.len()).map(|y| g[t[ginv[y]]]).collect());
        }
        orbit.len() as u64
    }
}

struct Plan {
    roles: Roles,
    fixed: Permutation,
    free_type: Partition,
    /// Required cycle counts of the derived permutation, indexed by length.
    derived_counts: Vec<usize>,
    centralizer: Option<Centralizer>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    FirstWitness,
    Count,
}

#[derive(Default)]
struct BlockResult {
    examined: u64,
    count: u64,
    found: Option<Vec<usize>>,
}

impl Plan {
    fn new(datum: &BranchDatum, opts: &SearchOptions) -> Result<Plan> {
        if datum.branch_points() != 3 {
            return Err(Error::Unsupported(format!(
                "search handles 3 branching points, datum has {}",
                datum.branch_points()
            )));
        }
        let roles = Roles::choose(datum);
        let parts = datum.partitions();
        let fixed_type = &parts[roles.fixed];
        let mut derived_counts = vec![0; datum.degree() + 1];
        for &k in parts[roles.derived].parts() {
            derived_counts[k] += 1;
        }
        let centralizer = if opts.use_centralizer_reduction {
            centralizer_elements(fixed_type, CENTRALIZER_LIMIT).map(|e| Centralizer::new(&e))
        } else {
            None
        };
        Ok(Plan {
            roles,
            fixed: canonical_of_type(fixed_type),
            free_type: parts[roles.free].clone(),
            derived_counts,
            centralizer,
        })
    }

    fn reduced(&self) -> bool {
        self.centralizer.is_some()
    }

    fn accepts(&self, t: &[usize], seen: &mut [bool], counts: &mut [usize]) -> bool {
        let fixed = self.fixed.images();
        seen.fill(false);
        counts.fill(0);
        // The derived permutation is the inverse of fixed . t, same cycle type.
        for start in 0..t.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = fixed[t[x]];
            }
            counts[len] += 1;
            if counts[len] > self.derived_counts[len] {
                return false;
            }
        }
        perm::transitive_images([fixed, t].into_iter(), t.len())
    }

    fn run_block(
        &self,
        search: &mut TypeSearch,
        mode: Mode,
        cancel: Option<(&AtomicUsize, usize)>,
    ) -> BlockResult {
        let d = self.fixed.degree();
        let mut seen = vec![false; d];
        let mut counts = vec![0; d + 1];
        let mut out = BlockResult::default();
        let mut visited = 0u64;
        while search.advance_to(d) {
            visited += 1;
            if let Some((best, me)) = cancel {
                if visited % CANCEL_CHECK_INTERVAL == 0 && best.load(Ordering::Relaxed) < me {
                    break;
                }
            }
            let t = search.images();
            if let Some(c) = &self.centralizer {
                if !c.is_orbit_min(t) {
                    continue;
                }
            }
            out.examined += 1;
            if !self.accepts(t, &mut seen, &mut counts) {
                continue;
            }
            match mode {
                Mode::FirstWitness => {
                    out.found = Some(t.to_vec());
                    out.count = 1;
                    break;
                }
                Mode::Count => {
                    out.count += match &self.centralizer {
                        Some(c) => c.orbit_size(t),
                        None => 1,
                    };
                }
            }
        }
        out
    }

    /// Runs the whole free-variable stream, possibly split into contiguous
    /// blocks over a worker pool, and merges the block results in order.
    fn drive(&self, mode: Mode, jobs: usize) -> BlockResult {
        let jobs = jobs.max(1);
        if jobs == 1 || self.free_type.total() < 3 {
            let mut search = TypeSearch::new(&self.free_type);
            return self.run_block(&mut search, mode, None);
        }
        let blocks = TypeSearch::split(&self.free_type, jobs * 16);
        let best = AtomicUsize::new(usize::MAX);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        let results: Vec<Option<BlockResult>> = pool.install(|| {
            blocks
                .into_par_iter()
                .enumerate()
                .map(|(i, mut block)| {
                    if mode == Mode::FirstWitness && best.load(Ordering::Relaxed) < i {
                        return None;
                    }
                    let cancel = (mode == Mode::FirstWitness).then_some((&best, i));
                    let r = self.run_block(&mut block, mode, cancel);
                    if r.found.is_some() {
                        best.fetch_min(i, Ordering::Relaxed);
                    }
                    Some(r)
                })
                .collect()
        });
        let mut merged = BlockResult::default();
        for r in results {
            // Blocks before the first witness block always run to completion.
            let r = r.expect("blocks before the first witness are never skipped");
            merged.examined += r.examined;
            merged.count += r.count;
            if mode == Mode::FirstWitness && r.found.is_some() {
                merged.found = r.found;
                break;
            }
        }
        merged
    }

    /// Places the fixed, free and derived permutations back in datum order.
    fn arrange(&self, free: &[usize]) -> Constellation {
        let free = Permutation::from_images(free.to_vec()).expect("enumerated permutation");
        let derived = self.fixed.compose(&free).expect("same degree").inverse();
        let mut triple = [self.fixed.clone(), free, derived];
        if !self.roles.is_cyclic() {
            // abc = 1 implies c^-1 b^-1 a^-1 = 1; inverses keep cycle types.
            for s in triple.iter_mut() {
                *s = s.inverse();
            }
        }
        let mut sigmas = vec![Permutation::identity(0); 3];
        let [a, b, c] = triple;
        sigmas[self.roles.fixed] = a;
        sigmas[self.roles.free] = b;
        sigmas[self.roles.derived] = c;
        Constellation::new(sigmas).expect("same degree")
    }
}

/// Decides whether the datum is realized by some constellation. The witness,
/// when present, comes from the lexicographically least accepted free
/// candidate and does not depend on `parallelism_hint`.
pub fn decide_realizability(datum: &BranchDatum, opts: &SearchOptions) -> Result<Decision> {
    let plan = Plan::new(datum, opts)?;
    let r = plan.drive(Mode::FirstWitness, opts.parallelism_hint);
    Ok(Decision {
        realizable: r.found.is_some(),
        witness: r.found.as_deref().map(|t| plan.arrange(t)),
        candidates_examined: r.examined,
        reduced: plan.reduced(),
        roles: plan.roles,
        count: None,
    })
}

/// Number of accepted free candidates with the fixed permutation frozen.
pub fn count_constellations(datum: &BranchDatum, opts: &SearchOptions) -> Result<CountReport> {
    let plan = Plan::new(datum, opts)?;
    let r = plan.drive(Mode::Count, opts.parallelism_hint);
    Ok(CountReport {
        count: r.count,
        candidates_examined: r.examined,
        candidates_total: plan.free_type.class_size(),
        reduced: plan.reduced(),
        roles: plan.roles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{control_family_datum, paper_family_datum};

    fn datum(d: i64, parts: &[&[i64]]) -> BranchDatum {
        BranchDatum::new(d, &parts.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn perm(d: usize, s: &str) -> Permutation {
        Permutation::parse(d, s).unwrap()
    }

    const UNREDUCED: SearchOptions = SearchOptions {
        use_centralizer_reduction: false,
        parallelism_hint: 1,
    };

    #[test]
    fn decides_the_single_hexagon() {
        let dec = decide_realizability(&datum(3, &[&[3], &[3], &[3]]), &UNREDUCED).unwrap();
        assert!(dec.realizable);
        let w = dec.witness.unwrap();
        let c = perm(3, "(0 1 2)");
        assert_eq!(w.sigmas(), &[c.clone(), c.clone(), c]);
        assert_eq!(dec.candidates_examined, 1);
    }

    #[test]
    fn smallest_exceptional_case_is_not_realizable() {
        let d = paper_family_datum(2).unwrap();
        let dec = decide_realizability(&d, &UNREDUCED).unwrap();
        assert!(!dec.realizable);
        assert!(dec.witness.is_none());
        assert_eq!(dec.candidates_examined, 40);
        assert_eq!(dec.roles.fixed, 2);
        let reduced = decide_realizability(&d, &SearchOptions::default()).unwrap();
        assert!(!reduced.realizable && reduced.reduced);
        assert!(reduced.candidates_examined < 40);
    }

    #[test]
    fn small_sphere_examples() {
        let no = decide_realizability(&datum(4, &[&[2, 2], &[2, 2], &[3, 1]]), &UNREDUCED).unwrap();
        assert!(!no.realizable);
        assert_eq!(no.candidates_examined, 3);
        let d = datum(4, &[&[3, 1], &[3, 1], &[2, 2]]);
        let yes = decide_realizability(&d, &UNREDUCED).unwrap();
        assert!(yes.realizable);
        assert!(verify_witness(&d, yes.witness.as_ref().unwrap())
            .unwrap()
            .passes());
    }

    #[test]
    fn counts() {
        let count = |d: &BranchDatum, o| count_constellations(d, &o).unwrap().count;
        for o in [UNREDUCED, SearchOptions::default()] {
            assert_eq!(count(&datum(3, &[&[3], &[3], &[3]]), o), 1);
            assert_eq!(count(&paper_family_datum(2).unwrap(), o), 0);
            assert_eq!(count(&datum(1, &[&[1], &[1], &[1]]), o), 1);
        }
        let r = count_constellations(&paper_family_datum(2).unwrap(), &UNREDUCED).unwrap();
        assert_eq!((r.candidates_examined, r.candidates_total), (40, 40));
    }

    #[test]
    fn verify_witness_examples() {
        let hex = datum(3, &[&[3], &[3], &[3]]);
        let c = perm(3, "(0 1 2)");
        let good = Constellation::new(vec![c.clone(), c.clone(), c.clone()]).unwrap();
        assert!(verify_witness(&hex, &good).unwrap().passes());

        let bad = Constellation::new(vec![c.clone(), c, Permutation::identity(3)]).unwrap();
        let r = verify_witness(&hex, &bad).unwrap();
        assert_eq!(r.cycle_types_match, vec![true, true, false]);
        assert!(!r.product_is_identity);
        assert!(r.transitive);

        let split: Vec<Partition> = [vec![3, 3], vec![3, 3], vec![1; 6]]
            .into_iter()
            .map(|p| Partition::from_parts(p).unwrap())
            .collect();
        let c = Constellation::new(vec![
            perm(6, "(0 1 2)(3 4 5)"),
            perm(6, "(0 2 1)(3 5 4)"),
            Permutation::identity(6),
        ])
        .unwrap();
        let r = verify_witness_partitions(6, &split, &c).unwrap();
        assert!(r.product_is_identity);
        assert_eq!(r.cycle_types_match, vec![true, true, true]);
        assert!(!r.transitive);
        assert!(!r.passes());

        assert!(matches!(
            verify_witness_partitions(6, &split, &good),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn four_points_are_unsupported() {
        let d = datum(2, &[&[2], &[2], &[2], &[2]]);
        assert!(matches!(
            decide_realizability(&d, &UNREDUCED),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn parallel_runs_agree_with_sequential() {
        let data = [
            control_family_datum(2).unwrap(),
            control_family_datum(3).unwrap(),
            paper_family_datum(3).unwrap(),
            datum(6, &[&[2, 2, 1, 1], &[3, 3], &[5, 1]]),
        ];
        for d in &data {
            for reduce in [false, true] {
                let seq = SearchOptions {
                    use_centralizer_reduction: reduce,
                    parallelism_hint: 1,
                };
                let par = SearchOptions {
                    parallelism_hint: 4,
                    ..seq
                };
                assert_eq!(
                    decide_realizability(d, &seq).unwrap(),
                    decide_realizability(d, &par).unwrap(),
                    "{d}"
                );
                assert_eq!(
                    count_constellations(d, &seq).unwrap(),
                    count_constellations(d, &par).unwrap(),
                    "{d}"
                );
            }
        }
    }

    #[test]
    fn witness_json_shape() {
        let dec = decide_realizability(&datum(3, &[&[3], &[3], &[3]]), &UNREDUCED).unwrap();
        assert_eq!(
            dec.to_json(),
            r#"{"realizable":true,"witness":{"degree":3,"sigma":[[[0,1,2]],[[0,1,2]],[[0,1,2]]]},"candidates_examined":1,"reduced":false}"#
        );
        let w = dec.witness.unwrap();
        assert_eq!(Constellation::from_json(&w.to_json()).unwrap(), w);
    }
}
