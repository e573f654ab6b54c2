//! Branch data over the sphere.
//!
//! A branch datum is a degree `d` together with `n >= 3` partitions of `d`,
//! one per branching point. The source Euler characteristic follows from
//! the Riemann–Hurwitz relation with the sphere as target:
//! `chi = sum(len(pi_j)) + d * (2 - n)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing positive parts summing to a positive total.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates raw parts against the expected total and sorts them descending.
    pub fn new(parts: &[i64], total: i64) -> Result<Self> {
        if total <= 0 {
            return Err(Error::NonPositiveDegree(total));
        }
        if parts.is_empty() {
            return Err(Error::EmptyPartition);
        }
        if let Some(&part) = parts.iter().find(|&&p| p <= 0) {
            return Err(Error::NonPositivePart { part });
        }
        let sum: i64 = parts.iter().sum();
        if sum != total {
            return Err(Error::SumMismatch {
                sum,
                expected: total,
            });
        }
        let mut parts: Vec<usize> = parts.iter().map(|&p| p as usize).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// Builds a partition from parts already known to be positive.
    pub fn from_parts(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyPartition);
        }
        if parts.contains(&0) {
            return Err(Error::NonPositivePart { part: 0 });
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `(k, m_k)` pairs for every distinct part `k`, largest first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((k, m)) if *k == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Order of the centralizer of any permutation of this cycle type:
    /// `prod k^{m_k} * m_k!`.
    pub fn centralizer_order(&self) -> u128 {
        self.multiplicities()
            .into_iter()
            .map(|(k, m)| (k as u128).pow(m as u32) * factorial(m))
            .product()
    }

    /// Size of the conjugacy class: `d! / centralizer_order`.
    pub fn class_size(&self) -> u128 {
        factorial(self.total()) / self.centralizer_order()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Riemann–Hurwitz over the sphere: `chi = sum(len(pi_j)) + d * (2 - n)`.
pub fn riemann_hurwitz_chi(degree: usize, partitions: &[Partition]) -> i64 {
    let lengths: i64 = partitions.iter().map(|p| p.len() as i64).sum();
    lengths + degree as i64 * (2 - partitions.len() as i64)
}

/// A validated branch datum with the sphere as target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchDatum {
    degree: usize,
    partitions: Vec<Partition>,
    source_chi: i64,
}

impl BranchDatum {
    /// Validates raw input: every partition must sum to `degree`, there must
    /// be at least three of them, and the source Euler characteristic must be
    /// even and at most 2.
    pub fn new(degree: i64, partitions: &[Vec<i64>]) -> Result<Self> {
        if degree <= 0 {
            return Err(Error::NonPositiveDegree(degree));
        }
        let parsed = partitions
            .iter()
            .enumerate()
            .map(|(index, raw)| {
                Partition::new(raw, degree).map_err(|e| Error::BadPartition {
                    index,
                    reason: Box::new(e),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_partitions(degree as usize, parsed)
    }

    pub fn from_partitions(degree: usize, partitions: Vec<Partition>) -> Result<Self> {
        for (index, p) in partitions.iter().enumerate() {
            if p.total() != degree {
                return Err(Error::BadPartition {
                    index,
                    reason: Box::new(Error::SumMismatch {
                        sum: p.total() as i64,
                        expected: degree as i64,
                    }),
                });
            }
        }
        if partitions.len() < 3 {
            return Err(Error::TooFewBranchPoints(partitions.len()));
        }
        let chi = riemann_hurwitz_chi(degree, &partitions);
        if chi.rem_euclid(2) != 0 {
            return Err(Error::OddEuler { chi });
        }
        if chi > 2 {
            return Err(Error::ChiTooLarge { chi });
        }
        Ok(BranchDatum {
            degree,
            partitions,
            source_chi: chi,
        })
    }

    pub fn from_json(text: &str) -> std::result::Result<Result<Self>, serde_json::Error> {
        let raw: RawDatum = serde_json::from_str(text)?;
        Ok(BranchDatum::new(raw.degree, &raw.partitions))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("datum serializes")
    }

    pub fn to_raw(&self) -> RawDatum {
        RawDatum {
            degree: self.degree as i64,
            partitions: self
                .partitions
                .iter()
                .map(|p| p.parts().iter().map(|&x| x as i64).collect())
                .collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    /// Number of branching points.
    pub fn branch_points(&self) -> usize {
        self.partitions.len()
    }

    pub fn source_chi(&self) -> i64 {
        self.source_chi
    }

    pub fn source_genus(&self) -> i64 {
        (2 - self.source_chi) / 2
    }

    /// The same datum with its partitions listed in a different order.
    pub fn reordered(&self, order: &[usize]) -> Result<Self> {
        let partitions = order.iter().map(|&i| self.partitions[i].clone()).collect();
        Self::from_partitions(self.degree, partitions)
    }
}

impl fmt::Display for BranchDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={} ", self.degree)?;
        for (i, p) in self.partitions.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// On-disk datum: `{"degree": <int>, "partitions": [[<int>,...],...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDatum {
    pub degree: i64,
    pub partitions: Vec<Vec<i64>>,
}

/// Degree `3h`, partitions `[3^h]`, `[3^h]`, `[4,2,3^{h-2}]`.
pub fn paper_family_datum(h: usize) -> Result<BranchDatum> {
    if h < 2 {
        return Err(Error::HTooSmall { h, min: 2 });
    }
    let threes = vec![3usize; h];
    let mut odd = vec![4usize, 2];
    odd.extend(std::iter::repeat_n(3, h - 2));
    BranchDatum::from_partitions(
        3 * h,
        vec![
            Partition::from_parts(threes.clone())?,
            Partition::from_parts(threes)?,
            Partition::from_parts(odd)?,
        ],
    )
}

/// Degree `3h`, partitions `[3^h]` three times; realizable on the torus.
pub fn control_family_datum(h: usize) -> Result<BranchDatum> {
    if h < 1 {
        return Err(Error::HTooSmall { h, min: 1 });
    }
    let p = Partition::from_parts(vec![3; h])?;
    BranchDatum::from_partitions(3 * h, vec![p.clone(), p.clone(), p])
}
