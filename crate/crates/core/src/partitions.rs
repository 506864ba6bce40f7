//! Set partitions and their distinction structure.
//!
//! A partition π on `{0, …, n−1}` makes a *distinction* (a dit) out of every
//! ordered pair of points lying in different blocks; pairs in the same block
//! are *indistinctions* (indits). The inditset `∪ B×B` is an equivalence
//! relation and the ditset is its complement, so partitions, ditsets, and
//! equivalence relations are three views of the same object. All partition
//! information theory in this crate is built on counting and measuring dits.
//!
//! Partitions are kept in canonical form: each block sorted ascending, blocks
//! ordered by least element. The join `π ∨ σ` (blocks = non-empty
//! intersections) unions the ditsets; refinement is ditset inclusion.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::{EquivalenceDefect, Error, Result};

/// Largest universe for which pair relations are materialized (n² pairs).
pub const MAX_RELATION_POINTS: usize = 4096;

/// An indexed finite set of points, optionally labeled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    n: usize,
    labels: Option<Vec<String>>,
}

impl Universe {
    /// Unlabeled universe of `n` points. `n ≥ 1`.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPartition("universe must be non-empty".into()));
        }
        Ok(Universe { n, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidPartition("universe must be non-empty".into()));
        }
        Ok(Universe { n: labels.len(), labels: Some(labels) })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, point: u32) -> String {
        match &self.labels {
            Some(ls) => ls[point as usize].clone(),
            None => format!("u{point}"),
        }
    }

    fn check_same(&self, other: &Universe) -> Result<()> {
        if self.n != other.n {
            return Err(Error::UniverseMismatch(self.n, other.n));
        }
        if self.labels != other.labels {
            return Err(Error::LabelMismatch);
        }
        Ok(())
    }
}

/// A partition of a universe into non-empty disjoint covering blocks,
/// held in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PartitionJson", into = "PartitionJson")]
pub struct Partition {
    universe: Universe,
    blocks: Vec<Vec<u32>>,
}

impl Partition {
    /// Build from blocks, validating that they are non-empty, disjoint, and
    /// cover the universe. Input order does not matter.
    pub fn new(universe: Universe, blocks: Vec<Vec<u32>>) -> Result<Self> {
        let n = universe.len();
        let mut seen = vec![false; n];
        let mut canonical: Vec<Vec<u32>> = Vec::with_capacity(blocks.len());
        for block in blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            let mut b = block;
            b.sort_unstable();
            for &p in &b {
                if p as usize >= n {
                    return Err(Error::InvalidPartition(format!(
                        "point {p} outside universe of {n}"
                    )));
                }
                if seen[p as usize] {
                    return Err(Error::InvalidPartition(format!(
                        "point {p} appears in more than one block"
                    )));
                }
                seen[p as usize] = true;
            }
            b.dedup();
            canonical.push(b);
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidPartition(format!(
                "point {missing} is not covered by any block"
            )));
        }
        canonical.sort_by_key(|b| b[0]);
        Ok(Partition { universe, blocks: canonical })
    }

    /// The one-block partition (the blob): no distinctions at all.
    pub fn blob(universe: Universe) -> Self {
        let all = (0..universe.len() as u32).collect();
        Partition { universe, blocks: vec![all] }
    }

    /// The all-singletons partition: every pair of distinct points is a dit.
    pub fn discrete(universe: Universe) -> Self {
        let blocks = (0..universe.len() as u32).map(|p| vec![p]).collect();
        Partition { universe, blocks }
    }

    /// Build from a block label per point (labels need not be contiguous).
    pub fn from_point_labels(universe: Universe, labels: &[usize]) -> Result<Self> {
        if labels.len() != universe.len() {
            return Err(Error::LengthMismatch(labels.len(), universe.len()));
        }
        let mut groups: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for (point, &lab) in labels.iter().enumerate() {
            groups.entry(lab).or_default().push(point as u32);
        }
        Partition::new(universe, groups.into_values().collect())
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_blob(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.universe.len()
    }

    /// Index of the block containing each point.
    pub fn block_index(&self) -> Vec<usize> {
        let mut idx = vec![0usize; self.universe.len()];
        for (b, block) in self.blocks.iter().enumerate() {
            for &p in block {
                idx[p as usize] = b;
            }
        }
        idx
    }

    /// Whether points `j` and `k` lie in the same block.
    pub fn same_block(&self, j: u32, k: u32) -> bool {
        let idx = self.block_index();
        idx[j as usize] == idx[k as usize]
    }

    /// Number of distinctions: ordered pairs of points in different blocks.
    /// Equals `n² − Σ |B|²` without materializing the relation.
    pub fn dit_count(&self) -> u64 {
        let n = self.universe.len() as u64;
        let same: u64 = self.blocks.iter().map(|b| (b.len() as u64).pow(2)).sum();
        n * n - same
    }

    /// The set of ordered pairs in different blocks. Irreflexive, symmetric.
    pub fn ditset(&self) -> Result<PairRelation> {
        self.guard_materialize()?;
        let idx = self.block_index();
        let n = self.universe.len() as u32;
        let mut pairs = BTreeSet::new();
        for j in 0..n {
            for k in 0..n {
                if idx[j as usize] != idx[k as usize] {
                    pairs.insert((j, k));
                }
            }
        }
        Ok(PairRelation { universe: self.universe.clone(), pairs })
    }

    /// The set of ordered pairs in the same block: `∪ B×B`, an equivalence
    /// relation containing the diagonal.
    pub fn inditset(&self) -> Result<PairRelation> {
        self.guard_materialize()?;
        let mut pairs = BTreeSet::new();
        for block in &self.blocks {
            for &j in block {
                for &k in block {
                    pairs.insert((j, k));
                }
            }
        }
        Ok(PairRelation { universe: self.universe.clone(), pairs })
    }

    fn guard_materialize(&self) -> Result<()> {
        let n = self.universe.len();
        if n > MAX_RELATION_POINTS {
            return Err(Error::RelationTooLarge { n, limit: MAX_RELATION_POINTS });
        }
        Ok(())
    }

    /// Join `self ∨ other`: blocks are the non-empty intersections of blocks.
    /// Its ditset is the union of the two ditsets.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        self.universe.check_same(&other.universe)?;
        let a = self.block_index();
        let b = other.block_index();
        let mut groups: BTreeMap<(usize, usize), Vec<u32>> = BTreeMap::new();
        for p in 0..self.universe.len() {
            groups.entry((a[p], b[p])).or_default().push(p as u32);
        }
        Partition::new(self.universe.clone(), groups.into_values().collect())
    }

    /// Whether `self` refines `coarser`: every block of `self` lies inside a
    /// block of `coarser`, equivalently ditset(coarser) ⊆ ditset(self). The
    /// discrete partition refines everything and everything refines the blob.
    pub fn refines(&self, coarser: &Partition) -> Result<bool> {
        self.universe.check_same(&coarser.universe)?;
        let coarse_idx = coarser.block_index();
        Ok(self
            .blocks
            .iter()
            .all(|block| block.iter().all(|&p| coarse_idx[p as usize] == coarse_idx[block[0] as usize])))
    }

    /// Whether the two ditsets intersect, decided by scanning point pairs
    /// rather than materializing either relation. True whenever neither
    /// partition is the blob.
    pub fn common_dits_exist(&self, other: &Partition) -> Result<bool> {
        self.universe.check_same(&other.universe)?;
        let a = self.block_index();
        let b = other.block_index();
        let n = self.universe.len();
        for j in 0..n {
            for k in (j + 1)..n {
                if a[j] != a[k] && b[j] != b[k] {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&p| self.universe.label(p))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "{{{}}}", parts.join(" | "))
    }
}

#[derive(Serialize, Deserialize)]
struct PartitionJson {
    n: usize,
    blocks: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl From<Partition> for PartitionJson {
    fn from(p: Partition) -> Self {
        PartitionJson {
            n: p.universe.len(),
            labels: p.universe.labels.clone(),
            blocks: p.blocks,
        }
    }
}

impl TryFrom<PartitionJson> for Partition {
    type Error = Error;
    fn try_from(j: PartitionJson) -> Result<Self> {
        let universe = match j.labels {
            Some(labels) => {
                if labels.len() != j.n {
                    return Err(Error::InvalidPartition(format!(
                        "{} labels for {} points",
                        labels.len(),
                        j.n
                    )));
                }
                Universe::with_labels(labels)?
            }
            None => Universe::new(j.n)?,
        };
        Partition::new(universe, j.blocks)
    }
}

/// A set of ordered point pairs over a universe: a ditset, an inditset, or a
/// candidate equivalence relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRelation {
    universe: Universe,
    pairs: BTreeSet<(u32, u32)>,
}

impl PairRelation {
    pub fn new(universe: Universe, pairs: BTreeSet<(u32, u32)>) -> Result<Self> {
        let n = universe.len() as u32;
        if let Some(&(j, k)) = pairs.iter().find(|&&(j, k)| j >= n || k >= n) {
            return Err(Error::Domain(format!(
                "pair ({j}, {k}) outside universe of {n}"
            )));
        }
        Ok(PairRelation { universe, pairs })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, j: u32, k: u32) -> bool {
        self.pairs.contains(&(j, k))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn pairs(&self) -> &BTreeSet<(u32, u32)> {
        &self.pairs
    }

    pub fn union(&self, other: &PairRelation) -> Result<PairRelation> {
        self.universe.check_same(&other.universe)?;
        Ok(PairRelation {
            universe: self.universe.clone(),
            pairs: self.pairs.union(&other.pairs).copied().collect(),
        })
    }

    pub fn intersection(&self, other: &PairRelation) -> Result<PairRelation> {
        self.universe.check_same(&other.universe)?;
        Ok(PairRelation {
            universe: self.universe.clone(),
            pairs: self.pairs.intersection(&other.pairs).copied().collect(),
        })
    }

    pub fn difference(&self, other: &PairRelation) -> Result<PairRelation> {
        self.universe.check_same(&other.universe)?;
        Ok(PairRelation {
            universe: self.universe.clone(),
            pairs: self.pairs.difference(&other.pairs).copied().collect(),
        })
    }

    pub fn is_subset(&self, other: &PairRelation) -> Result<bool> {
        self.universe.check_same(&other.universe)?;
        Ok(self.pairs.is_subset(&other.pairs))
    }

    /// Recover the partition whose inditset is this relation. Errors with a
    /// witness if the relation is not reflexive, symmetric, and transitive.
    pub fn to_partition(&self) -> Result<Partition> {
        let n = self.universe.len() as u32;
        for u in 0..n {
            if !self.pairs.contains(&(u, u)) {
                return Err(Error::NotEquivalence(EquivalenceDefect::Reflexivity { point: u }));
            }
        }
        for &(j, k) in &self.pairs {
            if !self.pairs.contains(&(k, j)) {
                return Err(Error::NotEquivalence(EquivalenceDefect::Symmetry { pair: (j, k) }));
            }
        }
        // Neighbor sets; transitivity ⇔ N(v) ⊆ N(u) whenever v ∈ N(u).
        let mut neighbors: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); n as usize];
        for &(j, k) in &self.pairs {
            neighbors[j as usize].insert(k);
        }
        for u in 0..n {
            for &v in &neighbors[u as usize] {
                for &w in &neighbors[v as usize] {
                    if !neighbors[u as usize].contains(&w) {
                        return Err(Error::NotEquivalence(EquivalenceDefect::Transitivity {
                            first: (u, v),
                            second: (v, w),
                        }));
                    }
                }
            }
        }
        let mut assigned = vec![false; n as usize];
        let mut blocks = Vec::new();
        for u in 0..n {
            if assigned[u as usize] {
                continue;
            }
            let block: Vec<u32> = neighbors[u as usize].iter().copied().collect();
            for &p in &block {
                assigned[p as usize] = true;
            }
            blocks.push(block);
        }
        Partition::new(self.universe.clone(), blocks)
    }
}

/// Recover a partition from an equivalence relation; see
/// [`PairRelation::to_partition`].
pub fn from_equivalence(r: &PairRelation) -> Result<Partition> {
    r.to_partition()
}

/// All partitions of an `n`-point universe, generated from restricted growth
/// strings in a stable order. Intended for small `n` (Bell(10) ≈ 1.2e5).
pub fn all_partitions(universe: &Universe) -> Vec<Partition> {
    let n = universe.len();
    let mut out = Vec::new();
    // rgs[i] = block of point i; rgs[i] ≤ 1 + max(rgs[..i]).
    let mut rgs = vec![0usize; n];
    loop {
        out.push(
            Partition::from_point_labels(universe.clone(), &rgs)
                .expect("restricted growth string is a valid labeling"),
        );
        // Advance to the next restricted growth string.
        let mut i = n;
        loop {
            if i == 1 {
                return out;
            }
            i -= 1;
            let max_prefix = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= max_prefix {
                rgs[i] += 1;
                for v in rgs[i + 1..].iter_mut() {
                    *v = 0;
                }
                break;
            }
        }
    }
}
