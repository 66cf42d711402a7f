//! Feynman-type graphs with labelled lines.
//!
//! A graph on `n` labelled lines is a pair of set partitions of the lines:
//! the blocks of the first are the white dots (origins, weight `L_m` for a
//! dot emitting `m` lines), the blocks of the second are the black dots
//! (vertices, weight `V_k` for a dot receiving `k` lines). Summing weights
//! over all pairs reproduces `A_n = Y_n[L] Y_n[V]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::ModelSpec;
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

pub const DEFAULT_ENUMERATION_CAP: usize = 8;
pub const ENUMERATION_CAP_ENV: &str = "COMBFIELD_ENUM_CAP";

/// The enumeration cap, overridable through `COMBFIELD_ENUM_CAP`.
pub fn enumeration_cap() -> usize {
    std::env::var(ENUMERATION_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUMERATION_CAP)
}

/// A set partition of `{1..n}` stored as its restricted growth string:
/// `labels[i]` is the block index of element `i+1`, blocks numbered in
/// order of their smallest element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    labels: Vec<u8>,
    blocks: usize,
}

impl SetPartition {
    /// Builds a partition from arbitrary blocks over `{1..n}`.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut owner = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidArgument("empty block".into()));
            }
            for &e in block {
                if e == 0 || e > n || owner[e - 1] != usize::MAX {
                    return Err(Error::InvalidArgument(format!(
                        "element {e} is out of range or repeated"
                    )));
                }
                owner[e - 1] = b;
            }
        }
        if owner.contains(&usize::MAX) {
            return Err(Error::InvalidArgument("blocks do not cover {1..n}".into()));
        }
        Ok(Self::canonicalize(&owner))
    }

    fn canonicalize(owner: &[usize]) -> Self {
        let mut relabel: HashMap<usize, u8> = HashMap::new();
        let labels = owner
            .iter()
            .map(|o| {
                let next = relabel.len() as u8;
                *relabel.entry(*o).or_insert(next)
            })
            .collect();
        SetPartition {
            labels,
            blocks: relabel.len(),
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn block_count(&self) -> usize {
        self.blocks
    }

    /// Block index of each element, 0-based elements.
    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// Blocks as sorted 1-based element lists, ordered by minimum element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (i, &b) in self.labels.iter().enumerate() {
            out[b as usize].push(i + 1);
        }
        out
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.blocks];
        for &b in &self.labels {
            sizes[b as usize] += 1;
        }
        sizes
    }

    /// Image under the line relabelling `i -> perm[i]` (0-based).
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut owner = vec![0; self.n()];
        for (i, &b) in self.labels.iter().enumerate() {
            owner[perm[i]] = b as usize;
        }
        Self::canonicalize(&owner)
    }
}

/// All set partitions of `{1..n}` in lexicographic order of their
/// restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<SetPartition> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(SetPartition {
            labels: vec![],
            blocks: 0,
        });
        return out;
    }
    let mut labels = vec![0u8; n];
    // prefix_max[i] = max(labels[..=i])
    let mut prefix_max = vec![0u8; n];
    loop {
        out.push(SetPartition {
            labels: labels.clone(),
            blocks: prefix_max[n - 1] as usize + 1,
        });
        // find the rightmost position that can be incremented
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            if labels[i] <= prefix_max[i - 1] {
                break;
            }
            i -= 1;
        }
        labels[i] += 1;
        prefix_max[i] = prefix_max[i - 1].max(labels[i]);
        for j in i + 1..n {
            labels[j] = 0;
            prefix_max[j] = prefix_max[j - 1];
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LineDiagram {
    pub origins: SetPartition,
    pub vertices: SetPartition,
}

impl LineDiagram {
    pub fn new(origins: SetPartition, vertices: SetPartition) -> Result<Self> {
        if origins.n() != vertices.n() {
            return Err(Error::InvalidArgument(format!(
                "origin and vertex partitions cover {} and {} lines",
                origins.n(),
                vertices.n()
            )));
        }
        Ok(LineDiagram { origins, vertices })
    }

    pub fn n(&self) -> usize {
        self.origins.n()
    }

    /// Shared-line counts: rows are origin blocks, columns vertex blocks.
    pub fn incidence(&self) -> Vec<Vec<u8>> {
        let mut m = vec![vec![0u8; self.vertices.block_count()]; self.origins.block_count()];
        for (o, v) in self.origins.labels().iter().zip(self.vertices.labels()) {
            m[*o as usize][*v as usize] += 1;
        }
        m
    }

    pub fn relabel(&self, perm: &[usize]) -> Self {
        LineDiagram {
            origins: self.origins.relabel(perm),
            vertices: self.vertices.relabel(perm),
        }
    }

    pub fn signature(&self) -> Signature {
        Signature::of_matrix(&self.incidence())
    }
}

/// Streaming enumeration of all `Bell(n)^2` diagrams on `n` lines.
pub struct DiagramIter {
    partitions: Vec<SetPartition>,
    outer: usize,
    inner: usize,
}

impl Iterator for DiagramIter {
    type Item = LineDiagram;

    fn next(&mut self) -> Option<LineDiagram> {
        if self.outer >= self.partitions.len() {
            return None;
        }
        let d = LineDiagram {
            origins: self.partitions[self.outer].clone(),
            vertices: self.partitions[self.inner].clone(),
        };
        self.inner += 1;
        if self.inner == self.partitions.len() {
            self.inner = 0;
            self.outer += 1;
        }
        Some(d)
    }
}

fn check_cap(n: usize) -> Result<()> {
    let cap = enumeration_cap();
    if n > cap {
        return Err(Error::EnumerationCap { n, cap });
    }
    Ok(())
}

pub fn enumerate(n: usize) -> Result<DiagramIter> {
    check_cap(n)?;
    Ok(DiagramIter {
        partitions: set_partitions(n),
        outer: 0,
        inner: 0,
    })
}

fn block_weight(p: &SetPartition, weights: &[ExactScalar]) -> Result<ExactScalar> {
    let mut w = ExactScalar::from_integer(1.into());
    for size in p.block_sizes() {
        let x = weights.get(size - 1).ok_or(Error::ModelTruncation {
            size,
            len: weights.len(),
        })?;
        w *= x;
    }
    Ok(w)
}

/// `prod L_{|origin block|} * prod V_{|vertex block|}`.
pub fn weight(d: &LineDiagram, model: &ModelSpec) -> Result<ExactScalar> {
    Ok(block_weight(&d.origins, model.l())? * block_weight(&d.vertices, model.v())?)
}

/// Sum of [`weight`] over every diagram on `n` lines. The outer loop over
/// origin partitions runs in parallel; partial sums are exact so the
/// result does not depend on the split.
pub fn weighted_total(n: usize, model: &ModelSpec) -> Result<ExactScalar> {
    check_cap(n)?;
    let partitions = set_partitions(n);
    let vertex_weights: Vec<ExactScalar> = partitions
        .iter()
        .map(|p| block_weight(p, model.v()))
        .collect::<Result<_>>()?;
    let partials: Vec<ExactScalar> = partitions
        .par_iter()
        .map(|origin| -> Result<ExactScalar> {
            let wo = block_weight(origin, model.l())?;
            let mut acc = ExactScalar::zero();
            if wo.is_zero() {
                return Ok(acc);
            }
            for wv in &vertex_weights {
                if !wv.is_zero() {
                    acc += &wo * wv;
                }
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    Ok(partials.into_iter().fold(ExactScalar::zero(), |a, b| a + b))
}

/// Canonical incidence matrix of the white/black bipartite multigraph:
/// the lexicographically largest matrix over all row orders, with columns
/// sorted in decreasing lexicographic order for each row order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Signature {
    rows: Vec<Vec<u8>>,
}

fn sorted_prefix(rows: &[&Vec<u8>], cols: usize) -> Vec<Vec<u8>> {
    let mut columns: Vec<Vec<u8>> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c]).collect())
        .collect();
    columns.sort_unstable_by(|a, b| b.cmp(a));
    (0..rows.len())
        .map(|r| columns.iter().map(|c| c[r]).collect())
        .collect()
}

impl Signature {
    pub fn of_matrix(matrix: &[Vec<u8>]) -> Signature {
        let rows = matrix.len();
        let cols = matrix.first().map_or(0, Vec::len);
        // Candidates are row orders whose sorted prefix is maximal so far;
        // the prefix of the final column-sorted matrix only depends on the
        // rows already placed.
        let mut frontier: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..rows {
            let mut best: Option<Vec<Vec<u8>>> = None;
            let mut next: Vec<Vec<usize>> = Vec::new();
            for chosen in &frontier {
                let mut tried: Vec<&Vec<u8>> = Vec::new();
                for r in 0..rows {
                    if chosen.contains(&r) || tried.contains(&&matrix[r]) {
                        continue;
                    }
                    tried.push(&matrix[r]);
                    let mut order = chosen.clone();
                    order.push(r);
                    let picked: Vec<&Vec<u8>> = order.iter().map(|&i| &matrix[i]).collect();
                    let prefix = sorted_prefix(&picked, cols);
                    match best.as_ref().map(|b| prefix.cmp(b)) {
                        None | Some(std::cmp::Ordering::Greater) => {
                            best = Some(prefix);
                            next.clear();
                            next.push(order);
                        }
                        Some(std::cmp::Ordering::Equal) => next.push(order),
                        Some(std::cmp::Ordering::Less) => {}
                    }
                }
            }
            frontier = next;
        }
        let picked: Vec<&Vec<u8>> = frontier
            .first()
            .map(|o| o.iter().map(|&i| &matrix[i]).collect())
            .unwrap_or_default();
        Signature {
            rows: sorted_prefix(&picked, cols),
        }
    }

    pub fn matrix(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn origin_sizes(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&x| x as usize).sum())
            .collect()
    }

    pub fn vertex_sizes(&self) -> Vec<usize> {
        let cols = self.rows.first().map_or(0, Vec::len);
        (0..cols)
            .map(|c| self.rows.iter().map(|r| r[c] as usize).sum())
            .collect()
    }

    pub fn lines(&self) -> usize {
        self.origin_sizes().iter().sum()
    }

    /// Sorted `(origin size, vertex size, shared lines)` incidence triples.
    pub fn incidence_triples(&self) -> Vec<(usize, usize, usize)> {
        let (os, vs) = (self.origin_sizes(), self.vertex_sizes());
        let mut out: Vec<_> = self
            .rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| {
                let (os, vs) = (&os, &vs);
                r.iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(move |(j, &x)| (os[i], vs[j], x as usize))
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// A labelled diagram in this class: lines are numbered row by row.
    pub fn representative(&self) -> LineDiagram {
        let mut origin_owner = Vec::new();
        let mut vertex_owner = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &count) in row.iter().enumerate() {
                for _ in 0..count {
                    origin_owner.push(i);
                    vertex_owner.push(j);
                }
            }
        }
        LineDiagram {
            origins: SetPartition::canonicalize(&origin_owner),
            vertices: SetPartition::canonicalize(&vertex_owner),
        }
    }
}

/// Text description, one origin per group: `o2 => v1:2` means a white dot
/// with two lines, both ending on black dot `v1`.
impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs = self.vertex_sizes();
        let heads: Vec<String> = vs
            .iter()
            .enumerate()
            .map(|(j, s)| format!("v{}({})", j + 1, s))
            .collect();
        write!(f, "[{}]", heads.join(" "))?;
        for (i, row) in self.rows.iter().enumerate() {
            let edges: Vec<String> = row
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(j, &x)| format!("v{}:{}", j + 1, x))
                .collect();
            let sep = if i == 0 { " " } else { "; " };
            write!(f, "{sep}o{} => {}", self.origin_sizes()[i], edges.join(","))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramClass {
    pub signature: Signature,
    pub multiplicity: u64,
    #[serde(with = "crate::scalar::serde_str")]
    pub weight: ExactScalar,
}

impl DiagramClass {
    pub fn weighted_multiplicity(&self) -> ExactScalar {
        &self.weight * ExactScalar::from_integer(self.multiplicity.into())
    }
}

/// Groups every diagram on `n` lines by [`Signature`], sorted by signature.
/// Classes are reported even when their weight vanishes.
pub fn classes(n: usize, model: &ModelSpec) -> Result<Vec<DiagramClass>> {
    check_cap(n)?;
    let partitions = set_partitions(n);
    // Per worker: incidence key (rows sorted) -> slot, slot -> signature and count.
    #[derive(Default)]
    struct Tally {
        memo: HashMap<Vec<u8>, usize>,
        found: Vec<(Signature, u64)>,
    }
    let counts: HashMap<Signature, u64> = partitions
        .par_iter()
        .fold(Tally::default, |mut tally, origin| {
            let rows = origin.block_count();
            let mut cells = Vec::new();
            let mut key = Vec::new();
            for vertex in &partitions {
                let cols = vertex.block_count();
                cells.clear();
                cells.resize(rows * cols, 0u8);
                for (o, v) in origin.labels().iter().zip(vertex.labels()) {
                    cells[*o as usize * cols + *v as usize] += 1;
                }
                let mut sorted: Vec<&[u8]> = cells.chunks(cols.max(1)).collect();
                sorted.sort_unstable();
                key.clear();
                key.push(cols as u8);
                sorted.iter().for_each(|r| key.extend_from_slice(r));
                let slot = match tally.memo.get(&key) {
                    Some(&slot) => slot,
                    None => {
                        let matrix: Vec<Vec<u8>> = sorted.iter().map(|r| r.to_vec()).collect();
                        tally.found.push((Signature::of_matrix(&matrix), 0));
                        tally.memo.insert(key.clone(), tally.found.len() - 1);
                        tally.found.len() - 1
                    }
                };
                tally.found[slot].1 += 1;
            }
            tally
        })
        .map(|tally| {
            let mut merged = HashMap::new();
            for (sig, c) in tally.found {
                *merged.entry(sig).or_default() += c;
            }
            merged
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    let ordered: BTreeMap<Signature, u64> = counts.into_iter().collect();
    ordered
        .into_iter()
        .map(|(signature, multiplicity)| {
            let weight = weight(&signature.representative(), model)?;
            Ok(DiagramClass {
                signature,
                multiplicity,
                weight,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::bell_number;
    use crate::counting::count;
    use crate::scalar::{int, ratio};
    use crate::test_support::{all_set_partitions, rational_vec};
    use proptest::prelude::*;

    fn unit_model(n: usize) -> ModelSpec {
        ModelSpec::new(vec![int(1); n], vec![int(1); n]).unwrap()
    }

    #[test]
    fn partitions_match_brute_force() {
        for n in 0..=7 {
            let ours = set_partitions(n);
            assert_eq!(ours.len(), all_set_partitions(n).len());
            let mut sorted = ours.clone();
            sorted.dedup();
            assert_eq!(sorted.len(), ours.len());
            for p in &ours {
                let blocks = p.blocks();
                assert_eq!(SetPartition::from_blocks(n, &blocks).unwrap(), *p);
                let mins: Vec<_> = blocks.iter().map(|b| b[0]).collect();
                assert!(mins.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn from_blocks_validation() {
        assert!(SetPartition::from_blocks(3, &[vec![1, 2]]).is_err());
        assert!(SetPartition::from_blocks(3, &[vec![1, 2], vec![2, 3]]).is_err());
        assert!(SetPartition::from_blocks(2, &[vec![1, 2], vec![]]).is_err());
        let p = SetPartition::from_blocks(3, &[vec![3], vec![2, 1]]).unwrap();
        assert_eq!(p.blocks(), vec![vec![1, 2], vec![3]]);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate(1).unwrap().count(), 1);
        assert_eq!(enumerate(2).unwrap().count(), 4);
        assert_eq!(enumerate(3).unwrap().count(), 25);
        assert!(matches!(enumerate(DEFAULT_ENUMERATION_CAP + 1), Err(Error::EnumerationCap { .. })));
    }

    #[test]
    fn weights() {
        let kerr = ModelSpec::kerr(2, 4);
        let d = enumerate(1).unwrap().next().unwrap();
        assert_eq!(weight(&d, &kerr).unwrap(), int(1));
        let sf = ModelSpec::superfluidity(4);
        for d in enumerate(4).unwrap() {
            if d.origins.block_sizes().contains(&1) {
                assert_eq!(weight(&d, &sf).unwrap(), int(0));
            }
        }
        let weights: Vec<_> = enumerate(2).unwrap().map(|d| weight(&d, &kerr).unwrap()).collect();
        assert_eq!(weights, vec![int(1); 4]);
        let short = ModelSpec::kerr(2, 2);
        let all_one = LineDiagram::new(
            SetPartition::from_blocks(3, &[vec![1, 2, 3]]).unwrap(),
            SetPartition::from_blocks(3, &[vec![1], vec![2], vec![3]]).unwrap(),
        )
        .unwrap();
        assert!(matches!(weight(&all_one, &short), Err(Error::ModelTruncation { size: 3, .. })));
    }

    #[test]
    fn weighted_totals() {
        assert_eq!(weighted_total(3, &ModelSpec::kerr(2, 3)).unwrap(), int(20));
        assert_eq!(weighted_total(3, &ModelSpec::superfluidity(3)).unwrap(), int(0));
        assert_eq!(weighted_total(4, &ModelSpec::superfluidity(4)).unwrap(), int(129));
    }

    #[test]
    fn class_examples() {
        let kerr = ModelSpec::kerr(2, 4);
        let c1 = classes(1, &kerr).unwrap();
        assert_eq!(c1.len(), 1);
        assert_eq!(c1[0].multiplicity, 1);
        let c2 = classes(2, &kerr).unwrap();
        let total: ExactScalar = c2.iter().map(DiagramClass::weighted_multiplicity).sum();
        assert_eq!(total, int(4));
        assert_eq!(c2.iter().map(|c| c.multiplicity).sum::<u64>(), 4);
        let sf = ModelSpec::superfluidity(4);
        let c4 = classes(4, &sf).unwrap();
        let total: ExactScalar = c4.iter().map(DiagramClass::weighted_multiplicity).sum();
        assert_eq!(total, int(129));
    }

    #[test]
    fn class_multiplicities_sum_to_bell_squared() {
        for n in 0..=5 {
            let cs = classes(n, &unit_model(n.max(1))).unwrap();
            let bell: u64 = bell_number(n).try_into().unwrap();
            assert_eq!(cs.iter().map(|c| c.multiplicity).sum::<u64>(), bell * bell);
            for c in &cs {
                assert_eq!(c.signature.lines(), n);
                assert_eq!(c.signature.representative().signature(), c.signature);
            }
        }
    }

    #[test]
    fn signature_separates_distinct_graphs() {
        // two double edges versus a 4-cycle on the same block sizes
        let a = Signature::of_matrix(&[vec![2, 0], vec![0, 2]]);
        let b = Signature::of_matrix(&[vec![1, 1], vec![1, 1]]);
        assert_ne!(a, b);
        assert_eq!(Signature::of_matrix(&[vec![0, 2], vec![2, 0]]), a);
        assert_eq!(a.incidence_triples(), vec![(2, 2, 2), (2, 2, 2)]);
        assert_eq!(a.to_string(), "[v1(2) v2(2)] o2 => v1:2; o2 => v2:2");
    }

    #[test]
    fn json_layout() {
        let c = classes(1, &ModelSpec::kerr(2, 1)).unwrap();
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"[{"signature":[[1]],"multiplicity":1,"weight":"1"}]"#
        );
    }

    proptest! {
        #[test]
        fn totals_match_counting_formula(l in rational_vec(5), v in rational_vec(5), n in 1usize..=5) {
            let model = ModelSpec::new(l, v).unwrap();
            let expected = count(&model, n).unwrap().a[n].clone();
            let total = weighted_total(n, &model).unwrap();
            prop_assert_eq!(&total, &expected);
            // factorised sum over origin and vertex partitions separately
            let ps = set_partitions(n);
            let sl: ExactScalar = ps.iter().map(|p| block_weight(p, model.l()).unwrap()).sum();
            let sv: ExactScalar = ps.iter().map(|p| block_weight(p, model.v()).unwrap()).sum();
            prop_assert_eq!(total, sl * sv);
        }

        #[test]
        fn relabelling_preserves_class(seed in any::<u64>(), n in 1usize..=6, idx in any::<prop::sample::Index>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let ps = set_partitions(n);
            let d = LineDiagram::new(ps[idx.index(ps.len())].clone(), ps[(idx.index(ps.len()) * 7 + 3) % ps.len()].clone()).unwrap();
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            prop_assert_eq!(d.relabel(&perm).signature(), d.signature());
        }
    }

    #[test]
    fn classes_weight_sum_for_random_model() {
        let model = ModelSpec::new(
            vec![ratio(1, 2), int(-3), ratio(2, 3), int(1), int(5)],
            vec![int(2), ratio(-1, 4), int(0), int(7), ratio(1, 5)],
        )
        .unwrap();
        for n in 1..=5 {
            let cs = classes(n, &model).unwrap();
            let total: ExactScalar = cs.iter().map(DiagramClass::weighted_multiplicity).sum();
            assert_eq!(total, weighted_total(n, &model).unwrap());
        }
    }
}
