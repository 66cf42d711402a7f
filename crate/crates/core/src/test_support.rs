//! Independent oracles and generators shared by the unit tests.

use proptest::prelude::*;

use crate::scalar::{ratio, ExactScalar};

pub fn rational() -> impl Strategy<Value = ExactScalar> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, q)| ratio(p, q))
}

pub fn rational_vec(len: usize) -> impl Strategy<Value = Vec<ExactScalar>> {
    prop::collection::vec(rational(), len)
}

/// All set partitions of `{0..n}` as lists of blocks, built by inserting
/// each element into an existing block or a new one.
pub fn all_set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut parts: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for e in 0..n {
        let mut next = Vec::new();
        for p in &parts {
            for b in 0..p.len() {
                let mut q = p.clone();
                q[b].push(e);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![e]);
            next.push(q);
        }
        parts = next;
    }
    parts
}

pub fn set_partition_count(n: usize) -> usize {
    all_set_partitions(n).len()
}

pub fn set_partitions_with_blocks(n: usize, k: usize) -> usize {
    all_set_partitions(n)
        .iter()
        .filter(|p| p.len() == k)
        .count()
}
