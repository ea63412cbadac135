//! Exhaustive low-weight kernel enumeration by meet in the middle.
//!
//! A weight-`w` kernel vector of `H` is split into its `⌈w/2⌉` smallest
//! indices and the remaining `⌊w/2⌋`. Both halves have the same syndrome, so
//! the `⌊w/2⌋`-subsets are bucketed by syndrome and each `⌈w/2⌉`-subset is
//! joined against its bucket. Requiring every index of the second half to
//! exceed the largest index of the first makes the split unique, so each
//! vector is produced exactly once.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::bitlin::BitMatrix;

/// Visit every `k`-subset of `start..n` in lexicographic order with the XOR
/// of its column syndromes. `prefix`/`acc` carry the already chosen part.
fn for_each_subset<F>(
    cols: &[Vec<u64>],
    start: usize,
    k: usize,
    prefix: &mut Vec<u32>,
    acc: &mut Vec<u64>,
    f: &mut F,
) where
    F: FnMut(&[u32], &[u64]),
{
    if k == 0 {
        f(prefix, acc);
        return;
    }
    let n = cols.len();
    for i in start..=n.saturating_sub(k) {
        prefix.push(i as u32);
        xor(acc, &cols[i]);
        for_each_subset(cols, i + 1, k - 1, prefix, acc, f);
        xor(acc, &cols[i]);
        prefix.pop();
    }
}

#[inline]
fn xor(acc: &mut [u64], v: &[u64]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a ^= *b;
    }
}

fn column_syndromes(h: &BitMatrix) -> Vec<Vec<u64>> {
    let t = h.transpose();
    (0..t.rows()).map(|c| t.row_words(c).to_vec()).collect()
}

/// All supports of weight exactly `w` in the right kernel of `h`, sorted.
pub fn kernel_supports(h: &BitMatrix, w: usize) -> Vec<Vec<u32>> {
    let n = h.cols();
    if w == 0 || w > n {
        return Vec::new();
    }
    let cols = column_syndromes(h);
    let words = cols.first().map_or(0, Vec::len);
    let a = w.div_ceil(2);
    let b = w / 2;

    let mut buckets: HashMap<Vec<u64>, Vec<Vec<u32>>> = HashMap::new();
    {
        let mut prefix = Vec::with_capacity(b);
        let mut acc = vec![0u64; words];
        for_each_subset(&cols, 0, b, &mut prefix, &mut acc, &mut |s, syn| {
            buckets.entry(syn.to_vec()).or_default().push(s.to_vec());
        });
    }

    let mut found: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            let mut prefix = vec![first as u32];
            let mut acc = cols[first].clone();
            for_each_subset(&cols, first + 1, a - 1, &mut prefix, &mut acc, &mut |s, syn| {
                let Some(bucket) = buckets.get(syn) else {
                    return;
                };
                let last = *s.last().unwrap();
                for other in bucket {
                    if other.first().is_none_or(|&m| m > last) {
                        let mut v = Vec::with_capacity(w);
                        v.extend_from_slice(s);
                        v.extend_from_slice(other);
                        out.push(v);
                    }
                }
            });
            out
        })
        .collect();
    found.sort_unstable();
    found
}

/// Smallest nonzero kernel weight of `h` up to `max_weight`, with one witness.
pub fn min_kernel_weight(h: &BitMatrix, max_weight: usize) -> Option<(usize, Vec<u32>)> {
    (1..=max_weight).find_map(|w| {
        kernel_supports(h, w)
            .into_iter()
            .next()
            .map(|s| (w, s))
    })
}
