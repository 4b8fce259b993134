#![allow(dead_code)]

use std::collections::BTreeSet;

use ncluster::dyck::MaxDyckPath;
use ncluster::family::{subpath_catalog, is_compatible, BetaFamily};
use ncluster::word::ReducedWord;
use ncluster::{Integer, NCPoly};

/// Expands a two-row template in which an entry `k*` on the bottom row stands for `k - 3δ`
/// with an independent `δ ∈ {0, 1}`.
pub fn block(template: &str) -> NCPoly {
    let inner = template.trim().trim_start_matches('[').trim_end_matches(']');
    let (top, bottom) = inner.split_once(';').expect("two rows");
    let top: Vec<i32> = top.split_whitespace().map(|t| t.parse().unwrap()).collect();
    let bottom: Vec<(i32, bool)> = bottom
        .split_whitespace()
        .map(|t| match t.strip_suffix('*') {
            Some(k) => (k.parse().unwrap(), true),
            None => (t.parse().unwrap(), false),
        })
        .collect();
    assert_eq!(top.len(), bottom.len());
    let free: Vec<usize> = (0..bottom.len()).filter(|&i| bottom[i].1).collect();
    let mut out = NCPoly::zero();
    for bits in 0u32..(1 << free.len()) {
        let cols = top.iter().zip(&bottom).enumerate().map(|(i, (&a, &(b, _)))| {
            let d = free.iter().position(|&j| j == i).map_or(0, |p| (bits >> p & 1) as i32);
            (a, b - 3 * d)
        });
        out.add_term(ReducedWord::from_columns(cols), Integer::ONE);
    }
    out
}

/// The eight blocks of `x_4` for `r = 3`, keyed by the colored subpaths of their chain.
pub const X4_BLOCKS: [(&str, &str); 8] = [
    ("", "[1 -1 -1 -1 -1 -1 -1 -1 -1 -1; 1 2* 3* 2* 3* 3* 2* 3* 2* 0]"),
    ("alpha(0,1)", "[1 -1 0 1 -1 -1 -1 -1 -1 -1; 1 -1 0 -1 3* 3* 2* 3* 2* 0]"),
    ("alpha(0,2)", "[1 -1 0 1 0 0 0 -1 -1 -1; 1 -1 0 -1 0 0 -1 3* 2* 0]"),
    ("alpha(0,3)", "[1 -1 0 1 0 0 0 0 1 -1; 1 -1 0 -1 0 0 -1 0 -1 0]"),
    ("alpha(1,2)", "[1 -1 -1 -1 0 0 0 -1 -1 -1; 1 2* 3* 2* 0 0 -1 3* 2* 0]"),
    ("alpha(1,3)", "[1 -1 -1 -1 0 0 0 0 1 -1; 1 2* 3* -1 0 0 -1 0 -1 0]"),
    ("alpha(2,3)", "[1 -1 -1 -1 -1 -1 -1 0 1 -1; 1 2* 3* 2* 3* 3* -1 0 -1 0]"),
    ("alpha(0,1) alpha(2,3)", "[1 -1 0 1 -1 -1 -1 0 1 -1; 1 -1 0 -1 3* 3* -1 0 -1 0]"),
];

pub const A4_ROW: &str = "[1 -1 0 1 0 0 0 0 1 -1; 1 -1 0 -1 0 0 -1 0 -1 0]";

/// Every compatible family, found by trying all subsets of subpaths and single edges.
/// Only usable on tiny paths.
pub fn brute_force_families(path: &MaxDyckPath) -> Vec<BetaFamily> {
    let cat = subpath_catalog(path).unwrap();
    let edges = path.len();
    assert!(cat.len() + edges <= 20, "path too large for brute force");
    let mut out = Vec::new();
    for sub_bits in 0u32..(1 << cat.len()) {
        let subpaths: Vec<_> = (0..cat.len()).filter(|j| sub_bits >> j & 1 == 1).map(|j| cat[j]).collect();
        if !is_compatible(path, &BetaFamily::new([], subpaths.clone())) {
            continue;
        }
        for edge_bits in 0u32..(1 << edges) {
            let singles: BTreeSet<usize> = (1..=edges).filter(|e| edge_bits >> (e - 1) & 1 == 1).collect();
            let fam = BetaFamily::new(singles, subpaths.clone());
            if is_compatible(path, &fam) {
                out.push(fam);
            }
        }
    }
    out.sort();
    out
}

pub fn chain_label(subpaths: &[ncluster::dyck::ColoredSubpath]) -> String {
    subpaths
        .iter()
        .map(|s| format!("alpha({},{})", s.i, s.k))
        .collect::<Vec<_>>()
        .join(" ")
}
