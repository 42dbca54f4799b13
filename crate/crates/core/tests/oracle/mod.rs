//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use blocksets_core::template::blockset_points;
use blocksets_core::{Placement, SizeMode, Template, Word};

/// Every placement, found by labelling each coordinate with a block index or
/// "outside" and keeping labellings whose blocks appear in order of their
/// minima. Independent of the family/odometer enumeration in the crate.
pub fn placements(n: usize, template: &Template, mode: SizeMode) -> Vec<Placement> {
    let s = template.len();
    let m = template.alphabet();
    let labels = s + 1;
    let mut out = Vec::new();
    let total = (labels as u64).pow(n as u32);
    for code in 0..total {
        let mut label = vec![0usize; n];
        let mut c = code;
        for l in label.iter_mut() {
            *l = (c % labels as u64) as usize;
            c /= labels as u64;
        }
        let blocks: Vec<Vec<usize>> = (0..s)
            .map(|b| (1..=n).filter(|&i| label[i - 1] == b).collect())
            .collect();
        if blocks.iter().any(|b| b.is_empty() || !mode.admits(b.len())) {
            continue;
        }
        if blocks.windows(2).any(|w| w[0][0] > w[1][0]) {
            continue;
        }
        let outside: Vec<usize> = (1..=n).filter(|&i| label[i - 1] == s).collect();
        let refs = (m as u64).pow(outside.len() as u32);
        for r in 0..refs {
            let mut rc = r;
            let reference: Vec<(usize, u8)> = outside
                .iter()
                .map(|&i| {
                    let sym = (rc % m as u64) as u8 + 1;
                    rc /= m as u64;
                    (i, sym)
                })
                .collect();
            out.push(Placement::new(n, blocks.clone(), &reference).unwrap());
        }
    }
    out
}

/// Block sets of every placement, as sorted lists of point indices, deduplicated.
pub fn edges(n: usize, template: &Template, mode: SizeMode) -> Vec<Vec<u64>> {
    let mut set = BTreeSet::new();
    for p in placements(n, template, mode) {
        let pts: Vec<u64> = blockset_points(&p, template)
            .unwrap()
            .iter()
            .map(Word::index)
            .collect();
        set.insert(pts);
    }
    set.into_iter().collect()
}

/// Whether some `k`-colouring of the points touched by `edges` leaves every edge non-monochromatic.
pub fn colourable(edges: &[Vec<u64>], k: u64) -> bool {
    let points: Vec<u64> = edges
        .iter()
        .flatten()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let total = k.pow(points.len() as u32);
    (0..total).any(|code| {
        let colour_of = |p: u64| {
            let i = points.binary_search(&p).unwrap();
            (code / k.pow(i as u32)) % k
        };
        edges
            .iter()
            .all(|e| e.iter().any(|&p| colour_of(p) != colour_of(e[0])))
    })
}

/// All `size`-subsets of `[n]` (1-based) in lexicographic order.
pub fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            cur.push(x);
            go(x + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, size, &mut Vec::new(), &mut out);
    out
}
