//! Counting helpers and small lexicographic enumerators.

use alloc::vec::Vec;

/// `C(n, k)`, or `None` on `u128` overflow.
pub fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Multinomial coefficient `(Σ counts)! / Π counts[i]!`.
pub fn multinomial(counts: &[usize]) -> Option<u128> {
    let mut total = 0usize;
    let mut acc: u128 = 1;
    for &c in counts {
        total += c;
        acc = acc.checked_mul(binomial(total, c)?)?;
    }
    Some(acc)
}

/// Rearranges `xs` into the next lexicographically greater permutation.
/// Returns `false` (leaving `xs` sorted ascending) when `xs` was the last one.
/// Repeated elements are handled, so this walks distinct multiset permutations.
pub fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        xs.reverse();
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// All distinct permutations of a multiset, in lexicographic order.
pub fn multiset_permutations<T: Ord + Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut cur: Vec<T> = items.to_vec();
    cur.sort();
    let mut out = Vec::new();
    loop {
        out.push(cur.clone());
        if !next_permutation(&mut cur) {
            break;
        }
    }
    out
}

/// `k`-subsets of `0..n` as ascending index vectors, in lexicographic order.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    cur: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            cur: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let k = self.cur.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.cur[i] < self.n - k + i {
                self.cur[i] += 1;
                for j in i + 1..k {
                    self.cur[j] = self.cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
