use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermutationError {
    #[error("images {0:?} are not a permutation of 1..n")]
    NotBijective(Vec<usize>),
}

/// A permutation of `{1, ..., n}` given by its images `σ(1), ..., σ(n)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, PermutationError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(PermutationError::NotBijective(images));
            }
            seen[i - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// `(n, n-1, ..., 1)`.
    pub fn reversal(n: usize) -> Self {
        Permutation {
            images: (1..=n).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `σ(i)` for `1 <= i <= n`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        Permutation {
            images: other.images.iter().map(|&i| self.apply(i)).collect(),
        }
    }

    /// Number of `i` with `σ(i) > σ(i+1)`.
    pub fn descent_number(&self) -> usize {
        self.images.windows(2).filter(|w| w[0] > w[1]).count()
    }

    /// Whether `σ(i) < σ(i+1)` at every position that is not a block end
    /// of the ordered partition `blocks`.
    pub fn is_unshuffle(&self, blocks: &[usize]) -> bool {
        if blocks.iter().sum::<usize>() != self.len() {
            return false;
        }
        let mut ends = vec![false; self.len()];
        let mut acc = 0;
        for &b in blocks {
            acc += b;
            if acc > 0 {
                ends[acc - 1] = true;
            }
        }
        self.images
            .windows(2)
            .enumerate()
            .all(|(i, w)| ends[i] || w[0] < w[1])
    }

    /// Images as zero-based indices.
    pub fn zero_based(&self) -> Vec<usize> {
        self.images.iter().map(|i| i - 1).collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

/// All of `S_n` in lexicographic order of images.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(Permutation {
                images: prefix.clone(),
            });
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                prefix.push(i + 1);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// The `(i_1, ..., i_k)`-unshuffles: permutations increasing inside each
/// consecutive block of the ordered partition. A block of letters is sent,
/// in order, to a chosen set of positions.
pub fn unshuffles(blocks: &[usize]) -> Vec<Permutation> {
    let n: usize = blocks.iter().sum();
    let mut out = Vec::new();
    let mut images = vec![0; n];
    let mut free: Vec<usize> = (1..=n).collect();
    fn choose(
        blocks: &[usize],
        offset: usize,
        free: &mut Vec<usize>,
        images: &mut Vec<usize>,
        out: &mut Vec<Permutation>,
    ) {
        let Some((&size, rest)) = blocks.split_first() else {
            out.push(Permutation {
                images: images.clone(),
            });
            return;
        };
        for subset in combinations(free.len(), size) {
            let chosen: Vec<usize> = subset.iter().map(|&k| free[k]).collect();
            for (j, &pos) in chosen.iter().enumerate() {
                images[offset + j] = pos;
            }
            let saved = free.clone();
            free.retain(|p| !chosen.contains(p));
            choose(rest, offset + size, free, images, out);
            *free = saved;
        }
    }
    choose(blocks, 0, &mut free, &mut images, &mut out);
    out
}

/// All `k`-subsets of `0..n` as increasing index lists.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// All ordered partitions (compositions) of `n` into positive parts.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Compositions of `n` into exactly `k` non-negative parts.
pub fn weak_compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in weak_compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descents() {
        assert_eq!(Permutation::identity(3).descent_number(), 0);
        assert_eq!(Permutation::reversal(5).descent_number(), 4);
        assert_eq!(Permutation::new(vec![3, 1, 2]).unwrap().descent_number(), 1);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
    }

    #[test]
    fn inverse_and_compose() {
        let p = Permutation::new(vec![3, 1, 4, 2]).unwrap();
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(4));
        assert_eq!(p.inverse().apply(3), 1);
    }

    #[test]
    fn unshuffle_counts() {
        assert_eq!(unshuffles(&[1, 1]).len(), 2);
        assert_eq!(unshuffles(&[2, 1]).len(), 3);
        assert_eq!(unshuffles(&[4]), vec![Permutation::identity(4)]);
        assert_eq!(unshuffles(&[2, 1, 2]).len(), 30);
    }

    #[test]
    fn unshuffles_match_brute_force() {
        for blocks in compositions(5) {
            let mut brute: Vec<_> = all_permutations(5)
                .into_iter()
                .filter(|p| p.is_unshuffle(&blocks))
                .collect();
            let mut fast = unshuffles(&blocks);
            brute.sort();
            fast.sort();
            assert_eq!(brute, fast, "{blocks:?}");
        }
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(all_permutations(5).len(), 120);
        assert_eq!(compositions(4).len(), 8);
        assert_eq!(weak_compositions(2, 3).len(), 6);
        assert_eq!(combinations(5, 2).len(), 10);
    }
}
