use crate::error::{Error, Result};

use super::tree::{enumerate_trees, Permutation, Tree};

/// A mixture comparison `{T1, T2}` vs `{S1, S2}`: two distinct 2-multisets
/// of trees, each written with its smaller tree first and with
/// `left < right` in the canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MixtureCase {
    pub left: [Tree; 2],
    pub right: [Tree; 2],
    /// Number of pairs in this case's orbit under relabelling of the leaves.
    pub orbit_size: u64,
}

/// Index arithmetic over multisets `a <= b` and pairs `m1 < m2`, both in
/// lexicographic order of tree indices.
struct Indexing {
    trees: usize,
    multisets: usize,
}

impl Indexing {
    fn new(trees: usize) -> Self {
        Indexing {
            trees,
            multisets: trees * (trees + 1) / 2,
        }
    }

    fn multiset(&self, a: usize, b: usize) -> usize {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        a * self.trees - a * (a.saturating_sub(1)) / 2 + (b - a)
    }

    fn pair(&self, m1: usize, m2: usize) -> usize {
        let (m1, m2) = if m1 < m2 { (m1, m2) } else { (m2, m1) };
        m1 * self.multisets - m1 * (m1 + 1) / 2 + (m2 - m1 - 1)
    }

    fn pair_count(&self) -> usize {
        self.multisets * (self.multisets - 1) / 2
    }
}

/// Number of unordered pairs of distinct 2-multisets of `n`-leaf trees.
pub fn mixture_pair_count(n: usize) -> Result<u64> {
    let t = enumerate_trees(n)?.len();
    Ok(Indexing::new(t).pair_count() as u64)
}

/// One representative per orbit of mixture pairs under the action of the
/// symmetric group on the leaves. Representatives are the lexicographically
/// smallest member of their orbit and are returned in increasing order.
pub fn enumerate_mixture_cases(n: usize) -> Result<Vec<MixtureCase>> {
    if !(4..=6).contains(&n) {
        return Err(Error::arg(format!("mixture cases need 4 <= n <= 6, got {n}")));
    }
    let trees = enumerate_trees(n)?;
    let ix = Indexing::new(trees.len());
    let perms = Permutation::all(n);

    // image[p][t] = index of sigma_p(tree t)
    let image: Vec<Vec<u32>> = perms
        .iter()
        .map(|sigma| {
            trees
                .iter()
                .map(|t| {
                    let u = t.apply_permutation(sigma).expect("same leaf count");
                    trees.binary_search(&u).expect("relabelled tree is enumerated") as u32
                })
                .collect()
        })
        .collect();

    let multisets: Vec<(usize, usize)> = (0..trees.len())
        .flat_map(|a| (a..trees.len()).map(move |b| (a, b)))
        .collect();
    debug_assert!(multisets
        .iter()
        .enumerate()
        .all(|(i, &(a, b))| ix.multiset(a, b) == i));

    let mut visited = vec![0u64; ix.pair_count().div_ceil(64)];
    let mut out = Vec::new();
    let mut pair = 0usize;
    for m1 in 0..multisets.len() {
        for m2 in m1 + 1..multisets.len() {
            let idx = pair;
            pair += 1;
            if visited[idx / 64] >> (idx % 64) & 1 == 1 {
                continue;
            }
            let mut orbit = 0u64;
            let ((a, b), (c, d)) = (multisets[m1], multisets[m2]);
            for img in &image {
                let u1 = ix.multiset(img[a] as usize, img[b] as usize);
                let u2 = ix.multiset(img[c] as usize, img[d] as usize);
                let j = ix.pair(u1, u2);
                let (w, bit) = (j / 64, 1u64 << (j % 64));
                if visited[w] & bit == 0 {
                    visited[w] |= bit;
                    orbit += 1;
                }
            }
            out.push(MixtureCase {
                left: [trees[a].clone(), trees[b].clone()],
                right: [trees[c].clone(), trees[d].clone()],
                orbit_size: orbit,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Orbit count by Burnside's lemma. A permutation fixes the pair
    /// `{m1, m2}` when it fixes both multisets or swaps them.
    fn burnside_orbits(n: usize) -> u64 {
        let trees = enumerate_trees(n).unwrap();
        let multisets: Vec<(usize, usize)> = (0..trees.len())
            .flat_map(|a| (a..trees.len()).map(move |b| (a, b)))
            .collect();
        let perms = Permutation::all(n);
        let mut total = 0u64;
        for sigma in &perms {
            let img: Vec<usize> = trees
                .iter()
                .map(|t| trees.binary_search(&t.apply_permutation(sigma).unwrap()).unwrap())
                .collect();
            let act = |(a, b): (usize, usize)| {
                let (x, y) = (img[a], img[b]);
                if x <= y {
                    (x, y)
                } else {
                    (y, x)
                }
            };
            let mut fixed = 0u64;
            let mut two_cycles = 0u64;
            for &m in &multisets {
                let u = act(m);
                if u == m {
                    fixed += 1;
                } else if act(u) == m && m < u {
                    two_cycles += 1;
                }
            }
            total += fixed * fixed.saturating_sub(1) / 2 + two_cycles;
        }
        total / perms.len() as u64
    }

    #[test]
    fn indexing_is_lexicographic() {
        let ix = Indexing::new(5);
        let mut k = 0;
        for m1 in 0..ix.multisets {
            for m2 in m1 + 1..ix.multisets {
                assert_eq!(ix.pair(m1, m2), k);
                assert_eq!(ix.pair(m2, m1), k);
                k += 1;
            }
        }
        assert_eq!(k, ix.pair_count());
    }

    #[test]
    fn small_orbit_counts_match_burnside() {
        for n in [4, 5] {
            let cases = enumerate_mixture_cases(n).unwrap();
            assert_eq!(cases.len() as u64, burnside_orbits(n), "n = {n}");
            let total: u64 = cases.iter().map(|c| c.orbit_size).sum();
            assert_eq!(total, mixture_pair_count(n).unwrap());
        }
        assert_eq!(enumerate_mixture_cases(4).unwrap().len(), 4);
    }

    #[test]
    fn representatives_are_orbit_minima() {
        let cases = enumerate_mixture_cases(4).unwrap();
        let trees = enumerate_trees(4).unwrap();
        let key = |c: &MixtureCase| {
            let m = |t: &[Tree; 2]| {
                let (a, b) = (
                    trees.binary_search(&t[0]).unwrap(),
                    trees.binary_search(&t[1]).unwrap(),
                );
                (a.min(b), a.max(b))
            };
            let (x, y) = (m(&c.left), m(&c.right));
            (x.min(y), x.max(y))
        };
        for c in &cases {
            for sigma in Permutation::all(4) {
                let moved = MixtureCase {
                    left: [
                        c.left[0].apply_permutation(&sigma).unwrap(),
                        c.left[1].apply_permutation(&sigma).unwrap(),
                    ],
                    right: [
                        c.right[0].apply_permutation(&sigma).unwrap(),
                        c.right[1].apply_permutation(&sigma).unwrap(),
                    ],
                    orbit_size: 0,
                };
                assert!(key(c) <= key(&moved));
            }
        }
    }

    #[test]
    fn out_of_range_is_rejected() {
        assert!(enumerate_mixture_cases(3).is_err());
        assert!(enumerate_mixture_cases(7).is_err());
    }
}
