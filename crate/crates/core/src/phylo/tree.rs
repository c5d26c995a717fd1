use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported leaf count; leaf labels are the digits `1..=9`.
pub const MAX_LEAVES: usize = 9;

/// Bipartition `A|B` of the leaf set `[n]`, stored as the side that does not
/// contain leaf `n` (bit `i` stands for leaf `i + 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Split {
    n: u8,
    block: u32,
}

impl Split {
    /// Canonical split with one side equal to `side`.
    pub fn from_side(n: usize, side: u32) -> Result<Self> {
        if !(2..=MAX_LEAVES).contains(&n) {
            return Err(Error::arg(format!("unsupported leaf count {n}")));
        }
        let all = full_mask(n);
        if side & !all != 0 {
            return Err(Error::arg(format!("split side {side:#b} outside [{n}]")));
        }
        let block = if side >> (n - 1) & 1 == 1 { all & !side } else { side };
        if block == 0 {
            return Err(Error::arg("split sides must be nonempty"));
        }
        Ok(Split { n: n as u8, block })
    }

    pub fn n(self) -> usize {
        self.n as usize
    }

    /// Side not containing leaf `n`.
    pub fn block(self) -> u32 {
        self.block
    }

    pub fn complement(self) -> u32 {
        full_mask(self.n()) & !self.block
    }

    pub fn is_trivial(self) -> bool {
        self.block.count_ones() == 1 || self.complement().count_ones() == 1
    }

    /// Two splits are compatible when some pair of opposite sides is disjoint.
    pub fn compatible(self, other: Split) -> bool {
        let (a, b) = (self.block, self.complement());
        let (c, d) = (other.block, other.complement());
        a & c == 0 || a & d == 0 || b & c == 0 || b & d == 0
    }

    pub fn permuted(self, sigma: &Permutation) -> Split {
        Split::from_side(self.n(), sigma.apply_mask(self.block)).expect("permutation preserves [n]")
    }

    /// Parses `A|B` with both sides written as leaf digits, e.g. `12|3456`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let (a, b) = text
            .split_once('|')
            .ok_or_else(|| Error::data(format!("split {text:?} lacks '|'")))?;
        let a = parse_leaves(n, a)?;
        let b = parse_leaves(n, b)?;
        if a & b != 0 || a | b != full_mask(n) {
            return Err(Error::data(format!("{text:?} is not a split of [{n}]")));
        }
        Split::from_side(n, a).map_err(|e| Error::data(e.to_string()))
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_leaves(f, self.block)?;
        write!(f, "|")?;
        write_leaves(f, self.complement())
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    (1u32 << n) - 1
}

pub(crate) fn write_leaves(f: &mut impl fmt::Write, mask: u32) -> fmt::Result {
    for i in 0..32 {
        if mask >> i & 1 == 1 {
            write!(f, "{}", i + 1)?;
        }
    }
    Ok(())
}

fn parse_leaves(n: usize, text: &str) -> Result<u32> {
    let mut mask = 0u32;
    for ch in text.chars() {
        let leaf = ch
            .to_digit(10)
            .filter(|&d| d >= 1 && d as usize <= n)
            .ok_or_else(|| Error::data(format!("bad leaf label {ch:?} for n = {n}")))?;
        let bit = 1 << (leaf - 1);
        if mask & bit != 0 {
            return Err(Error::data(format!("leaf {leaf} repeated")));
        }
        mask |= bit;
    }
    if mask == 0 {
        return Err(Error::data("empty split side"));
    }
    Ok(mask)
}

/// Bijection of the leaf set; `images[i]` is the (0-based) image of leaf `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    /// From 1-based images: `[2, 3, 1]` sends leaf 1 to 2, 2 to 3, 3 to 1.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::arg(format!("{images:?} is not a permutation of [{n}]")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&v| (v - 1) as u8).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based leaf index `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn apply_mask(&self, mask: u32) -> u32 {
        let mut out = 0;
        for (i, &img) in self.images.iter().enumerate() {
            if mask >> i & 1 == 1 {
                out |= 1 << img;
            }
        }
        out
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.n()];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// All `n!` permutations, in lexicographic order of their image lists.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..n as u8).collect();
        loop {
            out.push(Permutation {
                images: cur.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
    }
}

/// Unrooted binary leaf-labelled tree on `[n]`, represented by its full split
/// set (including the `n` leaf splits).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tree {
    n: u8,
    splits: Vec<Split>,
}

impl Tree {
    /// Builds a binary tree from its splits; trivial splits may be omitted.
    pub fn from_splits(n: usize, splits: impl IntoIterator<Item = Split>) -> Result<Self> {
        if !(3..=MAX_LEAVES).contains(&n) {
            return Err(Error::arg(format!("unsupported leaf count {n}")));
        }
        let mut set: BTreeSet<Split> = BTreeSet::new();
        for s in splits {
            if s.n() != n {
                return Err(Error::arg(format!("split {s} is not a split of [{n}]")));
            }
            set.insert(s);
        }
        for i in 0..n {
            set.insert(Split::from_side(n, 1 << i)?);
        }
        let splits: Vec<Split> = set.into_iter().collect();
        for (i, a) in splits.iter().enumerate() {
            for b in &splits[i + 1..] {
                if !a.compatible(*b) {
                    return Err(Error::arg(format!("splits {a} and {b} are incompatible")));
                }
            }
        }
        if splits.len() != 2 * n - 3 {
            return Err(Error::arg(format!(
                "{} splits do not form a binary tree on {n} leaves (need {})",
                splits.len(),
                2 * n - 3
            )));
        }
        Ok(Tree { n: n as u8, splits })
    }

    /// Parses a comma-separated list of nontrivial splits, e.g.
    /// `12|3456,123|456,1234|56`. The leaf count is the largest label.
    pub fn parse(text: &str) -> Result<Self> {
        let n = text
            .chars()
            .filter_map(|c| c.to_digit(10))
            .max()
            .ok_or_else(|| Error::data(format!("tree {text:?} has no leaves")))?
            as usize;
        Self::parse_with_leaves(text, n)
    }

    pub fn parse_with_leaves(text: &str, n: usize) -> Result<Self> {
        let splits = text
            .split(',')
            .map(|s| Split::parse(n, s.trim()))
            .collect::<Result<Vec<_>>>()?;
        Tree::from_splits(n, splits).map_err(|e| Error::data(e.to_string()))
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// All `2n - 3` splits in canonical order.
    pub fn splits(&self) -> &[Split] {
        &self.splits
    }

    pub fn nontrivial_splits(&self) -> impl Iterator<Item = Split> + '_ {
        self.splits.iter().copied().filter(|s| !s.is_trivial())
    }

    pub fn has_split(&self, s: Split) -> bool {
        self.splits.binary_search(&s).is_ok()
    }

    /// Relabels leaf `i` as `sigma(i)`.
    pub fn apply_permutation(&self, sigma: &Permutation) -> Result<Tree> {
        if sigma.n() != self.n() {
            return Err(Error::arg(format!(
                "permutation of [{}] applied to a tree on [{}]",
                sigma.n(),
                self.n()
            )));
        }
        let mut splits: Vec<Split> = self.splits.iter().map(|s| s.permuted(sigma)).collect();
        splits.sort_unstable();
        Ok(Tree { n: self.n, splits })
    }

    /// The tree obtained by attaching leaf `n + 1` to the edge with split `edge`.
    fn insert_leaf(&self, edge: Split) -> Tree {
        let n = self.n();
        let new_bit = 1u32 << n;
        let (a, b) = (edge.block(), edge.complement());
        let mut sides = vec![new_bit];
        for &f in &self.splits {
            if f == edge {
                sides.push(a | new_bit);
                sides.push(b | new_bit);
            } else {
                let (x, y) = (f.block(), f.complement());
                // Leaf n+1 joins whichever side of f holds the edge.
                if a & !x == 0 || b & !x == 0 {
                    sides.push(x | new_bit);
                } else {
                    sides.push(y | new_bit);
                }
            }
        }
        let mut splits: Vec<Split> = sides
            .into_iter()
            .map(|s| Split::from_side(n + 1, s).expect("valid side"))
            .collect();
        splits.sort_unstable();
        Tree {
            n: (n + 1) as u8,
            splits,
        }
    }

    fn star3() -> Tree {
        Tree::from_splits(3, []).expect("3-leaf star")
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.nontrivial_splits().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// All unrooted binary trees on `[n]`, `4 <= n <= 8`, in canonical order.
pub fn enumerate_trees(n: usize) -> Result<Vec<Tree>> {
    if !(4..=8).contains(&n) {
        return Err(Error::arg(format!("tree enumeration needs 4 <= n <= 8, got {n}")));
    }
    let mut level = vec![Tree::star3()];
    for _ in 3..n {
        level = level
            .iter()
            .flat_map(|t| t.splits.iter().map(move |&e| t.insert_leaf(e)))
            .collect();
    }
    level.sort();
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: choose `n - 3` pairwise compatible nontrivial
    /// splits by brute force.
    fn count_by_compatible_sets(n: usize) -> usize {
        let nontrivial: Vec<Split> = (1..full_mask(n))
            .filter(|m| m >> (n - 1) & 1 == 0)
            .map(|m| Split::from_side(n, m).unwrap())
            .filter(|s| !s.is_trivial())
            .collect();
        fn go(cands: &[Split], chosen: &mut Vec<Split>, need: usize) -> usize {
            if chosen.len() == need {
                return 1;
            }
            let mut total = 0;
            for (i, &s) in cands.iter().enumerate() {
                if chosen.iter().all(|c| c.compatible(s)) {
                    chosen.push(s);
                    total += go(&cands[i + 1..], chosen, need);
                    chosen.pop();
                }
            }
            total
        }
        go(&nontrivial, &mut Vec::new(), n - 3)
    }

    fn double_factorial(k: usize) -> usize {
        (1..=k).rev().step_by(2).product()
    }

    #[test]
    fn tree_counts_match_oracle() {
        for n in 4..=7 {
            let trees = enumerate_trees(n).unwrap();
            assert_eq!(trees.len(), double_factorial(2 * n - 5), "n = {n}");
            assert_eq!(trees.len(), count_by_compatible_sets(n), "n = {n}");
            let distinct: BTreeSet<&Tree> = trees.iter().collect();
            assert_eq!(distinct.len(), trees.len());
            assert!(trees.iter().all(|t| t.splits().len() == 2 * n - 3));
        }
        assert_eq!(enumerate_trees(4).unwrap().len(), 3);
        assert_eq!(enumerate_trees(5).unwrap().len(), 15);
        assert_eq!(enumerate_trees(6).unwrap().len(), 105);
        assert_eq!(enumerate_trees(8).unwrap().len(), 10395);
    }

    #[test]
    fn enumeration_range_is_checked() {
        assert!(matches!(enumerate_trees(3), Err(Error::Argument(_))));
        assert!(matches!(enumerate_trees(9), Err(Error::Argument(_))));
    }

    #[test]
    fn quartet_relabelling() {
        let t = Tree::parse("12|34").unwrap();
        let sigma = Permutation::from_images(&[1, 3, 2, 4]).unwrap();
        assert_eq!(t.apply_permutation(&sigma).unwrap(), Tree::parse("13|24").unwrap());
        assert_eq!(t.apply_permutation(&Permutation::identity(4)).unwrap(), t);
    }

    #[test]
    fn unresolved_pair_trees_are_related_by_relabelling() {
        let t1 = Tree::parse("12|3456,123|456,1234|56").unwrap();
        let t2 = Tree::parse("23|1456,123|456,1236|45").unwrap();
        let sigma = Permutation::from_images(&[2, 3, 1, 6, 4, 5]).unwrap();
        assert_eq!(t1.apply_permutation(&sigma).unwrap(), t2);
    }

    #[test]
    fn canonical_text_round_trips() {
        for t in enumerate_trees(6).unwrap() {
            let text = t.to_string();
            assert_eq!(Tree::parse(&text).unwrap(), t);
        }
        assert_eq!(
            Tree::parse("1236|45, 23|1456 ,123|456").unwrap().to_string(),
            "23|1456,123|456,45|1236"
        );
    }

    #[test]
    fn parse_rejects_invalid_trees() {
        assert!(Tree::parse("12|34,13|24").is_err());
        assert!(Tree::parse("12|3456").is_err());
        assert!(Tree::parse("12|33").is_err());
        assert!(Tree::parse("").is_err());
    }

    #[test]
    fn permutations_enumerate_factorial() {
        assert_eq!(Permutation::all(4).len(), 24);
        assert_eq!(Permutation::all(6).len(), 720);
        let p = Permutation::from_images(&[2, 3, 1, 6, 4, 5]).unwrap();
        assert_eq!(p.inverse().apply_mask(p.apply_mask(0b101101)), 0b101101);
    }
}
