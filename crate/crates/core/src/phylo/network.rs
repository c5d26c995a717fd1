use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

use super::tree::{full_mask, Split, Tree, MAX_LEAVES};

/// Subtree hanging off one cycle vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Attachment {
    /// A single leaf (0-based label).
    Leaf(u8),
    /// A cherry on two leaves, smaller label first.
    Cherry(u8, u8),
}

impl Attachment {
    pub fn mask(self) -> u32 {
        match self {
            Attachment::Leaf(a) => 1 << a,
            Attachment::Cherry(a, b) => 1 << a | 1 << b,
        }
    }

    fn min_leaf(self) -> u8 {
        match self {
            Attachment::Leaf(a) | Attachment::Cherry(a, _) => a,
        }
    }
}

impl fmt::Display for Attachment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Attachment::Leaf(a) => write!(f, "{}", a + 1),
            Attachment::Cherry(a, b) => write!(f, "({},{})", a + 1, b + 1),
        }
    }
}

/// Semi-directed network with a single reticulation vertex on a `k`-cycle.
///
/// Cycle vertex 0 is the reticulation vertex; vertices `0..k` appear in cycle
/// order and each carries a leaf or a cherry. Edges are labelled
/// `e1..en` for the leaf edges, `e(n+1)..e(n+k)` for the cycle edges (cycle
/// edge `j` joins vertices `j` and `j+1 mod k`, so the reticulation edges are
/// the first and the last of them), followed by one edge per cherry joining
/// it to the cycle, in vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleNetwork {
    n: u8,
    cycle: Vec<Attachment>,
}

/// Edge of a tree obtained by deleting a reticulation edge, together with the
/// split it induces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InheritedEdge {
    /// 0-based network edge index (`e1` is 0).
    pub edge: usize,
    pub split: Split,
}

impl CycleNetwork {
    pub fn new(cycle: Vec<Attachment>) -> Result<Self> {
        if cycle.len() < 2 {
            return Err(Error::arg("a cycle network needs at least two cycle vertices"));
        }
        let mut seen = 0u32;
        let mut cycle = cycle;
        for a in cycle.iter_mut() {
            if let Attachment::Cherry(x, y) = *a {
                if x == y {
                    return Err(Error::arg(format!("cherry repeats leaf {}", x + 1)));
                }
                *a = Attachment::Cherry(x.min(y), x.max(y));
            }
            if seen & a.mask() != 0 {
                return Err(Error::arg(format!("leaf repeated in {a}")));
            }
            seen |= a.mask();
        }
        let n = seen.count_ones() as usize;
        if n > MAX_LEAVES || seen != full_mask(n) {
            return Err(Error::arg("network leaves must be exactly 1..n"));
        }
        if n < 3 {
            return Err(Error::arg("a cycle network needs at least three leaves"));
        }
        let mut net = CycleNetwork { n: n as u8, cycle };
        net.canonicalize();
        Ok(net)
    }

    /// Reading the cycle in the other direction from the reticulation vertex
    /// gives the same network; keep the orientation whose sequence of minimum
    /// leaves is lexicographically smaller.
    fn canonicalize(&mut self) {
        let fwd: Vec<u8> = self.cycle[1..].iter().map(|a| a.min_leaf()).collect();
        let rev: Vec<u8> = fwd.iter().rev().copied().collect();
        if rev < fwd {
            self.cycle[1..].reverse();
        }
    }

    /// Parses `1-2-3-4` or `1-2-3-(4,5)`; the first vertex is the reticulation.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::data(format!("malformed network {text:?}"));
        let leaf = |s: &str| -> Result<u8> {
            let v: u8 = s.trim().parse().map_err(|_| bad())?;
            if v == 0 || v as usize > MAX_LEAVES {
                return Err(bad());
            }
            Ok(v - 1)
        };
        let mut cycle = Vec::new();
        for part in text.trim().split('-') {
            let part = part.trim();
            if let Some(inner) = part.strip_prefix('(').and_then(|p| p.strip_suffix(')')) {
                let (a, b) = inner.split_once(',').ok_or_else(bad)?;
                cycle.push(Attachment::Cherry(leaf(a)?, leaf(b)?));
            } else {
                cycle.push(Attachment::Leaf(leaf(part)?));
            }
        }
        CycleNetwork::new(cycle).map_err(|e| Error::data(e.to_string()))
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Cycle size `k`.
    pub fn k(&self) -> usize {
        self.cycle.len()
    }

    pub fn cycle(&self) -> &[Attachment] {
        &self.cycle
    }

    pub fn edge_count(&self) -> usize {
        let cherries = self
            .cycle
            .iter()
            .filter(|a| matches!(a, Attachment::Cherry(..)))
            .count();
        self.n() + self.k() + cherries
    }

    /// Network edge index of reticulation edge `term` (0: between the
    /// reticulation and vertex 1, 1: between vertex `k-1` and the reticulation).
    pub fn reticulation_edge(&self, term: usize) -> usize {
        assert!(term < 2, "a cycle network has two reticulation edges");
        self.n() + if term == 0 { 0 } else { self.k() - 1 }
    }

    /// Edges of the tree obtained by deleting reticulation edge `term`, each
    /// with its split. Vertices of degree two are suppressed only
    /// conceptually: both edges of a suppressed path are kept and induce the
    /// same split.
    pub fn deletion_edges(&self, term: usize) -> Vec<InheritedEdge> {
        let (n, k) = (self.n(), self.k());
        let deleted = self.reticulation_edge(term);
        let split = |side: u32| Split::from_side(n, side).expect("nonempty proper side");
        let mut out: Vec<InheritedEdge> = (0..n)
            .map(|i| InheritedEdge {
                edge: i,
                split: split(1 << i),
            })
            .collect();
        // Cycle vertices along the remaining path, from one end to the other.
        let path: Vec<usize> = if term == 0 {
            (1..k).chain([0]).collect()
        } else {
            (0..k).collect()
        };
        // Deleting cycle edge 0 leaves edges 1..k, deleting edge k-1 leaves 0..k-1.
        let first = if term == 0 { 1 } else { 0 };
        let mut side = 0u32;
        for (i, w) in path.windows(2).enumerate() {
            side |= self.cycle[w[0]].mask();
            let edge = n + first + i;
            debug_assert_ne!(edge, deleted);
            out.push(InheritedEdge {
                edge,
                split: split(side),
            });
        }
        let mut next = n + k;
        for a in &self.cycle {
            if let Attachment::Cherry(..) = a {
                out.push(InheritedEdge {
                    edge: next,
                    split: split(a.mask()),
                });
                next += 1;
            }
        }
        out.sort_by_key(|e| e.edge);
        out
    }

    /// The tree obtained by deleting reticulation edge `term`.
    pub fn deletion_tree(&self, term: usize) -> Tree {
        let splits: BTreeSet<Split> = self.deletion_edges(term).iter().map(|e| e.split).collect();
        Tree::from_splits(self.n(), splits).expect("deleting a reticulation edge leaves a tree")
    }

    /// 4-cycle network `1-2-3-4`; its CFN matroid equals that of [`Self::square_1243`].
    pub fn square_1234() -> Self {
        Self::parse("1-2-3-4").expect("valid")
    }

    pub fn square_1243() -> Self {
        Self::parse("1-2-4-3").expect("valid")
    }

    /// 5-leaf 4-cycle network with the cherry `{4,5}` beside the reticulation.
    pub fn cherry_45() -> Self {
        Self::parse("1-(4,5)-3-2").expect("valid")
    }

    /// 5-leaf 4-cycle network with the cherry `{2,3}` beside the reticulation.
    pub fn cherry_23() -> Self {
        Self::parse("1-(2,3)-4-5").expect("valid")
    }

    /// 5-leaf 5-cycle network with the reticulation at leaf 1.
    pub fn sunlet5() -> Self {
        Self::parse("1-2-3-4-5").expect("valid")
    }

    /// Looks up a built-in network by name.
    pub fn builtin(name: &str) -> Option<Self> {
        Some(match name {
            "square_1234" => Self::square_1234(),
            "square_1243" => Self::square_1243(),
            "cherry_45" => Self::cherry_45(),
            "cherry_23" => Self::cherry_23(),
            "sunlet5" => Self::sunlet5(),
            _ => return None,
        })
    }
}

impl fmt::Display for CycleNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.cycle.iter().enumerate() {
            if i > 0 {
                write!(f, "-")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// All leaf-labelled `k`-cycle networks on `n` leaves whose cycle vertices
/// carry a leaf or a cherry, in canonical order.
pub fn enumerate_cycle_networks(n: usize, k: usize) -> Result<Vec<CycleNetwork>> {
    if !(3..=MAX_LEAVES).contains(&n) || k < 2 || k > n || n > 2 * k {
        return Err(Error::arg(format!(
            "no {k}-cycle networks on {n} leaves with leaf or cherry attachments"
        )));
    }
    fn go(
        n: usize,
        k: usize,
        used: u32,
        cur: &mut Vec<Attachment>,
        out: &mut BTreeSet<CycleNetwork>,
    ) {
        let remaining = n - used.count_ones() as usize;
        let slots = k - cur.len();
        if slots == 0 {
            if remaining == 0 {
                out.insert(CycleNetwork::new(cur.clone()).expect("valid by construction"));
            }
            return;
        }
        if remaining < slots || remaining > 2 * slots {
            return;
        }
        for a in 0..n as u8 {
            if used >> a & 1 == 1 {
                continue;
            }
            cur.push(Attachment::Leaf(a));
            go(n, k, used | 1 << a, cur, out);
            cur.pop();
            for b in a + 1..n as u8 {
                if used >> b & 1 == 1 {
                    continue;
                }
                cur.push(Attachment::Cherry(a, b));
                go(n, k, used | 1 << a | 1 << b, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_deletion_trees() {
        let net = CycleNetwork::square_1234();
        // Deleting e5 (the edge 1-2) leaves splits 14|23 on e7.
        let t1 = net.deletion_edges(0);
        let e: Vec<usize> = t1.iter().map(|x| x.edge + 1).collect();
        assert_eq!(e, vec![1, 2, 3, 4, 6, 7, 8]);
        let by_edge = |es: &[InheritedEdge], i: usize| {
            es.iter().find(|x| x.edge + 1 == i).unwrap().split.to_string()
        };
        assert_eq!(by_edge(&t1, 6), "2|134");
        assert_eq!(by_edge(&t1, 7), "23|14");
        assert_eq!(by_edge(&t1, 8), "1|234");
        let t2 = net.deletion_edges(1);
        let e: Vec<usize> = t2.iter().map(|x| x.edge + 1).collect();
        assert_eq!(e, vec![1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(by_edge(&t2, 5), "1|234");
        assert_eq!(by_edge(&t2, 6), "12|34");
        assert_eq!(by_edge(&t2, 7), "123|4");
        assert_eq!(net.deletion_tree(0).to_string(), "23|14");
        assert_eq!(net.deletion_tree(1).to_string(), "12|34");
    }

    #[test]
    fn builtins_are_canonical() {
        assert_eq!(CycleNetwork::cherry_45().to_string(), "1-2-3-(4,5)");
        assert_eq!(CycleNetwork::cherry_23().to_string(), "1-(2,3)-4-5");
        assert_eq!(CycleNetwork::parse("1-4-3-2").unwrap(), CycleNetwork::square_1234());
        assert_eq!(CycleNetwork::parse("1-(5,4)-3-2").unwrap(), CycleNetwork::cherry_45());
        for name in ["square_1234", "square_1243", "cherry_45", "cherry_23", "sunlet5"] {
            let net = CycleNetwork::builtin(name).unwrap();
            assert_eq!(CycleNetwork::parse(&net.to_string()).unwrap(), net);
        }
        assert!(CycleNetwork::builtin("nope").is_none());
    }

    #[test]
    fn cherry_networks_have_attachment_edges() {
        let net = CycleNetwork::cherry_45();
        assert_eq!(net.edge_count(), 5 + 4 + 1);
        for term in 0..2 {
            let edges = net.deletion_edges(term);
            assert_eq!(edges.len(), net.edge_count() - 1);
            assert_eq!(net.deletion_tree(term).splits().len(), 7);
        }
    }

    #[test]
    fn parse_rejects_bad_networks() {
        for bad in ["1", "1-1-2", "1-2-4", "1-(2,2)-3", "1-2-x", "(1,2"] {
            assert!(CycleNetwork::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn four_leaf_four_cycle_count() {
        // 4 reticulation leaves times 3!/2 cycle orders.
        assert_eq!(enumerate_cycle_networks(4, 4).unwrap().len(), 12);
        assert_eq!(enumerate_cycle_networks(4, 2).unwrap().len(), 6);
        assert!(enumerate_cycle_networks(4, 5).is_err());
    }
}
