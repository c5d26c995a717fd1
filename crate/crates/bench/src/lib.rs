//! Shared inputs for the benchmarks.

use phylomatroid::phylo::{CycleNetwork, ModelKind, Parameterization, Tree};

/// A CFN 6-leaf two-tree mixture: 32 coordinates, dimension 19.
pub fn cfn_six_leaf_mixture() -> Parameterization {
    let a = Tree::parse("12|3456,123|456,1234|56").expect("valid tree");
    let b = Tree::parse("13|2456,135|246,1356|24").expect("valid tree");
    Parameterization::mixture(&a, &b, ModelKind::Cfn).expect("same leaf count")
}

/// A K3P 4-leaf 3-cycle network with a cherry at the reticulation, the
/// slowest 4-leaf network dimension.
pub fn k3p_cherry_network() -> Parameterization {
    let net = CycleNetwork::parse("(1,2)-3-4").expect("valid network");
    Parameterization::network(&net, ModelKind::K3p)
}

/// A CFN 4-leaf tree (monomial map).
pub fn cfn_quartet() -> Parameterization {
    Parameterization::tree(&Tree::parse("12|34").expect("valid tree"), ModelKind::Cfn)
}
