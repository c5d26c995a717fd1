//! Trees, cycle networks, group-based models and their Fourier-coordinate
//! parameterizations.

mod enumerate;
mod group;
mod network;
mod param;
mod tree;

pub use enumerate::{enumerate_mixture_cases, mixture_pair_count, MixtureCase};
pub use group::{FourierCoordinate, Group, GroupElement, ModelKind};
pub use network::{enumerate_cycle_networks, Attachment, CycleNetwork, InheritedEdge};
pub use param::{
    fourier_map, jacobian, jacobian_of, mixture_map, network_map, project_to_cfn,
    Parameterization, LAMBDA,
};
pub use tree::{enumerate_trees, Permutation, Split, Tree, MAX_LEAVES};
