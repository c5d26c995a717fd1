use num_bigint::BigInt;
use phylomatroid::phylo::{
    enumerate_cycle_networks, enumerate_mixture_cases, enumerate_trees, mixture_pair_count,
    CycleNetwork, ModelKind, Parameterization, Permutation, Tree,
};
use phylomatroid::poly::Rational;
use proptest::prelude::*;
use proptest::sample::Index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn double_factorial(mut k: u64) -> u64 {
    let mut acc = 1;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

#[test]
fn tree_counts_are_double_factorials() {
    for n in 4..=8 {
        assert_eq!(enumerate_trees(n).unwrap().len() as u64, double_factorial(2 * n as u64 - 5), "n = {n}");
    }
}

#[test]
fn orbit_sizes_partition_the_pairs() {
    for n in 4..=5 {
        let cases = enumerate_mixture_cases(n).unwrap();
        let total: u64 = cases.iter().map(|c| c.orbit_size).sum();
        assert_eq!(total, mixture_pair_count(n).unwrap(), "n = {n}");
    }
}

fn tree_and_permutation() -> impl Strategy<Value = (Tree, Permutation)> {
    (4usize..=7, any::<Index>(), any::<u64>()).prop_map(
        |(n, t, seed)| {
            let trees = enumerate_trees(n).unwrap();
            let mut images: Vec<usize> = (1..=n).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in (1..n).rev() {
                images.swap(i, rng.gen_range(0..=i));
            }
            (t.get(&trees).clone(), Permutation::from_images(&images).unwrap())
        },
    )
}

fn kind() -> impl Strategy<Value = ModelKind> {
    prop::sample::select(ModelKind::ALL.to_vec())
}

proptest! {
    #[test]
    fn relabelling_round_trips((t, sigma) in tree_and_permutation()) {
        let there = t.apply_permutation(&sigma).unwrap();
        prop_assert_eq!(there.apply_permutation(&sigma.inverse()).unwrap(), t.clone());
        prop_assert_eq!(Tree::parse_with_leaves(&there.to_string(), t.n()).unwrap(), there);
    }

    #[test]
    fn coordinate_count_and_monomial_degrees((t, _) in tree_and_permutation(), kind in kind()) {
        let p = Parameterization::tree(&t, kind);
        let order = kind.group().order() as usize;
        prop_assert_eq!(p.coordinates().len(), order.pow(t.n() as u32 - 1));
        prop_assert_eq!(t.splits().len(), 2 * t.n() - 3);
        for (c, f) in p.coordinates().iter().zip(p.components()) {
            let expected = t.splits().iter().filter(|s| c.sum_over(s.block()) != 0).count();
            prop_assert_eq!(f.num_terms(), 1);
            prop_assert_eq!(f.total_degree() as usize, expected);
            prop_assert!(expected <= 2 * t.n() - 3);
        }
    }
}

#[test]
fn k3p_restricts_to_cfn() {
    for n in 4..=6 {
        for t in enumerate_trees(n).unwrap() {
            let projected = Parameterization::tree(&t, ModelKind::K3p).project_to_cfn().unwrap();
            let cfn = Parameterization::tree(&t, ModelKind::Cfn);
            assert_eq!(projected.vars().names(), cfn.vars().names(), "{t}");
            assert_eq!(projected.coordinates(), cfn.coordinates(), "{t}");
            assert_eq!(projected.components(), cfn.components(), "{t}");
        }
    }
    let cfn = Parameterization::tree(&Tree::parse("12|34").unwrap(), ModelKind::Cfn);
    assert!(cfn.project_to_cfn().is_err());
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(BigInt::from(rng.gen_range(-40i64..=40)), BigInt::from(rng.gen_range(1i64..=9)))
}

/// The network map agrees with the mixture of its two deletion trees once
/// each tree parameter is replaced by the product of the network parameters
/// of the edges inducing its split.
fn check_network_is_mixture(net: &CycleNetwork, kind: ModelKind, rng: &mut ChaCha8Rng) {
    let classes = kind.parameter_classes().len();
    let network = Parameterization::network(net, kind);
    let trees = [net.deletion_tree(0), net.deletion_tree(1)];
    let mixture = Parameterization::mixture(&trees[0], &trees[1], kind).unwrap();
    assert_eq!(network.coordinates(), mixture.coordinates());
    let names = mixture.vars().names();
    for _ in 0..4 {
        let x: Vec<Rational> = (0..network.vars().len()).map(|_| random_rational(rng)).collect();
        let mut y = Vec::with_capacity(names.len());
        for (term, tree) in trees.iter().enumerate() {
            let edges = net.deletion_edges(term);
            for split in tree.splits() {
                for (c, class) in kind.parameter_classes().iter().enumerate() {
                    let name = &names[y.len()];
                    assert!(name.starts_with(&format!("T{}.a{class}_", term + 1)), "{name}");
                    let v = edges
                        .iter()
                        .filter(|e| e.split == *split)
                        .fold(Rational::from_integer(1.into()), |acc, e| acc * &x[e.edge * classes + c]);
                    y.push(v);
                }
            }
        }
        y.push(x.last().unwrap().clone());
        assert_eq!(y.len(), names.len());
        for (f, g) in network.components().iter().zip(mixture.components()) {
            assert_eq!(f.eval(&x).unwrap(), g.eval(&y).unwrap(), "{net} {kind}");
        }
    }
}

#[test]
fn networks_are_mixtures_with_shared_parameters() {
    let mut rng = ChaCha8Rng::seed_from_u64(57);
    let mut nets: Vec<CycleNetwork> = (2..=4)
        .flat_map(|k| enumerate_cycle_networks(4, k).unwrap())
        .collect();
    nets.extend([CycleNetwork::cherry_45(), CycleNetwork::cherry_23(), CycleNetwork::sunlet5()]);
    for net in &nets {
        for kind in ModelKind::ALL {
            check_network_is_mixture(net, kind, &mut rng);
        }
    }
}
