use crate::error::{Error, Result};
use crate::matroid::{BinomialMap, JacobianMatroid};
use crate::poly::{PolyMatrix, Polynomial, Rational, Vars};

use super::group::{FourierCoordinate, Group, GroupElement, ModelKind};
use super::network::CycleNetwork;
use super::tree::{write_leaves, Split, Tree};

/// Name of the mixing parameter.
pub const LAMBDA: &str = "lambda";

/// Symbolic map from model parameters to the Fourier coordinates with
/// vanishing group sum, one polynomial per coordinate.
///
/// Parameters of the identity element are identically 1 and do not appear,
/// so the all-zero coordinate is the constant 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Parameterization {
    kind: ModelKind,
    n: usize,
    vars: Vars,
    coordinates: Vec<FourierCoordinate>,
    components: Vec<Polynomial>,
}

/// Edge contributing one factor per coordinate: the split it induces and the
/// index of its first parameter (one parameter per class follows).
struct Factor {
    split: Split,
    base: usize,
}

/// Parameter label of a split: its smaller side (the side without leaf `n`
/// on ties), e.g. `56` for `1234|56`.
fn block_name(s: Split) -> String {
    let (a, b) = (s.block(), s.complement());
    let side = if b.count_ones() < a.count_ones() { b } else { a };
    let mut out = String::new();
    write_leaves(&mut out, side).expect("writing to a String");
    out
}

fn monomial(kind: ModelKind, g: &FourierCoordinate, factors: &[Factor], vars: &Vars) -> Polynomial {
    let mut exps = vec![0u16; vars.len()];
    for f in factors {
        let s = g.sum_over(f.split.block());
        if s == 0 {
            continue;
        }
        let elem = GroupElement::new(kind.group(), s).expect("sum stays in the group");
        let class = kind.class_of(elem).expect("nonzero element has a class");
        exps[f.base + class] += 1;
    }
    Polynomial::monomial(vars, &exps, Rational::from_integer(1.into()))
}

fn tree_symbols(t: &Tree, kind: ModelKind, prefix: &str, names: &mut Vec<String>) -> Vec<Factor> {
    t.splits()
        .iter()
        .map(|&split| {
            let base = names.len();
            for class in kind.parameter_classes() {
                names.push(format!("{prefix}a{class}_{}", block_name(split)));
            }
            Factor { split, base }
        })
        .collect()
}

/// `lambda * m1 + (1 - lambda) * m2`
fn mix(lambda: &Polynomial, m1: &Polynomial, m2: &Polynomial) -> Polynomial {
    &(lambda * &(m1 - m2)) + m2
}

impl Parameterization {
    /// Fourier parameterization of a single tree.
    pub fn tree(t: &Tree, kind: ModelKind) -> Self {
        let mut names = Vec::new();
        let factors = tree_symbols(t, kind, "", &mut names);
        let vars = Vars::new(names);
        let coordinates = FourierCoordinate::all_zero_sum(kind.group(), t.n());
        let components = coordinates
            .iter()
            .map(|g| monomial(kind, g, &factors, &vars))
            .collect();
        Parameterization {
            kind,
            n: t.n(),
            vars,
            coordinates,
            components,
        }
    }

    /// Two-tree mixture with independent parameters for each tree and a
    /// shared mixing weight.
    pub fn mixture(t1: &Tree, t2: &Tree, kind: ModelKind) -> Result<Self> {
        if t1.n() != t2.n() {
            return Err(Error::arg(format!(
                "mixture of trees on {} and {} leaves",
                t1.n(),
                t2.n()
            )));
        }
        let mut names = Vec::new();
        let f1 = tree_symbols(t1, kind, "T1.", &mut names);
        let f2 = tree_symbols(t2, kind, "T2.", &mut names);
        names.push(LAMBDA.to_string());
        let vars = Vars::new(names);
        let lambda = Polynomial::var(&vars, vars.len() - 1);
        let coordinates = FourierCoordinate::all_zero_sum(kind.group(), t1.n());
        let components = coordinates
            .iter()
            .map(|g| {
                let m1 = monomial(kind, g, &f1, &vars);
                let m2 = monomial(kind, g, &f2, &vars);
                mix(&lambda, &m1, &m2)
            })
            .collect();
        Ok(Parameterization {
            kind,
            n: t1.n(),
            vars,
            coordinates,
            components,
        })
    }

    /// Network model: the mixture of the two reticulation-deletion trees in
    /// which both trees use the network's own edge parameters.
    pub fn network(net: &CycleNetwork, kind: ModelKind) -> Self {
        let classes = kind.parameter_classes();
        let mut names = Vec::new();
        for e in 0..net.edge_count() {
            for class in classes {
                names.push(format!("a{class}_e{}", e + 1));
            }
        }
        names.push(LAMBDA.to_string());
        let vars = Vars::new(names);
        let lambda = Polynomial::var(&vars, vars.len() - 1);
        let factors = |term: usize| -> Vec<Factor> {
            net.deletion_edges(term)
                .into_iter()
                .map(|e| Factor {
                    split: e.split,
                    base: e.edge * classes.len(),
                })
                .collect()
        };
        let (f1, f2) = (factors(0), factors(1));
        let coordinates = FourierCoordinate::all_zero_sum(kind.group(), net.n());
        let components = coordinates
            .iter()
            .map(|g| {
                let m1 = monomial(kind, g, &f1, &vars);
                let m2 = monomial(kind, g, &f2, &vars);
                mix(&lambda, &m1, &m2)
            })
            .collect();
        Parameterization {
            kind,
            n: net.n(),
            vars,
            coordinates,
            components,
        }
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn coordinates(&self) -> &[FourierCoordinate] {
        &self.coordinates
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn coordinate_index(&self, c: &FourierCoordinate) -> Option<usize> {
        self.coordinates.binary_search(c).ok()
    }

    /// Transposed Jacobian: rows are parameters, columns are coordinates.
    pub fn jacobian(&self) -> PolyMatrix {
        jacobian_of(&self.vars, &self.components)
    }

    /// Jacobian matroid, carrying the monomial/binomial form of the map.
    pub fn matroid(&self) -> JacobianMatroid {
        let j = self.jacobian();
        match BinomialMap::detect(&self.vars, &self.components, self.vars.index_of(LAMBDA)) {
            Some(form) => JacobianMatroid::with_binomial_form(j, form).expect("one column per coordinate"),
            None => JacobianMatroid::new(j),
        }
    }

    /// Restriction of a K3P map to the coordinates with entries in the
    /// subgroup `{00, 10}`, read as a CFN map (`10` becomes `1`).
    pub fn project_to_cfn(&self) -> Result<Self> {
        if self.kind != ModelKind::K3p {
            return Err(Error::arg(format!(
                "projection to CFN needs a K3P map, got {}",
                self.kind
            )));
        }
        let keep: Vec<usize> = (0..self.coordinates.len())
            .filter(|&j| self.coordinates[j].elements().iter().all(|g| g.bits() & 1 == 0))
            .collect();
        let mut names = Vec::new();
        let mut index_map = vec![0; self.vars.len()];
        let mut dropped = vec![false; self.vars.len()];
        for (i, name) in self.vars.names().iter().enumerate() {
            if name == LAMBDA || name.contains("a10_") {
                index_map[i] = names.len();
                names.push(name.replacen("a10_", "a1_", 1));
            } else {
                dropped[i] = true;
            }
        }
        let vars = Vars::new(names);
        let mut coordinates = Vec::with_capacity(keep.len());
        let mut components = Vec::with_capacity(keep.len());
        for j in keep {
            let c = &self.components[j];
            if c.support().iter().any(|&i| dropped[i]) {
                return Err(Error::arg("subgroup coordinate depends on a dropped parameter"));
            }
            components.push(c.remap(&vars, &index_map));
            let elems = self.coordinates[j]
                .elements()
                .iter()
                .map(|g| GroupElement::new(Group::Z2, g.bits() >> 1).expect("bit"))
                .collect();
            coordinates.push(FourierCoordinate(elems));
        }
        Ok(Parameterization {
            kind: ModelKind::Cfn,
            n: self.n,
            vars,
            coordinates,
            components,
        })
    }
}

/// Single-tree Fourier parameterization.
pub fn fourier_map(t: &Tree, kind: ModelKind) -> Parameterization {
    Parameterization::tree(t, kind)
}

pub fn mixture_map(t1: &Tree, t2: &Tree, kind: ModelKind) -> Result<Parameterization> {
    Parameterization::mixture(t1, t2, kind)
}

pub fn network_map(net: &CycleNetwork, kind: ModelKind) -> Parameterization {
    Parameterization::network(net, kind)
}

pub fn jacobian(p: &Parameterization) -> PolyMatrix {
    p.jacobian()
}

pub fn project_to_cfn(p: &Parameterization) -> Result<Parameterization> {
    p.project_to_cfn()
}

/// Transposed Jacobian of an arbitrary polynomial map `vars -> components`.
pub fn jacobian_of(vars: &Vars, components: &[Polynomial]) -> PolyMatrix {
    let mut entries = Vec::with_capacity(vars.len() * components.len());
    for i in 0..vars.len() {
        for c in components {
            entries.push(c.derivative(i));
        }
    }
    PolyMatrix::new(vars.len(), components.len(), vars, entries)
}
