//! Textual case descriptors and per-case certification.
//!
//! A model is written as a tree (`12|34`), a two-tree mixture
//! (`12|34 + 13|24`) or a cycle network (`net:1-2-3-4`); a case compares two
//! models under one substitution model: `12|34 + 12|34 vs 12|34 + 13|24`.

use std::fmt;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::matroid::{
    certify_exact, certify_sz, Certificate, CertifyOptions, Outcome, SZConfig,
    TrialStats,
};
use crate::phylo::{CycleNetwork, MixtureCase, ModelKind, Parameterization, Tree};

const NETWORK_PREFIX: &str = "net:";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelSpec {
    Tree(Tree),
    /// Two-tree mixture; the trees are kept in canonical order.
    Mixture(Tree, Tree),
    Network(CycleNetwork),
}

impl ModelSpec {
    pub fn mixture(a: Tree, b: Tree) -> Self {
        if a <= b {
            ModelSpec::Mixture(a, b)
        } else {
            ModelSpec::Mixture(b, a)
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some(net) = text.strip_prefix(NETWORK_PREFIX) {
            return Ok(ModelSpec::Network(CycleNetwork::parse(net)?));
        }
        match text.split_once('+') {
            Some((a, b)) => {
                let (a, b) = (Tree::parse(a.trim())?, Tree::parse(b.trim())?);
                if a.n() != b.n() {
                    return Err(Error::data(format!("mixture {text:?} mixes leaf counts")));
                }
                Ok(Self::mixture(a, b))
            }
            None => Ok(ModelSpec::Tree(Tree::parse(text)?)),
        }
    }

    /// Components as stored in certificates: one entry per tree, or the
    /// prefixed network text.
    pub fn parts(&self) -> Vec<String> {
        match self {
            ModelSpec::Tree(t) => vec![t.to_string()],
            ModelSpec::Mixture(a, b) => vec![a.to_string(), b.to_string()],
            ModelSpec::Network(n) => vec![format!("{NETWORK_PREFIX}{n}")],
        }
    }

    pub fn from_parts<S: AsRef<str>>(parts: &[S]) -> Result<Self> {
        match parts {
            [one] => Self::parse(one.as_ref()),
            [a, b] => Self::parse(&format!("{} + {}", a.as_ref(), b.as_ref())),
            _ => Err(Error::data(format!("a model has one or two parts, got {}", parts.len()))),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            ModelSpec::Tree(t) | ModelSpec::Mixture(t, _) => t.n(),
            ModelSpec::Network(n) => n.n(),
        }
    }

    pub fn parameterization(&self, kind: ModelKind) -> Result<Parameterization> {
        match self {
            ModelSpec::Tree(t) => Ok(Parameterization::tree(t, kind)),
            ModelSpec::Mixture(a, b) => Parameterization::mixture(a, b, kind),
            ModelSpec::Network(n) => Ok(Parameterization::network(n, kind)),
        }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.parts().join(" + "))
    }
}

/// Two models to separate under one substitution model.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CaseDescriptor {
    pub kind: ModelKind,
    pub left: ModelSpec,
    pub right: ModelSpec,
}

impl CaseDescriptor {
    pub fn new(kind: ModelKind, left: ModelSpec, right: ModelSpec) -> Result<Self> {
        if left.n() != right.n() {
            return Err(Error::arg(format!(
                "models on {} and {} leaves",
                left.n(),
                right.n()
            )));
        }
        Ok(CaseDescriptor { kind, left, right })
    }

    pub fn from_mixture_case(kind: ModelKind, c: &MixtureCase) -> Self {
        CaseDescriptor {
            kind,
            left: ModelSpec::mixture(c.left[0].clone(), c.left[1].clone()),
            right: ModelSpec::mixture(c.right[0].clone(), c.right[1].clone()),
        }
    }

    /// Parses `<model> vs <model>`.
    pub fn parse(kind: ModelKind, text: &str) -> Result<Self> {
        let (l, r) = text
            .split_once(" vs ")
            .ok_or_else(|| Error::data(format!("case {text:?} lacks ' vs '")))?;
        Self::new(kind, ModelSpec::parse(l)?, ModelSpec::parse(r)?)
            .map_err(|e| Error::data(e.to_string()))
    }

    /// Canonical text id (without the model kind).
    pub fn id(&self) -> String {
        format!("{} vs {}", self.left, self.right)
    }

    pub fn n(&self) -> usize {
        self.left.n()
    }

    pub fn parameterizations(&self) -> Result<(Parameterization, Parameterization)> {
        Ok((
            self.left.parameterization(self.kind)?,
            self.right.parameterization(self.kind)?,
        ))
    }
}

impl fmt::Display for CaseDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

/// Per-case seed: the first eight bytes of `SHA-256(master || id)`.
pub fn case_seed(master: u64, id: &str) -> u64 {
    let mut h = Sha256::new();
    h.update(master.to_le_bytes());
    h.update(id.as_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("eight bytes"))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    Exact,
    SchwartzZippel { epsilon: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum CaseOutcome {
    Certified(Certificate),
    Unsolved(TrialStats),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseReport {
    pub case: CaseDescriptor,
    pub seed: u64,
    /// Model dimensions of the left and right models.
    pub dimensions: [usize; 2],
    pub outcome: CaseOutcome,
}

/// Runs one certification. The larger-dimensional model plays the dependent
/// role; if the dimensions agree, either direction is accepted (the
/// `same_dim` field of `opts` is ignored). Dimensions are computed unless
/// supplied.
pub fn certify_case(
    case: &CaseDescriptor,
    mode: Mode,
    opts: &CertifyOptions,
    seed: u64,
    dimensions: Option<[usize; 2]>,
) -> Result<CaseReport> {
    let (pl, pr) = case.parameterizations()?;
    let (ml, mr) = (pl.matroid(), pr.matroid());
    let dims = match dimensions {
        Some(d) => d,
        None => [ml.dimension(), mr.dimension()],
    };
    let swapped = dims[0] < dims[1];
    let (m1, m2) = if swapped { (&mr, &ml) } else { (&ml, &mr) };
    let opts = CertifyOptions {
        same_dim: dims[0] == dims[1],
        ..opts.clone()
    };
    let outcome = match mode {
        Mode::Exact => certify_exact(m1, m2, &opts, seed)?,
        Mode::SchwartzZippel { epsilon } => {
            let cfg = SZConfig::for_jacobians(epsilon, &[m1.jacobian(), m2.jacobian()])?;
            certify_sz(m1, m2, &cfg, &opts, seed)?
        }
    };
    let outcome = match outcome {
        Outcome::Found(mut sep) => {
            if swapped {
                sep.direction = sep.direction.flipped();
            }
            CaseOutcome::Certified(Certificate::new(case, pl.coordinates(), &sep, seed))
        }
        Outcome::NotFound(stats) => CaseOutcome::Unsolved(stats),
    };
    Ok(CaseReport {
        case: case.clone(),
        seed,
        dimensions: dims,
        outcome,
    })
}
