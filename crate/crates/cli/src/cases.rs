//! Case lists: enumeration, case files, sampling and relabelling orbits.

use std::collections::HashSet;
use std::path::Path;

use anyhow::{bail, Context, Result};
use phylomatroid::phylo::{enumerate_cycle_networks, enumerate_mixture_cases, Permutation};
use phylomatroid::{CaseDescriptor, ModelKind, ModelSpec};
use rand::seq::index::sample as sample_indices;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Mixture orbit representatives on `leaves` leaves, or with `networks =
/// Some(k)` all pairs of distinct `k`-cycle networks (on 4 leaves unless
/// given).
pub fn enumerate(kind: ModelKind, leaves: Option<usize>, networks: Option<usize>) -> Result<Vec<CaseDescriptor>> {
    if let Some(k) = networks {
        let nets = enumerate_cycle_networks(leaves.unwrap_or(4), k)?;
        let mut out = Vec::new();
        for (i, a) in nets.iter().enumerate() {
            for b in &nets[i + 1..] {
                out.push(CaseDescriptor::new(kind, ModelSpec::Network(a.clone()), ModelSpec::Network(b.clone()))?);
            }
        }
        return Ok(out);
    }
    let Some(n) = leaves else {
        bail!("--leaves is required to enumerate mixture cases");
    };
    Ok(enumerate_mixture_cases(n)?
        .iter()
        .map(|c| CaseDescriptor::from_mixture_case(kind, c))
        .collect())
}

pub fn read_case_file(kind: ModelKind, path: &Path) -> Result<Vec<CaseDescriptor>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(CaseDescriptor::parse(kind, line).with_context(|| format!("{}:{}", path.display(), i + 1))?);
    }
    Ok(out)
}

/// `k` cases chosen uniformly without replacement, kept in list order.
pub fn sample(cases: Vec<CaseDescriptor>, k: usize, seed: u64) -> Result<Vec<CaseDescriptor>> {
    if k > cases.len() {
        bail!("cannot sample {k} of {} cases", cases.len());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = sample_indices(&mut rng, cases.len(), k).into_vec();
    picked.sort_unstable();
    Ok(picked.into_iter().map(|i| cases[i].clone()).collect())
}

/// The two sides of a case, in a fixed order.
pub fn unordered(c: &CaseDescriptor) -> (ModelSpec, ModelSpec) {
    if c.left <= c.right {
        (c.left.clone(), c.right.clone())
    } else {
        (c.right.clone(), c.left.clone())
    }
}

fn relabel(spec: &ModelSpec, sigma: &Permutation) -> Result<ModelSpec> {
    Ok(match spec {
        ModelSpec::Tree(t) => ModelSpec::Tree(t.apply_permutation(sigma)?),
        ModelSpec::Mixture(a, b) => ModelSpec::mixture(a.apply_permutation(sigma)?, b.apply_permutation(sigma)?),
        ModelSpec::Network(_) => bail!("relabelling orbits are defined for trees and mixtures only"),
    })
}

/// Every case obtained from `c` by relabelling the leaves.
pub fn orbit(c: &CaseDescriptor) -> Result<HashSet<(ModelSpec, ModelSpec)>> {
    let mut out = HashSet::new();
    for sigma in Permutation::all(c.n()) {
        let image = CaseDescriptor {
            kind: c.kind,
            left: relabel(&c.left, &sigma)?,
            right: relabel(&c.right, &sigma)?,
        };
        out.insert(unordered(&image));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn excluding_an_orbit_drops_its_representative() {
        let cases = enumerate(ModelKind::Cfn, Some(6), None).unwrap();
        let unresolved = CaseDescriptor::parse(
            ModelKind::Cfn,
            "12|3456,123|456,1234|56 + 23|1456,123|456,1236|45 vs 12|3456,123|456,1236|45 + 23|1456,123|456,1234|56",
        )
        .unwrap();
        let o = orbit(&unresolved).unwrap();
        assert!(o.contains(&unordered(&unresolved)));
        let hits = cases.iter().filter(|c| o.contains(&unordered(c))).count();
        assert_eq!(hits, 1);
    }

    #[test]
    fn orbit_of_a_four_leaf_case_matches_its_size() {
        for c in enumerate_mixture_cases(4).unwrap() {
            let case = CaseDescriptor::from_mixture_case(ModelKind::K3p, &c);
            assert_eq!(orbit(&case).unwrap().len() as u64, c.orbit_size, "{case}");
        }
    }

    #[test]
    fn samples_are_seeded_and_ordered() {
        let cases = enumerate(ModelKind::Cfn, Some(5), None).unwrap();
        let a = sample(cases.clone(), 10, 3).unwrap();
        assert_eq!(a, sample(cases.clone(), 10, 3).unwrap());
        assert_ne!(a, sample(cases.clone(), 10, 4).unwrap());
        let pos: Vec<usize> = a.iter().map(|c| cases.iter().position(|d| d == c).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert!(sample(cases.clone(), cases.len() + 1, 0).is_err());
    }

    #[test]
    fn network_pairs() {
        let cases = enumerate(ModelKind::K2p, None, Some(4)).unwrap();
        assert_eq!(cases.len(), 66);
        assert!(enumerate(ModelKind::K2p, None, None).is_err());
    }
}
