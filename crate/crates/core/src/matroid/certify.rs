use std::collections::HashSet;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{fundamental_circuits, scalar_rank, Fp, Matrix, PolyMatrix, MODULUS};

use super::oracle::{
    is_independent_numeric, random_point, random_rational_point, seeded, FpEvaluator,
    JacobianMatroid,
};

/// Which of the two compared models a separating set is independent in.
/// The set is dependent in the other one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    LeftIndependent,
    RightIndependent,
}

impl Direction {
    pub fn flipped(self) -> Self {
        match self {
            Direction::LeftIndependent => Direction::RightIndependent,
            Direction::RightIndependent => Direction::LeftIndependent,
        }
    }
}

/// How a separating set was confirmed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verification {
    /// Exact rank computations over `Q(θ)`.
    Symbolic,
    /// Dependence confirmed at `l` independent random points of
    /// `{1..E}^d`; the probability of a wrong claim is at most `epsilon`.
    SchwartzZippel {
        epsilon: f64,
        l: u32,
        #[serde(rename = "E")]
        sample_set: u64,
        alpha: u32,
    },
}

/// Size distribution of the random candidate sets.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub enum SubsetSampling {
    /// `|T| = s` with probability proportional to `ratio^s` on `2..=r`, where
    /// `r` is the rank of the model that must be independent.
    Geometric { ratio: f64 },
    /// Always `|T| = r`.
    Basis,
    /// Random walk by single exchanges on sets independent in both models
    /// (bases of the smaller one where possible). At every step, each
    /// fundamental circuit of one model that is independent in the other is
    /// a candidate; one trial is one step.
    #[default]
    Exchange,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertifyOptions {
    /// Number of random candidate sets to draw.
    pub trials: u64,
    /// Accept a set independent in either model and dependent in the other.
    pub same_dim: bool,
    pub sampling: SubsetSampling,
    /// Shrink each candidate to a circuit of the dependent model (at the
    /// screening point) before verifying; subsets of the independent side
    /// stay independent, and the exact check gets smaller.
    pub minimize: bool,
    /// Screening points are drawn from `{1..screen_sample_set}`.
    pub screen_sample_set: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            trials: 1000,
            same_dim: false,
            sampling: SubsetSampling::default(),
            minimize: true,
            screen_sample_set: MODULUS - 1,
        }
    }
}

/// Parameters of the probabilistic check: tolerance `epsilon`, degree bound
/// `alpha`, sample set `{1..E}` and amplification count `l`, the least
/// integer with `(alpha / E)^l <= epsilon`.
#[derive(Clone, Debug, PartialEq)]
pub struct SZConfig {
    epsilon: f64,
    alpha: u32,
    sample_set: u64,
    l: u32,
}

impl SZConfig {
    /// Uses `E = 10^6 * alpha`, capped below the screening modulus.
    pub fn new(epsilon: f64, alpha: u32) -> Result<Self> {
        let e = (1_000_000u64 * alpha.max(1) as u64).min(MODULUS - 1);
        Self::with_sample_set(epsilon, alpha, e)
    }

    pub fn with_sample_set(epsilon: f64, alpha: u32, sample_set: u64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::Config(format!("tolerance {epsilon} is not in (0, 1)")));
        }
        if sample_set <= alpha as u64 {
            return Err(Error::Config(format!(
                "sample set size {sample_set} does not exceed the degree bound {alpha}"
            )));
        }
        if sample_set >= MODULUS {
            return Err(Error::Config(format!(
                "sample set size {sample_set} must be below {MODULUS}"
            )));
        }
        let ratio = alpha as f64 / sample_set as f64;
        let mut l = 1u32;
        let mut bound = ratio;
        while bound > epsilon {
            l += 1;
            bound *= ratio;
        }
        Ok(SZConfig {
            epsilon,
            alpha,
            sample_set,
            l,
        })
    }

    /// Degree bound for every minor of either Jacobian, then [`SZConfig::new`].
    pub fn for_jacobians(epsilon: f64, jacobians: &[&PolyMatrix]) -> Result<Self> {
        let mut alpha = 0;
        for j in jacobians {
            alpha = alpha.max(j.minor_degree_bound(j.rows().min(j.cols()))?);
        }
        Self::new(epsilon, alpha)
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn sample_set(&self) -> u64 {
        self.sample_set
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn verification(&self) -> Verification {
        Verification::SchwartzZippel {
            epsilon: self.epsilon,
            l: self.l,
            sample_set: self.sample_set,
            alpha: self.alpha,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialStats {
    /// Random sets drawn.
    pub trials: u64,
    /// Sets that passed the numeric screen.
    pub candidates: u64,
    /// Screened sets that failed verification.
    pub rejected: u64,
}

/// A verified separating set of column indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Separation {
    pub subset: Vec<usize>,
    /// Relative to the argument order: `RightIndependent` means independent
    /// in the second Jacobian.
    pub direction: Direction,
    pub verification: Verification,
    pub stats: TrialStats,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Found(Separation),
    /// No certificate within the trial budget. This says nothing about
    /// whether the matroids differ.
    NotFound(TrialStats),
}

impl Outcome {
    pub fn separation(&self) -> Option<&Separation> {
        match self {
            Outcome::Found(s) => Some(s),
            Outcome::NotFound(_) => None,
        }
    }

    pub fn stats(&self) -> TrialStats {
        match self {
            Outcome::Found(s) => s.stats,
            Outcome::NotFound(t) => *t,
        }
    }
}

/// Randomized search with exact verification: a screened set is accepted
/// only if it is independent over `Q(θ)` for one Jacobian and dependent for
/// the other.
///
/// Unless `same_dim` is set, the first model must have the larger dimension;
/// sets are drawn with `|T|` at most the rank of the second.
pub fn certify_exact(
    m1: &JacobianMatroid,
    m2: &JacobianMatroid,
    opts: &CertifyOptions,
    seed: u64,
) -> Result<Outcome> {
    search(m1.jacobian(), m2.jacobian(), opts, seed, |subset, dir, _rng| {
        let (ind, dep) = roles(m1, m2, dir);
        let ok = ind.is_independent(subset)? && !dep.is_independent(subset)?;
        Ok(ok.then_some(Verification::Symbolic))
    })
}

/// Randomized search with probabilistic verification: after the screen,
/// dependence is re-tested at `cfg.l()` fresh points of `{1..E}^d` over the
/// rationals, and any point showing independence refutes the candidate.
/// Independence is always confirmed exactly.
pub fn certify_sz(
    m1: &JacobianMatroid,
    m2: &JacobianMatroid,
    cfg: &SZConfig,
    opts: &CertifyOptions,
    seed: u64,
) -> Result<Outcome> {
    search(m1.jacobian(), m2.jacobian(), opts, seed, |subset, dir, rng| {
        let (ind, dep) = roles(m1, m2, dir);
        if !ind.is_independent(subset)? {
            return Ok(None);
        }
        let dep = dep.jacobian();
        for _ in 0..cfg.l() {
            let point = random_rational_point(rng, dep.vars().len(), cfg.sample_set());
            if is_independent_numeric(dep, subset, &point)? {
                return Ok(None);
            }
        }
        Ok(Some(cfg.verification()))
    })
}

fn roles<'a>(
    m1: &'a JacobianMatroid,
    m2: &'a JacobianMatroid,
    dir: Direction,
) -> (&'a JacobianMatroid, &'a JacobianMatroid) {
    match dir {
        Direction::RightIndependent => (m2, m1),
        Direction::LeftIndependent => (m1, m2),
    }
}

fn columns_rank(m: &Matrix<Fp>, cols: &[usize]) -> usize {
    scalar_rank(&m.select_columns(cols))
}

/// Steps of an exchange walk before it restarts at fresh points.
const WALK_RESTART: u64 = 250;

/// State of the exchange walk: screening evaluations of both Jacobians and
/// the current common independent set.
struct ExchangeWalk {
    a1: Matrix<Fp>,
    a2: Matrix<Fp>,
    basis: Vec<usize>,
    age: u64,
}

impl ExchangeWalk {
    fn start(a1: Matrix<Fp>, a2: Matrix<Fp>, pool: &[usize], rng: &mut ChaCha8Rng) -> Self {
        let mut order = pool.to_vec();
        order.shuffle(rng);
        let mut basis: Vec<usize> = Vec::new();
        for e in order {
            basis.push(e);
            if columns_rank(&a1, &basis) < basis.len() || columns_rank(&a2, &basis) < basis.len() {
                basis.pop();
            }
        }
        ExchangeWalk {
            a1,
            a2,
            basis,
            age: 0,
        }
    }

    /// Candidates at the current set, then one random exchange.
    fn step(&mut self, pool: &[usize], same_dim: bool, rng: &mut ChaCha8Rng) -> Vec<(Vec<usize>, Direction)> {
        self.age += 1;
        let c1 = fundamental_circuits(&self.a1, &self.basis);
        let c2 = fundamental_circuits(&self.a2, &self.basis);
        let in_basis = |e: usize| self.basis.contains(&e);
        let subset_of = |a: &[usize], b: &[usize]| a.iter().all(|x| b.contains(x));
        let circuit = |positions: &[usize], e: usize| {
            let mut t: Vec<usize> = positions.iter().map(|&k| self.basis[k]).collect();
            t.push(e);
            t.sort_unstable();
            t
        };
        let mut found = Vec::new();
        for &e in pool {
            if in_basis(e) {
                continue;
            }
            // A circuit of one model inside basis + e is dependent in the
            // other exactly when it contains the other's circuit there.
            match (&c1[e], &c2[e]) {
                (Some(s1), s2) if s2.as_ref().is_none_or(|s2| !subset_of(s2, s1)) => {
                    found.push((circuit(s1, e), Direction::RightIndependent));
                }
                _ => {}
            }
            if same_dim {
                match (&c1[e], &c2[e]) {
                    (s1, Some(s2)) if s1.as_ref().is_none_or(|s1| !subset_of(s1, s2)) => {
                        found.push((circuit(s2, e), Direction::LeftIndependent));
                    }
                    _ => {}
                }
            }
        }
        let outside: Vec<usize> = pool.iter().copied().filter(|&e| !in_basis(e)).collect();
        if let Some(&e) = outside.choose(rng) {
            let allowed = |k: usize, c: &Option<Vec<usize>>| c.as_ref().is_none_or(|s| s.contains(&k));
            match (&c1[e], &c2[e]) {
                (None, None) => self.basis.push(e),
                (s1, s2) => {
                    let swaps: Vec<usize> = (0..self.basis.len())
                        .filter(|&k| allowed(k, s1) && allowed(k, s2))
                        .collect();
                    if let Some(&k) = swaps.choose(rng) {
                        self.basis[k] = e;
                    }
                }
            }
        }
        found.sort_by_key(|(t, _)| t.len());
        found
    }
}

/// Drops elements while the set stays dependent, leaving a circuit.
fn shrink_to_circuit(m: &Matrix<Fp>, subset: &mut Vec<usize>) {
    let mut i = 0;
    while i < subset.len() {
        let mut without = subset.clone();
        without.remove(i);
        if columns_rank(m, &without) < without.len() {
            *subset = without;
        } else {
            i += 1;
        }
    }
}

fn sample_size<R: Rng>(rng: &mut R, sampling: SubsetSampling, max: usize) -> usize {
    let lo = 2.min(max);
    match sampling {
        SubsetSampling::Basis | SubsetSampling::Exchange => max,
        SubsetSampling::Geometric { ratio } => {
            let weights: Vec<f64> = (lo..=max).map(|s| ratio.powi(s as i32)).collect();
            let total: f64 = weights.iter().sum();
            let mut x = rng.gen::<f64>() * total;
            for (k, w) in weights.iter().enumerate() {
                if x < *w {
                    return lo + k;
                }
                x -= w;
            }
            max
        }
    }
}

fn search(
    j1: &PolyMatrix,
    j2: &PolyMatrix,
    opts: &CertifyOptions,
    seed: u64,
    mut verify: impl FnMut(&[usize], Direction, &mut ChaCha8Rng) -> Result<Option<Verification>>,
) -> Result<Outcome> {
    if opts.trials == 0 {
        return Err(Error::arg("the number of trials must be positive"));
    }
    if j1.cols() != j2.cols() {
        return Err(Error::arg(format!(
            "models have {} and {} coordinates",
            j1.cols(),
            j2.cols()
        )));
    }
    if let SubsetSampling::Geometric { ratio } = opts.sampling {
        if !(ratio > 0.0) {
            return Err(Error::arg(format!("geometric ratio {ratio} must be positive")));
        }
    }
    let mut rng = seeded(seed);
    let (e1, e2) = (FpEvaluator::new(j1), FpEvaluator::new(j2));
    let (z1, z2) = (e1.zero_columns(), e2.zero_columns());
    let pool: Vec<usize> = (0..j1.cols()).filter(|&c| !(z1[c] && z2[c])).collect();
    let sample_set = opts.screen_sample_set;
    let r1 = scalar_rank(&e1.eval(&random_point(&mut rng, e1.nvars(), sample_set)));
    let r2 = scalar_rank(&e2.eval(&random_point(&mut rng, e2.nvars(), sample_set)));
    let max = if opts.same_dim { r1.max(r2) } else { r2 }.min(pool.len());

    let mut stats = TrialStats::default();
    if max == 0 {
        stats.trials = opts.trials;
        return Ok(Outcome::NotFound(stats));
    }
    let mut walk: Option<ExchangeWalk> = None;
    let mut tried: HashSet<(Vec<usize>, Direction)> = HashSet::new();
    while stats.trials < opts.trials {
        stats.trials += 1;
        let found = match opts.sampling {
            SubsetSampling::Exchange => {
                let w = match &mut walk {
                    Some(w) if w.age < WALK_RESTART => w,
                    _ => {
                        let a1 = e1.eval(&random_point(&mut rng, e1.nvars(), sample_set));
                        let a2 = e2.eval(&random_point(&mut rng, e2.nvars(), sample_set));
                        walk.insert(ExchangeWalk::start(a1, a2, &pool, &mut rng))
                    }
                };
                w.step(&pool, opts.same_dim, &mut rng)
            }
            _ => {
                let a1 = e1.eval(&random_point(&mut rng, e1.nvars(), sample_set));
                let a2 = e2.eval(&random_point(&mut rng, e2.nvars(), sample_set));
                let s = sample_size(&mut rng, opts.sampling, max);
                let mut subset: Vec<usize> = sample(&mut rng, pool.len(), s)
                    .into_iter()
                    .map(|k| pool[k])
                    .collect();
                subset.sort_unstable();
                let (k1, k2) = (columns_rank(&a1, &subset), columns_rank(&a2, &subset));
                let screened = if k2 == s && k1 < s {
                    Some((Direction::RightIndependent, &a1))
                } else if opts.same_dim && k1 == s && k2 < s {
                    Some((Direction::LeftIndependent, &a2))
                } else {
                    None
                };
                match screened {
                    Some((dir, dep)) => {
                        if opts.minimize {
                            shrink_to_circuit(dep, &mut subset);
                        }
                        vec![(subset, dir)]
                    }
                    None => Vec::new(),
                }
            }
        };
        let found: Vec<_> = found.into_iter().filter(|c| tried.insert(c.clone())).collect();
        for (subset, dir) in found {
            stats.candidates += 1;
            match verify(&subset, dir, &mut rng)? {
                Some(verification) => {
                    return Ok(Outcome::Found(Separation {
                        subset,
                        direction: dir,
                        verification,
                        stats,
                    }))
                }
                None => stats.rejected += 1,
            }
        }
    }
    Ok(Outcome::NotFound(stats))
}
