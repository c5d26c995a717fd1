//! Exact Jacobian column ranks for maps whose coordinates are monomials or
//! binomials `λ·c1·m1 + (1 − λ)·c2·m2`, without polynomial arithmetic.
//!
//! Scaling the row of each parameter `θ_i` by `θ_i`, the `λ` row by `λ`, and
//! a binomial column by `1 / ((1 − λ)·c2·m2)` turns the column of a binomial
//! coordinate into `u + σ·w` with
//!
//! ```text
//! u = (e2, -μ),   w = (e1, 1),   σ = μ·(c1/c2)·θ^(e1 - e2),   μ = λ / (1 - λ),
//! ```
//!
//! where `e1`, `e2` are the exponent vectors of `m1`, `m2`; a monomial
//! coordinate becomes the constant column `(e, 0)`. None of these scalings
//! changes which column sets are independent over `Q(θ, λ)`.
//!
//! Replacing every `σ` and `μ` by a fresh indeterminate, each minor becomes
//! a polynomial whose coefficients are minors of constant matrices: for each
//! binomial column pick `u` or `w`, and take the last row's `μ`-free part or
//! its `μ`-coefficient. The rank with fresh indeterminates is the largest
//! rank over all such choices, a linear matroid intersection with a
//! partition matroid. Substituting the actual `σ` back is a specialization,
//! so this is an upper bound on the true rank, and it is exact when the
//! exponent differences `e1 - e2` of the set's binomial columns are linearly
//! independent: then the `σ` and `μ` are algebraically independent.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::poly::{
    fundamental_circuits, scalar_rank, symbolic_rank, Matrix, PolyMatrix, Polynomial, Rational, Vars,
};

#[derive(Clone, Debug, PartialEq)]
enum Column {
    /// `c·θ^e` (or zero, with `e = 0`).
    Monomial(Vec<i64>),
    /// `ratio = c1 / c2`.
    Binomial { e1: Vec<i64>, e2: Vec<i64>, ratio: Rational },
}

/// A map in the monomial/binomial form above, over the parameters other
/// than `λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinomialMap {
    nparams: usize,
    columns: Vec<Column>,
}

fn single_term(p: &Polynomial) -> Option<(Vec<i64>, Rational)> {
    match p.terms() {
        [(m, c)] => Some((m.exponents().iter().map(|&e| e as i64).collect(), c.clone())),
        _ => None,
    }
}

impl BinomialMap {
    /// Recognizes the form, or returns `None`. `lambda` is the index of the
    /// mixing variable, if any.
    pub fn detect(vars: &Vars, components: &[Polynomial], lambda: Option<usize>) -> Option<Self> {
        let keep: Vec<usize> = (0..vars.len()).filter(|&i| Some(i) != lambda).collect();
        let strip = |e: &[i64]| -> Vec<i64> { keep.iter().map(|&i| e[i]).collect() };
        let mut columns = Vec::with_capacity(components.len());
        for f in components {
            if f.is_zero() {
                columns.push(Column::Monomial(vec![0; keep.len()]));
                continue;
            }
            let lam_deg = |e: &[i64]| lambda.map_or(0, |l| e[l]);
            if let Some((e, _)) = single_term(f) {
                if lam_deg(&e) == 0 {
                    columns.push(Column::Monomial(strip(&e)));
                    continue;
                }
            }
            let l = lambda?;
            // f = λ·g + h with g, h free of λ.
            let (mut g, mut h) = (Vec::new(), Vec::new());
            for (m, c) in f.terms() {
                let mut e: Vec<u16> = m.exponents().to_vec();
                match e[l] {
                    0 => h.push((e, c.clone())),
                    1 => {
                        e[l] = 0;
                        g.push((e, c.clone()));
                    }
                    _ => return None,
                }
            }
            let to_poly = |t: Vec<(Vec<u16>, Rational)>| -> Polynomial {
                t.into_iter()
                    .map(|(e, c)| Polynomial::monomial(vars, &e, c))
                    .fold(Polynomial::zero(vars), |acc, p| &acc + &p)
            };
            let (g, h) = (to_poly(g), to_poly(h));
            let (e2, c2) = single_term(&h)?;
            let (e1, c1) = single_term(&(&g + &h))?;
            columns.push(Column::Binomial {
                e1: strip(&e1),
                e2: strip(&e2),
                ratio: c1 / c2,
            });
        }
        Some(BinomialMap {
            nparams: keep.len(),
            columns,
        })
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    /// Upper bound on the rank of the Jacobian columns `subset` over
    /// `Q(θ, λ)`, and whether the bound is known to be the rank.
    pub fn rank_bound(&self, subset: &[usize]) -> (usize, bool) {
        let diffs: Vec<Vec<i64>> = subset
            .iter()
            .filter_map(|&j| match &self.columns[j] {
                Column::Binomial { e1, e2, .. } => Some(e1.iter().zip(e2).map(|(a, b)| a - b).collect()),
                Column::Monomial(_) => None,
            })
            .collect();
        let exact = diffs.is_empty() || integer_rank(&diffs) == diffs.len();
        let best = [false, true]
            .into_iter()
            .map(|mu_part| {
                let mut vectors = Vec::new();
                let mut part = Vec::new();
                for (k, &j) in subset.iter().enumerate() {
                    match &self.columns[j] {
                        Column::Monomial(e) => {
                            vectors.push(with_last(e, 0));
                            part.push(k);
                        }
                        Column::Binomial { e1, e2, .. } => {
                            let (lu, lw) = if mu_part { (-1, 0) } else { (0, 1) };
                            vectors.push(with_last(e2, lu));
                            vectors.push(with_last(e1, lw));
                            part.extend([k, k]);
                        }
                    }
                }
                max_common_independent(&vectors, &part)
            })
            .max()
            .unwrap_or(0);
        (best, exact)
    }

    /// Rank of the Jacobian columns `subset` over `Q(θ, λ)`, by elimination
    /// on the rescaled columns.
    ///
    /// Those depend on `θ` only through the monomials `θ^(e1 - e2)`. With
    /// `b_1..b_t` a basis of the span of the exponent differences, each one
    /// is `y^k` for rational `k` in the algebraically independent `y_l =
    /// θ^(b_l)`; writing `y_l = z_l^N` clears the denominators. The matrix
    /// then lives over `Q(μ, z_1..z_t)`, an extension of the field its
    /// entries generate, so its rank is unchanged. `None` if the exponents
    /// do not fit.
    pub fn exact_rank(&self, subset: &[usize]) -> Option<usize> {
        let diffs: Vec<(usize, Vec<Rational>)> = subset
            .iter()
            .enumerate()
            .filter_map(|(k, &j)| match &self.columns[j] {
                Column::Binomial { e1, e2, .. } => Some((
                    k,
                    e1.iter().zip(e2).map(|(a, b)| Rational::from_integer(BigInt::from(a - b))).collect(),
                )),
                Column::Monomial(_) => None,
            })
            .collect();
        let mut basis: Vec<Vec<Rational>> = Vec::new();
        for (_, d) in &diffs {
            basis.push(d.clone());
            if scalar_rank(&as_matrix(&basis)) < basis.len() {
                basis.pop();
            }
        }
        let t = basis.len();
        let mut coords: Vec<Option<Vec<Rational>>> = vec![None; subset.len()];
        for (k, d) in &diffs {
            coords[*k] = Some(solve_in_span(&basis, d));
        }
        let lcm = coords
            .iter()
            .flatten()
            .flatten()
            .fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let vars = Vars::new(std::iter::once("mu".to_string()).chain((1..=t).map(|l| format!("z{l}"))));
        let mono = |mu: u16, z: &[i64], c: Rational| -> Option<Polynomial> {
            let mut e = vec![mu];
            for &x in z {
                e.push(u16::try_from(x).ok()?);
            }
            Some(Polynomial::monomial(&vars, &e, c))
        };
        let int = |v: i64| Rational::from_integer(BigInt::from(v));
        let rows = self.nparams + 1;
        let mut entries = vec![Polynomial::zero(&vars); rows * subset.len()];
        for (k, &j) in subset.iter().enumerate() {
            match &self.columns[j] {
                Column::Monomial(e) => {
                    for (i, &x) in e.iter().enumerate() {
                        entries[i * subset.len() + k] = Polynomial::constant(&vars, int(x));
                    }
                }
                Column::Binomial { e1, e2, ratio } => {
                    let a: Vec<i64> = coords[k]
                        .as_ref()
                        .expect("binomial column has coordinates")
                        .iter()
                        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer().try_into().ok())
                        .collect::<Option<_>>()?;
                    // Multiply the column by z^shift to clear negative exponents.
                    let shift: Vec<i64> = a.iter().map(|&x| (-x).max(0)).collect();
                    let sigma: Vec<i64> = a.iter().zip(&shift).map(|(x, s)| x + s).collect();
                    for i in 0..self.nparams {
                        let p = &mono(0, &shift, int(e2[i]))? + &mono(1, &sigma, ratio * int(e1[i]))?;
                        entries[i * subset.len() + k] = p;
                    }
                    entries[self.nparams * subset.len() + k] =
                        &mono(1, &sigma, ratio.clone())? - &mono(1, &shift, int(1))?;
                }
            }
        }
        Some(symbolic_rank(&PolyMatrix::new(rows, subset.len(), &vars, entries)))
    }
}

/// Coefficients of `v` in the independent vectors `basis`; `v` must lie in
/// their span.
fn solve_in_span(basis: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    let t = basis.len();
    let dim = v.len();
    // Augmented rows [b_1 .. b_t | v].
    let mut a: Vec<Vec<Rational>> = (0..dim)
        .map(|i| basis.iter().map(|b| b[i].clone()).chain([v[i].clone()]).collect())
        .collect();
    let mut pivots = Vec::with_capacity(t);
    let mut row = 0;
    for col in 0..t {
        let Some(p) = (row..dim).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..dim {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..=t {
                    let sub = &f * &a[row][c];
                    a[r][c] = &a[r][c] - &sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    debug_assert_eq!(pivots.len(), t, "basis vectors must be independent");
    let mut out = vec![Rational::from_integer(BigInt::from(0)); t];
    for (r, &c) in pivots.iter().enumerate() {
        out[c] = a[r][t].clone();
    }
    out
}

fn with_last(e: &[i64], last: i64) -> Vec<Rational> {
    e.iter()
        .chain(std::iter::once(&last))
        .map(|&v| Rational::from_integer(BigInt::from(v)))
        .collect()
}

fn as_matrix(vectors: &[Vec<Rational>]) -> Matrix<Rational> {
    let dim = vectors.first().map_or(0, Vec::len);
    let mut m = Matrix::zeros(dim, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    m
}

fn integer_rank(vectors: &[Vec<i64>]) -> usize {
    let rows = vectors[0].len();
    let mut m = Matrix::zeros(rows, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        for (i, &x) in v.iter().enumerate() {
            m.set(i, j, Rational::from_integer(BigInt::from(x)));
        }
    }
    scalar_rank(&m)
}

/// Largest set of linearly independent `vectors` using each part at most
/// once, by shortest augmenting paths.
fn max_common_independent(vectors: &[Vec<Rational>], part: &[usize]) -> usize {
    let n = vectors.len();
    let nparts = part.iter().max().map_or(0, |m| m + 1);
    let mut chosen: Vec<usize> = Vec::new();
    loop {
        let mut in_set = vec![false; n];
        let mut part_used = vec![false; nparts];
        for &c in &chosen {
            in_set[c] = true;
            part_used[part[c]] = true;
        }
        let others: Vec<usize> = (0..n).filter(|&x| !in_set[x]).collect();
        let info = fundamental_circuits(&as_matrix(vectors), &chosen);
        // Position in `chosen` of each chosen element.
        let mut pos = vec![usize::MAX; n];
        for (k, &c) in chosen.iter().enumerate() {
            pos[c] = k;
        }
        let source = |x: usize| !in_set[x] && info[x].is_none();
        let sink = |x: usize| !in_set[x] && !part_used[part[x]];
        let mut prev = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for &x in &others {
            if source(x) {
                seen[x] = true;
                queue.push_back(x);
            }
        }
        let mut end = None;
        while let Some(v) = queue.pop_front() {
            if !in_set[v] && sink(v) {
                end = Some(v);
                break;
            }
            if in_set[v] {
                // I - v + x stays independent when v lies on x's circuit.
                for &x in &others {
                    if seen[x] {
                        continue;
                    }
                    if let Some(c) = &info[x] {
                        if c.contains(&pos[v]) {
                            seen[x] = true;
                            prev[x] = v;
                            queue.push_back(x);
                        }
                    }
                }
            } else {
                // I - y + v respects the parts when y holds v's part.
                for &y in &chosen {
                    if !seen[y] && part[y] == part[v] {
                        seen[y] = true;
                        prev[y] = v;
                        queue.push_back(y);
                    }
                }
            }
        }
        let Some(mut v) = end else {
            return chosen.len();
        };
        let mut flip = vec![false; n];
        loop {
            flip[v] = true;
            if prev[v] == usize::MAX {
                break;
            }
            v = prev[v];
        }
        chosen = (0..n).filter(|&x| in_set[x] != flip[x]).collect();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect())
            .collect()
    }

    /// Every way of picking at most one vector per part.
    fn brute_force(vectors: &[Vec<Rational>], part: &[usize]) -> usize {
        let n = vectors.len();
        let mut best = 0;
        for mask in 0u32..1 << n {
            let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let mut parts: Vec<usize> = members.iter().map(|&i| part[i]).collect();
            parts.sort_unstable();
            parts.dedup();
            if parts.len() < members.len() {
                continue;
            }
            let dim = vectors[0].len();
            let mut m = Matrix::zeros(dim, members.len());
            for (j, &c) in members.iter().enumerate() {
                for i in 0..dim {
                    m.set(i, j, vectors[c][i].clone());
                }
            }
            best = best.max(scalar_rank(&m));
        }
        best
    }

    #[test]
    fn intersection_matches_brute_force() {
        let vectors = q(&[
            &[1, 0, 0],
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 1, 0],
            &[1, 1, 0],
            &[0, 0, 1],
            &[2, 2, 0],
        ]);
        for part in [
            vec![0, 1, 2, 3, 4, 5, 6],
            vec![0, 0, 1, 1, 2, 2, 3],
            vec![0, 1, 0, 1, 0, 1, 0],
            vec![0, 0, 0, 0, 1, 1, 1],
        ] {
            assert_eq!(
                max_common_independent(&vectors, &part),
                brute_force(&vectors, &part),
                "{part:?}"
            );
        }
    }
}
