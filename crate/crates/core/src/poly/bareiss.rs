//! Fraction-free (Bareiss) elimination over `Z[θ]`.
//!
//! With full pivoting, after `k` steps every entry of the trailing block is a
//! `(k+1) x (k+1)` minor of the row/column-permuted input, and the division
//! by the previous pivot is exact. A non-exact division therefore means a
//! broken invariant and aborts instead of being rounded.

use num_bigint::BigInt;

use super::field::Rational;
use super::matrix::PolyMatrix;
use super::polynomial::{Coefficient, Polynomial};

/// Rank of `m` over the rational function field `Q(θ)`.
pub fn symbolic_rank(m: &PolyMatrix<Rational>) -> usize {
    let m = m.without_zero_rows();
    // Eliminating along the shorter side keeps the working matrix small.
    let m = if m.rows() > m.cols() { m.transpose() } else { m };
    bareiss_rank(&m.to_integer())
}

/// Fraction-free elimination rank of an integer polynomial matrix.
pub fn bareiss_rank<C: Coefficient>(m: &PolyMatrix<C>) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Polynomial<C>>> = (0..rows)
        .map(|i| (0..cols).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut prev = Polynomial::one(m.vars());
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        // Lowest total degree first, then fewest terms, then position.
        let mut best: Option<(u32, usize, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, e) in row.iter().enumerate().skip(k) {
                if e.is_zero() {
                    continue;
                }
                let key = (e.total_degree(), e.num_terms(), i, j);
                if best.is_none_or(|b| (key.0, key.1) < (b.0, b.1)) {
                    best = Some(key);
                }
            }
        }
        let Some((_, _, pi, pj)) = best else {
            break;
        };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let pivot = &pivot_row[k];
        for row in tail.iter_mut() {
            let lead = std::mem::replace(&mut row[k], Polynomial::zero(m.vars()));
            for j in k + 1..cols {
                let cur = &row[j];
                if cur.is_zero() && (lead.is_zero() || pivot_row[j].is_zero()) {
                    continue;
                }
                let mut num = pivot * cur;
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    num = &num - &(&lead * &pivot_row[j]);
                }
                row[j] = num
                    .exact_div(&prev)
                    .expect("Bareiss invariant violated: inexact division");
            }
        }
        prev = a[k][k].clone();
        rank += 1;
    }
    rank
}

/// Convenience for integer matrices built directly.
pub fn integer_symbolic_rank(m: &PolyMatrix<BigInt>) -> usize {
    let m = m.without_zero_rows();
    let m = if m.rows() > m.cols() { m.transpose() } else { m };
    bareiss_rank(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::polynomial::Vars;

    fn pm(vars: &Vars, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(
            vars,
            rows.iter()
                .map(|r| r.iter().map(|s| Polynomial::parse(vars, s).unwrap()).collect())
                .collect(),
        )
    }

    #[test]
    fn binomial_jacobian_has_rank_two() {
        let vars = Vars::new(["t", "th"]);
        let j = pm(
            &vars,
            &[
                &["(1 - th)^2", "2*th*(1 - th)", "th^2"],
                &["-2*t*(1 - th)", "2*t*(1 - 2*th)", "2*t*th"],
            ],
        );
        assert_eq!(symbolic_rank(&j), 2);
    }

    #[test]
    fn identically_zero_entry() {
        let vars = Vars::new(["t1", "t2"]);
        assert_eq!(symbolic_rank(&pm(&vars, &[&["t1*t2 - t2*t1"]])), 0);
    }

    #[test]
    fn diagonal_has_full_rank() {
        let vars = Vars::new(["t1", "t2"]);
        assert_eq!(symbolic_rank(&pm(&vars, &[&["t1", "0"], &["0", "t2"]])), 2);
    }

    #[test]
    fn dependent_columns_over_function_field() {
        // Third column = x * first + y * second.
        let vars = Vars::new(["x", "y", "z"]);
        let j = pm(
            &vars,
            &[
                &["x", "z", "x^2 + y*z"],
                &["y^2", "x*z", "x*y^2 + x*y*z"],
                &["1", "y", "x + y^2"],
            ],
        );
        assert_eq!(symbolic_rank(&j), 2);
    }
}
