use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::field::{Field, Rational};
use super::polynomial::{Coefficient, Polynomial, Vars};
use crate::error::{Error, Result};

/// Dense matrix over a field, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| F::from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    /// The submatrix formed by the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                out.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.rows,
            cols: cols.len(),
            data: out,
        }
    }

    /// Rank by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        scalar_rank(self)
    }
}

/// Rank of a scalar matrix by exact Gaussian elimination over its field.
pub fn scalar_rank<F: Field>(m: &Matrix<F>) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.data.clone();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r * cols + col].is_zero()) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.swap(p * cols + j, rank * cols + j);
            }
        }
        let inv = a[rank * cols + col].inv();
        for r in rank + 1..rows {
            let f = a[r * cols + col].mul(&inv);
            if f.is_zero() {
                continue;
            }
            for j in col..cols {
                let v = a[r * cols + j].sub(&f.mul(&a[rank * cols + j]));
                a[r * cols + j] = v;
            }
        }
        rank += 1;
    }
    rank
}

/// Coordinates of every column in terms of the independent columns `basis`.
///
/// Entry `j` is `None` when column `j` is outside their span, and otherwise
/// the positions in `basis` with a nonzero coefficient: for a column outside
/// `basis`, its fundamental circuit minus itself. Panics if `basis` is
/// dependent.
pub fn fundamental_circuits<F: Field>(m: &Matrix<F>, basis: &[usize]) -> Vec<Option<Vec<usize>>> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.data.clone();
    for (k, &c) in basis.iter().enumerate() {
        let p = (k..rows)
            .find(|&r| !a[r * cols + c].is_zero())
            .expect("basis columns are independent");
        if p != k {
            for j in 0..cols {
                a.swap(p * cols + j, k * cols + j);
            }
        }
        let inv = a[k * cols + c].inv();
        for j in 0..cols {
            a[k * cols + j] = a[k * cols + j].mul(&inv);
        }
        for r in 0..rows {
            if r == k || a[r * cols + c].is_zero() {
                continue;
            }
            let f = a[r * cols + c].clone();
            for j in 0..cols {
                let v = a[r * cols + j].sub(&f.mul(&a[k * cols + j]));
                a[r * cols + j] = v;
            }
        }
    }
    let b = basis.len();
    (0..cols)
        .map(|j| {
            if (b..rows).any(|r| !a[r * cols + j].is_zero()) {
                None
            } else {
                Some((0..b).filter(|&k| !a[k * cols + j].is_zero()).collect())
            }
        })
        .collect()
}

/// Matrix of polynomials over one shared variable list.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<C: Coefficient = Rational> {
    rows: usize,
    cols: usize,
    vars: Vars,
    entries: Vec<Polynomial<C>>,
}

impl<C: Coefficient> PolyMatrix<C> {
    pub fn new(rows: usize, cols: usize, vars: &Vars, entries: Vec<Polynomial<C>>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        assert!(
            entries.iter().all(|e| e.vars() == vars),
            "entries over different variable lists"
        );
        PolyMatrix {
            rows,
            cols,
            vars: vars.clone(),
            entries,
        }
    }

    pub fn from_rows(vars: &Vars, rows: Vec<Vec<Polynomial<C>>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self::new(r, c, vars, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<C> {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Polynomial<C>] {
        &self.entries
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                out.push(self.get(i, j).clone());
            }
        }
        PolyMatrix {
            rows: self.rows,
            cols: cols.len(),
            vars: self.vars.clone(),
            entries: out,
        }
    }

    /// Drops rows whose entries are all zero; the rank is unchanged.
    pub fn without_zero_rows(&self) -> Self {
        let keep: Vec<usize> = (0..self.rows)
            .filter(|&i| (0..self.cols).any(|j| !self.get(i, j).is_zero()))
            .collect();
        let mut out = Vec::with_capacity(keep.len() * self.cols);
        for &i in &keep {
            out.extend_from_slice(&self.entries[i * self.cols..(i + 1) * self.cols]);
        }
        PolyMatrix {
            rows: keep.len(),
            cols: self.cols,
            vars: self.vars.clone(),
            entries: out,
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.push(self.get(i, j).clone());
            }
        }
        PolyMatrix {
            rows: self.cols,
            cols: self.rows,
            vars: self.vars.clone(),
            entries: out,
        }
    }

    /// The scalar matrix obtained by substituting `point` for the variables.
    pub fn eval<F: Field>(&self, point: &[F]) -> Result<Matrix<F>> {
        let data = self
            .entries
            .iter()
            .map(|e| e.eval(point))
            .collect::<Result<Vec<F>>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Upper bound on the total degree of every `s x s` minor.
    ///
    /// Each term of a minor takes one entry from each of `s` distinct rows
    /// (and columns), so the `s` largest row-wise (or column-wise) degree
    /// maxima bound its degree. The smaller of the two bounds is returned.
    pub fn minor_degree_bound(&self, s: usize) -> Result<u32> {
        if s > self.rows.min(self.cols) {
            return Err(Error::arg(format!(
                "minor size {s} exceeds matrix dimensions {}x{}",
                self.rows, self.cols
            )));
        }
        let top = |mut maxima: Vec<u32>| -> u32 {
            maxima.sort_unstable_by(|a, b| b.cmp(a));
            maxima.iter().take(s).sum()
        };
        let row_max = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).total_degree())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let col_max = (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .map(|i| self.get(i, j).total_degree())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        Ok(top(row_max).min(top(col_max)))
    }
}

impl PolyMatrix<Rational> {
    /// Scales each row by the lcm of its denominators; the rank over `Q(θ)`
    /// is unchanged and every entry becomes an integer polynomial.
    pub fn to_integer(&self) -> PolyMatrix<BigInt> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for i in 0..self.rows {
            let row = &self.entries[i * self.cols..(i + 1) * self.cols];
            let scale = row
                .iter()
                .fold(<BigInt as One>::one(), |acc, p| acc.lcm(&p.denominator_lcm()));
            entries.extend(row.iter().map(|p| p.to_integer(&scale)));
        }
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            vars: self.vars.clone(),
            entries,
        }
    }
}

/// Degree bound for the `s x s` minors of `m`; see [`PolyMatrix::minor_degree_bound`].
pub fn minor_degree_bound<C: Coefficient>(m: &PolyMatrix<C>, s: usize) -> Result<u32> {
    m.minor_degree_bound(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex22() -> Matrix<Rational> {
        Matrix::from_i64_rows(&[&[1, 1, -1, -2], &[3, 1, 2, 4], &[0, -1, 1, 2]])
    }

    #[test]
    fn ex22_column_ranks() {
        let a = ex22();
        assert_eq!(a.select_columns(&[0, 1, 2]).rank(), 3);
        assert_eq!(a.select_columns(&[2, 3]).rank(), 1);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        assert_eq!(Matrix::<Rational>::zeros(3, 4).rank(), 0);
        assert_eq!(Matrix::<Rational>::zeros(0, 0).rank(), 0);
    }

    #[test]
    fn degree_bound_examples() {
        let vars = Vars::new(["t1", "t2"]);
        let p = |s: &str| Polynomial::parse(&vars, s).unwrap();
        let m = PolyMatrix::from_rows(
            &vars,
            vec![vec![p("t1^2"), p("0")], vec![p("0"), p("t2^3")]],
        );
        assert!(m.minor_degree_bound(2).unwrap() >= 5);
        assert_eq!(m.minor_degree_bound(0).unwrap(), 0);
        assert!(matches!(m.minor_degree_bound(3), Err(Error::Argument(_))));
    }

    #[test]
    fn to_integer_clears_row_denominators() {
        let vars = Vars::new(["x"]);
        let half = Polynomial::parse(&vars, "x").unwrap().scale(&Rational::new(1.into(), 2.into()));
        let third = Polynomial::parse(&vars, "1").unwrap().scale(&Rational::new(1.into(), 3.into()));
        let m = PolyMatrix::from_rows(&vars, vec![vec![half, third]]);
        let z = m.to_integer();
        assert_eq!(z.get(0, 0).to_string(), "3*x");
        assert_eq!(z.get(0, 1).to_string(), "2");
    }
}
