use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::{fundamental_circuits, scalar_rank, symbolic_rank, Field, Fp, Matrix, PolyMatrix, Rational, MODULUS};

use super::structured::BinomialMap;

/// A polynomial matrix with integer entries prepared for fast evaluation
/// over `F_p`.
///
/// Rows are scaled by the lcm of their denominators first, which changes
/// neither the rank over `Q(θ)` nor which column sets are independent.
#[derive(Clone, Debug)]
pub struct FpEvaluator {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<CompiledEntry>,
}

#[derive(Clone, Debug)]
struct CompiledEntry {
    index: usize,
    terms: Vec<(Fp, Vec<(u32, u16)>)>,
}

impl FpEvaluator {
    pub fn new(m: &PolyMatrix) -> Self {
        let z = m.to_integer();
        let mut entries = Vec::new();
        for i in 0..z.rows() {
            for j in 0..z.cols() {
                let p = z.get(i, j);
                if p.is_zero() {
                    continue;
                }
                let terms = p
                    .terms()
                    .iter()
                    .map(|(mono, c)| {
                        let factors = mono
                            .exponents()
                            .iter()
                            .enumerate()
                            .filter(|(_, &e)| e > 0)
                            .map(|(v, &e)| (v as u32, e))
                            .collect();
                        (Fp::from_bigint(c), factors)
                    })
                    .collect();
                entries.push(CompiledEntry {
                    index: i * z.cols() + j,
                    terms,
                });
            }
        }
        FpEvaluator {
            rows: z.rows(),
            cols: z.cols(),
            nvars: z.vars().len(),
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Columns whose entries are all identically zero.
    pub fn zero_columns(&self) -> Vec<bool> {
        let mut zero = vec![true; self.cols];
        for e in &self.entries {
            zero[e.index % self.cols] = false;
        }
        zero
    }

    pub fn eval(&self, point: &[Fp]) -> Matrix<Fp> {
        assert_eq!(point.len(), self.nvars, "point length mismatch");
        let mut m = Matrix::zeros(self.rows, self.cols);
        for e in &self.entries {
            let mut acc = Fp::default();
            for (c, factors) in &e.terms {
                let mut t = *c;
                for &(v, exp) in factors {
                    let x = point[v as usize];
                    for _ in 0..exp {
                        t = t.mul_fast(x);
                    }
                }
                acc = acc.add_fast(t);
            }
            m.set(e.index / self.cols, e.index % self.cols, acc);
        }
        m
    }
}

/// Uniform point of `{1, ..., sample_set}^nvars`, as elements of `F_p`.
pub fn random_point<R: Rng + ?Sized>(rng: &mut R, nvars: usize, sample_set: u64) -> Vec<Fp> {
    assert!(
        (1..MODULUS).contains(&sample_set),
        "sample set must be nonempty and smaller than the modulus"
    );
    (0..nvars)
        .map(|_| Fp::new(rng.gen_range(1..=sample_set)))
        .collect()
}

/// Uniform point of `{1, ..., sample_set}^nvars` over the rationals.
pub fn random_rational_point<R: Rng + ?Sized>(
    rng: &mut R,
    nvars: usize,
    sample_set: u64,
) -> Vec<Rational> {
    (0..nvars)
        .map(|_| Rational::from_integer(rng.gen_range(1..=sample_set).into()))
        .collect()
}

fn check_subset(cols: usize, subset: &[usize]) -> Result<()> {
    let mut seen = vec![false; cols];
    for &j in subset {
        if j >= cols || seen[j] {
            return Err(Error::arg(format!(
                "column {j} out of range or repeated in a matrix with {cols} columns"
            )));
        }
        seen[j] = true;
    }
    Ok(())
}

/// Whether the columns `subset` of `j` are linearly independent after
/// substituting `point`.
pub fn is_independent_numeric<F: Field>(j: &PolyMatrix, subset: &[usize], point: &[F]) -> Result<bool> {
    check_subset(j.cols(), subset)?;
    if subset.len() > j.rows() {
        return Ok(false);
    }
    let m = j.select_columns(subset).eval(point)?;
    Ok(scalar_rank(&m) == subset.len())
}

/// Rank over `Q(θ)`.
///
/// A random evaluation over `F_p` of the integer-scaled matrix gives a lower
/// bound that is rigorous: a minor that is nonzero mod `p` at an integer
/// point is a nonzero integer there, so the polynomial minor is nonzero.
/// Fraction-free elimination is only run when that bound is below
/// `min(rows, cols)`.
pub fn certified_rank<R: Rng + ?Sized>(j: &PolyMatrix, rng: &mut R) -> usize {
    let full = j.rows().min(j.cols());
    if full == 0 {
        return 0;
    }
    let ev = FpEvaluator::new(j);
    let point = random_point(rng, ev.nvars(), MODULUS - 1);
    let lower = scalar_rank(&ev.eval(&point));
    if lower == full {
        return lower;
    }
    let r = symbolic_rank(j);
    assert!(r >= lower, "symbolic rank below a certified lower bound");
    r
}

/// Dimension of the (identity-reduced) model: the rank of its Jacobian over
/// the rational function field.
pub fn model_dimension(j: &PolyMatrix) -> usize {
    certified_rank(j, &mut seeded(0x6d6f_6465_6c64_696d))
}

/// Whether the columns `subset` of `j` are independent over `Q(θ)`.
pub fn is_independent_symbolic(j: &PolyMatrix, subset: &[usize]) -> Result<bool> {
    check_subset(j.cols(), subset)?;
    if subset.len() > j.rows() {
        return Ok(false);
    }
    if subset.is_empty() {
        return Ok(true);
    }
    let sub = j.select_columns(subset);
    Ok(certified_rank(&sub, &mut seeded(0x696e_6465_7065_6e64)) == subset.len())
}

/// Column matroid of a Jacobian over `Q(θ)`. When the binomial form of the
/// underlying map is known, exact dependence checks avoid polynomial
/// elimination wherever that form applies.
#[derive(Clone, Debug)]
pub struct JacobianMatroid {
    jacobian: PolyMatrix,
    binomial: Option<BinomialMap>,
}

impl JacobianMatroid {
    pub fn new(jacobian: PolyMatrix) -> Self {
        JacobianMatroid {
            jacobian,
            binomial: None,
        }
    }

    pub fn with_binomial_form(jacobian: PolyMatrix, form: BinomialMap) -> Result<Self> {
        if form.cols() != jacobian.cols() {
            return Err(Error::arg(format!(
                "binomial form has {} coordinates, the Jacobian {}",
                form.cols(),
                jacobian.cols()
            )));
        }
        Ok(JacobianMatroid {
            jacobian,
            binomial: Some(form),
        })
    }

    pub fn jacobian(&self) -> &PolyMatrix {
        &self.jacobian
    }

    pub fn cols(&self) -> usize {
        self.jacobian.cols()
    }

    pub fn has_binomial_form(&self) -> bool {
        self.binomial.is_some()
    }

    /// Exact independence over `Q(θ)`: a nonsingular evaluation mod `p`
    /// proves independence, a rank bound from the binomial form below the
    /// set size proves dependence, and fraction-free elimination decides the
    /// rest (on the rescaled binomial columns when the form is known).
    pub fn is_independent(&self, subset: &[usize]) -> Result<bool> {
        check_subset(self.cols(), subset)?;
        if subset.len() > self.jacobian.rows() {
            return Ok(false);
        }
        if subset.is_empty() {
            return Ok(true);
        }
        let sub = self.jacobian.select_columns(subset);
        let ev = FpEvaluator::new(&sub);
        let mut rng = seeded(0x696e_6465_7065_6e64);
        let point = random_point(&mut rng, ev.nvars(), MODULUS - 1);
        if scalar_rank(&ev.eval(&point)) == subset.len() {
            return Ok(true);
        }
        if let Some(b) = &self.binomial {
            let (bound, exact) = b.rank_bound(subset);
            if bound < subset.len() || exact {
                return Ok(bound == subset.len());
            }
            if let Some(r) = b.exact_rank(subset) {
                return Ok(r == subset.len());
            }
        }
        Ok(symbolic_rank(&sub) == subset.len())
    }

    /// Rank over `Q(θ)`.
    ///
    /// A random evaluation mod `p` gives a lower bound `r` and a set `B` of
    /// `r` columns independent over `Q(θ)`. The rank is `r` exactly when the
    /// binomial form bounds it by `r`, or when for every other column `c` the
    /// circuit of `c` in `B + c` at the point is dependent over `Q(θ)`;
    /// elimination on the whole matrix is the last resort.
    pub fn dimension(&self) -> usize {
        let j = &self.jacobian;
        let full = j.rows().min(j.cols());
        if full == 0 {
            return 0;
        }
        let ev = FpEvaluator::new(j);
        let point = random_point(&mut seeded(0x6d6f_6465_6c64_696d), ev.nvars(), MODULUS - 1);
        let at = ev.eval(&point);
        let lower = scalar_rank(&at);
        if lower == full {
            return lower;
        }
        let Some(b) = &self.binomial else {
            return model_dimension(j);
        };
        let all: Vec<usize> = (0..j.cols()).collect();
        let (upper, _) = b.rank_bound(&all);
        assert!(upper >= lower, "rank bound below a certified lower bound");
        if upper == lower {
            return lower;
        }
        let mut basis: Vec<usize> = Vec::with_capacity(lower);
        for c in 0..j.cols() {
            basis.push(c);
            if scalar_rank(&at.select_columns(&basis)) < basis.len() {
                basis.pop();
            }
        }
        // B + c is dependent as soon as its circuit at the point is.
        let circuits = fundamental_circuits(&at, &basis);
        let spans = (0..j.cols()).filter(|c| !basis.contains(c)).all(|c| {
            let Some(positions) = &circuits[c] else {
                return false;
            };
            let mut s: Vec<usize> = positions.iter().map(|&k| basis[k]).collect();
            s.push(c);
            s.sort_unstable();
            !self.is_independent(&s).expect("valid columns")
        });
        if spans {
            lower
        } else {
            model_dimension(j)
        }
    }
}

pub(crate) fn seeded(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}
