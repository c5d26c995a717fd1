use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::field::{Field, Rational};
use crate::error::{Error, Result};

/// Coefficient ring of a [`Polynomial`]: the rationals, or the integers for
/// fraction-free elimination.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// `self / rhs` when the quotient lies in the ring.
    fn exact_quotient(&self, rhs: &Self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;
    fn to_rational(&self) -> Rational;
    fn is_negative(&self) -> bool;

    fn embed<F: Field>(&self) -> Option<F> {
        F::from_rational(&self.to_rational())
    }
}

impl Coefficient for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn exact_quotient(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Coefficient for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn exact_quotient(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        Zero::is_zero(&r).then_some(q)
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn to_rational(&self) -> Rational {
        Rational::from_integer(self.clone())
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn embed<F: Field>(&self) -> Option<F> {
        Some(F::from_bigint(self))
    }
}

/// Shared, ordered list of indeterminate names.
#[derive(Clone)]
pub struct Vars(Arc<Vec<String>>);

impl Vars {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Vars(Arc::new(names.into_iter().map(Into::into).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Vars {}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Exponent vector; lexicographic comparison with variable 0 most significant.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(SmallVec<[u16; 32]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, rhs: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(rhs.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    fn div(&self, rhs: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(rhs.0.iter()) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }
}

/// Sparse multivariate polynomial. Terms are kept sorted by ascending
/// monomial and never carry a zero coefficient.
#[derive(Clone)]
pub struct Polynomial<C: Coefficient = Rational> {
    vars: Vars,
    terms: Vec<(Monomial, C)>,
}

impl<C: Coefficient> PartialEq for Polynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero(vars: &Vars) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(vars: &Vars, c: C) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.push((Monomial::one(vars.len()), c));
        }
        p
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, C::one())
    }

    /// The indeterminate with index `i`.
    pub fn var(vars: &Vars, i: usize) -> Self {
        assert!(i < vars.len(), "variable index out of range");
        let mut m = Monomial::one(vars.len());
        m.0[i] = 1;
        Polynomial {
            vars: vars.clone(),
            terms: vec![(m, C::one())],
        }
    }

    pub fn monomial(vars: &Vars, exps: &[u16], c: C) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent length mismatch");
        Self::from_terms(vars, vec![(Monomial::from_exponents(exps), c)])
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zeros.
    pub fn from_terms(vars: &Vars, mut terms: Vec<(Monomial, C)>) -> Self {
        for (m, _) in &terms {
            assert_eq!(m.0.len(), vars.len(), "exponent length mismatch");
        }
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Polynomial {
            vars: vars.clone(),
            terms: combine_sorted(terms),
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Total degree with the zero polynomial counted as degree 0.
    pub fn total_degree(&self) -> u32 {
        self.degree().unwrap_or(0)
    }

    /// Indices of the variables that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.iter().any(|(m, _)| m.0[i] > 0))
            .collect()
    }

    fn check_vars(&self, other: &Self) {
        assert!(
            self.vars == other.vars,
            "polynomials over different variable lists"
        );
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.mul_ref(c)))
                .collect(),
        }
    }

    fn merge(&self, other: &Self, negate_rhs: bool) -> Self {
        self.check_vars(other);
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let rhs = |c: &C| if negate_rhs { c.neg_ref() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0.clone(), rhs(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_rhs {
                        a[i].1.sub_ref(&b[j].1)
                    } else {
                        a[i].1.add_ref(&b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), rhs(c))));
        Polynomial {
            vars: self.vars.clone(),
            terms: out,
        }
    }

    fn product(&self, other: &Self) -> Self {
        self.check_vars(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.vars);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            // Multiplying by a monomial preserves the term order.
            return Polynomial {
                vars: self.vars.clone(),
                terms: self
                    .terms
                    .iter()
                    .map(|(a, b)| (a.mul(m), b.mul_ref(c)))
                    .collect(),
            };
        }
        if self.terms.len() == 1 {
            return other.product(self);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.mul(mb), ca.mul_ref(cb)));
            }
        }
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Polynomial {
            vars: self.vars.clone(),
            terms: combine_sorted(terms),
        }
    }

    /// Exact quotient `self / divisor`, or `None` if `divisor` does not divide
    /// `self` in `C[θ]` (or is zero).
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.check_vars(divisor);
        let (lead_m, lead_c) = divisor.terms.last()?;
        if self.is_zero() {
            return Some(self.clone());
        }
        if divisor.terms.len() == 1 {
            let terms = self
                .terms
                .iter()
                .map(|(m, c)| Some((m.div(lead_m)?, c.exact_quotient(lead_c)?)))
                .collect::<Option<Vec<_>>>()?;
            return Some(Polynomial {
                vars: self.vars.clone(),
                terms,
            });
        }
        let mut rem: BTreeMap<Monomial, C> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.last_key_value() {
            let qm = m.div(lead_m)?;
            let qc = c.exact_quotient(lead_c)?;
            for (dm, dc) in &divisor.terms {
                let key = qm.mul(dm);
                let delta = qc.mul_ref(dc);
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let v = e.get().sub_ref(&delta);
                        if v.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = v;
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(delta.neg_ref());
                    }
                }
            }
            quotient.push((qm, qc));
        }
        quotient.reverse();
        Some(Polynomial {
            vars: self.vars.clone(),
            terms: quotient,
        })
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        assert!(i < self.nvars(), "variable index out of range");
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[i] -= 1;
            terms.push((dm, c.mul_ref(&C::from_i64(e as i64))));
        }
        // Lowering one exponent by one keeps distinct monomials distinct and
        // preserves their relative order.
        Polynomial {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Value at `point` in the field `F`.
    pub fn eval<F: Field>(&self, point: &[F]) -> Result<F> {
        if point.len() != self.nvars() {
            return Err(Error::arg(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars()
            )));
        }
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.embed::<F>().ok_or_else(|| {
                Error::arg("coefficient denominator vanishes in the evaluation field")
            })?;
            for (x, &e) in point.iter().zip(m.0.iter()) {
                if e > 0 {
                    t = t.mul(&x.pow(e as u32));
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Rewrites the polynomial over `target`, sending variable `i` to
    /// `target` variable `index_map[i]`.
    pub fn remap(&self, target: &Vars, index_map: &[usize]) -> Self {
        assert_eq!(index_map.len(), self.nvars(), "index map length mismatch");
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = Monomial::one(target.len());
                for (i, &x) in m.0.iter().enumerate() {
                    if x > 0 {
                        let slot = &mut e.0[index_map[i]];
                        *slot = slot.checked_add(x).expect("exponent overflow");
                    }
                }
                (e, c.clone())
            })
            .collect();
        Self::from_terms(target, terms)
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(
            &self.vars,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect(),
        )
    }
}

impl Polynomial<Rational> {
    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .iter()
            .fold(<BigInt as One>::one(), |acc, (_, c)| acc.lcm(c.denom()))
    }

    /// `self * scale` as an integer polynomial; panics if the product is not integral.
    pub fn to_integer(&self, scale: &BigInt) -> Polynomial<BigInt> {
        self.map_coefficients(|c| {
            let v = c * Rational::from_integer(scale.clone());
            assert!(v.is_integer(), "scale does not clear denominators");
            v.to_integer()
        })
    }

    /// Parses expressions such as `4*p0*p2 - p1^2` or `(1 - t)^2`
    /// over the given variables.
    pub fn parse(vars: &Vars, text: &str) -> Result<Self> {
        let mut p = Parser {
            vars,
            src: text.as_bytes(),
            pos: 0,
        };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::arg(format!(
                "unexpected input at offset {} in {text:?}",
                p.pos
            )));
        }
        Ok(v)
    }
}

fn combine_sorted<C: Coefficient>(terms: Vec<(Monomial, C)>) -> Vec<(Monomial, C)> {
    let mut out: Vec<(Monomial, C)> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => {
                *lc = lc.add_ref(&c);
                if lc.is_zero() {
                    out.pop();
                }
            }
            _ => {
                if !c.is_zero() {
                    out.push((m, c));
                }
            }
        }
    }
    out
}

impl<C: Coefficient> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        self.merge(rhs, false)
    }
}

impl<C: Coefficient> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        self.merge(rhs, true)
    }
}

impl<C: Coefficient> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        self.product(rhs)
    }
}

impl<C: Coefficient> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg_ref()))
                .collect(),
        }
    }
}

impl<C: Coefficient> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest monomial first reads more naturally.
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg_ref() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = abs == C::one();
            let mut first = true;
            if !unit || m.degree() == 0 {
                write!(f, "{abs}")?;
                first = false;
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.vars.names()[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

struct Parser<'a> {
    vars: &'a Vars,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| Error::arg("exponent out of range"))?;
            let mut acc = Polynomial::one(self.vars);
            for _ in 0..e {
                acc = &acc * &base;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        s.parse()
            .map_err(|_| Error::arg(format!("expected integer at offset {start}")))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::arg("unbalanced parenthesis"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Polynomial::constant(self.vars, Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && {
                    let c = self.src[self.pos];
                    c.is_ascii_alphanumeric() || c == b'_' || c == b'.'
                } {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let i = self
                    .vars
                    .index_of(name)
                    .ok_or_else(|| Error::arg(format!("unknown variable {name:?}")))?;
                Ok(Polynomial::var(self.vars, i))
            }
            _ => Err(Error::arg(format!("unexpected input at offset {}", self.pos))),
        }
    }
}

/// Value of `f` at `point`; the point may be rational or in the prime field.
pub fn poly_eval<C: Coefficient, F: Field>(f: &Polynomial<C>, point: &[F]) -> Result<F> {
    f.eval(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Fp;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn eval_binomial_relation_vanishes() {
        let vars = Vars::new(["p0", "p1", "p2"]);
        let f = Polynomial::parse(&vars, "4*p0*p2 - p1^2").unwrap();
        assert_eq!(f.eval(&[q(1), q(2), q(1)]).unwrap(), q(0));
    }

    #[test]
    fn eval_zero_polynomial() {
        let vars = Vars::new(["x", "y"]);
        let z: Polynomial = Polynomial::zero(&vars);
        assert_eq!(z.eval(&[q(5), q(-3)]).unwrap(), q(0));
        assert_eq!(z.eval(&[Fp::new(9), Fp::new(4)]).unwrap(), Fp::new(0));
    }

    #[test]
    fn eval_small_example() {
        let vars = Vars::new(["x", "y"]);
        let f = Polynomial::parse(&vars, "x*y + y^2").unwrap();
        assert_eq!(f.eval(&[q(2), q(3)]).unwrap(), q(15));
        assert_eq!(poly_eval(&f, &[Fp::new(2), Fp::new(3)]).unwrap(), Fp::new(15));
    }

    #[test]
    fn eval_length_mismatch_is_argument_error() {
        let vars = Vars::new(["x", "y"]);
        let f = Polynomial::parse(&vars, "x + y").unwrap();
        assert!(matches!(f.eval(&[q(1)]), Err(Error::Argument(_))));
    }

    #[test]
    fn arithmetic_identities() {
        let vars = Vars::new(["x", "y"]);
        let a = Polynomial::parse(&vars, "(x + y)^2").unwrap();
        let b = Polynomial::parse(&vars, "x^2 + 2*x*y + y^2").unwrap();
        assert_eq!(a, b);
        assert!((&a - &b).is_zero());
        let c = Polynomial::parse(&vars, "x - y").unwrap();
        let prod = &a * &c;
        assert_eq!(prod.exact_div(&c).unwrap(), a);
        assert_eq!(prod.exact_div(&a).unwrap(), c);
        assert!(a.exact_div(&c).is_none());
    }

    #[test]
    fn derivative_of_product() {
        let vars = Vars::new(["t", "th"]);
        let f = Polynomial::parse(&vars, "t*(1 - th)^2").unwrap();
        let d = f.derivative(1);
        let expect = Polynomial::parse(&vars, "-2*t*(1 - th)").unwrap();
        assert_eq!(d, expect);
        assert_eq!(f.degree(), Some(3));
    }

    #[test]
    fn integer_division_detects_inexact_coefficients() {
        let vars = Vars::new(["x"]);
        let two_x = Polynomial::parse(&vars, "2*x").unwrap().to_integer(&<BigInt as One>::one());
        let x = Polynomial::parse(&vars, "3*x").unwrap().to_integer(&<BigInt as One>::one());
        assert!(two_x.exact_div(&x).is_none());
    }

    #[test]
    fn display_round_trips_through_parse() {
        let vars = Vars::new(["a", "b", "c"]);
        let f = Polynomial::parse(&vars, "3*a^2*b - c + 7 - a*b*c").unwrap();
        let g = Polynomial::parse(&vars, &f.to_string()).unwrap();
        assert_eq!(f, g);
    }
}
