use num_bigint::BigInt;
use phylomatroid::poly::{
    scalar_rank, symbolic_rank, Field, Fp, Matrix, Monomial, PolyMatrix, Polynomial, Rational, Vars,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const NVARS: usize = 3;

fn vars() -> Vars {
    Vars::new(["x", "y", "z"])
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn poly_strategy(max_terms: usize, max_exp: u16) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, NVARS), -5i64..=5),
        0..=max_terms,
    )
    .prop_map(|terms| {
        let terms = terms
            .into_iter()
            .map(|(e, c)| (Monomial::from_exponents(&e), int(c)))
            .collect();
        Polynomial::from_terms(&vars(), terms)
    })
}

fn rational_point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-20i64..=20, 1i64..=7), NVARS)
        .prop_map(|v| v.into_iter().map(|(n, d)| Rational::new(n.into(), d.into())).collect())
}

fn determinant(m: &[Vec<Rational>]) -> Rational {
    if m.is_empty() {
        return Rational::one();
    }
    let mut acc = Rational::zero();
    for (j, a) in m[0].iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let t = a.mul(&determinant(&minor));
        acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Largest order of a nonzero minor.
fn rank_by_minors(m: &[Vec<Rational>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    for k in (1..=rows.min(cols)).rev() {
        for r in combinations(rows, k) {
            for c in combinations(cols, k) {
                let sub: Vec<Vec<Rational>> =
                    r.iter().map(|&i| c.iter().map(|&j| m[i][j].clone()).collect()).collect();
                if !determinant(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r)
    })
}

proptest! {
    #[test]
    fn evaluation_is_a_ring_homomorphism(
        f in poly_strategy(6, 3),
        g in poly_strategy(6, 3),
        r in rational_point(),
    ) {
        let (fr, gr) = (f.eval(&r).unwrap(), g.eval(&r).unwrap());
        prop_assert_eq!((&f + &g).eval(&r).unwrap(), fr.add(&gr));
        prop_assert_eq!((&f - &g).eval(&r).unwrap(), fr.sub(&gr));
        prop_assert_eq!((&f * &g).eval(&r).unwrap(), fr.mul(&gr));
        // The same identities after reduction mod p.
        let rp: Vec<Fp> = r.iter().map(|v| Fp::from_rational(v).unwrap()).collect();
        let (fp, gp) = (f.eval(&rp).unwrap(), g.eval(&rp).unwrap());
        prop_assert_eq!((&f * &g).eval(&rp).unwrap(), fp.mul(&gp));
        prop_assert_eq!(Fp::from_rational(&fr).unwrap(), fp);
    }

    #[test]
    fn scalar_rank_matches_minors(rows in small_matrix()) {
        let m: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        prop_assert_eq!(scalar_rank(&Matrix::<Rational>::from_i64_rows(&refs)), rank_by_minors(&m));
    }
}

/// A `rows x cols` polynomial matrix whose last `deficit` columns are
/// polynomial combinations of the others.
fn deficient_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, deficit: usize) -> PolyMatrix {
    let v = vars();
    let random_poly = |rng: &mut ChaCha8Rng| {
        let terms = (0..rng.gen_range(1..=3))
            .map(|_| {
                let e: Vec<u16> = (0..NVARS).map(|_| rng.gen_range(0..=2)).collect();
                (Monomial::from_exponents(&e), int(rng.gen_range(-4..=4)))
            })
            .collect();
        Polynomial::from_terms(&v, terms)
    };
    let free = cols - deficit;
    let mut columns: Vec<Vec<Polynomial>> = (0..free)
        .map(|_| (0..rows).map(|_| random_poly(rng)).collect())
        .collect();
    for _ in 0..deficit {
        let weights: Vec<Polynomial> = (0..free).map(|_| random_poly(rng)).collect();
        let col = (0..rows)
            .map(|i| {
                (0..free).fold(Polynomial::zero(&v), |acc, k| &acc + &(&weights[k] * &columns[k][i]))
            })
            .collect();
        columns.push(col);
    }
    let body = (0..rows).map(|i| (0..cols).map(|j| columns[j][i].clone()).collect()).collect();
    PolyMatrix::from_rows(&v, body)
}

#[test]
fn symbolic_rank_is_the_generic_numeric_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for case in 0..24 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let deficit = rng.gen_range(0..cols);
        let m = deficient_matrix(&mut rng, rows, cols, deficit);
        let r = symbolic_rank(&m);
        let mut best = 0;
        for _ in 0..1000 {
            let point: Vec<Rational> = (0..NVARS)
                .map(|_| Rational::new(rng.gen_range(-50i64..=50).into(), rng.gen_range(1i64..=9).into()))
                .collect();
            let k = scalar_rank(&m.eval(&point).unwrap());
            assert!(k <= r, "case {case}: rank {k} at a point exceeds symbolic rank {r}");
            best = best.max(k);
        }
        assert_eq!(best, r, "case {case}");
        assert!(r <= rows.min(cols - deficit), "case {case}");
    }
}
