use phylomatroid::case::{case_seed, certify_case, CaseOutcome, CaseReport, Mode};
use phylomatroid::matroid::{
    certify_exact, certify_sz, is_independent_numeric, random_rational_point, verify_certificate,
    Certificate, CertifyOptions, Outcome, SZConfig,
};
use phylomatroid::phylo::{enumerate_cycle_networks, enumerate_mixture_cases, CycleNetwork, ModelKind};
use phylomatroid::{CaseDescriptor, Direction, ModelSpec, Verification};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const UNRESOLVED: &str = "12|3456,123|456,1234|56 + 23|1456,123|456,1236|45 vs \
                          12|3456,123|456,1236|45 + 23|1456,123|456,1234|56";

fn certificate(report: &CaseReport) -> &Certificate {
    match &report.outcome {
        CaseOutcome::Certified(c) => c,
        CaseOutcome::Unsolved(stats) => panic!("{} unsolved: {stats:?}", report.case),
    }
}

fn run(case: &CaseDescriptor, mode: Mode) -> CaseReport {
    certify_case(case, mode, &CertifyOptions::default(), case_seed(0, &case.id()), None).unwrap()
}

/// Dependence at random rational points, independent of any exact rank code.
fn dependent_at_random_points(c: &Certificate, points: usize) -> bool {
    let case = c.case_descriptor().unwrap();
    let (l, r) = case.parameterizations().unwrap();
    let dep = match c.direction {
        Direction::LeftIndependent => &r,
        Direction::RightIndependent => &l,
    };
    let subset: Vec<usize> = c
        .subset
        .iter()
        .map(|s| {
            let g = phylomatroid::FourierCoordinate::from_strings(c.model.group(), s).unwrap();
            dep.coordinate_index(&g).unwrap()
        })
        .collect();
    let j = dep.jacobian();
    let mut rng = ChaCha8Rng::seed_from_u64(subset.len() as u64);
    (0..points).all(|_| {
        let x = random_rational_point(&mut rng, j.vars().len(), 1 << 20);
        !is_independent_numeric(&j, &subset, &x).unwrap()
    })
}

#[test]
fn k3p_four_leaf_cases_are_certified() {
    let cases = enumerate_mixture_cases(4).unwrap();
    assert_eq!(cases.len(), 4);
    for c in &cases {
        let case = CaseDescriptor::from_mixture_case(ModelKind::K3p, c);
        let report = run(&case, Mode::Exact);
        let cert = certificate(&report);
        assert_eq!(cert.verification, Verification::Symbolic);
        assert!(verify_certificate(cert).unwrap(), "{case}");
        assert!(dependent_at_random_points(cert, 3), "{case}");

        let mut emptied = cert.clone();
        emptied.subset.clear();
        assert!(!verify_certificate(&emptied).unwrap());
        let mut flipped = cert.clone();
        flipped.direction = flipped.direction.flipped();
        assert!(!verify_certificate(&flipped).unwrap());
    }
}

#[test]
fn golden_certificate_still_verifies() {
    let text = include_str!("fixtures/k3p_certificate.json");
    let cert: Certificate = serde_json::from_str(text).unwrap();
    assert_eq!(cert.model, ModelKind::K3p);
    assert!(verify_certificate(&cert).unwrap());
    assert!(dependent_at_random_points(&cert, 3));
    let back: Certificate = serde_json::from_str(&serde_json::to_string(&cert).unwrap()).unwrap();
    assert_eq!(back, cert);
}

#[test]
fn malformed_certificates_are_data_errors() {
    let text = include_str!("fixtures/k3p_certificate.json");
    let cert: Certificate = serde_json::from_str(text).unwrap();
    let mut repeated = cert.clone();
    repeated.subset.push(repeated.subset[0].clone());
    assert!(matches!(verify_certificate(&repeated), Err(phylomatroid::Error::Data(_))));
    let mut outside = cert.clone();
    outside.subset[0] = vec!["10".into(), "00".into(), "00".into(), "00".into()];
    assert!(matches!(verify_certificate(&outside), Err(phylomatroid::Error::Data(_))));
    let mut bad_case = cert;
    bad_case.case.left = vec!["12|34|5".into()];
    assert!(matches!(verify_certificate(&bad_case), Err(phylomatroid::Error::Data(_))));
}

#[test]
fn unresolved_six_leaf_pair_is_not_separated() {
    let case = CaseDescriptor::parse(ModelKind::Cfn, UNRESOLVED).unwrap();
    let opts = CertifyOptions {
        trials: 1000,
        ..CertifyOptions::default()
    };
    let report = certify_case(&case, Mode::SchwartzZippel { epsilon: 1e-10 }, &opts, 1, None).unwrap();
    assert_eq!(report.dimensions, [19, 19]);
    match report.outcome {
        CaseOutcome::Unsolved(stats) => assert_eq!(stats.trials, 1000),
        CaseOutcome::Certified(c) => panic!("unexpected certificate {c:?}"),
    }
}

#[test]
fn identical_and_equal_matroids_give_no_certificate() {
    let opts = CertifyOptions {
        trials: 200,
        ..CertifyOptions::default()
    };
    let p = ModelSpec::parse("12|34 + 13|24").unwrap().parameterization(ModelKind::K3p).unwrap();
    let m = p.matroid();
    assert!(matches!(certify_exact(&m, &m, &opts, 3).unwrap(), Outcome::NotFound(_)));
    let same_dim = CertifyOptions {
        same_dim: true,
        ..opts.clone()
    };
    let n1 = ModelSpec::Network(CycleNetwork::square_1234()).parameterization(ModelKind::Cfn).unwrap();
    let n2 = ModelSpec::Network(CycleNetwork::square_1243()).parameterization(ModelKind::Cfn).unwrap();
    assert!(matches!(
        certify_exact(&n1.matroid(), &n2.matroid(), &same_dim, 3).unwrap(),
        Outcome::NotFound(_)
    ));
    assert!(certify_exact(&m, &m, &CertifyOptions { trials: 0, ..opts }, 3).is_err());
}

#[test]
fn same_dimension_separation_is_symmetric() {
    let case = CaseDescriptor::parse(
        ModelKind::Cfn,
        "12|3456,123|456,1234|56 + 13|2456,135|246,1356|24 vs 12|3456,123|456,1234|56 + 14|2356,124|356,1245|36",
    )
    .unwrap();
    let (pl, pr) = case.parameterizations().unwrap();
    let (ml, mr) = (pl.matroid(), pr.matroid());
    assert_eq!(ml.dimension(), mr.dimension());
    let cfg = SZConfig::for_jacobians(1e-10, &[ml.jacobian(), mr.jacobian()]).unwrap();
    let opts = CertifyOptions {
        same_dim: true,
        ..CertifyOptions::default()
    };
    let forward = certify_sz(&ml, &mr, &cfg, &opts, 11).unwrap();
    let backward = certify_sz(&mr, &ml, &cfg, &opts, 11).unwrap();
    for (outcome, swapped) in [(forward, false), (backward, true)] {
        let sep = outcome.separation().expect("same-dimension pair separated").clone();
        assert!(matches!(sep.verification, Verification::SchwartzZippel { .. }));
        let direction = if swapped { sep.direction.flipped() } else { sep.direction };
        let cert = Certificate::new(&case, pl.coordinates(), &phylomatroid::Separation { direction, ..sep }, 11);
        assert!(verify_certificate(&cert).unwrap());
    }
}

#[test]
fn sz_mode_records_its_parameters() {
    let case = CaseDescriptor::parse(ModelKind::K3p, "12|34 + 12|34 vs 12|34 + 13|24").unwrap();
    let report = run(&case, Mode::SchwartzZippel { epsilon: 1e-10 });
    let cert = certificate(&report);
    match cert.verification {
        Verification::SchwartzZippel { epsilon, l, sample_set, alpha } => {
            assert_eq!(epsilon, 1e-10);
            assert!((alpha as f64 / sample_set as f64).powi(l as i32) <= epsilon);
        }
        Verification::Symbolic => panic!("expected a probabilistic record"),
    }
    assert!(verify_certificate(cert).unwrap());
}

fn network_dimension(net: &CycleNetwork, kind: ModelKind) -> usize {
    ModelSpec::Network(net.clone()).parameterization(kind).unwrap().matroid().dimension()
}

#[test]
fn network_dimensions_grow_with_the_cycle() {
    for kind in [ModelKind::K2p, ModelKind::K3p] {
        let dims: Vec<Vec<usize>> = (2..=4)
            .map(|k| {
                enumerate_cycle_networks(4, k)
                    .unwrap()
                    .iter()
                    .map(|n| network_dimension(n, kind))
                    .collect()
            })
            .collect();
        for w in dims.windows(2) {
            assert!(w[0].iter().max() < w[1].iter().min(), "{kind}: {dims:?}");
        }
    }
}

#[test]
fn four_cycle_networks_are_pairwise_separated() {
    let nets = enumerate_cycle_networks(4, 4).unwrap();
    for kind in [ModelKind::K2p, ModelKind::K3p] {
        for (i, a) in nets.iter().enumerate() {
            for b in &nets[i + 1..] {
                let case = CaseDescriptor::new(kind, ModelSpec::Network(a.clone()), ModelSpec::Network(b.clone())).unwrap();
                let report = run(&case, Mode::Exact);
                assert!(verify_certificate(certificate(&report)).unwrap(), "{case}");
            }
        }
    }
}

#[test]
fn cherry_networks_are_separated_from_the_sunlet() {
    for kind in [ModelKind::K2p, ModelKind::K3p] {
        for net in [CycleNetwork::cherry_45(), CycleNetwork::cherry_23()] {
            let case = CaseDescriptor::new(
                kind,
                ModelSpec::Network(net),
                ModelSpec::Network(CycleNetwork::sunlet5()),
            )
            .unwrap();
            let report = run(&case, Mode::Exact);
            assert!(verify_certificate(certificate(&report)).unwrap(), "{case}");
        }
    }
}
