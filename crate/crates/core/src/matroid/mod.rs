//! Jacobian matroids: independence oracles, model dimension, randomized
//! certification and exhaustive comparison.

mod certificate;
mod certify;
mod exhaustive;
mod oracle;
mod structured;

pub use certificate::{verify_certificate, CaseSides, Certificate, CERTIFICATE_VERSION};
pub use certify::{
    certify_exact, certify_sz, CertifyOptions, Direction, Outcome, SZConfig, Separation,
    SubsetSampling, TrialStats, Verification,
};
pub use exhaustive::{exhaustive_matroid_equal, subsets_up_to, MatroidComparison};
pub use structured::BinomialMap;
pub use oracle::{
    certified_rank, is_independent_numeric, is_independent_symbolic, model_dimension,
    random_point, random_rational_point, FpEvaluator, JacobianMatroid,
};
