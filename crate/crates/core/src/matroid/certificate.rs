use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::case::{CaseDescriptor, ModelSpec};
use crate::error::{Error, Result};
use crate::phylo::{FourierCoordinate, ModelKind};

use super::certify::{Direction, Separation, Verification};

pub const CERTIFICATE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSides {
    pub left: Vec<String>,
    pub right: Vec<String>,
}

/// A set of Fourier coordinates independent in one model's matroid and
/// dependent in the other's.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: u32,
    pub model: ModelKind,
    /// Parameter identifications of the model.
    pub convention: String,
    pub case: CaseSides,
    /// Coordinates as lists of group elements, e.g. `["1","1","0","0"]`.
    pub subset: Vec<Vec<String>>,
    pub direction: Direction,
    pub verification: Verification,
    pub seed: u64,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl Certificate {
    pub fn new(
        case: &CaseDescriptor,
        coordinates: &[FourierCoordinate],
        sep: &Separation,
        seed: u64,
    ) -> Self {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        Certificate {
            version: CERTIFICATE_VERSION,
            model: case.kind,
            convention: case.kind.convention().to_string(),
            case: CaseSides {
                left: case.left.parts(),
                right: case.right.parts(),
            },
            subset: sep.subset.iter().map(|&j| coordinates[j].to_strings()).collect(),
            direction: sep.direction,
            verification: sep.verification.clone(),
            seed,
            timestamp,
        }
    }

    pub fn case_descriptor(&self) -> Result<CaseDescriptor> {
        CaseDescriptor::new(
            self.model,
            ModelSpec::from_parts(&self.case.left)?,
            ModelSpec::from_parts(&self.case.right)?,
        )
        .map_err(|e| Error::data(e.to_string()))
    }
}

/// Rebuilds both Jacobians and checks the recorded subset exactly:
/// independent in the recorded model, dependent in the other. Every
/// certificate is checked exactly, whatever its verification record says.
pub fn verify_certificate(c: &Certificate) -> Result<bool> {
    if c.version != CERTIFICATE_VERSION {
        return Err(Error::data(format!("unsupported certificate version {}", c.version)));
    }
    let case = c.case_descriptor()?;
    let (pl, pr) = case.parameterizations()?;
    let mut subset = Vec::with_capacity(c.subset.len());
    for parts in &c.subset {
        let coord = FourierCoordinate::from_strings(c.model.group(), parts)?;
        if coord.elements().len() != case.n() {
            return Err(Error::data(format!("coordinate {coord} has the wrong length")));
        }
        let j = pl
            .coordinate_index(&coord)
            .ok_or_else(|| Error::data(format!("{coord} is not a coordinate of the model")))?;
        if subset.contains(&j) {
            return Err(Error::data(format!("coordinate {coord} is repeated")));
        }
        subset.push(j);
    }
    let (ml, mr) = (pl.matroid(), pr.matroid());
    let (ind, dep) = match c.direction {
        Direction::LeftIndependent => (&ml, &mr),
        Direction::RightIndependent => (&mr, &ml),
    };
    Ok(ind.is_independent(&subset)? && !dep.is_independent(&subset)?)
}
