use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The abelian groups the supported models are built on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    Z2,
    Z2xZ2,
}

impl Group {
    pub fn order(self) -> u8 {
        match self {
            Group::Z2 => 2,
            Group::Z2xZ2 => 4,
        }
    }

    pub fn elements(self) -> impl Iterator<Item = GroupElement> {
        (0..self.order()).map(move |bits| GroupElement { group: self, bits })
    }
}

/// Element of `Z2` (one bit) or `Z2 x Z2` (bit pair `(x, y)` stored as `2x + y`).
/// Addition is componentwise mod 2, i.e. XOR of the encodings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    group: Group,
    bits: u8,
}

impl PartialOrd for Group {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Group {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order().cmp(&other.order())
    }
}

impl GroupElement {
    pub fn new(group: Group, bits: u8) -> Result<Self> {
        if bits >= group.order() {
            return Err(Error::arg(format!("{bits} is not an element of {group:?}")));
        }
        Ok(GroupElement { group, bits })
    }

    pub fn identity(group: Group) -> Self {
        GroupElement { group, bits: 0 }
    }

    pub fn group(self) -> Group {
        self.group
    }

    pub fn bits(self) -> u8 {
        self.bits
    }

    pub fn is_identity(self) -> bool {
        self.bits == 0
    }

    pub fn parse(group: Group, text: &str) -> Result<Self> {
        let bits = match (group, text) {
            (Group::Z2, "0") => 0,
            (Group::Z2, "1") => 1,
            (Group::Z2xZ2, "00") => 0,
            (Group::Z2xZ2, "01") => 1,
            (Group::Z2xZ2, "10") => 2,
            (Group::Z2xZ2, "11") => 3,
            _ => {
                return Err(Error::data(format!(
                    "{text:?} is not an element of {group:?}"
                )))
            }
        };
        Ok(GroupElement { group, bits })
    }
}

impl std::ops::Add for GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: GroupElement) -> GroupElement {
        debug_assert_eq!(self.group, rhs.group);
        GroupElement {
            group: self.group,
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.group {
            Group::Z2 => write!(f, "{}", self.bits),
            Group::Z2xZ2 => write!(f, "{}{}", self.bits >> 1, self.bits & 1),
        }
    }
}

/// Group-based substitution model.
///
/// Parameter identifications among the nonzero group elements:
/// - CFN: one parameter (`Z2`).
/// - K3P: three independent parameters `10`, `01`, `11`.
/// - K2P: `a_01 = a_11`, leaving classes `10` and `01`.
/// - JC: all three identified into a single class `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Cfn,
    Jc,
    K2p,
    K3p,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [ModelKind::Cfn, ModelKind::Jc, ModelKind::K2p, ModelKind::K3p];

    pub fn group(self) -> Group {
        match self {
            ModelKind::Cfn => Group::Z2,
            _ => Group::Z2xZ2,
        }
    }

    /// Names of the parameter classes of nonzero elements, in variable order.
    pub fn parameter_classes(self) -> &'static [&'static str] {
        match self {
            ModelKind::Cfn => &["1"],
            ModelKind::K3p => &["10", "01", "11"],
            ModelKind::K2p => &["10", "01"],
            ModelKind::Jc => &["x"],
        }
    }

    /// Parameter class of a nonzero element; `None` for the identity, whose
    /// parameter is identically 1 in Fourier coordinates.
    pub fn class_of(self, g: GroupElement) -> Option<usize> {
        debug_assert_eq!(g.group(), self.group());
        match (self, g.bits()) {
            (_, 0) => None,
            (ModelKind::Cfn, 1) => Some(0),
            (ModelKind::K3p, 2) => Some(0),
            (ModelKind::K3p, 1) => Some(1),
            (ModelKind::K3p, 3) => Some(2),
            (ModelKind::K2p, 2) => Some(0),
            (ModelKind::K2p, 1 | 3) => Some(1),
            (ModelKind::Jc, _) => Some(0),
            _ => unreachable!("element outside the model's group"),
        }
    }

    /// Description of the parameter identification convention, recorded in
    /// certificate metadata.
    pub fn convention(self) -> &'static str {
        match self {
            ModelKind::Cfn => "Z2; identity parameters set to 1",
            ModelKind::K3p => "Z2xZ2; a_10, a_01, a_11 free; identity parameters set to 1",
            ModelKind::K2p => "Z2xZ2; a_01 = a_11 per edge; identity parameters set to 1",
            ModelKind::Jc => "Z2xZ2; a_10 = a_01 = a_11 per edge; identity parameters set to 1",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Cfn => "cfn",
            ModelKind::Jc => "jc",
            ModelKind::K2p => "k2p",
            ModelKind::K3p => "k3p",
        })
    }
}

impl FromStr for ModelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cfn" => Ok(ModelKind::Cfn),
            "jc" => Ok(ModelKind::Jc),
            "k2p" => Ok(ModelKind::K2p),
            "k3p" => Ok(ModelKind::K3p),
            _ => Err(Error::arg(format!("unknown model {s:?}"))),
        }
    }
}

/// A Fourier coordinate label `q_{g_1 ... g_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FourierCoordinate(pub Vec<GroupElement>);

impl FourierCoordinate {
    pub fn elements(&self) -> &[GroupElement] {
        &self.0
    }

    pub fn sum(&self, group: Group) -> GroupElement {
        self.0
            .iter()
            .fold(GroupElement::identity(group), |acc, &g| acc + g)
    }

    /// Sum of the entries at the leaves in `mask` (bit `i` is leaf `i + 1`).
    pub fn sum_over(&self, mask: u32) -> u8 {
        self.0
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(0, |acc, (_, g)| acc ^ g.bits())
    }

    /// All zero-sum coordinates of `G^n` in lexicographic order.
    pub fn all_zero_sum(group: Group, n: usize) -> Vec<FourierCoordinate> {
        let k = group.order() as usize;
        let total = k.pow(n as u32);
        let mut out = Vec::with_capacity(total / k);
        for idx in 0..total {
            let mut rest = idx;
            let mut elems = vec![GroupElement::identity(group); n];
            for slot in elems.iter_mut().rev() {
                *slot = GroupElement {
                    group,
                    bits: (rest % k) as u8,
                };
                rest /= k;
            }
            let c = FourierCoordinate(elems);
            if c.sum(group).is_identity() {
                out.push(c);
            }
        }
        out
    }

    /// Group elements as text, e.g. `["10", "01", "11", "00"]`.
    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(ToString::to_string).collect()
    }

    pub fn from_strings<S: AsRef<str>>(group: Group, parts: &[S]) -> Result<Self> {
        parts
            .iter()
            .map(|s| GroupElement::parse(group, s.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(FourierCoordinate)
    }
}

impl fmt::Display for FourierCoordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q")?;
        let wide = self.0.first().is_some_and(|g| g.group() == Group::Z2xZ2);
        for (i, g) in self.0.iter().enumerate() {
            if wide && i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}
