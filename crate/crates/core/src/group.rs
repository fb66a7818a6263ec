//! Symmetry groups of the sign-split newform families.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Random-matrix symmetry type of a family: all forms (`O`), forms with root
/// number `+1` (`SOEven`) and forms with root number `-1` (`SOOdd`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SymmetryGroup {
    #[serde(rename = "o")]
    O,
    #[serde(rename = "so-even")]
    SOEven,
    #[serde(rename = "so-odd")]
    SOOdd,
}

/// Fourier transform of the one-level density kernel, written as
/// `delta * δ(y) + box * 1{|y| < 1} + constant`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelConstants {
    pub delta: f64,
    pub box_coefficient: f64,
    pub constant: f64,
}

impl SymmetryGroup {
    pub const ALL: [SymmetryGroup; 3] = [SymmetryGroup::O, SymmetryGroup::SOEven, SymmetryGroup::SOOdd];

    /// Sign of the correction term in the centered moments; `None` for `O`,
    /// whose moments are not split by sign.
    pub fn moment_sign(self) -> Option<f64> {
        match self {
            SymmetryGroup::O => None,
            SymmetryGroup::SOEven => Some(1.0),
            SymmetryGroup::SOOdd => Some(-1.0),
        }
    }

    pub fn kernel(self) -> KernelConstants {
        match self {
            SymmetryGroup::SOEven => KernelConstants { delta: 1.0, box_coefficient: 0.5, constant: 0.0 },
            SymmetryGroup::SOOdd => KernelConstants { delta: 1.0, box_coefficient: -0.5, constant: 1.0 },
            SymmetryGroup::O => KernelConstants { delta: 1.0, box_coefficient: 0.0, constant: 0.5 },
        }
    }

    /// Orders of vanishing that occur in the family: forms with root number
    /// `+1` vanish to even order, those with `-1` to odd order.
    pub fn admits_rank(self, rank: u32) -> bool {
        match self {
            SymmetryGroup::O => true,
            SymmetryGroup::SOEven => rank % 2 == 0,
            SymmetryGroup::SOOdd => rank % 2 == 1,
        }
    }

    pub fn cli_name(self) -> &'static str {
        match self {
            SymmetryGroup::O => "o",
            SymmetryGroup::SOEven => "so-even",
            SymmetryGroup::SOOdd => "so-odd",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            SymmetryGroup::O => "O",
            SymmetryGroup::SOEven => "SO(even)",
            SymmetryGroup::SOOdd => "SO(odd)",
        }
    }
}

impl fmt::Display for SymmetryGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.display_name())
    }
}

impl FromStr for SymmetryGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "o" => Ok(SymmetryGroup::O),
            "so-even" | "soeven" | "so(even)" => Ok(SymmetryGroup::SOEven),
            "so-odd" | "soodd" | "so(odd)" => Ok(SymmetryGroup::SOOdd),
            other => Err(Error::InvalidArgument(format!("unknown symmetry group '{other}'"))),
        }
    }
}
