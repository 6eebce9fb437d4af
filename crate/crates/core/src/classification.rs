//! Non-singular Fano 3-folds of Picard rank one.
//!
//! Every terminal Gorenstein Fano 3-fold met by the solver deforms to one of
//! these, with the same index and anticanonical degree, so the finite list
//! below is the set of possible landing points for a contraction.

use std::fmt;

/// Deformation class of a Picard-rank-one Fano 3-fold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FanoKind {
    /// Index one, `-K^3 = 2g - 2`.
    IndexOne {
        genus: u32,
    },
    /// Index two, `-K = 2H` with `H^3 = d`.
    IndexTwo {
        degree: u32,
    },
    Quadric,
    ProjSpace,
}

/// A validated [`FanoKind`] together with its numerical invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FanoDescriptor {
    kind: FanoKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassificationError {
    #[error("no index-one Fano 3-fold of Picard rank one has genus {0}")]
    InvalidGenus(u32),
    #[error("no index-two Fano 3-fold of Picard rank one has degree {0}")]
    InvalidDegree(u32),
}

impl FanoDescriptor {
    pub fn index_one(genus: u32) -> Result<Self, ClassificationError> {
        if (2..=10).contains(&genus) || genus == 12 {
            Ok(Self { kind: FanoKind::IndexOne { genus } })
        } else {
            Err(ClassificationError::InvalidGenus(genus))
        }
    }

    pub fn index_two(degree: u32) -> Result<Self, ClassificationError> {
        if (1..=5).contains(&degree) {
            Ok(Self { kind: FanoKind::IndexTwo { degree } })
        } else {
            Err(ClassificationError::InvalidDegree(degree))
        }
    }

    pub const fn quadric() -> Self {
        Self { kind: FanoKind::Quadric }
    }

    pub const fn proj_space() -> Self {
        Self { kind: FanoKind::ProjSpace }
    }

    pub fn kind(&self) -> FanoKind {
        self.kind
    }

    /// Fano index `i`, with `-K = i H`.
    pub fn index(&self) -> i64 {
        match self.kind {
            FanoKind::IndexOne { .. } => 1,
            FanoKind::IndexTwo { .. } => 2,
            FanoKind::Quadric => 3,
            FanoKind::ProjSpace => 4,
        }
    }

    /// `(-K)^3`.
    pub fn anticanonical_degree(&self) -> i64 {
        match self.kind {
            FanoKind::IndexOne { genus } => 2 * genus as i64 - 2,
            FanoKind::IndexTwo { degree } => 8 * degree as i64,
            FanoKind::Quadric => 54,
            FanoKind::ProjSpace => 64,
        }
    }

    /// `h^{2,1}` of the smooth member of the deformation class.
    pub fn h21_cap(&self) -> u32 {
        h21_cap(self)
    }

    /// Short label in the usual notation: `X22`, `V5`, `Q`, `P3`.
    pub fn label(&self) -> String {
        match self.kind {
            FanoKind::IndexOne { genus } => format!("X{}", 2 * genus - 2),
            FanoKind::IndexTwo { degree } => format!("V{degree}"),
            FanoKind::Quadric => "Q".to_string(),
            FanoKind::ProjSpace => "P3".to_string(),
        }
    }

    /// Inverse of [`FanoDescriptor::label`].
    pub fn from_label(label: &str) -> Option<Self> {
        match label {
            "Q" => Some(Self::quadric()),
            "P3" => Some(Self::proj_space()),
            _ => {
                let (head, num) = label.split_at(1);
                let n: u32 = num.parse().ok()?;
                match head {
                    "X" if n.is_multiple_of(2) => Self::index_one(n / 2 + 1).ok(),
                    "V" => Self::index_two(n).ok(),
                    _ => None,
                }
            }
        }
    }

    fn sort_key(&self) -> (i64, i64) {
        (self.index(), self.anticanonical_degree())
    }
}

impl fmt::Display for FanoDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

const INDEX_ONE_GENERA: [u32; 10] = [2, 3, 4, 5, 6, 7, 8, 9, 10, 12];

/// All seventeen deformation classes, sorted by index and then by degree.
pub fn all_rank_one_targets() -> Vec<FanoDescriptor> {
    let mut out: Vec<FanoDescriptor> = INDEX_ONE_GENERA
        .iter()
        .map(|&g| FanoDescriptor { kind: FanoKind::IndexOne { genus: g } })
        .chain((1..=5).map(|d| FanoDescriptor { kind: FanoKind::IndexTwo { degree: d } }))
        .chain([FanoDescriptor::quadric(), FanoDescriptor::proj_space()])
        .collect();
    out.sort_by_key(FanoDescriptor::sort_key);
    out
}

/// Whether `degree` is the anticanonical degree of some index-one class.
pub fn is_index_one_degree(degree: i64) -> bool {
    degree % 2 == 0 && degree >= 2 && FanoDescriptor::index_one((degree / 2 + 1) as u32).is_ok()
}

/// Hodge number `h^{2,1}` of the smooth Picard-rank-one Fano 3-fold in the
/// given class.
///
/// Values from the Iskovskikh–Mukai classification (see Iskovskikh and
/// Prokhorov, *Fano varieties*, Table 12.2). The quartic entry is the
/// `b_3 = 60` anchor used by the nodal Betti bookkeeping.
pub fn h21_cap(f: &FanoDescriptor) -> u32 {
    match f.kind {
        FanoKind::IndexOne { genus } => match genus {
            2 => 52,
            3 => 30,
            4 => 20,
            5 => 14,
            6 => 10,
            7 => 7,
            8 => 5,
            9 => 3,
            10 => 2,
            12 => 0,
            _ => unreachable!("descriptor invariants exclude genus {genus}"),
        },
        FanoKind::IndexTwo { degree } => match degree {
            1 => 21,
            2 => 10,
            3 => 5,
            4 => 2,
            5 => 0,
            _ => unreachable!("descriptor invariants exclude degree {degree}"),
        },
        FanoKind::Quadric | FanoKind::ProjSpace => 0,
    }
}
