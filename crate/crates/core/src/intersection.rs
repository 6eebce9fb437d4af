//! Intersection numbers on the rank-two lattice spanned by `-K` and the
//! exceptional divisor `E` of an E1 contraction, and their behaviour under
//! flops.

use crate::classification::FanoDescriptor;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntersectionError {
    #[error("genus {0} is below 3")]
    GenusOutOfRange(i64),
    #[error("curve invariants (p_a = {pa}, deg = {deg}) are invalid")]
    InvalidCurve { pa: i64, deg: i64 },
    #[error("target {target} has degree {expected} but the blow-up data forces {found}")]
    InconsistentTarget { target: String, expected: i64, found: i64 },
    #[error("(-K)^2.E = {0} is not positive")]
    NonpositiveSurfaceDegree(i64),
    #[error("-K.Γ = {a} exceeds the target degree {target_degree}")]
    DegreeExceedsTarget { a: i64, target_degree: i64 },
    #[error("flop defect e = {0} must be a positive integer")]
    NonpositiveFlopDefect(i64),
    #[error("contraction would change the degree by {0}, which is not positive")]
    NegativeJump(i64),
    #[error("intersection number overflows 64 bits")]
    Overflow,
}

/// Arithmetic genus and `H`-degree of a curve on a Fano 3-fold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveInvariants {
    pub pa: i64,
    pub deg: i64,
}

impl CurveInvariants {
    pub fn new(pa: i64, deg: i64) -> Result<Self, IntersectionError> {
        if pa < 0 || deg < 1 {
            return Err(IntersectionError::InvalidCurve { pa, deg });
        }
        Ok(Self { pa, deg })
    }
}

/// The cubic form on `Z = Bl_Γ Z₁` in the basis `(-K_Z, E)`, together with
/// the data it was computed from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlowdownData {
    pub g: i64,
    pub target: FanoDescriptor,
    pub curve: CurveInvariants,
    /// `-K_{Z₁}·Γ`.
    pub a: i64,
    /// `(-K)^3`
    pub k3: i64,
    /// `(-K)^2·E`
    pub k2e: i64,
    /// `(-K)·E^2`
    pub ke2: i64,
    /// `E^3`
    pub e3: i64,
}

/// The four monomial values of the cubic form after flopping, so
/// `e3 = E^3 - e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlopTable {
    pub k3: i64,
    pub k2e: i64,
    pub ke2: i64,
    pub e3: i64,
}

impl FlopTable {
    fn monomial(&self, exc_power: usize) -> i64 {
        [self.k3, self.k2e, self.ke2, self.e3][exc_power]
    }
}

/// A divisor `anti·(-K) + exc·E` on the rank-two lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Divisor {
    pub anti: i64,
    pub exc: i64,
}

impl Divisor {
    pub const ANTICANONICAL: Divisor = Divisor { anti: 1, exc: 0 };
    pub const EXCEPTIONAL: Divisor = Divisor { anti: 0, exc: 1 };

    pub const fn new(anti: i64, exc: i64) -> Self {
        Self { anti, exc }
    }

    fn coeff(&self, exc: bool) -> i64 {
        if exc {
            self.exc
        } else {
            self.anti
        }
    }
}

impl From<(i64, i64)> for Divisor {
    fn from((anti, exc): (i64, i64)) -> Self {
        Self { anti, exc }
    }
}

/// Intersection table of the E1 contraction `Z → Z₁` blowing up `Γ`, for a
/// genus-`g` midpoint.
pub fn e1_table(g: i64, target: FanoDescriptor, curve: CurveInvariants) -> Result<BlowdownData, IntersectionError> {
    if g < 3 {
        return Err(IntersectionError::GenusOutOfRange(g));
    }
    let curve = CurveInvariants::new(curve.pa, curve.deg)?;
    let a = target.index() * curve.deg;
    let k3 = 2 * g - 2;
    let k2e = a + 2 - 2 * curve.pa;
    let ke2 = 2 * curve.pa - 2;
    let e3 = -(a - 2 + 2 * curve.pa);

    let found = k3 + 2 * (a + 1 - curve.pa);
    if found != target.anticanonical_degree() {
        return Err(IntersectionError::InconsistentTarget {
            target: target.label(),
            expected: target.anticanonical_degree(),
            found,
        });
    }
    if k2e <= 0 {
        return Err(IntersectionError::NonpositiveSurfaceDegree(k2e));
    }
    if a > target.anticanonical_degree() {
        return Err(IntersectionError::DegreeExceedsTarget { a, target_degree: target.anticanonical_degree() });
    }
    Ok(BlowdownData { g, target, curve, a, k3, k2e, ke2, e3 })
}

impl BlowdownData {
    /// Degree of `Z₁` recovered from the cubic form alone.
    pub fn reconstructed_target_degree(&self) -> i64 {
        // (-K_Z + E)^3 = (-K_{Z₁})^3 since -K_Z = π*(-K_{Z₁}) - E
        self.k3 + 3 * self.k2e + 3 * self.ke2 + self.e3
    }
}

/// Table on the flopped side `Z̃`: only `E^3` moves.
pub fn flop_transport(b: &BlowdownData, e: i64) -> Result<FlopTable, IntersectionError> {
    if e <= 0 {
        return Err(IntersectionError::NonpositiveFlopDefect(e));
    }
    Ok(flopped_unchecked(b, e))
}

/// Same as [`flop_transport`] without the positivity check on `e`. The
/// solver uses this to read off `e` from a linear constraint before deciding
/// whether the configuration is admissible.
pub(crate) fn flopped_unchecked(b: &BlowdownData, e: i64) -> FlopTable {
    FlopTable { k3: b.k3, k2e: b.k2e, ke2: b.ke2, e3: b.e3 - e }
}

/// Evaluates the symmetric trilinear form on three divisors of `Z̃`.
pub fn triple_product(
    b: &BlowdownData,
    e: i64,
    u: impl Into<Divisor>,
    v: impl Into<Divisor>,
    w: impl Into<Divisor>,
) -> Result<i64, IntersectionError> {
    let table = flop_transport(b, e)?;
    table_product(&table, u.into(), v.into(), w.into())
}

pub(crate) fn table_product(t: &FlopTable, u: Divisor, v: Divisor, w: Divisor) -> Result<i64, IntersectionError> {
    let mut total: i128 = 0;
    for cu in [false, true] {
        for cv in [false, true] {
            for cw in [false, true] {
                let power = cu as usize + cv as usize + cw as usize;
                let coeff = u.coeff(cu) as i128 * v.coeff(cv) as i128 * w.coeff(cw) as i128;
                total += coeff * t.monomial(power) as i128;
            }
        }
    }
    i64::try_from(total).map_err(|_| IntersectionError::Overflow)
}

/// Type of an extremal divisorial contraction `X → X'` between Gorenstein
/// weak Fano 3-folds. E5 needs a non-Gorenstein point and is not
/// representable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ContractionKind {
    /// Divisor onto a curve of arithmetic genus `pa` with `-K_{X'}·Γ = target_k`.
    E1 { pa: i64, target_k: i64 },
    /// Divisor onto a smooth point.
    E2,
    /// Quadric onto an ordinary double point.
    E3,
    /// Quadric cone onto a cA point.
    E4,
}

/// `(-K_{X'})^3` given `(-K_X)^3`.
pub fn degree_jump(kind: ContractionKind, k3_before: i64) -> Result<i64, IntersectionError> {
    let jump = match kind {
        ContractionKind::E1 { pa, target_k } => {
            if pa < 0 || target_k < 0 {
                return Err(IntersectionError::InvalidCurve { pa, deg: target_k });
            }
            2 * (target_k + 1 - pa)
        }
        ContractionKind::E2 => 8,
        ContractionKind::E3 | ContractionKind::E4 => 2,
    };
    if jump <= 0 {
        return Err(IntersectionError::NegativeJump(jump));
    }
    Ok(k3_before + jump)
}
