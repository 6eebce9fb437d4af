//! Two-ray game bookkeeping for a genus-`g` midpoint `Y`.
//!
//! Starting from an E1 contraction `ψ: Z → Z₁` with exceptional divisor `E`,
//! the flopped model `Z̃` carries a second extremal contraction `α`. Writing
//! the divisor attached to `α` as `x(-K̃) - yẼ` and expanding its defining
//! intersection numbers with the cubic form of [`crate::intersection`] turns
//! each possible type of `α` into a small Diophantine system in `x`, `y` and
//! the flop defect `e`.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_integer::{Integer, Roots};

use crate::classification::{all_rank_one_targets, FanoDescriptor, FanoKind};
use crate::exec::Execution;
use crate::intersection::{e1_table, flopped_unchecked, table_product, BlowdownData, CurveInvariants, Divisor};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("genus {0} is not the genus of an index-one Fano 3-fold with g >= 3")]
    GenusOutOfRange(i64),
}

/// What the second contraction `α` of the link does.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlphaContraction {
    /// Conic bundle over `P²` with discriminant curve of degree `delta_deg`.
    ConicBundle { delta_deg: i64 },
    /// Del Pezzo fibration over `P¹` with fibres of degree `d`.
    DelPezzoFibration { d: i64 },
    /// E1 contraction of `D` onto a curve `C` in `target`.
    DivisorialE1 { target: FanoDescriptor, curve: CurveInvariants },
}

impl AlphaContraction {
    fn rank(&self) -> (u8, i64, i64, i64) {
        match *self {
            AlphaContraction::ConicBundle { delta_deg } => (0, delta_deg, 0, 0),
            AlphaContraction::DelPezzoFibration { d } => (1, d, 0, 0),
            AlphaContraction::DivisorialE1 { target, curve } => {
                (2, target.index() * 100 + target.anticanonical_degree(), curve.pa, curve.deg)
            }
        }
    }

    /// `P2`, `P1` or the label of the target 3-fold.
    pub fn base_label(&self) -> String {
        match self {
            AlphaContraction::ConicBundle { .. } => "P2".to_string(),
            AlphaContraction::DelPezzoFibration { .. } => "P1".to_string(),
            AlphaContraction::DivisorialE1 { target, .. } => target.label(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            AlphaContraction::ConicBundle { delta_deg } => {
                format!("Conic bundle, deg(Delta)={delta_deg}")
            }
            AlphaContraction::DelPezzoFibration { d } => {
                format!("Del Pezzo fibration of degree {d}")
            }
            AlphaContraction::DivisorialE1 { curve, .. } => {
                format!("E1, pa(C)={}, deg(C)={}", curve.pa, curve.deg)
            }
        }
    }
}

/// One admissible `(ψ, α)` configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LinkSolution {
    pub g: i64,
    pub psi: BlowdownData,
    pub x: i64,
    pub y: i64,
    /// `x + 1 = y k`, divisorial `α` only.
    pub k: Option<i64>,
    pub e: i64,
    pub alpha: AlphaContraction,
    pub max_deg_f: i64,
    pub hodge_feasible: bool,
}

/// Which form of the del Pezzo `L²·Ẽ = 0` constraint to solve.
///
/// `Printed` drops the `x²` factor on the `(-K)²·E` term. It exists only to
/// demonstrate that it produces `e = 0` on configurations where the
/// expansion gives a positive flop defect.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DelPezzoForm {
    #[default]
    Derived,
    Printed,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolverOptions {
    pub del_pezzo_form: DelPezzoForm,
    pub execution: Execution,
}

/// A configuration satisfying every constraint except, possibly, `e >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LinkCandidate {
    pub x: i64,
    pub y: i64,
    pub k: Option<i64>,
    pub e: i64,
    pub alpha: AlphaContraction,
}

fn check_genus(g: i64) -> Result<(), SolveError> {
    if (3..=10).contains(&g) || g == 12 {
        Ok(())
    } else {
        Err(SolveError::GenusOutOfRange(g))
    }
}

/// All E1 contractions `ψ: Z → Z₁` from a weak Fano `Z` of genus `g` onto a
/// Picard-rank-one target.
pub fn enumerate_psi(g: i64) -> Result<Vec<BlowdownData>, SolveError> {
    check_genus(g)?;
    let k3 = 2 * g - 2;
    let mut out = Vec::new();
    for target in all_rank_one_targets() {
        let t = target.anticanonical_degree();
        if t <= k3 || (t - k3) % 2 != 0 {
            continue;
        }
        // t = k3 + 2(A + 1 - pa), so A = (t - k3)/2 - 1 + pa grows with pa and
        // A + 2 - 2pa > 0 caps pa.
        let base = (t - k3) / 2 - 1;
        for pa in 0.. {
            let a = base + pa;
            if a + 2 - 2 * pa <= 0 || a > t {
                break;
            }
            if a % target.index() != 0 {
                continue;
            }
            let Ok(curve) = CurveInvariants::new(pa, a / target.index()) else {
                continue;
            };
            if let Ok(b) = e1_table(g, target, curve) {
                out.push(b);
            }
        }
    }
    Ok(out)
}

/// Integer roots of `a t² + b t + c` with `a > 0`, ascending.
fn integer_roots(a: i128, b: i128, c: i128) -> Vec<i64> {
    debug_assert!(a > 0);
    let disc = b * b - 4 * a * c;
    if disc < 0 {
        return Vec::new();
    }
    let s = disc.sqrt();
    if s * s != disc {
        return Vec::new();
    }
    let mut roots = BTreeSet::new();
    for num in [-b - s, -b + s] {
        if num % (2 * a) == 0 {
            if let Ok(r) = i64::try_from(num / (2 * a)) {
                roots.insert(r);
            }
        }
    }
    roots.into_iter().collect()
}

/// Solves `c0 + c1 e = 0` where the constraint `u·v·w = 0` is affine in `e`.
fn solve_for_e(psi: &BlowdownData, u: Divisor, v: Divisor, w: Divisor) -> Option<i64> {
    let at = |e| table_product(&flopped_unchecked(psi, e), u, v, w).ok();
    let c0 = at(0)?;
    let c1 = at(1)? - c0;
    if c1 == 0 || c0 % c1 != 0 {
        return None;
    }
    Some(-c0 / c1)
}

fn product(psi: &BlowdownData, u: Divisor, v: Divisor, w: Divisor) -> i64 {
    // e = 0 is fine here: callers only pass triples with no E³ term.
    table_product(&flopped_unchecked(psi, 0), u, v, w).expect("small intersection numbers")
}

const K: Divisor = Divisor::ANTICANONICAL;

/// Conic bundle candidates: `L²·(-K̃) = 2`, `L³ = 0`,
/// `L·(-K̃)² = 12 - deg Δ`, for `L = x(-K̃) - yẼ`.
pub fn conic_bundle_candidates(psi: &BlowdownData) -> Vec<LinkCandidate> {
    let mut out = Vec::new();
    for y in [1i64, 2] {
        let (k3, k2e, ke2) = (psi.k3 as i128, psi.k2e as i128, psi.ke2 as i128);
        let y128 = y as i128;
        for x in integer_roots(k3, -2 * k2e * y128, ke2 * y128 * y128 - 2) {
            if x < 1 || x.gcd(&y) != 1 {
                continue;
            }
            let l = Divisor::new(x, -y);
            let Some(e) = solve_for_e(psi, l, l, l) else { continue };
            let delta_deg = 12 - product(psi, l, K, K);
            if delta_deg < 0 || 12 - delta_deg <= 0 {
                continue;
            }
            out.push(LinkCandidate { x, y, k: None, e, alpha: AlphaContraction::ConicBundle { delta_deg } });
        }
    }
    out
}

/// Del Pezzo fibration candidates: `L²·(-K̃) = 0`, `L²·Ẽ = 0`,
/// `L·(-K̃)² = d`.
pub fn del_pezzo_candidates(psi: &BlowdownData, form: DelPezzoForm) -> Vec<LinkCandidate> {
    let mut out = Vec::new();
    for y in [1i64, 2, 3] {
        let (k3, k2e, ke2) = (psi.k3 as i128, psi.k2e as i128, psi.ke2 as i128);
        let y128 = y as i128;
        for x in integer_roots(k3, -2 * k2e * y128, ke2 * y128 * y128) {
            if x < 1 || x.gcd(&y) != 1 {
                continue;
            }
            let l = Divisor::new(x, -y);
            let e = match form {
                DelPezzoForm::Derived => solve_for_e(psi, l, l, Divisor::EXCEPTIONAL),
                DelPezzoForm::Printed => printed_del_pezzo_e(psi, x, y),
            };
            let Some(e) = e else { continue };
            let d = product(psi, l, K, K);
            if !(3..=9).contains(&d) {
                continue;
            }
            out.push(LinkCandidate { x, y, k: None, e, alpha: AlphaContraction::DelPezzoFibration { d } });
        }
    }
    out
}

/// `(-K·Γ + 2 - 2p_a) - 2(2p_a - 2)xy - (-K·Γ - 2 + 2p_a + e)y² = 0`
fn printed_del_pezzo_e(psi: &BlowdownData, x: i64, y: i64) -> Option<i64> {
    let num = psi.k2e - 2 * psi.ke2 * x * y;
    let y2 = y * y;
    if num % y2 != 0 {
        return None;
    }
    // -e3 + e = num / y²
    Some(num / y2 + psi.e3)
}

/// Divisorial candidates: `α` is an E1 contraction of
/// `D = x(-K̃) - yẼ` onto a curve `C` in a rank-one Fano `Z̃₁` of index `y`.
pub fn divisorial_candidates(psi: &BlowdownData) -> Vec<LinkCandidate> {
    let mut out = Vec::new();
    for target in all_rank_one_targets() {
        let y = target.index();
        let t = target.anticanonical_degree();
        if t % (y * y) != 0 {
            continue;
        }
        // (-K̃ + D)²·(-K̃) = y²[k3 k² - 2 k2e k + ke2]
        let ks = integer_roots(psi.k3 as i128, -2 * psi.k2e as i128, (psi.ke2 - t / (y * y)) as i128);
        for k in ks {
            let x = y * k - 1;
            if k < 1 || x < 1 || x.gcd(&y) != 1 {
                continue;
            }
            let d = Divisor::new(x, -y);
            let pullback = Divisor::new(x + 1, -y);
            let Some(e) = solve_for_e(psi, pullback, pullback, d) else { continue };
            let genus_term = product(psi, K, d, d);
            let degree_term = product(psi, pullback, d, K);
            if genus_term % 2 != 0 || degree_term % target.index() != 0 {
                continue;
            }
            let Ok(curve) = CurveInvariants::new((genus_term + 2) / 2, degree_term / target.index()) else {
                continue;
            };
            out.push(LinkCandidate { x, y, k: Some(k), e, alpha: AlphaContraction::DivisorialE1 { target, curve } });
        }
    }
    out
}

fn finish(psi: &BlowdownData, c: LinkCandidate) -> Option<LinkSolution> {
    if c.e < 1 {
        return None;
    }
    let mut sol = LinkSolution {
        g: psi.g,
        psi: *psi,
        x: c.x,
        y: c.y,
        k: c.k,
        e: c.e,
        alpha: c.alpha,
        max_deg_f: 0,
        hodge_feasible: true,
    };
    sol.max_deg_f = max_deg_f(&sol);
    sol.hodge_feasible = hodge_filter(&sol);
    Some(sol)
}

fn finish_all(psi: &BlowdownData, cands: Vec<LinkCandidate>) -> Vec<LinkSolution> {
    cands.into_iter().filter_map(|c| finish(psi, c)).collect()
}

pub fn solve_conic_bundle(psi: &BlowdownData) -> Vec<LinkSolution> {
    finish_all(psi, conic_bundle_candidates(psi))
}

pub fn solve_del_pezzo(psi: &BlowdownData) -> Vec<LinkSolution> {
    solve_del_pezzo_with(psi, DelPezzoForm::Derived)
}

pub fn solve_del_pezzo_with(psi: &BlowdownData, form: DelPezzoForm) -> Vec<LinkSolution> {
    finish_all(psi, del_pezzo_candidates(psi, form))
}

pub fn solve_divisorial(psi: &BlowdownData) -> Vec<LinkSolution> {
    finish_all(psi, divisorial_candidates(psi))
}

/// Whether both sides of a divisorial link can realise the same
/// `h^{2,1}(Z)`.
///
/// On the smooth fibre `h^{2,1}(Z) = h^{2,1}(Z₁) + p_a(Γ)`, and the
/// `h^{2,1}` of a degenerate `Z₁` lies between 0 and that of the smooth
/// member, so each side pins `h^{2,1}(Z)` to an interval. Fibrations are
/// never excluded.
pub fn hodge_filter(sol: &LinkSolution) -> bool {
    match sol.alpha {
        AlphaContraction::DivisorialE1 { target, curve } => {
            let psi_lo = sol.psi.curve.pa;
            let psi_hi = psi_lo + sol.psi.target.h21_cap() as i64;
            let alpha_lo = curve.pa;
            let alpha_hi = alpha_lo + target.h21_cap() as i64;
            psi_lo <= alpha_hi && alpha_lo <= psi_hi
        }
        _ => true,
    }
}

/// Upper bound for the degree of the surface on `Y` that is not
/// `Q`-Cartier: `(-K)²·E`, or for an E1/E1 link the smaller of `(-K)²·E`
/// and `(-K̃)²·D`.
pub fn max_deg_f(sol: &LinkSolution) -> i64 {
    match sol.alpha {
        AlphaContraction::DivisorialE1 { .. } => {
            let d_side = sol.x * sol.psi.k3 - sol.y * sol.psi.k2e;
            sol.psi.k2e.min(d_side)
        }
        _ => sol.psi.k2e,
    }
}

fn psi_group(target: &FanoDescriptor) -> (u8, i64) {
    match target.kind() {
        FanoKind::IndexOne { .. } => (0, -target.anticanonical_degree()),
        FanoKind::IndexTwo { degree } => (1, degree as i64),
        FanoKind::Quadric => (2, 0),
        FanoKind::ProjSpace => (3, 0),
    }
}

/// Canonical ordering of solutions: `Z₁` grouped as index one by
/// decreasing degree, then index two, quadric, `P³`; then `p_a(Γ)`; then
/// the kind of `α`.
pub fn canonical_cmp(a: &LinkSolution, b: &LinkSolution) -> Ordering {
    let key =
        |s: &LinkSolution| (psi_group(&s.psi.target), s.psi.curve.pa, s.psi.curve.deg, s.alpha.rank(), s.x, s.y, s.e);
    key(a).cmp(&key(b))
}

/// All links through a genus-`g` midpoint in canonical order.
pub fn enumerate_links(g: i64, apply_hodge: bool) -> Result<Vec<LinkSolution>, SolveError> {
    enumerate_links_with(g, apply_hodge, SolverOptions::default())
}

pub fn enumerate_links_with(g: i64, apply_hodge: bool, opts: SolverOptions) -> Result<Vec<LinkSolution>, SolveError> {
    let psis = enumerate_psi(g)?;
    let mut sols = opts.execution.flat_map(psis, |psi| {
        let mut v = solve_conic_bundle(&psi);
        v.extend(solve_del_pezzo_with(&psi, opts.del_pezzo_form));
        v.extend(solve_divisorial(&psi));
        v
    });
    if apply_hodge {
        sols.retain(|s| s.hodge_feasible);
    }
    sols.sort_by(canonical_cmp);
    sols.dedup();
    Ok(sols)
}
