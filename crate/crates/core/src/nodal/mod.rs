//! Defect of a nodal quartic 3-fold `Y ⊂ P⁴` from its nodes.
//!
//! The defect is the failure of the nodes to impose independent conditions
//! on cubics: `σ(Y) = N - rank M`, where `M` is the `N × 35` matrix of cubic
//! monomials evaluated at the nodes. Columns follow graded-lex order with
//! `x0 > x1 > x2 > x3 > x4`, so `x0³` comes first and `x4³` last.

pub mod field;
pub mod io;
pub mod linalg;
pub mod poly;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;

use crate::exec::Execution;
pub use field::{Eisenstein, FieldElement, FieldMode};
pub use io::{parse_nodes, Point};
pub use poly::{parse_quartic, ParseError, Polynomial};

/// Default relative singular-value threshold in float mode.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NodalError {
    #[error("line {line}{}: {message}", if *field > 0 { format!(", field {field}") } else { String::new() })]
    Parse { line: usize, field: usize, message: String },
    #[error(transparent)]
    Polynomial(#[from] ParseError),
    #[error("node {0} has all coordinates zero")]
    ZeroPoint(usize),
    #[error("nodes {0} and {1} are the same point")]
    DuplicateNode(usize, usize),
    #[error("node {0} is not in {1} mode")]
    MixedField(usize, FieldMode),
    #[error("tolerance must be a positive finite number")]
    InvalidTolerance,
    #[error("b3 = 60 + sigma - N = {0} is negative")]
    NegativeBetti(i64),
    #[error("no quartic supplied")]
    MissingPolynomial,
}

impl NodalError {
    pub fn parse(line: usize, field: usize, message: impl Into<String>) -> Self {
        NodalError::Parse { line, field, message: message.into() }
    }
}

/// A set of nodes, optionally with the quartic they lie on.
#[derive(Clone, Debug)]
pub struct NodalConfiguration {
    field: FieldMode,
    nodes: Vec<Point>,
    quartic: Option<Polynomial>,
    tolerance: f64,
}

enum Normalized {
    Exact(Vec<[Eisenstein; 5]>),
    Float(Vec<[Complex64; 5]>),
}

impl NodalConfiguration {
    pub fn new(field: FieldMode, nodes: Vec<Point>) -> Result<Self, NodalError> {
        for (i, p) in nodes.iter().enumerate() {
            let ok = p.iter().all(|c| {
                matches!(
                    (field, c),
                    (FieldMode::Rational, FieldElement::Rational(_))
                        | (FieldMode::Eisenstein, FieldElement::Eisenstein(_))
                        | (FieldMode::Float, FieldElement::Float(_))
                )
            });
            if !ok {
                return Err(NodalError::MixedField(i, field));
            }
            if p.iter().all(FieldElement::is_zero) {
                return Err(NodalError::ZeroPoint(i));
            }
        }
        let cfg = Self { field, nodes, quartic: None, tolerance: DEFAULT_TOLERANCE };
        if let Normalized::Exact(pts) = cfg.normalized() {
            for i in 0..pts.len() {
                if let Some(j) = (0..i).find(|&j| pts[j] == pts[i]) {
                    return Err(NodalError::DuplicateNode(j, i));
                }
            }
        }
        Ok(cfg)
    }

    /// Reads a node file.
    pub fn from_node_file(text: &str) -> Result<Self, NodalError> {
        let (field, nodes) = parse_nodes(text)?;
        Self::new(field, nodes)
    }

    pub fn with_quartic(mut self, f: Polynomial) -> Self {
        self.quartic = Some(f);
        self
    }

    pub fn with_tolerance(mut self, tol: f64) -> Result<Self, NodalError> {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(NodalError::InvalidTolerance);
        }
        self.tolerance = tol;
        Ok(self)
    }

    pub fn field(&self) -> FieldMode {
        self.field
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    pub fn quartic(&self) -> Option<&Polynomial> {
        self.quartic.as_ref()
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Same nodes as complex floats, for cross-checking exact modes.
    pub fn to_float(&self) -> Self {
        let nodes = self.nodes.iter().map(|p| p.clone().map(|c| FieldElement::Float(c.to_complex()))).collect();
        Self { field: FieldMode::Float, nodes, quartic: self.quartic.clone(), tolerance: self.tolerance }
    }

    /// Applies the linear map `m` to every node. Exact modes only; `None`
    /// in float mode or if `m` is singular.
    pub fn transformed(&self, m: &[[Eisenstein; 5]; 5]) -> Option<Self> {
        let rows: Vec<Vec<Eisenstein>> = m.iter().map(|r| r.to_vec()).collect();
        if self.field == FieldMode::Float || linalg::exact_rank(&rows) != 5 {
            return None;
        }
        let rational = self.field == FieldMode::Rational && m.iter().flatten().all(|c| c.b.is_zero());
        let field = if rational { FieldMode::Rational } else { FieldMode::Eisenstein };
        let nodes = self
            .nodes
            .iter()
            .map(|p| {
                let x = p.clone().map(|c| c.exact().expect("exact mode"));
                let y: [Eisenstein; 5] =
                    std::array::from_fn(|i| (0..5).fold(Eisenstein::zero(), |acc, j| &acc + &(&m[i][j] * &x[j])));
                y.map(|c| if rational { FieldElement::Rational(c.a) } else { FieldElement::Eisenstein(c) })
            })
            .collect();
        Some(Self { field, nodes, quartic: None, tolerance: self.tolerance })
    }

    /// Each point divided by its first nonzero coordinate.
    fn normalized(&self) -> Normalized {
        match self.field {
            FieldMode::Float => Normalized::Float(
                self.nodes
                    .iter()
                    .map(|p| {
                        let z = p.clone().map(|c| c.to_complex());
                        let lead = *z.iter().find(|c| c.norm() != 0.0).expect("nonzero point");
                        z.map(|c| c / lead)
                    })
                    .collect(),
            ),
            _ => Normalized::Exact(
                self.nodes
                    .iter()
                    .map(|p| {
                        let x = p.clone().map(|c| c.exact().expect("exact mode"));
                        let lead = x.iter().find(|c| !c.is_zero()).expect("nonzero point");
                        let inv = lead.inverse().expect("nonzero");
                        x.map(|c| &c * &inv)
                    })
                    .collect(),
            ),
        }
    }
}

/// Exponents of the 35 cubic monomials in graded-lex order.
pub fn cubic_monomials() -> Vec<[u32; 5]> {
    let mut out = Vec::with_capacity(35);
    for a in (0..=3u32).rev() {
        for b in (0..=3 - a).rev() {
            for c in (0..=3 - a - b).rev() {
                for d in (0..=3 - a - b - c).rev() {
                    out.push([a, b, c, d, 3 - a - b - c - d]);
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub enum ConditionMatrix {
    Exact(Vec<Vec<Eisenstein>>),
    Float(DMatrix<Complex64>),
}

impl ConditionMatrix {
    pub fn rows(&self) -> usize {
        match self {
            ConditionMatrix::Exact(m) => m.len(),
            ConditionMatrix::Float(m) => m.nrows(),
        }
    }
}

pub fn cubic_condition_matrix(cfg: &NodalConfiguration) -> ConditionMatrix {
    cubic_condition_matrix_with(cfg, Execution::default())
}

pub fn cubic_condition_matrix_with(cfg: &NodalConfiguration, exec: Execution) -> ConditionMatrix {
    let monos = cubic_monomials();
    match cfg.normalized() {
        Normalized::Exact(pts) => ConditionMatrix::Exact(exec.map(pts, |x| {
            monos
                .iter()
                .map(|e| {
                    let mut m = Eisenstein::one();
                    for (xi, &k) in x.iter().zip(e) {
                        for _ in 0..k {
                            m = &m * xi;
                        }
                    }
                    m
                })
                .collect()
        })),
        Normalized::Float(pts) => {
            let n = pts.len();
            let rows = exec.map(pts, |x| {
                monos
                    .iter()
                    .map(|e| x.iter().zip(e).fold(Complex64::new(1.0, 0.0), |acc, (xi, &k)| acc * xi.powu(k)))
                    .collect::<Vec<_>>()
            });
            ConditionMatrix::Float(DMatrix::from_row_iterator(n, monos.len(), rows.into_iter().flatten()))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodalDefect {
    pub nodes: usize,
    pub rank: usize,
    pub defect: usize,
}

pub fn nodal_defect(cfg: &NodalConfiguration) -> NodalDefect {
    nodal_defect_with(cfg, Execution::default())
}

pub fn nodal_defect_with(cfg: &NodalConfiguration, exec: Execution) -> NodalDefect {
    let rank = match cubic_condition_matrix_with(cfg, exec) {
        ConditionMatrix::Exact(m) => linalg::exact_rank(&m),
        ConditionMatrix::Float(m) => linalg::float_rank(&m, cfg.tolerance),
    };
    let nodes = cfg.nodes.len();
    NodalDefect { nodes, rank, defect: nodes - rank }
}

/// `max(0, N - 30)`: half of `b₃ = 60` of a smooth quartic bounds the
/// number of independent conditions lost.
pub fn defect_lower_bound(n: u64) -> u64 {
    n.saturating_sub(30)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BettiNumbers {
    pub b3: i64,
    pub b2_small_resolution: i64,
    pub b2_blowup: i64,
}

/// Betti numbers of `Y`, of a small resolution and of the blow-up of the
/// nodes, from `N`, `σ(Y)` and `b₂(Y)`.
pub fn betti_bookkeeping(n: i64, sigma: i64, b2: i64) -> Result<BettiNumbers, NodalError> {
    let b3 = 60 + sigma - n;
    if b3 < 0 {
        return Err(NodalError::NegativeBetti(b3));
    }
    let b2_small_resolution = b2 + sigma;
    Ok(BettiNumbers { b3, b2_small_resolution, b2_blowup: b2_small_resolution + n })
}

/// `σ(Y) = b₃(Ỹ) - b₃(Y) + Σ σ^an(P)`.
pub fn defect_from_resolution(b3_resolution: i64, b3: i64, local_sum: i64) -> i64 {
    b3_resolution - b3 + local_sum
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeCheck {
    pub on_hypersurface: bool,
    pub critical: bool,
    /// Hessian of rank 4, i.e. an ordinary double point.
    pub ordinary: bool,
}

impl NodeCheck {
    pub fn passed(&self) -> bool {
        self.on_hypersurface && self.critical && self.ordinary
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub nodes: Vec<NodeCheck>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.nodes.iter().all(NodeCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = usize> + '_ {
        self.nodes.iter().enumerate().filter(|(_, c)| !c.passed()).map(|(i, _)| i)
    }
}

/// Checks that each node is an ordinary double point of the quartic.
pub fn verify_nodes(cfg: &NodalConfiguration) -> Result<VerificationReport, NodalError> {
    let f = cfg.quartic.as_ref().ok_or(NodalError::MissingPolynomial)?;
    let grad = f.gradient();
    let hess = f.hessian();
    let nodes = match cfg.normalized() {
        Normalized::Exact(pts) => pts
            .iter()
            .map(|x| {
                let on_hypersurface = f.eval_exact(x).is_zero();
                let critical = grad.iter().all(|g| g.eval_exact(x).is_zero());
                let h: Vec<Vec<Eisenstein>> =
                    hess.iter().map(|row| row.iter().map(|p| p.eval_exact(x)).collect()).collect();
                let ordinary = critical && linalg::exact_rank(&h) == 4;
                NodeCheck { on_hypersurface, critical, ordinary }
            })
            .collect(),
        Normalized::Float(pts) => {
            let tol = cfg.tolerance;
            pts.iter()
                .map(|x| {
                    let scale = x.iter().map(|c| c.norm()).fold(1.0, f64::max);
                    let small = |p: &Polynomial, deg: i32| {
                        p.eval_complex(x).norm() <= tol * f.coefficient_mass().max(1.0) * scale.powi(deg) * 16.0
                    };
                    let on_hypersurface = small(f, 4);
                    let critical = grad.iter().all(|g| small(g, 3));
                    let h = DMatrix::from_fn(5, 5, |i, j| hess[i][j].eval_complex(x));
                    let ordinary = critical && linalg::float_rank(&h, tol) == 4;
                    NodeCheck { on_hypersurface, critical, ordinary }
                })
                .collect()
        }
    };
    Ok(VerificationReport { nodes })
}
