//! Symbolic recurrence catalogs for the degree-6, 7 and 8 algorithms.
//!
//! Each branching step of the solver is covered by one recurrence family;
//! measure decreases are stored as linear combinations of weights `w_i`,
//! weight steps `delta_i = w_i - w_{i-1}` and the shift, and instantiated
//! numerically against a concrete [`WeightVector`]. Case labels name the
//! algorithm step they bound:
//!
//! * `over-degree`: branching on a vertex above the level's degree cap,
//! * `short-edge cK`: branching on an optimal short edge whose endpoints
//!   share K neighbors (`u{i}` = common-neighbor degree, `x{j}` = degree
//!   of the exclusive endpoints),
//! * `vertex`: branching on an optimal maximum-degree vertex with
//!   the given neighbor-degree vector.
//!
//! The degree-6 catalog transfers a shift between the over-degree family
//! and the two short-edge worst cases that are guaranteed to create an
//! over-degree vertex in their second branch.

use super::{AnalysisError, Recurrence, WeightVector};

/// One symbolic term of a measure expression.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Term {
    /// `w_i` (with the linear extension above the level's cap).
    Weight(usize),
    /// `delta_i = w_i - w_{i-1}`.
    Delta(usize),
    /// The measure shift transferred between recurrences.
    Shift,
}

/// A measure decrease: a linear combination of terms, or a pointwise
/// minimum of two expressions.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureExpr {
    Linear(Vec<(f64, Term)>),
    Min(Box<MeasureExpr>, Box<MeasureExpr>),
}

impl MeasureExpr {
    pub fn linear() -> Self {
        MeasureExpr::Linear(Vec::new())
    }

    pub fn w(self, coef: f64, i: usize) -> Self {
        self.push(coef, Term::Weight(i))
    }

    pub fn dw(self, coef: f64, i: usize) -> Self {
        self.push(coef, Term::Delta(i))
    }

    pub fn shift(self, coef: f64) -> Self {
        self.push(coef, Term::Shift)
    }

    fn push(self, coef: f64, term: Term) -> Self {
        match self {
            MeasureExpr::Linear(mut terms) => {
                terms.push((coef, term));
                MeasureExpr::Linear(terms)
            }
            MeasureExpr::Min(..) => panic!("term builders only apply to linear expressions"),
        }
    }

    pub fn min(a: MeasureExpr, b: MeasureExpr) -> Self {
        MeasureExpr::Min(Box::new(a), Box::new(b))
    }

    /// Numeric value under `w` and `sigma`.
    pub fn eval(&self, w: &WeightVector, sigma: f64) -> f64 {
        match self {
            MeasureExpr::Linear(terms) => terms
                .iter()
                .map(|&(c, t)| {
                    c * match t {
                        Term::Weight(i) => w.weight(i),
                        Term::Delta(i) => w.delta(i),
                        Term::Shift => sigma,
                    }
                })
                .sum(),
            MeasureExpr::Min(a, b) => a.eval(w, sigma).min(b.eval(w, sigma)),
        }
    }
}

/// A catalog entry before numeric instantiation.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicRecurrence {
    pub label: String,
    pub decreases: Vec<MeasureExpr>,
}

impl SymbolicRecurrence {
    fn new(label: String, left: MeasureExpr, right: MeasureExpr) -> Self {
        SymbolicRecurrence {
            label,
            decreases: vec![left, right],
        }
    }

    pub fn instantiate(&self, w: &WeightVector, sigma: f64) -> Recurrence {
        Recurrence::new(
            self.label.clone(),
            self.decreases.iter().map(|e| e.eval(w, sigma)).collect(),
        )
    }
}

fn x() -> MeasureExpr {
    MeasureExpr::linear()
}

/// The second-branch decrease guaranteed outside the closed neighborhood
/// of an optimal degree-6 vertex, by neighbor-degree vector.
fn lambda6(k3: usize, k4: usize, k5: usize, k6: usize) -> MeasureExpr {
    let d = |c: f64| x().dw(c, 6);
    if k6 <= 3 && k3 + k4 >= 2 {
        return MeasureExpr::min(d((12 + k6) as f64), x().w(1.0, 3).dw(6.0, 6));
    }
    if (k6 <= 3 && k3 + k4 <= 1) || (k6 == 4 && k3 + k4 >= 1) {
        return d((6 + k5 + 2 * k6) as f64);
    }
    if k6 == 4 && k5 == 2 {
        return d(17.0);
    }
    if k6 == 5 {
        return d((16 + 2 * k4 + 3 * k5) as f64);
    }
    debug_assert_eq!(k6, 6);
    d(22.0)
}

/// The analogous decrease for an optimal degree-7 vertex.
fn lambda7(k3: usize, k4: usize, k7: usize) -> MeasureExpr {
    let d = |c: f64| x().dw(c, 7);
    match k7 {
        0..=5 => d((14 + k7) as f64),
        6 => d((22 - 2 * k3 - k4) as f64),
        _ => d(26.0),
    }
}

/// The analogous decrease for an optimal degree-8 vertex.
fn lambda8(k8: usize) -> MeasureExpr {
    if k8 <= 7 {
        x().dw((16 + 2 * k8) as f64, 8)
    } else {
        x().dw(36.0, 8)
    }
}

/// The guaranteed second-branch decrease for an optimal maximum-degree
/// vertex with neighbor-degree vector `k = (k_3, ..., k_theta)`, as a
/// symbolic combination of `w_3` and the weight steps.
pub fn lambda_theta(theta: usize, k: &[usize]) -> Result<MeasureExpr, AnalysisError> {
    if !(6..=8).contains(&theta) {
        return Err(AnalysisError::BadTheta);
    }
    let expected = theta - 2;
    if k.len() != expected || k.iter().sum::<usize>() != theta {
        return Err(AnalysisError::BadKVector { theta, expected });
    }
    Ok(match theta {
        6 => lambda6(k[0], k[1], k[2], k[3]),
        7 => lambda7(k[0], k[1], k[4]),
        _ => lambda8(k[5]),
    })
}

/// Enumerates nonnegative integer vectors of length `len` summing to
/// `total`, lexicographically.
pub(crate) fn compositions(total: usize, len: usize) -> Vec<Vec<usize>> {
    fn rec(total: usize, len: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if len == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            rec(total - first, len - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, len, &mut Vec::new(), &mut out);
    out
}

/// Builds the symbolic recurrence catalog for one degree level. The
/// result depends only on `theta`; weights enter at instantiation time.
pub fn symbolic_catalog(theta: usize) -> Vec<SymbolicRecurrence> {
    match theta {
        6 => catalog6(),
        7 => catalog7(),
        8 => catalog8(),
        _ => panic!("degree level must be 6, 7 or 8"),
    }
}

fn catalog6() -> Vec<SymbolicRecurrence> {
    let mut out = Vec::new();

    // Branching on a vertex of degree >= 7 whose seven neighbors all have
    // degree i; the shift is saved here and spent on the short-edge worst
    // cases below.
    for i in 3..=7 {
        out.push(SymbolicRecurrence::new(
            format!("over-degree k{i}=7"),
            x().w(1.0, 7).dw(7.0, i).shift(-1.0),
            x().w(1.0, 7).w(7.0, i).dw(12.0, 6).shift(-1.0),
        ));
    }

    // Short edge with both endpoints of degree 6 sharing 4 neighbors.
    for i in 4..=6 {
        out.push(SymbolicRecurrence::new(
            format!("short-edge c4 u{i}"),
            x().w(2.0, 6).w(4.0, i).w(-4.0, i - 2).dw(2.0, 6),
            x().w(2.0, 6).w(4.0, i).dw(4.0, 6),
        ));
    }
    out.push(SymbolicRecurrence::new(
        "short-edge c4 u3".into(),
        x().w(2.0, 6).w(8.0, 3).dw(2.0, 6),
        x().w(2.0, 6).w(4.0, 3).dw(4.0, 6),
    ));

    // Short edge between degree 6 and degree 5 sharing 3 neighbors; the
    // three degree-6 commons case (i = 6) guarantees 3 extra boundary
    // edges, and its j = 6 instance carries the shift.
    for i in 4..=6 {
        let p = if i == 6 { 3.0 } else { 0.0 };
        for j in 3..=6 {
            let sigma_coef = if i == 6 && j == 6 { 1.0 } else { 0.0 };
            out.push(SymbolicRecurrence::new(
                format!("short-edge c3 deg5 u{i} x{j}"),
                x().w(1.0, 6)
                    .w(1.0, 5)
                    .w(3.0, i)
                    .w(-3.0, i - 2)
                    .dw(2.0, 6)
                    .dw(1.0, j),
                x().w(1.0, 6)
                    .w(1.0, 5)
                    .w(3.0, i)
                    .dw(3.0 + p, 6)
                    .w(-1.0, j + 1)
                    .w(1.0, j)
                    .shift(sigma_coef),
            ));
        }
    }
    for j in 3..=6 {
        out.push(SymbolicRecurrence::new(
            format!("short-edge c3 deg5 u3 x{j}"),
            x().w(1.0, 6).w(1.0, 5).w(6.0, 3).dw(2.0, 6).dw(1.0, j),
            x().w(1.0, 6)
                .w(1.0, 5)
                .w(3.0, 3)
                .dw(3.0, 6)
                .w(-1.0, j + 1)
                .w(1.0, j),
        ));
    }

    // Short edge between two degree-6 endpoints sharing 3 neighbors; four
    // exclusive endpoints of degree j may each gain one edge.
    for i in 4..=6 {
        let p = if i >= 5 { 3.0 } else { 0.0 };
        for j in 3..=6 {
            let sigma_coef = if i == 6 && j == 6 { 1.0 } else { 0.0 };
            out.push(SymbolicRecurrence::new(
                format!("short-edge c3 deg6 u{i} x{j}"),
                x().w(2.0, 6).w(3.0, i).w(-3.0, i - 2).dw(4.0, j),
                x().w(2.0, 6)
                    .w(3.0, i)
                    .dw(3.0 + p, 6)
                    .w(-4.0, j + 1)
                    .w(4.0, j)
                    .shift(sigma_coef),
            ));
        }
    }
    for j in 3..=6 {
        out.push(SymbolicRecurrence::new(
            format!("short-edge c3 deg6 u3 x{j}"),
            x().w(2.0, 6).w(6.0, 3).dw(4.0, j),
            x().w(2.0, 6).w(3.0, 3).dw(3.0, 6).w(-4.0, j + 1).w(4.0, j),
        ));
    }

    // Branching on an optimal degree-6 vertex, over every neighbor-degree
    // vector.
    for k in compositions(6, 4) {
        let (k3, k4, k5, k6) = (k[0], k[1], k[2], k[3]);
        let mut left = x().w(1.0, 6);
        let mut right = x().w(1.0, 6);
        for (idx, &ki) in k.iter().enumerate() {
            let deg = 3 + idx;
            left = left.dw(ki as f64, deg);
            right = right.w(ki as f64, deg);
        }
        let lambda = lambda6(k3, k4, k5, k6);
        out.push(SymbolicRecurrence::new(
            format!("vertex k=({k3},{k4},{k5},{k6})"),
            left,
            sum_exprs(right, lambda),
        ));
    }
    out
}

fn catalog7() -> Vec<SymbolicRecurrence> {
    let mut out = Vec::new();

    for i in 3..=8 {
        out.push(SymbolicRecurrence::new(
            format!("over-degree k{i}=8"),
            x().w(1.0, 8).dw(8.0, i),
            x().w(1.0, 8).w(8.0, i).dw(14.0, 7),
        ));
    }

    // Short edge sharing 5 neighbors.
    for i in 4..=7 {
        out.push(SymbolicRecurrence::new(
            format!("short-edge c5 u{i}"),
            x().w(2.0, 7).w(5.0, i).w(-5.0, i - 2).dw(2.0, 7),
            x().w(2.0, 7).w(5.0, i).dw(4.0, 7),
        ));
    }
    out.push(SymbolicRecurrence::new(
        "short-edge c5 u3".into(),
        x().w(2.0, 7).w(10.0, 3).dw(2.0, 7),
        x().w(2.0, 7).w(5.0, 3).dw(4.0, 7),
    ));

    // Short edge sharing 4 neighbors; four exclusive endpoints.
    for i in 4..=7 {
        let p = if i == 7 { 4.0 } else { 0.0 };
        for j in 3..=7 {
            out.push(SymbolicRecurrence::new(
                format!("short-edge c4 u{i} x{j}"),
                x().w(2.0, 7).w(4.0, i).w(-4.0, i - 2).dw(4.0, j),
                x().w(2.0, 7)
                    .w(4.0, i)
                    .dw(4.0 + p, 7)
                    .w(-4.0, j + 1)
                    .w(4.0, j),
            ));
        }
    }
    for j in 3..=7 {
        out.push(SymbolicRecurrence::new(
            format!("short-edge c4 u3 x{j}"),
            x().w(2.0, 7).w(8.0, 3).dw(4.0, j),
            x().w(2.0, 7).w(4.0, 3).dw(4.0, 7).w(-4.0, j + 1).w(4.0, j),
        ));
    }

    // Branching on an optimal degree-7 vertex: the worst neighbor-degree
    // vectors, reduced to corners where the guaranteed decrease is
    // uniform (k7 <= 5) and spelled out for k7 in {6, 7}.
    for i in 3..=6 {
        out.push(SymbolicRecurrence::new(
            format!("vertex all-deg{i}"),
            x().w(1.0, 7).dw(7.0, i),
            x().w(1.0, 7).w(7.0, i).dw(14.0, 7),
        ));
    }
    out.push(SymbolicRecurrence::new(
        "vertex k7=6 +deg3".into(),
        x().w(1.0, 7).dw(6.0, 7).w(1.0, 3),
        x().w(7.0, 7).w(1.0, 3).dw(20.0, 7),
    ));
    out.push(SymbolicRecurrence::new(
        "vertex k7=6 +deg4".into(),
        x().w(1.0, 7).dw(6.0, 7).w(1.0, 4).w(-1.0, 3),
        x().w(7.0, 7).w(1.0, 4).dw(21.0, 7),
    ));
    for i in 5..=6 {
        out.push(SymbolicRecurrence::new(
            format!("vertex k7=6 +deg{i}"),
            x().w(1.0, 7).dw(6.0, 7).dw(1.0, i),
            x().w(7.0, 7).w(1.0, i).dw(22.0, 7),
        ));
    }
    out.push(SymbolicRecurrence::new(
        "vertex k7=7".into(),
        x().w(1.0, 7).dw(7.0, 7),
        x().w(8.0, 7).dw(26.0, 7),
    ));
    out
}

fn catalog8() -> Vec<SymbolicRecurrence> {
    let mut out = Vec::new();

    for i in 3..=9 {
        out.push(SymbolicRecurrence::new(
            format!("over-degree k{i}=9"),
            x().w(1.0, 9).dw(9.0, i),
            x().w(1.0, 9).w(9.0, i).dw(16.0, 8),
        ));
    }

    // Short edge sharing 6 neighbors.
    for i in 4..=8 {
        out.push(SymbolicRecurrence::new(
            format!("short-edge c6 u{i}"),
            x().w(2.0, 8).w(6.0, i).w(-6.0, i - 2).dw(2.0, 8),
            x().w(2.0, 8).w(6.0, i).dw(2.0, 8),
        ));
    }
    out.push(SymbolicRecurrence::new(
        "short-edge c6 u3".into(),
        x().w(2.0, 8).w(12.0, 3).dw(2.0, 8),
        x().w(2.0, 8).w(6.0, 3).dw(2.0, 8),
    ));

    // Short edge sharing 5 neighbors; four exclusive endpoints.
    for i in 4..=8 {
        let p = if i == 8 { 5.0 } else { 0.0 };
        for j in 3..=8 {
            out.push(SymbolicRecurrence::new(
                format!("short-edge c5 u{i} x{j}"),
                x().w(2.0, 8).w(5.0, i).w(-5.0, i - 2).dw(4.0, j),
                x().w(2.0, 8)
                    .w(5.0, i)
                    .dw(5.0 + p, 8)
                    .w(-4.0, j + 1)
                    .w(4.0, j),
            ));
        }
    }
    for j in 3..=8 {
        out.push(SymbolicRecurrence::new(
            format!("short-edge c5 u3 x{j}"),
            x().w(2.0, 8).w(10.0, 3).dw(4.0, j),
            x().w(2.0, 8).w(5.0, 3).dw(5.0, 8).w(-4.0, j + 1).w(4.0, j),
        ));
    }

    // Short edge sharing 4 neighbors; six exclusive endpoints, each of
    // which can end up two degrees higher, hence the two-step weight
    // window for j >= 4.
    let penalty = |expr: MeasureExpr, j: usize| -> MeasureExpr {
        if j >= 4 {
            expr.w(-6.0, j + 1).w(6.0, j - 1)
        } else {
            expr.w(-6.0, 4).w(6.0, 3)
        }
    };
    for i in 4..=8 {
        let p = match i {
            8 => 8.0,
            7 => 4.0,
            _ => 0.0,
        };
        for j in 3..=8 {
            out.push(SymbolicRecurrence::new(
                format!("short-edge c4 u{i} x{j}"),
                x().w(2.0, 8).w(4.0, i).w(-4.0, i - 2).dw(6.0, j),
                penalty(x().w(2.0, 8).w(4.0, i).dw(4.0 + p, 8), j),
            ));
        }
    }
    for j in 3..=8 {
        out.push(SymbolicRecurrence::new(
            format!("short-edge c4 u3 x{j}"),
            x().w(2.0, 8).w(8.0, 3).dw(6.0, j),
            penalty(x().w(2.0, 8).w(4.0, 3).dw(4.0, 8), j),
        ));
    }

    // Branching on an optimal degree-8 vertex, over every neighbor-degree
    // vector.
    for k in compositions(8, 6) {
        let mut left = x().w(1.0, 8);
        let mut right = x().w(1.0, 8);
        for (idx, &ki) in k.iter().enumerate() {
            let deg = 3 + idx;
            left = left.dw(ki as f64, deg);
            right = right.w(ki as f64, deg);
        }
        out.push(SymbolicRecurrence::new(
            format!(
                "vertex k=({},{},{},{},{},{})",
                k[0], k[1], k[2], k[3], k[4], k[5]
            ),
            left,
            sum_exprs(right, lambda8(k[5])),
        ));
    }
    out
}

/// Sum of two expressions; flattens when both are linear and distributes
/// over minima otherwise.
fn sum_exprs(a: MeasureExpr, b: MeasureExpr) -> MeasureExpr {
    match (a, b) {
        (MeasureExpr::Linear(mut ta), MeasureExpr::Linear(tb)) => {
            ta.extend(tb);
            MeasureExpr::Linear(ta)
        }
        (a, MeasureExpr::Min(p, q)) => MeasureExpr::Min(
            Box::new(sum_exprs(a.clone(), *p)),
            Box::new(sum_exprs(a, *q)),
        ),
        (MeasureExpr::Min(p, q), b) => MeasureExpr::Min(
            Box::new(sum_exprs(*p, b.clone())),
            Box::new(sum_exprs(*q, b)),
        ),
    }
}
