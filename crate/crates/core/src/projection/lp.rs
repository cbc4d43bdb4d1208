//! Distance to a subspace or polytope under a polyhedral norm as a linear
//! program, and the optimal face by vertex enumeration.

use itertools::Itertools;
use microlp::{ComparisonOp, OptimizationDirection, Problem};

use crate::error::{Error, Result};
use crate::linalg::{dedup_points, max_abs, solve_square, Matrix, Vector};

/// `a·w + c·t <= rhs`.
#[derive(Debug, Clone)]
struct Row {
    a: Vector,
    c: f64,
    rhs: f64,
}

/// Largest number of square systems tried during one enumeration.
pub const ENUMERATION_CAP: usize = 200_000;

pub(crate) struct LpFace {
    pub distance: f64,
    /// Vertices of the optimal face in ambient coordinates, or `None` when
    /// the enumeration cap was hit.
    pub vertices: Option<Vec<Vector>>,
    /// One optimal point.
    pub point: Vector,
}

/// Minimizes `max_i |r_i·(y − M w)|` over `w` (free) or over the simplex.
pub(crate) fn solve(rows: &Matrix, m: &Matrix, y: &Vector, simplex: bool) -> Result<LpFace> {
    let q = m.ncols();
    let am = rows * m;
    let b = rows * y;
    let scale = 1f64.max(max_abs(y)).max(max_abs(&b)).max(max_abs(&am));

    let mut constraints = Vec::with_capacity(2 * rows.nrows() + q);
    for i in 0..rows.nrows() {
        let a: Vector = am.row(i).transpose();
        constraints.push(Row { a: -&a, c: -1.0, rhs: -b[i] });
        constraints.push(Row { a, c: -1.0, rhs: b[i] });
    }
    if simplex {
        for j in 0..q {
            let mut a = Vector::zeros(q);
            a[j] = -1.0;
            constraints.push(Row { a, c: 0.0, rhs: 0.0 });
        }
    }
    let equality = simplex.then(|| (Vector::from_element(q, 1.0), 1.0));

    let (w0, t0) = run_lp(&constraints, equality.as_ref(), q, simplex)?;
    let exact_value = |w: &Vector| {
        let r = &b - &am * w;
        r.iter().fold(0.0f64, |a, x| a.max(x.abs()))
    };

    // Polish: among the constraints active at the solver's point, find the
    // vertex of the epigraph with the smallest true objective.
    let active_eps = 1e-7 * scale;
    let feas_eps = 1e-9 * scale;
    let active: Vec<&Row> = constraints
        .iter()
        .filter(|r| r.rhs - (r.a.dot(&w0) + r.c * t0) <= active_eps)
        .collect();
    let mut best_w = w0.clone();
    let mut best = exact_value(&w0);
    let eq_count = usize::from(simplex);
    let pick = q + 1 - eq_count;
    for combo in active.iter().combinations(pick).take(ENUMERATION_CAP) {
        let n = q + 1;
        let mut a = Matrix::zeros(n, n);
        let mut rhs = Vector::zeros(n);
        for (k, r) in combo.iter().enumerate() {
            a.view_mut((k, 0), (1, q)).copy_from(&r.a.transpose());
            a[(k, q)] = r.c;
            rhs[k] = r.rhs;
        }
        if let Some((e, v)) = &equality {
            a.view_mut((n - 1, 0), (1, q)).copy_from(&e.transpose());
            rhs[n - 1] = *v;
        }
        let Some(z) = solve_square(&a, &rhs) else { continue };
        let w = z.rows(0, q).into_owned();
        if simplex && w.iter().any(|&x| x < -feas_eps) {
            continue;
        }
        let value = exact_value(&w);
        if value < best {
            best = value;
            best_w = w;
        }
    }
    let t = best;

    // Optimal face: {w : |b_i − a_i·w| <= t} (∩ simplex).
    let face_rows: Vec<Row> = constraints
        .iter()
        .map(|r| Row {
            a: r.a.clone(),
            c: 0.0,
            rhs: r.rhs - r.c * t,
        })
        .collect();
    let vertices = enumerate_vertices(&face_rows, equality.as_ref(), q, feas_eps).map(|ws| {
        let pts: Vec<Vector> = ws.iter().map(|w| m * w).collect();
        let radius = 1e-8 * 1f64.max(max_abs(y)).max(max_abs(m));
        dedup_points(pts, radius)
    });
    let vertices = match vertices {
        Some(v) if v.is_empty() => None,
        other => other,
    };
    Ok(LpFace {
        distance: t,
        vertices,
        point: m * best_w,
    })
}

fn run_lp(constraints: &[Row], equality: Option<&(Vector, f64)>, q: usize, simplex: bool) -> Result<(Vector, f64)> {
    let mut problem = Problem::new(OptimizationDirection::Minimize);
    let bounds = if simplex {
        (0.0, f64::INFINITY)
    } else {
        (f64::NEG_INFINITY, f64::INFINITY)
    };
    let w: Vec<_> = (0..q).map(|_| problem.add_var(0.0, bounds)).collect();
    let t = problem.add_var(1.0, (0.0, f64::INFINITY));
    for r in constraints {
        if r.c == 0.0 && simplex {
            continue;
        }
        let mut terms: Vec<_> = w.iter().zip(r.a.iter()).filter(|(_, a)| **a != 0.0).map(|(v, a)| (*v, *a)).collect();
        terms.push((t, r.c));
        problem.add_constraint(terms.as_slice(), ComparisonOp::Le, r.rhs);
    }
    if let Some((e, v)) = equality {
        let terms: Vec<_> = w.iter().zip(e.iter()).map(|(v, a)| (*v, *a)).collect();
        problem.add_constraint(terms.as_slice(), ComparisonOp::Eq, *v);
    }
    let solution = problem
        .solve()
        .map_err(|e| Error::Solver(e.to_string()))?
        .into_solution()
        .map_err(|_| Error::Solver("linear program interrupted".into()))?;
    let wv = Vector::from_iterator(q, w.iter().map(|v| solution.var_value(*v)));
    Ok((wv, solution.var_value(t)))
}

/// Vertices of `{w : a_i·w <= rhs_i} ∩ {e·w = v}` by trying every square
/// subsystem; `None` when more than [`ENUMERATION_CAP`] systems would be
/// needed.
fn enumerate_vertices(rows: &[Row], equality: Option<&(Vector, f64)>, q: usize, eps: f64) -> Option<Vec<Vector>> {
    let eq_count = usize::from(equality.is_some());
    let pick = q - eq_count;
    if binomial(rows.len(), pick) > ENUMERATION_CAP {
        return None;
    }
    let mut out = Vec::new();
    for combo in (0..rows.len()).combinations(pick) {
        let mut a = Matrix::zeros(q, q);
        let mut rhs = Vector::zeros(q);
        for (k, &i) in combo.iter().enumerate() {
            a.view_mut((k, 0), (1, q)).copy_from(&rows[i].a.transpose());
            rhs[k] = rows[i].rhs;
        }
        if let Some((e, v)) = equality {
            a.view_mut((q - 1, 0), (1, q)).copy_from(&e.transpose());
            rhs[q - 1] = *v;
        }
        let Some(w) = solve_square(&a, &rhs) else { continue };
        if rows.iter().all(|r| r.a.dot(&w) <= r.rhs + eps) {
            out.push(w);
        }
    }
    Some(out)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(16, 4), 1820);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn sup_norm_segment() {
        let rows = Matrix::identity(2, 2);
        let m = Matrix::from_column_slice(2, 1, &[1.0, 0.0]);
        let face = solve(&rows, &m, &vector(&[0.0, 1.0]), false).unwrap();
        assert!((face.distance - 1.0).abs() < 1e-12);
        let mut v = face.vertices.unwrap();
        v.sort_by(|a, b| a[0].partial_cmp(&b[0]).unwrap());
        assert_eq!(v.len(), 2);
        assert!((v[0][0] + 1.0).abs() < 1e-9 && (v[1][0] - 1.0).abs() < 1e-9);
    }
}
