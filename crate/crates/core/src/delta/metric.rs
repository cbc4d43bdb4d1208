use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::tolerance::Tolerance;

/// A finite metric space on labelled points, optionally with a base point.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Matrix,
    base_point: Option<usize>,
}

impl FiniteMetricSpace {
    /// Validates zero diagonal, symmetry, positivity off the diagonal and
    /// the triangle inequality up to `tol`.
    pub fn new(
        labels: Vec<String>,
        dist: Vec<Vec<f64>>,
        base_point: Option<usize>,
        tol: Tolerance,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::BadMetric("no points".into()));
        }
        if dist.len() != n || dist.iter().any(|r| r.len() != n) {
            return Err(Error::BadMetric(format!("distance matrix must be {n}x{n}")));
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(Error::BadMetric(format!("duplicate point {label:?}")));
            }
        }
        if let Some(b) = base_point {
            if b >= n {
                return Err(Error::BadMetric(format!("base point index {b} out of range")));
            }
        }
        for i in 0..n {
            if dist[i][i] != 0.0 {
                return Err(Error::BadMetric(format!("d({i},{i}) = {} is not 0", dist[i][i])));
            }
            for j in 0..n {
                let d = dist[i][j];
                if !d.is_finite() {
                    return Err(Error::BadMetric(format!("d({i},{j}) is not finite")));
                }
                if i != j && d <= 0.0 {
                    return Err(Error::BadMetric(format!("d({i},{j}) = {d} is not positive")));
                }
                if d != dist[j][i] {
                    return Err(Error::BadMetric(format!("d({i},{j}) != d({j},{i})")));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let through = dist[i][k] + dist[k][j];
                    if !tol.le(dist[i][j], through) {
                        return Err(Error::BadMetric(format!(
                            "triangle inequality fails: d({i},{j}) > d({i},{k}) + d({k},{j})"
                        )));
                    }
                }
            }
        }
        let flat: Vec<f64> = dist.into_iter().flatten().collect();
        Ok(FiniteMetricSpace {
            labels,
            dist: Matrix::from_row_slice(n, n, &flat),
            base_point,
        })
    }

    /// Points of the real line with `d(x, y) = |x − y|`, labelled by index.
    pub fn from_points_on_line(points: &[f64], base_point: Option<usize>) -> Result<Self> {
        let labels = (0..points.len()).map(|i| i.to_string()).collect();
        let dist = points
            .iter()
            .map(|x| points.iter().map(|y| (x - y).abs()).collect())
            .collect();
        FiniteMetricSpace::new(labels, dist, base_point, Tolerance::default())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[(i, j)]
    }

    pub fn base_point(&self) -> Option<usize> {
        self.base_point
    }

    /// All ordered pairs of distinct points, lexicographically.
    pub fn off_diagonal_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect()
    }
}

/// Replaces each entry by the shortest-path distance, which turns any
/// symmetric positive weight matrix into a metric.
pub fn metric_closure(mut dist: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let n = dist.len();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let through = dist[i][k] + dist[k][j];
                if through < dist[i][j] {
                    dist[i][j] = through;
                }
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("p{i}")).collect()
    }

    #[test]
    fn line_metric() {
        let m = FiniteMetricSpace::from_points_on_line(&[0.0, 1.0, 2.0], Some(0)).unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(m.dist(0, 2), 2.0);
        assert_eq!(m.off_diagonal_pairs().len(), 6);
        assert_eq!(m.index_of("1"), Some(1));
    }

    #[test]
    fn rejects_invalid_matrices() {
        let t = Tolerance::default();
        let asym = vec![vec![0.0, 1.0], vec![2.0, 0.0]];
        assert_eq!(FiniteMetricSpace::new(labels(2), asym, None, t).unwrap_err().code(), "bad_metric");
        let zero = vec![vec![0.0, 0.0], vec![0.0, 0.0]];
        assert!(FiniteMetricSpace::new(labels(2), zero, None, t).is_err());
        let tri = vec![
            vec![0.0, 1.0, 5.0],
            vec![1.0, 0.0, 1.0],
            vec![5.0, 1.0, 0.0],
        ];
        assert!(FiniteMetricSpace::new(labels(3), tri.clone(), None, t).is_err());
        let fixed = metric_closure(tri);
        assert_eq!(fixed[0][2], 2.0);
        assert!(FiniteMetricSpace::new(labels(3), fixed, None, t).is_ok());
        assert!(FiniteMetricSpace::new(labels(1), vec![vec![0.0]], Some(1), t).is_err());
        let dup = vec!["a".to_string(), "a".to_string()];
        assert!(FiniteMetricSpace::new(dup, vec![vec![0.0, 1.0], vec![1.0, 0.0]], None, t).is_err());
    }
}
