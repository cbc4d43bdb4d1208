use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::linalg::{hausdorff, Matrix, Vector};
use crate::normed::{ElementSpace, NormedSpace};
use crate::rng::{gaussian_vector, seeded};
use crate::tolerance::Tolerance;

fn v(xs: &[f64]) -> Vector {
    Vector::from_column_slice(xs)
}

fn abs_first() -> Arc<NormedSpace> {
    Arc::new(NormedSpace::custom(2, "abs_first", |x: &Vector| x[0].abs()).unwrap())
}

fn axis_in(ambient: NormedSpace) -> SubsetSpec {
    let ambient = Arc::new(ambient);
    SubsetSpec::subspace(ambient.clone(), Matrix::from_column_slice(2, 1, &[1.0, 0.0]), ambient).unwrap()
}

fn linf_axis() -> SubsetSpec {
    let ambient = Arc::new(NormedSpace::p_norm(2, f64::INFINITY).unwrap());
    SubsetSpec::subspace(ambient, Matrix::from_column_slice(2, 1, &[1.0, 0.0]), abs_first()).unwrap()
}

fn grid() -> ProjectOptions {
    ProjectOptions {
        solver: SolverChoice::Grid,
        ..ProjectOptions::default()
    }
}

#[test]
fn real_axis_closed_form() {
    let x = SubsetSpec::real_axis_in_c(None).unwrap();
    let sol = project(&x, &v(&[3.0, 4.0]), Tolerance::default()).unwrap();
    assert_eq!(sol.distance, 4.0);
    assert_eq!(sol.minimizers, Minimizers::Singleton(v(&[3.0, 0.0])));
    assert_eq!(sol.cardinality, Cardinality::Singleton);
    assert_eq!(sup_own_norm(&x, &sol).unwrap().value, 3.0);
}

#[test]
fn linf_segment_vertices() {
    let x = linf_axis();
    let sol = project(&x, &v(&[0.0, 1.0]), Tolerance::default()).unwrap();
    assert!((sol.distance - 1.0).abs() < 1e-12);
    assert_eq!(sol.solver, SolverTag::LpPolytope);
    assert_eq!(sol.cardinality, Cardinality::Infinite);
    let pts: Vec<Vector> = sol.minimizers.points().into_iter().cloned().collect();
    assert!(hausdorff(&pts, &[v(&[-1.0, 0.0]), v(&[1.0, 0.0])]) < 1e-9);
    let s = sup_own_norm(&x, &sol).unwrap();
    assert!((s.value - 1.0).abs() < 1e-9 && !s.lower_bound_only);
}

#[test]
fn point_of_subset_projects_to_itself() {
    let tol = Tolerance::default();
    for x in [axis_in(NormedSpace::euclidean(2)), linf_axis()] {
        let sol = project(&x, &v(&[2.5, 0.0]), tol).unwrap();
        assert!(sol.distance.abs() < 1e-12);
        assert_eq!(sol.cardinality, Cardinality::Singleton);
        assert!(hausdorff(&sol.minimizers.points().into_iter().cloned().collect::<Vec<_>>(), &[v(&[2.5, 0.0])]) < 1e-9);
    }
    let origin = project(&linf_axis(), &Vector::zeros(2), tol).unwrap();
    assert_eq!(sup_own_norm(&linf_axis(), &origin).unwrap().value, 0.0);
}

#[test]
fn polytope_projection() {
    let ambient = Arc::new(NormedSpace::p_norm(2, 1.0).unwrap());
    let square = vec![v(&[0.0, 0.0]), v(&[1.0, 0.0]), v(&[1.0, 1.0]), v(&[0.0, 1.0])];
    let x = SubsetSpec::polytope(ambient.clone(), square, ambient).unwrap();
    let sol = project(&x, &v(&[3.0, 0.5]), Tolerance::default()).unwrap();
    assert!((sol.distance - 2.0).abs() < 1e-9);
    let sol = project(&x, &v(&[0.5, 0.5]), Tolerance::default()).unwrap();
    assert!(sol.distance.abs() < 1e-12);
}

#[test]
fn classification_examples() {
    let tol = Tolerance::default();
    let mut rng = seeded(11);
    let probes: Vec<Vector> = (0..100).map(|_| gaussian_vector(&mut rng, 2) * 3.0).collect();
    let r = classify_proximinality(&SubsetSpec::real_axis_in_c(None).unwrap(), &probes, tol).unwrap();
    assert_eq!(r.class, ProximinalityClass::ChebyshevOnProbes);
    assert!(r.chebyshev_probes_bounded);
    let r = classify_proximinality(&axis_in(NormedSpace::euclidean(2)), &probes, tol).unwrap();
    assert_eq!(r.class.as_str(), "chebyshev_on_probes");

    let probes = vec![v(&[1.0, 0.0]), v(&[0.0, 1.0])];
    let r = classify_proximinality(&linf_axis(), &probes, tol).unwrap();
    assert_eq!(r.class, ProximinalityClass::ProximinalOnProbes);
    assert_eq!(r.per_probe[1], Cardinality::Infinite);

    assert!(matches!(classify_proximinality(&linf_axis(), &[], tol), Err(Error::EmptyDomain)));
}

#[test]
fn triangular_examples() {
    let tol = Tolerance::default();
    let r = check_triangular(&linf_axis(), &[(v(&[0.0, 1.0]), v(&[0.0, -1.0]))], tol).unwrap();
    assert!(r.holds);
    assert!((r.worst_slack + 2.0).abs() < 1e-9);

    let mut rng = seeded(3);
    let pairs: Vec<(Vector, Vector)> = (0..50)
        .map(|i| {
            let a = gaussian_vector(&mut rng, 2);
            let b = if i % 5 == 0 { Vector::zeros(2) } else { gaussian_vector(&mut rng, 2) };
            (a, b)
        })
        .collect();
    let r = check_triangular(&SubsetSpec::real_axis_in_c(None).unwrap(), &pairs, tol).unwrap();
    assert!(r.holds && r.checked == 50 && r.violation.is_none());
}

#[test]
fn nonconvex_own_norm_is_flagged() {
    let ambient = Arc::new(NormedSpace::p_norm(2, f64::INFINITY).unwrap());
    // (|a|^0.5 + |b|^0.5)^2 is homogeneous but not convex.
    let quasi = Arc::new(
        NormedSpace::custom(2, "quasi", |x: &Vector| (x[0].abs().sqrt() + x[1].abs().sqrt()).powi(2)).unwrap(),
    );
    let x = SubsetSpec::subspace(ambient, Matrix::identity(2, 2), quasi).unwrap();
    assert!(!x.own_norm_convex());
    let sol = ProjectionSolution {
        distance: 0.0,
        minimizers: Minimizers::Polytope(vec![v(&[1.0, 0.0]), v(&[0.0, 1.0])]),
        solver: SolverTag::LpPolytope,
        cardinality: Cardinality::Infinite,
        evaluations: 0,
    };
    assert!(matches!(sup_own_norm(&x, &sol), Err(Error::NonconvexOwnNorm)));
}

#[test]
fn subset_rejections() {
    let e = Arc::new(NormedSpace::euclidean(2));
    let dep = Matrix::from_column_slice(2, 2, &[1.0, 1.0, 2.0, 2.0]);
    assert!(matches!(SubsetSpec::subspace(e.clone(), dep, e.clone()), Err(Error::BadSubset(_))));
    let dup = vec![v(&[1.0, 0.0]), v(&[1.0, 0.0])];
    assert!(matches!(SubsetSpec::polytope(e.clone(), dup, e.clone()), Err(Error::BadSubset(_))));
    assert!(matches!(SubsetSpec::polytope(e.clone(), vec![], e), Err(Error::BadSubset(_))));
}

#[test]
fn grid_budget_exhaustion_reports_incumbent() {
    let x = axis_in(NormedSpace::p_norm(2, 3.0).unwrap());
    let opts = ProjectOptions { budget: 5, ..grid() };
    match project_with(&x, &v(&[1.0, 1.0]), Tolerance::default(), &opts) {
        Err(Error::NoConvergence { evaluations, point, .. }) => {
            assert_eq!(evaluations, 5);
            assert_eq!(point.len(), 2);
        }
        other => panic!("expected no_convergence, got {other:?}"),
    }
}

#[test]
fn bochner_norms() {
    let r = Arc::new(NormedSpace::p_norm(1, 1.0).unwrap());
    let b2 = make_discrete_bochner(&[1.0, 1.0], r.clone(), 2.0).unwrap();
    assert!((b2.norm_unchecked(&v(&[3.0, 4.0])) - 5.0).abs() < 1e-12);
    let binf = make_discrete_bochner(&[1.0, 1.0], r.clone(), f64::INFINITY).unwrap();
    assert_eq!(binf.norm_unchecked(&v(&[3.0, 4.0])), 4.0);
    let e = Arc::new(NormedSpace::euclidean(2));
    for p in [1.0, 2.0, 3.0, f64::INFINITY] {
        let single = make_discrete_bochner(&[1.0], e.clone(), p).unwrap();
        assert!((single.norm_unchecked(&v(&[3.0, 4.0])) - 5.0).abs() < 1e-12);
    }
    assert!(matches!(make_discrete_bochner(&[1.0, 0.0], r.clone(), 2.0), Err(Error::BadMeasure(_))));
    assert!(matches!(make_discrete_bochner(&[], r.clone(), 2.0), Err(Error::BadMeasure(_))));
    assert!(make_discrete_bochner(&[1.0], r, 0.5).is_err());
}

#[test]
fn prox_transfer_examples() {
    let x = axis_in(NormedSpace::euclidean(2));
    let tables = vec![v(&[1.0, 2.0, -3.0, 0.5]), v(&[0.0, 0.0, 0.0, 0.0]), v(&[0.3, -1.0, 2.0, 2.0])];
    for p in [2.0, f64::INFINITY] {
        let r = check_prox_transfer(&x, &[1.0, 2.0], p, &tables, 1e-6, Tolerance::default()).unwrap();
        assert!(r.holds, "p = {p}: {r:?}");
        assert!(r.worst_gap < 1e-6, "p = {p}: {}", r.worst_gap);
        assert_eq!(r.probes[1].atomwise_distance, 0.0);
        assert!(!r.assumptions.is_empty());
    }
}

#[test]
fn homogeneity_on_exact_solvers() {
    let tol = Tolerance::default();
    let mut rng = seeded(5);
    for x in [linf_axis(), axis_in(NormedSpace::euclidean(2)), SubsetSpec::real_axis_in_c(None).unwrap()] {
        for _ in 0..20 {
            let y = gaussian_vector(&mut rng, 2);
            let r = projection_homogeneity(&x, &y, &[-2.0, -1.0, 0.5, 3.0], tol).unwrap();
            assert!(r.holds && r.set_gap <= 1e-9, "{r:?}");
        }
    }
    let e = Arc::new(NormedSpace::euclidean(2));
    let seg = SubsetSpec::polytope(e.clone(), vec![v(&[0.0, 0.0]), v(&[1.0, 0.0])], e).unwrap();
    assert!(matches!(projection_homogeneity(&seg, &v(&[1.0, 1.0]), &[2.0], tol), Err(Error::BadSubset(_))));
}

#[test]
fn exact_and_grid_agree() {
    let tol = Tolerance::default();
    let x = SubsetSpec::subspace(
        Arc::new(NormedSpace::euclidean(3)),
        Matrix::from_column_slice(3, 2, &[1.0, 0.0, 1.0, 0.0, 1.0, -1.0]),
        Arc::new(NormedSpace::euclidean(3)),
    )
    .unwrap();
    let c = SubsetSpec::real_axis_in_c(None).unwrap();
    let mut rng = seeded(9);
    for _ in 0..100 {
        let y = gaussian_vector(&mut rng, 3) * 2.0;
        let a = project(&x, &y, tol).unwrap().distance;
        let g = project_with(&x, &y, tol, &grid()).unwrap().distance;
        assert!((a - g).abs() < 1e-6, "{a} vs {g}");
        let z = gaussian_vector(&mut rng, 2) * 2.0;
        let a = project(&c, &z, tol).unwrap().distance;
        let g = project_with(&c, &z, tol, &grid()).unwrap().distance;
        assert!((a - g).abs() < 1e-9, "{a} vs {g}");
    }
}

#[test]
fn monotone_grid_for_euclidean_polytope() {
    let e = Arc::new(NormedSpace::euclidean(2));
    let tri = vec![v(&[0.0, 0.0]), v(&[2.0, 0.0]), v(&[0.0, 2.0])];
    let x = SubsetSpec::polytope(e.clone(), tri, e).unwrap();
    let sol = project(&x, &v(&[2.0, 2.0]), Tolerance::default()).unwrap();
    assert_eq!(sol.solver, SolverTag::GridRefine);
    assert!((sol.distance - 2f64.sqrt()).abs() < 1e-6);
}

fn ambient_for(kind: u8) -> NormedSpace {
    match kind {
        0 => NormedSpace::euclidean(3),
        1 => NormedSpace::p_norm(3, 1.0).unwrap(),
        _ => NormedSpace::p_norm(3, f64::INFINITY).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // Every reported minimizer beats every sampled competitor, and competitors
    // that tie lie near the reported set.
    #[test]
    fn nearest_points_beat_competitors(
        kind in 0u8..3,
        y in prop::collection::vec(-3.0f64..3.0, 3),
        ws in prop::collection::vec(prop::collection::vec(-4.0f64..4.0, 2), 30),
    ) {
        let tol = Tolerance::default();
        let ambient = Arc::new(ambient_for(kind));
        let basis = Matrix::from_column_slice(3, 2, &[1.0, 0.0, 0.0, 0.0, 1.0, 1.0]);
        let x = SubsetSpec::subspace(ambient.clone(), basis.clone(), ambient.clone()).unwrap();
        let y = Vector::from_vec(y);
        let sol = project(&x, &y, tol).unwrap();
        let slack = 1e-9 * y.amax().max(1.0);
        for m in sol.minimizers.points() {
            prop_assert!(ambient.norm_unchecked(&(&y - m)) <= sol.distance + slack);
        }
        let pts: Vec<Vector> = sol.minimizers.points().into_iter().cloned().collect();
        for w in ws {
            let z = &basis * Vector::from_vec(w);
            let dz = ambient.norm_unchecked(&(&y - &z));
            prop_assert!(sol.distance <= dz + slack);
            if dz <= sol.distance + slack && sol.cardinality != Cardinality::Infinite {
                prop_assert!(hausdorff(&pts, &[z]) < 1e-6);
            }
        }
    }

    #[test]
    fn lp_agrees_with_grid(
        kind in 1u8..3,
        y in prop::collection::vec(-3.0f64..3.0, 3),
    ) {
        let tol = Tolerance::default();
        let ambient = Arc::new(ambient_for(kind));
        let basis = Matrix::from_column_slice(3, 1, &[1.0, 2.0, -1.0]);
        let x = SubsetSpec::subspace(ambient.clone(), basis, ambient).unwrap();
        let y = Vector::from_vec(y);
        let a = project(&x, &y, tol).unwrap().distance;
        let g = project_with(&x, &y, tol, &grid()).unwrap().distance;
        prop_assert!(a <= g + 1e-9 && g - a < 1e-6, "{} vs {}", a, g);
    }
}
