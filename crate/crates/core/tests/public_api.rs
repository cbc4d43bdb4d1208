use std::sync::Arc;

use normkeep::delta::{delta_norm, make_lip0_spec, DeltaNormedSpace, FiniteMetricSpace};
use normkeep::membership::{check_lh, check_lhw, DeltaPair, SpacePair, Verdict};
use normkeep::normed::{ElementSpace, NormedSpace};
use normkeep::projection::{project, Cardinality, SubsetSpec};
use normkeep::renorm::{build_induced_seminorm, quotient_representative};
use normkeep::sequence::{Tail, WitnessSequence};
use normkeep::{Matrix, Tolerance, Vector};
use proptest::prelude::*;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn lip_on_line(points: &[f64], pairs: Option<Vec<(usize, usize)>>) -> DeltaNormedSpace {
    let metric = Arc::new(FiniteMetricSpace::from_points_on_line(points, Some(0)).unwrap());
    let mut spec = make_lip0_spec(metric, Arc::new(NormedSpace::euclidean(1))).unwrap();
    if let Some(p) = pairs {
        spec = spec.with_pairs(p, "restricted").unwrap();
    }
    DeltaNormedSpace::new(spec, true).unwrap()
}

proptest! {
    #[test]
    fn lipschitz_norm_matches_pairwise_quotients(
        gaps in prop::collection::vec(0.1f64..3.0, 2..6),
        values in prop::collection::vec(-5.0f64..5.0, 6),
    ) {
        let mut points = vec![0.0];
        for g in &gaps {
            points.push(points.last().unwrap() + g);
        }
        let n = points.len();
        let mut f: Vec<f64> = values[..n].to_vec();
        f[0] = 0.0;
        let mut brute: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    brute = brute.max((f[i] - f[j]).abs() / (points[i] - points[j]).abs());
                }
            }
        }
        let v = delta_norm(&lip_on_line(&points, None), &Vector::from_vec(f)).unwrap();
        prop_assert!((v.value - brute).abs() <= 1e-12 * brute.max(1.0));
    }

    #[test]
    fn l1_projection_onto_line_matches_breakpoint_scan(a in -3.0f64..3.0, b in -3.0f64..3.0, y0 in -5.0f64..5.0, y1 in -5.0f64..5.0) {
        prop_assume!(a.abs() + b.abs() > 0.1);
        let l1 = Arc::new(NormedSpace::p_norm(2, 1.0).unwrap());
        let x = SubsetSpec::subspace(l1.clone(), Matrix::from_column_slice(2, 1, &[a, b]), l1).unwrap();
        let y = Vector::from_vec(vec![y0, y1]);
        let sol = project(&x, &y, tol()).unwrap();
        // Distance along the line is convex and piecewise linear in t; a scan
        // through its breakpoints is exact.
        let mut best = f64::INFINITY;
        for t in [0.0, if a != 0.0 { y0 / a } else { 0.0 }, if b != 0.0 { y1 / b } else { 0.0 }] {
            best = best.min((y0 - t * a).abs() + (y1 - t * b).abs());
        }
        prop_assert!((sol.distance - best).abs() <= 1e-9 * best.max(1.0));
    }
}

#[test]
fn restricting_the_pair_domain_can_lose_the_norm() {
    let points = [0.0, 1.0, 2.0];
    let all = Arc::new(lip_on_line(&points, None));
    let restricted = Arc::new(lip_on_line(&points, Some(vec![(0, 2), (2, 0)])));
    let pair = DeltaPair::new(restricted, all).unwrap();
    let f = Vector::from_vec(vec![0.0, 2.0, 3.0]);
    let cert = check_lh(pair.as_space_pair(), &f, tol()).unwrap();
    assert_eq!(cert.verdict, Verdict::NotInLh);
    assert_eq!(cert.norm_x, 1.5);
    assert_eq!(cert.norm_y, 2.0);
}

#[test]
fn shrinking_witness_gives_lhw_only() {
    let y = Arc::new(NormedSpace::euclidean(2));
    let base = y.clone();
    let x = Arc::new(NormedSpace::custom(2, "half", move |v: &Vector| 0.5 * base.norm_unchecked(v)).unwrap());
    let pair = SpacePair::new(x, y, None).unwrap();
    let f = Vector::from_vec(vec![3.0, 4.0]);
    let terms: Vec<Vector> = (1..=10).map(|n| &f * (0.5 + 1.0 / (n * n) as f64)).collect();
    let w = WitnessSequence::new(terms, Tail::DeclaredLimit(&f * 0.5)).unwrap();
    assert_eq!(check_lhw(&pair, &f, Some(&w), tol()).unwrap().verdict, Verdict::InLhwOnly);
    assert_eq!(check_lhw(&pair, &f, None, tol()).unwrap().verdict, Verdict::NotInLh);
}

#[test]
fn real_axis_renorm_quotient() {
    let x = SubsetSpec::real_axis_in_c(None).unwrap();
    let sol = project(&x, &Vector::from_vec(vec![3.0, 4.0]), tol()).unwrap();
    assert_eq!(sol.cardinality, Cardinality::Singleton);
    assert_eq!(sol.distance, 4.0);
    let sn = build_induced_seminorm(&x, tol()).unwrap();
    let y = Vector::from_vec(vec![-2.5, 7.0]);
    assert!((sn.eval(&y).unwrap() - 2.5).abs() <= 1e-12);
    let q = quotient_representative(&sn, &y).unwrap();
    assert!((sn.eval(&q).unwrap() - 2.5).abs() <= 1e-12);
}
