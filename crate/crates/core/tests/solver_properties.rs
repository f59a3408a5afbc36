mod common;

use rand::Rng;

use rkhs_kse::basis::Scheme;
use rkhs_kse::fracalc::FractionalOrder;
use rkhs_kse::metrics::ErrorReport;
use rkhs_kse::operator::{KseParams, KseProblem, ReferenceSolution, SeparableSolution, SpaceTimeDomain};
use rkhs_kse::solver::{error_sequence, interior_grid, solve, ApproximateSolution};
use rkhs_kse::Error;

fn boundary_samples(p: &KseProblem) -> Vec<(f64, f64)> {
    let dom = p.domain;
    let mut out = Vec::new();
    for k in 0..=16 {
        let s = k as f64 / 16.0;
        out.push((dom.a, dom.t_end * s));
        out.push((dom.b, dom.t_end * s));
        out.push((dom.a + dom.width() * s, 0.0));
    }
    out
}

fn max_trace(sol: &ApproximateSolution) -> f64 {
    boundary_samples(sol.problem())
        .into_iter()
        .map(|(z, t)| sol.homogeneous(z, t).unwrap()[0].abs())
        .fold(0.0, f64::max)
}

#[test]
fn homogeneous_part_vanishes_on_the_data_manifolds() {
    let shifted = KseProblem::new(
        FractionalOrder::new(0.75).unwrap(),
        KseParams::benchmark(),
        SpaceTimeDomain::new(-1.0, 2.0, 3.0).unwrap(),
    )
    .unwrap();
    let cases = [
        (KseProblem::benchmark(0.5).unwrap(), Scheme::Maximin),
        (KseProblem::benchmark(0.95).unwrap(), Scheme::Halton),
        (shifted, Scheme::DiagonalGrid),
        (common::manufactured(0.5), Scheme::Maximin),
    ];
    for (p, scheme) in cases {
        let sol = solve(&p, 12, scheme, 200).unwrap();
        assert_eq!(sol.coefficients().len(), 12);
        let worst = max_trace(&sol);
        assert!(worst <= 1e-9, "{scheme}: {worst}");
        let dom = p.domain;
        assert!(sol.homogeneous(dom.a, 0.5 * dom.t_end).unwrap()[1].abs() <= 1e-9);
    }
}

#[test]
fn collocation_equations_hold_after_the_last_sweep() {
    for alpha in [0.5, 0.95] {
        let sol = solve(&KseProblem::benchmark(alpha).unwrap(), 24, Scheme::default(), 200).unwrap();
        assert!(sol.converged());
        let worst = sol.collocation_residuals().iter().fold(0.0f64, |m, r| m.max(r.abs()));
        assert!(worst <= 1e-6, "α {alpha}: {worst}");
    }
}

#[test]
fn sweep_changes_shrink_after_the_second_sweep() {
    let mut problems: Vec<KseProblem> = [0.5, 0.75, 0.85, 0.95].iter().map(|&a| KseProblem::benchmark(a).unwrap()).collect();
    problems.push(common::manufactured(0.5));
    for p in &problems {
        for n in [6, 12, 24] {
            let sol = solve(p, n, Scheme::default(), 200).unwrap();
            let h = sol.history();
            for k in 2..h.len() {
                assert!(h[k].change <= h[k - 1].change, "α {} n {n} sweep {}", p.alpha.value(), k + 1);
            }
        }
    }
}

#[test]
fn large_data_trips_the_divergence_guard() {
    let truth = SeparableSolution {
        base: vec![0.0],
        profile: vec![0.0, 0.0, 0.0, 20.0],
        exponent: 2.0,
        alpha: FractionalOrder::new(0.5).unwrap(),
    };
    let params = KseParams { beta: -1.0, gamma: 0.0, mu: 0.0, nu: 0.75 };
    let p = KseProblem::manufactured(params, SpaceTimeDomain::unit(), ReferenceSolution::Separable(truth));
    match solve(&p, 12, Scheme::default(), 200) {
        Err(e @ Error::Divergence { .. }) => assert_eq!(e.category().exit_code(), 5),
        other => panic!("expected divergence, got {other:?}"),
    }
}

#[test]
fn single_pass_is_the_first_sweep() {
    let p = KseProblem::benchmark(0.5).unwrap();
    let once = solve(&p, 12, Scheme::default(), 1).unwrap();
    let many = solve(&p, 12, Scheme::default(), 200).unwrap();
    assert_eq!(once.sweeps_run(), 1);
    assert_eq!(once.history()[0], many.history()[0]);
    let grid = interior_grid(&p, 9, 9);
    let e1 = ErrorReport::evaluate(&once, &grid).unwrap().linf;
    let e2 = ErrorReport::evaluate(&many, &grid).unwrap().linf;
    assert!(e1 < 1e-3 && e2 < 1e-5, "{e1} {e2}");
}

#[test]
fn manufactured_problem_converges() {
    let p = common::manufactured(0.5);
    let grid = interior_grid(&p, 9, 9);
    let seq = error_sequence(&p, &[4, 16], Scheme::default(), 200, &grid).unwrap();
    assert!(seq[1].1 <= 0.2 * seq[0].1, "{seq:?}");
    assert!(seq[1].1 <= 1e-4, "{seq:?}");
    for &(z, t) in &grid {
        assert!((p.exact(z, t) - common::manufactured_truth(z, t)).abs() <= 1e-15);
    }
}

#[test]
fn error_sequence_agrees_with_the_metrics() {
    let p = KseProblem::benchmark(0.5).unwrap();
    let grid = interior_grid(&p, 9, 9);
    let seq = error_sequence(&p, &[8], Scheme::default(), 200, &grid).unwrap();
    let sol = solve(&p, 8, Scheme::default(), 200).unwrap();
    assert_eq!(seq, vec![(8, ErrorReport::evaluate(&sol, &grid).unwrap().linf)]);
    assert!(error_sequence(&p, &[8, 8], Scheme::default(), 200, &grid).is_err());
    assert!(error_sequence(&p, &[8], Scheme::default(), 200, &[]).is_err());
}

#[test]
fn evaluation_matches_data_and_differences() {
    let p = KseProblem::benchmark(0.5).unwrap();
    let sol = solve(&p, 12, Scheme::default(), 200).unwrap();
    for k in 0..=10 {
        let z = k as f64 / 10.0;
        assert!((sol.evaluate(z, 0.0, 0).unwrap() - p.exact(z, 0.0)).abs() <= 1e-9);
    }
    assert!((sol.evaluate(0.5, 0.5, 0).unwrap() - 0.176569).abs() <= 1e-4);

    let mut rng = common::rng(41);
    let h = 1e-5;
    for _ in 0..20 {
        let z: f64 = rng.gen_range(h..1.0 - h);
        let t: f64 = rng.gen_range(0.0..=1.0);
        for d in 1..=3 {
            let fd = (sol.evaluate(z + h, t, d - 1).unwrap() - sol.evaluate(z - h, t, d - 1).unwrap()) / (2.0 * h);
            let exact = sol.evaluate(z, t, d).unwrap();
            assert!((fd - exact).abs() <= 1e-5 * (1.0 + exact.abs()), "d {d} at ({z}, {t}): {exact} vs {fd}");
        }
    }
    assert!(sol.evaluate(0.5, 0.5, 4).is_err());
    assert!(sol.evaluate(1.5, 0.5, 0).is_err());
    let batch = sol.evaluate_many(&[(0.25, 0.5), (0.75, 0.5)]).unwrap();
    assert_eq!(batch, vec![sol.evaluate(0.25, 0.5, 0).unwrap(), sol.evaluate(0.75, 0.5, 0).unwrap()]);
}
