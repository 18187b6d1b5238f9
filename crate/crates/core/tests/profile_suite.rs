mod common;

use kebundle::census::records_for;
use kebundle::einstein::{classify, z0_form};
use kebundle::poly::Poly;
use kebundle::profile::{DomainEnd, MetricProfile};
use kebundle::rational::{int, Q};
use kebundle::rootspace::Family;
use num_traits::{FromPrimitive, Zero};

use common::diagrams;

/// `(data, λ)` for the census witnesses of both nonzero signs, rank ≤ `max_rank`.
fn witness_profiles(max_rank: usize) -> Vec<(String, MetricProfile, usize)> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for s0 in diagrams(family, max_rank) {
            if s0.black().is_empty() {
                continue;
            }
            for rec in records_for(&s0, false).unwrap() {
                for (lambda, chi) in [
                    (1, rec.lambda_pos.witness.chi.clone()),
                    (-1, rec.lambda_neg.witness.chi.clone()),
                ] {
                    let data = rec.data(chi).unwrap();
                    let profile = MetricProfile::new(&data, &int(lambda)).unwrap();
                    out.push((format!("{data} lambda={lambda}"), profile, data.m()));
                }
            }
        }
    }
    out
}

#[test]
fn order_at_zero_is_m_minus_one_up_to_rank_7() {
    let profiles = witness_profiles(7);
    assert!(profiles.len() > 5000);
    for (name, p, m) in &profiles {
        assert_eq!(p.d() + 1, *m, "{name}");
        assert_eq!(p.scaled_polynomial().order_at_zero(), Some(m - 1), "{name}");
        // Roots orthogonal to ξ_0 contribute constant factors.
        let moving = p.exact_pairs().iter().filter(|(_, b)| !b.is_zero()).count();
        assert_eq!(p.scaled_polynomial().degree(), Some(moving), "{name}");
    }
}

fn sample_times(p: &MetricProfile) -> Vec<f64> {
    let t_max = p
        .t_sup()
        .unwrap_or_else(|| p.t_of_f(4.0 * p.kappa()).unwrap());
    (1..10).map(|k| t_max * k as f64 / 10.0).collect()
}

#[test]
fn inverse_consistency_up_to_rank_5() {
    for (name, p, _) in witness_profiles(5) {
        let mut last = 0.0;
        for t in sample_times(&p) {
            let f = p.f_of_t(t).unwrap();
            assert!(f > last, "{name}: f not increasing at t={t}");
            last = f;
            let back = p.t_of_f(f).unwrap();
            assert!((back - t).abs() < 1e-8, "{name}: t={t} round trip {back}");
        }
    }
}

#[test]
fn finite_difference_residual_agrees() {
    for (name, p, _) in witness_profiles(4).into_iter().step_by(7) {
        for t in sample_times(&p).into_iter().skip(1).take(7) {
            let analytic = p.ode_residual(t).unwrap();
            let fd = p.ode_residual_fd(t, 1e-3 * t).unwrap();
            assert!(analytic.abs() < 1e-9, "{name}: analytic {analytic}");
            assert!(fd.abs() < 1e-4, "{name}: t={t} finite-difference residual {fd}");
        }
    }
}

fn rational(x: f64) -> Q {
    Q::from_f64(x).unwrap()
}

#[test]
fn domain_end_matches_sturm_counts() {
    let mut closing = 0;
    let mut exits = 0;
    for (name, p, _) in witness_profiles(5) {
        let Some(f_sup) = p.domain_end() else {
            assert_eq!(p.end_kind(), DomainEnd::Infinite);
            continue;
        };
        let y = f_sup / p.kappa();
        let (lo, hi) = (rational(y * (1.0 - 1e-9)), rational(y * (1.0 + 1e-9)));
        let d = p.d();
        let j_tilde = Poly::new(p.scaled_inner_integral().coeffs()[d + 1..].to_vec());
        let q_tilde = Poly::new(p.scaled_polynomial().coeffs()[d..].to_vec());
        assert_eq!(j_tilde.count_real_roots(&int(0), &lo), 0, "{name}");
        assert_eq!(q_tilde.count_real_roots(&int(0), &lo), 0, "{name}");
        match p.end_kind() {
            DomainEnd::Closing => {
                closing += 1;
                assert_eq!(j_tilde.count_real_roots(&lo, &hi), 1, "{name}");
            }
            DomainEnd::ChamberExit => {
                exits += 1;
                assert!(q_tilde.count_real_roots(&lo, &hi) >= 1, "{name}");
            }
            DomainEnd::Infinite => unreachable!(),
        }
    }
    assert!(closing > 0 && exits > 0, "closing {closing}, exits {exits}");
}

#[test]
fn negative_lambda_segments_are_rays() {
    // Observed on every admitted λ < 0 datum with small characters: the
    // segment never leaves the chamber, so the profile is defined for all t.
    for family in Family::ALL {
        for s0 in diagrams(family, 4) {
            if s0.black().is_empty() {
                continue;
            }
            for rec in records_for(&s0, false).unwrap() {
                for chi in common::chi_cube(s0.black().len(), -3, 3) {
                    if rec.m == 1 && chi.iter().all(|&k| k == 0) {
                        continue;
                    }
                    let data = rec.data(chi).unwrap();
                    if z0_form(&data, &int(-1)).is_ok() {
                        assert!(classify(&data).unwrap().lambda_neg.complete, "{data}");
                    }
                }
            }
        }
    }
}

#[test]
fn constant_solution_has_zero_residual_but_fails_closure() {
    let data = kebundle::bundle::AdmissibleData::new(
        kebundle::painted::PaintedDiagram::parse("A2:oo").unwrap(),
        1,
        kebundle::bundle::End::Left,
        vec![],
    )
    .unwrap();
    let p = MetricProfile::new(&data, &int(1)).unwrap();
    // f ≡ κm/λ solves the equation but has f(0) ≠ 0 and f̈(0) = 0 ≠ κ.
    let f_const = p.kappa() * 3.0;
    assert!(p.residual_at(f_const, 0.0, 0.0).abs() < 1e-15);
    assert!((p.residual_at(f_const, 0.0, p.kappa()) - p.kappa()).abs() < 1e-15);
    // The profile itself moves through that value with nonzero speed.
    assert!(f_const < p.domain_end().unwrap());
    assert!(p.fdot_at(f_const) > 0.0);
}
