use kebundle::bundle::{kappa_z0_form, kappa_z0_oracle, AdmissibleData, End};
use kebundle::einstein::{classify, z0_form, Bound, LambdaSign, Relation};
use kebundle::painted::PaintedDiagram;
use kebundle::profile::MetricProfile;
use kebundle::rational::{self, frac, int};
use kebundle::rootspace::Family;
use num_traits::Signed;
use proptest::prelude::*;

fn painted() -> impl Strategy<Value = PaintedDiagram> {
    painted_up_to(8)
}

/// Paintings with rank below `min_rank + extra`.
fn painted_up_to(extra: usize) -> impl Strategy<Value = PaintedDiagram> {
    (0usize..4, 0usize..extra, any::<u16>()).prop_map(|(f, r, bits)| {
        let family = Family::ALL[f];
        let rank = family.min_rank() + r;
        let mask: String = (0..rank)
            .map(|i| if bits >> i & 1 == 1 { '*' } else { 'o' })
            .collect();
        PaintedDiagram::parse(&format!("{}{rank}:{mask}", family.letter())).unwrap()
    })
}

fn datum() -> impl Strategy<Value = AdmissibleData> {
    datum_up_to(8)
}

/// A diagram with a black node, one of its data, and a character.
fn datum_up_to(extra: usize) -> impl Strategy<Value = AdmissibleData> {
    (painted_up_to(extra), any::<usize>(), any::<bool>(), prop::collection::vec(-6i64..=6, 12))
        .prop_filter_map("needs a black node", |(s0, pick, left, ks)| {
            let p = s0.black().len();
            if p == 0 {
                return None;
            }
            let chi = ks[..p].to_vec();
            let strings = s0.admissible_strings();
            let end = if left { End::Left } else { End::Right };
            if pick % (strings.len() + 1) == strings.len() {
                if chi.iter().all(|&k| k == 0) {
                    return None;
                }
                AdmissibleData::line(s0, chi).ok()
            } else {
                let start = strings[pick % (strings.len() + 1)].start();
                AdmissibleData::new(s0, start, end, chi).ok()
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parse_display_round_trip(s0 in painted()) {
        let text = s0.to_string();
        prop_assert_eq!(PaintedDiagram::parse(&text).unwrap().to_string(), text);
    }

    #[test]
    fn type_a_mirror_reverses_koszul_numbers(rank in 1usize..10, bits in 1u16..) {
        let rank_bits = bits & ((1 << rank) - 1);
        prop_assume!(rank_bits != 0);
        let mask: String = (0..rank).map(|i| if rank_bits >> i & 1 == 1 { '*' } else { 'o' }).collect();
        let mirror: String = mask.chars().rev().collect();
        let a = PaintedDiagram::parse(&format!("A{rank}:{mask}")).unwrap().koszul().unwrap().numbers;
        let b = PaintedDiagram::parse(&format!("A{rank}:{mirror}")).unwrap().koszul().unwrap().numbers;
        for (node, n) in a {
            prop_assert_eq!(b[&(rank + 1 - node)], n);
        }
    }

    #[test]
    fn koszul_numbers_are_at_least_two(s0 in painted()) {
        prop_assume!(!s0.black().is_empty());
        for n in s0.koszul().unwrap().values() {
            prop_assert!(n >= 2);
        }
    }

    #[test]
    fn closed_form_matches_oracle_for_large_characters(data in datum()) {
        prop_assert_eq!(kappa_z0_form(&data).unwrap(), kappa_z0_oracle(&data).unwrap());
    }

    #[test]
    fn center_admission_matches_verdict(data in datum(), num in 1i64..5, den in 1i64..4) {
        let v = classify(&data).unwrap();
        for lambda in [frac(num, den), frac(-num, den)] {
            let sign = LambdaSign::of(&lambda);
            prop_assert_eq!(z0_form(&data, &lambda).is_ok(), v.admits(sign));
        }
        // At most one sign is admitted for a given character.
        let count = [LambdaSign::Zero, LambdaSign::Positive, LambdaSign::Negative]
            .iter()
            .filter(|&&s| v.admits(s))
            .count();
        prop_assert!(count <= 1);
    }

    #[test]
    fn witness_is_smallest_admissible_integer(num in -40i64..40, den in 1i64..7, less in any::<bool>()) {
        let b = Bound {
            node: 1,
            relation: if less { Relation::Less } else { Relation::Greater },
            value: frac(num, den),
        };
        let w = b.smallest_witness();
        prop_assert!(b.holds(w));
        for k in -50i64..=50 {
            if b.holds(k) {
                prop_assert!(k.abs() >= w.abs());
            }
        }
    }

    #[test]
    fn rational_format_round_trip(num in -10_000i64..10_000, den in 1i64..500) {
        let q = frac(num, den);
        prop_assert_eq!(rational::parse(&rational::format(&q)).unwrap(), q);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn profile_inverse_round_trip(data in datum(), xs in prop::collection::vec(0.0f64..1.0, 100)) {
        let v = classify(&data).unwrap();
        let lambda = if v.admits(LambdaSign::Positive) {
            int(1)
        } else if v.admits(LambdaSign::Negative) {
            int(-1)
        } else if v.admits(LambdaSign::Zero) {
            int(0)
        } else {
            return Err(TestCaseError::reject("no sign admitted"));
        };
        let profile = MetricProfile::new(&data, &lambda).unwrap();
        prop_assert!(profile.kappa_sq().is_positive());
        let f_max = profile.domain_end().unwrap_or(4.0 * profile.kappa());
        let t_max = profile.t_sup().unwrap_or_else(|| profile.t_of_f(f_max).unwrap());
        for x in xs {
            let t = x * t_max;
            let back = profile.t_of_f(profile.f_of_t(t).unwrap()).unwrap();
            prop_assert!((back - t).abs() < 1e-8, "{}: t={} back={}", data, t, back);
            // f -> t -> f loses accuracy where dt/df vanishes (a multiple zero
            // of P at the chamber exit); allow for that conditioning.
            let f = x * f_max;
            let t = profile.t_of_f(f).unwrap();
            if profile.t_sup().is_some_and(|ts| t >= ts) {
                // t(f) rounded onto the open end of the domain.
                continue;
            }
            let back = profile.f_of_t(t).unwrap();
            let slack = if f > 0.0 { 1e-12 * t / profile.dt_df(f).unwrap() } else { 0.0 };
            prop_assert!((back - f).abs() < 1e-8 + slack, "{}: f={} back={}", data, f, back);
        }
    }
}

#[test]
fn parse_display_round_trip_exhaustive_to_rank_9() {
    let mut count = 0;
    for family in Family::ALL {
        for rank in family.min_rank()..=9 {
            let algebra = kebundle::rootspace::AlgebraType::new(family, rank).unwrap();
            for s0 in PaintedDiagram::all(algebra) {
                let text = s0.to_string();
                assert_eq!(PaintedDiagram::parse(&text).unwrap(), s0, "{text}");
                count += 1;
            }
        }
    }
    // 2^r paintings per algebra.
    let expected: usize = Family::ALL
        .iter()
        .map(|f| (f.min_rank()..=9).map(|r| 1usize << r).sum::<usize>())
        .sum();
    assert_eq!(count, expected);
}
