#![allow(dead_code)]

use kebundle::bundle::{AdmissibleData, End};
use kebundle::painted::PaintedDiagram;
use kebundle::rootspace::{AlgebraType, Family};

/// Every painting of every algebra of `family` with rank in `min..=max_rank`.
pub fn diagrams(family: Family, max_rank: usize) -> Vec<PaintedDiagram> {
    (family.min_rank()..=max_rank)
        .flat_map(|rank| {
            let algebra = AlgebraType::new(family, rank).unwrap();
            PaintedDiagram::all(algebra).collect::<Vec<_>>()
        })
        .collect()
}

/// Every (diagram, string, end) triple with `χ = 0`, all families.
pub fn string_data(max_rank: usize) -> Vec<AdmissibleData> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for s0 in diagrams(family, max_rank) {
            for string in s0.admissible_strings() {
                for end in [End::Left, End::Right] {
                    let chi = vec![0; s0.black().len()];
                    out.push(AdmissibleData::new(s0.clone(), string.start(), end, chi).unwrap());
                }
            }
        }
    }
    out
}

/// All integer vectors of length `p` with entries in `lo..=hi`.
pub fn chi_cube(p: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(p)];
    for _ in 0..p {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (lo..=hi).map(move |k| {
                    let mut v = prefix.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out
}

/// `count` admitted `(data, λ)` pairs of the given sign (`λ ∈ {−1, 0, 1}`),
/// drawn from all data up to `max_rank` (string bundles and line bundles)
/// with `χ ∈ {−2..2}^p`. Deterministic in `seed`.
pub fn admitted_sample(seed: u64, sign: i64, count: usize, max_rank: usize) -> Vec<AdmissibleData> {
    use kebundle::einstein::{classify, z0_form};
    use kebundle::rational::int;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    let mut pool = string_data(max_rank);
    for family in Family::ALL {
        for s0 in diagrams(family, max_rank) {
            if !s0.black().is_empty() {
                let p = s0.black().len();
                pool.push(AdmissibleData::line(s0, vec![1; p]).unwrap());
            }
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let base = pool.choose(&mut rng).unwrap();
        let p = base.s0().black().len();
        let data = if sign == 0 {
            match classify(base).unwrap().lambda_zero.required_chi {
                Some(chi) => base.with_chi(chi).unwrap(),
                None => continue,
            }
        } else {
            let chi: Vec<i64> = (0..p).map(|_| rng.gen_range(-2..=2)).collect();
            if base.m() == 1 && chi.iter().all(|&k| k == 0) {
                continue;
            }
            base.with_chi(chi).unwrap()
        };
        if sign != 0 && z0_form(&data, &int(sign)).is_err() {
            continue;
        }
        out.push(data);
    }
    out
}
