//! Compares the closed form of the vertical form `κZ^0` with the
//! independent ε-chain construction and checks the Koszul update, over every
//! string bundle up to a rank bound with characters in {-1, 0, 1}.
//!
//! cargo run --release --example vertical_form_check [-- <max_rank>]

use kebundle::bundle::{kappa_z0_form, kappa_z0_oracle, koszul_update_check, AdmissibleData, End};
use kebundle::painted::PaintedDiagram;
use kebundle::rootspace::{AlgebraType, Family};

fn characters(p: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..p {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (-1..=1).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

fn main() -> kebundle::Result<()> {
    let max_rank: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("rank"))
        .unwrap_or(5);
    for family in Family::ALL {
        let (mut checked, mut mismatched, mut update_failures) = (0usize, 0usize, 0usize);
        for rank in family.min_rank()..=max_rank {
            for s0 in PaintedDiagram::all(AlgebraType::new(family, rank)?) {
                for string in s0.admissible_strings() {
                    for end in [End::Left, End::Right] {
                        for chi in characters(s0.black().len()) {
                            let data = AdmissibleData::new(s0.clone(), string.start(), end, chi)?;
                            checked += 1;
                            if kappa_z0_form(&data)? != kappa_z0_oracle(&data)? {
                                mismatched += 1;
                                println!("mismatch: {data}");
                            }
                            if !s0.black().is_empty() && !koszul_update_check(&data)? {
                                update_failures += 1;
                            }
                        }
                    }
                }
            }
        }
        println!(
            "{}: {checked} data up to rank {max_rank}, {mismatched} closed-form mismatches, \
             {update_failures} Koszul-update failures",
            family.letter()
        );
    }
    Ok(())
}
