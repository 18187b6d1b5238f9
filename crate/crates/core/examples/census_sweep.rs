//! Runs the census for one family, writes the JSONL catalogue to a file and
//! prints the per-rank summary as CSV.
//!
//! cargo run --release --example census_sweep [-- <family> <max_rank> <out.jsonl>]

use std::fs::File;
use std::io::BufWriter;

use kebundle::census::{enumerate, summarize, write_csv, write_jsonl, CensusOptions};
use kebundle::rootspace::Family;

fn main() -> kebundle::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let family = args
        .first()
        .and_then(|s| s.chars().next())
        .and_then(Family::from_letter)
        .unwrap_or(Family::B);
    let max_rank = args.get(1).map(|s| s.parse().expect("rank")).unwrap_or(5);
    let out = args
        .get(2)
        .cloned()
        .unwrap_or_else(|| std::env::temp_dir().join("census.jsonl").display().to_string());

    let records = enumerate(family, max_rank, &CensusOptions::default())?;
    write_jsonl(&records, BufWriter::new(File::create(&out)?))?;
    eprintln!("{} records written to {out}", records.len());
    write_csv(&summarize(&records), std::io::stdout().lock())?;

    for r in records.iter().filter(|r| r.lambda_zero.exists && r.m > 1).take(5) {
        let chi = r.lambda_zero.required_chi.clone().expect("exists");
        println!("ricci-flat: {}", r.data(chi)?);
    }
    Ok(())
}
