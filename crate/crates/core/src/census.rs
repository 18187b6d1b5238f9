//! Exhaustive enumeration of admissible data and their Einstein verdicts.
//!
//! One record per `(diagram, string, end)` plus one line-bundle record per
//! diagram. Verdicts that depend on the character `χ` are reported as
//! bounds on the `k_j` together with one integer witness.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::bundle::{
    kappa, kappa_z0_form, kappa_z0_oracle, koszul_update_check, AdmissibleData, End,
};
use crate::einstein::{
    alg_cond, classify, ricci_flat_witness, z0_form, Bound, EinsteinVerdict, LambdaSign,
};
use crate::error::{Error, Result};
use crate::painted::PaintedDiagram;
use crate::rational::{int, serde_q, Q};
use crate::rootspace::{AlgebraType, Family};

/// Format version written into every record.
pub const RECORD_VERSION: u32 = 1;

/// Largest rank accepted unless configured otherwise.
pub const DEFAULT_MAX_RANK: usize = 9;

#[derive(Debug, Clone, Copy)]
pub struct CensusOptions {
    pub max_rank_bound: usize,
    /// Re-derive `κZ^0` by the oracle, the Koszul update and the algebraic
    /// Einstein condition for every witness before emitting a record.
    pub validate: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            max_rank_bound: DEFAULT_MAX_RANK,
            validate: true,
        }
    }
}

/// A character admitting the verdict, with the geometry it produces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub chi: Vec<i64>,
    #[serde(serialize_with = "serde_q::serialize")]
    pub kappa_sq: Q,
    pub ray_extends: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroEntry {
    /// Some character admits a Ricci-flat metric.
    pub exists: bool,
    pub required_chi: Option<Vec<i64>>,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignEntry {
    /// Characters admitting this sign: all bounds hold.
    pub constraint: Vec<Bound>,
    /// Smallest-magnitude integer character inside the constraint region.
    pub witness: Witness,
    /// The witness metric is complete (`λ < 0` and the segment is a ray).
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRecord {
    pub version: u32,
    pub family: Family,
    pub rank: usize,
    pub mask: String,
    /// First node of the white string; `None` for the line-bundle record.
    pub string: Option<usize>,
    pub end: Option<End>,
    pub m: usize,
    pub koszul: Vec<i64>,
    pub lambda_zero: ZeroEntry,
    pub lambda_pos: SignEntry,
    pub lambda_neg: SignEntry,
}

impl CensusRecord {
    /// The diagram in `A11:oo*oo*ooooo` notation.
    pub fn diagram(&self) -> String {
        format!("{}{}:{}", self.family.letter(), self.rank, self.mask)
    }

    /// Rebuilds the data with the given character.
    pub fn data(&self, chi: Vec<i64>) -> Result<AdmissibleData> {
        let s0 = PaintedDiagram::parse(&self.diagram())?;
        match (self.string, self.end) {
            (Some(start), Some(end)) => AdmissibleData::new(s0, start, end, chi),
            _ => AdmissibleData::line(s0, chi),
        }
    }
}

/// All records for `family` with rank up to `max_rank`, in canonical order:
/// rank, mask (as enumerated by [`PaintedDiagram::all`]), line bundle first,
/// then strings by first node, left end before right end. Diagrams without
/// black nodes carry no Koszul numbers and are skipped.
pub fn enumerate(
    family: Family,
    max_rank: usize,
    options: &CensusOptions,
) -> Result<Vec<CensusRecord>> {
    if max_rank > options.max_rank_bound {
        return Err(Error::config(format!(
            "max rank {max_rank} exceeds the configured bound {}",
            options.max_rank_bound
        )));
    }
    let mut diagrams = Vec::new();
    for rank in family.min_rank()..=max_rank {
        let algebra = AlgebraType::new(family, rank)?;
        diagrams.extend(PaintedDiagram::all(algebra).filter(|d| !d.black().is_empty()));
    }
    let per_diagram: Vec<Vec<CensusRecord>> = diagrams
        .par_iter()
        .map(|s0| records_for(s0, options.validate))
        .collect::<Result<_>>()?;
    Ok(per_diagram.into_iter().flatten().collect())
}

/// Records of one diagram (which must have a black node).
pub fn records_for(s0: &PaintedDiagram, validate: bool) -> Result<Vec<CensusRecord>> {
    let p = s0.black().len();
    let mut bases = vec![AdmissibleData::line(s0.clone(), vec![0; p])?];
    for string in s0.admissible_strings() {
        for end in [End::Left, End::Right] {
            bases.push(AdmissibleData::new(s0.clone(), string.start(), end, vec![0; p])?);
        }
    }
    bases.iter().map(|base| record(base, validate)).collect()
}

fn record(base: &AdmissibleData, validate: bool) -> Result<CensusRecord> {
    let verdict = classify(base)?;
    let m = base.m();
    let zero_witness = match &verdict.lambda_zero.required_chi {
        Some(chi) => Some(witness(base, chi.clone(), LambdaSign::Zero, validate)?),
        None => None,
    };
    let pos_chi = witness_chi(&verdict.lambda_pos.constraint, m);
    let neg_chi = witness_chi(&verdict.lambda_neg.constraint, m);
    let pos = witness(base, pos_chi, LambdaSign::Positive, validate)?;
    let neg = witness(base, neg_chi, LambdaSign::Negative, validate)?;
    if validate && m > 1 && !koszul_update_check(base)? {
        return Err(invariant(base, "Koszul update relations"));
    }
    let s0 = base.s0();
    let algebra = s0.algebra();
    let EinsteinVerdict {
        koszul,
        lambda_zero,
        lambda_pos,
        lambda_neg,
        ..
    } = verdict;
    Ok(CensusRecord {
        version: RECORD_VERSION,
        family: algebra.family(),
        rank: algebra.rank(),
        mask: s0.mask(),
        string: base.string().map(|s| s.start()),
        end: base.end(),
        m,
        koszul,
        lambda_zero: ZeroEntry {
            exists: zero_witness.is_some(),
            required_chi: lambda_zero.required_chi,
            witness: zero_witness,
        },
        lambda_pos: SignEntry {
            constraint: lambda_pos.constraint,
            witness: pos,
            complete: false,
        },
        lambda_neg: SignEntry {
            constraint: lambda_neg.constraint,
            complete: neg.ray_extends,
            witness: neg,
        },
    })
}

/// Smallest-magnitude integer vector inside a box of strict bounds. Line
/// bundles need a nonzero character; `+1` then `−1` is tried on each node.
fn witness_chi(bounds: &[Bound], m: usize) -> Vec<i64> {
    let mut chi: Vec<i64> = bounds.iter().map(Bound::smallest_witness).collect();
    if m == 1 && chi.iter().all(|&k| k == 0) {
        if let Some((j, k)) = bounds
            .iter()
            .enumerate()
            .flat_map(|(j, b)| [(j, 1), (j, -1)].into_iter().filter(move |&(_, k)| b.holds(k)))
            .next()
        {
            chi[j] = k;
        }
    }
    chi
}

fn witness(base: &AdmissibleData, chi: Vec<i64>, sign: LambdaSign, validate: bool) -> Result<Witness> {
    let data = base.with_chi(chi)?;
    let verdict = classify(&data)?;
    if !verdict.admits(sign) {
        return Err(invariant(&data, &format!("witness does not admit {sign}")));
    }
    if validate {
        if kappa_z0_form(&data)? != kappa_z0_oracle(&data)? {
            return Err(invariant(&data, "closed form of kappa Z^0 disagrees with the oracle"));
        }
        let (lambda, center) = match sign {
            LambdaSign::Zero => (int(0), ricci_flat_witness(&data)?),
            LambdaSign::Positive => (int(1), z0_form(&data, &int(1))?),
            LambdaSign::Negative => (int(-1), z0_form(&data, &int(-1))?),
        };
        if !alg_cond(&data, &lambda, &center)? {
            return Err(invariant(&data, &format!("algebraic Einstein condition for {sign}")));
        }
    }
    let ray_extends = match sign {
        LambdaSign::Zero => true,
        _ => verdict.ray_extends,
    };
    Ok(Witness {
        kappa_sq: kappa(&data)?.0,
        chi: data.chi().to_vec(),
        ray_extends,
    })
}

fn invariant(data: &AdmissibleData, what: &str) -> Error {
    Error::Invariant(format!("{data}: {what}"))
}

/// Writes one JSON object per line.
pub fn write_jsonl(records: &[CensusRecord], mut out: impl Write) -> Result<()> {
    for r in records {
        let line = serde_json::to_string(r).map_err(|e| Error::Io(e.to_string()))?;
        writeln!(out, "{line}")?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub family: Family,
    pub rank: usize,
    pub diagrams: usize,
    pub data: usize,
    pub lambda_zero: usize,
    pub lambda_neg_complete: usize,
}

/// Per-`(family, rank)` counts, sorted by family then rank.
pub fn summarize(records: &[CensusRecord]) -> Vec<SummaryRow> {
    // (masks, data, λ = 0, λ < 0 complete) per (family, rank).
    type Counts<'a> = (Vec<&'a str>, usize, usize, usize);
    let mut groups: BTreeMap<(Family, usize), Counts> = BTreeMap::new();
    for r in records {
        let g = groups.entry((r.family, r.rank)).or_default();
        g.0.push(&r.mask);
        g.1 += 1;
        g.2 += usize::from(r.lambda_zero.exists);
        g.3 += usize::from(r.lambda_neg.complete);
    }
    groups
        .into_iter()
        .map(|((family, rank), (mut masks, data, zero, complete))| {
            masks.sort_unstable();
            masks.dedup();
            SummaryRow {
                family,
                rank,
                diagrams: masks.len(),
                data,
                lambda_zero: zero,
                lambda_neg_complete: complete,
            }
        })
        .collect()
}

pub const CSV_HEADER: &str = "family,rank,diagrams,data,lambda_zero,lambda_neg_complete";

pub fn write_csv(rows: &[SummaryRow], mut out: impl Write) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.family.letter(),
            r.rank,
            r.diagrams,
            r.data,
            r.lambda_zero,
            r.lambda_neg_complete
        )?;
    }
    Ok(())
}
