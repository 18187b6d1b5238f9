//! A sampled profile table for one bundle, with the smooth-closure check,
//! as one would feed to a plotting tool.
//!
//! cargo run --release --example profile_table [-- <lambda>]

use kebundle::bundle::{AdmissibleData, End};
use kebundle::einstein::classify;
use kebundle::painted::PaintedDiagram;
use kebundle::profile::MetricProfile;
use kebundle::rational;

fn main() -> kebundle::Result<()> {
    let lambda = rational::parse(&std::env::args().nth(1).unwrap_or_else(|| "-1".into()))?;
    // Rank-3 bundle over CP^3 = A3/{1}, from the white string {2, 3}.
    let s0 = PaintedDiagram::parse("A3:*oo")?;
    // n = 4 and m = 3: lambda < 0 needs k > 4/3, lambda > 0 needs k < 4/3,
    // and the Ricci-flat value k = 4/3 is not integral.
    let k = if lambda > rational::int(0) { 1 } else { 2 };
    let data = AdmissibleData::new(s0, 2, End::Left, vec![k])?;
    let verdict = classify(&data)?;
    println!("{data}");
    println!("koszul {:?}, ray extends: {}", verdict.koszul, verdict.ray_extends);

    let p = MetricProfile::new(&data, &lambda)?;
    println!("kappa^2 = {}, end = {:?}", rational::format(p.kappa_sq()), p.end_kind());
    if let (Some(f), Some(t)) = (p.domain_end(), p.t_sup()) {
        println!("f_sup = {f:.10}, t_sup = {t:.10}");
    }
    let v = p.verdiani_check();
    println!(
        "smooth closure: d = {} (m - 1 = {}), f''(0) = {:.8} vs kappa = {:.8}: {}",
        v.d,
        v.m - 1,
        v.fitted_curvature,
        v.kappa,
        if v.pass { "ok" } else { "fails" }
    );
    println!("{:>14} {:>14} {:>12}", "t", "f", "residual");
    for s in p.samples(16, 4.0)? {
        println!("{:>14.8} {:>14.8} {:>12.2e}", s.t, s.f, s.residual);
    }
    Ok(())
}
