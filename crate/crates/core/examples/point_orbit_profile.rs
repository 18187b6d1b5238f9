//! Profiles over a point (the bundle is C^m): compares the numerical f(t)
//! with the closed forms for each sign of the Einstein constant.
//!
//! cargo run --release --example point_orbit_profile

use kebundle::bundle::{AdmissibleData, End};
use kebundle::painted::PaintedDiagram;
use kebundle::profile::MetricProfile;
use kebundle::rational::int;

fn main() -> kebundle::Result<()> {
    for m in [2usize, 3, 5] {
        let s0 = PaintedDiagram::parse(&format!("A{}:{}", m - 1, "o".repeat(m - 1)))?;
        let data = AdmissibleData::new(s0, 1, End::Left, vec![])?;
        for lambda in [0i64, 1, -1] {
            let p = MetricProfile::new(&data, &int(lambda))?;
            let k = p.kappa();
            let a = 2.0 * k;
            let b = -2.0 * lambda as f64 / (m as f64 + 1.0);
            let exact = |t: f64| -> f64 {
                match lambda {
                    0 => k * t * t / 2.0,
                    l if l > 0 => -(a / b) * ((-b).sqrt() * t / 2.0).sin().powi(2),
                    _ => (a / b) * (b.sqrt() * t / 2.0).sinh().powi(2),
                }
            };
            let samples = p.samples(64, 4.0)?;
            let worst = samples
                .iter()
                .map(|s| (s.f - exact(s.t)).abs())
                .fold(0.0, f64::max);
            let end = match p.domain_end() {
                Some(f) => format!("f_sup = {f:.6}"),
                None => "ray".to_string(),
            };
            println!("m = {m}, lambda = {lambda:>2}: {end:<18} max |f - closed form| = {worst:.2e}");
        }
    }
    Ok(())
}
