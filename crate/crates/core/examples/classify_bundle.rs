//! Einstein verdicts for admissible bundles: the rank-3 and rank-6 string
//! bundles over A11/{3,6}, a rank-4 bundle over A5/{1,5}, and the point orbit.
//!
//! cargo run --example classify_bundle

use kebundle::bundle::{geometry, AdmissibleData, End};
use kebundle::einstein::{classify, LambdaSign};
use kebundle::painted::PaintedDiagram;
use kebundle::rational;

fn report(data: &AdmissibleData) -> kebundle::Result<()> {
    let v = classify(data)?;
    let g = geometry(data)?;
    println!("{data}");
    println!("  koszul {:?}, kappa^2 = {}", v.koszul, rational::format(&g.kappa_sq));
    for sign in [LambdaSign::Zero, LambdaSign::Positive, LambdaSign::Negative] {
        let status = if v.admits(sign) { "admitted" } else { "not admitted" };
        println!("  {sign:<9} {status}");
    }
    if let Some(chi) = &v.lambda_zero.required_chi {
        println!("  Ricci-flat only for chi = {chi:?}");
    }
    let region: Vec<String> = v.lambda_neg.constraint.iter().map(|b| b.to_string()).collect();
    println!("  lambda<0 region: {}", region.join(", "));
    Ok(())
}

fn main() -> kebundle::Result<()> {
    let a11 = PaintedDiagram::parse("A11:oo*oo*ooooo")?;
    report(&AdmissibleData::new(a11.clone(), 1, End::Left, vec![2, 3])?)?;
    report(&AdmissibleData::new(a11, 7, End::Left, vec![2, 3])?)?;

    let a5 = PaintedDiagram::parse("A5:*ooo*")?;
    report(&AdmissibleData::new(a5, 2, End::Left, vec![1, 1])?)?;

    // A flag manifold that is a point: the bundle is C^3 over a point.
    let point = PaintedDiagram::parse("A2:oo")?;
    report(&AdmissibleData::new(point, 1, End::Left, vec![])?)?;
    Ok(())
}
