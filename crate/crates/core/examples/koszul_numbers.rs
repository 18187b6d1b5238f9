//! Koszul numbers of a few painted diagrams, computed from the root sum and,
//! where it applies, from the combinatorial rule.
//!
//! cargo run --example koszul_numbers [-- <diagram>...]

use kebundle::painted::PaintedDiagram;

fn main() -> kebundle::Result<()> {
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() {
        args = ["A11:oo*oo*ooooo", "A5:*ooo*", "B4:o*o*", "C3:**o", "D5:o*oo*"]
            .map(String::from)
            .to_vec();
    }
    for text in &args {
        let s0 = PaintedDiagram::parse(text)?;
        let k = s0.koszul()?;
        let rule = s0.koszul_by_rule();
        println!("{s0}  sigma = {}", k.sigma);
        for (node, n) in &k.numbers {
            let by_rule = match rule.get(node).copied().flatten() {
                Some(r) => r.to_string(),
                None => "ambiguous".to_string(),
            };
            println!("  n{node:<2} = {n:>3}   rule: {by_rule}");
        }
    }
    Ok(())
}
