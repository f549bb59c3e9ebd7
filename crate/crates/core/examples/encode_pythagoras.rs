//! Encode a^2 + b^2 = c^2 in each dialect and report formula sizes.

use manin_denef::encoder::{encode_system, parse_diophantine, render_formula, Dialect, Format};

fn main() -> manin_denef::Result<()> {
    let sys = parse_diophantine("a^2 + b^2 = c^2")?;
    for d in Dialect::ALL {
        let f = encode_system(&sys, d);
        println!(
            "{d}: {} variables, {} atoms, {} equations, violations {:?}",
            f.vars.len(),
            f.atoms().len(),
            f.count("eq"),
            f.dialect_violations(d)
        );
    }
    let small = encode_system(&parse_diophantine("x = 2")?, Dialect::Meromorphic);
    let text = render_formula(&small, Format::Text);
    for line in text.lines().take(12) {
        println!("{line}");
    }
    Ok(())
}
