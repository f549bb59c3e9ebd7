//! Multiples n·(z, 1) on the twisted curve, and the identities they satisfy.

use manin_denef::curve::{check_md, EndoTable};

fn main() -> manin_denef::Result<()> {
    let table = EndoTable::generic();
    for n in 1..=4 {
        let p = table.get(n)?;
        println!("x_{n} = {}", p.x);
        println!("  curve equation residual: {}", check_md(&p.x, &p.y));
    }
    for n in [3, -5] {
        println!("n = {n}: mariac {}, wellknown {}", table.check_mariac(n)?, table.check_wellknown(n)?);
    }
    let (xt, _) = table.specialize_tilde(3)?;
    println!("at δ = -2, x_3 = {xt}");
    Ok(())
}
