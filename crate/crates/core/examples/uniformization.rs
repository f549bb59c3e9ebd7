//! The rational parametrization of the nodal curve and the endomorphisms it
//! turns into t ↦ ±tⁿ.

use manin_denef::uniform::{check_functional_equations, check_uniformization_endo, integrality_witness, wp, wp_prime};

fn main() -> manin_denef::Result<()> {
    println!("wp(t)  = {}", wp());
    println!("wp'(t) = {}", wp_prime());
    for (name, r) in check_functional_equations()? {
        println!("{name}: residual {r}");
    }
    for n in [1, 3, 5, -3] {
        let u = check_uniformization_endo(n)?;
        println!("n = {n}: x̃_n(wp(t)) = wp({}t^{n})", if u.sigma < 0 { "-" } else { "" });
    }
    for n in [1, 3, 5] {
        println!("beta for n = {n}: {}", integrality_witness(n)?);
    }
    Ok(())
}
