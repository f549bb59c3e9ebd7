//! Exact rational functions in z and δ: parsing, cancellation, calculus.

use manin_denef::algebra::{int, parse_ratfunc, VarId};

fn main() -> manin_denef::Result<()> {
    let f = parse_ratfunc("(z^2 - 1)/(z^2 + 2*z + 1)")?;
    println!("reduced:      {f}");

    let d = f.derivative(&VarId::z());
    println!("d/dz:         {d}");

    let g = parse_ratfunc("z^3 + delta*z^2 + z")?;
    let h = g.substitute(&VarId::delta(), &parse_ratfunc("-2")?)?;
    println!("g at δ = -2:  {h}");
    println!("g(3, -2) =    {}", g.evaluate(&[(VarId::z(), int(3)), (VarId::delta(), int(-2))]).unwrap());
    Ok(())
}
