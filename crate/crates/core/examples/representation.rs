//! Writing a power series H as β + γ(z−1) + f̃·h' + ½·f̃'·h and back.

use manin_denef::algebra::{int, rat, VarId};
use manin_denef::series::{assemble, represent, series_residual, TruncSeries};

fn main() -> manin_denef::Result<()> {
    let h = TruncSeries::polynomial(VarId::z(), vec![int(1), rat(-1, 3), int(2)], 12);
    let big_h = assemble(&int(5), &rat(1, 2), &h);
    println!("H       = {big_h}");

    let rep = represent(&big_h)?;
    println!("beta    = {}", rep.beta);
    println!("gamma   = {}", rep.gamma);
    println!("h       = {}", rep.h);
    println!("residual zero: {}", series_residual(&big_h, &rep).is_zero());
    Ok(())
}
