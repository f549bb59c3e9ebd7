//! Orders of x_n − 1 along z = 1 and the value of α at the singular point.

use manin_denef::algebra::RatFunc;
use manin_denef::curve::EndoTable;
use manin_denef::places::{alpha_at_singular, check_alpha_a_relation, ord_at, Place};

fn main() -> manin_denef::Result<()> {
    let table = EndoTable::generic();
    println!("{:>3} {:>6} {:>10} {:>6}", "n", "ord", "alpha", "A rel");
    for n in 1..=8 {
        let p = table.get(n)?;
        let ord = ord_at(&(&p.x - &RatFunc::one()), &Place::z_minus_one());
        let alpha = match alpha_at_singular(&p.x, &p.y)? {
            Some(a) => a.to_string(),
            None => "pole".into(),
        };
        let rel = check_alpha_a_relation(&p.x, &p.y)?;
        println!("{n:>3} {ord:>6} {alpha:>10} {:>6}", rel.holds);
    }
    Ok(())
}
