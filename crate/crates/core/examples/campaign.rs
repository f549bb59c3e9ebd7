//! A small verification campaign over every suite.

use manin_denef::campaign::{report, run_campaign, CampaignConfig, Suite};

fn main() -> manin_denef::Result<()> {
    let cfg = CampaignConfig { suites: Suite::ALL.to_vec(), max_n: 5, trunc: 16, seed: 7, tamper: false };
    cfg.validate()?;
    let certs = run_campaign(&cfg)?;
    print!("{}", report(&certs));
    println!("{} certificates", certs.len());
    Ok(())
}
