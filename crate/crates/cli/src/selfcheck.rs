use clap::ValueEnum;
use sarkisov::selfcheck::{run_selfcheck, Injection};

use crate::{color_enabled, Failure};

#[derive(Clone, Copy, ValueEnum)]
pub enum Inject {
    None,
    HodgeInverted,
    DelPezzoPrinted,
}

#[derive(clap::Args)]
pub struct Args {
    /// Break one stage on purpose to check that the suite notices.
    #[arg(long, value_enum, default_value_t = Inject::None, hide = true)]
    inject: Inject,
}

pub fn run(a: Args) -> Result<(), Failure> {
    let injection = match a.inject {
        Inject::None => Injection::None,
        Inject::HodgeInverted => Injection::HodgeInverted,
        Inject::DelPezzoPrinted => Injection::DelPezzoPrinted,
    };
    let color = color_enabled();
    let results = run_selfcheck(injection);
    for r in &results {
        let mark = match (r.passed, color) {
            (true, true) => "\x1b[32mPASS\x1b[0m",
            (false, true) => "\x1b[31mFAIL\x1b[0m",
            (true, false) => "PASS",
            (false, false) => "FAIL",
        };
        println!("{:>2} {mark} {}: {}", r.id, r.name, r.detail);
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("{} of {} passed", results.len() - failed, results.len());
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Selfcheck)
    }
}
