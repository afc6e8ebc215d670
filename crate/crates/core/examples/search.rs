//! Exhaustive bi-musquash search. Pass the polygon size as the first
//! argument (default 8); BIMUSQUASH_WORKERS sets the thread count.

use bimusquash::search::{enumerate_bimusquash, verdict_from_report, SearchConfig};

fn main() {
    let n: usize = std::env::args().nth(1).map_or(8, |a| a.parse().expect("n"));
    let cfg = SearchConfig::from_env(n);
    let report = match enumerate_bimusquash(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    println!("{}", report.summary());
    for class in &report.classes {
        println!("class of {} solution(s): rows 1-2 {:?}", class.members.len(), &class.canonical[..2]);
    }
    println!("{}", verdict_from_report(&report).summary());
}
