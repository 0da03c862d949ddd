//! Runs every acceptance check and prints one line per check. Uses its own
//! `main` so the lines show up without `--nocapture`.

use std::process::ExitCode;

use choosekit::acceptance::CRITERIA;

fn main() -> ExitCode {
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    let mut ran = 0;
    for (i, check) in CRITERIA.iter().enumerate() {
        let name = format!("criterion_{:02}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let report = check();
        println!("{report}");
        ran += 1;
        failed += usize::from(!report.passed);
    }
    println!("acceptance: {} passed, {failed} failed", ran - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
