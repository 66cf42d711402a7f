//! Runs the built-in fixture checks and prints a one-line summary each.

use combfield::verify::{run, Scope, Status};

fn main() {
    let scope = std::env::args().nth(1).unwrap_or_else(|| "all".into());
    let scope: Scope = match scope.parse() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    let report = run(scope, false);
    for check in &report.checks {
        let mark = if check.status == Status::Pass { "ok  " } else { "FAIL" };
        println!("{mark} {}", check.name);
    }
    if report.overall != Status::Pass {
        std::process::exit(1);
    }
}
