use std::process::ExitCode;

use ks_cli::selftest;

fn main() -> ExitCode {
    let results = selftest::run_all();
    for r in &results {
        println!("{r} ({:.2} s)", r.elapsed.as_secs_f64());
    }
    let passed = results.iter().filter(|r| r.passed).count();
    println!("acceptance: {passed} of {} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
