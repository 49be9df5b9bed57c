//! The sl3 cell report; starred values are cited constants.

fn main() {
    let report = schober::roots::sl3::sl3_report();
    print!("{}", report.to_text());
    assert!(report.checks.iter().all(|c| c.passed));
}
