use std::time::Instant;

use pgcode::verify::{run_criterion, Status, SuiteOptions, CRITERIA};

#[test]
fn acceptance() {
    let opts = SuiteOptions::default();
    let mut failed = Vec::new();
    for (id, title) in CRITERIA {
        let start = Instant::now();
        let records = run_criterion(id, &opts);
        let ok = !records.is_empty() && records.iter().all(|r| r.status == Status::Pass);
        println!(
            "criterion {id:>2} {:<40} {} ({} checks, {:.1}s)",
            title,
            if ok { "PASS" } else { "FAIL" },
            records.len(),
            start.elapsed().as_secs_f64()
        );
        for r in &records {
            println!("    [{:?}] {} {}: expected {} / observed {}", r.status, r.config, r.name, r.expected, r.observed);
        }
        if !ok {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
