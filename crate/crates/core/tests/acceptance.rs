use rivage::acceptance::{run_all, DEFAULT_SEED};

#[test]
fn acceptance_criteria() {
    let seed = std::env::var("RIVAGE_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    let results = run_all(seed);
    for r in &results {
        println!(
            "criterion {} [{}] {}: {} ({} ms)",
            r.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail,
            r.elapsed_ms
        );
    }
    assert_eq!(results.len(), 8);
    assert!(results.iter().all(|r| r.passed));
}
