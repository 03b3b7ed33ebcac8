use subfrac::verify::all_checks;

#[test]
fn every_check_passes() {
    let checks = all_checks();
    assert!(checks.len() > 100);
    let failed: Vec<String> = checks.iter().filter(|c| !c.passed()).map(|c| c.to_string()).collect();
    assert!(failed.is_empty(), "{}", failed.join("\n"));
}
