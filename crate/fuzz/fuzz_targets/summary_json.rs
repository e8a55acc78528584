#![no_main]

use formality_core::obstruction::{check_obstructions, CohomologySummary};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(summary) = CohomologySummary::from_json(text) else { return };
    let report = check_obstructions(&summary).expect("parsed summaries are valid");
    assert_eq!(report, check_obstructions(&summary).unwrap());
});
