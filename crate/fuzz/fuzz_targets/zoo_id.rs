#![no_main]

use formality_core::zoo::ZooId;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(id) = text.parse::<ZooId>() else { return };
    assert_eq!(id.to_string().parse::<ZooId>().expect("display re-parses"), id);
    // Bundled data and files are not touched; generated shapes stay small.
    if !matches!(id, ZooId::File(_)) && id.to_string().len() < 16 {
        let _ = id.build();
    }
});
