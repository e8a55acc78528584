#![no_main]

use formality_core::complex::sphere;
use formality_core::io::WeightsFile;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(file) = WeightsFile::parse(text) else { return };
    let k = sphere(2);
    if let Ok(w) = file.to_weights(&k) {
        assert!(w.degrees().iter().flatten().all(|x| x.is_finite() && *x > 0.0));
    }
});
