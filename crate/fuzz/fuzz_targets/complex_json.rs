#![no_main]

use formality_core::complex::ComplexFile;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(file) = ComplexFile::parse(text) else { return };
    if let Ok(k) = file.to_complex() {
        // A validated complex must survive a write/read cycle unchanged.
        let again = ComplexFile::parse(&k.to_json()).and_then(|f| f.to_complex()).expect("round trip");
        assert_eq!(again.facets(), k.facets());
    }
});
