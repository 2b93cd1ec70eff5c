#![no_main]

use libfuzzer_sys::fuzz_target;
use stable_cantor::cantor::{parse_set_spec, set_spec_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(k) = parse_set_spec(text) {
        let _ = set_spec_json(&k);
    }
});
