#![no_main]

use libfuzzer_sys::fuzz_target;
use stable_cantor::renorm::{parse_configuration, PairOperators};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if text.len() > 4096 {
        return;
    }
    let ops = PairOperators::theorem2();
    let _ = parse_configuration(text, &ops);
});
