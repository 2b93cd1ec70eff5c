#![no_main]

use libfuzzer_sys::fuzz_target;
use stable_cantor::arith::parse_rational;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if text.len() > 256 {
        return;
    }
    if let Err(stable_cantor::Error::Parse { pos, .. }) = parse_rational(text) {
        assert!(pos <= text.len());
    }
});
