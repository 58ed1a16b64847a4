#![no_main]

use gwa_core::wire::{decode_stratum, encode_stratum};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice(data) else { return };
    if let Ok(s) = decode_stratum(&v) {
        assert_eq!(decode_stratum(&encode_stratum(&s)).expect("round trip"), s);
    }
});
