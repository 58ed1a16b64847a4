#![no_main]

use gwa_core::wire::{decode_poly, encode_poly};
use gwa_core::RingSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice(data) else { return };
    let r = RingSpec::utd();
    if let Ok(f) = decode_poly(&v, &r) {
        assert_eq!(decode_poly(&encode_poly(&f), &r).expect("round trip"), f);
    }
});
