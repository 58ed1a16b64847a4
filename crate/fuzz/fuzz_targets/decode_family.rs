#![no_main]

use gwa_core::polyring::set_degree_cap;
use gwa_core::wire::{decode_family, encode_family};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // Groebner work on arbitrary generators is bounded by size and degree
    if data.len() > 2048 {
        return;
    }
    set_degree_cap(12);
    let Ok(v) = serde_json::from_slice(data) else { return };
    if let Ok(f) = decode_family(&v) {
        assert_eq!(decode_family(&encode_family(&f)).expect("round trip"), f);
    }
});
