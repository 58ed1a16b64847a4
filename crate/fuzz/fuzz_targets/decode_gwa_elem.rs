#![no_main]

use gwa_core::rea::rea_instance;
use gwa_core::wire::{decode_elem, encode_elem};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice(data) else { return };
    let w = rea_instance();
    if let Ok(a) = decode_elem(&v, &w) {
        assert_eq!(decode_elem(&encode_elem(&a), &w).expect("round trip"), a);
    }
});
