#![no_main]

use gwa_core::rea::rea_instance;
use gwa_core::wire::{decode_module, encode_module};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() > 4096 {
        return;
    }
    let Ok(v) = serde_json::from_slice(data) else { return };
    let w = rea_instance();
    if let Ok(m) = decode_module(&v, &w) {
        assert_eq!(decode_module(&encode_module(&m), &w).expect("round trip"), m);
    }
});
