#![no_main]

use gwa_core::QRat;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if data.len() > 128 {
        return;
    }
    if let Ok(c) = QRat::parse(data) {
        assert_eq!(QRat::parse(&c.to_wire()).expect("wire form parses"), c);
        assert_eq!(QRat::parse(&c.to_string()).expect("display form parses"), c);
    }
});
