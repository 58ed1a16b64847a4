#![no_main]

use gwa_core::expr::{parse, ParseOptions};
use gwa_core::rea::reduce;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let _ = parse(data, ParseOptions { allow_division: true });
    // reduction cost grows with the exponents, so keep inputs short
    if data.len() <= 64 {
        let _ = reduce(data);
    }
});
