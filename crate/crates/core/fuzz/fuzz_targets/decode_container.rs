#![no_main]
use libfuzzer_sys::fuzz_target;
use stegaug::dataio::{decode_container, encode_container};

fuzz_target!(|data: &[u8]| {
    if let Ok(samples) = decode_container(data) {
        // empty containers may declare arbitrary dims; only non-empty ones
        // re-encode to the same bytes
        if !samples.is_empty() {
            assert_eq!(encode_container(&samples).expect("homogeneous"), data);
        }
    }
});
