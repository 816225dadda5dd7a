#![no_main]
use libfuzzer_sys::fuzz_target;
use stegaug::dataio::{decode_cifar10, CIFAR10_RECORD_LEN};

fuzz_target!(|data: &[u8]| {
    if let Ok(samples) = decode_cifar10(data) {
        assert_eq!(samples.len() * CIFAR10_RECORD_LEN, data.len());
        assert!(samples.iter().all(|s| s.label.count_ones() == 1));
    }
});
