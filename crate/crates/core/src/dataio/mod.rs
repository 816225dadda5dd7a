//! File formats: CIFAR-10 binary batches in, SAUG1 batch containers and
//! PPM images in and out, CSV tables out.
//!
//! Every reader has a byte-slice entry point (`decode_*`) alongside the
//! path-based one. Readers validate the whole input before returning, so a
//! malformed file never yields a partial list of samples.

mod cifar;
mod container;
mod ppm;
mod table;

pub use cifar::{decode_cifar10, read_cifar10, CIFAR10_CLASSES, CIFAR10_RECORD_LEN};
pub use container::{
    decode_container, encode_container, read_container, write_container, CONTAINER_HEADER_LEN,
    CONTAINER_MAGIC,
};
pub use ppm::{decode_ppm, encode_ppm, read_ppm, write_ppm};
pub use table::{format_float, write_csv, Cell, Table};
