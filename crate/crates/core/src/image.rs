use std::fmt;

use crate::error::{Error, Result};

/// Image dimensions. Pixel data is stored channel-planar: every value of
/// channel 0 in row-major order, then channel 1, and so on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    pub height: usize,
    pub width: usize,
    pub channels: usize,
}

impl Shape {
    pub const CIFAR: Shape = Shape { height: 32, width: 32, channels: 3 };

    pub const fn new(height: usize, width: usize, channels: usize) -> Self {
        Shape { height, width, channels }
    }

    pub const fn plane_len(&self) -> usize {
        self.height * self.width
    }

    pub const fn len(&self) -> usize {
        self.height * self.width * self.channels
    }

    pub const fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}x{}", self.height, self.width, self.channels)
    }
}

/// An 8-bit image in channel-planar layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Image {
    shape: Shape,
    data: Vec<u8>,
}

impl Image {
    pub fn new(shape: Shape, data: Vec<u8>) -> Result<Self> {
        if data.len() != shape.len() {
            return Err(Error::BufferSize { shape, actual: data.len() });
        }
        Ok(Image { shape, data })
    }

    pub fn filled(shape: Shape, value: u8) -> Self {
        Image { shape, data: vec![value; shape.len()] }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.data
    }

    pub fn as_bytes_mut(&mut self) -> &mut [u8] {
        &mut self.data
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.data
    }

    /// The contiguous plane of channel `c`.
    pub fn channel(&self, c: usize) -> &[u8] {
        let n = self.shape.plane_len();
        &self.data[c * n..(c + 1) * n]
    }

    pub fn get(&self, row: usize, col: usize, channel: usize) -> u8 {
        self.data[channel * self.shape.plane_len() + row * self.shape.width + col]
    }

    pub(crate) fn ensure_same_shape(&self, other: &Image) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch { left: self.shape, right: other.shape });
        }
        Ok(())
    }
}
