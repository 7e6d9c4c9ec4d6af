use std::fmt;

use crate::{Error, Result};

/// A range of stroboscopic cycles, inclusive at both ends.
///
/// Averaging windows such as `[500, 1000]` and the half-open DFT window
/// `[0, 1000)` are both expressed this way (the latter as `0..=999`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CycleWindow {
    pub start: usize,
    pub end: usize,
}

impl CycleWindow {
    pub fn new(start: usize, end: usize) -> Result<Self> {
        if end < start {
            return Err(Error::Config(format!(
                "window end {end} precedes window start {start}"
            )));
        }
        Ok(CycleWindow { start, end })
    }

    /// The half-open range `[start, end)`.
    pub fn half_open(start: usize, end: usize) -> Result<Self> {
        if end <= start {
            return Err(Error::Config(format!("empty window [{start}, {end})")));
        }
        Ok(CycleWindow {
            start,
            end: end - 1,
        })
    }

    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Borrow the windowed part of `series`.
    pub fn slice<'a, T>(&self, series: &'a [T]) -> Result<&'a [T]> {
        if self.end >= series.len() {
            return Err(Error::WindowOutOfRange {
                start: self.start,
                end: self.end,
                len: series.len(),
            });
        }
        Ok(&series[self.start..=self.end])
    }

    /// Arithmetic mean of the windowed samples.
    pub fn mean(&self, series: &[f64]) -> Result<f64> {
        let s = self.slice(series)?;
        Ok(s.iter().sum::<f64>() / s.len() as f64)
    }
}

impl fmt::Display for CycleWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.start, self.end)
    }
}
