//! Coordinate grids for scans and searches.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `n` evenly spaced points on `[lo, hi]` (both ends included; `n == 1` gives `[lo]`).
pub fn linspace<T: Real>(lo: T, hi: T, n: usize) -> Vec<T> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / T::from_usize_lossy(n - 1);
            (0..n).map(|i| if i == n - 1 { hi } else { lo + step * T::from_usize_lossy(i) }).collect()
        }
    }
}

/// `n` evenly spaced points on the half-open interval `[lo, hi)`.
pub fn half_open<T: Real>(lo: T, hi: T, n: usize) -> Vec<T> {
    let step = (hi - lo) / T::from_usize_lossy(n.max(1));
    (0..n).map(|i| lo + step * T::from_usize_lossy(i)).collect()
}

/// `n` phases on `[0, 2π)` with spacing `2π/n`.
pub fn phase_grid<T: Real>(n: usize) -> Vec<T> {
    half_open(T::zero(), T::two_pi(), n)
}

/// Non-empty, finite and strictly increasing.
pub fn validate_axis<T: Real>(name: &str, axis: &[T]) -> Result<()> {
    if axis.is_empty() {
        return Err(Error::InvalidGrid(format!("{name} axis is empty")));
    }
    if let Some(i) = axis.iter().position(|x| !x.is_finite()) {
        return Err(Error::InvalidGrid(format!("{name} axis has a non-finite point at index {i}")));
    }
    if let Some(i) = axis.windows(2).position(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidGrid(format!("{name} axis is not increasing at index {}", i + 1)));
    }
    Ok(())
}
