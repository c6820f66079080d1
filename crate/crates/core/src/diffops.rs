//! Central difference operators of orders 0..=4 and direct 1-D convolution.
//!
//! Every kernel in this crate is applied with one fixed orientation,
//! `out(x) = Σ_n K(n) f(x - n)`, so composing a smoothing kernel with a
//! difference operator is associative with building the single equivalent
//! kernel first.

use crate::{Error, Result};

pub const MAX_ORDER: u32 = 4;

/// Finite tap set addressed by integer offsets `-radius ..= radius`.
pub trait Stencil {
    fn radius(&self) -> usize;

    /// Taps in offset order, length `2 * radius + 1`.
    fn coeffs(&self) -> &[f64];

    /// Tap at offset `n`, zero outside the support.
    fn at(&self, n: isize) -> f64 {
        let idx = n + self.radius() as isize;
        if idx < 0 {
            return 0.0;
        }
        self.coeffs().get(idx as usize).copied().unwrap_or(0.0)
    }
}

/// How convolution treats samples outside the signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// Only fully supported output samples are produced; the result shrinks
    /// by `radius` on each side.
    Strict,
    /// Edge values are extended; the result keeps the input length.
    Replicate,
}

/// Central difference operator of a given order.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceOp {
    order: u32,
    taps: Vec<f64>,
}

impl DifferenceOp {
    pub fn order(&self) -> u32 {
        self.order
    }
}

impl Stencil for DifferenceOp {
    fn radius(&self) -> usize {
        (self.taps.len() - 1) / 2
    }

    fn coeffs(&self) -> &[f64] {
        &self.taps
    }
}

const FIRST: [f64; 3] = [-0.5, 0.0, 0.5];
const SECOND: [f64; 3] = [1.0, -2.0, 1.0];

/// Builds the order-`order` central difference by composing the first- and
/// second-order taps: odd orders are one first difference followed by
/// repeated second differences, even orders repeated second differences.
pub fn central_difference(order: u32) -> Result<DifferenceOp> {
    if order > MAX_ORDER {
        return Err(Error::OrderOutOfRange {
            order,
            min: 0,
            max: MAX_ORDER,
        });
    }
    let mut taps = vec![1.0];
    if order % 2 == 1 {
        taps = conv_full(&taps, &FIRST);
    }
    for _ in 0..order / 2 {
        taps = conv_full(&taps, &SECOND);
    }
    Ok(DifferenceOp { order, taps })
}

pub(crate) fn conv_full(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Direct discrete convolution `out(x) = Σ_n K(n) signal(x - n)`.
///
/// Under [`Boundary::Strict`] the output holds only the fully supported
/// samples, so output index `j` corresponds to input position `j + radius`.
pub fn convolve_1d<K: Stencil + ?Sized>(
    signal: &[f64],
    kernel: &K,
    boundary: Boundary,
) -> Result<Vec<f64>> {
    if signal.is_empty() {
        return Error::invalid("cannot convolve an empty signal");
    }
    let r = kernel.radius();
    let k = kernel.coeffs();
    let len = signal.len();
    match boundary {
        Boundary::Strict => {
            if 2 * r >= len {
                return Err(Error::SupportTooLarge { radius: r, len });
            }
            let mut out = vec![0.0; len - 2 * r];
            for (j, o) in out.iter_mut().enumerate() {
                // position x = j + r; f(x - n) with n = idx - r
                let mut acc = 0.0;
                for (idx, &c) in k.iter().enumerate() {
                    acc += c * signal[j + 2 * r - idx];
                }
                *o = acc;
            }
            Ok(out)
        }
        Boundary::Replicate => {
            let mut out = vec![0.0; len];
            let last = (len - 1) as isize;
            for (x, o) in out.iter_mut().enumerate() {
                let mut acc = 0.0;
                for (idx, &c) in k.iter().enumerate() {
                    let pos = (x as isize + r as isize - idx as isize).clamp(0, last);
                    acc += c * signal[pos as usize];
                }
                *o = acc;
            }
            Ok(out)
        }
    }
}
