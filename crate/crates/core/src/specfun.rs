//! Special functions backing the kernel constructions: the error function
//! and exponentially scaled modified Bessel functions of integer order.
//!
//! `erf` is a software rational approximation (the classical FreeBSD/SunPro
//! scheme, accurate to about 1 ulp) rather than a platform intrinsic, so
//! kernel coefficients are bit-identical across platforms. The Bessel values
//! `e^{-s} I_k(s)` are computed with Miller's backward recurrence and
//! normalised through the identity `I_0(s) + 2 Σ_{k≥1} I_k(s) = e^s`, which
//! avoids both the instability of the forward recurrence and any overflow
//! from evaluating `e^s` itself.

use crate::{Error, Result};

// Coefficients for the SunPro erf/erfc rational approximations
// (freely distributable; see FreeBSD msun s_erf.c).
#[rustfmt::skip]
#[allow(clippy::excessive_precision)]
mod cts {
    pub const ERX: f64 = 8.45062911510467529297e-01;
    pub const EFX: f64 = 1.28379167095512586316e-01;
    pub const EFX8: f64 = 1.02703333676410069053e+00;
    pub const PP0: f64 = 1.28379167095512558561e-01;
    pub const PP1: f64 = -3.25042107247001499370e-01;
    pub const PP2: f64 = -2.84817495755985104766e-02;
    pub const PP3: f64 = -5.77027029648944159157e-03;
    pub const PP4: f64 = -2.37630166566501626084e-05;
    pub const QQ1: f64 = 3.97917223959155352819e-01;
    pub const QQ2: f64 = 6.50222499887672944485e-02;
    pub const QQ3: f64 = 5.08130628187576562776e-03;
    pub const QQ4: f64 = 1.32494738004321644526e-04;
    pub const QQ5: f64 = -3.96022827877536812320e-06;
    pub const PA0: f64 = -2.36211856075265944077e-03;
    pub const PA1: f64 = 4.14856118683748331666e-01;
    pub const PA2: f64 = -3.72207876035701323847e-01;
    pub const PA3: f64 = 3.18346619901161753674e-01;
    pub const PA4: f64 = -1.10894694282396677476e-01;
    pub const PA5: f64 = 3.54783043256182359371e-02;
    pub const PA6: f64 = -2.16637559486879084300e-03;
    pub const QA1: f64 = 1.06420880400844228286e-01;
    pub const QA2: f64 = 5.40397917702171048937e-01;
    pub const QA3: f64 = 7.18286544141962662868e-02;
    pub const QA4: f64 = 1.26171219808761642112e-01;
    pub const QA5: f64 = 1.36370839120290507362e-02;
    pub const QA6: f64 = 1.19844998467991074170e-02;
    pub const RA0: f64 = -9.86494403484714822705e-03;
    pub const RA1: f64 = -6.93858572707181764372e-01;
    pub const RA2: f64 = -1.05586262253232909814e+01;
    pub const RA3: f64 = -6.23753324503260060396e+01;
    pub const RA4: f64 = -1.62396669462573470355e+02;
    pub const RA5: f64 = -1.84605092906711035994e+02;
    pub const RA6: f64 = -8.12874355063065934246e+01;
    pub const RA7: f64 = -9.81432934416914548592e+00;
    pub const SA1: f64 = 1.96512716674392571292e+01;
    pub const SA2: f64 = 1.37657754143519042600e+02;
    pub const SA3: f64 = 4.34565877475229228821e+02;
    pub const SA4: f64 = 6.45387271733267880336e+02;
    pub const SA5: f64 = 4.29008140027567833386e+02;
    pub const SA6: f64 = 1.08635005541779435134e+02;
    pub const SA7: f64 = 6.57024977031928170135e+00;
    pub const SA8: f64 = -6.04244152148580987438e-02;
    pub const RB0: f64 = -9.86494292470009928597e-03;
    pub const RB1: f64 = -7.99283237680523006574e-01;
    pub const RB2: f64 = -1.77579549177547519889e+01;
    pub const RB3: f64 = -1.60636384855821916062e+02;
    pub const RB4: f64 = -6.37566443368389627722e+02;
    pub const RB5: f64 = -1.02509513161107724954e+03;
    pub const RB6: f64 = -4.83519191608651397019e+02;
    pub const SB1: f64 = 3.03380607434824582924e+01;
    pub const SB2: f64 = 3.25792512996573918826e+02;
    pub const SB3: f64 = 1.53672958608443695994e+03;
    pub const SB4: f64 = 3.19985821950859553908e+03;
    pub const SB5: f64 = 2.55305040643316442583e+03;
    pub const SB6: f64 = 4.74528541206955367215e+02;
    pub const SB7: f64 = -2.24409524465858183362e+01;
}
use cts::*;

const TINY: f64 = 1e-300;
const SMALL: f64 = 3.725_290_298_461_914e-9; // 2^-28

/// Error function, odd by construction: `erf(-x)` is the exact negation of
/// `erf(x)`.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x == f64::INFINITY {
        return 1.0;
    }
    if x == f64::NEG_INFINITY {
        return -1.0;
    }
    let sign = x.is_sign_negative();
    let x = x.abs();
    let r = if x < 0.84375 {
        if x < SMALL {
            if x < TINY {
                0.125 * (8.0 * x + EFX8 * x)
            } else {
                x + EFX * x
            }
        } else {
            let z = x * x;
            let p = PP0 + z * (PP1 + z * (PP2 + z * (PP3 + z * PP4)));
            let q = 1.0 + z * (QQ1 + z * (QQ2 + z * (QQ3 + z * (QQ4 + z * QQ5))));
            x + x * (p / q)
        }
    } else if x < 1.25 {
        let s = x - 1.0;
        let p = PA0 + s * (PA1 + s * (PA2 + s * (PA3 + s * (PA4 + s * (PA5 + s * PA6)))));
        let q = 1.0 + s * (QA1 + s * (QA2 + s * (QA3 + s * (QA4 + s * (QA5 + s * QA6)))));
        ERX + p / q
    } else if x >= 6.0 {
        1.0 - 1e-300
    } else {
        1.0 - erfc_tail(x)
    };
    if sign {
        -r
    } else {
        r
    }
}

/// Complementary error function `1 - erf(x)`, accurate in the far tail.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x == f64::INFINITY {
        return 0.0;
    }
    if x == f64::NEG_INFINITY {
        return 2.0;
    }
    let sign = x.is_sign_negative();
    let ax = x.abs();
    if ax < 0.84375 {
        let t = if ax < 1.387_778_780_781_445_7e-17 {
            ax
        } else {
            let z = ax * ax;
            let p = PP0 + z * (PP1 + z * (PP2 + z * (PP3 + z * PP4)));
            let q = 1.0 + z * (QQ1 + z * (QQ2 + z * (QQ3 + z * (QQ4 + z * QQ5))));
            let y = p / q;
            if ax < 0.25 {
                ax + ax * y
            } else {
                0.5 + (ax * y + (ax - 0.5))
            }
        };
        return if sign { 1.0 + t } else { 1.0 - t };
    }
    if ax < 1.25 {
        let s = ax - 1.0;
        let p = PA0 + s * (PA1 + s * (PA2 + s * (PA3 + s * (PA4 + s * (PA5 + s * PA6)))));
        let q = 1.0 + s * (QA1 + s * (QA2 + s * (QA3 + s * (QA4 + s * (QA5 + s * QA6)))));
        return if sign {
            1.0 + ERX + p / q
        } else {
            1.0 - ERX - p / q
        };
    }
    if ax < 28.0 {
        if sign && ax >= 6.0 {
            return 2.0 - TINY;
        }
        let r = erfc_tail(ax);
        return if sign { 2.0 - r } else { r };
    }
    if sign {
        2.0 - TINY
    } else {
        TINY * TINY
    }
}

// erfc on [1.25, 28) via the asymptotic rational fits.
fn erfc_tail(x: f64) -> f64 {
    let s = 1.0 / (x * x);
    let (r, q) = if x < 1.0 / 0.35 {
        (
            RA0 + s * (RA1 + s * (RA2 + s * (RA3 + s * (RA4 + s * (RA5 + s * (RA6 + s * RA7)))))),
            1.0 + s
                * (SA1
                    + s * (SA2
                        + s * (SA3 + s * (SA4 + s * (SA5 + s * (SA6 + s * (SA7 + s * SA8))))))),
        )
    } else {
        (
            RB0 + s * (RB1 + s * (RB2 + s * (RB3 + s * (RB4 + s * (RB5 + s * RB6))))),
            1.0 + s * (SB1 + s * (SB2 + s * (SB3 + s * (SB4 + s * (SB5 + s * (SB6 + s * SB7)))))),
        )
    };
    let z = f64::from_bits(x.to_bits() & 0xffff_ffff_0000_0000);
    let e = (-z * z - 0.5625).exp() * ((z - x) * (z + x) + r / q).exp();
    e / x
}

/// One-sided sequence of exponentially scaled modified Bessel values:
/// entry `k` holds `e^{-s} I_k(s)`. Symmetric in the order, `I_{-k} = I_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct BesselSequence {
    scale: f64,
    values: Vec<f64>,
}

impl BesselSequence {
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max_order(&self) -> usize {
        self.values.len() - 1
    }

    /// Value at order `k`, zero beyond the stored range.
    pub fn value(&self, k: usize) -> f64 {
        self.values.get(k).copied().unwrap_or(0.0)
    }

    /// `values[0] + 2 Σ_{k≥1} values[k]`; equals 1 up to the truncated tail.
    pub fn normalization(&self) -> f64 {
        self.values[0] + 2.0 * self.values[1..].iter().sum::<f64>()
    }
}

// Below this the sequence is an impulse to within f64 resolution.
const IMPULSE_SCALE: f64 = 1e-15;

/// Computes `e^{-s} I_k(s)` for `k = 0..=max_order` by backward recurrence.
pub fn scaled_bessel_i(s: f64, max_order: usize) -> Result<BesselSequence> {
    if !s.is_finite() || s < 0.0 {
        return Err(Error::InvalidScale {
            requirement: "nonnegative and finite",
            value: s,
        });
    }
    if s < IMPULSE_SCALE {
        let mut values = vec![0.0; max_order + 1];
        values[0] = 1.0;
        return Ok(BesselSequence { scale: s, values });
    }

    // Seed far above both the requested order and the turnover region near
    // k = s with an arbitrary tiny tail value; the recurrence amplifies the
    // minimal solution downward and the normalisation removes the seed
    // magnitude. Starting only 15 above the requested order loses digits
    // once s grows past the requested order, hence the scale-dependent
    // floor.
    let start = max_order.max((s + 6.0 * s.sqrt()).ceil() as usize) + 15;
    let mut values = vec![0.0; max_order + 1];
    let mut above = 0.0f64; // trial value at order k+1
    let mut cur = 1e-30f64; // trial value at order k (k = start)
    let mut tail = cur; // Σ_{k≥1} trial values
    for k in (1..=start).rev() {
        let below = above + (2.0 * k as f64 / s) * cur;
        above = cur;
        cur = below;
        if k >= 2 {
            tail += cur;
        }
        if k - 1 <= max_order {
            values[k - 1] = cur;
        }
        if cur > 1e250 {
            const DOWN: f64 = 1e-250;
            cur *= DOWN;
            above *= DOWN;
            tail *= DOWN;
            for v in &mut values {
                *v *= DOWN;
            }
        }
    }
    let norm = cur + 2.0 * tail;
    for v in &mut values {
        *v /= norm;
    }
    Ok(BesselSequence { scale: s, values })
}

/// Truncation order for the discrete Gaussian analogue at scale `s`: grows
/// until `e^{-s} I_N(s) < 1e-15`, never below `ceil(s + 10 sqrt(s) + 10)`.
pub fn tail_order(s: f64) -> usize {
    let s = s.max(0.0);
    let mut n = ((s + 10.0 * s.sqrt() + 10.0).ceil() as usize).max(1);
    loop {
        let seq = scaled_bessel_i(s, n).expect("nonnegative scale");
        if seq.value(n) < 1e-15 {
            return n;
        }
        n += 8;
    }
}
