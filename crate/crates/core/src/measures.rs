//! Spatial spread of derivative-approximation kernels and its offset from
//! the continuous Gaussian-derivative reference.
//!
//! The spread of a kernel is the square root of the variance of its
//! absolute coefficients. The continuous reference is obtained by adaptive
//! quadrature of `|g_{x^order}(.; s)|`, split at the known kernel zeros so
//! every sub-integrand is smooth.

use crate::kernels1d::{gauss_derivative, method_kernel, Method};
use crate::{Error, Result};

/// One spread measurement for a scheme at one order and scale.
#[derive(Debug, Clone, PartialEq)]
pub struct SpreadReport {
    pub method: Method,
    pub order: u32,
    /// `sigma = sqrt(s)`, in grid units.
    pub sigma: f64,
    /// Discrete spread of the scheme's (equivalent) kernel.
    pub spread: f64,
    /// `spread` minus the continuous reference spread.
    pub offset: f64,
}

/// Variance of the absolute values of a kernel's coefficients.
pub fn discrete_abs_variance(kernel: &impl crate::diffops::Stencil) -> Result<f64> {
    let r = kernel.radius() as f64;
    let mut mass = 0.0;
    let mut first = 0.0;
    let mut second = 0.0;
    for (i, &c) in kernel.coeffs().iter().enumerate() {
        let n = i as f64 - r;
        let a = c.abs();
        mass += a;
        first += n * a;
        second += n * n * a;
    }
    if mass == 0.0 {
        return Err(Error::ZeroKernel);
    }
    let mean = first / mass;
    Ok(second / mass - mean * mean)
}

// Positive zeros of the Hermite factor of g_{x^order}.
fn positive_zeros(order: u32, s: f64) -> Vec<f64> {
    match order {
        0 | 1 => vec![],
        2 => vec![s.sqrt()],
        3 => vec![(3.0 * s).sqrt()],
        4 => {
            let r6 = 6.0f64.sqrt();
            vec![(s * (3.0 - r6)).sqrt(), (s * (3.0 + r6)).sqrt()]
        }
        _ => unreachable!(),
    }
}

fn simpson_estimate(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adapt(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson_estimate(a, m, fa, flm, fm);
    let right = simpson_estimate(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

// Composite pre-pass pins down the integral's magnitude so the adaptive
// tolerance is relative to the result rather than to a guess; the adaptive
// stage then refines each panel of a smooth integrand in a few levels.
fn adaptive_quadrature(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    const PANELS: usize = 16;
    let h = (b - a) / PANELS as f64;
    let mut crude = 0.0;
    for i in 0..PANELS {
        let (pa, pb) = (a + i as f64 * h, a + (i + 1) as f64 * h);
        crude += simpson_estimate(pa, pb, f(pa), f(0.5 * (pa + pb)), f(pb));
    }
    let tol = crude.abs().max(f64::MIN_POSITIVE * 1e20) * 1e-12 / PANELS as f64;
    let mut total = 0.0;
    for i in 0..PANELS {
        let (pa, pb) = (a + i as f64 * h, a + (i + 1) as f64 * h);
        let m = 0.5 * (pa + pb);
        let (fa, fm, fb) = (f(pa), f(m), f(pb));
        let whole = simpson_estimate(pa, pb, fa, fm, fb);
        total += adapt(&f, pa, pb, fa, fm, fb, whole, tol, 36);
    }
    total
}

/// Spread `sqrt(V(|g_{x^order}(.; s)|))` of the continuous Gaussian
/// derivative; the mean term vanishes by symmetry.
pub fn continuous_abs_spread(order: u32, s: f64) -> Result<f64> {
    if order > crate::diffops::MAX_ORDER {
        return Err(Error::OrderOutOfRange {
            order,
            min: 0,
            max: crate::diffops::MAX_ORDER,
        });
    }
    if !s.is_finite() || s <= 0.0 {
        return Err(Error::InvalidScale {
            requirement: "positive and finite",
            value: s,
        });
    }
    let sigma = s.sqrt();
    let mut cuts = vec![0.0];
    cuts.extend(positive_zeros(order, s));
    cuts.push(14.0 * sigma);

    let mut mass = 0.0;
    let mut second = 0.0;
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        mass += adaptive_quadrature(|x| gauss_derivative(x, s, order).abs(), a, b);
        second += adaptive_quadrature(|x| x * x * gauss_derivative(x, s, order).abs(), a, b);
    }
    Ok((second / mass).sqrt())
}

/// Discrete spread and continuous offset for a scheme at one order/scale.
pub fn spread_report(method: Method, order: u32, s: f64) -> Result<SpreadReport> {
    let kernel = method_kernel(method, s, order)?;
    let spread = discrete_abs_variance(&kernel)?.sqrt();
    let reference = continuous_abs_spread(order, s)?;
    Ok(SpreadReport {
        method,
        order,
        sigma: s.sqrt(),
        spread,
        offset: spread - reference,
    })
}
