//! 2-D grids, separable response evaluation and the four scale-normalised
//! feature detectors.
//!
//! Benchmarks only ever read detector values at the image center, so
//! [`ScaleSpace::center_jet`] evaluates the separable convolutions just
//! around the center instead of filtering the whole grid. Full-image
//! responses exist for rendering and for cross-checking the equivalent
//! kernels. For the central-difference schemes one smoothing result per
//! scale is shared by every derivative order, mirroring why those schemes
//! are cheap in the first place.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::diffops::{central_difference, convolve_1d, Boundary, Stencil, MAX_ORDER};
use crate::kernels1d::{method_kernel, smoothing_kernel, DiscreteKernel, Method};
use crate::{Error, Result};

/// Rectangular grid of finite reals, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Image2D {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl Image2D {
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 || data.len() != width * height {
            return Error::invalid(format!(
                "data length {} does not match {width}x{height}",
                data.len()
            ));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Error::invalid("image values must be finite");
        }
        Ok(Image2D {
            width,
            height,
            data,
        })
    }

    pub fn fill(width: usize, height: usize, value: f64) -> Result<Self> {
        Image2D::new(width, height, vec![value; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, y: usize) -> &[f64] {
        &self.data[y * self.width..(y + 1) * self.width]
    }

    pub fn at(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    /// Center pixel coordinates; exact for odd dimensions.
    pub fn center(&self) -> (usize, usize) {
        ((self.width - 1) / 2, (self.height - 1) / 2)
    }

    pub fn min_max(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &v in &self.data {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        (lo, hi)
    }

    /// Encodes a 16-bit binary PGM (P5, big-endian samples). Values are
    /// sign-folded: gray = 65535 * |v| / max|v|, as stated in the header
    /// comment.
    pub fn to_pgm16(&self, label: &str) -> Vec<u8> {
        let peak = self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut out = Vec::with_capacity(64 + 2 * self.data.len());
        out.extend_from_slice(
            format!(
                "P5\n# {label}; sign-folded: gray = 65535*|v|/{peak:e}\n{} {}\n65535\n",
                self.width, self.height
            )
            .as_bytes(),
        );
        for &v in &self.data {
            let g = if peak > 0.0 {
                (v.abs() / peak * 65535.0).round() as u16
            } else {
                0
            };
            out.extend_from_slice(&g.to_be_bytes());
        }
        out
    }
}

/// Convolves every row (the x direction) with the stencil.
pub fn convolve_rows<K: Stencil + ?Sized>(
    image: &Image2D,
    kernel: &K,
    boundary: Boundary,
) -> Result<Image2D> {
    let mut data = Vec::new();
    let mut out_width = 0;
    for y in 0..image.height {
        let row = convolve_1d(image.row(y), kernel, boundary)?;
        out_width = row.len();
        data.extend_from_slice(&row);
    }
    Image2D::new(out_width, image.height, data)
}

/// Convolves every column (the y direction) with the stencil.
pub fn convolve_cols<K: Stencil + ?Sized>(
    image: &Image2D,
    kernel: &K,
    boundary: Boundary,
) -> Result<Image2D> {
    let mut col = vec![0.0; image.height];
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(image.width);
    for x in 0..image.width {
        for (y, slot) in col.iter_mut().enumerate() {
            *slot = image.at(x, y);
        }
        out.push(convolve_1d(&col, kernel, boundary)?);
    }
    let out_height = out[0].len();
    let mut data = vec![0.0; image.width * out_height];
    for (x, col) in out.iter().enumerate() {
        for (y, &v) in col.iter().enumerate() {
            data[y * image.width + x] = v;
        }
    }
    Image2D::new(image.width, out_height, data)
}

/// Scale-normalised differential feature detectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Detector {
    /// `s (Lxx + Lyy)`, minimum over scale on a bright blob.
    #[serde(rename = "laplacian")]
    LaplacianBlob,
    /// `s^2 (Lxx Lyy - Lxy^2)`, maximum over scale.
    #[serde(rename = "dethessian")]
    DetHessianBlob,
    /// `s^{gamma/2} |grad L|` with gamma = 1/2, maximum over scale.
    #[serde(rename = "gradmag")]
    GradMagEdge,
    /// `s^gamma Lpp` with gamma = 3/4, minimum over scale on a bright ridge.
    #[serde(rename = "ridge")]
    PrincCurvRidge,
}

/// Which extremum over scale a detector selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Min,
    Max,
}

impl Detector {
    pub const ALL: [Detector; 4] = [
        Detector::LaplacianBlob,
        Detector::DetHessianBlob,
        Detector::GradMagEdge,
        Detector::PrincCurvRidge,
    ];

    pub fn gamma(self) -> f64 {
        match self {
            Detector::LaplacianBlob | Detector::DetHessianBlob => 1.0,
            Detector::GradMagEdge => 0.5,
            Detector::PrincCurvRidge => 0.75,
        }
    }

    pub fn polarity(self) -> Polarity {
        match self {
            Detector::LaplacianBlob | Detector::PrincCurvRidge => Polarity::Min,
            Detector::DetHessianBlob | Detector::GradMagEdge => Polarity::Max,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Detector::LaplacianBlob => "laplacian",
            Detector::DetHessianBlob => "dethessian",
            Detector::GradMagEdge => "gradmag",
            Detector::PrincCurvRidge => "ridge",
        }
    }
}

impl fmt::Display for Detector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Detector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "laplacian" => Ok(Detector::LaplacianBlob),
            "dethessian" => Ok(Detector::DetHessianBlob),
            "gradmag" => Ok(Detector::GradMagEdge),
            "ridge" => Ok(Detector::PrincCurvRidge),
            other => Error::invalid(format!("unknown detector '{other}'")),
        }
    }
}

/// All derivatives up to order two at the image center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CenterJet {
    pub lx: f64,
    pub ly: f64,
    pub lxx: f64,
    pub lxy: f64,
    pub lyy: f64,
}

/// Response evaluator for one image and one discretisation scheme, with a
/// per-scale smoothing cache (bounded by the number of distinct scales
/// requested, i.e. the search levels).
pub struct ScaleSpace<'a> {
    image: &'a Image2D,
    method: Method,
    smoothed: Mutex<HashMap<(u64, Boundary), Arc<Image2D>>>,
}

impl<'a> ScaleSpace<'a> {
    pub fn new(image: &'a Image2D, method: Method) -> Self {
        ScaleSpace {
            image,
            method,
            smoothed: Mutex::new(HashMap::new()),
        }
    }

    pub fn image(&self) -> &Image2D {
        self.image
    }

    pub fn method(&self) -> Method {
        self.method
    }

    fn smoothing(&self, s: f64) -> Result<DiscreteKernel> {
        smoothing_kernel(self.method.smoothing(), s)
    }

    fn smoothed_full(&self, s: f64, boundary: Boundary) -> Result<Arc<Image2D>> {
        let key = (s.to_bits(), boundary);
        if let Some(hit) = self.smoothed.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let kernel = self.smoothing(s)?;
        let smoothed = convolve_cols(
            &convolve_rows(self.image, &kernel, boundary)?,
            &kernel,
            boundary,
        )?;
        let arc = Arc::new(smoothed);
        self.smoothed.lock().unwrap().insert(key, arc.clone());
        Ok(arc)
    }

    /// Full-image response with the scheme's 1-D kernels applied along x and
    /// y. Central-difference schemes smooth once per scale (cached) and then
    /// apply the cheap difference taps per order.
    pub fn derivative(
        &self,
        order_x: u32,
        order_y: u32,
        s: f64,
        boundary: Boundary,
    ) -> Result<Image2D> {
        check_orders(order_x, order_y)?;
        if self.method.uses_central_differences() {
            let smoothed = self.smoothed_full(s, boundary)?;
            let mut out = (*smoothed).clone();
            if order_x > 0 {
                out = convolve_rows(&out, &central_difference(order_x)?, boundary)?;
            }
            if order_y > 0 {
                out = convolve_cols(&out, &central_difference(order_y)?, boundary)?;
            }
            Ok(out)
        } else {
            let kx = method_kernel(self.method, s, order_x)?;
            let ky = method_kernel(self.method, s, order_y)?;
            convolve_cols(&convolve_rows(self.image, &kx, boundary)?, &ky, boundary)
        }
    }

    /// First- and second-order derivatives at the image center, evaluated
    /// on a minimal neighbourhood under strict boundary handling.
    pub fn center_jet(&self, s: f64) -> Result<CenterJet> {
        if self.method.uses_central_differences() {
            self.jet_via_differences(s)
        } else {
            self.jet_via_direct_kernels(s)
        }
    }

    fn jet_via_differences(&self, s: f64) -> Result<CenterJet> {
        let t = self.smoothing(s)?;
        let r = t.radius();
        let (cx, cy) = self.image.center();
        let need = r + 1;
        if cx < need || cy < need || cx + need >= self.image.width || cy + need >= self.image.height
        {
            return Err(Error::ImageTooSmall {
                width: self.image.width,
                height: self.image.height,
                radius: need,
            });
        }
        let taps = t.coeffs();

        // x-smoothed samples at columns cx-1..=cx+1 for all rows the y pass
        // reaches, then the y pass for the 3x3 smoothed patch
        let rows = 2 * r + 3;
        let mut xs = [vec![0.0; rows], vec![0.0; rows], vec![0.0; rows]];
        for (du, buf) in xs.iter_mut().enumerate() {
            let u = cx + du - 1;
            for (ri, slot) in buf.iter_mut().enumerate() {
                let y = cy + ri - r - 1;
                let row = self.image.row(y);
                let mut acc = 0.0;
                for (idx, &c) in taps.iter().enumerate() {
                    acc += c * row[u + r - idx]; // position u - (idx - r)
                }
                *slot = acc;
            }
        }
        let mut patch = [[0.0f64; 3]; 3]; // patch[u+1][v+1]
        for (du, buf) in xs.iter().enumerate() {
            for dv in 0..3 {
                let mut acc = 0.0;
                for (idx, &c) in taps.iter().enumerate() {
                    // row index of y = (cy + dv - 1) - (idx - r)
                    acc += c * buf[dv + 2 * r - idx];
                }
                patch[du][dv] = acc;
            }
        }

        let d1 = central_difference(1)?;
        let d2 = central_difference(2)?;
        let along_x = |d: &crate::diffops::DifferenceOp| -> f64 {
            (-1..=1).map(|k| d.at(k) * patch[(1 - k) as usize][1]).sum()
        };
        let along_y = |d: &crate::diffops::DifferenceOp| -> f64 {
            (-1..=1).map(|k| d.at(k) * patch[1][(1 - k) as usize]).sum()
        };
        let mut lxy = 0.0;
        for k in -1..=1isize {
            for m in -1..=1isize {
                lxy += d1.at(k) * d1.at(m) * patch[(1 - k) as usize][(1 - m) as usize];
            }
        }
        Ok(CenterJet {
            lx: along_x(&d1),
            ly: along_y(&d1),
            lxx: along_x(&d2),
            lxy,
            lyy: along_y(&d2),
        })
    }

    fn jet_via_direct_kernels(&self, s: f64) -> Result<CenterJet> {
        let k0 = method_kernel(self.method, s, 0)?;
        let k1 = method_kernel(self.method, s, 1)?;
        let k2 = method_kernel(self.method, s, 2)?;
        Ok(CenterJet {
            lx: self.center_separable(&k1, &k0)?,
            ly: self.center_separable(&k0, &k1)?,
            lxx: self.center_separable(&k2, &k0)?,
            lxy: self.center_separable(&k1, &k1)?,
            lyy: self.center_separable(&k0, &k2)?,
        })
    }

    fn center_separable(&self, kx: &DiscreteKernel, ky: &DiscreteKernel) -> Result<f64> {
        let (cx, cy) = self.image.center();
        let rx = kx.radius();
        let ry = ky.radius();
        if cx < rx || cy < ry || cx + rx >= self.image.width || cy + ry >= self.image.height {
            return Err(Error::ImageTooSmall {
                width: self.image.width,
                height: self.image.height,
                radius: rx.max(ry),
            });
        }
        let mut acc = 0.0;
        for (jdx, &cyv) in ky.coeffs().iter().enumerate() {
            let y = cy + ry - jdx; // y = cy - (jdx - ry)
            let row = self.image.row(y);
            let mut inner = 0.0;
            for (idx, &cxv) in kx.coeffs().iter().enumerate() {
                inner += cxv * row[cx + rx - idx];
            }
            acc += cyv * inner;
        }
        Ok(acc)
    }

    /// `s (Lxx + Lyy)` at the center.
    pub fn laplacian_norm(&self, s: f64) -> Result<f64> {
        let j = self.center_jet(s)?;
        Ok(s * (j.lxx + j.lyy))
    }

    /// `s^2 (Lxx Lyy - Lxy^2)` at the center.
    pub fn dethessian_norm(&self, s: f64) -> Result<f64> {
        let j = self.center_jet(s)?;
        Ok(s * s * (j.lxx * j.lyy - j.lxy * j.lxy))
    }

    /// `s^{1/4} sqrt(Lx^2 + Ly^2)` at the center.
    pub fn gradmag_norm(&self, s: f64) -> Result<f64> {
        let j = self.center_jet(s)?;
        Ok(s.powf(0.25) * (j.lx * j.lx + j.ly * j.ly).sqrt())
    }

    /// `s^{3/4} (Lxx + Lyy - sqrt((Lxx - Lyy)^2 + 4 Lxy^2))` at the center.
    pub fn ridge_strength_norm(&self, s: f64) -> Result<f64> {
        let j = self.center_jet(s)?;
        let root = ((j.lxx - j.lyy) * (j.lxx - j.lyy) + 4.0 * j.lxy * j.lxy).sqrt();
        Ok(s.powf(0.75) * (j.lxx + j.lyy - root))
    }

    pub fn detector_norm(&self, detector: Detector, s: f64) -> Result<f64> {
        match detector {
            Detector::LaplacianBlob => self.laplacian_norm(s),
            Detector::DetHessianBlob => self.dethessian_norm(s),
            Detector::GradMagEdge => self.gradmag_norm(s),
            Detector::PrincCurvRidge => self.ridge_strength_norm(s),
        }
    }

    /// Full-image detector response for rendering; replicating boundaries
    /// keep the output the same size as the input.
    pub fn detector_response_image(&self, detector: Detector, s: f64) -> Result<Image2D> {
        let b = Boundary::Replicate;
        match detector {
            Detector::LaplacianBlob => {
                let lxx = self.derivative(2, 0, s, b)?;
                let lyy = self.derivative(0, 2, s, b)?;
                combine(&lxx, &lyy, |xx, yy| s * (xx + yy))
            }
            Detector::DetHessianBlob => {
                let lxx = self.derivative(2, 0, s, b)?;
                let lyy = self.derivative(0, 2, s, b)?;
                let lxy = self.derivative(1, 1, s, b)?;
                combine3(&lxx, &lyy, &lxy, |xx, yy, xy| s * s * (xx * yy - xy * xy))
            }
            Detector::GradMagEdge => {
                let lx = self.derivative(1, 0, s, b)?;
                let ly = self.derivative(0, 1, s, b)?;
                combine(&lx, &ly, |x, y| s.powf(0.25) * (x * x + y * y).sqrt())
            }
            Detector::PrincCurvRidge => {
                let lxx = self.derivative(2, 0, s, b)?;
                let lyy = self.derivative(0, 2, s, b)?;
                let lxy = self.derivative(1, 1, s, b)?;
                combine3(&lxx, &lyy, &lxy, |xx, yy, xy| {
                    s.powf(0.75) * (xx + yy - ((xx - yy) * (xx - yy) + 4.0 * xy * xy).sqrt())
                })
            }
        }
    }
}

fn check_orders(order_x: u32, order_y: u32) -> Result<()> {
    for order in [order_x, order_y] {
        if order > MAX_ORDER {
            return Err(Error::OrderOutOfRange {
                order,
                min: 0,
                max: MAX_ORDER,
            });
        }
    }
    Ok(())
}

fn combine(a: &Image2D, b: &Image2D, f: impl Fn(f64, f64) -> f64) -> Result<Image2D> {
    let data = a
        .data()
        .iter()
        .zip(b.data())
        .map(|(&x, &y)| f(x, y))
        .collect();
    Image2D::new(a.width(), a.height(), data)
}

fn combine3(
    a: &Image2D,
    b: &Image2D,
    c: &Image2D,
    f: impl Fn(f64, f64, f64) -> f64,
) -> Result<Image2D> {
    let data = a
        .data()
        .iter()
        .zip(b.data())
        .zip(c.data())
        .map(|((&x, &y), &z)| f(x, y, z))
        .collect();
    Image2D::new(a.width(), a.height(), data)
}
