//! Discrete model signals whose inherent scale a selector should recover:
//! blobs, diffuse edges and ridges, each generated with the smoothing
//! kernel conceptually matched to the scheme under evaluation so that the
//! benchmark measures internal consistency rather than an arbitrary ground
//! truth.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diffops::Stencil;
use crate::grid2d::{Detector, Image2D};
use crate::kernels1d::{default_radius, smoothing_kernel, DiscreteKernel, Method, SmoothingKernel};
use crate::specfun;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelKind {
    #[serde(rename = "blob")]
    Blob,
    #[serde(rename = "edge")]
    Edge,
    #[serde(rename = "ridge")]
    Ridge,
}

impl ModelKind {
    pub const ALL: [ModelKind; 3] = [ModelKind::Blob, ModelKind::Edge, ModelKind::Ridge];

    /// The model a detector is benchmarked on.
    pub fn for_detector(detector: Detector) -> ModelKind {
        match detector {
            Detector::LaplacianBlob | Detector::DetHessianBlob => ModelKind::Blob,
            Detector::GradMagEdge => ModelKind::Edge,
            Detector::PrincCurvRidge => ModelKind::Ridge,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            ModelKind::Blob => "blob",
            ModelKind::Edge => "edge",
            ModelKind::Ridge => "ridge",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "blob" => Ok(ModelKind::Blob),
            "edge" => Ok(ModelKind::Edge),
            "ridge" => Ok(ModelKind::Ridge),
            other => Error::invalid(format!("unknown model kind '{other}'")),
        }
    }
}

/// Description of one discrete model signal.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    pub kind: ModelKind,
    /// Inherent scale in length units; the generation scale is `sigma0^2`.
    pub sigma0: f64,
    /// Scheme under evaluation; fixes the matched smoothing kernel.
    pub method: Method,
    /// Odd side length of the generated image.
    pub size: usize,
}

impl ModelSpec {
    pub fn new(kind: ModelKind, sigma0: f64, method: Method, size: usize) -> Result<Self> {
        if !sigma0.is_finite() || sigma0 <= 0.0 {
            return Err(Error::InvalidScale {
                requirement: "positive and finite",
                value: sigma0,
            });
        }
        if size.is_multiple_of(2) || size < 3 {
            return Error::invalid(format!("model size must be odd and >= 3, got {size}"));
        }
        Ok(ModelSpec {
            kind,
            sigma0,
            method,
            size,
        })
    }

    /// Model sized for a scale search up to `sigma_search_max`, so strict
    /// center evaluation never touches a boundary at any search level.
    pub fn benchmark(
        kind: ModelKind,
        sigma0: f64,
        method: Method,
        sigma_search_max: f64,
    ) -> Result<Self> {
        let size = benchmark_size(method, sigma0, sigma_search_max);
        ModelSpec::new(kind, sigma0, method, size)
    }

    pub fn generate(&self) -> Result<Image2D> {
        match self.kind {
            ModelKind::Blob => make_blob(self),
            ModelKind::Edge => make_edge(self),
            ModelKind::Ridge => make_ridge(self),
        }
    }

    fn matched_kernel(&self) -> Result<DiscreteKernel> {
        smoothing_kernel(self.method.smoothing(), self.sigma0 * self.sigma0)
    }

    fn check_margin(&self, radius: usize) -> Result<usize> {
        let margin = (self.size - 1) / 2;
        if radius > margin {
            return Err(Error::ImageTooSmall {
                width: self.size,
                height: self.size,
                radius,
            });
        }
        Ok(margin)
    }
}

/// Side length that guarantees strict boundary validity at the center for
/// every search scale: the classical `2 ceil(6 (sigma0 + sigma_max)) + 1`
/// enlarged, when necessary, to the scheme's largest pipeline radius at the
/// top search scale (the Bessel tail rule exceeds `6 sigma` by a wide
/// margin, so the discrete-analogue scheme needs bigger grids).
pub fn benchmark_size(method: Method, sigma0: f64, sigma_search_max: f64) -> usize {
    let s_max = sigma_search_max * sigma_search_max;
    let mut margin = (6.0 * (sigma0 + sigma_search_max)).ceil() as usize;
    let pipeline = if method.uses_central_differences() {
        let r = match method.smoothing() {
            SmoothingKernel::DiscGauss => specfun::tail_order(s_max),
            _ => default_radius(s_max, 0),
        };
        r + 2
    } else {
        default_radius(s_max, 2)
    };
    margin = margin.max(pipeline);
    2 * margin + 1
}

/// 2-D discrete delta smoothed separably at `sigma0^2` with the matched
/// kernel; the separable product of the 1-D kernel row with itself.
pub fn make_blob(spec: &ModelSpec) -> Result<Image2D> {
    if spec.kind != ModelKind::Blob {
        return Error::invalid("spec does not describe a blob");
    }
    let kernel = spec.matched_kernel()?;
    let row = centered_row(spec, &kernel)?;
    let n = spec.size;
    let mut data = vec![0.0; n * n];
    for y in 0..n {
        let ky = row[y];
        if ky == 0.0 {
            continue;
        }
        for x in 0..n {
            data[y * n + x] = ky * row[x];
        }
    }
    Image2D::new(n, n, data)
}

/// Ideal step edge (values -1/2, 0, +1/2) replicated along y and smoothed
/// along x only. Convolution terms are paired symmetrically so the exact
/// antisymmetry of the profile survives in floating point.
pub fn make_edge(spec: &ModelSpec) -> Result<Image2D> {
    if spec.kind != ModelKind::Edge {
        return Error::invalid("spec does not describe an edge");
    }
    let kernel = spec.matched_kernel()?;
    let r = kernel.radius();
    spec.check_margin(r)?;
    let n = spec.size;
    let c = (n - 1) as isize / 2;
    let step = |x: isize| -> f64 {
        match x.cmp(&c) {
            std::cmp::Ordering::Less => -0.5,
            std::cmp::Ordering::Equal => 0.0,
            std::cmp::Ordering::Greater => 0.5,
        }
    };
    let mut profile = vec![0.0; n];
    for (x, slot) in profile.iter_mut().enumerate() {
        let x = x as isize;
        let mut acc = kernel.at(0) * step(x);
        for k in 1..=r as isize {
            // replicate: the step is constant beyond the grid anyway
            acc += kernel.at(k) * (step(x - k) + step(x + k));
        }
        *slot = acc;
    }
    replicate_rows(&profile, n)
}

/// 1-D discrete delta along x replicated along y, smoothed along x only:
/// every row is the matched kernel itself.
pub fn make_ridge(spec: &ModelSpec) -> Result<Image2D> {
    if spec.kind != ModelKind::Ridge {
        return Error::invalid("spec does not describe a ridge");
    }
    let kernel = spec.matched_kernel()?;
    let profile = centered_row(spec, &kernel)?;
    replicate_rows(&profile, spec.size)
}

fn centered_row(spec: &ModelSpec, kernel: &DiscreteKernel) -> Result<Vec<f64>> {
    let margin = spec.check_margin(kernel.radius())? as isize;
    let mut row = vec![0.0; spec.size];
    for (x, slot) in row.iter_mut().enumerate() {
        *slot = kernel.at(x as isize - margin);
    }
    Ok(row)
}

fn replicate_rows(profile: &[f64], height: usize) -> Result<Image2D> {
    let mut data = Vec::with_capacity(profile.len() * height);
    for _ in 0..height {
        data.extend_from_slice(profile);
    }
    Image2D::new(profile.len(), height, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels1d::disc_gaussian;

    #[test]
    fn blob_mass_and_center_value() {
        let spec = ModelSpec::new(ModelKind::Blob, 1.0, Method::DiscAnalogueCd, 65).unwrap();
        let img = make_blob(&spec).unwrap();
        let mass: f64 = img.data().iter().sum();
        assert!((mass - 1.0).abs() < 1e-8);
        let (cx, cy) = img.center();
        // separable square of e^{-1} I_0(1)
        assert!((img.at(cx, cy) - 0.216_932_012_065_781_86).abs() < 1e-10);
        assert!((img.at(cx, cy) - 0.216_93).abs() < 1e-5);
    }

    #[test]
    fn blob_collapses_to_impulse_at_tiny_scale() {
        let spec = ModelSpec::new(ModelKind::Blob, 1e-9, Method::DiscAnalogueCd, 33).unwrap();
        let img = make_blob(&spec).unwrap();
        let (cx, cy) = img.center();
        assert!((img.at(cx, cy) - 1.0).abs() < 1e-12);
        assert!(img.at(cx + 1, cy).abs() < 1e-8);
    }

    #[test]
    fn blob_semigroup_only_for_disc_gaussian() {
        use crate::diffops::Boundary;
        use crate::grid2d::{convolve_cols, convolve_rows};
        let s_extra = 1.5;
        let spec = ModelSpec::new(ModelKind::Blob, 1.0, Method::DiscAnalogueCd, 97).unwrap();
        let img = spec.generate().unwrap();
        let k = disc_gaussian(s_extra).unwrap();
        let smoothed = convolve_cols(
            &convolve_rows(&img, &k, Boundary::Replicate).unwrap(),
            &k,
            Boundary::Replicate,
        )
        .unwrap();
        let combined = ModelSpec::new(
            ModelKind::Blob,
            (1.0f64 + s_extra).sqrt(),
            Method::DiscAnalogueCd,
            97,
        )
        .unwrap()
        .generate()
        .unwrap();
        for (a, b) in smoothed.data().iter().zip(combined.data()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn edge_profile_symmetries_are_exact() {
        for method in Method::ALL {
            let spec = ModelSpec::new(ModelKind::Edge, 0.7, method, 65).unwrap();
            let img = make_edge(&spec).unwrap();
            let (cx, cy) = img.center();
            assert_eq!(img.at(cx, cy), 0.0, "{method:?}");
            for k in 1..=cx {
                let pos = img.at(cx + k, cy);
                let neg = img.at(cx - k, cy);
                assert_eq!(pos.to_bits(), (-neg).to_bits(), "{method:?} k={k}");
            }
        }
    }

    #[test]
    fn edge_far_field_reaches_half_for_unit_mass_kernels() {
        for method in [
            Method::IntegratedDer,
            Method::DiscAnalogueCd,
            Method::HybridSampledCd,
            Method::HybridIntCd,
        ] {
            let spec = ModelSpec::new(ModelKind::Edge, 1.0, method, 65).unwrap();
            let img = make_edge(&spec).unwrap();
            assert!((img.at(0, 3) + 0.5).abs() < 1e-8, "{method:?}");
            assert!((img.at(64, 3) - 0.5).abs() < 1e-8, "{method:?}");
        }
    }

    #[test]
    fn ridge_rows_are_identical_and_unit_mass() {
        let spec = ModelSpec::new(ModelKind::Ridge, 1.0, Method::HybridIntCd, 65).unwrap();
        let img = make_ridge(&spec).unwrap();
        for y in 1..img.height() {
            assert_eq!(img.row(0), img.row(y));
        }
        let row_mass: f64 = img.row(0).iter().sum();
        assert!((row_mass - 1.0).abs() < 1e-8);
        let (cx, cy) = img.center();
        let spec_disc = ModelSpec::new(ModelKind::Ridge, 1.0, Method::DiscAnalogueCd, 65).unwrap();
        let disc = make_ridge(&spec_disc).unwrap();
        assert!((disc.at(cx, cy) - 0.465_759_61).abs() < 1e-8);
    }

    #[test]
    fn undersized_models_are_rejected() {
        let spec = ModelSpec::new(ModelKind::Blob, 3.0, Method::DiscAnalogueCd, 33).unwrap();
        assert!(matches!(make_blob(&spec), Err(Error::ImageTooSmall { .. })));
        assert!(ModelSpec::new(ModelKind::Blob, 1.0, Method::SampledDer, 32).is_err());
        assert!(ModelSpec::new(ModelKind::Blob, 0.0, Method::SampledDer, 33).is_err());
    }

    #[test]
    fn benchmark_size_covers_pipeline_radii() {
        // the discrete analogue needs the Bessel tail radius at the top
        // search scale; the others stay at the 6-sigma rule
        let disc = benchmark_size(Method::DiscAnalogueCd, 1.0 / 3.0, 5.0);
        assert!(disc > 2 * (specfun::tail_order(25.0) + 2));
        let direct = benchmark_size(Method::SampledDer, 1.0 / 3.0, 5.0);
        assert_eq!(direct, 2 * 32 + 1); // margin 32 from the 6(sigma0+5) rule; radius 32 fits exactly
    }

    #[test]
    fn kind_maps_to_detector_models() {
        assert_eq!(
            ModelKind::for_detector(Detector::LaplacianBlob),
            ModelKind::Blob
        );
        assert_eq!(
            ModelKind::for_detector(Detector::DetHessianBlob),
            ModelKind::Blob
        );
        assert_eq!(
            ModelKind::for_detector(Detector::GradMagEdge),
            ModelKind::Edge
        );
        assert_eq!(
            ModelKind::for_detector(Detector::PrincCurvRidge),
            ModelKind::Ridge
        );
    }
}
