//! Scale search over logarithmic grids: detector signatures at the image
//! center, extremum selection with parabolic refinement in log sigma, and
//! the relative scale-estimation error.

use crate::grid2d::{Detector, Image2D, Polarity, ScaleSpace};
use crate::kernels1d::Method;
use crate::signals::ModelSpec;
use crate::{Error, Result};

/// Logarithmically spaced sigma values, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleGrid {
    sigma_min: f64,
    sigma_max: f64,
    values: Vec<f64>,
}

impl ScaleGrid {
    pub fn new(sigma_min: f64, sigma_max: f64, levels: usize) -> Result<Self> {
        if !sigma_min.is_finite()
            || !sigma_max.is_finite()
            || sigma_min <= 0.0
            || sigma_max <= sigma_min
        {
            return Error::invalid(format!(
                "need 0 < sigma_min < sigma_max, got [{sigma_min}, {sigma_max}]"
            ));
        }
        if levels < 2 {
            return Error::invalid("a scale grid needs at least two levels");
        }
        let log_min = sigma_min.ln();
        let log_max = sigma_max.ln();
        let step = (log_max - log_min) / (levels - 1) as f64;
        let mut values: Vec<f64> = (0..levels)
            .map(|i| (log_min + i as f64 * step).exp())
            .collect();
        values[0] = sigma_min;
        values[levels - 1] = sigma_max;
        Ok(ScaleGrid {
            sigma_min,
            sigma_max,
            values,
        })
    }

    pub fn sigma_min(&self) -> f64 {
        self.sigma_min
    }

    pub fn sigma_max(&self) -> f64 {
        self.sigma_max
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Constant spacing in log sigma.
    pub fn log_step(&self) -> f64 {
        (self.sigma_max.ln() - self.sigma_min.ln()) / (self.len() - 1) as f64
    }
}

/// Detector response at the image center for every grid level.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleSignature {
    grid: ScaleGrid,
    values: Vec<f64>,
}

impl ScaleSignature {
    pub fn new(grid: ScaleGrid, values: Vec<f64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Error::invalid("signature length must match its grid");
        }
        Ok(ScaleSignature { grid, values })
    }

    pub fn grid(&self) -> &ScaleGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Selected scale, refined by parabolic interpolation when the extremum is
/// interior.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleEstimate {
    pub sigma_hat: f64,
    pub level_index: usize,
    pub interpolated: bool,
}

/// Evaluates the detector's scale-normalised response at the image center
/// of the spec's model for every level of the grid.
pub fn scale_signature(
    spec: &ModelSpec,
    detector: Detector,
    grid: &ScaleGrid,
) -> Result<ScaleSignature> {
    let image = spec.generate()?;
    signature_on_image(&image, spec.method, detector, grid)
}

/// Same as [`scale_signature`] for an already generated image.
pub fn signature_on_image(
    image: &Image2D,
    method: Method,
    detector: Detector,
    grid: &ScaleGrid,
) -> Result<ScaleSignature> {
    let space = ScaleSpace::new(image, method);
    let mut values = Vec::with_capacity(grid.len());
    for &sigma in grid.values() {
        values.push(space.detector_norm(detector, sigma * sigma)?);
    }
    ScaleSignature::new(grid.clone(), values)
}

/// Picks the extremum of the requested polarity. Interior extrema win over
/// endpoint values; among several interior extrema the one of largest
/// absolute response is chosen and refined by a parabola through the three
/// surrounding (log sigma, value) points. A monotone signature yields the
/// endpoint, unrefined; a flat signature has no extremum.
pub fn select_scale(signature: &ScaleSignature, polarity: Polarity) -> Result<ScaleEstimate> {
    let v = signature.values();
    if v.len() < 2 || v.iter().all(|x| x == &v[0]) {
        return Err(Error::NoExtremum);
    }
    let better = |a: f64, b: f64| match polarity {
        Polarity::Min => a < b,
        Polarity::Max => a > b,
    };

    let mut best_interior: Option<usize> = None;
    for i in 1..v.len() - 1 {
        if better(v[i], v[i - 1]) && better(v[i], v[i + 1]) {
            let replace = match best_interior {
                None => true,
                Some(j) => v[i].abs() > v[j].abs(),
            };
            if replace {
                best_interior = Some(i);
            }
        }
    }

    let grid = signature.grid();
    match best_interior {
        Some(i) => {
            let (ym, y0, yp) = (v[i - 1], v[i], v[i + 1]);
            let den = ym - 2.0 * y0 + yp;
            let offset = if den == 0.0 {
                0.0
            } else {
                0.5 * (ym - yp) / den
            };
            let sigma_hat = (grid.values()[i].ln() + offset * grid.log_step()).exp();
            Ok(ScaleEstimate {
                sigma_hat,
                level_index: i,
                interpolated: true,
            })
        }
        None => {
            let mut idx = 0;
            for i in 1..v.len() {
                if better(v[i], v[idx]) {
                    idx = i;
                }
            }
            Ok(ScaleEstimate {
                sigma_hat: grid.values()[idx],
                level_index: idx,
                interpolated: false,
            })
        }
    }
}

/// Relative scale-estimation error `sigma_hat / sigma_ref - 1`.
pub fn relative_error(sigma_hat: f64, sigma_ref: f64) -> f64 {
    debug_assert!(sigma_ref > 0.0);
    sigma_hat / sigma_ref - 1.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signals::ModelKind;
    use proptest::prelude::*;

    fn default_grid() -> ScaleGrid {
        ScaleGrid::new(0.1, 5.0, 80).unwrap()
    }

    #[test]
    fn grid_is_log_spaced_with_exact_endpoints() {
        let g = default_grid();
        assert_eq!(g.len(), 80);
        assert_eq!(g.values()[0], 0.1);
        assert_eq!(g.values()[79], 5.0);
        let r0 = g.values()[1] / g.values()[0];
        for w in g.values().windows(2) {
            assert!(((w[1] / w[0]) / r0 - 1.0).abs() < 1e-12);
        }
        assert!(ScaleGrid::new(0.0, 5.0, 10).is_err());
        assert!(ScaleGrid::new(1.0, 0.5, 10).is_err());
        assert!(ScaleGrid::new(0.1, 5.0, 1).is_err());
    }

    #[test]
    fn parabolic_signature_recovers_vertex_exactly() {
        let g = default_grid();
        let target: f64 = 1.7;
        let values: Vec<f64> = g
            .values()
            .iter()
            .map(|s| {
                let d = s.ln() - target.ln();
                3.0 * d * d - 2.0
            })
            .collect();
        let sig = ScaleSignature::new(g, values).unwrap();
        let est = select_scale(&sig, Polarity::Min).unwrap();
        assert!(est.interpolated);
        assert!((est.sigma_hat - target).abs() < 1e-10, "{}", est.sigma_hat);
    }

    #[test]
    fn equal_neighbours_select_the_middle_level() {
        let g = ScaleGrid::new(0.5, 2.0, 5).unwrap();
        let sig = ScaleSignature::new(g.clone(), vec![3.0, 1.0, 0.0, 1.0, 3.0]).unwrap();
        let est = select_scale(&sig, Polarity::Min).unwrap();
        assert_eq!(est.level_index, 2);
        assert_eq!(est.sigma_hat, g.values()[2]);
        assert!(est.interpolated);
    }

    #[test]
    fn monotone_signature_reports_endpoint() {
        let g = ScaleGrid::new(0.5, 2.0, 6).unwrap();
        let sig = ScaleSignature::new(g.clone(), vec![5.0, 4.0, 3.0, 2.0, 1.0, 0.5]).unwrap();
        let est = select_scale(&sig, Polarity::Min).unwrap();
        assert!(!est.interpolated);
        assert_eq!(est.level_index, 5);
        assert_eq!(est.sigma_hat, 2.0);
        let est_max = select_scale(&sig, Polarity::Max).unwrap();
        assert_eq!(est_max.level_index, 0);
    }

    #[test]
    fn flat_signature_has_no_extremum() {
        let g = ScaleGrid::new(0.5, 2.0, 4).unwrap();
        let sig = ScaleSignature::new(g, vec![1.0; 4]).unwrap();
        assert!(matches!(
            select_scale(&sig, Polarity::Min),
            Err(Error::NoExtremum)
        ));
    }

    #[test]
    fn largest_absolute_interior_extremum_wins() {
        let g = ScaleGrid::new(0.5, 8.0, 9).unwrap();
        let sig =
            ScaleSignature::new(g, vec![0.0, -1.0, 0.0, 0.0, -3.0, 0.0, 0.0, -0.5, 0.0]).unwrap();
        let est = select_scale(&sig, Polarity::Min).unwrap();
        assert_eq!(est.level_index, 4);
    }

    #[test]
    fn relative_error_arithmetic() {
        assert_eq!(relative_error(2.0, 2.0), 0.0);
        assert!((relative_error(2.1, 2.0) - 0.05).abs() < 1e-15);
        assert!((relative_error(1.9, 2.0) + 0.05).abs() < 1e-15);
    }

    #[test]
    fn laplacian_blob_signature_is_single_signed() {
        let grid = default_grid();
        for &sigma0 in &[1.0 / 3.0, 1.0, 3.0] {
            let spec =
                ModelSpec::benchmark(ModelKind::Blob, sigma0, Method::DiscAnalogueCd, 5.0).unwrap();
            let sig = scale_signature(&spec, Detector::LaplacianBlob, &grid).unwrap();
            assert!(
                sig.values().iter().all(|v| *v < 0.0),
                "sigma0={sigma0}: signature changes sign"
            );
        }
    }

    #[test]
    fn gradmag_signature_is_nonnegative() {
        let grid = default_grid();
        let spec = ModelSpec::benchmark(ModelKind::Edge, 0.5, Method::HybridIntCd, 5.0).unwrap();
        let sig = scale_signature(&spec, Detector::GradMagEdge, &grid).unwrap();
        assert!(sig.values().iter().all(|v| *v >= 0.0));
    }

    #[test]
    fn constant_image_signature_is_identically_zero() {
        let grid = ScaleGrid::new(0.5, 2.0, 10).unwrap();
        let img = Image2D::fill(41, 41, 2.0).unwrap();
        let sig = signature_on_image(
            &img,
            Method::HybridSampledCd,
            Detector::LaplacianBlob,
            &grid,
        )
        .unwrap();
        assert!(sig.values().iter().all(|v| v.abs() < 1e-12));
        assert!(matches!(
            select_scale(&sig, Polarity::Min),
            Err(Error::NoExtremum)
        ));
    }

    proptest! {
        // interpolation is exact on any parabola in log sigma with an
        // interior vertex
        #[test]
        fn parabola_vertices_recovered(curv in 0.1f64..20.0, vertex in 0.3f64..3.0, base in -5.0f64..5.0) {
            let g = ScaleGrid::new(0.1, 5.0, 60).unwrap();
            let values: Vec<f64> = g.values().iter().map(|s| {
                let d = s.ln() - vertex.ln();
                curv * d * d + base
            }).collect();
            let sig = ScaleSignature::new(g, values).unwrap();
            let est = select_scale(&sig, Polarity::Min).unwrap();
            prop_assert!((est.sigma_hat - vertex).abs() < 1e-9 * vertex.max(1.0));
        }
    }
}
