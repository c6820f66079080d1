//! Rendering of a model image, a detector response at one scale, and the
//! center signature across the search grid.

use std::path::PathBuf;

use scalesmith::grid2d::{Detector, ScaleSpace};
use scalesmith::kernels1d::Method;
use scalesmith::scalesel::{signature_on_image, ScaleGrid};
use scalesmith::signals::{ModelKind, ModelSpec};

use crate::outputs::{write_file, write_manifest};

pub struct RenderRequest {
    pub kind: ModelKind,
    pub method: Method,
    pub detector: Detector,
    pub sigma0: f64,
    /// Scale of the rendered response slice.
    pub sigma: f64,
    pub grid: ScaleGrid,
    pub out_dir: PathBuf,
}

/// Writes `<kind>_model.pgm`, `<kind>_<detector>_response.pgm` and
/// `signature.csv`; returns the written paths.
pub fn run_render(req: &RenderRequest) -> anyhow::Result<Vec<PathBuf>> {
    let spec = ModelSpec::benchmark(req.kind, req.sigma0, req.method, req.grid.sigma_max())?;
    let image = spec.generate()?;

    let model_name = format!("{}_model.pgm", req.kind);
    let model_label = format!(
        "{} model, sigma0={}, method={}",
        req.kind, req.sigma0, req.method
    );
    let mut files = vec![write_file(
        &req.out_dir,
        &model_name,
        &image.to_pgm16(&model_label),
    )?];

    let space = ScaleSpace::new(&image, req.method);
    let response = space.detector_response_image(req.detector, req.sigma * req.sigma)?;
    let response_name = format!("{}_{}_response.pgm", req.kind, req.detector);
    let response_label = format!(
        "{} response on {} at sigma={}, method={}",
        req.detector, req.kind, req.sigma, req.method
    );
    files.push(write_file(
        &req.out_dir,
        &response_name,
        &response.to_pgm16(&response_label),
    )?);

    let signature = signature_on_image(&image, req.method, req.detector, &req.grid)?;
    let mut csv = String::from("sigma,value\n");
    for (sigma, value) in req.grid.values().iter().zip(signature.values()) {
        csv.push_str(&format!("{sigma},{value}\n"));
    }
    files.push(write_file(&req.out_dir, "signature.csv", csv.as_bytes())?);

    let config = serde_json::json!({
        "kind": req.kind,
        "method": req.method,
        "detector": req.detector,
        "sigma0": req.sigma0,
        "sigma": req.sigma,
        "grid_min": req.grid.sigma_min(),
        "grid_max": req.grid.sigma_max(),
        "grid_levels": req.grid.len(),
    });
    write_manifest(
        &req.out_dir,
        &serde_json::to_string_pretty(&config)?,
        &files,
    )?;
    Ok(files)
}
