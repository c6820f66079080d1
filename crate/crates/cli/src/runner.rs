//! Parallel sweep execution with canonical-order emission: cells are
//! computed concurrently but records always come back sorted by
//! (method, detector, sigma0), so the CSV bytes do not depend on the worker
//! count.

use rayon::prelude::*;

use scalesmith::grid2d::Detector;
use scalesmith::kernels1d::Method;
use scalesmith::measures::{continuous_abs_spread, discrete_abs_variance};
use scalesmith::scalesel::{relative_error, scale_signature, select_scale, ScaleGrid};
use scalesmith::signals::{ModelKind, ModelSpec};
use scalesmith::Error;

use crate::config::{BenchConfig, SpreadConfig};

/// One benchmark cell result. `sigma_hat` and `rel_error` are NaN when the
/// signature had no extremum at all; such cells carry the endpoint flag.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub method: Method,
    pub detector: Detector,
    pub sigma0: f64,
    pub sigma_hat: f64,
    pub rel_error: f64,
    pub endpoint_flag: bool,
}

fn thread_pool(workers: usize) -> anyhow::Result<rayon::ThreadPool> {
    Ok(rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()?)
}

/// Runs the scale-selection consistency sweep.
pub fn run_scalesel(config: &BenchConfig) -> anyhow::Result<Vec<BenchRecord>> {
    config.validate()?;
    let sigma0s: Vec<f64> = if config.sigma0_steps == 1 {
        vec![config.sigma0_min]
    } else {
        ScaleGrid::new(config.sigma0_min, config.sigma0_max, config.sigma0_steps)?
            .values()
            .to_vec()
    };
    let grid = ScaleGrid::new(config.grid_min, config.grid_max, config.grid_levels)?;

    let mut cells = Vec::new();
    for &method in &config.methods {
        for &detector in &config.detectors {
            for &sigma0 in &sigma0s {
                cells.push((method, detector, sigma0));
            }
        }
    }

    let pool = thread_pool(config.workers)?;
    let records: Vec<anyhow::Result<BenchRecord>> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(method, detector, sigma0)| eval_cell(method, detector, sigma0, &grid))
            .collect()
    });
    records.into_iter().collect()
}

fn eval_cell(
    method: Method,
    detector: Detector,
    sigma0: f64,
    grid: &ScaleGrid,
) -> anyhow::Result<BenchRecord> {
    let spec = ModelSpec::benchmark(
        ModelKind::for_detector(detector),
        sigma0,
        method,
        grid.sigma_max(),
    )?;
    let signature = scale_signature(&spec, detector, grid)?;
    match select_scale(&signature, detector.polarity()) {
        Ok(est) => Ok(BenchRecord {
            method,
            detector,
            sigma0,
            sigma_hat: est.sigma_hat,
            rel_error: relative_error(est.sigma_hat, sigma0),
            endpoint_flag: !est.interpolated,
        }),
        Err(Error::NoExtremum) => Ok(BenchRecord {
            method,
            detector,
            sigma0,
            sigma_hat: f64::NAN,
            rel_error: f64::NAN,
            endpoint_flag: true,
        }),
        Err(e) => Err(e.into()),
    }
}

/// True when not a single cell produced an estimate.
pub fn all_cells_failed(records: &[BenchRecord]) -> bool {
    !records.is_empty() && records.iter().all(|r| r.sigma_hat.is_nan())
}

pub fn scalesel_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from("method,detector,sigma0,sigma_hat,rel_error,endpoint_flag\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.method, r.detector, r.sigma0, r.sigma_hat, r.rel_error, r.endpoint_flag
        ));
    }
    out
}

/// Median of the absolute relative errors of the given records, skipping
/// endpoint-flagged cells (failed selections carry no usable error). `None`
/// when every cell in range is excluded.
pub fn median_abs_error<'a>(records: impl Iterator<Item = &'a BenchRecord>) -> Option<f64> {
    let mut errs: Vec<f64> = records
        .filter(|r| !r.endpoint_flag)
        .map(|r| r.rel_error.abs())
        .collect();
    if errs.is_empty() {
        return None;
    }
    errs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = errs.len();
    Some(if n % 2 == 1 {
        errs[n / 2]
    } else {
        0.5 * (errs[n / 2 - 1] + errs[n / 2])
    })
}

/// One spread-sweep row.
#[derive(Debug, Clone, PartialEq)]
pub struct SpreadRecord {
    pub method: Method,
    pub order: u32,
    pub sigma: f64,
    pub spread: f64,
    pub offset: f64,
}

/// Runs the spread sweep over all schemes and orders 0..=4. The continuous
/// reference only depends on (order, sigma), so it is computed once per
/// pair and shared across schemes.
pub fn run_spread(config: &SpreadConfig) -> anyhow::Result<Vec<SpreadRecord>> {
    config.validate()?;
    let sigmas = ScaleGrid::new(config.sigma_min, config.sigma_max, config.samples)?;
    let sigmas = sigmas.values().to_vec();
    let pool = thread_pool(config.workers)?;

    let references: Vec<anyhow::Result<f64>> = pool.install(|| {
        (0u32..=4)
            .flat_map(|order| sigmas.iter().map(move |&s| (order, s)))
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&(order, sigma)| Ok(continuous_abs_spread(order, sigma * sigma)?))
            .collect()
    });
    let references = references
        .into_iter()
        .collect::<anyhow::Result<Vec<f64>>>()?;
    let reference = |order: u32, i: usize| references[order as usize * sigmas.len() + i];

    let mut cells = Vec::new();
    for &method in &config.methods {
        for order in 0u32..=4 {
            for (i, &sigma) in sigmas.iter().enumerate() {
                cells.push((method, order, i, sigma));
            }
        }
    }
    let records: Vec<anyhow::Result<SpreadRecord>> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(method, order, i, sigma)| {
                let kernel = scalesmith::kernels1d::method_kernel(method, sigma * sigma, order)?;
                let spread = discrete_abs_variance(&kernel)?.sqrt();
                Ok(SpreadRecord {
                    method,
                    order,
                    sigma,
                    spread,
                    offset: spread - reference(order, i),
                })
            })
            .collect()
    });
    records.into_iter().collect()
}

pub fn spread_csv(records: &[SpreadRecord]) -> String {
    let mut out = String::from("method,order,sigma,spread,offset\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.method, r.order, r.sigma, r.spread, r.offset
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_config() -> BenchConfig {
        BenchConfig {
            methods: vec![Method::DiscAnalogueCd, Method::HybridIntCd],
            detectors: vec![Detector::LaplacianBlob],
            sigma0_min: 0.8,
            sigma0_max: 1.6,
            sigma0_steps: 3,
            grid_min: 0.2,
            grid_max: 4.0,
            grid_levels: 40,
            workers: 2,
        }
    }

    #[test]
    fn records_come_back_in_canonical_order() {
        let recs = run_scalesel(&tiny_config()).unwrap();
        assert_eq!(recs.len(), 6);
        assert!(recs[..3].iter().all(|r| r.method == Method::DiscAnalogueCd));
        assert!(recs[3..].iter().all(|r| r.method == Method::HybridIntCd));
        for chunk in recs.chunks(3) {
            assert!(chunk.windows(2).all(|w| w[0].sigma0 < w[1].sigma0));
        }
        for r in &recs {
            assert!(!r.endpoint_flag, "{r:?}");
            assert!((r.rel_error - (r.sigma_hat / r.sigma0 - 1.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn csv_is_worker_count_invariant() {
        let mut cfg = tiny_config();
        let a = scalesel_csv(&run_scalesel(&cfg).unwrap());
        cfg.workers = 1;
        let b = scalesel_csv(&run_scalesel(&cfg).unwrap());
        assert_eq!(a, b);
        assert!(a.starts_with("method,detector,sigma0,sigma_hat,rel_error,endpoint_flag\n"));
    }

    #[test]
    fn median_skips_endpoint_records() {
        let mk = |e: f64, flag: bool| BenchRecord {
            method: Method::SampledDer,
            detector: Detector::LaplacianBlob,
            sigma0: 1.0,
            sigma_hat: 1.0 + e,
            rel_error: e,
            endpoint_flag: flag,
        };
        let recs = [
            mk(0.1, false),
            mk(-0.3, false),
            mk(0.2, false),
            mk(9.0, true),
        ];
        assert_eq!(median_abs_error(recs.iter()), Some(0.2));
        let all_flagged = [mk(1.0, true)];
        assert_eq!(median_abs_error(all_flagged.iter()), None);
    }

    #[test]
    fn spread_sweep_row_count_and_values() {
        let cfg = SpreadConfig {
            methods: vec![Method::DiscAnalogueCd],
            sigma_min: 0.1,
            sigma_max: 2.0,
            samples: 5,
            workers: 1,
        };
        let recs = run_spread(&cfg).unwrap();
        assert_eq!(recs.len(), 5 * 5);
        // order-0 row at sigma = 2 is the exact-variance smoothing kernel
        let last = recs
            .iter()
            .find(|r| r.order == 0 && r.sigma == 2.0)
            .unwrap();
        assert!((last.spread - 2.0).abs() < 1e-8);
        assert!(last.offset.abs() < 1e-8);
    }
}
