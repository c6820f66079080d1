//! File emission: kernel dumps, CSV writers and the per-directory manifest
//! with checksums. Nothing here embeds timestamps, so reruns are
//! byte-identical.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use scalesmith::diffops::Stencil;

/// Kernel dump: `n,coeff` rows, coefficients with 17 significant digits.
pub fn kernel_csv(kernel: &impl Stencil) -> String {
    let mut out = String::from("n,coeff\n");
    let r = kernel.radius() as isize;
    for n in -r..=r {
        let _ = writeln!(out, "{},{:.16e}", n, kernel.at(n));
    }
    out
}

/// Default output directory: `--out` flag beats the `SCALESMITH_OUT`
/// environment variable beats `./out`.
pub fn resolve_out_dir(flag: Option<PathBuf>) -> PathBuf {
    if let Some(dir) = flag {
        return dir;
    }
    if let Ok(env_dir) = std::env::var("SCALESMITH_OUT") {
        if !env_dir.is_empty() {
            return PathBuf::from(env_dir);
        }
    }
    PathBuf::from("out")
}

pub fn write_file(dir: &Path, name: &str, bytes: &[u8]) -> anyhow::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, bytes)?;
    Ok(path)
}

/// Writes `manifest.txt`: tool version, the config JSON (one line per
/// config line), and a sha256 per emitted file, sorted by name.
pub fn write_manifest(dir: &Path, config_json: &str, files: &[PathBuf]) -> anyhow::Result<PathBuf> {
    let mut entries: Vec<(String, String)> = Vec::new();
    for path in files {
        let bytes = fs::read(path)?;
        let mut hasher = Sha256::new();
        hasher.update(&bytes);
        let digest = hasher.finalize();
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        entries.push((name, hex));
    }
    entries.sort();

    let mut out = String::new();
    let _ = writeln!(out, "tool: scalesmith {}", env!("CARGO_PKG_VERSION"));
    out.push_str("config:\n");
    for line in config_json.trim_end().lines() {
        let _ = writeln!(out, "  {line}");
    }
    out.push_str("files:\n");
    for (name, hex) in entries {
        let _ = writeln!(out, "  {hex}  {name}");
    }
    write_file(dir, "manifest.txt", out.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use scalesmith::diffops::central_difference;

    #[test]
    fn kernel_csv_has_seventeen_significant_digits() {
        let k = scalesmith::kernels1d::disc_gaussian(1.0).unwrap();
        let text = kernel_csv(&k);
        assert_eq!(text.lines().next(), Some("n,coeff"));
        assert_eq!(text.lines().count(), 1 + 2 * k.radius() + 1);
        let center = text
            .lines()
            .find(|l| l.starts_with("0,"))
            .unwrap()
            .split(',')
            .nth(1)
            .unwrap();
        // 17 significant digits round-trip binary64 exactly
        assert_eq!(center.parse::<f64>().unwrap(), k.at(0));
        let mantissa = center.split('e').next().unwrap();
        assert_eq!(mantissa.trim_start_matches('-').replace('.', "").len(), 17);
    }

    #[test]
    fn difference_taps_dump() {
        let d = central_difference(1).unwrap();
        let text = kernel_csv(&d);
        assert!(text.contains("-1,-5.0000000000000000e-1"));
        assert!(text.contains("1,5.0000000000000000e-1"));
    }

    #[test]
    fn manifest_is_deterministic() {
        let dir = std::env::temp_dir().join(format!("scalesmith-manifest-{}", std::process::id()));
        let a = write_file(&dir, "a.csv", b"x,y\n1,2\n").unwrap();
        let b = write_file(&dir, "b.csv", b"n\n0\n").unwrap();
        let m1 = write_manifest(&dir, "{\n  \"k\": 1\n}\n", &[a.clone(), b.clone()]).unwrap();
        let first = fs::read(&m1).unwrap();
        let m2 = write_manifest(&dir, "{\n  \"k\": 1\n}\n", &[b, a]).unwrap();
        let second = fs::read(&m2).unwrap();
        assert_eq!(first, second);
        assert!(String::from_utf8(first).unwrap().contains("  a.csv"));
        fs::remove_dir_all(&dir).ok();
    }
}
