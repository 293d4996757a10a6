//! Run configuration: a structured key/value text file with sections, plus
//! flag overrides (flags win). Every validation failure names the violated
//! constraint.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use exact_algebra::GaussianRational;
use num_complex::Complex64;

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

/// Parsed `[section]` / `key = value` file. Duplicate keys within a section
/// are rejected so fixtures stay unambiguous.
#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    sections: BTreeMap<String, BTreeMap<String, String>>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut sections: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        let mut current = "run".to_string();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let Some(name) = name.strip_suffix(']') else {
                    return err(format!("line {}: unterminated section header", lineno + 1));
                };
                current = name.trim().to_lowercase();
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return err(format!(
                    "line {}: expected `key = value`, got {raw:?}",
                    lineno + 1
                ));
            };
            let key = key.trim().to_lowercase();
            let value = value.trim().to_string();
            let section = sections.entry(current.clone()).or_default();
            if section.insert(key.clone(), value).is_some() {
                return err(format!(
                    "line {}: duplicate key {key:?} in section [{current}]",
                    lineno + 1
                ));
            }
        }
        Ok(Self { sections })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read config {path:?}: {e}")))?;
        Self::parse(&text)
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections.get(section)?.get(key).map(String::as_str)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackendChoice {
    P1,
    Torus,
}

impl BackendChoice {
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        match s.to_lowercase().as_str() {
            "p1" => Ok(Self::P1),
            "torus" => Ok(Self::Torus),
            other => err(format!(
                "backend must be `p1` or `torus`, got {other:?}"
            )),
        }
    }
}

/// Everything a run needs, already validated.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub backend: BackendChoice,
    pub degree: usize,
    pub k: usize,
    pub m: usize,
    pub tau: Complex64,
    pub grid: usize,
    pub chi: (f64, f64),
    pub bump_radius: f64,
    pub p1_points: Vec<GaussianRational>,
    pub torus_points: Vec<(f64, f64)>,
    pub grids: Vec<usize>,
    pub tolerances: verify::Tolerances,
    pub output: PathBuf,
}

/// Complex literal `a+bi` with decimal or rational parts (for tau).
pub fn parse_complex_f64(s: &str) -> Result<Complex64, ConfigError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return err("empty complex literal");
    }
    // split into real and imaginary terms at the last +/- not at position 0
    // and not part of an exponent
    let bytes = compact.as_bytes();
    let mut split = None;
    for i in 1..bytes.len() {
        let b = bytes[i];
        if (b == b'+' || b == b'-') && bytes[i - 1] != b'e' && bytes[i - 1] != b'E' {
            split = Some(i);
        }
    }
    let parse_part = |p: &str| -> Result<f64, ConfigError> {
        let p = p.trim();
        if let Some((num, den)) = p.split_once('/') {
            let n: f64 = num
                .parse()
                .map_err(|_| ConfigError(format!("bad rational part {p:?}")))?;
            let d: f64 = den
                .parse()
                .map_err(|_| ConfigError(format!("bad rational part {p:?}")))?;
            if d == 0.0 {
                return err("zero denominator in complex literal");
            }
            Ok(n / d)
        } else {
            p.parse()
                .map_err(|_| ConfigError(format!("bad numeric part {p:?}")))
        }
    };
    let (re_str, im_str) = match split {
        Some(i) => (&compact[..i], Some(&compact[i..])),
        None => (compact.as_str(), None),
    };
    match im_str {
        None => {
            if let Some(body) = re_str.strip_suffix('i') {
                let v = match body {
                    "" | "+" => 1.0,
                    "-" => -1.0,
                    _ => parse_part(body)?,
                };
                Ok(Complex64::new(0.0, v))
            } else {
                Ok(Complex64::new(parse_part(re_str)?, 0.0))
            }
        }
        Some(im) => {
            let Some(body) = im.strip_suffix('i') else {
                return err(format!(
                    "complex literal {s:?} must end its imaginary part with `i`"
                ));
            };
            let imv = match body {
                "+" => 1.0,
                "-" => -1.0,
                _ => parse_part(body)?,
            };
            Ok(Complex64::new(parse_part(re_str)?, imv))
        }
    }
}

/// Exact point on the line: integers, fractions and Gaussian combinations;
/// decimal literals are rejected so the exact backend stays exact.
pub fn parse_exact_point(s: &str) -> Result<GaussianRational, ConfigError> {
    s.parse::<GaussianRational>().map_err(|e| {
        ConfigError(format!(
            "projective-line points must be exact rationals (constraint: exact backend); {e}"
        ))
    })
}

pub fn parse_torus_point(s: &str) -> Result<(f64, f64), ConfigError> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 2 {
        return err(format!("torus point must be `x:y` in lattice coordinates, got {s:?}"));
    }
    let x: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| ConfigError(format!("bad torus coordinate {:?}", parts[0])))?;
    let y: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| ConfigError(format!("bad torus coordinate {:?}", parts[1])))?;
    if !(0.0..1.0).contains(&x) || !(0.0..1.0).contains(&y) {
        return err(format!(
            "torus point must lie in the open cell [0,1)^2 (constraint: point-in-chart), got ({x}, {y})"
        ));
    }
    Ok((x, y))
}

fn parse_list<T>(
    value: &str,
    parse: impl Fn(&str) -> Result<T, ConfigError>,
) -> Result<Vec<T>, ConfigError> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse)
        .collect()
}

pub struct Overrides {
    pub backend: Option<String>,
    pub degree: Option<usize>,
    pub k: Option<usize>,
    pub m: Option<usize>,
    pub tau: Option<String>,
    pub grid: Option<usize>,
    pub grids: Option<String>,
    pub chi: Option<String>,
    pub points: Option<String>,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    /// Builds the config from the optional file plus flag overrides; flags win.
    pub fn build(file: Option<&ConfigFile>, ov: &Overrides) -> Result<Self, ConfigError> {
        let get = |section: &str, key: &str| -> Option<String> {
            file.and_then(|f| f.get(section, key)).map(str::to_string)
        };
        let backend_str = ov
            .backend
            .clone()
            .or_else(|| get("run", "backend"))
            .unwrap_or_else(|| "p1".to_string());
        let backend = BackendChoice::parse(&backend_str)?;

        let parse_usize = |what: &str, v: String| -> Result<usize, ConfigError> {
            v.parse()
                .map_err(|_| ConfigError(format!("{what} must be a nonnegative integer, got {v:?}")))
        };
        let degree = match ov.degree {
            Some(d) => d,
            None => match get("run", "degree") {
                Some(v) => parse_usize("degree", v)?,
                None => return err("missing required parameter `degree`"),
            },
        };
        if degree == 0 {
            return err("degree must be >= 1 (constraint: positive bundle degree)");
        }
        let k = match ov.k {
            Some(k) => k,
            None => match get("run", "k") {
                Some(v) => parse_usize("k", v)?,
                None => 2,
            },
        };
        if k < 2 {
            return err("relation degree k must be >= 2 (constraint: relations need k >= 2)");
        }
        let m = match ov.m {
            Some(m) => m,
            None => match get("run", "m") {
                Some(v) => parse_usize("m", v)?,
                None => 1,
            },
        };
        if m == 0 || m >= k {
            return err(format!(
                "twist m must satisfy 0 < m < k (constraint: target power positive), got m={m} k={k}"
            ));
        }
        let tau_str = ov
            .tau
            .clone()
            .or_else(|| get("run", "tau"))
            .unwrap_or_else(|| "0+1i".to_string());
        let tau = parse_complex_f64(&tau_str)?;
        if backend == BackendChoice::Torus && !(tau.im > 0.0) {
            return err(format!(
                "Im(tau) must be positive (constraint: upper half plane), got {}",
                tau.im
            ));
        }
        let grid = match ov.grid {
            Some(n) => n,
            None => match get("run", "grid") {
                Some(v) => parse_usize("grid", v)?,
                None => 256,
            },
        };
        if backend == BackendChoice::Torus && (!grid.is_power_of_two() || grid < 8) {
            return err(format!(
                "grid must be a power of two >= 8 (constraint: FFT grid), got {grid}"
            ));
        }
        let grids = match ov
            .grids
            .clone()
            .or_else(|| get("run", "grids"))
        {
            Some(v) => {
                let list = parse_list(&v, |s| parse_usize("grids entry", s.to_string()))?;
                if list.windows(2).any(|w| w[0] >= w[1]) {
                    return err("grids list must be strictly ascending (constraint: convergence study order)");
                }
                list
            }
            None => vec![64, 128, 256],
        };
        let chi_str = ov.chi.clone().or_else(|| get("run", "chi"));
        let chi = match chi_str {
            None => (0.0, 0.0),
            Some(v) => {
                let parts = parse_list(&v, |s| {
                    s.parse::<f64>()
                        .map_err(|_| ConfigError(format!("bad character component {s:?}")))
                })?;
                if parts.len() != 2 {
                    return err("chi must have exactly two components `a, b`");
                }
                if !(0.0..1.0).contains(&parts[0]) || !(0.0..1.0).contains(&parts[1]) {
                    return err(format!(
                        "chi must lie in [0,1)^2 (constraint: flat character range), got ({}, {})",
                        parts[0], parts[1]
                    ));
                }
                (parts[0], parts[1])
            }
        };
        let bump_radius = match get("run", "bump_radius") {
            Some(v) => {
                let r: f64 = v
                    .parse()
                    .map_err(|_| ConfigError(format!("bad bump_radius {v:?}")))?;
                if !(r > 0.0 && r < 0.25) {
                    return err(format!(
                        "bump_radius must lie in (0, 0.25) (constraint: support in chart), got {r}"
                    ));
                }
                r
            }
            None => 0.16,
        };

        let p1_points = match ov
            .points
            .clone()
            .filter(|_| backend == BackendChoice::P1)
            .or_else(|| get("points", "p1"))
        {
            Some(v) => parse_list(&v, parse_exact_point)?,
            None => verify::default_p1_points(),
        };
        let torus_points = match ov
            .points
            .clone()
            .filter(|_| backend == BackendChoice::Torus)
            .or_else(|| get("points", "torus"))
        {
            Some(v) => parse_list(&v, parse_torus_point)?,
            None => verify::default_torus_points(),
        };

        let mut tolerances = verify::Tolerances::default();
        if let Some(f) = file {
            let read_tol = |key: &str, slot: &mut f64| -> Result<(), ConfigError> {
                if let Some(v) = f.get("tolerances", key) {
                    *slot = v
                        .parse()
                        .map_err(|_| ConfigError(format!("bad tolerance {key} = {v:?}")))?;
                }
                Ok(())
            };
            read_tol("lift_spread", &mut tolerances.lift_spread)?;
            read_tol("lift_shrink", &mut tolerances.lift_shrink)?;
            read_tol("cross_path", &mut tolerances.cross_path)?;
            read_tol("welldefined", &mut tolerances.welldefined)?;
            read_tol("metric_scale", &mut tolerances.metric_scale)?;
            read_tol("closedness", &mut tolerances.closedness)?;
            read_tol("symmetry", &mut tolerances.symmetry)?;
            read_tol("twisted_spread", &mut tolerances.twisted_spread)?;
            read_tol("solver_anchor", &mut tolerances.solver_anchor)?;
        }

        let output = ov
            .output
            .clone()
            .or_else(|| get("run", "output").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("out"));

        Ok(Self {
            backend,
            degree,
            k,
            m,
            tau,
            grid,
            chi,
            bump_radius,
            p1_points,
            torus_points,
            grids,
            tolerances,
            output,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_overrides() -> Overrides {
        Overrides {
            backend: None,
            degree: None,
            k: None,
            m: None,
            tau: None,
            grid: None,
            grids: None,
            chi: None,
            points: None,
            output: None,
        }
    }

    #[test]
    fn parses_sections_and_flags_win() {
        let file = ConfigFile::parse(
            "[run]\nbackend = torus\ndegree = 4\ngrid = 128\n\n[points]\ntorus = 0.5:0.5, 0.4:0.6\n",
        )
        .unwrap();
        let mut ov = no_overrides();
        ov.grid = Some(256);
        let cfg = RunConfig::build(Some(&file), &ov).unwrap();
        assert_eq!(cfg.backend, BackendChoice::Torus);
        assert_eq!(cfg.degree, 4);
        assert_eq!(cfg.grid, 256, "flag overrides file");
        assert_eq!(cfg.torus_points.len(), 2);
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex_f64("0+1i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex_f64("1/2-3/4i").unwrap(), Complex64::new(0.5, -0.75));
        assert_eq!(parse_complex_f64("0.25+2i").unwrap(), Complex64::new(0.25, 2.0));
        assert_eq!(parse_complex_f64("i").unwrap(), Complex64::new(0.0, 1.0));
        assert!(parse_complex_f64("nonsense").is_err());
    }

    #[test]
    fn exact_points_reject_decimals() {
        assert!(parse_exact_point("1/2").is_ok());
        let e = parse_exact_point("0.5").unwrap_err();
        assert!(e.0.contains("exact"), "{e}");
    }

    #[test]
    fn validation_names_the_constraint() {
        let mut ov = no_overrides();
        ov.backend = Some("torus".into());
        ov.degree = Some(4);
        ov.grid = Some(100);
        let e = RunConfig::build(None, &ov).unwrap_err();
        assert!(e.0.contains("power of two"), "{e}");

        let mut ov2 = no_overrides();
        ov2.backend = Some("torus".into());
        ov2.degree = Some(4);
        ov2.tau = Some("0-1i".into());
        let e2 = RunConfig::build(None, &ov2).unwrap_err();
        assert!(e2.0.contains("Im(tau)"), "{e2}");
    }
}
