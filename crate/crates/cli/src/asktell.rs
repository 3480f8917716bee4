//! `init`, `suggest`, `observe` and `surface`: the optimizer driven one
//! evaluation at a time through a state file.

use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use dkibo::state::StateFile;
use dkibo::{CampaignConfig, Optimizer};

use crate::exit::{Code, Failure, OrExit};

/// Decimal rendering with 12 significant digits.
pub fn format_sig12(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exponent = v.abs().log10().floor() as i32;
    if !(-6..=15).contains(&exponent) {
        return format!("{v:.11e}");
    }
    let decimals = (11 - exponent).max(0) as usize;
    let s = format!("{v:.decimals$}");
    // rounding may carry into a new leading digit, e.g. 9.99999999999951
    let significant = s.chars().filter(char::is_ascii_digit).skip_while(|&c| c == '0').count();
    if significant > 12 {
        return format!("{v:.*}", decimals.saturating_sub(1));
    }
    s
}

pub fn format_point(x: &[f64]) -> String {
    x.iter().map(|v| format_sig12(*v)).collect::<Vec<_>>().join(",")
}

/// Parses `1.5,2,-3` (spaces and `;` also accepted as separators).
pub fn parse_point(s: &str) -> anyhow::Result<Vec<f64>> {
    s.split([',', ';', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().with_context(|| format!("`{t}` is not a number")))
        .collect()
}

pub fn load(path: &Path) -> Result<StateFile, Failure> {
    if !path.exists() {
        return Err(Failure::new(
            Code::State,
            anyhow!("state file {} does not exist", path.display()),
        ));
    }
    StateFile::load(path).map_err(|e| Failure::from_core(e, Code::State))
}

fn save(state: &StateFile, path: &Path) -> Result<(), Failure> {
    state.save(path).map_err(|e| Failure::from_core(e, Code::State))
}

/// Creates a new state file; refuses to overwrite unless `force`.
pub fn init(path: &Path, config: CampaignConfig, force: bool) -> Result<StateFile, Failure> {
    if path.exists() && !force {
        return Err(Failure::new(
            Code::State,
            anyhow!("{} already exists (pass --force to replace it)", path.display()),
        ));
    }
    let state = StateFile::new(Optimizer::new(config).map_err(|e| Failure::from_core(e, Code::Config))?);
    save(&state, path)?;
    Ok(state)
}

/// The next point. Re-running without an observation prints the same point.
pub fn suggest(path: &Path) -> Result<Vec<f64>, Failure> {
    let mut state = load(path)?;
    let had_pending = state.optimizer.pending().is_some();
    let s = state.optimizer.ask().map_err(|e| Failure::from_core(e, Code::State))?;
    if !had_pending {
        save(&state, path)?;
    }
    Ok(s.x)
}

/// Appends one evaluation. The file is left untouched on error.
pub fn observe(path: &Path, x: Vec<f64>, y: f64) -> Result<StateFile, Failure> {
    let mut state = load(path)?;
    state
        .optimizer
        .observe(x, y)
        .map_err(|e| Failure::from_core(e, Code::State))?;
    save(&state, path)?;
    Ok(state)
}

/// Grid of the current surrogate. With `d ≤ 2` the grid spans the box;
/// otherwise `slice` names two dimensions to vary and the rest are held at
/// `at` (default: the best observed point).
pub struct SurfaceSpec {
    pub resolution: usize,
    pub slice: Option<(usize, usize)>,
    pub at: Option<Vec<f64>>,
}

pub fn surface(path: &Path, spec: &SurfaceSpec, out: &mut dyn Write) -> Result<usize, Failure> {
    let state = load(path)?;
    let opt = &state.optimizer;
    let space = &opt.config().space;
    let d = space.dim();
    let res = spec.resolution;
    if res == 0 {
        return Err(Failure::new(Code::Usage, anyhow!("resolution must be at least 1")));
    }
    let dims: Vec<usize> = match (d, spec.slice) {
        (_, Some((i, j))) => {
            if i >= d || j >= d || i == j {
                return Err(Failure::new(
                    Code::Usage,
                    anyhow!("slice needs two different dimensions below {d}, got {i},{j}"),
                ));
            }
            vec![i, j]
        }
        (1, None) => vec![0],
        (2, None) => vec![0, 1],
        (_, None) => {
            return Err(Failure::new(
                Code::Usage,
                anyhow!("the space has {d} dimensions; a surface needs --slice I,J naming the two to vary"),
            ))
        }
    };
    let base = match &spec.at {
        Some(at) => {
            if at.len() != d {
                return Err(Failure::from_core(
                    dkibo::Error::DimensionMismatch {
                        expected: d,
                        got: at.len(),
                    },
                    Code::Usage,
                ));
            }
            space.check(at).map_err(|e| Failure::from_core(e, Code::Usage))?;
            at.clone()
        }
        None => {
            let obs = opt.data().observations();
            let best = obs.iter().max_by(|a, b| a.y.total_cmp(&b.y));
            match best {
                Some(o) => o.x.clone(),
                None => space
                    .lower()
                    .iter()
                    .zip(space.upper())
                    .map(|(l, u)| 0.5 * (l + u))
                    .collect(),
            }
        }
    };
    let sur = opt.surrogate().map_err(|e| Failure::from_core(e, Code::State))?;

    let axis = |k: usize, t: usize| {
        let (lo, hi) = (space.lower()[k], space.upper()[k]);
        if res == 1 {
            0.5 * (lo + hi)
        } else {
            lo + (hi - lo) * t as f64 / (res - 1) as f64
        }
    };
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = (0..d).map(|k| format!("x{k}")).collect();
    header.extend(["gp_mean", "gp_sigma", "xi_value", "augmented_acq"].map(String::from));
    w.write_record(&header).or_exit(Code::Internal)?;
    let total = res.pow(dims.len() as u32);
    for flat in 0..total {
        let mut x = base.clone();
        let mut rem = flat;
        for &k in dims.iter().rev() {
            x[k] = axis(k, rem % res);
            rem /= res;
        }
        let z = space.normalize(&x).map_err(|e| Failure::from_core(e, Code::Internal))?;
        let p = sur.gp.predict(&z);
        let mut rec: Vec<String> = x.iter().map(|v| v.to_string()).collect();
        rec.push(p.mean.to_string());
        rec.push(p.std_dev.to_string());
        rec.push(sur.xi.predict(&z).to_string());
        rec.push(sur.acquisition(&z).to_string());
        w.write_record(&rec).or_exit(Code::Internal)?;
    }
    w.flush().or_exit(Code::Internal)?;
    Ok(total)
}

/// Parses `I,J`.
pub fn parse_slice(s: &str) -> anyhow::Result<(usize, usize)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        bail!("expected two comma-separated dimension indices, got `{s}`");
    }
    Ok((parts[0].parse()?, parts[1].parse()?))
}
