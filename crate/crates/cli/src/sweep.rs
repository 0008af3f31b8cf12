//! Parameter sweeps: `name=start:stop:count[,name=start:stop:count]`.
//!
//! A second axis turns the sweep into a row-major 2D grid (the first axis is
//! the outer loop).

use crate::error::CliError;
use crate::params::Params;

/// A sweepable parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SweepParam {
    /// Any single numeric parameter-file key listed in [`SWEEPABLE`].
    Key(&'static str),
    /// `dw_locked+` / `dw_locked-`: sets `dw1 = v` and `dw2 = ±v`.
    DwLocked { plus: bool },
    /// `n_SV`: sets `n_S = n_V = v`.
    StokesPhononCount,
}

/// Plain keys that may be swept.
pub const SWEEPABLE: &[&str] =
    &["dw1", "dw2", "gt", "n_mean", "I_L", "I_S", "I_V", "I_A", "s", "W_S", "W_V", "W_L", "n_S", "n_V", "n_L", "n"];

impl SweepParam {
    pub fn parse(name: &str) -> Result<SweepParam, CliError> {
        match name {
            "dw_locked+" => Ok(SweepParam::DwLocked { plus: true }),
            "dw_locked-" => Ok(SweepParam::DwLocked { plus: false }),
            "n_SV" => Ok(SweepParam::StokesPhononCount),
            _ => SWEEPABLE
                .iter()
                .find(|k| **k == name)
                .map(|k| SweepParam::Key(k))
                .ok_or_else(|| CliError::Validation(format!("unknown sweep parameter '{name}'"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SweepParam::Key(k) => k,
            SweepParam::DwLocked { plus: true } => "dw_locked+",
            SweepParam::DwLocked { plus: false } => "dw_locked-",
            SweepParam::StokesPhononCount => "n_SV",
        }
    }

    pub fn apply(&self, p: &mut Params, v: f64) -> Result<(), CliError> {
        let text = format!("{v:e}");
        let set = |p: &mut Params, key: &str| p.set(key, &text).map_err(CliError::Validation);
        match self {
            SweepParam::Key(k) => set(p, k),
            SweepParam::DwLocked { plus } => {
                p.dw1 = v;
                p.dw2 = if *plus { v } else { -v };
                Ok(())
            }
            SweepParam::StokesPhononCount => {
                p.n_s = v;
                p.n_v = v;
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub param: SweepParam,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        let span = self.stop - self.start;
        (0..self.count)
            .map(|i| if i + 1 == self.count { self.stop } else { self.start + span * i as f64 / (self.count - 1) as f64 })
            .collect()
    }
}

/// One or two sweep axes.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub axes: Vec<Axis>,
}

impl SweepSpec {
    pub fn parse(text: &str) -> Result<SweepSpec, CliError> {
        let bad = |msg: String| CliError::Validation(format!("sweep '{text}': {msg}"));
        let axes = text
            .split(',')
            .map(|part| {
                let (name, range) =
                    part.trim().split_once('=').ok_or_else(|| bad("expected name=start:stop:count".into()))?;
                let param = SweepParam::parse(name.trim())?;
                let fields: Vec<&str> = range.split(':').map(str::trim).collect();
                let [start, stop, count] = fields[..] else {
                    return Err(bad(format!("range '{range}' is not start:stop:count")));
                };
                let num = |s: &str| {
                    s.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| bad(format!("'{s}' is not a number")))
                };
                let (start, stop) = (num(start)?, num(stop)?);
                let count: usize = count.parse().map_err(|_| bad(format!("count '{count}' is not an integer")))?;
                if count < 2 {
                    return Err(bad("count must be at least 2".into()));
                }
                if start >= stop {
                    return Err(bad("start must be below stop".into()));
                }
                Ok(Axis { param, start, stop, count })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if axes.len() > 2 {
            return Err(bad("at most two axes".into()));
        }
        if axes.len() == 2 && axes[0].param == axes[1].param {
            return Err(bad("the two axes must differ".into()));
        }
        Ok(SweepSpec { axes })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.axes.iter().map(|a| a.param.name()).collect()
    }

    /// Axis values of every point, row-major.
    pub fn points(&self) -> Vec<Vec<f64>> {
        let mut out: Vec<Vec<f64>> = vec![vec![]];
        for axis in &self.axes {
            let vals = axis.values();
            out = out.into_iter().flat_map(|prefix| vals.iter().map(move |v| [prefix.clone(), vec![*v]].concat())).collect();
        }
        out
    }

    /// Parameters at one point of the sweep.
    pub fn apply(&self, base: &Params, point: &[f64]) -> Result<Params, CliError> {
        let mut p = base.clone();
        for (axis, v) in self.axes.iter().zip(point) {
            axis.param.apply(&mut p, *v)?;
        }
        Ok(p)
    }
}
