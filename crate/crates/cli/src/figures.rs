//! Built-in figure presets.
//!
//! `base` holds the parameters stated in the figure captions plus the phonon
//! statistics; the sweep ranges are choices of this tool, since captions do
//! not state plot ranges. Panels scanned along `Δω₁ = ±Δω₂` produce one file
//! per sign.

use crate::error::CliError;
use crate::params::Params;

#[derive(Clone, Copy, Debug)]
pub struct Variant {
    /// File-name suffix; empty for single-file panels.
    pub suffix: &'static str,
    /// Parameters fixed for this file only.
    pub extra: &'static [(&'static str, &'static str)],
    pub sweep: &'static str,
}

#[derive(Clone, Copy, Debug)]
pub struct Panel {
    pub id: &'static str,
    pub title: &'static str,
    pub base: &'static [(&'static str, &'static str)],
    pub variants: &'static [Variant],
    pub quantities: &'static [&'static str],
}

impl Panel {
    pub fn params(&self, variant: &Variant) -> Result<Params, CliError> {
        let mut p = Params::default();
        for (k, v) in self.base.iter().chain(variant.extra) {
            p.set(k, v).map_err(|e| CliError::Validation(format!("preset {}: {e}", self.id)))?;
        }
        Ok(p)
    }

    pub fn file_stem(&self, variant: &Variant) -> String {
        if variant.suffix.is_empty() {
            format!("fig{}", self.id)
        } else {
            format!("fig{}_{}", self.id, variant.suffix)
        }
    }
}

const fn single(sweep: &'static str) -> Variant {
    Variant { suffix: "", extra: &[], sweep }
}

macro_rules! locked {
    ($rest:literal) => {
        &[
            Variant { suffix: "plus", extra: &[], sweep: concat!("dw_locked+=-50:50:101,", $rest) },
            Variant { suffix: "minus", extra: &[], sweep: concat!("dw_locked-=-50:50:101,", $rest) },
        ]
    };
}

const SQUEEZING: &[(&str, &str)] = &[
    ("phonon", "coherent"),
    ("I_L", "10"),
    ("I_A", "1"),
    ("I_S", "9"),
    ("I_V", "0.01"),
    ("chi", "1"),
    ("gt", "0.1"),
    ("dw2", "10"),
];
const SQUEEZING_TIME: &str = "dw1=-50:50:101,gt=0.001:0.1:100";
const DETUNING_PLANE: &str = "dw1=-50:50:101,dw2=-50:50:101";

pub const PANELS: &[Panel] = &[
    Panel {
        id: "1a",
        title: "phonon squeezing lambda_V against the Stokes detuning",
        base: SQUEEZING,
        variants: &[single("dw1=-50:50:1001")],
        quantities: &["lambda_V"],
    },
    Panel {
        id: "1b",
        title: "pump-Stokes squeezing lambda_LS over detuning and time",
        base: SQUEEZING,
        variants: &[single(SQUEEZING_TIME)],
        quantities: &["lambda_LS"],
    },
    Panel {
        id: "1c",
        title: "Stokes-anti-Stokes squeezing lambda_SA over detuning and time",
        base: SQUEEZING,
        variants: &[single(SQUEEZING_TIME)],
        quantities: &["lambda_SA"],
    },
    Panel {
        id: "1d",
        title: "phonon-anti-Stokes squeezing lambda_VA over detuning and time",
        base: SQUEEZING,
        variants: &[single(SQUEEZING_TIME)],
        quantities: &["lambda_VA"],
    },
    Panel {
        id: "2",
        title: "pump squeezing lambda_L with thermal phonons over detuning and mean phonon number",
        base: &[("phonon", "chaotic"), ("I_L", "10"), ("I_A", "1"), ("I_S", "9"), ("chi", "1"), ("gt", "0.1"), ("dw2", "10")],
        variants: &[single("dw1=-50:50:101,n_mean=0:1:51")],
        quantities: &["lambda_L"],
    },
    Panel {
        id: "3a",
        title: "Stokes-phonon joint number distribution over detuning and n_S = n_V",
        base: &[("phonon", "chaotic"), ("n_mean", "0"), ("gt", "0.1"), ("I_L", "10"), ("I_A", "1"), ("chi", "1")],
        variants: &[single("dw1=-50:50:101,n_SV=0:5:51")],
        quantities: &["joint_SV"],
    },
    Panel {
        id: "3b",
        title: "Stokes-phonon joint number distribution over detuning and time",
        base: &[
            ("phonon", "chaotic"),
            ("n_mean", "0"),
            ("n_S", "0.1"),
            ("n_V", "0.1"),
            ("I_L", "10"),
            ("I_A", "1"),
            ("chi", "1"),
        ],
        variants: &[single(SQUEEZING_TIME)],
        quantities: &["joint_SV"],
    },
    Panel {
        id: "3c",
        title: "pump-phonon joint number distribution over both detunings",
        base: &[
            ("phonon", "chaotic"),
            ("n_mean", "0"),
            ("n_V", "0.12"),
            ("n_L", "0.06"),
            ("gt", "0.1"),
            ("I_L", "10"),
            ("I_A", "1"),
            ("chi", "1"),
        ],
        variants: &[single(DETUNING_PLANE)],
        quantities: &["joint_LV"],
    },
    Panel {
        id: "3d",
        title: "pump-phonon joint number distribution over locked detuning and pump number",
        base: &[("phonon", "chaotic"), ("n_mean", "0"), ("n_V", "2"), ("gt", "0.1"), ("I_L", "10"), ("I_A", "1"), ("chi", "1")],
        variants: locked!("n_L=0:2:21"),
        quantities: &["joint_LV"],
    },
    Panel {
        id: "4",
        title: "threshold ordering parameters for Stokes-phonon and pump-phonon quasidistributions",
        base: &[("phonon", "chaotic"), ("n_mean", "0"), ("I_L", "10"), ("I_A", "1"), ("chi", "1"), ("gt", "0.1")],
        variants: &[single(DETUNING_PLANE)],
        quantities: &["sth_SV", "sth_LV"],
    },
    Panel {
        id: "5a",
        title: "Stokes-phonon s-ordered quasidistribution (s = 0.8) against time",
        base: &[
            ("phonon", "chaotic"),
            ("n_mean", "0"),
            ("s", "0.8"),
            ("I_L", "10"),
            ("I_A", "1"),
            ("chi", "1"),
            ("dw1", "1"),
            ("W_S", "1"),
            ("W_V", "0.5"),
        ],
        variants: &[
            Variant { suffix: "plus", extra: &[("dw2", "1")], sweep: "gt=0.001:0.1:100" },
            Variant { suffix: "minus", extra: &[("dw2", "-1")], sweep: "gt=0.001:0.1:100" },
        ],
        quantities: &["quasi_SV"],
    },
    Panel {
        id: "5b",
        title: "pump-phonon Glauber-Sudarshan quasidistribution against time",
        base: &[
            ("phonon", "chaotic"),
            ("n_mean", "0"),
            ("s", "1"),
            ("I_L", "10"),
            ("I_A", "1"),
            ("chi", "1"),
            ("dw1", "1"),
            ("W_L", "1"),
            ("W_V", "0.5"),
        ],
        variants: &[
            Variant { suffix: "plus", extra: &[("dw2", "1")], sweep: "gt=0.001:0.1:100" },
            Variant { suffix: "minus", extra: &[("dw2", "-1")], sweep: "gt=0.001:0.1:100" },
        ],
        quantities: &["quasi_LV"],
    },
    Panel {
        id: "6a",
        title: "pump-phonon Glauber-Sudarshan quasidistribution over both detunings",
        base: &[
            ("phonon", "chaotic"),
            ("n_mean", "0"),
            ("W_L", "0.1"),
            ("W_V", "0.05"),
            ("gt", "0.1"),
            ("I_L", "10"),
            ("I_A", "1"),
            ("chi", "1"),
        ],
        variants: &[single(DETUNING_PLANE)],
        quantities: &["quasi_LV"],
    },
    Panel {
        id: "6b",
        title: "pump-phonon Glauber-Sudarshan quasidistribution over locked detuning and time",
        base: &[("phonon", "chaotic"), ("n_mean", "0"), ("W_L", "0.1"), ("W_V", "0.05"), ("I_L", "10"), ("I_A", "1"), ("chi", "1")],
        variants: locked!("gt=0.001:0.1:100"),
        quantities: &["quasi_LV"],
    },
    Panel {
        id: "6c",
        title: "pump-phonon Glauber-Sudarshan quasidistribution over locked detuning and W_L",
        base: &[("phonon", "chaotic"), ("n_mean", "0"), ("W_V", "0.05"), ("gt", "0.1"), ("I_L", "10"), ("I_A", "1"), ("chi", "1")],
        variants: locked!("W_L=0.01:2:100"),
        quantities: &["quasi_LV"],
    },
    Panel {
        id: "6d",
        title: "pump-phonon Glauber-Sudarshan quasidistribution over locked detuning and W_V",
        base: &[("phonon", "chaotic"), ("n_mean", "0"), ("W_L", "1"), ("gt", "0.1"), ("I_L", "10"), ("I_A", "1"), ("chi", "1")],
        variants: locked!("W_V=0.01:2:100"),
        quantities: &["quasi_LV"],
    },
    Panel {
        id: "7",
        title: "conditional phonon Fano factor over locked detuning and pump number",
        base: &[("phonon", "chaotic"), ("n_mean", "0"), ("gt", "0.1"), ("I_L", "10"), ("I_A", "1"), ("chi", "1")],
        variants: locked!("n_L=0:10:11"),
        quantities: &["fano_V"],
    },
    Panel {
        id: "8a",
        title: "conditional pump distribution p_c(n_L; n_V) over both detunings",
        base: &[
            ("phonon", "chaotic"),
            ("n_mean", "0"),
            ("gt", "0.1"),
            ("n_V", "2"),
            ("n_L", "1"),
            ("I_L", "10"),
            ("I_A", "1"),
            ("chi", "1"),
        ],
        variants: &[single(DETUNING_PLANE)],
        quantities: &["cond_L"],
    },
    Panel {
        id: "8b",
        title: "conditional phonon distribution p_c(n_V; n_L) over locked detuning and time",
        base: &[
            ("phonon", "chaotic"),
            ("n_mean", "0"),
            ("n_V", "2"),
            ("n_L", "1"),
            ("I_L", "10"),
            ("I_A", "1"),
            ("chi", "1"),
        ],
        variants: locked!("gt=0.001:0.1:100"),
        quantities: &["cond_V"],
    },
    Panel {
        id: "9a",
        title: "difference number distribution and Poisson reference over both detunings",
        base: &[("phonon", "chaotic"), ("n_mean", "0"), ("gt", "0.1"), ("I_L", "10"), ("I_A", "1"), ("chi", "1"), ("n", "1.6")],
        variants: &[single(DETUNING_PLANE)],
        quantities: &["p_minus", "p_poisson"],
    },
    Panel {
        id: "9b",
        title: "difference number distribution and Poisson reference over locked detuning and n",
        base: &[("phonon", "chaotic"), ("n_mean", "0"), ("gt", "0.1"), ("I_L", "10"), ("I_A", "1"), ("chi", "1")],
        variants: locked!("n=0:5:51"),
        quantities: &["p_minus", "p_poisson"],
    },
    Panel {
        id: "sp-a",
        title: "Stokes-phonon s-ordered quasidistribution (s = 0.8) over detuning and time",
        base: &[
            ("phonon", "chaotic"),
            ("n_mean", "0"),
            ("s", "0.8"),
            ("W_S", "1"),
            ("W_V", "0.1"),
            ("I_L", "10"),
            ("chi", "1"),
        ],
        variants: &[single(SQUEEZING_TIME)],
        quantities: &["quasi_SV"],
    },
    Panel {
        id: "sp-b",
        title: "Stokes-phonon s-ordered quasidistribution (s = 0.8) over detuning and W_S",
        base: &[
            ("phonon", "chaotic"),
            ("n_mean", "0"),
            ("s", "0.8"),
            ("gt", "0.09"),
            ("W_V", "0.01"),
            ("I_L", "10"),
            ("chi", "1"),
        ],
        variants: &[single("dw1=-50:50:101,W_S=0.01:2:100")],
        quantities: &["quasi_SV"],
    },
    Panel {
        id: "sp-c",
        title: "Stokes-phonon s-ordered quasidistribution (s = 0.8) over detuning and W_V",
        base: &[
            ("phonon", "chaotic"),
            ("n_mean", "0"),
            ("s", "0.8"),
            ("gt", "0.09"),
            ("W_S", "1"),
            ("I_L", "10"),
            ("chi", "1"),
        ],
        variants: &[single("dw1=-50:50:101,W_V=0.01:2:100")],
        quantities: &["quasi_SV"],
    },
];

/// Panels selected by an id: an exact panel (`3b`) or every panel of a
/// figure (`3`, `sp`).
pub fn select(id: &str) -> Result<Vec<&'static Panel>, CliError> {
    if let Some(p) = PANELS.iter().find(|p| p.id == id) {
        return Ok(vec![p]);
    }
    let group: Vec<&Panel> = PANELS
        .iter()
        .filter(|_| !id.is_empty())
        .filter(|p| p.id.strip_prefix(id).is_some_and(|rest| rest.len() == 1 || rest.starts_with('-')))
        .collect();
    if group.is_empty() {
        let ids: Vec<&str> = PANELS.iter().map(|p| p.id).collect();
        return Err(CliError::Validation(format!("unknown figure '{id}'; known: {}", ids.join(", "))));
    }
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantities::Quantity;
    use crate::sweep::SweepSpec;

    #[test]
    fn every_preset_is_well_formed() {
        for panel in PANELS {
            for v in panel.variants {
                panel.params(v).unwrap().config().unwrap();
                SweepSpec::parse(v.sweep).unwrap();
            }
            for q in panel.quantities {
                Quantity::parse(q).unwrap();
            }
        }
    }

    #[test]
    fn selection() {
        assert_eq!(select("3b").unwrap().len(), 1);
        assert_eq!(select("3").unwrap().iter().map(|p| p.id).collect::<Vec<_>>(), ["3a", "3b", "3c", "3d"]);
        assert_eq!(select("2").unwrap().len(), 1);
        assert_eq!(select("sp").unwrap().len(), 3);
        assert!(select("10").is_err());
        assert!(select("").is_err());
    }
}
