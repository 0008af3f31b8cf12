//! Named scalar quantities that `scan` and `figure` can tabulate.

use raman_core::config::{ModeId, Pair};
use raman_core::distributions::{
    conditional_phonon_at, conditional_pump_at, difference_at, fano_conditional, joint_lv_at, joint_sv_at, poisson_at,
    quasi_lv, quasi_sv, sth_lv, sth_sv,
};
use raman_core::{eval_coeffs, noise_terms, NoiseTerms, WGrid, WitnessReport};

use crate::error::CliError;
use crate::params::Params;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Quantity {
    /// A row of the witness report, e.g. `lambda_V` or `K_plus_SV`.
    Witness(String),
    /// Noise occupation `B_j`.
    Noise(ModeId),
    SthSv,
    SthLv,
    JointSv,
    JointLv,
    QuasiSv,
    QuasiLv,
    FanoPump,
    FanoPhonon,
    CondPump,
    CondPhonon,
    DiffMinus,
    DiffPoisson,
}

const SCALARS: &[(&str, Quantity)] = &[
    ("sth_SV", Quantity::SthSv),
    ("sth_LV", Quantity::SthLv),
    ("joint_SV", Quantity::JointSv),
    ("joint_LV", Quantity::JointLv),
    ("quasi_SV", Quantity::QuasiSv),
    ("quasi_LV", Quantity::QuasiLv),
    ("fano_L", Quantity::FanoPump),
    ("fano_V", Quantity::FanoPhonon),
    ("cond_L", Quantity::CondPump),
    ("cond_V", Quantity::CondPhonon),
    ("p_minus", Quantity::DiffMinus),
    ("p_poisson", Quantity::DiffPoisson),
];

/// Names of every witness-report row, in report order.
pub fn witness_names() -> Vec<String> {
    let mut out = Vec::new();
    for prefix in ["K_plus", "K_minus", "C_shot"] {
        out.extend(Pair::ALL.iter().map(|p| format!("{prefix}_{p}")));
    }
    out.extend(ModeId::ALL.iter().map(|m| format!("lambda_{m}")));
    out.extend(Pair::ALL.iter().map(|p| format!("lambda_{p}")));
    out.extend(ModeId::ALL.iter().map(|m| format!("varW_{m}")));
    for prefix in ["covW", "sumvar", "diffvar"] {
        out.extend(Pair::ALL.iter().map(|p| format!("{prefix}_{p}")));
    }
    out
}

/// Every accepted quantity name.
pub fn all_names() -> Vec<String> {
    let mut out = witness_names();
    out.extend(ModeId::ALL.iter().map(|m| format!("B_{m}")));
    out.extend(SCALARS.iter().map(|(n, _)| n.to_string()));
    out
}

/// Whether a witness value certifies nonclassicality; `None` for rows that
/// are not witnesses on their own (wave covariances).
pub fn nonclassical(name: &str, value: f64) -> Option<bool> {
    if name.starts_with("covW") {
        None
    } else if name.starts_with("lambda") {
        Some(value < 1.0)
    } else {
        Some(value < 0.0)
    }
}

impl Quantity {
    pub fn parse(name: &str) -> Result<Quantity, CliError> {
        if let Some((_, q)) = SCALARS.iter().find(|(n, _)| *n == name) {
            return Ok(q.clone());
        }
        if let Some(m) = name.strip_prefix("B_").and_then(ModeId::parse) {
            return Ok(Quantity::Noise(m));
        }
        if witness_names().iter().any(|n| n == name) {
            return Ok(Quantity::Witness(name.to_string()));
        }
        Err(CliError::Validation(format!("unknown quantity '{name}'; known: {}", all_names().join(", "))))
    }

    pub fn parse_list(list: &str) -> Result<Vec<Quantity>, CliError> {
        let names: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        if names.is_empty() {
            return Err(CliError::Validation("empty quantity list".into()));
        }
        names.into_iter().map(Quantity::parse).collect()
    }

    pub fn name(&self) -> String {
        match self {
            Quantity::Witness(n) => n.clone(),
            Quantity::Noise(m) => format!("B_{m}"),
            q => SCALARS.iter().find(|(_, s)| s == q).map(|(n, _)| n.to_string()).unwrap_or_default(),
        }
    }
}

/// Lazily built evaluation state for one parameter point.
pub struct Point<'a> {
    params: &'a Params,
    nt: NoiseTerms,
    report: Option<Vec<(String, f64)>>,
}

impl<'a> Point<'a> {
    pub fn new(params: &'a Params) -> Result<Self, CliError> {
        let cfg = params.config()?;
        let nt = noise_terms(&cfg, &eval_coeffs(&cfg));
        Ok(Point { params, nt, report: None })
    }

    pub fn noise_terms(&self) -> &NoiseTerms {
        &self.nt
    }

    pub fn eval(&mut self, q: &Quantity) -> Result<f64, CliError> {
        let p = self.params;
        let nt = &self.nt;
        let (b_l, b_s, b_v) = (nt.b[ModeId::L], nt.b[ModeId::S], nt.b[ModeId::V]);
        Ok(match q {
            Quantity::Witness(name) => {
                let rows = self.report.get_or_insert_with(|| WitnessReport::new(nt, p.form).rows());
                rows.iter().find(|(n, _)| n == name).map(|(_, v)| *v).expect("validated witness name")
            }
            Quantity::Noise(m) => nt.b[*m],
            Quantity::SthSv => sth_sv(nt),
            Quantity::SthLv => sth_lv(nt),
            Quantity::JointSv => joint_sv_at(b_s, p.n_s, p.n_v)?,
            Quantity::JointLv => joint_lv_at(b_l, b_v, p.n_l, p.n_v)?,
            Quantity::QuasiSv => quasi_sv(nt, p.s, &WGrid::new(vec![p.w_s], vec![p.w_v])?)?.values[0][0],
            Quantity::QuasiLv => quasi_lv(nt, &WGrid::new(vec![p.w_l], vec![p.w_v])?)?.values[0][0],
            Quantity::FanoPump => fano_conditional(nt)?.pump,
            Quantity::FanoPhonon => fano_conditional(nt)?.phonon(p.n_l),
            Quantity::CondPump => conditional_pump_at(b_l, b_v, p.n_l, p.n_v)?,
            Quantity::CondPhonon => conditional_phonon_at(b_l, b_v, p.n_v, p.n_l)?,
            Quantity::DiffMinus => difference_at(b_l, b_v, p.n)?,
            Quantity::DiffPoisson => poisson_at(b_l + b_v, p.n),
        })
    }
}

/// Evaluate a list of quantities at one parameter point.
pub fn evaluate(params: &Params, qs: &[Quantity]) -> Result<Vec<f64>, CliError> {
    let mut point = Point::new(params)?;
    qs.iter().map(|q| point.eval(q)).collect()
}
