//! Scenario reports and parameter sweeps, configured from JSON.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};
use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bellcorr::horodecki_m;
use crate::entanglement::{
    closed_forms_bell, closed_forms_triplet, concurrence, total_entanglement, BellClosedForms, TripletClosedForms,
};
use crate::error::{Error, Result};
use crate::kinematics::wigner_angle_perpendicular;
use crate::qstate::{Partition, PureState};
use crate::relboost::{boost_scenario, ScenarioParams, SpinFamily};

fn config_error(e: serde_json::Error) -> Error {
    Error::Config(e.to_string())
}

/// A single scenario: the spin family, momentum angle `α`, and either both speeds or `δ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub family: SpinFamily,
    pub alpha: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
}

impl ScenarioConfig {
    /// Parses JSON; with `degrees` every angle (not the speeds) is read in degrees.
    pub fn from_json(text: &str, degrees: bool) -> Result<Self> {
        let mut cfg: Self = serde_json::from_str(text).map_err(config_error)?;
        if degrees {
            cfg.alpha = cfg.alpha.to_radians();
            cfg.delta = cfg.delta.map(f64::to_radians);
            cfg.family = match cfg.family {
                SpinFamily::BellType { beta } => SpinFamily::BellType { beta: beta.to_radians() },
                SpinFamily::TripletType { theta, phi } => {
                    SpinFamily::TripletType { theta: theta.to_radians(), phi: phi.to_radians() }
                }
            };
        }
        cfg.params()?;
        Ok(cfg)
    }

    pub fn params(&self) -> Result<ScenarioParams> {
        let angles = match self.family {
            SpinFamily::BellType { beta } => vec![("alpha", self.alpha), ("beta", beta)],
            SpinFamily::TripletType { theta, phi } => vec![("alpha", self.alpha), ("theta", theta), ("phi", phi)],
        };
        for (name, x) in angles.into_iter().chain(self.delta.map(|d| ("delta", d))) {
            if !x.is_finite() {
                return Err(Error::Config(format!("field `{name}` must be finite")));
            }
        }
        match (self.v, self.w, self.delta) {
            (Some(v), Some(w), None) => {
                check_speed("v", v)?;
                check_speed("w", w)?;
                ScenarioParams::from_speeds(self.family, self.alpha, v, w)
            }
            (None, None, Some(d)) => Ok(ScenarioParams::with_delta(self.family, self.alpha, d)),
            _ => Err(Error::Config("give either both `v` and `w`, or `delta` alone".into())),
        }
    }
}

fn check_speed(name: &str, x: f64) -> Result<()> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::Config(format!("field `{name}` = {x} must lie in [0, 1)")));
    }
    Ok(())
}

/// Entanglement `E` of one partition before and after the boost.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionEntry {
    pub partition: String,
    pub initial: f64,
    pub boosted: f64,
}

/// Closed-form values for the scenario's family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ClosedForms {
    Bell(BellClosedForms),
    Triplet(TripletClosedForms),
}

/// `|numeric − closed form|` for one quantity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    pub quantity: String,
    pub numeric: f64,
    pub closed_form: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub config: ScenarioConfig,
    pub delta: f64,
    pub partitions: Vec<PartitionEntry>,
    pub spin_concurrence_initial: f64,
    pub spin_concurrence_boosted: f64,
    pub horodecki_m_initial: f64,
    pub horodecki_m_boosted: f64,
    pub closed_forms: ClosedForms,
    pub residuals: Vec<Residual>,
    pub max_residual: f64,
}

const NAMED_PARTITIONS: [&str; 4] = ["four_qubits", "spin_momentum", "alice_bob", "alice_bob_crossed"];

fn named_partition(name: &str) -> Partition {
    match name {
        "four_qubits" => Partition::four_qubits(),
        "spin_momentum" => Partition::spin_momentum(),
        "alice_bob" => Partition::alice_bob(),
        _ => Partition::alice_bob_crossed(),
    }
}

fn spin_state_measures(total: &PureState) -> Result<(f64, f64)> {
    let spins = total.reduce(&[2, 3])?;
    Ok((concurrence(&spins)?, horodecki_m(&spins)?))
}

pub fn run_scenario(config: &ScenarioConfig) -> Result<ScenarioReport> {
    let params = config.params()?;
    let (initial, boosted) = boost_scenario(&params)?;
    let mut partitions = Vec::new();
    for name in NAMED_PARTITIONS {
        let p = named_partition(name);
        partitions.push(PartitionEntry {
            partition: name.into(),
            initial: total_entanglement(&initial, &p)?,
            boosted: total_entanglement(&boosted, &p)?,
        });
    }
    let e = |name: &str| partitions.iter().find(|p| p.partition == name).expect("named partition");
    let (four, sm, ab) = (e("four_qubits"), e("spin_momentum"), e("alice_bob"));

    let mut pairs: Vec<(&str, f64, f64)> = Vec::new();
    let closed_forms = match params.spin_family {
        SpinFamily::BellType { beta } => {
            let f = closed_forms_bell(params.alpha, beta, params.delta);
            pairs.push(("e_4q_unboosted", four.initial, f.e_4q_unboosted));
            pairs.push(("e_4q_boosted", four.boosted, f.e_4q_boosted));
            pairs.push(("e_4q_diff", four.boosted - four.initial, f.e_4q_diff));
            pairs.push(("e_spinmom_boosted", sm.boosted, f.e_spinmom_boosted));
            pairs.push(("e_ab_initial", ab.initial, f.e_ab));
            pairs.push(("e_ab_boosted", ab.boosted, f.e_ab));
            ClosedForms::Bell(f)
        }
        SpinFamily::TripletType { theta, phi } => {
            let f = closed_forms_triplet(params.alpha, theta, phi, params.delta);
            pairs.push(("e_diff_4q", four.boosted - four.initial, f.e_diff_4q));
            pairs.push(("e_spinmom_boosted", sm.boosted, f.e_spinmom_boosted));
            pairs.push(("e_ab_initial", ab.initial, f.e_ab));
            pairs.push(("e_ab_boosted", ab.boosted, f.e_ab));
            ClosedForms::Triplet(f)
        }
    };
    let residuals: Vec<Residual> = pairs
        .into_iter()
        .map(|(q, numeric, closed_form)| Residual {
            quantity: q.into(),
            numeric,
            closed_form,
            residual: (numeric - closed_form).abs(),
        })
        .collect();
    let max_residual = residuals.iter().map(|r| r.residual).fold(0.0, f64::max);
    let (c0, m0) = spin_state_measures(&initial)?;
    let (c1, m1) = spin_state_measures(&boosted)?;
    Ok(ScenarioReport {
        config: config.clone(),
        delta: params.delta,
        partitions,
        spin_concurrence_initial: c0,
        spin_concurrence_boosted: c1,
        horodecki_m_initial: m0,
        horodecki_m_boosted: m1,
        closed_forms,
        residuals,
        max_residual,
    })
}

/// Sweepable scenario parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Param {
    Alpha,
    Beta,
    Theta,
    Phi,
    Delta,
    V,
    W,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::Alpha => "alpha",
            Param::Beta => "beta",
            Param::Theta => "theta",
            Param::Phi => "phi",
            Param::Delta => "delta",
            Param::V => "v",
            Param::W => "w",
        }
    }

    pub fn is_angle(self) -> bool {
        !matches!(self, Param::V | Param::W)
    }
}

/// Quantities a sweep can tabulate. `cf_*` columns are closed forms, the rest numeric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Output {
    #[serde(rename = "delta")]
    Delta,
    #[serde(rename = "e_4q_initial")]
    E4qInitial,
    #[serde(rename = "e_4q_boosted")]
    E4qBoosted,
    #[serde(rename = "e_4q_diff")]
    E4qDiff,
    #[serde(rename = "e_spinmom_initial")]
    ESpinmomInitial,
    #[serde(rename = "e_spinmom_boosted")]
    ESpinmomBoosted,
    #[serde(rename = "e_ab_initial")]
    EAbInitial,
    #[serde(rename = "e_ab_boosted")]
    EAbBoosted,
    #[serde(rename = "concurrence_boosted")]
    ConcurrenceBoosted,
    #[serde(rename = "horodecki_m_boosted")]
    HorodeckiMBoosted,
    #[serde(rename = "cf_e_4q_unboosted")]
    CfE4qUnboosted,
    #[serde(rename = "cf_e_4q_boosted")]
    CfE4qBoosted,
    #[serde(rename = "cf_e_4q_diff")]
    CfE4qDiff,
    #[serde(rename = "cf_e_spinmom_boosted")]
    CfESpinmomBoosted,
    #[serde(rename = "cf_e_ab")]
    CfEAb,
}

impl Output {
    pub fn name(self) -> &'static str {
        match self {
            Output::Delta => "delta",
            Output::E4qInitial => "e_4q_initial",
            Output::E4qBoosted => "e_4q_boosted",
            Output::E4qDiff => "e_4q_diff",
            Output::ESpinmomInitial => "e_spinmom_initial",
            Output::ESpinmomBoosted => "e_spinmom_boosted",
            Output::EAbInitial => "e_ab_initial",
            Output::EAbBoosted => "e_ab_boosted",
            Output::ConcurrenceBoosted => "concurrence_boosted",
            Output::HorodeckiMBoosted => "horodecki_m_boosted",
            Output::CfE4qUnboosted => "cf_e_4q_unboosted",
            Output::CfE4qBoosted => "cf_e_4q_boosted",
            Output::CfE4qDiff => "cf_e_4q_diff",
            Output::CfESpinmomBoosted => "cf_e_spinmom_boosted",
            Output::CfEAb => "cf_e_ab",
        }
    }

    fn needs_family(self) -> bool {
        self != Output::Delta
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    BellType,
    TripletType,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub name: Param,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        let n = self.steps;
        (0..n)
            .map(|i| if i + 1 == n { self.max } else { self.min + (self.max - self.min) * i as f64 / (n - 1) as f64 })
            .collect()
    }
}

/// A rectangular grid over some parameters with the others held fixed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(default)]
    pub family: Option<FamilyKind>,
    pub axes: Vec<Axis>,
    #[serde(default)]
    pub fixed: BTreeMap<Param, f64>,
    pub outputs: Vec<Output>,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

impl SweepSpec {
    /// Parses and validates JSON; with `degrees` angle ranges and values are read in degrees.
    pub fn from_json(text: &str, degrees: bool) -> Result<Self> {
        let mut spec: Self = serde_json::from_str(text).map_err(config_error)?;
        if degrees {
            for axis in &mut spec.axes {
                if axis.name.is_angle() {
                    axis.min = axis.min.to_radians();
                    axis.max = axis.max.to_radians();
                }
            }
            for (p, x) in spec.fixed.iter_mut() {
                if p.is_angle() {
                    *x = x.to_radians();
                }
            }
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn preset(name: &str) -> Result<Self> {
        let axis = |name, min, max, steps| Axis { name, min, max, steps };
        let spec = match name {
            "fig1" => Self {
                family: None,
                axes: vec![axis(Param::V, 0.0, 0.999, 51), axis(Param::W, 0.0, 0.999, 51)],
                fixed: BTreeMap::new(),
                outputs: vec![Output::Delta],
                out: None,
            },
            "fig2" => Self {
                family: Some(FamilyKind::BellType),
                axes: vec![axis(Param::Alpha, 0.0, PI, 41), axis(Param::Beta, 0.0, PI, 41)],
                fixed: BTreeMap::from([(Param::Delta, FRAC_PI_2)]),
                outputs: vec![Output::E4qDiff, Output::CfE4qDiff],
                out: None,
            },
            "fig3" => Self {
                family: Some(FamilyKind::BellType),
                axes: vec![axis(Param::Alpha, 0.0, PI, 41), axis(Param::Beta, 0.0, PI, 41)],
                fixed: BTreeMap::from([(Param::Delta, FRAC_PI_4)]),
                outputs: vec![Output::ESpinmomBoosted, Output::CfESpinmomBoosted],
                out: None,
            },
            "fig4" => Self {
                family: Some(FamilyKind::TripletType),
                axes: vec![axis(Param::Theta, 0.0, TAU, 41), axis(Param::Phi, 0.0, TAU, 41)],
                fixed: BTreeMap::from([(Param::Alpha, FRAC_PI_4), (Param::Delta, FRAC_PI_4)]),
                outputs: vec![Output::ESpinmomBoosted, Output::CfESpinmomBoosted],
                out: None,
            },
            other => return Err(Error::Config(format!("unknown preset `{other}` (expected fig1, fig2, fig3 or fig4)"))),
        };
        spec.validate()?;
        Ok(spec)
    }

    fn given(&self) -> Vec<Param> {
        self.axes.iter().map(|a| a.name).chain(self.fixed.keys().copied()).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() {
            return Err(Error::Config("`axes` must list at least one parameter".into()));
        }
        if self.outputs.is_empty() {
            return Err(Error::Config("`outputs` must list at least one column".into()));
        }
        for a in &self.axes {
            if a.steps < 2 {
                return Err(Error::Config(format!("axis `{}` needs at least 2 steps", a.name.name())));
            }
            if !(a.min.is_finite() && a.max.is_finite() && a.min <= a.max) {
                return Err(Error::Config(format!("axis `{}` needs finite min ≤ max", a.name.name())));
            }
            if !a.name.is_angle() && (a.min < 0.0 || a.max >= 1.0) {
                return Err(Error::Config(format!("speed axis `{}` must lie in [0, 1)", a.name.name())));
            }
        }
        for (p, &x) in &self.fixed {
            if !x.is_finite() {
                return Err(Error::Config(format!("fixed `{}` must be finite", p.name())));
            }
            if !p.is_angle() {
                check_speed(p.name(), x)?;
            }
        }
        let given = self.given();
        for (i, p) in given.iter().enumerate() {
            if given[..i].contains(p) {
                return Err(Error::Config(format!("parameter `{}` is given more than once", p.name())));
            }
        }
        let has = |p: Param| given.contains(&p);
        let speeds = has(Param::V) || has(Param::W);
        if speeds && has(Param::Delta) {
            return Err(Error::Config("give either `v` and `w`, or `delta`, not both".into()));
        }
        if !has(Param::Delta) && !(has(Param::V) && has(Param::W)) {
            return Err(Error::Config("the sweep needs `delta`, or both `v` and `w`".into()));
        }
        let needed: &[Param] = match self.family {
            None => {
                if let Some(o) = self.outputs.iter().find(|o| o.needs_family()) {
                    return Err(Error::Config(format!("output `{}` needs a `family`", o.name())));
                }
                &[]
            }
            Some(FamilyKind::BellType) => &[Param::Alpha, Param::Beta],
            Some(FamilyKind::TripletType) => &[Param::Alpha, Param::Theta, Param::Phi],
        };
        for p in needed {
            if !has(*p) {
                return Err(Error::Config(format!("parameter `{}` is neither swept nor fixed", p.name())));
            }
        }
        for p in [Param::Alpha, Param::Beta, Param::Theta, Param::Phi] {
            if has(p) && !needed.contains(&p) {
                return Err(Error::Config(format!("parameter `{}` does not apply to this sweep", p.name())));
            }
        }
        if self.family == Some(FamilyKind::TripletType) {
            if let Some(o) = self.outputs.iter().find(|o| matches!(o, Output::CfE4qUnboosted | Output::CfE4qBoosted)) {
                return Err(Error::Config(format!("output `{}` has no triplet-type closed form", o.name())));
            }
        }
        Ok(())
    }

    pub fn num_points(&self) -> usize {
        self.axes.iter().map(|a| a.steps).product()
    }
}

/// Sweep result: a header and one row per grid point, first axis outermost.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl SweepTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_string()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

/// Comma-separated, LF line endings, 17 significant digits per value.
impl fmt::Display for SweepTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.header.join(","))?;
        let mut line = String::new();
        for row in &self.rows {
            line.clear();
            for (i, x) in row.iter().enumerate() {
                if i > 0 {
                    line.push(',');
                }
                write!(line, "{x:.16e}")?;
            }
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

fn family_at(kind: FamilyKind, at: &BTreeMap<Param, f64>) -> SpinFamily {
    match kind {
        FamilyKind::BellType => SpinFamily::BellType { beta: at[&Param::Beta] },
        FamilyKind::TripletType => SpinFamily::TripletType { theta: at[&Param::Theta], phi: at[&Param::Phi] },
    }
}

fn evaluate(spec: &SweepSpec, at: &BTreeMap<Param, f64>) -> Result<Vec<f64>> {
    let delta = match at.get(&Param::Delta) {
        Some(&d) => d,
        None => wigner_angle_perpendicular(at[&Param::V], at[&Param::W])?,
    };
    let Some(kind) = spec.family else {
        return Ok(spec.outputs.iter().map(|_| delta).collect());
    };
    let family = family_at(kind, at);
    let alpha = at[&Param::Alpha];
    let needs_states = spec.outputs.iter().any(|o| !o.name().starts_with("cf_") && *o != Output::Delta);
    let states = if needs_states {
        Some(boost_scenario(&ScenarioParams::with_delta(family, alpha, delta))?)
    } else {
        None
    };
    let e = |boosted: bool, p: Partition| -> Result<f64> {
        let (i, b) = states.as_ref().expect("states computed for numeric outputs");
        total_entanglement(if boosted { b } else { i }, &p)
    };
    let bell = |f: fn(&BellClosedForms) -> f64| match family {
        SpinFamily::BellType { beta } => f(&closed_forms_bell(alpha, beta, delta)),
        SpinFamily::TripletType { .. } => unreachable!("rejected by validation"),
    };
    let cf = |bell_field: fn(&BellClosedForms) -> f64, triplet_field: fn(&TripletClosedForms) -> f64| match family {
        SpinFamily::BellType { beta } => bell_field(&closed_forms_bell(alpha, beta, delta)),
        SpinFamily::TripletType { theta, phi } => triplet_field(&closed_forms_triplet(alpha, theta, phi, delta)),
    };
    spec.outputs
        .iter()
        .map(|o| match o {
            Output::Delta => Ok(delta),
            Output::E4qInitial => e(false, Partition::four_qubits()),
            Output::E4qBoosted => e(true, Partition::four_qubits()),
            Output::E4qDiff => Ok(e(true, Partition::four_qubits())? - e(false, Partition::four_qubits())?),
            Output::ESpinmomInitial => e(false, Partition::spin_momentum()),
            Output::ESpinmomBoosted => e(true, Partition::spin_momentum()),
            Output::EAbInitial => e(false, Partition::alice_bob()),
            Output::EAbBoosted => e(true, Partition::alice_bob()),
            Output::ConcurrenceBoosted | Output::HorodeckiMBoosted => {
                let (_, b) = states.as_ref().expect("states computed for numeric outputs");
                let (c, m) = spin_state_measures(b)?;
                Ok(if *o == Output::ConcurrenceBoosted { c } else { m })
            }
            Output::CfE4qUnboosted => Ok(bell(|f| f.e_4q_unboosted)),
            Output::CfE4qBoosted => Ok(bell(|f| f.e_4q_boosted)),
            Output::CfE4qDiff => Ok(cf(|f| f.e_4q_diff, |f| f.e_diff_4q)),
            Output::CfESpinmomBoosted => Ok(cf(|f| f.e_spinmom_boosted, |f| f.e_spinmom_boosted)),
            Output::CfEAb => Ok(cf(|f| f.e_ab, |f| f.e_ab)),
        })
        .collect()
}

/// Evaluates every grid point; rows come back in row-major order whatever the thread count.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    let grids: Vec<Vec<f64>> = spec.axes.iter().map(Axis::values).collect();
    let total = spec.num_points();
    let rows = (0..total)
        .into_par_iter()
        .map(|idx| {
            let mut at = spec.fixed.clone();
            let mut coords = vec![0.0; grids.len()];
            let mut rem = idx;
            for k in (0..grids.len()).rev() {
                let n = grids[k].len();
                coords[k] = grids[k][rem % n];
                rem /= n;
            }
            for (axis, &x) in spec.axes.iter().zip(&coords) {
                at.insert(axis.name, x);
            }
            let mut row = coords;
            row.extend(evaluate(spec, &at)?);
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let header = spec
        .axes
        .iter()
        .map(|a| a.name.name().to_string())
        .chain(spec.outputs.iter().map(|o| o.name().to_string()))
        .collect();
    Ok(SweepTable { header, rows })
}
