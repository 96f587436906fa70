//! Seeded randomized campaigns, one per identity or inequality.
//!
//! Sample `i` of a campaign seeded with `s` draws everything from [`sample_rng`]`(s, i)`, so the
//! report does not depend on evaluation order or thread count.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::appendix::{
    check_interm, check_jonas, check_monotonicity, random_density_matrix_from, rho_lambda,
};
use crate::density::DensityMatrix;
use crate::entropy::{correlator, von_neumann, zz, EntanglementReport};
use crate::error::{Error, Result};
use crate::linalg::{phase_aligned_distance, MAX_QUBITS};
use crate::presets::{
    maximally_mixed_pair_register, purified_rho_lambda, saturating_single_qubit_register,
};
use crate::protocols::{
    bound_purity, bound_sv, bound_sv2, closed_form_fidelity, mean_gate_fidelity,
    predicted_inaccurate_branch, run_protocol, ErrorKind, ProtocolKind, ProtocolSpec,
};
use crate::qcore::{random_pure_state_from, sample_rng, PureState, SampleRng};
use crate::state_file;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Campaign {
    /// Simulated fidelity against `cos²(ε/2) + C² sin²(ε/2)`.
    EqualityOracle,
    /// Spread of the simulated fidelity over the δ grid.
    DeltaIndependence,
    /// Deviated branches against `√p_j A_j φ^j`.
    ErrorFactorization,
    /// The three rotation protocols branch by branch.
    CircuitEquivalence,
    /// `F ≤ 1 − S sin²(ε/2)`
    BoundMain,
    /// `F ≤ 1 − [1 − f⁻¹(S_v)²] sin²(ε/2)`
    BoundSv,
    /// `F ≤ 1 − [1 − g⁻¹(S_v2)²] sin²(ε/2)` on samples with `S_v2 ≥ 1`.
    BoundMain2,
    /// Engineered registers that meet the bounds with equality.
    Saturation,
    /// `S_v2 ≤ g(|C_zz|)`
    Jonas,
    /// Relative entropy does not grow under dephasing.
    Monotonicity,
    /// `Tr ρ log₂ ρ ≥ Σ_ab ρ_ab log₂ ρ_ab`
    Interm,
    /// `C_zz(ρ_λ) = 1` while `S_v2(ρ_λ)` ranges over `[0, 1]`.
    Counterexample,
}

impl Campaign {
    pub const ALL: [Campaign; 12] = [
        Campaign::EqualityOracle,
        Campaign::DeltaIndependence,
        Campaign::ErrorFactorization,
        Campaign::CircuitEquivalence,
        Campaign::BoundMain,
        Campaign::BoundSv,
        Campaign::BoundMain2,
        Campaign::Saturation,
        Campaign::Jonas,
        Campaign::Monotonicity,
        Campaign::Interm,
        Campaign::Counterexample,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Campaign::EqualityOracle => "equality_oracle",
            Campaign::DeltaIndependence => "delta_independence",
            Campaign::ErrorFactorization => "error_factorization",
            Campaign::CircuitEquivalence => "circuit_equivalence",
            Campaign::BoundMain => "bound_main",
            Campaign::BoundSv => "bound_sv",
            Campaign::BoundMain2 => "bound_main2",
            Campaign::Saturation => "saturation",
            Campaign::Jonas => "jonas",
            Campaign::Monotonicity => "monotonicity",
            Campaign::Interm => "interm",
            Campaign::Counterexample => "counterexample",
        }
    }

    pub fn default_tolerance(self) -> f64 {
        match self {
            Campaign::EqualityOracle | Campaign::DeltaIndependence => 1e-10,
            Campaign::ErrorFactorization
            | Campaign::CircuitEquivalence
            | Campaign::Counterexample => 1e-12,
            _ => 1e-9,
        }
    }

    pub fn default_samples(self) -> u64 {
        match self {
            Campaign::Counterexample => 21,
            Campaign::Saturation => 50,
            Campaign::ErrorFactorization | Campaign::CircuitEquivalence => 200,
            _ => 1000,
        }
    }
}

impl FromStr for Campaign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Campaign::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownCampaign(s.to_string()))
    }
}

impl fmt::Display for Campaign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub name: String,
    pub samples: u64,
    pub seed: u64,
    pub epsilon_grid: Vec<f64>,
    pub delta_grid: Vec<f64>,
    pub register_sizes: Vec<usize>,
    pub tolerance: f64,
}

/// `{0, 0.1, …, 3.1, π}`
pub fn default_epsilon_grid() -> Vec<f64> {
    let mut g: Vec<f64> = (0..32).map(|k| k as f64 / 10.0).collect();
    g.push(PI);
    g
}

pub fn default_delta_grid() -> Vec<f64> {
    vec![0.0, 0.7, 2.3]
}

pub fn saturation_epsilon_grid() -> Vec<f64> {
    vec![0.0, FRAC_PI_4, FRAC_PI_2, 3.0 * FRAC_PI_4, PI]
}

pub const SATURATION_S_GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

impl CampaignConfig {
    /// Defaults for `campaign`: grids, register sizes 2–5 (4–6 for the two-qubit entropy
    /// bound, whose domain needs at least two partner qubits), and the campaign's tolerance.
    pub fn for_campaign(campaign: Campaign, seed: u64) -> Self {
        let register_sizes = match campaign {
            Campaign::BoundMain2 => vec![4, 5, 6],
            _ => vec![2, 3, 4, 5],
        };
        let epsilon_grid = match campaign {
            Campaign::Saturation => saturation_epsilon_grid(),
            _ => default_epsilon_grid(),
        };
        CampaignConfig {
            name: campaign.name().to_string(),
            samples: campaign.default_samples(),
            seed,
            epsilon_grid,
            delta_grid: default_delta_grid(),
            register_sizes,
            tolerance: campaign.default_tolerance(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidSpec(m));
        if self.samples == 0 {
            return bad("samples must be at least 1".into());
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return bad(format!("tolerance {} must be positive", self.tolerance));
        }
        if self.epsilon_grid.is_empty()
            || self.delta_grid.is_empty()
            || self.register_sizes.is_empty()
        {
            return bad("grids and register sizes must be non-empty".into());
        }
        if let Some(&n) = self
            .register_sizes
            .iter()
            .find(|&&n| !(2..MAX_QUBITS).contains(&n))
        {
            return bad(format!("register size {n} outside 2..={}", MAX_QUBITS - 1));
        }
        Ok(())
    }
}

/// Reproduction data for the sample with the largest violation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WorstCase {
    pub sample_index: u64,
    pub violation: f64,
    pub description: String,
    /// The input register in the state-file format, when the sample has one.
    pub state: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub campaign: String,
    pub seed: u64,
    pub samples: u64,
    pub tolerance: f64,
    pub epsilon_grid: Vec<f64>,
    pub delta_grid: Vec<f64>,
    pub register_sizes: Vec<usize>,
    pub checks_run: u64,
    /// Largest violation over all checks. Equalities contribute `|lhs − rhs|`; inequalities
    /// contribute the amount by which they fail (zero when they hold).
    pub max_violation: f64,
    pub worst_case: Option<WorstCase>,
    pub passed: bool,
    /// Aggregates such as the smallest observed slack or the sampled entropy range.
    pub metrics: BTreeMap<String, f64>,
    pub notes: Vec<String>,
}

impl CampaignReport {
    pub fn summary_line(&self) -> String {
        format!(
            "{} {}: {} checks, max violation {:.3e} (tolerance {:.1e}), seed {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.campaign,
            self.checks_run,
            self.max_violation,
            self.tolerance,
            self.seed
        )
    }
}

#[derive(Clone, Copy, Debug)]
enum Agg {
    Min,
    Max,
    Sum,
}

#[derive(Debug, Default)]
struct SampleOutcome {
    checks: u64,
    violation: f64,
    description: String,
    state: Option<PureState>,
    metrics: Vec<(&'static str, Agg, f64)>,
}

impl SampleOutcome {
    fn new(description: String, state: Option<PureState>) -> Self {
        SampleOutcome {
            description,
            state,
            ..Default::default()
        }
    }

    /// Records an equality check.
    fn equal(&mut self, lhs: f64, rhs: f64) {
        self.record((lhs - rhs).abs());
    }

    /// Records `lhs ≤ rhs`.
    fn at_most(&mut self, lhs: f64, rhs: f64) {
        self.record((lhs - rhs).max(0.0));
        self.metric("min_slack", Agg::Min, rhs - lhs);
    }

    /// Records a slack that must be nonnegative.
    fn nonnegative(&mut self, slack: f64) {
        self.record((-slack).max(0.0));
        self.metric("min_slack", Agg::Min, slack);
    }

    fn record(&mut self, violation: f64) {
        self.checks += 1;
        // NaN counts as an unbounded violation
        let v = if violation.is_nan() {
            f64::INFINITY
        } else {
            violation
        };
        self.violation = self.violation.max(v);
    }

    fn metric(&mut self, name: &'static str, agg: Agg, value: f64) {
        self.metrics.push((name, agg, value));
    }
}

pub fn run_campaign(config: &CampaignConfig, campaign: Campaign) -> Result<CampaignReport> {
    config.validate()?;
    let outcomes: Vec<SampleOutcome> = (0..config.samples)
        .into_par_iter()
        .map(|i| run_sample(config, campaign, i, &mut sample_rng(config.seed, i)))
        .collect::<Result<_>>()?;

    let mut checks_run = 0;
    let mut max_violation = 0.0f64;
    let mut worst: Option<(u64, &SampleOutcome)> = None;
    let mut metrics: BTreeMap<String, f64> = BTreeMap::new();
    for (i, o) in outcomes.iter().enumerate() {
        checks_run += o.checks;
        if o.checks > 0 && (worst.is_none() || o.violation > max_violation) {
            max_violation = max_violation.max(o.violation);
            worst = Some((i as u64, o));
        }
        for &(name, agg, value) in &o.metrics {
            let slot = metrics.entry(name.to_string()).or_insert(match agg {
                Agg::Min => f64::INFINITY,
                Agg::Max => f64::NEG_INFINITY,
                Agg::Sum => 0.0,
            });
            *slot = match agg {
                Agg::Min => slot.min(value),
                Agg::Max => slot.max(value),
                Agg::Sum => *slot + value,
            };
        }
    }
    // JSON has no infinities
    metrics.retain(|_, v| v.is_finite());
    let max_violation = if max_violation.is_finite() {
        max_violation
    } else {
        f64::MAX
    };

    let mut notes = Vec::new();
    if checks_run == 0 {
        notes.push("no sample fell inside the campaign's domain; nothing was checked".into());
    }
    if campaign == Campaign::Counterexample {
        let lo = metrics.get("min_sv2").copied().unwrap_or(f64::NAN);
        let hi = metrics.get("max_sv2").copied().unwrap_or(f64::NAN);
        notes.push(format!(
            "C_zz = 1 for every sampled lambda while S_v2 spans [{lo:.4}, {hi:.4}]; \
             for S_v2 < 1 no S_v2-based bound constrains F"
        ));
    }

    Ok(CampaignReport {
        campaign: campaign.name().to_string(),
        seed: config.seed,
        samples: config.samples,
        tolerance: config.tolerance,
        epsilon_grid: config.epsilon_grid.clone(),
        delta_grid: config.delta_grid.clone(),
        register_sizes: config.register_sizes.clone(),
        checks_run,
        max_violation,
        worst_case: worst.map(|(i, o)| WorstCase {
            sample_index: i,
            violation: if o.violation.is_finite() {
                o.violation
            } else {
                f64::MAX
            },
            description: o.description.clone(),
            state: o
                .state
                .as_ref()
                .map(|s| state_file::to_text(s, Some(&format!("{} sample {i}", campaign.name())))),
        }),
        passed: checks_run > 0 && max_violation <= config.tolerance,
        metrics,
        notes,
    })
}

fn random_spec(kind: ProtocolKind, n: usize, rng: &mut SampleRng) -> Result<ProtocolSpec> {
    let mut qubits: Vec<usize> = (0..n).collect();
    qubits.shuffle(rng);
    if kind.is_rotation() {
        ProtocolSpec::rotation(kind, qubits[0], rng.random_range(0.0..2.0 * PI), 0.0, 0.0)
    } else {
        ProtocolSpec::two_qubit(kind, qubits[0], qubits[1], 0.0, 0.0)
    }
}

fn describe(spec: &ProtocolSpec, n: usize) -> String {
    match spec.u {
        Some(u) => format!(
            "{} on {n} qubits, targets {:?}, u = {u}",
            spec.kind, spec.targets
        ),
        None => format!("{} on {n} qubits, targets {:?}", spec.kind, spec.targets),
    }
}

/// `C_z` of the first target, or `C_zz` of the target pair, in the input register.
fn input_correlator(input: &PureState, spec: &ProtocolSpec) -> Result<f64> {
    let rho = DensityMatrix::reduced(input, spec.error_qubits())?;
    match spec.kind.error_kind() {
        ErrorKind::XType => correlator(&rho, &crate::qcore::Gate::Z.matrix()),
        ErrorKind::ZzType => correlator(&rho, &zz()),
    }
}

const X_TYPE: [ProtocolKind; 4] = [
    ProtocolKind::OneWayRotation,
    ProtocolKind::AdqcRotationCz,
    ProtocolKind::AdqcRotationCzSwap,
    ProtocolKind::AdqcCzGate,
];

fn pick<T: Copy>(items: &[T], rng: &mut SampleRng) -> T {
    items[rng.random_range(0..items.len())]
}

fn run_sample(
    config: &CampaignConfig,
    campaign: Campaign,
    index: u64,
    rng: &mut SampleRng,
) -> Result<SampleOutcome> {
    let eps_grid = &config.epsilon_grid;
    let delta_grid = &config.delta_grid;
    let grid = || {
        eps_grid
            .iter()
            .flat_map(|&e| delta_grid.iter().map(move |&d| (e, d)))
    };

    match campaign {
        Campaign::EqualityOracle | Campaign::DeltaIndependence | Campaign::ErrorFactorization => {
            let kind = ProtocolKind::ALL[(index % 5) as usize];
            let n = pick(&config.register_sizes, rng);
            let input = random_pure_state_from(n, rng)?;
            let base = random_spec(kind, n, rng)?;
            let mut out = SampleOutcome::new(describe(&base, n), Some(input.clone()));
            let c = input_correlator(&input, &base)?;
            for &eps in eps_grid {
                let mut fs = Vec::with_capacity(delta_grid.len());
                for &delta in delta_grid {
                    let spec = base.with_deviation(eps, delta);
                    let result = run_protocol(&input, &spec)?;
                    match campaign {
                        Campaign::EqualityOracle => {
                            out.equal(mean_gate_fidelity(&result), closed_form_fidelity(c, eps)?)
                        }
                        Campaign::DeltaIndependence => fs.push(mean_gate_fidelity(&result)),
                        _ => {
                            for j in 0..2 {
                                let predicted = predicted_inaccurate_branch(&result, &spec, j)?;
                                out.record(phase_aligned_distance(
                                    &result.branches[j].inaccurate,
                                    &predicted,
                                ));
                            }
                        }
                    }
                }
                if campaign == Campaign::DeltaIndependence {
                    let hi = fs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                    let lo = fs.iter().copied().fold(f64::INFINITY, f64::min);
                    out.record(hi - lo);
                }
            }
            Ok(out)
        }
        Campaign::CircuitEquivalence => {
            let n = pick(&config.register_sizes, rng);
            let input = random_pure_state_from(n, rng)?;
            let base = random_spec(ProtocolKind::OneWayRotation, n, rng)?;
            let mut out = SampleOutcome::new(describe(&base, n), Some(input.clone()));
            for (eps, delta) in grid() {
                let reference = run_protocol(&input, &base.with_deviation(eps, delta))?;
                for kind in [
                    ProtocolKind::AdqcRotationCz,
                    ProtocolKind::AdqcRotationCzSwap,
                ] {
                    let spec = ProtocolSpec {
                        kind,
                        ..base.with_deviation(eps, delta)
                    };
                    let other = run_protocol(&input, &spec)?;
                    for j in 0..2 {
                        out.record(phase_aligned_distance(
                            &reference.branches[j].inaccurate,
                            &other.branches[j].inaccurate,
                        ));
                    }
                }
            }
            Ok(out)
        }
        Campaign::BoundMain | Campaign::BoundSv => {
            let kind = X_TYPE[(index % 4) as usize];
            let n = pick(&config.register_sizes, rng);
            let input = random_pure_state_from(n, rng)?;
            let base = random_spec(kind, n, rng)?;
            let mut out = SampleOutcome::new(describe(&base, n), Some(input.clone()));
            let rep = EntanglementReport::single_qubit(&DensityMatrix::reduced(
                &input,
                base.error_qubits(),
            )?)?;
            for (eps, delta) in grid() {
                let f =
                    mean_gate_fidelity(&run_protocol(&input, &base.with_deviation(eps, delta))?);
                let bound = if campaign == Campaign::BoundMain {
                    bound_purity(rep.purity_s.unwrap_or(0.0), eps)?
                } else {
                    bound_sv(rep.von_neumann, eps)?
                };
                out.at_most(f, bound);
            }
            Ok(out)
        }
        Campaign::BoundMain2 => {
            let n = pick(&config.register_sizes, rng);
            let input = random_pure_state_from(n, rng)?;
            let base = random_spec(ProtocolKind::AdqcCzSwapGate, n, rng)?;
            let mut out = SampleOutcome::new(describe(&base, n), Some(input.clone()));
            let sv2 = von_neumann(&DensityMatrix::reduced(&input, base.error_qubits())?)?;
            if sv2 < 1.0 {
                out.metric("filtered_samples", Agg::Sum, 1.0);
                return Ok(out);
            }
            out.metric("accepted_samples", Agg::Sum, 1.0);
            out.metric("min_sv2", Agg::Min, sv2);
            out.metric("max_sv2", Agg::Max, sv2);
            for (eps, delta) in grid() {
                let f =
                    mean_gate_fidelity(&run_protocol(&input, &base.with_deviation(eps, delta))?);
                out.at_most(f, bound_sv2(sv2, eps)?);
            }
            Ok(out)
        }
        Campaign::Saturation => {
            let kind = X_TYPE[(index % 4) as usize];
            let n = pick(&config.register_sizes, rng);
            let u = rng.random_range(0.0..2.0 * PI);
            // scatter the engineered qubits over the register
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            let slot_of = |old: usize| order.iter().position(|&q| q == old).expect("permutation");
            let (target, partner) = (slot_of(0), slot_of(1));
            let mut out = SampleOutcome::new(
                format!("{kind} on saturating {n}-qubit registers, target {target}, partner {partner}, u = {u}"),
                None,
            );
            for &s in &SATURATION_S_GRID {
                let input = saturating_single_qubit_register(s, n)?.permute(&order)?;
                let rep =
                    EntanglementReport::single_qubit(&DensityMatrix::reduced(&input, &[target])?)?;
                for (eps, delta) in grid() {
                    let spec = if kind.is_rotation() {
                        ProtocolSpec::rotation(kind, target, u, eps, delta)?
                    } else {
                        ProtocolSpec::two_qubit(kind, target, partner, eps, delta)?
                    };
                    let f = mean_gate_fidelity(&run_protocol(&input, &spec)?);
                    out.equal(f, bound_purity(s, eps)?);
                    out.equal(f, bound_sv(rep.von_neumann, eps)?);
                }
            }
            let m = n.max(4);
            let input = maximally_mixed_pair_register(m)?;
            let sv2 = von_neumann(&DensityMatrix::reduced(&input, &[0, 1])?)?;
            for (eps, delta) in grid() {
                let spec = ProtocolSpec::two_qubit(ProtocolKind::AdqcCzSwapGate, 0, 1, eps, delta)?;
                let f = mean_gate_fidelity(&run_protocol(&input, &spec)?);
                out.equal(f, bound_sv2(sv2, eps)?);
            }
            Ok(out)
        }
        Campaign::Jonas | Campaign::Interm | Campaign::Monotonicity => {
            let (rho, purification) = random_density_matrix_from(2, rng)?;
            let mut out = SampleOutcome::new(
                "random two-qubit density matrix: reduced state of qubits 0,1 of the attached state".into(),
                Some(purification),
            );
            match campaign {
                Campaign::Jonas => out.nonnegative(check_jonas(&rho)?),
                Campaign::Interm => out.nonnegative(check_interm(&rho)?),
                _ => {
                    out.nonnegative(check_monotonicity(
                        &rho,
                        &DensityMatrix::maximally_mixed(2)?,
                    )?);
                    let (sigma, _) = random_density_matrix_from(2, rng)?;
                    let slack = check_monotonicity(&rho, &sigma)?;
                    out.nonnegative(slack);
                    out.metric("min_slack_random_sigma", Agg::Min, slack);
                }
            }
            Ok(out)
        }
        Campaign::Counterexample => {
            let lambda = if config.samples == 1 {
                rng.random_range(0.0..=1.0)
            } else {
                index as f64 / (config.samples - 1) as f64
            };
            let input = purified_rho_lambda(lambda)?;
            let mut out = SampleOutcome::new(
                format!("rho_lambda with lambda = {lambda}"),
                Some(input.clone()),
            );
            let rho = rho_lambda(lambda)?;
            out.equal(correlator(&rho, &zz())?, 1.0);
            let sv2 = von_neumann(&rho)?;
            out.metric("min_sv2", Agg::Min, sv2);
            out.metric("max_sv2", Agg::Max, sv2);
            if sv2 < 1.0 {
                out.metric("below_bound_domain", Agg::Sum, 1.0);
            }
            for (eps, delta) in grid() {
                let spec = ProtocolSpec::two_qubit(ProtocolKind::AdqcCzSwapGate, 0, 1, eps, delta)?;
                out.equal(mean_gate_fidelity(&run_protocol(&input, &spec)?), 1.0);
            }
            Ok(out)
        }
    }
}
