//! Device model, CNOT legalization, the shared-ancilla compiled template
//! and calibration-driven qubit assignment.
//!
//! The compiled experiment uses five roles: data qubits `v1, v2, v3`, the
//! copy-out qubit `e1` and the shared ancilla `e12`. Both parity
//! interactions accumulate on `e12`; after the `YY` interaction its value is
//! copied onto `e1` and read there, and `e12` is read once after the `XX`
//! interaction, giving `YY xor XX`.
//!
//! Assignment cost (lower is better) of a compiled circuit, with ops
//! scheduled as soon as their qubits are free:
//!
//! ```text
//! sum over CNOTs of the pair error
//! + sum over single-qubit gates of the qubit's gate error
//! + sum over measurements of the qubit's readout error
//! + sum over qubits of window * (1/T1 + 1/T2)
//! ```
//!
//! where `window` runs from the start of the qubit's first op to the end of
//! its last one.

use std::collections::BTreeSet;
use std::path::Path;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::circuit::{Circuit, Op};
use crate::error::{Error, Result};
use crate::exchange::{
    append_final_readout, setting_circuit, BitSource, ExperimentCircuit, ExperimentDef, Readout, Setting,
    NUM_CLBITS,
};
use crate::noise::{Durations, NoiseConfig, PairError, QubitNoise};
use crate::parity::{ParityBasis, ParityMeasurement};
use crate::statevec::Gate;

/// Relative tolerance under which two assignment costs count as tied.
pub const COST_TIE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeviceModel {
    pub name: String,
    /// Calibration values that were made up rather than measured.
    pub synthetic: bool,
    /// Times in seconds.
    pub qubits: Vec<QubitNoise>,
    pub allowed_cnots: BTreeSet<(usize, usize)>,
    /// Error of each allowed CNOT, keyed by its allowed orientation.
    pub cnot_errors: Vec<PairError>,
    pub durations: Durations,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QubitEntry {
    t1_us: f64,
    t2_us: f64,
    readout_err: f64,
    #[serde(default)]
    single_err: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CnotEntry {
    pair: [usize; 2],
    err: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DurationsEntry {
    cnot_ns: f64,
    single_ns: f64,
    measure_ns: f64,
}

/// On-disk layout shared by JSON and TOML device files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DeviceFile {
    #[serde(default)]
    name: String,
    #[serde(default)]
    synthetic: bool,
    qubits: Vec<QubitEntry>,
    allowed_cnots: Vec<[usize; 2]>,
    #[serde(default)]
    cnots: Vec<CnotEntry>,
    durations: DurationsEntry,
}

impl DeviceModel {
    fn from_file(f: DeviceFile) -> Result<Self> {
        let model = DeviceModel {
            name: f.name,
            synthetic: f.synthetic,
            qubits: f
                .qubits
                .iter()
                .map(|q| QubitNoise {
                    t1: q.t1_us * 1e-6,
                    t2: q.t2_us * 1e-6,
                    readout_err: q.readout_err,
                    single_err: q.single_err,
                })
                .collect(),
            allowed_cnots: f.allowed_cnots.iter().map(|p| (p[0], p[1])).collect(),
            cnot_errors: f
                .cnots
                .iter()
                .map(|c| PairError {
                    pair: c.pair,
                    err: c.err,
                })
                .collect(),
            durations: Durations {
                single: f.durations.single_ns * 1e-9,
                cnot: f.durations.cnot_ns * 1e-9,
                measure: f.durations.measure_ns * 1e-9,
            },
        };
        model.validate()?;
        Ok(model)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(s)?)
    }

    pub fn from_toml_str(s: &str) -> Result<Self> {
        Self::from_file(toml::from_str(s)?)
    }

    /// Reads a `.toml` file as TOML and anything else as JSON.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        match path.extension().and_then(|e| e.to_str()) {
            Some("toml") => Self::from_toml_str(&text),
            _ => Self::from_json_str(&text),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_qubits();
        if n == 0 {
            return Err(Error::Config("device has no qubits".into()));
        }
        if self.allowed_cnots.is_empty() {
            return Err(Error::Config("device allows no CNOTs".into()));
        }
        for &(c, t) in &self.allowed_cnots {
            if c >= n || t >= n || c == t {
                return Err(Error::Config(format!("invalid allowed CNOT ({c}, {t})")));
            }
        }
        for pe in &self.cnot_errors {
            let [c, t] = pe.pair;
            if !self.is_allowed(c, t) {
                return Err(Error::Config(format!(
                    "error given for CNOT ({c}, {t}), which is not allowed"
                )));
            }
        }
        self.noise_config().validate()
    }

    pub fn num_qubits(&self) -> usize {
        self.qubits.len()
    }

    pub fn is_allowed(&self, control: usize, target: usize) -> bool {
        self.allowed_cnots.contains(&(control, target))
    }

    /// Some CNOT orientation exists between `a` and `b`.
    pub fn connected(&self, a: usize, b: usize) -> bool {
        self.is_allowed(a, b) || self.is_allowed(b, a)
    }

    /// Qubit that is the target of every allowed CNOT, if there is one.
    pub fn hub(&self) -> Option<usize> {
        let targets: BTreeSet<usize> = self.allowed_cnots.iter().map(|&(_, t)| t).collect();
        (targets.len() == 1).then(|| *targets.iter().next().unwrap())
    }

    /// Mean of the listed CNOT errors, used for pairs without an entry.
    pub fn mean_cnot_error(&self) -> f64 {
        if self.cnot_errors.is_empty() {
            0.0
        } else {
            self.cnot_errors.iter().map(|p| p.err).sum::<f64>() / self.cnot_errors.len() as f64
        }
    }

    pub fn noise_config(&self) -> NoiseConfig {
        NoiseConfig {
            qubits: self.qubits.clone(),
            pair_errors: self.cnot_errors.clone(),
            default_pair_err: self.mean_cnot_error(),
            durations: self.durations,
        }
    }

    /// Copy with every error rate (gate, readout, `1/T1`, `1/T2`) scaled by `k`.
    pub fn scaled(&self, k: f64) -> DeviceModel {
        let mut out = self.clone();
        for q in &mut out.qubits {
            q.t1 /= k;
            q.t2 /= k;
            q.readout_err *= k;
            q.single_err *= k;
        }
        for p in &mut out.cnot_errors {
            p.err *= k;
        }
        out
    }

    pub fn id(&self) -> String {
        let json = serde_json::to_vec(self).expect("device serialises");
        hex::encode(&Sha256::digest(&json)[..8])
    }
}

/// `CNOT(control -> target)` built from the allowed reverse orientation:
/// `H H . CNOT(target -> control) . H H`.
pub fn reverse_cnot(control: usize, target: usize, device: &DeviceModel) -> Result<Vec<Gate>> {
    if !device.is_allowed(target, control) {
        return Err(Error::Routing(format!(
            "CNOT ({target}, {control}) is not available to reverse"
        )));
    }
    let hh = [Gate::H(control), Gate::H(target)];
    let mut out = hh.to_vec();
    out.push(Gate::Cx {
        control: target,
        target: control,
    });
    out.extend(hh);
    Ok(out)
}

/// The CNOT itself when allowed, otherwise its reversal.
pub fn route_cnot(control: usize, target: usize, device: &DeviceModel) -> Result<Vec<Gate>> {
    if device.is_allowed(control, target) {
        return Ok(vec![Gate::Cx { control, target }]);
    }
    reverse_cnot(control, target, device).map_err(|_| {
        Error::Routing(format!(
            "no CNOT between {control} and {target} in either orientation"
        ))
    })
}

/// Rewrites every CNOT into an allowed orientation.
pub fn legalize(circuit: &Circuit, device: &DeviceModel) -> Result<Circuit> {
    if circuit.num_qubits() > device.num_qubits() {
        return Err(Error::Routing(format!(
            "circuit needs {} qubits, device has {}",
            circuit.num_qubits(),
            device.num_qubits()
        )));
    }
    let mut out = Circuit::new(circuit.num_qubits(), circuit.num_clbits())?;
    for op in circuit.ops() {
        match op {
            Op::Gate(Gate::Cx { control, target }) => {
                out.gates(route_cnot(*control, *target, device)?)?;
            }
            other => out.push(other.clone())?,
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    V1,
    V2,
    V3,
    E1,
    E12,
}

impl Role {
    pub const ALL: [Role; 5] = [Role::V1, Role::V2, Role::V3, Role::E1, Role::E12];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Role::V1 => "v1",
            Role::V2 => "v2",
            Role::V3 => "v3",
            Role::E1 => "e1",
            Role::E12 => "e12",
        }
    }

    pub fn from_name(s: &str) -> Option<Role> {
        Role::ALL.into_iter().find(|r| r.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QubitAssignment {
    /// Physical qubit of each role, indexed by [`Role::index`].
    pub physical: [usize; 5],
    pub score: f64,
}

impl QubitAssignment {
    pub fn get(&self, role: Role) -> usize {
        self.physical[role.index()]
    }

    /// Parses `v1=0,v2=1,v3=3,e1=4,e12=2`; the score is left at 0.
    pub fn parse_map(s: &str) -> Result<Self> {
        let bad = |m: String| Error::InvalidArgument(format!("assignment map: {m}"));
        let mut physical = [usize::MAX; 5];
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| bad(format!("expected role=qubit, got {part:?}")))?;
            let role = Role::from_name(k.trim()).ok_or_else(|| bad(format!("unknown role {k:?}")))?;
            let q = v
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad qubit index {v:?}")))?;
            physical[role.index()] = q;
        }
        if let Some(r) = Role::ALL.iter().find(|r| physical[r.index()] == usize::MAX) {
            return Err(bad(format!("role {} is missing", r.name())));
        }
        Ok(QubitAssignment { physical, score: 0.0 })
    }

    pub fn to_map_string(&self) -> String {
        Role::ALL
            .iter()
            .map(|r| format!("{}={}", r.name(), self.get(*r)))
            .join(",")
    }

    fn validate(&self, device: &DeviceModel) -> Result<()> {
        for (i, &q) in self.physical.iter().enumerate() {
            if q >= device.num_qubits() {
                return Err(Error::Routing(format!("qubit {q} is not on the device")));
            }
            if self.physical[..i].contains(&q) {
                return Err(Error::Routing(format!("qubit {q} is assigned twice")));
            }
        }
        let hub = self.get(Role::E12);
        for r in [Role::V1, Role::V2, Role::V3, Role::E1] {
            if !device.connected(self.get(r), hub) {
                return Err(Error::Routing(format!(
                    "{} on qubit {} is not coupled to the shared ancilla on qubit {hub}",
                    r.name(),
                    self.get(r)
                )));
            }
        }
        Ok(())
    }
}

/// Decoding of the compiled template's classical bits.
pub fn shared_ancilla_readout() -> Readout {
    Readout {
        yy: BitSource::Clbit(0),
        xx: BitSource::Xor(0, 1),
        center: BitSource::Clbit(2),
        v1: BitSource::Clbit(3),
        v3: BitSource::Clbit(4),
    }
}

/// Shared-ancilla experiment on the role register (`Role::index` order),
/// before connectivity is taken into account.
pub fn shared_ancilla_template(setting: Setting) -> Result<ExperimentCircuit> {
    let [v1, v2, v3, e1, e12] = Role::ALL.map(Role::index);
    let mut c = Circuit::new(5, NUM_CLBITS)?;
    c.gates(ParityMeasurement::new(ParityBasis::YY, (v1, v2), e12, 0)?.interaction())?;
    c.gate(Gate::Cx {
        control: e12,
        target: e1,
    })?;
    c.measure(e1, 0)?;
    c.gates(ParityMeasurement::new(ParityBasis::XX, (v2, v3), e12, 1)?.interaction())?;
    c.measure(e12, 1)?;
    c.measure(v2, 2)?;
    append_final_readout(&mut c, v1, v3, setting, (3, 4))?;
    Ok(ExperimentCircuit {
        circuit: c,
        readout: shared_ancilla_readout(),
        setting,
    })
}

/// Compiles an ideal exchange circuit (any setting) onto `device`.
pub fn compile(
    ideal: &ExperimentCircuit,
    device: &DeviceModel,
    assignment: &QubitAssignment,
) -> Result<ExperimentCircuit> {
    let expected = setting_circuit(&ExperimentDef::default(), ideal.setting)?;
    if ideal.circuit != expected.circuit {
        return Err(Error::InvalidArgument(
            "only the ideal exchange circuit can be compiled".into(),
        ));
    }
    compile_setting(ideal.setting, device, assignment)
}

pub fn compile_setting(
    setting: Setting,
    device: &DeviceModel,
    assignment: &QubitAssignment,
) -> Result<ExperimentCircuit> {
    assignment.validate(device)?;
    let template = shared_ancilla_template(setting)?;
    let placed = template
        .circuit
        .remap_qubits(&assignment.physical, device.num_qubits())?;
    Ok(ExperimentCircuit {
        circuit: legalize(&placed, device)?,
        readout: template.readout,
        setting,
    })
}

/// Start and end time of every op, scheduled as early as possible.
pub fn schedule(circuit: &Circuit, durations: &Durations) -> Vec<(f64, f64)> {
    let mut clock = vec![0.0f64; circuit.num_qubits()];
    circuit
        .ops()
        .iter()
        .map(|op| {
            let qs = op.qubits(circuit.num_qubits());
            let start = qs.iter().map(|&q| clock[q]).fold(0.0, f64::max);
            let end = start + durations.of(op);
            for q in qs {
                clock[q] = end;
            }
            (start, end)
        })
        .collect()
}

/// Additive noise figure of a compiled circuit (see module docs).
pub fn circuit_cost(circuit: &Circuit, device: &DeviceModel) -> f64 {
    let noise = device.noise_config();
    let times = schedule(circuit, &device.durations);
    let mut window: Vec<Option<(f64, f64)>> = vec![None; circuit.num_qubits()];
    let mut cost = 0.0;
    for (op, &(start, end)) in circuit.ops().iter().zip(&times) {
        match op {
            Op::Gate(g) => cost += noise.gate_error(g),
            Op::Measure { qubit, .. } => cost += device.qubits[*qubit].readout_err,
            Op::Reset(_) | Op::Barrier => {}
        }
        if matches!(op, Op::Barrier) {
            continue;
        }
        for q in op.qubits(circuit.num_qubits()) {
            let w = window[q].get_or_insert((start, end));
            w.1 = end;
        }
    }
    for (q, w) in window.iter().enumerate() {
        if let Some((s, e)) = w {
            let cal = &device.qubits[q];
            cost += (e - s) * (1.0 / cal.t1 + 1.0 / cal.t2);
        }
    }
    cost
}

/// Cost of `assignment`, scored on the logical-`Z` compilation.
pub fn assignment_cost(device: &DeviceModel, assignment: &QubitAssignment) -> Result<f64> {
    let compiled = compile_setting(Setting::Z, device, assignment)?;
    Ok(circuit_cost(&compiled.circuit, device))
}

/// Every connectivity-compatible assignment with its cost, in
/// lexicographic order of `[v1, v2, v3, e1, e12]`.
pub fn enumerate_assignments(device: &DeviceModel) -> Vec<QubitAssignment> {
    (0..device.num_qubits())
        .permutations(5)
        .filter_map(|p| {
            let mut a = QubitAssignment {
                physical: [p[0], p[1], p[2], p[3], p[4]],
                score: 0.0,
            };
            a.score = assignment_cost(device, &a).ok()?;
            Some(a)
        })
        .collect()
}

/// Lowest-cost assignment; near-ties go to the lexicographically first.
pub fn assign_qubits(device: &DeviceModel) -> Result<QubitAssignment> {
    let mut best: Option<QubitAssignment> = None;
    for a in enumerate_assignments(device) {
        match &best {
            Some(b) if a.score >= b.score - COST_TIE_TOLERANCE * b.score.abs().max(f64::MIN_POSITIVE) => {}
            _ => best = Some(a),
        }
    }
    best.ok_or_else(|| Error::Routing("no assignment is compatible with the device connectivity".into()))
}

/// Five-qubit star with every CNOT targeting `hub` and identical qubits.
pub fn uniform_star(hub: usize) -> DeviceModel {
    let allowed: BTreeSet<(usize, usize)> = (0..5).filter(|&q| q != hub).map(|q| (q, hub)).collect();
    DeviceModel {
        name: "uniform star".into(),
        synthetic: true,
        qubits: vec![
            QubitNoise {
                t1: 50e-6,
                t2: 60e-6,
                readout_err: 0.03,
                single_err: 0.002,
            };
            5
        ],
        cnot_errors: allowed
            .iter()
            .map(|&(c, t)| PairError {
                pair: [c, t],
                err: 0.03,
            })
            .collect(),
        allowed_cnots: allowed,
        durations: Durations {
            single: 130e-9,
            cnot: 350e-9,
            measure: 1e-6,
        },
    }
}
