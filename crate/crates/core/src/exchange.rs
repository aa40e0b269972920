//! The five-qubit exchange experiment: circuits, shot sampling,
//! post-selection, the correlation statistic and logical tomography.
//!
//! Register layout of the ideal experiment: vertex qubits `v1, v2, v3`, edge
//! ancillas `e1, e2`. Classical bits: 0 = `YY(v1, v2)`, 1 = `XX(v2, v3)`,
//! 2 = `Z(v2)`, 3 = `v1`, 4 = `v3`. Compiled circuits keep five classical
//! bits but may store the checks differently; a [`Readout`] says how to
//! decode them.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{get_bit, Circuit};
use crate::error::{Error, Result};
use crate::lattice::TruncatedExperiment;
use crate::noise::{execute, NoiseConfig};
use crate::parity::{to_z_basis, ParityBasis, ParityMeasurement};
use crate::pauli::{Pauli, PauliOperator};
use crate::statevec::StateVector;

/// Sign of the logical `Y` eigenstate produced by a noiseless exchange,
/// i.e. `<Y Z Y>` on `(v1, v2, v3)` after post-selection.
pub const TARGET_Y_SIGN: f64 = 1.0;

/// Name recorded in metadata for the per-shot generator.
pub const RNG_NAME: &str = "chacha8";

pub const NUM_CLBITS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Setting {
    X,
    Y,
    Z,
}

impl Setting {
    pub const ALL: [Setting; 3] = [Setting::X, Setting::Y, Setting::Z];

    /// Final-readout Paulis on `(v1, v2, v3)`. The `v2` factor is always `Z`
    /// or identity and is supplied by the post-selected `Z(v2)` outcome.
    pub fn factors(self) -> [Pauli; 3] {
        match self {
            Setting::X => [Pauli::Y, Pauli::Z, Pauli::X],
            Setting::Y => [Pauli::Y, Pauli::Z, Pauli::Y],
            Setting::Z => [Pauli::Z, Pauli::I, Pauli::I],
        }
    }

    /// Logical operator on the three vertex qubits.
    pub fn logical_operator(self) -> PauliOperator {
        let f = self.factors();
        PauliOperator::from_terms(3, &[(0, f[0]), (1, f[1]), (2, f[2])]).expect("three qubits")
    }

    pub fn name(self) -> &'static str {
        match self {
            Setting::X => "X",
            Setting::Y => "Y",
            Setting::Z => "Z",
        }
    }
}

/// Physical qubits of the ideal five-qubit experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentDef {
    pub vertices: [usize; 3],
    pub edges: [usize; 2],
    pub num_qubits: usize,
}

impl Default for ExperimentDef {
    fn default() -> Self {
        ExperimentDef {
            vertices: [0, 1, 2],
            edges: [3, 4],
            num_qubits: 5,
        }
    }
}

impl ExperimentDef {
    pub fn new(vertices: [usize; 3], edges: [usize; 2], num_qubits: usize) -> Result<Self> {
        let all = [vertices[0], vertices[1], vertices[2], edges[0], edges[1]];
        for (i, &q) in all.iter().enumerate() {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange { index: q, num_qubits });
            }
            if all[..i].contains(&q) {
                return Err(Error::Construction(format!(
                    "experiment qubits must be distinct, {q} repeats"
                )));
            }
        }
        Ok(ExperimentDef {
            vertices,
            edges,
            num_qubits,
        })
    }

    /// The local five-qubit experiment described by a truncated schedule.
    ///
    /// Accepts exactly the shape the exchange truncates to: `Z`-type
    /// initial checks with `+` sign, measurements `YY(0, 1)`, `XX(1, 2)`,
    /// `Z(1)` and pair readouts `Z(0)`, `Z(2)`.
    pub fn from_truncation(t: &TruncatedExperiment) -> Result<Self> {
        let bad = |what: &str| Error::Construction(format!("truncated experiment: {what}"));
        if t.vertices.len() != 3 || t.edges.len() != 2 {
            return Err(bad("expected three vertices and two edges"));
        }
        for g in t.initial.iter().chain(&t.pair_readouts) {
            if g.operator.x_bits().any() || g.operator.sign() != Some(1) {
                return Err(bad("initial checks must be +Z type"));
            }
        }
        let strings = |gens: &[crate::lattice::Generator]| -> Vec<String> {
            gens.iter().map(|g| g.operator.to_string()).collect()
        };
        if strings(&t.measurements) != ["+YYI", "+IXX", "+IZI"] {
            return Err(bad("measurements are not YY, XX, Z on the centre"));
        }
        if strings(&t.pair_readouts) != ["+ZII", "+IIZ"] {
            return Err(bad("pair readouts are not Z on the outer vertices"));
        }
        Ok(ExperimentDef::default())
    }
}

/// Where a decoded bit comes from in a raw record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BitSource {
    Clbit(usize),
    Xor(usize, usize),
}

impl BitSource {
    pub fn eval(self, record: u64) -> bool {
        match self {
            BitSource::Clbit(c) => get_bit(record, c),
            BitSource::Xor(a, b) => get_bit(record, a) ^ get_bit(record, b),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Readout {
    pub yy: BitSource,
    pub xx: BitSource,
    pub center: BitSource,
    pub v1: BitSource,
    pub v3: BitSource,
}

impl Readout {
    pub fn ideal() -> Self {
        Readout {
            yy: BitSource::Clbit(0),
            xx: BitSource::Clbit(1),
            center: BitSource::Clbit(2),
            v1: BitSource::Clbit(3),
            v3: BitSource::Clbit(4),
        }
    }

    pub fn decode(&self, record: u64) -> Outcome {
        Outcome {
            yy: self.yy.eval(record),
            xx: self.xx.eval(record),
            center: self.center.eval(record),
            v1: self.v1.eval(record),
            v3: self.v3.eval(record),
        }
    }

    /// All three check outcomes are 0 (no stray fermion).
    pub fn accepts(&self, record: u64) -> bool {
        self.decode(record).accepted()
    }
}

/// Decoded outcomes of one shot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub yy: bool,
    pub xx: bool,
    pub center: bool,
    pub v1: bool,
    pub v3: bool,
}

impl Outcome {
    pub fn accepted(&self) -> bool {
        !(self.yy || self.xx || self.center)
    }

    /// Same layout as the ideal circuit's classical register.
    pub fn pack(&self) -> u64 {
        [self.yy, self.xx, self.center, self.v1, self.v3]
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &b)| acc | ((b as u64) << i))
    }

    /// Index into `[00, 01, 10, 11]` with `v1` as the first digit.
    pub fn pair_index(&self) -> usize {
        2 * self.v1 as usize + self.v3 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentCircuit {
    pub circuit: Circuit,
    pub readout: Readout,
    pub setting: Setting,
}

/// Basis rotations and final readouts of `v1` and `v3` for a setting.
pub(crate) fn append_final_readout(
    c: &mut Circuit,
    v1: usize,
    v3: usize,
    setting: Setting,
    clbits: (usize, usize),
) -> Result<()> {
    let f = setting.factors();
    c.gates(to_z_basis(f[0], v1))?;
    c.gates(to_z_basis(f[2], v3))?;
    c.measure(v1, clbits.0)?;
    c.measure(v3, clbits.1)?;
    Ok(())
}

/// `YY(v1, v2)` on `e1`, `XX(v2, v3)` on `e2`, `Z(v2)`, then `v1` and `v3`
/// read out in the basis of `setting`.
pub fn setting_circuit(def: &ExperimentDef, setting: Setting) -> Result<ExperimentCircuit> {
    let [v1, v2, v3] = def.vertices;
    let [e1, e2] = def.edges;
    let mut c = Circuit::new(def.num_qubits, NUM_CLBITS)?;
    ParityMeasurement::new(ParityBasis::YY, (v1, v2), e1, 0)?.append_to(&mut c)?;
    ParityMeasurement::new(ParityBasis::XX, (v2, v3), e2, 1)?.append_to(&mut c)?;
    c.measure(v2, 2)?;
    append_final_readout(&mut c, v1, v3, setting, (3, 4))?;
    Ok(ExperimentCircuit {
        circuit: c,
        readout: Readout::ideal(),
        setting,
    })
}

pub fn ideal_circuit(def: &ExperimentDef) -> Result<ExperimentCircuit> {
    setting_circuit(def, Setting::Z)
}

/// One circuit per setting, in the order `X, Y, Z`.
pub fn tomography_circuits(def: &ExperimentDef) -> Result<Vec<ExperimentCircuit>> {
    Setting::ALL.iter().map(|&s| setting_circuit(def, s)).collect()
}

/// Post-selected three-qubit output of the exchange computed with exact
/// projectors on `(v1, v2, v3)`, and the acceptance probability.
pub fn oracle_output() -> Result<(StateVector, f64)> {
    let mut s = StateVector::new(3)?;
    let mut acceptance = 1.0;
    for op in ["YYI", "IXX", "IZI"] {
        let op: PauliOperator = op.parse()?;
        acceptance *= s.project(&op, false)?;
    }
    Ok((s, acceptance))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotMetadata {
    pub seed: u64,
    pub rng: String,
    /// Records in this table.
    pub shots: usize,
    /// Records sampled before any post-selection.
    pub total_shots: usize,
    pub circuit_id: String,
    pub noise_id: Option<String>,
    pub postselected: bool,
}

/// Raw classical records, bit `c` of each word holding classical bit `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShotTable {
    pub num_clbits: usize,
    pub records: Vec<u64>,
    pub metadata: ShotMetadata,
}

#[derive(Serialize, Deserialize)]
struct ShotTableDoc {
    metadata: ShotMetadata,
    num_clbits: usize,
    records: Vec<String>,
}

impl ShotTable {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Record as `0`/`1` characters, classical bit 0 first.
    pub fn bitstring(&self, record: u64) -> String {
        (0..self.num_clbits)
            .map(|c| if get_bit(record, c) { '1' } else { '0' })
            .collect()
    }
}

impl Serialize for ShotTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ShotTableDoc {
            metadata: self.metadata.clone(),
            num_clbits: self.num_clbits,
            records: self.records.iter().map(|&r| self.bitstring(r)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ShotTable {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = ShotTableDoc::deserialize(deserializer)?;
        let records = doc
            .records
            .iter()
            .map(|s| {
                if s.len() != doc.num_clbits {
                    return Err(D::Error::custom(format!("record {s:?} has the wrong width")));
                }
                s.chars().enumerate().try_fold(0u64, |acc, (i, ch)| match ch {
                    '0' => Ok(acc),
                    '1' => Ok(acc | (1 << i)),
                    _ => Err(D::Error::custom(format!("bad bit {ch:?}"))),
                })
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if records.len() != doc.metadata.shots {
            return Err(D::Error::custom("metadata shot count does not match records"));
        }
        Ok(ShotTable {
            num_clbits: doc.num_clbits,
            records,
            metadata: doc.metadata,
        })
    }
}

/// Generator for shot `index` of a run seeded with `seed`.
pub fn shot_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Samples `shots` trajectories in parallel; shot `i` uses stream
/// `first_stream + i` of the seeded generator.
pub fn run_shots_from(
    circuit: &Circuit,
    shots: usize,
    noise: Option<&NoiseConfig>,
    seed: u64,
    first_stream: u64,
) -> Result<ShotTable> {
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    if let Some(cfg) = noise {
        cfg.validate()?;
    }
    let records = (0..shots as u64)
        .into_par_iter()
        .map(|i| execute(circuit, noise, &mut shot_rng(seed, first_stream + i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ShotTable {
        num_clbits: circuit.num_clbits(),
        records,
        metadata: ShotMetadata {
            seed,
            rng: RNG_NAME.into(),
            shots,
            total_shots: shots,
            circuit_id: circuit.id(),
            noise_id: noise.map(NoiseConfig::id),
            postselected: false,
        },
    })
}

pub fn run_shots(
    circuit: &Circuit,
    shots: usize,
    noise: Option<&NoiseConfig>,
    seed: u64,
) -> Result<ShotTable> {
    run_shots_from(circuit, shots, noise, seed, 0)
}

/// Keeps the shots whose decoded checks are all 0.
pub fn postselect(table: &ShotTable, readout: &Readout) -> ShotTable {
    let records: Vec<u64> = table
        .records
        .iter()
        .copied()
        .filter(|&r| readout.accepts(r))
        .collect();
    ShotTable {
        num_clbits: table.num_clbits,
        metadata: ShotMetadata {
            shots: records.len(),
            postselected: true,
            ..table.metadata.clone()
        },
        records,
    }
}

/// Counts of `(v1, v3)` = `00, 01, 10, 11`.
pub fn pair_counts(table: &ShotTable, readout: &Readout) -> [usize; 4] {
    let mut counts = [0; 4];
    for &r in &table.records {
        counts[readout.decode(r).pair_index()] += 1;
    }
    counts
}

/// Mean of a `±1` variable with its binomial standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
    pub samples: usize,
}

impl Estimate {
    fn from_signs(plus: usize, total: usize) -> Result<Self> {
        if total == 0 {
            return Err(Error::UndefinedStatistic("no retained shots".into()));
        }
        let n = total as f64;
        let value = (2.0 * plus as f64 - n) / n;
        Ok(Estimate {
            value,
            stderr: ((1.0 - value * value).max(0.0) / n).sqrt(),
            samples: total,
        })
    }
}

/// `C = P(00) + P(11) - P(01) - P(10)` over the `(v1, v3)` readouts of
/// `table`, which should already be post-selected.
pub fn correlation(table: &ShotTable, readout: &Readout) -> Result<Estimate> {
    let c = pair_counts(table, readout);
    Estimate::from_signs(c[0] + c[3], table.len())
}

/// Expectation of the logical operator measured by `setting`.
pub fn logical_expectation(table: &ShotTable, readout: &Readout, setting: Setting) -> Result<Estimate> {
    let plus = table
        .records
        .iter()
        .filter(|&&r| {
            let o = readout.decode(r);
            let odd = match setting {
                Setting::Z => o.v1,
                Setting::X | Setting::Y => o.v1 ^ o.center ^ o.v3,
            };
            !odd
        })
        .count();
    Estimate::from_signs(plus, table.len())
}

/// Probability that a record distribution passes post-selection.
pub fn acceptance_probability(dist: &BTreeMap<u64, f64>, readout: &Readout) -> f64 {
    dist.iter()
        .filter(|(&r, _)| readout.accepts(r))
        .map(|(_, p)| p)
        .sum()
}

/// Post-selected `(v1, v3)` distribution, indexed like [`pair_counts`].
pub fn postselected_pairs(dist: &BTreeMap<u64, f64>, readout: &Readout) -> Result<[f64; 4]> {
    let total = acceptance_probability(dist, readout);
    if total <= 0.0 {
        return Err(Error::UndefinedStatistic("acceptance probability is zero".into()));
    }
    let mut out = [0.0; 4];
    for (&r, &p) in dist {
        let o = readout.decode(r);
        if o.accepted() {
            out[o.pair_index()] += p / total;
        }
    }
    Ok(out)
}

/// Exact `C` from an outcome distribution.
pub fn exact_correlation(dist: &BTreeMap<u64, f64>, readout: &Readout) -> Result<f64> {
    let p = postselected_pairs(dist, readout)?;
    Ok(p[0] + p[3] - p[1] - p[2])
}

/// Distribution of decoded outcomes (packed in the ideal layout).
pub fn decoded_distribution(dist: &BTreeMap<u64, f64>, readout: &Readout) -> BTreeMap<u64, f64> {
    let mut out = BTreeMap::new();
    for (&r, &p) in dist {
        *out.entry(readout.decode(r).pack()).or_insert(0.0) += p;
    }
    out
}

/// Total-variation distance between two distributions.
pub fn total_variation(a: &BTreeMap<u64, f64>, b: &BTreeMap<u64, f64>) -> f64 {
    let keys: std::collections::BTreeSet<u64> = a.keys().chain(b.keys()).copied().collect();
    0.5 * keys
        .iter()
        .map(|k| (a.get(k).unwrap_or(&0.0) - b.get(k).unwrap_or(&0.0)).abs())
        .sum::<f64>()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TomographyResult {
    pub bloch: [f64; 3],
    /// `(I + xX + yY + zZ) / 2`, row-major.
    pub density: [[Complex64; 2]; 2],
    pub fidelity_to_target: f64,
    pub closest_pure_fidelity: f64,
}

/// Density matrix and target fidelities from logical expectations.
pub fn reconstruct(x: f64, y: f64, z: f64) -> TomographyResult {
    let half = |re: f64, im: f64| Complex64::new(re / 2.0, im / 2.0);
    let density = [
        [half(1.0 + z, 0.0), half(x, -y)],
        [half(x, y), half(1.0 - z, 0.0)],
    ];
    let r = (x * x + y * y + z * z).sqrt();
    let y_t = TARGET_Y_SIGN * y;
    TomographyResult {
        bloch: [x, y, z],
        density,
        fidelity_to_target: (1.0 + y_t) / 2.0,
        closest_pure_fidelity: if r > 0.0 { (1.0 + y_t / r) / 2.0 } else { 0.5 },
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SettingRun {
    pub setting: Setting,
    pub operator: String,
    pub shots: usize,
    pub retained: usize,
    pub expectation: Estimate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TomographyRun {
    pub settings: Vec<SettingRun>,
    pub result: TomographyResult,
}

/// Runs each circuit for `shots` shots on disjoint generator streams and
/// reconstructs the logical state. Circuits must cover every setting.
pub fn run_tomography(
    circuits: &[ExperimentCircuit],
    shots: usize,
    noise: Option<&NoiseConfig>,
    seed: u64,
) -> Result<TomographyRun> {
    let mut settings = Vec::new();
    let mut bloch = BTreeMap::new();
    for (k, ec) in circuits.iter().enumerate() {
        let table = run_shots_from(&ec.circuit, shots, noise, seed, (k * shots) as u64)?;
        let kept = postselect(&table, &ec.readout);
        let e = logical_expectation(&kept, &ec.readout, ec.setting)?;
        bloch.insert(ec.setting, e.value);
        settings.push(SettingRun {
            setting: ec.setting,
            operator: ec.setting.logical_operator().to_string(),
            shots,
            retained: kept.len(),
            expectation: e,
        });
    }
    let get = |s: Setting| {
        bloch
            .get(&s)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("no circuit for setting {}", s.name())))
    };
    let result = reconstruct(get(Setting::X)?, get(Setting::Y)?, get(Setting::Z)?);
    Ok(TomographyRun { settings, result })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_state_and_target_sign() {
        let (s, acc) = oracle_output().unwrap();
        assert!((acc - 0.125).abs() < 1e-12);
        let yzy = Setting::Y.logical_operator();
        assert!((s.expectation(&yzy).unwrap() - TARGET_Y_SIGN).abs() < 1e-12);
        assert!(s.expectation(&Setting::X.logical_operator()).unwrap().abs() < 1e-12);
        assert!(s.expectation(&Setting::Z.logical_operator()).unwrap().abs() < 1e-12);
        let xzx: PauliOperator = "XZX".parse().unwrap();
        assert!((s.expectation(&xzx).unwrap() + TARGET_Y_SIGN).abs() < 1e-12);
    }

    #[test]
    fn ideal_circuit_exact_statistics() {
        let ec = ideal_circuit(&ExperimentDef::default()).unwrap();
        assert_eq!(ec.circuit.num_clbits(), 5);
        let dist = ec
            .circuit
            .outcome_distribution(&StateVector::new(5).unwrap())
            .unwrap();
        assert!((acceptance_probability(&dist, &ec.readout) - 0.125).abs() < 1e-12);
        let p = postselected_pairs(&dist, &ec.readout).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-12 && (p[3] - 0.5).abs() < 1e-12);
        assert!((exact_correlation(&dist, &ec.readout).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn def_rejects_repeats() {
        assert!(ExperimentDef::new([0, 1, 2], [3, 3], 5).is_err());
        assert!(ExperimentDef::new([0, 1, 2], [3, 5], 5).is_err());
        assert!(ExperimentDef::new([4, 1, 2], [3, 0], 5).is_ok());
    }

    fn table(records: Vec<u64>) -> ShotTable {
        ShotTable {
            num_clbits: 5,
            metadata: ShotMetadata {
                seed: 0,
                rng: RNG_NAME.into(),
                shots: records.len(),
                total_shots: records.len(),
                circuit_id: String::new(),
                noise_id: None,
                postselected: true,
            },
            records,
        }
    }

    #[test]
    fn correlation_edge_cases() {
        let r = Readout::ideal();
        let anti = table(vec![0b01000, 0b10000]);
        assert_eq!(correlation(&anti, &r).unwrap().value, -1.0);
        let uniform = table(vec![0, 0b01000, 0b10000, 0b11000]);
        assert_eq!(correlation(&uniform, &r).unwrap().value, 0.0);
        assert!(matches!(
            correlation(&table(vec![]), &r),
            Err(Error::UndefinedStatistic(_))
        ));
    }

    #[test]
    fn postselect_drops_flagged_shots() {
        let r = Readout::ideal();
        let t = table(vec![0b00001, 0b00010, 0b00100, 0b11000]);
        let kept = postselect(&t, &r);
        assert_eq!(kept.records, vec![0b11000]);
        assert_eq!(kept.metadata.shots, 1);
        assert_eq!(kept.metadata.total_shots, 4);
    }

    #[test]
    fn reconstruct_closed_forms() {
        let t = reconstruct(0.0, 1.0, 0.0);
        assert!((t.fidelity_to_target - 1.0).abs() < 1e-12);
        assert!((t.closest_pure_fidelity - 1.0).abs() < 1e-12);
        let m = reconstruct(0.0, 0.0, 0.0);
        assert_eq!((m.fidelity_to_target, m.closest_pure_fidelity), (0.5, 0.5));
        let p = reconstruct(0.3, 0.412, -0.2);
        assert!((p.fidelity_to_target - 0.706).abs() < 1e-12);
        let trace = p.density[0][0] + p.density[1][1];
        assert!((trace.re - 1.0).abs() < 1e-12 && trace.im.abs() < 1e-12);
        assert_eq!(p.density[0][1], p.density[1][0].conj());
    }

    #[test]
    fn shot_table_json_round_trip() {
        let t = table(vec![0b10011, 0]);
        let json = serde_json::to_string(&t).unwrap();
        assert!(json.contains("\"11001\""));
        let back: ShotTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn zero_shots_rejected() {
        let ec = ideal_circuit(&ExperimentDef::default()).unwrap();
        assert!(matches!(
            run_shots(&ec.circuit, 0, None, 1),
            Err(Error::InvalidArgument(_))
        ));
    }
}
