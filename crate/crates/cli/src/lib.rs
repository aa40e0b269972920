//! Command implementations behind the `braidsim` binary.
//!
//! Exit codes: 0 success, 1 other failure, 2 usage, 3 statistic undefined
//! (no shot survived post-selection), 4 routing (no legal placement).

pub mod args;
pub mod report;
pub mod text;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::Path;

use clap::Parser;
use serde_json::json;

use braidsim::device::{assign_qubits, assignment_cost, compile_setting, DeviceModel, QubitAssignment};
use braidsim::exchange::{
    correlation, logical_expectation, pair_counts, postselect, reconstruct, run_shots_from, setting_circuit,
    ExperimentCircuit, ExperimentDef, Setting, SettingRun, ShotTable, TomographyRun, RNG_NAME,
};
use braidsim::lattice::{build_lattice, exchange_schedule, support, truncate};
use braidsim::Error;

use crate::args::{Cli, Command, CompileArgs, Experiment, ExportArgs, Format, LatticeArgs, RunArgs};
use crate::report::{pair_key, Metadata, Report, TomographyReport, UndefinedReport};
use crate::text::CircuitDocument;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNDEFINED: i32 = 3;
pub const EXIT_ROUTING: i32 = 4;

/// JSON schema of the `run` report.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Parse { path: String, source: text::ParseError },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Core(Error::InvalidArgument(_)) => EXIT_USAGE,
            CliError::Core(Error::UndefinedStatistic(_)) => EXIT_UNDEFINED,
            CliError::Core(Error::Routing(_)) => EXIT_ROUTING,
            _ => EXIT_FAILURE,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from_args<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Output::ok(rendered)
            } else {
                Output {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    dispatch(&cli).unwrap_or_else(|e| Output {
        code: e.exit_code(),
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    })
}

pub fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Compile(a) => cmd_compile(a),
        Command::Export(a) => cmd_export(a),
        Command::Lattice(a) => cmd_lattice(a),
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    if let Some(p) = path {
        std::fs::write(p, text)?;
    }
    Ok(())
}

/// `auto` picks the lowest-cost assignment; anything else is a role map.
pub fn resolve_assignment(device: &DeviceModel, spec: &str) -> Result<QubitAssignment, CliError> {
    if spec == "auto" {
        return Ok(assign_qubits(device)?);
    }
    let mut a = QubitAssignment::parse_map(spec)?;
    a.score = assignment_cost(device, &a)?;
    Ok(a)
}

struct Prepared {
    circuits: Vec<ExperimentCircuit>,
    metadata: Metadata,
}

fn prepare_run(a: &RunArgs) -> Result<(Prepared, Option<braidsim::NoiseConfig>), CliError> {
    let noise = a
        .noise
        .as_deref()
        .map(DeviceModel::load)
        .transpose()?
        .map(|d| d.noise_config());
    let settings: &[Setting] = match a.experiment {
        Experiment::Exchange => &[Setting::Z],
        Experiment::Tomography => &Setting::ALL,
    };
    let mut device_meta = (None, None, None);
    let circuits = if a.compiled {
        let path = a
            .device
            .as_deref()
            .ok_or_else(|| CliError::Usage("--compiled needs --device".into()))?;
        let device = DeviceModel::load(path)?;
        let assignment = resolve_assignment(&device, &a.assign)?;
        device_meta = (
            Some(device.id()),
            Some(device.name.clone()),
            Some(assignment.to_map_string()),
        );
        settings
            .iter()
            .map(|&s| compile_setting(s, &device, &assignment))
            .collect::<braidsim::Result<Vec<_>>>()?
    } else {
        settings
            .iter()
            .map(|&s| setting_circuit(&ExperimentDef::default(), s))
            .collect::<braidsim::Result<Vec<_>>>()?
    };
    let metadata = Metadata {
        experiment: match a.experiment {
            Experiment::Exchange => "exchange".into(),
            Experiment::Tomography => "tomography".into(),
        },
        seed: a.seed,
        rng: RNG_NAME.into(),
        circuit_id: circuits
            .iter()
            .map(|c| c.circuit.id())
            .collect::<Vec<_>>()
            .join(","),
        noise_id: noise.as_ref().map(|n| n.id()),
        device_id: device_meta.0,
        device_name: device_meta.1,
        compiled: a.compiled,
        assignment: device_meta.2,
        version: env!("CARGO_PKG_VERSION").into(),
    };
    Ok((Prepared { circuits, metadata }, noise))
}

fn shots_csv(circuits: &[ExperimentCircuit], tables: &[ShotTable]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let width = tables.first().map_or(0, |t| t.num_clbits);
    let mut header = vec!["setting".to_string(), "shot".to_string()];
    header.extend((0..width).map(|c| format!("c{c}")));
    w.write_record(&header)?;
    for (ec, table) in circuits.iter().zip(tables) {
        for (i, &r) in table.records.iter().enumerate() {
            let mut row = vec![ec.setting.name().to_string(), i.to_string()];
            row.extend((0..width).map(|c| ((r >> c) & 1).to_string()));
            w.write_record(&row)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}

fn undefined(message: String, shots: usize, metadata: Metadata) -> Result<Output, CliError> {
    let doc = UndefinedReport {
        error: "undefined_statistic".into(),
        message: message.clone(),
        shots,
        retained: 0,
        metadata,
    };
    Ok(Output {
        code: EXIT_UNDEFINED,
        stdout: serde_json::to_string_pretty(&doc)? + "\n",
        stderr: format!("error: {message}\n"),
    })
}

fn sample(a: &RunArgs) -> Result<(Prepared, Vec<ShotTable>), CliError> {
    let (prep, noise) = prepare_run(a)?;
    let shots = a.shots as usize;
    let tables = prep
        .circuits
        .iter()
        .enumerate()
        .map(|(k, ec)| run_shots_from(&ec.circuit, shots, noise.as_ref(), a.seed, (k * shots) as u64))
        .collect::<braidsim::Result<Vec<_>>>()?;
    Ok((prep, tables))
}

/// Samples the experiment and builds the report.
pub fn run_report(a: &RunArgs) -> Result<Result<Report, UndefinedReport>, CliError> {
    let (prep, tables) = sample(a)?;
    build_report(&prep, &tables, a.shots as usize)
}

fn build_report(
    prep: &Prepared,
    tables: &[ShotTable],
    shots: usize,
) -> Result<Result<Report, UndefinedReport>, CliError> {
    let undefined = |message: String| UndefinedReport {
        error: "undefined_statistic".into(),
        message,
        shots,
        retained: 0,
        metadata: prep.metadata.clone(),
    };
    let z = prep
        .circuits
        .iter()
        .position(|c| c.setting == Setting::Z)
        .expect("every run includes the Z setting");
    let readout = prep.circuits[z].readout;
    let kept = postselect(&tables[z], &readout);
    let c = match correlation(&kept, &readout) {
        Ok(c) => c,
        Err(Error::UndefinedStatistic(m)) => return Ok(Err(undefined(m))),
        Err(e) => return Err(e.into()),
    };
    let counts = pair_counts(&kept, &readout);
    let outcome_counts: BTreeMap<String, usize> = counts
        .iter()
        .enumerate()
        .map(|(i, &n)| (pair_key(i), n))
        .collect();

    let tomography = if prep.circuits.len() > 1 {
        let mut settings = Vec::new();
        let mut bloch = BTreeMap::new();
        for (ec, table) in prep.circuits.iter().zip(tables) {
            let kept = postselect(table, &ec.readout);
            let e = match logical_expectation(&kept, &ec.readout, ec.setting) {
                Ok(e) => e,
                Err(Error::UndefinedStatistic(m)) => {
                    return Ok(Err(undefined(format!("setting {}: {m}", ec.setting.name()))))
                }
                Err(e) => return Err(e.into()),
            };
            bloch.insert(ec.setting, e.value);
            settings.push(SettingRun {
                setting: ec.setting,
                operator: ec.setting.logical_operator().to_string(),
                shots,
                retained: kept.len(),
                expectation: e,
            });
        }
        let run = TomographyRun {
            settings,
            result: reconstruct(bloch[&Setting::X], bloch[&Setting::Y], bloch[&Setting::Z]),
        };
        Some(TomographyReport::from(&run))
    } else {
        None
    };

    Ok(Ok(Report {
        shots,
        retained: kept.len(),
        acceptance: kept.len() as f64 / shots as f64,
        c: c.value,
        stderr_c: c.stderr,
        outcome_counts,
        tomography,
        metadata: prep.metadata.clone(),
    }))
}

fn cmd_run(a: &RunArgs) -> Result<Output, CliError> {
    let (prep, tables) = sample(a)?;
    let shots = a.shots as usize;
    if a.format == Format::Csv {
        let text = shots_csv(&prep.circuits, &tables)?;
        write_out(a.out.as_deref(), &text)?;
        return Ok(Output::ok(text));
    }
    match build_report(&prep, &tables, shots)? {
        Ok(report) => {
            let text = serde_json::to_string_pretty(&report)? + "\n";
            write_out(a.out.as_deref(), &text)?;
            Ok(Output::ok(text))
        }
        Err(u) => undefined(u.message, shots, u.metadata),
    }
}

fn cmd_compile(a: &CompileArgs) -> Result<Output, CliError> {
    let device = DeviceModel::load(&a.device)?;
    let assignment = resolve_assignment(&device, &a.assign)?;
    let setting: Setting = a.setting.into();
    let compiled = compile_setting(setting, &device, &assignment)?;
    let roles: BTreeMap<&str, usize> = braidsim::Role::ALL
        .iter()
        .map(|r| (r.name(), assignment.get(*r)))
        .collect();
    let header = json!({
        "device": device.name,
        "device_id": device.id(),
        "synthetic": device.synthetic,
        "setting": setting.name(),
        "assignment": roles,
        "score": assignment.score,
        "readout": compiled.readout,
    });
    let doc = CircuitDocument::from_circuit(&compiled.circuit).with_comment(header.to_string());
    let text = doc.to_string();
    write_out(a.out.as_deref(), &text)?;
    Ok(Output::ok(text))
}

/// Ideal circuit for `setting` as a text document.
pub fn export_document(setting: Setting) -> Result<CircuitDocument, CliError> {
    let ec = setting_circuit(&ExperimentDef::default(), setting)?;
    Ok(CircuitDocument::from_circuit(&ec.circuit)
        .with_comment("bits: 0 = YY(v1,v2), 1 = XX(v2,v3), 2 = Z(v2), 3 = v1, 4 = v3")
        .with_comment(format!(
            "exchange experiment, setting {}, qubits v1 v2 v3 e1 e2 = 0 1 2 3 4",
            setting.name()
        )))
}

fn cmd_export(a: &ExportArgs) -> Result<Output, CliError> {
    let text = export_document(a.setting.into())?.to_string();
    write_out(a.out.as_deref(), &text)?;
    Ok(Output::ok(text))
}

fn cmd_lattice(a: &LatticeArgs) -> Result<Output, CliError> {
    let lat = build_lattice(a.rows as usize, a.cols as usize)?;
    let stabilizers = lat.standard_stabilizers()?;
    let mut doc = json!({
        "lattice": lat,
        "stabilizers": stabilizers.generators(),
    });
    if let Some(edges) = &a.exchange {
        let sched = exchange_schedule(&lat, edges[0], edges[1])?;
        doc["schedule"] = json!({
            "steps": sched.steps,
            "roles": sched.roles,
            "support": support(&sched),
            "truncated": truncate(&sched),
        });
    }
    Ok(Output::ok(serde_json::to_string_pretty(&doc)? + "\n"))
}
