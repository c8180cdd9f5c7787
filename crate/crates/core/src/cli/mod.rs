//! Command-line front end: `emit-circuit`, `run`, `predict`, `verify-ft`,
//! `sweep-theta` and `bounds`.
//!
//! Experiment commands read an optional flat `key = value` manifest
//! (`--config`); any flag given on the command line overrides the file.
//! Results default to `$QEC422_OUTPUT_DIR/<experiment_id>.csv`, or the
//! working directory when the variable is unset.

mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::analytics::{
    crossover_length, trace_distance, worst_case_bound, write_curves_csv, PredictionCurve, PredictionMode, Scheme,
};
use crate::code422::{
    build_encoder, coded_gate_circuit, post_select_distribution, uncoded_gate_circuit, EncoderVariant, GateSetId,
    LogicalGate, LogicalStateLabel, LogicalValue,
};
use crate::experiments::{
    build_pair, random_sequence, summarize, sweep_l, sweep_theta, validate_coupling, write_sidecar, CouplingMap,
    ExperimentRecord, PairMode, RecordWriter, SequenceSpec, Sidecar, SweepConfig, DEFAULT_SHOTS, SEQUENCE_SAMPLING,
};
use crate::ftcheck::{verify_with, Detection, VerifyOptions};
use crate::noise::NoiseParams;
use crate::sim::{parse_circuit, Circuit, OutcomeDistribution};
use crate::{Error, Result};

pub use config::{parse_angle, parse_angles, parse_lengths, ConfigFile, CONFIG_KEYS};

/// Environment variable naming the default results directory.
pub const OUTPUT_DIR_ENV: &str = "QEC422_OUTPUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "qec422", version, about = "[4,2,2] code simulation and fault-tolerance analysis")]
pub struct Cli {
    /// Worker threads for shot sampling and sweeps (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print an encoder or a logical gate block in circuit text format.
    EmitCircuit(EmitArgs),
    /// Run a sequence-length sweep and append records to CSV.
    Run(ExperimentArgs),
    /// Print model prediction curves as CSV.
    Predict(PredictArgs),
    /// Exhaustively check every single fault of a circuit.
    VerifyFt(VerifyArgs),
    /// Sweep the coherent rotation angle on the coded encoder.
    SweepTheta(ExperimentArgs),
    /// Print the fully depolarized worst-case distances.
    Bounds,
}

#[derive(Debug, Args)]
pub struct EmitArgs {
    /// Encoder label: L00, L01, L10, L11, L0plus, LPhiPlus.
    #[arg(long, conflicts_with = "gate")]
    pub encoder: Option<LogicalStateLabel>,
    /// Encoder variant: nonft or ancilla.
    #[arg(long, default_value = "nonft")]
    pub variant: EncoderVariant,
    /// Logical gate: X0, X1, Z0, Z1, CZZZ, HHSWAP.
    #[arg(long)]
    pub gate: Option<LogicalGate>,
    /// Emit the bare two-qubit block instead of the coded one.
    #[arg(long, requires = "gate")]
    pub uncoded: bool,
}

/// Noise knobs; each overrides the manifest.
#[derive(Debug, Args, Default)]
pub struct NoiseArgs {
    #[arg(long)]
    pub eps1: Option<f64>,
    #[arg(long)]
    pub eps2: Option<f64>,
    #[arg(long)]
    pub p_meas: Option<f64>,
    #[arg(long)]
    pub p_prep: Option<f64>,
    #[arg(long)]
    pub xi: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Flat `key = value` manifest.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub experiment_id: Option<String>,
    /// reduced, full or single_hhswap.
    #[arg(long)]
    pub gate_set: Option<GateSetId>,
    /// Sequence lengths, e.g. `1..100` or `10,50,100`.
    #[arg(long)]
    pub lengths: Option<String>,
    /// Sequence length for `sweep-theta`.
    #[arg(long = "length", short = 'L')]
    pub l: Option<u32>,
    /// Random sequences per length.
    #[arg(long)]
    pub seeds: Option<u32>,
    #[arg(long)]
    pub shots: Option<u64>,
    /// Master seed.
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub noise: NoiseArgs,
    /// Coherent angle for `run`, e.g. `pi/8`.
    #[arg(long)]
    pub theta: Option<String>,
    /// Angles for `sweep-theta`, e.g. `0,pi/8,pi/4`.
    #[arg(long)]
    pub thetas: Option<String>,
    /// Mix ideal outputs with `xi` exactly instead of sampling shots.
    #[arg(long)]
    pub analytic: bool,
    /// Results CSV (appended).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Also write a JSON sidecar here.
    #[arg(long)]
    pub sidecar: Option<PathBuf>,
    /// Reject coded circuits that do not fit `linear:N`.
    #[arg(long)]
    pub coupling: Option<String>,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub gate_set: Option<GateSetId>,
    #[arg(long)]
    pub lengths: Option<String>,
    #[command(flatten)]
    pub noise: NoiseArgs,
    /// Use untruncated block errors.
    #[arg(long)]
    pub full_polynomial: bool,
    /// CSV path; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, conflicts_with = "circuit")]
    pub encoder: Option<LogicalStateLabel>,
    #[arg(long, default_value = "nonft")]
    pub variant: EncoderVariant,
    /// Circuit text file to check instead of a built-in encoder.
    #[arg(long)]
    pub circuit: Option<PathBuf>,
    /// Treat the fifth measured bit as an ancilla that must read 0.
    #[arg(long)]
    pub ancilla: bool,
    /// Also inject an `X` on every qubit before the first gate.
    #[arg(long)]
    pub include_prep: bool,
    /// Also count undetected fault pairs.
    #[arg(long)]
    pub pairs: bool,
    /// Print JSON instead of the table.
    #[arg(long)]
    pub json: bool,
}

/// Fully resolved experiment settings.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub experiment_id: String,
    pub gate_set: GateSetId,
    pub lengths: Vec<u32>,
    pub l: u32,
    pub seeds: u32,
    pub shots: u64,
    pub seed: u64,
    pub params: NoiseParams,
    pub thetas: Vec<f64>,
    pub analytic: bool,
    pub output: PathBuf,
    pub sidecar: Option<PathBuf>,
    pub coupling: Option<CouplingMap>,
}

fn parse_coupling(text: &str) -> Result<CouplingMap> {
    text.strip_prefix("linear:")
        .and_then(|n| n.trim().parse().ok())
        .map(CouplingMap::linear)
        .ok_or_else(|| Error::InvalidArgument(format!("coupling `{text}` is not `linear:N`")))
}

fn resolve_noise(file: &ConfigFile, flags: &NoiseArgs) -> Result<NoiseParams> {
    let pick = |flag: Option<f64>, key: &str| -> Result<f64> {
        Ok(match flag {
            Some(v) => v,
            None => file.parsed(key)?.unwrap_or(0.0),
        })
    };
    Ok(NoiseParams {
        eps1: pick(flags.eps1, "eps1")?,
        eps2: pick(flags.eps2, "eps2")?,
        p_meas: pick(flags.p_meas, "p_meas")?,
        p_prep: pick(flags.p_prep, "p_prep")?,
        theta: 0.0,
        xi: pick(flags.xi, "xi")?,
    })
}

impl RunConfig {
    /// Merges manifest and flags (flags win) and validates every field.
    pub fn resolve(args: &ExperimentArgs) -> Result<Self> {
        let file = match &args.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        let text = |flag: &Option<String>, key: &str| flag.clone().or_else(|| file.get(key).map(str::to_string));

        let experiment_id = text(&args.experiment_id, "experiment_id").unwrap_or_else(|| "qec422".into());
        let gate_set = match args.gate_set {
            Some(g) => g,
            None => file.parsed("gate_set")?.unwrap_or(GateSetId::Reduced),
        };
        let lengths = parse_lengths(&text(&args.lengths, "lengths").unwrap_or_else(|| "1..100".into()))?;
        let l = match args.l {
            Some(l) => l,
            None => file.parsed("L")?.unwrap_or(10),
        };
        let seeds = match args.seeds {
            Some(s) => s,
            None => file.parsed("seeds")?.unwrap_or(1),
        };
        let shots = match args.shots {
            Some(s) => s,
            None => file.parsed("shots")?.unwrap_or(DEFAULT_SHOTS),
        };
        let seed = match args.seed {
            Some(s) => s,
            None => file.parsed("seed")?.unwrap_or(0),
        };
        let mut params = resolve_noise(&file, &args.noise)?;
        if let Some(t) = text(&args.theta, "theta") {
            params.theta = parse_angle(&t)?;
        }
        let thetas = parse_angles(&text(&args.thetas, "thetas").unwrap_or_else(|| "0".into()))?;
        let analytic = args.analytic || file.parsed("analytic")?.unwrap_or(false);
        let output = match text(&args.output.as_ref().map(|p| p.display().to_string()), "output") {
            Some(p) => PathBuf::from(p),
            None => std::env::var_os(OUTPUT_DIR_ENV)
                .map(PathBuf::from)
                .unwrap_or_default()
                .join(format!("{experiment_id}.csv")),
        };
        let sidecar = text(&args.sidecar.as_ref().map(|p| p.display().to_string()), "sidecar").map(PathBuf::from);
        let coupling = text(&args.coupling, "coupling").map(|c| parse_coupling(&c)).transpose()?;

        params.validate()?;
        if shots == 0 || seeds == 0 {
            return Err(Error::InvalidArgument("shots and seeds must be at least 1".into()));
        }
        for &len in lengths.iter().chain([&l]) {
            SequenceSpec::new(gate_set, len, 0)?;
        }
        Ok(Self {
            experiment_id,
            gate_set,
            lengths,
            l,
            seeds,
            shots,
            seed,
            params,
            thetas,
            analytic,
            output,
            sidecar,
            coupling,
        })
    }

    fn sweep(&self) -> SweepConfig {
        let mut s = SweepConfig::new(self.experiment_id.clone(), self.gate_set, self.params);
        s.shots = self.shots;
        s.master_seed = self.seed;
        s.mode = if self.analytic { PairMode::Exact } else { PairMode::Sampled };
        s
    }
}

fn emit(args: &EmitArgs, out: &mut dyn Write) -> Result<()> {
    let circuit = match (&args.encoder, &args.gate) {
        (Some(label), None) => build_encoder(*label, args.variant)?,
        (None, Some(gate)) if args.uncoded => {
            let mut c = Circuit::empty(2)?.measure_all();
            c.extend(uncoded_gate_circuit(*gate))?;
            c
        }
        (None, Some(gate)) => {
            let mut c = Circuit::empty(4)?.measure_all();
            c.extend(coded_gate_circuit(*gate))?;
            c
        }
        _ => return Err(Error::InvalidArgument("give exactly one of --encoder or --gate".into())),
    };
    write!(out, "{}", circuit.to_text())?;
    Ok(())
}

// Coded circuits of every sequence the sweep would run must fit the map.
fn check_coupling(cfg: &RunConfig, lengths: &[u32]) -> Result<()> {
    let Some(map) = &cfg.coupling else {
        return Ok(());
    };
    let sweep = cfg.sweep();
    for &l in lengths {
        for i in 0..cfg.seeds {
            let spec = SequenceSpec::new(
                cfg.gate_set,
                l,
                crate::experiments::derive_seed(sweep.master_seed, u64::from(l), u64::from(i)),
            )?;
            let (_, coded) = build_pair(&random_sequence(&spec))?;
            if let Some(v) = validate_coupling(&coded, map)?.first() {
                return Err(Error::Structure(format!(
                    "gate {} on ({}, {}) is not allowed by the coupling map",
                    v.gate_index, v.targets.0, v.targets.1
                )));
            }
        }
    }
    Ok(())
}

fn persist(cfg: &RunConfig, records: &[ExperimentRecord]) -> Result<()> {
    if let Some(dir) = cfg.output.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let mut w = RecordWriter::append_to(&cfg.output)?;
    w.write_all(records)?;
    w.flush()?;
    if let Some(path) = &cfg.sidecar {
        write_sidecar(
            path,
            &Sidecar {
                experiment_id: cfg.experiment_id.clone(),
                params: cfg.params,
                shots: cfg.shots,
                master_seed: cfg.seed,
                sequence_sampling: SEQUENCE_SAMPLING.into(),
                records: records.to_vec(),
            },
        )?;
    }
    Ok(())
}

/// Mean `D` per length with one column per scheme.
pub fn summary_table(records: &[ExperimentRecord]) -> String {
    let mut s = format!("{:>6} {:>10} {:>10} {:>10} {:>8} {:>6}\n", "L", "D_u", "D_c(r=1)", "D_c", "r", "n");
    let rows = summarize(records);
    for chunk in rows.chunk_by(|a, b| a.l == b.l) {
        let get = |sch: Scheme| chunk.iter().find(|r| r.scheme == sch);
        let fmt = |r: Option<&crate::experiments::SummaryRow>| r.map_or("-".to_string(), |r| format!("{:.4}", r.mean_d));
        let ps = get(Scheme::CodedPs);
        s += &format!(
            "{:>6} {:>10} {:>10} {:>10} {:>8} {:>6}\n",
            chunk[0].l,
            fmt(get(Scheme::Uncoded)),
            fmt(get(Scheme::CodedRaw)),
            fmt(ps),
            ps.map_or("-".to_string(), |r| format!("{:.4}", r.mean_r)),
            chunk[0].samples
        );
    }
    s
}

fn run(args: &ExperimentArgs, out: &mut dyn Write) -> Result<()> {
    let cfg = RunConfig::resolve(args)?;
    check_coupling(&cfg, &cfg.lengths)?;
    let records = sweep_l(&cfg.sweep(), &cfg.lengths, cfg.seeds)?;
    persist(&cfg, &records)?;
    write!(out, "{}", summary_table(&records))?;
    writeln!(out, "{} records appended to {}", records.len(), cfg.output.display())?;
    Ok(())
}

fn sweep_theta_cmd(args: &ExperimentArgs, out: &mut dyn Write) -> Result<()> {
    let cfg = RunConfig::resolve(args)?;
    check_coupling(&cfg, &[cfg.l])?;
    let records = sweep_theta(&cfg.sweep(), &cfg.thetas, cfg.l, cfg.seeds)?;
    persist(&cfg, &records)?;
    writeln!(out, "{:>10} {:>10} {:>10} {:>8}", "theta", "D_u", "D_c", "r")?;
    for &theta in &cfg.thetas {
        let at: Vec<&ExperimentRecord> = records
            .iter()
            .filter(|r| r.scheme != Scheme::Uncoded && r.theta == theta || r.scheme == Scheme::Uncoded)
            .collect();
        let mean = |sch: Scheme, f: fn(&ExperimentRecord) -> f64| {
            let v: Vec<f64> = at
                .iter()
                .filter(|r| r.scheme == sch && (sch == Scheme::Uncoded || r.theta == theta))
                .map(|r| f(r))
                .collect();
            v.iter().sum::<f64>() / v.len().max(1) as f64
        };
        writeln!(
            out,
            "{:>10.6} {:>10.4} {:>10.4} {:>8.4}",
            theta,
            mean(Scheme::Uncoded, |r| r.d),
            mean(Scheme::CodedPs, |r| r.d),
            mean(Scheme::CodedPs, |r| r.r)
        )?;
    }
    writeln!(out, "{} records appended to {}", records.len(), cfg.output.display())?;
    Ok(())
}

fn predict_cmd(args: &PredictArgs, out: &mut dyn Write) -> Result<()> {
    let file = match &args.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let params = resolve_noise(&file, &args.noise)?;
    params.validate()?;
    let gate_set = match args.gate_set {
        Some(g) => g,
        None => file.parsed("gate_set")?.unwrap_or(GateSetId::Reduced),
    };
    let lengths = parse_lengths(
        &args
            .lengths
            .clone()
            .or_else(|| file.get("lengths").map(str::to_string))
            .unwrap_or_else(|| "1..100".into()),
    )?;
    let mode = if args.full_polynomial {
        PredictionMode::FullPolynomial
    } else {
        PredictionMode::Truncated
    };
    let curves = Scheme::ALL
        .iter()
        .map(|&s| PredictionCurve::evaluate(s, gate_set, mode, &lengths, &params))
        .collect::<Result<Vec<_>>>()?;
    match &args.output {
        Some(p) => write_curves_csv(&curves, std::fs::File::create(p)?)?,
        None => write_curves_csv(&curves, &mut *out)?,
    }
    let max_l = *lengths.last().expect("non-empty");
    let msg = match crossover_length(Scheme::CodedPs, gate_set, mode, &params, max_l) {
        Some(l) => format!("crossover: coded_ps below uncoded from L = {l}"),
        None => format!("crossover: coded_ps not below uncoded by L = {max_l}"),
    };
    if args.output.is_some() {
        writeln!(out, "{msg}")?;
    } else {
        eprintln!("{msg}");
    }
    Ok(())
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<()> {
    let (circuit, id, ancilla) = match (&args.circuit, &args.encoder) {
        (Some(path), None) => {
            let c = parse_circuit(&std::fs::read_to_string(path)?)?;
            (c, path.display().to_string(), args.ancilla)
        }
        (None, Some(label)) => {
            let c = build_encoder(*label, args.variant)?;
            let anc = args.ancilla || args.variant == EncoderVariant::AncillaChecked;
            (c, format!("{label} {:?}", args.variant), anc)
        }
        _ => return Err(Error::InvalidArgument("give exactly one of --encoder or --circuit".into())),
    };
    let detection = if ancilla {
        Detection::PostSelectAncilla
    } else {
        Detection::PostSelect
    };
    let options = VerifyOptions {
        circuit_id: id,
        gates: None,
        include_preparation: args.include_prep,
        count_pairs: args.pairs,
    };
    let report = verify_with(&circuit, detection, &options)?;
    if args.json {
        writeln!(out, "{}", report.to_json()?)?;
    } else {
        writeln!(out, "{report}")?;
    }
    Ok(())
}

fn bounds(out: &mut dyn Write) -> Result<()> {
    writeln!(out, "{:<28} {:>10} {:>8}", "ideal output", "dimension", "D_max")?;
    let uncoded: [(&str, &[(&str, f64)]); 3] = [
        ("|01>", &[("01", 1.0)]),
        ("(|01>+|10>)/sqrt2", &[("01", 0.5), ("10", 0.5)]),
        ("uniform over 4", &[("00", 0.25), ("01", 0.25), ("10", 0.25), ("11", 0.25)]),
    ];
    for (name, pairs) in uncoded {
        let d = OutcomeDistribution::from_strs(pairs)?;
        writeln!(out, "{:<28} {:>10} {:>8.4}", name, d.support_size(), worst_case_bound(&d))?;
    }
    // coded analog: the ideal codeword against I/16 after post-selection
    for v in [LogicalValue::V01] {
        let ideal = OutcomeDistribution::uniform_over(4, &v.codeword_strings())?;
        let (kept, r) = post_select_distribution(&OutcomeDistribution::uniform(4), false)?;
        let d = trace_distance(&ideal, &kept.expect("even strings survive"))?;
        writeln!(out, "{:<28} {:>10} {:>8.4}   (post-selected, r = {r})", format!("coded |{v}>"), 1, d)?;
    }
    Ok(())
}

/// Runs one parsed command, writing human output to `out`.
pub fn execute(cli: &Cli, out: &mut (dyn Write + Send)) -> Result<()> {
    let mut work = move || match &cli.command {
        Command::EmitCircuit(a) => emit(a, out),
        Command::Run(a) => run(a, out),
        Command::Predict(a) => predict_cmd(a, out),
        Command::VerifyFt(a) => verify(a, out),
        Command::SweepTheta(a) => sweep_theta_cmd(a, out),
        Command::Bounds => bounds(out),
    };
    match cli.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(work),
        None => work(),
    }
}

/// Parses `args`, runs the command and maps failures to exit codes: 2 for
/// usage errors, unknown names and out-of-range parameters, 1 for everything
/// else.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&cli, &mut std::io::stdout()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidArgument(_) | Error::Parse(_) | Error::Probability { .. } | Error::NonFinite(_) => {
                    ExitCode::from(2)
                }
                _ => ExitCode::FAILURE,
            }
        }
    }
}

pub fn main() -> ExitCode {
    main_with_args(std::env::args_os())
}
