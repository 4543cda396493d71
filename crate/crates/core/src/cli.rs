//! Command-line front end: field setup, single roundtrips, Monte-Carlo
//! campaigns and the theoretical radius table.
//!
//! Every subcommand reads flags, optionally merged over a JSON config file
//! given with `--config` (flags win). Exit codes: 0 success, 1 decoding
//! failure, 2 ambiguous decoding, 3 invalid configuration.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bilinear::{BilinearSetup, SetupFile};
use crate::channel::{random_selfadjoint_qpoly, write_instance_log, InstanceRecord, RngStream};
use crate::gabidulin::{random_error, wb_decode_with, DecodeReport, DecodeStatus, Diagnostics, GabCode, WbOptions};
use crate::gf::{ExtField, FieldParams};
use crate::qpoly::{QPoly, QPolyJson};
use crate::symdec::SymDecoder;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_AMBIGUOUS: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

fn invalid(msg: impl std::fmt::Display) -> CliError {
    CliError::Invalid(msg.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Gabidulin code, arbitrary errors, half-distance decoder
    Standard,
    /// `Gab_k ∘ X^q` with k < n/2, symmetric errors of any rank
    SymLow,
    /// `Gab_k ∘ X^q` with k > n/2, symmetric errors of rank up to n - k
    SymHigh,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Standard => "standard",
            Mode::SymLow => "sym-low",
            Mode::SymHigh => "sym-high",
        }
    }
}

/// A single value or a list, so that `"k": 3` and `"k": [2, 3]` both parse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany {
    One(usize),
    Many(Vec<usize>),
}

impl OneOrMany {
    fn into_vec(self) -> Vec<usize> {
        match self {
            OneOrMany::One(x) => vec![x],
            OneOrMany::Many(v) => v,
        }
    }
}

/// Experiment parameters as read from a JSON config file or flags.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub p: Option<u32>,
    pub e: Option<usize>,
    pub n: Option<usize>,
    pub g: Option<Vec<u32>>,
    pub f: Option<Vec<Vec<u32>>>,
    pub k: Option<OneOrMany>,
    pub mode: Option<Mode>,
    pub rank: Option<OneOrMany>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub setup_file: Option<PathBuf>,
    pub instance_log: Option<PathBuf>,
    pub candidate_cap: Option<u64>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
    }

    /// `self` with every field set in `over` replaced.
    pub fn overridden_by(self, over: ExperimentConfig) -> Self {
        Self {
            p: over.p.or(self.p),
            e: over.e.or(self.e),
            n: over.n.or(self.n),
            g: over.g.or(self.g),
            f: over.f.or(self.f),
            k: over.k.or(self.k),
            mode: over.mode.or(self.mode),
            rank: over.rank.or(self.rank),
            trials: over.trials.or(self.trials),
            seed: over.seed.or(self.seed),
            out: over.out.or(self.out),
            setup_file: over.setup_file.or(self.setup_file),
            instance_log: over.instance_log.or(self.instance_log),
            candidate_cap: over.candidate_cap.or(self.candidate_cap),
        }
    }

    /// Field and bilinear setup, from `setup_file` if given, else from the
    /// field parameters.
    pub fn field(&self) -> Result<(ExtField, BilinearSetup), CliError> {
        if let Some(path) = &self.setup_file {
            let text = std::fs::read_to_string(path)?;
            let file: SetupFile =
                serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
            return file.load().map_err(invalid);
        }
        let p = self.p.ok_or_else(|| invalid("--p is required (or --setup-file)"))?;
        let n = self.n.ok_or_else(|| invalid("--n is required (or --setup-file)"))?;
        let params =
            FieldParams::with_moduli(p, self.e.unwrap_or(1), n, self.g.clone(), self.f.clone()).map_err(invalid)?;
        let ext = ExtField::new(&params).map_err(invalid)?;
        let setup = BilinearSetup::new(&ext);
        Ok((ext, setup))
    }

    fn ks(&self) -> Result<Vec<usize>, CliError> {
        let ks = self.k.clone().ok_or_else(|| invalid("--k is required"))?.into_vec();
        if ks.is_empty() {
            return Err(invalid("--k is empty"));
        }
        Ok(ks)
    }
}

/// One decoding pipeline: code, channel and decoder for a given mode and `k`.
#[derive(Debug, Clone)]
pub enum Pipeline {
    Standard { code: GabCode, radius: usize, opts: WbOptions },
    Symmetric { mode: Mode, code: GabCode, decoder: SymDecoder },
}

impl Pipeline {
    pub fn new(
        ext: &ExtField,
        setup: &BilinearSetup,
        mode: Mode,
        k: usize,
        cap: Option<u64>,
    ) -> Result<Self, CliError> {
        let n = ext.degree();
        let mut opts = WbOptions::default();
        if let Some(cap) = cap {
            opts.candidate_cap = cap;
        }
        match mode {
            Mode::Standard => {
                let code = GabCode::new(n, k, 0).map_err(invalid)?;
                Ok(Self::Standard { code, radius: code.unique_radius(), opts })
            }
            Mode::SymLow if 2 * k > n => Err(invalid(format!("sym-low needs k <= n/2, got n = {n}, k = {k}"))),
            Mode::SymHigh if 2 * k <= n => Err(invalid(format!("sym-high needs k > n/2, got n = {n}, k = {k}"))),
            Mode::SymLow | Mode::SymHigh => {
                let mut decoder = SymDecoder::new(ext, setup, k).map_err(invalid)?;
                if let SymDecoder::High(h) = decoder {
                    decoder = SymDecoder::High(h.with_options(opts));
                }
                let code = GabCode::new(n, k, 1).map_err(invalid)?;
                Ok(Self::Symmetric { mode, code, decoder })
            }
        }
    }

    pub fn code(&self) -> &GabCode {
        match self {
            Self::Standard { code, .. } | Self::Symmetric { code, .. } => code,
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Self::Standard { .. } => Mode::Standard,
            Self::Symmetric { mode, .. } => *mode,
        }
    }

    /// Largest error rank the decoder is designed for.
    pub fn design_radius(&self) -> usize {
        let code = self.code();
        match self.mode() {
            Mode::Standard => code.unique_radius(),
            Mode::SymLow => code.n(),
            Mode::SymHigh => code.n() - code.k(),
        }
    }

    /// Random codeword plus random error of rank `r` (self-adjoint for the
    /// symmetric modes).
    pub fn instance(
        &self,
        ext: &ExtField,
        setup: &BilinearSetup,
        r: usize,
        rng: &mut RngStream,
    ) -> Result<Instance, CliError> {
        if r > ext.degree() {
            return Err(invalid(format!("rank {r} exceeds n = {}", ext.degree())));
        }
        let codeword = self.code().random_codeword(ext, rng);
        let error = match self {
            Self::Standard { .. } => random_error(ext, r, rng),
            Self::Symmetric { .. } => random_selfadjoint_qpoly(ext, setup, r, rng).map_err(invalid)?,
        };
        let received = codeword.add(ext, &error);
        Ok(Instance { codeword, error, received })
    }

    pub fn decode(&self, ext: &ExtField, y: &QPoly) -> DecodeReport {
        let result = match self {
            Self::Standard { code, radius, opts } => {
                wb_decode_with(ext, code, y, *radius, *opts, |_| true).map_err(|e| e.to_string())
            }
            Self::Symmetric { decoder, .. } => decoder.decode(ext, y).map_err(|e| e.to_string()),
        };
        result.unwrap_or_else(|note| DecodeReport::fail(Diagnostics { note: Some(note), ..Default::default() }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub codeword: QPoly,
    pub error: QPoly,
    pub received: QPoly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Success,
    Ambiguous,
    Failure,
}

/// Ambiguous only when the sent codeword is among the candidates; a list
/// that misses it is a failure.
pub fn classify(report: &DecodeReport, truth: &QPoly) -> Outcome {
    match report.status {
        DecodeStatus::Ok if report.codeword() == Some(truth) => Outcome::Success,
        DecodeStatus::Ambiguous if report.candidates.iter().any(|d| &d.codeword == truth) => Outcome::Ambiguous,
        _ => Outcome::Failure,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SetupOutput {
    pub branch: String,
    pub setup: SetupFile,
}

pub fn cmd_setup(cfg: &ExperimentConfig) -> Result<SetupOutput, CliError> {
    let (ext, setup) = cfg.field()?;
    Ok(SetupOutput { branch: setup.branch().describe().to_string(), setup: setup.to_file(&ext) })
}

#[derive(Debug, Clone, Serialize)]
pub struct CandidateJson {
    pub codeword: QPolyJson,
    pub error: QPolyJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct RoundtripReport {
    pub mode: Mode,
    pub field: FieldParams,
    pub u: Vec<Vec<u32>>,
    pub n: usize,
    pub k: usize,
    pub rank: usize,
    pub seed: u64,
    pub codeword: QPolyJson,
    pub error: QPolyJson,
    pub received: QPolyJson,
    pub status: DecodeStatus,
    pub outcome: Outcome,
    pub candidates: Vec<CandidateJson>,
    pub diagnostics: Diagnostics,
}

impl RoundtripReport {
    pub fn exit_code(&self) -> i32 {
        match self.outcome {
            Outcome::Success => EXIT_OK,
            Outcome::Ambiguous => EXIT_AMBIGUOUS,
            Outcome::Failure => EXIT_FAILURE,
        }
    }
}

/// Encode, corrupt and decode once. The error rank defaults to the
/// decoder's design radius.
pub fn cmd_roundtrip(cfg: &ExperimentConfig) -> Result<RoundtripReport, CliError> {
    let (ext, setup) = cfg.field()?;
    let ks = cfg.ks()?;
    let [k] = ks[..] else { return Err(invalid("roundtrip takes a single --k")) };
    let mode = cfg.mode.unwrap_or(Mode::Standard);
    let pipeline = Pipeline::new(&ext, &setup, mode, k, cfg.candidate_cap)?;
    let rank = match cfg.rank.clone().map(OneOrMany::into_vec) {
        None => pipeline.design_radius(),
        Some(v) if v.len() == 1 => v[0],
        Some(_) => return Err(invalid("roundtrip takes a single --rank")),
    };
    let seed = cfg.seed.unwrap_or(0);
    let inst = pipeline.instance(&ext, &setup, rank, &mut RngStream::new(seed, 0))?;
    let report = pipeline.decode(&ext, &inst.received);
    let outcome = classify(&report, &inst.codeword);
    Ok(RoundtripReport {
        mode,
        field: ext.params().clone(),
        u: ext.to_digits(setup.u()),
        n: ext.degree(),
        k,
        rank,
        seed,
        codeword: inst.codeword.to_json(&ext),
        error: inst.error.to_json(&ext),
        received: inst.received.to_json(&ext),
        status: report.status,
        outcome,
        candidates: report
            .candidates
            .iter()
            .map(|d| CandidateJson { codeword: d.codeword.to_json(&ext), error: d.error.to_json(&ext) })
            .collect(),
        diagnostics: report.diagnostics,
    })
}

/// One CSV row of a simulation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimRow {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub mode: Mode,
    pub rank: usize,
    pub trials: u64,
    pub successes: u64,
    pub ambiguous: u64,
    pub failures: u64,
    /// Median decode time in microseconds, when timing was requested.
    pub mean_decode_micros: Option<f64>,
}

pub const SIM_HEADER: &str = "q,n,k,mode,rank,trials,successes,ambiguous,failures,mean_decode_micros";

impl SimRow {
    pub fn success_rate(&self) -> f64 {
        self.successes as f64 / self.trials.max(1) as f64
    }

    pub fn to_csv(&self) -> String {
        let micros = self.mean_decode_micros.map(|m| format!("{m:.1}")).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.q,
            self.n,
            self.k,
            self.mode.name(),
            self.rank,
            self.trials,
            self.successes,
            self.ambiguous,
            self.failures,
            micros
        )
    }
}

pub fn rows_to_csv(rows: &[SimRow]) -> String {
    let mut out = String::from(SIM_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone)]
pub struct Simulation {
    pub rows: Vec<SimRow>,
    pub instances: Vec<InstanceRecord>,
}

/// Runs `trials` seeded trials per `(k, rank)`. Trial `i` draws from
/// stream `i` of the seed, so results do not depend on scheduling.
pub fn cmd_simulate(cfg: &ExperimentConfig, timing: bool) -> Result<Simulation, CliError> {
    let (ext, setup) = cfg.field()?;
    let n = ext.degree();
    let mode = cfg.mode.unwrap_or(Mode::Standard);
    let trials = cfg.trials.unwrap_or(100);
    let seed = cfg.seed.unwrap_or(0);
    let ranks = cfg.rank.clone().map(OneOrMany::into_vec).unwrap_or_else(|| (0..=n).collect());
    if let Some(&r) = ranks.iter().find(|&&r| r > n) {
        return Err(invalid(format!("rank {r} exceeds n = {n}")));
    }
    let keep_log = cfg.instance_log.is_some();
    let mut rows = Vec::new();
    let mut instances = Vec::new();
    let mut ks = cfg.ks()?;
    ks.sort_unstable();
    ks.dedup();
    let mut ranks = ranks;
    ranks.sort_unstable();
    ranks.dedup();
    for &k in &ks {
        let pipeline = Pipeline::new(&ext, &setup, mode, k, cfg.candidate_cap)?;
        for &rank in &ranks {
            let results = (0..trials)
                .into_par_iter()
                .map(|trial| {
                    let mut rng = RngStream::new(seed, trial);
                    let inst = pipeline.instance(&ext, &setup, rank, &mut rng)?;
                    let start = Instant::now();
                    let report = pipeline.decode(&ext, &inst.received);
                    let micros = start.elapsed().as_secs_f64() * 1e6;
                    let record = keep_log.then(|| InstanceRecord {
                        trial,
                        seed,
                        q: ext.q(),
                        n,
                        k,
                        mode: mode.name().to_string(),
                        rank,
                        codeword: inst.codeword.to_json(&ext),
                        error: inst.error.to_json(&ext),
                        received: inst.received.to_json(&ext),
                    });
                    Ok((classify(&report, &inst.codeword), micros, record))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let count = |o: Outcome| results.iter().filter(|r| r.0 == o).count() as u64;
            let median = timing.then(|| {
                let mut t: Vec<f64> = results.iter().map(|r| r.1).collect();
                t.sort_by(f64::total_cmp);
                if t.is_empty() {
                    0.0
                } else if t.len() % 2 == 1 {
                    t[t.len() / 2]
                } else {
                    (t[t.len() / 2 - 1] + t[t.len() / 2]) / 2.0
                }
            });
            rows.push(SimRow {
                q: ext.q(),
                n,
                k,
                mode,
                rank,
                trials,
                successes: count(Outcome::Success),
                ambiguous: count(Outcome::Ambiguous),
                failures: count(Outcome::Failure),
                mean_decode_micros: median,
            });
            instances.extend(results.into_iter().filter_map(|r| r.2));
        }
    }
    Ok(Simulation { rows, instances })
}

/// Relative decoding radius `τ = t/n` of three decoders at rate `R = k/n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusRow {
    pub k: usize,
    pub rate: f64,
    /// Half-distance decoding, `(1 - R)/2`.
    pub dashed: f64,
    /// Interleaved decoding of space-symmetric errors, `2(1 - R)/3`.
    pub dotted: f64,
    /// Symmetric errors: `1` for `R <= 1/2`, `1 - R` above.
    pub thick: f64,
}

pub fn radius_row(k: usize, n: usize) -> RadiusRow {
    let rate = k as f64 / n as f64;
    let thick = if 2 * k <= n { 1.0 } else { 1.0 - rate };
    RadiusRow { k, rate, dashed: (1.0 - rate) / 2.0, dotted: 2.0 * (1.0 - rate) / 3.0, thick }
}

/// Rows for `k = 0, ..., n`. The curves do not depend on `q`, which is only
/// recorded in the CSV.
pub fn cmd_radius_table(n: usize) -> Vec<RadiusRow> {
    (0..=n).map(|k| radius_row(k, n)).collect()
}

pub fn radius_csv(rows: &[RadiusRow], n: usize, q: u64) -> String {
    let mut out = String::from("q,n,k,rate,dashed,dotted,thick\n");
    for r in rows {
        writeln!(out, "{q},{n},{},{:.6},{:.6},{:.6},{:.6}", r.k, r.rate, r.dashed, r.dotted, r.thick)
            .expect("write to String");
    }
    out
}

#[derive(Debug, Parser)]
#[command(name = "rankmetric", version, about = "Gabidulin codes and symmetric rank-metric error decoding")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a field and an orthonormal basis, and write them as JSON
    Setup(CommonArgs),
    /// Encode, corrupt and decode one instance
    Roundtrip(CommonArgs),
    /// Monte-Carlo success rates per (k, error rank), as CSV
    Simulate(SimulateArgs),
    /// Theoretical relative decoding radii per rate, as CSV
    RadiusTable(RadiusArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// JSON config file; flags override its values
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub e: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Modulus of F_q over F_p, little-endian coefficients: `--g 1,1,1`
    #[arg(long, value_delimiter = ',')]
    pub g: Option<Vec<u32>>,
    /// Modulus of F_{q^n} over F_q as JSON digit lists: `--f '[[1],[1],[1]]'`
    #[arg(long, value_parser = parse_f)]
    pub f: Option<Vec<Vec<u32>>>,
    /// Code dimension; a comma-separated list sweeps rates in `simulate`
    #[arg(long, value_delimiter = ',')]
    pub k: Option<Vec<usize>>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Error rank; a comma-separated list in `simulate`
    #[arg(long, value_delimiter = ',')]
    pub rank: Option<Vec<usize>>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub setup_file: Option<PathBuf>,
    /// Write every generated instance as JSON lines
    #[arg(long)]
    pub instance_log: Option<PathBuf>,
    /// Solution-space points examined beyond the unique decoding radius
    #[arg(long)]
    pub candidate_cap: Option<u64>,
}

fn parse_f(s: &str) -> Result<Vec<Vec<u32>>, String> {
    serde_json::from_str(s).map_err(|e| e.to_string())
}

impl CommonArgs {
    pub fn config(&self) -> Result<ExperimentConfig, CliError> {
        let flags = ExperimentConfig {
            p: self.p,
            e: self.e,
            n: self.n,
            g: self.g.clone(),
            f: self.f.clone(),
            k: self.k.clone().map(OneOrMany::Many),
            mode: self.mode,
            rank: self.rank.clone().map(OneOrMany::Many),
            trials: self.trials,
            seed: self.seed,
            out: self.out.clone(),
            setup_file: self.setup_file.clone(),
            instance_log: self.instance_log.clone(),
            candidate_cap: self.candidate_cap,
        };
        let file = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        Ok(file.overridden_by(flags))
    }
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Fill the timing column with median decode microseconds
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct RadiusArgs {
    /// Number of rate steps; rates are k/n for k = 0..=n
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub q: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Parses `args` and runs the subcommand, writing results to `out` and
/// messages to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Setup(args) => {
            let cfg = args.config()?;
            let result = cmd_setup(&cfg)?;
            writeln!(err, "branch: {}", result.branch)?;
            emit(out, cfg.out.as_deref(), &to_json(&result.setup))?;
            Ok(EXIT_OK)
        }
        Command::Roundtrip(args) => {
            let cfg = args.config()?;
            let report = cmd_roundtrip(&cfg)?;
            emit(out, cfg.out.as_deref(), &to_json(&report))?;
            writeln!(err, "{}: {:?}", report.mode.name(), report.outcome)?;
            Ok(report.exit_code())
        }
        Command::Simulate(args) => {
            let cfg = args.common.config()?;
            let mut sim = cmd_simulate(&cfg, args.timing)?;
            emit(out, cfg.out.as_deref(), &rows_to_csv(&sim.rows))?;
            if let Some(path) = &cfg.instance_log {
                let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
                write_instance_log(&mut file, &mut sim.instances).map_err(|e| invalid(e.to_string()))?;
                file.flush()?;
            }
            Ok(EXIT_OK)
        }
        Command::RadiusTable(args) => {
            if args.n == 0 {
                return Err(invalid("--n must be positive"));
            }
            let rows = cmd_radius_table(args.n);
            emit(out, args.out.as_deref(), &radius_csv(&rows, args.n, args.q))?;
            Ok(EXIT_OK)
        }
    }
}
