//! Command-line front end: `gate`, `state`, `teleport`, `verify`, and `apps`
//! subcommands over the library, with pretty, JSON, and CSV output.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use crate::applications::{
    entanglement_swap, hyper_teleport, level, parallel_ghz, parallel_pairs, qss_sources,
    repeater_chain, stretch, LevelSpec, StretchSpec, SwapVariant,
};
use crate::error::{Error, Result};
use crate::gates::GateSpec;
use crate::numerics::{outer, partial_trace, ComplexMatrix, StateVector};
use crate::output::{
    self, distribution_csv, distribution_json, format_distribution, format_matrix, format_state,
    matrix_json, state_json, BitOrder, OutputDocument, Provenance,
};
use crate::states::{
    bell, classify, density, fourier_state, fourier_state_2q, gamma, ghz, tile_pattern, StateLabel,
    TILE_TOLERANCE,
};
use crate::teleport::{
    post_process, table10_report, teleport_analytic, teleport_sampled, PairSource, PsiInput,
    RoughDegree,
};
use crate::verify::{self, Scope, VerifyOptions};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// Rendering target for command results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Human-readable text.
    Pretty,
    /// Canonical machine-readable document.
    Json,
    /// Outcome distributions only.
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BitOrderArg {
    Natural,
    Ibm,
}

impl From<BitOrderArg> for BitOrder {
    fn from(value: BitOrderArg) -> Self {
        match value {
            BitOrderArg::Natural => BitOrder::Natural,
            BitOrderArg::Ibm => BitOrder::Ibm,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qfsim",
    version,
    about = "State-vector simulator for the Fourier gate family, Fourier states, and teleportation over maximal, non-maximal, and rough entanglement"
)]
pub struct Cli {
    /// Output format (environment default: QFSIM_FORMAT).
    #[arg(long, global = true, value_enum, env = "QFSIM_FORMAT", default_value_t = Format::Pretty)]
    pub format: Format,

    /// Bit order of displayed outcome strings; numeric values never change.
    #[arg(long, global = true, value_enum, default_value_t = BitOrderArg::Natural)]
    pub bit_order: BitOrderArg,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a gate matrix.
    Gate(GateArgs),
    /// Print a state vector, optionally with its density matrix and tiles.
    State(StateArgs),
    /// Run the teleportation protocol for a chosen pair source.
    Teleport(TeleportArgs),
    /// Run the verification suite; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// Application constructions: stretching, levels, parallel fabrics,
    /// swapping, repeater chains, and secret-sharing sources.
    Apps(AppsArgs),
}

#[derive(Debug, Args)]
pub struct GateArgs {
    /// One of: i, x, y, z, h, s, t, swap, cnot, qft, sbeq, qfg, x4, hrot,
    /// u3, toffoli.
    pub name: String,

    /// Number of qubits (qft, sbeq, qfg, toffoli).
    #[arg(short = 'p', long)]
    pub qubits: Option<usize>,

    /// Gate degree (qfg).
    #[arg(short = 'd', long)]
    pub degree: Option<u32>,

    /// Quadrant 1..=4 (hrot).
    #[arg(short = 'q', long)]
    pub quadrant: Option<u8>,

    /// Angles in radians (u3).
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub phi: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// One of: fourier, bell, gamma, ghz.
    pub family: String,

    /// Number of qubits (fourier; default 2).
    #[arg(short = 'p', long)]
    pub qubits: Option<usize>,

    /// Degree (fourier).
    #[arg(short = 'd', long)]
    pub degree: Option<u32>,

    /// Phase bit (two-qubit families).
    #[arg(short = 'a', long)]
    pub phase_bit: Option<u8>,

    /// Parity bit (two-qubit families).
    #[arg(short = 'b', long)]
    pub parity_bit: Option<u8>,

    /// Size of the GHZ state.
    #[arg(short = 'n', long)]
    pub size: Option<usize>,

    /// Also print the density matrix.
    #[arg(long)]
    pub density: bool,

    /// Also print the nonzero-tile mask and its classification (two qubits).
    #[arg(long)]
    pub tiles: bool,
}

#[derive(Debug, Args)]
pub struct TeleportArgs {
    /// Pair source: maximal, nonmax, rough1, or rough3.
    #[arg(long)]
    pub source: String,

    /// Phase bit of the source label.
    #[arg(short = 'a', long, default_value_t = 0)]
    pub phase_bit: u8,

    /// Parity bit of the source label.
    #[arg(short = 'b', long, default_value_t = 0)]
    pub parity_bit: u8,

    /// Input state preset: 0, 1, +, -, r, or l.
    #[arg(long, default_value = "0")]
    pub psi: String,

    /// Arbitrary input amplitude for |0> (overrides --psi with --beta).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,

    /// Arbitrary input amplitude for |1>.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,

    /// Number of shots; omit for the analytic run only.
    #[arg(long)]
    pub shots: Option<u64>,

    /// Sampling seed; recorded in the output document.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Use the deferred-measurement protocol variant.
    #[arg(long)]
    pub simplified: bool,

    /// Also emit the six-scenario comparison table.
    #[arg(long)]
    pub table: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Scope: all, gates, states, teleport, or apps.
    #[arg(default_value = "all")]
    pub scope: String,

    /// Shots for the statistical convergence checks.
    #[arg(long, default_value_t = 100_000)]
    pub shots: u64,

    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct AppsArgs {
    #[command(subcommand)]
    pub command: AppsCommand,
}

#[derive(Debug, Subcommand)]
pub enum AppsCommand {
    /// Stretch a one-qubit seed gate across k qubits.
    Stretch {
        #[arg(short = 'k', long)]
        k: usize,
        /// Seed gate: h, x4, or u3 (with --theta/--phi/--lambda).
        #[arg(long, default_value = "h")]
        gate: String,
        #[arg(long, allow_negative_numbers = true)]
        theta: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        phi: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        lambda: Option<f64>,
    },
    /// Shift the seed gate's position at the input of a fixed-width gate.
    Level {
        #[arg(short = 'p', long)]
        qubits: usize,
        #[arg(long)]
        position: usize,
        #[arg(long, default_value = "h")]
        gate: String,
        #[arg(long, allow_negative_numbers = true)]
        theta: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        phi: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        lambda: Option<f64>,
    },
    /// Parallel entanglement: n Bell pairs from one gate, or two GHZ fans.
    Parallel {
        /// Number of independent Bell pairs.
        #[arg(short = 'n', long)]
        pairs: Option<usize>,
        /// Build two GHZ branches of this size (3 or 4) instead.
        #[arg(long)]
        ghz: Option<usize>,
        /// Verify the reduced-matrix independence claims.
        #[arg(long)]
        check: bool,
    },
    /// Entanglement swapping across two links.
    Swap {
        #[arg(long, default_value = "maximal")]
        source: String,
        /// independent (two sources) or fabric (one parallel-pair gate).
        #[arg(long, default_value = "independent")]
        variant: String,
    },
    /// Repeater chain by cascaded teleportation.
    Chain {
        #[arg(long)]
        hops: usize,
        #[arg(long, default_value = "maximal")]
        source: String,
        #[arg(long, default_value = "0")]
        psi: String,
        #[arg(long, default_value_t = 8192)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Secret-sharing source fabric: two independent GHZ triples.
    Qss,
    /// Simultaneous teleportation of several states over the parallel fabric.
    Hyper {
        /// Comma-separated input presets, e.g. `0,1,+`.
        #[arg(long, default_value = "0,1")]
        psis: String,
        #[arg(long, default_value_t = 8192)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A rendered command: the machine document, its pretty text, CSV when the
/// result is a distribution, and whether verification failed.
#[derive(Debug)]
pub struct CommandOutput {
    pub document: OutputDocument,
    pub pretty: String,
    pub csv: Option<String>,
    pub failed: bool,
}

impl CommandOutput {
    /// Renders in the requested format. CSV is only defined for commands
    /// whose primary result is a distribution.
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Pretty => Ok(self.pretty.clone()),
            Format::Json => Ok(self.document.to_json()),
            Format::Csv => self
                .csv
                .clone()
                .ok_or_else(|| Error::invalid("csv output is only defined for distributions")),
        }
    }
}

/// Executes a parsed command line.
pub fn execute(cli: &Cli) -> Result<CommandOutput> {
    let order = BitOrder::from(cli.bit_order);
    match &cli.command {
        Command::Gate(args) => cmd_gate(args, order),
        Command::State(args) => cmd_state(args, order),
        Command::Teleport(args) => cmd_teleport(args, order),
        Command::Verify(args) => cmd_verify(args, order),
        Command::Apps(args) => cmd_apps(args, order),
    }
}

fn provenance(order: BitOrder, seed: Option<u64>, shots: Option<u64>) -> Provenance {
    Provenance {
        seed,
        shots,
        bit_order: order.label().to_string(),
    }
}

fn require<T>(value: Option<T>, what: &str, gate: &str) -> Result<T> {
    value.ok_or_else(|| Error::invalid(format!("gate `{gate}` requires {what}")))
}

fn gate_spec_from_args(args: &GateArgs) -> Result<GateSpec> {
    let name = args.name.to_lowercase();
    Ok(match name.as_str() {
        "i" => GateSpec::I,
        "x" => GateSpec::X,
        "y" => GateSpec::Y,
        "z" => GateSpec::Z,
        "h" => GateSpec::H,
        "s" => GateSpec::S,
        "t" => GateSpec::T,
        "swap" => GateSpec::Swap,
        "cnot" => GateSpec::Cnot,
        "qft" => GateSpec::Qft {
            qubits: require(args.qubits, "-p <qubits>", &name)?,
        },
        "sbeq" => GateSpec::Sbeq {
            qubits: require(args.qubits, "-p <qubits>", &name)?,
        },
        "qfg" => GateSpec::Qfg {
            qubits: require(args.qubits, "-p <qubits>", &name)?,
            degree: require(args.degree, "-d <degree>", &name)?,
        },
        "x4" | "fourthrootx" | "fourth-root-x" => GateSpec::FourthRootX,
        "hrot" => GateSpec::HadamardRotation {
            quadrant: require(args.quadrant, "-q <quadrant>", &name)?,
        },
        "u3" => GateSpec::General {
            theta: require(args.theta, "--theta", &name)?,
            phi: require(args.phi, "--phi", &name)?,
            lambda: require(args.lambda, "--lambda", &name)?,
        },
        "toffoli" => GateSpec::Toffoli {
            qubits: require(args.qubits, "-p <qubits>", &name)?,
        },
        _ => {
            return Err(Error::UnknownGate {
                name: args.name.clone(),
            })
        }
    })
}

fn cmd_gate(args: &GateArgs, order: BitOrder) -> Result<CommandOutput> {
    let spec = gate_spec_from_args(args)?;
    let matrix = spec.matrix()?;

    let mut parameters = BTreeMap::new();
    parameters.insert("name".into(), json!(args.name.to_lowercase()));
    if let Some(p) = args.qubits {
        parameters.insert("qubits".into(), json!(p));
    }
    if let Some(d) = args.degree {
        parameters.insert("degree".into(), json!(d));
    }
    if let Some(q) = args.quadrant {
        parameters.insert("quadrant".into(), json!(q));
    }
    for (key, value) in [
        ("theta", args.theta),
        ("phi", args.phi),
        ("lambda", args.lambda),
    ] {
        if let Some(v) = value {
            parameters.insert(key.into(), json!(v));
        }
    }

    let results = json!({
        "matrix": matrix_json(&matrix),
        "unitarity_error": matrix.unitarity_error()?,
    });
    let pretty = format!(
        "gate {} ({}x{}):\n{}",
        args.name.to_lowercase(),
        matrix.rows(),
        matrix.cols(),
        format_matrix(&matrix)
    );
    Ok(CommandOutput {
        document: OutputDocument::new("gate", parameters, results, provenance(order, None, None)),
        pretty,
        csv: None,
        failed: false,
    })
}

fn label_from(args_a: Option<u8>, args_b: Option<u8>) -> Result<StateLabel> {
    StateLabel::from_bits(args_a.unwrap_or(0), args_b.unwrap_or(0))
}

fn cmd_state(args: &StateArgs, order: BitOrder) -> Result<CommandOutput> {
    let family = args.family.to_lowercase();
    let mut parameters = BTreeMap::new();
    parameters.insert("family".into(), json!(family));

    let state: StateVector = match family.as_str() {
        "fourier" => {
            let p = args.qubits.unwrap_or(2);
            let d = args
                .degree
                .ok_or_else(|| Error::invalid("fourier states need -d <degree>"))?;
            parameters.insert("qubits".into(), json!(p));
            parameters.insert("degree".into(), json!(d));
            if p == 2 {
                let label = label_from(args.phase_bit, args.parity_bit)?;
                parameters.insert("phase_bit".into(), json!(u8::from(label.a)));
                parameters.insert("parity_bit".into(), json!(u8::from(label.b)));
                fourier_state_2q(d, label)?
            } else {
                if args.phase_bit.is_some() || args.parity_bit.is_some() {
                    return Err(Error::invalid(
                        "phase/parity bits only apply to the two-qubit family",
                    ));
                }
                fourier_state(p, d)?
            }
        }
        "bell" => {
            let label = label_from(args.phase_bit, args.parity_bit)?;
            parameters.insert("phase_bit".into(), json!(u8::from(label.a)));
            parameters.insert("parity_bit".into(), json!(u8::from(label.b)));
            bell(label)
        }
        "gamma" => {
            let label = label_from(args.phase_bit, args.parity_bit)?;
            parameters.insert("phase_bit".into(), json!(u8::from(label.a)));
            parameters.insert("parity_bit".into(), json!(u8::from(label.b)));
            gamma(label)
        }
        "ghz" => {
            let n = args
                .size
                .ok_or_else(|| Error::invalid("ghz states need -n <size>"))?;
            parameters.insert("size".into(), json!(n));
            ghz(n)?
        }
        other => {
            return Err(Error::invalid(format!(
                "unknown state family `{other}`; expected fourier, bell, gamma, or ghz"
            )))
        }
    };

    let mut results = serde_json::Map::new();
    results.insert("state".into(), state_json(&state));
    let mut pretty = format!(
        "state ({} qubits):\n{}",
        state.num_qubits(),
        format_state(&state, order)
    );

    if args.density || args.tiles {
        let rho = density(&state)?;
        if args.density {
            results.insert("density".into(), matrix_json(rho.matrix()));
            pretty.push_str(&format!("density matrix:\n{}", format_matrix(rho.matrix())));
        }
        if args.tiles {
            let tiles = tile_pattern(&rho, TILE_TOLERANCE)?;
            let class = classify(&rho)?;
            results.insert(
                "tiles".into(),
                json!(tiles
                    .mask
                    .iter()
                    .map(|row| row.to_vec())
                    .collect::<Vec<_>>()),
            );
            results.insert("class".into(), json!(class.to_string()));
            pretty.push_str("tiles (nonzero entries):\n");
            for row in tiles.mask {
                let line: String = row.iter().map(|&b| if b { 'x' } else { '.' }).collect();
                pretty.push_str(&format!("  {line}\n"));
            }
            pretty.push_str(&format!("class: {class}\n"));
        }
    }

    Ok(CommandOutput {
        document: OutputDocument::new(
            "state",
            parameters,
            Value::Object(results),
            provenance(order, None, None),
        ),
        pretty,
        csv: None,
        failed: false,
    })
}

fn parse_source(name: &str, a: u8, b: u8) -> Result<PairSource> {
    let label = StateLabel::from_bits(a, b)?;
    match name.to_lowercase().as_str() {
        "maximal" | "max" => Ok(PairSource::Maximal(label)),
        "nonmax" | "non-maximal" | "nonmaximal" => Ok(PairSource::NonMaximal(label)),
        "rough1" | "rough" => Ok(PairSource::Rough(RoughDegree::One, label)),
        "rough3" => Ok(PairSource::Rough(RoughDegree::Three, label)),
        other => Err(Error::invalid(format!(
            "unknown source `{other}`; expected maximal, nonmax, rough1, or rough3"
        ))),
    }
}

fn parse_complex(text: &str) -> Result<Complex64> {
    text.trim().parse::<Complex64>().map_err(|_| {
        Error::invalid(format!(
            "`{text}` is not a complex number (try 0.6 or 0.6+0.8i)"
        ))
    })
}

fn parse_psi(psi: &str, alpha: &Option<String>, beta: &Option<String>) -> Result<PsiInput> {
    match (alpha, beta) {
        (None, None) => PsiInput::parse(psi),
        (Some(a), Some(b)) => {
            let alpha = parse_complex(a)?;
            let beta = parse_complex(b)?;
            let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
            if norm < 1e-12 {
                return Err(Error::invalid("alpha and beta cannot both be zero"));
            }
            Ok(PsiInput::Arbitrary {
                alpha: alpha / norm,
                beta: beta / norm,
            })
        }
        _ => Err(Error::invalid("--alpha and --beta must be given together")),
    }
}

fn cmd_teleport(args: &TeleportArgs, order: BitOrder) -> Result<CommandOutput> {
    let source = parse_source(&args.source, args.phase_bit, args.parity_bit)?;
    let psi = parse_psi(&args.psi, &args.alpha, &args.beta)?;
    let psi_state = psi.state()?;

    let mut parameters = BTreeMap::new();
    parameters.insert("source".into(), json!(source.name()));
    parameters.insert("psi".into(), json!(args.psi));
    if args.alpha.is_some() {
        parameters.insert("alpha".into(), output::complex_json(psi_state.amp(0)));
        parameters.insert("beta".into(), output::complex_json(psi_state.amp(1)));
    }
    parameters.insert("simplified".into(), json!(args.simplified));

    let report = teleport_analytic(&psi_state, &source)?;
    let verdict = match post_process(&report.bob_marginal) {
        Ok(bit) => json!(bit),
        Err(Error::AmbiguousOutcome) => json!("ambiguous"),
        Err(e) => return Err(e),
    };

    let mut results = serde_json::Map::new();
    results.insert("input".into(), state_json(&report.input));
    results.insert(
        "timeline".into(),
        json!({
            "t0": state_json(&report.timeline.t0),
            "t1": state_json(&report.timeline.t1),
            "t2": state_json(&report.timeline.t2),
            "t3": state_json(&report.timeline.t3),
        }),
    );
    results.insert(
        "branches".into(),
        Value::Array(
            report
                .branch_table
                .iter()
                .map(|b| {
                    json!({
                        "bsm": order.display(&b.bsm),
                        "probability": b.probability,
                        "bob": state_json(&b.bob),
                    })
                })
                .collect(),
        ),
    );
    results.insert(
        "bob_marginal".into(),
        distribution_json(&report.bob_marginal, BitOrder::Natural),
    );
    results.insert("post_process".into(), verdict.clone());

    let mut pretty = format!("teleport via {} of psi = {}\n", source.name(), args.psi);
    pretty.push_str("branch table (bsm outcome, probability, receiver state):\n");
    for b in &report.branch_table {
        pretty.push_str(&format!(
            "  {}  p = {:.6}  bob = {} , {}\n",
            order.display(&b.bsm),
            b.probability,
            output::format_complex(b.bob.amp(0)),
            output::format_complex(b.bob.amp(1)),
        ));
    }
    pretty.push_str("receiver marginal:\n");
    pretty.push_str(&format_distribution(
        &report.bob_marginal,
        BitOrder::Natural,
    ));
    pretty.push_str(&format!("post-processing verdict: {verdict}\n"));

    let mut csv = Some(distribution_csv(&report.bob_marginal, BitOrder::Natural));
    if let Some(shots) = args.shots {
        let hist = teleport_sampled(&psi_state, &source, shots, args.seed, args.simplified)?;
        results.insert("histogram".into(), distribution_json(&hist, order));
        pretty.push_str(&format!(
            "sampled histogram ({shots} shots, seed {}):\n",
            args.seed
        ));
        pretty.push_str(&format_distribution(&hist, order));
        csv = Some(distribution_csv(&hist, order));
    }

    if args.table {
        let rows = table10_report(args.shots.unwrap_or(8192), args.seed)?;
        results.insert(
            "comparison_table".into(),
            serde_json::to_value(&rows).unwrap(),
        );
        pretty.push_str(
            "comparison table (source, psi, theoretical, sampled, simulator ref, device ref):\n",
        );
        for row in &rows {
            pretty.push_str(&format!(
                "  {:<12} |{}>  theory {:.4}/{:.4}  sampled {:.4}/{:.4}  sim {:.4}/{:.4}  device {:.4}/{:.4}\n",
                row.source,
                row.psi,
                row.theoretical.p_zero,
                row.theoretical.p_one,
                row.sampled.p_zero,
                row.sampled.p_one,
                row.simulator_reference.p_zero,
                row.simulator_reference.p_one,
                row.lima_reference.p_zero,
                row.lima_reference.p_one,
            ));
        }
    }

    Ok(CommandOutput {
        document: OutputDocument::new(
            "teleport",
            parameters,
            Value::Object(results),
            provenance(order, Some(args.seed), args.shots),
        ),
        pretty,
        csv,
        failed: false,
    })
}

fn cmd_verify(args: &VerifyArgs, order: BitOrder) -> Result<CommandOutput> {
    let scope: Scope = args.scope.parse()?;
    let options = VerifyOptions {
        shots: args.shots,
        seed: args.seed,
    };
    let checks = verify::run(scope, &options)?;
    let passed = verify::all_passed(&checks);
    let failed_count = checks.iter().filter(|c| !c.passed).count();

    let mut parameters = BTreeMap::new();
    parameters.insert("scope".into(), json!(args.scope));
    parameters.insert("shots".into(), json!(args.shots));
    parameters.insert("seed".into(), json!(args.seed));

    let results = json!({
        "checks": serde_json::to_value(&checks).unwrap(),
        "passed": passed,
        "total": checks.len(),
        "failed": failed_count,
    });

    let mut pretty = String::new();
    for c in &checks {
        pretty.push_str(&format!(
            "[{}] {:<8} {:<62} deviation {:>10.3e}  tol {:>8.0e}\n",
            if c.passed { "pass" } else { "FAIL" },
            c.scope,
            c.name,
            c.deviation,
            c.tolerance,
        ));
    }
    pretty.push_str(&format!(
        "{} checks, {} failed\n",
        checks.len(),
        failed_count
    ));

    Ok(CommandOutput {
        document: OutputDocument::new(
            "verify",
            parameters,
            results,
            provenance(order, Some(args.seed), Some(args.shots)),
        ),
        pretty,
        csv: None,
        failed: !passed,
    })
}

fn seed_gate_from(
    name: &str,
    theta: Option<f64>,
    phi: Option<f64>,
    lambda: Option<f64>,
) -> Result<ComplexMatrix> {
    match name.to_lowercase().as_str() {
        "h" => Ok(crate::gates::hadamard()),
        "x4" | "fourthrootx" | "fourth-root-x" => Ok(crate::gates::fourth_root_x()),
        "u3" => {
            let (t, p, l) = match (theta, phi, lambda) {
                (Some(t), Some(p), Some(l)) => (t, p, l),
                _ => {
                    return Err(Error::invalid(
                        "u3 seed gate needs --theta, --phi, and --lambda",
                    ))
                }
            };
            Ok(crate::gates::general_unitary(t, p, l))
        }
        other => Err(Error::UnknownGate {
            name: other.to_string(),
        }),
    }
}

fn state_result(
    command: &str,
    parameters: BTreeMap<String, Value>,
    state: &StateVector,
    order: BitOrder,
) -> CommandOutput {
    let results = json!({ "state": state_json(state) });
    let pretty = format!(
        "{command} ({} qubits):\n{}",
        state.num_qubits(),
        format_state(state, order)
    );
    CommandOutput {
        document: OutputDocument::new(command, parameters, results, provenance(order, None, None)),
        pretty,
        csv: None,
        failed: false,
    }
}

fn cmd_apps(args: &AppsArgs, order: BitOrder) -> Result<CommandOutput> {
    match &args.command {
        AppsCommand::Stretch {
            k,
            gate,
            theta,
            phi,
            lambda,
        } => {
            let seed_gate = seed_gate_from(gate, *theta, *phi, *lambda)?;
            let state = stretch(&StretchSpec::new(*k, seed_gate)?)?;
            let mut parameters = BTreeMap::new();
            parameters.insert("k".into(), json!(k));
            parameters.insert("gate".into(), json!(gate));
            Ok(state_result("apps.stretch", parameters, &state, order))
        }
        AppsCommand::Level {
            qubits,
            position,
            gate,
            theta,
            phi,
            lambda,
        } => {
            let seed_gate = seed_gate_from(gate, *theta, *phi, *lambda)?;
            let state = level(&LevelSpec::new(*qubits, *position, seed_gate)?)?;
            let mut parameters = BTreeMap::new();
            parameters.insert("qubits".into(), json!(qubits));
            parameters.insert("position".into(), json!(position));
            parameters.insert("gate".into(), json!(gate));
            Ok(state_result("apps.level", parameters, &state, order))
        }
        AppsCommand::Parallel {
            pairs,
            ghz: ghz_branch,
            check,
        } => match (pairs, ghz_branch) {
            (Some(n), None) => {
                let (_, state) = parallel_pairs(*n)?;
                let mut parameters = BTreeMap::new();
                parameters.insert("pairs".into(), json!(n));
                let mut results = serde_json::Map::new();
                results.insert("state".into(), state_json(&state));
                let mut pretty = format!("parallel pairs (n = {n}, {} qubits)\n", 2 * n);
                if *check {
                    let rho = outer(&state)?;
                    let bell_dm = crate::states::fixtures::density_bell_00();
                    let mut pair_dev: f64 = 0.0;
                    for i in 0..*n {
                        pair_dev =
                            pair_dev.max(partial_trace(&rho, &[i, n + i])?.max_diff(&bell_dm)?);
                    }
                    let quarter = ComplexMatrix::identity(4).scale(Complex64::new(0.25, 0.0));
                    let mut cross_dev: f64 = 0.0;
                    for i in 0..*n {
                        for j in 0..*n {
                            if i != j {
                                for pair in [[i, j], [n + i, n + j], [i, n + j]] {
                                    cross_dev = cross_dev
                                        .max(partial_trace(&rho, &pair)?.max_diff(&quarter)?);
                                }
                            }
                        }
                    }
                    results.insert(
                        "check".into(),
                        json!({
                            "pair_deviation": pair_dev,
                            "cross_deviation": cross_dev,
                            "passed": pair_dev <= 1e-9 && cross_dev <= 1e-9,
                        }),
                    );
                    pretty.push_str(&format!(
                            "pair reduced matrices deviate by {pair_dev:.3e}; cross pairs by {cross_dev:.3e}\n"
                        ));
                } else {
                    pretty.push_str(&format_state(&state, order));
                }
                Ok(CommandOutput {
                    document: OutputDocument::new(
                        "apps.parallel",
                        parameters,
                        Value::Object(results),
                        provenance(order, None, None),
                    ),
                    pretty,
                    csv: None,
                    failed: false,
                })
            }
            (None, Some(branch)) => {
                let fabric = parallel_ghz(*branch)?;
                let mut parameters = BTreeMap::new();
                parameters.insert("ghz".into(), json!(branch));
                let results = json!({
                    "state": state_json(&fabric.state),
                    "upper": fabric.upper,
                    "lower": fabric.lower,
                });
                let pretty = format!(
                    "parallel GHZ fans (branch = {branch}); upper {:?}, lower {:?}\n",
                    fabric.upper, fabric.lower
                );
                Ok(CommandOutput {
                    document: OutputDocument::new(
                        "apps.parallel",
                        parameters,
                        results,
                        provenance(order, None, None),
                    ),
                    pretty,
                    csv: None,
                    failed: false,
                })
            }
            _ => Err(Error::invalid(
                "use exactly one of -n <pairs> or --ghz <branch>",
            )),
        },
        AppsCommand::Swap { source, variant } => {
            let source = parse_source(source, 0, 0)?;
            let variant = match variant.to_lowercase().as_str() {
                "independent" | "a" => SwapVariant::IndependentSources,
                "fabric" | "b" => SwapVariant::ParallelFabric,
                other => {
                    return Err(Error::invalid(format!(
                        "unknown swap variant `{other}`; expected independent or fabric"
                    )))
                }
            };
            let report = entanglement_swap(&source, variant)?;
            let mut parameters = BTreeMap::new();
            parameters.insert("source".into(), json!(source.name()));
            parameters.insert(
                "variant".into(),
                json!(match variant {
                    SwapVariant::IndependentSources => "independent",
                    SwapVariant::ParallelFabric => "fabric",
                }),
            );
            let results = json!({
                "branches": report
                    .branches
                    .iter()
                    .map(|b| {
                        json!({
                            "bsm": order.display(&b.bsm),
                            "probability": b.probability,
                            "joint": state_json(&b.joint),
                            "bell_fidelity": b.bell_fidelity,
                        })
                    })
                    .collect::<Vec<_>>(),
            });
            let mut pretty = format!("entanglement swap over {}:\n", source.name());
            for b in &report.branches {
                pretty.push_str(&format!(
                    "  bsm {}  p = {:.6}  fidelity to bell(00) = {:.9}\n",
                    order.display(&b.bsm),
                    b.probability,
                    b.bell_fidelity
                ));
            }
            Ok(CommandOutput {
                document: OutputDocument::new(
                    "apps.swap",
                    parameters,
                    results,
                    provenance(order, None, None),
                ),
                pretty,
                csv: None,
                failed: false,
            })
        }
        AppsCommand::Chain {
            hops,
            source,
            psi,
            shots,
            seed,
        } => {
            let source = parse_source(source, 0, 0)?;
            let psi_input = PsiInput::parse(psi)?;
            let report = repeater_chain(&psi_input.state()?, *hops, &source, *shots, *seed)?;
            let mut parameters = BTreeMap::new();
            parameters.insert("hops".into(), json!(hops));
            parameters.insert("source".into(), json!(source.name()));
            parameters.insert("psi".into(), json!(psi));
            let results = json!({
                "analytic_marginal": distribution_json(&report.analytic_marginal, BitOrder::Natural),
                "sampled_marginal": distribution_json(&report.sampled_marginal, BitOrder::Natural),
            });
            let mut pretty = format!(
                "repeater chain: {hops} hop(s) over {}, psi = {psi}\nanalytic marginal:\n",
                source.name()
            );
            pretty.push_str(&format_distribution(
                &report.analytic_marginal,
                BitOrder::Natural,
            ));
            pretty.push_str(&format!("sampled marginal ({shots} shots, seed {seed}):\n"));
            pretty.push_str(&format_distribution(
                &report.sampled_marginal,
                BitOrder::Natural,
            ));
            Ok(CommandOutput {
                document: OutputDocument::new(
                    "apps.chain",
                    parameters,
                    results,
                    provenance(order, Some(*seed), Some(*shots)),
                ),
                pretty,
                csv: Some(distribution_csv(
                    &report.analytic_marginal,
                    BitOrder::Natural,
                )),
                failed: false,
            })
        }
        AppsCommand::Hyper { psis, shots, seed } => {
            let states: Vec<StateVector> = psis
                .split(',')
                .map(|name| PsiInput::parse(name.trim())?.state())
                .collect::<Result<_>>()?;
            let report = hyper_teleport(&states, *shots, *seed)?;
            let mut parameters = BTreeMap::new();
            parameters.insert("psis".into(), json!(psis));
            parameters.insert("channels".into(), json!(report.channels));
            let results = json!({
                "analytic": report
                    .analytic
                    .iter()
                    .map(|d| distribution_json(d, BitOrder::Natural))
                    .collect::<Vec<_>>(),
                "sampled": report
                    .sampled
                    .iter()
                    .map(|d| distribution_json(d, BitOrder::Natural))
                    .collect::<Vec<_>>(),
            });
            let mut pretty = format!("hyper teleport of {} channels ({psis}):\n", report.channels);
            for (i, dist) in report.analytic.iter().enumerate() {
                pretty.push_str(&format!("channel {i} analytic marginal:\n"));
                pretty.push_str(&format_distribution(dist, BitOrder::Natural));
            }
            Ok(CommandOutput {
                document: OutputDocument::new(
                    "apps.hyper",
                    parameters,
                    results,
                    provenance(order, Some(*seed), Some(*shots)),
                ),
                pretty,
                csv: None,
                failed: false,
            })
        }
        AppsCommand::Qss => {
            let report = qss_sources()?;
            let parameters = BTreeMap::new();
            let results = json!({
                "state": state_json(&report.state),
                "upper": report.upper,
                "lower": report.lower,
                "max_cross_deviation": report.max_cross_deviation,
                "max_single_deviation": report.max_single_deviation,
            });
            let pretty = format!(
                "secret-sharing sources: two GHZ triples on qubits {:?} and {:?}\n\
                 cross-triple deviation from maximal mixing: {:.3e}\n\
                 single-qubit deviation from maximal mixing: {:.3e}\n",
                report.upper, report.lower, report.max_cross_deviation, report.max_single_deviation
            );
            Ok(CommandOutput {
                document: OutputDocument::new(
                    "apps.qss",
                    parameters,
                    results,
                    provenance(order, None, None),
                ),
                pretty,
                csv: None,
                failed: false,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(line: &[&str]) -> Result<CommandOutput> {
        let cli = Cli::try_parse_from(line).expect("arguments parse");
        execute(&cli)
    }

    #[test]
    fn gate_qfg_22_is_cnot() {
        let out = run(&[
            "qfsim", "gate", "qfg", "-p", "2", "-d", "2", "--format", "json",
        ])
        .unwrap();
        let doc = out.document;
        assert_eq!(doc.command, "gate");
        let m = doc.results["matrix"].as_array().unwrap();
        assert_eq!(m[2][3][0], 1.0);
        assert_eq!(m[3][2][0], 1.0);
        assert_eq!(m[2][2][0], 0.0);
    }

    #[test]
    fn gate_unknown_name_errors() {
        let err = run(&["qfsim", "gate", "nope"]);
        assert!(matches!(err, Err(Error::UnknownGate { .. })));
    }

    #[test]
    fn gate_qfg_requires_params() {
        let err = run(&["qfsim", "gate", "qfg", "-p", "2"]);
        assert!(err.is_err());
    }

    #[test]
    fn state_fourier_with_density_and_tiles() {
        let out = run(&[
            "qfsim",
            "state",
            "fourier",
            "-p",
            "2",
            "-d",
            "1",
            "-a",
            "0",
            "-b",
            "0",
            "--density",
            "--tiles",
        ])
        .unwrap();
        let results = &out.document.results;
        assert!(results.get("density").is_some());
        assert_eq!(results["class"], "rough-a");
    }

    #[test]
    fn state_ghz_four() {
        let out = run(&["qfsim", "state", "ghz", "-n", "4"]).unwrap();
        let amps = out.document.results["state"].as_array().unwrap();
        assert_eq!(amps.len(), 16);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((amps[0][0].as_f64().unwrap() - s).abs() < 1e-12);
        assert!((amps[15][0].as_f64().unwrap() - s).abs() < 1e-12);
    }

    #[test]
    fn teleport_analytic_only_has_no_histogram() {
        let out = run(&["qfsim", "teleport", "--source", "maximal", "--psi", "1"]).unwrap();
        assert!(out.document.results.get("histogram").is_none());
        let marginal = &out.document.results["bob_marginal"]["entries"];
        assert!((marginal["1"].as_f64().unwrap() - 1.0).abs() < 1e-9);
        assert_eq!(out.document.results["post_process"], json!(1));
    }

    #[test]
    fn teleport_with_shots_is_deterministic() {
        let line = [
            "qfsim", "--format", "json", "teleport", "--source", "rough1", "--psi", "0", "--shots",
            "512", "--seed", "7",
        ];
        let a = run(&line).unwrap().document.to_json();
        let b = run(&line).unwrap().document.to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn teleport_bit_order_flips_strings_not_numbers() {
        let base = run(&[
            "qfsim", "teleport", "--source", "maximal", "--psi", "1", "--shots", "256", "--seed",
            "3",
        ])
        .unwrap();
        let flipped = run(&[
            "qfsim",
            "--bit-order",
            "ibm",
            "teleport",
            "--source",
            "maximal",
            "--psi",
            "1",
            "--shots",
            "256",
            "--seed",
            "3",
        ])
        .unwrap();
        let b = base.document.results["histogram"]["entries"]
            .as_object()
            .unwrap();
        let f = flipped.document.results["histogram"]["entries"]
            .as_object()
            .unwrap();
        assert_eq!(b.len(), f.len());
        for (k, v) in b {
            let reversed: String = k.chars().rev().collect();
            assert_eq!(f.get(&reversed).unwrap(), v);
        }
    }

    #[test]
    fn verify_gates_scope_passes() {
        let out = run(&["qfsim", "verify", "gates"]).unwrap();
        assert!(!out.failed);
        assert_eq!(out.document.results["failed"], json!(0));
    }

    #[test]
    fn apps_stretch_ghz() {
        let out = run(&["qfsim", "apps", "stretch", "-k", "3", "--gate", "h"]).unwrap();
        let amps = out.document.results["state"].as_array().unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((amps[0][0].as_f64().unwrap() - s).abs() < 1e-9);
        assert!((amps[7][0].as_f64().unwrap() - s).abs() < 1e-9);
    }

    #[test]
    fn apps_parallel_check_passes() {
        let out = run(&["qfsim", "apps", "parallel", "-n", "4", "--check"]).unwrap();
        assert_eq!(out.document.results["check"]["passed"], json!(true));
    }

    #[test]
    fn apps_chain_maximal_preserves_one() {
        let out = run(&[
            "qfsim", "apps", "chain", "--hops", "2", "--source", "maximal", "--psi", "1",
            "--shots", "64",
        ])
        .unwrap();
        let marginal = &out.document.results["analytic_marginal"]["entries"];
        assert!((marginal["1"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn negative_amplitudes_and_angles_parse() {
        let out = run(&[
            "qfsim", "teleport", "--source", "maximal", "--alpha", "0.8", "--beta", "-0.6i",
        ])
        .unwrap();
        let marginal = &out.document.results["bob_marginal"]["entries"];
        assert!((marginal["0"].as_f64().unwrap() - 0.64).abs() < 1e-9);
        assert!((marginal["1"].as_f64().unwrap() - 0.36).abs() < 1e-9);

        let out = run(&[
            "qfsim",
            "gate",
            "u3",
            "--theta",
            "1.5707963267948966",
            "--phi",
            "-3.141592653589793",
            "--lambda",
            "0",
        ])
        .unwrap();
        assert_eq!(out.document.parameters["phi"], json!(-std::f64::consts::PI));
    }

    #[test]
    fn csv_only_for_distributions() {
        let out = run(&["qfsim", "gate", "h"]).unwrap();
        assert!(out.render(Format::Csv).is_err());
        let out = run(&[
            "qfsim", "teleport", "--source", "maximal", "--psi", "0", "--shots", "64",
        ])
        .unwrap();
        let csv = out.render(Format::Csv).unwrap();
        assert!(csv.starts_with("outcome,value\n"));
    }

    #[test]
    fn document_round_trips() {
        let out = run(&["qfsim", "state", "bell", "-a", "1", "-b", "1"]).unwrap();
        let text = out.document.to_json();
        let back = OutputDocument::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text);
    }
}
