//! Command-line front end. `run` parses, dispatches and renders; the binary
//! only forwards the exit code.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cone_kernels::model_kernel;
use crate::error::{Error, Result};
use crate::indicial::{check_hypothesis_0notindroot, indicial_set, IndicialSet};
use crate::riesz::{
    riesz_interval, sobolev_report, AuditStatus, Injectivity, RieszReport, SharpInterval,
    TopologyInput,
};
use crate::spectral_data::{circle_preset, load_cross_section, sphere_preset, CrossSection};
use crate::torsion::{
    assemble_log_det_expansion, check_lemma_conditions, check_modified_witt,
    check_no_resonance_sufficient, spectral_convergence_demo, DegenerationLedger,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;

const DEFAULT_JMAX: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "conic",
    version,
    about = "Spectral analysis on asymptotically conic manifolds"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Source {
    /// `sphere:n[:jmax]` or `circle:L[:jmax]`
    #[arg(long, conflicts_with = "input")]
    pub preset: Option<String>,
    /// Cross-section JSON document
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Topology {
    #[arg(long, default_value_t = 0)]
    pub kernel_dim: u64,
    #[arg(long)]
    pub kernel_decay: Option<f64>,
    #[arg(long, default_value = "unknown")]
    pub e_injective_low: Injectivity,
    #[arg(long, default_value = "unknown")]
    pub e_injective_high: Injectivity,
    /// Order of the metric perturbation at infinity (default: exact cone)
    #[arg(long)]
    pub n0: Option<f64>,
}

impl Topology {
    fn input(&self) -> TopologyInput {
        TopologyInput {
            e_injective_low: self.e_injective_low,
            e_injective_high: self.e_injective_high,
            kernel_dim: self.kernel_dim,
            kernel_decay: self.kernel_decay,
            n0: self.n0,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Indicial roots of the b-Hodge Laplacian in degree q
    Indicial {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        q: i64,
        /// List every root of modulus at most this (default n/2 + 6)
        #[arg(long)]
        radius: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// L^p interval of the Riesz transform in degree q
    Riesz {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        q: i64,
        #[command(flatten)]
        topology: Topology,
        #[command(flatten)]
        output: Output,
    },
    /// Model resolvent kernel summed over indicial modes
    Kernel {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        q: i64,
        #[arg(long)]
        kappa: f64,
        #[arg(long)]
        kappa_prime: f64,
        #[arg(long, default_value_t = 6.0)]
        radius: f64,
        #[arg(long, default_value_t = 1e-3)]
        tolerance: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Torsion ledger and degeneration checks
    Torsion {
        #[command(subcommand)]
        action: TorsionCommand,
    },
    /// Sobolev exponents 2n/(n+2), 2n/(n-2) with an optional audit
    Sobolev {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        q: Option<i64>,
        #[command(flatten)]
        topology: Topology,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Subcommand)]
pub enum TorsionCommand {
    /// Expand log det and log T of the degenerating family from a ledger
    Assemble {
        /// Ledger JSON document
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Eigenvalue convergence of the three-dimensional glued family
    Demo {
        /// Cone slope over the round S²
        #[arg(long, default_value_t = 0.8)]
        a: f64,
        #[arg(long, value_delimiter = ',', default_value = "0.2,0.1,0.05,0.025")]
        epsilons: Vec<f64>,
        #[arg(long, default_value_t = 5)]
        count: usize,
        /// Coarse-grid cells of the limit solve
        #[arg(long, default_value_t = 200)]
        cells: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Modified Witt, no-resonance and small-eigenvalue conditions
    Conditions {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
}

/// Result of one invocation: exit code plus what goes to stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn parse_preset(spec: &str) -> Result<CrossSection> {
    let parts: Vec<&str> = spec.split(':').collect();
    let jmax = match parts.get(2) {
        None => DEFAULT_JMAX,
        Some(j) => j
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad jmax in preset {spec:?}")))?,
    };
    if parts.len() > 3 || parts.len() < 2 {
        return Err(Error::InvalidInput(format!(
            "preset {spec:?}: expected sphere:n[:jmax] or circle:L[:jmax]"
        )));
    }
    match parts[0] {
        "sphere" => {
            let n = parts[1]
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad n in preset {spec:?}")))?;
            sphere_preset(n, jmax)
        }
        "circle" => {
            let l = parts[1]
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad length in preset {spec:?}")))?;
            circle_preset(l, jmax)
        }
        other => Err(Error::InvalidInput(format!("unknown preset {other:?}"))),
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

impl Source {
    fn load(&self) -> Result<CrossSection> {
        match (&self.preset, &self.input) {
            (Some(p), None) => parse_preset(p),
            (None, Some(path)) => load_cross_section(&read(path)?),
            _ => Err(Error::InvalidInput(
                "give exactly one of --preset or --input".into(),
            )),
        }
    }

    fn given(&self) -> bool {
        self.preset.is_some() || self.input.is_some()
    }

    fn describe(&self) -> Value {
        match (&self.preset, &self.input) {
            (Some(p), _) => json!({"preset": p}),
            (_, Some(path)) => json!({"input": path.display().to_string()}),
            _ => Value::Null,
        }
    }
}

/// Truncation level of each degree's eigenvalue lists.
fn truncations(cs: &CrossSection) -> Value {
    let map: serde_json::Map<String, Value> = cs
        .spectra()
        .iter()
        .map(|(p, fs)| {
            let t = fs
                .truncation
                .as_ref()
                .map_or("inf".to_string(), crate::surd::rational_string);
            (p.to_string(), json!(t))
        })
        .collect();
    Value::Object(map)
}

struct Report {
    body: String,
    hypothesis_failed: bool,
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn indicial_csv(set: &IndicialSet) -> String {
    let mut s = String::from("family,sign,alpha2,harmonic,multiplicity,value,exact\n");
    for r in &set.roots {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            r.family,
            r.sign,
            crate::surd::rational_string(&r.alpha2),
            r.harmonic,
            r.multiplicity,
            r.value_f64(),
            csv_field(&r.value().exact_string())
        );
    }
    s
}

fn run_indicial(source: &Source, q: i64, radius: Option<f64>, format: Format) -> Result<Report> {
    let cs = source.load()?;
    let radius = radius.unwrap_or(cs.manifold_dim() as f64 / 2.0 + 6.0);
    let set = indicial_set(&cs, q, radius)?;
    let hyp = check_hypothesis_0notindroot(&cs, q)?;
    let body = match format {
        Format::Json => json_text(&json!({
            "command": "indicial",
            "source": source.describe(),
            "radius": radius,
            "truncation": truncations(&cs),
            "indicial_set": set.to_json(),
            "nu0": {"value": hyp.nu0.to_f64(), "exact": hyp.nu0.exact_string()},
            "hypothesis_0_not_indicial": hyp.to_json(),
        })),
        Format::Csv => indicial_csv(&set),
        Format::Text => {
            let mut s = format!("n = {}, q = {q}, radius = {radius}\n", set.n);
            for f in crate::indicial::Family::ALL {
                let vals: Vec<String> = set
                    .family_values(f)
                    .iter()
                    .map(|v| v.exact_string())
                    .collect();
                let _ = writeln!(s, "{f}: {{{}}}", vals.join(", "));
            }
            let _ = writeln!(s, "nu0 = {}", hyp.nu0);
            let _ = writeln!(s, "0 not an indicial root: {}", hyp.pass());
            s
        }
    };
    Ok(Report {
        body,
        hypothesis_failed: !hyp.pass(),
    })
}

fn riesz_text(r: &RieszReport) -> String {
    let mut s = format!("n = {}, q = {}\nnu0 = {}\n", r.n, r.q, r.nu0);
    if let Some(ix) = &r.indices {
        let show = |v: &crate::riesz::NuIndex| v.to_json().to_string();
        let _ = writeln!(s, "nu_d = {}", show(&ix.nu_d));
        let _ = writeln!(s, "nu_delta = {}", show(&ix.nu_delta));
        let _ = writeln!(s, "nu_D = {}", show(&ix.nu_big_d));
    }
    if let Some(k) = &r.nu_ker {
        let _ = writeln!(s, "nu_ker = {}", k.value);
    }
    match &r.sharp_interval {
        SharpInterval::Certified(i) => {
            let _ = writeln!(
                s,
                "case {}: bounded exactly for p in ({}, {})",
                r.case.map_or("?".to_string(), |c| c.to_string()),
                i.lower.exact_string(),
                i.upper.exact_string()
            );
        }
        SharpInterval::NotCertified { reason, candidates } => {
            let _ = writeln!(s, "sharp interval not certified: {reason}");
            for (label, i) in candidates {
                let _ = writeln!(
                    s,
                    "  {label}: ({}, {})",
                    i.lower.exact_string(),
                    i.upper.exact_string()
                );
            }
        }
    }
    for a in &r.assumptions {
        let _ = writeln!(s, "[{}] {}: {}", a.status.as_str(), a.name, a.detail);
    }
    s
}

fn riesz_csv(r: &RieszReport) -> String {
    let mut s = String::from("field,exact,decimal\n");
    let mut row = |k: &str, exact: String, dec: f64| {
        let _ = writeln!(s, "{k},{},{dec}", csv_field(&exact));
    };
    row("nu0", r.nu0.exact_string(), r.nu0.to_f64());
    if let Some(k) = &r.nu_ker {
        row("nu_ker", k.value.exact_string(), k.value.to_f64());
    }
    let interval = match &r.sharp_interval {
        SharpInterval::Certified(i) => Some(i),
        SharpInterval::NotCertified { .. } => None,
    };
    if let Some(i) = interval.or(r.sufficient_interval.as_ref()) {
        let label = if interval.is_some() {
            "sharp"
        } else {
            "sufficient"
        };
        row(
            &format!("{label}_lower"),
            i.lower.exact_string(),
            i.lower.to_f64(),
        );
        row(
            &format!("{label}_upper"),
            i.upper.exact_string(),
            i.upper.to_f64(),
        );
    }
    s
}

fn run_riesz(source: &Source, q: i64, topo: &Topology, format: Format) -> Result<Report> {
    let cs = source.load()?;
    let r = riesz_interval(&cs, q, &topo.input())?;
    let failed =
        r.hypothesis_failed() || r.assumptions.iter().any(|a| a.status == AuditStatus::Fail);
    let body = match format {
        Format::Json => {
            let mut v = r.to_json();
            v["command"] = json!("riesz");
            v["source"] = source.describe();
            v["truncation"] = truncations(&cs);
            v["topology"] = json!({
                "kernel_dim": topo.kernel_dim,
                "kernel_decay": topo.kernel_decay,
                "e_injective_low": topo.e_injective_low.as_str(),
                "e_injective_high": topo.e_injective_high.as_str(),
                "n0": topo.n0,
            });
            json_text(&v)
        }
        Format::Text => riesz_text(&r),
        Format::Csv => riesz_csv(&r),
    };
    Ok(Report {
        body,
        hypothesis_failed: failed,
    })
}

#[allow(clippy::too_many_arguments)]
fn run_kernel(
    source: &Source,
    q: i64,
    kappa: f64,
    kappa_prime: f64,
    radius: f64,
    tolerance: f64,
    format: Format,
) -> Result<Report> {
    let cs = source.load()?;
    let k = model_kernel(&cs, q, kappa, kappa_prime, radius, tolerance)?;
    let body = match format {
        Format::Json => {
            let mut v = k.to_json();
            v["command"] = json!("kernel");
            v["source"] = source.describe();
            v["truncation"] = truncations(&cs);
            v["q"] = json!(q);
            json_text(&v)
        }
        Format::Csv => {
            let mut s = String::from("nu,nu_exact,rank,g,contribution\n");
            for m in &k.modes {
                let _ = writeln!(
                    s,
                    "{},{},{},{:e},{:e}",
                    m.nu,
                    csv_field(&m.nu_exact),
                    m.rank,
                    m.g,
                    m.contribution
                );
            }
            s
        }
        Format::Text => format!(
            "sum over {} modes up to radius {radius}: {:.15e}\ntail bound {:.3e} (+ estimate {:.3e}), tolerance {tolerance:e}\n",
            k.modes.len(),
            k.value,
            k.tail_bound_next,
            k.tail_estimate_beyond
        ),
    };
    Ok(Report {
        body,
        hypothesis_failed: false,
    })
}

fn run_sobolev(
    n: usize,
    source: &Source,
    q: Option<i64>,
    topo: &Topology,
    format: Format,
) -> Result<Report> {
    let cs = if source.given() {
        Some(source.load()?)
    } else {
        None
    };
    let data = match (&cs, q) {
        (Some(cs), Some(q)) => Some((cs, q)),
        (None, None) => None,
        _ => {
            return Err(Error::InvalidInput(
                "the audit needs both a cross-section and --q".into(),
            ))
        }
    };
    let ti = topo.input();
    let r = sobolev_report(n, data.map(|(cs, q)| (cs, q, &ti)))?;
    let failed = r.audit.iter().any(|a| a.status == AuditStatus::Fail);
    let body = match format {
        Format::Json => {
            let mut v = r.to_json();
            v["command"] = json!("sobolev");
            json_text(&v)
        }
        Format::Csv => format!(
            "field,exact,decimal\np,{},{}\np_conjugate,{},{}\n",
            crate::surd::rational_string(&r.p),
            crate::surd::to_f64(&r.p),
            crate::surd::rational_string(&r.p_conjugate),
            crate::surd::to_f64(&r.p_conjugate)
        ),
        Format::Text => {
            let mut s = format!(
                "p = {} = {}\np' = {} = {}\n",
                crate::surd::rational_string(&r.p),
                crate::surd::to_f64(&r.p),
                crate::surd::rational_string(&r.p_conjugate),
                crate::surd::to_f64(&r.p_conjugate)
            );
            for a in &r.audit {
                let _ = writeln!(s, "[{}] {}: {}", a.status.as_str(), a.name, a.detail);
            }
            s
        }
    };
    Ok(Report {
        body,
        hypothesis_failed: failed,
    })
}

fn run_assemble(input: &PathBuf, epsilon: f64, format: Format) -> Result<Report> {
    let ledger = DegenerationLedger::from_json(&read(input)?)?;
    let e = assemble_log_det_expansion(&ledger, epsilon)?;
    let body = match format {
        Format::Json => {
            let mut v = e.to_json();
            v["command"] = json!("torsion assemble");
            json_text(&v)
        }
        Format::Csv => {
            let mut s = String::from(
                "q,N_q,log_epsilon_term,small_eig_term,log_det_omega0,log_det_m,log_det\n",
            );
            for d in &e.degrees {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    d.q,
                    d.n_small,
                    d.log_epsilon_term,
                    d.small_eig_term,
                    d.log_det_omega0,
                    d.log_det_m,
                    d.log_det
                );
            }
            s
        }
        Format::Text => format!(
            "log T(Omega_eps) = {} log eps + {} + {} + {} = {}\nepsilon independent: {}\n",
            e.log_epsilon_coefficient,
            e.small_eig_contribution,
            e.log_t_omega0,
            e.log_t_m,
            e.log_t,
            e.epsilon_independent
        ),
    };
    Ok(Report {
        body,
        hypothesis_failed: false,
    })
}

fn run_demo(
    a: f64,
    epsilons: &[f64],
    count: usize,
    cells: usize,
    format: Format,
) -> Result<Report> {
    let t = spectral_convergence_demo(a, epsilons, count, cells)?;
    // with a = 1 the family does not move, so there is nothing to decrease
    let failed = a < 1.0 && !t.all_monotone();
    let body = match format {
        Format::Csv => t.to_csv(),
        Format::Json => {
            let mut v = t.to_json();
            v["command"] = json!("torsion demo");
            json_text(&v)
        }
        Format::Text => {
            let mut s = format!("a = {a}, epsilons = {epsilons:?}\n");
            for tr in &t.tracked {
                let _ = writeln!(
                    s,
                    "l = {}, k = {}: lambda_0 = {:.9}, distances {:?}, monotone {}",
                    tr.l, tr.index, tr.limit.value, tr.distances, tr.monotone
                );
            }
            s
        }
    };
    Ok(Report {
        body,
        hypothesis_failed: failed,
    })
}

fn run_conditions(source: &Source, format: Format) -> Result<Report> {
    let cs = source.load()?;
    let n = cs.manifold_dim();
    let witt = check_modified_witt(&cs)?;
    let lemma = check_lemma_conditions(&cs)?;
    let resonance = (0..=n as i64)
        .map(|q| check_no_resonance_sufficient(&cs, q))
        .collect::<Result<Vec<_>>>()?;
    let body = match format {
        Format::Json => json_text(&json!({
            "command": "torsion conditions",
            "source": source.describe(),
            "truncation": truncations(&cs),
            "n": n,
            "modified_witt": witt.to_json(),
            "lemma_conditions": lemma.to_json(),
            "no_resonance": resonance.iter().enumerate().map(|(q, c)| {
                let mut v = c.to_json();
                v["q"] = json!(q);
                v
            }).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("check,holds,detail\n");
            let _ = writeln!(
                s,
                "modified_witt,{},{}",
                witt.holds,
                csv_field(&witt.detail)
            );
            for c in [&lemma.cohomology, &lemma.middle_gap, &lemma.exact_gap] {
                let _ = writeln!(
                    s,
                    "{},{},{}",
                    csv_field(&c.name),
                    c.holds,
                    csv_field(&c.detail)
                );
            }
            for (q, c) in resonance.iter().enumerate() {
                let _ = writeln!(s, "no_resonance_q{q},{},{}", c.holds, csv_field(&c.detail));
            }
            s
        }
        Format::Text => {
            let mut s = format!("modified Witt: {} ({})\n", witt.holds, witt.detail);
            let _ = writeln!(s, "lemma condition a: {}", lemma.condition_a());
            let _ = writeln!(s, "lemma condition b: {}", lemma.condition_b());
            for (q, c) in resonance.iter().enumerate() {
                let _ = writeln!(s, "q = {q}: no resonance guaranteed {}", c.holds);
            }
            s
        }
    };
    Ok(Report {
        body,
        hypothesis_failed: !witt.holds,
    })
}

fn dispatch(cmd: &Command) -> Result<(Report, Option<PathBuf>)> {
    Ok(match cmd {
        Command::Indicial {
            source,
            q,
            radius,
            output,
        } => (
            run_indicial(source, *q, *radius, output.format)?,
            output.out.clone(),
        ),
        Command::Riesz {
            source,
            q,
            topology,
            output,
        } => (
            run_riesz(source, *q, topology, output.format)?,
            output.out.clone(),
        ),
        Command::Kernel {
            source,
            q,
            kappa,
            kappa_prime,
            radius,
            tolerance,
            output,
        } => (
            run_kernel(
                source,
                *q,
                *kappa,
                *kappa_prime,
                *radius,
                *tolerance,
                output.format,
            )?,
            output.out.clone(),
        ),
        Command::Sobolev {
            n,
            source,
            q,
            topology,
            output,
        } => (
            run_sobolev(*n, source, *q, topology, output.format)?,
            output.out.clone(),
        ),
        Command::Torsion { action } => match action {
            TorsionCommand::Assemble {
                input,
                epsilon,
                output,
            } => (
                run_assemble(input, *epsilon, output.format)?,
                output.out.clone(),
            ),
            TorsionCommand::Demo {
                a,
                epsilons,
                count,
                cells,
                format,
                out,
            } => (
                run_demo(*a, epsilons, *count, *cells, *format)?,
                out.clone(),
            ),
            TorsionCommand::Conditions { source, output } => {
                (run_conditions(source, output.format)?, output.out.clone())
            }
        },
    })
}

/// Execute an already-parsed configuration.
pub fn run(config: &RunConfig) -> Outcome {
    match dispatch(&config.command) {
        Ok((report, out)) => {
            let code = if report.hypothesis_failed {
                EXIT_HYPOTHESIS
            } else {
                EXIT_OK
            };
            match out {
                None => Outcome {
                    code,
                    stdout: report.body,
                    stderr: String::new(),
                },
                Some(path) => match std::fs::write(&path, &report.body) {
                    Ok(()) => Outcome {
                        code,
                        stdout: String::new(),
                        stderr: String::new(),
                    },
                    Err(e) => Outcome {
                        code: EXIT_INPUT,
                        stdout: String::new(),
                        stderr: format!("error: cannot write {}: {e}\n", path.display()),
                    },
                },
            }
        }
        Err(e) => Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Parse `args` (program name first) and run.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config),
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            if code == EXIT_OK {
                // --help and --version
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Outcome {
        run_args(std::iter::once("conic").chain(args.iter().copied()))
    }

    #[test]
    fn presets_parse() {
        assert_eq!(parse_preset("sphere:4").unwrap().manifold_dim(), 4);
        assert_eq!(parse_preset("sphere:5:10").unwrap().manifold_dim(), 5);
        assert_eq!(
            parse_preset("circle:6.283185307179586")
                .unwrap()
                .manifold_dim(),
            2
        );
        assert!(parse_preset("torus:3").is_err());
        assert!(parse_preset("sphere").is_err());
        assert!(parse_preset("sphere:x").is_err());
    }

    #[test]
    fn sobolev_in_three_dimensions() {
        let o = run(&["sobolev", "--n", "3", "--format", "text"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("p = 6/5 = 1.2"));
        assert!(o.stdout.contains("p' = 6 = 6"));
    }

    #[test]
    fn both_sources_rejected() {
        let o = run(&["indicial", "--q", "0"]);
        assert_eq!(o.code, EXIT_INPUT);
        let o = run(&[
            "indicial", "--preset", "sphere:4", "--input", "x.json", "--q", "0",
        ]);
        assert_eq!(o.code, EXIT_INPUT);
    }

    #[test]
    fn out_of_range_degree_is_input_error() {
        let o = run(&["riesz", "--preset", "sphere:4", "--q", "7"]);
        assert_eq!(o.code, EXIT_INPUT);
        assert!(o.stderr.contains("outside"));
    }
}
