//! `factorlab`: run the verification suites, the sector spectrum, and eigenvalue surfaces.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use factorlab::geometry::FibrationSpec;
use factorlab::kk_verify::{
    verify_anticommutator, verify_connection_suite, verify_curvature_obstruction, verify_factorization, verify_garding,
    verify_local_positivity, verify_torus, Backend, GardingConfig, LocalizingElement, Mutation, NumericConfig,
    PositivityConfig, VerificationReport,
};
use factorlab::operators::{cluster, eigen_family, spectrum, GridSpec, ModeSet, NodePlacement, SectorSpectrum};
use factorlab::symcalc::TrigLaurentFun;
use factorlab::theta_deform::sphere_relations_check;
use serde::Serialize;

use output::{emit, sci12, to_json, CliError, JsonReport};

#[derive(Debug, Parser)]
#[command(name = "factorlab", version, about = "Verify the tensor-sum factorization of the Dirac operator on the theta-deformed 4-sphere")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one verification suite and write its JSON report.
    Verify {
        suite: Suite,
        #[command(flatten)]
        common: Common,
        /// Backend for the factorization suite.
        #[arg(long, value_enum, default_value = "both")]
        backend: BackendArg,
        /// Support box `phi_min,phi_max,psi_min,psi_max` of the localizing element.
        #[arg(long, value_parser = parse_support)]
        support: Option<LocalizingElement>,
        /// Deliberate coefficient perturbation, for control runs.
        #[arg(long, value_enum, default_value = "none")]
        mutation: MutationArg,
        /// Random trials (connection, positivity) or cases (torus).
        #[arg(long)]
        trials: Option<usize>,
        /// Fibration for the curvature suite; all three by default.
        #[arg(long, value_enum)]
        spec: Option<SpecArg>,
    },
    /// Lowest singular values of the assembled sphere operator per mode sector.
    Spectrum {
        #[command(flatten)]
        common: Common,
        /// Values requested per sector.
        #[arg(long, default_value_t = 4)]
        lowest: usize,
    },
    /// Emit figure data.
    Emit {
        #[arg(value_enum)]
        what: EmitKind,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Deformation parameter theta_12.
    #[arg(long, default_value_t = 0.237, allow_negative_numbers = true)]
    theta: f64,
    /// Grid size per base direction (at least 4).
    #[arg(long)]
    grid: Option<usize>,
    /// Mode radius.
    #[arg(long)]
    modes: Option<u32>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit `timing_ms` so repeated runs are byte-identical.
    #[arg(long)]
    no_timestamp: bool,
}

impl Common {
    fn validate(&self) -> Result<(), CliError> {
        if !self.theta.is_finite() {
            return Err(CliError::Usage(format!("--theta must be finite, got {}", self.theta)));
        }
        if let Some(g) = self.grid {
            if g < 4 {
                return Err(CliError::Usage(format!("--grid must be at least 4, got {g}")));
            }
        }
        Ok(())
    }

    fn timing(&self, start: Instant) -> Option<u64> {
        (!self.no_timestamp).then(|| start.elapsed().as_millis() as u64)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Suite {
    Factorization,
    Connection,
    Anticommutator,
    Positivity,
    Garding,
    Curvature,
    Torus,
    SphereRelations,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BackendArg {
    Symbolic,
    Numeric,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MutationArg {
    None,
    DropBaseCorrection,
    ShiftPsiConnection,
    DropSecondVertical,
    DropMeanCurvature,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SpecArg {
    Sphere,
    TwistedFlat,
    Exact,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EmitKind {
    EigenSurfaces,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Symbolic => Backend::Symbolic,
            BackendArg::Numeric => Backend::Numeric,
            BackendArg::Both => Backend::Both,
        }
    }
}

impl From<MutationArg> for Mutation {
    fn from(m: MutationArg) -> Self {
        match m {
            MutationArg::None => Mutation::None,
            MutationArg::DropBaseCorrection => Mutation::DropBaseCorrection,
            MutationArg::ShiftPsiConnection => Mutation::ShiftPsiConnection,
            MutationArg::DropSecondVertical => Mutation::DropSecondVertical,
            MutationArg::DropMeanCurvature => Mutation::DropMeanCurvature,
        }
    }
}

impl SpecArg {
    fn build(self) -> FibrationSpec<f64> {
        match self {
            SpecArg::Sphere => FibrationSpec::sphere(),
            SpecArg::TwistedFlat => FibrationSpec::twisted_flat(),
            SpecArg::Exact => FibrationSpec::sphere_with_exact_connection([TrigLaurentFun::sin_psi(), TrigLaurentFun::trig(1, 1, 0, 0)]),
        }
    }
}

fn parse_support(s: &str) -> Result<LocalizingElement, String> {
    let v: Vec<f64> = s.split(',').map(|x| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"))).collect::<Result<_, _>>()?;
    let [a, b, c, d] = v[..] else {
        return Err(format!("expected four comma-separated numbers, got {}", v.len()));
    };
    LocalizingElement::new((a, b), (c, d)).map_err(|e| e.to_string())
}

fn run_verify(
    suite: Suite,
    c: &Common,
    backend: Backend,
    support: Option<LocalizingElement>,
    mutation: Mutation,
    trials: Option<usize>,
    spec: Option<SpecArg>,
) -> Result<VerificationReport, CliError> {
    let x = support.unwrap_or_else(LocalizingElement::standard);
    let usage = |e: factorlab::kk_verify::VerifyError| CliError::Usage(e.to_string());
    let report = match suite {
        Suite::Factorization => {
            let cfg = NumericConfig { grids: vec![c.grid.unwrap_or(16)], radii: vec![c.modes.unwrap_or(2)], placement: NodePlacement::Uniform };
            verify_factorization(backend, &cfg, mutation)
        }
        Suite::Connection => verify_connection_suite(trials.unwrap_or(100), c.seed, mutation),
        Suite::Anticommutator => verify_anticommutator(mutation),
        Suite::Positivity => {
            let cfg = PositivityConfig { grid: c.grid.unwrap_or(32), radius: c.modes.unwrap_or(3), trials: trials.unwrap_or(100), seed: c.seed };
            verify_local_positivity(&x, &cfg, mutation).map_err(usage)?
        }
        Suite::Garding => {
            let g = c.grid.unwrap_or(16);
            let cfg = GardingConfig { grids: vec![g, 2 * g, 4 * g], radius: c.modes.unwrap_or(2), family: 12, seed: c.seed };
            verify_garding(&x, &cfg, mutation)
        }
        Suite::Curvature => {
            let specs = spec.map_or_else(|| vec![SpecArg::Sphere, SpecArg::TwistedFlat, SpecArg::Exact], |s| vec![s]);
            let mut merged = VerificationReport::new("curvature").param("mutation", mutation.name());
            for s in specs {
                let r = verify_curvature_obstruction(&s.build(), mutation);
                let name = r.params["spec"].clone();
                for (k, v) in &r.params {
                    if k != "spec" && k != "mutation" {
                        merged.params.insert(format!("{name}.{k}"), v.clone());
                    }
                }
                for mut check in r.checks {
                    check.name = format!("{name}: {}", check.name);
                    merged.push(check);
                }
            }
            merged
        }
        Suite::Torus => verify_torus(c.theta, trials.unwrap_or(1000), c.seed),
        Suite::SphereRelations => sphere_relations_check(c.theta, &ModeSet::radius(c.modes.unwrap_or(3))),
    };
    Ok(report)
}

#[derive(Serialize)]
struct SpectrumReport {
    suite: &'static str,
    params: std::collections::BTreeMap<String, String>,
    sectors: Vec<SectorSpectrum>,
    lowest_cluster: Option<factorlab::operators::Cluster>,
    clusters: Vec<factorlab::operators::Cluster>,
    timing_ms: Option<u64>,
}

fn run_spectrum(c: &Common, lowest: usize) -> Result<String, CliError> {
    let start = Instant::now();
    let (n, r) = (c.grid.unwrap_or(64), c.modes.unwrap_or(2));
    let sectors = spectrum(&GridSpec::square(n), &ModeSet::radius(r), lowest).map_err(|e| CliError::Usage(e.to_string()))?;
    let values: Vec<f64> = sectors.iter().flat_map(|s| s.lowest.iter().copied()).collect();
    let clusters = cluster(&values, 0.05);
    let params = [("grid", n.to_string()), ("modes", r.to_string()), ("lowest", lowest.to_string()), ("cluster_gap", "0.05".into())]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    let report = SpectrumReport {
        suite: "spectrum",
        params,
        lowest_cluster: clusters.first().cloned(),
        clusters,
        sectors,
        timing_ms: c.timing(start),
    };
    Ok(to_json(&report))
}

/// `n1,n2,phi,psi,lambda` over `0 ≤ n1, n2 ≤ modes` and every grid node.
fn eigen_surfaces(c: &Common) -> String {
    let (n, r) = (c.grid.unwrap_or(64), c.modes.unwrap_or(3) as i32);
    let nodes = GridSpec::square(n).nodes();
    let mut out = String::from("n1,n2,phi,psi,lambda\n");
    for n1 in 0..=r {
        for n2 in 0..=r {
            let f = eigen_family(n1, n2);
            for &(p, s) in &nodes {
                out.push_str(&format!("{n1},{n2},{},{},{}\n", sci12(p), sci12(s), sci12(f.lambda(p, s))));
            }
        }
    }
    out
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Verify { suite, common, backend, support, mutation, trials, spec } => {
            common.validate()?;
            let start = Instant::now();
            let report = run_verify(suite, &common, backend.into(), support, mutation.into(), trials, spec)?;
            let json = JsonReport::from_report(&report, common.timing(start));
            emit(common.out.as_deref(), &to_json(&json))?;
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Spectrum { common, lowest } => {
            common.validate()?;
            if lowest == 0 {
                return Err(CliError::Usage("--lowest must be positive".into()));
            }
            emit(common.out.as_deref(), &run_spectrum(&common, lowest)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Emit { what: EmitKind::EigenSurfaces, common } => {
            common.validate()?;
            emit(common.out.as_deref(), &eigen_surfaces(&common))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("factorlab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
