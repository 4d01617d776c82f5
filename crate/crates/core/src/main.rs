//! Command-line surface: data generation, distance matrices, the
//! three-sample and homogeneity tests, clustering, bound tables, and the
//! clustering-error experiment runner.
//!
//! Data goes to standard output or files; progress and timing go to
//! standard error. Exit codes: 0 success, 1 usage error, 2 data or
//! computation error.

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use teledist::bounds::{theorem_bounds, BoundScenario, MixingBoundParams, VcDims};
use teledist::clustering::{average_linkage, farthest_point, threshold_clustering, Clustering};
use teledist::error::Error;
use teledist::experiment::{rows_to_csv, run_experiment_with, ClusterAlgorithm, ExperimentSpec};
use teledist::inference::{homogeneity_test, three_sample_test, DEFAULT_HOMOGENEITY_EXPONENT};
use teledist::io::{read_matrix_csv, write_matrix_csv_file, write_sample_csv, Manifest};
use teledist::synthgen::{generate_markov, generate_rotation, MarkovSpec, RotationProcessSpec};
use teledist::{
    distance_matrix, DepthPolicy, DistanceMatrix, Sample, SummandEstimator, SvmConfig,
    TelescopeConfig, WeightScheme,
};

#[derive(Parser)]
#[command(name = "teledist", version, about = "Telescope distance toolkit for time series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate synthetic samples from a JSON spec into CSV files plus a manifest.
    Gen(GenArgs),
    /// Compute the pairwise distance matrix for a manifest of samples.
    Dist(DistArgs),
    /// Cluster samples from a manifest or a precomputed distance matrix.
    Cluster(ClusterArgs),
    /// Attribute sample z to the nearer of samples x and y.
    Test3(Test3Args),
    /// Test whether two samples were generated by the same distribution.
    Homog(HomogArgs),
    /// Print tables of finite-sample error bounds over parameter grids.
    Bounds(BoundsArgs),
    /// Run the two-cluster rotation-process experiment sweep.
    Experiment(ExperimentArgs),
}

/// Estimator-related flags shared by the distance-consuming subcommands.
#[derive(Args, Clone)]
struct ConfigFlags {
    /// JSON file holding a full telescope configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Summand estimator back-end.
    #[arg(long, value_parser = ["oracle", "svm"])]
    estimator: Option<String>,
    /// Summand weight scheme.
    #[arg(long, value_parser = ["inv-square", "geometric"])]
    weights: Option<String>,
    /// Truncation depth policy: log, full, or fixed:<k>.
    #[arg(long)]
    depth: Option<String>,
    /// Estimator seed (the solver itself is deterministic).
    #[arg(long)]
    seed: Option<u64>,
}

impl ConfigFlags {
    fn resolve(&self) -> Result<TelescopeConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                serde_json::from_str::<TelescopeConfig>(&text)?
            }
            None => TelescopeConfig::default(),
        };
        match self.estimator.as_deref() {
            Some("oracle") => cfg.estimator = SummandEstimator::ExactTvOracle,
            Some("svm") => {
                if !matches!(cfg.estimator, SummandEstimator::KernelSvm { .. }) {
                    cfg.estimator = SummandEstimator::svm_default();
                }
            }
            _ => {}
        }
        if let Some(w) = self.weights.as_deref() {
            cfg.weights = match w {
                "inv-square" => WeightScheme::InverseSquare,
                _ => WeightScheme::Geometric,
            };
        }
        if let Some(d) = self.depth.as_deref() {
            cfg.depth = parse_depth(d)?;
        }
        if let Some(seed) = self.seed {
            if let SummandEstimator::KernelSvm { config } = &mut cfg.estimator {
                config.seed = seed;
            }
        }
        Ok(cfg)
    }
}

fn parse_depth(s: &str) -> Result<DepthPolicy, Error> {
    match s {
        "log" => Ok(DepthPolicy::LogLength),
        "full" => Ok(DepthPolicy::Full),
        other => match other.strip_prefix("fixed:") {
            Some(num) => {
                let depth: usize = num.parse().map_err(|_| Error::Malformed {
                    what: "depth flag".into(),
                    reason: format!("`{num}` is not a positive integer"),
                })?;
                DepthPolicy::fixed(depth)
            }
            None => Err(Error::Malformed {
                what: "depth flag".into(),
                reason: format!("`{other}` is not log, full, or fixed:<k>"),
            }),
        },
    }
}

#[derive(Args)]
struct GenArgs {
    /// Generator spec JSON (kind rotation or markov).
    #[arg(long)]
    spec: PathBuf,
    /// Directory receiving the CSV files and manifest.
    #[arg(long)]
    out_dir: PathBuf,
    /// Base seed; overrides the spec, drawn from entropy when both are absent.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct DistArgs {
    #[arg(long)]
    manifest: PathBuf,
    /// Output CSV path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    config: ConfigFlags,
}

#[derive(Args)]
struct ClusterArgs {
    /// Precomputed distance matrix CSV.
    #[arg(long, conflicts_with = "manifest")]
    matrix: Option<PathBuf>,
    /// Manifest of samples (the matrix is computed first).
    #[arg(long, required_unless_present = "matrix")]
    manifest: Option<PathBuf>,
    /// Number of clusters (known-count mode).
    #[arg(long, conflicts_with = "epsilon", required_unless_present = "epsilon",
          value_parser = clap::value_parser!(u64).range(1..))]
    k: Option<u64>,
    /// Distance threshold (unknown-count mode).
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long, value_enum, default_value = "average-linkage")]
    algorithm: AlgorithmFlag,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    config: ConfigFlags,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum AlgorithmFlag {
    AverageLinkage,
    FarthestPoint,
}

#[derive(Args)]
struct Test3Args {
    #[arg(long)]
    manifest: PathBuf,
    /// Id of the first reference sample.
    #[arg(long)]
    x: String,
    /// Id of the second reference sample.
    #[arg(long)]
    y: String,
    /// Id of the test sample.
    #[arg(long)]
    z: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    config: ConfigFlags,
}

#[derive(Args)]
struct HomogArgs {
    #[arg(long)]
    manifest: PathBuf,
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: String,
    /// Threshold exponent; the threshold is min-length^(-exponent).
    #[arg(long, default_value_t = DEFAULT_HOMOGENEITY_EXPONENT)]
    exponent: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    config: ConfigFlags,
}

#[derive(Args)]
struct BoundsArgs {
    /// Geometric mixing rate in (0,1).
    #[arg(long)]
    gamma: f64,
    /// VC growth: halfspaces or constant:<d>.
    #[arg(long, default_value = "halfspaces")]
    vc: String,
    /// One of: q, delta, homogeneity-type1, homogeneity-type2,
    /// clustering-known-k, clustering-unknown-k.
    #[arg(long)]
    scenario: String,
    /// Comma-separated epsilon grid.
    #[arg(long, value_delimiter = ',')]
    epsilon: Vec<f64>,
    /// Comma-separated sample-length grid.
    #[arg(long, value_delimiter = ',')]
    n: Vec<u64>,
    /// Comma-separated window-order grid (scenario q).
    #[arg(long, value_delimiter = ',')]
    k: Vec<usize>,
    /// Comma-separated separation grid (type2 / clustering scenarios).
    #[arg(long, value_delimiter = ',')]
    separation: Vec<f64>,
    /// Number of samples N (clustering scenarios).
    #[arg(long)]
    num_samples: Option<u64>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Experiment spec JSON; defaults apply for missing fields.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Output CSV path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Master seed; overrides the spec, drawn from entropy when both are absent.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    algorithm: Option<AlgorithmFlag>,
    /// Replace the spec's estimator with the oracle or the default SVM.
    #[arg(long, value_parser = ["oracle", "svm"])]
    estimator: Option<String>,
}

/// Generator spec file: one kind plus its parameters and a sample count.
#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum GenSpec {
    Rotation {
        #[serde(default = "one")]
        count: usize,
        alpha: f64,
        length: usize,
        #[serde(default)]
        mean0: f64,
        #[serde(default = "one_f64")]
        mean1: f64,
        #[serde(default = "quarter")]
        variance: f64,
        #[serde(default)]
        seed: Option<u64>,
    },
    Markov {
        #[serde(default = "one")]
        count: usize,
        transition: Vec<Vec<f64>>,
        initial: Vec<f64>,
        length: usize,
        #[serde(default)]
        seed: Option<u64>,
    },
}

fn one() -> usize {
    1
}
fn one_f64() -> f64 {
    1.0
}
fn quarter() -> f64 {
    0.25
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn entropy_seed() -> u64 {
    use std::time::{SystemTime, UNIX_EPOCH};
    let nanos = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_nanos()).unwrap_or(0);
    splitmix64(nanos as u64 ^ (std::process::id() as u64) << 32)
}

fn cmd_gen(args: &GenArgs) -> Result<(), Error> {
    let text = std::fs::read_to_string(&args.spec)?;
    let spec: GenSpec = serde_json::from_str(&text)?;
    std::fs::create_dir_all(&args.out_dir)?;

    let spec_seed = match &spec {
        GenSpec::Rotation { seed, .. } | GenSpec::Markov { seed, .. } => *seed,
    };
    let base_seed = match args.seed.or(spec_seed) {
        Some(s) => s,
        None => {
            let s = entropy_seed();
            eprintln!("seed: {s}");
            s
        }
    };

    let count = match &spec {
        GenSpec::Rotation { count, .. } | GenSpec::Markov { count, .. } => *count,
    };
    let mut manifest = Manifest::default();
    for i in 0..count {
        let seed = splitmix64(base_seed ^ splitmix64(i as u64 + 1));
        let (sample, meta) = match &spec {
            GenSpec::Rotation { alpha, length, mean0, mean1, variance, .. } => {
                let rspec = RotationProcessSpec {
                    alpha: *alpha,
                    length: *length,
                    mean0: *mean0,
                    mean1: *mean1,
                    variance: *variance,
                    seed,
                };
                let id = format!("rotation-{i:03}");
                let sample = generate_rotation(&rspec)?.with_id(&id);
                (sample, serde_json::to_value(&rspec)?)
            }
            GenSpec::Markov { transition, initial, length, .. } => {
                let mspec = MarkovSpec {
                    transition: transition.clone(),
                    initial: initial.clone(),
                    length: *length,
                    seed,
                };
                let id = format!("markov-{i:03}");
                let sample = generate_markov(&mspec)?.with_id(&id);
                (sample, serde_json::to_value(&mspec)?)
            }
        };
        let file = format!("{}.csv", sample.id());
        write_sample_csv(&args.out_dir.join(&file), &sample)?;
        std::fs::write(
            args.out_dir.join(format!("{}.meta.json", sample.id())),
            serde_json::to_string_pretty(&meta)?,
        )?;
        manifest.push(sample.id(), file, sample.alphabet().map(|a| a.to_vec()));
    }
    manifest.save(&args.out_dir.join("manifest.json"))?;
    eprintln!("wrote {count} samples to {}", args.out_dir.display());
    Ok(())
}

fn load_manifest_samples(path: &Path) -> Result<Vec<Sample>, Error> {
    let manifest = Manifest::load(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    manifest.load_samples(base)
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

fn cmd_dist(args: &DistArgs) -> Result<(), Error> {
    let cfg = args.config.resolve()?;
    let samples = load_manifest_samples(&args.manifest)?;
    let started = std::time::Instant::now();
    let dm = distance_matrix(&cfg, &samples)?;
    eprintln!("{}x{} matrix in {:.2}s", dm.len(), dm.len(), started.elapsed().as_secs_f64());
    match &args.out {
        Some(path) => write_matrix_csv_file(path, &dm)?,
        None => {
            let mut buf = Vec::new();
            teledist::io::write_matrix_csv(&mut buf, &dm)?;
            std::io::stdout().lock().write_all(&buf)?;
        }
    }
    Ok(())
}

fn cmd_cluster(args: &ClusterArgs) -> Result<(), Error> {
    let dm: DistanceMatrix = match (&args.matrix, &args.manifest) {
        (Some(path), _) => read_matrix_csv(path)?,
        (None, Some(manifest)) => {
            let cfg = args.config.resolve()?;
            distance_matrix(&cfg, &load_manifest_samples(manifest)?)?
        }
        (None, None) => unreachable!("clap enforces one source"),
    };
    let clustering: Clustering = match (args.k, args.epsilon) {
        (Some(k), None) => match args.algorithm {
            AlgorithmFlag::AverageLinkage => average_linkage(&dm, k as usize)?,
            AlgorithmFlag::FarthestPoint => farthest_point(&dm, k as usize)?,
        },
        (None, Some(eps)) => threshold_clustering(&dm, eps)?,
        _ => unreachable!("clap enforces exactly one of k/epsilon"),
    };
    let json = serde_json::to_string_pretty(&clustering)?;
    emit(&args.out, &format!("{json}\n"))
}

fn find_sample<'a>(samples: &'a [Sample], id: &str) -> Result<&'a Sample, Error> {
    samples.iter().find(|s| s.id() == id).ok_or_else(|| Error::UnknownSampleId(id.to_string()))
}

fn cmd_test3(args: &Test3Args) -> Result<(), Error> {
    let cfg = args.config.resolve()?;
    let samples = load_manifest_samples(&args.manifest)?;
    let verdict = three_sample_test(
        &cfg,
        find_sample(&samples, &args.x)?,
        find_sample(&samples, &args.y)?,
        find_sample(&samples, &args.z)?,
    )?;
    let json = serde_json::to_string_pretty(&verdict)?;
    emit(&args.out, &format!("{json}\n"))
}

fn cmd_homog(args: &HomogArgs) -> Result<(), Error> {
    let cfg = args.config.resolve()?;
    let samples = load_manifest_samples(&args.manifest)?;
    let verdict = homogeneity_test(
        &cfg,
        find_sample(&samples, &args.x)?,
        find_sample(&samples, &args.y)?,
        args.exponent,
    )?;
    let json = serde_json::to_string_pretty(&verdict)?;
    emit(&args.out, &format!("{json}\n"))
}

fn parse_vc(s: &str) -> Result<VcDims, Error> {
    match s {
        "halfspaces" => Ok(VcDims::Halfspaces),
        other => match other.strip_prefix("constant:") {
            Some(num) => {
                let value: u32 = num.parse().map_err(|_| Error::Malformed {
                    what: "vc flag".into(),
                    reason: format!("`{num}` is not a positive integer"),
                })?;
                Ok(VcDims::Constant { value })
            }
            None => Err(Error::Malformed {
                what: "vc flag".into(),
                reason: format!("`{other}` is not halfspaces or constant:<d>"),
            }),
        },
    }
}

fn cmd_bounds(args: &BoundsArgs) -> Result<(), Error> {
    let params = MixingBoundParams::new(args.gamma, parse_vc(&args.vc)?)?;
    let need = |name: &str, ok: bool| -> Result<(), Error> {
        if ok {
            Ok(())
        } else {
            Err(Error::Malformed {
                what: "bounds arguments".into(),
                reason: format!("scenario `{}` needs --{name}", args.scenario),
            })
        }
    };
    let mut out = String::new();
    match args.scenario.as_str() {
        "q" => {
            need("epsilon", !args.epsilon.is_empty())?;
            need("n", !args.n.is_empty())?;
            need("k", !args.k.is_empty())?;
            out.push_str("epsilon,n,k,bound\n");
            for &eps in &args.epsilon {
                for &n in &args.n {
                    for &k in &args.k {
                        let b = teledist::bounds::q_bound(&params, n, k, eps)?;
                        writeln!(out, "{eps:?},{n},{k},{b:?}").unwrap();
                    }
                }
            }
        }
        "delta" => {
            need("epsilon", !args.epsilon.is_empty())?;
            need("n", !args.n.is_empty())?;
            out.push_str("epsilon,n,bound\n");
            for &eps in &args.epsilon {
                for &n in &args.n {
                    let b = teledist::bounds::delta(&params, n, eps)?;
                    writeln!(out, "{eps:?},{n},{b:?}").unwrap();
                }
            }
        }
        "homogeneity-type1" => {
            need("epsilon", !args.epsilon.is_empty())?;
            need("n", !args.n.is_empty())?;
            out.push_str("epsilon,n,bound\n");
            for &eps in &args.epsilon {
                for &n in &args.n {
                    let b = theorem_bounds(&params, BoundScenario::HomogeneityType1 { epsilon: eps, n })?;
                    writeln!(out, "{eps:?},{n},{b:?}").unwrap();
                }
            }
        }
        "homogeneity-type2" => {
            need("epsilon", !args.epsilon.is_empty())?;
            need("separation", !args.separation.is_empty())?;
            need("n", !args.n.is_empty())?;
            out.push_str("epsilon,separation,n,bound\n");
            for &eps in &args.epsilon {
                for &sep in &args.separation {
                    for &n in &args.n {
                        let b = theorem_bounds(
                            &params,
                            BoundScenario::HomogeneityType2 { epsilon: eps, separation: sep, n },
                        )?;
                        writeln!(out, "{eps:?},{sep:?},{n},{b:?}").unwrap();
                    }
                }
            }
        }
        "clustering-known-k" => {
            need("separation", !args.separation.is_empty())?;
            need("n", !args.n.is_empty())?;
            let num = args.num_samples.ok_or_else(|| Error::Malformed {
                what: "bounds arguments".into(),
                reason: "scenario `clustering-known-k` needs --num-samples".into(),
            })?;
            out.push_str("separation,num_samples,n,bound\n");
            for &sep in &args.separation {
                for &n in &args.n {
                    let b = theorem_bounds(
                        &params,
                        BoundScenario::ClusteringKnownK { separation: sep, num_samples: num, n },
                    )?;
                    writeln!(out, "{sep:?},{num},{n},{b:?}").unwrap();
                }
            }
        }
        "clustering-unknown-k" => {
            need("epsilon", !args.epsilon.is_empty())?;
            need("separation", !args.separation.is_empty())?;
            need("n", !args.n.is_empty())?;
            let num = args.num_samples.ok_or_else(|| Error::Malformed {
                what: "bounds arguments".into(),
                reason: "scenario `clustering-unknown-k` needs --num-samples".into(),
            })?;
            out.push_str("epsilon,separation,num_samples,n,bound\n");
            for &eps in &args.epsilon {
                for &sep in &args.separation {
                    for &n in &args.n {
                        let b = theorem_bounds(
                            &params,
                            BoundScenario::ClusteringUnknownK {
                                epsilon: eps,
                                separation: sep,
                                num_samples: num,
                                n,
                            },
                        )?;
                        writeln!(out, "{eps:?},{sep:?},{num},{n},{b:?}").unwrap();
                    }
                }
            }
        }
        other => {
            return Err(Error::Malformed {
                what: "bounds arguments".into(),
                reason: format!("unknown scenario `{other}`"),
            })
        }
    }
    print!("{out}");
    Ok(())
}

fn cmd_experiment(args: &ExperimentArgs) -> Result<(), Error> {
    let mut spec: ExperimentSpec = match &args.spec {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            serde_json::from_str(&text)?
        }
        None => ExperimentSpec::default(),
    };
    if let Some(seed) = args.seed {
        spec.seed = seed;
    } else if args.spec.is_none() {
        spec.seed = entropy_seed();
        eprintln!("seed: {}", spec.seed);
    }
    if let Some(alg) = args.algorithm {
        spec.algorithm = match alg {
            AlgorithmFlag::AverageLinkage => ClusterAlgorithm::AverageLinkage,
            AlgorithmFlag::FarthestPoint => ClusterAlgorithm::FarthestPoint,
        };
    }
    match args.estimator.as_deref() {
        Some("oracle") => spec.telescope.estimator = SummandEstimator::ExactTvOracle,
        Some("svm") => {
            if !matches!(spec.telescope.estimator, SummandEstimator::KernelSvm { .. }) {
                spec.telescope.estimator = SummandEstimator::KernelSvm { config: SvmConfig::default() };
            }
        }
        _ => {}
    }

    let started = std::time::Instant::now();
    let rows = run_experiment_with(&spec, |length, run, err| {
        eprintln!(
            "[{:8.1}s] length {length} run {run}: error {err:.3}",
            started.elapsed().as_secs_f64()
        );
    })?;
    let csv = rows_to_csv(&rows);
    match &args.out {
        Some(path) => std::fs::write(path, csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Dist(args) => cmd_dist(args),
        Command::Cluster(args) => cmd_cluster(args),
        Command::Test3(args) => cmd_test3(args),
        Command::Homog(args) => cmd_homog(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Experiment(args) => cmd_experiment(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
