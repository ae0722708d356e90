use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::ThreadPool;
use tropix_core::metrics::Metric;
use tropix_core::persistence::{enclosing_radius, rips_barcode, Dimension};
use tropix_core::projection::{classical_mds, pca, ProjectionResult};
use tropix_core::stats::{fit_gaussian_with, DivergenceKind, VarianceEstimator};
use tropix_core::tropical::{compute_m, TropicalVector};
use tropix_core::{Barcode, RegularizedSpec};

use crate::demo::demo_nonlipschitz;
use crate::error::{Error, ParseError, Result};
use crate::format::{self, fmt_f64, label_for, FitTable, MatrixFormat, VectorTable};
use crate::manifest::RunManifest;
use crate::parallel;

#[derive(Debug, Parser)]
#[command(name = "tropix", version, about = "Tropical coordinates and statistics for persistence barcodes")]
pub struct Cli {
    /// Write the result to this file instead of standard output.
    #[arg(short, long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,

    /// Also write a gnuplot script next to the output file (FILE.gp).
    #[arg(long, global = true)]
    pub emit_gnuplot: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vietoris-Rips persistence barcode of a distance matrix.
    Ph(PhArgs),
    /// Tropical coordinates of barcode files under one shared (n, m).
    Vectorize(VectorizeArgs),
    /// Pairwise bottleneck or Wasserstein distances between barcode files.
    Dist(DistArgs),
    /// Classical multidimensional scaling of a distance matrix.
    Mds(MatrixArgs),
    /// Principal component analysis of tropical vectors.
    Pca(VectorFiles),
    /// Gaussian fit to the coordinates of each tropical vector.
    Fit(FitArgs),
    /// Pairwise divergences between fitted models.
    Divergence(DivergenceArgs),
    /// Table contrasting a non-Lipschitz polynomial feature with tropical coordinates.
    DemoNonlipschitz(DemoArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    /// Pick by extension: .phy/.phylip are PHYLIP, anything else CSV.
    Auto,
    Csv,
    Phylip,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    pub matrix: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct PhArgs {
    #[command(flatten)]
    pub input: MatrixArgs,
    /// Homology dimension.
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub dim: u8,
    /// Largest filtration grade (default: the enclosing radius).
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Death assigned to classes still alive at the threshold (default: the threshold).
    #[arg(long)]
    pub cap: Option<f64>,
}

#[derive(Debug, Args)]
pub struct BarcodeFiles {
    #[arg(required = true)]
    pub barcodes: Vec<PathBuf>,
    /// Death used for `inf` entries in barcode files.
    #[arg(long)]
    pub cap: Option<f64>,
}

#[derive(Debug, Args)]
pub struct VectorizeArgs {
    #[command(flatten)]
    pub input: BarcodeFiles,
    /// Maximum bar count (default: the largest barcode).
    #[arg(long)]
    pub n: Option<usize>,
    /// Regularization constant (default: the smallest admissible value, at least 1).
    #[arg(long)]
    pub m: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Bottleneck,
    Wasserstein,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[command(flatten)]
    pub input: BarcodeFiles,
    #[arg(long, value_enum, default_value_t = MetricArg::Bottleneck)]
    pub metric: MetricArg,
    /// Wasserstein exponent (default 2).
    #[arg(long)]
    pub p: Option<f64>,
}

#[derive(Debug, Args)]
pub struct VectorFiles {
    #[arg(required = true)]
    pub vectors: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub input: VectorFiles,
    /// Fit the square roots of the coordinates.
    #[arg(long)]
    pub sqrt: bool,
    /// Divide the variance by n instead of n - 1.
    #[arg(long)]
    pub mle: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Kld,
    KldStar,
    Hellinger,
}

#[derive(Debug, Args)]
pub struct DivergenceArgs {
    #[arg(required = true)]
    pub fits: Vec<PathBuf>,
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// With kld-star, report 1 - KLD instead of 1 - exp(-KLD).
    #[arg(long)]
    pub caption_form: bool,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    /// Bar offsets to sweep.
    #[arg(long, value_delimiter = ',', default_value = "0,1,10,100")]
    pub x: Vec<f64>,
}

/// A rendered result: the data file and an optional plotting script.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub gnuplot: Option<String>,
    pub warnings: Vec<String>,
}

/// Parses `args`, runs the command and returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli).and_then(|out| emit(&cli, &out)) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("tropix: {err}");
            err.exit_code()
        }
    }
}

fn emit(cli: &Cli, out: &Output) -> Result<()> {
    for w in &out.warnings {
        eprintln!("tropix: warning: {w}");
    }
    match &cli.output {
        Some(path) => {
            write_file(path, &out.text)?;
            if let Some(script) = &out.gnuplot {
                write_file(&gnuplot_path(path), script)?;
            }
            Ok(())
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(out.text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|source| Error::Io { path: PathBuf::from("<stdout>"), source })
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io { path: path.to_owned(), source })
}

pub fn gnuplot_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".gp");
    PathBuf::from(name)
}

/// Runs a parsed command without touching standard output.
pub fn execute(cli: &Cli) -> Result<Output> {
    if cli.emit_gnuplot && cli.output.is_none() {
        return Err(Error::Usage("--emit-gnuplot needs --output".into()));
    }
    let pool = parallel::thread_pool(parallel::configured_threads()?)?;
    let (text, plot, warnings) = match &cli.command {
        Command::Ph(args) => ph(args)?,
        Command::Vectorize(args) => vectorize(args, &pool)?,
        Command::Dist(args) => dist(args, &pool)?,
        Command::Mds(args) => mds(args)?,
        Command::Pca(args) => pca_command(args)?,
        Command::Fit(args) => fit(args)?,
        Command::Divergence(args) => divergence_command(args, &pool)?,
        Command::DemoNonlipschitz(args) => demo(args)?,
    };
    let gnuplot = match (cli.emit_gnuplot, &cli.output) {
        (true, Some(path)) => {
            let plot = plot.ok_or_else(|| Error::Usage("this command has no gnuplot view".into()))?;
            let data = path.file_name().map_or_else(|| path.to_string_lossy(), |n| n.to_string_lossy());
            Some(plot.script(&data))
        }
        _ => None,
    };
    Ok(Output { text, gnuplot, warnings })
}

type Rendered = (String, Option<Plot>, Vec<String>);

fn read_input(path: &Path, manifest: &mut RunManifest) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|source| Error::Io { path: path.to_owned(), source })?;
    let origin = path.display().to_string();
    manifest.add_input(&origin, &bytes);
    String::from_utf8(bytes).map_err(|e| {
        let line = 1 + e.as_bytes()[..e.utf8_error().valid_up_to()].iter().filter(|&&b| b == b'\n').count();
        ParseError::new(&origin, line, 1, "file is not valid UTF-8").into()
    })
}

fn matrix_format(args: &MatrixArgs) -> MatrixFormat {
    match args.format {
        FormatArg::Auto => MatrixFormat::from_extension(&args.matrix),
        FormatArg::Csv => MatrixFormat::Csv,
        FormatArg::Phylip => MatrixFormat::Phylip,
    }
}

fn load_matrix(args: &MatrixArgs, manifest: &mut RunManifest) -> Result<tropix_core::DistanceMatrix> {
    let text = read_input(&args.matrix, manifest)?;
    let format = matrix_format(args);
    manifest.set("format", if format == MatrixFormat::Csv { "csv" } else { "phylip" });
    format::parse_matrix(&text, &args.matrix.display().to_string(), format)
}

fn ph(args: &PhArgs) -> Result<Rendered> {
    let mut manifest = RunManifest::new("ph");
    let dm = load_matrix(&args.input, &mut manifest)?;
    let (threshold, source) = match args.threshold {
        Some(t) => (t, "user"),
        None => (enclosing_radius(&dm), "enclosing_radius"),
    };
    let cap = args.cap.unwrap_or(threshold);
    let dim = if args.dim == 0 { Dimension::Zero } else { Dimension::One };
    let barcode = rips_barcode(&dm, dim, threshold, cap)?;
    let essential = barcode.iter().filter(|bar| bar.x + bar.d == cap).count();
    manifest.set("dim", args.dim.to_string());
    manifest.set("points", dm.size().to_string());
    manifest.set_f64("threshold", threshold);
    manifest.set("threshold_source", source);
    manifest.set_f64("cap", cap);
    manifest.set("bars_at_cap", essential.to_string());
    Ok((format::write_barcode(&barcode, &manifest), Some(Plot::Diagram), Vec::new()))
}

fn load_barcodes(input: &BarcodeFiles, manifest: &mut RunManifest) -> Result<(Vec<String>, Vec<Barcode>)> {
    if let Some(cap) = input.cap {
        manifest.set_f64("cap", cap);
    }
    let mut labels = Vec::new();
    let mut barcodes = Vec::new();
    for path in &input.barcodes {
        let text = read_input(path, manifest)?;
        barcodes.push(format::parse_barcode(&text, &path.display().to_string(), input.cap)?);
        labels.push(label_for(path));
    }
    manifest.set("labels", labels.join(","));
    Ok((labels, barcodes))
}

fn vectorize(args: &VectorizeArgs, pool: &ThreadPool) -> Result<Rendered> {
    let mut manifest = RunManifest::new("vectorize");
    let (labels, barcodes) = load_barcodes(&args.input, &mut manifest)?;
    let n = args.n.unwrap_or_else(|| barcodes.iter().map(Barcode::len).max().unwrap_or(0));
    let m = args.m.unwrap_or_else(|| compute_m(&barcodes));
    manifest.set("m_source", if args.m.is_some() { "user" } else { "dataset" });
    let spec = RegularizedSpec::new(n, m)?;
    if let Some(k) = barcodes.iter().position(|b| !b.validate(&spec)) {
        return Err(Error::OutsideSpec { path: args.input.barcodes[k].display().to_string(), n, m });
    }
    let vectors = parallel::tropicalize_all(pool, &barcodes, &spec)?;
    let table = VectorTable { labels, spec, vectors };
    Ok((format::write_vectors(&table, &manifest), None, Vec::new()))
}

fn dist(args: &DistArgs, pool: &ThreadPool) -> Result<Rendered> {
    let mut manifest = RunManifest::new("dist");
    let metric = match (args.metric, args.p) {
        (MetricArg::Bottleneck, None) => Metric::Bottleneck,
        (MetricArg::Bottleneck, Some(_)) => return Err(Error::Usage("--p applies to --metric wasserstein".into())),
        (MetricArg::Wasserstein, p) => Metric::Wasserstein(p.unwrap_or(2.0)),
    };
    match metric {
        Metric::Bottleneck => manifest.set("metric", "bottleneck"),
        Metric::Wasserstein(p) => {
            manifest.set("metric", "wasserstein");
            manifest.set_f64("p", p);
        }
    }
    metric.check().map_err(|e| Error::Usage(e.to_string()))?;
    let (_, barcodes) = load_barcodes(&args.input, &mut manifest)?;
    let dm = parallel::pairwise_matrix(pool, &barcodes, metric)?;
    Ok((format::write_matrix(dm.size(), dm.entries(), &manifest), Some(Plot::Matrix), Vec::new()))
}

fn record_projection(manifest: &mut RunManifest, result: &ProjectionResult) -> Vec<String> {
    manifest.set("explained", format!("{},{}", fmt_f64(result.explained[0]), fmt_f64(result.explained[1])));
    match result.clipped_eigenvalue {
        Some(v) => {
            manifest.set_f64("clipped_eigenvalue", v);
            vec![format!("input is not Euclidean; negative eigenvalue {} clipped to 0", fmt_f64(v))]
        }
        None => Vec::new(),
    }
}

fn write_projection(header: &str, labels: &[String], result: &ProjectionResult, manifest: &RunManifest) -> String {
    let mut out = manifest.header();
    out.push_str(header);
    out.push('\n');
    for (label, [a, b]) in labels.iter().zip(&result.coordinates) {
        out.push_str(&format!("{label},{},{}\n", fmt_f64(*a), fmt_f64(*b)));
    }
    out
}

fn mds(args: &MatrixArgs) -> Result<Rendered> {
    let mut manifest = RunManifest::new("mds");
    let dm = load_matrix(args, &mut manifest)?;
    let result = classical_mds(&dm)?;
    let warnings = record_projection(&mut manifest, &result);
    let labels: Vec<String> = (0..dm.size()).map(|i| i.to_string()).collect();
    Ok((write_projection("point,x,y", &labels, &result, &manifest), Some(Plot::Scatter), warnings))
}

fn load_vectors(files: &VectorFiles, manifest: &mut RunManifest) -> Result<(Vec<String>, Vec<TropicalVector>)> {
    let mut merged: Option<(String, VectorTable)> = None;
    for path in &files.vectors {
        let origin = path.display().to_string();
        let table = format::parse_vectors(&read_input(path, manifest)?, &origin)?;
        match &mut merged {
            None => merged = Some((origin, table)),
            Some((first, acc)) => {
                if acc.spec.n_max != table.spec.n_max || acc.spec.m.to_bits() != table.spec.m.to_bits() {
                    return Err(Error::SpecMismatch {
                        first: first.clone(),
                        other: origin,
                        n_first: acc.spec.n_max,
                        m_first: acc.spec.m,
                        n_other: table.spec.n_max,
                        m_other: table.spec.m,
                    });
                }
                acc.labels.extend(table.labels);
                acc.vectors.extend(table.vectors);
            }
        }
    }
    let (_, table) = merged.expect("clap requires at least one file");
    manifest.set("n", table.spec.n_max.to_string());
    manifest.set_f64("m", table.spec.m);
    Ok((table.labels, table.vectors))
}

fn pca_command(args: &VectorFiles) -> Result<Rendered> {
    let mut manifest = RunManifest::new("pca");
    let (labels, vectors) = load_vectors(args, &mut manifest)?;
    let result = pca(&vectors)?;
    let warnings = record_projection(&mut manifest, &result);
    Ok((write_projection("label,pc1,pc2", &labels, &result, &manifest), Some(Plot::Scatter), warnings))
}

fn fit(args: &FitArgs) -> Result<Rendered> {
    let mut manifest = RunManifest::new("fit");
    let (labels, vectors) = load_vectors(&args.input, &mut manifest)?;
    let estimator = if args.mle { VarianceEstimator::MaximumLikelihood } else { VarianceEstimator::Unbiased };
    manifest.set("sqrt", args.sqrt.to_string());
    manifest.set("variance", if args.mle { "mle" } else { "unbiased" });
    manifest.set("model", "iid_normal_over_coordinates");
    let models = labels
        .iter()
        .zip(&vectors)
        .map(|(label, v)| {
            fit_gaussian_with(v.values(), args.sqrt, estimator)
                .map_err(|source| Error::Fit { label: label.clone(), source })
        })
        .collect::<Result<Vec<_>>>()?;
    let table = FitTable { labels, models };
    Ok((format::write_fits(&table, &manifest), None, Vec::new()))
}

fn divergence_command(args: &DivergenceArgs, pool: &ThreadPool) -> Result<Rendered> {
    let mut manifest = RunManifest::new("divergence");
    let kind = match (args.kind, args.caption_form) {
        (KindArg::Kld, false) => DivergenceKind::Kld,
        (KindArg::KldStar, false) => DivergenceKind::KldStar,
        (KindArg::KldStar, true) => DivergenceKind::KldLinear,
        (KindArg::Hellinger, false) => DivergenceKind::Hellinger,
        (_, true) => return Err(Error::Usage("--caption-form applies to --kind kld-star".into())),
    };
    manifest.set(
        "kind",
        match kind {
            DivergenceKind::Kld => "kld",
            DivergenceKind::KldStar => "kld-star",
            DivergenceKind::KldLinear => "kld-linear",
            DivergenceKind::Hellinger => "hellinger-squared",
        },
    );
    let mut fits = FitTable { labels: Vec::new(), models: Vec::new() };
    for path in &args.fits {
        let table = format::parse_fits(&read_input(path, &mut manifest)?, &path.display().to_string())?;
        fits.labels.extend(table.labels);
        fits.models.extend(table.models);
    }
    manifest.set("labels", fits.labels.join(","));
    let sim = parallel::similarity_matrix(pool, &fits.models, kind)?;
    Ok((format::write_matrix(sim.size(), sim.entries(), &manifest), Some(Plot::Matrix), Vec::new()))
}

fn demo(args: &DemoArgs) -> Result<Rendered> {
    let mut manifest = RunManifest::new("demo-nonlipschitz");
    let table = demo_nonlipschitz(&args.x)?;
    manifest.set_f64("m", table.m);
    manifest.set("n", "1");
    if let Some(e) = table.tropical_exponent() {
        manifest.set_f64("tropical_exponent", e);
    }
    if let Some(e) = table.p21_exponent() {
        manifest.set_f64("p21_exponent", e);
    }
    let mut out = manifest.header();
    out.push_str("x,p21_diff,bottleneck,tropical_diff\n");
    for r in &table.rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(r.x),
            fmt_f64(r.p21_diff),
            fmt_f64(r.bottleneck),
            fmt_f64(r.tropical_diff)
        ));
    }
    Ok((out, Some(Plot::Demo), Vec::new()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Plot {
    Diagram,
    Matrix,
    Scatter,
    Demo,
}

impl Plot {
    fn script(self, data: &str) -> String {
        let body = match self {
            Plot::Diagram => format!(
                "set xlabel 'birth'\nset ylabel 'death'\nset size square\n\
                 plot '{data}' using 1:2 with points pt 7 title 'bars', x with lines lc rgb 'gray' title 'diagonal'\n"
            ),
            Plot::Matrix => format!(
                "set datafile separator ','\nset yrange [] reverse\nset size square\n\
                 plot '{data}' matrix with image notitle\n"
            ),
            Plot::Scatter => format!(
                "set datafile separator ','\nset size square\n\
                 plot '{data}' every ::1 using 2:3 with points pt 7 notitle\n"
            ),
            Plot::Demo => format!(
                "set datafile separator ','\nset logscale y\nset xlabel 'x'\n\
                 plot '{data}' every ::1 using 1:2 with linespoints title 'p21 difference', \\\n     \
                 '{data}' every ::1 using 1:4 with linespoints title 'tropical difference'\n"
            ),
        };
        format!("# gnuplot script for {data}\n{body}")
    }
}
