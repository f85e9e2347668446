use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lpca::expfam::Family;
use lpca::fit::{self, FitConfig};
use lpca::ingest::{self, CellDomain, ResponseTable};
use lpca::irt;
use lpca::model_io::ModelFile;
use lpca::synth::{self, GeneratorSpec};
use lpca::viz::{self, ColorMode, MapInput, PlotSpec};
use lpca::{LpcaError, ModelParams, Result};

#[derive(Parser)]
#[command(name = "lpca", version, about = "Logistic PCA for assessment response data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Bernoulli,
    Gaussian,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Bernoulli => Family::Bernoulli,
            FamilyArg::Gaussian => Family::Gaussian,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Fit a model to a response CSV.
    Fit {
        input: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[arg(long, default_value_t = 4.0)]
        m: f64,
        #[arg(long, default_value_t = 500)]
        max_iter: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FamilyArg::Bernoulli)]
        family: FamilyArg,
        #[arg(long, default_value = "model.json")]
        out: PathBuf,
    },
    /// Render a score map or loadings chart as SVG.
    Plot {
        model: PathBuf,
        input: PathBuf,
        /// proficiency | descriptor:NAME | category:COL | loadings
        #[arg(long, default_value = "proficiency")]
        map: String,
        /// Components, 1-based, e.g. `1,2`.
        #[arg(long, default_value = "1,2")]
        pc: String,
        #[arg(long, default_value = "plot.svg")]
        out: PathBuf,
        /// Draw this many examinees uniformly without replacement.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write item parameters and score/proficiency correlations as CSV.
    Report {
        model: PathBuf,
        input: PathBuf,
        #[arg(long, default_value = "report.csv")]
        out: PathBuf,
    },
    /// Generate synthetic responses in the ingest CSV format.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.0)]
        na_rate: f64,
        #[arg(long, default_value = "data.csv")]
        out: PathBuf,
    },
}

fn read_table(path: &Path, domain: CellDomain) -> Result<ResponseTable> {
    ingest::parse_table_with(BufReader::new(File::open(path)?), domain)
}

fn read_model(path: &Path) -> Result<(ModelParams, Vec<String>)> {
    let file = ModelFile::read(BufReader::new(File::open(path)?))?;
    let params = file.to_params()?;
    Ok((params, file.column_names))
}

fn domain_of(family: Family) -> CellDomain {
    match family {
        Family::Bernoulli => CellDomain::Rates,
        Family::Gaussian => CellDomain::Real,
    }
}

/// Loads model and data and checks that their descriptor columns agree.
fn load_pair(model: &Path, input: &Path) -> Result<(ModelParams, ResponseTable)> {
    let (params, names) = read_model(model)?;
    let table = read_table(input, domain_of(params.family))?;
    if table.descriptor_names != names {
        return Err(LpcaError::Data(format!(
            "data columns {:?} do not match model columns {:?}",
            table.descriptor_names, names
        )));
    }
    Ok((params, table))
}

fn parse_pc(text: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| LpcaError::Config(format!("bad component index {s:?} in --pc")))
    };
    match parts.as_slice() {
        [a] => {
            let a = num(a)?;
            Ok((a, a))
        }
        [a, b] => Ok((num(a)?, num(b)?)),
        _ => Err(LpcaError::Config(format!("--pc expects `a` or `a,b`, got {text:?}"))),
    }
}

fn cmd_fit(
    input: &Path,
    family: Family,
    config: &FitConfig,
    out: &Path,
) -> Result<()> {
    let table = read_table(input, domain_of(family))?;
    let data = ingest::to_response_matrix(&table)?;
    let result = fit::fit(&data, family, config)?;
    ModelFile::from_params(&result.params, &table.descriptor_names)?
        .write(BufWriter::new(File::create(out)?))?;
    for &j in &result.diagnostics.constant_columns {
        eprintln!("warning: column {} is constant", table.descriptor_names[j]);
    }
    println!("n = {}", data.nrows());
    println!("d = {}", data.ncols());
    println!("k = {}", config.k);
    println!("m = {}", config.m);
    println!("iterations = {}", result.diagnostics.iterations);
    println!("final objective = {}", result.final_objective());
    println!("true deviance = {}", result.true_deviance);
    println!("converged = {}", result.converged);
    Ok(())
}

fn cmd_plot(
    model: &Path,
    input: &Path,
    map: &str,
    pc: &str,
    out: &Path,
    sample: Option<usize>,
    seed: u64,
) -> Result<()> {
    let (params, mut table) = load_pair(model, input)?;
    if let Some(size) = sample {
        if size < table.nrows() {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut rows = rand::seq::index::sample(&mut rng, table.nrows(), size).into_vec();
            rows.sort_unstable();
            table = table.select_rows(&rows);
        }
    }
    let data = ingest::to_response_matrix(&table)?;
    let scores = fit::scores(&params, &data)?;
    let axes = parse_pc(pc)?;
    let mut spec = if map == "loadings" {
        PlotSpec::loadings(axes.0)
    } else if map == "proficiency" {
        PlotSpec::scatter(ColorMode::ProficiencyBands)
    } else if let Some(name) = map.strip_prefix("descriptor:") {
        let j = table
            .descriptor_index(name)
            .ok_or_else(|| LpcaError::Data(format!("unknown descriptor {name:?}")))?;
        PlotSpec::scatter(ColorMode::DescriptorBinary(j))
    } else if let Some(col) = map.strip_prefix("category:") {
        if table.meta(col).is_none() {
            return Err(LpcaError::Data(format!("unknown metadata column {col:?}")));
        }
        PlotSpec::scatter(ColorMode::Categorical(col.to_string()))
    } else {
        return Err(LpcaError::Config(format!("unknown map kind {map:?}")));
    };
    if spec.kind == viz::PlotKind::Scatter {
        spec.axes = axes;
    }
    let svg = viz::render(
        &spec,
        &MapInput {
            params: &params,
            scores: &scores,
            table: &table,
        },
    )?;
    std::fs::write(out, svg)?;
    Ok(())
}

fn cmd_report(model: &Path, input: &Path, out: &Path) -> Result<()> {
    let (params, table) = load_pair(model, input)?;
    let mut w = BufWriter::new(File::create(out)?);
    irt::write_item_params_csv(&mut w, &table.descriptor_names, &irt::to_item_params(&params))?;
    match table.numeric_meta("proficiency")? {
        None => eprintln!("notice: no meta:proficiency column, correlation section omitted"),
        Some(prof) => {
            let data = ingest::to_response_matrix(&table)?;
            let scores = fit::scores(&params, &data)?;
            let rows: Vec<usize> = (0..prof.len()).filter(|&i| prof[i].is_some()).collect();
            let y: Vec<f64> = rows.iter().map(|&i| prof[i].unwrap_or_default()).collect();
            writeln!(w)?;
            writeln!(w, "component,pearson_proficiency")?;
            for l in 0..params.k {
                let x: Vec<f64> = rows.iter().map(|&i| scores[(i, l)]).collect();
                match irt::pearson_correlation(&x, &y) {
                    Ok(r) => writeln!(w, "PC{},{r}", l + 1)?,
                    Err(e) => {
                        eprintln!("notice: PC{}: {e}", l + 1);
                        writeln!(w, "PC{},", l + 1)?;
                    }
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn cmd_generate(spec: &GeneratorSpec, out: &Path) -> Result<()> {
    let data = synth::generate(spec)?;
    let table = synth::to_table(&data, spec.seed)?;
    std::fs::write(out, table.to_csv()?)?;
    Ok(())
}

fn init_threads() {
    if let Some(n) = std::env::var("LPCA_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Fit {
            input,
            k,
            m,
            max_iter,
            tol,
            seed,
            family,
            out,
        } => {
            let config = FitConfig {
                m,
                max_iter,
                rel_tol: tol,
                seed,
                ..FitConfig::new(k as usize)
            };
            cmd_fit(&input, family.into(), &config, &out)
        }
        Command::Plot {
            model,
            input,
            map,
            pc,
            out,
            sample,
            seed,
        } => cmd_plot(&model, &input, &map, &pc, &out, sample, seed),
        Command::Report { model, input, out } => cmd_report(&model, &input, &out),
        Command::Generate {
            n,
            d,
            k,
            seed,
            na_rate,
            out,
        } => {
            let spec = GeneratorSpec {
                na_rate,
                ..GeneratorSpec::new(n, d, k, seed)
            };
            cmd_generate(&spec, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
