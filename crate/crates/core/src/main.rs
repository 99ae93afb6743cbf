use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gwburn::experiment::{
    estimate_rows_csv, measure_tree, run_bounds, run_ckj, run_pairs, run_sample, run_scaling,
    run_tails, to_json, trial_records_csv, EstimateRow, ExperimentConfig, SAMPLE_CSV_HEADER,
};
use gwburn::verify::{run_suite, Suite};
use gwburn::{Error, OffspringDistribution, PreorderDegreeSequence, Result, Tree};

#[derive(Parser)]
#[command(
    name = "gwburn",
    version,
    about = "Burning numbers of conditioned Galton-Watson trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample conditioned trees and write them as degree-sequence files.
    Sample(Common),
    /// Bounds and (for small n) exact burning numbers per sampled tree.
    Bounds {
        #[command(flatten)]
        common: Common,
        /// Measure this degree-sequence file instead of sampling.
        #[arg(long, value_name = "FILE")]
        tree: Option<PathBuf>,
    },
    /// Median bhat per n and the fitted log-log slope.
    Scaling {
        #[command(flatten)]
        common: Common,
        /// Also write the per-trial records as CSV.
        #[arg(long, value_name = "PATH")]
        records: Option<PathBuf>,
    },
    /// Frequency of min_j |C_k^j| <= 2k - 1 at k = floor((n / epsilon)^(1/3)).
    Ckj(Common),
    /// Mean P_i / (n i) per i.
    Pairs {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 50)]
        i_max: usize,
    },
    /// Height tail of the unconditioned tree and subtree tails of T_n.
    Tails {
        #[command(flatten)]
        common: Common,
        /// Unconditioned trees larger than this count as reaching every k.
        #[arg(long, default_value_t = 1_000_000)]
        size_cap: u64,
    },
    /// Run the acceptance checks.
    Verify {
        #[arg(value_enum, default_value_t = SuiteArg::Oracle)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Oracle,
    Statistical,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Common {
    /// poisson | geometric | binomial:d | two_point:m | custom:FILE
    #[arg(long, default_value = "poisson")]
    offspring: String,
    /// Tree size; repeat for several sizes.
    #[arg(long = "n", value_name = "N")]
    n_values: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    trials: u64,
    #[arg(long, env = "GWBURN_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Repeatable.
    #[arg(long = "k", value_name = "K")]
    k_values: Vec<u64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file (for `sample`, the directory for tree files).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads; 0 means one per core.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, default_value_t = gwburn::burning::DEFAULT_NODE_CAP)]
    node_cap: usize,
    /// Add a wall_time_ms column (output is then not reproducible).
    #[arg(long)]
    timing: bool,
}

impl Common {
    fn config(&self) -> Result<ExperimentConfig> {
        let offspring = OffspringDistribution::from_spec(&self.offspring)?;
        let mut config =
            ExperimentConfig::new(offspring, self.n_values.clone(), self.trials, self.seed);
        config.epsilon = self.epsilon;
        config.k_values = self.k_values.clone();
        config.workers = self.workers;
        config.node_cap = self.node_cap;
        config.timing = self.timing;
        config.validate()?;
        Ok(config)
    }

    fn emit(&self, csv: impl FnOnce() -> String, json: impl FnOnce() -> String) -> Result<()> {
        let text = match self.format {
            Format::Csv => csv(),
            Format::Json => json(),
        };
        match &self.out {
            Some(path) => fs::write(path, text)?,
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }

    fn emit_rows(&self, rows: &[EstimateRow]) -> Result<()> {
        self.emit(|| estimate_rows_csv(rows), || to_json(rows))
    }
}

#[derive(Serialize)]
struct SampleSummary {
    trial_index: u64,
    n: usize,
    seed: u64,
    rejection_attempts: u64,
    height: usize,
    diameter: usize,
    leaves: usize,
    file: String,
}

fn cmd_sample(common: &Common) -> Result<()> {
    let config = common.config()?;
    let dir = common.out.clone().unwrap_or_else(|| PathBuf::from("."));
    let trees = run_sample(&config)?;
    fs::create_dir_all(&dir)?;
    let mut summary = Vec::with_capacity(trees.len());
    for (g, tree, attempts) in &trees {
        let name = format!("tree_n{}_t{g}.txt", tree.n());
        fs::write(dir.join(&name), format!("{}\n", tree.degrees()))?;
        summary.push(SampleSummary {
            trial_index: *g,
            n: tree.n(),
            seed: config.seed,
            rejection_attempts: *attempts,
            height: tree.height(),
            diameter: tree.diameter(),
            leaves: tree.leaf_count(),
            file: name,
        });
    }
    let text = match common.format {
        Format::Json => to_json(&summary),
        Format::Csv => {
            let mut s = format!("{SAMPLE_CSV_HEADER}\n");
            for r in &summary {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    r.trial_index,
                    r.n,
                    r.seed,
                    r.rejection_attempts,
                    r.height,
                    r.diameter,
                    r.leaves,
                    r.file
                ));
            }
            s
        }
    };
    std::io::stdout().write_all(text.as_bytes())?;
    Ok(())
}

fn read_tree(path: &Path) -> Result<Tree> {
    let text = fs::read_to_string(path)?;
    let seq: PreorderDegreeSequence = text.trim().parse()?;
    Tree::from_degrees(seq)
}

fn cmd_bounds(common: &Common, tree: Option<&Path>) -> Result<()> {
    let records = match tree {
        Some(path) => {
            let offspring = OffspringDistribution::from_spec(&common.offspring)?;
            let mut config = ExperimentConfig::new(offspring, Vec::new(), 1, common.seed);
            config.node_cap = common.node_cap;
            config.timing = common.timing;
            vec![measure_tree(&read_tree(path)?, 0, common.seed, 0, &config)?]
        }
        None => run_bounds(&common.config()?)?,
    };
    common.emit(|| trial_records_csv(&records), || to_json(&records))
}

fn cmd_scaling(common: &Common, records_path: Option<&Path>) -> Result<()> {
    let report = run_scaling(&common.config()?)?;
    if let Some(path) = records_path {
        fs::write(path, trial_records_csv(&report.records))?;
    }
    common.emit_rows(&report.rows)
}

fn cmd_verify(suite: SuiteArg, workers: usize) -> Result<bool> {
    let suite = match suite {
        SuiteArg::Oracle => Suite::Oracle,
        SuiteArg::Statistical => Suite::Statistical,
        SuiteArg::All => Suite::All,
    };
    let results = run_suite(suite, workers, |r| println!("{}", r.line()))?;
    if let Some(first) = results.iter().find(|r| !r.passed) {
        eprintln!("failed: criterion {} ({})", first.id, first.name);
        return Ok(false);
    }
    Ok(true)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Sample(common) => cmd_sample(&common)?,
        Command::Bounds { common, tree } => cmd_bounds(&common, tree.as_deref())?,
        Command::Scaling { common, records } => cmd_scaling(&common, records.as_deref())?,
        Command::Ckj(common) => common.emit_rows(&run_ckj(&common.config()?)?)?,
        Command::Pairs { common, i_max } => {
            common.emit_rows(&run_pairs(&common.config()?, i_max)?)?
        }
        Command::Tails { common, size_cap } => {
            common.emit_rows(&run_tails(&common.config()?, size_cap)?)?
        }
        Command::Verify { suite, workers } => return cmd_verify(suite, workers),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    e.exit_code() as u8
}
