use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lsmc_stability::basis::{graded_index_set, TensorBasis};
use lsmc_stability::bounds::{guarantee_csv_row, required_n, BOUND_CSV_HEADER, GUARANTEE_CSV_HEADER};
use lsmc_stability::experiments::{self, ExperimentConfig, ExperimentId, Range};
use lsmc_stability::gram::{GramReport, KhInputs, GRAM_CSV_HEADER};
use lsmc_stability::lsmc::{run_pipeline, PipelineConfig};
use lsmc_stability::plot::LinePlot;
use lsmc_stability::sequences::{
    empirical_c, generate, star_discrepancy_1d, star_discrepancy_nd_bruteforce_with_limit,
    DirectionTable, GeneratorSpec, DEFAULT_ORACLE_LIMIT,
};
use lsmc_stability::variation::{v_max, v_max_expanded};
use lsmc_stability::Error;

#[derive(Parser)]
#[command(name = "lsmc-stability", version, about = "Gram-matrix conditioning for QMC regression designs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a point set as CSV.
    Sequence {
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Star-discrepancy of the first N points, or the empirical constant C over a grid.
    Discrepancy {
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long, required_unless_present = "grid")]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = DiscMethod::Auto)]
        method: DiscMethod,
        #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
        limit: usize,
        /// Comma-separated N values; prints C_emp instead of D*_N.
        #[arg(long, value_delimiter = ',')]
        grid: Option<Vec<usize>>,
    },
    /// Basis metadata as CSV.
    Basis {
        #[command(flatten)]
        basis: BasisArgs,
    },
    /// Pairwise Hardy–Krause variations and V_max.
    Variation {
        #[command(flatten)]
        basis: BasisArgs,
        /// Multiply factors out in the monomial basis before evaluating.
        #[arg(long)]
        expanded: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Conditioning summary of (1/N) XᵀX.
    Gram {
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long = "C")]
        c: Option<f64>,
        #[arg(long)]
        vmax: Option<f64>,
        /// Also print the matrix.
        #[arg(long)]
        matrix: bool,
    },
    /// Scenario count for a target condition number, or the guarantee at a given N.
    Bound {
        #[arg(long, required_unless_present = "n")]
        theta: Option<f64>,
        #[arg(long = "N", conflicts_with = "theta")]
        n: Option<u64>,
        #[arg(long = "C")]
        c: f64,
        #[arg(long)]
        vmax: f64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        s: u32,
    },
    /// Toy LSMC pipeline.
    Lsmc {
        #[command(subcommand)]
        action: LsmcAction,
    },
    /// Reproduce one of the conditioning experiments.
    Experiment {
        #[arg(required_unless_present = "print_defaults")]
        id: Option<String>,
        #[arg(long)]
        print_defaults: bool,
        #[arg(long)]
        n_start: Option<usize>,
        #[arg(long)]
        n_end: Option<usize>,
        #[arg(long)]
        stride: Option<usize>,
        #[arg(long)]
        n_fixed: Option<usize>,
        #[arg(long)]
        m_start: Option<usize>,
        #[arg(long)]
        m_end: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        bases: Option<Vec<u64>>,
        /// fig3: add the monomial-expansion column.
        #[arg(long)]
        expanded: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum LsmcAction {
    /// Run a pipeline described by a key = value file.
    Run { config: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Vdc,
    Halton,
    Sobol,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum DiscMethod {
    Auto,
    Closed,
    Brute,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 2)]
    base: u64,
    #[arg(long, value_delimiter = ',')]
    bases: Option<Vec<u64>>,
    #[arg(long, default_value_t = 1)]
    s: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    skip: u64,
    /// Joe–Kuo direction-number file (Sobol only).
    #[arg(long)]
    direction_file: Option<PathBuf>,
}

impl GenArgs {
    fn spec(&self) -> Result<GeneratorSpec, Error> {
        let spec = match self.kind {
            Kind::Vdc => GeneratorSpec::van_der_corput(self.base),
            Kind::Halton => GeneratorSpec::halton(
                self.bases
                    .clone()
                    .ok_or_else(|| Error::InvalidArgument("--bases is required for halton".into()))?,
            ),
            Kind::Sobol => match &self.direction_file {
                Some(p) => GeneratorSpec::sobol_with_table(self.s, Arc::new(DirectionTable::from_file(p)?)),
                None => GeneratorSpec::sobol(self.s),
            },
            Kind::Random => GeneratorSpec::pseudo_random(self.s, self.seed),
        };
        Ok(spec.with_skip(self.skip))
    }
}

#[derive(Args)]
struct BasisArgs {
    #[arg(long, default_value_t = 1)]
    s: usize,
    #[arg(long, required_unless_present = "max_degree")]
    m: Option<usize>,
    #[arg(long)]
    max_degree: Option<u32>,
}

impl BasisArgs {
    fn basis(&self) -> Result<TensorBasis, Error> {
        TensorBasis::new(self.s, graded_index_set(self.s, self.m, self.max_degree)?)
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Error> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Sequence { gen, n, out } => {
            let ps = generate(&gen.spec()?, n)?;
            emit(&ps.to_csv(), out.as_ref())
        }
        Command::Discrepancy {
            gen,
            n,
            method,
            limit,
            grid,
        } => {
            let spec = gen.spec()?;
            if let Some(grid) = grid {
                println!("C_emp\n{}", empirical_c(&spec, &grid)?);
                return Ok(());
            }
            let n = n.expect("clap enforces --n without --grid");
            let ps = generate(&spec, n)?;
            let res = match (method, ps.dimension()) {
                (DiscMethod::Closed, _) | (DiscMethod::Auto, 1) => star_discrepancy_1d(&ps)?,
                _ => star_discrepancy_nd_bruteforce_with_limit(&ps, limit)?,
            };
            println!("N,d_star,method\n{},{},{:?}", res.n, res.d_star, res.method);
            Ok(())
        }
        Command::Basis { basis } => emit(&basis.basis()?.metadata_csv(), None),
        Command::Variation {
            basis,
            expanded,
            out,
        } => {
            let b = basis.basis()?;
            let report = if expanded { v_max_expanded(&b)? } else { v_max(&b) };
            emit(&report.to_csv(), out.as_ref())
        }
        Command::Gram {
            gen,
            n,
            m,
            max_degree,
            c,
            vmax,
            matrix,
        } => {
            let spec = gen.spec()?;
            let basis = TensorBasis::new(spec.dimension, graded_index_set(spec.dimension, m, max_degree)?)?;
            let ps = generate(&spec, n)?;
            let kh = match (c, vmax) {
                (Some(c), Some(v)) => Some(KhInputs { c, v_max: v }),
                (Some(c), None) => Some(KhInputs {
                    c,
                    v_max: v_max(&basis).v_max,
                }),
                _ => None,
            };
            let report = GramReport::compute(&ps, &basis, kh)?;
            println!("{GRAM_CSV_HEADER}\n{}", report.csv_row());
            if matrix {
                print!("{}", report.matrix_csv());
            }
            Ok(())
        }
        Command::Bound {
            theta,
            n,
            c,
            vmax,
            m,
            s,
        } => {
            if let Some(n) = n {
                println!("{GUARANTEE_CSV_HEADER}\n{}", guarantee_csv_row(n, c, vmax, m, s)?);
            } else {
                let theta = theta.expect("clap enforces --theta without --N");
                println!("{BOUND_CSV_HEADER}\n{}", required_n(theta, c, vmax, m, s)?.csv_row());
            }
            Ok(())
        }
        Command::Lsmc {
            action: LsmcAction::Run { config },
        } => {
            let cfg = PipelineConfig::from_file(&config)?;
            let res = run_pipeline(&cfg)?;
            if res.theta_met == Some(false) {
                eprintln!(
                    "warning: kappa {} exceeds theta_target {}",
                    res.fit.kappa_used,
                    cfg.theta_target.unwrap_or_default()
                );
            }
            print!("{}", res.to_csv());
            Ok(())
        }
        Command::Experiment {
            id,
            print_defaults,
            n_start,
            n_end,
            stride,
            n_fixed,
            m_start,
            m_end,
            bases,
            expanded,
            out,
            svg,
        } => {
            if print_defaults {
                print!("{}", experiments::print_defaults());
                return Ok(());
            }
            let id: ExperimentId = id.expect("clap enforces id").parse()?;
            let mut cfg = ExperimentConfig::defaults(id);
            cfg.n_range = Range::new(
                n_start.unwrap_or(cfg.n_range.start),
                n_end.unwrap_or(cfg.n_range.end),
                stride.unwrap_or(cfg.n_range.stride),
            );
            cfg.m_range = Range::new(
                m_start.unwrap_or(cfg.m_range.start),
                m_end.unwrap_or(cfg.m_range.end),
                1,
            );
            if let Some(n) = n_fixed {
                cfg.n_fixed = n;
            }
            if let Some(b) = bases {
                cfg.bases = b;
            }
            cfg.include_expanded = expanded;
            let (csv, plot) = run_experiment(&cfg)?;
            if let Some(path) = svg {
                std::fs::write(path, plot.to_svg())?;
            }
            emit(&csv, out.as_ref())
        }
    }
}

fn run_experiment(cfg: &ExperimentConfig) -> Result<(String, LinePlot), Error> {
    Ok(match cfg.id {
        ExperimentId::Fig1 => {
            let rows = experiments::run_fig1(cfg)?;
            let plot = LinePlot::new("(kappa - 1) / (ln N / N)", "N", "quotient")
                .add("vdc", rows.iter().map(|r| (r.n as f64, r.quotient)).collect());
            (experiments::fig1_csv(&rows), plot)
        }
        ExperimentId::Fig2 => {
            let rows = experiments::run_fig2(cfg)?;
            let plot = LinePlot::new("kappa / m", "m", "kappa / m")
                .log_y()
                .add("N = 200", rows.iter().map(|r| (r.m as f64, r.quotient_by_m)).collect());
            (experiments::fig2_csv(&rows), plot)
        }
        ExperimentId::Fig3 => {
            let rows = experiments::run_fig3(cfg)?;
            let mut plot = LinePlot::new("V_max", "m", "V_max")
                .log_y()
                .add("recurrence", rows.iter().map(|r| (r.m as f64, r.v_max)).collect());
            if cfg.include_expanded {
                plot = plot.add(
                    "monomial",
                    rows.iter()
                        .filter_map(|r| r.v_max_expanded.map(|v| (r.m as f64, v)))
                        .collect(),
                );
            }
            (experiments::fig3_csv(&rows), plot)
        }
        ExperimentId::Fig4 => {
            let rows = experiments::run_fig4(cfg)?;
            let mut plot = LinePlot::new("kappa - 1", "N", "kappa - 1").log_y();
            for &b in &cfg.bases {
                plot = plot.add(
                    &format!("base {b}"),
                    rows.iter()
                        .filter(|r| r.base == b)
                        .map(|r| (r.n as f64, r.kappa_minus_1))
                        .collect(),
                );
            }
            (experiments::fig4_csv(&rows), plot)
        }
    })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::IllConditioned { .. } => 3,
        Error::NotPositiveDefinite(_) => 4,
        Error::CapExceeded(_) => 5,
        Error::NoConvergence { .. } => 6,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
