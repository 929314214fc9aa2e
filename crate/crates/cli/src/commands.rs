//! Command-line surface: argument definitions and dispatch.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use eulercalc::radon::{betti_slice, radon_dual_p2, radon_invert_check, radon_p2, slice_eval_r3};
use eulercalc::ratgeom::parse_rational;
use eulercalc::{AffineForm, Budget, ProjectiveCF, Rational};

use crate::document::{self, Function};
use crate::error::{CliError, CliResult};
use crate::suite;

#[derive(Debug, Parser)]
#[command(name = "eulercalc", version, about = "Exact Euler calculus on piecewise-linear constructible functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Input function document.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Second input function document.
    #[arg(long, global = true)]
    pub input2: Option<PathBuf>,
    /// Where to write a resulting function (stdout when absent).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Affine map document.
    #[arg(long, global = true)]
    pub map: Option<PathBuf>,
    /// Cone document.
    #[arg(long, global = true)]
    pub gamma: Option<PathBuf>,
    /// Affine chart index `i` (the chart `x_i = 1`, 1-based).
    #[arg(long, global = true)]
    pub chart: Option<usize>,
    /// Point, comma-separated rationals.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Plane `a·x + b = 0` as comma-separated rationals `a1,...,an,b`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub plane: Option<String>,
    /// Largest arrangement an operation may build before giving up
    #[arg(long, global = true, default_value_t = 200_000)]
    pub max_cells: usize,
    /// Sample points per cell when assigning pushforward and Radon values
    #[arg(long, global = true, default_value_t = 3)]
    pub oversample: usize,
    /// Seed for sampling and for the identity battery
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EmbedMode {
    /// Extension by zero.
    Eim,
    /// Direct image `D j_! D`.
    Oim,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Value at `--point`.
    Eval,
    /// Euler integral.
    Integrate,
    /// Non-proper Euler integral.
    IntegrateNp,
    /// Duality.
    Dual,
    /// Sum of `--input` and `--input2`.
    Add,
    /// Product of `--input` and `--input2`.
    Mul,
    /// Pullback along `--map`.
    Pull,
    /// Pushforward along `--map`.
    Push,
    /// Non-proper pushforward along `--map`.
    PushNp,
    /// Convolution of `--input` and `--input2`.
    Convolve,
    /// Non-proper convolution of `--input` and `--input2`.
    ConvolveNp,
    /// Projection onto γ-constructible functions for the cone `--gamma`.
    GammaProject,
    /// Affine function into projective space.
    Embed {
        #[arg(long, value_enum, default_value_t = EmbedMode::Eim)]
        mode: EmbedMode,
    },
    /// Projective function to the affine chart `--chart`.
    Restrict,
    /// Radon transform on ℙ².
    Radon,
    /// Dual Radon transform on ℙ².
    RadonDual,
    /// Checks R'Rφ = −φ + ∫φ on ℙ².
    RadonInvert,
    /// `∫ φ·1_H` for the plane `--plane` in ℝ³.
    SliceEval,
    /// Betti numbers of a compact planar set.
    BettiSlice,
    /// Runs the full identity battery.
    CheckSuite,
}

impl Cli {
    fn budget(&self) -> Budget {
        Budget { max_cells: self.max_cells, oversample: self.oversample, seed: self.seed }
    }

    fn input(&self) -> CliResult<Function> {
        document::load(required(&self.input, "--input")?)
    }

    fn input2(&self) -> CliResult<Function> {
        document::load(required(&self.input2, "--input2")?)
    }
}

fn required<'a>(p: &'a Option<PathBuf>, flag: &str) -> CliResult<&'a Path> {
    p.as_deref().ok_or_else(|| CliError::validation(format!("{flag} is required for this command")))
}

fn parse_list(s: &str, flag: &str) -> CliResult<Vec<Rational>> {
    s.split(',').map(|p| parse_rational(p.trim()).map_err(|e| CliError::validation(format!("{flag}: {e}")))).collect()
}

fn emit(cli: &Cli, f: Function) -> CliResult<String> {
    match &cli.output {
        Some(path) => {
            document::save(&f, path)?;
            Ok(format!("wrote {}\n", path.display()))
        }
        None => Ok(document::to_json(&document::to_document(&f))),
    }
}

fn pair(cli: &Cli) -> CliResult<(Function, Function)> {
    let (a, b) = (cli.input()?, cli.input2()?);
    if a.kind() != b.kind() {
        return Err(CliError::validation("inputs must both be affine or both projective"));
    }
    Ok((a, b))
}

/// Runs one command and returns the text to print.
pub fn run(cli: &Cli) -> CliResult<String> {
    use Command::*;
    use Function::{Affine, Projective};
    let budget = cli.budget();
    match &cli.command {
        Eval => {
            let point = parse_list(
                cli.point.as_deref().ok_or_else(|| CliError::validation("--point is required"))?,
                "--point",
            )?;
            let v = match cli.input()? {
                Affine(f) => f.evaluate(&point)?,
                Projective(f) => f.evaluate(&point)?,
            };
            Ok(format!("{v}\n"))
        }
        Integrate => Ok(format!(
            "{}\n",
            match cli.input()? {
                Affine(f) => f.integrate(),
                Projective(f) => f.integrate(),
            }
        )),
        IntegrateNp => Ok(format!(
            "{}\n",
            match cli.input()? {
                Affine(f) => f.integrate_np(),
                // ℙⁿ is compact: both integrals agree
                Projective(f) => f.integrate(),
            }
        )),
        Dual => {
            let out = match cli.input()? {
                Affine(f) => Affine(f.dual()),
                Projective(f) => Projective(f.dual()),
            };
            emit(cli, out)
        }
        Add | Mul => {
            let mul = matches!(cli.command, Mul);
            let out = match pair(cli)? {
                (Affine(a), Affine(b)) => Affine(if mul { a.multiply(&b)? } else { a.add(&b)? }),
                (Projective(a), Projective(b)) => Projective(if mul { a.multiply(&b)? } else { a.add(&b)? }),
                _ => unreachable!("kinds checked"),
            };
            emit(cli, out)
        }
        Pull | Push | PushNp => {
            let f = cli.input()?.affine()?;
            let map = document::load_map(required(&cli.map, "--map")?)?;
            let out = match cli.command {
                Pull => f.pullback(&map)?,
                Push => f.pushforward(&map, &budget)?,
                _ => f.pushforward_np(&map, &budget)?,
            };
            emit(cli, Affine(out))
        }
        Convolve | ConvolveNp => {
            let (a, b) = (cli.input()?.affine()?, cli.input2()?.affine()?);
            let out =
                if matches!(cli.command, Convolve) { a.convolve(&b, &budget)? } else { a.convolve_np(&b, &budget)? };
            emit(cli, Affine(out))
        }
        GammaProject => {
            let f = cli.input()?.affine()?;
            let cone = document::load_cone(required(&cli.gamma, "--gamma")?)?;
            emit(cli, Affine(f.gamma_project(&cone, &budget)?))
        }
        Embed { mode } => {
            let f = cli.input()?.affine()?;
            let out = match mode {
                EmbedMode::Eim => ProjectiveCF::embed_eim(&f),
                EmbedMode::Oim => ProjectiveCF::embed_oim(&f),
            };
            emit(cli, Projective(out))
        }
        Restrict => {
            let f = cli.input()?.projective()?;
            let i = cli.chart.ok_or_else(|| CliError::validation("--chart is required"))?;
            emit(cli, Affine(f.restrict_chart(i)?))
        }
        Radon => emit(cli, Projective(radon_p2(&cli.input()?.projective()?, &budget)?)),
        RadonDual => emit(cli, Projective(radon_dual_p2(&cli.input()?.projective()?, &budget)?)),
        RadonInvert => {
            let check = radon_invert_check(&cli.input()?.projective()?, &budget)?;
            if let Some(path) = &cli.output {
                document::save(&Projective(check.lhs.clone()), path)?;
            }
            if check.equal {
                Ok("equal: true\n".into())
            } else {
                Err(CliError::Invariant("equal: false".into()))
            }
        }
        SliceEval => {
            let f = cli.input()?.affine()?;
            let coeffs = parse_list(
                cli.plane.as_deref().ok_or_else(|| CliError::validation("--plane is required"))?,
                "--plane",
            )?;
            if coeffs.len() != f.dim() + 1 {
                return Err(CliError::validation(format!("--plane needs {} values", f.dim() + 1)));
            }
            let n = f.dim();
            let plane = AffineForm::new(coeffs[..n].to_vec(), coeffs[n].clone());
            Ok(format!("{}\n", slice_eval_r3(&f, &plane)?))
        }
        BettiSlice => {
            let b = betti_slice(&cli.input()?.affine()?)?;
            let text =
                format!("b0: {}\nb1: {}\nb1 from complement: {}\n", b.b0, b.b1, b.complement_components as i64 - 1);
            if b.consistent() {
                Ok(text)
            } else {
                Err(CliError::Invariant(format!("Betti numbers disagree\n{text}")))
            }
        }
        CheckSuite => {
            let reports = suite::battery(&suite::Config { seed: cli.seed, budget });
            let mut text = String::new();
            for r in &reports {
                text.push_str(&r.line());
                text.push('\n');
            }
            if reports.iter().all(suite::Report::passed) {
                text.push_str("all checks passed\n");
                Ok(text)
            } else {
                Err(CliError::Invariant(text))
            }
        }
    }
}
