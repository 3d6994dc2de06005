//! The `wg` command line: rotation numbers, areas, lifts, cusp tables, word
//! reduction, homotopy planning, verification, and rendering.
//!
//! Exit codes: 0 success, 2 precondition/validation error, 3 planner or
//! certification failure, 4 I/O error.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::catalog::catalog;
use crate::config::ToleranceConfig;
use crate::curve::PlanarClosedCurve;
use crate::error::{Error, Result};
use crate::homotopy::{lift_homotopy, plan_whitney_graustein, verify};
use crate::io::{
    self, format_f64, CurveDocument, HomotopyDocument,
};
use crate::legendrian::{lift, rot_from_cusps, scan_cusps, CuspOrientation, CuspWord, Side};
use crate::moves::{normalize_area, reduce_word};
use crate::render::{render_frames, render_front_svg, FrameFormat};

#[derive(Parser)]
#[command(
    name = "wg",
    about = "Rotation numbers, Legendrian fronts, and certified regular homotopies of plane curves",
    version
)]
pub struct Cli {
    #[command(flatten)]
    pub globals: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args)]
pub struct GlobalOpts {
    /// Sample count used when ingesting catalog or Fourier curves.
    #[arg(long, global = true, default_value_t = 1024)]
    pub n_samples: usize,
    /// Seed for every randomized fallback.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Relative speed floor for regularity certificates.
    #[arg(long, global = true, default_value_t = 1e-4)]
    pub eps_speed: f64,
    /// Absolute tolerance on zero signed area.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub eps_area: f64,
    /// Frames sampled per homotopy segment.
    #[arg(long, global = true, default_value_t = 64)]
    pub frames: usize,
}

impl GlobalOpts {
    pub fn config(&self) -> ToleranceConfig {
        ToleranceConfig {
            eps_speed: self.eps_speed,
            eps_area: self.eps_area,
            frame_count: self.frames,
            rng_seed: self.seed,
            ..ToleranceConfig::default()
        }
    }
}

#[derive(Subcommand)]
pub enum Command {
    /// Print the rotation number of a curve.
    Rot { input: String },
    /// Print the signed area of a curve.
    Area { input: String },
    /// Deform a curve to zero signed area.
    NormalizeArea {
        input: String,
        #[arg(short, long)]
        output: PathBuf,
        /// Also write the certified homotopy document.
        #[arg(long)]
        homotopy: Option<PathBuf>,
    },
    /// Lift a zero-area curve to a Legendrian curve.
    Lift {
        input: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Print the cusp table, the word, and the three rotation formulas.
    Cusps { input: String },
    /// Reduce a cusp word (e.g. "-++-" or "(-,+,+,-)").
    Reduce { word: String },
    /// Plan a certified regular homotopy between two curves of equal rot.
    Plan {
        input_a: String,
        input_b: String,
        #[arg(short, long)]
        output: PathBuf,
        /// Directory for per-frame Legendrian lifts of the zero-area part.
        #[arg(long)]
        legendrian: Option<PathBuf>,
    },
    /// Verify a homotopy document against its endpoint curves.
    Verify {
        homotopy: PathBuf,
        input_a: String,
        input_b: String,
        /// Also require every frame to have zero signed area.
        #[arg(long)]
        zero_area: bool,
    },
    /// Render fronts and homotopy frames.
    Render {
        #[command(subcommand)]
        what: RenderCommand,
    },
    /// Write a catalog curve to a document.
    Catalog {
        name: String,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
pub enum RenderCommand {
    /// Front projection of a Legendrian curve document, as SVG.
    Front {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Frames of a homotopy document, as CSV or SVG.
    Frames {
        homotopy: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = CliFormat::Csv)]
        format: CliFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum CliFormat {
    Csv,
    Svg,
}

/// Loads a curve from a file path or a `catalog:NAME` reference.
fn load_curve(input: &str, n: usize, cfg: &ToleranceConfig) -> Result<PlanarClosedCurve> {
    if let Some(name) = input.strip_prefix("catalog:") {
        return catalog(name, n, cfg);
    }
    io::read_curve_document(Path::new(input))?.to_curve(n)
}

/// Runs a parsed command; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let cfg = cli.globals.config();
    match execute(cli.command, &cli.globals, &cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => 4,
        Error::Certification { .. }
        | Error::Normalization { .. }
        | Error::Interpolation { .. }
        | Error::Planner { .. }
        | Error::Aliasing => 3,
        _ => 2,
    }
}

fn execute(command: Command, globals: &GlobalOpts, cfg: &ToleranceConfig) -> Result<i32> {
    cfg.validate()?;
    let n = globals.n_samples;
    match command {
        Command::Rot { input } => {
            let curve = load_curve(&input, n, cfg)?;
            println!("{}", curve.rotation_number(cfg)?);
        }
        Command::Area { input } => {
            let curve = load_curve(&input, n, cfg)?;
            println!("{}", format_f64(curve.signed_area()));
        }
        Command::NormalizeArea {
            input,
            output,
            homotopy,
        } => {
            let curve = load_curve(&input, n, cfg)?;
            let (flat, h) = normalize_area(&curve, cfg)?;
            io::write_document(&CurveDocument::from_curve(&flat), &output)?;
            if let Some(hpath) = homotopy {
                io::write_document(&HomotopyDocument::from_homotopy(&h, None), &hpath)?;
            }
            eprintln!(
                "area {} -> {}",
                format_f64(curve.signed_area()),
                format_f64(flat.signed_area())
            );
        }
        Command::Lift { input, output } => {
            let curve = load_curve(&input, n, cfg)?;
            let gamma = lift(&curve, 0.0, cfg)?;
            io::write_document(&CurveDocument::from_legendrian(&gamma), &output)?;
        }
        Command::Cusps { input } => {
            let curve = load_curve(&input, n, cfg)?;
            let cusps = scan_cusps(&curve, cfg)?;
            println!("{:>12}  {:>4}  {:>6}", "s", "side", "orient");
            for c in &cusps {
                println!("{:>12.8}  {:>4}  {:>6}", c.s, c.side, c.orientation);
            }
            let word = CuspWord::from_cusps(&cusps)?;
            let rot = rot_from_cusps(&word)?;
            let t = word.tally();
            println!("word: {word}");
            println!("lambda_minus - rho_plus  = {}", t.left_down - t.right_up);
            println!("rho_minus - lambda_plus  = {}", t.right_down - t.left_up);
            println!("(c_minus - c_plus) / 2   = {}", (t.down() - t.up()) / 2);
            debug_assert_eq!(rot, t.left_down - t.right_up);
        }
        Command::Reduce { word } => {
            let parsed = parse_word(&word)?;
            let (normal, trace) = reduce_word(&parsed)?;
            println!("input:  {parsed}");
            for (i, step) in trace.steps.iter().enumerate() {
                println!("step {}: {step}", i + 1);
            }
            println!("normal: {normal}");
            println!("value:  {}", normal.value());
        }
        Command::Plan {
            input_a,
            input_b,
            output,
            legendrian,
        } => {
            let a = load_curve(&input_a, n, cfg)?;
            let b = load_curve(&input_b, n, cfg)?;
            let h = plan_whitney_graustein(&a, &b, cfg)?;
            let report = verify(&h, &a, &b, false, cfg);
            io::write_document(&HomotopyDocument::from_homotopy(&h, Some(&report)), &output)?;
            eprint!("{}", report.summary());
            if let Some(dir) = legendrian {
                std::fs::create_dir_all(&dir)?;
                if let Some((from, to)) = h.metadata.zero_area_segments {
                    let sub = h.sub_homotopy(from, to)?;
                    for (k, (t, gamma)) in lift_homotopy(&sub, cfg)?.iter().enumerate() {
                        let mut doc = CurveDocument::from_legendrian(gamma);
                        doc.name = Some(format!("frame t={t:.6}"));
                        io::write_document(&doc, &dir.join(format!("frame_{k:04}.json")))?;
                    }
                }
            }
        }
        Command::Verify {
            homotopy,
            input_a,
            input_b,
            zero_area,
        } => {
            let h = io::read_homotopy_document(&homotopy)?.to_homotopy(n)?;
            let a = load_curve(&input_a, n, cfg)?;
            let b = load_curve(&input_b, n, cfg)?;
            let report = verify(&h, &a, &b, zero_area, cfg);
            print!("{}", report.summary());
            if !report.pass {
                return Ok(3);
            }
        }
        Command::Render { what } => match what {
            RenderCommand::Front { input, output } => {
                let doc = io::read_curve_document(&input)?;
                let gamma = doc.to_legendrian(n, cfg)?;
                render_front_svg(&gamma, &output, cfg)?;
            }
            RenderCommand::Frames {
                homotopy,
                output,
                format,
            } => {
                let h = io::read_homotopy_document(&homotopy)?.to_homotopy(n)?;
                let format = match format {
                    CliFormat::Csv => FrameFormat::Csv,
                    CliFormat::Svg => FrameFormat::Svg,
                };
                render_frames(&h, &output, format, cfg)?;
            }
        },
        Command::Catalog { name, output } => {
            let curve = catalog(&name, n, cfg)?;
            io::write_document(&CurveDocument::from_curve(&curve), &output)?;
        }
    }
    Ok(0)
}

/// Accepts words like `-++-`, `(+,-)`, or `+ - + -`.
fn parse_word(text: &str) -> Result<CuspWord> {
    let letters: Vec<CuspOrientation> = text
        .chars()
        .filter_map(|c| match c {
            '+' => Some(Ok(CuspOrientation::Up)),
            '-' => Some(Ok(CuspOrientation::Down)),
            '(' | ')' | ',' | ' ' | '\t' => None,
            other => Some(Err(Error::Precondition(format!(
                "unexpected character {other:?} in word"
            )))),
        })
        .collect::<Result<_>>()?;
    CuspWord::new(letters, Side::Right)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_parsing_accepts_common_shapes() {
        for text in ["-++-", "(-,+,+,-)", "- + + -"] {
            let w = parse_word(text).unwrap();
            assert_eq!(w.to_string(), "-++-");
        }
        assert!(parse_word("+*-").is_err());
        assert!(parse_word("+").is_err());
    }
}
