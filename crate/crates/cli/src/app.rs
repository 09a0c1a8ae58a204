//! The `sdrep` command line.
//!
//! Exit codes: 0 for success (and for a member point), 2 when `member`
//! finds the point outside the set, 1 for usage and input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};
use sdrep_core::{
    cone_hull, convex_hull_union, homogenize, intersection, membership_with, minkowski_sum_all,
    product, slice_last_at_one, OracleOptions, Point, SDRep, Status, DEFAULT_RADIUS, DEFAULT_SEED,
    DEFAULT_TOL,
};

use crate::raster;
use crate::repfile::{self, RepFile};
use crate::sdpa;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_MEMBER: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "sdrep",
    version,
    about = "Build and query semidefinite representations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct OracleArgs {
    /// Feasibility tolerance on the margin.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Box radius for the lifted variables.
    #[arg(long, default_value_t = DEFAULT_RADIUS)]
    radius: f64,
    /// Seed for the randomized restart.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

impl OracleArgs {
    fn options(&self) -> anyhow::Result<OracleOptions> {
        if self.tol.is_nan() || self.tol <= 0.0 {
            bail!("--tol must be positive");
        }
        if self.radius.is_nan() || self.radius <= 0.0 {
            bail!("--radius must be positive");
        }
        Ok(OracleOptions::new(self.tol, self.radius).with_seed(self.seed))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print sizes, block layout, labels and provenance.
    Info { file: PathBuf },
    /// Combine representation files.
    Compose {
        #[command(subcommand)]
        op: ComposeOp,
    },
    /// Decide membership of a point.
    Member {
        file: PathBuf,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Write the margin problem at a point in sparse SDPA format.
    ExportSdpa {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Render the margin of a planar set as a PGM image.
    Rasterize {
        file: PathBuf,
        /// `lo:hi`
        #[arg(long, allow_hyphen_values = true)]
        xrange: String,
        /// `lo:hi`
        #[arg(long, allow_hyphen_values = true)]
        yrange: String,
        #[arg(long, default_value_t = 200)]
        res: usize,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Print members drawn uniformly from a box, one per line.
    Sample {
        file: PathBuf,
        #[arg(long)]
        count: usize,
        /// `lo:hi` per coordinate, comma-separated.
        #[arg(long = "box", allow_hyphen_values = true)]
        bounds: String,
        #[command(flatten)]
        oracle: OracleArgs,
    },
}

#[derive(Subcommand, Debug)]
enum ComposeOp {
    ConeHull {
        file: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    Homogenize {
        file: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    Slice {
        file: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    Intersect {
        first: PathBuf,
        second: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    Minkowski {
        #[arg(num_args = 2.., required = true)]
        files: Vec<PathBuf>,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    Product {
        first: PathBuf,
        second: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    ConvUnion {
        #[arg(num_args = 1.., required = true)]
        files: Vec<PathBuf>,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

/// Parses `"a,b,c"`.
pub fn parse_point(s: &str) -> anyhow::Result<Point> {
    let coords = s
        .split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| anyhow!("bad coordinate {t:?} in point {s:?}"))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(Point::new(coords))
}

/// Parses `"lo:hi"` with `lo <= hi`.
pub fn parse_range(s: &str) -> anyhow::Result<(f64, f64)> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| anyhow!("range {s:?} is not of the form lo:hi"))?;
    let lo: f64 = a
        .trim()
        .parse()
        .with_context(|| format!("bad range {s:?}"))?;
    let hi: f64 = b
        .trim()
        .parse()
        .with_context(|| format!("bad range {s:?}"))?;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        bail!("range {s:?} must satisfy lo <= hi");
    }
    Ok((lo, hi))
}

fn load(path: &Path) -> anyhow::Result<RepFile> {
    repfile::load(path).with_context(|| format!("loading {}", path.display()))
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn compose(op: ComposeOp, out: &mut dyn Write) -> anyhow::Result<i32> {
    let (inputs, output, name): (Vec<PathBuf>, PathBuf, &str) = match &op {
        ComposeOp::ConeHull { file, output } => (vec![file.clone()], output.clone(), "cone-hull"),
        ComposeOp::Homogenize { file, output } => {
            (vec![file.clone()], output.clone(), "homogenize")
        }
        ComposeOp::Slice { file, output } => (vec![file.clone()], output.clone(), "slice"),
        ComposeOp::Intersect {
            first,
            second,
            output,
        } => (
            vec![first.clone(), second.clone()],
            output.clone(),
            "intersect",
        ),
        ComposeOp::Minkowski { files, output } => (files.clone(), output.clone(), "minkowski"),
        ComposeOp::Product {
            first,
            second,
            output,
        } => (
            vec![first.clone(), second.clone()],
            output.clone(),
            "product",
        ),
        ComposeOp::ConvUnion { files, output } => (files.clone(), output.clone(), "conv-union"),
    };
    let files = inputs
        .iter()
        .map(|p| load(p))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let reps: Vec<SDRep> = files.iter().map(|f| f.rep.clone()).collect();
    let rep = match op {
        ComposeOp::ConeHull { .. } => cone_hull(&reps[0]),
        ComposeOp::Homogenize { .. } => homogenize(&reps[0]),
        ComposeOp::Slice { .. } => slice_last_at_one(&reps[0])?,
        ComposeOp::Intersect { .. } => intersection(&reps[0], &reps[1])?,
        ComposeOp::Minkowski { .. } => minkowski_sum_all(&reps)?,
        ComposeOp::Product { .. } => product(&reps[0], &reps[1]),
        ComposeOp::ConvUnion { .. } => convex_hull_union(&reps)?,
    };

    let mut provenance = Vec::new();
    for (path, f) in inputs.iter().zip(&files) {
        let src = file_name(path);
        provenance.extend(f.provenance.iter().map(|l| format!("{src}: {l}")));
    }
    let names: Vec<String> = inputs.iter().map(|p| file_name(p)).collect();
    provenance.push(format!("{name}({})", names.join(", ")));

    let file = RepFile { rep, provenance };
    repfile::save(&file, &output).with_context(|| format!("writing {}", output.display()))?;
    writeln!(
        out,
        "wrote {} (k = {}, n = {}, m = {})",
        output.display(),
        file.rep.k(),
        file.rep.n(),
        file.rep.m()
    )?;
    Ok(EXIT_OK)
}

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:?}")).collect();
    format!("[{}]", parts.join(", "))
}

fn execute(cli: Cli, out: &mut dyn Write) -> anyhow::Result<i32> {
    match cli.command {
        Command::Info { file } => {
            let f = load(&file)?;
            let rep = &f.rep;
            writeln!(out, "k: {}", rep.k())?;
            writeln!(out, "n: {}", rep.n())?;
            writeln!(out, "m: {}", rep.m())?;
            let blocks: Vec<String> = rep.blocks().iter().map(|b| b.to_string()).collect();
            writeln!(out, "blocks: [{}]", blocks.join(", "))?;
            writeln!(out, "ambient: {}", rep.labels().ambient.join(", "))?;
            writeln!(out, "lifted: {}", rep.labels().lifted.join(", "))?;
            writeln!(out, "provenance:")?;
            for line in &f.provenance {
                writeln!(out, "  {line}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Compose { op } => compose(op, out),
        Command::Member {
            file,
            point,
            oracle,
        } => {
            let f = load(&file)?;
            let x = parse_point(&point)?;
            let report = membership_with(&f.rep, &x, &oracle.options()?)?;
            writeln!(out, "status: {}", report.status)?;
            writeln!(out, "margin: {:?}", report.margin)?;
            writeln!(out, "upper_bound: {:?}", report.upper_bound)?;
            writeln!(out, "witness: {}", fmt_vec(&report.witness))?;
            writeln!(out, "radius_hit: {}", report.radius_hit)?;
            writeln!(out, "converged: {}", report.converged)?;
            writeln!(out, "iterations: {}", report.iterations)?;
            Ok(match report.status {
                Status::EpsInfeasible => EXIT_NOT_MEMBER,
                _ => EXIT_OK,
            })
        }
        Command::ExportSdpa {
            file,
            point,
            output,
        } => {
            let f = load(&file)?;
            let x = parse_point(&point)?;
            let text = sdpa::export(&f.rep, &x)?;
            std::fs::write(&output, text)
                .with_context(|| format!("writing {}", output.display()))?;
            Ok(EXIT_OK)
        }
        Command::Rasterize {
            file,
            xrange,
            yrange,
            res,
            output,
            oracle,
        } => {
            let f = load(&file)?;
            let xr = parse_range(&xrange)?;
            let yr = parse_range(&yrange)?;
            let margins = raster::margins(&f.rep, xr, yr, res, &oracle.options()?)?;
            std::fs::write(&output, raster::pgm(&margins, res))
                .with_context(|| format!("writing {}", output.display()))?;
            Ok(EXIT_OK)
        }
        Command::Sample {
            file,
            count,
            bounds,
            oracle,
        } => {
            let f = load(&file)?;
            let bounds = bounds
                .split(',')
                .map(parse_range)
                .collect::<anyhow::Result<Vec<_>>>()?;
            let attempts = count.saturating_mul(1000).max(1000);
            let pts = raster::sample(
                &f.rep,
                &bounds,
                count,
                attempts,
                oracle.seed,
                &oracle.options()?,
            )?;
            for p in &pts {
                let parts: Vec<String> = p.coords().iter().map(|v| format!("{v:?}")).collect();
                writeln!(out, "{}", parts.join(","))?;
            }
            if pts.len() < count {
                bail!(
                    "found only {} of {count} members after {attempts} draws",
                    pts.len()
                );
            }
            Ok(EXIT_OK)
        }
    }
}

/// Runs the command line with explicit arguments and output streams.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_ERROR,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}
