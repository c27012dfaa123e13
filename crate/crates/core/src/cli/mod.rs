//! The `subtense` command-line front end.
//!
//! Each subcommand writes one table as CSV (default) or JSON. Exit status
//! is 0 on success, 2 on a usage or domain error, 1 on a numerical failure.

mod table;

use std::ffi::OsString;
use std::f64::consts::FRAC_PI_3;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::geomprob::{
    circle_moments_closed, circle_pdf, dihedral_moments_quad, mc_moments, sphere_pdf, McCase,
    RandomStream,
};
use crate::optimize::{billboard_spills, disk_xmax, rect_lmax, spill_threshold};
use crate::perspective::{
    one_point_cell, polygon_area, quad_area, trapezoid_area, two_point_cell,
};
use crate::specfun::QuadratureSpec;
use crate::subtense::{billboard_solid_angle, disk_solid_angle, wall_angle, wall_optimum, WallScene};

pub use table::{format_number, Column, Style, Table};

#[derive(Debug, Parser)]
#[command(name = "subtense", version, about = "Apparent size: solid angles, optima and moments")]
#[command(allow_negative_numbers = true)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the table here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Significant digits.
    #[arg(long, global = true, default_value_t = 15, value_parser = clap::value_parser!(u8).range(6..=17))]
    precision: u8,
    /// Show planar angles in degrees.
    #[arg(long, global = true)]
    degrees: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strip {
    OnePoint,
    TwoPoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KeyholeCase {
    Circle,
    Sphere,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MonteCarloCase {
    Circle,
    Sphere,
    /// Right angle, C = (0, 1, 0).
    DihedralRight,
    /// Angle π/3, C = (1/2, √3/2, 0).
    DihedralThird,
    /// Disk of diameter 1 seen from the unit sphere.
    Disk,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solid angle of a unit disk at offset r and distance x.
    DiskOmega {
        #[arg(long)]
        r: f64,
        #[arg(long)]
        x: f64,
    },
    /// Solid angle of a unit disk along an x grid, for each offset r.
    DiskCurve {
        #[arg(long, value_delimiter = ',', default_value = "0.8,0.9,1,1.1")]
        r: Vec<f64>,
        #[command(flatten)]
        grid: Grid,
    },
    /// Distance maximizing the disk's solid angle, for each offset r > 1.
    DiskXmax {
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<f64>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Solid angle of the billboard of length l at offset r, distance x.
    RectOmega {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        l: f64,
    },
    /// Optimal billboard length for each offset r.
    RectLmax {
        #[arg(long, default_value_t = 1.0)]
        x: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<f64>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Offset beyond which the optimal billboard crosses y = 0.
    Spill {
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Angle subtended by the wall segment; the optimum when --x is omitted.
    Wall {
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<f64>,
        #[arg(long)]
        x: Option<f64>,
    },
    /// Keyhole-angle moments: closed forms and quadrature.
    KeyholeMoments,
    /// Keyhole-angle density on a grid over its support.
    KeyholePdf {
        #[arg(long = "case", value_enum, default_value_t = KeyholeCase::Circle)]
        case: KeyholeCase,
        #[arg(long, default_value_t = 100)]
        points: usize,
    },
    /// Moments of the apparent size of a base angle a, by quadrature.
    Dihedral {
        #[arg(long, value_delimiter = ',', default_values_t = [FRAC_PI_3])]
        a: Vec<f64>,
    },
    /// Strip-cell areas: closed form and shoelace of the projected corners.
    Perspective {
        #[arg(long, value_enum)]
        strip: Strip,
        /// Single index or inclusive range `lo..hi`.
        #[arg(long, default_value = "1..5", value_parser = parse_range)]
        k: (u64, u64),
    },
    /// Seeded Monte Carlo moments, one row per substream.
    Mc(McArgs),
}

#[derive(Debug, Args)]
struct Grid {
    #[arg(long, default_value_t = 0.05)]
    x_min: f64,
    #[arg(long, default_value_t = 3.0)]
    x_max: f64,
    #[arg(long, default_value_t = 60)]
    x_points: usize,
}

#[derive(Debug, Args)]
struct McArgs {
    #[arg(long = "case", value_enum)]
    case: MonteCarloCase,
    #[arg(long, env = "SUBTENSE_SEED", default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    substreams: u64,
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("bad index {t:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let k = parse(s)?;
            (k, k)
        }
    };
    if lo < 1 || lo > hi {
        return Err(format!("need 1 <= lo <= hi, got {s:?}"));
    }
    Ok((lo, hi))
}

fn grid(g: &Grid) -> Result<Vec<f64>, Error> {
    if !(g.x_min >= 0.0 && g.x_min < g.x_max && g.x_points >= 2) {
        return Err(Error::domain("disk-curve", "need 0 <= x-min < x-max and x-points >= 2"));
    }
    let h = (g.x_max - g.x_min) / (g.x_points - 1) as f64;
    Ok((0..g.x_points)
        .map(|i| if i + 1 == g.x_points { g.x_max } else { g.x_min + h * i as f64 })
        .collect())
}

fn execute(cmd: &Command) -> Result<Table, Error> {
    let mut t;
    match cmd {
        Command::DiskOmega { r, x } => {
            t = Table::new(vec![Column::named("r_radii"), Column::named("x_radii"), Column::sr("omega")]);
            t.push(vec![*r, *x, disk_solid_angle(*r, *x)?]);
        }
        Command::DiskCurve { r, grid: g } => {
            t = Table::new(vec![Column::named("r_radii"), Column::named("x_radii"), Column::sr("omega")]);
            let xs = grid(g)?;
            for &ri in r {
                for &x in &xs {
                    t.push(vec![ri, x, disk_solid_angle(ri, x)?]);
                }
            }
        }
        Command::DiskXmax { r, tol } => {
            t = Table::new(vec![
                Column::named("r_radii"),
                Column::named("xmax_radii"),
                Column::sr("omega_max"),
                Column::named("bracket_radii"),
            ]);
            t.param("tol", *tol);
            for &ri in r {
                let o = disk_xmax(ri, *tol)?;
                t.push(vec![ri, o.argmax, o.value, o.bracket]);
            }
        }
        Command::RectOmega { x, r, l } => {
            t = Table::new(vec![
                Column::named("x_units"),
                Column::named("r_units"),
                Column::named("l_units"),
                Column::sr("omega"),
            ]);
            t.push(vec![*x, *r, *l, billboard_solid_angle(*x, *r, *l)?]);
        }
        Command::RectLmax { x, r, tol } => {
            t = Table::new(vec![
                Column::named("x_units"),
                Column::named("r_units"),
                Column::named("lmax_units"),
                Column::sr("omega_max"),
                Column::named("at_boundary_flag"),
                Column::named("spills_flag"),
            ]);
            t.param("tol", *tol);
            for &ri in r {
                let o = rect_lmax(*x, ri, *tol)?;
                let flag = |b: bool| if b { 1.0 } else { 0.0 };
                t.push(vec![*x, ri, o.argmax, o.value, flag(o.at_boundary), flag(billboard_spills(ri, o.argmax))]);
            }
        }
        Command::Spill { tol } => {
            t = Table::new(vec![Column::named("r_threshold_units")]);
            t.param("x", 1.0).param("tol", *tol);
            t.push(vec![spill_threshold(*tol)?]);
        }
        Command::Wall { r, x } => {
            t = Table::new(vec![Column::named("r_units"), Column::named("x_units"), Column::rad("angle")]);
            t.param("optimum", x.is_none());
            for &ri in r {
                let (xi, angle) = match x {
                    Some(x) => (*x, wall_angle(&WallScene::new(ri, *x)?)?),
                    None => wall_optimum(ri)?,
                };
                t.push(vec![ri, xi, angle]);
            }
        }
        Command::KeyholeMoments => {
            t = Table::new(vec![
                Column::rad("circle_mean_closed"),
                Column::rad2("circle_second_closed"),
                Column::rad("circle_mean_quad"),
                Column::rad2("circle_second_quad"),
                Column::rad("sphere_mean_quad"),
                Column::rad2("sphere_second_quad"),
            ]);
            let spec = QuadratureSpec::with_tol(1e-12);
            let (m1, m2) = circle_moments_closed();
            let (c, s) = (circle_pdf(), sphere_pdf());
            t.push(vec![
                m1,
                m2,
                c.mean(&spec)?,
                c.second_moment(&spec)?,
                s.mean(&spec)?,
                s.second_moment(&spec)?,
            ]);
        }
        Command::KeyholePdf { case, points } => {
            if *points < 1 {
                return Err(Error::domain("keyhole-pdf", "need at least one point"));
            }
            t = Table::new(vec![Column::rad("omega"), Column::per_rad("pdf")]);
            let d = match case {
                KeyholeCase::Circle => circle_pdf(),
                KeyholeCase::Sphere => sphere_pdf(),
            };
            t.param("case", format!("{case:?}").to_lowercase());
            let h = d.support_hi / *points as f64;
            for i in 0..*points {
                let w = (i as f64 + 0.5) * h;
                t.push(vec![w, d.eval(w)]);
            }
        }
        Command::Dihedral { a } => {
            t = Table::new(vec![Column::rad("a"), Column::rad("mean"), Column::rad2("second_moment")]);
            let spec = QuadratureSpec::with_tol(1e-10);
            for &ai in a {
                let (m1, m2) = dihedral_moments_quad(ai, &spec)?;
                t.push(vec![ai, m1, m2]);
            }
        }
        Command::Perspective { strip, k } => {
            t = Table::new(vec![
                Column::named("k_index"),
                Column::named("area_closed_units2"),
                Column::named("area_shoelace_units2"),
            ]);
            t.param("strip", if *strip == Strip::OnePoint { "one-point" } else { "two-point" });
            for ki in k.0..=k.1 {
                let (closed, poly) = match strip {
                    Strip::OnePoint => (trapezoid_area(ki)?, one_point_cell(ki)?),
                    Strip::TwoPoint => (quad_area(ki)?, two_point_cell(ki)?),
                };
                t.push(vec![ki as f64, closed, polygon_area(&poly)]);
            }
        }
        Command::Mc(args) => {
            let (case, name) = match args.case {
                MonteCarloCase::Circle => (McCase::Circle, "circle"),
                MonteCarloCase::Sphere => (McCase::Sphere, "sphere"),
                MonteCarloCase::DihedralRight => (McCase::Dihedral([0.0, 1.0, 0.0]), "dihedral-right"),
                MonteCarloCase::DihedralThird => {
                    (McCase::Dihedral([0.5, 3f64.sqrt() / 2.0, 0.0]), "dihedral-third")
                }
                MonteCarloCase::Disk => (McCase::DiskFromSphere, "disk"),
            };
            let solid = case == McCase::DiskFromSphere;
            let (m, m2) = if solid {
                (Column::sr("mean"), Column::named("second_moment_sr2"))
            } else {
                (Column::rad("mean"), Column::rad2("second_moment"))
            };
            let (se, se2) = if solid {
                (Column::sr("se_mean"), Column::named("se_second_sr2"))
            } else {
                (Column::rad("se_mean"), Column::rad2("se_second"))
            };
            t = Table::new(vec![
                Column::named("substream_index"),
                Column::named("samples_count"),
                m,
                se,
                m2,
                se2,
                Column::named("resampled_count"),
            ]);
            t.param("case", name).param("seed", args.seed);
            if args.substreams < 1 {
                return Err(Error::domain("mc", "need at least one substream"));
            }
            for s in 0..args.substreams {
                let r = mc_moments(case, args.samples, RandomStream::new(args.seed, s))?;
                t.push(vec![
                    s as f64,
                    r.n_samples as f64,
                    r.mean,
                    r.se_mean,
                    r.second_moment,
                    r.se_second,
                    r.resampled as f64,
                ]);
            }
        }
    }
    Ok(t)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain { .. } => 2,
        _ => 1,
    }
}

/// Parse `args` (program name first), run the subcommand and write its table
/// to `out` (or to `--output`). Diagnostics go to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let table = match execute(&cli.command) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "subtense: {e}");
            return exit_code(&e);
        }
    };
    let text = table.render(Style {
        json: cli.format == Format::Json,
        precision: cli.precision as usize,
        degrees: cli.degrees,
    });
    let written = match &cli.output {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => out.write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "subtense: cannot write output: {e}");
            1
        }
    }
}

/// Entry point used by the binary.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
