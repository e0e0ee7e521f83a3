use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use orbitq::group::{act_point, random_orthogonal, random_special};
use orbitq::io::{group_to_json, parse_group, parse_point, point_to_json, quotient_to_json};
use orbitq::oracle::{alignment_search, signature, AlignGroup};
use orbitq::par::Mode;
use orbitq::sample::{random_point, rng_from_seed};
use orbitq::verify::{run_all, Suite, VerifyConfig};
use orbitq::{dim_v, evaluate, Error, Field, ReprPoint, Result};

#[derive(Parser)]
#[command(
    name = "orbitq",
    version,
    about = "Orbit-separating quotient maps for O(W) and SO(W) over R and C"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the quotient map on a point file (`-` reads stdin).
    Eval {
        input: PathBuf,
        #[command(flatten)]
        shape: Shape,
    },
    /// Decide whether two points lie in the same orbit.
    OrbitCheck {
        p: PathBuf,
        q: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Also run the alignment search with this many restarts.
        #[arg(long)]
        align: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        shape: Shape,
    },
    /// Draw random points or group elements.
    Sample {
        #[command(subcommand)]
        what: SampleKind,
    },
    /// Apply a group element to a point.
    Act { group: PathBuf, point: PathBuf },
    /// Run property suites and report pass/fail.
    Verify {
        /// Suite name, `orbit-invariance` or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_parser = Field::from_str)]
        field: Option<Field>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Trials per case; each suite has its own default.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        sequential: bool,
        /// Print full JSON reports instead of summary lines.
        #[arg(long)]
        json: bool,
    },
    /// Print the output dimension for a configuration.
    Dims {
        #[arg(long, value_parser = Field::from_str)]
        field: Field,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

/// Optional expected configuration; a point file that disagrees is rejected.
#[derive(Args)]
struct Shape {
    #[arg(long, value_parser = Field::from_str)]
    field: Option<Field>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
}

impl Shape {
    fn check(&self, p: &ReprPoint) -> Result<()> {
        let ok = self.field.map_or(true, |f| f == p.field)
            && self.n.map_or(true, |n| n == p.n())
            && self.k.map_or(true, |k| k == p.k());
        if !ok {
            return Err(Error::InvalidInput(format!(
                "point has field {}, n = {}, k = {}, which does not match the requested configuration",
                p.field,
                p.n(),
                p.k()
            )));
        }
        Ok(())
    }
}

#[derive(Subcommand)]
enum SampleKind {
    Point {
        #[arg(long, value_parser = Field::from_str)]
        field: Field,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Group {
        #[arg(long, value_parser = Field::from_str)]
        field: Field,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    SpecialGroup {
        #[arg(long, value_parser = Field::from_str)]
        field: Field,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read_input(path: &Path) -> Result<String> {
    let mut text = String::new();
    let res = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    Ok(text)
}

fn check_config(k: usize, n: usize) -> Result<()> {
    if !(1..=2).contains(&k) || n + k < 2 {
        return Err(Error::InvalidInput(format!(
            "unsupported configuration n = {n}, k = {k}"
        )));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Eval { input, shape } => {
            let p = parse_point(&read_input(&input)?)?;
            shape.check(&p)?;
            println!("{}", quotient_to_json(&evaluate(&p)?));
        }
        Command::OrbitCheck {
            p,
            q,
            tol,
            align,
            seed,
            shape,
        } => {
            let p = parse_point(&read_input(&p)?)?;
            let q = parse_point(&read_input(&q)?)?;
            shape.check(&p)?;
            if (p.field, p.n(), p.k()) != (q.field, q.n(), q.k()) {
                return Err(Error::InvalidInput("points belong to different configurations".into()));
            }
            let (vp, vq) = (evaluate(&p)?, evaluate(&q)?);
            let distance = vp.max_diff(&vq);
            let (sp, sq) = (signature(&p)?, signature(&q)?);
            let mut certificates = json!({
                "signature": sp.distance(&sq),
                "spectrum": sp.spectrum_distance(&sq),
                "moments": sp.moment_distance(&sq),
            });
            if let Some(restarts) = align {
                let group = if p.k() == 1 {
                    AlignGroup::Special
                } else {
                    AlignGroup::Orthogonal
                };
                certificates["alignment"] = json!(alignment_search(&p, &q, restarts, seed, group));
            }
            let verdict = json!({
                "same_orbit": vp.approx_eq(&vq, tol),
                "distance": distance,
                "certificates": certificates,
            });
            println!("{verdict}");
        }
        Command::Sample { what } => match what {
            SampleKind::Point { field, n, k, seed } => {
                check_config(k, n)?;
                println!(
                    "{}",
                    point_to_json(&random_point(field, n, k, &mut rng_from_seed(seed)))
                );
            }
            SampleKind::Group { field, n, seed } => println!("{}", group_to_json(&random_orthogonal(field, n, seed))),
            SampleKind::SpecialGroup { field, n, seed } => {
                println!("{}", group_to_json(&random_special(field, n, seed)))
            }
        },
        Command::Act { group, point } => {
            let g = parse_group(&read_input(&group)?)?;
            let p = parse_point(&read_input(&point)?)?;
            if g.dim() != p.n() || g.field() != p.field {
                return Err(Error::InvalidInput("group element does not act on this point".into()));
            }
            println!("{}", point_to_json(&act_point(&g, &p)));
        }
        Command::Verify {
            suite,
            field,
            n,
            k,
            trials,
            seed,
            sequential,
            json,
        } => {
            let suites = Suite::group(&suite)?;
            let cfg = VerifyConfig {
                seed,
                trials,
                field,
                n,
                k,
                mode: if sequential { Mode::Sequential } else { Mode::Parallel },
            };
            let reports = run_all(&suites, &cfg);
            for r in &reports {
                if json {
                    println!("{}", serde_json::to_string(r).expect("report serialization"));
                } else {
                    println!("{}", r.summary_line());
                }
            }
            if !reports.iter().all(|r| r.passed) {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Dims { field, n, k } => {
            check_config(k, n)?;
            println!("{}", json!({ "dim_V": dim_v(field, k, n), "has_nu": k == 1 }));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
