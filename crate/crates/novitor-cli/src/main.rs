//! Command-line surface for the mapping-torus cohomology and rigidity
//! engines.
//!
//! Subcommands: `betti | novikov | rigidity | ce | verify`. Models are UTF-8
//! JSON files (see `modelfile`). Exit codes: 0 success (RIGID / PASS),
//! 1 validation failure, 2 unsupported factorization degree or a failed /
//! ambiguous verification, 3 rigidity criterion fails.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;

use novitor_cli::modelfile::{parse_mu, twist_from_file_or_flag, CliError, CliResult, ModelFile};
use novitor::{
    betti_mapping_torus, ce_cohomology, check_rigidity, crosscheck, nilmanifold_model,
    novikov_dims, Verdict,
};

#[derive(Parser)]
#[command(
    name = "novitor",
    version,
    about = "Exact Morse-Novikov cohomology of mapping tori and rigidity of Lie affine foliations"
)]
struct Cli {
    /// Print machine-readable JSON only.
    #[arg(long, global = true)]
    json: bool,
    /// Suppress human-readable output.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Betti numbers of the mapping torus (Wang sequence at mu = 1).
    Betti {
        #[arg(long)]
        input: PathBuf,
    },
    /// Morse-Novikov dimensions for a twist scalar mu != 1.
    Novikov {
        #[arg(long)]
        input: PathBuf,
        /// Twist: `p/q` or `POLY in (lo,hi)`, e.g. `x^2-3x+1 in (2,3)`.
        #[arg(long)]
        mu: String,
    },
    /// Decide the rigidity criterion from the file's rigidity block.
    Rigidity {
        #[arg(long)]
        input: PathBuf,
    },
    /// Chevalley-Eilenberg Betti numbers (and induced maps, when an
    /// automorphism is present) of a Lie-algebra file.
    Ce {
        #[arg(long)]
        input: PathBuf,
    },
    /// Cross-check exact dimensions against the floating-point oracle.
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Twist override; defaults to the file's rigidity block.
        #[arg(long)]
        mu: Option<String>,
        #[arg(long, default_value_t = novitor::oracle::DEFAULT_GRID)]
        grid: usize,
        #[arg(long, default_value_t = novitor::oracle::DEFAULT_TOL)]
        tol: f64,
    },
}

struct Out {
    json: bool,
    quiet: bool,
}

impl Out {
    fn emit(&self, value: serde_json::Value, human: impl FnOnce()) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        } else if !self.quiet {
            human();
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let out = Out {
        json: cli.json,
        quiet: cli.quiet,
    };
    let code = match dispatch(&cli.cmd, &out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}

fn dispatch(cmd: &Cmd, out: &Out) -> CliResult<i32> {
    match cmd {
        Cmd::Betti { input } => cmd_betti(input, out),
        Cmd::Novikov { input, mu } => cmd_novikov(input, mu, out),
        Cmd::Rigidity { input } => cmd_rigidity(input, out),
        Cmd::Ce { input } => cmd_ce(input, out),
        Cmd::Verify {
            input,
            mu,
            grid,
            tol,
        } => cmd_verify(input, mu.as_deref(), *grid, *tol, out),
    }
}

fn cmd_betti(input: &PathBuf, out: &Out) -> CliResult<i32> {
    let file = ModelFile::load(input)?;
    let model = file.build_model()?;
    let betti = betti_mapping_torus(&model);
    out.emit(json!({ "betti": betti }), || {
        println!("Betti numbers of the mapping torus (degrees 0..{}):", betti.len() - 1);
        println!(
            "  {}",
            betti.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
        );
    });
    Ok(0)
}

fn cmd_novikov(input: &PathBuf, mu: &str, out: &Out) -> CliResult<i32> {
    let file = ModelFile::load(input)?;
    let model = file.build_model()?;
    let twist = parse_mu(mu)?;
    let result = novikov_dims(&model, &twist)?;
    out.emit(
        serde_json::to_value(&result).expect("serializable"),
        || {
            println!("Morse-Novikov dimensions for mu = {mu}:");
            println!("  degree   dim K^k  dim C^k  dim H^k");
            for k in 0..result.dim_h.len() {
                let (dk, dc) = if k < result.dim_k.len() {
                    (result.dim_k[k].to_string(), result.dim_c[k].to_string())
                } else {
                    ("-".into(), "-".into())
                };
                println!("  {k:<8} {dk:<8} {dc:<8} {}", result.dim_h[k]);
            }
        },
    );
    Ok(0)
}

fn cmd_rigidity(input: &PathBuf, out: &Out) -> CliResult<i32> {
    let file = ModelFile::load(input)?;
    let spec = file.rigidity_spec()?;
    let report = check_rigidity(&spec)?;
    let block = file.rigidity_block().expect("spec came from the block");
    out.emit(
        json!({
            "input": {
                "h1_map": spec.h1_map(),
                "alpha": block.alpha,
                "mu": spec.mu(),
                "fiber_b1": spec.fiber_b1(),
            },
            "report": report,
        }),
        || {
            println!("{}", report.verdict.describe());
            println!("  dim ker(M - mu I)     = {}", report.dim_eig);
            println!("  dim ker((M - mu I)^2) = {}", report.dim_gen2);
            println!("  alpha in image        = {}", report.alpha_in_image);
            println!("  dim H^1(A)            = {}", report.dim_h1a);
        },
    );
    Ok(match report.verdict {
        Verdict::Rigid => 0,
        Verdict::CriterionFails => 3,
    })
}

fn cmd_ce(input: &PathBuf, out: &Out) -> CliResult<i32> {
    let file = ModelFile::load(input)?;
    let Some(algebra) = file.lie_algebra()? else {
        return Err(CliError::Invalid(
            "ce requires a nilmanifold (Lie-algebra) model file".into(),
        ));
    };
    let cohomology = ce_cohomology(&algebra)?;
    let induced = match &file {
        ModelFile::Nilmanifold {
            automorphism: Some(phi),
            ..
        } => Some(nilmanifold_model(&algebra, phi)?),
        _ => None,
    };
    let mut value = json!({ "betti": cohomology.betti });
    if let Some(model) = &induced {
        value["maps"] = serde_json::to_value(model.maps()).expect("serializable");
    }
    out.emit(value, || {
        println!("Chevalley-Eilenberg Betti numbers:");
        println!(
            "  {}",
            cohomology
                .betti
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        );
        if let Some(model) = &induced {
            println!("Induced maps on cohomology:");
            for (k, m) in model.maps().iter().enumerate() {
                let rows: Vec<String> = (0..m.rows())
                    .map(|i| {
                        let cells: Vec<String> =
                            m.row(i).iter().map(|c| c.to_string()).collect();
                        format!("[{}]", cells.join(", "))
                    })
                    .collect();
                println!("  degree {k}: [{}]", rows.join(", "));
            }
        }
    });
    Ok(0)
}

fn cmd_verify(
    input: &PathBuf,
    mu: Option<&str>,
    grid: usize,
    tol: f64,
    out: &Out,
) -> CliResult<i32> {
    let file = ModelFile::load(input)?;
    let model = file.build_model()?;
    let twist = twist_from_file_or_flag(&file, mu)?;
    let report = crosscheck(&model, &twist, grid, tol)?;
    out.emit(serde_json::to_value(&report).expect("serializable"), || {
        println!("{report}");
    });
    Ok(if report.pass { 0 } else { 2 })
}
