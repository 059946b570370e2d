use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use quasi_nichols::cocycles::{enumerate_cocycles, solve_coboundary, Associator, Cochain2, Cocycle3};
use quasi_nichols::dynkin::{bosonization_dimension, is_finite_type, Caps, DynkinDiagram, Verdict};
use quasi_nichols::groups::{FinAbGroup, GroupHom, Section};
use quasi_nichols::oracle::{Symmetrizers, DEFAULT_BUDGET};
use quasi_nichols::ydmod::{SimpleYDSpec, YDModule};

mod relations;

/// Twisted Yetter-Drinfeld modules and Nichols algebras over finite abelian groups.
///
/// Inputs are JSON files; `-` reads standard input. Results go to standard output.
#[derive(Parser)]
#[command(name = "qnichols", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a group: order, exponent and its hat group.
    Group {
        group: PathBuf,
        /// Also list the elements in lexicographic order.
        #[arg(long)]
        elements: bool,
    },
    /// Enumerate the representative 3-cocycles of a group.
    Cocycles(CocycleArgs),
    #[command(subcommand)]
    Module(ModuleCommand),
    #[command(subcommand)]
    Twist(TwistCommand),
    /// Re-house a module along an epimorphism with a section.
    ChangeBase {
        #[arg(long)]
        module: PathBuf,
        /// Use the canonical projection from the hat group.
        #[arg(long, conflicts_with_all = ["pi", "iota"])]
        hat: bool,
        #[arg(long, requires = "iota")]
        pi: Option<PathBuf>,
        #[arg(long, requires = "pi")]
        iota: Option<PathBuf>,
    },
    /// Decide whether the Nichols algebra of a module is finite dimensional.
    Classify {
        module: PathBuf,
        #[command(flatten)]
        caps: CapArgs,
        /// Include the Dynkin diagram in DOT format.
        #[arg(long)]
        dot: bool,
    },
    /// Graded dimensions of the Nichols algebra from quantum symmetrizers.
    Oracle {
        module: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Tensor elements to test for membership in the Nichols ideal.
        #[arg(long)]
        relations: Option<PathBuf>,
        /// Largest tensor power dimension to build.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Dynkin diagram of a module with a standard basis, in DOT format.
    Diagram { module: PathBuf },
}

#[derive(Args)]
struct CocycleArgs {
    group: PathBuf,
    /// List every cocycle (the default).
    #[arg(long)]
    enumerate: bool,
    /// Check the 3-cocycle identity exhaustively.
    #[arg(long)]
    verify: bool,
    /// Report whether the cocycle is abelian on the whole group.
    #[arg(long)]
    abelian: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Refuse to enumerate more cocycles than this.
    #[arg(long, default_value_t = 100_000)]
    limit: u128,
}

#[derive(Args)]
struct CapArgs {
    #[arg(long, default_value_t = Caps::default().max_objects)]
    max_objects: usize,
    #[arg(long, default_value_t = Caps::default().max_roots)]
    max_roots: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum ModuleCommand {
    /// Build a simple module from an associator and a spec.
    Simple {
        #[arg(long)]
        associator: PathBuf,
        #[arg(long)]
        spec: PathBuf,
    },
    /// Direct sum of modules over the same group and associator.
    Sum {
        #[arg(required = true)]
        modules: Vec<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TwistCommand {
    /// Find a 2-cochain `J` with `∂J` equal to the associator.
    SolveJ {
        associator: PathBuf,
        /// Pull the associator back to the hat group first.
        #[arg(long)]
        hat: bool,
    },
    /// Twist a module by a 2-cochain.
    Apply {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        cochain: PathBuf,
    },
}

fn read_json<T: DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit<T: Serialize>(value: &T) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn cocycle_count(g: &FinAbGroup) -> u128 {
    Cocycle3::param_ranges(g)
        .iter()
        .fold(1u128, |acc, &r| acc.saturating_mul(r as u128))
}

fn cmd_cocycles(a: &CocycleArgs) -> anyhow::Result<()> {
    let g: FinAbGroup = read_json(&a.group)?;
    let count = cocycle_count(&g);
    if count > a.limit {
        return Err(quasi_nichols::Error::BudgetExceeded {
            size: count,
            budget: a.limit,
        }
        .into());
    }
    let rows: Vec<Value> = enumerate_cocycles(&g)
        .map(|c| {
            let phi = Associator::from(c.clone());
            let mut row = json!({ "cocycle": c });
            if a.verify {
                row["verified"] = json!(phi.verify());
            }
            if a.abelian {
                row["abelian"] = json!(phi.is_abelian_on_group());
            }
            row
        })
        .collect();
    match a.format {
        Format::Json => emit(&rows),
        Format::Table => {
            let mut out = io::stdout().lock();
            let mut header = vec!["c".to_string(), "c2".into(), "c3".into()];
            if a.verify {
                header.push("verified".into());
            }
            if a.abelian {
                header.push("abelian".into());
            }
            writeln!(out, "{}", header.join("\t"))?;
            for c in enumerate_cocycles(&g) {
                let list = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
                let mut cells = vec![list(c.c1()), list(c.c2()), list(c.c3())];
                let phi = Associator::from(c);
                if a.verify {
                    cells.push(phi.verify().to_string());
                }
                if a.abelian {
                    cells.push(phi.is_abelian_on_group().to_string());
                }
                writeln!(out, "{}", cells.join("\t"))?;
            }
            Ok(())
        }
    }
}

fn cmd_classify(path: &Path, caps: &CapArgs, dot: bool) -> anyhow::Result<()> {
    let v: YDModule = read_json(path)?;
    let caps = Caps {
        max_objects: caps.max_objects,
        max_roots: caps.max_roots,
    };
    let report = is_finite_type(&v, caps);
    let mut out = json!({
        "standard_basis": report.standard_basis,
        "verdict": report.verdict,
        "certificate": report.certificate,
        "status": u8::from(report.verdict == Verdict::Inconclusive),
    });
    if let Some(b) = &report.bicharacter {
        out["bicharacter"] = json!(b);
    }
    if let Some(r) = &report.positive_roots {
        out["positive_roots"] = json!(r);
    }
    if let Some(h) = &report.heights {
        out["heights"] = json!(h);
    }
    if let Some(d) = report.dim_b {
        out["dim_B"] = json!(d.to_string());
        out["dim_bosonization"] = json!(bosonization_dimension(&v, caps)?.to_string());
    }
    if dot {
        if let Some(sb) = v.has_standard_basis() {
            out["dot"] = json!(DynkinDiagram::from_standard_basis(&sb).to_dot());
        }
    }
    emit(&out)
}

fn cmd_oracle(
    path: &Path,
    max_degree: usize,
    rel_path: Option<&Path>,
    budget: u128,
) -> anyhow::Result<()> {
    let v: YDModule = read_json(path)?;
    let rels: Vec<relations::Relation> = match rel_path {
        Some(p) => read_json(p)?,
        None => Vec::new(),
    };
    let elements = rels
        .iter()
        .map(|r| r.expr.eval(&v))
        .collect::<quasi_nichols::Result<Vec<_>>>()?;
    let top = elements
        .iter()
        .map(|x| x.degree())
        .fold(max_degree, usize::max);
    let sym = Symmetrizers::new(&v, top, budget)?;
    let reports: Vec<_> = (0..=max_degree).map(|n| sym.report(n)).collect();
    let membership = rels
        .iter()
        .zip(&elements)
        .map(|(r, x)| {
            Ok(json!({
                "name": r.name,
                "degree": x.degree(),
                "in_ideal": sym.in_kernel(x)?,
            }))
        })
        .collect::<quasi_nichols::Result<Vec<_>>>()?;
    let mut out = json!({
        "hilbert": reports.iter().map(|r| r.graded_dim).collect::<Vec<_>>(),
        "degrees": reports,
    });
    if rel_path.is_some() {
        out["relations"] = json!(membership);
    }
    emit(&out)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Group { group, elements } => {
            let g: FinAbGroup = read_json(&group)?;
            let mut out = json!({
                "factors": g.factors(),
                "order": g.order(),
                "exponent": g.exponent(),
                "hat": g.hat_group().hat,
            });
            if elements {
                out["elements"] = json!(g.elements());
            }
            emit(&out)
        }
        Command::Cocycles(a) => cmd_cocycles(&a),
        Command::Module(ModuleCommand::Simple { associator, spec }) => {
            let phi: Associator = read_json(&associator)?;
            let spec: SimpleYDSpec = read_json(&spec)?;
            emit(&spec.build(&phi)?)
        }
        Command::Module(ModuleCommand::Sum { modules }) => {
            let parts = modules
                .iter()
                .map(|p| read_json::<YDModule>(p))
                .collect::<anyhow::Result<Vec<_>>>()?;
            emit(&YDModule::direct_sum(&parts)?)
        }
        Command::Twist(TwistCommand::SolveJ { associator, hat }) => {
            let mut phi: Associator = read_json(&associator)?;
            if hat {
                phi = phi.pullback(&phi.group().hat_group().pi)?;
            }
            emit(&solve_coboundary(&phi)?)
        }
        Command::Twist(TwistCommand::Apply { module, cochain }) => {
            let v: YDModule = read_json(&module)?;
            let j: Cochain2 = read_json(&cochain)?;
            emit(&v.twist(&j)?)
        }
        Command::ChangeBase {
            module,
            hat,
            pi,
            iota,
        } => {
            let v: YDModule = read_json(&module)?;
            let w = match (hat, pi, iota) {
                (true, _, _) => v.lift_to_hat()?,
                (false, Some(pi), Some(iota)) => {
                    let pi: GroupHom = read_json(&pi)?;
                    let iota: Section = read_json(&iota)?;
                    v.change_base(&pi, &iota)?
                }
                _ => bail!("give either --hat or both --pi and --iota"),
            };
            emit(&w)
        }
        Command::Classify { module, caps, dot } => cmd_classify(&module, &caps, dot),
        Command::Oracle {
            module,
            max_degree,
            relations,
            budget,
        } => cmd_oracle(&module, max_degree, relations.as_deref(), budget),
        Command::Diagram { module } => {
            let v: YDModule = read_json(&module)?;
            let Some(sb) = v.has_standard_basis() else {
                bail!("module has no standard basis");
            };
            print!("{}", DynkinDiagram::from_standard_basis(&sb).to_dot());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let budget = e.chain().any(|c| {
                matches!(
                    c.downcast_ref::<quasi_nichols::Error>(),
                    Some(quasi_nichols::Error::BudgetExceeded { .. })
                )
            });
            ExitCode::from(if budget { 3 } else { 2 })
        }
    }
}
