mod suites;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use orthodim::algebra::FieldSpec;
use orthodim::certificates::{cochordal_no_certificate, split_no_certificate, split_no_certificate_anisotropic, verify_certificate};
use orthodim::gen::{gen_random, GenConfig};
use orthodim::io::{parse_instance, serialize_instance, InstanceFile};
use orthodim::kernels::{kernel_general, kernel_hereditary, kernel_real, KernelAlgorithm, DEFAULT_PATTERN_CAP};
use orthodim::reductions::{col_to_od_path, col_to_od_vc};
use orthodim::solver::{decide_od, decide_subchoose, emit_etr_system, fpt_decide_vc, SearchLimits, DEFAULT_NODE_BUDGET};
use orthodim::{Error, Family, Graph};

/// Orthogonality dimension of graphs: deciders, kernels, reductions and
/// NO-certificates over small prime fields.
#[derive(Parser)]
#[command(name = "orthodim", version)]
struct Cli {
    /// Search-node budget for every exhaustive search.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide od_F(G) <= d and print YES or NO.
    Decide {
        file: PathBuf,
        #[arg(long)]
        field: Option<FieldSpec>,
        #[arg(long)]
        d: Option<usize>,
        /// Use the modulator lines as a vertex cover and run the cover decider.
        #[arg(long)]
        fpt: bool,
        /// Write the witness representation here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the polynomial system over the reals to this file.
        #[arg(long)]
        etr: Option<PathBuf>,
    },
    /// Shrink G to a kernel and print the size report as JSON.
    Kernelize {
        file: PathBuf,
        #[arg(long, default_value = "general")]
        alg: KernelAlgorithm,
        #[arg(long)]
        d: Option<usize>,
        /// Family of G minus the modulator (hereditary kernel only).
        #[arg(long, default_value = "empty")]
        family: Family,
        /// Largest outside pattern considered (hereditary kernel only).
        #[arg(long, default_value_t = 1)]
        g: usize,
        /// Use a minimum vertex cover when the file has no modulator.
        #[arg(long)]
        auto_cover: bool,
        /// Exit with status 1 if the kernel exceeds its bound.
        #[arg(long)]
        k_check: bool,
        /// Write the kernel graph here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Transform a coloring instance into an orthogonality-dimension instance.
    Reduce {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        d: usize,
        /// The modulator leaves a path rather than an independent set (d = 3).
        #[arg(long)]
        path: bool,
        #[arg(long)]
        auto_cover: bool,
        /// Write the transformed graph here; the sidecar JSON goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract a small NO sub-instance from a list instance.
    Certify {
        file: PathBuf,
        #[arg(long)]
        field: Option<FieldSpec>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value = "union-split")]
        family: Family,
        /// Use the removal rule for spaces without self-orthogonal vectors.
        #[arg(long)]
        anisotropic: bool,
        /// Write the sub-instance file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a randomized oracle-equivalence suite and print pass counts.
    Verify {
        #[arg(long)]
        suite: suites::Suite,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "gf2")]
        field: FieldSpec,
        #[arg(long, default_value_t = 3)]
        d: usize,
    },
    /// Write a random instance with a planted modulator.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "empty")]
        family: Family,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Lib(Error),
    Io(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Run = Result<(), Failure>;

fn read_instance(path: &Path) -> Result<InstanceFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(parse_instance(&text)?)
}

fn write_file(path: &Path, text: &str) -> Run {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Run {
    match out {
        Some(p) => write_file(p, text),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn need_d(flag: Option<usize>, file: &InstanceFile) -> Result<usize, Failure> {
    flag.or(file.d).ok_or_else(|| Error::InvalidParameter("no dimension: pass --d or add a `d` line".into()).into())
}

fn modulator(file: &InstanceFile, auto_cover: bool, budget: u64) -> Result<Vec<usize>, Failure> {
    match (&file.modulator, auto_cover) {
        (Some(x), _) => Ok(x.clone()),
        (None, true) => {
            let cap = usize::try_from(budget).unwrap_or(usize::MAX);
            file.graph
                .min_vertex_cover(cap)
                .ok_or_else(|| Error::CapExceeded("minimum vertex cover".into()).into())
        }
        (None, false) => Err(Error::InvalidParameter("no modulator: add `x` lines or pass --auto-cover".into()).into()),
    }
}

fn with_modulator(graph: &Graph, x: &[usize]) -> InstanceFile {
    let mut f = InstanceFile::from_graph(graph.clone());
    f.modulator = Some(x.to_vec());
    f
}

fn run(cli: Cli) -> Run {
    let limits = SearchLimits::with_budget(cli.budget);
    match cli.command {
        Command::Decide { file, field, d, fpt, out, etr } => {
            let inst = read_instance(&file)?;
            let d = need_d(d, &inst)?;
            if let Some(path) = etr {
                write_file(&path, &emit_etr_system(&inst.graph, d))?;
            }
            let spec = field.or(inst.field).unwrap_or(FieldSpec::Prime(2));
            let f = spec.prime_field()?;
            let rep = if !inst.lists.is_empty() {
                decide_subchoose(&inst.subchoose(Some(d), Some(spec))?, &limits)?
            } else if fpt {
                let x = inst.modulator.clone().ok_or(Error::NotVertexCover)?;
                fpt_decide_vc(&inst.graph, &x, d, f, &limits)?
            } else {
                decide_od(&inst.graph, d, f, &limits)?
            };
            match rep {
                Some(rep) => {
                    println!("YES");
                    emit(out.as_deref(), &rep.to_json().to_string())
                }
                None => {
                    println!("NO");
                    Ok(())
                }
            }
        }
        Command::Kernelize { file, alg, d, family, g, auto_cover, k_check, out } => {
            let inst = read_instance(&file)?;
            let d = need_d(d, &inst)?;
            let x = modulator(&inst, auto_cover, cli.budget)?;
            let kernel = match alg {
                KernelAlgorithm::General => kernel_general(&inst.graph, &x, d)?,
                KernelAlgorithm::Real => kernel_real(&inst.graph, &x, d)?,
                KernelAlgorithm::Hereditary => kernel_hereditary(&inst.graph, &x, d, family, g, DEFAULT_PATTERN_CAP)?,
            };
            if let Some(path) = out {
                write_file(&path, &serialize_instance(&with_modulator(&kernel.graph, &kernel.modulator)))?;
            }
            println!("{}", kernel.report.to_json());
            if k_check && !kernel.report.within_bound {
                return Err(Failure::Check(format!("kernel has {} vertices, bound {}", kernel.report.n_out, kernel.report.bound)));
            }
            Ok(())
        }
        Command::Reduce { file, d, path, auto_cover, out } => {
            let inst = read_instance(&file)?;
            let x = modulator(&inst, auto_cover && !path, cli.budget)?;
            let red = if path { col_to_od_path(&inst.graph, &x)? } else { col_to_od_vc(&inst.graph, &x, d)? };
            if let Some(p) = out {
                let mut f = with_modulator(&red.graph, &red.modulator);
                f.d = Some(red.d);
                write_file(&p, &serialize_instance(&f))?;
            }
            println!("{}", red.to_json());
            Ok(())
        }
        Command::Certify { file, field, d, family, anisotropic, out } => {
            let inst = read_instance(&file)?.subchoose(d, field)?;
            let witness = match (family, anisotropic) {
                (Family::UnionSplit | Family::Split, false) => split_no_certificate(&inst, &limits)?,
                (Family::UnionSplit | Family::Split, true) => split_no_certificate_anisotropic(&inst, &limits)?,
                (Family::UnionCochordal | Family::Cochordal, _) => cochordal_no_certificate(&inst, &limits)?,
                (other, _) => return Err(Error::InvalidParameter(format!("no certificate extractor for family {other}")).into()),
            };
            let check = verify_certificate(&inst, &witness, &limits)?;
            if let Some(p) = out {
                let mut f = InstanceFile::from_graph(witness.instance.graph.clone());
                f.set_lists(&witness.instance);
                write_file(&p, &serialize_instance(&f))?;
            }
            println!("{}", witness.to_json(check.valid()));
            if !check.valid() {
                return Err(Failure::Check(format!("certificate failed verification: {check:?}")));
            }
            Ok(())
        }
        Command::Verify { suite, trials, seed, field, d } => {
            let report = suites::run_suite(suite, trials, seed, field.prime_field()?, d, &limits);
            println!("{}/{} {}", report.passed, report.trials, suite.noun());
            for (trial, why) in &report.failures {
                println!("trial {trial}: {why}");
            }
            if report.passed != report.trials {
                return Err(Failure::Check(format!("{} trials failed", report.trials - report.passed)));
            }
            Ok(())
        }
        Command::Gen { n, k, family, density, seed, out } => {
            let inst = gen_random(&GenConfig::new(n, k, family, density, seed))?;
            let text = serialize_instance(&with_modulator(&inst.graph, &inst.modulator));
            match out {
                Some(p) => write_file(&p, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(Error::CapExceeded(msg))) => {
            eprintln!("error: search cap exceeded: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
