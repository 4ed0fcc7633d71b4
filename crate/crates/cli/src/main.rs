use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use reltutte::random::RandomInstanceSpec;
use reltutte::suite::{render_summary, run_suites, SuiteConfig};
use reltutte::{
    parse_graph, pointed_polys, print_graph, tensor_product, tutte_recursive, universal_tutte_statesum, Color,
    ColoredMultigraph, Orientation, PointedError, PointedGraph, ProperLabeling, RelPolynomial, TensorError,
    TensorInstance, VerifyOptions,
};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "reltutte",
    version,
    about = "Relative Tutte polynomials of colored multigraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// random evaluation points per comparison
    #[arg(long, global = true, default_value_t = 32)]
    trials: usize,
    /// glue 2-sums head to tail instead of tail to tail
    #[arg(long, global = true)]
    flip_orientation: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Jsonl,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Universal polynomial, by state sum and by recursion
    Tutte { graph: PathBuf },
    /// The five pointed polynomials of a graph with a pointed edge
    Pointed { graph: PathBuf },
    /// Build the λ-tensor product and print its polynomial
    Tensor {
        g1: PathBuf,
        g2: PathBuf,
        #[arg(long)]
        lambda: String,
        /// write the product graph here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the substitution formula on one tensor instance
    Verify {
        g1: PathBuf,
        g2: PathBuf,
        #[arg(long)]
        lambda: String,
        #[arg(long, hide = true)]
        corrupt_rhs: bool,
    },
    /// Randomized property suites
    Suite {
        #[arg(long, default_value_t = 20)]
        instances: usize,
        #[arg(long, default_value_t = 4)]
        max_vertices: u32,
        #[arg(long, default_value_t = 5)]
        max_regular: usize,
        #[arg(long, default_value_t = 2)]
        max_zero: usize,
        #[arg(long, default_value_t = 2)]
        colors: usize,
        #[arg(long, default_value_t = 2)]
        max_lambda: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<PointedError> for Failure {
    fn from(e: PointedError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<TensorError> for Failure {
    fn from(e: TensorError) -> Self {
        match e {
            TensorError::InstanceInvalid(_) | TensorError::Pointed(_) => Failure::Input(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

struct Out {
    format: Format,
    buf: String,
}

impl Out {
    fn header(&mut self, cli: &Cli) {
        match self.format {
            Format::Text => self.buf += &format!("# seed={} trials={}\n", cli.seed, cli.trials),
            Format::Jsonl => self.line(json!({"seed": cli.seed, "trials": cli.trials})),
        }
    }

    fn line(&mut self, v: serde_json::Value) {
        self.buf += &v.to_string();
        self.buf.push('\n');
    }

    fn poly(&mut self, name: &str, p: &RelPolynomial) {
        match self.format {
            Format::Text => self.buf += &format!("{name} = {p}\n"),
            Format::Jsonl => {
                let terms: Vec<_> = p
                    .sorted_terms()
                    .into_iter()
                    .map(|(c, vars, z)| json!({"coeff": c.to_string(), "vars": vars, "zkey": z}))
                    .collect();
                self.line(json!({"name": name, "terms": terms}));
            }
        }
    }

    fn text(&mut self, s: &str) {
        if self.format == Format::Text {
            self.buf += s;
        }
    }
}

fn read_graph(path: &Path) -> Result<ColoredMultigraph, Failure> {
    let src = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_graph(&src).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_pointed(path: &Path) -> Result<PointedGraph, Failure> {
    PointedGraph::new(read_graph(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn instance(g1: &Path, g2: &Path, lambda: &str) -> Result<TensorInstance, Failure> {
    Ok(TensorInstance::new(
        read_graph(g1)?,
        read_pointed(g2)?,
        Color::new(lambda),
    )?)
}

fn orientation(cli: &Cli) -> Orientation {
    if cli.flip_orientation {
        Orientation::Flipped
    } else {
        Orientation::Aligned
    }
}

fn run(cli: &Cli, out: &mut Out) -> Result<u8, Failure> {
    // the suite summary carries its own header
    if !matches!(cli.command, Command::Suite { .. }) || out.format == Format::Jsonl {
        out.header(cli);
    }
    match &cli.command {
        Command::Tutte { graph } => {
            let g = read_graph(graph)?;
            let a = universal_tutte_statesum(&g, &ProperLabeling::canonical(&g))
                .map_err(|e| Failure::Internal(e.to_string()))?;
            let b = tutte_recursive(&g).map_err(|e| Failure::Internal(e.to_string()))?;
            out.poly("statesum", &a);
            out.poly("recursive", &b);
            if a != b {
                return Err(Failure::Internal("state sum and recursion disagree".into()));
            }
        }
        Command::Pointed { graph } => {
            let pp = pointed_polys(&read_pointed(graph)?)?;
            for (name, p) in pp.named() {
                out.poly(name, p);
            }
        }
        Command::Tensor {
            g1,
            g2,
            lambda,
            out: path,
        } => {
            let ti = instance(g1, g2, lambda)?;
            let product = tensor_product(&ti);
            let text = format!(
                "# product of {} and {} along {lambda}\n{}",
                g1.display(),
                g2.display(),
                print_graph(&product)
            );
            match path {
                Some(p) => fs::write(p, &text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
                None => out.text(&text),
            }
            let lab = reltutte::product_labeling(&ti);
            let u = universal_tutte_statesum(&product, &lab).map_err(|e| Failure::Internal(e.to_string()))?;
            out.poly("product", &u);
        }
        Command::Verify {
            g1,
            g2,
            lambda,
            corrupt_rhs,
        } => {
            let ti = instance(g1, g2, lambda)?;
            let opts = VerifyOptions {
                orientation: orientation(cli),
                probe_flip: true,
                corrupt: *corrupt_rhs,
            };
            let r = reltutte::verify_tensor_formula(&ti, cli.trials, cli.seed, opts)?;
            out.poly("lhs", &r.lhs);
            out.poly("rhs", &r.rhs);
            match out.format {
                Format::Text => {
                    out.buf += &format!(
                        "equal_mod_ideal={} structurally_equal={} flipped_equal_mod_ideal={}\n",
                        r.equal_mod_ideal,
                        r.structurally_equal,
                        r.flipped_equal_mod_ideal.map_or("-".into(), |b| b.to_string())
                    );
                }
                Format::Jsonl => out.line(json!({
                    "equal_mod_ideal": r.equal_mod_ideal,
                    "flipped_equal_mod_ideal": r.flipped_equal_mod_ideal,
                    "structurally_equal": r.structurally_equal,
                })),
            }
            return Ok(if r.equal_mod_ideal { 0 } else { 1 });
        }
        Command::Suite {
            instances,
            max_vertices,
            max_regular,
            max_zero,
            colors,
            max_lambda,
            inject_fault,
        } => {
            let cfg = SuiteConfig {
                instances: *instances,
                seed: cli.seed,
                trials: cli.trials,
                spec: RandomInstanceSpec {
                    vertices: 1..=(*max_vertices).max(1),
                    regular_edges: 1..=(*max_regular).max(1),
                    zero_edges: 0..=*max_zero,
                    colors: *colors,
                    lambda_edges: 1..=(*max_lambda).max(1),
                    connected: true,
                },
                orientation: orientation(cli),
                inject_fault: *inject_fault,
            };
            let outcomes = run_suites(&cfg);
            match out.format {
                Format::Text => out.buf += &render_summary(&cfg, &outcomes),
                Format::Jsonl => {
                    for o in &outcomes {
                        out.line(json!({
                            "counterexample": o.counterexample,
                            "failures": o.failures,
                            "instances": o.instances,
                            "name": o.name,
                            "notes": o.notes,
                        }));
                    }
                }
            }
            return Ok(if outcomes.iter().all(|o| o.passed()) { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.jobs {
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    let mut out = Out {
        format: cli.format,
        buf: String::new(),
    };
    let code = match pool.install(|| run(&cli, &mut out)) {
        Ok(c) => c,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            2
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            3
        }
    };
    let _ = std::io::stdout().write_all(out.buf.as_bytes());
    ExitCode::from(code)
}
