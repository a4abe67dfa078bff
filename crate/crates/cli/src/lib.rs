//! Command-line front end. [`run`] holds the whole program so tests can
//! drive it without spawning processes.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use incidence_core::acyclicity::{gyo_reduce, is_alpha_acyclic, is_alpha_acyclic_brute, DEFAULT_BRUTE_CAP};
use incidence_core::bounds::{bound_table, sparsity_empirical, zeta_sum_audit};
use incidence_core::coloring::{
    exact_chromatic, greedy_color, verify_incidence, ExactOptions, ExactOutcome, GreedyOrder, IncidenceColoring,
};
use incidence_core::completion::{check_completion, complete, DEFAULT_COMPLETION_CAP};
use incidence_core::generators::{
    gen_acyclic_linear, gen_acyclic_linear_uniform, gen_arbitrary, gen_biregular_k2t1_free, gen_linear,
    gen_quasi_linear, DEFAULT_BIREGULAR_TRIES,
};
use incidence_core::tree_color::color_acyclic_linear;
use incidence_core::{BipartiteGraph, Error, Hypergraph};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "incidence", version, about = "Incidence colorings of hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structure report and acyclicity of a hypergraph
    Check { file: PathBuf },
    /// Color the incidences of a hypergraph
    Color(ColorArgs),
    /// Check a coloring file against a hypergraph
    Verify { file: PathBuf, coloring: PathBuf },
    /// Embed a quasi-linear hypergraph in a uniform regular one
    Complete(CompleteArgs),
    /// Decide alpha-acyclicity
    Acyclicity {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = AcyclicityMethod::Gyo)]
        method: AcyclicityMethod,
        /// Vertex limit for the brute-force method
        #[arg(long, default_value_t = DEFAULT_BRUTE_CAP)]
        cap: usize,
    },
    /// Audit a biregular bipartite graph
    Audit(AuditArgs),
    /// Table of chromatic bounds
    Bounds {
        file: PathBuf,
        /// Also run the exact solver
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = ExactOptions::default().budget)]
        budget: u64,
        /// Write `name=value` lines here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random instance
    Gen(GenArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ColorMethod {
    Greedy,
    Exact,
    Tree,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Order {
    Canonical,
    LeviBfs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum AcyclicityMethod {
    Gyo,
    Brute,
}

#[derive(Args, Debug)]
struct ColorArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    method: ColorMethod,
    /// Incidence order for the greedy method
    #[arg(long, value_enum, default_value_t = Order::Canonical)]
    order: Order,
    /// Node expansions allowed to the exact solver
    #[arg(long, default_value_t = ExactOptions::default().budget)]
    budget: u64,
    /// Largest incidence count the exact solver accepts
    #[arg(long, default_value_t = ExactOptions::default().max_incidences)]
    max_incidences: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CompleteArgs {
    file: PathBuf,
    /// Largest projected incidence count
    #[arg(long, default_value_t = DEFAULT_COMPLETION_CAP)]
    cap: u128,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    embedding: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AuditArgs {
    #[arg(value_enum)]
    kind: AuditKind,
    graph: PathBuf,
    #[arg(long)]
    t: usize,
    /// Write `name=value` lines here
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum AuditKind {
    Zeta,
    Sparsity,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(subcommand)]
    class: GenClass,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum GenClass {
    /// Linear alpha-acyclic hypergraph
    AcyclicLinear {
        #[arg(long)]
        edges: usize,
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// k-uniform linear alpha-acyclic hypergraph
    AcyclicUniform {
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// (a,b)-biregular K_{2,t+1}-free bipartite graph
    Biregular {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        n_u: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = DEFAULT_BIREGULAR_TRIES)]
        tries: u64,
    },
    /// Linear k-uniform hypergraph
    Linear {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        k: usize,
    },
    /// t-quasi-linear k-uniform hypergraph
    QuasiLinear {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
    },
    /// Hypergraph with distinct random edges
    Arbitrary {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
}

/// A failed command: the message and the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_resource_limit() {
            EXIT_RESOURCE
        } else if matches!(e, Error::Parse { .. }) {
            EXIT_USAGE
        } else {
            EXIT_FAILURE
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: String) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message,
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `args` (program name first) and executes the command, writing
/// reports to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure {
        code: EXIT_FAILURE,
        message: format!("{}: {e}", path.display()),
    })
}

fn in_file(path: &Path, e: Error) -> Failure {
    let mut f = Failure::from(e);
    f.message = format!("{}: {}", path.display(), f.message);
    f
}

fn load_hypergraph(path: &Path) -> std::result::Result<Hypergraph, Failure> {
    Hypergraph::parse(&read(path)?).map_err(|e| in_file(path, e))
}

fn load_bipartite(path: &Path) -> std::result::Result<BipartiteGraph, Failure> {
    BipartiteGraph::parse(&read(path)?).map_err(|e| in_file(path, e))
}

fn emit(out: &mut dyn Write, text: &str) -> std::result::Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure {
        code: EXIT_FAILURE,
        message: e.to_string(),
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Check { file } => check(&file, out),
        Command::Color(args) => color(&args, out),
        Command::Verify { file, coloring } => verify(&file, &coloring, out),
        Command::Complete(args) => completion(&args, out),
        Command::Acyclicity { file, method, cap } => acyclicity(&file, method, cap, out),
        Command::Audit(args) => audit(&args, out),
        Command::Bounds {
            file,
            exact,
            budget,
            out: path,
        } => bounds(&file, exact, budget, path.as_deref(), out),
        Command::Gen(args) => generate(&args, out),
    }
}

fn check(file: &Path, out: &mut dyn Write) -> Outcome {
    let h = load_hypergraph(file)?;
    let opt = |v: Option<usize>| v.map_or_else(|| "no".to_string(), |x| x.to_string());
    let mut text = format!(
        "vertices      {}\nedges         {}\nincidences    {}\n",
        h.vertex_count(),
        h.edge_count(),
        h.incidence_count()
    );
    if h.edge_count() > 0 {
        let s = h.structure_report()?;
        text += &format!(
            "rank          {}\nmax_degree    {}\nmin_degree    {}\nrho           {}\nuniform       {}\nregular       {}\nlinearity_t   {}\nconnected     {}\n",
            s.rank,
            s.max_degree,
            s.min_degree,
            s.rho,
            opt(s.uniform_k),
            opt(s.regular_d),
            s.linearity_t,
            yes_no(s.connected)
        );
    }
    text += &format!("alpha_acyclic {}\n", yes_no(is_alpha_acyclic(&h)));
    emit(out, &text)?;
    Ok(EXIT_OK)
}

fn color(args: &ColorArgs, out: &mut dyn Write) -> Outcome {
    let h = load_hypergraph(&args.file)?;
    let mut code = EXIT_OK;
    let text = match args.method {
        ColorMethod::Greedy => {
            let order = match args.order {
                Order::Canonical => GreedyOrder::Canonical,
                Order::LeviBfs => GreedyOrder::LeviBfs,
            };
            greedy_color(&h, &order)?.render(&h)
        }
        ColorMethod::Exact => {
            let options = ExactOptions {
                budget: args.budget,
                max_incidences: args.max_incidences,
            };
            match exact_chromatic(&h, options)? {
                ExactOutcome::Exact {
                    chi,
                    witness,
                    expansions,
                } => format!(
                    "# exact: chi = {chi}, expansions = {expansions}\n{}",
                    witness.render(&h)
                ),
                ExactOutcome::Unknown {
                    lower,
                    upper,
                    best,
                    expansions,
                } => {
                    code = EXIT_RESOURCE;
                    format!(
                        "# budget exhausted after {expansions} expansions: {lower} <= chi <= {upper}\n{}",
                        best.render(&h)
                    )
                }
            }
        }
        ColorMethod::Tree => {
            let tc = color_acyclic_linear(&h)?;
            format!("{}bound: Δ+r−1 = {}\n", tc.coloring.render(&h), tc.bound)
        }
    };
    if let Some(path) = &args.out {
        write_file(path, &text)?;
    }
    emit(out, &text)?;
    Ok(code)
}

fn verify(file: &Path, coloring: &Path, out: &mut dyn Write) -> Outcome {
    let h = load_hypergraph(file)?;
    let c = IncidenceColoring::parse(&h, &read(coloring)?).map_err(|e| in_file(coloring, e))?;
    let violations = verify_incidence(&h, &c)?;
    if violations.is_empty() {
        emit(
            out,
            &format!(
                "ok: {} incidences, {} colors used, palette {}\n",
                h.incidence_count(),
                c.colors_used(),
                c.palette()
            ),
        )?;
        return Ok(EXIT_OK);
    }
    let mut text = String::new();
    for v in &violations {
        text += &format!(
            "conflict: ({} {}) ({} {}) color {}\n",
            h.name(v.first.vertex),
            v.first.edge,
            h.name(v.second.vertex),
            v.second.edge,
            v.color
        );
    }
    text += &format!("{} violations\n", violations.len());
    emit(out, &text)?;
    Ok(EXIT_FAILURE)
}

fn completion(args: &CompleteArgs, out: &mut dyn Write) -> Outcome {
    let h = load_hypergraph(&args.file)?;
    let (star, embedding) = complete(&h, args.cap)?;
    let report = check_completion(&h, &star, &embedding);
    let hg = star.to_hg_string();
    let map = embedding.render(&h, &star);
    match &args.out {
        Some(path) => write_file(path, &hg)?,
        None => emit(out, &hg)?,
    }
    if let Some(path) = &args.embedding {
        write_file(path, &map)?;
    }
    if args.out.is_some() {
        emit(out, &report.to_string())?;
    }
    Ok(if report.all_passed() { EXIT_OK } else { EXIT_FAILURE })
}

fn acyclicity(file: &Path, method: AcyclicityMethod, cap: usize, out: &mut dyn Write) -> Outcome {
    let h = load_hypergraph(file)?;
    let text = match method {
        AcyclicityMethod::Gyo => gyo_reduce(&h).render(&h),
        AcyclicityMethod::Brute => {
            let acyclic = is_alpha_acyclic_brute(&h, cap)?;
            format!("alpha_acyclic: {}\n", yes_no(acyclic))
        }
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}

fn audit(args: &AuditArgs, out: &mut dyn Write) -> Outcome {
    let g = load_bipartite(&args.graph)?;
    let (text, kv, ok) = match args.kind {
        AuditKind::Zeta => {
            let a = zeta_sum_audit(&g, args.t)?;
            let min_slack = a.per_edge.iter().map(|e| e.slack).min().unwrap_or(0);
            let kv = format!(
                "a={}\nb={}\nt={}\nedges={}\npoly_bound={}\nmin_slack={}\nmax_ratio={}\nidentity={}\n",
                a.a,
                a.b,
                a.t,
                a.per_edge.len(),
                a.per_edge.first().map_or(0, |e| e.poly_bound),
                min_slack,
                a.max_ratio,
                a.identity_holds()
            );
            let ok = a.all_within_bound() && a.identity_holds();
            (a.to_string(), kv, ok)
        }
        AuditKind::Sparsity => {
            let s = sparsity_empirical(&g, args.t)?;
            let kv = format!(
                "max_degree={}\nmax_neighborhood_edges={}\nsigma={}\ntarget={}\n",
                s.max_degree,
                s.max_neighborhood_edges,
                s.sigma,
                s.target.map_or_else(|| "n/a".to_string(), |t| t.to_string())
            );
            (s.to_string(), kv, true)
        }
    };
    if let Some(path) = &args.out {
        write_file(path, &kv)?;
    }
    emit(out, &text)?;
    Ok(if ok { EXIT_OK } else { EXIT_FAILURE })
}

fn bounds(file: &Path, exact: bool, budget: u64, path: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let h = load_hypergraph(file)?;
    let options = ExactOptions {
        budget,
        ..ExactOptions::default()
    };
    let table = bound_table(&h, exact, options);
    if let Some(path) = path {
        write_file(path, &table.to_key_values())?;
    }
    emit(out, &table.to_string())?;
    Ok(EXIT_OK)
}

fn generate(args: &GenArgs, out: &mut dyn Write) -> Outcome {
    let seed = args.seed;
    let text = match args.class {
        GenClass::AcyclicLinear {
            edges,
            max_rank,
            max_degree,
        } => gen_acyclic_linear(edges, max_rank, max_degree, seed)?.to_hg_string(),
        GenClass::AcyclicUniform { edges, k, max_degree } => {
            gen_acyclic_linear_uniform(edges, k, max_degree, seed)?.to_hg_string()
        }
        GenClass::Biregular { a, b, n_u, t, tries } => {
            gen_biregular_k2t1_free(a, b, n_u, t, seed, tries)?.graph.to_string()
        }
        GenClass::Linear { vertices, edges, k } => gen_linear(vertices, edges, k, seed)?.to_hg_string(),
        GenClass::QuasiLinear { vertices, edges, k, t } => {
            gen_quasi_linear(vertices, edges, k, t, seed)?.to_hg_string()
        }
        GenClass::Arbitrary {
            vertices,
            edges,
            max_size,
        } => gen_arbitrary(vertices, edges, max_size, seed)?.to_hg_string(),
    };
    match &args.out {
        Some(path) => write_file(path, &text)?,
        None => emit(out, &text)?,
    }
    Ok(EXIT_OK)
}
