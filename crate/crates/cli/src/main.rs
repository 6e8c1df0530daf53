use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use heat_tori::arith::{format_int_list, parse_exponents, parse_int_list, parse_rational_list, to_f64};
use heat_tori::graph::{GroupAction, WeightedGraph};
use heat_tori::heat::HeatKernelTable;
use heat_tori::intmat::IntMatrix;
use heat_tori::lattice::{lattice_pn, lattice_qn, LatticeWeights};
use heat_tori::suite::{criterion_name, run_criterion, DEFAULT_SEED};
use heat_tori::torus::{eigenvalue_witness, torus_eigenvalue, torus_graph, TorusSpec};
use heat_tori::verify::{self, VerificationReport};
use heat_tori::{Error, Exec};

#[derive(Parser, Debug)]
#[command(name = "heat-tori", version, about = "Heat kernels on discrete tori and weighted trigonometric sum checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Args, Debug, Clone)]
struct MatrixArg {
    /// Integer matrix, rows separated by ';', entries by ',' (e.g. "1,1;-1,1")
    #[arg(short = 'A', allow_hyphen_values = true)]
    matrix: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the dual torus points (A^T)^-1 Z^d / Z^d
    Dual(MatrixArg),
    /// List coset representatives of Z^d / A Z^d
    Cosets(MatrixArg),
    /// Torus Laplacian eigenvalues with exact witnesses
    Spectrum {
        #[command(flatten)]
        a: MatrixArg,
        /// Positive edge weights, one per coordinate (default all 1)
        #[arg(short = 'w', allow_hyphen_values = true)]
        weights: Option<String>,
    },
    /// Exact heat kernel table q_0..q_n on a torus or a graph file
    Heat {
        #[arg(short = 'A', allow_hyphen_values = true, conflicts_with = "graph")]
        matrix: Option<String>,
        #[arg(short = 'w', allow_hyphen_values = true)]
        weights: Option<String>,
        /// Graph JSON file
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(short = 'n')]
        n: u32,
    },
    /// Closed-form lattice kernel p_n(v) and q_n(v)
    LatticePn {
        #[arg(short = 'w', allow_hyphen_values = true)]
        weights: String,
        #[arg(short = 'n')]
        n: u32,
        /// Target lattice point
        #[arg(short = 'v', allow_hyphen_values = true)]
        v: String,
    },
    /// Check one identity and print its report
    Verify {
        #[command(subcommand)]
        check: Check,
        /// Relative tolerance
        #[arg(long, default_value_t = 1e-9, global = true)]
        tol: f64,
    },
    /// Run the seeded acceptance grid
    Suite {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Comma-separated criterion numbers (default all)
        #[arg(long)]
        criteria: Option<String>,
        /// Keep wall-clock timings in the reports (breaks bit-identical output)
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Subcommand, Debug)]
enum Check {
    /// Weighted cosine power sum
    Eq1 {
        #[command(flatten)]
        a: MatrixArg,
        #[arg(short = 'w', allow_hyphen_values = true)]
        weights: String,
        #[arg(short = 'n')]
        n: u32,
    },
    /// Cosine monomial sum
    Eq2 {
        #[command(flatten)]
        a: MatrixArg,
        /// Exponent vector
        #[arg(short = 'm')]
        m: String,
    },
    /// Discrete trace formula on a torus or a graph file
    Trace {
        #[arg(short = 'A', allow_hyphen_values = true, conflicts_with = "graph")]
        matrix: Option<String>,
        #[arg(short = 'w', allow_hyphen_values = true)]
        weights: Option<String>,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(short = 'n')]
        n: u32,
    },
    /// Heat kernel transfer to a quotient graph
    Quotient {
        /// Covering torus T_A
        #[arg(short = 'A', allow_hyphen_values = true, conflicts_with = "graph")]
        matrix: Option<String>,
        /// Coarser lattice B with A Z^d ⊆ B Z^d; the group is B Z^d / A Z^d
        #[arg(long, allow_hyphen_values = true, requires = "matrix")]
        sub: Option<String>,
        #[arg(short = 'w', allow_hyphen_values = true)]
        weights: Option<String>,
        #[arg(long, requires = "generators")]
        graph: Option<PathBuf>,
        /// Generating permutations, ';'-separated images (e.g. "1,2,3,0")
        #[arg(long)]
        generators: Option<String>,
        #[arg(short = 'n')]
        n: u32,
    },
    /// Spectral expansion of the torus heat kernel
    Expansion {
        #[command(flatten)]
        a: MatrixArg,
        #[arg(short = 'w', allow_hyphen_values = true)]
        weights: Option<String>,
        #[arg(short = 'n')]
        n: u32,
    },
}

/// Errors that exit with status 2.
#[derive(Debug)]
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

struct Output {
    text: String,
    pass: bool,
}

fn matrix(s: &str) -> Result<IntMatrix, Usage> {
    let a = IntMatrix::parse(s)?;
    a.ensure_nonsingular()?;
    Ok(a)
}

fn weights_for(d: usize, s: Option<&str>) -> Result<LatticeWeights, Usage> {
    let lw = match s {
        Some(s) => LatticeWeights::new(parse_rational_list(s)?)?,
        None => LatticeWeights::unit(d),
    };
    if lw.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: lw.dim() }.into());
    }
    Ok(lw)
}

fn read_graph(path: &PathBuf) -> Result<WeightedGraph, Usage> {
    let text = std::fs::read_to_string(path).map_err(|e| Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(WeightedGraph::from_json(&text)?)
}

fn graph_or_torus(
    matrix_s: Option<&str>,
    weights: Option<&str>,
    graph: Option<&PathBuf>,
) -> Result<WeightedGraph, Usage> {
    match (matrix_s, graph) {
        (Some(a), _) => {
            let spec = TorusSpec::new(matrix(a)?)?;
            let lw = weights_for(spec.dim(), weights)?;
            Ok(torus_graph(&spec, &lw)?)
        }
        (None, Some(path)) => read_graph(path),
        (None, None) => Err(Usage("either -A or --graph is required".into())),
    }
}

fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json serializes") + "\n"
}

fn string_rows(rows: &[String], header: &str, format: Format) -> String {
    match format {
        Format::Json => json_text(&json!(rows)),
        Format::Csv => {
            std::iter::once(header.to_string())
                .chain(rows.iter().map(|r| format!("\"{r}\"")))
                .collect::<Vec<_>>()
                .join("\n")
                + "\n"
        }
        Format::Pretty => rows.iter().map(|r| format!("{r}\n")).collect(),
    }
}

fn reports_text(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Json if reports.len() == 1 => serde_json::to_string_pretty(&reports[0]).expect("report") + "\n",
        Format::Json => serde_json::to_string_pretty(reports).expect("reports") + "\n",
        Format::Csv => {
            let mut out = String::from("identity,params,lhs,rhs,abs_err,rel_err,tol,pass,ms\n");
            for r in reports {
                writeln!(
                    out,
                    "{},\"{}\",\"{}\",\"{}\",{},{},{},{},{}",
                    r.identity, r.params, r.lhs, r.rhs, r.abs_err, r.rel_err, r.tol, r.pass, r.ms
                )
                .expect("write");
            }
            out
        }
        Format::Pretty => reports
            .iter()
            .map(|r| {
                format!(
                    "{} {} [{}] lhs={} rhs={} abs_err={:.3e} rel_err={:.3e}\n",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.identity,
                    r.params,
                    r.lhs,
                    r.rhs,
                    r.abs_err,
                    r.rel_err
                )
            })
            .collect(),
    }
}

fn heat_text(table: &HeatKernelTable, labels: &[String], format: Format) -> String {
    match format {
        Format::Csv | Format::Pretty => table.to_csv(),
        Format::Json => {
            let mut rows = Vec::new();
            for k in 0..=table.steps() {
                for x in 0..table.len() {
                    for y in 0..table.len() {
                        rows.push(
                            json!({"step": k, "x": labels[x], "y": labels[y], "value": table.q(k, x, y).to_string()}),
                        );
                    }
                }
            }
            json_text(&Value::Array(rows))
        }
    }
}

fn run_check(check: &Check, tol: f64) -> Result<VerificationReport, Usage> {
    Ok(match check {
        Check::Eq1 { a, weights, n } => {
            verify::verify_eq1(&matrix(&a.matrix)?, &parse_rational_list(weights)?, *n, tol)?
        }
        Check::Eq2 { a, m } => verify::verify_eq2(&matrix(&a.matrix)?, &parse_exponents(m)?, tol)?,
        Check::Trace { matrix: a, weights, graph, n } => {
            let g = graph_or_torus(a.as_deref(), weights.as_deref(), graph.as_ref())?;
            verify::verify_trace(&g, *n, tol)
        }
        Check::Quotient { matrix: a, sub, weights, graph, generators, n } => {
            let (g, gamma) = match (a, graph) {
                (Some(a), _) => {
                    let spec = TorusSpec::new(matrix(a)?)?;
                    let lw = weights_for(spec.dim(), weights.as_deref())?;
                    let sub =
                        IntMatrix::parse(sub.as_deref().ok_or_else(|| Usage("--sub is required with -A".into()))?)?;
                    (torus_graph(&spec, &lw)?, spec.translation_subgroup(&sub)?)
                }
                (None, Some(path)) => {
                    let g = read_graph(path)?;
                    let gens = generators
                        .as_deref()
                        .unwrap_or_default()
                        .split(';')
                        .map(|p| {
                            parse_int_list(p)?
                                .into_iter()
                                .map(|v| {
                                    usize::try_from(v).map_err(|_| Error::Parse(format!("bad permutation entry {v}")))
                                })
                                .collect::<Result<Vec<usize>, Error>>()
                        })
                        .collect::<Result<Vec<_>, Error>>()?;
                    let gamma = GroupAction::generated_by(g.len(), &gens)?;
                    (g, gamma)
                }
                (None, None) => return Err(Usage("either -A/--sub or --graph/--generators is required".into())),
            };
            verify::verify_quotient(&g, &gamma, *n)?
        }
        Check::Expansion { a, weights, n } => {
            let a = matrix(&a.matrix)?;
            let lw = weights_for(a.dim(), weights.as_deref())?;
            verify::verify_spectral_expansion(&a, lw.weights(), *n, tol)?
        }
    })
}

fn run(cli: &Cli) -> Result<Output, Usage> {
    let format = cli.common.format;
    let ok = |text| Ok(Output { text, pass: true });
    match &cli.command {
        Command::Dual(a) => {
            let spec = TorusSpec::new(matrix(&a.matrix)?)?;
            ok(string_rows(&spec.dual().iter().map(|p| p.to_string()).collect::<Vec<_>>(), "xi", format))
        }
        Command::Cosets(a) => {
            let spec = TorusSpec::new(matrix(&a.matrix)?)?;
            match format {
                Format::Json => ok(json_text(&json!(spec.reps()))),
                _ => ok(string_rows(&spec.reps().iter().map(|x| format_int_list(x)).collect::<Vec<_>>(), "x", format)),
            }
        }
        Command::Spectrum { a, weights } => {
            let spec = TorusSpec::new(matrix(&a.matrix)?)?;
            let lw = weights_for(spec.dim(), weights.as_deref())?;
            let mut rows = Vec::new();
            for xi in spec.dual() {
                rows.push((xi.to_string(), torus_eigenvalue(xi, &lw)?, eigenvalue_witness(xi, &lw)));
            }
            rows.sort_by(|a, b| a.1.total_cmp(&b.1));
            let text = match format {
                Format::Json => json_text(&Value::Array(
                    rows.iter()
                        .map(|(xi, mu, w)| json!({"xi": xi, "eigenvalue": format!("{mu}"), "witness": w}))
                        .collect(),
                )),
                Format::Csv => {
                    std::iter::once("xi,eigenvalue,witness".to_string())
                        .chain(rows.iter().map(|(xi, mu, w)| format!("\"{xi}\",{mu},\"{w}\"")))
                        .collect::<Vec<_>>()
                        .join("\n")
                        + "\n"
                }
                Format::Pretty => rows.iter().map(|(xi, mu, w)| format!("{mu:<24} xi=({xi})  {w}\n")).collect(),
            };
            ok(text)
        }
        Command::Heat { matrix: a, weights, graph, n } => {
            let g = graph_or_torus(a.as_deref(), weights.as_deref(), graph.as_ref())?;
            let table = HeatKernelTable::build(&g, *n);
            ok(heat_text(&table, g.labels(), format))
        }
        Command::LatticePn { weights, n, v } => {
            let lw = LatticeWeights::new(parse_rational_list(weights)?)?;
            let v = parse_int_list(v)?;
            let p = lattice_pn(&lw, *n, &v)?;
            let q = lattice_qn(&lw, *n, &v)?;
            let text = match format {
                Format::Json => json_text(
                    &json!({"n": n, "v": v, "p": p.to_string(), "q": q.to_string(), "p_decimal": format!("{}", to_f64(&p))}),
                ),
                Format::Csv => format!("n,v,p,q\n{n},\"{}\",{p},{q}\n", format_int_list(&v)),
                Format::Pretty => {
                    format!("p_{n}({}) = {p}\nq_{n}({}) = {q}\n", format_int_list(&v), format_int_list(&v))
                }
            };
            ok(text)
        }
        Command::Verify { check, tol } => {
            if tol.is_nan() || *tol <= 0.0 {
                return Err(Usage("--tol must be positive".into()));
            }
            let r = run_check(check, *tol)?;
            Ok(Output { pass: r.pass, text: reports_text(std::slice::from_ref(&r), format) })
        }
        Command::Suite { seed, criteria, timings } => {
            let ks: Vec<u32> = match criteria {
                Some(s) => parse_exponents(s)?,
                None => (1..=heat_tori::suite::CRITERIA).collect(),
            };
            if let Some(bad) = ks.iter().find(|k| !(1..=heat_tori::suite::CRITERIA).contains(k)) {
                return Err(Usage(format!("unknown criterion {bad}")));
            }
            let mut reports = Vec::new();
            let mut summary = String::new();
            for &k in &ks {
                let rs: Vec<VerificationReport> = run_criterion(k, *seed, Exec::default())
                    .into_iter()
                    .map(|r| if *timings { r } else { r.without_timing() })
                    .collect();
                let passed = rs.iter().filter(|r| r.pass).count();
                writeln!(summary, "criterion {k} ({}): {passed}/{}", criterion_name(k), rs.len()).expect("write");
                reports.extend(rs);
            }
            let passed = reports.iter().filter(|r| r.pass).count();
            let mut text = match format {
                Format::Json => serde_json::to_string_pretty(&reports).expect("reports") + "\n",
                _ => reports_text(&reports, format),
            };
            if format == Format::Pretty {
                text.push_str(&summary);
            }
            writeln!(text, "PASS {passed}/{}", reports.len()).expect("write");
            Ok(Output { pass: passed == reports.len(), text })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match &cli.common.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &out.text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{}", out.text),
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `heat-tori --help` for usage");
            ExitCode::from(2)
        }
    }
}
