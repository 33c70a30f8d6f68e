//! Commands behind the `graphcx` binary. Each command renders its whole
//! output to a string, so identical arguments give identical bytes.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphcomplex::basis::{enumerate_basis_with, vertex_range, BasisSlice, Caps};
use graphcomplex::format::parse_graph;
use graphcomplex::homology::{betti_csv, betti_table, boundary_matrix_with, BoundaryMatrix};
use graphcomplex::operators::Operator;
use graphcomplex::suite::{self, SuiteConfig};
use graphcomplex::{canonical_form, Error};
use serde_json::json;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser, Debug)]
#[command(name = "graphcx", about = "Exact computations in the commutative graph complex")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub caps: CapArgs,
}

#[derive(Args, Debug, Clone)]
pub struct CapArgs {
    /// Largest loop degree any enumeration may reach.
    #[arg(long, global = true, default_value_t = 4)]
    pub cap_loop: usize,
    /// Largest vertex count any enumeration may reach.
    #[arg(long, global = true, default_value_t = 6)]
    pub cap_vertices: usize,
    /// Largest number of classes in one slice.
    #[arg(long, global = true, default_value_t = 200_000)]
    pub cap_classes: usize,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        Caps { max_loop: self.cap_loop, max_vertices: self.cap_vertices, max_classes: self.cap_classes }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "verbatim")]
pub enum Op {
    E,
    H,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List basis classes.
    Enumerate {
        #[arg(long = "loop")]
        loop_degree: usize,
        /// Only this vertex count.
        #[arg(long)]
        vertices: Option<usize>,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        one_pi: bool,
    },
    /// Betti numbers of the `∂_E` complex at one loop degree.
    Homology {
        #[arg(long = "loop")]
        loop_degree: usize,
        /// Skip vertex counts above this.
        #[arg(long)]
        vertices: Option<usize>,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        one_pi: bool,
    },
    /// Boundary matrix from `--from` vertices to one fewer.
    Matrix {
        #[arg(long, value_enum, default_value_t = Op::E)]
        op: Op,
        #[arg(long = "loop")]
        loop_degree: usize,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        one_pi: bool,
    },
    /// Run the identity suite, or replay recorded cases.
    Verify {
        /// Exhaustive loop degree bound.
        #[arg(long = "loop", default_value_t = 3)]
        loop_degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Comma-separated identity names.
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        one_pi: bool,
        /// A JSON report or case file to re-check.
        #[arg(long)]
        replay: Option<PathBuf>,
        /// Print the identity names and exit.
        #[arg(long)]
        list: bool,
    },
    /// Canonical form of a graph file (`-` for standard input).
    Canon { file: PathBuf },
}

/// Rendered output and process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let caps = cli.caps.caps();
    let out = match &cli.command {
        Command::Enumerate { loop_degree, vertices, connected, one_pi } => {
            Output::ok(enumerate(*loop_degree, *vertices, *connected, *one_pi, cli.format, &caps)?)
        }
        Command::Homology { loop_degree, vertices, connected, one_pi } => {
            let caps = Caps { max_vertices: vertices.unwrap_or(caps.max_vertices), ..caps };
            Output::ok(homology(*loop_degree, *connected, *one_pi, cli.format, &caps)?)
        }
        Command::Matrix { op, loop_degree, from, connected, one_pi } => {
            let op = match op {
                Op::E => Operator::E,
                Op::H => Operator::H,
            };
            let m = boundary_matrix_with(op, *loop_degree, *from, *connected, *one_pi, &caps)?;
            Output::ok(matrix(&m, cli.format))
        }
        Command::Verify { loop_degree, seed, samples, only, one_pi, replay, list } => {
            if *list {
                return Ok(Output::ok(suite::identity_names().join("\n") + "\n"));
            }
            let report = match replay {
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.clone(), e))?;
                    suite::replay(&suite::load_cases(&text)?)?
                }
                None => {
                    let cfg = SuiteConfig {
                        exhaustive_loop: *loop_degree,
                        sample_loop: (*loop_degree + 1).min(caps.max_loop).max(*loop_degree),
                        samples: *samples,
                        seed: *seed,
                        one_pi: *one_pi,
                        only: only.clone(),
                    };
                    suite::run(&cfg)?
                }
            };
            let text = match cli.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
                Format::Csv => return Err(CliError::Usage("verify supports text and json output".into())),
            };
            Output { text, code: if report.passed { 0 } else { 1 } }
        }
        Command::Canon { file } => {
            let text = if file.as_os_str() == "-" {
                std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Io(file.clone(), e))?
            } else {
                fs::read_to_string(file).map_err(|e| CliError::Io(file.clone(), e))?
            };
            Output::ok(canon(&text, cli.format)?)
        }
    };
    Ok(out)
}

fn hex(code: &[u8]) -> String {
    code.iter().map(|b| format!("{b:02x}")).collect()
}

fn slices(b: usize, vertices: Option<usize>, connected: bool, one_pi: bool, caps: &Caps) -> Result<Vec<BasisSlice>, CliError> {
    let vs: Vec<usize> = match vertices {
        Some(v) => vec![v],
        None => vertex_range(b).collect(),
    };
    let mut out = Vec::new();
    for v in vs {
        out.push(enumerate_basis_with(v, b, connected, one_pi, caps)?);
    }
    Ok(out)
}

pub fn enumerate(b: usize, vertices: Option<usize>, connected: bool, one_pi: bool, format: Format, caps: &Caps) -> Result<String, CliError> {
    let slices = slices(b, vertices, connected, one_pi, caps)?;
    let mut out = String::new();
    match format {
        Format::Text => {
            for s in &slices {
                out.push_str(&format!("# loop={} vertices={} classes={}\n", s.loop_degree, s.vertex_count, s.len()));
                for c in &s.classes {
                    out.push_str(&format!("{}  # aut={} bridged={}\n", c.to_line(), c.aut_order(), c.has_bridge()));
                }
            }
        }
        Format::Csv => {
            out.push_str("loop_degree,vertices,edges,index,aut_order,bridged,code,graph\n");
            for s in &slices {
                for (i, c) in s.classes.iter().enumerate() {
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{},\"{}\"\n",
                        s.loop_degree,
                        s.vertex_count,
                        c.edge_count(),
                        i,
                        c.aut_order(),
                        c.has_bridge(),
                        hex(c.code()),
                        c.to_line()
                    ));
                }
            }
        }
        Format::Json => {
            let v: Vec<_> = slices
                .iter()
                .map(|s| {
                    json!({
                        "loop_degree": s.loop_degree,
                        "vertices": s.vertex_count,
                        "connected": s.connected,
                        "one_pi": s.one_pi,
                        "classes": s.classes.iter().map(|c| json!({
                            "code": hex(c.code()),
                            "graph": c.to_line(),
                            "aut_order": c.aut_order(),
                            "bridged": c.has_bridge(),
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            out = serde_json::to_string_pretty(&json!({ "schema": 1, "slices": v })).expect("json") + "\n";
        }
    }
    Ok(out)
}

pub fn homology(b: usize, connected: bool, one_pi: bool, format: Format, caps: &Caps) -> Result<String, CliError> {
    let rows = betti_table(b, connected, one_pi, caps)?;
    Ok(match format {
        Format::Csv => betti_csv(&rows),
        Format::Json => serde_json::to_string_pretty(&json!({ "schema": 1, "rows": rows })).expect("json") + "\n",
        Format::Text => {
            let mut out = format!("{:>5} {:>8} {:>9} {:>5}\n", "loop", "vertices", "dim_basis", "betti");
            for r in &rows {
                out.push_str(&format!("{:>5} {:>8} {:>9} {:>5}\n", r.loop_degree, r.vertices, r.dim_basis, r.betti));
            }
            out
        }
    })
}

pub fn matrix(m: &BoundaryMatrix, format: Format) -> String {
    match format {
        Format::Text => m.to_text(),
        Format::Csv => {
            let mut out = String::from("row,col,value\n");
            for (r, c, v) in &m.entries {
                out.push_str(&format!("{},{},{}\n", r + 1, c + 1, v));
            }
            out
        }
        Format::Json => {
            let classes = |s: &BasisSlice| s.classes.iter().map(|c| c.to_line()).collect::<Vec<_>>();
            let v = json!({
                "schema": 1,
                "operator": m.op.name(),
                "rows": m.rows(),
                "cols": m.cols(),
                "domain": classes(&m.domain),
                "codomain": classes(&m.codomain),
                "entries": m.entries.iter().map(|(r, c, v)| json!([r + 1, c + 1, v.to_string()])).collect::<Vec<_>>(),
            });
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
    }
}

pub fn canon(text: &str, format: Format) -> Result<String, CliError> {
    let g = parse_graph(text)?;
    let c = canonical_form(&g)?;
    let class = &c.class;
    Ok(match format {
        Format::Json => {
            let v = json!({
                "schema": 1,
                "code": hex(class.code()),
                "graph": class.to_line(),
                "sign": c.sign,
                "aut_order": class.aut_order(),
                "orientation_reversing": class.orientation_reversing(),
                "loop_degree": class.loop_degree(),
                "components": class.component_count(),
            });
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        _ => format!(
            "{}\nsign={} aut={} reversing={} loop={} components={} code={}\n",
            class.to_line(),
            c.sign,
            class.aut_order(),
            class.orientation_reversing(),
            class.loop_degree(),
            class.component_count(),
            hex(class.code())
        ),
    })
}

/// Runs the command and writes its output; returns the exit code.
pub fn main_with(cli: &Cli) -> i32 {
    match run(cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &out.text).map_err(|e| CliError::Io(path.clone(), e)),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            match written {
                Ok(()) => out.code,
                Err(e) => {
                    eprintln!("graphcx: {e}");
                    2
                }
            }
        }
        Err(e) => {
            eprintln!("graphcx: {e}");
            2
        }
    }
}
