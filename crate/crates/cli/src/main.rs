//! Command-line front end: parameter reports, divisor and curve tables,
//! positivity and cone computations, the classifier, chart tools, and the
//! batched verification sweep.
//!
//! Output is deterministic: JSON objects carry sorted keys and rationals
//! serialize as canonical `numerator/denominator` strings.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use tspn::classify;
use tspn::curves::{self, CurveId};
use tspn::grassmann;
use tspn::params::{self, Params};
use tspn::picard::{self, MName, Space, TName};
use tspn::poly::Var;
use tspn::rat::{parse_rat, rat_str, QMatrix, Rat};
use tspn::verify::{self, SweepConfig};

#[derive(Parser)]
#[command(name = "tspn")]
#[command(about = "Exact intersection theory, positivity and symmetry for the spaces T_{s,p,n} and M_{s,p,n}")]
#[command(version)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpaceArg {
    T,
    M,
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Space {
        match s {
            SpaceArg::T => Space::T,
            SpaceArg::M => Space::M,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Ranks, dimensions, Picard ranks and the fibration case
    Info { s: usize, p: usize, n: usize },
    /// Free basis of the Picard lattice
    Basis {
        s: usize,
        p: usize,
        n: usize,
        #[arg(long, value_enum, ignore_case = true, default_value_t = SpaceArg::T)]
        space: SpaceArg,
    },
    /// Expansion of a named divisor class over the spanning symbols
    Divisor {
        /// T-side names: B<k>, H<j>, D+<i>, D-<i>, E, K, antiK.
        /// M-side names: B<k>, D<i>, H, K, antiK
        name: String,
        s: usize,
        p: usize,
        n: usize,
        #[arg(long, value_enum, ignore_case = true, default_value_t = SpaceArg::T)]
        space: SpaceArg,
        /// Also print the reduced coordinates in the free basis
        #[arg(long)]
        reduced: bool,
    },
    /// Catalog of torus-invariant curves with intersection vectors and
    /// anticanonical degrees
    Curves { s: usize, p: usize, n: usize },
    /// Pair a named divisor with a cataloged curve
    Intersect {
        s: usize,
        p: usize,
        n: usize,
        /// Divisor name, as in `divisor`
        #[arg(long)]
        divisor: String,
        /// Curve id, e.g. gamma:0, zeta:0:2, zetaUV:0:1:1:5, delta:0:2:1
        #[arg(long)]
        curve: String,
    },
    /// Anticanonical positivity verdicts from the derived degrees
    Positivity { s: usize, p: usize, n: usize },
    /// Extremal rays of the effective cone
    Cone {
        s: usize,
        p: usize,
        n: usize,
        #[arg(long, value_enum, ignore_case = true, default_value_t = SpaceArg::T)]
        space: SpaceArg,
    },
    /// Automorphism-group classification
    Aut {
        s: usize,
        p: usize,
        n: usize,
        #[arg(long, value_enum, ignore_case = true, default_value_t = SpaceArg::T)]
        space: SpaceArg,
    },
    /// Maximal minors of a matrix, with the quadratic relation check
    Plucker {
        /// JSON 2-D array of integers or "a/b" strings; stdin when absent
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Kernel-basis dual of a full-rank matrix
    Dual {
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Column reversal of a matrix
    Usd {
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Layered chart matrix of a main chart, optionally verifying the
    /// pullback monomials
    Millecrepes {
        s: usize,
        p: usize,
        n: usize,
        /// Chart layer, 0..=r
        #[arg(long, default_value_t = 0)]
        layer: usize,
        /// Custom pivot index "i_1,..,i_r;j_1,..,j_r" instead of the main
        /// chart of the layer
        #[arg(long)]
        tau: Option<String>,
        /// Verify the pullback monomials on this layer (main chart only)
        #[arg(long)]
        te: bool,
        /// JSON file {"variable": "a/b", ...} to evaluate the chart
        #[arg(long)]
        values: Option<PathBuf>,
    },
    /// Orbit-closure signatures
    Orbits { s: usize, p: usize, n: usize },
    /// Run the verification battery; exit 1 on failure
    Verify {
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 10)]
        symbolic_n_max: usize,
        /// Treat known reference discrepancies as fatal
        #[arg(long)]
        strict: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {:#}", err);
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let (value, table, exit) = dispatch(&cli.command)?;
    let rendered = match cli.format {
        Format::Json => serde_json::to_string_pretty(&value)? + "\n",
        Format::Csv => {
            let table = table.unwrap_or_else(|| flatten_to_table(&value));
            render_csv(&table)
        }
    };
    match &cli.out {
        Some(path) => std::fs::write(path, rendered)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{}", rendered),
    }
    Ok(exit)
}

/// A CSV-ready table: header plus rows.
struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

fn render_csv(t: &Table) -> String {
    let quote = |s: &String| {
        if s.contains(',') || s.contains('"') || s.contains('\n') {
            format!("\"{}\"", s.replace('"', "\"\""))
        } else {
            s.clone()
        }
    };
    let mut out = String::new();
    out.push_str(&t.header.iter().map(&quote).collect::<Vec<_>>().join(","));
    out.push('\n');
    for row in &t.rows {
        out.push_str(&row.iter().map(&quote).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

/// Generic key,value flattening for reports without a natural table shape.
fn flatten_to_table(v: &Value) -> Table {
    let mut rows = Vec::new();
    fn walk(prefix: &str, v: &Value, rows: &mut Vec<Vec<String>>) {
        match v {
            Value::Object(map) => {
                for (k, val) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{}.{}", prefix, k) };
                    walk(&key, val, rows);
                }
            }
            Value::Array(items) => {
                for (i, val) in items.iter().enumerate() {
                    walk(&format!("{}[{}]", prefix, i), val, rows);
                }
            }
            other => rows.push(vec![prefix.to_string(), scalar_string(other)]),
        }
    }
    walk("", v, &mut rows);
    Table { header: vec!["key".into(), "value".into()], rows }
}

fn scalar_string(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn make_params(s: usize, p: usize, n: usize) -> Result<Params> {
    Ok(Params::new(s, p, n)?)
}

fn dispatch(cmd: &Command) -> Result<(Value, Option<Table>, ExitCode)> {
    let ok = ExitCode::SUCCESS;
    match cmd {
        Command::Info { s, p, n } => {
            let pr = make_params(*s, *p, *n)?;
            let fib = params::fibration_report(&pr);
            let (norm, trace) = classify::normalize(&pr);
            let picard_ranks = if pr.normalized {
                json!({
                    "T": picard::basis(&pr, Space::T)?.len(),
                    "M": picard::basis(&pr, Space::M)?.len(),
                })
            } else {
                json!({
                    "T": picard::basis(&norm, Space::T)?.len(),
                    "M": picard::basis(&norm, Space::M)?.len(),
                    "note": "ranks of the normalized model",
                })
            };
            let value = json!({
                "params": {"s": pr.s, "p": pr.p, "n": pr.n},
                "rank": pr.r,
                "normalized": pr.normalized,
                "normal_form": {"s": norm.s, "p": norm.p, "n": norm.n,
                                 "applied": trace.iter().map(|i| format!("{:?}", i)).collect::<Vec<_>>()},
                "dim_T": pr.p * (pr.n - pr.p),
                "dim_M": pr.p * (pr.n - pr.p) - 1,
                "picard_rank": picard_ranks,
                "orbit_closures": params::orbit_closures(&pr).len(),
                "fibration": serde_json::to_value(&fib)?,
            });
            Ok((value, None, ok))
        }
        Command::Basis { s, p, n, space } => {
            let pr = make_params(*s, *p, *n)?;
            let basis = picard::basis(&pr, (*space).into())?;
            let names: Vec<String> = basis.iter().map(|b| b.to_string()).collect();
            let value = json!({
                "params": {"s": pr.s, "p": pr.p, "n": pr.n},
                "space": space_name(*space),
                "basis": names,
            });
            let table = Table {
                header: vec!["position".into(), "symbol".into()],
                rows: basis
                    .iter()
                    .enumerate()
                    .map(|(i, b)| vec![i.to_string(), b.to_string()])
                    .collect(),
            };
            Ok((value, Some(table), ok))
        }
        Command::Divisor { name, s, p, n, space, reduced } => {
            let pr = make_params(*s, *p, *n)?;
            let space: Space = (*space).into();
            let (class, empty) = named_class(&pr, space, name)?;
            let mut obj = serde_json::Map::new();
            obj.insert("name".into(), json!(name));
            obj.insert("space".into(), json!(space_name_sp(space)));
            obj.insert("coefficients".into(), json!(class.to_string_map()));
            if empty {
                obj.insert("empty_divisor".into(), json!(true));
            }
            if *reduced {
                let basis = picard::basis(&pr, space)?;
                let coords = picard::reduced_coords(&pr, &class)?;
                let map: serde_json::Map<String, Value> = basis
                    .iter()
                    .zip(&coords)
                    .map(|(b, c)| (b.to_string(), json!(rat_str(c))))
                    .collect();
                obj.insert("reduced".into(), Value::Object(map));
            }
            let value = Value::Object(obj);
            let table = Table {
                header: vec!["symbol".into(), "coefficient".into()],
                rows: class
                    .coeffs()
                    .map(|(sym, c)| vec![sym.to_string(), rat_str(c)])
                    .collect(),
            };
            Ok((value, Some(table), ok))
        }
        Command::Curves { s, p, n } => {
            let pr = make_params(*s, *p, *n)?;
            let cat = curves::catalog(&pr)?;
            let degrees = curves::anticanonical_degrees(&pr, Space::T)?;
            let mut rows = Vec::new();
            let mut items = Vec::new();
            for (rec, deg) in cat.iter().zip(&degrees) {
                assert_eq!(rec.id, deg.id);
                let mut row = vec![
                    rec.id.family().to_string(),
                    rec.id.layer().to_string(),
                    rec.id.family_params(),
                    rec.h.to_string(),
                ];
                row.extend(rec.d_minus.iter().map(|x| x.to_string()));
                row.extend(rec.d_plus.iter().map(|x| x.to_string()));
                row.push(csv_rat(&deg.derived));
                row.push(deg.reference.map(|x| x.to_string()).unwrap_or_default());
                row.push(deg.matches.to_string());
                rows.push(row);
                items.push(json!({
                    "id": rec.id.to_string(),
                    "H": rec.h,
                    "D_minus": rec.d_minus,
                    "D_plus": rec.d_plus,
                    "derived_antiK": deg.derived,
                    "reference_antiK": deg.reference,
                    "match": deg.matches,
                }));
            }
            let mut header = vec![
                "family".to_string(),
                "l".to_string(),
                "params".to_string(),
                "H".to_string(),
            ];
            header.extend((1..=pr.r).map(|i| format!("D{}-", i)));
            header.extend((1..=pr.r).map(|i| format!("D{}+", i)));
            header.push("derived_antiK".into());
            header.push("reference_antiK".into());
            header.push("match".into());
            let value = json!({
                "params": {"s": pr.s, "p": pr.p, "n": pr.n},
                "curves": items,
            });
            Ok((value, Some(Table { header, rows }), ok))
        }
        Command::Intersect { s, p, n, divisor, curve } => {
            let pr = make_params(*s, *p, *n)?;
            let (class, _) = named_class(&pr, Space::T, divisor)?;
            let id = parse_curve_id(curve)?;
            let cat = curves::catalog(&pr)?;
            let rec = cat
                .iter()
                .find(|c| c.id == id)
                .ok_or_else(|| anyhow!("curve {} is not in the catalog of {}", id, pr))?;
            let pairing = curves::intersect(&class, rec)?;
            let value = json!({
                "params": {"s": pr.s, "p": pr.p, "n": pr.n},
                "divisor": divisor,
                "curve": id.to_string(),
                "value": rat_str(&pairing),
            });
            let table = Table {
                header: vec!["divisor".into(), "curve".into(), "value".into()],
                rows: vec![vec![divisor.clone(), id.to_string(), rat_str(&pairing)]],
            };
            Ok((value, Some(table), ok))
        }
        Command::Positivity { s, p, n } => {
            let pr = make_params(*s, *p, *n)?;
            let report = curves::positivity_verdict(&pr)?;
            let value = json!({
                "params": {"s": pr.s, "p": pr.p, "n": pr.n},
                "T": {
                    "min_degree": report.t_min_degree,
                    "nef": report.t_nef,
                    "ample": report.t_ample,
                    "ample_iff_rank_le_2": report.t_ample_iff_rank_le_2,
                    "zero_curves": report.t_zero_curves,
                    "zero_set_matches": report.t_zero_set_matches,
                },
                "M": {
                    "min_degree": report.m_min_degree,
                    "ample": report.m_ample,
                },
            });
            Ok((value, None, ok))
        }
        Command::Cone { s, p, n, space } => {
            let pr = make_params(*s, *p, *n)?;
            let space: Space = (*space).into();
            let cmp = curves::compare_extremal_rays(&pr, space)?;
            let basis = picard::basis(&pr, space)?;
            let value = json!({
                "params": {"s": pr.s, "p": pr.p, "n": pr.n},
                "space": space_name_sp(space),
                "basis": basis.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
                "extremal_rays": serde_json::to_value(&cmp.computed)?,
                "reference": cmp.expected,
                "matches_reference": cmp.matches,
            });
            let table = Table {
                header: vec!["names".into(), "direction".into()],
                rows: cmp
                    .computed
                    .iter()
                    .map(|r| {
                        vec![
                            r.names.join(" "),
                            r.direction.iter().map(rat_str).collect::<Vec<_>>().join(" "),
                        ]
                    })
                    .collect(),
            };
            Ok((value, Some(table), ok))
        }
        Command::Aut { s, p, n, space } => {
            let pr = make_params(*s, *p, *n)?;
            let descriptor = match space {
                SpaceArg::T => classify::aut_t(&pr)?,
                SpaceArg::M => classify::aut_m(&pr)?,
            };
            let (norm, trace) = classify::normalize(&pr);
            let value = json!({
                "space": space_name(*space),
                "params": {"s": pr.s, "p": pr.p, "n": pr.n},
                "normalized": {"s": norm.s, "p": norm.p, "n": norm.n,
                                "applied": trace.iter().map(|i| format!("{:?}", i)).collect::<Vec<_>>()},
                "case": descriptor.case,
                "connected": descriptor.connected,
                "discrete": descriptor.discrete,
                "model": descriptor.model,
                "refined": descriptor.refined,
            });
            Ok((value, None, ok))
        }
        Command::Plucker { matrix } => {
            let m = read_matrix(matrix.as_deref())?;
            let v = grassmann::pluecker_vector(&m);
            let (relations_ok, violations) = if v.is_zero {
                (true, Vec::new())
            } else {
                grassmann::pluecker_relations_check(&v)?
            };
            let entries: serde_json::Map<String, Value> = v
                .entries
                .iter()
                .map(|(t, val)| (tuple_key(t), json!(rat_str(val))))
                .collect();
            let value = json!({
                "p": v.p,
                "n": v.n,
                "entries": entries,
                "zero_vector": v.is_zero,
                "relations_ok": relations_ok,
                "violations": violations
                    .iter()
                    .map(|viol| json!({
                        "a": viol.a,
                        "b": viol.b,
                        "value": rat_str(&viol.value),
                    }))
                    .collect::<Vec<_>>(),
            });
            let table = Table {
                header: vec!["index".into(), "value".into()],
                rows: v.entries.iter().map(|(t, val)| vec![tuple_key(t), rat_str(val)]).collect(),
            };
            Ok((value, Some(table), ok))
        }
        Command::Dual { matrix } => {
            let m = read_matrix(matrix.as_deref())?;
            let d = grassmann::dual_point(&m)?;
            Ok((matrix_value(&d), Some(matrix_table(&d)), ok))
        }
        Command::Usd { matrix } => {
            let m = read_matrix(matrix.as_deref())?;
            let u = grassmann::usd_point(&m);
            Ok((matrix_value(&u), Some(matrix_table(&u)), ok))
        }
        Command::Millecrepes { s, p, n, layer, tau, te, values } => {
            let pr = make_params(*s, *p, *n)?;
            let chart = match tau {
                None => grassmann::main_chart(&pr, *layer)?,
                Some(text) => {
                    if *te {
                        bail!("--te checks the closed form of the main chart; drop --tau");
                    }
                    parse_chart(*layer, text)?
                }
            };
            let m = grassmann::mille_crepes_matrix(&pr, &chart)?;
            let mut obj = serde_json::Map::new();
            obj.insert("params".into(), json!({"s": pr.s, "p": pr.p, "n": pr.n}));
            obj.insert("layer".into(), json!(layer));
            obj.insert("pivot_rows".into(), json!(chart.rows));
            obj.insert("pivot_cols".into(), json!(chart.cols));
            let rows: Vec<Vec<String>> = (0..m.nrows)
                .map(|i| (0..m.ncols).map(|j| m.at(i, j).to_string()).collect())
                .collect();
            obj.insert("matrix".into(), json!(rows));
            if let Some(path) = values {
                let assignment = read_assignment(path)?;
                let num = m.evaluate(&assignment)?;
                obj.insert("evaluated".into(), matrix_value(&num));
            }
            if *te {
                let report = grassmann::verify_te(&pr, *layer)?;
                let items: Vec<Value> = report
                    .items
                    .iter()
                    .map(|item| {
                        json!({
                            "k": item.k,
                            "expected": item.expected.to_string(),
                            "computed": item.computed.to_string(),
                            "sign": item.sign,
                            "match": item.matches,
                        })
                    })
                    .collect();
                obj.insert("pullback_check".into(), json!({
                    "all_match": report.all_match,
                    "items": items,
                }));
            }
            let table = Table {
                header: vec!["row".into(), "col".into(), "entry".into()],
                rows: (0..m.nrows)
                    .flat_map(|i| {
                        (0..m.ncols)
                            .map(move |j| (i, j))
                            .collect::<Vec<_>>()
                    })
                    .map(|(i, j)| vec![(i + 1).to_string(), (j + 1).to_string(), m.at(i, j).to_string()])
                    .collect(),
            };
            Ok((Value::Object(obj), Some(table), ok))
        }
        Command::Orbits { s, p, n } => {
            let pr = make_params(*s, *p, *n)?;
            let orbits = params::orbit_closures(&pr);
            let value = json!({
                "params": {"s": pr.s, "p": pr.p, "n": pr.n},
                "count": orbits.len(),
                "signatures": serde_json::to_value(&orbits)?,
            });
            let table = Table {
                header: vec!["i_plus".into(), "i_minus".into()],
                rows: orbits
                    .iter()
                    .map(|o| {
                        vec![
                            format!("{:?}", o.i_plus),
                            format!("{:?}", o.i_minus),
                        ]
                    })
                    .collect(),
            };
            Ok((value, Some(table), ok))
        }
        Command::Verify { n_max, symbolic_n_max, strict } => {
            let config = SweepConfig {
                n_max: *n_max,
                normalize_only: true,
                symbolic_n_max: *symbolic_n_max,
                strict: *strict,
            };
            let report = verify::run(&config)?;
            let value = serde_json::to_value(&report)?;
            let table = Table {
                header: vec!["check".into(), "passed".into(), "known_discrepancies".into()],
                rows: report
                    .checks
                    .iter()
                    .map(|c| {
                        vec![
                            c.name.clone(),
                            c.passed.to_string(),
                            c.known_discrepancies.join(" "),
                        ]
                    })
                    .collect(),
            };
            let code = if report.pass { ExitCode::SUCCESS } else { ExitCode::from(1) };
            Ok((value, Some(table), code))
        }
    }
}

/// Integral rationals lose their unit denominator in CSV cells.
fn csv_rat(s: &str) -> String {
    s.strip_suffix("/1").map(str::to_string).unwrap_or_else(|| s.to_string())
}

fn space_name(space: SpaceArg) -> &'static str {
    match space {
        SpaceArg::T => "T",
        SpaceArg::M => "M",
    }
}

fn space_name_sp(space: Space) -> &'static str {
    match space {
        Space::T => "T",
        Space::M => "M",
    }
}

fn tuple_key(t: &params::IndexTuple) -> String {
    t.entries().iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

/// Parses divisor names: T-side `B<k>`, `H<j>`, `D+<i>`, `D-<i>`, `E`,
/// `K`, `antiK`; M-side `B<k>`, `D<i>`, `H`, `K`, `antiK`.
fn named_class(pr: &Params, space: Space, name: &str) -> Result<(picard::DivisorClass, bool)> {
    let name = name.trim();
    let index = |rest: &str| -> Result<usize> {
        rest.parse::<usize>().map_err(|_| anyhow!("bad index in divisor name {:?}", name))
    };
    match space {
        Space::T => {
            let class = if name == "H" {
                // the pullback hyperplane class itself
                picard::DivisorClass::unit(Space::T, picard::SpanSymbol::H)
            } else if name == "E" {
                picard::named_divisor(pr, TName::Exceptional)?
            } else if name == "K" {
                picard::named_divisor(pr, TName::K)?
            } else if name.eq_ignore_ascii_case("antiK") || name == "-K" {
                picard::named_divisor(pr, TName::AntiK)?
            } else if let Some(rest) = name.strip_prefix("D+") {
                picard::named_divisor(pr, TName::DPlus(index(rest)?))?
            } else if let Some(rest) = name.strip_prefix("D-") {
                picard::named_divisor(pr, TName::DMinus(index(rest)?))?
            } else if let Some(rest) = name.strip_prefix('B') {
                picard::named_divisor(pr, TName::B(index(rest)?))?
            } else if let Some(rest) = name.strip_prefix('H') {
                picard::named_divisor(pr, TName::HLine(index(rest)?))?
            } else {
                bail!("unknown T-side divisor name {:?}", name);
            };
            Ok((class, false))
        }
        Space::M => {
            let named = if name == "H" {
                picard::m_named_divisor(pr, MName::HCheck)?
            } else if name == "K" {
                picard::m_named_divisor(pr, MName::K)?
            } else if name.eq_ignore_ascii_case("antiK") || name == "-K" {
                picard::m_named_divisor(pr, MName::AntiK)?
            } else if let Some(rest) = name.strip_prefix('B') {
                picard::m_named_divisor(pr, MName::BCheck(index(rest)?))?
            } else if let Some(rest) = name.strip_prefix('D') {
                picard::m_named_divisor(pr, MName::DCheck(index(rest)?))?
            } else {
                bail!("unknown M-side divisor name {:?}", name);
            };
            Ok((named.class, named.empty_divisor))
        }
    }
}

fn parse_curve_id(text: &str) -> Result<CurveId> {
    let parts: Vec<&str> = text.split(':').collect();
    let num = |i: usize| -> Result<usize> {
        parts
            .get(i)
            .ok_or_else(|| anyhow!("curve id {:?} is missing a field", text))?
            .parse::<usize>()
            .map_err(|_| anyhow!("bad number in curve id {:?}", text))
    };
    match parts[0] {
        "gamma" if parts.len() == 2 => Ok(CurveId::Gamma { l: num(1)? }),
        "zeta" if parts.len() == 3 => Ok(CurveId::Zeta { l: num(1)?, j: num(2)? }),
        "zetaUV" if parts.len() == 5 => {
            Ok(CurveId::ZetaUv { l: num(1)?, k: num(2)?, u: num(3)?, v: num(4)? })
        }
        "delta" if parts.len() == 4 => {
            Ok(CurveId::Delta { l: num(1)?, m1: num(2)?, m2: num(3)? })
        }
        "Delta" if parts.len() == 4 => {
            Ok(CurveId::DeltaCap { l: num(1)?, m1: num(2)?, m2: num(3)? })
        }
        _ => bail!(
            "bad curve id {:?}; use gamma:<l>, zeta:<l>:<j>, zetaUV:<l>:<k>:<u>:<v>, delta:<l>:<m1>:<m2> or Delta:<l>:<m1>:<m2>",
            text
        ),
    }
}

/// Reads a JSON 2-D array of integers or "a/b" strings.
fn read_matrix(path: Option<&std::path::Path>) -> Result<QMatrix> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).context("reading matrix from stdin")?;
            buf
        }
    };
    let value: Value = serde_json::from_str(&text).context("matrix is not valid JSON")?;
    let rows = value.as_array().ok_or_else(|| anyhow!("matrix must be a JSON array of rows"))?;
    let mut out = Vec::new();
    for row in rows {
        let cells = row.as_array().ok_or_else(|| anyhow!("matrix rows must be arrays"))?;
        let mut r = Vec::new();
        for cell in cells {
            r.push(cell_to_rat(cell)?);
        }
        out.push(r);
    }
    if out.is_empty() || out[0].is_empty() {
        bail!("matrix must be nonempty");
    }
    Ok(QMatrix::from_rows(out)?)
}

fn cell_to_rat(cell: &Value) -> Result<Rat> {
    match cell {
        Value::Number(n) => {
            let i = n.as_i64().ok_or_else(|| anyhow!("matrix entries must be integers or \"a/b\" strings"))?;
            Ok(tspn::rat::rat(i))
        }
        Value::String(s) => Ok(parse_rat(s)?),
        _ => bail!("matrix entries must be integers or \"a/b\" strings"),
    }
}

fn read_assignment(path: &std::path::Path) -> Result<std::collections::BTreeMap<Var, Rat>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: Value = serde_json::from_str(&text).context("assignment is not valid JSON")?;
    let obj = value.as_object().ok_or_else(|| anyhow!("assignment must be a JSON object"))?;
    let mut out = std::collections::BTreeMap::new();
    for (key, val) in obj {
        let var = parse_var(key)?;
        let rat = match val {
            Value::Number(n) => tspn::rat::rat(
                n.as_i64().ok_or_else(|| anyhow!("assignment values must be integers or strings"))?,
            ),
            Value::String(s) => parse_rat(s)?,
            _ => bail!("assignment values must be integers or \"a/b\" strings"),
        };
        out.insert(var, rat);
    }
    Ok(out)
}

/// Parses a pivot index "i_1,..,i_r;j_1,..,j_r". Membership is validated by
/// the chart builder.
fn parse_chart(layer: usize, text: &str) -> Result<grassmann::ChartIndex> {
    let (rows, cols) = text
        .split_once(';')
        .ok_or_else(|| anyhow!("pivot index needs the form \"i_1,..,i_r;j_1,..,j_r\""))?;
    let list = |part: &str| -> Result<Vec<usize>> {
        part.split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| anyhow!("bad pivot index {:?}", text))
    };
    Ok(grassmann::ChartIndex { l: layer, rows: list(rows)?, cols: list(cols)? })
}

/// Parses variable names in the display form, e.g. `a(1,4)` or `xi(1,2,5)`.
fn parse_var(text: &str) -> Result<Var> {
    let open = text.find('(').ok_or_else(|| anyhow!("bad variable name {:?}", text))?;
    let close = text.rfind(')').ok_or_else(|| anyhow!("bad variable name {:?}", text))?;
    let tag = &text[..open];
    let subs: Vec<usize> = text[open + 1..close]
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| anyhow!("bad subscripts in variable name {:?}", text))?;
    let two = |f: fn(usize, usize) -> Var| -> Result<Var> {
        if subs.len() == 2 {
            Ok(f(subs[0], subs[1]))
        } else {
            bail!("variable {:?} needs two subscripts", text)
        }
    };
    match tag {
        "a" => two(Var::a),
        "b" => two(Var::b),
        "x" => two(Var::x),
        "y" => two(Var::y),
        "z" => two(Var::z),
        "w" => two(Var::w),
        "xi" => {
            if subs.len() == 3 {
                Ok(Var::xi(subs[0], subs[1], subs[2]))
            } else {
                bail!("variable {:?} needs three subscripts", text)
            }
        }
        _ => bail!("unknown variable family {:?}", tag),
    }
}

fn matrix_value(m: &QMatrix) -> Value {
    let rows: Vec<Vec<String>> =
        m.rows().map(|row| row.iter().map(rat_str).collect()).collect();
    json!(rows)
}

fn matrix_table(m: &QMatrix) -> Table {
    Table {
        header: (1..=m.ncols).map(|j| format!("c{}", j)).collect(),
        rows: m.rows().map(|row| row.iter().map(rat_str).collect()).collect(),
    }
}
