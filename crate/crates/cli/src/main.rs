//! `polybern`: compute, enumerate, map, render, and verify the
//! combinatorial models behind one exact polynomial family.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use clap::{Parser, Subcommand, ValueEnum};
use polybern_core::bijections::{
    callan_to_tableau, model_polynomial, poly_to_json, verify_all, MapId, ModelId, VerifyOptions,
    VerifyReport,
};
use polybern_core::excedance::callan_to_exc;
use polybern_core::oracle::egf_check;
use polybern_core::poly::Poly;
use polybern_core::tableaux::{AltTableau, PackedTableau};
use polybern_core::trees::DoubleTree;
use polybern_core::{callan, excedance, tableaux, trees, CallanPerm, ExcPerm};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(name = "polybern", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Print a model polynomial as an ascending coefficient array
    Compute {
        /// formula, callan.lr, callan.br, callan.rl, tableau.st,
        /// tableau.left, packed.left, packed.down, tree.ch, or exc.lr
        #[arg(long)]
        model: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Stream every object of a family with its weights, one JSON line each
    Enumerate {
        /// callan, tableau, packed, tree, or exc
        #[arg(long)]
        model: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Apply one of the bijections or reduction maps to a serialized object
    Map {
        /// pad, cut, packed_to_tree, tree_to_packed, tree_to_callan,
        /// callan_to_tableau, callan_to_exc, dual_involution, transpose,
        /// phi, or psi
        #[arg(long)]
        id: String,
        /// JSON file holding the object in the map's domain
        #[arg(long)]
        input: PathBuf,
    },
    /// Draw an object as a text diagram
    Render {
        /// callan, tableau, packed, tree, or exc
        #[arg(long)]
        model: String,
        #[arg(long)]
        input: PathBuf,
    },
    /// Run the whole verification harness and the generating-function check
    Verify {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        max_k: usize,
        /// Also run the heavy models on the 5 x 5 cell
        #[arg(long)]
        extended: bool,
        /// Directory for advisory result caching (overridden by POLYBERN_CACHE)
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Compute { model, n, k, format } => cmd_compute(&model, n, k, format),
        Command::Enumerate { model, n, k, format } => cmd_enumerate(&model, n, k, format),
        Command::Map { id, input } => cmd_map(&id, &input),
        Command::Render { model, input } => cmd_render(&model, &input),
        Command::Verify {
            max_n,
            max_k,
            extended,
            cache_dir,
            format,
        } => cmd_verify(max_n, max_k, extended, cache_dir, format),
    }
}

fn cmd_compute(model: &str, n: usize, k: usize, format: Format) -> Result<u8, String> {
    let id = ModelId::from_str(model).map_err(|e| e.to_string())?;
    let poly = model_polynomial(id, n, k);
    match format {
        Format::Json => println!("{}", poly.coeff_array()),
        Format::Text => println!("{poly}"),
    }
    Ok(0)
}

fn describe<T: serde::Serialize>(object: &T, weights: Value) -> (String, Value) {
    (serde_json::to_string(object).expect("serializable"), weights)
}

fn cmd_enumerate(model: &str, n: usize, k: usize, format: Format) -> Result<u8, String> {
    let lines: Vec<(String, Value)> = match model {
        "callan" => callan::enumerate(n, k)
            .iter()
            .map(|p| describe(p, json!({"lr": p.weight_lr(), "br": p.weight_br(), "rl": p.weight_rl()})))
            .collect(),
        "tableau" => tableaux::enumerate_alt(n, k)
            .iter()
            .map(|t| describe(t, json!({"st": t.weight_st(), "left": t.weight_left()})))
            .collect(),
        "packed" => tableaux::enumerate_packed(n, k)
            .iter()
            .map(|t| describe(t, json!({"left": t.weight_left(), "down": t.weight_down()})))
            .collect(),
        "tree" => trees::enumerate(n, k)
            .iter()
            .map(|t| describe(t, json!({"ch": t.weight_ch()})))
            .collect(),
        "exc" => excedance::enumerate(n, k)
            .iter()
            .map(|e| describe(e, json!({"lr": e.weight_lr()})))
            .collect(),
        other => {
            return Err(format!(
                "model {other:?} is not enumerable; pick one of callan, tableau, packed, tree, exc"
            ))
        }
    };
    for (object, weights) in &lines {
        match format {
            Format::Json => println!("{{\"object\":{object},\"weights\":{weights}}}"),
            Format::Text => println!("{object} weights={weights}"),
        }
    }
    eprintln!("count: {}", lines.len());
    Ok(0)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn print_image<T: serde::Serialize>(
    image: &T,
    weight_in: usize,
    weight_out: usize,
) -> Result<u8, String> {
    println!("{}", serde_json::to_string(image).map_err(|e| e.to_string())?);
    println!("{}", json!({"weightIn": weight_in, "weightOut": weight_out}));
    Ok(0)
}

fn cmd_map(id: &str, input: &Path) -> Result<u8, String> {
    let map = MapId::from_str(id).map_err(|e| e.to_string())?;
    let err = |e: polybern_core::Error| e.to_string();
    match map {
        MapId::Pad => {
            let t: AltTableau = read_json(input)?;
            let p = t.pad();
            print_image(&p, t.weight_left(), p.weight_left())
        }
        MapId::Cut => {
            let p: PackedTableau = read_json(input)?;
            let t = p.cut();
            print_image(&t, p.weight_left(), t.weight_left())
        }
        MapId::PackedToTree => {
            let p: PackedTableau = read_json(input)?;
            let t = DoubleTree::from_packed(&p).map_err(err)?;
            print_image(&t, p.weight_left(), t.weight_ch())
        }
        MapId::TreeToPacked => {
            let t: DoubleTree = read_json(input)?;
            let p = t.to_packed().map_err(err)?;
            print_image(&p, t.weight_ch(), p.weight_left())
        }
        MapId::TreeToCallan => {
            let t: DoubleTree = read_json(input)?;
            let c = t.to_callan().map_err(err)?;
            print_image(&c, t.weight_ch(), c.weight_lr())
        }
        MapId::CallanToTableau => {
            let c: CallanPerm = read_json(input)?;
            let t = callan_to_tableau(&c).map_err(err)?;
            print_image(&t, c.weight_lr(), t.weight_st())
        }
        MapId::CallanToExc => {
            let c: CallanPerm = read_json(input)?;
            let e = callan_to_exc(&c).map_err(err)?;
            print_image(&e, c.weight_rl(), e.weight_lr())
        }
        MapId::DualInvolution => {
            let p: PackedTableau = read_json(input)?;
            let q = p.dual_involution().map_err(err)?;
            print_image(&q, p.weight_left(), q.weight_down())
        }
        MapId::Transpose => {
            let p: PackedTableau = read_json(input)?;
            let q = p.transpose().map_err(err)?;
            print_image(&q, p.weight_left(), q.weight_down())
        }
        MapId::Phi => {
            let c: CallanPerm = read_json(input)?;
            let q = c.phi().map_err(err)?;
            print_image(&q, c.weight_lr(), q.weight_lr())
        }
        MapId::Psi => {
            let e: ExcPerm = read_json(input)?;
            let q = e.psi().map_err(err)?;
            print_image(&q, e.weight_lr(), q.weight_lr())
        }
    }
}

fn cmd_render(model: &str, input: &Path) -> Result<u8, String> {
    let text = match model {
        "callan" => {
            let p: CallanPerm = read_json(input)?;
            format!(
                "s1: {}\ns2: {}\n",
                callan::tokens_to_string(p.s1()),
                callan::tokens_to_string(p.s2())
            )
        }
        "tableau" => read_json::<AltTableau>(input)?.render(),
        "packed" => read_json::<PackedTableau>(input)?.render(),
        "tree" => read_json::<DoubleTree>(input)?.render(),
        "exc" => read_json::<ExcPerm>(input)?.render_board(),
        other => return Err(format!("cannot render model {other:?}")),
    };
    print!("{text}");
    Ok(0)
}

/// FNV-1a over the cache payload, hex encoded.
fn content_hash(payload: &str) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for b in payload.bytes() {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x1000_0000_01b3);
    }
    format!("{hash:016x}")
}

struct CacheOutcome {
    mismatches: Vec<String>,
}

/// Advisory result cache: one JSON file per (model, n, k). Recomputation
/// always happens; a cached entry that disagrees is reported and preserved.
fn check_cache(dir: &Path, report: &VerifyReport) -> Result<CacheOutcome, String> {
    std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let mut mismatches = Vec::new();
    for cell in &report.cells {
        for (model, poly) in &cell.models {
            let payload = cache_payload(*model, cell.n, cell.k, poly);
            let path = dir.join(format!("{}_{}_{}.json", model.name(), cell.n, cell.k));
            if path.exists() {
                let cached =
                    std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
                if cached.trim() != payload {
                    mismatches.push(format!(
                        "cache {} disagrees with recomputation: cached {} vs {}",
                        path.display(),
                        cached.trim(),
                        payload
                    ));
                    continue;
                }
            } else {
                std::fs::write(&path, payload + "\n")
                    .map_err(|e| format!("{}: {e}", path.display()))?;
            }
        }
    }
    Ok(CacheOutcome { mismatches })
}

fn cache_payload(model: ModelId, n: usize, k: usize, poly: &Poly) -> String {
    let coeffs = poly_to_json(poly);
    let count = poly.eval_i64(1).to_string();
    let body = format!("{}|{n}|{k}|{coeffs}|{count}", model.name());
    json!({
        "model": model.name(),
        "n": n,
        "k": k,
        "coeffs": coeffs,
        "count": count,
        "hash": content_hash(&body),
    })
    .to_string()
}

/// Drop wall-clock fields so repeated runs print identical bytes.
fn strip_timing(value: &mut Value) {
    match value {
        Value::Object(map) => {
            map.remove("ms");
            map.remove("elapsedMs");
            for v in map.values_mut() {
                strip_timing(v);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

fn cmd_verify(
    max_n: usize,
    max_k: usize,
    extended: bool,
    cache_dir: Option<PathBuf>,
    format: Format,
) -> Result<u8, String> {
    let report = verify_all(VerifyOptions {
        max_n,
        max_k,
        extended,
    });
    let egf = egf_check(6, 6).map_err(|e| e.to_string())?;

    let cache_dir = std::env::var_os("POLYBERN_CACHE")
        .map(PathBuf::from)
        .or(cache_dir);
    let mut cache_mismatches = Vec::new();
    if let Some(dir) = &cache_dir {
        let outcome = check_cache(dir, &report)?;
        cache_mismatches = outcome.mismatches;
        let report_path = dir.join("report.json");
        std::fs::write(&report_path, report.to_json().to_string())
            .map_err(|e| format!("{}: {e}", report_path.display()))?;
    }

    let pass = report.pass() && egf.pass() && cache_mismatches.is_empty();
    match format {
        Format::Text => {
            print!("{}", report.render_text());
            println!(
                "egf({},{}): {}",
                egf.order_x,
                egf.order_y,
                if egf.pass() { "pass" } else { "FAIL" }
            );
            for cell in egf.failures() {
                println!(
                    "egf failure at ({},{}): {}",
                    cell.n,
                    cell.k,
                    cell.detail.clone().unwrap_or_default()
                );
            }
            for m in &cache_mismatches {
                println!("cache failure: {m}");
            }
            println!("overall: {}", if pass { "pass" } else { "FAIL" });
        }
        Format::Json => {
            let mut value = report.to_json();
            strip_timing(&mut value);
            value["egf"] = json!({
                "orderX": egf.order_x,
                "orderY": egf.order_y,
                "pass": egf.pass(),
            });
            value["cacheFailures"] = json!(cache_mismatches);
            value["pass"] = json!(pass);
            println!("{value}");
        }
    }
    Ok(if pass { 0 } else { 1 })
}
