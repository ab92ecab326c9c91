use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use parahoric::classify::{
    classify, degenerate_structure_check, exact_filtration_point, type1_converse_check,
    type2_levi_basis_check, type2_structure_check, verify_detailed, Branch,
};
use parahoric::complete::enumerate_complete;
use parahoric::concave::{
    enumerate_normal_fns, f_eps, from_f_eps, is_normal_fn, type_of, NormalKind,
};
use parahoric::report::{
    classification_json, coords_json, fn_json, parse_fn, parse_psi, root_datum, root_set_json,
    zeta_json,
};
use parahoric::sl_model::{
    example_type1_degenerate, example_type2, is_normal_in_iwahori, random_pattern, to_concave_fn,
    ValuationPattern,
};
use parahoric::zeta::{zeta, zprime_families};
use parahoric::{RootSystem, RootSystemType};

/// Classification of normal subgroups of Iwahori subgroups through their
/// concave functions.
#[derive(Debug, Parser)]
#[command(name = "parahoric", version)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Write the report as JSON (the default).
    #[arg(long, global = true, conflicts_with = "tsv")]
    json: bool,
    /// Write a tab-separated summary of the report.
    #[arg(long, global = true)]
    tsv: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for sweeps (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Print the elapsed time to stderr.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dump a root system.
    Rootsys { ty: RootSystemType },
    /// Enumerate the downward-closed subsets with their z-invariants.
    Complete { ty: RootSystemType },
    /// Compute z(Ψ), z′(Ψ) and the optimal families for a root set.
    Zeta {
        ty: RootSystemType,
        /// JSON array of root coordinate vectors.
        #[arg(long)]
        psi: PathBuf,
    },
    /// Classify a normal function and verify the result.
    Classify {
        ty: RootSystemType,
        /// JSON array of {root, value} objects.
        #[arg(long = "fn")]
        function: PathBuf,
    },
    /// Classify and verify every normal function with f ≤ f_I + fmax.
    VerifyTheorem {
        ty: RootSystemType,
        #[arg(long, default_value_t = 2)]
        fmax: i64,
    },
    /// Check a valuation pattern of SL_n, or a seeded batch of random ones.
    SlModel {
        /// Pattern file: n rows of n tokens, `*d` on the diagonal.
        #[arg(long, conflicts_with = "random")]
        pattern: Option<PathBuf>,
        /// Number of random patterns to draw instead.
        #[arg(long, requires = "n")]
        random: Option<usize>,
        /// Matrix size for random patterns.
        #[arg(long)]
        n: Option<usize>,
        /// Largest entry of random patterns.
        #[arg(long, default_value_t = 4)]
        max_entry: i64,
    },
    /// Run both SL_4 examples end to end.
    PaperExamples,
}

/// Bad input: exit code 2. Failed checks are reported in the output and
/// give exit code 1.
struct InputError(String);

/// A report and the columns of its TSV summary.
struct Output {
    report: Value,
    rows_key: &'static str,
    columns: &'static [&'static str],
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.opts.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.opts.jobs)
            .build_global()
            .expect("thread pool is configured once");
    }
    let start = Instant::now();
    let result = run(&cli);
    if cli.opts.timing {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(out) => {
            let text = if cli.opts.tsv {
                to_tsv(&out)
            } else {
                serde_json::to_string_pretty(&out.report).expect("serializable") + "\n"
            };
            // a closed pipe is not an error for a report writer
            let _ = io::stdout().lock().write_all(text.as_bytes());
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, InputError> {
    let seed = cli.opts.seed;
    match &cli.command {
        Command::Rootsys { ty } => Ok(rootsys_cmd(*ty)),
        Command::Complete { ty } => Ok(complete_cmd(*ty)),
        Command::Zeta { ty, psi } => zeta_cmd(*ty, psi),
        Command::Classify { ty, function } => classify_cmd(*ty, function),
        Command::VerifyTheorem { ty, fmax } => verify_theorem_cmd(*ty, *fmax),
        Command::SlModel {
            pattern,
            random,
            n,
            max_entry,
        } => match (pattern, random) {
            (Some(path), _) => sl_pattern_cmd(path),
            (None, Some(count)) => sl_random_cmd(n.unwrap_or(3), *count, *max_entry, seed),
            (None, None) => Err(InputError(
                "sl-model needs --pattern <file> or --random <count> --n <size>".into(),
            )),
        },
        Command::PaperExamples => paper_examples_cmd(),
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn envelope(command: &str, ty: Option<RootSystemType>, result: Value) -> Value {
    json!({
        "command": command,
        "type": ty.map(|t| t.to_string()),
        "result": result,
    })
}

fn rootsys_cmd(ty: RootSystemType) -> Output {
    let rs = RootSystem::new(ty);
    let datum = serde_json::to_value(root_datum(&rs)).expect("serializable");
    Output {
        report: envelope("rootsys", Some(ty), datum),
        rows_key: "roots",
        columns: &["index", "label", "coords", "epsilon", "height"],
        ok: true,
    }
}

fn complete_cmd(ty: RootSystemType) -> Output {
    let rs = RootSystem::new(ty);
    let sets = enumerate_complete(&rs);
    let rows: Vec<Value> = sets
        .par_iter()
        .enumerate()
        .map(|(i, psi)| {
            let z = zeta(&rs, psi);
            json!({
                "index": i,
                "size": psi.count(),
                "psi": root_set_json(&rs, psi),
                "z_low": z.z_low.to_string(),
                "z_high": z.z_high.to_string(),
                "zeta": zeta_json(&rs, &z),
            })
        })
        .collect();
    Output {
        report: envelope(
            "complete",
            Some(ty),
            json!({ "count": rows.len(), "subsets": rows }),
        ),
        rows_key: "subsets",
        columns: &["index", "size", "z_low", "z_high"],
        ok: true,
    }
}

fn zeta_cmd(ty: RootSystemType, path: &Path) -> Result<Output, InputError> {
    let rs = RootSystem::new(ty);
    let psi = parse_psi(&rs, &read(path)?).map_err(|e| InputError(e.to_string()))?;
    let z = zeta(&rs, &psi);
    let families: Vec<Vec<Vec<String>>> = zprime_families(&rs, &psi)
        .iter()
        .map(|fam| fam.iter().map(|&a| coords_json(&rs, a)).collect())
        .collect();
    let row = json!({
        "psi": root_set_json(&rs, &psi),
        "z_low": z.z_low.to_string(),
        "z_high": z.z_high.to_string(),
        "degenerate": z.is_degenerate(),
        "zeta": zeta_json(&rs, &z),
        "z_prime_families": families,
    });
    Ok(Output {
        report: envelope("zeta", Some(ty), json!({ "items": [row] })),
        rows_key: "items",
        columns: &["z_low", "z_high", "degenerate"],
        ok: true,
    })
}

/// Classification of one function, as a JSON item and a success flag.
fn classify_item(rs: &RootSystem, f: &parahoric::concave::ConcaveFn) -> (Value, bool) {
    let e = match f_eps(rs, f) {
        Ok(e) => e,
        Err(err) => return (json!({ "error": err.to_string() }), false),
    };
    let converse = type1_converse_check(rs, f).ok();
    match classify(rs, f) {
        Ok(cert) => {
            let check = verify_detailed(rs, f, &cert.classification);
            let converse_agrees = converse == Some(cert.branch == Branch::Type1);
            let structure = match cert.branch {
                Branch::Type1 => None,
                Branch::Type1Degenerate => degenerate_structure_check(rs, &cert.psi).err(),
                Branch::Type2 => type2_structure_check(rs, f).err(),
            };
            let levi_basis = match cert.branch {
                Branch::Type2 => type2_levi_basis_check(rs, f).err(),
                _ => None,
            };
            let ok = check.is_ok() && converse_agrees && structure.is_none();
            (
                json!({
                    "f_eps": e,
                    "branch": cert.branch.name(),
                    "verified": check.is_ok(),
                    "verify_error": check.err(),
                    "converse_agrees": converse_agrees,
                    "structure_error": structure,
                    "levi_basis_error": levi_basis,
                    "z": cert.z.to_string(),
                    "z_prime": cert.z_prime.to_string(),
                    "certificate": classification_json(rs, &cert),
                }),
                ok,
            )
        }
        Err(err) => (
            json!({ "f_eps": e, "branch": Value::Null, "verified": false, "error": err.to_string() }),
            false,
        ),
    }
}

fn classify_cmd(ty: RootSystemType, path: &Path) -> Result<Output, InputError> {
    let rs = RootSystem::new(ty);
    let f = parse_fn(&rs, &read(path)?).map_err(|e| InputError(e.to_string()))?;
    let nt = type_of(&rs, &f).map_err(|e| InputError(e.to_string()))?;
    let (mut item, ok) = classify_item(&rs, &f);
    item["kind"] = json!(match nt.kind {
        NormalKind::Type1 => "type1",
        NormalKind::Type2 => "type2",
    });
    item["v_min"] = json!(nt.v_min);
    item["psi"] = json!(root_set_json(&rs, &nt.psi));
    Ok(Output {
        report: envelope("classify", Some(ty), json!({ "items": [item] })),
        rows_key: "items",
        columns: &["kind", "branch", "verified", "converse_agrees"],
        ok,
    })
}

fn verify_theorem_cmd(ty: RootSystemType, fmax: i64) -> Result<Output, InputError> {
    if fmax < 0 {
        return Err(InputError("--fmax must be nonnegative".into()));
    }
    let rs = RootSystem::new(ty);
    let fns = enumerate_normal_fns(&rs, fmax);
    let exact_oracle = rs.rank() <= 3;
    let items: Vec<(Value, bool)> = fns
        .par_iter()
        .map(|e| {
            let f = from_f_eps(&rs, e);
            let (mut item, mut ok) = classify_item(&rs, &f);
            if exact_oracle {
                let exact = exact_filtration_point(&rs, &f).is_some();
                let agrees = exact == (item["branch"] == json!(Branch::Type1.name()));
                item["exact_oracle_agrees"] = json!(agrees);
                ok &= agrees;
            }
            (item, ok)
        })
        .collect();
    let failures = items.iter().filter(|(_, ok)| !ok).count();
    let basis_exceptions = items
        .iter()
        .filter(|(item, _)| !item["levi_basis_error"].is_null())
        .count();
    let mut counts = serde_json::Map::new();
    for (item, _) in &items {
        let key = item["branch"].as_str().unwrap_or("error").to_string();
        let c = counts.entry(key).or_insert(json!(0));
        *c = json!(c.as_u64().unwrap_or(0) + 1);
    }
    let rows: Vec<Value> = items
        .into_iter()
        .enumerate()
        .map(|(i, (mut item, ok))| {
            item["index"] = json!(i);
            item["ok"] = json!(ok);
            item
        })
        .collect();
    Ok(Output {
        report: envelope(
            "verify-theorem",
            Some(ty),
            json!({
                "fmax": fmax,
                "count": rows.len(),
                "failures": failures,
                "levi_basis_exceptions": basis_exceptions,
                "branches": counts,
                "items": rows,
            }),
        ),
        rows_key: "items",
        columns: &["index", "branch", "verified", "converse_agrees", "ok"],
        ok: failures == 0,
    })
}

/// Normality, extracted function and classification of one pattern.
fn pattern_item(p: &ValuationPattern) -> (Value, bool) {
    let (rs, f) = to_concave_fn(p);
    let tropical = is_normal_in_iwahori(p);
    let normal = is_normal_fn(&rs, &f);
    let mut item = json!({
        "pattern": p.to_string(),
        "tropical_normal": tropical,
        "normal_fn": normal,
        "agree": tropical == normal,
        "function": fn_json(&rs, &f),
    });
    let mut ok = tropical == normal;
    if normal {
        let (c, c_ok) = classify_item(&rs, &f);
        item["branch"] = c["branch"].clone();
        item["verified"] = c["verified"].clone();
        item["classification"] = c;
        ok &= c_ok;
    }
    (item, ok)
}

fn sl_pattern_cmd(path: &Path) -> Result<Output, InputError> {
    let p: ValuationPattern = read(path)?
        .parse()
        .map_err(|e: parahoric::sl_model::PatternError| InputError(e.to_string()))?;
    let (item, ok) = pattern_item(&p);
    Ok(Output {
        report: envelope("sl-model", None, json!({ "items": [item] })),
        rows_key: "items",
        columns: &[
            "tropical_normal",
            "normal_fn",
            "agree",
            "branch",
            "verified",
        ],
        ok,
    })
}

fn sl_random_cmd(n: usize, count: usize, max_entry: i64, seed: u64) -> Result<Output, InputError> {
    if n < 2 {
        return Err(InputError("--n must be at least 2".into()));
    }
    if max_entry < 1 {
        return Err(InputError("--max-entry must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let patterns: Vec<ValuationPattern> = (0..count)
        .map(|_| random_pattern(n, max_entry, &mut rng))
        .collect();
    let items: Vec<(Value, bool)> = patterns.par_iter().map(pattern_item).collect();
    let failures = items.iter().filter(|(_, ok)| !ok).count();
    let normal = items
        .iter()
        .filter(|(v, _)| v["normal_fn"] == json!(true))
        .count();
    let rows: Vec<Value> = items
        .into_iter()
        .enumerate()
        .map(|(i, (mut v, ok))| {
            v["index"] = json!(i);
            v["ok"] = json!(ok);
            v
        })
        .collect();
    Ok(Output {
        report: json!({
            "command": "sl-model",
            "type": format!("A{}", n - 1),
            "seed": seed,
            "result": {
                "n": n,
                "count": count,
                "normal": normal,
                "failures": failures,
                "items": rows,
            },
        }),
        rows_key: "items",
        columns: &["index", "tropical_normal", "normal_fn", "agree", "ok"],
        ok: failures == 0,
    })
}

fn worked_example(name: &str, p: &ValuationPattern) -> (Value, bool) {
    let (rs, f) = to_concave_fn(p);
    let (mut item, ok) = pattern_item(p);
    let Ok(nt) = type_of(&rs, &f) else {
        return (item, false);
    };
    let z = zeta(&rs, &nt.psi);
    let e = f_eps(&rs, &f).expect("integer values");
    let labelled: Vec<Value> = rs
        .roots()
        .map(|a| json!({ "root": rs.label(a), "value": e[a] }))
        .collect();
    item["name"] = json!(name);
    item["kind"] = json!(match nt.kind {
        NormalKind::Type1 => "type1",
        NormalKind::Type2 => "type2",
    });
    item["v_min"] = json!(nt.v_min);
    item["psi"] = json!(nt.psi.iter().map(|a| rs.label(a)).collect::<Vec<_>>());
    item["f_eps"] = json!(labelled);
    item["z_low"] = json!(z.z_low.to_string());
    item["z_high"] = json!(z.z_high.to_string());
    (item, ok)
}

fn paper_examples_cmd() -> Result<Output, InputError> {
    let examples = [
        ("type1-degenerate", example_type1_degenerate()),
        ("type2", example_type2()),
    ];
    let mut rows = Vec::new();
    let mut ok = true;
    for (name, p) in &examples {
        let (item, good) = worked_example(name, p);
        ok &= good;
        rows.push(item);
    }
    Ok(Output {
        report: envelope("paper-examples", None, json!({ "items": rows })),
        rows_key: "items",
        columns: &["name", "kind", "z_low", "z_high", "branch", "verified"],
        ok,
    })
}

fn tsv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.replace(['\t', '\n'], " "),
        other => other.to_string(),
    }
}

/// One header line and one line per row of the report's `rows_key` array.
fn to_tsv(out: &Output) -> String {
    let result = &out.report["result"];
    let rows = result[out.rows_key].as_array().cloned().unwrap_or_default();
    let mut s = out.columns.join("\t");
    s.push('\n');
    for row in &rows {
        let cells: Vec<String> = out.columns.iter().map(|c| tsv_cell(&row[*c])).collect();
        s.push_str(&cells.join("\t"));
        s.push('\n');
    }
    s
}
