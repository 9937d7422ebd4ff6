//! Command-line surface for the exact ADE computations: root-system data,
//! quantum dimensions at the even root of unity, loop-fundamental checks,
//! the root-of-unity Euler series, the stratification recursion, and the
//! independent cyclic-group staircase oracle.
//!
//! Exit codes: 0 success/PASS, 1 computational FAIL, 2 usage error,
//! 3 resource-guard refusal.  Standard output carries exactly the result in
//! the requested format; progress notes go to standard error.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde_json::{json, Value};

use hilbqdim_core::charlab::{dominant_multiplicities, trivial_multiplicity, weight_multiplicity};
use hilbqdim_core::fock::euler_series;
use hilbqdim_core::oracle::euler_series_oracle;
use hilbqdim_core::qdim::{
    field_for, quantum_dimension, quantum_dimension_via_character, weyl_dimension,
};
use hilbqdim_core::repdata::l_fundamental_qdim;
use hilbqdim_core::rootsys::{Family, RootSystem, Weight};
use hilbqdim_core::strata::{delta_multiple, enumerate_strata, hilbert_euler_via_strata, strata_euler};
use hilbqdim_core::{Error, DEFAULT_DIM_GUARD};

const VALID_LABELS: &str = "valid labels: A<r> (r ≥ 1), D<r> (r ≥ 4), E6, E7, E8";

/// Labels covered by the verification suites.
const SUITE_LABELS: [&str; 16] = [
    "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "D4", "D5", "D6", "D7", "D8", "E6", "E7",
    "E8",
];

#[derive(Parser)]
#[command(name = "hilbqdim", version, about = "Exact quantum dimensions and Euler series for ADE quotient singularities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Weyl-dimension guard for character computations.
    #[arg(long, global = true, env = "HILBQDIM_GUARD", default_value_t = DEFAULT_DIM_GUARD)]
    guard: u64,
    /// Worker threads for lattice enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print root-system data: Cartan matrix, marks, positive roots.
    Rootsystem {
        #[arg(long = "type")]
        label: String,
        /// Show the vertex numbering diagram.
        #[arg(long)]
        print_numbering: bool,
    },
    /// Quantum dimension of V(λ) at ζ = exp(2πi / 2(h∨+1)).
    Qdim {
        #[arg(long = "type")]
        label: String,
        /// Fundamental-weight coordinates, comma-separated.
        #[arg(long)]
        lambda: String,
        /// Evaluate through the full character instead of the product formula.
        #[arg(long)]
        via_character: bool,
    },
    /// Dominant weight multiplicities of V(λ).
    Weights {
        #[arg(long = "type")]
        label: String,
        #[arg(long)]
        lambda: String,
    },
    /// Check that every loop-fundamental module has quantum dimension 1.
    VerifyTheorem2 {
        /// Run the whole suite (default when --type is absent).
        #[arg(long)]
        all: bool,
        #[arg(long = "type")]
        label: Option<String>,
    },
    /// Coefficients of the root-of-unity Euler series.
    EulerSeries {
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        order: usize,
    },
    /// Strata of the n-point variety with the Euler number of each stratum.
    Strata {
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        points: i64,
    },
    /// Staircase counts for the cyclic group of order k.
    Oracle {
        #[arg(long)]
        cyclic: u64,
        #[arg(long)]
        n: usize,
    },
    /// Compare the type-A series against the staircase oracle coefficientwise.
    OracleCompare {
        #[arg(long)]
        cyclic: u64,
        #[arg(long)]
        n: usize,
    },
    /// Run every verification suite (the acceptance criteria).
    VerifyAll {
        /// Order for the series checks (inventory checks are fixed).
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
}

fn main() -> ExitCode {
    // Behave like a standard pipeline tool when stdout closes early.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code: u8 = match &e {
                Error::ResourceGuard { .. } => 3,
                Error::InvalidLabel(_)
                | Error::InvalidNode { .. }
                | Error::DimensionMismatch { .. }
                | Error::InvalidDimensionVector(_)
                | Error::NotDominant(_) => {
                    if matches!(e, Error::InvalidLabel(_)) {
                        eprintln!("{VALID_LABELS}");
                    }
                    2
                }
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let mass_guard = cli.guard.saturating_mul(10);
    match &cli.command {
        Command::Rootsystem {
            label,
            print_numbering,
        } => {
            let rs = RootSystem::from_label(label)?;
            cmd_rootsystem(cli, &rs, *print_numbering);
            Ok(ExitCode::SUCCESS)
        }
        Command::Qdim {
            label,
            lambda,
            via_character,
        } => {
            let rs = RootSystem::from_label(label)?;
            let lam = parse_weight(&rs, lambda)?;
            cmd_qdim(cli, &rs, &lam, *via_character)
        }
        Command::Weights { label, lambda } => {
            let rs = RootSystem::from_label(label)?;
            let lam = parse_weight(&rs, lambda)?;
            cmd_weights(cli, &rs, &lam)
        }
        Command::VerifyTheorem2 { all, label } => cmd_verify_theorem2(cli, *all, label.as_deref()),
        Command::EulerSeries { gamma, order } => {
            let rs = RootSystem::from_label(gamma)?;
            let series = euler_series(&rs, *order, cli.threads)?;
            emit_series(cli, json!({"gamma": rs.label().to_string(), "order": order}), "coefficients", &series);
            Ok(ExitCode::SUCCESS)
        }
        Command::Strata { gamma, points } => {
            let rs = RootSystem::from_label(gamma)?;
            cmd_strata(cli, &rs, *points, mass_guard)
        }
        Command::Oracle { cyclic, n } => {
            if *cyclic == 0 {
                return Err(Error::InvalidLabel("cyclic group order must be ≥ 1".into()));
            }
            let counts = euler_series_oracle(*cyclic, *n);
            emit_series(cli, json!({"cyclic": cyclic, "n": n}), "counts", &counts);
            Ok(ExitCode::SUCCESS)
        }
        Command::OracleCompare { cyclic, n } => cmd_oracle_compare(cli, *cyclic, *n),
        Command::VerifyAll { order } => cmd_verify_all(cli, *order, mass_guard),
    }
}

/// Comma-separated fundamental coordinates; length must match the rank.
fn parse_weight(rs: &RootSystem, s: &str) -> Result<Weight, Error> {
    let coords: Result<Vec<i64>, _> = s.split(',').map(|t| t.trim().parse::<i64>()).collect();
    let coords = coords.map_err(|_| {
        Error::InvalidDimensionVector(format!("cannot parse `{s}` as comma-separated integers"))
    })?;
    if coords.len() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            got: coords.len(),
        });
    }
    Ok(Weight(coords))
}

fn big_str(x: &BigInt) -> String {
    x.to_string()
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

/// Series-shaped output: text prints a bracketed list, CSV prints index,value.
fn emit_series(cli: &Cli, mut header: Value, key: &str, series: &[BigInt]) {
    match cli.format {
        Format::Text => {
            let parts: Vec<String> = series.iter().map(big_str).collect();
            println!("[{}]", parts.join(", "));
        }
        Format::Json => {
            header[key] = Value::Array(series.iter().map(|c| Value::String(big_str(c))).collect());
            print_json(&header);
        }
        Format::Csv => {
            println!("index,value");
            for (i, c) in series.iter().enumerate() {
                println!("{i},{c}");
            }
        }
    }
}

fn diagram(rs: &RootSystem) -> String {
    let r = rs.rank();
    let labels: Vec<String> = (1..=r).map(|i| i.to_string()).collect();
    let family = rs.label().family;
    match family {
        Family::A => labels.join(" - "),
        Family::D => {
            // 1 - 2 - … - (r−1) in a row, node r below node r−2.
            let row = labels[..r - 1].join(" - ");
            let col = labels[..r - 2].join(" - ").len() - labels[r - 3].len();
            let mut out = String::new();
            out.push_str(&row);
            out.push('\n');
            out.push_str(&" ".repeat(col));
            out.push_str("|\n");
            out.push_str(&" ".repeat(col));
            out.push_str(&labels[r - 1]);
            out
        }
        Family::E => {
            // 1 - 3 - 4 - … - r in a row, node 2 below node 4.
            let mut row_nodes = vec!["1".to_string()];
            row_nodes.extend((3..=r).map(|i| i.to_string()));
            let row = row_nodes.join(" - ");
            let col = "1 - 3 - ".len();
            format!("{row}\n{}|\n{}2", " ".repeat(col), " ".repeat(col))
        }
    }
}

fn cmd_rootsystem(cli: &Cli, rs: &RootSystem, print_numbering: bool) {
    let roots: Vec<Vec<i64>> = rs.positive_roots().iter().map(|r| r.0.clone()).collect();
    match cli.format {
        Format::Json => {
            let mut doc = json!({
                "label": rs.label().to_string(),
                "rank": rs.rank(),
                "dual_coxeter": rs.dual_coxeter(),
                "conductor": rs.conductor(),
                "cartan_determinant": rs.det_cartan(),
                "cartan": rs.cartan(),
                "marks": rs.marks(),
                "positive_roots": roots,
            });
            if print_numbering {
                doc["numbering"] = Value::String(diagram(rs));
            }
            print_json(&doc);
        }
        Format::Text => {
            println!("label: {}", rs.label());
            println!("rank: {}", rs.rank());
            println!("dual Coxeter number: {}", rs.dual_coxeter());
            println!("conductor: {}", rs.conductor());
            println!("Cartan determinant: {}", rs.det_cartan());
            println!("marks (affine node first): {:?}", rs.marks());
            println!("positive roots ({}):", roots.len());
            for root in &roots {
                println!("  {root:?}");
            }
            if print_numbering {
                println!("numbering:\n{}", diagram(rs));
            }
        }
        Format::Csv => {
            println!("index,value");
            for (i, root) in roots.iter().enumerate() {
                let coords: Vec<String> = root.iter().map(|c| c.to_string()).collect();
                println!("{i},{}", coords.join(" "));
            }
        }
    }
}

fn cmd_qdim(cli: &Cli, rs: &RootSystem, lam: &Weight, via_character: bool) -> Result<ExitCode, Error> {
    let field = field_for(rs);
    let value = if via_character {
        quantum_dimension_via_character(rs, &field, lam, cli.guard)?
    } else {
        quantum_dimension(rs, &field, lam)?
    };
    let rendered = match value.as_integer() {
        Some(i) => i.to_string(),
        None => value.render(),
    };
    match cli.format {
        Format::Text => println!("{rendered}"),
        Format::Json => print_json(&json!({
            "type": rs.label().to_string(),
            "lambda": lam.0,
            "path": if via_character { "character" } else { "product" },
            "qdim": rendered,
        })),
        Format::Csv => {
            println!("index,value");
            println!("0,{rendered}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_weights(cli: &Cli, rs: &RootSystem, lam: &Weight) -> Result<ExitCode, Error> {
    let mults = dominant_multiplicities(rs, lam, cli.guard)?;
    match cli.format {
        Format::Text => {
            for (mu, m) in &mults {
                println!("{:?}: {m}", mu.0);
            }
        }
        Format::Json => {
            let rows: Vec<Value> = mults
                .iter()
                .map(|(mu, m)| json!({"weight": mu.0, "multiplicity": big_str(m)}))
                .collect();
            print_json(&json!({
                "type": rs.label().to_string(),
                "lambda": lam.0,
                "dimension": big_str(&weyl_dimension(rs, lam)?),
                "dominant_weights": rows,
            }));
        }
        Format::Csv => {
            println!("index,value");
            for (mu, m) in &mults {
                let coords: Vec<String> = mu.0.iter().map(|c| c.to_string()).collect();
                println!("{},{m}", coords.join(" "));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify_theorem2(cli: &Cli, all: bool, label: Option<&str>) -> Result<ExitCode, Error> {
    let labels: Vec<String> = match label {
        Some(l) if !all => vec![l.to_string()],
        _ => SUITE_LABELS.iter().map(|s| s.to_string()).collect(),
    };
    let mut rows = Vec::new();
    let mut pass = true;
    for l in &labels {
        let rs = RootSystem::from_label(l)?;
        let field = field_for(&rs);
        for node in 1..=rs.rank() {
            let d = l_fundamental_qdim(&rs, &field, node)?;
            let rendered = match d.as_integer() {
                Some(i) => i.to_string(),
                None => d.render(),
            };
            let ok = d.as_integer().map(|i| i.is_one()).unwrap_or(false);
            pass &= ok;
            rows.push((l.clone(), node, rendered, ok));
        }
    }
    match cli.format {
        Format::Text => {
            for (l, node, v, ok) in &rows {
                println!("{l} node {node}: {v} {}", if *ok { "PASS" } else { "FAIL" });
            }
            println!("{}", if pass { "PASS" } else { "FAIL" });
        }
        Format::Json => {
            let results: Vec<Value> = rows
                .iter()
                .map(|(l, node, v, ok)| json!({"type": l, "node": node, "qdim": v, "pass": ok}))
                .collect();
            print_json(&json!({"results": results, "pass": pass}));
        }
        Format::Csv => {
            println!("index,value");
            for (i, (l, node, v, _)) in rows.iter().enumerate() {
                println!("{i},{l} {node} {v}");
            }
        }
    }
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_strata(cli: &Cli, rs: &RootSystem, points: i64, mass_guard: u64) -> Result<ExitCode, Error> {
    if points < 0 {
        return Err(Error::InvalidDimensionVector(
            "the number of points must be nonnegative".into(),
        ));
    }
    let v = delta_multiple(rs, points);
    // The Euler recursion needs complete character tables; fall back to bare
    // enumeration (chi = null) where they are unavailable.
    let (strata, chis): (Vec<_>, Option<Vec<BigInt>>) =
        match strata_euler(rs, &v, cli.guard, mass_guard) {
            Ok(pairs) => {
                let (s, c): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
                (s, Some(c))
            }
            Err(Error::IncompleteTable) => (enumerate_strata(rs, &v)?, None),
            Err(e) => return Err(e),
        };
    let total: Option<BigInt> = chis.as_ref().map(|c| c.iter().sum());
    let series_coeff = euler_series(rs, points as usize, cli.threads)?
        .pop()
        .expect("series has the requested order");
    let matches = total.as_ref().map(|t| *t == series_coeff);

    match cli.format {
        Format::Text => {
            for (i, s) in strata.iter().enumerate() {
                let chi = match &chis {
                    Some(c) => c[i].to_string(),
                    None => "null".to_string(),
                };
                println!(
                    "#{i}: m'={:?} v^s={:?} w^s={:?} Q={} dim={} chi={chi}",
                    s.m_prime, s.v_s, s.w_s.0, s.norm, s.dim
                );
            }
            match (&total, matches) {
                (Some(t), Some(ok)) => println!(
                    "total chi = {t}; series coefficient = {series_coeff}; match = {}",
                    if ok { "yes" } else { "NO" }
                ),
                _ => println!(
                    "total chi = null (character tables incomplete); series coefficient = {series_coeff}"
                ),
            }
        }
        Format::Json => {
            let rows: Vec<Value> = strata
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    json!({
                        "m_prime": s.m_prime,
                        "v_s": s.v_s,
                        "w_s": s.w_s.0,
                        "norm": s.norm,
                        "dim": s.dim,
                        "v_prime": s.v_prime,
                        "chi": match &chis {
                            Some(c) => Value::String(c[i].to_string()),
                            None => Value::Null,
                        },
                    })
                })
                .collect();
            print_json(&json!({
                "gamma": rs.label().to_string(),
                "points": points,
                "strata": rows,
                "total_chi": total.as_ref().map(big_str),
                "series_coefficient": big_str(&series_coeff),
                "matches_series": matches,
            }));
        }
        Format::Csv => {
            println!("index,value");
            for (i, _) in strata.iter().enumerate() {
                let chi = match &chis {
                    Some(c) => c[i].to_string(),
                    None => String::new(),
                };
                println!("{i},{chi}");
            }
        }
    }
    // A computed mismatch against the series is a verification failure.
    Ok(if matches == Some(false) {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_oracle_compare(cli: &Cli, cyclic: u64, n: usize) -> Result<ExitCode, Error> {
    if cyclic < 2 {
        return Err(Error::InvalidLabel(
            "oracle comparison needs a cyclic group of order ≥ 2".into(),
        ));
    }
    let rs = RootSystem::from_label(&format!("A{}", cyclic - 1))?;
    eprintln!("comparing staircase counts with the A{} series…", cyclic - 1);
    let oracle = euler_series_oracle(cyclic, n);
    let series = euler_series(&rs, n, cli.threads)?;
    let mut pass = true;
    let mut rows = Vec::new();
    for i in 0..=n {
        let ok = oracle[i] == series[i];
        pass &= ok;
        rows.push((i, oracle[i].clone(), series[i].clone(), ok));
    }
    match cli.format {
        Format::Text => {
            for (i, o, s, ok) in &rows {
                println!(
                    "n={i}: oracle={o} series={s} {}",
                    if *ok { "PASS" } else { "FAIL" }
                );
            }
            println!("{}", if pass { "PASS" } else { "FAIL" });
        }
        Format::Json => {
            let results: Vec<Value> = rows
                .iter()
                .map(|(i, o, s, ok)| {
                    json!({"n": i, "oracle": big_str(o), "series": big_str(s), "pass": ok})
                })
                .collect();
            print_json(&json!({"cyclic": cyclic, "results": results, "pass": pass}));
        }
        Format::Csv => {
            println!("index,value");
            for (i, o, s, ok) in &rows {
                println!("{i},{o} {s} {}", if *ok { "PASS" } else { "FAIL" });
            }
        }
    }
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_verify_all(cli: &Cli, order: usize, mass_guard: u64) -> Result<ExitCode, Error> {
    let mut pass = true;
    let mut report = |name: &str, ok: bool| {
        println!("[{}] {name}", if ok { "PASS" } else { "FAIL" });
        pass &= ok;
    };

    // Quantum-dimension fundamentals: 1 in type A everywhere; D at 1, n−1, n;
    // E6 at 1, 6; 0 elsewhere.
    let mut ok = true;
    for l in SUITE_LABELS {
        let rs = RootSystem::from_label(l)?;
        let field = field_for(&rs);
        for node in 1..=rs.rank() {
            let d = quantum_dimension(&rs, &field, &Weight::fundamental(rs.rank(), node))?;
            let val = d.as_integer();
            let want = match l.chars().next().unwrap() {
                'A' => 1,
                'D' => {
                    if node == 1 || node >= rs.rank() - 1 {
                        1
                    } else {
                        0
                    }
                }
                _ => match (l, node) {
                    ("E6", 1) | ("E6", 6) | ("E7", 7) => 1,
                    _ => 0,
                },
            };
            ok &= val == Some(BigInt::from(want));
        }
    }
    report("fundamental quantum-dimension tables", ok);

    // Loop-fundamental products all equal 1.
    let mut ok = true;
    for l in SUITE_LABELS {
        let rs = RootSystem::from_label(l)?;
        let field = field_for(&rs);
        for node in 1..=rs.rank() {
            let d = l_fundamental_qdim(&rs, &field, node)?;
            ok &= d.as_integer().map(|i| i.is_one()).unwrap_or(false);
        }
    }
    report("loop-fundamental quantum dimensions equal 1", ok);

    // Type-A series against the staircase oracle.
    let mut ok = true;
    for k in 2..=6u64 {
        let rs = RootSystem::from_label(&format!("A{}", k - 1))?;
        ok &= euler_series(&rs, order, cli.threads)? == euler_series_oracle(k, order);
    }
    report("type-A series equals the staircase oracle", ok);

    // Integrality and nonnegativity for every type.
    let mut ok = true;
    for l in SUITE_LABELS {
        let rs = RootSystem::from_label(l)?;
        let series = euler_series(&rs, order, cli.threads)?;
        ok &= series.iter().all(|c| !c.is_negative()) && series[0].is_one();
    }
    report("series coefficients integral and nonnegative", ok);

    // Strata recursion against the series.
    let mut ok = true;
    for (l, max_n) in [("A2", 3i64), ("A3", 3), ("D4", 2), ("D5", 2), ("E6", 2)] {
        let rs = RootSystem::from_label(l)?;
        let series = euler_series(&rs, max_n as usize, cli.threads)?;
        for n in 0..=max_n {
            ok &= hilbert_euler_via_strata(&rs, n, cli.guard, mass_guard)?
                == series[n as usize];
        }
    }
    report("strata recursion reproduces the series", ok);

    // Stratum lattice identities, including E8 (enumeration only).
    let mut ok = true;
    for l in ["A3", "D4", "E6", "E8"] {
        let rs = RootSystem::from_label(l)?;
        for st in enumerate_strata(&rs, &delta_multiple(&rs, 2))? {
            let cv: Vec<i64> = rs
                .cartan()
                .iter()
                .map(|row| row.iter().zip(&st.v_s).map(|(a, b)| a * b).sum())
                .collect();
            ok &= cv == st.w_s.0 && st.m_prime.iter().all(|&x| x <= 0);
        }
    }
    report("stratum lattice identities", ok);

    // Small character checks.
    let a1 = RootSystem::from_label("A1")?;
    let fund = Weight::fundamental(1, 1);
    let four = vec![fund.clone(), fund.clone(), fund.clone(), fund];
    let a3 = RootSystem::from_label("A3")?;
    let ok = trivial_multiplicity(&a1, &four, cli.guard, mass_guard)? == BigInt::from(2)
        && weight_multiplicity(
            &a3,
            &Weight(vec![0, 2, 0]),
            &Weight::zero(3),
            cli.guard,
        )? == BigInt::from(2);
    report("small character checks", ok);

    // Two evaluation paths agree on a spot-check sample.
    let mut ok = true;
    for l in ["A2", "A3", "D4"] {
        let rs = RootSystem::from_label(l)?;
        let field = field_for(&rs);
        let mut lambda = Weight(vec![0; rs.rank()]);
        for node in 1..=rs.rank() {
            lambda.0[node - 1] = 1;
            ok &= quantum_dimension(&rs, &field, &lambda)?
                == quantum_dimension_via_character(&rs, &field, &lambda, cli.guard)?;
        }
    }
    report("product and character paths agree", ok);

    println!("{}", if pass { "PASS" } else { "FAIL" });
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
