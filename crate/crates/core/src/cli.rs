//! The `lpdist` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::audit::{levy_prohorov_gap_search, metric_axiom_fuzz, GapRecord, InstanceSpec};
use crate::convergence::{
    helly_subsequence, levy_convergence_profile, portmanteau_report, quantize, tightness_witness, Condition,
    HellyOutcome, MeasureSequence, PortmanteauFamilies, PortmanteauReport,
};
use crate::error::{Error, Result};
use crate::io::{law_to_json, measure_to_json, put_number, read_corpus, read_law, render};
use crate::levy::{kolmogorov_distance, levy_distance, BandSide, Distance, DistanceWitness};
use crate::measures::{Law, PointSet, Set};
use crate::prohorov::{prohorov_bruteforce_with_cap, DistanceReport, Side};
use crate::scalar::Scalar;
use crate::transport::{flow_frontier, prohorov_via_flow, write_frontier_csv};
use crate::Rational;

#[derive(Parser, Debug)]
#[command(name = "lpdist", version, about = "Exact Lévy, Kolmogorov and Prohorov distances")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "LPDIST_FORMAT", default_value = "json")]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MetricArg {
    Levy,
    Kolmogorov,
    Prohorov,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Enumerate,
    Flow,
    Auto,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Distance between two measures.
    Dist(DistArgs),
    /// Convergence diagnostics for a sequence corpus.
    Converge {
        #[arg(long)]
        corpus: PathBuf,
        /// Grid for Helly selection and continuity-point checks, e.g. "0,1/2,1".
        #[arg(long, conflicts_with = "grid_range")]
        grid: Option<String>,
        /// Evenly spaced grid "lo:hi:pieces", e.g. "0:1:16".
        #[arg(long)]
        grid_range: Option<String>,
        /// Helly cluster tolerance.
        #[arg(long, default_value = "1/32")]
        tol: String,
        /// Largest tail margin accepted by the weak-convergence checks.
        #[arg(long, default_value = "0")]
        margin_tol: String,
    },
    /// Shortest interval carrying mass above 1 − ε under every measure.
    Tightness {
        #[arg(long)]
        epsilon: String,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Finitely supported approximation within Prohorov distance δ.
    Quantize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        delta: String,
    },
    /// Metric-axiom fuzzing and Lévy/Prohorov gap search on random instances.
    Audit {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        min_atoms: usize,
        #[arg(long, default_value_t = 4)]
        max_atoms: usize,
        #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
        coord_lo: i64,
        #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
        coord_hi: i64,
        #[arg(long, default_value_t = 8)]
        denom: i64,
    },
}

#[derive(Args, Debug)]
struct DistArgs {
    #[arg(long, value_enum, default_value = "prohorov")]
    metric: MetricArg,
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    /// Prohorov algorithm.
    #[arg(long, value_enum, default_value = "auto")]
    method: Method,
    /// Run enumeration and flow and require exact agreement.
    #[arg(long)]
    verify: bool,
    /// Dump the ε-vs-flow curve as CSV.
    #[arg(long)]
    frontier: Option<PathBuf>,
    /// Largest combined support for enumeration.
    #[arg(long, default_value_t = crate::prohorov::DEFAULT_ENUMERATION_CAP)]
    cap: usize,
    /// `auto` enumerates below this many combined atoms.
    #[arg(long, default_value_t = 13)]
    auto_threshold: usize,
}

/// Report in both shapes; the chosen format picks one.
struct Output {
    json: Value,
    csv: Vec<Vec<String>>,
}

fn rational(field: &str, s: &str) -> Result<Rational> {
    Rational::parse_rational(s).ok_or_else(|| Error::invalid(field, format!("malformed rational {s:?}")))
}

fn approx_str<T: Scalar>(x: &T) -> String {
    x.to_f64_approx().to_string()
}

fn set_json<T: Scalar>(set: &Set<T>) -> Value {
    match set {
        Set::Points(PointSet::Line(p)) => json!({ "points": p.iter().map(render).collect::<Vec<_>>() }),
        Set::Points(PointSet::Finite(p)) => json!({ "points": p }),
        Set::Intervals(u) => json!({ "intervals": u.to_string() }),
    }
}

fn levy_json(d: &Distance<Rational>) -> Value {
    let mut o = Map::new();
    put_number(&mut o, "value", &d.value);
    o.insert("attained".into(), json!(d.attained));
    let w = match &d.witness {
        Some(DistanceWitness::Band(b)) => {
            let side = match b.side {
                BandSide::Lower => "F(x - h) - h > G(x)",
                BandSide::Upper => "G(x) > F(x + h) + h",
            };
            json!({ "kind": "band", "h": render(&b.h), "x": render(&b.x), "fails": side })
        }
        Some(DistanceWitness::Location { x, left_limit }) => {
            json!({ "kind": "location", "x": render(x), "left_limit": left_limit })
        }
        None => Value::Null,
    };
    o.insert("witness".into(), w);
    Value::Object(o)
}

fn prohorov_json(r: &DistanceReport<Rational>) -> Value {
    let mut o = Map::new();
    put_number(&mut o, "value", &r.value);
    o.insert("attained".into(), json!(r.attained));
    let w = match &r.witness {
        Some(w) => json!({
            "side": match w.side { Side::Mu => "a", Side::Nu => "b" },
            "inequality": match w.side {
                Side::Mu => "a(A) > b(A^eps) + eps",
                Side::Nu => "b(A) > a(A^eps) + eps",
            },
            "epsilon": render(&w.eps),
            "set": set_json(&w.set),
        }),
        None => Value::Null,
    };
    o.insert("witness".into(), w);
    o.insert("feasible_at".into(), r.feasible_at.as_ref().map_or(Value::Null, render));
    if let Some(c) = &r.coupling {
        let rows: Vec<Vec<Value>> = c.joint.iter().map(|row| row.iter().map(render).collect()).collect();
        o.insert("coupling".into(), json!(rows));
    }
    Value::Object(o)
}

fn combined_atoms(a: &Law<Rational>, b: &Law<Rational>) -> Option<usize> {
    Some(a.discrete()?.len() + b.discrete()?.len())
}

fn dist(args: &DistArgs) -> Result<Output> {
    let DistArgs {
        metric,
        a,
        b,
        method,
        verify,
        frontier,
        cap,
        auto_threshold,
    } = args;
    let (metric, method, cap) = (*metric, *method, *cap);
    let (mu, nu): (Law<Rational>, Law<Rational>) = (read_law(a)?, read_law(b)?);
    let mut o = Map::new();
    let metric_name = match metric {
        MetricArg::Levy => "levy",
        MetricArg::Kolmogorov => "kolmogorov",
        MetricArg::Prohorov => "prohorov",
    };
    o.insert("metric".into(), json!(metric_name));
    let (value, attained, method_used) = match metric {
        MetricArg::Levy | MetricArg::Kolmogorov => {
            let (f, g) = (mu.cdf()?, nu.cdf()?);
            let d = if metric == MetricArg::Levy {
                levy_distance(&f, &g)
            } else {
                kolmogorov_distance(&f, &g)
            };
            o.insert("result".into(), levy_json(&d));
            (d.value, d.attained, "exact")
        }
        MetricArg::Prohorov => {
            let combined = combined_atoms(&mu, &nu);
            let chosen = match method {
                Method::Auto => match combined {
                    Some(n) if n >= *auto_threshold => Method::Flow,
                    _ => Method::Enumerate,
                },
                m => m,
            };
            let report = match chosen {
                Method::Flow => prohorov_via_flow(&mu, &nu)?,
                _ => prohorov_bruteforce_with_cap(&mu, &nu, cap)?,
            };
            if *verify {
                let other = match chosen {
                    Method::Flow => prohorov_bruteforce_with_cap(&mu, &nu, cap)?,
                    _ => prohorov_via_flow(&mu, &nu)?,
                };
                if other.value != report.value || other.attained != report.attained {
                    return Err(Error::invalid(
                        "verify",
                        format!("enumeration and flow disagree: {} vs {}", report.value, other.value),
                    ));
                }
                o.insert(
                    "verified".into(),
                    json!({ "agree": true, "value": render(&other.value) }),
                );
            }
            if let Some(path) = frontier.as_deref() {
                let rows = flow_frontier(&mu, &nu)?;
                let file = std::fs::File::create(path).map_err(|e| Error::Io {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?;
                write_frontier_csv(&rows, file)?;
            }
            o.insert("result".into(), prohorov_json(&report));
            let name = if chosen == Method::Flow { "flow" } else { "enumerate" };
            (report.value, report.attained, name)
        }
    };
    o.insert("method".into(), json!(method_used));
    let csv = vec![
        vec![
            "metric".into(),
            "method".into(),
            "value".into(),
            "value_approx".into(),
            "attained".into(),
        ],
        vec![
            metric_name.into(),
            method_used.into(),
            value.render(),
            approx_str(&value),
            attained.to_string(),
        ],
    ];
    Ok(Output {
        json: Value::Object(o),
        csv,
    })
}

fn parse_grid(grid: Option<&str>, range: Option<&str>) -> Result<Option<Vec<Rational>>> {
    if let Some(g) = grid {
        let pts = g
            .split(',')
            .enumerate()
            .map(|(i, s)| rational(&format!("grid[{i}]"), s))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Some(pts));
    }
    if let Some(r) = range {
        let parts: Vec<&str> = r.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::invalid("grid-range", "expected lo:hi:pieces"));
        }
        let lo = rational("grid-range.lo", parts[0])?;
        let hi = rational("grid-range.hi", parts[1])?;
        let n: i64 = parts[2]
            .trim()
            .parse()
            .ok()
            .filter(|n| *n >= 1)
            .ok_or_else(|| Error::invalid("grid-range.pieces", "expected a positive integer"))?;
        if hi <= lo {
            return Err(Error::invalid("grid-range", "hi must exceed lo"));
        }
        let step = (hi - lo.clone()) / Rational::from_int(n);
        return Ok(Some(
            (0..=n)
                .map(|k| lo.clone() + step.clone() * Rational::from_int(k))
                .collect(),
        ));
    }
    Ok(None)
}

fn portmanteau_json(rep: &PortmanteauReport<Rational>) -> Value {
    let conditions: Vec<Value> = rep
        .conditions
        .iter()
        .map(|c| {
            let mut o = Map::new();
            o.insert("condition".into(), json!(c.condition.name()));
            o.insert("pass".into(), json!(c.pass));
            put_number(&mut o, "worst_margin", &c.worst_margin);
            o.insert("worst_member".into(), json!(c.worst_member));
            o.insert("family_size".into(), json!(c.family.len()));
            o.insert("excluded".into(), json!(c.excluded));
            o.insert("oscillating".into(), json!(c.oscillating));
            Value::Object(o)
        })
        .collect();
    json!({
        "evidence_for_prefix_length": rep.prefix_len,
        "tail_window": [rep.window.0, rep.window.1],
        "tol": render(&rep.tol),
        "conditions": conditions,
    })
}

fn converge(corpus: &Path, grid: Option<Vec<Rational>>, tol: &Rational, margin_tol: &Rational) -> Result<Output> {
    let c = read_corpus::<Rational>(corpus)?;
    let seq = MeasureSequence::new(c.sequence)?;
    if c.limit.is_none() && grid.is_none() {
        return Err(Error::invalid(
            "corpus",
            "needs a \"limit\" entry or a --grid for subsequence selection",
        ));
    }
    let cdfs = seq.cdfs()?;
    let mut o = Map::new();
    o.insert("prefix_length".into(), json!(seq.len()));
    let mut header = vec!["n".to_string()];
    let mut rows: Vec<Vec<String>> = (1..=seq.len()).map(|n| vec![n.to_string()]).collect();

    if let Some(limit) = &c.limit {
        let limit_cdf = limit.cdf()?;
        let profile = levy_convergence_profile(&cdfs, &limit_cdf, grid.as_deref().unwrap_or(&[]));
        let prohorov: Vec<Option<Rational>> = seq
            .items()
            .iter()
            .map(|m| crate::audit::prohorov_auto(m, limit).ok().map(|r| r.value))
            .collect();
        let fam = PortmanteauFamilies::defaults(&seq, limit)?;
        let rep = portmanteau_report(&seq, limit, &fam, margin_tol)?;
        let entries: Vec<Value> = (0..seq.len())
            .map(|i| {
                let mut e = Map::new();
                e.insert("n".into(), json!(i + 1));
                put_number(&mut e, "levy", &profile.levy[i]);
                match &prohorov[i] {
                    Some(p) => put_number(&mut e, "prohorov", p),
                    None => {
                        e.insert("prohorov".into(), Value::Null);
                    }
                }
                if !profile.grid.is_empty() {
                    put_number(
                        &mut e,
                        "max_gap_at_continuity_points",
                        &profile.max_continuity_gap(i + 1),
                    );
                }
                Value::Object(e)
            })
            .collect();
        o.insert("profile".into(), json!(entries));
        o.insert("weak_convergence".into(), portmanteau_json(&rep));
        header.extend(["levy", "levy_approx", "prohorov", "prohorov_approx"].map(String::from));
        for c in [
            Condition::Closed,
            Condition::Open,
            Condition::Continuity,
            Condition::Functions,
        ] {
            header.push(format!("{}_margin", c.name()));
        }
        for (i, row) in rows.iter_mut().enumerate() {
            row.push(profile.levy[i].render());
            row.push(approx_str(&profile.levy[i]));
            match &prohorov[i] {
                Some(p) => {
                    row.push(p.render());
                    row.push(approx_str(p));
                }
                None => row.extend([String::new(), String::new()]),
            }
            for c in [
                Condition::Closed,
                Condition::Open,
                Condition::Continuity,
                Condition::Functions,
            ] {
                row.push(rep.get(c).per_index[i].render());
            }
        }
    }

    if let Some(grid) = &grid {
        let h = match helly_subsequence(&cdfs, grid, tol)? {
            HellyOutcome::Selected(s) => {
                header.extend(["selected", "levy_to_candidate"].map(String::from));
                for row in rows.iter_mut() {
                    let n: usize = row[0].parse().expect("index column");
                    match s.indices.iter().position(|&k| k == n) {
                        Some(k) => row.extend(["true".into(), s.levy[k].render()]),
                        None => row.extend(["false".into(), String::new()]),
                    }
                }
                json!({
                    "outcome": "selected",
                    "indices": s.indices,
                    "limit_candidate": law_to_json(&s.limit.clone().into()),
                    "levy_to_candidate": s.levy.iter().map(render).collect::<Vec<_>>(),
                })
            }
            HellyOutcome::InsufficientPrefix { failing } => json!({
                "outcome": "insufficient prefix",
                "failing_grid_points": failing.iter().map(render).collect::<Vec<_>>(),
            }),
        };
        o.insert("subsequence".into(), h);
    }
    let mut csv = vec![header];
    csv.extend(rows);
    Ok(Output {
        json: Value::Object(o),
        csv,
    })
}

fn tightness(eps: &Rational, files: &[PathBuf]) -> Result<Output> {
    let family = files
        .iter()
        .map(|p| read_law::<Rational>(p))
        .collect::<Result<Vec<_>>>()?;
    let w = tightness_witness(&family, eps)?;
    let json = json!({
        "epsilon": render(eps),
        "interval": [render(&w.lo), render(&w.hi)],
        "least_mass_member": files[w.binding].display().to_string(),
        "masses": w.masses.iter().map(render).collect::<Vec<_>>(),
    });
    let csv = vec![
        vec![
            "lo".into(),
            "hi".into(),
            "least_mass_member".into(),
            "least_mass".into(),
        ],
        vec![
            w.lo.render(),
            w.hi.render(),
            files[w.binding].display().to_string(),
            w.masses[w.binding].render(),
        ],
    ];
    Ok(Output { json, csv })
}

fn quantize_cmd(input: &Path, delta: &Rational) -> Result<Output> {
    let law = read_law::<Rational>(input)?;
    let m = quantize(&law, delta)?;
    let mut csv = vec![vec!["atom".to_string(), "weight".to_string()]];
    if let Some(atoms) = m.line_atoms() {
        for (a, w) in atoms.iter().zip(m.weights()) {
            csv.push(vec![a.render(), w.render()]);
        }
    }
    Ok(Output {
        json: measure_to_json(&m),
        csv,
    })
}

fn gap_json(r: &GapRecord<Rational>) -> Value {
    let mut o = Map::new();
    o.insert("label".into(), json!(r.label));
    o.insert("trial".into(), json!(r.trial));
    o.insert("a".into(), law_to_json(&r.mu));
    o.insert("b".into(), law_to_json(&r.nu));
    o.insert("levy".into(), levy_json(&r.levy));
    o.insert("prohorov".into(), prohorov_json(&r.prohorov));
    put_number(&mut o, "gap", &r.gap);
    Value::Object(o)
}

fn audit(spec: InstanceSpec, trials: usize) -> Result<Output> {
    let axioms = metric_axiom_fuzz::<Rational>(&spec, trials)?;
    let records = levy_prohorov_gap_search::<Rational>(&spec, trials)?;
    let violations: Vec<Value> = axioms
        .violations
        .iter()
        .map(|v| {
            json!({
                "trial": v.trial,
                "metric": v.metric.name(),
                "axiom": v.axiom,
                "measures": v.measures.iter().map(measure_to_json).collect::<Vec<_>>(),
                "values": v.values.iter().map(render).collect::<Vec<_>>(),
            })
        })
        .collect();
    let max_gap = records
        .first()
        .map(|r| r.gap.clone())
        .unwrap_or_else(|| Rational::from_int(0));
    let positive = records.iter().filter(|r| r.gap > Rational::from_int(0)).count();
    let huber_ok = records.iter().all(|r| r.gap >= Rational::from_int(0));
    let json = json!({
        "spec": {
            "seed": spec.seed,
            "min_atoms": spec.min_atoms,
            "max_atoms": spec.max_atoms,
            "coord_lo": spec.coord_lo,
            "coord_hi": spec.coord_hi,
            "denom": spec.denom,
        },
        "trials": trials,
        "metric_axioms": {
            "checks": axioms.checks,
            "violations": violations,
        },
        "gap_search": {
            "audited_claim": "Levy distance equals Prohorov distance for laws on the real line",
            "levy_at_most_prohorov_on_all_records": huber_ok,
            "gap_observed": max_gap > Rational::from_int(0),
            "records_with_positive_gap": positive,
            "max_gap": render(&max_gap),
            "records": records.iter().map(gap_json).collect::<Vec<_>>(),
        },
    });
    let mut csv = vec![["seed", "trial", "levy", "prohorov", "gap"].map(String::from).to_vec()];
    for r in &records {
        csv.push(vec![
            spec.seed.to_string(),
            r.trial.map_or(String::new(), |t| t.to_string()),
            r.levy.value.render(),
            r.prohorov.value.render(),
            r.gap.render(),
        ]);
    }
    Ok(Output { json, csv })
}

fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Dist(args) => {
            if args.method == Method::Enumerate {
                if let (Ok(x), Ok(y)) = (read_law::<Rational>(&args.a), read_law::<Rational>(&args.b)) {
                    if let Some(n) = combined_atoms(&x, &y) {
                        if n > args.cap {
                            return Err(Error::CapacityExceeded { size: n, cap: args.cap });
                        }
                    }
                }
            }
            dist(args)
        }
        Command::Converge {
            corpus,
            grid,
            grid_range,
            tol,
            margin_tol,
        } => {
            let grid = parse_grid(grid.as_deref(), grid_range.as_deref())?;
            converge(
                corpus,
                grid,
                &rational("tol", tol)?,
                &rational("margin-tol", margin_tol)?,
            )
        }
        Command::Tightness { epsilon, files } => tightness(&rational("epsilon", epsilon)?, files),
        Command::Quantize { input, delta } => quantize_cmd(input, &rational("delta", delta)?),
        Command::Audit {
            seed,
            trials,
            min_atoms,
            max_atoms,
            coord_lo,
            coord_hi,
            denom,
        } => {
            let spec = InstanceSpec {
                seed: *seed,
                min_atoms: *min_atoms,
                max_atoms: *max_atoms,
                coord_lo: *coord_lo,
                coord_hi: *coord_hi,
                denom: *denom,
            };
            audit(spec, *trials)
        }
    }
}

fn emit(cli: &Cli, out: Output, stdout: &mut dyn Write) -> Result<()> {
    let text = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out.json).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &out.csv {
                w.write_record(row).map_err(|e| Error::invalid("csv", e.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Error::invalid("csv", e.to_string()))?)
                .expect("csv output is UTF-8")
        }
    };
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
        None => stdout.write_all(text.as_bytes()).map_err(|e| Error::Io {
            path: "<stdout>".into(),
            message: e.to_string(),
        }),
    }
}

/// Runs the command line with explicit streams; returns the exit code.
pub fn run_with<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli).and_then(|out| emit(&cli, out, stdout)) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
