//! Command-line surface over the `gpcalc` library: every computation is
//! exposed as a deterministic, scriptable report in text, CSV, or JSON.
//!
//! Exit codes: 0 on success, 1 when an internal cross-check fails, 2 on
//! usage or precondition errors.

use std::panic;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num::Zero;
use serde_json::{json, Value};

use gpcalc::ambient_ring::BNParams;
use gpcalc::bn_numbers::{
    count_grd, eval_schur_theta, eval_schur_theta_det, eval_schur_theta_product, genus_wrd,
    monomial_table, BnError,
};
use gpcalc::exact_core::{fmt_rat, Partition};
use gpcalc::gp_pipeline::{gp_closed_form, gp_slope, symbolic_b0, symbolic_b1};
use gpcalc::mg_divisors::{registry, slope, Coeff, MgDivisorClass, REGISTRY_NAMES};
use gpcalc::mod_maps::{phi_pullback, PhiGenerator};
use gpcalc::pencils::{
    family_numbers, k3_pencil_numbers, member_genus, segre_family, slope_table,
    LinearSystemClass, SurfaceSpec,
};
use gpcalc::Rat;

#[derive(Parser)]
#[command(name = "gpcalc", about = "Exact divisor-class calculator", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for grid scans (output order is deterministic
    /// regardless).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MonomialForm {
    Det,
    Product,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GpMode {
    Closed,
    Symbolic,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WhichTable {
    Smallgenus,
    Intersection2,
    Gpgrid,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a top-degree Schur monomial `s_lambda * theta^t`.
    Monomial {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
        /// Comma-separated partition parts, e.g. `1,1`; empty for none.
        #[arg(long, default_value = "")]
        partition: String,
        #[arg(long, default_value_t = 0)]
        theta: u32,
        #[arg(long, value_enum, default_value_t = MonomialForm::Both)]
        form: MonomialForm,
    },
    /// The divisor-class coefficients `a`, `b_0`, `b_1` and the slope.
    Gp {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
        #[arg(long, value_enum, default_value_t = GpMode::Closed)]
        mode: GpMode,
        /// Allow symbolic evaluation beyond the default `r <= 3`, `s <= 4`
        /// bound (can be slow).
        #[arg(long, default_value_t = false)]
        allow_large: bool,
    },
    /// Slope of a registry class.
    Slope {
        /// Registry name, e.g. `GP_5_4`.
        #[arg(long)]
        name: String,
    },
    /// Pullback of a target Picard generator under the covering-family map.
    Pullback {
        #[arg(long)]
        s: u32,
        /// One of `lambda`, `delta0`, `delta1`, or `deltaJ` with `--j`.
        #[arg(long)]
        gen: String,
        #[arg(long)]
        j: Option<u32>,
    },
    /// Hodge and boundary degrees of a pencil family on a surface.
    Pencil {
        /// `F<e>` (Hirzebruch), `plane`, `k3`, or `segre`.
        #[arg(long)]
        surface: String,
        /// For `F<e>`: `a,b`; for `plane`: `n,m1,m2,...`.
        #[arg(long)]
        system: Option<String>,
        /// Genus, for `k3` and `segre`.
        #[arg(long)]
        g: Option<u32>,
        /// Gonality, for `segre`.
        #[arg(long)]
        k: Option<u32>,
    },
    /// Reference tables: the small-genus slope table, the monomial
    /// evaluation table (with misprint flags), or a closed-form grid scan.
    Table {
        #[arg(long, value_enum)]
        which: WhichTable,
        /// Rank parameter for `intersection2` (default 3) or grid bound for
        /// `gpgrid` (default 4).
        #[arg(long)]
        r: Option<u32>,
        /// Degree parameter for `intersection2` (default 2) or grid bound
        /// for `gpgrid` (default 6).
        #[arg(long)]
        s: Option<u32>,
    },
    /// List the recorded divisor classes.
    Registry {
        #[arg(long)]
        name: Option<String>,
    },
}

enum CliError {
    Usage(String),
    CrossCheck(String),
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn params(r: u32, s: u32) -> Result<BNParams, CliError> {
    BNParams::new(r, s)
        .ok_or_else(|| CliError::Usage(format!("invalid parameters r={r}, s={s} (need r >= 1, s >= 2)")))
}

fn parse_partition(text: &str) -> Result<Partition, CliError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Partition::empty());
    }
    let mut parts = Vec::new();
    for piece in text.split(',') {
        let v: u32 = piece
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad partition part {piece:?}")))?;
        if v == 0 {
            return Err(CliError::Usage("partition parts must be positive".into()));
        }
        parts.push(v);
    }
    if parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(CliError::Usage(
            "partition parts must be non-increasing".into(),
        ));
    }
    Ok(Partition::new(parts))
}

fn rat_json(q: &Rat) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

fn coeff_text(c: &Coeff) -> String {
    match c {
        Coeff::Exact(v) => fmt_rat(v),
        Coeff::LowerBound(_) | Coeff::Unknown => "?".into(),
    }
}

fn coeff_json(c: &Coeff) -> Value {
    match c {
        Coeff::Exact(v) => json!({ "exact": rat_json(v) }),
        Coeff::LowerBound(v) => json!({ "lower_bound": rat_json(v) }),
        Coeff::Unknown => json!("unknown"),
    }
}

fn class_text(d: &MgDivisorClass) -> String {
    let mut out = format!("{}*lambda", fmt_rat(d.lambda()));
    for (j, c) in d.deltas().iter().enumerate() {
        match c {
            Coeff::Exact(v) if v.is_zero() => {}
            Coeff::Exact(v) => out.push_str(&format!(" - {}*delta_{j}", fmt_rat(v))),
            Coeff::LowerBound(v) => {
                out.push_str(&format!(" - (>= {})*delta_{j}", fmt_rat(v)))
            }
            Coeff::Unknown => out.push_str(&format!(" - ?*delta_{j}")),
        }
    }
    out
}

fn class_json(d: &MgDivisorClass) -> Value {
    json!({
        "g": d.g(),
        "lambda": rat_json(d.lambda()),
        "delta": d.deltas().iter().map(coeff_json).collect::<Vec<_>>(),
    })
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.cmd {
        Cmd::Monomial {
            r,
            s,
            partition,
            theta,
            form,
        } => {
            let p = params(*r, *s)?;
            let lambda = parse_partition(partition)?;
            let map_err = |e: BnError| match e {
                BnError::DualMismatch(a, b) => CliError::CrossCheck(format!(
                    "dual evaluation mismatch: {} vs {}",
                    fmt_rat(&a),
                    fmt_rat(&b)
                )),
                other => CliError::Usage(other.to_string()),
            };
            let (value, det_v, prod_v) = match form {
                MonomialForm::Det => {
                    let v = eval_schur_theta_det(p, &lambda, *theta).map_err(map_err)?;
                    (v.clone(), Some(v), None)
                }
                MonomialForm::Product => {
                    let v = eval_schur_theta_product(p, &lambda, *theta).map_err(map_err)?;
                    (v.clone(), None, Some(v))
                }
                MonomialForm::Both => {
                    let v = eval_schur_theta(p, &lambda, *theta).map_err(map_err)?;
                    (v.clone(), Some(v.clone()), Some(v))
                }
            };
            Ok(match cli.format {
                Format::Text | Format::Csv => fmt_rat(&value),
                Format::Json => {
                    let mut obj = json!({
                        "r": r, "s": s,
                        "partition": lambda.parts(),
                        "theta": theta,
                        "value": rat_json(&value),
                    });
                    if let Some(v) = det_v {
                        obj["det"] = rat_json(&v);
                    }
                    if let Some(v) = prod_v {
                        obj["product"] = rat_json(&v);
                    }
                    obj.to_string()
                }
            })
        }
        Cmd::Gp {
            r,
            s,
            mode,
            allow_large,
        } => {
            let p = params(*r, *s)?;
            if *mode != GpMode::Closed && !*allow_large && (*r > 3 || *s > 4) {
                return Err(CliError::Usage(
                    "symbolic mode is bounded to r <= 3, s <= 4; pass --allow-large to override"
                        .into(),
                ));
            }
            let closed = gp_closed_form(p);
            let (a, b0, b1) = match mode {
                GpMode::Closed => (closed.a.clone(), closed.b0.clone(), closed.b1.clone()),
                GpMode::Symbolic | GpMode::Both => {
                    let sb1 = symbolic_b1(p)
                        .map_err(|e| CliError::CrossCheck(e.to_string()))?
                        .value;
                    let sb0 = symbolic_b0(p)
                        .map_err(|e| CliError::CrossCheck(e.to_string()))?
                        .value;
                    if *mode == GpMode::Both && (sb0 != closed.b0 || sb1 != closed.b1) {
                        return Err(CliError::CrossCheck(format!(
                            "symbolic/closed mismatch: b0 {} vs {}, b1 {} vs {}",
                            fmt_rat(&sb0),
                            fmt_rat(&closed.b0),
                            fmt_rat(&sb1),
                            fmt_rat(&closed.b1)
                        )));
                    }
                    (closed.a.clone(), sb0, sb1)
                }
            };
            let slope_v = gp_slope(p);
            let relation = &a - Rat::from_integer(12.into()) * &b0 + &b1;
            Ok(match cli.format {
                Format::Text => format!(
                    "a={}, b0={}, b1={}, slope={}, relation={}",
                    fmt_rat(&a),
                    fmt_rat(&b0),
                    fmt_rat(&b1),
                    fmt_rat(&slope_v),
                    fmt_rat(&relation)
                ),
                Format::Csv => format!(
                    "{},{},{},{},{}",
                    fmt_rat(&a),
                    fmt_rat(&b0),
                    fmt_rat(&b1),
                    fmt_rat(&slope_v),
                    fmt_rat(&relation)
                ),
                Format::Json => json!({
                    "r": r, "s": s,
                    "a": rat_json(&a),
                    "b0": rat_json(&b0),
                    "b1": rat_json(&b1),
                    "slope": rat_json(&slope_v),
                    "relation": rat_json(&relation),
                    "class": class_json(&closed.class),
                })
                .to_string(),
            })
        }
        Cmd::Slope { name } => {
            let class = registry(name).map_err(usage)?;
            let v = slope(&class).map_err(|e| CliError::CrossCheck(e.to_string()))?;
            Ok(match cli.format {
                Format::Text | Format::Csv => fmt_rat(&v),
                Format::Json => json!({ "name": name, "slope": rat_json(&v) }).to_string(),
            })
        }
        Cmd::Pullback { s, gen, j } => {
            if *s < 2 {
                return Err(CliError::Usage("need s >= 2".into()));
            }
            let generator = match (gen.as_str(), j) {
                ("lambda", _) => PhiGenerator::Lambda,
                ("delta0", _) => PhiGenerator::Delta0,
                ("delta1", _) => PhiGenerator::Delta1,
                ("deltaJ", Some(j)) if *j >= 2 => PhiGenerator::DeltaJ(*j),
                ("deltaJ", _) => {
                    return Err(CliError::Usage("deltaJ needs --j <j> with j >= 2".into()))
                }
                (other, _) => {
                    return Err(CliError::Usage(format!("unknown generator {other:?}")))
                }
            };
            let class = phi_pullback(*s, generator);
            Ok(match cli.format {
                Format::Text | Format::Csv => {
                    let mut cols = vec![fmt_rat(class.lambda())];
                    cols.extend(class.deltas().iter().map(coeff_text));
                    cols.join(", ")
                }
                Format::Json => {
                    json!({ "s": s, "generator": gen, "class": class_json(&class) }).to_string()
                }
            })
        }
        Cmd::Pencil {
            surface,
            system,
            g,
            k,
        } => run_pencil(cli, surface, system.as_deref(), *g, *k),
        Cmd::Table { which, r, s } => run_table(cli, *which, *r, *s),
        Cmd::Registry { name } => {
            let names: Vec<&str> = match name {
                Some(n) => {
                    registry(n).map_err(usage)?;
                    vec![REGISTRY_NAMES
                        .iter()
                        .find(|x| *x == n)
                        .copied()
                        .expect("validated")]
                }
                None => REGISTRY_NAMES.to_vec(),
            };
            let mut lines = Vec::new();
            let mut rows = Vec::new();
            for n in names {
                let class = registry(n).expect("known name");
                let sl = slope(&class).map_err(|e| CliError::CrossCheck(e.to_string()))?;
                match cli.format {
                    Format::Text => lines.push(format!(
                        "{n}: g={} {} (slope {})",
                        class.g(),
                        class_text(&class),
                        fmt_rat(&sl)
                    )),
                    Format::Csv => lines.push(format!(
                        "{n},{},{},{}",
                        class.g(),
                        fmt_rat(class.lambda()),
                        fmt_rat(&sl)
                    )),
                    Format::Json => rows.push(json!({
                        "name": n,
                        "class": class_json(&class),
                        "slope": rat_json(&sl),
                    })),
                }
            }
            Ok(match cli.format {
                Format::Json => Value::Array(rows).to_string(),
                _ => lines.join("\n"),
            })
        }
    }
}

fn run_pencil(
    cli: &Cli,
    surface: &str,
    system: Option<&str>,
    g: Option<u32>,
    k: Option<u32>,
) -> Result<String, CliError> {
    let parse_nums = |text: &str| -> Result<Vec<i64>, CliError> {
        text.split(',')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|_| CliError::Usage(format!("bad number {x:?} in --system")))
            })
            .collect()
    };
    let report = |g: i64, lam: &Rat, del: &Rat| -> String {
        match cli.format {
            Format::Text => format!("g={g} F.lambda={} F.delta={}", fmt_rat(lam), fmt_rat(del)),
            Format::Csv => format!("{g},{},{}", fmt_rat(lam), fmt_rat(del)),
            Format::Json => json!({
                "g": g,
                "f_lambda": rat_json(lam),
                "f_delta": rat_json(del),
            })
            .to_string(),
        }
    };
    match surface {
        "k3" => {
            let g = g.ok_or_else(|| CliError::Usage("k3 needs --g".into()))?;
            let (lam, del) = k3_pencil_numbers(g);
            Ok(report(g as i64, &lam, &del))
        }
        "segre" => {
            let g = g.ok_or_else(|| CliError::Usage("segre needs --g".into()))?;
            let k = k.ok_or_else(|| CliError::Usage("segre needs --k".into()))?;
            if !(3..=5).contains(&k) {
                return Err(CliError::Usage("segre needs 3 <= k <= 5".into()));
            }
            let fam = segre_family(g, k).map_err(usage)?;
            match cli.format {
                Format::Text => Ok(format!(
                    "n={} nodes={} base_points={} F.lambda={} F.delta={}",
                    fam.degree,
                    fam.nodes,
                    fam.base_points,
                    fmt_rat(&fam.f_lambda),
                    fmt_rat(&fam.f_delta)
                )),
                Format::Csv => Ok(format!(
                    "{},{},{},{},{}",
                    fam.degree,
                    fam.nodes,
                    fam.base_points,
                    fmt_rat(&fam.f_lambda),
                    fmt_rat(&fam.f_delta)
                )),
                Format::Json => Ok(json!({
                    "degree": fam.degree,
                    "nodes": fam.nodes,
                    "base_points": fam.base_points,
                    "f_lambda": rat_json(&fam.f_lambda),
                    "f_delta": rat_json(&fam.f_delta),
                })
                .to_string()),
            }
        }
        "plane" => {
            let nums = parse_nums(
                system.ok_or_else(|| CliError::Usage("plane needs --system n,m1,...".into()))?,
            )?;
            if nums.is_empty() {
                return Err(CliError::Usage("plane needs --system n,m1,...".into()));
            }
            let spec = SurfaceSpec::PlaneBlowup {
                points: nums.len() - 1,
            };
            let class = LinearSystemClass::Plane {
                degree: nums[0],
                mults: nums[1..].to_vec(),
            };
            let g = member_genus(&spec, &class).map_err(usage)?;
            let (lam, del) = family_numbers(&spec, &class).map_err(usage)?;
            Ok(report(g, &lam, &del))
        }
        other if other.starts_with('F') => {
            let e: u32 = other[1..]
                .parse()
                .map_err(|_| CliError::Usage(format!("unknown surface {other:?}")))?;
            let nums = parse_nums(
                system.ok_or_else(|| CliError::Usage("Hirzebruch needs --system a,b".into()))?,
            )?;
            let [a, b] = nums[..] else {
                return Err(CliError::Usage("Hirzebruch needs --system a,b".into()));
            };
            let spec = SurfaceSpec::Hirzebruch { e };
            let class = LinearSystemClass::Hirzebruch { a, b };
            let g = member_genus(&spec, &class).map_err(usage)?;
            let (lam, del) = family_numbers(&spec, &class).map_err(usage)?;
            Ok(report(g, &lam, &del))
        }
        other => Err(CliError::Usage(format!("unknown surface {other:?}"))),
    }
}

fn run_table(
    cli: &Cli,
    which: WhichTable,
    r: Option<u32>,
    s: Option<u32>,
) -> Result<String, CliError> {
    match which {
        WhichTable::Smallgenus => {
            let rows = slope_table();
            match cli.format {
                Format::Text => Ok(rows
                    .iter()
                    .map(|row| {
                        let strict = if row.s_moving_lower_strict { "(" } else { "[" };
                        format!(
                            "g={} s={} s'={}{}, {}]",
                            row.g,
                            fmt_rat(&row.s),
                            strict,
                            fmt_rat(&row.s_moving_lower),
                            fmt_rat(&row.s_moving_upper)
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n")),
                Format::Csv => Ok(rows
                    .iter()
                    .map(|row| {
                        format!(
                            "{}, {}, {}, {}",
                            row.g,
                            fmt_rat(&row.s),
                            fmt_rat(&row.s_moving_lower),
                            fmt_rat(&row.s_moving_upper)
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n")),
                Format::Json => Ok(Value::Array(
                    rows.iter()
                        .map(|row| {
                            json!({
                                "g": row.g,
                                "s": rat_json(&row.s),
                                "s_moving_lower": rat_json(&row.s_moving_lower),
                                "s_moving_upper": rat_json(&row.s_moving_upper),
                                "s_moving_lower_strict": row.s_moving_lower_strict,
                                "witnesses": row.witnesses.iter()
                                    .map(|(l, v)| json!({ "label": l, "value": rat_json(v) }))
                                    .collect::<Vec<_>>(),
                            })
                        })
                        .collect(),
                )
                .to_string()),
            }
        }
        WhichTable::Intersection2 => {
            let p = params(r.unwrap_or(3), s.unwrap_or(2))?;
            let rows = monomial_table(p).map_err(|e| CliError::CrossCheck(e.to_string()))?;
            match cli.format {
                Format::Text => Ok(rows
                    .iter()
                    .map(|row| {
                        let flag = if row.misprint { " [printed-form misprint]" } else { "" };
                        format!("{} = {}{}", row.label, fmt_rat(&row.direct), flag)
                    })
                    .collect::<Vec<_>>()
                    .join("\n")),
                Format::Csv => Ok(rows
                    .iter()
                    .map(|row| {
                        format!(
                            "{},{},{},{},{}",
                            row.label,
                            fmt_rat(&row.direct),
                            fmt_rat(&row.closed),
                            fmt_rat(&row.printed),
                            row.misprint
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n")),
                Format::Json => Ok(Value::Array(
                    rows.iter()
                        .map(|row| {
                            json!({
                                "label": row.label,
                                "partition": row.partition.parts(),
                                "theta": row.theta,
                                "direct": rat_json(&row.direct),
                                "closed": rat_json(&row.closed),
                                "printed": rat_json(&row.printed),
                                "misprint": row.misprint,
                            })
                        })
                        .collect(),
                )
                .to_string()),
            }
        }
        WhichTable::Gpgrid => {
            use rayon::prelude::*;
            let r_max = r.unwrap_or(4).max(1);
            let s_max = s.unwrap_or(6).max(2);
            let pairs: Vec<(u32, u32)> = (1..=r_max)
                .flat_map(|r| (2..=s_max).map(move |s| (r, s)))
                .collect();
            // Parallel map; collect preserves input order, so output is
            // deterministic.
            let rows: Vec<_> = pairs
                .par_iter()
                .map(|&(r, s)| {
                    let p = BNParams::new(r, s).expect("grid bounds");
                    let c = gp_closed_form(p);
                    let slope_v = gp_slope(p);
                    let relation =
                        &c.a - Rat::from_integer(12.into()) * &c.b0 + &c.b1;
                    (r, s, c, slope_v, relation, count_grd(p), genus_wrd(p))
                })
                .collect();
            match cli.format {
                Format::Text | Format::Csv => Ok(std::iter::once(
                    "r,s,a,b0,b1,slope,relation,count,genus".to_string(),
                )
                .chain(rows.iter().map(|(r, s, c, sl, rel, n, gw)| {
                    format!(
                        "{},{},{},{},{},{},{},{},{}",
                        r,
                        s,
                        fmt_rat(&c.a),
                        fmt_rat(&c.b0),
                        fmt_rat(&c.b1),
                        fmt_rat(sl),
                        fmt_rat(rel),
                        fmt_rat(n),
                        fmt_rat(gw)
                    )
                }))
                .collect::<Vec<_>>()
                .join("\n")),
                Format::Json => Ok(Value::Array(
                    rows.iter()
                        .map(|(r, s, c, sl, rel, n, gw)| {
                            json!({
                                "r": r, "s": s,
                                "a": rat_json(&c.a),
                                "b0": rat_json(&c.b0),
                                "b1": rat_json(&c.b1),
                                "slope": rat_json(sl),
                                "relation": rat_json(rel),
                                "count": rat_json(n),
                                "genus": rat_json(gw),
                            })
                        })
                        .collect(),
                )
                .to_string()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // Best effort; a second initialization in the same process is a
        // no-op.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    // Library invariants are enforced with assertions; a tripped assertion is
    // a cross-check failure, reported with exit code 1 rather than a crash.
    let outcome = panic::catch_unwind(|| run(&cli));
    match outcome {
        Ok(Ok(text)) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Err(CliError::CrossCheck(msg))) => {
            eprintln!("cross-check failed: {msg}");
            ExitCode::from(1)
        }
        Ok(Err(CliError::Usage(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal assertion".into());
            eprintln!("cross-check failed: {msg}");
            ExitCode::from(1)
        }
    }
}
