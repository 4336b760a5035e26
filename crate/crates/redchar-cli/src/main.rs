use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use redchar::chartab::{self, appendix, CharTable, SmallTable};
use redchar::classes::{brute_force_classes, reconcile, symbolic_classes, So4};
use redchar::classfn::brute_force_irreducibles;
use redchar::report::{self, DEFAULT_SEED};
use redchar::{dl, parahoric, sl3, stability, Error};

#[derive(Parser)]
#[command(name = "redchar", version, about = "Exact character tables and finite stability checks for SO4(F_q)")]
struct Cli {
    /// Seed for randomized generator searches.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Group {
    So4,
    Gl2,
    Sl2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Against {
    Appendix,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Identity {
    Steinberg,
    Omega,
    Faces,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Packet {
    #[value(name = "2x2")]
    TwoByTwo,
}

#[derive(Subcommand)]
enum Command {
    /// Conjugacy classes of SO4(F_q), optionally reconciled with orbit enumeration.
    Classes {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        oracle: bool,
    },
    /// Character tables; `--verify` checks orthogonality and counts.
    Chartab {
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value_t = Group::So4)]
        group: Group,
        #[arg(long)]
        verify: bool,
        /// Compare with the Dixon-Schneider oracle (q <= 5 unless REDCHAR_BUDGET_SECS is set).
        #[arg(long)]
        oracle: bool,
        /// Compare every printed table entry with the computed table.
        #[arg(long)]
        appendix: bool,
        /// Emit the corrected value wherever a printed entry disagrees with the computed table.
        #[arg(long = "oracle-correct")]
        oracle_correct: bool,
    },
    /// Decompose a named representation or a Deligne-Lusztig character into irreducibles.
    Decompose {
        #[arg(long)]
        q: u32,
        #[arg(long, conflicts_with = "dl")]
        rep: Option<String>,
        /// Torus type for R_w with trivial character: 1, A1, A1~ or A1xA1~.
        #[arg(long)]
        dl: Option<String>,
        /// Decompose against the computed table or the independent oracle.
        #[arg(long, value_enum, default_value_t = Against::Appendix)]
        against: Against,
    },
    /// Green functions and the identities they satisfy.
    Green {
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value_t = Identity::All)]
        identity: Identity,
    },
    /// Fusion under PGL2 x PGL2 and the packet sign scan.
    Stability {
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum)]
        packet: Option<Packet>,
        #[arg(long, default_value = "unip")]
        locus: String,
    },
    /// Regular unipotent labels of SL3(F_q), q = 1 mod 3.
    Sl3 {
        #[arg(long)]
        q: u32,
        #[arg(long = "triple-scan", group = "mode")]
        triple_scan: bool,
        #[arg(long, group = "mode")]
        fusion: bool,
        #[arg(long, group = "mode")]
        labels: bool,
    },
    /// Named representations from parahoric invariants.
    Parahoric {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        rep: Option<String>,
        #[arg(long = "n-invariants")]
        n_invariants: bool,
        #[arg(long)]
        pin: bool,
    },
    /// Every check that applies at q, as one deterministic report.
    VerifyAll {
        #[arg(long)]
        q: u32,
        #[arg(long = "no-oracle")]
        no_oracle: bool,
    },
}

/// What a subcommand produced: the report and whether its checks passed.
struct Outcome {
    body: String,
    passed: bool,
}

fn json_out(v: &Value, passed: bool) -> Outcome {
    Outcome {
        body: serde_json::to_string_pretty(v).expect("json values serialize"),
        passed,
    }
}

fn so4(q: u32) -> Result<So4, Error> {
    So4::new(q)
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', ' ']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_table(t: &SmallTable, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(t).expect("tables serialize"),
        Format::Csv => {
            let mut out = String::new();
            let head: Vec<String> = std::iter::once("character".to_string())
                .chain(t.classes.iter().map(|c| csv_cell(c)))
                .collect();
            out.push_str(&head.join(","));
            out.push('\n');
            let sizes: Vec<String> = std::iter::once("class_size".to_string())
                .chain(t.sizes.iter().map(|s| s.to_string()))
                .collect();
            out.push_str(&sizes.join(","));
            out.push('\n');
            for (name, vals) in &t.rows {
                let row: Vec<String> = std::iter::once(csv_cell(name))
                    .chain(vals.iter().map(|v| csv_cell(&v.to_string())))
                    .collect();
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out
        }
        Format::Text => {
            let mut out = format!("{} over F_{}: {} classes, {} characters\n", t.group, t.q, t.classes.len(), t.rows.len());
            for (name, vals) in &t.rows {
                out.push_str(name);
                out.push('\n');
                for (c, v) in t.classes.iter().zip(vals) {
                    out.push_str(&format!("  {c}: {v}\n"));
                }
            }
            out
        }
    }
}

fn so4_small_table(g: &So4, table: &CharTable, corrected: bool) -> SmallTable {
    SmallTable {
        group: "SO4".into(),
        q: g.q(),
        classes: (0..g.num_classes()).map(|c| g.display_label(c)).collect(),
        sizes: (0..g.num_classes()).map(|c| g.size(c)).collect(),
        rows: table
            .irrs
            .iter()
            .zip(&table.chars)
            .map(|(i, ch)| {
                let vals = (0..g.num_classes())
                    .map(|c| match appendix::appendix_value(g, i, c) {
                        Some(v) if !corrected => v,
                        _ => ch.values[c].clone(),
                    })
                    .collect();
                (i.name(), vals)
            })
            .collect(),
    }
}

fn json_only(format: Format) -> Result<(), Error> {
    if format != Format::Json {
        return Err(Error::Usage("this subcommand only emits JSON".into()));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let seed = cli.seed;
    match &cli.command {
        Command::Classes { q, oracle } => {
            let g = so4(*q)?;
            if *oracle {
                json_only(cli.format)?;
                let orc = brute_force_classes(&g.field, seed)?;
                let rec = reconcile(&g.field, &symbolic_classes(&g.field), &orc);
                let passed = rec.passed();
                return Ok(json_out(&json!({ "schema_version": report::SCHEMA_VERSION, "reconciliation": rec }), passed));
            }
            let rows: Vec<Value> = (0..g.num_classes())
                .map(|c| {
                    json!({
                        "label": g.display_label(c),
                        "size": g.size(c),
                        "representative": g.rep(c).to_string(),
                    })
                })
                .collect();
            match cli.format {
                Format::Json => Ok(json_out(
                    &json!({ "schema_version": report::SCHEMA_VERSION, "q": q, "order": g.order(), "classes": rows }),
                    true,
                )),
                Format::Text | Format::Csv => {
                    let sep = if cli.format == Format::Csv { "," } else { "  " };
                    let mut body = format!("label{sep}size\n");
                    for c in 0..g.num_classes() {
                        body.push_str(&format!("{}{sep}{}\n", g.display_label(c), g.size(c)));
                    }
                    Ok(Outcome { body, passed: true })
                }
            }
        }
        Command::Chartab { q, group, verify, oracle, appendix: app, oracle_correct } => {
            let f = redchar::ff::Field::new(*q)?;
            match group {
                Group::Gl2 => return Ok(Outcome { body: render_table(&chartab::gl2_table(&f), cli.format), passed: true }),
                Group::Sl2 => {
                    return Ok(Outcome { body: render_table(&chartab::sl2_split_table(&f), cli.format), passed: true })
                }
                Group::So4 => {}
            }
            let g = so4(*q)?;
            let table = CharTable::new(&g)?;
            if !*verify && !*oracle && !*app {
                return Ok(Outcome { body: render_table(&so4_small_table(&g, &table, *oracle_correct), cli.format), passed: true });
            }
            json_only(cli.format)?;
            let orc = if *oracle { Some(brute_force_irreducibles(&g, seed)?) } else { None };
            let rep = chartab::verify_table(&g, &table, orc.as_ref());
            let mut v = json!({ "schema_version": report::SCHEMA_VERSION, "verify": rep });
            if *app {
                v["appendix"] = serde_json::to_value(appendix::compare(&g, &table)).expect("serializes");
            }
            Ok(json_out(&v, rep.passed()))
        }
        Command::Decompose { q, rep, dl: w, against } => {
            json_only(cli.format)?;
            let g = so4(*q)?;
            let table = CharTable::new(&g)?;
            let (name, ch) = match (rep, w) {
                (Some(name), _) => {
                    let r = parahoric::NamedRep::parse(name, *q)?;
                    (r.name(), parahoric::character(&g, &r)?)
                }
                (None, Some(w)) => {
                    let ty = dl::TorusType::ALL
                        .into_iter()
                        .find(|t| t.as_str() == w)
                        .ok_or_else(|| Error::Usage(format!("unknown torus type {w}")))?;
                    let vc = dl::dl_char(&g, &dl::TorusChar::trivial(ty))?;
                    (format!("R_{}^1", ty.as_str()), vc.class_function(&g))
                }
                (None, None) => return Err(Error::Usage("decompose needs --rep or --dl".into())),
            };
            let d = match against {
                Against::Appendix => parahoric::decompose_function(&g, &table, &name, &ch)?,
                Against::Oracle => {
                    let orc = brute_force_irreducibles(&g, seed)?;
                    parahoric::decompose_against_oracle(&g, &table, &orc, &name, &ch)?
                }
            };
            let ok = w.is_some() || d.nonnegative_integral;
            Ok(json_out(
                &json!({
                    "schema_version": report::SCHEMA_VERSION,
                    "q": q,
                    "against": match against { Against::Appendix => "appendix", Against::Oracle => "oracle" },
                    "decomposition": d,
                }),
                ok,
            ))
        }
        Command::Green { q, identity } => {
            json_only(cli.format)?;
            let g = so4(*q)?;
            let checks = match identity {
                Identity::Steinberg => vec![dl::steinberg_identity(&g)],
                Identity::Omega => {
                    let mut v = dl::omega_identities(&g);
                    v.push(dl::regular_unipotent_traces(&g));
                    v
                }
                Identity::Faces => vec![dl::face_profiles(&g.field)],
                Identity::All => dl::verify_identities(&g).checks,
            };
            let passed = checks.iter().all(|c| c.holds);
            let greens: Vec<Value> = dl::TorusType::ALL
                .iter()
                .map(|w| json!({ "torus_type": w.as_str(), "profile": dl::green(&g, *w) }))
                .collect();
            Ok(json_out(
                &json!({
                    "schema_version": report::SCHEMA_VERSION,
                    "q": q,
                    "checks": checks,
                    "greens": greens,
                    "g_sgn": dl::g_sgn(&g),
                }),
                passed,
            ))
        }
        Command::Stability { q, packet, locus } => {
            json_only(cli.format)?;
            let g = so4(*q)?;
            let locus = stability::Locus::parse(locus).ok_or_else(|| Error::Usage(format!("unknown locus {locus}")))?;
            match packet {
                Some(Packet::TwoByTwo) => {
                    let scan = stability::packet_scan_2x2(&g, locus)?;
                    let stable: Vec<String> = scan.candidates.iter().filter(|c| c.stable).map(|c| c.candidate.clone()).collect();
                    Ok(json_out(
                        &json!({
                            "schema_version": report::SCHEMA_VERSION,
                            "q": q,
                            "locus": locus.as_str(),
                            "candidates": scan.candidates,
                            "stable": stable,
                            "stable_count": scan.stable_count,
                        }),
                        scan.passed,
                    ))
                }
                None => {
                    let r = stability::stability_report(&g)?;
                    let part = stability::fuse(&g, locus);
                    let passed = r.passed();
                    Ok(json_out(
                        &json!({ "schema_version": report::SCHEMA_VERSION, "fusion": part, "report": r }),
                        passed,
                    ))
                }
            }
        }
        Command::Sl3 { q, triple_scan, fusion, labels } => {
            json_only(cli.format)?;
            let f = sl3::check_q(*q)?;
            let (v, ok) = if *triple_scan {
                let s = sl3::triple_scan(&f)?;
                let ok = s.passed && s.passing == 6;
                (serde_json::to_value(s), ok)
            } else if *fusion {
                let r = sl3::pgl3_fusion(&f)?;
                let ok = r.passed();
                (serde_json::to_value(r), ok)
            } else if *labels {
                let r = sl3::label_report(&f)?;
                let ok = r.passed;
                (serde_json::to_value(r), ok)
            } else {
                return Err(Error::Usage("sl3 needs one of --triple-scan, --fusion, --labels".into()));
            };
            Ok(json_out(
                &json!({ "schema_version": report::SCHEMA_VERSION, "report": v.expect("serializes") }),
                ok,
            ))
        }
        Command::Parahoric { q, rep, n_invariants, pin } => {
            json_only(cli.format)?;
            let g = so4(*q)?;
            let table = CharTable::new(&g)?;
            let mut v = json!({ "schema_version": report::SCHEMA_VERSION, "q": q });
            let mut ok = true;
            if let Some(name) = rep {
                let r = parahoric::NamedRep::parse(name, *q)?;
                let d = parahoric::decompose(&g, &table, &r)?;
                ok &= d.nonnegative_integral;
                v["decomposition"] = serde_json::to_value(&d).expect("serializes");
                if *n_invariants {
                    let n = parahoric::n_invariants_report(&g, &r)?;
                    ok &= n.matches_expected != Some(false);
                    v["n_invariants"] = serde_json::to_value(&n).expect("serializes");
                }
                if matches!(r, parahoric::NamedRep::MackeySumBeta) {
                    let m = parahoric::mackey_report(&g, &table)?;
                    ok &= m.passed;
                    v["mackey"] = serde_json::to_value(&m).expect("serializes");
                }
                if matches!(r, parahoric::NamedRep::IndP { .. }) {
                    let ch = parahoric::character(&g, &r)?;
                    v["self_inner_product"] =
                        serde_json::to_value(redchar::classfn::inner_product(&g, &ch, &ch)?).expect("serializes");
                }
            } else if *n_invariants {
                return Err(Error::Usage("--n-invariants needs --rep".into()));
            }
            if *pin {
                let p = parahoric::component_pin(&g)?;
                ok &= p.consistent;
                v["pin"] = serde_json::to_value(&p).expect("serializes");
            }
            if rep.is_none() && !*pin {
                let r = parahoric::parahoric_report(&g, &table)?;
                ok &= r.passed();
                v["report"] = serde_json::to_value(&r).expect("serializes");
            }
            Ok(json_out(&v, ok))
        }
        Command::VerifyAll { q, no_oracle } => {
            json_only(cli.format)?;
            let r = report::verify_all(*q, seed, !*no_oracle)?;
            Ok(Outcome { body: r.to_json(), passed: r.passed })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if writeln!(stdout, "{}", out.body.trim_end()).is_err() {
                return ExitCode::from(2);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": e.to_string() }));
            ExitCode::from(2)
        }
    }
}
