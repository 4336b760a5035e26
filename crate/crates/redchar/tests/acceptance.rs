//! One line per acceptance criterion; exits non-zero if any fails.

use std::time::{Duration, Instant};

use redchar::chartab::{verify_table, CharTable};
use redchar::classes::{brute_force_classes, reconcile, symbolic_classes, So4};
use redchar::classfn::brute_force_irreducibles;
use redchar::dl::{count_order2, verify_identities, TorusType};
use redchar::ff::Field;
use redchar::parahoric::{ind_p_zeta_self_product, n_invariants_report, NamedRep};
use redchar::report::{verify_all, DEFAULT_SEED};
use redchar::sl3::{check_q, label_report, pgl3_fusion, triple_scan};
use redchar::stability::{packet_scan_2x2, stability_report, Locus};
use redchar::Result;

struct Outcome {
    ok: bool,
    note: String,
}

fn outcome(ok: bool, note: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { ok, note: note.into() })
}

fn timed(budget: Option<Duration>, f: impl FnOnce() -> Result<Outcome>) -> (Outcome, Duration) {
    let t = Instant::now();
    let mut o = f().unwrap_or_else(|e| Outcome { ok: false, note: format!("error: {e}") });
    let dt = t.elapsed();
    if let Some(b) = budget {
        if dt > b {
            o.ok = false;
            o.note = format!("{} (over budget of {}s)", o.note, b.as_secs());
        }
    }
    (o, dt)
}

fn table_verifies() -> Result<Outcome> {
    let mut notes = Vec::new();
    for q in [3u32, 5] {
        let t = Instant::now();
        let g = So4::new(q)?;
        let table = CharTable::new(&g)?;
        let r = verify_table(&g, &table, None);
        let dt = t.elapsed();
        if !r.passed() || (q == 5 && dt > Duration::from_secs(60)) {
            return outcome(false, format!("q = {q}: passed {} in {:.1}s", r.passed(), dt.as_secs_f64()));
        }
        notes.push(format!("q = {q} in {:.1}s", dt.as_secs_f64()));
    }
    outcome(true, notes.join(", "))
}

fn oracle_concordance() -> Result<Outcome> {
    let g = So4::new(3)?;
    let table = CharTable::new(&g)?;
    let orc = brute_force_irreducibles(&g, DEFAULT_SEED)?;
    let r = verify_table(&g, &table, Some(&orc));
    let m = r.oracle.as_ref().is_some_and(|o| o.passed);
    outcome(r.passed() && m, format!("{} oracle characters matched", orc.chars.len()))
}

fn class_inventory() -> Result<Outcome> {
    let mut notes = Vec::new();
    for q in [3u32, 5] {
        let f = Field::new(q)?;
        let orc = brute_force_classes(&f, DEFAULT_SEED)?;
        let rec = reconcile(&f, &symbolic_classes(&f), &orc);
        let counts: Vec<i64> = ["12a", "17"]
            .iter()
            .filter_map(|item| rec.items.iter().find(|r| r.listed_item == *item && r.status == "oracle_only"))
            .map(|r| r.oracle_count)
            .collect();
        let counted = counts.len() == 2;
        if !rec.passed() || !counted {
            return outcome(false, format!("q = {q}: reconcile {} counted {counted}", rec.passed()));
        }
        let flagged: Vec<&str> =
            rec.items.iter().filter(|r| r.status == "mismatch").map(|r| r.listed_item.as_str()).collect();
        notes.push(format!(
            "q = {q}: {} classes, items 12a/17 counted {:?}, stated counts off at {:?}",
            orc.rows.len(),
            counts,
            flagged
        ));
    }
    outcome(true, notes.join("; "))
}

fn green_identities() -> Result<Outcome> {
    for q in [3u32, 5] {
        let r = verify_identities(&So4::new(q)?);
        if !r.passed() {
            return outcome(false, format!("q = {q}"));
        }
    }
    outcome(true, "q = 3, 5")
}

fn g_sgn_unstable() -> Result<Outcome> {
    for q in [3u32, 5, 7] {
        let r = stability_report(&So4::new(q)?)?;
        let greens = r.greens_stable.iter().all(|x| x.1);
        if r.g_sgn.stable || !r.g_sgn_witness_is_gamma_pair || !greens {
            return outcome(false, format!("q = {q}"));
        }
    }
    outcome(true, "q = 3, 5, 7; witness on the gamma pair; all four Greens stable")
}

fn packet_scan() -> Result<Outcome> {
    for q in [3u32, 5] {
        let g = So4::new(q)?;
        for l in [Locus::Unipotent, Locus::STimesUnipotent] {
            let s = packet_scan_2x2(&g, l)?;
            if !s.passed || s.stable_count != 2 {
                return outcome(false, format!("q = {q} on {}: {} stable", l.as_str(), s.stable_count));
            }
        }
    }
    outcome(true, "2 of 4 on unip and su at q = 3, 5")
}

fn torus_involutions() -> Result<Outcome> {
    let mut all = Vec::new();
    for q in [3u32, 5, 7] {
        let f = Field::new(q)?;
        let c: Vec<usize> = TorusType::ALL.iter().map(|w| count_order2(&f, *w)).collect();
        all.push(c == [3, 1, 1, 3]);
    }
    outcome(all.iter().all(|&x| x), "(3,1,1,3)")
}

fn sl3_at_7() -> Result<Outcome> {
    let f = check_q(7)?;
    let fu = pgl3_fusion(&f)?;
    let lr = label_report(&f)?;
    let ts = triple_scan(&f)?;
    let ok = fu.passed() && fu.sl3_distinct && fu.gl3_fused && lr.passed && ts.passed && ts.passing == 6;
    outcome(ok, format!("orbit {}, {} constant triples", fu.orbit_size, ts.passing))
}

fn n_invariants() -> Result<Outcome> {
    let g = So4::new(7)?;
    let mut ok = true;
    let mut dims = Vec::new();
    for (name, dim) in [("pi_eta2_beta", 3), ("ind_p_zeta", 2), ("ind_borel_zeta", 4)] {
        let r = n_invariants_report(&g, &NamedRep::parse(name, 7)?)?;
        ok &= r.dimension == dim && r.matches_expected == Some(true);
        dims.push(format!("{name}: {}", r.dimension));
    }
    let ip = ind_p_zeta_self_product(&g)?;
    ok &= ip == redchar::cyclo::Cyc::from_int(1, 1);
    outcome(ok, format!("{}; <chi,chi> = {ip}", dims.join(", ")))
}

fn determinism() -> Result<Outcome> {
    let a = verify_all(3, DEFAULT_SEED, true)?.to_json();
    let b = verify_all(3, DEFAULT_SEED, true)?.to_json();
    outcome(a == b, format!("{} bytes", a.len()))
}

type Criterion = (u32, &'static str, Option<u64>, fn() -> Result<Outcome>);

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "character table verifies at q = 3, 5", None, table_verifies),
        (2, "oracle concordance at q = 3", Some(300), oracle_concordance),
        (3, "class inventory at q = 3, 5", Some(120), class_inventory),
        (4, "Green function identities", None, green_identities),
        (5, "G_sgn unstable, Greens stable", None, g_sgn_unstable),
        (6, "2x2 packet scan", Some(60), packet_scan),
        (7, "order-2 torus elements", None, torus_involutions),
        (8, "SL3 at q = 7", Some(300), sl3_at_7),
        (9, "N-invariants at q = 7", None, n_invariants),
        (10, "verify-all determinism at q = 3", None, determinism),
    ];
    let mut failed = 0;
    for (n, name, budget, f) in criteria {
        let (o, dt) = timed(budget.map(Duration::from_secs), f);
        let tag = if o.ok { "PASS" } else { "FAIL" };
        println!("{tag} criterion {n}: {name} [{:.1}s] {}", dt.as_secs_f64(), o.note);
        if !o.ok {
            failed += 1;
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
