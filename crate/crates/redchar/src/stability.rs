//! Fusion of `SO4(F_q)` classes under `PGL2 × PGL2` and stability of profiles.
//!
//! A profile is called stable when it is constant on every fused orbit. The
//! p-adic descent that turns this into a statement about stable distributions
//! is not modelled; only the finite-group cancellation is.

use serde::Serialize;

use crate::chartab::{self, Family, IrrSO4};
use crate::classes::So4;
use crate::classfn::ClassFunction;
use crate::cyclo::Cyc;
use crate::dl::{self, central_involution, UnipotentProfile};
use crate::groups::Mat2;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Locus {
    Unipotent,
    /// `s·u` for `s = (I, -I)` and `u` unipotent.
    STimesUnipotent,
}

impl Locus {
    pub fn parse(s: &str) -> Option<Locus> {
        match s {
            "unip" | "unipotent" => Some(Locus::Unipotent),
            "su" | "s_times_unipotent" => Some(Locus::STimesUnipotent),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Locus::Unipotent => "unip",
            Locus::STimesUnipotent => "su",
        }
    }
}

/// Which adjoint generators drive the orbit search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorSet {
    Standard,
    Alternate,
}

fn factor_generators(g: &So4, set: GeneratorSet) -> Vec<Mat2> {
    let f = &g.field;
    let q = g.q();
    let d = f.nonsquare();
    match set {
        GeneratorSet::Standard => vec![
            Mat2::diag(q, f.generator(), 1),
            Mat2::new(q, [1, 1, 0, 1]),
            Mat2::new(q, [0, 1, 1, 0]),
            Mat2::diag(q, d, 1),
        ],
        GeneratorSet::Alternate => vec![
            Mat2::new(q, [1, 0, 1, 1]),
            Mat2::new(q, [0, q - 1, 1, 0]),
            Mat2::new(q, [d, 1, 0, 1]),
        ],
    }
}

/// Classes of a locus, grouped into adjoint orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionPartition {
    pub q: u32,
    pub locus: Locus,
    pub classes: Vec<usize>,
    pub labels: Vec<String>,
    /// Each orbit lists positions into `classes`, ascending; orbits are ordered by first member.
    pub orbits: Vec<Vec<usize>>,
}

impl FusionPartition {
    pub fn orbit_of(&self, class: usize) -> Option<usize> {
        let pos = self.classes.iter().position(|&c| c == class)?;
        self.orbits.iter().position(|o| o.contains(&pos))
    }

    pub fn orbit_labels(&self, o: usize) -> Vec<String> {
        self.orbits[o].iter().map(|&i| self.labels[i].clone()).collect()
    }

    pub fn fused(&self, a: &str, b: &str) -> bool {
        let find = |l: &str| self.labels.iter().position(|x| x == l);
        match (find(a), find(b)) {
            (Some(i), Some(j)) => self.orbits.iter().any(|o| o.contains(&i) && o.contains(&j)),
            _ => false,
        }
    }
}

/// Class indices making up a locus, in increasing order.
pub fn locus_classes(g: &So4, locus: Locus) -> Vec<usize> {
    let unip = g.unipotent_classes();
    match locus {
        Locus::Unipotent => unip,
        Locus::STimesUnipotent => {
            let s = central_involution(g.q());
            let mut v: Vec<usize> = unip.iter().map(|&u| g.class_index(&s.mul(&g.rep(u)))).collect();
            v.sort_unstable();
            v.dedup();
            v
        }
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

pub fn fuse_with(g: &So4, locus: Locus, set: GeneratorSet) -> FusionPartition {
    let classes = locus_classes(g, locus);
    let id = Mat2::identity(g.q());
    let mut gens = Vec::new();
    for m in factor_generators(g, set) {
        gens.push((m, id));
        gens.push((id, m));
    }
    let mut parent: Vec<usize> = (0..classes.len()).collect();
    for (i, &c) in classes.iter().enumerate() {
        let rep = g.rep(c);
        for (s, t) in &gens {
            let img = rep.adjoint_conj(s, t).expect("invertible generators");
            let j = classes
                .binary_search(&g.class_index(&img))
                .expect("locus is stable under the adjoint action");
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut root_pos = std::collections::BTreeMap::new();
    for i in 0..classes.len() {
        let r = find(&mut parent, i);
        let k = *root_pos.entry(r).or_insert_with(|| {
            orbits.push(Vec::new());
            orbits.len() - 1
        });
        orbits[k].push(i);
    }
    FusionPartition {
        q: g.q(),
        locus,
        labels: classes.iter().map(|&c| g.display_label(c)).collect(),
        classes,
        orbits,
    }
}

pub fn fuse(g: &So4, locus: Locus) -> FusionPartition {
    fuse_with(g, locus, GeneratorSet::Standard)
}

/// A class function restricted to the classes of a partition.
pub fn profile_on(g: &So4, f: &ClassFunction, p: &FusionPartition) -> UnipotentProfile {
    UnipotentProfile {
        classes: p.classes.clone(),
        labels: p.classes.iter().map(|&c| g.display_label(c)).collect(),
        values: p.classes.iter().map(|&c| f.values[c].clone()).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub orbit: Vec<String>,
    pub first: (String, Cyc),
    pub second: (String, Cyc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stability {
    pub stable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Constant on every orbit; otherwise the first orbit with two distinct values.
pub fn is_stable(p: &UnipotentProfile, f: &FusionPartition) -> Stability {
    assert_eq!(p.classes, f.classes, "profile and partition must share a locus");
    for (k, orbit) in f.orbits.iter().enumerate() {
        let i0 = orbit[0];
        if let Some(&i) = orbit.iter().find(|&&i| p.values[i] != p.values[i0]) {
            return Stability {
                stable: false,
                witness: Some(Witness {
                    orbit: f.orbit_labels(k),
                    first: (p.labels[i0].clone(), p.values[i0].clone()),
                    second: (p.labels[i].clone(), p.values[i].clone()),
                }),
            };
        }
    }
    Stability { stable: true, witness: None }
}

/// Irreducibles whose characters are not stable on the locus.
pub fn unstable_irreducibles(g: &So4, locus: Locus) -> Result<Vec<IrrSO4>> {
    let p = fuse(g, locus);
    let mut out = Vec::new();
    for irr in chartab::list_irreducibles(g)? {
        let prof = profile_on(g, &chartab::character(g, &irr), &p);
        if !is_stable(&prof, &p).stable {
            out.push(irr);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateResult {
    pub s_princ: i8,
    pub s_cusp: i8,
    pub candidate: String,
    pub stable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Coefficient of `𝒢_sgn` in the unipotent profile, `(s_princ + s_cusp)/2·q*`.
    pub g_sgn_coefficient: i64,
    /// Whether the profile agrees with `½(𝒬_1 + s_princ q*𝒢) + ½(𝒬_{A1×Ã1} + s_cusp q*𝒢)`; unipotent locus only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches_green_expansion: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PacketScan {
    pub q: u32,
    pub locus: Locus,
    pub candidates: Vec<CandidateResult>,
    pub stable_count: usize,
    /// Exactly two pass and they form an opposite pair `{(a, b), (-a, -b)}`.
    pub passed: bool,
}

fn sign_str(s: i8) -> &'static str {
    if s > 0 {
        "+"
    } else {
        "-"
    }
}

pub fn packet_scan_2x2(g: &So4, locus: Locus) -> Result<PacketScan> {
    let part = fuse(g, locus);
    let qs = if g.q() % 4 == 1 { g.q() as i64 } else { -(g.q() as i64) };
    let (q1, qa, gs) = if locus == Locus::Unipotent {
        (
            Some(dl::green(g, dl::TorusType::Split)),
            Some(dl::green(g, dl::TorusType::A1xA1Tilde)),
            Some(dl::g_sgn(g)),
        )
    } else {
        (None, None, None)
    };
    let half = crate::Rat::new(1.into(), 2.into());
    let mut candidates = Vec::new();
    for sp in [1i8, -1] {
        for sc in [1i8, -1] {
            let p = chartab::named(g, Family::OmegaPrincPm, Some(sp))?;
            let c = chartab::named(g, Family::OmegaCuspPm, Some(sc))?;
            let cf = &chartab::character(g, &p) + &chartab::character(g, &c);
            let prof = profile_on(g, &cf, &part);
            let st = is_stable(&prof, &part);
            let matches = match (&q1, &qa, &gs) {
                (Some(q1), Some(qa), Some(gs)) => {
                    let a = q1.map2(gs, |x, y| (x + &y.scale_int(sp as i64 * qs)).scale(&half));
                    let b = qa.map2(gs, |x, y| (x + &y.scale_int(sc as i64 * qs)).scale(&half));
                    Some(a.map2(&b, |x, y| x + y).values == prof.values)
                }
                _ => None,
            };
            candidates.push(CandidateResult {
                s_princ: sp,
                s_cusp: sc,
                candidate: format!("omega_princ{} + omega_cusp{}", sign_str(sp), sign_str(sc)),
                stable: st.stable,
                witness: st.witness,
                g_sgn_coefficient: (sp as i64 + sc as i64) / 2 * qs,
                matches_green_expansion: matches,
            });
        }
    }
    let stable: Vec<&CandidateResult> = candidates.iter().filter(|c| c.stable).collect();
    let opposite = stable.len() == 2
        && stable[0].s_princ == -stable[1].s_princ
        && stable[0].s_cusp == -stable[1].s_cusp;
    let expansions_ok = candidates.iter().all(|c| c.matches_green_expansion != Some(false));
    Ok(PacketScan {
        q: g.q(),
        locus,
        stable_count: stable.len(),
        passed: opposite && expansions_ok,
        candidates,
    })
}

/// The stability facts checked for a given `q`.
#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    pub q: u32,
    pub generator_independent: bool,
    pub g_sgn: Stability,
    pub g_sgn_witness_is_gamma_pair: bool,
    pub greens_stable: Vec<(String, bool)>,
    pub scans: Vec<PacketScan>,
    pub unstable_irreducibles: Vec<String>,
}

impl StabilityReport {
    pub fn passed(&self) -> bool {
        self.generator_independent
            && !self.g_sgn.stable
            && self.g_sgn_witness_is_gamma_pair
            && self.greens_stable.iter().all(|(_, s)| *s)
            && self.scans.iter().all(|s| s.passed)
    }
}

pub fn stability_report(g: &So4) -> Result<StabilityReport> {
    let generator_independent = [Locus::Unipotent, Locus::STimesUnipotent]
        .iter()
        .all(|&l| fuse_with(g, l, GeneratorSet::Standard) == fuse_with(g, l, GeneratorSet::Alternate));
    let part = fuse(g, Locus::Unipotent);
    let gs = is_stable(&dl::g_sgn(g), &part);
    let gamma_pair = {
        let d = g.field.nonsquare();
        let a = "c2(1)xc2(1,1)".to_string();
        let b = format!("c2(1)xc2(1,{})", g.field.signed(d));
        gs.witness
            .as_ref()
            .map(|w| w.orbit.contains(&a) && w.orbit.contains(&b))
            .unwrap_or(false)
    };
    let greens_stable = dl::TorusType::ALL
        .iter()
        .map(|w| (w.as_str().to_string(), is_stable(&dl::green(g, *w), &part).stable))
        .collect();
    let scans = vec![
        packet_scan_2x2(g, Locus::Unipotent)?,
        packet_scan_2x2(g, Locus::STimesUnipotent)?,
    ];
    Ok(StabilityReport {
        q: g.q(),
        generator_independent,
        g_sgn: gs,
        g_sgn_witness_is_gamma_pair: gamma_pair,
        greens_stable,
        scans,
        unstable_irreducibles: unstable_irreducibles(g, Locus::Unipotent)?.iter().map(|i| i.name()).collect(),
    })
}
