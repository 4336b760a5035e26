//! Deligne–Lusztig characters of `SO4(F_q)`, Green functions, and `𝒢_sgn`.
//!
//! On `GL2(F_q)` the split induction `R(χ_a, χ_b)` is the principal series
//! (or `χ_a + St·χ_a` when `a = b`) and the nonsplit `R(θ_t)` is `-ρ(θ_t)`
//! (or `χ_a - St·χ_a` when `θ_t = χ_a ∘ N`). For `SO4` the four maximal torus
//! types come from choosing split or nonsplit in each factor, and `R_w^θ` is
//! the restriction of the outer tensor product.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::chartab::{self, Family, Gl2Irr, IrrSO4};
use crate::classes::{classify, So4};
use crate::classfn::ClassFunction;
use crate::cyclo::{gauss_sqrt_qstar, Cyc};
use crate::ff::{Field, Fq2Elem};
use crate::groups::{Mat2, So4Elem};
use crate::{Error, Rat, Result};

/// Type of a maximal torus of `SO4`, by Weyl class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TorusType {
    Split,
    /// First factor nonsplit.
    A1,
    /// Second factor nonsplit.
    A1Tilde,
    /// Both factors nonsplit.
    A1xA1Tilde,
}

impl TorusType {
    pub const ALL: [TorusType; 4] = [TorusType::Split, TorusType::A1, TorusType::A1Tilde, TorusType::A1xA1Tilde];

    pub fn nonsplit(&self) -> (bool, bool) {
        match self {
            TorusType::Split => (false, false),
            TorusType::A1 => (true, false),
            TorusType::A1Tilde => (false, true),
            TorusType::A1xA1Tilde => (true, true),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            TorusType::Split => "1",
            TorusType::A1 => "A1",
            TorusType::A1Tilde => "A1~",
            TorusType::A1xA1Tilde => "A1xA1~",
        }
    }
}

/// A character of one `GL2` factor's torus: `χ_a ⊗ χ_b` on the diagonal, or `θ_t` on `F_{q²}^×`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "torus", rename_all = "snake_case")]
pub enum FactorChar {
    Split { a: i64, b: i64 },
    Nonsplit { t: i64 },
}

impl FactorChar {
    fn central(&self, f: &Field) -> i64 {
        let m = f.q() as i64 - 1;
        match *self {
            FactorChar::Split { a, b } => (a + b).rem_euclid(m),
            FactorChar::Nonsplit { t } => t.rem_euclid(m),
        }
    }

    /// The Weyl conjugate: swap `a, b`, or `t ↦ tq`.
    pub fn weyl(&self, f: &Field) -> FactorChar {
        match *self {
            FactorChar::Split { a, b } => FactorChar::Split { a: b, b: a },
            FactorChar::Nonsplit { t } => FactorChar::Nonsplit {
                t: (t * f.q() as i64).rem_euclid((f.q() * f.q()) as i64 - 1),
            },
        }
    }
}

/// A character of the rational points of a maximal torus of `SO4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TorusChar {
    pub first: FactorChar,
    pub second: FactorChar,
}

impl TorusChar {
    pub fn trivial(w: TorusType) -> TorusChar {
        let fc = |ns: bool| if ns { FactorChar::Nonsplit { t: 0 } } else { FactorChar::Split { a: 0, b: 0 } };
        let (a, b) = w.nonsplit();
        TorusChar { first: fc(a), second: fc(b) }
    }

    pub fn torus_type(&self) -> TorusType {
        match (self.first, self.second) {
            (FactorChar::Split { .. }, FactorChar::Split { .. }) => TorusType::Split,
            (FactorChar::Nonsplit { .. }, FactorChar::Split { .. }) => TorusType::A1,
            (FactorChar::Split { .. }, FactorChar::Nonsplit { .. }) => TorusType::A1Tilde,
            (FactorChar::Nonsplit { .. }, FactorChar::Nonsplit { .. }) => TorusType::A1xA1Tilde,
        }
    }
}

/// `R_T(θ)` of `GL2(F_q)` as an integer combination of irreducibles.
pub fn gl2_dl(f: &Field, c: &FactorChar) -> Vec<(i64, Gl2Irr)> {
    let m1 = f.q() as i64 - 1;
    let m2 = (f.q() * f.q()) as i64 - 1;
    match *c {
        FactorChar::Split { a, b } => {
            let (a, b) = (a.rem_euclid(m1), b.rem_euclid(m1));
            if a == b {
                vec![(1, Gl2Irr::OneDim { a: a as u32 }), (1, Gl2Irr::St { a: a as u32 })]
            } else {
                vec![(1, Gl2Irr::ps(f, a, b))]
            }
        }
        FactorChar::Nonsplit { t } => {
            let t = t.rem_euclid(m2);
            if t % (f.q() as i64 + 1) == 0 {
                let a = (t / (f.q() as i64 + 1)) as u32;
                vec![(1, Gl2Irr::OneDim { a }), (-1, Gl2Irr::St { a })]
            } else {
                vec![(-1, Gl2Irr::cusp(f, t))]
            }
        }
    }
}

/// A formal integer combination of irreducibles.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VirtualChar {
    pub terms: BTreeMap<IrrSO4, i64>,
}

impl VirtualChar {
    pub fn add_term(&mut self, irr: IrrSO4, c: i64) {
        let e = self.terms.entry(irr).or_default();
        *e += c;
        if *e == 0 {
            self.terms.remove(&irr);
        }
    }

    pub fn combine(items: &[(i64, &VirtualChar)]) -> VirtualChar {
        let mut out = VirtualChar::default();
        for (c, v) in items {
            for (irr, k) in &v.terms {
                out.add_term(*irr, c * k);
            }
        }
        out
    }

    pub fn eval_elem(&self, f: &Field, a: &So4Elem) -> Cyc {
        let mut acc = Cyc::zero(1);
        for (irr, c) in &self.terms {
            acc = acc + chartab::eval_elem(f, irr, a).scale_int(*c);
        }
        acc
    }

    pub fn class_function(&self, g: &So4) -> ClassFunction {
        ClassFunction::from_fn(g, |c| self.eval_elem(&g.field, &g.rep(c)))
    }

    pub fn degree(&self, q: u32) -> i64 {
        self.terms.iter().map(|(i, c)| c * i.degree(q)).sum()
    }

    pub fn display(&self) -> Vec<(String, i64)> {
        self.terms.iter().map(|(i, c)| (i.name(), *c)).collect()
    }
}

/// `R_w^θ`; errors when `θ` is not trivial on the scalars.
pub fn dl_char(g: &So4, theta: &TorusChar) -> Result<VirtualChar> {
    let f = &g.field;
    let m = f.q() as i64 - 1;
    if (theta.first.central(f) + theta.second.central(f)) % m != 0 {
        return Err(Error::Domain("torus character is not trivial on the diagonal scalars".into()));
    }
    let mut out = VirtualChar::default();
    for (c1, p1) in gl2_dl(f, &theta.first) {
        for (c2, p2) in gl2_dl(f, &theta.second) {
            if (p1.central(f) + p2.central(f)) % (m as u32) != 0 {
                continue;
            }
            for irr in IrrSO4::from_pair(f, &p1, &p2)? {
                out.add_term(irr, c1 * c2);
            }
        }
    }
    Ok(out)
}

/// A class function restricted to the unipotent classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnipotentProfile {
    pub classes: Vec<usize>,
    pub labels: Vec<String>,
    pub values: Vec<Cyc>,
}

impl UnipotentProfile {
    pub fn from_class_function(g: &So4, f: &ClassFunction) -> UnipotentProfile {
        let classes = g.unipotent_classes();
        UnipotentProfile {
            labels: classes.iter().map(|&c| g.display_label(c)).collect(),
            values: classes.iter().map(|&c| f.values[c].clone()).collect(),
            classes,
        }
    }

    pub fn map2(&self, o: &UnipotentProfile, op: impl Fn(&Cyc, &Cyc) -> Cyc) -> UnipotentProfile {
        assert_eq!(self.classes, o.classes);
        UnipotentProfile {
            classes: self.classes.clone(),
            labels: self.labels.clone(),
            values: self.values.iter().zip(&o.values).map(|(a, b)| op(a, b)).collect(),
        }
    }

    pub fn map(&self, op: impl Fn(&Cyc) -> Cyc) -> UnipotentProfile {
        UnipotentProfile {
            classes: self.classes.clone(),
            labels: self.labels.clone(),
            values: self.values.iter().map(op).collect(),
        }
    }

    pub fn value_at(&self, label: &str) -> Option<&Cyc> {
        self.labels.iter().position(|l| l == label).map(|i| &self.values[i])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyc::is_zero)
    }
}

/// The Green function `𝒬_w`: `R_w^1` on unipotent classes.
pub fn green(g: &So4, w: TorusType) -> UnipotentProfile {
    let r = dl_char(g, &TorusChar::trivial(w)).expect("trivial character");
    UnipotentProfile::from_class_function(g, &r.class_function(g))
}

fn qstar(q: u32) -> i64 {
    if q % 4 == 1 {
        q as i64
    } else {
        -(q as i64)
    }
}

/// `𝒢_sgn = (ω_princ^+ - ω_princ^-)/q*` on unipotent classes.
pub fn g_sgn(g: &So4) -> UnipotentProfile {
    split_difference(g, Family::OmegaPrincPm)
}

/// `(ω^+ - ω^-)/q*` for a split family, on unipotent classes.
pub fn split_difference(g: &So4, fam: Family) -> UnipotentProfile {
    let p = chartab::named(g, fam, Some(1)).expect("split family");
    let m = chartab::named(g, fam, Some(-1)).expect("split family");
    let diff = &chartab::character(g, &p) - &chartab::character(g, &m);
    let inv = Rat::new(1.into(), qstar(g.q()).into());
    UnipotentProfile::from_class_function(g, &diff).map(|v| v.scale(&inv))
}

/// One checked identity.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    pub witnesses: Vec<String>,
}

fn compare_profiles(name: &str, lhs: &UnipotentProfile, rhs: &UnipotentProfile) -> IdentityCheck {
    let witnesses: Vec<String> = lhs
        .labels
        .iter()
        .zip(lhs.values.iter().zip(&rhs.values))
        .filter(|(_, (a, b))| a != b)
        .map(|(l, (a, b))| format!("{l}: {a} vs {b}"))
        .collect();
    IdentityCheck {
        name: name.to_string(),
        holds: witnesses.is_empty(),
        witnesses,
    }
}

/// `St = ¼(R_{A1×Ã1} - R_{A1} - R_{Ã1} + R_1)`, exactly on every class.
pub fn steinberg_identity(g: &So4) -> IdentityCheck {
    let r: Vec<VirtualChar> = TorusType::ALL
        .iter()
        .map(|w| dl_char(g, &TorusChar::trivial(*w)).expect("trivial character"))
        .collect();
    let combo = VirtualChar::combine(&[(1, &r[3]), (-1, &r[1]), (-1, &r[2]), (1, &r[0])]);
    let st = chartab::named(g, Family::Steinberg, None).expect("Steinberg");
    let mut witnesses = Vec::new();
    let lhs = combo.class_function(g).scale(&Rat::new(1.into(), 4.into()));
    let rhs = chartab::character(g, &st);
    for c in 0..g.num_classes() {
        if lhs.values[c] != rhs.values[c] {
            witnesses.push(format!("{}: {} vs {}", g.display_label(c), lhs.values[c], rhs.values[c]));
        }
    }
    IdentityCheck {
        name: "steinberg".into(),
        holds: witnesses.is_empty(),
        witnesses,
    }
}

/// `ω^± = ½(𝒬_w ± q*𝒢_sgn)` on unipotents, `w` split for the principal pair and `A1×Ã1` for the cuspidal pair.
pub fn omega_identities(g: &So4) -> Vec<IdentityCheck> {
    let gs = g_sgn(g);
    let qs = qstar(g.q());
    let half = Rat::new(1.into(), 2.into());
    let mut out = Vec::new();
    for (fam, w, tag) in [
        (Family::OmegaPrincPm, TorusType::Split, "omega_princ"),
        (Family::OmegaCuspPm, TorusType::A1xA1Tilde, "omega_cusp"),
    ] {
        let qw = green(g, w);
        for sign in [1i8, -1] {
            let irr = chartab::named(g, fam, Some(sign)).expect("split family");
            let lhs = UnipotentProfile::from_class_function(g, &chartab::character(g, &irr));
            let rhs = qw.map2(&gs, |a, b| (a + &b.scale_int(sign as i64 * qs)).scale(&half));
            out.push(compare_profiles(&format!("{tag}{}", if sign == 1 { "+" } else { "-" }), &lhs, &rhs));
        }
    }
    let cusp = split_difference(g, Family::OmegaCuspPm);
    out.push(compare_profiles("g_sgn_shared_by_cusp_pair", &cusp, &gs));
    out
}

/// `½(1 + η ε(xy) q*)` at the regular unipotent classes `c2(1)×c2(1,γ)`, for both pairs and signs.
pub fn regular_unipotent_traces(g: &So4) -> IdentityCheck {
    let f = &g.field;
    let qs = qstar(g.q());
    let mut witnesses = Vec::new();
    for gamma in [1, f.nonsquare()] {
        let u = So4Elem::new(Mat2::new(f.q(), [1, 1, 0, 1]), Mat2::new(f.q(), [1, gamma, 0, 1])).expect("unipotent");
        let c = g.class_index(&u);
        for fam in [Family::OmegaPrincPm, Family::OmegaCuspPm] {
            for sign in [1i8, -1] {
                let irr = chartab::named(g, fam, Some(sign)).expect("split family");
                let want = Cyc::from_int(1, 1 + sign as i64 * f.eps(gamma) as i64 * qs).scale(&Rat::new(1.into(), 2.into()));
                let got = chartab::eval(g, &irr, c);
                if got != want {
                    witnesses.push(format!("{} at {}: {got} vs {want}", irr.name(), g.display_label(c)));
                }
            }
        }
    }
    IdentityCheck {
        name: "regular_unipotent_trace".into(),
        holds: witnesses.is_empty(),
        witnesses,
    }
}

/// `𝒢_sgn` vanishes where both factors are central.
pub fn g_sgn_support(g: &So4) -> IdentityCheck {
    let gs = g_sgn(g);
    let witnesses: Vec<String> = gs
        .classes
        .iter()
        .zip(&gs.values)
        .filter(|(c, v)| {
            let l = g.label(**c);
            matches!(l.first, crate::classes::FactorType::C1 { .. })
                && matches!(l.second, crate::classes::FactorType::C1 { .. })
                && !v.is_zero()
        })
        .map(|(c, v)| format!("{}: {v}", g.display_label(*c)))
        .collect();
    IdentityCheck {
        name: "g_sgn_support".into(),
        holds: witnesses.is_empty(),
        witnesses,
    }
}

/// Face profiles at the `GL2` level: `PS(1, ε) + St·ε` is `³⁄₂𝒬_1 - ½𝒬_{A1}` on unipotents
/// and has a three-dimensional space of invariants under the unipotent radical.
pub fn face_profiles(f: &Field) -> IdentityCheck {
    let q = f.q();
    let e = (q as i64 - 1) / 2;
    let id = crate::classes::FactorType::C1 { x: 1 };
    let u = crate::classes::FactorType::C2 { x: 1, gamma: 1 };
    let rep = [(1, Gl2Irr::ps(f, 0, e)), (1, Gl2Irr::St { a: e as u32 })];
    let value = |combo: &[(i64, Gl2Irr)], t| {
        combo
            .iter()
            .fold(Cyc::zero(1), |acc, (c, p)| acc + chartab::gl2_value_on_type(f, p, &t).scale_int(*c))
    };
    let q1 = gl2_dl(f, &FactorChar::Split { a: 0, b: 0 });
    let qa1 = gl2_dl(f, &FactorChar::Nonsplit { t: 0 });
    let mut witnesses = Vec::new();
    for (name, t) in [("identity", id), ("regular unipotent", u)] {
        let lhs = value(&rep, t);
        let rhs = (value(&q1, t).scale_int(3) - value(&qa1, t)).scale(&Rat::new(1.into(), 2.into()));
        if lhs != rhs {
            witnesses.push(format!("{name}: {lhs} vs {rhs}"));
        }
    }
    let inv = (value(&rep, id) + value(&rep, u).scale_int(q as i64 - 1)).scale(&Rat::new(1.into(), (q as i64).into()));
    if inv != Cyc::from_int(1, 3) {
        witnesses.push(format!("unipotent-radical invariants {inv}, expected 3"));
    }
    // the SL2 halves of PS(α0) sum to the induced character on unipotents
    for x in 1..q {
        let s = chartab::gl2::r_alpha0_unipotent(f, 1, x) + chartab::gl2::r_alpha0_unipotent(f, -1, x);
        if s != Cyc::from_int(1, 1) {
            witnesses.push(format!("R+(a0) + R-(a0) at u_{x}: {s}"));
        }
    }
    IdentityCheck {
        name: "faces".into(),
        holds: witnesses.is_empty(),
        witnesses,
    }
}

/// Every identity of this module.
#[derive(Clone, Debug, Serialize)]
pub struct GreenReport {
    pub q: u32,
    pub checks: Vec<IdentityCheck>,
    pub greens: BTreeMap<String, UnipotentProfile>,
    pub g_sgn: UnipotentProfile,
}

impl GreenReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

pub fn verify_identities(g: &So4) -> GreenReport {
    let mut checks = vec![steinberg_identity(g)];
    checks.extend(omega_identities(g));
    checks.push(regular_unipotent_traces(g));
    checks.push(g_sgn_support(g));
    checks.push(face_profiles(&g.field));
    GreenReport {
        q: g.q(),
        checks,
        greens: TorusType::ALL.iter().map(|w| (w.as_str().to_string(), green(g, *w))).collect(),
        g_sgn: g_sgn(g),
    }
}

/// The central element `(I, -I)` of order two.
pub fn central_involution(q: u32) -> So4Elem {
    So4Elem::new(Mat2::identity(q), Mat2::scalar(q, q - 1)).expect("determinant one")
}

/// Value of `χ` at `s·u`, for `s` central of order two and `u` the representative of a unipotent class.
pub fn su_eval(g: &So4, chi: &ClassFunction, s: &So4Elem, unipotent_class: usize) -> Result<Cyc> {
    if !g.label(unipotent_class).is_unipotent() {
        return Err(Error::Domain(format!("{} is not unipotent", g.display_label(unipotent_class))));
    }
    if s.mul(s) != So4Elem::identity(g.q()) || s.is_identity() {
        return Err(Error::Domain("s must have order two".into()));
    }
    let su = s.mul(&g.rep(unipotent_class));
    Ok(chi.values[g.index_of_label(&classify(&g.field, &su)).expect("total classification")].clone())
}

fn factor_torus(f: &Field, nonsplit: bool) -> Vec<Mat2> {
    let q = f.q();
    if nonsplit {
        let mut out = Vec::new();
        for a in 0..q {
            for b in 0..q {
                if a != 0 || b != 0 {
                    out.push(crate::classes::FactorType::C4 { z: Fq2Elem::new(a, b) }.matrix(f));
                }
            }
        }
        out
    } else {
        (1..q).flat_map(|a| (1..q).map(move |b| Mat2::diag(q, a, b))).collect()
    }
}

/// Elements of order two in the rational points of a torus of type `w`.
pub fn count_order2(f: &Field, w: TorusType) -> usize {
    let (n1, n2) = w.nonsplit();
    let t1 = factor_torus(f, n1);
    let t2 = factor_torus(f, n2);
    let mut seen = HashSet::new();
    for a in &t1 {
        for b in &t2 {
            if a.det() == b.det() {
                seen.insert(So4Elem::new(*a, *b).expect("equal determinants"));
            }
        }
    }
    let id = So4Elem::identity(f.q());
    seen.iter().filter(|x| **x != id && x.mul(x) == id).count()
}

/// The `√q*` used throughout, for reports.
pub fn sqrt_qstar(q: u32) -> Cyc {
    gauss_sqrt_qstar(q)
}
