//! Irreducible characters of `GL2(F_q)` and the split components of `SL2(F_q)`.

use serde::Serialize;

use crate::classes::{gl2_type, FactorType};
use crate::cyclo::{gauss_sqrt_qstar, Cyc};
use crate::ff::{Field, Fq2Elem};
use crate::groups::Mat2;

/// An irreducible character of `GL2(F_q)`.
///
/// Exponents refer to the fixed generators of `F_q^×` and `F_{q²}^×`. A
/// principal series keeps `a < b`; a cuspidal `Cusp(t)` keeps the lesser of
/// `t` and `tq mod (q²-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Gl2Irr {
    OneDim { a: u32 },
    St { a: u32 },
    Ps { a: u32, b: u32 },
    Cusp { t: u32 },
}

fn m1(f: &Field) -> i64 {
    f.q() as i64 - 1
}

fn m2(f: &Field) -> i64 {
    (f.q() * f.q()) as i64 - 1
}

fn canonical_cusp(f: &Field, t: i64) -> u32 {
    let t = t.rem_euclid(m2(f));
    let tq = (t * f.q() as i64).rem_euclid(m2(f));
    t.min(tq) as u32
}

impl Gl2Irr {
    pub fn ps(f: &Field, a: i64, b: i64) -> Gl2Irr {
        let (a, b) = (a.rem_euclid(m1(f)) as u32, b.rem_euclid(m1(f)) as u32);
        assert_ne!(a, b, "principal series needs distinct characters");
        Gl2Irr::Ps { a: a.min(b), b: a.max(b) }
    }

    pub fn cusp(f: &Field, t: i64) -> Gl2Irr {
        let c = canonical_cusp(f, t);
        assert_ne!(c as i64, (c as i64 * f.q() as i64).rem_euclid(m2(f)), "cuspidal needs a regular character");
        Gl2Irr::Cusp { t: c }
    }

    /// Every irreducible character, in a fixed order.
    pub fn all(f: &Field) -> Vec<Gl2Irr> {
        let q = f.q();
        let mut out = Vec::new();
        for a in 0..q - 1 {
            out.push(Gl2Irr::OneDim { a });
        }
        for a in 0..q - 1 {
            out.push(Gl2Irr::St { a });
        }
        for a in 0..q - 1 {
            for b in a + 1..q - 1 {
                out.push(Gl2Irr::Ps { a, b });
            }
        }
        for t in 0..q * q - 1 {
            let tq = (t as u64 * q as u64 % (q as u64 * q as u64 - 1)) as u32;
            if t < tq {
                out.push(Gl2Irr::Cusp { t });
            }
        }
        out
    }

    pub fn degree(&self, q: u32) -> i64 {
        let q = q as i64;
        match self {
            Gl2Irr::OneDim { .. } => 1,
            Gl2Irr::St { .. } => q,
            Gl2Irr::Ps { .. } => q + 1,
            Gl2Irr::Cusp { .. } => q - 1,
        }
    }

    /// Exponent of the central character on `F_q^×`.
    pub fn central(&self, f: &Field) -> u32 {
        let m = m1(f);
        (match *self {
            Gl2Irr::OneDim { a } | Gl2Irr::St { a } => 2 * a as i64,
            Gl2Irr::Ps { a, b } => a as i64 + b as i64,
            Gl2Irr::Cusp { t } => t as i64,
        })
        .rem_euclid(m) as u32
    }

    /// `π ⊗ (χ_c ∘ det)`.
    pub fn twist(&self, f: &Field, c: i64) -> Gl2Irr {
        let m = m1(f);
        let sh = |a: u32| (a as i64 + c).rem_euclid(m) as u32;
        match *self {
            Gl2Irr::OneDim { a } => Gl2Irr::OneDim { a: sh(a) },
            Gl2Irr::St { a } => Gl2Irr::St { a: sh(a) },
            Gl2Irr::Ps { a, b } => Gl2Irr::ps(f, sh(a) as i64, sh(b) as i64),
            Gl2Irr::Cusp { t } => Gl2Irr::Cusp {
                t: canonical_cusp(f, t as i64 + c * (f.q() as i64 + 1)),
            },
        }
    }

    pub fn name(&self) -> String {
        match self {
            Gl2Irr::OneDim { a } => format!("chi{a}"),
            Gl2Irr::St { a } => format!("St.chi{a}"),
            Gl2Irr::Ps { a, b } => format!("PS(chi{a},chi{b})"),
            Gl2Irr::Cusp { t } => format!("rho(theta{t})"),
        }
    }
}

/// `χ_a(x)` for `x ∈ F_q^×`.
pub fn chi(f: &Field, a: i64, x: u32) -> Cyc {
    Cyc::root_of_unity(f.q() - 1, a * f.log(x) as i64)
}

/// `θ_t(z)` for `z ∈ F_{q²}^×`.
pub fn theta(f: &Field, t: i64, z: Fq2Elem) -> Cyc {
    Cyc::root_of_unity(f.q() * f.q() - 1, t * f.log2(z) as i64)
}

/// `θ_0` on `F_{q²}^1`; `z` must have norm one.
pub fn theta0(f: &Field, z: Fq2Elem) -> i64 {
    let l = f.log_norm_one(z).expect("norm-one argument");
    if l % 2 == 0 {
        1
    } else {
        -1
    }
}

fn int(v: i64) -> Cyc {
    Cyc::from_int(1, v)
}

/// Value of a `GL2` irreducible on an element of the given type.
pub fn gl2_value_on_type(f: &Field, pi: &Gl2Irr, ty: &FactorType) -> Cyc {
    let q = f.q() as i64;
    let det = ty.det(f);
    match *pi {
        Gl2Irr::OneDim { a } => chi(f, a as i64, det),
        Gl2Irr::St { a } => {
            let st = match ty {
                FactorType::C1 { .. } => q,
                FactorType::C2 { .. } => 0,
                FactorType::C3 { .. } => 1,
                FactorType::C4 { .. } => -1,
            };
            if st == 0 {
                int(0)
            } else {
                chi(f, a as i64, det).scale_int(st)
            }
        }
        Gl2Irr::Ps { a, b } => {
            let (a, b) = (a as i64, b as i64);
            match *ty {
                FactorType::C1 { x } => chi(f, a + b, x).scale_int(q + 1),
                FactorType::C2 { x, .. } => chi(f, a + b, x),
                FactorType::C3 { x, y } => chi(f, a, x) * chi(f, b, y) + chi(f, a, y) * chi(f, b, x),
                FactorType::C4 { .. } => int(0),
            }
        }
        Gl2Irr::Cusp { t } => {
            let t = t as i64;
            match *ty {
                FactorType::C1 { x } => theta(f, t, f.embed(x)).scale_int(q - 1),
                FactorType::C2 { x, .. } => -theta(f, t, f.embed(x)),
                FactorType::C3 { .. } => int(0),
                FactorType::C4 { z } => -(theta(f, t, z) + theta(f, t, f.frobenius(z))),
            }
        }
    }
}

pub fn gl2_value(f: &Field, pi: &Gl2Irr, m: &Mat2) -> Cyc {
    gl2_value_on_type(f, pi, &gl2_type(f, m))
}

/// The four split components of reducible `SL2(F_q)` representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sl2Split {
    /// `ω_e^±`, the halves of `Ind_B(ε ⊗ 1)`.
    OmegaE(i8),
    /// `ω_0^±`, the halves of `ρ_{θ_0}` restricted to `SL2`.
    Omega0(i8),
}

/// Value of `ω_e^±` or `ω_0^±` on an element of `SL2(F_q)` of the given type.
pub fn sl2_split_value(f: &Field, w: Sl2Split, ty: &FactorType) -> Cyc {
    let q = f.q() as i64;
    let e_m1 = f.eps(f.neg(1)) as i64;
    let g = gauss_sqrt_qstar(f.q());
    let half = |c: Cyc| c.scale(&crate::Rat::new(1.into(), 2.into()));
    match (w, *ty) {
        (Sl2Split::OmegaE(_), FactorType::C1 { x }) => {
            let s = if x == 1 { 1 } else { e_m1 };
            half(int(s * (q + 1)))
        }
        (Sl2Split::OmegaE(sg), FactorType::C2 { x, gamma }) => {
            let es = f.eps(x) as i64;
            half(int(es) + g.scale_int(sg as i64 * f.eps(gamma) as i64))
        }
        (Sl2Split::OmegaE(_), FactorType::C3 { x, .. }) => int(f.eps(x) as i64),
        (Sl2Split::OmegaE(_), FactorType::C4 { .. }) => int(0),
        (Sl2Split::Omega0(_), FactorType::C1 { x }) => {
            let s = if x == 1 { 1 } else { -e_m1 };
            half(int(s * (q - 1)))
        }
        (Sl2Split::Omega0(sg), FactorType::C2 { x, gamma }) => {
            let s = f.signed(x);
            let es = f.eps(x) as i64;
            half(int(-es) + g.scale_int(sg as i64 * f.eps(gamma) as i64)).scale_int(s)
        }
        (Sl2Split::Omega0(_), FactorType::C3 { .. }) => int(0),
        (Sl2Split::Omega0(_), FactorType::C4 { z }) => int(-theta0(f, z)),
    }
}

/// The `SL2` split characters named by the classic tables, evaluated on a matrix of determinant one.
pub fn sl2_value(f: &Field, w: Sl2Split, m: &Mat2) -> Cyc {
    debug_assert_eq!(m.det(), 1);
    sl2_split_value(f, w, &gl2_type(f, m))
}

/// `R_±(α_0)` on the unipotent `[[1,x],[0,1]]`: `½(1 ± ε(x)√q*)`.
pub fn r_alpha0_unipotent(f: &Field, sign: i8, x: u32) -> Cyc {
    let g = gauss_sqrt_qstar(f.q());
    (int(1) + g.scale_int(sign as i64 * f.eps(x) as i64)).scale(&crate::Rat::new(1.into(), 2.into()))
}

/// `R'_±(θ_0)` on the unipotent `[[1,x],[0,1]]`: `½(-1 ± ε(x)√q*)`.
pub fn r_theta0_unipotent(f: &Field, sign: i8, x: u32) -> Cyc {
    let g = gauss_sqrt_qstar(f.q());
    (int(-1) + g.scale_int(sign as i64 * f.eps(x) as i64)).scale(&crate::Rat::new(1.into(), 2.into()))
}

/// A small character table: class names, class sizes, and one row per character.
#[derive(Clone, Debug, Serialize)]
pub struct SmallTable {
    pub group: String,
    pub q: u32,
    pub classes: Vec<String>,
    pub sizes: Vec<u64>,
    pub rows: Vec<(String, Vec<Cyc>)>,
}

fn sl2_type(f: &Field, m: &Mat2) -> FactorType {
    match gl2_type(f, m) {
        FactorType::C2 { x, .. } => {
            let gamma = if m.entry(1) != 0 { m.entry(1) } else { f.neg(m.entry(2)) };
            let gamma = if f.is_square(gamma) { 1 } else { f.nonsquare() };
            FactorType::C2 { x, gamma }
        }
        t => t,
    }
}

fn tabulate(f: &Field, elems: &[Mat2], classify: impl Fn(&Mat2) -> FactorType) -> (Vec<FactorType>, Vec<u64>) {
    let mut counts: std::collections::BTreeMap<String, (FactorType, u64)> = std::collections::BTreeMap::new();
    for m in elems {
        let t = classify(m);
        counts.entry(format!("{:?}", t)).or_insert((t, 0)).1 += 1;
    }
    let mut v: Vec<(FactorType, u64)> = counts.into_values().collect();
    v.sort_by_key(|(t, _)| (t.kind(), t.display(f)));
    v.into_iter().unzip()
}

/// The character table of `GL2(F_q)`.
pub fn gl2_table(f: &Field) -> SmallTable {
    let elems = crate::groups::gl2_elements(f.q());
    let (types, sizes) = tabulate(f, &elems, |m| gl2_type(f, m));
    SmallTable {
        group: "GL2".into(),
        q: f.q(),
        classes: types.iter().map(|t| t.display(f)).collect(),
        sizes,
        rows: Gl2Irr::all(f)
            .iter()
            .map(|p| (p.name(), types.iter().map(|t| gl2_value_on_type(f, p, t)).collect()))
            .collect(),
    }
}

/// The split components `ω_e^±`, `ω_0^±` on the classes of `SL2(F_q)`.
pub fn sl2_split_table(f: &Field) -> SmallTable {
    let elems: Vec<Mat2> = crate::groups::gl2_elements(f.q()).into_iter().filter(|m| m.det() == 1).collect();
    let (types, sizes) = tabulate(f, &elems, |m| sl2_type(f, m));
    let comps = [
        ("omega_e+", Sl2Split::OmegaE(1)),
        ("omega_e-", Sl2Split::OmegaE(-1)),
        ("omega_0+", Sl2Split::Omega0(1)),
        ("omega_0-", Sl2Split::Omega0(-1)),
    ];
    SmallTable {
        group: "SL2".into(),
        q: f.q(),
        classes: types.iter().map(|t| t.display(f)).collect(),
        sizes,
        rows: comps
            .iter()
            .map(|(n, w)| (n.to_string(), types.iter().map(|t| sl2_split_value(f, *w, t)).collect()))
            .collect(),
    }
}
