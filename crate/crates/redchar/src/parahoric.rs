//! Named representations of `SO4(F_q)` coming from parahoric invariants, with
//! their decompositions and unipotent-radical invariants.

use serde::Serialize;

use crate::chartab::{self, gl2_value, CharTable, Family, Gl2Irr, IrrSO4};
use crate::classes::So4;
use crate::classfn::{self, induce, inner_product, n_invariants, paired_tuple_coords, ClassFunction, OracleTable};
use crate::cyclo::Cyc;
use crate::groups::{Mat2, So4Elem, SubgroupId};
use crate::{Error, Result};

/// A representation assembled from the table or by induction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rep", rename_all = "snake_case")]
pub enum NamedRep {
    /// `ε·St ⊕ ω_princ^{sign}`.
    PiEta2Beta { sign: i8 },
    /// `Ind_𝔹(χ1 ⊗ χ2 ⊗ φ1 ⊗ φ2)`, exponents of the tuple with `χ1χ2 = φ1φ2`.
    IndBorel { tuple: [i64; 4] },
    /// `Ind_P(α ⊗ β ⊗ χ·St)` from the parabolic whose first factor is triangular.
    IndP { alpha: i64, beta: i64, chi: i64 },
    /// `ω_princ^+ ⊕ ω_princ^-`, realised as `Ind_𝔹(ε ⊗ 1 ⊗ ε ⊗ 1)`.
    OmegaPrincEpsShadow,
    /// `Ind_𝔹(ε⊗ε⊗1⊗1) + 2·Ind_𝔹(ε⊗1⊗ε⊗1)`.
    MackeySumBeta,
}

impl NamedRep {
    /// `ind_p_zeta` is `Ind_P(ζ ⊗ ζ⁻¹ ⊗ St)` with `ζ` of order 3, so it needs `q ≡ 1 mod 3`.
    pub fn parse(s: &str, q: u32) -> Result<NamedRep> {
        let e = (q as i64 - 1) / 2;
        let nums = |body: &str, n: usize| -> Result<Vec<i64>> {
            let v: Vec<i64> = body
                .split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Usage(format!("bad integer in {s}"))))
                .collect::<Result<_>>()?;
            if v.len() != n {
                return Err(Error::Usage(format!("{s}: expected {n} integers")));
            }
            Ok(v)
        };
        Ok(match s {
            "pi_eta2_beta" | "pi_eta2_beta+" => NamedRep::PiEta2Beta { sign: 1 },
            "pi_eta2_beta-" => NamedRep::PiEta2Beta { sign: -1 },
            "omega_princ_eps_shadow" => NamedRep::OmegaPrincEpsShadow,
            "mackey_sum_beta" => NamedRep::MackeySumBeta,
            "ind_borel_eps" => NamedRep::IndBorel { tuple: [e, 0, e, 0] },
            "ind_p_zeta" | "ind_borel_zeta" => {
                let c = zeta_exponent(q)?;
                if s == "ind_p_zeta" {
                    NamedRep::IndP { alpha: c, beta: -c, chi: 0 }
                } else {
                    NamedRep::IndBorel { tuple: [c, 0, c, 0] }
                }
            }
            _ => {
                if let Some(b) = s.strip_prefix("ind_borel:") {
                    let v = nums(b, 4)?;
                    NamedRep::IndBorel { tuple: [v[0], v[1], v[2], v[3]] }
                } else if let Some(b) = s.strip_prefix("ind_p:") {
                    let v = nums(b, 3)?;
                    NamedRep::IndP { alpha: v[0], beta: v[1], chi: v[2] }
                } else {
                    return Err(Error::Usage(format!("unknown representation {s}")));
                }
            }
        })
    }

    pub fn name(&self) -> String {
        match self {
            NamedRep::PiEta2Beta { sign } => format!("pi_eta2_beta{}", if *sign > 0 { "+" } else { "-" }),
            NamedRep::IndBorel { tuple: t } => format!("ind_borel:{},{},{},{}", t[0], t[1], t[2], t[3]),
            NamedRep::IndP { alpha, beta, chi } => format!("ind_p:{alpha},{beta},{chi}"),
            NamedRep::OmegaPrincEpsShadow => "omega_princ_eps_shadow".into(),
            NamedRep::MackeySumBeta => "mackey_sum_beta".into(),
        }
    }
}

/// Exponent of a character of order 3 on `F_q^×`.
pub fn zeta_exponent(q: u32) -> Result<i64> {
    if q % 3 != 1 {
        return Err(Error::Domain(format!("no character of order 3 on F_{q}^x")));
    }
    Ok((q as i64 - 1) / 3)
}

fn borel_exponents(t: [i64; 4]) -> [i64; 4] {
    [t[0], t[1], -t[2], -t[3]]
}

/// `Ind_P(α ⊗ β ⊗ χ·St)`.
pub fn ind_p(g: &So4, alpha: i64, beta: i64, chi: i64) -> Result<ClassFunction> {
    let f = &g.field;
    let m = f.q() as i64 - 1;
    if (alpha + beta + 2 * chi).rem_euclid(m) != 0 {
        return Err(Error::Domain("inducing character is not trivial on scalars".into()));
    }
    let st = Gl2Irr::St { a: chi.rem_euclid(m) as u32 };
    let ch = move |x: &So4Elem| {
        let (a, h) = (x.g(), x.h());
        let e = alpha * f.log(a.entry(0)) as i64 + beta * f.log(a.entry(3)) as i64;
        Cyc::root_of_unity(f.q() - 1, e) * gl2_value(f, &st, &h)
    };
    induce(g, SubgroupId::MirrorParabolic, &ch)
}

pub fn character(g: &So4, rep: &NamedRep) -> Result<ClassFunction> {
    let e = (g.q() as i64 - 1) / 2;
    Ok(match *rep {
        NamedRep::PiEta2Beta { sign } => {
            let st = chartab::named(g, Family::SteinbergZeta, None)?;
            let w = chartab::named(g, Family::OmegaPrincPm, Some(sign))?;
            &chartab::character(g, &st) + &chartab::character(g, &w)
        }
        NamedRep::IndBorel { tuple } => classfn::induce_from_borel(g, borel_exponents(tuple))?,
        NamedRep::IndP { alpha, beta, chi } => ind_p(g, alpha, beta, chi)?,
        NamedRep::OmegaPrincEpsShadow => classfn::induce_from_borel(g, [e, 0, e, 0])?,
        NamedRep::MackeySumBeta => mackey_sum_beta(g)?,
    })
}

pub fn mackey_sum_beta(g: &So4) -> Result<ClassFunction> {
    let e = (g.q() as i64 - 1) / 2;
    let a = classfn::induce_from_borel(g, borel_exponents([e, e, 0, 0]))?;
    let b = classfn::induce_from_borel(g, borel_exponents([e, 0, e, 0]))?;
    Ok(&a + &b.scale_int(2))
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub rep: String,
    pub degree: Cyc,
    pub constituents: Vec<(String, i64)>,
    pub nonnegative_integral: bool,
}

pub fn decompose(g: &So4, table: &CharTable, rep: &NamedRep) -> Result<Decomposition> {
    let ch = character(g, rep)?;
    decompose_function(g, table, &rep.name(), &ch)
}

pub fn decompose_function(g: &So4, table: &CharTable, name: &str, ch: &ClassFunction) -> Result<Decomposition> {
    let mut constituents = Vec::new();
    let mut ok = true;
    for (irr, m) in table.decompose(g, ch)? {
        match m.to_i64() {
            Some(k) => {
                ok &= k >= 0;
                constituents.push((irr.name(), k));
            }
            None => {
                ok = false;
                constituents.push((format!("{} (multiplicity {m})", irr.name()), 0));
            }
        }
    }
    Ok(Decomposition {
        rep: name.to_string(),
        degree: ch.degree(g),
        constituents,
        nonnegative_integral: ok,
    })
}

/// Decomposes `ch` against the independent oracle table.
///
/// Oracle rows that coincide with a computed irreducible are named after it;
/// any other row is reported as `oracle[i]`.
pub fn decompose_against_oracle(
    g: &So4,
    table: &CharTable,
    oracle: &OracleTable,
    name: &str,
    ch: &ClassFunction,
) -> Result<Decomposition> {
    let mut constituents = Vec::new();
    let mut ok = true;
    for (i, row) in oracle.chars.iter().enumerate() {
        let m = inner_product(g, ch, row)?;
        if m.is_zero() {
            continue;
        }
        let label = table
            .irrs
            .iter()
            .zip(&table.chars)
            .find(|(_, c)| c.values == row.values)
            .map(|(irr, _)| irr.name())
            .unwrap_or_else(|| format!("oracle[{i}]"));
        match m.to_i64() {
            Some(k) => {
                ok &= k >= 0;
                constituents.push((label, k));
            }
            None => {
                ok = false;
                constituents.push((format!("{label} (multiplicity {m})"), 0));
            }
        }
    }
    Ok(Decomposition {
        rep: name.to_string(),
        degree: ch.degree(g),
        constituents,
        nonnegative_integral: ok,
    })
}

fn multiplicity_of(d: &Decomposition, irr: &IrrSO4) -> i64 {
    d.constituents.iter().find(|(n, _)| *n == irr.name()).map(|(_, k)| *k).unwrap_or(0)
}

#[derive(Clone, Debug, Serialize)]
pub struct MackeyReport {
    pub q: u32,
    pub decomposition: Decomposition,
    pub expected_degree: i64,
    pub eps_steinberg_multiplicity: i64,
    /// Multiplicities of `ω_princ^±` in one copy of `Ind_𝔹(ε⊗1⊗ε⊗1)`.
    pub omega_princ_multiplicities: (i64, i64),
    /// The same in the whole sum, where that summand is doubled.
    pub omega_princ_total: (i64, i64),
    /// Componentwise `≥` against `ε·St ⊕ ω_princ^{±}`, for both signs.
    pub contains_pi_eta2_beta: bool,
    pub passed: bool,
}

pub fn mackey_report(g: &So4, table: &CharTable) -> Result<MackeyReport> {
    let q = g.q() as i64;
    let d = decompose(g, table, &NamedRep::MackeySumBeta)?;
    let est = chartab::named(g, Family::SteinbergZeta, None)?;
    let wp = chartab::named(g, Family::OmegaPrincPm, Some(1))?;
    let wm = chartab::named(g, Family::OmegaPrincPm, Some(-1))?;
    let eps_st = multiplicity_of(&d, &est);
    let e = (q - 1) / 2;
    let single = decompose(g, table, &NamedRep::IndBorel { tuple: [e, 0, e, 0] })?;
    let om = (multiplicity_of(&single, &wp), multiplicity_of(&single, &wm));
    let total = (multiplicity_of(&d, &wp), multiplicity_of(&d, &wm));
    let mut contains = true;
    for sign in [1, -1] {
        let p = decompose(g, table, &NamedRep::PiEta2Beta { sign })?;
        for (n, k) in &p.constituents {
            let have = d.constituents.iter().find(|(m, _)| m == n).map(|x| x.1).unwrap_or(0);
            contains &= have >= *k;
        }
    }
    let expected_degree = 3 * (q + 1) * (q + 1);
    let passed = d.nonnegative_integral
        && d.degree == Cyc::from_int(1, expected_degree)
        && eps_st == 1
        && om == (1, 1)
        && total == (2, 2)
        && contains;
    Ok(MackeyReport {
        q: g.q(),
        decomposition: d,
        expected_degree,
        eps_steinberg_multiplicity: eps_st,
        omega_princ_multiplicities: om,
        omega_princ_total: total,
        contains_pi_eta2_beta: contains,
        passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NInvariantReport {
    pub rep: String,
    /// `(k, l)`: the character `(b1, b2) ↦ χ_k(b1)χ_l(b2)` of the torus with `a1 = 1`.
    pub characters: Vec<((u32, u32), i64)>,
    pub dimension: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Vec<((u32, u32), i64)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches_expected: Option<bool>,
}

/// The torus characters that the known cases should produce, in `(k, l)` coordinates, with multiplicity.
pub fn expected_n_invariants(q: u32, rep: &NamedRep) -> Option<Vec<((u32, u32), i64)>> {
    let m = q as i64 - 1;
    let e = (m / 2) as u32;
    let mut v: Vec<(u32, u32)> = match *rep {
        NamedRep::PiEta2Beta { .. } => vec![(e, e), (0, e), (e, 0)],
        NamedRep::IndBorel { tuple: t } => {
            let mut out = Vec::new();
            for w1 in [false, true] {
                for w2 in [false, true] {
                    let (a, b) = if w1 { (t[1], t[0]) } else { (t[0], t[1]) };
                    let (c, d) = if w2 { (t[3], t[2]) } else { (t[2], t[3]) };
                    out.push(paired_tuple_coords(q, [a, b, c, d]));
                }
            }
            out
        }
        NamedRep::IndP { alpha, beta, chi: 0 } => {
            vec![paired_tuple_coords(q, [alpha, beta, 0, 0]), paired_tuple_coords(q, [beta, alpha, 0, 0])]
        }
        _ => return None,
    };
    v.sort_unstable();
    let mut out: Vec<((u32, u32), i64)> = Vec::new();
    for x in v {
        match out.last_mut() {
            Some((y, k)) if *y == x => *k += 1,
            _ => out.push((x, 1)),
        }
    }
    Some(out)
}

pub fn n_invariants_report(g: &So4, rep: &NamedRep) -> Result<NInvariantReport> {
    let ch = character(g, rep)?;
    let chars = n_invariants(g, &ch)?;
    let dimension = chars.iter().map(|x| x.1).sum();
    let expected = expected_n_invariants(g.q(), rep);
    let matches_expected = expected.as_ref().map(|ex| chars == *ex);
    Ok(NInvariantReport {
        rep: rep.name(),
        characters: chars,
        dimension,
        expected,
        matches_expected,
    })
}

/// `⟨χ, χ⟩` for `Ind_P(ζ ⊗ ζ⁻¹ ⊗ St)`.
pub fn ind_p_zeta_self_product(g: &So4) -> Result<Cyc> {
    let c = zeta_exponent(g.q())?;
    let ch = ind_p(g, c, -c, 0)?;
    inner_product(g, &ch, &ch)
}

/// `χ ∘ Ad(s, t)`.
pub fn adjoint_twist(g: &So4, chi: &ClassFunction, s: &Mat2, t: &Mat2) -> Result<ClassFunction> {
    let mut idx = Vec::with_capacity(g.num_classes());
    for c in 0..g.num_classes() {
        idx.push(g.class_index(&g.rep(c).adjoint_conj(s, t)?));
    }
    Ok(ClassFunction::from_fn(g, |c| chi.values[idx[c]].clone()))
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentPin {
    pub q: u32,
    pub regular_class: String,
    /// `½(1 + q*)` and `½(1 - q*)`.
    pub expected_traces: (i64, i64),
    pub traces: (Cyc, Cyc),
    /// Component whose regular unipotent trace is `½(1 + q*)`.
    pub trace_pinned_plus: Option<String>,
    pub twist_swaps_in_first_factor: bool,
    pub twist_swaps_in_second_factor: bool,
    /// Twisting by a square `diag(c², 1)` fixes each component.
    pub square_twist_fixes: bool,
    pub consistent: bool,
}

pub fn component_pin(g: &So4) -> Result<ComponentPin> {
    let f = &g.field;
    let q = g.q();
    let qs = if q % 4 == 1 { q as i64 } else { -(q as i64) };
    let u = So4Elem::new(Mat2::new(q, [1, 1, 0, 1]), Mat2::new(q, [1, 1, 0, 1]))?;
    let c = g.class_index(&u);
    let wp = chartab::named(g, Family::OmegaPrincPm, Some(1))?;
    let wm = chartab::named(g, Family::OmegaPrincPm, Some(-1))?;
    let (cp, cm) = (chartab::character(g, &wp), chartab::character(g, &wm));
    let expected = ((1 + qs) / 2, (1 - qs) / 2);
    let traces = (cp.values[c].clone(), cm.values[c].clone());
    let trace_pinned_plus = if traces.0 == Cyc::from_int(1, expected.0) {
        Some(wp.name())
    } else if traces.1 == Cyc::from_int(1, expected.0) {
        Some(wm.name())
    } else {
        None
    };
    let id = Mat2::identity(q);
    let d = Mat2::diag(q, f.nonsquare(), 1);
    let sq = Mat2::diag(q, f.mul(f.generator(), f.generator()), 1);
    let first = adjoint_twist(g, &cp, &d, &id)? == cm;
    let second = adjoint_twist(g, &cp, &id, &d)? == cm;
    let square = adjoint_twist(g, &cp, &sq, &id)? == cp && adjoint_twist(g, &cm, &id, &sq)? == cm;
    let consistent = trace_pinned_plus.as_deref() == Some(wp.name().as_str()) && first && second && square;
    Ok(ComponentPin {
        q,
        regular_class: g.display_label(c),
        expected_traces: expected,
        traces,
        trace_pinned_plus,
        twist_swaps_in_first_factor: first,
        twist_swaps_in_second_factor: second,
        square_twist_fixes: square,
        consistent,
    })
}

/// Every check of this module that applies at `q`.
#[derive(Clone, Debug, Serialize)]
pub struct ParahoricReport {
    pub q: u32,
    pub decompositions: Vec<Decomposition>,
    pub n_invariants: Vec<NInvariantReport>,
    pub mackey: MackeyReport,
    pub pin: ComponentPin,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ind_p_zeta_self_product: Option<Cyc>,
}

impl ParahoricReport {
    pub fn passed(&self) -> bool {
        self.decompositions.iter().all(|d| d.nonnegative_integral)
            && self.n_invariants.iter().all(|n| n.matches_expected != Some(false))
            && self.mackey.passed
            && self.pin.consistent
            && self.ind_p_zeta_self_product.as_ref().map_or(true, |v| *v == Cyc::from_int(1, 1))
    }
}

/// The named representations checked at `q`; the cubic ones only when `q ≡ 1 mod 3`.
pub fn default_reps(q: u32) -> Vec<NamedRep> {
    let e = (q as i64 - 1) / 2;
    let mut v = vec![
        NamedRep::PiEta2Beta { sign: 1 },
        NamedRep::PiEta2Beta { sign: -1 },
        NamedRep::OmegaPrincEpsShadow,
        NamedRep::IndBorel { tuple: [e, 0, e, 0] },
        NamedRep::IndP { alpha: 0, beta: 0, chi: e },
    ];
    if let Ok(c) = zeta_exponent(q) {
        v.push(NamedRep::IndP { alpha: c, beta: -c, chi: 0 });
        v.push(NamedRep::IndBorel { tuple: [c, 0, c, 0] });
    }
    v
}

pub fn parahoric_report(g: &So4, table: &CharTable) -> Result<ParahoricReport> {
    let reps = default_reps(g.q());
    let mut decompositions = Vec::new();
    let mut n_inv = Vec::new();
    for r in &reps {
        decompositions.push(decompose(g, table, r)?);
        n_inv.push(n_invariants_report(g, r)?);
    }
    Ok(ParahoricReport {
        q: g.q(),
        decompositions,
        n_invariants: n_inv,
        mackey: mackey_report(g, table)?,
        pin: component_pin(g)?,
        ind_p_zeta_self_product: ind_p_zeta_self_product(g).ok(),
    })
}
