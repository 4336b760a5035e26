//! The irreducible characters of `SO4(F_q)`.
//!
//! Every irreducible is a constituent of `π_1 ⊠ π_2` restricted from
//! `GL2 × GL2` to `GL_{2,2}`, with `π_1, π_2` irreducible and central
//! characters cancelling. Two pairs give the same restriction exactly when they
//! differ by `(χ_c ∘ det) ⊠ (χ_{-c} ∘ det)`; a pair fixed by the quadratic twist
//! restricts to a sum of two irreducibles, the `ω^±` families.
//!
//! [`appendix`] holds the published tables entry by entry, for comparison.

pub mod appendix;
pub mod gl2;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::classes::So4;
use crate::classfn::{ClassFunction, OracleTable};
use crate::cyclo::Cyc;
use crate::ff::Field;
use crate::groups::So4Elem;
use crate::{Error, Result};

pub use gl2::{gl2_table, gl2_value, gl2_value_on_type, sl2_split_table, sl2_split_value, sl2_value, Gl2Irr, SmallTable, Sl2Split};

/// Family tag of an irreducible of `SO4(F_q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Triv,
    ZetaTwist,
    OneBoxSt,
    OneBoxStZeta,
    StBoxOne,
    StBoxOneZeta,
    Steinberg,
    SteinbergZeta,
    IndPChiTriv,
    IndPChiSt,
    IndPMirrorChiTriv,
    IndPMirrorChiSt,
    OneBoxRhoTheta,
    StBoxRhoTheta,
    RhoThetaBoxOne,
    RhoThetaBoxSt,
    #[serde(rename = "ind_borel_4chars")]
    IndBorel4Chars,
    OmegaPrincPm,
    IndGl2pairRho,
    RhoBoxIndGl2pair,
    RhoBoxRho,
    OmegaCuspPm,
}

impl Family {
    pub const ALL: [Family; 22] = [
        Family::Triv,
        Family::ZetaTwist,
        Family::OneBoxSt,
        Family::OneBoxStZeta,
        Family::StBoxOne,
        Family::StBoxOneZeta,
        Family::Steinberg,
        Family::SteinbergZeta,
        Family::IndPChiTriv,
        Family::IndPChiSt,
        Family::IndPMirrorChiTriv,
        Family::IndPMirrorChiSt,
        Family::OneBoxRhoTheta,
        Family::StBoxRhoTheta,
        Family::RhoThetaBoxOne,
        Family::RhoThetaBoxSt,
        Family::IndBorel4Chars,
        Family::OmegaPrincPm,
        Family::IndGl2pairRho,
        Family::RhoBoxIndGl2pair,
        Family::RhoBoxRho,
        Family::OmegaCuspPm,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Triv => "triv",
            Family::ZetaTwist => "zeta_twist",
            Family::OneBoxSt => "one_box_st",
            Family::OneBoxStZeta => "one_box_st_zeta",
            Family::StBoxOne => "st_box_one",
            Family::StBoxOneZeta => "st_box_one_zeta",
            Family::Steinberg => "steinberg",
            Family::SteinbergZeta => "steinberg_zeta",
            Family::IndPChiTriv => "ind_p_chi_triv",
            Family::IndPChiSt => "ind_p_chi_st",
            Family::IndPMirrorChiTriv => "ind_p_mirror_chi_triv",
            Family::IndPMirrorChiSt => "ind_p_mirror_chi_st",
            Family::OneBoxRhoTheta => "one_box_rho_theta",
            Family::StBoxRhoTheta => "st_box_rho_theta",
            Family::RhoThetaBoxOne => "rho_theta_box_one",
            Family::RhoThetaBoxSt => "rho_theta_box_st",
            Family::IndBorel4Chars => "ind_borel_4chars",
            Family::OmegaPrincPm => "omega_princ_pm",
            Family::IndGl2pairRho => "ind_gl2pair_rho",
            Family::RhoBoxIndGl2pair => "rho_box_ind_gl2pair",
            Family::RhoBoxRho => "rho_box_rho",
            Family::OmegaCuspPm => "omega_cusp_pm",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.as_str() == s)
    }

    /// Case number of the published classification (1 to 9).
    pub fn case(&self) -> u8 {
        use Family::*;
        match self {
            Triv | OneBoxSt | StBoxOne | Steinberg => 1,
            ZetaTwist | OneBoxStZeta | StBoxOneZeta | SteinbergZeta => 2,
            IndPChiTriv | IndPChiSt | IndPMirrorChiTriv | IndPMirrorChiSt => 3,
            OneBoxRhoTheta | StBoxRhoTheta | RhoThetaBoxOne | RhoThetaBoxSt => 4,
            IndBorel4Chars => 5,
            OmegaPrincPm => 6,
            IndGl2pairRho | RhoBoxIndGl2pair => 7,
            RhoBoxRho => 8,
            OmegaCuspPm => 9,
        }
    }

    /// The image under the factor swap of a family the classification lists, when this one is not listed itself.
    pub fn mirror_of(&self) -> Option<Family> {
        use Family::*;
        match self {
            StBoxOne => Some(OneBoxSt),
            StBoxOneZeta => Some(OneBoxStZeta),
            IndPMirrorChiTriv => Some(IndPChiTriv),
            IndPMirrorChiSt => Some(IndPChiSt),
            RhoThetaBoxOne => Some(OneBoxRhoTheta),
            RhoThetaBoxSt => Some(StBoxRhoTheta),
            RhoBoxIndGl2pair => Some(IndGl2pairRho),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An irreducible of `SO4(F_q)`: the canonical `GL2 × GL2` pair, and for split pairs the component sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IrrSO4 {
    pub first: Gl2Irr,
    pub second: Gl2Irr,
    pub sign: Option<i8>,
}

fn rank(p: &Gl2Irr) -> u8 {
    match p {
        Gl2Irr::OneDim { .. } => 0,
        Gl2Irr::St { .. } => 1,
        Gl2Irr::Ps { .. } => 2,
        Gl2Irr::Cusp { .. } => 3,
    }
}

/// Least representative of the twist orbit of `(π_1, π_2)`.
pub fn canonical_pair(f: &Field, p1: &Gl2Irr, p2: &Gl2Irr) -> (Gl2Irr, Gl2Irr) {
    let m = f.q() as i64 - 1;
    (0..m)
        .map(|c| (p1.twist(f, c), p2.twist(f, -c)))
        .min()
        .expect("nonempty twist orbit")
}

/// Whether `(π_1, π_2)` is fixed by the quadratic twist, so its restriction splits in two.
pub fn is_split_pair(f: &Field, p1: &Gl2Irr, p2: &Gl2Irr) -> bool {
    let e = (f.q() as i64 - 1) / 2;
    p1.twist(f, e) == *p1 && p2.twist(f, -e) == *p2
}

impl IrrSO4 {
    /// The constituents of `π_1 ⊠ π_2`; errors unless the central characters cancel.
    pub fn from_pair(f: &Field, p1: &Gl2Irr, p2: &Gl2Irr) -> Result<Vec<IrrSO4>> {
        let m = f.q() - 1;
        if (p1.central(f) + p2.central(f)) % m != 0 {
            return Err(Error::Domain(format!(
                "{} x {} is not trivial on scalars",
                p1.name(),
                p2.name()
            )));
        }
        let (a, b) = canonical_pair(f, p1, p2);
        Ok(if is_split_pair(f, &a, &b) {
            vec![
                IrrSO4 { first: a, second: b, sign: Some(1) },
                IrrSO4 { first: a, second: b, sign: Some(-1) },
            ]
        } else {
            vec![IrrSO4 { first: a, second: b, sign: None }]
        })
    }

    pub fn family(&self) -> Family {
        use Gl2Irr::*;
        let nontriv = |a: u32| a != 0;
        match (self.first, self.second) {
            (OneDim { .. }, OneDim { a }) => {
                if nontriv(a) {
                    Family::ZetaTwist
                } else {
                    Family::Triv
                }
            }
            (OneDim { .. }, St { a }) => {
                if nontriv(a) {
                    Family::OneBoxStZeta
                } else {
                    Family::OneBoxSt
                }
            }
            (St { .. }, OneDim { a }) => {
                if nontriv(a) {
                    Family::StBoxOneZeta
                } else {
                    Family::StBoxOne
                }
            }
            (St { .. }, St { a }) => {
                if nontriv(a) {
                    Family::SteinbergZeta
                } else {
                    Family::Steinberg
                }
            }
            (OneDim { .. }, Ps { .. }) => Family::IndPChiTriv,
            (St { .. }, Ps { .. }) => Family::IndPChiSt,
            (Ps { .. }, OneDim { .. }) => Family::IndPMirrorChiTriv,
            (Ps { .. }, St { .. }) => Family::IndPMirrorChiSt,
            (OneDim { .. }, Cusp { .. }) => Family::OneBoxRhoTheta,
            (St { .. }, Cusp { .. }) => Family::StBoxRhoTheta,
            (Cusp { .. }, OneDim { .. }) => Family::RhoThetaBoxOne,
            (Cusp { .. }, St { .. }) => Family::RhoThetaBoxSt,
            (Ps { .. }, Ps { .. }) if self.sign.is_some() => Family::OmegaPrincPm,
            (Ps { .. }, Ps { .. }) => Family::IndBorel4Chars,
            (Ps { .. }, Cusp { .. }) => Family::IndGl2pairRho,
            (Cusp { .. }, Ps { .. }) => Family::RhoBoxIndGl2pair,
            (Cusp { .. }, Cusp { .. }) if self.sign.is_some() => Family::OmegaCuspPm,
            (Cusp { .. }, Cusp { .. }) => Family::RhoBoxRho,
        }
    }

    pub fn degree(&self, q: u32) -> i64 {
        let d = self.first.degree(q) * self.second.degree(q);
        if self.sign.is_some() {
            d / 2
        } else {
            d
        }
    }

    pub fn name(&self) -> String {
        let base = format!("{}[{}x{}]", self.family(), self.first.name(), self.second.name());
        match self.sign {
            Some(1) => format!("{base}+"),
            Some(_) => format!("{base}-"),
            None => base,
        }
    }

    /// The irreducible composed with the factor swap `(g, h) ↦ (h, g)`.
    pub fn swapped(&self, f: &Field) -> IrrSO4 {
        let (a, b) = canonical_pair(f, &self.second, &self.first);
        IrrSO4 {
            first: a,
            second: b,
            sign: self.sign,
        }
    }
}

/// All irreducibles, sorted, one per twist orbit (two for split orbits).
pub fn list_irreducibles(g: &So4) -> Result<Vec<IrrSO4>> {
    let f = &g.field;
    let all = Gl2Irr::all(f);
    let m = f.q() - 1;
    let mut seen = std::collections::BTreeSet::new();
    for p1 in &all {
        for p2 in &all {
            if (p1.central(f) + p2.central(f)) % m == 0 {
                seen.insert(canonical_pair(f, p1, p2));
            }
        }
    }
    let mut out = Vec::new();
    let (mut princ, mut cusp) = (0, 0);
    for (a, b) in seen {
        let irrs = IrrSO4::from_pair(f, &a, &b)?;
        if irrs.len() == 2 {
            match (rank(&a), rank(&b)) {
                (2, 2) => princ += 1,
                (3, 3) => cusp += 1,
                _ => {
                    return Err(Error::Domain(format!(
                        "unexpected split pair {} x {}",
                        a.name(),
                        b.name()
                    )))
                }
            }
        }
        out.extend(irrs);
    }
    if princ != 1 || cusp != 1 {
        return Err(Error::Domain(format!(
            "expected one principal and one cuspidal split orbit, found {princ} and {cusp}"
        )));
    }
    out.sort();
    Ok(out)
}

fn sqrt_in_field(f: &Field, d: u32) -> Option<u32> {
    let l = f.log(d);
    (l % 2 == 0).then(|| f.exp(l as i64 / 2))
}

/// Character value at an element.
pub fn eval_elem(f: &Field, irr: &IrrSO4, a: &So4Elem) -> Cyc {
    let (g, h) = (a.g(), a.h());
    let Some(sg) = irr.sign else {
        return gl2_value(f, &irr.first, &g) * gl2_value(f, &irr.second, &h);
    };
    let Some(r) = sqrt_in_field(f, g.det()) else {
        return Cyc::zero(1);
    };
    let ri = f.inv(r);
    let (g1, h1) = (g.scale(ri), h.scale(ri));
    let w = |s: i8| match irr.first {
        Gl2Irr::Ps { .. } => Sl2Split::OmegaE(s),
        _ => Sl2Split::Omega0(s),
    };
    sl2_value(f, w(1), &g1) * sl2_value(f, w(sg), &h1) + sl2_value(f, w(-1), &g1) * sl2_value(f, w(-sg), &h1)
}

/// Character value on a class.
pub fn eval(g: &So4, irr: &IrrSO4, class: usize) -> Cyc {
    eval_elem(&g.field, irr, &g.rep(class))
}

pub fn character(g: &So4, irr: &IrrSO4) -> ClassFunction {
    ClassFunction::from_fn(g, |c| eval(g, irr, c))
}

/// The unique irreducible of a family with no parameters, or the `sign` component of a split family.
pub fn named(g: &So4, family: Family, sign: Option<i8>) -> Result<IrrSO4> {
    let f = &g.field;
    let q = f.q() as i64;
    let e = ((q - 1) / 2) as u32;
    let pair = |a: Gl2Irr, b: Gl2Irr| IrrSO4::from_pair(f, &a, &b);
    let pick = |v: Vec<IrrSO4>| -> Result<IrrSO4> {
        match (v.len(), sign) {
            (1, None) => Ok(v[0]),
            (2, Some(s)) if s == 1 || s == -1 => Ok(*v.iter().find(|i| i.sign == Some(s)).expect("both signs")),
            _ => Err(Error::Usage(format!("{family} needs {}", if v.len() == 2 { "a sign" } else { "no sign" }))),
        }
    };
    use Gl2Irr::*;
    let v = match family {
        Family::Triv => pair(OneDim { a: 0 }, OneDim { a: 0 })?,
        Family::ZetaTwist => pair(OneDim { a: 0 }, OneDim { a: e })?,
        Family::OneBoxSt => pair(OneDim { a: 0 }, St { a: 0 })?,
        Family::OneBoxStZeta => pair(OneDim { a: 0 }, St { a: e })?,
        Family::StBoxOne => pair(St { a: 0 }, OneDim { a: 0 })?,
        Family::StBoxOneZeta => pair(St { a: 0 }, OneDim { a: e })?,
        Family::Steinberg => pair(St { a: 0 }, St { a: 0 })?,
        Family::SteinbergZeta => pair(St { a: 0 }, St { a: e })?,
        Family::OmegaPrincPm => pair(Gl2Irr::ps(f, 0, e as i64), Gl2Irr::ps(f, 0, e as i64))?,
        Family::OmegaCuspPm => {
            let m2 = q * q - 1;
            let t1 = (q + 1) / 2;
            let t2 = (0..m2)
                .find(|t| t % (q + 1) == (q + 1) / 2 && (t + t1) % (q - 1) == 0)
                .expect("CRT solution");
            pair(Gl2Irr::cusp(f, t1), Gl2Irr::cusp(f, t2))?
        }
        other => return Err(Error::Usage(format!("{other} is a parameterized family"))),
    };
    pick(v)
}

/// The irreducibles and their characters on the symbolic classes.
#[derive(Clone, Debug)]
pub struct CharTable {
    pub q: u32,
    pub irrs: Vec<IrrSO4>,
    pub chars: Vec<ClassFunction>,
}

impl CharTable {
    pub fn new(g: &So4) -> Result<CharTable> {
        let irrs = list_irreducibles(g)?;
        let chars = irrs.iter().map(|i| character(g, i)).collect();
        Ok(CharTable { q: g.q(), irrs, chars })
    }

    pub fn position(&self, irr: &IrrSO4) -> Option<usize> {
        self.irrs.iter().position(|i| i == irr)
    }

    pub fn char_of(&self, irr: &IrrSO4) -> Option<&ClassFunction> {
        self.position(irr).map(|i| &self.chars[i])
    }

    /// Multiplicities of every irreducible in `f`, as exact values; nonzero entries only.
    pub fn decompose(&self, g: &So4, f: &ClassFunction) -> Result<Vec<(IrrSO4, Cyc)>> {
        let mut out = Vec::new();
        for (irr, ch) in self.irrs.iter().zip(&self.chars) {
            let m = crate::classfn::inner_product(g, f, ch)?;
            if !m.is_zero() {
                out.push((*irr, m));
            }
        }
        Ok(out)
    }
}

/// Counts of irreducibles per family and per classification case.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyCount {
    pub family: Family,
    pub case: u8,
    pub count: usize,
    pub factor_swap_of_listed_family: bool,
}

pub fn family_counts(irrs: &[IrrSO4]) -> Vec<FamilyCount> {
    let mut counts: BTreeMap<Family, usize> = BTreeMap::new();
    for i in irrs {
        *counts.entry(i.family()).or_default() += 1;
    }
    Family::ALL
        .iter()
        .map(|fam| FamilyCount {
            family: *fam,
            case: fam.case(),
            count: counts.get(fam).copied().unwrap_or(0),
            factor_swap_of_listed_family: fam.mirror_of().is_some(),
        })
        .collect()
}

/// Outcome of matching the table against the independent oracle.
#[derive(Clone, Debug, Serialize)]
pub struct OracleMatch {
    pub oracle_characters: usize,
    pub prime: u64,
    pub matched: usize,
    pub unmatched_table: Vec<String>,
    pub unmatched_oracle: usize,
    pub passed: bool,
}

/// `verify_table` output.
#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub q: u32,
    pub num_irreducibles: usize,
    pub num_classes: usize,
    pub count_ok: bool,
    pub degree_square_sum: u64,
    pub group_order: u64,
    pub degree_sum_ok: bool,
    pub first_orthogonality_ok: bool,
    pub second_orthogonality_ok: bool,
    pub failures: Vec<String>,
    pub family_counts: Vec<FamilyCount>,
    pub oracle: Option<OracleMatch>,
    pub appendix: appendix::AppendixReport,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.count_ok
            && self.degree_sum_ok
            && self.first_orthogonality_ok
            && self.second_orthogonality_ok
            && self.oracle.as_ref().map_or(true, |o| o.passed)
    }
}

/// Count, degrees, both orthogonality relations, and the optional oracle comparison.
pub fn verify_table(g: &So4, table: &CharTable, oracle: Option<&OracleTable>) -> TableReport {
    let n = g.num_classes();
    let k = table.irrs.len();
    let order = g.order();
    let big_n = g.cyc_order();
    let lifted: Vec<Vec<Cyc>> = table
        .chars
        .iter()
        .map(|c| c.values.iter().map(|v| v.lift(big_n)).collect())
        .collect();
    let conj: Vec<Vec<Cyc>> = lifted.iter().map(|r| r.iter().map(Cyc::conj).collect()).collect();
    let mut failures = Vec::new();

    let degree_square_sum: u64 = table.irrs.iter().map(|i| (i.degree(g.q()) * i.degree(g.q())) as u64).sum();
    let idc = g.identity_class();
    for (irr, ch) in table.irrs.iter().zip(&table.chars) {
        if ch.values[idc] != Cyc::from_int(1, irr.degree(g.q())) {
            failures.push(format!("{}: value at identity differs from degree", irr.name()));
        }
    }

    let mut first_ok = true;
    for i in 0..k {
        for j in i..k {
            let mut acc = Cyc::zero(big_n);
            for c in 0..n {
                if lifted[i][c].is_zero() || lifted[j][c].is_zero() {
                    continue;
                }
                acc = acc + (&lifted[i][c] * &conj[j][c]).scale_int(g.size(c) as i64);
            }
            let want = Cyc::from_int(1, if i == j { order as i64 } else { 0 });
            if acc != want {
                first_ok = false;
                if failures.len() < 20 {
                    failures.push(format!(
                        "first orthogonality fails for ({}, {}): sum {}",
                        table.irrs[i].name(),
                        table.irrs[j].name(),
                        acc
                    ));
                }
            }
        }
    }

    let mut second_ok = true;
    if k == n {
        for c in 0..n {
            for d in c..n {
                let mut acc = Cyc::zero(big_n);
                for i in 0..k {
                    if lifted[i][c].is_zero() || lifted[i][d].is_zero() {
                        continue;
                    }
                    acc = acc + &lifted[i][c] * &conj[i][d];
                }
                let want = if c == d { (order / g.size(c)) as i64 } else { 0 };
                if acc != Cyc::from_int(1, want) {
                    second_ok = false;
                    if failures.len() < 40 {
                        failures.push(format!(
                            "second orthogonality fails for classes ({}, {}): sum {}",
                            g.display_label(c),
                            g.display_label(d),
                            acc
                        ));
                    }
                }
            }
        }
    } else {
        second_ok = false;
        failures.push(format!("{k} irreducibles for {n} classes"));
    }

    let oracle = oracle.map(|o| {
        let mut used = vec![false; o.chars.len()];
        let mut unmatched = Vec::new();
        for (irr, ch) in table.irrs.iter().zip(&table.chars) {
            match (0..o.chars.len()).find(|&x| !used[x] && o.chars[x] == *ch) {
                Some(x) => used[x] = true,
                None => unmatched.push(irr.name()),
            }
        }
        let matched = used.iter().filter(|&&u| u).count();
        OracleMatch {
            oracle_characters: o.chars.len(),
            prime: o.prime,
            matched,
            unmatched_oracle: o.chars.len() - matched,
            passed: unmatched.is_empty() && matched == o.chars.len(),
            unmatched_table: unmatched,
        }
    });

    TableReport {
        q: g.q(),
        num_irreducibles: k,
        num_classes: n,
        count_ok: k == n,
        degree_square_sum,
        group_order: order,
        degree_sum_ok: degree_square_sum == order,
        first_orthogonality_ok: first_ok,
        second_orthogonality_ok: second_ok,
        failures,
        family_counts: family_counts(&table.irrs),
        oracle,
        appendix: appendix::compare(g, table),
    }
}
