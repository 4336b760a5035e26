//! `SL3(F_q)` for `q ≡ 1 mod 3`, restricted to the regular unipotent locus.
//!
//! A regular unipotent `u` with nilpotent part `N` has a cyclic vector `v`,
//! and the cube class of `det[N²v | Nv | v]` does not depend on `v` or on
//! `SL3`-conjugation. For the upper unitriangular `u` with superdiagonal
//! `(a, b)` it is the class of `ab²`; its discrete log mod 3 is the label.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::cyclo::Cyc;
use crate::ff::Field;
use crate::{Error, Result};

/// A 3×3 matrix over `F_q`, row major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat3 {
    q: u32,
    e: [u32; 9],
}

impl Mat3 {
    pub fn new(q: u32, e: [u32; 9]) -> Mat3 {
        Mat3 { q, e: e.map(|x| x % q) }
    }

    pub fn identity(q: u32) -> Mat3 {
        Mat3::new(q, [1, 0, 0, 0, 1, 0, 0, 0, 1])
    }

    pub fn diag(q: u32, a: u32, b: u32, c: u32) -> Mat3 {
        Mat3::new(q, [a, 0, 0, 0, b, 0, 0, 0, c])
    }

    /// The upper unitriangular matrix with superdiagonal `(a, b)` and corner `c`.
    pub fn unitriangular(q: u32, a: u32, b: u32, c: u32) -> Mat3 {
        Mat3::new(q, [1, a, c, 0, 1, b, 0, 0, 1])
    }

    /// `I + E_{ij}`.
    pub fn elementary(q: u32, i: usize, j: usize) -> Mat3 {
        let mut m = Mat3::identity(q);
        m.e[3 * i + j] = 1;
        m
    }

    pub fn from_columns(q: u32, c: [[u32; 3]; 3]) -> Mat3 {
        let mut e = [0; 9];
        for (j, col) in c.iter().enumerate() {
            for i in 0..3 {
                e[3 * i + j] = col[i];
            }
        }
        Mat3::new(q, e)
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.e[3 * i + j]
    }

    pub fn mul(&self, o: &Mat3) -> Mat3 {
        let q = self.q as u64;
        let mut e = [0u32; 9];
        for i in 0..3 {
            for j in 0..3 {
                let s: u64 = (0..3).map(|k| self.e[3 * i + k] as u64 * o.e[3 * k + j] as u64).sum();
                e[3 * i + j] = (s % q) as u32;
            }
        }
        Mat3 { q: self.q, e }
    }

    pub fn apply(&self, v: [u32; 3]) -> [u32; 3] {
        let q = self.q as u64;
        let mut out = [0; 3];
        for (i, o) in out.iter_mut().enumerate() {
            *o = ((0..3).map(|k| self.e[3 * i + k] as u64 * v[k] as u64).sum::<u64>() % q) as u32;
        }
        out
    }

    pub fn det(&self) -> u32 {
        let q = self.q as i64;
        let m = |i: usize, j: usize| self.e[3 * i + j] as i64;
        let d = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        d.rem_euclid(q) as u32
    }

    /// Inverse by the adjugate; `None` when singular.
    pub fn inv(&self, f: &Field) -> Option<Mat3> {
        let d = self.det();
        if d == 0 {
            return None;
        }
        let di = f.inv(d) as i64;
        let q = self.q as i64;
        let m = |i: usize, j: usize| self.e[3 * (i % 3) + (j % 3)] as i64;
        let mut e = [0u32; 9];
        for i in 0..3 {
            for j in 0..3 {
                let cof = m(j + 1, i + 1) * m(j + 2, i + 2) - m(j + 1, i + 2) * m(j + 2, i + 1);
                e[3 * i + j] = (cof.rem_euclid(q) * di % q) as u32;
            }
        }
        Some(Mat3 { q: self.q, e })
    }

    pub fn conj_by(&self, g: &Mat3, g_inv: &Mat3) -> Mat3 {
        g.mul(self).mul(g_inv)
    }

    fn sub_identity(&self) -> Mat3 {
        let mut m = *self;
        for i in 0..3 {
            m.e[4 * i] = (m.e[4 * i] + self.q - 1) % self.q;
        }
        m
    }

    /// Regular unipotent: `(u - 1)³ = 0` and `(u - 1)² ≠ 0`.
    pub fn is_regular_unipotent(&self) -> bool {
        let n = self.sub_identity();
        let n2 = n.mul(&n);
        n2.mul(&n).e.iter().all(|&x| x == 0) && n2.e.iter().any(|&x| x != 0)
    }
}

/// Precondition: `q` an odd prime with `q ≡ 1 mod 3`.
pub fn check_q(q: u32) -> Result<Field> {
    let f = Field::new(q)?;
    if q % 3 != 1 {
        return Err(Error::Domain(format!("q = {q} is not 1 mod 3")));
    }
    Ok(f)
}

/// Cube class of `x ∈ F_q^×` as an element of `Z/3`, relative to the fixed generator.
pub fn cube_class(f: &Field, x: u32) -> u8 {
    (f.log(x) % 3) as u8
}

/// Label of a regular unipotent element of `SL3(F_q)`.
pub fn reg_unip_label(f: &Field, u: &Mat3) -> Result<u8> {
    if !u.is_regular_unipotent() {
        return Err(Error::Domain("not a regular unipotent element".into()));
    }
    if u.det() != 1 {
        return Err(Error::Domain("determinant is not one".into()));
    }
    let n = u.sub_identity();
    let q = f.q();
    for x in 0..q {
        for y in 0..q {
            for z in 0..q {
                let v = [x, y, z];
                let nv = n.apply(v);
                let n2v = n.apply(nv);
                let d = Mat3::from_columns(q, [n2v, nv, v]).det();
                if d != 0 {
                    return Ok(cube_class(f, d));
                }
            }
        }
    }
    unreachable!("a regular nilpotent has a cyclic vector")
}

/// `u_ℓ`: superdiagonal `(g^ℓ, 1)` for the fixed generator `g`.
pub fn canonical(f: &Field, label: u8) -> Mat3 {
    Mat3::unitriangular(f.q(), f.exp(label as i64), 1, 0)
}

/// Label of `u_ℓ^{-1}`, measured on the matrix.
pub fn label_of_inverse(f: &Field, label: u8) -> u8 {
    let u = canonical(f, label);
    reg_unip_label(f, &u.inv(f).expect("unipotent")).expect("inverse of regular unipotent")
}

/// Label of `diag(1,1,c) u_ℓ diag(1,1,c)^{-1}`.
pub fn label_twist(f: &Field, label: u8, c: u32) -> Result<u8> {
    if c % f.q() == 0 {
        return Err(Error::Domain("twist by zero".into()));
    }
    let q = f.q();
    let d = Mat3::diag(q, 1, 1, c);
    let di = Mat3::diag(q, 1, 1, f.inv(c));
    reg_unip_label(f, &canonical(f, label).conj_by(&d, &di))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PacketFamily {
    /// `χ_{st'}(j)`, the principal family.
    StPrime,
    /// `χ_{r²s'}(j)`, the cuspidal family.
    R2SPrime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PacketChar {
    pub family: PacketFamily,
    pub j: u8,
}

/// `qδ_{ℓj} - (q-1)/3` at the regular unipotent class with label `ℓ`.
pub fn eval_reg(q: u32, chi: &PacketChar, label: u8) -> Cyc {
    let q = q as i64;
    let delta = if chi.j % 3 == label % 3 { 1 } else { 0 };
    Cyc::from_int(1, q * delta - (q - 1) / 3)
}

pub fn degree(q: u32, family: PacketFamily) -> Result<i64> {
    let q = q as i64;
    let total = match family {
        PacketFamily::StPrime => (q + 1) * (q * q + q + 1),
        PacketFamily::R2SPrime => (q - 1) * (q - 1) * (q + 1),
    };
    if total % 3 != 0 {
        return Err(Error::Domain("degree is not divisible by 3".into()));
    }
    Ok(total / 3)
}

/// `Ind_B^{SL3}(ζ^{-1} ⊗ 1 ⊗ ζ)` at `u`, by summing over the flags fixed by `u`.
///
/// Returns the value and the number of flags visited.
pub fn induced_value(f: &Field, u: &Mat3) -> (Cyc, usize) {
    let q = f.q();
    let zeta_exp = (q as i64 - 1) / 3;
    let lines = projective_points(q);
    let mut value = Cyc::zero(3);
    let mut flags = 0;
    for v1 in &lines {
        for w in &lines {
            // plane span(v1, w), enumerated once per plane through v1
            if !is_independent(q, v1, w) || !plane_rep_is_min(f, v1, w, &lines) {
                continue;
            }
            let v3 = complement(q, v1, w);
            let mut g = Mat3::from_columns(q, [*v1, *w, v3]);
            let d = g.det();
            let s = f.inv(d);
            g = Mat3::from_columns(q, [*v1, *w, v3.map(|x| (x as u64 * s as u64 % q as u64) as u32)]);
            flags += 1;
            let gi = g.inv(f).expect("basis");
            let b = gi.mul(u).mul(&g);
            if b.entry(1, 0) == 0 && b.entry(2, 0) == 0 && b.entry(2, 1) == 0 {
                let e = -(f.log(b.entry(0, 0)) as i64) + f.log(b.entry(2, 2)) as i64;
                value = value + Cyc::root_of_unity(q - 1, e * zeta_exp);
            }
        }
    }
    (value, flags)
}

fn projective_points(q: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for x in 0..q {
        for y in 0..q {
            out.push([1, x, y]);
        }
    }
    for y in 0..q {
        out.push([0, 1, y]);
    }
    out.push([0, 0, 1]);
    out
}

fn is_independent(q: u32, a: &[u32; 3], b: &[u32; 3]) -> bool {
    let c = cross(q, a, b);
    c.iter().any(|&x| x != 0)
}

fn cross(q: u32, a: &[u32; 3], b: &[u32; 3]) -> [u32; 3] {
    let q = q as i64;
    let (a, b) = (a.map(|x| x as i64), b.map(|x| x as i64));
    [
        (a[1] * b[2] - a[2] * b[1]).rem_euclid(q) as u32,
        (a[2] * b[0] - a[0] * b[2]).rem_euclid(q) as u32,
        (a[0] * b[1] - a[1] * b[0]).rem_euclid(q) as u32,
    ]
}

/// `w` is the least projective point, other than `v1`, of the plane `span(v1, w)`.
fn plane_rep_is_min(f: &Field, v1: &[u32; 3], w: &[u32; 3], lines: &[[u32; 3]]) -> bool {
    let q = f.q();
    let normal = cross(q, v1, w);
    let first = lines
        .iter()
        .find(|p| {
            *p != v1 && {
                let s: u64 = (0..3).map(|k| p[k] as u64 * normal[k] as u64).sum();
                s % q as u64 == 0
            }
        })
        .expect("a plane has q + 1 points");
    first == w
}

fn complement(q: u32, a: &[u32; 3], b: &[u32; 3]) -> [u32; 3] {
    for e in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
        let m = Mat3::from_columns(q, [*a, *b, e]);
        if m.det() != 0 {
            return e;
        }
    }
    unreachable!("two independent vectors extend to a basis")
}

/// Orbit of `u` under `SL3`-conjugation, by breadth-first search over elementary generators.
pub fn sl3_orbit(f: &Field, u: &Mat3) -> HashSet<Mat3> {
    let q = f.q();
    let gens: Vec<(Mat3, Mat3)> = [(0, 1), (1, 0), (1, 2), (2, 1)]
        .iter()
        .map(|&(i, j)| {
            let g = Mat3::elementary(q, i, j);
            (g, g.inv(f).expect("unipotent"))
        })
        .collect();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(*u);
    queue.push_back(*u);
    while let Some(x) = queue.pop_front() {
        for (g, gi) in &gens {
            for y in [x.conj_by(g, gi), x.conj_by(gi, g)] {
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
    }
    seen
}

pub fn sl3_order(q: u32) -> u64 {
    let q = q as u64;
    q.pow(3) * (q * q - 1) * (q.pow(3) - 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct FusionReport {
    pub q: u32,
    pub orbit_size: usize,
    pub expected_orbit_size: u64,
    /// Labels met inside the `SL3`-orbit of `u_0`.
    pub labels_in_orbit: Vec<u8>,
    /// Label reached by `diag(1,1,c)`-conjugation of `u_0`, per cube class of `c`.
    pub twist_of_u0: Vec<(u32, u8)>,
    pub twist_is_cyclic: bool,
    pub cubes_fix_labels: bool,
    /// Labels of the superdiagonal examples `(1,1)`, `(3,1)`, `(1,3)`.
    pub examples: Vec<((u32, u32), u8)>,
    pub sl3_distinct: bool,
    pub gl3_fused: bool,
}

impl FusionReport {
    pub fn passed(&self) -> bool {
        self.orbit_size as u64 == self.expected_orbit_size
            && self.sl3_distinct
            && self.gl3_fused
            && self.twist_is_cyclic
            && self.cubes_fix_labels
    }
}

pub fn pgl3_fusion(f: &Field) -> Result<FusionReport> {
    let q = f.q();
    check_q(q)?;
    let u0 = canonical(f, 0);
    let orbit = sl3_orbit(f, &u0);
    let mut labels: Vec<u8> = orbit.iter().map(|u| reg_unip_label(f, u)).collect::<Result<Vec<_>>>()?;
    labels.sort_unstable();
    labels.dedup();
    let centralizer = 3 * (q as u64).pow(2);
    let g = f.generator();
    let twist_of_u0: Vec<(u32, u8)> = (0..3)
        .map(|k| {
            let c = f.exp(k);
            Ok((c, label_twist(f, 0, c)?))
        })
        .collect::<Result<_>>()?;
    let mut twisted: Vec<u8> = twist_of_u0.iter().map(|t| t.1).collect();
    twisted.sort_unstable();
    let twist_is_cyclic = twisted == [0, 1, 2] && (0..3).all(|l| label_twist(f, l, g).ok() == Some((l + 1) % 3));
    let cubes_fix_labels = (1..q)
        .filter(|&c| cube_class(f, c) == 0)
        .all(|c| (0..3).all(|l| label_twist(f, l, c).ok() == Some(l)));
    let examples = [(1, 1), (3, 1), (1, 3)]
        .iter()
        .map(|&(a, b)| Ok(((a, b), reg_unip_label(f, &Mat3::unitriangular(q, a, b, 0))?)))
        .collect::<Result<_>>()?;
    Ok(FusionReport {
        q,
        orbit_size: orbit.len(),
        expected_orbit_size: sl3_order(q) / centralizer,
        sl3_distinct: labels == [0],
        gl3_fused: twisted == [0, 1, 2],
        labels_in_orbit: labels,
        twist_of_u0,
        twist_is_cyclic,
        cubes_fix_labels,
        examples,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleResult {
    pub j: [u8; 3],
    /// `(j1, j2, ι(j3))` with `ι` the measured label action of duality.
    pub effective: [u8; 3],
    pub values: [Cyc; 3],
    pub constant: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleScan {
    pub q: u32,
    pub inverse_label_map: [u8; 3],
    pub triples: Vec<TripleResult>,
    pub passing: usize,
    /// The passing triples are exactly those whose effective labels are `{0, 1, 2}`.
    pub passed: bool,
}

/// Sum `χ_{st'}(j1) + χ_{r²s'}(j2) + χ_{r²s'}(j3)^∨` on `u_0, u_1, u_2` for every triple.
pub fn triple_scan(f: &Field) -> Result<TripleScan> {
    let q = f.q();
    check_q(q)?;
    let inv = [label_of_inverse(f, 0), label_of_inverse(f, 1), label_of_inverse(f, 2)];
    let mut triples = Vec::new();
    for j1 in 0..3u8 {
        for j2 in 0..3u8 {
            for j3 in 0..3u8 {
                // χ^∨(u_ℓ) = χ(u_ℓ^{-1}), so the dual of component j3 peaks where ι(ℓ) = j3
                let values = [0u8, 1, 2].map(|l| {
                    eval_reg(q, &PacketChar { family: PacketFamily::StPrime, j: j1 }, l)
                        + eval_reg(q, &PacketChar { family: PacketFamily::R2SPrime, j: j2 }, l)
                        + eval_reg(q, &PacketChar { family: PacketFamily::R2SPrime, j: j3 }, inv[l as usize])
                });
                let e3 = (0..3u8).find(|&l| inv[l as usize] == j3).expect("duality permutes labels");
                let constant = values[1] == values[0] && values[2] == values[0];
                triples.push(TripleResult {
                    j: [j1, j2, j3],
                    effective: [j1, j2, e3],
                    values,
                    constant,
                });
            }
        }
    }
    let passing = triples.iter().filter(|t| t.constant).count();
    let passed = triples.iter().all(|t| {
        let mut e = t.effective;
        e.sort_unstable();
        t.constant == (e == [0, 1, 2])
    });
    Ok(TripleScan {
        q,
        inverse_label_map: inv,
        triples,
        passing,
        passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelReport {
    pub q: u32,
    pub inverse_label_map: [u8; 3],
    pub degrees: [(PacketFamily, i64); 2],
    /// `Σ_j eval_reg(j, ℓ)` per label.
    pub component_sums: [Cyc; 3],
    /// The induced character at `u_ℓ`, per label.
    pub induced_at_regular: [Cyc; 3],
    pub induced_degree: Cyc,
    pub flags: usize,
    pub passed: bool,
}

pub fn label_report(f: &Field) -> Result<LabelReport> {
    let q = f.q();
    check_q(q)?;
    let st = degree(q, PacketFamily::StPrime)?;
    let r2 = degree(q, PacketFamily::R2SPrime)?;
    let component_sums = [0u8, 1, 2].map(|l| {
        (0..3u8).fold(Cyc::zero(1), |acc, j| {
            acc + eval_reg(q, &PacketChar { family: PacketFamily::StPrime, j }, l)
        })
    });
    let induced_at_regular = [0u8, 1, 2].map(|l| induced_value(f, &canonical(f, l)).0);
    let (induced_degree, flags) = induced_value(f, &Mat3::identity(q));
    let passed = component_sums == induced_at_regular && induced_degree == Cyc::from_int(1, 3 * st);
    Ok(LabelReport {
        q,
        inverse_label_map: [label_of_inverse(f, 0), label_of_inverse(f, 1), label_of_inverse(f, 2)],
        degrees: [(PacketFamily::StPrime, st), (PacketFamily::R2SPrime, r2)],
        component_sums,
        induced_at_regular,
        induced_degree,
        flags,
        passed,
    })
}
