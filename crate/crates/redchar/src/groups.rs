//! Matrices over `F_q` and the group `SO4(F_q) = GL_{2,2}(F_q)/F_q^×`.
//!
//! An [`So4Elem`] is the pair `(g, h)` with `det g = det h`, scaled so that the
//! first nonzero entry of `g` (row-major) is `1`, and packed four bits per entry.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::cyclo::legendre_symbol;
use crate::Error;

/// Largest `q` for which [`So4Elem`] packing is valid.
pub const MAX_Q: u32 = 13;

fn inv_mod(x: u32, q: u32) -> u32 {
    let x = x % q;
    (1..q).find(|y| x * y % q == 1).expect("inverse of zero")
}

/// A 2×2 matrix over `F_q`, entries row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    pub q: u8,
    pub e: [u8; 4],
}

impl Mat2 {
    pub fn new(q: u32, e: [u32; 4]) -> Mat2 {
        Mat2 {
            q: q as u8,
            e: e.map(|x| (x % q) as u8),
        }
    }

    pub fn from_i64(q: u32, e: [i64; 4]) -> Mat2 {
        Mat2::new(q, e.map(|x| x.rem_euclid(q as i64) as u32))
    }

    pub fn identity(q: u32) -> Mat2 {
        Mat2::new(q, [1, 0, 0, 1])
    }

    pub fn scalar(q: u32, x: u32) -> Mat2 {
        Mat2::new(q, [x, 0, 0, x])
    }

    pub fn diag(q: u32, x: u32, y: u32) -> Mat2 {
        Mat2::new(q, [x, 0, 0, y])
    }

    fn qq(&self) -> u32 {
        self.q as u32
    }

    pub fn entry(&self, i: usize) -> u32 {
        self.e[i] as u32
    }

    pub fn det(&self) -> u32 {
        let q = self.qq();
        let [a, b, c, d] = self.e.map(|x| x as u32);
        (a * d + q * q - b * c % q) % q
    }

    pub fn trace(&self) -> u32 {
        (self.e[0] as u32 + self.e[3] as u32) % self.qq()
    }

    pub fn is_invertible(&self) -> bool {
        self.det() != 0
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let q = self.qq();
        let [a, b, c, d] = self.e.map(|x| x as u32);
        let [e, f, g, h] = o.e.map(|x| x as u32);
        Mat2::new(q, [a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }

    pub fn scale(&self, x: u32) -> Mat2 {
        let q = self.qq();
        Mat2::new(q, self.e.map(|v| v as u32 * x))
    }

    pub fn inv(&self) -> Result<Mat2, Error> {
        let q = self.qq();
        let det = self.det();
        if det == 0 {
            return Err(Error::Domain("singular matrix".into()));
        }
        let di = inv_mod(det, q);
        let [a, b, c, d] = self.e.map(|x| x as u32);
        Ok(Mat2::new(q, [d * di, (q - b) * di, (q - c) * di, a * di]))
    }

    /// `s · self · s⁻¹`.
    pub fn conj_by(&self, s: &Mat2) -> Result<Mat2, Error> {
        Ok(s.mul(self).mul(&s.inv()?))
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.e[2] == 0
    }

    pub fn is_diagonal(&self) -> bool {
        self.e[1] == 0 && self.e[2] == 0
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.e;
        write!(f, "[[{},{}],[{},{}]]", e[0], e[1], e[2], e[3])
    }
}

/// All of `GL2(F_q)`, in lexicographic order of entries.
pub fn gl2_elements(q: u32) -> Vec<Mat2> {
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    let m = Mat2::new(q, [a, b, c, d]);
                    if m.is_invertible() {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// An element of `SO4(F_q)`, stored as its canonical representative pair.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct So4Elem {
    q: u8,
    packed: u32,
}

impl So4Elem {
    /// Builds `(g, h)` modulo scalars; requires `det g = det h ≠ 0`.
    pub fn new(g: Mat2, h: Mat2) -> Result<So4Elem, Error> {
        if g.q != h.q {
            return Err(Error::Domain("factors over different fields".into()));
        }
        if g.q as u32 > MAX_Q {
            return Err(Error::Usage(format!("q = {} exceeds the supported maximum {MAX_Q}", g.q)));
        }
        let dg = g.det();
        if dg == 0 || dg != h.det() {
            return Err(Error::Domain(format!("{g}x{h} is not in GL_2,2")));
        }
        Ok(So4Elem::canonical(g, h))
    }

    fn canonical(g: Mat2, h: Mat2) -> So4Elem {
        let q = g.q as u32;
        let lead = g.e.iter().copied().find(|&x| x != 0).unwrap_or(1) as u32;
        let (g, h) = if lead == 1 {
            (g, h)
        } else {
            let s = inv_mod(lead, q);
            (g.scale(s), h.scale(s))
        };
        let mut packed = 0u32;
        for (i, &v) in g.e.iter().chain(h.e.iter()).enumerate() {
            packed |= (v as u32) << (4 * i);
        }
        So4Elem { q: g.q, packed }
    }

    pub fn identity(q: u32) -> So4Elem {
        So4Elem::canonical(Mat2::identity(q), Mat2::identity(q))
    }

    pub fn q(&self) -> u32 {
        self.q as u32
    }

    /// The packed word; distinct elements of one `SO4(F_q)` have distinct keys.
    pub fn key(&self) -> u32 {
        self.packed
    }

    fn factor(&self, off: usize) -> Mat2 {
        let mut e = [0u8; 4];
        for (i, x) in e.iter_mut().enumerate() {
            *x = ((self.packed >> (4 * (off + i))) & 0xf) as u8;
        }
        Mat2 { q: self.q, e }
    }

    pub fn g(&self) -> Mat2 {
        self.factor(0)
    }

    pub fn h(&self) -> Mat2 {
        self.factor(4)
    }

    fn same_q(&self, o: &So4Elem) -> Result<(), Error> {
        if self.q != o.q {
            return Err(Error::Domain("elements of different groups".into()));
        }
        Ok(())
    }

    pub fn try_mul(&self, o: &So4Elem) -> Result<So4Elem, Error> {
        self.same_q(o)?;
        Ok(self.mul(o))
    }

    /// Product; both operands must come from the same `q`.
    pub fn mul(&self, o: &So4Elem) -> So4Elem {
        debug_assert_eq!(self.q, o.q);
        So4Elem::canonical(self.g().mul(&o.g()), self.h().mul(&o.h()))
    }

    pub fn inv(&self) -> So4Elem {
        So4Elem::canonical(
            self.g().inv().expect("group element"),
            self.h().inv().expect("group element"),
        )
    }

    /// `x · self · x⁻¹`.
    pub fn conj_by(&self, x: &So4Elem) -> So4Elem {
        x.mul(self).mul(&x.inv())
    }

    pub fn pow(&self, mut e: u64) -> So4Elem {
        let mut base = *self;
        let mut acc = So4Elem::identity(self.q());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == So4Elem::identity(self.q())
    }

    pub fn order(&self) -> u64 {
        let id = So4Elem::identity(self.q());
        let mut x = *self;
        let mut n = 1;
        while x != id {
            x = x.mul(self);
            n += 1;
        }
        n
    }

    /// `ε(det g)`: the square class of the determinant.
    pub fn widetilde_det(&self) -> i32 {
        legendre_symbol(self.g().det() as u64, self.q as u64) as i32
    }

    /// Conjugation by the adjoint group `PGL2 × PGL2`: `(s g s⁻¹, t h t⁻¹)`.
    pub fn adjoint_conj(&self, s: &Mat2, t: &Mat2) -> Result<So4Elem, Error> {
        let g = self.g().conj_by(s)?;
        let h = self.h().conj_by(t)?;
        So4Elem::new(g, h)
    }
}

impl fmt::Display for So4Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} mod scalars", self.g(), self.h())
    }
}

impl fmt::Debug for So4Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for So4Elem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `|SO4(F_q)| = q²(q-1)²(q+1)²`.
pub fn so4_order(q: u32) -> u64 {
    let q = q as u64;
    q * q * (q - 1) * (q - 1) * (q + 1) * (q + 1)
}

/// Standard subgroups of `SO4(F_q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgroupId {
    /// Pairs of upper triangular matrices.
    Borel,
    /// Pairs of diagonal matrices.
    Torus,
    /// Pairs of upper unitriangular matrices.
    Unipotent,
    /// `(GL2 × 𝔹)¹/F^×`.
    Parabolic,
    /// `(𝔹 × GL2)¹/F^×`.
    MirrorParabolic,
    /// `SL2 × SL2/±1`, the elements with square determinant.
    SplitSl2,
    /// The whole group.
    Whole,
}

impl SubgroupId {
    pub fn contains(&self, a: &So4Elem) -> bool {
        let (g, h) = (a.g(), a.h());
        match self {
            SubgroupId::Borel => g.is_upper_triangular() && h.is_upper_triangular(),
            SubgroupId::Torus => g.is_diagonal() && h.is_diagonal(),
            SubgroupId::Unipotent => {
                g.is_upper_triangular()
                    && h.is_upper_triangular()
                    && g.e[0] == g.e[3]
                    && h.e[0] == h.e[3]
                    && g.e[0] == h.e[0]
            }
            SubgroupId::Parabolic => h.is_upper_triangular(),
            SubgroupId::MirrorParabolic => g.is_upper_triangular(),
            SubgroupId::SplitSl2 => a.widetilde_det() == 1,
            SubgroupId::Whole => true,
        }
    }

    pub fn order(&self, q: u32) -> u64 {
        let q64 = q as u64;
        match self {
            SubgroupId::Borel => q64 * q64 * (q64 - 1) * (q64 - 1),
            SubgroupId::Torus => (q64 - 1) * (q64 - 1),
            SubgroupId::Unipotent => q64 * q64,
            SubgroupId::Parabolic | SubgroupId::MirrorParabolic => {
                q64 * q64 * (q64 - 1) * (q64 * q64 - 1)
            }
            SubgroupId::SplitSl2 => so4_order(q) / 2,
            SubgroupId::Whole => so4_order(q),
        }
    }

    /// Every element of the subgroup exactly once.
    pub fn elements(&self, q: u32) -> Vec<So4Elem> {
        let upper = |q: u32| -> Vec<Mat2> {
            gl2_elements(q).into_iter().filter(Mat2::is_upper_triangular).collect()
        };
        match self {
            SubgroupId::Whole => enumerate(q),
            SubgroupId::SplitSl2 => enumerate(q)
                .into_iter()
                .filter(|a| a.widetilde_det() == 1)
                .collect(),
            SubgroupId::Parabolic => pairs(q, &canonical_firsts(&gl2_elements(q)), &upper(q)),
            SubgroupId::MirrorParabolic => pairs(q, &canonical_firsts(&upper(q)), &gl2_elements(q)),
            SubgroupId::Borel => pairs(q, &canonical_firsts(&upper(q)), &upper(q)),
            SubgroupId::Torus => {
                let d: Vec<Mat2> = gl2_elements(q).into_iter().filter(Mat2::is_diagonal).collect();
                pairs(q, &canonical_firsts(&d), &d)
            }
            SubgroupId::Unipotent => {
                let mut out = Vec::new();
                for x in 0..q {
                    for y in 0..q {
                        out.push(So4Elem::canonical(
                            Mat2::new(q, [1, x, 0, 1]),
                            Mat2::new(q, [1, y, 0, 1]),
                        ));
                    }
                }
                out
            }
        }
    }
}

fn canonical_firsts(ms: &[Mat2]) -> Vec<Mat2> {
    ms.iter()
        .copied()
        .filter(|m| m.e.iter().copied().find(|&x| x != 0) == Some(1))
        .collect()
}

fn pairs(q: u32, firsts: &[Mat2], seconds: &[Mat2]) -> Vec<So4Elem> {
    let mut by_det: Vec<Vec<Mat2>> = vec![Vec::new(); q as usize];
    for m in seconds {
        by_det[m.det() as usize].push(*m);
    }
    let mut out = Vec::new();
    for g in firsts {
        for h in &by_det[g.det() as usize] {
            out.push(So4Elem::canonical(*g, *h));
        }
    }
    out
}

/// All elements of `SO4(F_q)`: canonical `g`, then every `h` with the same determinant.
pub fn enumerate(q: u32) -> Vec<So4Elem> {
    let all = gl2_elements(q);
    pairs(q, &canonical_firsts(&all), &all)
}

/// Dense index of the elements of `SO4(F_q)`, matching [`enumerate`] order.
#[derive(Clone, Debug)]
pub struct So4Index {
    q: u32,
    g_index: Vec<u32>,
    h_index: Vec<u32>,
    per_det: u32,
}

impl So4Index {
    pub fn new(q: u32) -> So4Index {
        let q4 = (q * q * q * q) as usize;
        let mut g_index = vec![u32::MAX; q4];
        let mut h_index = vec![u32::MAX; q4];
        let all = gl2_elements(q);
        let mut seen = vec![0u32; q as usize];
        for m in &all {
            let d = m.det() as usize;
            h_index[Self::slot(q, m)] = seen[d];
            seen[d] += 1;
        }
        for (i, m) in canonical_firsts(&all).iter().enumerate() {
            g_index[Self::slot(q, m)] = i as u32;
        }
        So4Index {
            q,
            g_index,
            h_index,
            per_det: q * (q * q - 1),
        }
    }

    fn slot(q: u32, m: &Mat2) -> usize {
        m.e.iter().fold(0usize, |acc, &x| acc * q as usize + x as usize)
    }

    pub fn index(&self, a: &So4Elem) -> usize {
        let gi = self.g_index[Self::slot(self.q, &a.g())];
        let hi = self.h_index[Self::slot(self.q, &a.h())];
        gi as usize * self.per_det as usize + hi as usize
    }
}

/// Closure of a generating set, as a set of packed keys.
pub fn generated_size(q: u32, gens: &[So4Elem]) -> usize {
    let id = So4Elem::identity(q);
    let mut seen = HashSet::from([id.key()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for s in gens {
            let y = x.mul(s);
            if seen.insert(y.key()) {
                frontier.push(y);
            }
        }
    }
    seen.len()
}

/// Seeded random search for a small generating set of `SO4(F_q)`.
pub fn find_generators(q: u32, seed: u64) -> Vec<So4Elem> {
    let elems = enumerate(q);
    let total = so4_order(q) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut gens: Vec<So4Elem> = Vec::new();
        for _ in 0..4 {
            gens.push(elems[rng.gen_range(0..elems.len())]);
            if gens.len() >= 2 && generated_size(q, &gens) == total {
                return gens;
            }
        }
    }
}
