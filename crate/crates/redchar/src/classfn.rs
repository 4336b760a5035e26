//! Exact class functions on `SO4(F_q)`: inner products, induction, invariants,
//! and an independent Dixon–Schneider character table for any small finite group.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::ops::{Add, Neg, Sub};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classes::{brute_force_classes, So4};
use crate::cyclo::Cyc;
use crate::groups::{enumerate, find_generators, So4Elem, So4Index, SubgroupId};
use crate::{budget_secs, Error, Rat, Result};

/// A function on the conjugacy classes of `SO4(F_q)`, indexed like [`So4::classes`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub q: u32,
    pub values: Vec<Cyc>,
}

impl ClassFunction {
    pub fn from_fn(g: &So4, mut f: impl FnMut(usize) -> Cyc) -> ClassFunction {
        ClassFunction {
            q: g.q(),
            values: (0..g.num_classes()).map(&mut f).collect(),
        }
    }

    pub fn constant(g: &So4, v: i64) -> ClassFunction {
        ClassFunction::from_fn(g, |_| Cyc::from_int(1, v))
    }

    pub fn zero(g: &So4) -> ClassFunction {
        ClassFunction::constant(g, 0)
    }

    pub fn value(&self, class: usize) -> &Cyc {
        &self.values[class]
    }

    pub fn degree(&self, g: &So4) -> Cyc {
        self.values[g.identity_class()].clone()
    }

    pub fn scale(&self, r: &Rat) -> ClassFunction {
        ClassFunction {
            q: self.q,
            values: self.values.iter().map(|v| v.scale(r)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> ClassFunction {
        self.scale(&Rat::from_integer(BigInt::from(k)))
    }

    pub fn mul(&self, o: &ClassFunction) -> ClassFunction {
        assert_eq!(self.q, o.q);
        ClassFunction {
            q: self.q,
            values: self.values.iter().zip(&o.values).map(|(a, b)| a * b).collect(),
        }
    }

    pub fn conj(&self) -> ClassFunction {
        ClassFunction {
            q: self.q,
            values: self.values.iter().map(Cyc::conj).collect(),
        }
    }
}

impl Add for &ClassFunction {
    type Output = ClassFunction;
    fn add(self, o: &ClassFunction) -> ClassFunction {
        assert_eq!(self.q, o.q, "class functions of different groups");
        ClassFunction {
            q: self.q,
            values: self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ClassFunction {
    type Output = ClassFunction;
    fn sub(self, o: &ClassFunction) -> ClassFunction {
        assert_eq!(self.q, o.q, "class functions of different groups");
        ClassFunction {
            q: self.q,
            values: self.values.iter().zip(&o.values).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &ClassFunction {
    type Output = ClassFunction;
    fn neg(self) -> ClassFunction {
        ClassFunction {
            q: self.q,
            values: self.values.iter().map(|v| -v).collect(),
        }
    }
}

fn check_group(g: &So4, f: &ClassFunction) -> Result<()> {
    if f.q != g.q() || f.values.len() != g.num_classes() {
        return Err(Error::Domain(format!(
            "class function of SO4(F_{}) used with SO4(F_{})",
            f.q,
            g.q()
        )));
    }
    Ok(())
}

/// `⟨a, b⟩ = |G|⁻¹ Σ_C |C| a(C) conj(b(C))`.
pub fn inner_product(g: &So4, a: &ClassFunction, b: &ClassFunction) -> Result<Cyc> {
    check_group(g, a)?;
    check_group(g, b)?;
    let n = g.cyc_order();
    let mut acc = Cyc::zero(n);
    for i in 0..g.num_classes() {
        if a.values[i].is_zero() || b.values[i].is_zero() {
            continue;
        }
        let term = (&a.values[i] * &b.values[i].conj()).lift(n).scale_int(g.size(i) as i64);
        acc = acc + term;
    }
    Ok(acc.scale(&Rat::new(BigInt::one(), BigInt::from(g.order()))))
}

/// Integer multiplicity `⟨a, b⟩`, or `None` when the pairing is not an integer.
pub fn multiplicity(g: &So4, a: &ClassFunction, b: &ClassFunction) -> Result<Option<i64>> {
    Ok(inner_product(g, a, b)?.to_i64())
}

/// Number of elements of `H` in each class of `G`.
pub fn subgroup_histogram(g: &So4, h: SubgroupId) -> Vec<u64> {
    let mut hist = vec![0u64; g.num_classes()];
    for x in h.elements(g.q()) {
        hist[g.class_index(&x)] += 1;
    }
    hist
}

/// `⟨Res_H χ, 1_H⟩`; the flag is false when the value is not a nonnegative integer.
pub fn invariants_dim(g: &So4, chi: &ClassFunction, h: SubgroupId) -> Result<(Cyc, bool)> {
    check_group(g, chi)?;
    let hist = subgroup_histogram(g, h);
    let n = g.cyc_order();
    let mut acc = Cyc::zero(n);
    for (i, &c) in hist.iter().enumerate() {
        if c > 0 {
            acc = acc + chi.values[i].lift(n).scale_int(c as i64);
        }
    }
    let v = acc.scale(&Rat::new(BigInt::one(), BigInt::from(h.order(g.q()))));
    let ok = v.to_i64().is_some_and(|x| x >= 0);
    Ok((v, ok))
}

/// Induces a class function of `H`, given by its values on elements, to `SO4(F_q)`.
///
/// The input is first tested for conjugation invariance under random elements of `H`.
pub fn induce(g: &So4, h: SubgroupId, f: &dyn Fn(&So4Elem) -> Cyc) -> Result<ClassFunction> {
    let q = g.q();
    let elems = h.elements(q);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..32 {
        let x = elems[rng.gen_range(0..elems.len())];
        for _ in 0..2 {
            let y = elems[rng.gen_range(0..elems.len())];
            if f(&x.conj_by(&y)) != f(&x) {
                return Err(Error::Domain(format!("input is not a class function on {h:?}: witness {x}, {y}")));
            }
        }
    }
    let n = g.cyc_order();
    let mut sums: Vec<Cyc> = vec![Cyc::zero(n); g.num_classes()];
    let mut cache: HashMap<usize, Vec<(So4Elem, usize)>> = HashMap::new();
    for x in &elems {
        let c = g.class_index(x);
        cache.entry(c).or_default().push((*x, c));
    }
    for (c, xs) in cache {
        let mut acc = Cyc::zero(n);
        for (x, _) in xs {
            acc = acc + f(&x).lift(n);
        }
        sums[c] = acc;
    }
    let hord = h.order(q);
    let gord = g.order();
    Ok(ClassFunction::from_fn(g, |c| {
        let r = Rat::new(BigInt::from(gord), BigInt::from(hord) * BigInt::from(g.size(c)));
        sums[c].scale(&r)
    }))
}

/// Character `χ_{k1}(a_1) χ_{k2}(a_2) χ_{k3}(b_1) χ_{k4}(b_2)` of the Borel subgroup, through its torus.
/// The exponents must sum to zero modulo `q-1`.
pub fn borel_character(g: &So4, k: [i64; 4]) -> Result<impl Fn(&So4Elem) -> Cyc + '_> {
    let m = g.q() as i64 - 1;
    if k.iter().sum::<i64>().rem_euclid(m) != 0 {
        return Err(Error::Domain("torus character is not trivial on scalars".into()));
    }
    let f = &g.field;
    Ok(move |x: &So4Elem| {
        let (a, b) = (x.g(), x.h());
        let ds = [a.entry(0), a.entry(3), b.entry(0), b.entry(3)];
        let e: i64 = ds.iter().zip(&k).map(|(&d, &kk)| kk * f.log(d) as i64).sum();
        Cyc::root_of_unity(f.q() - 1, e)
    })
}

/// `Ind_𝔹^{SO4}` of a torus character.
pub fn induce_from_borel(g: &So4, k: [i64; 4]) -> Result<ClassFunction> {
    let ch = borel_character(g, k)?;
    induce(g, SubgroupId::Borel, &ch)
}

/// Torus coordinates `(k, l)` of a Borel element: with `a_1 = 1`, the logs of `b_1` and `b_2`.
pub fn borel_torus_coords(g: &So4, x: &So4Elem) -> (u32, u32) {
    let f = &g.field;
    let (a, b) = (x.g(), x.h());
    let s = f.inv(a.entry(0));
    (f.log(f.mul(s, b.entry(0))), f.log(f.mul(s, b.entry(3))))
}

/// Characters of `𝔹/N ≅ 𝕋` in `(k, l)` coordinates, `(b_1, b_2) ↦ ζ^{k log b_1 + l log b_2}`,
/// with their multiplicity in the `N`-invariants of `χ`.
pub fn n_invariants(g: &So4, chi: &ClassFunction) -> Result<Vec<((u32, u32), i64)>> {
    check_group(g, chi)?;
    let q = g.q();
    let m = q - 1;
    let mut hist: BTreeMap<(usize, u32, u32), u64> = BTreeMap::new();
    for x in SubgroupId::Borel.elements(q) {
        let (k, l) = borel_torus_coords(g, &x);
        *hist.entry((g.class_index(&x), k, l)).or_default() += 1;
    }
    let border = SubgroupId::Borel.order(q);
    let n = g.cyc_order();
    let mut out = Vec::new();
    for lk in 0..m {
        for ll in 0..m {
            let mut acc = Cyc::zero(n);
            for (&(c, k, l), &cnt) in &hist {
                if chi.values[c].is_zero() {
                    continue;
                }
                let lam = Cyc::root_of_unity(m, -((lk * k + ll * l) as i64));
                acc = acc + (&chi.values[c] * &lam).lift(n).scale_int(cnt as i64);
            }
            let v = acc.scale(&Rat::new(BigInt::one(), BigInt::from(border)));
            let mult = v
                .to_i64()
                .ok_or_else(|| Error::Domain(format!("non-integral N-invariant multiplicity {v}")))?;
            if mult != 0 {
                out.push(((lk, ll), mult));
            }
        }
    }
    Ok(out)
}

/// A torus character given as a `(χ_1, χ_2, φ_1, φ_2)` tuple with `χ_1χ_2 = φ_1φ_2`, the value at
/// `(diag(a_1,a_2), diag(b_1,b_2))` being `χ_1(a_1)χ_2(a_2)φ_1(b_1)⁻¹φ_2(b_2)⁻¹`, in `(k, l)` coordinates.
pub fn paired_tuple_coords(q: u32, t: [i64; 4]) -> (u32, u32) {
    let m = q as i64 - 1;
    let k = [t[0], t[1], -t[2], -t[3]];
    ((k[1] + k[2]).rem_euclid(m) as u32, (k[1] + k[3]).rem_euclid(m) as u32)
}

// ---------------------------------------------------------------------------
// Dixon–Schneider

/// A finite group small enough to enumerate.
pub trait FiniteGroup {
    type Elem: Copy + Eq + Hash;
    fn elements(&self) -> &[Self::Elem];
    /// Position of `e` in [`FiniteGroup::elements`].
    fn index(&self, e: &Self::Elem) -> usize;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn identity(&self) -> Self::Elem;
    fn generators(&self) -> Vec<Self::Elem>;
}

/// Conjugacy classes of a [`FiniteGroup`].
#[derive(Clone, Debug)]
pub struct ClassPartition {
    pub class_of: Vec<u32>,
    /// Element index of the first member of each class in enumeration order.
    pub reps: Vec<usize>,
    pub sizes: Vec<u64>,
}

/// Conjugation orbits by BFS over the generators.
pub fn conjugacy_classes<G: FiniteGroup>(grp: &G) -> ClassPartition {
    let elems = grp.elements();
    let gens = grp.generators();
    let invs: Vec<G::Elem> = gens.iter().map(|s| grp.inv(s)).collect();
    let mut class_of = vec![u32::MAX; elems.len()];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    for i in 0..elems.len() {
        if class_of[i] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        class_of[i] = c;
        reps.push(i);
        let mut size = 1;
        let mut stack = vec![elems[i]];
        while let Some(x) = stack.pop() {
            for (s, si) in gens.iter().zip(&invs) {
                let y = grp.mul(&grp.mul(s, &x), si);
                let j = grp.index(&y);
                if class_of[j] == u32::MAX {
                    class_of[j] = c;
                    size += 1;
                    stack.push(y);
                }
            }
        }
        sizes.push(size);
    }
    ClassPartition { class_of, reps, sizes }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn primitive_root(p: u64) -> u64 {
    let fs = prime_factors(p - 1);
    (2..p).find(|&g| fs.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1)).expect("prime has a primitive root")
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Characteristic polynomial (monic, low degree first) by reduction to Hessenberg form.
fn charpoly_mod(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a.to_vec();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let tinv = inv_mod(h[m][m - 1], p);
        for i in m + 1..n {
            let u = h[i][m - 1] * tinv % p;
            if u == 0 {
                continue;
            }
            let hm = h[m].clone();
            for (x, y) in h[i].iter_mut().zip(&hm) {
                *x = (*x + p - u * y % p) % p;
            }
            for row in h.iter_mut() {
                row[m] = (row[m] + u * row[i]) % p;
            }
        }
    }
    // p_k for the leading k×k block, 1-indexed recurrence
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let mut next = vec![0u64; k + 1];
        let prev = &polys[k - 1];
        let hkk = h[k - 1][k - 1];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = (next[d] + p - c * hkk % p) % p;
        }
        let mut prod = 1u64;
        for i in (1..k).rev() {
            prod = prod * h[i][i - 1] % p;
            let coef = h[i - 1][k - 1] * prod % p;
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i - 1].iter().enumerate() {
                next[d] = (next[d] + p - coef * c % p) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().expect("nonempty")
}

/// Basis of the null space of `a` (rows × cols) modulo `p`.
fn nullspace_mod(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m = a.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(i) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(i, r);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let u = m[i][c];
                let mr = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&mr) {
                    *x = (*x + p - u * y % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[ri][fc]) % p;
            }
            v
        })
        .collect()
}

/// Column-echelon basis with pivot rows, so the restriction of a matrix is a row selection.
struct Subspace {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn from_vectors(vs: Vec<Vec<u64>>, p: u64) -> Subspace {
        let mut basis: Vec<Vec<u64>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for mut v in vs {
            for (b, &pv) in basis.iter().zip(&pivots) {
                let u = v[pv];
                if u != 0 {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x = (*x + p - u * y % p) % p;
                    }
                }
            }
            let Some(pv) = v.iter().position(|&x| x != 0) else {
                continue;
            };
            let inv = inv_mod(v[pv], p);
            for x in v.iter_mut() {
                *x = *x * inv % p;
            }
            for b in basis.iter_mut() {
                let u = b[pv];
                if u != 0 {
                    for (x, y) in b.iter_mut().zip(&v) {
                        *x = (*x + p - u * y % p) % p;
                    }
                }
            }
            basis.push(v);
            pivots.push(pv);
        }
        Subspace { basis, pivots }
    }
}

/// Irreducible characters computed by the Dixon–Schneider method.
#[derive(Clone, Debug)]
pub struct DixonTable {
    pub prime: u64,
    pub exponent: u64,
    /// `chars[χ][class]`.
    pub chars: Vec<Vec<Cyc>>,
    pub degrees: Vec<i64>,
}

/// Complete character table of `grp` from its class-multiplication coefficients.
pub fn dixon_schneider<G: FiniteGroup>(grp: &G, part: &ClassPartition) -> Result<DixonTable> {
    let start = Instant::now();
    let budget = budget_secs();
    let elems = grp.elements();
    let order = elems.len() as u64;
    let n = part.reps.len();
    let reps: Vec<G::Elem> = part.reps.iter().map(|&i| elems[i]).collect();
    let id = grp.identity();
    let elem_order = |x: &G::Elem| -> u64 {
        let mut y = *x;
        let mut k = 1;
        while y != id {
            y = grp.mul(&y, x);
            k += 1;
        }
        k
    };
    let orders: Vec<u64> = reps.iter().map(elem_order).collect();
    let exponent = orders.iter().fold(1u64, |a, &b| a / gcd(a, b) * b);
    let bound = 2.0 * (order as f64).sqrt();
    let mut p = exponent + 1;
    while !(is_prime(p) && p as f64 > bound) {
        p += exponent;
    }
    // c[i][j][k] = #{x ∈ C_i : x⁻¹ z_k ∈ C_j}
    let mut c = vec![0u64; n * n * n];
    for (k, z) in reps.iter().enumerate() {
        if start.elapsed().as_secs() > budget {
            return Err(Error::Budget("class constants exceeded the time budget".into()));
        }
        for (xi, x) in elems.iter().enumerate() {
            let y = grp.mul(&grp.inv(x), z);
            let i = part.class_of[xi] as usize;
            let j = part.class_of[grp.index(&y)] as usize;
            c[(i * n + j) * n + k] += 1;
        }
    }
    let id_class = part.class_of[grp.index(&id)] as usize;
    let mut spaces = vec![Subspace::from_vectors(
        (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect(),
        p,
    )];
    let mut order_by_size: Vec<usize> = (0..n).collect();
    order_by_size.sort_by_key(|&i| std::cmp::Reverse(part.sizes[i]));
    for &i in &order_by_size {
        if spaces.iter().all(|s| s.basis.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for sp in spaces {
            let d = sp.basis.len();
            if d == 1 {
                next.push(sp);
                continue;
            }
            // A = (M_i B) restricted to pivot rows
            let mut a = vec![vec![0u64; d]; d];
            for (col, b) in sp.basis.iter().enumerate() {
                for (row, &pr) in sp.pivots.iter().enumerate() {
                    let mut s = 0u64;
                    for k in 0..n {
                        if b[k] != 0 {
                            s = (s + c[(i * n + pr) * n + k] % p * b[k]) % p;
                        }
                    }
                    a[row][col] = s;
                }
            }
            let cp = charpoly_mod(&a, p);
            let mut found = 0;
            for lam in 0..p {
                let val = cp.iter().rev().fold(0u64, |acc, &co| (acc * lam + co) % p);
                if val != 0 {
                    continue;
                }
                let shifted: Vec<Vec<u64>> = a
                    .iter()
                    .enumerate()
                    .map(|(r, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(cc, &v)| if r == cc { (v + p - lam) % p } else { v })
                            .collect()
                    })
                    .collect();
                let ns = nullspace_mod(&shifted, p);
                found += ns.len();
                let vecs: Vec<Vec<u64>> = ns
                    .iter()
                    .map(|coef| {
                        let mut v = vec![0u64; n];
                        for (b, &cf) in sp.basis.iter().zip(coef) {
                            for (x, y) in v.iter_mut().zip(b) {
                                *x = (*x + cf * y) % p;
                            }
                        }
                        v
                    })
                    .collect();
                next.push(Subspace::from_vectors(vecs, p));
            }
            if found != d {
                return Err(Error::Domain(format!("class matrix did not split over F_{p}")));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.basis.len() != 1) {
        return Err(Error::Domain("class algebra eigenspaces did not separate".into()));
    }
    let inv_class: Vec<usize> = reps
        .iter()
        .map(|x| part.class_of[grp.index(&grp.inv(x))] as usize)
        .collect();
    let z = pow_mod(primitive_root(p), (p - 1) / exponent, p);
    let mut chars = Vec::new();
    let mut degrees = Vec::new();
    for sp in &spaces {
        let v = &sp.basis[0];
        let s0 = v[id_class];
        let w: Vec<u64> = v.iter().map(|&x| x * inv_mod(s0, p) % p).collect();
        let mut s = 0u64;
        for k in 0..n {
            s = (s + w[k] * w[inv_class[k]] % p * inv_mod(part.sizes[k] % p, p)) % p;
        }
        let d2 = order % p * inv_mod(s, p) % p;
        let deg = (1..=((order as f64).sqrt() as u64 + 1))
            .find(|d| d * d % p == d2)
            .ok_or_else(|| Error::Domain("no degree matches the class algebra data".into()))?;
        let vals: Vec<u64> = (0..n)
            .map(|k| w[k] * deg % p * inv_mod(part.sizes[k] % p, p) % p)
            .collect();
        let mut row = Vec::with_capacity(n);
        for (k, x) in reps.iter().enumerate() {
            let o = orders[k];
            let zo = pow_mod(z, exponent / o, p);
            let mut pw = id;
            let mut powvals = Vec::with_capacity(o as usize);
            for _ in 0..o {
                powvals.push(vals[part.class_of[grp.index(&pw)] as usize]);
                pw = grp.mul(&pw, x);
            }
            let oinv = inv_mod(o, p);
            let mut counts = vec![0i64; o as usize];
            for (l, cnt) in counts.iter_mut().enumerate() {
                let mut acc = 0u64;
                for (j, &pv) in powvals.iter().enumerate() {
                    let e = (o - (l as u64 * j as u64) % o) % o;
                    acc = (acc + pv * pow_mod(zo, e, p)) % p;
                }
                let m = acc * oinv % p;
                if m > deg {
                    return Err(Error::Domain(format!("eigenvalue multiplicity {m} exceeds degree {deg}")));
                }
                *cnt = m as i64;
            }
            row.push(Cyc::from_exponent_counts(o as u32, &counts));
        }
        chars.push(row);
        degrees.push(deg as i64);
    }
    let mut idx: Vec<usize> = (0..chars.len()).collect();
    idx.sort_by_key(|&i| degrees[i]);
    Ok(DixonTable {
        prime: p,
        exponent,
        chars: idx.iter().map(|&i| chars[i].clone()).collect(),
        degrees: idx.iter().map(|&i| degrees[i]).collect(),
    })
}

/// `SO4(F_q)` as an enumerated [`FiniteGroup`].
pub struct So4Group {
    q: u32,
    elems: Vec<So4Elem>,
    index: So4Index,
    gens: Vec<So4Elem>,
}

impl So4Group {
    pub fn new(q: u32, seed: u64) -> So4Group {
        So4Group {
            q,
            elems: enumerate(q),
            index: So4Index::new(q),
            gens: find_generators(q, seed),
        }
    }
}

impl FiniteGroup for So4Group {
    type Elem = So4Elem;
    fn elements(&self) -> &[So4Elem] {
        &self.elems
    }
    fn index(&self, e: &So4Elem) -> usize {
        self.index.index(e)
    }
    fn mul(&self, a: &So4Elem, b: &So4Elem) -> So4Elem {
        a.mul(b)
    }
    fn inv(&self, a: &So4Elem) -> So4Elem {
        a.inv()
    }
    fn identity(&self) -> So4Elem {
        So4Elem::identity(self.q)
    }
    fn generators(&self) -> Vec<So4Elem> {
        self.gens.clone()
    }
}

/// The oracle table transported to the symbolic class order.
#[derive(Clone, Debug)]
pub struct OracleTable {
    pub chars: Vec<ClassFunction>,
    pub degrees: Vec<i64>,
    pub prime: u64,
}

/// Independent character table of `SO4(F_q)`; refuses `q > 5` unless a budget is set explicitly.
pub fn brute_force_irreducibles(g: &So4, seed: u64) -> Result<OracleTable> {
    let q = g.q();
    if q > 5 && std::env::var("REDCHAR_BUDGET_SECS").is_err() {
        return Err(Error::Budget(format!("Dixon-Schneider at q = {q} exceeds the default budget")));
    }
    let orc = brute_force_classes(&g.field, seed)?;
    let grp = So4Group::new(q, seed);
    let mut sizes = vec![0u64; orc.rows.len()];
    let mut reps = vec![usize::MAX; orc.rows.len()];
    for (i, &c) in orc.class_of.iter().enumerate() {
        sizes[c as usize] += 1;
        if reps[c as usize] == usize::MAX {
            reps[c as usize] = i;
        }
    }
    let part = ClassPartition {
        class_of: orc.class_of.clone(),
        reps,
        sizes,
    };
    let dt = dixon_schneider(&grp, &part)?;
    let map: Vec<usize> = part.reps.iter().map(|&i| g.class_index(&grp.elems[i])).collect();
    let mut inverse = vec![usize::MAX; g.num_classes()];
    for (oc, &sc) in map.iter().enumerate() {
        inverse[sc] = oc;
    }
    if inverse.contains(&usize::MAX) {
        return Err(Error::Domain("oracle classes do not cover the symbolic classes".into()));
    }
    let chars = dt
        .chars
        .iter()
        .map(|row| ClassFunction {
            q,
            values: inverse.iter().map(|&oc| row[oc].clone()).collect(),
        })
        .collect();
    Ok(OracleTable {
        chars,
        degrees: dt.degrees,
        prime: dt.prime,
    })
}

/// Rational-valued summary of a class function for reports: exact strings per class label.
#[derive(Clone, Debug, Serialize)]
pub struct ValueRow {
    pub class: String,
    pub value: Cyc,
}

pub fn value_rows(g: &So4, f: &ClassFunction) -> Vec<ValueRow> {
    (0..g.num_classes())
        .map(|i| ValueRow {
            class: g.display_label(i),
            value: f.values[i].clone(),
        })
        .collect()
}

/// Whether every value is a rational integer.
pub fn is_integral(f: &ClassFunction) -> bool {
    f.values.iter().all(|v| v.to_rat().is_some_and(|r| r.is_integer()))
}
