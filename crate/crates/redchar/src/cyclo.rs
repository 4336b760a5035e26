//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! A [`Cyc`] stores an integer coefficient vector in the power basis
//! `1, ζ_N, …, ζ_N^{φ(N)-1}` of `Q[x]/(Φ_N)` together with one positive common
//! denominator. Values of different orders are lifted to the lcm before any
//! binary operation, so equality is always exact and coefficient-wise.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

/// Arbitrary precision rational number used for coefficients.
pub type Rat = BigRational;

/// Precomputed data for one cyclotomic order.
#[derive(Debug)]
struct Order {
    phi: usize,
    /// Coefficients of `Φ_N`, low degree first, monic of length `phi + 1`.
    poly: Vec<i64>,
    /// `x^j mod Φ_N` for `0 <= j < N`.
    powers: Vec<Vec<i64>>,
    small_poly: bool,
}

fn cache() -> &'static RwLock<HashMap<u32, Arc<Order>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Order>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn order_data(n: u32) -> Arc<Order> {
    if let Some(d) = cache().read().expect("cyclotomic cache poisoned").get(&n) {
        return d.clone();
    }
    let data = Arc::new(build_order(n));
    cache()
        .write()
        .expect("cyclotomic cache poisoned")
        .entry(n)
        .or_insert(data)
        .clone()
}

/// Exact division of integer polynomials (low degree first) by a monic divisor.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// The cyclotomic polynomial `Φ_n`, by dividing `x^n - 1` by `Φ_d` for proper divisors `d`.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    order_data(n).poly.clone()
}

fn build_poly(n: u32) -> Vec<i64> {
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let pd = order_data(d).poly.clone();
            p = poly_div_exact(&p, &pd);
        }
    }
    p
}

fn build_order(n: u32) -> Order {
    assert!(n >= 1, "cyclotomic order must be positive");
    let poly = build_poly(n);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce the overflow term
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] -= top * poly[i];
            }
        }
    }
    let small_poly = poly.iter().all(|c| c.abs() < 1 << 10);
    Order {
        phi,
        poly,
        powers,
        small_poly,
    }
}

/// Euler's totient of `n`.
pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn lcm(a: u32, b: u32) -> u32 {
    a / a.gcd(&b) * b
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone, Debug)]
pub struct Cyc {
    order: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyc {
    fn from_parts(order: u32, num: Vec<BigInt>, den: BigInt) -> Cyc {
        let mut c = Cyc { order, num, den };
        c.normalize();
        c
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in &mut self.num {
                *c = -c.clone();
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn zero(order: u32) -> Cyc {
        let phi = order_data(order).phi;
        Cyc {
            order,
            num: vec![BigInt::zero(); phi],
            den: BigInt::one(),
        }
    }

    pub fn one(order: u32) -> Cyc {
        Cyc::from_int(order, 1)
    }

    pub fn from_int(order: u32, v: i64) -> Cyc {
        let mut c = Cyc::zero(order);
        c.num[0] = BigInt::from(v);
        c
    }

    pub fn from_rat(order: u32, r: &Rat) -> Cyc {
        let mut c = Cyc::zero(order);
        c.num[0] = r.numer().clone();
        c.den = r.denom().clone();
        c.normalize();
        c
    }

    /// `ζ_n^k` reduced modulo `Φ_n`.
    pub fn root_of_unity(n: u32, k: i64) -> Cyc {
        let d = order_data(n);
        let e = k.rem_euclid(n as i64) as usize;
        Cyc {
            order: n,
            num: d.powers[e].iter().map(|&v| BigInt::from(v)).collect(),
            den: BigInt::one(),
        }
    }

    /// Builds `Σ c_k ζ_n^k` from integer multiplicities of exponents.
    pub fn from_exponent_counts(n: u32, counts: &[i64]) -> Cyc {
        let d = order_data(n);
        let mut acc = vec![0i64; d.phi];
        for (k, &c) in counts.iter().enumerate() {
            if c != 0 {
                for (a, &p) in acc.iter_mut().zip(&d.powers[k % n as usize]) {
                    *a += c * p;
                }
            }
        }
        Cyc::from_parts(n, acc.into_iter().map(BigInt::from).collect(), BigInt::one())
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients in the power basis as rationals.
    pub fn coeffs(&self) -> Vec<Rat> {
        self.num
            .iter()
            .map(|c| Rat::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// The rational value, if this element lies in `Q`.
    pub fn to_rat(&self) -> Option<Rat> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rat::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        let r = self.to_rat()?;
        if r.is_integer() {
            r.to_integer().to_i64()
        } else {
            None
        }
    }

    /// Re-expresses the value in `Q(ζ_m)`; `m` must be a multiple of the order.
    pub fn lift(&self, m: u32) -> Cyc {
        assert!(m % self.order == 0, "cannot lift order {} to {}", self.order, m);
        if m == self.order {
            return self.clone();
        }
        let k = (m / self.order) as usize;
        let d = order_data(m);
        let mut out = vec![BigInt::zero(); d.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&d.powers[(i * k) % m as usize]) {
                if p != 0 {
                    *o += c * p;
                }
            }
        }
        Cyc::from_parts(m, out, self.den.clone())
    }

    fn aligned(a: &Cyc, b: &Cyc) -> (Cyc, Cyc) {
        let m = lcm(a.order, b.order);
        (a.lift(m), b.lift(m))
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Cyc {
        let n = self.order;
        let d = order_data(n);
        let mut out = vec![0i64; d.phi];
        let mut big: Option<Vec<BigInt>> = None;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &d.powers[((n as usize) - i) % n as usize];
            match (c.to_i64(), big.as_mut()) {
                (Some(v), None) if v.abs() < 1 << 40 => {
                    for (o, &p) in out.iter_mut().zip(row) {
                        *o += v * p;
                    }
                }
                _ => {
                    let acc = big.get_or_insert_with(|| out.iter().map(|&v| BigInt::from(v)).collect());
                    for (o, &p) in acc.iter_mut().zip(row) {
                        if p != 0 {
                            *o += c * p;
                        }
                    }
                }
            }
        }
        let num = big.unwrap_or_else(|| out.into_iter().map(BigInt::from).collect());
        Cyc::from_parts(n, num, self.den.clone())
    }

    pub fn scale(&self, r: &Rat) -> Cyc {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Cyc::from_parts(self.order, num, &self.den * r.denom())
    }

    pub fn scale_int(&self, k: i64) -> Cyc {
        self.scale(&Rat::from_integer(BigInt::from(k)))
    }

    fn add_same(a: &Cyc, b: &Cyc, sign: i8) -> Cyc {
        if a.den == b.den {
            let num = a
                .num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| if sign > 0 { x + y } else { x - y })
                .collect();
            return Cyc::from_parts(a.order, num, a.den.clone());
        }
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| {
                let l = x * &b.den;
                let r = y * &a.den;
                if sign > 0 {
                    l + r
                } else {
                    l - r
                }
            })
            .collect();
        Cyc::from_parts(a.order, num, &a.den * &b.den)
    }

    fn mul_same(a: &Cyc, b: &Cyc) -> Cyc {
        if a.is_zero() || b.is_zero() {
            return Cyc::zero(a.order);
        }
        if let Some(r) = a.to_rat() {
            return b.scale(&r);
        }
        if let Some(r) = b.to_rat() {
            return a.scale(&r);
        }
        let d = order_data(a.order);
        let phi = d.phi;
        let den = &a.den * &b.den;
        if d.small_poly && phi <= 256 {
            let small = |v: &[BigInt]| -> Option<Vec<i128>> {
                v.iter()
                    .map(|c| c.to_i64().filter(|x| x.abs() < 1 << 40).map(|x| x as i128))
                    .collect()
            };
            if let (Some(x), Some(y)) = (small(&a.num), small(&b.num)) {
                let mut prod = vec![0i128; 2 * phi - 1];
                for (i, &xi) in x.iter().enumerate() {
                    if xi == 0 {
                        continue;
                    }
                    for (j, &yj) in y.iter().enumerate() {
                        prod[i + j] += xi * yj;
                    }
                }
                for k in (phi..2 * phi - 1).rev() {
                    let c = prod[k];
                    if c != 0 {
                        for i in 0..phi {
                            prod[k - phi + i] -= c * d.poly[i] as i128;
                        }
                    }
                }
                let num = prod[..phi].iter().map(|&v| BigInt::from(v)).collect();
                return Cyc::from_parts(a.order, num, den);
            }
        }
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        for k in (phi..2 * phi - 1).rev() {
            let c = std::mem::take(&mut prod[k]);
            if !c.is_zero() {
                for i in 0..phi {
                    if d.poly[i] != 0 {
                        prod[k - phi + i] -= &c * d.poly[i];
                    }
                }
            }
        }
        prod.truncate(phi);
        Cyc::from_parts(a.order, prod, den)
    }

    /// Floating point approximation `(re, im)`, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN) / den;
            let ang = 2.0 * std::f64::consts::PI * i as f64 / self.order as f64;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }
}

/// The Gauss sum `Σ_{x ∈ F_p^×} (x/p) ζ_p^x`, a square root of `(-1)^{(p-1)/2} p`.
pub fn gauss_sqrt_qstar(p: u32) -> Cyc {
    assert!(p > 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0), "p must be an odd prime");
    let mut counts = vec![0i64; p as usize];
    for x in 1..p {
        let ls = legendre_symbol(x as u64, p as u64);
        counts[x as usize] = ls;
    }
    Cyc::from_exponent_counts(p, &counts)
}

/// Legendre symbol by Euler's criterion; `x` must be nonzero mod `p`.
pub fn legendre_symbol(x: u64, p: u64) -> i64 {
    let mut r = 1u64;
    let mut b = x % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else if r == p - 1 {
        -1
    } else {
        0
    }
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Cyc) -> bool {
        if self.order == other.order {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Cyc::aligned(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for Cyc {}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Cyc> for &Cyc {
            type Output = Cyc;
            fn $m(self, rhs: &Cyc) -> Cyc {
                let f: fn(&Cyc, &Cyc) -> Cyc = $body;
                if self.order == rhs.order {
                    f(self, rhs)
                } else {
                    let (a, b) = Cyc::aligned(self, rhs);
                    f(&a, &b)
                }
            }
        }
        impl $tr<Cyc> for Cyc {
            type Output = Cyc;
            fn $m(self, rhs: Cyc) -> Cyc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Cyc> for Cyc {
            type Output = Cyc;
            fn $m(self, rhs: &Cyc) -> Cyc {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| Cyc::add_same(a, b, 1));
binop!(Sub, sub, |a, b| Cyc::add_same(a, b, -1));
binop!(Mul, mul, Cyc::mul_same);

impl Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        -&self
    }
}

impl fmt::Display for Cyc {
    /// GAP-like rendering, e.g. `1/2 + 1/2*E(12)^5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "E({})^{}", self.order, i)?,
                (_, false) => write!(f, "{a}*E({})^{}", self.order, i)?,
            }
        }
        Ok(())
    }
}

impl Serialize for Cyc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("order", &self.order)?;
        let coeffs: Vec<String> = self.coeffs().iter().map(|c| c.to_string()).collect();
        m.serialize_entry("coeffs", &coeffs)?;
        let (re, im) = self.to_complex();
        m.serialize_entry("approx", &[round12(re), round12(im)])?;
        m.end()
    }
}

fn round12(x: f64) -> f64 {
    let r = (x * 1e9).round() / 1e9;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}
