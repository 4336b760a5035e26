//! Prime fields `F_q`, their quadratic extensions `F_{q²} = F_q[δ]` with `δ² = Δ`,
//! discrete logarithms, and multiplicative characters.

use serde::Serialize;

use crate::cyclo::Cyc;
use crate::Error;

/// An element `a + bδ` of `F_{q²}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fq2Elem {
    pub a: u32,
    pub b: u32,
}

impl Fq2Elem {
    pub const fn new(a: u32, b: u32) -> Self {
        Fq2Elem { a, b }
    }
}

/// Cyclic groups that carry characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CharDomain {
    /// `F_q^×`, order `q-1`, generated by the least primitive root.
    Fq,
    /// `F_{q²}^×`, order `q²-1`.
    Fq2,
    /// The norm-one subgroup `F_{q²}^1`, order `q+1`.
    NormOne,
}

/// A multiplicative character `g^j ↦ ζ_m^{k j}` for the fixed generator `g` of its domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultChar {
    pub domain: CharDomain,
    pub exponent: u32,
}

/// Lookup tables for `F_q` and `F_{q²}`; `q` must be an odd prime.
#[derive(Clone, Debug)]
pub struct Field {
    q: u32,
    g0: u32,
    delta: u32,
    log: Vec<u32>,
    exp: Vec<u32>,
    gen2: Fq2Elem,
    log2: Vec<u32>,
    exp2: Vec<Fq2Elem>,
}

pub fn is_odd_prime(q: u32) -> bool {
    q > 2 && q % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

impl Field {
    pub fn new(q: u32) -> Result<Field, Error> {
        if !is_odd_prime(q) {
            return Err(Error::Usage(format!("q = {q} is not an odd prime")));
        }
        let order = q - 1;
        let g0 = (2..q)
            .find(|&g| {
                let mut x = 1u64;
                (1..order).all(|_| {
                    x = x * g as u64 % q as u64;
                    x != 1
                })
            })
            .unwrap_or(1);
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut x = 1u32;
        for j in 0..order {
            exp.push(x);
            log[x as usize] = j;
            x = (x as u64 * g0 as u64 % q as u64) as u32;
        }
        let delta = (2..q).find(|&x| log[x as usize] % 2 == 1).unwrap_or(2);
        let mut f = Field {
            q,
            g0,
            delta,
            log,
            exp,
            gen2: Fq2Elem::new(0, 0),
            log2: Vec::new(),
            exp2: Vec::new(),
        };
        // generator of F_{q²}^× whose norm is g0, least in (b, a) order
        let n2 = q * q - 1;
        let mut gen2 = None;
        'search: for b in 1..q {
            for a in 0..q {
                let z = Fq2Elem::new(a, b);
                if f.norm(z) != g0 {
                    continue;
                }
                let mut w = z;
                let mut ord = 1;
                while w != Fq2Elem::new(1, 0) {
                    w = f.mul2(w, z);
                    ord += 1;
                }
                if ord == n2 {
                    gen2 = Some(z);
                    break 'search;
                }
            }
        }
        let gen2 = gen2.expect("primitive element of norm g0 exists");
        let mut log2 = vec![u32::MAX; (q * q) as usize];
        let mut exp2 = Vec::with_capacity(n2 as usize);
        let mut w = Fq2Elem::new(1, 0);
        for j in 0..n2 {
            exp2.push(w);
            log2[(w.a * q + w.b) as usize] = j;
            w = f.mul2(w, gen2);
        }
        f.gen2 = gen2;
        f.log2 = log2;
        f.exp2 = exp2;
        Ok(f)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// The least primitive root mod `q`.
    pub fn generator(&self) -> u32 {
        self.g0
    }

    /// The least quadratic non-residue `Δ`.
    pub fn nonsquare(&self) -> u32 {
        self.delta
    }

    /// Generator of `F_{q²}^×` with norm equal to [`Field::generator`].
    pub fn generator2(&self) -> Fq2Elem {
        self.gen2
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        (x % self.q + y % self.q) % self.q
    }

    pub fn sub(&self, x: u32, y: u32) -> u32 {
        (x % self.q + self.q - y % self.q) % self.q
    }

    pub fn neg(&self, x: u32) -> u32 {
        (self.q - x % self.q) % self.q
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        (x as u64 * y as u64 % self.q as u64) as u32
    }

    pub fn inv(&self, x: u32) -> u32 {
        assert!(x % self.q != 0, "inverse of zero in F_{}", self.q);
        let l = self.log[(x % self.q) as usize];
        self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]
    }

    pub fn pow(&self, x: u32, e: i64) -> u32 {
        if x % self.q == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let l = self.log[(x % self.q) as usize] as i64;
        self.exp[(l * e).rem_euclid(self.q as i64 - 1) as usize]
    }

    /// Discrete logarithm base [`Field::generator`]; `x` must be nonzero.
    pub fn log(&self, x: u32) -> u32 {
        let l = self.log[(x % self.q) as usize];
        assert!(l != u32::MAX, "log of zero");
        l
    }

    pub fn exp(&self, j: i64) -> u32 {
        self.exp[j.rem_euclid(self.q as i64 - 1) as usize]
    }

    /// Quadratic character `ε`; rejects zero.
    pub fn legendre(&self, x: u32) -> Result<i32, Error> {
        if x % self.q == 0 {
            return Err(Error::Domain("legendre symbol of 0".into()));
        }
        Ok(if self.log(x) % 2 == 0 { 1 } else { -1 })
    }

    /// `ε` on a nonzero element, panicking on zero.
    pub fn eps(&self, x: u32) -> i32 {
        if self.log(x) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_square(&self, x: u32) -> bool {
        self.eps(x) == 1
    }

    /// Signed residue in `(-q/2, q/2)`, used for display.
    pub fn signed(&self, x: u32) -> i64 {
        let x = x % self.q;
        if x > self.q / 2 {
            x as i64 - self.q as i64
        } else {
            x as i64
        }
    }

    pub fn from_i64(&self, x: i64) -> u32 {
        x.rem_euclid(self.q as i64) as u32
    }

    // F_{q²}

    pub fn mul2(&self, x: Fq2Elem, y: Fq2Elem) -> Fq2Elem {
        let q = self.q as u64;
        let (a, b, c, d) = (x.a as u64, x.b as u64, y.a as u64, y.b as u64);
        Fq2Elem::new(
            ((a * c + self.delta as u64 * (b * d % q)) % q) as u32,
            ((a * d + b * c) % q) as u32,
        )
    }

    pub fn frobenius(&self, z: Fq2Elem) -> Fq2Elem {
        Fq2Elem::new(z.a, self.neg(z.b))
    }

    pub fn norm(&self, z: Fq2Elem) -> u32 {
        let q = self.q as u64;
        let (a, b) = (z.a as u64, z.b as u64);
        ((a * a % q + q * q - self.delta as u64 * (b * b % q)) % q) as u32
    }

    pub fn trace(&self, z: Fq2Elem) -> u32 {
        (2 * z.a) % self.q
    }

    pub fn embed(&self, x: u32) -> Fq2Elem {
        Fq2Elem::new(x % self.q, 0)
    }

    pub fn log2(&self, z: Fq2Elem) -> u32 {
        let l = self.log2[(z.a * self.q + z.b) as usize];
        assert!(l != u32::MAX, "log of zero in F_q²");
        l
    }

    pub fn exp2(&self, j: i64) -> Fq2Elem {
        self.exp2[j.rem_euclid((self.q * self.q - 1) as i64) as usize]
    }

    pub fn pow2(&self, z: Fq2Elem, e: i64) -> Fq2Elem {
        self.exp2(self.log2(z) as i64 * e)
    }

    pub fn inv2(&self, z: Fq2Elem) -> Fq2Elem {
        self.pow2(z, -1)
    }

    pub fn scale2(&self, x: u32, z: Fq2Elem) -> Fq2Elem {
        Fq2Elem::new(self.mul(x, z.a), self.mul(x, z.b))
    }

    /// Elements of `F_{q²}^1`, listed as powers of `g^{q-1}`.
    pub fn norm_one(&self) -> Vec<Fq2Elem> {
        (0..=self.q).map(|j| self.exp2(j as i64 * (self.q as i64 - 1))).collect()
    }

    /// Discrete log inside `F_{q²}^1` with respect to `g^{q-1}`.
    pub fn log_norm_one(&self, z: Fq2Elem) -> Result<u32, Error> {
        if self.norm(z) != 1 {
            return Err(Error::Domain(format!("{z:?} is not of norm one")));
        }
        Ok(self.log2(z) / (self.q - 1))
    }

    // characters

    pub fn domain_order(&self, d: CharDomain) -> u32 {
        match d {
            CharDomain::Fq => self.q - 1,
            CharDomain::Fq2 => self.q * self.q - 1,
            CharDomain::NormOne => self.q + 1,
        }
    }

    pub fn list_chars(&self, domain: CharDomain) -> Vec<MultChar> {
        (0..self.domain_order(domain))
            .map(|k| MultChar { domain, exponent: k })
            .collect()
    }

    /// The quadratic character `ε` of `F_q^×`.
    pub fn eps_char(&self) -> MultChar {
        MultChar {
            domain: CharDomain::Fq,
            exponent: (self.q - 1) / 2,
        }
    }

    /// The order-2 character `θ_0` of `F_{q²}^1`.
    pub fn theta0(&self) -> MultChar {
        MultChar {
            domain: CharDomain::NormOne,
            exponent: (self.q + 1) / 2,
        }
    }

    pub fn char_eval_fq(&self, chi: MultChar, x: u32) -> Result<Cyc, Error> {
        if chi.domain != CharDomain::Fq {
            return Err(Error::Domain("character is not defined on F_q^×".into()));
        }
        if x % self.q == 0 {
            return Err(Error::Domain("character evaluated at 0".into()));
        }
        let m = self.q - 1;
        Ok(Cyc::root_of_unity(m, chi.exponent as i64 * self.log(x) as i64))
    }

    pub fn char_eval_fq2(&self, chi: MultChar, z: Fq2Elem) -> Result<Cyc, Error> {
        if z == Fq2Elem::new(0, 0) {
            return Err(Error::Domain("character evaluated at 0".into()));
        }
        match chi.domain {
            CharDomain::Fq2 => Ok(Cyc::root_of_unity(
                self.q * self.q - 1,
                chi.exponent as i64 * self.log2(z) as i64,
            )),
            CharDomain::NormOne => {
                let l = self.log_norm_one(z)?;
                Ok(Cyc::root_of_unity(self.q + 1, chi.exponent as i64 * l as i64))
            }
            CharDomain::Fq => {
                if z.b != 0 {
                    return Err(Error::Domain("element outside F_q^×".into()));
                }
                self.char_eval_fq(chi, z.a)
            }
        }
    }

    /// Restriction of a character of `F_{q²}^×` to `F_q^×`.
    pub fn restrict_to_subgroup(&self, theta: MultChar) -> Result<MultChar, Error> {
        if theta.domain != CharDomain::Fq2 {
            return Err(Error::Domain("restriction needs a character of F_q²^×".into()));
        }
        // g0 = g^{q+1}, so θ(g0^j) = ζ_{q²-1}^{k(q+1)j} = ζ_{q-1}^{kj}
        Ok(MultChar {
            domain: CharDomain::Fq,
            exponent: theta.exponent % (self.q - 1),
        })
    }

    /// Restriction of a character of `F_{q²}^×` to `F_{q²}^1`.
    pub fn restrict_to_norm_one(&self, theta: MultChar) -> Result<MultChar, Error> {
        if theta.domain != CharDomain::Fq2 {
            return Err(Error::Domain("restriction needs a character of F_q²^×".into()));
        }
        Ok(MultChar {
            domain: CharDomain::NormOne,
            exponent: theta.exponent % (self.q + 1),
        })
    }

    pub fn frobenius_twist(&self, theta: MultChar) -> MultChar {
        match theta.domain {
            CharDomain::Fq => theta,
            CharDomain::Fq2 => MultChar {
                domain: CharDomain::Fq2,
                exponent: (theta.exponent as u64 * self.q as u64 % (self.q as u64 * self.q as u64 - 1)) as u32,
            },
            // z^q = z^{-1} on the norm-one group
            CharDomain::NormOne => MultChar {
                domain: CharDomain::NormOne,
                exponent: (self.q + 1 - theta.exponent) % (self.q + 1),
            },
        }
    }

    pub fn is_regular(&self, theta: MultChar) -> bool {
        self.frobenius_twist(theta) != theta
    }

    pub fn char_json(&self, chi: MultChar) -> serde_json::Value {
        serde_json::json!({
            "domain": chi.domain,
            "exponent": chi.exponent,
            "generator": match chi.domain {
                CharDomain::Fq => format!("{}", self.g0),
                _ => format!("{}+{}d", self.gen2.a, self.gen2.b),
            },
        })
    }
}
