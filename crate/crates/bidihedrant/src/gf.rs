//! Arithmetic in GF(p^e), p^e ≤ 2^16.
//!
//! Elements are represented as integers encoding polynomials over F_p in a
//! fixed generator: the value Σ c_i p^i stands for Σ c_i x^i modulo the
//! canonical modulus.  The canonical modulus is the lexicographically least
//! primitive monic polynomial of degree e (compared coefficient-by-
//! coefficient from the constant term upward via the integer encoding), so
//! every run of every tool agrees on the labels of field elements.

use crate::error::{Error, Result};

pub const MAX_FIELD_SIZE: u64 = 1 << 16;

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u64,
    e: u32,
    size: u64,
    /// Coefficients of the canonical primitive modulus, constant term
    /// first, length e+1, leading coefficient 1.
    modulus: Vec<u64>,
    /// exp[i] = g^i where g is the residue of x; length size-1.
    exp: Vec<u64>,
    /// log[a] for a in 1..size; log[0] unused.
    log: Vec<u64>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FiniteField {
    /// The field GF(p^e) with the canonical primitive modulus.
    pub fn new(p: u64, e: u32) -> Result<FiniteField> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::Precondition("extension degree must be >= 1".into()));
        }
        let size = p
            .checked_pow(e)
            .filter(|&s| s <= MAX_FIELD_SIZE)
            .ok_or(Error::DegreeBudget(MAX_FIELD_SIZE))?;
        let modulus = canonical_primitive_modulus(p, e);
        // Build exp/log tables by repeated multiplication by x.
        let n = size - 1;
        let mut exp = Vec::with_capacity(n as usize);
        let mut log = vec![0u64; size as usize];
        let mut cur = 1u64; // the element 1
        for i in 0..n {
            exp.push(cur);
            log[cur as usize] = i;
            cur = mul_by_x(cur, p, e, &modulus);
        }
        debug_assert_eq!(cur, 1);
        Ok(FiniteField {
            p,
            e,
            size,
            modulus,
            exp,
            log,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Number of elements p^e.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// A fixed primitive element: the residue of x for e > 1, and the least
    /// primitive root mod p for e = 1 (both equal exp[1]).
    pub fn generator(&self) -> u64 {
        if self.size == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    /// Elements in canonical order 0, 1, g, g^2, …, g^(q-2).
    pub fn elements_in_log_order(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.size as usize);
        out.push(0);
        out.extend_from_slice(&self.exp);
        out
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.size && b < self.size);
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += (a % self.p + b % self.p) % self.p * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += (self.p - a % self.p) % self.p * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.size - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % n) as usize]
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::Singular);
        }
        let n = self.size - 1;
        Ok(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u64, k: u64) -> u64 {
        if a == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        let n = self.size - 1;
        self.exp[((self.log[a as usize] as u128 * k as u128) % n as u128) as usize]
    }

    /// Discrete log base the generator; errors on 0.
    pub fn dlog(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::Singular);
        }
        Ok(self.log[a as usize])
    }

    /// g^k for the canonical generator g.
    pub fn from_dlog(&self, k: u64) -> u64 {
        self.exp[(k % (self.size - 1)) as usize]
    }

    /// Frobenius x ↦ x^p.
    pub fn frobenius(&self, a: u64) -> u64 {
        self.pow(a, self.p)
    }

    /// Multiplicative order of a non-zero element.
    pub fn mult_order(&self, a: u64) -> Result<u64> {
        let n = self.size - 1;
        let k = self.dlog(a)?;
        Ok(n / gcd(n, k))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Multiply the encoded polynomial by x and reduce by the modulus.
fn mul_by_x(a: u64, p: u64, e: u32, modulus: &[u64]) -> u64 {
    let mut coeffs = to_coeffs(a, p, e);
    coeffs.insert(0, 0);
    let lead = coeffs.pop().unwrap();
    if lead != 0 {
        // x^e ≡ -(m_0 + m_1 x + … + m_{e-1} x^{e-1})
        for (c, &m) in coeffs.iter_mut().zip(modulus.iter()) {
            *c = (*c + (p - m % p) * lead) % p;
        }
    }
    from_coeffs(&coeffs, p)
}

fn to_coeffs(mut a: u64, p: u64, e: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(e as usize);
    for _ in 0..e {
        out.push(a % p);
        a /= p;
    }
    out
}

fn from_coeffs(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Lexicographically least primitive monic polynomial of degree e over F_p,
/// returned as coefficients constant-term-first (length e+1, last entry 1).
/// "Lexicographically least" means smallest integer encoding Σ c_i p^i of
/// the non-leading coefficients.
pub fn canonical_primitive_modulus(p: u64, e: u32) -> Vec<u64> {
    let size = p.pow(e);
    if e == 1 {
        // x - g for the least primitive root g mod p; for p = 2, x + 1.
        let g = (1..p)
            .find(|&g| mult_order_mod_p(g, p) == p - 1)
            .expect("primitive root exists");
        return vec![(p - g) % p, 1];
    }
    for enc in 0..size {
        let mut coeffs = to_coeffs(enc, p, e);
        coeffs.push(1);
        if is_primitive_poly(&coeffs, p, e, size) {
            return coeffs;
        }
    }
    unreachable!("a primitive polynomial of degree {e} over F_{p} exists");
}

fn mult_order_mod_p(g: u64, p: u64) -> u64 {
    let mut x = g;
    let mut k = 1;
    while x != 1 {
        x = x * g % p;
        k += 1;
    }
    k
}

/// The residue of x modulo `coeffs` has multiplicative order p^e - 1.
/// (Order p^e - 1 forces irreducibility, so no separate test is needed.)
fn is_primitive_poly(coeffs: &[u64], p: u64, e: u32, size: u64) -> bool {
    if coeffs[0] == 0 {
        return false; // divisible by x
    }
    let modulus = &coeffs[..e as usize];
    let n = size - 1;
    let mut cur = 1u64;
    for i in 1..=n {
        cur = mul_by_x(cur, p, e, modulus);
        if cur == 1 {
            return i == n;
        }
        if cur == 0 {
            return false;
        }
    }
    false
}
