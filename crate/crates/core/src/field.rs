//! Explicit finite fields `F_{p^d} = F_p[x]/(m)`.
//!
//! The modulus `m` is the lexicographically least monic irreducible
//! polynomial of degree `d`, coefficients compared from the constant term
//! up, so every field (and everything labelled by its elements) is
//! reproducible. Elements are numbered by reading their coefficient vector
//! as little-endian base-`p` digits: `0 -> 0`, `1 -> 1`, `x -> p`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Deterministic primality test by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

/// `(p, f)` with `q = p^f`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut f = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        f += 1;
    }
    Some((p, f))
}

/// Smallest primitive root modulo the prime `p`.
pub fn smallest_primitive_root(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Ok(1);
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&c| factors.iter().all(|&l| pow_mod(c, (p - 1) / l, p) != 1))
        .ok_or_else(|| Error::InvalidArgument(format!("no primitive root mod {p}")))
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// An element of a [`FiniteField`]: `d` coefficients, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// Field descriptor as embedded in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub d: u32,
    /// Monic modulus, constant term first (length `d + 1`).
    pub modulus: Vec<u64>,
    /// Encoding of the canonical primitive element.
    pub primitive_element: u64,
}

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u64,
    d: usize,
    /// Monic, constant term first, length `d + 1`.
    modulus: Vec<u64>,
    size: u64,
}

impl FiniteField {
    /// `F_{p^d}` with the lexicographically least irreducible modulus.
    pub fn new(p: u64, d: u32) -> Result<FiniteField> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if d == 0 {
            return Err(Error::InvalidArgument("field degree must be positive".into()));
        }
        let d = d as usize;
        let size = p
            .checked_pow(d as u32)
            .filter(|&s| s <= 1 << 24)
            .ok_or_else(|| Error::InvalidArgument(format!("field {p}^{d} is too large")))?;
        // Enumerate lower coefficients with c_0 most significant.
        let count = size;
        for k in 0..count {
            let mut lower = vec![0u64; d];
            let mut r = k;
            for i in (0..d).rev() {
                lower[i] = r % p;
                r /= p;
            }
            let mut m = lower;
            m.push(1);
            if is_irreducible(&m, p) {
                return Ok(FiniteField {
                    p,
                    d,
                    modulus: m,
                    size,
                });
            }
        }
        Err(Error::InvalidArgument(format!(
            "no irreducible polynomial of degree {d} over F_{p}"
        )))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.d as u32
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.d],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// The element with little-endian base-`p` encoding `index`.
    pub fn element(&self, index: u64) -> FieldElement {
        assert!(index < self.size, "element index out of range");
        let mut coeffs = vec![0u64; self.d];
        let mut r = index;
        for c in coeffs.iter_mut() {
            *c = r % self.p;
            r /= self.p;
        }
        FieldElement { coeffs }
    }

    pub fn from_coefficients(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() != self.d || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients below {}",
                self.d, self.p
            )));
        }
        Ok(FieldElement {
            coeffs: coeffs.to_vec(),
        })
    }

    pub fn index(&self, v: &FieldElement) -> u64 {
        v.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.size).map(|i| self.element(i))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| (x + y) % self.p)
                .collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let prod = poly_mul(&a.coeffs, &b.coeffs, self.p);
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(self.d, 0);
        FieldElement { coeffs: r }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.size - 2))
    }

    /// `v^(p^e)`, the `e`-th power of the Frobenius automorphism.
    pub fn frobenius_power(&self, v: &FieldElement, e: u32) -> FieldElement {
        (0..e).fold(v.clone(), |acc, _| self.pow(&acc, self.p))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, v: &FieldElement) -> Result<u64> {
        if v.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut order = self.size - 1;
        for l in prime_factors(self.size - 1) {
            while order % l == 0 && self.pow(v, order / l) == self.one() {
                order /= l;
            }
        }
        Ok(order)
    }

    /// First element in encoding order whose multiplicative order is `p^d - 1`.
    pub fn primitive_element(&self) -> FieldElement {
        let n = self.size - 1;
        let factors = prime_factors(n);
        let one = self.one();
        (1..self.size)
            .map(|i| self.element(i))
            .find(|v| factors.iter().all(|&l| self.pow(v, n / l) != one))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            d: self.d as u32,
            modulus: self.modulus.clone(),
            primitive_element: self.index(&self.primitive_element()),
        }
    }
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero polynomial `m`.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let m = trim(m.to_vec());
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = pow_mod(m[dm], p - 2, p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p - c * mi % p) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &b, p), m, p);
        }
        b = poly_rem(&poly_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

/// Irreducibility of a monic polynomial over `F_p`: root search for degree
/// at most 3, otherwise `gcd(x^(p^i) - x, m) = 1` for `i <= d/2`.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let d = m.len() - 1;
    if d == 1 {
        return true;
    }
    if d <= 3 {
        return (0..p).all(|x| {
            let v = m.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p);
            v != 0
        });
    }
    let x = vec![0u64, 1];
    let mut h = x.clone();
    for _ in 0..d / 2 {
        h = poly_powmod(&h, p, m, p);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd(&diff, m, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_prime_powers() {
        assert!(is_prime(2) && is_prime(59) && !is_prime(1) && !is_prime(91));
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(smallest_primitive_root(11).unwrap(), 2);
        assert_eq!(smallest_primitive_root(7).unwrap(), 3);
        assert!(smallest_primitive_root(9).is_err());
    }

    #[test]
    fn moduli() {
        assert_eq!(FiniteField::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FiniteField::new(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(FiniteField::new(7, 2).unwrap().modulus(), &[1, 0, 1]);
        // x^2 + 1 splits mod 5 (2^2 = -1); x^2 + x + 1 has discriminant -3 = 2, a non-square
        assert_eq!(FiniteField::new(5, 2).unwrap().modulus(), &[1, 1, 1]);
        assert!(matches!(FiniteField::new(4, 1), Err(Error::NotPrime(4))));
    }

    #[test]
    fn higher_degree_irreducibility_agrees_with_root_free_products() {
        // over F_2, degree 4, low coefficients first: x^4+x^3+1 precedes x^4+x+1
        assert_eq!(FiniteField::new(2, 4).unwrap().modulus(), &[1, 0, 0, 1, 1]);
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2));
        // x^4+x^2+1 = (x^2+x+1)^2 has no roots but is reducible
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
    }

    #[test]
    fn f9_arithmetic() {
        let f = FiniteField::new(3, 2).unwrap();
        let x = f.element(3);
        assert_eq!(x.coefficients(), &[0, 1]);
        assert_eq!(f.mul(&x, &x), f.element(2));
        assert_eq!(f.inv(&f.one()).unwrap(), f.one());
        assert!(matches!(f.inv(&f.zero()), Err(Error::DivisionByZero)));
        assert_eq!(f.frobenius_power(&x, 1), f.element(6));
        assert_eq!(f.multiplicative_order(&x).unwrap(), 4);
        let prim = f.primitive_element();
        assert_eq!(f.index(&prim), 4);
        assert_eq!(f.multiplicative_order(&prim).unwrap(), 8);
    }

    #[test]
    fn prime_field_primitive() {
        let f = FiniteField::new(3, 1).unwrap();
        assert_eq!(f.index(&f.primitive_element()), 2);
    }
}
