//! Arithmetic in GF(p^e).
//!
//! Elements are encoded as integers in `[0, q)` whose base-p digits are the
//! coefficients of the residue polynomial, least significant digit first.
//! This encoding is shared by every file format and report in the crate.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest field for which a default modulus is supplied.
pub const MAX_DEFAULT_ORDER: u32 = 512;
/// Largest field accepted at all, even with an explicit modulus.
pub const MAX_ORDER: u32 = 1 << 16;

/// An element of some GF(q), stored as its integer encoding.
///
/// A `Scalar` carries no reference to its field; validity is relative to the
/// [`FieldSpec`] that produced it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Scalar(u32);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);
    pub const ONE: Scalar = Scalar(1);

    /// Wraps a raw encoding without range checking. Use [`FieldSpec::elem`]
    /// for validated construction.
    #[inline]
    pub const fn from_rep(rep: u32) -> Scalar {
        Scalar(rep)
    }

    #[inline]
    pub const fn rep(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    /// exp[i] = g^i, doubled so that log a + log b never needs a reduction.
    exp: Vec<u32>,
    /// log[a] for a != 0; log[0] unused.
    log: Vec<u32>,
    /// Addition table for odd characteristic, row-major q x q.
    add: Option<Vec<u32>>,
}

struct FieldData {
    p: u32,
    e: u32,
    q: u32,
    /// Little-endian coefficients, length e + 1, last entry 1.
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

/// The finite field GF(p^e) with a fixed irreducible modulus.
///
/// Cheap to clone; all derived tables are shared and immutable.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldData>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}; modulus {:?})", self.0.q, self.0.modulus)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^e`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1 && is_prime(p)).then_some((p, e))
}

/// Default moduli pinned for reproducibility of downstream orderings.
fn pinned_modulus(p: u32, e: u32) -> Option<Vec<u32>> {
    match (p, e) {
        (2, 2) => Some(vec![1, 1, 1]),
        (2, 3) => Some(vec![1, 1, 0, 1]),
        (2, 4) => Some(vec![1, 1, 0, 0, 1]),
        (3, 2) => Some(vec![1, 0, 1]),
        _ => None,
    }
}

// ---- polynomial helpers over GF(p), little-endian coefficient vectors ----

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p - (lead * c) % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn digits(mut rep: u32, p: u32, len: usize) -> Vec<u32> {
    let mut d = Vec::with_capacity(len);
    for _ in 0..len {
        d.push(rep % p);
        rep /= p;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Trial division by every monic polynomial of degree `1..=e/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let e = m.len() - 1;
    for d in 1..=e / 2 {
        let count = (p as u64).pow(d as u32);
        for tail in 0..count {
            let mut f = digits(tail as u32, p, d);
            f.push(1);
            if poly_rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = p.pow(e);
    for tail in 0..count {
        let mut m = digits(tail, p, e as usize);
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldSpec {
    /// Builds GF(p^e). Without an explicit modulus a default is used for
    /// fields of order at most [`MAX_DEFAULT_ORDER`].
    pub fn new(p: u32, e: u32, modulus: Option<&[u32]>) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if e == 0 {
            return Err(Error::UnsupportedSize("extension degree must be at least 1".into()));
        }
        let q = (p as u64)
            .checked_pow(e)
            .filter(|&q| q <= MAX_ORDER as u64)
            .ok_or_else(|| Error::UnsupportedSize(format!("{p}^{e} exceeds {MAX_ORDER}")))?
            as u32;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 || m[e as usize] != 1 {
                    return Err(Error::InvalidModulus(
                        m.to_vec(),
                        format!("expected a monic polynomial of degree {e}"),
                    ));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus(m.to_vec(), format!("coefficients must be < {p}")));
                }
                if !is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus(m.to_vec(), p));
                }
                m.to_vec()
            }
            None => {
                if q > MAX_DEFAULT_ORDER {
                    return Err(Error::UnsupportedSize(format!(
                        "no default modulus for GF({q}); supply one explicitly"
                    )));
                }
                pinned_modulus(p, e).unwrap_or_else(|| smallest_irreducible(p, e))
            }
        };
        let mut data = FieldData { p, e, q, modulus, tables: None };
        if q <= MAX_DEFAULT_ORDER {
            data.tables = Some(build_tables(&data));
        }
        Ok(FieldSpec(Arc::new(data)))
    }

    /// Builds GF(q) from its order using the default modulus.
    pub fn with_order(q: u32) -> Result<FieldSpec> {
        let (p, e) = prime_power(q)
            .ok_or_else(|| Error::UnsupportedSize(format!("{q} is not a prime power")))?;
        FieldSpec::new(p, e, None)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.0.e
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn is_char2(&self) -> bool {
        self.0.p == 2
    }

    /// Validated element from its encoding.
    pub fn elem(&self, rep: u32) -> Result<Scalar> {
        if rep < self.0.q {
            Ok(Scalar(rep))
        } else {
            Err(Error::ElementOutOfRange { rep, q: self.0.q })
        }
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Scalar> + Clone {
        (0..self.0.q).map(Scalar)
    }

    /// Base-p digits of an element (its residue polynomial).
    pub fn to_poly(&self, a: Scalar) -> Vec<u32> {
        digits(a.0, self.0.p, self.0.e as usize)
    }

    pub fn from_poly(&self, coeffs: &[u32]) -> Result<Scalar> {
        if coeffs.len() > self.0.e as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(Error::Parse(format!("{coeffs:?} is not a reduced residue")));
        }
        Ok(Scalar(undigits(coeffs, self.0.p)))
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        let d = &*self.0;
        if d.p == 2 {
            return Scalar(a.0 ^ b.0);
        }
        if let Some(add) = d.tables.as_ref().and_then(|t| t.add.as_ref()) {
            return Scalar(add[(a.0 * d.q + b.0) as usize]);
        }
        Scalar(digitwise(a.0, b.0, d.p, |x, y| (x + y) % d.p))
    }

    #[inline]
    pub fn neg(&self, a: Scalar) -> Scalar {
        let d = &*self.0;
        if d.p == 2 {
            return a;
        }
        Scalar(digitwise(a.0, 0, d.p, |x, _| (d.p - x) % d.p))
    }

    #[inline]
    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        if self.0.p == 2 {
            Scalar(a.0 ^ b.0)
        } else {
            self.add(a, self.neg(b))
        }
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        if a.0 == 0 || b.0 == 0 {
            return Scalar::ZERO;
        }
        let d = &*self.0;
        match &d.tables {
            Some(t) => Scalar(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => Scalar(poly_mul_rep(d, a.0, b.0)),
        }
    }

    pub fn inv(&self, a: Scalar) -> Result<Scalar> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let d = &*self.0;
        Ok(match &d.tables {
            Some(t) => {
                let l = t.log[a.0 as usize];
                Scalar(t.exp[((d.q - 1 - l) % (d.q - 1)) as usize])
            }
            None => self.pow(a, (d.q - 2) as u64),
        })
    }

    pub fn div(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Scalar, mut k: u64) -> Scalar {
        let mut base = a;
        let mut acc = Scalar::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// The unique square root in characteristic 2, computed as `a^(q/2)`.
    pub fn sqrt_char2(&self, a: Scalar) -> Result<Scalar> {
        if self.0.p != 2 {
            return Err(Error::WrongCharacteristic(self.0.p));
        }
        Ok(self.pow(a, (self.0.q / 2) as u64))
    }

    /// Multiplication by polynomial reduction, bypassing the log tables.
    pub fn mul_poly(&self, a: Scalar, b: Scalar) -> Scalar {
        Scalar(poly_mul_rep(&self.0, a.0, b.0))
    }
}

fn digitwise(mut a: u32, mut b: u32, p: u32, f: impl Fn(u32, u32) -> u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    while a > 0 || b > 0 {
        out += f(a % p, b % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

fn poly_mul_rep(d: &FieldData, a: u32, b: u32) -> u32 {
    let e = d.e as usize;
    let prod = poly_mul(&digits(a, d.p, e), &digits(b, d.p, e), d.p);
    let mut r = poly_rem(&prod, &d.modulus, d.p);
    r.resize(e, 0);
    undigits(&r, d.p)
}

fn build_tables(d: &FieldData) -> Tables {
    let q = d.q;
    let order = q - 1;
    let mut exp = Vec::new();
    // Smallest primitive element by encoding.
    for g in 1..q {
        exp.clear();
        let mut x = 1u32;
        for _ in 0..order {
            exp.push(x);
            x = poly_mul_rep(d, x, g);
            if x == 1 {
                break;
            }
        }
        if exp.len() == order as usize {
            break;
        }
    }
    debug_assert_eq!(exp.len(), order as usize);
    let mut log = vec![0u32; q as usize];
    for (i, &x) in exp.iter().enumerate() {
        log[x as usize] = i as u32;
    }
    let doubled: Vec<u32> = exp.iter().chain(exp.iter()).copied().collect();
    let add = (d.p != 2).then(|| {
        let mut t = vec![0u32; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                t[(a * q + b) as usize] = digitwise(a, b, d.p, |x, y| (x + y) % d.p);
            }
        }
        t
    });
    Tables { exp: doubled, log, add }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> FieldSpec {
        FieldSpec::with_order(q).unwrap()
    }

    #[test]
    fn prime_field_gf2() {
        let f = FieldSpec::new(2, 1, None).unwrap();
        assert_eq!(f.q(), 2);
        assert_eq!(f.mul(Scalar::ONE, Scalar::ONE), Scalar::ONE);
        assert_eq!(f.add(Scalar::ONE, Scalar::ONE), Scalar::ZERO);
    }

    #[test]
    fn gf4_with_explicit_modulus() {
        let f = FieldSpec::new(2, 2, Some(&[1, 1, 1])).unwrap();
        assert_eq!(f.q(), 4);
        assert_eq!(f.elements().count(), 4);
        // x * x = x + 1
        assert_eq!(f.mul(Scalar(2), Scalar(2)), Scalar(3));
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(matches!(
            FieldSpec::new(2, 2, Some(&[1, 0, 1])),
            Err(Error::ReducibleModulus(_, 2))
        ));
        // x^2 + 2 = (x + 1)(x + 2) over GF(3)
        assert!(matches!(FieldSpec::new(3, 2, Some(&[2, 0, 1])), Err(Error::ReducibleModulus(..))));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldSpec::new(4, 1, None).unwrap_err(), Error::NonPrimeCharacteristic(4));
        assert!(matches!(FieldSpec::new(2, 10, None), Err(Error::UnsupportedSize(_))));
        // GF(1024) is fine with a user modulus: x^10 + x^3 + 1
        let m = [1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1];
        let f = FieldSpec::new(2, 10, Some(&m)).unwrap();
        let x = Scalar(2);
        assert_eq!(f.pow(x, 1023), Scalar::ONE);
        assert!(matches!(FieldSpec::new(2, 2, Some(&[1, 1])), Err(Error::InvalidModulus(..))));
    }

    #[test]
    fn default_moduli_are_pinned() {
        assert_eq!(gf(4).modulus(), &[1, 1, 1]);
        assert_eq!(gf(8).modulus(), &[1, 1, 0, 1]);
        assert_eq!(gf(16).modulus(), &[1, 1, 0, 0, 1]);
        assert_eq!(gf(9).modulus(), &[1, 0, 1]);
    }

    #[test]
    fn char2_self_inverse_addition() {
        for q in [2, 4, 8, 16, 32, 256, 512] {
            let f = gf(q);
            for a in f.elements() {
                assert_eq!(f.add(a, a), Scalar::ZERO);
                assert_eq!(f.sub(a, Scalar(1)), f.add(a, Scalar(1)));
            }
        }
    }

    /// Repeated-squaring oracle: x^(2^k) by k explicit squarings.
    fn pow_by_squarings(f: &FieldSpec, a: Scalar, k: u32) -> Scalar {
        (0..k).fold(a, |acc, _| f.mul_poly(acc, acc))
    }

    #[test]
    fn gf8_generator_order() {
        let f = gf(8);
        let x = Scalar(2);
        assert_eq!(f.pow(x, 7), Scalar::ONE);
        // x^7 = x^8 / x, and x^8 = x^(2^3)
        let x8 = pow_by_squarings(&f, x, 3);
        assert_eq!(x8, x);
        for k in 1..7 {
            assert_ne!(f.pow(x, k), Scalar::ONE);
        }
    }

    #[test]
    fn sqrt_char2_examples() {
        let f2 = gf(2);
        assert_eq!(f2.sqrt_char2(Scalar::ONE).unwrap(), Scalar::ONE);
        let f4 = gf(4);
        assert_eq!(f4.sqrt_char2(Scalar(2)).unwrap(), Scalar(3));
        for q in [8, 16, 64, 512] {
            let f = gf(q);
            for a in f.elements() {
                let r = f.sqrt_char2(a).unwrap();
                assert_eq!(f.mul(r, r), a);
            }
        }
        assert_eq!(gf(9).sqrt_char2(Scalar::ONE), Err(Error::WrongCharacteristic(3)));
    }

    #[test]
    fn inverses_exhaustive() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 81, 125, 128, 243, 256, 343, 512] {
            let f = gf(q);
            for a in f.elements().skip(1) {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), Scalar::ONE, "GF({q}) a={a}");
            }
            assert_eq!(f.inv(Scalar::ZERO), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn table_and_polynomial_multiplication_agree() {
        for q in [4, 9, 27, 32, 49] {
            let f = gf(q);
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul_poly(a, b));
                }
            }
        }
    }

    #[test]
    fn odd_characteristic_negation() {
        let f = gf(9);
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), Scalar::ZERO);
            assert_eq!(f.sub(f.add(a, Scalar(5)), Scalar(5)), a);
        }
    }

    #[test]
    fn frobenius_is_additive_bijection() {
        let f = gf(32);
        let mut seen = vec![false; 32];
        for a in f.elements() {
            let a2 = f.mul(a, a);
            seen[a2.rep() as usize] = true;
            for b in f.elements() {
                let s = f.add(a, b);
                assert_eq!(f.mul(s, s), f.add(a2, f.mul(b, b)));
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn encoding_roundtrip() {
        let f = gf(27);
        for a in f.elements() {
            assert_eq!(f.from_poly(&f.to_poly(a)).unwrap(), a);
        }
        assert!(f.elem(27).is_err());
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
