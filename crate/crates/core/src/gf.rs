//! Finite fields GF(p^n) in polynomial basis with a fixed primitive element.
//!
//! An element is encoded as the integer `sum(c_i * p^i)` of its coefficient
//! vector `c_0 + c_1 x + ... + c_{n-1} x^{n-1}` modulo the field's monic
//! modulus. The modulus is the Conway polynomial where one is tabulated, so the
//! distinguished primitive element `z` is the class of `x` and agrees with the
//! usual `Z(q)` of computer algebra systems.

use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};

use thiserror::Error;

/// Largest field order accepted by [`Field::new`].
pub const MAX_ORDER: u64 = 1 << 20;

/// Fields up to this order get log/antilog tables.
const TABLE_LIMIT: u32 = 1 << 16;

static NEXT_FIELD_ID: AtomicU32 = AtomicU32::new(1);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("field order {p}^{n} exceeds 2^20")]
    TooLarge { p: u32, n: u32 },
    #[error("modulus of GF({p}^{n}) is reducible or x is not primitive")]
    ReducibleModulus { p: u32, n: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("element is not a primitive root")]
    NotPrimitive,
    #[error("cannot parse field element {0:?}")]
    Parse(String),
}

/// Conway polynomials C(p, n) for n >= 2, coefficients low to high without the
/// leading 1. Degree one is handled by taking the least primitive root.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (2, 5, &[1, 0, 1, 0, 0]),
    (3, 2, &[2, 2]),
    (3, 3, &[1, 2, 0]),
    (5, 2, &[2, 4]),
    (7, 2, &[3, 6]),
];

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FieldElem {
    field: u32,
    code: u32,
}

impl FieldElem {
    /// Integer encoding of the coefficient vector.
    pub fn code(self) -> u32 {
        self.code
    }

    pub fn is_zero(self) -> bool {
        self.code == 0
    }
}

pub struct Field {
    id: u32,
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    zeta: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    frob: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.n)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Dense polynomial arithmetic over GF(p), coefficient vectors low to high.
struct PolyRing {
    p: u32,
}

impl PolyRing {
    fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod_p(&self, a: u32) -> u32 {
        // p is prime, so a^(p-2)
        let mut r = 1u64;
        let mut b = a as u64 % self.p as u64;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p as u64;
            }
            b = b * b % self.p as u64;
            e >>= 1;
        }
        r as u32
    }

    fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x as u64 * y as u64;
            }
        }
        Self::trim(out.into_iter().map(|c| (c % self.p as u64) as u32).collect())
    }

    fn rem(&self, a: &[u32], m: &[u32]) -> Vec<u32> {
        let mut r = Self::trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = self.inv_mod_p(m[dm]) as u64;
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let c = r[r.len() - 1] as u64 * lead_inv % self.p as u64;
            for (i, &mi) in m.iter().enumerate() {
                let t = (c * mi as u64) % self.p as u64;
                let slot = &mut r[shift + i];
                *slot = ((*slot as u64 + self.p as u64 - t) % self.p as u64) as u32;
            }
            r = Self::trim(r);
        }
        r
    }

    fn sub(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let len = a.len().max(b.len());
        let out = (0..len)
            .map(|i| {
                let x = *a.get(i).unwrap_or(&0);
                let y = *b.get(i).unwrap_or(&0);
                (x + self.p - y) % self.p
            })
            .collect();
        Self::trim(out)
    }

    fn gcd(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut a = Self::trim(a.to_vec());
        let mut b = Self::trim(b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        a
    }

    /// x^(e) mod m by square-and-multiply.
    fn pow_x_mod(&self, e: u64, m: &[u32]) -> Vec<u32> {
        self.pow_mod(&[0, 1], e, m)
    }

    fn pow_mod(&self, base: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
        let mut r = vec![1u32];
        let mut b = self.rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                r = self.rem(&self.mul(&r, &b), m);
            }
            b = self.rem(&self.mul(&b, &b), m);
            e >>= 1;
        }
        r
    }

    /// Rabin's irreducibility test for a monic polynomial of degree n.
    fn is_irreducible(&self, m: &[u32]) -> bool {
        let n = (m.len() - 1) as u64;
        let p = self.p as u64;
        let x = vec![0u32, 1];
        let full = self.pow_x_mod(p.pow(n as u32), m);
        if !self.rem(&self.sub(&full, &x), m).is_empty() {
            return false;
        }
        for r in prime_factors(n) {
            let h = self.pow_x_mod(p.pow((n / r) as u32), m);
            let g = self.gcd(&self.sub(&h, &x), m);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

impl Field {
    /// Builds GF(p^n) with its fixed modulus and verified primitive element.
    pub fn new(p: u32, n: u32) -> Result<Field, GfError> {
        if !is_prime(p) {
            return Err(GfError::NonPrimeCharacteristic(p));
        }
        if n == 0 {
            return Err(GfError::ZeroDegree);
        }
        let q64 = (p as u64).checked_pow(n).unwrap_or(u64::MAX);
        if q64 > MAX_ORDER {
            return Err(GfError::TooLarge { p, n });
        }
        let q = q64 as u32;
        let ring = PolyRing { p };
        let modulus = if n == 1 {
            let g = (1..p.max(2)).find(|&g| Self::is_primitive_root_mod(g, p)).unwrap_or(1);
            vec![(p - g % p) % p, 1]
        } else if let Some((_, _, low)) = CONWAY.iter().find(|(pp, nn, _)| *pp == p && *nn == n) {
            let mut m = low.to_vec();
            m.push(1);
            m
        } else {
            Self::least_primitive_polynomial(&ring, p, n).ok_or(GfError::ReducibleModulus { p, n })?
        };
        if n > 1 && !ring.is_irreducible(&modulus) {
            return Err(GfError::ReducibleModulus { p, n });
        }
        let mut field = Field {
            id: NEXT_FIELD_ID.fetch_add(1, Ordering::Relaxed),
            p,
            n,
            q,
            modulus,
            zeta: 0,
            exp: Vec::new(),
            log: Vec::new(),
            frob: Vec::new(),
        };
        field.zeta = if n == 1 {
            (p - field.modulus[0]) % p
        } else {
            p // code of x
        };
        if q == 2 {
            field.zeta = 1;
        }
        if !field.zeta_is_primitive() {
            return Err(GfError::ReducibleModulus { p, n });
        }
        field.build_tables();
        Ok(field)
    }

    fn build_tables(&mut self) {
        let (p, q) = (self.p, self.q);
        self.exp.clear();
        self.log.clear();
        if q <= TABLE_LIMIT {
            let mut exp = Vec::with_capacity(q as usize - 1);
            let mut log = vec![u32::MAX; q as usize];
            let mut cur = 1u32;
            for k in 0..q - 1 {
                exp.push(cur);
                log[cur as usize] = k;
                cur = self.mul_slow(cur, self.zeta);
            }
            self.exp = exp;
            self.log = log;
        }
        self.frob = (0..q).map(|a| self.pow_code(a, p as u64)).collect();
    }

    /// The same field (same modulus and element codes) with a different
    /// distinguished primitive element. The result is a distinct field
    /// identity.
    pub fn with_zeta(&self, zeta: FieldElem) -> Result<Field, GfError> {
        let code = self.own(zeta)?;
        let mut field = Field {
            id: NEXT_FIELD_ID.fetch_add(1, Ordering::Relaxed),
            p: self.p,
            n: self.n,
            q: self.q,
            modulus: self.modulus.clone(),
            zeta: code,
            exp: Vec::new(),
            log: Vec::new(),
            frob: Vec::new(),
        };
        if code == 0 || !field.zeta_is_primitive_slow() {
            return Err(GfError::NotPrimitive);
        }
        field.build_tables();
        Ok(field)
    }

    /// Primitive elements in increasing order of their log to the base zeta.
    pub fn primitive_elements(&self) -> Vec<FieldElem> {
        let m = self.q as u64 - 1;
        (0..m.max(1))
            .filter(|&k| gcd(k, m) == 1 || m == 1)
            .map(|k| self.wrap(self.exp_code(k as u32)))
            .collect()
    }

    fn is_primitive_root_mod(g: u32, p: u32) -> bool {
        if p == 2 {
            return g == 1;
        }
        let pow = |b: u64, mut e: u64| {
            let (mut r, mut b) = (1u64, b % p as u64);
            while e > 0 {
                if e & 1 == 1 {
                    r = r * b % p as u64;
                }
                b = b * b % p as u64;
                e >>= 1;
            }
            r
        };
        prime_factors(p as u64 - 1)
            .into_iter()
            .all(|r| pow(g as u64, (p as u64 - 1) / r) != 1)
    }

    fn least_primitive_polynomial(ring: &PolyRing, p: u32, n: u32) -> Option<Vec<u32>> {
        let q = (p as u64).pow(n);
        let order = q - 1;
        let factors = prime_factors(order);
        for code in 0..q {
            let mut m: Vec<u32> = (0..n).map(|i| ((code / (p as u64).pow(i)) % p as u64) as u32).collect();
            m.push(1);
            if m[0] == 0 || !ring.is_irreducible(&m) {
                continue;
            }
            if factors.iter().all(|r| ring.pow_x_mod(order / r, &m) != vec![1]) {
                return Some(m);
            }
        }
        None
    }

    fn zeta_is_primitive_slow(&self) -> bool {
        let order = self.q as u64 - 1;
        let pow = |k: u64| {
            let (mut r, mut b, mut e) = (1u32, self.zeta, k);
            while e > 0 {
                if e & 1 == 1 {
                    r = self.mul_slow(r, b);
                }
                b = self.mul_slow(b, b);
                e >>= 1;
            }
            r
        };
        if order == 1 {
            return self.zeta == 1;
        }
        prime_factors(order).into_iter().all(|r| pow(order / r) != 1) && pow(order) == 1
    }

    fn zeta_is_primitive(&self) -> bool {
        let order = self.q as u64 - 1;
        if order == 1 {
            return self.zeta == 1;
        }
        prime_factors(order)
            .into_iter()
            .all(|r| self.pow_code(self.zeta, order / r) != 1)
            && self.pow_code(self.zeta, order) == 1
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, low to high, including the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn wrap(&self, code: u32) -> FieldElem {
        FieldElem { field: self.id, code }
    }

    fn own(&self, a: FieldElem) -> Result<u32, GfError> {
        if a.field == self.id && a.code < self.q {
            Ok(a.code)
        } else {
            Err(GfError::FieldMismatch)
        }
    }

    pub fn zero(&self) -> FieldElem {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElem {
        self.wrap(1)
    }

    /// The distinguished primitive element.
    pub fn zeta(&self) -> FieldElem {
        self.wrap(self.zeta)
    }

    /// `zeta^k` for any integer k.
    pub fn zeta_pow(&self, k: i64) -> FieldElem {
        let m = self.q as i64 - 1;
        self.wrap(self.pow_code(self.zeta, k.rem_euclid(m) as u64))
    }

    pub fn from_code(&self, code: u32) -> Result<FieldElem, GfError> {
        if code < self.q {
            Ok(self.wrap(code))
        } else {
            Err(GfError::FieldMismatch)
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElem {
        self.wrap(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElem, GfError> {
        if coeffs.len() > self.n as usize {
            return Err(GfError::FieldMismatch);
        }
        let mut code = 0u32;
        for &c in coeffs.iter().rev() {
            code = code * self.p + c % self.p;
        }
        Ok(self.wrap(code))
    }

    pub fn coeffs(&self, a: FieldElem) -> Result<Vec<u32>, GfError> {
        let mut c = self.own(a)?;
        Ok((0..self.n)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect())
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q).map(move |c| self.wrap(c))
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, GfError> {
        Ok(self.wrap(self.add_code(self.own(a)?, self.own(b)?)))
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, GfError> {
        Ok(self.wrap(self.sub_code(self.own(a)?, self.own(b)?)))
    }

    pub fn neg(&self, a: FieldElem) -> Result<FieldElem, GfError> {
        Ok(self.wrap(self.neg_code(self.own(a)?)))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, GfError> {
        Ok(self.wrap(self.mul_code(self.own(a)?, self.own(b)?)))
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, GfError> {
        let c = self.own(a)?;
        if c == 0 {
            return Err(GfError::ZeroInverse);
        }
        Ok(self.wrap(self.inv_code(c)))
    }

    pub fn pow(&self, a: FieldElem, k: u64) -> Result<FieldElem, GfError> {
        Ok(self.wrap(self.pow_code(self.own(a)?, k)))
    }

    /// Frobenius x -> x^p.
    pub fn frobenius(&self, a: FieldElem) -> Result<FieldElem, GfError> {
        Ok(self.wrap(self.frob_code(self.own(a)?)))
    }

    /// Discrete log base zeta; `None` for zero.
    pub fn log(&self, a: FieldElem) -> Result<Option<u32>, GfError> {
        Ok(self.log_code(self.own(a)?))
    }

    /// Multiplicative order of a nonzero element.
    pub fn mul_order(&self, a: FieldElem) -> Result<u64, GfError> {
        let c = self.own(a)?;
        if c == 0 {
            return Err(GfError::ZeroInverse);
        }
        let m = self.q as u64 - 1;
        let mut ord = m;
        for r in prime_factors(m) {
            while ord.is_multiple_of(r) && self.pow_code(c, ord / r) == 1 {
                ord /= r;
            }
        }
        Ok(ord)
    }

    pub fn is_square(&self, a: FieldElem) -> Result<bool, GfError> {
        Ok(self.is_square_code(self.own(a)?))
    }

    /// Renders as `0` or `z^k`.
    pub fn format(&self, a: FieldElem) -> Result<String, GfError> {
        Ok(match self.log(a)? {
            None => "0".to_string(),
            Some(k) => format!("z^{k}"),
        })
    }

    /// Parses `0`, `z`, `z^k` (k may be negative) or a base-10 integer
    /// literal interpreted in the prime subfield.
    pub fn parse(&self, s: &str) -> Result<FieldElem, GfError> {
        let t = s.trim();
        if t == "z" {
            return Ok(self.zeta());
        }
        if let Some(rest) = t.strip_prefix("z^") {
            let k: i64 = rest.trim().parse().map_err(|_| GfError::Parse(s.to_string()))?;
            return Ok(self.zeta_pow(k));
        }
        let v: i64 = t.parse().map_err(|_| GfError::Parse(s.to_string()))?;
        Ok(self.from_int(v))
    }

    // Raw code arithmetic. Callers guarantee codes are in range.

    pub(crate) fn add_code(&self, a: u32, b: u32) -> u32 {
        if self.n == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.n {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    pub(crate) fn neg_code(&self, a: u32) -> u32 {
        if self.n == 1 {
            return (self.p - a) % self.p;
        }
        let mut a = a;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.n {
            out += ((self.p - a % self.p) % self.p) * place;
            place *= self.p;
            a /= self.p;
        }
        out
    }

    pub(crate) fn sub_code(&self, a: u32, b: u32) -> u32 {
        self.add_code(a, self.neg_code(b))
    }

    pub(crate) fn mul_code(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.exp.is_empty() {
            return self.mul_slow(a, b);
        }
        let s = self.log[a as usize] + self.log[b as usize];
        let m = self.q - 1;
        self.exp[(if s >= m { s - m } else { s }) as usize]
    }

    pub(crate) fn inv_code(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        if self.exp.is_empty() {
            return self.pow_code(a, self.q as u64 - 2);
        }
        let m = self.q - 1;
        self.exp[((m - self.log[a as usize]) % m) as usize]
    }

    pub(crate) fn frob_code(&self, a: u32) -> u32 {
        self.frob[a as usize]
    }

    pub(crate) fn log_code(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        if !self.log.is_empty() {
            return Some(self.log[a as usize]);
        }
        let mut cur = 1u32;
        for k in 0..self.q - 1 {
            if cur == a {
                return Some(k);
            }
            cur = self.mul_slow(cur, self.zeta);
        }
        None
    }

    pub(crate) fn exp_code(&self, k: u32) -> u32 {
        let k = k % (self.q - 1);
        if self.exp.is_empty() {
            self.pow_code(self.zeta, k as u64)
        } else {
            self.exp[k as usize]
        }
    }

    pub(crate) fn is_square_code(&self, a: u32) -> bool {
        if a == 0 || self.p == 2 {
            return true;
        }
        self.log_code(a).map(|k| k % 2 == 0).unwrap_or(false)
    }

    pub(crate) fn pow_code(&self, a: u32, mut k: u64) -> u32 {
        let mut r = 1u32;
        let mut b = a;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul_slow_or_table(r, b);
            }
            b = self.mul_slow_or_table(b, b);
            k >>= 1;
        }
        r
    }

    fn mul_slow_or_table(&self, a: u32, b: u32) -> u32 {
        if self.exp.is_empty() {
            self.mul_slow(a, b)
        } else {
            self.mul_code(a, b)
        }
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        if self.n == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let ring = PolyRing { p: self.p };
        let digits = |mut c: u32| -> Vec<u32> {
            (0..self.n)
                .map(|_| {
                    let d = c % self.p;
                    c /= self.p;
                    d
                })
                .collect()
        };
        let prod = ring.rem(
            &ring.mul(&PolyRing::trim(digits(a)), &PolyRing::trim(digits(b))),
            &self.modulus,
        );
        prod.iter().rev().fold(0u32, |acc, &c| acc * self.p + c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf25_uses_conway_modulus_and_primitive_zeta() {
        let f = Field::new(5, 2).unwrap();
        assert_eq!(f.modulus(), &[2, 4, 1]);
        assert_eq!(f.mul_order(f.zeta()).unwrap(), 24);
        assert_eq!(f.zeta_pow(24), f.one());
    }

    #[test]
    fn zeta_to_the_twelve_is_minus_one() {
        let f = Field::new(5, 2).unwrap();
        // -1 is the unique element of order 2 in the cyclic group of order 24
        let order_two: Vec<_> = f
            .elements()
            .filter(|&a| !a.is_zero() && f.mul_order(a).unwrap() == 2)
            .collect();
        assert_eq!(order_two, vec![f.zeta_pow(12)]);
        assert_eq!(f.zeta_pow(12), f.neg(f.one()).unwrap());
    }

    #[test]
    fn prime_fields() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.zeta(), f2.one());
        assert_eq!(f2.mul_order(f2.zeta()).unwrap(), 1);

        let f7 = Field::new(7, 1).unwrap();
        // brute force: which elements generate the whole unit group
        let gens: Vec<u32> = (1..7u32)
            .filter(|&g| {
                (1..7u32)
                    .map(|k| (g as u64).pow(k) % 7)
                    .collect::<std::collections::HashSet<_>>()
                    .len()
                    == 6
            })
            .collect();
        assert_eq!(gens, vec![3, 5]);
        assert_eq!(f7.zeta().code(), 3);
        assert_eq!(f7.mul_order(f7.zeta()).unwrap(), 6);
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert_eq!(Field::new(6, 1).unwrap_err(), GfError::NonPrimeCharacteristic(6));
        assert_eq!(Field::new(2, 21).unwrap_err(), GfError::TooLarge { p: 2, n: 21 });
    }

    #[test]
    fn additive_identity_and_inverses() {
        for (p, n) in [(2, 1), (2, 3), (3, 2), (5, 1), (5, 2), (7, 2)] {
            let f = Field::new(p, n).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.zero()).unwrap(), a);
                assert_eq!(f.add(a, f.neg(a).unwrap()).unwrap(), f.zero());
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()).unwrap(), f.one());
                }
            }
            assert_eq!(f.inv(f.zero()).unwrap_err(), GfError::ZeroInverse);
        }
    }

    #[test]
    fn powers_of_zeta_enumerate_units() {
        for (p, n) in [(2, 2), (2, 4), (3, 3), (5, 2), (13, 1)] {
            let f = Field::new(p, n).unwrap();
            let q = f.order() as i64;
            let mut seen: Vec<u32> = (0..q - 1).map(|k| f.zeta_pow(k).code()).collect();
            seen.sort_unstable();
            assert_eq!(seen, (1..q as u32).collect::<Vec<_>>());
        }
    }

    #[test]
    fn frobenius_is_a_field_automorphism_of_order_n() {
        for (p, n) in [(2, 3), (3, 2), (5, 2)] {
            let f = Field::new(p, n).unwrap();
            for a in f.elements() {
                let mut x = a;
                for _ in 0..n {
                    x = f.frobenius(x).unwrap();
                }
                assert_eq!(x, a);
                for b in f.elements() {
                    let fa = f.frobenius(a).unwrap();
                    let fb = f.frobenius(b).unwrap();
                    assert_eq!(f.frobenius(f.add(a, b).unwrap()).unwrap(), f.add(fa, fb).unwrap());
                    assert_eq!(f.frobenius(f.mul(a, b).unwrap()).unwrap(), f.mul(fa, fb).unwrap());
                }
            }
        }
    }

    #[test]
    fn field_mismatch_detected() {
        let f = Field::new(5, 2).unwrap();
        let g = Field::new(5, 2).unwrap();
        assert_eq!(f.add(f.one(), g.one()).unwrap_err(), GfError::FieldMismatch);
    }

    #[test]
    fn parse_and_format() {
        let f = Field::new(5, 2).unwrap();
        assert_eq!(f.parse("z^11").unwrap(), f.zeta_pow(11));
        assert_eq!(f.parse("3").unwrap(), f.from_int(3));
        assert_eq!(f.parse("0").unwrap(), f.zero());
        assert_eq!(f.format(f.zeta_pow(-1)).unwrap(), "z^23");
        assert!(f.parse("w^2").is_err());
    }

    #[test]
    fn least_primitive_fallback_for_untabulated_fields() {
        let f = Field::new(3, 4).unwrap();
        assert_eq!(f.mul_order(f.zeta()).unwrap(), 80);
        let big = Field::new(2, 17).unwrap();
        assert_eq!(big.mul_order(big.zeta()).unwrap(), (1 << 17) - 1);
    }

    #[test]
    fn rabin_rejects_reducible() {
        let ring = PolyRing { p: 5 };
        // (x+1)(x+2) = x^2 + 3x + 2
        assert!(!ring.is_irreducible(&[2, 3, 1]));
        assert!(ring.is_irreducible(&[2, 4, 1]));
    }

    #[test]
    fn alternative_primitive_roots() {
        let f = Field::new(5, 2).unwrap();
        let roots = f.primitive_elements();
        assert_eq!(roots.len(), 8);
        assert_eq!(roots[0], f.zeta());
        for &r in &roots {
            let g = f.with_zeta(r).unwrap();
            let z = g.zeta();
            assert_eq!(z.code(), r.code());
            assert_eq!(g.mul_order(z).unwrap(), 24);
            let a = g.from_code(7).unwrap();
            let b = g.from_code(13).unwrap();
            let fa = f.from_code(7).unwrap();
            let fb = f.from_code(13).unwrap();
            assert_eq!(g.mul(a, b).unwrap().code(), f.mul(fa, fb).unwrap().code());
        }
        assert_eq!(f.with_zeta(f.zeta_pow(2)).unwrap_err(), GfError::NotPrimitive);
        assert_eq!(f.with_zeta(f.zero()).unwrap_err(), GfError::NotPrimitive);
    }
}
