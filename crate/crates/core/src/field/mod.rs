//! Exact arithmetic in GF(p^m).
//!
//! Elements are coefficient vectors over GF(p) packed as base-`p` integers,
//! so equal elements always have identical encodings. Small fields carry
//! discrete log tables; larger ones fall back to polynomial arithmetic.

pub(crate) mod nt;
mod poly;
mod small;
mod tower;

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

pub use nt::{is_prime, prime_power};
pub use small::SmallField;
pub use tower::FieldTower;

/// Fields whose multiplicative group is at most this large get log tables.
const TABLE_LIMIT: u64 = 1 << 21;

/// An element of GF(p^m): the coefficient vector over GF(p) in ascending
/// degree, packed as `sum c_i p^i`. Meaningful only together with the
/// [`FieldContext`] that produced it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);

    /// The packed base-`p` encoding.
    pub fn code(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// GF(p^m) with a fixed monic irreducible modulus and a fixed primitive element.
pub struct FieldContext {
    p: u64,
    m: u32,
    group_order: u64,
    modulus: Vec<u64>,
    generator: FieldElement,
    pow_p: Vec<u64>,
    tables: Option<LogTables>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator.0)
            .finish()
    }
}

impl FieldContext {
    /// GF(p^m) with the smallest monic irreducible modulus (coefficient
    /// vectors below the leading term compared as base-`p` integers) and the
    /// smallest primitive element in the same order.
    pub fn new(p: u64, m: u32) -> Result<Arc<Self>> {
        Self::with_modulus_index(p, m, 0)
    }

    /// Like [`FieldContext::new`] but picks the `index`-th irreducible modulus
    /// in search order (0 is the smallest).
    pub fn with_modulus_index(p: u64, m: u32, index: usize) -> Result<Arc<Self>> {
        let (group_order, m_primes) = Self::check_params(p, m)?;
        let mut seen = 0usize;
        let mut c: u64 = 0;
        loop {
            if c > group_order {
                return Err(Error::InvalidField(format!(
                    "fewer than {} irreducible polynomials of degree {m} over GF({p})",
                    index + 1
                )));
            }
            let mut f = digits(c, p, m);
            f.push(1);
            if poly::is_irreducible(&f, p, &m_primes) {
                if seen == index {
                    return Ok(Arc::new(Self::build(p, m, group_order, f)?));
                }
                seen += 1;
            }
            c += 1;
        }
    }

    /// GF(p^m) with an explicit monic modulus given as `m + 1` ascending coefficients.
    pub fn with_modulus(p: u64, m: u32, modulus: &[u64]) -> Result<Arc<Self>> {
        let (group_order, m_primes) = Self::check_params(p, m)?;
        if modulus.len() != m as usize + 1 || modulus[m as usize] != 1 {
            return Err(Error::InvalidField("modulus must be monic of degree m".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficient out of range".into()));
        }
        if !poly::is_irreducible(modulus, p, &m_primes) {
            return Err(Error::InvalidField(format!("{modulus:?} is reducible over GF({p})")));
        }
        Ok(Arc::new(Self::build(p, m, group_order, modulus.to_vec())?))
    }

    fn check_params(p: u64, m: u32) -> Result<(u64, Vec<u64>)> {
        if !nt::is_prime(p) {
            return Err(Error::InvalidField(format!("characteristic {p} is not prime")));
        }
        if m == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        let size = (p as u128).checked_pow(m).filter(|&s| s - 1 <= u64::MAX as u128);
        let Some(size) = size else {
            return Err(Error::InvalidField(format!("{p}^{m} exceeds the 64-bit range")));
        };
        Ok(((size - 1) as u64, nt::prime_divisors(m as u64)))
    }

    fn build(p: u64, m: u32, group_order: u64, modulus: Vec<u64>) -> Result<Self> {
        let pow_p = (0..m).map(|i| p.pow(i)).collect();
        let mut ctx = FieldContext {
            p,
            m,
            group_order,
            modulus,
            generator: FieldElement(1),
            pow_p,
            tables: None,
        };
        let factors = nt::prime_divisors(group_order);
        let mut c = 1u64;
        loop {
            let cand = FieldElement(c);
            if factors.iter().all(|&r| ctx.pow(cand, group_order / r) != ctx.one()) {
                ctx.generator = cand;
                break;
            }
            if c == group_order {
                return Err(Error::Internal("no primitive element found".into()));
            }
            c += 1;
        }
        if group_order <= TABLE_LIMIT {
            let n = group_order as usize;
            let mut exp = vec![0u32; n];
            let mut log = vec![0u32; n + 1];
            let mut x = ctx.one();
            for (i, slot) in exp.iter_mut().enumerate() {
                *slot = x.0 as u32;
                log[x.0 as usize] = i as u32;
                x = ctx.mul_poly(x, ctx.generator);
            }
            if x != ctx.one() {
                return Err(Error::Internal("generator order mismatch".into()));
            }
            ctx.tables = Some(LogTables { exp, log });
        }
        Ok(ctx)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// `p^m - 1`.
    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// `p^m`.
    pub fn size(&self) -> u128 {
        self.group_order as u128 + 1
    }

    /// Monic modulus, ascending coefficients (length `m + 1`).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The fixed primitive element.
    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// Image of the integer `n` in the prime field.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement((n as i128).rem_euclid(self.p as i128) as u64)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidArgument(format!(
                "coefficient vector {coeffs:?} does not describe an element of GF({}^{})",
                self.p, self.m
            )));
        }
        Ok(FieldElement(coeffs.iter().zip(&self.pow_p).map(|(c, w)| c * w).sum()))
    }

    pub fn from_code(&self, code: u64) -> Result<FieldElement> {
        if code > self.group_order {
            return Err(Error::InvalidArgument(format!("code {code} out of range")));
        }
        Ok(FieldElement(code))
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u64> {
        digits(x.0, self.p, self.m)
    }

    /// All elements in encoding order, starting with zero.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..=self.group_order).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if self.m == 1 {
            return FieldElement(((a.0 as u128 + b.0 as u128) % self.p as u128) as u64);
        }
        let (mut x, mut y, mut out) = (a.0, b.0, 0u64);
        for &w in &self.pow_p {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * w;
            x /= self.p;
            y /= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0u64;
        for &w in &self.pow_p {
            let d = x % self.p;
            out += ((self.p - d) % self.p) * w;
            x /= self.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        match &self.tables {
            Some(t) => {
                let s = t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64;
                FieldElement(t.exp[(s % self.group_order) as usize] as u64)
            }
            None => self.mul_poly(a, b),
        }
    }

    fn mul_poly(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.m == 1 {
            return FieldElement(nt::mul_mod(a.0, b.0, self.p));
        }
        let prod = poly::mul_mod_poly(&self.coeffs(a), &self.coeffs(b), &self.modulus, self.p);
        FieldElement(prod.iter().zip(&self.pow_p).map(|(c, w)| c * w).sum())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        Some(match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize] as u64;
                FieldElement(t.exp[((self.group_order - l) % self.group_order) as usize] as u64)
            }
            None => self.pow(a, self.group_order - 1),
        })
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return self.one();
        }
        if a.0 == 0 {
            return a;
        }
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize] as u128 * e as u128 % self.group_order as u128;
            return FieldElement(t.exp[l as usize] as u64);
        }
        let mut acc = self.one();
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_poly(acc, base);
            }
            base = self.mul_poly(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^e` for a possibly negative exponent.
    pub fn pow_signed(&self, a: FieldElement, e: i128) -> FieldElement {
        let n = self.group_order as i128;
        if a.0 == 0 {
            return if e == 0 { self.one() } else { a };
        }
        self.pow(a, e.rem_euclid(n) as u64)
    }

    /// Power `generator^k`, `k` taken modulo the group order.
    pub fn gen_pow(&self, k: i128) -> FieldElement {
        self.pow_signed(self.generator, k)
    }

    /// Discrete logarithm base the generator (`None` for zero).
    pub fn log(&self, a: FieldElement) -> Option<u64> {
        if a.0 == 0 {
            return None;
        }
        if let Some(t) = &self.tables {
            return Some(t.log[a.0 as usize] as u64);
        }
        let mut x = self.one();
        for k in 0..self.group_order {
            if x == a {
                return Some(k);
            }
            x = self.mul(x, self.generator);
        }
        None
    }

    /// Extension degree `e` of the subfield of size `q = p^e`.
    pub fn subfield_degree(&self, q: u64) -> Result<u32> {
        let bad = || Error::NotASubfield { q, p: self.p, m: self.m };
        let (p, e) = nt::prime_power(q).ok_or_else(bad)?;
        if p != self.p || !self.m.is_multiple_of(e) {
            return Err(bad());
        }
        Ok(e)
    }

    /// `x^(q^k)` where `q` is the size of a subfield.
    pub fn frobenius(&self, x: FieldElement, k: u32, q: u64) -> Result<FieldElement> {
        self.subfield_degree(q)?;
        Ok(self.frob_unchecked(x, k, q))
    }

    pub(crate) fn frob_unchecked(&self, x: FieldElement, k: u32, q: u64) -> FieldElement {
        if x.0 == 0 || self.group_order == 1 {
            return x;
        }
        let e = nt::pow_mod(q % self.group_order, k as u64, self.group_order);
        self.pow(x, e)
    }

    /// The unique subgroup of order `d` of the multiplicative group, listed as
    /// successive powers of its generator `omega^((p^m-1)/d)`.
    pub fn subgroup(&self, d: u64) -> Result<Vec<FieldElement>> {
        if d == 0 || !self.group_order.is_multiple_of(d) {
            return Err(Error::NotADivisor { d, order: self.group_order });
        }
        let g = self.pow(self.generator, self.group_order / d);
        let mut out = Vec::with_capacity(d as usize);
        let mut x = self.one();
        for _ in 0..d {
            out.push(x);
            x = self.mul(x, g);
        }
        Ok(out)
    }

    /// True iff `x` lies in the subfield of size `k`.
    pub fn in_subfield(&self, x: FieldElement, k: u64) -> Result<bool> {
        self.subfield_degree(k)?;
        Ok(self.frob_unchecked(x, 1, k) == x)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, x: FieldElement) -> Option<u64> {
        if x.0 == 0 {
            return None;
        }
        let mut order = self.group_order;
        for r in nt::prime_divisors(self.group_order) {
            while order.is_multiple_of(r) && self.pow(x, order / r) == self.one() {
                order /= r;
            }
        }
        Some(order)
    }

    /// Context header `p,m,c0,...,cm`.
    pub fn header(&self) -> String {
        let mut s = format!("{},{}", self.p, self.m);
        for c in &self.modulus {
            s.push_str(&format!(",{c}"));
        }
        s
    }

    /// Rebuilds a context from [`FieldContext::header`] output.
    pub fn from_header(header: &str) -> Result<Arc<Self>> {
        let nums: Vec<u64> = header
            .split(',')
            .map(|t| t.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?;
        if nums.len() < 3 {
            return Err(Error::Parse { line: 1, msg: "short field header".into() });
        }
        Self::with_modulus(nums[0], nums[1] as u32, &nums[2..])
    }

    /// Comma-separated GF(p) coefficients, ascending degree.
    pub fn format_element(&self, x: FieldElement) -> String {
        self.coeffs(x).iter().map(u64::to_string).collect::<Vec<_>>().join(",")
    }

    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let coeffs: Vec<u64> = s
            .split(',')
            .map(|t| t.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
        self.from_coeffs(&coeffs)
    }
}

fn digits(mut c: u64, p: u64, m: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(m as usize);
    for _ in 0..m {
        out.push(c % p);
        c /= p;
    }
    out
}
