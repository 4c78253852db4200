use std::sync::Arc;

use super::{nt, FieldContext};
use crate::{Error, Result};

/// Table-driven GF(q), q <= 256, with elements as `u8` codes.
///
/// The code of an element is its [`FieldElement`](super::FieldElement)
/// encoding in the standard context `FieldContext::new(p, e)`, so codes of
/// prime fields are the residues themselves and in characteristic 2 addition
/// is XOR of codes.
pub struct SmallField {
    q: usize,
    ctx: Arc<FieldContext>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl std::fmt::Debug for SmallField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

impl SmallField {
    pub fn new(q: u64) -> Result<Arc<Self>> {
        let (p, e) = nt::prime_power(q)
            .ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        if q > 256 {
            return Err(Error::InvalidField(format!("GF({q}) is too large for coordinate tables")));
        }
        let ctx = FieldContext::new(p, e)?;
        let n = q as usize;
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        let mut neg = vec![0u8; n];
        let mut inv = vec![0u8; n];
        let el = |c: usize| ctx.from_code(c as u64).expect("code in range");
        for a in 0..n {
            neg[a] = ctx.neg(el(a)).code() as u8;
            inv[a] = ctx.inv(el(a)).map_or(0, |x| x.code() as u8);
            for b in 0..n {
                add[a * n + b] = ctx.add(el(a), el(b)).code() as u8;
                mul[a * n + b] = ctx.mul(el(a), el(b)).code() as u8;
            }
        }
        Ok(Arc::new(SmallField { q: n, ctx, add, mul, neg, inv }))
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.ctx.characteristic()
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.ctx.degree()
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn is_char2(&self) -> bool {
        self.ctx.characteristic() == 2
    }

    #[inline(always)]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline(always)]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline(always)]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline(always)]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    /// Inverse of a nonzero element; zero maps to zero.
    #[inline(always)]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    /// Row `c * _` of the multiplication table.
    #[inline(always)]
    pub(crate) fn mul_row(&self, c: u8) -> &[u8] {
        let s = c as usize * self.q;
        &self.mul[s..s + self.q]
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        (0..self.q).map(|c| c as u8)
    }

    /// Comma-separated GF(p) coefficients of the element.
    pub fn format(&self, c: u8) -> String {
        self.ctx.format_element(self.ctx.from_code(c as u64).expect("code in range"))
    }

    pub fn parse(&self, s: &str) -> Result<u8> {
        let x = self.ctx.parse_element(s)?;
        Ok(x.code() as u8)
    }
}
