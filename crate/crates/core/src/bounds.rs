//! Upper bounds on the size of (n, n-2)-sets, 5-general sets and 4-general
//! sets of PG(n, q), evaluated exactly.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    /// `(n!(q^{n+1}-1)(q^n-1)/((q-1)(q^2-1)))^{1/(n-1)} + n - 2`
    N2,
    /// `(sqrt(8q^n + q^2 - 6q + 1) + 3q - 5) / (2(q-1))`
    G5,
    /// `(sqrt(8q^{n+1} + q^2 - 6q + 1) + q - 3) / (2(q-1))`
    G4,
}

impl std::str::FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "n2" => Ok(BoundKind::N2),
            "g5" => Ok(BoundKind::G5),
            "g4" => Ok(BoundKind::G4),
            _ => Err(Error::InvalidArgument(format!("unknown bound kind {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundResult {
    pub kind: BoundKind,
    pub n: u32,
    pub q: u64,
    /// Floor of the real-valued bound.
    pub value: u128,
    /// The real-valued bound in floating point.
    pub exact: f64,
    pub exact_expression: String,
}

impl BoundResult {
    /// `size / exact`, the fraction of the bound a set of the given size attains.
    pub fn ratio(&self, size: u64) -> f64 {
        size as f64 / self.exact
    }
}

fn check(n: u32, q: u64) -> Result<()> {
    if n < 2 || q < 2 {
        return Err(Error::InvalidArgument("bounds need n >= 2 and q >= 2".into()));
    }
    Ok(())
}

fn to_u128(x: &BigInt) -> Result<u128> {
    x.to_u128().ok_or_else(|| Error::InvalidArgument("bound does not fit in 128 bits".into()))
}

fn pow(q: u64, e: u32) -> BigUint {
    num_traits::pow(BigUint::from(q), e as usize)
}

/// Bound for (n, n-2)-sets.
pub fn bound_n_minus2(n: u32, q: u64) -> Result<BoundResult> {
    check(n, q)?;
    let fact: BigUint = (1..=n as u64).map(BigUint::from).product();
    let num = fact * (pow(q, n + 1) - 1u32) * (pow(q, n) - 1u32);
    let den = BigUint::from(q - 1) * (pow(q, 2) - 1u32);
    // floor(x^{1/k}) = floor(floor(x)^{1/k})
    let root = (&num / &den).nth_root(n - 1);
    let value = to_u128(&(BigInt::from(root) + (n as i64 - 2)))?;
    let x = num.to_f64().unwrap_or(f64::INFINITY) / den.to_f64().unwrap_or(f64::INFINITY);
    let exact = x.powf(1.0 / (n - 1) as f64) + (n as f64 - 2.0);
    let expression = format!(
        "({n}! * ({q}^{} - 1) * ({q}^{n} - 1) / (({q} - 1) * ({q}^2 - 1)))^(1/{}) + {}",
        n + 1,
        n - 1,
        n - 2
    );
    Ok(BoundResult { kind: BoundKind::N2, n, q, value, exact, exact_expression: expression })
}

/// `floor((sqrt(8 q^e + q^2 - 6q + 1) + c) / (2(q - 1)))`.
fn sqrt_bound(kind: BoundKind, n: u32, q: u64, e: u32, c: i64) -> Result<BoundResult> {
    check(n, q)?;
    let qi = BigInt::from(q);
    let disc: BigInt = BigInt::from(8u32) * BigInt::from(pow(q, e)) + &qi * &qi - BigInt::from(6u32) * &qi + 1;
    let den = BigInt::from(2 * (q - 1));
    // floor((sqrt(D) + c)/d) = floor((isqrt(D) + c)/d) for integers c and d > 0
    let value = (disc.sqrt() + c).div_floor(&den);
    if value.is_zero() || value.sign() == num_bigint::Sign::Minus {
        return Err(Error::Internal("bound evaluated to a non-positive value".into()));
    }
    let exact = (disc.to_f64().unwrap_or(f64::INFINITY).sqrt() + c as f64) / den.to_f64().unwrap_or(1.0);
    let expression = format!("(sqrt(8 * {q}^{e} + {q}^2 - 6 * {q} + 1) + {c}) / (2 * ({q} - 1))");
    Ok(BoundResult { kind, n, q, value: to_u128(&value)?, exact, exact_expression: expression })
}

/// Bound for 5-general sets, i.e. (4, 3)-sets.
pub fn bound_5general(n: u32, q: u64) -> Result<BoundResult> {
    sqrt_bound(BoundKind::G5, n, q, n, 3 * q as i64 - 5)
}

/// Bound for 4-general sets, i.e. (3, 2)-sets.
pub fn bound_4general(n: u32, q: u64) -> Result<BoundResult> {
    sqrt_bound(BoundKind::G4, n, q, n + 1, q as i64 - 3)
}

pub fn bound(kind: BoundKind, n: u32, q: u64) -> Result<BoundResult> {
    match kind {
        BoundKind::N2 => bound_n_minus2(n, q),
        BoundKind::G5 => bound_5general(n, q),
        BoundKind::G4 => bound_4general(n, q),
    }
}
