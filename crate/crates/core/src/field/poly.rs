//! Dense polynomials over GF(p), ascending coefficient order.

use super::nt::{mul_mod, pow_mod};

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// `a * b mod f` for monic `f` of degree `m`; result has exactly `m` coefficients.
pub(crate) fn mul_mod_poly(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let m = f.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
            }
        }
    }
    reduce(&mut prod, f, p);
    prod.truncate(m);
    prod.resize(m, 0);
    prod
}

/// In-place reduction modulo monic `f`.
fn reduce(a: &mut [u64], f: &[u64], p: u64) {
    let m = f.len() - 1;
    for top in (m..a.len()).rev() {
        let c = a[top];
        if c == 0 {
            continue;
        }
        a[top] = 0;
        for k in 0..m {
            if f[k] != 0 {
                let idx = top - m + k;
                a[idx] = (a[idx] + p - mul_mod(c, f[k], p)) % p;
            }
        }
    }
}

fn pow_mod_poly(base: &[u64], mut exp: u64, f: &[u64], p: u64) -> Vec<u64> {
    let m = f.len() - 1;
    let mut acc = vec![0u64; m];
    acc[0] = 1;
    let mut b = base.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_poly(&acc, &b, f, p);
        }
        b = mul_mod_poly(&b, &b, f, p);
        exp >>= 1;
    }
    acc
}

fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while a.len() > db {
        let da = a.len() - 1;
        let c = mul_mod(a[da], lead_inv, p);
        for k in 0..=db {
            let idx = da - db + k;
            a[idx] = (a[idx] + p - mul_mod(c, b[k], p)) % p;
        }
        a = trim(a);
    }
    a
}

fn gcd_poly(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Rabin's irreducibility test for a monic polynomial of degree `m >= 1`.
pub(crate) fn is_irreducible(f: &[u64], p: u64, prime_divisors_of_m: &[u64]) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let mut x = vec![0u64; m];
    x[1] = 1;
    // frob[k] = x^(p^k) mod f
    let mut frob = vec![x.clone()];
    for k in 1..=m {
        let next = pow_mod_poly(&frob[k - 1], p, f, p);
        frob.push(next);
    }
    if frob[m] != x {
        return false;
    }
    for &l in prime_divisors_of_m {
        let k = m / l as usize;
        let mut g = frob[k].clone();
        g[1] = (g[1] + p - 1) % p;
        let d = gcd_poly(&g, f, p);
        if d.len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_irreducibles_of_degree_four() {
        // x^4+x+1 irreducible, x^4+x^2+1 = (x^2+x+1)^2 reducible
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2, &[2]));
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2, &[2]));
        // x^4+x^3+x^2+x+1 is irreducible (order 5)
        assert!(is_irreducible(&[1, 1, 1, 1, 1], 2, &[2]));
    }

    #[test]
    fn count_irreducible_cubics_over_gf3() {
        // (3^3 - 3) / 3 = 8 monic irreducible cubics
        let mut count = 0;
        for c in 0..27u64 {
            let f = [c % 3, (c / 3) % 3, c / 9, 1];
            if is_irreducible(&f, 3, &[3]) {
                count += 1;
            }
        }
        assert_eq!(count, 8);
    }

    #[test]
    fn count_irreducible_sextics_over_gf2() {
        // necklace count: (2^6 - 2^3 - 2^2 + 2) / 6 = 9
        let mut count = 0;
        for c in 0..64u64 {
            let mut f: Vec<u64> = (0..6).map(|i| (c >> i) & 1).collect();
            f.push(1);
            if is_irreducible(&f, 2, &[2, 3]) {
                count += 1;
            }
        }
        assert_eq!(count, 9);
    }
}
