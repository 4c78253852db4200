//! Depth-first search over k-subsets of a point list for subsets of small rank.
//!
//! A subset is a hit when its rank is at most `threshold` (and, if a filter
//! is given, the filter accepts it). Subsets are visited in lexicographic order
//! of pool positions; an incremental echelon basis is pushed and popped along
//! the way. A node whose rank already exceeds the threshold is skipped, and a
//! node whose rank cannot exceed it is settled in one step, so the work is far
//! below the number of subsets for sets with few dependencies.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::field::SmallField;
use crate::{Error, Result};

pub(crate) const MAX_COORDS: usize = 16;

/// Incremental forward echelon form.
trait Echelon: Clone + Send {
    /// Adds a row; returns true when the rank grows.
    fn push(&mut self, row: usize) -> bool;
    /// Undoes the last push.
    fn pop(&mut self);
    fn rank(&self) -> usize;
}

#[derive(Clone)]
struct Binary<'a> {
    rows: &'a [u64],
    basis: Vec<u64>,
    grew: Vec<bool>,
}

impl Echelon for Binary<'_> {
    #[inline]
    fn push(&mut self, row: usize) -> bool {
        let mut v = self.rows[row];
        for &b in &self.basis {
            // pivot of b is its lowest set bit
            if v & (b & b.wrapping_neg()) != 0 {
                v ^= b;
            }
        }
        let grew = v != 0;
        if grew {
            self.basis.push(v);
        }
        self.grew.push(grew);
        grew
    }

    #[inline]
    fn pop(&mut self) {
        if self.grew.pop() == Some(true) {
            self.basis.pop();
        }
    }

    fn rank(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone)]
struct General<'a> {
    f: &'a SmallField,
    width: usize,
    rows: &'a [[u8; MAX_COORDS]],
    basis: Vec<([u8; MAX_COORDS], usize)>,
    grew: Vec<bool>,
}

impl Echelon for General<'_> {
    #[inline]
    fn push(&mut self, row: usize) -> bool {
        let f = self.f;
        let mut v = self.rows[row];
        for (b, p) in &self.basis {
            let c = v[*p];
            if c != 0 {
                let m = f.mul_row(f.neg(c));
                for j in *p..self.width {
                    v[j] = f.add(v[j], m[b[j] as usize]);
                }
            }
        }
        let pivot = v[..self.width].iter().position(|&x| x != 0);
        let grew = pivot.is_some();
        if let Some(p) = pivot {
            let inv = f.mul_row(f.inv(v[p]));
            for x in &mut v[p..self.width] {
                *x = inv[*x as usize];
            }
            self.basis.push((v, p));
        }
        self.grew.push(grew);
        grew
    }

    #[inline]
    fn pop(&mut self) {
        if self.grew.pop() == Some(true) {
            self.basis.pop();
        }
    }

    fn rank(&self) -> usize {
        self.basis.len()
    }
}

pub(crate) type Filter<'a> = &'a (dyn Fn(&[usize]) -> bool + Sync);

/// A search for k-subsets of `prefix ∪ S`, `S ⊆ pool`, of rank at most `threshold`.
pub(crate) struct Search<'a> {
    pub field: &'a SmallField,
    pub rows: &'a [Vec<u8>],
    pub k: usize,
    pub threshold: usize,
    pub prefix: Vec<usize>,
    pub pool: Vec<usize>,
    /// Count every hit instead of stopping at the first.
    pub census: bool,
    pub filter: Option<Filter<'a>>,
    /// Cap on echelon pushes.
    pub budget: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Outcome {
    /// Lexicographically first hit, as point indices (prefix first).
    pub witness: Option<Vec<usize>>,
    /// Number of hits found (all of them in census mode, else 0 or 1).
    pub hits: u128,
    /// Echelon pushes performed, counted up to the first witness.
    pub work: u64,
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

impl<'a> Search<'a> {
    /// Number of candidate subsets.
    pub fn size(&self) -> u128 {
        binomial(self.pool.len(), self.k.saturating_sub(self.prefix.len()))
    }

    pub fn run(&self) -> Result<Outcome> {
        let width = self.rows.first().map_or(0, Vec::len);
        if width > MAX_COORDS {
            return Err(Error::InvalidArgument(format!("at most {MAX_COORDS} coordinates are supported")));
        }
        if self.prefix.len() > self.k {
            return Err(Error::Internal("prefix longer than the subset size".into()));
        }
        if self.field.q() == 2 {
            let packed: Vec<u64> = self
                .rows
                .iter()
                .map(|r| r.iter().enumerate().fold(0u64, |acc, (j, &c)| acc | ((c as u64) << j)))
                .collect();
            let e = Binary { rows: &packed, basis: Vec::with_capacity(self.k), grew: Vec::with_capacity(self.k) };
            self.run_with(e)
        } else {
            let packed: Vec<[u8; MAX_COORDS]> = self
                .rows
                .iter()
                .map(|r| {
                    let mut a = [0u8; MAX_COORDS];
                    a[..r.len()].copy_from_slice(r);
                    a
                })
                .collect();
            let e = General {
                f: self.field,
                width,
                rows: &packed,
                basis: Vec::with_capacity(self.k),
                grew: Vec::with_capacity(self.k),
            };
            self.run_with(e)
        }
    }

    fn run_with<E: Echelon + Sync>(&self, mut root: E) -> Result<Outcome> {
        let need = self.k - self.prefix.len();
        let chosen = self.prefix.clone();
        for &i in &self.prefix {
            root.push(i);
        }
        let base_work = self.prefix.len() as u64;
        if self.pool.len() < need {
            return Ok(Outcome { witness: None, hits: 0, work: base_work.max(1) });
        }
        // tasks are the first one or two pool positions of the remaining choice
        let depth = need.min(2);
        let tasks: Vec<[usize; 2]> = match depth {
            0 => vec![[0, 0]],
            1 => (0..self.pool.len()).map(|i| [i, 0]).collect(),
            _ => (0..self.pool.len())
                .flat_map(|i| (i + 1..self.pool.len()).map(move |j| [i, j]))
                .collect(),
        };
        let best = AtomicUsize::new(usize::MAX);
        let spent = AtomicU64::new(base_work);
        let results: Vec<Result<Outcome>> = tasks
            .par_iter()
            .enumerate()
            .map(|(ti, task)| {
                if !self.census && ti > best.load(Ordering::Relaxed) {
                    return Ok(Outcome::default());
                }
                if spent.load(Ordering::Relaxed) > self.budget {
                    return Err(Error::BudgetExceeded { needed: spent.load(Ordering::Relaxed) as u128, budget: self.budget });
                }
                let mut e = root.clone();
                let mut chosen = chosen.clone();
                let mut out = Outcome::default();
                let mut last = None;
                for &pos in &task[..depth] {
                    e.push(self.pool[pos]);
                    chosen.push(self.pool[pos]);
                    out.work += 1;
                    last = Some(pos);
                }
                let start = last.map_or(0, |p| p + 1);
                self.dfs(&mut e, &mut chosen, start, need - depth, &mut out);
                spent.fetch_add(out.work, Ordering::Relaxed);
                if out.witness.is_some() {
                    best.fetch_min(ti, Ordering::Relaxed);
                }
                Ok(out)
            })
            .collect();
        let mut total = Outcome { witness: None, hits: 0, work: base_work };
        let mut err = None;
        for r in results {
            match r {
                Ok(o) => {
                    if !self.census && total.witness.is_some() {
                        break;
                    }
                    total.work += o.work;
                    total.hits += o.hits;
                    if total.witness.is_none() {
                        total.witness = o.witness;
                    }
                }
                Err(e) => {
                    if total.witness.is_none() || self.census {
                        err = Some(e);
                    }
                    break;
                }
            }
        }
        if let Some(e) = err {
            return Err(e);
        }
        if !self.census && total.witness.is_some() {
            total.hits = 1;
        }
        total.work = total.work.max(1);
        Ok(total)
    }

    /// Explores completions of `chosen` by `m` more pool positions `>= start`.
    fn dfs<E: Echelon>(&self, e: &mut E, chosen: &mut Vec<usize>, start: usize, m: usize, out: &mut Outcome) -> bool {
        let r = e.rank();
        if r > self.threshold {
            return false;
        }
        let remaining = self.pool.len() - start;
        if remaining < m {
            return false;
        }
        if self.filter.is_none() && r + m <= self.threshold {
            // every completion is a hit
            if out.witness.is_none() {
                let mut w = chosen.clone();
                w.extend_from_slice(&self.pool[start..start + m]);
                out.witness = Some(w);
            }
            out.hits += binomial(remaining, m);
            return !self.census;
        }
        if m == 0 {
            let hit = self.filter.is_none_or(|flt| flt(chosen));
            if hit {
                if out.witness.is_none() {
                    out.witness = Some(chosen.clone());
                }
                out.hits += 1;
                return !self.census;
            }
            return false;
        }
        for pos in start..=self.pool.len() - m {
            let idx = self.pool[pos];
            e.push(idx);
            chosen.push(idx);
            out.work += 1;
            let stop = self.dfs(e, chosen, pos + 1, m - 1, out);
            chosen.pop();
            e.pop();
            if stop {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rank_of_rows;

    fn brute(f: &SmallField, rows: &[Vec<u8>], k: usize, t: usize) -> (u128, Option<Vec<usize>>) {
        let n = rows.len();
        let mut hits = 0u128;
        let mut first = None;
        let mut idx: Vec<usize> = (0..k).collect();
        if k > n {
            return (0, None);
        }
        loop {
            let sub: Vec<&[u8]> = idx.iter().map(|&i| rows[i].as_slice()).collect();
            if rank_of_rows(f, &sub) <= t {
                hits += 1;
                if first.is_none() {
                    first = Some(idx.clone());
                }
            }
            // next combination in lexicographic order
            let mut i = k;
            while i > 0 && idx[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
        (hits, first)
    }

    fn random_rows(q: usize, n: usize, width: usize, seed: u64) -> Vec<Vec<u8>> {
        let mut s = seed;
        (0..n)
            .map(|_| {
                (0..width)
                    .map(|_| {
                        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        ((s >> 33) % q as u64) as u8
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn matches_brute_force() {
        for (q, width, seed) in [(2u64, 4usize, 1u64), (3, 4, 2), (4, 3, 3), (5, 4, 4), (2, 6, 5)] {
            let f = SmallField::new(q).unwrap();
            let rows = random_rows(q as usize, 11, width, seed);
            for k in 1..=5 {
                for t in 0..k {
                    let (hits, first) = brute(&f, &rows, k, t);
                    for census in [true, false] {
                        let s = Search {
                            field: &f,
                            rows: &rows,
                            k,
                            threshold: t,
                            prefix: vec![],
                            pool: (0..rows.len()).collect(),
                            census,
                            filter: None,
                            budget: u64::MAX,
                        };
                        let o = s.run().unwrap();
                        assert_eq!(o.witness, first, "q={q} k={k} t={t}");
                        if census {
                            assert_eq!(o.hits, hits, "q={q} k={k} t={t}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn filter_and_prefix() {
        let f = SmallField::new(3).unwrap();
        let rows = random_rows(3, 10, 3, 9);
        let filter = |s: &[usize]| s.contains(&7);
        let s = Search {
            field: &f,
            rows: &rows,
            k: 4,
            threshold: 3,
            prefix: vec![2],
            pool: (0..10).filter(|&i| i != 2).collect(),
            census: true,
            filter: Some(&filter),
            budget: u64::MAX,
        };
        let o = s.run().unwrap();
        // every 4-subset of 3-dimensional vectors has rank <= 3
        assert_eq!(o.hits, binomial(8, 2));
        assert_eq!(o.witness, Some(vec![2, 0, 1, 7]));
    }

    #[test]
    fn budget_is_enforced() {
        let f = SmallField::new(2).unwrap();
        let rows: Vec<Vec<u8>> = (0..40u32).map(|i| (0..8).map(|j| ((i + 1) >> j & 1) as u8).collect()).collect();
        let s = Search {
            field: &f,
            rows: &rows,
            k: 4,
            threshold: 0,
            prefix: vec![],
            pool: (0..40).collect(),
            census: false,
            filter: None,
            budget: 10,
        };
        assert!(matches!(s.run(), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(63, 4), 595_665);
        assert_eq!(binomial(1364, 3), 422_022_964);
        assert_eq!(binomial(3, 5), 0);
    }
}
