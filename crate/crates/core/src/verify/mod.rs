//! Exhaustive verification of k-generality, (r, s)-set conditions, hyperplane
//! spectra, group actions, completeness and the twisted cubic lemmas.
//!
//! Subset checks run through one depth-first rank search. When a point set
//! carries generators of a group acting transitively on it, universal checks
//! only look at subsets through the first point: the group moves any subset
//! onto one through that point without changing its rank.

mod lemmas;
mod search;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::field::SmallField;
use crate::geometry::{dot, hyperplanes, point_count, projective_points, rank_of_rows, Hyperplane, Matrix, PointSet};
use crate::{Error, Result};

pub use lemmas::{seven_point_lemma, solid_cubic_lemma, solid_cubic_lemma_unreduced};
pub(crate) use search::{binomial, Search};

/// Default cap on rank evaluations.
pub const DEFAULT_BUDGET: u64 = 2_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reduction {
    None,
    FixOnePoint,
    FixThreePoints,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Maximum number of rank evaluations.
    pub budget: u64,
    /// Count every violation instead of stopping at the first.
    pub census: bool,
    /// Use attached transitive groups to fix the first point.
    pub use_group: bool,
}

impl Default for VerifyOptions {
    /// Budget from `EVGEOM_BUDGET` when set, else [`DEFAULT_BUDGET`].
    fn default() -> Self {
        let budget = std::env::var("EVGEOM_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_BUDGET);
        VerifyOptions { budget, census: false, use_group: true }
    }
}

impl VerifyOptions {
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn census(mut self, census: bool) -> Self {
        self.census = census;
        self
    }

    pub fn use_group(mut self, use_group: bool) -> Self {
        self.use_group = use_group;
        self
    }

    fn check_budget(&self, needed: u128) -> Result<()> {
        if needed > self.budget as u128 {
            return Err(Error::BudgetExceeded { needed, budget: self.budget });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub passed: bool,
    /// Coordinates of an offending subset (or covector of an offending hyperplane).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<u8>>>,
    /// Indices of the witness points in the input set.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_indices: Option<Vec<usize>>,
    /// A subset found by an existence check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub example: Option<Vec<Vec<u8>>>,
    /// Points reported as data, e.g. points extending a set.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<Vec<u8>>,
    pub counts: BTreeMap<String, u128>,
    pub work: u64,
    pub reduction: Reduction,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub subchecks: Vec<VerificationReport>,
}

impl VerificationReport {
    fn new(check: impl Into<String>) -> Self {
        VerificationReport {
            check: check.into(),
            passed: true,
            witness: None,
            witness_indices: None,
            example: None,
            points: Vec::new(),
            counts: BTreeMap::new(),
            work: 0,
            reduction: Reduction::None,
            elapsed_ms: 0,
            subchecks: Vec::new(),
        }
    }

    fn count(&mut self, key: &str, value: impl Into<u128>) {
        self.counts.insert(key.to_string(), value.into());
    }

    fn finish(mut self, start: Instant) -> Self {
        self.elapsed_ms = start.elapsed().as_millis() as u64;
        self
    }

    fn set_witness(&mut self, set: &PointSet, idx: Vec<usize>) {
        self.witness = Some(idx.iter().map(|&i| set.points()[i].coords().to_vec()).collect());
        self.witness_indices = Some(idx);
    }

    /// The report with `elapsed_ms` zeroed, for comparisons.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.elapsed_ms = 0;
        r.subchecks = r.subchecks.iter().map(Self::without_timing).collect();
        r
    }
}

/// Size of the orbit of the first point under the attached generators, or
/// `None` without generators.
pub fn base_orbit(set: &PointSet) -> Option<Vec<usize>> {
    if set.generators().is_empty() || set.is_empty() {
        return None;
    }
    let index = set.index_map();
    let mut seen = vec![false; set.len()];
    let mut order = vec![0usize];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in set.generators() {
            let img = set.apply(g, &set.points()[i]);
            let j = index[&img];
            if !seen[j] {
                seen[j] = true;
                order.push(j);
                queue.push_back(j);
            }
        }
    }
    Some(order)
}

fn group_is_transitive(set: &PointSet) -> bool {
    base_orbit(set).is_some_and(|o| o.len() == set.len())
}

/// Plans a subset search, fixing the first point when the attached group is transitive.
fn plan<'a>(
    set: &'a PointSet,
    rows: &'a [Vec<u8>],
    k: usize,
    threshold: usize,
    opts: &VerifyOptions,
    universal: bool,
) -> Result<(Search<'a>, Reduction)> {
    let n = set.len();
    let reduce = opts.use_group && n > 0 && k > 0 && group_is_transitive(set);
    let (prefix, pool, reduction) = if reduce {
        (vec![0], (1..n).collect(), Reduction::FixOnePoint)
    } else {
        (vec![], (0..n).collect(), Reduction::None)
    };
    let search = Search {
        field: set.field(),
        rows,
        k,
        threshold,
        prefix,
        pool,
        census: opts.census,
        filter: None,
        budget: opts.budget,
    };
    if universal {
        opts.check_budget(search.size())?;
    }
    Ok((search, reduction))
}

fn rows_of(set: &PointSet) -> Vec<Vec<u8>> {
    set.points().iter().map(|p| p.coords().to_vec()).collect()
}

fn independent_rank(set: &PointSet, idx: &[usize]) -> usize {
    let rows: Vec<&[u8]> = idx.iter().map(|&i| set.points()[i].coords()).collect();
    rank_of_rows(set.field(), &rows)
}

/// Universal check: every k-subset has rank at least `min_rank`.
fn min_rank_check(
    name: &str,
    set: &PointSet,
    k: usize,
    min_rank: usize,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut rep = VerificationReport::new(name);
    rep.count("k", k as u128);
    rep.count("min_rank", min_rank as u128);
    if min_rank == 0 || k > set.len() {
        rep.count("subsets", 0u128);
        rep.work = 1;
        return Ok(rep.finish(start));
    }
    let rows = rows_of(set);
    let (search, reduction) = plan(set, &rows, k, min_rank - 1, opts, true)?;
    rep.reduction = reduction;
    rep.count("subsets", search.size());
    let out = search.run()?;
    rep.work = out.work;
    if opts.census {
        rep.count("violations", out.hits);
    }
    if let Some(w) = out.witness {
        let r = independent_rank(set, &w);
        if r >= min_rank {
            return Err(Error::Internal(format!("witness {w:?} has rank {r} on recheck")));
        }
        rep.passed = false;
        rep.count("witness_rank", r as u128);
        rep.set_witness(set, w);
    }
    Ok(rep.finish(start))
}

/// True iff every k points of the set are linearly independent.
pub fn is_k_general(set: &PointSet, k: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    if k < 1 || k > set.ambient_dim() + 1 {
        return Err(Error::InvalidArgument(format!(
            "k must lie in 1..={} for PG({}, q)",
            set.ambient_dim() + 1,
            set.ambient_dim()
        )));
    }
    min_rank_check(&format!("{k}-general"), set, k, k, opts)
}

/// Condition (i) of an (r, s)-set: every `r + 1` points span at least an
/// (s+1)-dimensional space, i.e. have rank at least `s + 2`.
pub fn rs_condition_i(set: &PointSet, r: usize, s: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    min_rank_check("rs-condition-i", set, r + 1, s + 2, opts)
}

/// Condition (ii): the set spans its ambient space.
pub fn rs_condition_ii(set: &PointSet) -> VerificationReport {
    let start = Instant::now();
    let mut rep = VerificationReport::new("rs-condition-ii");
    let rank = set.rank();
    rep.count("rank", rank as u128);
    rep.count("ambient_rank", (set.ambient_dim() + 1) as u128);
    rep.passed = rank == set.ambient_dim() + 1;
    rep.work = 1;
    rep.finish(start)
}

/// Condition (iii): some `r + 2` points lie in an (s+1)-dimensional subspace,
/// i.e. have rank at most `s + 2`. The subset found is reported as `example`.
pub fn rs_condition_iii(set: &PointSet, r: usize, s: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut rep = VerificationReport::new("rs-condition-iii");
    let k = r + 2;
    rep.count("k", k as u128);
    rep.count("max_rank", (s + 2) as u128);
    if k > set.len() {
        rep.passed = false;
        rep.work = 1;
        return Ok(rep.finish(start));
    }
    let rows = rows_of(set);
    let mut o = opts.clone();
    o.census = false;
    let (search, reduction) = plan(set, &rows, k, s + 2, &o, false)?;
    rep.reduction = reduction;
    let out = search.run()?;
    rep.work = out.work;
    match out.witness {
        Some(w) => {
            let rk = independent_rank(set, &w);
            if rk > s + 2 {
                return Err(Error::Internal(format!("example {w:?} has rank {rk} on recheck")));
            }
            rep.count("example_rank", rk as u128);
            rep.example = Some(w.iter().map(|&i| set.points()[i].coords().to_vec()).collect());
        }
        None => rep.passed = false,
    }
    Ok(rep.finish(start))
}

/// All three (r, s)-set conditions, reported as sub-checks.
pub fn is_rs_set(set: &PointSet, r: usize, s: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let n = set.ambient_dim();
    if r < 1 || s < 1 || s >= n {
        return Err(Error::InvalidArgument(format!("need r >= 1 and 1 <= s < {n}")));
    }
    let start = Instant::now();
    let mut rep = VerificationReport::new(format!("({r},{s})-set"));
    let subs = vec![rs_condition_i(set, r, s, opts)?, rs_condition_ii(set), rs_condition_iii(set, r, s, opts)?];
    rep.passed = subs.iter().all(|s| s.passed);
    rep.work = subs.iter().map(|s| s.work).sum();
    rep.reduction = subs[0].reduction;
    if !subs[0].passed {
        rep.witness = subs[0].witness.clone();
        rep.witness_indices = subs[0].witness_indices.clone();
    }
    rep.count("size", set.len() as u128);
    rep.subchecks = subs;
    Ok(rep.finish(start))
}

/// Intersection sizes of the set with every hyperplane. When `allowed` is
/// given the check fails on the first hyperplane with another size.
pub fn hyperplane_spectrum(
    set: &PointSet,
    allowed: Option<&[usize]>,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let f = set.field();
    let n = set.ambient_dim();
    let total = point_count(f.q() as u64, n);
    opts.check_budget(total * set.len().max(1) as u128)?;
    let covectors: Vec<Hyperplane> = hyperplanes(f, n, opts.budget)?.collect();
    let rows = rows_of(set);
    let sizes: Vec<usize> = covectors
        .par_iter()
        .map(|h| rows.iter().filter(|x| dot(f, h.covector(), x) == 0).count())
        .collect();
    let mut rep = VerificationReport::new("hyperplane-spectrum");
    let mut hist: BTreeMap<usize, u128> = BTreeMap::new();
    for &s in &sizes {
        *hist.entry(s).or_default() += 1;
    }
    for (s, c) in &hist {
        rep.count(&format!("size_{s}"), *c);
    }
    rep.count("hyperplanes", covectors.len() as u128);
    rep.count("incidences", sizes.iter().map(|&s| s as u128).sum::<u128>());
    if let Some(ok) = allowed {
        if let Some(i) = sizes.iter().position(|s| !ok.contains(s)) {
            rep.passed = false;
            rep.witness = Some(vec![covectors[i].covector().to_vec()]);
        }
    }
    rep.work = (covectors.len() * set.len()).max(1) as u64;
    Ok(rep.finish(start))
}

/// The histogram of a spectrum report as `size -> number of hyperplanes`.
pub fn spectrum_histogram(rep: &VerificationReport) -> BTreeMap<usize, u128> {
    rep.counts
        .iter()
        .filter_map(|(k, v)| k.strip_prefix("size_").and_then(|s| s.parse().ok()).map(|s| (s, *v)))
        .collect()
}

/// First hyperplane (in enumeration order) containing no point of the set.
pub fn find_disjoint_hyperplane(set: &PointSet, opts: &VerifyOptions) -> Result<Option<Hyperplane>> {
    let f = set.field();
    let n = set.ambient_dim();
    opts.check_budget(point_count(f.q() as u64, n) * set.len().max(1) as u128)?;
    let rows = rows_of(set);
    let found = hyperplanes(f, n, opts.budget)?
        .collect::<Vec<_>>()
        .into_par_iter()
        .find_first(|h| rows.iter().all(|x| dot(f, h.covector(), x) != 0));
    Ok(found)
}

/// Report form of [`find_disjoint_hyperplane`]: passes when the set is affine.
pub fn affine_check(set: &PointSet, opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut rep = VerificationReport::new("affine");
    match find_disjoint_hyperplane(set, opts)? {
        Some(h) => rep.example = Some(vec![h.covector().to_vec()]),
        None => rep.passed = false,
    }
    rep.work = point_count(set.q() as u64, set.ambient_dim()).min(u64::MAX as u128) as u64;
    Ok(rep.finish(start))
}

/// Passes iff the attached group has a single orbit on the set.
pub fn is_transitive(set: &PointSet) -> Result<VerificationReport> {
    let start = Instant::now();
    let orbit = base_orbit(set).ok_or(Error::MissingGenerators)?;
    let mut rep = VerificationReport::new("transitive");
    rep.count("orbit_size", orbit.len() as u128);
    rep.count("size", set.len() as u128);
    rep.work = (orbit.len() * set.generators().len()) as u64;
    if orbit.len() != set.len() {
        rep.passed = false;
        let mut inside = vec![false; set.len()];
        for &i in &orbit {
            inside[i] = true;
        }
        let out = inside.iter().position(|&b| !b).expect("orbit is a proper subset");
        rep.set_witness(set, vec![out]);
    }
    Ok(rep.finish(start))
}

/// Order of the projectivity induced by `g`: least `k >= 1` with `g^k` scalar.
pub fn projective_order(f: &SmallField, g: &Matrix, cap: u64) -> Result<u64> {
    if !g.is_invertible(f) {
        return Err(Error::InvalidArgument("matrix is singular".into()));
    }
    let mut power = g.clone();
    for k in 1..=cap {
        if power.scalar_value().is_some() {
            return Ok(k);
        }
        power = power.mul(f, g)?;
    }
    Err(Error::BudgetExceeded { needed: cap as u128 + 1, budget: cap })
}

/// For a set with one generator: the cyclic group it generates acts
/// semiregularly on the set iff the orbit of the first point has the size of
/// the group (the group is abelian, so all stabilizers on an orbit agree).
pub fn semiregular_check(set: &PointSet, opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let g = match set.generators() {
        [g] => g,
        [] => return Err(Error::MissingGenerators),
        _ => return Err(Error::InvalidArgument("semiregularity is checked for cyclic groups".into())),
    };
    let order = projective_order(set.field(), g, opts.budget)?;
    let orbit = base_orbit(set).expect("generators present");
    let mut rep = VerificationReport::new("semiregular");
    rep.count("group_order", order as u128);
    rep.count("orbit_size", orbit.len() as u128);
    rep.passed = orbit.len() as u64 == order;
    rep.work = order + orbit.len() as u64;
    if !rep.passed {
        rep.set_witness(set, vec![0]);
    }
    Ok(rep.finish(start))
}

/// Points `P` outside the set such that the set with `P` added still
/// satisfies condition (i) for `(r, s)`. Passes (the set is complete) when
/// there are none.
pub fn completeness_check(set: &PointSet, r: usize, s: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let f = set.field();
    let n = set.ambient_dim();
    let total = point_count(f.q() as u64, n);
    opts.check_budget(total.saturating_mul(binomial(set.len(), r)))?;
    let base = rs_condition_i(set, r, s, &opts.clone().census(false))?;
    let mut rep = VerificationReport::new("complete");
    rep.count("base_condition_i", base.passed as u128);
    let members: HashMap<Vec<u8>, ()> = set.points().iter().map(|p| (p.coords().to_vec(), ())).collect();
    let candidates: Vec<Vec<u8>> = projective_points(f, n).filter(|v| !members.contains_key(v)).collect();
    let mut rows = rows_of(set);
    rows.push(vec![0; n + 1]);
    let extendable: Vec<Result<(bool, u64)>> = candidates
        .par_iter()
        .map(|p| {
            if !base.passed {
                return Ok((false, 0));
            }
            let mut rows = rows.clone();
            *rows.last_mut().expect("slot for the candidate") = p.clone();
            let search = Search {
                field: f,
                rows: &rows,
                k: r + 1,
                threshold: s + 1,
                prefix: vec![set.len()],
                pool: (0..set.len()).collect(),
                census: false,
                filter: None,
                budget: opts.budget,
            };
            let out = search.run()?;
            Ok((out.witness.is_none(), out.work))
        })
        .collect();
    let mut work = base.work;
    for (p, res) in candidates.iter().zip(extendable) {
        let (ok, w) = res?;
        work += w;
        if ok {
            rep.points.push(p.clone());
        }
    }
    rep.count("candidates", candidates.len() as u128);
    rep.count("extendable", rep.points.len() as u128);
    rep.passed = rep.points.is_empty();
    rep.work = work.max(1);
    Ok(rep.finish(start))
}
