//! Top-level multidegree computation for monomial rational maps: the
//! mixed-volume route, base-locus analysis, the degree formula, the upper
//! bound, and multidegrees of the graph.
//!
//! A table entry always stores the product (degree of the map) x (multidegree
//! of the image); the two factors are never separated here. The gcd of the
//! nonzero entries is exposed as a heuristic upper bound on the map degree.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::monomial::{binomial, Colength, Monomial, MonomialIdeal};
use crate::oracle;
use crate::polytope::LatticePolytope;

/// A rational map from P^r to a product of projective spaces, given by
/// equigenerated monomial ideals.
#[derive(Clone, Debug)]
pub struct MapSpec {
    nvars: usize,
    ideals: Vec<MonomialIdeal>,
    deltas: Vec<u32>,
    targets: Vec<usize>,
}

impl MapSpec {
    pub fn new(ideals: Vec<MonomialIdeal>) -> Result<Self> {
        let Some(first) = ideals.first() else {
            return Err(Error::Validation("a map needs at least one ideal".into()));
        };
        let nvars = first.nvars();
        if nvars < 2 {
            return Err(Error::Validation("source must be P^r with r >= 1".into()));
        }
        let mut deltas = Vec::with_capacity(ideals.len());
        let mut targets = Vec::with_capacity(ideals.len());
        for (i, ideal) in ideals.iter().enumerate() {
            if ideal.nvars() != nvars {
                return Err(Error::AmbientMismatch(nvars, ideal.nvars()));
            }
            if ideal.is_zero() {
                return Err(Error::ZeroIdeal);
            }
            let Some(delta) = ideal.equigenerated_degree() else {
                return Err(Error::Validation(format!(
                    "ideal {} is not equigenerated",
                    i + 1
                )));
            };
            if delta == 0 {
                return Err(Error::Validation(format!(
                    "ideal {} is the unit ideal; generation degree must be >= 1",
                    i + 1
                )));
            }
            deltas.push(delta);
            targets.push(ideal.gens().len() - 1);
        }
        Ok(MapSpec { nvars, ideals, deltas, targets })
    }

    /// Source dimension r.
    pub fn r(&self) -> u32 {
        self.nvars as u32 - 1
    }

    /// Number of target factors.
    pub fn p(&self) -> usize {
        self.ideals.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ideals(&self) -> &[MonomialIdeal] {
        &self.ideals
    }

    pub fn deltas(&self) -> &[u32] {
        &self.deltas
    }

    /// Target dimensions m_i (one less than the generator counts).
    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    /// I_1^{n_1} ... I_p^{n_p}, minimalized.
    pub fn product_of_powers(&self, n: &[u32]) -> MonomialIdeal {
        assert_eq!(n.len(), self.p());
        let mut acc = MonomialIdeal::unit(self.nvars);
        for (ideal, &e) in self.ideals.iter().zip(n) {
            for _ in 0..e {
                acc = acc.product(ideal).expect("same ambient");
            }
        }
        acc
    }

    /// The product I_1 ... I_p whose vanishing locus is the base locus.
    pub fn base_ideal(&self) -> MonomialIdeal {
        self.product_of_powers(&vec![1; self.p()])
    }

    /// delta_1^{d_1} ... delta_p^{d_p}.
    pub fn delta_power(&self, d: &[u32]) -> Result<u64> {
        let mut acc: u128 = 1;
        for (&delta, &di) in self.deltas.iter().zip(d) {
            for _ in 0..di {
                acc = acc
                    .checked_mul(delta as u128)
                    .ok_or_else(|| Error::Validation("delta power overflow".into()))?;
            }
        }
        u64::try_from(acc).map_err(|_| Error::Validation("delta power overflow".into()))
    }
}

/// All compositions of `r` into `p` nonnegative parts, first part descending.
pub fn compositions(r: u32, p: usize) -> Vec<Vec<u32>> {
    fn rec(remaining: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for v in (0..=remaining).rev() {
            prefix.push(v);
            rec(remaining - v, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if p == 0 {
        return out;
    }
    rec(r, p, &mut Vec::new(), &mut out);
    out
}

/// Multidegree table: one nonnegative integer per type vector d with
/// |d| = r.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultidegreeTable {
    r: u32,
    p: usize,
    entries: BTreeMap<Vec<u32>, u64>,
}

impl MultidegreeTable {
    pub fn from_fn(r: u32, p: usize, mut f: impl FnMut(&[u32]) -> Result<u64>) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for d in compositions(r, p) {
            let v = f(&d)?;
            entries.insert(d, v);
        }
        Ok(MultidegreeTable { r, p, entries })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn get(&self, d: &[u32]) -> Option<u64> {
        self.entries.get(d).copied()
    }

    /// Entries in display order: first coordinate descending.
    pub fn iter_ordered(&self) -> impl Iterator<Item = (Vec<u32>, u64)> + '_ {
        compositions(self.r, self.p).into_iter().map(move |d| {
            let v = self.entries[&d];
            (d, v)
        })
    }

    /// gcd of the nonzero entries: a heuristic upper bound for the degree
    /// of the map, which divides every entry.
    pub fn gcd_of_entries(&self) -> u64 {
        self.entries.values().fold(0u64, |acc, &v| gcd_u64(acc, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(|&v| v == 0)
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Projected Newton polytopes pi(Gamma(I_i)) of all factors.
pub fn projected_newton_polytopes(spec: &MapSpec) -> Result<Vec<LatticePolytope>> {
    spec.ideals()
        .iter()
        .map(|i| LatticePolytope::newton(i)?.project_away_first())
        .collect()
}

/// The multidegree table of a monomial map, via mixed volumes: the entry of
/// type d is the mixed volume of the multiset with d_i copies of
/// pi(Gamma(I_i)). Volumes of repeated Minkowski sums are cached across
/// table entries.
pub fn monomial_multidegrees(spec: &MapSpec) -> Result<MultidegreeTable> {
    let projected = projected_newton_polytopes(spec)?;
    let r = spec.r();
    let p = spec.p();
    let mut volume_cache: HashMap<Vec<u32>, BigRational> = HashMap::new();
    MultidegreeTable::from_fn(r, p, |d| {
        let mut acc = BigRational::from_integer(0.into());
        let mut c = vec![0u32; p];
        loop {
            let mut pos = 0;
            loop {
                if pos == p {
                    break;
                }
                if c[pos] < d[pos] {
                    c[pos] += 1;
                    for slot in c.iter_mut().take(pos) {
                        *slot = 0;
                    }
                    break;
                }
                pos += 1;
            }
            if pos == p {
                break;
            }
            let vol = match volume_cache.get(&c) {
                Some(v) => v.clone(),
                None => {
                    let v = dilated_sum_volume(&projected, &c)?;
                    volume_cache.insert(c.clone(), v.clone());
                    v
                }
            };
            let chosen: u32 = c.iter().sum();
            let mut weight = num_bigint::BigInt::from(1u32);
            for (&di, &ci) in d.iter().zip(&c) {
                weight *= num_bigint::BigInt::from(binomial(di as u64, ci as u64));
            }
            if (r - chosen) % 2 == 1 {
                weight = -weight;
            }
            acc += BigRational::from(weight) * vol;
        }
        if !acc.is_integer() || acc.is_negative() {
            return Err(Error::Internal(format!(
                "mixed volume for type {d:?} evaluated to {acc}, expected a nonnegative integer"
            )));
        }
        u64::try_from(acc.to_integer())
            .map_err(|_| Error::Internal("mixed volume out of u64 range".into()))
    })
}

fn dilated_sum_volume(polys: &[LatticePolytope], coeffs: &[u32]) -> Result<BigRational> {
    let mut sum: Option<LatticePolytope> = None;
    for (poly, &c) in polys.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        let scaled = poly.dilate(c);
        sum = Some(match sum {
            None => scaled,
            Some(acc) => acc.minkowski_sum(&scaled)?,
        });
    }
    Ok(sum.expect("nonzero coefficient vector").volume())
}

/// Generic finiteness, decided polytopally: the map is generically finite
/// onto its image exactly when the Minkowski sum of all projected Newton
/// polytopes is full-dimensional in R^r.
pub fn generically_finite(spec: &MapSpec) -> Result<bool> {
    let projected = projected_newton_polytopes(spec)?;
    let mut sum: Option<LatticePolytope> = None;
    for poly in projected {
        sum = Some(match sum {
            None => poly,
            Some(acc) => acc.minkowski_sum(&poly)?,
        });
    }
    let sum = sum.expect("at least one ideal");
    Ok(sum.affine_rank() == spec.r() as usize)
}

/// Where the map is undefined: combinatorial analysis of V(I_1 ... I_p).
#[derive(Clone, Debug)]
pub struct BaseLocusReport {
    /// Dimension of the base locus; -1 when empty.
    pub dimension: i64,
    /// Coordinate-point indices j (the point where only x_j is nonzero),
    /// populated when the dimension is <= 0.
    pub points: Vec<usize>,
    /// Minimal primes, each listed as the set of variable indices
    /// generating it.
    pub minimal_primes: Vec<Vec<usize>>,
    /// Mixed multiplicities e_d of the base locus; only computed on request
    /// and only when the dimension is <= 0.
    pub mixed_mults: Option<BTreeMap<Vec<u32>, u64>>,
}

/// Minimal primes of the product ideal: the union of the factors' minimal
/// primes, minimalized (V(I_1 ... I_p) = V(I_1) u ... u V(I_p)).
fn product_minimal_primes(spec: &MapSpec) -> Vec<Vec<usize>> {
    let mut masks: Vec<u32> = Vec::new();
    for ideal in spec.ideals() {
        for prime in ideal.minimal_primes() {
            let mut mask = 0u32;
            for v in prime {
                mask |= 1 << v;
            }
            masks.push(mask);
        }
    }
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks.dedup();
    let mut kept: Vec<u32> = Vec::new();
    for m in masks {
        if !kept.iter().any(|k| k & m == *k) {
            kept.push(m);
        }
    }
    kept.sort_unstable();
    kept.into_iter()
        .map(|mask| (0..spec.nvars()).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

pub fn base_locus(spec: &MapSpec) -> BaseLocusReport {
    let minimal_primes = product_minimal_primes(spec);
    let r = spec.r() as i64;
    let dimension = minimal_primes
        .iter()
        .map(|p| r - p.len() as i64)
        .max()
        .unwrap_or(-1);
    let mut points = Vec::new();
    if dimension <= 0 {
        for prime in &minimal_primes {
            if prime.len() as i64 == r {
                let j = (0..spec.nvars())
                    .find(|i| !prime.contains(i))
                    .expect("height-r prime misses one variable");
                points.push(j);
            }
        }
        points.sort_unstable();
    }
    BaseLocusReport { dimension, points, minimal_primes, mixed_mults: None }
}

/// Base-locus report with the mixed multiplicities filled in; requires the
/// base locus to have dimension <= 0.
pub fn base_locus_with_multiplicities(spec: &MapSpec) -> Result<BaseLocusReport> {
    let mut report = base_locus(spec);
    report.mixed_mults = Some(base_locus_mixed_multiplicities(spec)?);
    Ok(report)
}

/// Mixed multiplicities of a zero-dimensional base locus: at each coordinate
/// base point the local colengths of products of powers grow like a
/// polynomial of total degree r, and its normalized top coefficients are the
/// local mixed multiplicities; the table sums them over the points.
pub fn base_locus_mixed_multiplicities(spec: &MapSpec) -> Result<BTreeMap<Vec<u32>, u64>> {
    let report = base_locus(spec);
    if report.dimension > 0 {
        return Err(Error::Hypothesis(format!(
            "base locus has dimension {}; offending minimal prime: {:?}",
            report.dimension,
            report
                .minimal_primes
                .iter()
                .min_by_key(|p| p.len())
                .expect("positive dimension implies a prime")
        )));
    }
    let mut total: BTreeMap<Vec<u32>, u64> = compositions(spec.r(), spec.p())
        .into_iter()
        .map(|d| (d, 0))
        .collect();
    for &j in &report.points {
        let point_table = local_mixed_multiplicities(spec, j)?;
        for (d, v) in point_table {
            *total.get_mut(&d).expect("composition key") += v;
        }
    }
    Ok(total)
}

/// Local mixed multiplicities at the coordinate point where only x_j is
/// nonzero, by fitting the colength function on the standard grid.
fn local_mixed_multiplicities(spec: &MapSpec, j: usize) -> Result<BTreeMap<Vec<u32>, u64>> {
    let grid = oracle::GridParams::for_spec(spec, spec.p());
    let mut power_cache: HashMap<Vec<u32>, MonomialIdeal> = HashMap::new();
    let outcome = oracle::fit_top_with_escalation(
        |n| {
            let n32: Vec<u32> = n.iter().map(|&v| v as u32).collect();
            let product = power_cache
                .entry(n32.clone())
                .or_insert_with(|| spec.product_of_powers(&n32));
            match product.local_colength(j)? {
                Colength::Finite(v) => Ok(v),
                Colength::Infinite => Err(Error::Internal(format!(
                    "infinite colength at claimed zero-dimensional base point x_{j}"
                ))),
            }
        },
        &grid,
        spec.r(),
    )?;
    Ok(outcome.top)
}

/// The degree-formula table: entry(d) = delta^d - e_d(base locus). Requires
/// a base locus of dimension <= 0.
pub fn degree_formula_table(spec: &MapSpec) -> Result<MultidegreeTable> {
    let mults = base_locus_mixed_multiplicities(spec)?;
    MultidegreeTable::from_fn(spec.r(), spec.p(), |d| {
        let bound = spec.delta_power(d)?;
        let e = mults[d];
        bound.checked_sub(e).ok_or_else(|| {
            Error::Internal(format!(
                "base-locus multiplicity {e} exceeds delta power {bound} at type {d:?}"
            ))
        })
    })
}

/// Check that every entry respects the general upper bound delta^d.
pub fn upper_bound_holds(spec: &MapSpec, table: &MultidegreeTable) -> Result<bool> {
    for (d, v) in table.iter_ordered() {
        if v > spec.delta_power(&d)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Multidegrees of the graph of the map, indexed by (d_0, d) with
/// d_0 + |d| = r: top coefficients of the Hilbert function
/// (n_0, n) -> dim [I^n]_{n_0 + n.delta} of the blow-up algebra.
#[derive(Clone, Debug)]
pub struct GraphTable {
    pub r: u32,
    pub p: usize,
    pub entries: BTreeMap<Vec<u32>, u64>,
    /// Whether the d_0 = 0 slice agrees with the saturated-fiber table.
    pub slice_matches_saturated: bool,
    pub grid: oracle::GridDiagnostics,
}

impl GraphTable {
    /// The d_0 = 0 slice as a plain multidegree table.
    pub fn zero_slice(&self) -> MultidegreeTable {
        MultidegreeTable::from_fn(self.r, self.p, |d| {
            let mut key = Vec::with_capacity(self.p + 1);
            key.push(0);
            key.extend_from_slice(d);
            Ok(self.entries[&key])
        })
        .expect("slice keys present")
    }
}

pub fn graph_multidegrees(spec: &MapSpec, grid: Option<oracle::GridParams>) -> Result<GraphTable> {
    let base = grid.unwrap_or_else(|| oracle::GridParams::for_spec(spec, spec.p() + 1));
    let mut sampler = oracle::Sampler::new(spec);
    let outcome = oracle::fit_top_with_escalation(
        |n| {
            let n32: Vec<u32> = n[1..].iter().map(|&v| v as u32).collect();
            Ok(sampler.graph_dimension(n[0], &n32))
        },
        &base,
        spec.r(),
    )?;
    let saturated = oracle::saturated_fiber_table(spec, None)?;
    let mut slice_matches = true;
    for d in compositions(spec.r(), spec.p()) {
        let mut key = Vec::with_capacity(spec.p() + 1);
        key.push(0);
        key.extend_from_slice(&d);
        if outcome.top[&key] != saturated.table.get(&d).expect("composition key") {
            slice_matches = false;
        }
    }
    Ok(GraphTable {
        r: spec.r(),
        p: spec.p(),
        entries: outcome.top,
        slice_matches_saturated: slice_matches,
        grid: outcome.grid,
    })
}

/// Build a spec from raw generator exponent rows.
pub fn spec_from_exponents(nvars: usize, ideals: &[Vec<Vec<u16>>]) -> Result<MapSpec> {
    let ideals = ideals
        .iter()
        .map(|gens| {
            MonomialIdeal::new(nvars, gens.iter().map(|g| Monomial::new(g.clone())).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    MapSpec::new(ideals)
}
