//! Brute-force ground truth for every other module: graded dimensions of
//! (saturated) products of ideal powers sampled on an integer grid, exact
//! multivariate Hilbert-polynomial fits in the binomial-coefficient basis,
//! and the multidegree tables read off their top coefficients.
//!
//! No regularity bound is computed anywhere; stabilization is certified
//! empirically instead. A fit must reproduce every sample on the grid and a
//! refit on the +1-shifted anchor must give the identical top-degree part,
//! otherwise the computation reports instability (and the drivers retry once
//! with doubled offsets before failing loudly).

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::engine::{compositions, MapSpec, MultidegreeTable};
use crate::error::{Error, Result};
use crate::monomial::{count_monomials, Monomial, MonomialIdeal};

/// Sampling window: per-axis offsets N0 and a common width W; the grid is
/// the box {N0+1, ..., N0+W} per axis.
#[derive(Clone, Debug)]
pub struct GridParams {
    pub offsets: Vec<u64>,
    pub width: u64,
}

impl GridParams {
    /// The default window for a spec: every offset r + max(delta) + 2 and
    /// width r + 2, which leaves one spare layer per axis beyond the
    /// anchored interpolation simplices.
    pub fn for_spec(spec: &MapSpec, axes: usize) -> Self {
        let delta_max = *spec.deltas().iter().max().expect("at least one ideal") as u64;
        GridParams {
            offsets: vec![spec.r() as u64 + delta_max + 2; axes],
            width: spec.r() as u64 + 2,
        }
    }

    pub fn axes(&self) -> usize {
        self.offsets.len()
    }

    pub fn doubled(&self) -> Self {
        GridParams {
            offsets: self.offsets.iter().map(|&o| o * 2).collect(),
            width: self.width,
        }
    }

    /// All grid points, in lexicographic order.
    pub fn points(&self) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let mut current: Vec<u64> = self.offsets.iter().map(|&o| o + 1).collect();
        loop {
            out.push(current.clone());
            let mut axis = self.axes();
            loop {
                if axis == 0 {
                    return out;
                }
                axis -= 1;
                if current[axis] < self.offsets[axis] + self.width {
                    current[axis] += 1;
                    for later in axis + 1..self.axes() {
                        current[later] = self.offsets[later] + 1;
                    }
                    break;
                }
            }
        }
    }
}

/// Grid actually used by a fit, reported alongside oracle output.
#[derive(Clone, Debug, serde::Serialize)]
pub struct GridDiagnostics {
    pub offsets: Vec<u64>,
    pub width: u64,
    pub escalated: bool,
}

/// Caching evaluator for the graded dimension functions of one spec.
pub struct Sampler<'a> {
    spec: &'a MapSpec,
    products: HashMap<Vec<u32>, MonomialIdeal>,
    dropped_factors: Vec<Vec<MonomialIdeal>>,
    dropped_products: HashMap<(usize, Vec<u32>), MonomialIdeal>,
    ladders: HashMap<Vec<u32>, Ladder>,
}

struct Ladder {
    rung: Vec<Monomial>,
    height: u64,
    counts: HashMap<u64, u64>,
}

impl<'a> Sampler<'a> {
    pub fn new(spec: &'a MapSpec) -> Self {
        let dropped_factors = (0..spec.nvars())
            .map(|j| {
                spec.ideals()
                    .iter()
                    .map(|i| i.colon_var(j).expect("index in range"))
                    .collect()
            })
            .collect();
        Sampler {
            spec,
            products: HashMap::new(),
            dropped_factors,
            dropped_products: HashMap::new(),
            ladders: HashMap::new(),
        }
    }

    fn product(&mut self, n: &[u32]) -> &MonomialIdeal {
        if !self.products.contains_key(n) {
            let value = match n.iter().position(|&e| e > 0) {
                None => MonomialIdeal::unit(self.spec.nvars()),
                Some(i) => {
                    let mut prev = n.to_vec();
                    prev[i] -= 1;
                    let base = self.product(&prev).clone();
                    base.product(&self.spec.ideals()[i]).expect("same ambient")
                }
            };
            self.products.insert(n.to_vec(), value);
        }
        &self.products[n]
    }

    fn dropped_product(&mut self, j: usize, n: &[u32]) -> &MonomialIdeal {
        let key = (j, n.to_vec());
        if !self.dropped_products.contains_key(&key) {
            let value = match n.iter().position(|&e| e > 0) {
                None => MonomialIdeal::unit(self.spec.nvars()),
                Some(i) => {
                    let mut prev = n.to_vec();
                    prev[i] -= 1;
                    let base = self.dropped_product(j, &prev).clone();
                    base.product(&self.dropped_factors[j][i]).expect("same ambient")
                }
            };
            self.dropped_products.insert(key.clone(), value);
        }
        &self.dropped_products[&key]
    }

    fn graded_degree(&self, n: &[u32]) -> u32 {
        n.iter().zip(self.spec.deltas()).map(|(&e, &d)| e * d).sum()
    }

    /// dim [I_1^{n_1} ... I_p^{n_p}]_{n . delta}: the graded piece of the
    /// product of powers in its generation degree, i.e. the number of
    /// distinct generator products.
    pub fn fiber_dimension(&mut self, n: &[u32]) -> u64 {
        self.product(n).gens().len() as u64
    }

    /// dim [(I_1^{n_1} ... I_p^{n_p} : m^inf)]_{n . delta}. A monomial lies
    /// in the saturation exactly when, for every variable, its image under
    /// dropping that variable lands in the correspondingly dropped product;
    /// the count enumerates the graded piece against those ideals.
    pub fn saturated_fiber_dimension(&mut self, n: &[u32]) -> u64 {
        let degree = self.graded_degree(n);
        let nvars = self.spec.nvars();
        for j in 0..nvars {
            self.dropped_product(j, n);
        }
        let checkers: Vec<&MonomialIdeal> = (0..nvars)
            .map(|j| &self.dropped_products[&(j, n.to_vec())])
            .filter(|k| !k.is_unit())
            .collect();
        if checkers.is_empty() {
            // the saturation is the whole ring
            return count_monomials(degree, self.spec.r());
        }
        let mut count = 0u64;
        let mut exps = vec![0u16; nvars];
        count_saturated(&checkers, degree, 0, &mut exps, &mut count);
        count
    }

    /// dim [I_1^{n_1} ... I_p^{n_p}]_{n_0 + n . delta}: the graph grading.
    /// Computed by laddering the generator set of the product upward one
    /// degree at a time (multiplying by every variable and deduplicating).
    pub fn graph_dimension(&mut self, n0: u64, n: &[u32]) -> u64 {
        if !self.ladders.contains_key(n) {
            let rung = self.product(n).gens().to_vec();
            let mut counts = HashMap::new();
            counts.insert(0, rung.len() as u64);
            self.ladders.insert(n.to_vec(), Ladder { rung, height: 0, counts });
        }
        let nvars = self.spec.nvars();
        let ladder = self.ladders.get_mut(n).expect("just inserted");
        while ladder.height < n0 {
            let mut next: Vec<Monomial> = Vec::with_capacity(ladder.rung.len() * nvars);
            for m in &ladder.rung {
                for v in 0..nvars {
                    let mut exps = m.exps().to_vec();
                    exps[v] += 1;
                    next.push(Monomial::new(exps));
                }
            }
            next.sort_unstable();
            next.dedup();
            ladder.height += 1;
            ladder.counts.insert(ladder.height, next.len() as u64);
            ladder.rung = next;
        }
        ladder.counts[&n0]
    }
}

fn count_saturated(
    checkers: &[&MonomialIdeal],
    remaining: u32,
    var: usize,
    exps: &mut Vec<u16>,
    count: &mut u64,
) {
    let nvars = exps.len();
    if var + 1 == nvars {
        exps[var] = remaining as u16;
        let m = Monomial::new(exps.clone());
        if checkers.iter().all(|k| k.contains(&m)) {
            *count += 1;
        }
        exps[var] = 0;
        return;
    }
    for e in 0..=remaining {
        exps[var] = e as u16;
        count_saturated(checkers, remaining - e, var + 1, exps, count);
    }
    exps[var] = 0;
}

/// One-shot wrappers over a fresh sampler.
pub fn fiber_dimension(spec: &MapSpec, n: &[u32]) -> u64 {
    Sampler::new(spec).fiber_dimension(n)
}

pub fn saturated_fiber_dimension(spec: &MapSpec, n: &[u32]) -> u64 {
    Sampler::new(spec).saturated_fiber_dimension(n)
}

// --- Hilbert fitting --------------------------------------------------------

/// An exact polynomial fit in the binomial-coefficient basis
/// prod_i C(t_i + d_i, d_i), |d| <= degree, so that each top coefficient is
/// read directly as a mixed multiplicity.
#[derive(Clone, Debug)]
pub struct HilbertFit {
    pub axes: usize,
    pub degree: u32,
    pub coeffs: BTreeMap<Vec<u32>, BigRational>,
}

impl HilbertFit {
    pub fn eval(&self, n: &[u64]) -> BigRational {
        let mut acc = BigRational::zero();
        for (d, c) in &self.coeffs {
            acc += c * BigRational::from(binomial_basis(n, d));
        }
        acc
    }

    /// The |d| = degree slice of the coefficients.
    pub fn top_slice(&self) -> BTreeMap<Vec<u32>, BigRational> {
        self.coeffs
            .iter()
            .filter(|(d, _)| d.iter().sum::<u32>() == self.degree)
            .map(|(d, c)| (d.clone(), c.clone()))
            .collect()
    }
}

fn binomial_basis(n: &[u64], d: &[u32]) -> BigInt {
    let mut acc = BigInt::from(1u32);
    for (&ni, &di) in n.iter().zip(d) {
        acc *= big_binomial(ni + di as u64, di as u64);
    }
    acc
}

fn big_binomial(n: u64, k: u64) -> BigInt {
    let mut num = BigInt::from(1u32);
    let mut den = BigInt::from(1u32);
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// All exponent vectors with |d| <= degree over `axes` axes; doubles as the
/// offset pattern of the interpolation simplex.
fn basis_exponents(axes: usize, degree: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in 0..=degree {
        out.extend(compositions(total, axes));
    }
    out
}

/// Interpolate exactly on the simplex anchored at `anchor` and return the
/// basis coefficients.
fn interpolate_at(
    samples: &BTreeMap<Vec<u64>, u64>,
    anchor: &[u64],
    exps: &[Vec<u32>],
) -> Result<BTreeMap<Vec<u32>, BigRational>> {
    let k = exps.len();
    let mut matrix: Vec<Vec<BigRational>> = Vec::with_capacity(k);
    let mut rhs: Vec<BigRational> = Vec::with_capacity(k);
    for offset in exps {
        let point: Vec<u64> = anchor.iter().zip(offset).map(|(&a, &o)| a + o as u64).collect();
        let value = samples.get(&point).ok_or_else(|| {
            Error::Internal(format!("missing sample at grid point {point:?}"))
        })?;
        let row = exps
            .iter()
            .map(|d| BigRational::from(binomial_basis(&point, d)))
            .collect();
        matrix.push(row);
        rhs.push(BigRational::from(BigInt::from(*value)));
    }
    let solution = solve_exact(matrix, rhs)?;
    Ok(exps.iter().cloned().zip(solution).collect())
}

/// Exact Gaussian elimination; the interpolation system is square and must
/// be nonsingular on a poised simplex.
fn solve_exact(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Result<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&i| !a[i][col].is_zero())
            .ok_or_else(|| Error::Internal("singular interpolation system".into()))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = &a[row][col] / &a[col][col];
            for k in col..n {
                let delta = &factor * &a[col][k];
                a[row][k] -= delta;
            }
            let delta = &factor * &b[col];
            b[row] -= delta;
        }
    }
    let mut x = vec![BigRational::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for k in row + 1..n {
            acc -= &a[row][k] * &x[k];
        }
        x[row] = acc / &a[row][row];
    }
    Ok(x)
}

/// Fit a polynomial of total degree <= `degree` that reproduces every sample
/// on the grid, with the shifted-anchor consistency check. Samples must
/// cover the whole grid window.
pub fn fit_hilbert(
    samples: &BTreeMap<Vec<u64>, u64>,
    grid: &GridParams,
    degree: u32,
) -> Result<HilbertFit> {
    if grid.width < degree as u64 + 2 {
        return Err(Error::Validation(format!(
            "grid width {} is too small for a degree-{} fit (need at least degree + 2)",
            grid.width, degree
        )));
    }
    let axes = grid.axes();
    let exps = basis_exponents(axes, degree);
    let anchor_base: Vec<u64> = grid.offsets.iter().map(|&o| o + 1).collect();
    let coeffs = interpolate_at(samples, &anchor_base, &exps)?;
    let fit = HilbertFit { axes, degree, coeffs };

    // the fit must reproduce every sampled value, not just the simplex
    for (point, &value) in samples {
        if fit.eval(point) != BigRational::from(BigInt::from(value)) {
            return Err(Error::Stability(format!(
                "fitted polynomial misses sample at {point:?}: the Hilbert function has not \
                 stabilized on this window"
            )));
        }
    }

    // refit on the +1-shifted anchor; the top-degree part must be identical
    let anchor_shifted: Vec<u64> = grid.offsets.iter().map(|&o| o + 2).collect();
    let shifted_coeffs = interpolate_at(samples, &anchor_shifted, &exps)?;
    let shifted = HilbertFit { axes, degree, coeffs: shifted_coeffs };
    if fit.top_slice() != shifted.top_slice() {
        return Err(Error::Stability(format!(
            "anchor fits disagree on the top-degree part: {:?} vs {:?}",
            fit.top_slice(),
            shifted.top_slice()
        )));
    }
    Ok(fit)
}

/// Fit outcome with the top coefficients certified as nonnegative integers.
#[derive(Clone, Debug)]
pub struct FitOutcome {
    pub fit: HilbertFit,
    pub top: BTreeMap<Vec<u32>, u64>,
    pub grid: GridDiagnostics,
}

fn certify_top(fit: &HilbertFit) -> Result<BTreeMap<Vec<u32>, u64>> {
    let mut out = BTreeMap::new();
    for (d, c) in fit.top_slice() {
        if !c.is_integer() || c.is_negative() {
            return Err(Error::Stability(format!(
                "top coefficient {c} at type {d:?} is not a nonnegative integer"
            )));
        }
        let v = u64::try_from(c.to_integer())
            .map_err(|_| Error::Internal("top coefficient out of u64 range".into()))?;
        out.insert(d, v);
    }
    Ok(out)
}

/// Sample the grid, fit, certify; on instability double the offsets once and
/// retry, then fail loudly.
pub fn fit_top_with_escalation(
    mut sample: impl FnMut(&[u64]) -> Result<u64>,
    grid: &GridParams,
    degree: u32,
) -> Result<FitOutcome> {
    let mut attempt = |grid: &GridParams, escalated: bool| -> Result<FitOutcome> {
        let mut samples = BTreeMap::new();
        for point in grid.points() {
            let value = sample(&point)?;
            samples.insert(point, value);
        }
        let fit = fit_hilbert(&samples, grid, degree)?;
        let top = certify_top(&fit)?;
        Ok(FitOutcome {
            fit,
            top,
            grid: GridDiagnostics {
                offsets: grid.offsets.clone(),
                width: grid.width,
                escalated,
            },
        })
    };
    match attempt(grid, false) {
        Ok(outcome) => Ok(outcome),
        Err(Error::Stability(_)) => attempt(&grid.doubled(), true),
        Err(e) => Err(e),
    }
}

// --- oracle tables -----------------------------------------------------------

/// A multidegree table produced by a Hilbert fit, plus the grid it used.
#[derive(Clone, Debug)]
pub struct OracleTable {
    pub table: MultidegreeTable,
    pub grid: GridDiagnostics,
}

fn table_from_top(
    spec: &MapSpec,
    top: &BTreeMap<Vec<u32>, u64>,
    grid: GridDiagnostics,
) -> Result<OracleTable> {
    let table = MultidegreeTable::from_fn(spec.r(), spec.p(), |d| {
        top.get(d)
            .copied()
            .ok_or_else(|| Error::Internal(format!("fit missing top coefficient for {d:?}")))
    })?;
    Ok(OracleTable { table, grid })
}

/// Mixed multiplicities of the saturated special fiber: the oracle value of
/// deg(map) x multidegree, entry by entry.
pub fn saturated_fiber_table(spec: &MapSpec, grid: Option<GridParams>) -> Result<OracleTable> {
    let base = grid.unwrap_or_else(|| GridParams::for_spec(spec, spec.p()));
    let mut sampler = Sampler::new(spec);
    let outcome = fit_top_with_escalation(
        |n| {
            let n32: Vec<u32> = n.iter().map(|&v| v as u32).collect();
            Ok(sampler.saturated_fiber_dimension(&n32))
        },
        &base,
        spec.r(),
    )?;
    table_from_top(spec, &outcome.top, outcome.grid)
}

/// Mixed multiplicities of the (unsaturated) special fiber.
pub fn special_fiber_table(spec: &MapSpec, grid: Option<GridParams>) -> Result<OracleTable> {
    let base = grid.unwrap_or_else(|| GridParams::for_spec(spec, spec.p()));
    let mut sampler = Sampler::new(spec);
    let outcome = fit_top_with_escalation(
        |n| {
            let n32: Vec<u32> = n.iter().map(|&v| v as u32).collect();
            Ok(sampler.fiber_dimension(&n32))
        },
        &base,
        spec.r(),
    )?;
    table_from_top(spec, &outcome.top, outcome.grid)
}

/// Entrywise difference saturated - unsaturated. All-zero output certifies
/// birationality when the map is generically finite and the special fiber is
/// integrally closed; the caller decides the latter, this function only
/// reports the difference. A negative entry violates the exact sequence
/// relating the two rings and is reported as an internal error.
pub fn birationality_defect(spec: &MapSpec, grid: Option<GridParams>) -> Result<OracleTable> {
    let saturated = saturated_fiber_table(spec, grid.clone())?;
    let unsaturated = special_fiber_table(spec, grid)?;
    let table = MultidegreeTable::from_fn(spec.r(), spec.p(), |d| {
        let s = saturated.table.get(d).expect("composition key");
        let u = unsaturated.table.get(d).expect("composition key");
        s.checked_sub(u).ok_or_else(|| {
            Error::Internal(format!(
                "saturated entry {s} smaller than unsaturated entry {u} at type {d:?}"
            ))
        })
    })?;
    Ok(OracleTable { table, grid: saturated.grid })
}
