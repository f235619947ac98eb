//! Exact arithmetic on monomial ideals in a standard graded polynomial ring.
//!
//! Ideals are stored as their unique minimal monomial generating set (an
//! antichain under componentwise divisibility). The unit ideal is the single
//! zero exponent vector, the zero ideal is the empty set; with these
//! representations the product/intersection identities hold without special
//! cases.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A monomial as a dense exponent vector over a fixed variable count.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u16>,
}

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        Monomial { exps }
    }

    /// The constant monomial 1.
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// Componentwise maximum, the least common multiple.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    /// Zero out the exponent of variable `j` (divide out the largest power).
    pub fn drop_var(&self, j: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[j] = 0;
        Monomial { exps }
    }

    /// Indices of variables with nonzero exponent, as a bitmask.
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Reduce a generator list to the divisibility antichain, sorted canonically.
/// Same-degree monomials never divide each other properly, so each candidate
/// is only tested against kept generators of strictly smaller degree.
fn minimalize_gens(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    let mut strictly_below = 0; // kept entries with degree < current degree
    let mut current_degree = u32::MAX;
    for g in gens {
        let deg = g.degree();
        if deg != current_degree {
            strictly_below = kept.len();
            current_degree = deg;
        }
        if !kept[..strictly_below].iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

/// A monomial ideal, kept in minimal-generator form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

/// Colength of a dehomogenized ideal: the quotient is either a finite count
/// of standard monomials or infinite-dimensional.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Colength {
    Finite(u64),
    Infinite,
}

impl MonomialIdeal {
    /// Build the ideal generated by `gens`, minimalizing the generating set.
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Result<Self> {
        for g in &gens {
            if g.nvars() != nvars {
                return Err(Error::MixedLengths(nvars, g.nvars()));
            }
        }
        Ok(MonomialIdeal { nvars, gens: minimalize_gens(gens) })
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: Vec::new() }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: vec![Monomial::one(nvars)] }
    }

    /// The irrelevant ideal (x_0, ..., x_r).
    pub fn irrelevant(nvars: usize) -> Self {
        let gens = (0..nvars)
            .map(|i| {
                let mut e = vec![0; nvars];
                e[i] = 1;
                Monomial::new(e)
            })
            .collect();
        MonomialIdeal { nvars, gens: minimalize_gens(gens) }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    /// Membership test by divisibility against the minimal generators.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// All generators share one total degree; returns it if so.
    pub fn equigenerated_degree(&self) -> Option<u32> {
        let first = self.gens.first()?.degree();
        self.gens.iter().all(|g| g.degree() == first).then_some(first)
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if self.nvars != other.nvars {
            return Err(Error::AmbientMismatch(self.nvars, other.nvars));
        }
        let mut prods = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                prods.push(a.mul(b));
            }
        }
        Ok(MonomialIdeal { nvars: self.nvars, gens: minimalize_gens(prods) })
    }

    /// n-fold product; n = 0 gives the unit ideal.
    pub fn pow(&self, n: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.nvars);
        for _ in 0..n {
            acc = acc.product(self).expect("same ambient");
        }
        acc
    }

    /// The colon ideal (I : x_j^inf): generators with their x_j-exponent
    /// set to zero, minimalized.
    pub fn colon_var(&self, j: usize) -> Result<MonomialIdeal> {
        if j >= self.nvars {
            return Err(Error::VariableIndex { index: j, nvars: self.nvars });
        }
        let gens = self.gens.iter().map(|g| g.drop_var(j)).collect();
        Ok(MonomialIdeal { nvars: self.nvars, gens: minimalize_gens(gens) })
    }

    /// Intersection via pairwise lcms of generators.
    pub fn intersection(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if self.nvars != other.nvars {
            return Err(Error::AmbientMismatch(self.nvars, other.nvars));
        }
        let mut lcms = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                lcms.push(a.lcm(b));
            }
        }
        Ok(MonomialIdeal { nvars: self.nvars, gens: minimalize_gens(lcms) })
    }

    /// Saturation (I : m^inf) with respect to the irrelevant ideal,
    /// computed as the intersection of the per-variable colon ideals.
    pub fn saturation(&self) -> MonomialIdeal {
        let mut acc: Option<MonomialIdeal> = None;
        for j in 0..self.nvars {
            let colon = self.colon_var(j).expect("index in range");
            acc = Some(match acc {
                None => colon,
                Some(prev) => prev.intersection(&colon).expect("same ambient"),
            });
        }
        acc.unwrap_or_else(|| self.clone())
    }

    /// Count of monomials of total degree `d` lying in the ideal, by
    /// inclusion-exclusion over generator lcms. Distinct subsets with equal
    /// lcm collapse into one term, and lcms of degree above `d` are pruned.
    pub fn dim_graded_piece(&self, d: u32) -> u64 {
        let r = self.nvars as u32 - 1;
        let mut terms: HashMap<Monomial, i64> = HashMap::new();
        for g in &self.gens {
            if g.degree() > d {
                continue;
            }
            let mut updates: Vec<(Monomial, i64)> = vec![(g.clone(), 1)];
            for (m, c) in &terms {
                let l = m.lcm(g);
                if l.degree() <= d {
                    updates.push((l, -c));
                }
            }
            for (m, c) in updates {
                *terms.entry(m).or_insert(0) += c;
            }
            terms.retain(|_, c| *c != 0);
        }
        let mut total: i64 = 0;
        for (m, c) in &terms {
            total += c * count_monomials(d - m.degree(), r) as i64;
        }
        debug_assert!(total >= 0);
        total as u64
    }

    /// Same count by brute-force staircase enumeration; the independent
    /// route used to cross-check `dim_graded_piece`.
    pub fn dim_graded_piece_enum(&self, d: u32) -> u64 {
        let mut count = 0u64;
        let mut exps = vec![0u16; self.nvars];
        self.enum_count(d, 0, &mut exps, &mut count);
        count
    }

    fn enum_count(&self, remaining: u32, var: usize, exps: &mut Vec<u16>, count: &mut u64) {
        if var + 1 == self.nvars {
            exps[var] = remaining as u16;
            let m = Monomial::new(exps.clone());
            if self.contains(&m) {
                *count += 1;
            }
            exps[var] = 0;
            return;
        }
        for e in 0..=remaining {
            exps[var] = e as u16;
            self.enum_count(remaining - e, var + 1, exps, count);
        }
        exps[var] = 0;
    }

    /// Length of the local quotient at the coordinate point where only x_j
    /// is nonzero: dehomogenize x_j = 1 and count standard monomials in the
    /// remaining variables. Infinite when the dehomogenized ideal is not
    /// cofinite (some remaining variable has no pure power in it).
    pub fn local_colength(&self, j: usize) -> Result<Colength> {
        if j >= self.nvars {
            return Err(Error::VariableIndex { index: j, nvars: self.nvars });
        }
        let dehom = self.colon_var(j)?;
        if dehom.is_unit() {
            return Ok(Colength::Finite(0));
        }
        if dehom.is_zero() {
            return Ok(Colength::Infinite);
        }
        let vars: Vec<usize> = (0..self.nvars).filter(|&k| k != j).collect();
        // pure-power bound per variable; absence of one means not cofinite
        let mut bounds = Vec::with_capacity(vars.len());
        for &k in &vars {
            let mask = 1u32 << k;
            let bound = dehom
                .gens
                .iter()
                .filter(|g| g.support_mask() == mask)
                .map(|g| g.exp(k))
                .min();
            match bound {
                Some(b) => bounds.push(b),
                None => return Ok(Colength::Infinite),
            }
        }
        // count standard monomials: iterate all but the last variable inside
        // the pure-power box, and resolve the last coordinate by threshold
        let last = *vars.last().expect("at least one variable");
        let prefix = &vars[..vars.len() - 1];
        let mut total = 0u64;
        let mut assignment = vec![0u16; self.nvars];
        count_standard(&dehom, prefix, &bounds, last, 0, &mut assignment, &mut total);
        Ok(Colength::Finite(total))
    }

    /// Minimal primes as minimal hitting sets of the generator supports.
    /// Each prime is the set of variable indices it is generated by.
    pub fn minimal_primes(&self) -> Vec<Vec<usize>> {
        let supports: Vec<u32> = self.gens.iter().map(|g| g.support_mask()).collect();
        if supports.iter().any(|&s| s == 0) {
            return Vec::new(); // unit ideal: empty variety
        }
        let nv = self.nvars;
        let mut subsets: Vec<u32> = (0..(1u32 << nv)).collect();
        subsets.sort_by_key(|s| s.count_ones());
        let mut found: Vec<u32> = Vec::new();
        for s in subsets {
            if found.iter().any(|f| f & s == *f) {
                continue;
            }
            if supports.iter().all(|sup| sup & s != 0) {
                found.push(s);
            }
        }
        found.sort();
        found
            .into_iter()
            .map(|mask| (0..nv).filter(|i| mask >> i & 1 == 1).collect())
            .collect()
    }
}

fn count_standard(
    ideal: &MonomialIdeal,
    prefix: &[usize],
    bounds: &[u16],
    last: usize,
    depth: usize,
    assignment: &mut Vec<u16>,
    total: &mut u64,
) {
    if depth == prefix.len() {
        // threshold: least x_last exponent among generators whose other
        // exponents fit under the prefix assignment
        let t = ideal
            .gens
            .iter()
            .filter(|g| prefix.iter().all(|&k| g.exp(k) <= assignment[k]))
            .map(|g| g.exp(last))
            .min();
        if let Some(t) = t {
            *total += t as u64;
        }
        return;
    }
    let var = prefix[depth];
    for e in 0..bounds[depth] {
        assignment[var] = e;
        count_standard(ideal, prefix, bounds, last, depth + 1, assignment, total);
    }
    assignment[var] = 0;
}

/// Number of monomials of total degree `d` in `r + 1` variables.
pub fn count_monomials(d: u32, r: u32) -> u64 {
    binomial(d as u64 + r as u64, r as u64)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(exps: &[u16]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    fn ideal(nvars: usize, gens: &[&[u16]]) -> MonomialIdeal {
        MonomialIdeal::new(nvars, gens.iter().map(|g| mono(g)).collect()).unwrap()
    }

    #[test]
    fn minimalize_drops_multiples() {
        // {x^2, x^2 y} -> {x^2}
        let i = ideal(2, &[&[2, 0], &[2, 1]]);
        assert_eq!(i.gens(), &[mono(&[2, 0])]);
    }

    #[test]
    fn minimalize_keeps_antichain() {
        // (xy, xz, yz) is already minimal
        let i = ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(i.gens().len(), 3);
    }

    #[test]
    fn minimalize_empty_is_zero() {
        let i = MonomialIdeal::new(3, vec![]).unwrap();
        assert!(i.is_zero());
    }

    #[test]
    fn minimalize_mixed_lengths_error() {
        let err = MonomialIdeal::new(2, vec![mono(&[1, 0, 0])]);
        assert!(matches!(err, Err(Error::MixedLengths(..))));
    }

    #[test]
    fn product_of_principal_ideals() {
        let x = ideal(2, &[&[1, 0]]);
        let y = ideal(2, &[&[0, 1]]);
        assert_eq!(x.product(&y).unwrap().gens(), &[mono(&[1, 1])]);
    }

    #[test]
    fn square_of_linear_ideal() {
        let m = MonomialIdeal::irrelevant(2);
        let sq = m.product(&m).unwrap();
        assert_eq!(sq.gens(), &[mono(&[0, 2]), mono(&[1, 1]), mono(&[2, 0])]);
    }

    #[test]
    fn product_nine_pairwise() {
        // (x^2,y^2,z^2) * (xy,xz,yz): all 9 products are degree 4 and distinct
        let a = ideal(3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        let b = ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        let p = a.product(&b).unwrap();
        assert_eq!(p.gens().len(), 9);
    }

    #[test]
    fn product_ambient_mismatch() {
        let a = ideal(2, &[&[1, 0]]);
        let b = ideal(3, &[&[1, 0, 0]]);
        assert!(matches!(a.product(&b), Err(Error::AmbientMismatch(..))));
    }

    #[test]
    fn power_zero_is_unit() {
        let m = MonomialIdeal::irrelevant(2);
        assert!(m.pow(0).is_unit());
    }

    #[test]
    fn power_two_of_irrelevant() {
        let m = MonomialIdeal::irrelevant(2);
        assert_eq!(m.pow(2).gens().len(), 3);
    }

    #[test]
    fn power_of_triangle_ideal() {
        // (xy,xz,yz)^2 has the 6 distinct degree-4 products
        let b = ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        let sq = b.pow(2);
        assert_eq!(sq, b.product(&b).unwrap());
        assert_eq!(sq.gens().len(), 6);
    }

    #[test]
    fn colon_var_drops_exponents() {
        // (x^2 y, z) : y^inf = (x^2, z)
        let i = ideal(3, &[&[2, 1, 0], &[0, 0, 1]]);
        let c = i.colon_var(1).unwrap();
        assert_eq!(c, ideal(3, &[&[2, 0, 0], &[0, 0, 1]]));
    }

    #[test]
    fn colon_var_to_unit() {
        let m = MonomialIdeal::irrelevant(3);
        assert!(m.colon_var(0).unwrap().is_unit());
    }

    #[test]
    fn colon_var_minimalizes() {
        // (xy^2, xw^2, yzw, z^2 w) : w^inf = (x, yz, z^2)
        let i = ideal(4, &[&[1, 2, 0, 0], &[1, 0, 0, 2], &[0, 1, 1, 1], &[0, 0, 2, 1]]);
        let c = i.colon_var(3).unwrap();
        assert_eq!(c, ideal(4, &[&[1, 0, 0, 0], &[0, 1, 1, 0], &[0, 0, 2, 0]]));
    }

    #[test]
    fn colon_var_index_error() {
        let i = ideal(2, &[&[1, 0]]);
        assert!(matches!(i.colon_var(2), Err(Error::VariableIndex { .. })));
    }

    #[test]
    fn intersection_of_principal() {
        let x = ideal(2, &[&[1, 0]]);
        let y = ideal(2, &[&[0, 1]]);
        assert_eq!(x.intersection(&y).unwrap().gens(), &[mono(&[1, 1])]);
    }

    #[test]
    fn intersection_idempotent() {
        let m = MonomialIdeal::irrelevant(2);
        assert_eq!(m.intersection(&m).unwrap(), m);
    }

    #[test]
    fn intersection_lcm_pairs() {
        // (x^2, y) cap (x, y^2) = (x^2, xy, y^2)
        let a = ideal(2, &[&[2, 0], &[0, 1]]);
        let b = ideal(2, &[&[1, 0], &[0, 2]]);
        let c = a.intersection(&b).unwrap();
        assert_eq!(c, ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]));
    }

    #[test]
    fn saturation_of_irrelevant_is_unit() {
        let m = MonomialIdeal::irrelevant(3);
        assert!(m.saturation().is_unit());
    }

    #[test]
    fn saturation_of_x2_xy() {
        // sat((x^2, xy)) = (x) in 2 variables
        let i = ideal(2, &[&[2, 0], &[1, 1]]);
        assert_eq!(i.saturation(), ideal(2, &[&[1, 0]]));
    }

    #[test]
    fn saturation_contains_and_idempotent() {
        let i = ideal(3, &[&[2, 1, 0], &[0, 3, 1], &[1, 0, 2]]);
        let s = i.saturation();
        assert!(s.contains_ideal(&i));
        assert_eq!(s.saturation(), s);
    }

    #[test]
    fn graded_piece_of_unit() {
        let u = MonomialIdeal::unit(3);
        assert_eq!(u.dim_graded_piece(3), 10);
    }

    #[test]
    fn graded_piece_squares() {
        let i = ideal(3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        assert_eq!(i.dim_graded_piece(2), 3);
        assert_eq!(i.dim_graded_piece(3), 9);
        assert_eq!(i.dim_graded_piece_enum(2), 3);
        assert_eq!(i.dim_graded_piece_enum(3), 9);
    }

    #[test]
    fn graded_piece_of_zero() {
        let z = MonomialIdeal::zero(3);
        assert_eq!(z.dim_graded_piece(5), 0);
        assert_eq!(z.dim_graded_piece_enum(5), 0);
    }

    #[test]
    fn local_colength_at_maximal_point() {
        // (x,y,z) in P^3, dehomogenized at w
        let i = ideal(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        assert_eq!(i.local_colength(3).unwrap(), Colength::Finite(1));
    }

    #[test]
    fn local_colength_triangle_ideal() {
        // (xy,xz,yz) at z: dehomogenizes to (x,y)
        let i = ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(i.local_colength(2).unwrap(), Colength::Finite(1));
    }

    #[test]
    fn local_colength_unit_after_dehomogenization() {
        // (x^2,y^2,z^2) at z: z^2 becomes 1
        let i = ideal(3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        assert_eq!(i.local_colength(2).unwrap(), Colength::Finite(0));
    }

    #[test]
    fn local_colength_infinite() {
        // (xy) at z: dehomogenized (xy) is not cofinite
        let i = ideal(3, &[&[1, 1, 0]]);
        assert_eq!(i.local_colength(2).unwrap(), Colength::Infinite);
    }

    #[test]
    fn local_colength_power_growth() {
        // colength of (x,y)^n in 2 variables is binom(n+1, 2)
        let i = ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        for n in 1..6u32 {
            let p = i.pow(n);
            let expected = (n as u64) * (n as u64 + 1) / 2;
            assert_eq!(p.local_colength(2).unwrap(), Colength::Finite(expected));
        }
    }

    #[test]
    fn minimal_primes_triangle() {
        // (xy, xz, yz): minimal primes (x,y), (x,z), (y,z)
        let i = ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(i.minimal_primes(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn minimal_primes_line_in_p3() {
        // (xy^2, xw^2, yzw, z^2 w): the hitting set {y, w} gives height 2
        let i = ideal(4, &[&[1, 2, 0, 0], &[1, 0, 0, 2], &[0, 1, 1, 1], &[0, 0, 2, 1]]);
        let primes = i.minimal_primes();
        assert!(primes.contains(&vec![1, 3]));
        assert_eq!(primes.iter().map(|p| p.len()).min(), Some(2));
    }

    #[test]
    fn minimal_primes_unit() {
        assert!(MonomialIdeal::unit(3).minimal_primes().is_empty());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(count_monomials(3, 2), 10);
    }
}
