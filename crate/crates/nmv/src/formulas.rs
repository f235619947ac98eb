//! Closed-form multidegree tables for structured families: a height-two
//! perfect last ideal (elementary symmetric polynomial in the syzygy
//! degrees), a height-three Gorenstein last ideal (binomial sums in the
//! presentation degree), and the everywhere-defined case where every entry
//! is a plain product of generation degrees.
//!
//! The structural hypotheses (m-primary leading factors, perfection or
//! Gorensteinness, the G-condition) are asserted by the caller, never
//! verified here; front ends print them so results are never silently
//! conditional.

use crate::engine::MultidegreeTable;
use crate::error::{Error, Result};

/// The structured family of the last ideal.
#[derive(Clone, Debug)]
pub enum Family {
    /// Perfect of height two; `mu` lists the column degrees of the
    /// Hilbert-Burch matrix, so the generation degree is their sum.
    PerfectHt2 { mu: Vec<u64> },
    /// Gorenstein of height three with an alternating minimal presentation
    /// matrix of size (rows+1) x (rows+1), every nonzero entry of degree
    /// `entry_degree`. The generation degree is independent input.
    GorensteinHt3 { rows: usize, entry_degree: u64, delta_p: u64 },
}

/// Input for the closed-form tables: source dimension, the generation
/// degrees of the m-primary leading factors, and the family of the last
/// ideal.
#[derive(Clone, Debug)]
pub struct FamilyInput {
    pub r: u32,
    pub deltas: Vec<u64>,
    pub family: Family,
}

impl FamilyInput {
    pub fn p(&self) -> usize {
        self.deltas.len() + 1
    }

    /// Generation degree of the last ideal (derived for the height-two
    /// family, supplied for the Gorenstein one).
    pub fn delta_p(&self) -> u64 {
        match &self.family {
            Family::PerfectHt2 { mu } => mu.iter().sum(),
            Family::GorensteinHt3 { delta_p, .. } => *delta_p,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return Err(Error::Validation("source dimension r must be >= 1".into()));
        }
        if self.deltas.iter().any(|&d| d == 0) {
            return Err(Error::Validation("generation degrees must be >= 1".into()));
        }
        match &self.family {
            Family::PerfectHt2 { mu } => {
                if mu.is_empty() || mu.iter().any(|&m| m == 0) {
                    return Err(Error::Validation(
                        "syzygy degrees must be a nonempty list of positive integers".into(),
                    ));
                }
            }
            Family::GorensteinHt3 { rows, entry_degree, delta_p } => {
                if *rows == 0 || rows % 2 != 0 {
                    return Err(Error::Validation(
                        "an alternating presentation needs an even row count >= 2".into(),
                    ));
                }
                if *entry_degree == 0 || *delta_p == 0 {
                    return Err(Error::Validation(
                        "entry degree and generation degree must be >= 1".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// The caller-asserted hypotheses, for display next to any output.
    pub fn asserted_hypotheses(&self) -> Vec<String> {
        let mut out = vec![
            "the leading ideals I_1..I_{p-1} are m-primary".to_string(),
            format!("the last ideal satisfies G_{{{}}}", self.r + 1),
        ];
        match &self.family {
            Family::PerfectHt2 { mu } => {
                out.push(format!(
                    "the last ideal is perfect of height two with Hilbert-Burch column degrees {mu:?}"
                ));
                out.push(format!("m_p = {} >= r = {}", mu.len(), self.r));
            }
            Family::GorensteinHt3 { rows, entry_degree, delta_p } => {
                out.push(format!(
                    "the last ideal is Gorenstein of height three with an alternating \
                     {}x{} presentation, all entries of degree {entry_degree}",
                    rows + 1,
                    rows + 1
                ));
                out.push(format!("m_p = {rows} >= r = {}", self.r));
                let pfaffian_delta = *entry_degree * (*rows as u64) / 2;
                if *delta_p != pfaffian_delta {
                    out.push(format!(
                        "note: supplied generation degree {delta_p} differs from the \
                         submaximal-Pfaffian value D*m_p/2 = {pfaffian_delta} (not enforced)"
                    ));
                }
            }
        }
        out
    }
}

/// Elementary symmetric polynomial e_k, by the prefix recurrence.
pub fn elementary_symmetric(k: usize, vals: &[u64]) -> Result<u64> {
    if k > vals.len() {
        return Err(Error::Validation(format!(
            "elementary symmetric index {k} exceeds the number of values {}",
            vals.len()
        )));
    }
    let mut e: Vec<u128> = vec![0; k + 1];
    e[0] = 1;
    for &v in vals {
        for j in (1..=k).rev() {
            e[j] += e[j - 1] * v as u128;
        }
    }
    u64::try_from(e[k]).map_err(|_| Error::Validation("elementary symmetric overflow".into()))
}

fn leading_delta_power(deltas: &[u64], d: &[u32]) -> Result<u64> {
    let mut acc: u128 = 1;
    for (&delta, &di) in deltas.iter().zip(d) {
        for _ in 0..di {
            acc = acc
                .checked_mul(delta as u128)
                .ok_or_else(|| Error::Validation("delta power overflow".into()))?;
        }
    }
    u64::try_from(acc).map_err(|_| Error::Validation("delta power overflow".into()))
}

fn checked_mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b)
        .ok_or_else(|| Error::Validation("table entry overflow".into()))
}

/// Table for the height-two perfect family:
/// entry(d) = delta_1^{d_1} ... delta_{p-1}^{d_{p-1}} e_{d_p}(mu).
pub fn perfect_ht2_table(inp: &FamilyInput) -> Result<MultidegreeTable> {
    inp.validate()?;
    let Family::PerfectHt2 { mu } = &inp.family else {
        return Err(Error::Validation("input is not in the height-two family".into()));
    };
    MultidegreeTable::from_fn(inp.r, inp.p(), |d| {
        let dp = *d.last().expect("p >= 1") as usize;
        let head = leading_delta_power(&inp.deltas, &d[..d.len() - 1])?;
        if dp > mu.len() {
            return Ok(0);
        }
        checked_mul(head, elementary_symmetric(dp, mu)?)
    })
}

/// Table for the height-three Gorenstein family: for d_p >= 3 the entry is
/// delta_1^{d_1} ... delta_{p-1}^{d_{p-1}} D^{d_p} sum_k C(m_p-1-2k, d_p-1)
/// with k up to floor((m_p-d_p)/2); below that it is the plain product of
/// generation degrees.
pub fn gorenstein_ht3_table(inp: &FamilyInput) -> Result<MultidegreeTable> {
    inp.validate()?;
    let Family::GorensteinHt3 { rows, entry_degree, delta_p } = &inp.family else {
        return Err(Error::Validation("input is not in the Gorenstein family".into()));
    };
    MultidegreeTable::from_fn(inp.r, inp.p(), |d| {
        let dp = *d.last().expect("p >= 1") as usize;
        let head = leading_delta_power(&inp.deltas, &d[..d.len() - 1])?;
        let factor: u128 = if dp >= 3 {
            let mut sum: u128 = 0;
            if dp <= *rows {
                for k in 0..=((rows - dp) / 2) {
                    sum +=
                        crate::monomial::binomial((rows - 1 - 2 * k) as u64, dp as u64 - 1) as u128;
                }
            }
            let mut acc = sum;
            for _ in 0..dp {
                acc = acc
                    .checked_mul(*entry_degree as u128)
                    .ok_or_else(|| Error::Validation("table entry overflow".into()))?;
            }
            acc
        } else {
            let mut acc: u128 = 1;
            for _ in 0..dp {
                acc = acc
                    .checked_mul(*delta_p as u128)
                    .ok_or_else(|| Error::Validation("table entry overflow".into()))?;
            }
            acc
        };
        let factor =
            u64::try_from(factor).map_err(|_| Error::Validation("table entry overflow".into()))?;
        checked_mul(head, factor)
    })
}

/// Table for maps defined everywhere: entry(d) = delta_1^{d_1}...delta_p^{d_p}.
pub fn mprimary_table(r: u32, deltas: &[u64]) -> Result<MultidegreeTable> {
    if deltas.is_empty() || deltas.iter().any(|&d| d == 0) {
        return Err(Error::Validation("generation degrees must be >= 1".into()));
    }
    MultidegreeTable::from_fn(r, deltas.len(), |d| leading_delta_power(deltas, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_symmetric_values() {
        assert_eq!(elementary_symmetric(0, &[5, 7]).unwrap(), 1);
        assert_eq!(elementary_symmetric(2, &[1, 1]).unwrap(), 1);
        assert_eq!(elementary_symmetric(2, &[2, 3, 5]).unwrap(), 2 * 3 + 2 * 5 + 3 * 5);
        assert!(elementary_symmetric(3, &[1, 1]).is_err());
    }

    #[test]
    fn perfect_ht2_single_factor() {
        let inp =
            FamilyInput { r: 2, deltas: vec![], family: Family::PerfectHt2 { mu: vec![1, 1] } };
        let t = perfect_ht2_table(&inp).unwrap();
        assert_eq!(t.get(&[2]), Some(1));
        assert_eq!(inp.delta_p(), 2);
    }

    #[test]
    fn perfect_ht2_two_factor() {
        let inp =
            FamilyInput { r: 2, deltas: vec![1], family: Family::PerfectHt2 { mu: vec![1, 1] } };
        let t = perfect_ht2_table(&inp).unwrap();
        assert_eq!(t.get(&[2, 0]), Some(1));
        assert_eq!(t.get(&[1, 1]), Some(2));
        assert_eq!(t.get(&[0, 2]), Some(1));
    }

    #[test]
    fn perfect_ht2_dp_zero_gives_delta_power() {
        let inp =
            FamilyInput { r: 3, deltas: vec![2], family: Family::PerfectHt2 { mu: vec![1, 2, 1] } };
        let t = perfect_ht2_table(&inp).unwrap();
        assert_eq!(t.get(&[3, 0]), Some(8));
    }

    #[test]
    fn perfect_ht2_last_entry_ignores_leading_deltas() {
        let a = FamilyInput { r: 2, deltas: vec![1], family: Family::PerfectHt2 { mu: vec![2, 3] } };
        let b = FamilyInput { r: 2, deltas: vec![5], family: Family::PerfectHt2 { mu: vec![2, 3] } };
        assert_eq!(
            perfect_ht2_table(&a).unwrap().get(&[0, 2]),
            perfect_ht2_table(&b).unwrap().get(&[0, 2])
        );
    }

    #[test]
    fn gorenstein_hand_values() {
        let inp = FamilyInput {
            r: 3,
            deltas: vec![],
            family: Family::GorensteinHt3 { rows: 4, entry_degree: 1, delta_p: 2 },
        };
        let t = gorenstein_ht3_table(&inp).unwrap();
        assert_eq!(t.get(&[3]), Some(3));

        let inp = FamilyInput {
            r: 4,
            deltas: vec![],
            family: Family::GorensteinHt3 { rows: 6, entry_degree: 2, delta_p: 6 },
        };
        let t = gorenstein_ht3_table(&inp).unwrap();
        assert_eq!(t.get(&[4]), Some(176));
    }

    #[test]
    fn gorenstein_low_branch_matches_m_primary() {
        let inp = FamilyInput {
            r: 3,
            deltas: vec![2],
            family: Family::GorensteinHt3 { rows: 4, entry_degree: 1, delta_p: 2 },
        };
        let t = gorenstein_ht3_table(&inp).unwrap();
        let m = mprimary_table(3, &[2, 2]).unwrap();
        for dp in 0..=2u32 {
            let d = vec![3 - dp, dp];
            assert_eq!(t.get(&d), m.get(&d));
        }
    }

    #[test]
    fn gorenstein_rejects_odd_rows() {
        let inp = FamilyInput {
            r: 3,
            deltas: vec![],
            family: Family::GorensteinHt3 { rows: 3, entry_degree: 1, delta_p: 2 },
        };
        assert!(gorenstein_ht3_table(&inp).is_err());
    }

    #[test]
    fn m_primary_tables() {
        let t = mprimary_table(2, &[2]).unwrap();
        assert_eq!(t.get(&[2]), Some(4));
        let t = mprimary_table(2, &[2, 3]).unwrap();
        assert_eq!(t.get(&[2, 0]), Some(4));
        assert_eq!(t.get(&[1, 1]), Some(6));
        assert_eq!(t.get(&[0, 2]), Some(9));
        let t = mprimary_table(3, &[1, 1]).unwrap();
        assert!(t.iter_ordered().all(|(_, v)| v == 1));
    }

    #[test]
    fn pfaffian_mismatch_is_flagged() {
        let inp = FamilyInput {
            r: 3,
            deltas: vec![],
            family: Family::GorensteinHt3 { rows: 4, entry_degree: 1, delta_p: 5 },
        };
        let notes = inp.asserted_hypotheses();
        assert!(notes.iter().any(|n| n.contains("differs")));
    }
}
