//! Integer degree conditions under which a general hypersurface of degree `N` in
//! `P^{d+1}` is not rationally swept out by an `r`-dimensional family of varieties
//! with `C` moduli, plus their specializations to abelian varieties and curves.
//!
//! A failed condition never means that a sweeping family exists.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CriterionInput {
    pub d: u64,
    #[serde(rename = "N")]
    pub degree: u64,
    pub r: u64,
    #[serde(rename = "C")]
    pub moduli: u64,
}

impl CriterionInput {
    pub fn new(d: u64, degree: u64, r: u64, moduli: u64) -> Result<Self> {
        if d == 0 || degree == 0 {
            return Err(Error::InvalidInput("need d >= 1 and N >= 1".into()));
        }
        if r == 0 || r > d {
            return Err(Error::InvalidInput(format!("need 1 <= r <= d, got r = {r}, d = {d}")));
        }
        Ok(Self {
            d,
            degree,
            r,
            moduli,
        })
    }
}

/// `⌈(r - 1) / 2⌉`.
pub fn gamma(r: u64) -> u64 {
    r / 2
}

/// `⌈(r - i) / 2⌉`, possibly non-positive.
pub fn gamma_i(r: i64, i: i64) -> i64 {
    (r - i + 1).div_euclid(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerIndex {
    pub i: u64,
    pub gamma_i: i64,
    /// `N(γ_i + i) - d - 2 - (C + d - r - i)`.
    pub slack: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub input: CriterionInput,
    pub gamma: u64,
    /// `(N+1) r - (2d + C + 2)`.
    pub ineq1_slack: i64,
    pub ineq1: bool,
    /// `(γ+1) N - (2d - r + 1 + C)`.
    pub ineq2_slack: i64,
    pub ineq2: bool,
    pub pass: bool,
    /// `N >= d + 2`, reported separately from `pass`.
    pub degree_hypothesis: bool,
    pub per_i: Vec<PerIndex>,
}

pub const SWEEP_CSV_HEADER: &str = "d,N,r,C,gamma,ineq1_slack,ineq2_slack,pass,degree_hypothesis";

impl CriterionReport {
    pub fn csv_row(&self) -> String {
        let x = &self.input;
        format!(
            "{},{},{},{},{},{},{},{},{}",
            x.d,
            x.degree,
            x.r,
            x.moduli,
            self.gamma,
            self.ineq1_slack,
            self.ineq2_slack,
            self.pass,
            self.degree_hypothesis
        )
    }
}

fn per_index(x: &CriterionInput, i: u64) -> PerIndex {
    let (d, n, r, c) = (x.d as i64, x.degree as i64, x.r as i64, x.moduli as i64);
    let i = i as i64;
    let g = gamma_i(r, i);
    PerIndex {
        i: i as u64,
        gamma_i: g,
        slack: -d - 2 + n * (g + i) - (c + d - r - i),
    }
}

pub fn sweep_criterion(x: CriterionInput) -> CriterionReport {
    let (d, n, r, c) = (x.d as i64, x.degree as i64, x.r as i64, x.moduli as i64);
    let g = gamma(x.r);
    let ineq1_slack = (n + 1) * r - (2 * d + c + 2);
    let ineq2_slack = (g as i64 + 1) * n - (2 * d - r + 1 + c);
    CriterionReport {
        input: x,
        gamma: g,
        ineq1_slack,
        ineq1: ineq1_slack >= 0,
        ineq2_slack,
        ineq2: ineq2_slack >= 0,
        pass: ineq1_slack >= 0 && ineq2_slack >= 0,
        degree_hypothesis: n >= d + 2,
        per_i: (1..=x.r).map(|i| per_index(&x, i)).collect(),
    }
}

/// Calabi-Yau degree `N = d + 2` against `r`-dimensional abelian varieties,
/// `C = r(r+1)/2`, for `r = 1..=d`.
pub fn abelian_sweep_table(d: u64) -> Result<Vec<CriterionReport>> {
    (1..=d)
        .map(|r| Ok(sweep_criterion(CriterionInput::new(d, d + 2, r, r * (r + 1) / 2)?)))
        .collect()
}

/// Moduli count of genus-`g` curves used by the curve specialization.
pub fn curve_moduli(g: u64) -> u64 {
    if g >= 2 {
        3 * g - 3
    } else {
        1
    }
}

/// Least `N` for which the `r = 1` criterion with `C = curve_moduli(g)` passes,
/// found by scanning `N = 1, 2, ...`.
pub fn genus_threshold(d: u64, g: u64) -> Result<u64> {
    if g == 0 {
        return Err(Error::InvalidInput("genus must be >= 1".into()));
    }
    let c = curve_moduli(g);
    // both inequalities hold once N >= 2d + C + 1
    let limit = 2 * d + c + 2;
    for n in 1..=limit {
        if sweep_criterion(CriterionInput::new(d, n, 1, c)?).pass {
            return Ok(n);
        }
    }
    unreachable!("criterion passes by N = {limit}")
}

/// `2d - 2 + 3g` for `g >= 2`, `2d + 2` for `g = 1`.
pub fn genus_threshold_closed_form(d: u64, g: u64) -> u64 {
    if g >= 2 {
        2 * d - 2 + 3 * g
    } else {
        2 * d + 2
    }
}

/// Whether condition (per index) at `i = 1` forces it at every `1 <= i <= r`, together
/// with monotonicity of `γ_i + i` (non-decreasing) and `C + d - r - i` (decreasing).
pub fn per_i_monotonicity(x: CriterionInput) -> bool {
    let (d, r, c) = (x.d as i64, x.r as i64, x.moduli as i64);
    let rows: Vec<PerIndex> = (1..=x.r).map(|i| per_index(&x, i)).collect();
    let first_holds = rows[0].slack >= 0;
    let implied = !first_holds || rows.iter().all(|p| p.slack >= 0);
    let lhs_monotone = rows
        .windows(2)
        .all(|w| w[1].gamma_i + w[1].i as i64 >= w[0].gamma_i + w[0].i as i64);
    let rhs_decreasing = (1..r).all(|i| c + d - r - (i + 1) < c + d - r - i);
    implied && lhs_monotone && rhs_decreasing
}

/// Grid points with `2 <= r <= d <= d_max`, `1 <= N <= n_max`, `0 <= C <= c_max` where
/// the second inequality holds but the first does not.
pub fn ineq2_without_ineq1(d_max: u64, n_max: u64, c_max: u64) -> Vec<CriterionInput> {
    let mut out = Vec::new();
    for d in 2..=d_max {
        for r in 2..=d {
            for n in 1..=n_max {
                for c in 0..=c_max {
                    let x = CriterionInput {
                        d,
                        degree: n,
                        r,
                        moduli: c,
                    };
                    let rep = sweep_criterion(x);
                    if rep.ineq2 && !rep.ineq1 {
                        out.push(x);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn input(d: u64, n: u64, r: u64, c: u64) -> CriterionInput {
        CriterionInput::new(d, n, r, c).unwrap()
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma(1), 0);
        assert_eq!(gamma(2), 1);
        assert_eq!(gamma(5), 2);
        assert_eq!(gamma_i(4, 2), 1);
        assert_eq!(gamma_i(3, 3), 0);
        assert_eq!(gamma_i(3, 5), -1);
        assert_eq!(gamma_i(3, 6), -1);
        for r in 1..50 {
            assert_eq!(gamma_i(r, 1), gamma(r as u64) as i64);
        }
        let seq: Vec<i64> = (1..=5).map(|i| gamma_i(5, i) + i).collect();
        assert_eq!(seq, [3, 4, 4, 5, 5]);
    }

    #[test]
    fn sweep_examples() {
        let rep = sweep_criterion(input(3, 5, 2, 3));
        assert!(rep.pass);
        assert_eq!((rep.ineq1_slack, rep.ineq2_slack), (1, 2));
        let rep = sweep_criterion(input(3, 5, 1, 1));
        assert!(!rep.ineq1 && !rep.pass);
        assert_eq!(rep.ineq1_slack, -3);
        let rep = sweep_criterion(input(1, 4, 1, 0));
        assert!(rep.pass);
        assert_eq!((rep.ineq1_slack, rep.ineq2_slack), (1, 2));
        assert!(rep.degree_hypothesis);
        assert!(!sweep_criterion(input(3, 4, 2, 0)).degree_hypothesis);
    }

    #[test]
    fn per_index_one_is_the_second_inequality() {
        for d in 1..15 {
            for r in 1..=d {
                for n in 1..20 {
                    for c in 0..20 {
                        let rep = sweep_criterion(input(d, n, r, c));
                        assert_eq!(rep.per_i[0].slack, rep.ineq2_slack);
                        assert_eq!(rep.per_i.len(), r as usize);
                    }
                }
            }
        }
    }

    #[test]
    fn abelian_tables() {
        let t = abelian_sweep_table(3).unwrap();
        let pass: Vec<bool> = t.iter().map(|r| r.pass).collect();
        assert_eq!(pass, [false, true, true]);
        let t = abelian_sweep_table(2).unwrap();
        assert_eq!((t[1].ineq1_slack, t[1].ineq2_slack), (1, 2));
        assert!(abelian_sweep_table(50).unwrap()[1..].iter().all(|r| r.pass));
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus_threshold(3, 2).unwrap(), 10);
        assert_eq!(genus_threshold(3, 1).unwrap(), 8);
        assert_eq!(genus_threshold(1, 3).unwrap(), 9);
        assert!(genus_threshold(1, 0).is_err());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(CriterionInput::new(3, 5, 4, 0).is_err());
        assert!(CriterionInput::new(3, 5, 0, 0).is_err());
        assert!(CriterionInput::new(0, 5, 1, 0).is_err());
    }

    #[test]
    fn second_inequality_misses_the_first_only_on_a_line_at_r_two() {
        let bad = ineq2_without_ineq1(12, 30, 30);
        assert!(!bad.is_empty());
        assert!(bad
            .iter()
            .all(|x| x.r == 2 && 2 * x.degree + 1 == 2 * x.d + x.moduli));
        assert!(bad.contains(&input(3, 5, 2, 5)));
    }

    proptest! {
        #[test]
        fn pass_means_both(d in 1u64..40, n in 1u64..60, r in 1u64..40, c in 0u64..60) {
            prop_assume!(r <= d);
            let rep = sweep_criterion(input(d, n, r, c));
            prop_assert_eq!(rep.pass, rep.ineq1 && rep.ineq2);
            prop_assert_eq!(rep.ineq1, rep.ineq1_slack >= 0);
        }

        #[test]
        fn second_implies_first_from_r_three(d in 3u64..40, n in 1u64..60, r in 3u64..40, c in 0u64..60) {
            prop_assume!(r <= d);
            let rep = sweep_criterion(input(d, n, r, c));
            prop_assert!(!rep.ineq2 || rep.ineq1);
        }

        #[test]
        fn monotonicity_reduction(d in 1u64..20, n in 1u64..30, r in 1u64..20, c in 0u64..30) {
            prop_assume!(r <= d);
            prop_assert!(per_i_monotonicity(input(d, n, r, c)));
        }
    }
}
