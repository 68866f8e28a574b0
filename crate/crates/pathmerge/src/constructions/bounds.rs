//! Closed-form lower and upper bounds on the extremal merging counts.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundQuery {
    /// Two separate sources with cuts m and n.
    M { m: usize, n: usize },
    /// One shared source, two groups of cut n.
    MStar { n: usize },
    /// One shared source with the given non-decreasing cuts.
    MStarChain { cuts: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundTable {
    pub query: BoundQuery,
    pub lower: u64,
    /// `None` when no closed-form upper bound is known.
    pub upper: Option<u64>,
    /// Which formulas gave the bounds, strongest first.
    pub formulas: Vec<String>,
}

impl BoundTable {
    pub fn contains(&self, value: u64) -> bool {
        self.lower <= value && self.upper.is_none_or(|u| value <= u)
    }
}

fn star_lower(n: u64) -> u64 {
    (n.max(1) - 1).pow(2)
}

fn star_upper(n: u64) -> u64 {
    n.div_ceil(2) * (n * n + 5 - 4 * n)
}

fn m_upper(m: u64, n: u64) -> i64 {
    let (m, n) = (m as i64, n as i64);
    (m + n - 1) + (m * n - 2) * ((m + n - 2) / 2)
}

/// Evaluates every applicable bound and keeps the tightest.
pub fn bound_table(query: BoundQuery) -> Result<BoundTable> {
    let mut formulas = Vec::new();
    let (lower, upper) = match &query {
        BoundQuery::MStar { n } => {
            let n = positive("n", *n)?;
            formulas.push("lower (n-1)^2".into());
            formulas.push("upper ceil(n/2)(n^2-4n+5)".into());
            (star_lower(n), Some(star_upper(n)))
        }
        BoundQuery::M { m, n } => {
            let (m, n) = (positive("m", *m)?, positive("n", *n)?);
            let mut lower = 2 * m * n + 1 - m - n;
            formulas.push("lower 2mn-m-n+1".into());
            if m == n {
                let doubled = 2 * star_lower(n) + n;
                let shifted = star_lower(n + 1) + star_lower(n - 1) + (n - 1);
                if doubled > lower {
                    lower = doubled;
                    formulas.insert(0, "lower 2M*(n,n)+n".into());
                }
                if shifted > lower {
                    lower = shifted;
                    formulas.insert(0, "lower M*(n+1,n+1)+M*(n-1,n-1)+n-1".into());
                }
            }
            let mut upper = m_upper(m, n).max(0) as u64;
            formulas.push("upper (m+n-1)+(mn-2)floor((m+n-2)/2)".into());
            let three = if m == 3 { Some(n) } else if n == 3 { Some(m) } else { None };
            if let Some(k) = three {
                if 14 * k < upper {
                    upper = 14 * k;
                    formulas.push("upper 14n".into());
                }
            }
            (lower, Some(upper))
        }
        BoundQuery::MStarChain { cuts } => {
            if cuts.len() < 2 {
                return Err(Error::Parse("a chain needs at least two cuts".into()));
            }
            if cuts.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::NonMonotoneCuts);
            }
            for &c in cuts {
                positive("cut", c)?;
            }
            formulas.push("lower sum of (n_i-1)^2 over all but the last cut".into());
            let lower = cuts[..cuts.len() - 1].iter().map(|&c| star_lower(c as u64)).sum();
            let upper = (cuts.len() == 2 && cuts[0] == cuts[1]).then(|| {
                formulas.push("upper ceil(n/2)(n^2-4n+5)".into());
                star_upper(cuts[0] as u64)
            });
            (lower, upper)
        }
    };
    Ok(BoundTable { query, lower, upper, formulas })
}

fn positive(name: &'static str, value: usize) -> Result<u64> {
    if value == 0 {
        return Err(Error::ParamTooSmall { name, value, min: 1 });
    }
    Ok(value as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(m: usize, n: usize) -> BoundTable {
        bound_table(BoundQuery::M { m, n }).unwrap()
    }

    fn star(n: usize) -> BoundTable {
        bound_table(BoundQuery::MStar { n }).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!((m(3, 3).lower, m(3, 3).upper), (13, Some(19)));
        assert_eq!((star(3).lower, star(3).upper), (4, Some(4)));
        assert_eq!((star(4).lower, star(4).upper), (9, Some(10)));
        assert_eq!((m(1, 1).lower, m(1, 1).upper), (1, Some(1)));
        assert_eq!((m(4, 4).lower, m(4, 4).upper), (25, Some(49)));
    }

    #[test]
    fn fourteen_n_kicks_in_for_large_n() {
        // (3+n-1) + (3n-2) floor((n+1)/2) passes 14n at n = 9
        assert_eq!(m(3, 8).upper, Some(10 + 22 * 4));
        assert_eq!(m(3, 9).upper, Some(126));
        assert_eq!(m(9, 3).upper, Some(126));
    }

    #[test]
    fn chain_sums_parts() {
        let t = bound_table(BoundQuery::MStarChain { cuts: vec![3, 3, 3] }).unwrap();
        assert_eq!(t.lower, 8);
        assert_eq!(t.upper, None);
        assert_eq!(
            bound_table(BoundQuery::MStarChain { cuts: vec![3, 2] }).unwrap_err(),
            Error::NonMonotoneCuts
        );
    }
}
