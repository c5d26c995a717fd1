use crate::error::{Error, Result};

use super::certify::Direction;
use super::oracle::JacobianMatroid;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatroidComparison {
    /// Every set of at most the requested size has the same status.
    Equal { checked: u64 },
    /// The smallest (then lexicographically first) set on which the two
    /// matroids disagree.
    Differs {
        subset: Vec<usize>,
        direction: Direction,
        checked: u64,
    },
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Number of subsets of `cols` elements with at most `max_size` elements.
pub fn subsets_up_to(cols: usize, max_size: usize) -> u64 {
    (0..=max_size.min(cols))
        .map(|s| binomial(cols as u64, s as u64))
        .fold(0u64, u64::saturating_add)
}

/// Advances `c` to the next `k`-combination of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Tracks known dependent sets of one matroid so that their supersets need
/// no rank computation.
struct Statuses<'a> {
    m: &'a JacobianMatroid,
    dependent: Vec<u64>,
}

impl Statuses<'_> {
    fn independent(&mut self, subset: &[usize]) -> Result<bool> {
        let mask = subset.iter().fold(0u64, |m, &c| m | 1 << c);
        if self.dependent.iter().any(|&d| (d & mask) == d) {
            return Ok(false);
        }
        let ind = self.m.is_independent(subset)?;
        if !ind {
            self.dependent.push(mask);
        }
        Ok(ind)
    }
}

/// Compares the independent sets of size at most `max_size` of the column
/// matroids `m1` and `m2`. At most `budget` sets are
/// examined; running out of budget is an error that reports the progress.
pub fn exhaustive_matroid_equal(
    m1: &JacobianMatroid,
    m2: &JacobianMatroid,
    max_size: usize,
    budget: u64,
) -> Result<MatroidComparison> {
    let n = m1.cols();
    if m2.cols() != n {
        return Err(Error::arg(format!("models have {} and {} coordinates", n, m2.cols())));
    }
    if n > 64 {
        return Err(Error::arg("exhaustive comparison supports at most 64 coordinates"));
    }
    let required = subsets_up_to(n, max_size);
    let mut s1 = Statuses {
        m: m1,
        dependent: Vec::new(),
    };
    let mut s2 = Statuses {
        m: m2,
        dependent: Vec::new(),
    };
    let mut checked = 0u64;
    for k in 0..=max_size.min(n) {
        let mut c: Vec<usize> = (0..k).collect();
        loop {
            if checked == budget {
                return Err(Error::Budget {
                    checked,
                    required,
                    budget,
                });
            }
            checked += 1;
            let (a, b) = (s1.independent(&c)?, s2.independent(&c)?);
            if a != b {
                let direction = if a {
                    Direction::LeftIndependent
                } else {
                    Direction::RightIndependent
                };
                return Ok(MatroidComparison::Differs {
                    subset: c,
                    direction,
                    checked,
                });
            }
            if !next_combination(&mut c, n) {
                break;
            }
        }
    }
    Ok(MatroidComparison::Equal { checked })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_enumerate_binomials() {
        for (n, k) in [(5, 0), (5, 2), (6, 3), (4, 4)] {
            let mut c: Vec<usize> = (0..k).collect();
            let mut count = 1;
            while next_combination(&mut c, n) {
                count += 1;
            }
            assert_eq!(count, binomial(n as u64, k as u64));
        }
        assert_eq!(subsets_up_to(8, 7), 255);
        assert_eq!(subsets_up_to(3, 5), 8);
    }
}
