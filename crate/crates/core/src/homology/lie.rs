//! Cohomology of `gl_{n_1} x ... x gl_{n_k}` with trivial coefficients.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Dimensions per homological degree of an exterior algebra on classes of
/// degrees `-1, -3, ..., -(2n_i - 1)` for each vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieCohomologyProfile {
    pub dims: Vec<usize>,
    pub degrees: BTreeMap<i32, usize>,
}

impl LieCohomologyProfile {
    pub fn get(&self, k: i32) -> usize {
        self.degrees.get(&k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.degrees.values().sum()
    }
}

pub fn lie_cohomology(dims: &[usize]) -> LieCohomologyProfile {
    let mut degrees = BTreeMap::from([(0, 1usize)]);
    for &n in dims {
        for j in 1..=n {
            let g = -(2 * j as i32 - 1);
            let mut next = degrees.clone();
            for (&k, &d) in &degrees {
                *next.entry(k + g).or_insert(0) += d;
            }
            degrees = next;
        }
    }
    LieCohomologyProfile { dims: dims.to_vec(), degrees }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_profiles() {
        assert_eq!(lie_cohomology(&[1]).degrees, BTreeMap::from([(0, 1), (-1, 1)]));
        assert_eq!(lie_cohomology(&[2]).degrees, BTreeMap::from([(0, 1), (-1, 1), (-3, 1), (-4, 1)]));
        assert_eq!(lie_cohomology(&[1, 1]).degrees, BTreeMap::from([(0, 1), (-1, 2), (-2, 1)]));
        for dims in [vec![3], vec![2, 1], vec![1, 2, 2]] {
            let p = lie_cohomology(&dims);
            assert_eq!(p.total(), 1 << dims.iter().sum::<usize>());
        }
    }
}
