//! Basis combinatorics of the exterior algebra `Λ^•` of an `n`-dimensional space.
//!
//! A basis monomial `e_{i1} ∧ … ∧ e_{ik}` with `i1 < … < ik` is the positive
//! orientation. Degree-`k` monomials are ordered lexicographically, and every
//! matrix built elsewhere in the crate uses that order for rows and columns.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Strictly increasing list of base indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    /// Returns `None` unless `indices` is strictly increasing.
    pub fn new(indices: Vec<usize>) -> Option<Self> {
        indices.windows(2).all(|w| w[0] < w[1]).then_some(MultiIndex(indices))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// Lexicographic position among the degree-`k` monomials of `Λ^k(ℝ^n)`.
    pub fn rank(&self, n: usize) -> usize {
        let k = self.0.len();
        let mut r = 0;
        let mut next = 0;
        for (pos, &a) in self.0.iter().enumerate() {
            for skipped in next..a {
                r += binomial(n - 1 - skipped, k - 1 - pos);
            }
            next = a + 1;
        }
        r
    }

    /// Inverse of [`MultiIndex::rank`]. Panics if `r >= binomial(n, k)`.
    pub fn unrank(mut r: usize, k: usize, n: usize) -> Self {
        assert!(r < binomial(n, k), "rank {r} out of range for C({n}, {k})");
        let mut out = Vec::with_capacity(k);
        let mut candidate = 0;
        for pos in 0..k {
            loop {
                let block = binomial(n - 1 - candidate, k - 1 - pos);
                if r < block {
                    break;
                }
                r -= block;
                candidate += 1;
            }
            out.push(candidate);
            candidate += 1;
        }
        MultiIndex(out)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `e_i ∧ e_m`: `None` if `i ∈ m`, otherwise the sign `(-1)^{#{j ∈ m : j < i}}`
/// and the sorted union.
pub fn wedge_insert(i: usize, m: &MultiIndex) -> Option<(i32, MultiIndex)> {
    match m.0.binary_search(&i) {
        Ok(_) => None,
        Err(pos) => {
            let mut out = m.0.clone();
            out.insert(pos, i);
            Some((parity_sign(pos), MultiIndex(out)))
        }
    }
}

/// Removes `i` and `j` from `m`, with the sign of first moving `i` then `j`
/// to the front. `None` unless both are present. Panics if `i == j`.
pub fn remove_pair(m: &MultiIndex, i: usize, j: usize) -> Option<(i32, MultiIndex)> {
    assert_ne!(i, j, "remove_pair needs distinct indices");
    let pi = m.0.binary_search(&i).ok()?;
    let pj = m.0.binary_search(&j).ok()?;
    // After `i` moves to the front, `j` sits at `pj` or `pj + 1`.
    let pj_after = if pj > pi { pj } else { pj + 1 };
    let rest = m.0.iter().copied().filter(|&x| x != i && x != j).collect();
    Some((parity_sign(pi + pj_after - 1), MultiIndex(rest)))
}

/// All degree-`k` monomials in `n` variables, lexicographically ordered.
/// Empty when `k > n`.
pub fn enumerate_basis(n: usize, k: usize) -> Vec<MultiIndex> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(binomial(n, k));
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(MultiIndex(cur.clone()));
        // Rightmost position that can still advance.
        let Some(pos) = (0..k).rev().find(|&p| cur[p] < n - k + p) else {
            break;
        };
        cur[pos] += 1;
        for q in pos + 1..k {
            cur[q] = cur[q - 1] + 1;
        }
    }
    out
}

fn parity_sign(transpositions: usize) -> i32 {
    if transpositions % 2 == 0 {
        1
    } else {
        -1
    }
}
