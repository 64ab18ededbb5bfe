//! Fixtures shared by the criterion benches.

use quotcoh::lie::{BracketEntry, LieAlgebra};
use quotcoh::scalar::rat;
use quotcoh::torus::TorusSpec;
use quotcoh::ExtScalar;

/// Standard filiform algebra: `[e_0, e_j] = e_{j+1}` for `1 ≤ j < dim − 1`.
pub fn filiform_like(dim: usize) -> LieAlgebra {
    let entries: Vec<BracketEntry> = (1..dim.saturating_sub(1)).map(|j| BracketEntry::new(0, j, j + 1, rat(1))).collect();
    LieAlgebra::from_brackets(dim, &entries).expect("valid table")
}

/// Unfoliated `T^n` with no invariance, the largest audit sweep for given `n`.
pub fn full_torus(n: usize, truncation: u32) -> TorusSpec {
    TorusSpec::new(n, Vec::new(), []).with_truncation(truncation)
}

/// A two-dimensional foliation of `T^5` with one irrational slope.
pub fn irrational_t5() -> TorusSpec {
    let e = |s: &str| -> ExtScalar { s.parse().expect("literal") };
    TorusSpec::new(
        5,
        vec![
            vec![e("1"), e("0+1*alpha"), e("0"), e("0"), e("0")],
            vec![e("0"), e("0"), e("1"), e("2"), e("0")],
        ],
        [4],
    )
}
