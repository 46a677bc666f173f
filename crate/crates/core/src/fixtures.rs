//! Small named instances used by tests, examples and the CLI.

use crate::geometry::{matroid_from_config, PointLineConfig};
use crate::matroid::Matroid;
use crate::partition::GoodPartitionCandidate;

/// Three-point lines of the whirl `W³`.
pub const WHIRL_LINES: [[usize; 3]; 3] = [[1, 2, 3], [3, 5, 6], [1, 4, 5]];

/// Lines of the six-point configuration with point 4 on no line.
pub const FIGURE1_LINES: [[usize; 3]; 2] = [[1, 2, 3], [3, 5, 6]];

/// Lines of the `M(K4)` pattern; relaxing the last one gives `W³`.
pub const K4_LINES: [[usize; 3]; 4] = [[1, 2, 3], [3, 5, 6], [1, 4, 5], [2, 4, 6]];

fn config(lines: &[[usize; 3]]) -> PointLineConfig {
    let lines: alloc::vec::Vec<&[usize]> = lines.iter().map(|l| &l[..]).collect();
    PointLineConfig::from_lists(6, &lines).expect("fixture configuration is valid")
}

pub fn whirl3_config() -> PointLineConfig {
    config(&WHIRL_LINES)
}

pub fn figure1_config() -> PointLineConfig {
    config(&FIGURE1_LINES)
}

pub fn k4_config() -> PointLineConfig {
    config(&K4_LINES)
}

/// `W³`: 17 bases.
pub fn whirl3() -> Matroid {
    matroid_from_config(&whirl3_config()).expect("fixture has rank 3")
}

/// 18 bases.
pub fn figure1_matroid() -> Matroid {
    matroid_from_config(&figure1_config()).expect("fixture has rank 3")
}

/// `M(K4)` entered by its four lines: 16 bases.
pub fn k4_pattern() -> Matroid {
    matroid_from_config(&k4_config()).expect("fixture has rank 3")
}

/// Pairs `{1,2}|{3,4}|{5,6}|{7,8}` with `a = (1,1,1,1)`, a good 4-partition
/// of `U_{8,4}`.
pub fn uniform_pairs_candidate() -> GoodPartitionCandidate {
    GoodPartitionCandidate::from_lists(&[&[1, 2], &[3, 4], &[5, 6], &[7, 8]], &[1, 1, 1, 1])
}
