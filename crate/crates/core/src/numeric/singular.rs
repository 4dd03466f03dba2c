//! The singular locus of the double zeta-function:
//! `s_2 = 1` and `s_1 + s_2 = 2, 1, 0, -2, -4, ...`.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

/// Lowest value of `s_1 + s_2` included in the hyperplane list.
pub const DEFAULT_DEPTH: i32 = -40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Hyperplane {
    /// `s_2 = 1`
    S2EqualsOne,
    /// `s_1 + s_2 = value`
    SumEquals(i32),
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hyperplane::S2EqualsOne => write!(f, "s2 = 1"),
            Hyperplane::SumEquals(v) => write!(f, "s1 + s2 = {v}"),
        }
    }
}

/// Distance to the nearest hyperplanes. A point can lie on several at once
/// (e.g. `(1, 1)` is on `s2 = 1` and `s1 + s2 = 2`); all of them are listed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularityReport {
    pub hyperplanes: Vec<Hyperplane>,
    pub distance: f64,
}

impl SingularityReport {
    pub fn contains(&self, h: Hyperplane) -> bool {
        self.hyperplanes.contains(&h)
    }
}

impl fmt::Display for SingularityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.hyperplanes.iter().map(|h| h.to_string()).collect();
        write!(f, "distance {:.3e} to {}", self.distance, names.join(" and "))
    }
}

fn sum_values(depth: i32) -> impl Iterator<Item = i32> {
    [2, 1, 0].into_iter().chain((depth..=-2).rev().filter(|v| v % 2 == 0))
}

/// Euclidean distance in `C^2` from `(s1, s2)` to the nearest hyperplane,
/// using the list down to `s_1 + s_2 = depth`.
pub fn singularity_distance_to_depth(s1: Complex64, s2: Complex64, depth: i32) -> SingularityReport {
    let sum = s1 + s2;
    let candidates = std::iter::once((Hyperplane::S2EqualsOne, (s2 - 1.0).norm())).chain(
        // the normal (1, 1) has length sqrt(2)
        sum_values(depth).map(|v| {
            (
                Hyperplane::SumEquals(v),
                (sum - v as f64).norm() / std::f64::consts::SQRT_2,
            )
        }),
    );
    let mut report = SingularityReport {
        hyperplanes: Vec::new(),
        distance: f64::INFINITY,
    };
    for (h, d) in candidates {
        if d < report.distance {
            report.hyperplanes.clear();
            report.distance = d;
        }
        if d == report.distance {
            report.hyperplanes.push(h);
        }
    }
    report
}

pub fn singularity_distance(s1: Complex64, s2: Complex64) -> SingularityReport {
    singularity_distance_to_depth(s1, s2, DEFAULT_DEPTH)
}
