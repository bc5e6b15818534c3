//! The 2-matching greedy on a lazily exposed cubic configuration.
//!
//! Every iteration picks a vertex from the first non-empty class among
//! `Y1, Y2, Z1, Y3` (where `Yk`/`Zk` are the vertices of remaining degree `k`
//! without/with a matching edge), exposes one of its points and adds the
//! resulting edge to the 2-matching `U`. When only `Z2` vertices are left the
//! residual graph is 2-regular and a maximum matching is placed on it.

mod buckets;
mod components;
mod record;
mod run;
mod state;

pub use buckets::Buckets;
pub use components::{count_components, ComponentCounts};
pub use record::{ab_change, yz_zeta_change, Deletion, Sigma, Snapshot, StepKind, StepRecord};
pub use run::{run, run_returning_source, run_with_source, ResidualStats, RunOptions, RunResult, RunSummary, Stride};
pub use state::{Counters, Engine, EngineState, Priority, Violation};

/// Class of a vertex: remaining degree and whether it already touches `U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum VertexClass {
    Y0,
    Y1,
    Y2,
    Y3,
    Z0,
    Z1,
    Z2,
    /// Saturated by `U` and deleted from the residual graph.
    Removed,
}

impl VertexClass {
    pub const ALL: [VertexClass; 8] = [
        VertexClass::Y0,
        VertexClass::Y1,
        VertexClass::Y2,
        VertexClass::Y3,
        VertexClass::Z0,
        VertexClass::Z1,
        VertexClass::Z2,
        VertexClass::Removed,
    ];

    /// Class from remaining degree and number of incident `U` edges.
    pub fn from_parts(degree: u8, matched: u8) -> VertexClass {
        use VertexClass::*;
        match (matched, degree) {
            (0, 0) => Y0,
            (0, 1) => Y1,
            (0, 2) => Y2,
            (0, 3) => Y3,
            (1, 0) => Z0,
            (1, 1) => Z1,
            (1, 2) => Z2,
            (2, _) => Removed,
            _ => panic!("no class for degree {degree} with {matched} matching edges"),
        }
    }

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    /// Contribution to `ζ = Y1 + 2 Y2 + Z1`.
    #[inline]
    pub fn zeta_weight(self) -> i64 {
        match self {
            VertexClass::Y1 | VertexClass::Z1 => 1,
            VertexClass::Y2 => 2,
            _ => 0,
        }
    }

    /// The selection/deletion symbol a vertex of this class produces.
    pub fn symbol(self) -> Option<Deletion> {
        match self {
            VertexClass::Y3 => Some(Deletion::Y),
            VertexClass::Z2 => Some(Deletion::Z),
            VertexClass::Y1 | VertexClass::Y2 | VertexClass::Z1 => Some(Deletion::Zeta),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            VertexClass::Y0 => "Y0",
            VertexClass::Y1 => "Y1",
            VertexClass::Y2 => "Y2",
            VertexClass::Y3 => "Y3",
            VertexClass::Z0 => "Z0",
            VertexClass::Z1 => "Z1",
            VertexClass::Z2 => "Z2",
            VertexClass::Removed => "removed",
        }
    }
}

// `A` and `B` are tracked as sums of per-vertex weights computed from
// (degree, matched), independently of the bucket bookkeeping.

/// Per-vertex contribution to `A = Y + ζ`.
#[inline]
pub(crate) fn weight_a(degree: u8, matched: u8) -> i64 {
    match (matched, degree) {
        (0, 3) | (0, 1) | (1, 1) => 1,
        (0, 2) => 2,
        _ => 0,
    }
}

/// Per-vertex contribution to `B = 2Y + Z + ζ`: the number of matching
/// half-edges the vertex can still receive, `min(2 - matched, degree)`.
#[inline]
pub(crate) fn weight_b(degree: u8, matched: u8) -> i64 {
    (2 - matched as i64).min(degree as i64).max(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_agree_with_class_definitions() {
        for matched in 0..=2u8 {
            for degree in 0..=3u8 {
                if matched > 0 && degree == 3 {
                    continue;
                }
                if matched == 2 && degree > 0 {
                    continue;
                }
                let c = VertexClass::from_parts(degree, matched);
                let y = (c == VertexClass::Y3) as i64;
                let z = (c == VertexClass::Z2) as i64;
                let zeta = c.zeta_weight();
                assert_eq!(weight_a(degree, matched), y + zeta, "{c:?}");
                assert_eq!(weight_b(degree, matched), 2 * y + z + zeta, "{c:?}");
            }
        }
    }
}
