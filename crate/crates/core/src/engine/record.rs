use std::fmt;

/// Which branch of the greedy executed a step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum StepKind {
    /// A `Y1` vertex was chosen.
    OneA,
    /// A `Y2` vertex was chosen.
    OneB,
    /// A `Z1` vertex was chosen.
    OneC,
    /// A `Y3` vertex was chosen.
    Two,
}

impl StepKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StepKind::OneA => "1a",
            StepKind::OneB => "1b",
            StepKind::OneC => "1c",
            StepKind::Two => "2",
        }
    }

    pub fn parse(s: &str) -> Option<StepKind> {
        Some(match s {
            "1a" => StepKind::OneA,
            "1b" => StepKind::OneB,
            "1c" => StepKind::OneC,
            "2" => StepKind::Two,
            _ => return None,
        })
    }
}

/// What the selection move hit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Sigma {
    Y,
    Z,
    Zeta,
    /// A loop exposed while extending a `Y3` vertex.
    Loop,
    /// A `Z1` endpoint selected the other endpoint of its own path, which was
    /// in `Z2`.
    Multi,
}

/// What the deletion move hit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Deletion {
    Y,
    Z,
    Zeta,
}

impl Sigma {
    pub fn as_str(self) -> &'static str {
        match self {
            Sigma::Y => "Y",
            Sigma::Z => "Z",
            Sigma::Zeta => "zeta",
            Sigma::Loop => "loop",
            Sigma::Multi => "multi",
        }
    }

    pub fn parse(s: &str) -> Option<Sigma> {
        Some(match s {
            "Y" => Sigma::Y,
            "Z" => Sigma::Z,
            "zeta" => Sigma::Zeta,
            "loop" => Sigma::Loop,
            "multi" => Sigma::Multi,
            _ => return None,
        })
    }

    /// Whether this selection forces a deletion move.
    pub fn forces_deletion(self) -> bool {
        matches!(self, Sigma::Z | Sigma::Multi)
    }
}

impl Deletion {
    pub fn as_str(self) -> &'static str {
        match self {
            Deletion::Y => "Y",
            Deletion::Z => "Z",
            Deletion::Zeta => "zeta",
        }
    }

    pub fn parse(s: &str) -> Option<Deletion> {
        Some(match s {
            "Y" => Deletion::Y,
            "Z" => Deletion::Z,
            "zeta" => Deletion::Zeta,
            _ => return None,
        })
    }

    pub fn from_sigma(s: Sigma) -> Option<Deletion> {
        match s {
            Sigma::Y => Some(Deletion::Y),
            Sigma::Z => Some(Deletion::Z),
            Sigma::Zeta => Some(Deletion::Zeta),
            _ => None,
        }
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for Deletion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The tracked variables at one instant. `m` is the number of unexposed
/// edges.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct Snapshot {
    pub y: i64,
    pub z: i64,
    pub zeta: i64,
    pub a: i64,
    pub b: i64,
    pub m: i64,
}

impl Snapshot {
    /// Component-wise `self - earlier`.
    pub fn minus(&self, earlier: &Snapshot) -> Snapshot {
        Snapshot {
            y: self.y - earlier.y,
            z: self.z - earlier.z,
            zeta: self.zeta - earlier.zeta,
            a: self.a - earlier.a,
            b: self.b - earlier.b,
            m: self.m - earlier.m,
        }
    }
}

/// One iteration of the greedy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct StepRecord {
    pub i: usize,
    pub kind: StepKind,
    pub sigma: Sigma,
    pub delta: Option<Deletion>,
    pub before: Snapshot,
    pub after: Snapshot,
}

impl StepRecord {
    pub fn change(&self) -> Snapshot {
        self.after.minus(&self.before)
    }
}

fn ind(b: bool) -> i64 {
    b as i64
}

/// Change of `(A, B)` over one step, determined by the event symbols alone.
///
/// `ΔB = -2 + 1{σ=loop} - 1{δ=ζ}` and
/// `ΔA = -1 - 1{σ=Y} - 1{σ=ζ} + 1{σ=loop} + 1{σ=Z} + 1{σ=multi} - 2·1{δ=ζ}`.
/// The `σ=multi` coefficient is the one obtained by adding the `ΔY` and `Δζ`
/// identities of [`yz_zeta_change`].
pub fn ab_change(sigma: Sigma, delta: Option<Deletion>) -> (i64, i64) {
    let s = |x: Sigma| ind(sigma == x);
    let d = |x: Deletion| ind(delta == Some(x));
    let da = -1 - s(Sigma::Y) - s(Sigma::Zeta) + s(Sigma::Loop) + s(Sigma::Z) + s(Sigma::Multi)
        - 2 * d(Deletion::Zeta);
    let db = -2 + s(Sigma::Loop) - d(Deletion::Zeta);
    (da, db)
}

/// Change of `(Y, Z, ζ)` over one step; unlike [`ab_change`] this depends on
/// whether `ζ` was positive when the step began.
pub fn yz_zeta_change(sigma: Sigma, delta: Option<Deletion>, zeta_positive: bool) -> (i64, i64, i64) {
    let s = |x: Sigma| ind(sigma == x);
    let d = |x: Deletion| ind(delta == Some(x));
    let deleting = s(Sigma::Z) + s(Sigma::Multi);
    let idle = ind(!zeta_positive);
    let dy = -idle - s(Sigma::Y) - deleting * d(Deletion::Y);
    let dz = idle + s(Sigma::Y) - s(Sigma::Z) - s(Sigma::Loop) - s(Sigma::Multi) - deleting * d(Deletion::Z);
    let dzeta = -ind(zeta_positive) + s(Sigma::Loop) - s(Sigma::Zeta)
        + deleting * (-d(Deletion::Zeta) + d(Deletion::Z) + 2 * d(Deletion::Y));
    (dy, dz, dzeta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_change_is_sum_of_y_and_zeta_changes() {
        let sigmas = [Sigma::Y, Sigma::Z, Sigma::Zeta, Sigma::Loop, Sigma::Multi];
        for sigma in sigmas {
            let deltas: Vec<Option<Deletion>> = if sigma.forces_deletion() {
                vec![Some(Deletion::Y), Some(Deletion::Z), Some(Deletion::Zeta)]
            } else {
                vec![None]
            };
            for delta in deltas {
                for zeta_positive in [false, true] {
                    let (dy, dz, dzeta) = yz_zeta_change(sigma, delta, zeta_positive);
                    let (da, db) = ab_change(sigma, delta);
                    assert_eq!(da, dy + dzeta, "{sigma:?} {delta:?}");
                    assert_eq!(db, 2 * dy + dz + dzeta, "{sigma:?} {delta:?}");
                }
            }
        }
    }

    #[test]
    fn z_then_y_deletion_leaves_a_unchanged() {
        assert_eq!(ab_change(Sigma::Z, Some(Deletion::Y)), (0, -2));
        assert_eq!(yz_zeta_change(Sigma::Z, Some(Deletion::Y), true).2, 1);
    }

    #[test]
    fn b_change_examples() {
        assert_eq!(ab_change(Sigma::Loop, None).1, -1);
        assert_eq!(ab_change(Sigma::Z, Some(Deletion::Zeta)).1, -3);
        assert_eq!(ab_change(Sigma::Y, None).1, -2);
    }
}
