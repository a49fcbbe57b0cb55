//! Feedback vertex set certificates: the set, the exact rational bound it is
//! certified against, and the reduction trace that produced it.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{validate_fvs, Edge, Graph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// `(n + 2) / 3`
    CubicNPlus2Over3,
    /// `4m / 3g`, unit weights.
    Planar4mOver3g,
    /// `4w(G) / 3g`
    PlanarWeighted,
    /// `2w(G) / g`
    Trivial2mOverG,
    ExactOptimum,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BoundKind::CubicNPlus2Over3 => "(n+2)/3",
            BoundKind::Planar4mOver3g => "4m/3g",
            BoundKind::PlanarWeighted => "4w/3g",
            BoundKind::Trivial2mOverG => "2m/g",
            BoundKind::ExactOptimum => "exact",
        };
        f.write_str(s)
    }
}

/// Non-negative rational `num / den`, kept unreduced as built so the
/// provenance of each factor stays visible; comparisons cross-multiply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub kind: BoundKind,
    pub num: u64,
    pub den: u64,
}

impl Bound {
    pub fn new(kind: BoundKind, num: u64, den: u64) -> Self {
        assert!(den > 0, "bound denominator must be positive");
        Bound { kind, num, den }
    }

    pub fn cubic(n: usize) -> Self {
        Bound::new(BoundKind::CubicNPlus2Over3, n as u64 + 2, 3)
    }

    pub fn planar_unweighted(m: usize, g: u64) -> Self {
        Bound::new(BoundKind::Planar4mOver3g, 4 * m as u64, 3 * g)
    }

    pub fn planar_weighted(total_weight: u64, g: u64) -> Self {
        Bound::new(BoundKind::PlanarWeighted, 4 * total_weight, 3 * g)
    }

    pub fn trivial(total_weight: u64, g: u64) -> Self {
        Bound::new(BoundKind::Trivial2mOverG, 2 * total_weight, g)
    }

    pub fn exact(phi: usize) -> Self {
        Bound::new(BoundKind::ExactOptimum, phi as u64, 1)
    }

    /// `size <= num / den`, in integers.
    pub fn admits(&self, size: usize) -> bool {
        (size as u128) * (self.den as u128) <= self.num as u128
    }

    pub fn reduced(&self) -> (u64, u64) {
        let d = self.num.gcd(&self.den).max(1);
        (self.num / d, self.den / d)
    }

    pub fn floor(&self) -> u64 {
        self.num / self.den
    }

    /// `self <= other` as rationals.
    pub fn le(&self, other: &Bound) -> bool {
        (self.num as u128) * (other.den as u128) <= (other.num as u128) * (self.den as u128)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.reduced();
        if d == 1 {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/{d}")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleId {
    // Subcubic solver, in priority order.
    Base,
    Degree2,
    AdjacentTriangles,
    TriangleSquare,
    TwoSquares,
    TwoEdgeCut,
    Triangle,
    Generic,
    OracleFallback,
    // Planar girth solver, in priority order.
    Prune,
    Decompose,
    SingleCycle,
    Merge,
    Split,
    Suppress,
    CubicCore,
    // Face-count baseline.
    FaceGreedy,
}

/// Which construction of a rule was used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleCase {
    Only,
    /// Degree-2 vertex with non-adjacent neighbors: replaced by an edge.
    Smooth,
    /// Degree-2 vertex on a triangle whose outer neighbors are adjacent.
    PendantTriangle,
    /// Degree-2 vertex on a triangle; outer neighbors get joined.
    PendantTriangleJoin,
    /// Triangle plus square with a vertex adjacent to both far corners.
    CommonNeighbor,
    NoCommonNeighbor,
    /// Two squares sharing two edges, three distinct outer neighbors.
    AllDistinct,
    /// Two squares sharing two edges, two outer neighbors coincide.
    PairedOuter,
    PairedOuterJoin,
    /// Minimum 2-edge cut, the cut vertex's inner neighbors are adjacent.
    CutTriangle,
    /// Minimum 2-edge cut, the chosen neighbor sits on a triangle.
    NeighborTriangle,
    /// Minimum 2-edge cut, a second-level neighbor sits on a triangle.
    SecondNeighborTriangle,
    /// Minimum 2-edge cut, no nearby triangle.
    CutGeneric,
}

/// One rule application.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub rule: RuleId,
    pub case: RuleCase,
    /// The matched configuration, in the order the rule names its vertices.
    pub matched: Vec<VertexId>,
    pub removed_vertices: Vec<VertexId>,
    pub added_vertices: Vec<VertexId>,
    pub removed_edges: Vec<Edge>,
    pub added_edges: Vec<Edge>,
    /// Vertices this step puts into the solution.
    pub designated: Vec<VertexId>,
}

impl ReductionStep {
    pub fn new(rule: RuleId, case: RuleCase) -> Self {
        ReductionStep {
            rule,
            case,
            matched: Vec::new(),
            removed_vertices: Vec::new(),
            added_vertices: Vec::new(),
            removed_edges: Vec::new(),
            added_edges: Vec::new(),
            designated: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FvsCertificate {
    pub set: BTreeSet<VertexId>,
    pub bound: Bound,
    pub trace: Vec<ReductionStep>,
    /// Reductions that left their graph class and were resolved by the exact
    /// oracle instead. Always zero unless a rule is broken.
    pub fallbacks: usize,
}

impl FvsCertificate {
    pub fn size(&self) -> usize {
        self.set.len()
    }

    pub fn meets_bound(&self) -> bool {
        self.bound.admits(self.set.len())
    }

    /// The set is a feedback vertex set of `g` and meets the bound.
    pub fn verify(&self, g: &Graph) -> Result<bool> {
        Ok(validate_fvs(g, &self.set)? && self.meets_bound())
    }

    pub fn trace_json_lines(&self) -> Result<String> {
        let mut out = String::new();
        for step in &self.trace {
            out.push_str(&serde_json::to_string(step)?);
            out.push('\n');
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_arithmetic_is_exact() {
        let b = Bound::cubic(4);
        assert!(b.admits(2));
        assert!(!b.admits(3));
        let p = Bound::planar_unweighted(30, 5);
        assert_eq!(p.reduced(), (8, 1));
        assert!(p.admits(8) && !p.admits(9));
        let t = Bound::trivial(30, 5);
        assert!(p.le(&t));
        assert_eq!(Bound::planar_unweighted(12, 9).to_string(), "16/9");
    }
}
