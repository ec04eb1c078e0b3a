//! Finite k-graphs and the exact combinatorics of their boundary-path spaces.

pub mod boundary;
pub mod catalog;
pub mod cnp;
pub mod degree;
pub mod error;
pub mod exel;
pub mod faults;
pub mod function;
pub mod graph;
pub mod oracle;
pub mod product;
pub mod report;
pub mod text;

pub use boundary::{BasicSet, BoundPolicy, BoundaryAlgebra, CylinderSet};
pub use cnp::{FeWitness, Gen, OpExpr, Verifier};
pub use degree::Degree;
pub use error::{Error, Result};
pub use exel::{detect_regularity, Dynamics, WeightKind};
pub use function::{CompactOp, CylinderFunction, Scalar, TupleElement};
pub use graph::{EdgeId, KGraph, Path, Skeleton, VertexId};
pub use oracle::PrefixUniverse;
pub use product::{ProductSystem, SpanCap};
pub use report::{Outcome, Report, ReportLine};
pub use text::{parse_degree, parse_graph, write_graph};
