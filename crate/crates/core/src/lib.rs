//! Exact certification of superbridge bounds for polygonal knots.
//!
//! The crate is organised along the pipeline used to pin down the superbridge
//! index of a knot from a single integer-coordinate realization:
//!
//! - [`poly`]: parsing and validating polygon files, edge vectors and the
//!   alternating sign matrix.
//! - [`gordan`]: an exact rational simplex deciding which side of Gordan's
//!   alternative holds, producing integer witnesses either way.
//! - [`superbridge`]: descent counts along directions, witness search and the
//!   classical bound formulas.
//! - [`diagram`] and [`projection`]: PD / Gauss codes and exact planar
//!   projection of a polygon.
//! - [`wirtinger`], [`homsearch`] and [`fox`]: Wirtinger presentations,
//!   transposition labelings into symmetric groups and the knot determinant.
//! - [`ledger`] and [`reproduce`]: combining bound facts into verdicts and the
//!   batch report over the bundled fixtures.
//!
//! Every decision path uses exact integer or rational arithmetic.

pub mod diagram;
pub mod exec;
pub mod fox;
pub mod gordan;
pub mod homsearch;
pub mod ledger;
pub mod poly;
pub mod projection;
pub mod reproduce;
pub mod simplex;
pub mod superbridge;
pub mod wirtinger;

pub use diagram::{DiagramError, KnotDiagram};
pub use exec::Execution;
pub use gordan::{
    canonicalize, find_certificate, find_direction, gordan_check, verify_certificate,
    DirectionVector, GordanCertificate, GordanError, GordanVerdict, Verification,
};
pub use ledger::{conclude, BoundLedger, Citation, KnowledgeTable, LedgerError, Verdict};
pub use poly::{EdgeVectors, PolyError, PolygonalKnot, SignMatrix, Vec3};
pub use projection::{project, ProjectionError, ProjectionPose};
pub use superbridge::{bridge_count, witness_search, DirectionWitness, SbBound, SbBoundKind};
pub use wirtinger::{
    presentation, propagate, Propagation, StrandSpec, Transposition, TranspositionLabeling,
    WirtingerPresentation,
};
