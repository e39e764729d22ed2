//! Combinatorics of translation quivers, roots of the Auslander-Reiten
//! translation, McKay quivers of cyclic subgroups of SL and the quiver rules for
//! endomorphism algebras of shifted sums of cluster tilting objects.

pub mod cyreduce;
pub mod dynkin;
pub mod graph;
pub mod io;
pub mod mckay;
pub mod quiver;
pub mod shiftedsum;
pub mod ztranslation;

pub use dynkin::{dynkin_classify, DynkinLabel};
pub use graph::{graph_automorphism_extends, UnderlyingGraph};
pub use quiver::{Arrow, ColoredQuiver, QuiverError, VertexId};
