//! Exact relative Tutte polynomials of colored multigraphs with zero edges,
//! the pointed polynomials of a graph with a distinguished edge, and the
//! substitution formula for λ-colored tensor products.

pub mod blocks;
pub mod canon;
pub mod error;
pub mod format;
pub mod graph;
pub mod oracle;
pub mod pointed;
pub mod poly;
pub mod random;
pub mod suite;
pub mod tensor;
pub mod tutte;

pub use canon::PivotClassKey;
pub use error::{FormatError, GraphError, PointedError, PolyError, TensorError, TutteError};
pub use format::{parse_graph, print_graph};
pub use graph::{Color, ColoredMultigraph, Edge, EdgeId, EdgeKind, Orientation, VertexId};
pub use pointed::{
    classify_pair, partition_sum, pi_0, pi_c, pi_contract, pi_delete, pi_l, pointed_identities, pointed_polys,
    t0_terms, PairType, PointedGraph, PointedPolys,
};
pub use poly::{equal_mod_ideal, evaluate, EvaluationPoint, Monomial, RelPolynomial, VarKind, VariableId, ZKey};
pub use tensor::{
    beta_lambda, beta_zero, compose_contracting_set, induced_partition, partition_count, product_labeling, sigma,
    substitution_rhs, tensor_product, verify_tensor_formula, InducedPartition, TensorInstance, TensorReport,
    VerifyOptions,
};
pub use tutte::{
    activities, activities_via_cycles, enumerate_contracting_sets, terminal_graph, tutte_recursive, universal_tutte,
    universal_tutte_statesum, Activity, ContractingSet, ProperLabeling,
};
