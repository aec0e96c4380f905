//! Class-specific vertex orders: interval lex, tree-model lex-DFS, planar
//! facial BFS and the cell-by-cell order of segment splittings.

pub mod interval;
pub mod planar;
pub mod rdp;
pub mod segments;

pub use interval::{increasing_chain, interval_lex_order, start_intervals};
pub use planar::{planar_facial_order, verify_layer_lemmas, LayerReport, LayeredOrder, PlanarEmbedding};
pub use rdp::{is_minimal, minimality_check, rdp_lex_dfs_order, verify_rdp_order, NodeWitness, RdpReport, TreeModel};
pub use segments::{segment_global_order, SegmentOrder};
