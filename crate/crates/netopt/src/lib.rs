//! Offline algorithms for network optimization on undirected graphs, trees,
//! path networks and moving 1D points.
//!
//! The crate is organized around independent solver modules, each of which
//! pairs its optimized algorithms with a brute-force reference used by the
//! test suites:
//!
//! * [`graph`] — weighted undirected multigraphs, shortest-path trees with
//!   DFS numbering and constant-time LCA queries.
//! * [`ds`] — reusable augmented structures: lazy segment trees (additive
//!   and assignment flavors), a multiset-leaf minimum tree, monotone deques,
//!   an indexed binary heap, sparse-table RMQ and a dynamic 2D range tree.
//! * [`backup`] — per-node backup shortest paths when the last edge of the
//!   original shortest path fails (four strategies).
//! * [`latency`] — inverse shortest-path retargeting and budgeted latency
//!   decrease on multicast trees.
//! * [`design`] — diameter-3 spanning subgraphs minimizing distinct edge
//!   labels, and connected k-regular graph constructions.
//! * [`cluster`] — consecutive clustering of weighted points on a line with
//!   index bounds, a generic DP and accelerated specializations.
//! * [`mobile`] — earliest time at which moving points fit inside K
//!   intervals of length L, with exact rational event processing.

pub mod backup;
pub mod cluster;
pub mod design;
pub mod ds;
pub mod graph;
pub mod latency;
pub mod mobile;
