//! Reusable augmented data structures backing the solver modules.
//!
//! Every structure here has a naive reference implementation in the test
//! suite; randomized operation sequences must match it exactly. Contract
//! violations (out-of-range indices, non-monotone pushes, deleting absent
//! points) panic with a descriptive message.

mod deque;
mod heap;
mod multiset_tree;
mod range_tree;
mod rmq;
mod seg_add;
mod seg_assign;

pub use deque::{DequeEntry, MonotoneDeque};
pub use heap::IndexedHeap;
pub use multiset_tree::MinMultisetTree;
pub use range_tree::{RangeTree2d, RtWeight};
pub use rmq::SparseRmq;
pub use seg_add::{Aggregate, SegTreeAddMinMax, SegValue};
pub use seg_assign::SegTreeAssign;
