//! Network design constructions: diameter-3 spanning subgraphs that minimize
//! distinct edge labels (greedy heuristic), and connected k-regular graphs
//! (exact constructions).

mod diameter3;
mod kregular;

pub use diameter3::{
    diameter3_design, greedy_for_center, greedy_for_center_direct, hop_diameter,
    pick_center_vertex, CenterMode, DesignResult, LabeledComplete,
};
pub use kregular::{check_regular, kregular_even, kregular_general};

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DesignError {
    TooFewNodes { n: usize, need: usize },
    BadCenter(String),
    Parity(String),
    Disconnected(String),
    Parse { line: usize, message: String },
}

impl fmt::Display for DesignError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DesignError::TooFewNodes { n, need } => {
                write!(f, "need at least {need} nodes, got {n}")
            }
            DesignError::BadCenter(msg) => write!(f, "bad center: {msg}"),
            DesignError::Parity(msg) => write!(f, "{msg}"),
            DesignError::Disconnected(msg) => write!(f, "{msg}"),
            DesignError::Parse { line, message } => write!(f, "line {line}: {message}"),
        }
    }
}

impl std::error::Error for DesignError {}
