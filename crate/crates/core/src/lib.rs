#![no_std]
// `num_traits::Float` imports go unused whenever std is in the dependency graph.
#![allow(unused_imports)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod error;
pub mod linalg;
pub mod measures;
pub mod optimizer;
pub mod quantum;
pub mod report;

pub use error::{Error, Result};
pub use report::BoundReport;
