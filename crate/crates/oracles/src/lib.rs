//! Reference computations for tests. Nothing here shares code with the
//! library under test.

pub mod dd;
pub mod lp;
pub mod paths;
pub mod search;
