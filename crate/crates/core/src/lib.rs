//! Input-aware selection of quantum algorithm implementations and the
//! quantum computers able to run them.

pub mod circuit;
pub mod executor;
pub mod expr;
pub mod pipeline;
pub mod registry;
pub mod rules;
pub mod transpiler;
