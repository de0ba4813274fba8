//! Library side of the `novikov` command-line tool: input documents, the
//! bundled example corpus and the command implementations.

pub mod commands;
pub mod corpus;
pub mod document;
