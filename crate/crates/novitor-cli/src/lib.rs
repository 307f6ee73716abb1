//! Library surface of the CLI: model-file parsing and twist grammar,
//! shared with the integration and acceptance test suites.

pub mod modelfile;
