//! Text formats and the command-line front end.

pub mod cli;
pub mod parse;
pub mod print;

pub use cli::run_command;
pub use parse::{parse_polynomial, parse_polynomial_list, parse_spec, DerivationSpec, ParseError, ParseErrorKind};
pub use print::{
    print_generators, print_ideal, print_point, print_polynomial, print_rational, print_spec, print_spoly,
};
