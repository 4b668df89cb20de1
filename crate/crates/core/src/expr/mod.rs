//! Expression language for the functions under test.
//!
//! Variables are `x1`..`x10` with the aliases `x`, `y`, `z` for the first
//! three. Recognized functions are `sin cos exp log sqrt tanh abs`;
//! `pi` and `e` expand to literals.

mod ast;
mod eval;
mod lexer;
mod parser;

use thiserror::Error;

pub use ast::{print_canonical, BinaryOp, Expr, Func, MAX_VARS};
pub use eval::{eval, eval_scalar, Scalar};
pub use lexer::{tokenize, Spanned, Token};
pub use parser::{parse, variable_index};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("lexical error at byte {offset}: unexpected '{found}'")]
    Lex { offset: usize, found: String },
    #[error("parse error at token {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("{function} takes {expected} argument(s), got {found}")]
    Arity {
        function: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("variable x{0} is not bound")]
    UnboundVariable(usize),
    #[error("domain error in {subexpr}: {reason} (argument {argument})")]
    Domain {
        reason: &'static str,
        argument: f64,
        subexpr: String,
    },
    #[error("derivative undefined in {0}: abs at exactly zero")]
    DerivativeUndefined(String),
}

impl ExprError {
    /// True for errors raised while evaluating (as opposed to parsing).
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            ExprError::Domain { .. } | ExprError::DerivativeUndefined(_) | ExprError::UnboundVariable(_)
        )
    }
}
