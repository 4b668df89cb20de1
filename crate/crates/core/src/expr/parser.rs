//! Recursive-descent parser.
//!
//! ```text
//! expr  := term (("+"|"-") term)*
//! term  := unary (("*"|"/") unary)*
//! unary := "-" unary | power
//! power := atom ("^" unary)?
//! atom  := NUMBER | IDENT | IDENT "(" expr ("," expr)* ")" | "(" expr ")"
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-x^2`
//! is `-(x^2)` and `2^3^2` is `2^(3^2)`.

use super::ast::{BinaryOp, Expr, Func, MAX_VARS};
use super::lexer::{tokenize, Spanned, Token};
use super::ExprError;

pub fn parse(source: &str) -> Result<Expr, ExprError> {
    let tokens = tokenize(source)?;
    let mut p = Parser { tokens, pos: 0 };
    let expr = p.expr()?;
    if p.pos < p.tokens.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(expr)
}

/// Resolve `x`, `y`, `z` and `x1`..`x10` to a 1-based index.
pub fn variable_index(name: &str) -> Option<usize> {
    match name {
        "x" => Some(1),
        "y" => Some(2),
        "z" => Some(3),
        _ => {
            let digits = name.strip_prefix('x')?;
            if digits.starts_with('0') {
                return None;
            }
            let i: usize = digits.parse().ok()?;
            (1..=MAX_VARS).contains(&i).then_some(i)
        }
    }
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|s| &s.token)
    }

    fn error(&self, message: &str) -> ExprError {
        ExprError::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn eat_op(&mut self, ops: &[char]) -> Option<char> {
        match self.peek() {
            Some(Token::Op(c)) if ops.contains(c) => {
                let c = *c;
                self.pos += 1;
                Some(c)
            }
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        while let Some(c) = self.eat_op(&['+', '-']) {
            let rhs = self.term()?;
            let op = if c == '+' { BinaryOp::Add } else { BinaryOp::Sub };
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        while let Some(c) = self.eat_op(&['*', '/']) {
            let rhs = self.unary()?;
            let op = if c == '*' { BinaryOp::Mul } else { BinaryOp::Div };
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat_op(&['-']).is_some() {
            return Ok(Expr::neg(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.eat_op(&['^']).is_some() {
            let exponent = self.unary()?;
            return Ok(Expr::pow(base, exponent));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.error("unexpected end of input"));
        };
        match tok {
            Token::Num(v) => {
                self.pos += 1;
                Ok(Expr::Num(v))
            }
            Token::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Token::Ident(name) => {
                self.pos += 1;
                if self.peek() == Some(&Token::LParen) {
                    return self.call(&name);
                }
                match name.as_str() {
                    "pi" => Ok(Expr::Num(std::f64::consts::PI)),
                    "e" => Ok(Expr::Num(std::f64::consts::E)),
                    _ => match variable_index(&name) {
                        Some(i) => Ok(Expr::Var(i)),
                        None => {
                            self.pos -= 1;
                            Err(self.error(&format!("unknown identifier '{name}'")))
                        }
                    },
                }
            }
            Token::RParen => Err(self.error("unexpected ')'")),
            Token::Comma => Err(self.error("unexpected ','")),
            Token::Op(c) => Err(self.error(&format!("unexpected operator '{c}'"))),
        }
    }

    fn call(&mut self, name: &str) -> Result<Expr, ExprError> {
        let Some(func) = Func::from_name(name) else {
            self.pos -= 1;
            return Err(self.error(&format!("unknown function '{name}'")));
        };
        self.pos += 1; // '('
        let mut args = vec![self.expr()?];
        while self.peek() == Some(&Token::Comma) {
            self.pos += 1;
            args.push(self.expr()?);
        }
        self.expect_rparen()?;
        if args.len() != func.arity() {
            return Err(ExprError::Arity {
                function: func.name(),
                expected: func.arity(),
                found: args.len(),
            });
        }
        Ok(Expr::call(func, args.pop().expect("one argument")))
    }

    fn expect_rparen(&mut self) -> Result<(), ExprError> {
        match self.peek() {
            Some(Token::RParen) => {
                self.pos += 1;
                Ok(())
            }
            None => Err(self.error("unclosed parenthesis")),
            Some(_) => Err(self.error("expected ')'")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Expr {
        Expr::Var(1)
    }

    #[test]
    fn precedence() {
        let ast = parse("x^2 + 3*x").unwrap();
        let expected = Expr::add(
            Expr::pow(x(), Expr::num(2.0)),
            Expr::mul(Expr::num(3.0), x()),
        );
        assert_eq!(ast, expected);
    }

    #[test]
    fn power_is_right_associative() {
        let ast = parse("2^3^2").unwrap();
        let expected = Expr::pow(
            Expr::num(2.0),
            Expr::pow(Expr::num(3.0), Expr::num(2.0)),
        );
        assert_eq!(ast, expected);
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        assert_eq!(
            parse("-x^2").unwrap(),
            Expr::neg(Expr::pow(x(), Expr::num(2.0)))
        );
        // exponent may itself be negated
        assert_eq!(
            parse("2^-x").unwrap(),
            Expr::pow(Expr::num(2.0), Expr::neg(x()))
        );
    }

    #[test]
    fn unclosed_parenthesis() {
        match parse("sin(x") {
            Err(ExprError::Parse { message, position }) => {
                assert_eq!(message, "unclosed parenthesis");
                assert_eq!(position, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn arity_is_checked() {
        assert!(matches!(
            parse("sin(x, y)"),
            Err(ExprError::Arity { function: "sin", expected: 1, found: 2 })
        ));
    }

    #[test]
    fn aliases_and_constants() {
        assert_eq!(parse("y").unwrap(), Expr::Var(2));
        assert_eq!(parse("z").unwrap(), Expr::Var(3));
        assert_eq!(parse("x10").unwrap(), Expr::Var(10));
        assert_eq!(parse("pi").unwrap(), Expr::Num(std::f64::consts::PI));
        assert!(parse("x11").is_err());
        assert!(parse("x0").is_err());
        assert!(parse("w").is_err());
        assert!(parse("foo(x)").is_err());
    }

    #[test]
    fn malformed_inputs() {
        for src in ["", "x +", "(x", "x)", "*x", "x y", "sin x", "+x", "x,y"] {
            assert!(parse(src).is_err(), "{src:?} should not parse");
        }
    }
}
