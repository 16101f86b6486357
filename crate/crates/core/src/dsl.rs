//! Parser for dimension expressions and problem files.
//!
//! Dimension expressions are either `1` or a `*`-separated product of
//! `NAME`, `NAME^INT` or `NAME^(INT/INT)` terms. Whitespace between tokens
//! is ignored. Problem files are line oriented:
//!
//! ```text
//! # comment
//! dimensions: S U T M
//! quantity Q : S
//! quantity P : S^-1 * U * M^-1
//! target G : M
//! ```

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dims::{is_identifier, DimVector, DimensionSystem, Problem, Quantity};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Int(BigInt),
    Star,
    Caret,
    Slash,
    Minus,
    Plus,
    LParen,
    RParen,
    End,
}

/// Token plus its 1-based column.
type Spanned = (Token, usize);

fn tokenize(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '*' => Some(Token::Star),
            '^' => Some(Token::Caret),
            '/' => Some(Token::Slash),
            '-' => Some(Token::Minus),
            '+' => Some(Token::Plus),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            tokens.push((tok, col));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            tokens.push((Token::Int(digits.parse().expect("ascii digits")), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            tokens.push((Token::Ident(chars[start..i].iter().collect()), col));
        } else {
            return Err(Error::MalformedExpression {
                position: col,
                reason: format!("unexpected character `{c}`"),
            });
        }
    }
    tokens.push((Token::End, chars.len() + 1));
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<Spanned>,
    pos: usize,
    system: &'a DimensionSystem,
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let tok = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn fail<T>(&self, position: usize, reason: impl Into<String>) -> Result<T> {
        Err(Error::MalformedExpression {
            position,
            reason: reason.into(),
        })
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<()> {
        let (tok, col) = self.next();
        if tok == want {
            Ok(())
        } else {
            self.fail(col, format!("expected {what}"))
        }
    }

    fn expression(&mut self) -> Result<DimVector> {
        let mut out = vec![Rational::zero(); self.system.len()];
        if let (Token::Int(v), _) = self.peek() {
            if v.is_one() && self.tokens[self.pos + 1].0 == Token::End {
                return Ok(DimVector::new(out));
            }
        }
        loop {
            let (name, col) = match self.next() {
                (Token::Ident(name), col) => (name, col),
                (_, col) => return self.fail(col, "expected a dimension name"),
            };
            let index = self.system.index_of(&name).ok_or(Error::UnknownDimension {
                name: name.clone(),
                position: col,
            })?;
            let exponent = if self.peek().0 == Token::Caret {
                self.next();
                self.exponent()?
            } else {
                Rational::one()
            };
            out[index] += exponent;
            match self.next() {
                (Token::Star, _) => continue,
                (Token::End, _) => break,
                (_, col) => return self.fail(col, "expected `*` or end of expression"),
            }
        }
        Ok(DimVector::new(out))
    }

    fn exponent(&mut self) -> Result<Rational> {
        if self.peek().0 == Token::LParen {
            self.next();
            let numer = self.signed_int()?;
            let denom = if self.peek().0 == Token::Slash {
                self.next();
                self.signed_int()?
            } else {
                BigInt::one()
            };
            self.expect(Token::RParen, "`)`")?;
            if denom.is_zero() {
                return Err(Error::ZeroDenominatorExponent);
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from_integer(self.signed_int()?))
        }
    }

    fn signed_int(&mut self) -> Result<BigInt> {
        let negative = match self.peek().0 {
            Token::Minus => {
                self.next();
                true
            }
            Token::Plus => {
                self.next();
                false
            }
            _ => false,
        };
        match self.next() {
            (Token::Int(v), _) => Ok(if negative { -v } else { v }),
            (_, col) => self.fail(col, "expected an integer exponent"),
        }
    }
}

/// Parses a dimension expression over `system` into its exponent vector.
/// Repeated names accumulate: `S * S^-1` is dimensionless.
pub fn parse_dim_expr(text: &str, system: &DimensionSystem) -> Result<DimVector> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        system,
    };
    parser.expression()
}

enum Declaration {
    Quantity,
    Target,
}

/// Parses a problem file. Errors carry the 1-based line number.
pub fn parse_problem(text: &str) -> Result<Problem> {
    let mut system: Option<DimensionSystem> = None;
    let mut explanatory = Vec::new();
    let mut target: Option<Quantity> = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }

        let Some(system) = system.as_ref() else {
            let names = line
                .strip_prefix("dimensions")
                .and_then(|rest| rest.trim_start().strip_prefix(':'))
                .ok_or_else(|| {
                    Error::MalformedExpression {
                        position: 1,
                        reason: "first declaration must be `dimensions: NAME ...`".into(),
                    }
                    .at_line(line_no)
                })?;
            system = Some(DimensionSystem::new(names.split_whitespace()).map_err(|e| e.at_line(line_no))?);
            continue;
        };

        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let kind = match keyword {
            "quantity" => Declaration::Quantity,
            "target" => Declaration::Target,
            "dimensions" | "dimensions:" => {
                return Err(Error::MalformedExpression {
                    position: 1,
                    reason: "dimensions declared twice".into(),
                }
                .at_line(line_no))
            }
            other => {
                return Err(Error::MalformedExpression {
                    position: 1,
                    reason: format!("unknown declaration `{other}`"),
                }
                .at_line(line_no))
            }
        };
        let (name, expr) = rest.split_once(':').ok_or_else(|| {
            Error::MalformedExpression {
                position: keyword.len() + 1,
                reason: "expected `NAME : DIMEXPR`".into(),
            }
            .at_line(line_no)
        })?;
        let name = name.trim();
        if !is_identifier(name) {
            return Err(Error::MalformedExpression {
                position: keyword.len() + 2,
                reason: format!("`{name}` is not a valid quantity name"),
            }
            .at_line(line_no));
        }
        let dim = parse_dim_expr(expr, system).map_err(|e| e.at_line(line_no))?;
        let quantity = Quantity::new(name, dim);

        let clashes = explanatory.iter().chain(target.iter()).any(|q: &Quantity| q.name == name);
        match kind {
            Declaration::Target if target.is_some() => {
                return Err(Error::MultipleTargets.at_line(line_no));
            }
            _ if clashes => {
                return Err(Error::DuplicateQuantity(name.to_string()).at_line(line_no));
            }
            Declaration::Target => target = Some(quantity),
            Declaration::Quantity => explanatory.push(quantity),
        }
    }

    let system = system.ok_or_else(|| {
        Error::MalformedExpression {
            position: 1,
            reason: "missing `dimensions:` declaration".into(),
        }
        .at_line(last_line.max(1))
    })?;
    let target = target.ok_or(Error::MissingTarget)?;
    Problem::new(system, explanatory, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ints, ratio};

    fn sutm() -> DimensionSystem {
        DimensionSystem::new(["S", "U", "T", "M"]).unwrap()
    }

    fn exps(v: &DimVector) -> Vec<Rational> {
        v.exponents().to_vec()
    }

    #[test]
    fn parses_price_and_variance_columns() {
        let sys = sutm();
        assert_eq!(exps(&parse_dim_expr("S^-1 * U * M^-1", &sys).unwrap()), ints(&[-1, 1, 0, -1]));
        assert_eq!(exps(&parse_dim_expr("T^-1 * M^2", &sys).unwrap()), ints(&[0, 0, -1, 2]));
        assert!(parse_dim_expr("1", &sys).unwrap().is_dimensionless());
    }

    #[test]
    fn whitespace_rational_and_accumulation() {
        let sys = sutm();
        let v = parse_dim_expr("  S^( 1 / 2 )*S^(-3/2)* U ^ + 2 ", &sys).unwrap();
        assert_eq!(exps(&v), vec![int(-1), int(2), int(0), int(0)]);
        let v = parse_dim_expr("M^(2/-6)", &sys).unwrap();
        assert_eq!(exps(&v)[3], ratio(-1, 3));
        let v = parse_dim_expr("S^(3)", &sys).unwrap();
        assert_eq!(exps(&v)[0], int(3));
    }

    #[test]
    fn reports_unknown_dimension_with_position() {
        let err = parse_dim_expr("S * X", &sutm()).unwrap_err();
        assert_eq!(
            err,
            Error::UnknownDimension {
                name: "X".into(),
                position: 5
            }
        );
    }

    #[test]
    fn reports_malformed_positions() {
        let sys = sutm();
        for (text, col) in [("S *", 4), ("S ** U", 4), ("S^", 3), ("S^(1/2", 7), ("S U", 3), ("", 1), ("2", 1), ("S $", 3)] {
            match parse_dim_expr(text, &sys) {
                Err(Error::MalformedExpression { position, .. }) => {
                    assert_eq!(position, col, "input {text:?}")
                }
                other => panic!("input {text:?}: unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn zero_denominator() {
        assert_eq!(parse_dim_expr("S^(1/0)", &sutm()), Err(Error::ZeroDenominatorExponent));
    }

    const MARKET4: &str = "\
# square-root law setting
dimensions: S U T M
quantity Q : S
quantity P : S^-1 * U * M^-1
quantity V : S * T^-1
quantity sigma2 : T^-1 * M^2
target G : M
";

    #[test]
    fn parses_problem_file() {
        let p = parse_problem(MARKET4).unwrap();
        assert_eq!(p.quantity_names(), vec!["Q", "P", "V", "sigma2"]);
        assert_eq!(p.target().name, "G");
        assert_eq!(p.target_vector(), ints(&[0, 0, 0, 1]).as_slice());
        assert_eq!(parse_problem(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn single_quantity_problem() {
        let p = parse_problem("dimensions: S\nquantity x: S\ntarget u : S\n").unwrap();
        assert_eq!(p.n(), 1);
    }

    #[test]
    fn problem_errors_carry_line_numbers() {
        let dup = "dimensions: S\nquantity x : S\nquantity x : S\ntarget u : S";
        assert_eq!(
            parse_problem(dup),
            Err(Error::DuplicateQuantity("x".into()).at_line(3))
        );
        let two = "dimensions: S\nquantity x : S\ntarget u : S\ntarget v : S";
        assert_eq!(parse_problem(two), Err(Error::MultipleTargets.at_line(4)));
        assert_eq!(
            parse_problem("dimensions: S\nquantity x : S\n"),
            Err(Error::MissingTarget)
        );
        assert_eq!(
            parse_problem("dimensions: S\ntarget u : S\n"),
            Err(Error::NoExplanatoryQuantities)
        );
        match parse_problem("dimensions: S\n\nquantity x : S * Q\ntarget u : S") {
            Err(Error::AtLine { line: 3, source }) => {
                assert!(matches!(*source, Error::UnknownDimension { .. }))
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_problem("quantity x : S"),
            Err(Error::AtLine { line: 1, .. })
        ));
        assert!(matches!(
            parse_problem("dimensions: S\nfoo x : S"),
            Err(Error::AtLine { line: 2, .. })
        ));
    }

    #[test]
    fn dimensionless_explanatory_quantity_is_accepted() {
        let p = parse_problem("dimensions: L\nquantity theta : 1\nquantity l : L\ntarget d : L").unwrap();
        assert!(p.explanatory()[0].dim.is_dimensionless());
    }
}
