//! Tokenizer and precedence-climbing parser for session expressions.

use num_bigint::BigInt;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number {n}"),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    /// 0-based column in the source line.
    pub col: usize,
}

pub fn tokenize(src: &str, line: usize, offset: usize) -> Result<Vec<Token>, CliError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = offset + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Num(s.parse().unwrap()),
                col,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                col,
            });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            _ => {
                return Err(CliError::Syntax {
                    line,
                    column: col,
                    expected: format!("an expression character, found '{c}'"),
                })
            }
        };
        out.push(Token { tok, col });
        i += 1;
    }
    out.push(Token {
        tok: Tok::End,
        col: offset + chars.len(),
    });
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt, usize),
    Name(String, usize),
    Neg(Box<Expr>, usize),
    Bin(BinOp, Box<Expr>, Box<Expr>, usize),
    Tuple(Vec<Expr>, usize),
}

impl Expr {
    pub fn col(&self) -> usize {
        match self {
            Expr::Num(_, c) | Expr::Name(_, c) | Expr::Neg(_, c) | Expr::Bin(_, _, _, c) | Expr::Tuple(_, c) => *c,
        }
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    line: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T, CliError> {
        let t = self.peek();
        Err(CliError::Syntax {
            line: self.line,
            column: t.col,
            expected: format!("expected {expected}, found {}", t.tok.describe()),
        })
    }

    // top level: comma lists become tuples only inside parentheses
    fn expr(&mut self) -> Result<Expr, CliError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            let col = self.bump().col;
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), col);
        }
    }

    fn term(&mut self) -> Result<Expr, CliError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().tok {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            let col = self.bump().col;
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), col);
        }
    }

    fn unary(&mut self) -> Result<Expr, CliError> {
        if self.peek().tok == Tok::Minus {
            let col = self.bump().col;
            let inner = self.unary()?;
            return Ok(Expr::Neg(Box::new(inner), col));
        }
        if self.peek().tok == Tok::Plus {
            self.bump();
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, CliError> {
        let base = self.atom()?;
        if self.peek().tok == Tok::Caret {
            let col = self.bump().col;
            // right associative; a leading minus is allowed in the exponent position
            let exp = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exp), col));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, CliError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Num(n) => {
                self.bump();
                Ok(Expr::Num(n, t.col))
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Expr::Name(s, t.col))
            }
            Tok::LParen => {
                self.bump();
                if self.peek().tok == Tok::RParen {
                    self.bump();
                    return Ok(Expr::Tuple(Vec::new(), t.col));
                }
                let first = self.expr()?;
                if self.peek().tok == Tok::RParen {
                    self.bump();
                    return Ok(first);
                }
                let mut items = vec![first];
                while self.peek().tok == Tok::Comma {
                    self.bump();
                    // "(p,)" is a one-element tuple
                    if self.peek().tok == Tok::RParen {
                        break;
                    }
                    items.push(self.expr()?);
                }
                if self.peek().tok != Tok::RParen {
                    return self.fail("',' or ')'");
                }
                self.bump();
                Ok(Expr::Tuple(items, t.col))
            }
            _ => self.fail("a number, a name or '('"),
        }
    }
}

/// Parses one expression; `offset` is the column of `src` within its line.
pub fn parse_expr(src: &str, line: usize, offset: usize) -> Result<Expr, CliError> {
    let toks = tokenize(src, line, offset)?;
    let mut p = Parser { toks, pos: 0, line };
    let e = p.expr()?;
    if p.peek().tok != Tok::End {
        return p.fail("an operator or end of line");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse_expr("1/2*x1^2", 1, 0).unwrap();
        let Expr::Bin(BinOp::Mul, l, r, _) = e else { panic!() };
        assert!(matches!(*l, Expr::Bin(BinOp::Div, _, _, _)));
        assert!(matches!(*r, Expr::Bin(BinOp::Pow, _, _, _)));
        let e = parse_expr("-x1^2", 1, 0).unwrap();
        assert!(matches!(e, Expr::Neg(_, 0)));
        let e = parse_expr("(x1, x2 + 1)", 1, 0).unwrap();
        assert!(matches!(e, Expr::Tuple(ref v, 0) if v.len() == 2));
    }

    #[test]
    fn error_columns() {
        let err = parse_expr("x1 + * 2", 1, 3).unwrap_err();
        assert!(matches!(err, CliError::Syntax { line: 1, column: 8, .. }));
        let err = parse_expr("(x1, x2", 4, 0).unwrap_err();
        assert!(matches!(err, CliError::Syntax { line: 4, column: 7, .. }));
        let err = parse_expr("x1 $ 2", 1, 0).unwrap_err();
        assert!(matches!(err, CliError::Syntax { column: 3, .. }));
    }
}
