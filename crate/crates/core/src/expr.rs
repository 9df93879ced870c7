//! A deliberately tiny arithmetic expression language for user-supplied
//! functions in config files: `+ - * / ^`, `abs`, `exp`, `sqrt`, numeric
//! literals and a single variable written `x` or `t`. Nothing else parses,
//! so a config can never smuggle in general code execution.

use crate::error::{Error, Result};

/// A parsed expression in one variable.
#[derive(Debug, Clone, PartialEq)]
pub enum Expression {
    Number(f64),
    Variable,
    Neg(Box<Expression>),
    Add(Box<Expression>, Box<Expression>),
    Sub(Box<Expression>, Box<Expression>),
    Mul(Box<Expression>, Box<Expression>),
    Div(Box<Expression>, Box<Expression>),
    Pow(Box<Expression>, Box<Expression>),
    Abs(Box<Expression>),
    Exp(Box<Expression>),
    Sqrt(Box<Expression>),
}

impl Expression {
    /// Parse `source`; the whole input must be consumed.
    pub fn parse(source: &str) -> Result<Self> {
        let tokens = tokenize(source)?;
        let mut parser = Parser { tokens, pos: 0 };
        let expr = parser.expression()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::Parse(format!(
                "unexpected trailing input at token {:?}",
                parser.tokens[parser.pos]
            )));
        }
        Ok(expr)
    }

    /// Evaluate at the variable value `x`. Division by zero, negative
    /// fractional powers and friends follow IEEE semantics; callers treat
    /// non-finite results as evaluation failures.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Expression::Number(v) => *v,
            Expression::Variable => x,
            Expression::Neg(e) => -e.eval(x),
            Expression::Add(a, b) => a.eval(x) + b.eval(x),
            Expression::Sub(a, b) => a.eval(x) - b.eval(x),
            Expression::Mul(a, b) => a.eval(x) * b.eval(x),
            Expression::Div(a, b) => a.eval(x) / b.eval(x),
            Expression::Pow(a, b) => a.eval(x).powf(b.eval(x)),
            Expression::Abs(e) => e.eval(x).abs(),
            Expression::Exp(e) => e.eval(x).exp(),
            Expression::Sqrt(e) => e.eval(x).sqrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(f64),
    Variable,
    Func(&'static str),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(source: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = source.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '/' => {
                tokens.push(Token::Slash);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            '(' => {
                tokens.push(Token::LParen);
                i += 1;
            }
            ')' => {
                tokens.push(Token::RParen);
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                // Exponent suffix: 1e-3, 2.5E4.
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        i = j;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text: String = chars[start..i].iter().collect();
                let value = text
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad numeric literal '{text}'")))?;
                tokens.push(Token::Number(value));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                match word.as_str() {
                    "x" | "t" => tokens.push(Token::Variable),
                    "abs" => tokens.push(Token::Func("abs")),
                    "exp" => tokens.push(Token::Func("exp")),
                    "sqrt" => tokens.push(Token::Func("sqrt")),
                    other => {
                        return Err(Error::Parse(format!("unknown identifier '{other}'")));
                    }
                }
            }
            other => {
                return Err(Error::Parse(format!("unexpected character '{other}'")));
            }
        }
    }
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn advance(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expression(&mut self) -> Result<Expression> {
        let mut left = self.term()?;
        while let Some(op) = self.peek() {
            match op {
                Token::Plus => {
                    self.advance();
                    left = Expression::Add(Box::new(left), Box::new(self.term()?));
                }
                Token::Minus => {
                    self.advance();
                    left = Expression::Sub(Box::new(left), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<Expression> {
        let mut left = self.unary()?;
        while let Some(op) = self.peek() {
            match op {
                Token::Star => {
                    self.advance();
                    left = Expression::Mul(Box::new(left), Box::new(self.unary()?));
                }
                Token::Slash => {
                    self.advance();
                    left = Expression::Div(Box::new(left), Box::new(self.unary()?));
                }
                _ => break,
            }
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Expression> {
        if self.peek() == Some(&Token::Minus) {
            self.advance();
            return Ok(Expression::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expression> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.advance();
            // Right-associative; `-` binds tighter in the exponent so
            // `x^-2` works.
            let exponent = self.unary()?;
            return Ok(Expression::Pow(Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expression> {
        match self.advance() {
            Some(Token::Number(v)) => Ok(Expression::Number(v)),
            Some(Token::Variable) => Ok(Expression::Variable),
            Some(Token::Func(name)) => {
                if self.advance() != Some(Token::LParen) {
                    return Err(Error::Parse(format!("expected '(' after {name}")));
                }
                let inner = self.expression()?;
                if self.advance() != Some(Token::RParen) {
                    return Err(Error::Parse(format!("missing ')' after {name}(...")));
                }
                let boxed = Box::new(inner);
                Ok(match name {
                    "abs" => Expression::Abs(boxed),
                    "exp" => Expression::Exp(boxed),
                    _ => Expression::Sqrt(boxed),
                })
            }
            Some(Token::LParen) => {
                let inner = self.expression()?;
                if self.advance() != Some(Token::RParen) {
                    return Err(Error::Parse("missing closing ')'".into()));
                }
                Ok(inner)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}
