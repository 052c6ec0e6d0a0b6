use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::wpoly::{Field, WPolynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

/// Parses `text` as a polynomial in the named variables.
///
/// Grammar, with `^` binding tightest and unary minus below it (so
/// `-x^2 = -(x^2)`):
///
/// ```text
/// expr  := term (('+' | '-') term)*
/// term  := unary ('*' unary)*
/// unary := ('-' | '+') unary | power
/// power := atom ('^' integer)?
/// atom  := integer | name | '(' expr ')'
/// ```
///
/// Positions in errors are 1-based character columns.
pub fn parse_polynomial(text: &str, names: &[String], field: Field) -> Result<WPolynomial> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, names, field };
    let f = p.expr()?;
    match &p.toks[p.pos] {
        (Tok::End, _) => Ok(f),
        (_, at) => Err(Error::Syntax { position: *at, message: "unexpected token".into() }),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let at = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Int(digits.parse().expect("ascii digits")), at));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), at));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(Error::Syntax { position: at, message: format!("unexpected character '{c}'") }),
        };
        out.push((t, at));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    names: &'a [String],
    field: Field,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn at(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<WPolynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<WPolynomial> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<WPolynomial> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<WPolynomial> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.at();
        match self.bump() {
            Tok::Int(k) => {
                let k = u32::try_from(k).map_err(|_| Error::Syntax { position: at, message: "exponent too large".into() })?;
                if *self.peek() == Tok::Caret {
                    return Err(Error::Syntax { position: self.at(), message: "chained exponents need parentheses".into() });
                }
                Ok(base.pow(k))
            }
            Tok::Minus => Err(Error::NegativeExponent(at)),
            _ => Err(Error::Syntax { position: at, message: "expected an integer exponent".into() }),
        }
    }

    fn atom(&mut self) -> Result<WPolynomial> {
        let at = self.at();
        let d = self.names.len();
        match self.bump() {
            Tok::Int(k) => {
                let c = self.field.element(&BigRational::from_integer(k))?;
                Ok(WPolynomial::constant(d, self.field, c))
            }
            Tok::Ident(name) => match self.names.iter().position(|v| *v == name) {
                Some(i) => Ok(WPolynomial::var(d, self.field, i)),
                None => Err(Error::UnknownVariable { name, position: at }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.at();
                match self.bump() {
                    Tok::RParen => Ok(inner),
                    _ => Err(Error::Syntax { position: close, message: "expected ')'".into() }),
                }
            }
            Tok::End => Err(Error::Syntax { position: at, message: "unexpected end of input".into() }),
            _ => Err(Error::Syntax { position: at, message: "expected a number, a variable or '('".into() }),
        }
    }
}
