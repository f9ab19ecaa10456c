//! Reading terms from their s-expression form.
//!
//! ```text
//! term := NAME | "[" term "]" | "(id" term ")" | "(comp" NAT term term ")"
//!       | "(dual" "{" NAT ("," NAT)* "}" term ")" | "(dual" "{}" term ")"
//!       | "(ctr" term term ")"
//! ```
//!
//! Printing is [`Term::serialize`]; parsing a printed term gives it back.
//! Square brackets quote a term as a generator of the next free structure.

use crate::congruence;
use crate::contraction;
use crate::duality::DualityIndex;
use crate::error::{Error, Result};
use crate::magma::Magma;
use crate::term::Term;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    LBrace,
    RBrace,
    Comma,
    LBracket,
    RBracket,
    Atom(String),
}

fn is_delimiter(c: char) -> bool {
    c.is_whitespace() || "(){},[]".contains(c)
}

fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '(' => Token::Open,
            ')' => Token::Close,
            '{' => Token::LBrace,
            '}' => Token::RBrace,
            ',' => Token::Comma,
            '[' => Token::LBracket,
            ']' => Token::RBracket,
            _ => {
                let mut atom = String::new();
                while let Some(&c) = chars.peek() {
                    if is_delimiter(c) {
                        break;
                    }
                    atom.push(c);
                    chars.next();
                }
                out.push(Token::Atom(atom));
                continue;
            }
        };
        chars.next();
        out.push(tok);
    }
    out
}

struct Parser<'a> {
    magma: &'a Magma,
    tokens: Vec<Token>,
    pos: usize,
    bound: usize,
}

impl Parser<'_> {
    fn next(&mut self) -> Result<Token> {
        let t = self.tokens.get(self.pos).cloned().ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, want: Token) -> Result<()> {
        let got = self.next()?;
        if got != want {
            return Err(Error::Parse(format!("expected {want:?}, found {got:?}")));
        }
        Ok(())
    }

    fn nat(&mut self) -> Result<usize> {
        match self.next()? {
            Token::Atom(a) => a.parse().map_err(|_| Error::Parse(format!("expected a number, found `{a}`"))),
            t => Err(Error::Parse(format!("expected a number, found {t:?}"))),
        }
    }

    fn index(&mut self) -> Result<DualityIndex> {
        self.expect(Token::LBrace)?;
        let mut dims = Vec::new();
        if self.tokens.get(self.pos) == Some(&Token::RBrace) {
            self.pos += 1;
        } else {
            loop {
                dims.push(self.nat()?);
                match self.next()? {
                    Token::Comma => continue,
                    Token::RBrace => break,
                    t => return Err(Error::Parse(format!("expected `,` or `}}`, found {t:?}"))),
                }
            }
        }
        self.magma.index(&dims)
    }

    fn term(&mut self) -> Result<Term> {
        match self.next()? {
            Token::Atom(name) => self.magma.gen(&name),
            Token::LBracket => {
                let inner = self.term()?;
                self.expect(Token::RBracket)?;
                Ok(Term::quote(inner))
            }
            Token::Open => {
                let head = match self.next()? {
                    Token::Atom(h) => h,
                    t => return Err(Error::Parse(format!("expected an operator, found {t:?}"))),
                };
                let out = match head.as_str() {
                    "id" => {
                        let z = self.term()?;
                        self.magma.id(&z)?
                    }
                    "comp" => {
                        let p = self.nat()?;
                        let later = self.term()?;
                        let earlier = self.term()?;
                        self.magma.comp(p, &later, &earlier)?
                    }
                    "dual" => {
                        let alpha = self.index()?;
                        let t = self.term()?;
                        self.magma.dual(alpha, &t)?
                    }
                    "ctr" => {
                        let x = self.term()?;
                        let y = self.term()?;
                        contraction::checked_cell(self.magma.truncation(), &x, &y, self.bound)?
                    }
                    other => return Err(Error::Parse(format!("unknown operator `{other}`"))),
                };
                self.expect(Token::Close)?;
                Ok(out)
            }
            t => Err(Error::Parse(format!("unexpected {t:?}"))),
        }
    }
}

/// Parses a term over `magma`. Contraction cells are checked against the
/// contraction domain using the default orbit bound.
pub fn parse_term(magma: &Magma, text: &str) -> Result<Term> {
    parse_term_with_bound(magma, text, congruence::DEFAULT_BOUND)
}

pub fn parse_term_with_bound(magma: &Magma, text: &str, bound: usize) -> Result<Term> {
    let mut p = Parser { magma, tokens: tokenize(text), pos: 0, bound };
    let t = p.term()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input after term `{t}`")));
    }
    Ok(t)
}

impl Magma {
    pub fn parse(&self, text: &str) -> Result<Term> {
        parse_term(self, text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::globular::fixtures;

    #[test]
    fn round_trips() {
        let m = Magma::new(fixtures::q2());
        for text in [
            "f",
            "(id A)",
            "(comp 0 g f)",
            "(dual {0} f)",
            "(dual {} (dual {0,1} u))",
            "(comp 1 u (id f))",
            "(ctr (comp 0 f (id A)) f)",
        ] {
            let t = m.parse(text).unwrap();
            assert_eq!(t.serialize(), text);
        }
    }

    #[test]
    fn whitespace_insensitive() {
        let m = Magma::new(fixtures::q2());
        let t = m.parse("  ( comp 0\n g\tf ) ").unwrap();
        assert_eq!(t.serialize(), "(comp 0 g f)");
        let t = m.parse("(dual { 0 , 1 } u)").unwrap();
        assert_eq!(t.serialize(), "(dual {0,1} u)");
    }

    #[test]
    fn names_with_primes() {
        let m = Magma::new(fixtures::qx());
        let t = m.parse("(comp 1 x' x)").unwrap();
        assert_eq!(t.serialize(), "(comp 1 x' x)");
    }

    #[test]
    fn errors() {
        let m = Magma::new(fixtures::q2());
        assert!(matches!(m.parse("(comp 0 f"), Err(Error::Parse(_))));
        assert!(matches!(m.parse("f g"), Err(Error::Parse(_))));
        assert!(matches!(m.parse("(frob f)"), Err(Error::Parse(_))));
        assert_eq!(m.parse("zz"), Err(Error::UnknownCell("zz".into())));
        assert!(matches!(m.parse("(comp 0 f f)"), Err(Error::BoundaryMismatch(_))));
        assert!(matches!(m.parse("(ctr f h)"), Err(Error::Domain(_))));
        assert!(matches!(m.parse("(dual {2} f)"), Err(Error::Index { .. })));
    }

    #[test]
    fn quoted_leaves() {
        let m = Magma::new(fixtures::q2());
        let t = m.parse("(comp 0 [g] [f])").unwrap();
        assert_eq!(t.serialize(), "(comp 0 [g] [f])");
        assert_eq!(t.source().unwrap().serialize(), "[A]");
    }
}
