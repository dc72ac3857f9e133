use super::{normalize, KnotError, KnotExpr};

/// Parses an expression and returns it in normal form.
pub fn parse(text: &str) -> Result<KnotExpr, KnotError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(normalize(&e))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> KnotError {
        KnotError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), KnotError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<KnotExpr, KnotError> {
        let mut terms = vec![self.term()?];
        while self.eat(b'#') {
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().expect("one term")
        } else {
            KnotExpr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<KnotExpr, KnotError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(KnotExpr::neg(self.atom()?))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let n = self.unsigned()?;
                self.expect(b'*')?;
                if n == 0 {
                    self.pos = start;
                    return Err(KnotError::Parameter("multiplier must be at least 1".into()));
                }
                let a = self.atom()?;
                let n = usize::try_from(n).map_err(|_| self.error("multiplier too large"))?;
                Ok(KnotExpr::Sum(vec![a; n]))
            }
            _ => self.atom(),
        }
    }

    fn ident(&mut self) -> &[u8] {
        self.skip_ws();
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphabetic())
        {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn atom(&mut self) -> Result<KnotExpr, KnotError> {
        if self.eat(b'(') {
            let e = self.expr()?;
            self.expect(b')')?;
            return Ok(e);
        }
        let start = self.pos;
        match self.ident() {
            b"U" => Ok(KnotExpr::Unknot),
            b"T" => {
                self.expect(b'(')?;
                let r = self.signed()?;
                self.expect(b',')?;
                let s = self.signed()?;
                self.expect(b')')?;
                KnotExpr::torus(r, s)
            }
            b"Wh" => {
                let plus = match self.src.get(self.pos) {
                    Some(b'+') => true,
                    Some(b'-') => false,
                    _ => return Err(self.error("expected `+` or `-` after `Wh`")),
                };
                self.pos += 1;
                self.expect(b'(')?;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(if plus {
                    KnotExpr::wh_plus(e)
                } else {
                    KnotExpr::wh_minus(e)
                })
            }
            b"cable" => {
                self.expect(b'(')?;
                let r = self.signed()?;
                self.expect(b',')?;
                let s = self.signed()?;
                self.expect(b';')?;
                let e = self.expr()?;
                self.expect(b')')?;
                KnotExpr::cable(r, s, e)
            }
            b"rev" => {
                self.expect(b'(')?;
                let e = self.atom()?;
                self.expect(b')')?;
                Ok(KnotExpr::rev(e))
            }
            b"" => Err(self.error("expected a knot")),
            other => {
                let word = String::from_utf8_lossy(other).into_owned();
                self.pos = start;
                Err(self.error(format!("unknown constructor `{word}`")))
            }
        }
    }

    fn unsigned(&mut self) -> Result<i64, KnotError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| KnotError::Syntax {
                pos: start,
                msg: "integer out of range".into(),
            })
    }

    fn signed(&mut self) -> Result<i64, KnotError> {
        if self.eat(b'-') {
            Ok(-self.unsigned()?)
        } else {
            self.unsigned()
        }
    }
}
