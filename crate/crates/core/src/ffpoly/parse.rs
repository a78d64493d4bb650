//! Recursive-descent reader for polynomial text.
//!
//! ```text
//! poly   := ['-'|'+'] term (('+'|'-') term)*
//! term   := integer | [integer '*'] factor ('*' factor)*
//! factor := var ['^' positive-integer]
//! ```
//!
//! Whitespace is insignificant and integer literals are reduced mod `p`.

use std::sync::Arc;

use super::{FfpolyError, Monomial, PolyRing, Polynomial, Result};

/// Parses `text` in the ring with variables `vars` over `F_p`.
pub fn parse_polynomial(text: &str, vars: &[&str], p: u64) -> Result<Polynomial> {
    let ring = PolyRing::new(p, vars.iter().map(|v| v.to_string()).collect())?;
    Polynomial::parse(text, &ring)
}

impl Polynomial {
    pub fn parse(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial> {
        let mut parser = Parser {
            src: text.as_bytes(),
            pos: 0,
            ring,
        };
        let terms = parser.poly()?;
        Ok(Polynomial::from_terms(ring, terms))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a PolyRing,
}

impl Parser<'_> {
    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(FfpolyError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn poly(&mut self) -> Result<Vec<(Monomial, i64)>> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            None => return self.error("empty input"),
            _ => false,
        };
        loop {
            let (mono, coeff) = self.term()?;
            let p = self.ring.characteristic() as i64;
            let coeff = if negative { (p - coeff) % p } else { coeff };
            terms.push((mono, coeff));
            match self.peek() {
                None => return Ok(terms),
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(c) => return self.error(format!("expected '+' or '-', found {:?}", c as char)),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(Monomial, i64)> {
        let mut mono = Monomial::one(self.ring.nvars());
        let mut coeff = 1i64;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff = self.integer_mod_p()?;
                if self.peek() != Some(b'*') {
                    return Ok((mono, coeff));
                }
                self.pos += 1;
            }
            Some(_) => {}
            None => return self.error("expected a term"),
        }
        loop {
            let (var, exp) = self.factor()?;
            mono.0[var] = mono.0[var]
                .checked_add(exp)
                .ok_or(FfpolyError::Syntax {
                    pos: self.pos,
                    msg: "exponent overflow".into(),
                })?;
            if self.peek() != Some(b'*') {
                return Ok((mono, coeff));
            }
            self.pos += 1;
        }
    }

    fn factor(&mut self) -> Result<(usize, u32)> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => {}
            _ => return self.error("expected a variable"),
        }
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
        let var = self
            .ring
            .var_index(name)
            .ok_or_else(|| FfpolyError::UnknownVariable {
                name: name.to_string(),
                pos: start,
            })?;
        if self.peek() != Some(b'^') {
            return Ok((var, 1));
        }
        self.pos += 1;
        let exp_pos = {
            self.skip_ws();
            self.pos
        };
        let digits = self.digits()?;
        let exp: u32 = digits.parse().map_err(|_| FfpolyError::Syntax {
            pos: exp_pos,
            msg: "exponent out of range".into(),
        })?;
        if exp == 0 {
            return Err(FfpolyError::Syntax {
                pos: exp_pos,
                msg: "exponent must be positive".into(),
            });
        }
        Ok((var, exp))
    }

    fn digits(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an integer");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn integer_mod_p(&mut self) -> Result<i64> {
        let p = self.ring.characteristic();
        let digits = self.digits()?;
        let v = digits
            .bytes()
            .fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
        Ok(v as i64)
    }
}
