//! Plain-text polynomial format.
//!
//! A polynomial is a sum of terms `c * x1^a1 * ... * xn^an`. Coefficients are
//! real numbers or complex numbers written `(re+imi)`; a bare `i` or `2i` is
//! also accepted. Factors may be joined by `*` or whitespace, and exponents of
//! one may be omitted. [`format_poly`] emits a form [`parse_poly`] reads back
//! bit-exactly.

use std::fmt::Write;

use num_complex::Complex64;

use super::{CPoly, MultiIndex};
use crate::error::{Error, Result};

fn fmt_real(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn fmt_monomial(alpha: &MultiIndex) -> String {
    let mut parts = Vec::new();
    for (k, &e) in alpha.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("x{}", k + 1)),
            _ => parts.push(format!("x{}^{}", k + 1, e)),
        }
    }
    parts.join("*")
}

/// Prints a polynomial in the text format.
pub fn format_poly(p: &CPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (alpha, c)) in p.terms().enumerate() {
        let mono = fmt_monomial(alpha);
        let (sign, coef) = if c.im == 0.0 {
            let neg = c.re.is_sign_negative();
            let mag = c.re.abs();
            let body = if mag == 1.0 && !mono.is_empty() {
                String::new()
            } else {
                fmt_real(mag)
            };
            (if neg { '-' } else { '+' }, body)
        } else {
            let im_sign = if c.im.is_sign_negative() { '-' } else { '+' };
            ('+', format!("({}{}{}i)", fmt_real(c.re), im_sign, fmt_real(c.im.abs())))
        };
        if idx == 0 {
            if sign == '-' {
                out.push('-');
            }
        } else {
            let _ = write!(out, " {sign} ");
        }
        out.push_str(&coef);
        if !mono.is_empty() {
            if !coef.is_empty() {
                out.push('*');
            }
            out.push_str(&mono);
        }
    }
    out
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        while let Some(b) = self.peek() {
            let exp_sign = (b == b'+' || b == b'-')
                && self.pos > start
                && matches!(self.src[self.pos - 1], b'e' | b'E');
            if b.is_ascii_digit() || b == b'.' || b == b'e' || b == b'E' || exp_sign {
                self.pos += 1;
            } else {
                break;
            }
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
        match s.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => {
                self.pos = start;
                self.err(format!("invalid number '{s}'"))
            }
        }
    }

    fn uint(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
        s.parse::<u32>().or_else(|_| {
            self.pos = start;
            self.err("expected an unsigned integer")
        })
    }

    /// `(re+imi)` and friends; opening parenthesis already consumed.
    fn paren_complex(&mut self) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut first = true;
        loop {
            self.skip_ws();
            if self.eat(b')') {
                if first {
                    return self.err("empty parentheses");
                }
                return Ok(acc);
            }
            let mut sign = 1.0;
            if self.eat(b'-') {
                sign = -1.0;
            } else if !self.eat(b'+') && !first {
                return self.err("expected '+', '-' or ')'");
            }
            self.skip_ws();
            let mag = if self.peek().is_some_and(|b| b.is_ascii_digit() || b == b'.') {
                Some(self.number()?)
            } else {
                None
            };
            self.skip_ws();
            if self.eat(b'i') {
                acc.im += sign * mag.unwrap_or(1.0);
            } else if let Some(m) = mag {
                acc.re += sign * m;
            } else {
                return self.err("expected a number");
            }
            first = false;
        }
    }

    /// One multiplicative factor, folded into `coef` / `exps`.
    fn factor(&mut self, coef: &mut Complex64, exps: &mut [u32]) -> Result<()> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                *coef *= self.paren_complex()?;
            }
            Some(b'i') => {
                self.pos += 1;
                *coef *= Complex64::new(0.0, 1.0);
            }
            Some(b'x') => {
                self.pos += 1;
                let var = self.uint()? as usize;
                if var == 0 || var > self.n {
                    return self.err(format!("variable x{var} outside x1..x{}", self.n));
                }
                let e = if self.eat(b'^') { self.uint()? } else { 1 };
                exps[var - 1] += e;
            }
            Some(b) if b.is_ascii_digit() || b == b'.' => {
                let v = self.number()?;
                if self.eat(b'i') {
                    *coef *= Complex64::new(0.0, v);
                } else {
                    *coef *= v;
                }
            }
            _ => return self.err("expected a coefficient or variable"),
        }
        Ok(())
    }

    fn term(&mut self) -> Result<(MultiIndex, Complex64)> {
        let mut coef = Complex64::new(1.0, 0.0);
        let mut exps = vec![0u32; self.n];
        self.skip_ws();
        self.factor(&mut coef, &mut exps)?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    self.skip_ws();
                    self.factor(&mut coef, &mut exps)?;
                }
                Some(b'(' | b'i' | b'x') => self.factor(&mut coef, &mut exps)?,
                Some(b) if b.is_ascii_digit() || b == b'.' => self.factor(&mut coef, &mut exps)?,
                _ => break,
            }
        }
        Ok((MultiIndex::new(exps), coef))
    }

    fn poly(&mut self) -> Result<CPoly> {
        let mut p = CPoly::zero(self.n);
        self.skip_ws();
        let mut sign = 1.0;
        if self.eat(b'-') {
            sign = -1.0;
        } else {
            self.eat(b'+');
        }
        loop {
            let (alpha, c) = self.term()?;
            p.add_term(alpha, c * sign);
            self.skip_ws();
            if self.pos == self.src.len() {
                break;
            }
            sign = if self.eat(b'+') {
                1.0
            } else if self.eat(b'-') {
                -1.0
            } else {
                return self.err("expected '+' or '-'");
            };
        }
        Ok(p)
    }
}

/// Parses a polynomial in `n` variables.
pub fn parse_poly(text: &str, n: usize) -> Result<CPoly> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        n,
    };
    if text.trim().is_empty() {
        return parser.err("empty polynomial");
    }
    parser.poly()
}
