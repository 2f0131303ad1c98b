//! Text syntax for operators.
//!
//! ```text
//! rank1:m=<int>,n=<int>
//! diag:a=[<c>,...]
//! geom:a=<c>
//! pairs:[(g=[<c>,...];h=[<c>,...]),...]
//! proj:k=<int>
//! mult:poly=[<c>,...]                      ascending coefficients, c0 first
//! mult:bfactor:zeta=<c>;alpha=<c>
//! mult:blaschke:zeta=<c>;m=<int>;zeros=[<c>,...]
//! ```
//!
//! Complex literals look like `2`, `-0.5i`, `1+1i`, `i`, `1e-3-2.5e2i`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operators::{OperatorSpec, Symbol};
use crate::series::PowerSeries;

pub const TAGS: &str = "rank1, diag, geom, pairs, proj, mult:poly, mult:bfactor, mult:blaschke";

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self { src: text.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.err(format!("expected '{}', found '{}'", c as char, found as char)),
                None => self.err(format!("expected '{}', found end of input", c as char)),
            }
        }
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            Ok(())
        } else {
            self.err(format!("expected '{word}'"))
        }
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn field(&mut self, name: &str) -> Result<()> {
        self.keyword(name)?;
        self.expect(b'=')
    }

    fn integer(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a non-negative integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        text.parse().or_else(|_| {
            self.pos = start;
            self.err(format!("integer '{text}' out of range"))
        })
    }

    /// Unsigned decimal with optional fraction and exponent.
    fn number(&mut self) -> Option<f64> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.pos < p.src.len() && p.src[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
            p.pos - s
        };
        let mut n = digits(self);
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            n += digits(self);
        }
        if n == 0 {
            self.pos = start;
            return None;
        }
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                self.pos = save;
            }
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    /// One signed term: a real number, an imaginary number, or a bare `i`.
    fn term(&mut self, allow_unsigned: bool) -> Result<Option<(f64, bool)>> {
        self.skip_ws();
        let start = self.pos;
        let sign = match self.src.get(self.pos) {
            Some(b'+') => {
                self.pos += 1;
                1.0
            }
            Some(b'-') => {
                self.pos += 1;
                -1.0
            }
            _ if allow_unsigned => 1.0,
            _ => return Ok(None),
        };
        let magnitude = self.number();
        let imaginary = self.src.get(self.pos) == Some(&b'i');
        if imaginary {
            self.pos += 1;
        }
        match (magnitude, imaginary) {
            (Some(v), im) => Ok(Some((sign * v, im))),
            (None, true) => Ok(Some((sign, true))),
            (None, false) => {
                self.pos = start;
                self.err("expected a complex number")
            }
        }
    }

    fn complex(&mut self) -> Result<Complex64> {
        let start = self.pos;
        let (first, first_im) = self.term(true)?.expect("unsigned terms are allowed");
        if first_im {
            return Ok(Complex64::new(0.0, first));
        }
        let save = self.pos;
        match self.term(false) {
            Ok(Some((second, true))) => Ok(Complex64::new(first, second)),
            Ok(Some((_, false))) => {
                self.pos = start;
                self.err("a complex literal has at most one real and one imaginary part")
            }
            _ => {
                self.pos = save;
                Ok(Complex64::new(first, 0.0))
            }
        }
    }

    fn complex_list(&mut self) -> Result<Vec<Complex64>> {
        self.expect(b'[')?;
        let mut out = Vec::new();
        if self.eat(b']') {
            return Ok(out);
        }
        loop {
            out.push(self.complex()?);
            if self.eat(b']') {
                return Ok(out);
            }
            self.expect(b',')?;
        }
    }

    fn series(&mut self) -> Result<PowerSeries> {
        let at = self.pos;
        let coeffs = self.complex_list()?;
        PowerSeries::new(coeffs).map_err(|e| Error::Parse { pos: at, msg: e.to_string() })
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected trailing '{}'", c as char)),
        }
    }

    fn spec(&mut self) -> Result<OperatorSpec> {
        let tag_pos = self.pos;
        let tag = self.ident();
        self.expect(b':')?;
        let spec = match tag {
            "rank1" => {
                self.field("m")?;
                let m = self.integer()?;
                self.expect(b',')?;
                self.field("n")?;
                let n = self.integer()?;
                OperatorSpec::RankOneMonomial { m, n }
            }
            "diag" => {
                self.field("a")?;
                OperatorSpec::DiagonalMonomialSum { coeffs: self.complex_list()? }
            }
            "geom" => {
                self.field("a")?;
                OperatorSpec::GeometricDiagonal { a: self.complex()? }
            }
            "proj" => {
                self.field("k")?;
                OperatorSpec::ScaledProjection { k: self.integer()? }
            }
            "pairs" => {
                self.expect(b'[')?;
                let mut pairs = Vec::new();
                loop {
                    self.expect(b'(')?;
                    self.field("g")?;
                    let g = self.series()?;
                    self.expect(b';')?;
                    self.field("h")?;
                    let h = self.series()?;
                    self.expect(b')')?;
                    pairs.push((g, h));
                    if self.eat(b']') {
                        break;
                    }
                    self.expect(b',')?;
                }
                OperatorSpec::GeneralFiniteRank { pairs }
            }
            "mult" => OperatorSpec::Multiplication { symbol: self.symbol()? },
            other => {
                self.pos = tag_pos;
                return self.err(format!("unknown operator tag '{other}'; valid tags: {TAGS}"));
            }
        };
        self.finish()?;
        Ok(spec)
    }

    fn symbol(&mut self) -> Result<Symbol> {
        let kind_pos = self.pos;
        match self.ident() {
            "poly" => {
                self.expect(b'=')?;
                Ok(Symbol::Polynomial { coeffs: self.complex_list()? })
            }
            "bfactor" => {
                self.expect(b':')?;
                self.field("zeta")?;
                let zeta = self.complex()?;
                self.expect(b';')?;
                self.field("alpha")?;
                let alpha = self.complex()?;
                Ok(Symbol::BlaschkeFactor { zeta, alpha })
            }
            "blaschke" => {
                self.expect(b':')?;
                self.field("zeta")?;
                let zeta = self.complex()?;
                self.expect(b';')?;
                self.field("m")?;
                let m = self.integer()?;
                self.expect(b';')?;
                self.field("zeros")?;
                let zeros = self.complex_list()?;
                Ok(Symbol::BlaschkeProduct { zeta, m, zeros })
            }
            other => {
                self.pos = kind_pos;
                self.err(format!("unknown symbol '{other}'; valid symbols: poly, bfactor, blaschke"))
            }
        }
    }
}

/// Parses the operator syntax. Syntax errors come back as [`Error::Parse`];
/// well-formed operators that break a class invariant (for instance
/// `geom:a=1.2`) come back as the validation error.
pub fn parse_operator_spec(text: &str) -> Result<OperatorSpec> {
    let spec = Parser::new(text).spec()?;
    spec.validate()?;
    Ok(spec)
}

/// Parses a single complex literal.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let mut p = Parser::new(text);
    let z = p.complex()?;
    p.finish()?;
    Ok(z)
}

/// Shortest text that parses back to exactly `z`.
pub fn render_complex(z: Complex64) -> String {
    match (z.re == 0.0, z.im == 0.0) {
        (_, true) => format!("{}", z.re),
        (true, false) => format!("{}i", z.im),
        (false, false) => {
            let sign = if z.im.is_sign_negative() { '-' } else { '+' };
            format!("{}{}{}i", z.re, sign, z.im.abs())
        }
    }
}

fn render_list(cs: &[Complex64]) -> String {
    let items: Vec<String> = cs.iter().map(|&c| render_complex(c)).collect();
    format!("[{}]", items.join(","))
}

/// Inverse of [`parse_operator_spec`].
pub fn render(spec: &OperatorSpec) -> String {
    match spec {
        OperatorSpec::RankOneMonomial { m, n } => format!("rank1:m={m},n={n}"),
        OperatorSpec::DiagonalMonomialSum { coeffs } => format!("diag:a={}", render_list(coeffs)),
        OperatorSpec::GeometricDiagonal { a } => format!("geom:a={}", render_complex(*a)),
        OperatorSpec::ScaledProjection { k } => format!("proj:k={k}"),
        OperatorSpec::GeneralFiniteRank { pairs } => {
            let items: Vec<String> = pairs
                .iter()
                .map(|(g, h)| format!("(g={};h={})", render_list(g.coeffs()), render_list(h.coeffs())))
                .collect();
            format!("pairs:[{}]", items.join(","))
        }
        OperatorSpec::Multiplication { symbol } => match symbol {
            Symbol::Polynomial { coeffs } => format!("mult:poly={}", render_list(coeffs)),
            Symbol::BlaschkeFactor { zeta, alpha } => {
                format!("mult:bfactor:zeta={};alpha={}", render_complex(*zeta), render_complex(*alpha))
            }
            Symbol::BlaschkeProduct { zeta, m, zeros } => format!(
                "mult:blaschke:zeta={};m={m};zeros={}",
                render_complex(*zeta),
                render_list(zeros)
            ),
        },
    }
}
