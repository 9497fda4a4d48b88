//! Polynomial inputs: an expression in `x` or a JSON array of decimal
//! coefficient strings, constant term first.

use num_bigint::BigInt;
use num_traits::Zero;
use omlocal::exactnum::IntPoly;

use crate::CliError;

/// Parses either input form.
pub fn parse_poly(input: &str) -> Result<IntPoly, CliError> {
    let trimmed = input.trim();
    if trimmed.starts_with('[') {
        parse_coeff_list(trimmed)
    } else {
        parse_expr(trimmed, 'x')
    }
}

fn parse_coeff_list(input: &str) -> Result<IntPoly, CliError> {
    let items: Vec<String> =
        serde_json::from_str(input).map_err(|e| CliError::Malformed(format!("coefficient list: {}", e)))?;
    let coeffs = items
        .iter()
        .map(|s| {
            s.trim()
                .parse::<BigInt>()
                .map_err(|_| CliError::Malformed(format!("not an integer: {:?}", s)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntPoly::new(coeffs))
}

/// Parses `term (('+'|'-') term)*` in the variable `var`.
pub fn parse_expr(input: &str, var: char) -> Result<IntPoly, CliError> {
    let chars: Vec<char> = input.chars().collect();
    if input.trim().is_empty() {
        return Err(CliError::Malformed("empty polynomial".into()));
    }
    let mut parser = Parser { chars, pos: 0, var };
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut first = true;
    while parser.skip_ws() {
        let negative = match parser.peek() {
            Some('+') => {
                parser.pos += 1;
                false
            }
            Some('-') => {
                parser.pos += 1;
                true
            }
            _ if first => false,
            Some(c) => return Err(parser.error(&format!("expected '+' or '-', found {:?}", c))),
            None => unreachable!(),
        };
        first = false;
        let (c, k) = parser.term()?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigInt::zero());
        }
        if negative {
            coeffs[k] -= c;
        } else {
            coeffs[k] += c;
        }
    }
    Ok(IntPoly::new(coeffs))
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    var: char,
}

impl Parser {
    /// Skips whitespace; false at end of input.
    fn skip_ws(&mut self) -> bool {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
        self.pos < self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, msg: &str) -> CliError {
        CliError::Malformed(format!("{} at position {}", msg, self.pos))
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn term(&mut self) -> Result<(BigInt, usize), CliError> {
        self.skip_ws();
        let coeff = self.digits();
        self.skip_ws();
        if coeff.is_some() && self.peek() == Some('*') {
            self.pos += 1;
            self.skip_ws();
            if self.peek() != Some(self.var) {
                return Err(self.error(&format!("expected {:?} after '*'", self.var)));
            }
        }
        let c: BigInt = match &coeff {
            Some(d) => d.parse().expect("ascii digits"),
            None => BigInt::from(1),
        };
        if self.peek() != Some(self.var) {
            return match coeff {
                Some(_) => Ok((c, 0)),
                None => Err(self.error("expected a coefficient or the variable")),
            };
        }
        self.pos += 1;
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok((c, 1));
        }
        self.pos += 1;
        self.skip_ws();
        let e = self.digits().ok_or_else(|| self.error("expected an exponent"))?;
        let k: usize = e.parse().map_err(|_| self.error("exponent too large"))?;
        if k > 1 << 16 {
            return Err(self.error("exponent too large"));
        }
        Ok((c, k))
    }
}
