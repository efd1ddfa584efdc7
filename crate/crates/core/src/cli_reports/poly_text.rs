//! Polynomial literals: ASCII, explicit `*`, caret powers, e.g. "x^5 + 2*t + 1".

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_algebra::{Gf, GfPoly, PolyRing, Ring};

/// Exponent vector (one slot per variable) to integer coefficient.
pub type IntPoly = BTreeMap<Vec<u32>, BigInt>;

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap())
    }
}

/// Parses an integer polynomial in the given variables.
pub fn parse_int_poly(text: &str, vars: &[&str]) -> Result<IntPoly> {
    if !text.is_ascii() {
        let pos = text.char_indices().find(|(_, c)| !c.is_ascii()).map(|(i, _)| i).unwrap_or(0);
        return Err(Error::Parse { pos, msg: "non-ASCII character".into() });
    }
    let mut lx = Lexer { s: text.as_bytes(), pos: 0 };
    let mut out = IntPoly::new();
    let mut first = true;
    loop {
        let sign = match lx.peek() {
            Some(b'+') => {
                lx.pos += 1;
                1
            }
            Some(b'-') => {
                lx.pos += 1;
                -1
            }
            None if first => return lx.err("empty polynomial"),
            None => break,
            Some(_) if first => 1,
            Some(c) => return lx.err(format!("expected '+' or '-', found '{}'", c as char)),
        };
        first = false;
        let mut coeff = BigInt::from(sign);
        let mut exps = vec![0u32; vars.len()];
        loop {
            match lx.peek() {
                Some(c) if c.is_ascii_digit() => coeff *= lx.int()?,
                Some(c) if c.is_ascii_alphabetic() => {
                    let start = lx.pos;
                    while lx.pos < lx.s.len() && (lx.s[lx.pos].is_ascii_alphanumeric() || lx.s[lx.pos] == b'_') {
                        lx.pos += 1;
                    }
                    let name = std::str::from_utf8(&lx.s[start..lx.pos]).unwrap();
                    let Some(i) = vars.iter().position(|v| *v == name) else {
                        return Err(Error::Parse { pos: start, msg: format!("unknown variable '{name}'") });
                    };
                    let e = if lx.peek() == Some(b'^') {
                        lx.pos += 1;
                        let at = lx.pos;
                        lx.int()?.try_into().map_err(|_| Error::Parse { pos: at, msg: "exponent too large".into() })?
                    } else {
                        1
                    };
                    exps[i] += e;
                }
                Some(c) => return lx.err(format!("unexpected '{}'", c as char)),
                None => return lx.err("expected a factor"),
            }
            if lx.peek() == Some(b'*') {
                lx.pos += 1;
            } else {
                break;
            }
        }
        let e = out.entry(exps).or_insert_with(BigInt::zero);
        *e += coeff;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

fn reduce(k: &Gf, c: &BigInt) -> crate::exact_algebra::GfElem {
    let p = BigInt::from(k.p());
    let r = ((c % &p) + &p) % &p;
    k.elem(r.try_into().unwrap())
}

/// A univariate polynomial over a prime field.
pub fn parse_poly(text: &str, var: &str, k: &Gf) -> Result<GfPoly> {
    let ip = parse_int_poly(text, &[var])?;
    let r = PolyRing::new(k.clone());
    let mut out = r.zero();
    for (e, c) in &ip {
        out = r.add(&out, &r.monomial(reduce(k, c), e[0] as usize));
    }
    Ok(out)
}

/// "x^d + g(t)": returns d and g.
pub fn parse_surface(text: &str, k: &Gf) -> Result<(usize, GfPoly)> {
    let ip = parse_int_poly(text, &["x", "t"])?;
    let bad = |m: &str| Error::Parse { pos: 0, msg: m.into() };
    let mut d = None;
    let r = PolyRing::new(k.clone());
    let mut g = r.zero();
    for (e, c) in &ip {
        match (e[0], e[1]) {
            (0, j) => g = r.add(&g, &r.monomial(reduce(k, c), j as usize)),
            (i, 0) if c.is_one() && d.is_none() => d = Some(i as usize),
            _ => return Err(bad("expected x^d + g(t)")),
        }
    }
    Ok((d.ok_or_else(|| bad("missing x^d term"))?, g))
}

/// Prints with representatives in [0, p) so that parse_poly inverts it. Prime-field coefficients only.
pub fn format_poly(k: &Gf, p: &GfPoly, var: &str) -> Result<String> {
    if p.is_zero() {
        return Ok("0".into());
    }
    let mut parts = vec![];
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        let c = k.as_prime(c).ok_or_else(|| Error::UnsupportedField("coefficient outside the prime field".into()))?;
        if c == 0 {
            continue;
        }
        parts.push(match (i, c) {
            (0, _) => c.to_string(),
            (1, 1) => var.to_string(),
            (1, _) => format!("{c}*{var}"),
            (_, 1) => format!("{var}^{i}"),
            _ => format!("{c}*{var}^{i}"),
        });
    }
    Ok(parts.join(" + "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        let ip = parse_int_poly("x^5 + 2*t + 1", &["x", "t"]).unwrap();
        assert_eq!(ip.len(), 3);
        assert_eq!(ip[&vec![5, 0]], BigInt::from(1));
        assert_eq!(ip[&vec![0, 1]], BigInt::from(2));
        let ip = parse_int_poly(" - 3*x*x + x^2 - 4", &["x"]).unwrap();
        assert_eq!(ip[&vec![2]], BigInt::from(-2));
        assert_eq!(ip[&vec![0]], BigInt::from(-4));
        assert!(parse_int_poly("x - x", &["x"]).unwrap().is_empty());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_int_poly("x^5 + 2y", &["x"]), Err(Error::Parse { pos: 7, msg: "expected '+' or '-', found 'y'".into() }));
        assert!(matches!(parse_int_poly("x^5 + z", &["x"]), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(parse_int_poly("", &["x"]), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_int_poly("x^", &["x"]), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_int_poly("2 x", &["x"]), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn surface_and_round_trip() {
        let k = Gf::prime(67).unwrap();
        let (d, g) = parse_surface("x^6 + t^3 + 2*t + 12", &k).unwrap();
        assert_eq!(d, 6);
        assert_eq!(g, PolyRing::new(k.clone()).from_ints(&[12, 2, 0, 1]));
        assert_eq!(parse_poly(&format_poly(&k, &g, "t").unwrap(), "t", &k).unwrap(), g);
        assert_eq!(format_poly(&k, &g, "t").unwrap(), "t^3 + 2*t + 12");
        assert!(parse_surface("2*x^5 + t", &k).is_err());
        assert!(parse_surface("x*t + 1", &k).is_err());
    }
}
