//! Expression parser for the canonical text forms.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | factor
//! factor := atom ('^' ['-'] uint)?
//! atom   := rational | var | 'nu' | 'Z[' [expr (';' expr)*] ']' | '(' expr ')'
//! ```
//!
//! Rationals are `digits` or `digits/digits`. Negative exponents are accepted
//! on `nu` only. Inside Zariski text, `y1..yn` are the Taylor variables and
//! polynomial variables may appear only inside `Z[..]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::poly::{Monomial, NuObject, Poly, VarSpace};
use crate::zariski::{taylor_space, TaylorElem, ZElem, ZNu, Zeta};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    ZOpen,
    RBracket,
    Semi,
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b']' => Some(Tok::RBracket),
            b';' => Some(Tok::Semi),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((start, t));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let digits = |i: &mut usize| {
                let s = *i;
                while *i < bytes.len() && bytes[*i].is_ascii_digit() {
                    *i += 1;
                }
                src[s..*i].parse::<BigInt>().expect("ascii digits")
            };
            let num = digits(&mut i);
            let mut value = Rational::from_integer(num);
            if i < bytes.len() && bytes[i] == b'/' {
                i += 1;
                if i >= bytes.len() || !bytes[i].is_ascii_digit() {
                    return Err(syntax(i, "expected a denominator after '/'"));
                }
                let den = digits(&mut i);
                if den.is_zero() {
                    return Err(syntax(start, "zero denominator"));
                }
                value /= Rational::from_integer(den);
            }
            out.push((start, Tok::Num(value)));
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &src[start..i];
            if word == "Z" && i < bytes.len() && bytes[i] == b'[' {
                i += 1;
                out.push((start, Tok::ZOpen));
            } else {
                out.push((start, Tok::Ident(word.to_string())));
            }
            continue;
        }
        let ch = src[start..].chars().next().expect("non-empty tail");
        return Err(syntax(start, format!("unexpected character {ch:?}")));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(Rational),
    Var(usize, String),
    Nu,
    Z(usize, Vec<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(usize, Box<Expr>, i64),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Star) {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        let at = self.here();
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let neg = self.eat(&Tok::Minus);
        let p = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(n)) if n.is_integer() => {
                self.pos += 1;
                let k: i64 = n
                    .to_integer()
                    .try_into()
                    .map_err(|_| syntax(p, "exponent too large"))?;
                if k > u32::MAX as i64 {
                    return Err(syntax(p, "exponent too large"));
                }
                Ok(Expr::Pow(at, Box::new(base), if neg { -k } else { k }))
            }
            _ => Err(syntax(p, "expected an integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let p = self.here();
        let Some(t) = self.peek().cloned() else {
            return Err(syntax(p, "unexpected end of input"));
        };
        self.pos += 1;
        match t {
            Tok::Num(n) => Ok(Expr::Num(n)),
            Tok::Ident(w) if w == "nu" => Ok(Expr::Nu),
            Tok::Ident(w) => Ok(Expr::Var(p, w)),
            Tok::LParen => {
                let e = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(syntax(self.here(), "expected ')'"));
                }
                Ok(e)
            }
            Tok::ZOpen => {
                let mut items = Vec::new();
                if !self.eat(&Tok::RBracket) {
                    loop {
                        items.push(self.expr()?);
                        if self.eat(&Tok::RBracket) {
                            break;
                        }
                        if !self.eat(&Tok::Semi) {
                            return Err(syntax(self.here(), "expected ';' or ']'"));
                        }
                    }
                }
                Ok(Expr::Z(p, items))
            }
            other => Err(syntax(p, format!("unexpected {}", describe(&other)))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Num(_) => "number",
        Tok::Ident(_) => "identifier",
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Caret => "'^'",
        Tok::LParen => "'('",
        Tok::RParen => "')'",
        Tok::ZOpen => "'Z['",
        Tok::RBracket => "']'",
        Tok::Semi => "';'",
    }
}

fn parse_ast(src: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        end: src.len(),
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        let (at, t) = &p.toks[p.pos];
        return Err(syntax(
            *at,
            format!("unexpected {} after the expression", describe(t)),
        ));
    }
    Ok(e)
}

fn unknown_var(p: usize, name: &str, space: &VarSpace) -> Error {
    syntax(
        p,
        format!(
            "unknown variable {name:?}; known variables: {}",
            space.names().join(", ")
        ),
    )
}

fn positive_power(at: usize, k: i64) -> Result<u32> {
    if k < 0 {
        return Err(syntax(at, "negative exponents are allowed on nu only"));
    }
    Ok(k as u32)
}

fn eval_nu(e: &Expr, space: &VarSpace) -> Result<NuObject> {
    let n = space.len();
    Ok(match e {
        Expr::Num(c) => NuObject::from_poly(Poly::constant(n, c.clone())),
        Expr::Var(p, name) => NuObject::from_poly(
            space
                .var(name)
                .ok_or_else(|| unknown_var(*p, name, space))?,
        ),
        Expr::Nu => NuObject::monomial(1, Poly::one(n)),
        Expr::Z(p, _) => return Err(syntax(*p, "Zariski atoms are not allowed in a polynomial")),
        Expr::Add(a, b) => &eval_nu(a, space)? + &eval_nu(b, space)?,
        Expr::Sub(a, b) => &eval_nu(a, space)? - &eval_nu(b, space)?,
        Expr::Mul(a, b) => &eval_nu(a, space)? * &eval_nu(b, space)?,
        Expr::Neg(a) => -&eval_nu(a, space)?,
        Expr::Pow(at, base, k) => {
            if matches!(**base, Expr::Nu) {
                return Ok(NuObject::monomial(*k as i32, Poly::one(n)));
            }
            let b = eval_nu(base, space)?;
            let k = positive_power(*at, *k)?;
            let mut acc = NuObject::one(n);
            for _ in 0..k {
                acc = &acc * &b;
            }
            acc
        }
    })
}

pub fn parse_nu(src: &str, space: &VarSpace) -> Result<NuObject> {
    eval_nu(&parse_ast(src)?, space)
}

pub fn parse_poly(src: &str, space: &VarSpace) -> Result<Poly> {
    let v = parse_nu(src, space)?;
    if v.iter().any(|(k, _)| k != 0) {
        return Err(syntax(0, "expected a polynomial without nu"));
    }
    Ok(v.classical())
}

/// A Taylor-algebra value while evaluating: `y`-monomial to `Z_nu` coefficient.
type ZTerms = BTreeMap<Monomial, ZNu>;

fn z_add(a: &mut ZTerms, y: Monomial, z: &ZNu) {
    let slot = a.entry(y).or_default();
    *slot += z;
    if slot.is_zero() {
        a.remove(&y);
    }
}

fn znu_mul(a: &ZNu, b: &ZNu) -> ZNu {
    let mut out = ZNu::zero();
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            out.add_at(i + j, &x.mul(y));
        }
    }
    out
}

fn zt_mul(a: &ZTerms, b: &ZTerms) -> ZTerms {
    let mut out = ZTerms::new();
    for (i, x) in a {
        for (j, y) in b {
            z_add(&mut out, i.mul(j), &znu_mul(x, y));
        }
    }
    out
}

fn zt_scalar(z: ZNu) -> ZTerms {
    let mut out = ZTerms::new();
    z_add(&mut out, Monomial::one(), &z);
    out
}

struct ZContext<'a> {
    space: &'a VarSpace,
    ys: Option<VarSpace>,
    zeta: &'a Zeta,
}

impl ZContext<'_> {
    fn eval(&self, e: &Expr) -> Result<ZTerms> {
        Ok(match e {
            Expr::Num(c) => zt_scalar(ZNu::from_elem(ZElem::unit().scale(c))),
            Expr::Nu => zt_scalar(ZNu::monomial(1, ZElem::unit())),
            Expr::Var(p, name) => {
                let ys = self.ys.as_ref();
                let Some(i) = ys.and_then(|s| s.index_of(name)) else {
                    let hint = match ys {
                        Some(s) => format!("Taylor variables are {}", s.names().join(", ")),
                        None => "polynomial variables belong inside Z[..]".to_string(),
                    };
                    return Err(syntax(*p, format!("unexpected variable {name:?}; {hint}")));
                };
                let mut t = ZTerms::new();
                z_add(&mut t, Monomial::var(i), &ZNu::from_elem(ZElem::unit()));
                t
            }
            Expr::Z(_, items) => {
                let mut acc = ZElem::unit();
                for item in items {
                    let f = eval_nu(item, self.space)?;
                    if f.iter().any(|(k, _)| k != 0) {
                        return Err(syntax(0, "factors inside Z[..] cannot contain nu"));
                    }
                    acc = acc.mul(&self.zeta.of_poly(&f.classical())?);
                }
                zt_scalar(ZNu::from_elem(acc))
            }
            Expr::Add(a, b) => {
                let mut x = self.eval(a)?;
                for (y, z) in self.eval(b)? {
                    z_add(&mut x, y, &z);
                }
                x
            }
            Expr::Sub(a, b) => {
                let mut x = self.eval(a)?;
                for (y, z) in self.eval(b)? {
                    z_add(&mut x, y, &-&z);
                }
                x
            }
            Expr::Mul(a, b) => zt_mul(&self.eval(a)?, &self.eval(b)?),
            Expr::Neg(a) => self.eval(a)?.into_iter().map(|(y, z)| (y, -&z)).collect(),
            Expr::Pow(at, base, k) => {
                if matches!(**base, Expr::Nu) {
                    return Ok(zt_scalar(ZNu::monomial(*k as i32, ZElem::unit())));
                }
                let b = self.eval(base)?;
                let mut acc = zt_scalar(ZNu::from_elem(ZElem::unit()));
                for _ in 0..positive_power(*at, *k)? {
                    acc = zt_mul(&acc, &b);
                }
                acc
            }
        })
    }
}

pub fn parse_znu(src: &str, space: &VarSpace, zeta: &Zeta) -> Result<ZNu> {
    let ctx = ZContext {
        space,
        ys: None,
        zeta,
    };
    let mut t = ctx.eval(&parse_ast(src)?)?;
    Ok(t.remove(&Monomial::one()).unwrap_or_default())
}

pub fn parse_zelem(src: &str, space: &VarSpace, zeta: &Zeta) -> Result<ZElem> {
    let z = parse_znu(src, space, zeta)?;
    if z.iter().any(|(k, _)| k != 0) {
        return Err(syntax(0, "expected a Zariski element without nu"));
    }
    Ok(z.classical())
}

/// Parses a Taylor-algebra element. The result is not marked as generated
/// by `J`-images; build operands of the deformed product through `Zariski::jmap`.
pub fn parse_taylor(src: &str, space: &VarSpace, zeta: &Zeta) -> Result<TaylorElem> {
    let n = space.len();
    let ctx = ZContext {
        space,
        ys: Some(taylor_space(n)),
        zeta,
    };
    let t = ctx.eval(&parse_ast(src)?)?;
    Ok(TaylorElem::from_terms(n, t))
}

/// A rational literal such as `3`, `-3/2` or `0`.
pub fn parse_rational(src: &str) -> Result<Rational> {
    let v = parse_nu(src, &VarSpace::plain(1))?;
    if v.iter().any(|(k, _)| k != 0) {
        return Err(syntax(0, "expected a number"));
    }
    let c = v.classical();
    if c.is_zero() {
        return Ok(Rational::zero());
    }
    if !c.is_constant() {
        return Err(syntax(0, "expected a number"));
    }
    Ok(c.constant_term())
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::arith::{rat, ratio};
    use crate::sample::{random_poly, PolyShape};
    use crate::zariski::Zariski;

    fn xs() -> VarSpace {
        VarSpace::euclidean(3)
    }

    #[test]
    fn polynomial_examples() {
        let p = parse_poly("x1^2 - x2^2", &xs()).unwrap();
        assert_eq!(p.len(), 2);
        let v = parse_nu("3/2*x1*x2 + nu*x3", &xs()).unwrap();
        assert_eq!(v.coeff(1), Poly::var(3, 2));
        assert_eq!(
            v.coeff(0),
            (&Poly::var(3, 0) * &Poly::var(3, 1)).scale(&ratio(3, 2))
        );
        let w = parse_nu("-(x1 + 1)^2 * nu^-2", &xs()).unwrap();
        assert_eq!(w.min_power(), Some(-2));
        assert_eq!(w.coeff(-2).constant_term(), rat(-1));
        assert_eq!(parse_rational("-3/6").unwrap(), ratio(-1, 2));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_poly("x1 + * x2", &xs()).unwrap_err();
        assert_eq!(err, syntax(5, "unexpected '*'"));
        let err = parse_poly("x1 + w", &xs()).unwrap_err();
        let msg = err.to_string();
        assert!(
            msg.contains("byte 5") && msg.contains("x1, x2, x3"),
            "{msg}"
        );
        assert!(parse_poly("x1^-1", &xs()).is_err());
        assert!(parse_poly("nu*x1", &xs()).is_err());
        assert!(parse_poly("(x1", &xs()).is_err());
        assert!(parse_poly("1/0", &xs()).is_err());
        assert!(parse_poly("x1 x2", &xs()).is_err());
    }

    #[test]
    fn zariski_atoms() {
        let zeta = Zeta::new();
        let z = parse_zelem("Z[x1^2+x2^2; x1]", &xs(), &zeta).unwrap();
        assert_eq!(z.len(), 1);
        let (m, c) = z.terms().next().unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(*c, rat(1));
        // A reducible argument factorizes and keeps its content.
        let w = parse_zelem("Z[2*x1*x2]", &xs(), &zeta).unwrap();
        assert_eq!(w.to_text(&xs()), "2 * Z[x1; x2]");
        assert!(parse_zelem("x1 * Z[x2]", &xs(), &zeta).is_err());
        assert!(parse_zelem("Z[x2; nu]", &xs(), &zeta).is_err());
    }

    #[test]
    fn zariski_round_trips() {
        let z = Zariski::for_dimension(3).unwrap();
        let s = xs();
        for text in [
            "3/2 * Z[x1^2 + x2^2; x1] - Z[]",
            "Z[x1] + 4 * nu^2 * Z[]",
            "Z[x1; x2] + y2 * Z[x1] + y1 * Z[x2] + y1*y2 * Z[]",
            "-nu^-1 * y3^2 * Z[x2 - 1]",
        ] {
            let t = parse_taylor(text, &s, z.zeta()).unwrap();
            assert_eq!(t.to_text(&s), text);
        }
        let j = z
            .jmap(&parse_zelem("Z[x1*x2 + 1]", &s, z.zeta()).unwrap())
            .unwrap();
        let back = parse_taylor(&j.to_text(&s), &s, z.zeta()).unwrap();
        assert_eq!(
            back.terms().collect::<Vec<_>>(),
            j.terms().collect::<Vec<_>>()
        );
        assert!(!back.in_a_nu());
    }

    #[test]
    fn random_values_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let shape = PolyShape::new(3, 4).terms(6).denominators(7);
        for _ in 0..300 {
            let mut v = NuObject::zero(3);
            for k in -1..=2 {
                if rng.gen_bool(0.5) {
                    v.add_at(k, &random_poly(&mut rng, &shape));
                }
            }
            let text = v.to_text(&xs());
            let back = parse_nu(&text, &xs()).unwrap();
            assert_eq!(back, v, "{text}");
            assert_eq!(back.to_text(&xs()), text);
        }
    }
}
