//! Parser for the polynomial expression grammar shared by every scalar
//! field and document format.
//!
//! ```text
//! input  := expr ('/' expr)?          -- division only at top level
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := rational | var ('^' signed-int)? | '(' expr ')'
//! rational := int ('/' posint)?
//! var    := 'A' | 'm' | 'm2'          -- as known to the target field
//! ```
//!
//! Whitespace is insignificant. A rational literal like `3/4` binds inside
//! a factor; any other `/` splits the whole input into numerator and
//! denominator expressions.

use num::{BigInt, BigRational, Zero};

use super::field::CoeffField;
use super::laurent::LaurentPoly;
use super::poly::PolyOverField;
use super::polyfrac::{MeridianVar, PolyFrac};
use super::ratfunc::RatFunc;
use super::CoeffError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, CoeffError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    digits.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            let n: BigInt = digits.parse().expect("digits parse");
            out.push(Spanned { tok: Tok::Int(n), line: tl, col: tc });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut name = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() {
                    name.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            out.push(Spanned { tok: Tok::Var(name), line: tl, col: tc });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(CoeffError::Syntax {
                    line: tl,
                    col: tc,
                    msg: format!("unexpected character '{}'", other),
                })
            }
        };
        bump(&mut chars);
        out.push(Spanned { tok, line: tl, col: tc });
    }
    Ok(out)
}

struct Cursor {
    toks: Vec<Spanned>,
    pos: usize,
    end_line: usize,
    end_col: usize,
}

impl Cursor {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|s| (s.line, s.col))
            .unwrap_or((self.end_line, self.end_col))
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn syntax(&self, msg: impl Into<String>) -> CoeffError {
        let (line, col) = self.here();
        CoeffError::Syntax { line, col, msg: msg.into() }
    }
}

fn parse_expr<F: CoeffField>(cur: &mut Cursor) -> Result<F, CoeffError> {
    let negate = match cur.peek() {
        Some(Tok::Minus) => {
            cur.next();
            true
        }
        Some(Tok::Plus) => {
            cur.next();
            false
        }
        _ => false,
    };
    let mut acc: F = parse_term(cur)?;
    if negate {
        acc = acc.neg();
    }
    loop {
        match cur.peek() {
            Some(Tok::Plus) => {
                cur.next();
                let t: F = parse_term(cur)?;
                acc = acc.add(&t);
            }
            Some(Tok::Minus) => {
                cur.next();
                let t: F = parse_term(cur)?;
                acc = acc.sub(&t);
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_term<F: CoeffField>(cur: &mut Cursor) -> Result<F, CoeffError> {
    let mut acc: F = parse_factor(cur)?;
    while cur.peek() == Some(&Tok::Star) {
        cur.next();
        let f: F = parse_factor(cur)?;
        acc = acc.mul(&f);
    }
    Ok(acc)
}

fn parse_signed_exponent(cur: &mut Cursor) -> Result<i64, CoeffError> {
    let negate = match cur.peek() {
        Some(Tok::Minus) => {
            cur.next();
            true
        }
        Some(Tok::Plus) => {
            cur.next();
            false
        }
        _ => false,
    };
    match cur.next() {
        Some(Spanned { tok: Tok::Int(n), line, col }) => {
            let k: i64 = n.to_string().parse().map_err(|_| CoeffError::Syntax {
                line,
                col,
                msg: "exponent out of range".into(),
            })?;
            Ok(if negate { -k } else { k })
        }
        _ => Err(cur.syntax("expected an integer exponent after '^'")),
    }
}

fn parse_factor<F: CoeffField>(cur: &mut Cursor) -> Result<F, CoeffError> {
    match cur.next() {
        Some(Spanned { tok: Tok::Int(n), .. }) => {
            // A rational literal consumes `/ posint`; any other slash is
            // left for the top level.
            if cur.peek() == Some(&Tok::Slash) {
                if let Some(Tok::Int(d)) = cur.peek2() {
                    let d = d.clone();
                    if d.is_zero() {
                        cur.next();
                        return Err(CoeffError::DivisionByZero);
                    }
                    cur.next();
                    cur.next();
                    return Ok(F::from_rational(BigRational::new(n, d)));
                }
            }
            Ok(F::from_rational(BigRational::from_integer(n)))
        }
        Some(Spanned { tok: Tok::Var(name), line, col }) => {
            let k = if cur.peek() == Some(&Tok::Caret) {
                cur.next();
                parse_signed_exponent(cur)?
            } else {
                1
            };
            F::from_var_pow(&name, k)
                .ok_or(CoeffError::UnknownVariable { name, line, col })
        }
        Some(Spanned { tok: Tok::LParen, .. }) => {
            let v = parse_expr(cur)?;
            match cur.next() {
                Some(Spanned { tok: Tok::RParen, .. }) => Ok(v),
                _ => Err(cur.syntax("expected ')'")),
            }
        }
        _ => Err(cur.syntax("expected a number, a variable or '('")),
    }
}

fn end_position(text: &str) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for c in text.chars() {
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

/// Parses a scalar of the field `F` from the expression grammar.
pub fn parse_scalar<F: CoeffField>(text: &str) -> Result<F, CoeffError> {
    let toks = lex(text)?;
    let (end_line, end_col) = end_position(text);
    let mut cur = Cursor { toks, pos: 0, end_line, end_col };
    let num: F = parse_expr(&mut cur)?;
    let value = if cur.peek() == Some(&Tok::Slash) {
        cur.next();
        let den: F = parse_expr(&mut cur)?;
        num.div(&den)?
    } else {
        num
    };
    if cur.peek().is_some() {
        return Err(cur.syntax("unexpected trailing input"));
    }
    Ok(value)
}

/// Parses a Laurent polynomial in `A`; rational-function values are
/// rejected.
pub fn parse_laurent(text: &str) -> Result<LaurentPoly, CoeffError> {
    let v: RatFunc = parse_scalar(text)?;
    match v.as_laurent() {
        Some(p) => Ok(p.clone()),
        None => Err(CoeffError::Domain(format!(
            "expression is not a Laurent polynomial: {}",
            v
        ))),
    }
}

/// Parses a polynomial in the meridian variable `m` with coefficients in
/// `F`. Rational expressions are accepted when the denominator divides
/// out (e.g. `(m^2-1)/(m-1)`), otherwise rejected.
pub fn parse_poly_in_m<F: CoeffField>(text: &str) -> Result<PolyOverField<F>, CoeffError> {
    let v: PolyFrac<F, MeridianVar> = parse_scalar(text)?;
    match v.as_poly() {
        Some(p) => Ok(p.clone()),
        None => Err(CoeffError::Domain(format!(
            "expression is not a polynomial in m: {}",
            v
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::polyfrac::QAm2;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn laurent_terms_read_directly() {
        let p = parse_laurent("A^4 - 2*A^2 + 1").unwrap();
        let expect =
            LaurentPoly::from_terms(vec![(4, rat(1)), (2, rat(-2)), (0, rat(1))]);
        assert_eq!(p, expect);
        assert_eq!(parse_laurent("A^-3").unwrap(), LaurentPoly::var_pow(-3));
    }

    #[test]
    fn top_level_division_builds_a_rational_function() {
        let v: RatFunc = parse_scalar("(A^2+1)/A").unwrap();
        let direct = RatFunc::new(
            parse_laurent("A^2 + 1").unwrap(),
            parse_laurent("A").unwrap(),
        )
        .unwrap();
        assert_eq!(v, direct);
        // canonical form carries the pure power into the numerator
        assert_eq!(v.as_laurent(), Some(&parse_laurent("A^-1 + A").unwrap()));
    }

    #[test]
    fn rational_literals_bind_inside_factors() {
        let v: RatFunc = parse_scalar("1/2*A + 3/4").unwrap();
        let expect = LaurentPoly::from_terms(vec![(1, rat(1) / rat(2)), (0, rat(3) / rat(4))]);
        assert_eq!(v.as_laurent(), Some(&expect));
    }

    #[test]
    fn unknown_variable_reports_position() {
        match parse_scalar::<RatFunc>("A + 2*B^2") {
            Err(CoeffError::UnknownVariable { name, line, col }) => {
                assert_eq!(name, "B");
                assert_eq!((line, col), (1, 7));
            }
            other => panic!("expected unknown variable, got {:?}", other),
        }
        // m2 is unknown to the base field but fine in the extended one
        assert!(parse_scalar::<RatFunc>("m2 + 1").is_err());
        assert!(parse_scalar::<QAm2>("m2 + 1").is_ok());
    }

    #[test]
    fn syntax_error_reports_position() {
        match parse_scalar::<RatFunc>("A^") {
            Err(CoeffError::Syntax { line, col, .. }) => assert_eq!((line, col), (1, 3)),
            other => panic!("expected syntax error, got {:?}", other),
        }
        assert!(matches!(
            parse_scalar::<RatFunc>("A 2"),
            Err(CoeffError::Syntax { .. })
        ));
    }

    #[test]
    fn division_by_zero_expression() {
        assert_eq!(
            parse_scalar::<RatFunc>("1/(A - A)").unwrap_err(),
            CoeffError::DivisionByZero
        );
        assert_eq!(
            parse_scalar::<RatFunc>("3/0").unwrap_err(),
            CoeffError::DivisionByZero
        );
    }

    #[test]
    fn poly_in_m_accepts_cancelling_fractions() {
        let p = parse_poly_in_m::<RatFunc>("(m^2 - 1)/(m - 1)").unwrap();
        let expect = PolyOverField::from_coeffs([(1, RatFunc::one()), (0, RatFunc::one())]);
        assert_eq!(p, expect);
        assert!(parse_poly_in_m::<RatFunc>("1/m").is_err());
    }

    #[test]
    fn canonical_strings_reparse_to_the_same_value() {
        for text in [
            "(A^2+1)/A",
            "A^-3",
            "1 - 2*A^2 + A^4",
            "(1 + A)/(A^2 + A + 1)",
            "-1/2*A^-1 + 5",
        ] {
            let v: RatFunc = parse_scalar(text).unwrap();
            let v2: RatFunc = parse_scalar(&v.to_string()).unwrap();
            assert_eq!(v, v2, "round trip failed for {}", text);
        }
        for text in ["(m2^2 + A)/(m2 + 1)", "m2^-2", "(A^-1*m2 + 1)/(m2 + A^2)"] {
            let v: QAm2 = parse_scalar(text).unwrap();
            let v2: QAm2 = parse_scalar(&v.to_string()).unwrap();
            assert_eq!(v, v2, "round trip failed for {}", text);
        }
    }
}
