//! Plain-text operator notation.
//!
//! ```text
//! expr   := term (SEP term)*        SEP is a standalone `+` or `-` token
//! term   := [number '*'] factor*    a bare number is a constant term
//! factor := mode ['+']              trailing `+` marks a creation operator
//! mode   := s | d-2 | d-1 | d0 | d1 | d2 | d+1 | d+2
//! ```
//!
//! Tokens are whitespace separated, e.g. `2.0 * s+ s+ d0 d0 + 1.5 * d2+ d2`.
//! Words need not be normal ordered; the result is.

use super::expr::{normal_order, BosonExpr, Ladder, Mode, OperatorWord};
use crate::error::{Error, Result};

fn parse_mode(tok: &str) -> Option<Ladder> {
    let (body, dagger) = match tok.strip_suffix('+') {
        Some(b) => (b, true),
        None => (tok, false),
    };
    let mode = if body == "s" {
        Mode::S
    } else {
        let mu: i32 = body.strip_prefix('d')?.parse().ok()?;
        if !(-2..=2).contains(&mu) {
            return None;
        }
        Mode::d(mu)
    };
    Some(Ladder { mode, dagger })
}

pub fn parse_expr(text: &str) -> Result<BosonExpr> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut words = Vec::new();
    let mut sign = 1.0;
    let mut i = 0;
    loop {
        let mut coef = sign;
        let mut ladders = Vec::new();
        if let Ok(c) = tokens[i].parse::<f64>() {
            coef *= c;
            i += 1;
            if tokens.get(i) == Some(&"*") {
                i += 1;
            }
        }
        while i < tokens.len() && tokens[i] != "+" && tokens[i] != "-" {
            let l = parse_mode(tokens[i])
                .ok_or_else(|| Error::Parse(format!("unrecognized token `{}`", tokens[i])))?;
            ladders.push(l);
            i += 1;
        }
        words.push(OperatorWord::new(coef, ladders));
        if i == tokens.len() {
            break;
        }
        sign = if tokens[i] == "+" { 1.0 } else { -1.0 };
        i += 1;
        if i == tokens.len() {
            return Err(Error::Parse("dangling operator at end of expression".into()));
        }
    }
    Ok(normal_order(&words))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boson_algebra::expr::Monomial;

    #[test]
    fn parses_sum() {
        let e = parse_expr("2.0 * s+ s+ d0 d0 + 1.5 * d2+ d2").unwrap();
        let a = Monomial::new(vec![Mode::S, Mode::S], vec![Mode::d(0), Mode::d(0)]);
        let b = Monomial::new(vec![Mode::d(2)], vec![Mode::d(2)]);
        assert_eq!(e, BosonExpr::term(2.0, a) + BosonExpr::term(1.5, b));
    }

    #[test]
    fn normal_orders_and_subtracts() {
        let e = parse_expr("s s+ - 1").unwrap();
        assert_eq!(e, BosonExpr::number(Mode::S));
        let e = parse_expr("d+2 d-2+ - 3 d-1").unwrap();
        assert_eq!(e.len(), 2);
    }

    #[test]
    fn errors() {
        assert!(parse_expr("").is_err());
        assert!(parse_expr("2 * p+").is_err());
        assert!(parse_expr("s+ s +").is_err());
        assert!(parse_expr("d3").is_err());
    }
}
