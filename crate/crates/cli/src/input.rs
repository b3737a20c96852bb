use std::str::FromStr;

use gaudin::exactalg::{BigComplex, BigFloat, Rat};
use gaudin::symgroup::BetheConfig;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("empty point list")]
    Empty,
    #[error("cannot read {0:?} as a point (expected p/q, a decimal, or sqrt(x))")]
    Token(String),
    #[error("exact (p/q) and decimal points cannot be mixed: {0:?}")]
    Mixed(String),
    #[error("this command needs exact p/q points, got {0:?}")]
    NotExact(String),
    #[error("expected {expected} points, got {got}")]
    Length { expected: usize, got: usize },
    #[error("{0}")]
    Other(String),
}

/// A list of points, either all exact or all numeric.
#[derive(Clone, Debug)]
pub enum Points {
    Exact(Vec<Rat>),
    Numeric(Vec<BigComplex>),
}

enum Token {
    Exact(Rat),
    Numeric(BigFloat),
}

fn is_exact_literal(s: &str) -> bool {
    let s = s.strip_prefix('-').unwrap_or(s);
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    !n.is_empty() && !d.is_empty() && n.bytes().all(|b| b.is_ascii_digit()) && d.bytes().all(|b| b.is_ascii_digit())
}

fn numeric_value(s: &str, prec: u32) -> Option<BigFloat> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let v = if let Some(inner) = body.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        let x = if is_exact_literal(inner) {
            BigFloat::from_rat(&Rat::from_str(inner).ok()?, prec)
        } else {
            BigFloat::parse_decimal(inner, prec).ok()?
        };
        if x.is_sign_negative() && !x.is_zero() {
            return None;
        }
        x.sqrt()
    } else {
        BigFloat::parse_decimal(body, prec).ok()?
    };
    Some(if neg { -v } else { v })
}

fn token(s: &str, prec: u32) -> Result<Token, InputError> {
    let t = s.trim();
    if is_exact_literal(t) {
        let r = Rat::from_str(t).map_err(|_| InputError::Token(t.to_string()))?;
        return Ok(Token::Exact(r));
    }
    numeric_value(t, prec)
        .map(Token::Numeric)
        .ok_or_else(|| InputError::Token(t.to_string()))
}

/// Parses a comma separated list such as `1,-2/3,5` or `1.5,sqrt(3),0.0`.
pub fn parse_points(s: &str, prec: u32) -> Result<Points, InputError> {
    let toks: Vec<Token> = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| token(t, prec))
        .collect::<Result<_, _>>()?;
    if toks.is_empty() {
        return Err(InputError::Empty);
    }
    if toks.len() > 16 {
        return Err(InputError::Other(format!("at most 16 points are supported, got {}", toks.len())));
    }
    let exact = toks.iter().filter(|t| matches!(t, Token::Exact(_))).count();
    if exact == toks.len() {
        Ok(Points::Exact(
            toks.into_iter()
                .map(|t| match t {
                    Token::Exact(r) => r,
                    Token::Numeric(_) => unreachable!(),
                })
                .collect(),
        ))
    } else if exact == 0 {
        Ok(Points::Numeric(
            toks.into_iter()
                .map(|t| match t {
                    Token::Numeric(x) => BigComplex::real(x),
                    Token::Exact(_) => unreachable!(),
                })
                .collect(),
        ))
    } else {
        Err(InputError::Mixed(s.to_string()))
    }
}

impl Points {
    pub fn exact(self, src: &str) -> Result<BetheConfig<Rat>, InputError> {
        match self {
            Points::Exact(v) => Ok(BetheConfig::new(v)),
            Points::Numeric(_) => Err(InputError::NotExact(src.to_string())),
        }
    }

    pub fn numeric(self, prec: u32) -> BetheConfig<BigComplex> {
        match self {
            Points::Exact(v) => BetheConfig::new(v).to_numeric(prec),
            Points::Numeric(v) => BetheConfig::new(v),
        }
    }
}

/// Comma separated integers, optionally in parentheses.
pub fn parse_usize_list(s: &str) -> Result<Vec<usize>, InputError> {
    s.trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| InputError::Token(t.to_string())))
        .collect()
}

/// Comma separated exact coefficients, constant term first.
pub fn parse_coeffs(s: &str) -> Result<Vec<Rat>, InputError> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            if is_exact_literal(t) {
                Rat::from_str(t).map_err(|_| InputError::Token(t.to_string()))
            } else {
                Err(InputError::NotExact(t.to_string()))
            }
        })
        .collect()
}

pub fn parse_tolerance(s: &str, prec: u32) -> Result<BigFloat, InputError> {
    let t = BigFloat::parse_decimal(s.trim(), prec).map_err(|_| InputError::Token(s.to_string()))?;
    if t.is_zero() || t.is_sign_negative() {
        return Err(InputError::Other(format!("tolerance must be positive, got {s}")));
    }
    Ok(t)
}
