//! Integer codes for standard-basis matrices and the one-line basis record.
//!
//! A matrix `A_i` of a standard basis has first column `e_i`, so only its
//! remaining `n(n-1)` entries are stored, as the base-p digits of a natural
//! number. With 1-based row `r` and column `c ≥ 2`, entry `(r, c)` is digit
//! `j = n(n - c) + (n - r)`: digit 0 is the bottom-right entry, digit `n - 1`
//! the top-right one, and the most significant digit sits at the top of
//! column 2.
//!
//! A record line is `p n code(A_2) ... code(A_n)` in decimal; `A_1 = I` is
//! implicit.

use std::fmt;

use super::StandardBasis;
use crate::error::{Error, Result};
use crate::gf::{check_dim, Matrix, PrimeField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixCode {
    pub value: u128,
    /// 1-based index `i` of the basis matrix; its first column is `e_i`.
    pub position: usize,
}

impl MatrixCode {
    pub fn new(value: u128, position: usize) -> Self {
        Self { value, position }
    }
}

impl fmt::Display for MatrixCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Number of stored digits, `n(n-1)`.
pub fn code_digits(n: usize) -> usize {
    n * (n - 1)
}

/// Exclusive upper bound `p^{n(n-1)}` on code values.
pub fn code_bound(p: u8, n: usize) -> u128 {
    (p as u128).pow(code_digits(n) as u32)
}

#[inline]
fn digit_index(n: usize, r: usize, c: usize) -> usize {
    // 0-based r, c with c >= 1
    n * (n - 1 - c) + (n - 1 - r)
}

pub fn decode_matrix(code: MatrixCode, field: PrimeField, n: usize) -> Result<Matrix> {
    check_dim(n)?;
    if code.position == 0 || code.position > n {
        return Err(Error::Position {
            position: code.position,
            n,
        });
    }
    let p = field.p() as u128;
    if code.value >= code_bound(field.p(), n) {
        return Err(Error::CodeOutOfRange {
            value: code.value,
            p: field.p(),
            digits: code_digits(n),
        });
    }
    let mut digits = [0u8; 30];
    let mut v = code.value;
    for d in digits.iter_mut().take(code_digits(n)) {
        *d = (v % p) as u8;
        v /= p;
    }
    let mut m = Matrix::zero(field, n)?;
    m.set(code.position - 1, 0, 1);
    for c in 1..n {
        for r in 0..n {
            m.set(r, c, digits[digit_index(n, r, c)]);
        }
    }
    Ok(m)
}

pub fn encode_matrix(m: &Matrix, position: usize) -> Result<MatrixCode> {
    let n = m.dim();
    if position == 0 || position > n {
        return Err(Error::Position { position, n });
    }
    for r in 0..n {
        let expect = u8::from(r == position - 1);
        if m.get(r, 0) != expect {
            return Err(Error::FirstColumn { position });
        }
    }
    let p = m.p() as u128;
    let mut value = 0u128;
    for j in (0..code_digits(n)).rev() {
        // invert j = n(n-1-c) + (n-1-r)
        let c = n - 1 - j / n;
        let r = n - 1 - j % n;
        value = value * p + m.get(r, c) as u128;
    }
    Ok(MatrixCode { value, position })
}

/// Parses a `p n code(A_2) ... code(A_n)` record. The result is not
/// validated beyond the codec's own checks.
pub fn parse_record(line: &str) -> Result<StandardBasis> {
    let mut fields = line.split_whitespace();
    let mut next_int = |what: &str| -> Result<u128> {
        let tok = fields
            .next()
            .ok_or_else(|| Error::Parse(format!("missing {what}")))?;
        tok.parse::<u128>()
            .map_err(|_| Error::Parse(format!("{what} is not a natural number: {tok:?}")))
    };
    let p = next_int("p")?;
    let p = u8::try_from(p).map_err(|_| Error::UnsupportedPrime(u8::MAX))?;
    let field = PrimeField::new(p)?;
    let n = next_int("n")? as usize;
    check_dim(n)?;
    let mut codes = Vec::with_capacity(n - 1);
    for i in 2..=n {
        codes.push(next_int(&format!("code of A_{i}"))?);
    }
    if let Some(extra) = fields.next() {
        return Err(Error::Parse(format!("unexpected trailing field {extra:?}")));
    }
    StandardBasis::from_codes(field, n, &codes)
}

pub fn format_record(basis: &StandardBasis) -> Result<String> {
    let mut out = format!("{} {}", basis.field().p(), basis.dim());
    for code in basis.codes()? {
        out.push(' ');
        out.push_str(&code.value.to_string());
    }
    Ok(out)
}
