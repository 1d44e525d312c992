//! The game registry and the inline matrix parser.
//!
//! `--game` accepts a registry name (`bmp`, `brps`, `mne`, `kuhn`) or an
//! inline matrix like `[[0,1,-3],[-1,0,1],[3,-1,0]]`. Inline entries may be
//! integers, decimals, or fractions (`1/3`); they are parsed exactly into
//! rationals so that exact-arithmetic commands see the intended values.

use crate::AppError;
use num_rational::BigRational;
use num_traits::Signed;
use zerosum::efg::{build_kuhn_poker, ExtensiveGame};
use zerosum::rational::RationalMatrix;
use zerosum::MatrixGame;

/// A resolved game: matrix games keep their exact rational form alongside
/// the floating realization.
pub enum GameRef {
    Matrix {
        rational: RationalMatrix,
        float: MatrixGame,
    },
    Efg(Box<ExtensiveGame>),
}

impl GameRef {
    pub fn as_matrix(&self) -> Result<(&RationalMatrix, &MatrixGame), AppError> {
        match self {
            GameRef::Matrix { rational, float } => Ok((rational, float)),
            GameRef::Efg(_) => Err(AppError::config(
                "this experiment needs a matrix game, got an extensive-form game",
            )),
        }
    }

    pub fn as_efg(&self) -> Result<&ExtensiveGame, AppError> {
        match self {
            GameRef::Efg(game) => Ok(game),
            GameRef::Matrix { .. } => Err(AppError::config(
                "this experiment needs an extensive-form game, got a matrix game",
            )),
        }
    }
}

/// Resolves a registry name or an inline matrix.
pub fn lookup(name: &str) -> Result<GameRef, AppError> {
    let trimmed = name.trim();
    if trimmed.starts_with('[') {
        let rational = parse_matrix(trimmed).map_err(AppError::config)?;
        return matrix_ref(rational);
    }
    match trimmed {
        "bmp" => matrix_ref(
            RationalMatrix::from_fractions(&[vec![(1, 3), (-2, 3)], vec![(-2, 3), (1, 1)]])
                .expect("registry matrix"),
        ),
        "brps" => matrix_ref(
            RationalMatrix::from_fractions(&[
                vec![(0, 1), (1, 1), (-3, 1)],
                vec![(-1, 1), (0, 1), (1, 1)],
                vec![(3, 1), (-1, 1), (0, 1)],
            ])
            .expect("registry matrix"),
        ),
        "mne" => matrix_ref(
            RationalMatrix::from_fractions(&[
                vec![(0, 1), (-1, 1), (1, 1), (0, 1), (0, 1)],
                vec![(1, 1), (0, 1), (-1, 1), (0, 1), (0, 1)],
                vec![(-1, 1), (1, 1), (0, 1), (0, 1), (0, 1)],
                vec![(-1, 1), (1, 1), (0, 1), (2, 1), (-1, 1)],
                vec![(-1, 1), (1, 1), (0, 1), (-1, 1), (2, 1)],
            ])
            .expect("registry matrix"),
        ),
        "kuhn" => Ok(GameRef::Efg(Box::new(build_kuhn_poker()))),
        other => Err(AppError::config(format!(
            "unknown game {other:?}; expected bmp, brps, mne, kuhn, or an inline matrix"
        ))),
    }
}

fn matrix_ref(rational: RationalMatrix) -> Result<GameRef, AppError> {
    let float = rational
        .to_matrix_game()
        .map_err(|e| AppError::config(e.to_string()))?;
    Ok(GameRef::Matrix { rational, float })
}

/// Parses `[[a,b],[c,d]]` with integer, decimal, or fraction entries.
pub fn parse_matrix(input: &str) -> Result<RationalMatrix, String> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix("[[")
        .and_then(|s| s.strip_suffix("]]"))
        .ok_or("matrix must look like [[a,b],[c,d]]")?;

    let mut rows = Vec::new();
    for row in inner.split("],[") {
        let mut entries = Vec::new();
        for field in row.split(',') {
            entries.push(parse_entry(field)?);
        }
        rows.push(entries);
    }
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err("matrix rows must be nonempty and equally long".into());
    }
    RationalMatrix::from_fractions(&rows).map_err(|e| e.to_string())
}

/// One entry: integer (`-3`), fraction (`1/3`), or decimal (`0.25`), parsed
/// exactly as a rational.
fn parse_entry(field: &str) -> Result<(i64, i64), String> {
    let bad = || format!("bad matrix entry {field:?}");
    if field.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = field.split_once('/') {
        let num: i64 = num.parse().map_err(|_| bad())?;
        let den: i64 = den.parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok((num, den));
    }
    if let Some((int_part, frac_part)) = field.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int_part.starts_with('-');
        let int_abs: i64 = int_part
            .trim_start_matches(['-', '+'])
            .parse()
            .map_err(|_| bad())?;
        let scale = 10i64.checked_pow(frac_part.len() as u32).ok_or_else(bad)?;
        let frac: i64 = frac_part.parse().map_err(|_| bad())?;
        let magnitude = int_abs
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(bad)?;
        let num = if negative { -magnitude } else { magnitude };
        return Ok((num, scale));
    }
    let num: i64 = field.parse().map_err(|_| bad())?;
    Ok((num, 1))
}

/// Renders a rational matrix in the inline syntax; `parse_matrix` of the
/// result reproduces the same rationals.
pub fn format_matrix(matrix: &RationalMatrix) -> String {
    let fmt_entry = |r: &BigRational| {
        if r.denom() == &1.into() {
            r.numer().to_string()
        } else if r.is_negative() {
            format!("-{}/{}", r.numer().abs(), r.denom())
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    };
    let rows: Vec<String> = (0..matrix.rows())
        .map(|i| {
            let entries: Vec<String> = (0..matrix.cols())
                .map(|j| fmt_entry(matrix.entry(i, j)))
                .collect();
            format!("[{}]", entries.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}
