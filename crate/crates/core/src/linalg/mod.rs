//! Dense exact matrices over ℤ and ℚ, polynomial matrices, and ball
//! matrices for certified determinant enclosures.

mod ball;
mod int;
mod poly_matrix;
mod rat;

pub use ball::{vandermonde_ball, vandermonde_rational, BallMatrix};
pub use int::IntMatrix;
pub use poly_matrix::PolyMatrix;
pub use rat::{parse_rational, RatMatrix};

pub(crate) use int::bareiss;

use crate::{Error, Result};

/// Splits `"r c"` + `r·c` entry tokens, ignoring blank lines and `#`
/// comments.
fn parse_header(text: &str) -> Result<(usize, usize, Vec<String>)> {
    let mut tokens = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split_whitespace())
        .map(str::to_string);
    let mut dim = |what: &str| -> Result<usize> {
        let t = tokens.next().ok_or_else(|| Error::Parse(format!("missing {what}")))?;
        t.parse::<usize>().map_err(|e| Error::Parse(format!("{what} {t:?}: {e}")))
    };
    let r = dim("row count")?;
    let c = dim("column count")?;
    let rest: Vec<String> = tokens.collect();
    if rest.len() != r * c {
        return Err(Error::Parse(format!("expected {} entries, found {}", r * c, rest.len())));
    }
    Ok((r, c, rest))
}
