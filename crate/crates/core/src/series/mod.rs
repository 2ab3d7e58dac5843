//! Power series in `s = 1/t`, polynomial algebra over Q and Q(i), Padé approximants and
//! Thue's auxiliary polynomials for `f_t`.

pub mod gauss;
pub mod pade;
pub mod poly;
pub mod power;
pub mod thue;

pub use gauss::GaussRat;
pub use pade::{pade, PadePair};
pub use poly::{Field, Poly, Ring};
pub use power::{alpha3_series, newton_alpha_series, tail_bound, Series};
pub use thue::RootType;

use std::sync::OnceLock;

use crate::error::Result;
use crate::exactnum::Rat;

/// Truncation order of the series for the root near 0.
pub const ALPHA_ORDER: usize = 31;
/// Truncation order of the series for the root near 1.
pub const ALPHA3_ORDER: usize = 30;

/// The shipped series `B` (through `s^30`) and `B_3` (through `s^29`).
pub fn shipped_series() -> Result<(Series<Rat>, Series<Rat>)> {
    static CACHE: OnceLock<(Series<Rat>, Series<Rat>)> = OnceLock::new();
    if let Some(v) = CACHE.get() {
        return Ok(v.clone());
    }
    let b = newton_alpha_series(ALPHA_ORDER);
    let b3 = alpha3_series(&b)?.truncate(ALPHA3_ORDER);
    Ok(CACHE.get_or_init(|| (b, b3)).clone())
}
