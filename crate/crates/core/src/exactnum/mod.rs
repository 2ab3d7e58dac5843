//! Exact rationals, rational intervals with a certified logarithm, and complex balls.

pub mod ball;
pub mod interval;
pub mod rat;

pub use ball::ComplexBall;
pub use interval::{kappa, ln_enclosure, pow_cmp, RatInterval};
pub use rat::{int, parse_rat, rat, Rat};
