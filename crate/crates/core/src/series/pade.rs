//! Padé approximants by exact linear algebra.

use num_bigint::BigInt;

use super::poly::{Field, Poly};
use super::power::Series;
use crate::error::{Error, Result};
use crate::exactnum::rat::lcm_denoms;
use crate::exactnum::Rat;

#[derive(Clone, Debug, PartialEq)]
pub struct PadePair<R> {
    pub u: Poly<R>,
    pub v: Poly<R>,
    /// Valuation of `U - B·V` within the known order of `B` (the order itself if it vanishes).
    pub contact_order: usize,
}

/// Determinant-free solve of `m · x = rhs` by Bareiss elimination on the augmented matrix.
///
/// Returns `None` for a singular system.
pub fn bareiss_solve<R: Field>(m: &[Vec<R>], rhs: &[R]) -> Option<Vec<R>> {
    let n = m.len();
    let mut a: Vec<Vec<R>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut prev = R::one();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = a[k][k].clone() * a[i][j].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v / prev.clone();
            }
            a[i][k] = R::zero();
        }
        prev = a[k][k].clone();
    }
    let mut x = vec![R::zero(); n];
    for i in (0..n).rev() {
        let mut s = a[i][n].clone();
        for j in i + 1..n {
            s = s - a[i][j].clone() * x[j].clone();
        }
        x[i] = s / a[i][i].clone();
    }
    Some(x)
}

/// `[deg_num/deg_den]` Padé approximant of `b`, normalised to `V(0) = 1`.
pub fn pade<R: Field>(b: &Series<R>, deg_num: usize, deg_den: usize) -> Result<PadePair<R>> {
    let need = deg_num + deg_den + 1;
    if b.order() < need {
        return Err(Error::Contract(format!(
            "series known to order {} but [{deg_num}/{deg_den}] needs {need}",
            b.order()
        )));
    }
    let m: Vec<Vec<R>> = (0..deg_den)
        .map(|r| {
            (0..deg_den)
                .map(|c| {
                    let idx = deg_num as i64 + 1 + r as i64 - (c as i64 + 1);
                    if idx >= 0 {
                        b.coeff(idx as usize)
                    } else {
                        R::zero()
                    }
                })
                .collect()
        })
        .collect();
    let rhs: Vec<R> = (0..deg_den).map(|r| -b.coeff(deg_num + 1 + r)).collect();
    let sol = bareiss_solve(&m, &rhs).ok_or(Error::DegeneratePade { num: deg_num, den: deg_den })?;
    let mut v = vec![R::one()];
    v.extend(sol);
    let v = Poly::new(v);
    let u = Poly::new(
        (0..=deg_num)
            .map(|j| (0..=deg_den.min(j)).fold(R::zero(), |acc, i| acc + b.coeff(j - i) * v.coeff(i)))
            .collect(),
    );
    let contact_order = residual(b, &u, &v).valuation().unwrap_or(b.order());
    Ok(PadePair { u, v, contact_order })
}

/// `U - B·V` to the known order of `B`.
pub fn residual<R: Field>(b: &Series<R>, u: &Poly<R>, v: &Poly<R>) -> Series<R> {
    Series::from_poly(u, b.order()) - b.clone() * Series::from_poly(v, b.order())
}

impl PadePair<Rat> {
    /// Rescale by the least common denominator so that both polynomials are integral.
    pub fn integer_scaled(&self) -> (PadePair<Rat>, BigInt) {
        let d = lcm_denoms(self.u.coeffs().iter().chain(self.v.coeffs()));
        let k = Rat::from_integer(d.clone());
        (
            PadePair { u: self.u.scale(&k), v: self.v.scale(&k), contact_order: self.contact_order },
            d,
        )
    }
}
