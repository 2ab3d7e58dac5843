//! Thue's construction for `f_t`: the auxiliary polynomials, the root identities in
//! `Q(i)(t)[y]/(y^4 - w)` and the integral approximants `p_r`, `q_r`.

use num_traits::{One, Zero};

use super::gauss::GaussRat;
use super::poly::{Poly, Ring};
use crate::error::{Error, Result};
use crate::exactnum::{int, rat, Rat};
use crate::hyperchi::{chi_star, denom_data};

/// Polynomials in `t` over Q(i).
pub type TPoly = Poly<GaussRat>;
/// Polynomials in `X` with coefficients in Q(i)[t].
pub type XPoly = Poly<TPoly>;

fn tp(c: GaussRat) -> TPoly {
    Poly::constant(c)
}

fn t_var() -> TPoly {
    Poly::x()
}

fn gi(re: i64, im: i64) -> GaussRat {
    GaussRat::int(re, im)
}

fn xp(coeffs: Vec<TPoly>) -> XPoly {
    Poly::new(coeffs)
}

/// `f_t(X) = X^4 - tX^3 - 6X^2 + tX + 1`.
pub fn quartic() -> XPoly {
    let t = t_var();
    xp(vec![tp(gi(1, 0)), t.clone(), tp(gi(-6, 0)), -t, tp(gi(1, 0))])
}

/// `F_t(x, y)` for `x, y` in any ring containing Q(i)[t].
pub fn binary_form<R: Ring>(x: &R, y: &R, t: &R) -> R {
    let x2 = x.clone() * x.clone();
    let y2 = y.clone() * y.clone();
    x2.clone() * x2.clone() - t.clone() * x2.clone() * x.clone() * y.clone() - R::from_i64(6) * x2 * y2.clone()
        + t.clone() * x.clone() * y2.clone() * y.clone()
        + y2.clone() * y2
}

#[derive(Clone, Debug)]
pub struct ThueData {
    pub p: XPoly,
    pub u_quad: XPoly,
    pub lambda: GaussRat,
    pub sqrt_lambda: GaussRat,
    pub y: XPoly,
    pub a: XPoly,
    pub b: XPoly,
    pub c: XPoly,
    pub d_poly: XPoly,
    pub u: XPoly,
    pub z: XPoly,
    /// `w = z/u` as a numerator/denominator pair
    pub w: (XPoly, XPoly),
    /// `U P'' - 3 U' P' + 6 U'' P`
    pub ode_residual: XPoly,
}

fn xscale(p: &XPoly, c: GaussRat) -> XPoly {
    p.scale(&tp(c))
}

pub fn thue_data() -> ThueData {
    let n = 4i64;
    let p = quartic();
    let u_quad = xp(vec![tp(gi(1, 0)), TPoly::zero(), tp(gi(1, 0))]);
    let (p1, p2) = (p.derivative(), p.derivative().derivative());
    let (u1, u2) = (u_quad.derivative(), u_quad.derivative().derivative());
    let ode_residual = u_quad.clone() * p2 - xscale(&(u1.clone() * p1.clone()), gi(n - 1, 0))
        + xscale(&(u2.clone() * p.clone()), gi(n * (n - 1) / 2, 0));
    // disc(U) = U'^2 - 2 U U'' is the constant -4
    let disc = u1.clone() * u1.clone() - xscale(&(u_quad.clone() * u2), gi(2, 0));
    let lambda = disc.coeff(0).coeff(0) / gi(4, 0);
    let sqrt_lambda = gi(0, 1);
    debug_assert_eq!(&sqrt_lambda * &sqrt_lambda, lambda);
    let y = xscale(&(u_quad.clone() * p1), gi(2, 0)) - xscale(&(u1.clone() * p.clone()), gi(n, 0));
    let k = GaussRat::real(rat(n * n - 1, 6));
    let x = XPoly::x();
    let two_l = lambda.clone() * gi(2, 0);
    let sl_u1 = xscale(&u1, sqrt_lambda.clone());
    let a = xscale(&(sl_u1.clone() + Poly::constant(tp(two_l.clone()))), k.clone());
    let b = xscale(&(sl_u1 - Poly::constant(tp(two_l.clone()))), k.clone());
    let inner = xscale(&(u1 * x.clone() - xscale(&u_quad, gi(2, 0))), sqrt_lambda.clone());
    let c = xscale(&(inner.clone() + xscale(&x, two_l.clone())), k.clone());
    let d_poly = xscale(&(inner - xscale(&x, two_l)), k);
    let y_scaled = xscale(&y, (gi(2 * n, 0) * sqrt_lambda.clone()).inv().unwrap());
    let half = GaussRat::real(rat(1, 2));
    let u = xscale(&(y_scaled.clone() - p.clone()), half.clone());
    let z = xscale(&(y_scaled + p.clone()), half);
    ThueData { p, u_quad, lambda, sqrt_lambda, y, a, b, c, d_poly, u: u.clone(), z: z.clone(), w: (z, u), ode_residual }
}

/// Which root of `f_t` an identity or approximation targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootType {
    Type0,
    Type3,
}

impl RootType {
    pub fn index(self) -> u8 {
        match self {
            RootType::Type0 => 0,
            RootType::Type3 => 3,
        }
    }

    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            0 => Ok(RootType::Type0),
            3 => Ok(RootType::Type3),
            _ => Err(Error::Domain(format!("type must be 0 or 3, got {i}"))),
        }
    }

    /// The evaluation point `xi` of the approximants.
    pub fn xi(self) -> i64 {
        match self {
            RootType::Type0 => 0,
            RootType::Type3 => 1,
        }
    }
}

/// Polynomials in `y` over Q(i)[t].
type YPoly = Poly<TPoly>;

/// Whether the candidate root expression in `y = w^(1/4)` is a root of `f_t` identically,
/// i.e. `F_t(N(y), D(y))` vanishes modulo `(it + 4) y^4 - (it - 4)`.
///
/// `unit` is `i` for the genuine expressions; other values give negative controls.
pub fn quotient_root_check_with(which: RootType, unit: &GaussRat) -> bool {
    let y: YPoly = Poly::x();
    let one: YPoly = Poly::one();
    let g: YPoly = Poly::constant(tp(unit.clone()));
    let (num, den) = match which {
        // unit · (y - 1)/(y + 1)
        RootType::Type0 => (g * (y.clone() - one.clone()), y + one),
        // (y - unit)/(-unit·y + 1)
        RootType::Type3 => (y.clone() - g.clone(), one - g * y),
    };
    let t: YPoly = Poly::constant(t_var());
    let value = binary_form(&num, &den, &t);
    let it = t_var().scale(&gi(0, 1));
    let modulus: YPoly = Poly::new(vec![
        -(it.clone() - tp(gi(4, 0))),
        TPoly::zero(),
        TPoly::zero(),
        TPoly::zero(),
        it + tp(gi(4, 0)),
    ]);
    value.pseudo_rem(&modulus).is_zero()
}

pub fn quotient_root_check(which: RootType) -> bool {
    quotient_root_check_with(which, &GaussRat::i())
}

/// `A_r` and `B_r` as polynomials in `X` over Q(i)[t].
pub fn thue_ab(data: &ThueData, r: u32) -> (XPoly, XPoly) {
    let zu = chi_star(r, &data.z, &data.u);
    let uz = chi_star(r, &data.u, &data.z);
    let factor = tp(data.sqrt_lambda.inv().unwrap().pow(r));
    let a = (data.a.clone() * zu.clone() - data.b.clone() * uz.clone()).scale(&factor);
    let b = (data.c.clone() * zu - data.d_poly.clone() * uz).scale(&factor);
    (a, b)
}

/// The integral approximants `(p_r, q_r) = M_r · (B_r(xi), A_r(xi))` as polynomials in `t`.
pub fn approximants(which: RootType, r: u32) -> Result<(TPoly, TPoly)> {
    if r == 0 {
        return Err(Error::Domain("approximants need r >= 1".into()));
    }
    let data = thue_data();
    let (a, b) = thue_ab(&data, r);
    let xi = tp(gi(which.xi(), 0));
    let dd = denom_data(r)?;
    let base = match which {
        RootType::Type0 => 8,
        RootType::Type3 => 2,
    };
    let m = crate::exactnum::rat::powi(&int(base), r) / int(5) * dd.ratio();
    let m = GaussRat::real(m);
    let q = a.eval(&xi).scale(&m);
    let p = b.eval(&xi).scale(&m);
    for (name, poly) in [("p", &p), ("q", &q)] {
        if !poly.coeffs().iter().all(GaussRat::is_gaussian_integer) {
            return Err(Error::Integrality(format!("{name}_{r} for type {} is not integral", which.index())));
        }
    }
    Ok((p, q))
}

/// Substitute a value for `t` in every coefficient.
pub fn at_t(p: &XPoly, t: &GaussRat) -> Poly<GaussRat> {
    p.map(|c| c.eval(t))
}

/// `t^(k-1) · P(1/t)` for a rational polynomial `P` of degree `<= k-1`, as a polynomial in `t`.
pub fn homogenize_in_t(p: &Poly<Rat>, k: usize) -> Poly<Rat> {
    p.reverse(k - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn auxiliary_polynomials() {
        let d = thue_data();
        assert!(d.ode_residual.is_zero());
        assert_eq!(d.lambda, gi(-1, 0));
        let t = t_var();
        let two_t = t.scale(&gi(2, 0));
        let want_y = xp(vec![two_t.clone(), tp(gi(-32, 0)), two_t.scale(&gi(-6, 0)), tp(gi(32, 0)), two_t]);
        assert_eq!(d.y, want_y);
        assert_eq!(d.a, xp(vec![tp(gi(-5, 0)), tp(gi(0, 5))]));
        assert_eq!(d.b, xp(vec![tp(gi(5, 0)), tp(gi(0, 5))]));
        assert_eq!(d.c, xp(vec![tp(gi(0, -5)), tp(gi(-5, 0))]));
        assert_eq!(d.d_poly, xp(vec![tp(gi(0, -5)), tp(gi(5, 0))]));
        // u(0) = -(it + 4)/8
        let u0 = d.u.coeff(0);
        assert_eq!(u0, Poly::new(vec![GaussRat::real(rat(-1, 2)), GaussRat::new(Rat::zero(), rat(-1, 8))]));
    }

    #[test]
    fn root_identities() {
        assert!(quotient_root_check(RootType::Type0));
        assert!(quotient_root_check(RootType::Type3));
        assert!(!quotient_root_check_with(RootType::Type0, &gi(0, 2)));
        assert!(!quotient_root_check_with(RootType::Type3, &gi(0, 2)));
    }

    #[test]
    fn first_approximants_are_integral() {
        for r in 1..=3 {
            approximants(RootType::Type0, r).unwrap();
            approximants(RootType::Type3, r).unwrap();
        }
    }
}
