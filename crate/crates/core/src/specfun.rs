//! Exact Laguerre polynomials and three closed-form evaluations of the
//! reduced integral `Ĥ(k, ζ)`: a Laguerre Wronskian, a Hankel determinant
//! and the matrix-argument hypergeometric series.
//!
//! All three return
//!
//! ```text
//! Ĥ(k, ζ) = H(k, ζ) · 2^((N+2k-1)N) / (π^N N! e^(-N|ζ|)),
//! ```
//!
//! a polynomial of degree `kN` in `|ζ|` with rational coefficients. The
//! transcendental prefactor is reattached by [`ReducedH::full`].

use std::f64::consts::PI;

use num_traits::{One, Signed, Zero};

use crate::coefficients::coeff_cn;
use crate::error::{Error, Result};
use crate::moments::keating_snaith;
use crate::rational::{binomial, determinant, factorial, from_bigint, int, to_f64, Rational};

/// Dense polynomial with exact rational coefficients, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c * int(j as i64))
            .collect();
        Self::new(coeffs)
    }

    pub fn nth_derivative(&self, order: usize) -> Self {
        (0..order).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        let coeffs = (0..len)
            .map(|j| self.coeffs.get(j).unwrap_or(&zero) + other.coeffs.get(j).unwrap_or(&zero))
            .collect();
        Self::new(coeffs)
    }
}

/// `L_n^{(α)}` with integer `α`, stored by its exact coefficients
/// `binom(n+α, n-j) (-1)^j / j!`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaguerrePolynomial {
    degree: u32,
    alpha: i64,
    poly: RationalPoly,
}

impl LaguerrePolynomial {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn alpha(&self) -> i64 {
        self.alpha
    }

    /// Coefficient of `t^j` at index `j`; always `degree + 1` entries.
    pub fn coeffs(&self) -> Vec<Rational> {
        let mut c = self.poly.coeffs().to_vec();
        c.resize(self.degree as usize + 1, Rational::zero());
        c
    }

    pub fn as_poly(&self) -> &RationalPoly {
        &self.poly
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.poly.eval(t)
    }
}

pub fn laguerre(n: u32, alpha: i64) -> Result<LaguerrePolynomial> {
    let top = i64::from(n) + alpha;
    if top < 0 {
        return Err(Error::LaguerreDomain { n, alpha });
    }
    let coeffs = (0..=n)
        .map(|j| {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            Rational::new(binomial(top, i64::from(n - j)) * sign, factorial(j))
        })
        .collect();
    Ok(LaguerrePolynomial {
        degree: n,
        alpha,
        poly: RationalPoly::new(coeffs),
    })
}

pub fn laguerre_eval(poly: &LaguerrePolynomial, t: &Rational) -> Rational {
    poly.eval(t)
}

/// The Wronskian `det(g_c^{(r)}(t))`, derivatives taken on the coefficient
/// sequences.
pub fn wronskian_at(polys: &[LaguerrePolynomial], t: &Rational) -> Result<Rational> {
    if polys.is_empty() {
        return Err(Error::InvalidArgument("Wronskian of no functions".into()));
    }
    let m = polys.len();
    let rows = (0..m)
        .map(|r| {
            polys
                .iter()
                .map(|g| g.as_poly().nth_derivative(r).eval(t))
                .collect()
        })
        .collect();
    Ok(determinant(rows))
}

fn sign_k_choose_2(k: u32) -> Rational {
    if (k * (k - 1) / 2).is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn check_positive(k: u32, n: u32) {
    assert!(k >= 1 && n >= 1, "k and N must be positive");
}

/// `Ĥ(k, ζ) = (-1)^{k(k-1)/2} W(L_N^{(k)}, …, L_{N+k-1}^{(k)})(-2|ζ|)`.
pub fn reduced_h_wronskian(k: u32, n: u32, zeta: &Rational) -> Rational {
    check_positive(k, n);
    let polys: Vec<_> = (0..k)
        .map(|i| laguerre(n + i, k.into()).expect("alpha = k is non-negative"))
        .collect();
    let t = zeta.abs() * int(-2);
    sign_k_choose_2(k) * wronskian_at(&polys, &t).expect("k >= 1 polynomials")
}

/// `Ĥ(k, ζ) = (-1)^{k(k-1)/2} det(L_{N+k-1-(i+j)}^{(2k-1)}(-2|ζ|))`.
///
/// Entries whose degree `N+k-1-(i+j)` is negative (only when `k > N+1`) are
/// zero, the convention under which `d/dt L_n^{(α)} = -L_{n-1}^{(α+1)}`
/// holds at `n = 0`.
pub fn reduced_h_hankel(k: u32, n: u32, zeta: &Rational) -> Rational {
    check_positive(k, n);
    let t = zeta.abs() * int(-2);
    let alpha = 2 * i64::from(k) - 1;
    let values: Vec<Rational> = (0..2 * k - 1)
        .map(|s| {
            let degree = i64::from(n + k - 1) - i64::from(s);
            if degree < 0 {
                Rational::zero()
            } else {
                laguerre(degree as u32, alpha).expect("alpha >= 1").eval(&t)
            }
        })
        .collect();
    let rows = (0..k as usize)
        .map(|i| (0..k as usize).map(|j| values[i + j].clone()).collect())
        .collect();
    sign_k_choose_2(k) * determinant(rows)
}

/// `Ĥ(k, ζ) = F̃_N(0, k) Σ_{p=0}^{kN} C_N(p, k) |ζ|^p`, the regrouped
/// `₁F₁(-k; -2k; 2ζ, …, 2ζ)` series.
pub fn reduced_h_hyper(k: u32, n: u32, zeta: &Rational) -> Rational {
    check_positive(k, n);
    keating_snaith(n, k) * reduced_h_series(k, n).eval(&zeta.abs())
}

fn reduced_h_series(k: u32, n: u32) -> RationalPoly {
    RationalPoly::new((0..=k * n).map(|p| coeff_cn(p, k, n)).collect())
}

/// `Ĥ(k, ζ)` for fixed `(k, N)` with the normalisation that links it to the
/// defining integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReducedH {
    pub k: u32,
    pub n: u32,
}

impl ReducedH {
    pub fn new(k: u32, n: u32) -> Result<Self> {
        if k == 0 || n == 0 {
            return Err(Error::InvalidArgument("k and N must be positive".into()));
        }
        Ok(Self { k, n })
    }

    pub fn wronskian(&self, zeta: &Rational) -> Rational {
        reduced_h_wronskian(self.k, self.n, zeta)
    }

    pub fn hankel(&self, zeta: &Rational) -> Rational {
        reduced_h_hankel(self.k, self.n, zeta)
    }

    pub fn hyper(&self, zeta: &Rational) -> Rational {
        reduced_h_hyper(self.k, self.n, zeta)
    }

    /// Coefficients of `Ĥ` as a polynomial in `|ζ|`.
    pub fn polynomial(&self) -> RationalPoly {
        reduced_h_series(self.k, self.n).scale(&keating_snaith(self.n, self.k))
    }

    /// `π^N N! 2^{-(N+2k-1)N} e^{-N|ζ|}`.
    pub fn prefactor(&self, zeta: f64) -> f64 {
        let n = f64::from(self.n);
        let log2 = -(n + 2.0 * f64::from(self.k) - 1.0) * n;
        PI.powi(self.n as i32)
            * to_f64(&from_bigint(factorial(self.n)))
            * log2.exp2()
            * (-n * zeta.abs()).exp()
    }

    /// The full integral `H(k, ζ)` in floating point.
    pub fn full(&self, zeta: &Rational) -> f64 {
        self.prefactor(to_f64(zeta)) * to_f64(&self.hyper(zeta))
    }
}

/// Exact Lagrange interpolation through `(x_i, y_i)`, distinct `x_i`.
pub fn interpolate(points: &[(Rational, Rational)]) -> RationalPoly {
    let mut result = RationalPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = RationalPoly::new(vec![Rational::one()]);
        let mut denom = Rational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            // basis *= (t - xj)
            let shifted: Vec<Rational> = std::iter::once(Rational::zero())
                .chain(basis.coeffs().iter().cloned())
                .collect();
            let scaled = basis.scale(&-xj.clone());
            basis = RationalPoly::new(shifted).add(&scaled);
            denom *= xi - xj;
        }
        result = result.add(&basis.scale(&(yi / denom)));
    }
    result
}
