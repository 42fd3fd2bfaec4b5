//! Exact formal power series and polynomial machinery.
//!
//! Series are truncated at an explicit order and every coefficient is an
//! exact rational. Compositional inverses, square roots and implicit
//! solutions are obtained by Newton iteration on truncated series; root
//! isolation decides signs only at rational points, so the reported
//! enclosures are certificates, not approximations.

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::incidence::MultiplicativeFunction;
use crate::rat::{parse_rat, rat_to_string, Rat};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Truncated power series
// ---------------------------------------------------------------------------

/// A truncated formal power series `c_0 + c_1 z + ... + c_M z^M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rat>,
}

impl PowerSeries {
    /// Zero series tracked to the given order.
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    /// The identity series `z`, tracked to the given order.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rat::one();
        }
        s
    }

    /// Builds from coefficients `c_0, c_1, ...`; the order is `len - 1`.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least a constant term");
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^k`, if within the tracked order.
    pub fn coeff(&self, k: usize) -> Option<&Rat> {
        self.coeffs.get(k)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        coeffs.resize(order + 1, Rat::zero());
        PowerSeries { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// Order of the first nonzero coefficient (`None` for the zero series).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| &self.coeffs[k] + &other.coeffs[k])
            .collect();
        PowerSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| &self.coeffs[k] - &other.coeffs[k])
            .collect();
        PowerSeries { coeffs }
    }

    pub fn neg(&self) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, factor: &Rat) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn add_constant(&self, c: &Rat) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += c;
        PowerSeries { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![Rat::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs }
    }

    /// Multiplication by `z^k` (truncating at the same order).
    pub fn shift_up(&self, k: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![Rat::zero(); order + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + k <= order {
                coeffs[i + k] = c.clone();
            }
        }
        PowerSeries { coeffs }
    }

    /// Division by `z^k`; fails unless the first `k` coefficients vanish.
    /// The result is tracked to `order - k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(Error::Series(format!("series is not divisible by z^{k}")));
        }
        if self.order() < k {
            return Err(Error::Series(format!(
                "order {} too small to divide by z^{k}",
                self.order()
            )));
        }
        Ok(PowerSeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn recip(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::Series(
                "reciprocal requires a nonzero constant term".into(),
            ));
        }
        let order = self.order();
        let mut inv = vec![Rat::zero(); order + 1];
        inv[0] = Rat::one() / &self.coeffs[0];
        for k in 1..=order {
            let mut acc = Rat::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &inv[k - j];
            }
            inv[k] = -(acc / &self.coeffs[0]);
        }
        Ok(PowerSeries { coeffs: inv })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let order = self.order().min(other.order());
        Ok(self.truncate(order).mul(&other.truncate(order).recip()?))
    }

    /// Composition `self(other(z))`; requires `other(0) = 0`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if !other.coeffs[0].is_zero() {
            return Err(Error::Series(
                "composition requires the inner series to vanish at 0".into(),
            ));
        }
        let order = self.order().min(other.order());
        let inner = other.truncate(order);
        // Horner evaluation over truncated series.
        let mut acc = PowerSeries::zero(order);
        for k in (0..=order).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return PowerSeries::zero(0);
        }
        let coeffs = (1..=self.order())
            .map(|k| &self.coeffs[k] * Rat::from_integer(k.into()))
            .collect();
        PowerSeries { coeffs }
    }

    /// Compositional inverse: the series `h` with `self(h(z)) = z`, given
    /// `self(0) = 0` and a nonzero linear coefficient. Newton iteration,
    /// `⌈log2(M+1)⌉ + 1` rounds.
    pub fn compositional_inverse(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Series(
                "compositional inverse requires f(0) = 0".into(),
            ));
        }
        if self.order() < 1 || self.coeffs[1].is_zero() {
            return Err(Error::Series(
                "compositional inverse requires a nonzero linear coefficient".into(),
            ));
        }
        let order = self.order();
        let z = PowerSeries::identity(order);
        let mut h = z.scale(&(Rat::one() / &self.coeffs[1]));
        for _ in 0..=newton_rounds(order) {
            // h <- h - (f(h) - z) / f'(h)
            let residual = self.compose(&h)?.sub(&z);
            if residual.is_zero() {
                break;
            }
            let slope = self.derivative().truncate(order).compose(&h)?;
            h = h.sub(&residual.div(&slope)?);
        }
        let check = self.compose(&h)?;
        if check != z {
            return Err(Error::Solver(
                "Newton iteration for the compositional inverse did not converge".into(),
            ));
        }
        Ok(h)
    }

    /// Square root with `s(0) = 1`; requires `self(0) = 1`.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Series(
                "square root branch requires constant term 1".into(),
            ));
        }
        let order = self.order();
        let half = Rat::new(1.into(), 2.into());
        let mut s = PowerSeries::zero(order).add_constant(&Rat::one());
        for _ in 0..=newton_rounds(order) {
            // s <- (s + f/s) / 2
            let next = s.add(&self.div(&s)?).scale(&half);
            if next == s {
                break;
            }
            s = next;
        }
        if s.mul(&s) != self.truncate(order) {
            return Err(Error::Solver(
                "Newton iteration for the square root did not converge".into(),
            ));
        }
        Ok(s)
    }

    /// JSON form `{"order": M, "coeffs": ["0", "1", ...]}` (index 0 is the
    /// constant term).
    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order(),
            "coeffs": self.coeffs.iter().map(rat_to_string).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let entries = value
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"coeffs\" array".into()))?;
        let mut coeffs = Vec::with_capacity(entries.len());
        for item in entries {
            let s = item
                .as_str()
                .ok_or_else(|| Error::Parse("series coefficients must be strings".into()))?;
            coeffs.push(parse_rat(s)?);
        }
        if coeffs.is_empty() {
            return Err(Error::Parse("series needs at least a constant term".into()));
        }
        Ok(PowerSeries { coeffs })
    }
}

fn newton_rounds(order: usize) -> usize {
    usize::BITS as usize - (order + 1).leading_zeros() as usize + 1
}

// ---------------------------------------------------------------------------
// The noncrossing Fourier transform and the zeta relation
// ---------------------------------------------------------------------------

/// Characteristic series `φ_f(z) = Σ f_n z^n` truncated at `order`.
pub fn characteristic_series(f: &MultiplicativeFunction, order: usize) -> Result<PowerSeries> {
    let mut coeffs = vec![Rat::zero(); order + 1];
    for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
        *c = f.char_at(n)?.clone();
    }
    Ok(PowerSeries::from_coeffs(coeffs))
}

/// The Fourier transform `F_f(z) = φ_f^{⟨-1⟩}(z) / z`, defined for `f_1 = 1`.
/// It turns convolution into the pointwise series product.
pub fn fourier(f: &MultiplicativeFunction, order: usize) -> Result<PowerSeries> {
    if !f.char_at(1)?.is_one() {
        return Err(Error::Series(
            "fourier transform requires characteristic f_1 = 1".into(),
        ));
    }
    let phi = characteristic_series(f, order + 1)?;
    let inverse = phi.compositional_inverse()?;
    inverse.shift_down(1)
}

/// Characteristic series of `f ⊠ g` recovered from `F_f F_g` by inverting
/// `z F_f(z) F_g(z)`.
pub fn convolve_via_fourier(
    f: &MultiplicativeFunction,
    g: &MultiplicativeFunction,
    order: usize,
) -> Result<PowerSeries> {
    let ff = fourier(f, order)?;
    let fg = fourier(g, order)?;
    let product = ff.mul(&fg).shift_up(1).truncate(order + 1);
    product.compositional_inverse().map(|s| s.truncate(order))
}

/// Solves `φ_f(z (1 + φ_g(z))) = φ_g(z)` for `φ_f`, i.e. computes the
/// characteristic series of `f = g ⊠ μ` from that of `g = f ⊠ ζ`.
pub fn zeta_deconvolve(phi_g: &PowerSeries) -> Result<PowerSeries> {
    if !phi_g.coeffs[0].is_zero() {
        return Err(Error::Series(
            "characteristic series must vanish at 0".into(),
        ));
    }
    if phi_g.is_zero() {
        return Ok(phi_g.clone());
    }
    let order = phi_g.order();
    // w(z) = z (1 + φ_g(z)) has linear coefficient 1, so φ_f = φ_g ∘ w^{⟨-1⟩}.
    let w = phi_g.add_constant(&Rat::one()).shift_up(1).truncate(order);
    phi_g.compose(&w.compositional_inverse()?)
}

/// The forward direction of the same relation: given `φ_f`, returns the
/// unique `φ_g` with `g = f ⊠ ζ`, by fixed-point iteration
/// `g ← φ_f(z (1 + g))`. Each pass fixes one further coefficient.
pub fn zeta_convolve(phi_f: &PowerSeries) -> Result<PowerSeries> {
    if !phi_f.coeffs[0].is_zero() {
        return Err(Error::Series(
            "characteristic series must vanish at 0".into(),
        ));
    }
    let order = phi_f.order();
    let mut g = PowerSeries::zero(order);
    for _ in 0..=order + 1 {
        let inner = g.add_constant(&Rat::one()).shift_up(1).truncate(order);
        let next = phi_f.compose(&inner)?;
        if next == g {
            return Ok(g);
        }
        g = next;
    }
    Err(Error::Solver(
        "fixed-point iteration for the zeta relation did not stabilize".into(),
    ))
}

// ---------------------------------------------------------------------------
// Dense univariate polynomials over the rationals
// ---------------------------------------------------------------------------

/// Dense polynomial, lowest degree first, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map(Rat::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rat, degree: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, factor: &Rat) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::from_coeffs(
            (1..self.coeffs.len())
                .map(|k| &self.coeffs[k] * Rat::from_integer(k.into()))
                .collect(),
        )
    }

    /// Euclidean division, returning `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let d = divisor
            .degree()
            .ok_or_else(|| Error::domain("division by the zero polynomial"))?;
        let lead = divisor.leading().unwrap().clone();
        let mut remainder = self.clone();
        let mut quotient = vec![Rat::zero(); self.coeffs.len().saturating_sub(d)];
        while let Some(rd) = remainder.degree() {
            if rd < d {
                break;
            }
            let factor = remainder.leading().unwrap() / &lead;
            quotient[rd - d] = factor.clone();
            let sub = divisor.mul(&Poly::monomial(factor, rd - d));
            remainder = remainder.sub(&sub);
        }
        Ok((Self::from_coeffs(quotient), remainder))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::domain("polynomial division is not exact"));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        match other.div_rem(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => false,
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).unwrap();
            a = b;
            b = r;
        }
        match a.leading() {
            Some(lead) if !lead.is_one() => {
                let inv = Rat::one() / lead;
                a.scale(&inv)
            }
            _ => a,
        }
    }

    /// The square-free part `p / gcd(p, p')`.
    pub fn square_free(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("square-free part of the zero polynomial"));
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return Ok(self.clone());
        }
        self.div_exact(&g)
    }

    /// Evaluates the polynomial at a truncated power series.
    pub fn eval_series(&self, x: &PowerSeries) -> PowerSeries {
        let order = x.order();
        let mut acc = PowerSeries::zero(order);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x);
            acc.coeffs[0] += c;
        }
        acc
    }

    /// JSON form `{"var": "z", "coeffs": [...]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "var": "z",
            "coeffs": self.coeffs.iter().map(rat_to_string).collect::<Vec<_>>(),
        })
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", rat_to_string(c))?,
                _ => {
                    if c.is_one() {
                        write!(f, "z")?;
                    } else {
                        write!(f, "{}*z", rat_to_string(c))?;
                    }
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Bivariate polynomials g(x, z) with rational coefficients
// ---------------------------------------------------------------------------

/// Polynomial in `x` whose coefficients are polynomials in `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly2 {
    /// `x_coeffs[i]` multiplies `x^i`.
    x_coeffs: Vec<Poly>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 { x_coeffs: vec![] }
    }

    pub fn from_x_coeffs(mut x_coeffs: Vec<Poly>) -> Self {
        while x_coeffs.last().map(Poly::is_zero).unwrap_or(false) {
            x_coeffs.pop();
        }
        Poly2 { x_coeffs }
    }

    /// The monomial `c x^i z^j`.
    pub fn term(c: Rat, x_degree: usize, z_degree: usize) -> Self {
        let mut x_coeffs = vec![Poly::zero(); x_degree + 1];
        x_coeffs[x_degree] = Poly::monomial(c, z_degree);
        Self::from_x_coeffs(x_coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.x_coeffs.is_empty()
    }

    pub fn x_degree(&self) -> Option<usize> {
        if self.x_coeffs.is_empty() {
            None
        } else {
            Some(self.x_coeffs.len() - 1)
        }
    }

    pub fn x_coeff(&self, i: usize) -> Poly {
        self.x_coeffs.get(i).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.x_coeffs.len().max(other.x_coeffs.len());
        Self::from_x_coeffs(
            (0..len)
                .map(|i| self.x_coeff(i).add(&other.x_coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.x_coeffs.len().max(other.x_coeffs.len());
        Self::from_x_coeffs(
            (0..len)
                .map(|i| self.x_coeff(i).sub(&other.x_coeff(i)))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Poly2 {
            x_coeffs: self.x_coeffs.iter().map(Poly::neg).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut x_coeffs = vec![Poly::zero(); self.x_coeffs.len() + other.x_coeffs.len() - 1];
        for (i, a) in self.x_coeffs.iter().enumerate() {
            for (j, b) in other.x_coeffs.iter().enumerate() {
                x_coeffs[i + j] = x_coeffs[i + j].add(&a.mul(b));
            }
        }
        Self::from_x_coeffs(x_coeffs)
    }

    pub fn partial_x(&self) -> Self {
        if self.x_coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::from_x_coeffs(
            (1..self.x_coeffs.len())
                .map(|i| self.x_coeffs[i].scale(&Rat::from_integer(i.into())))
                .collect(),
        )
    }

    pub fn partial_z(&self) -> Self {
        Self::from_x_coeffs(self.x_coeffs.iter().map(Poly::derivative).collect())
    }

    /// Value at `(x, z) = (0, 0)`.
    pub fn constant_term(&self) -> Rat {
        self.x_coeff(0).coeff(0)
    }

    /// Substitutes a power series for `x`, producing a series in `z`.
    pub fn eval_series_x(&self, x: &PowerSeries) -> PowerSeries {
        let order = x.order();
        let mut acc = PowerSeries::zero(order);
        for coeff in self.x_coeffs.iter().rev() {
            acc = acc.mul(x);
            let coeff_series = series_from_poly(coeff, order);
            acc = acc.add(&coeff_series);
        }
        acc
    }

    /// JSON form `{"vars": ["x", "z"], "coeffs": [[..], ..]}`, outer index
    /// the power of `x`.
    pub fn to_json(&self) -> Value {
        json!({
            "vars": ["x", "z"],
            "coeffs": self
                .x_coeffs
                .iter()
                .map(|p| p.coeffs().iter().map(rat_to_string).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

fn series_from_poly(p: &Poly, order: usize) -> PowerSeries {
    let mut coeffs = vec![Rat::zero(); order + 1];
    for (k, c) in p.coeffs().iter().enumerate() {
        if k <= order {
            coeffs[k] = c.clone();
        }
    }
    PowerSeries::from_coeffs(coeffs)
}

/// The unique series `x(z)` with `x(0) = 0` and `g(x(z), z) ≡ 0`, given
/// `g(0,0) = 0` and `∂g/∂x (0,0) ≠ 0`. Newton iteration on truncated series;
/// the residual is re-checked before returning.
pub fn implicit_solve(g: &Poly2, order: usize) -> Result<PowerSeries> {
    if !g.constant_term().is_zero() {
        return Err(Error::Solver("implicit solve requires g(0,0) = 0".into()));
    }
    let gx = g.partial_x();
    let slope_at_origin = gx.constant_term();
    if slope_at_origin.is_zero() {
        return Err(Error::Solver(
            "implicit solve requires an invertible Jacobian at the origin".into(),
        ));
    }
    let mut x = PowerSeries::zero(order);
    for _ in 0..=newton_rounds(order) + 1 {
        let residual = g.eval_series_x(&x);
        if residual.is_zero() {
            break;
        }
        let slope = gx.eval_series_x(&x);
        x = x.sub(&residual.div(&slope)?);
    }
    if !g.eval_series_x(&x).is_zero() {
        return Err(Error::Solver(
            "Newton iteration for the implicit equation did not converge".into(),
        ));
    }
    Ok(x)
}

/// Resultant of `p` and `q` with respect to `x`: determinant of the
/// Sylvester matrix over `ℚ[z]`, by fraction-free (Bareiss) elimination.
pub fn resultant(p: &Poly2, q: &Poly2) -> Result<Poly> {
    let m = p
        .x_degree()
        .ok_or_else(|| Error::domain("resultant of the zero polynomial"))?;
    let l = q
        .x_degree()
        .ok_or_else(|| Error::domain("resultant of the zero polynomial"))?;
    if m == 0 && l == 0 {
        return Ok(Poly::constant(Rat::one()));
    }
    if m == 0 {
        let mut acc = Poly::constant(Rat::one());
        for _ in 0..l {
            acc = acc.mul(&p.x_coeff(0));
        }
        return Ok(acc);
    }
    if l == 0 {
        let mut acc = Poly::constant(Rat::one());
        for _ in 0..m {
            acc = acc.mul(&q.x_coeff(0));
        }
        return Ok(acc);
    }
    let size = m + l;
    let mut matrix = vec![vec![Poly::zero(); size]; size];
    for row in 0..l {
        for k in 0..=m {
            matrix[row][row + k] = p.x_coeff(m - k);
        }
    }
    for row in 0..m {
        for k in 0..=l {
            matrix[l + row][row + k] = q.x_coeff(l - k);
        }
    }
    bareiss_determinant(matrix)
}

/// Fraction-free determinant over `ℚ[z]`; every division is exact by the
/// Bareiss identity.
fn bareiss_determinant(mut m: Vec<Vec<Poly>>) -> Result<Poly> {
    let n = m.len();
    if n == 0 {
        return Ok(Poly::constant(Rat::one()));
    }
    let mut sign = false;
    let mut prev = Poly::constant(Rat::one());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return Ok(Poly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let numerator = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = numerator.div_exact(&prev)?;
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign { det.neg() } else { det })
}

// ---------------------------------------------------------------------------
// Sturm sequences and positive-root isolation
// ---------------------------------------------------------------------------

/// A certified enclosure of a single real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RootInterval {
    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn to_f64(&self) -> f64 {
        crate::rat::rat_to_f64(&self.midpoint())
    }
}

/// The Sturm sequence of a polynomial.
pub fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().unwrap().is_zero() {
        let len = seq.len();
        let (_, r) = seq[len - 2].div_rem(&seq[len - 1]).unwrap();
        seq.push(r.neg());
    }
    seq.pop();
    seq
}

fn sign_variations(seq: &[Poly], x: &Rat) -> usize {
    let mut count = 0usize;
    let mut last = 0i8;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots in the half-open interval `(a, b]`, based
/// on the Sturm sequence of a square-free polynomial.
pub fn count_roots_in(seq: &[Poly], a: &Rat, b: &Rat) -> usize {
    sign_variations(seq, a) - sign_variations(seq, b)
}

/// Isolates all real roots in `(0, ∞)`, each refined to an enclosure of
/// width at most `precision`. Roots hit exactly at a rational bisection
/// point collapse to a zero-width interval. The first entry, if any, is the
/// dominant-singularity candidate (the smallest positive root).
pub fn isolate_positive_roots(p: &Poly, precision: &Rat) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(Error::domain("cannot isolate roots of the zero polynomial"));
    }
    if p.degree() == Some(0) {
        return Ok(vec![]);
    }
    let reduced = p.square_free()?;
    let seq = sturm_sequence(&reduced);
    // Cauchy bound: every root has |x| <= 1 + max |a_i / a_d|.
    let lead = reduced.leading().unwrap();
    let mut bound = Rat::zero();
    for c in reduced.coeffs() {
        let ratio = (c / lead).abs();
        if ratio > bound {
            bound = ratio;
        }
    }
    let bound = bound + Rat::one();
    let mut work = vec![(Rat::zero(), bound)];
    let mut exact: Vec<Rat> = Vec::new();
    let mut isolated: Vec<(Rat, Rat)> = Vec::new();
    while let Some((lo, hi)) = work.pop() {
        let count = count_roots_in(&seq, &lo, &hi);
        if count == 0 {
            continue;
        }
        let mid = (&lo + &hi) / Rat::from_integer(2.into());
        if reduced.eval(&mid).is_zero() {
            exact.push(mid.clone());
            // Carve out the exact hit and keep scanning both sides.
            work.push((lo, mid.clone()));
            work.push((mid, hi));
            continue;
        }
        if count == 1 {
            isolated.push((lo, hi));
        } else {
            work.push((lo, mid.clone()));
            work.push((mid, hi));
        }
    }
    // An enclosure found next to an exact hit may still be counting that
    // same root through its endpoint; drop those.
    isolated.retain(|(lo, hi)| !exact.iter().any(|e| lo < e && e <= hi));
    let mut roots: Vec<RootInterval> = exact
        .into_iter()
        .map(|e| RootInterval {
            lo: e.clone(),
            hi: e,
        })
        .collect();
    for (mut lo, mut hi) in isolated {
        while &hi - &lo > *precision {
            let mid = (&lo + &hi) / Rat::from_integer(2.into());
            if reduced.eval(&mid).is_zero() {
                lo = mid.clone();
                hi = mid;
                break;
            }
            if count_roots_in(&seq, &lo, &mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        roots.push(RootInterval { lo, hi });
    }
    roots.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};
    use serde_json::json;

    fn series(coeffs: &[i64]) -> PowerSeries {
        PowerSeries::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// z / (1 - z) = z + z^2 + ... to the given order.
    fn geometric(order: usize) -> PowerSeries {
        let mut coeffs = vec![Rat::one(); order + 1];
        coeffs[0] = Rat::zero();
        PowerSeries::from_coeffs(coeffs)
    }

    #[test]
    fn compose_examples() {
        let f = geometric(8);
        let z = PowerSeries::identity(8);
        assert_eq!(f.compose(&z).unwrap(), f);

        let f = series(&[0, 0, 1, 0, 0]); // z^2
        let g = series(&[0, 1, 1, 0, 0]); // z + z^2
        assert_eq!(f.compose(&g).unwrap(), series(&[0, 0, 1, 2, 1]));

        assert!(f.compose(&series(&[1, 1])).is_err());
    }

    #[test]
    fn mobius_and_zeta_series_are_compositional_inverses() {
        let order = 10;
        let phi_zeta = geometric(order);
        let inverse = phi_zeta.compositional_inverse().unwrap();
        // z / (1 + z) = z - z^2 + z^3 - ...
        let mut expected = vec![Rat::zero(); order + 1];
        for (k, c) in expected.iter_mut().enumerate().skip(1) {
            *c = if k % 2 == 1 { rat(1) } else { rat(-1) };
        }
        assert_eq!(inverse, PowerSeries::from_coeffs(expected));
        assert_eq!(
            phi_zeta.compose(&inverse).unwrap(),
            PowerSeries::identity(order)
        );
        // φ_μ = (sqrt(1+4z) - 1)/2 has compositional inverse z(1+z): the
        // series form of ζ ⊠ μ = δ is F_μ F_ζ = 1, i.e. F_μ = 1 + z.
        let mut radicand = vec![Rat::zero(); order + 1];
        radicand[0] = rat(1);
        radicand[1] = rat(4);
        let phi_mu = PowerSeries::from_coeffs(radicand)
            .sqrt()
            .unwrap()
            .add_constant(&rat(-1))
            .scale(&ratio(1, 2));
        let mut z_plus_z2 = vec![Rat::zero(); order + 1];
        z_plus_z2[1] = rat(1);
        z_plus_z2[2] = rat(1);
        let z_plus_z2 = PowerSeries::from_coeffs(z_plus_z2);
        assert_eq!(phi_mu.compositional_inverse().unwrap(), z_plus_z2);
        assert_eq!(
            phi_mu.compose(&z_plus_z2).unwrap(),
            PowerSeries::identity(order)
        );
        let f_mu = phi_mu
            .compositional_inverse()
            .unwrap()
            .shift_down(1)
            .unwrap();
        let f_zeta = inverse.shift_down(1).unwrap();
        let mut one = PowerSeries::zero(f_mu.order().min(f_zeta.order()));
        one.coeffs[0] = rat(1);
        assert_eq!(f_mu.mul(&f_zeta), one);
        assert_eq!(
            PowerSeries::identity(5).compositional_inverse().unwrap(),
            PowerSeries::identity(5)
        );
        assert!(series(&[0, 0, 1]).compositional_inverse().is_err());
    }

    #[test]
    fn sqrt_examples() {
        let one = series(&[1, 0, 0, 0]);
        assert_eq!(one.sqrt().unwrap(), one);
        let s = series(&[1, 4, 0, 0]).sqrt().unwrap();
        assert_eq!(s, series(&[1, 2, -2, 4]));
        assert!(series(&[2, 0]).sqrt().is_err());
        // 1 - 6z + z^2: (1 - z - sqrt)/2 opens the Schröder series.
        let radicand = series(&[1, -6, 1, 0, 0]);
        let schroeder = series(&[1, -1, 0, 0, 0])
            .sub(&radicand.sqrt().unwrap())
            .scale(&ratio(1, 2));
        assert_eq!(schroeder, series(&[0, 1, 2, 6, 22]));
    }

    #[test]
    fn fourier_examples() {
        let order = 6;
        let abs_mobius = MultiplicativeFunction::abs_mobius(order + 2);
        let f = fourier(&abs_mobius, order).unwrap();
        assert_eq!(f, series(&[1, -1, 0, 0, 0, 0, 0])); // 1 - z
        let zeta = MultiplicativeFunction::zeta(order + 2);
        let f = fourier(&zeta, order).unwrap();
        let expected: Vec<Rat> = (0..=order)
            .map(|k| if k % 2 == 0 { rat(1) } else { rat(-1) })
            .collect();
        assert_eq!(f, PowerSeries::from_coeffs(expected)); // 1/(1+z)
        let delta = MultiplicativeFunction::delta(order + 2);
        let f = fourier(&delta, order).unwrap();
        let mut expected = vec![Rat::zero(); order + 1];
        expected[0] = rat(1);
        assert_eq!(f, PowerSeries::from_coeffs(expected)); // 1
        assert!(fourier(&MultiplicativeFunction::zeta(3), 6).is_err());
        assert!(fourier(&abs_mobius.scaled(&rat(2)), 4).is_err());
    }

    #[test]
    fn zeta_relation_round_trip() {
        // φ_a from φ_|μ| forward, then back.
        let order = 12;
        let mut radicand = vec![Rat::zero(); order + 1];
        radicand[0] = rat(1);
        radicand[1] = rat(-4);
        let phi_abs_mobius = PowerSeries::zero(order)
            .add_constant(&rat(1))
            .sub(&PowerSeries::from_coeffs(radicand).sqrt().unwrap())
            .scale(&ratio(1, 2));
        let phi_a = zeta_convolve(&phi_abs_mobius).unwrap();
        assert_eq!(
            &phi_a.coeffs()[..5],
            &[rat(0), rat(1), rat(2), rat(6), rat(22)]
        );
        let back = zeta_deconvolve(&phi_a).unwrap();
        assert_eq!(back, phi_abs_mobius.truncate(back.order()));
        // g = 0 -> f = 0.
        let zero = PowerSeries::zero(6);
        assert_eq!(zeta_deconvolve(&zero).unwrap(), zero);
    }

    #[test]
    fn implicit_solve_examples() {
        // y (1 - y) (1 - y - z) = z^2, solution starts z^2 + z^3 + 3 z^4.
        let y = Poly2::term(rat(1), 1, 0);
        let one = Poly2::term(rat(1), 0, 0);
        let z = Poly2::term(rat(1), 0, 1);
        let z2 = Poly2::term(rat(1), 0, 2);
        let g = y.mul(&one.sub(&y)).mul(&one.sub(&y).sub(&z)).sub(&z2);
        let sol = implicit_solve(&g, 6).unwrap();
        assert_eq!(
            &sol.coeffs()[..5],
            &[rat(0), rat(0), rat(1), rat(1), rat(3)]
        );
        // x - z = 0.
        let g = Poly2::term(rat(1), 1, 0).sub(&Poly2::term(rat(1), 0, 1));
        assert_eq!(implicit_solve(&g, 5).unwrap(), PowerSeries::identity(5));
        // Degenerate Jacobian: x^2 - z.
        let g = Poly2::term(rat(1), 2, 0).sub(&Poly2::term(rat(1), 0, 1));
        assert!(implicit_solve(&g, 5).is_err());
    }

    #[test]
    fn resultant_examples() {
        // Res_x(x - a, x - b) = a - b with constants a = 3, b = 5.
        let p = Poly2::term(rat(1), 1, 0).sub(&Poly2::term(rat(3), 0, 0));
        let q = Poly2::term(rat(1), 1, 0).sub(&Poly2::term(rat(5), 0, 0));
        assert_eq!(resultant(&p, &q).unwrap(), Poly::constant(rat(-2)));
        // p = x - z, q = x - 1: common x-root exactly at z = 1.
        let p = Poly2::term(rat(1), 1, 0).sub(&Poly2::term(rat(1), 0, 1));
        let q = Poly2::term(rat(1), 1, 0).sub(&Poly2::term(rat(1), 0, 0));
        let r = resultant(&p, &q).unwrap();
        assert_eq!(r.eval(&rat(1)), rat(0));
        assert!(!r.eval(&rat(2)).is_zero());
        // Constructed factorable pair sharing (x - z) identically.
        let x = Poly2::term(rat(1), 1, 0);
        let z = Poly2::term(rat(1), 0, 1);
        let p = x.sub(&z).mul(&x.sub(&Poly2::term(rat(2), 0, 0)));
        let q = x.sub(&z).mul(&x.add(&Poly2::term(rat(1), 0, 0)));
        assert!(resultant(&p, &q).unwrap().is_zero());
    }

    #[test]
    fn root_isolation_examples() {
        // z - 1 has the single positive root 1.
        let p = Poly::from_coeffs(vec![rat(-1), rat(1)]);
        let roots = isolate_positive_roots(&p, &ratio(1, 1000)).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].contains(&rat(1)));
        // 1 - 6z - 7z^2 = (1 - 7z)(1 + z): positive root exactly 1/7.
        let p = Poly::from_coeffs(vec![rat(1), rat(-6), rat(-7)]);
        let roots = isolate_positive_roots(&p, &ratio(1, 1_000_000)).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].contains(&ratio(1, 7)));
        assert!(p.eval(&ratio(1, 7)).is_zero());
        // (z-1)(z-2)(z+3): two positive roots.
        let p = Poly::from_coeffs(vec![rat(6), rat(-7), rat(0), rat(1)]);
        let roots = isolate_positive_roots(&p, &ratio(1, 1000)).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].contains(&rat(1)));
        assert!(roots[1].contains(&rat(2)));
        // No positive roots.
        let p = Poly::from_coeffs(vec![rat(1), rat(1)]);
        assert!(isolate_positive_roots(&p, &ratio(1, 8)).unwrap().is_empty());
    }

    #[test]
    fn sturm_counts() {
        // (z - 1)(z - 2) on (0, 3], (0, 3/2], (3/2, 3].
        let p = Poly::from_coeffs(vec![rat(2), rat(-3), rat(1)]);
        let seq = sturm_sequence(&p);
        assert_eq!(count_roots_in(&seq, &rat(0), &rat(3)), 2);
        assert_eq!(count_roots_in(&seq, &rat(0), &ratio(3, 2)), 1);
        assert_eq!(count_roots_in(&seq, &ratio(3, 2), &rat(3)), 1);
    }

    #[test]
    fn poly_division_and_gcd() {
        let p = Poly::from_coeffs(vec![rat(-2), rat(1)]); // z - 2
        let q = Poly::from_coeffs(vec![rat(-1), rat(1)]); // z - 1
        let prod = p.mul(&q);
        assert_eq!(prod.div_exact(&p).unwrap(), q);
        assert!(prod
            .div_exact(&Poly::from_coeffs(vec![rat(1), rat(1)]))
            .is_err());
        assert!(p.divides(&prod));
        let g = prod.mul(&p); // (z-2)^2 (z-1)
        assert_eq!(g.gcd(&prod), prod);
        assert_eq!(g.square_free().unwrap(), prod);
    }

    #[test]
    fn series_json_round_trip() {
        let s = series(&[0, 1, 2, 6]);
        let v = s.to_json();
        assert_eq!(v["coeffs"], json!(["0", "1", "2", "6"]));
        assert_eq!(PowerSeries::from_json(&v).unwrap(), s);
    }
}
