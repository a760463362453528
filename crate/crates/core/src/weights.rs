//! Product weights, modified weights and per-subset functional norms.
//!
//! The weight of a finite coordinate set `u` is `γ_u = ∏_{j∈u} c / j^a`.
//! For a finite conjugate exponent `p*` the quantity driving every
//! construction is the modified weight
//! `γ̄_u = γ_u^{p*} / (p*+1)^{|u|} = (c^{p*}/(p*+1))^{|u|} ∏_{j∈u} j^{-a p*}`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::subset::Subset;
use crate::summation::Compensated;

/// Subsets longer than this are always evaluated in the log domain.
const DIRECT_PRODUCT_MAX_LEN: usize = 16;

/// The space exponent `p ∈ [1, ∞]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpaceExponent {
    One,
    Finite(f64),
    Infinity,
}

impl SpaceExponent {
    pub fn from_f64(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidParams(format!(
                "p must lie in [1, inf], got {p}"
            )));
        }
        Ok(if p == 1.0 {
            SpaceExponent::One
        } else if p.is_infinite() {
            SpaceExponent::Infinity
        } else {
            SpaceExponent::Finite(p)
        })
    }

    pub fn conjugate(self) -> Conjugate {
        match self {
            SpaceExponent::One => Conjugate::Infinite,
            SpaceExponent::Infinity => Conjugate::Finite(1.0),
            SpaceExponent::Finite(p) => Conjugate::Finite(p / (p - 1.0)),
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            SpaceExponent::One => 1.0,
            SpaceExponent::Finite(p) => p,
            SpaceExponent::Infinity => f64::INFINITY,
        }
    }
}

impl std::str::FromStr for SpaceExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(SpaceExponent::Infinity),
            other => {
                let p: f64 = other
                    .parse()
                    .map_err(|_| Error::InvalidParams(format!("cannot parse p from {s:?}")))?;
                SpaceExponent::from_f64(p)
            }
        }
    }
}

impl fmt::Display for SpaceExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceExponent::One => write!(f, "1"),
            SpaceExponent::Finite(p) => write!(f, "{p}"),
            SpaceExponent::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for SpaceExponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The Hölder conjugate `p*` of the space exponent, `1/p + 1/p* = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Conjugate {
    /// `p = 1`.
    Infinite,
    Finite(f64),
}

impl Conjugate {
    pub fn finite(self) -> Option<f64> {
        match self {
            Conjugate::Infinite => None,
            Conjugate::Finite(q) => Some(q),
        }
    }
}

impl fmt::Display for Conjugate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conjugate::Infinite => write!(f, "inf"),
            Conjugate::Finite(q) => write!(f, "{q}"),
        }
    }
}

impl Serialize for Conjugate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Validated problem parameters `(a, c, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeightParams {
    a: f64,
    c: f64,
    p: SpaceExponent,
    p_star: Conjugate,
    #[serde(skip)]
    elem_factor: Option<f64>,
}

/// Checks admissibility of `(a, c, p)`: `c > 0`, `p ≥ 1` and `a > 1/p*`.
pub fn validate_params(a: f64, c: f64, p: f64) -> Result<WeightParams> {
    WeightParams::new(a, c, SpaceExponent::from_f64(p)?)
}

impl WeightParams {
    pub fn new(a: f64, c: f64, p: SpaceExponent) -> Result<Self> {
        if !c.is_finite() || c <= 0.0 {
            return Err(Error::InvalidParams(format!("c must be positive, got {c}")));
        }
        if !a.is_finite() {
            return Err(Error::InvalidParams(format!("a must be finite, got {a}")));
        }
        let p_star = p.conjugate();
        match p_star {
            Conjugate::Infinite if a <= 0.0 => {
                return Err(Error::InvalidParams(format!(
                    "a must exceed 1/p* = 0, got {a}"
                )));
            }
            Conjugate::Finite(q) if a * q <= 1.0 => {
                return Err(Error::InvalidParams(format!(
                    "a must exceed 1/p* = {}, got {a}",
                    1.0 / q
                )));
            }
            _ => {}
        }
        let elem_factor = p_star.finite().map(|q| c.powf(q) / (q + 1.0));
        Ok(Self {
            a,
            c,
            p,
            p_star,
            elem_factor,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn p(&self) -> SpaceExponent {
        self.p
    }

    pub fn p_star(&self) -> Conjugate {
        self.p_star
    }

    /// `c^{p*}/(p*+1)`, only defined for finite `p*`.
    pub fn elem_factor(&self) -> Option<f64> {
        self.elem_factor
    }

    pub fn finite_p_star(&self) -> Result<f64> {
        self.p_star.finite().ok_or(Error::InfiniteConjugate)
    }

    /// Evaluator for `γ_u`.
    pub fn weights(&self) -> ProductWeight {
        ProductWeight {
            factor: self.c,
            exponent: self.a,
        }
    }

    /// Evaluator for `γ̄_u`; fails for `p = 1`.
    pub fn modified_weights(&self) -> Result<ProductWeight> {
        let q = self.finite_p_star()?;
        Ok(ProductWeight {
            factor: self.elem_factor.expect("finite p* has an element factor"),
            exponent: self.a * q,
        })
    }

    /// `c^{1/a}`: adding any index `j ≥ c^{1/a}` to a set never increases its weight.
    pub fn growth_limit(&self) -> f64 {
        self.c.powf(1.0 / self.a)
    }

    /// `ε^{p*}`, the residual budget of the active-set criterion.
    pub fn budget(&self, eps: f64) -> Result<f64> {
        Ok(eps.powf(self.finite_p_star()?))
    }
}

impl fmt::Display for WeightParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a={} c={} p={} (p*={})",
            self.a, self.c, self.p, self.p_star
        )
    }
}

/// A weight of the form `∏_{j∈u} factor · j^{-exponent}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProductWeight {
    pub factor: f64,
    pub exponent: f64,
}

impl ProductWeight {
    #[inline]
    pub fn element(&self, j: u32) -> f64 {
        self.factor * f64::from(j).powf(-self.exponent)
    }

    pub fn eval(&self, u: &Subset) -> f64 {
        if u.len() > DIRECT_PRODUCT_MAX_LEN {
            return self.ln_eval(u).exp();
        }
        let direct = u.iter().fold(1.0, |acc, j| acc * self.element(j));
        if direct < f64::MIN_POSITIVE {
            self.ln_eval(u).exp()
        } else {
            direct
        }
    }

    pub fn ln_eval(&self, u: &Subset) -> f64 {
        let mut acc = Compensated::default();
        let ln_factor = self.factor.ln();
        for j in u.iter() {
            acc += ln_factor;
            acc -= self.exponent * f64::from(j).ln();
        }
        acc.value()
    }
}

/// `γ_u = ∏_{j∈u} c/j^a`.
pub fn gamma(params: &WeightParams, u: &Subset) -> f64 {
    params.weights().eval(u)
}

/// `γ̄_u`; rejects `p = 1`.
pub fn gamma_bar(params: &WeightParams, u: &Subset) -> Result<f64> {
    Ok(params.modified_weights()?.eval(u))
}

/// Norm of the integration functional restricted to a `card`-variate space:
/// `(p*+1)^{-card/p*}`, and `1` for `p = 1`.
pub fn s_u_norm(params: &WeightParams, card: usize) -> f64 {
    match params.p_star {
        Conjugate::Infinite => 1.0,
        Conjugate::Finite(q) => (q + 1.0).powf(-(card as f64) / q),
    }
}
