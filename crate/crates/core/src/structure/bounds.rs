//! Exact evaluation of the bound formulas.
//!
//! `R(p, q) = ceil((p + q)^(1/c))` with `c = num/den > 0`, and the default
//! degree function `d(H, s) = s^(500 |V(H)|^2)` with `|V(P(a,a))| = 2a + 3`.
//! All quantities are exact big integers; rational powers are rounded up.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("a must be at least 2, got {0}")]
    A(usize),
    #[error("clique number must be at least 1")]
    Omega,
    #[error("c must be a positive fraction, got {num}/{den}")]
    C { num: u32, den: u32 },
    #[error("malformed rational {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rational {
    pub num: u32,
    pub den: u32,
}

impl Rational {
    pub const ONE: Rational = Rational { num: 1, den: 1 };
}

impl std::str::FromStr for Rational {
    type Err = BoundsError;

    /// Accepts `"n"` or `"n/d"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BoundsError::Parse(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (
                n.trim().parse().map_err(|_| bad())?,
                d.trim().parse().map_err(|_| bad())?,
            ),
            None => (s.trim().parse().map_err(|_| bad())?, 1),
        };
        if num == 0 || den == 0 {
            return Err(BoundsError::C { num, den });
        }
        Ok(Rational { num, den })
    }
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DFunction {
    /// `d(H, s) = s^(coefficient |V(H)|^2)`.
    Polynomial { coefficient: u32 },
    /// A fixed value regardless of `s`.
    Constant { value: u64 },
}

impl Default for DFunction {
    fn default() -> Self {
        DFunction::Polynomial { coefficient: 500 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct BoundsConfig {
    pub c_const: Rational,
    pub d_function: DFunction,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        BoundsConfig {
            c_const: Rational::ONE,
            d_function: DFunction::default(),
        }
    }
}

fn decimal<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundSheet {
    pub a: usize,
    pub omega: usize,
    pub tau: usize,
    pub config: BoundsConfig,
    /// `a(ω + 1) + 2`
    pub f: usize,
    /// `R(ω, f)`
    #[serde(serialize_with = "decimal")]
    pub s: BigUint,
    /// `d(P(a,a), s)`
    #[serde(serialize_with = "decimal")]
    pub d: BigUint,
    /// `(1 + τ)(a + 1)ω`
    #[serde(serialize_with = "decimal")]
    pub colouring_term: BigUint,
    /// `R(ω, f)(f + 1)^(aω) + ω^2 (f^(a+1) + 2)`
    #[serde(serialize_with = "decimal")]
    pub cutset_term: BigUint,
    /// Neighbours of a free component allowed in `Z`: `R(ω, f)(f + 1)^(aω) - 1`.
    #[serde(serialize_with = "decimal")]
    pub z_neighbour_bound: BigUint,
    /// Neighbours allowed in one conflict class: `ω f^(a+1)`.
    #[serde(serialize_with = "decimal")]
    pub c_neighbour_bound: BigUint,
    /// `1 + max(d, colouring_term, cutset_term)`
    #[serde(serialize_with = "decimal")]
    pub b: BigUint,
    /// Largest χ compatible with `χ < (3 + 1/16) b`.
    #[serde(serialize_with = "decimal")]
    pub chi_bound: BigUint,
    /// `(X^(500(2a+3)^2 / c) + X^(aω / c)) (8(a+1)ω)^ω` with `X = (a+1)(ω+1)`.
    #[serde(serialize_with = "decimal")]
    pub final_bound: BigUint,
}

/// `ceil(base^(exp / c))` for `c = num/den`, i.e. the `num`-th root of `base^(exp * den)` rounded up.
fn rational_power(base: &BigUint, exp: u64, c: Rational) -> BigUint {
    let total = exp * u64::from(c.den);
    let raised = base.pow(u32::try_from(total).expect("exponent fits in u32"));
    if c.num == 1 {
        return raised;
    }
    let root = raised.nth_root(c.num);
    if root.pow(c.num) == raised {
        root
    } else {
        root + 1u32
    }
}

/// `R(p, q) = ceil((p + q)^(1/c))`.
pub(crate) fn ramsey_formula(p: usize, q: usize, c: Rational) -> BigUint {
    rational_power(&BigUint::from(p + q), 1, c)
}

pub fn compute_bounds(
    a: usize,
    omega: usize,
    tau: usize,
    config: BoundsConfig,
) -> Result<BoundSheet, BoundsError> {
    if a < 2 {
        return Err(BoundsError::A(a));
    }
    if omega == 0 {
        return Err(BoundsError::Omega);
    }
    let c = config.c_const;
    if c.num == 0 || c.den == 0 {
        return Err(BoundsError::C {
            num: c.num,
            den: c.den,
        });
    }
    let big = |v: usize| BigUint::from(v);
    let pow = |base: usize, e: usize| big(base).pow(u32::try_from(e).expect("small exponent"));

    let f = a * (omega + 1) + 2;
    let s = ramsey_formula(omega, f, c);
    let pattern_order = (2 * a + 3) as u64;
    let d = match config.d_function {
        DFunction::Polynomial { coefficient } => {
            let e = u64::from(coefficient) * pattern_order * pattern_order;
            s.pow(u32::try_from(e).expect("exponent fits in u32"))
        }
        DFunction::Constant { value } => BigUint::from(value),
    };
    let colouring_term = big((1 + tau) * (a + 1) * omega);
    let z_product = &s * pow(f + 1, a * omega);
    let cutset_term = &z_product + big(omega * omega) * (pow(f, a + 1) + 2u32);
    let z_neighbour_bound = &z_product - BigUint::one();
    let c_neighbour_bound = big(omega) * pow(f, a + 1);
    let b = d
        .clone()
        .max(colouring_term.clone())
        .max(cutset_term.clone())
        + 1u32;

    // χ < 49b/16, so χ <= ceil(49b/16) - 1
    let scaled = &b * 49u32;
    let ceil = (&scaled + 15u32) / 16u32;
    let chi_bound = if ceil.is_zero() { ceil } else { ceil - 1u32 };

    let x = big((a + 1) * (omega + 1));
    let first = rational_power(&x, 500 * pattern_order * pattern_order, c);
    let second = rational_power(&x, (a * omega) as u64, c);
    let final_bound = (first + second) * pow(8 * (a + 1) * omega, omega);

    Ok(BoundSheet {
        a,
        omega,
        tau,
        config,
        f,
        s,
        d,
        colouring_term,
        cutset_term,
        z_neighbour_bound,
        c_neighbour_bound,
        b,
        chi_bound,
        final_bound,
    })
}
