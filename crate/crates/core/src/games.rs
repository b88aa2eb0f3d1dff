//! Cooperative games on the coordinates of a Bernoulli vector, chiefly the
//! variance game `nu(J) = Var(sum_{j in J} X_j)` and its Shapley value.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::dependence::{class_param, is_sigma_countermonotone, sigma_cm_polytope};
use crate::polytope::ConvexWeights;
use crate::rational::{int, ratio};
use crate::{BernoulliPmf, Error, MarginParam, Rational, Result};

/// A game on players `0..n`; coalitions are bit masks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalitionGame {
    n: usize,
    values: Vec<Rational>,
}

impl CoalitionGame {
    pub fn new(n: usize, values: Vec<Rational>) -> Result<Self> {
        if n == 0 || n > 16 {
            return Err(Error::InvalidGame(format!("unsupported player count {n}")));
        }
        if values.len() != 1 << n {
            return Err(Error::InvalidGame(format!(
                "{} coalition values for {n} players",
                values.len()
            )));
        }
        if !values[0].is_zero() {
            return Err(Error::InvalidGame("value of the empty coalition must be 0".into()));
        }
        Ok(CoalitionGame { n, values })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> Rational) -> Result<Self> {
        Self::new(n, (0..1usize << n).map(f).collect())
    }

    pub fn players(&self) -> usize {
        self.n
    }

    pub fn value(&self, coalition: usize) -> &Rational {
        &self.values[coalition]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn grand_coalition(&self) -> &Rational {
        &self.values[(1 << self.n) - 1]
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: &Rational, other: &CoalitionGame, b: &Rational) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::InvalidGame("player counts differ".into()));
        }
        Self::new(self.n, self.values.iter().zip(&other.values).map(|(x, y)| a * x + b * y).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShapleyAllocation {
    #[serde(with = "crate::rational::serde_canonical_vec")]
    pub phis: Vec<Rational>,
}

impl ShapleyAllocation {
    pub fn total(&self) -> Rational {
        self.phis.iter().sum()
    }
}

/// `nu(J) = Var(S_J)` for every coalition `J`.
pub fn variance_game(f: &BernoulliPmf) -> Result<CoalitionGame> {
    class_param(f)?;
    CoalitionGame::from_fn(f.dim(), |j| f.partial_sum_variance(j))
}

fn factorial(n: usize) -> Rational {
    int((1..=n as i64).product())
}

/// Shapley value by the subset formula
/// `phi_i = sum_{J not containing i} |J|! (n - |J| - 1)! / n! * (nu(J + i) - nu(J))`.
pub fn shapley_formula(g: &CoalitionGame) -> ShapleyAllocation {
    let n = g.n;
    let total = factorial(n);
    let weights: Vec<Rational> = (0..n).map(|k| factorial(k) * factorial(n - k - 1) / &total).collect();
    let phis = (0..n)
        .map(|i| {
            let bit = 1usize << i;
            (0..1usize << n)
                .filter(|j| j & bit == 0)
                .map(|j| &weights[j.count_ones() as usize] * (g.value(j | bit) - g.value(j)))
                .sum()
        })
        .collect();
    ShapleyAllocation { phis }
}

/// Shapley value of the variance game through `phi_i = Cov(X_i, S)`.
pub fn shapley_covariance(f: &BernoulliPmf) -> Result<ShapleyAllocation> {
    class_param(f)?;
    let d = f.dim();
    let phis = (0..d).map(|i| (0..d).map(|j| f.covariance(i, j)).sum()).collect();
    Ok(ShapleyAllocation { phis })
}

/// `4p - 1 - 3p^2 - mu_kl` for a Σ-countermonotone `f`, `{i, k, l} = {0, 1, 2}`.
pub fn marginal_contribution_closed_form(f: &BernoulliPmf, i: usize) -> Result<Rational> {
    let p = class_param(f)?;
    if f.dim() != 3 {
        return Err(Error::UnsupportedDimension(f.dim()));
    }
    let q = p.p();
    if q <= &ratio(1, 3) {
        return Err(Error::OutOfRange(q.clone()));
    }
    if !is_sigma_countermonotone(f)? {
        return Err(Error::NotSigmaCm);
    }
    assert!(i < 3, "player {i} out of range");
    let others: Vec<usize> = (0..3).filter(|&k| k != i).collect();
    Ok(int(4) * q - Rational::one() - int(3) * q * q - f.second_moment(others[0], others[1]))
}

/// Mixture `sum_j w_j phi(nu^j)` over the generators `r6, r7, r8` of the
/// Σ-countermonotone polytope.
pub fn shapley_mixture(p: &MarginParam, weights: &ConvexWeights) -> Result<ShapleyAllocation> {
    if p.p() <= &ratio(1, 3) {
        return Err(Error::OutOfRange(p.p().clone()));
    }
    let polytope = sigma_cm_polytope(p);
    if weights.weights().len() != polytope.generators.len() {
        return Err(Error::InvalidWeights(format!(
            "expected {} weights, got {}",
            polytope.generators.len(),
            weights.weights().len()
        )));
    }
    let mut phis = vec![Rational::zero(); 3];
    for (g, w) in polytope.generators.iter().zip(weights.weights()) {
        let alloc = shapley_covariance(&g.pmf)?;
        for (acc, phi) in phis.iter_mut().zip(alloc.phis) {
            *acc += w * phi;
        }
    }
    Ok(ShapleyAllocation { phis })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Modularity {
    Modular,
    Supermodular,
    Submodular,
    Neither,
}

impl Modularity {
    pub fn as_str(self) -> &'static str {
        match self {
            Modularity::Modular => "modular",
            Modularity::Supermodular => "supermodular",
            Modularity::Submodular => "submodular",
            Modularity::Neither => "neither",
        }
    }
}

impl fmt::Display for Modularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Compares `nu(I | J) + nu(I & J)` with `nu(I) + nu(J)` over all pairs.
pub fn classify_modularity(g: &CoalitionGame) -> Modularity {
    let n = 1usize << g.n;
    let (mut super_ok, mut sub_ok) = (true, true);
    for i in 0..n {
        for j in i + 1..n {
            let lhs = g.value(i | j) + g.value(i & j);
            let rhs = g.value(i) + g.value(j);
            super_ok &= lhs >= rhs;
            sub_ok &= lhs <= rhs;
        }
    }
    match (super_ok, sub_ok) {
        (true, true) => Modularity::Modular,
        (true, false) => Modularity::Supermodular,
        (false, true) => Modularity::Submodular,
        (false, false) => Modularity::Neither,
    }
}

/// Variance game in which the players of `coalition` act as the single
/// player `0`; the remaining coordinates follow in increasing order.
pub fn fused_game(f: &BernoulliPmf, coalition: usize) -> Result<CoalitionGame> {
    class_param(f)?;
    let full = (1usize << f.dim()) - 1;
    if coalition == 0 || coalition & !full != 0 {
        return Err(Error::InvalidCoalition(format!("{coalition:#b} for {} players", f.dim())));
    }
    let blocks: Vec<usize> = std::iter::once(coalition)
        .chain((0..f.dim()).map(|j| 1usize << j).filter(|b| b & coalition == 0))
        .collect();
    CoalitionGame::from_fn(blocks.len(), |t| {
        let union = blocks.iter().enumerate().filter(|(k, _)| (t >> k) & 1 == 1).fold(0, |acc, (_, b)| acc | b);
        f.partial_sum_variance(union)
    })
}

/// The fused player's Shapley value equals the sum of its members' values.
pub fn shapley_fusion_check(f: &BernoulliPmf, coalition: usize) -> Result<bool> {
    let fused = shapley_formula(&fused_game(f, coalition)?);
    let original = shapley_formula(&variance_game(f)?);
    let members: Rational = (0..f.dim())
        .filter(|j| (coalition >> j) & 1 == 1)
        .map(|j| original.phis[j].clone())
        .sum();
    Ok(fused.phis[0] == members)
}
