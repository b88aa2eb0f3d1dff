//! Bernoulli pmfs over `{0,1}^d`, their margins, moments and the law of the
//! component sum.

use num_traits::{One, Signed, Zero};

use crate::rational::{int, ratio};
use crate::{Error, Rational, Result};

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 4;

/// Number of ones in atom `index`, i.e. the value of the sum at that atom.
pub fn atom_weight(index: usize) -> usize {
    index.count_ones() as usize
}

/// Coordinate `i` (0-based) of atom `index`.
pub fn atom_bit(index: usize, i: usize) -> bool {
    (index >> i) & 1 == 1
}

/// Binary string of an atom, first coordinate first (`"100"` is `x_1 = 1`).
pub fn atom_label(index: usize, d: usize) -> String {
    (0..d).map(|i| if atom_bit(index, i) { '1' } else { '0' }).collect()
}

fn check_dim(d: usize) -> Result<()> {
    if (MIN_DIM..=MAX_DIM).contains(&d) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(d))
    }
}

/// The common Bernoulli mean `p = s/t`, restricted to `0 < p <= 1/2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarginParam {
    p: Rational,
}

impl MarginParam {
    pub fn new(s: i64, t: i64) -> Result<Self> {
        if t <= 0 {
            return Err(Error::Parse {
                input: format!("{s}/{t}"),
                reason: "denominator must be positive".into(),
            });
        }
        Self::from_rational(ratio(s, t))
    }

    pub fn from_rational(p: Rational) -> Result<Self> {
        if !p.is_positive() {
            return Err(Error::OutOfRange(p));
        }
        if p > ratio(1, 2) {
            return Err(Error::AboveHalf(p));
        }
        Ok(MarginParam { p })
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    /// Numerator `s` of `p` in lowest terms.
    pub fn s(&self) -> num_bigint::BigInt {
        self.p.numer().clone()
    }

    /// Denominator `t` of `p` in lowest terms.
    pub fn t(&self) -> num_bigint::BigInt {
        self.p.denom().clone()
    }

    /// `c = (2s - t)/s = 2 - 1/p`, the constant of the monomial vector.
    pub fn c(&self) -> Rational {
        int(2) - self.p.recip()
    }
}

impl std::fmt::Display for MarginParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::rational::to_canonical(&self.p))
    }
}

/// A pmf on `{0,1}^d` stored in reverse-lexicographic atom order.
///
/// Construction only checks that the vector is a probability vector; the
/// margins may differ. Membership in a Fréchet class is checked separately.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BernoulliPmf {
    d: usize,
    values: Vec<Rational>,
}

impl BernoulliPmf {
    pub fn new(d: usize, values: Vec<Rational>) -> Result<Self> {
        check_dim(d)?;
        let expected = 1 << d;
        if values.len() != expected {
            return Err(Error::WrongLength { expected, got: values.len() });
        }
        if let Some((index, value)) = values.iter().enumerate().find(|(_, v)| v.is_negative()) {
            return Err(Error::NegativeMass { index, value: value.clone() });
        }
        let total: Rational = values.iter().sum();
        if !total.is_one() {
            return Err(Error::NotNormalized(total));
        }
        Ok(BernoulliPmf { d, values })
    }

    /// Unit mass on atom `index`.
    pub fn point_mass(d: usize, index: usize) -> Result<Self> {
        check_dim(d)?;
        let mut values = vec![Rational::zero(); 1 << d];
        *values.get_mut(index).ok_or(Error::WrongLength { expected: 1 << d, got: index })? =
            Rational::one();
        Ok(BernoulliPmf { d, values })
    }

    pub fn uniform(d: usize) -> Result<Self> {
        check_dim(d)?;
        let n = 1i64 << d;
        Ok(BernoulliPmf { d, values: vec![ratio(1, n); n as usize] })
    }

    /// Convex combination `sum_k weights[k] * parts[k]`.
    pub fn mixture(parts: &[&BernoulliPmf], weights: &[Rational]) -> Result<Self> {
        if parts.len() != weights.len() || parts.is_empty() {
            return Err(Error::InvalidWeights(format!(
                "{} weights for {} pmfs",
                weights.len(),
                parts.len()
            )));
        }
        let d = parts[0].d;
        if let Some(bad) = parts.iter().find(|f| f.d != d) {
            return Err(Error::DimensionMismatch { expected: d, got: bad.d });
        }
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::InvalidWeights("negative weight".into()));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidWeights(format!("weights sum to {total}")));
        }
        let mut values = vec![Rational::zero(); 1 << d];
        for (f, w) in parts.iter().zip(weights) {
            for (acc, v) in values.iter_mut().zip(&f.values) {
                *acc += w * v;
            }
        }
        Ok(BernoulliPmf { d, values })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    /// Atom indices with positive mass.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&k| !self.values[k].is_zero()).collect()
    }

    /// `P(X_i = 1)`.
    pub fn margin(&self, i: usize) -> Rational {
        assert!(i < self.d, "coordinate {i} out of range for d = {}", self.d);
        self.values
            .iter()
            .enumerate()
            .filter(|(k, _)| atom_bit(*k, i))
            .map(|(_, v)| v)
            .sum()
    }

    pub fn margins(&self) -> Vec<Rational> {
        (0..self.d).map(|i| self.margin(i)).collect()
    }

    /// The common margin, if all margins agree.
    pub fn common_margin(&self) -> Option<Rational> {
        let m = self.margins();
        m.iter().all(|x| x == &m[0]).then(|| m[0].clone())
    }

    /// `E[X_i X_j]`. With `i == j` this is the margin.
    pub fn second_moment(&self, i: usize, j: usize) -> Rational {
        assert!(i < self.d && j < self.d, "coordinate out of range");
        self.values
            .iter()
            .enumerate()
            .filter(|(k, _)| atom_bit(*k, i) && atom_bit(*k, j))
            .map(|(_, v)| v)
            .sum()
    }

    pub fn covariance(&self, i: usize, j: usize) -> Rational {
        self.second_moment(i, j) - self.margin(i) * self.margin(j)
    }

    /// `(mu_ij - p^2) / (p (1 - p))` for a pmf with common margin `p`.
    pub fn correlation(&self, i: usize, j: usize) -> Result<Rational> {
        let p = self.common_margin().ok_or(Error::UnequalMargins)?;
        if p.is_zero() || p.is_one() {
            return Err(Error::DegenerateMargin(p));
        }
        let var = &p * (Rational::one() - &p);
        Ok((self.second_moment(i, j) - &p * &p) / var)
    }

    /// Law of `X_1 + ... + X_d`.
    pub fn sum_distribution(&self) -> SumPmf {
        let mut masses = vec![Rational::zero(); self.d + 1];
        for (k, v) in self.values.iter().enumerate() {
            masses[atom_weight(k)] += v;
        }
        SumPmf { masses }
    }

    pub fn variance_of_sum(&self) -> Rational {
        self.sum_distribution().variance()
    }

    /// Variance of `sum_{j in J} X_j` where bit `j` of `coalition` marks `j in J`.
    pub fn partial_sum_variance(&self, coalition: usize) -> Rational {
        let mut first = Rational::zero();
        let mut second = Rational::zero();
        for (k, v) in self.values.iter().enumerate() {
            let s = int(atom_weight(k & coalition) as i64);
            first += v * &s;
            second += v * &s * &s;
        }
        second - &first * &first
    }

    /// Relabels coordinates: coordinate `i` of the result is coordinate
    /// `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.d);
        let mut values = vec![Rational::zero(); self.values.len()];
        for (k, v) in values.iter_mut().enumerate() {
            let src = (0..self.d).fold(0, |acc, i| acc | (usize::from(atom_bit(k, i)) << perm[i]));
            *v = self.values[src].clone();
        }
        BernoulliPmf { d: self.d, values }
    }
}

/// A pmf on `{0, ..., d}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SumPmf {
    masses: Vec<Rational>,
}

impl SumPmf {
    pub fn new(masses: Vec<Rational>) -> Result<Self> {
        if masses.is_empty() {
            return Err(Error::WrongLength { expected: 1, got: 0 });
        }
        if let Some((index, value)) = masses.iter().enumerate().find(|(_, v)| v.is_negative()) {
            return Err(Error::NegativeMass { index, value: value.clone() });
        }
        let total: Rational = masses.iter().sum();
        if !total.is_one() {
            return Err(Error::NotNormalized(total));
        }
        Ok(SumPmf { masses })
    }

    /// Degree `d` of the support `{0, ..., d}`.
    pub fn dim(&self) -> usize {
        self.masses.len() - 1
    }

    pub fn masses(&self) -> &[Rational] {
        &self.masses
    }

    pub fn mass(&self, k: usize) -> Rational {
        self.masses.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn mean(&self) -> Rational {
        self.masses.iter().enumerate().map(|(k, m)| int(k as i64) * m).sum()
    }

    pub fn variance(&self) -> Rational {
        let mean = self.mean();
        let second: Rational =
            self.masses.iter().enumerate().map(|(k, m)| int((k * k) as i64) * m).sum();
        second - &mean * &mean
    }

    /// Stop-loss transform `E[(S - m)^+]`.
    pub fn stop_loss(&self, threshold: usize) -> Rational {
        self.masses
            .iter()
            .enumerate()
            .filter(|(k, _)| *k > threshold)
            .map(|(k, m)| int((k - threshold) as i64) * m)
            .sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.masses.len()).filter(|&k| !self.masses[k].is_zero()).collect()
    }
}
