//! The linear map from `F_3(p)` into `Q[x1, x2]`, its kernel, and the
//! fundamental polynomials `F+ = x1 x2 - x1 - x2 + 1` and `F- = -F+`.
//!
//! The map sends `f` to `m(x) . f` where the monomial row vector is
//! `m(x) = (1, x1, x2, x1 x2, c - x1 x2, c - x2, c - x1, c - 1)` in
//! reverse-lexicographic atom order and `c = 2 - 1/p`.

use std::fmt;

use num_traits::{One, Zero};

use crate::pmf::atom_bit;
use crate::polytope::ConstraintSystem;
use crate::rational::to_canonical;
use crate::{BernoulliPmf, Error, MarginParam, Rational, Result};

/// Square-free polynomial in `d - 1` variables. Coefficient `k` belongs to
/// the monomial whose exponent vector is the bits of `k`
/// (`0 -> 1`, `1 -> x1`, `2 -> x2`, `3 -> x1 x2`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultilinearPoly {
    d: usize,
    coeffs: Vec<Rational>,
}

impl MultilinearPoly {
    pub fn zero(d: usize) -> Self {
        MultilinearPoly { d, coeffs: vec![Rational::zero(); 1 << (d - 1)] }
    }

    pub fn from_coeffs(d: usize, coeffs: Vec<Rational>) -> Result<Self> {
        let expected = 1 << (d - 1);
        if coeffs.len() != expected {
            return Err(Error::WrongLength { expected, got: coeffs.len() });
        }
        Ok(MultilinearPoly { d, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^alpha`, `alpha` given as a bit mask.
    pub fn coeff(&self, alpha: usize) -> &Rational {
        &self.coeffs[alpha]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        MultilinearPoly { d: self.d, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d);
        MultilinearPoly {
            d: self.d,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.d - 1);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(alpha, a)| {
                (0..x.len()).filter(|&i| atom_bit(alpha, i)).fold(a.clone(), |acc, i| acc * &x[i])
            })
            .sum()
    }
}

impl fmt::Display for MultilinearPoly {
    /// `a00 + a10 x1 + a01 x2 + a11 x1x2` with canonical coefficients.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (alpha, a) in self.coeffs.iter().enumerate() {
            if alpha > 0 {
                f.write_str(" + ")?;
            }
            f.write_str(&to_canonical(a))?;
            let vars: String = (0..self.d - 1)
                .filter(|&i| atom_bit(alpha, i))
                .map(|i| format!("x{}", i + 1))
                .collect();
            if !vars.is_empty() {
                write!(f, " {vars}")?;
            }
        }
        Ok(())
    }
}

/// The entry of `m(x)` at atom `index`, as a polynomial in `x1, x2`.
pub fn monomial_entry(p: &MarginParam, index: usize) -> MultilinearPoly {
    let mut poly = MultilinearPoly::zero(3);
    let low = index & 0b11;
    if atom_bit(index, 2) {
        // x3 = 1: c minus the monomial of the complementary (x1, x2) pattern
        poly.coeffs[0] = p.c();
        poly.coeffs[low ^ 0b11] -= Rational::one();
    } else {
        poly.coeffs[low] = Rational::one();
    }
    poly
}

/// `P_f = m(x) . f` for a member `f` of `F_3(p)`.
pub fn apply_map(p: &MarginParam, f: &BernoulliPmf) -> Result<MultilinearPoly> {
    if f.dim() != 3 {
        return Err(Error::UnsupportedDimension(f.dim()));
    }
    let cs = ConstraintSystem::new(3, p)?;
    if !cs.is_member(f)? {
        return Err(Error::NotAMember(format!("margins differ from p = {p}")));
    }
    Ok(f.values()
        .iter()
        .enumerate()
        .fold(MultilinearPoly::zero(3), |acc, (k, v)| acc.add(&monomial_entry(p, k).scale(v))))
}

/// Kernel basis of the map: the comonotone pmf `(1 - p, 0, ..., 0, p)`
/// followed by, for each complementary pair `{x, 1 - x}` with `x` in
/// `1 .. 2^(d-1)`, the pmf with `1 - 2p` at the origin and `p` on `x` and
/// on `1 - x`. For `d = 3` this yields the columns `r5, r3, r2, r1`.
pub fn kernel_basis(d: usize, p: &MarginParam) -> Result<Vec<BernoulliPmf>> {
    let atoms = 1usize << d;
    let q = p.p();
    let mut out = Vec::with_capacity(atoms / 2);
    let mut upper = vec![Rational::zero(); atoms];
    upper[0] = Rational::one() - q;
    upper[atoms - 1] = q.clone();
    out.push(BernoulliPmf::new(d, upper)?);
    for x in 1..atoms / 2 {
        let mut v = vec![Rational::zero(); atoms];
        v[0] = Rational::one() - q * Rational::from_integer(2.into());
        v[x] = q.clone();
        v[atoms - 1 - x] = q.clone();
        out.push(BernoulliPmf::new(d, v)?);
    }
    Ok(out)
}

/// `(F+, F-)` with `F+ = 1 - x1 - x2 + x1 x2`.
pub fn fundamental_polynomials(d: usize) -> Result<(MultilinearPoly, MultilinearPoly)> {
    if d != 3 {
        return Err(Error::UnsupportedDimension(d));
    }
    let one = Rational::one();
    let plus = MultilinearPoly::from_coeffs(3, vec![one.clone(), -one.clone(), -one.clone(), one])?;
    let minus = plus.neg();
    Ok((plus, minus))
}

/// The scalar `gamma` with `poly = gamma * F+`, if one exists.
pub fn express_in_fundamentals(poly: &MultilinearPoly) -> Option<Rational> {
    let (plus, _) = fundamental_polynomials(poly.dim()).ok()?;
    let gamma = poly.coeff(0).clone();
    (plus.scale(&gamma) == *poly).then_some(gamma)
}

pub fn is_in_kernel(p: &MarginParam, f: &BernoulliPmf) -> Result<bool> {
    Ok(apply_map(p, f)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::closed_form_extremals;
    use crate::rational::{int, ratio};

    fn param(s: i64, t: i64) -> MarginParam {
        MarginParam::new(s, t).unwrap()
    }

    #[test]
    fn upper_frechet_maps_to_zero() {
        // (1 - p) * 1 + p * (c - 1) = 0 because p c = 2p - 1
        for (s, t) in [(1, 5), (1, 3), (2, 5), (1, 2)] {
            let p = param(s, t);
            let r5 = closed_form_extremals(&p).get("r5").unwrap().pmf.clone();
            assert!(apply_map(&p, &r5).unwrap().is_zero());
        }
    }

    #[test]
    fn r4_maps_to_positive_multiple_of_f_plus() {
        let p = param(1, 4);
        let r4 = closed_form_extremals(&p).get("r4").unwrap().pmf.clone();
        let poly = apply_map(&p, &r4).unwrap();
        assert!(!poly.is_zero());
        let gamma = express_in_fundamentals(&poly).unwrap();
        let (plus, _) = fundamental_polynomials(3).unwrap();
        assert_eq!(plus.scale(&gamma), poly);
        assert!(gamma > int(0));
    }

    #[test]
    fn kernel_vertex_maps_to_zero() {
        let p = param(2, 5);
        let r1 = closed_form_extremals(&p).get("r1").unwrap().pmf.clone();
        assert!(apply_map(&p, &r1).unwrap().is_zero());
    }

    #[test]
    fn map_errors() {
        let p = param(2, 5);
        assert!(matches!(
            apply_map(&p, &BernoulliPmf::uniform(3).unwrap()),
            Err(Error::NotAMember(_))
        ));
        assert!(matches!(
            apply_map(&p, &BernoulliPmf::uniform(2).unwrap()),
            Err(Error::UnsupportedDimension(2))
        ));
    }

    #[test]
    fn kernel_basis_matches_table_columns() {
        let p = param(2, 5);
        let es = closed_form_extremals(&p);
        let basis = kernel_basis(3, &p).unwrap();
        let names = ["r5", "r3", "r2", "r1"];
        assert_eq!(basis.len(), 4);
        for (b, n) in basis.iter().zip(names) {
            assert_eq!(b, &es.get(n).unwrap().pmf, "{n}");
        }
        let half = kernel_basis(3, &param(1, 2)).unwrap();
        let mut first = vec![int(0); 8];
        first[0] = ratio(1, 2);
        first[7] = ratio(1, 2);
        assert_eq!(half[0].values(), first.as_slice());
    }

    #[test]
    fn kernel_basis_two_dimensions() {
        let basis = kernel_basis(2, &param(1, 4)).unwrap();
        let values: Vec<Vec<Rational>> = basis.iter().map(|b| b.values().to_vec()).collect();
        assert_eq!(
            values,
            vec![
                vec![ratio(3, 4), int(0), int(0), ratio(1, 4)],
                vec![ratio(1, 2), ratio(1, 4), ratio(1, 4), int(0)],
            ]
        );
        for b in &basis {
            assert_eq!(b.margins(), vec![ratio(1, 4); 2]);
        }
    }

    #[test]
    fn fundamental_polynomial_coefficients() {
        let (plus, minus) = fundamental_polynomials(3).unwrap();
        assert_eq!(plus.coeffs(), &[int(1), int(-1), int(-1), int(1)]);
        assert!(plus.add(&minus).is_zero());
        assert_eq!(plus.eval(&[int(1), int(1)]), int(0));
        assert_eq!(plus.eval(&[int(0), int(0)]), int(1));
        assert!(fundamental_polynomials(4).is_err());
    }

    #[test]
    fn express_cases() {
        assert_eq!(express_in_fundamentals(&MultilinearPoly::zero(3)), Some(int(0)));
        let x1 = MultilinearPoly::from_coeffs(3, vec![int(0), int(1), int(0), int(0)]).unwrap();
        assert_eq!(express_in_fundamentals(&x1), None);
        let (_, minus) = fundamental_polynomials(3).unwrap();
        assert_eq!(express_in_fundamentals(&minus.scale(&ratio(1, 3))), Some(ratio(-1, 3)));
    }

    #[test]
    fn kernel_membership() {
        let p = param(2, 5);
        let es = closed_form_extremals(&p);
        let basis = kernel_basis(3, &p).unwrap();
        let refs: Vec<&BernoulliPmf> = basis.iter().collect();
        let mix = BernoulliPmf::mixture(&refs, &[ratio(1, 10), ratio(2, 10), ratio(3, 10), ratio(4, 10)])
            .unwrap();
        assert!(is_in_kernel(&p, &mix).unwrap());
        assert!(!is_in_kernel(&p, &es.get("r4").unwrap().pmf).unwrap());
        assert!(!is_in_kernel(&p, &es.get("r9").unwrap().pmf).unwrap());
    }

    #[test]
    fn pretty_print() {
        let (plus, _) = fundamental_polynomials(3).unwrap();
        assert_eq!(plus.to_string(), "1/1 + -1/1 x1 + -1/1 x2 + 1/1 x1x2");
    }
}
