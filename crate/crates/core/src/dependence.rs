//! Extremal dependence inside `F_3(p)`: pairwise correlation profiles of
//! the extremal points, countermonotonicity and Σ-countermonotonicity,
//! convex order of the component sum, and the polytope of Σ-countermonotone
//! pmfs with its exchangeable member.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::pmf::{atom_bit, atom_weight};
use crate::polytope::{closed_form_extremals, table_high, table_low, Extremal};
use crate::rational::{int, ratio, serde_canonical_vec};
use crate::{BernoulliPmf, Error, MarginParam, Rational, Result, SumPmf};

/// The class parameter of `f` inferred from its margins.
pub fn class_param(f: &BernoulliPmf) -> Result<MarginParam> {
    let p = f
        .common_margin()
        .ok_or_else(|| Error::NotAMember("margins are not all equal".into()))?;
    MarginParam::from_rational(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    /// All off-diagonal correlations are `>= 0`. Takes precedence when all vanish.
    #[serde(rename = "P-PC")]
    PairwisePositive,
    #[serde(rename = "P-NC")]
    PairwiseNegative,
    #[serde(rename = "mixed")]
    Mixed,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::PairwisePositive => "P-PC",
            Classification::PairwiseNegative => "P-NC",
            Classification::Mixed => "mixed",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Symmetric correlation matrix with unit diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrelationProfile {
    #[serde(serialize_with = "serialize_matrix")]
    pub pairwise: Vec<Vec<Rational>>,
    pub classification: Classification,
}

fn serialize_matrix<S: serde::Serializer>(
    m: &[Vec<Rational>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Row<'a>(#[serde(with = "serde_canonical_vec")] &'a [Rational]);
    s.collect_seq(m.iter().map(|r| Row(r)))
}

impl CorrelationProfile {
    pub fn from_matrix(pairwise: Vec<Vec<Rational>>) -> Self {
        let off: Vec<&Rational> = pairwise
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().filter(move |(j, _)| *j != i).map(|(_, v)| v))
            .collect();
        let classification = if off.iter().all(|v| !v.is_negative()) {
            Classification::PairwisePositive
        } else if off.iter().all(|v| !v.is_positive()) {
            Classification::PairwiseNegative
        } else {
            Classification::Mixed
        };
        CorrelationProfile { pairwise, classification }
    }

    /// Direct correlations of `f` computed from its atoms.
    #[allow(clippy::needless_range_loop)]
    pub fn of(f: &BernoulliPmf) -> Result<Self> {
        let d = f.dim();
        let mut m = vec![vec![Rational::one(); d]; d];
        for i in 0..d {
            for j in i + 1..d {
                let r = f.correlation(i, j)?;
                m[i][j] = r.clone();
                m[j][i] = r;
            }
        }
        Ok(Self::from_matrix(m))
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.pairwise[i][j]
    }
}

/// Finite bivariate pmf: `(a, b, mass)` triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointPmf {
    atoms: Vec<(Rational, Rational, Rational)>,
}

impl JointPmf {
    pub fn new(atoms: Vec<(Rational, Rational, Rational)>) -> Result<Self> {
        if let Some((index, (_, _, m))) = atoms.iter().enumerate().find(|(_, a)| a.2.is_negative()) {
            return Err(Error::NegativeMass { index, value: m.clone() });
        }
        let total: Rational = atoms.iter().map(|a| &a.2).sum();
        if !total.is_one() {
            return Err(Error::NotNormalized(total));
        }
        Ok(JointPmf { atoms })
    }

    /// Law of `(sum_{j in J} X_j, sum_{j not in J} X_j)` under `f`; bit `j`
    /// of `coalition` marks `j in J`.
    pub fn split_sums(f: &BernoulliPmf, coalition: usize) -> Self {
        let full = (1usize << f.dim()) - 1;
        let atoms = f
            .values()
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let a = int(atom_weight(k & coalition) as i64);
                let b = int(atom_weight(k & full & !coalition) as i64);
                (a, b, m.clone())
            })
            .collect();
        JointPmf { atoms }
    }
}

/// Countermonotonicity of a finite bivariate law: every two atoms with
/// positive mass are anti-ordered, `(a - a')(b - b') <= 0`.
pub fn is_countermonotone_pair(joint: &JointPmf) -> bool {
    let support: Vec<_> = joint.atoms.iter().filter(|a| a.2.is_positive()).collect();
    support.iter().enumerate().all(|(i, x)| {
        support[i + 1..].iter().all(|y| !((&x.0 - &y.0) * (&x.1 - &y.1)).is_positive())
    })
}

fn require_member_d3(f: &BernoulliPmf) -> Result<MarginParam> {
    if f.dim() != 3 {
        return Err(Error::UnsupportedDimension(f.dim()));
    }
    class_param(f)
}

/// Every split `(S_J, S_{N \ J})` is countermonotone.
pub fn is_sigma_countermonotone(f: &BernoulliPmf) -> Result<bool> {
    require_member_d3(f)?;
    let n = 1usize << f.dim();
    Ok((1..n - 1).all(|j| is_countermonotone_pair(&JointPmf::split_sums(f, j))))
}

/// `a <=_cx b` on `{0, ..., d}`: equal means and ordered stop-loss
/// transforms at every integer threshold.
pub fn convex_order_leq(a: &SumPmf, b: &SumPmf) -> bool {
    if a.mean() != b.mean() {
        return false;
    }
    let top = a.dim().max(b.dim());
    (0..=top).all(|m| a.stop_loss(m) <= b.stop_loss(m))
}

/// The convex-order minimum of laws on `{0, ..., d}` with mean `d p`: all
/// mass on `floor(d p)` and `floor(d p) + 1`. For `d = 3` this is `s_{1,2}`
/// when `1/3 < p <= 1/2`, the `{0,1}` law when `p < 1/3` and the point mass
/// at `1` when `p = 1/3`.
pub fn minimal_sum_law(d: usize, p: &MarginParam) -> SumPmf {
    let mean = int(d as i64) * p.p();
    let k = mean.floor();
    let upper = &mean - &k;
    let k: usize = k.to_integer().try_into().expect("small mean");
    let mut masses = vec![Rational::zero(); d + 1];
    masses[k] = Rational::one() - &upper;
    if k < d {
        masses[k + 1] = upper;
    }
    SumPmf::new(masses).expect("valid two-point law")
}

pub fn is_sigma_cx_smallest(f: &BernoulliPmf) -> Result<bool> {
    let p = require_member_d3(f)?;
    Ok(f.sum_distribution() == minimal_sum_law(3, &p))
}

/// `mu2+ = sum_{i < j} E[X_i X_j]`.
pub fn mu2_plus(f: &BernoulliPmf) -> Rational {
    let d = f.dim();
    (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).map(|(i, j)| f.second_moment(i, j)).sum()
}

/// Generators of the polytope of Σ-countermonotone pmfs in `F_3(p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaCmPolytope {
    pub p: MarginParam,
    pub generators: Vec<Extremal>,
}

impl SigmaCmPolytope {
    pub fn mix(&self, weights: &[Rational]) -> Result<BernoulliPmf> {
        let parts: Vec<&BernoulliPmf> = self.generators.iter().map(|g| &g.pmf).collect();
        BernoulliPmf::mixture(&parts, weights)
    }
}

/// For `p <= 1/3` the single generator is the low-table `r6` (the lower
/// Fréchet bound for `p < 1/3`, a joint mix at `p = 1/3`). For
/// `1/3 < p <= 1/2` the generators are the high-table `r6, r7, r8`; at
/// `p = 1/2` these are numerically `r1, r2, r3`.
pub fn sigma_cm_polytope(p: &MarginParam) -> SigmaCmPolytope {
    let q = p.p();
    let pick: Vec<_> = if q <= &ratio(1, 3) {
        table_low(q).into_iter().filter(|c| c.0 == "r6").collect()
    } else {
        table_high(q).into_iter().filter(|c| matches!(c.0, "r6" | "r7" | "r8")).collect()
    };
    let generators = pick
        .into_iter()
        .map(|(name, tag, values)| Extremal {
            name: name.to_string(),
            pmf: BernoulliPmf::new(3, values).expect("table columns are pmfs"),
            tag,
        })
        .collect();
    SigmaCmPolytope { p: p.clone(), generators }
}

/// `(r6 + r7 + r8) / 3`.
pub fn exchangeable_member(p: &MarginParam) -> Result<BernoulliPmf> {
    if p.p() <= &ratio(1, 3) {
        return Err(Error::OutOfRange(p.p().clone()));
    }
    let third = ratio(1, 3);
    sigma_cm_polytope(p).mix(&[third.clone(), third.clone(), third])
}

/// Closed-form correlation matrix of a closed-form extremal point, keyed by
/// its column name in the table that applies at `p`.
///
/// * kernel columns: `1` within the block of the nonzero atom other than
///   the origin, `-p/(1-p)` across;
/// * `r4`: `(1-2p)/(2(1-p))` everywhere;
/// * low-table `r6`: `-p/(1-p)` everywhere (second moments vanish);
/// * high-table `r6, r7, r8`: `(3p-1-p^2)/(p(1-p))` on the pair carrying
///   `3p - 1`, `-p/(1-p)` on the other two;
/// * `r9`: `(3p-1-2p^2)/(2p(1-p))` everywhere.
#[allow(clippy::needless_range_loop)]
pub fn closed_form_correlations(p: &MarginParam, name: &str) -> Option<CorrelationProfile> {
    let q = p.p();
    let one = Rational::one();
    let var = q * (&one - q);
    let across = -(q / (&one - q));
    let high = q > &ratio(1, 3);
    let constant = |r: Rational| {
        let mut m = vec![vec![r; 3]; 3];
        (0..3).for_each(|i| m[i][i] = one.clone());
        m
    };
    let block = |pair_mask: usize, within: Rational| {
        let mut m = constant(across.clone());
        for i in 0..3 {
            for j in 0..3 {
                if i != j && atom_bit(pair_mask, i) && atom_bit(pair_mask, j) {
                    m[i][j] = within.clone();
                }
            }
        }
        m
    };
    let x1x2 = (int(3) * q - &one - q * q) / &var;
    let m = match (name, high) {
        ("r1", _) => block(0b011, one.clone()),
        ("r2", _) => block(0b101, one.clone()),
        ("r3", _) => block(0b110, one.clone()),
        ("r4", _) => constant((&one - int(2) * q) / (int(2) * (&one - q))),
        ("r5", _) => constant(one.clone()),
        ("r6", false) => constant(across.clone()),
        ("r6", true) => block(0b011, x1x2),
        ("r7", true) => block(0b101, x1x2),
        ("r8", true) => block(0b110, x1x2),
        ("r9", true) => constant((int(3) * q - &one - int(2) * q * q) / (int(2) * &var)),
        _ => return None,
    };
    Some(CorrelationProfile::from_matrix(m))
}

/// Direct correlation profile of every closed-form extremal point.
pub fn classify_extremal_correlations(p: &MarginParam) -> Vec<(Extremal, CorrelationProfile)> {
    closed_form_extremals(p)
        .vertices
        .into_iter()
        .map(|v| {
            let profile = CorrelationProfile::of(&v.pmf).expect("0 < p < 1 on class members");
            (v, profile)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::closed_form_extremals;

    fn param(s: i64, t: i64) -> MarginParam {
        MarginParam::new(s, t).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        ratio(n, d)
    }

    fn vertex(p: &MarginParam, name: &str) -> BernoulliPmf {
        closed_form_extremals(p).get(name).unwrap().pmf.clone()
    }

    // Brute-force covariance over the atoms, independent of BernoulliPmf's moment code.
    fn direct_rho(f: &BernoulliPmf, i: usize, j: usize) -> Rational {
        let (mut ei, mut ej, mut eij) = (q(0, 1), q(0, 1), q(0, 1));
        for (k, m) in f.values().iter().enumerate() {
            let xi = int(((k >> i) & 1) as i64);
            let xj = int(((k >> j) & 1) as i64);
            ei += m * &xi;
            ej += m * &xj;
            eij += m * &xi * &xj;
        }
        let cov = &eij - &ei * &ej;
        cov / (&ei * (q(1, 1) - &ei))
    }

    #[test]
    fn countermonotone_pairs() {
        let p = param(2, 5);
        let r6 = vertex(&p, "r6");
        assert!(is_countermonotone_pair(&JointPmf::split_sums(&r6, 0b001)));
        let r5 = vertex(&p, "r5");
        assert!(!is_countermonotone_pair(&JointPmf::split_sums(&r5, 0b001)));
        let single = JointPmf::new(vec![(q(1, 1), q(2, 1), q(1, 1))]).unwrap();
        assert!(is_countermonotone_pair(&single));
        assert!(JointPmf::new(vec![(q(1, 1), q(2, 1), q(1, 2))]).is_err());
    }

    #[test]
    fn sigma_countermonotone() {
        let p = param(2, 5);
        assert!(is_sigma_countermonotone(&vertex(&p, "r7")).unwrap());
        assert!(!is_sigma_countermonotone(&vertex(&p, "r4")).unwrap());
        assert!(is_sigma_countermonotone(&vertex(&param(1, 4), "r6")).unwrap());
        let skew = BernoulliPmf::new(
            3,
            vec![q(1, 2), q(1, 4), q(0, 1), q(0, 1), q(1, 4), q(0, 1), q(0, 1), q(0, 1)],
        )
        .unwrap();
        assert!(matches!(is_sigma_countermonotone(&skew), Err(Error::NotAMember(_))));
    }

    #[test]
    fn convex_order() {
        let p = param(2, 5);
        let s12 = minimal_sum_law(3, &p);
        assert_eq!(s12.masses(), &[q(0, 1), q(4, 5), q(1, 5), q(0, 1)]);
        let upper = vertex(&p, "r5").sum_distribution();
        // stop-loss at 1: 1/5 vs 4/5
        assert_eq!(s12.stop_loss(1), q(1, 5));
        assert_eq!(upper.stop_loss(1), q(4, 5));
        assert!(convex_order_leq(&s12, &upper));
        assert!(!convex_order_leq(&upper, &s12));
        assert!(convex_order_leq(&upper, &upper));
        let other_mean = minimal_sum_law(3, &param(1, 4));
        assert!(!convex_order_leq(&other_mean, &upper));
    }

    #[test]
    fn minimal_laws_by_regime() {
        assert_eq!(minimal_sum_law(3, &param(1, 4)).masses(), &[q(1, 4), q(3, 4), q(0, 1), q(0, 1)]);
        assert_eq!(minimal_sum_law(3, &param(1, 3)).masses(), &[q(0, 1), q(1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(minimal_sum_law(3, &param(1, 2)).masses(), &[q(0, 1), q(1, 2), q(1, 2), q(0, 1)]);
    }

    #[test]
    fn sigma_cx_smallest() {
        let p = param(2, 5);
        assert!(is_sigma_cx_smallest(&exchangeable_member(&p).unwrap()).unwrap());
        let r9 = vertex(&p, "r9");
        assert_eq!(r9.sum_distribution().support(), vec![1, 3]);
        assert!(!is_sigma_cx_smallest(&r9).unwrap());
        let third = param(1, 3);
        let joint_mix = vertex(&third, "r6");
        assert_eq!(joint_mix.sum_distribution().support(), vec![1]);
        assert!(is_sigma_cx_smallest(&joint_mix).unwrap());
    }

    #[test]
    fn sigma_cm_generators() {
        let low = sigma_cm_polytope(&param(1, 4));
        assert_eq!(low.generators.len(), 1);
        assert_eq!(
            low.generators[0].pmf.values(),
            &[q(1, 4), q(1, 4), q(1, 4), q(0, 1), q(1, 4), q(0, 1), q(0, 1), q(0, 1)]
        );
        let mid = sigma_cm_polytope(&param(2, 5));
        let names: Vec<&str> = mid.generators.iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["r6", "r7", "r8"]);
        let half = sigma_cm_polytope(&param(1, 2));
        let es = closed_form_extremals(&param(1, 2));
        for (g, n) in half.generators.iter().zip(["r1", "r2", "r3"]) {
            assert_eq!(g.pmf, es.get(n).unwrap().pmf);
        }
        assert_eq!(
            half.generators[0].pmf.values(),
            &[q(0, 1), q(0, 1), q(0, 1), q(1, 2), q(1, 2), q(0, 1), q(0, 1), q(0, 1)]
        );
        assert_eq!(sigma_cm_polytope(&param(1, 3)).generators.len(), 1);
    }

    #[test]
    fn mu2_plus_values() {
        let p = param(2, 5);
        for g in &sigma_cm_polytope(&p).generators {
            assert_eq!(mu2_plus(&g.pmf), q(1, 5));
        }
        assert_eq!(mu2_plus(&vertex(&param(1, 4), "r6")), q(0, 1));
        assert_eq!(mu2_plus(&vertex(&p, "r5")), q(6, 5));
    }

    #[test]
    fn exchangeable() {
        let p = param(2, 5);
        let fe = exchangeable_member(&p).unwrap();
        for perm in [[1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]] {
            assert_eq!(fe.permute(&perm), fe);
        }
        // independent covariance oracle: mu_ij = (3p - 1)/3 = 1/15,
        // rho = (1/15 - 4/25) / (6/25) = -7/18
        let expected = direct_rho(&fe, 0, 1);
        assert_eq!(expected, q(-7, 18));
        let profile = CorrelationProfile::of(&fe).unwrap();
        assert_eq!(profile.get(0, 1), &expected);
        assert_eq!(profile.classification, Classification::PairwiseNegative);

        let half = exchangeable_member(&param(1, 2)).unwrap();
        assert_eq!(direct_rho(&half, 1, 2), q(-1, 3));
        assert_eq!(half.correlation(1, 2).unwrap(), q(-1, 3));

        assert!(matches!(exchangeable_member(&param(1, 3)), Err(Error::OutOfRange(_))));
        assert!(matches!(exchangeable_member(&param(1, 4)), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn extremal_correlation_examples() {
        let quarter = param(1, 4);
        let profiles = classify_extremal_correlations(&quarter);
        let r1 = &profiles.iter().find(|(v, _)| v.name == "r1").unwrap().1;
        assert_eq!(r1.get(0, 1), &q(1, 1));
        assert_eq!(r1.get(0, 2), &q(-1, 3));
        assert_eq!(r1.get(1, 2), &q(-1, 3));

        let p = param(2, 5);
        let r6 = vertex(&p, "r6");
        assert_eq!(direct_rho(&r6, 0, 1), q(1, 6));
        assert_eq!(direct_rho(&r6, 0, 2), q(-2, 3));
        assert_eq!(closed_form_correlations(&p, "r6").unwrap(), CorrelationProfile::of(&r6).unwrap());

        let half = param(1, 2);
        let r4 = vertex(&half, "r4");
        assert_eq!(direct_rho(&r4, 0, 1), q(0, 1));
        assert_eq!(CorrelationProfile::of(&r4).unwrap().classification, Classification::PairwisePositive);
    }

    #[test]
    fn closed_forms_match_direct_on_all_vertices() {
        for (s, t) in [(1, 5), (1, 4), (1, 3), (2, 5), (9, 20), (1, 2)] {
            let p = param(s, t);
            for (v, profile) in classify_extremal_correlations(&p) {
                let closed = closed_form_correlations(&p, &v.name).unwrap();
                assert_eq!(closed, profile, "p = {s}/{t}, {}", v.name);
                for i in 0..3 {
                    for j in 0..3 {
                        if i != j {
                            assert_eq!(&direct_rho(&v.pmf, i, j), profile.get(i, j));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn type0_sign_labels() {
        let p = param(2, 5);
        let labels: Vec<(String, Classification)> = classify_extremal_correlations(&p)
            .into_iter()
            .map(|(v, c)| (v.name, c.classification))
            .collect();
        let get = |n: &str| labels.iter().find(|(m, _)| m == n).unwrap().1;
        assert_eq!(get("r4"), Classification::PairwisePositive);
        assert_eq!(get("r9"), Classification::PairwiseNegative);
        assert_eq!(get("r6"), Classification::Mixed);
        assert_eq!(get("r1"), Classification::Mixed);
        let low = classify_extremal_correlations(&param(1, 4));
        assert_eq!(
            low.iter().find(|(v, _)| v.name == "r6").unwrap().1.classification,
            Classification::PairwiseNegative
        );
    }
}
