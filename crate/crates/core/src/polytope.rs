//! The Fréchet class `F_d(p)` as a convex polytope: its linear constraint
//! system, the closed-form extremal points for `d = 3`, a brute-force vertex
//! enumeration used as an independent check, and convex decomposition of
//! members onto the extremal points.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{self, Matrix};
use crate::pmf::{atom_bit, BernoulliPmf, MAX_DIM, MIN_DIM};
use crate::rational::{int, ratio};
use crate::{simplex, Error, MarginParam, Rational, Result};

/// How an extremal point was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tag {
    /// Kernel-basis element of the polynomial map (other than the comonotone one).
    #[serde(rename = "kernel")]
    Kernel,
    /// Type-0 pmf of the fundamental polynomial `F+`.
    #[serde(rename = "type0-plus")]
    Type0Plus,
    /// Type-0 pmf of the fundamental polynomial `F-`.
    #[serde(rename = "type0-minus")]
    Type0Minus,
    /// Supported on the atoms with one or two ones.
    #[serde(rename = "supportX1X2")]
    SupportX1X2,
    /// The comonotone pmf. It is also a kernel-basis element.
    #[serde(rename = "upperFrechet")]
    UpperFrechet,
    /// Produced by vertex enumeration, no closed-form identity attached.
    #[serde(rename = "oracle")]
    Oracle,
}

impl Tag {
    /// Whether the vertex lies in the kernel of the polynomial map.
    pub fn is_kernel(self) -> bool {
        matches!(self, Tag::Kernel | Tag::UpperFrechet)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Kernel => "kernel",
            Tag::Type0Plus => "type0-plus",
            Tag::Type0Minus => "type0-minus",
            Tag::SupportX1X2 => "supportX1X2",
            Tag::UpperFrechet => "upperFrechet",
            Tag::Oracle => "oracle",
        }
    }

    pub fn parse(s: &str) -> Option<Tag> {
        [
            Tag::Kernel,
            Tag::Type0Plus,
            Tag::Type0Minus,
            Tag::SupportX1X2,
            Tag::UpperFrechet,
            Tag::Oracle,
        ]
        .into_iter()
        .find(|t| t.as_str() == s)
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One extremal point with its column name (`r1`, ... for the closed forms,
/// `v1`, ... for enumerated vertices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extremal {
    pub name: String,
    pub pmf: BernoulliPmf,
    pub tag: Tag,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalSet {
    pub p: MarginParam,
    pub d: usize,
    pub vertices: Vec<Extremal>,
}

impl ExtremalSet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Extremal> {
        self.vertices.iter().find(|v| v.name == name)
    }

    pub fn pmfs(&self) -> impl Iterator<Item = &BernoulliPmf> {
        self.vertices.iter().map(|v| &v.pmf)
    }

    fn value_set(&self) -> BTreeSet<&[Rational]> {
        self.pmfs().map(BernoulliPmf::values).collect()
    }

    /// Equality as sets of rational vectors; names and tags are ignored.
    pub fn set_equals(&self, other: &ExtremalSet) -> bool {
        self.d == other.d && self.value_set() == other.value_set()
    }

    /// Vectors present in `self` but not in `other`.
    pub fn missing_from<'a>(&'a self, other: &ExtremalSet) -> Vec<&'a Extremal> {
        let theirs = other.value_set();
        self.vertices.iter().filter(|v| !theirs.contains(v.pmf.values())).collect()
    }
}

/// `H f = 0`: row `k` has `1 - p` on atoms with `x_k = 1` and `-p` elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    d: usize,
    p: MarginParam,
    h: Matrix,
}

impl ConstraintSystem {
    pub fn new(d: usize, p: &MarginParam) -> Result<Self> {
        if !(MIN_DIM..=MAX_DIM).contains(&d) {
            return Err(Error::UnsupportedDimension(d));
        }
        let q = p.p();
        let hi = Rational::one() - q;
        let lo = -q.clone();
        let h = (0..d)
            .map(|k| {
                (0..1usize << d)
                    .map(|x| if atom_bit(x, k) { hi.clone() } else { lo.clone() })
                    .collect()
            })
            .collect();
        Ok(ConstraintSystem { d, p: p.clone(), h })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn param(&self) -> &MarginParam {
        &self.p
    }

    pub fn matrix(&self) -> &Matrix {
        &self.h
    }

    /// `H f` for an arbitrary vector of the right length.
    pub fn apply(&self, values: &[Rational]) -> Vec<Rational> {
        linalg::mat_vec(&self.h, values)
    }

    /// `H` stacked with the all-ones row, and the matching right-hand side.
    pub fn equality_system(&self) -> (Matrix, Vec<Rational>) {
        let mut a = self.h.clone();
        a.push(vec![Rational::one(); 1 << self.d]);
        let mut b = vec![Rational::zero(); self.d];
        b.push(Rational::one());
        (a, b)
    }

    pub fn is_member(&self, f: &BernoulliPmf) -> Result<bool> {
        if f.dim() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, got: f.dim() });
        }
        // BernoulliPmf already guarantees f >= 0 and sum f = 1
        Ok(self.apply(f.values()).iter().all(Zero::is_zero))
    }

    fn require_member(&self, f: &BernoulliPmf) -> Result<()> {
        if self.is_member(f)? {
            Ok(())
        } else {
            Err(Error::NotAMember(format!("margins {:?} differ from p = {}", show(&f.margins()), self.p)))
        }
    }

    /// True iff `f` is the only solution of the equality system supported
    /// on `supp(f)`, i.e. the constraint columns on the support are
    /// linearly independent.
    pub fn is_vertex(&self, f: &BernoulliPmf) -> Result<bool> {
        self.require_member(f)?;
        let support = f.support();
        let (a, _) = self.equality_system();
        Ok(linalg::rank(&linalg::select_columns(&a, &support)) == support.len())
    }
}

fn show(v: &[Rational]) -> Vec<String> {
    v.iter().map(crate::rational::to_canonical).collect()
}

pub fn build_constraints(d: usize, p: &MarginParam) -> Result<ConstraintSystem> {
    ConstraintSystem::new(d, p)
}

pub fn is_member(cs: &ConstraintSystem, f: &BernoulliPmf) -> Result<bool> {
    cs.is_member(f)
}

pub fn is_vertex(cs: &ConstraintSystem, f: &BernoulliPmf) -> Result<bool> {
    cs.is_vertex(f)
}

// Atom indices for d = 3.
const A000: usize = 0;
const A100: usize = 1;
const A010: usize = 2;
const A110: usize = 3;
const A001: usize = 4;
const A101: usize = 5;
const A011: usize = 6;
const A111: usize = 7;

fn column(entries: &[(usize, Rational)]) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); 8];
    for (atom, value) in entries {
        v[*atom] = value.clone();
    }
    v
}

/// Columns of the extremal table for `p <= 1/3`, as `(name, tag, values)`.
pub fn table_low(p: &Rational) -> Vec<(&'static str, Tag, Vec<Rational>)> {
    let one = Rational::one();
    let two_p = int(2) * p;
    let half_p = p * ratio(1, 2);
    vec![
        ("r1", Tag::Kernel, column(&[(A000, &one - &two_p), (A110, p.clone()), (A001, p.clone())])),
        ("r2", Tag::Kernel, column(&[(A000, &one - &two_p), (A010, p.clone()), (A101, p.clone())])),
        ("r3", Tag::Kernel, column(&[(A000, &one - &two_p), (A100, p.clone()), (A011, p.clone())])),
        (
            "r4",
            Tag::Type0Plus,
            column(&[
                (A000, &one - int(3) * &half_p),
                (A110, half_p.clone()),
                (A101, half_p.clone()),
                (A011, half_p.clone()),
            ]),
        ),
        ("r5", Tag::UpperFrechet, column(&[(A000, &one - p), (A111, p.clone())])),
        (
            "r6",
            Tag::Type0Minus,
            column(&[(A000, &one - int(3) * p), (A100, p.clone()), (A010, p.clone()), (A001, p.clone())]),
        ),
    ]
}

/// Columns of the extremal table for `1/3 < p <= 1/2`.
pub fn table_high(p: &Rational) -> Vec<(&'static str, Tag, Vec<Rational>)> {
    let one = Rational::one();
    let m = &one - int(2) * p; // 1 - 2p
    let e = int(3) * p - &one; // 3p - 1
    let half = ratio(1, 2);
    let mut cols: Vec<_> = table_low(p).into_iter().take(5).collect();
    cols.extend([
        (
            "r6",
            Tag::SupportX1X2,
            column(&[(A100, m.clone()), (A010, m.clone()), (A110, e.clone()), (A001, p.clone())]),
        ),
        (
            "r7",
            Tag::SupportX1X2,
            column(&[(A100, m.clone()), (A010, p.clone()), (A001, m.clone()), (A101, e.clone())]),
        ),
        (
            "r8",
            Tag::SupportX1X2,
            column(&[(A100, p.clone()), (A010, m.clone()), (A001, m.clone()), (A011, e.clone())]),
        ),
        (
            "r9",
            Tag::Type0Minus,
            column(&[
                (A100, (&one - p) * &half),
                (A010, (&one - p) * &half),
                (A001, (&one - p) * &half),
                (A111, &e * &half),
            ]),
        ),
    ]);
    cols
}

/// Tagged columns into an [`ExtremalSet`], merging repeated vectors into
/// their first occurrence.
pub fn extremal_set_from_columns(
    p: &MarginParam,
    columns: Vec<(String, Tag, Vec<Rational>)>,
) -> Result<ExtremalSet> {
    let mut seen = BTreeSet::new();
    let mut vertices = Vec::new();
    for (name, tag, values) in columns {
        if seen.insert(values.clone()) {
            vertices.push(Extremal { name, pmf: BernoulliPmf::new(3, values)?, tag });
        }
    }
    Ok(ExtremalSet { p: p.clone(), d: 3, vertices })
}

/// Raw closed-form columns for `p`: the low table for `p <= 1/3`, the high
/// table for `1/3 < p <= 1/2`, with repeated vectors merged into their
/// first occurrence.
pub fn closed_form_columns(p: &MarginParam) -> Vec<(String, Tag, Vec<Rational>)> {
    let q = p.p();
    let cols = if q <= &ratio(1, 3) { table_low(q) } else { table_high(q) };
    let mut seen = BTreeSet::new();
    cols.into_iter()
        .filter(|(_, _, v)| seen.insert(v.clone()))
        .map(|(n, t, v)| (n.to_string(), t, v))
        .collect()
}

/// Closed-form extremal points of `F_3(p)`. At `p = 1/2` the three
/// `supportX1X2` columns coincide with `r1, r2, r3` and are merged away.
pub fn closed_form_extremals(p: &MarginParam) -> ExtremalSet {
    extremal_set_from_columns(p, closed_form_columns(p))
        .expect("closed-form columns are pmfs for 0 < p <= 1/2")
}

/// Lexicographic k-subsets of `0..n`.
fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All vertices of `{f : H f = 0, f >= 0, sum f = 1}` by exhaustive search
/// over supports.
///
/// A feasible point is a vertex iff the equality columns on its support are
/// linearly independent, so every vertex has support size at most the rank
/// of the stacked system.
/// Each support of that size or smaller is solved exactly; unique,
/// nonnegative solutions are kept. The result is sorted by the
/// rational-vector order, which makes it independent of search order.
pub fn enumerate_vertices_oracle(cs: &ConstraintSystem) -> ExtremalSet {
    let (a, b) = cs.equality_system();
    let atoms = 1usize << cs.d;
    let max_support = linalg::rank(&a);
    let mut found: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for k in 1..=max_support {
        for_each_subset(atoms, k, |support| {
            let restricted = linalg::select_columns(&a, support);
            if let Some(x) = linalg::solve_unique(&restricted, &b) {
                if x.iter().all(|v| !v.is_negative()) {
                    let mut full = vec![Rational::zero(); atoms];
                    for (&atom, v) in support.iter().zip(x) {
                        full[atom] = v;
                    }
                    found.insert(full);
                }
            }
        });
    }
    let vertices = found
        .into_iter()
        .enumerate()
        .map(|(i, values)| Extremal {
            name: format!("v{}", i + 1),
            pmf: BernoulliPmf::new(cs.d, values).expect("oracle solutions are normalized"),
            tag: Tag::Oracle,
        })
        .collect();
    ExtremalSet { p: cs.p.clone(), d: cs.d, vertices }
}

/// Convex weights aligned with the vertices of an [`ExtremalSet`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexWeights {
    weights: Vec<Rational>,
}

impl ConvexWeights {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("no weights".into()));
        }
        if weights.iter().any(Signed::is_negative) {
            return Err(Error::InvalidWeights("negative weight".into()));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidWeights(format!("weights sum to {total}")));
        }
        Ok(ConvexWeights { weights })
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// `sum_i weights[i] * vertices[i]`.
    pub fn remix(&self, es: &ExtremalSet) -> Result<BernoulliPmf> {
        let parts: Vec<&BernoulliPmf> = es.pmfs().collect();
        BernoulliPmf::mixture(&parts, &self.weights)
    }
}

/// Writes a member `f` as a convex combination of the extremal points.
///
/// The weights are the basic feasible solution reached by phase-one simplex
/// with Bland's rule on `sum_i w_i r_i = f, sum_i w_i = 1, w >= 0`. The
/// polytope generally admits many decompositions; this picks one
/// deterministically.
pub fn decompose(es: &ExtremalSet, f: &BernoulliPmf) -> Result<ConvexWeights> {
    let cs = ConstraintSystem::new(es.d, &es.p)?;
    cs.require_member(f)?;
    let atoms = 1usize << es.d;
    let mut a: Matrix = (0..atoms)
        .map(|x| es.pmfs().map(|r| r.values()[x].clone()).collect())
        .collect();
    a.push(vec![Rational::one(); es.len()]);
    let mut b = f.values().to_vec();
    b.push(Rational::one());
    let weights = simplex::find_feasible(&a, &b)
        .ok_or_else(|| Error::NotAMember("not in the convex hull of the extremal set".into()))?;
    ConvexWeights::new(weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn param(s: i64, t: i64) -> MarginParam {
        MarginParam::new(s, t).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        ratio(n, d)
    }

    fn pmf(v: [(i64, i64); 8]) -> BernoulliPmf {
        BernoulliPmf::new(3, v.iter().map(|&(n, d)| q(n, d)).collect()).unwrap()
    }

    #[test]
    fn constraint_sign_pattern() {
        let cs = ConstraintSystem::new(3, &param(1, 2)).unwrap();
        let expected: Vec<Rational> =
            (0..8).map(|x| if x % 2 == 1 { q(1, 2) } else { q(-1, 2) }).collect();
        assert_eq!(cs.matrix()[0], expected);
    }

    #[test]
    fn constraints_on_table_and_point_mass() {
        let p = param(1, 4);
        let cs = ConstraintSystem::new(3, &p).unwrap();
        let es = closed_form_extremals(&p);
        assert_eq!(cs.apply(es.get("r4").unwrap().pmf.values()), vec![q(0, 1); 3]);
        let top = BernoulliPmf::point_mass(3, 7).unwrap();
        assert_eq!(cs.apply(top.values()), vec![q(3, 4); 3]);
        assert!(matches!(ConstraintSystem::new(5, &p), Err(Error::UnsupportedDimension(5))));
        assert!(matches!(ConstraintSystem::new(1, &p), Err(Error::UnsupportedDimension(1))));
    }

    #[test]
    fn closed_form_low() {
        let es = closed_form_extremals(&param(1, 4));
        assert_eq!(es.len(), 6);
        assert_eq!(
            es.get("r4").unwrap().pmf,
            pmf([(5, 8), (0, 1), (0, 1), (1, 8), (0, 1), (1, 8), (1, 8), (0, 1)])
        );
    }

    #[test]
    fn closed_form_high() {
        let es = closed_form_extremals(&param(2, 5));
        assert_eq!(es.len(), 9);
        assert_eq!(
            es.get("r6").unwrap().pmf,
            pmf([(0, 1), (1, 5), (1, 5), (1, 5), (2, 5), (0, 1), (0, 1), (0, 1)])
        );
        let tags: Vec<Tag> = es.vertices.iter().map(|v| v.tag).collect();
        assert_eq!(
            tags,
            vec![
                Tag::Kernel,
                Tag::Kernel,
                Tag::Kernel,
                Tag::Type0Plus,
                Tag::UpperFrechet,
                Tag::SupportX1X2,
                Tag::SupportX1X2,
                Tag::SupportX1X2,
                Tag::Type0Minus
            ]
        );
    }

    #[test]
    fn closed_form_half_merges() {
        let es = closed_form_extremals(&param(1, 2));
        let names: Vec<&str> = es.vertices.iter().map(|v| v.name.as_str()).collect();
        assert_eq!(names, ["r1", "r2", "r3", "r4", "r5", "r9"]);
    }

    #[test]
    fn one_third_uses_low_table_with_explicit_zero() {
        let es = closed_form_extremals(&param(1, 3));
        let r6 = &es.get("r6").unwrap().pmf;
        assert_eq!(r6.values()[0], q(0, 1));
        assert_eq!(r6.support(), vec![1, 2, 4]);
    }

    #[test]
    fn oracle_matches_tables() {
        for (s, t, n) in [(1, 4, 6), (2, 5, 9), (1, 2, 6), (1, 3, 6)] {
            let p = param(s, t);
            let oracle = enumerate_vertices_oracle(&ConstraintSystem::new(3, &p).unwrap());
            assert_eq!(oracle.len(), n, "p = {s}/{t}");
            assert!(oracle.set_equals(&closed_form_extremals(&p)), "p = {s}/{t}");
        }
    }

    #[test]
    fn oracle_two_dimensional() {
        let oracle = enumerate_vertices_oracle(&ConstraintSystem::new(2, &param(1, 2)).unwrap());
        let got: BTreeSet<Vec<Rational>> =
            oracle.pmfs().map(|f| f.values().to_vec()).collect();
        let expected: BTreeSet<Vec<Rational>> = [
            vec![q(1, 2), q(0, 1), q(0, 1), q(1, 2)],
            vec![q(0, 1), q(1, 2), q(1, 2), q(0, 1)],
        ]
        .into_iter()
        .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn membership() {
        let p = param(2, 5);
        let cs = ConstraintSystem::new(3, &p).unwrap();
        let es = closed_form_extremals(&p);
        assert!(cs.is_member(&es.get("r9").unwrap().pmf).unwrap());
        let low = param(1, 4);
        let cs_low = ConstraintSystem::new(3, &low).unwrap();
        assert!(!cs_low.is_member(&BernoulliPmf::point_mass(3, 0).unwrap()).unwrap());
        let es_low = closed_form_extremals(&low);
        let mid = BernoulliPmf::mixture(
            &[&es_low.get("r5").unwrap().pmf, &es_low.get("r6").unwrap().pmf],
            &[q(1, 2), q(1, 2)],
        )
        .unwrap();
        assert!(cs_low.is_member(&mid).unwrap());
        let flat = BernoulliPmf::uniform(2).unwrap();
        assert_eq!(
            cs.is_member(&flat),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        );
    }

    #[test]
    fn vertex_tests() {
        let p = param(2, 5);
        let cs = ConstraintSystem::new(3, &p).unwrap();
        let es = closed_form_extremals(&p);
        assert!(cs.is_vertex(&es.get("r1").unwrap().pmf).unwrap());
        let mid = BernoulliPmf::mixture(
            &[&es.get("r6").unwrap().pmf, &es.get("r7").unwrap().pmf],
            &[q(1, 2), q(1, 2)],
        )
        .unwrap();
        assert!(!cs.is_vertex(&mid).unwrap());

        let third = param(1, 3);
        let cs3 = ConstraintSystem::new(3, &third).unwrap();
        let r6 = pmf([(0, 1), (1, 3), (1, 3), (0, 1), (1, 3), (0, 1), (0, 1), (0, 1)]);
        assert!(cs3.is_vertex(&r6).unwrap());

        let outside = BernoulliPmf::point_mass(3, 0).unwrap();
        assert!(matches!(cs.is_vertex(&outside), Err(Error::NotAMember(_))));
    }

    #[test]
    fn decompose_mid_point() {
        let p = param(1, 4);
        let es = closed_form_extremals(&p);
        let f = BernoulliPmf::mixture(
            &[&es.get("r5").unwrap().pmf, &es.get("r6").unwrap().pmf],
            &[q(1, 2), q(1, 2)],
        )
        .unwrap();
        let w = decompose(&es, &f).unwrap();
        assert_eq!(w.remix(&es).unwrap(), f);
    }

    #[test]
    fn decompose_vertex_is_trivial() {
        let es = closed_form_extremals(&param(2, 5));
        let r4 = &es.get("r4").unwrap().pmf;
        let w = decompose(&es, r4).unwrap();
        let expected: Vec<Rational> =
            (0..9).map(|i| if i == 3 { q(1, 1) } else { q(0, 1) }).collect();
        assert_eq!(w.weights(), expected.as_slice());
    }

    #[test]
    fn decompose_rejects_non_member() {
        let es = closed_form_extremals(&param(2, 5));
        let u = BernoulliPmf::uniform(3).unwrap();
        assert!(matches!(decompose(&es, &u), Err(Error::NotAMember(_))));
    }

    #[test]
    fn convex_weights_validation() {
        assert!(ConvexWeights::new(vec![q(1, 2), q(1, 2)]).is_ok());
        assert!(ConvexWeights::new(vec![q(3, 2), q(-1, 2)]).is_err());
        assert!(ConvexWeights::new(vec![q(1, 3), q(1, 3)]).is_err());
        assert!(ConvexWeights::new(vec![]).is_err());
    }

    #[test]
    fn subsets_enumeration() {
        let mut all = Vec::new();
        for_each_subset(4, 2, |s| all.push(s.to_vec()));
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        let mut count = 0;
        for_each_subset(16, 5, |_| count += 1);
        assert_eq!(count, 4368);
        let mut none = 0;
        for_each_subset(3, 4, |_| none += 1);
        assert_eq!(none, 0);
    }
}
