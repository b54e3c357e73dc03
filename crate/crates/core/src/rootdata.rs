//! Type `A_{n-1}` roots, Belavin–Drinfeld triples, the order `≺_T` and `h_T`.
//!
//! Roots are written `(i, j)` with `1 ≤ i < j ≤ n`, meaning `ε_i − ε_j`;
//! the simple root `α_k` is `(k, k+1)`. Simple-root labels are 1-based.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{int, QMatrix, QVector, Rational};

/// Positive root `ε_i − ε_j`, `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn new(i: usize, j: usize) -> Self {
        assert!(i < j, "positive roots need i < j");
        Root { i, j }
    }

    pub fn simple(k: usize) -> Self {
        Root { i: k, j: k + 1 }
    }

    /// Simple roots `α_i, …, α_{j-1}` whose sum is this root.
    pub fn simple_support(&self) -> std::ops::Range<usize> {
        self.i..self.j
    }

    /// `α(h)` for a diagonal `h` given by its entries.
    pub fn eval(&self, diag: &[Rational]) -> Rational {
        &diag[self.i - 1] - &diag[self.j - 1]
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.simple_support().map(|k| format!("a{k}")).collect();
        write!(f, "{}", labels.join("+"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootSystemA {
    pub n: usize,
}

impl RootSystemA {
    pub fn new(n: usize) -> Self {
        RootSystemA { n }
    }

    pub fn rank(&self) -> usize {
        self.n.saturating_sub(1)
    }

    pub fn positive_roots(&self) -> Vec<Root> {
        (1..=self.n)
            .flat_map(|i| (i + 1..=self.n).map(move |j| Root { i, j }))
            .collect()
    }

    pub fn simple_roots(&self) -> Vec<Root> {
        (1..self.n).map(Root::simple).collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TripleViolation {
    #[error("simple root index {0} is out of range")]
    OutOfRange(usize),
    #[error("gamma is not injective")]
    NotInjective,
    #[error("gamma does not preserve the pairing of a{0} and a{1}")]
    NotIsometry(usize, usize),
    #[error("orbit of a{0} never leaves Gamma1")]
    NotNilpotent(usize),
}

#[derive(Debug, Error)]
pub enum TripleFormatError {
    #[error("malformed triple JSON: {0}")]
    Json(String),
}

/// A Belavin–Drinfeld triple for `SL_n`, stored as the map `γ: Γ1 → Γ2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BdTriple {
    pub n: usize,
    pub gamma: BTreeMap<usize, usize>,
}

impl BdTriple {
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Self {
        BdTriple {
            n,
            gamma: pairs.iter().copied().collect(),
        }
    }

    pub fn trivial(n: usize) -> Self {
        Self::new(n, &[])
    }

    /// Cremmer–Gervais triple `α_{k+1} ↦ α_k`.
    pub fn cremmer_gervais(n: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (2..n).map(|k| (k, k - 1)).collect();
        Self::new(n, &pairs)
    }

    pub fn gamma1(&self) -> BTreeSet<usize> {
        self.gamma.keys().copied().collect()
    }

    pub fn gamma2(&self) -> BTreeSet<usize> {
        self.gamma.values().copied().collect()
    }

    pub fn k_t(&self) -> usize {
        self.n - 1 - self.gamma.len()
    }

    pub fn validate(&self) -> Result<(), TripleViolation> {
        for (&a, &b) in &self.gamma {
            for k in [a, b] {
                if k == 0 || k >= self.n {
                    return Err(TripleViolation::OutOfRange(k));
                }
            }
        }
        if self.gamma2().len() != self.gamma.len() {
            return Err(TripleViolation::NotInjective);
        }
        let pairing = |a: usize, b: usize| -> i32 {
            match a.abs_diff(b) {
                0 => 2,
                1 => -1,
                _ => 0,
            }
        };
        for (&a, &ga) in &self.gamma {
            for (&b, &gb) in &self.gamma {
                if a < b && pairing(a, b) != pairing(ga, gb) {
                    return Err(TripleViolation::NotIsometry(a, b));
                }
            }
        }
        for &start in self.gamma.keys() {
            let mut current = start;
            let mut steps = 0;
            while let Some(&next) = self.gamma.get(&current) {
                current = next;
                steps += 1;
                if steps > self.gamma.len() {
                    return Err(TripleViolation::NotNilpotent(start));
                }
            }
        }
        Ok(())
    }

    /// `γ` extended additively; `None` unless every simple summand lies in `Γ1`.
    pub fn apply(&self, root: Root) -> Option<Root> {
        let images: Vec<usize> = root
            .simple_support()
            .map(|k| self.gamma.get(&k).copied())
            .collect::<Option<_>>()?;
        let lo = *images.iter().min()?;
        let hi = *images.iter().max()?;
        // Adjacency is preserved, so the image of a chain is again a chain.
        debug_assert_eq!(hi - lo + 1, images.len());
        Some(Root { i: lo, j: hi + 1 })
    }

    /// Transposes `Γ1` and `Γ2` and reverses `γ`.
    pub fn transposed(&self) -> Self {
        BdTriple {
            n: self.n,
            gamma: self.gamma.iter().map(|(&a, &b)| (b, a)).collect(),
        }
    }

    /// Applies the diagram automorphism `α_k ↦ α_{n-k}` to both sides.
    pub fn flipped(&self) -> Self {
        let f = |k: usize| self.n - k;
        BdTriple {
            n: self.n,
            gamma: self.gamma.iter().map(|(&a, &b)| (f(a), f(b))).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let gamma: BTreeMap<String, String> = self
            .gamma
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        serde_json::to_value(TripleJson { n: self.n, gamma }).expect("triple JSON is serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, TripleFormatError> {
        let raw: TripleJsonIn =
            serde_json::from_value(value.clone()).map_err(|e| TripleFormatError::Json(e.to_string()))?;
        let mut gamma = BTreeMap::new();
        for (k, v) in raw.gamma {
            let a: usize = k.trim().parse().map_err(|_| TripleFormatError::Json(format!("bad key {k:?}")))?;
            let b = match v {
                IndexValue::Text(s) => s
                    .trim()
                    .parse()
                    .map_err(|_| TripleFormatError::Json(format!("bad value {s:?}")))?,
                IndexValue::Number(b) => b,
            };
            if gamma.insert(a, b).is_some() {
                return Err(TripleFormatError::Json(format!("repeated key {a}")));
            }
        }
        Ok(BdTriple { n: raw.n, gamma })
    }
}

#[derive(Serialize)]
struct TripleJson {
    n: usize,
    gamma: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct TripleJsonIn {
    n: usize,
    #[serde(default)]
    gamma: BTreeMap<String, IndexValue>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IndexValue {
    Text(String),
    Number(usize),
}

/// All pairs `(α, γ^j(α))`, `j ≥ 1`, sorted.
pub fn bd_partial_order(t: &BdTriple) -> Vec<(Root, Root)> {
    let mut pairs = BTreeSet::new();
    for alpha in RootSystemA::new(t.n).positive_roots() {
        let mut current = alpha;
        while let Some(next) = t.apply(current) {
            pairs.insert((alpha, next));
            current = next;
        }
    }
    pairs.into_iter().collect()
}

/// Subspace of traceless diagonal matrices, stored by diagonal entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanSubspace {
    pub n: usize,
    pub basis: Vec<QVector>,
}

impl CartanSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn full(n: usize) -> Self {
        h_t_and_kt(&BdTriple::trivial(n)).0
    }

    /// True iff both subspaces have the same span.
    pub fn same_span(&self, other: &CartanSubspace) -> bool {
        if self.n != other.n || self.dim() != other.dim() {
            return false;
        }
        if self.basis.is_empty() {
            return true;
        }
        let stacked: Vec<QVector> = self.basis.iter().chain(&other.basis).cloned().collect();
        QMatrix::from_rows(stacked).expect("rectangular").rank() == self.dim()
    }
}

/// Solves `α(h) = β(h)` for all `α ≺_T β` inside the traceless diagonals.
/// The basis is the reduced echelon form of the solution space, scaled to
/// primitive integer vectors.
pub fn h_t_and_kt(t: &BdTriple) -> (CartanSubspace, usize) {
    let n = t.n;
    let mut rows: Vec<QVector> = vec![vec![int(1); n]];
    for (alpha, beta) in bd_partial_order(t) {
        let mut row = vec![Rational::zero(); n];
        row[alpha.i - 1] += int(1);
        row[alpha.j - 1] -= int(1);
        row[beta.i - 1] -= int(1);
        row[beta.j - 1] += int(1);
        rows.push(row);
    }
    let constraints = QMatrix::from_rows(rows).expect("rectangular");
    let kernel = constraints.kernel();
    let basis = if kernel.is_empty() {
        Vec::new()
    } else {
        let (rref, _) = QMatrix::from_rows(kernel).expect("rectangular").row_reduce();
        rref.to_rows().into_iter().map(primitive_integer).collect()
    };
    let k_t = basis.len();
    assert_eq!(k_t, t.k_t(), "dim h_T must equal n-1-|Gamma1|");
    (CartanSubspace { n, basis }, k_t)
}

/// Scales a nonzero rational vector to a primitive integer vector with a
/// positive leading entry.
pub fn primitive_integer(v: QVector) -> QVector {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return v;
    }
    let lead_negative = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    ints.into_iter()
        .map(|x| {
            let q = Rational::from_integer(x / &gcd);
            if lead_negative {
                -q
            } else {
                q
            }
        })
        .collect()
}

/// Every valid triple for `SL_n`.
pub fn all_bd_triples(n: usize) -> Vec<BdTriple> {
    let simple: Vec<usize> = (1..n).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << simple.len()) {
        let domain: Vec<usize> = simple
            .iter()
            .enumerate()
            .filter(|(b, _)| mask & (1 << b) != 0)
            .map(|(_, &k)| k)
            .collect();
        let mut assignment = Vec::new();
        extend_maps(n, &domain, &simple, &mut assignment, &mut out);
    }
    out
}

fn extend_maps(
    n: usize,
    domain: &[usize],
    codomain: &[usize],
    partial: &mut Vec<(usize, usize)>,
    out: &mut Vec<BdTriple>,
) {
    if partial.len() == domain.len() {
        let t = BdTriple::new(n, partial);
        if t.validate().is_ok() {
            out.push(t);
        }
        return;
    }
    let a = domain[partial.len()];
    for &b in codomain {
        if partial.iter().any(|&(_, used)| used == b) {
            continue;
        }
        partial.push((a, b));
        extend_maps(n, domain, codomain, partial, out);
        partial.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(i: usize, j: usize) -> Root {
        Root::new(i, j)
    }

    fn diag(v: &[i64]) -> QVector {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn root_counts() {
        assert_eq!(RootSystemA::new(4).positive_roots().len(), 6);
        assert_eq!(RootSystemA::new(5).simple_roots().len(), 4);
    }

    #[test]
    fn validation() {
        assert!(BdTriple::new(3, &[(2, 1)]).validate().is_ok());
        assert!(BdTriple::trivial(4).validate().is_ok());
        assert_eq!(
            BdTriple::new(3, &[(1, 1)]).validate(),
            Err(TripleViolation::NotNilpotent(1))
        );
        assert_eq!(
            BdTriple::new(5, &[(1, 2), (2, 4)]).validate(),
            Err(TripleViolation::NotIsometry(1, 2))
        );
        assert_eq!(BdTriple::new(3, &[(3, 1)]).validate(), Err(TripleViolation::OutOfRange(3)));
    }

    #[test]
    fn partial_orders() {
        assert!(bd_partial_order(&BdTriple::trivial(4)).is_empty());
        assert_eq!(bd_partial_order(&BdTriple::cremmer_gervais(3)), vec![(r(2, 3), r(1, 2))]);
        let case2 = bd_partial_order(&BdTriple::cremmer_gervais(4));
        let expected: BTreeSet<(Root, Root)> =
            [(r(2, 3), r(1, 2)), (r(3, 4), r(2, 3)), (r(3, 4), r(1, 2)), (r(2, 4), r(1, 3))]
                .into_iter()
                .collect();
        assert_eq!(case2.into_iter().collect::<BTreeSet<_>>(), expected);
    }

    #[test]
    fn cartan_subspaces() {
        let (h, k) = h_t_and_kt(&BdTriple::trivial(3));
        assert_eq!(k, 2);
        assert_eq!(h.basis, vec![diag(&[1, 0, -1]), diag(&[0, 1, -1])]);

        let (h, k) = h_t_and_kt(&BdTriple::cremmer_gervais(3));
        assert_eq!(k, 1);
        assert_eq!(h.basis, vec![diag(&[1, 0, -1])]);

        let (h, k) = h_t_and_kt(&BdTriple::new(4, &[(1, 2)]));
        assert_eq!(k, 2);
        assert_eq!(h.basis, vec![diag(&[1, 0, -1, 0]), diag(&[0, 1, 2, -3])]);

        let (h, _) = h_t_and_kt(&BdTriple::new(4, &[(1, 3)]));
        assert_eq!(h.basis, vec![diag(&[1, 0, 0, -1]), diag(&[0, 1, -1, 0])]);

        let (h, _) = h_t_and_kt(&BdTriple::cremmer_gervais(4));
        assert_eq!(h.basis, vec![diag(&[3, 1, -1, -3])]);
    }

    #[test]
    fn json_forms() {
        let t = BdTriple::cremmer_gervais(4);
        let v = t.to_json();
        assert_eq!(v.to_string(), r#"{"gamma":{"2":"1","3":"2"},"n":4}"#);
        assert_eq!(BdTriple::from_json(&v).unwrap(), t);
        let numeric: serde_json::Value = serde_json::from_str(r#"{"n":3,"gamma":{"2":1}}"#).unwrap();
        assert_eq!(BdTriple::from_json(&numeric).unwrap(), BdTriple::cremmer_gervais(3));
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(all_bd_triples(2).len(), 1);
        // Trivial plus a2 -> a1 and a1 -> a2.
        assert_eq!(all_bd_triples(3).len(), 3);
        assert!(all_bd_triples(4).iter().all(|t| t.validate().is_ok()));
    }

    fn any_triple() -> impl Strategy<Value = BdTriple> {
        let all: Vec<BdTriple> = (2..=5).flat_map(all_bd_triples).collect();
        proptest::sample::select(all)
    }

    proptest! {
        #[test]
        fn cartan_dimension_matches(t in any_triple()) {
            let (h, k) = h_t_and_kt(&t);
            prop_assert_eq!(k, t.n - 1 - t.gamma.len());
            for basis in &h.basis {
                prop_assert!(basis.iter().fold(Rational::zero(), |a, b| a + b).is_zero());
                for (alpha, beta) in bd_partial_order(&t) {
                    prop_assert_eq!(alpha.eval(basis), beta.eval(basis));
                }
            }
        }

        #[test]
        fn order_is_strict_and_transitive(t in any_triple()) {
            let pairs: BTreeSet<(Root, Root)> = bd_partial_order(&t).into_iter().collect();
            for &(a, b) in &pairs {
                prop_assert!(a != b);
                prop_assert!(!pairs.contains(&(b, a)));
                for &(c, d) in &pairs {
                    if b == c {
                        prop_assert!(pairs.contains(&(a, d)));
                    }
                }
            }
        }

        #[test]
        fn isomorphisms_preserve_validity(t in any_triple()) {
            prop_assert!(t.transposed().validate().is_ok());
            prop_assert!(t.flipped().validate().is_ok());
            prop_assert!(t.transposed().flipped().validate().is_ok());
        }
    }
}
