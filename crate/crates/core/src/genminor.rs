//! Weyl group elements of `S_n`, Gauss factorization, generalized minors and
//! the initial cluster attached to a double reduced word.
//!
//! Positions in a double word are labelled `−(n−1), …, −1, 1, …, 2ℓ(w0)`.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{QMatrix, Rational};
use crate::laurent::{entry_name, poly_determinant, LaurentPoly, VarContext};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenMinorError {
    #[error("matrix is not in the open cell (leading principal minor {0} vanishes)")]
    NotInOpenCell(usize),
    #[error("matrix must be square")]
    NotSquare,
    #[error("invalid double word: {0}")]
    InvalidWord(String),
    #[error("position {0} is out of range")]
    PositionOutOfRange(i64),
    #[error("not a permutation")]
    NotAPermutation,
}

/// Permutation of `{1..n}`; `images[i-1] = w(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    images: Vec<usize>,
}

impl WeylElement {
    pub fn new(images: Vec<usize>) -> Result<Self, GenMinorError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(GenMinorError::NotAPermutation);
            }
            seen[v - 1] = true;
        }
        Ok(WeylElement { images })
    }

    pub fn identity(n: usize) -> Self {
        WeylElement {
            images: (1..=n).collect(),
        }
    }

    /// Transposition of `k` and `k+1`.
    pub fn simple(n: usize, k: usize) -> Self {
        assert!((1..n).contains(&k), "simple reflection index");
        let mut w = Self::identity(n);
        w.images.swap(k - 1, k);
        w
    }

    pub fn longest(n: usize) -> Self {
        WeylElement {
            images: (1..=n).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// `(self · other)(i) = self(other(i))`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            images: other.images.iter().map(|&i| self.apply(i)).collect(),
        }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        WeylElement { images: inv }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let n = self.n();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.images[a] > self.images[b])
            .count()
    }

    /// Sorted image of `{1..i}`.
    pub fn image_of_initial(&self, i: usize) -> Vec<usize> {
        let mut s: Vec<usize> = self.images[..i].to_vec();
        s.sort_unstable();
        s
    }

    /// Permutation matrix `P` with `P e_j = e_{w(j)}`.
    pub fn matrix(&self) -> QMatrix {
        let n = self.n();
        let mut m = QMatrix::zeros(n, n);
        for j in 1..=n {
            m[(self.apply(j) - 1, j - 1)] = Rational::one();
        }
        m
    }

    fn product(n: usize, letters: impl IntoIterator<Item = usize>) -> WeylElement {
        letters
            .into_iter()
            .fold(Self::identity(n), |acc, k| acc.compose(&Self::simple(n, k)))
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// `ℓ(w0) = n(n−1)/2`.
pub fn longest_length(n: usize) -> usize {
    n * (n - 1) / 2
}

/// `X = X₋ · X₀ · X₊` with unipotent lower `X₋`, diagonal `X₀`, unipotent upper `X₊`.
pub fn gauss_factorize(x: &QMatrix) -> Result<(QMatrix, QMatrix, QMatrix), GenMinorError> {
    if !x.is_square() {
        return Err(GenMinorError::NotSquare);
    }
    let n = x.rows();
    let mut lower = QMatrix::identity(n);
    let mut upper = QMatrix::identity(n);
    let mut diag = QMatrix::zeros(n, n);
    // Doolittle without pivoting; u = D·X₊ row by row.
    let mut u = QMatrix::zeros(n, n);
    for k in 0..n {
        for j in k..n {
            let mut s = x[(k, j)].clone();
            for p in 0..k {
                s -= &lower[(k, p)] * &u[(p, j)];
            }
            u[(k, j)] = s;
        }
        if u[(k, k)].is_zero() {
            return Err(GenMinorError::NotInOpenCell(k + 1));
        }
        for i in k + 1..n {
            let mut s = x[(i, k)].clone();
            for p in 0..k {
                s -= &lower[(i, p)] * &u[(p, k)];
            }
            lower[(i, k)] = s / &u[(k, k)];
        }
    }
    for k in 0..n {
        diag[(k, k)] = u[(k, k)].clone();
        for j in k + 1..n {
            upper[(k, j)] = &u[(k, j)] / &u[(k, k)];
        }
    }
    Ok((lower, diag, upper))
}

/// `Δ_{uω_i, vω_i}`: the minor on rows `u({1..i})` and columns `v({1..i})`,
/// both sorted, normalized so the leading monomial has coefficient `+1`.
pub fn generalized_minor(u: &WeylElement, v: &WeylElement, i: usize) -> LaurentPoly {
    let n = u.n();
    assert_eq!(v.n(), n, "Weyl elements of different rank");
    assert!((1..=n).contains(&i), "fundamental weight index");
    let ctx = VarContext::matrix(n, &[]);
    minor(&ctx, &u.image_of_initial(i), &v.image_of_initial(i))
}

/// Minor with the given sorted rows and columns, leading coefficient `+1`.
pub fn minor(ctx: &VarContext, rows: &[usize], cols: &[usize]) -> LaurentPoly {
    let m: Vec<Vec<LaurentPoly>> = rows
        .iter()
        .map(|&r| {
            cols.iter()
                .map(|&c| LaurentPoly::var(ctx, &entry_name(r, c)).expect("matrix entry"))
                .collect()
        })
        .collect();
    let det = poly_determinant(ctx, &m);
    match det.leading_term() {
        Some((_, c)) if c < &Rational::zero() => -&det,
        _ => det,
    }
}

/// Sign relating [`generalized_minor`] to the leading principal minor of
/// `P_u⁻¹ X P_v`: the product of the signs sorting `u(1..i)` and `v(1..i)`.
pub fn representative_sign(u: &WeylElement, v: &WeylElement, i: usize) -> i64 {
    let inversions = |w: &WeylElement| {
        (0..i)
            .flat_map(|a| (a + 1..i).map(move |b| (a, b)))
            .filter(|&(a, b)| w.images[a] > w.images[b])
            .count()
    };
    if (inversions(u) + inversions(v)) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A shuffle of two reduced words for `w0`, prefixed by `−(n−1), …, −1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleWord {
    pub n: usize,
    pub word: Vec<i64>,
}

impl DoubleWord {
    pub fn new(n: usize, word: Vec<i64>) -> Result<Self, GenMinorError> {
        let w = DoubleWord { n, word };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<(), GenMinorError> {
        let n = self.n;
        let bad = |msg: String| Err(GenMinorError::InvalidWord(msg));
        if n < 2 {
            return bad("n must be at least 2".into());
        }
        let l = longest_length(n);
        if self.word.len() != 2 * l + n - 1 {
            return bad(format!("length {} but expected {}", self.word.len(), 2 * l + n - 1));
        }
        for (p, &letter) in self.word[..n - 1].iter().enumerate() {
            if letter != -((n - 1 - p) as i64) {
                return bad(format!("prefix must be -{}, ..., -1", n - 1));
            }
        }
        let tail = self.tail();
        if let Some(&x) = tail.iter().find(|&&x| x == 0 || x.unsigned_abs() as usize >= n) {
            return bad(format!("letter {x} outside ±[{}]", n - 1));
        }
        for (sign, label) in [(1, "positive"), (-1, "negative")] {
            let letters: Vec<usize> = tail
                .iter()
                .filter(|&&x| x.signum() == sign)
                .map(|&x| x.unsigned_abs() as usize)
                .collect();
            let w = WeylElement::product(n, letters.iter().copied());
            if letters.len() != l || w != WeylElement::longest(n) || w.length() != l {
                return bad(format!("{label} letters do not form a reduced word for w0"));
            }
        }
        Ok(())
    }

    fn tail(&self) -> &[i64] {
        &self.word[self.n - 1..]
    }

    /// Labels `−(n−1), …, −1, 1, …, 2ℓ(w0)` in word order.
    pub fn positions(&self) -> Vec<i64> {
        let neg = -((self.n - 1) as i64)..=-1;
        neg.chain(1..=self.tail().len() as i64).collect()
    }

    /// Letter at a position label.
    pub fn letter(&self, k: i64) -> Result<i64, GenMinorError> {
        if k < 0 && k >= -((self.n - 1) as i64) {
            Ok(k)
        } else if k >= 1 && (k as usize) <= self.tail().len() {
            Ok(self.tail()[k as usize - 1])
        } else {
            Err(GenMinorError::PositionOutOfRange(k))
        }
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, GenMinorError> {
        let w: DoubleWord =
            serde_json::from_value(value.clone()).map_err(|e| GenMinorError::InvalidWord(e.to_string()))?;
        w.validate()?;
        Ok(w)
    }
}

/// `(u_{≤k}, v_{>k})`. For negative `k` this is `(id, w0)`.
pub fn word_prefix_elements(w: &DoubleWord, k: i64) -> Result<(WeylElement, WeylElement), GenMinorError> {
    w.letter(k)?;
    let n = w.n;
    if k < 0 {
        return Ok((WeylElement::identity(n), WeylElement::longest(n)));
    }
    let tail = w.tail();
    let k = k as usize;
    let u = WeylElement::product(
        n,
        tail[..k].iter().filter(|&&x| x < 0).map(|&x| x.unsigned_abs() as usize),
    );
    let v = WeylElement::product(
        n,
        tail[k..].iter().rev().filter(|&&x| x > 0).map(|&x| x as usize),
    );
    Ok((u, v))
}

/// The functions `Δ(k; w)` with stable positions and toric weights.
#[derive(Clone, Debug)]
pub struct InitialCluster {
    pub positions: Vec<i64>,
    pub variables: Vec<(String, LaurentPoly)>,
    /// Offsets into `variables`.
    pub stable: Vec<usize>,
    /// `u_{≤k} ω_{|i_k|}` in ε-coordinates (indicator of the row set).
    pub left_weights: Vec<Vec<i64>>,
    /// `v_{>k} ω_{|i_k|}` in ε-coordinates (indicator of the column set).
    pub right_weights: Vec<Vec<i64>>,
}

impl InitialCluster {
    pub fn to_json(&self) -> serde_json::Value {
        let variables: Vec<serde_json::Value> = self
            .variables
            .iter()
            .enumerate()
            .map(|(k, (name, p))| {
                serde_json::json!({
                    "position": self.positions[k],
                    "name": name,
                    "minor": p.to_string(),
                    "stable": self.stable.contains(&k),
                    "left_weight": self.left_weights[k],
                    "right_weight": self.right_weights[k],
                })
            })
            .collect();
        serde_json::json!({ "variables": variables, "stable_count": self.stable.len() })
    }

    pub fn mutable(&self) -> Vec<usize> {
        (0..self.variables.len()).filter(|i| !self.stable.contains(i)).collect()
    }
}

pub fn initial_cluster(w: &DoubleWord) -> Result<InitialCluster, GenMinorError> {
    w.validate()?;
    let n = w.n;
    let ctx = VarContext::matrix(n, &[]);
    let positions = w.positions();
    let mut variables = Vec::with_capacity(positions.len());
    let mut left_weights = Vec::with_capacity(positions.len());
    let mut right_weights = Vec::with_capacity(positions.len());
    for &k in &positions {
        let i = w.letter(k)?.unsigned_abs() as usize;
        let (u, v) = word_prefix_elements(w, k)?;
        let rows = u.image_of_initial(i);
        let cols = v.image_of_initial(i);
        let indicator = |set: &[usize]| (1..=n).map(|r| i64::from(set.contains(&r))).collect::<Vec<_>>();
        left_weights.push(indicator(&rows));
        right_weights.push(indicator(&cols));
        variables.push((format!("D{k}"), minor(&ctx, &rows, &cols)));
    }
    let mut stable: Vec<usize> = (0..n - 1).collect();
    for j in 1..n {
        let last = positions
            .iter()
            .enumerate()
            .rev()
            .find(|&(_, &k)| k > 0 && w.letter(k).map(|x| x.unsigned_abs() as usize) == Ok(j))
            .map(|(offset, _)| offset)
            .expect("every simple reflection occurs in a reduced word for w0");
        stable.push(last);
    }
    stable.sort_unstable();
    Ok(InitialCluster {
        positions,
        variables,
        stable,
        left_weights,
        right_weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;
    use proptest::prelude::*;

    fn sl2_word() -> DoubleWord {
        DoubleWord::new(2, vec![-1, 1, -1]).unwrap()
    }

    #[test]
    fn gauss_of_identity_and_swap() {
        let (l, d, u) = gauss_factorize(&QMatrix::identity(3)).unwrap();
        assert_eq!((l, d, u), (QMatrix::identity(3), QMatrix::identity(3), QMatrix::identity(3)));
        let swap = QMatrix::from_i64_rows(&[[0, 1], [1, 0]]);
        assert_eq!(gauss_factorize(&swap), Err(GenMinorError::NotInOpenCell(1)));
    }

    #[test]
    fn minors_of_sl2() {
        let id = WeylElement::identity(2);
        let s1 = WeylElement::simple(2, 1);
        let ctx = VarContext::matrix(2, &[]);
        assert_eq!(generalized_minor(&s1, &id, 1), LaurentPoly::var(&ctx, "x21").unwrap());
        let full = generalized_minor(&id, &id, 2);
        assert_eq!(full.to_string(), "x11*x22 - x12*x21");
    }

    #[test]
    fn prefix_elements() {
        let w = sl2_word();
        let id = WeylElement::identity(2);
        let s1 = WeylElement::simple(2, 1);
        assert_eq!(word_prefix_elements(&w, -1).unwrap(), (id.clone(), WeylElement::longest(2)));
        assert_eq!(word_prefix_elements(&w, 1).unwrap(), (id.clone(), id.clone()));
        assert_eq!(word_prefix_elements(&w, 2).unwrap(), (s1, id));
        assert_eq!(word_prefix_elements(&w, 3), Err(GenMinorError::PositionOutOfRange(3)));
    }

    #[test]
    fn sl2_initial_cluster() {
        let c = initial_cluster(&sl2_word()).unwrap();
        let names: Vec<String> = c.variables.iter().map(|(_, p)| p.to_string()).collect();
        assert_eq!(names, ["x12", "x11", "x21"]);
        assert_eq!(c.stable, vec![0, 2]);
        assert_eq!(c.mutable(), vec![1]);
        assert_eq!(c.left_weights[0], vec![1, 0]);
        assert_eq!(c.right_weights[0], vec![0, 1]);
    }

    #[test]
    fn sl3_initial_cluster() {
        let w = DoubleWord::new(3, vec![-2, -1, 1, -1, 2, -2, 1, -1]).unwrap();
        let c = initial_cluster(&w).unwrap();
        assert_eq!(c.variables.len(), 8);
        assert_eq!(c.stable.len(), 4);
        // Weights at the negative positions are (ω_j, w0 ω_j).
        assert_eq!(c.left_weights[0], vec![1, 1, 0]);
        assert_eq!(c.right_weights[0], vec![0, 1, 1]);
        assert_eq!(c.left_weights[1], vec![1, 0, 0]);
        assert_eq!(c.right_weights[1], vec![0, 0, 1]);
    }

    #[test]
    fn word_validation() {
        assert!(DoubleWord::new(2, vec![-1, 1, 1]).is_err());
        assert!(DoubleWord::new(2, vec![1, 1, -1]).is_err());
        assert!(DoubleWord::new(3, vec![-2, -1, 1, -1, 1, -2, 2, -1]).is_err());
        let json = serde_json::json!({"n": 2, "word": [-1, -1, 1]});
        assert_eq!(DoubleWord::from_json(&json).unwrap().word, vec![-1, -1, 1]);
    }

    fn open_cell_matrix(n: usize) -> impl Strategy<Value = QMatrix> {
        proptest::collection::vec(-6i64..=6, n * n)
            .prop_map(move |v| QMatrix::new(n, n, v.into_iter().map(int).collect()).unwrap())
            .prop_filter("open cell", |m| gauss_factorize(m).is_ok())
    }

    proptest! {
        #[test]
        fn gauss_factors_multiply_back(m in open_cell_matrix(3)) {
            let (l, d, u) = gauss_factorize(&m).unwrap();
            prop_assert_eq!(l.mul(&d).unwrap().mul(&u).unwrap(), m);
            for i in 0..3 {
                prop_assert!(l[(i, i)] == int(1) && u[(i, i)] == int(1));
                for j in i + 1..3 {
                    prop_assert!(l[(i, j)].is_zero() && u[(j, i)].is_zero());
                }
            }
        }

        #[test]
        fn minor_depends_only_on_index_sets(
            u in Just((1..=4usize).collect::<Vec<_>>()).prop_shuffle(),
            v in Just((1..=4usize).collect::<Vec<_>>()).prop_shuffle(),
            i in 1usize..=3,
            rotate in 0usize..3,
        ) {
            let mut reordered = u.clone();
            reordered[..i].rotate_left(rotate % i);
            reordered[i..].reverse();
            let u = WeylElement::new(u).unwrap();
            let u2 = WeylElement::new(reordered).unwrap();
            let v = WeylElement::new(v).unwrap();
            prop_assert_eq!(generalized_minor(&u, &v, i), generalized_minor(&u2, &v, i));
        }
    }
}
