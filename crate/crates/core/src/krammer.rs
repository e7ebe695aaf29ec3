//! The Krammer representation of `B_n` on the free `Λ`-module with basis
//! `F_{i,j}`, `1 ≤ i < j ≤ n`.
//!
//! Conventions:
//!
//! * Column `(j,k)` of the matrix of `σ_i` holds the coordinates of
//!   `σ_i(F_{j,k})`; the six-case action table is used verbatim, including
//!   its sign of `t` (Krammer's original `−t` is our `t`; no flip applied).
//! * A word `σ_{a_1} σ_{a_2} ⋯` maps to the product `M_{a_1} M_{a_2} ⋯` in
//!   word order, so [`rep_matrix`] is a homomorphism.
//! * Inverse generators are obtained once per `(n, i)` through
//!   Cayley–Hamilton over `Λ` (the determinant is a unit) and cached.
//!
//! Over `Q(q,t)` this module is conjugate to the homological
//! Lawrence-Krammer module; the change of basis sends `F_{i,j}` to
//! `(σ_{i−1}⋯σ_1)(σ_{j−1}⋯σ_2) v_{1,2}`. It is not built here because the
//! `v_{i,j}` have no closed form in `F`-coordinates.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::braid::{BraidError, BraidWord};
use crate::linalg::{QMatrix, RingMatrix};
use crate::ring::{rational, BigRational, LaurentPoly, RingError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KrammerError {
    #[error("generator σ_{i} does not exist on {n} strands")]
    IndexOutOfRange { n: usize, i: usize },
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// The ordered index set `{(i,j) : 1 ≤ i < j ≤ n}` in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairBasis {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl PairBasis {
    pub fn new(n: usize) -> Self {
        let pairs = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .collect();
        Self { n, pairs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Position of `(i, j)`, `i < j`, in closed form.
    pub fn index(&self, i: usize, j: usize) -> Option<usize> {
        if i == 0 || i >= j || j > self.n {
            return None;
        }
        // Pairs starting with 1..i-1 come first.
        let before = (i - 1) * self.n - (i - 1) * i / 2;
        Some(before + (j - i - 1))
    }

    pub fn labels(&self) -> Vec<String> {
        self.pairs
            .iter()
            .map(|(i, j)| format!("F({i},{j})"))
            .collect()
    }
}

pub fn dimension(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `σ_i` on the `F`-basis, columns are images of basis vectors.
fn positive_generator(n: usize, i: usize) -> RingMatrix {
    let basis = PairBasis::new(n);
    let d = basis.len();
    let q = LaurentPoly::q();
    let t = LaurentPoly::t();
    let one = LaurentPoly::one();
    let mut m = RingMatrix::zeros(d, d);
    let idx = |a: usize, b: usize| basis.index(a, b).expect("pair in range");
    let mut put = |row: usize, col: usize, v: LaurentPoly| {
        let cur = m.get(row, col).clone();
        m.set(row, col, &cur + &v);
    };
    for &(j, k) in basis.pairs() {
        let col = idx(j, k);
        if i == j && j == k - 1 {
            put(col, col, -&LaurentPoly::q_monomial(1, 2, 1));
        } else if i + 1 == j {
            put(idx(i, k), col, q.clone());
            put(idx(i, j), col, &q.pow(2) - &q);
            put(col, col, &one - &q);
        } else if i == j {
            put(idx(j + 1, k), col, one.clone());
        } else if i + 1 == k {
            put(idx(j, i), col, q.clone());
            put(col, col, &one - &q);
            put(idx(i, k), col, &(&(&one - &q) * &q) * &t);
        } else if i == k {
            put(idx(j, k + 1), col, one.clone());
        } else {
            put(col, col, one.clone());
        }
    }
    m
}

type GeneratorKey = (usize, usize, i8);

fn generator_cache() -> &'static RwLock<HashMap<GeneratorKey, Arc<RingMatrix>>> {
    static CACHE: OnceLock<RwLock<HashMap<GeneratorKey, Arc<RingMatrix>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Matrix of `σ_i^sign` over `Λ`, `sign ∈ {+1, −1}`.
pub fn krammer_generator(n: usize, i: usize, sign: i8) -> Result<Arc<RingMatrix>, KrammerError> {
    if n < 2 {
        return Err(BraidError::TooFewStrands(n).into());
    }
    if i == 0 || i >= n {
        return Err(KrammerError::IndexOutOfRange { n, i });
    }
    let sign: i8 = if sign < 0 { -1 } else { 1 };
    let key = (n, i, sign);
    if let Some(m) = generator_cache().read().expect("cache lock").get(&key) {
        return Ok(Arc::clone(m));
    }
    let m = if sign > 0 {
        positive_generator(n, i)
    } else {
        let pos = krammer_generator(n, i, 1)?;
        let inv = pos
            .inverse_over_ring()
            .expect("Krammer generators have unit determinant");
        assert!(
            (&*pos * &inv).is_identity(),
            "σ_{i}⁻¹ failed to invert σ_{i}"
        );
        inv
    };
    let mut cache = generator_cache().write().expect("cache lock");
    Ok(Arc::clone(cache.entry(key).or_insert_with(|| Arc::new(m))))
}

/// `ρ(w)`, the product of generator matrices in word order.
pub fn rep_matrix(w: &BraidWord) -> RingMatrix {
    let n = w.strands();
    let mut acc = RingMatrix::identity(dimension(n));
    for &k in w.letters() {
        let g = krammer_generator(n, k.unsigned_abs() as usize, k.signum() as i8)
            .expect("braid words only hold valid letters");
        acc = &acc * &*g;
    }
    acc
}

/// Decides `w = 1` in `B_n`; exact because the representation is faithful.
pub fn is_trivial(w: &BraidWord) -> bool {
    rep_matrix(w).is_identity()
}

pub fn words_equal(a: &BraidWord, b: &BraidWord) -> Result<bool, KrammerError> {
    if a.strands() != b.strands() {
        return Err(BraidError::StrandMismatch(a.strands(), b.strands()).into());
    }
    Ok(rep_matrix(a) == rep_matrix(b))
}

/// `det ρ(σ_1)`, a unit of `Λ`; every generator shares it.
pub fn determinant_unit(n: usize) -> Result<LaurentPoly, KrammerError> {
    let g = krammer_generator(n, 1, 1)?;
    Ok(g.det().expect("square matrix"))
}

/// Sample point `(q^½, t)` used by [`rep_fingerprint`]: `q = 4/9, t = −9/4`.
pub fn fingerprint_point() -> (BigRational, BigRational) {
    (rational(2, 3), rational(-9, 4))
}

/// Characteristic polynomial of `ρ(w)` at the given point, coefficients
/// constant term first. Invariant under conjugation of `w`.
pub fn rep_fingerprint_at(
    w: &BraidWord,
    s0: &BigRational,
    t0: &BigRational,
) -> Result<Vec<BigRational>, KrammerError> {
    let m: QMatrix = rep_matrix(w).eval(s0, t0)?;
    Ok(m.charpoly().expect("square matrix"))
}

pub fn rep_fingerprint(w: &BraidWord) -> Vec<BigRational> {
    let (s0, t0) = fingerprint_point();
    rep_fingerprint_at(w, &s0, &t0).expect("fingerprint point is nonzero")
}

/// JSON dump of a matrix with its `F(i,j)` labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelledMatrix {
    pub n: usize,
    pub basis: Vec<String>,
    pub matrix: RingMatrix,
}

impl LabelledMatrix {
    pub fn new(n: usize, matrix: RingMatrix) -> Self {
        Self {
            n,
            basis: PairBasis::new(n).labels(),
            matrix,
        }
    }
}

/// True iff every entry of the matrix lies in `Λ` (even powers of `q^½`).
pub fn entries_in_lambda(m: &RingMatrix) -> bool {
    m.entries().iter().all(LaurentPoly::is_in_lambda)
}
