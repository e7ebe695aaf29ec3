//! The Temperley-Lieb diagram algebra `TL_n` over `Z[q^±½]` and its
//! `(n−2, 2)` module.
//!
//! A diagram is a planar perfect matching of the bottom points `1..n` and
//! the top points `1'..n'`. Products stack diagrams: in `a·b` the diagram
//! `b` sits below `a`, so `b` acts first. Each closed loop contributes the
//! factor `δ = −q^½ − q^−½`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::braid::{BraidError, BraidWord};
use crate::linalg::{LinalgError, QMatrix, SpanSolver, Subspace};
use crate::ring::{BigRational, LaurentPoly};
use crate::sample::{check_admissible, InadmissibleSample};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TlError {
    #[error("e_{i} does not exist in TL_{n}")]
    IndexOutOfRange { n: usize, i: usize },
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("not a planar perfect matching: {0}")]
    InvalidDiagram(String),
    #[error("the (n-2,2) module needs n >= 4, got {0}")]
    TooFewStrands(usize),
    #[error(transparent)]
    Inadmissible(#[from] InadmissibleSample),
    #[error("degenerate sample q^(1/2) = {s0} for n = {n}: {reason}")]
    Degenerate {
        n: usize,
        s0: BigRational,
        reason: String,
    },
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A planar matching on `2n` points. Point `p < n` is bottom `p+1`; point
/// `n + k − 1` is top `k'`. `partner[p]` is the point matched with `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TLDiagram {
    partner: Vec<u8>,
}

/// Position of a point on the boundary circle: bottom `1..n` left to right,
/// then top `n'..1'` right to left.
fn cyclic_position(n: usize, p: usize) -> usize {
    if p < n {
        p
    } else {
        3 * n - 1 - p
    }
}

fn crosses(a: (usize, usize), b: (usize, usize)) -> bool {
    let (a0, a1) = (a.0.min(a.1), a.0.max(a.1));
    let (b0, b1) = (b.0.min(b.1), b.0.max(b.1));
    (a0 < b0 && b0 < a1 && a1 < b1) || (b0 < a0 && a0 < b1 && b1 < a1)
}

impl TLDiagram {
    pub fn identity(n: usize) -> Self {
        let partner = (0..2 * n).map(|p| ((p + n) % (2 * n)) as u8).collect();
        Self { partner }
    }

    /// Cup-cap diagram `e_i`: bottom `i ↔ i+1`, top `i' ↔ (i+1)'`.
    pub fn cup_cap(n: usize, i: usize) -> Result<Self, TlError> {
        if i == 0 || i >= n {
            return Err(TlError::IndexOutOfRange { n, i });
        }
        let mut d = Self::identity(n);
        let (b, t) = (i - 1, n + i - 1);
        for (x, y) in [(b, b + 1), (t, t + 1)] {
            d.partner[x] = y as u8;
            d.partner[y] = x as u8;
        }
        Ok(d)
    }

    /// Builds a diagram from point pairs, validating perfectness and
    /// planarity.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, TlError> {
        let invalid = |why: &str| TlError::InvalidDiagram(why.to_string());
        if pairs.len() != n {
            return Err(invalid("wrong number of pairs"));
        }
        let mut partner = vec![u8::MAX; 2 * n];
        for &(a, b) in pairs {
            if a == b || a >= 2 * n || b >= 2 * n {
                return Err(invalid("point out of range"));
            }
            if partner[a] != u8::MAX || partner[b] != u8::MAX {
                return Err(invalid("point used twice"));
            }
            partner[a] = b as u8;
            partner[b] = a as u8;
        }
        let d = Self { partner };
        if !d.is_planar() {
            return Err(invalid("pairs cross"));
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn partner(&self, p: usize) -> usize {
        self.partner[p] as usize
    }

    /// Each pair once, smaller point first.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len())
            .filter(|&p| p < self.partner(p))
            .map(|p| (p, self.partner(p)))
            .collect()
    }

    pub fn is_planar(&self) -> bool {
        let n = self.n();
        let arcs: Vec<(usize, usize)> = self
            .pairs()
            .into_iter()
            .map(|(a, b)| (cyclic_position(n, a), cyclic_position(n, b)))
            .collect();
        arcs.iter()
            .enumerate()
            .all(|(i, &a)| arcs[i + 1..].iter().all(|&b| !crosses(a, b)))
    }

    /// Whether bottom points `k` and `k+1` (1-based) are joined by a cap.
    pub fn has_bottom_cap(&self, k: usize) -> bool {
        k >= 1 && k < self.n() && self.partner(k - 1) == k
    }

    /// Stacks `self` on top of `below`; returns the diagram and the number
    /// of closed loops removed.
    pub fn compose(&self, below: &TLDiagram) -> (TLDiagram, usize) {
        let n = self.n();
        assert_eq!(n, below.n(), "strand counts");
        let mut partner = vec![u8::MAX; 2 * n];
        let mut visited = vec![false; n];
        // Walk from an outer point until another outer point is reached.
        // Middle point m is top m' of `below` and bottom m of `self`.
        let walk = |start: usize, visited: &mut Vec<bool>| -> usize {
            let (mut upper, mut p) = if start < n {
                (false, start)
            } else {
                (true, start)
            };
            loop {
                if upper {
                    let x = self.partner(p);
                    if x >= n {
                        return x;
                    }
                    visited[x] = true;
                    upper = false;
                    p = n + x;
                } else {
                    let x = below.partner(p);
                    if x < n {
                        return x;
                    }
                    visited[x - n] = true;
                    upper = true;
                    p = x - n;
                }
            }
        };
        for start in 0..2 * n {
            if partner[start] != u8::MAX {
                continue;
            }
            let end = walk(start, &mut visited);
            partner[start] = end as u8;
            partner[end] = start as u8;
        }
        let mut loops = 0;
        for m in 0..n {
            if visited[m] {
                continue;
            }
            loops += 1;
            let mut cur = m;
            loop {
                visited[cur] = true;
                let up = self.partner(cur);
                let down = below.partner(n + up) - n;
                visited[up] = true;
                if down == m {
                    break;
                }
                cur = down;
            }
        }
        (TLDiagram { partner }, loops)
    }

    fn point_label(n: usize, p: usize) -> String {
        if p < n {
            format!("{}", p + 1)
        } else {
            format!("{}'", p - n + 1)
        }
    }

    /// Rendering order: `1 < 1' < 2 < 2' < …`.
    fn point_key(n: usize, p: usize) -> usize {
        if p < n {
            2 * p
        } else {
            2 * (p - n) + 1
        }
    }
}

/// Renders as a pair list such as `[(1,2),(1',2'),(3,3')]`.
impl fmt::Display for TLDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        let mut pairs: Vec<(usize, usize)> = self
            .pairs()
            .into_iter()
            .map(|(a, b)| {
                let (ka, kb) = (Self::point_key(n, a), Self::point_key(n, b));
                if ka < kb {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        pairs.sort_by_key(|&(a, _)| Self::point_key(n, a));
        f.write_str("[")?;
        for (i, (a, b)) in pairs.into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(
                f,
                "({},{})",
                Self::point_label(n, a),
                Self::point_label(n, b)
            )?;
        }
        f.write_str("]")
    }
}

impl FromStr for TLDiagram {
    type Err = TlError;

    fn from_str(text: &str) -> Result<Self, TlError> {
        let invalid = || TlError::InvalidDiagram(text.to_string());
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(invalid)?;
        let mut raw = Vec::new();
        if !inner.is_empty() {
            for chunk in inner.split("),(") {
                let chunk = chunk.trim_start_matches('(').trim_end_matches(')');
                let (a, b) = chunk.split_once(',').ok_or_else(invalid)?;
                let parse = |label: &str| -> Option<(usize, bool)> {
                    let (num, top) = match label.strip_suffix('\'') {
                        Some(x) => (x, true),
                        None => (label, false),
                    };
                    let k: usize = num.parse().ok()?;
                    (k >= 1).then_some((k, top))
                };
                raw.push((parse(a).ok_or_else(invalid)?, parse(b).ok_or_else(invalid)?));
            }
        }
        let n = raw.len();
        let point = |(k, top): (usize, bool)| -> Result<usize, TlError> {
            if k > n {
                return Err(invalid());
            }
            Ok(if top { n + k - 1 } else { k - 1 })
        };
        let pairs = raw
            .into_iter()
            .map(|(a, b)| Ok((point(a)?, point(b)?)))
            .collect::<Result<Vec<_>, TlError>>()?;
        TLDiagram::from_pairs(n, &pairs)
    }
}

fn noncrossing_matchings(positions: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if positions.is_empty() {
        return vec![Vec::new()];
    }
    let first = positions[0];
    let mut out = Vec::new();
    for j in (1..positions.len()).step_by(2) {
        let inner = noncrossing_matchings(&positions[1..j]);
        let outer = noncrossing_matchings(&positions[j + 1..]);
        for a in &inner {
            for b in &outer {
                let mut m = Vec::with_capacity(positions.len() / 2);
                m.push((first, positions[j]));
                m.extend_from_slice(a);
                m.extend_from_slice(b);
                out.push(m);
            }
        }
    }
    out
}

/// All diagrams of `TL_n` in canonical order, with a reverse index.
#[derive(Debug)]
pub struct DiagramBasis {
    n: usize,
    diagrams: Vec<TLDiagram>,
    index: HashMap<TLDiagram, usize>,
}

impl DiagramBasis {
    fn build(n: usize) -> Self {
        let positions: Vec<usize> = (0..2 * n).collect();
        // The position map is an involution, so it also maps back to points.
        let mut diagrams: Vec<TLDiagram> = noncrossing_matchings(&positions)
            .into_iter()
            .map(|m| {
                let pairs: Vec<(usize, usize)> = m
                    .into_iter()
                    .map(|(a, b)| (cyclic_position(n, a), cyclic_position(n, b)))
                    .collect();
                TLDiagram::from_pairs(n, &pairs).expect("noncrossing matching is planar")
            })
            .collect();
        diagrams.sort();
        let index = diagrams
            .iter()
            .enumerate()
            .map(|(i, d)| (d.clone(), i))
            .collect();
        Self { n, diagrams, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.diagrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagrams.is_empty()
    }

    pub fn diagrams(&self) -> &[TLDiagram] {
        &self.diagrams
    }

    pub fn index_of(&self, d: &TLDiagram) -> Option<usize> {
        self.index.get(d).copied()
    }
}

/// Cached diagram basis of `TL_n`; its size is the `n`-th Catalan number.
pub fn diagram_basis(n: usize) -> Arc<DiagramBasis> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<DiagramBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.read().expect("cache lock").get(&n) {
        return Arc::clone(b);
    }
    let built = Arc::new(DiagramBasis::build(n));
    let mut w = cache.write().expect("cache lock");
    Arc::clone(w.entry(n).or_insert(built))
}

/// The loop value `δ = −q^½ − q^−½`.
pub fn loop_value() -> LaurentPoly {
    -&(&LaurentPoly::s() + &LaurentPoly::monomial(1, -1, 0))
}

/// A formal combination of diagrams with Laurent coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TLElement {
    n: usize,
    terms: BTreeMap<TLDiagram, LaurentPoly>,
}

impl TLElement {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::from_diagram(TLDiagram::identity(n), LaurentPoly::one())
    }

    pub fn e(n: usize, i: usize) -> Result<Self, TlError> {
        Ok(Self::from_diagram(
            TLDiagram::cup_cap(n, i)?,
            LaurentPoly::one(),
        ))
    }

    pub fn from_diagram(d: TLDiagram, coeff: LaurentPoly) -> Self {
        let mut out = Self::zero(d.n());
        out.add_term(d, coeff);
        out
    }

    fn add_term(&mut self, d: TLDiagram, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(d).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TLDiagram, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, d: &TLDiagram) -> LaurentPoly {
        self.terms.get(d).cloned().unwrap_or_default()
    }

    fn check_same(&self, other: &Self) -> Result<(), TlError> {
        if self.n != other.n {
            Err(TlError::StrandMismatch(self.n, other.n))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, TlError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, TlError> {
        self.try_add(&other.scale(&-LaurentPoly::one()))
    }

    pub fn scale(&self, k: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.n);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), c * k);
        }
        out
    }

    /// `self · other`, `other` acting first.
    pub fn try_mul(&self, other: &Self) -> Result<Self, TlError> {
        self.check_same(other)?;
        let delta = loop_value();
        let mut powers = vec![LaurentPoly::one()];
        let mut out = Self::zero(self.n);
        for (da, ca) in &self.terms {
            for (db, cb) in &other.terms {
                let (d, loops) = da.compose(db);
                while powers.len() <= loops {
                    let next = powers.last().expect("nonempty") * &delta;
                    powers.push(next);
                }
                out.add_term(d, &(ca * cb) * &powers[loops]);
            }
        }
        Ok(out)
    }

    /// Coordinates in the diagram basis at `q^½ = s0`.
    pub fn to_vector(&self, basis: &DiagramBasis, s0: &BigRational) -> Vec<BigRational> {
        assert_eq!(basis.n(), self.n, "basis strand count");
        let mut v = vec![BigRational::zero(); basis.len()];
        let one = BigRational::one();
        for (d, c) in &self.terms {
            let i = basis.index_of(d).expect("planar diagram is in the basis");
            v[i] = c.eval(s0, &one).expect("s0 is nonzero");
        }
        v
    }
}

/// One term per line: `coeff  diagram`.
impl fmt::Display for TLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{c}  {d}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    diagram: String,
    coeff: LaurentPoly,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    n: usize,
    terms: Vec<TermJson>,
}

impl Serialize for TLElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ElementJson {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(d, c)| TermJson {
                    diagram: d.to_string(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TLElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = ElementJson::deserialize(deserializer)?;
        let mut out = TLElement::zero(raw.n);
        for term in raw.terms {
            let d: TLDiagram = term.diagram.parse().map_err(D::Error::custom)?;
            if d.n() != raw.n {
                return Err(D::Error::custom("diagram strand count"));
            }
            out.add_term(d, term.coeff);
        }
        Ok(out)
    }
}

pub fn tl_one(n: usize) -> TLElement {
    TLElement::one(n)
}

pub fn tl_e(n: usize, i: usize) -> Result<TLElement, TlError> {
    TLElement::e(n, i)
}

pub fn tl_mul(a: &TLElement, b: &TLElement) -> Result<TLElement, TlError> {
    a.try_mul(b)
}

/// Product of `e_{k_1} e_{k_2} ⋯` in the given order; empty gives `1`.
pub fn e_product(n: usize, indices: &[usize]) -> Result<TLElement, TlError> {
    indices.iter().try_fold(TLElement::one(n), |acc, &k| {
        acc.try_mul(&TLElement::e(n, k)?)
    })
}

/// Image of `σ_k^±1`: `1 + q^½ e_k` or `1 + q^−½ e_k`.
pub fn generator_image(n: usize, letter: i32) -> Result<TLElement, TlError> {
    let k = letter.unsigned_abs() as usize;
    let coeff = LaurentPoly::monomial(1, letter.signum(), 0);
    TLElement::one(n).try_add(&TLElement::e(n, k)?.scale(&coeff))
}

pub fn braid_to_tl(w: &BraidWord) -> TLElement {
    let n = w.strands();
    w.letters().iter().fold(TLElement::one(n), |acc, &k| {
        acc.try_mul(&generator_image(n, k).expect("braid letters are in range"))
            .expect("same strand count")
    })
}

/// Image of a `Z`-combination of braid words.
pub fn combination_image(n: usize, terms: &[(i64, &[i32])]) -> Result<TLElement, TlError> {
    let mut acc = TLElement::zero(n);
    for &(c, letters) in terms {
        let w = BraidWord::new(n, letters.to_vec())?;
        acc = acc.try_add(&braid_to_tl(&w).scale(&LaurentPoly::constant(c)))?;
    }
    Ok(acc)
}

/// Image of `(σ_i − 1)(σ_i + q) = σ_i² + (q − 1)σ_i − q`.
pub fn hecke_image(n: usize, i: usize) -> Result<TLElement, TlError> {
    let s = generator_image(n, i as i32)?;
    let q = LaurentPoly::q();
    let left = s.try_sub(&TLElement::one(n))?;
    let right = s.try_add(&TLElement::one(n).scale(&q))?;
    left.try_mul(&right)
}

/// Image of `z_{i,j} = σ_iσ_jσ_i − σ_iσ_j − σ_jσ_i + σ_i + σ_j − 1`.
pub fn z_image(n: usize, i: usize, j: usize) -> Result<TLElement, TlError> {
    let (a, b) = (i as i32, j as i32);
    combination_image(
        n,
        &[
            (1, &[a, b, a]),
            (-1, &[a, b]),
            (-1, &[b, a]),
            (1, &[a]),
            (1, &[b]),
            (-1, &[]),
        ],
    )
}

/// Left ideal `TL_n · gens`, specialised at `q^½ = s0`, as a subspace of the
/// diagram-coordinate space.
pub fn left_ideal_of(n: usize, gens: &[TLElement], s0: &BigRational) -> Result<Subspace, TlError> {
    check_admissible(s0)?;
    let basis = diagram_basis(n);
    let mut span = Subspace::zero(basis.len());
    for g in gens {
        if g.n() != n {
            return Err(TlError::StrandMismatch(n, g.n()));
        }
        for d in basis.diagrams() {
            let prod = TLElement::from_diagram(d.clone(), LaurentPoly::one()).try_mul(g)?;
            span.insert(prod.to_vector(&basis, s0));
        }
    }
    Ok(span)
}

pub fn left_ideal_basis(gen: &TLElement, s0: &BigRational) -> Result<Subspace, TlError> {
    left_ideal_of(gen.n(), std::slice::from_ref(gen), s0)
}

/// Index pairs of the `s_{i,j}` basis: `1 ≤ i < j ≤ n`, `j > max(i+1, 3)`.
pub fn s_basis_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| j > (i + 1).max(3))
        .collect()
}

/// `s_{i,j} = (e_i ⋯ e_3 e_2)(e_{j−1} ⋯ e_5 e_4)(e_1 e_3)`.
pub fn s_element(n: usize, i: usize, j: usize) -> Result<TLElement, TlError> {
    let mut idx: Vec<usize> = (2..=i).rev().collect();
    idx.extend((4..j).rev());
    idx.extend([1, 3]);
    e_product(n, &idx)
}

/// The `(n−2,2)` module `S = M/(M ∩ N)` at a sample, in the basis of the
/// images of the `s_{i,j}`.
#[derive(Debug, Clone)]
pub struct SModule {
    pub n: usize,
    pub s0: BigRational,
    pub basis_pairs: Vec<(usize, usize)>,
    pub dim_m: usize,
    pub dim_n: usize,
    /// Matrix of left multiplication by `e_k`, index `k − 1`.
    pub e_matrices: Vec<QMatrix>,
}

impl SModule {
    pub fn dim(&self) -> usize {
        self.basis_pairs.len()
    }
}

pub fn s_module(n: usize, s0: &BigRational) -> Result<SModule, TlError> {
    if n < 4 {
        return Err(TlError::TooFewStrands(n));
    }
    check_admissible(s0)?;
    let degenerate = |reason: String| TlError::Degenerate {
        n,
        s0: s0.clone(),
        reason,
    };
    let basis = diagram_basis(n);
    let m = left_ideal_basis(&e_product(n, &[1, 3])?, s0)?;
    let n_gens = (5..n)
        .map(|k| TLElement::e(n, k))
        .collect::<Result<Vec<_>, _>>()?;
    let n_ideal = left_ideal_of(n, &n_gens, s0)?;

    // M/(M ∩ N) ≅ (M + N)/N, realised through representatives modulo N.
    let quotient_span = Subspace::span(basis.len(), m.basis().iter().map(|v| n_ideal.reduce(v)));
    let pairs = s_basis_pairs(n);
    let elements = pairs
        .iter()
        .map(|&(i, j)| s_element(n, i, j))
        .collect::<Result<Vec<_>, _>>()?;
    let images: Vec<Vec<BigRational>> = elements
        .iter()
        .map(|s| n_ideal.reduce(&s.to_vector(&basis, s0)))
        .collect();
    let solver = SpanSolver::new(basis.len(), &images)
        .map_err(|_| degenerate("s_{i,j} images are linearly dependent".into()))?;
    if quotient_span.dim() != images.len() {
        return Err(degenerate(format!(
            "s_{{i,j}} images span {} of {} dimensions",
            images.len(),
            quotient_span.dim()
        )));
    }
    if images.len() != n * (n - 3) / 2 {
        return Err(degenerate(format!("dim S = {}", images.len())));
    }

    let mut e_matrices = Vec::with_capacity(n - 1);
    for k in 1..n {
        let e = TLElement::e(n, k)?;
        let mut mat = QMatrix::zeros(images.len(), images.len());
        for (c, s) in elements.iter().enumerate() {
            let image = n_ideal.reduce(&e.try_mul(s)?.to_vector(&basis, s0));
            let coords = solver
                .coordinates(&image)
                .ok_or_else(|| degenerate(format!("e_{k} leaves the span of the s_{{i,j}}")))?;
            for (r, x) in coords.into_iter().enumerate() {
                mat.set(r, c, x);
            }
        }
        e_matrices.push(mat);
    }
    Ok(SModule {
        n,
        s0: s0.clone(),
        basis_pairs: pairs,
        dim_m: m.dim(),
        dim_n: n_ideal.dim(),
        e_matrices,
    })
}

/// `ρ_S(σ_k) = I + s0·E_k` for `k = 1..n−1`.
pub fn s_braid_matrices(n: usize, s0: &BigRational) -> Result<Vec<QMatrix>, TlError> {
    let module = s_module(n, s0)?;
    Ok(module
        .e_matrices
        .iter()
        .map(|e| e.scale(s0).add_scalar(&BigRational::one()))
        .collect())
}
