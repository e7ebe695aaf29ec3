//! Braid words in the Artin generators.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BraidError {
    #[error("syntax error at token {position} ({token:?})")]
    Syntax { position: usize, token: String },
    #[error("generator index {index} out of range for {n} strands")]
    IndexOutOfRange { index: i64, n: usize },
    #[error("braid groups need at least two strands, got {0}")]
    TooFewStrands(usize),
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
}

/// A word in `σ_1^±1, …, σ_{n−1}^±1`. Letter `k > 0` is `σ_k`, `k < 0` is
/// `σ_{|k|}⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WordJson", into = "WordJson")]
pub struct BraidWord {
    n: usize,
    letters: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct WordJson {
    n: usize,
    letters: Vec<i32>,
}

impl TryFrom<WordJson> for BraidWord {
    type Error = BraidError;
    fn try_from(raw: WordJson) -> Result<Self, BraidError> {
        BraidWord::new(raw.n, raw.letters)
    }
}

impl From<BraidWord> for WordJson {
    fn from(w: BraidWord) -> Self {
        WordJson {
            n: w.n,
            letters: w.letters,
        }
    }
}

fn check_strands(n: usize) -> Result<(), BraidError> {
    if n < 2 {
        Err(BraidError::TooFewStrands(n))
    } else {
        Ok(())
    }
}

fn check_letter(n: usize, k: i64) -> Result<i32, BraidError> {
    if k == 0 || k.unsigned_abs() >= n as u64 {
        Err(BraidError::IndexOutOfRange { index: k, n })
    } else {
        Ok(k as i32)
    }
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        check_strands(n)?;
        for &k in &letters {
            check_letter(n, k.into())?;
        }
        Ok(Self { n, letters })
    }

    pub fn empty(n: usize) -> Result<Self, BraidError> {
        Self::new(n, Vec::new())
    }

    /// Parses whitespace-separated tokens `s3`, `s3^-1`, `s3^4`, `3`, `-3`
    /// or `2^3`; exponents expand to repeated letters.
    pub fn parse(text: &str, n: usize) -> Result<Self, BraidError> {
        check_strands(n)?;
        let mut letters = Vec::new();
        for (position, token) in text.split_whitespace().enumerate() {
            let syntax = || BraidError::Syntax {
                position: position + 1,
                token: token.to_string(),
            };
            let body = token.strip_prefix('s').unwrap_or(token);
            let (base, exp) = match body.split_once('^') {
                Some((b, e)) => (b, e.parse::<i64>().map_err(|_| syntax())?),
                None => (body, 1),
            };
            if base.starts_with('+') || (token.starts_with('s') && base.starts_with('-')) {
                return Err(syntax());
            }
            let k: i64 = base.parse().map_err(|_| syntax())?;
            let k = check_letter(n, k)?;
            let letter = if exp < 0 { -k } else { k };
            letters.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
        }
        Ok(Self { n, letters })
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self {
            n: self.n,
            letters: self.letters.iter().rev().map(|k| -k).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Result<Self, BraidError> {
        if self.n != other.n {
            return Err(BraidError::StrandMismatch(self.n, other.n));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self { n: self.n, letters })
    }

    /// Cancels adjacent `k, −k` pairs until none remain.
    pub fn free_reduce(&self) -> Self {
        let mut stack: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &k in &self.letters {
            if stack.last() == Some(&-k) {
                stack.pop();
            } else {
                stack.push(k);
            }
        }
        Self {
            n: self.n,
            letters: stack,
        }
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != -w[1])
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&k| i64::from(k.signum())).sum()
    }

    /// Deterministic freely reduced word of the given length with letters
    /// uniform over `±{1, …, n−1}`.
    pub fn random(n: usize, length: usize, seed: u64) -> Result<Self, BraidError> {
        check_strands(n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(Self {
            n,
            letters: random_letters(&mut rng, n, length),
        })
    }

    /// A word equal to `self` in `B_n`, produced by `steps` random
    /// applications of the defining relations (insert/cancel `k,−k`, far
    /// commutation, braid relation, relator insertion).
    pub fn random_rewrite(&self, steps: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut letters = self.letters.clone();
        for _ in 0..steps {
            apply_random_move(&mut rng, self.n, &mut letters);
        }
        Self { n: self.n, letters }
    }
}

fn random_letter(rng: &mut impl Rng, n: usize) -> i32 {
    let k = rng.gen_range(1..n as i32);
    if rng.gen_bool(0.5) {
        k
    } else {
        -k
    }
}

fn random_letters(rng: &mut impl Rng, n: usize, length: usize) -> Vec<i32> {
    let mut letters: Vec<i32> = Vec::with_capacity(length);
    while letters.len() < length {
        let k = random_letter(rng, n);
        if letters.last() != Some(&-k) {
            letters.push(k);
        }
    }
    letters
}

fn apply_random_move(rng: &mut impl Rng, n: usize, letters: &mut Vec<i32>) {
    let len = letters.len();
    match rng.gen_range(0..5) {
        0 => {
            let at = rng.gen_range(0..=len);
            let k = random_letter(rng, n);
            letters.splice(at..at, [k, -k]);
        }
        1 => {
            let spots: Vec<usize> = (0..len.saturating_sub(1))
                .filter(|&i| letters[i] == -letters[i + 1])
                .collect();
            if !spots.is_empty() {
                let i = spots[rng.gen_range(0..spots.len())];
                letters.drain(i..i + 2);
            }
        }
        2 => {
            let spots: Vec<usize> = (0..len.saturating_sub(1))
                .filter(|&i| (letters[i].abs() - letters[i + 1].abs()).abs() > 1)
                .collect();
            if !spots.is_empty() {
                let i = spots[rng.gen_range(0..spots.len())];
                letters.swap(i, i + 1);
            }
        }
        3 => {
            // a b a -> b a b for |a|,|b| adjacent generators with equal signs.
            let spots: Vec<usize> = (0..len.saturating_sub(2))
                .filter(|&i| {
                    let (a, b, c) = (letters[i], letters[i + 1], letters[i + 2]);
                    a == c && a.signum() == b.signum() && (a.abs() - b.abs()).abs() == 1
                })
                .collect();
            if !spots.is_empty() {
                let i = spots[rng.gen_range(0..spots.len())];
                let (a, b) = (letters[i], letters[i + 1]);
                letters[i..i + 3].copy_from_slice(&[b, a, b]);
            }
        }
        _ => {
            if n >= 3 {
                let i = rng.gen_range(1..n as i32 - 1);
                let relator = [i, i + 1, i, -(i + 1), -i, -(i + 1)];
                let at = rng.gen_range(0..=len);
                letters.splice(at..at, relator);
            }
        }
    }
}

/// Renders in the `s` syntax, e.g. `s1 s2^-1`.
impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &k) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if k > 0 {
                write!(f, "s{k}")?;
            } else {
                write!(f, "s{}^-1", -k)?;
            }
        }
        Ok(())
    }
}
