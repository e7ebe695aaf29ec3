//! Coefficient rings.
//!
//! Everything symbolic lives in the single carrier ring `Z[s^±1, t^±1]`
//! where `s = q^½`. The braid-side ring `Λ = Z[q^±1, t^±1]` is the subring of
//! even `s`-exponents and the Temperley-Lieb coefficient ring `Z[q^±½]` is
//! the subring with no `t`. Specialised values are exact [`BigRational`]s.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("cannot substitute zero for an invertible variable")]
    ZeroSubstitution,
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

/// Operations the dense matrix code needs from an entry type.
pub trait Scalar:
    Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + Zero + One + Neg<Output = Self>
{
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    /// `self / k` when the quotient stays in the ring.
    fn div_exact_int(&self, k: i64) -> Option<Self>;
}

impl Scalar for BigRational {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn div_exact_int(&self, k: i64) -> Option<Self> {
        if k == 0 {
            None
        } else {
            Some(self / BigRational::from_integer(BigInt::from(k)))
        }
    }
}

/// Exponent pair `(e_s, e_t)` of a monomial `s^e_s t^e_t`.
pub type Exponent = (i32, i32);

/// Sparse Laurent polynomial in `s = q^½` and `t` with big integer
/// coefficients. Zero coefficients are never stored, so derived equality is
/// equality in the ring.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPoly {
    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, e_s: i32, e_t: i32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((e_s, e_t), c);
        }
        Self { terms }
    }

    /// `q^½`.
    pub fn s() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn q() -> Self {
        Self::monomial(1, 2, 0)
    }

    pub fn t() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// `c q^a t^b` for an integral power of `q`.
    pub fn q_monomial(c: impl Into<BigInt>, q_exp: i32, t_exp: i32) -> Self {
        Self::monomial(c, 2 * q_exp, t_exp)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c.into());
        }
        out
    }

    fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Terms in canonical (lexicographic `(e_s, e_t)`) order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e_s: i32, e_t: i32) -> BigInt {
        self.terms.get(&(e_s, e_t)).cloned().unwrap_or_default()
    }

    /// True iff the polynomial is `±` a monomial, i.e. a unit of the ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    /// True iff every `s`-exponent is even, i.e. the value lies in `Λ`.
    pub fn is_in_lambda(&self) -> bool {
        self.terms.keys().all(|(e_s, _)| e_s % 2 == 0)
    }

    pub fn is_t_free(&self) -> bool {
        self.terms.keys().all(|(_, e_t)| *e_t == 0)
    }

    /// The involution `q ↦ q⁻¹, t ↦ t⁻¹`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((-a, -b), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `t = −q⁻¹ = −s⁻²`.
    pub fn specialize_t(&self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            let c = if b.rem_euclid(2) == 1 { -c } else { c.clone() };
            out.add_term((a - 2 * b, 0), c);
        }
        out
    }

    /// Exact value at `s = s0`, `t = t0`.
    pub fn eval(&self, s0: &BigRational, t0: &BigRational) -> Result<BigRational, RingError> {
        if s0.is_zero() || t0.is_zero() {
            return Err(RingError::ZeroSubstitution);
        }
        let mut acc = BigRational::zero();
        for (&(a, b), c) in &self.terms {
            acc += BigRational::from_integer(c.clone()) * s0.pow(a) * t0.pow(b);
        }
        Ok(acc)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplies by `s^e_s t^e_t`.
    pub fn shift(&self, e_s: i32, e_t: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((a + e_s, b + e_t), c.clone()))
                .collect(),
        }
    }

    fn exponent_box(&self) -> Option<(i32, i32, i32, i32)> {
        let mut it = self.terms.keys();
        let &(a, b) = it.next()?;
        Some(it.fold((a, a, b, b), |(sl, sh, tl, th), &(a, b)| {
            (sl.min(a), sh.max(a), tl.min(b), th.max(b))
        }))
    }

    /// Exact quotient `self / divisor`, or `None` when `divisor` does not
    /// divide `self` in the Laurent ring.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (asl, ash, atl, ath) = self.exponent_box()?;
        let (dsl, dsh, dtl, dth) = divisor.exponent_box()?;
        // Degrees in each variable are additive over a domain.
        let (qsl, qsh, qtl, qth) = (asl - dsl, ash - dsh, atl - dtl, ath - dth);
        if qsl > qsh || qtl > qth {
            return None;
        }
        let (&lead_e, lead_c) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((&(a, b), c)) = rem.terms.iter().next_back() {
            let (qa, qb) = (a - lead_e.0, b - lead_e.1);
            if qa < qsl || qa > qsh || qb < qtl || qb > qth {
                return None;
            }
            let (qc, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return None;
            }
            let step = Self::monomial(qc, qa, qb);
            rem = &rem - &(&step * divisor);
            quot += step;
        }
        Some(quot)
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        Self::constant(1)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Scalar for LaurentPoly {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn div_exact_int(&self, k: i64) -> Option<Self> {
        if k == 0 {
            return None;
        }
        let k = BigInt::from(k);
        let mut out = Self::zero();
        for (&e, c) in &self.terms {
            let (quot, r) = c.div_rem(&k);
            if !r.is_zero() {
                return None;
            }
            out.add_term(e, quot);
        }
        Some(out)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

fn fmt_q_power(e_s: i32) -> Option<String> {
    match e_s {
        0 => None,
        2 => Some("q".into()),
        e if e % 2 == 0 => Some(format!("q^{}", e / 2)),
        e => Some(format!("q^({e}/2)")),
    }
}

fn fmt_t_power(e_t: i32) -> Option<String> {
    match e_t {
        0 => None,
        1 => Some("t".into()),
        e => Some(format!("t^{e}")),
    }
}

fn fmt_term((e_s, e_t): Exponent, c: &BigInt) -> String {
    let factors: Vec<String> = [fmt_q_power(e_s), fmt_t_power(e_t)]
        .into_iter()
        .flatten()
        .collect();
    if factors.is_empty() {
        return c.to_string();
    }
    let mono = factors.join("*");
    if c.is_one() {
        mono
    } else if (-c).is_one() {
        format!("-{mono}")
    } else {
        format!("{c}*{mono}")
    }
}

/// Renders as e.g. `1 - 2*q + q^2` or `-q^2*t`, with `q^(1/2)` for odd
/// powers of `s`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (&e, c)) in self.terms.iter().enumerate() {
            let term = fmt_term(e, c);
            match (k, term.strip_prefix('-')) {
                (0, _) => f.write_str(&term)?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {term}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

fn parse_err(input: &str) -> RingError {
    RingError::Parse {
        what: "Laurent polynomial",
        input: input.to_string(),
    }
}

/// Parses an exponent of `q`, returning it as an `s`-exponent.
fn parse_q_exponent(text: &str) -> Option<i32> {
    let inner = text
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .unwrap_or(text);
    match inner.split_once('/') {
        Some((num, "2")) => num.parse().ok(),
        Some(_) => None,
        None => inner.parse::<i32>().ok().map(|e| 2 * e),
    }
}

fn parse_term(term: &str, negative: bool, full: &str) -> Result<LaurentPoly, RingError> {
    let mut coeff = BigInt::one();
    let (mut e_s, mut e_t) = (0, 0);
    for factor in term.split('*') {
        if let Some(rest) = factor.strip_prefix('q') {
            e_s += match rest.strip_prefix('^') {
                None if rest.is_empty() => 2,
                Some(exp) => parse_q_exponent(exp).ok_or_else(|| parse_err(full))?,
                None => return Err(parse_err(full)),
            };
        } else if let Some(rest) = factor.strip_prefix('t') {
            e_t += match rest.strip_prefix('^') {
                None if rest.is_empty() => 1,
                Some(exp) => exp.parse::<i32>().map_err(|_| parse_err(full))?,
                None => return Err(parse_err(full)),
            };
        } else {
            coeff *= factor.parse::<BigInt>().map_err(|_| parse_err(full))?;
        }
    }
    if negative {
        coeff = -coeff;
    }
    Ok(LaurentPoly::monomial(coeff, e_s, e_t))
}

impl FromStr for LaurentPoly {
    type Err = RingError;

    /// Inverse of the `Display` rendering.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(parse_err(input));
        }
        let mut out = LaurentPoly::zero();
        let mut start = 0;
        let mut negative = false;
        let bytes = compact.as_bytes();
        for i in 0..=bytes.len() {
            let split = i == bytes.len()
                || (i > start
                    && matches!(bytes[i], b'+' | b'-')
                    && !matches!(bytes[i - 1], b'^' | b'('));
            if i == 0 && matches!(bytes.first(), Some(b'-') | Some(b'+')) {
                negative = bytes[0] == b'-';
                start = 1;
                continue;
            }
            if split {
                let term = &compact[start..i];
                if term.is_empty() {
                    return Err(parse_err(input));
                }
                out += parse_term(term, negative, input)?;
                if i < bytes.len() {
                    negative = bytes[i] == b'-';
                    start = i + 1;
                }
            }
        }
        Ok(out)
    }
}

/// JSON form: a list of `[e_s, e_t, "coeff"]` in canonical order.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<(i32, i32, String)> = self
            .terms
            .iter()
            .map(|(&(a, b), c)| (a, b, c.to_string()))
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<(i32, i32, String)>::deserialize(deserializer)?;
        let mut out = LaurentPoly::zero();
        for (a, b, c) in rows {
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            out.add_term((a, b), c);
        }
        Ok(out)
    }
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn parse_rational(text: &str) -> Result<BigRational, RingError> {
    let text = text.trim();
    let err = || RingError::Parse {
        what: "rational",
        input: text.to_string(),
    };
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(text.parse().map_err(|_| err())?)),
    }
}

/// Serde adapter storing a rational as its `p/q` string.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(value: &BigRational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<BigRational, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_rational(&text).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> LaurentPoly {
        LaurentPoly::q()
    }
    fn t() -> LaurentPoly {
        LaurentPoly::t()
    }
    fn one() -> LaurentPoly {
        LaurentPoly::one()
    }

    #[test]
    fn expansions() {
        let a = &one() - &q();
        assert_eq!(
            &a * &a,
            LaurentPoly::from_terms([((0, 0), 1), ((2, 0), -2), ((4, 0), 1)])
        );
        let qt = &q() * &t();
        assert_eq!(
            &(&one() + &qt) * &(&one() - &qt),
            &one() - &LaurentPoly::q_monomial(1, 2, 2)
        );
        let x = LaurentPoly::from_terms([((3, -1), 7), ((0, 2), -4)]);
        assert!((&x + &(-&x)).is_zero());
        assert_eq!((&x + &(-&x)).num_terms(), 0);
    }

    #[test]
    fn bar_examples() {
        assert_eq!(
            LaurentPoly::q_monomial(1, 1, 2).bar(),
            LaurentPoly::q_monomial(1, -1, -2)
        );
        assert_eq!(LaurentPoly::constant(5).bar(), LaurentPoly::constant(5));
        let a = &one() + &(&q() * &t());
        assert_eq!(a.bar(), &one() + &LaurentPoly::q_monomial(1, -1, -1));
    }

    #[test]
    fn units() {
        assert!(LaurentPoly::q_monomial(-1, 2, 1).is_unit());
        assert!(!(&one() + &(&q() * &t())).is_unit());
        assert!(!LaurentPoly::zero().is_unit());
        assert!(!LaurentPoly::constant(2).is_unit());
    }

    #[test]
    fn eval_examples() {
        let qt1 = &one() + &(&q() * &t());
        assert_eq!(
            qt1.eval(&rational(2, 3), &rational(-9, 4)).unwrap(),
            rational(0, 1)
        );
        assert_eq!(
            q().eval(&rational(2, 3), &rational(17, 5)).unwrap(),
            rational(4, 9)
        );
        let a = &one() - &q();
        assert_eq!(
            (&a * &a).eval(&rational(1, 2), &rational(1, 1)).unwrap(),
            rational(9, 16)
        );
        assert_eq!(
            q().eval(&rational(0, 1), &rational(1, 1)),
            Err(RingError::ZeroSubstitution)
        );
        assert_eq!(
            q().eval(&rational(1, 1), &rational(0, 1)),
            Err(RingError::ZeroSubstitution)
        );
    }

    #[test]
    fn specialize_examples() {
        let qt1 = &one() + &(&q() * &t());
        assert!(qt1.specialize_t().is_zero());
        let a = &one() - &q();
        let m = &(&(&a * &a) * &qt1) * &(&one() - &t());
        assert!(m.specialize_t().is_zero());
        assert_eq!(
            (&one() - &t()).specialize_t(),
            &one() + &LaurentPoly::q_monomial(1, -1, 0)
        );
    }

    #[test]
    fn division() {
        let a = &one() - &q();
        let b = &one() + &(&q() * &t());
        let prod = &(&a * &b) * &LaurentPoly::monomial(-3, -5, 2);
        assert_eq!(
            prod.div_exact(&a),
            Some(&b * &LaurentPoly::monomial(-3, -5, 2))
        );
        assert_eq!(b.div_exact(&a), None);
        assert_eq!(
            LaurentPoly::constant(3).div_exact(&LaurentPoly::constant(2)),
            None
        );
        assert_eq!(
            LaurentPoly::constant(6).div_exact(&LaurentPoly::monomial(-2, 1, 1)),
            Some(LaurentPoly::monomial(-3, -1, -1))
        );
    }

    #[test]
    fn rendering() {
        let a = &one() - &q();
        assert_eq!((&a * &a).to_string(), "1 - 2*q + q^2");
        assert_eq!(LaurentPoly::q_monomial(-1, 2, 1).to_string(), "-q^2*t");
        assert_eq!(
            LaurentPoly::monomial(3, -1, -2).to_string(),
            "3*q^(-1/2)*t^-2"
        );
        assert_eq!(LaurentPoly::s().to_string(), "q^(1/2)");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(
            serde_json::to_string(&LaurentPoly::q_monomial(-1, 2, 1)).unwrap(),
            r#"[[4,1,"-1"]]"#
        );
        for text in ["0", "-q^2*t", "1 - 2*q + q^2", "3*q^(-1/2)*t^-2 + q^(3/2)"] {
            assert_eq!(text.parse::<LaurentPoly>().unwrap().to_string(), text);
        }
        assert!("q^".parse::<LaurentPoly>().is_err());
        assert!("1 + ".parse::<LaurentPoly>().is_err());
        assert!("x".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("2/3").unwrap(), rational(2, 3));
        assert_eq!(parse_rational("-6/4").unwrap(), rational(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), rational(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    pub(crate) fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec(((-4i32..=4, -3i32..=3), -6i64..=6), 0..6)
            .prop_map(LaurentPoly::from_terms)
    }

    fn arb_nonzero_rational() -> impl Strategy<Value = BigRational> {
        (1i64..=7, 1i64..=7, any::<bool>())
            .prop_map(|(n, d, neg)| rational(if neg { -n } else { n }, d))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            prop_assert_eq!(&a * &one(), a.clone());
            prop_assert!((&a * &LaurentPoly::zero()).is_zero());
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn bar_is_involutive_homomorphism(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        }

        #[test]
        fn eval_is_homomorphism(a in arb_poly(), b in arb_poly(),
                                s0 in arb_nonzero_rational(), t0 in arb_nonzero_rational()) {
            let ea = a.eval(&s0, &t0).unwrap();
            let eb = b.eval(&s0, &t0).unwrap();
            prop_assert_eq!((&a * &b).eval(&s0, &t0).unwrap(), &ea * &eb);
            prop_assert_eq!((&a + &b).eval(&s0, &t0).unwrap(), ea + eb);
        }

        #[test]
        fn specialize_matches_eval(a in arb_poly(), b in arb_poly(),
                                   s0 in arb_nonzero_rational(), t0 in arb_nonzero_rational()) {
            let sp = a.specialize_t();
            prop_assert!(sp.is_t_free());
            let t_special = -(s0.pow(-2));
            prop_assert_eq!(sp.eval(&s0, &t0).unwrap(), a.eval(&s0, &t_special).unwrap());
            prop_assert_eq!((&a * &b).specialize_t(), &sp * &b.specialize_t());
        }

        #[test]
        fn div_exact_inverts_mul(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        }

        #[test]
        fn text_and_json_round_trip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a.clone());
            let json = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<LaurentPoly>(&json).unwrap(), a);
        }
    }
}
