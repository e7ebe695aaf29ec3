//! The specialisation `t = −q⁻¹` and the comparison of the specialised
//! Krammer module with the `(n−2,2)` Temperley-Lieb module.
//!
//! Protocol at a rational sample `s0 = q^½`:
//!
//! 1. Evaluate the Krammer generators at `q = s0²`, `t = −s0⁻²`.
//! 2. Let them act on row vectors, i.e. use the transposed matrices. (With
//!    the column action the `(n−2,2)` module sits inside `V` as a submodule
//!    instead, and the closure below would be all of `V`.)
//! 3. `W` = invariant closure of the column spaces of every `ρ(z_{i,j})`,
//!    `|i−j| = 1`.
//! 4. Induce the generators on `V/W`, check the Hecke and `z` relations
//!    there, and look for an invertible intertwiner with `ρ_S`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::krammer::{self, KrammerError};
use crate::linalg::{
    invariant_closure, q_column_space, quotient_action, solve_intertwiner, LinalgError, QMatrix,
    Subspace,
};
use crate::ring::{rational_string, BigRational, LaurentPoly, RingError};
use crate::sample::{check_admissible, InadmissibleSample};
use crate::tl::{self, TlError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReduceError {
    #[error("the quotient construction needs n >= 4, got {0}")]
    TooFewStrands(usize),
    #[error(transparent)]
    Inadmissible(#[from] InadmissibleSample),
    #[error("degenerate sample q^(1/2) = {s0} for n = {n}: quotient has dimension {found}, expected {expected}")]
    Degenerate {
        n: usize,
        s0: BigRational,
        found: usize,
        expected: usize,
    },
    #[error("no invertible intertwiner found for n = {n} at q^(1/2) = {s0}")]
    NoIntertwiner { n: usize, s0: BigRational },
    #[error("samples disagree on dim W for n = {n}: {dims:?}")]
    SampleDisagreement { n: usize, dims: Vec<usize> },
    #[error(transparent)]
    Tl(#[from] TlError),
    #[error(transparent)]
    Krammer(#[from] KrammerError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

impl ReduceError {
    pub fn is_inadmissible(&self) -> bool {
        matches!(
            self,
            ReduceError::Inadmissible(_) | ReduceError::Tl(TlError::Inadmissible(_))
        )
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            ReduceError::Degenerate { .. }
                | ReduceError::SampleDisagreement { .. }
                | ReduceError::Tl(TlError::Degenerate { .. })
        )
    }
}

pub type Pair = (usize, usize);

/// Multipliers `m_{i,j}` with `ι(v_{i,j}) = m_{i,j} v'_{i,j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct IotaModel {
    pub n: usize,
    pub multipliers: Vec<(Pair, LaurentPoly)>,
}

pub fn one_minus_q_squared() -> LaurentPoly {
    let a = &LaurentPoly::one() - &LaurentPoly::q();
    &a * &a
}

pub fn one_plus_qt() -> LaurentPoly {
    &LaurentPoly::one() + &LaurentPoly::q_monomial(1, 1, 1)
}

pub fn one_minus_t() -> LaurentPoly {
    &LaurentPoly::one() - &LaurentPoly::t()
}

fn multiplier(i: usize, j: usize) -> LaurentPoly {
    let base = one_minus_q_squared();
    if j == i + 1 {
        &(&base * &one_plus_qt()) * &one_minus_t()
    } else if (i, j) == (1, 3) {
        &base * &one_plus_qt()
    } else {
        base
    }
}

impl IotaModel {
    pub fn multiplier(&self, i: usize, j: usize) -> Option<&LaurentPoly> {
        self.multipliers
            .iter()
            .find(|(p, _)| *p == (i, j))
            .map(|(_, m)| m)
    }

    /// Pairs whose multiplier vanishes at `t = −q⁻¹`.
    pub fn kernel_at_specialization(&self) -> Vec<Pair> {
        self.multipliers
            .iter()
            .filter(|(_, m)| m.specialize_t().is_zero())
            .map(|(p, _)| *p)
            .collect()
    }

    pub fn survivors_at_specialization(&self) -> Vec<Pair> {
        self.multipliers
            .iter()
            .filter(|(_, m)| !m.specialize_t().is_zero())
            .map(|(p, _)| *p)
            .collect()
    }
}

pub fn iota_multipliers(n: usize) -> IotaModel {
    let multipliers = krammer::PairBasis::new(n)
        .pairs()
        .iter()
        .map(|&(i, j)| ((i, j), multiplier(i, j)))
        .collect();
    IotaModel { n, multipliers }
}

pub fn iota_kernel_at_specialization(n: usize) -> Vec<Pair> {
    iota_multipliers(n).kernel_at_specialization()
}

/// Krammer generators `σ_1..σ_{n−1}` at `q = s0²`, `t = −q⁻¹`, in the
/// column convention of [`krammer::krammer_generator`].
pub fn lk_specialized_generators(n: usize, s0: &BigRational) -> Result<Vec<QMatrix>, ReduceError> {
    check_admissible(s0)?;
    let t0 = -(s0 * s0).recip();
    (1..n)
        .map(|i| Ok(krammer::krammer_generator(n, i, 1)?.eval(s0, &t0)?))
        .collect()
}

/// `z_{a,b}` evaluated on matrices.
pub fn z_matrix(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let id = QMatrix::identity(a.rows());
    let ab = a * b;
    let ba = b * a;
    (&ab * a)
        .try_sub(&ab)
        .and_then(|m| m.try_sub(&ba))
        .and_then(|m| m.try_add(a))
        .and_then(|m| m.try_add(b))
        .and_then(|m| m.try_sub(&id))
        .expect("square matrices of one size")
}

/// Ordered adjacent pairs `(k, k+1)` and `(k+1, k)`, zero-based.
fn adjacent_pairs(generators: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..generators.saturating_sub(1)).flat_map(|k| [(k, k + 1), (k + 1, k)])
}

pub fn braid_relations_hold(gens: &[QMatrix]) -> bool {
    (0..gens.len()).all(|i| {
        (i + 1..gens.len()).all(|j| {
            let (a, b) = (&gens[i], &gens[j]);
            if j == i + 1 {
                &(a * b) * a == &(b * a) * b
            } else {
                a * b == b * a
            }
        })
    })
}

pub fn hecke_holds(gens: &[QMatrix], q0: &BigRational) -> bool {
    gens.iter().all(|g| {
        let left = g.add_scalar(&-BigRational::one());
        let right = g.add_scalar(q0);
        (&left * &right).is_zero()
    })
}

pub fn z_relations_hold(gens: &[QMatrix]) -> bool {
    adjacent_pairs(gens.len()).all(|(i, j)| z_matrix(&gens[i], &gens[j]).is_zero())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationChecks {
    pub braid: bool,
    pub hecke: bool,
    pub z: bool,
    pub dim_w_matches_iota_kernel: bool,
    pub intertwiner: bool,
}

impl RelationChecks {
    pub fn all(&self) -> bool {
        self.braid && self.hecke && self.z && self.dim_w_matches_iota_kernel && self.intertwiner
    }
}

/// Outcome of the quotient construction at one sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub n: usize,
    #[serde(with = "rational_string")]
    pub s0: BigRational,
    pub dim_ambient: usize,
    pub dim_w: usize,
    pub dim_quotient: usize,
    pub expected_dim: usize,
    pub iota_kernel_size: usize,
    pub quotient_generators: Vec<QMatrix>,
    pub intertwiner: Option<QMatrix>,
    pub checks: RelationChecks,
}

pub fn s_dimension(n: usize) -> usize {
    n * n.saturating_sub(3) / 2
}

pub fn lk_quotient(n: usize, s0: &BigRational) -> Result<QuotientReport, ReduceError> {
    if n < 4 {
        return Err(ReduceError::TooFewStrands(n));
    }
    let row_action: Vec<QMatrix> = lk_specialized_generators(n, s0)?
        .iter()
        .map(QMatrix::transpose)
        .collect();
    let d = krammer::dimension(n);
    let seed = adjacent_pairs(row_action.len()).fold(Subspace::zero(d), |acc, (i, j)| {
        acc.sum(&q_column_space(&z_matrix(&row_action[i], &row_action[j])))
    });
    let w = invariant_closure(&seed, &row_action)?;
    let quotient = row_action
        .iter()
        .map(|g| quotient_action(g, &w))
        .collect::<Result<Vec<_>, _>>()?;
    let expected = s_dimension(n);
    let dim_quotient = d - w.dim();
    log::debug!(
        "n = {n}, s0 = {s0}: dim W = {}, dim V/W = {dim_quotient}",
        w.dim()
    );
    if dim_quotient != expected {
        return Err(ReduceError::Degenerate {
            n,
            s0: s0.clone(),
            found: dim_quotient,
            expected,
        });
    }
    let q0 = s0 * s0;
    let iota_kernel_size = iota_kernel_at_specialization(n).len();
    let checks = RelationChecks {
        braid: braid_relations_hold(&quotient),
        hecke: hecke_holds(&quotient, &q0),
        z: z_relations_hold(&quotient),
        dim_w_matches_iota_kernel: w.dim() == iota_kernel_size,
        intertwiner: false,
    };
    Ok(QuotientReport {
        n,
        s0: s0.clone(),
        dim_ambient: d,
        dim_w: w.dim(),
        dim_quotient,
        expected_dim: expected,
        iota_kernel_size,
        quotient_generators: quotient,
        intertwiner: None,
        checks,
    })
}

/// Runs [`lk_quotient`] and exhibits an invertible `T` with
/// `T·Q_k = ρ_S(σ_k)·T` for every generator.
pub fn verify_theorem_tl(n: usize, s0: &BigRational) -> Result<QuotientReport, ReduceError> {
    let mut report = lk_quotient(n, s0)?;
    let s_gens = tl::s_braid_matrices(n, s0)?;
    let t = solve_intertwiner(&report.quotient_generators, &s_gens)?
        .ok_or_else(|| ReduceError::NoIntertwiner { n, s0: s0.clone() })?;
    report.checks.intertwiner = report
        .quotient_generators
        .iter()
        .zip(&s_gens)
        .all(|(a, b)| &t * a == b * &t);
    report.intertwiner = Some(t);
    Ok(report)
}

/// Runs [`verify_theorem_tl`] at every sample and requires all of them to
/// agree on `dim W`.
pub fn verify_samples(
    n: usize,
    samples: &[BigRational],
) -> Result<Vec<QuotientReport>, ReduceError> {
    let reports = samples
        .iter()
        .map(|s0| verify_theorem_tl(n, s0))
        .collect::<Result<Vec<_>, _>>()?;
    let dims: Vec<usize> = reports.iter().map(|r| r.dim_w).collect();
    if dims.windows(2).any(|w| w[0] != w[1]) {
        return Err(ReduceError::SampleDisagreement { n, dims });
    }
    Ok(reports)
}

/// `det ρ(σ_1)` at the sample, for comparison with the symbolic unit.
pub fn specialized_determinant(n: usize, s0: &BigRational) -> Result<BigRational, ReduceError> {
    let gens = lk_specialized_generators(n, s0)?;
    let g = gens.first().ok_or(ReduceError::TooFewStrands(n))?;
    Ok(crate::linalg::q_det(g)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q_rank;
    use crate::ring::rational;

    #[test]
    fn multipliers() {
        let m4 = iota_multipliers(4);
        assert_eq!(m4.multipliers.len(), 6);
        let full = &(&one_minus_q_squared() * &one_plus_qt()) * &one_minus_t();
        assert_eq!(m4.multiplier(2, 3), Some(&full));
        assert_eq!(
            m4.multiplier(1, 3),
            Some(&(&one_minus_q_squared() * &one_plus_qt()))
        );
        assert_eq!(
            iota_multipliers(5).multiplier(2, 5),
            Some(&one_minus_q_squared())
        );
        for n in 2..=7 {
            for (_, m) in iota_multipliers(n).multipliers {
                assert!(full.div_exact(&m).is_some());
            }
        }
    }

    #[test]
    fn kernels() {
        assert_eq!(
            iota_kernel_at_specialization(4),
            vec![(1, 2), (1, 3), (2, 3), (3, 4)]
        );
        assert_eq!(
            iota_multipliers(4).survivors_at_specialization(),
            vec![(1, 4), (2, 4)]
        );
        let m5 = iota_multipliers(5);
        assert_eq!(m5.kernel_at_specialization().len(), 5);
        assert_eq!(m5.survivors_at_specialization().len(), 5);
        for n in 4..=7 {
            assert_eq!(
                iota_multipliers(n).survivors_at_specialization(),
                tl::s_basis_pairs(n)
            );
        }
    }

    #[test]
    fn specialized_generators() {
        let g = lk_specialized_generators(2, &rational(2, 3)).unwrap();
        assert_eq!(
            g,
            vec![QMatrix::from_rows(vec![vec![rational(4, 9)]]).unwrap()]
        );
        let g4 = lk_specialized_generators(4, &rational(2, 3)).unwrap();
        assert!(g4.iter().all(|m| q_rank(m) == 6));
        assert!(braid_relations_hold(&g4));
        assert!(lk_specialized_generators(4, &rational(-1, 1)).is_err());
    }

    #[test]
    fn determinant_consistency() {
        let s0 = rational(3, 5);
        let t0 = -(&s0 * &s0).recip();
        for n in 2..=5 {
            let symbolic = krammer::determinant_unit(n)
                .unwrap()
                .eval(&s0, &t0)
                .unwrap();
            assert_eq!(specialized_determinant(n, &s0).unwrap(), symbolic);
        }
    }

    #[test]
    fn column_action_closure_is_everything() {
        let gens = lk_specialized_generators(4, &rational(2, 3)).unwrap();
        let seed = adjacent_pairs(3).fold(Subspace::zero(6), |acc, (i, j)| {
            acc.sum(&q_column_space(&z_matrix(&gens[i], &gens[j])))
        });
        assert_eq!(invariant_closure(&seed, &gens).unwrap().dim(), 6);
    }

    #[test]
    fn quotient_n4() {
        let r = lk_quotient(4, &rational(2, 3)).unwrap();
        assert_eq!((r.dim_w, r.dim_quotient), (4, 2));
        assert!(r.checks.braid && r.checks.hecke && r.checks.z);
        assert!(r.checks.dim_w_matches_iota_kernel);
        assert_eq!(lk_quotient(5, &rational(2, 3)).unwrap().dim_quotient, 5);
    }

    #[test]
    fn isomorphism_small() {
        let r = verify_theorem_tl(4, &rational(2, 3)).unwrap();
        assert!(r.checks.all());
        let t = r.intertwiner.as_ref().unwrap();
        assert_eq!(q_rank(t), 2);
        let err = verify_theorem_tl(4, &rational(1, 1)).unwrap_err();
        assert!(err.is_inadmissible());
        assert_eq!(
            lk_quotient(3, &rational(2, 3)).unwrap_err(),
            ReduceError::TooFewStrands(3)
        );
    }

    #[test]
    fn report_json() {
        let r = verify_theorem_tl(4, &rational(3, 5)).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains(r#""s0":"3/5""#));
        assert_eq!(serde_json::from_str::<QuotientReport>(&json).unwrap(), r);
    }
}
