//! The `verify` suite: named invariant checks, run concurrently, reported in
//! name order.

use std::collections::BTreeSet;

use lkrep::braid::BraidWord;
use lkrep::krammer::{self, is_trivial, krammer_generator, words_equal};
use lkrep::linalg::QMatrix;
use lkrep::reduce::{self, iota_multipliers, s_dimension};
use lkrep::ring::{rational, BigRational};
use lkrep::sample::check_admissible;
use lkrep::tl::{self, diagram_basis, hecke_image, loop_value, z_image, TLElement};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub n_max: usize,
    pub seed: u64,
    pub samples: Vec<String>,
    pub checks: Vec<CheckResult>,
}

impl VerifySummary {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn any_degenerate(&self) -> bool {
        self.checks.iter().any(|c| c.degenerate)
    }
}

struct Failure {
    detail: String,
    degenerate: bool,
}

impl From<String> for Failure {
    fn from(detail: String) -> Self {
        Self {
            detail,
            degenerate: false,
        }
    }
}

type Outcome = Result<String, Failure>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), Failure> {
    if cond {
        Ok(())
    } else {
        Err(msg().into())
    }
}

fn text<E: ToString>(e: E) -> Failure {
    e.to_string().into()
}

struct Ctx {
    n_max: usize,
    seed: u64,
    samples: Vec<BigRational>,
}

fn braid_relations(ctx: &Ctx) -> Outcome {
    let mut pairs = 0;
    for n in 2..=ctx.n_max {
        let gens = (1..n)
            .map(|i| krammer_generator(n, i, 1))
            .collect::<Result<Vec<_>, _>>()
            .map_err(text)?;
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let (a, b) = (&*gens[i], &*gens[j]);
                let ok = if j == i + 1 {
                    &(a * b) * a == &(b * a) * b
                } else {
                    a * b == b * a
                };
                ensure(ok, || format!("n = {n}: s{} and s{}", i + 1, j + 1))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} generator pairs"))
}

fn inverse_generators(ctx: &Ctx) -> Outcome {
    for n in 2..=ctx.n_max {
        for i in 1..n {
            let g = krammer_generator(n, i, 1).map_err(text)?;
            let h = krammer_generator(n, i, -1).map_err(text)?;
            ensure((&*g * &*h).is_identity(), || format!("n = {n}, i = {i}"))?;
        }
    }
    Ok(format!("n = 2..{}", ctx.n_max))
}

fn determinant_units(ctx: &Ctx) -> Outcome {
    for n in 2..=ctx.n_max {
        let unit = krammer::determinant_unit(n).map_err(text)?;
        ensure(unit.is_unit(), || format!("n = {n}: det = {unit}"))?;
    }
    Ok("every generator determinant is a unit".into())
}

fn faithfulness_smoke(ctx: &Ctx) -> Outcome {
    let n = ctx.n_max.clamp(3, 4);
    let (mut words, mut offset) = (0, 0u64);
    while words < 200 {
        let seed = ctx.seed.wrapping_add(offset);
        let w = BraidWord::random(n, 1 + (offset % 12) as usize, seed).map_err(text)?;
        offset += 1;
        if w.exponent_sum() == 0 {
            continue;
        }
        ensure(!is_trivial(&w), || format!("{w} maps to the identity"))?;
        words += 1;
    }
    for k in 0..50u64 {
        let seed = ctx.seed.wrapping_add(1_000_000 + k);
        let w = BraidWord::random(n, 1 + (k % 12) as usize, seed).map_err(text)?;
        let v = w.random_rewrite(6, seed);
        ensure(words_equal(&w, &v).map_err(text)?, || format!("{w} vs {v}"))?;
    }
    Ok(format!("n = {n}: 200 nontrivial words, 50 rewrite pairs"))
}

fn tl_relations(ctx: &Ctx) -> Outcome {
    let delta = loop_value();
    for n in 2..=ctx.n_max {
        let e = (1..n)
            .map(|i| TLElement::e(n, i))
            .collect::<Result<Vec<_>, _>>()
            .map_err(text)?;
        for i in 0..e.len() {
            ensure(
                e[i].try_mul(&e[i]).map_err(text)? == e[i].scale(&delta),
                || format!("n = {n}: e_{} squared", i + 1),
            )?;
            for j in 0..e.len() {
                let lhs = e[i].try_mul(&e[j]).map_err(text)?;
                let ok = match i.abs_diff(j) {
                    0 => true,
                    1 => lhs.try_mul(&e[i]).map_err(text)? == e[i],
                    _ => lhs == e[j].try_mul(&e[i]).map_err(text)?,
                };
                ensure(ok, || format!("n = {n}: e_{} and e_{}", i + 1, j + 1))?;
            }
        }
    }
    Ok(format!("n = 2..{}", ctx.n_max))
}

fn catalan_counts(ctx: &Ctx) -> Outcome {
    let mut counts = Vec::new();
    let mut catalan: u64 = 1;
    for n in 1..=ctx.n_max {
        catalan = catalan * 2 * (2 * n as u64 - 1) / (n as u64 + 1);
        let basis = diagram_basis(n);
        let distinct: BTreeSet<_> = basis.diagrams().iter().collect();
        ensure(
            basis.len() as u64 == catalan && distinct.len() == basis.len(),
            || format!("n = {n}: {} diagrams, expected {catalan}", basis.len()),
        )?;
        ensure(basis.diagrams().iter().all(|d| d.is_planar()), || {
            format!("n = {n}: crossing")
        })?;
        counts.push(catalan.to_string());
    }
    Ok(counts.join(", "))
}

fn hecke_and_z(ctx: &Ctx) -> Outcome {
    for n in 2..=ctx.n_max {
        for i in 1..n {
            ensure(hecke_image(n, i).map_err(text)?.is_zero(), || {
                format!("n = {n}: Hecke at {i}")
            })?;
            if i + 1 < n {
                for (a, b) in [(i, i + 1), (i + 1, i)] {
                    ensure(z_image(n, a, b).map_err(text)?.is_zero(), || {
                        format!("n = {n}: z_({a},{b})")
                    })?;
                }
            }
        }
    }
    Ok(format!("n = 2..{}", ctx.n_max))
}

fn degenerate_or_text(e: impl std::fmt::Display, degenerate: bool) -> Failure {
    Failure {
        detail: e.to_string(),
        degenerate,
    }
}

fn s_dimensions(ctx: &Ctx) -> Outcome {
    let mut dims = Vec::new();
    for n in 4..=ctx.n_max {
        for s0 in &ctx.samples {
            let module = tl::s_module(n, s0).map_err(|e| {
                let degenerate = matches!(e, tl::TlError::Degenerate { .. });
                degenerate_or_text(e, degenerate)
            })?;
            ensure(module.dim() == s_dimension(n), || {
                format!("n = {n}: dim {}", module.dim())
            })?;
        }
        dims.push(s_dimension(n).to_string());
    }
    Ok(format!("dims {}", dims.join(", ")))
}

fn iota_kernel(ctx: &Ctx) -> Outcome {
    for n in 4..=ctx.n_max {
        let model = iota_multipliers(n);
        let kernel = model.kernel_at_specialization();
        let mut expected: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        expected.push((1, 3));
        expected.sort_unstable();
        ensure(kernel == expected, || format!("n = {n}: {kernel:?}"))?;
        ensure(
            model.survivors_at_specialization() == tl::s_basis_pairs(n),
            || format!("n = {n}: survivors"),
        )?;
    }
    Ok(format!("n = 4..{}", ctx.n_max))
}

fn quotient_isomorphism(ctx: &Ctx) -> Outcome {
    let mut dims = Vec::new();
    for n in 4..=ctx.n_max {
        let reports = reduce::verify_samples(n, &ctx.samples).map_err(|e| {
            let degenerate = e.is_degenerate();
            degenerate_or_text(e, degenerate)
        })?;
        for r in &reports {
            ensure(r.checks.all(), || {
                format!("n = {n}, s0 = {}: {:?}", r.s0, r.checks)
            })?;
        }
        dims.push(format!("{}/{}", reports[0].dim_w, reports[0].dim_quotient));
    }
    Ok(format!(
        "dim W/dim V/W for n = 4..{}: {}",
        ctx.n_max,
        dims.join(", ")
    ))
}

fn inadmissible_rejected(_: &Ctx) -> Outcome {
    for s0 in [rational(0, 1), rational(1, 1), rational(-1, 1)] {
        ensure(check_admissible(&s0).is_err(), || format!("{s0} accepted"))?;
        ensure(
            reduce::lk_quotient(4, &s0).is_err_and(|e| e.is_inadmissible()),
            || format!("quotient accepted {s0}"),
        )?;
    }
    Ok("0, 1, -1 rejected".into())
}

fn quotient_hecke(ctx: &Ctx) -> Outcome {
    for n in 4..=ctx.n_max {
        for s0 in &ctx.samples {
            let r = reduce::lk_quotient(n, s0).map_err(|e| {
                let degenerate = e.is_degenerate();
                degenerate_or_text(e, degenerate)
            })?;
            let q0 = s0 * s0;
            for g in &r.quotient_generators {
                let id = QMatrix::identity(g.rows());
                let shifted = g.try_sub(&id).map_err(text)?;
                ensure(!shifted.is_zero(), || {
                    format!("n = {n}, s0 = {s0}: generator acts trivially")
                })?;
                ensure((&shifted * &g.add_scalar(&q0)).is_zero(), || {
                    format!("n = {n}, s0 = {s0}")
                })?;
            }
        }
    }
    Ok(format!("n = 4..{}", ctx.n_max))
}

type NamedCheck = (&'static str, fn(&Ctx) -> Outcome);

const CHECKS: [NamedCheck; 12] = [
    ("braid-relations", braid_relations),
    ("catalan-counts", catalan_counts),
    ("determinant-units", determinant_units),
    ("faithfulness-smoke", faithfulness_smoke),
    ("hecke-z-vanish", hecke_and_z),
    ("inadmissible-rejected", inadmissible_rejected),
    ("inverse-generators", inverse_generators),
    ("iota-kernel", iota_kernel),
    ("quotient-hecke", quotient_hecke),
    ("quotient-isomorphism", quotient_isomorphism),
    ("s-dimension", s_dimensions),
    ("tl-relations", tl_relations),
];

pub fn run(n_max: usize, seed: u64, samples: Vec<BigRational>) -> VerifySummary {
    let ctx = Ctx {
        n_max,
        seed,
        samples,
    };
    let mut checks: Vec<CheckResult> = CHECKS
        .par_iter()
        .map(|(name, check)| {
            log::info!("running {name}");
            let (passed, detail, degenerate) = match check(&ctx) {
                Ok(detail) => (true, detail, false),
                Err(f) => (false, f.detail, f.degenerate),
            };
            CheckResult {
                name: name.to_string(),
                passed,
                detail,
                degenerate,
            }
        })
        .collect();
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    VerifySummary {
        n_max,
        seed,
        samples: ctx.samples.iter().map(ToString::to_string).collect(),
        checks,
    }
}
