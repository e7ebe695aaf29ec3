//! Acceptance gate. Runs every criterion, prints one line each and exits
//! nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use lkrep::braid::BraidWord;
use lkrep::krammer::{is_trivial, krammer_generator, words_equal};
use lkrep::linalg::{q_det, QMatrix};
use lkrep::reduce::{iota_multipliers, verify_theorem_tl, ReduceError};
use lkrep::ring::{rational, LaurentPoly};
use lkrep::sample::default_samples;
use lkrep::tl::{self, diagram_basis, hecke_image, loop_value, z_image, TLElement};
use num_traits::{One, Zero};

type Check = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ac1_braid_relations() -> Check {
    let mut checked = 0;
    for n in 2..=7 {
        let gens: Vec<_> = (1..n)
            .map(|i| krammer_generator(n, i, 1).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let (a, b) = (&*gens[i], &*gens[j]);
                let ok = if j == i + 1 {
                    &(a * b) * a == &(b * a) * b
                } else {
                    a * b == b * a
                };
                ensure(ok, || {
                    format!("n = {n}, generators {} and {}", i + 1, j + 1)
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} generator pairs, n = 2..7"))
}

fn ac2_two_strands() -> Check {
    let m = krammer_generator(2, 1, 1).map_err(|e| e.to_string())?;
    let expected = LaurentPoly::q_monomial(-1, 2, 1);
    ensure(
        m.rows() == 1 && m.cols() == 1 && *m.get(0, 0) == expected,
        || format!("got {m}"),
    )?;
    Ok(format!("rho(s1) = [{expected}]"))
}

fn ac3_faithfulness_smoke() -> Check {
    let mut words = 0;
    let mut seed = 0u64;
    while words < 1000 {
        let len = 1 + (seed % 12) as usize;
        let w = BraidWord::random(4, len, seed).map_err(|e| e.to_string())?;
        seed += 1;
        if !w.is_freely_reduced() || w.exponent_sum() == 0 {
            continue;
        }
        ensure(!is_trivial(&w), || format!("word {w} maps to the identity"))?;
        words += 1;
    }
    let mut changed = 0;
    for k in 0..200u64 {
        let w =
            BraidWord::random(4, 1 + (k % 12) as usize, 10_000 + k).map_err(|e| e.to_string())?;
        let v = w.random_rewrite(6, 20_000 + k);
        changed += usize::from(v != w);
        let eq = words_equal(&w, &v).map_err(|e| e.to_string())?;
        ensure(eq, || format!("{w} and its rewrite {v} differ"))?;
    }
    Ok(format!(
        "1000 nontrivial words, 200 rewrite pairs ({changed} textually distinct)"
    ))
}

/// Every perfect matching of `2n` points, filtered by non-crossing in the
/// cyclic order bottom `1..n`, top `n'..1'`.
fn brute_force_planar(n: usize) -> BTreeSet<Vec<(usize, usize)>> {
    fn all_matchings(
        points: &[usize],
        acc: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let Some((&first, rest)) = points.split_first() else {
            out.push(acc.clone());
            return;
        };
        for k in 0..rest.len() {
            let mut remaining = rest.to_vec();
            let other = remaining.remove(k);
            acc.push((first, other));
            all_matchings(&remaining, acc, out);
            acc.pop();
        }
    }
    let point_at = |c: usize| if c < n { c } else { 3 * n - 1 - c };
    let between = |a: usize, b: usize, x: usize| a.min(b) < x && x < a.max(b);
    let cyclic: Vec<usize> = (0..2 * n).collect();
    let mut all = Vec::new();
    all_matchings(&cyclic, &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|m| {
            m.iter()
                .all(|&(a, b)| m.iter().all(|&(c, d)| between(a, b, c) == between(a, b, d)))
        })
        .map(|m| {
            let mut pairs: Vec<(usize, usize)> = m
                .into_iter()
                .map(|(a, b)| {
                    let (x, y) = (point_at(a), point_at(b));
                    (x.min(y), x.max(y))
                })
                .collect();
            pairs.sort_unstable();
            pairs
        })
        .collect()
}

fn ac4_tl_relations() -> Check {
    let delta = loop_value();
    let err = |e: tl::TlError| e.to_string();
    for n in 2..=7 {
        let e: Vec<TLElement> = (1..n)
            .map(|i| TLElement::e(n, i))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        for i in 0..e.len() {
            let sq = e[i].try_mul(&e[i]).map_err(err)?;
            ensure(sq == e[i].scale(&delta), || {
                format!("e_{}^2, n = {n}", i + 1)
            })?;
            for j in 0..e.len() {
                if i.abs_diff(j) == 1 {
                    let eje = e[i]
                        .try_mul(&e[j])
                        .and_then(|x| x.try_mul(&e[i]))
                        .map_err(err)?;
                    ensure(eje == e[i], || {
                        format!("e_{} e_{} e_{}, n = {n}", i + 1, j + 1, i + 1)
                    })?;
                } else if i.abs_diff(j) > 1 {
                    let ab = e[i].try_mul(&e[j]).map_err(err)?;
                    let ba = e[j].try_mul(&e[i]).map_err(err)?;
                    ensure(ab == ba, || {
                        format!("e_{} e_{} commute, n = {n}", i + 1, j + 1)
                    })?;
                }
            }
        }
    }
    let catalan = [1, 1, 2, 5, 14, 42, 132, 429];
    for (n, &expected) in catalan.iter().enumerate().skip(1) {
        let basis = diagram_basis(n);
        let ours: BTreeSet<Vec<(usize, usize)>> =
            basis.diagrams().iter().map(|d| d.pairs()).collect();
        let oracle = brute_force_planar(n);
        ensure(basis.len() == expected && ours.len() == basis.len(), || {
            format!("n = {n}: {} diagrams", basis.len())
        })?;
        ensure(ours == oracle, || {
            format!("n = {n}: diagram set differs from enumeration")
        })?;
    }
    Ok("relations for n = 2..7; counts 1,2,5,14,42,132,429 match enumeration".into())
}

fn ac5_hecke_and_z() -> Check {
    let err = |e: tl::TlError| e.to_string();
    let mut count = 0;
    for n in 2..=7 {
        for i in 1..n {
            ensure(hecke_image(n, i).map_err(err)?.is_zero(), || {
                format!("Hecke, n = {n}, i = {i}")
            })?;
            count += 1;
            for j in [i.wrapping_sub(1), i + 1] {
                if (1..n).contains(&j) {
                    ensure(z_image(n, i, j).map_err(err)?.is_zero(), || {
                        format!("z_({i},{j}), n = {n}")
                    })?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} elements vanish, n = 2..7"))
}

fn ac6_s_dimensions() -> Check {
    let mut dims = Vec::new();
    for n in 4..=7 {
        let expected = n * (n - 3) / 2;
        for s0 in default_samples() {
            let module = tl::s_module(n, &s0).map_err(|e| e.to_string())?;
            ensure(module.dim() == expected, || {
                format!("n = {n}, s0 = {s0}: dim {}", module.dim())
            })?;
            let oracle: Vec<_> = (1..=n)
                .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
                .filter(|&(i, j)| j > (i + 1).max(3))
                .collect();
            ensure(module.basis_pairs == oracle, || {
                format!("n = {n}: basis pairs")
            })?;
        }
        dims.push(expected.to_string());
    }
    Ok(format!("dims {} at both samples", dims.join(", ")))
}

fn ac7_iota_kernel() -> Check {
    for n in 4..=7 {
        let model = iota_multipliers(n);
        let kernel: BTreeSet<_> = model.kernel_at_specialization().into_iter().collect();
        let mut expected: BTreeSet<_> = (1..n).map(|i| (i, i + 1)).collect();
        expected.insert((1, 3));
        ensure(kernel == expected && kernel.len() == n, || {
            format!("n = {n}: kernel {kernel:?}")
        })?;
        let survivors = model.survivors_at_specialization().len();
        ensure(survivors == n * (n - 3) / 2, || {
            format!("n = {n}: {survivors} survivors")
        })?;
    }
    Ok("kernel size n, survivors n(n-3)/2, n = 4..7".into())
}

fn ac8_quotient_isomorphism() -> Check {
    let mut lines = Vec::new();
    for n in 4..=6 {
        for s0 in default_samples() {
            let r = verify_theorem_tl(n, &s0).map_err(|e| e.to_string())?;
            ensure(r.dim_quotient == n * (n - 3) / 2 && r.checks.all(), || {
                format!("n = {n}, s0 = {s0}: {:?}", r.checks)
            })?;
            // Re-derive the certificate from the report alone.
            let t = r.intertwiner.as_ref().ok_or("missing intertwiner")?;
            let s_gens = tl::s_braid_matrices(n, &s0).map_err(|e| e.to_string())?;
            ensure(!q_det(t).map_err(|e| e.to_string())?.is_zero(), || {
                "singular T".into()
            })?;
            let q0 = &s0 * &s0;
            for (a, b) in r.quotient_generators.iter().zip(&s_gens) {
                ensure(t * a == b * t, || {
                    format!("n = {n}, s0 = {s0}: T does not intertwine")
                })?;
                let id = QMatrix::identity(a.rows());
                let hecke = &a.try_sub(&id).map_err(|e| e.to_string())? * &a.add_scalar(&q0);
                ensure(hecke.is_zero(), || format!("n = {n}, s0 = {s0}: Hecke"))?;
            }
            lines.push(format!("n={n}@{s0}:{}", r.dim_w));
        }
    }
    Ok(format!("dim W per case [{}]", lines.join(" ")))
}

fn ac9_inadmissible() -> Check {
    let bad = [rational(1, 1), rational(-1, 1), rational(0, 1)];
    for s0 in &bad {
        match verify_theorem_tl(4, s0) {
            Err(e @ ReduceError::Inadmissible(_)) => {
                ensure(e.to_string().starts_with("inadmissible sample"), || {
                    e.to_string()
                })?;
            }
            other => return Err(format!("s0 = {s0}: {other:?}")),
        }
        ensure(tl::s_module(4, s0).is_err(), || {
            format!("s_module accepted {s0}")
        })?;
    }
    let q_squared_one = bad
        .iter()
        .filter(|s0| (*s0 * *s0 * *s0 * *s0).is_one())
        .count();
    Ok(format!(
        "rejected {} samples ({q_squared_one} with q^2 = 1)",
        bad.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "AC1",
            "Krammer braid and far-commutation relations",
            ac1_braid_relations,
        ),
        ("AC2", "two-strand generator matrix", ac2_two_strands),
        ("AC3", "faithfulness smoke suite", ac3_faithfulness_smoke),
        (
            "AC4",
            "Temperley-Lieb relations and diagram counts",
            ac4_tl_relations,
        ),
        (
            "AC5",
            "Hecke quadratic and z images vanish",
            ac5_hecke_and_z,
        ),
        ("AC6", "dimension of the (n-2,2) module", ac6_s_dimensions),
        ("AC7", "iota multiplier kernel", ac7_iota_kernel),
        (
            "AC8",
            "specialised quotient is the (n-2,2) module",
            ac8_quotient_isomorphism,
        ),
        ("AC9", "inadmissible samples rejected", ac9_inadmissible),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("{id} PASS {name}: {detail} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("{id} FAIL {name}: {why} ({secs:.2}s)");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
