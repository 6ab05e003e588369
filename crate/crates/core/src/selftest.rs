//! Built-in property suite over a fixed corpus of small graphs.
//!
//! Every check is an exact identity. The report is deterministic for a
//! given seed and trial count, so two runs serialize to identical JSON.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::calculus::{
    cutoff_rho, dchi, dchi_chain, derivative_at, exterior_derivative, expand_reconstruct, f_wedge_fast, wedge,
    wedge_chain,
};
use crate::clique::CliqueComplex;
use crate::cohomology;
use crate::error::Result;
use crate::forms::Form;
use crate::graph::{named, Graph, VertexId};
use crate::sample::{random_form, random_function};
use crate::uniqueness::{check_axioms, mutants, proof_trace, ExteriorDerivative};

/// The corpus: complete graphs K3..K5, cycles C4..C6, Petersen, octahedron.
pub fn corpus() -> Vec<(&'static str, Graph)> {
    vec![
        ("K3", named::complete(3)),
        ("K4", named::complete(4)),
        ("K5", named::complete(5)),
        ("C4", named::cycle(4)),
        ("C5", named::cycle(5)),
        ("C6", named::cycle(6)),
        ("petersen", named::petersen()),
        ("octahedron", named::octahedron()),
    ]
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Row {
    pub check: &'static str,
    pub graph: &'static str,
    pub instances: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SelftestReport {
    pub seed: u64,
    pub trials: usize,
    pub passed: bool,
    pub rows: Vec<Row>,
}

impl SelftestReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    pub fn table(&self) -> String {
        let mut out = format!("{:<20} {:<12} {:>9}  result\n", "check", "graph", "instances");
        for r in &self.rows {
            out.push_str(&format!(
                "{:<20} {:<12} {:>9}  {}\n",
                r.check,
                r.graph,
                r.instances,
                if r.passed { "pass" } else { "FAIL" }
            ));
        }
        out.push_str(if self.passed { "all checks passed\n" } else { "some checks FAILED\n" });
        out
    }
}

/// Runs the suite with `trials` random instances per check and graph.
pub fn run(trials: usize, seed: u64) -> Result<SelftestReport> {
    let mut rows = Vec::new();
    for (gi, (name, g)) in corpus().into_iter().enumerate() {
        // two empty levels on top so that d∘d is defined on every degree
        let omega = crate::clique::clique_number(&g);
        let cx = CliqueComplex::build(Arc::new(g), omega + 2)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(gi as u64);
        let top = cx.top_card();
        let mut push = |check, (instances, passed): (usize, bool)| {
            rows.push(Row {
                check,
                graph: name,
                instances,
                passed,
            })
        };

        push("d-squared", count(trials, |_| {
            let k = rng_degree(&mut rng, top.saturating_sub(1));
            let a = random_form(&mut rng, &cx, k, 0.5)?;
            Ok(exterior_derivative(&exterior_derivative(&a)?)?.is_zero())
        })?);

        push("leibniz", count(trials, |_| {
            let (a, b) = random_pair(&mut rng, &cx, top, 1)?;
            let lhs = exterior_derivative(&wedge(&a, &b)?)?;
            let mut second = wedge(&a, &exterior_derivative(&b)?)?;
            if a.degree() % 2 == 1 {
                second = second.neg();
            }
            Ok(lhs == wedge(&exterior_derivative(&a)?, &b)?.add(&second)?)
        })?);

        push("anticommutativity", count(trials, |_| {
            let (a, b) = random_pair(&mut rng, &cx, top, 0)?;
            let ba = wedge(&b, &a)?;
            let sign_flip = a.degree() * b.degree() % 2 == 1;
            Ok(wedge(&a, &b)? == if sign_flip { ba.neg() } else { ba })
        })?);

        push("function-wedge", count(trials, |_| {
            let f = random_function(&mut rng, &cx);
            let k = rng_degree(&mut rng, top.saturating_sub(1));
            let a = random_form(&mut rng, &cx, k, 0.6)?;
            Ok(f_wedge_fast(&f, &a)? == wedge(&f, &a)?)
        })?);

        push("dchi-chain", {
            let mut n = 0;
            let mut ok = true;
            for vs in short_tuples(cx.graph().n(), 2.min(top.saturating_sub(1))) {
                let factors: Vec<Form> = vs.iter().map(|&v| dchi(&cx, v)).collect::<Result<_>>()?;
                n += 1;
                ok &= dchi_chain(&cx, &vs)? == wedge_chain(&factors)?;
            }
            (n, ok)
        });

        push("expansion", count(trials, |_| {
            if top < 2 {
                return Ok(true);
            }
            let k = 1 + rng_degree(&mut rng, top - 2);
            let a = random_form(&mut rng, &cx, k, 0.5)?;
            Ok(expand_reconstruct(&a)? == a)
        })?);

        push("cutoff", {
            let mut n = 0;
            let mut ok = true;
            for card in 2..=top {
                for c in cx.level(card).iter().take(3) {
                    let rho = cutoff_rho(&cx, c)?;
                    let a = random_form(&mut rng, &cx, card - 2, 0.6)?;
                    let lhs = derivative_at(&f_wedge_fast(&rho, &a)?, c);
                    n += 1;
                    ok &= lhs == derivative_at(&a, c);
                }
            }
            (n, ok)
        });

        push("uniqueness", {
            let report = check_axioms(&ExteriorDerivative, &cx, trials.min(5), seed)?;
            let mut n = 1;
            let mut ok = report.passed();
            if top >= 3 {
                for m in mutants::catalogue(&cx) {
                    n += 1;
                    ok &= !check_axioms(m.as_ref(), &cx, trials.min(5), seed)?.passed();
                }
                for c in cx.level(3).iter().take(2) {
                    let a = random_form(&mut rng, &cx, 1, 0.7)?;
                    n += 1;
                    ok &= proof_trace(&a, c)?.holds();
                }
            }
            (n, ok)
        });

        push("cohomology", {
            let b = cohomology::betti(&cx)?;
            let alt: i64 = b.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
            let mats = cohomology::coboundary_matrices(&cx)?;
            let mut ok = alt == cohomology::euler_characteristic(&cx) && b.first() == Some(&cx.graph().component_count());
            for w in mats.windows(2) {
                ok &= cohomology::product(&w[1], &w[0])?.iter().flatten().all(|&x| x == 0);
            }
            (mats.len() + 1, ok)
        });
    }
    let passed = rows.iter().all(|r| r.passed);
    Ok(SelftestReport {
        seed,
        trials,
        passed,
        rows,
    })
}

fn count(trials: usize, mut f: impl FnMut(usize) -> Result<bool>) -> Result<(usize, bool)> {
    let mut ok = true;
    for i in 0..trials {
        ok &= f(i)?;
    }
    Ok((trials, ok))
}

fn rng_degree(rng: &mut ChaCha8Rng, max: usize) -> usize {
    use rand::Rng;
    rng.gen_range(0..=max)
}

/// Random forms of degrees `r, s` with `r + s + 1 + extra <= top`.
fn random_pair(rng: &mut ChaCha8Rng, cx: &Arc<CliqueComplex>, top: usize, extra: usize) -> Result<(Form, Form)> {
    let budget = top.saturating_sub(1 + extra);
    let r = rng_degree(rng, budget.min(1));
    let s = rng_degree(rng, (budget - r).min(1));
    Ok((random_form(rng, cx, r, 0.6)?, random_form(rng, cx, s, 0.6)?))
}

/// All vertex tuples of length `1..=max_len` (repeats included).
pub fn short_tuples(n: usize, max_len: usize) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<VertexId>> = vec![vec![]];
    for _ in 0..max_len {
        let next: Vec<Vec<VertexId>> = frontier
            .iter()
            .flat_map(|t| {
                (0..n).map(move |v| {
                    let mut u = t.clone();
                    u.push(VertexId(v));
                    u
                })
            })
            .collect();
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selftest_passes_and_is_deterministic() {
        let a = run(3, 0).unwrap();
        assert!(a.passed, "{}", a.table());
        let b = run(3, 0).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }
}
