//! Tensor product, skew symmetrization, wedge product and the exterior
//! derivative on a clique complex, together with the closed-form shortcuts
//! for wedges with functions and products of `dχ^v`.
//!
//! Every result is an exact equality of rational coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::Zero;

use crate::clique::{Clique, CliqueComplex};
use crate::error::{Error, Result};
use crate::forms::{chi, Evaluate, Form, Tensor};
use crate::graph::VertexId;
use crate::permutation::{inversion_sign, sort_with_sign, Permutation};
use crate::rational::{self, factorial, Rational};

fn same_complex(a: &Arc<CliqueComplex>, b: &Arc<CliqueComplex>) -> Result<()> {
    if Arc::ptr_eq(a, b) {
        Ok(())
    } else {
        Err(Error::ComplexMismatch)
    }
}

/// `(α ⊗ β)(v_0, .., v_{r+s}) = α(v_0, .., v_r) · β(v_r, .., v_{r+s})`.
///
/// Note the shared middle argument `v_r`: a graph tensor product of degrees
/// `r` and `s` has `r + s + 1` arguments, not `r + s + 2`.
pub fn tensor_product<A: Evaluate, B: Evaluate>(a: &A, b: &B) -> Result<Tensor> {
    same_complex(a.complex(), b.complex())?;
    let cx = a.complex();
    let (r, s) = (a.degree(), b.degree());
    let card = r + s + 1;
    cx.require_card(card)?;
    let perms = Permutation::all(card);
    let mut coeffs = BTreeMap::new();
    for c in cx.level(card) {
        for p in &perms {
            let t = p.permute(c.vertices());
            let x = a.value(&t[..=r]);
            if x.is_zero() {
                continue;
            }
            let y = b.value(&t[r..]);
            if !y.is_zero() {
                coeffs.insert(t, x * y);
            }
        }
    }
    Ok(Tensor::from_map(cx, r + s, coeffs))
}

/// Signed average over all argument orders, normalized by `1/(r+1)!`.
pub fn skew_symmetrize(t: &Tensor) -> Form {
    let r = t.degree();
    let cx = t.complex();
    let perms = Permutation::all(r + 1);
    let norm = factorial(r + 1);
    let cliques: BTreeSet<Vec<VertexId>> = t
        .entries()
        .filter_map(|(k, _)| sort_with_sign(k).map(|(s, _)| s))
        .collect();
    let mut coeffs = BTreeMap::new();
    for c in cliques {
        let mut acc = Rational::zero();
        for p in &perms {
            let v = t.value(&p.permute(&c));
            if p.sign() < 0 {
                acc -= v;
            } else {
                acc += v;
            }
        }
        if !acc.is_zero() {
            coeffs.insert(Clique::from_sorted_unchecked(c), acc / &norm);
        }
    }
    Form::from_map(cx, r, coeffs)
}

/// Value of `α ∧ β` at one ordered tuple by the full permutation sum.
pub fn wedge_at(a: &Form, b: &Form, t: &[VertexId]) -> Rational {
    let perms = Permutation::all(t.len());
    wedge_at_with(a, b, t, &perms)
}

fn wedge_at_with(a: &Form, b: &Form, t: &[VertexId], perms: &[Permutation]) -> Rational {
    let r = a.degree();
    debug_assert_eq!(t.len(), r + b.degree() + 1);
    let mut acc = Rational::zero();
    for p in perms {
        let u = p.permute(t);
        let x = a.value(&u[..=r]);
        if x.is_zero() {
            continue;
        }
        let y = b.value(&u[r..]);
        if y.is_zero() {
            continue;
        }
        if p.sign() < 0 {
            acc -= x * y;
        } else {
            acc += x * y;
        }
    }
    acc / factorial(t.len())
}

/// `α ∧ β = 𝒜(α ⊗ β)`, computed per canonical `(r+s+1)`-clique.
///
/// Only cliques that are the union of an `α`-support clique and a
/// `β`-support clique meeting in exactly one vertex can be non-zero, since
/// every term of the permutation sum needs both factors non-zero.
pub fn wedge(a: &Form, b: &Form) -> Result<Form> {
    same_complex(a.complex(), b.complex())?;
    let cx = a.complex();
    let card = a.degree() + b.degree() + 1;
    cx.require_card(card)?;
    let mut candidates = BTreeSet::new();
    for x in a.support() {
        for y in b.support() {
            let shared = x.vertices().iter().filter(|v| y.contains(**v)).count();
            if shared != 1 {
                continue;
            }
            let mut u: Vec<VertexId> = x.vertices().iter().chain(y.vertices()).copied().collect();
            u.sort_unstable();
            u.dedup();
            let c = Clique::from_sorted_unchecked(u);
            if cx.contains(&c) {
                candidates.insert(c);
            }
        }
    }
    let perms = Permutation::all(card);
    let mut coeffs = BTreeMap::new();
    for c in candidates {
        let v = wedge_at_with(a, b, c.vertices(), &perms);
        if !v.is_zero() {
            coeffs.insert(c, v);
        }
    }
    Ok(Form::from_map(cx, card - 1, coeffs))
}

/// Left-nested product `((f_1 ∧ f_2) ∧ f_3) ∧ ..`.
///
/// The graph wedge is only associative on closed forms, so the nesting is
/// part of the definition.
pub fn wedge_chain(forms: &[Form]) -> Result<Form> {
    let (first, rest) = forms
        .split_first()
        .ok_or_else(|| Error::Domain("wedge_chain needs at least one factor".into()))?;
    rest.iter().try_fold(first.clone(), |acc, f| wedge(&acc, f))
}

/// `dα(c) = Σ_i (-1)^i α(c without c_i)` on one canonical clique.
pub fn derivative_at(a: &Form, c: &Clique) -> Rational {
    let mut acc = Rational::zero();
    for i in 0..c.len() {
        if let Some(v) = a.get_sorted(c.face(i).vertices()) {
            if i % 2 == 0 {
                acc += v;
            } else {
                acc -= v;
            }
        }
    }
    acc
}

/// The exterior derivative, an `(r+1)`-form on the `(r+2)`-cliques.
pub fn exterior_derivative(a: &Form) -> Result<Form> {
    let cx = a.complex();
    let card = a.degree() + 2;
    cx.require_card(card)?;
    let g = cx.graph();
    let mut candidates = BTreeSet::new();
    for face in a.support() {
        let first = face.vertices()[0];
        for &u in g.neighbors(first)? {
            if face.contains(u) || !face.vertices().iter().all(|&w| g.adjacent(u, w)) {
                continue;
            }
            let mut c = face.vertices().to_vec();
            c.push(u);
            c.sort_unstable();
            candidates.insert(Clique::from_sorted_unchecked(c));
        }
    }
    let mut coeffs = BTreeMap::new();
    for c in candidates {
        let v = derivative_at(a, &c);
        if !v.is_zero() {
            coeffs.insert(c, v);
        }
    }
    Ok(Form::from_map(cx, a.degree() + 1, coeffs))
}

pub fn is_closed(a: &Form) -> Result<bool> {
    Ok(exterior_derivative(a)?.is_zero())
}

/// `f ∧ α` for a 0-form `f`: the coefficient on each clique is scaled by the
/// mean of `f` over the clique's vertices.
pub fn f_wedge_fast(f: &Form, a: &Form) -> Result<Form> {
    same_complex(f.complex(), a.complex())?;
    if f.degree() != 0 {
        return Err(Error::Domain(format!(
            "f_wedge_fast expects a 0-form on the left, got degree {}",
            f.degree()
        )));
    }
    let n = rational::int((a.degree() + 1) as i64);
    let mut coeffs = BTreeMap::new();
    for (c, v) in a.entries() {
        let mut sum = Rational::zero();
        for &x in c.vertices() {
            if let Some(fx) = f.get_sorted(&[x]) {
                sum += fx;
            }
        }
        if !sum.is_zero() {
            coeffs.insert(c.clone(), sum * v / &n);
        }
    }
    Ok(Form::from_map(a.complex(), a.degree(), coeffs))
}

/// `dχ^v`.
pub fn dchi(cx: &Arc<CliqueComplex>, v: VertexId) -> Result<Form> {
    exterior_derivative(&chi(cx, v)?)
}

/// `dχ^{v_1} ∧ .. ∧ dχ^{v_k}` by its closed form: on a clique
/// `(x_0, .., x_k)` the value is `sgn τ / k!` when `v_i = x_{τ(i)}` for a
/// permutation `τ`, and 0 otherwise. Repeated vertices give the zero form.
pub fn dchi_chain(cx: &Arc<CliqueComplex>, vs: &[VertexId]) -> Result<Form> {
    let k = vs.len();
    cx.require_card(k + 1)?;
    let g = cx.graph();
    for &v in vs {
        g.check(v)?;
    }
    let mut coeffs = BTreeMap::new();
    let distinct = sort_with_sign(vs).is_some();
    if distinct && cx.is_clique_set(vs) {
        let value = rational::one() / factorial(k);
        let candidates: Vec<VertexId> = match vs.first() {
            None => g.vertices().collect(),
            Some(&v0) => g.neighbors(v0)?.to_vec(),
        };
        for u in candidates {
            if vs.contains(&u) || !vs.iter().all(|&w| g.adjacent(u, w)) {
                continue;
            }
            let mut c: Vec<VertexId> = vs.to_vec();
            c.push(u);
            c.sort_unstable();
            // τ(0) is the position of the free vertex, τ(i) that of v_i.
            let tau: Vec<usize> = std::iter::once(u)
                .chain(vs.iter().copied())
                .map(|x| c.binary_search(&x).unwrap())
                .collect();
            let v = if inversion_sign(&tau) < 0 { -value.clone() } else { value.clone() };
            coeffs.insert(Clique::from_sorted_unchecked(c), v);
        }
    }
    Ok(Form::from_map(cx, k, coeffs))
}

/// The 0-form `x ↦ α(x, v_1, .., v_k)`.
pub fn coefficient_form(a: &Form, vs: &[VertexId]) -> Result<Form> {
    if vs.len() != a.degree() {
        return Err(Error::ArityMismatch {
            expected: a.degree(),
            got: vs.len(),
        });
    }
    Ok(Form::from_fn0(a.complex(), |x| {
        let mut t = Vec::with_capacity(vs.len() + 1);
        t.push(x);
        t.extend_from_slice(vs);
        a.value(&t)
    }))
}

/// Ordered k-tuples `(v_1, .., v_k)` whose coefficient form `α_{v_1..v_k}`
/// is not identically zero: the ordered k-faces of support cliques.
pub fn expansion_tuples(a: &Form) -> Vec<Vec<VertexId>> {
    let k = a.degree();
    let perms = Permutation::all(k);
    let mut out = BTreeSet::new();
    for c in a.support() {
        for i in 0..c.len() {
            let face = c.face(i);
            for p in &perms {
                out.insert(p.permute(face.vertices()));
            }
        }
    }
    out.into_iter().collect()
}

/// One summand `α_{v} ∧ (dχ^{v_1} ∧ .. ∧ dχ^{v_k})` of the expansion.
pub fn expansion_term(a: &Form, vs: &[VertexId]) -> Result<Form> {
    let coef = coefficient_form(a, vs)?;
    let chain = dchi_chain(a.complex(), vs)?;
    f_wedge_fast(&coef, &chain)
}

/// Rebuilds a form of degree `k >= 1` as
/// `Σ_{v_1..v_k} α_{v_1..v_k} ∧ (dχ^{v_1} ∧ .. ∧ dχ^{v_k})`, summing only
/// over [`expansion_tuples`]. The result equals `α`.
pub fn expand_reconstruct(a: &Form) -> Result<Form> {
    if a.degree() == 0 {
        return Err(Error::Domain("expansion needs a form of degree at least 1".into()));
    }
    let mut acc = Form::zero(a.complex(), a.degree())?;
    for vs in expansion_tuples(a) {
        acc = acc.add(&expansion_term(a, &vs)?)?;
    }
    Ok(acc)
}

/// The cut-off 0-form equal to 1 on the vertices of `c` and 0 elsewhere.
pub fn cutoff_rho(cx: &Arc<CliqueComplex>, c: &Clique) -> Result<Form> {
    if c.is_empty() || !cx.contains(c) {
        return Err(Error::NotAClique(c.ids()));
    }
    Ok(Form::from_fn0(cx, |x| {
        if c.contains(x) {
            rational::one()
        } else {
            Rational::zero()
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::rational::{frac, int};
    use crate::sample::{random_form, random_function};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn v(i: usize) -> VertexId {
        VertexId(i)
    }

    fn full(g: crate::graph::Graph) -> Arc<CliqueComplex> {
        CliqueComplex::build_full(Arc::new(g)).unwrap()
    }

    fn clique(ids: &[usize]) -> Clique {
        Clique::new(ids.iter().copied().map(VertexId).collect()).unwrap()
    }

    #[test]
    fn tensor_product_of_functions_is_pointwise() {
        let cx = full(named::complete(3));
        let f = Form::from_fn0(&cx, |x| int(x.0 as i64 + 1));
        let g = Form::from_fn0(&cx, |x| int(2 * x.0 as i64 - 1));
        let t = tensor_product(&f, &g).unwrap();
        for x in cx.graph().vertices() {
            assert_eq!(t.eval(&[x]).unwrap(), f.eval(&[x]).unwrap() * g.eval(&[x]).unwrap());
        }
    }

    #[test]
    fn tensor_product_shares_middle_vertex() {
        let cx = full(named::complete(3));
        let a = Form::from_entries(&cx, 1, [(vec![v(0), v(1)], int(3))]).unwrap();
        let f = Form::from_fn0(&cx, |x| int(x.0 as i64 + 2));
        let t = tensor_product(&a, &f).unwrap();
        assert_eq!(t.eval(&[v(0), v(1)]).unwrap(), int(9));
        assert_eq!(t.eval(&[v(1), v(0)]).unwrap(), int(-6));
    }

    #[test]
    fn tensor_product_off_clique_is_zero() {
        let cx = full(named::cycle(4));
        let f = Form::constant(&cx, int(1));
        let a = Form::from_entries(&cx, 1, [(vec![v(0), v(1)], int(1))]).unwrap();
        let t = tensor_product(&f, &a).unwrap();
        assert_eq!(t.eval(&[v(0), v(2)]).unwrap(), int(0));
    }

    #[test]
    fn skew_symmetrize_cases() {
        let cx = full(named::complete(3));
        let t = Tensor::from_entries(&cx, 1, [(vec![v(0), v(1)], int(1))]).unwrap();
        let a = skew_symmetrize(&t);
        assert_eq!(a.eval(&[v(0), v(1)]).unwrap(), frac(1, 2));

        let sym = Tensor::from_entries(&cx, 1, [(vec![v(0), v(1)], int(4)), (vec![v(1), v(0)], int(4))]).unwrap();
        assert!(skew_symmetrize(&sym).is_zero());

        let alpha = Form::from_entries(&cx, 2, [(vec![v(0), v(1), v(2)], frac(-3, 4))]).unwrap();
        assert_eq!(skew_symmetrize(&Tensor::from_form(&alpha)), alpha);
    }

    #[test]
    fn wedge_small_cases() {
        let cx = full(named::complete(3));
        let f = Form::from_fn0(&cx, |x| int(x.0 as i64 + 1));
        let g = Form::from_fn0(&cx, |x| frac(1, x.0 as i64 + 3));
        let fg = wedge(&f, &g).unwrap();
        for x in cx.graph().vertices() {
            assert_eq!(fg.eval(&[x]).unwrap(), f.eval(&[x]).unwrap() * g.eval(&[x]).unwrap());
        }

        let a = Form::from_entries(&cx, 1, [(vec![v(0), v(1)], int(5)), (vec![v(1), v(2)], frac(1, 3))]).unwrap();
        assert_eq!(wedge(&Form::constant(&cx, int(1)), &a).unwrap(), a);

        let w = wedge(&dchi(&cx, v(1)).unwrap(), &dchi(&cx, v(2)).unwrap()).unwrap();
        assert_eq!(w.eval(&[v(0), v(1), v(2)]).unwrap(), frac(1, 2));
    }

    #[test]
    fn wedge_needs_capacity() {
        let cx = CliqueComplex::build(Arc::new(named::complete(4)), 2).unwrap();
        let a = Form::zero(&cx, 1).unwrap();
        assert_eq!(wedge(&a, &a), Err(Error::Capacity { required: 3, max_card: 2 }));
        assert_eq!(exterior_derivative(&a), Err(Error::Capacity { required: 3, max_card: 2 }));
    }

    #[test]
    fn wedge_rejects_foreign_complex() {
        let a = Form::constant(&full(named::complete(2)), int(1));
        let b = Form::constant(&full(named::complete(2)), int(1));
        assert_eq!(wedge(&a, &b), Err(Error::ComplexMismatch));
    }

    #[test]
    fn derivative_examples() {
        let cx = full(named::complete(3));
        let f = Form::from_entries(&cx, 0, [(vec![v(1)], int(1))]).unwrap();
        let df = exterior_derivative(&f).unwrap();
        assert_eq!(df.eval(&[v(0), v(1)]).unwrap(), int(1));

        let a = Form::from_entries(
            &cx,
            1,
            [(vec![v(0), v(1)], int(1)), (vec![v(1), v(2)], int(2)), (vec![v(0), v(2)], int(4))],
        )
        .unwrap();
        // bc - ac + ab
        assert_eq!(exterior_derivative(&a).unwrap().get(&clique(&[0, 1, 2])), int(-1));
        assert!(!is_closed(&Form::from_entries(&cx, 1, [(vec![v(0), v(1)], int(1))]).unwrap()).unwrap());
        assert!(is_closed(&Form::from_entries(&cx, 2, [(vec![v(0), v(1), v(2)], int(1))]).unwrap()).unwrap());
        assert!(is_closed(&df).unwrap());
    }

    #[test]
    fn derivative_matches_all_cliques_scan() {
        let cx = full(named::octahedron());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for k in 0..=1 {
            for _ in 0..10 {
                let a = random_form(&mut rng, &cx, k, 0.4).unwrap();
                let da = exterior_derivative(&a).unwrap();
                for c in cx.level(k + 2) {
                    assert_eq!(da.get(c), derivative_at(&a, c));
                }
            }
        }
    }

    #[test]
    fn fast_function_wedge_cases() {
        let cx = full(named::complete(4));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_form(&mut rng, &cx, 2, 1.0).unwrap();
        let c = Form::constant(&cx, frac(3, 7));
        assert_eq!(f_wedge_fast(&c, &a).unwrap(), a.scale(&frac(3, 7)));

        let x = chi(&cx, v(0)).unwrap();
        let w = f_wedge_fast(&x, &a).unwrap();
        let tri = clique(&[0, 1, 2]);
        assert_eq!(w.get(&tri), a.get(&tri) / int(3));
        assert!(w.get(&clique(&[1, 2, 3])).is_zero());

        for k in 0..=3 {
            let f = random_function(&mut rng, &cx);
            let a = random_form(&mut rng, &cx, k, 0.7).unwrap();
            assert_eq!(f_wedge_fast(&f, &a).unwrap(), wedge(&f, &a).unwrap());
        }
    }

    #[test]
    fn dchi_chain_cases() {
        let cx = full(named::complete(4));
        let one = dchi_chain(&cx, &[v(1)]).unwrap();
        assert_eq!(one.eval(&[v(0), v(1)]).unwrap(), int(1));
        assert_eq!(one, dchi(&cx, v(1)).unwrap());
        assert!(dchi_chain(&cx, &[v(2), v(2)]).unwrap().is_zero());
        let two = dchi_chain(&cx, &[v(1), v(2)]).unwrap();
        assert_eq!(two.eval(&[v(0), v(1), v(2)]).unwrap(), frac(1, 2));
        let nested = wedge(&dchi(&cx, v(1)).unwrap(), &dchi(&cx, v(2)).unwrap()).unwrap();
        assert_eq!(two, nested);
        assert_eq!(dchi_chain(&cx, &[]).unwrap(), Form::constant(&cx, int(1)));
    }

    #[test]
    fn coefficient_form_cases() {
        let cx = full(named::complete(3));
        let a = Form::from_entries(&cx, 1, [(vec![v(0), v(1)], int(6))]).unwrap();
        let c = coefficient_form(&a, &[v(1)]).unwrap();
        assert_eq!(c.eval(&[v(0)]).unwrap(), int(6));
        assert_eq!(c.eval(&[v(1)]).unwrap(), int(0));
        assert_eq!(c.eval(&[v(2)]).unwrap(), int(0));
        assert!(coefficient_form(&Form::zero(&cx, 1).unwrap(), &[v(0)]).unwrap().is_zero());
        assert!(coefficient_form(&a, &[]).is_err());

        let p = full(named::path(4));
        let b = Form::from_entries(&p, 1, [(vec![v(0), v(1)], int(1))]).unwrap();
        assert!(coefficient_form(&b, &[v(3)]).unwrap().is_zero());
    }

    #[test]
    fn expansion_on_triangle() {
        let cx = full(named::complete(3));
        let a = Form::from_entries(
            &cx,
            1,
            [(vec![v(0), v(1)], int(2)), (vec![v(0), v(2)], frac(-1, 3)), (vec![v(1), v(2)], int(7))],
        )
        .unwrap();
        assert_eq!(expand_reconstruct(&a).unwrap(), a);
        assert!(expand_reconstruct(&Form::zero(&cx, 1).unwrap()).unwrap().is_zero());
        assert!(expand_reconstruct(&Form::zero(&cx, 0).unwrap()).is_err());
    }

    #[test]
    fn cutoff_cases() {
        let cx = full(named::complete(4));
        let tri = clique(&[0, 1, 2]);
        let rho = cutoff_rho(&cx, &tri).unwrap();
        let sum = [0, 1, 2]
            .iter()
            .map(|&i| chi(&cx, v(i)).unwrap())
            .reduce(|a, b| a.add(&b).unwrap())
            .unwrap();
        assert_eq!(rho, sum);
        let drho = exterior_derivative(&rho).unwrap();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            assert!(drho.eval(&[v(i), v(j)]).unwrap().is_zero());
        }
        let p = full(named::path(3));
        assert!(cutoff_rho(&p, &clique(&[0, 2])).is_err());
    }
}
