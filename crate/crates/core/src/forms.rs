//! Sparse k-tensors and alternating k-forms with exact coefficients.
//!
//! A [`Form`] stores one coefficient per canonical (sorted) clique and
//! recovers every other ordering by the sign of the sorting permutation. A
//! [`Tensor`] has no symmetry and stores each ordered tuple separately.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::clique::{Clique, CliqueComplex};
use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::permutation::sort_with_sign;
use crate::rational::{self, Rational};

/// Anything that can be evaluated on ordered vertex tuples.
pub trait Evaluate {
    fn degree(&self) -> usize;
    fn complex(&self) -> &Arc<CliqueComplex>;
    /// Value at `t`; `t.len()` must equal `degree() + 1`.
    fn value(&self, t: &[VertexId]) -> Rational;
}

/// An alternating k-form on a clique complex.
#[derive(Debug, Clone)]
pub struct Form {
    degree: usize,
    complex: Arc<CliqueComplex>,
    coeffs: BTreeMap<Clique, Rational>,
}

impl PartialEq for Form {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && Arc::ptr_eq(&self.complex, &other.complex)
            && self.coeffs == other.coeffs
    }
}

impl Eq for Form {}

impl Form {
    /// The zero form of degree `k`. Requires level `k + 1` to exist.
    pub fn zero(complex: &Arc<CliqueComplex>, degree: usize) -> Result<Form> {
        complex.require_card(degree + 1)?;
        Ok(Form {
            degree,
            complex: Arc::clone(complex),
            coeffs: BTreeMap::new(),
        })
    }

    /// Builds a form from `(vertex tuple, value)` pairs. Tuples may be in any
    /// order; the sorting sign is applied. Repeated cliques accumulate.
    pub fn from_entries<I>(complex: &Arc<CliqueComplex>, degree: usize, entries: I) -> Result<Form>
    where
        I: IntoIterator<Item = (Vec<VertexId>, Rational)>,
    {
        let mut form = Form::zero(complex, degree)?;
        for (tuple, value) in entries {
            if tuple.len() != degree + 1 {
                return Err(Error::ArityMismatch {
                    expected: degree + 1,
                    got: tuple.len(),
                });
            }
            let ids: Vec<usize> = tuple.iter().map(|v| v.0).collect();
            let (sorted, sign) = sort_with_sign(&tuple).ok_or_else(|| Error::NotAClique(ids.clone()))?;
            let clique = Clique::from_sorted_unchecked(sorted);
            if !complex.contains(&clique) {
                return Err(Error::NotAClique(ids));
            }
            let v = if sign < 0 { -value } else { value };
            form.accumulate(clique, v);
        }
        Ok(form)
    }

    /// Unit coefficient on a single canonical clique.
    pub fn basis(complex: &Arc<CliqueComplex>, clique: &Clique) -> Result<Form> {
        if clique.is_empty() {
            return Err(Error::Domain("basis clique must be non-empty".into()));
        }
        let mut form = Form::zero(complex, clique.len() - 1)?;
        if !complex.contains(clique) {
            return Err(Error::NotAClique(clique.ids()));
        }
        form.coeffs.insert(clique.clone(), rational::one());
        Ok(form)
    }

    /// Builds a 0-form from a per-vertex function.
    pub fn from_fn0(complex: &Arc<CliqueComplex>, f: impl Fn(VertexId) -> Rational) -> Form {
        let mut form = Form::zero(complex, 0).expect("level 1 always exists");
        for v in complex.graph().vertices() {
            form.accumulate(Clique::from_sorted_unchecked(vec![v]), f(v));
        }
        form
    }

    /// The constant 0-form `c`.
    pub fn constant(complex: &Arc<CliqueComplex>, c: Rational) -> Form {
        Form::from_fn0(complex, |_| c.clone())
    }

    pub(crate) fn from_map(complex: &Arc<CliqueComplex>, degree: usize, coeffs: BTreeMap<Clique, Rational>) -> Form {
        debug_assert!(coeffs.values().all(|v| !v.is_zero()));
        Form {
            degree,
            complex: Arc::clone(complex),
            coeffs,
        }
    }

    pub(crate) fn accumulate(&mut self, clique: Clique, value: Rational) {
        if value.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(clique) {
            Entry::Vacant(e) => {
                e.insert(value);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += value;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn complex(&self) -> &Arc<CliqueComplex> {
        &self.complex
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient on a canonical clique (zero when absent).
    pub fn get(&self, clique: &Clique) -> Rational {
        self.coeffs.get(clique).cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn get_sorted(&self, sorted: &[VertexId]) -> Option<&Rational> {
        // BTreeMap<Clique, _> cannot be queried by slice without allocating.
        self.coeffs.get(&Clique::from_sorted_unchecked(sorted.to_vec()))
    }

    /// Non-zero entries in canonical clique order.
    pub fn entries(&self) -> impl Iterator<Item = (&Clique, &Rational)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Clique> {
        self.coeffs.keys()
    }

    /// Evaluates at an arbitrary ordered tuple.
    pub fn eval(&self, t: &[VertexId]) -> Result<Rational> {
        if t.len() != self.degree + 1 {
            return Err(Error::ArityMismatch {
                expected: self.degree + 1,
                got: t.len(),
            });
        }
        Ok(self.value(t))
    }

    pub fn same_complex(&self, other: &Form) -> bool {
        Arc::ptr_eq(&self.complex, &other.complex)
    }

    fn check_compatible(&self, other: &Form) -> Result<()> {
        if !self.same_complex(other) {
            return Err(Error::ComplexMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (c, v) in &other.coeffs {
            out.accumulate(c.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Form) -> Result<Form> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Form {
        if c.is_zero() {
            return Form::from_map(&self.complex, self.degree, BTreeMap::new());
        }
        let coeffs = self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        Form::from_map(&self.complex, self.degree, coeffs)
    }

    pub fn neg(&self) -> Form {
        let coeffs = self.coeffs.iter().map(|(k, v)| (k.clone(), -v)).collect();
        Form::from_map(&self.complex, self.degree, coeffs)
    }

    /// The form keeping only the coefficient on `clique`.
    pub fn restrict_to(&self, clique: &Clique) -> Form {
        let mut coeffs = BTreeMap::new();
        if let Some(v) = self.coeffs.get(clique) {
            coeffs.insert(clique.clone(), v.clone());
        }
        Form::from_map(&self.complex, self.degree, coeffs)
    }

    /// First canonical clique where `self` and `other` differ, with both values.
    pub fn first_difference(&self, other: &Form) -> Option<(Clique, Rational, Rational)> {
        let mut keys: Vec<&Clique> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter().find_map(|c| {
            let a = self.get(c);
            let b = other.get(c);
            (a != b).then(|| (c.clone(), a, b))
        })
    }
}

impl Evaluate for Form {
    fn degree(&self) -> usize {
        self.degree
    }

    fn complex(&self) -> &Arc<CliqueComplex> {
        &self.complex
    }

    fn value(&self, t: &[VertexId]) -> Rational {
        debug_assert_eq!(t.len(), self.degree + 1);
        match sort_with_sign(t) {
            None => Rational::zero(),
            Some((sorted, sign)) => match self.get_sorted(&sorted) {
                None => Rational::zero(),
                Some(v) if sign < 0 => -v,
                Some(v) => v.clone(),
            },
        }
    }
}

/// χ^v: the 0-form equal to 1 at `v` and 0 elsewhere.
pub fn chi(complex: &Arc<CliqueComplex>, v: VertexId) -> Result<Form> {
    complex.graph().check(v)?;
    Form::basis(complex, &Clique::from_sorted_unchecked(vec![v]))
}

/// A general k-tensor supported on ordered tuples of (k+1)-cliques.
#[derive(Debug, Clone)]
pub struct Tensor {
    degree: usize,
    complex: Arc<CliqueComplex>,
    coeffs: BTreeMap<Vec<VertexId>, Rational>,
}

impl PartialEq for Tensor {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && Arc::ptr_eq(&self.complex, &other.complex)
            && self.coeffs == other.coeffs
    }
}

impl Tensor {
    pub fn zero(complex: &Arc<CliqueComplex>, degree: usize) -> Result<Tensor> {
        complex.require_card(degree + 1)?;
        Ok(Tensor {
            degree,
            complex: Arc::clone(complex),
            coeffs: BTreeMap::new(),
        })
    }

    /// Sets the value on an ordered tuple whose underlying set must be a clique.
    pub fn set(&mut self, t: Vec<VertexId>, value: Rational) -> Result<()> {
        if t.len() != self.degree + 1 {
            return Err(Error::ArityMismatch {
                expected: self.degree + 1,
                got: t.len(),
            });
        }
        let ids: Vec<usize> = t.iter().map(|v| v.0).collect();
        let Some((sorted, _)) = sort_with_sign(&t) else {
            return Err(Error::NotAClique(ids));
        };
        if !self.complex.contains(&Clique::from_sorted_unchecked(sorted)) {
            return Err(Error::NotAClique(ids));
        }
        if value.is_zero() {
            self.coeffs.remove(&t);
        } else {
            self.coeffs.insert(t, value);
        }
        Ok(())
    }

    pub fn from_entries<I>(complex: &Arc<CliqueComplex>, degree: usize, entries: I) -> Result<Tensor>
    where
        I: IntoIterator<Item = (Vec<VertexId>, Rational)>,
    {
        let mut t = Tensor::zero(complex, degree)?;
        for (tuple, v) in entries {
            t.set(tuple, v)?;
        }
        Ok(t)
    }

    /// The same values viewed as a general tensor: every ordering of every
    /// support clique is stored explicitly.
    pub fn from_form(form: &Form) -> Tensor {
        let perms = crate::permutation::Permutation::all(form.degree + 1);
        let mut coeffs = BTreeMap::new();
        for (c, v) in form.entries() {
            for p in &perms {
                let value = if p.sign() < 0 { -v } else { v.clone() };
                coeffs.insert(p.permute(c.vertices()), value);
            }
        }
        Tensor {
            degree: form.degree,
            complex: Arc::clone(&form.complex),
            coeffs,
        }
    }

    pub(crate) fn from_map(complex: &Arc<CliqueComplex>, degree: usize, coeffs: BTreeMap<Vec<VertexId>, Rational>) -> Tensor {
        Tensor {
            degree,
            complex: Arc::clone(complex),
            coeffs,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn complex(&self) -> &Arc<CliqueComplex> {
        &self.complex
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<VertexId>, &Rational)> {
        self.coeffs.iter()
    }

    pub fn eval(&self, t: &[VertexId]) -> Result<Rational> {
        if t.len() != self.degree + 1 {
            return Err(Error::ArityMismatch {
                expected: self.degree + 1,
                got: t.len(),
            });
        }
        Ok(self.value(t))
    }
}

impl Evaluate for Tensor {
    fn degree(&self) -> usize {
        self.degree
    }

    fn complex(&self) -> &Arc<CliqueComplex> {
        &self.complex
    }

    fn value(&self, t: &[VertexId]) -> Rational {
        self.coeffs.get(t).cloned().unwrap_or_else(Rational::zero)
    }
}
