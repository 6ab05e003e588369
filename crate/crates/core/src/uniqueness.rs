//! Axiom checking for candidate exterior derivatives.
//!
//! A linear operator that raises degree by one, squares to zero, satisfies
//! the graded Leibniz rule for the graph wedge and agrees with `d` on
//! functions must be `d` itself. [`check_axioms`] tests those hypotheses on
//! a finite clique complex by exhaustive basis checks plus seeded sampling,
//! and [`certify_equality`] compares the operator with `d` on every basis
//! form, which is complete for the finite complex given linearity.
//!
//! Every failure carries a [`Witness`] that can be replayed against the
//! operator with [`Witness::reproduce`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::calculus::{
    coefficient_form, cutoff_rho, derivative_at, dchi_chain, exterior_derivative, expansion_term,
    expansion_tuples, f_wedge_fast, wedge, wedge_at,
};
use crate::clique::{Clique, CliqueComplex};
use crate::error::{Error, Result};
use crate::forms::{chi, Form};
use crate::graph::VertexId;
use crate::io::{labels_of, FormJson, OperatorTable};
use crate::rational::{self, factorial, Rational};
use crate::sample::{random_form, random_function, small_rational};

/// A candidate operator `δ : A^k → A^{k+1}` on the forms of one complex.
pub trait Operator: Send + Sync {
    fn name(&self) -> &str;
    fn apply(&self, form: &Form) -> Result<Form>;
}

/// The exterior derivative itself.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExteriorDerivative;

impl Operator for ExteriorDerivative {
    fn name(&self) -> &str {
        "d"
    }

    fn apply(&self, form: &Form) -> Result<Form> {
        exterior_derivative(form)
    }
}

/// Wraps a closure as an operator.
pub struct FnOperator<F> {
    name: String,
    f: F,
}

impl<F> FnOperator<F>
where
    F: Fn(&Form) -> Result<Form> + Send + Sync,
{
    pub fn new(name: impl Into<String>, f: F) -> Self {
        FnOperator { name: name.into(), f }
    }
}

impl<F> Operator for FnOperator<F>
where
    F: Fn(&Form) -> Result<Form> + Send + Sync,
{
    fn name(&self) -> &str {
        &self.name
    }

    fn apply(&self, form: &Form) -> Result<Form> {
        (self.f)(form)
    }
}

/// An operator given by the images of basis forms and extended linearly.
/// Missing basis entries have zero image.
pub struct TableOperator {
    name: String,
    table: OperatorTable,
}

impl TableOperator {
    pub fn new(name: impl Into<String>, table: OperatorTable) -> Self {
        TableOperator {
            name: name.into(),
            table,
        }
    }

    /// Tabulates `op` on every basis form of degrees `0 ..= max_card - 2`.
    pub fn tabulate(op: &dyn Operator, cx: &Arc<CliqueComplex>) -> Result<OperatorTable> {
        let mut images = BTreeMap::new();
        for k in 0..=cx.max_card().saturating_sub(2) {
            let mut slot = BTreeMap::new();
            for c in cx.level(k + 1) {
                slot.insert(c.clone(), op.apply(&Form::basis(cx, c)?)?);
            }
            images.insert(k, slot);
        }
        Ok(OperatorTable {
            complex: Arc::clone(cx),
            images,
        })
    }
}

impl Operator for TableOperator {
    fn name(&self) -> &str {
        &self.name
    }

    fn apply(&self, form: &Form) -> Result<Form> {
        if !Arc::ptr_eq(form.complex(), &self.table.complex) {
            return Err(Error::ComplexMismatch);
        }
        let k = form.degree();
        let mut acc = Form::zero(form.complex(), k + 1)?;
        let Some(slot) = self.table.images.get(&k) else {
            return Ok(acc);
        };
        for (c, v) in form.entries() {
            if let Some(image) = slot.get(c) {
                if image.degree() != k + 1 {
                    // Surface the table's own degree so the checker can see it.
                    return Ok(image.scale(v));
                }
                acc = acc.add(&image.scale(v))?;
            }
        }
        Ok(acc)
    }
}

/// `δ` reassembled from the uniqueness argument: localize `α` with the
/// cut-off of each target clique, expand the localized form over products of
/// `dχ^v`, differentiate the coefficient functions and evaluate termwise.
#[derive(Debug, Clone, Copy, Default)]
pub struct ProofPipeline;

impl Operator for ProofPipeline {
    fn name(&self) -> &str {
        "proof-pipeline"
    }

    fn apply(&self, form: &Form) -> Result<Form> {
        let k = form.degree();
        if k == 0 {
            return exterior_derivative(form);
        }
        let cx = form.complex();
        cx.require_card(k + 2)?;
        let mut entries = Vec::new();
        for c in cx.level(k + 2) {
            let value = localized_termwise_sum(form, c)?.1;
            if !value.is_zero() {
                entries.push((c.vertices().to_vec(), value));
            }
        }
        Form::from_entries(cx, k + 1, entries)
    }
}

/// Returns the contributing tuples and `Σ_v (d(ρ∧α)_v ∧ dχ^{v_1} ∧ ..)(c)`.
fn localized_termwise_sum(form: &Form, c: &Clique) -> Result<(Vec<Vec<VertexId>>, Rational)> {
    let cx = form.complex();
    let rho = cutoff_rho(cx, c)?;
    let localized = f_wedge_fast(&rho, form)?;
    let tuples = expansion_tuples(&localized);
    let mut total = Rational::zero();
    for vs in &tuples {
        let coef = exterior_derivative(&coefficient_form(&localized, vs)?)?;
        let chain = dchi_chain(cx, vs)?;
        total += wedge_at(&coef, &chain, c.vertices());
    }
    Ok((tuples, total))
}

/// Which hypothesis or conclusion a verdict refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    DegreeRaising,
    SquaresToZero,
    Leibniz,
    AgreesOnFunctions,
    LinearitySampled,
    EqualityWithD,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::DegreeRaising => "degree_raising",
            Axiom::SquaresToZero => "squares_to_zero",
            Axiom::Leibniz => "leibniz",
            Axiom::AgreesOnFunctions => "agrees_on_functions",
            Axiom::LinearitySampled => "linearity_sampled",
            Axiom::EqualityWithD => "equality_with_d",
        }
    }
}

/// Concrete inputs on which an axiom fails.
///
/// `inputs` are the forms fed to the operator (one, or two for Leibniz and
/// linearity), `scalars` the linear-combination weights for linearity.
/// `clique` is where the two sides differ, `expected` the value the axiom
/// demands there and `actual` the value the operator produced.
#[derive(Debug, Clone)]
pub struct Witness {
    pub axiom: Axiom,
    pub inputs: Vec<Form>,
    pub scalars: Vec<Rational>,
    pub clique: Option<Clique>,
    pub expected: Option<Rational>,
    pub actual: Option<Rational>,
    pub note: String,
}

impl Witness {
    /// Re-runs the operator on the stored inputs and reports whether the
    /// failure is observed again.
    pub fn reproduce(&self, op: &dyn Operator) -> bool {
        match self.axiom {
            Axiom::DegreeRaising => call(op, &self.inputs[0]).is_err(),
            Axiom::SquaresToZero => squares_failure(op, &self.inputs[0]).is_some(),
            Axiom::Leibniz => leibniz_failure(op, &self.inputs[0], &self.inputs[1]).is_some(),
            Axiom::AgreesOnFunctions | Axiom::EqualityWithD => {
                equals_d_failure(op, &self.inputs[0]).is_some()
            }
            Axiom::LinearitySampled => linearity_failure(
                op,
                &self.inputs[0],
                &self.inputs[1],
                &self.scalars[0],
                &self.scalars[1],
            )
            .is_some(),
        }
    }
}

/// Outcome of one check.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub axiom: Axiom,
    pub passed: bool,
    /// Number of instances compared.
    pub checked: usize,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn pass(axiom: Axiom, checked: usize) -> Self {
        Verdict {
            axiom,
            passed: true,
            checked,
            witness: None,
        }
    }

    fn fail(axiom: Axiom, checked: usize, witness: Witness) -> Self {
        Verdict {
            axiom,
            passed: false,
            checked,
            witness: Some(witness),
        }
    }
}

/// Results of every axiom check plus the equality certificate.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub operator: String,
    pub trials: usize,
    pub seed: u64,
    pub degree_raising: Verdict,
    pub squares_to_zero: Verdict,
    pub leibniz: Verdict,
    pub agrees_on_functions: Verdict,
    pub linearity_sampled: Verdict,
    pub equality_with_d: Verdict,
}

impl AxiomReport {
    pub fn verdicts(&self) -> [&Verdict; 6] {
        [
            &self.degree_raising,
            &self.squares_to_zero,
            &self.leibniz,
            &self.agrees_on_functions,
            &self.linearity_sampled,
            &self.equality_with_d,
        ]
    }

    pub fn axioms_passed(&self) -> bool {
        self.verdicts()[..5].iter().all(|v| v.passed)
    }

    pub fn passed(&self) -> bool {
        self.verdicts().iter().all(|v| v.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts().into_iter().filter(|v| !v.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ReportJson::from(self)).expect("report serialization is infallible")
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "operator: {}  (trials {}, seed {})", self.operator, self.trials, self.seed)?;
        for v in self.verdicts() {
            let status = if v.passed { "PASS" } else { "FAIL" };
            writeln!(f, "  {status}  {:<20} {} instances", v.axiom.name(), v.checked)?;
            if let Some(w) = &v.witness {
                let cx = w.inputs[0].complex();
                if let Some(c) = &w.clique {
                    writeln!(f, "        at clique {:?}", labels_of(cx, c.vertices()))?;
                }
                if let (Some(e), Some(a)) = (&w.expected, &w.actual) {
                    writeln!(f, "        expected {e}, operator gave {a}")?;
                }
                if !w.note.is_empty() {
                    writeln!(f, "        {}", w.note)?;
                }
            }
        }
        let verdict = if self.passed() { "operator equals d" } else { "operator rejected" };
        write!(f, "verdict: {verdict}")
    }
}

#[derive(Serialize)]
struct WitnessJson {
    inputs: Vec<FormJson>,
    scalars: Vec<String>,
    clique: Option<Vec<String>>,
    expected: Option<String>,
    actual: Option<String>,
    note: String,
}

#[derive(Serialize)]
struct VerdictJson {
    check: &'static str,
    passed: bool,
    checked: usize,
    witness: Option<WitnessJson>,
}

#[derive(Serialize)]
struct ReportJson {
    operator: String,
    trials: usize,
    seed: u64,
    passed: bool,
    checks: Vec<VerdictJson>,
}

impl From<&AxiomReport> for ReportJson {
    fn from(r: &AxiomReport) -> Self {
        ReportJson {
            operator: r.operator.clone(),
            trials: r.trials,
            seed: r.seed,
            passed: r.passed(),
            checks: r
                .verdicts()
                .iter()
                .map(|v| VerdictJson {
                    check: v.axiom.name(),
                    passed: v.passed,
                    checked: v.checked,
                    witness: v.witness.as_ref().map(|w| WitnessJson {
                        inputs: w.inputs.iter().map(FormJson::from_form).collect(),
                        scalars: w.scalars.iter().map(rational::format).collect(),
                        clique: w.clique.as_ref().map(|c| labels_of(w.inputs[0].complex(), c.vertices())),
                        expected: w.expected.as_ref().map(rational::format),
                        actual: w.actual.as_ref().map(rational::format),
                        note: w.note.clone(),
                    }),
                })
                .collect(),
        }
    }
}

/// Applies `op` and validates that the result has degree `k + 1` on the
/// same complex.
fn call(op: &dyn Operator, form: &Form) -> std::result::Result<Form, String> {
    let out = op
        .apply(form)
        .map_err(|e| format!("operator failed on a degree-{} form: {e}", form.degree()))?;
    if !Arc::ptr_eq(out.complex(), form.complex()) {
        return Err("operator returned a form on a different complex".into());
    }
    if out.degree() != form.degree() + 1 {
        return Err(format!(
            "operator mapped a degree-{} form to degree {}",
            form.degree(),
            out.degree()
        ));
    }
    Ok(out)
}

/// A failed comparison: clique, value demanded, value produced; or a
/// structural failure described by a message.
type Failure = std::result::Result<(Clique, Rational, Rational), String>;

fn compare(demanded: &Form, produced: &Form) -> Option<Failure> {
    produced
        .first_difference(demanded)
        .map(|(c, actual, expected)| Ok((c, expected, actual)))
}

fn squares_failure(op: &dyn Operator, a: &Form) -> Option<Failure> {
    let once = match call(op, a) {
        Ok(f) => f,
        Err(e) => return Some(Err(e)),
    };
    let twice = match call(op, &once) {
        Ok(f) => f,
        Err(e) => return Some(Err(e)),
    };
    let zero = Form::zero(a.complex(), twice.degree()).ok()?;
    compare(&zero, &twice)
}

fn leibniz_failure(op: &dyn Operator, a: &Form, b: &Form) -> Option<Failure> {
    let run = || -> std::result::Result<Option<Failure>, String> {
        let ab = wedge(a, b).map_err(|e| e.to_string())?;
        let lhs = call(op, &ab)?;
        let da = call(op, a)?;
        let db = call(op, b)?;
        let left = wedge(&da, b).map_err(|e| e.to_string())?;
        let mut right = wedge(a, &db).map_err(|e| e.to_string())?;
        if a.degree() % 2 == 1 {
            right = right.neg();
        }
        let rhs = left.add(&right).map_err(|e| e.to_string())?;
        Ok(compare(&rhs, &lhs))
    };
    run().unwrap_or_else(|e| Some(Err(e)))
}

fn equals_d_failure(op: &dyn Operator, a: &Form) -> Option<Failure> {
    let produced = match call(op, a) {
        Ok(f) => f,
        Err(e) => return Some(Err(e)),
    };
    let demanded = exterior_derivative(a).ok()?;
    compare(&demanded, &produced)
}

fn linearity_failure(op: &dyn Operator, a: &Form, b: &Form, x: &Rational, y: &Rational) -> Option<Failure> {
    let run = || -> std::result::Result<Option<Failure>, String> {
        let combo = a.scale(x).add(&b.scale(y)).map_err(|e| e.to_string())?;
        let lhs = call(op, &combo)?;
        let rhs = call(op, a)?
            .scale(x)
            .add(&call(op, b)?.scale(y))
            .map_err(|e| e.to_string())?;
        Ok(compare(&rhs, &lhs))
    };
    run().unwrap_or_else(|e| Some(Err(e)))
}

fn witness_from(axiom: Axiom, inputs: Vec<Form>, scalars: Vec<Rational>, failure: Failure) -> Witness {
    match failure {
        Ok((c, expected, actual)) => Witness {
            axiom,
            inputs,
            scalars,
            clique: Some(c),
            expected: Some(expected),
            actual: Some(actual),
            note: String::new(),
        },
        Err(note) => Witness {
            axiom,
            inputs,
            scalars,
            clique: None,
            expected: None,
            actual: None,
            note,
        },
    }
}

/// Replaces `form` by a single-entry restriction when the failure persists.
fn shrink(form: &Form, fails: impl Fn(&Form) -> bool) -> Form {
    if form.nnz() <= 1 {
        return form.clone();
    }
    form.support()
        .map(|c| form.restrict_to(c))
        .find(|single| fails(single))
        .unwrap_or_else(|| form.clone())
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

const DENSITY: f64 = 0.5;

/// Checks the four hypotheses plus sampled linearity, then certifies
/// equality with `d` on basis forms.
///
/// Degrees range over `0 ..= max_card - 2`, the forms whose image is still
/// materialized in `cx`. Agreement on functions is exhaustive over `χ^v`
/// plus `trials` random functions; the other checks use `trials` seeded
/// random instances per degree (or degree pair).
pub fn check_axioms(op: &dyn Operator, cx: &Arc<CliqueComplex>, trials: usize, seed: u64) -> Result<AxiomReport> {
    if cx.max_card() < 3 {
        return Err(Error::Capacity {
            required: 3,
            max_card: cx.max_card(),
        });
    }
    let top = cx.max_card();
    let degrees = 0..=top - 2;

    // degree raising: every basis form, the zero form and random forms
    let degree_raising = {
        let mut rng = rng_for(seed, 1);
        let mut checked = 0;
        let mut failure = None;
        'outer: for k in degrees.clone() {
            let mut inputs = vec![Form::zero(cx, k)?];
            for c in cx.level(k + 1) {
                inputs.push(Form::basis(cx, c)?);
            }
            for _ in 0..trials {
                inputs.push(random_form(&mut rng, cx, k, DENSITY)?);
            }
            for a in inputs {
                checked += 1;
                if let Err(note) = call(op, &a) {
                    failure = Some(witness_from(Axiom::DegreeRaising, vec![a], vec![], Err(note)));
                    break 'outer;
                }
            }
        }
        match failure {
            Some(w) => Verdict::fail(Axiom::DegreeRaising, checked, w),
            None => Verdict::pass(Axiom::DegreeRaising, checked),
        }
    };

    let squares_to_zero = {
        let mut rng = rng_for(seed, 2);
        let mut checked = 0;
        let mut failure = None;
        'outer: for k in 0..=top.saturating_sub(3) {
            let mut inputs: Vec<Form> = cx.level(k + 1).iter().map(|c| Form::basis(cx, c)).collect::<Result<_>>()?;
            for _ in 0..trials {
                inputs.push(random_form(&mut rng, cx, k, DENSITY)?);
            }
            for a in inputs {
                checked += 1;
                if squares_failure(op, &a).is_some() {
                    let a = shrink(&a, |s| squares_failure(op, s).is_some());
                    let f = squares_failure(op, &a).expect("failure persists after shrinking");
                    failure = Some(witness_from(Axiom::SquaresToZero, vec![a], vec![], f));
                    break 'outer;
                }
            }
        }
        match failure {
            Some(w) => Verdict::fail(Axiom::SquaresToZero, checked, w),
            None => Verdict::pass(Axiom::SquaresToZero, checked),
        }
    };

    let leibniz = {
        let mut rng = rng_for(seed, 3);
        let mut checked = 0;
        let mut failure = None;
        'outer: for r in 0..=top - 2 {
            for s in 0..=top - 2 - r {
                for _ in 0..trials {
                    let a = sample_form(&mut rng, cx, r)?;
                    let b = sample_form(&mut rng, cx, s)?;
                    checked += 1;
                    if leibniz_failure(op, &a, &b).is_some() {
                        let a = shrink(&a, |x| leibniz_failure(op, x, &b).is_some());
                        let b = shrink(&b, |y| leibniz_failure(op, &a, y).is_some());
                        let f = leibniz_failure(op, &a, &b).expect("failure persists after shrinking");
                        failure = Some(witness_from(Axiom::Leibniz, vec![a, b], vec![], f));
                        break 'outer;
                    }
                }
            }
        }
        match failure {
            Some(w) => Verdict::fail(Axiom::Leibniz, checked, w),
            None => Verdict::pass(Axiom::Leibniz, checked),
        }
    };

    let agrees_on_functions = {
        let mut rng = rng_for(seed, 4);
        let mut inputs: Vec<Form> = cx.graph().vertices().map(|v| chi(cx, v)).collect::<Result<_>>()?;
        for _ in 0..trials {
            inputs.push(random_function(&mut rng, cx));
        }
        let mut checked = 0;
        let mut failure = None;
        for f in inputs {
            checked += 1;
            if let Some(fail) = equals_d_failure(op, &f) {
                failure = Some(witness_from(Axiom::AgreesOnFunctions, vec![f], vec![], fail));
                break;
            }
        }
        match failure {
            Some(w) => Verdict::fail(Axiom::AgreesOnFunctions, checked, w),
            None => Verdict::pass(Axiom::AgreesOnFunctions, checked),
        }
    };

    let linearity_sampled = {
        let mut rng = rng_for(seed, 5);
        let mut checked = 0;
        let mut failure = None;
        'outer: for k in degrees {
            for _ in 0..trials {
                let a = random_form(&mut rng, cx, k, DENSITY)?;
                let b = random_form(&mut rng, cx, k, DENSITY)?;
                let x = small_rational(&mut rng);
                let y = small_rational(&mut rng);
                checked += 1;
                if let Some(f) = linearity_failure(op, &a, &b, &x, &y) {
                    failure = Some(witness_from(Axiom::LinearitySampled, vec![a, b], vec![x, y], f));
                    break 'outer;
                }
            }
        }
        match failure {
            Some(w) => Verdict::fail(Axiom::LinearitySampled, checked, w),
            None => Verdict::pass(Axiom::LinearitySampled, checked),
        }
    };

    let equality_with_d = certify_equality(op, cx)?;

    Ok(AxiomReport {
        operator: op.name().to_owned(),
        trials,
        seed,
        degree_raising,
        squares_to_zero,
        leibniz,
        agrees_on_functions,
        linearity_sampled,
        equality_with_d,
    })
}

/// Mixes basis forms, random functions and random forms so that sparse and
/// dense inputs are both exercised.
fn sample_form(rng: &mut ChaCha8Rng, cx: &Arc<CliqueComplex>, k: usize) -> Result<Form> {
    let level = cx.level(k + 1);
    match rng.gen_range(0..4) {
        0 if !level.is_empty() => {
            let c = &level[rng.gen_range(0..level.len())];
            Ok(Form::basis(cx, c)?.scale(&small_rational(rng)))
        }
        1 if k == 0 => Ok(random_function(rng, cx)),
        _ => random_form(rng, cx, k, DENSITY),
    }
}

/// Compares `op` with `d` on every basis form of every degree whose image
/// level is non-empty.
pub fn certify_equality(op: &dyn Operator, cx: &Arc<CliqueComplex>) -> Result<Verdict> {
    let mut checked = 0;
    for k in 0..cx.max_card().saturating_sub(1) {
        if cx.level(k + 2).is_empty() {
            continue;
        }
        for c in cx.level(k + 1) {
            let basis = Form::basis(cx, c)?;
            checked += 1;
            if let Some(f) = equals_d_failure(op, &basis) {
                return Ok(Verdict::fail(
                    Axiom::EqualityWithD,
                    checked,
                    witness_from(Axiom::EqualityWithD, vec![basis], vec![], f),
                ));
            }
        }
    }
    Ok(Verdict::pass(Axiom::EqualityWithD, checked))
}

/// One asserted equality along the uniqueness argument.
#[derive(Debug, Clone)]
pub struct ChainLink {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

/// Intermediate objects of the uniqueness argument with `δ = d`, specialised
/// to one form and one target clique.
#[derive(Debug, Clone)]
pub struct ProofTrace {
    pub clique: Clique,
    /// Cut-off function of the target clique.
    pub rho: Form,
    /// `ρ ∧ α`.
    pub localized: Form,
    /// Ordered tuples `v` with `(ρ∧α)_v` not identically zero.
    pub tuples: Vec<Vec<VertexId>>,
    /// `Σ_v (ρ∧α)_v ∧ dχ^{v_1} ∧ ..`, which must equal `localized`.
    pub expansion: Form,
    /// `(d(ρ∧α)_v ∧ dχ^{v_1} ∧ ..)(c)` per tuple.
    pub termwise: Vec<(Vec<VertexId>, Rational)>,
    pub d_localized_at: Rational,
    pub d_alpha_at: Rational,
    pub final_value: Rational,
    pub links: Vec<ChainLink>,
}

impl ProofTrace {
    pub fn holds(&self) -> bool {
        self.links.iter().all(|l| l.holds)
    }
}

/// Replays the argument for `δ = d` on `α` at the clique `c` (of cardinality
/// `degree + 2`), recording each intermediate and checking every link.
pub fn proof_trace(alpha: &Form, c: &Clique) -> Result<ProofTrace> {
    let cx = alpha.complex();
    let k = alpha.degree();
    if k == 0 {
        return Err(Error::Domain("the expansion step needs a form of degree at least 1".into()));
    }
    if c.len() != k + 2 {
        return Err(Error::ArityMismatch {
            expected: k + 2,
            got: c.len(),
        });
    }
    let rho = cutoff_rho(cx, c)?;
    let localized = f_wedge_fast(&rho, alpha)?;
    let tuples = expansion_tuples(&localized);
    let mut expansion = Form::zero(cx, k)?;
    let mut termwise = Vec::with_capacity(tuples.len());
    let mut sum = Rational::zero();
    for vs in &tuples {
        expansion = expansion.add(&expansion_term(&localized, vs)?)?;
        let coef = exterior_derivative(&coefficient_form(&localized, vs)?)?;
        let value = wedge_at(&coef, &dchi_chain(cx, vs)?, c.vertices());
        sum += &value;
        termwise.push((vs.clone(), value));
    }
    let d_localized_at = derivative_at(&localized, c);
    let d_alpha_at = derivative_at(alpha, c);
    let g = cx.graph();
    let near = |v: VertexId| c.contains(v) || c.vertices().iter().any(|&x| g.adjacent(v, x));
    let far: Vec<_> = tuples.iter().filter(|vs| !vs.iter().all(|&v| near(v))).collect();

    let links = vec![
        ChainLink {
            name: "cutoff",
            holds: d_localized_at == d_alpha_at,
            detail: format!("d(rho^alpha)(c) = {d_localized_at}, d alpha(c) = {d_alpha_at}"),
        },
        ChainLink {
            name: "finite-support",
            holds: far.is_empty(),
            detail: format!("{} contributing tuples, {} outside distance 1", tuples.len(), far.len()),
        },
        ChainLink {
            name: "expansion",
            holds: expansion == localized,
            detail: format!("expansion has {} entries, rho^alpha has {}", expansion.nnz(), localized.nnz()),
        },
        ChainLink {
            name: "termwise",
            holds: sum == d_localized_at,
            detail: format!("sum of termwise derivatives = {sum}"),
        },
        ChainLink {
            name: "conclusion",
            holds: sum == d_alpha_at,
            detail: format!("final value {sum}"),
        },
    ];
    Ok(ProofTrace {
        clique: c.clone(),
        rho,
        localized,
        tuples,
        expansion,
        termwise,
        d_localized_at,
        d_alpha_at,
        final_value: sum,
        links,
    })
}

/// Operators that must be rejected by [`check_axioms`] or
/// [`certify_equality`].
pub mod mutants {
    use super::*;

    /// `c · d`.
    pub struct Scaled(pub Rational);

    impl Operator for Scaled {
        fn name(&self) -> &str {
            "scaled-d"
        }

        fn apply(&self, form: &Form) -> Result<Form> {
            Ok(exterior_derivative(form)?.scale(&self.0))
        }
    }

    /// `d` after negating the input coefficient on one chosen clique.
    pub struct FlippedEntry(pub Clique);

    impl FlippedEntry {
        /// Flips the first edge that lies in a triangle, so the change is
        /// visible through degree-1 derivatives.
        pub fn first_triangle_edge(cx: &CliqueComplex) -> Option<Self> {
            cx.level(3).first().map(|t| FlippedEntry(t.face(2)))
        }
    }

    impl Operator for FlippedEntry {
        fn name(&self) -> &str {
            "flipped-entry"
        }

        fn apply(&self, form: &Form) -> Result<Form> {
            if form.degree() + 1 != self.0.len() {
                return exterior_derivative(form);
            }
            let v = form.get(&self.0);
            let flipped = form.sub(&form.restrict_to(&self.0).scale(&rational::int(2)))?;
            debug_assert_eq!(flipped.get(&self.0), -v);
            exterior_derivative(&flipped)
        }
    }

    /// `(1 + M) ∘ d` with `M` the degree-preserving multiplication by `χ^v`.
    pub struct PlusDegreePreserving(pub VertexId);

    impl PlusDegreePreserving {
        /// Anchors `χ^v` on a triangle vertex. At an isolated vertex the extra
        /// term vanishes and the operator would be `d` itself.
        pub fn for_complex(cx: &CliqueComplex) -> Self {
            let v = cx
                .level(3)
                .first()
                .or_else(|| cx.level(2).first())
                .map_or(VertexId(0), |c| c.vertices()[0]);
            PlusDegreePreserving(v)
        }
    }

    impl Operator for PlusDegreePreserving {
        fn name(&self) -> &str {
            "d-plus-degree-preserving"
        }

        fn apply(&self, form: &Form) -> Result<Form> {
            let da = exterior_derivative(form)?;
            let extra = f_wedge_fast(&chi(form.complex(), self.0)?, &da)?;
            da.add(&extra)
        }
    }

    /// Reassembles `δα = Σ_v dα_v ∧ dχ^{v_1} ∧ ..` with a wedge that skips the
    /// `1/(k+2)!` normalization. Functions still go to `df`, so agreement on
    /// functions and `δ² = 0` survive while Leibniz breaks.
    pub struct UnnormalizedLeibniz;

    impl Operator for UnnormalizedLeibniz {
        fn name(&self) -> &str {
            "unnormalized-wedge"
        }

        fn apply(&self, form: &Form) -> Result<Form> {
            let k = form.degree();
            if k == 0 {
                return exterior_derivative(form);
            }
            let cx = form.complex();
            cx.require_card(k + 2)?;
            let raw = factorial(k + 2);
            let mut acc = Form::zero(cx, k + 1)?;
            for vs in expansion_tuples(form) {
                let coef = exterior_derivative(&coefficient_form(form, &vs)?)?;
                let chain = dchi_chain(cx, &vs)?;
                let normalized = wedge(&coef, &chain)?;
                acc = acc.add(&normalized.scale(&raw))?;
            }
            Ok(acc)
        }
    }

    /// `d` except on the highest degree with a non-empty image, where the sign flips.
    pub struct SignFlipTop(pub usize);

    impl SignFlipTop {
        pub fn for_complex(cx: &CliqueComplex) -> Self {
            SignFlipTop(cx.top_card().saturating_sub(2))
        }
    }

    impl Operator for SignFlipTop {
        fn name(&self) -> &str {
            "sign-flip-top"
        }

        fn apply(&self, form: &Form) -> Result<Form> {
            let da = exterior_derivative(form)?;
            Ok(if form.degree() == self.0 { da.neg() } else { da })
        }
    }

    /// `δ = 0`.
    pub struct ZeroOperator;

    impl Operator for ZeroOperator {
        fn name(&self) -> &str {
            "zero"
        }

        fn apply(&self, form: &Form) -> Result<Form> {
            Form::zero(form.complex(), form.degree() + 1)
        }
    }

    /// The fixed catalogue: scaled, flipped entry, degree-preserving term,
    /// unnormalized wedge, zero, and a top-degree sign flip. Needs a triangle.
    pub fn catalogue(cx: &CliqueComplex) -> Vec<Box<dyn Operator>> {
        let mut out: Vec<Box<dyn Operator>> = vec![Box::new(Scaled(rational::int(2)))];
        if let Some(m) = FlippedEntry::first_triangle_edge(cx) {
            out.push(Box::new(m));
        }
        out.push(Box::new(PlusDegreePreserving::for_complex(cx)));
        out.push(Box::new(UnnormalizedLeibniz));
        out.push(Box::new(ZeroOperator));
        out.push(Box::new(SignFlipTop::for_complex(cx)));
        out
    }
}
