//! Positive weight decompositions.
//!
//! Weights are searched diagonally in the given generator basis: every
//! generator gets a positive rational weight, a monomial weighs the sum of its
//! factors, and each `d(v)` must be weight-homogeneous of weight `wt(v)`.
//! The decision procedure propagates weights symbolically (parameters for
//! closed generators, substitution for the rest) and finishes with
//! Fourier–Motzkin elimination on the remaining strict inequalities. When no
//! solution exists the propagation trace is returned as a witness that can be
//! replayed by [`verify_witness`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::dercomplex::{DerBasisElement, DerComplex};
use crate::error::{Error, Result};
use crate::gca::{GenId, GeneratorSet, Monomial, Rational};
use crate::model::MinimalModel;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeightSystem {
    weights: BTreeMap<GenId, Rational>,
}

impl WeightSystem {
    pub fn new(weights: BTreeMap<GenId, Rational>) -> Self {
        WeightSystem { weights }
    }

    pub fn from_names(m: &MinimalModel, weights: &[(&str, i64)]) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (name, w) in weights {
            out.insert(m.generators().id(name)?, Rational::from_integer((*w).into()));
        }
        Ok(WeightSystem { weights: out })
    }

    pub fn get(&self, g: GenId) -> Option<&Rational> {
        self.weights.get(&g)
    }

    pub fn iter(&self) -> impl Iterator<Item = (GenId, &Rational)> {
        self.weights.iter().map(|(g, w)| (*g, w))
    }

    pub fn scale(&self, c: &Rational) -> WeightSystem {
        WeightSystem {
            weights: self.weights.iter().map(|(g, w)| (*g, w * c)).collect(),
        }
    }

    pub fn monomial_weight(&self, m: &Monomial) -> Option<Rational> {
        m.factors().iter().try_fold(Rational::zero(), |acc, f| {
            Some(acc + self.weights.get(&f.gen)? * Rational::from_integer(f.exp.into()))
        })
    }
}

/// `true` iff every weight is positive and every `d(v)` has weight `wt(v)`.
pub fn check_weight_system(m: &MinimalModel, ws: &WeightSystem) -> Result<bool> {
    for g in m.generators().iter() {
        if ws.get(g.id).is_none() {
            return Err(Error::MissingWeight(g.name.clone()));
        }
    }
    if ws.weights.values().any(|w| !w.is_positive()) {
        return Ok(false);
    }
    for g in m.generators().iter() {
        let target = ws.get(g.id).expect("checked above");
        for term in m.d(g.id).monomials() {
            if ws.monomial_weight(term).as_ref() != Some(target) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquationKind {
    /// `wt(v) = wt(first term of d(v))`
    Definition,
    /// `wt(first term) = wt(another term)`
    TermEquality,
}

/// One homogeneous linear equation `wt(lhs) = wt(rhs)`, read off `d(source)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEquation {
    pub source: GenId,
    pub kind: EquationKind,
    pub lhs: Monomial,
    pub rhs: Monomial,
}

impl WeightEquation {
    /// Coefficients of `wt(lhs) - wt(rhs)` per generator, zeros dropped.
    pub fn coefficients(&self) -> BTreeMap<GenId, i64> {
        let mut out: BTreeMap<GenId, i64> = BTreeMap::new();
        for f in self.lhs.factors() {
            *out.entry(f.gen).or_insert(0) += i64::from(f.exp);
        }
        for f in self.rhs.factors() {
            *out.entry(f.gen).or_insert(0) -= i64::from(f.exp);
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// The equation after cancelling common factors, e.g. `wt(a) = wt(c)`
    /// for `wt(a^2) = wt(a*c)`.
    pub fn display(&self, gens: &GeneratorSet) -> String {
        let coeffs = self.coefficients();
        let side = |positive: bool| {
            let parts: Vec<String> = coeffs
                .iter()
                .filter(|(_, c)| (**c > 0) == positive)
                .map(|(g, c)| {
                    let name = &gens.generator(*g).name;
                    match c.abs() {
                        1 => format!("wt({name})"),
                        k => format!("{k}wt({name})"),
                    }
                })
                .collect();
            if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join(" + ")
            }
        };
        format!("{} = {}", side(true), side(false))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightConstraintSystem {
    /// Canonical generator order.
    pub variables: Vec<GenId>,
    pub equations: Vec<WeightEquation>,
}

pub fn weight_constraints(m: &MinimalModel) -> WeightConstraintSystem {
    let gens = m.generators();
    let variables: Vec<GenId> = gens.canonical().iter().map(|g| g.id).collect();
    let mut equations = Vec::new();
    for &v in &variables {
        let terms: Vec<&Monomial> = m.d(v).monomials().collect();
        let Some(first) = terms.first() else { continue };
        equations.push(WeightEquation {
            source: v,
            kind: EquationKind::Definition,
            lhs: Monomial::generator(gens.generator(v)),
            rhs: (*first).clone(),
        });
        for other in &terms[1..] {
            equations.push(WeightEquation {
                source: v,
                kind: EquationKind::TermEquality,
                lhs: (*first).clone(),
                rhs: (*other).clone(),
            });
        }
    }
    WeightConstraintSystem {
        variables,
        equations,
    }
}

/// A linear form in the weight parameters `r1, r2, ...` (0-based internally).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Form(BTreeMap<usize, Rational>);

impl Form {
    fn param(k: usize) -> Self {
        Form(BTreeMap::from([(k, Rational::one())]))
    }

    fn add_scaled(&mut self, other: &Form, c: &Rational) {
        for (k, x) in &other.0 {
            let slot = self.0.entry(*k).or_insert_with(Rational::zero);
            *slot += x * c;
            if slot.is_zero() {
                self.0.remove(k);
            }
        }
    }

    fn scale_by(&self, c: &Rational) -> Form {
        let mut out = Form::default();
        out.add_scaled(self, c);
        out
    }

    fn minus(&self, other: &Form) -> Form {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficient(&self, k: usize) -> Rational {
        self.0.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.0.iter().map(|(k, c)| (*k, c))
    }

    /// Replaces the parameter `k` by `value`.
    fn substitute(&self, k: usize, value: &Form) -> Form {
        let Some(c) = self.0.get(&k).cloned() else {
            return self.clone();
        };
        let mut out = self.clone();
        out.0.remove(&k);
        out.add_scaled(value, &c);
        out
    }

    fn evaluate(&self, point: &[Rational]) -> Rational {
        self.0
            .iter()
            .fold(Rational::zero(), |acc, (k, c)| acc + c * &point[*k])
    }

    /// Nonzero with every coefficient of one sign: impossible to vanish for
    /// positive parameters.
    fn is_definite(&self) -> bool {
        !self.is_zero()
            && (self.0.values().all(Signed::is_positive) || self.0.values().all(Signed::is_negative))
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.0.iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude}")?;
            }
            write!(f, "r{}", k + 1)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessStep {
    /// `wt(generator) = r_param`
    Parameter { generator: GenId, param: usize },
    /// Two terms of `d(source)` must weigh the same; this eliminates a
    /// parameter: `r_eliminated := value`.
    Relation {
        source: GenId,
        lhs: Monomial,
        rhs: Monomial,
        eliminated: usize,
        value: Form,
    },
    /// `wt(generator) = wt(via)` with `via` a term of `d(generator)`.
    Definition {
        generator: GenId,
        via: Monomial,
        form: Form,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Contradiction {
    /// Two terms of `d(source)` whose weights differ by a definite form.
    Clash {
        source: GenId,
        term_weights: Vec<(Monomial, Form)>,
        lhs: usize,
        rhs: usize,
    },
    /// Nonnegative multipliers with `Σ λ_g wt(g) ≡ 0`, impossible for
    /// positive weights.
    Positivity { multipliers: Vec<(GenId, Rational)> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfeasibilityWitness {
    pub steps: Vec<WitnessStep>,
    /// Weight of every generator when the contradiction is reached.
    pub forms: BTreeMap<GenId, Form>,
    pub contradiction: Contradiction,
}

impl InfeasibilityWitness {
    pub fn lines(&self, gens: &GeneratorSet) -> Vec<String> {
        let name = |g: &GenId| gens.generator(*g).name.clone();
        let mut out = Vec::new();
        for step in &self.steps {
            out.push(match step {
                WitnessStep::Parameter { generator, param } => {
                    format!("wt({}) = r{}", name(generator), param + 1)
                }
                WitnessStep::Relation {
                    source,
                    lhs,
                    rhs,
                    eliminated,
                    value,
                } => format!(
                    "d({}): wt({}) = wt({}) forces r{} = {}",
                    name(source),
                    gens.monomial_string(lhs),
                    gens.monomial_string(rhs),
                    eliminated + 1,
                    value
                ),
                WitnessStep::Definition {
                    generator,
                    via,
                    form,
                } => format!(
                    "d({}): wt({}) = wt({}) = {}",
                    name(generator),
                    name(generator),
                    gens.monomial_string(via),
                    form
                ),
            });
        }
        // group generators of equal weight, ordered by first appearance
        let mut classes: Vec<(String, Vec<String>)> = Vec::new();
        for g in gens.canonical() {
            let Some(f) = self.forms.get(&g.id) else { continue };
            let f = f.to_string();
            match classes.iter_mut().find(|(k, _)| *k == f) {
                Some((_, names)) => names.push(format!("wt({})", g.name)),
                None => classes.push((f, vec![format!("wt({})", g.name)])),
            }
        }
        let classes: Vec<String> = classes
            .into_iter()
            .map(|(f, names)| format!("{} = {f}", names.join(" = ")))
            .collect();
        out.push(format!("hence {}", classes.join(", ")));
        out.push(match &self.contradiction {
            Contradiction::Clash {
                source,
                term_weights,
                lhs,
                rhs,
            } => {
                let listed: Vec<String> = term_weights
                    .iter()
                    .map(|(m, f)| format!("{}: {f}", gens.monomial_string(m)))
                    .collect();
                format!(
                    "d({}) is not of homogeneous weight ({}); {} ≠ {} for positive parameters",
                    name(source),
                    listed.join(", "),
                    term_weights[*lhs].1,
                    term_weights[*rhs].1
                )
            }
            Contradiction::Positivity { multipliers } => {
                let listed: Vec<String> = multipliers
                    .iter()
                    .map(|(g, c)| format!("{c}·wt({})", name(g)))
                    .collect();
                format!("{} = 0 contradicts positive weights", listed.join(" + "))
            }
        });
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightOutcome {
    Feasible(WeightSystem),
    Infeasible(InfeasibilityWitness),
}

struct Propagation<'a> {
    m: &'a MinimalModel,
    forms: BTreeMap<GenId, Form>,
    params: usize,
    steps: Vec<WitnessStep>,
}

impl<'a> Propagation<'a> {
    fn weight(&self, mono: &Monomial) -> Option<Form> {
        let mut out = Form::default();
        for f in mono.factors() {
            out.add_scaled(self.forms.get(&f.gen)?, &Rational::from_integer(f.exp.into()));
        }
        Some(out)
    }

    fn new_param(&mut self, g: GenId) {
        let k = self.params;
        self.params += 1;
        self.forms.insert(g, Form::param(k));
        self.steps.push(WitnessStep::Parameter {
            generator: g,
            param: k,
        });
    }

    /// Eliminates the newest parameter in `diff = 0`.
    fn relate(&mut self, source: GenId, lhs: &Monomial, rhs: &Monomial, diff: &Form) {
        let (k, c) = diff.terms().last().map(|(k, c)| (k, c.clone())).expect("nonzero");
        let mut value = Form::default();
        for (j, x) in diff.terms().filter(|(j, _)| *j != k) {
            value.0.insert(j, -x / &c);
        }
        for f in self.forms.values_mut() {
            *f = f.substitute(k, &value);
        }
        self.steps.push(WitnessStep::Relation {
            source,
            lhs: lhs.clone(),
            rhs: rhs.clone(),
            eliminated: k,
            value,
        });
    }

    fn terms(&self, v: GenId) -> Vec<Monomial> {
        self.m.d(v).monomials().cloned().collect()
    }
}

/// Decides whether a generator-diagonal positive weight system exists.
pub fn find_positive_weights(m: &MinimalModel) -> Result<WeightOutcome> {
    m.ensure_valid()?;
    let gens = m.generators();
    let order: Vec<GenId> = gens.canonical().iter().map(|g| g.id).collect();
    let closed: BTreeSet<GenId> = order.iter().copied().filter(|g| m.d(*g).is_zero()).collect();
    let mut p = Propagation {
        m,
        forms: BTreeMap::new(),
        params: 0,
        steps: Vec::new(),
    };

    for &g in &order {
        if closed.contains(&g) {
            p.new_param(g);
        }
    }

    // relations among terms built from closed generators only
    for &v in &order {
        let closed_terms: Vec<Monomial> = p
            .terms(v)
            .into_iter()
            .filter(|t| t.factors().iter().all(|f| closed.contains(&f.gen)))
            .collect();
        for pair in closed_terms.windows(2) {
            let diff = p.weight(&pair[0]).unwrap().minus(&p.weight(&pair[1]).unwrap());
            if diff.is_zero() {
                continue;
            }
            if diff.is_definite() {
                return Ok(WeightOutcome::Infeasible(clash(&p, v)));
            }
            p.relate(v, &pair[0], &pair[1], &diff);
        }
    }

    // define the remaining generators through their differentials
    while p.forms.len() < order.len() {
        let next = order.iter().find_map(|&v| {
            if p.forms.contains_key(&v) {
                return None;
            }
            p.terms(v)
                .into_iter()
                .find_map(|t| p.weight(&t).map(|f| (v, t, f)))
        });
        match next {
            Some((v, via, form)) => {
                p.forms.insert(v, form.clone());
                p.steps.push(WitnessStep::Definition {
                    generator: v,
                    via,
                    form,
                });
            }
            None => {
                let first = *order.iter().find(|g| !p.forms.contains_key(g)).unwrap();
                p.new_param(first);
            }
        }
    }

    // every term of every differential must agree with wt(v)
    'scan: loop {
        for &v in &order {
            let target = p.forms[&v].clone();
            let own = Monomial::generator(gens.generator(v));
            let terms = p.terms(v);
            for t in &terms {
                let diff = p.weight(t).unwrap().minus(&target);
                if diff.is_zero() {
                    continue;
                }
                if diff.is_definite() {
                    return Ok(WeightOutcome::Infeasible(clash(&p, v)));
                }
                p.relate(v, t, &own, &diff);
                continue 'scan;
            }
        }
        break;
    }

    let live: Vec<usize> = {
        let mut s = BTreeSet::new();
        for f in p.forms.values() {
            s.extend(f.0.keys().copied());
        }
        s.into_iter().collect()
    };
    let constraints: Vec<(GenId, Vec<Rational>)> = order
        .iter()
        .map(|g| (*g, live.iter().map(|k| p.forms[g].coefficient(*k)).collect()))
        .collect();
    match strict_positive_point(&constraints.iter().map(|(_, c)| c.clone()).collect::<Vec<_>>()) {
        Ok(point) => {
            let mut full = vec![Rational::zero(); p.params];
            for (k, x) in live.iter().zip(point) {
                full[*k] = x;
            }
            let raw: Vec<Rational> = order.iter().map(|g| p.forms[g].evaluate(&full)).collect();
            let scaled = to_coprime_integers(&raw);
            Ok(WeightOutcome::Feasible(WeightSystem::new(
                order.iter().copied().zip(scaled).collect(),
            )))
        }
        Err(multipliers) => {
            let multipliers = multipliers
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (constraints[i].0, c))
                .collect();
            Ok(WeightOutcome::Infeasible(InfeasibilityWitness {
                steps: p.steps,
                forms: p.forms,
                contradiction: Contradiction::Positivity { multipliers },
            }))
        }
    }
}

fn clash(p: &Propagation<'_>, source: GenId) -> InfeasibilityWitness {
    let own = Monomial::generator(p.m.generators().generator(source));
    let mut term_weights: Vec<(Monomial, Form)> = p
        .terms(source)
        .into_iter()
        .filter_map(|t| p.weight(&t).map(|f| (t, f)))
        .collect();
    if let Some(f) = p.forms.get(&source) {
        if term_weights.iter().all(|(_, w)| w == f) {
            term_weights.insert(0, (own, f.clone()));
        }
    }
    let (lhs, rhs) = definite_pair(&term_weights).expect("clash has a definite pair");
    InfeasibilityWitness {
        steps: p.steps.clone(),
        forms: p.forms.clone(),
        contradiction: Contradiction::Clash {
            source,
            term_weights,
            lhs,
            rhs,
        },
    }
}

fn definite_pair(terms: &[(Monomial, Form)]) -> Option<(usize, usize)> {
    for i in 0..terms.len() {
        for j in i + 1..terms.len() {
            if terms[i].1.minus(&terms[j].1).is_definite() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Finds `t` with `c_i · t > 0` for every row, or returns nonnegative
/// multipliers (indexed by row) whose combination of rows is identically zero.
fn strict_positive_point(rows: &[Vec<Rational>]) -> std::result::Result<Vec<Rational>, Vec<(usize, Rational)>> {
    let vars = rows.first().map_or(0, Vec::len);
    let ones = vec![Rational::one(); vars];
    let positive_at = |point: &[Rational]| {
        rows.iter().all(|r| {
            r.iter()
                .zip(point)
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                .is_positive()
        })
    };
    if positive_at(&ones) {
        return Ok(ones);
    }

    #[derive(Clone)]
    struct Ineq {
        coeffs: Vec<Rational>,
        multipliers: BTreeMap<usize, Rational>,
    }
    let mut stages: Vec<Vec<Ineq>> = Vec::new();
    let mut current: Vec<Ineq> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| Ineq {
            coeffs: r.clone(),
            multipliers: BTreeMap::from([(i, Rational::one())]),
        })
        .collect();
    for j in 0..vars {
        if let Some(dead) = current.iter().find(|q| q.coeffs.iter().all(Zero::is_zero)) {
            return Err(dead.multipliers.clone().into_iter().collect());
        }
        stages.push(current.clone());
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for q in current {
            if q.coeffs[j].is_positive() {
                pos.push(q);
            } else if q.coeffs[j].is_negative() {
                neg.push(q);
            } else {
                rest.push(q);
            }
        }
        for a in &pos {
            for b in &neg {
                let (ca, cb) = (-b.coeffs[j].clone(), a.coeffs[j].clone());
                let coeffs = a
                    .coeffs
                    .iter()
                    .zip(&b.coeffs)
                    .map(|(x, y)| x * &ca + y * &cb)
                    .collect();
                let mut multipliers = BTreeMap::new();
                for (k, x) in &a.multipliers {
                    *multipliers.entry(*k).or_insert_with(Rational::zero) += x * &ca;
                }
                for (k, x) in &b.multipliers {
                    *multipliers.entry(*k).or_insert_with(Rational::zero) += x * &cb;
                }
                rest.push(Ineq { coeffs, multipliers });
            }
        }
        current = rest;
    }
    if let Some(dead) = current.first() {
        return Err(dead.multipliers.clone().into_iter().collect());
    }

    let mut point = vec![Rational::zero(); vars];
    for j in (0..vars).rev() {
        let (mut lower, mut upper): (Option<Rational>, Option<Rational>) = (None, None);
        for q in &stages[j] {
            let c = &q.coeffs[j];
            if c.is_zero() {
                continue;
            }
            let rest = (j + 1..vars).fold(Rational::zero(), |acc, k| acc + &q.coeffs[k] * &point[k]);
            let bound = -rest / c;
            if c.is_positive() {
                lower = Some(lower.map_or(bound.clone(), |l: Rational| l.max(bound)));
            } else {
                upper = Some(upper.map_or(bound.clone(), |u: Rational| u.min(bound)));
            }
        }
        point[j] = match (lower, upper) {
            (None, None) => Rational::one(),
            (Some(l), None) => l.floor() + Rational::one(),
            (None, Some(u)) => u.ceil() - Rational::one(),
            (Some(l), Some(u)) => (l + u) / Rational::from_integer(2.into()),
        };
    }
    debug_assert!(positive_at(&point));
    Ok(point)
}

fn to_coprime_integers(values: &[Rational]) -> Vec<Rational> {
    let lcm = values
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = values.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let gcd = if gcd.is_zero() { BigInt::one() } else { gcd };
    ints.into_iter().map(|x| Rational::from_integer(x / &gcd)).collect()
}

/// Replays a witness against the model. Every step must follow from the
/// differential, and the final contradiction must hold for positive weights.
pub fn verify_witness(m: &MinimalModel, w: &InfeasibilityWitness) -> bool {
    let mut forms: BTreeMap<GenId, Form> = BTreeMap::new();
    let mut params = BTreeSet::new();
    let weight = |forms: &BTreeMap<GenId, Form>, mono: &Monomial| -> Option<Form> {
        let mut out = Form::default();
        for f in mono.factors() {
            out.add_scaled(forms.get(&f.gen)?, &Rational::from_integer(f.exp.into()));
        }
        Some(out)
    };
    let is_term = |v: GenId, t: &Monomial| {
        m.d(v).monomials().any(|x| x == t)
            || (t.word_length() == 1 && t.contains(v) && !m.d(v).is_zero())
    };
    for step in &w.steps {
        match step {
            WitnessStep::Parameter { generator, param } => {
                if forms.contains_key(generator) || !params.insert(*param) {
                    return false;
                }
                forms.insert(*generator, Form::param(*param));
            }
            WitnessStep::Relation {
                source,
                lhs,
                rhs,
                eliminated,
                value,
            } => {
                if !is_term(*source, lhs) || !is_term(*source, rhs) {
                    return false;
                }
                let (Some(a), Some(b)) = (weight(&forms, lhs), weight(&forms, rhs)) else {
                    return false;
                };
                let diff = a.minus(&b);
                let c = diff.coefficient(*eliminated);
                if c.is_zero() || value.coefficient(*eliminated) != Rational::zero() {
                    return false;
                }
                let mut implied = value.clone();
                implied.add_scaled(&Form::param(*eliminated), &-Rational::one());
                if implied.minus(&diff.scale_by(&(-c.recip()))).is_zero() {
                    for f in forms.values_mut() {
                        *f = f.substitute(*eliminated, value);
                    }
                } else {
                    return false;
                }
            }
            WitnessStep::Definition {
                generator,
                via,
                form,
            } => {
                if forms.contains_key(generator) || !m.d(*generator).monomials().any(|x| x == via) {
                    return false;
                }
                if weight(&forms, via).as_ref() != Some(form) {
                    return false;
                }
                forms.insert(*generator, form.clone());
            }
        }
    }
    if forms != w.forms {
        return false;
    }
    match &w.contradiction {
        Contradiction::Clash {
            source,
            term_weights,
            lhs,
            rhs,
        } => {
            for (t, f) in term_weights {
                if !is_term(*source, t) || weight(&forms, t).as_ref() != Some(f) {
                    return false;
                }
            }
            match (term_weights.get(*lhs), term_weights.get(*rhs)) {
                (Some(a), Some(b)) => a.1.minus(&b.1).is_definite(),
                _ => false,
            }
        }
        Contradiction::Positivity { multipliers } => {
            if multipliers.is_empty() || multipliers.iter().any(|(_, c)| c.is_negative()) {
                return false;
            }
            let mut total = Form::default();
            for (g, c) in multipliers {
                let Some(f) = forms.get(g) else { return false };
                total.add_scaled(f, c);
            }
            total.is_zero() && multipliers.iter().any(|(_, c)| c.is_positive())
        }
    }
}

/// The blocks of `Der(ΛV)` for a model with generators in degrees 2, 3, 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DerBlock {
    V2Star,
    V3Star,
    V4Star,
    V3ToV2,
    V4ToV3,
    V4ToV2,
}

impl DerBlock {
    pub fn weight(self) -> u32 {
        match self {
            DerBlock::V2Star | DerBlock::V3ToV2 | DerBlock::V4ToV3 => 1,
            DerBlock::V3Star | DerBlock::V4ToV2 => 2,
            DerBlock::V4Star => 3,
        }
    }

    pub fn of(gens: &GeneratorSet, e: &DerBasisElement) -> Option<DerBlock> {
        let source = gens.generator(e.source).degree;
        let target = (e.target.word_length(), e.target.degree());
        match (source, target) {
            (2, (0, _)) => Some(DerBlock::V2Star),
            (3, (0, _)) => Some(DerBlock::V3Star),
            (4, (0, _)) => Some(DerBlock::V4Star),
            (3, (1, 2)) => Some(DerBlock::V3ToV2),
            (4, (1, 3)) => Some(DerBlock::V4ToV3),
            (4, (1, 2)) => Some(DerBlock::V4ToV2),
            _ => None,
        }
    }
}

impl fmt::Display for DerBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DerBlock::V2Star => "V2*",
            DerBlock::V3Star => "V3*",
            DerBlock::V4Star => "V4*",
            DerBlock::V3ToV2 => "(V3,V2)",
            DerBlock::V4ToV3 => "(V4,V3)",
            DerBlock::V4ToV2 => "(V4,V2)",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockViolation {
    Unclassified { element: String },
    Differential { element: String, expected_weight: u32, found: String },
    Bracket { left: String, right: String, expected_weight: u32, found: String },
}

impl fmt::Display for BlockViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockViolation::Unclassified { element } => write!(f, "{element} lies in no block"),
            BlockViolation::Differential { element, expected_weight, found } => write!(
                f,
                "D({element}) has a {found} component, expected weight {expected_weight}"
            ),
            BlockViolation::Bracket { left, right, expected_weight, found } => write!(
                f,
                "[{left}, {right}] has a {found} component, expected weight {expected_weight}"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub basis_size: usize,
    pub differentials_checked: usize,
    pub brackets_checked: usize,
    pub violations: Vec<BlockViolation>,
}

impl VerificationReport {
    pub fn verified(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that the fixed block weights make `Der(ΛV)` a positively weighted
/// DG Lie algebra: `D` preserves weight and brackets add weights.
pub fn lemma44_verify(m: &MinimalModel) -> Result<VerificationReport> {
    for g in m.generators().iter() {
        if !(2..=4).contains(&g.degree) {
            return Err(Error::DegreeOutsideRange {
                name: g.name.clone(),
                degree: g.degree,
            });
        }
    }
    let complex = DerComplex::new(m)?;
    let gens = m.generators();
    let mut elements = Vec::new();
    let mut report = VerificationReport::default();
    for n in 1..=complex.top_degree() {
        for (i, e) in complex.basis(n).iter().enumerate() {
            match DerBlock::of(gens, e) {
                Some(b) => elements.push((n, i, b)),
                None => report.violations.push(BlockViolation::Unclassified {
                    element: e.label(gens),
                }),
            }
        }
    }
    report.basis_size = elements.len();

    let blocks_of = |theta: &crate::dercomplex::Derivation| -> Vec<(String, Option<DerBlock>)> {
        theta
            .coords()
            .filter(|(e, _)| e.degree(gens) >= 1)
            .map(|(e, _)| (e.label(gens), DerBlock::of(gens, &e)))
            .collect()
    };

    for &(n, i, block) in &elements {
        let image = complex.differential(&complex.basis_derivation(n, i));
        report.differentials_checked += 1;
        for (label, b) in blocks_of(&image) {
            if b.map(DerBlock::weight) != Some(block.weight()) {
                report.violations.push(BlockViolation::Differential {
                    element: complex.basis(n)[i].label(gens),
                    expected_weight: block.weight(),
                    found: label,
                });
            }
        }
    }
    for (a_idx, &(n1, i1, b1)) in elements.iter().enumerate() {
        for &(n2, i2, b2) in &elements[a_idx..] {
            let left = complex.basis_derivation(n1, i1);
            let right = complex.basis_derivation(n2, i2);
            let image = complex.bracket(&left, &right);
            report.brackets_checked += 1;
            let expected = b1.weight() + b2.weight();
            for (label, b) in blocks_of(&image) {
                if b.map(DerBlock::weight) != Some(expected) {
                    report.violations.push(BlockViolation::Bracket {
                        left: complex.basis(n1)[i1].label(gens),
                        right: complex.basis(n2)[i2].label(gens),
                        expected_weight: expected,
                        found: label,
                    });
                }
            }
        }
    }
    Ok(report)
}
