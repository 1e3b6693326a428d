//! The DG Lie algebra `(Der(ΛV), D)` of degree-lowering derivations.
//!
//! A derivation is stored by its values on generators. A derivation of degree
//! `n` lowers degrees by `n`; the model differential itself is the derivation
//! of degree `-1`, which lets `D(θ) = [d, θ]` reuse the bracket.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gca::{apply_derivation, GenId, GeneratorSet, Monomial, Polynomial, Rational};
use crate::homlin::RationalMatrix;
use crate::model::MinimalModel;

/// The derivation `(v, χ)` sending the generator `v` to the monomial `χ` and
/// every other generator to zero. `(v, 1)` is written `v*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DerBasisElement {
    pub source: GenId,
    pub target: Monomial,
}

impl DerBasisElement {
    pub fn degree(&self, gens: &GeneratorSet) -> i64 {
        i64::from(gens.generator(self.source).degree) - i64::from(self.target.degree())
    }

    pub fn label(&self, gens: &GeneratorSet) -> String {
        let name = &gens.generator(self.source).name;
        if self.target.is_one() {
            format!("{name}*")
        } else {
            format!("({name},{})", gens.monomial_string(&self.target))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    degree: i64,
    values: BTreeMap<GenId, Polynomial>,
}

impl Derivation {
    pub fn zero(degree: i64) -> Self {
        Derivation {
            degree,
            values: BTreeMap::new(),
        }
    }

    pub fn from_values(degree: i64, values: BTreeMap<GenId, Polynomial>) -> Self {
        let values = values.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        Derivation { degree, values }
    }

    pub fn basis(gens: &GeneratorSet, e: &DerBasisElement) -> Self {
        let mut values = BTreeMap::new();
        values.insert(e.source, Polynomial::term(e.target.clone(), Rational::one()));
        Derivation {
            degree: e.degree(gens),
            values,
        }
    }

    /// The model differential as a derivation of degree `-1`.
    pub fn of_differential(m: &MinimalModel) -> Self {
        Derivation::from_values(-1, m.differential().clone())
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, v: GenId) -> Option<&Polynomial> {
        self.values.get(&v)
    }

    pub fn values(&self) -> &BTreeMap<GenId, Polynomial> {
        &self.values
    }

    /// Coordinates on the basis elements `(v, χ)`.
    pub fn coords(&self) -> impl Iterator<Item = (DerBasisElement, &Rational)> {
        self.values.iter().flat_map(|(v, p)| {
            p.terms().map(move |(m, c)| {
                (
                    DerBasisElement {
                        source: *v,
                        target: m.clone(),
                    },
                    c,
                )
            })
        })
    }

    pub fn coefficient(&self, e: &DerBasisElement) -> Rational {
        self.values
            .get(&e.source)
            .map_or_else(Rational::zero, |p| p.coefficient(&e.target))
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        Derivation::from_values(
            self.degree,
            self.values.iter().map(|(v, p)| (*v, p.scale(c))).collect(),
        )
    }

    /// Applies the derivation to an arbitrary element of `ΛV`.
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        extend(self, p)
    }

    fn combine(&self, other: &Derivation, negate: bool) -> Derivation {
        assert_eq!(self.degree, other.degree, "adding derivations of different degrees");
        let mut values = self.values.clone();
        for (v, p) in &other.values {
            let slot = values.entry(*v).or_default();
            if negate {
                *slot -= p;
            } else {
                *slot += p;
            }
        }
        Derivation::from_values(self.degree, values)
    }

    pub fn display(&self, gens: &GeneratorSet) -> String {
        let mut terms: Vec<(DerBasisElement, &Rational)> = self.coords().collect();
        terms.sort_by(|a, b| basis_order(gens, &a.0, &b.0));
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in terms.iter().enumerate() {
            let negative = *c < &Rational::zero();
            let magnitude = if negative { -(*c).clone() } else { (*c).clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if !magnitude.is_one() {
                out.push_str(&magnitude.to_string());
                out.push('·');
            }
            out.push_str(&e.label(gens));
        }
        out
    }
}

impl Add for &Derivation {
    type Output = Derivation;
    fn add(self, rhs: &Derivation) -> Derivation {
        self.combine(rhs, false)
    }
}

impl Sub for &Derivation {
    type Output = Derivation;
    fn sub(self, rhs: &Derivation) -> Derivation {
        self.combine(rhs, true)
    }
}

impl Neg for &Derivation {
    type Output = Derivation;
    fn neg(self) -> Derivation {
        self.scale(&-Rational::one())
    }
}

/// Extends the generator values of `theta` to all of `ΛV` by the rule
/// `θ(ab) = θ(a)b + (-1)^{|θ||a|} aθ(b)`.
pub fn extend(theta: &Derivation, p: &Polynomial) -> Polynomial {
    apply_derivation(theta.is_odd(), |g| theta.values.get(&g), p)
}

/// `[θ₁, θ₂] = θ₁∘θ₂ - (-1)^{|θ₁||θ₂|} θ₂∘θ₁`, evaluated on every generator.
pub fn bracket(gens: &GeneratorSet, a: &Derivation, b: &Derivation) -> Derivation {
    let degree = a.degree + b.degree;
    let sign_negative = (a.degree * b.degree).rem_euclid(2) == 0;
    let mut values = BTreeMap::new();
    for g in gens.iter() {
        let v = gens.gen_poly(g.id);
        let ab = a.apply(&b.apply(&v));
        let ba = b.apply(&a.apply(&v));
        let value = if sign_negative { &ab - &ba } else { &ab + &ba };
        if !value.is_zero() {
            values.insert(g.id, value);
        }
    }
    Derivation { degree, values }
}

/// `D(θ) = [d, θ]`, so `D(θ)(v) = d(θ(v)) - (-1)^{|θ|} θ(d(v))`.
///
/// A degree-1 input yields a degree-0 derivation; degree-0 derivations are
/// kept as the target of `D_1` so that positive-degree homology is computed
/// against the full complex.
pub fn differential(m: &MinimalModel, theta: &Derivation) -> Derivation {
    bracket(m.generators(), &Derivation::of_differential(m), theta)
}

/// Canonical ordering of basis elements: by source in `(degree, id)` order,
/// then by target monomial.
fn basis_order(
    gens: &GeneratorSet,
    a: &DerBasisElement,
    b: &DerBasisElement,
) -> std::cmp::Ordering {
    let ka = (gens.generator(a.source).degree, a.source);
    let kb = (gens.generator(b.source).degree, b.source);
    ka.cmp(&kb).then_with(|| a.target.cmp(&b.target))
}

/// All `(v, χ)` with `|χ| = |v| - n`, ordered by source then target.
pub fn der_basis(m: &MinimalModel, n: i64) -> Result<Vec<DerBasisElement>> {
    if n < 1 {
        return Err(Error::DerivationDegree(n));
    }
    Ok(basis_unchecked(m.generators(), n))
}

fn basis_unchecked(gens: &GeneratorSet, n: i64) -> Vec<DerBasisElement> {
    let mut out = Vec::new();
    for g in gens.canonical() {
        let target_degree = i64::from(g.degree) - n;
        if target_degree < 0 {
            continue;
        }
        for target in gens.basis_of_degree(target_degree as u32) {
            out.push(DerBasisElement {
                source: g.id,
                target,
            });
        }
    }
    out
}

/// The derivation complex with its per-degree bases fixed for `0 ≤ n ≤ N`.
/// Degree 0 only serves as the target of `D_1`; homology is taken for
/// `n ≥ 1`.
#[derive(Clone, Debug)]
pub struct DerComplex {
    model: MinimalModel,
    bases: BTreeMap<u32, Vec<DerBasisElement>>,
    index: BTreeMap<u32, HashMap<DerBasisElement, usize>>,
}

impl DerComplex {
    pub fn new(model: &MinimalModel) -> Result<Self> {
        model.ensure_valid()?;
        let top = model.generators().top_degree();
        let mut bases = BTreeMap::new();
        let mut index = BTreeMap::new();
        for n in 0..=top {
            let basis = basis_unchecked(model.generators(), i64::from(n));
            let idx = basis.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
            bases.insert(n, basis);
            index.insert(n, idx);
        }
        Ok(DerComplex {
            model: model.clone(),
            bases,
            index,
        })
    }

    pub fn model(&self) -> &MinimalModel {
        &self.model
    }

    pub fn generators(&self) -> &GeneratorSet {
        self.model.generators()
    }

    pub fn top_degree(&self) -> u32 {
        self.model.generators().top_degree()
    }

    /// Basis in degree `n`; empty outside `0..=N`.
    pub fn basis(&self, n: u32) -> &[DerBasisElement] {
        self.bases.get(&n).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, n: u32) -> usize {
        self.basis(n).len()
    }

    pub fn basis_derivation(&self, n: u32, i: usize) -> Derivation {
        Derivation::basis(self.generators(), &self.basis(n)[i])
    }

    /// Coordinates of `theta` in the degree-`|θ|` basis (empty for negative
    /// degrees or degrees above `N`).
    pub fn coordinates(&self, theta: &Derivation) -> Vec<Rational> {
        let Some(index) = u32::try_from(theta.degree())
            .ok()
            .and_then(|n| self.index.get(&n))
        else {
            return Vec::new();
        };
        let mut out = vec![Rational::zero(); index.len()];
        for (e, c) in theta.coords() {
            let i = index[&e];
            out[i] = c.clone();
        }
        out
    }

    pub fn derivation(&self, n: u32, coords: &[Rational]) -> Derivation {
        let basis = self.basis(n);
        assert_eq!(coords.len(), basis.len());
        let mut values: BTreeMap<GenId, Polynomial> = BTreeMap::new();
        for (e, c) in basis.iter().zip(coords) {
            if !c.is_zero() {
                values
                    .entry(e.source)
                    .or_default()
                    .add_term(e.target.clone(), c.clone());
            }
        }
        Derivation::from_values(i64::from(n), values)
    }

    pub fn differential(&self, theta: &Derivation) -> Derivation {
        differential(&self.model, theta)
    }

    pub fn bracket(&self, a: &Derivation, b: &Derivation) -> Derivation {
        bracket(self.generators(), a, b)
    }

    /// Matrix of `D: Der_n → Der_{n-1}` in the basis ordering. For `n = 1` the
    /// rows are indexed by the degree-0 derivations; for `n = N + 1` there are
    /// no columns.
    pub fn matrix_of_d(&self, n: u32) -> Result<RationalMatrix> {
        let top = self.top_degree();
        if n < 1 || n > top + 1 {
            return Err(Error::MatrixDegree {
                degree: n,
                max: top + 1,
            });
        }
        let rows = self.dim(n - 1);
        let columns: Vec<Vec<Rational>> = (0..self.dim(n))
            .map(|j| self.coordinates(&self.differential(&self.basis_derivation(n, j))))
            .collect();
        Ok(RationalMatrix::from_columns(rows, &columns))
    }
}
