//! Sullivan minimal models and elementary KS-extensions.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::dercomplex::{DerBasisElement, DerComplex, Derivation};
use crate::error::{Error, Result};
use crate::gca::{apply_derivation, GenId, Generator, GeneratorSet, Monomial, Polynomial};
use crate::homlin::kernel_basis;

/// A free graded-commutative algebra `ΛV` with a differential given on
/// generators. A missing entry means `d(v) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MinimalModel {
    gens: GeneratorSet,
    diff: BTreeMap<GenId, Polynomial>,
}

impl MinimalModel {
    pub fn new(gens: GeneratorSet, diff: BTreeMap<GenId, Polynomial>) -> Result<Self> {
        for (id, p) in &diff {
            gens.get(*id).ok_or(Error::UnknownGeneratorId(id.0))?;
            gens.check(p)?;
        }
        let diff = diff.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        Ok(MinimalModel { gens, diff })
    }

    pub fn builder() -> ModelBuilder {
        ModelBuilder::default()
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn differential(&self) -> &BTreeMap<GenId, Polynomial> {
        &self.diff
    }

    pub fn d(&self, v: GenId) -> &Polynomial {
        static ZERO: Polynomial = Polynomial::zero();
        self.diff.get(&v).unwrap_or(&ZERO)
    }

    /// Extends `d` to all of `ΛV` as a derivation of degree `+1`.
    pub fn apply_d(&self, p: &Polynomial) -> Polynomial {
        apply_derivation(true, |g| self.diff.get(&g), p)
    }

    pub fn name(&self, v: GenId) -> &str {
        &self.gens.generator(v).name
    }

    pub fn top_degree(&self) -> u32 {
        self.gens.top_degree()
    }

    /// Checks degree, minimality and `d² = 0` on every generator.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for g in self.gens.canonical() {
            let dv = self.d(g.id);
            for m in dv.monomials() {
                if m.degree() != g.degree + 1 {
                    report.violations.push(Violation::WrongDegree {
                        generator: g.name.clone(),
                        monomial: self.gens.monomial_string(m),
                        expected: g.degree + 1,
                        found: m.degree(),
                    });
                }
                if m.word_length() < 2 {
                    report.violations.push(Violation::NotDecomposable {
                        generator: g.name.clone(),
                        monomial: self.gens.monomial_string(m),
                    });
                }
            }
            let ddv = self.apply_d(dv);
            if !ddv.is_zero() {
                report.violations.push(Violation::DSquaredNonzero {
                    generator: g.name.clone(),
                    value: self.gens.polynomial_string(&ddv),
                });
            }
        }
        let low: Vec<String> = self
            .gens
            .iter()
            .filter(|g| g.degree == 1)
            .map(|g| g.name.clone())
            .collect();
        if !low.is_empty() {
            report.warnings.push(Warning::DegreeOneGenerators(low));
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidModel(report))
        }
    }

    /// `dim V^n` for every degree carrying generators.
    pub fn homotopy_ranks(&self) -> Result<BTreeMap<u32, usize>> {
        self.ensure_valid()?;
        let mut ranks = BTreeMap::new();
        for g in self.gens.iter() {
            *ranks.entry(g.degree).or_insert(0) += 1;
        }
        Ok(ranks)
    }

    /// `(N, dim V^N)`; `(0, 0)` for the empty model.
    pub fn top_stage(&self) -> (u32, usize) {
        let n = self.top_degree();
        (n, self.gens.iter().filter(|g| g.degree == n).count())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    WrongDegree {
        generator: String,
        monomial: String,
        expected: u32,
        found: u32,
    },
    NotDecomposable {
        generator: String,
        monomial: String,
    },
    DSquaredNonzero {
        generator: String,
        value: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongDegree {
                generator,
                monomial,
                expected,
                found,
            } => write!(
                f,
                "d({generator}): term {monomial} has degree {found}, expected {expected}"
            ),
            Violation::NotDecomposable { generator, monomial } => write!(
                f,
                "d({generator}): term {monomial} is not decomposable (minimality)"
            ),
            Violation::DSquaredNonzero { generator, value } => {
                write!(f, "d²({generator}) = {value} ≠ 0")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Warning {
    /// Degree-1 generators are accepted, but nilpotency is not checked.
    DegreeOneGenerators(Vec<String>),
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::DegreeOneGenerators(names) => write!(
                f,
                "degree-1 generators present ({}); nilpotency is not verified",
                names.join(", ")
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "error: {v}")?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

/// Builds a model from generator names; errors surface at [`ModelBuilder::build`].
#[derive(Default)]
pub struct ModelBuilder {
    gens: Vec<(String, u32)>,
    diffs: Vec<(String, DiffSpec)>,
}

enum DiffSpec {
    Terms(Vec<(i64, Vec<String>)>),
    Poly(Polynomial),
}

impl ModelBuilder {
    pub fn generator(mut self, name: &str, degree: u32) -> Self {
        self.gens.push((name.to_string(), degree));
        self
    }

    pub fn d(mut self, name: &str, terms: &[(i64, &[&str])]) -> Self {
        let terms = terms
            .iter()
            .map(|(c, w)| (*c, w.iter().map(|s| s.to_string()).collect()))
            .collect();
        self.diffs.push((name.to_string(), DiffSpec::Terms(terms)));
        self
    }

    pub fn d_poly(mut self, name: &str, p: Polynomial) -> Self {
        self.diffs.push((name.to_string(), DiffSpec::Poly(p)));
        self
    }

    pub fn build(self) -> Result<MinimalModel> {
        let gens = GeneratorSet::new(self.gens.iter().map(|(n, d)| (n.as_str(), *d)))?;
        let mut diff: BTreeMap<GenId, Polynomial> = BTreeMap::new();
        for (name, spec) in self.diffs {
            let id = gens.id(&name)?;
            let p = match spec {
                DiffSpec::Poly(p) => p,
                DiffSpec::Terms(terms) => {
                    let words: Vec<Vec<&str>> = terms
                        .iter()
                        .map(|(_, w)| w.iter().map(String::as_str).collect())
                        .collect();
                    let borrowed: Vec<(i64, &[&str])> = terms
                        .iter()
                        .zip(&words)
                        .map(|((c, _), w)| (*c, w.as_slice()))
                        .collect();
                    gens.poly(&borrowed)?
                }
            };
            *diff.entry(id).or_default() += &p;
        }
        MinimalModel::new(gens, diff)
    }
}

/// An elementary KS-extension `(Λ(w), 0) → (Λ(w) ⊗ ΛV, 𝒟) → (ΛV, d)`.
///
/// The base generator is appended after the fibre generators, so fibre ids
/// are unchanged in the total algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KsExtension {
    total_gens: GeneratorSet,
    base: GenId,
    perturbations: BTreeMap<GenId, Polynomial>,
}

impl KsExtension {
    pub fn new(fibre: &MinimalModel, base_name: &str, base_degree: u32) -> Result<Self> {
        if base_degree < 2 {
            return Err(Error::KsExtension(format!(
                "base generator `{base_name}` must have degree at least 2, got {base_degree}"
            )));
        }
        let mut total_gens = fibre.generators().clone();
        let base = total_gens.push(base_name, base_degree)?;
        Ok(KsExtension {
            total_gens,
            base,
            perturbations: BTreeMap::new(),
        })
    }

    pub fn base(&self) -> &Generator {
        self.total_gens.generator(self.base)
    }

    pub fn base_id(&self) -> GenId {
        self.base
    }

    pub fn total_generators(&self) -> &GeneratorSet {
        &self.total_gens
    }

    pub fn perturbations(&self) -> &BTreeMap<GenId, Polynomial> {
        &self.perturbations
    }

    /// Adds `p` to `𝒟(target) - d(target)`.
    pub fn perturb_poly(&mut self, target: GenId, p: Polynomial) -> Result<()> {
        if target == self.base {
            return Err(Error::KsExtension("the base generator is closed".into()));
        }
        self.total_gens.get(target).ok_or(Error::UnknownGeneratorId(target.0))?;
        self.total_gens.check(&p)?;
        let slot = self.perturbations.entry(target).or_default();
        *slot += &p;
        if slot.is_zero() {
            self.perturbations.remove(&target);
        }
        Ok(())
    }

    pub fn perturb(&mut self, target: &str, terms: &[(i64, &[&str])]) -> Result<()> {
        let id = self.total_gens.id(target)?;
        let p = self.total_gens.poly(terms)?;
        self.perturb_poly(id, p)
    }

    /// Every perturbation term has degree `|v| + 1` and contains the base.
    pub fn check_well_formed(&self) -> Result<()> {
        for (v, p) in &self.perturbations {
            let g = self.total_gens.generator(*v);
            for m in p.monomials() {
                let shown = self.total_gens.monomial_string(m);
                if m.degree() != g.degree + 1 {
                    return Err(Error::KsExtension(format!(
                        "perturbation term {shown} of {} has degree {}, expected {}",
                        g.name,
                        m.degree(),
                        g.degree + 1
                    )));
                }
                if !m.contains(self.base) {
                    return Err(Error::KsExtension(format!(
                        "perturbation term {shown} of {} does not contain the base generator {}",
                        g.name,
                        self.base().name
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Assembles `(Λ(w) ⊗ ΛV, 𝒟)` and checks that it is a minimal DG algebra.
pub fn build_ks_total(fibre: &MinimalModel, ext: &KsExtension) -> Result<MinimalModel> {
    if ext.total_gens.len() != fibre.generators().len() + 1
        || fibre
            .generators()
            .iter()
            .zip(ext.total_gens.iter())
            .any(|(a, b)| a != b)
    {
        return Err(Error::KsExtension(
            "extension was built for a different fibre model".into(),
        ));
    }
    ext.check_well_formed()?;
    let mut diff = fibre.differential().clone();
    for (v, p) in &ext.perturbations {
        *diff.entry(*v).or_default() += p;
    }
    let total = MinimalModel::new(ext.total_gens.clone(), diff)?;
    total.ensure_valid()?;
    Ok(total)
}

/// Deletes the base generator and every term containing it.
pub fn remove_base(total: &MinimalModel, base: GenId) -> Result<MinimalModel> {
    let gens = total.generators();
    gens.get(base).ok_or(Error::UnknownGeneratorId(base.0))?;
    let mut kept = GeneratorSet::default();
    let mut remap = BTreeMap::new();
    for g in gens.iter().filter(|g| g.id != base) {
        remap.insert(g.id, kept.push(&g.name, g.degree)?);
    }
    let diff = total
        .differential()
        .iter()
        .filter(|(v, _)| **v != base)
        .map(|(v, p)| (remap[v], p.without_generator(base).remap(|g| remap[&g])))
        .collect();
    MinimalModel::new(kept, diff)
}

/// Outcome of the derivation criterion for an essential map `K(ℚ,n) → B aut₁(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// No degree-`n` cycle of `Der(total)` is nonzero on the base generator.
    Pass {
        degree: u32,
        cycle_dimension: usize,
        /// `D(w*)`, the boundary that obstructs `w*` from being a cycle.
        base_boundary: Derivation,
    },
    /// A cycle `θ` with `θ(w) ≠ 0`.
    Fail { witness: Derivation },
}

impl Certificate {
    pub fn passed(&self) -> bool {
        matches!(self, Certificate::Pass { .. })
    }
}

/// Checks that every degree-`|w|` `D`-cycle of `Der(total)` vanishes on `w`.
pub fn prop23_check(total: &MinimalModel, base: GenId) -> Result<Certificate> {
    let w = total
        .generators()
        .get(base)
        .ok_or(Error::UnknownGeneratorId(base.0))?
        .clone();
    let complex = DerComplex::new(total)?;
    let n = w.degree;
    let w_star = DerBasisElement {
        source: base,
        target: Monomial::one(),
    };
    let column = complex
        .basis(n)
        .iter()
        .position(|e| *e == w_star)
        .expect("w* lies in the degree-|w| basis");
    let cycles = kernel_basis(&complex.matrix_of_d(n)?);
    if let Some(v) = cycles.iter().find(|v| !v[column].is_zero()) {
        return Ok(Certificate::Fail {
            witness: complex.derivation(n, v),
        });
    }
    Ok(Certificate::Pass {
        degree: n,
        cycle_dimension: cycles.len(),
        base_boundary: complex.differential(&complex.basis_derivation(n, column)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_2_3() -> MinimalModel {
        MinimalModel::builder()
            .generator("x", 3)
            .generator("y", 3)
            .generator("z", 5)
            .generator("w", 7)
            .d("z", &[(1, &["x", "y"])])
            .d("w", &[(1, &["x", "z"])])
            .build()
            .unwrap()
    }

    #[test]
    fn example_model_is_valid() {
        let m = example_2_3();
        let report = m.validate();
        assert!(report.is_valid(), "{report}");
        assert!(report.warnings.is_empty());
        // d²(w) = d(x)z - x·d(z) = -x·xy = 0
        let w = m.generators().id("w").unwrap();
        assert!(m.apply_d(m.d(w)).is_zero());
    }

    #[test]
    fn linear_wrong_degree_term_gives_two_violations() {
        let m = MinimalModel::builder()
            .generator("y", 3)
            .generator("z", 5)
            .d("z", &[(1, &["y"])])
            .build()
            .unwrap();
        let report = m.validate();
        assert_eq!(report.violations.len(), 2, "{report}");
        assert!(matches!(report.violations[0], Violation::WrongDegree { expected: 6, found: 3, .. }));
        assert!(matches!(report.violations[1], Violation::NotDecomposable { .. }));
    }

    #[test]
    fn d_squared_detected() {
        // d(z) = xy, d(w) = yz with x, y even: d²(w) = y·xy ≠ 0
        let m = MinimalModel::builder()
            .generator("x", 2)
            .generator("y", 2)
            .generator("z", 3)
            .generator("w", 4)
            .d("z", &[(1, &["x", "y"])])
            .d("w", &[(1, &["y", "z"])])
            .build()
            .unwrap();
        let report = m.validate();
        assert_eq!(
            report.violations,
            vec![Violation::DSquaredNonzero {
                generator: "w".into(),
                value: "x*y^2".into()
            }]
        );
    }

    #[test]
    fn homotopy_ranks_of_example() {
        let ranks = example_2_3().homotopy_ranks().unwrap();
        assert_eq!(ranks, BTreeMap::from([(3, 2), (5, 1), (7, 1)]));
        let k = MinimalModel::builder().generator("x", 3).build().unwrap();
        assert_eq!(k.homotopy_ranks().unwrap(), BTreeMap::from([(3, 1)]));
    }

    #[test]
    fn degree_one_warning() {
        let m = MinimalModel::builder().generator("t", 1).build().unwrap();
        let report = m.validate();
        assert!(report.is_valid());
        assert_eq!(report.warnings.len(), 1);
    }

    #[test]
    fn trivial_extension_round_trip_and_failure() {
        let m = example_2_3();
        let ext = KsExtension::new(&m, "b", 4).unwrap();
        let total = build_ks_total(&m, &ext).unwrap();
        assert_eq!(remove_base(&total, ext.base_id()).unwrap(), m);
        match prop23_check(&total, ext.base_id()).unwrap() {
            Certificate::Fail { witness } => {
                assert_eq!(witness.display(total.generators()), "b*");
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn perturbation_must_contain_base() {
        let m = MinimalModel::builder()
            .generator("u", 3)
            .generator("v", 4)
            .generator("y", 7)
            .d("y", &[(1, &["u", "v"])])
            .build()
            .unwrap();
        let mut ext = KsExtension::new(&m, "z", 2).unwrap();
        ext.perturb("y", &[(1, &["v", "u"])]).unwrap();
        assert!(matches!(build_ks_total(&m, &ext), Err(Error::KsExtension(_))));
        assert!(KsExtension::new(&m, "z", 1).is_err());
    }
}
