use std::collections::BTreeMap;

use num_traits::Zero;

use crate::dercomplex::{DerComplex, Derivation};
use crate::error::{Error, Result};
use crate::gca::{GenId, Rational};
use crate::model::MinimalModel;

use super::matrix::{kernel_basis, rank, solve, EchelonSpan};

/// Homology of `(Der(ΛV), D)` in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHomology {
    pub degree: u32,
    /// `dim Der_n`
    pub chains: usize,
    /// `dim ker(D_n)`
    pub cycles: usize,
    /// `rank(D_{n+1})`
    pub boundaries: usize,
    /// `rank(D_n)`
    pub rank_out: usize,
    pub representatives: Vec<Derivation>,
}

impl DegreeHomology {
    pub fn dim(&self) -> usize {
        self.cycles - self.boundaries
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    /// One entry per degree `1..=N`.
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyReport {
    pub fn get(&self, n: u32) -> Option<&DegreeHomology> {
        self.degrees.iter().find(|d| d.degree == n)
    }

    pub fn dim(&self, n: u32) -> usize {
        self.get(n).map_or(0, DegreeHomology::dim)
    }

    /// Nonzero homology dimensions.
    pub fn ranks(&self) -> BTreeMap<u32, usize> {
        self.degrees
            .iter()
            .filter(|d| d.dim() > 0)
            .map(|d| (d.degree, d.dim()))
            .collect()
    }

    /// `rank π_{n+1}(B aut₁ X) = dim H_n`, nonzero entries only.
    pub fn baut_ranks(&self) -> BTreeMap<u32, usize> {
        self.ranks().into_iter().map(|(n, r)| (n + 1, r)).collect()
    }

    /// Coordinates of the class of `cycle` in the representative basis, or
    /// `None` if it is not a cycle.
    pub fn class_of(&self, complex: &DerComplex, cycle: &Derivation) -> Option<Vec<Rational>> {
        let n = u32::try_from(cycle.degree()).ok().filter(|&n| n >= 1)?;
        let Some(h) = self.get(n) else {
            return cycle.is_zero().then(Vec::new);
        };
        let target = complex.coordinates(cycle);
        let d_out = complex.matrix_of_d(n).ok()?;
        if !d_out.mul_vec(&target).iter().all(Zero::is_zero) {
            return None;
        }
        let mut columns: Vec<Vec<Rational>> = h
            .representatives
            .iter()
            .map(|r| complex.coordinates(r))
            .collect();
        let reps = columns.len();
        if let Ok(d_in) = complex.matrix_of_d(n + 1) {
            columns.extend((0..d_in.cols()).map(|j| d_in.column(j)));
        }
        let x = solve(complex.dim(n), &columns, &target)?;
        Some(x[..reps].to_vec())
    }

    /// Bracket of two representatives, expressed in the representative basis
    /// of the target degree. This is the Lie structure on `π_*(Ω B aut₁ X)`.
    pub fn bracket_classes(
        &self,
        complex: &DerComplex,
        (n1, i1): (u32, usize),
        (n2, i2): (u32, usize),
    ) -> Option<Vec<Rational>> {
        let a = self.get(n1)?.representatives.get(i1)?;
        let b = self.get(n2)?.representatives.get(i2)?;
        self.class_of(complex, &complex.bracket(a, b))
    }
}

/// Homology of the derivation complex of a valid model.
pub fn homology(m: &MinimalModel) -> Result<HomologyReport> {
    Ok(homology_of(&DerComplex::new(m)?))
}

pub fn homology_of(complex: &DerComplex) -> HomologyReport {
    let top = complex.top_degree();
    let matrices: Vec<_> = (1..=top + 1)
        .map(|n| complex.matrix_of_d(n).expect("degree in range"))
        .collect();
    let mut degrees = Vec::new();
    for n in 1..=top {
        let d_out = &matrices[(n - 1) as usize];
        let d_in = &matrices[n as usize];
        let kernel = kernel_basis(d_out);
        let mut span = EchelonSpan::new();
        for j in 0..d_in.cols() {
            span.insert(&d_in.column(j));
        }
        let boundaries = span.dim();
        let representatives = kernel
            .iter()
            .filter(|v| span.insert(v))
            .map(|v| complex.derivation(n, v))
            .collect();
        degrees.push(DegreeHomology {
            degree: n,
            chains: complex.dim(n),
            cycles: kernel.len(),
            boundaries,
            rank_out: rank(d_out),
            representatives,
        });
    }
    HomologyReport { degrees }
}

/// `(N + 1, dim V^N)`, checked against the computed `H_N`.
pub fn top_degree_law(m: &MinimalModel) -> Result<(u32, usize)> {
    let (n, r) = m.top_stage();
    let report = homology(m)?;
    let found = report.dim(n);
    if n > 0 && found != r {
        return Err(Error::TopDegreeMismatch {
            degree: n,
            expected: r,
            found,
        });
    }
    Ok((n + 1, r))
}

/// The functional `v ↦ constant term of θ(v)` on the degree-`|θ|`
/// generators, in canonical generator order.
pub fn restriction_functional(m: &MinimalModel, theta: &Derivation) -> Vec<(GenId, Rational)> {
    m.generators()
        .canonical()
        .into_iter()
        .filter(|g| i64::from(g.degree) == theta.degree())
        .map(|g| {
            let c = theta.value(g.id).map_or_else(Rational::zero, |p| p.constant_term());
            (g.id, c)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GottliebDegree {
    pub degree: u32,
    pub rank: usize,
    /// Independent functionals spanning the image, over the generators of
    /// this degree.
    pub functionals: Vec<Vec<(GenId, Rational)>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GottliebReport {
    pub degrees: Vec<GottliebDegree>,
}

impl GottliebReport {
    pub fn rank(&self, n: u32) -> usize {
        self.degrees
            .iter()
            .find(|d| d.degree == n)
            .map_or(0, |d| d.rank)
    }

    pub fn ranks(&self) -> BTreeMap<u32, usize> {
        self.degrees
            .iter()
            .filter(|d| d.rank > 0)
            .map(|d| (d.degree, d.rank))
            .collect()
    }
}

/// Image of `H(ε): H_*(Der ΛV) → Hom(V, ℚ)`.
pub fn gottlieb(m: &MinimalModel) -> Result<GottliebReport> {
    let complex = DerComplex::new(m)?;
    Ok(gottlieb_of(m, &homology_of(&complex)))
}

pub fn gottlieb_of(m: &MinimalModel, report: &HomologyReport) -> GottliebReport {
    let degrees = report
        .degrees
        .iter()
        .map(|h| {
            let mut span = EchelonSpan::new();
            let mut functionals = Vec::new();
            for rep in &h.representatives {
                let f = restriction_functional(m, rep);
                let values: Vec<Rational> = f.iter().map(|(_, c)| c.clone()).collect();
                if span.insert(&values) {
                    functionals.push(f);
                }
            }
            GottliebDegree {
                degree: h.degree,
                rank: functionals.len(),
                functionals,
            }
        })
        .collect();
    GottliebReport { degrees }
}
