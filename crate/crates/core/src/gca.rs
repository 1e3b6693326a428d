//! Free graded-commutative algebras over ℚ.
//!
//! A [`GeneratorSet`] fixes the graded vector space `V`; elements of `ΛV` are
//! [`Polynomial`]s whose terms are [`Monomial`]s kept in canonical form.
//! Factors are ordered by `(degree, id)`, even generators carry an exponent and
//! odd generators appear at most once. Every reordering needed to reach
//! canonical form is paid for with its Koszul sign.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Integer shorthand used all over the tests and fixtures.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId(pub u32);

impl GenId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub id: GenId,
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }

    fn key(&self) -> (u32, GenId) {
        (self.degree, self.id)
    }
}

/// One factor `gen^exp` of a monomial. The generator degree is carried along
/// so monomials can be multiplied and compared without a generator table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub gen: GenId,
    pub degree: u32,
    pub exp: u32,
}

impl Factor {
    fn key(&self) -> (u32, GenId) {
        (self.degree, self.gen)
    }

    fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// A canonical monomial with implicit coefficient `+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<Factor>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn generator(g: &Generator) -> Self {
        Monomial {
            factors: vec![Factor {
                gen: g.id,
                degree: g.degree,
                exp: 1,
            }],
        }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|f| f.degree * f.exp).sum()
    }

    pub fn word_length(&self) -> u32 {
        self.factors.iter().map(|f| f.exp).sum()
    }

    pub fn is_odd(&self) -> bool {
        self.degree() % 2 == 1
    }

    pub fn exponent(&self, id: GenId) -> u32 {
        self.factors
            .iter()
            .find(|f| f.gen == id)
            .map_or(0, |f| f.exp)
    }

    pub fn contains(&self, id: GenId) -> bool {
        self.exponent(id) > 0
    }

    /// The factors spelled out one generator at a time, in canonical order.
    pub fn expanded(&self) -> impl Iterator<Item = Factor> + '_ {
        self.factors.iter().flat_map(|f| {
            std::iter::repeat(Factor { exp: 1, ..*f }).take(f.exp as usize)
        })
    }

    /// Builds a monomial from single factors that are already sorted.
    fn from_sorted(single: &[Factor]) -> Self {
        let mut factors: Vec<Factor> = Vec::with_capacity(single.len());
        for f in single {
            match factors.last_mut() {
                Some(last) if last.gen == f.gen => last.exp += f.exp,
                _ => factors.push(*f),
            }
        }
        Monomial { factors }
    }

    /// Graded-commutative product. Returns `None` when an odd generator would
    /// be squared, otherwise the Koszul sign (`true` = negative) and the
    /// canonical product.
    pub fn mul(&self, other: &Monomial) -> Option<(bool, Monomial)> {
        let mut negative = false;
        for b in other.factors.iter().filter(|f| f.is_odd()) {
            for a in self.factors.iter().filter(|f| f.is_odd()) {
                match a.key().cmp(&b.key()) {
                    Ordering::Greater => negative = !negative,
                    Ordering::Equal => return None,
                    Ordering::Less => {}
                }
            }
        }
        let mut merged: BTreeMap<(u32, GenId), u32> = BTreeMap::new();
        for f in self.factors.iter().chain(other.factors.iter()) {
            *merged.entry(f.key()).or_insert(0) += f.exp;
        }
        let factors = merged
            .into_iter()
            .map(|((degree, gen), exp)| Factor { gen, degree, exp })
            .collect();
        Some((negative, Monomial { factors }))
    }

    /// Splits off a single copy of `gen`, returning the remaining monomial.
    pub fn without_one(&self, gen: GenId) -> Option<Monomial> {
        let mut factors = self.factors.clone();
        let pos = factors.iter().position(|f| f.gen == gen)?;
        if factors[pos].exp == 1 {
            factors.remove(pos);
        } else {
            factors[pos].exp -= 1;
        }
        Some(Monomial { factors })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.word_length().cmp(&other.word_length()))
            .then_with(|| {
                self.expanded()
                    .map(|f| f.key())
                    .cmp(other.expanded().map(|f| f.key()))
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Result of putting a word of generators into canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    Zero,
    Term { sign: i8, monomial: Monomial },
}

impl Normalized {
    pub fn sign(&self) -> i8 {
        match self {
            Normalized::Zero => 0,
            Normalized::Term { sign, .. } => *sign,
        }
    }

    pub fn monomial(&self) -> Option<&Monomial> {
        match self {
            Normalized::Zero => None,
            Normalized::Term { monomial, .. } => Some(monomial),
        }
    }
}

/// An element of `ΛV`: a finite map from canonical monomials to nonzero
/// rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub const fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Polynomial::term(Monomial::one(), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn generator(g: &Generator) -> Self {
        Polynomial::term(Monomial::generator(g), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Total degree if every term shares it; `None` for zero or mixed degree.
    pub fn degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x * c))
                .collect(),
        }
    }

    /// Coefficient of the unit monomial.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    /// Drops every term containing `gen`.
    pub fn without_generator(&self, gen: GenId) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.contains(gen))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Renames generators through `f`, which must preserve the relative
    /// canonical order of the generators that occur.
    pub fn remap(&self, f: impl Fn(GenId) -> GenId) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let factors = m
                .factors
                .iter()
                .map(|x| Factor { gen: f(x.gen), ..*x })
                .collect();
            out.add_term(Monomial { factors }, c.clone());
        }
        out
    }

    pub fn max_generator(&self) -> Option<GenId> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|f| f.gen))
            .max()
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                if let Some((negative, m)) = a.mul(b) {
                    let c = x * y;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        out
    }
}

/// Applies the derivation of ΛV determined by `values` on generators to `p`.
///
/// `odd` is the parity of the derivation's degree; the Leibniz sign for a
/// factor preceded by a prefix of degree `k` is `(-1)^{odd·k}`.
pub fn apply_derivation<'a, F>(odd: bool, values: F, p: &Polynomial) -> Polynomial
where
    F: Fn(GenId) -> Option<&'a Polynomial>,
{
    let mut out = Polynomial::zero();
    for (m, c) in p.terms() {
        let single: Vec<Factor> = m.expanded().collect();
        let mut prefix_degree = 0u32;
        for (i, f) in single.iter().enumerate() {
            if let Some(value) = values(f.gen).filter(|v| !v.is_zero()) {
                let prefix = Polynomial::term(Monomial::from_sorted(&single[..i]), c.clone());
                let suffix = Polynomial::term(Monomial::from_sorted(&single[i + 1..]), Rational::one());
                let mut piece = &(&prefix * value) * &suffix;
                if odd && prefix_degree % 2 == 1 {
                    piece = -&piece;
                }
                out += &piece;
            }
            prefix_degree += f.degree;
        }
    }
    out
}

/// The graded vector space `V` of a free graded-commutative algebra.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GeneratorSet {
    gens: Vec<Generator>,
    by_name: HashMap<String, GenId>,
}

impl GeneratorSet {
    pub fn new<'a, I>(gens: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, u32)>,
    {
        let mut set = GeneratorSet::default();
        for (name, degree) in gens {
            set.push(name, degree)?;
        }
        Ok(set)
    }

    pub fn push(&mut self, name: &str, degree: u32) -> Result<GenId> {
        if degree == 0 {
            return Err(Error::ZeroDegree(name.to_string()));
        }
        if self.by_name.contains_key(name) {
            return Err(Error::DuplicateGenerator(name.to_string()));
        }
        let id = GenId(self.gens.len() as u32);
        self.gens.push(Generator {
            id,
            name: name.to_string(),
            degree,
        });
        self.by_name.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Generators in declaration order.
    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.gens.iter()
    }

    /// Generators sorted by `(degree, id)`.
    pub fn canonical(&self) -> Vec<&Generator> {
        let mut gens: Vec<&Generator> = self.gens.iter().collect();
        gens.sort_by_key(|g| g.key());
        gens
    }

    pub fn get(&self, id: GenId) -> Option<&Generator> {
        self.gens.get(id.index())
    }

    /// Panics on a foreign id; use [`GeneratorSet::get`] for untrusted input.
    pub fn generator(&self, id: GenId) -> &Generator {
        &self.gens[id.index()]
    }

    pub fn by_name(&self, name: &str) -> Option<&Generator> {
        self.by_name.get(name).map(|id| &self.gens[id.index()])
    }

    pub fn id(&self, name: &str) -> Result<GenId> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn top_degree(&self) -> u32 {
        self.gens.iter().map(|g| g.degree).max().unwrap_or(0)
    }

    pub fn gen_poly(&self, id: GenId) -> Polynomial {
        Polynomial::generator(self.generator(id))
    }

    /// Puts a word of generators into canonical order, tracking the Koszul
    /// sign of the sorting permutation.
    pub fn normalize_monomial(&self, seq: &[GenId]) -> Result<Normalized> {
        let mut single = Vec::with_capacity(seq.len());
        for &id in seq {
            let g = self.get(id).ok_or(Error::UnknownGeneratorId(id.0))?;
            single.push(Factor {
                gen: id,
                degree: g.degree,
                exp: 1,
            });
        }
        let mut negative = false;
        for i in 0..single.len() {
            for j in i + 1..single.len() {
                let (a, b) = (single[i], single[j]);
                if a.is_odd() && b.is_odd() {
                    match a.key().cmp(&b.key()) {
                        Ordering::Greater => negative = !negative,
                        Ordering::Equal => return Ok(Normalized::Zero),
                        Ordering::Less => {}
                    }
                }
            }
        }
        single.sort_by_key(Factor::key);
        Ok(Normalized::Term {
            sign: if negative { -1 } else { 1 },
            monomial: Monomial::from_sorted(&single),
        })
    }

    /// Builds a polynomial from `(coefficient, word)` pairs; each word is a
    /// list of generator names and is normalized with its Koszul sign.
    pub fn poly(&self, terms: &[(i64, &[&str])]) -> Result<Polynomial> {
        let mut p = Polynomial::zero();
        for (c, word) in terms {
            let ids = word.iter().map(|n| self.id(n)).collect::<Result<Vec<_>>>()?;
            if let Normalized::Term { sign, monomial } = self.normalize_monomial(&ids)? {
                p.add_term(monomial, rat(c * i64::from(sign)));
            }
        }
        Ok(p)
    }

    /// Checks that every factor of `p` is a generator of this set.
    pub fn check(&self, p: &Polynomial) -> Result<()> {
        for m in p.monomials() {
            for f in m.factors() {
                let g = self.get(f.gen).ok_or(Error::UnknownGeneratorId(f.gen.0))?;
                if g.degree != f.degree {
                    return Err(Error::ForeignPolynomial {
                        id: f.gen.0,
                        expected: g.degree,
                        found: f.degree,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn multiply(&self, p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
        self.check(p)?;
        self.check(q)?;
        Ok(p * q)
    }

    /// All canonical monomials of total degree `n`, ordered by word length and
    /// then lexicographically in canonical factor order.
    pub fn basis_of_degree(&self, n: u32) -> Vec<Monomial> {
        let gens = self.canonical();
        let mut out = Vec::new();
        let mut current = Vec::new();
        enumerate(&gens, 0, n, &mut current, &mut out);
        out.sort();
        out
    }

    pub fn monomial_string(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        m.factors()
            .iter()
            .map(|f| {
                let name = &self.generator(f.gen).name;
                if f.exp == 1 {
                    name.clone()
                } else {
                    format!("{name}^{}", f.exp)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Formats `p` in the model-file expression syntax, e.g. `x*y - 2/3*v^2`.
    pub fn polynomial_string(&self, p: &Polynomial) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in p.terms().enumerate() {
            let magnitude = c.abs();
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            match (magnitude.is_one(), m.is_one()) {
                (true, true) => out.push('1'),
                (true, false) => out.push_str(&self.monomial_string(m)),
                (false, true) => out.push_str(&magnitude.to_string()),
                (false, false) => {
                    out.push_str(&magnitude.to_string());
                    out.push('*');
                    out.push_str(&self.monomial_string(m));
                }
            }
        }
        out
    }
}

fn enumerate(
    gens: &[&Generator],
    start: usize,
    remaining: u32,
    current: &mut Vec<Factor>,
    out: &mut Vec<Monomial>,
) {
    if remaining == 0 {
        out.push(Monomial {
            factors: current.clone(),
        });
        return;
    }
    for (i, g) in gens.iter().enumerate().skip(start) {
        if g.degree > remaining {
            continue;
        }
        let max_exp = if g.is_odd() { 1 } else { remaining / g.degree };
        for exp in 1..=max_exp {
            current.push(Factor {
                gen: g.id,
                degree: g.degree,
                exp,
            });
            enumerate(gens, i + 1, remaining - exp * g.degree, current, out);
            current.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set() -> GeneratorSet {
        GeneratorSet::new([("x", 3), ("y", 3), ("z", 5), ("v", 2)]).unwrap()
    }

    fn g(s: &GeneratorSet, name: &str) -> Polynomial {
        s.gen_poly(s.id(name).unwrap())
    }

    #[test]
    fn normalize_odd_transposition() {
        let s = set();
        let (x, y) = (s.id("x").unwrap(), s.id("y").unwrap());
        let n = s.normalize_monomial(&[y, x]).unwrap();
        assert_eq!(n.sign(), -1);
        assert_eq!(s.monomial_string(n.monomial().unwrap()), "x*y");
    }

    #[test]
    fn normalize_odd_square_vanishes() {
        let s = set();
        let x = s.id("x").unwrap();
        assert_eq!(s.normalize_monomial(&[x, x]).unwrap(), Normalized::Zero);
    }

    #[test]
    fn normalize_even_square() {
        let s = set();
        let v = s.id("v").unwrap();
        let n = s.normalize_monomial(&[v, v]).unwrap();
        assert_eq!(n.sign(), 1);
        assert_eq!(s.monomial_string(n.monomial().unwrap()), "v^2");
    }

    #[test]
    fn normalize_unknown_id() {
        assert_eq!(
            set().normalize_monomial(&[GenId(99)]),
            Err(Error::UnknownGeneratorId(99))
        );
    }

    #[test]
    fn odd_product_signs() {
        let s = set();
        let (x, z) = (g(&s, "x"), g(&s, "z"));
        let xz = &x * &z;
        assert_eq!(s.polynomial_string(&xz), "x*z");
        assert_eq!(&z * &x, -&xz);
    }

    #[test]
    fn square_of_odd_sum_vanishes() {
        let s = set();
        let p = &g(&s, "x") + &g(&s, "y");
        assert!((&p * &p).is_zero());
    }

    #[test]
    fn odd_times_mixed_product() {
        // |u1 v1| = 5 and |u2| = 3, so u1v1·u2 = -u2·(u1v1) = -u2·u1·v1.
        let s = GeneratorSet::new([("v1", 2), ("u1", 3), ("u2", 3)]).unwrap();
        let (u1, v1, u2) = (g(&s, "u1"), g(&s, "v1"), g(&s, "u2"));
        let lhs = &(&u1 * &v1) * &u2;
        let rhs = -&(&(&u2 * &u1) * &v1);
        assert_eq!(lhs, rhs);
        assert_eq!(s.polynomial_string(&lhs), "v1*u1*u2");
        let word = [s.id("u2").unwrap(), s.id("u1").unwrap(), s.id("v1").unwrap()];
        assert_eq!(s.normalize_monomial(&word).unwrap().sign(), -1);
    }

    #[test]
    fn basis_degree_zero_is_unit() {
        let s = set();
        assert_eq!(s.basis_of_degree(0), vec![Monomial::one()]);
    }

    #[test]
    fn basis_without_degree_one_generators() {
        let s = GeneratorSet::new([("x", 3), ("v", 2)]).unwrap();
        assert!(s.basis_of_degree(1).is_empty());
        let names: Vec<_> = s.basis_of_degree(6).iter().map(|m| s.monomial_string(m)).collect();
        assert_eq!(names, ["v^3"]);
    }

    #[test]
    fn duplicate_and_zero_degree_rejected() {
        assert_eq!(
            GeneratorSet::new([("x", 3), ("x", 5)]),
            Err(Error::DuplicateGenerator("x".into()))
        );
        assert_eq!(GeneratorSet::new([("x", 0)]), Err(Error::ZeroDegree("x".into())));
    }

    #[test]
    fn formatting() {
        let s = set();
        let p = &(&g(&s, "x") * &g(&s, "y")).scale(&ratio(-2, 3)) + &(&g(&s, "v") * &g(&s, "v"));
        assert_eq!(s.polynomial_string(&p), "v^2 - 2/3*x*y");
        assert_eq!(s.polynomial_string(&Polynomial::zero()), "0");
        assert_eq!(s.polynomial_string(&Polynomial::one().scale(&rat(-1))), "-1");
    }
}
