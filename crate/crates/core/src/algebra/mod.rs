//! Artinian monomial algebras as graded monomial bases, and the integer
//! matrices of multiplication by powers of a linear form.

mod matrix;
mod rank;

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

pub use matrix::{SparseMatrix, SparseTriples};
pub use rank::{
    bareiss_rank, exact_rank, is_kernel_vector, is_prime, kernel_certificate, modular_rank,
    multi_modular_rank, random_primes,
    RankEngine, RankMethod, RankOutcome, DEFAULT_PRIME_SEED,
};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::indpoly::IntPolynomial;

/// A monomial as its exponent vector.
///
/// The derived order is lexicographic on exponents; bases list monomials in
/// the reverse of that order, so `x_1` comes before `x_2`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exponents: Vec<u8>,
}

impl Monomial {
    pub fn new(exponents: Vec<u8>) -> Self {
        Self { exponents }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::new(vec![0; num_vars])
    }

    /// `x_var^exp` in a ring with `num_vars` variables.
    pub fn power(num_vars: usize, var: usize, exp: u8) -> Self {
        let mut e = vec![0; num_vars];
        e[var] = exp;
        Self::new(e)
    }

    pub fn exponents(&self) -> &[u8] {
        &self.exponents
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> usize {
        self.exponents.iter().map(|&e| e as usize).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    /// The variable index if this is a pure power `x_j^e` with `e ≥ 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut support = self.support();
        let j = support.next()?;
        support.next().is_none().then_some(j)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(j, _)| j)
    }

    /// `self * x_var`, or `None` if the exponent would overflow.
    pub fn times_var(&self, var: usize) -> Option<Monomial> {
        let mut e = self.exponents.clone();
        e[var] = e[var].checked_add(1)?;
        Some(Self::new(e))
    }

    /// Renders with the given variable names, e.g. `x_1^2*x_3`; `1` for the
    /// constant monomial.
    pub fn render(&self, labels: &[String]) -> String {
        let factors: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(j, &e)| match e {
                1 => labels[j].clone(),
                _ => format!("{}^{e}", labels[j]),
            })
            .collect();
        if factors.is_empty() {
            "1".into()
        } else {
            factors.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (1..=self.num_vars()).map(|j| format!("x{j}")).collect();
        write!(f, "{}", self.render(&labels))
    }
}

/// `k[x_1..x_n] / J` for a monomial ideal `J` containing a pure power of every
/// variable, stored as its standard monomials degree by degree.
#[derive(Clone, Debug)]
pub struct MonomialAlgebra {
    num_vars: usize,
    generators: Vec<Monomial>,
    bases: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
    var_labels: Vec<String>,
}

impl MonomialAlgebra {
    /// Builds the quotient by the ideal generated by `gens`.
    ///
    /// The generating set is minimalized and sorted. Fails on an empty set,
    /// on a generator of the wrong length, on the unit ideal, and when some
    /// variable has no pure power among the generators.
    pub fn from_generators(num_vars: usize, gens: &[Monomial]) -> Result<Self> {
        let labels = (1..=num_vars).map(|j| format!("y{j}")).collect();
        Self::with_labels(num_vars, gens, labels)
    }

    pub fn with_labels(num_vars: usize, gens: &[Monomial], labels: Vec<String>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        Self::build(num_vars, gens, labels)
    }

    /// `A(G)`: the quotient by all `x_v^2` and the edge monomials `x_u x_v`.
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut gens: Vec<Monomial> = (0..n).map(|v| Monomial::power(n, v, 2)).collect();
        for (u, v) in g.edges() {
            let mut e = vec![0; n];
            e[u] = 1;
            e[v] = 1;
            gens.push(Monomial::new(e));
        }
        Self::build(n, &gens, g.labels()).expect("A(G) is Artinian")
    }

    fn build(num_vars: usize, gens: &[Monomial], var_labels: Vec<String>) -> Result<Self> {
        if var_labels.len() != num_vars {
            return Err(Error::Domain(format!(
                "{} labels for {num_vars} variables",
                var_labels.len()
            )));
        }
        if let Some(g) = gens.iter().find(|g| g.num_vars() != num_vars) {
            return Err(Error::Domain(format!(
                "generator {g:?} has {} exponents, expected {num_vars}",
                g.num_vars()
            )));
        }
        if gens.iter().any(|g| g.degree() == 0) {
            return Err(Error::Domain("the ideal contains 1; the quotient is zero".into()));
        }
        let generators = minimalize(gens);
        for (j, label) in var_labels.iter().enumerate() {
            if !generators.iter().any(|g| g.pure_power_var() == Some(j)) {
                return Err(Error::NotArtinian {
                    variable: j,
                    label: label.clone(),
                });
            }
        }
        let bases = enumerate_bases(num_vars, &generators);
        let index = bases
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect())
            .collect();
        Ok(Self {
            num_vars,
            generators,
            bases,
            index,
            var_labels,
        })
    }

    /// Parses one generator per line as whitespace-separated `name^exp`
    /// factors (exponent 1 may be omitted); `#` starts a comment.
    ///
    /// Variables are the distinct names that occur, ordered by their
    /// alphabetic prefix and then numerically by any trailing digits, so
    /// `y2` precedes `y10`.
    pub fn parse_generators(text: &str) -> Result<Self> {
        let mut parsed: Vec<Vec<(String, u8)>> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: lineno + 1,
                message,
            };
            let mut factors = Vec::new();
            for tok in line.split(|c: char| c.is_whitespace() || c == '*') {
                if tok.is_empty() {
                    continue;
                }
                let (name, exp) = match tok.split_once('^') {
                    Some((name, e)) => (
                        name,
                        e.parse::<u8>()
                            .map_err(|_| err(format!("bad exponent in `{tok}`")))?,
                    ),
                    None => (tok, 1),
                };
                let valid = name.chars().next().is_some_and(char::is_alphabetic)
                    && name.chars().all(|c| c.is_alphanumeric() || c == '_');
                if !valid {
                    return Err(err(format!("bad variable name `{name}`")));
                }
                if exp > 0 {
                    factors.push((name.to_string(), exp));
                }
            }
            parsed.push(factors);
        }
        let mut names: Vec<String> = parsed.iter().flatten().map(|(n, _)| n.clone()).collect();
        names.sort_by_key(|a| natural_key(a));
        names.dedup();
        let position: HashMap<&str, usize> =
            names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let mut gens = Vec::with_capacity(parsed.len());
        for factors in &parsed {
            let mut e = vec![0u8; names.len()];
            for (name, exp) in factors {
                let slot = &mut e[position[name.as_str()]];
                *slot = slot.checked_add(*exp).ok_or_else(|| {
                    Error::Domain(format!("exponent of {name} exceeds 255"))
                })?;
            }
            gens.push(Monomial::new(e));
        }
        Self::with_labels(names.len(), &gens, names)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// The minimal generators of the ideal.
    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn var_labels(&self) -> &[String] {
        &self.var_labels
    }

    /// `D`, the top nonzero degree.
    pub fn socle_degree(&self) -> usize {
        self.bases.len() - 1
    }

    /// `h_d = dim [A]_d`, zero past the socle degree.
    pub fn dim(&self, d: usize) -> usize {
        self.bases.get(d).map_or(0, Vec::len)
    }

    /// Standard monomials of degree `d` in canonical order; empty past `D`.
    pub fn basis(&self, d: usize) -> &[Monomial] {
        self.bases.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m.degree())?.get(m).copied()
    }

    pub fn hilbert_series(&self) -> IntPolynomial {
        IntPolynomial::new(self.bases.iter().map(|b| BigInt::from(b.len())).collect())
    }
}

fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut sorted: Vec<Monomial> = gens.to_vec();
    sorted.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    sorted.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    for g in sorted {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

/// Standard monomials degree by degree. Each monomial of degree `d + 1` is
/// generated once, from the parent obtained by lowering its last variable;
/// a child is standard iff no generator involving the raised variable
/// divides it, because its parent is already standard.
fn enumerate_bases(num_vars: usize, gens: &[Monomial]) -> Vec<Vec<Monomial>> {
    let by_var: Vec<Vec<&Monomial>> = (0..num_vars)
        .map(|j| gens.iter().filter(|g| g.exponents[j] > 0).collect())
        .collect();
    let mut bases = vec![vec![Monomial::one(num_vars)]];
    loop {
        let prev = bases.last().expect("degree 0 present");
        let mut next = Vec::new();
        for m in prev {
            let start = m.support().last().unwrap_or(0);
            for j in start..num_vars {
                let Some(child) = m.times_var(j) else { continue };
                if !by_var[j].iter().any(|g| g.divides(&child)) {
                    next.push(child);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_unstable_by(|a, b| b.cmp(a));
        bases.push(next);
    }
    bases
}

fn natural_key(name: &str) -> (String, u64, String) {
    let digits = name.len() - name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (prefix, suffix) = name.split_at(name.len() - digits);
    (
        prefix.to_string(),
        suffix.parse().unwrap_or(0),
        name.to_string(),
    )
}

/// A random Artinian monomial algebra with `1..=max_vars` variables, pure
/// powers `y_j^e` with `2 <= e <= max_exp`, and up to three extra mixed
/// generators with exponents at most `max_exp`. Draws are repeated until
/// the socle degree lies in `socle`.
pub fn random_algebra<R: rand::Rng + ?Sized>(
    rng: &mut R,
    max_vars: usize,
    max_exp: u8,
    socle: std::ops::RangeInclusive<usize>,
) -> MonomialAlgebra {
    assert!(max_vars >= 1 && max_exp >= 2 && *socle.start() >= 1);
    loop {
        let nv = rng.gen_range(1..=max_vars);
        let mut gens: Vec<Monomial> = (0..nv)
            .map(|j| Monomial::power(nv, j, rng.gen_range(2..=max_exp)))
            .collect();
        for _ in 0..rng.gen_range(0..=3) {
            let e: Vec<u8> = (0..nv).map(|_| rng.gen_range(0..=max_exp)).collect();
            if e.iter().filter(|&&x| x > 0).count() >= 2 {
                gens.push(Monomial::new(e));
            }
        }
        let a = MonomialAlgebra::from_generators(nv, &gens).expect("pure powers present");
        if socle.contains(&a.socle_degree()) {
            return a;
        }
    }
}

/// Bases of `A(G)` viewed as independent sets: the support of each monomial.
pub fn basis_as_vertex_sets(a: &MonomialAlgebra, d: usize) -> Vec<VertexSet> {
    a.basis(d).iter().map(|m| m.support().collect()).collect()
}

/// A linear form `sum_j c_j x_j` with integer coefficients, not all zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    coefficients: Vec<BigInt>,
}

impl LinearForm {
    pub fn new(coefficients: Vec<BigInt>) -> Result<Self> {
        if coefficients.iter().all(Zero::is_zero) {
            return Err(Error::Domain("the linear form is zero".into()));
        }
        Ok(Self { coefficients })
    }

    pub fn from_i64s(coefficients: &[i64]) -> Result<Self> {
        Self::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x_1 + ... + x_n`. For `n = 0` this is the (empty) zero form, which is
    /// allowed here because the ring has no degree-one part to test.
    pub fn all_ones(n: usize) -> Self {
        Self {
            coefficients: vec![BigInt::from(1); n],
        }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn is_all_ones(&self) -> bool {
        self.coefficients.iter().all(|c| *c == BigInt::from(1))
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// The matrix of `·ℓ^t : [A]_i → [A]_{i+t}` in the canonical bases, with its
/// rank computed on first use.
#[derive(Debug)]
pub struct GradedMap {
    source_degree: usize,
    target_degree: usize,
    matrix: SparseMatrix,
    rank: OnceLock<RankOutcome>,
}

/// JSON export of a [`GradedMap`].
#[derive(Clone, Debug, Serialize)]
pub struct GradedMapJson {
    pub source_degree: usize,
    pub target_degree: usize,
    pub shape: (usize, usize),
    pub entries: Vec<(usize, usize, String)>,
    pub rank: usize,
}

impl GradedMap {
    pub fn new(source_degree: usize, target_degree: usize, matrix: SparseMatrix) -> Self {
        Self {
            source_degree,
            target_degree,
            matrix,
            rank: OnceLock::new(),
        }
    }

    pub fn source_degree(&self) -> usize {
        self.source_degree
    }

    pub fn target_degree(&self) -> usize {
        self.target_degree
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn rank_outcome(&self) -> RankOutcome {
        *self
            .rank
            .get_or_init(|| RankEngine::global().rank(&self.matrix))
    }

    pub fn rank(&self) -> usize {
        self.rank_outcome().rank
    }

    /// Injective; maps out of the zero space always are.
    pub fn is_injective(&self) -> bool {
        self.rank() == self.source_dim()
    }

    /// Surjective; maps onto the zero space always are.
    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target_dim()
    }

    pub fn is_maximal_rank(&self) -> bool {
        self.rank() == self.source_dim().min(self.target_dim())
    }

    pub fn to_json(&self) -> GradedMapJson {
        let t = self.matrix.to_triples();
        GradedMapJson {
            source_degree: self.source_degree,
            target_degree: self.target_degree,
            shape: (t.rows, t.cols),
            entries: t.entries,
            rank: self.rank(),
        }
    }
}

/// `·ℓ^t : [A]_i → [A]_{i+t}`. The `t = 1` matrix is read off the bases; for
/// `t ≥ 2` it is the product of `t` successive degree-one maps.
pub fn multiplication_map(
    a: &MonomialAlgebra,
    ell: &LinearForm,
    i: usize,
    t: usize,
) -> Result<GradedMap> {
    if t == 0 {
        return Err(Error::Domain("the power of the linear form must be ≥ 1".into()));
    }
    if ell.len() != a.num_vars() {
        return Err(Error::Precondition(format!(
            "linear form has {} coefficients, algebra has {} variables",
            ell.len(),
            a.num_vars()
        )));
    }
    let mut product = degree_one_matrix(a, ell, i);
    for d in i + 1..i + t {
        product = degree_one_matrix(a, ell, d).mul(&product);
    }
    Ok(GradedMap::new(i, i + t, product))
}

fn degree_one_matrix(a: &MonomialAlgebra, ell: &LinearForm, i: usize) -> SparseMatrix {
    let source = a.basis(i);
    let rows = a.dim(i + 1);
    let columns = source
        .iter()
        .map(|m| {
            ell.coefficients()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .filter_map(|(j, c)| {
                    let image = m.times_var(j)?;
                    a.index
                        .get(i + 1)
                        .and_then(|idx| idx.get(&image))
                        .map(|&r| (r, c.clone()))
                })
                .collect()
        })
        .collect();
    SparseMatrix::from_columns(rows, columns)
}
