//! The tensor product `B = k[u_1..u_n]/(u)^2 ⊗ A` and its block matrices.
//!
//! With the `u` variables ordered first, the canonical basis of `[B]_i` is
//! `u_1 𝒜_{i-1}, …, u_n 𝒜_{i-1}, 𝒜_i`, so the matrix of
//! `ℓ' = u_1 + … + u_n + ℓ` from degree `i` to `i + 1` has the block form
//!
//! ```text
//!     | M            I |
//!     |    M         I |
//!     |       ⋱      ⋮ |
//!     |          M   I |
//!     |              N |
//! ```
//!
//! with `M = 𝓜^{i-1}_i` and `N = 𝓜^i_{i+1}` computed on `A`. Eliminating the
//! identity blocks gives
//! `rank ℓ' = h_i + (n - 1)·rank 𝓜^{i-1}_i + rank 𝓜^{i-1}_{i+1}` for
//! `i ≥ 1`, which is what [`verdict_via_theorem`] uses to predict the
//! direct verdict from ranks on `A` alone.

use serde::Serialize;

use crate::algebra::{multiplication_map, LinearForm, Monomial, MonomialAlgebra, SparseMatrix};
use crate::error::{Error, Result};
use num_bigint::BigInt;

/// `B` together with the factor `A` it was built from.
#[derive(Clone, Debug)]
pub struct TensorAlgebra {
    n: usize,
    inner: MonomialAlgebra,
    realized: MonomialAlgebra,
}

impl TensorAlgebra {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn inner(&self) -> &MonomialAlgebra {
        &self.inner
    }

    pub fn realized(&self) -> &MonomialAlgebra {
        &self.realized
    }

    /// Socle degree `D` of the factor `A`.
    pub fn inner_socle_degree(&self) -> usize {
        self.inner.socle_degree()
    }
}

/// Builds `B` over `n + m` variables: `u_1..u_n` first, then the variables
/// of `a`. The ideal is `(u_j u_k : j ≤ k)` plus the generators of `a`.
pub fn tensor_with_squarefree_block(n: usize, a: &MonomialAlgebra) -> Result<TensorAlgebra> {
    if n == 0 {
        return Err(Error::Domain("the square-zero block needs n >= 1 variables".into()));
    }
    if a.socle_degree() == 0 {
        return Err(Error::Precondition("the factor must have socle degree D > 0".into()));
    }
    let m = a.num_vars();
    let mut gens = Vec::new();
    for j in 0..n {
        for k in j..n {
            let mut e = vec![0u8; n + m];
            e[j] += 1;
            e[k] += 1;
            gens.push(Monomial::new(e));
        }
    }
    for g in a.generators() {
        let mut e = vec![0u8; n];
        e.extend_from_slice(g.exponents());
        gens.push(Monomial::new(e));
    }
    let mut labels: Vec<String> = (1..=n).map(|j| format!("u_{j}")).collect();
    labels.extend(a.var_labels().iter().cloned());
    let realized = MonomialAlgebra::with_labels(n + m, &gens, labels)?;
    Ok(TensorAlgebra {
        n,
        inner: a.clone(),
        realized,
    })
}

fn check_degree(tb: &TensorAlgebra, i: usize) -> Result<()> {
    let max = tb.inner_socle_degree();
    if i > max {
        return Err(Error::DegreeOutOfRange { degree: i, max });
    }
    Ok(())
}

/// The matrix of `·ℓ' : [B]_i → [B]_{i+1}` computed directly on `B`.
pub fn block_matrix(tb: &TensorAlgebra, i: usize) -> Result<crate::algebra::GradedMap> {
    check_degree(tb, i)?;
    let b = tb.realized();
    multiplication_map(b, &LinearForm::all_ones(b.num_vars()), i, 1)
}

/// The same matrix assembled from `𝓜^{i-1}_i` and `𝓜^i_{i+1}` on `A` and
/// identity blocks. At `i = 0` the `u 𝒜_{-1}` column blocks are empty; at
/// `i = D` the `𝒜_{D+1}` row block is.
pub fn assembled_block_matrix(tb: &TensorAlgebra, i: usize) -> Result<SparseMatrix> {
    check_degree(tb, i)?;
    let a = tb.inner();
    let n = tb.n();
    let ell = LinearForm::all_ones(a.num_vars());
    let (h_prev, h_i, h_next) = (
        if i == 0 { 0 } else { a.dim(i - 1) },
        a.dim(i),
        a.dim(i + 1),
    );
    let mut triples: Vec<(usize, usize, BigInt)> = Vec::new();
    if i > 0 {
        let m = multiplication_map(a, &ell, i - 1, 1)?;
        for k in 0..n {
            for (r, c, v) in m.matrix().triples() {
                triples.push((k * h_i + r, k * h_prev + c, v.clone()));
            }
        }
    }
    let col0 = n * h_prev;
    for k in 0..n {
        for j in 0..h_i {
            triples.push((k * h_i + j, col0 + j, BigInt::from(1)));
        }
    }
    let nmap = multiplication_map(a, &ell, i, 1)?;
    for (r, c, v) in nmap.matrix().triples() {
        triples.push((n * h_i + r, col0 + c, v.clone()));
    }
    Ok(SparseMatrix::from_triples(
        n * h_i + h_next,
        n * h_prev + h_i,
        triples,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub injective: bool,
    pub surjective: bool,
}

impl Verdict {
    fn from_rank(rank: usize, source: usize, target: usize) -> Self {
        Self {
            injective: rank == source,
            surjective: rank == target,
        }
    }

    pub fn maximal_rank(&self) -> bool {
        self.injective || self.surjective
    }
}

/// Predicted versus direct verdicts for `·ℓ'` at one degree.
#[derive(Clone, Debug, Serialize)]
pub struct BlockMatrixReport {
    pub degree: usize,
    /// From the rank identity on `A`.
    pub predicted: Verdict,
    /// From the rank of the matrix on `B`.
    pub direct: Verdict,
    pub agree: bool,
    pub predicted_rank: usize,
    pub direct_rank: usize,
    /// The criterion as usually stated: for `1 ≤ i ≤ D-1`, injective
    /// (surjective) iff both `𝓜^{i-1}_i` and `𝓜^{i-1}_{i+1}` are; at `i = 0`
    /// always injective; at `i = D`, maximal rank iff `𝓜^{D-1}_D` is
    /// surjective. Fields not constrained by the statement copy `direct`.
    pub literal: Verdict,
    pub literal_agrees: bool,
}

/// Compares the verdict predicted from ranks of `·ℓ` and `·ℓ²` on `A`
/// against the rank of the block matrix on `B`.
///
/// The prediction is exact for every `n`. The usual "both maps" form of
/// the criterion is also evaluated; it matches for `n ≥ 2` but not always
/// for `n = 1`, where the `I` block alone already covers `u_1 𝒜_i`:
/// surjectivity then needs only `𝓜^{i-1}_{i+1}` surjective, and the top
/// degree map is always surjective.
pub fn verdict_via_theorem(tb: &TensorAlgebra, i: usize) -> Result<BlockMatrixReport> {
    check_degree(tb, i)?;
    let a = tb.inner();
    let n = tb.n();
    let d = a.socle_degree();
    let ell = LinearForm::all_ones(a.num_vars());

    let direct_map = block_matrix(tb, i)?;
    let (source, target) = (direct_map.source_dim(), direct_map.target_dim());
    let direct_rank = direct_map.rank();
    let direct = Verdict::from_rank(direct_rank, source, target);

    let (predicted_rank, literal) = if i == 0 {
        (
            1,
            Verdict {
                injective: true,
                surjective: direct.surjective,
            },
        )
    } else {
        let m1 = multiplication_map(a, &ell, i - 1, 1)?;
        let m2 = multiplication_map(a, &ell, i - 1, 2)?;
        let rank = a.dim(i) + (n - 1) * m1.rank() + m2.rank();
        let literal = if i < d {
            Verdict {
                injective: m1.is_injective() && m2.is_injective(),
                surjective: m1.is_surjective() && m2.is_surjective(),
            }
        } else {
            // only maximal rank is claimed; the map is never injective here
            Verdict {
                injective: direct.injective,
                surjective: m1.is_surjective(),
            }
        };
        (rank, literal)
    };
    let predicted = Verdict::from_rank(predicted_rank, source, target);
    Ok(BlockMatrixReport {
        degree: i,
        predicted,
        direct,
        agree: predicted == direct && predicted_rank == direct_rank,
        predicted_rank,
        direct_rank,
        literal,
        literal_agrees: literal == direct,
    })
}

/// `A' ⊗ A''` on the concatenated variables, with labels of the second
/// factor primed where they collide with the first.
pub fn tensor_product(a1: &MonomialAlgebra, a2: &MonomialAlgebra) -> Result<MonomialAlgebra> {
    let (m1, m2) = (a1.num_vars(), a2.num_vars());
    let mut gens = Vec::new();
    for g in a1.generators() {
        let mut e = g.exponents().to_vec();
        e.resize(m1 + m2, 0);
        gens.push(Monomial::new(e));
    }
    for g in a2.generators() {
        let mut e = vec![0u8; m1];
        e.extend_from_slice(g.exponents());
        gens.push(Monomial::new(e));
    }
    let mut labels: Vec<String> = a1.var_labels().to_vec();
    for l in a2.var_labels() {
        let mut name = l.clone();
        while labels.contains(&name) {
            name.push('\'');
        }
        labels.push(name);
    }
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    MonomialAlgebra::with_labels(m1 + m2, &gens, labels)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessMode {
    Surjective,
    Injective,
}

/// If `·ℓ` fails `mode` on `a1` at degree `i` and on `a2` at degree `j`, it
/// must also fail on `a1 ⊗ a2` at degree `i + j + 1` (surjective) or
/// `i + j` (injective). Returns whether the combined map fails; an error if
/// the constituent maps do not both fail.
pub fn tensor_failure_witness(
    a1: &MonomialAlgebra,
    i: usize,
    a2: &MonomialAlgebra,
    j: usize,
    mode: WitnessMode,
) -> Result<bool> {
    let fails = |a: &MonomialAlgebra, d: usize| -> Result<bool> {
        let m = multiplication_map(a, &LinearForm::all_ones(a.num_vars()), d, 1)?;
        Ok(match mode {
            WitnessMode::Surjective => !m.is_surjective(),
            WitnessMode::Injective => !m.is_injective(),
        })
    };
    if !fails(a1, i)? || !fails(a2, j)? {
        return Err(Error::Precondition(format!(
            "the maps at degrees {i} and {j} are not both non-{}",
            match mode {
                WitnessMode::Surjective => "surjective",
                WitnessMode::Injective => "injective",
            }
        )));
    }
    let c = tensor_product(a1, a2)?;
    let degree = match mode {
        WitnessMode::Surjective => i + j + 1,
        WitnessMode::Injective => i + j,
    };
    fails(&c, degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn mono(e: &[u8]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn y_squared() -> MonomialAlgebra {
        MonomialAlgebra::from_generators(1, &[mono(&[2])]).unwrap()
    }

    #[test]
    fn construction() {
        let tb = tensor_with_squarefree_block(1, &y_squared()).unwrap();
        assert_eq!(
            tb.realized().hilbert_series(),
            crate::indpoly::IntPolynomial::from_i64s(&[1, 2, 1])
        );
        let p2 = MonomialAlgebra::from_graph(&Graph::path(2).unwrap());
        let tb = tensor_with_squarefree_block(2, &p2).unwrap();
        assert_eq!(tb.realized().dim(1), 4);
        assert_eq!(tb.realized().socle_degree(), 2);
        assert!(tensor_with_squarefree_block(0, &p2).is_err());
        let k1 = MonomialAlgebra::from_graph(&Graph::complete(1).unwrap());
        assert!(tensor_with_squarefree_block(1, &k1).is_ok());
        let point = MonomialAlgebra::from_generators(1, &[mono(&[1])]).unwrap();
        assert!(matches!(
            tensor_with_squarefree_block(1, &point),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn basis_layout_matches_blocks() {
        let a = MonomialAlgebra::from_graph(&Graph::path(4).unwrap());
        let tb = tensor_with_squarefree_block(3, &a).unwrap();
        let b = tb.realized();
        for i in 1..=a.socle_degree() + 1 {
            let mut expected = Vec::new();
            for k in 0..3 {
                for m in a.basis(i - 1) {
                    let mut e = vec![0u8; 3];
                    e[k] = 1;
                    e.extend_from_slice(m.exponents());
                    expected.push(Monomial::new(e));
                }
            }
            for m in a.basis(i) {
                let mut e = vec![0u8; 3];
                e.extend_from_slice(m.exponents());
                expected.push(Monomial::new(e));
            }
            assert_eq!(b.basis(i), expected.as_slice(), "degree {i}");
        }
    }

    #[test]
    fn small_block_matrices() {
        let tb = tensor_with_squarefree_block(1, &y_squared()).unwrap();
        let m = block_matrix(&tb, 1).unwrap();
        assert_eq!(m.matrix(), &SparseMatrix::from_i64_rows(&[vec![1, 1]]));
        assert_eq!(assembled_block_matrix(&tb, 1).unwrap(), *m.matrix());
        let tb = tensor_with_squarefree_block(3, &y_squared()).unwrap();
        let col = block_matrix(&tb, 0).unwrap();
        assert_eq!(col.matrix().shape(), (4, 1));
        assert!(block_matrix(&tb, 2).is_err());
    }

    #[test]
    fn prediction_for_cube() {
        let a = MonomialAlgebra::from_generators(1, &[mono(&[3])]).unwrap();
        let tb = tensor_with_squarefree_block(1, &a).unwrap();
        let r = verdict_via_theorem(&tb, 1).unwrap();
        assert_eq!(r.direct, Verdict { injective: true, surjective: true });
        assert!(r.agree && r.literal_agrees);
        let r0 = verdict_via_theorem(&tb, 0).unwrap();
        assert!(r0.predicted.injective && r0.direct_rank == 1);
    }

    #[test]
    fn single_block_differs_from_both_maps_form() {
        // A = k[y1,y2]/(y1^2, y2^2), n = 1, i = 1: ·ℓ from degree 0 is not
        // surjective, yet ·ℓ' on B is, because ℓ² ≠ 0 on A.
        let a = MonomialAlgebra::from_generators(2, &[mono(&[2, 0]), mono(&[0, 2])]).unwrap();
        let tb = tensor_with_squarefree_block(1, &a).unwrap();
        let r = verdict_via_theorem(&tb, 1).unwrap();
        assert!(r.direct.surjective && r.predicted.surjective && r.agree);
        assert!(!r.literal.surjective && !r.literal_agrees);
        // with two square-zero variables the usual form holds
        let tb = tensor_with_squarefree_block(2, &a).unwrap();
        let r = verdict_via_theorem(&tb, 1).unwrap();
        assert!(!r.direct.surjective && r.agree && r.literal_agrees);
    }

    #[test]
    fn top_degree_single_block_is_surjective() {
        // k[y1,y2,y3]/(y)^3: ·ℓ : [A]_1 → [A]_2 is 3 → 6, never surjective
        let mut cubes = Vec::new();
        for a in 0..=3u8 {
            for b in 0..=3 - a {
                cubes.push(mono(&[a, b, 3 - a - b]));
            }
        }
        let a = MonomialAlgebra::from_generators(3, &cubes).unwrap();
        assert_eq!(a.socle_degree(), 2);
        let tb = tensor_with_squarefree_block(1, &a).unwrap();
        let r = verdict_via_theorem(&tb, 2).unwrap();
        assert!(r.direct.surjective && r.agree);
        assert!(!r.literal.surjective && !r.literal_agrees);
        let tb = tensor_with_squarefree_block(2, &a).unwrap();
        let r = verdict_via_theorem(&tb, 2).unwrap();
        assert!(!r.direct.maximal_rank() && r.agree && r.literal_agrees);
    }

    #[test]
    fn witnesses() {
        let y2 = y_squared();
        assert!(matches!(
            tensor_failure_witness(&y2, 0, &y2, 0, WitnessMode::Injective),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            tensor_failure_witness(&y2, 1, &y2, 1, WitnessMode::Surjective),
            Err(Error::Precondition(_))
        ));
        let p8 = MonomialAlgebra::from_graph(&Graph::path(8).unwrap());
        assert!(tensor_failure_witness(&p8, 2, &p8, 2, WitnessMode::Surjective).unwrap());
        let c = tensor_product(&p8, &p8).unwrap();
        assert_eq!(c.num_vars(), 16);
        assert_eq!(c.var_labels()[8], "x_1'");
    }
}
