//! Multiplicative operator-algebra machinery: closure of a seed set under
//! products and linear combinations, commutants, and self-adjointness tests
//! for operator spans.
//!
//! Closure is taken under multiplication and linear combination only;
//! adjoints of the seeds are never inserted. The generated algebra therefore
//! need not be a *-algebra, which is exactly what the irreducibility
//! criterion requires.

use crate::operators::{tensor, null_space, unvec_op, CMatrix, OperatorSubspace, ToleranceConfig};
use crate::{Error, Result};

/// Result of closing a seed set under multiplication.
#[derive(Debug, Clone)]
pub struct AlgebraClosureResult {
    /// Orthonormal basis of the generated algebra.
    pub basis: OperatorSubspace,
    /// Dimension of the algebra.
    pub dim: usize,
    /// True iff the algebra is all of operator space (`dim == d²`).
    pub is_full: bool,
    /// Number of closure rounds performed.
    pub rounds: usize,
    /// Number of seeds supplied.
    pub seed_count: usize,
}

/// Smallest multiplicatively closed linear subspace containing the seeds.
///
/// Worklist closure: seeds are orthonormalized, then each round multiplies
/// every frontier element (admitted last round) with every current basis
/// element in both orders, orthogonalizes the products against the basis,
/// and admits residuals with relative norm above `tol.residual`. Stops when
/// a round admits nothing or the dimension reaches `max_dim` (the full
/// operator-space dimension `d²` by default).
pub fn generate_algebra(
    seeds: &[CMatrix],
    tol: &ToleranceConfig,
    max_dim: Option<usize>,
) -> Result<AlgebraClosureResult> {
    let Some(first) = seeds.first() else {
        return Err(Error::EmptyOperatorList);
    };
    let d = first.nrows();
    if first.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: "square seeds".into(),
            found: format!("{:?}", first.shape()),
        });
    }
    for s in seeds {
        if s.shape() != (d, d) {
            return Err(Error::DimensionMismatch {
                expected: format!("{d}×{d}"),
                found: format!("{:?}", s.shape()),
            });
        }
    }
    let cap = max_dim.unwrap_or(d * d).min(d * d);

    let mut space = OperatorSubspace::empty(d, tol);
    // Indices into the basis admitted in the previous round.
    let mut frontier: Vec<usize> = Vec::new();

    let admit = |space: &mut OperatorSubspace, frontier: &mut Vec<usize>, x: &CMatrix| {
        let norm = x.norm();
        if norm < tol.tiny || space.dim() >= cap {
            return;
        }
        let residual = space.orthogonal_residual(x);
        if residual.norm() > tol.residual * norm {
            space.push_normalized(residual);
            frontier.push(space.dim() - 1);
        }
    };

    for seed in seeds {
        admit(&mut space, &mut frontier, seed);
    }

    let mut rounds = 0;
    while !frontier.is_empty() && space.dim() < cap {
        rounds += 1;
        let current = std::mem::take(&mut frontier);
        let snapshot = space.dim();
        'round: for &f in &current {
            for b in 0..space.dim().max(snapshot) {
                if b >= space.dim() {
                    break;
                }
                let fb = &space.basis()[f] * &space.basis()[b];
                admit(&mut space, &mut frontier, &fb);
                if space.dim() >= cap {
                    break 'round;
                }
                let bf = &space.basis()[b] * &space.basis()[f];
                admit(&mut space, &mut frontier, &bf);
                if space.dim() >= cap {
                    break 'round;
                }
            }
        }
    }

    space.audit_orthonormality()?;
    let dim = space.dim();
    Ok(AlgebraClosureResult {
        basis: space,
        dim,
        is_full: dim == d * d,
        rounds,
        seed_count: seeds.len(),
    })
}

/// Commutant of a set of operators.
#[derive(Debug, Clone)]
pub struct CommutantResult {
    /// Orthonormal basis of `{X : [X, A] = 0 ∀A ∈ seeds}`.
    pub basis: OperatorSubspace,
    pub dim: usize,
    /// True iff the commutant is the scalars `{z𝟙}`.
    pub is_trivial: bool,
}

/// Compute the commutant `{X : A_i X − X A_i = 0 ∀i}` as the joint null
/// space of the stacked commutator maps `1⊗A_i − A_iᵀ⊗1` acting on vec(X).
pub fn commutant(seeds: &[CMatrix], tol: &ToleranceConfig) -> Result<CommutantResult> {
    let Some(first) = seeds.first() else {
        return Err(Error::EmptyOperatorList);
    };
    let d = first.nrows();
    for s in seeds {
        if s.shape() != (d, d) {
            return Err(Error::DimensionMismatch {
                expected: format!("{d}×{d}"),
                found: format!("{:?}", s.shape()),
            });
        }
    }
    let d2 = d * d;
    let id = CMatrix::identity(d, d);
    let mut stacked = CMatrix::zeros(seeds.len() * d2, d2);
    for (i, a) in seeds.iter().enumerate() {
        let block = tensor(&id, a) - tensor(&a.transpose(), &id);
        stacked.view_mut((i * d2, 0), (d2, d2)).copy_from(&block);
    }
    let kernel = null_space(&stacked, tol);
    let ops: Vec<CMatrix> = kernel.iter().map(|v| unvec_op(v, d)).collect();
    let basis = OperatorSubspace::from_orthonormal(ops, tol)?;

    // The identity always commutes, so a one-dimensional commutant is the
    // scalars; assert the containment rather than trusting the dimension.
    let dim = basis.dim();
    let scaled_id = CMatrix::identity(d, d).unscale((d as f64).sqrt());
    let is_trivial = dim == 1 && basis.contains(&scaled_id, tol);
    if dim == 0 || !basis.contains(&scaled_id, tol) {
        return Err(Error::OrthonormalityAudit {
            deviation: basis.orthogonal_residual(&scaled_id).norm(),
        });
    }
    Ok(CommutantResult { basis, dim, is_trivial })
}

/// True iff the adjoint of every listed operator lies in the span of the
/// list (within `tol.residual` relative to the operator norm).
pub fn is_self_adjoint_span(ops: &[CMatrix], tol: &ToleranceConfig) -> Result<bool> {
    if ops.is_empty() {
        return Err(Error::EmptyOperatorList);
    }
    let span = OperatorSubspace::from_span(ops, tol)?;
    Ok(ops.iter().all(|op| span.contains(&op.adjoint(), tol)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liouvillian::k_operator;
    use crate::models::{lind1101, lind1101hsy, sigma_minus, sigma_plus, sigma_x, sigma_y, sigma_z};
    use crate::operators::c;
    use crate::random::{ginibre, rng_from_seed};

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    /// Naive closure oracle: repeatedly orthonormalize the full pairwise
    /// product set until the dimension stabilizes.
    fn closure_dim_brute_force(seeds: &[CMatrix], tol: &ToleranceConfig) -> usize {
        let mut gens: Vec<CMatrix> = seeds.to_vec();
        loop {
            let space = OperatorSubspace::from_span(&gens, tol).unwrap();
            let mut next = gens.clone();
            for a in space.basis() {
                for b in space.basis() {
                    next.push(a * b);
                }
            }
            let new_space = OperatorSubspace::from_span(&next, tol).unwrap();
            if new_space.dim() == space.dim() {
                return space.dim();
            }
            gens = next;
        }
    }

    #[test]
    fn raising_and_lowering_generate_everything() {
        let t = tol();
        let result = generate_algebra(&[sigma_plus(), sigma_minus()], &t, None).unwrap();
        assert_eq!(result.dim, 4);
        assert!(result.is_full);
    }

    #[test]
    fn single_upper_triangular_lindblad_with_k_is_full() {
        // L² − L = σ⁺ and 4K² + 2(KL + K) = σ⁻ complete the operator basis.
        let t = tol();
        let sys = lind1101();
        let mut seeds = sys.lindblads().to_vec();
        seeds.push(k_operator(&sys));
        let result = generate_algebra(&seeds, &t, None).unwrap();
        assert_eq!(result.dim, 4);
        assert!(result.is_full);
    }

    #[test]
    fn jointly_upper_triangular_pair_stops_at_three() {
        let t = tol();
        let sys = lind1101hsy();
        let mut seeds = sys.lindblads().to_vec();
        seeds.push(k_operator(&sys));
        let result = generate_algebra(&seeds, &t, None).unwrap();
        assert_eq!(result.dim, 3);
        assert!(!result.is_full);
        // The missing direction is σ⁻.
        assert!(!result.basis.contains(&sigma_minus(), &t));
    }

    #[test]
    fn commutant_of_paulis_is_trivial() {
        let t = tol();
        let result = commutant(&[sigma_x(), sigma_y(), sigma_z()], &t).unwrap();
        assert_eq!(result.dim, 1);
        assert!(result.is_trivial);
    }

    #[test]
    fn commutant_of_sigma_z_is_diagonal() {
        let t = tol();
        let result = commutant(&[sigma_z()], &t).unwrap();
        assert_eq!(result.dim, 2);
        assert!(!result.is_trivial);
    }

    #[test]
    fn ferromagnet_commutant_is_trivial() {
        let t = tol();
        let sys = crate::models::two_site_ferromagnet();
        let mut seeds = sys.lindblads().to_vec();
        seeds.extend(sys.lindblads().iter().map(|l| l.adjoint()));
        let result = commutant(&seeds, &t).unwrap();
        assert_eq!(result.dim, 1);
        assert!(result.is_trivial);
    }

    #[test]
    fn self_adjoint_span_checks() {
        let t = tol();
        assert!(is_self_adjoint_span(&[sigma_plus(), sigma_minus()], &t).unwrap());
        assert!(is_self_adjoint_span(&[sigma_z()], &t).unwrap());
        let l = CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(1., 0.), c(0., 0.), c(1., 0.)]);
        assert!(!is_self_adjoint_span(&[l], &t).unwrap());
    }

    #[test]
    fn upper_triangular_algebra_excludes_lowering_operator() {
        // Projection residual of σ⁻ on span{𝟙, σ⁺, P↑} is 1.
        let t = tol();
        let upper = OperatorSubspace::from_span(
            &[CMatrix::identity(2, 2), sigma_plus(), crate::models::proj_up()],
            &t,
        )
        .unwrap();
        let res = upper.orthogonal_residual(&sigma_minus()).norm();
        assert!((res - 1.0).abs() < 1e-12);
        assert!(!upper.contains(&sigma_minus(), &t));
    }

    #[test]
    fn closure_is_idempotent_and_seed_order_invariant() {
        let t = tol();
        let mut rng = rng_from_seed(42);
        for _ in 0..25 {
            let seeds = vec![ginibre(3, &mut rng), ginibre(3, &mut rng)];
            let result = generate_algebra(&seeds, &t, None).unwrap();
            let again = generate_algebra(result.basis.basis(), &t, None).unwrap();
            assert_eq!(result.dim, again.dim);

            let swapped = vec![seeds[1].clone(), seeds[0].clone()];
            let other = generate_algebra(&swapped, &t, None).unwrap();
            assert_eq!(result.dim, other.dim);
        }
    }

    #[test]
    fn closure_monotone_under_extra_seed() {
        let t = tol();
        let mut rng = rng_from_seed(5);
        for _ in 0..20 {
            let a = ginibre(3, &mut rng);
            let b = ginibre(3, &mut rng);
            let c_extra = ginibre(3, &mut rng);
            let small = generate_algebra(&[a.clone(), b.clone()], &t, None).unwrap();
            let big = generate_algebra(&[a, b, c_extra], &t, None).unwrap();
            assert!(big.dim >= small.dim);
        }
    }

    #[test]
    fn frontier_closure_matches_brute_force_oracle_d2() {
        let t = tol();
        let mut rng = rng_from_seed(99);
        for trial in 0..200 {
            let n_seeds = 1 + (trial % 3);
            let seeds: Vec<CMatrix> = (0..n_seeds).map(|_| ginibre(2, &mut rng)).collect();
            let fast = generate_algebra(&seeds, &t, None).unwrap();
            let slow = closure_dim_brute_force(&seeds, &t);
            assert_eq!(fast.dim, slow, "trial {trial}");
        }
    }

    #[test]
    fn commutant_commutes_with_generated_algebra() {
        let t = tol();
        let mut rng = rng_from_seed(17);
        for _ in 0..20 {
            let seeds = vec![ginibre(3, &mut rng), ginibre(3, &mut rng)];
            let com = commutant(&seeds, &t).unwrap();
            let alg = generate_algebra(&seeds, &t, None).unwrap();
            for x in com.basis.basis() {
                for a in alg.basis.basis() {
                    let delta = (x * a - a * x).norm();
                    assert!(delta < 1e-8, "commutator norm {delta:e}");
                }
            }
            // Schur: a full algebra forces a trivial commutant.
            if alg.is_full {
                assert!(com.is_trivial);
            }
        }
    }
}
