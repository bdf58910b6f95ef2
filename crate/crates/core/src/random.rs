//! Seeded sampling utilities: Ginibre matrices, Haar-random unitaries,
//! random Hermitian operators, density operators, and random Lindblad
//! systems for property suites and basis probes.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::liouvillian::LindbladSystem;
use crate::operators::{CMatrix, CVector, ToleranceConfig};
use crate::Result;

/// Deterministic generator from a 64-bit seed.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

fn standard_complex<R: Rng>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)
}

/// Matrix of iid standard complex Gaussians.
pub fn ginibre<R: Rng>(d: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(d, d, |_, _| standard_complex(rng))
}

/// Haar-distributed random unitary: QR of a Ginibre matrix with the phases
/// of the R diagonal normalized positive.
pub fn haar_unitary<R: Rng>(d: usize, rng: &mut R) -> CMatrix {
    let g = ginibre(d, rng);
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { C64::new(1.0, 0.0) };
        // Multiply column j by conj(phase) so that R's diagonal becomes
        // real positive; Q·R is unchanged as a distribution.
        let mut col = q.column_mut(j);
        for x in col.iter_mut() {
            *x *= phase.conj();
        }
    }
    q
}

/// Random Hermitian matrix `(G + G†)/2` with Ginibre `G`.
pub fn random_hermitian<R: Rng>(d: usize, rng: &mut R) -> CMatrix {
    let g = ginibre(d, rng);
    (&g + g.adjoint()).scale(0.5)
}

/// Random full-rank density operator `GG†/Tr(GG†)`.
pub fn random_density<R: Rng>(d: usize, rng: &mut R) -> CMatrix {
    let g = ginibre(d, rng);
    let p = &g * g.adjoint();
    let tr = p.trace();
    p.unscale(tr.re)
}

/// Random unit vector with Gaussian components.
pub fn random_unit_vector<R: Rng>(d: usize, rng: &mut R) -> CVector {
    let v = CVector::from_fn(d, |_, _| standard_complex(rng));
    let n = v.norm();
    v.unscale(n)
}

/// Random Lindblad system: Gaussian Hermitian Hamiltonian and `n_lindblads`
/// Ginibre Lindblad operators.
pub fn random_system<R: Rng>(d: usize, n_lindblads: usize, rng: &mut R) -> Result<LindbladSystem> {
    let h = random_hermitian(d, rng);
    let lindblads: Vec<CMatrix> = (0..n_lindblads).map(|_| ginibre(d, rng)).collect();
    LindbladSystem::new(h, lindblads, &ToleranceConfig::default())
}

/// Random system with a planted invariant subspace of dimension `k`.
///
/// Every Lindblad operator is block upper triangular in a random unitary
/// frame, which alone is not enough: `L†L` then has a nonzero lower-left
/// block that feeds into K. The Hamiltonian therefore carries a
/// compensating off-diagonal part with `H_lower = (i/2)·Σ_α B_α†A_α`
/// (writing `L_α = [[A_α, B_α], [0, C_α]]`), which cancels that block and
/// leaves `(1−P)KP = 0` alongside `(1−P)L_αP = 0`.
pub fn random_reducible_system<R: Rng>(
    d: usize,
    k: usize,
    n_lindblads: usize,
    rng: &mut R,
) -> Result<LindbladSystem> {
    assert!(k > 0 && k < d, "invariant subspace must be proper");
    let u = haar_unitary(d, rng);
    let block_upper = |rng: &mut R| {
        let mut b = ginibre(d, rng);
        for i in k..d {
            for j in 0..k {
                b[(i, j)] = C64::new(0.0, 0.0);
            }
        }
        b
    };
    let blocks: Vec<CMatrix> = (0..n_lindblads).map(|_| block_upper(rng)).collect();

    // Lower-left block of Σ L†L in the planted frame.
    let mut ll = CMatrix::zeros(d - k, k);
    for b in &blocks {
        let a_block = b.view((0, 0), (k, k)).clone_owned();
        let b_block = b.view((0, k), (k, d - k)).clone_owned();
        ll += b_block.adjoint() * a_block;
    }
    let mut hb = random_hermitian(d, rng);
    for i in k..d {
        for j in 0..k {
            hb[(i, j)] = C64::new(0.0, 0.0);
            hb[(j, i)] = C64::new(0.0, 0.0);
        }
    }
    let compensator = ll.scale(0.5) * C64::new(0.0, 1.0);
    for i in 0..d - k {
        for j in 0..k {
            hb[(k + i, j)] = compensator[(i, j)];
            hb[(j, k + i)] = compensator[(i, j)].conj();
        }
    }

    let lindblads: Vec<CMatrix> = blocks.iter().map(|b| &u * b * u.adjoint()).collect();
    let h = &u * hb * u.adjoint();
    LindbladSystem::new(h, lindblads, &ToleranceConfig::default())
}
