//! Invariant suites: algebraic identities of the operator substrate,
//! structural properties of Lindblad generators, witness soundness on
//! planted reducible systems, channel covariance, and spin-chain
//! irreducibility spot checks.

use num_complex::Complex64 as C64;
use proptest::prelude::*;

use lindkit::algebra::{commutant, generate_algebra};
use lindkit::irreducibility::{
    analyze, check_dark_state, check_davies_algebra, check_davies_steady, DaviesVerdict,
    EvansVerdict,
};
use lindkit::liouvillian::{
    adjoint_superoperator, build_superoperator, k_operator, spectrum, LindbladSystem,
};
use lindkit::markov::{channel_from_liouvillian, classical_transition_matrix, QuantumChannel};
use lindkit::models;
use lindkit::operators::{
    eig_hermitian, hs_inner, matrix_exp, null_space, rank, tensor, vec_op, CMatrix, CVector,
    ToleranceConfig,
};
use lindkit::random::{
    ginibre, haar_unitary, random_density, random_hermitian, random_reducible_system,
    random_system, random_unit_vector, rng_from_seed,
};

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn cmatrix(d: usize) -> impl Strategy<Value = CMatrix> {
    proptest::collection::vec(
        proptest::collection::vec((-10.0..10.0f64, -10.0..10.0f64), d),
        d,
    )
    .prop_map(move |rows| CMatrix::from_fn(d, d, |i, j| c(rows[i][j].0, rows[i][j].1)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hs_inner_is_linear_in_second_argument(
        (a, b, x) in (2usize..=4).prop_flat_map(|d| (cmatrix(d), cmatrix(d), cmatrix(d)))
    ) {
        let lhs = hs_inner(&a, &(&b + &x)).unwrap();
        let rhs = hs_inner(&a, &b).unwrap() + hs_inner(&a, &x).unwrap();
        let scale = 1.0 + lhs.norm().max(rhs.norm());
        prop_assert!((lhs - rhs).norm() / scale < 1e-10);
        // Conjugate symmetry comes along for free.
        let sym = (hs_inner(&a, &b).unwrap() - hs_inner(&b, &a).unwrap().conj()).norm();
        prop_assert!(sym / scale < 1e-10);
    }

    #[test]
    fn tensor_product_is_associative(
        (a, b, x) in (2usize..=3).prop_flat_map(|d| (cmatrix(d), cmatrix(d), cmatrix(2)))
    ) {
        let lhs = tensor(&tensor(&a, &b), &x);
        let rhs = tensor(&a, &tensor(&b, &x));
        prop_assert!((lhs - rhs).norm() < 1e-12 * (1.0 + a.norm() * b.norm() * x.norm()));
    }

    #[test]
    fn tensor_product_is_multiplicative(
        (a, b, x, y) in (2usize..=3)
            .prop_flat_map(|d| (cmatrix(d), cmatrix(d), cmatrix(d), cmatrix(d)))
    ) {
        let lhs = tensor(&a, &b) * tensor(&x, &y);
        let rhs = tensor(&(&a * &x), &(&b * &y));
        let scale = 1.0 + a.norm() * b.norm() * x.norm() * y.norm();
        prop_assert!((lhs - rhs).norm() / scale < 1e-12);
    }
}

#[test]
fn rank_nullity_for_random_rectangular_matrices() {
    let t = tol();
    let mut rng = rng_from_seed(81);
    for trial in 0..60 {
        let rows = 1 + (trial % 5);
        let cols = 1 + (trial * 3 % 5);
        let mut m = CMatrix::from_fn(rows, cols, |_, _| c(0.0, 0.0));
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = ginibre(1, &mut rng)[(0, 0)];
            }
        }
        // Inject rank deficiency in a third of the cases.
        if trial % 3 == 0 && cols > 1 {
            let col0 = m.column(0).clone_owned();
            m.set_column(cols - 1, &col0);
        }
        let r = rank(&m, &t);
        let n = null_space(&m, &t).len();
        assert_eq!(r + n, cols, "rank-nullity failed for {rows}×{cols} trial {trial}");
    }
}

#[test]
fn matrix_exp_inverse_identity() {
    let mut rng = rng_from_seed(17);
    for _ in 0..40 {
        let mut m = ginibre(4, &mut rng);
        let norm = m.norm();
        if norm > 10.0 {
            m = m.unscale(norm / 10.0);
        }
        let o = matrix_exp(&m) * matrix_exp(&m.scale(-1.0));
        assert!((o - CMatrix::identity(4, 4)).norm() < 1e-8);
    }
}

#[test]
fn generator_invariants_over_500_random_systems() {
    let t = tol();
    let mut rng = rng_from_seed(2024);
    let times = [0.1, 1.0, 10.0];
    for trial in 0..500 {
        let d = 2 + trial % 3;
        let n_lind = 1 + trial % 3;
        let sys = random_system(d, n_lind, &mut rng).unwrap();
        let id = CMatrix::identity(d, d);

        // Trace preservation in both pictures.
        assert!(sys.apply_adjoint(&id).norm() <= 1e-10 * (1.0 + sup_norm(&sys)));
        let rho = random_density(d, &mut rng);
        assert!(sys.apply(&rho).trace().norm() <= 1e-10 * (1.0 + sup_norm(&sys)));

        // Hermiticity preservation on a general operator.
        let x = ginibre(d, &mut rng);
        let lhs = sys.apply(&x).adjoint();
        let rhs = sys.apply(&x.adjoint());
        assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + x.norm()) * (1.0 + sup_norm(&sys)));

        // Duality against the adjoint generator.
        let a = random_hermitian(d, &mut rng);
        let dual = (hs_inner(&a, &sys.apply(&rho)).unwrap()
            - hs_inner(&sys.apply_adjoint(&a), &rho).unwrap())
        .norm();
        assert!(dual <= 1e-10 * (1.0 + a.norm()) * (1.0 + sup_norm(&sys)));

        // Complete positivity of the evolution at several times.
        if trial % 10 == 0 {
            let sup = build_superoperator(&sys);
            for &time in &times {
                let ch = QuantumChannel {
                    dim: d,
                    matrix: matrix_exp(&sup.matrix.scale(time)),
                    time_tag: Some(time),
                };
                let evolved = ch.apply(&rho);
                let (eigs, _) = eig_hermitian(&evolved, &t).unwrap();
                assert!(eigs[0] >= -1e-8, "negative eigenvalue {} at t = {time}", eigs[0]);
            }
        }

        // Spectral stability: no eigenvalue in the right half plane.
        let report = spectrum(&sys, &t).unwrap();
        let max_re = report.eigenvalues.iter().map(|l| l.re).fold(f64::NEG_INFINITY, f64::max);
        assert!(max_re <= 1e-8, "eigenvalue with Re = {max_re}");
    }
}

fn sup_norm(sys: &LindbladSystem) -> f64 {
    build_superoperator(sys).matrix.norm()
}

#[test]
fn closure_dimension_is_seed_order_invariant_100_sets() {
    let t = tol();
    let mut rng = rng_from_seed(7);
    for trial in 0..100 {
        let d = 2 + trial % 3;
        let k = 2 + trial % 2;
        let seeds: Vec<CMatrix> = (0..k).map(|_| ginibre(d, &mut rng)).collect();
        let base = generate_algebra(&seeds, &t, None).unwrap().dim;
        let mut rotated = seeds.clone();
        rotated.rotate_left(1);
        assert_eq!(generate_algebra(&rotated, &t, None).unwrap().dim, base);
        let mut reversed = seeds;
        reversed.reverse();
        assert_eq!(generate_algebra(&reversed, &t, None).unwrap().dim, base);
    }
}

#[test]
fn planted_reducible_systems_yield_verified_witnesses() {
    let t = tol();
    let mut rng = rng_from_seed(555);
    for trial in 0..60 {
        let d = 3 + trial % 3;
        let k = 1 + trial % (d - 1);
        let sys = random_reducible_system(d, k, 1 + trial % 2, &mut rng).unwrap();
        let report = analyze(&sys, &t).unwrap();
        assert_eq!(report.verdict(), DaviesVerdict::Reducible, "trial {trial}");
        let p = report.reducing_projection.as_ref().expect("witness required");
        assert!(report.witness_residuals.iter().all(|&r| r <= 1e-8));

        // Dynamical invariance of the witness subspace at t = 1.
        let sup = build_superoperator(&sys);
        let ch = QuantumChannel { dim: d, matrix: matrix_exp(&sup.matrix), time_tag: Some(1.0) };
        let rho = random_density(d, &mut rng);
        let inside = p * rho * p;
        let evolved = ch.apply(&inside);
        let escaped = (&evolved - p * &evolved * p).norm();
        assert!(escaped <= 1e-7, "t = 1 invariance defect {escaped:e} in trial {trial}");
    }
}

/// Systems block diagonal in a random unitary frame carry a strong
/// symmetry; both the conserved projection and the Evans ⇒ Davies
/// implication must come out.
#[test]
fn planted_strong_symmetries_are_detected() {
    let t = tol();
    let mut rng = rng_from_seed(4096);
    for trial in 0..30 {
        let (d, k) = (4, 2);
        let u = haar_unitary(d, &mut rng);
        let embed = |top: &CMatrix, bottom: &CMatrix| {
            let mut b = CMatrix::zeros(d, d);
            b.view_mut((0, 0), (k, k)).copy_from(top);
            b.view_mut((k, k), (d - k, d - k)).copy_from(bottom);
            &u * b * u.adjoint()
        };
        let lindblads: Vec<CMatrix> = (0..2)
            .map(|_| embed(&ginibre(k, &mut rng), &ginibre(d - k, &mut rng)))
            .collect();
        let h = embed(&random_hermitian(k, &mut rng), &random_hermitian(d - k, &mut rng));
        let sys = LindbladSystem::new(h, lindblads, &t).unwrap();

        let report = analyze(&sys, &t).unwrap();
        assert_eq!(report.evans_verdict, EvansVerdict::EvansReducible, "trial {trial}");
        assert_eq!(report.verdict(), DaviesVerdict::Reducible, "Evans implies Davies");
        let p = report.conserved_projection.as_ref().expect("conserved witness");
        assert!(sys.apply_adjoint(p).norm() <= 1e-9);

        // Strong-symmetry correspondence: U = exp(iP) commutes with H and
        // every Lindblad operator.
        let sym = matrix_exp(&(p * c(0.0, 1.0)));
        assert!((&sym * sys.hamiltonian() - sys.hamiltonian() * &sym).norm() <= 1e-9);
        for l in sys.lindblads() {
            assert!((&sym * l - l * &sym).norm() <= 1e-9);
        }
    }
}

#[test]
fn dark_state_flag_matches_stationarity_residual() {
    let t = tol();
    let mut rng = rng_from_seed(99);
    let systems = vec![
        models::lind1101hsy(),
        models::lind1101(),
        models::loss_gain(1.0, 1.0),
        models::two_site_ferromagnet(),
        models::dephasing(),
    ];
    for sys in &systems {
        let d = sys.dim();
        // Random probes plus the computational kets.
        let mut probes: Vec<CVector> = (0..6).map(|_| random_unit_vector(d, &mut rng)).collect();
        for i in 0..d {
            let mut e = CVector::zeros(d);
            e[i] = c(1.0, 0.0);
            probes.push(e);
        }
        for psi in &probes {
            let (report, is_dark) = check_dark_state(sys, psi, &t).unwrap();
            assert_eq!(
                is_dark,
                report.liouvillian_residual <= 1e-8,
                "eigenvector flag and L(psi psi†) residual disagree: {:e}",
                report.liouvillian_residual
            );
        }
    }
}

#[test]
fn channel_basis_covariance_and_stochasticity() {
    let t = tol();
    let mut rng = rng_from_seed(303);
    for _ in 0..20 {
        let d = 3;
        let sys = random_system(d, 2, &mut rng).unwrap();
        let ch = channel_from_liouvillian(&sys, 1.0, &t).unwrap();
        let u = haar_unitary(d, &mut rng);

        let p_direct = classical_transition_matrix(&ch, &u, &t).unwrap();

        // Rotated channel ρ ↦ U†E(UρU†)U expressed on vectorized operators.
        let rotated = QuantumChannel {
            dim: d,
            matrix: tensor(&u.transpose(), &u.adjoint())
                * &ch.matrix
                * tensor(&u.conjugate(), &u),
            time_tag: ch.time_tag,
        };
        let p_rotated =
            classical_transition_matrix(&rotated, &CMatrix::identity(d, d), &t).unwrap();

        for i in 0..d {
            let col_sum: f64 = p_direct.entries.column(i).sum();
            assert!((col_sum - 1.0).abs() <= 1e-10);
            for j in 0..d {
                assert!((p_direct.entries[(i, j)] - p_rotated.entries[(i, j)]).abs() <= 1e-10);
            }
        }
    }
}

#[test]
fn channel_semigroup_property() {
    let t = tol();
    let mut rng = rng_from_seed(1212);
    for _ in 0..10 {
        let sys = random_system(3, 2, &mut rng).unwrap();
        let (t1, t2) = (0.4, 0.9);
        let ch1 = channel_from_liouvillian(&sys, t1, &t).unwrap();
        let ch2 = channel_from_liouvillian(&sys, t2, &t).unwrap();
        let ch12 = channel_from_liouvillian(&sys, t1 + t2, &t).unwrap();
        let composed = &ch1.matrix * &ch2.matrix;
        assert!((composed - &ch12.matrix).norm() <= 1e-8);
    }
}

#[test]
fn probes_never_contradict_davies_irreducibility() {
    let t = tol();
    let irreducible = vec![
        models::lind1101(),
        models::lindsphsx(0.5),
        models::lindsphsx(1.0),
        models::lindsphsx(2.0),
        models::loss_gain(1.0, 1.0),
    ];
    for sys in &irreducible {
        let (verdict, _) = check_davies_algebra(sys, &t).unwrap();
        assert_eq!(verdict, DaviesVerdict::Irreducible);
        let report = lindkit::markov::basis_probe(sys, 1.0, 6, 42, None, &t).unwrap();
        assert_eq!(
            report.verdict,
            lindkit::markov::ProbeVerdict::NoWitnessFound,
            "probe found a classical witness for an irreducible system"
        );
    }
}

/// Spin-1/2 XYZ chains with gain and loss on site 1 are irreducible when
/// every bond has at least two nonzero couplings, or a field plus exactly
/// one x/y coupling.
#[test]
fn xyz_chains_with_single_site_driving_are_irreducible() {
    let t = tol();
    let mut rng = rng_from_seed(777);
    let n = 3;
    let mut uniform = |lo: f64, hi: f64| {
        use rand::Rng;
        rng.random_range(lo..hi)
    };
    for trial in 0..20 {
        let mut jx = vec![0.0; n - 1];
        let mut jy = vec![0.0; n - 1];
        let mut jz = vec![0.0; n - 1];
        let mut fields = vec![0.0; n];
        for f in fields.iter_mut() {
            *f = uniform(0.3, 1.5);
        }
        for b in 0..n - 1 {
            if trial % 2 == 0 {
                // Two or three couplings active on this bond.
                let drop = trial % 3;
                if drop != 0 {
                    jx[b] = uniform(0.3, 1.5);
                }
                if drop != 1 {
                    jy[b] = uniform(0.3, 1.5);
                }
                if drop != 2 || trial % 5 == 0 {
                    jz[b] = uniform(0.3, 1.5);
                }
            } else {
                // Field plus exactly one transverse coupling.
                if trial % 4 < 2 {
                    jx[b] = uniform(0.3, 1.5);
                } else {
                    jy[b] = uniform(0.3, 1.5);
                }
            }
        }
        let spec = models::SpinChainSpec {
            n_sites: n,
            fields,
            jx,
            jy,
            jz,
            boundary: models::Boundary::Open,
            dissipators: vec![
                models::Dissipator {
                    site: 1,
                    kind: models::DissipatorKind::Gain,
                    rate: uniform(0.5, 1.5),
                },
                models::Dissipator {
                    site: 1,
                    kind: models::DissipatorKind::Loss,
                    rate: uniform(0.5, 1.5),
                },
            ],
        };
        let sys = models::xyz_chain(&spec).unwrap();
        let (verdict, closure) = check_davies_algebra(&sys, &t).unwrap();
        assert_eq!(
            verdict,
            DaviesVerdict::Irreducible,
            "trial {trial}: algebra dim {} of {}",
            closure.dim,
            64
        );
        // Cross-check via the steady-state route.
        let (steady_verdict, _) = check_davies_steady(&sys, &t).unwrap();
        assert_eq!(steady_verdict, DaviesVerdict::Irreducible);
    }
}

/// The remaining named many-body systems at accessible size: XYZ chain with
/// left-boundary driving, and the maximally driven transverse Ising and XXZ
/// chains with gain and loss at opposite ends.
#[test]
fn named_chain_examples_are_irreducible_at_n3() {
    let t = tol();
    let systems = vec![
        ("xyz-boundary", models::xyz_boundary(3, 1.0, 1.0, 0.8, 0.6, 1.0, 1.0).unwrap()),
        ("ising-max", models::transverse_ising_max(3, 1.0, 1.0, 1.0, 1.0).unwrap()),
        ("xxz-max", models::xxz_chain_max(3, 1.0, 1.5, 1.0, 1.0).unwrap()),
    ];
    for (name, sys) in &systems {
        let (va, closure) = check_davies_algebra(sys, &t).unwrap();
        let (vs, ss) = check_davies_steady(sys, &t).unwrap();
        assert_eq!(va, DaviesVerdict::Irreducible, "{name}");
        assert_eq!(vs, DaviesVerdict::Irreducible, "{name}");
        assert_eq!(closure.dim, 64, "{name}");
        assert_eq!(ss.support_rank, 8, "{name} faithful steady state");
    }
}

#[test]
fn commutant_respects_adjoint_superoperator_kernel() {
    // The conserved quantities of a generator always include the identity,
    // and for the dephasing model the full diagonal algebra.
    let t = tol();
    let conserved = lindkit::irreducibility::conserved_quantities(&models::dephasing(), &t).unwrap();
    assert_eq!(conserved.dim(), 2);
    let com = commutant(
        &[models::sigma_z(), models::sigma_z().adjoint(), CMatrix::zeros(2, 2)],
        &t,
    )
    .unwrap();
    assert_eq!(com.dim, 2);
    // Adjoint generator annihilates everything the commutant contains.
    let sys = models::dephasing();
    let adj = adjoint_superoperator(&sys);
    for b in com.basis.basis() {
        assert!((&adj.matrix * vec_op(b)).norm() < 1e-10);
    }
    // And K is consistent between routes.
    let k = k_operator(&sys);
    assert!((k + CMatrix::identity(2, 2).scale(0.5)).norm() < 1e-12);
}
