use nrange_core::linalg::{
    compress, eigenvalues, herm_eigen, operator_norm, top_singular_subspace, default_cluster_tol,
    CMatrix, Subspace,
};
use nrange_core::theorems::generate::{ginibre, haar_unitary};
use nrange_core::theorems::MatrixRng;
use nrange_core::Complex64;
use proptest::prelude::*;

fn draw(seed: u64, n: usize) -> CMatrix {
    ginibre(&mut MatrixRng::new(seed), n)
}

fn hermitian(seed: u64, n: usize) -> CMatrix {
    let g = draw(seed, n);
    (&g + &g.adjoint()).scale(Complex64::new(0.5, 0.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hermitian_reconstruction(seed in any::<u64>(), n in 1usize..=8) {
        let h = hermitian(seed, n);
        let eig = herm_eigen(&h).unwrap();
        prop_assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        let v = &eig.vectors;
        let d = CMatrix::diagonal(&eig.values.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>());
        let back = &(v * &d) * &v.adjoint();
        prop_assert!((&back - &h).frobenius_norm() <= 1e-10 * h.frobenius_norm().max(1.0));
        let gram = &v.adjoint() * v;
        prop_assert!((&gram - &CMatrix::identity(n)).frobenius_norm() <= 1e-12 * n as f64);
    }

    #[test]
    fn norm_is_unitarily_invariant(seed in any::<u64>(), n in 1usize..=7) {
        let mut rng = MatrixRng::new(seed);
        let a = ginibre(&mut rng, n);
        let u = haar_unitary(&mut rng, n);
        let v = haar_unitary(&mut rng, n);
        let lhs = operator_norm(&(&(&u * &a) * &v)).unwrap();
        prop_assert!((lhs - operator_norm(&a).unwrap()).abs() <= 1e-10);
    }

    #[test]
    fn triangular_eigenvalues_are_the_diagonal(seed in any::<u64>(), n in 1usize..=8) {
        let mut a = draw(seed, n);
        for i in 0..n {
            for j in 0..i {
                a[(i, j)] = Complex64::new(0.0, 0.0);
            }
        }
        let mut found = eigenvalues(&a).unwrap();
        for z in a.diag() {
            let k = found
                .iter()
                .enumerate()
                .min_by(|x, y| (x.1 - z).norm().total_cmp(&(y.1 - z).norm()))
                .unwrap()
                .0;
            prop_assert!((found[k] - z).norm() <= 1e-12 * (1.0 + z.norm()) * n as f64);
            found.swap_remove(k);
        }
    }

    #[test]
    fn eigenvalues_match_trace_and_similarity(seed in any::<u64>(), n in 1usize..=8) {
        let a = draw(seed, n);
        let eig = eigenvalues(&a).unwrap();
        prop_assert_eq!(eig.len(), n);
        let sum: Complex64 = eig.iter().sum();
        prop_assert!((sum - a.trace()).norm() <= 1e-9 * (1.0 + a.frobenius_norm()));
        // each eigenvalue makes A - λI singular
        for z in &eig {
            let shifted = &a - &CMatrix::identity(n).scale(*z);
            let smin = herm_eigen(&shifted.gram()).unwrap().values[0].max(0.0).sqrt();
            prop_assert!(smin <= 1e-6 * (1.0 + a.frobenius_norm()));
        }
    }

    #[test]
    fn compression_never_increases_the_norm(seed in any::<u64>(), n in 2usize..=7, k in 1usize..=6) {
        let mut rng = MatrixRng::new(seed);
        let a = ginibre(&mut rng, n);
        let u = haar_unitary(&mut rng, n);
        let k = k.min(n);
        let v = Subspace::from_columns(n, (0..k).map(|j| u.column(j)).collect()).unwrap();
        let b = compress(&a, &v).unwrap();
        prop_assert_eq!(b.dim(), k);
        prop_assert!(operator_norm(&b).unwrap() <= operator_norm(&a).unwrap() + 1e-10);
    }

    #[test]
    fn top_subspace_vectors_attain_the_norm(seed in any::<u64>(), n in 1usize..=7) {
        let mut rng = MatrixRng::new(seed);
        let a = ginibre(&mut rng, n);
        let norm = operator_norm(&a).unwrap();
        let tau = default_cluster_tol(norm);
        let s = top_singular_subspace(&a, tau).unwrap();
        let lambda_max = norm * norm;
        // random unit combination of the basis
        let coeffs: Vec<Complex64> = (0..s.dim()).map(|_| rng.complex_normal()).collect();
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for (c, b) in coeffs.iter().zip(s.basis()) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += c * bi;
            }
        }
        let len = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        x.iter_mut().for_each(|z| *z /= len);
        let ax2: f64 = a.mat_vec(&x).iter().map(|z| z.norm_sqr()).sum();
        prop_assert!(ax2 >= lambda_max - 2.0 * tau);
    }
}

#[test]
fn unitary_top_subspace_is_everything() {
    let u = haar_unitary(&mut MatrixRng::new(3), 4);
    let s = top_singular_subspace(&u, default_cluster_tol(1.0)).unwrap();
    assert_eq!(s.dim(), 4);
}
