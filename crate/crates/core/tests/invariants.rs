use graphstate::channels::{apply_channel, edge_addition_channel, edge_deletion_channel};
use graphstate::concurrence::concurrence;
use graphstate::density::{density_of_graph, mixture, pure_mixture_decomposition, tensor_mixture, tensor_separable_decomposition, DensityMatrix};
use graphstate::entropy::{regular_graph_entropy, von_neumann_entropy};
use graphstate::graph::{all_permutations, cayley_circulant, star};
use graphstate::linalg::{eigensystem, is_psd, CMatrix};
use graphstate::separability::{partial_transpose, ppt_test, BipartiteLabeling, SeparabilityStatus};
use graphstate::{Graph, HermitianMatrix, Rational};
use num_complex::Complex64;
use proptest::prelude::*;

fn graph_strategy(ns: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Graph> {
    ns.prop_flat_map(|n| (Just(n), 1u64..(1u64 << (n * (n - 1) / 2))))
        .prop_map(|(n, mask)| Graph::from_edge_mask(n, mask))
}

fn random_state(dim: usize, entries: &[(f64, f64)]) -> DensityMatrix {
    let a = CMatrix::from_fn(dim, dim, |i, j| {
        let (re, im) = entries[(i * dim + j) % entries.len()];
        Complex64::new(re, im)
    });
    let mut m = &a * a.adjoint();
    m += CMatrix::identity(dim, dim) * Complex64::new(1e-3, 0.0);
    let tr = m.trace();
    m /= tr;
    DensityMatrix::from_hermitian(HermitianMatrix::from_complex(m, 1e-12).unwrap(), 1e-9).unwrap()
}

fn entries() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // exhaustive for n <= 6 lives in the acceptance suite; larger n is sampled
    #[test]
    fn kernel_dimension_counts_components(g in graph_strategy(7..=8)) {
        let rho = density_of_graph(&g).unwrap();
        let zeros = rho.spectrum().grouped(1e-8).iter()
            .filter(|(v, _)| v.abs() <= 1e-8)
            .map(|(_, k)| *k)
            .sum::<usize>();
        prop_assert_eq!(zeros, g.component_count());
    }

    #[test]
    fn entropy_is_bounded(g in graph_strategy(7..=8)) {
        let s = von_neumann_entropy(&density_of_graph(&g).unwrap()).entropy;
        prop_assert!(s >= -1e-12);
        prop_assert!(s <= ((g.n() - 1) as f64).log2() + 1e-9);
    }

    #[test]
    fn pure_mixture_is_exact(g in graph_strategy(2..=7)) {
        let terms = pure_mixture_decomposition(&g).unwrap();
        prop_assert_eq!(terms.len(), g.m());
        for (_, t) in &terms {
            prop_assert!(t.is_pure(1e-12));
        }
        let sum = mixture(&terms).unwrap();
        let rho = density_of_graph(&g).unwrap();
        prop_assert_eq!(sum.as_rational(), rho.as_rational());
    }

    #[test]
    fn tensor_decomposition_is_exact(g in graph_strategy(2..=3), h in graph_strategy(2..=4)) {
        let terms = tensor_separable_decomposition(&g, &h).unwrap();
        let sum = tensor_mixture(&terms).unwrap();
        let prod = density_of_graph(&g.tensor_product(&h).unwrap()).unwrap().into_mat();
        prop_assert_eq!(sum.as_rational(), prod.as_rational());
    }

    #[test]
    fn partial_transpose_is_an_exact_involution(g in graph_strategy(4..=6), h in graph_strategy(4..=6), split in 0usize..2) {
        prop_assume!(g.n() == h.n() && g.n() != 5);
        let n = g.n();
        let (p, q) = if split == 0 { (2, n / 2) } else { (n / 2, 2) };
        let lab = BipartiteLabeling::default_for(p, q).unwrap();
        let a = density_of_graph(&g).unwrap().into_mat();
        let b = density_of_graph(&h).unwrap().into_mat();
        let pt = partial_transpose(&a, &lab).unwrap();
        prop_assert!(pt.as_rational().unwrap().is_symmetric());
        prop_assert_eq!(pt.exact_trace(), a.exact_trace());
        prop_assert_eq!(&partial_transpose(&pt, &lab).unwrap(), &a);
        let (w, v) = (Rational::new(1, 3), Rational::new(2, 3));
        let combo = a.scale_rational(w).add(&b.scale_rational(v)).unwrap();
        let lhs = partial_transpose(&combo, &lab).unwrap();
        let rhs = pt.scale_rational(w).add(&partial_transpose(&b, &lab).unwrap().scale_rational(v)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn concurrence_is_in_unit_interval(e in entries()) {
        let rho = random_state(4, &e);
        let c = concurrence(rho.mat()).unwrap();
        prop_assert!(c.value >= 0.0 && c.value <= 1.0 + 1e-9, "{}", c.value);
        prop_assert!(c.lambdas.windows(2).all(|w| w[0] >= w[1] - 1e-12));
    }

    #[test]
    fn edit_channels_preserve_states(g in graph_strategy(3..=5), pick in any::<prop::sample::Index>(), e in entries()) {
        let edge = g.edges()[pick.index(g.m())];
        let rho = random_state(g.n(), &e);
        if g.m() > 1 {
            let out = apply_channel(&edge_deletion_channel(&g, edge).unwrap(), &rho).unwrap();
            prop_assert!((out.mat().trace() - 1.0).abs() < 1e-10);
            prop_assert!(is_psd(out.mat(), 1e-9).is_psd);
        }
        let missing = (0..g.n()).flat_map(|u| (u + 1..g.n()).map(move |v| (u, v))).find(|&(u, v)| !g.has_edge(u, v));
        if let Some(edge) = missing {
            let out = apply_channel(&edge_addition_channel(&g, edge).unwrap(), &rho).unwrap();
            prop_assert!((out.mat().trace() - 1.0).abs() < 1e-10);
            prop_assert!(is_psd(out.mat(), 1e-9).is_psd);
        }
    }

    #[test]
    fn eigensystem_reconstructs(dim in 1usize..9, e in entries()) {
        let a = CMatrix::from_fn(dim, dim, |i, j| {
            let (re, im) = e[(i * dim + j) % e.len()];
            Complex64::new(re, im)
        });
        let h = HermitianMatrix::from_complex((&a + a.adjoint()) * Complex64::new(0.5, 0.0), 1e-12).unwrap();
        let spec = eigensystem(&h);
        prop_assert!(spec.values.windows(2).all(|w| w[0] <= w[1]));
        let err = (spec.reconstruct() - h.to_complex()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(err <= 1e-10 * dim as f64, "{err}");
    }

    #[test]
    fn regular_entropy_matches_dense(n in 5usize..24, a in 1usize..12) {
        let a = 1 + a % (n / 2);
        let g = cayley_circulant(n, &[a, n - a]).unwrap();
        let d = g.regular_degree().unwrap();
        let dense = von_neumann_entropy(&density_of_graph(&g).unwrap()).entropy;
        prop_assert!((regular_graph_entropy(&g, d).unwrap() - dense).abs() < 1e-9);
    }
}

#[test]
fn stars_are_npt_under_default_labeling() {
    for (n, p, q) in [(4, 2, 2), (6, 2, 3), (8, 2, 4), (9, 3, 3), (10, 2, 5), (12, 3, 4)] {
        let rho = density_of_graph(&star(n).unwrap()).unwrap();
        let lab = BipartiteLabeling::default_for(p, q).unwrap();
        let v = ppt_test(&rho, &lab, 1e-9).unwrap();
        assert_eq!(v.status, SeparabilityStatus::EntangledNpt, "star {n} in {p}x{q}");
    }
}

#[test]
fn stars_are_npt_under_every_labeling() {
    for (n, p, q) in [(4, 2, 2), (6, 2, 3), (6, 3, 2)] {
        let rho = density_of_graph(&star(n).unwrap()).unwrap();
        for perm in all_permutations(n) {
            let lab = BipartiteLabeling::from_permutation(p, q, &perm).unwrap();
            assert!(ppt_test(&rho, &lab, 1e-9).unwrap().min_pt_eigenvalue < -1e-9, "star {n} {lab}");
        }
    }
}
