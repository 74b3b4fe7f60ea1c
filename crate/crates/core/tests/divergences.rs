use nalgebra::Complex;
use proptest::prelude::*;
use qdiv::generators::{difference_quotient, half_shift_gap};
use qdiv::random::{random_pure, random_state, random_unitary, rng_from_seed, SeededRng};
use qdiv::scalar::trace_product_re;
use qdiv::{
    bregman, bregman_rank_one_pair, bregman_rank_one_vs_rank_two, catalog, jensen, jensen_max_constant,
    jensen_rank_one, jensen_via_bregman, normalize, CMatrix, DensityState64, Generator64, HermitianMatrix,
    RankOneProjection, Tolerances64,
};
use rand::Rng;

fn tol() -> Tolerances64 {
    Tolerances64::default()
}

fn gen(name: &str) -> Generator64 {
    normalize(&catalog(name).unwrap())
}

fn full(dim: usize, rng: &mut SeededRng) -> DensityState64 {
    random_state(dim, dim, rng, &tol()).unwrap()
}

fn finite(f: &Generator64, x: &DensityState64, y: &DensityState64) -> f64 {
    bregman(f, x, y, &tol()).unwrap().as_finite().unwrap()
}

/// `log M` straight from an eigendecomposition of the raw matrix.
fn log_m(m: &CMatrix<f64>) -> CMatrix<f64> {
    let e = m.clone().symmetric_eigen();
    let d = CMatrix::from_diagonal(&e.eigenvalues.map(|x| Complex::new(x.ln(), 0.0)));
    &e.eigenvectors * d * e.eigenvectors.adjoint()
}

fn umegaki(a: &DensityState64, b: &DensityState64) -> f64 {
    let (am, bm) = (a.matrix().as_matrix(), b.matrix().as_matrix());
    trace_product_re(am, &(log_m(am) - log_m(bm)))
}

fn mix(a: &DensityState64, b: &DensityState64, w: f64) -> DensityState64 {
    a.mix(b, w, &tol()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bregman_is_unitarily_invariant(seed in any::<u64>(), dim in 2usize..=5, rank in 1usize..=5) {
        let mut rng = rng_from_seed(seed);
        let x = random_state(dim, rank.min(dim), &mut rng, &tol()).unwrap();
        let y = full(dim, &mut rng);
        let u = random_unitary::<f64, _>(dim, &mut rng);
        for name in ["xlogx", "quadratic", "power:q=3/2"] {
            let f = gen(name);
            let h = finite(&f, &x, &y);
            let hu = finite(&f, &x.conjugate_by(&u, &tol()).unwrap(), &y.conjugate_by(&u, &tol()).unwrap());
            prop_assert!(h >= 0.0);
            prop_assert!((h - hu).abs() < 1e-9);
        }
    }

    #[test]
    fn quadratic_is_hilbert_schmidt(seed in any::<u64>(), dim in 2usize..=6) {
        let mut rng = rng_from_seed(seed);
        let a = random_state(dim, rng.random_range(1..=dim), &mut rng, &tol()).unwrap();
        let b = random_state(dim, rng.random_range(1..=dim), &mut rng, &tol()).unwrap();
        let d = a.matrix().sub(b.matrix());
        let hs = trace_product_re(d.as_matrix(), d.as_matrix());
        let f = gen("quadratic");
        prop_assert!((finite(&f, &a, &b) - hs).abs() < 1e-10);
        prop_assert!((jensen(&f, &a, &b, &tol()).unwrap() - hs / 4.0).abs() < 1e-10);
    }

    #[test]
    fn jensen_agrees_with_bregman_form(seed in any::<u64>(), dim in 2usize..=5) {
        let mut rng = rng_from_seed(seed);
        let a = random_state(dim, rng.random_range(1..=dim), &mut rng, &tol()).unwrap();
        let b = random_state(dim, rng.random_range(1..=dim), &mut rng, &tol()).unwrap();
        for name in ["xlogx", "quadratic", "power:q=1.5", "power:q=3"] {
            let f = gen(name);
            let j = jensen(&f, &a, &b, &tol()).unwrap();
            prop_assert!((j - jensen_via_bregman(&f, &a, &b, &tol()).unwrap()).abs() < 1e-8);
            prop_assert!((j - jensen(&f, &b, &a, &tol()).unwrap()).abs() < 1e-12);
            if f.matrix_entropy_member() {
                prop_assert!(j <= jensen_max_constant(&f) + 1e-10);
            }
        }
    }

    #[test]
    fn pure_pairs_follow_closed_forms(seed in any::<u64>(), dim in 2usize..=6) {
        let mut rng = rng_from_seed(seed);
        let p = random_pure::<f64, _>(dim, &mut rng);
        let q = random_pure::<f64, _>(dim, &mut rng);
        let pq = p.transition_probability(&q).unwrap();
        let (ps, qs) = (p.to_state(&tol()).unwrap(), q.to_state(&tol()).unwrap());
        for name in ["quadratic", "power:q=1.5", "xlogx"] {
            let f = gen(name);
            let direct = bregman(&f, &ps, &qs, &tol()).unwrap();
            let closed = bregman_rank_one_pair(&f, &p, &q, &tol()).unwrap();
            prop_assert_eq!(direct.is_infinite(), closed.is_infinite());
            if let Some(d) = direct.distance(&closed) {
                prop_assert!(d < 1e-10);
            }
            let j = jensen(&f, &ps, &qs, &tol()).unwrap();
            prop_assert!((j - jensen_rank_one(&f, pq, &tol()).unwrap()).abs() < 1e-8);
        }
    }

    #[test]
    fn rank_two_closed_form(seed in any::<u64>(), dim in 2usize..=5, lambda in 0.01f64..0.99) {
        let mut rng = rng_from_seed(seed);
        let u = random_unitary::<f64, _>(dim, &mut rng);
        let p = RankOneProjection::from_unnormalized(u.column(0).into_owned()).unwrap();
        let q = RankOneProjection::from_unnormalized(u.column(1).into_owned()).unwrap();
        let (a, b): (f64, f64) = (rng.random(), rng.random());
        let phase = Complex::from_polar(1.0, 6.0 * b);
        let r = RankOneProjection::from_unnormalized(p.vector() * Complex::new(a, 0.0) + q.vector() * phase).unwrap();
        let s = DensityState64::from_hermitian(
            p.matrix().scale(lambda).add(&q.matrix().scale(1.0 - lambda)),
            &tol(),
        ).unwrap();
        for name in ["xlogx", "quadratic", "power:q=1.5"] {
            let f = gen(name);
            let direct = finite(&f, &r.to_state(&tol()).unwrap(), &s);
            let closed = bregman_rank_one_vs_rank_two(&f, &r, lambda, &p, &q, &tol()).unwrap();
            prop_assert!((direct - closed.as_finite().unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn strict_convexity_in_first_argument(seed in any::<u64>(), dim in 2usize..=5, w in 0.05f64..0.95) {
        let mut rng = rng_from_seed(seed);
        let (a, b, d) = (full(dim, &mut rng), full(dim, &mut rng), full(dim, &mut rng));
        for name in ["xlogx", "quadratic", "power:q=1.5", "power:q=3"] {
            let f = gen(name);
            let lhs = finite(&f, &mix(&a, &b, w), &d);
            let rhs = w * finite(&f, &a, &d) + (1.0 - w) * finite(&f, &b, &d);
            prop_assert!(lhs < rhs, "{name}: {lhs} !< {rhs}");
        }
    }

    #[test]
    fn joint_convexity_for_matrix_entropy_members(seed in any::<u64>(), dim in 2usize..=5, w in 0.0f64..=1.0) {
        let mut rng = rng_from_seed(seed);
        let (a1, a2, b1, b2) = (full(dim, &mut rng), full(dim, &mut rng), full(dim, &mut rng), full(dim, &mut rng));
        for name in ["xlogx", "quadratic", "power:q=1.5"] {
            let f = gen(name);
            prop_assert!(f.matrix_entropy_member());
            let lhs = finite(&f, &mix(&a1, &a2, w), &mix(&b1, &b2, w));
            let rhs = w * finite(&f, &a1, &b1) + (1.0 - w) * finite(&f, &a2, &b2);
            prop_assert!(lhs <= rhs + 1e-9);
        }
    }

    #[test]
    fn weyl_interlacing_for_rank_one_updates(seed in any::<u64>(), dim in 2usize..=6) {
        let mut rng = rng_from_seed(seed);
        let r = random_pure::<f64, _>(dim, &mut rng);
        let d = random_state(dim, rng.random_range(1..=dim), &mut rng, &tol()).unwrap();
        let sum = r.matrix().add(d.matrix()).decompose(0.0).eigenvalues();
        let base = d.matrix().decompose(0.0).eigenvalues();
        let diffs: Vec<f64> = sum.iter().zip(&base).map(|(x, y)| x - y).collect();
        prop_assert!(diffs.iter().all(|&x| x >= -1e-9));
        prop_assert!((diffs.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn umegaki_agrees_with_operator_logarithms() {
    let f = gen("xlogx");
    let mut rng = rng_from_seed(11);
    for dim in 2..=6 {
        for _ in 0..30 {
            let (a, b) = (full(dim, &mut rng), full(dim, &mut rng));
            assert!((finite(&f, &a, &b) - umegaki(&a, &b)).abs() < 1e-8);
        }
    }
}

#[test]
fn umegaki_is_infinite_off_support() {
    let f = gen("xlogx");
    let mut rng = rng_from_seed(12);
    for dim in 2..=5 {
        for rank in 1..dim {
            let a = full(dim, &mut rng);
            let b = random_state(dim, rank, &mut rng, &tol()).unwrap();
            let outside = 1.0 - trace_product_re(b.support().as_matrix(), a.matrix().as_matrix());
            assert!(outside > 1e-6);
            assert!(bregman(&f, &a, &b, &tol()).unwrap().is_infinite());
            assert!(bregman(&gen("quadratic"), &a, &b, &tol())
                .unwrap()
                .as_finite()
                .is_some());
        }
    }
}

#[test]
fn bregman_extends_continuously_to_the_boundary() {
    let t = tol();
    let mut rng = rng_from_seed(13);
    for dim in 2..=4 {
        for name in ["xlogx", "quadratic", "power:q=1.5"] {
            let f = gen(name);
            let x = random_state(dim, 1, &mut rng, &t).unwrap();
            let y = full(dim, &mut rng);
            let exact = finite(&f, &x, &y);
            let shifted = |eps: f64| {
                let m = x
                    .matrix()
                    .add(&HermitianMatrix::identity(dim).scale(eps))
                    .scale(1.0 / (1.0 + dim as f64 * eps));
                finite(&f, &DensityState64::from_hermitian(m, &t).unwrap(), &y)
            };
            let (v4, v6) = (shifted(1e-4), shifted(1e-6));
            let extrapolated = v6 + (v6 - v4) * 1e-6 / (1e-4 - 1e-6);
            assert!(
                (extrapolated - exact).abs() < 1e-3,
                "{name} dim {dim}: {extrapolated} vs {exact}"
            );
        }
    }
}

#[test]
fn rank_one_jensen_maximum_at_orthogonal_pairs() {
    for name in ["xlogx", "quadratic", "power:q=1.5", "power:q=3"] {
        let f = gen(name);
        let a = DensityState64::diag(&[1.0, 0.0, 0.0], &tol()).unwrap();
        let b = DensityState64::diag(&[0.0, 0.0, 1.0], &tol()).unwrap();
        let j = jensen(&f, &a, &b, &tol()).unwrap();
        assert!((j - jensen_max_constant(&f)).abs() < 1e-10);
        assert!((jensen_rank_one(&f, 0.0, &tol()).unwrap() - jensen_max_constant(&f)).abs() < 1e-12);
    }
}

#[test]
fn rank_one_jensen_is_strictly_decreasing_in_overlap() {
    for name in ["xlogx", "quadratic", "power:q=1.5"] {
        let f = gen(name);
        let vals: Vec<f64> = (0..=100)
            .map(|i| jensen_rank_one(&f, i as f64 / 100.0, &tol()).unwrap())
            .collect();
        assert!(vals.windows(2).all(|w| w[0] > w[1]));
    }
}

#[test]
fn proof_devices_are_monotone() {
    for name in ["xlogx", "quadratic", "power:q=1.5", "power:q=3"] {
        let f = gen(name);
        let grid: Vec<f64> = (1..200).map(|i| i as f64 / 200.0).collect();
        assert!(grid
            .windows(2)
            .all(|w| half_shift_gap(&f, w[0]) < half_shift_gap(&f, w[1])));
        for &b in &[0.3, 0.7] {
            let hs: Vec<f64> = grid
                .iter()
                .filter(|&&a| (a - b).abs() > 1e-3)
                .map(|&a| difference_quotient(&f, a, b))
                .collect();
            assert!(hs.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
