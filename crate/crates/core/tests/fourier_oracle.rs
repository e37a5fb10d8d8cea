use boxsum::sincint::{borwein_halfwidths, fourier_density_quadrature, sinc_integral_coefficient};
use boxsum::{density, FloatHalfWidths};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn random_cases_within_tolerance() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=5 {
        for _ in 0..6 {
            let a = FloatHalfWidths::new((0..n).map(|_| rng.gen_range(0.3..2.0)).collect()).unwrap();
            let x = rng.gen_range(-1.1..1.1) * a.support_radius();
            let q = fourier_density_quadrature(&a, x, 1e-7).unwrap();
            let want = density(&a, &x).unwrap().value;
            assert!((q.value - want).abs() <= 1e-7, "a={a:?} x={x} {q:?} want {want}");
            assert!(q.tail_bound <= 0.5e-7);
        }
    }
}

#[test]
fn bridge_at_origin() {
    let exact = borwein_halfwidths(5).unwrap();
    let a = exact.map(|v| v.to_f64().unwrap()).unwrap();
    let q = fourier_density_quadrature(&a, 0.0, 1e-9).unwrap();
    let c = sinc_integral_coefficient(&exact).unwrap().to_f64().unwrap();
    assert!((q.value - c).abs() <= 1e-9);
}

#[test]
fn kinks_of_two_box_density() {
    // x = ±|a1 - a2| has a zero frequency in the expansion
    let a = FloatHalfWidths::new(vec![1.5, 0.5]).unwrap();
    for x in [1.0, -1.0, 2.0, 0.0] {
        let q = fourier_density_quadrature(&a, x, 1e-8).unwrap();
        let want = density(&a, &x).unwrap().value;
        assert!((q.value - want).abs() <= 1e-8, "x={x} {q:?} want {want}");
    }
}
