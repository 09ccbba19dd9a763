use num_complex::Complex64;
use proptest::prelude::*;
use specstat::classical::{cl_approx, cl_exact, lowering_state, norm_power_law, Observable};
use specstat::operator::exact;
use specstat::{ExactComplex, Generator, LoweringPoint, OperatorPoly};

fn su3_point() -> impl Strategy<Value = LoweringPoint> {
    prop::collection::vec(-2.0f64..2.0, 6).prop_map(|v| {
        LoweringPoint::new(
            3,
            vec![
                ((1, 0), Complex64::new(v[0], v[1])),
                ((2, 0), Complex64::new(v[2], v[3])),
                ((2, 1), Complex64::new(v[4], v[5])),
            ],
        )
        .unwrap()
    })
}

fn hermitian_words(n: usize) -> Observable {
    let t = Generator::Torus(0);
    let up = Generator::Root(0, 1);
    let down = Generator::Root(1, 0);
    let c = Complex64::new;
    Observable::from_words(
        n,
        [
            (vec![t], c(2.0, 0.0)),
            (vec![up, t], c(0.0, 1.0)),
            (vec![t, down], c(0.0, -1.0)),
            (vec![up, down], c(1.0, 0.0)),
            (vec![Generator::Root(2, 0), t, Generator::Root(0, 2)], c(0.5, 0.0)),
        ],
    )
    .unwrap()
}

proptest! {
    #[test]
    fn norm_is_multiplicative(p in su3_point(), m in 1u32..6) {
        prop_assert!((norm_power_law(&p, m).unwrap().ratio - 1.0).abs() < 1e-10);
    }

    #[test]
    fn torus_equivariance(p in su3_point(), th in prop::collection::vec(0.0f64..1.0, 3), i in 0usize..3, j in 0usize..3) {
        prop_assume!(i != j);
        let x = lowering_state(&p, 3).unwrap();
        let kx = x.torus_act(&th).unwrap();
        let g = Generator::Root(i, j);
        // Ad(k^{-1}) E_ij = e^{-2 pi i (th_i - th_j)} E_ij
        let phase = Complex64::from_polar(1.0, -std::f64::consts::TAU * (th[i] - th[j]));
        let lhs = kx.expectation_word(&[g]).unwrap();
        let rhs = x.expectation_word(&[g]).unwrap() * phase;
        prop_assert!((lhs - rhs).norm() < 1e-9);
        let t = Generator::Torus(0);
        prop_assert!((kx.expectation_word(&[t]).unwrap() - x.expectation_word(&[t]).unwrap()).norm() < 1e-9);
    }

    #[test]
    fn hermitian_values_are_real(p in su3_point(), lvl in 1u32..12) {
        let h = hermitian_words(3);
        prop_assert!(h.is_hermitian(0.0));
        prop_assert!(cl_exact(&h, &p).unwrap().im.abs() < 1e-12);
        let v = cl_approx(&h, &p, lvl).unwrap();
        prop_assert!(v.im.abs() < 1e-12 * (1.0 + v.re.abs()));
    }
}

fn fitted_rate(op: &OperatorPoly<ExactComplex>, p: &LoweringPoint) -> f64 {
    let op = Observable::from(op);
    let op = &op;
    let target = cl_exact(op, p).unwrap();
    let err = |n: u32| (cl_approx(op, p, n).unwrap() - target).norm();
    err(40) / err(80)
}

#[test]
fn first_order_convergence() {
    let w = LoweringPoint::su2(Complex64::new(0.7, -0.4));
    let t = Generator::Torus(0);
    let cubic = OperatorPoly::monomial(2, vec![t, t, t], exact(1, 0)).unwrap();
    let r = fitted_rate(&cubic, &w);
    assert!((1.6..2.4).contains(&r), "su(2) rate {r}");
    let p = LoweringPoint::new(3, vec![((1, 0), Complex64::new(0.5, 0.2)), ((2, 1), Complex64::new(-0.3, 0.8))]).unwrap();
    let mixed = OperatorPoly::monomial(3, vec![Generator::Torus(0), Generator::Torus(1), Generator::Root(0, 2)], exact(1, 0))
        .unwrap();
    let r = fitted_rate(&mixed, &p);
    assert!((1.6..2.4).contains(&r), "su(3) rate {r}");
}

#[test]
fn eigenstate_has_no_correction() {
    let t = Generator::Torus(0);
    let sq = Observable::from(&OperatorPoly::monomial(2, vec![t, t], exact(3, 0)).unwrap());
    let origin = LoweringPoint::origin(2).unwrap();
    for lvl in [1, 7, 30] {
        assert!((cl_approx(&sq, &origin, lvl).unwrap() - cl_exact(&sq, &origin).unwrap()).norm() < 1e-12);
    }
}
