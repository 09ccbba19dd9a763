//! Fixed workloads shared by the benchmarks.

use specstat::torus::haar_sample;
use specstat::{HighestWeight, OperatorPoly, OrderedTuple, SpacingFunction, TorusPoint};

/// Haar point of dimension `n` from a fixed stream.
pub fn torus_point(n: usize) -> TorusPoint {
    haar_sample(n, 42, 0).expect("n >= 2")
}

/// Sorted spectrum of `n` Haar phases scaled to `[0, n)`.
pub fn spectrum(n: usize) -> OrderedTuple {
    let p = torus_point(n);
    OrderedTuple::new(p.phases().iter().map(|x| x * n as f64).collect()).expect("finite phases")
}

pub fn unit_window() -> SpacingFunction {
    SpacingFunction::indicator(0.0, 1.0).expect("valid interval")
}

/// `t0 + 2 t1 + t0 t1` on `sl(3)`.
pub fn quadratic_torus_operator() -> OperatorPoly<specstat::ExactComplex> {
    use specstat::operator::exact;
    use specstat::Generator::Torus;
    OperatorPoly::from_terms(
        3,
        vec![(vec![Torus(0)], exact(1, 0)), (vec![Torus(1)], exact(2, 0)), (vec![Torus(0), Torus(1)], exact(1, 0))],
    )
    .expect("sl(3) words")
}

/// `m (f_1 + f_2)` on `su(3)`.
pub fn adjoint_ray(m: u64) -> HighestWeight {
    HighestWeight::new(vec![m, m])
}
