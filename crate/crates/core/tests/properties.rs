use std::sync::OnceLock;

use num_traits::{One, Zero};
use octof4_core::diffop::{DiffPoly, OperatorMatrix};
use octof4_core::f4::{critical_set, SuperconformalSet};
use octof4_core::frame::Frame;
use octof4_core::matrix::Matrix;
use octof4_core::octonion::{Octonion, OctonionTensors};
use octof4_core::poly::{Generator, ParamPoly};
use octof4_core::roots::{rational_roots, substitute_root};
use octof4_core::scalar::{int, rat, GaussRational, Rational};
use octof4_core::wave::WaveVector;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn gauss() -> impl Strategy<Value = GaussRational> {
    (rational(), rational()).prop_map(|(re, im)| GaussRational::new(re, im))
}

fn monomial() -> impl Strategy<Value = ParamPoly> {
    prop::collection::vec(0usize..5, 0..3).prop_map(|gs| {
        gs.into_iter()
            .fold(ParamPoly::one(), |acc, g| &acc * &ParamPoly::generator(Generator::ALL[g]))
    })
}

fn poly() -> impl Strategy<Value = ParamPoly> {
    prop::collection::vec((gauss(), monomial()), 0..4)
        .prop_map(|ts| ts.iter().fold(ParamPoly::zero(), |acc, (c, m)| &acc + &m.scale(c)))
}

fn octonion() -> impl Strategy<Value = Octonion> {
    prop::collection::vec(rational(), 8).prop_map(|v| Octonion::new(std::array::from_fn(|i| v[i].clone())))
}

fn tensors() -> &'static OctonionTensors {
    static T: OnceLock<OctonionTensors> = OnceLock::new();
    T.get_or_init(OctonionTensors::build)
}

fn diff_poly() -> impl Strategy<Value = DiffPoly> {
    prop::collection::vec((-2i32..=3, 0u32..=2, -4i64..=4), 1..4).prop_map(|ts| {
        ts.iter().fold(DiffPoly::default(), |acc, &(m, k, c)| {
            &acc + &DiffPoly::monomial(m, k, ParamPoly::from_rational(int(c)))
        })
    })
}

fn wave() -> impl Strategy<Value = WaveVector> {
    (1i64..=5, prop::collection::vec((-3i64..=3, -4i64..=4), 1..4)).prop_map(|(offset, ts)| {
        ts.iter().fold(WaveVector::zero(1), |acc, &(n, c)| {
            acc.add(&WaveVector::single(1, 0, rat(6 * n + offset, 6), GaussRational::from_int(c)))
        })
    })
}

fn critical() -> &'static (Frame, SuperconformalSet) {
    static S: OnceLock<(Frame, SuperconformalSet)> = OnceLock::new();
    S.get_or_init(|| {
        let f = Frame::new().unwrap();
        let (_, s) = critical_set(octof4_core::susy::Branch::Second, &f).unwrap();
        (f, s)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn matrix_product_is_associative(v in prop::collection::vec(rational(), 27)) {
        let m = |o: usize| Matrix::from_fn(3, 3, |r, c| v[o + 3 * r + c].clone());
        let (a, b, c) = (m(0), m(9), m(18));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!((&a * &b).transpose(), &b.transpose() * &a.transpose());
    }

    #[test]
    fn octonions_are_alternative_and_normed(x in octonion(), y in octonion()) {
        let t = tensors();
        let xx = x.mul_with(&x, t);
        prop_assert_eq!(xx.mul_with(&y, t), x.mul_with(&x.mul_with(&y, t), t));
        let yy = y.mul_with(&y, t);
        prop_assert_eq!(x.mul_with(&y, t).mul_with(&y, t), x.mul_with(&yy, t));
        prop_assert_eq!(x.mul_with(&y, t).norm(), x.norm() * y.norm());
    }

    #[test]
    fn derivative_moves_past_powers(m in -4i32..=4, k in 1u32..=3) {
        // d x^m = x^m d + m x^(m-1)
        let lhs = DiffPoly::d(1).compose(&DiffPoly::x_pow(m)).unwrap();
        let mut rhs = DiffPoly::monomial(m, 1, ParamPoly::one());
        rhs = &rhs + &DiffPoly::monomial(m - 1, 0, ParamPoly::from_rational(int(m.into())));
        prop_assert_eq!(lhs, rhs);
        let dk = DiffPoly::d(k);
        prop_assert_eq!(dk.compose(&DiffPoly::d(1)).unwrap(), DiffPoly::d(k + 1));
    }

    #[test]
    fn composition_and_adjoint(a in diff_poly(), b in diff_poly(), c in diff_poly()) {
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(ab.compose(&c).unwrap(), a.compose(&b.compose(&c).unwrap()).unwrap());
        prop_assert_eq!(a.adjoint().adjoint(), a.clone());
        prop_assert_eq!(ab.adjoint(), b.adjoint().compose(&a.adjoint()).unwrap());
    }

    #[test]
    fn apply_respects_composition(a in diff_poly(), b in diff_poly(), psi in wave()) {
        let op = |p: &DiffPoly| OperatorMatrix::scalar(1, p);
        let composed = op(&a).compose(&op(&b)).unwrap().apply(&psi).unwrap();
        let nested = op(&a).apply(&op(&b).apply(&psi).unwrap()).unwrap();
        prop_assert_eq!(composed, nested);
    }

    #[test]
    fn rational_roots_are_exact(roots in prop::collection::vec(rational(), 1..4), lead in rational()) {
        prop_assume!(!lead.is_zero());
        let c = ParamPoly::generator(Generator::C);
        let p = roots.iter().fold(ParamPoly::from_rational(lead), |acc, r| {
            &acc * &(&c - &ParamPoly::from_rational(r.clone()))
        });
        let found = rational_roots(&p).unwrap();
        for r in &roots {
            prop_assert!(found.contains(r));
        }
        for r in &found {
            prop_assert!(substitute_root(&p, Generator::C, r).is_zero());
        }
    }

    #[test]
    fn hamiltonian_is_shared_and_conserved(i in 1usize..=8, j in 1usize..=8) {
        let (_, s) = critical();
        let qi = s.q(i);
        prop_assert_eq!(qi.anticommutator(qi).unwrap(), s.q(j).anticommutator(s.q(j)).unwrap());
        prop_assert!(s.h.commutator(qi).unwrap().is_zero());
    }
}
