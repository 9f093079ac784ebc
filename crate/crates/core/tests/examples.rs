//! Worked examples across the public API, one test per operation family.

use riemax_core::arith::{enumerate_e, enumerate_e_d, factorize, is_chain, primorial, quotient_set, IndexSet};
use riemax_core::bits::AtomSet;
use riemax_core::constructions::{extremal_slice_sets, rudin_sets, sweepout_ratio};
use riemax_core::covering::{fd_select, independent_overlap_check, jessen_select, jessen_weak_type, TailStart};
use riemax_core::exact::{rational, Average, Fixed, Measure};
use riemax_core::isomap::{alpha_atom, beta, p_reverse, verify_distribution_equality, PeriodicSet, Tau};
use riemax_core::orlicz::{alpha_fn, alpha_inv, orlicz_norm, phi, psi, young_check, GrowthFunction};
use riemax_core::product::{
    enumerate_f_d, independent, product_maximal, project_to_subalgebra, spectrum, FRect, ProductSpace,
    ProductStepFunction, Rectangle,
};
use riemax_core::torus::{
    project_to_algebra, riemann_maximal, riemann_set_atoms, riemann_sum, RiemannSet, StepFunction, TorusSet,
};
use riemax_core::DEFAULT_ATOM_BUDGET;

fn fx(values: &[f64]) -> StepFunction<Fixed> {
    StepFunction::from_f64(values).unwrap()
}

fn avg(n: u64, d: u64) -> Average<Fixed> {
    Average::ratio(n, d)
}

fn six() -> ProductSpace {
    ProductSpace::new(6, DEFAULT_ATOM_BUDGET).unwrap()
}

#[test]
fn arithmetic() {
    assert_eq!(factorize(12).factors(), &[(2, 2), (3, 1)]);
    assert!(factorize(1).factors().is_empty());
    assert_eq!(factorize(30).factors(), &[(2, 1), (3, 1), (5, 1)]);
    assert_eq!(primorial(1).unwrap(), 2);
    assert_eq!(primorial(3).unwrap(), 30);
    assert_eq!(primorial(6).unwrap(), 30030);
    assert_eq!(quotient_set(12, &IndexSet::new([3, 4])).unwrap(), IndexSet::new([3, 4]));
    assert_eq!(quotient_set(30, &IndexSet::new([30])).unwrap(), IndexSet::new([1]));
    assert_eq!(enumerate_e(2).unwrap(), IndexSet::new([2, 3]));
    assert_eq!(enumerate_e(3).unwrap(), IndexSet::new([2, 3, 6, 10, 15]));
    assert_eq!(enumerate_e_d(2).unwrap(), IndexSet::new([2, 3, 6]));
    assert!(is_chain(&IndexSet::new([2, 4, 8])));
    assert!(!is_chain(&IndexSet::new([2, 3])));
    assert!(is_chain(&IndexSet::new([5])));
}

#[test]
fn circle_operators() {
    let one = StepFunction::constant(1, Fixed::from_int(1)).unwrap();
    assert!(riemann_sum(&one, 5).unwrap().values().iter().all(|v| *v == avg(1, 1)));
    let atom0 = fx(&[1.0, 0.0, 0.0, 0.0]);
    assert!(riemann_sum(&atom0, 4).unwrap().values().iter().all(|v| *v == avg(1, 4)));

    let atoms = |s: TorusSet| s.atoms().iter().collect::<Vec<_>>();
    assert_eq!(atoms(riemann_set_atoms(4, 2, 0).unwrap()), vec![0, 2]);
    assert_eq!(atoms(riemann_set_atoms(4, 2, 1).unwrap()), vec![1, 3]);
    assert_eq!(riemann_set_atoms(6, 1, 4).unwrap().measure(), Measure::new(1, 6));

    let m = riemann_maximal(&atom0, &IndexSet::new([1, 2, 4]), 4).unwrap();
    assert_eq!(m.values(), &[avg(1, 1), avg(1, 4), avg(1, 2), avg(1, 4)]);
    assert_eq!(m.distribution(&avg(1, 3)), Measure::new(2, 4));

    let halves = project_to_algebra(&atom0, 2).unwrap();
    assert_eq!(halves.values(), &[avg(1, 2), avg(0, 1)]);
}

#[test]
fn product_space() {
    let space = six();
    let whole = Rectangle::new(&space, vec![0, 0], vec![0, 0]).unwrap();
    assert_eq!(whole.atoms(&space).count(), 6);
    let atom = Rectangle::new(&space, vec![1, 1], vec![1, 2]).unwrap();
    assert_eq!(atom.measure(&space), Measure::new(1, 6));
    let slab = Rectangle::from_divisor(&space, 2, vec![1, 0]).unwrap();
    assert_eq!(slab.measure(&space), Measure::new(3, 6));

    assert!(spectrum(&space, &whole.atoms(&space)).is_empty());
    assert_eq!(
        spectrum(
            &space,
            &Rectangle::from_divisor(&space, 2, vec![0, 0]).unwrap().atoms(&space)
        ),
        vec![0]
    );
    assert_eq!(spectrum(&space, &atom.atoms(&space)), vec![0, 1]);

    let x_half = space.axis_set(0, &[0]).unwrap();
    let y_part = space.axis_set(1, &[0]).unwrap();
    assert!(independent(&space, &[x_half.clone(), y_part]).unwrap());
    assert!(!independent(&space, &[x_half.clone(), x_half]).unwrap());

    let f = FRect::new(&space, 0, 2, 0, vec![]).unwrap();
    assert!(f.base(&space).is_full());
    assert_eq!(f.tail(&space), space.axis_set(0, &[0]).unwrap());
    let g = FRect::new(&space, 0, 1, 1, vec![2]).unwrap();
    assert_eq!(g.base(&space), space.axis_set(1, &[2]).unwrap());
    assert_eq!(g.tail(&space), space.axis_set(0, &[1]).unwrap());
    assert_eq!(enumerate_f_d(2, DEFAULT_ATOM_BUDGET).unwrap().len(), 11);

    let corner = ProductStepFunction::new(
        &space,
        vec![
            Fixed::from_int(1),
            Fixed::ZERO,
            Fixed::ZERO,
            Fixed::ZERO,
            Fixed::ZERO,
            Fixed::ZERO,
        ],
    )
    .unwrap();
    let m = product_maximal(&space, &corner, &IndexSet::new([2])).unwrap();
    let p = project_to_subalgebra(&space, &corner, 2).unwrap();
    for a in 0..6 {
        let expected = if space.coordinate(a, 0) == 0 {
            avg(1, 3)
        } else {
            avg(0, 1)
        };
        assert_eq!(m.get(a), expected);
        assert_eq!(p.get(a), expected);
    }
}

#[test]
fn digit_reversal() {
    assert_eq!(p_reverse(0, 5, 3).unwrap(), 0);
    assert_eq!(p_reverse(6, 2, 3).unwrap(), 3);
    assert_eq!(p_reverse(5, 3, 2).unwrap(), 7);
    let space = six();
    assert_eq!(alpha_atom(&space, 0).unwrap(), vec![0, 0]);
    assert_eq!(alpha_atom(&space, 5).unwrap(), vec![1, 2]);
    let four = ProductSpace::new(4, DEFAULT_ATOM_BUDGET).unwrap();
    assert_eq!(alpha_atom(&four, 1).unwrap(), vec![2]);

    let tau = Tau::new(&space).unwrap();
    let image = tau.alpha_set(&PeriodicSet::progression(6, 2, 1).unwrap()).unwrap();
    assert_eq!(
        image,
        Rectangle::from_divisor(&space, 2, vec![1, 0]).unwrap().atoms(&space)
    );
    let image = tau.alpha_set(&PeriodicSet::progression(6, 3, 0).unwrap()).unwrap();
    assert_eq!(image.measure(), Measure::new(2, 6));

    let circle = beta(4, &PeriodicSet::progression(4, 2, 0).unwrap()).unwrap();
    assert_eq!(circle, RiemannSet::new(4, 2, 0).unwrap().to_set().unwrap());

    let tau4 = Tau::new(&four).unwrap();
    let atom0 = fx(&[1.0, 0.0, 0.0, 0.0]);
    let c = verify_distribution_equality(&atom0, &IndexSet::new([1, 2, 4]), &tau4).unwrap();
    assert!(c.holds());
    assert_eq!(c.torus.sorted(), vec![avg(1, 4), avg(1, 4), avg(1, 2), avg(1, 1)]);
}

#[test]
fn coverings() {
    let chain = IndexSet::new([1, 2, 4]);
    let nested = [RiemannSet::new(4, 1, 0).unwrap(), RiemannSet::new(4, 2, 0).unwrap()];
    assert_eq!(jessen_select(&nested, &chain).unwrap().chosen, vec![1]);

    let one = StepFunction::constant(1, Fixed::from_int(1)).unwrap();
    let w = jessen_weak_type(&one, &IndexSet::new([1]), 1, &avg(1, 2)).unwrap();
    assert_eq!((w.lhs.clone(), w.rhs.clone()), (rational(1, 2), rational(1, 1)));
    let spike = fx(&[8.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    let w = jessen_weak_type(&spike, &IndexSet::new([1]), 8, &avg(1, 1)).unwrap();
    assert_eq!(w.level_set, Measure::new(1, 8));
    assert!(w.holds);

    let space = ProductSpace::primorial(3, DEFAULT_ATOM_BUDGET).unwrap();
    let all = enumerate_f_d(3, DEFAULT_ATOM_BUDGET).unwrap();
    let s = fd_select(&space, &all).unwrap();
    assert!(s.union_ratio_at_most(5) && s.conditions_verified);

    let six = six();
    let r = independent_overlap_check(
        &six,
        &AtomSet::full(6),
        &[six.axis_set(0, &[0]).unwrap()],
        &[rational(7, 2)],
        TailStart::Floor,
    )
    .unwrap();
    assert_eq!(r.intersection, Measure::new(3, 6));
    assert_eq!(r.tails[0].level, Measure::zero());
}

#[test]
fn growth_functions() {
    assert_eq!(alpha_fn(0.5), 0.5);
    assert_eq!(alpha_fn(2.0), 2.0);
    assert_eq!(alpha_inv(0.5), 0.5);
    assert_eq!(psi(0.0).unwrap(), 0.0);
    assert_eq!(phi(0.0).unwrap(), 0.0);
    assert!(young_check(0.0, 3.0).unwrap());
    assert_eq!(orlicz_norm(&[0.0, 0.0], GrowthFunction::Phi).unwrap(), 0.0);
    // G(a / c) = 1 with G(x) = x^2 gives c = a.
    let n = orlicz_norm(&[3.0, 3.0], GrowthFunction::Power(2.0)).unwrap();
    assert!((n - 3.0).abs() < 1e-9);
}

#[test]
fn constructions() {
    let r = extremal_slice_sets(2, DEFAULT_ATOM_BUDGET).unwrap();
    assert!(r.all_hold());
    assert!(r.large_set.to_rational() > rational(1, 3));
    assert!(r.small_set.to_rational() <= rational(1, 4));

    let full = TorusSet::full(6).unwrap();
    assert_eq!(
        sweepout_ratio(&IndexSet::new([2, 3]), &full, &rational(1, 2), 6).unwrap(),
        rational(1, 1)
    );
    assert_eq!(
        sweepout_ratio(&IndexSet::new([2, 3]), &full, &rational(3, 2), 6).unwrap(),
        rational(0, 1)
    );

    let s = rudin_sets(3, &rational(1, 4), DEFAULT_ATOM_BUDGET).unwrap();
    assert!(s.sweep_ratio > rational(4, 1));
}
