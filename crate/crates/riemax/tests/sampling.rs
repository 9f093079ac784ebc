//! The random instance generators meet the preconditions of the checks
//! they feed.

use rand::Rng;

use riemax::sample::{self, trial_rng, Stream};
use riemax_core::arith::{factorize, is_chain};
use riemax_core::exact::{rational, Rational};
use riemax_core::product::{enumerate_f_d, independent, spectrum, ProductSpace};
use riemax_core::DEFAULT_ATOM_BUDGET;

#[test]
fn streams_are_reproducible_and_distinct() {
    let draw = |stream, trial| trial_rng(9, stream, trial).gen::<u64>();
    assert_eq!(draw(Stream::Jessen, 3), draw(Stream::Jessen, 3));
    assert_ne!(draw(Stream::Jessen, 3), draw(Stream::Jessen, 4));
    assert_ne!(draw(Stream::Jessen, 3), draw(Stream::Selection, 3));
}

#[test]
fn unit_values_are_exact_grid_points() {
    let mut rng = trial_rng(1, Stream::Orlicz, 0);
    for _ in 0..1000 {
        let v = sample::unit_fixed(&mut rng);
        assert!(v.to_f64() >= 0.0 && v.to_f64() < 1.0);
        assert_eq!(v.raw() % (1 << 32), 0);
    }
}

#[test]
fn chains_and_resolutions_have_the_requested_shape() {
    for trial in 0..300 {
        let mut rng = trial_rng(2, Stream::Jessen, trial);
        let l = rng.gen_range(1..=1024);
        let chain = sample::chain(&mut rng, l);
        assert!(is_chain(&chain));
        assert!(!chain.is_empty() && chain.len() <= 6);
        assert!(chain.iter().all(|n| l % n == 0));

        let r = sample::composite_resolution(&mut rng, 360);
        assert!((6..=360).contains(&r));
        assert!(factorize(r).len() >= 2);
    }
}

#[test]
fn overlap_families_are_independent_with_mass_at_most_half() {
    let space = ProductSpace::primorial(5, DEFAULT_ATOM_BUDGET).unwrap();
    for trial in 0..100 {
        let mut rng = trial_rng(3, Stream::Overlap, trial);
        let (a, sets) = sample::overlap_family(&mut rng, &space).unwrap();
        assert!(!a.is_empty());
        let mass = sets.iter().fold(Rational::from_integer(0.into()), |acc, s| {
            acc + s.measure().to_rational()
        });
        assert!(mass <= rational(1, 2));
        let mut all = vec![a.clone()];
        all.extend(sets.iter().cloned());
        assert!(independent(&space, &all).unwrap());
        // Every nonempty proper slice depends on exactly one axis.
        for s in sets.iter().filter(|s| !s.is_empty() && !s.is_full()) {
            assert_eq!(spectrum(&space, s).len(), 1);
        }
    }
}

#[test]
fn subfamilies_are_nonempty_members_of_the_family() {
    let family = enumerate_f_d(3, DEFAULT_ATOM_BUDGET).unwrap();
    for trial in 0..100 {
        let mut rng = trial_rng(4, Stream::Covering, trial);
        let sub = sample::subfamily(&mut rng, &family);
        assert!(!sub.is_empty());
        assert!(sub.iter().all(|f| family.contains(f)));
    }
}
