//! Strategy agreement and event-completeness checks for the kinetic
//! covering module.

mod common;

use common::{random_lineset, rng};
use netopt::mobile::{
    cover_profile, earliest_cover_time, evaluation_times, min_intervals_at, ratio, CoverStrategy,
    LineSet, MovingPoint, Time,
};
use num_traits::Zero;
use rand::Rng;

#[test]
fn rescan_and_kinetic_agree_everywhere() {
    for seed in 0..220u64 {
        let mut r = rng(seed);
        let n = r.random_range(2..=40);
        let ls = random_lineset(&mut r, n);
        let a = cover_profile(&ls, CoverStrategy::Rescan);
        let b = cover_profile(&ls, CoverStrategy::Kinetic);
        assert_eq!(a.len(), b.len(), "seed {seed}");
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x, y, "seed {seed}");
        }
        assert_eq!(
            earliest_cover_time(&ls, CoverStrategy::Rescan),
            earliest_cover_time(&ls, CoverStrategy::Kinetic),
            "seed {seed}"
        );
    }
}

#[test]
fn coincident_groups_are_handled() {
    // Deliberately degenerate: many points sharing positions and concurrent
    // crossings.
    for seed in 500..560u64 {
        let mut r = rng(seed);
        let n = r.random_range(3..=16);
        let points = (0..n)
            .map(|_| MovingPoint {
                start: ratio(r.random_range(-3..=3), 1),
                velocity: ratio(r.random_range(-2..=2), 1),
            })
            .collect();
        let ls = LineSet::new(
            points,
            ratio(r.random_range(1..=4), 1),
            r.random_range(1..=3),
        )
        .unwrap();
        let a = cover_profile(&ls, CoverStrategy::Rescan);
        let b = cover_profile(&ls, CoverStrategy::Kinetic);
        assert_eq!(a, b, "seed {seed}");
    }
}

#[test]
fn count_is_constant_strictly_between_events() {
    for seed in 0..80u64 {
        let mut r = rng(1_000 + seed);
        let n = r.random_range(2..=12);
        let ls = random_lineset(&mut r, n);
        let times = evaluation_times(&ls);
        for w in times.windows(2) {
            let (a, b) = (w[0].clone(), w[1].clone());
            // Sample several rationals strictly inside the gap.
            let samples: Vec<Time> = (1..=5)
                .map(|k| a.clone() + (b.clone() - a.clone()) * ratio(k, 6))
                .collect();
            let counts: Vec<usize> = samples
                .iter()
                .map(|t| min_intervals_at(&ls, t.clone(), 0, n - 1).unwrap().m[0])
                .collect();
            assert!(
                counts.windows(2).all(|c| c[0] == c[1]),
                "seed {seed}: m changes inside gap ({a}, {b}): {counts:?}"
            );
        }
        // Beyond the last event the count is constant forever; spot check.
        let last = times.last().unwrap().clone();
        let c1 = min_intervals_at(&ls, last.clone() + ratio(1, 3), 0, n - 1)
            .unwrap()
            .m[0];
        let c2 = min_intervals_at(&ls, last + ratio(50, 1), 0, n - 1)
            .unwrap()
            .m[0];
        assert_eq!(c1, c2, "seed {seed}");
    }
}

#[test]
fn earliest_time_is_genuinely_earliest() {
    // The reported time must satisfy the budget and no earlier evaluation
    // time may.
    for seed in 0..60u64 {
        let mut r = rng(2_000 + seed);
        let n = r.random_range(2..=10);
        let ls = random_lineset(&mut r, n);
        let te = earliest_cover_time(&ls, CoverStrategy::Rescan);
        let profile = cover_profile(&ls, CoverStrategy::Rescan);
        match te {
            Some(t) => {
                for (time, m) in &profile {
                    if *time < t {
                        assert!(*m > ls.budget, "seed {seed}");
                    }
                    if *time == t {
                        assert!(*m <= ls.budget, "seed {seed}");
                    }
                }
            }
            None => {
                assert!(profile.iter().all(|(_, m)| *m > ls.budget), "seed {seed}");
            }
        }
    }
}

#[test]
fn zero_time_is_always_evaluated() {
    let ls = LineSet::new(
        vec![
            MovingPoint {
                start: ratio(0, 1),
                velocity: ratio(3, 1),
            },
            MovingPoint {
                start: ratio(2, 1),
                velocity: ratio(3, 1),
            },
        ],
        ratio(2, 1),
        1,
    )
    .unwrap();
    let profile = cover_profile(&ls, CoverStrategy::Kinetic);
    assert_eq!(profile, vec![(Time::zero(), 1)]);
}

#[test]
fn exact_tangency_at_zero_counts_as_covered() {
    // Two points starting exactly L apart and separating: covered at t = 0
    // only.
    let ls = LineSet::new(
        vec![
            MovingPoint {
                start: ratio(0, 1),
                velocity: ratio(-1, 1),
            },
            MovingPoint {
                start: ratio(2, 1),
                velocity: ratio(1, 1),
            },
        ],
        ratio(2, 1),
        1,
    )
    .unwrap();
    for s in [CoverStrategy::Rescan, CoverStrategy::Kinetic] {
        assert_eq!(
            earliest_cover_time(&ls, s),
            Some(Time::zero()),
            "{}",
            s.name()
        );
    }
}
