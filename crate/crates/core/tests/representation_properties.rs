mod common;

use nsf_core::representations::{CountingTable, RepresentationWitness, DEFICIT_TOLERANCE};

fn brute_witness(n: u64, primes: &[bool], sqfree: &[bool]) -> Option<(u64, u64)> {
    (4..n.saturating_sub(1))
        .find(|&s| !sqfree[s as usize] && primes[(n - s) as usize])
        .map(|s| (n - s, s))
}

#[test]
fn deficit_sign_matches_witness_existence() {
    let table = CountingTable::new(10_000).unwrap();
    let primes = common::byte_prime_table(10_000);
    let sqfree = common::byte_squarefree_table(10_000);
    let mut closest_nonzero = f64::INFINITY;
    for n in 2..=10_000u64 {
        let d = table.deficit(n).unwrap();
        let has = brute_witness(n, &primes, &sqfree).is_some();
        assert_eq!(d < -DEFICIT_TOLERANCE, has, "n={n} deficit={d}");
        if d.abs() > 1e-9 {
            closest_nonzero = closest_nonzero.min(d.abs());
        }
    }
    // no value sits near the decision threshold except exact zeros
    assert!(closest_nonzero > 1e-4, "{closest_nonzero}");
}

#[test]
fn weighted_count_decomposes_over_progressions() {
    let table = CountingTable::new(5_000).unwrap();
    let primes = common::byte_prime_table(5_000);
    let sqfree = common::byte_squarefree_table(5_000);
    for n in 2..=5_000u64 {
        let by_definition: f64 = (2..n)
            .filter(|&p| primes[p as usize] && sqfree[(n - p) as usize])
            .map(|p| (p as f64).ln())
            .sum();
        let lib = table.weighted_count(n).unwrap().value;
        let expanded = table.weighted_count_by_progressions(n).unwrap();
        assert!((lib - by_definition).abs() < 1e-9, "n={n}");
        assert!((expanded - by_definition).abs() < 1e-6, "n={n}");
    }
}

#[test]
fn residue_classes_partition_theta() {
    let table = CountingTable::new(10_000).unwrap();
    for x in [1u64, 2, 17, 100, 999, 10_000] {
        let total = table.theta(x).unwrap();
        for m in 1..=25u64 {
            let s: f64 = (0..m as i64)
                .map(|r| table.theta_ap(x, m, r).unwrap().value)
                .sum();
            let c: u64 = (0..m as i64)
                .map(|r| table.theta_ap(x, m, r).unwrap().term_count)
                .sum();
            assert!((s - total.value).abs() < 1e-9, "x={x} m={m}");
            assert_eq!(c, total.term_count);
        }
    }
}

#[test]
fn theta_100_against_oracle() {
    let table = CountingTable::new(100).unwrap();
    let exact: f64 = (2..=100u64)
        .filter(|&p| common::trial_is_prime(p))
        .map(|p| (p as f64).ln())
        .sum();
    assert!((table.theta(100).unwrap().value - exact).abs() < 1e-9);
    assert_eq!(table.theta(100).unwrap().term_count, 25);
}

#[test]
fn witnesses_are_valid_and_minimal() {
    let table = CountingTable::new(20_000).unwrap();
    let primes = common::byte_prime_table(20_000);
    let sqfree = common::byte_squarefree_table(20_000);
    for n in 2..=20_000u64 {
        let w = table.find_witness(n).unwrap();
        let expect = brute_witness(n, &primes, &sqfree);
        assert_eq!(w.map(|w| (w.p, w.s)), expect, "n={n}");
        if let Some(w) = w {
            assert!(w.is_valid());
            assert!(common::trial_is_prime(w.p) && common::trial_mobius(w.s) == 0);
        }
    }
    assert!(RepresentationWitness { n: 10, p: 2, s: 8 }.is_valid());
    assert!(!RepresentationWitness { n: 10, p: 4, s: 6 }.is_valid());
}

#[test]
fn exceptions_match_brute_force() {
    let table = CountingTable::new(30_000).unwrap();
    assert_eq!(
        table.exceptions(1, 25).unwrap(),
        common::brute_exceptions(1, 25)
    );
    assert_eq!(
        table.exceptions(1, 30_000).unwrap(),
        common::brute_exceptions(1, 30_000)
    );
}

#[test]
fn small_counts_by_enumeration() {
    let table = CountingTable::new(2_000).unwrap();
    for n in 2..=2_000u64 {
        let t = (2..n)
            .filter(|&p| common::trial_is_prime(p) && common::trial_mobius(n - p) != 0)
            .count() as u64;
        let g = (2..=n / 2)
            .filter(|&q| common::trial_is_prime(q) && common::trial_is_prime(n - q))
            .count() as u64;
        assert_eq!(table.count_t(n).unwrap(), t, "T({n})");
        assert_eq!(table.count_g(n).unwrap(), g, "g({n})");
    }
}
