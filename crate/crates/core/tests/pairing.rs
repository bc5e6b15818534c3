use std::collections::HashMap;

use twogreedy::pairing::{all_pairings, PairingSource};
use twogreedy::{Error, LazyPairing, PointId, Simplicity};

/// Canonical form of a full pairing: sorted list of point pairs.
fn canonical(pairs: &[(PointId, PointId)]) -> Vec<(u32, u32)> {
    let mut v: Vec<(u32, u32)> = pairs.iter().map(|&(p, q)| (p.0.min(q.0), p.0.max(q.0))).collect();
    v.sort_unstable();
    v
}

#[test]
fn two_vertex_pairings_are_uniform() {
    let trials = 150_000u64;
    let mut counts: HashMap<Vec<(u32, u32)>, u64> = HashMap::new();
    for seed in 0..trials {
        let mut p = LazyPairing::new(2, seed).unwrap();
        *counts.entry(canonical(&p.reveal_all())).or_default() += 1;
    }
    assert_eq!(counts.len(), 15);
    let expected = trials as f64 / 15.0;
    let chi2: f64 = counts.values().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    // chi-square with 14 degrees of freedom, upper 10^-3 point
    assert!(chi2 < 36.123, "chi2 = {chi2}");
}

#[test]
fn structural_law_at_two_vertices() {
    // exhaustive oracle: among the 15 pairings of 6 points, 6 are triple
    // edges and 9 are two loops joined by an edge
    let exact = all_pairings(6);
    let loops = |partner: &[u32]| partner.iter().enumerate().filter(|&(p, &q)| p < q as usize && p / 3 == q as usize / 3).count();
    assert_eq!(exact.iter().filter(|p| loops(p) == 0).count(), 6);
    assert_eq!(exact.iter().filter(|p| loops(p) == 2).count(), 9);

    let trials = 100_000u64;
    let mut triple = 0u64;
    for seed in 0..trials {
        let mut p = LazyPairing::new(2, seed).unwrap();
        p.reveal_all();
        match p.loop_count() {
            0 => triple += 1,
            2 => {}
            k => panic!("{k} loops on two vertices"),
        }
    }
    let f = triple as f64 / trials as f64;
    assert!((f - 0.4).abs() < 0.006, "triple edge frequency {f}");
}

#[test]
fn first_reveal_hits_own_vertex_with_probability_two_fifths() {
    let trials = 1_000_000u64;
    let hits = (0..trials)
        .filter(|&seed| {
            let mut p = LazyPairing::new(2, seed).unwrap();
            p.reveal_partner(PointId(0)).vertex().0 == 0
        })
        .count();
    let f = hits as f64 / trials as f64;
    assert!((f - 0.4).abs() < 0.002, "loop frequency {f}");
}

#[test]
fn partner_uniform_over_six_unpaired_points() {
    // a fresh n = 2 pairing has six unpaired points; the partner of point 5
    // must be uniform over the other five
    let trials = 1_000_000u64;
    let mut counts: HashMap<u32, u64> = HashMap::new();
    for seed in 0..trials {
        let mut p = LazyPairing::new(2, seed).unwrap();
        *counts.entry(p.reveal_partner(PointId(5)).0).or_default() += 1;
    }
    assert_eq!(counts.len(), 5);
    let expected = trials as f64 / 5.0;
    let chi2: f64 = counts.values().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    // 4 degrees of freedom, upper 10^-3 point
    assert!(chi2 < 18.467, "chi2 = {chi2}");
}

#[test]
fn unpaired_count_drops_by_two_per_reveal() {
    let mut p = LazyPairing::new(100, 3).unwrap();
    let mut left = 300;
    for u in 0..300u32 {
        if p.is_unpaired(PointId(u)) {
            p.reveal_partner(PointId(u));
            left -= 2;
            assert_eq!(p.unpaired_len(), left);
        }
    }
    assert_eq!(left, 0);
    assert_eq!(p.exposures(), 150);
}

#[test]
fn identical_seeds_identical_sequences() {
    let mut a = LazyPairing::new(1_000_000, 1).unwrap();
    let mut b = LazyPairing::new(1_000_000, 1).unwrap();
    for u in (0..3_000_000u32).step_by(7919) {
        if a.is_unpaired(PointId(u)) {
            assert_eq!(a.reveal_partner(PointId(u)), b.reveal_partner(PointId(u)));
        }
    }
}

#[test]
fn odd_vertex_count_is_rejected() {
    assert!(matches!(LazyPairing::new(3, 0), Err(Error::OddVertexCount(3))));
}

#[test]
fn loops_are_reported() {
    let mut seed = 0;
    loop {
        let mut p = LazyPairing::new(2, seed).unwrap();
        assert_eq!(p.simplicity_status(), Simplicity::SimpleSoFar);
        if p.reveal_partner(PointId(0)).vertex().0 == 0 {
            assert_eq!(p.simplicity_status(), Simplicity::LoopSeen);
            break;
        }
        seed += 1;
    }
}

#[test]
fn mean_loop_count_matches_exact_expectation() {
    let n = 2_000usize;
    let trials = 4_000u64;
    let total: usize = (0..trials)
        .map(|seed| {
            let mut p = LazyPairing::new(n, seed).unwrap();
            p.reveal_all();
            p.loop_count()
        })
        .sum();
    let mean = total as f64 / trials as f64;
    let exact = 3.0 * n as f64 / (3.0 * n as f64 - 1.0);
    assert!((mean - exact).abs() < 0.06, "{mean} vs {exact}");
}
