//! Acceptance suite: one test per criterion, each printing a pass line
//! with the measured figures. Criteria over random instances use fixed
//! seeds so runs are reproducible.

mod common;

use common::*;
use confband::*;
use rand::Rng;
use std::time::Instant;

/// Criterion 1: the cut solver matches the brute-force regularized
/// optimum in objective (1e-9) and member set (inclusion-maximal
/// tie-break) on 500 random instances, in under 60 seconds.
#[test]
fn criterion_01_min_cut_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = rng(0xC1);
    for case in 0..500 {
        let matrix = random_small_instance(&mut rng);
        let alpha = random_alpha(&mut rng);
        let subsets = enumerate_subsets(&matrix);
        let (expected_members, expected_q) = brute_regband(&subsets, alpha);
        let sol = solve_regband(&matrix, alpha).unwrap();
        assert!(
            (sol.objective - expected_q).abs() <= 1e-9,
            "case {}: objective {} vs {}",
            case,
            sol.objective,
            expected_q
        );
        assert_eq!(
            sol.band.members, expected_members,
            "case {} (alpha {}): member sets differ",
            case, alpha
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {:?}", elapsed);
    println!(
        "criterion 1: PASS (500 instances, objective and members match, {:?})",
        elapsed
    );
}

/// Criterion 2: unscaled cut value equals nm + (m/alpha) * q(U; alpha)
/// within 1e-7 relative on every instance of criterion 1's family.
#[test]
fn criterion_02_cut_value_identity() {
    let mut rng = rng(0xC1);
    for case in 0..500 {
        let matrix = random_small_instance(&mut rng);
        let alpha = random_alpha(&mut rng);
        let n = matrix.series_count() as f64;
        let m = matrix.position_count() as f64;
        let sol = solve_regband(&matrix, alpha).unwrap();
        let expected = n * m + (m / alpha) * sol.objective;
        let tol = 1e-7 * expected.abs().max(1.0);
        assert!(
            (sol.cut_value - expected).abs() <= tol,
            "case {}: cut {} vs {}",
            case,
            sol.cut_value,
            expected
        );
    }
    println!("criterion 2: PASS (cut identity holds on 500 instances at 1e-7 relative)");
}

/// Criterion 3: for alpha1 < alpha2 the solution at alpha1 is contained
/// in the solution at alpha2; 200 random pairs, zero violations.
#[test]
fn criterion_03_chain_property() {
    let mut rng = rng(0xC3);
    for case in 0..200 {
        let matrix = random_small_instance(&mut rng);
        let mut a1 = random_alpha(&mut rng);
        let mut a2 = random_alpha(&mut rng);
        if a1 == a2 {
            a2 += 0.05;
        }
        if a1 > a2 {
            std::mem::swap(&mut a1, &mut a2);
        }
        let small = solve_regband(&matrix, a1).unwrap().band.members;
        let big = solve_regband(&matrix, a2).unwrap().band.members;
        assert!(
            small.iter().all(|l| big.contains(l)),
            "case {}: {:?} not within {:?} (alphas {} < {})",
            case,
            small,
            big,
            a1,
            a2
        );
    }
    println!("criterion 3: PASS (200 nested pairs, zero violations)");
}

/// Criterion 4: the enumerated chain equals the deduplicated dense
/// alpha-sweep of the brute-force solver; chain length <= n + 1; solver
/// calls <= 2 * chain length + 2.
#[test]
fn criterion_04_enumeration_completeness() {
    let mut rng = rng(0xC4);
    for case in 0..100 {
        let matrix = random_small_instance(&mut rng);
        let n = matrix.series_count();
        let chain = enumerate_chain(&matrix).unwrap();
        assert!(chain.len() <= n + 1, "case {}: chain too long", case);
        assert!(
            chain.regband_calls <= 2 * chain.len() + 2,
            "case {}: {} calls for chain of {}",
            case,
            chain.regband_calls,
            chain.len()
        );

        let subsets = enumerate_subsets(&matrix);
        // Independent minimal gap over same-position value pairs.
        let mut delta = f64::INFINITY;
        for i in 0..matrix.position_count() {
            for a in 0..n {
                for b in 0..n {
                    let d = (matrix.value(a, i) - matrix.value(b, i)).abs();
                    if d > 0.0 {
                        delta = delta.min(d);
                    }
                }
            }
        }
        let chain_members: Vec<Vec<usize>> =
            chain.bands.iter().map(|b| b.members.clone()).collect();
        if !delta.is_finite() {
            assert_eq!(chain_members, vec![(0..n).collect::<Vec<_>>()]);
            continue;
        }

        let area_full = subsets.last().map(|_| {
            subsets
                .iter()
                .find(|(m, _, _)| m.len() == n)
                .unwrap()
                .1
        });
        let step = delta / ((n * n) as f64 + 1.0);
        let mut swept: Vec<Vec<usize>> = Vec::new();
        let mut alpha = step;
        let limit = area_full.unwrap() + 1.0;
        while alpha <= limit {
            let (members, _) = brute_regband(&subsets, alpha);
            if swept.last() != Some(&members) {
                swept.push(members);
            }
            alpha += step;
        }
        assert_eq!(
            chain_members, swept,
            "case {}: chain differs from dense sweep",
            case
        );
    }
    println!("criterion 4: PASS (100 chains match the dense alpha sweep)");
}

/// Criterion 5: each consecutive chain pair realizes the sparsest strict
/// extension: B_{i+1} minimizes (s1(X) - s1(B_i)) / (|X| - |B_i|) over
/// all strict supersets X of B_i.
#[test]
fn criterion_05_sparsest_extension() {
    let mut rng = rng(0xC5);
    for case in 0..100 {
        let matrix = random_small_instance(&mut rng);
        let chain = enumerate_chain(&matrix).unwrap();
        let subsets = enumerate_subsets(&matrix);
        for pair in chain.bands.windows(2) {
            let base = &pair[0];
            let next = &pair[1];
            let g = |area: f64, len: usize| {
                (area - base.area) / (len - base.members.len()) as f64
            };
            let best = subsets
                .iter()
                .filter(|(members, _, _)| {
                    members.len() > base.members.len()
                        && base.members.iter().all(|l| members.contains(l))
                })
                .map(|(members, area, _)| g(*area, members.len()))
                .fold(f64::INFINITY, f64::min);
            let achieved = g(next.area, next.members.len());
            assert!(
                (achieved - best).abs() <= 1e-9,
                "case {}: ratio {} vs brute {}",
                case,
                achieved,
                best
            );
        }
    }
    println!("criterion 5: PASS (100 chains realize the sparsest extension)");
}

/// Criterion 6: find_sum stays within (sqrt(n) + 1) of the optimal area
/// on 300 random instances; the empirical ratio distribution is printed.
#[test]
fn criterion_06_find_sum_guarantee() {
    let mut rng = rng(0xC6);
    let mut ratios: Vec<f64> = Vec::new();
    let mut cases = 0;
    while cases < 300 {
        let matrix = random_small_instance(&mut rng);
        let n = matrix.series_count();
        let chain = enumerate_chain(&matrix).unwrap();
        let k_min = chain.bands[0].members.len();
        if k_min > n {
            continue;
        }
        let k = rng.gen_range(k_min..=n);
        let approx = find_sum(&matrix, k, &chain).unwrap();
        let opt = exact_sumband(&matrix, k).unwrap();
        let bound = ((n as f64).sqrt() + 1.0) * opt.area;
        assert!(
            approx.band.area <= bound + 1e-9,
            "case {}: area {} exceeds bound {} (opt {})",
            cases,
            approx.band.area,
            bound,
            opt.area
        );
        if opt.area > 0.0 {
            ratios.push(approx.band.area / opt.area);
        }
        cases += 1;
    }
    ratios.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let p90 = ratios[(ratios.len() * 9) / 10];
    let max = *ratios.last().unwrap();
    println!(
        "criterion 6: PASS (300 instances within sqrt(n)+1; ratio mean {:.4}, p90 {:.4}, max {:.4})",
        mean, p90, max
    );
}

/// Criterion 7: find_inf stays within 2x of the optimal width, and its
/// maximum selected distance never exceeds the optimum.
#[test]
fn criterion_07_find_inf_guarantee() {
    let mut rng = rng(0xC7);
    for case in 0..300 {
        let matrix = random_small_instance(&mut rng);
        let n = matrix.series_count();
        let k = rng.gen_range(1..=n);
        let approx = find_inf(&matrix, k).unwrap();
        let opt = exact_infband(&matrix, k).unwrap();
        assert!(
            approx.band.width <= 2.0 * opt.width + 1e-9,
            "case {}: width {} vs 2x opt {}",
            case,
            approx.band.width,
            opt.width
        );
        let c = approx.max_selected_distance.unwrap();
        assert!(approx.band.width <= 2.0 * c + 1e-9);
        assert!(
            c <= opt.width + 1e-9,
            "case {}: selected distance {} exceeds optimum {}",
            case,
            c,
            opt.width
        );
    }
    println!("criterion 7: PASS (300 instances within 2x width, c <= optimum)");
}

/// Criterion 8: the four-constant-series example end to end.
#[test]
fn criterion_08_example_end_to_end() {
    let matrix =
        SeriesMatrix::new(vec![vec![0.0], vec![-1.0], vec![2.0], vec![2.0]], 0).unwrap();
    let b2 = exact_sumband(&matrix, 2).unwrap();
    assert_eq!(b2.members, vec![0, 1]);
    let b3 = exact_sumband(&matrix, 3).unwrap();
    assert_eq!(b3.members, vec![0, 2, 3]);

    let chain = enumerate_chain(&matrix).unwrap();
    let fs = find_sum(&matrix, 3, &chain).unwrap();
    assert_eq!(fs.band.members, vec![0, 1, 2]);
    assert_eq!(fs.band.area, 3.0);

    let p3 = peel(&matrix, 3).unwrap();
    assert_eq!(p3.band.members, vec![0, 2, 3]);
    assert_eq!(p3.band.area, 2.0);
    let p2 = peel(&matrix, 2).unwrap();
    assert_eq!(p2.band.members, vec![0, 3]);

    println!("criterion 8: PASS (example solutions and algorithm traces match)");
}

/// Criterion 9: the marginal-area inequality holds exactly on 1000
/// random nested triples.
#[test]
fn criterion_09_submodularity() {
    let mut rng = rng(0xC9);
    for case in 0..1000 {
        let matrix = random_small_instance(&mut rng);
        let n = matrix.series_count();
        let seed = matrix.seed_index();
        let mut small = vec![seed];
        let mut large = vec![seed];
        for l in 0..n {
            match rng.gen_range(0u8..3) {
                1 => {
                    small.push(l);
                    large.push(l);
                }
                2 => large.push(l),
                _ => {}
            }
        }
        let t = rng.gen_range(0..n);
        let s = |set: &[usize]| area_score(&matrix, set).unwrap();
        let mut large_t = large.clone();
        large_t.push(t);
        let mut small_t = small.clone();
        small_t.push(t);
        assert!(
            s(&large_t) - s(&large) <= s(&small_t) - s(&small) + 1e-12,
            "case {}: marginal inequality violated",
            case
        );
    }
    println!("criterion 9: PASS (1000 nested triples satisfy the marginal inequality)");
}

/// Criterion 10: chain enumeration on a synthetic n=1000, m=250 instance
/// finishes in under 60 seconds with at most n + 1 bands.
#[test]
fn criterion_10_scale_smoke() {
    let spec = InstanceSpec {
        n: 1000,
        m: 250,
        resolution: 0.01,
        seed: 10,
        flavor: Flavor::Clustered { outliers: 50 },
    };
    let matrix = generate(&spec).unwrap();
    let start = Instant::now();
    let chain = enumerate_chain(&matrix).unwrap();
    let elapsed = start.elapsed();
    assert!(chain.len() <= 1001, "chain length {}", chain.len());
    assert!(elapsed.as_secs() < 60, "took {:?}", elapsed);
    println!(
        "criterion 10: PASS (n=1000, m=250 chain of {} bands in {:?})",
        chain.len(),
        elapsed
    );
}
