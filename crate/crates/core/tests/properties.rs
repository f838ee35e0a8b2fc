use bacfi::algebra::{classify_roots, numeric_roots, IntPolynomial};
use bacfi::antitwist::{horizontal_antitwist, monodromy, vertical_antitwist};
use bacfi::builtin::random_surface;
use bacfi::divide::{divide_to_surface, Divide, VertexDocument};
use bacfi::homology::h1_matrix;
use bacfi::surface::BacfiSurface;
use bacfi::traintrack::{build_train_track, cone_certificate_with, LOWER_BOUND_TYPE_MATRIX, TYPES};
use num_bigint::BigInt;
use num_rational::Rational64;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MAX_SQUARES: usize = 10;

fn surface(seed: u64) -> (BacfiSurface, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = random_surface(&mut rng, MAX_SQUARES);
    (s, rng)
}

/// det(xI - M) by the Faddeev-LeVerrier recursion.
fn faddeev_leverrier(rows: &[Vec<i64>]) -> IntPolynomial {
    let k = rows.len();
    let m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut coeffs = vec![BigInt::from(0); k + 1];
    coeffs[k] = BigInt::from(1);
    let mut acc = vec![vec![BigInt::from(0); k]; k];
    for i in 1..=k {
        // acc = M * acc + c_{k-i+1} I
        let mut next = vec![vec![BigInt::from(0); k]; k];
        for r in 0..k {
            for c in 0..k {
                let mut sum = BigInt::from(0);
                for t in 0..k {
                    sum += &m[r][t] * &acc[t][c];
                }
                next[r][c] = sum;
            }
            next[r][r] += &coeffs[k - i + 1];
        }
        acc = next;
        let mut trace = BigInt::from(0);
        for r in 0..k {
            for t in 0..k {
                trace += &m[r][t] * &acc[t][r];
            }
        }
        coeffs[k - i] = -trace / BigInt::from(i);
    }
    IntPolynomial::new(coeffs)
}

fn numeric_counts(p: &IntPolynomial) -> (usize, usize, usize) {
    let roots = numeric_roots(p, 1e-13).unwrap();
    let (mut real, mut unit, mut other) = (0, 0, 0);
    for z in roots {
        if z.im.abs() < 1e-7 {
            real += 1;
        } else if (z.norm() - 1.0).abs() < 1e-7 {
            unit += 1;
        } else {
            other += 1;
        }
    }
    (real, unit, other)
}

fn shuffled_document(dv: &Divide, rng: &mut ChaCha8Rng) -> bacfi::divide::DivideDocument {
    let mut doc = dv.to_document();
    doc.vertices.shuffle(rng);
    for v in &mut doc.vertices {
        if let VertexDocument::Cyclic(ends) = v {
            let k = rng.gen_range(0..ends.len());
            ends.rotate_left(k);
        }
    }
    doc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn chain_maps_commute_with_boundary(seed in any::<u64>()) {
        let (s, _) = surface(seed);
        prop_assert!(horizontal_antitwist(&s).verify().is_ok());
        prop_assert!(vertical_antitwist(&s).verify().is_ok());
        prop_assert!(monodromy(&s).verify().is_ok());
    }

    #[test]
    fn monodromy_action_is_unimodular_and_reciprocal(seed in any::<u64>()) {
        let (s, _) = surface(seed);
        let h = h1_matrix(&s, &monodromy(&s)).unwrap();
        prop_assert_eq!(h.dimension(), 2 * s.genus_from_euler());
        if h.dimension() > 0 {
            prop_assert_eq!(h.matrix.determinant().unwrap(), 1);
        }
        let p = h.char_poly();
        prop_assert!(p.is_reciprocal());
        prop_assert_eq!(p, faddeev_leverrier(&h.matrix.to_rows()));
    }

    #[test]
    fn char_poly_ignores_labels(seed in any::<u64>()) {
        let (s, mut rng) = surface(seed);
        let mut perm: Vec<usize> = (0..s.len()).collect();
        perm.shuffle(&mut rng);
        let t = s.relabel(&perm).unwrap();
        let p = h1_matrix(&s, &monodromy(&s)).unwrap().char_poly();
        let q = h1_matrix(&t, &monodromy(&t)).unwrap().char_poly();
        prop_assert_eq!(p, q);
    }

    #[test]
    fn genus_two_ways(seed in any::<u64>()) {
        let (s, _) = surface(seed);
        let stats = Divide::from_surface(&s).stats();
        prop_assert_eq!(s.genus_from_euler(), stats.genus_formula);
        prop_assert_eq!(stats.boundary_count, 2 * stats.c + stats.d);
    }

    #[test]
    fn divide_round_trip(seed in any::<u64>()) {
        let (s, mut rng) = surface(seed);
        let dv = Divide::from_surface(&s);
        prop_assert_eq!(&divide_to_surface(&dv.to_document()).unwrap(), &s);
        let back = divide_to_surface(&shuffled_document(&dv, &mut rng)).unwrap();
        prop_assert!(back.is_isomorphic(&s));

        let mut perm: Vec<usize> = (0..s.len()).collect();
        perm.shuffle(&mut rng);
        let t = s.relabel(&perm).unwrap();
        let json = Divide::from_surface(&t).to_json();
        let back = Divide::from_json(&json).unwrap().to_surface().unwrap();
        prop_assert!(back.is_isomorphic(&s));
    }

    #[test]
    fn sturm_agrees_with_numeric_roots(seed in any::<u64>()) {
        let (s, _) = surface(seed);
        let p = h1_matrix(&s, &monodromy(&s)).unwrap().char_poly().square_free_part();
        prop_assume!(p.degree().unwrap_or(0) > 0);
        let c = classify_roots(&p).unwrap();
        let (real, unit, other) = numeric_counts(&p);
        prop_assert_eq!((c.real_count, c.unit_circle_count, c.other_count), (real, unit, other));
        if let Some(iv) = &c.largest_real_root {
            let top = numeric_roots(&p, 1e-13).unwrap()
                .into_iter()
                .filter(|z| z.im.abs() < 1e-7)
                .map(|z| z.re)
                .fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(iv.lo_approx() - 1e-9 <= top && top <= iv.hi_approx() + 1e-9);
        }
    }

    #[test]
    fn train_track_counts(seed in any::<u64>()) {
        let (s, _) = surface(seed);
        let dv = Divide::from_surface(&s);
        match build_train_track(&dv) {
            Ok(t) => {
                prop_assert!(s.ne_fixed_points().is_empty());
                prop_assert_eq!(t.vertex_count, 2 * s.len());
                for c in TYPES {
                    prop_assert_eq!(t.count(c), s.len());
                }
                prop_assert!(t.degrees().iter().all(|&d| d == 3));
            }
            Err(_) => prop_assert!(!s.ne_fixed_points().is_empty()),
        }
    }

    #[test]
    fn dominating_tables_keep_the_bound(extra in proptest::array::uniform9(0i64..4)) {
        let mut a = LOWER_BOUND_TYPE_MATRIX;
        for (i, x) in extra.iter().enumerate() {
            a[i / 3][i % 3] += x;
        }
        let s = bacfi::builtin::two_row(5, 1).unwrap();
        let c = cone_certificate_with(&s, &a).unwrap();
        for r in c.ratios {
            prop_assert!(r >= Rational64::new(5, 2));
        }
        prop_assert!(c.verdict.is_some());
    }
}

#[test]
fn generator_covers_u_turns_and_higher_genus() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let surfaces: Vec<BacfiSurface> = (0..300)
        .map(|_| random_surface(&mut rng, MAX_SQUARES))
        .collect();
    assert!(surfaces.iter().any(|s| !s.ne_fixed_points().is_empty()));
    assert!(surfaces.iter().any(|s| s.ne_fixed_points().is_empty()));
    assert!(surfaces.iter().any(|s| s.genus_from_euler() >= 3));
    assert!(surfaces.iter().all(|s| s.len() <= MAX_SQUARES));
}
