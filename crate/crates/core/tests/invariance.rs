//! Quantities that must not change along an orbit of `G_n`.

use boolbell::bell::max_violation;
use boolbell::boolfn::{degree, table_from_index};
use boolbell::equivalence::{apply, classify, group_elements, orbit};
use boolbell::spectral::{nonlinearity, uncertainty_parts, wht_fast};
use boolbell::viz::{render, CellValue, Metric};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sorted_abs_spectrum(n: usize, b: u64) -> Vec<i64> {
    let mut w: Vec<i64> = wht_fast(&table_from_index(n, b).unwrap())
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .collect();
    w.sort_unstable();
    w
}

#[test]
fn spectral_data_is_constant_on_classes_n3() {
    let p = classify(3).unwrap();
    for c in 0..p.num_classes() {
        let members = p.members(c);
        let rep = table_from_index(3, members[0]).unwrap();
        let (nl, unc, spectrum) = (
            nonlinearity(&rep),
            uncertainty_parts(&rep),
            sorted_abs_spectrum(3, members[0]),
        );
        for &b in &members[1..] {
            let t = table_from_index(3, b).unwrap();
            assert_eq!(nonlinearity(&t), nl);
            assert_eq!(uncertainty_parts(&t), unc);
            assert_eq!(sorted_abs_spectrum(3, b), spectrum);
        }
    }
}

#[test]
fn degree_above_one_is_preserved_n3() {
    let elements = group_elements(3).unwrap();
    for b in 0..256 {
        let f = table_from_index(3, b).unwrap();
        let d = degree(&f);
        for g in elements.iter().step_by(7) {
            let d2 = degree(&apply(g, &f).unwrap());
            assert!(if d >= 2 { d2 == d } else { d2 <= 1 });
        }
    }
}

#[test]
fn violation_is_constant_on_sampled_orbits_n4() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for _ in 0..6 {
        let b = rng.gen_range(0..1u64 << 16);
        let members = orbit(&table_from_index(4, b).unwrap()).unwrap();
        let v0 = max_violation(&table_from_index(4, b).unwrap())
            .unwrap()
            .value;
        for _ in 0..5 {
            let m = members[rng.gen_range(0..members.len())];
            let v = max_violation(&table_from_index(4, m).unwrap())
                .unwrap()
                .value;
            assert!((v - v0).abs() < 1e-6, "B = {b}, member {m}: {v} vs {v0}");
        }
    }
}

#[test]
fn class_grid_agrees_with_partition_n4() {
    let p = classify(4).unwrap();
    let g = render(4, Metric::Class).unwrap();
    for b in (0..1u64 << 16).step_by(97) {
        assert_eq!(g.value_of(b), CellValue::Int(p.class_of(b) as i64));
    }
    let sizes: Vec<usize> = g.histogram().into_iter().map(|e| e.1).collect();
    assert_eq!(
        sizes.iter().map(|&s| s as u64).collect::<Vec<_>>(),
        p.sizes()
    );
}
