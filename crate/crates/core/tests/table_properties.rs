use bimusquash::gauss::{gauss_word, rotational_symmetry};
use bimusquash::tables::{
    adjacent_or_equal, canonical_form, chiral_canonical_form, classify, expand_bimusquash,
    expand_musquash, mirror, parse_json, parse_tsv, reverse_traversal, rotate, serialize_json,
    serialize_tsv, GeneratorPair, IntersectionTable,
};
use proptest::prelude::*;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn non_neighbours(i: usize, n: usize) -> Vec<usize> {
    (1..=n).filter(|&j| !adjacent_or_equal(i, j, n)).collect()
}

fn musquash_table() -> impl Strategy<Value = IntersectionTable> {
    (5usize..=13).prop_flat_map(|n| {
        Just(non_neighbours(1, n))
            .prop_shuffle()
            .prop_map(move |row1| expand_musquash(&row1, n).unwrap())
    })
}

fn bimusquash_table() -> impl Strategy<Value = IntersectionTable> {
    (3usize..=7).prop_flat_map(|half| {
        let n = 2 * half;
        (
            Just(non_neighbours(1, n)).prop_shuffle(),
            Just(non_neighbours(2, n)).prop_shuffle(),
        )
            .prop_map(move |(r1, r2)| {
                expand_bimusquash(&GeneratorPair::new(n, r1, Some(r2)).unwrap()).unwrap()
            })
    })
}

fn any_table() -> impl Strategy<Value = IntersectionTable> {
    prop_oneof![musquash_table(), bimusquash_table()]
}

/// A random element of the symmetry group: rotation, optional reversal,
/// optional mirror.
fn transform(t: &IntersectionTable, k: i64, reverse: bool, flip: bool) -> IntersectionTable {
    let mut out = rotate(t, k);
    if reverse {
        out = reverse_traversal(&out);
    }
    if flip {
        out = mirror(&out);
    }
    out
}

proptest! {
    #[test]
    fn rows_permute_the_non_neighbours(t in any_table()) {
        let n = t.n();
        for i in 1..=n {
            let mut row = t.row(i).to_vec();
            row.sort_unstable();
            prop_assert_eq!(row, non_neighbours(i, n));
        }
        prop_assert_eq!(t.crossing_count(), n * (n - 3) / 2);
    }

    #[test]
    fn bimusquash_tables_are_invariant_under_rotation_by_two(t in bimusquash_table()) {
        prop_assert_eq!(rotate(&t, 2), t.clone());
        prop_assert!(rotational_symmetry(&t) >= t.n() / 2);
    }

    #[test]
    fn musquash_tables_have_full_rotational_symmetry(t in musquash_table()) {
        prop_assert_eq!(rotate(&t, 1), t.clone());
        prop_assert_eq!(rotational_symmetry(&t), t.n());
        let class = classify(&t);
        prop_assert!(class.is_musquash);
        prop_assert_eq!(class.is_bimusquash, t.n() % 2 == 0);
    }

    #[test]
    fn canonical_form_is_constant_on_orbits(
        t in any_table(), k in 0i64..20, reverse: bool, flip: bool,
    ) {
        let image = transform(&t, k, reverse, flip);
        prop_assert_eq!(canonical_form(&image), canonical_form(&t));
        if !flip {
            prop_assert_eq!(chiral_canonical_form(&image), chiral_canonical_form(&t));
        }
    }

    #[test]
    fn involutions_and_rotation_order(t in any_table(), k in 0i64..30, j in -15i64..15) {
        let n = t.n();
        prop_assert_eq!(mirror(&mirror(&t)), t.clone());
        prop_assert_eq!(reverse_traversal(&reverse_traversal(&t)), t.clone());
        let order = n / gcd(n, k.rem_euclid(n as i64) as usize);
        let mut r = t.clone();
        for _ in 0..order {
            r = rotate(&r, k);
        }
        prop_assert_eq!(r, t.clone());
        prop_assert_eq!(rotate(&rotate(&t, k), j), rotate(&t, k + j));
    }

    #[test]
    fn text_formats_round_trip(t in any_table()) {
        prop_assert_eq!(parse_tsv(&serialize_tsv(&t)).unwrap(), t.clone());
        prop_assert_eq!(parse_json(&serialize_json(&t)).unwrap(), t.clone());
    }

    #[test]
    fn gauss_word_is_rotation_equivariant(t in any_table(), k in -20i64..20) {
        prop_assert_eq!(gauss_word(&rotate(&t, k)), gauss_word(&t).shifted(k));
        let w = gauss_word(&t);
        prop_assert_eq!(w.len(), 2 * t.crossing_count());
        prop_assert_eq!(w.runs().len(), t.n());
    }
}

#[test]
fn rotation_order_for_a_table_without_symmetry() {
    // Not generated by any rule, so only the identity rotation fixes it.
    let rows = vec![
        vec![3, 4, 5],
        vec![5, 4, 6],
        vec![6, 1, 5],
        vec![1, 6, 2],
        vec![2, 1, 3],
        vec![3, 2, 4],
    ];
    let t = IntersectionTable::new(6, rows).unwrap();
    for k in 1..6 {
        assert_ne!(rotate(&t, k), t);
    }
    assert_eq!(rotational_symmetry(&t), 1);
}
