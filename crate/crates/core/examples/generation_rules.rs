//! Expands generator rows under both rules and classifies the results.

use bimusquash::gauss::rotational_symmetry;
use bimusquash::tables::{classify, serialize_tsv};
use bimusquash::{expand_bimusquash, expand_musquash, GeneratorPair};

fn main() {
    // Every row of a musquash is row 1 shifted.
    let heptagram = expand_musquash(&[5, 3, 6, 4], 7).unwrap();
    print!("{}", serialize_tsv(&heptagram));
    println!("{:?}\n", classify(&heptagram));

    // Alternating rule: odd rows follow row 1, even rows follow row 2.
    let pair = GeneratorPair::new(6, vec![4, 3, 5], Some(vec![5, 4, 6])).unwrap();
    let doubled_triangle = expand_bimusquash(&pair).unwrap();
    print!("{}", serialize_tsv(&doubled_triangle));
    let class = classify(&doubled_triangle);
    println!(
        "musquash: {}, bi-musquash: {}, rotational symmetry: {}",
        class.is_musquash,
        class.is_bimusquash,
        rotational_symmetry(&doubled_triangle)
    );

    match expand_musquash(&[3, 3], 5) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("rejected: {e}"),
    }
}
