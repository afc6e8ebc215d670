//! Builds the 14-gon bi-musquash table from its two generator rows and
//! compares it with the stored fixture.

use bimusquash::tables::{canonical_form, mirror, parse_tsv, serialize_tsv};
use bimusquash::{expand_bimusquash, set_generators, GeneratorSet};

fn main() {
    let gen = set_generators(GeneratorSet::Set1, 7).unwrap();
    println!("row 1: {:?}", gen.row1);
    println!("row 2: {:?}", gen.row2.as_ref().unwrap());

    let table = expand_bimusquash(&gen).unwrap();
    print!("{}", serialize_tsv(&table));

    let fixture = parse_tsv(include_str!("../fixtures/bimusquash14.tsv")).unwrap();
    println!("matches fixture: {}", table == fixture);

    let other = expand_bimusquash(&set_generators(GeneratorSet::Set2, 7).unwrap()).unwrap();
    println!(
        "second set is the mirror image: {}",
        canonical_form(&mirror(&table)) == canonical_form(&other)
    );
}
