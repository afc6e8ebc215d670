//! Gauss word, interlacement graph and parity test of the pentagram.

use bimusquash::gauss::{chord_diagram, gauss_word, interlacement, parity_check, DoubleOccurrenceWord};
use bimusquash::expand_musquash;

fn main() {
    let table = expand_musquash(&[3, 4], 5).unwrap();
    let word = gauss_word(&table);
    println!("gauss word: {}", word.to_text());

    let letters = word.to_double_occurrence();
    println!("as letters: {letters}");
    let graph = interlacement(&letters);
    println!("interlacement: {} vertices, {} edges", graph.size(), graph.edge_count());
    for v in 0..graph.size() {
        print!("{} ", graph.degree(v));
    }
    println!("(degrees)");
    println!("parity condition holds: {}", parity_check(&letters));

    let bad: DoubleOccurrenceWord = "1 2 1 2".parse().unwrap();
    println!("{bad}: parity {}", parity_check(&bad));
    println!("chords of {bad} cross: {}", chord_diagram(&bad).chords_cross(0, 1));
}
