//! Realizability of Gauss words: the bi-musquash tables and their mirror
//! images, plus a few small words checked against exhaustive search.

use bimusquash::gauss::{
    brute_force_realizable, gadget_planar, gauss_word, interlacement_realizable, realizable,
    DoubleOccurrenceWord,
};
use bimusquash::tables::mirror;
use bimusquash::{expand_bimusquash, set_generators, GeneratorSet};

fn main() {
    for p in [5, 7] {
        let table = expand_bimusquash(&set_generators(GeneratorSet::Set1, p).unwrap()).unwrap();
        let word = gauss_word(&table).to_double_occurrence();
        let report = realizable(&word);
        print!("n = {}: {} crossings, realizable {}", 2 * p, word.symbol_count(), report.realizable);
        if let Some(w) = &report.witness {
            print!(" (V {} E {} F {})", w.vertices, w.edges, w.faces);
        }
        println!();

        let flipped = gauss_word(&mirror(&table)).to_double_occurrence();
        println!(
            "  mirror: parity {}, planar gadget {}, interlacement test {}",
            realizable(&flipped).parity_ok,
            gadget_planar(&flipped),
            interlacement_realizable(&flipped)
        );
    }

    for text in ["1 1", "1 2 1 2", "1 2 3 1 2 3", "1 2 3 4 1 3 2 4"] {
        let word: DoubleOccurrenceWord = text.parse().unwrap();
        println!(
            "{text:<16} planar {:<5} rotation search {}",
            gadget_planar(&word),
            brute_force_realizable(&word).unwrap()
        );
    }
}
