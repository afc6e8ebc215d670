use bimusquash::gauss::{
    brute_force_realizable, chord_diagram, count_faces, embedding_witness, gadget_planar,
    gauss_word, interlacement, interlacement_realizable, parity_check, parity_check_fast,
    realizable, DoubleOccurrenceWord,
};
use bimusquash::tables::{expand_bimusquash, mirror, set_generators, GeneratorSet};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Every double-occurrence word on `c` symbols in first-occurrence form.
fn all_words(c: usize) -> Vec<Vec<usize>> {
    fn go(c: usize, word: &mut Vec<usize>, count: &mut Vec<u8>, out: &mut Vec<Vec<usize>>) {
        if word.len() == 2 * c {
            out.push(word.clone());
            return;
        }
        let opened = count.len();
        for x in 0..opened {
            if count[x] == 1 {
                count[x] = 2;
                word.push(x);
                go(c, word, count, out);
                word.pop();
                count[x] = 1;
            }
        }
        if opened < c {
            count.push(1);
            word.push(opened);
            go(c, word, count, out);
            word.pop();
            count.pop();
        }
    }
    let mut out = Vec::new();
    go(c, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

fn random_word(rng: &mut ChaCha8Rng, c: usize) -> DoubleOccurrenceWord {
    let mut letters: Vec<usize> = (0..c).chain(0..c).collect();
    letters.shuffle(rng);
    DoubleOccurrenceWord::new(&letters).unwrap()
}

#[test]
fn word_counts_are_double_factorials() {
    let counts: Vec<usize> = (0..=5).map(|c| all_words(c).len()).collect();
    assert_eq!(counts, [1, 1, 3, 15, 105, 945]);
}

#[test]
fn planarity_agrees_with_rotation_systems_exhaustively() {
    let mut realizable_count = [0usize; 6];
    for c in 0..=5 {
        for letters in all_words(c) {
            let word = DoubleOccurrenceWord::new(&letters).unwrap();
            let oracle = brute_force_realizable(&word).unwrap();
            assert_eq!(gadget_planar(&word), oracle, "{word}");
            assert_eq!(realizable(&word).realizable, oracle, "{word}");
            assert_eq!(interlacement_realizable(&word), oracle, "{word}");
            realizable_count[c] += oracle as usize;
        }
    }
    // Sanity: the single-symbol word and the empty word are realizable,
    // and some but not all larger words are.
    assert_eq!(&realizable_count[..2], &[1, 1]);
    assert!(realizable_count[2..].iter().all(|&k| k > 0));
}

#[test]
fn planarity_agrees_with_rotation_systems_on_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7ac1e);
    let mut positives = 0;
    for i in 0..1200 {
        let c = 1 + i % 10;
        let word = random_word(&mut rng, c);
        let oracle = brute_force_realizable(&word).unwrap();
        assert_eq!(gadget_planar(&word), oracle, "{word}");
        assert_eq!(interlacement_realizable(&word), oracle, "{word}");
        positives += oracle as usize;
    }
    assert!(positives > 0);
}

#[test]
fn realizable_implies_parity_and_witness_is_spherical() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for i in 0..600 {
        let word = random_word(&mut rng, 1 + i % 9);
        let report = realizable(&word);
        assert_eq!(report.parity_ok, parity_check(&word));
        assert_eq!(parity_check_fast(&word), parity_check(&word));
        if report.realizable {
            assert!(report.parity_ok);
            let w = report.witness.expect("small realizable words carry a witness");
            assert_eq!(w.euler_characteristic(), 2);
        }
    }
}

/// Chords drawn as straight segments between points on the unit circle
/// cross exactly when their symbols interlace.
#[test]
fn chord_crossings_match_interlacement() {
    fn segments_cross(p: [(f64, f64); 4]) -> bool {
        let orient = |a: (f64, f64), b: (f64, f64), c: (f64, f64)| {
            (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
        };
        let d1 = orient(p[0], p[1], p[2]);
        let d2 = orient(p[0], p[1], p[3]);
        let d3 = orient(p[2], p[3], p[0]);
        let d4 = orient(p[2], p[3], p[1]);
        d1 * d2 < 0.0 && d3 * d4 < 0.0
    }
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for i in 0..300 {
        let word = random_word(&mut rng, 2 + i % 8);
        let diagram = chord_diagram(&word);
        let graph = interlacement(&word);
        let m = diagram.point_count() as f64;
        let at = |k: usize| {
            let t = std::f64::consts::TAU * k as f64 / m;
            (t.cos(), t.sin())
        };
        for a in 0..word.symbol_count() {
            for b in a + 1..word.symbol_count() {
                let (a1, a2) = diagram.chords()[a];
                let (b1, b2) = diagram.chords()[b];
                let geometric = segments_cross([at(a1), at(a2), at(b1), at(b2)]);
                assert_eq!(diagram.chords_cross(a, b), geometric);
                assert_eq!(graph.is_adjacent(a, b), geometric);
            }
        }
    }
}

#[test]
fn embedding_witnesses_check_out_on_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    for i in 0..3000 {
        let word = random_word(&mut rng, 1 + i % 12);
        if !gadget_planar(&word) {
            assert!(embedding_witness(&word).is_none());
            continue;
        }
        let w = embedding_witness(&word).expect("planar gadget yields an embedding");
        assert_eq!(count_faces(&word, &w.rotations), word.symbol_count() + 2);
        checked += 1;
    }
    assert!(checked > 100);
}

/// Large words: the explicit embedding certifies every positive answer, and
/// the interlacement criterion agrees in both directions.
#[test]
fn set_tables_carry_witnesses_and_their_mirrors_do_not() {
    for p in [5, 7, 9] {
        for set in [GeneratorSet::Set1, GeneratorSet::Set2] {
            let t = expand_bimusquash(&set_generators(set, p).unwrap()).unwrap();
            let word = gauss_word(&t).to_double_occurrence();
            let report = realizable(&word);
            assert!(report.realizable, "{set:?} p={p}");
            let w = report.witness.expect("witness");
            assert_eq!(w.euler_characteristic(), 2);
            assert!(interlacement_realizable(&word));

            let flipped = gauss_word(&mirror(&t)).to_double_occurrence();
            assert!(!gadget_planar(&flipped), "{set:?} p={p} mirror");
            assert!(!interlacement_realizable(&flipped), "{set:?} p={p} mirror");
        }
    }
}
