//! Acceptance criteria, one line of output each. Runs without the libtest
//! harness so every criterion reports even when an earlier one fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bimusquash::gauss::{
    brute_force_realizable, gadget_planar, gauss_word, realizable, DoubleOccurrenceWord,
};
use bimusquash::geometry::{
    conway_double, doubled_star_table, doubling_census, intersection_table_of_drawing,
    is_thrackle, star_polygon_drawing, CornerTemplate, DoublingParams,
};
use bimusquash::search::{
    enumerate_bimusquash, enumerate_musquash, pruning_soundness_harness, verdict_from_report,
    SearchConfig,
};
use bimusquash::tables::{
    canonical_form, chiral_canonical_form, classify, expand_bimusquash, mirror, parse_tsv,
    rotate, set_generators, GeneratorSet, IntersectionTable,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TABLE14: &str = include_str!("../fixtures/bimusquash14.tsv");

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn set_table(set: GeneratorSet, p: usize) -> IntersectionTable {
    expand_bimusquash(&set_generators(set, p).unwrap()).unwrap()
}

fn golden_table() -> Outcome {
    let expected = parse_tsv(TABLE14).map_err(|e| e.to_string())?;
    let got = set_table(GeneratorSet::Set1, 7);
    ensure!(expected.n() == 14, "fixture has n = {}", expected.n());
    for i in 1..=14 {
        ensure!(expected.row(i).len() == 11, "fixture row {i} has {} entries", expected.row(i).len());
        ensure!(got.row(i) == expected.row(i), "row {i}: {:?} vs {:?}", got.row(i), expected.row(i));
    }
    Ok("14 x 11 entries identical".into())
}

fn generation_rule() -> Outcome {
    let t = parse_tsv(TABLE14).map_err(|e| e.to_string())?;
    let shift = |x: usize, k: usize| (x - 1 + k) % 14 + 1;
    for i in 1..=14 {
        let (base, k) = if i % 2 == 1 { (1, i - 1) } else { (2, i - 2) };
        let want: Vec<usize> = t.row(base).iter().map(|&x| shift(x, k)).collect();
        ensure!(t.row(i) == want.as_slice(), "row {i} is not row {base} shifted by {k}");
    }
    Ok("odd rows from row 1, even rows from row 2".into())
}

fn mirror_claim() -> Outcome {
    for p in [5, 7, 9, 11] {
        let t1 = set_table(GeneratorSet::Set1, p);
        let t2 = set_table(GeneratorSet::Set2, p);
        ensure!(canonical_form(&mirror(&t1)) == canonical_form(&t2), "p = {p}: not mirror images");
    }
    Ok("p = 5, 7, 9, 11".into())
}

fn symmetry() -> Outcome {
    for p in [5, 7, 9, 11] {
        for set in [GeneratorSet::Set1, GeneratorSet::Set2] {
            let t = set_table(set, p);
            ensure!(rotate(&t, 2) == t, "p = {p} {set:?}: not invariant under rotate(2)");
            let w = gauss_word(&t);
            ensure!(w.shifted(2) == w, "p = {p} {set:?}: Gauss word not invariant");
        }
    }
    Ok("tables and Gauss words fixed by the two-step rotation, p = 5, 7, 9, 11".into())
}

fn set_realizability() -> Outcome {
    let mut notes = Vec::new();
    for p in [5, 7] {
        let word = gauss_word(&set_table(GeneratorSet::Set1, p)).to_double_occurrence();
        let report = realizable(&word);
        ensure!(report.realizable, "p = {p}: Gauss word is not realizable (falsification)");
        let faces = report.witness.map(|w| w.faces).unwrap_or(0);
        notes.push(format!("p = {p}: {} crossings, witness with {faces} faces", word.symbol_count()));
    }
    Ok(notes.join("; "))
}

fn all_words(c: usize) -> Vec<Vec<usize>> {
    fn go(c: usize, word: &mut Vec<usize>, count: &mut Vec<u8>, out: &mut Vec<Vec<usize>>) {
        if word.len() == 2 * c {
            out.push(word.clone());
            return;
        }
        for x in 0..count.len() {
            if count[x] == 1 {
                count[x] = 2;
                word.push(x);
                go(c, word, count, out);
                word.pop();
                count[x] = 1;
            }
        }
        if count.len() < c {
            count.push(1);
            word.push(count.len() - 1);
            go(c, word, count, out);
            word.pop();
            count.pop();
        }
    }
    let mut out = Vec::new();
    go(c, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

fn oracle_equivalence() -> Outcome {
    let mut exhaustive = 0;
    for c in 0..=5 {
        for letters in all_words(c) {
            let word = DoubleOccurrenceWord::new(&letters).unwrap();
            let oracle = brute_force_realizable(&word).map_err(|e| e.to_string())?;
            ensure!(gadget_planar(&word) == oracle, "disagreement on {word}");
            exhaustive += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let random = 1000;
    for i in 0..random {
        let c = 1 + i % 10;
        let mut letters: Vec<usize> = (0..c).chain(0..c).collect();
        letters.shuffle(&mut rng);
        let word = DoubleOccurrenceWord::new(&letters).unwrap();
        let oracle = brute_force_realizable(&word).map_err(|e| e.to_string())?;
        ensure!(gadget_planar(&word) == oracle, "disagreement on {word}");
    }
    Ok(format!("{exhaustive} exhaustive words (C <= 5), {random} random words (C <= 10), 0 disagreements"))
}

fn octagon() -> Outcome {
    let r = enumerate_bimusquash(&SearchConfig::new(8)).map_err(|e| e.to_string())?;
    ensure!(r.solutions.is_empty(), "{} solutions found", r.solutions.len());
    Ok(verdict_from_report(&r).summary())
}

fn decagon() -> Outcome {
    let one = enumerate_bimusquash(&SearchConfig::new(10).with_workers(1)).map_err(|e| e.to_string())?;
    let many = enumerate_bimusquash(&SearchConfig::new(10).with_workers(8)).map_err(|e| e.to_string())?;
    ensure!(one.to_json() == many.to_json(), "report differs between 1 and 8 workers");
    let v = verdict_from_report(&one);
    let detail = format!(
        "{} solutions, {} classes ({} chiral); SET pair found: {}; mirror-related: {}; \
         other classes: {}; doubled pentagram in SET class: {}",
        v.solutions,
        v.classes,
        v.chiral_classes,
        v.set_pair_found.unwrap_or(false),
        v.mirror_related.unwrap_or(false),
        v.other_classes.unwrap_or(0),
        v.doubling_reading_holds.unwrap_or(false),
    );
    ensure!(v.matches_conjecture, "{detail}");
    Ok(detail)
}

fn hexagon() -> Outcome {
    let r = enumerate_bimusquash(&SearchConfig::new(6)).map_err(|e| e.to_string())?;
    let triangle = canonical_form(&doubled_star_table(3).map_err(|e| e.to_string())?);
    ensure!(
        r.classes.iter().any(|c| c.canonical == triangle.rows()),
        "doubled triangle missing from {} classes",
        r.classes.len()
    );
    Ok(format!(
        "{} solutions, {} classes under the full group, {} chiral classes; doubled triangle present",
        r.solutions.len(),
        r.class_count(),
        r.chiral_classes
    ))
}

fn doubling() -> Outcome {
    let table14 = parse_tsv(TABLE14).map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for m in [3, 5, 7] {
        let star = star_polygon_drawing(m).map_err(|e| e.to_string())?;
        let params = DoublingParams::automatic(&star, CornerTemplate::Weave).map_err(|e| e.to_string())?;
        let d = conway_double(&star, &params).map_err(|e| e.to_string())?;
        ensure!(is_thrackle(&d), "m = {m}: doubled drawing is not a thrackle");
        let t = intersection_table_of_drawing(&d).map_err(|e| e.to_string())?;
        ensure!(classify(&t).is_bimusquash, "m = {m}: table violates the alternating rule");
        let census = doubling_census(&star, &d).map_err(|e| e.to_string())?;
        ensure!(census.is_exact(), "m = {m}: census {census:?}");
        if m == 7 {
            ensure!(canonical_form(&t) == canonical_form(&table14), "m = 7: table differs from the printed one");
        }
        notes.push(format!(
            "m = {m}: {} crossings near vertices, {} near crossings",
            3 * census.per_vertex.len(),
            4 * census.per_crossing.len()
        ));
    }
    Ok(notes.join("; "))
}

fn odd_musquashes() -> Outcome {
    let mut notes = Vec::new();
    for n in [5, 7] {
        let r = enumerate_musquash(n, &SearchConfig::new(n)).map_err(|e| e.to_string())?;
        ensure!(r.class_count() == 1, "n = {n}: {} classes", r.class_count());
        let star = intersection_table_of_drawing(&star_polygon_drawing(n).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure!(
            chiral_canonical_form(&r.tables()[0]) == chiral_canonical_form(&star),
            "n = {n}: the class is not the star polygon"
        );
        notes.push(format!("n = {n}: {} solution(s), 1 class", r.solutions.len()));
    }
    Ok(notes.join("; "))
}

fn soundness() -> Outcome {
    for n in [6, 8] {
        pruning_soundness_harness(n).map_err(|d| format!("n = {n}: {d}"))?;
        let one = enumerate_bimusquash(&SearchConfig::new(n).with_workers(1)).map_err(|e| e.to_string())?;
        let many = enumerate_bimusquash(&SearchConfig::new(n).with_workers(8)).map_err(|e| e.to_string())?;
        ensure!(one.to_json() == many.to_json(), "n = {n}: reports differ between 1 and 8 workers");
    }
    Ok("pruned = unpruned and 1 worker = 8 workers at n = 6, 8".into())
}

struct Criterion {
    name: &'static str,
    limit: Duration,
    check: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { name: "golden table", limit: secs(1), check: golden_table },
        Criterion { name: "generation rule", limit: secs(1), check: generation_rule },
        Criterion { name: "mirror claim", limit: secs(10), check: mirror_claim },
        Criterion { name: "rotational symmetry", limit: secs(10), check: symmetry },
        Criterion { name: "SET realizability", limit: secs(60), check: set_realizability },
        Criterion { name: "oracle equivalence", limit: secs(600), check: oracle_equivalence },
        Criterion { name: "no bi-musquash at n = 8", limit: secs(60), check: octagon },
        Criterion { name: "exactly the SET pair at n = 10", limit: secs(7200), check: decagon },
        Criterion { name: "n = 6 special case", limit: secs(1), check: hexagon },
        Criterion { name: "Conway doubling", limit: secs(300), check: doubling },
        Criterion { name: "odd musquashes are standard", limit: secs(300), check: odd_musquashes },
        Criterion { name: "search soundness", limit: Duration::MAX, check: soundness },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let started = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.check))
            .unwrap_or_else(|e| Err(format!("panicked: {:?}", e.downcast_ref::<String>())));
        let elapsed = started.elapsed();
        let result = match result {
            Ok(_) if elapsed > c.limit => Err(format!("took {elapsed:.2?}, limit {:?}", c.limit)),
            other => other,
        };
        let (status, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        failed += usize::from(result.is_err());
        println!("criterion {:>2} {status} {} ({:.2} s): {detail}", i + 1, c.name, elapsed.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
