//! Writes chord diagrams and drawings as SVG files into a directory given
//! as the first argument (default: the system temp directory).

use std::path::PathBuf;

use bimusquash::gauss::gauss_word;
use bimusquash::geometry::{conway_double, star_polygon_drawing, CornerTemplate, DoublingParams};
use bimusquash::render::{render_chords, render_drawing, ChordStyle, DrawingStyle};
use bimusquash::{expand_bimusquash, set_generators, GeneratorSet};

fn main() -> std::io::Result<()> {
    let dir = std::env::args().nth(1).map_or_else(std::env::temp_dir, PathBuf::from);
    std::fs::create_dir_all(&dir)?;

    let table = expand_bimusquash(&set_generators(GeneratorSet::Set1, 7).unwrap()).unwrap();
    let chords = render_chords(&gauss_word(&table), &ChordStyle::default());

    let star = star_polygon_drawing(7).unwrap();
    let params = DoublingParams::automatic(&star, CornerTemplate::Weave).unwrap();
    let doubled = conway_double(&star, &params).unwrap();

    for (name, svg) in [
        ("chords14.svg", chords),
        ("heptagram.svg", render_drawing(&star, &DrawingStyle::default())),
        ("doubled-heptagram.svg", render_drawing(&doubled, &DrawingStyle::default())),
    ] {
        let path = dir.join(name);
        std::fs::write(&path, svg)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
