//! Conway doubling of the regular star polygons in exact arithmetic.

use bimusquash::geometry::{
    conway_double, doubling_census, intersection_table_of_drawing, star_polygon_drawing,
    thrackle_report, CornerTemplate, DoublingParams,
};
use bimusquash::tables::{canonical_form, classify, parse_tsv, serialize_tsv};

fn main() {
    for m in [3, 5, 7] {
        let star = star_polygon_drawing(m).unwrap();
        let params = DoublingParams::automatic(&star, CornerTemplate::Weave).unwrap();
        let doubled = conway_double(&star, &params).unwrap();
        let report = thrackle_report(&doubled).unwrap();
        let census = doubling_census(&star, &doubled).unwrap();
        println!(
            "m = {m}: epsilon {}, {} segments, {} crossings, thrackle {}, census {:?}",
            params.epsilon,
            doubled.segment_count(),
            report.crossings,
            report.is_thrackle,
            census
        );
        let table = intersection_table_of_drawing(&doubled).unwrap();
        println!("  bi-musquash: {}", classify(&table).is_bimusquash);
        if m == 7 {
            print!("{}", serialize_tsv(&table));
            let fixture = parse_tsv(include_str!("../fixtures/bimusquash14.tsv")).unwrap();
            println!("  same class as the fixture: {}", canonical_form(&table) == canonical_form(&fixture));
        }
    }
}
