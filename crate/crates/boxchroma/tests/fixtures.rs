use boxchroma::format::{parse_appendix, parse_records, ParseWarning};
use boxchroma::{export, fixture, ConfigDocument, Explode, ExportFormat, FIXTURES};
use boxchroma_core::chroma::verify_coloring;
use boxchroma_core::geometry::Violation;
use boxchroma_core::ContactGraph;

fn from_listing(label: &str) -> (ConfigDocument, Vec<ParseWarning>) {
    let f = fixture(label).unwrap();
    let meta = f.document();
    let (mut doc, w) = parse_appendix(f.appendix, meta.dims, meta.freedom).unwrap();
    doc.declared_chi = meta.declared_chi;
    (doc, w)
}

#[test]
fn listings_match_documents() {
    let sizes = [12, 11, 11, 190, 44, 75, 25, 98, 8, 11, 36, 23, 24, 61, 25, 26, 56];
    for (f, n) in FIXTURES.iter().zip(sizes) {
        let (doc, _) = from_listing(f.label);
        assert_eq!(doc, f.document(), "{}", f.label);
        assert_eq!(doc.cuboids.len(), n, "{}", f.label);
        let title = f.title.split_whitespace().next().unwrap();
        let parts: Vec<&str> = title.split('/').collect();
        let mut sides = doc.dims.as_array();
        sides.sort_unstable_by(|a, b| b.cmp(a));
        let mut from_title: Vec<u32> = parts[0].chars().map(|c| c.to_digit(10).unwrap()).collect();
        from_title.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(sides.to_vec(), from_title, "{}", f.label);
        assert_eq!(doc.freedom.level().to_string(), parts[1]);
        assert_eq!(doc.declared_chi.unwrap().to_string(), parts[2]);
    }
}

#[test]
fn stored_colorings_are_proper() {
    for f in &FIXTURES {
        let doc = f.document();
        let colors = doc.coloring().unwrap();
        let g = ContactGraph::from_cuboids(&doc.configuration().cuboids);
        assert_eq!(verify_coloring(&g, &colors), Ok(()), "{}", f.label);
        match doc.validate() {
            Ok(_) => assert!(colors.max_color() <= doc.declared_chi.unwrap() || f.label == "311-1", "{}", f.label),
            Err(v) => {
                // the translation-only title does not fit a two-orientation list
                assert_eq!(f.label, "311-1");
                assert!(matches!(v, Violation::BadOrientation { .. }));
            }
        }
    }
}

#[test]
fn duplicated_listing() {
    let a = fixture("311-1").unwrap();
    let b = fixture("311-2").unwrap();
    assert_eq!(parse_records(a.appendix).unwrap(), parse_records(b.appendix).unwrap());
    let one = a.document();
    assert_eq!(one.coloring().unwrap().max_color(), 5);
    assert!(b.document().validate().is_ok());
}

#[test]
fn reversed_intervals_are_normalized() {
    let (doc, warnings) = from_listing("421alt");
    let tuples: std::collections::BTreeSet<usize> = warnings
        .iter()
        .map(|w| match w {
            ParseWarning::ReversedInterval { index, .. } => *index,
        })
        .collect();
    assert_eq!(tuples.len(), 12);
    assert!(doc.cuboids.iter().all(|e| (0..3).all(|i| e.min[i] < e.max[i])));
    let rec = parse_records(fixture("421alt").unwrap().appendix).unwrap();
    assert!(rec.iter().any(|r| [r.x1, r.x2, r.y1, r.y2, r.z1, r.z2, r.color as i32] == [1, 5, 5, 3, -2, -1, 6]));
    for label in ["821", "221", "521"] {
        assert!(from_listing(label).1.is_empty());
    }
}

#[test]
fn maple_round_trip() {
    for f in &FIXTURES {
        let doc = f.document();
        let text = export(&doc, ExportFormat::Maple, None);
        assert_eq!(text.lines().count(), 1);
        let (back, w) = parse_appendix(&text, doc.dims, doc.freedom).unwrap();
        assert!(w.is_empty());
        assert_eq!(back.cuboids, doc.cuboids, "{}", f.label);
        let json = export(&doc, ExportFormat::Json, None);
        assert_eq!(ConfigDocument::from_json(&json).unwrap(), doc);
    }
    // already normalized listings come back verbatim, up to whitespace
    for label in ["221", "821", "431"] {
        let f = fixture(label).unwrap();
        let squeezed: String = f.appendix.split_whitespace().collect();
        assert_eq!(export(&f.document(), ExportFormat::Maple, None).trim_end(), squeezed);
    }
}

#[test]
fn exploded_821() {
    let doc = fixture("821").unwrap().document();
    let out = Explode { axis: 2, gap: 4 }.apply(&doc);
    for (a, b) in doc.cuboids.iter().zip(&out.cuboids) {
        assert_eq!(b.min[2], 5 * a.min[2]);
        assert_eq!(b.max[2], 4 * a.min[2] + a.max[2]);
        assert_eq!(&b.min[..2], &a.min[..2]);
    }
    let obj = export(&doc, ExportFormat::Obj, Some(Explode { axis: 2, gap: 4 }));
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 8 * 12);
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 12 * 12);
    // layer 1 sits at z in [5, 6]
    assert!(obj.contains("v -8 -1 5\n"));
}
