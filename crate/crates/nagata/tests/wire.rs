use nagata::datasets::{self, DataSource};
use nagata::wire::{parse_list, AnyConfig, ConfigFile, Entry, FieldSpec, SystemFile};
use nagata_core::field::{Field, GaloisField, Rationals};

#[test]
fn every_bundled_dataset_loads() {
    for name in datasets::names() {
        let text = datasets::bundled(name).unwrap();
        if let Ok(cfg) = ConfigFile::from_json(text) {
            cfg.build().unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(cfg.citation().is_some(), "{name}");
        } else {
            let sys = SystemFile::from_json(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            for &p in &sys.primes {
                let f = sys.field(Some(p)).unwrap();
                sys.build(&f).unwrap_or_else(|e| panic!("{name} over F_{p}: {e}"));
            }
        }
    }
}

#[test]
fn entries_in_all_three_spellings() {
    let k = GaloisField::new(3, 2, None).unwrap();
    let a = Entry::Text("1+2*g".into()).parse(&k).unwrap();
    assert_eq!(Entry::Coeffs(vec![1, 2]).parse(&k).unwrap(), a);
    assert_eq!(Entry::Int(-1).parse(&k).unwrap(), k.from_i64(2));
    let q = Entry::Text("-3/4".into()).parse(&Rationals).unwrap();
    assert_eq!(Rationals.format_elem(&q), "-3/4");
    assert!(Entry::Text("1+h".into()).parse(&k).is_err());
}

#[test]
fn field_specs_round_trip() {
    for spec in [
        FieldSpec::Prime { p: 7 },
        FieldSpec::Ext { p: 2, deg: 2, modulus: Some(vec![1, 1, 1]) },
        FieldSpec::Rational,
    ] {
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<FieldSpec>(&text).unwrap(), spec);
        spec.build().unwrap();
    }
    let f9 = GaloisField::new(3, 2, None).unwrap();
    assert_eq!(FieldSpec::of(&f9), FieldSpec::Ext { p: 3, deg: 2, modulus: Some(vec![1, 0, 1]) });
    assert!(FieldSpec::Prime { p: 9 }.build().is_err());
}

#[test]
fn config_files_are_validated() {
    let ok = r#"{"field": {"type": "rational"}, "r": 3, "points": [[1, 0, 0], [0, "1/2", 0], [0, 0, 1], [1, 1, 1]]}"#;
    let cfg = ConfigFile::from_json(ok).unwrap();
    assert!(matches!(cfg.build().unwrap(), AnyConfig::Rational(_)));
    assert_eq!(cfg.truncated(2).unwrap().points.len(), 2);
    assert!(cfg.truncated(5).is_err());
    assert!(cfg.finite().is_err());
    let short = r#"{"field": {"type": "prime", "p": 5}, "r": 3, "points": [[1, 0]]}"#;
    let err = ConfigFile::from_json(short).unwrap().build().unwrap_err();
    assert!(err.to_string().contains("point 1 has 2 coordinates"), "{err}");
    let twice = r#"{"field": {"type": "prime", "p": 5}, "r": 2, "points": [[1, 2], [2, 4]]}"#;
    assert!(ConfigFile::from_json(twice).unwrap().build().is_err());
}

#[test]
fn systems_from_terms() {
    let text = r#"{"nvars": 3, "forms": [[[[3, 0, 0], "1"], [[1, 0, 2], "-1"]], "y^3 - y*z^2"]}"#;
    let sys = SystemFile::from_json(text).unwrap();
    assert!(sys.field(None).is_err());
    let k = sys.field(Some(5)).unwrap();
    let forms = sys.build(&k).unwrap();
    assert_eq!(forms.dim(), 2);
    assert_eq!(forms.degree(), 3);
}

#[test]
fn lists_and_data_dirs() {
    assert_eq!(parse_list::<u32>("1, 2,3,").unwrap(), vec![1, 2, 3]);
    assert!(parse_list::<u32>("1,x").is_err());
    let dir = std::env::temp_dir().join(format!("nagata-wire-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("grid_f5.json"), "{}").unwrap();
    let src = DataSource::with_dir(&dir);
    assert_eq!(src.text("grid_f5").unwrap(), "{}");
    assert_eq!(src.text("cube_f5.json").unwrap(), datasets::bundled("cube_f5").unwrap());
    assert!(src.text("missing").is_err());
}
