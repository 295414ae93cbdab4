use num_bigint::BigUint;
use serde_json::{json, Value};

use fflat::autgroup::isometry_group_order;
use fflat::builders::{barnes_lattice, build_ff_lattice};
use fflat::curves::{HyperellipticModel, Selector};
use fflat::io::{
    biguint_value, isometry_report_to_json, lattice_from_json, lattice_to_json, places_to_json, to_canonical_string,
    CurveSpec,
};
use fflat::latcore::DEFAULT_ENUM_CAP;
use fflat::Error;

#[test]
fn lattice_json_round_trips() {
    let lat = barnes_lattice(8).unwrap();
    let text = to_canonical_string(&lattice_to_json(&lat));
    assert!(text.ends_with('\n'));
    let back = lattice_from_json(&text).unwrap();
    assert_eq!(back.basis(), lat.basis());
    assert_eq!(to_canonical_string(&lattice_to_json(&back)), text);
}

#[test]
fn lattice_json_rejects_bad_shapes() {
    let ragged = json!({"ambient_dim": 3, "basis": [[1, 0, 0], [0, 1]]}).to_string();
    assert!(matches!(lattice_from_json(&ragged), Err(Error::DimensionMismatch { .. })));
    let dependent = json!({"ambient_dim": 2, "basis": [[1, 1], [2, 2]]}).to_string();
    assert!(lattice_from_json(&dependent).is_err());
    assert!(matches!(lattice_from_json("not json"), Err(Error::InvalidInput(_))));
}

#[test]
fn large_integers_are_strings() {
    assert_eq!(biguint_value(&BigUint::from(161280u32)), json!(161280));
    let big = BigUint::from(1u8) << 60;
    assert_eq!(biguint_value(&big), json!(big.to_string()));
    let text = json!({"ambient_dim": 2, "basis": [["12", -3]]}).to_string();
    assert_eq!(lattice_from_json(&text).unwrap().basis()[0], vec![12, -3]);
    // parses, but the Gram entry no longer fits in 64 bits
    let text = json!({"ambient_dim": 1, "basis": [["9007199254740993"]]}).to_string();
    assert!(matches!(lattice_from_json(&text), Err(Error::Resource(_))));
}

#[test]
fn curve_spec_and_sidecar() {
    let spec = CurveSpec::parse(r#"{"p": 5, "f": [1, 1, 0, 1]}"#).unwrap();
    let bundle = build_ff_lattice(&spec.model().unwrap(), Selector::EllipticAllRational).unwrap();
    let places = places_to_json(&bundle.places);
    assert_eq!(places["places"].as_array().unwrap().len(), 9);
    assert_eq!(places["places"][0]["kind"], Value::from("infinity"));
    assert!(CurveSpec::parse(r#"{"p": 4, "f": [1, 1, 0, 1]}"#).and_then(|s| s.model()).is_err());
}

#[test]
fn isometry_report_shape() {
    let m = HyperellipticModel::parse(7, "1,1,0,1").unwrap();
    let bundle = build_ff_lattice(&m, Selector::EllipticAllRational).unwrap();
    let r = isometry_group_order(&bundle.lattice, 12, DEFAULT_ENUM_CAP).unwrap();
    let v = isometry_report_to_json(&r);
    assert_eq!(v["order"], Value::from(r.order.to_string()));
    assert_eq!(v["includes_minus_id"], Value::from(true));
    assert_eq!(v["generators"]["kind"], Value::from("basis_images"));
}
