use extweyl_web::{decide_word_json, orbit_classes_json, root_system_json};
use serde_json::Value;

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.expect("ok")).unwrap()
}

#[test]
fn root_system_summary() {
    let g2 = parse(root_system_json("G", 2));
    assert_eq!(g2["n_roots"], 12);
    assert_eq!(g2["lengths"].as_array().unwrap().len(), 12);
    assert!(root_system_json("E", 5).is_err());
    assert!(root_system_json("A", 12).is_err());
}

#[test]
fn orbit_classes_of_twisted_b2() {
    let v = parse(orbit_classes_json("B", 2, 2, Some(1)));
    assert_eq!(v["classes"].as_array().unwrap().len(), 4);
    assert_eq!(v["ab_k"], "Z2 x Z2");
    assert!(orbit_classes_json("A", 2, 0, None).is_err());
}

#[test]
fn words() {
    let t = parse(decide_word_json("A", 2, 1, None, "0:1 0:1"));
    assert_eq!(t["trivial"], true);
    let k = parse(decide_word_json("A", 1, 1, None, "0:1 0:0"));
    assert_eq!(k["failing_layer"], "K");
    assert!(decide_word_json("A", 1, 1, None, "0:1,2").is_err());
    assert!(decide_word_json("A", 1, 1, None, "zero").is_err());
}
