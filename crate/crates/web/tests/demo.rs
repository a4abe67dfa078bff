use incidence_web::{color, color_view, gyo, w_curve, w_points};

#[test]
fn color_methods_produce_proper_views() {
    let text = "a b c\nc d\nd e f\n";
    for method in ["greedy", "exact", "tree"] {
        assert!(color_view(text, method).is_ok());
        let json: serde_json::Value = serde_json::from_str(&color(text, method)).unwrap();
        assert_eq!(json["incidences"].as_array().unwrap().len(), 8);
        assert_eq!(json["vertices"].as_array().unwrap().len(), 6);
        assert!(json.get("error").is_none());
    }
    let exact: serde_json::Value = serde_json::from_str(&color(text, "exact")).unwrap();
    assert_eq!(exact["optimal"], true);
    assert_eq!(exact["palette"], 4);
}

#[test]
fn errors_become_json() {
    let json: serde_json::Value = serde_json::from_str(&color("a b\nb c\nc a\n", "tree")).unwrap();
    assert!(json["error"].as_str().unwrap().contains("acyclic"));
    let json: serde_json::Value = serde_json::from_str(&color("a b\n", "magic")).unwrap();
    assert!(json["error"].is_string());
    let json: serde_json::Value = serde_json::from_str(&w_curve(3, 5)).unwrap();
    assert!(json["error"].is_string());
}

#[test]
fn gyo_trace_matches_acyclicity() {
    let json: serde_json::Value = serde_json::from_str(&gyo("a b c\nc d\n")).unwrap();
    assert_eq!(json["acyclic"], true);
    let json: serde_json::Value = serde_json::from_str(&gyo("a b\nb c\nc a\n")).unwrap();
    assert_eq!(json["acyclic"], false);
    assert_eq!(json["steps"].as_array().unwrap().len(), 0);
}

#[test]
fn w_curve_decreases() {
    let points = w_points(50, 1).unwrap();
    assert_eq!(points.first().unwrap().0, 2);
    assert!(points.windows(2).all(|w| w[1].1 < w[0].1));
}
