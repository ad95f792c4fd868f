//! Browser bindings: analyze a model, sample its curves, generate the
//! two-node network. Every function takes and returns JSON text.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use qbd_tails::asymptotics::{full_report, Asymptotics};
use qbd_tails::geometry::Curve;
use qbd_tails::kernel::Axis;
use qbd_tails::model::{parse_model, validate, ValidatedModel};
use qbd_tails::netgen::{jackson_model, JacksonParams};
use qbd_tails::numfmt::round12;

fn load(model_json: &str) -> Result<ValidatedModel, String> {
    let m = parse_model(model_json).map_err(|e| e.to_string())?;
    validate(m).map_err(|e| e.to_string())
}

/// Analysis report of a model file.
pub fn analyze_json(model_json: &str) -> Result<String, String> {
    let m = load(model_json)?;
    full_report(&m).map(|r| r.to_json_pretty()).map_err(|e| e.to_string())
}

/// Boundary curves in θ-coordinates plus the key points, for drawing.
pub fn curves_json(model_json: &str, samples: usize) -> Result<String, String> {
    let m = load(model_json)?;
    let a = Asymptotics::new(&m).map_err(|e| e.to_string())?;
    let g = &a.geometry;
    let mut curves = serde_json::Map::new();
    for c in Curve::ALL {
        let s = g.sample_boundary(c, samples.max(2)).map_err(|e| e.to_string())?;
        let pts: Vec<Value> = s.theta.iter().map(|t| json!([round12(t[0]), round12(t[1])])).collect();
        curves.insert(c.name().to_string(), Value::Array(pts));
    }
    let theta = |u: [f64; 2]| json!([round12(u[0].ln()), round12(u[1].ln())]);
    let mut points = serde_json::Map::new();
    for (k, tag) in [(Axis::One, "1"), (Axis::Two, "2")] {
        points.insert(format!("r{tag}"), theta(g.extreme_r(k)));
        points.insert(format!("max{tag}"), theta(g.extreme_max(k)));
    }
    points.insert("tau".into(), theta(g.tau));
    if let Some(s) = a.sigma.sigma_d {
        points.insert("sigma_d".into(), theta([s, s]));
    }
    Ok(json!({ "curves": curves, "points": points }).to_string())
}

/// Model file for the two-node network; the second field tells whether it is stable.
pub fn jackson_json(lambda: f64, mu1: f64, mu2: f64, p: f64, q: f64) -> Result<String, String> {
    let params = JacksonParams::new(lambda, mu1, mu2, p, q).map_err(|e| e.to_string())?;
    let m = jackson_model(&params).map_err(|e| e.to_string())?;
    Ok(json!({ "model": m.to_json_text(), "stable": params.is_stable() }).to_string())
}

#[wasm_bindgen]
pub fn analyze(model_json: &str) -> Result<String, JsValue> {
    analyze_json(model_json).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn curves(model_json: &str, samples: usize) -> Result<String, JsValue> {
    curves_json(model_json, samples).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn jackson(lambda: f64, mu1: f64, mu2: f64, p: f64, q: f64) -> Result<String, JsValue> {
    jackson_json(lambda, mu1, mu2, p, q).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn network() -> String {
        let v: Value = serde_json::from_str(&jackson_json(1.0, 5.0, 4.0, 0.25, 0.4).unwrap()).unwrap();
        assert_eq!(v["stable"], true);
        v["model"].as_str().unwrap().to_string()
    }

    #[test]
    fn analyze_network() {
        let r: Value = serde_json::from_str(&analyze_json(&network()).unwrap()).unwrap();
        assert_eq!(r["stable"], true);
        let r1 = r["extreme_points"]["axis1"]["u_r"][0].as_f64().unwrap();
        assert!((r1 - 2.329455).abs() < 1e-6);
    }

    #[test]
    fn curve_payload() {
        let c: Value = serde_json::from_str(&curves_json(&network(), 10).unwrap()).unwrap();
        for name in ["gamma_plus", "gamma_1", "gamma_2", "domain"] {
            assert_eq!(c["curves"][name].as_array().unwrap().len(), 10);
        }
        assert!(c["points"]["tau"].is_array());
    }

    #[test]
    fn errors_are_messages() {
        assert!(analyze_json("{}").unwrap_err().contains("missing face"));
        let v: Value = serde_json::from_str(&jackson_json(4.0, 5.0, 4.0, 0.25, 0.4).unwrap()).unwrap();
        assert_eq!(v["stable"], false);
        let e = curves_json(v["model"].as_str().unwrap(), 10).unwrap_err();
        assert!(e.contains("not stable"), "{e}");
    }
}
