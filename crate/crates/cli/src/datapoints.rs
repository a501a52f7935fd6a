//! Datapoint files for `c2n --datapoints`: a JSON array of
//! `{"surface": "p2" | {"name", "gram", "canonical"}, "c1": [..], "c2": ".."}`
//! with rationals written as strings such as `"3"` or `"-1/2"`.

use std::sync::Arc;

use hilbseries::fock::Fock;
use hilbseries::universal::C2nDatapoint;
use hilbseries::{Rat, SurfaceModel};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum SurfaceSpec {
    Preset(String),
    Formal { name: String, gram: Vec<Vec<String>>, canonical: Vec<String> },
}

#[derive(Deserialize)]
struct PointSpec {
    surface: SurfaceSpec,
    c1: Vec<String>,
    c2: String,
}

fn rational(s: &str) -> Result<Rat, String> {
    s.trim().parse::<Rat>().map_err(|_| format!("not a rational number: {s:?}"))
}

fn rationals(v: &[String]) -> Result<Vec<Rat>, String> {
    v.iter().map(|s| rational(s)).collect()
}

pub fn parse(text: &str) -> Result<Vec<C2nDatapoint>, String> {
    let specs: Vec<PointSpec> = serde_json::from_str(text).map_err(|e| format!("datapoints: {e}"))?;
    let mut engines: Vec<(String, Arc<Fock>)> = Vec::new();
    let mut out = Vec::new();
    for spec in specs {
        let key = format!("{:?}", spec.surface);
        let model = match &spec.surface {
            SurfaceSpec::Preset(name) => SurfaceModel::preset(name).map_err(|e| e.to_string())?,
            SurfaceSpec::Formal { name, gram, canonical } => {
                let gram = gram.iter().map(|row| rationals(row)).collect::<Result<Vec<_>, _>>()?;
                SurfaceModel::formal(name.clone(), gram, rationals(canonical)?).map_err(|e| e.to_string())?
            }
        };
        // share one engine per distinct model
        let fock = match engines.iter().find(|(k, _)| *k == key) {
            Some((_, f)) => f.clone(),
            None => {
                let f = Arc::new(Fock::new(Arc::new(model)));
                engines.push((key, f.clone()));
                f
            }
        };
        let c1 = fock.model().divisor(&rationals(&spec.c1)?).map_err(|e| e.to_string())?;
        out.push(C2nDatapoint::new(fock, c1, rational(&spec.c2)?));
    }
    Ok(out)
}
