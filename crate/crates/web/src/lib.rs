//! Browser bindings. Each export takes plain values from the page and
//! returns a JSON string; the `*_json` functions carry the logic so they
//! can be tested off the browser.

use std::collections::BTreeMap;

use serde::Serialize;
use wasm_bindgen::prelude::*;

use extweyl::extended::ExtRootSystem;
use extweyl::roots::{FiniteRootSystem, RootSystemType};
use extweyl::verify::roots_on_grid;
use extweyl::weyl::{ab_k, decide_word, orbit_of, OrbitClass, Word, WordLetter};

fn root_type(family: &str, rank: usize) -> Result<RootSystemType, String> {
    RootSystemType::new(family.parse().map_err(|e| format!("{e}"))?, rank).map_err(|e| e.to_string())
}

fn system(family: &str, rank: usize, n: usize, twist: Option<usize>) -> Result<ExtRootSystem, String> {
    if !(1..=3).contains(&n) {
        return Err("the demo supports G of rank 1 to 3".into());
    }
    let t = root_type(family, rank)?;
    match twist {
        Some(k) => ExtRootSystem::twisted(t, n, k).map_err(|e| e.to_string()),
        None => Ok(ExtRootSystem::full(t, n)),
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct RootSummary {
    name: String,
    n_roots: usize,
    n_positive: usize,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    lengths: Vec<&'static str>,
}

pub fn root_system_json(family: &str, rank: usize) -> Result<String, String> {
    let t = root_type(family, rank)?;
    if rank > 8 {
        return Err("rank is capped at 8 in the demo".into());
    }
    let rs = FiniteRootSystem::build(t);
    let c = rs.cartan();
    to_json(&RootSummary {
        name: t.to_string(),
        n_roots: rs.len(),
        n_positive: rs.n_positive(),
        cartan: (0..c.nrows()).map(|i| c.row(i).iter().copied().collect()).collect(),
        roots: rs.roots().to_vec(),
        lengths: rs.lengths().iter().map(|l| l.as_str()).collect(),
    })
}

#[derive(Serialize)]
struct OrbitRow {
    #[serde(flatten)]
    class: OrbitClass,
    example: String,
}

#[derive(Serialize)]
struct Orbits {
    ab_k: String,
    classes: Vec<OrbitRow>,
}

pub fn orbit_classes_json(family: &str, rank: usize, n: usize, twist: Option<usize>) -> Result<String, String> {
    let ers = system(family, rank, n, twist)?;
    let mut seen = BTreeMap::new();
    for (h, b) in roots_on_grid(&ers) {
        let class = orbit_of(&ers, &h, b).map_err(|e| e.to_string())?;
        seen.entry(class).or_insert_with(|| WordLetter { g: h, alpha: b }.to_string());
    }
    to_json(&Orbits {
        ab_k: ab_k(&ers).describe(),
        classes: seen.into_iter().map(|(class, example)| OrbitRow { class, example }).collect(),
    })
}

pub fn decide_word_json(family: &str, rank: usize, n: usize, twist: Option<usize>, word: &str) -> Result<String, String> {
    let ers = system(family, rank, n, twist)?;
    let labels = Word::parse_shorthand(word)
        .and_then(|w| w.labels(&ers))
        .map_err(|e| e.to_string())?;
    to_json(&decide_word(&ers, &labels).map_err(|e| e.to_string())?)
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = rootSystem)]
pub fn root_system(family: &str, rank: usize) -> Result<String, JsError> {
    js(root_system_json(family, rank))
}

#[wasm_bindgen(js_name = orbitClasses)]
pub fn orbit_classes(family: &str, rank: usize, n: usize, twist: Option<u32>) -> Result<String, JsError> {
    js(orbit_classes_json(family, rank, n, twist.map(|k| k as usize)))
}

#[wasm_bindgen(js_name = decideWord)]
pub fn decide(family: &str, rank: usize, n: usize, twist: Option<u32>, word: &str) -> Result<String, JsError> {
    js(decide_word_json(family, rank, n, twist.map(|k| k as usize), word))
}
