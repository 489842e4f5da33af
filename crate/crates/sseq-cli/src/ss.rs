use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};
use sseq::fgab::{FgModule, Hom, Matrix};
use sseq::tower::{einfinity, run_pages, validate_tower, LimitData, TowerDatum, TowerJson};

use crate::error::{read_json, CliError};

/// `π_s` of the limit with its maps to each level, keyed by `t`.
#[derive(Debug, Deserialize)]
pub struct LimitJson {
    pub s: i64,
    pub module: Vec<i128>,
    pub maps: BTreeMap<String, Vec<Vec<i128>>>,
}

impl LimitJson {
    fn to_limit(&self, tower: &TowerDatum) -> Result<LimitData, CliError> {
        let module = FgModule::from_normal_factors(tower.ring, self.module.clone())
            .map_err(|e| CliError::schema(format!("Schema: limit module: {e}")))?;
        let mut maps = BTreeMap::new();
        for (key, rows) in &self.maps {
            let t: i64 = key.trim().parse().map_err(|_| CliError::schema(format!("Schema: bad level key {key:?}")))?;
            let target = tower.stage(self.s, t)?;
            let matrix = Matrix::from_nested(rows, module.ngens())
                .map_err(|e| CliError::schema(format!("Schema: limit map to level {t}: {e}")))?;
            let hom = Hom::new(module.clone(), target, matrix)
                .map_err(|e| CliError::schema(format!("Schema: limit map to level {t}: {e}")))?;
            maps.insert(t, hom);
        }
        Ok(LimitData { module, maps })
    }
}

pub fn load_tower(path: &Path) -> Result<TowerDatum, CliError> {
    let json: TowerJson = read_json(path)?;
    let tower = json.to_datum()?;
    if let Some(v) = validate_tower(&tower).first() {
        return Err(CliError::schema(format!(
            "Schema: the tower is not exact at {:?} ({}): {}",
            v.position, v.at, v.detail
        )));
    }
    Ok(tower)
}

pub fn run(tower: &Path, rmax: u32, limit: Option<&Path>) -> Result<Value, CliError> {
    if rmax < 2 {
        return Err(CliError::schema("Schema: --rmax must be at least 2"));
    }
    let tower = load_tower(tower)?;
    let pages = run_pages(&tower, rmax)?;
    let all_zero = pages.iter().all(|p| p.factors.is_empty());
    let convergence = match limit {
        Some(path) => {
            let json: LimitJson = read_json(path)?;
            let c = einfinity(&tower, json.s, &json.to_limit(&tower)?)?;
            Some(json!({"s": c.s, "layers": c.layers}))
        }
        None => None,
    };
    Ok(json!({
        "rmax": rmax,
        "window": {"s": tower.s_range, "t": tower.t_range},
        "pages": pages,
        "all_zero": all_zero,
        "convergence": convergence,
    }))
}
