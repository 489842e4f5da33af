use std::path::Path;

use serde_json::{json, Value};
use sseq::repring::{
    character_table, euler_gset, is_ku_allowable, named, norm_epsilon, ClassFunction, FiniteGroup, GSet, GroupJson, Perm,
    Subgroup,
};

use crate::error::{read_json, CliError};

/// A group given as a JSON file or by a familiar name such as `C9` or `Heis27`.
pub fn load_group(spec: &str) -> Result<FiniteGroup, CliError> {
    if spec.ends_with(".json") {
        let g: GroupJson = read_json(Path::new(spec))?;
        return Ok(g.to_group()?);
    }
    Ok(named(spec)?)
}

/// A subgroup of `group`: `e` (trivial), `G` (everything), a group JSON file
/// on the same points, or generators in cycle notation separated by `;`.
pub fn load_subgroup(group: &FiniteGroup, spec: &str) -> Result<Subgroup, CliError> {
    let perms: Vec<Perm> = match spec.trim() {
        "e" | "1" => return Ok(group.trivial()),
        "G" => return Ok(group.whole()),
        s if s.ends_with(".json") => {
            let k: GroupJson = read_json(Path::new(s))?;
            if k.degree != group.degree() {
                return Err(CliError::schema(format!(
                    "Schema: subgroup acts on {} points, group on {}",
                    k.degree,
                    group.degree()
                )));
            }
            k.generators.iter().map(|g| Perm::parse(g, k.degree)).collect::<Result<_, _>>()?
        }
        s => s.split(';').map(|g| Perm::parse(g, group.degree())).collect::<Result<_, _>>()?,
    };
    Ok(group.subgroup_from_perms(&perms)?)
}

/// Split `G/K` where either side may be a path containing `/`.
pub fn split_gset(spec: &str) -> Result<(&str, &str), CliError> {
    let cut = match spec.find(".json/") {
        Some(i) => i + ".json".len(),
        None => spec.find('/').ok_or_else(|| CliError::schema(format!("Schema: expected G/K, got {spec:?}")))?,
    };
    Ok((&spec[..cut], &spec[cut + 1..]))
}

fn classes_json(group: &FiniteGroup) -> Value {
    let classes: Vec<Value> = group
        .conjugacy_classes()
        .iter()
        .map(|c| {
            json!({
                "representative": group.element(c.representative).to_string(),
                "size": c.size(),
                "order": group.element_order(c.representative),
            })
        })
        .collect();
    Value::Array(classes)
}

fn character_json(f: &ClassFunction) -> Value {
    match f.as_integers() {
        Some(v) => json!(v),
        None => json!(f.values.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
    }
}

pub fn info(spec: &str) -> Result<Value, CliError> {
    let group = load_group(spec)?;
    let table = character_table(&group)?;
    let irreducibles: Vec<Value> = table
        .rational_irreducibles
        .iter()
        .map(|r| json!({"degree": r.degree(), "schur_index": r.schur_index, "character": character_json(&r.character)}))
        .collect();
    Ok(json!({
        "degree": group.degree(),
        "order": group.order(),
        "generators": group.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "abelian": group.is_abelian(),
        "nilpotent": group.is_nilpotent(),
        "exponent": group.exponent(),
        "classes": classes_json(&group),
        "rational_irreducibles": irreducibles,
    }))
}

pub fn euler(gset: &str) -> Result<Value, CliError> {
    let (g, k) = split_gset(gset)?;
    let group = load_group(g)?;
    let k = load_subgroup(&group, k)?;
    let e = euler_gset(&group, &k);
    let cosets = GSet::cosets(&group, &k);
    let transitive = (0..group.order()).find(|&x| cosets.action(x).cycle_type() == [cosets.size]);
    Ok(json!({
        "group_order": group.order(),
        "subgroup_order": k.order(),
        "index": cosets.size,
        "classes": classes_json(&group),
        "euler": character_json(&e.character),
        "certificate": e.certificate,
        "certificate_holds": e.certificate_holds(),
        "nonzero": !e.character.is_zero(),
        "transitive_element": transitive.map(|x| group.element(x).to_string()),
    }))
}

pub fn norm_eps(group: &str, subgroup: &str) -> Result<Value, CliError> {
    let g = load_group(group)?;
    let k = load_subgroup(&g, subgroup)?;
    let n = norm_epsilon(&g, &k)?;
    let mut v = serde_json::to_value(&n).expect("serializable");
    v["classes"] = classes_json(&g);
    v["normal"] = json!(g.is_normal(&k));
    Ok(v)
}

pub fn allowable(group: &str) -> Result<Value, CliError> {
    let a = is_ku_allowable(&load_group(group)?);
    Ok(json!({
        "allowable": a.allowable,
        "witness": a.witness.map(|w| json!({"cyclic": w.cyclic, "prime": w.prime})),
    }))
}
