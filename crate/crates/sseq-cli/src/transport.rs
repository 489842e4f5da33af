use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};
use sseq::fgab::Elem;
use sseq::kone::{default_generator, k1_power_odd, BkuElement};
use sseq::transport::{
    q_apply, ring_tower_instance, transport_boundaries, transport_cycles, transport_differential, KuSystem, PowerSystem,
    TableSystem, TableSystemJson, TransportError,
};

use crate::error::{read_json, CliError};

/// Input for `--system ku`: the class `c·β^{α/2}` of `π_α KU_p`.
#[derive(Debug, Deserialize)]
pub struct KuInput {
    pub p: u32,
    #[serde(default = "one")]
    pub coefficient: Elem,
    #[serde(default)]
    pub k: Option<Elem>,
}

fn one() -> Elem {
    1
}

/// Input for a synthetic system: an element of `π_s F(t)`, and for `s = −1`
/// optionally a basepoint in `π₀` for the shifted operation.
#[derive(Debug, Deserialize)]
pub struct TableInput {
    pub element: Vec<Elem>,
    #[serde(default)]
    pub basepoint: Option<Vec<Elem>>,
}

pub fn parse_pos(text: &str) -> Result<(i64, i64, i64), CliError> {
    let parts: Vec<i64> = text
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::schema(format!("Schema: --pos expects s,t,alpha, got {text:?}")))?;
    match parts[..] {
        [s, t, a] => Ok((s, t, a)),
        _ => Err(CliError::schema(format!("Schema: --pos expects s,t,alpha, got {text:?}"))),
    }
}

/// `Ok(None)` when the element is simply not of the kind the statement needs.
fn optional<T: serde::Serialize>(r: Result<T, TransportError>) -> Result<Value, CliError> {
    match r {
        Ok(v) => Ok(serde_json::to_value(v).expect("serializable")),
        Err(TransportError::NotInPage(_) | TransportError::DegreeMismatch(_)) => Ok(Value::Null),
        Err(e) => Err(e.into()),
    }
}

pub fn run(system: &str, r: u32, pos: (i64, i64, i64), input: &Path, precision: u32) -> Result<Value, CliError> {
    if r < 2 {
        return Err(CliError::schema("Schema: pages start at r = 2"));
    }
    match system {
        "ku" => run_ku(r, pos, read_json(input)?, precision),
        s => match s.strip_prefix("synthetic:") {
            Some(path) => run_table(r, pos, read_json(Path::new(path))?, read_json(input)?),
            None => Err(CliError::schema(format!("Schema: unknown system {s:?}; expected ku or synthetic:FILE"))),
        },
    }
}

/// `Q = a^t·P` on `x = c·β^{α/2}`. At `(α − 1, 1)` the class `[x]` sits in
/// filtration 1 of the descent tower, and for odd `p` and `c = 1` the
/// detection of `Q[x]` is included.
fn run_ku(r: u32, (s, t, alpha): (i64, i64, i64), input: KuInput, precision: u32) -> Result<Value, CliError> {
    if alpha % 2 != 0 {
        return Err(TransportError::DegreeMismatch(format!("π_{alpha} KU_p is zero; alpha must be even")).into());
    }
    let euler_power = u32::try_from(t).map_err(|_| TransportError::DegreeMismatch("t must be non-negative".into()))?;
    let sys = KuSystem::new(input.p, precision)?;
    let x = BkuElement::monomial(sys.ring, input.coefficient, 0, alpha / 2, 0)?;
    let power = sys.power(sys.index(), &x)?;
    let q = q_apply(&sys, euler_power, &x)?;
    let descent = if input.p != 2 && s == alpha - 1 && t == 1 && input.coefficient == 1 && alpha != 0 {
        let k = input.k.unwrap_or_else(|| default_generator(input.p));
        let odd = k1_power_odd(input.p, k, alpha / 2, precision)?;
        json!({
            "source": odd.source_class,
            "value": odd.value_text,
            "generator": odd.generator,
            "coefficient": odd.coefficient,
            "detection": odd.detection,
        })
    } else {
        Value::Null
    };
    Ok(json!({
        "system": "ku",
        "r": r,
        "position": [s, t, alpha],
        "input": x.to_json(),
        "power": power.to_json(),
        "image": q.to_json(),
        "descent": descent,
    }))
}

fn run_table(r: u32, (s, t, alpha): (i64, i64, i64), table: TableSystemJson, input: TableInput) -> Result<Value, CliError> {
    if alpha != 0 {
        return Err(TransportError::DegreeMismatch("synthetic systems carry a single column at alpha = 0".into()).into());
    }
    let sys = TableSystem::from_json(table)?;
    let map = ring_tower_instance(&sys)?;
    let x = &input.element;
    let image = match (&input.basepoint, s) {
        (Some(b), -1) => map.q_shifted(b, t, x)?,
        (Some(_), _) => return Err(CliError::schema("Schema: a basepoint is only meaningful at s = -1")),
        (None, _) => map.q_fiber(s, t, x)?,
    };
    let cycle = optional(transport_cycles(&map, r, s, t, x))?;
    let boundary = optional(transport_boundaries(&map, r, s, t, x))?;
    let differential = optional(transport_differential(&map, r, s, t, x))?;
    let holds = [&cycle, &boundary]
        .iter()
        .all(|c| c.is_null() || c["target_lift"] != Value::Null && c["engine_agrees"] == json!(true))
        && (differential.is_null() || differential["predicted_class"] == differential["direct_class"]);
    Ok(json!({
        "system": sys.json.name.clone().unwrap_or_else(|| "synthetic".into()),
        "r": r,
        "position": [s, t, alpha],
        "input": x,
        "image": image,
        "cycle": cycle,
        "boundary": boundary,
        "differential": differential,
        "holds": holds,
    }))
}
