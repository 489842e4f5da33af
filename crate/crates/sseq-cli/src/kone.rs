use serde_json::{json, Value};
use sseq::fgab::Elem;
use sseq::kone::{
    b_sk1_pi, default_generator, eval, k1_power_odd, k1_power_two, sk1_pi, theta_epsilon, KoneError, PowerClass,
};

use crate::error::CliError;

/// Parse `a..b` (inclusive, either end may be negative).
pub fn parse_range(text: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::schema(format!("Schema: expected a range lo..hi, got {text:?}"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let lo = a.trim().parse().map_err(|_| bad())?;
    let hi = b.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

pub fn pi(p: u32, k: Option<Elem>, range: (i64, i64), weight: Option<i64>, precision: u32) -> Result<Value, CliError> {
    let k = k.unwrap_or_else(|| default_generator(p));
    let groups = match weight {
        None => sk1_pi(p, k, range, precision)?,
        Some(w) => {
            let degrees: Vec<(i64, i64)> = (range.0..=range.1).map(|s| (s, w)).collect();
            b_sk1_pi(p, k, &degrees, precision)?
        }
    };
    let orders: Vec<Value> = groups
        .iter()
        .map(|g| json!({"s": g.s, "w": g.w, "module": g.module, "order": g.order().map(|o| o.to_string())}))
        .collect();
    Ok(json!({"p": p, "k": k, "precision": precision, "bigraded": weight.is_some(), "groups": groups, "summary": orders}))
}

pub fn power(p: u32, n: i64, k: Option<Elem>, precision: u32) -> Result<Value, CliError> {
    let k = k.unwrap_or_else(|| default_generator(p));
    Ok(serde_json::to_value(k1_power_odd(p, k, n, precision)?).expect("serializable"))
}

pub fn power2(class: &str, n: i64, k: Option<Elem>, precision: u32) -> Result<Value, CliError> {
    let class: PowerClass = class.parse()?;
    let k = k.unwrap_or_else(|| default_generator(2));
    Ok(serde_json::to_value(k1_power_two(class, n, k, precision)?).expect("serializable"))
}

pub fn theta(k: Option<Elem>, precision: u32) -> Result<Value, CliError> {
    let k = k.unwrap_or_else(|| default_generator(2));
    Ok(serde_json::to_value(theta_epsilon(k, precision)?).expect("serializable"))
}

pub fn bku_eval(p: u32, expr: &str, precision: u32) -> Result<Value, CliError> {
    if !(2..=1000).contains(&p) {
        return Err(KoneError::Parse(format!("p = {p} is out of range")).into());
    }
    let x = eval(p, precision, expr)?;
    Ok(serde_json::to_value(x.to_json()).expect("serializable"))
}
