//! Named function catalog for CLI and config use.

use crate::error::{Error, Result};
use crate::periodic::PeriodicFunction;
use crate::points::{self, CounterexampleParams, InnerFill, WitnessScheme};
use std::collections::BTreeMap;

/// Parse `name:key=val,key=val` descriptors.
pub fn parse_descriptor(s: &str) -> Result<(String, BTreeMap<String, f64>)> {
    let mut parts = s.splitn(2, ':');
    let name = parts.next().unwrap_or("").trim().to_string();
    if name.is_empty() {
        return Err(Error::Config("empty descriptor".to_string()));
    }
    let mut params = BTreeMap::new();
    if let Some(rest) = parts.next() {
        for kv in rest.split(',') {
            let kv = kv.trim();
            if kv.is_empty() {
                continue;
            }
            let mut it = kv.splitn(2, '=');
            let key = it.next().unwrap_or("").trim();
            let val = it
                .next()
                .ok_or_else(|| Error::Config(format!("descriptor `{s}`: `{kv}` is not key=value")))?;
            // scheme=harmonic style string parameters get numeric codes
            let parsed = match val.trim() {
                "harmonic" => 0.0,
                "dyadic" => 1.0,
                "zero" => 0.0,
                "continuation" | "cont" => 1.0,
                v => v
                    .parse::<f64>()
                    .map_err(|_| Error::Config(format!("descriptor `{s}`: bad value `{v}` for `{key}`")))?,
            };
            params.insert(key.to_string(), parsed);
        }
    }
    Ok((name, params))
}

fn counterexample_params(params: &BTreeMap<String, f64>) -> CounterexampleParams {
    let mut p = CounterexampleParams::default();
    if let Some(&q) = params.get("q") {
        p.base_q = q as u64;
    }
    if let Some(&e) = params.get("p") {
        p.exponent_p = e as u32;
    }
    if let Some(&k) = params.get("K").or_else(|| params.get("k")) {
        p.levels = k as u32;
    }
    if let Some(&a) = params.get("amp") {
        p.amplitude_exponent = a;
    }
    if let Some(&f) = params.get("fill") {
        p.inner_fill = if f == 0.0 { InnerFill::Zero } else { InnerFill::Continuation };
    }
    if let Some(&c) = params.get("cap") {
        p.degree_cap = c as u64;
    }
    p
}

/// Built-in periodic functions referenced by name.
///
/// `const:c=`, `cos`, `sawtooth`, `square`, `abs_t`, `cos_plus_sin2t`,
/// `oscillating_g:scheme=harmonic|dyadic`,
/// `counterexample_F0:q=,p=,K=`, `counterexample_f0:q=,p=,K=`.
pub fn builtin(name: &str, params: &BTreeMap<String, f64>) -> Result<PeriodicFunction> {
    match name {
        "const" => {
            let c = params.get("c").copied().unwrap_or(1.0);
            Ok(PeriodicFunction::real(format!("const:c={c}"), move |_| c))
        }
        "cos" => Ok(PeriodicFunction::real("cos", f64::cos)),
        "sawtooth" => Ok(PeriodicFunction::real("sawtooth", |t| t)),
        "square" => Ok(
            PeriodicFunction::real("square", |t| if t >= 0.0 { 1.0 } else { -1.0 })
                .with_breaks(vec![0.0]),
        ),
        "abs_t" => Ok(PeriodicFunction::real("abs_t", f64::abs).with_breaks(vec![0.0])),
        "cos_plus_sin2t" => Ok(PeriodicFunction::real("cos_plus_sin2t", |t| {
            t.cos() + (2.0 * t).sin()
        })
        .with_oscillation(2.0)),
        "oscillating_g" => {
            let scheme = match params.get("scheme").copied().unwrap_or(0.0) {
                s if s == 0.0 => WitnessScheme::Harmonic,
                _ => WitnessScheme::Dyadic,
            };
            Ok(points::oscillating_witness(scheme))
        }
        "counterexample_F0" => {
            let (f_big, _) = points::counterexample_pair(&counterexample_params(params))?;
            Ok(f_big)
        }
        "counterexample_f0" => {
            let (_, f_small) = points::counterexample_pair(&counterexample_params(params))?;
            Ok(f_small)
        }
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// Resolve a full descriptor like `counterexample_f0:q=3,p=2,K=3`.
pub fn resolve(descriptor: &str) -> Result<PeriodicFunction> {
    let (name, params) = parse_descriptor(descriptor)?;
    builtin(&name, &params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_parse() {
        let (name, params) = parse_descriptor("riesz:alpha=2,beta=1.5").unwrap();
        assert_eq!(name, "riesz");
        assert_eq!(params["alpha"], 2.0);
        assert_eq!(params["beta"], 1.5);

        let (name, params) = parse_descriptor("oscillating_g:scheme=dyadic").unwrap();
        assert_eq!(name, "oscillating_g");
        assert_eq!(params["scheme"], 1.0);

        assert!(parse_descriptor("x:oops").is_err());
    }

    #[test]
    fn builtins_resolve() {
        assert!(resolve("cos").is_ok());
        assert!(resolve("const:c=2.5").is_ok());
        assert!(resolve("counterexample_f0:q=3,p=2,K=2").is_ok());
        assert!(matches!(resolve("nope"), Err(Error::UnknownName(_))));
    }
}
