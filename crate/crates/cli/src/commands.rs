use clap::Subcommand;
use serde::Serialize;
use serde_json::{json, Map, Value};
use triet_core::bridge::{
    hks_check, recover_parameters, split_ternary, structural_relation, ternarize_morphisms,
    verify_invariance,
};
use triet_core::induct::{induced_map, itineraries, return_time_set, DEFAULT_CAP};
use triet_core::morph::{Morphism, Side};
use triet_core::wordstat::{
    bispecials, complexity, factors, iet_gaps, return_word_structure, rotation_distances,
    rotation_gaps, three_distance,
};
use triet_core::{Interval, QuadraticNumber, TernaryWord, ThreeIET};

use crate::{table, CliError, OutFormat, Params};

const DECIMAL_DIGITS: usize = 50;

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Keane points, itineraries and return-time pattern of the induction on [gamma, delta).
    Induce,
    /// Coding prefix of length n of the orbit of rho.
    Code,
    /// Distinct return times to [gamma, delta) and their two-integer decomposition.
    ReturnTimes,
    /// Cylinder of a factor.
    Cylinder,
    /// Number of factors of length n.
    Complexity,
    /// Return words to a factor.
    ReturnWords,
    /// Bispecial factors up to length n.
    Bispecials,
    /// Frequencies of the factors of length n.
    Frequencies,
    /// Gaps between visits of the orbit of rho to [gamma, delta); a rotation by alpha when beta is absent.
    Gaps,
    /// Distances between neighbouring orbit points; a rotation by alpha when beta is absent.
    Distances,
    /// Morphism operations.
    Morphism {
        #[command(subcommand)]
        op: MorphismOp,
    },
    /// Ternary morphism of an amicable pair (--map, --map2).
    Ternarize,
    /// Amicable pair of a ternary morphism.
    Split,
    /// Exchange parameters, intercept and homothety ratio of the word fixed by --map.
    Recover,
    /// Recovers parameters and checks the fixed point and induction up to n letters.
    Verify,
    /// Class P' membership of xi and xi^2.
    Hks,
    /// Reproduces the reference table of itinerary lengths.
    Table1,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum MorphismOp {
    /// Leftmost and rightmost conjugates with the full chain.
    Conjugate,
    /// Letterwise reversal of the images.
    Mirror,
    /// Class P decomposition p.p_a.
    #[command(name = "classp")]
    ClassP,
    /// Conjugacy to the mirror morphism.
    #[command(name = "classpprime")]
    ClassPPrime,
    /// Prefix of length n of the fixed point starting with --word.
    #[command(name = "fixedpoint")]
    FixedPoint,
}

fn value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn decimals<'a>(items: impl IntoIterator<Item = (&'a str, &'a QuadraticNumber)>) -> Value {
    let map: Map<String, Value> = items
        .into_iter()
        .map(|(k, x)| (k.to_string(), Value::String(x.to_decimal(DECIMAL_DIGITS))))
        .collect();
    Value::Object(map)
}

fn missing(flag: &str) -> CliError {
    CliError::Usage(format!("missing --{flag}"))
}

fn number(text: &Option<String>, flag: &str) -> Result<QuadraticNumber, CliError> {
    let text = text.as_deref().ok_or_else(|| missing(flag))?;
    Ok(text.parse()?)
}

fn count(n: Option<usize>, flag: &str) -> Result<usize, CliError> {
    match n {
        Some(0) => Err(CliError::Usage(format!("--{flag} must be positive"))),
        Some(n) => Ok(n),
        None => Err(missing(flag)),
    }
}

fn iet(p: &Params) -> Result<ThreeIET, CliError> {
    Ok(ThreeIET::new(number(&p.alpha, "alpha")?, number(&p.beta, "beta")?)?)
}

fn interval(p: &Params) -> Result<Interval, CliError> {
    Ok(Interval::new(number(&p.gamma, "gamma")?, number(&p.delta, "delta")?)?)
}

fn morphism(text: &Option<String>, flag: &str) -> Result<Morphism, CliError> {
    let text = text.as_deref().ok_or_else(|| missing(flag))?;
    Ok(text.parse()?)
}

fn word(p: &Params) -> Result<TernaryWord, CliError> {
    let text = p.word.as_deref().ok_or_else(|| missing("word"))?;
    Ok(text.parse()?)
}

impl Command {
    pub fn default_format(&self) -> OutFormat {
        match self {
            Command::Table1 => OutFormat::Text,
            _ => OutFormat::Json,
        }
    }

    pub fn execute(&self, p: &Params) -> Result<Value, CliError> {
        let cap = p.cap.unwrap_or(DEFAULT_CAP);
        match self {
            Command::Induce => {
                let t = iet(p)?;
                let i = interval(p)?;
                let r = itineraries(&t, &i, cap)?;
                let map = induced_map(&t, &i, cap)?;
                let k = &r.keane;
                let mut out = value(&r);
                out["words"] = value(r.words());
                out["lengths"] = value(r.lengths());
                out["ordering"] = value(k.ordering());
                out["inducedMap"] = value(&map);
                out["decimal"] = decimals([
                    ("aHat", &k.a_hat),
                    ("bHat", &k.b_hat),
                    ("cHat", &k.c_hat),
                    ("dHat", &k.d_hat),
                ]);
                Ok(out)
            }
            Command::Code => {
                let t = iet(p)?;
                let rho = number(&p.rho, "rho")?;
                let n = count(p.n, "n")?;
                Ok(json!({ "rho": rho, "n": n, "word": t.code_prefix(&rho, n)? }))
            }
            Command::ReturnTimes => Ok(value(return_time_set(&iet(p)?, &interval(p)?, cap)?)),
            Command::Cylinder => {
                let t = iet(p)?;
                let w = word(p)?;
                let cyl = t
                    .cylinder(&w)
                    .ok_or_else(|| triet_core::Error::NotAFactor(w.to_string()))?;
                Ok(json!({
                    "word": w,
                    "cylinder": cyl,
                    "length": cyl.length(),
                    "decimal": decimals([("gamma", cyl.gamma()), ("delta", cyl.delta())]),
                }))
            }
            Command::Complexity => {
                let t = iet(p)?;
                let n = count(p.n, "n")?;
                Ok(json!({ "n": n, "complexity": complexity(&t, n)? }))
            }
            Command::ReturnWords => {
                let t = iet(p)?;
                let w = word(p)?;
                let (words, tag) = return_word_structure(&t, &w, cap)?;
                let distinct: std::collections::BTreeSet<_> = words.iter().collect();
                Ok(json!({ "word": w, "itineraries": words, "returnWords": distinct, "caseTag": tag }))
            }
            Command::Bispecials => {
                let t = iet(p)?;
                let n = count(p.n, "n")?;
                Ok(json!({ "maxLength": n, "bispecials": bispecials(&t, n, cap)? }))
            }
            Command::Frequencies => {
                let t = iet(p)?;
                let n = count(p.n, "n")?;
                let list: Vec<Value> = factors(&t, n)?
                    .into_iter()
                    .map(|(w, cyl)| json!({ "word": w, "frequency": cyl.length() }))
                    .collect();
                let distinct: std::collections::BTreeSet<QuadraticNumber> = list
                    .iter()
                    .map(|f| f["frequency"].as_str().expect("string").parse().expect("canonical"))
                    .collect();
                Ok(json!({ "n": n, "factors": list, "distinct": distinct }))
            }
            Command::Gaps => {
                let rho = number(&p.rho, "rho")?;
                let i = interval(p)?;
                let n = count(p.n, "n")?;
                let report = if p.beta.is_some() {
                    iet_gaps(&iet(p)?, &rho, &i, n, cap)?
                } else {
                    rotation_gaps(&number(&p.alpha, "alpha")?, &rho, &i, n)?
                };
                Ok(value(report))
            }
            Command::Distances => {
                let rho = number(&p.rho, "rho")?;
                let n = count(p.n, "n")?;
                let report = if p.beta.is_some() {
                    three_distance(&iet(p)?, &rho, n)?
                } else {
                    rotation_distances(&number(&p.alpha, "alpha")?, &rho, n)?
                };
                let mut out = value(&report);
                out["decimal"] = Value::Array(
                    report
                        .values
                        .iter()
                        .map(|v| Value::String(v.to_decimal(DECIMAL_DIGITS)))
                        .collect(),
                );
                Ok(out)
            }
            Command::Morphism { op } => morphism_op(*op, p),
            Command::Ternarize => {
                let phi = morphism(&p.map, "map")?;
                let psi = morphism(&p.map2, "map2")?;
                let eta = ternarize_morphisms(&phi, &psi);
                Ok(json!({ "phi": phi, "psi": psi, "amicable": eta.is_some(), "eta": eta }))
            }
            Command::Split => {
                let eta = morphism(&p.map, "map")?;
                let parts = split_ternary(&eta);
                Ok(json!({
                    "eta": eta,
                    "phi": parts.as_ref().map(|(phi, _)| phi),
                    "psi": parts.as_ref().map(|(_, psi)| psi),
                }))
            }
            Command::Recover => {
                let xi = morphism(&p.map, "map")?;
                let r = recover_parameters(&xi)?;
                let mut out = value(&r);
                out["structuralRelation"] = value(format!("{:?}", structural_relation(&r.eta)));
                out["decimal"] = decimals([
                    ("alpha", &r.alpha),
                    ("beta", &r.beta),
                    ("rho", &r.rho),
                    ("lambda", &r.lambda),
                ]);
                Ok(out)
            }
            Command::Verify => {
                let xi = morphism(&p.map, "map")?;
                let n = count(p.n, "n")?;
                let r = recover_parameters(&xi)?;
                let checks = verify_invariance(&r, n)?;
                let mut out = value(&checks);
                out["n"] = json!(n);
                out["all"] = json!(checks.all());
                Ok(out)
            }
            Command::Hks => Ok(value(hks_check(&morphism(&p.map, "map")?)?)),
            Command::Table1 => {
                let alpha = p.alpha.clone().unwrap_or_else(|| table::ALPHA.into());
                let beta = p.beta.clone().unwrap_or_else(|| table::BETA.into());
                let t = ThreeIET::new(alpha.parse()?, beta.parse()?)?;
                table::run(&t, cap)
            }
        }
    }
}

fn morphism_op(op: MorphismOp, p: &Params) -> Result<Value, CliError> {
    let phi = morphism(&p.map, "map")?;
    match op {
        MorphismOp::Conjugate => {
            let (left, left_cert) = phi.extreme_conjugate(Side::Left)?;
            let (right, right_cert) = phi.extreme_conjugate(Side::Right)?;
            let (chain, moved) = phi.conjugate_chain()?;
            Ok(json!({
                "map": phi,
                "leftmost": { "morphism": left, "certificate": left_cert },
                "rightmost": { "morphism": right, "certificate": right_cert },
                "chain": chain,
                "moved": moved.iter().collect::<String>(),
            }))
        }
        MorphismOp::Mirror => Ok(json!({ "map": phi, "mirror": phi.mirror() })),
        MorphismOp::ClassP => {
            let cert = phi.class_p();
            Ok(json!({ "map": phi, "classP": cert.is_some(), "certificate": cert }))
        }
        MorphismOp::ClassPPrime => {
            let cert = phi.class_p_prime()?;
            Ok(json!({ "map": phi, "classPPrime": cert.is_some(), "certificate": cert }))
        }
        MorphismOp::FixedPoint => {
            let seed = p.word.as_deref().ok_or_else(|| missing("word"))?;
            let mut chars = seed.chars();
            let (Some(c), None) = (chars.next(), chars.next()) else {
                return Err(CliError::Usage("--word must be a single letter".into()));
            };
            let n = count(p.n, "n")?;
            Ok(json!({ "map": phi, "seed": seed, "prefix": phi.fixed_point_prefix(c, n)? }))
        }
    }
}

/// Human-oriented rendering; not a stable format.
pub fn to_text(v: &Value) -> String {
    if let Some(summary) = v.get("summary").and_then(Value::as_str) {
        let mut lines: Vec<String> = v["rows"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|row| {
                format!(
                    "[{}, {})  {}  {}  {}",
                    scalar(&row["gamma"]),
                    scalar(&row["delta"]),
                    scalar(&row["ordering"]),
                    scalar(&row["lengths"]),
                    if row["match"] == true { "ok" } else { "MISMATCH" }
                )
            })
            .collect();
        lines.push(summary.to_string());
        return lines.join("\n");
    }
    let mut lines = Vec::new();
    flatten("", v, &mut lines);
    lines.join("\n")
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (k, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{k}]"), x, out);
            }
        }
        other => out.push(format!("{prefix}: {}", scalar(other))),
    }
}
