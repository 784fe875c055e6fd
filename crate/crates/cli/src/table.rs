use serde_json::{json, Value};
use triet_core::induct::itineraries;
use triet_core::{Interval, QuadraticNumber, ThreeIET};

use crate::CliError;

pub const ALPHA: &str = "1/5*sqrt(5) - 1/5";
pub const BETA: &str = "1/3 + 1/6*sqrt(5)";

/// `(gamma, delta, Keane ordering, itinerary lengths)` for the reference
/// parameters above.
pub const ROWS: [(&str, &str, &str, [usize; 5]); 12] = [
    ("6/25", "99/100", "a<b<d<c", [2, 1, 2, 3, 1]),
    ("29/100", "71/100", "d<c<a<b", [1, 15, 14, 13, 14]),
    ("77/100", "4/5", "b<a<d<c", [88, 89, 88, 109, 21]),
    ("7/25", "3/4", "d<c<b<a", [1, 13, 12, 13, 12]),
    ("1/100", "3/4", "a<d<b<c", [2, 1, 2, 3, 1]),
    ("1/100", "29/100", "d<a<c<b", [2, 14, 13, 11, 12]),
    ("1/4", "99/100", "b<d<a<c", [1, 2, 3, 2, 1]),
    ("71/100", "99/100", "d<b<c<a", [2, 13, 14, 12, 11]),
    ("1/25", "37/50", "a<d<c<b", [2, 1, 4, 2, 3]),
    ("29/100", "99/100", "b<d<c<a", [1, 2, 4, 3, 2]),
    ("1/100", "99/100", "d<a<b<c", [1, 2, 1, 2, 1]),
    ("1/4", "3/4", "d<b<a<c", [1, 12, 13, 12, 11]),
];

fn parse(s: &str) -> QuadraticNumber {
    s.parse().expect("built-in literal")
}

pub fn run(t: &ThreeIET, cap: usize) -> Result<Value, CliError> {
    let mut rows = Vec::new();
    let mut matched = 0;
    for (gamma, delta, ordering, lengths) in ROWS {
        let r = itineraries(t, &Interval::new(parse(gamma), parse(delta))?, cap)?;
        let ok = r.keane.ordering() == ordering && r.lengths() == lengths;
        matched += usize::from(ok);
        rows.push(json!({
            "gamma": gamma,
            "delta": delta,
            "expectedOrdering": ordering,
            "expectedLengths": lengths,
            "ordering": r.keane.ordering(),
            "lengths": r.lengths(),
            "match": ok,
        }));
    }
    Ok(json!({
        "alpha": t.alpha(),
        "beta": t.beta(),
        "matched": matched,
        "total": ROWS.len(),
        "rows": rows,
        "summary": format!("{matched}/{} rows match", ROWS.len()),
    }))
}
