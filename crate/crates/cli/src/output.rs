//! JSON rendering for the command-line tools.
//!
//! Every number is emitted as an exact rational string ("p/q"); decimal
//! values appear only under keys named `approx`. Monomials are listed in
//! graded-lexicographic order, highest first.

use serde_json::{json, Map, Value};
use sextic_core::exact::{IsolatingInterval, MultiPoly, Rat};
use sextic_core::fpgrp::GroupFingerprint;
use sextic_core::pencil::PencilCensus;
use sextic_core::singular::SingularCensus;

/// A polynomial with rational coefficients as `{vars, monomials}`.
pub fn poly_to_json(p: &MultiPoly<Rat>) -> Value {
    let mut monomials: Vec<Value> = p
        .terms()
        .map(|(m, c)| json!({ "exps": m.exps(), "coef": c.to_string() }))
        .collect();
    monomials.reverse();
    json!({ "vars": p.vars(), "monomials": monomials })
}

fn rat_to_f64(x: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// An isolating interval: exact endpoints plus a labelled decimal.
pub fn interval_to_json(iv: &IsolatingInterval) -> Value {
    let approx = format!("{:.8}", rat_to_f64(&iv.midpoint()));
    if iv.is_exact() {
        json!({ "exact": true, "value": iv.lo.to_string(), "approx": approx })
    } else {
        json!({
            "exact": false,
            "lo": iv.lo.to_string(),
            "hi": iv.hi.to_string(),
            "approx": approx,
        })
    }
}

/// A singular-point census with one entry per classified point.
pub fn census_to_json(census: &SingularCensus) -> Value {
    let points: Vec<Value> = census
        .points
        .iter()
        .map(|p| {
            json!({
                "point": p.point.to_string(),
                "kind": p.kind.to_string(),
                "milnor": p.milnor,
                "hessian_corank": p.hessian_corank,
            })
        })
        .collect();
    let unresolved: Vec<Value> = census
        .unresolved
        .iter()
        .map(|u| {
            json!({
                "chart": u.chart,
                "residual": u.residual.to_string(),
                "degree_bound": u.multiplicity_budget(),
            })
        })
        .collect();
    json!({
        "points": points,
        "milnor_sum": census.milnor_total(),
        "unresolved": unresolved,
    })
}

/// Pencil discriminant, its factorization, and the singular fibers.
pub fn pencil_to_json(census: &PencilCensus) -> Value {
    let factors: Vec<Value> = census
        .factors
        .iter()
        .map(|(f, m)| json!({ "factor": poly_to_json(f), "multiplicity": m }))
        .collect();
    let real_values: Vec<Value> = census.real_values.iter().map(interval_to_json).collect();
    json!({
        "discriminant": poly_to_json(&census.discriminant),
        "factors": factors,
        "real_values": real_values,
        "complex_pair_count": census.complex_pair_count,
    })
}

/// Structural fingerprint of a finite group.
pub fn fingerprint_to_json(fp: &GroupFingerprint) -> Value {
    let mut histogram = Map::new();
    for (order, count) in &fp.order_histogram {
        histogram.insert(order.to_string(), json!(count));
    }
    json!({
        "order": fp.order,
        "abelian": fp.abelian,
        "center_order": fp.center_order,
        "derived_order": fp.derived_order,
        "order_histogram": histogram,
    })
}

/// Render a value honoring the `--pretty` flag.
pub fn render(value: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(value).expect("serializable value")
    } else {
        serde_json::to_string(value).expect("serializable value")
    }
}
