//! JSON encodings of library results. Exact rationals are strings such as `"3/4"`;
//! floating-point values are wrapped as `{"approx": x}`.

use blockdesign::properties::PropertyReport;
use blockdesign::vortex::PipelineReport;
use blockdesign::VertexSet;
use num::BigRational;
use serde_json::{json, Value};

pub fn rat(x: &BigRational) -> Value {
    Value::String(x.to_string())
}

fn opt_rat(x: &Option<BigRational>) -> Value {
    x.as_ref().map_or(Value::Null, rat)
}

pub fn approx(x: f64) -> Value {
    json!({ "approx": x })
}

pub fn sets(v: &[VertexSet]) -> Value {
    v.iter().map(|b| json!(b.as_slice())).collect()
}

pub fn property(p: &PropertyReport) -> Value {
    json!({
        "property": p.property,
        "pass": p.pass,
        "vacuous": p.vacuous,
        "d": opt_rat(&p.d),
        "d_min": opt_rat(&p.d_min),
        "d_max": opt_rat(&p.d_max),
        "eps": opt_rat(&p.eps),
        "xi": opt_rat(&p.xi),
        "c": opt_rat(&p.c),
        "witness_min": p.witness_min.as_deref().map(sets),
        "witness_max": p.witness_max.as_deref().map(sets),
        "parts": p.parts.iter().map(property).collect::<Vec<_>>(),
    })
}

pub fn pipeline(rep: &PipelineReport) -> Value {
    json!({
        "success": rep.success,
        "attempts": rep.attempts,
        "vortex_sizes": rep.vortex_sizes,
        "level_reached": rep.level_reached,
        "final_blocks": rep.final_blocks,
        "leftover_edges": rep.leftover.len(),
        "failure": rep.failure,
        "levels": rep.levels.iter().map(|l| json!({
            "level": l.level,
            "size": l.size,
            "next_size": l.next_size,
            "boosted": l.boosted,
            "nibble_blocks": l.nibble_blocks,
            "cover_blocks": l.cover_blocks,
            "leftover_edges": l.leftover_edges,
            "leftover_max_degree": l.leftover_max_degree,
        })).collect::<Vec<_>>(),
    })
}
