//! JSON views of core results. Every payload carries [`SCHEMA`].

use serde_json::{json, Map, Value};

use knotperi_core::arcs::{ArcInstance, ArcKind, ArcParams, Theorem2Report};
use knotperi_core::diagram::{LabeledDiagram, ValidationReport};
use knotperi_core::geodesic::{Rewrite, RewriteKind};
use knotperi_core::peripheral::{ConjugacyVerdict, FundamentalBlock, PeripheralVerdict};
use knotperi_core::presentation::{SmallCancellationReport, SymmetrizedPresentation};
use knotperi_core::Word;

pub const SCHEMA: &str = "knotperi/1";

/// `{schema, command, ...body}`.
pub fn envelope(command: &str, body: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    if let Value::Object(b) = body {
        m.extend(b);
    }
    Value::Object(m)
}

pub fn word(w: &Word) -> Value {
    json!(w.to_string())
}

pub fn diagram(d: &LabeledDiagram) -> Value {
    json!({
        "pd": d.pd().to_string(),
        "crossings": d.n(),
        "regions": d.region_count(),
        "outer_region": d.outer_region(),
        "outer_choice": d.outer_choice(),
        "basepoint_edge": d.basepoint_edge(),
    })
}

pub fn validation(r: &ValidationReport) -> Value {
    json!({
        "valid": r.is_valid(),
        "alternating": r.alternating,
        "reduced": r.reduced,
        "prime": r.prime,
        "connected": r.connected,
        "problems": r.problems,
    })
}

pub fn small_cancellation(r: &SmallCancellationReport) -> Value {
    let pairs = |v: &[(knotperi_core::Letter, knotperi_core::Letter)]| -> Vec<String> {
        v.iter().map(|(a, b)| format!("{a} {b}")).collect()
    };
    json!({
        "grid": r.is_grid(),
        "c4_violations": pairs(&r.c4_violations),
        "t4_violations": pairs(&r.t4_violations),
        "coloring": r.coloring,
    })
}

pub fn presentation(p: &SymmetrizedPresentation) -> Value {
    let relators: Vec<Value> = p
        .relators()
        .iter()
        .map(|r| json!({ "crossing": r.crossing, "word": r.word().to_string() }))
        .collect();
    json!({ "generators": p.generator_count(), "relators": relators })
}

pub fn rewrite(r: &Rewrite) -> Value {
    let kind = match r.kind {
        RewriteKind::Free => "free",
        RewriteKind::Chain => "chain",
    };
    json!({ "kind": kind, "span": [r.span.0, r.span.1], "replacement": word(&r.replacement) })
}

pub fn verdict(v: &PeripheralVerdict) -> Value {
    json!({
        "peripheral": v.peripheral,
        "a": v.a,
        "b": v.b,
        "endpoint": v.endpoint.map(|(x, y)| [x, y]),
    })
}

pub fn conjugacy(c: &ConjugacyVerdict) -> Value {
    let mut v = verdict(&c.verdict);
    v["offset"] = json!(c.offset);
    v["witness"] = json!(c.witness.as_ref().map(|w| w.to_string()));
    v
}

pub fn block(b: &FundamentalBlock) -> Value {
    json!({ "verticals": b.verticals(), "tops": b.tops(), "bottoms": b.bottoms() })
}

pub fn params(p: &ArcParams) -> Value {
    match *p {
        ArcParams::Prefix { p } => json!({ "form": "prefix", "p": p }),
        ArcParams::UpperReturn { k } => json!({ "form": "upper_return", "k": k }),
        ArcParams::LowerReturn { k, region } => json!({ "form": "lower_return", "k": k, "region": region }),
        ArcParams::Regions { first, second, upper } => {
            json!({ "form": "regions", "first": first, "second": second, "upper": upper })
        }
        ArcParams::Region { region, upper } => json!({ "form": "region", "region": region, "upper": upper }),
        ArcParams::Jump { crossing, from, to, forward } => {
            json!({ "form": "jump", "crossing": crossing, "from": from, "to": to, "forward": forward })
        }
    }
}

pub fn arc(a: &ArcInstance) -> Value {
    let mut v = json!({
        "kind": a.kind.name(),
        "params": params(&a.params),
        "word": word(&a.word),
        "verdict": verdict(&a.verdict),
        "paper_asserted": a.paper_asserted,
    });
    if let Some(c) = &a.conjugate {
        v["conjugate"] = conjugacy(c);
    }
    v
}

pub fn theorem2(r: &Theorem2Report) -> Value {
    let mut families = Map::new();
    for (kind, f) in ArcKind::ALL.iter().zip(&r.families) {
        families.insert(
            kind.name().into(),
            json!({ "total": f.total, "asserted": f.asserted, "failures": f.failures }),
        );
    }
    json!({
        "passed": r.passed(),
        "families": families,
        "failures": r.failures.iter().map(arc).collect::<Vec<_>>(),
        "informational": r.informational.iter().map(arc).collect::<Vec<_>>(),
    })
}
