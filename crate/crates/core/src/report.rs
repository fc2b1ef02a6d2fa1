//! Serializable summaries of an [`Analysis`].

use serde::Serialize;

use crate::analyzer::{Analysis, Kind, TraceNode};
use crate::funfield::ValChain;

#[derive(Clone, Debug, Serialize)]
pub struct Valuation {
    pub chain: ValChain,
    pub classification: Vec<Kind>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorEntry {
    pub element: Option<String>,
    pub phi: Option<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub genus: usize,
    pub m: usize,
    #[serde(rename = "order_G")]
    pub order_g: String,
    #[serde(rename = "order_G_int")]
    pub order_g_int: Option<u64>,
    pub bound: String,
    pub bound_int: Option<u64>,
    pub is_real: bool,
    pub pythagoras: &'static str,
    pub valuations: Vec<Valuation>,
    pub generators: Vec<GeneratorEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceNode>>,
}

fn pow2(e: usize) -> Option<u64> {
    (e < 64).then(|| 1u64 << e)
}

impl From<&Analysis> for AnalysisReport {
    fn from(a: &Analysis) -> Self {
        AnalysisReport {
            n: a.n(),
            genus: a.genus(),
            m: a.m(),
            order_g: format!("2^{}", a.m()),
            order_g_int: a.order_g(),
            bound: format!("2^{}", a.bound()),
            bound_int: pow2(a.bound()),
            is_real: a.is_real(),
            pythagoras: a.pythagoras(),
            valuations: a
                .chains
                .iter()
                .zip(&a.kinds)
                .map(|(w, k)| Valuation { chain: w.clone(), classification: k.clone() })
                .collect(),
            generators: a
                .generators
                .iter()
                .map(|g| GeneratorEntry {
                    element: g.element.as_ref().map(|e| e.to_string()),
                    phi: g.phi.clone(),
                    error: g.error.clone(),
                })
                .collect(),
            trace: a.trace.clone(),
        }
    }
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let int = |v: Option<u64>| v.map_or(String::new(), |x| format!(" = {x}"));
        s += &format!("n = {}\ngenus = {}\nm = {}\n", self.n, self.genus, self.m);
        s += &format!("order_G = {}{}\n", self.order_g, int(self.order_g_int));
        s += &format!("bound = {}{}\n", self.bound, int(self.bound_int));
        s += &format!("is_real = {}\npythagoras {}\n", self.is_real, self.pythagoras);
        s += "valuations:\n";
        for v in &self.valuations {
            let kinds: Vec<String> = v.classification.iter().map(|k| k.to_string()).collect();
            s += &format!("  {}  [{}]\n", v.chain, kinds.join(", "));
        }
        if !self.generators.is_empty() {
            s += "generators:\n";
        }
        for g in &self.generators {
            match (&g.element, &g.phi, &g.error) {
                (Some(e), Some(p), _) => s += &format!("  phi = {p:?}: {e}\n"),
                (_, _, Some(err)) => s += &format!("  failed: {err}\n"),
                _ => {}
            }
        }
        if let Some(tr) = &self.trace {
            s += "trace:\n";
            for t in tr {
                let pad = "  ".repeat(t.depth);
                let mark = if t.counted { " *" } else { "" };
                s += &format!("{pad}D({}, {}) k={} {} -> {}{mark}\n", t.center, t.scale, t.k, t.kind, t.residue);
            }
        }
        s
    }
}
