//! The arc-by-arc peripherality suite over a knot table.

use std::num::NonZeroUsize;
use std::thread;

use knotperi_core::arcs::{verify_theorem2, Theorem2Report};

use crate::table::KnotTableEntry;
use crate::Analysis;

#[derive(Debug, Clone)]
pub struct KnotReport {
    pub name: String,
    pub crossings: usize,
    pub report: Result<Theorem2Report, String>,
}

impl KnotReport {
    pub fn passed(&self) -> bool {
        self.report.as_ref().is_ok_and(|r| r.passed())
    }
}

pub fn verify_knot(entry: &KnotTableEntry) -> KnotReport {
    let report = Analysis::new(&entry.pd, None)
        .map(|a| verify_theorem2(&a.diagram, &a.presentation, &a.complex))
        .map_err(|e| e.to_string());
    KnotReport { name: entry.name.clone(), crossings: entry.crossings(), report }
}

/// Runs [`verify_knot`] over `entries` on up to `threads` workers. Results
/// come back in input order.
pub fn verify_all(entries: &[&KnotTableEntry], threads: Option<NonZeroUsize>) -> Vec<KnotReport> {
    let workers = threads
        .or_else(|| thread::available_parallelism().ok())
        .map_or(1, NonZeroUsize::get)
        .min(entries.len().max(1));
    let mut slots: Vec<Option<KnotReport>> = vec![None; entries.len()];
    thread::scope(|s| {
        let chunks: Vec<_> = slots.chunks_mut(entries.len().div_ceil(workers).max(1)).collect();
        let mut start = 0;
        for chunk in chunks {
            let part = &entries[start..start + chunk.len()];
            start += chunk.len();
            s.spawn(move || {
                for (slot, e) in chunk.iter_mut().zip(part) {
                    *slot = Some(verify_knot(e));
                }
            });
        }
    });
    slots.into_iter().map(|r| r.expect("every slot filled")).collect()
}
