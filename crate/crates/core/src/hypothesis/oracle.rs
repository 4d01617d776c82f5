//! Exact supremum over indicator sets of a finite window domain.
//!
//! For discrete samples the hypothesis class "all subsets of the window
//! domain" attains its supremum on the set `{v : p(v) > q(v)}`, so the
//! supremum equals the total variation distance between the two window
//! histograms. That identity is what makes an exact, brute-force-free
//! oracle possible; the brute-force equivalence is property-tested.

use crate::error::{Error, Result};
use crate::sample::WindowSet;
use std::collections::BTreeMap;

fn window_key(window: &[f64]) -> Vec<i64> {
    window.iter().map(|&v| v as i64).collect()
}

/// Joint histogram of window values: key -> (class-1 count, class-0 count).
/// Keys are ordered, which fixes the summation order of [`exact_tv`].
pub(crate) fn window_histogram(ws: &WindowSet) -> BTreeMap<Vec<i64>, (u64, u64)> {
    let mut hist: BTreeMap<Vec<i64>, (u64, u64)> = BTreeMap::new();
    for w in ws.class1_windows() {
        hist.entry(window_key(w)).or_insert((0, 0)).0 += 1;
    }
    for w in ws.class0_windows() {
        hist.entry(window_key(w)).or_insert((0, 0)).1 += 1;
    }
    hist
}

/// Total variation distance between the class-1 and class-0 window
/// histograms: `1/2 * sum_v |p(v) - q(v)|`. Equals the supremum of the
/// weighted mean gap over every indicator set of the window domain.
pub fn exact_tv(ws: &WindowSet) -> Result<f64> {
    if !ws.is_discrete() {
        return Err(Error::OracleRequiresDiscreteAlphabet);
    }
    let hist = window_histogram(ws);
    let n1 = ws.class1_count() as f64;
    let n0 = ws.class0_count() as f64;
    let mut acc = 0.0;
    for &(c1, c0) in hist.values() {
        acc += (c1 as f64 / n1 - c0 as f64 / n0).abs();
    }
    Ok((0.5 * acc).clamp(0.0, 1.0))
}
