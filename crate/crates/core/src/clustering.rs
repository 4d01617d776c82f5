//! Distance-based clustering of time-series samples: average linkage and
//! farthest-point for a known cluster count, threshold clustering for an
//! unknown count, and permutation-invariant error scoring.

use crate::error::{Error, Result};
use crate::telescope::DistanceMatrix;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A partition of the samples into `K` non-empty clusters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clustering {
    #[serde(rename = "K")]
    k: usize,
    assignment: BTreeMap<String, usize>,
}

impl Clustering {
    pub fn new(k: usize, assignment: BTreeMap<String, usize>) -> Result<Self> {
        if k == 0 || assignment.is_empty() {
            return Err(Error::InvalidClustering("need at least one cluster and one sample".into()));
        }
        let mut seen = vec![false; k];
        for (id, &c) in &assignment {
            if c >= k {
                return Err(Error::InvalidClustering(format!("sample `{id}` has cluster {c} >= K = {k}")));
            }
            seen[c] = true;
        }
        if let Some(empty) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidClustering(format!("cluster {empty} is empty")));
        }
        Ok(Clustering { k, assignment })
    }

    /// Build from per-position labels aligned with `ids`.
    pub fn from_labels(ids: &[String], labels: &[usize]) -> Result<Self> {
        let k = labels.iter().copied().max().map_or(0, |m| m + 1);
        let assignment = ids.iter().cloned().zip(labels.iter().copied()).collect();
        Clustering::new(k, assignment)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn assignment(&self) -> &BTreeMap<String, usize> {
        &self.assignment
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn cluster_of(&self, id: &str) -> Option<usize> {
        self.assignment.get(id).copied()
    }
}

/// Relabel `labels` so cluster indices are ordered by smallest member
/// position; returns the number of clusters.
fn canonicalize(labels: &mut [usize]) -> usize {
    let mut remap: Vec<Option<usize>> = vec![None; labels.len()];
    let mut next = 0;
    for l in labels.iter_mut() {
        let slot = &mut remap[*l];
        if slot.is_none() {
            *slot = Some(next);
            next += 1;
        }
        *l = slot.unwrap();
    }
    next
}

/// Agglomerative clustering: start from singletons and repeatedly merge the
/// two clusters at smallest average inter-cluster distance until `k`
/// remain. Merge ties pick the lexicographically smallest pair of smallest
/// member indices. Output cluster indices are ordered by smallest member.
pub fn average_linkage(dm: &DistanceMatrix, k: usize) -> Result<Clustering> {
    let n = dm.len();
    if k == 0 || k > n {
        return Err(Error::MoreClustersThanSamples { k, n });
    }
    // members[c] stays sorted; pair_sum[c][c2] is the sum of the original
    // pairwise distances between the two clusters, so the average is exact
    // under Lance-Williams merging.
    let mut members: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut pair_sum: Vec<Vec<f64>> =
        (0..n).map(|i| (0..n).map(|j| dm.get(i, j)).collect()).collect();
    let mut alive: Vec<bool> = vec![true; n];
    let mut remaining = n;

    while remaining > k {
        let mut best: Option<(f64, usize, usize, usize, usize)> = None;
        for a in 0..n {
            if !alive[a] {
                continue;
            }
            for b in a + 1..n {
                if !alive[b] {
                    continue;
                }
                let avg = pair_sum[a][b] / (members[a].len() * members[b].len()) as f64;
                let ma = members[a][0].min(members[b][0]);
                let mb = members[a][0].max(members[b][0]);
                let candidate = (avg, ma, mb, a, b);
                best = match best {
                    None => Some(candidate),
                    Some(cur) => {
                        if (avg, ma, mb) < (cur.0, cur.1, cur.2) {
                            Some(candidate)
                        } else {
                            Some(cur)
                        }
                    }
                };
            }
        }
        let (_, _, _, a, b) = best.expect("at least two clusters remain");
        let moved = std::mem::take(&mut members[b]);
        members[a].extend(moved);
        members[a].sort_unstable();
        alive[b] = false;
        for c in 0..n {
            if alive[c] && c != a {
                let s = pair_sum[b][c];
                pair_sum[a][c] += s;
                pair_sum[c][a] = pair_sum[a][c];
            }
        }
        remaining -= 1;
    }

    let mut labels = vec![0usize; n];
    for (cluster, m) in members.iter().enumerate().filter(|(c, _)| alive[*c]).map(|(_, m)| m).enumerate()
    {
        for &i in m {
            labels[i] = cluster;
        }
    }
    canonicalize(&mut labels);
    Clustering::from_labels(dm.ids(), &labels)
}

/// Farthest-point clustering: the first sample seeds the first center; each
/// further center maximizes the minimum distance to the chosen centers
/// (ties to the smallest index). Centers keep their own cluster index in
/// selection order; remaining points go to the nearest center, ties to the
/// smallest center index.
pub fn farthest_point(dm: &DistanceMatrix, k: usize) -> Result<Clustering> {
    let n = dm.len();
    if k == 0 || k > n {
        return Err(Error::MoreClustersThanSamples { k, n });
    }
    let mut centers = vec![0usize];
    let mut min_dist: Vec<f64> = (0..n).map(|j| dm.get(j, 0)).collect();
    while centers.len() < k {
        let mut best: Option<(f64, usize)> = None;
        for j in 0..n {
            if centers.contains(&j) {
                continue;
            }
            if best.map_or(true, |(bd, _)| min_dist[j] > bd) {
                best = Some((min_dist[j], j));
            }
        }
        let (_, next) = best.expect("k <= n leaves a candidate");
        centers.push(next);
        for j in 0..n {
            let d = dm.get(j, next);
            if d < min_dist[j] {
                min_dist[j] = d;
            }
        }
    }

    let mut labels = vec![0usize; n];
    for (c, &center) in centers.iter().enumerate() {
        labels[center] = c;
    }
    for j in 0..n {
        if centers.contains(&j) {
            continue;
        }
        let mut best_c = 0;
        let mut best_d = f64::INFINITY;
        for (c, &center) in centers.iter().enumerate() {
            let d = dm.get(j, center);
            if d < best_d {
                best_d = d;
                best_c = c;
            }
        }
        labels[j] = best_c;
    }
    Clustering::from_labels(dm.ids(), &labels)
}

/// Unknown-count clustering: connected components of the graph with an
/// edge wherever the distance is at most `epsilon`. Component indices are
/// ordered by smallest member.
pub fn threshold_clustering(dm: &DistanceMatrix, epsilon: f64) -> Result<Clustering> {
    if !(epsilon >= 0.0) {
        return Err(Error::InvalidClustering(format!("epsilon must be >= 0, got {epsilon}")));
    }
    let n = dm.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        let mut root = i;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = i;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    for i in 0..n {
        for j in i + 1..n {
            if dm.get(i, j) <= epsilon {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut labels: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    canonicalize(&mut labels);
    Clustering::from_labels(dm.ids(), &labels)
}

/// Fraction of misassigned samples, minimized over cluster-label
/// permutations (exact matching; supported up to 10 clusters).
pub fn clustering_error(found: &Clustering, truth: &Clustering) -> Result<f64> {
    if found.len() != truth.len() {
        return Err(Error::ClusteringIdMismatch(format!(
            "{} ids vs {}",
            found.len(),
            truth.len()
        )));
    }
    for id in found.assignment().keys() {
        if truth.cluster_of(id).is_none() {
            return Err(Error::ClusteringIdMismatch(format!("id `{id}` missing from truth")));
        }
    }
    let k = found.k().max(truth.k());
    if k > 10 {
        return Err(Error::InvalidClustering(format!(
            "exact permutation matching supports at most 10 clusters, got {k}"
        )));
    }
    let mut overlap = vec![vec![0u64; k]; k];
    for (id, &f) in found.assignment() {
        let t = truth.cluster_of(id).expect("checked above");
        overlap[f][t] += 1;
    }

    // Maximize matched samples over permutations of the found labels.
    fn search(overlap: &[Vec<u64>], used: &mut [bool], row: usize, acc: u64, best: &mut u64) {
        let k = overlap.len();
        if row == k {
            *best = (*best).max(acc);
            return;
        }
        // Remaining rows can each contribute at most their row maximum.
        let mut bound = acc;
        for r in row..k {
            bound += overlap[r].iter().copied().max().unwrap_or(0);
        }
        if bound <= *best {
            return;
        }
        for t in 0..k {
            if !used[t] {
                used[t] = true;
                search(overlap, used, row + 1, acc + overlap[row][t], best);
                used[t] = false;
            }
        }
    }
    let mut best = 0;
    let mut used = vec![false; k];
    search(&overlap, &mut used, 0, 0, &mut best);
    let n = found.len() as u64;
    Ok((n - best) as f64 / n as f64)
}
