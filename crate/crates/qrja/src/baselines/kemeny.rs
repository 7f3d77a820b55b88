//! Kemeny-Young rank aggregation.
//!
//! The output is a total order minimizing pairwise disagreements with the
//! input rankings. Up to 16 candidates the optimum is found exactly by
//! dynamic programming over subsets (O(2^k·k²)); larger inputs fall back to
//! local search seeded by Borda totals, with adjacent-swap and
//! single-element-move neighborhoods, and the result is flagged heuristic.
//! Ties in the objective are broken toward the lexicographically smallest
//! candidate order.

use std::collections::BTreeMap;

use super::BaselineError;

/// Exact-DP size limit; beyond this local search takes over.
const EXACT_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KemenyRanking {
    /// Candidates, best first.
    pub order: Vec<usize>,
    /// Number of pairwise disagreements with the input rankings.
    pub disagreements: u64,
    /// True when produced by the exact subset DP.
    pub exact: bool,
}

/// Aggregates strict partial rankings (each a best-first list over a subset
/// of candidates) into a total order over every candidate that appears.
pub fn kemeny_ranking(rankings: &[Vec<usize>]) -> Result<KemenyRanking, BaselineError> {
    if rankings.is_empty() || rankings.iter().all(|r| r.is_empty()) {
        return Err(BaselineError::EmptyInput);
    }
    let mut candidates: Vec<usize> = rankings.iter().flatten().copied().collect();
    candidates.sort_unstable();
    candidates.dedup();
    let index: BTreeMap<usize, usize> = candidates.iter().enumerate().map(|(i, &c)| (c, i)).collect();

    let k = candidates.len();
    // prefer[u][v] = number of rankings placing u above v.
    let mut prefer = vec![vec![0u64; k]; k];
    for ranking in rankings {
        for (i, &u) in ranking.iter().enumerate() {
            for &v in &ranking[i + 1..] {
                prefer[index[&u]][index[&v]] += 1;
            }
        }
    }
    let result = kemeny_from_preferences(&prefer)?;
    Ok(KemenyRanking {
        order: result.order.iter().map(|&i| candidates[i]).collect(),
        ..result
    })
}

/// Aggregates from a pairwise preference matrix: `prefer[u][v]` counts the
/// inputs that rank `u` above `v`. Candidates are the matrix indices.
pub fn kemeny_from_preferences(prefer: &[Vec<u64>]) -> Result<KemenyRanking, BaselineError> {
    let k = prefer.len();
    if k == 0 {
        return Err(BaselineError::EmptyInput);
    }
    if k <= EXACT_LIMIT {
        Ok(exact_subset_dp(prefer))
    } else {
        Ok(local_search(prefer))
    }
}

/// Disagreements of a fixed order: for each pair ordered (u before v) count
/// the inputs preferring v.
fn order_cost(order: &[usize], prefer: &[Vec<u64>]) -> u64 {
    let mut cost = 0;
    for (i, &u) in order.iter().enumerate() {
        for &v in &order[i + 1..] {
            cost += prefer[v][u];
        }
    }
    cost
}

fn exact_subset_dp(prefer: &[Vec<u64>]) -> KemenyRanking {
    let k = prefer.len();
    let full: usize = if k == usize::BITS as usize { usize::MAX } else { (1 << k) - 1 };

    // g[set] = minimal disagreements among pairs inside `set` when its
    // members occupy consecutive positions. Placing e at the front of `set`
    // costs the votes preferring any other member over e.
    let mut g = vec![0u64; full + 1];
    for set in 1..=full {
        let mut best = u64::MAX;
        let mut members = set;
        while members != 0 {
            let e = members.trailing_zeros() as usize;
            members &= members - 1;
            let rest = set & !(1 << e);
            let mut front_cost = 0;
            let mut others = rest;
            while others != 0 {
                let u = others.trailing_zeros() as usize;
                others &= others - 1;
                front_cost += prefer[u][e];
            }
            best = best.min(front_cost + g[rest]);
        }
        g[set] = best;
    }

    // Reconstruct front-to-back, preferring the smallest candidate index
    // among optimal choices: this yields the lexicographically smallest
    // optimal order.
    let mut order = Vec::with_capacity(k);
    let mut set = full;
    while set != 0 {
        let mut members = set;
        while members != 0 {
            let e = members.trailing_zeros() as usize;
            members &= members - 1;
            let rest = set & !(1 << e);
            let mut front_cost = 0;
            let mut others = rest;
            while others != 0 {
                let u = others.trailing_zeros() as usize;
                others &= others - 1;
                front_cost += prefer[u][e];
            }
            if front_cost + g[rest] == g[set] {
                order.push(e);
                set = rest;
                break;
            }
        }
    }
    KemenyRanking { disagreements: g[full], order, exact: true }
}

fn local_search(prefer: &[Vec<u64>]) -> KemenyRanking {
    let k = prefer.len();
    // Borda-style seed: net preference totals, descending; ties by index.
    let mut net: Vec<(i64, usize)> = (0..k)
        .map(|u| {
            let wins: i64 = (0..k).map(|v| prefer[u][v] as i64).sum();
            let losses: i64 = (0..k).map(|v| prefer[v][u] as i64).sum();
            (losses - wins, u)
        })
        .collect();
    net.sort();
    let mut order: Vec<usize> = net.into_iter().map(|(_, u)| u).collect();
    let mut cost = order_cost(&order, prefer);

    loop {
        let mut improved = false;
        // Adjacent swaps.
        for i in 0..k.saturating_sub(1) {
            let (u, v) = (order[i], order[i + 1]);
            let delta = prefer[u][v] as i64 - prefer[v][u] as i64;
            if delta < 0 {
                order.swap(i, i + 1);
                cost = (cost as i64 + delta) as u64;
                improved = true;
            }
        }
        // Single-element moves to the best position.
        for i in 0..k {
            let e = order[i];
            let mut best_j = i;
            let mut best_delta = 0i64;
            let mut delta = 0i64;
            // Moving e left past v turns the ordered pair (v, e) into (e, v).
            for j in (0..i).rev() {
                let v = order[j];
                delta += prefer[v][e] as i64 - prefer[e][v] as i64;
                if delta < best_delta {
                    best_delta = delta;
                    best_j = j;
                }
            }
            delta = 0;
            // Moving e right past v turns (e, v) into (v, e).
            for j in i + 1..k {
                let v = order[j];
                delta += prefer[e][v] as i64 - prefer[v][e] as i64;
                if delta < best_delta {
                    best_delta = delta;
                    best_j = j;
                }
            }
            if best_j != i {
                let e = order.remove(i);
                order.insert(best_j, e);
                cost = (cost as i64 + best_delta) as u64;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    debug_assert_eq!(cost, order_cost(&order, prefer));
    KemenyRanking { disagreements: cost, order, exact: false }
}
