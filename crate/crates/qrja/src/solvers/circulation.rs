//! Exact ℓ1 ratings via minimum-cost circulation.
//!
//! The LP dual of the weighted ℓ1 objective is `max Σ fᵢ·yᵢ` over
//! circulations with conservation at every candidate and `|fᵢ| ≤ wᵢ` per
//! judgment. Each judgment becomes an arc pair: `a→b` with capacity `w` and
//! cost `−y`, and `b→a` with capacity `w` and cost `+y`; the signed dual
//! variable is the difference of the two arc flows. A primal network simplex
//! solves the circulation; its optimal node potentials satisfy complementary
//! slackness with the arc flows, which makes them exactly the ratings.
//!
//! Entering arcs are chosen Bland-style (lowest index with an out-of-kilter
//! reduced cost), which rules out cycling and keeps runs deterministic.
//! An artificial zero-cost, zero-flow star around a root node provides the
//! initial spanning tree; artificial arcs are never eligible to enter, and
//! once one leaves the basis it stays out.

use crate::instance::{normalize_gauge, qrja_loss, LossSpec, QrjaInstance};

use super::{SolveOptions, SolveResult, SolverError};

#[derive(Clone, Copy, PartialEq)]
enum ArcState {
    Lower,
    Tree,
    Upper,
}

pub fn solve_l1(instance: &QrjaInstance, opts: &SolveOptions) -> Result<SolveResult, SolverError> {
    opts.validate()?;
    let n = instance.candidate_count();
    let m = instance.judgment_count();

    if m == 0 {
        let x = normalize_gauge(&vec![0.0; n], instance).expect("lengths match");
        return Ok(SolveResult {
            x,
            loss: 0.0,
            iterations: 0,
            converged: true,
            dual_objective: Some(0.0),
        });
    }

    let root = n;
    let node_count = n + 1;
    let real_arcs = 2 * m;
    let arc_count = real_arcs + n;

    let mut tail = vec![0usize; arc_count];
    let mut head = vec![0usize; arc_count];
    let mut cap = vec![0.0f64; arc_count];
    let mut cost = vec![0.0f64; arc_count];
    for (i, j) in instance.judgments().iter().enumerate() {
        tail[2 * i] = j.a;
        head[2 * i] = j.b;
        cap[2 * i] = j.w;
        cost[2 * i] = -j.y;
        tail[2 * i + 1] = j.b;
        head[2 * i + 1] = j.a;
        cap[2 * i + 1] = j.w;
        cost[2 * i + 1] = j.y;
    }
    for v in 0..n {
        let a = real_arcs + v;
        tail[a] = v;
        head[a] = root;
        cap[a] = f64::INFINITY;
        cost[a] = 0.0;
    }

    let mut flow = vec![0.0f64; arc_count];
    let mut state = vec![ArcState::Lower; arc_count];
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); node_count];
    for v in 0..n {
        let a = real_arcs + v;
        state[a] = ArcState::Tree;
        adj[v].push((root, a));
        adj[root].push((v, a));
    }

    let mut parent = vec![usize::MAX; node_count];
    let mut parent_arc = vec![usize::MAX; node_count];
    let mut depth = vec![0usize; node_count];
    let mut pot = vec![0.0f64; node_count];
    rebuild_tree(root, &adj, &tail, &cost, &mut parent, &mut parent_arc, &mut depth, &mut pot);

    let cost_scale = cost[..real_arcs].iter().fold(1.0f64, |s, c| s.max(c.abs()));
    let eps = 1e-10 * cost_scale;

    let pivot_cap = opts.max_iterations.max(50 * (arc_count + node_count));
    let mut pivots = 0usize;
    let mut converged = false;

    loop {
        // Bland's rule over real arcs: lowest index violating optimality.
        let mut entering = None;
        for a in 0..real_arcs {
            let rc = cost[a] + pot[tail[a]] - pot[head[a]];
            let violates = match state[a] {
                ArcState::Lower => rc < -eps,
                ArcState::Upper => rc > eps,
                ArcState::Tree => false,
            };
            if violates {
                entering = Some(a);
                break;
            }
        }
        let Some(e) = entering else {
            converged = true;
            break;
        };
        if pivots >= pivot_cap {
            break;
        }
        pivots += 1;

        // Flow-increase direction around the cycle.
        let from_lower = state[e] == ArcState::Lower;
        let (u_from, v_to) = if from_lower { (tail[e], head[e]) } else { (head[e], tail[e]) };

        // Residual of the entering arc itself.
        let enter_residual = if from_lower { cap[e] - flow[e] } else { flow[e] };
        let mut delta = enter_residual;
        let mut leaving = e;
        let mut leaving_to_upper = from_lower; // if e blocks itself it lands at the other bound

        // Walk both endpoints up to the least common ancestor, tracking the
        // tightest residual. On the v_to side flow runs child→parent; on the
        // u_from side it runs parent→child.
        let consider = |arc: usize,
                        increase: bool,
                        delta: &mut f64,
                        leaving: &mut usize,
                        leaving_to_upper: &mut bool| {
            let residual = if increase { cap[arc] - flow[arc] } else { flow[arc] };
            if residual < *delta - 1e-15 || (residual <= *delta + 1e-15 && arc < *leaving) {
                *delta = residual.min(*delta);
                *leaving = arc;
                *leaving_to_upper = increase;
            }
        };

        let mut zu = u_from;
        let mut zv = v_to;
        while depth[zv] > depth[zu] {
            let a = parent_arc[zv];
            consider(a, tail[a] == zv, &mut delta, &mut leaving, &mut leaving_to_upper);
            zv = parent[zv];
        }
        while depth[zu] > depth[zv] {
            let a = parent_arc[zu];
            consider(a, head[a] == zu, &mut delta, &mut leaving, &mut leaving_to_upper);
            zu = parent[zu];
        }
        while zu != zv {
            let av = parent_arc[zv];
            consider(av, tail[av] == zv, &mut delta, &mut leaving, &mut leaving_to_upper);
            zv = parent[zv];
            let au = parent_arc[zu];
            consider(au, head[au] == zu, &mut delta, &mut leaving, &mut leaving_to_upper);
            zu = parent[zu];
        }
        let lca = zu;
        let delta = delta.max(0.0);

        // Apply the flow change around the cycle.
        if from_lower {
            flow[e] += delta;
        } else {
            flow[e] -= delta;
        }
        let mut z = v_to;
        while z != lca {
            let a = parent_arc[z];
            if tail[a] == z {
                flow[a] += delta;
            } else {
                flow[a] -= delta;
            }
            z = parent[z];
        }
        z = u_from;
        while z != lca {
            let a = parent_arc[z];
            if head[a] == z {
                flow[a] += delta;
            } else {
                flow[a] -= delta;
            }
            z = parent[z];
        }

        if leaving == e {
            // Entering arc saturated before reaching the tree: bound flip only.
            state[e] = if from_lower { ArcState::Upper } else { ArcState::Lower };
            flow[e] = if from_lower { cap[e] } else { 0.0 };
            continue;
        }

        // Basis exchange: snap the leaving arc onto its bound exactly.
        state[leaving] = if leaving_to_upper { ArcState::Upper } else { ArcState::Lower };
        flow[leaving] = if leaving_to_upper { cap[leaving] } else { 0.0 };
        let (lu, lv) = (tail[leaving], head[leaving]);
        adj[lu].retain(|&(_, a)| a != leaving);
        adj[lv].retain(|&(_, a)| a != leaving);
        state[e] = ArcState::Tree;
        adj[tail[e]].push((head[e], e));
        adj[head[e]].push((tail[e], e));

        rebuild_tree(root, &adj, &tail, &cost, &mut parent, &mut parent_arc, &mut depth, &mut pot);
    }

    let x_raw: Vec<f64> = pot[..n].to_vec();
    let x = normalize_gauge(&x_raw, instance).expect("lengths match");
    let loss = qrja_loss(instance, x.values(), &LossSpec::l1()).expect("lengths match");
    let mut dual = 0.0;
    for (i, j) in instance.judgments().iter().enumerate() {
        let f = flow[2 * i] - flow[2 * i + 1];
        dual += f * j.y;
    }
    Ok(SolveResult {
        x,
        loss,
        iterations: pivots,
        converged,
        dual_objective: Some(dual),
    })
}

/// Recomputes parent pointers, depths, and potentials by a DFS over the
/// current spanning tree. Tree arcs have zero reduced cost, so an arc t→h
/// pins `pot[h] = pot[t] + cost`.
#[allow(clippy::too_many_arguments)]
fn rebuild_tree(
    root: usize,
    adj: &[Vec<(usize, usize)>],
    tail: &[usize],
    cost: &[f64],
    parent: &mut [usize],
    parent_arc: &mut [usize],
    depth: &mut [usize],
    pot: &mut [f64],
) {
    parent[root] = root;
    parent_arc[root] = usize::MAX;
    depth[root] = 0;
    pot[root] = 0.0;
    let mut stack = vec![root];
    let mut visited = vec![false; adj.len()];
    visited[root] = true;
    while let Some(z) = stack.pop() {
        for &(w, a) in &adj[z] {
            if visited[w] {
                continue;
            }
            visited[w] = true;
            parent[w] = z;
            parent_arc[w] = a;
            depth[w] = depth[z] + 1;
            pot[w] = if tail[a] == z { pot[z] + cost[a] } else { pot[z] - cost[a] };
            stack.push(w);
        }
    }
}
