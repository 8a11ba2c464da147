//! Length-bounded simple path enumeration.
//!
//! The routing machinery works over an explicit list of candidate paths per
//! vertex pair; with hop budgets around six this is exact small-scale ground
//! truth. A hard cap on the number of emitted paths turns combinatorial
//! blowups into a resource error instead of an endless walk.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::scalar::Scalar;

pub const DEFAULT_PATH_BUDGET: usize = 1_000_000;

/// All simple paths from `u` to `v` with at most `max_hops` edges, in
/// DFS order over sorted adjacency (deterministic). Fails with a resource
/// error once more than `budget` paths would be produced.
pub fn enumerate_paths<S: Scalar>(
    g: &Graph<S>,
    u: VertexId,
    v: VertexId,
    max_hops: u32,
    budget: usize,
) -> Result<Vec<Vec<VertexId>>> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if !g.is_unit() {
        return Err(Error::RequiresUnitLengths);
    }
    let mut paths = Vec::new();
    let mut stack = vec![u];
    let mut on_path = vec![false; g.vertex_count()];
    on_path[u] = true;
    dfs(g, u, v, max_hops, budget, &mut stack, &mut on_path, &mut paths)?;
    Ok(paths)
}

#[allow(clippy::too_many_arguments)]
fn dfs<S: Scalar>(
    g: &Graph<S>,
    current: VertexId,
    target: VertexId,
    hops_left: u32,
    budget: usize,
    stack: &mut Vec<VertexId>,
    on_path: &mut [bool],
    paths: &mut Vec<Vec<VertexId>>,
) -> Result<()> {
    if current == target && stack.len() > 1 {
        if paths.len() >= budget {
            return Err(Error::PathBudgetExceeded { u: stack[0], v: target, budget });
        }
        paths.push(stack.clone());
        return Ok(());
    }
    if hops_left == 0 {
        return Ok(());
    }
    for &(w, _) in g.neighbors(current) {
        if w == current || on_path[w] {
            continue;
        }
        stack.push(w);
        on_path[w] = true;
        dfs(g, w, target, hops_left - 1, budget, stack, on_path, paths)?;
        on_path[w] = false;
        stack.pop();
    }
    Ok(())
}
