//! Depth-first search over orbit variables with propagation at every node.

use std::io::Write;

use super::orbits::VarTable;
use super::propagate::{mask_vals, State};
use super::shape::Shape;
use crate::fusion::FusionTable;

/// Result of exploring one (group, duality) search space.
pub struct Outcome {
    /// Value trials performed.
    pub nodes: u64,
    /// A verified fusion table, if one was found.
    pub found: Option<FusionTable>,
    /// True iff the space was fully explored without finding a table.
    pub exhausted: bool,
}

/// Explores one search space. Branch variables are chosen by smallest
/// domain (ties to the lowest index), values ascending; each value trial
/// consumes one node of budget. Root propagation is free, so structural
/// refutations cost zero nodes.
pub fn run<'a, 'w>(
    shape: &'a Shape,
    vars: &'a VarTable,
    budget: u64,
    trace: Option<&'a mut (dyn Write + 'w)>,
) -> Outcome {
    let mut state = State::new(shape, vars, trace);
    if !state.propagate() {
        return Outcome {
            nodes: 0,
            found: None,
            exhausted: true,
        };
    }
    let mut ctx = Ctx {
        shape,
        vars,
        budget,
        nodes: 0,
        found: None,
    };
    let exhausted = dfs(&mut state, &mut ctx) && ctx.found.is_none();
    Outcome {
        nodes: ctx.nodes,
        found: ctx.found,
        exhausted,
    }
}

struct Ctx<'a> {
    shape: &'a Shape,
    vars: &'a VarTable,
    budget: u64,
    nodes: u64,
    found: Option<FusionTable>,
}

/// Returns true iff the subtree was fully explored (conflicts included);
/// false means the budget ran out or a model was found.
fn dfs(state: &mut State<'_, '_>, ctx: &mut Ctx<'_>) -> bool {
    let Some(var) = pick_branch_var(state) else {
        return leaf(state, ctx);
    };
    for val in mask_vals(state.domain(var)) {
        if ctx.nodes >= ctx.budget {
            return false;
        }
        ctx.nodes += 1;
        state.push_level();
        state.trace_branch(var, val);
        let feasible = state.assign(var, val) && state.propagate();
        let sub_exhausted = if feasible { dfs(state, ctx) } else { true };
        state.pop_level();
        if ctx.found.is_some() {
            return false;
        }
        if !sub_exhausted {
            return false;
        }
    }
    true
}

/// Smallest undetermined domain, ties broken toward the lowest variable
/// index. `None` means every variable is determined.
fn pick_branch_var(state: &State<'_, '_>) -> Option<u32> {
    let mut best: Option<(u32, u32)> = None;
    for v in 0..state.var_count() as u32 {
        let size = state.domain(v).count_ones();
        if size >= 2 && best.is_none_or(|(s, _)| size < s) {
            best = Some((size, v));
            if size == 2 {
                break; // cannot do better
            }
        }
    }
    best.map(|(_, v)| v)
}

/// All variables are determined: materialize the table and verify every
/// law independently. Verification failures prune the leaf (propagation
/// is deliberately incomplete for associativity).
fn leaf(state: &State<'_, '_>, ctx: &mut Ctx<'_>) -> bool {
    let rank = ctx.shape.rank();
    let mut tensor = vec![0u32; rank * rank * rank];
    for a in 0..rank {
        for b in 0..rank {
            for c in 0..rank {
                tensor[(a * rank + b) * rank + c] =
                    u32::from(state.value(ctx.vars.var_of(a, b, c)));
            }
        }
    }
    match FusionTable::new(
        ctx.shape.dims().to_vec(),
        ctx.shape.sigma().to_vec(),
        ctx.shape.group().clone(),
        tensor,
    ) {
        Ok(table) => {
            if table.verify().is_empty() {
                ctx.found = Some(table);
                false
            } else {
                true
            }
        }
        Err(_) => {
            debug_assert!(false, "search produced a structurally invalid table");
            true
        }
    }
}
