//! Constraint propagation over orbit-variable domains.
//!
//! A [`State`] holds one domain bitmask per orbit variable (bit `v` set =
//! value `v` still possible) plus an undo trail for backtracking. Four
//! propagators narrow domains to a fixpoint:
//!
//! * **dimension-sum rows** — for each factor pair `(a,b)` the weighted
//!   sum of a row's cells must hit `dim(a)*dim(b)` exactly; a bitset
//!   reachability sweep filters every variable in the row to the values
//!   that still admit a completion;
//! * **stabilizers** — the invertibles fixing a noninvertible simple must
//!   form a subgroup of admissible order, so cells are forced toward the
//!   subgroups compatible with what is already known;
//! * **associativity** — interval bounds on both sides of each instance,
//!   plus exact filtering when a side is linear in a single undetermined
//!   variable (skipped for shapes where the sweep would dominate runtime;
//!   final tables are always independently verified);
//! * **subring divisibility** — if a simple's closure under determined
//!   products is complete, the closure is a fusion subring whose global
//!   dimension must divide the ambient one.

use std::io::Write;

use super::orbits::VarTable;
use super::shape::Shape;

/// Signals an empty domain or violated constraint; the current branch has
/// no completion.
pub struct Conflict;

/// Iterates the values present in a domain mask, ascending.
pub fn mask_vals(mask: u128) -> impl Iterator<Item = u8> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as u8;
            m &= m - 1;
            Some(v)
        }
    })
}

fn mask_min(mask: u128) -> u64 {
    u64::from(mask.trailing_zeros())
}

fn mask_max(mask: u128) -> u64 {
    u64::from(127 - mask.leading_zeros())
}

fn fmt_mask(mask: u128) -> String {
    let count = mask.count_ones();
    if count > 6 {
        format!("{{{}..{} ({} values)}}", mask_min(mask), mask_max(mask), count)
    } else {
        let vals: Vec<String> = mask_vals(mask).map(|v| v.to_string()).collect();
        format!("{{{}}}", vals.join(","))
    }
}

/// Skip the associativity sweep when `noninvertible^3 * rank` exceeds this;
/// the leaf verifier still enforces the law on any model found.
const ASSOC_SWEEP_LIMIT: u64 = 50_000;

/// Search state: current domains, undo trail, and propagation queue.
pub struct State<'a, 'w> {
    shape: &'a Shape,
    vars: &'a VarTable,
    domains: Vec<u128>,
    /// `(var, previous domain)` entries for backtracking.
    trail: Vec<(u32, u128)>,
    /// Trail length at each open decision level.
    levels: Vec<usize>,
    /// Dirty row worklist.
    queue: std::collections::VecDeque<u32>,
    in_queue: Vec<bool>,
    /// Global dimension of the signature.
    global: u64,
    assoc_enabled: bool,
    step: u64,
    trace: Option<&'a mut (dyn Write + 'w)>,
}

impl<'a, 'w> State<'a, 'w> {
    pub fn new(
        shape: &'a Shape,
        vars: &'a VarTable,
        trace: Option<&'a mut (dyn Write + 'w)>,
    ) -> Self {
        let noninv = (shape.rank() - shape.n0()) as u64;
        let assoc_enabled =
            noninv.pow(3) * shape.rank() as u64 <= ASSOC_SWEEP_LIMIT;
        let mut state = State {
            shape,
            vars,
            domains: vars.initial_domains().to_vec(),
            trail: Vec::new(),
            levels: Vec::new(),
            queue: std::collections::VecDeque::new(),
            in_queue: vec![false; vars.rows().len()],
            global: shape.dims().iter().map(|d| d * d).sum(),
            assoc_enabled,
            step: 0,
            trace,
        };
        // Every row starts dirty: initial pre-assignments must be checked.
        for r in 0..state.in_queue.len() {
            state.queue.push_back(r as u32);
            state.in_queue[r] = true;
        }
        state
    }

    pub fn domain(&self, var: u32) -> u128 {
        self.domains[var as usize]
    }

    pub fn is_determined(&self, var: u32) -> bool {
        self.domains[var as usize].count_ones() == 1
    }

    /// The value of a determined variable.
    pub fn value(&self, var: u32) -> u8 {
        debug_assert!(self.is_determined(var));
        self.domains[var as usize].trailing_zeros() as u8
    }

    pub fn var_count(&self) -> usize {
        self.domains.len()
    }

    /// Opens a decision level; [`Self::pop_level`] undoes everything after
    /// the matching call.
    pub fn push_level(&mut self) {
        self.levels.push(self.trail.len());
    }

    pub fn pop_level(&mut self) {
        let mark = self.levels.pop().expect("level stack underflow");
        while self.trail.len() > mark {
            let (var, old) = self.trail.pop().expect("trail in sync");
            self.domains[var as usize] = old;
        }
        self.clear_queue();
    }

    /// Restricts a variable to one value and queues its rows. Returns
    /// false if the value is not in the domain.
    pub fn assign(&mut self, var: u32, val: u8) -> bool {
        let mask = 1u128 << val;
        let old = self.domains[var as usize];
        if old & mask == 0 {
            return false;
        }
        if old != mask {
            self.trail.push((var, old));
            self.domains[var as usize] = mask;
            self.wake(var);
        }
        true
    }

    /// Logs a branching decision to the trace stream.
    pub fn trace_branch(&mut self, var: u32, val: u8) {
        self.step += 1;
        if let Some(t) = self.trace.as_deref_mut() {
            let step = self.step;
            let cell = self.vars.cells_of(var)[0];
            let _ = writeln!(t, "step {step}: branch v{var} {cell:?} = {val}");
        }
    }

    fn wake(&mut self, var: u32) {
        for &r in self.vars.rows_of_var(var) {
            if !self.in_queue[r as usize] {
                self.in_queue[r as usize] = true;
                self.queue.push_back(r);
            }
        }
    }

    fn clear_queue(&mut self) {
        while let Some(r) = self.queue.pop_front() {
            self.in_queue[r as usize] = false;
        }
    }

    /// Narrows a variable's domain, recording the trail entry, waking
    /// watchers, and tracing the change.
    fn narrow(
        &mut self,
        var: u32,
        new_dom: u128,
        law: &str,
        eq: Option<String>,
    ) -> Result<bool, Conflict> {
        let old = self.domains[var as usize];
        debug_assert_eq!(new_dom & !old, 0, "narrowing only removes values");
        if new_dom == old {
            return Ok(false);
        }
        self.step += 1;
        if let Some(t) = self.trace.as_deref_mut() {
            let step = self.step;
            let eq = eq.as_deref().unwrap_or("");
            if new_dom == 0 {
                let _ = writeln!(t, "step {step}: conflict {law} {eq}");
            } else {
                let _ = writeln!(
                    t,
                    "step {step}: {law} {eq}; v{var} {} -> {}",
                    fmt_mask(old),
                    fmt_mask(new_dom)
                );
            }
        }
        if new_dom == 0 {
            return Err(Conflict);
        }
        self.trail.push((var, old));
        self.domains[var as usize] = new_dom;
        self.wake(var);
        Ok(true)
    }

    fn trace_conflict(&mut self, law: &str, eq: &str) {
        self.step += 1;
        if let Some(t) = self.trace.as_deref_mut() {
            let step = self.step;
            let _ = writeln!(t, "step {step}: conflict {law} {eq}");
        }
    }

    /// Runs all propagators to a fixpoint. Returns false on conflict.
    pub fn propagate(&mut self) -> bool {
        loop {
            while let Some(r) = self.queue.pop_front() {
                self.in_queue[r as usize] = false;
                if self.propagate_row(r).is_err() {
                    self.clear_queue();
                    return false;
                }
            }
            match self.propagate_stabilizers() {
                Err(Conflict) => {
                    self.clear_queue();
                    return false;
                }
                Ok(true) => continue,
                Ok(false) => {}
            }
            if self.assoc_enabled {
                match self.propagate_associativity() {
                    Err(Conflict) => {
                        self.clear_queue();
                        return false;
                    }
                    Ok(true) => continue,
                    Ok(false) => {}
                }
            }
            if self.propagate_subring().is_err() {
                self.clear_queue();
                return false;
            }
            // The subring check never narrows domains, so reaching it with
            // an empty queue is a fixpoint.
            if self.queue.is_empty() {
                return true;
            }
        }
    }

    /// Bitset reachability filtering for one dimension-sum row.
    fn propagate_row(&mut self, row_id: u32) -> Result<(), Conflict> {
        let vars = self.vars;
        let row = &vars.rows()[row_id as usize];
        let t = row.target;
        debug_assert!(t <= 127);
        let tmask: u128 = if t == 127 {
            u128::MAX
        } else {
            (1u128 << (t + 1)) - 1
        };
        let n = row.terms.len();

        // Forward reachable partial sums over terms 0..i.
        let mut fwd: Vec<u128> = Vec::with_capacity(n + 1);
        fwd.push(1); // the empty sum
        for &(v, w) in &row.terms {
            let dom = self.domains[v as usize];
            let prev = *fwd.last().expect("nonempty");
            let mut acc = 0u128;
            for val in mask_vals(dom) {
                let shift = u64::from(val) * w;
                if shift > t {
                    break;
                }
                acc |= prev << shift;
            }
            acc &= tmask;
            if acc == 0 {
                let eq = self.row_eq(row_id);
                self.trace_conflict("dimension-sum", &eq);
                return Err(Conflict);
            }
            fwd.push(acc);
        }
        if fwd[n] & (1u128 << t) == 0 {
            let eq = self.row_eq(row_id);
            self.trace_conflict("dimension-sum", &eq);
            return Err(Conflict);
        }

        // Backward sweep: filter each variable against the sums that still
        // complete to the target.
        let mut goal: u128 = 1u128 << t;
        for i in (0..n).rev() {
            let (v, w) = row.terms[i];
            let dom = self.domains[v as usize];
            let mut allowed = 0u128;
            let mut goal_down = 0u128;
            for val in mask_vals(dom) {
                let shift = u64::from(val) * w;
                if shift > t {
                    break;
                }
                let down = goal >> shift;
                if fwd[i] & down != 0 {
                    allowed |= 1u128 << val;
                    goal_down |= down;
                }
            }
            if allowed != dom {
                let eq = self
                    .trace
                    .is_some()
                    .then(|| self.row_eq(row_id));
                self.narrow(v, allowed, "dimension-sum", eq)?;
            }
            goal = goal_down & fwd[i];
        }
        Ok(())
    }

    /// Renders a row's dimension equation for the trace.
    fn row_eq(&self, row_id: u32) -> String {
        let row = &self.vars.rows()[row_id as usize];
        let terms: Vec<String> = row
            .terms
            .iter()
            .map(|&(v, w)| format!("{w}*v{v}"))
            .collect();
        format!(
            "row ({},{}): {} = {}",
            row.a,
            row.b,
            row.target,
            terms.join(" + ")
        )
    }

    /// Forces stabilizer cells toward the admissible subgroups.
    fn propagate_stabilizers(&mut self) -> Result<bool, Conflict> {
        let vars = self.vars;
        let mut changed = false;
        for stab in vars.stabilizers() {
            let order = stab.cell_vars.len();
            let mut known1: u32 = 0;
            let mut known0: u32 = 0;
            for (g, &v) in stab.cell_vars.iter().enumerate() {
                match self.domains[v as usize] {
                    0b10 => known1 |= 1 << g,
                    0b01 => known0 |= 1 << g,
                    _ => {}
                }
            }
            let mut inter = !0u32;
            let mut union = 0u32;
            let mut any = false;
            for &h in &stab.subgroup_masks {
                if known1 & !h == 0 && h & known0 == 0 {
                    any = true;
                    inter &= h;
                    union |= h;
                }
            }
            if !any {
                self.trace_conflict(
                    "stabilizer",
                    &format!(
                        "x{}: no subgroup contains {known1:#b} avoiding {known0:#b}",
                        stab.x
                    ),
                );
                return Err(Conflict);
            }
            let all = if order == 32 { !0u32 } else { (1u32 << order) - 1 };
            let force1 = inter & !known1;
            let force0 = all & !union & !known0;
            for g in 0..order {
                let x = stab.x;
                if force1 & (1 << g) != 0 {
                    let eq = self
                        .trace
                        .is_some()
                        .then(|| format!("x{x}: every admissible subgroup contains g{g}"));
                    changed |= self.narrow(stab.cell_vars[g], 0b10, "stabilizer", eq)?;
                }
                if force0 & (1 << g) != 0 {
                    let eq = self
                        .trace
                        .is_some()
                        .then(|| format!("x{x}: no admissible subgroup contains g{g}"));
                    changed |= self.narrow(stab.cell_vars[g], 0b01, "stabilizer", eq)?;
                }
            }
        }
        Ok(changed)
    }

    /// Interval and single-variable filtering of associativity instances.
    fn propagate_associativity(&mut self) -> Result<bool, Conflict> {
        let rank = self.shape.rank();
        let n0 = self.shape.n0();
        let mut changed = false;
        for a in n0..rank {
            for b in n0..rank {
                for c in n0..rank {
                    for f in 0..rank {
                        changed |= self.assoc_instance(a, b, c, f)?;
                    }
                }
            }
        }
        Ok(changed)
    }

    fn assoc_instance(
        &mut self,
        a: usize,
        b: usize,
        c: usize,
        f: usize,
    ) -> Result<bool, Conflict> {
        let lhs = self.assoc_side(a, b, c, f, true);
        let rhs = self.assoc_side(a, b, c, f, false);
        if lhs.lo > rhs.hi || rhs.lo > lhs.hi {
            self.trace_conflict(
                "associativity",
                &format!(
                    "({a},{b},{c})->{f}: lhs in [{},{}], rhs in [{},{}]",
                    lhs.lo, lhs.hi, rhs.lo, rhs.hi
                ),
            );
            return Err(Conflict);
        }
        if lhs.nonlinear || rhs.nonlinear {
            return Ok(false);
        }
        let eq = |state: &Self| {
            state.trace.is_some().then(|| {
                format!("({a},{b},{c})->{f}: lhs {} rhs {}", lhs.konst, rhs.konst)
            })
        };
        match (lhs.lin, rhs.lin) {
            (None, None) => Ok(false), // interval check already compared constants
            (Some((v, coeff)), None) => {
                self.pin_linear(v, coeff, lhs.konst, rhs.konst, eq(self))
            }
            (None, Some((v, coeff))) => {
                self.pin_linear(v, coeff, rhs.konst, lhs.konst, eq(self))
            }
            (Some((v1, c1)), Some((v2, c2))) => {
                if v1 != v2 {
                    return Ok(false);
                }
                match c1.cmp(&c2) {
                    std::cmp::Ordering::Equal => {
                        if lhs.konst != rhs.konst {
                            self.trace_conflict(
                                "associativity",
                                &format!(
                                    "({a},{b},{c})->{f}: {} + {c1}*v{v1} = {} + {c2}*v{v1}",
                                    lhs.konst, rhs.konst
                                ),
                            );
                            Err(Conflict)
                        } else {
                            Ok(false)
                        }
                    }
                    std::cmp::Ordering::Greater => {
                        self.pin_linear(v1, c1 - c2, lhs.konst, rhs.konst, eq(self))
                    }
                    std::cmp::Ordering::Less => {
                        self.pin_linear(v1, c2 - c1, rhs.konst, lhs.konst, eq(self))
                    }
                }
            }
        }
    }

    /// Solves `base + coeff*v = other` for `v` and narrows accordingly.
    fn pin_linear(
        &mut self,
        var: u32,
        coeff: u64,
        base: u64,
        other: u64,
        eq: Option<String>,
    ) -> Result<bool, Conflict> {
        debug_assert!(coeff > 0);
        let solution = other
            .checked_sub(base)
            .filter(|diff| diff % coeff == 0)
            .map(|diff| diff / coeff)
            .filter(|&v| v <= 127);
        let new_dom = solution.map_or(0, |v| 1u128 << v);
        let new_dom = new_dom & self.domains[var as usize];
        self.narrow(var, new_dom, "associativity", eq)
    }

    fn assoc_side(&self, a: usize, b: usize, c: usize, f: usize, left: bool) -> SideForm {
        let rank = self.shape.rank();
        let vars = self.vars;
        let mut form = SideForm {
            lo: 0,
            hi: 0,
            konst: 0,
            lin: None,
            nonlinear: false,
        };
        for e in 0..rank {
            let (u, v) = if left {
                (vars.var_of(a, b, e), vars.var_of(e, c, f))
            } else {
                (vars.var_of(b, c, e), vars.var_of(a, e, f))
            };
            let du = self.domains[u as usize];
            let dv = self.domains[v as usize];
            form.lo += mask_min(du) * mask_min(dv);
            form.hi += mask_max(du) * mask_max(dv);
            match (du.count_ones() == 1, dv.count_ones() == 1) {
                (true, true) => form.konst += mask_min(du) * mask_min(dv),
                (true, false) => form.add_linear(v, mask_min(du)),
                (false, true) => form.add_linear(u, mask_min(dv)),
                (false, false) => form.nonlinear = true,
            }
        }
        form
    }

    /// Detects completed product closures and applies the divisibility of
    /// subring dimensions.
    fn propagate_subring(&mut self) -> Result<(), Conflict> {
        let rank = self.shape.rank();
        let n0 = self.shape.n0();
        if rank > 64 {
            return Ok(()); // closure bitmask is 64-wide; skip, stay sound
        }
        'next_seed: for x in n0..rank {
            let mut mask: u64 = 1 | (1 << x) | (1 << self.shape.dual(x));
            let mut list: Vec<usize> = vec![0, x];
            if self.shape.dual(x) != x {
                list.push(self.shape.dual(x));
            }
            let mut grown = true;
            while grown {
                grown = false;
                let len = list.len();
                for i in 0..len {
                    for j in 0..len {
                        let (a, b) = (list[i], list[j]);
                        for e in 0..rank {
                            if mask & (1 << e) != 0 {
                                continue;
                            }
                            let dom = self.domains[self.vars.var_of(a, b, e) as usize];
                            if dom == 0b01 {
                                continue; // determined zero: stays outside
                            }
                            if dom.count_ones() != 1 {
                                continue 'next_seed; // closure unknown
                            }
                            mask |= 1 << e;
                            list.push(e);
                            let ed = self.shape.dual(e);
                            if mask & (1 << ed) == 0 {
                                mask |= 1 << ed;
                                list.push(ed);
                            }
                            grown = true;
                        }
                    }
                }
            }
            if list.len() == rank {
                continue; // the whole ring: nothing to test
            }
            let dim: u64 = list.iter().map(|&e| self.shape.dim(e) * self.shape.dim(e)).sum();
            if self.global % dim != 0 {
                self.trace_conflict(
                    "subring",
                    &format!(
                        "closure of x{x} = {list:?} has dimension {dim}, which does not divide {}",
                        self.global
                    ),
                );
                return Err(Conflict);
            }
        }
        Ok(())
    }
}

struct SideForm {
    lo: u64,
    hi: u64,
    /// Sum of fully determined products.
    konst: u64,
    /// At most one undetermined variable with its accumulated coefficient.
    lin: Option<(u32, u64)>,
    nonlinear: bool,
}

impl SideForm {
    fn add_linear(&mut self, var: u32, coeff: u64) {
        if coeff == 0 {
            return;
        }
        match self.lin {
            None => self.lin = Some((var, coeff)),
            Some((v0, c0)) if v0 == var => self.lin = Some((v0, c0 + coeff)),
            Some(_) => self.nonlinear = true,
        }
    }
}
