use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{require_noholes, IntervalView};
use crate::model::{HoleMode, Instance, VarId};
use crate::solution::{Algorithm, SolveError, SpillSolution};
use crate::weight::Weight;

/// One arc of the interval-selection network.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowArc<W> {
    pub from: usize,
    pub to: usize,
    pub capacity: i64,
    pub cost: W,
    pub flow: i64,
    /// Variable carried by this arc; `None` for chain arcs.
    pub var: Option<VarId>,
}

/// Min-cost flow network whose optimal flows are maximum-weight families of
/// intervals with at most `r` intervals over any position.
///
/// Nodes are the compressed positions plus a final sink; node 0 is the
/// source. Chain arcs `i -> i+1` carry capacity `r` at cost 0 and every
/// variable spanning positions `s..=e` gets an arc `s -> e+1` with capacity 1
/// and cost `-w`. A unit of flow taking a variable arc skips the chain across
/// the variable's span, so at most `r` kept variables overlap any position.
#[derive(Debug, Clone)]
pub struct FlowNetwork<W> {
    nodes: usize,
    arcs: Vec<FlowArc<W>>,
    /// Residual edge ids per node; edge `2a` is arc `a` forward, `2a+1` backward.
    adj: Vec<Vec<usize>>,
    supply: i64,
}

impl<W: Weight> FlowNetwork<W> {
    pub fn for_instance(instance: &Instance<W>, registers: usize) -> Result<Self, SolveError> {
        require_noholes(instance, HoleMode::WithoutHoles)?;
        Ok(Self::from_view(instance, &IntervalView::new(instance), registers))
    }

    pub(crate) fn from_view(instance: &Instance<W>, view: &IntervalView, registers: usize) -> Self {
        let nodes = view.len() + 1;
        let supply = registers as i64;
        let mut net = FlowNetwork { nodes, arcs: Vec::new(), adj: vec![Vec::new(); nodes], supply };
        for i in 0..view.len() {
            net.add_arc(i, i + 1, supply, W::zero(), None);
        }
        for v in instance.var_ids() {
            let (s, e) = view.spans[v.0];
            net.add_arc(s, e + 1, 1, -instance.weight(v).clone(), Some(v));
        }
        net
    }

    fn add_arc(&mut self, from: usize, to: usize, capacity: i64, cost: W, var: Option<VarId>) {
        let id = self.arcs.len();
        self.arcs.push(FlowArc { from, to, capacity, cost, flow: 0, var });
        self.adj[from].push(2 * id);
        self.adj[to].push(2 * id + 1);
    }

    pub fn source(&self) -> usize {
        0
    }

    pub fn sink(&self) -> usize {
        self.nodes - 1
    }

    pub fn arcs(&self) -> &[FlowArc<W>] {
        &self.arcs
    }

    fn residual(&self, e: usize) -> i64 {
        let a = &self.arcs[e / 2];
        if e % 2 == 0 {
            a.capacity - a.flow
        } else {
            a.flow
        }
    }

    fn head(&self, e: usize) -> usize {
        let a = &self.arcs[e / 2];
        if e % 2 == 0 {
            a.to
        } else {
            a.from
        }
    }

    fn edge_cost(&self, e: usize) -> W {
        let c = self.arcs[e / 2].cost.clone();
        if e % 2 == 0 {
            c
        } else {
            -c
        }
    }

    /// Sends `r` units from source to sink at minimum cost by successive
    /// shortest paths. Returns the number of Dijkstra settlements.
    pub fn solve(&mut self) -> u64 {
        let mut steps = 0u64;
        if self.supply == 0 {
            return steps;
        }
        // Every arc points forward, so potentials come from one DAG sweep.
        let mut pot: Vec<W> = vec![W::zero(); self.nodes];
        let mut seen = vec![false; self.nodes];
        seen[0] = true;
        for u in 0..self.nodes {
            if !seen[u] {
                continue;
            }
            for &e in &self.adj[u] {
                if e % 2 == 1 || self.residual(e) == 0 {
                    continue;
                }
                let v = self.head(e);
                let cand = pot[u].clone() + self.edge_cost(e);
                if !seen[v] || cand.weight_cmp(&pot[v]) == Ordering::Less {
                    pot[v] = cand;
                    seen[v] = true;
                }
            }
        }

        let mut remaining = self.supply;
        while remaining > 0 {
            let mut dist: Vec<Option<W>> = vec![None; self.nodes];
            let mut via: Vec<Option<usize>> = vec![None; self.nodes];
            let mut done = vec![false; self.nodes];
            let mut heap = BinaryHeap::new();
            dist[0] = Some(W::zero());
            heap.push(Entry(W::zero(), 0));
            while let Some(Entry(d, u)) = heap.pop() {
                if done[u] {
                    continue;
                }
                done[u] = true;
                steps += 1;
                for &e in &self.adj[u] {
                    if self.residual(e) == 0 {
                        continue;
                    }
                    let v = self.head(e);
                    let reduced = self.edge_cost(e) + pot[u].clone() - pot[v].clone();
                    let cand = d.clone() + reduced;
                    let better = match &dist[v] {
                        None => true,
                        Some(old) => cand.weight_cmp(old) == Ordering::Less,
                    };
                    if better && !done[v] {
                        dist[v] = Some(cand.clone());
                        via[v] = Some(e);
                        heap.push(Entry(cand, v));
                    }
                }
            }
            let sink = self.sink();
            if dist[sink].is_none() {
                break;
            }
            let far = dist
                .iter()
                .flatten()
                .cloned()
                .max_by(|a, b| a.weight_cmp(b))
                .unwrap_or_else(W::zero);
            for (p, d) in pot.iter_mut().zip(&dist) {
                *p = p.clone() + d.clone().unwrap_or_else(|| far.clone());
            }
            let mut push = remaining;
            let mut v = sink;
            while let Some(e) = via[v] {
                push = push.min(self.residual(e));
                v = self.head(e ^ 1);
            }
            let mut v = sink;
            while let Some(e) = via[v] {
                let a = &mut self.arcs[e / 2];
                if e % 2 == 0 {
                    a.flow += push;
                } else {
                    a.flow -= push;
                }
                v = self.head(e ^ 1);
            }
            remaining -= push;
        }
        steps
    }

    /// Variables whose arc carries flow.
    pub fn kept(&self) -> Vec<VarId> {
        self.arcs.iter().filter(|a| a.flow > 0).filter_map(|a| a.var).collect()
    }

    /// Every variable arc carries 0 or 1 and flow is conserved at interior nodes.
    pub fn is_integral(&self) -> bool {
        let mut balance = vec![0i64; self.nodes];
        for a in &self.arcs {
            if a.flow < 0 || a.flow > a.capacity {
                return false;
            }
            if a.var.is_some() && a.flow != 0 && a.flow != 1 {
                return false;
            }
            balance[a.from] -= a.flow;
            balance[a.to] += a.flow;
        }
        balance[1..self.nodes - 1].iter().all(|&b| b == 0)
    }
}

struct Entry<W>(W, usize);

impl<W: Weight> PartialEq for Entry<W> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<W: Weight> Eq for Entry<W> {}

impl<W: Weight> PartialOrd for Entry<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<W: Weight> Ord for Entry<W> {
    // Reversed so the max-heap pops the smallest distance.
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.weight_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

/// Minimum-weight spill set of a basic block with Ω' ≤ `registers`.
pub fn weighted_optimal<W: Weight>(
    instance: &Instance<W>,
    registers: usize,
    mode: HoleMode,
) -> Result<SpillSolution<W>, SolveError> {
    Ok(weighted_optimal_with_network(instance, registers, mode)?.0)
}

/// As [`weighted_optimal`], also returning the solved network.
pub fn weighted_optimal_with_network<W: Weight>(
    instance: &Instance<W>,
    registers: usize,
    mode: HoleMode,
) -> Result<(SpillSolution<W>, Option<FlowNetwork<W>>), SolveError> {
    require_noholes(instance, mode)?;
    if registers >= instance.omega() {
        let sol = SpillSolution::weighted(instance, Vec::new(), mode, Algorithm::Flow, 0);
        return Ok((sol, None));
    }
    let view = IntervalView::new(instance);
    let mut net = FlowNetwork::from_view(instance, &view, registers);
    let steps = net.solve();
    let mut keep = vec![false; instance.num_vars()];
    for v in net.kept() {
        keep[v.0] = true;
    }
    let spilled = instance.var_ids().filter(|v| !keep[v.0]).collect();
    let sol = SpillSolution::weighted(instance, spilled, mode, Algorithm::Flow, steps);
    Ok((sol, Some(net)))
}
