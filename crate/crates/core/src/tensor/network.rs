//! Tensor networks and a greedy contraction planner.

use super::{dense_len, GradedTensor, TensorError};

/// A leg of a node in a network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LegRef {
    pub node: usize,
    pub leg: usize,
}

impl LegRef {
    pub fn new(node: usize, leg: usize) -> Self {
        LegRef { node, leg }
    }
}

#[derive(Debug, Clone, Default)]
pub struct TensorNetwork {
    nodes: Vec<GradedTensor>,
    bonds: Vec<(LegRef, LegRef)>,
}

/// Contraction order: each step merges two clusters across the listed bonds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plan {
    pub steps: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ContractStats {
    /// Largest dense entry count of any intermediate tensor.
    pub peak_dense: u64,
    /// Largest number of stored nonzeros of any intermediate tensor.
    pub peak_nnz: usize,
    pub merges: usize,
}

struct Cluster {
    tensor: GradedTensor,
    origin: Vec<LegRef>,
}

struct Engine<'a> {
    net: &'a TensorNetwork,
    clusters: Vec<Option<Cluster>>,
    owner: Vec<usize>,
    done: Vec<bool>,
    stats: ContractStats,
}

impl<'a> Engine<'a> {
    fn new(net: &'a TensorNetwork) -> Result<Self, TensorError> {
        let mut eng = Engine {
            net,
            clusters: Vec::new(),
            owner: (0..net.nodes.len()).collect(),
            done: vec![false; net.bonds.len()],
            stats: ContractStats::default(),
        };
        for (n, t) in net.nodes.iter().enumerate() {
            let origin = (0..t.rank()).map(|l| LegRef::new(n, l)).collect();
            eng.observe(t);
            eng.clusters.push(Some(Cluster { tensor: t.clone(), origin }));
        }
        // loops on a single node first
        for n in 0..net.nodes.len() {
            let pairs: Vec<usize> = (0..net.bonds.len())
                .filter(|&b| net.bonds[b].0.node == n && net.bonds[b].1.node == n)
                .collect();
            if !pairs.is_empty() {
                eng.merge(n, n, &pairs)?;
            }
        }
        Ok(eng)
    }

    fn observe(&mut self, t: &GradedTensor) {
        self.stats.peak_dense = self.stats.peak_dense.max(t.dense_len());
        self.stats.peak_nnz = self.stats.peak_nnz.max(t.nnz());
    }

    fn pos(&self, c: usize, r: LegRef) -> usize {
        let cl = self.clusters[c].as_ref().unwrap();
        cl.origin.iter().position(|&o| o == r).expect("leg not in cluster")
    }

    fn bonds_between(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.net.bonds.len())
            .filter(|&k| {
                let (x, y) = self.net.bonds[k];
                let (ox, oy) = (self.owner[x.node], self.owner[y.node]);
                !self.done[k] && ((ox == a && oy == b) || (ox == b && oy == a))
            })
            .collect()
    }

    fn merge(&mut self, a: usize, b: usize, bonds: &[usize]) -> Result<(), TensorError> {
        if a == b {
            let pairs: Vec<(usize, usize)> = bonds
                .iter()
                .map(|&k| (self.pos(a, self.net.bonds[k].0), self.pos(a, self.net.bonds[k].1)))
                .collect();
            let cl = self.clusters[a].take().unwrap();
            let t = cl.tensor.contract_self(&pairs)?;
            let used: Vec<LegRef> = bonds.iter().flat_map(|&k| [self.net.bonds[k].0, self.net.bonds[k].1]).collect();
            let origin = cl.origin.into_iter().filter(|o| !used.contains(o)).collect();
            self.observe(&t);
            self.clusters[a] = Some(Cluster { tensor: t, origin });
        } else {
            let pairs: Vec<(usize, usize)> = bonds
                .iter()
                .map(|&k| {
                    let (x, y) = self.net.bonds[k];
                    if self.owner[x.node] == a {
                        (self.pos(a, x), self.pos(b, y))
                    } else {
                        (self.pos(a, y), self.pos(b, x))
                    }
                })
                .collect();
            let ca = self.clusters[a].take().unwrap();
            let cb = self.clusters[b].take().unwrap();
            let t = ca.tensor.contract_with(&cb.tensor, &pairs)?;
            let used_a: Vec<usize> = pairs.iter().map(|p| p.0).collect();
            let used_b: Vec<usize> = pairs.iter().map(|p| p.1).collect();
            let origin = (0..ca.origin.len())
                .filter(|k| !used_a.contains(k))
                .map(|k| ca.origin[k])
                .chain((0..cb.origin.len()).filter(|k| !used_b.contains(k)).map(|k| cb.origin[k]))
                .collect();
            for o in self.owner.iter_mut() {
                if *o == b {
                    *o = a;
                }
            }
            self.observe(&t);
            self.clusters[a] = Some(Cluster { tensor: t, origin });
        }
        self.stats.merges += 1;
        for &k in bonds {
            self.done[k] = true;
        }
        Ok(())
    }

    /// Merges the clusters at the ends of bond `k` across all bonds joining them.
    fn step(&mut self, k: usize) -> Result<(), TensorError> {
        if self.done[k] {
            return Ok(());
        }
        let (x, y) = self.net.bonds[k];
        let (a, b) = (self.owner[x.node], self.owner[y.node]);
        let (a, b) = (a.min(b), a.max(b));
        let bonds = self.bonds_between(a, b);
        self.merge(a, b, &bonds)
    }

    fn finish(mut self, open: &[LegRef]) -> Result<(GradedTensor, ContractStats), TensorError> {
        let mut acc: Option<Cluster> = None;
        for c in self.clusters.iter_mut() {
            if let Some(cl) = c.take() {
                acc = Some(match acc {
                    None => cl,
                    Some(prev) => {
                        let t = prev.tensor.outer(&cl.tensor)?;
                        let mut origin = prev.origin;
                        origin.extend(cl.origin);
                        Cluster { tensor: t, origin }
                    }
                });
            }
        }
        let cl = acc.unwrap_or(Cluster { tensor: GradedTensor::scalar(crate::scalar::Scalar::one()), origin: vec![] });
        if open.len() != cl.origin.len() || open.iter().any(|r| !cl.origin.contains(r)) {
            return Err(TensorError::Shape("requested open legs do not match the network".into()));
        }
        let perm: Vec<usize> = open.iter().map(|r| cl.origin.iter().position(|o| o == r).unwrap()).collect();
        let t = cl.tensor.permute(&perm);
        self.stats.peak_dense = self.stats.peak_dense.max(t.dense_len());
        Ok((t, self.stats))
    }
}

impl TensorNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, t: GradedTensor) -> usize {
        self.nodes.push(t);
        self.nodes.len() - 1
    }

    pub fn nodes(&self) -> &[GradedTensor] {
        &self.nodes
    }

    pub fn bonds(&self) -> &[(LegRef, LegRef)] {
        &self.bonds
    }

    /// Joins an out-leg and an in-leg over the same space.
    pub fn bond(&mut self, a: LegRef, b: LegRef) -> Result<usize, TensorError> {
        for r in [a, b] {
            if r.node >= self.nodes.len() || r.leg >= self.nodes[r.node].rank() {
                return Err(TensorError::BondMismatch(format!("no leg {r:?}")));
            }
            if self.bonds.iter().any(|&(x, y)| x == r || y == r) || (a == b) {
                return Err(TensorError::LegReused(format!("{r:?}")));
            }
        }
        let la = &self.nodes[a.node].legs()[a.leg];
        let lb = &self.nodes[b.node].legs()[b.leg];
        if la.space != lb.space || la.polarity == lb.polarity {
            return Err(TensorError::BondMismatch(format!("{a:?} and {b:?} are not an in/out pair over one space")));
        }
        self.bonds.push((a, b));
        Ok(self.bonds.len() - 1)
    }

    /// Unbonded legs in (node, leg) order.
    pub fn open_legs(&self) -> Vec<LegRef> {
        let mut out = Vec::new();
        for (n, t) in self.nodes.iter().enumerate() {
            for l in 0..t.rank() {
                let r = LegRef::new(n, l);
                if !self.bonds.iter().any(|&(x, y)| x == r || y == r) {
                    out.push(r);
                }
            }
        }
        out
    }

    /// Greedy plan: repeatedly merge the pair of clusters whose result has the fewest entries.
    pub fn plan(&self) -> Plan {
        let n = self.nodes.len();
        let mut owner: Vec<usize> = (0..n).collect();
        let mut done: Vec<bool> = self.bonds.iter().map(|(x, y)| x.node == y.node).collect();
        // dense size of each cluster's open legs, tracked as a list of leg dims
        let mut open: Vec<Vec<(LegRef, usize)>> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, t)| {
                (0..t.rank())
                    .map(|l| (LegRef::new(i, l), t.dims()[l]))
                    .filter(|(r, _)| {
                        !self.bonds.iter().any(|&(x, y)| x.node == y.node && (x == *r || y == *r))
                    })
                    .collect()
            })
            .collect();
        let mut steps = Vec::new();
        loop {
            let mut best: Option<(u64, usize, usize)> = None;
            for k in 0..self.bonds.len() {
                if done[k] {
                    continue;
                }
                let (x, y) = self.bonds[k];
                let (a, b) = (owner[x.node].min(owner[y.node]), owner[x.node].max(owner[y.node]));
                let joined: Vec<usize> = (0..self.bonds.len())
                    .filter(|&j| {
                        let (p, q) = self.bonds[j];
                        let (op, oq) = (owner[p.node], owner[q.node]);
                        !done[j] && ((op == a && oq == b) || (op == b && oq == a))
                    })
                    .collect();
                let cut: Vec<LegRef> = joined.iter().flat_map(|&j| [self.bonds[j].0, self.bonds[j].1]).collect();
                let dims: Vec<usize> = open[a]
                    .iter()
                    .chain(open[b].iter())
                    .filter(|(r, _)| !cut.contains(r))
                    .map(|&(_, d)| d)
                    .collect();
                let cost = dense_len(&dims).unwrap_or(u64::MAX);
                if best.is_none_or(|(c, ba, bb)| (cost, a, b) < (c, ba, bb)) {
                    best = Some((cost, a, b));
                }
            }
            let Some((_, a, b)) = best else { break };
            let joined: Vec<usize> = (0..self.bonds.len())
                .filter(|&j| {
                    let (p, q) = self.bonds[j];
                    let (op, oq) = (owner[p.node], owner[q.node]);
                    !done[j] && ((op == a && oq == b) || (op == b && oq == a))
                })
                .collect();
            let cut: Vec<LegRef> = joined.iter().flat_map(|&j| [self.bonds[j].0, self.bonds[j].1]).collect();
            let moved = std::mem::take(&mut open[b]);
            open[a].extend(moved);
            open[a].retain(|(r, _)| !cut.contains(r));
            for o in owner.iter_mut() {
                if *o == b {
                    *o = a;
                }
            }
            for &j in &joined {
                done[j] = true;
            }
            steps.push(joined);
        }
        Plan { steps }
    }

    /// Contracts along the greedy plan; open legs come out in (node, leg) order.
    pub fn contract(&self) -> Result<GradedTensor, TensorError> {
        Ok(self.contract_with_stats()?.0)
    }

    pub fn contract_with_stats(&self) -> Result<(GradedTensor, ContractStats), TensorError> {
        self.contract_plan(&self.plan(), &self.open_legs())
    }

    /// Contracts along a plan with the open legs in the requested order.
    pub fn contract_plan(&self, plan: &Plan, open: &[LegRef]) -> Result<(GradedTensor, ContractStats), TensorError> {
        let mut eng = Engine::new(self)?;
        for step in &plan.steps {
            if let Some(&k) = step.first() {
                eng.step(k)?;
            }
        }
        eng.finish(open)
    }

    /// Contracts bonds in the given order (bonds already absorbed by an earlier merge are skipped).
    pub fn contract_in_order(&self, order: &[usize]) -> Result<GradedTensor, TensorError> {
        let mut eng = Engine::new(self)?;
        for &k in order {
            eng.step(k)?;
        }
        for k in 0..self.bonds.len() {
            eng.step(k)?;
        }
        Ok(eng.finish(&self.open_legs())?.0)
    }
}
