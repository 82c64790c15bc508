//! Exact evaluation of tick-free diagrams as sparse tensor networks.
//!
//! Identities, swaps, cups and caps are pure wiring and are resolved with a
//! union-find; only spiders and fswaps become tensors. Tensors are maps from
//! index assignments to nonzero scalars and are contracted greedily.

use std::collections::HashMap;

use crate::diagram::{Diagram, Generator, Kind};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Assignment of bits to a tensor's variables, in variable order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
struct Key(Vec<u64>);

impl Key {
    fn bit(&self, i: usize) -> bool {
        self.0.get(i / 64).is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    fn set(&mut self, i: usize) {
        if self.0.len() <= i / 64 {
            self.0.resize(i / 64 + 1, 0);
        }
        self.0[i / 64] |= 1 << (i % 64);
    }

    /// Bits at positions `idx`, written from position `offset` of `out`.
    fn gather_into(&self, idx: &[usize], out: &mut Key, offset: usize) {
        for (i, &p) in idx.iter().enumerate() {
            if self.bit(p) {
                out.set(offset + i);
            }
        }
    }

    fn gather(&self, idx: &[usize]) -> Key {
        let mut k = Key::default();
        self.gather_into(idx, &mut k, 0);
        k
    }
}

#[derive(Clone, Debug)]
struct Sparse {
    vars: Vec<usize>,
    data: HashMap<Key, Scalar>,
}

impl Sparse {
    fn scalar(s: Scalar) -> Sparse {
        let mut data = HashMap::new();
        if !s.is_zero() {
            data.insert(Key::default(), s);
        }
        Sparse { vars: Vec::new(), data }
    }
}

/// Nonzero entries of a generator over its legs (inputs then outputs).
fn generator_entries(g: &Generator) -> Vec<(Vec<u8>, Scalar)> {
    match g {
        Generator::Z { r, n, m } => {
            let k = n + m;
            if k == 0 {
                return vec![(Vec::new(), Scalar::one() + r)];
            }
            let mut v = vec![(vec![0; k], Scalar::one())];
            if !r.is_zero() {
                v.push((vec![1; k], r.clone()));
            }
            v
        }
        Generator::W { n, m } => {
            let k = n + m;
            (0..k)
                .map(|i| {
                    let mut bits = vec![0; k];
                    bits[i] = 1;
                    (bits, Scalar::one())
                })
                .collect()
        }
        Generator::Fswap => {
            let mut v = Vec::new();
            for i in 0..2u8 {
                for j in 0..2u8 {
                    let s = if i == 1 && j == 1 { -Scalar::one() } else { Scalar::one() };
                    v.push((vec![i, j, j, i], s));
                }
            }
            v
        }
        _ => unreachable!("wiring generators carry no tensor"),
    }
}

struct Builder {
    parent: Vec<usize>,
    leaves: Vec<(Generator, Vec<usize>)>,
    loops: usize,
}

impl Builder {
    fn fresh(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn walk(&mut self, d: &Diagram, mut ins: Vec<usize>) -> Result<Vec<usize>> {
        match d.kind() {
            Kind::Empty => Ok(ins),
            Kind::Compose(a, b) => {
                let mid = self.walk(b, ins)?;
                self.walk(a, mid)
            }
            Kind::Tensor(a, b) => {
                let rest = ins.split_off(a.inputs());
                let mut out = self.walk(a, ins)?;
                out.extend(self.walk(b, rest)?);
                Ok(out)
            }
            Kind::Gen(g) => match g {
                Generator::Tick => Err(Error::Ticked),
                Generator::Id => Ok(ins),
                Generator::Swap => {
                    ins.swap(0, 1);
                    Ok(ins)
                }
                Generator::Cap => {
                    let w = self.fresh();
                    Ok(vec![w, w])
                }
                Generator::Cup => {
                    let a = self.find(ins[0]);
                    let b = self.find(ins[1]);
                    if a == b {
                        self.loops += 1;
                    } else {
                        self.parent[a] = b;
                    }
                    Ok(Vec::new())
                }
                _ => {
                    let outs: Vec<usize> = (0..g.arity().1).map(|_| self.fresh()).collect();
                    let mut legs = ins;
                    legs.extend(&outs);
                    self.leaves.push((g.clone(), legs));
                    Ok(outs)
                }
            },
        }
    }
}

fn leaf_tensor(g: &Generator, legs: &[usize]) -> Sparse {
    // Variables met twice are self-loops and get summed out here.
    let mut vars: Vec<usize> = Vec::new();
    let mut looped: Vec<usize> = Vec::new();
    for (i, v) in legs.iter().enumerate() {
        if legs[..i].contains(v) {
            looped.push(*v);
        }
    }
    for v in legs {
        if !looped.contains(v) && !vars.contains(v) {
            vars.push(*v);
        }
    }
    let mut data: HashMap<Key, Scalar> = HashMap::new();
    'entries: for (bits, val) in generator_entries(g) {
        let mut seen: Vec<(usize, u8)> = Vec::new();
        for (leg, &b) in bits.iter().enumerate() {
            let v = legs[leg];
            match seen.iter().find(|(x, _)| *x == v) {
                Some((_, prev)) if *prev != b => continue 'entries,
                Some(_) => {}
                None => seen.push((v, b)),
            }
        }
        let mut key = Key::default();
        for (i, v) in vars.iter().enumerate() {
            if seen.iter().any(|(x, b)| x == v && *b == 1) {
                key.set(i);
            }
        }
        *data.entry(key).or_insert_with(Scalar::zero) += &val;
    }
    data.retain(|_, v| !v.is_zero());
    Sparse { vars, data }
}

fn contract(a: &Sparse, b: &Sparse) -> Result<Sparse> {
    let shared: Vec<usize> = a.vars.iter().copied().filter(|v| b.vars.contains(v)).collect();
    let a_only: Vec<usize> = (0..a.vars.len()).filter(|&i| !shared.contains(&a.vars[i])).collect();
    let b_only: Vec<usize> = (0..b.vars.len()).filter(|&i| !shared.contains(&b.vars[i])).collect();
    let vars: Vec<usize> =
        a_only.iter().map(|&i| a.vars[i]).chain(b_only.iter().map(|&i| b.vars[i])).collect();
    let a_sh: Vec<usize> = shared.iter().map(|v| a.vars.iter().position(|x| x == v).unwrap()).collect();
    let b_sh: Vec<usize> = shared.iter().map(|v| b.vars.iter().position(|x| x == v).unwrap()).collect();
    let mut index: HashMap<Key, Vec<(&Key, &Scalar)>> = HashMap::new();
    for (kb, vb) in &b.data {
        index.entry(kb.gather(&b_sh)).or_default().push((kb, vb));
    }
    let mut data: HashMap<Key, Scalar> = HashMap::new();
    for (ka, va) in &a.data {
        if let Some(list) = index.get(&ka.gather(&a_sh)) {
            let base = ka.gather(&a_only);
            for (kb, vb) in list {
                let mut k = base.clone();
                kb.gather_into(&b_only, &mut k, a_only.len());
                let prod = if vb.is_one() {
                    va.clone()
                } else if va.is_one() {
                    (*vb).clone()
                } else {
                    va * *vb
                };
                match data.entry(k) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += &prod,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
    }
    data.retain(|_, v| !v.is_zero());
    Ok(Sparse { vars, data })
}

/// Growth of the entry count when contracting `a` with `b`, using the exact
/// number of matching pairs as the size of the result.
fn cost(a: &Sparse, b: &Sparse) -> f64 {
    let a_sh: Vec<usize> = (0..a.vars.len()).filter(|&i| b.vars.contains(&a.vars[i])).collect();
    let b_sh: Vec<usize> =
        a_sh.iter().map(|&i| b.vars.iter().position(|&v| v == a.vars[i]).unwrap()).collect();
    let mut counts: HashMap<Key, usize> = HashMap::new();
    for kb in b.data.keys() {
        *counts.entry(kb.gather(&b_sh)).or_default() += 1;
    }
    let pairs: usize = a.data.keys().map(|ka| counts.get(&ka.gather(&a_sh)).copied().unwrap_or(0)).sum();
    pairs as f64 - a.data.len() as f64 - b.data.len() as f64
}

/// Greedy pairwise contraction of a network. Pair costs are cached and only
/// the pairs touching a freshly contracted tensor are re-scored.
fn contract_all(tensors: Vec<Sparse>) -> Result<Sparse> {
    let mut slots: Vec<Option<Sparse>> = tensors.into_iter().map(Some).collect();
    let mut users: HashMap<usize, Vec<usize>> = HashMap::new();
    for (id, t) in slots.iter().enumerate() {
        for &v in &t.as_ref().unwrap().vars {
            users.entry(v).or_default().push(id);
        }
    }
    let mut costs: HashMap<(usize, usize), f64> = HashMap::new();
    let neighbours = |users: &HashMap<usize, Vec<usize>>, t: &Sparse, me: usize| -> Vec<usize> {
        let mut ns: Vec<usize> =
            t.vars.iter().flat_map(|v| users.get(v).into_iter().flatten().copied()).filter(|&u| u != me).collect();
        ns.sort_unstable();
        ns.dedup();
        ns
    };
    for id in 0..slots.len() {
        let t = slots[id].as_ref().unwrap();
        for other in neighbours(&users, t, id) {
            if other > id {
                costs.insert((id, other), cost(t, slots[other].as_ref().unwrap()));
            }
        }
    }
    let mut alive = slots.len();
    while alive > 1 {
        let pick = costs
            .iter()
            .min_by(|x, y| x.1.total_cmp(y.1).then(y.0 .1.cmp(&x.0 .1)).then(y.0 .0.cmp(&x.0 .0)))
            .map(|(&k, _)| k);
        let (i, j) = match pick {
            Some(p) => p,
            None => {
                // Disconnected: take the two smallest factors.
                let mut live: Vec<usize> = (0..slots.len()).filter(|&k| slots[k].is_some()).collect();
                live.sort_by_key(|&k| (slots[k].as_ref().unwrap().data.len(), k));
                (live[0], live[1])
            }
        };
        let a = slots[i].take().unwrap();
        let b = slots[j].take().unwrap();
        costs.retain(|&(x, y), _| x != i && x != j && y != i && y != j);
        let c = contract(&a, &b)?;
        if c.data.is_empty() {
            return Ok(c);
        }
        for v in a.vars.iter().chain(&b.vars) {
            if let Some(list) = users.get_mut(v) {
                list.retain(|&u| u != i && u != j);
            }
        }
        let id = slots.len();
        for &v in &c.vars {
            users.entry(v).or_default().push(id);
        }
        for other in neighbours(&users, &c, id) {
            costs.insert((other, id), cost(slots[other].as_ref().unwrap(), &c));
        }
        slots.push(Some(c));
        alive -= 1;
    }
    Ok(slots.into_iter().flatten().next().unwrap_or_else(|| Sparse::scalar(Scalar::one())))
}

/// Evaluates a tick-free diagram to its `2^outputs × 2^inputs` matrix.
pub fn evaluate(d: &Diagram) -> Result<Matrix> {
    let (n, m) = d.arity();
    if n + m >= 30 {
        return Err(Error::TooLarge(n + m));
    }
    let mut bld = Builder { parent: Vec::new(), leaves: Vec::new(), loops: 0 };
    let inputs: Vec<usize> = (0..n).map(|_| bld.fresh()).collect();
    let outputs = bld.walk(d, inputs.clone())?;

    // Resolve wire classes to dense variable numbers.
    let mut var_of: HashMap<usize, usize> = HashMap::new();
    let mut var = |bld: &mut Builder, w: usize| -> usize {
        let r = bld.find(w);
        let next = var_of.len();
        *var_of.entry(r).or_insert(next)
    };
    let leaves = std::mem::take(&mut bld.leaves);
    let mut tensors: Vec<Sparse> = Vec::with_capacity(leaves.len());
    for (g, legs) in &leaves {
        let vs: Vec<usize> = legs.iter().map(|&w| var(&mut bld, w)).collect();
        tensors.push(leaf_tensor(g, &vs));
    }
    let port_vars: Vec<usize> =
        outputs.iter().chain(inputs.iter()).map(|&w| var(&mut bld, w)).collect();

    // Any zero tensor kills the whole network.
    if tensors.iter().any(|t| t.data.is_empty()) {
        return Ok(Matrix::zeros(1 << m, 1 << n));
    }

    let total = contract_all(tensors)?;
    if total.data.is_empty() {
        return Ok(Matrix::zeros(1 << m, 1 << n));
    }
    let factor = Scalar::from_int(1i64 << bld.loops.min(62));

    // Variables carried only by boundary ports are deltas between two ports.
    let mut delta: Vec<usize> = port_vars.clone();
    delta.sort_unstable();
    delta.dedup();
    delta.retain(|v| !total.vars.contains(v));

    let mut out = Matrix::zeros(1 << m, 1 << n);
    let width = n + m;
    for (key, val) in &total.data {
        let val = val * &factor;
        for dbits in 0..(1usize << delta.len()) {
            let mut idx = 0usize;
            for &pv in &port_vars {
                let bit = match total.vars.iter().position(|&x| x == pv) {
                    Some(p) => key.bit(p) as usize,
                    None => (dbits >> delta.iter().position(|&x| x == pv).unwrap()) & 1,
                };
                idx = (idx << 1) | bit;
            }
            let row = idx >> n;
            let col = idx & ((1 << n) - 1);
            debug_assert!(width < 64);
            *out.entry_mut(row, col) += &val;
        }
    }
    Ok(out)
}
