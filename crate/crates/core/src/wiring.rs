//! Permutation terms and a compiler from port graphs to diagram terms.

use std::collections::HashMap;

use crate::diagram::Diagram;
use crate::error::{Error, Result};

/// Permutation term sending input wire `i` to output position `perm[i]`,
/// built from adjacent swaps by odd-even transposition sort.
pub fn permutation(perm: &[usize]) -> Result<Diagram> {
    let k = perm.len();
    let mut seen = vec![false; k];
    for &p in perm {
        if p >= k || std::mem::replace(&mut seen[p], true) {
            return Err(Error::Invalid(format!("{perm:?} is not a permutation")));
        }
    }
    let mut arr = perm.to_vec();
    let mut layers: Vec<Diagram> = Vec::new();
    let mut round = 0;
    let mut idle = 0;
    while idle < 2 {
        let mut parts = Vec::new();
        let mut swapped = false;
        let mut p = 0;
        if round % 2 == 1 && k > 0 {
            parts.push(Diagram::id());
            p = 1;
        }
        while p < k {
            if p + 1 < k && arr[p] > arr[p + 1] {
                arr.swap(p, p + 1);
                parts.push(Diagram::swap());
                swapped = true;
                p += 2;
            } else if p + 1 < k {
                parts.push(Diagram::id());
                parts.push(Diagram::id());
                p += 2;
            } else {
                parts.push(Diagram::id());
                p += 1;
            }
        }
        if swapped {
            layers.push(Diagram::tensor_all(&parts));
            idle = 0;
        } else {
            idle += 1;
        }
        round += 1;
    }
    if layers.is_empty() {
        return Ok(Diagram::id_n(k));
    }
    Diagram::seq(&layers)
}

/// Whether `perm` is the identity.
pub fn is_identity(perm: &[usize]) -> bool {
    perm.iter().enumerate().all(|(i, &p)| i == p)
}

/// Swap of an `a`-wire block past a `b`-wire block.
pub fn block_swap(a: usize, b: usize) -> Diagram {
    let perm: Vec<usize> = (0..a).map(|i| b + i).chain(0..b).collect();
    permutation(&perm).expect("block swap is a permutation")
}

/// `after ∘ before`, dropping sides that are plain identity chains.
pub fn then(before: &Diagram, after: &Diagram) -> Result<Diagram> {
    if *after == Diagram::id_n(after.inputs()) && after.inputs() == after.outputs() && after.inputs() == before.outputs() {
        return Ok(before.clone());
    }
    if *before == Diagram::id_n(before.inputs()) && before.inputs() == before.outputs() && before.outputs() == after.inputs() {
        return Ok(after.clone());
    }
    Diagram::compose(after, before)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Port {
    /// Boundary input i.
    In(usize),
    /// Boundary output j.
    Out(usize),
    /// Input k of box b.
    BoxIn(usize, usize),
    /// Output k of box b.
    BoxOut(usize, usize),
}

impl Port {
    fn is_source(self) -> bool {
        matches!(self, Port::In(_) | Port::BoxOut(..))
    }
}

/// Boxes wired together by undirected edges between ports. Every port is
/// used by exactly one edge.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    pub inputs: usize,
    pub outputs: usize,
    pub boxes: Vec<Diagram>,
    pub edges: Vec<(Port, Port)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Tok {
    In(usize),
    CapA(usize),
    CapB(usize),
    BoxOut(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dest {
    BoxIn(usize, usize),
    Pass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Final {
    Out(usize),
    Cup(usize, usize),
}

impl Graph {
    pub fn new(inputs: usize, outputs: usize) -> Self {
        Graph { inputs, outputs, boxes: Vec::new(), edges: Vec::new() }
    }

    pub fn add_box(&mut self, d: &Diagram) -> usize {
        self.boxes.push(d.clone());
        self.boxes.len() - 1
    }

    pub fn connect(&mut self, a: Port, b: Port) {
        self.edges.push((a, b));
    }

    fn check_ports(&self) -> Result<()> {
        let mut used: HashMap<Port, usize> = HashMap::new();
        for &(a, b) in &self.edges {
            for p in [a, b] {
                let ok = match p {
                    Port::In(i) => i < self.inputs,
                    Port::Out(j) => j < self.outputs,
                    Port::BoxIn(b, k) => b < self.boxes.len() && k < self.boxes[b].inputs(),
                    Port::BoxOut(b, k) => b < self.boxes.len() && k < self.boxes[b].outputs(),
                };
                if !ok {
                    return Err(Error::Invalid(format!("port {p:?} does not exist")));
                }
                *used.entry(p).or_default() += 1;
            }
        }
        let total = self.inputs
            + self.outputs
            + self.boxes.iter().map(|b| b.inputs() + b.outputs()).sum::<usize>();
        if used.len() != total || used.values().any(|&c| c != 1) {
            return Err(Error::Invalid("every port must be used by exactly one edge".into()));
        }
        Ok(())
    }

    /// Compiles to `(id ⊗ cups) ∘ P2 ∘ (boxes ⊗ id) ∘ P1 ∘ (id ⊗ caps)`.
    pub fn compile(&self) -> Result<Diagram> {
        self.check_ports()?;
        let mut caps = 0usize;
        let mut cups = 0usize;
        let mut dest: HashMap<Tok, Dest> = HashMap::new();
        let mut fin: HashMap<Tok, Final> = HashMap::new();
        let src_tok = |p: Port| match p {
            Port::In(i) => Tok::In(i),
            Port::BoxOut(b, k) => Tok::BoxOut(b, k),
            _ => unreachable!(),
        };
        for &(a, b) in &self.edges {
            let (a, b) = if !a.is_source() && b.is_source() { (b, a) } else { (a, b) };
            match (a.is_source(), b.is_source()) {
                (true, true) => {
                    for (side, p) in [a, b].into_iter().enumerate() {
                        let t = src_tok(p);
                        if let Tok::In(_) = t {
                            dest.insert(t, Dest::Pass);
                        }
                        fin.insert(t, Final::Cup(cups, side));
                    }
                    cups += 1;
                }
                (true, false) => match (a, b) {
                    (Port::In(i), Port::BoxIn(c, k)) => {
                        dest.insert(Tok::In(i), Dest::BoxIn(c, k));
                    }
                    (Port::In(i), Port::Out(j)) => {
                        dest.insert(Tok::In(i), Dest::Pass);
                        fin.insert(Tok::In(i), Final::Out(j));
                    }
                    (Port::BoxOut(c, k), Port::Out(j)) => {
                        fin.insert(Tok::BoxOut(c, k), Final::Out(j));
                    }
                    (Port::BoxOut(c, k), Port::BoxIn(e, l)) => {
                        dest.insert(Tok::CapA(caps), Dest::BoxIn(e, l));
                        dest.insert(Tok::CapB(caps), Dest::Pass);
                        fin.insert(Tok::CapB(caps), Final::Cup(cups, 0));
                        fin.insert(Tok::BoxOut(c, k), Final::Cup(cups, 1));
                        caps += 1;
                        cups += 1;
                    }
                    _ => unreachable!(),
                },
                (false, false) => {
                    for (t, p) in [(Tok::CapA(caps), a), (Tok::CapB(caps), b)] {
                        match p {
                            Port::BoxIn(c, k) => {
                                dest.insert(t, Dest::BoxIn(c, k));
                            }
                            Port::Out(j) => {
                                dest.insert(t, Dest::Pass);
                                fin.insert(t, Final::Out(j));
                            }
                            _ => unreachable!(),
                        }
                    }
                    caps += 1;
                }
                (false, true) => unreachable!(),
            }
        }

        // Stage A: boundary inputs followed by the caps.
        let mut stage_a: Vec<Tok> = (0..self.inputs).map(Tok::In).collect();
        for c in 0..caps {
            stage_a.push(Tok::CapA(c));
            stage_a.push(Tok::CapB(c));
        }
        let mut parts = vec![Diagram::id_n(self.inputs)];
        parts.extend(std::iter::repeat_n(Diagram::cap(), caps));
        let mut term = if caps == 0 { Diagram::id_n(self.inputs) } else { Diagram::tensor_all(&parts) };

        // P1: box inputs in box order, then the passing wires in stage-A order.
        let mut box_offsets = Vec::with_capacity(self.boxes.len());
        let mut acc = 0;
        for b in &self.boxes {
            box_offsets.push(acc);
            acc += b.inputs();
        }
        let box_in_total = acc;
        let mut passing = Vec::new();
        let mut perm1 = vec![0; stage_a.len()];
        for (pos, t) in stage_a.iter().enumerate() {
            match dest.get(t) {
                Some(Dest::BoxIn(b, k)) => perm1[pos] = box_offsets[*b] + k,
                Some(Dest::Pass) => {
                    perm1[pos] = box_in_total + passing.len();
                    passing.push(*t);
                }
                None => return Err(Error::Invalid(format!("wire {t:?} has no destination"))),
            }
        }
        if !is_identity(&perm1) {
            term = then(&term, &permutation(&perm1)?)?;
        }
        let mut layer: Vec<Diagram> = self.boxes.clone();
        if !passing.is_empty() {
            layer.push(Diagram::id_n(passing.len()));
        }
        term = then(&term, &Diagram::tensor_all(&layer))?;

        // P2: boundary outputs first, then cup pairs.
        let mut stage_b: Vec<Tok> = Vec::new();
        for (b, d) in self.boxes.iter().enumerate() {
            stage_b.extend((0..d.outputs()).map(|k| Tok::BoxOut(b, k)));
        }
        stage_b.extend(passing);
        let mut perm2 = vec![0; stage_b.len()];
        for (pos, t) in stage_b.iter().enumerate() {
            perm2[pos] = match fin.get(t) {
                Some(Final::Out(j)) => *j,
                Some(Final::Cup(c, side)) => self.outputs + 2 * c + side,
                None => return Err(Error::Invalid(format!("wire {t:?} has no end"))),
            };
        }
        if !is_identity(&perm2) {
            term = then(&term, &permutation(&perm2)?)?;
        }
        if cups > 0 {
            let mut parts = vec![Diagram::id_n(self.outputs)];
            parts.extend(std::iter::repeat_n(Diagram::cup(), cups));
            term = then(&term, &Diagram::tensor_all(&parts))?;
        }
        Ok(term)
    }
}
