//! Diagram terms over the ZW generators plus the tick.

use std::fmt;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// White spider with parameter r, n inputs and m outputs.
    Z { r: Scalar, n: usize, m: usize },
    /// Black spider with n inputs and m outputs.
    W { n: usize, m: usize },
    Fswap,
    Tick,
    Id,
    Swap,
    /// 2 -> 0
    Cup,
    /// 0 -> 2
    Cap,
}

impl Generator {
    pub fn arity(&self) -> (usize, usize) {
        match self {
            Generator::Z { n, m, .. } | Generator::W { n, m } => (*n, *m),
            Generator::Fswap | Generator::Swap => (2, 2),
            Generator::Tick | Generator::Id => (1, 1),
            Generator::Cup => (2, 0),
            Generator::Cap => (0, 2),
        }
    }

    pub fn dagger(&self) -> Generator {
        match self {
            Generator::Z { r, n, m } => Generator::Z { r: r.conj(), n: *m, m: *n },
            Generator::W { n, m } => Generator::W { n: *m, m: *n },
            Generator::Cup => Generator::Cap,
            Generator::Cap => Generator::Cup,
            g => g.clone(),
        }
    }

    /// Entrywise conjugate; only Z-spider parameters change.
    pub fn conj(&self) -> Generator {
        match self {
            Generator::Z { r, n, m } => Generator::Z { r: r.conj(), n: *n, m: *m },
            g => g.clone(),
        }
    }
}

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Gen(Generator),
    /// The empty diagram 0 -> 0, written `(id 0)`.
    Empty,
    /// `Compose(after, before)`: before is applied first.
    Compose(Diagram, Diagram),
    Tensor(Diagram, Diagram),
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct Node {
    kind: Kind,
    inputs: usize,
    outputs: usize,
}

/// An immutable, cheaply clonable diagram term with cached arities.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Diagram(Arc<Node>);

impl Diagram {
    pub fn gen(g: Generator) -> Diagram {
        let (inputs, outputs) = g.arity();
        Diagram(Arc::new(Node { kind: Kind::Gen(g), inputs, outputs }))
    }

    pub fn empty() -> Diagram {
        Diagram(Arc::new(Node { kind: Kind::Empty, inputs: 0, outputs: 0 }))
    }

    pub fn z(r: Scalar, n: usize, m: usize) -> Diagram {
        Self::gen(Generator::Z { r, n, m })
    }

    pub fn w(n: usize, m: usize) -> Diagram {
        Self::gen(Generator::W { n, m })
    }

    pub fn fswap() -> Diagram {
        Self::gen(Generator::Fswap)
    }

    pub fn tick() -> Diagram {
        Self::gen(Generator::Tick)
    }

    pub fn id() -> Diagram {
        Self::gen(Generator::Id)
    }

    pub fn swap() -> Diagram {
        Self::gen(Generator::Swap)
    }

    pub fn cup() -> Diagram {
        Self::gen(Generator::Cup)
    }

    pub fn cap() -> Diagram {
        Self::gen(Generator::Cap)
    }

    /// `after ∘ before`.
    pub fn compose(after: &Diagram, before: &Diagram) -> Result<Diagram> {
        if before.outputs() != after.inputs() {
            return Err(Error::Arity {
                op: "compose",
                left_in: after.inputs(),
                left_out: after.outputs(),
                right_in: before.inputs(),
                right_out: before.outputs(),
            });
        }
        Ok(Diagram(Arc::new(Node {
            inputs: before.inputs(),
            outputs: after.outputs(),
            kind: Kind::Compose(after.clone(), before.clone()),
        })))
    }

    pub fn tensor(left: &Diagram, right: &Diagram) -> Diagram {
        Diagram(Arc::new(Node {
            inputs: left.inputs() + right.inputs(),
            outputs: left.outputs() + right.outputs(),
            kind: Kind::Tensor(left.clone(), right.clone()),
        }))
    }

    /// Composes a sequence listed in application order (first applied first).
    pub fn seq(parts: &[Diagram]) -> Result<Diagram> {
        let mut it = parts.iter();
        let first = it.next().ok_or_else(|| Error::Invalid("empty sequence".into()))?.clone();
        it.try_fold(first, |acc, d| Diagram::compose(d, &acc))
    }

    /// Right-nested tensor of the given parts; the empty list gives `(id 0)`.
    pub fn tensor_all(parts: &[Diagram]) -> Diagram {
        match parts {
            [] => Diagram::empty(),
            [d] => d.clone(),
            [d, rest @ ..] => Diagram::tensor(d, &Diagram::tensor_all(rest)),
        }
    }

    /// `id_n` as a right-nested tensor of `Id`.
    pub fn id_n(n: usize) -> Diagram {
        Diagram::tensor_all(&vec![Diagram::id(); n])
    }

    /// `d` tensored `k` times with itself.
    pub fn power(d: &Diagram, k: usize) -> Diagram {
        Diagram::tensor_all(&vec![d.clone(); k])
    }

    /// `id_a ⊗ d ⊗ id_b`, omitting empty identities.
    pub fn padded(a: usize, d: &Diagram, b: usize) -> Diagram {
        let mut parts = Vec::new();
        if a > 0 {
            parts.push(Diagram::id_n(a));
        }
        parts.push(d.clone());
        if b > 0 {
            parts.push(Diagram::id_n(b));
        }
        Diagram::tensor_all(&parts)
    }

    pub fn ket0() -> Diagram {
        Diagram::z(Scalar::zero(), 0, 1)
    }

    pub fn ket1() -> Diagram {
        Diagram::w(0, 1)
    }

    pub fn bra0() -> Diagram {
        Diagram::z(Scalar::zero(), 1, 0)
    }

    pub fn bra1() -> Diagram {
        Diagram::w(1, 0)
    }

    pub fn not() -> Diagram {
        Diagram::w(1, 1)
    }

    /// Discard `1 -> 0`: a copy followed by a cup with a tick on its second leg.
    pub fn ground() -> Diagram {
        let tcup = Diagram::compose(&Diagram::cup(), &Diagram::tensor(&Diagram::id(), &Diagram::tick()))
            .expect("ticked cup is well typed");
        Diagram::compose(&tcup, &Diagram::z(Scalar::one(), 1, 2)).expect("ground is well typed")
    }

    pub fn tcup() -> Diagram {
        Diagram::compose(&Diagram::cup(), &Diagram::tensor(&Diagram::tick(), &Diagram::id()))
            .expect("ticked cup is well typed")
    }

    pub fn tcap() -> Diagram {
        Diagram::tcup().dagger()
    }

    pub fn inputs(&self) -> usize {
        self.0.inputs
    }

    pub fn outputs(&self) -> usize {
        self.0.outputs
    }

    pub fn arity(&self) -> (usize, usize) {
        (self.0.inputs, self.0.outputs)
    }

    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    pub fn as_gen(&self) -> Option<&Generator> {
        match self.kind() {
            Kind::Gen(g) => Some(g),
            _ => None,
        }
    }

    pub fn dagger(&self) -> Diagram {
        match self.kind() {
            Kind::Gen(g) => Diagram::gen(g.dagger()),
            Kind::Empty => self.clone(),
            Kind::Compose(a, b) => {
                Diagram::compose(&b.dagger(), &a.dagger()).expect("dagger preserves typing")
            }
            Kind::Tensor(a, b) => Diagram::tensor(&a.dagger(), &b.dagger()),
        }
    }

    /// Applies `f` to every generator, keeping the term shape.
    /// `f` must preserve arities.
    pub fn map_gens(&self, f: &impl Fn(&Generator) -> Generator) -> Diagram {
        match self.kind() {
            Kind::Gen(g) => {
                let h = f(g);
                debug_assert_eq!(h.arity(), g.arity());
                Diagram::gen(h)
            }
            Kind::Empty => self.clone(),
            Kind::Compose(a, b) => {
                Diagram::compose(&a.map_gens(f), &b.map_gens(f)).expect("arity-preserving map")
            }
            Kind::Tensor(a, b) => Diagram::tensor(&a.map_gens(f), &b.map_gens(f)),
        }
    }

    pub fn has_tick(&self) -> bool {
        self.any_gen(&|g| *g == Generator::Tick)
    }

    pub fn any_gen(&self, p: &impl Fn(&Generator) -> bool) -> bool {
        match self.kind() {
            Kind::Gen(g) => p(g),
            Kind::Empty => false,
            Kind::Compose(a, b) | Kind::Tensor(a, b) => a.any_gen(p) || b.any_gen(p),
        }
    }

    /// Number of generator leaves satisfying `p`.
    pub fn count_gens(&self, p: &impl Fn(&Generator) -> bool) -> usize {
        match self.kind() {
            Kind::Gen(g) => usize::from(p(g)),
            Kind::Empty => 0,
            Kind::Compose(a, b) | Kind::Tensor(a, b) => a.count_gens(p) + b.count_gens(p),
        }
    }

    /// Number of generator leaves.
    pub fn size(&self) -> usize {
        match self.kind() {
            Kind::Gen(_) => 1,
            Kind::Empty => 0,
            Kind::Compose(a, b) | Kind::Tensor(a, b) => a.size() + b.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self.kind() {
            Kind::Gen(_) | Kind::Empty => 0,
            Kind::Compose(a, b) | Kind::Tensor(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Arities recomputed bottom-up, ignoring the cache. `None` if ill-typed.
    pub fn recompute_arity(&self) -> Option<(usize, usize)> {
        match self.kind() {
            Kind::Gen(g) => Some(g.arity()),
            Kind::Empty => Some((0, 0)),
            Kind::Compose(a, b) => {
                let (ai, ao) = a.recompute_arity()?;
                let (bi, bo) = b.recompute_arity()?;
                (bo == ai).then_some((bi, ao))
            }
            Kind::Tensor(a, b) => {
                let (ai, ao) = a.recompute_arity()?;
                let (bi, bo) = b.recompute_arity()?;
                Some((ai + bi, ao + bo))
            }
        }
    }

    /// The subterm at `path`; child 0 is the `after`/`left` side.
    pub fn at(&self, path: &[usize]) -> Option<&Diagram> {
        let Some((&i, rest)) = path.split_first() else {
            return Some(self);
        };
        match (self.kind(), i) {
            (Kind::Compose(a, _) | Kind::Tensor(a, _), 0) => a.at(rest),
            (Kind::Compose(_, b) | Kind::Tensor(_, b), 1) => b.at(rest),
            _ => None,
        }
    }

    /// Replaces the subterm at `path`, which must keep its arity.
    pub fn replace_at(&self, path: &[usize], new: &Diagram) -> Result<Diagram> {
        let Some((&i, rest)) = path.split_first() else {
            if new.arity() != self.arity() {
                return Err(Error::Arity {
                    op: "replace",
                    left_in: self.inputs(),
                    left_out: self.outputs(),
                    right_in: new.inputs(),
                    right_out: new.outputs(),
                });
            }
            return Ok(new.clone());
        };
        let bad = || Error::Invalid(format!("path {path:?} leaves the term"));
        match (self.kind(), i) {
            (Kind::Compose(a, b), 0) => Diagram::compose(&a.replace_at(rest, new)?, b),
            (Kind::Compose(a, b), 1) => Diagram::compose(a, &b.replace_at(rest, new)?),
            (Kind::Tensor(a, b), 0) => Ok(Diagram::tensor(&a.replace_at(rest, new)?, b)),
            (Kind::Tensor(a, b), 1) => Ok(Diagram::tensor(a, &b.replace_at(rest, new)?)),
            _ => Err(bad()),
        }
    }

    /// Every path in the term, in pre-order.
    pub fn paths(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.collect_paths(&mut Vec::new(), &mut out);
        out
    }

    fn collect_paths(&self, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(prefix.clone());
        if let Kind::Compose(a, b) | Kind::Tensor(a, b) = self.kind() {
            prefix.push(0);
            a.collect_paths(prefix, out);
            prefix.pop();
            prefix.push(1);
            b.collect_paths(prefix, out);
            prefix.pop();
        }
    }

    /// If this term is the canonical `id_n` chain, returns n.
    fn id_chain(&self) -> Option<usize> {
        match self.kind() {
            Kind::Empty => Some(0),
            Kind::Gen(Generator::Id) => Some(1),
            Kind::Tensor(a, b) if a.as_gen() == Some(&Generator::Id) => {
                let k = b.id_chain()?;
                (k >= 1).then_some(k + 1)
            }
            _ => None,
        }
    }

    pub fn parse(text: &str) -> Result<Diagram> {
        let mut p = TermParser::new(text);
        let d = p.term()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.err("trailing input after term"));
        }
        Ok(d)
    }

    /// Text form; `parse(print(d)) == d` for every term.
    pub fn print(&self) -> String {
        let mut s = String::new();
        self.write_term(&mut s);
        s
    }

    fn write_term(&self, s: &mut String) {
        if let Some(k) = self.id_chain() {
            let _ = write!(s, "(id {k})");
            return;
        }
        if *self == Diagram::ground() {
            s.push_str("ground");
            return;
        }
        if *self == Diagram::tcup() {
            s.push_str("tcup");
            return;
        }
        if *self == Diagram::tcap() {
            s.push_str("tcap");
            return;
        }
        match self.kind() {
            Kind::Gen(g) => match g {
                Generator::Z { r, n, m } => {
                    let _ = write!(s, "(z {r} {n} {m})");
                }
                Generator::W { n, m } => {
                    let _ = write!(s, "(w {n} {m})");
                }
                Generator::Fswap => s.push_str("fswap"),
                Generator::Tick => s.push_str("tick"),
                Generator::Swap => s.push_str("swap"),
                Generator::Cup => s.push_str("cup"),
                Generator::Cap => s.push_str("cap"),
                Generator::Id => s.push_str("(id 1)"),
            },
            Kind::Empty => s.push_str("(id 0)"),
            Kind::Compose(a, b) => {
                s.push_str("(compose ");
                a.write_term(s);
                s.push(' ');
                b.write_term(s);
                s.push(')');
            }
            Kind::Tensor(a, b) => {
                s.push_str("(tensor ");
                a.write_term(s);
                s.push(' ');
                b.write_term(s);
                s.push(')');
            }
        }
    }

    /// GraphViz rendering. Z, W, fswap, cup and cap become nodes; identities,
    /// swaps and ticks are wiring, ticked wires are dashed.
    pub fn render_dot(&self) -> String {
        let mut r = DotRenderer { nodes: Vec::new(), edges: Vec::new() };
        let inputs: Vec<WireEnd> =
            (0..self.inputs()).map(|i| WireEnd { from: format!("in{i}"), port: None, ticks: 0 }).collect();
        let outs = r.walk(self, inputs);
        let mut s = String::from("digraph zw {\n  rankdir=BT;\n");
        for i in 0..self.inputs() {
            let _ = writeln!(s, "  in{i} [shape=plaintext, label=\"in {i}\"];");
        }
        for j in 0..self.outputs() {
            let _ = writeln!(s, "  out{j} [shape=plaintext, label=\"out {j}\"];");
        }
        for (id, attrs) in &r.nodes {
            let _ = writeln!(s, "  {id} [{attrs}];");
        }
        for (j, end) in outs.into_iter().enumerate() {
            r.edge(end, format!("out{j}"), None);
        }
        for e in &r.edges {
            let _ = writeln!(s, "  {e};");
        }
        s.push_str("}\n");
        s
    }
}

struct WireEnd {
    from: String,
    port: Option<usize>,
    ticks: usize,
}

struct DotRenderer {
    nodes: Vec<(String, String)>,
    edges: Vec<String>,
}

impl DotRenderer {
    fn edge(&mut self, end: WireEnd, to: String, to_port: Option<usize>) {
        let mut attrs = Vec::new();
        if end.ticks % 2 == 1 {
            attrs.push("style=dashed".to_string());
            attrs.push("label=\"∤\"".to_string());
        }
        if let Some(p) = end.port {
            attrs.push(format!("taillabel=\"{p}\""));
        }
        if let Some(p) = to_port {
            attrs.push(format!("headlabel=\"{p}\""));
        }
        let attrs = if attrs.is_empty() { String::new() } else { format!(" [{}]", attrs.join(", ")) };
        self.edges.push(format!("{} -> {}{attrs}", end.from, to));
    }

    fn walk(&mut self, d: &Diagram, mut ins: Vec<WireEnd>) -> Vec<WireEnd> {
        match d.kind() {
            Kind::Empty => ins,
            Kind::Compose(a, b) => {
                let mid = self.walk(b, ins);
                self.walk(a, mid)
            }
            Kind::Tensor(a, b) => {
                let rest = ins.split_off(a.inputs());
                let mut out = self.walk(a, ins);
                out.extend(self.walk(b, rest));
                out
            }
            Kind::Gen(g) => match g {
                Generator::Id => ins,
                Generator::Swap => {
                    ins.swap(0, 1);
                    ins
                }
                Generator::Tick => {
                    ins[0].ticks += 1;
                    ins
                }
                _ => {
                    let id = format!("g{}", self.nodes.len());
                    let attrs = match g {
                        Generator::Z { r, .. } => {
                            format!("shape=circle, style=filled, fillcolor=white, label=\"Z({r})\"")
                        }
                        Generator::W { .. } => {
                            "shape=circle, style=filled, fillcolor=black, fontcolor=white, label=\"W\""
                                .to_string()
                        }
                        Generator::Fswap => "shape=box, label=\"fswap\"".to_string(),
                        Generator::Cup => "shape=point, label=\"cup\"".to_string(),
                        _ => "shape=point, label=\"cap\"".to_string(),
                    };
                    self.nodes.push((id.clone(), attrs));
                    let ordered = matches!(g, Generator::Fswap);
                    for (k, end) in ins.into_iter().enumerate() {
                        self.edge(end, id.clone(), ordered.then_some(k));
                    }
                    (0..g.arity().1)
                        .map(|k| WireEnd { from: id.clone(), port: ordered.then_some(k), ticks: 0 })
                        .collect()
                }
            },
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.print())
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {}->{}", self.print(), self.inputs(), self.outputs())
    }
}

impl std::str::FromStr for Diagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Diagram::parse(s)
    }
}

struct TermParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> TermParser<'a> {
    fn new(text: &'a str) -> Self {
        TermParser { src: text.as_bytes(), pos: 0 }
    }

    fn location(&self, pos: usize) -> (usize, usize) {
        let before = &self.src[..pos.min(self.src.len())];
        let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
        let col = before.iter().rev().take_while(|&&b| b != b'\n').count() + 1;
        (line, col)
    }

    fn err_at(&self, pos: usize, msg: &str) -> Error {
        let (line, column) = self.location(pos);
        Error::Parse { line, column, message: msg.to_string() }
    }

    fn err(&self, msg: &str) -> Error {
        self.err_at(self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while let Some(&b) = self.src.get(self.pos) {
            if b == b';' {
                while self.pos < self.src.len() && self.src[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn atom(&mut self) -> Result<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        while let Some(&b) = self.src.get(self.pos) {
            if b.is_ascii_whitespace() || b == b'(' || b == b')' || b == b';' {
                break;
            }
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a token"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).map_err(|_| self.err_at(start, "invalid UTF-8"))?;
        Ok((start, s))
    }

    fn nat(&mut self) -> Result<usize> {
        let (at, s) = self.atom()?;
        s.parse().map_err(|_| self.err_at(at, &format!("expected a natural number, found '{s}'")))
    }

    fn close(&mut self) -> Result<()> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&b')') {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err("expected ')'"))
        }
    }

    fn term(&mut self) -> Result<Diagram> {
        self.skip_ws();
        match self.src.get(self.pos) {
            None => Err(self.err("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let (at, head) = self.atom()?;
                let d = match head {
                    "compose" => {
                        let a = self.term()?;
                        let b = self.term()?;
                        Diagram::compose(&a, &b)?
                    }
                    "tensor" => {
                        let a = self.term()?;
                        let b = self.term()?;
                        Diagram::tensor(&a, &b)
                    }
                    "id" => Diagram::id_n(self.nat()?),
                    "z" => {
                        let (sat, s) = self.atom()?;
                        let r = Scalar::parse(s).map_err(|e| match e {
                            Error::Parse { column, message, .. } => self.err_at(sat + column - 1, &message),
                            other => other,
                        })?;
                        let n = self.nat()?;
                        let m = self.nat()?;
                        Diagram::z(r, n, m)
                    }
                    "w" => {
                        let n = self.nat()?;
                        let m = self.nat()?;
                        Diagram::w(n, m)
                    }
                    other => return Err(self.err_at(at, &format!("unknown form '{other}'"))),
                };
                self.close()?;
                Ok(d)
            }
            Some(_) => {
                let (at, name) = self.atom()?;
                Ok(match name {
                    "fswap" => Diagram::fswap(),
                    "swap" => Diagram::swap(),
                    "cup" => Diagram::cup(),
                    "cap" => Diagram::cap(),
                    "tick" => Diagram::tick(),
                    "ground" => Diagram::ground(),
                    "ket0" => Diagram::ket0(),
                    "ket1" => Diagram::ket1(),
                    "bra0" => Diagram::bra0(),
                    "bra1" => Diagram::bra1(),
                    "not" => Diagram::not(),
                    "tcup" => Diagram::tcup(),
                    "tcap" => Diagram::tcap(),
                    other => return Err(self.err_at(at, &format!("unknown token '{other}'"))),
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arities_of_basic_terms() {
        let d = Diagram::compose(&Diagram::cup(), &Diagram::cap()).unwrap();
        assert_eq!(d.arity(), (0, 0));
        assert!(matches!(Diagram::compose(&Diagram::tick(), &Diagram::cup()), Err(Error::Arity { .. })));
        assert_eq!(Diagram::tensor(&Diagram::id(), &Diagram::tick()).arity(), (2, 2));
        assert_eq!(Diagram::ground().arity(), (1, 0));
        assert_eq!(Diagram::tcap().arity(), (0, 2));
    }

    #[test]
    fn dagger_table() {
        assert_eq!(Diagram::cup().dagger(), Diagram::cap());
        let d = Diagram::z(Scalar::omega(), 1, 2).dagger();
        assert_eq!(d, Diagram::z(-Scalar::omega_pow(3), 2, 1));
    }

    #[test]
    fn parse_examples() {
        let d = Diagram::parse("(compose cap (id 0))").unwrap();
        assert_eq!(d.arity(), (0, 2));
        assert_eq!(Diagram::parse("(z 1/2 1 2)").unwrap(), Diagram::z(Scalar::half(), 1, 2));
        assert_eq!(Diagram::parse("(tensor tick tick)").unwrap().arity(), (2, 2));
        assert_eq!(Diagram::parse(" ; comment\n (id 3) ").unwrap(), Diagram::id_n(3));
    }

    #[test]
    fn parse_errors() {
        match Diagram::parse("(compose tick\n  (w 1 x))") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 8)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(Diagram::parse("(compose tick cup)"), Err(Error::Arity { .. })));
        assert!(Diagram::parse("tick tick").is_err());
        assert!(Diagram::parse("(z 1+ 1 1)").is_err());
    }

    #[test]
    fn print_round_trip() {
        for text in ["(compose tick (z 1/2-w^3 1 1))", "ground", "(tensor (id 2) (w 0 3))", "tcap", "(id 0)"] {
            let d = Diagram::parse(text).unwrap();
            assert_eq!(d.print(), text);
            assert_eq!(Diagram::parse(&d.print()).unwrap(), d);
        }
    }

    #[test]
    fn dot_for_tick() {
        let s = Diagram::tick().render_dot();
        assert!(s.contains("in0 -> out0 [style=dashed, label=\"∤\"]"));
        let s = Diagram::z(Scalar::one(), 0, 0).render_dot();
        assert!(s.contains("Z(1)") && !s.contains("->"));
    }

    #[test]
    fn paths_and_replacement() {
        let d = Diagram::parse("(compose tick (tensor (id 1) (id 0)))").unwrap();
        assert_eq!(d.at(&[0]), Some(&Diagram::tick()));
        let e = d.replace_at(&[0], &Diagram::not()).unwrap();
        assert_eq!(e.print(), "(compose (w 1 1) (tensor (id 1) (id 0)))");
        assert!(d.replace_at(&[0], &Diagram::cup()).is_err());
    }
}
