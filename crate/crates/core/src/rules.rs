//! Axiom schemas, the lemma corpus, soundness reports and positional rewriting.

use std::fmt::Write as _;

use rand::Rng;
use serde_json::json;

use crate::diagram::{Diagram, Kind};
use crate::error::{Error, Result};
use crate::normalform::{canonical_of_map, nf_diagram, NormalForm};
use crate::random;
use crate::scalar::Scalar;
use crate::semantics;
use crate::wiring;

/// Largest arity parameter accepted by the schemas.
pub const MAX_ARITY: usize = 3;

type Builder = fn(&[Scalar], &[usize]) -> Result<(Diagram, Diagram)>;
type SideCondition = fn(&[usize]) -> std::result::Result<(), &'static str>;

/// A parameterized equation between two diagram builders.
#[derive(Clone, Copy)]
pub struct RuleSchema {
    pub name: &'static str,
    pub group: &'static str,
    pub scalars: &'static [&'static str],
    pub arities: &'static [&'static str],
    build: Builder,
    side: Option<SideCondition>,
}

impl std::fmt::Debug for RuleSchema {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RuleSchema({})", self.name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub scalars: Vec<Scalar>,
    pub arities: Vec<usize>,
}

impl Params {
    pub fn new(scalars: Vec<Scalar>, arities: Vec<usize>) -> Self {
        Params { scalars, arities }
    }

    pub fn none() -> Self {
        Params { scalars: Vec::new(), arities: Vec::new() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    LeftToRight,
    RightToLeft,
}

impl RuleSchema {
    pub fn describe(&self, p: &Params) -> String {
        let mut parts = Vec::new();
        for (name, v) in self.arities.iter().zip(&p.arities) {
            parts.push(format!("{name}={v}"));
        }
        for (name, v) in self.scalars.iter().zip(&p.scalars) {
            parts.push(format!("{name}={v}"));
        }
        if parts.is_empty() {
            "-".into()
        } else {
            parts.join(",")
        }
    }

    /// Builds both sides after checking the parameter shape and side conditions.
    pub fn instantiate(&self, p: &Params) -> Result<(Diagram, Diagram)> {
        let bad = |reason: String| Error::Inadmissible { rule: self.name.to_string(), reason };
        if p.scalars.len() != self.scalars.len() || p.arities.len() != self.arities.len() {
            return Err(bad(format!(
                "expects {} scalar and {} arity parameters, got {} and {}",
                self.scalars.len(),
                self.arities.len(),
                p.scalars.len(),
                p.arities.len()
            )));
        }
        if let Some(a) = p.arities.iter().find(|&&a| a > MAX_ARITY) {
            return Err(bad(format!("arity {a} outside the supported range 0..={MAX_ARITY}")));
        }
        if let Some(side) = self.side {
            side(&p.arities).map_err(|why| bad(why.to_string()))?;
        }
        let (l, r) = (self.build)(&p.scalars, &p.arities)?;
        debug_assert_eq!(l.arity(), r.arity(), "{}", self.name);
        Ok((l, r))
    }

    pub fn admissible(&self, arities: &[usize]) -> bool {
        arities.len() == self.arities.len()
            && arities.iter().all(|&a| a <= MAX_ARITY)
            && self.side.is_none_or(|s| s(arities).is_ok())
    }

    /// Every admissible parameter assignment over the scalar grid and
    /// arities `0..=MAX_ARITY`.
    pub fn sample_grid(&self) -> Vec<Params> {
        let grid = random::scalar_grid();
        let mut scalar_sets: Vec<Vec<Scalar>> = vec![Vec::new()];
        for _ in self.scalars {
            scalar_sets = scalar_sets
                .into_iter()
                .flat_map(|prefix| {
                    grid.iter().map(move |s| {
                        let mut v = prefix.clone();
                        v.push(s.clone());
                        v
                    })
                })
                .collect();
        }
        let mut arity_sets: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in self.arities {
            arity_sets = arity_sets
                .into_iter()
                .flat_map(|prefix| {
                    (0..=MAX_ARITY).map(move |a| {
                        let mut v = prefix.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for a in arity_sets.iter().filter(|a| self.admissible(a)) {
            for s in &scalar_sets {
                out.push(Params::new(s.clone(), a.clone()));
            }
        }
        out
    }

    /// Random admissible parameters with random scalars.
    pub fn sample_random<R: Rng>(&self, rng: &mut R) -> Params {
        loop {
            let arities: Vec<usize> = self.arities.iter().map(|_| rng.random_range(0..=MAX_ARITY)).collect();
            if self.admissible(&arities) {
                let scalars = self.scalars.iter().map(|_| random::scalar(rng)).collect();
                return Params::new(scalars, arities);
            }
        }
    }
}

fn c(after: &Diagram, before: &Diagram) -> Result<Diagram> {
    Diagram::compose(after, before)
}

fn t(a: &Diagram, b: &Diagram) -> Diagram {
    Diagram::tensor(a, b)
}

/// Application-order composition.
fn seq(parts: &[Diagram]) -> Result<Diagram> {
    Diagram::seq(parts)
}

fn x() -> Diagram {
    Diagram::not()
}

fn z(r: Scalar, n: usize, m: usize) -> Diagram {
    Diagram::z(r, n, m)
}

fn z1(r: Scalar) -> Diagram {
    Diagram::z(r, 1, 1)
}

fn one() -> Scalar {
    Scalar::one()
}

fn f() -> Diagram {
    Diagram::fswap()
}

fn id() -> Diagram {
    Diagram::id()
}

/// `after ∘ d` unless `after` is the empty diagram on no wires.
fn then_ticks(d: &Diagram, k: usize) -> Result<Diagram> {
    if k == 0 {
        Ok(d.clone())
    } else {
        c(&Diagram::power(&Diagram::tick(), k), d)
    }
}

fn ticks_then(k: usize, d: &Diagram) -> Result<Diagram> {
    if k == 0 {
        Ok(d.clone())
    } else {
        c(d, &Diagram::power(&Diagram::tick(), k))
    }
}

/// Wire `i*m + j` goes to `j*n + i`.
fn grid_transpose(n: usize, m: usize) -> Result<Diagram> {
    let mut perm = vec![0; n * m];
    for i in 0..n {
        for j in 0..m {
            perm[i * m + j] = j * n + i;
        }
    }
    wiring::permutation(&perm)
}

/// Scalar gadget `W(2,0) ∘ (id ⊗ tick) ∘ Z(r,0,2)` worth `r + r̄`.
fn selector(r: Scalar) -> Result<Diagram> {
    seq(&[z(r, 0, 2), t(&id(), &Diagram::tick()), Diagram::w(2, 0)])
}

fn bend_last_input(spider: &Diagram, n: usize) -> Result<Diagram> {
    c(&t(spider, &id()), &Diagram::padded(n - 1, &Diagram::cap(), 0))
}

fn side_b(a: &[usize]) -> std::result::Result<(), &'static str> {
    if a[0] > 0 || (a[0] == 0 && a[1] == 0) {
        Ok(())
    } else {
        Err("side condition violated: either n=m=0 or n>0")
    }
}

fn side_bend(a: &[usize]) -> std::result::Result<(), &'static str> {
    if a[0] >= 1 {
        Ok(())
    } else {
        Err("bending needs n>=1")
    }
}

macro_rules! schema {
    ($name:expr, $group:expr, [$($s:expr),*], [$($a:expr),*], $side:expr, $build:expr) => {
        RuleSchema { name: $name, group: $group, scalars: &[$($s),*], arities: &[$($a),*], build: $build, side: $side }
    };
}

/// The axiom schemas followed by the structural equations.
pub fn schemas() -> Vec<RuleSchema> {
    vec![
        schema!("zs", "zw", ["r", "s"], ["n", "m"], None, |s, a| {
            let l = c(&z(s[1].clone(), 1, a[1]), &z(s[0].clone(), a[0], 1))?;
            Ok((l, z(&s[0] * &s[1], a[0], a[1])))
        }),
        schema!("id", "zw", [], [], None, |_, _| Ok((z1(one()), id()))),
        schema!("fl", "zw", [], [], None, |_, _| {
            let l = seq(&[t(&id(), &Diagram::cap()), t(&f(), &id()), t(&id(), &Diagram::cup())])?;
            Ok((l, z1(Scalar::from_int(-1))))
        }),
        schema!("ws", "zw", [], ["n", "m"], None, |_, a| {
            let l = seq(&[Diagram::w(a[0], 1), x(), Diagram::w(1, a[1])])?;
            Ok((l, Diagram::w(a[0], a[1])))
        }),
        schema!("in", "zw", [], [], None, |_, _| Ok((c(&x(), &x())?, id()))),
        schema!("rm", "zw", [], [], None, |_, _| Ok((c(&Diagram::w(2, 1), &f())?, Diagram::w(2, 1)))),
        schema!("di", "zw", [], [], None, |_, _| {
            let copy = z(one(), 1, 2);
            Ok((c(&copy, &x())?, c(&t(&x(), &x()), &copy)?))
        }),
        schema!("b", "zw", [], ["n", "m"], Some(side_b), |_, a| {
            let (n, m) = (a[0], a[1]);
            let l = c(&Diagram::w(1, m), &z(one(), n, 1))?;
            let ws = Diagram::power(&Diagram::w(1, m), n);
            let zs = Diagram::power(&z(one(), n, 1), m);
            let mid = wiring::then(&ws, &grid_transpose(n, m)?)?;
            Ok((l, c(&zs, &mid)?))
        }),
        schema!("ho", "zw", [], [], None, |_, _| {
            let l = c(&z(one(), 2, 1), &Diagram::w(1, 2))?;
            Ok((l, c(&Diagram::ket0(), &Diagram::bra1())?))
        }),
        schema!("ad", "zw", ["r", "s"], [], None, |s, _| {
            let l = seq(&[Diagram::w(1, 2), t(&z1(s[0].clone()), &z1(s[1].clone())), Diagram::w(2, 1)])?;
            Ok((l, seq(&[x(), z1(&s[0] + &s[1]), x()])?))
        }),
        schema!("bw", "zw", [], [], None, |_, _| {
            let l = c(&Diagram::w(1, 2), &Diagram::w(2, 1))?;
            let top = c(&Diagram::w(1, 2), &x())?;
            let bot = c(&x(), &Diagram::w(2, 1))?;
            let r = seq(&[t(&top, &top), Diagram::padded(1, &f(), 1), t(&bot, &bot)])?;
            Ok((l, r))
        }),
        schema!("fw", "zw", [], [], None, |_, _| {
            let w = Diagram::w(1, 2);
            let l = seq(&[t(&w, &id()), t(&id(), &f()), t(&f(), &id())])?;
            let r = seq(&[t(&id(), &z1(Scalar::from_int(-1))), f(), t(&id(), &w)])?;
            Ok((l, r))
        }),
        schema!("fz", "zw", ["r"], [], None, |s, _| {
            let copy = z(s[0].clone(), 1, 2);
            let l = seq(&[t(&copy, &id()), t(&id(), &f()), t(&f(), &id())])?;
            Ok((l, seq(&[Diagram::swap(), t(&id(), &copy)])?))
        }),
        schema!("fi", "zw", [], [], None, |_, _| Ok((c(&f(), &f())?, Diagram::id_n(2)))),
        schema!("yb", "zw", [], [], None, |_, _| {
            let (a, b) = (t(&f(), &id()), t(&id(), &f()));
            Ok((seq(&[a.clone(), b.clone(), a.clone()])?, seq(&[b.clone(), a, b])?))
        }),
        schema!("fr", "zw", [], [], None, |_, _| {
            let l = seq(&[
                Diagram::padded(2, &Diagram::cap(), 0),
                Diagram::padded(1, &f(), 1),
                Diagram::padded(0, &Diagram::cup(), 2),
            ])?;
            Ok((l, f()))
        }),
        schema!("fs", "zw", [], [], None, |_, _| {
            Ok((seq(&[Diagram::swap(), f(), Diagram::swap()])?, f()))
        }),
        schema!("nz", "tick", ["r"], ["n", "m"], None, |s, a| {
            let (n, m) = (a[0], a[1]);
            let l = then_ticks(&z(s[0].clone(), n, m), m)?;
            let r = ticks_then(n, &z(s[0].conj(), n, m))?;
            Ok((l, r))
        }),
        schema!("nw", "tick", [], ["n", "m"], None, |_, a| {
            let (n, m) = (a[0], a[1]);
            let w = Diagram::w(n, m);
            Ok((then_ticks(&w, m)?, ticks_then(n, &w)?))
        }),
        schema!("nf", "tick", [], [], None, |_, _| {
            let tt = t(&Diagram::tick(), &Diagram::tick());
            Ok((c(&tt, &f())?, c(&f(), &tt)?))
        }),
        schema!("zt", "extra", ["r"], [], None, |s, _| {
            let sel = c(&Diagram::w(2, 1), &t(&id(), &Diagram::tick()))?;
            let re = (&s[0] + &s[0].conj()) * Scalar::half();
            Ok((c(&sel, &z(s[0].clone(), 0, 2))?, c(&sel, &z(re, 0, 2))?))
        }),
        schema!("tl", "extra", [], [], None, |_, _| {
            let l = seq(&[Diagram::cap(), t(&Diagram::tick(), &id()), Diagram::cup()])?;
            let w = Scalar::omega();
            Ok((l, c(&z(w.clone(), 1, 0), &z(w, 0, 1))?))
        }),
        schema!("th", "extra", ["r", "s"], [], None, |s, _| {
            let l = t(&selector(s[0].clone())?, &selector(s[1].clone())?);
            let prod = (&s[0] + &s[0].conj()) * (&s[1] + &s[1].conj()) * Scalar::half();
            Ok((l, selector(prod)?))
        }),
        schema!("td", "extra", ["r", "s"], [], None, |s, _| {
            let (r, q) = (&s[0], &s[1]);
            let l = t(&nf_diagram(1, &[(1, 0, r.clone())])?, &nf_diagram(1, &[(1, 0, q.clone())])?);
            let rhs = nf_diagram(2, &[(3, 0, r * q), (2, 1, r * &q.conj())])?;
            Ok((l, rhs))
        }),
        schema!("snake", "structural", [], [], None, |_, _| {
            Ok((c(&t(&id(), &Diagram::cup()), &t(&Diagram::cap(), &id()))?, id()))
        }),
        schema!("swap-nat", "structural", ["r"], [], None, |s, _| {
            let zr = z1(s[0].clone());
            Ok((c(&Diagram::swap(), &t(&zr, &id()))?, c(&t(&id(), &zr), &Diagram::swap())?))
        }),
        schema!("flex-z", "structural", ["r"], ["n", "m"], Some(side_bend), |s, a| {
            let (n, m) = (a[0], a[1]);
            Ok((bend_last_input(&z(s[0].clone(), n, m), n)?, z(s[0].clone(), n - 1, m + 1)))
        }),
        schema!("flex-w", "structural", [], ["n", "m"], Some(side_bend), |_, a| {
            let (n, m) = (a[0], a[1]);
            Ok((bend_last_input(&Diagram::w(n, m), n)?, Diagram::w(n - 1, m + 1)))
        }),
        schema!("flex-tick", "structural", [], [], None, |_, _| {
            let cap = Diagram::cap();
            Ok((c(&t(&Diagram::tick(), &id()), &cap)?, c(&t(&id(), &Diagram::tick()), &cap)?))
        }),
        schema!("tick-snake", "structural", [], [], None, |_, _| {
            let l = seq(&[
                t(&Diagram::cap(), &id()),
                Diagram::padded(1, &Diagram::tick(), 1),
                t(&id(), &Diagram::cup()),
            ])?;
            Ok((l, Diagram::tick()))
        }),
    ]
}

/// The 24 axiom schemas without the structural equations.
pub fn axiom_schemas() -> Vec<RuleSchema> {
    schemas().into_iter().filter(|s| s.group != "structural").collect()
}

pub fn schema(name: &str) -> Result<RuleSchema> {
    schemas().into_iter().find(|s| s.name == name).ok_or_else(|| Error::UnknownRule(name.to_string()))
}

pub fn instantiate(rule: &RuleSchema, params: &Params) -> Result<(Diagram, Diagram)> {
    rule.instantiate(params)
}

/// A concrete equation to be checked.
#[derive(Clone, Debug)]
pub struct Instance {
    pub kind: &'static str,
    pub name: String,
    pub params: String,
    pub lhs: Diagram,
    pub rhs: Diagram,
}

#[derive(Clone, Debug)]
pub struct ReportEntry {
    pub kind: &'static str,
    pub name: String,
    pub params: String,
    pub pass: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub entries: Vec<ReportEntry>,
}

impl Report {
    pub fn total(&self) -> usize {
        self.entries.len()
    }

    pub fn passed(&self) -> usize {
        self.entries.iter().filter(|e| e.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.total() - self.passed()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }

    pub fn summary(&self) -> String {
        format!("{}/{}/{} failures", self.total(), self.passed(), self.failed())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            let verdict = if e.pass { "PASS" } else { "FAIL" };
            let _ = write!(s, "{} {} {} {}", e.kind, e.name, e.params, verdict);
            if let Some(err) = &e.error {
                let _ = write!(s, " ({err})");
            }
            s.push('\n');
        }
        let _ = writeln!(s, "{}", self.summary());
        s
    }

    pub fn to_json_lines(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            let v = json!({
                "kind": e.kind.to_lowercase(),
                "name": e.name,
                "params": e.params,
                "result": if e.pass { "PASS" } else { "FAIL" },
                "error": e.error,
            });
            let _ = writeln!(s, "{v}");
        }
        let v = json!({"summary": {"total": self.total(), "pass": self.passed(), "fail": self.failed()}});
        let _ = writeln!(s, "{v}");
        s
    }
}

fn check_one(inst: &Instance) -> ReportEntry {
    let verdict = (|| -> Result<bool> {
        if inst.lhs.arity() != inst.rhs.arity() {
            return Ok(false);
        }
        Ok(canonical_of_map(&inst.lhs)? == canonical_of_map(&inst.rhs)?)
    })();
    let (pass, error) = match verdict {
        Ok(p) => (p, None),
        Err(e) => (false, Some(e.to_string())),
    };
    ReportEntry { kind: inst.kind, name: inst.name.clone(), params: inst.params.clone(), pass, error }
}

/// Checks every instance by comparing canonical forms, fanning out over
/// threads; entries keep the input order.
pub fn check_instances(instances: &[Instance]) -> Report {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(instances.len().max(1));
    let chunk = instances.len().div_ceil(workers).max(1);
    let entries = std::thread::scope(|scope| {
        let handles: Vec<_> = instances
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(check_one).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("checker thread panicked")).collect()
    });
    Report { entries }
}

/// Instances of the given schemas over the sample grid plus `extra` random
/// samples per parameterized schema drawn from `seed`.
pub fn soundness_instances(rules: &[RuleSchema], extra: usize, seed: u64) -> Result<Vec<Instance>> {
    let mut rng = random::rng(seed);
    let mut sorted: Vec<&RuleSchema> = rules.iter().collect();
    sorted.sort_by_key(|r| r.name);
    let mut out = Vec::new();
    for rule in sorted {
        let mut samples = rule.sample_grid();
        if !rule.scalars.is_empty() || !rule.arities.is_empty() {
            for _ in 0..extra {
                samples.push(rule.sample_random(&mut rng));
            }
        }
        for p in samples {
            let (lhs, rhs) = rule.instantiate(&p)?;
            out.push(Instance { kind: "RULE", name: rule.name.to_string(), params: rule.describe(&p), lhs, rhs });
        }
    }
    Ok(out)
}

pub fn check_soundness(rules: &[RuleSchema], extra: usize, seed: u64) -> Result<Report> {
    Ok(check_instances(&soundness_instances(rules, extra, seed)?))
}

#[derive(Clone, Debug)]
pub struct EquationCorpusEntry {
    pub name: &'static str,
    pub lhs: Diagram,
    pub rhs: Diagram,
    pub source: &'static str,
}

fn entry(name: &'static str, source: &'static str, lhs: Diagram, rhs: Diagram) -> EquationCorpusEntry {
    debug_assert_eq!(lhs.arity(), rhs.arity(), "{name}");
    EquationCorpusEntry { name, lhs, rhs, source }
}

/// `(id ⊗ tick) ∘ Z(1,1,2)`.
pub fn e3() -> Diagram {
    c(&t(&id(), &Diagram::tick()), &z(one(), 1, 2)).expect("well typed")
}

fn hermitian_1q(a: i64, b: Scalar, cc: i64) -> crate::matrix::Matrix {
    crate::matrix::Matrix::from_vec(2, 2, vec![Scalar::from_int(a), b.conj(), b, Scalar::from_int(cc)])
        .expect("2x2")
}

/// Concrete equations from the lemma collection, all well typed.
pub fn lemma_corpus() -> Result<Vec<EquationCorpusEntry>> {
    let tick = Diagram::tick();
    let ground = Diagram::ground();
    let cap = Diagram::cap();
    let cup = Diagram::cup();
    let w = Scalar::omega();
    let mut v = vec![
        entry("ti", "tick-involution", c(&tick, &tick)?, id()),
        entry("snake", "yanking", c(&t(&id(), &cup), &t(&cap, &id()))?, id()),
        entry("snake-2", "yanking", c(&t(&cup, &id()), &t(&id(), &cap))?, id()),
        entry("cap-swap", "swap-invariance", c(&Diagram::swap(), &cap)?, cap.clone()),
        entry("cup-swap", "swap-invariance", c(&cup, &Diagram::swap())?, cup.clone()),
        entry("flex-z-inputs", "flexsymmetry", c(&z(w.clone(), 2, 1), &Diagram::swap())?, z(w.clone(), 2, 1)),
        entry("flex-z-outputs", "flexsymmetry", c(&Diagram::swap(), &z(w.clone(), 1, 2))?, z(w.clone(), 1, 2)),
        entry("flex-w-outputs", "flexsymmetry", c(&Diagram::swap(), &Diagram::w(1, 2))?, Diagram::w(1, 2)),
        entry(
            "flex-w-three",
            "flexsymmetry",
            c(&Diagram::w(3, 0), &t(&Diagram::swap(), &id()))?,
            Diagram::w(3, 0),
        ),
        entry(
            "flex-z-bend",
            "flexsymmetry",
            c(&t(&cup, &id()), &t(&id(), &z(w.clone(), 0, 2)))?,
            z1(w.clone()),
        ),
        entry(
            "tick-snake",
            "tick-snake",
            seq(&[t(&cap, &id()), Diagram::padded(1, &tick, 1), t(&id(), &cup)])?,
            tick.clone(),
        ),
        entry("flex-tick", "tick-snake", c(&t(&tick, &id()), &cap)?, c(&t(&id(), &tick), &cap)?),
        entry("obvious", "obvious", c(&ground, &tick)?, ground.clone()),
        entry("obvious-2", "obvious-2", c(&ground, &x())?, ground.clone()),
        entry("untitled", "untitled", c(&tick, &z(w.clone(), 0, 1))?, z(w.conj(), 0, 1)),
        entry("E3-through-Z", "E3-through-Z", c(&e3(), &z1(w.clone()))?, c(&t(&id(), &z1(w.conj())), &e3())?),
        entry("E3-through-W", "E3-through-W", c(&e3(), &x())?, c(&t(&x(), &x()), &e3())?),
        entry(
            "ground-removed-by-E3",
            "ground-removed-by-E3",
            c(&t(&id(), &ground), &e3())?,
            c(&t(&id(), &ground), &z(one(), 1, 2))?,
        ),
        entry(
            "sum-branch-NF",
            "sum-branch-NF",
            nf_diagram(1, &[(1, 0, w.clone()), (1, 0, Scalar::half())])?,
            nf_diagram(1, &[(1, 0, &w + &Scalar::half())])?,
        ),
        entry("pure-zw-1", "pure-zw-lemmas", c(&z1(w.clone()), &z1(Scalar::half()))?, z1(&w * &Scalar::half())),
        entry("pure-zw-2", "pure-zw-lemmas", c(&x(), &Diagram::ket0())?, Diagram::ket1()),
        entry(
            "pure-zw-3",
            "pure-zw-lemmas",
            c(&z(w.clone(), 1, 0), &Diagram::ket1())?,
            z(&w - &one(), 0, 0),
        ),
        entry("pure-zw-4", "pure-zw-lemmas", c(&Diagram::bra1(), &Diagram::ket1())?, z(Scalar::zero(), 0, 0)),
        entry("pure-zw-5", "pure-zw-lemmas", Diagram::w(0, 0), z(Scalar::from_int(-1), 0, 0)),
        entry("pure-zw-6", "pure-zw-lemmas", c(&Diagram::bra0(), &Diagram::ket1())?, Diagram::w(0, 0)),
        entry(
            "pure-zw-7",
            "pure-zw-lemmas",
            Diagram::power(&z(Scalar::sqrt2() - one(), 0, 0), 2),
            z(one(), 0, 0),
        ),
        entry("pure-zw-8", "pure-zw-lemmas", c(&Diagram::w(2, 1), &t(&Diagram::ket0(), &id()))?, x()),
        entry(
            "pure-zw-9",
            "pure-zw-lemmas",
            c(&z(w.clone(), 2, 1), &t(&Diagram::ket1(), &id()))?,
            seq(&[Diagram::bra1(), z(&w - &one(), 0, 0), Diagram::ket1()])?,
        ),
        entry(
            "pure-zw-10",
            "pure-zw-lemmas",
            c(&f(), &t(&Diagram::ket0(), &id()))?,
            t(&id(), &Diagram::ket0()),
        ),
        entry("ground-phase", "ground-axioms", c(&ground, &z1(w.clone()))?, ground.clone()),
        entry("ground-scalar", "ground-axioms", c(&ground, &Diagram::ket1())?, Diagram::empty()),
        entry("ground-Z", "ground-axioms", c(&t(&ground, &ground), &z(one(), 1, 2))?, ground.clone()),
        entry(
            "ground-fswap",
            "ground-axioms",
            c(&t(&ground, &ground), &f())?,
            t(&ground, &ground),
        ),
        entry("ground-H", "ground-axioms", {
            let m = seq(&[t(&id(), &z(one(), 0, 1)), f(), t(&id(), &z(one(), 1, 0))])?;
            let c_inv = Scalar::sqrt2() * Scalar::half();
            t(&c(&ground, &m)?, &z(c_inv - one(), 0, 0))
        }, ground.clone()),
        entry("recovered-w-swap", "recovered-pure-zw", c(&Diagram::w(2, 1), &Diagram::swap())?, Diagram::w(2, 1)),
        entry(
            "recovered-z-swap",
            "recovered-pure-zw",
            c(&z(w.clone(), 2, 1), &Diagram::swap())?,
            z(w.clone(), 2, 1),
        ),
        entry(
            "recovered-z-plus",
            "recovered-pure-zw",
            c(&z(w.clone(), 2, 1), &t(&id(), &z(one(), 0, 1)))?,
            z1(w.clone()),
        ),
    ];
    let a = NormalForm::from_matrix(&hermitian_1q(1, w.clone(), 0))?;
    let b = NormalForm::from_matrix(&hermitian_1q(0, Scalar::i(), -1))?;
    v.push(entry(
        "nf-tensor-recomposition",
        "NF-tensor-branch-recomposition",
        t(&a.to_diagram(true)?, &b.to_diagram(true)?),
        a.kron(&b).to_diagram(true)?,
    ));
    let p = NormalForm::from_matrix(&hermitian_1q(2, Scalar::zero(), 1))?;
    let q = NormalForm::from_matrix(&hermitian_1q(0, one() - &w, 1))?;
    v.push(entry(
        "nf-tensor-decomposition",
        "NF-tensor-branch-decomposition",
        p.kron(&q).to_diagram(false)?,
        t(&p.to_diagram(false)?, &q.to_diagram(false)?),
    ));
    Ok(v)
}

pub fn corpus_instances(corpus: &[EquationCorpusEntry]) -> Vec<Instance> {
    corpus
        .iter()
        .map(|e| Instance {
            kind: "LEMMA",
            name: e.name.to_string(),
            params: e.source.to_string(),
            lhs: e.lhs.clone(),
            rhs: e.rhs.clone(),
        })
        .collect()
}

pub fn check_corpus() -> Result<Report> {
    Ok(check_instances(&corpus_instances(&lemma_corpus()?)))
}

/// Term with compose and tensor chains flattened.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Flat {
    Leaf(Diagram),
    Seq(Vec<Flat>),
    Par(Vec<Flat>),
}

fn flatten(d: &Diagram) -> Flat {
    fn push(items: &mut Vec<Flat>, f: Flat, seq: bool) {
        match f {
            Flat::Seq(xs) if seq => items.extend(xs),
            Flat::Par(xs) if !seq => items.extend(xs),
            other => items.push(other),
        }
    }
    match d.kind() {
        Kind::Gen(_) | Kind::Empty => Flat::Leaf(d.clone()),
        Kind::Compose(a, b) => {
            let mut items = Vec::new();
            push(&mut items, flatten(a), true);
            push(&mut items, flatten(b), true);
            Flat::Seq(items)
        }
        Kind::Tensor(a, b) => {
            let mut items = Vec::new();
            push(&mut items, flatten(a), false);
            push(&mut items, flatten(b), false);
            Flat::Par(items)
        }
    }
}

fn unflatten(f: &Flat) -> Result<Diagram> {
    match f {
        Flat::Leaf(d) => Ok(d.clone()),
        Flat::Seq(items) => {
            let mut acc = unflatten(items.last().expect("non-empty chain"))?;
            for item in items.iter().rev().skip(1) {
                acc = Diagram::compose(&unflatten(item)?, &acc)?;
            }
            Ok(acc)
        }
        Flat::Par(items) => {
            let mut acc = unflatten(items.last().expect("non-empty chain"))?;
            for item in items.iter().rev().skip(1) {
                acc = Diagram::tensor(&unflatten(item)?, &acc);
            }
            Ok(acc)
        }
    }
}

/// Rewrites the subterm at `path` with one instance of a rule.
///
/// The subterm matches when, after flattening associativity, it equals the
/// chosen side, or it is a chain of the same kind containing the side's
/// chain as a contiguous window (the first such window is rewritten).
pub fn apply_rule(
    d: &Diagram,
    rule: &RuleSchema,
    params: &Params,
    path: &[usize],
    direction: Direction,
) -> Result<Diagram> {
    let (l, r) = rule.instantiate(params)?;
    let (from, to) = match direction {
        Direction::LeftToRight => (l, r),
        Direction::RightToLeft => (r, l),
    };
    let sub = d.at(path).ok_or_else(|| Error::Invalid(format!("path {path:?} leaves the term")))?;
    let fs = flatten(sub);
    let ff = flatten(&from);
    if fs == ff {
        return d.replace_at(path, &to);
    }
    let window = match (&fs, &ff) {
        (Flat::Seq(xs), Flat::Seq(ys)) | (Flat::Par(xs), Flat::Par(ys)) if ys.len() < xs.len() => {
            (0..=xs.len() - ys.len()).find(|&i| xs[i..i + ys.len()] == ys[..]).map(|i| (xs, i, ys.len()))
        }
        (Flat::Seq(xs), _) | (Flat::Par(xs), _) => xs.iter().position(|x| *x == ff).map(|i| (xs, i, 1)),
        _ => None,
    };
    let Some((xs, i, k)) = window else {
        return Err(Error::NoMatch { path: path.to_vec(), expected: from.print(), found: sub.print() });
    };
    let mut items: Vec<Flat> = xs[..i].to_vec();
    items.push(Flat::Leaf(to));
    items.extend_from_slice(&xs[i + k..]);
    let rebuilt = match fs {
        Flat::Seq(_) => unflatten(&Flat::Seq(items))?,
        _ => unflatten(&Flat::Par(items))?,
    };
    d.replace_at(path, &rebuilt)
}

/// Pure interpretation equality for tick-free corpus entries.
pub fn pure_equal(e: &EquationCorpusEntry) -> Result<bool> {
    Ok(semantics::interp(&e.lhs)? == semantics::interp(&e.rhs)?)
}
