//! Acceptance criteria, one PASS/FAIL line each. Oracles here are written
//! independently of the library code paths they check.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::Rng;
use zwtick::normalform::{canonical_of_map, diagrams_equal, nf_from_matrix, nf_of_diagram, nf_to_diagram};
use zwtick::qinfo::{self, BlochVector};
use zwtick::random::{self, TermShape};
use zwtick::rules::{self, apply_rule, Direction};
use zwtick::semantics::{self, apply_superop, hp, interp, interp_dense, psi, state_operator, unzip};
use zwtick::{Diagram, Matrix, Psd, Scalar};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pure_shape() -> TermShape {
    TermShape { generators: 6, max_wires: 3, ticks: false }
}

/// Entry-by-entry conjugate transpose.
fn dagger_oracle(m: &Matrix) -> Matrix {
    Matrix::from_fn(m.cols(), m.rows(), |r, c| m.get(c, r).conj())
}

/// Naive triple-loop product.
fn mul_oracle(a: &Matrix, b: &Matrix) -> Matrix {
    Matrix::from_fn(a.rows(), b.cols(), |r, c| (0..a.cols()).map(|k| a.get(r, k) * b.get(k, c)).sum())
}

/// Partial transpose on the leading wire of a two-qubit matrix:
/// ((x1 x2),(y1 y2)) ↦ ((y1 x2),(x1 y2)).
fn pt_first_wire_oracle(rho: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(4, 4);
    for r in 0..4 {
        for c in 0..4 {
            let (x1, x2, y1, y2) = (r >> 1, r & 1, c >> 1, c & 1);
            out.set((y1 << 1) | x2, (x1 << 1) | y2, rho.get(r, c).clone());
        }
    }
    out
}

fn c1_axiom_soundness() -> Outcome {
    let start = Instant::now();
    let report = rules::check_soundness(&rules::schemas(), 0, 0).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    ensure(rules::axiom_schemas().len() == 24, || "expected 24 axiom schemas".into())?;
    ensure(report.all_pass(), || {
        let bad: Vec<String> =
            report.entries.iter().filter(|e| !e.pass).take(5).map(|e| format!("{} {}", e.name, e.params)).collect();
        format!("{} failures, first: {bad:?}", report.failed())
    })?;
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{} instances over {} schemas, {secs:.2}s", report.total(), rules::schemas().len()))
}

fn c2_lemma_corpus() -> Outcome {
    let start = Instant::now();
    let corpus = rules::lemma_corpus().map_err(|e| e.to_string())?;
    ensure(corpus.len() >= 30, || format!("only {} entries", corpus.len()))?;
    let report = rules::check_corpus().map_err(|e| e.to_string())?;
    ensure(report.all_pass(), || format!("{} failures", report.failed()))?;
    for name in ["ti", "obvious", "obvious-2", "untitled", "E3-through-Z", "E3-through-W", "ground-removed-by-E3"] {
        ensure(corpus.iter().any(|e| e.name == name), || format!("missing {name}"))?;
    }
    let pure = corpus.iter().filter(|e| e.source == "pure-zw-lemmas").count();
    let ground = corpus.iter().filter(|e| e.source == "ground-axioms").count();
    ensure(pure == 10 && ground == 5, || format!("{pure} pure-zw lemmas, {ground} ground axioms"))?;
    Ok(format!("{} equations, {:.2}s", corpus.len(), start.elapsed().as_secs_f64()))
}

fn c3_doubling_law() -> Outcome {
    let mut rng = random::rng(3);
    for _ in 0..200 {
        let d = random::any_term(&mut rng, &pure_shape());
        let rho = random::hermitian(&mut rng, d.inputs(), 0.5);
        let a = interp_dense(&d).map_err(|e| e.to_string())?;
        let want = mul_oracle(&mul_oracle(&a, &rho), &dagger_oracle(&a));
        ensure(apply_superop(&d, &rho).map_err(|e| e.to_string())? == want, || format!("mismatch on {d}"))?;
    }
    Ok("200 terms".into())
}

fn c4_tick_transpose() -> Outcome {
    let mut rng = random::rng(4);
    let d = Diagram::tensor(&Diagram::tick(), &Diagram::id());
    for _ in 0..100 {
        let rho = random::hermitian(&mut rng, 2, 0.6);
        let want = pt_first_wire_oracle(&rho);
        ensure(apply_superop(&d, &rho).unwrap() == want, || "superoperator differs from oracle".into())?;
        ensure(qinfo::partial_transpose(&rho, 1).unwrap() == want, || "partial_transpose differs".into())?;
    }
    Ok("100 matrices".into())
}

fn c5_psi_unzip() -> Outcome {
    let mut rng = random::rng(5);
    for _ in 0..100 {
        let d = random::any_term(&mut rng, &TermShape::default());
        let a = interp(hp(&d).unwrap().iota()).unwrap();
        let b = interp(psi(&unzip(&d).unwrap(), d.inputs(), d.outputs()).unwrap().iota()).unwrap();
        ensure(a == b, || format!("mismatch on {d}"))?;
    }
    Ok("100 terms".into())
}

fn c6_nf_round_trip() -> Outcome {
    let mut rng = random::rng(6);
    let example = Matrix::from_vec(
        2,
        2,
        vec![Scalar::one(), Scalar::omega().conj(), Scalar::omega(), Scalar::from_int(-2)],
    )
    .unwrap();
    let mut cases = vec![Matrix::zeros(8, 8), example];
    for i in 0..100 {
        cases.push(random::hermitian(&mut rng, 1 + i % 3, 0.5));
    }
    for h in &cases {
        let d = nf_to_diagram(&nf_from_matrix(h).unwrap(), true).unwrap();
        ensure(state_operator(&d).unwrap() == *h, || "round trip differs".into())?;
    }
    Ok(format!("{} matrices incl. zero and the one-qubit pattern", cases.len()))
}

fn c7_states_hermitian() -> Outcome {
    let mut rng = random::rng(7);
    for _ in 0..200 {
        let s = random::state(&mut rng, &TermShape::default());
        let m = state_operator(&s).unwrap();
        ensure(m == dagger_oracle(&m), || format!("{s} not Hermitian"))?;
    }
    Ok("200 states".into())
}

/// Rewrites `d` with 1–5 random rule instances at embedded positions.
fn rewritten_pair<R: Rng>(rng: &mut R, schemas: &[rules::RuleSchema]) -> (Diagram, Diagram, usize) {
    let steps = rng.random_range(1..=5);
    let mut slots = Vec::new();
    let mut d = random::any_term(rng, &TermShape { generators: 3, ..TermShape::default() });
    for _ in 0..steps {
        let rule = schemas[rng.random_range(0..schemas.len())];
        let p = rule.sample_random(rng);
        let (l, r) = rule.instantiate(&p).unwrap();
        let dir = if rng.random_bool(0.5) { Direction::LeftToRight } else { Direction::RightToLeft };
        let from = if dir == Direction::LeftToRight { l } else { r };
        if from.inputs() > 2 || from.outputs() > 3 {
            continue;
        }
        // Thread the instance onto the current outputs, padding with kets.
        let w = d.outputs();
        let fit = if w >= from.inputs() {
            Diagram::padded(0, &from, w - from.inputs())
        } else {
            let kets = Diagram::power(&Diagram::ket0(), from.inputs() - w);
            Diagram::compose(&from, &Diagram::tensor(&Diagram::id_n(w), &kets)).unwrap()
        };
        let inner = fit.paths().into_iter().find(|q| fit.at(q) == Some(&from)).expect("instance inside its layer");
        d = Diagram::compose(&fit, &d).unwrap();
        slots.push((rule, p, inner, dir));
    }
    if slots.is_empty() {
        return rewritten_pair(rng, schemas);
    }
    // Layer s sits at child 0 below `k - 1 - s` right descents; rewriting one
    // layer leaves the paths of the others intact.
    let k = slots.len();
    let mut out = d.clone();
    for (s, (rule, p, inner, dir)) in slots.iter().enumerate() {
        let mut path = vec![1; k - 1 - s];
        path.push(0);
        path.extend(inner);
        out = apply_rule(&out, rule, p, &path, *dir).unwrap();
    }
    (d, out, slots.len())
}

/// Superoperators differ on some basis operator |i⟩⟨j|.
fn distinct_oracle(a: &Diagram, b: &Diagram) -> bool {
    let n = 1 << a.inputs();
    (0..n).any(|i| {
        (0..n).any(|j| {
            let mut e = Matrix::zeros(n, n);
            e.set(i, j, Scalar::one());
            apply_superop(a, &e).unwrap() != apply_superop(b, &e).unwrap()
        })
    })
}

fn c8_completeness_decision() -> Outcome {
    let mut rng = random::rng(8);
    let schemas = rules::schemas();
    let mut rewrites = 0;
    for _ in 0..100 {
        let (d, e, k) = rewritten_pair(&mut rng, &schemas);
        rewrites += k;
        ensure(diagrams_equal(&d, &e).unwrap(), || format!("rewritten pair judged different: {d} vs {e}"))?;
    }
    let mut distinct = 0;
    while distinct < 100 {
        let d = random::any_term(&mut rng, &TermShape::default());
        let e = random::term(&mut rng, d.inputs(), &TermShape::default());
        if e.outputs() != d.outputs() || !distinct_oracle(&d, &e) {
            continue;
        }
        ensure(!diagrams_equal(&d, &e).unwrap(), || format!("distinct pair judged equal: {d} vs {e}"))?;
        distinct += 1;
    }
    Ok(format!("100 equal pairs ({rewrites} rewrites), 100 distinct pairs"))
}

fn on_output(state: &Diagram, k: usize, g: &Diagram) -> Diagram {
    let n = state.outputs();
    Diagram::compose(&Diagram::padded(k, g, n - k - g.inputs()), state).unwrap()
}

fn c9_nf_lemmas() -> Outcome {
    let mut rng = random::rng(9);
    for i in 0..50 {
        let n = 1 + i % 3;
        let h = random::hermitian(&mut rng, n, 0.5);
        let d = nf_to_diagram(&nf_from_matrix(&h).unwrap(), true).unwrap();
        let k = rng.random_range(0..n);
        let bit = 1 << (n - 1 - k);

        // Negation: conjugation by X on wire k.
        let neg = Matrix::from_fn(1 << n, 1 << n, |r, c| h.get(r ^ bit, c ^ bit).clone());
        ensure(state_operator(&on_output(&d, k, &Diagram::not())).unwrap() == neg, || "negation".into())?;

        // bra0 / bra1: the sub-block with wire k fixed, wire removed.
        for (bra, b) in [(Diagram::bra0(), 0), (Diagram::bra1(), 1)] {
            let keep: Vec<usize> = (0..1 << n).filter(|v| (v & bit != 0) == (b == 1)).collect();
            let block = Matrix::from_fn(keep.len(), keep.len(), |r, c| h.get(keep[r], keep[c]).clone());
            ensure(state_operator(&on_output(&d, k, &bra)).unwrap() == block, || "projection".into())?;
        }

        // W(2,1) on wires k, k+1: A ρ A† with A|00⟩ = |1⟩, A|01⟩ = A|10⟩ = |0⟩.
        if k + 1 < n {
            let a = Matrix::from_fn(1 << (n - 1), 1 << n, |r, c| {
                let (hi, lo) = (c >> (n - k), c & ((1 << (n - k - 2)) - 1));
                let pair = (c >> (n - k - 2)) & 3;
                let out = match pair {
                    0 => 1,
                    3 => return Scalar::zero(),
                    _ => 0,
                };
                Scalar::from_int((r == (((hi << 1) | out) << (n - k - 2) | lo)) as i64)
            });
            let want = mul_oracle(&mul_oracle(&a, &h), &dagger_oracle(&a));
            let got = state_operator(&on_output(&d, k, &Diagram::w(2, 1))).unwrap();
            ensure(got == want, || "W(2,1) merge".into())?;
        }
        ensure(nf_of_diagram(&d).unwrap() == nf_from_matrix(&h).unwrap(), || "canonical NF".into())?;
    }
    Ok("50 normal forms, each lemma".into())
}

fn c10_cp_classification() -> Outcome {
    ensure(semantics::is_completely_positive(&Diagram::ground()).unwrap() == Psd::Yes, || "ground not CP".into())?;
    let f = semantics::choi(&Diagram::tick()).unwrap();
    let swap = Matrix::from_ints(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
    ensure(f == swap, || "Choi(tick) is not SWAP".into())?;
    let min = f.min_eigenvalue().unwrap();
    ensure((min + 1.0).abs() <= 1e-9, || format!("min eigenvalue {min}"))?;
    ensure(semantics::is_completely_positive(&Diagram::tick()).unwrap() == Psd::No, || "tick CP".into())?;
    let mut rng = random::rng(10);
    for _ in 0..50 {
        let d = random::any_term(&mut rng, &pure_shape());
        ensure(semantics::is_completely_positive(&d).unwrap() == Psd::Yes, || format!("{d} not CP"))?;
    }
    for _ in 0..200 {
        let d = random::any_term(&mut rng, &TermShape::default());
        let f = semantics::choi(&d).unwrap();
        ensure(f == dagger_oracle(&f), || format!("{d} not HP"))?;
    }
    Ok(format!("ground CP, tick HP not CP (min eigenvalue {min}), 50 doubled CP, 200 HP"))
}

fn c11_ppt() -> Outcome {
    let bell = Matrix::from_fn(4, 4, |r, c| Scalar::from_int(((r == 0 || r == 3) && (c == 0 || c == 3)) as i64));
    ensure(!qinfo::ppt_check(&bell, 1).unwrap(), || "Bell state passed".into())?;
    let min = qinfo::partial_transpose(&bell, 1).unwrap().min_eigenvalue().unwrap();
    ensure((min + 1.0).abs() <= 1e-9, || format!("min eigenvalue {min}"))?;
    let mut rng = random::rng(11);
    for _ in 0..50 {
        let mut rho = Matrix::zeros(4, 4);
        for _ in 0..rng.random_range(1..=4) {
            let w = Scalar::ratio(rng.random_range(1..=5), rng.random_range(1..=3));
            let t = random::positive(&mut rng, 1).kron(&random::positive(&mut rng, 1));
            rho = rho.add(&t.scale(&w)).unwrap();
        }
        ensure(qinfo::ppt_check(&rho, 1).unwrap(), || "separable mixture failed".into())?;
    }
    Ok(format!("Bell min PT eigenvalue {min}, 50 separable mixtures pass"))
}

fn c12_spin_flip() -> Outcome {
    let mut rng = random::rng(12);
    let diagram = qinfo::spin_flip_diagram();
    for _ in 0..50 {
        let [x, y, z] = random::bloch_coords(&mut rng);
        let v = BlochVector::new(x, y, z).unwrap();
        let rho = qinfo::from_bloch(&v);
        // Y ρᵀ Y = [[d, −b], [−c, a]] for ρ = [[a, b], [c, d]].
        let want = Matrix::from_vec(
            2,
            2,
            vec![rho.get(1, 1).clone(), -rho.get(0, 1).clone(), -rho.get(1, 0).clone(), rho.get(0, 0).clone()],
        )
        .unwrap();
        let flipped = qinfo::spin_flip(&rho).unwrap();
        ensure(flipped == want, || "spin_flip formula".into())?;
        ensure(qinfo::bloch(&flipped).unwrap() == -v.clone(), || "Bloch negation".into())?;
        ensure(apply_superop(&diagram, &rho).unwrap() == want, || "diagram disagrees".into())?;
    }
    Ok("50 Bloch vectors".into())
}

fn c13_pairing() -> Outcome {
    let c = Scalar::sqrt2() * Scalar::half();
    let ket_i = Diagram::tensor(&Diagram::z(Scalar::i(), 0, 1), &Diagram::z(c - Scalar::one(), 0, 0));
    let plain = qinfo::sesqui_pairing(&ket_i, &ket_i, false).unwrap();
    let ticked = qinfo::sesqui_pairing(&ket_i, &ket_i, true).unwrap();
    ensure(plain.is_zero() && ticked.is_one(), || format!("plain {plain}, ticked {ticked}"))?;
    let mut rng = random::rng(13);
    let mut checked = 0;
    while checked < 50 {
        let d = random::any_term(&mut rng, &pure_shape());
        let (n, m) = d.arity();
        if n == 0 || m == 0 {
            continue;
        }
        let x = random::state_on(&mut rng, m, &pure_shape());
        let y = random::state_on(&mut rng, n, &pure_shape());
        let dag = qinfo::internal_dagger(&d).unwrap();
        let lhs = qinfo::sesqui_pairing(&Diagram::compose(&dag, &x).unwrap(), &y, true).unwrap();
        let rhs = qinfo::sesqui_pairing(&x, &Diagram::compose(&d, &y).unwrap(), true).unwrap();
        ensure(lhs == rhs, || format!("adjoint property fails for {d}"))?;
        checked += 1;
    }
    ensure(qinfo::is_unitary_semantic(&Diagram::w(1, 1)).unwrap(), || "W(1,1) not unitary".into())?;
    let traced = Diagram::compose(&Diagram::ket0(), &Diagram::ground()).unwrap();
    ensure(!qinfo::is_unitary_semantic(&traced).unwrap(), || "traced term unitary".into())?;
    ensure(
        canonical_of_map(&qinfo::internal_dagger(&Diagram::id()).unwrap()).unwrap()
            == canonical_of_map(&Diagram::id()).unwrap(),
        || "dagger of id".into(),
    )?;
    Ok("|i> plain 0 / ticked 1, 50 adjoint checks, unitarity".into())
}

type Criterion = (u32, &'static str, fn() -> Outcome);

#[test]
fn acceptance() {
    let criteria: Vec<Criterion> = vec![
        (1, "axiom soundness", c1_axiom_soundness),
        (2, "lemma corpus", c2_lemma_corpus),
        (3, "doubling law", c3_doubling_law),
        (4, "tick is partial transpose", c4_tick_transpose),
        (5, "psi after unzip equals hp", c5_psi_unzip),
        (6, "normal form round trip", c6_nf_round_trip),
        (7, "states are hermitian", c7_states_hermitian),
        (8, "equality decision", c8_completeness_decision),
        (9, "negation and projection lemmas", c9_nf_lemmas),
        (10, "CP classification", c10_cp_classification),
        (11, "PPT", c11_ppt),
        (12, "spin flip", c12_spin_flip),
        (13, "pairing, dagger, unitarity", c13_pairing),
    ];
    let mut failed = Vec::new();
    for (id, name, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {id:>2} {name}: {detail} [{secs:.2}s]"),
            Err(why) => {
                println!("FAIL {id:>2} {name}: {why} [{secs:.2}s]");
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
