use zwtick::normalform::{canonical_of_map, nf_from_matrix, nf_of_diagram, nf_to_diagram, NormalForm};
use zwtick::random;
use zwtick::semantics::state_operator;
use zwtick::{Diagram, Matrix, Scalar};

fn example_pattern() -> Matrix {
    let (a, b, c) = (Scalar::one(), Scalar::omega(), Scalar::from_int(-2));
    Matrix::from_vec(2, 2, vec![a, b.conj(), b, c]).unwrap()
}

/// Applies `d` (1 or 2 wires) on outputs starting at `k` of a state.
fn on_outputs(state: &Diagram, k: usize, d: &Diagram) -> Diagram {
    let n = state.outputs();
    let layer = Diagram::padded(k, d, n - k - d.inputs());
    Diagram::compose(&layer, state).unwrap()
}

/// `A ρ A†` for `A = W(2,1)` on wires k, k+1, by index bookkeeping.
fn w21_oracle(rho: &Matrix, n: usize, k: usize) -> Matrix {
    let image = |v: usize| -> Option<usize> {
        let hi = v >> (n - k);
        let a = (v >> (n - k - 1)) & 1;
        let b = (v >> (n - k - 2)) & 1;
        let lo = v & ((1 << (n - k - 2)) - 1);
        let out = match (a, b) {
            (0, 0) => 1,
            (1, 1) => return None,
            _ => 0,
        };
        Some((((hi << 1) | out) << (n - k - 2)) | lo)
    };
    let d = 1 << (n - 1);
    let mut m = Matrix::zeros(d, d);
    for x in 0..rho.rows() {
        for y in 0..rho.cols() {
            if let (Some(i), Some(j)) = (image(x), image(y)) {
                *m.entry_mut(i, j) += rho.get(x, y).clone();
            }
        }
    }
    m
}

#[test]
fn round_trip_random_hermitian() {
    let mut rng = random::rng(40);
    let mut cases = vec![Matrix::zeros(4, 4), example_pattern(), Matrix::zeros(1, 1)];
    for i in 0..100 {
        cases.push(random::hermitian(&mut rng, 1 + i % 3, 0.5));
    }
    for h in cases {
        let nf = nf_from_matrix(&h).unwrap();
        for reduced in [true, false] {
            let d = nf_to_diagram(&nf, reduced).unwrap();
            assert_eq!(d.arity(), (0, nf.qubits()));
            assert_eq!(state_operator(&d).unwrap(), h);
        }
        assert_eq!(NormalForm::parse_text(&nf.to_text()).unwrap(), nf);
    }
}

#[test]
fn example_pattern_text() {
    let nf = nf_from_matrix(&example_pattern()).unwrap();
    assert_eq!(nf.to_text(), "n 1\n0 0 1\n0 1 -w^3\n1 1 -2\n");
}

#[test]
fn rejects_non_hermitian() {
    let m = Matrix::from_ints(&[&[1, 1], &[0, 1]]);
    assert!(nf_from_matrix(&m).is_err());
    assert!(NormalForm::parse_text("n 1\n1 0 1\n").is_err());
    assert!(NormalForm::parse_text("n 1\n0 0 w\n").is_err());
}

#[test]
fn negation_lemma() {
    let mut rng = random::rng(41);
    for i in 0..50 {
        let n = 1 + i % 3;
        let nf = nf_from_matrix(&random::hermitian(&mut rng, n, 0.5)).unwrap();
        let k = i % n;
        let d = on_outputs(&nf.to_diagram(true).unwrap(), k, &Diagram::not());
        assert_eq!(nf_of_diagram(&d).unwrap(), nf.negate(k).unwrap());
    }
}

#[test]
fn projection_lemmas() {
    let mut rng = random::rng(42);
    for i in 0..50 {
        let n = 1 + i % 3;
        let nf = nf_from_matrix(&random::hermitian(&mut rng, n, 0.5)).unwrap();
        let k = (i / 3) % n;
        let d = nf.to_diagram(true).unwrap();
        for (bra, bit) in [(Diagram::bra0(), false), (Diagram::bra1(), true)] {
            let projected = on_outputs(&d, k, &bra);
            assert_eq!(nf_of_diagram(&projected).unwrap(), nf.project(k, bit).unwrap());
        }
    }
}

#[test]
fn w21_lemma() {
    let mut rng = random::rng(43);
    for i in 0..50 {
        let n = 2 + i % 2;
        let h = random::hermitian(&mut rng, n, 0.5);
        let d = nf_from_matrix(&h).unwrap().to_diagram(true).unwrap();
        let k = i % (n - 1);
        let merged = on_outputs(&d, k, &Diagram::w(2, 1));
        assert_eq!(state_operator(&merged).unwrap(), w21_oracle(&h, n, k));
    }
}

#[test]
fn tensor_of_normal_forms() {
    let mut rng = random::rng(44);
    for i in 0..20 {
        let a = nf_from_matrix(&random::hermitian(&mut rng, 1 + i % 2, 0.6)).unwrap();
        let b = nf_from_matrix(&random::hermitian(&mut rng, 1, 0.6)).unwrap();
        let t = Diagram::tensor(&a.to_diagram(true).unwrap(), &b.to_diagram(true).unwrap());
        assert_eq!(nf_of_diagram(&t).unwrap(), a.kron(&b));
    }
}

#[test]
fn canonical_form_of_maps_is_choi() {
    let mut rng = random::rng(45);
    for _ in 0..30 {
        let d = random::any_term(&mut rng, &Default::default());
        let nf = canonical_of_map(&d).unwrap();
        assert_eq!(nf.to_matrix(), zwtick::semantics::choi(&d).unwrap());
    }
}
