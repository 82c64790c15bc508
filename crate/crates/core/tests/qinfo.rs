use zwtick::normalform::canonical_of_map;
use zwtick::qinfo::{
    bloch, from_bloch, internal_dagger, is_unitary_semantic, partial_transpose, ppt_check, sesqui_pairing,
    spin_flip, spin_flip_diagram, BlochVector,
};
use zwtick::random::{self, TermShape};
use zwtick::semantics::{apply_superop, interp};
use zwtick::{Diagram, Generator, Matrix, Scalar};

fn pure() -> TermShape {
    TermShape { ticks: false, ..TermShape::default() }
}

fn ket_i() -> Diagram {
    let norm = Diagram::z(Scalar::sqrt2() * Scalar::half() - Scalar::one(), 0, 0);
    Diagram::tensor(&Diagram::z(Scalar::i(), 0, 1), &norm)
}

#[test]
fn partial_transpose_on_products() {
    let mut rng = random::rng(30);
    for _ in 0..20 {
        let a = random::hermitian(&mut rng, 1, 0.8);
        let b = random::hermitian(&mut rng, 2, 0.5);
        let rho = a.kron(&b);
        assert_eq!(partial_transpose(&rho, 1).unwrap(), a.transpose().kron(&b));
        assert_eq!(partial_transpose(&partial_transpose(&rho, 2).unwrap(), 2).unwrap(), rho);
    }
    assert!(partial_transpose(&Matrix::identity(4), 3).is_err());
}

#[test]
fn tick_matches_partial_transpose() {
    let mut rng = random::rng(31);
    let d = Diagram::tensor(&Diagram::tick(), &Diagram::id());
    for _ in 0..30 {
        let rho = random::hermitian(&mut rng, 2, 0.6);
        assert_eq!(apply_superop(&d, &rho).unwrap(), partial_transpose(&rho, 1).unwrap());
    }
}

#[test]
fn ppt_examples() {
    let mut classical = Matrix::zeros(4, 4);
    classical.set(0, 0, Scalar::one());
    classical.set(3, 3, Scalar::one());
    assert!(ppt_check(&classical, 1).unwrap());
    assert!(ppt_check(&Matrix::from_fn(4, 4, |r, c| Scalar::from_int((r == 0 && c == 0) as i64)), 1).unwrap());
    let bad = Matrix::from_ints(&[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
    assert!(ppt_check(&bad, 1).is_err());
}

#[test]
fn separable_mixtures_are_ppt() {
    let mut rng = random::rng(32);
    for _ in 0..20 {
        let mut rho = Matrix::zeros(4, 4);
        for k in 0..3 {
            let term = random::positive(&mut rng, 1).kron(&random::positive(&mut rng, 1));
            rho = rho.add(&term.scale(&Scalar::from_int(k + 1))).unwrap();
        }
        assert!(ppt_check(&rho, 1).unwrap());
    }
}

#[test]
fn bloch_round_trip_and_spin_flip() {
    let mut rng = random::rng(33);
    let flip = spin_flip_diagram();
    for _ in 0..30 {
        let [x, y, z] = random::bloch_coords(&mut rng);
        let v = BlochVector::new(x, y, z).unwrap();
        let rho = from_bloch(&v);
        assert_eq!(bloch(&rho).unwrap(), v);
        let flipped = spin_flip(&rho).unwrap();
        assert_eq!(bloch(&flipped).unwrap(), -v.clone());
        assert_eq!(apply_superop(&flip, &rho).unwrap(), flipped);
    }
    let half = Matrix::identity(2).scale(&Scalar::half());
    assert_eq!(spin_flip(&half).unwrap(), half);
    assert!(spin_flip(&Matrix::identity(4)).is_err());
}

#[test]
fn pairing_of_i_state() {
    let s = ket_i();
    assert!(sesqui_pairing(&s, &s, false).unwrap().is_zero());
    assert!(sesqui_pairing(&s, &s, true).unwrap().is_one());
    let k0 = Diagram::ket0();
    let k1 = Diagram::ket1();
    assert!(sesqui_pairing(&k0, &k1, true).unwrap().is_zero());
    assert!(sesqui_pairing(&k0, &k0, true).unwrap().is_one());
    assert!(sesqui_pairing(&k0, &Diagram::tensor(&k0, &k0), true).is_err());
}

#[test]
fn ticked_pairing_is_squared_overlap() {
    let mut rng = random::rng(34);
    for k in 1..=2 {
        for _ in 0..15 {
            let x = random::state_on(&mut rng, k, &pure());
            let y = random::state_on(&mut rng, k, &pure());
            let (vx, vy) = (interp(&x).unwrap(), interp(&y).unwrap());
            let overlap = vx.adjoint().mul(&vy).unwrap().get(0, 0).clone();
            assert_eq!(sesqui_pairing(&x, &y, true).unwrap(), overlap.norm_sqr());
        }
    }
}

#[test]
fn pairings_agree_on_real_states() {
    let mut rng = random::rng(35);
    let realify = |g: &Generator| match g {
        Generator::Z { r, n, m } => Generator::Z { r: r.re(), n: *n, m: *m },
        other => other.clone(),
    };
    for _ in 0..30 {
        let x = random::state_on(&mut rng, 2, &pure()).map_gens(&realify);
        let y = random::state_on(&mut rng, 2, &pure()).map_gens(&realify);
        assert_eq!(sesqui_pairing(&x, &y, false).unwrap(), sesqui_pairing(&x, &y, true).unwrap());
    }
}

#[test]
fn internal_dagger_is_the_adjoint() {
    let mut rng = random::rng(36);
    for _ in 0..40 {
        let d = random::any_term(&mut rng, &pure());
        let a = interp(&d).unwrap();
        let dag = internal_dagger(&d).unwrap();
        assert_eq!(dag.arity(), (d.outputs(), d.inputs()));
        let sigma = random::hermitian(&mut rng, d.outputs(), 0.5);
        let want = a.adjoint().mul(&sigma).unwrap().mul(&a).unwrap();
        assert_eq!(apply_superop(&dag, &sigma).unwrap(), want, "{d}");
    }
}

#[test]
fn internal_dagger_is_an_involution() {
    let mut rng = random::rng(37);
    for _ in 0..30 {
        let d = random::any_term(&mut rng, &TermShape::default());
        let back = internal_dagger(&internal_dagger(&d).unwrap()).unwrap();
        assert_eq!(canonical_of_map(&back).unwrap(), canonical_of_map(&d).unwrap(), "{d}");
    }
    let id = Diagram::id();
    assert_eq!(canonical_of_map(&internal_dagger(&id).unwrap()).unwrap(), canonical_of_map(&id).unwrap());
}

#[test]
fn adjoint_property_on_doubled_states() {
    let mut rng = random::rng(38);
    let mut checked = 0;
    while checked < 30 {
        let d = random::any_term(&mut rng, &pure());
        let (n, m) = d.arity();
        if n == 0 || m == 0 {
            continue;
        }
        let x = random::state_on(&mut rng, m, &pure());
        let y = random::state_on(&mut rng, n, &pure());
        let lhs = sesqui_pairing(&Diagram::compose(&internal_dagger(&d).unwrap(), &x).unwrap(), &y, true).unwrap();
        let rhs = sesqui_pairing(&x, &Diagram::compose(&d, &y).unwrap(), true).unwrap();
        assert_eq!(lhs, rhs, "{d}");
        checked += 1;
    }
}

#[test]
fn unitarity() {
    assert!(is_unitary_semantic(&Diagram::w(1, 1)).unwrap());
    assert!(is_unitary_semantic(&Diagram::tick()).unwrap());
    assert!(is_unitary_semantic(&Diagram::fswap()).unwrap());
    assert!(is_unitary_semantic(&spin_flip_diagram()).unwrap());
    let traced = Diagram::compose(&Diagram::ket0(), &Diagram::ground()).unwrap();
    assert!(!is_unitary_semantic(&traced).unwrap());
    assert!(!is_unitary_semantic(&Diagram::z(Scalar::from_int(2), 1, 1)).unwrap());
}
