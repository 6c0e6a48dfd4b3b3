use nambu_core::parse::{parse_poly, parse_zelem};
use nambu_core::poly::VarSpace;
use nambu_core::zariski::{frobenius_search, FrobeniusWitness, Zeta};

const GOLDEN: &str = include_str!("golden/frobenius_witness.txt");

#[test]
fn stored_frobenius_witness() {
    let mut lines = GOLDEN.lines();
    let s = VarSpace::euclidean(3);
    let w = frobenius_search(3, 4).unwrap().expect("witness");
    assert_eq!(lines.next(), Some(w.u.to_text(&s).as_str()));
    assert_eq!(lines.next(), Some(w.ij.to_text(&s).as_str()));
    assert_eq!(lines.next(), Some(w.ji.to_text(&s).as_str()));
    assert!(w.verify().unwrap());
}

#[test]
fn parsed_witness_verifies() {
    let s = VarSpace::euclidean(3);
    let zeta = Zeta::new();
    let lines: Vec<&str> = GOLDEN.lines().collect();
    let w = FrobeniusWitness {
        u: parse_poly(lines[0], &s).unwrap(),
        i: 0,
        j: 1,
        ij: parse_zelem(lines[1], &s, &zeta).unwrap(),
        ji: parse_zelem(lines[2], &s, &zeta).unwrap(),
    };
    assert!(w.verify().unwrap());
}
