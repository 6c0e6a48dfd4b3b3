use proptest::prelude::*;

use crate::arith::ratio;
use crate::poly::{Monomial, Poly};

/// Random polynomial in `n` variables of total degree at most `deg`, with up
/// to five terms and small rational coefficients.
pub fn arb_poly(n: usize, deg: u32) -> impl Strategy<Value = Poly> {
    let term = (proptest::collection::vec(0..=deg, n), -5i64..=5, 1i64..=3);
    proptest::collection::vec(term, 0..=5).prop_map(move |ts| {
        let mut p = Poly::zero(n);
        for (mut e, a, b) in ts {
            while e.iter().sum::<u32>() > deg {
                let i = e.iter().position(|&x| x > 0).unwrap();
                e[i] -= 1;
            }
            p.add_term(Monomial::from_exponents(&e), ratio(a, b));
        }
        p
    })
}
