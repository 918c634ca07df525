//! Shared test helpers: a Macaulay-matrix membership oracle for homogeneous
//! ideals, independent of the Gröbner machinery, plus random polynomial
//! generators.
//!
//! Shared across test binaries; not every binary uses every helper.
#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;

use aracert::field::Field;
use aracert::poly::{Homogeneity, Monomial, Polynomial, Ring};

/// All monomials of total degree `d` in `arity` variables.
pub fn monomials_of_degree(arity: usize, d: u16) -> Vec<Monomial> {
    fn rec(arity: usize, d: u16, prefix: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if prefix.len() == arity - 1 {
            prefix.push(d);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=d {
            prefix.push(e);
            rec(arity, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(arity, d, &mut Vec::new(), &mut out);
    out
}

fn homogeneous_degree<F: Field>(f: &Polynomial<F>) -> Option<u16> {
    match f.homogeneity() {
        Homogeneity::Homogeneous(d) => Some(d as u16),
        _ => None,
    }
}

/// Membership of a homogeneous `f` in the homogeneous ideal generated by
/// `gens`, decided by Gaussian elimination on the degree-d Macaulay matrix:
/// the rows are all products (monomial of degree d - deg g_i) * g_i, and f is
/// a member iff its coefficient vector lies in their row space. Exact linear
/// algebra only; no Gröbner bases anywhere.
pub fn macaulay_member<F: Field>(f: &Polynomial<F>, gens: &[Polynomial<F>]) -> bool {
    let ring: &Arc<Ring<F>> = f.ring();
    let field = ring.field().clone();
    if f.is_zero() {
        return true;
    }
    let d = homogeneous_degree(f).expect("probe must be homogeneous");
    let arity = ring.arity();

    let columns = monomials_of_degree(arity, d);
    let col_index = |m: &Monomial| -> usize {
        columns.iter().position(|c| c == m).expect("degree-d monomial")
    };

    let to_vector = |p: &Polynomial<F>| -> Vec<F::Elem> {
        let mut v = vec![field.zero(); columns.len()];
        for (mono, coeff) in p.terms() {
            v[col_index(mono)] = coeff.clone();
        }
        v
    };

    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let dg = homogeneous_degree(g).expect("generators must be homogeneous");
        if dg > d {
            continue;
        }
        for m in monomials_of_degree(arity, d - dg) {
            let prod = g.mul_term(&m, &field.one());
            rows.push(to_vector(&prod));
        }
    }

    // Row-reduce, then check the probe vector eliminates to zero.
    let mut pivots: Vec<(usize, Vec<F::Elem>)> = Vec::new();
    for mut row in rows {
        reduce_row(&field, &mut row, &pivots);
        if let Some(col) = row.iter().position(|c| !field.is_zero(c)) {
            let inv = field.inv(&row[col]).expect("nonzero pivot");
            for c in row.iter_mut() {
                *c = field.mul(c, &inv);
            }
            pivots.push((col, row));
        }
    }
    let mut probe = to_vector(f);
    reduce_row(&field, &mut probe, &pivots);
    probe.iter().all(|c| field.is_zero(c))
}

fn reduce_row<F: Field>(field: &F, row: &mut [F::Elem], pivots: &[(usize, Vec<F::Elem>)]) {
    for (col, pivot_row) in pivots {
        if field.is_zero(&row[*col]) {
            continue;
        }
        let factor = row[*col].clone();
        for (r, p) in row.iter_mut().zip(pivot_row) {
            let s = field.mul(&factor, p);
            *r = field.sub(r, &s);
        }
    }
}

/// A random homogeneous polynomial of degree `d` with small coefficients;
/// never zero.
pub fn random_homogeneous<F: Field, R: Rng>(
    ring: &Arc<Ring<F>>,
    d: u16,
    rng: &mut R,
) -> Polynomial<F> {
    let field = ring.field().clone();
    loop {
        let mut terms: Vec<(Monomial, F::Elem)> = Vec::new();
        for m in monomials_of_degree(ring.arity(), d) {
            if rng.gen_bool(0.5) {
                terms.push((m, field.from_i64(rng.gen_range(-5i64..=5))));
            }
        }
        let p = Polynomial::from_terms(ring, terms);
        if !p.is_zero() {
            return p;
        }
    }
}
