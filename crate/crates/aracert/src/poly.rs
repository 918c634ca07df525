//! Sparse multivariate polynomials over an exact coefficient field, with
//! pluggable monomial orders, substitution homomorphisms and formal partials.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("expected {expected} substitution images, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("variable index {0} out of range (arity {1})")]
    VariableOutOfRange(usize, usize),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
}

/// Exponent vector; length always equals the ring arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, idx: usize) -> Self {
        let mut e = vec![0; arity];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller must check divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// A total multiplicative well-order on monomials. The block variant compares
/// the first `split` exponents with `first` before falling through to
/// `second`; with a graded inner order this eliminates the first block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    Block {
        split: usize,
        first: Box<MonomialOrder>,
        second: Box<MonomialOrder>,
    },
}

impl MonomialOrder {
    pub fn elimination(split: usize) -> Self {
        MonomialOrder::Block {
            split,
            first: Box::new(MonomialOrder::GrevLex),
            second: Box::new(MonomialOrder::GrevLex),
        }
    }

    pub fn cmp_exps(&self, a: &[u16], b: &[u16]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => {
                let da: u32 = a.iter().map(|&e| e as u32).sum();
                let db: u32 = b.iter().map(|&e| e as u32).sum();
                if da != db {
                    return da.cmp(&db);
                }
                // Equal degree: the rightmost differing exponent decides,
                // smaller exponent there means larger monomial.
                for i in (0..a.len()).rev() {
                    if a[i] != b[i] {
                        return b[i].cmp(&a[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Block { split, first, second } => {
                match first.cmp_exps(&a[..*split], &b[..*split]) {
                    Ordering::Equal => second.cmp_exps(&a[*split..], &b[*split..]),
                    ord => ord,
                }
            }
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_exps(&a.0, &b.0)
    }
}

/// Polynomial ring context: named variables over a coefficient field, with a
/// fixed monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring<F: Field> {
    field: F,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl<F: Field> Ring<F> {
    pub fn new(field: F, vars: Vec<String>, order: MonomialOrder) -> Result<Arc<Self>, PolyError> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(PolyError::DuplicateVariable(v.clone()));
            }
        }
        Ok(Arc::new(Ring { field, vars, order }))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same ring up to pointer or structural equality.
    pub fn same(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }

    /// The same variables and field under a different monomial order.
    pub fn with_order(self: &Arc<Self>, order: MonomialOrder) -> Arc<Self> {
        Arc::new(Ring { field: self.field.clone(), vars: self.vars.clone(), order })
    }
}

/// Reports of `Polynomial::homogeneity`: the zero polynomial is homogeneous
/// but carries no degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Homogeneous(u32),
    Inhomogeneous,
}

impl Homogeneity {
    pub fn is_homogeneous(&self) -> bool {
        !matches!(self, Homogeneity::Inhomogeneous)
    }
}

/// Sparse polynomial: terms sorted descending in the ring's monomial order,
/// no zero coefficients stored.
#[derive(Debug, Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<Ring<F>>,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.terms == other.terms
    }
}
impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<Ring<F>>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<Ring<F>>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Arc<Ring<F>>, c: F::Elem) -> Self {
        if ring.field().is_zero(&c) {
            return Self::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(Monomial::one(ring.arity()), c)] }
    }

    pub fn var(ring: &Arc<Ring<F>>, idx: usize) -> Result<Self, PolyError> {
        if idx >= ring.arity() {
            return Err(PolyError::VariableOutOfRange(idx, ring.arity()));
        }
        Ok(Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.arity(), idx), ring.field().one())],
        })
    }

    /// Builds from unordered terms, merging duplicates and dropping zeros.
    pub fn from_terms(ring: &Arc<Ring<F>>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        let field = ring.field().clone();
        let mut map: HashMap<Monomial, F::Elem> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), ring.arity());
            match map.get_mut(&m) {
                Some(acc) => *acc = field.add(acc, &c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|(a, _), (b, _)| ring.order().cmp(b, a));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F::Elem)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    /// Splits off the leading term; `None` for the zero polynomial.
    pub fn split_leading(&self) -> Option<((Monomial, F::Elem), Polynomial<F>)> {
        let (lm, lc) = self.terms.first()?.clone();
        let tail = Polynomial { ring: self.ring.clone(), terms: self.terms[1..].to_vec() };
        Some(((lm, lc), tail))
    }

    /// Terms must already be strictly descending in the ring order, zero-free.
    pub(crate) fn from_sorted_terms(ring: &Arc<Ring<F>>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let field = self.ring.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match order.cmp(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(&self.terms[i].1, &other.terms[j].1);
                    if !field.is_zero(&c) {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(Polynomial { ring: self.ring.clone(), terms: out })
    }

    pub fn neg(&self) -> Self {
        let field = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    /// Multiplies by a single term in place of a full polynomial product.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let field = self.ring.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(tm, tc)| (tm.mul(m), field.mul(tc, c))).collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.mul_term(&Monomial::one(self.ring.arity()), c)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let field = self.ring.field().clone();
        let mut map: HashMap<Monomial, F::Elem> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = field.mul(ca, cb);
                match map.get_mut(&m) {
                    Some(acc) => *acc = field.add(acc, &c),
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|(a, _), (b, _)| self.ring.order().cmp(b, a));
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Applies the ring homomorphism sending variable `i` to `images[i]`.
    /// Images live in a common target ring and need not be variables.
    pub fn substitute(&self, target: &Arc<Ring<F>>, images: &[Polynomial<F>]) -> Result<Polynomial<F>, PolyError> {
        if images.len() != self.ring.arity() {
            return Err(PolyError::ArityMismatch { expected: self.ring.arity(), got: images.len() });
        }
        for im in images {
            if !im.ring.same(target) {
                return Err(PolyError::RingMismatch);
            }
        }
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e as u32))?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Formal partial derivative; exact in any characteristic.
    pub fn partial_derivative(&self, var: usize) -> Result<Self, PolyError> {
        if var >= self.ring.arity() {
            return Err(PolyError::VariableOutOfRange(var, self.ring.arity()));
        }
        let field = self.ring.field();
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let c = field.mul(c, &field.from_i64(e as i64));
            if field.is_zero(&c) {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            terms.push((Monomial(exps), c));
        }
        Ok(Self::from_terms(&self.ring, terms))
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degs = self.terms.iter().map(|(m, _)| m.total_degree());
        match degs.next() {
            None => Homogeneity::Zero,
            Some(d) => {
                if degs.all(|e| e == d) {
                    Homogeneity::Homogeneous(d)
                } else {
                    Homogeneity::Inhomogeneous
                }
            }
        }
    }

    /// Divides every coefficient by the leading one.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = self.ring.field().inv(lc).expect("leading coefficient nonzero");
                self.scale(&inv)
            }
        }
    }

    /// Evaluates at a point given by one field element per variable.
    pub fn eval(&self, point: &[F::Elem]) -> Result<F::Elem, PolyError> {
        if point.len() != self.ring.arity() {
            return Err(PolyError::ArityMismatch { expected: self.ring.arity(), got: point.len() });
        }
        let field = self.ring.field();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = field.mul(&t, &point[i]);
                }
            }
            acc = field.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Transports the polynomial into `target`, sending variable `i` of the
    /// source ring to variable `var_map[i]` of the target.
    pub fn rename(&self, target: &Arc<Ring<F>>, var_map: &[usize]) -> Result<Polynomial<F>, PolyError> {
        if var_map.len() != self.ring.arity() {
            return Err(PolyError::ArityMismatch { expected: self.ring.arity(), got: var_map.len() });
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; target.arity()];
            for (i, &e) in m.0.iter().enumerate() {
                let j = var_map[i];
                if j >= target.arity() {
                    return Err(PolyError::VariableOutOfRange(j, target.arity()));
                }
                exps[j] += e;
            }
            terms.push((Monomial(exps), c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// The set of variable indices appearing with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.arity()];
        for (m, _) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i).collect()
    }
}
