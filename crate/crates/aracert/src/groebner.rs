//! Multivariate division, Buchberger's algorithm, elimination, and radical
//! membership via the Rabinowitsch trick. This is the certification engine
//! behind every "equal up to radical" claim the crate makes.

use std::collections::HashSet;
use std::sync::Arc;

use thiserror::Error;

use crate::field::Field;
use crate::poly::{Monomial, MonomialOrder, PolyError, Polynomial, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GbError {
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("computation budget exceeded after {spent} reduction steps")]
    BudgetExceeded { spent: u64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Step limit for Gröbner runs; one unit is one division step or S-pair.
#[derive(Debug, Clone, Copy)]
pub struct GbConfig {
    pub budget: u64,
}

pub const DEFAULT_BUDGET: u64 = 10_000_000;

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig { budget: DEFAULT_BUDGET }
    }
}

struct BudgetTracker {
    limit: u64,
    spent: u64,
}

impl BudgetTracker {
    fn new(limit: u64) -> Self {
        BudgetTracker { limit, spent: 0 }
    }
    fn spend(&mut self, n: u64) -> Result<(), GbError> {
        self.spent += n;
        if self.spent > self.limit {
            Err(GbError::BudgetExceeded { spent: self.spent })
        } else {
            Ok(())
        }
    }
}

/// A finite generator list; zero generators are dropped at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal<F: Field> {
    ring: Arc<Ring<F>>,
    generators: Vec<Polynomial<F>>,
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Arc<Ring<F>>, gens: Vec<Polynomial<F>>) -> Result<Self, GbError> {
        let gens: Vec<_> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            if !g.ring().same(ring) {
                return Err(GbError::RingMismatch);
            }
        }
        Ok(Ideal { ring: ring.clone(), generators: gens })
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }
}

#[derive(Debug, Clone)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<Ring<F>>,
    basis: Vec<Polynomial<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.basis
    }

    /// A reduced basis equals {1} exactly when the ideal is the whole ring.
    pub fn contains_unit(&self) -> bool {
        self.basis.iter().any(|g| !g.is_zero() && g.is_constant())
    }
}

/// Remainder of multivariate division of `f` by `gens`: no term of the result
/// is divisible by any leading term of `gens`, and `f - result` lies in the
/// ideal generated by `gens`.
pub fn normal_form<F: Field>(
    f: &Polynomial<F>,
    gens: &[Polynomial<F>],
    cfg: &GbConfig,
) -> Result<Polynomial<F>, GbError> {
    let mut budget = BudgetTracker::new(cfg.budget);
    normal_form_tracked(f, gens, &mut budget)
}

fn normal_form_tracked<F: Field>(
    f: &Polynomial<F>,
    gens: &[Polynomial<F>],
    budget: &mut BudgetTracker,
) -> Result<Polynomial<F>, GbError> {
    let ring = f.ring().clone();
    for g in gens {
        if !g.ring().same(&ring) {
            return Err(GbError::RingMismatch);
        }
    }
    let field = ring.field().clone();
    let leads: Vec<(Monomial, F::Elem)> = gens
        .iter()
        .filter_map(|g| g.leading_term().map(|(m, c)| (m.clone(), c.clone())))
        .collect();
    let nonzero: Vec<&Polynomial<F>> = gens.iter().filter(|g| !g.is_zero()).collect();

    let mut remainder: Vec<(Monomial, F::Elem)> = Vec::new();
    let mut work = f.clone();
    'outer: while let Some(((lm, lc), tail)) = work.split_leading() {
        for (idx, (gm, gc)) in leads.iter().enumerate() {
            if gm.divides(&lm) {
                budget.spend(1)?;
                let q = gm.div(&lm);
                let c = field.div(&lc, gc).expect("leading coefficient nonzero");
                let ((_, _), gtail) = nonzero[idx].split_leading().expect("nonzero");
                // work := tail - c*q*gtail  (leading terms cancel exactly)
                work = tail.sub(&gtail.mul_term(&q, &c))?;
                continue 'outer;
            }
        }
        remainder.push((lm, lc));
        work = tail;
    }
    Ok(Polynomial::from_sorted_terms(&ring, remainder))
}

fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    let field = f.ring().field().clone();
    let (fm, fc) = f.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let lcm = fm.lcm(gm);
    let a = f.mul_term(&fm.div(&lcm), &field.inv(fc).expect("nonzero"));
    let b = g.mul_term(&gm.div(&lcm), &field.inv(gc).expect("nonzero"));
    a.sub(&b).expect("same ring")
}

/// Buchberger's algorithm with the coprime and chain pair-elimination
/// criteria, normal pair selection (smallest lcm), deterministic tie-breaks.
/// Returns the reduced monic Gröbner basis.
pub fn buchberger<F: Field>(ideal: &Ideal<F>, cfg: &GbConfig) -> Result<GroebnerBasis<F>, GbError> {
    let mut budget = BudgetTracker::new(cfg.budget);
    buchberger_tracked(ideal, &mut budget)
}

fn buchberger_tracked<F: Field>(
    ideal: &Ideal<F>,
    budget: &mut BudgetTracker,
) -> Result<GroebnerBasis<F>, GbError> {
    let ring = ideal.ring().clone();
    let order = ring.order().clone();
    let mut basis: Vec<Polynomial<F>> = ideal.generators().iter().map(|g| g.monic()).collect();

    let mut pending: Vec<(usize, usize)> = Vec::new();
    let mut done: HashSet<(usize, usize)> = HashSet::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pending.push((i, j));
        }
    }

    let lead = |b: &[Polynomial<F>], i: usize| -> Monomial {
        b[i].leading_term().expect("basis elements nonzero").0.clone()
    };

    while !pending.is_empty() {
        // Normal strategy: pick the pair whose lcm is smallest in the order.
        let mut best = 0;
        let mut best_lcm = lead(&basis, pending[0].0).lcm(&lead(&basis, pending[0].1));
        for (k, &(i, j)) in pending.iter().enumerate().skip(1) {
            let lcm = lead(&basis, i).lcm(&lead(&basis, j));
            match order.cmp(&lcm, &best_lcm) {
                std::cmp::Ordering::Less => {
                    best = k;
                    best_lcm = lcm;
                }
                std::cmp::Ordering::Equal if (pending[k]) < (pending[best]) => {
                    best = k;
                    best_lcm = lcm;
                }
                _ => {}
            }
        }
        let (i, j) = pending.swap_remove(best);
        done.insert((i, j));
        budget.spend(1)?;

        let li = lead(&basis, i);
        let lj = lead(&basis, j);
        if li.coprime(&lj) {
            continue;
        }
        // Chain criterion: some k with LT(k) | lcm(i,j) and both companion
        // pairs already treated.
        let lcm = li.lcm(&lj);
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lead(&basis, k).divides(&lcm)
                && done.contains(&pair_key(i, k))
                && done.contains(&pair_key(j, k))
        });
        if chained {
            continue;
        }

        let s = s_polynomial(&basis[i], &basis[j]);
        let r = normal_form_tracked(&s, &basis, budget)?;
        if !r.is_zero() {
            let r = r.monic();
            let new = basis.len();
            basis.push(r);
            for k in 0..new {
                pending.push((k, new));
            }
        }
    }

    // Minimalize: drop elements whose leading term another's divides.
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let li = lead(&basis, i);
            let lj = lead(&basis, j);
            if lj.divides(&li) && (lj != li || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<Polynomial<F>> =
        basis.into_iter().zip(&keep).filter(|(_, &k)| k).map(|(g, _)| g).collect();

    // Fully reduce each element against the others.
    let mut reduced: Vec<Polynomial<F>> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial<F>> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let r = normal_form_tracked(&minimal[i], &others, budget)?;
        debug_assert!(!r.is_zero());
        reduced.push(r.monic());
    }
    reduced.sort_by(|a, b| {
        let la = a.leading_term().expect("nonzero").0;
        let lb = b.leading_term().expect("nonzero").0;
        order.cmp(lb, la)
    });
    Ok(GroebnerBasis { ring, basis: reduced })
}

fn pair_key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Post-hoc Buchberger criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis<F: Field>(
    basis: &[Polynomial<F>],
    cfg: &GbConfig,
) -> Result<bool, GbError> {
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j]);
            if !normal_form(&s, basis, cfg)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn ideal_membership<F: Field>(
    f: &Polynomial<F>,
    ideal: &Ideal<F>,
    cfg: &GbConfig,
) -> Result<bool, GbError> {
    if !f.ring().same(ideal.ring()) {
        return Err(GbError::RingMismatch);
    }
    let gb = buchberger(ideal, cfg)?;
    Ok(normal_form(f, gb.elements(), cfg)?.is_zero())
}

/// Generators of the intersection of the ideal with the subring on
/// `keep_vars`, via a block elimination order. The result lives back in the
/// original ring and mentions only the kept variables.
pub fn eliminate<F: Field>(
    ideal: &Ideal<F>,
    keep_vars: &[usize],
    cfg: &GbConfig,
) -> Result<Ideal<F>, GbError> {
    let ring = ideal.ring();
    let arity = ring.arity();
    let keep: HashSet<usize> = keep_vars.iter().copied().collect();
    let elim: Vec<usize> = (0..arity).filter(|i| !keep.contains(i)).collect();
    let kept: Vec<usize> = (0..arity).filter(|i| keep.contains(i)).collect();

    // Eliminated variables form the first (greatest) block.
    let mut new_vars = Vec::with_capacity(arity);
    let mut var_map = vec![0usize; arity];
    for (pos, &i) in elim.iter().chain(kept.iter()).enumerate() {
        new_vars.push(ring.vars()[i].clone());
        var_map[i] = pos;
    }
    let split = elim.len();
    let ext = Ring::new(ring.field().clone(), new_vars, MonomialOrder::elimination(split))?;

    let lifted: Result<Vec<_>, _> =
        ideal.generators().iter().map(|g| g.rename(&ext, &var_map)).collect();
    let gb = buchberger(&Ideal::new(&ext, lifted?)?, cfg)?;

    // Inverse map back into the original ring.
    let mut inv_map = vec![0usize; arity];
    for (old, &new) in var_map.iter().enumerate() {
        inv_map[new] = old;
    }
    let mut out = Vec::new();
    for g in gb.elements() {
        if g.support().iter().all(|&v| v >= split) {
            out.push(g.rename(ring, &inv_map)?);
        }
    }
    Ideal::new(ring, out)
}

/// Rabinowitsch trick: `f ∈ √I` iff `1 ∈ I + (1 - t·f)` with `t` a fresh
/// variable placed in its own greatest block.
pub fn radical_membership<F: Field>(
    f: &Polynomial<F>,
    ideal: &Ideal<F>,
    cfg: &GbConfig,
) -> Result<bool, GbError> {
    if !f.ring().same(ideal.ring()) {
        return Err(GbError::RingMismatch);
    }
    if f.is_zero() {
        return Ok(true);
    }
    let ring = ideal.ring();
    let mut tname = "t".to_string();
    while ring.vars().contains(&tname) {
        tname.push('_');
    }
    let mut vars = vec![tname];
    vars.extend_from_slice(ring.vars());
    let order = MonomialOrder::Block {
        split: 1,
        first: Box::new(MonomialOrder::GrevLex),
        second: Box::new(ring.order().clone()),
    };
    let ext = Ring::new(ring.field().clone(), vars, order)?;
    let var_map: Vec<usize> = (1..=ring.arity()).collect();

    let mut gens = Vec::with_capacity(ideal.generators().len() + 1);
    for g in ideal.generators() {
        gens.push(g.rename(&ext, &var_map)?);
    }
    let t = Polynomial::var(&ext, 0)?;
    let f_ext = f.rename(&ext, &var_map)?;
    gens.push(Polynomial::one(&ext).sub(&t.mul(&f_ext)?)?);

    let gb = buchberger(&Ideal::new(&ext, gens)?, cfg)?;
    Ok(gb.contains_unit())
}

/// First generator of `a` not contained in the radical of `b`, if any.
pub fn radical_containment_witness<F: Field>(
    a: &Ideal<F>,
    b: &Ideal<F>,
    cfg: &GbConfig,
) -> Result<Option<Polynomial<F>>, GbError> {
    if !a.ring().same(b.ring()) {
        return Err(GbError::RingMismatch);
    }
    // Exact membership is much cheaper and implies radical membership, so the
    // Rabinowitsch run is reserved for the generators that need it.
    let gb = buchberger(b, cfg)?;
    for g in a.generators() {
        if normal_form(g, gb.elements(), cfg)?.is_zero() {
            continue;
        }
        if !radical_membership(g, b, cfg)? {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

/// `√A = √B`, decided generator by generator in both directions.
pub fn radical_equal<F: Field>(a: &Ideal<F>, b: &Ideal<F>, cfg: &GbConfig) -> Result<bool, GbError> {
    Ok(radical_containment_witness(a, b, cfg)?.is_none()
        && radical_containment_witness(b, a, cfg)?.is_none())
}
