//! d-flex certification: lines meeting a hypersurface at a single point,
//! normalization of such configurations into standard position, and the
//! moduli-dimension formulas for plane curves with hyperflexes.


use thiserror::Error;

use crate::field::{Field, FieldError};
use crate::poly::{Homogeneity, MonomialOrder, PolyError, Polynomial, Ring};

#[derive(Debug, Error)]
pub enum FlexError {
    #[error("all coordinates are zero")]
    ZeroVector,
    #[error("spanning points are not linearly independent")]
    PointsNotIndependent,
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point does not lie on the line")]
    NotOnLine,
    #[error("point does not lie on the hypersurface")]
    NotOnHypersurface,
    #[error("line contained in the hypersurface: infinite intersection multiplicity")]
    LineInHypersurface,
    #[error("not a d-flex: {0}")]
    NotADFlex(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("input must be a nonzero homogeneous form")]
    NotHomogeneous,
    #[error("operation requires a finite base field")]
    NotFinite,
    #[error("search space too large: q = {0}")]
    SearchTooLarge(u64),
    #[error("hypersurface fails the smoothness pre-screen: singular at {0}")]
    SingularAt(String),
    #[error("degree must be at least 3, got {0}")]
    DegreeTooSmall(u32),
    #[error("alpha must be 1 or 2, got {0}")]
    BadAlpha(u32),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A point of P^n in canonical form: first nonzero coordinate scaled to 1.
#[derive(Debug, Clone)]
pub struct ProjectivePoint<F: Field> {
    field: F,
    coords: Vec<F::Elem>,
}

impl<F: Field> PartialEq for ProjectivePoint<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}
impl<F: Field> Eq for ProjectivePoint<F> {}

impl<F: Field> ProjectivePoint<F> {
    pub fn new(field: F, coords: Vec<F::Elem>) -> Result<Self, FlexError> {
        let pivot = coords.iter().position(|c| !field.is_zero(c)).ok_or(FlexError::ZeroVector)?;
        let inv = field.inv(&coords[pivot])?;
        let coords = coords.iter().map(|c| field.mul(c, &inv)).collect();
        Ok(ProjectivePoint { field, coords })
    }

    pub fn from_i64(field: F, coords: &[i64]) -> Result<Self, FlexError> {
        Self::new(field.clone(), coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn coords(&self) -> &[F::Elem] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn format(&self) -> String {
        let parts: Vec<String> = self.coords.iter().map(|c| self.field.format(c)).collect();
        format!("[{}]", parts.join(", "))
    }
}

/// A line in P^n, stored as two distinct spanning points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveLine<F: Field> {
    a: ProjectivePoint<F>,
    b: ProjectivePoint<F>,
}

impl<F: Field> ProjectiveLine<F> {
    pub fn new(a: ProjectivePoint<F>, b: ProjectivePoint<F>) -> Result<Self, FlexError> {
        if a.len() != b.len() {
            return Err(FlexError::DimensionMismatch { expected: a.len(), got: b.len() });
        }
        if a == b {
            return Err(FlexError::PointsNotIndependent);
        }
        Ok(ProjectiveLine { a, b })
    }

    /// The line in P^2 cut out by c0*x0 + c1*x1 + c2*x2.
    pub fn from_dual(field: F, form: &[F::Elem]) -> Result<Self, FlexError> {
        if form.len() != 3 {
            return Err(FlexError::DimensionMismatch { expected: 3, got: form.len() });
        }
        let pivot = form.iter().position(|c| !field.is_zero(c)).ok_or(FlexError::ZeroVector)?;
        let inv = field.inv(&form[pivot])?;
        let mut points = Vec::new();
        for j in 0..3 {
            if j == pivot {
                continue;
            }
            // e_j - (c_j / c_pivot) e_pivot lies in the kernel.
            let mut v = vec![field.zero(); 3];
            v[j] = field.one();
            v[pivot] = field.neg(&field.mul(&form[j], &inv));
            points.push(ProjectivePoint::new(field.clone(), v)?);
        }
        let b = points.pop().unwrap();
        let a = points.pop().unwrap();
        ProjectiveLine::new(a, b)
    }

    pub fn span(&self) -> (&ProjectivePoint<F>, &ProjectivePoint<F>) {
        (&self.a, &self.b)
    }

    pub fn ambient_len(&self) -> usize {
        self.a.len()
    }

    fn field(&self) -> &F {
        &self.a.field
    }

    /// The dual linear form of a line in P^2 (the cross product of the
    /// spanning points).
    pub fn dual_form(&self) -> Result<Vec<F::Elem>, FlexError> {
        if self.ambient_len() != 3 {
            return Err(FlexError::DimensionMismatch { expected: 3, got: self.ambient_len() });
        }
        let f = self.field().clone();
        let (a, b) = (&self.a.coords, &self.b.coords);
        let cross = |i: usize, j: usize| f.sub(&f.mul(&a[i], &b[j]), &f.mul(&a[j], &b[i]));
        Ok(vec![cross(1, 2), f.neg(&cross(0, 2)), cross(0, 1)])
    }

    /// Parameters (s, t) with p = s*a + t*b, if p lies on the line.
    pub fn parameters_of(&self, p: &ProjectivePoint<F>) -> Option<(F::Elem, F::Elem)> {
        if p.len() != self.ambient_len() {
            return None;
        }
        let f = self.field();
        let (a, b) = (&self.a.coords, &self.b.coords);
        // Find a coordinate pair where the 2x2 span matrix is invertible.
        let n = a.len();
        for j1 in 0..n {
            for j2 in (j1 + 1)..n {
                let det = f.sub(&f.mul(&a[j1], &b[j2]), &f.mul(&a[j2], &b[j1]));
                if f.is_zero(&det) {
                    continue;
                }
                let dinv = f.inv(&det).ok()?;
                let s = f.mul(
                    &f.sub(&f.mul(&p.coords[j1], &b[j2]), &f.mul(&p.coords[j2], &b[j1])),
                    &dinv,
                );
                let t = f.mul(
                    &f.sub(&f.mul(&a[j1], &p.coords[j2]), &f.mul(&a[j2], &p.coords[j1])),
                    &dinv,
                );
                for k in 0..n {
                    let v = f.add(&f.mul(&s, &a[k]), &f.mul(&t, &b[k]));
                    if v != p.coords[k] {
                        return None;
                    }
                }
                return Some((s, t));
            }
        }
        None
    }

    pub fn contains(&self, p: &ProjectivePoint<F>) -> bool {
        self.parameters_of(p).is_some()
    }

    /// The point s*a + t*b.
    pub fn point_at(&self, s: &F::Elem, t: &F::Elem) -> Result<ProjectivePoint<F>, FlexError> {
        let f = self.field().clone();
        let coords = self
            .a
            .coords
            .iter()
            .zip(&self.b.coords)
            .map(|(ai, bi)| f.add(&f.mul(s, ai), &f.mul(t, bi)))
            .collect();
        ProjectivePoint::new(f, coords)
    }
}

/// An invertible change of coordinates, acting on polynomials by substitution:
/// `apply(F) = F(Mx)`, so row i of the matrix gives the image of x_i.
#[derive(Debug, Clone)]
pub struct LinearChange<F: Field> {
    field: F,
    matrix: Vec<Vec<F::Elem>>,
}

impl<F: Field> LinearChange<F> {
    pub fn new(field: F, matrix: Vec<Vec<F::Elem>>) -> Result<Self, FlexError> {
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|row| row.len() != n) {
            return Err(FlexError::DimensionMismatch {
                expected: n,
                got: matrix.iter().map(|r| r.len()).max().unwrap_or(0),
            });
        }
        invert(&field, &matrix)?;
        Ok(LinearChange { field, matrix })
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut matrix = vec![vec![field.zero(); n]; n];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = field.one();
        }
        LinearChange { field, matrix }
    }

    pub fn matrix(&self) -> &[Vec<F::Elem>] {
        &self.matrix
    }

    pub fn inverse(&self) -> Result<Self, FlexError> {
        Ok(LinearChange { field: self.field.clone(), matrix: invert(&self.field, &self.matrix)? })
    }

    pub fn apply(&self, f: &Polynomial<F>) -> Result<Polynomial<F>, FlexError> {
        let ring = f.ring();
        if ring.arity() != self.matrix.len() {
            return Err(FlexError::DimensionMismatch {
                expected: self.matrix.len(),
                got: ring.arity(),
            });
        }
        let mut images = Vec::with_capacity(self.matrix.len());
        for row in &self.matrix {
            let mut img = Polynomial::zero(ring);
            for (j, c) in row.iter().enumerate() {
                if !self.field.is_zero(c) {
                    img = img.add(&Polynomial::var(ring, j)?.scale(c))?;
                }
            }
            images.push(img);
        }
        Ok(f.substitute(ring, &images)?)
    }
}

/// Gauss-Jordan inverse; errors on a singular matrix.
fn invert<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> Result<Vec<Vec<F::Elem>>, FlexError> {
    let n = m.len();
    let mut a: Vec<Vec<F::Elem>> = m.to_vec();
    let mut inv = LinearChange::identity(field.clone(), n).matrix;
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !field.is_zero(&a[r][col]))
            .ok_or(FlexError::SingularMatrix)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let pinv = field.inv(&a[col][col])?;
        for j in 0..n {
            a[col][j] = field.mul(&a[col][j], &pinv);
            inv[col][j] = field.mul(&inv[col][j], &pinv);
        }
        for r in 0..n {
            if r == col || field.is_zero(&a[r][col]) {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                let s = field.mul(&factor, &a[col][j]);
                a[r][j] = field.sub(&a[r][j], &s);
                let s = field.mul(&factor, &inv[col][j]);
                inv[r][j] = field.sub(&inv[r][j], &s);
            }
        }
    }
    Ok(inv)
}

fn rank2_with<F: Field>(field: &F, rows: &[&[F::Elem]], v: &[F::Elem]) -> bool {
    // True when v is independent of the span of `rows` (small Gaussian sweep).
    let mut basis: Vec<Vec<F::Elem>> = rows.iter().map(|r| r.to_vec()).collect();
    let mut v = v.to_vec();
    let n = v.len();
    let mut used = vec![false; basis.len()];
    for col in 0..n {
        let Some(bi) = (0..basis.len())
            .find(|&i| !used[i] && !field.is_zero(&basis[i][col]))
        else {
            continue;
        };
        used[bi] = true;
        let pinv = match field.inv(&basis[bi][col]) {
            Ok(p) => p,
            Err(_) => return false,
        };
        let scaled: Vec<F::Elem> = basis[bi].iter().map(|x| field.mul(x, &pinv)).collect();
        basis[bi] = scaled.clone();
        if !field.is_zero(&v[col]) {
            let factor = v[col].clone();
            for j in 0..n {
                let s = field.mul(&factor, &scaled[j]);
                v[j] = field.sub(&v[j], &s);
            }
        }
        for i in 0..basis.len() {
            if used[i] || field.is_zero(&basis[i][col]) {
                continue;
            }
            let factor = basis[i][col].clone();
            for j in 0..n {
                let s = field.mul(&factor, &scaled[j]);
                basis[i][j] = field.sub(&basis[i][j], &s);
            }
        }
    }
    v.iter().any(|c| !field.is_zero(c))
}

fn degree_of<F: Field>(f: &Polynomial<F>) -> Result<u32, FlexError> {
    match f.homogeneity() {
        Homogeneity::Homogeneous(d) => Ok(d),
        _ => Err(FlexError::NotHomogeneous),
    }
}

/// F(s*A + t*B): the binary form cutting out the intersection with the line.
/// Zero exactly when the line lies inside V(F).
pub fn restrict_to_line<F: Field>(
    f: &Polynomial<F>,
    line: &ProjectiveLine<F>,
) -> Result<Polynomial<F>, FlexError> {
    let ring = f.ring();
    if ring.arity() != line.ambient_len() {
        return Err(FlexError::DimensionMismatch {
            expected: line.ambient_len(),
            got: ring.arity(),
        });
    }
    degree_of(f)?;
    let field = ring.field().clone();
    let st = Ring::new(field.clone(), vec!["s".into(), "t".into()], MonomialOrder::GrevLex)?;
    let s = Polynomial::var(&st, 0)?;
    let t = Polynomial::var(&st, 1)?;
    let (a, b) = line.span();
    let mut images = Vec::with_capacity(ring.arity());
    for i in 0..ring.arity() {
        images.push(s.scale(&a.coords()[i]).add(&t.scale(&b.coords()[i]))?);
    }
    Ok(f.substitute(&st, &images)?)
}

/// True when the line meets V(F) only at P, with full multiplicity d: the
/// restriction factors as c * l^d for the parameter form l vanishing at P.
/// Over a finite field this is additionally cross-checked by enumerating the
/// points of the line.
pub fn is_d_flex<F: Field>(
    f: &Polynomial<F>,
    line: &ProjectiveLine<F>,
    p: &ProjectivePoint<F>,
) -> Result<bool, FlexError> {
    let (s0, t0) = line.parameters_of(p).ok_or(FlexError::NotOnLine)?;
    let field = f.ring().field().clone();
    if !field.is_zero(&f.eval(p.coords())?) {
        return Err(FlexError::NotOnHypersurface);
    }
    let d = degree_of(f)?;
    let g = restrict_to_line(f, line)?;
    if g.is_zero() {
        return Err(FlexError::LineInHypersurface);
    }
    // l = t0*s - s0*t vanishes at (s0, t0).
    let st = g.ring();
    let l = Polynomial::var(st, 0)?
        .scale(&t0)
        .sub(&Polynomial::var(st, 1)?.scale(&s0))?;
    let ld = l.pow(d);
    let (gm, gc) = g.leading_term().unwrap();
    let algebraic = match ld.leading_term() {
        Some((lm, lc)) if lm == gm => {
            let c = field.div(gc, lc)?;
            g == ld.scale(&c)
        }
        _ => false,
    };
    let q = field.characteristic();
    if algebraic && q != 0 && q <= 1000 {
        // Cross-check on P^1(F_q): the only rational zero is at (s0, t0).
        // (The converse need not hold: a unique rational root can still have
        // multiplicity below d, so enumeration alone never certifies.)
        let mut zeros = 0usize;
        let mut hit_p = false;
        let mut points: Vec<(F::Elem, F::Elem)> =
            (0..q as i64).map(|t| (field.one(), field.from_i64(t))).collect();
        points.push((field.zero(), field.one()));
        for (s, t) in points {
            if field.is_zero(&g.eval(&[s.clone(), t.clone()])?) {
                zeros += 1;
                let lhs = field.mul(&s, &t0);
                let rhs = field.mul(&t, &s0);
                if lhs == rhs {
                    hit_p = true;
                }
            }
        }
        return Ok(zeros == 1 && hit_p);
    }
    Ok(algebraic)
}

/// Moves (F, L, P) into standard position: returns (F', T) with F' = F o T^{-1}
/// scaled so its only term in {x_{n-1}, x_n} alone is x_{n-1}^d. T sends L to
/// V(x_0, ..., x_{n-2}); under T the point P goes to the last coordinate point,
/// so the parameter form of the flex becomes x_{n-1} itself.
pub fn standardize<F: Field>(
    f: &Polynomial<F>,
    line: &ProjectiveLine<F>,
    p: &ProjectivePoint<F>,
) -> Result<(Polynomial<F>, LinearChange<F>), FlexError> {
    if !is_d_flex(f, line, p)? {
        return Err(FlexError::NotADFlex(
            "the restriction to the line is not a pure d-th power at P".to_string(),
        ));
    }
    let ring = f.ring();
    let field = ring.field().clone();
    let n1 = ring.arity();
    let d = degree_of(f)?;

    let (la, lb) = line.span();
    let other = if p == la { lb } else { la };

    // Greedy basis extension: standard basis vectors independent of
    // {other, p} and the ones already chosen fill the first n-1 columns.
    let mut chosen: Vec<Vec<F::Elem>> = Vec::new();
    for i in 0..n1 {
        if chosen.len() == n1 - 2 {
            break;
        }
        let mut e = vec![field.zero(); n1];
        e[i] = field.one();
        let mut rows: Vec<&[F::Elem]> = vec![other.coords(), p.coords()];
        for c in &chosen {
            rows.push(c);
        }
        if rank2_with(&field, &rows, &e) {
            chosen.push(e);
        }
    }
    debug_assert_eq!(chosen.len(), n1 - 2);
    chosen.push(other.coords().to_vec());
    chosen.push(p.coords().to_vec());

    // M has the chosen vectors as columns; apply computes F(Mx).
    let mut m = vec![vec![field.zero(); n1]; n1];
    for (j, col) in chosen.iter().enumerate() {
        for i in 0..n1 {
            m[i][j] = col[i].clone();
        }
    }
    let m_change = LinearChange::new(field.clone(), m)?;
    let fm = m_change.apply(f)?;

    // The flex guarantees the pure {x_{n-1}, x_n} part is c * x_{n-1}^d.
    let mut power = crate::poly::Monomial::one(n1);
    power.0[n1 - 2] = d as u16;
    let c = fm
        .terms()
        .iter()
        .find(|(mo, _)| *mo == power)
        .map(|(_, c)| c.clone())
        .ok_or_else(|| FlexError::NotADFlex("standardized form lost its power term".into()))?;
    let f_std = fm.scale(&field.inv(&c)?);
    Ok((f_std, m_change.inverse()?))
}

/// The builtin certified flex of the Fermat curve x0^d + x1^d + x2^d, d odd:
/// the line x0 + x1 = 0 with the point [1, -1, 0].
pub fn fermat_flex_pair<F: Field>(
    field: F,
) -> Result<(ProjectiveLine<F>, ProjectivePoint<F>), FlexError> {
    let p = ProjectivePoint::from_i64(field.clone(), &[1, -1, 0])?;
    let b = ProjectivePoint::from_i64(field.clone(), &[0, 0, 1])?;
    let line = ProjectiveLine::new(p.clone(), b)?;
    Ok((line, p))
}

/// Standardizes the Fermat form of odd degree via its builtin flex pair.
pub fn standardize_fermat<F: Field>(
    f: &Polynomial<F>,
    d: u32,
) -> Result<(Polynomial<F>, LinearChange<F>), FlexError> {
    if d % 2 == 0 {
        return Err(FlexError::NotADFlex(format!(
            "the builtin Fermat flex pair needs odd degree, got {d}"
        )));
    }
    let (line, p) = fermat_flex_pair(f.ring().field().clone())?;
    standardize(f, &line, &p)
}

/// Exhaustive d-flex search for a plane curve over F_q: every incident
/// (line, point) pair is tested. Errors when the base field is infinite, the
/// search is too large, or F has a singular F_q-point (smoothness pre-screen).
pub fn find_d_flexes_bruteforce<F: Field>(
    f: &Polynomial<F>,
) -> Result<Vec<(ProjectiveLine<F>, ProjectivePoint<F>)>, FlexError> {
    let ring = f.ring();
    if ring.arity() != 3 {
        return Err(FlexError::DimensionMismatch { expected: 3, got: ring.arity() });
    }
    degree_of(f)?;
    let field = ring.field().clone();
    let q = field.characteristic();
    if q == 0 {
        return Err(FlexError::NotFinite);
    }
    if q > 31 {
        return Err(FlexError::SearchTooLarge(q));
    }

    let points = enumerate_plane_points(&field, q)?;

    // Smoothness pre-screen at rational points: on the curve, some partial
    // must survive.
    let partials: Vec<Polynomial<F>> =
        (0..3).map(|k| f.partial_derivative(k)).collect::<Result<_, _>>()?;
    for pt in &points {
        if !field.is_zero(&f.eval(pt.coords())?) {
            continue;
        }
        let singular = partials
            .iter()
            .map(|df| df.eval(pt.coords()))
            .collect::<Result<Vec<_>, _>>()?
            .iter()
            .all(|v| field.is_zero(v));
        if singular {
            return Err(FlexError::SingularAt(pt.format()));
        }
    }

    // Lines of P^2(F_q) are the canonical dual forms, i.e. the same list of
    // canonical coordinate vectors.
    let mut out = Vec::new();
    for dual in &points {
        let line = ProjectiveLine::from_dual(field.clone(), dual.coords())?;
        for t in 0..=(q as i64) {
            let pt = if t == q as i64 {
                line.point_at(&field.zero(), &field.one())?
            } else {
                line.point_at(&field.one(), &field.from_i64(t))?
            };
            if !field.is_zero(&f.eval(pt.coords())?) {
                continue;
            }
            match is_d_flex(f, &line, &pt) {
                Ok(true) => out.push((line.clone(), pt)),
                Ok(false) => {}
                Err(FlexError::LineInHypersurface) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

/// Canonical representatives of P^2(F_q): q^2 + q + 1 points.
fn enumerate_plane_points<F: Field>(
    field: &F,
    q: u64,
) -> Result<Vec<ProjectivePoint<F>>, FlexError> {
    let mut points = Vec::with_capacity((q * q + q + 1) as usize);
    let elems: Vec<F::Elem> = (0..q as i64).map(|v| field.from_i64(v)).collect();
    for a in &elems {
        for b in &elems {
            points.push(ProjectivePoint::new(
                field.clone(),
                vec![field.one(), a.clone(), b.clone()],
            )?);
        }
    }
    for a in &elems {
        points.push(ProjectivePoint::new(
            field.clone(),
            vec![field.zero(), field.one(), a.clone()],
        )?);
    }
    points.push(ProjectivePoint::new(
        field.clone(),
        vec![field.zero(), field.zero(), field.one()],
    )?);
    Ok(points)
}

fn binomial(n: u32, k: u32) -> i64 {
    if k > n {
        return 0;
    }
    let mut acc: i64 = 1;
    for i in 0..k as i64 {
        acc = acc * (n as i64 - i) / (i + 1);
    }
    acc
}

/// dim V_{d,alpha} = C(d+2-alpha, 2) - 8 + 3*alpha: plane curves of degree d
/// with an alpha-fold hyperflex structure, modulo projectivities.
pub fn moduli_dim(d: u32, alpha: u32) -> Result<i64, FlexError> {
    if d < 3 {
        return Err(FlexError::DegreeTooSmall(d));
    }
    if alpha != 1 && alpha != 2 {
        return Err(FlexError::BadAlpha(alpha));
    }
    Ok(binomial(d + 2 - alpha, 2) - 8 + 3 * alpha as i64)
}

/// dim V_d = C(d+1, 2) - 5: the hyperflex locus inside the moduli of plane
/// curves of degree d.
pub fn dim_v(d: u32) -> Result<i64, FlexError> {
    if d < 3 {
        return Err(FlexError::DegreeTooSmall(d));
    }
    Ok(binomial(d + 1, 2) - 5)
}

/// dim H_d = C(d+2, 2) - 9: smooth plane curves of degree d modulo
/// projectivities.
pub fn dim_h(d: u32) -> Result<i64, FlexError> {
    if d < 3 {
        return Err(FlexError::DegreeTooSmall(d));
    }
    Ok(binomial(d + 2, 2) - 9)
}

/// Codimension of V_d in H_d; equals d - 3.
pub fn codim(d: u32) -> Result<i64, FlexError> {
    Ok(dim_h(d)? - dim_v(d)?)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::segre::CurveSpec;
    use crate::textform::{parse, print};

    fn xring(n1: usize) -> Arc<Ring<Rationals>> {
        Ring::new(
            Rationals,
            (0..n1).map(|i| format!("x{i}")).collect(),
            MonomialOrder::GrevLex,
        )
        .unwrap()
    }

    fn pt(coords: &[i64]) -> ProjectivePoint<Rationals> {
        ProjectivePoint::from_i64(Rationals, coords).unwrap()
    }

    #[test]
    fn canonical_representatives() {
        assert_eq!(pt(&[2, 4, 6]), pt(&[1, 2, 3]));
        assert_eq!(pt(&[0, -3, 6]), pt(&[0, 1, -2]));
        assert!(ProjectivePoint::from_i64(Rationals, &[0, 0, 0]).is_err());
        assert_eq!(pt(&[-1, 1, 0]), pt(&[1, -1, 0]));
    }

    #[test]
    fn line_membership_and_parameters() {
        let line = ProjectiveLine::new(pt(&[1, -1, 0]), pt(&[0, 0, 1])).unwrap();
        assert!(line.contains(&pt(&[1, -1, 2])));
        assert!(!line.contains(&pt(&[1, 0, 0])));
        let (s, t) = line.parameters_of(&pt(&[1, -1, 2])).unwrap();
        assert_eq!(Rationals.format(&s), "1");
        assert_eq!(Rationals.format(&t), "2");
        assert!(ProjectiveLine::new(pt(&[1, 2, 3]), pt(&[2, 4, 6])).is_err());
    }

    #[test]
    fn dual_form_round_trip() {
        let line = ProjectiveLine::from_dual(
            Rationals,
            &[Rationals.from_i64(1), Rationals.from_i64(1), Rationals.from_i64(0)],
        )
        .unwrap();
        assert!(line.contains(&pt(&[1, -1, 0])));
        assert!(line.contains(&pt(&[0, 0, 1])));
        let dual = line.dual_form().unwrap();
        let normalized = ProjectivePoint::new(Rationals, dual).unwrap();
        assert_eq!(normalized, pt(&[1, 1, 0]));
    }

    #[test]
    fn restriction_examples() {
        let r = xring(3);
        let fermat = CurveSpec::Fermat(3).realize(&r).unwrap();
        let line = ProjectiveLine::new(pt(&[1, -1, 0]), pt(&[0, 0, 1])).unwrap();
        assert_eq!(print(&restrict_to_line(&fermat, &line).unwrap()), "t^3");

        let x0 = Polynomial::var(&r, 0).unwrap();
        let inside = ProjectiveLine::new(pt(&[0, 1, 0]), pt(&[0, 0, 1])).unwrap();
        assert!(restrict_to_line(&x0, &inside).unwrap().is_zero());

        let conic = CurveSpec::ConicStandard.realize(&r).unwrap();
        let secant = ProjectiveLine::new(pt(&[1, 0, 0]), pt(&[0, 0, 1])).unwrap();
        assert_eq!(print(&restrict_to_line(&conic, &secant).unwrap()), "s*t");
    }

    #[test]
    fn d_flex_examples() {
        let r = xring(3);
        let fermat = CurveSpec::Fermat(3).realize(&r).unwrap();
        let line = ProjectiveLine::new(pt(&[1, -1, 0]), pt(&[0, 0, 1])).unwrap();
        assert!(is_d_flex(&fermat, &line, &pt(&[-1, 1, 0])).unwrap());

        let conic = CurveSpec::ConicStandard.realize(&r).unwrap();
        let tangent = ProjectiveLine::from_dual(
            Rationals,
            &[Rationals.from_i64(0), Rationals.from_i64(0), Rationals.from_i64(1)],
        )
        .unwrap();
        assert!(is_d_flex(&conic, &tangent, &pt(&[1, 0, 0])).unwrap());

        let secant = ProjectiveLine::from_dual(
            Rationals,
            &[Rationals.from_i64(0), Rationals.from_i64(1), Rationals.from_i64(0)],
        )
        .unwrap();
        assert!(!is_d_flex(&conic, &secant, &pt(&[1, 0, 0])).unwrap());

        // Error cases: off the line, off the curve, line inside.
        assert!(matches!(
            is_d_flex(&fermat, &line, &pt(&[1, 0, 0])),
            Err(FlexError::NotOnLine)
        ));
        assert!(matches!(
            is_d_flex(&fermat, &line, &pt(&[1, -1, 1])),
            Err(FlexError::NotOnHypersurface)
        ));
        let x0 = Polynomial::var(&r, 0).unwrap();
        let inside = ProjectiveLine::new(pt(&[0, 1, 0]), pt(&[0, 0, 1])).unwrap();
        assert!(matches!(
            is_d_flex(&x0, &inside, &pt(&[0, 1, 0])),
            Err(FlexError::LineInHypersurface)
        ));
    }

    #[test]
    fn d_flex_over_finite_fields() {
        for p in [5u64, 7, 32003] {
            let fq = PrimeField::new(p).unwrap();
            let r = Ring::new(
                fq,
                vec!["x0".into(), "x1".into(), "x2".into()],
                MonomialOrder::GrevLex,
            )
            .unwrap();
            let fermat = CurveSpec::Fermat(3).realize(&r).unwrap();
            let (line, flex_pt) = fermat_flex_pair(fq).unwrap();
            assert!(is_d_flex(&fermat, &line, &flex_pt).unwrap(), "p = {p}");
        }
    }

    #[test]
    fn standardize_fermat_cubic() {
        let r = xring(3);
        let fermat = CurveSpec::Fermat(3).realize(&r).unwrap();
        let (fp, t) = standardize_fermat(&fermat, 3).unwrap();
        assert_eq!(print(&fp), "x0^3 + x1^3 + 3*x0^2*x2 + 3*x0*x2^2");
        // F' o T = c * F exactly.
        let back = t.apply(&fp).unwrap();
        let c = back.leading_term().unwrap().1.clone();
        assert_eq!(back, fermat.scale(&c));
        // Round trip: the standardized form passes the syntactic check.
        let ctx = crate::segre::SegreContext::new(Rationals, 2, 1).unwrap();
        assert!(crate::segre::theorem10_candidate(&fp, &ctx).is_ok());
    }

    #[test]
    fn standardize_already_standard() {
        let r = xring(3);
        let f = parse(&r, "x1^3 + x0*x2^2").unwrap();
        let line = ProjectiveLine::new(pt(&[0, 0, 1]), pt(&[0, 1, 0])).unwrap();
        let (fp, _t) = standardize(&f, &line, &pt(&[0, 0, 1])).unwrap();
        let ctx = crate::segre::SegreContext::new(Rationals, 2, 1).unwrap();
        assert!(crate::segre::theorem10_candidate(&fp, &ctx).is_ok());
    }

    #[test]
    fn standardize_conic_tangent() {
        let r = xring(3);
        let conic = CurveSpec::ConicStandard.realize(&r).unwrap();
        let tangent = ProjectiveLine::from_dual(
            Rationals,
            &[Rationals.from_i64(0), Rationals.from_i64(0), Rationals.from_i64(1)],
        )
        .unwrap();
        let (fp, _t) = standardize(&conic, &tangent, &pt(&[1, 0, 0])).unwrap();
        let ctx = crate::segre::SegreContext::new(Rationals, 2, 1).unwrap();
        assert!(crate::segre::theorem10_candidate(&fp, &ctx).is_ok());
    }

    #[test]
    fn standardize_rejects_non_flex() {
        let r = xring(3);
        let conic = CurveSpec::ConicStandard.realize(&r).unwrap();
        let secant = ProjectiveLine::from_dual(
            Rationals,
            &[Rationals.from_i64(0), Rationals.from_i64(1), Rationals.from_i64(0)],
        )
        .unwrap();
        assert!(matches!(
            standardize(&conic, &secant, &pt(&[1, 0, 0])),
            Err(FlexError::NotADFlex(_))
        ));
    }

    #[test]
    fn brute_force_search_fermat_f7() {
        let f7 = PrimeField::new(7).unwrap();
        let r = Ring::new(
            f7,
            vec!["x0".into(), "x1".into(), "x2".into()],
            MonomialOrder::GrevLex,
        )
        .unwrap();
        let fermat = CurveSpec::Fermat(3).realize(&r).unwrap();
        let flexes = find_d_flexes_bruteforce(&fermat).unwrap();
        assert!(!flexes.is_empty());
        let (line, p) = fermat_flex_pair(f7).unwrap();
        assert!(flexes.iter().any(|(l, q)| *l == line && *q == p));
        for (l, q) in &flexes {
            assert!(is_d_flex(&fermat, l, q).unwrap());
        }
    }

    #[test]
    fn brute_force_search_conic_f5() {
        let f5 = PrimeField::new(5).unwrap();
        let r = Ring::new(
            f5,
            vec!["x0".into(), "x1".into(), "x2".into()],
            MonomialOrder::GrevLex,
        )
        .unwrap();
        let conic = CurveSpec::ConicStandard.realize(&r).unwrap();
        let flexes = find_d_flexes_bruteforce(&conic).unwrap();
        // One tangency pair per point of the conic: q + 1 of them.
        assert_eq!(flexes.len(), 6);
    }

    #[test]
    fn brute_force_rejects_singular_and_infinite() {
        let f5 = PrimeField::new(5).unwrap();
        let r = Ring::new(
            f5,
            vec!["x0".into(), "x1".into(), "x2".into()],
            MonomialOrder::GrevLex,
        )
        .unwrap();
        let nonreduced = parse(&r, "x0^3").unwrap();
        assert!(matches!(
            find_d_flexes_bruteforce(&nonreduced),
            Err(FlexError::SingularAt(_))
        ));
        let rq = xring(3);
        let fermat = CurveSpec::Fermat(3).realize(&rq).unwrap();
        assert!(matches!(find_d_flexes_bruteforce(&fermat), Err(FlexError::NotFinite)));
    }

    #[test]
    fn moduli_dimension_values() {
        assert_eq!(moduli_dim(3, 1).unwrap(), 1);
        assert_eq!(moduli_dim(4, 2).unwrap(), binomial(4, 2) - 8 + 6);
        assert_eq!(dim_v(4).unwrap(), 5);
        assert_eq!(dim_h(4).unwrap(), 6);
        assert_eq!(codim(4).unwrap(), 1);
        assert_eq!(codim(3).unwrap(), 0);
        assert!(moduli_dim(2, 1).is_err());
        assert!(moduli_dim(4, 3).is_err());
        for d in 3..=12u32 {
            assert_eq!(codim(d).unwrap(), d as i64 - 3);
        }
    }

    #[test]
    fn linear_change_invariants() {
        let q = Rationals;
        let m = vec![
            vec![q.from_i64(1), q.from_i64(2), q.from_i64(0)],
            vec![q.from_i64(0), q.from_i64(1), q.from_i64(0)],
            vec![q.from_i64(3), q.from_i64(0), q.from_i64(1)],
        ];
        let t = LinearChange::new(q, m).unwrap();
        let r = xring(3);
        let f = parse(&r, "x0^2 + x1*x2").unwrap();
        let round = t.inverse().unwrap().apply(&t.apply(&f).unwrap()).unwrap();
        assert_eq!(round, f);

        let singular = vec![
            vec![Rationals.from_i64(1), Rationals.from_i64(2)],
            vec![Rationals.from_i64(2), Rationals.from_i64(4)],
        ];
        assert!(LinearChange::new(Rationals, singular).is_err());
    }
}
