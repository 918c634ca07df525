//! Construction of the Segre ideals and the candidate generating sets: 2-minors,
//! rank-level sums of minors, hypersurface pullbacks, conic tangent generators,
//! and the diagonal generators in P^n x P^n.

use std::sync::Arc;

use thiserror::Error;

use crate::field::{check_characteristic_allowed, Field, FieldError};
use crate::groebner::{GbError, Ideal};
use crate::poly::{Homogeneity, MonomialOrder, PolyError, Polynomial, Ring};
use crate::textform::{self, ParseError};

#[derive(Debug, Error)]
pub enum SegreError {
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("rank-sum bound {bound} outside 1..={max}")]
    BoundOutOfRange { bound: usize, max: usize },
    #[error("rank sums require m = 1, got m = {0}")]
    RankSumsNeedLine(usize),
    #[error("generator must be homogeneous: `{0}`")]
    NonHomogeneous(String),
    #[error("expected a homogeneous form of degree {expected} in {arity} variables")]
    WrongForm { expected: u32, arity: usize },
    #[error("not in standard position: offending term `{0}`")]
    NotStandardPosition(String),
    #[error("missing the required leading power term `{0}`")]
    MissingPowerTerm(String),
    #[error("case needs a curve/hypersurface F, none given")]
    MissingCurve,
    #[error("builtin `{0}` unavailable here: {1}")]
    BuiltinUnavailable(String, String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Flex(#[from] crate::flex::FlexError),
}

/// Variable name for the Segre coordinate z_{ij}. Single-digit indices
/// concatenate; larger ones switch to the delimited `z_{i,j}` form.
pub fn z_name(i: usize, j: usize, n: usize, m: usize) -> String {
    if n <= 9 && m <= 9 {
        format!("z{i}{j}")
    } else {
        format!("z_{{{i},{j}}}")
    }
}

/// Ambient data for the Segre product of P^n and P^m: the coordinate ring
/// P = k[z_ij] plus the source rings R = k[x_0..x_n] and S = k[y_0..y_m].
#[derive(Debug, Clone)]
pub struct SegreContext<F: Field> {
    n: usize,
    m: usize,
    p_ring: Arc<Ring<F>>,
    r_ring: Arc<Ring<F>>,
    s_ring: Arc<Ring<F>>,
}

impl<F: Field> SegreContext<F> {
    pub fn new(field: F, n: usize, m: usize) -> Result<Self, SegreError> {
        if n < 1 || m < 1 {
            return Err(SegreError::BadParameters(format!("need n, m >= 1, got n={n} m={m}")));
        }
        let mut zvars = Vec::with_capacity((n + 1) * (m + 1));
        for i in 0..=n {
            for j in 0..=m {
                zvars.push(z_name(i, j, n, m));
            }
        }
        let p_ring = Ring::new(field.clone(), zvars, MonomialOrder::GrevLex)?;
        let r_ring = Ring::new(
            field.clone(),
            (0..=n).map(|i| format!("x{i}")).collect(),
            MonomialOrder::GrevLex,
        )?;
        let s_ring =
            Ring::new(field, (0..=m).map(|j| format!("y{j}")).collect(), MonomialOrder::GrevLex)?;
        Ok(SegreContext { n, m, p_ring, r_ring, s_ring })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn m(&self) -> usize {
        self.m
    }
    /// Dimension of the ambient projective space, N = nm + n + m.
    pub fn ambient_dim(&self) -> usize {
        self.n * self.m + self.n + self.m
    }
    pub fn p_ring(&self) -> &Arc<Ring<F>> {
        &self.p_ring
    }
    pub fn r_ring(&self) -> &Arc<Ring<F>> {
        &self.r_ring
    }
    pub fn s_ring(&self) -> &Arc<Ring<F>> {
        &self.s_ring
    }

    fn z_index(&self, i: usize, j: usize) -> usize {
        i * (self.m + 1) + j
    }

    pub fn z(&self, i: usize, j: usize) -> Result<Polynomial<F>, SegreError> {
        if i > self.n || j > self.m {
            return Err(SegreError::IndexOutOfRange(format!("z_{{{i},{j}}}")));
        }
        Ok(Polynomial::var(&self.p_ring, self.z_index(i, j))?)
    }

    /// The 2x2 determinant on rows i < j and the given column pair:
    /// z_{i,c0} z_{j,c1} - z_{j,c0} z_{i,c1}.
    pub fn minor(&self, i: usize, j: usize, cols: (usize, usize)) -> Result<Polynomial<F>, SegreError> {
        if i >= j || j > self.n {
            return Err(SegreError::IndexOutOfRange(format!("rows [{i},{j}]")));
        }
        let (c0, c1) = cols;
        if c0 >= c1 || c1 > self.m {
            return Err(SegreError::IndexOutOfRange(format!("cols ({c0},{c1})")));
        }
        let a = self.z(i, c0)?.mul(&self.z(j, c1)?)?;
        let b = self.z(j, c0)?.mul(&self.z(i, c1)?)?;
        Ok(a.sub(&b)?)
    }

    /// All 2-minors of the (n+1)x(m+1) matrix (z_ij).
    pub fn two_minors(&self) -> Result<Vec<Polynomial<F>>, SegreError> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..=self.n {
                for c0 in 0..self.m {
                    for c1 in (c0 + 1)..=self.m {
                        out.push(self.minor(i, j, (c0, c1))?);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn two_minors_ideal(&self) -> Result<Ideal<F>, SegreError> {
        Ok(Ideal::new(&self.p_ring, self.two_minors()?)?)
    }

    /// Rank-level sums g_k = sum of [i,j] over i < j with i + j = k, for
    /// k = 1..=bound. Requires m = 1 (columns fixed to 0, 1); the full set
    /// has bound 2n-1, the truncations use 2n-2 and 2n-3.
    pub fn rank_sums(&self, bound: usize) -> Result<Vec<Polynomial<F>>, SegreError> {
        if self.m != 1 {
            return Err(SegreError::RankSumsNeedLine(self.m));
        }
        let max = 2 * self.n - 1;
        if bound < 1 || bound > max {
            return Err(SegreError::BoundOutOfRange { bound, max });
        }
        let mut out = Vec::with_capacity(bound);
        for k in 1..=bound {
            let mut g = Polynomial::zero(&self.p_ring);
            for i in 0..=self.n {
                if k > i && k - i > i && k - i <= self.n {
                    g = g.add(&self.minor(i, k - i, (0, 1))?)?;
                }
            }
            out.push(g);
        }
        Ok(out)
    }

    /// F(z_{0,col}, ..., z_{n,col}) for F in the x-variables.
    pub fn pullback(&self, f: &Polynomial<F>, col: usize) -> Result<Polynomial<F>, SegreError> {
        if col > self.m {
            return Err(SegreError::IndexOutOfRange(format!("column {col}")));
        }
        if !f.ring().same(&self.r_ring) {
            return Err(SegreError::Poly(PolyError::RingMismatch));
        }
        let map: Vec<usize> = (0..=self.n).map(|i| self.z_index(i, col)).collect();
        Ok(f.rename(&self.p_ring, &map)?)
    }

    /// g(z_{row,0}, ..., z_{row,m}) for g in the y-variables.
    pub fn row_pullback(&self, g: &Polynomial<F>, row: usize) -> Result<Polynomial<F>, SegreError> {
        if row > self.n {
            return Err(SegreError::IndexOutOfRange(format!("row {row}")));
        }
        if !g.ring().same(&self.s_ring) {
            return Err(SegreError::Poly(PolyError::RingMismatch));
        }
        let map: Vec<usize> = (0..=self.m).map(|j| self.z_index(row, j)).collect();
        Ok(g.rename(&self.p_ring, &map)?)
    }

    /// The reduced radical-equivalent generating set: the 2-minors together
    /// with the column pullbacks of the x-generators and the row pullbacks of
    /// the y-generators. This serves as the target ideal in verification.
    pub fn reduced_segre_ideal(
        &self,
        a_gens: &[Polynomial<F>],
        b_gens: &[Polynomial<F>],
    ) -> Result<Ideal<F>, SegreError> {
        let mut gens = self.two_minors()?;
        for f in a_gens {
            if !f.homogeneity().is_homogeneous() {
                return Err(SegreError::NonHomogeneous(textform::print(f)));
            }
            for l in 0..=self.m {
                gens.push(self.pullback(f, l)?);
            }
        }
        for g in b_gens {
            if !g.homogeneity().is_homogeneous() {
                return Err(SegreError::NonHomogeneous(textform::print(g)));
            }
            for k in 0..=self.n {
                gens.push(self.row_pullback(g, k)?);
            }
        }
        Ok(Ideal::new(&self.p_ring, gens)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseKind {
    Remark9,
    Theorem10,
    Theorem45,
    Conic,
    Diagonal,
}

impl std::fmt::Display for CaseKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CaseKind::Remark9 => "remark9",
            CaseKind::Theorem10 => "theorem10",
            CaseKind::Theorem45 => "theorem45",
            CaseKind::Conic => "conic",
            CaseKind::Diagonal => "diagonal",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for CaseKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "remark9" => Ok(CaseKind::Remark9),
            "theorem10" => Ok(CaseKind::Theorem10),
            "theorem45" => Ok(CaseKind::Theorem45),
            "conic" => Ok(CaseKind::Conic),
            "diagonal" => Ok(CaseKind::Diagonal),
            other => Err(format!("unknown case kind `{other}`")),
        }
    }
}

/// A named construction with its target ideal (the Segre ideal up to radical)
/// and candidate generator set, plus the count and rank metadata the
/// construction promises.
#[derive(Debug, Clone)]
pub struct CandidateCase<F: Field> {
    pub kind: CaseKind,
    pub n: usize,
    pub m: usize,
    pub degree: Option<u32>,
    pub ring: Arc<Ring<F>>,
    pub target: Ideal<F>,
    pub candidate: Ideal<F>,
    /// The theorem's generator count: total for the Segre cases, relative to
    /// the included 2-minors for the diagonal case.
    pub expected_count: usize,
    pub expected_ara: Option<String>,
    pub notes: Vec<String>,
    /// Characteristics in which the construction's hypotheses fail.
    pub forbidden_characteristics: Vec<u64>,
    /// The hypersurface the case actually uses (post-standardization), in the
    /// x-ring; None for the diagonal case.
    pub curve_used: Option<Polynomial<F>>,
}

const CONVENTION_NOTE: &str = "tangent form F_ij implemented as sum_k dF/dx_k(z_0i,z_1i,z_2i) * z_kj \
     (the paper's displayed z_jk read with j as the x-index, the dimensionally consistent choice)";

/// Syntactic standard-position check: the only term in the variables
/// {x_{n-1}, x_n} alone must be x_{n-1}^d with coefficient 1.
fn check_standard_position<F: Field>(
    f: &Polynomial<F>,
    n: usize,
    d: u32,
) -> Result<(), SegreError> {
    let field = f.ring().field();
    let mut found_power = false;
    for (mono, coeff) in f.terms() {
        let pure_tail = mono.0[..n - 1].iter().all(|&e| e == 0);
        if !pure_tail {
            continue;
        }
        let is_power = mono.0[n - 1] == d as u16 && mono.0[n] == 0;
        if is_power && field.is_one(coeff) {
            found_power = true;
        } else {
            let term = Polynomial::from_terms(f.ring(), vec![(mono.clone(), coeff.clone())]);
            return Err(SegreError::NotStandardPosition(textform::print(&term)));
        }
    }
    if !found_power {
        return Err(SegreError::MissingPowerTerm(format!("x{}^{}", n - 1, d)));
    }
    Ok(())
}

/// Shape check for the stronger truncation: F = x_n^d + sum_{i<=n-3} x_i G_i,
/// i.e. every term is divisible by some x_i with i <= n-3 except the single
/// monic power x_n^d.
fn check_theorem45_shape<F: Field>(f: &Polynomial<F>, n: usize, d: u32) -> Result<(), SegreError> {
    let field = f.ring().field();
    let mut found_power = false;
    for (mono, coeff) in f.terms() {
        let divisible = n >= 3 && mono.0[..n - 2].iter().any(|&e| e > 0);
        if divisible {
            continue;
        }
        let is_power =
            mono.0[n] == d as u16 && mono.0[..n].iter().all(|&e| e == 0) && field.is_one(coeff);
        if is_power {
            found_power = true;
        } else {
            let term = Polynomial::from_terms(f.ring(), vec![(mono.clone(), coeff.clone())]);
            return Err(SegreError::NotStandardPosition(textform::print(&term)));
        }
    }
    if !found_power {
        return Err(SegreError::MissingPowerTerm(format!("x{n}^{d}")));
    }
    Ok(())
}

fn homogeneous_degree<F: Field>(f: &Polynomial<F>, arity: usize) -> Result<u32, SegreError> {
    match f.homogeneity() {
        Homogeneity::Homogeneous(d) if f.ring().arity() == arity && d >= 1 => Ok(d),
        _ => Err(SegreError::WrongForm { expected: f.total_degree().unwrap_or(0), arity }),
    }
}

/// Remark-9 set: all 2n-1 rank sums plus the two pullbacks F_0, F_1; these
/// 2n+1 polynomials generate the Segre ideal of V(F) x P^1 up to radical.
pub fn remark9_candidate<F: Field>(
    f: &Polynomial<F>,
    ctx: &SegreContext<F>,
) -> Result<CandidateCase<F>, SegreError> {
    hypersurface_line_case(f, ctx, CaseKind::Remark9, 2 * ctx.n() - 1, None)
}

/// Theorem-10 truncation: needs F in standard position (a d-flex moved to the
/// coordinate line); drops the top rank sum, leaving 2n generators.
pub fn theorem10_candidate<F: Field>(
    f: &Polynomial<F>,
    ctx: &SegreContext<F>,
) -> Result<CandidateCase<F>, SegreError> {
    let d = homogeneous_degree(f, ctx.n() + 1)?;
    check_standard_position(f, ctx.n(), d)?;
    let ara = if ctx.n() == 2 && d >= 3 {
        Some("ara_h = 4 (smooth plane curve with a d-flex)".to_string())
    } else {
        Some(format!("ara_h <= {}", 2 * ctx.n()))
    };
    hypersurface_line_case(f, ctx, CaseKind::Theorem10, 2 * ctx.n() - 2, ara)
}

/// Theorem-45 truncation: F = x_n^d + sum_{i<=n-3} x_i G_i allows dropping
/// two rank sums, leaving 2n-1 generators.
pub fn theorem45_candidate<F: Field>(
    f: &Polynomial<F>,
    ctx: &SegreContext<F>,
) -> Result<CandidateCase<F>, SegreError> {
    let d = homogeneous_degree(f, ctx.n() + 1)?;
    check_theorem45_shape(f, ctx.n(), d)?;
    let ara = Some(format!("ara_h = {} if V(F) smooth, <= {} always", 2 * ctx.n() - 1, 2 * ctx.n() - 1));
    hypersurface_line_case(f, ctx, CaseKind::Theorem45, 2 * ctx.n() - 3, ara)
}

fn hypersurface_line_case<F: Field>(
    f: &Polynomial<F>,
    ctx: &SegreContext<F>,
    kind: CaseKind,
    bound: usize,
    expected_ara: Option<String>,
) -> Result<CandidateCase<F>, SegreError> {
    if ctx.m() != 1 {
        return Err(SegreError::RankSumsNeedLine(ctx.m()));
    }
    let d = homogeneous_degree(f, ctx.n() + 1)?;
    let target = ctx.reduced_segre_ideal(std::slice::from_ref(f), &[])?;
    let mut cand = ctx.rank_sums(bound)?;
    cand.push(ctx.pullback(f, 0)?);
    cand.push(ctx.pullback(f, 1)?);
    let expected_count = bound + 2;
    let candidate = Ideal::new(ctx.p_ring(), cand)?;
    debug_assert_eq!(candidate.generators().len(), expected_count);
    let mut notes = Vec::new();
    if kind == CaseKind::Remark9 {
        notes.push(format!(
            "Eisenbud-Evans general bound: ara_h <= N = {}",
            ctx.ambient_dim()
        ));
    }
    Ok(CandidateCase {
        kind,
        n: ctx.n(),
        m: 1,
        degree: Some(d),
        ring: ctx.p_ring().clone(),
        target,
        candidate,
        expected_count,
        expected_ara,
        notes,
        forbidden_characteristics: vec![],
        curve_used: Some(f.clone()),
    })
}

/// Conic generators: the m+1 pullbacks F_i plus the 2m-1 tangent-form sums
/// G_h; 3m polynomials total. Requires char != 2.
pub fn conic_candidate<F: Field>(
    f: &Polynomial<F>,
    field: F,
    m: usize,
) -> Result<CandidateCase<F>, SegreError> {
    check_characteristic_allowed(field.characteristic(), &[2], "conic construction needs char != 2")?;
    let ctx = SegreContext::new(field, 2, m)?;
    let d = homogeneous_degree(f, 3)?;
    if d != 2 {
        return Err(SegreError::WrongForm { expected: 2, arity: 3 });
    }
    let partials: Vec<Polynomial<F>> =
        (0..3).map(|k| f.partial_derivative(k)).collect::<Result<_, _>>()?;

    let mut cand: Vec<Polynomial<F>> = Vec::with_capacity(3 * m);
    for i in 0..=m {
        cand.push(ctx.pullback(f, i)?);
    }
    // F_ij = sum_k dF/dx_k at the column-i point, times z_{k,j}; G_h sums the
    // antidiagonal i + j = h with j < i.
    let tangent_form = |i: usize, j: usize| -> Result<Polynomial<F>, SegreError> {
        let mut acc = Polynomial::zero(ctx.p_ring());
        for (k, dfk) in partials.iter().enumerate() {
            let at_i = ctx.pullback(dfk, i)?;
            acc = acc.add(&at_i.mul(&ctx.z(k, j)?)?)?;
        }
        Ok(acc)
    };
    for h in 1..=(2 * m - 1) {
        let mut g = Polynomial::zero(ctx.p_ring());
        for j in 0..m {
            if h > j && h - j > j && h - j <= m {
                g = g.add(&tangent_form(h - j, j)?)?;
            }
        }
        cand.push(g);
    }
    let target = ctx.reduced_segre_ideal(std::slice::from_ref(f), &[])?;
    let candidate = Ideal::new(ctx.p_ring(), cand)?;
    debug_assert_eq!(candidate.generators().len(), 3 * m);
    Ok(CandidateCase {
        kind: CaseKind::Conic,
        n: 2,
        m,
        degree: Some(2),
        ring: ctx.p_ring().clone(),
        target,
        candidate,
        expected_count: 3 * m,
        expected_ara: Some(format!("ara_h = {} (char != 2)", 3 * m)),
        notes: vec![CONVENTION_NOTE.to_string()],
        forbidden_characteristics: vec![2],
        curve_used: Some(f.clone()),
    })
}

/// Diagonal of P^n x P^n: the claim lives in P/I_2(Z), transported here by
/// including the 2-minors on both sides. Target adds z_ij - z_ji; candidate
/// adds the 2n-1 antidiagonal sums G_k.
pub fn diagonal_candidate<F: Field>(field: F, n: usize) -> Result<CandidateCase<F>, SegreError> {
    let ctx = SegreContext::new(field, n, n)?;
    let minors = ctx.two_minors()?;
    let mut target = minors.clone();
    let mut candidate = minors.clone();
    for i in 0..n {
        for j in (i + 1)..=n {
            target.push(ctx.z(i, j)?.sub(&ctx.z(j, i)?)?);
        }
    }
    for k in 1..=(2 * n - 1) {
        let mut g = Polynomial::zero(ctx.p_ring());
        for i in 0..=n {
            if k > i && k - i > i && k - i <= n {
                let j = k - i;
                g = g.add(&ctx.z(i, j)?.sub(&ctx.z(j, i)?)?)?;
            }
        }
        candidate.push(g);
    }
    let rel = 2 * n - 1;
    let candidate = Ideal::new(ctx.p_ring(), candidate)?;
    debug_assert_eq!(candidate.generators().len(), minors.len() + rel);
    Ok(CandidateCase {
        kind: CaseKind::Diagonal,
        n,
        m: n,
        degree: None,
        ring: ctx.p_ring().clone(),
        target: Ideal::new(ctx.p_ring(), target)?,
        candidate,
        expected_count: rel,
        expected_ara: Some(format!("ara_h = {rel}")),
        notes: vec![
            "counts are relative to the 2-minors included on both sides".to_string(),
        ],
        forbidden_characteristics: vec![],
        curve_used: None,
    })
}

/// How the hypersurface F of a case is specified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveSpec {
    None,
    /// x_0^d + ... + x_n^d; carries a builtin flex pair when d is odd.
    Fermat(u32),
    /// The smooth conic x0*x2 - x1^2.
    ConicStandard,
    Text(String),
}

impl CurveSpec {
    pub fn parse_spec(s: &str) -> Result<Self, String> {
        if let Some(d) = s.strip_prefix("fermat:") {
            let d: u32 = d.parse().map_err(|_| format!("bad fermat degree `{d}`"))?;
            if d < 2 {
                return Err("fermat degree must be >= 2".to_string());
            }
            return Ok(CurveSpec::Fermat(d));
        }
        if s == "conic:standard" {
            return Ok(CurveSpec::ConicStandard);
        }
        Ok(CurveSpec::Text(s.to_string()))
    }

    pub fn describe(&self) -> String {
        match self {
            CurveSpec::None => "-".to_string(),
            CurveSpec::Fermat(d) => format!("fermat:{d}"),
            CurveSpec::ConicStandard => "conic:standard".to_string(),
            CurveSpec::Text(t) => t.clone(),
        }
    }

    /// Realizes the curve as a polynomial in the x-ring of `ctx`.
    pub fn realize<F: Field>(
        &self,
        ring: &Arc<Ring<F>>,
    ) -> Result<Polynomial<F>, SegreError> {
        match self {
            CurveSpec::None => Err(SegreError::MissingCurve),
            CurveSpec::Fermat(d) => {
                let p = ring.field().characteristic();
                if p != 0 && (*d as u64) % p == 0 {
                    return Err(SegreError::BuiltinUnavailable(
                        format!("fermat:{d}"),
                        format!("char {p} divides the degree, the Fermat curve is non-reduced"),
                    ));
                }
                let mut f = Polynomial::zero(ring);
                for i in 0..ring.arity() {
                    f = f.add(&Polynomial::var(ring, i)?.pow(*d))?;
                }
                Ok(f)
            }
            CurveSpec::ConicStandard => {
                if ring.arity() != 3 {
                    return Err(SegreError::WrongForm { expected: 2, arity: 3 });
                }
                let x0 = Polynomial::var(ring, 0)?;
                let x1 = Polynomial::var(ring, 1)?;
                let x2 = Polynomial::var(ring, 2)?;
                Ok(x0.mul(&x2)?.sub(&x1.mul(&x1)?)?)
            }
            CurveSpec::Text(t) => Ok(textform::parse(ring, t)?),
        }
    }
}

/// A field-independent description of a construction, buildable over any
/// coefficient field; this is what the CLI and the finite-field oracles share.
#[derive(Debug, Clone)]
pub struct CaseRecipe {
    pub kind: CaseKind,
    pub n: usize,
    pub m: usize,
    pub curve: CurveSpec,
}

impl CaseRecipe {
    pub fn build<F: Field>(&self, field: F) -> Result<CandidateCase<F>, SegreError> {
        match self.kind {
            CaseKind::Diagonal => diagonal_candidate(field, self.n),
            CaseKind::Conic => {
                let curve = match &self.curve {
                    CurveSpec::None => &CurveSpec::ConicStandard,
                    c => c,
                };
                let r_ring = Ring::new(
                    field.clone(),
                    (0..=2).map(|i| format!("x{i}")).collect(),
                    MonomialOrder::GrevLex,
                )?;
                let f = curve.realize(&r_ring)?;
                conic_candidate(&f, field, self.m)
            }
            CaseKind::Remark9 | CaseKind::Theorem10 | CaseKind::Theorem45 => {
                if self.m != 1 {
                    return Err(SegreError::BadParameters(format!(
                        "{} requires m = 1",
                        self.kind
                    )));
                }
                let ctx = SegreContext::new(field, self.n, 1)?;
                let f = self.curve.realize(ctx.r_ring())?;
                match self.kind {
                    CaseKind::Remark9 => remark9_candidate(&f, &ctx),
                    CaseKind::Theorem45 => theorem45_candidate(&f, &ctx),
                    CaseKind::Theorem10 => {
                        // Standard position may need the builtin flex first.
                        match theorem10_candidate(&f, &ctx) {
                            Ok(case) => Ok(case),
                            Err(err @ (SegreError::NotStandardPosition(_)
                            | SegreError::MissingPowerTerm(_))) => {
                                if let CurveSpec::Fermat(d) = self.curve {
                                    let (fp, _t) = crate::flex::standardize_fermat(&f, d)?;
                                    let mut case = theorem10_candidate(&fp, &ctx)?;
                                    case.notes.push(
                                        "input standardized via the builtin Fermat d-flex \
                                         (line x0 + x1, point [1,-1,0])"
                                            .to_string(),
                                    );
                                    Ok(case)
                                } else {
                                    Err(err)
                                }
                            }
                            Err(e) => Err(e),
                        }
                    }
                    _ => unreachable!(),
                }
            }
        }
    }
}
