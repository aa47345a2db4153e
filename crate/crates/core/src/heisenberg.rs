//! The Heisenberg algebra `h(n)` with symplectic basis `x_1..x_n, y_1..y_n, z`
//! (only nonzero brackets `[x_i, y_i] = z`) and its representation constructors.

use crate::canonical::companion;
use crate::error::{Error, Result};
use crate::field::{make_extension, Field, FieldElem};
use crate::matrix::Matrix;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergAlgebra {
    n: usize,
    field: Field,
}

impl HeisenbergAlgebra {
    pub fn new(n: usize, field: &Field) -> Result<HeisenbergAlgebra> {
        if n == 0 {
            return Err(Error::InvalidRepresentation("rank n must be positive".into()));
        }
        Ok(HeisenbergAlgebra {
            n,
            field: field.clone(),
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    /// Name of basis element `i` in the order `x_1..x_n, y_1..y_n, z`.
    pub fn basis_name(&self, i: usize) -> String {
        if i < self.n {
            format!("x{}", i + 1)
        } else if i < 2 * self.n {
            format!("y{}", i - self.n + 1)
        } else {
            "z".to_string()
        }
    }

    /// Structure constants: `[b_i, b_j]` as a coefficient vector.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<u64> {
        let mut out = vec![0u64; self.dim()];
        let n = self.n;
        if i < n && j == i + n {
            out[2 * n] = 1;
        } else if j < n && i == j + n {
            out[2 * n] = self.field.neg(1);
        }
        out
    }
}

/// A representation `R : h(n) -> gl(V)` given by the images of the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    algebra: HeisenbergAlgebra,
    dim: usize,
    x: Vec<Matrix>,
    y: Vec<Matrix>,
    z: Matrix,
}

impl Representation {
    pub fn new(x: Vec<Matrix>, y: Vec<Matrix>, z: Matrix) -> Result<Representation> {
        if x.len() != y.len() || x.is_empty() {
            return Err(Error::ShapeMismatch(format!(
                "need n >= 1 images of x and y, got {} and {}",
                x.len(),
                y.len()
            )));
        }
        let field = z.field().clone();
        let dim = z.rows();
        for m in x.iter().chain(&y).chain(std::iter::once(&z)) {
            if m.field() != &field {
                return Err(Error::MixedFields);
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::ShapeMismatch(format!(
                    "all images must be {dim}x{dim}, found {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        if dim == 0 {
            return Err(Error::ShapeMismatch("dimension must be positive".into()));
        }
        Ok(Representation {
            algebra: HeisenbergAlgebra::new(x.len(), &field)?,
            dim,
            x,
            y,
            z,
        })
    }

    pub fn algebra(&self) -> &HeisenbergAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        &self.algebra.field
    }

    pub fn rank(&self) -> usize {
        self.algebra.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn x(&self) -> &[Matrix] {
        &self.x
    }

    pub fn y(&self) -> &[Matrix] {
        &self.y
    }

    pub fn z(&self) -> &Matrix {
        &self.z
    }

    /// Images in basis order `x_1..x_n, y_1..y_n, z`.
    pub fn generators(&self) -> Vec<&Matrix> {
        self.x.iter().chain(&self.y).chain(std::iter::once(&self.z)).collect()
    }

    /// Image of `sum_i c_i b_i` for a coefficient vector in basis order.
    pub fn image(&self, coeffs: &[u64]) -> Result<Matrix> {
        if coeffs.len() != self.algebra.dim() {
            return Err(Error::ShapeMismatch(format!(
                "{} coefficients for an algebra of dimension {}",
                coeffs.len(),
                self.algebra.dim()
            )));
        }
        let mut acc = Matrix::zeros(self.field(), self.dim, self.dim);
        for (&c, g) in coeffs.iter().zip(self.generators()) {
            if c != 0 {
                acc = acc.add(&g.scale_raw(c))?;
            }
        }
        Ok(acc)
    }

    pub fn is_faithful(&self) -> bool {
        !self.z.is_zero()
    }

    /// Applies `f` to every image.
    pub fn map_matrices<F>(&self, f: F) -> Result<Representation>
    where
        F: Fn(&Matrix) -> Result<Matrix>,
    {
        let x = self.x.iter().map(&f).collect::<Result<Vec<_>>>()?;
        let y = self.y.iter().map(&f).collect::<Result<Vec<_>>>()?;
        Representation::new(x, y, f(&self.z)?)
    }

    /// `T^{-1} R(g) T` for every generator.
    pub fn conjugate(&self, t: &Matrix) -> Result<Representation> {
        let tinv = t.inverse()?;
        self.map_matrices(|m| tinv.mul(m)?.mul(t))
    }

    /// Direct sum of two representations of the same algebra.
    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if self.algebra != other.algebra {
            return Err(Error::MixedFields);
        }
        let pair = |a: &Matrix, b: &Matrix| Matrix::direct_sum(&[a.clone(), b.clone()]);
        let x = self
            .x
            .iter()
            .zip(&other.x)
            .map(|(a, b)| pair(a, b))
            .collect::<Result<_>>()?;
        let y = self
            .y
            .iter()
            .zip(&other.y)
            .map(|(a, b)| pair(a, b))
            .collect::<Result<_>>()?;
        Representation::new(x, y, pair(&self.z, &other.z)?)
    }
}

/// Classification tuple `(alpha, beta_1..beta_n, gamma_1..gamma_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleParams {
    pub alpha: FieldElem,
    pub betas: Vec<FieldElem>,
    pub gammas: Vec<FieldElem>,
}

impl ModuleParams {
    pub fn new(alpha: FieldElem, betas: Vec<FieldElem>, gammas: Vec<FieldElem>) -> Result<ModuleParams> {
        if alpha.is_zero() {
            return Err(Error::ZeroAlpha);
        }
        if betas.len() != gammas.len() || betas.is_empty() {
            return Err(Error::ShapeMismatch(format!(
                "{} betas and {} gammas",
                betas.len(),
                gammas.len()
            )));
        }
        if betas.iter().chain(&gammas).any(|e| e.field() != alpha.field()) {
            return Err(Error::MixedFields);
        }
        Ok(ModuleParams { alpha, betas, gammas })
    }

    /// From integers reduced into the prime subfield of `field`.
    pub fn from_ints(field: &Field, alpha: i64, betas: &[i64], gammas: &[i64]) -> Result<ModuleParams> {
        ModuleParams::new(
            field.from_int(alpha),
            betas.iter().map(|&b| field.from_int(b)).collect(),
            gammas.iter().map(|&g| field.from_int(g)).collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.betas.len()
    }

    pub fn field(&self) -> &Field {
        self.alpha.field()
    }
}

/// Isomorphism invariants `(alpha, delta_k, epsilon_k)` of a faithful module
/// of dimension `p^n`: the minimal polynomials of `x_k` and `y_k` are
/// `X^p - delta_k` and `X^p - epsilon_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantTuple {
    pub alpha: FieldElem,
    pub deltas: Vec<FieldElem>,
    pub epsilons: Vec<FieldElem>,
}

impl InvariantTuple {
    pub fn from_params(params: &ModuleParams) -> InvariantTuple {
        InvariantTuple {
            alpha: params.alpha.clone(),
            deltas: params.betas.iter().map(|b| b.frobenius()).collect(),
            epsilons: params.gammas.iter().map(|g| g.frobenius()).collect(),
        }
    }
}

/// Outcome of checking the bracket table on a representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// Human-readable descriptions of every violated relation.
    pub violations: Vec<String>,
    pub faithful: bool,
    /// `Some(c)` when `R(z) = c I`.
    pub z_scalar: Option<FieldElem>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_rep(rep: &Representation) -> ValidationReport {
    let n = rep.rank();
    let mut violations = Vec::new();
    let zero = Matrix::zeros(rep.field(), rep.dim, rep.dim);
    for i in 0..n {
        for j in 0..n {
            let c = rep.x[i].commutator(&rep.y[j]).expect("shapes checked at construction");
            let expect = if i == j { &rep.z } else { &zero };
            if &c != expect {
                violations.push(if i == j {
                    format!("[x{}, y{}] != z", i + 1, j + 1)
                } else {
                    format!("[x{}, y{}] != 0", i + 1, j + 1)
                });
            }
        }
        for j in i + 1..n {
            if !rep.x[i].commutator(&rep.x[j]).expect("square").is_zero() {
                violations.push(format!("[x{}, x{}] != 0", i + 1, j + 1));
            }
            if !rep.y[i].commutator(&rep.y[j]).expect("square").is_zero() {
                violations.push(format!("[y{}, y{}] != 0", i + 1, j + 1));
            }
        }
    }
    for (i, g) in rep.generators().into_iter().enumerate().take(2 * n) {
        if !g.commutator(&rep.z).expect("square").is_zero() {
            violations.push(format!("[{}, z] != 0", rep.algebra.basis_name(i)));
        }
    }
    ValidationReport {
        violations,
        faithful: rep.is_faithful(),
        z_scalar: rep.z.scalar_value().map(|c| FieldElem::raw(rep.field(), c)),
    }
}

/// Validation that fails with [`Error::RelationViolated`] on the first problem.
pub fn require_valid(rep: &Representation) -> Result<()> {
    let report = validate_rep(rep);
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::RelationViolated(report.violations.join("; ")))
    }
}

fn checked_pow(p: usize, n: usize) -> Result<usize> {
    (0..n)
        .try_fold(1usize, |acc, _| acc.checked_mul(p))
        .filter(|&d| d <= 1 << 20)
        .ok_or_else(|| Error::TooLarge(format!("p^n with p={p}, n={n}")))
}

/// The truncated-polynomial module `V_{alpha, beta, gamma}` of dimension `p^n`.
///
/// The basis is the monomials `X_1^{i_1} ... X_n^{i_n}` with `0 <= i_k < p`,
/// ordered by the mixed-radix index `sum_k i_k p^{n-k}` (exponent of `X_1`
/// most significant). `z` acts as `alpha`, `x_k` as `beta_k + alpha d/dX_k`,
/// `y_k` as `gamma_k +` multiplication by `X_k` (with `X_k^p = 0`).
pub fn build_v(alg: &HeisenbergAlgebra, params: &ModuleParams) -> Result<Representation> {
    if params.alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    if params.field() != alg.field() {
        return Err(Error::MixedFields);
    }
    let n = alg.rank();
    if params.rank() != n {
        return Err(Error::ShapeMismatch(format!(
            "params of rank {} for h({n})",
            params.rank()
        )));
    }
    let field = alg.field();
    let p = field.characteristic() as usize;
    let dim = checked_pow(p, n)?;
    let alpha = params.alpha.value();
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for k in 0..n {
        let stride = checked_pow(p, n - 1 - k)?;
        let mut xm = Matrix::scalar(&params.betas[k], dim);
        let mut ym = Matrix::scalar(&params.gammas[k], dim);
        for b in 0..dim {
            let e = (b / stride) % p;
            if e > 0 {
                xm.set(b - stride, b, field.mul(alpha, field.int(e as i64)));
            }
            if e + 1 < p {
                ym.set(b + stride, b, 1);
            }
        }
        xs.push(xm);
        ys.push(ym);
    }
    Representation::new(xs, ys, Matrix::scalar(&params.alpha, dim))
}

/// The standard faithful module of dimension `n + 2`:
/// `x_i -> e_{1,1+i}`, `y_i -> e_{1+i,n+2}`, `z -> e_{1,n+2}` (one-based).
pub fn build_standard(alg: &HeisenbergAlgebra) -> Representation {
    let n = alg.rank();
    let d = n + 2;
    let f = alg.field();
    let xs = (1..=n).map(|i| Matrix::unit(f, d, 0, i)).collect();
    let ys = (1..=n).map(|i| Matrix::unit(f, d, i, d - 1)).collect();
    Representation::new(xs, ys, Matrix::unit(f, d, 0, d - 1)).expect("consistent shapes")
}

/// `M_{alpha,beta}`: `p x p`, diagonal `beta`, superdiagonal `alpha, 2alpha, ..., (p-1)alpha`.
pub fn build_m(alpha: &FieldElem, beta: &FieldElem) -> Result<Matrix> {
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    if alpha.field() != beta.field() {
        return Err(Error::MixedFields);
    }
    let f = alpha.field();
    let p = f.characteristic() as usize;
    let mut m = Matrix::scalar(beta, p);
    for i in 0..p - 1 {
        m.set(i, i + 1, f.mul(alpha.value(), f.int(i as i64 + 1)));
    }
    Ok(m)
}

/// Lower shift `N` of size `p` (ones on the subdiagonal).
pub fn lower_shift(field: &Field, p: usize) -> Matrix {
    let mut m = Matrix::zeros(field, p, p);
    for i in 1..p {
        m.set(i, i - 1, 1);
    }
    m
}

/// The `p x p` matrix with superdiagonal `alpha, ..., (p-1)alpha`, zero
/// diagonal, and `delta_{i-j}` in position `(i, j)` below the diagonal.
pub fn build_d(alpha: &FieldElem, deltas: &[FieldElem]) -> Result<Matrix> {
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    let f = alpha.field();
    let p = f.characteristic() as usize;
    if deltas.len() != p - 1 {
        return Err(Error::WrongDeltaCount {
            expected: p - 1,
            got: deltas.len(),
        });
    }
    if deltas.iter().any(|d| d.field() != f) {
        return Err(Error::MixedFields);
    }
    let mut m = build_m(alpha, &f.zero())?;
    for i in 0..p {
        for j in 0..i {
            m.set(i, j, deltas[i - j - 1].value());
        }
    }
    Ok(m)
}

/// `x_1 -> M_{alpha,beta}^{(+m)}`, `y_1 -> companion(f(X^p))`, `z -> alpha I`
/// for monic `f` of degree `m`.
pub fn build_companion_rep(alpha: &FieldElem, beta: &FieldElem, f: &Poly) -> Result<Representation> {
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    if f.field() != alpha.field() {
        return Err(Error::MixedFields);
    }
    if !f.is_monic() || f.degree() == Some(0) {
        return Err(Error::NonMonic);
    }
    let m = f.degree().expect("monic");
    let p = alpha.field().characteristic() as usize;
    let block = build_m(alpha, beta)?;
    let x = Matrix::direct_sum(&vec![block; m])?;
    let y = companion(&f.compose_power(p))?;
    Representation::new(vec![x], vec![y], Matrix::scalar(alpha, p * m))
}

/// Rewrites elements of `K = F(alpha)` as `m x m` matrices over the prime
/// field `F` in the basis `1, alpha, ..., alpha^{m-1}` (column convention:
/// column `j` holds the coordinates of `e * alpha^j`).
#[derive(Clone, Debug)]
pub struct ScalarRestriction {
    alpha: FieldElem,
    // inverse of the matrix whose columns are the standard coordinates of alpha^j
    to_alpha_basis: Matrix,
}

impl ScalarRestriction {
    pub fn new(alpha: &FieldElem) -> Result<ScalarRestriction> {
        let k = alpha.field();
        let m = k.degree();
        let got = alpha.degree_over_prime();
        if got != m {
            return Err(Error::DegreeMismatch { expected: m, got });
        }
        let base = k.prime_subfield();
        let cols: Vec<Vec<u64>> = (0..m).map(|j| alpha.pow(j as u64).coeffs()).collect();
        let basis = Matrix::from_columns(&base, m, &cols);
        Ok(ScalarRestriction {
            alpha: alpha.clone(),
            to_alpha_basis: basis.inverse()?,
        })
    }

    pub fn degree(&self) -> usize {
        self.alpha.field().degree()
    }

    pub fn base_field(&self) -> &Field {
        self.to_alpha_basis.field()
    }

    /// Regular-representation matrix of multiplication by `e`.
    pub fn regular_matrix(&self, e: &FieldElem) -> Result<Matrix> {
        let k = self.alpha.field();
        if e.field() != k {
            return Err(Error::MixedFields);
        }
        let m = self.degree();
        let cols: Vec<Vec<u64>> = (0..m)
            .map(|j| {
                let prod = e.mul(&self.alpha.pow(j as u64)).expect("same field");
                self.to_alpha_basis.mul_vec(&prod.coeffs())
            })
            .collect();
        Ok(Matrix::from_columns(self.base_field(), m, &cols))
    }

    /// Replace every entry of a `K`-matrix by its regular matrix.
    pub fn restrict_matrix(&self, a: &Matrix) -> Result<Matrix> {
        let grid = (0..a.rows())
            .map(|i| {
                (0..a.cols())
                    .map(|j| self.regular_matrix(&a.elem(i, j)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::assemble_grid(&grid)
    }

    /// A `K`-representation viewed over `F`; dimension multiplies by `m`.
    pub fn restrict(&self, rep: &Representation) -> Result<Representation> {
        rep.map_matrices(|a| self.restrict_matrix(a))
    }

    /// The action of `alpha` on the restricted space of a `dim`-dimensional `K`-module.
    pub fn alpha_action(&self, dim: usize) -> Result<Matrix> {
        let r = self.regular_matrix(&self.alpha)?;
        Matrix::direct_sum(&vec![r; dim])
    }
}

/// Result of [`build_restriction_rep`]: the restricted module over `F`, the
/// `K`-module it came from, and the action of the chosen `alpha`.
#[derive(Clone, Debug)]
pub struct RestrictionRep {
    pub rep: Representation,
    pub over_k: Representation,
    pub params: ModuleParams,
    pub alpha_action: Matrix,
}

/// Builds `V_{alpha, f_1(alpha), .., f_n(alpha), g_1(alpha), .., g_n(alpha)}`
/// over `K = F[X]/(q)` and restricts scalars to `F = GF(p)`. `alpha`
/// defaults to the class of `X`; any element of degree `m = deg q` may be
/// supplied instead.
pub fn build_restriction_rep(
    q: &Poly,
    fs: &[Poly],
    gs: &[Poly],
    alpha_choice: Option<&FieldElem>,
) -> Result<RestrictionRep> {
    if fs.len() != gs.len() || fs.is_empty() {
        return Err(Error::ShapeMismatch(format!(
            "{} f-polynomials and {} g-polynomials",
            fs.len(),
            gs.len()
        )));
    }
    let base = q.field();
    if fs.iter().chain(gs).any(|f| f.field() != base) {
        return Err(Error::MixedFields);
    }
    let k = make_extension(q)?;
    let alpha = match alpha_choice {
        Some(a) => {
            if a.field() != &k {
                return Err(Error::MixedFields);
            }
            a.clone()
        }
        None => k.generator().unwrap_or_else(|| {
            k.from_int(0)
                .sub(&k.elem(q.coeff(0)).expect("in field"))
                .expect("same field")
        }),
    };
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    let restriction = ScalarRestriction::new(&alpha)?;
    let params = ModuleParams::new(
        alpha.clone(),
        fs.iter().map(|f| f.eval_in(&alpha)).collect(),
        gs.iter().map(|g| g.eval_in(&alpha)).collect(),
    )?;
    let over_k = build_v(&HeisenbergAlgebra::new(fs.len(), &k)?, &params)?;
    let rep = restriction.restrict(&over_k)?;
    let alpha_action = restriction.alpha_action(over_k.dim())?;
    Ok(RestrictionRep {
        rep,
        over_k,
        params,
        alpha_action,
    })
}

/// The block matrices `A, B, D` of the `n = 1` matrix construction:
/// `A` has `f(C)` on the block diagonal and `i C` in block `(i-1, i)`, `B` has
/// `g(C)` on the diagonal and `I` on the block subdiagonal, `D = diag(C)`,
/// where `C` is the companion matrix of `q`.
pub fn restriction_blocks(p: usize, q: &Poly, f: &Poly, g: &Poly) -> Result<(Matrix, Matrix, Matrix)> {
    let field = q.field();
    let c = companion(q)?;
    let m = c.rows();
    let fc = c.eval_poly(f)?;
    let gc = c.eval_poly(g)?;
    let zero = Matrix::zeros(field, m, m);
    let id = Matrix::identity(field, m);
    let mut a = vec![vec![zero.clone(); p]; p];
    let mut b = vec![vec![zero.clone(); p]; p];
    let mut d = vec![vec![zero.clone(); p]; p];
    for i in 0..p {
        a[i][i] = fc.clone();
        b[i][i] = gc.clone();
        d[i][i] = c.clone();
        if i + 1 < p {
            a[i][i + 1] = c.scale_raw(field.int(i as i64 + 1));
            b[i + 1][i] = id.clone();
        }
    }
    Ok((
        Matrix::assemble_grid(&a)?,
        Matrix::assemble_grid(&b)?,
        Matrix::assemble_grid(&d)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::min_poly;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn v_for_p3_n1_matches_m_and_shift() {
        let f = gf(3);
        let alg = HeisenbergAlgebra::new(1, &f).unwrap();
        let r = build_v(&alg, &ModuleParams::from_ints(&f, 1, &[0], &[0]).unwrap()).unwrap();
        assert_eq!(
            r.x()[0],
            Matrix::from_rows(&f, &[vec![0, 1, 0], vec![0, 0, 2], vec![0, 0, 0]])
        );
        assert_eq!(r.y()[0], lower_shift(&f, 3));
        assert!(r.z().is_identity());
        let report = validate_rep(&r);
        assert!(report.is_valid() && report.faithful);
        assert_eq!(report.z_scalar, Some(f.one()));
    }

    #[test]
    fn v_for_p2() {
        let f = gf(2);
        let alg = HeisenbergAlgebra::new(1, &f).unwrap();
        let r = build_v(&alg, &ModuleParams::from_ints(&f, 1, &[0], &[0]).unwrap()).unwrap();
        assert_eq!(r.x()[0], Matrix::from_rows(&f, &[vec![0, 1], vec![0, 0]]));
        assert_eq!(r.y()[0], Matrix::from_rows(&f, &[vec![0, 0], vec![1, 0]]));
    }

    #[test]
    fn v_for_p2_n2_is_kronecker() {
        // monomials 1, X2, X1, X1X2: d/dX1 sends X1 -> 1 and X1X2 -> X2
        let f = gf(2);
        let alg = HeisenbergAlgebra::new(2, &f).unwrap();
        let r = build_v(&alg, &ModuleParams::from_ints(&f, 1, &[0, 0], &[0, 0]).unwrap()).unwrap();
        let shift_down = Matrix::from_rows(&f, &[vec![0, 1], vec![0, 0]]);
        let i2 = Matrix::identity(&f, 2);
        assert_eq!(r.x()[0], shift_down.kronecker(&i2).unwrap());
        assert_eq!(r.x()[1], i2.kronecker(&shift_down).unwrap());
        assert!(validate_rep(&r).is_valid());
    }

    #[test]
    fn zero_alpha_rejected() {
        let f = gf(3);
        assert_eq!(
            ModuleParams::from_ints(&f, 0, &[1], &[1]).unwrap_err(),
            Error::ZeroAlpha
        );
        assert_eq!(build_m(&f.zero(), &f.one()).unwrap_err(), Error::ZeroAlpha);
    }

    #[test]
    fn validation_examples() {
        let f = gf(2);
        let zero = Matrix::zeros(&f, 2, 2);
        let r = Representation::new(vec![zero.clone()], vec![zero.clone()], zero).unwrap();
        let report = validate_rep(&r);
        assert!(report.is_valid() && !report.faithful);
        let r = Representation::new(
            vec![Matrix::unit(&f, 2, 0, 1)],
            vec![Matrix::unit(&f, 2, 1, 0)],
            Matrix::identity(&f, 2),
        )
        .unwrap();
        let report = validate_rep(&r);
        assert!(report.is_valid() && report.faithful);
        let bad = Representation::new(
            vec![Matrix::unit(&f, 2, 0, 1)],
            vec![Matrix::unit(&f, 2, 0, 1)],
            Matrix::identity(&f, 2),
        )
        .unwrap();
        assert_eq!(validate_rep(&bad).violations, vec!["[x1, y1] != z".to_string()]);
    }

    #[test]
    fn standard_module() {
        for (n, p) in [(1, 3), (2, 2), (5, 7)] {
            let f = gf(p);
            let r = build_standard(&HeisenbergAlgebra::new(n, &f).unwrap());
            assert_eq!(r.dim(), n + 2);
            let report = validate_rep(&r);
            assert!(report.is_valid() && report.faithful);
            assert!(r.z().mul(r.z()).unwrap().is_zero());
        }
    }

    #[test]
    fn m_and_d_examples() {
        let f = gf(2);
        assert_eq!(
            build_m(&f.one(), &f.one()).unwrap(),
            Matrix::from_rows(&f, &[vec![1, 1], vec![0, 1]])
        );
        let g = gf(5);
        let m = build_m(&g.one(), &g.from_int(2)).unwrap();
        assert_eq!(min_poly(&m).unwrap(), Poly::from_ints(&g, &[-2, 1]).pow(5));
        let h = gf(3);
        let d = build_d(&h.one(), &[h.one(), h.zero()]).unwrap();
        assert_eq!(d, Matrix::from_rows(&h, &[vec![0, 1, 0], vec![1, 0, 2], vec![0, 1, 0]]));
        assert!(d.pow(3).unwrap().is_zero());
        let d0 = build_d(&h.one(), &[h.zero(), h.zero()]).unwrap();
        assert_eq!(d0, build_m(&h.one(), &h.zero()).unwrap());
        assert_eq!(
            build_d(&h.one(), &[h.one()]).unwrap_err(),
            Error::WrongDeltaCount { expected: 2, got: 1 }
        );
        let a = f.one();
        let d2 = build_d(&a, &[f.one()]).unwrap();
        assert_eq!(d2, companion(&Poly::from_ints(&f, &[-1, 0, 1])).unwrap());
    }

    #[test]
    fn companion_rep_min_polys() {
        let f = gf(2);
        let q = Poly::from_ints(&f, &[1, 1, 1]);
        let r = build_companion_rep(&f.one(), &f.one(), &q).unwrap();
        assert_eq!(r.dim(), 4);
        assert!(validate_rep(&r).is_valid());
        assert_eq!(min_poly(&r.x()[0]).unwrap(), Poly::from_ints(&f, &[-1, 1]).pow(2));
        assert_eq!(min_poly(&r.y()[0]).unwrap(), q.compose_power(2));
        assert_eq!(
            build_companion_rep(&f.one(), &f.one(), &Poly::one(&f)).unwrap_err(),
            Error::NonMonic
        );
    }

    #[test]
    fn restriction_matches_block_construction() {
        let f = gf(2);
        let q = Poly::from_ints(&f, &[1, 1, 1]);
        let zero = Poly::zero(&f);
        let res = build_restriction_rep(&q, std::slice::from_ref(&zero), std::slice::from_ref(&zero), None).unwrap();
        assert_eq!(res.rep.dim(), 4);
        assert!(validate_rep(&res.rep).is_valid());
        let (a, b, d) = restriction_blocks(2, &q, &zero, &zero).unwrap();
        assert_eq!(res.rep.x()[0], a);
        assert_eq!(res.rep.y()[0], b);
        assert_eq!(res.rep.z(), &d);
        assert_eq!(res.alpha_action, d);
    }

    #[test]
    fn restriction_degree_one_is_build_v() {
        let f = gf(3);
        let q = Poly::from_ints(&f, &[-2, 1]);
        let res = build_restriction_rep(&q, &[Poly::from_ints(&f, &[1])], &[Poly::zero(&f)], None).unwrap();
        let v = build_v(
            &HeisenbergAlgebra::new(1, &f).unwrap(),
            &ModuleParams::from_ints(&f, 2, &[1], &[0]).unwrap(),
        )
        .unwrap();
        assert_eq!(res.rep, v);
    }

    #[test]
    fn restriction_rejects_bad_alpha() {
        let f = gf(2);
        let q = Poly::from_ints(&f, &[1, 1, 0, 0, 1]);
        let k = make_extension(&q).unwrap();
        // an element of the GF(4) subfield: a primitive cube root of unity
        let w = k.generator().unwrap().pow(5);
        let err = build_restriction_rep(&q, &[Poly::zero(&f)], &[Poly::zero(&f)], Some(&w)).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { expected: 4, got: 2 });
        let red = Poly::from_ints(&f, &[1, 0, 1]);
        assert_eq!(
            build_restriction_rep(&red, &[Poly::zero(&f)], &[Poly::zero(&f)], None).unwrap_err(),
            Error::ReduciblePoly
        );
    }
}
