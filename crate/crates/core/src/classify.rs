//! Classification of faithful modules of dimension `p^n` and the
//! simultaneous-similarity operations on `p x p` triples.

use crate::canonical::min_poly;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::heisenberg::{
    build_m, build_v, lower_shift, require_valid, HeisenbergAlgebra, InvariantTuple, ModuleParams, Representation,
};
use crate::matrix::Matrix;
use crate::subspace::SubspaceBasis;

/// `delta` when `min_poly(a) = X^p - delta`.
fn pth_power_constant(a: &Matrix, p: usize, label: &str) -> Result<FieldElem> {
    let mp = min_poly(a)?;
    let ok = mp.degree() == Some(p) && (1..p).all(|i| mp.coeff(i) == 0);
    if !ok {
        return Err(Error::MinPolyShape(format!(
            "minimal polynomial of {label} is {mp}, not X^{p} - c"
        )));
    }
    Ok(FieldElem::raw(a.field(), a.field().neg(mp.coeff(0))))
}

struct Extracted {
    alpha: FieldElem,
    deltas: Vec<FieldElem>,
    epsilons: Vec<FieldElem>,
}

fn extract(rep: &Representation) -> Result<Extracted> {
    let field = rep.field();
    let alpha = match rep.z().scalar_value() {
        Some(c) if c != 0 => FieldElem::raw(field, c),
        _ => return Err(Error::NotScalarCenter),
    };
    let p = field.characteristic() as usize;
    let n = rep.rank();
    let expected = (0..n).try_fold(1usize, |acc, _| acc.checked_mul(p));
    if expected != Some(rep.dim()) {
        return Err(Error::WrongDimension {
            dim: rep.dim(),
            expected: expected.unwrap_or(usize::MAX),
        });
    }
    let deltas = (0..n)
        .map(|k| pth_power_constant(&rep.x()[k], p, &format!("x{}", k + 1)))
        .collect::<Result<Vec<_>>>()?;
    let epsilons = (0..n)
        .map(|k| pth_power_constant(&rep.y()[k], p, &format!("y{}", k + 1)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Extracted {
        alpha,
        deltas,
        epsilons,
    })
}

/// Invariant tuple `(alpha, delta_k, epsilon_k)`; two faithful modules of
/// dimension `p^n` are isomorphic iff their tuples agree.
pub fn invariants(rep: &Representation) -> Result<InvariantTuple> {
    let e = extract(rep)?;
    Ok(InvariantTuple {
        alpha: e.alpha,
        deltas: e.deltas,
        epsilons: e.epsilons,
    })
}

/// First reduced-echelon vector of the common kernel of `a_k - c_k I`.
fn common_eigenvector(mats: &[&Matrix], eigenvalues: &[FieldElem]) -> Option<Vec<u64>> {
    let dim = mats[0].rows();
    let shifted: Vec<Matrix> = mats
        .iter()
        .zip(eigenvalues)
        .map(|(a, c)| a.sub(&Matrix::scalar(c, dim)).expect("square"))
        .collect();
    let transposed: Vec<Matrix> = shifted.iter().map(Matrix::transpose).collect();
    let stacked = Matrix::hstack(&transposed).expect("same shapes").transpose();
    let kernel = SubspaceBasis::span(mats[0].field(), dim, &stacked.kernel());
    kernel.vectors().first().cloned()
}

/// Recovers `(alpha, beta, gamma)` and a transform `T` with
/// `T^{-1} R(g) T = build_v(params)(g)` for every generator.
///
/// `beta_k` and `gamma_k` are the unique `p`-th roots of the constant terms of
/// the minimal polynomials. A common eigenvector `v` of the `x_k` is taken as
/// the first echelon vector of the joint eigenspace; the columns of `T` are
/// `(y_1 - gamma_1)^{i_1} ... (y_n - gamma_n)^{i_n} v` in monomial order.
pub fn classify(rep: &Representation) -> Result<(ModuleParams, Matrix)> {
    let e = extract(rep)?;
    require_valid(rep).map_err(|err| Error::InvalidRepresentation(err.to_string()))?;
    let field = rep.field();
    let p = field.characteristic() as usize;
    let n = rep.rank();
    let dim = rep.dim();
    let betas: Vec<FieldElem> = e.deltas.iter().map(FieldElem::pth_root).collect();
    let gammas: Vec<FieldElem> = e.epsilons.iter().map(FieldElem::pth_root).collect();
    let params = ModuleParams::new(e.alpha, betas, gammas)?;

    let xs: Vec<&Matrix> = rep.x().iter().collect();
    let v = common_eigenvector(&xs, &params.betas)
        .ok_or_else(|| Error::InvalidRepresentation("the x-images have no common eigenvector".into()))?;
    let lowered: Vec<Matrix> = rep
        .y()
        .iter()
        .zip(&params.gammas)
        .map(|(y, g)| y.sub(&Matrix::scalar(g, dim)))
        .collect::<Result<_>>()?;
    let mut columns: Vec<Vec<u64>> = Vec::with_capacity(dim);
    columns.push(v);
    for idx in 1..dim {
        // peel one factor off the least significant nonzero exponent
        let mut stride = 1;
        let mut k = n - 1;
        while (idx / stride) % p == 0 {
            stride *= p;
            k -= 1;
        }
        let prev = lowered[k].mul_vec(&columns[idx - stride]);
        columns.push(prev);
    }
    let t = Matrix::from_columns(field, dim, &columns);
    let target = build_v(&HeisenbergAlgebra::new(n, field)?, &params)?;
    let conj = rep
        .conjugate(&t)
        .map_err(|_| Error::InvalidRepresentation("spun basis is not a basis".into()))?;
    if conj != target {
        return Err(Error::InvalidRepresentation(
            "spun basis does not conjugate to the truncated-polynomial model".into(),
        ));
    }
    Ok((params, t))
}

/// A Lie-algebra endomorphism of `h(n)` given by its matrix on the basis
/// `x_1..x_n, y_1..y_n, z`; column `j` holds the image of basis element `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    algebra: HeisenbergAlgebra,
    matrix: Matrix,
}

impl Automorphism {
    pub fn new(algebra: &HeisenbergAlgebra, matrix: Matrix) -> Result<Automorphism> {
        let d = algebra.dim();
        if matrix.rows() != d || matrix.cols() != d {
            return Err(Error::ShapeMismatch(format!("need a {d}x{d} matrix")));
        }
        Ok(Automorphism {
            algebra: algebra.clone(),
            matrix,
        })
    }

    /// `x_k -> (x_k - beta_k/alpha z) / alpha`, `y_k -> y_k - gamma_k/alpha z`,
    /// `z -> z/alpha`: pulls `V_{alpha,beta,gamma}` back to `V_{1,0,...,0}`.
    pub fn normalizing(params: &ModuleParams) -> Result<Automorphism> {
        Self::central_shift(params, true)
    }

    /// `x_k -> x_k - beta_k/alpha z`, `y_k -> y_k - gamma_k/alpha z`, `z -> z`:
    /// pulls `V_{alpha,beta,gamma}` back to `V_{alpha,0,...,0}`.
    pub fn translation(params: &ModuleParams) -> Result<Automorphism> {
        Self::central_shift(params, false)
    }

    fn central_shift(params: &ModuleParams, rescale: bool) -> Result<Automorphism> {
        let field = params.field();
        let n = params.rank();
        let alg = HeisenbergAlgebra::new(n, field)?;
        let ainv = params.alpha.inv()?;
        let scale = if rescale { ainv.clone() } else { field.one() };
        let mut m = Matrix::zeros(field, 2 * n + 1, 2 * n + 1);
        for k in 0..n {
            let b = params.betas[k].mul(&ainv)?;
            let g = params.gammas[k].mul(&ainv)?;
            m.set(k, k, scale.value());
            m.set(2 * n, k, b.mul(&scale)?.neg().value());
            m.set(n + k, n + k, 1);
            m.set(2 * n, n + k, g.neg().value());
        }
        m.set(2 * n, 2 * n, scale.value());
        Automorphism::new(&alg, m)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Invertible and bracket-preserving.
    pub fn is_automorphism(&self) -> bool {
        if self.matrix.det().map_or(true, |d| d.is_zero()) {
            return false;
        }
        let d = self.algebra.dim();
        let cols = self.matrix.columns();
        let bracket = |u: &[u64], v: &[u64]| -> Vec<u64> {
            let f = self.algebra.field();
            let mut out = vec![0u64; d];
            for i in 0..d {
                for j in 0..d {
                    let c = f.mul(u[i], v[j]);
                    if c == 0 {
                        continue;
                    }
                    for (o, b) in out.iter_mut().zip(self.algebra.bracket(i, j)) {
                        *o = f.add(*o, f.mul(c, b));
                    }
                }
            }
            out
        };
        (0..d).all(|i| {
            (0..d).all(|j| {
                let lhs = self.matrix.mul_vec(&self.algebra.bracket(i, j));
                lhs == bracket(&cols[i], &cols[j])
            })
        })
    }

    /// The pulled-back representation `R o Omega`.
    pub fn pull_back(&self, rep: &Representation) -> Result<Representation> {
        if rep.algebra() != &self.algebra {
            return Err(Error::MixedFields);
        }
        let n = rep.rank();
        let images = (0..2 * n + 1)
            .map(|j| rep.image(&self.matrix.column(j)))
            .collect::<Result<Vec<_>>>()?;
        Representation::new(images[..n].to_vec(), images[n..2 * n].to_vec(), images[2 * n].clone())
    }
}

fn check_triple(a: &Matrix, b: &Matrix, c: &Matrix) -> Result<()> {
    let p = a.field().characteristic() as usize;
    let fields_ok = a.field() == b.field() && b.field() == c.field();
    if !fields_ok {
        return Err(Error::MixedFields);
    }
    for m in [a, b, c] {
        if m.rows() != p || m.cols() != p {
            return Err(Error::RelationViolated(format!(
                "triple must be {p}x{p}, found {}x{}",
                m.rows(),
                m.cols()
            )));
        }
    }
    if &a.commutator(b)? != c {
        return Err(Error::RelationViolated("[A, B] != C".into()));
    }
    if c.is_zero() {
        return Err(Error::RelationViolated("C = 0".into()));
    }
    if !a.commutator(c)?.is_zero() {
        return Err(Error::RelationViolated("[A, C] != 0".into()));
    }
    if !b.commutator(c)?.is_zero() {
        return Err(Error::RelationViolated("[B, C] != 0".into()));
    }
    Ok(())
}

/// Normal form of a triple `[A, B] = C != 0`, `[A, C] = [B, C] = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalPair {
    /// `M_{alpha,beta}`.
    pub a: Matrix,
    /// `gamma I + N`.
    pub b: Matrix,
    pub transform: Matrix,
    pub alpha: FieldElem,
    pub beta: FieldElem,
    pub gamma: FieldElem,
}

/// `beta = |A|^{1/p}`, `gamma = |B|^{1/p}`, `w` the first echelon vector of
/// `ker(A - beta)`, and columns `w, (B - gamma) w, ..., (B - gamma)^{p-1} w`.
pub fn canonical_pair(a: &Matrix, b: &Matrix, c: &Matrix) -> Result<CanonicalPair> {
    check_triple(a, b, c)?;
    let field: &Field = a.field();
    let p = a.rows();
    let alpha = match c.scalar_value() {
        Some(v) => FieldElem::raw(field, v),
        None => return Err(Error::RelationViolated("C is not scalar".into())),
    };
    let beta = a.det()?.pth_root();
    let gamma = b.det()?.pth_root();
    let w = common_eigenvector(&[a], std::slice::from_ref(&beta))
        .ok_or_else(|| Error::RelationViolated("A has no eigenvector for |A|^(1/p)".into()))?;
    let lowered = b.sub(&Matrix::scalar(&gamma, p))?;
    let mut cols = vec![w];
    for i in 1..p {
        let next = lowered.mul_vec(&cols[i - 1]);
        cols.push(next);
    }
    let t = Matrix::from_columns(field, p, &cols);
    let tinv = t
        .inverse()
        .map_err(|_| Error::RelationViolated("spun basis is degenerate".into()))?;
    let ca = tinv.mul(a)?.mul(&t)?;
    let cb = tinv.mul(b)?.mul(&t)?;
    let expect_a = build_m(&alpha, &beta)?;
    let expect_b = Matrix::scalar(&gamma, p).add(&lower_shift(field, p))?;
    if ca != expect_a || cb != expect_b {
        return Err(Error::RelationViolated("conjugation check failed".into()));
    }
    Ok(CanonicalPair {
        a: ca,
        b: cb,
        transform: t,
        alpha,
        beta,
        gamma,
    })
}

/// `X` with `X^{-1} A X = A'`, `X^{-1} B X = B'`, `X^{-1} C X = C'`, or
/// `None` when the determinant triples differ.
pub fn triple_similarity(t1: (&Matrix, &Matrix, &Matrix), t2: (&Matrix, &Matrix, &Matrix)) -> Result<Option<Matrix>> {
    check_triple(t1.0, t1.1, t1.2)?;
    check_triple(t2.0, t2.1, t2.2)?;
    if t1.0.field() != t2.0.field() {
        return Err(Error::MixedFields);
    }
    let dets = |t: (&Matrix, &Matrix, &Matrix)| -> Result<[FieldElem; 3]> { Ok([t.0.det()?, t.1.det()?, t.2.det()?]) };
    if dets(t1)? != dets(t2)? {
        return Ok(None);
    }
    let c1 = canonical_pair(t1.0, t1.1, t1.2)?;
    let c2 = canonical_pair(t2.0, t2.1, t2.2)?;
    let x = c1.transform.mul(&c2.transform.inverse()?)?;
    let xinv = x.inverse()?;
    for (m, target) in [(t1.0, t2.0), (t1.1, t2.1), (t1.2, t2.2)] {
        if &xinv.mul(m)?.mul(&x)? != target {
            return Err(Error::RelationViolated("composed transform failed verification".into()));
        }
    }
    Ok(Some(x))
}
