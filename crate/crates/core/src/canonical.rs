//! Minimal and characteristic polynomials, companion matrices, and the
//! Frobenius (rational canonical) and Jordan forms with explicit transforms.
//!
//! Companion matrices put the ones on the subdiagonal and the negated
//! coefficients in the last column, so `C e_i = e_{i+1}`. Jordan blocks use
//! the same orientation (`J e_i = c e_i + e_{i+1}`); the superdiagonal variant
//! is obtained by conjugating with the reversal permutation.

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::matrix::Matrix;
use crate::poly::Poly;

fn square(a: &Matrix, what: &str) -> Result<usize> {
    if a.is_square() {
        Ok(a.rows())
    } else {
        Err(Error::ShapeMismatch(format!(
            "{what} needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )))
    }
}

/// `f(A) v` by Horner's rule on vectors.
pub(crate) fn apply_poly(a: &Matrix, f: &Poly, v: &[u64]) -> Vec<u64> {
    let field = a.field();
    let mut acc = vec![0u64; v.len()];
    for &c in f.values().iter().rev() {
        acc = a.mul_vec(&acc);
        if c != 0 {
            for (x, &y) in acc.iter_mut().zip(v) {
                *x = field.add(*x, field.mul(c, y));
            }
        }
    }
    acc
}

/// Monic generator of `{f : f(A) v = 0}` and the Krylov vectors
/// `v, Av, ..., A^{d-1} v`.
pub fn local_min_poly(a: &Matrix, v: &[u64]) -> (Poly, Vec<Vec<u64>>) {
    let field = a.field().clone();
    let n = v.len();
    // reduced vectors with their pivot and the polynomial producing them
    let mut reduced: Vec<(usize, Vec<u64>, Vec<u64>)> = Vec::new();
    let mut krylov = Vec::new();
    let mut w = v.to_vec();
    for k in 0..=n {
        let mut r = w.clone();
        let mut combo = vec![0u64; k + 1];
        combo[k] = 1;
        for (pc, b, bc) in &reduced {
            let c = r[*pc];
            if c == 0 {
                continue;
            }
            for (x, &y) in r.iter_mut().zip(b) {
                *x = field.sub(*x, field.mul(c, y));
            }
            for (i, &y) in bc.iter().enumerate() {
                combo[i] = field.sub(combo[i], field.mul(c, y));
            }
        }
        match r.iter().position(|&x| x != 0) {
            None => return (Poly::new_raw(&field, combo), krylov),
            Some(pc) => {
                let inv = field.inv(r[pc]).expect("nonzero");
                for x in r.iter_mut() {
                    *x = field.mul(*x, inv);
                }
                for x in combo.iter_mut() {
                    *x = field.mul(*x, inv);
                }
                reduced.push((pc, r, combo));
            }
        }
        krylov.push(w.clone());
        w = a.mul_vec(&w);
    }
    unreachable!("Krylov sequence of length n+1 is dependent")
}

/// Minimal polynomial by Krylov spinning of the standard basis vectors in
/// index order, stopping once the running lcm annihilates every basis vector.
pub fn min_poly(a: &Matrix) -> Result<Poly> {
    let n = square(a, "min_poly")?;
    let field = a.field();
    let mut lcm = Poly::one(field);
    for j in 0..n {
        let mut e = vec![0u64; n];
        e[j] = 1;
        if apply_poly(a, &lcm, &e).iter().all(|&x| x == 0) {
            continue;
        }
        let (local, _) = local_min_poly(a, &e);
        lcm = lcm.lcm(&local)?;
    }
    Ok(lcm)
}

/// Product of the invariant factors.
pub fn char_poly(a: &Matrix) -> Result<Poly> {
    let form = frobenius_form(a)?;
    Ok(form
        .invariant_factors
        .iter()
        .fold(Poly::one(a.field()), |acc, f| acc.mul_raw(f)))
}

pub fn companion(f: &Poly) -> Result<Matrix> {
    if !f.is_monic() {
        return Err(Error::NonMonic);
    }
    let d = f.degree().expect("monic");
    if d == 0 {
        return Err(Error::NonMonic);
    }
    let field = f.field();
    let mut c = Matrix::zeros(field, d, d);
    for i in 1..d {
        c.set(i, i - 1, 1);
    }
    for i in 0..d {
        c.set(i, d - 1, field.neg(f.coeff(i)));
    }
    Ok(c)
}

/// Jordan block of size `k` for eigenvalue `c`, ones on the subdiagonal.
pub fn jordan_block(c: &FieldElem, k: usize) -> Matrix {
    let mut j = Matrix::scalar(c, k);
    for i in 1..k {
        j.set(i, i - 1, 1);
    }
    j
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Monic invariant factors `d_1 | d_2 | ... | d_s`.
    pub invariant_factors: Vec<Poly>,
    /// `T` with `T^{-1} A T` equal to [`CanonicalForm::block_companion`].
    pub transform: Matrix,
}

impl CanonicalForm {
    pub fn block_companion(&self) -> Matrix {
        let blocks: Vec<Matrix> = self
            .invariant_factors
            .iter()
            .map(|f| companion(f).expect("invariant factors are monic of positive degree"))
            .collect();
        Matrix::direct_sum(&blocks).expect("blocks share a field")
    }
}

// Coprime f1 | f, g1 | g with f1 * g1 = lcm(f, g).
fn coprime_split(f: &Poly, g: &Poly) -> Result<(Poly, Poly)> {
    let d = f.gcd(g)?;
    let mut f1 = f.clone();
    let mut g1 = g.div_exact(&d)?;
    loop {
        let e = f1.gcd(&g1)?;
        if e.is_one() {
            return Ok((f1.monic(), g1.monic()));
        }
        f1 = f1.div_exact(&e)?;
        g1 = g1.mul_raw(&e);
    }
}

/// A vector whose local minimal polynomial is the minimal polynomial of `a`.
fn maximal_vector(a: &Matrix) -> Result<(Vec<u64>, Poly)> {
    let n = a.rows();
    let field = a.field();
    let mut v = vec![0u64; n];
    v[0] = 1;
    let (mut f, _) = local_min_poly(a, &v);
    for j in 1..n {
        let mut e = vec![0u64; n];
        e[j] = 1;
        if apply_poly(a, &f, &e).iter().all(|&x| x == 0) {
            continue;
        }
        let (g, _) = local_min_poly(a, &e);
        let (f1, g1) = coprime_split(&f, &g)?;
        let vf = apply_poly(a, &f.div_exact(&f1)?, &v);
        let vg = apply_poly(a, &g.div_exact(&g1)?, &e);
        v = vf.iter().zip(&vg).map(|(&x, &y)| field.add(x, y)).collect();
        f = f1.mul_raw(&g1);
        debug_assert_eq!(local_min_poly(a, &v).0, f);
    }
    Ok((v, f))
}

/// Rational canonical form by iterated extraction of a maximal cyclic
/// subspace and an invariant complement. Deterministic: seeds are the
/// standard basis vectors in index order.
pub fn frobenius_form(a: &Matrix) -> Result<CanonicalForm> {
    let n = square(a, "frobenius_form")?;
    let field = a.field().clone();
    if n == 0 {
        return Ok(CanonicalForm {
            invariant_factors: vec![],
            transform: Matrix::zeros(&field, 0, 0),
        });
    }
    let (v, f) = maximal_vector(a)?;
    let d = f.degree().expect("nonzero");
    let (_, krylov) = local_min_poly(a, &v);
    if d == n {
        return Ok(CanonicalForm {
            invariant_factors: vec![f],
            transform: Matrix::from_columns(&field, n, &krylov),
        });
    }
    // functional phi vanishing on A^i v for i < d-1 and 1 on A^{d-1} v
    let k = Matrix::from_columns(&field, n, &krylov);
    let mut rhs = Matrix::zeros(&field, d, 1);
    rhs.set(d - 1, 0, 1);
    let phi = k
        .transpose()
        .solve(&rhs)?
        .expect("Krylov vectors are independent")
        .column(0);
    let at = a.transpose();
    let mut rows = Vec::with_capacity(d);
    let mut r = phi;
    for _ in 0..d {
        rows.push(r.clone());
        r = at.mul_vec(&r);
    }
    let phis = Matrix::from_columns(&field, n, &rows).transpose();
    let comp = phis.kernel();
    debug_assert_eq!(comp.len(), n - d);
    let b = Matrix::from_columns(&field, n, &comp);
    let restricted = b.solve(&a.mul_raw(&b))?.expect("complement is invariant");
    let inner = frobenius_form(&restricted)?;
    let lifted = b.mul_raw(&inner.transform);
    let mut cols = lifted.columns();
    cols.extend(krylov);
    let mut factors = inner.invariant_factors;
    factors.push(f);
    Ok(CanonicalForm {
        invariant_factors: factors,
        transform: Matrix::from_columns(&field, n, &cols),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanForm {
    pub jordan: Matrix,
    /// `T` with `T^{-1} A T = jordan`.
    pub transform: Matrix,
    /// `(eigenvalue, block size)` in block order.
    pub blocks: Vec<(FieldElem, usize)>,
}

/// Jordan form over the field of `a`. Blocks are ordered by eigenvalue
/// (encoded order), then by decreasing size.
pub fn jordan_form(a: &Matrix) -> Result<JordanForm> {
    let n = square(a, "jordan_form")?;
    let field = a.field().clone();
    let cp = char_poly(a)?;
    let roots = cp.roots();
    if roots.iter().map(|(_, m)| m).sum::<usize>() != n {
        return Err(Error::DoesNotSplit);
    }
    let mut cols: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut blocks = Vec::new();
    let mut mats = Vec::new();
    for (lambda, mult) in roots {
        let nil = a.sub(&Matrix::scalar(&lambda, n))?;
        let gen_space = nil.pow(mult as u64)?.kernel();
        debug_assert_eq!(gen_space.len(), mult);
        let b = Matrix::from_columns(&field, n, &gen_space);
        let restricted = b.solve(&nil.mul_raw(&b))?.expect("generalized eigenspace is invariant");
        let form = frobenius_form(&restricted)?;
        let lifted = b.mul_raw(&form.transform);
        // blocks come out in increasing size; emit them largest first
        let mut offset = mult;
        for f in form.invariant_factors.iter().rev() {
            let k = f.degree().expect("nonzero");
            offset -= k;
            for j in offset..offset + k {
                cols.push(lifted.column(j));
            }
            blocks.push((lambda.clone(), k));
            mats.push(jordan_block(&lambda, k));
        }
    }
    Ok(JordanForm {
        jordan: Matrix::direct_sum(&mats)?,
        transform: Matrix::from_columns(&field, n, &cols),
        blocks,
    })
}

/// Invertible `X` with `X^{-1} A X = B`, or `None` when `A` and `B` are not
/// similar.
pub fn similarity_transform(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    if a.field() != b.field() {
        return Err(Error::MixedFields);
    }
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::ShapeMismatch(format!(
            "similarity needs equal square shapes, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let fa = frobenius_form(a)?;
    let fb = frobenius_form(b)?;
    if fa.invariant_factors != fb.invariant_factors {
        return Ok(None);
    }
    let x = fa.transform.mul(&fb.transform.inverse()?)?;
    Ok(Some(x))
}

/// `A^n = 0`.
pub fn is_nilpotent(a: &Matrix) -> Result<bool> {
    let n = square(a, "is_nilpotent")?;
    Ok(a.pow(n as u64)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn m10() -> Matrix {
        Matrix::from_rows(&gf(3), &[vec![0, 1, 0], vec![0, 0, 2], vec![0, 0, 0]])
    }

    #[test]
    fn min_poly_examples() {
        let f = gf(3);
        assert_eq!(min_poly(&m10()).unwrap(), Poly::from_ints(&f, &[0, 0, 0, 1]));
        assert_eq!(
            min_poly(&Matrix::identity(&f, 4)).unwrap(),
            Poly::from_ints(&f, &[-1, 1])
        );
        let g = gf(2);
        let q = Poly::from_ints(&g, &[1, 0, 1, 0, 1]);
        assert_eq!(min_poly(&companion(&q).unwrap()).unwrap(), q);
    }

    #[test]
    fn char_poly_examples() {
        let f = gf(3);
        let d = Matrix::from_rows(&f, &[vec![1, 0], vec![0, 2]]);
        assert_eq!(char_poly(&d).unwrap(), Poly::from_ints(&f, &[2, 0, 1]));
        assert_eq!(char_poly(&m10()).unwrap(), Poly::from_ints(&f, &[0, 0, 0, 1]));
        let q = Poly::from_ints(&f, &[2, 1, 0, 1]);
        assert_eq!(char_poly(&companion(&q).unwrap()).unwrap(), q);
    }

    #[test]
    fn companion_examples() {
        let f = gf(5);
        let alpha = 3;
        let c = companion(&Poly::from_ints(&f, &[-alpha, 0, 1])).unwrap();
        assert_eq!(c, Matrix::from_rows(&f, &[vec![0, alpha], vec![1, 0]]));
        let c1 = companion(&Poly::from_ints(&f, &[-4, 1])).unwrap();
        assert_eq!(c1, Matrix::from_rows(&f, &[vec![4]]));
        let g = gf(2);
        let c4 = companion(&Poly::from_ints(&g, &[1, 0, 1, 0, 1])).unwrap();
        assert_eq!(c4.column(3), vec![1, 0, 1, 0]);
        assert_eq!(companion(&Poly::from_ints(&f, &[1, 2])).unwrap_err(), Error::NonMonic);
    }

    #[test]
    fn frobenius_of_companion_and_identity() {
        let f = gf(3);
        let q = Poly::from_ints(&f, &[1, 2, 0, 1]);
        let c = companion(&q).unwrap();
        let form = frobenius_form(&c).unwrap();
        assert_eq!(form.invariant_factors, vec![q]);
        assert!(form.transform.is_identity());
        let i2 = Matrix::identity(&f, 2);
        let form = frobenius_form(&i2).unwrap();
        let lin = Poly::from_ints(&f, &[-1, 1]);
        assert_eq!(form.invariant_factors, vec![lin.clone(), lin]);
    }

    #[test]
    fn frobenius_transform_is_exact_on_mixed_example() {
        let f = gf(2);
        // diag(J2(1), 1, companion(X^2+X+1))
        let a = Matrix::direct_sum(&[
            jordan_block(&f.one(), 2),
            Matrix::identity(&f, 1),
            companion(&Poly::from_ints(&f, &[1, 1, 1])).unwrap(),
        ])
        .unwrap();
        let form = frobenius_form(&a).unwrap();
        assert_eq!(a.conjugate(&form.transform).unwrap(), form.block_companion());
        let degs: Vec<_> = form.invariant_factors.iter().map(|p| p.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 4]);
    }

    #[test]
    fn jordan_examples() {
        let f = gf(3);
        let c = f.from_int(2);
        let d = Matrix::scalar(&c, 2);
        let j = jordan_form(&d).unwrap();
        assert_eq!(j.jordan, d);
        let g = gf(2);
        let cm = companion(&Poly::from_ints(&g, &[1, 0, 1])).unwrap();
        let j = jordan_form(&cm).unwrap();
        assert_eq!(j.jordan, jordan_block(&g.one(), 2));
        assert_eq!(cm.conjugate(&j.transform).unwrap(), j.jordan);
        let irr = companion(&Poly::from_ints(&g, &[1, 1, 1])).unwrap();
        assert_eq!(jordan_form(&irr).unwrap_err(), Error::DoesNotSplit);
    }

    #[test]
    fn similarity_examples() {
        let f = gf(3);
        let a = m10();
        let x = similarity_transform(&a, &a).unwrap().unwrap();
        assert_eq!(a.conjugate(&x).unwrap(), a);
        let c = companion(&Poly::from_ints(&f, &[0, 0, 0, 1])).unwrap();
        let x = similarity_transform(&a, &c).unwrap().unwrap();
        assert_eq!(a.conjugate(&x).unwrap(), c);
        let g = gf(2);
        let i2 = Matrix::identity(&g, 2);
        assert!(similarity_transform(&i2, &jordan_block(&g.one(), 2)).unwrap().is_none());
    }
}
