//! Dense univariate polynomials over a finite field.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldElem};

/// Polynomial with ascending coefficients stored as encoded field values.
/// The zero polynomial has no coefficients; otherwise the last one is nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u64>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let e = FieldElem::raw(&self.field, c);
            match (i, c) {
                (0, _) => write!(f, "{e}")?,
                (1, 1) => write!(f, "X")?,
                (1, _) => write!(f, "{e}X")?,
                (_, 1) => write!(f, "X^{i}")?,
                _ => write!(f, "{e}X^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub(crate) fn new_raw(field: &Field, mut coeffs: Vec<u64>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// From ascending encoded values; each must be a valid element of `field`.
    pub fn from_values(field: &Field, coeffs: Vec<u64>) -> Result<Poly> {
        if let Some(&c) = coeffs.iter().find(|&&c| c >= field.order()) {
            return Err(Error::InvalidElement(format!(
                "coefficient {c} out of range for field of order {}",
                field.order()
            )));
        }
        Ok(Poly::new_raw(field, coeffs))
    }

    /// From ascending integer coefficients, reduced into the prime subfield.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new_raw(field, coeffs.iter().map(|&c| field.int(c)).collect())
    }

    pub fn from_elems(field: &Field, coeffs: &[FieldElem]) -> Result<Poly> {
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::MixedFields);
        }
        Ok(Poly::new_raw(field, coeffs.iter().map(|c| c.value()).collect()))
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new_raw(field, vec![])
    }

    pub fn one(field: &Field) -> Poly {
        Poly::new_raw(field, vec![1])
    }

    /// The indeterminate `X`.
    pub fn x(field: &Field) -> Poly {
        Poly::new_raw(field, vec![0, 1])
    }

    /// `X - c`.
    pub fn linear(c: &FieldElem) -> Poly {
        let f = c.field();
        Poly::new_raw(f, vec![f.neg(c.value()), 1])
    }

    pub fn constant(c: &FieldElem) -> Poly {
        Poly::new_raw(c.field(), vec![c.value()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn values(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeffs(&self) -> Vec<FieldElem> {
        self.coeffs.iter().map(|&c| FieldElem::raw(&self.field, c)).collect()
    }

    /// Coefficient of `X^i` as an encoded value.
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn leading(&self) -> Option<FieldElem> {
        self.coeffs.last().map(|&c| FieldElem::raw(&self.field, c))
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.add_raw(other))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.add_raw(&other.neg()))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.mul_raw(other))
    }

    pub fn neg(&self) -> Poly {
        Poly::new_raw(&self.field, self.coeffs.iter().map(|&c| self.field.neg(c)).collect())
    }

    pub fn scale(&self, c: &FieldElem) -> Result<Poly> {
        if c.field() != &self.field {
            return Err(Error::MixedFields);
        }
        Ok(self.scale_raw(c.value()))
    }

    pub(crate) fn scale_raw(&self, c: u64) -> Poly {
        Poly::new_raw(&self.field, self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect())
    }

    pub(crate) fn add_raw(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Poly::new_raw(f, coeffs)
    }

    pub(crate) fn sub_raw(&self, other: &Poly) -> Poly {
        self.add_raw(&other.neg())
    }

    pub(crate) fn mul_raw(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new_raw(f, out)
    }

    /// Quotient and remainder; `deg(rem) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check(divisor)?;
        let d = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let lead_inv = f.inv(divisor.coeffs[d]).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - d];
        for k in (d..rem.len()).rev() {
            let c = f.mul(rem[k], lead_inv);
            if c == 0 {
                continue;
            }
            quot[k - d] = c;
            for (i, &b) in divisor.coeffs.iter().enumerate() {
                rem[k - d + i] = f.sub(rem[k - d + i], f.mul(c, b));
            }
        }
        rem.truncate(d);
        Ok((Poly::new_raw(f, quot), Poly::new_raw(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(divisor)?;
        if !r.is_zero() {
            return Err(Error::InvalidElement(format!("{divisor} does not divide {self}")));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Scaled to leading coefficient 1; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&l) => self.scale_raw(self.field.inv(l).expect("nonzero")),
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Monic least common multiple.
    pub fn lcm(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let g = self.gcd(other)?;
        Ok(self.mul(other)?.div_exact(&g)?.monic())
    }

    pub fn eval(&self, x: &FieldElem) -> Result<FieldElem> {
        if x.field() != &self.field {
            return Err(Error::MixedFields);
        }
        Ok(FieldElem::raw(&self.field, self.eval_raw(x.value())))
    }

    pub(crate) fn eval_raw(&self, x: u64) -> u64 {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Evaluate a prime-field polynomial at an element of any field of the
    /// same characteristic.
    pub fn eval_in(&self, x: &FieldElem) -> FieldElem {
        debug_assert!(self.field.is_prime_field());
        debug_assert_eq!(self.field.characteristic(), x.field().characteristic());
        let f = x.field();
        let v = self
            .coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x.value()), c));
        FieldElem::raw(f, v)
    }

    /// `self^e mod modulus`.
    pub fn powmod(&self, mut e: u64, modulus: &Poly) -> Result<Poly> {
        self.check(modulus)?;
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(&self.field).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_raw(&base).rem(modulus)?;
            }
            base = base.mul_raw(&base).rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(&self.field), |acc, _| acc.mul_raw(self))
    }

    /// `f(X^k)`.
    pub fn compose_power(&self, k: usize) -> Poly {
        let mut out = vec![0u64; self.coeffs.len().saturating_sub(1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i * k] = c;
        }
        Poly::new_raw(&self.field, out)
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.int(i as i64)))
            .collect();
        Poly::new_raw(f, coeffs)
    }

    /// Image of this polynomial under a field embedding.
    pub fn map_field(&self, emb: &Embedding) -> Result<Poly> {
        if emb.source() != &self.field {
            return Err(Error::MixedFields);
        }
        Ok(Poly::new_raw(
            emb.target(),
            self.coeffs.iter().map(|&c| emb.map_raw(c)).collect(),
        ))
    }

    /// Roots in the coefficient field with multiplicities, by exhaustive
    /// evaluation and deflation. Roots are listed in encoded order.
    pub fn roots(&self) -> Vec<(FieldElem, usize)> {
        let mut out = Vec::new();
        if self.is_zero() {
            return out;
        }
        let mut rest = self.clone();
        for x in self.field.elements() {
            if rest.degree() == Some(0) {
                break;
            }
            let lin = Poly::linear(&x);
            let mut mult = 0;
            loop {
                let (q, r) = rest.divmod(&lin).expect("nonzero divisor");
                if !r.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((x, mult));
            }
        }
        out
    }

    /// Smallest `k >= 1` such that this polynomial splits into linear factors
    /// over the degree-`k` extension of its coefficient field.
    pub fn splitting_degree(&self) -> Result<usize> {
        let d = self.degree().ok_or(Error::DivisionByZero)?;
        if d == 0 {
            return Ok(1);
        }
        let q = self.field.order();
        let x = Poly::x(&self.field);
        let mut h = x.clone();
        for k in 1.. {
            h = h.powmod(q, self)?;
            // product of the distinct irreducible factors whose degree divides k
            let g = h.sub_raw(&x).gcd(self)?;
            if g.powmod(d as u64, self)?.is_zero() {
                return Ok(k);
            }
        }
        unreachable!()
    }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test over a field of order `q`:
/// `X^(q^m) = X mod f` and `gcd(X^(q^(m/r)) - X, f) = 1` for every prime `r | m`.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    if !f.is_monic() {
        return Err(Error::NonMonic);
    }
    let m = f.degree().expect("monic implies nonzero");
    if m == 0 {
        return Ok(false);
    }
    if m == 1 {
        return Ok(true);
    }
    let q = f.field().order();
    let x = Poly::x(f.field());
    // frob[k] = X^(q^k) mod f
    let mut frob = vec![x.rem(f)?];
    for k in 1..=m {
        let next = frob[k - 1].powmod(q, f)?;
        frob.push(next);
    }
    if frob[m] != x.rem(f)? {
        return Ok(false);
    }
    for r in prime_factors(m) {
        let g = frob[m / r].sub_raw(&x).gcd(f)?;
        if !g.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The first monic irreducible polynomial of the given degree over `field`,
/// scanning monic polynomials in increasing encoded-coefficient order.
pub fn find_irreducible(field: &Field, degree: usize) -> Poly {
    assert!(degree >= 1);
    let q = field.order();
    let mut digits = vec![0u64; degree];
    loop {
        let mut coeffs = digits.clone();
        coeffs.push(1);
        let f = Poly::new_raw(field, coeffs);
        if is_irreducible(&f).expect("monic") {
            return f;
        }
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            i += 1;
            assert!(i < degree, "an irreducible polynomial of every degree exists");
        }
    }
}

/// Binary polynomial operation selector for [`poly_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    DivMod,
    Gcd,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyResult {
    Poly(Poly),
    DivMod(Poly, Poly),
}

pub fn poly_arith(f: &Poly, g: &Poly, op: PolyOp) -> Result<PolyResult> {
    Ok(match op {
        PolyOp::Add => PolyResult::Poly(f.add(g)?),
        PolyOp::Mul => PolyResult::Poly(f.mul(g)?),
        PolyOp::Gcd => PolyResult::Poly(f.gcd(g)?),
        PolyOp::DivMod => {
            let (q, r) = f.divmod(g)?;
            PolyResult::DivMod(q, r)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn gcd_in_characteristic_two() {
        let f = gf(2);
        let a = Poly::from_ints(&f, &[1, 0, 1]);
        let b = Poly::from_ints(&f, &[1, 1]);
        assert_eq!(a.gcd(&b).unwrap(), b);
    }

    #[test]
    fn fermat_evaluation() {
        let f = gf(3);
        let a = Poly::from_ints(&f, &[0, -1, 0, 1]);
        assert!(a.eval(&f.from_int(2)).unwrap().is_zero());
    }

    #[test]
    fn long_division_in_gf2() {
        let f = gf(2);
        let a = Poly::from_ints(&f, &[1, 0, 1, 0, 1]);
        let b = Poly::from_ints(&f, &[1, 1, 1]);
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(q, b);
        assert!(r.is_zero());
        assert_eq!(b.mul(&b).unwrap(), a);
    }

    #[test]
    fn divmod_degree_bound_and_errors() {
        let f = gf(5);
        let a = Poly::from_ints(&f, &[3, 1, 4, 1, 5, 2]);
        let b = Poly::from_ints(&f, &[2, 0, 3]);
        let (q, r) = a.divmod(&b).unwrap();
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(q.mul(&b).unwrap().add(&r).unwrap(), a);
        assert_eq!(a.divmod(&Poly::zero(&f)).unwrap_err(), Error::DivisionByZero);
        let g = Poly::one(&gf(3));
        assert_eq!(a.add(&g).unwrap_err(), Error::MixedFields);
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&Poly::from_ints(&gf(2), &[1, 1, 1])).unwrap());
        assert!(!is_irreducible(&Poly::from_ints(&gf(2), &[1, 0, 1])).unwrap());
        assert!(is_irreducible(&Poly::from_ints(&gf(3), &[1, 0, 1])).unwrap());
        assert_eq!(
            is_irreducible(&Poly::from_ints(&gf(3), &[1, 0, 2])).unwrap_err(),
            Error::NonMonic
        );
        // (X^2+X+1)^2 has no roots but is reducible
        assert!(!is_irreducible(&Poly::from_ints(&gf(2), &[1, 0, 1, 0, 1])).unwrap());
    }

    #[test]
    fn roots_with_multiplicity() {
        let f = gf(3);
        // (X-1)^2 (X-2)
        let a = Poly::from_ints(&f, &[-1, 1])
            .mul(&Poly::from_ints(&f, &[-1, 1]))
            .unwrap()
            .mul(&Poly::from_ints(&f, &[-2, 1]))
            .unwrap();
        let roots: Vec<_> = a.roots().into_iter().map(|(r, m)| (r.value(), m)).collect();
        assert_eq!(roots, vec![(1, 2), (2, 1)]);
    }

    #[test]
    fn splitting_degrees() {
        let f = gf(2);
        assert_eq!(Poly::from_ints(&f, &[1, 1, 1]).splitting_degree().unwrap(), 2);
        assert_eq!(Poly::from_ints(&f, &[1, 0, 1]).splitting_degree().unwrap(), 1);
        // (X^2+X+1)(X^3+X+1): degrees 2 and 3
        let a = Poly::from_ints(&f, &[1, 1, 1])
            .mul(&Poly::from_ints(&f, &[1, 1, 0, 1]))
            .unwrap();
        assert_eq!(a.splitting_degree().unwrap(), 6);
        // (X^2+X+1)^2 still splits over GF(4)
        let b = Poly::from_ints(&f, &[1, 0, 1, 0, 1]);
        assert_eq!(b.splitting_degree().unwrap(), 2);
    }

    #[test]
    fn find_irreducible_is_irreducible() {
        for p in [2, 3, 5] {
            for d in 1..=4 {
                let q = find_irreducible(&gf(p), d);
                assert_eq!(q.degree(), Some(d));
                assert!(is_irreducible(&q).unwrap());
            }
        }
    }
}
