//! Finite fields `GF(p)` and `GF(p)[X]/(q)`.
//!
//! Elements are encoded as a single `u64`: the class representative
//! `c_0 + c_1 X + ... + c_{m-1} X^{m-1}` is stored as `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`.
//! For prime fields this is simply the residue. The ordering of encoded values
//! is the canonical ordering used whenever elements must be enumerated or sorted.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Extension fields up to this order get log/exp tables.
const TABLE_LIMIT: u64 = 1 << 16;

/// Serializable description of a field: the characteristic and, for proper
/// extensions, the ascending coefficients of the monic modulus over `GF(p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

struct Tables {
    // exp[i] = g^i for i in 0..2(order-1), log[exp[i]] = i
    exp: Vec<u64>,
    log: Vec<u32>,
}

struct FieldInner {
    p: u64,
    modulus: Option<Vec<u64>>,
    degree: usize,
    order: u64,
    tables: Option<Tables>,
}

/// A finite field. Cheap to clone; all clones compare equal.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.modulus {
            None => write!(f, "GF({})", self.0.p),
            Some(m) => write!(f, "GF({}^{}) mod {:?}", self.0.p, self.0.degree, m),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// The prime field `GF(p)`. `p` must be a prime below `2^32`.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= 1 << 32 {
            return Err(Error::FieldTooLarge { p, degree: 1 });
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field(Arc::new(FieldInner {
            p,
            modulus: None,
            degree: 1,
            order: p,
            tables: None,
        })))
    }

    /// `GF(p)[X]/(q)` for a monic irreducible `q` given by ascending coefficients.
    /// A linear modulus yields the prime field itself.
    pub fn extension(p: u64, modulus: &[u64]) -> Result<Field> {
        let base = Field::prime(p)?;
        let q = Poly::from_values(&base, modulus.to_vec())?;
        make_extension(&q)
    }

    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<Field> {
        match &desc.modulus {
            None => Field::prime(desc.p),
            Some(m) => Field::extension(desc.p, m),
        }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.0.p,
            modulus: self.0.modulus.clone(),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.modulus.is_none()
    }

    /// Ascending coefficients of the modulus, if this is a proper extension.
    pub fn modulus(&self) -> Option<&[u64]> {
        self.0.modulus.as_deref()
    }

    /// The prime subfield `GF(p)`.
    pub fn prime_subfield(&self) -> Field {
        if self.is_prime_field() {
            self.clone()
        } else {
            Field::prime(self.0.p).expect("characteristic is prime")
        }
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::raw(self, 0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::raw(self, 1)
    }

    /// Element from its encoded value.
    pub fn elem(&self, value: u64) -> Result<FieldElem> {
        if value >= self.0.order {
            return Err(Error::InvalidElement(format!(
                "value {value} out of range for field of order {}",
                self.0.order
            )));
        }
        Ok(FieldElem::raw(self, value))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem::raw(self, self.int(n))
    }

    pub(crate) fn int(&self, n: i64) -> u64 {
        n.rem_euclid(self.0.p as i64) as u64
    }

    /// Element with the given ascending coefficients over `GF(p)`.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if coeffs.len() > self.0.degree {
            return Err(Error::InvalidElement(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.0.degree
            )));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.0.p) {
            return Err(Error::InvalidElement(format!(
                "coefficient {c} not reduced mod {}",
                self.0.p
            )));
        }
        Ok(FieldElem::raw(self, self.encode(coeffs)))
    }

    /// The class of `X` in a proper extension; `None` for a prime field.
    pub fn generator(&self) -> Option<FieldElem> {
        if self.is_prime_field() {
            None
        } else {
            Some(FieldElem::raw(self, self.0.p))
        }
    }

    /// All elements in encoded order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.0.order).map(move |v| FieldElem::raw(self, v))
    }

    // ---- raw arithmetic on encoded values ----

    pub(crate) fn encode(&self, coeffs: &[u64]) -> u64 {
        coeffs.iter().rev().fold(0, |acc, &c| acc * self.0.p + c)
    }

    pub(crate) fn decode(&self, mut v: u64) -> Vec<u64> {
        let p = self.0.p;
        (0..self.0.degree)
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        if self.0.degree == 1 {
            let s = a + b;
            if s >= p {
                s - p
            } else {
                s
            }
        } else if p == 2 {
            a ^ b
        } else {
            let (mut a, mut b) = (a, b);
            let mut out = 0;
            let mut place = 1;
            while a > 0 || b > 0 {
                let d = (a % p + b % p) % p;
                out += d * place;
                place *= p;
                a /= p;
                b /= p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        let p = self.0.p;
        if self.0.degree == 1 {
            if a == 0 {
                0
            } else {
                p - a
            }
        } else if p == 2 {
            a
        } else {
            let mut a = a;
            let mut out = 0;
            let mut place = 1;
            while a > 0 {
                let d = a % p;
                out += ((p - d) % p) * place;
                place *= p;
                a /= p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.0.degree == 1 {
            return ((a as u128 * b as u128) % self.0.p as u128) as u64;
        }
        if let Some(t) = &self.0.tables {
            let i = t.log[a as usize] as usize + t.log[b as usize] as usize;
            return t.exp[i];
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        let m = self.0.degree;
        let modulus = self.0.modulus.as_ref().expect("extension field");
        let (da, db) = (self.decode(a), self.decode(b));
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
            }
        }
        for k in (m..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..m {
                let sub = (c as u128 * modulus[i] as u128 % p as u128) as u64;
                prod[k - m + i] = (prod[k - m + i] + p - sub) % p;
            }
        }
        self.encode(&prod[..m])
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        if self.0.degree == 1 {
            return Some(inv_mod(a, self.0.p));
        }
        if let Some(t) = &self.0.tables {
            let n = self.0.order as usize - 1;
            return Some(t.exp[(n - t.log[a as usize] as usize) % n]);
        }
        Some(self.pow(a, self.0.order - 2))
    }

    pub fn div(&self, a: u64, b: u64) -> Option<u64> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Unique `b` with `b^p = a`, computed as `a^(p^(m-1))`.
    pub fn pth_root_raw(&self, a: u64) -> u64 {
        let mut b = a;
        for _ in 1..self.0.degree {
            b = self.pow(b, self.0.p);
        }
        b
    }

    /// Embedding of this field into `target`, sending the generator to the
    /// smallest (by encoded value) root of this field's modulus in `target`.
    pub fn embedding_into(&self, target: &Field) -> Result<Embedding> {
        if self.0.p != target.0.p || !target.0.degree.is_multiple_of(self.0.degree) {
            return Err(Error::NotExtension);
        }
        let gen_image = match &self.0.modulus {
            None => None,
            Some(m) => {
                let q = Poly::from_values(&target.prime_subfield(), m.clone())?;
                let root = (0..target.0.order)
                    .find(|&v| {
                        let x = FieldElem::raw(target, v);
                        q.eval_in(&x).is_zero()
                    })
                    .ok_or(Error::NotExtension)?;
                Some(root)
            }
        };
        let powers = match gen_image {
            None => vec![1],
            Some(g) => {
                let mut acc = vec![1u64];
                for _ in 1..self.0.degree {
                    let last = *acc.last().unwrap();
                    acc.push(target.mul(last, g));
                }
                acc
            }
        };
        Ok(Embedding {
            source: self.clone(),
            target: target.clone(),
            powers,
        })
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i128) as u64
}

/// Field homomorphism `GF(p^a) -> GF(p^b)` with `a | b`.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    // images of 1, g, g^2, ... for the source generator g
    powers: Vec<u64>,
}

impl Embedding {
    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn map_raw(&self, v: u64) -> u64 {
        let t = &self.target;
        self.source
            .decode(v)
            .iter()
            .zip(&self.powers)
            .fold(0, |acc, (&c, &g)| t.add(acc, t.mul(c, g)))
    }

    pub fn map(&self, x: &FieldElem) -> Result<FieldElem> {
        if x.field != self.source {
            return Err(Error::MixedFields);
        }
        Ok(FieldElem::raw(&self.target, self.map_raw(x.value)))
    }
}

/// `GF(p)[X]/(q)` for a monic irreducible `q` over a prime field.
pub fn make_extension(q: &Poly) -> Result<Field> {
    let base = q.field();
    if !base.is_prime_field() {
        return Err(Error::InvalidElement(
            "extension modulus must have prime-field coefficients".into(),
        ));
    }
    if !q.is_monic() {
        return Err(Error::NonMonic);
    }
    let m = q.degree().ok_or(Error::ReduciblePoly)?;
    if m == 0 {
        return Err(Error::ReduciblePoly);
    }
    if !crate::poly::is_irreducible(q)? {
        return Err(Error::ReduciblePoly);
    }
    if m == 1 {
        return Ok(base.clone());
    }
    let p = base.characteristic();
    let order = (0..m)
        .try_fold(1u64, |acc, _| acc.checked_mul(p))
        .filter(|&o| o < 1 << 62)
        .ok_or(Error::FieldTooLarge { p, degree: m })?;
    let mut inner = FieldInner {
        p,
        modulus: Some(q.values().to_vec()),
        degree: m,
        order,
        tables: None,
    };
    if order <= TABLE_LIMIT {
        let plain = Field(Arc::new(FieldInner {
            p,
            modulus: inner.modulus.clone(),
            degree: m,
            order,
            tables: None,
        }));
        inner.tables = Some(build_tables(&plain));
    }
    Ok(Field(Arc::new(inner)))
}

fn build_tables(f: &Field) -> Tables {
    let n = f.0.order as usize - 1;
    for g in 2..f.0.order {
        let mut exp = Vec::with_capacity(2 * n);
        let mut x = 1u64;
        let mut ok = true;
        for i in 0..n {
            if i > 0 && x == 1 {
                ok = false;
                break;
            }
            exp.push(x);
            x = f.mul_slow(x, g);
        }
        if !ok || x != 1 {
            continue;
        }
        let mut log = vec![0u32; f.0.order as usize];
        for (i, &v) in exp.iter().enumerate() {
            log[v as usize] = i as u32;
        }
        let head = exp.clone();
        exp.extend(head);
        return Tables { exp, log };
    }
    unreachable!("multiplicative group of a finite field is cyclic")
}

/// An element of a finite field, carrying its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    field: Field,
    value: u64,
}

impl std::hash::Hash for FieldElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.0.p.hash(state);
        self.field.0.modulus.hash(state);
        self.value.hash(state);
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_prime_field() {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{:?}", self.coeffs())
        }
    }
}

impl FieldElem {
    pub(crate) fn raw(field: &Field, value: u64) -> FieldElem {
        FieldElem {
            field: field.clone(),
            value,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Encoded value (see module docs).
    pub fn value(&self) -> u64 {
        self.value
    }

    /// Ascending coefficients of the class representative over `GF(p)`.
    pub fn coeffs(&self) -> Vec<u64> {
        self.field.decode(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    fn same(&self, other: &FieldElem) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same(other)?;
        Ok(FieldElem::raw(&self.field, self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same(other)?;
        Ok(FieldElem::raw(&self.field, self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same(other)?;
        Ok(FieldElem::raw(&self.field, self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same(other)?;
        let v = self.field.div(self.value, other.value).ok_or(Error::DivisionByZero)?;
        Ok(FieldElem::raw(&self.field, v))
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem::raw(&self.field, self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElem> {
        let v = self.field.inv(self.value).ok_or(Error::DivisionByZero)?;
        Ok(FieldElem::raw(&self.field, v))
    }

    pub fn pow(&self, e: u64) -> FieldElem {
        FieldElem::raw(&self.field, self.field.pow(self.value, e))
    }

    /// The Frobenius image `a^p`.
    pub fn frobenius(&self) -> FieldElem {
        self.pow(self.field.characteristic())
    }

    /// The unique `b` with `b^p = self`.
    pub fn pth_root(&self) -> FieldElem {
        FieldElem::raw(&self.field, self.field.pth_root_raw(self.value))
    }

    /// Degree of the subfield `GF(p)(self)` over `GF(p)`.
    pub fn degree_over_prime(&self) -> usize {
        let mut x = self.frobenius();
        let mut d = 1;
        while x.value != self.value {
            x = x.frobenius();
            d += 1;
        }
        d
    }
}

/// Binary operation selector for [`field_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Raise `a` to the exponent held in the prime-field value of `b`.
    Pow,
}

pub fn field_arith(a: &FieldElem, b: &FieldElem, op: FieldOp) -> Result<FieldElem> {
    match op {
        FieldOp::Add => a.add(b),
        FieldOp::Sub => a.sub(b),
        FieldOp::Mul => a.mul(b),
        FieldOp::Div => a.div(b),
        FieldOp::Pow => {
            a.same(b)?;
            Ok(a.pow(b.value))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf4() -> Field {
        Field::extension(2, &[1, 1, 1]).unwrap()
    }

    #[test]
    fn prime_field_examples() {
        let f = Field::prime(3).unwrap();
        let two = f.from_int(2);
        assert_eq!(two.mul(&two).unwrap(), f.one());
        assert_eq!(two.inv().unwrap(), two);
        assert_eq!(f.from_int(-1), two);
    }

    #[test]
    fn gf4_generator_squares_to_t_plus_one() {
        let f = gf4();
        let t = f.generator().unwrap();
        assert_eq!(t.mul(&t).unwrap().coeffs(), vec![1, 1]);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(Field::prime(4).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Field::extension(2, &[1, 0, 1]).unwrap_err(), Error::ReduciblePoly);
        assert_eq!(Field::extension(3, &[1, 0, 2]).unwrap_err(), Error::NonMonic);
        let f = Field::prime(3).unwrap();
        assert_eq!(f.zero().inv().unwrap_err(), Error::DivisionByZero);
        let g = Field::prime(5).unwrap();
        assert_eq!(f.one().add(&g.one()).unwrap_err(), Error::MixedFields);
    }

    #[test]
    fn gf9_is_a_field_of_order_nine() {
        let f = Field::extension(3, &[1, 0, 1]).unwrap();
        assert_eq!(f.order(), 9);
        for a in f.elements().skip(1) {
            assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
        }
    }

    #[test]
    fn gf4_pth_root_table() {
        // squaring table inverted by hand
        let f = gf4();
        let t = f.generator().unwrap();
        let r = t.pth_root();
        assert_eq!(r.coeffs(), vec![1, 1]);
        assert_eq!(r.frobenius(), t);
    }

    #[test]
    fn pth_root_exhaustive_small_fields() {
        let fields = vec![
            Field::prime(2).unwrap(),
            Field::prime(3).unwrap(),
            Field::prime(5).unwrap(),
            Field::prime(7).unwrap(),
            gf4(),
            Field::extension(2, &[1, 1, 0, 1]).unwrap(),
            Field::extension(3, &[1, 0, 1]).unwrap(),
            Field::extension(2, &[1, 1, 0, 0, 1]).unwrap(),
            Field::extension(5, &[2, 0, 1]).unwrap(),
            Field::extension(3, &[1, 2, 0, 1]).unwrap(),
            Field::extension(5, &[3, 3, 0, 1]).unwrap(),
        ];
        for f in fields {
            assert!(f.order() <= 125);
            for a in f.elements() {
                assert_eq!(a.pth_root().frobenius(), a, "{f:?} {a}");
            }
            for a in f.elements() {
                for b in f.elements() {
                    let lhs = a.add(&b).unwrap().frobenius();
                    let rhs = a.frobenius().add(&b.frobenius()).unwrap();
                    assert_eq!(lhs, rhs);
                    let lhs = a.mul(&b).unwrap().frobenius();
                    let rhs = a.frobenius().mul(&b.frobenius()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn table_and_slow_multiplication_agree() {
        let f = Field::extension(3, &[2, 0, 1, 1]).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a.value(), b.value()), f.mul_slow(a.value(), b.value()));
            }
        }
    }

    #[test]
    fn field_axioms_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for f in [
            Field::prime(7).unwrap(),
            gf4(),
            Field::extension(3, &[1, 0, 1]).unwrap(),
        ] {
            for _ in 0..500 {
                let a = f.elem(rng.gen_range(0..f.order())).unwrap();
                let b = f.elem(rng.gen_range(0..f.order())).unwrap();
                let c = f.elem(rng.gen_range(0..f.order())).unwrap();
                let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
                assert_eq!(ab_c, a.mul(&b.mul(&c).unwrap()).unwrap());
                let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
                let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                assert_eq!(a.add(&b).unwrap().sub(&b).unwrap(), a);
                if !a.is_zero() {
                    assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
                }
            }
        }
    }

    #[test]
    fn embedding_respects_arithmetic() {
        let small = gf4();
        let big = Field::extension(2, &[1, 1, 0, 0, 1]).unwrap();
        let e = small.embedding_into(&big).unwrap();
        for a in small.elements() {
            for b in small.elements() {
                let lhs = e.map(&a.mul(&b).unwrap()).unwrap();
                let rhs = e.map(&a).unwrap().mul(&e.map(&b).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        let gf8 = Field::extension(2, &[1, 1, 0, 1]).unwrap();
        assert_eq!(small.embedding_into(&gf8).unwrap_err(), Error::NotExtension);
    }
}
