//! Reference implementations used to cross-check the library. Everything here
//! works on plain `u64` residues modulo a prime and shares no code with the
//! crate under test.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use heisenberg_core::{Field, FieldElem, HeisenbergAlgebra, Matrix, ModuleParams, Representation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn gf(p: u64) -> Field {
    Field::prime(p).expect("prime")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_elem(f: &Field, rng: &mut ChaCha8Rng) -> FieldElem {
    f.elem(rng.gen_range(0..f.order())).unwrap()
}

pub fn rand_nonzero(f: &Field, rng: &mut ChaCha8Rng) -> FieldElem {
    f.elem(rng.gen_range(1..f.order())).unwrap()
}

pub fn rand_matrix(f: &Field, d: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let data = (0..d * d).map(|_| rng.gen_range(0..f.order())).collect();
    Matrix::from_values(f, d, d, data).unwrap()
}

/// Random matrix in which each entry is nonzero with probability `density`.
pub fn rand_sparse(f: &Field, d: usize, density: f64, rng: &mut ChaCha8Rng) -> Matrix {
    let data = (0..d * d)
        .map(|_| {
            if rng.gen_bool(density) {
                rng.gen_range(1..f.order())
            } else {
                0
            }
        })
        .collect();
    Matrix::from_values(f, d, d, data).unwrap()
}

pub fn rand_invertible(f: &Field, d: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = rand_matrix(f, d, rng);
        if !m.det().unwrap().is_zero() {
            return m;
        }
    }
}

pub fn rand_params(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> ModuleParams {
    let alpha = rand_nonzero(f, rng);
    let betas = (0..n).map(|_| rand_elem(f, rng)).collect();
    let gammas = (0..n).map(|_| rand_elem(f, rng)).collect();
    ModuleParams::new(alpha, betas, gammas).unwrap()
}

/// Every `(alpha, betas, gammas)` with `alpha != 0`.
pub fn all_params(f: &Field, n: usize) -> Vec<ModuleParams> {
    let q = f.order();
    let total = (q - 1) * q.pow(2 * n as u32);
    (0..total)
        .map(|mut idx| {
            let mut next = |m: u64| {
                let d = idx % m;
                idx /= m;
                d
            };
            let betas: Vec<_> = (0..n).map(|_| f.elem(next(q)).unwrap()).collect();
            let gammas: Vec<_> = (0..n).map(|_| f.elem(next(q)).unwrap()).collect();
            let alpha = f.elem(next(q - 1) + 1).unwrap();
            ModuleParams::new(alpha, betas, gammas).unwrap()
        })
        .collect()
}

pub fn v_module(params: &ModuleParams) -> Representation {
    let alg = HeisenbergAlgebra::new(params.rank(), params.field()).unwrap();
    heisenberg_core::heisenberg::build_v(&alg, params).unwrap()
}

// ---------------------------------------------------------------------------
// Raw matrices: row-major `Vec<u64>` of side `d`.

pub fn raw(m: &Matrix) -> Vec<u64> {
    assert!(m.field().is_prime_field());
    m.values().to_vec()
}

pub fn raw_mul(p: u64, d: usize, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; d * d];
    for i in 0..d {
        for k in 0..d {
            let aik = a[i * d + k];
            if aik == 0 {
                continue;
            }
            for j in 0..d {
                out[i * d + j] = (out[i * d + j] + aik * b[k * d + j]) % p;
            }
        }
    }
    out
}

pub fn raw_apply(p: u64, d: usize, a: &[u64], v: &[u64]) -> Vec<u64> {
    (0..d)
        .map(|i| (0..d).fold(0, |acc, j| (acc + a[i * d + j] * v[j]) % p))
        .collect()
}

pub fn raw_identity(d: usize) -> Vec<u64> {
    let mut out = vec![0u64; d * d];
    for i in 0..d {
        out[i * d + i] = 1;
    }
    out
}

pub fn raw_pow(p: u64, d: usize, a: &[u64], e: u64) -> Vec<u64> {
    (0..e).fold(raw_identity(d), |acc, _| raw_mul(p, d, &acc, a))
}

// ---------------------------------------------------------------------------
// Raw polynomials: ascending coefficient vectors, trailing zeros trimmed.

pub fn ptrim(mut f: Vec<u64>) -> Vec<u64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn padd(p: u64, f: &[u64], g: &[u64]) -> Vec<u64> {
    let n = f.len().max(g.len());
    ptrim(
        (0..n)
            .map(|i| (f.get(i).unwrap_or(&0) + g.get(i).unwrap_or(&0)) % p)
            .collect(),
    )
}

pub fn pneg(p: u64, f: &[u64]) -> Vec<u64> {
    f.iter().map(|&c| (p - c) % p).collect()
}

pub fn pmul(p: u64, f: &[u64], g: &[u64]) -> Vec<u64> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + a * b) % p;
        }
    }
    ptrim(out)
}

fn inv_mod(p: u64, a: u64) -> u64 {
    (0..p).find(|x| a * x % p == 1).expect("unit")
}

pub fn prem(p: u64, f: &[u64], g: &[u64]) -> Vec<u64> {
    let g = ptrim(g.to_vec());
    let mut r = ptrim(f.to_vec());
    let lead_inv = inv_mod(p, *g.last().expect("nonzero divisor"));
    while r.len() >= g.len() {
        let shift = r.len() - g.len();
        let c = r.last().unwrap() * lead_inv % p;
        for (i, gi) in g.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * gi % p) % p;
        }
        r = ptrim(r);
    }
    r
}

/// All monic polynomials of the given degree, in lexicographic order of the
/// lower coefficients.
pub fn monic_of_degree(p: u64, deg: usize) -> impl Iterator<Item = Vec<u64>> {
    (0..p.pow(deg as u32)).map(move |mut idx| {
        let mut f: Vec<u64> = (0..deg)
            .map(|_| {
                let c = idx % p;
                idx /= p;
                c
            })
            .collect();
        f.push(1);
        f
    })
}

pub fn irreducible_by_trial_division(p: u64, f: &[u64]) -> bool {
    let deg = f.len() - 1;
    deg >= 1 && (1..=deg / 2).all(|k| monic_of_degree(p, k).all(|g| !prem(p, f, &g).is_empty()))
}

/// `f(A)` by Horner with raw arithmetic.
pub fn raw_eval(p: u64, d: usize, f: &[u64], a: &[u64]) -> Vec<u64> {
    let mut acc = vec![0u64; d * d];
    for &c in f.iter().rev() {
        acc = raw_mul(p, d, &acc, a);
        for i in 0..d {
            acc[i * d + i] = (acc[i * d + i] + c) % p;
        }
    }
    acc
}

/// The monic annihilating polynomial of least degree, by search.
pub fn brute_min_poly(p: u64, d: usize, a: &[u64]) -> Vec<u64> {
    (1..=d)
        .flat_map(|deg| monic_of_degree(p, deg))
        .find(|f| raw_eval(p, d, f, a).iter().all(|&x| x == 0))
        .expect("Cayley-Hamilton bounds the degree")
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for perm in permutations(d - 1) {
        for pos in 0..=perm.len() {
            let mut q = perm.clone();
            q.insert(pos, d - 1);
            out.push(q);
        }
    }
    out
}

fn sign(perm: &[usize]) -> bool {
    let inversions = (0..perm.len())
        .flat_map(|i| (i + 1..perm.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| perm[i] > perm[j])
        .count();
    inversions % 2 == 0
}

/// `det(X I - A)` by the Leibniz expansion over polynomial entries.
pub fn leibniz_char_poly(p: u64, d: usize, a: &[u64]) -> Vec<u64> {
    let entry = |i: usize, j: usize| -> Vec<u64> {
        let c = (p - a[i * d + j]) % p;
        if i == j {
            ptrim(vec![c, 1])
        } else {
            ptrim(vec![c])
        }
    };
    let mut total = Vec::new();
    for perm in permutations(d) {
        let term = (0..d).fold(vec![1u64], |acc, i| pmul(p, &acc, &entry(i, perm[i])));
        total = if sign(&perm) {
            padd(p, &total, &term)
        } else {
            padd(p, &total, &pneg(p, &term))
        };
    }
    total
}

pub fn leibniz_det(p: u64, d: usize, a: &[u64]) -> u64 {
    permutations(d).iter().fold(0, |acc, perm| {
        let term = (0..d).fold(1u64, |t, i| t * a[i * d + perm[i]] % p);
        if sign(perm) {
            (acc + term) % p
        } else {
            (acc + p - term) % p
        }
    })
}

// ---------------------------------------------------------------------------
// Subspace enumeration over GF(p)^d with p^d <= 128: a subspace is the
// bitmask of the vectors it contains.

fn decode(p: u64, d: usize, mut idx: usize) -> Vec<u64> {
    (0..d)
        .map(|_| {
            let c = idx as u64 % p;
            idx /= p as usize;
            c
        })
        .collect()
}

fn encode(p: u64, v: &[u64]) -> usize {
    v.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

/// Every subspace of `GF(p)^d`.
pub fn all_subspaces(p: u64, d: usize) -> Vec<u128> {
    let size = (p as usize).pow(d as u32);
    assert!(size <= 128, "bitmask representation needs p^d <= 128");
    let zero: u128 = 1;
    let mut seen = HashSet::from([zero]);
    let mut queue = VecDeque::from([zero]);
    while let Some(s) = queue.pop_front() {
        for v in 0..size {
            if s >> v & 1 == 1 {
                continue;
            }
            let vv = decode(p, d, v);
            let mut span = 0u128;
            for w in (0..size).filter(|w| s >> w & 1 == 1) {
                let ww = decode(p, d, w);
                for c in 0..p {
                    let sum: Vec<u64> = ww.iter().zip(&vv).map(|(a, b)| (a + c * b) % p).collect();
                    span |= 1 << encode(p, &sum);
                }
            }
            if seen.insert(span) {
                queue.push_back(span);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn is_invariant(p: u64, d: usize, subspace: u128, mats: &[Vec<u64>]) -> bool {
    let size = (p as usize).pow(d as u32);
    (0..size).filter(|v| subspace >> v & 1 == 1).all(|v| {
        let vv = decode(p, d, v);
        mats.iter()
            .all(|m| subspace >> encode(p, &raw_apply(p, d, m, &vv)) & 1 == 1)
    })
}

/// Irreducible iff the only invariant subspaces are zero and everything.
pub fn oracle_irreducible(p: u64, d: usize, mats: &[Vec<u64>]) -> bool {
    let invariant = all_subspaces(p, d)
        .into_iter()
        .filter(|&s| is_invariant(p, d, s, mats))
        .count();
    invariant == 2
}

pub fn raw_generators(rep: &Representation) -> Vec<Vec<u64>> {
    rep.generators().into_iter().map(raw).collect()
}
