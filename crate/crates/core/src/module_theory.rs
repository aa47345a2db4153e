//! Submodule machinery on the image of a representation: spinning, certified
//! irreducibility, composition series, uniseriality, intertwiners, the
//! enveloping algebra, scalar extension and the minimal faithful dimension.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::canonical::char_poly;
use crate::classify::invariants;
use crate::error::{Error, Result};
use crate::field::{make_extension, Field, FieldElem};
use crate::heisenberg::{build_standard, HeisenbergAlgebra, InvariantTuple, Representation};
use crate::matrix::Matrix;
use crate::poly::find_irreducible;
use crate::subspace::SubspaceBasis;

/// Above this many vectors (`order^dim`) lines are no longer enumerated.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 24;
/// Norton kernels are only enumerated line by line up to this many vectors.
const KERNEL_LIMIT: u64 = 1 << 12;

fn checked_power(base: u64, exp: usize) -> Option<u64> {
    (0..exp).try_fold(1u64, |acc, _| acc.checked_mul(base))
}

/// Smallest subspace containing `v` and invariant under every image.
///
/// Panics if `v` does not have length `rep.dim()`.
pub fn spin(rep: &Representation, v: &[u64]) -> SubspaceBasis {
    spin_under(rep.field(), &rep.generators(), v)
}

fn spin_under(field: &Field, gens: &[&Matrix], v: &[u64]) -> SubspaceBasis {
    let mut s = SubspaceBasis::zero(field, v.len());
    let mut work: Vec<Vec<u64>> = s.insert(v).into_iter().collect();
    while let Some(w) = work.pop() {
        if s.is_full() {
            break;
        }
        for g in gens {
            if let Some(u) = s.insert(&g.mul_vec(&w)) {
                work.push(u);
            }
        }
    }
    s
}

/// Number of 1-dimensional subspaces of `F_q^d`.
fn line_count(q: u64, d: usize) -> u64 {
    (0..d).map(|k| q.pow((d - 1 - k) as u32)).sum()
}

/// The `idx`-th normalized line representative: leading entry 1, ordered by
/// leading position and then by the trailing entries read as base-`q` digits.
fn line_at(q: u64, d: usize, mut idx: u64) -> Vec<u64> {
    let mut v = vec![0u64; d];
    for k in 0..d {
        let size = q.pow((d - 1 - k) as u32);
        if idx < size {
            v[k] = 1;
            for slot in v[k + 1..].iter_mut().rev() {
                *slot = idx % q;
                idx /= q;
            }
            return v;
        }
        idx -= size;
    }
    unreachable!("line index out of range")
}

/// Every vector of the subspace spanned by `basis`, one per line.
fn lines_of<'a>(field: &'a Field, basis: &'a [Vec<u64>], dim: usize) -> impl Iterator<Item = Vec<u64>> + 'a {
    let q = field.order();
    let k = basis.len();
    (0..line_count(q, k)).map(move |i| {
        let c = line_at(q, k, i);
        let mut v = vec![0u64; dim];
        for (ci, b) in c.iter().zip(basis) {
            if *ci == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(b) {
                *x = field.add(*x, field.mul(*ci, y));
            }
        }
        v
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityOptions {
    /// Use exhaustive line spinning while `order^dim` is at most this.
    pub exhaustive_limit: u64,
    /// Random algebra elements tried by the Norton test before giving up.
    pub samples: usize,
    pub seed: u64,
    /// Enumerate line seeds in reverse order.
    pub reverse: bool,
}

impl Default for IrreducibilityOptions {
    fn default() -> Self {
        IrreducibilityOptions {
            exhaustive_limit: EXHAUSTIVE_LIMIT,
            samples: 64,
            seed: 0,
            reverse: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrreducibleWitness {
    /// Every line spins to the whole space.
    AllLinesSpin { lines: u64 },
    /// Norton's criterion for `theta - eigenvalue`: every kernel line spins
    /// to `V`, and a kernel vector of the transpose spins to `V*`.
    Norton {
        theta: Matrix,
        eigenvalue: FieldElem,
        samples_used: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible(IrreducibleWitness),
    /// A proper nonzero invariant subspace.
    Reducible(SubspaceBasis),
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible(_))
    }

    pub fn submodule(&self) -> Option<&SubspaceBasis> {
        match self {
            Irreducibility::Reducible(s) => Some(s),
            Irreducibility::Irreducible(_) => None,
        }
    }
}

pub fn is_irreducible(rep: &Representation) -> Result<Irreducibility> {
    is_irreducible_with(rep, &IrreducibilityOptions::default())
}

/// Certified irreducibility. Fails with [`Error::Undecided`] only when the
/// Norton test finds no usable algebra element within `opts.samples` tries.
pub fn is_irreducible_with(rep: &Representation, opts: &IrreducibilityOptions) -> Result<Irreducibility> {
    let d = rep.dim();
    let field = rep.field();
    if d == 1 {
        return Ok(Irreducibility::Irreducible(IrreducibleWitness::AllLinesSpin {
            lines: 1,
        }));
    }
    let gens = rep.generators();
    match checked_power(field.order(), d) {
        Some(total) if total <= opts.exhaustive_limit => {
            let lines = line_count(field.order(), d);
            Ok(match proper_line_spin(field, &gens, opts.reverse) {
                Some(s) => Irreducibility::Reducible(s),
                None => Irreducibility::Irreducible(IrreducibleWitness::AllLinesSpin { lines }),
            })
        }
        _ => norton(field, &gens, opts),
    }
}

/// First line (in the chosen order) whose spin is proper.
fn proper_line_spin(field: &Field, gens: &[&Matrix], reverse: bool) -> Option<SubspaceBasis> {
    let d = gens[0].rows();
    let q = field.order();
    let count = line_count(q, d);
    (0..count).into_par_iter().find_map_first(|i| {
        let idx = if reverse { count - 1 - i } else { i };
        let s = spin_under(field, gens, &line_at(q, d, idx));
        (!s.is_full()).then_some(s)
    })
}

fn norton(field: &Field, gens: &[&Matrix], opts: &IrreducibilityOptions) -> Result<Irreducibility> {
    let d = gens[0].rows();
    let q = field.order();
    let transposes: Vec<Matrix> = gens.iter().map(|g| g.transpose()).collect();
    let transposes: Vec<&Matrix> = transposes.iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut pool: Vec<Matrix> = gens.iter().map(|&g| g.clone()).collect();
    for sample in 0..opts.samples {
        let i = rng.gen_range(0..pool.len());
        let j = rng.gen_range(0..pool.len());
        let word = pool[i].mul(&pool[j])?;
        if pool.len() < 32 {
            pool.push(word);
        } else {
            let k = rng.gen_range(gens.len()..pool.len());
            pool[k] = word;
        }
        let mut theta = Matrix::zeros(field, d, d);
        for m in &pool {
            theta = theta.add(&m.scale_raw(rng.gen_range(0..q)))?;
        }
        let cp = char_poly(&theta)?;
        for (lambda, _) in cp.roots() {
            let shifted = theta.sub(&Matrix::scalar(&lambda, d))?;
            let kernel = SubspaceBasis::span(field, d, &shifted.kernel());
            if checked_power(q, kernel.dim()).is_none_or(|n| n > KERNEL_LIMIT) {
                continue;
            }
            for v in lines_of(field, kernel.vectors(), d) {
                let s = spin_under(field, gens, &v);
                if !s.is_full() {
                    return Ok(Irreducibility::Reducible(s));
                }
            }
            let dual_kernel = SubspaceBasis::span(field, d, &shifted.transpose().kernel());
            let w = &dual_kernel.vectors()[0];
            let dual = spin_under(field, &transposes, w);
            if !dual.is_full() {
                return Ok(Irreducibility::Reducible(dual.annihilator()));
            }
            return Ok(Irreducibility::Irreducible(IrreducibleWitness::Norton {
                theta,
                eigenvalue: lambda,
                samples_used: sample + 1,
            }));
        }
    }
    Err(Error::Undecided(opts.samples))
}

/// Action on an invariant subspace, in its echelon basis.
pub fn sub_action(rep: &Representation, sub: &SubspaceBasis) -> Result<Representation> {
    if sub.is_zero() {
        return Err(Error::ShapeMismatch("zero submodule".into()));
    }
    rep.map_matrices(|g| {
        let cols = sub
            .vectors()
            .iter()
            .map(|b| {
                sub.coordinates(&g.mul_vec(b))
                    .ok_or_else(|| Error::InvalidRepresentation("subspace is not invariant".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(rep.field(), sub.dim(), &cols))
    })
}

/// Action on `V / sub`, in the basis of standard vectors at the non-pivot
/// positions of `sub`.
pub fn quotient_action(rep: &Representation, sub: &SubspaceBasis) -> Result<Representation> {
    if sub.is_full() {
        return Err(Error::ShapeMismatch("quotient by the whole space".into()));
    }
    let free: Vec<usize> = (0..rep.dim()).filter(|i| !sub.pivots().contains(i)).collect();
    for v in sub.vectors() {
        for g in rep.generators() {
            if !sub.contains(&g.mul_vec(v)) {
                return Err(Error::InvalidRepresentation("subspace is not invariant".into()));
            }
        }
    }
    rep.map_matrices(|g| {
        let cols: Vec<Vec<u64>> = free
            .iter()
            .map(|&j| {
                let r = sub.residue(&g.column(j));
                free.iter().map(|&i| r[i]).collect()
            })
            .collect();
        Ok(Matrix::from_columns(rep.field(), free.len(), &cols))
    })
}

fn lift_from_sub(sub: &SubspaceBasis, inner: &SubspaceBasis) -> SubspaceBasis {
    let field = sub.field();
    let vectors: Vec<Vec<u64>> = inner
        .vectors()
        .iter()
        .map(|c| {
            let mut v = vec![0u64; sub.ambient_dim()];
            for (ci, b) in c.iter().zip(sub.vectors()) {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = field.add(*x, field.mul(*ci, y));
                }
            }
            v
        })
        .collect();
    SubspaceBasis::span(field, sub.ambient_dim(), &vectors)
}

fn lift_from_quotient(sub: &SubspaceBasis, inner: &SubspaceBasis) -> SubspaceBasis {
    let free: Vec<usize> = (0..sub.ambient_dim()).filter(|i| !sub.pivots().contains(i)).collect();
    let mut out = sub.clone();
    for c in inner.vectors() {
        let mut v = vec![0u64; sub.ambient_dim()];
        for (&i, &x) in free.iter().zip(c) {
            v[i] = x;
        }
        out.insert(&v);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionFactor {
    pub dim: usize,
    /// Present when the factor is faithful of dimension `p^n`.
    pub invariants: Option<InvariantTuple>,
    pub action: Representation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionSeries {
    /// Strictly ascending from the zero space to the whole space.
    pub chain: Vec<SubspaceBasis>,
    /// `factors[i]` is `chain[i + 1] / chain[i]`.
    pub factors: Vec<CompositionFactor>,
}

impl CompositionSeries {
    pub fn chain_dims(&self) -> Vec<usize> {
        self.chain.iter().map(SubspaceBasis::dim).collect()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

pub fn composition_series(rep: &Representation) -> Result<CompositionSeries> {
    composition_series_with(rep, &IrreducibilityOptions::default())
}

pub fn composition_series_with(rep: &Representation, opts: &IrreducibilityOptions) -> Result<CompositionSeries> {
    let (upper, actions) = split_recursively(rep, opts)?;
    let mut chain = vec![SubspaceBasis::zero(rep.field(), rep.dim())];
    chain.extend(upper);
    let factors = actions
        .into_iter()
        .map(|action| {
            let invariants = if action.is_faithful() {
                invariants(&action).ok()
            } else {
                None
            };
            CompositionFactor {
                dim: action.dim(),
                invariants,
                action,
            }
        })
        .collect();
    Ok(CompositionSeries { chain, factors })
}

/// Nonzero members of a composition series together with the factor actions.
fn split_recursively(
    rep: &Representation,
    opts: &IrreducibilityOptions,
) -> Result<(Vec<SubspaceBasis>, Vec<Representation>)> {
    let u = match is_irreducible_with(rep, opts)? {
        Irreducibility::Irreducible(_) => {
            return Ok((vec![SubspaceBasis::full(rep.field(), rep.dim())], vec![rep.clone()]))
        }
        Irreducibility::Reducible(u) => u,
    };
    let (lower, mut factors) = split_recursively(&sub_action(rep, &u)?, opts)?;
    let (upper, upper_factors) = split_recursively(&quotient_action(rep, &u)?, opts)?;
    let mut chain: Vec<SubspaceBasis> = lower.iter().map(|s| lift_from_sub(&u, s)).collect();
    chain.extend(upper.iter().map(|s| lift_from_quotient(&u, s)));
    factors.extend(upper_factors);
    Ok((chain, factors))
}

/// Whether the submodules form a chain. Only offered while `order^dim` is at
/// most [`EXHAUSTIVE_LIMIT`]; the socle is found by spinning every line.
pub fn is_uniserial(rep: &Representation) -> Result<bool> {
    let q = rep.field().order();
    match checked_power(q, rep.dim()) {
        Some(total) if total <= EXHAUSTIVE_LIMIT => {}
        _ => {
            return Err(Error::TooLarge(format!(
                "uniserial check needs {q}^{} <= 2^24",
                rep.dim()
            )))
        }
    }
    let mut current = rep.clone();
    loop {
        let d = current.dim();
        if d == 1 {
            return Ok(true);
        }
        let field = current.field().clone();
        let gens = current.generators();
        let count = line_count(q, d);
        // a spin of least dimension is a minimal submodule; the socle is simple
        // iff that submodule lies in every other spin
        let (_, best) = (0..count)
            .into_par_iter()
            .map(|i| (spin_under(&field, &gens, &line_at(q, d, i)).dim(), i))
            .min()
            .expect("at least one line");
        let minimal = spin_under(&field, &gens, &line_at(q, d, best));
        if minimal.is_full() {
            return Ok(true);
        }
        let unique = (0..count)
            .into_par_iter()
            .all(|i| minimal.is_subspace_of(&spin_under(&field, &gens, &line_at(q, d, i))));
        if !unique {
            return Ok(false);
        }
        current = quotient_action(&current, &minimal)?;
    }
}

/// Basis of `{X : X R(g) = R'(g) X for every generator g}` (`dim R' x dim R`).
pub fn hom_space(r1: &Representation, r2: &Representation) -> Result<Vec<Matrix>> {
    if r1.field() != r2.field() || r1.rank() != r2.rank() {
        return Err(Error::MixedFields);
    }
    let field = r1.field();
    let (d1, d2) = (r1.dim(), r2.dim());
    let unknowns = d1 * d2;
    // current solution space, as unknown vectors (row-major X)
    let mut basis: Vec<Vec<u64>> = (0..unknowns)
        .map(|i| {
            let mut v = vec![0u64; unknowns];
            v[i] = 1;
            v
        })
        .collect();
    for (g1, g2) in r1.generators().into_iter().zip(r2.generators()) {
        if basis.is_empty() {
            break;
        }
        let images: Vec<Vec<u64>> = basis
            .iter()
            .map(|v| {
                let x = Matrix::from_values(field, d2, d1, v.clone()).expect("shape");
                let r = x
                    .mul(g1)
                    .expect("shape")
                    .sub(&g2.mul(&x).expect("shape"))
                    .expect("shape");
                r.values().to_vec()
            })
            .collect();
        let system = Matrix::from_columns(field, unknowns, &images);
        basis = system
            .kernel()
            .iter()
            .map(|c| {
                let mut v = vec![0u64; unknowns];
                for (ci, b) in c.iter().zip(&basis) {
                    if *ci == 0 {
                        continue;
                    }
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x = field.add(*x, field.mul(*ci, y));
                    }
                }
                v
            })
            .collect();
    }
    let canonical = SubspaceBasis::span(field, unknowns, &basis);
    Ok(canonical
        .vectors()
        .iter()
        .map(|v| Matrix::from_values(field, d2, d1, v.clone()).expect("shape"))
        .collect())
}

/// For irreducible modules: isomorphic iff some intertwiner is nonzero.
pub fn irreducibles_isomorphic(r1: &Representation, r2: &Representation) -> Result<bool> {
    if r1.dim() != r2.dim() {
        return Ok(false);
    }
    Ok(!hom_space(r1, r2)?.is_empty())
}

/// The unital associative algebra generated by the images, as a subspace of
/// the `dim^2`-dimensional matrix space (row-major coordinates).
pub fn enveloping_algebra(rep: &Representation) -> SubspaceBasis {
    let field = rep.field();
    let d = rep.dim();
    let mut alg = SubspaceBasis::zero(field, d * d);
    let id = Matrix::identity(field, d);
    let mut work: Vec<Vec<u64>> = alg.insert(id.values()).into_iter().collect();
    let gens = rep.generators();
    while let Some(w) = work.pop() {
        if alg.is_full() {
            break;
        }
        let m = Matrix::from_values(field, d, d, w).expect("shape");
        for g in &gens {
            if let Some(u) = alg.insert(g.mul(&m).expect("shape").values()) {
                work.push(u);
            }
        }
    }
    alg
}

/// Whether the designated `alpha`-action lies in the enveloping algebra.
pub fn condition_c(rep: &Representation, alpha_action: &Matrix) -> Result<bool> {
    if alpha_action.field() != rep.field() {
        return Err(Error::MixedFields);
    }
    if alpha_action.rows() != rep.dim() || alpha_action.cols() != rep.dim() {
        return Err(Error::ShapeMismatch("alpha action has the wrong size".into()));
    }
    Ok(enveloping_algebra(rep).contains(alpha_action.values()))
}

/// The same matrices read over an extension field `k`.
pub fn extend_scalars(rep: &Representation, k: &Field) -> Result<Representation> {
    let emb = rep.field().embedding_into(k).map_err(|_| Error::NotExtension)?;
    rep.map_matrices(|m| m.map_field(&emb))
}

fn lcm(a: usize, b: usize) -> usize {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// A finite extension of the representation's field over which every
/// generator image and every `p`-th power of one has all its eigenvalues;
/// its degree over the base is the lcm of the splitting degrees of those
/// characteristic polynomials.
pub fn splitting_extension(rep: &Representation) -> Result<Field> {
    let field = rep.field();
    let p = field.characteristic();
    let mut k = 1;
    for g in rep.generators() {
        k = lcm(k, char_poly(g)?.splitting_degree()?);
        k = lcm(k, char_poly(&g.pow(p)?)?.splitting_degree()?);
    }
    if k == 1 {
        return Ok(field.clone());
    }
    let modulus = find_irreducible(&field.prime_subfield(), field.degree() * k);
    make_extension(&modulus)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralSummand {
    /// Eigenvalue of `y_1^p` on this summand.
    pub eigenvalue: FieldElem,
    pub subspace: SubspaceBasis,
    pub action: Representation,
}

/// Primary decomposition under `P = R(y_1)^p`, which is central in the
/// image in characteristic `p`. Every eigenvalue of `P` must lie in the field.
pub fn split_by_central(rep: &Representation) -> Result<Vec<CentralSummand>> {
    let field = rep.field();
    let d = rep.dim();
    let central = rep.y()[0].pow(field.characteristic())?;
    for g in rep.generators() {
        if !central.commutator(g)?.is_zero() {
            return Err(Error::RelationViolated("y1^p does not commute with the image".into()));
        }
    }
    let roots = char_poly(&central)?.roots();
    if roots.iter().map(|(_, m)| m).sum::<usize>() != d {
        return Err(Error::DoesNotSplit);
    }
    roots
        .into_iter()
        .map(|(lambda, mult)| {
            let shifted = central.sub(&Matrix::scalar(&lambda, d))?.pow(mult as u64)?;
            let subspace = SubspaceBasis::span(field, d, &shifted.kernel());
            let action = sub_action(rep, &subspace)?;
            Ok(CentralSummand {
                eigenvalue: lambda,
                subspace,
                action,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Every pair `(A, B)` of `d x d` matrices; `n = 1` only.
    Exhaustive,
    /// The standard module of dimension `n + 2`.
    Witness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub rep: Option<Representation>,
    pub pairs_tested: u64,
    pub found: bool,
}

fn matrix_at(field: &Field, d: usize, mut idx: u64) -> Matrix {
    let q = field.order();
    let mut data = vec![0u64; d * d];
    for slot in data.iter_mut() {
        *slot = idx % q;
        idx /= q;
    }
    Matrix::from_values(field, d, d, data).expect("shape")
}

/// Looks for a faithful `d`-dimensional representation of `h(n)` over `GF(p)`.
///
/// An `h(1)`-representation is the same as a pair `(A, B)` with
/// `C = [A, B]` commuting with both, so the exhaustive mode enumerates pairs
/// in index order and keeps the first with `C != 0`.
pub fn search_min_faithful(n: usize, p: u64, d: usize, mode: SearchMode) -> Result<SearchOutcome> {
    let field = Field::prime(p)?;
    match mode {
        SearchMode::Witness => {
            if d != n + 2 {
                return Err(Error::TooLarge(format!("witness mode needs d = n + 2, got d = {d}")));
            }
            let rep = build_standard(&HeisenbergAlgebra::new(n, &field)?);
            Ok(SearchOutcome {
                rep: Some(rep),
                pairs_tested: 0,
                found: true,
            })
        }
        SearchMode::Exhaustive => {
            let within = n == 1 && checked_power(p, 2 * d * d).is_some_and(|t| t <= 1 << 32);
            if !within || d == 0 {
                return Err(Error::TooLarge(format!(
                    "exhaustive search needs n = 1 and p^(2d^2) <= 2^32 (n={n}, p={p}, d={d})"
                )));
            }
            let total = p.pow((d * d) as u32);
            let hit = (0..total).into_par_iter().find_map_first(|a| {
                let am = matrix_at(&field, d, a);
                (0..total).find_map(|b| {
                    let bm = matrix_at(&field, d, b);
                    let c = am.commutator(&bm).expect("square");
                    let ok = !c.is_zero()
                        && am.commutator(&c).expect("square").is_zero()
                        && bm.commutator(&c).expect("square").is_zero();
                    ok.then_some((a, b, am.clone(), bm, c))
                })
            });
            Ok(match hit {
                Some((a, b, am, bm, c)) => SearchOutcome {
                    rep: Some(Representation::new(vec![am], vec![bm], c)?),
                    pairs_tested: a * total + b + 1,
                    found: true,
                },
                None => SearchOutcome {
                    rep: None,
                    pairs_tested: total * total,
                    found: false,
                },
            })
        }
    }
}
