//! Named verification suites: each expands into independent seeded cases that
//! run on a worker pool; results are sorted by case key.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use heisenberg_core::canonical::{companion, frobenius_form, jordan_block, jordan_form, min_poly};
use heisenberg_core::classify::{canonical_pair, classify, invariants, triple_similarity};
use heisenberg_core::heisenberg::{
    build_companion_rep, build_d, build_m, build_restriction_rep, build_v, lower_shift, restriction_blocks,
    validate_rep,
};
use heisenberg_core::json::{elem_to_json, matrix_to_json, params_to_json, poly_to_json};
use heisenberg_core::module_theory::{
    composition_series, condition_c, extend_scalars, hom_space, is_irreducible, is_uniserial, search_min_faithful,
    split_by_central, splitting_extension, SearchMode,
};
use heisenberg_core::poly::{find_irreducible, is_irreducible as poly_irreducible};
use heisenberg_core::{Field, FieldElem, HeisenbergAlgebra, Matrix, ModuleParams, Poly, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    Prop21,
    Thm22,
    Cor23,
    Cor24,
    Cor25,
    Cor26,
    Ex27,
    Sec3MinDim,
    Sec4Restriction,
    Thm51,
    Note52,
}

impl SuiteName {
    pub const ALL: [SuiteName; 11] = [
        SuiteName::Prop21,
        SuiteName::Thm22,
        SuiteName::Cor23,
        SuiteName::Cor24,
        SuiteName::Cor25,
        SuiteName::Cor26,
        SuiteName::Ex27,
        SuiteName::Sec3MinDim,
        SuiteName::Sec4Restriction,
        SuiteName::Thm51,
        SuiteName::Note52,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Prop21 => "prop21",
            SuiteName::Thm22 => "thm22",
            SuiteName::Cor23 => "cor23",
            SuiteName::Cor24 => "cor24",
            SuiteName::Cor25 => "cor25",
            SuiteName::Cor26 => "cor26",
            SuiteName::Ex27 => "ex27",
            SuiteName::Sec3MinDim => "sec3-min-dim",
            SuiteName::Sec4Restriction => "sec4-restriction",
            SuiteName::Thm51 => "thm51",
            SuiteName::Note52 => "note52",
        }
    }

    /// One-line statement of the property the suite checks.
    pub fn anchor(self) -> &'static str {
        match self {
            SuiteName::Prop21 => "V(alpha,beta,gamma) is a faithful irreducible module of dimension p^n with z acting as alpha",
            SuiteName::Thm22 => "a faithful irreducible module of dimension p^n is V(alpha,beta,gamma) for recoverable parameters",
            SuiteName::Cor23 => "faithful irreducible modules have dimension p^n * m; over a splitting field every faithful factor has dimension p^n",
            SuiteName::Cor24 => "faithful modules of dimension p^n are isomorphic iff their (alpha, delta, epsilon) invariants agree",
            SuiteName::Cor25 => "p x p triples with [A,B] = C != 0 central are similar iff their determinants agree",
            SuiteName::Cor26 => "D is similar to the companion matrix of X^p - |D| and to J_p(|D|^(1/p))",
            SuiteName::Ex27 => "with delta = (1,0,..,0), D is the companion matrix of X^2 - alpha when p = 2 and nilpotent when p > 2",
            SuiteName::Sec3MinDim => "the minimum faithful dimension of h(n) is n + 2, except 2 for n = 1 in characteristic 2",
            SuiteName::Sec4Restriction => "restricting V over GF(p^m) to GF(p) gives a faithful irreducible module of dimension p^n * m",
            SuiteName::Thm51 => "the companion module of f(X^p) is irreducible for irreducible f and uniserial with m factors for f = (X - gamma^p)^m",
            SuiteName::Note52 => "over a splitting field the companion module of irreducible f splits into m non-isomorphic summands of dimension p",
        }
    }
}

impl FromStr for SuiteName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SuiteName::ALL.into_iter().find(|n| n.as_str() == s).ok_or_else(|| {
            let names: Vec<_> = SuiteName::ALL.iter().map(|n| n.as_str()).collect();
            format!("unknown suite {s:?}; expected one of {}", names.join(", "))
        })
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteSpec {
    pub name: SuiteName,
    /// Empty lists select the suite's defaults.
    pub ps: Vec<u64>,
    pub ns: Vec<usize>,
    pub ms: Vec<usize>,
    pub seed: u64,
}

impl SuiteSpec {
    pub fn new(name: SuiteName) -> SuiteSpec {
        SuiteSpec {
            name,
            ps: Vec::new(),
            ns: Vec::new(),
            ms: Vec::new(),
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub case: String,
    pub input: Value,
    pub message: String,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: SuiteName,
    pub seed: u64,
    pub cases_run: usize,
    pub cases_passed: usize,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    pub wall_time: Duration,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.as_str(),
            "anchor": self.suite.anchor(),
            "seed": self.seed,
            "cases_run": self.cases_run,
            "cases_passed": self.cases_passed,
            "failures": self.failures.iter().map(|f| json!({
                "case": f.case,
                "input": f.input,
                "message": f.message,
            })).collect::<Vec<_>>(),
            "notes": self.notes,
            "wall_time_ms": self.wall_time.as_millis() as u64,
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} (seed {})", self.suite, self.seed)?;
        writeln!(f, "  {}", self.suite.anchor())?;
        for note in &self.notes {
            writeln!(f, "  {note}")?;
        }
        for fail in &self.failures {
            writeln!(f, "  FAIL {}: {}", fail.case, fail.message)?;
            writeln!(f, "       input {}", fail.input)?;
        }
        write!(
            f,
            "  {}/{} cases passed in {:.2?}: {}",
            self.cases_passed,
            self.cases_run,
            self.wall_time,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

/// Parameters outside the desk-scale bounds of a suite.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct OutOfBounds(pub String);

type CaseResult = Result<Option<String>, String>;
type Check = Box<dyn FnOnce() -> CaseResult + Send>;

struct Case {
    key: String,
    input: Value,
    check: Check,
}

impl Case {
    fn new(key: String, input: Value, check: impl FnOnce() -> CaseResult + Send + 'static) -> Case {
        Case {
            key,
            input,
            check: Box::new(check),
        }
    }
}

fn lib<T>(r: heisenberg_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Expands and runs a suite on `jobs` worker threads (0 = rayon default).
pub fn run_suite(spec: &SuiteSpec, jobs: usize) -> Result<Report, OutOfBounds> {
    let start = Instant::now();
    let cases = build_cases(spec)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| OutOfBounds(e.to_string()))?;
    let mut results: Vec<(String, Value, CaseResult)> = pool.install(|| {
        cases
            .into_par_iter()
            .map(|c| {
                let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(c.check))
                    .unwrap_or_else(|_| Err("check panicked".to_string()));
                (c.key, c.input, outcome)
            })
            .collect()
    });
    results.sort_by(|a, b| a.0.cmp(&b.0));
    let mut report = Report {
        suite: spec.name,
        seed: spec.seed,
        cases_run: results.len(),
        cases_passed: 0,
        failures: Vec::new(),
        notes: Vec::new(),
        wall_time: Duration::ZERO,
    };
    for (key, input, outcome) in results {
        match outcome {
            Ok(note) => {
                report.cases_passed += 1;
                if let Some(note) = note {
                    report.notes.push(format!("{key}: {note}"));
                }
            }
            Err(message) => report.failures.push(Failure {
                case: key,
                input,
                message,
            }),
        }
    }
    report.wall_time = start.elapsed();
    Ok(report)
}

fn or_default<T: Clone>(given: &[T], default: &[T]) -> Vec<T> {
    if given.is_empty() {
        default.to_vec()
    } else {
        given.to_vec()
    }
}

fn check_primes(ps: &[u64], max: u64) -> Result<(), OutOfBounds> {
    for &p in ps {
        if Field::prime(p).is_err() || p > max {
            return Err(OutOfBounds(format!("p = {p} must be a prime <= {max}")));
        }
    }
    Ok(())
}

fn check_range(label: &str, values: &[usize], lo: usize, hi: usize) -> Result<(), OutOfBounds> {
    for &v in values {
        if v < lo || v > hi {
            return Err(OutOfBounds(format!("{label} = {v} must lie in {lo}..={hi}")));
        }
    }
    Ok(())
}

fn build_cases(spec: &SuiteSpec) -> Result<Vec<Case>, OutOfBounds> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.name {
        SuiteName::Prop21 => prop21(spec, &mut rng),
        SuiteName::Thm22 => thm22(spec, &mut rng),
        SuiteName::Cor23 => cor23(spec, &mut rng),
        SuiteName::Cor24 => cor24(spec, &mut rng),
        SuiteName::Cor25 => cor25(spec, &mut rng),
        SuiteName::Cor26 => cor26(spec, &mut rng),
        SuiteName::Ex27 => ex27(spec),
        SuiteName::Sec3MinDim => sec3(spec),
        SuiteName::Sec4Restriction => sec4(spec, &mut rng),
        SuiteName::Thm51 => thm51(spec, &mut rng),
        SuiteName::Note52 => note52(spec, &mut rng),
    }
}

fn gf(p: u64) -> Field {
    Field::prime(p).expect("bounds checked")
}

fn rand_elem(f: &Field, rng: &mut ChaCha8Rng) -> FieldElem {
    f.elem(rng.gen_range(0..f.order())).expect("in range")
}

fn rand_nonzero(f: &Field, rng: &mut ChaCha8Rng) -> FieldElem {
    f.elem(rng.gen_range(1..f.order())).expect("in range")
}

fn rand_invertible(f: &Field, d: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let data = (0..d * d).map(|_| rng.gen_range(0..f.order())).collect();
        let m = Matrix::from_values(f, d, d, data).expect("shape");
        if !m.det().expect("square").is_zero() {
            return m;
        }
    }
}

fn rand_poly(f: &Field, len: usize, rng: &mut ChaCha8Rng) -> Poly {
    Poly::from_values(f, (0..len).map(|_| rng.gen_range(0..f.order())).collect()).expect("in range")
}

fn rand_monic(f: &Field, degree: usize, rng: &mut ChaCha8Rng) -> Poly {
    let mut c: Vec<u64> = (0..degree).map(|_| rng.gen_range(0..f.order())).collect();
    c.push(1);
    Poly::from_values(f, c).expect("in range")
}

fn rand_irreducible(f: &Field, degree: usize, rng: &mut ChaCha8Rng) -> Poly {
    loop {
        let g = rand_monic(f, degree, rng);
        if poly_irreducible(&g).expect("monic") {
            return g;
        }
    }
}

/// An irreducible modulus other than `X`, so the class of `X` is nonzero.
fn rand_modulus(f: &Field, degree: usize, rng: &mut ChaCha8Rng) -> Poly {
    loop {
        let q = rand_irreducible(f, degree, rng);
        if q.coeff(0) != 0 {
            return q;
        }
    }
}

fn rand_params(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> ModuleParams {
    let alpha = rand_nonzero(f, rng);
    let betas = (0..n).map(|_| rand_elem(f, rng)).collect();
    let gammas = (0..n).map(|_| rand_elem(f, rng)).collect();
    ModuleParams::new(alpha, betas, gammas).expect("valid")
}

/// Every parameter tuple when there are at most `limit`, else `samples` seeded draws.
fn params_sweep(f: &Field, n: usize, limit: u64, samples: usize, rng: &mut ChaCha8Rng) -> Vec<ModuleParams> {
    let q = f.order();
    let total = (q - 1) * q.pow(2 * n as u32);
    if total > limit {
        return (0..samples).map(|_| rand_params(f, n, rng)).collect();
    }
    (0..total)
        .map(|mut idx| {
            let mut digit = || {
                let d = idx % q;
                idx /= q;
                f.elem(d).expect("in range")
            };
            let betas: Vec<_> = (0..n).map(|_| digit()).collect();
            let gammas: Vec<_> = (0..n).map(|_| digit()).collect();
            let alpha = f.elem(idx + 1).expect("in range");
            ModuleParams::new(alpha, betas, gammas).expect("valid")
        })
        .collect()
}

fn v_rep(params: &ModuleParams) -> heisenberg_core::Result<Representation> {
    build_v(&HeisenbergAlgebra::new(params.rank(), params.field())?, params)
}

fn params_key(params: &ModuleParams) -> String {
    let e = |x: &FieldElem| x.to_string();
    format!(
        "a={} b=[{}] g=[{}]",
        e(&params.alpha),
        params.betas.iter().map(e).collect::<Vec<_>>().join(","),
        params.gammas.iter().map(e).collect::<Vec<_>>().join(",")
    )
}

fn params_input(p: u64, seed: u64, params: &ModuleParams) -> Value {
    json!({"p": p, "n": params.rank(), "seed": seed, "params": params_to_json(params)})
}

fn prop21(spec: &SuiteSpec, rng: &mut ChaCha8Rng) -> Result<Vec<Case>, OutOfBounds> {
    let ps = or_default(&spec.ps, &[2, 3]);
    let ns = or_default(&spec.ns, &[1, 2]);
    check_primes(&ps, 7)?;
    check_range("n", &ns, 1, 3)?;
    let mut cases = Vec::new();
    for &p in &ps {
        for &n in &ns {
            if p.pow(n as u32) > 64 {
                return Err(OutOfBounds(format!("p^n = {p}^{n} exceeds 64")));
            }
            let f = gf(p);
            for params in params_sweep(&f, n, 200, 20, rng) {
                let samples: Vec<Vec<u64>> = (0..4)
                    .map(|_| (0..2 * n + 1).map(|_| rng.gen_range(0..p)).collect())
                    .collect();
                let key = format!("p={p} n={n} {}", params_key(&params));
                let input = params_input(p, spec.seed, &params);
                cases.push(Case::new(key, input, move || prop21_case(&params, &samples)));
            }
        }
    }
    Ok(cases)
}

fn prop21_case(params: &ModuleParams, samples: &[Vec<u64>]) -> CaseResult {
    let f = params.field();
    let p = f.characteristic() as usize;
    let n = params.rank();
    let r = lib(v_rep(params))?;
    let report = validate_rep(&r);
    ensure(report.is_valid(), || format!("relations fail: {:?}", report.violations))?;
    ensure(report.faithful, || "not faithful".into())?;
    ensure(r.dim() == p.pow(n as u32), || format!("dim {}", r.dim()))?;
    ensure(report.z_scalar.as_ref() == Some(&params.alpha), || {
        "z is not alpha I".into()
    })?;
    for k in 0..n {
        let want_x = Poly::linear(&params.betas[k]).pow(p as u32);
        let want_y = Poly::linear(&params.gammas[k]).pow(p as u32);
        ensure(lib(min_poly(&r.x()[k]))? == want_x, || {
            format!("min poly of x{}", k + 1)
        })?;
        ensure(lib(min_poly(&r.y()[k]))? == want_y, || {
            format!("min poly of y{}", k + 1)
        })?;
        // x^m y = y x^m + m alpha x^(m-1)
        for m in 1..=p as u64 {
            let xm = lib(r.x()[k].pow(m))?;
            let lhs = lib(xm.mul(&r.y()[k]))?;
            let shift =
                lib(lib(r.x()[k].pow(m - 1))?.scale(&params.alpha.mul(&f.from_int(m as i64)).expect("same field")))?;
            let rhs = lib(lib(r.y()[k].mul(&xm))?.add(&shift))?;
            ensure(lhs == rhs, || format!("commutation identity fails for m={m}"))?;
        }
    }
    ensure(lib(is_irreducible(&r))?.is_irreducible(), || "reducible".into())?;
    if p > 2 {
        for c in samples {
            if c[..2 * n].iter().all(|&x| x == 0) {
                continue;
            }
            let mp = lib(min_poly(&lib(r.image(c))?))?;
            let shape = mp.degree() == Some(p) && (1..p).all(|i| mp.coeff(i) == 0);
            ensure(shape, || format!("min poly {mp} of element {c:?} is not (X - l)^p"))?;
        }
    }
    Ok(None)
}

fn thm22(spec: &SuiteSpec, rng: &mut ChaCha8Rng) -> Result<Vec<Case>, OutOfBounds> {
    let ps = or_default(&spec.ps, &[2, 3]);
    let ns = or_default(&spec.ns, &[1, 2]);
    check_primes(&ps, 7)?;
    check_range("n", &ns, 1, 3)?;
    let mut cases = Vec::new();
    for &p in &ps {
        for &n in &ns {
            if p.pow(n as u32) > 64 {
                return Err(OutOfBounds(format!("p^n = {p}^{n} exceeds 64")));
            }
            let f = gf(p);
            let dim = p.pow(n as u32) as usize;
            for params in params_sweep(&f, n, 500, 30, rng) {
                let key = format!("p={p} n={n} {}", params_key(&params));
                let input = params_input(p, spec.seed, &params);
                cases.push(Case::new(key, input, move || thm22_case(&params, None)));
            }
            for i in 0..20 {
                let params = rand_params(&f, n, rng);
                let t = rand_invertible(&f, dim, rng);
                let key = format!("p={p} n={n} conjugate#{i:02} {}", params_key(&params));
                let mut input = params_input(p, spec.seed, &params);
                input["conjugator"] = matrix_to_json(&t);
                cases.push(Case::new(key, input, move || thm22_case(&params, Some(&t))));
            }
        }
    }
    Ok(cases)
}

fn thm22_case(params: &ModuleParams, conj: Option<&Matrix>) -> CaseResult {
    let v = lib(v_rep(params))?;
    let r = match conj {
        Some(t) => lib(v.conjugate(t))?,
        None => v.clone(),
    };
    let (got, t) = lib(classify(&r))?;
    ensure(&got == params, || format!("classified as {}", params_key(&got)))?;
    ensure(lib(r.conjugate(&t))? == v, || {
        "transform does not conjugate to V".into()
    })?;
    Ok(None)
}

fn cor23(spec: &SuiteSpec, rng: &mut ChaCha8Rng) -> Result<Vec<Case>, OutOfBounds> {
    let ps = or_default(&spec.ps, &[2, 3]);
    let ns = or_default(&spec.ns, &[1]);
    let ms = or_default(&spec.ms, &[1, 2]);
    check_primes(&ps, 5)?;
    check_range("n", &ns, 1, 2)?;
    check_range("m", &ms, 1, 3)?;
    let mut cases = Vec::new();
    for &p in &ps {
        for &n in &ns {
            for &m in &ms {
                let dim = p.pow(n as u32) * m as u64;
                if dim > 16 {
                    return Err(OutOfBounds(format!("p^n * m = {dim} exceeds 16")));
                }
                let f = gf(p);
                for i in 0..3 {
                    let q = rand_modulus(&f, m, rng);
                    let fs: Vec<Poly> = (0..n).map(|_| rand_poly(&f, m, rng)).collect();
                    let gs: Vec<Poly> = (0..n).map(|_| rand_poly(&f, m, rng)).collect();
                    let key = format!("p={p} n={n} m={m} #{i}");
                    let input = json!({
                        "p": p, "n": n, "m": m, "seed": spec.seed,
                        "q": poly_to_json(&q),
                        "f": fs.iter().map(poly_to_json).collect::<Vec<_>>(),
                        "g": gs.iter().map(poly_to_json).collect::<Vec<_>>(),
                    });
                    cases.push(Case::new(key, input, move || cor23_case(&q, &fs, &gs)));
                }
            }
        }
    }
    Ok(cases)
}

fn cor23_case(q: &Poly, fs: &[Poly], gs: &[Poly]) -> CaseResult {
    let res = lib(build_restriction_rep(q, fs, gs, None))?;
    let r = &res.rep;
    let p = r.field().characteristic() as usize;
    let pn = p.pow(r.rank() as u32);
    ensure(lib(is_irreducible(r))?.is_irreducible(), || {
        "restricted module is reducible".into()
    })?;
    ensure(r.dim() % pn == 0, || format!("dim {} not divisible by {pn}", r.dim()))?;
    let k = lib(splitting_extension(r))?;
    let series = lib(composition_series(&lib(extend_scalars(r, &k))?))?;
    for factor in &series.factors {
        if factor.action.is_faithful() {
            ensure(factor.dim == pn, || {
                format!("faithful factor of dim {} over the splitting field", factor.dim)
            })?;
        }
    }
    Ok(Some(format!(
        "dim {} over GF({}); {} factors of dim {pn} over GF({})",
        r.dim(),
        p,
        series.len(),
        k.order()
    )))
}

fn cor24(spec: &SuiteSpec, rng: &mut ChaCha8Rng) -> Result<Vec<Case>, OutOfBounds> {
    let ps = or_default(&spec.ps, &[2, 3]);
    let ns = or_default(&spec.ns, &[1]);
    check_primes(&ps, 7)?;
    check_range("n", &ns, 1, 2)?;
    let mut cases = Vec::new();
    for &p in &ps {
        for &n in &ns {
            if p.pow(n as u32) > 25 {
                return Err(OutOfBounds(format!("p^n = {p}^{n} exceeds 25")));
            }
            let f = gf(p);
            let dim = p.pow(n as u32) as usize;
            for i in 0..20 {
                let a = rand_params(&f, n, rng);
                let b = if rng.gen_bool(0.5) {
                    a.clone()
                } else {
                    rand_params(&f, n, rng)
                };
                let ta = rand_invertible(&f, dim, rng);
                let tb = rand_invertible(&f, dim, rng);
                let key = format!("p={p} n={n} pair#{i:02}");
                let input = json!({
                    "p": p, "n": n, "seed": spec.seed,
                    "first": params_to_json(&a), "second": params_to_json(&b),
                    "conjugators": [matrix_to_json(&ta), matrix_to_json(&tb)],
                });
                cases.push(Case::new(key, input, move || cor24_case(&a, &b, &ta, &tb)));
            }
        }
    }
    Ok(cases)
}

fn cor24_case(a: &ModuleParams, b: &ModuleParams, ta: &Matrix, tb: &Matrix) -> CaseResult {
    let ra = lib(lib(v_rep(a))?.conjugate(ta))?;
    let rb = lib(lib(v_rep(b))?.conjugate(tb))?;
    let ia = lib(invariants(&ra))?;
    let ib = lib(invariants(&rb))?;
    let p = a.field().characteristic();
    ensure(ia.deltas.iter().zip(&a.betas).all(|(d, b)| *d == b.pow(p)), || {
        "delta is not beta^p".into()
    })?;
    let iso = !lib(hom_space(&ra, &rb))?.is_empty();
    ensure(iso == (ia == ib), || {
        format!("isomorphic = {iso} but invariants equal = {}", ia == ib)
    })?;
    Ok(None)
}

fn canonical_triple(alpha: &FieldElem, beta: &FieldElem, gamma: &FieldElem) -> (Matrix, Matrix, Matrix) {
    let p = alpha.field().characteristic() as usize;
    let a = build_m(alpha, beta).expect("alpha nonzero");
    let b = Matrix::scalar(gamma, p)
        .add(&lower_shift(alpha.field(), p))
        .expect("shape");
    (a, b, Matrix::scalar(alpha, p))
}

fn conjugate_triple(t: &Matrix, triple: &(Matrix, Matrix, Matrix)) -> (Matrix, Matrix, Matrix) {
    let tinv = t.inverse().expect("invertible");
    let c = |m: &Matrix| t.mul(m).and_then(|x| x.mul(&tinv)).expect("shape");
    (c(&triple.0), c(&triple.1), c(&triple.2))
}

fn cor25(spec: &SuiteSpec, rng: &mut ChaCha8Rng) -> Result<Vec<Case>, OutOfBounds> {
    let ps = or_default(&spec.ps, &[3, 5]);
    check_primes(&ps, 13)?;
    let mut cases = Vec::new();
    for &p in &ps {
        let f = gf(p);
        for i in 0..50 {
            let abc: Vec<FieldElem> = vec![rand_nonzero(&f, rng), rand_elem(&f, rng), rand_elem(&f, rng)];
            let other: Vec<FieldElem> = if rng.gen_bool(0.5) {
                abc.clone()
            } else {
                vec![rand_nonzero(&f, rng), rand_elem(&f, rng), rand_elem(&f, rng)]
            };
            let t1 = rand_invertible(&f, p as usize, rng);
            let t2 = rand_invertible(&f, p as usize, rng);
            let key = format!("p={p} triple#{i:02}");
            let input = json!({
                "p": p, "seed": spec.seed,
                "first": abc.iter().map(elem_to_json).collect::<Vec<_>>(),
                "second": other.iter().map(elem_to_json).collect::<Vec<_>>(),
                "conjugators": [matrix_to_json(&t1), matrix_to_json(&t2)],
            });
            cases.push(Case::new(key, input, move || cor25_case(&abc, &other, &t1, &t2)));
        }
    }
    Ok(cases)
}

fn cor25_case(abc: &[FieldElem], other: &[FieldElem], t1: &Matrix, t2: &Matrix) -> CaseResult {
    let c1 = canonical_triple(&abc[0], &abc[1], &abc[2]);
    let c2 = canonical_triple(&other[0], &other[1], &other[2]);
    let x1 = conjugate_triple(t1, &c1);
    let x2 = conjugate_triple(t2, &c2);
    let cp = lib(canonical_pair(&x1.0, &x1.1, &x1.2))?;
    ensure(cp.a == c1.0 && cp.b == c1.1, || "canonical pair not reproduced".into())?;
    ensure(
        (cp.alpha.clone(), cp.beta.clone(), cp.gamma.clone()) == (abc[0].clone(), abc[1].clone(), abc[2].clone()),
        || "canonical parameters differ".into(),
    )?;
    let dets = |t: &(Matrix, Matrix, Matrix)| -> Result<Vec<FieldElem>, String> {
        Ok(vec![lib(t.0.det())?, lib(t.1.det())?, lib(t.2.det())?])
    };
    let same = dets(&x1)? == dets(&x2)?;
    let x = lib(triple_similarity((&x1.0, &x1.1, &x1.2), (&x2.0, &x2.1, &x2.2)))?;
    ensure(x.is_some() == same, || {
        format!("similar = {} but determinants equal = {same}", x.is_some())
    })?;
    ensure(same == (abc == other), || {
        "determinants do not separate the parameters".into()
    })?;
    if let Some(x) = x {
        let conj = conjugate_triple(&lib(x.inverse())?, &x1);
        ensure(conj == x2, || "returned transform does not conjugate".into())?;
    }
    Ok(None)
}

fn cor26(spec: &SuiteSpec, rng: &mut ChaCha8Rng) -> Result<Vec<Case>, OutOfBounds> {
    let ps = or_default(&spec.ps, &[2, 3, 5]);
    check_primes(&ps, 13)?;
    let mut cases = Vec::new();
    for &p in &ps {
        let f = gf(p);
        for i in 0..30 {
            let alpha = rand_nonzero(&f, rng);
            let deltas: Vec<FieldElem> = (0..p - 1).map(|_| rand_elem(&f, rng)).collect();
            let key = format!("p={p} delta#{i:02}");
            let input = json!({
                "p": p, "seed": spec.seed, "alpha": elem_to_json(&alpha),
                "deltas": deltas.iter().map(elem_to_json).collect::<Vec<_>>(),
            });
            cases.push(Case::new(key, input, move || cor26_case(&alpha, &deltas)));
        }
    }
    Ok(cases)
}

fn cor26_case(alpha: &FieldElem, deltas: &[FieldElem]) -> CaseResult {
    let f = alpha.field();
    let p = f.characteristic() as usize;
    let d = lib(build_d(alpha, deltas))?;
    let det = lib(d.det())?;
    let mut target = vec![f.zero(); p + 1];
    target[0] = det.neg();
    target[p] = f.one();
    let target = lib(Poly::from_elems(f, &target))?;
    let form = lib(frobenius_form(&d))?;
    ensure(form.invariant_factors == vec![target.clone()], || {
        format!(
            "invariant factors {:?}",
            form.invariant_factors.iter().map(|g| g.to_string()).collect::<Vec<_>>()
        )
    })?;
    let jf = lib(jordan_form(&d))?;
    ensure(jf.jordan == jordan_block(&det.pth_root(), p), || {
        "Jordan form is not a single block".into()
    })?;
    ensure(lib(d.conjugate(&form.transform))? == lib(companion(&target))?, || {
        "Frobenius transform check".into()
    })?;
    Ok(None)
}

fn ex27(spec: &SuiteSpec) -> Result<Vec<Case>, OutOfBounds> {
    let ps = or_default(&spec.ps, &[2, 3, 5]);
    check_primes(&ps, 13)?;
    let mut cases = Vec::new();
    for &p in &ps {
        let f = gf(p);
        for a in 1..p {
            let alpha = f.from_int(a as i64);
            let key = format!("p={p} alpha={a}");
            let input = json!({"p": p, "alpha": a});
            cases.push(Case::new(key, input, move || {
                let f = alpha.field();
                let mut deltas = vec![f.zero(); p as usize - 1];
                deltas[0] = f.one();
                let d = lib(build_d(&alpha, &deltas))?;
                if p == 2 {
                    let c = lib(companion(
                        &Poly::from_elems(f, &[alpha.neg(), f.zero(), f.one()]).expect("same field"),
                    ))?;
                    ensure(d == c, || "D is not the companion matrix of X^2 - alpha".into())?;
                    Ok(Some("companion of X^2 - alpha".into()))
                } else {
                    ensure(lib(d.pow(p))?.is_zero(), || "D^p != 0".into())?;
                    Ok(Some("nilpotent".into()))
                }
            }));
        }
    }
    Ok(cases)
}

fn sec3(spec: &SuiteSpec) -> Result<Vec<Case>, OutOfBounds> {
    let ps = or_default(&spec.ps, &[2, 3]);
    let ns = or_default(&spec.ns, &[1, 2, 3]);
    check_primes(&ps, 7)?;
    check_range("n", &ns, 1, 8)?;
    let mut cases = Vec::new();
    for &p in &ps {
        for &n in &ns {
            let key = format!("p={p} n={n}");
            let input = json!({"p": p, "n": n});
            cases.push(Case::new(key, input, move || {
                let mut notes = Vec::new();
                if n == 1 {
                    for d in 1..=2usize {
                        let out = lib(search_min_faithful(1, p, d, SearchMode::Exhaustive))?;
                        let expected = d == 2 && p == 2;
                        ensure(out.found == expected, || format!("d={d}: found = {}", out.found))?;
                        if let Some(r) = &out.rep {
                            let rep = validate_rep(r);
                            ensure(rep.is_valid() && rep.faithful, || "witness is not faithful".into())?;
                            notes.push(format!("d={d}: found after {} pairs", out.pairs_tested));
                        } else {
                            notes.push(format!("d={d}: none found over {} pairs", out.pairs_tested));
                        }
                    }
                }
                let out = lib(search_min_faithful(n, p, n + 2, SearchMode::Witness))?;
                let r = out.rep.ok_or("no witness")?;
                let rep = validate_rep(&r);
                ensure(rep.is_valid() && rep.faithful && r.dim() == n + 2, || {
                    "standard module check".into()
                })?;
                notes.push(format!("d={}: witness found", n + 2));
                Ok(Some(notes.join("; ")))
            }));
        }
    }
    Ok(cases)
}

fn sec4(spec: &SuiteSpec, rng: &mut ChaCha8Rng) -> Result<Vec<Case>, OutOfBounds> {
    let ps = or_default(&spec.ps, &[2, 3]);
    let ns = or_default(&spec.ns, &[1]);
    let ms = or_default(&spec.ms, &[2, 3]);
    check_primes(&ps, 5)?;
    check_range("n", &ns, 1, 2)?;
    check_range("m", &ms, 1, 4)?;
    let mut cases = Vec::new();
    for &p in &ps {
        for &n in &ns {
            for &m in &ms {
                let dim = p.pow(n as u32) * m as u64;
                if dim > 32 {
                    return Err(OutOfBounds(format!("p^n * m = {dim} exceeds 32")));
                }
                let f = gf(p);
                for i in 0..5 {
                    let q = rand_modulus(&f, m, rng);
                    let fs: Vec<Poly> = (0..n).map(|_| rand_poly(&f, m, rng)).collect();
                    let gs: Vec<Poly> = (0..n).map(|_| rand_poly(&f, m, rng)).collect();
                    let key = format!("p={p} n={n} m={m} #{i}");
                    let input = json!({
                        "p": p, "n": n, "m": m, "seed": spec.seed,
                        "q": poly_to_json(&q),
                        "f": fs.iter().map(poly_to_json).collect::<Vec<_>>(),
                        "g": gs.iter().map(poly_to_json).collect::<Vec<_>>(),
                    });
                    cases.push(Case::new(key, input, move || sec4_case(&q, &fs, &gs)));
                }
            }
        }
    }
    Ok(cases)
}

fn sec4_case(q: &Poly, fs: &[Poly], gs: &[Poly]) -> CaseResult {
    let res = lib(build_restriction_rep(q, fs, gs, None))?;
    let r = &res.rep;
    let p = q.field().characteristic() as usize;
    let m = q.degree().unwrap_or(0);
    let report = validate_rep(r);
    ensure(report.is_valid() && report.faithful, || {
        "restricted module invalid or not faithful".into()
    })?;
    ensure(r.dim() == p.pow(r.rank() as u32) * m, || format!("dim {}", r.dim()))?;
    ensure(lib(is_irreducible(r))?.is_irreducible(), || "reducible".into())?;
    ensure(lib(condition_c(r, &res.alpha_action))?, || {
        "alpha action outside the enveloping algebra".into()
    })?;
    if r.rank() == 1 {
        let (a, b, d) = lib(restriction_blocks(p, q, &fs[0], &gs[0]))?;
        ensure(r.x()[0] == a && r.y()[0] == b && r.z() == &d, || {
            "block matrices differ".into()
        })?;
    }
    Ok(None)
}

fn thm51(spec: &SuiteSpec, rng: &mut ChaCha8Rng) -> Result<Vec<Case>, OutOfBounds> {
    let ps = or_default(&spec.ps, &[2, 3]);
    let ms = or_default(&spec.ms, &[2, 3]);
    check_primes(&ps, 5)?;
    check_range("m", &ms, 1, 4)?;
    let mut cases = Vec::new();
    for &p in &ps {
        for &m in &ms {
            if (p as f64).log2() * (p as usize * m) as f64 > 24.0 {
                return Err(OutOfBounds(format!("{p}^({p}*{m}) exceeds the 2^24 uniserial bound")));
            }
            let f = gf(p);
            for i in 0..5 {
                let (alpha, beta) = (rand_nonzero(&f, rng), rand_elem(&f, rng));
                let g = rand_monic(&f, m, rng);
                let key = format!("p={p} m={m} minpoly#{i}");
                let input = json!({"p": p, "m": m, "seed": spec.seed, "alpha": elem_to_json(&alpha), "beta": elem_to_json(&beta), "f": poly_to_json(&g)});
                cases.push(Case::new(key, input, move || {
                    let r = lib(build_companion_rep(&alpha, &beta, &g))?;
                    ensure(validate_rep(&r).is_valid(), || "relations fail".into())?;
                    ensure(lib(min_poly(&r.x()[0]))? == Poly::linear(&beta).pow(p as u32), || {
                        "min poly of x".into()
                    })?;
                    ensure(lib(min_poly(&r.y()[0]))? == g.compose_power(p as usize), || {
                        "min poly of y".into()
                    })?;
                    Ok(None)
                }));
            }
            for i in 0..3 {
                let (alpha, beta) = (rand_nonzero(&f, rng), rand_elem(&f, rng));
                let g = if i == 0 {
                    find_irreducible(&f, m)
                } else {
                    rand_irreducible(&f, m, rng)
                };
                let key = format!("p={p} m={m} irreducible#{i}");
                let input = json!({"p": p, "m": m, "seed": spec.seed, "alpha": elem_to_json(&alpha), "beta": elem_to_json(&beta), "f": poly_to_json(&g)});
                cases.push(Case::new(key, input, move || {
                    let r = lib(build_companion_rep(&alpha, &beta, &g))?;
                    ensure(lib(is_irreducible(&r))?.is_irreducible(), || "reducible".into())?;
                    Ok(None)
                }));
            }
            for i in 0..3 {
                let (alpha, beta, gamma) = (rand_nonzero(&f, rng), rand_elem(&f, rng), rand_elem(&f, rng));
                let key = format!("p={p} m={m} uniserial#{i}");
                let input = json!({"p": p, "m": m, "seed": spec.seed, "alpha": elem_to_json(&alpha), "beta": elem_to_json(&beta), "gamma": elem_to_json(&gamma)});
                cases.push(Case::new(key, input, move || thm51_uniserial(&alpha, &beta, &gamma, m)));
            }
        }
    }
    Ok(cases)
}

fn thm51_uniserial(alpha: &FieldElem, beta: &FieldElem, gamma: &FieldElem, m: usize) -> CaseResult {
    let f = alpha.field();
    let p = f.characteristic();
    let g = Poly::linear(&gamma.pow(p)).pow(m as u32);
    let r = lib(build_companion_rep(alpha, beta, &g))?;
    ensure(lib(is_uniserial(&r))?, || "not uniserial".into())?;
    let series = lib(composition_series(&r))?;
    ensure(series.len() == m, || format!("{} composition factors", series.len()))?;
    let want = ModuleParams::new(alpha.clone(), vec![beta.clone()], vec![gamma.clone()]).expect("valid");
    for factor in &series.factors {
        let (got, _) = lib(classify(&factor.action))?;
        ensure(got == want, || format!("factor classifies as {}", params_key(&got)))?;
    }
    Ok(None)
}

fn note52(spec: &SuiteSpec, rng: &mut ChaCha8Rng) -> Result<Vec<Case>, OutOfBounds> {
    let ps = or_default(&spec.ps, &[2, 3]);
    let ms = or_default(&spec.ms, &[2, 3]);
    check_primes(&ps, 5)?;
    check_range("m", &ms, 1, 4)?;
    let mut cases = Vec::new();
    for &p in &ps {
        for &m in &ms {
            if p as usize * m > 16 {
                return Err(OutOfBounds(format!("p * m = {} exceeds 16", p as usize * m)));
            }
            let f = gf(p);
            for i in 0..3 {
                let (alpha, beta) = (rand_nonzero(&f, rng), rand_elem(&f, rng));
                let g = rand_irreducible(&f, m, rng);
                let key = format!("p={p} m={m} #{i}");
                let input = json!({"p": p, "m": m, "seed": spec.seed, "alpha": elem_to_json(&alpha), "beta": elem_to_json(&beta), "f": poly_to_json(&g)});
                cases.push(Case::new(key, input, move || note52_case(&alpha, &beta, &g)));
            }
        }
    }
    Ok(cases)
}

fn note52_case(alpha: &FieldElem, beta: &FieldElem, g: &Poly) -> CaseResult {
    let p = alpha.field().characteristic();
    let m = g.degree().unwrap_or(0);
    let r = lib(build_companion_rep(alpha, beta, g))?;
    let k = lib(splitting_extension(&r))?;
    let emb = lib(alpha.field().embedding_into(&k))?;
    let rk = lib(extend_scalars(&r, &k))?;
    let parts = lib(split_by_central(&rk))?;
    ensure(parts.len() == m, || format!("{} summands", parts.len()))?;
    let gk = lib(g.map_field(&emb))?;
    let mut epsilons = Vec::new();
    for part in &parts {
        ensure(part.action.dim() == p as usize, || {
            format!("summand of dim {}", part.action.dim())
        })?;
        let (got, _) = lib(classify(&part.action))?;
        ensure(
            got.alpha == lib(emb.map(alpha))? && got.betas[0] == lib(emb.map(beta))?,
            || "alpha or beta changed".into(),
        )?;
        ensure(lib(gk.eval(&got.gammas[0].pow(p)))?.is_zero(), || {
            "gamma^p is not a root of f".into()
        })?;
        epsilons.push(got.gammas[0].pow(p));
    }
    let mut distinct = epsilons.clone();
    distinct.sort_by_key(|e| e.value());
    distinct.dedup();
    ensure(distinct.len() == m, || "summands share an epsilon invariant".into())?;
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            ensure(lib(hom_space(&parts[i].action, &parts[j].action))?.is_empty(), || {
                "isomorphic summands".into()
            })?;
        }
    }
    Ok(Some(format!("{m} summands of dim {p} over GF({})", k.order())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for name in SuiteName::ALL {
            assert_eq!(name.as_str().parse::<SuiteName>().unwrap(), name);
        }
        assert!("thm99".parse::<SuiteName>().is_err());
    }

    #[test]
    fn sweep_is_exhaustive_when_small() {
        let f = gf(3);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let all = params_sweep(&f, 1, 1000, 5, &mut rng);
        assert_eq!(all.len(), 18);
        let mut keys: Vec<_> = all.iter().map(params_key).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 18);
    }
}
