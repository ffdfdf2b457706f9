//! Evaluation of κ-traces on `H_W(ν)` by reduction: letters with eigenvalue
//! `λ ≠ κ` under the group element are removed by the regular step, words made
//! only of κ-eigenletters are reduced by the special step to group elements
//! with a smaller κ-eigenspace, and degree-zero terms are read off the central
//! function.

mod frame;
mod gram;
mod nu0;

pub use frame::{eigenframe, EigenFrame, Projectors};
pub use gram::{bilinear_gram, monomial_basis, GramReport};
pub use nu0::{nu0_oracle, symmetrized_monomial};

use std::collections::HashMap;
use std::sync::{Arc, Mutex, RwLock};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraElement, AlgebraError, Letter, Monomial};
use crate::coxgroup::Kappa;
use crate::glc::{build_glc, CentralFunction, GlcError};
use crate::linalg::{dot, Matrix};
use crate::scalar::rational::{int, rat};
use crate::scalar::{Cyclotomic, NuPoly, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("central function violates ground level condition row {0}")]
    GlcViolation(usize),
    #[error("central function has {found} values, the group has {expected} classes")]
    WrongClassCount { expected: usize, found: usize },
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Glc(#[from] GlcError),
    #[error("{0}")]
    Scalar(#[from] ScalarError),
    #[error("group element has eigenvalue kappa but a nonzero central value was supplied")]
    EigenvalueKappaPresent,
    #[error("a numeric assignment of the coupling constants is required")]
    NumericNuRequired,
    #[error("reduction did not lower the degree (internal error)")]
    NoProgress,
}

/// How the evaluator makes its free choices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Letters in order; lowest-index symplectic pair; eigenbasis as computed.
    Deterministic,
    /// Random letter order, random eigenspace basis, random pair order.
    Randomized(u64),
}

struct SpecialBasis {
    /// `B_t` with dual `Y_t`: `C(B_s, Y_t) = δ_st`.
    letters: Vec<Letter>,
    duals: Vec<Letter>,
}

/// A κ-trace determined by its values on the group algebra.
pub struct KappaTrace {
    alg: Arc<Algebra>,
    kappa: Kappa,
    central: CentralFunction,
    nu: Option<Vec<Cyclotomic>>,
    strategy: Strategy,
    /// Skip odd monomials instead of reducing them.
    assume_even: bool,
    rng: Mutex<ChaCha8Rng>,
    memo: RwLock<HashMap<Monomial, NuPoly>>,
    projectors: RwLock<HashMap<usize, Arc<Projectors>>>,
}

impl KappaTrace {
    /// Checks the central function against the ground level conditions
    /// (symbolically, or at `nu` when given).
    pub fn new(alg: Arc<Algebra>, kappa: Kappa, central: CentralFunction, nu: Option<Vec<Cyclotomic>>) -> Result<KappaTrace, TraceError> {
        let group = alg.group();
        if central.values.len() != group.classes().len() {
            return Err(TraceError::WrongClassCount { expected: group.classes().len(), found: central.values.len() });
        }
        let sys = build_glc(group, kappa);
        match &nu {
            Some(point) => {
                let x = central.evaluate(point)?;
                let res = sys.residuals(&x, point)?;
                if let Some(bad) = res.iter().position(|r| !r.is_zero()) {
                    return Err(TraceError::GlcViolation(bad));
                }
            }
            None => {
                if let Some(bad) = sys.symbolic_residuals(&central).iter().position(|r| !r.is_zero()) {
                    return Err(TraceError::GlcViolation(bad));
                }
            }
        }
        Ok(KappaTrace {
            alg,
            kappa,
            central,
            nu,
            strategy: Strategy::Deterministic,
            assume_even: true,
            rng: Mutex::new(ChaCha8Rng::seed_from_u64(0)),
            memo: RwLock::new(HashMap::new()),
            projectors: RwLock::new(HashMap::new()),
        })
    }

    /// A fresh evaluator (empty cache) with the given strategy.
    pub fn with_strategy(&self, strategy: Strategy) -> KappaTrace {
        let seed = match strategy {
            Strategy::Deterministic => 0,
            Strategy::Randomized(s) => s,
        };
        KappaTrace {
            alg: Arc::clone(&self.alg),
            kappa: self.kappa,
            central: self.central.clone(),
            nu: self.nu.clone(),
            strategy,
            assume_even: self.assume_even,
            rng: Mutex::new(ChaCha8Rng::seed_from_u64(seed)),
            memo: RwLock::new(HashMap::new()),
            projectors: RwLock::new(HashMap::new()),
        }
    }

    /// A fresh evaluator that runs odd monomials through the full reduction
    /// instead of returning zero for them directly.
    pub fn reducing_odd(&self) -> KappaTrace {
        let mut tr = self.with_strategy(self.strategy);
        tr.assume_even = false;
        tr
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn kappa(&self) -> Kappa {
        self.kappa
    }

    pub fn central(&self) -> &CentralFunction {
        &self.central
    }

    pub fn nu(&self) -> Option<&[Cyclotomic]> {
        self.nu.as_deref()
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    fn randomized(&self) -> bool {
        matches!(self.strategy, Strategy::Randomized(_))
    }

    fn finish(&self, p: NuPoly) -> Result<NuPoly, TraceError> {
        match &self.nu {
            Some(point) => Ok(p.specialize(point)?),
            None => Ok(p),
        }
    }

    /// `str(x)` as a polynomial in ν (a constant when ν is numeric).
    pub fn evaluate(&self, x: &AlgebraElement) -> Result<NuPoly, TraceError> {
        if !Arc::ptr_eq(x.algebra(), &self.alg) {
            return Err(AlgebraError::SystemMismatch.into());
        }
        let mut total = NuPoly::zero(self.alg.nvars());
        for (m, c) in x.terms() {
            let v = self.eval_monomial(m)?;
            if !v.is_zero() {
                total.add_assign_ref(&(c * &v));
            }
        }
        self.finish(total)
    }

    fn eval_monomial(&self, m: &Monomial) -> Result<NuPoly, TraceError> {
        let degree = m.degree();
        if degree % 2 == 1 && self.assume_even {
            // every κ-trace is even
            return Ok(NuPoly::zero(self.alg.nvars()));
        }
        if degree == 0 {
            let class = self.alg.group().class_of(m.g);
            return self.finish(self.central.values[class].clone());
        }
        if let Some(v) = self.memo.read().expect("memo lock").get(m) {
            return Ok(v.clone());
        }
        let n = self.alg.rank();
        let mut letters = Vec::with_capacity(degree);
        for (alpha, exps) in [(0, &m.e0), (1, &m.e1)] {
            for i in 0..n {
                for _ in 0..exps[i] {
                    letters.push(Letter::generator(alpha, i, n));
                }
            }
        }
        let value = self.finish(self.eval_word(letters, m.g)?)?;
        self.memo.write().expect("memo lock").insert(m.clone(), value.clone());
        Ok(value)
    }

    /// Evaluates an element known to be of lower degree than `bound`, or of
    /// the same degree but smaller κ-eigenspace.
    fn eval_lower(&self, y: &AlgebraElement, bound: usize) -> Result<NuPoly, TraceError> {
        if y.degree() > bound {
            return Err(TraceError::NoProgress);
        }
        self.evaluate(y)
    }

    fn projectors(&self, g: usize) -> Arc<Projectors> {
        if let Some(p) = self.projectors.read().expect("projector lock").get(&g) {
            return Arc::clone(p);
        }
        let p = Arc::new(Projectors::new(self.alg.group(), g));
        self.projectors.write().expect("projector lock").insert(g, Arc::clone(&p));
        p
    }

    fn word(&self, letters: &[Letter], g: usize) -> Result<AlgebraElement, TraceError> {
        // at numeric ν the reflection terms are evaluated as they appear
        let mut x = self.alg.one();
        for l in letters {
            x = self.alg.mul_letter_at(&x, l, self.nu.as_deref());
        }
        Ok(x.mul_group(g))
    }

    /// `str(l_1 ⋯ l_k g)` for arbitrary letters.
    fn eval_word(&self, mut u: Vec<Letter>, g: usize) -> Result<NuPoly, TraceError> {
        let k = u.len();
        let nvars = self.alg.nvars();
        let proj = self.projectors(g);
        let mut order: Vec<usize> = (0..k).collect();
        if self.randomized() {
            order.shuffle(&mut *self.rng.lock().expect("rng lock"));
        }
        let kappa_c = self.kappa.scalar();
        let one = Cyclotomic::from_int(1);
        let mut total = NuPoly::zero(nvars);
        for &p in &order {
            let x = u[p].clone();
            for (idx, pm) in &proj.parts {
                if proj.is_kappa(*idx, self.kappa) {
                    continue;
                }
                let c = x.transform(pm);
                if c.is_zero() {
                    continue;
                }
                // str(u_1..c..u_k g) = str((u_c − c U) g) + κλ/(1−κλ) str((U c − c U) g)
                let lambda = proj.eigenvalue(*idx);
                let kl = &kappa_c * &lambda;
                let coeff = &kl * &(&one - &kl).inv()?;
                let rest: Vec<Letter> = u.iter().enumerate().filter(|(q, _)| *q != p).map(|(_, l)| l.clone()).collect();
                let mut uc = u.clone();
                uc[p] = c.clone();
                let mut c_rest = vec![c.clone()];
                c_rest.extend(rest.iter().cloned());
                let mut rest_c = rest;
                rest_c.push(c);
                let w_uc = self.word(&uc, g)?;
                let w_cu = self.word(&c_rest, g)?;
                let w_uc2 = self.word(&rest_c, g)?;
                let mut y = w_uc.sub(&w_cu)?;
                y.add_scaled(&w_uc2.sub(&w_cu)?, &NuPoly::constant(coeff, nvars));
                total.add_assign_ref(&self.eval_lower(&y, k.saturating_sub(2))?);
            }
            match proj.kappa_part(self.kappa) {
                Some(pk) => u[p] = x.transform(pk),
                None => return Ok(total),
            }
            if u[p].is_zero() {
                return Ok(total);
            }
        }
        total.add_assign_ref(&self.eval_special(&u, g)?);
        Ok(total)
    }

    fn special_basis(&self, g: usize) -> Result<SpecialBasis, TraceError> {
        let group = self.alg.group();
        let n = group.rank();
        let mut c = group.eigenspace(g, self.kappa);
        if self.randomized() && !c.is_empty() {
            let mut rng = self.rng.lock().expect("rng lock");
            let e = c.len();
            loop {
                let t = Matrix::from_rows(
                    (0..e)
                        .map(|_| (0..e).map(|_| Cyclotomic::from_int(rng.gen_range(-3..=3))).collect())
                        .collect(),
                );
                if t.rank() == e {
                    c = (0..e)
                        .map(|i| {
                            let mut v = vec![Cyclotomic::from_int(0); n];
                            for j in 0..e {
                                for (a, b) in v.iter_mut().zip(&c[j]) {
                                    *a += &(&t[(i, j)] * b);
                                }
                            }
                            v
                        })
                        .collect();
                    break;
                }
            }
        }
        let e = c.len();
        let gram = Matrix::from_rows((0..e).map(|i| (0..e).map(|j| dot(&c[i], &c[j])).collect()).collect());
        let gi = gram.inverse().expect("the form is nondegenerate on a real subspace");
        let zero = vec![Cyclotomic::from_int(0); n];
        let mut letters = Vec::new();
        let mut duals = Vec::new();
        for i in 0..e {
            let mut dual = vec![Cyclotomic::from_int(0); n];
            for j in 0..e {
                for (a, b) in dual.iter_mut().zip(&c[j]) {
                    *a += &(&gi[(i, j)] * b);
                }
            }
            let ei = Letter::from_parts(c[i].clone(), zero.clone());
            let fi = Letter::from_parts(zero.clone(), dual);
            // C(e_i, f_i) = 1: dual of e_i is f_i, dual of f_i is −e_i
            letters.push(ei.clone());
            duals.push(fi.clone());
            letters.push(fi);
            duals.push(ei.scale(&Cyclotomic::from_int(-1)));
        }
        if self.randomized() {
            let mut idx: Vec<usize> = (0..letters.len()).collect();
            idx.shuffle(&mut *self.rng.lock().expect("rng lock"));
            letters = idx.iter().map(|&i| letters[i].clone()).collect();
            duals = idx.iter().map(|&i| duals[i].clone()).collect();
        }
        Ok(SpecialBasis { letters, duals })
    }

    /// Words whose letters all lie in the κ-eigenspace of `g`.
    fn eval_special(&self, u: &[Letter], g: usize) -> Result<NuPoly, TraceError> {
        let basis = self.special_basis(g)?;
        self.special_level(u.to_vec(), g, &basis, 0)
    }

    fn special_level(&self, u: Vec<Letter>, g: usize, basis: &SpecialBasis, t: usize) -> Result<NuPoly, TraceError> {
        let nvars = self.alg.nvars();
        let k = u.len();
        if u.iter().any(|l| l.is_zero()) {
            return Ok(NuPoly::zero(nvars));
        }
        if t == basis.letters.len() {
            // every component has been split off
            return Ok(NuPoly::zero(nvars));
        }
        let b = &basis.letters[t];
        let y = &basis.duals[t];
        let betas: Vec<Cyclotomic> = u.iter().map(|l| l.pairing(y)).collect();
        let rests: Vec<Letter> = u.iter().zip(&betas).map(|(l, beta)| l.sub(&b.scale(beta))).collect();
        let active: Vec<usize> = (0..k).filter(|&q| !betas[q].is_zero()).collect();
        let mut total = NuPoly::zero(nvars);
        for mask in 0u64..(1u64 << active.len()) {
            let chosen: Vec<usize> = active.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &q)| q).collect();
            let mut coeff = Cyclotomic::from_int(1);
            for &q in &chosen {
                coeff = &coeff * &betas[q];
            }
            let pick = |q: usize| chosen.contains(&q);
            if chosen.is_empty() {
                total.add_assign_ref(&self.special_level(rests.clone(), g, basis, t + 1)?);
                continue;
            }
            let p = chosen.len();
            let ws: Vec<Letter> = (0..k).map(|q| if pick(q) { b.clone() } else { rests[q].clone() }).collect();
            let m2: Vec<Letter> = (0..k).filter(|&q| !pick(q)).map(|q| rests[q].clone()).collect();
            let mut bm: Vec<Letter> = vec![b.clone(); p];
            bm.extend(m2.iter().cloned());
            let mut x: Vec<Letter> = vec![b.clone(); p + 1];
            x.extend(m2.iter().cloned());
            let mut xy = x.clone();
            xy.push(y.clone());
            let mut yx = vec![y.clone()];
            yx.extend(x);
            let w_s = self.word(&ws, g)?;
            let w_bm = self.word(&bm, g)?;
            // str(b^p M g) = −1/(p+1) str(([b^{p+1} M, y] − (p+1) b^p M) g)
            let mut nu_part = self.word(&xy, g)?.sub(&self.word(&yx, g)?)?;
            nu_part.add_scaled(&w_bm, &NuPoly::from_rational(int(-(p as i64 + 1)), nvars));
            let lower = w_s.sub(&w_bm)?;
            let mut value = self.eval_lower(&lower, k.saturating_sub(2))?;
            let step = self.eval_lower(&nu_part, k)?;
            value.add_scaled(&step, &Cyclotomic::from_rational(rat(-1, p as i64 + 1)));
            total.add_scaled(&value, &coeff);
        }
        Ok(total)
    }
}

/// Result of [`verify_trace_property`].
#[derive(Debug, Clone, Default)]
pub struct TraceReport {
    pub pairs: usize,
    pub conjugations: usize,
    pub violations: Vec<String>,
}

impl TraceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `str([f, g]_κ) = 0` on random homogeneous pairs of degree at most
/// `max_degree`, and `str(τ⁻¹ x τ) = str(x)` for random `τ ∈ W`.
pub fn verify_trace_property<R: Rng>(tr: &KappaTrace, samples: usize, max_degree: usize, rng: &mut R) -> Result<TraceReport, TraceError> {
    let alg = tr.algebra();
    let group = alg.group();
    let symbolic = tr.nu().is_none();
    let mut report = TraceReport::default();
    for _ in 0..samples {
        let df = rng.gen_range(0..=max_degree);
        let dg = rng.gen_range(0..=max_degree);
        let f = alg.random_homogeneous(rng, df, 2, symbolic);
        let g = alg.random_homogeneous(rng, dg, 2, symbolic);
        let br = alg.kappa_bracket(&f, &g, tr.kappa())?;
        let v = tr.evaluate(&br)?;
        report.pairs += 1;
        if !v.is_zero() {
            report.violations.push(format!("str([{f}, {g}]) = {v}"));
        }
        let tau = rng.gen_range(0..group.order());
        let conj = alg.group_element(group.inverse(tau)).mul(&f)?.mul(&alg.group_element(tau))?;
        let a = tr.evaluate(&conj)?;
        let b = tr.evaluate(&f)?;
        report.conjugations += 1;
        if a != b {
            report.violations.push(format!("str(τ⁻¹ ({f}) τ) = {a} but str({f}) = {b}"));
        }
    }
    Ok(report)
}
