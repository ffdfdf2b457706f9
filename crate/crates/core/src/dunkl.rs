//! Dunkl operators `D_i = ∂_i + ½ Σ_{v∈R} ν_v v_i (1 − R_v)/(x, v)` on
//! polynomials, and the resulting representation of `H_W(ν)` with
//! unnormalized generators `y_{αi} = x_i + (−1)^α D_i = √2 a_{αi}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::AlgebraElement;
use crate::coxgroup::CoxeterGroup;
use crate::linalg::{dot, Matrix};
use crate::scalar::rational::{int, rat};
use crate::scalar::{Cyclotomic, NuPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DunklError {
    #[error("difference quotient by (x, v) left a remainder")]
    DivisibilityFailure,
    #[error("axis {index} out of range for rank {rank}")]
    AxisOutOfRange { index: usize, rank: usize },
    #[error("element belongs to a different root system")]
    SystemMismatch,
}

/// A polynomial in `x_1..x_N` with coefficients polynomial in ν.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyFunction {
    rank: usize,
    nvars: usize,
    terms: BTreeMap<Vec<u16>, NuPoly>,
}

impl PolyFunction {
    pub fn zero(rank: usize, nvars: usize) -> Self {
        PolyFunction { rank, nvars, terms: BTreeMap::new() }
    }

    pub fn monomial(exps: Vec<u16>, nvars: usize) -> Self {
        let mut p = PolyFunction::zero(exps.len(), nvars);
        p.terms.insert(exps, NuPoly::one(nvars));
        p
    }

    pub fn one(rank: usize, nvars: usize) -> Self {
        PolyFunction::monomial(vec![0; rank], nvars)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u16>, NuPoly> {
        &self.terms
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, e: Vec<u16>, c: &NuPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(|| NuPoly::zero(self.nvars));
        entry.add_assign_ref(c);
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &PolyFunction) -> PolyFunction {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &PolyFunction) -> PolyFunction {
        self.add(&other.scale(&NuPoly::from_rational(int(-1), self.nvars)))
    }

    pub fn scale(&self, c: &NuPoly) -> PolyFunction {
        let mut out = PolyFunction::zero(self.rank, self.nvars);
        for (e, d) in &self.terms {
            out.add_term(e.clone(), &(d * c));
        }
        out
    }

    pub fn scale_const(&self, c: &Cyclotomic) -> PolyFunction {
        self.scale(&NuPoly::constant(c.clone(), self.nvars))
    }

    /// `x_i · p`.
    pub fn mul_x(&self, i: usize) -> PolyFunction {
        let mut out = PolyFunction::zero(self.rank, self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[i] += 1;
            out.terms.insert(e2, c.clone());
        }
        out
    }

    /// `∂p/∂x_i`.
    pub fn partial(&self, i: usize) -> PolyFunction {
        let mut out = PolyFunction::zero(self.rank, self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, &c.scale_rational(&int(e[i] as i64)));
        }
        out
    }

    /// `p(A x)` for an `N × N` matrix `A`.
    pub fn substitute(&self, a: &Matrix) -> PolyFunction {
        let n = self.rank;
        // images of the coordinates: x_i ↦ Σ_j A_ij x_j
        let images: Vec<PolyFunction> = (0..n)
            .map(|i| {
                let mut p = PolyFunction::zero(n, self.nvars);
                for j in 0..n {
                    let mut e = vec![0; n];
                    e[j] = 1;
                    p.add_term(e, &NuPoly::constant(a[(i, j)].clone(), self.nvars));
                }
                p
            })
            .collect();
        let mut out = PolyFunction::zero(n, self.nvars);
        for (e, c) in &self.terms {
            let mut term = PolyFunction::zero(n, self.nvars);
            term.terms.insert(vec![0; n], c.clone());
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = term.mul(&images[i]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn mul(&self, other: &PolyFunction) -> PolyFunction {
        let mut out = PolyFunction::zero(self.rank, self.nvars);
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                let sum: Vec<u16> = e.iter().zip(f).map(|(a, b)| a + b).collect();
                out.add_term(sum, &(c * d));
            }
        }
        out
    }

    /// Exact quotient by the linear form `(x, v)`.
    pub fn divide_linear(&self, v: &[Cyclotomic]) -> Result<PolyFunction, DunklError> {
        let k = v.iter().rposition(|c| !c.is_zero()).ok_or(DunklError::DivisibilityFailure)?;
        let inv = v[k].inv().map_err(|_| DunklError::DivisibilityFailure)?;
        let mut rest = self.clone();
        let mut quotient = PolyFunction::zero(self.rank, self.nvars);
        // peel off the term with the highest power of x_k until nothing is left
        while let Some((e, c)) = rest.terms.iter().max_by_key(|(e, _)| e[k]).map(|(e, c)| (e.clone(), c.clone())) {
            if e[k] == 0 {
                return Err(DunklError::DivisibilityFailure);
            }
            let mut q = e.clone();
            q[k] -= 1;
            let coeff = c.scale(&inv);
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let mut t = q.clone();
                t[j] += 1;
                rest.add_term(t, &(-&coeff.scale(vj)));
            }
            quotient.add_term(q, &coeff);
        }
        Ok(quotient)
    }
}

impl fmt::Debug for PolyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PolyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{k}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

struct RootTerm {
    root: Vec<Cyclotomic>,
    class: usize,
    reflection: Matrix,
}

/// The Dunkl representation of `H_W(ν)` on `C[x_1..x_N]`.
pub struct DunklRep {
    group: Arc<CoxeterGroup>,
    nvars: usize,
    roots: Vec<RootTerm>,
    inv_sqrt2: Cyclotomic,
}

impl DunklRep {
    pub fn new(group: Arc<CoxeterGroup>) -> DunklRep {
        let rs = group.root_system();
        let roots = rs
            .roots()
            .iter()
            .enumerate()
            .map(|(i, v)| RootTerm {
                root: v.0.clone(),
                class: rs.class_of_root(i),
                reflection: group.matrix(group.reflection(i)).clone(),
            })
            .collect();
        let sqrt2 = Cyclotomic::sqrt_rational(&int(2)).expect("√2 is cyclotomic");
        DunklRep { nvars: rs.num_classes(), inv_sqrt2: sqrt2.inv().expect("nonzero"), group, roots }
    }

    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn monomial(&self, exps: Vec<u16>) -> PolyFunction {
        PolyFunction::monomial(exps, self.nvars)
    }

    /// All monomials of total degree at most `max_degree`.
    pub fn monomials(&self, max_degree: usize) -> Vec<PolyFunction> {
        let n = self.rank();
        let mut out = Vec::new();
        let mut e = vec![0u16; n];
        loop {
            if e.iter().map(|&x| x as usize).sum::<usize>() <= max_degree {
                out.push(self.monomial(e.clone()));
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                e[i] += 1;
                if e[i] as usize <= max_degree {
                    break;
                }
                e[i] = 0;
                i += 1;
            }
        }
    }

    fn check_axis(&self, i: usize) -> Result<(), DunklError> {
        if i >= self.rank() {
            return Err(DunklError::AxisOutOfRange { index: i, rank: self.rank() });
        }
        Ok(())
    }

    /// `(g p)(x) = p(g⁻¹ x)`.
    pub fn act(&self, g: usize, p: &PolyFunction) -> PolyFunction {
        p.substitute(self.group.matrix(self.group.inverse(g)))
    }

    pub fn dunkl_apply(&self, i: usize, p: &PolyFunction) -> Result<PolyFunction, DunklError> {
        self.check_axis(i)?;
        let mut out = p.partial(i);
        for r in &self.roots {
            if r.root[i].is_zero() {
                continue;
            }
            let diff = p.sub(&p.substitute(&r.reflection));
            if diff.is_zero() {
                continue;
            }
            let q = diff.divide_linear(&r.root)?;
            let c = NuPoly::var_times(r.class, r.root[i].scale(&rat(1, 2)), self.nvars);
            out = out.add(&q.scale(&c));
        }
        Ok(out)
    }

    /// `y_{αi} p = x_i p + (−1)^α D_i p`.
    pub fn rep_generator(&self, alpha: usize, i: usize, p: &PolyFunction) -> Result<PolyFunction, DunklError> {
        let d = self.dunkl_apply(i, p)?;
        let x = p.mul_x(i);
        Ok(if alpha == 0 { x.add(&d) } else { x.sub(&d) })
    }

    /// `T p = ½ Σ_i (y_{0i} y_{1i} + y_{1i} y_{0i}) p`, twice the algebra's `T_01`.
    pub fn calogero_operator(&self, p: &PolyFunction) -> Result<PolyFunction, DunklError> {
        let mut out = PolyFunction::zero(self.rank(), self.nvars);
        for i in 0..self.rank() {
            let a = self.rep_generator(0, i, &self.rep_generator(1, i, p)?)?;
            let b = self.rep_generator(1, i, &self.rep_generator(0, i, p)?)?;
            out = out.add(&a).add(&b);
        }
        Ok(out.scale_const(&Cyclotomic::from_rational(rat(1, 2))))
    }

    /// The action of an algebra element, with `a_{αi} = y_{αi}/√2`.
    pub fn represent(&self, x: &AlgebraElement, p: &PolyFunction) -> Result<PolyFunction, DunklError> {
        if x.algebra().group().root_system().name() != self.group.root_system().name() {
            return Err(DunklError::SystemMismatch);
        }
        let mut out = PolyFunction::zero(self.rank(), self.nvars);
        for (m, c) in x.terms() {
            let mut q = self.act(m.g, p);
            for (alpha, exps) in [(1usize, &m.e1), (0, &m.e0)] {
                for (i, &k) in exps.iter().enumerate() {
                    for _ in 0..k {
                        q = self.rep_generator(alpha, i, &q)?.scale_const(&self.inv_sqrt2);
                    }
                }
            }
            out = out.add(&q.scale(c));
        }
        Ok(out)
    }
}

/// Outcome of one representation identity over a set of test polynomials.
#[derive(Debug, Clone)]
pub struct DunklCheck {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl DunklCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct DunklReport {
    pub system: String,
    pub max_degree: usize,
    pub checks: Vec<DunklCheck>,
}

impl DunklReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(DunklCheck::passed)
    }
}

/// Checks, on every monomial of degree at most `max_degree`:
/// commutativity of the Dunkl operators, the generator commutator
/// `[y_{0i}, y_{1j}] = 2(δ_ij + Σ_v ν_v v_i v_j/(v,v) R_v)`, the covariance
/// `R_v y_{αi} = Σ_j (R_v)_{ji} y_{αj} R_v`, the ladder relations
/// `[T, y_{αi}] = ∓2 y_{αi}` and `[T, R_v] = 0`.
pub fn calogero_check(group: Arc<CoxeterGroup>, max_degree: usize) -> Result<DunklReport, DunklError> {
    let rep = DunklRep::new(group);
    let n = rep.rank();
    let nv = rep.nvars;
    let tests = rep.monomials(max_degree);
    let mut checks = Vec::new();

    let mut check = |name: &str, f: &mut dyn FnMut(&PolyFunction) -> Result<Vec<String>, DunklError>| -> Result<(), DunklError> {
        let mut failures = Vec::new();
        for p in &tests {
            failures.extend(f(p)?);
        }
        checks.push(DunklCheck { name: name.to_string(), cases: tests.len(), failures });
        Ok(())
    };

    check("dunkl operators commute", &mut |p| {
        let mut bad = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let a = rep.dunkl_apply(i, &rep.dunkl_apply(j, p)?)?;
                let b = rep.dunkl_apply(j, &rep.dunkl_apply(i, p)?)?;
                if a != b {
                    bad.push(format!("[D{}, D{}] {p} ≠ 0", i + 1, j + 1));
                }
            }
        }
        Ok(bad)
    })?;

    check("generator commutator", &mut |p| {
        let mut bad = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let lhs = rep
                    .rep_generator(0, i, &rep.rep_generator(1, j, p)?)?
                    .sub(&rep.rep_generator(1, j, &rep.rep_generator(0, i, p)?)?);
                let mut rhs = if i == j { p.clone() } else { PolyFunction::zero(n, nv) };
                for r in &rep.roots {
                    let w = &(&r.root[i] * &r.root[j]) * &dot(&r.root, &r.root).inv().expect("nonzero root");
                    if w.is_zero() {
                        continue;
                    }
                    rhs = rhs.add(&p.substitute(&r.reflection).scale(&NuPoly::var_times(r.class, w, nv)));
                }
                if lhs != rhs.scale_const(&Cyclotomic::from_int(2)) {
                    bad.push(format!("[y0_{}, y1_{}] on {p}", i + 1, j + 1));
                }
            }
        }
        Ok(bad)
    })?;

    check("reflection covariance", &mut |p| {
        let mut bad = Vec::new();
        for r in &rep.roots {
            let m = &r.reflection;
            for alpha in 0..2 {
                for i in 0..n {
                    let lhs = rep.rep_generator(alpha, i, p)?.substitute(m);
                    let rp = p.substitute(m);
                    let mut rhs = PolyFunction::zero(n, nv);
                    for j in 0..n {
                        if m[(j, i)].is_zero() {
                            continue;
                        }
                        rhs = rhs.add(&rep.rep_generator(alpha, j, &rp)?.scale_const(&m[(j, i)]));
                    }
                    if lhs != rhs {
                        bad.push(format!("R y{alpha}_{} on {p}", i + 1));
                    }
                }
            }
        }
        Ok(bad)
    })?;

    check("calogero ladder", &mut |p| {
        let mut bad = Vec::new();
        for alpha in 0..2 {
            for i in 0..n {
                let ty = rep.calogero_operator(&rep.rep_generator(alpha, i, p)?)?;
                let yt = rep.rep_generator(alpha, i, &rep.calogero_operator(p)?)?;
                let sign = if alpha == 0 { -2 } else { 2 };
                let expected = rep.rep_generator(alpha, i, p)?.scale_const(&Cyclotomic::from_int(sign));
                if ty.sub(&yt) != expected {
                    bad.push(format!("[T, y{alpha}_{}] on {p}", i + 1));
                }
            }
        }
        for r in &rep.roots {
            let a = rep.calogero_operator(&p.substitute(&r.reflection))?;
            let b = rep.calogero_operator(p)?.substitute(&r.reflection);
            if a != b {
                bad.push(format!("[T, R] on {p}"));
            }
        }
        Ok(bad)
    })?;

    Ok(DunklReport { system: rep.group.root_system().name().to_string(), max_degree, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::RootSystem;

    fn rep(name: &str) -> DunklRep {
        DunklRep::new(Arc::new(CoxeterGroup::generate(RootSystem::build(name).unwrap()).unwrap()))
    }

    #[test]
    fn constants_are_killed() {
        let r = rep("B2");
        for i in 0..2 {
            assert!(r.dunkl_apply(i, &r.monomial(vec![0, 0])).unwrap().is_zero());
        }
    }

    #[test]
    fn a1_on_x() {
        // ½ ν v (x − (−x))/(v x) = ν for each of ±v
        let r = rep("A1");
        let got = r.dunkl_apply(0, &r.monomial(vec![1])).unwrap();
        let expected = PolyFunction::one(1, 1).scale(&(&NuPoly::one(1) + &NuPoly::var(0, 1).scale_rational(&int(2))));
        assert_eq!(got, expected);
    }

    #[test]
    fn a1_on_x_squared() {
        // x² is R-invariant, so only the derivative survives
        let r = rep("A1");
        let got = r.dunkl_apply(0, &r.monomial(vec![2])).unwrap();
        assert_eq!(got, r.monomial(vec![1]).scale_const(&Cyclotomic::from_int(2)));
    }

    #[test]
    fn b2_cross_terms() {
        // On x1 x2: ±e1 each give ½ν·(2 x1 x2)/x1 = ν x2, ±e2 have v_1 = 0, and
        // x1 x2 is invariant under both long-root reflections.
        let r = rep("B2");
        let rs = r.group().root_system();
        let e1 = rs.find_root(&crate::rootsystem::Vector::from_ints(&[1, 0])).unwrap();
        let short = NuPoly::var(rs.class_of_root(e1), r.nvars());
        let got = r.dunkl_apply(0, &r.monomial(vec![1, 1])).unwrap();
        let coeff = &NuPoly::one(r.nvars()) + &short.scale_rational(&int(2));
        assert_eq!(got, r.monomial(vec![0, 1]).scale(&coeff));
        // the long-root contributions to D_1 x2 cancel in pairs
        assert!(r.dunkl_apply(0, &r.monomial(vec![0, 1])).unwrap().is_zero());
    }

    #[test]
    fn free_oscillator_at_nu_zero() {
        // at ν = 0 on A1, T = x² − d²/dx²
        let r = rep("A1");
        for k in 0..5u16 {
            let p = r.monomial(vec![k]);
            let t = r.calogero_operator(&p).unwrap();
            let specialized: BTreeMap<Vec<u16>, Cyclotomic> = t
                .terms()
                .iter()
                .map(|(e, c)| (e.clone(), c.evaluate(&[Cyclotomic::from_int(0)]).unwrap()))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            let mut expected = BTreeMap::new();
            expected.insert(vec![k + 2], Cyclotomic::from_int(1));
            if k >= 2 {
                expected.insert(vec![k - 2], Cyclotomic::from_int(-((k * (k - 1)) as i64)));
            }
            assert_eq!(specialized, expected, "k = {k}");
        }
    }

    #[test]
    fn division_rejects_non_multiples() {
        let p = PolyFunction::one(2, 1);
        assert_eq!(p.divide_linear(&[Cyclotomic::from_int(1), Cyclotomic::from_int(1)]), Err(DunklError::DivisibilityFailure));
    }
}
