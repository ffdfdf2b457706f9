//! The deformed algebra `H_W(ν)`: polynomials in `a_{0i}`, `a_{1i}` with
//! coefficients in the group algebra of `W`, subject to
//!
//! `[x_α, y_β] = ε_{αβ} ((x,y) + Σ_{v∈R} ν_v (x,v)(y,v)/(v,v) R_v)`,
//! `g a_α(x) = a_α(g x) g`.
//!
//! Elements are kept in the normal order `(a_0 block)(a_1 block)(group element)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use rand::Rng;
use thiserror::Error;

use crate::coxgroup::{CoxeterGroup, Kappa};
use crate::linalg::dot;
use crate::scalar::{Cyclotomic, NuPoly, Rational};

pub const DEFAULT_DEGREE_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands belong to different algebras")]
    SystemMismatch,
    #[error("degree {degree} exceeds the cap of {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("generator index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("coupling constant index {index} out of range 1..={count}")]
    NuOutOfRange { index: usize, count: usize },
}

/// A normal-ordered monomial `Π a_{0i}^{e0_i} Π a_{1i}^{e1_i} g`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub e0: Vec<u16>,
    pub e1: Vec<u16>,
    pub g: usize,
}

impl Monomial {
    pub fn degree(&self) -> usize {
        self.e0.iter().chain(&self.e1).map(|&e| e as usize).sum()
    }
}

/// A linear combination `Σ c0_i a_{0i} + Σ c1_i a_{1i}` of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    pub c0: Vec<Cyclotomic>,
    pub c1: Vec<Cyclotomic>,
}

impl Letter {
    pub fn zero(n: usize) -> Letter {
        Letter { c0: vec![Cyclotomic::from_int(0); n], c1: vec![Cyclotomic::from_int(0); n] }
    }

    /// The generator `a_{αi}` (0-based `i`).
    pub fn generator(alpha: usize, i: usize, n: usize) -> Letter {
        let mut l = Letter::zero(n);
        let v = if alpha == 0 { &mut l.c0 } else { &mut l.c1 };
        v[i] = Cyclotomic::from_int(1);
        l
    }

    pub fn from_parts(c0: Vec<Cyclotomic>, c1: Vec<Cyclotomic>) -> Letter {
        Letter { c0, c1 }
    }

    pub fn is_zero(&self) -> bool {
        self.c0.iter().chain(&self.c1).all(|x| x.is_zero())
    }

    pub fn scale(&self, c: &Cyclotomic) -> Letter {
        Letter { c0: self.c0.iter().map(|x| x * c).collect(), c1: self.c1.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, o: &Letter) -> Letter {
        Letter {
            c0: self.c0.iter().zip(&o.c0).map(|(a, b)| a + b).collect(),
            c1: self.c1.iter().zip(&o.c1).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Letter) -> Letter {
        self.add(&o.scale(&Cyclotomic::from_int(-1)))
    }

    /// Applies a matrix to both components.
    pub fn transform(&self, m: &crate::linalg::Matrix) -> Letter {
        Letter { c0: m.mul_vec(&self.c0), c1: m.mul_vec(&self.c1) }
    }

    /// The ν-independent part of `[u, v]`: `(u_0, v_1) − (u_1, v_0)`.
    pub fn pairing(&self, v: &Letter) -> Cyclotomic {
        &dot(&self.c0, &v.c1) - &dot(&self.c1, &v.c0)
    }
}

/// One reflection of `W` with the data entering the defining relation.
#[derive(Clone, Debug)]
pub struct ReflectionData {
    /// Element id of `R_v`.
    pub element: usize,
    /// Coupling-constant class.
    pub class: usize,
    pub root: Vec<Cyclotomic>,
    /// `2/(v,v)`: both `v` and `−v` contribute to the sum over roots.
    pub weight: Cyclotomic,
}

/// `[u, v] = scalar + Σ coefficient · R`.
#[derive(Clone, Debug)]
pub struct LetterCommutator {
    pub scalar: Cyclotomic,
    /// `(reflection element id, coefficient)`.
    pub reflections: Vec<(usize, NuPoly)>,
}

type A1Poly = HashMap<Vec<u16>, Cyclotomic>;

pub struct Algebra {
    group: Arc<CoxeterGroup>,
    nvars: usize,
    degree_cap: usize,
    reflections: Vec<ReflectionData>,
    /// `Σ_p v_{i_p} · (a_1 prefix) · R_v(a_1 suffix)` keyed by `(e1, reflection)`.
    cross_cache: RwLock<HashMap<(Vec<u16>, usize), Arc<A1Poly>>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra").field("system", &self.group.root_system().name()).field("nvars", &self.nvars).finish()
    }
}

impl Algebra {
    pub fn new(group: Arc<CoxeterGroup>) -> Arc<Algebra> {
        Self::with_degree_cap(group, DEFAULT_DEGREE_CAP)
    }

    pub fn with_degree_cap(group: Arc<CoxeterGroup>, degree_cap: usize) -> Arc<Algebra> {
        let rs = group.root_system();
        let mut reflections = Vec::new();
        let mut seen = vec![false; rs.roots().len()];
        for (i, v) in rs.roots().iter().enumerate() {
            if seen[i] {
                continue;
            }
            seen[i] = true;
            if let Some(j) = rs.negation(i) {
                seen[j] = true;
            }
            reflections.push(ReflectionData {
                element: group.reflection(i),
                class: rs.class_of_root(i),
                root: v.0.clone(),
                weight: v.norm2().inv().expect("nonzero root").scale(&Rational::from_integer(2.into())),
            });
        }
        Arc::new(Algebra {
            nvars: rs.num_classes(),
            group,
            degree_cap,
            reflections,
            cross_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }

    pub fn group_arc(&self) -> Arc<CoxeterGroup> {
        Arc::clone(&self.group)
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    /// Number of coupling constants.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn reflections(&self) -> &[ReflectionData] {
        &self.reflections
    }

    pub fn zero(self: &Arc<Self>) -> AlgebraElement {
        AlgebraElement { alg: Arc::clone(self), terms: BTreeMap::new() }
    }

    fn unit_monomial(&self, g: usize) -> Monomial {
        let n = self.rank();
        Monomial { e0: vec![0; n], e1: vec![0; n], g }
    }

    pub fn scalar(self: &Arc<Self>, c: NuPoly) -> AlgebraElement {
        let mut x = self.zero();
        x.add_term(self.unit_monomial(0), c);
        x
    }

    pub fn one(self: &Arc<Self>) -> AlgebraElement {
        self.scalar(NuPoly::one(self.nvars))
    }

    pub fn constant(self: &Arc<Self>, c: Cyclotomic) -> AlgebraElement {
        self.scalar(NuPoly::constant(c, self.nvars))
    }

    /// The coupling constant `ν_k` (0-based) as an element.
    pub fn nu(self: &Arc<Self>, k: usize) -> Result<AlgebraElement, AlgebraError> {
        if k >= self.nvars {
            return Err(AlgebraError::NuOutOfRange { index: k + 1, count: self.nvars });
        }
        Ok(self.scalar(NuPoly::var(k, self.nvars)))
    }

    /// `a_{αi}` with 0-based `i`.
    pub fn generator(self: &Arc<Self>, alpha: usize, i: usize) -> Result<AlgebraElement, AlgebraError> {
        let n = self.rank();
        if i >= n {
            return Err(AlgebraError::IndexOutOfRange { index: i + 1, rank: n });
        }
        let mut m = self.unit_monomial(0);
        if alpha == 0 {
            m.e0[i] = 1;
        } else {
            m.e1[i] = 1;
        }
        let mut x = self.zero();
        x.add_term(m, NuPoly::one(self.nvars));
        Ok(x)
    }

    pub fn group_element(self: &Arc<Self>, g: usize) -> AlgebraElement {
        let mut x = self.zero();
        x.add_term(self.unit_monomial(g), NuPoly::one(self.nvars));
        x
    }

    /// The `k`-th simple reflection (0-based).
    pub fn simple_reflection(self: &Arc<Self>, k: usize) -> Result<AlgebraElement, AlgebraError> {
        let gens = self.group.generators();
        if k >= gens.len() {
            return Err(AlgebraError::IndexOutOfRange { index: k + 1, rank: gens.len() });
        }
        Ok(self.group_element(gens[k]))
    }

    pub fn from_letter(self: &Arc<Self>, l: &Letter) -> AlgebraElement {
        let mut x = self.zero();
        for (alpha, comps) in [(0, &l.c0), (1, &l.c1)] {
            for (i, c) in comps.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut m = self.unit_monomial(0);
                if alpha == 0 {
                    m.e0[i] = 1;
                } else {
                    m.e1[i] = 1;
                }
                x.add_term(m, NuPoly::constant(c.clone(), self.nvars));
            }
        }
        x
    }

    /// Product of letters followed by a group element.
    pub fn word(self: &Arc<Self>, letters: &[Letter], g: usize) -> Result<AlgebraElement, AlgebraError> {
        if letters.len() > self.degree_cap {
            return Err(AlgebraError::DegreeCapExceeded { degree: letters.len(), cap: self.degree_cap });
        }
        let mut x = self.one();
        for l in letters {
            x = self.mul_letter(&x, l);
        }
        Ok(x.mul_group(g))
    }

    /// `[u, v]` for two letters: `(u_0,v_1) − (u_1,v_0)` plus reflection terms.
    pub fn letter_commutator(&self, u: &Letter, v: &Letter) -> LetterCommutator {
        let mut reflections = Vec::new();
        for r in &self.reflections {
            let p = &(&dot(&u.c0, &r.root) * &dot(&v.c1, &r.root)) - &(&dot(&u.c1, &r.root) * &dot(&v.c0, &r.root));
            if p.is_zero() {
                continue;
            }
            reflections.push((r.element, NuPoly::var_times(r.class, &p * &r.weight, self.nvars)));
        }
        LetterCommutator { scalar: u.pairing(v), reflections }
    }

    pub fn commutator_element(self: &Arc<Self>, c: &LetterCommutator) -> AlgebraElement {
        let mut x = self.constant(c.scalar.clone());
        for (g, coeff) in &c.reflections {
            x.add_term(self.unit_monomial(*g), coeff.clone());
        }
        x
    }

    /// `Σ_p v_{i_p} (l_1 ⋯ l_{p−1}) R(l_{p+1}) ⋯ R(l_m)` for the sorted `a_1` word of `e1`.
    fn cross_term(&self, e1: &[u16], refl: usize) -> Arc<A1Poly> {
        let key = (e1.to_vec(), refl);
        if let Some(p) = self.cross_cache.read().expect("cache lock").get(&key) {
            return Arc::clone(p);
        }
        let r = &self.reflections[refl];
        let m = self.group.matrix(r.element);
        let n = self.rank();
        let word: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, e1[i] as usize)).collect();
        let mut out: A1Poly = HashMap::new();
        for p in 0..word.len() {
            let coeff = &r.root[word[p]];
            if coeff.is_zero() {
                continue;
            }
            let mut prefix = vec![0u16; n];
            for &i in &word[..p] {
                prefix[i] += 1;
            }
            let mut poly: A1Poly = HashMap::new();
            poly.insert(prefix, coeff.clone());
            for &i in &word[p + 1..] {
                let col = m.column(i);
                let mut next: A1Poly = HashMap::new();
                for (k, c) in &poly {
                    for (j, mj) in col.iter().enumerate() {
                        if mj.is_zero() {
                            continue;
                        }
                        let mut k2 = k.clone();
                        k2[j] += 1;
                        let v = c * mj;
                        let e = next.entry(k2).or_insert_with(|| Cyclotomic::from_int(0));
                        *e += &v;
                    }
                }
                poly = next;
            }
            for (k, c) in poly {
                let e = out.entry(k).or_insert_with(|| Cyclotomic::from_int(0));
                *e += &c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        let arc = Arc::new(out);
        self.cross_cache.write().expect("cache lock").insert(key, Arc::clone(&arc));
        arc
    }

    /// Right multiplication by a letter.
    pub fn mul_letter(self: &Arc<Self>, x: &AlgebraElement, l: &Letter) -> AlgebraElement {
        self.mul_letter_at(x, l, None)
    }

    /// Right multiplication by a letter with the reflection terms evaluated at
    /// a numeric `nu` when one is given.
    pub fn mul_letter_at(self: &Arc<Self>, x: &AlgebraElement, l: &Letter, nu: Option<&[Cyclotomic]>) -> AlgebraElement {
        let mut out = self.zero();
        let mut transformed: HashMap<usize, Letter> = HashMap::new();
        for (m, c) in &x.terms {
            let lt = transformed.entry(m.g).or_insert_with(|| l.transform(self.group.matrix(m.g)));
            // a_1 components append to the a_1 block
            for (j, u) in lt.c1.iter().enumerate() {
                if u.is_zero() {
                    continue;
                }
                let mut m2 = m.clone();
                m2.e1[j] += 1;
                out.add_term(m2, c.scale(u));
            }
            for (j, u) in lt.c0.iter().enumerate() {
                if u.is_zero() {
                    continue;
                }
                let cu = c.scale(u);
                let mut m2 = m.clone();
                m2.e0[j] += 1;
                out.add_term(m2, cu.clone());
                // A1^{e1} a_{0j} = a_{0j} A1^{e1} − Σ_p prefix [a_{0j}, l_p] suffix
                if m.e1[j] > 0 {
                    let mut m3 = m.clone();
                    m3.e1[j] -= 1;
                    out.add_term(m3, cu.scale(&Cyclotomic::from_int(-(m.e1[j] as i64))));
                }
                if m.e1.iter().all(|&e| e == 0) {
                    continue;
                }
                for (ri, r) in self.reflections.iter().enumerate() {
                    let vj = &r.root[j];
                    if vj.is_zero() || nu.is_some_and(|point| point[r.class].is_zero()) {
                        continue;
                    }
                    let cross = self.cross_term(&m.e1, ri);
                    if cross.is_empty() {
                        continue;
                    }
                    let factor = -(vj * &r.weight);
                    let coeff = match nu {
                        Some(point) => cu.scale(&(&factor * &point[r.class])),
                        None => &cu * &NuPoly::var_times(r.class, factor, self.nvars),
                    };
                    let g2 = self.group.mul(r.element, m.g);
                    for (e1, pc) in cross.iter() {
                        let m4 = Monomial { e0: m.e0.clone(), e1: e1.clone(), g: g2 };
                        out.add_term(m4, coeff.scale(pc));
                    }
                }
            }
        }
        out
    }

    fn check(&self, x: &AlgebraElement) -> Result<(), AlgebraError> {
        if std::ptr::eq(self, Arc::as_ptr(&x.alg)) {
            Ok(())
        } else {
            Err(AlgebraError::SystemMismatch)
        }
    }

    pub fn multiply(self: &Arc<Self>, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check(x)?;
        self.check(y)?;
        let degree = x.degree() + y.degree();
        if degree > self.degree_cap {
            return Err(AlgebraError::DegreeCapExceeded { degree, cap: self.degree_cap });
        }
        let n = self.rank();
        let mut out = self.zero();
        for (m, c) in &y.terms {
            let mut acc = x.clone();
            for alpha in 0..2 {
                let exps = if alpha == 0 { &m.e0 } else { &m.e1 };
                for i in 0..n {
                    for _ in 0..exps[i] {
                        acc = self.mul_letter(&acc, &Letter::generator(alpha, i, n));
                    }
                }
            }
            let acc = acc.mul_group(m.g);
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    pub fn kappa_bracket(self: &Arc<Self>, x: &AlgebraElement, y: &AlgebraElement, kappa: Kappa) -> Result<AlgebraElement, AlgebraError> {
        let mut out = self.zero();
        for (px, xp) in x.parity_parts() {
            for (py, yp) in y.parity_parts() {
                let a = self.multiply(&xp, &yp)?;
                let b = self.multiply(&yp, &xp)?;
                out.add_scaled(&a, &NuPoly::one(self.nvars));
                out.add_scaled(&b, &NuPoly::constant(Cyclotomic::from_int(-kappa.sign(px, py)), self.nvars));
            }
        }
        Ok(out)
    }

    /// A random element made of `terms` monomials of total degree exactly
    /// `degree` with small rational coefficients; with `symbolic`, some
    /// coefficients also carry a coupling constant.
    pub fn random_homogeneous<R: Rng>(self: &Arc<Self>, rng: &mut R, degree: usize, terms: usize, symbolic: bool) -> AlgebraElement {
        let n = self.rank();
        let mut out = self.zero();
        if n == 0 && degree > 0 {
            return out;
        }
        for _ in 0..terms {
            let mut m = self.unit_monomial(rng.gen_range(0..self.group.order()));
            for _ in 0..degree {
                let i = rng.gen_range(0..n);
                if rng.gen_bool(0.5) {
                    m.e0[i] += 1;
                } else {
                    m.e1[i] += 1;
                }
            }
            let num = loop {
                let k: i64 = rng.gen_range(-3..=3);
                if k != 0 {
                    break k;
                }
            };
            let den: i64 = rng.gen_range(1..=3);
            let mut c = NuPoly::from_rational(Rational::new(num.into(), den.into()), self.nvars);
            if symbolic && self.nvars > 0 && rng.gen_bool(0.3) {
                let k = rng.gen_range(0..self.nvars);
                c = &c * &(&NuPoly::one(self.nvars) + &NuPoly::var(k, self.nvars));
            }
            out.add_term(m, c);
        }
        out
    }

    /// `T_{αβ} = ½ Σ_i {a_{αi}, a_{βi}}`.
    pub fn sl2_generator(self: &Arc<Self>, alpha: usize, beta: usize) -> AlgebraElement {
        let n = self.rank();
        let half = NuPoly::from_rational(Rational::new(1.into(), 2.into()), self.nvars);
        let mut out = self.zero();
        for i in 0..n {
            let a = self.generator(alpha, i).expect("index in range");
            let b = self.generator(beta, i).expect("index in range");
            let ab = self.multiply(&a, &b).expect("degree 2");
            let ba = self.multiply(&b, &a).expect("degree 2");
            out.add_scaled(&ab, &half);
            out.add_scaled(&ba, &half);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

/// An element of `H_W(ν)` in normal form.
#[derive(Clone)]
pub struct AlgebraElement {
    alg: Arc<Algebra>,
    terms: BTreeMap<Monomial, NuPoly>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl AlgebraElement {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, NuPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: NuPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                v.add_assign_ref(&c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &AlgebraElement, c: &NuPoly) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.alg.check(other)?;
        let mut out = self.clone();
        for (m, v) in &other.terms {
            out.add_term(m.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.alg.check(other)?;
        let mut out = self.clone();
        for (m, v) in &other.terms {
            out.add_term(m.clone(), -v);
        }
        Ok(out)
    }

    pub fn neg(&self) -> AlgebraElement {
        self.scale(&NuPoly::constant(Cyclotomic::from_int(-1), self.alg.nvars))
    }

    pub fn scale(&self, c: &NuPoly) -> AlgebraElement {
        let mut out = self.alg.zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.alg.multiply(self, other)
    }

    /// Right multiplication by a group element.
    pub fn mul_group(&self, h: usize) -> AlgebraElement {
        let mut out = self.alg.zero();
        for (m, v) in &self.terms {
            let mut m2 = m.clone();
            m2.g = self.alg.group.mul(m.g, h);
            out.add_term(m2, v.clone());
        }
        out
    }

    /// Largest total `a`-degree among the terms (0 for the zero element).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn parity(&self) -> Parity {
        let mut seen = [false, false];
        for m in self.terms.keys() {
            seen[m.degree() % 2] = true;
        }
        match seen {
            [_, false] => Parity::Even,
            [false, true] => Parity::Odd,
            [true, true] => Parity::Mixed,
        }
    }

    /// Nonzero even and odd components, tagged with their parity.
    pub fn parity_parts(&self) -> Vec<(usize, AlgebraElement)> {
        let mut parts = [self.alg.zero(), self.alg.zero()];
        for (m, v) in &self.terms {
            parts[m.degree() % 2].add_term(m.clone(), v.clone());
        }
        let [even, odd] = parts;
        let mut out = Vec::new();
        if !even.is_zero() {
            out.push((0, even));
        }
        if !odd.is_zero() {
            out.push((1, odd));
        }
        out
    }

    /// Substitutes numeric values for the coupling constants.
    pub fn specialize(&self, nu: &[Cyclotomic]) -> Result<AlgebraElement, crate::scalar::ScalarError> {
        let mut out = self.alg.zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v.specialize(nu)?);
        }
        Ok(out)
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Text form in the expression grammar: `(coeff)*a0_1^2*a1_2*w[s_1 s_2]`.
impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors = vec![format!("({c})")];
            for (alpha, exps) in [(0, &m.e0), (1, &m.e1)] {
                for (i, &e) in exps.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => factors.push(format!("a{alpha}_{}", i + 1)),
                        _ => factors.push(format!("a{alpha}_{}^{e}", i + 1)),
                    }
                }
            }
            if m.g != 0 {
                let word: Vec<String> = self.alg.group.word(m.g).iter().map(|k| format!("s_{}", k + 1)).collect();
                factors.push(format!("w[{}]", word.join(" ")));
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::RootSystem;
    use crate::scalar::rational::int;

    fn algebra(name: &str) -> Arc<Algebra> {
        Algebra::new(Arc::new(CoxeterGroup::generate(RootSystem::build(name).unwrap()).unwrap()))
    }

    #[test]
    fn a1_reordering() {
        // a1·a0 = a0 a1 − 1 − 2ν R
        let h = algebra("A1");
        let a0 = h.generator(0, 0).unwrap();
        let a1 = h.generator(1, 0).unwrap();
        let r = h.simple_reflection(0).unwrap();
        let nu = h.nu(0).unwrap();
        let lhs = a1.mul(&a0).unwrap();
        let two_nu_r = nu.mul(&r).unwrap().scale(&NuPoly::from_rational(int(2), 1));
        let rhs = a0.mul(&a1).unwrap().sub(&h.one()).unwrap().sub(&two_nu_r).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn reflection_acts_on_generators_as_vectors() {
        let h = algebra("B2");
        let g = h.group();
        for r in h.reflections() {
            let m = g.matrix(r.element);
            for alpha in 0..2 {
                for i in 0..2 {
                    let lhs = h.group_element(r.element).mul(&h.generator(alpha, i).unwrap()).unwrap();
                    let mut rhs = h.zero();
                    for j in 0..2 {
                        let t = h.generator(alpha, j).unwrap().mul_group(r.element);
                        rhs.add_scaled(&t, &NuPoly::constant(m[(j, i)].clone(), h.nvars()));
                    }
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn generator_commutator_matches_relation() {
        let h = algebra("A2");
        for i in 0..2 {
            for j in 0..2 {
                let a = h.generator(0, i).unwrap();
                let b = h.generator(1, j).unwrap();
                let br = h.kappa_bracket(&a, &b, Kappa::Plus).unwrap();
                let expected = h.commutator_element(&h.letter_commutator(&Letter::generator(0, i, 2), &Letter::generator(1, j, 2)));
                assert_eq!(br, expected);
            }
        }
    }

    #[test]
    fn parity_classification() {
        let h = algebra("A1");
        let a0 = h.generator(0, 0).unwrap();
        let a1 = h.generator(1, 0).unwrap();
        assert_eq!(a0.mul_group(1).parity(), Parity::Odd);
        assert_eq!(a0.mul(&a1).unwrap().parity(), Parity::Even);
        assert_eq!(a0.add(&h.one()).unwrap().parity(), Parity::Mixed);
    }

    #[test]
    fn anticommutator_of_a_generator_with_itself() {
        let h = algebra("A1");
        let a0 = h.generator(0, 0).unwrap();
        let br = h.kappa_bracket(&a0, &a0, Kappa::Minus).unwrap();
        let sq = a0.mul(&a0).unwrap().scale(&NuPoly::from_rational(int(2), 1));
        assert_eq!(br, sq);
    }

    #[test]
    fn mismatch_and_cap() {
        let h = algebra("A1");
        let k = algebra("A1");
        let x = h.generator(0, 0).unwrap();
        let y = k.generator(0, 0).unwrap();
        assert_eq!(x.mul(&y).unwrap_err(), AlgebraError::SystemMismatch);
        let mut p = h.one();
        for _ in 0..12 {
            p = p.mul(&x).unwrap();
        }
        assert!(matches!(p.mul(&x), Err(AlgebraError::DegreeCapExceeded { degree: 13, cap: 12 })));
    }
}
