//! Finite root systems: catalog construction, axiom validation, and
//! reflections.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::linalg::{dot, Matrix};
use crate::scalar::{lcm, Cyclotomic, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootSystemError {
    #[error("unknown root system {0:?}")]
    UnknownSystem(String),
    #[error("{kind} rank {rank} outside the supported range {min}..={max}")]
    RankOutOfRange { kind: char, rank: usize, min: usize, max: usize },
    #[error("axiom violation ({axiom}) witnessed by roots #{first} and #{second}")]
    AxiomViolation { axiom: Axiom, first: usize, second: usize },
    #[error("zero vector has no reflection")]
    ZeroVector,
    #[error("root #{0} has length {1}, expected {2}")]
    DimensionMismatch(usize, usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// The root set is invariant under every reflection `R_v`, `v ∈ R`.
    ReflectionInvariance,
    /// Collinear roots differ only by sign.
    OnlyOppositeCollinear,
    /// Roots are nonzero.
    NonzeroRoots,
    /// Reflection class labels are constant on conjugation orbits.
    ClassLabelsInvariant,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::ReflectionInvariance => "reflection invariance",
            Axiom::OnlyOppositeCollinear => "collinear roots must be opposite",
            Axiom::NonzeroRoots => "roots must be nonzero",
            Axiom::ClassLabelsInvariant => "class labels must be conjugation invariant",
        };
        f.write_str(s)
    }
}

/// A vector of `V = R^N` with exact (real cyclotomic) coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vector(pub Vec<Cyclotomic>);

impl Vector {
    pub fn zero(n: usize) -> Self {
        Vector(vec![Cyclotomic::from_int(0); n])
    }

    pub fn from_rationals(xs: &[Rational]) -> Self {
        Vector(xs.iter().cloned().map(Cyclotomic::from_rational).collect())
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Vector(xs.iter().map(|&x| Cyclotomic::from_int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &Vector) -> Cyclotomic {
        dot(&self.0, &other.0)
    }

    pub fn norm2(&self) -> Cyclotomic {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, c: &Cyclotomic) -> Vector {
        Vector(self.0.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }

    pub fn embed(&self, n: u32) -> Vector {
        Vector(self.0.iter().map(|x| x.embed(n).expect("conductor divides")).collect())
    }

    /// `R_v(x) = x - 2 (x,v)/(v,v) v`.
    pub fn reflect_in(&self, v: &Vector) -> Vector {
        let c = (&self.dot(v) * &v.norm2().inv().expect("nonzero root")).scale(&Rational::from_integer(2.into()));
        self.sub(&v.scale(&c))
    }

    /// Hashable key; only meaningful between vectors written in one conductor.
    pub(crate) fn key(&self) -> Vec<Rational> {
        self.0.iter().flat_map(|x| x.coeffs().iter().cloned()).collect()
    }

    /// `Some(c)` with `self = c · other` if the two are collinear.
    pub fn ratio_to(&self, other: &Vector) -> Option<Cyclotomic> {
        let k = other.0.iter().position(|x| !x.is_zero())?;
        let c = self.0[k].checked_div(&other.0[k]).ok()?;
        if other.scale(&c) == *self {
            Some(c)
        } else {
            None
        }
    }
}

/// Matrix of the reflection `x ↦ x − 2(x,v)/(v,v) v`.
pub fn reflection_matrix(v: &Vector) -> Result<Matrix, RootSystemError> {
    if v.is_zero() {
        return Err(RootSystemError::ZeroVector);
    }
    let n = v.dim();
    let two_over = v.norm2().inv().map_err(|_| RootSystemError::ZeroVector)?.scale(&Rational::from_integer(2.into()));
    let mut m = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            let t = &(&v.0[i] * &v.0[j]) * &two_over;
            m[(i, j)] = &m[(i, j)] - &t;
        }
    }
    Ok(m)
}

/// Catalog identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemKind {
    A(usize),
    B(usize),
    D(usize),
    G2,
    F4,
    I2(usize),
    H3,
    H4,
}

impl SystemKind {
    /// Every cataloged system used by the dimension table.
    pub fn catalog() -> Vec<SystemKind> {
        let mut v: Vec<SystemKind> = (1..=5).map(SystemKind::A).collect();
        v.extend((2..=4).map(SystemKind::B));
        v.push(SystemKind::D(4));
        v.push(SystemKind::G2);
        v.push(SystemKind::F4);
        v.extend((3..=12).map(SystemKind::I2));
        v.push(SystemKind::H3);
        v.push(SystemKind::H4);
        v
    }

    /// Order of the Coxeter group from the classical formulas.
    pub fn classical_order(&self) -> u64 {
        fn fact(n: u64) -> u64 {
            (1..=n).product()
        }
        match *self {
            SystemKind::A(n) => fact(n as u64 + 1),
            SystemKind::B(n) => fact(n as u64) << n,
            SystemKind::D(n) => fact(n as u64) << (n - 1),
            SystemKind::G2 => 12,
            SystemKind::F4 => 1152,
            SystemKind::I2(m) => 2 * m as u64,
            SystemKind::H3 => 120,
            SystemKind::H4 => 14400,
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            SystemKind::A(n) | SystemKind::B(n) | SystemKind::D(n) => n,
            SystemKind::G2 | SystemKind::I2(_) => 2,
            SystemKind::F4 | SystemKind::H4 => 4,
            SystemKind::H3 => 3,
        }
    }
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemKind::A(n) => write!(f, "A{n}"),
            SystemKind::B(n) => write!(f, "B{n}"),
            SystemKind::D(n) => write!(f, "D{n}"),
            SystemKind::G2 => write!(f, "G2"),
            SystemKind::F4 => write!(f, "F4"),
            SystemKind::I2(m) => write!(f, "I2({m})"),
            SystemKind::H3 => write!(f, "H3"),
            SystemKind::H4 => write!(f, "H4"),
        }
    }
}

impl FromStr for SystemKind {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || RootSystemError::UnknownSystem(s.to_string());
        let t: String = s.trim().chars().filter(|c| *c != '_').collect::<String>().to_ascii_uppercase();
        let mut chars = t.chars();
        let letter = chars.next().ok_or_else(unknown)?;
        let rest: &str = chars.as_str();
        if letter == 'I' {
            let inner = rest
                .strip_prefix('2')
                .and_then(|r| r.strip_prefix('('))
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(unknown)?;
            let m: usize = inner.parse().map_err(|_| unknown())?;
            if !(3..=12).contains(&m) {
                return Err(RootSystemError::RankOutOfRange { kind: 'I', rank: m, min: 3, max: 12 });
            }
            return Ok(SystemKind::I2(m));
        }
        let n: usize = rest.parse().map_err(|_| unknown())?;
        let check = |min: usize, max: usize| {
            if (min..=max).contains(&n) {
                Ok(())
            } else {
                Err(RootSystemError::RankOutOfRange { kind: letter, rank: n, min, max })
            }
        };
        match letter {
            'A' => {
                check(0, 5)?;
                Ok(SystemKind::A(n))
            }
            'B' => {
                check(2, 4)?;
                Ok(SystemKind::B(n))
            }
            'D' => {
                check(4, 4)?;
                Ok(SystemKind::D(n))
            }
            'G' => {
                check(2, 2)?;
                Ok(SystemKind::G2)
            }
            'F' => {
                check(4, 4)?;
                Ok(SystemKind::F4)
            }
            'H' => {
                check(3, 4)?;
                Ok(if n == 3 { SystemKind::H3 } else { SystemKind::H4 })
            }
            _ => Err(unknown()),
        }
    }
}

/// A validated finite root system together with the reflection-class label
/// of each root (one coupling constant `ν` per label).
#[derive(Clone, Debug)]
pub struct RootSystem {
    name: String,
    kind: Option<SystemKind>,
    rank: usize,
    conductor: u32,
    roots: Vec<Vector>,
    simple: Vec<usize>,
    negation: Vec<usize>,
    class_of_root: Vec<usize>,
    num_classes: usize,
}

/// Summary of a successful validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub roots: usize,
    pub reflections: usize,
    pub classes: usize,
}

fn q(n: i64, d: i64) -> Cyclotomic {
    Cyclotomic::from_rational(crate::scalar::rational::rat(n, d))
}

fn sqrt(n: i64, d: i64) -> Cyclotomic {
    Cyclotomic::sqrt_rational(&crate::scalar::rational::rat(n, d)).expect("nonnegative")
}

/// Golden ratio `τ = 1 + ζ5 + ζ5⁴`.
fn tau() -> Cyclotomic {
    &(&Cyclotomic::from_int(1) + &Cyclotomic::zeta_pow(5, 1)) + &Cyclotomic::zeta_pow(5, 4)
}

fn simple_roots(kind: SystemKind) -> Vec<Vector> {
    let v = |xs: &[i64]| Vector::from_ints(xs);
    match kind {
        SystemKind::A(0) => vec![],
        SystemKind::A(1) => vec![v(&[1])],
        SystemKind::A(2) => vec![v(&[1, 0]), Vector(vec![q(-1, 2), &sqrt(3, 1) * &q(1, 2)])],
        // realized as D_3 inside R^3
        SystemKind::A(3) => vec![v(&[1, -1, 0]), v(&[0, 1, -1]), v(&[0, 1, 1])],
        SystemKind::A(4) => {
            // A_4 as a subsystem of the H_4 roots
            let t = tau();
            let s = &t - &Cyclotomic::from_int(1);
            let h = q(1, 2);
            let z = Cyclotomic::from_int(0);
            vec![
                v(&[1, 0, 0, 0]),
                Vector(vec![-&h, z.clone(), -(&s * &h), -(&t * &h)]),
                Vector(vec![z.clone(), &s * &h, -&h, &t * &h]),
                Vector(vec![z, h.clone(), &t * &h, -(&s * &h)]),
            ]
        }
        SystemKind::A(5) => {
            // e_k - e_{k+1} of R^6 in an orthonormal basis of the sum-zero hyperplane
            let r2 = sqrt(1, 2);
            let r12 = sqrt(1, 12);
            let h = q(1, 2);
            let basis: Vec<Vec<Cyclotomic>> = vec![
                vec![r2.clone(), -&r2, q(0, 1), q(0, 1), q(0, 1), q(0, 1)],
                vec![q(0, 1), q(0, 1), r2.clone(), -&r2, q(0, 1), q(0, 1)],
                vec![q(0, 1), q(0, 1), q(0, 1), q(0, 1), r2.clone(), -&r2],
                vec![h.clone(), h.clone(), -&h, -&h, q(0, 1), q(0, 1)],
                vec![r12.clone(), r12.clone(), r12.clone(), r12.clone(), q(-2, 1) * &r12, q(-2, 1) * &r12],
            ];
            (0..5)
                .map(|k| {
                    let mut e = vec![Cyclotomic::from_int(0); 6];
                    e[k] = Cyclotomic::from_int(1);
                    e[k + 1] = Cyclotomic::from_int(-1);
                    Vector(basis.iter().map(|b| dot(b, &e)).collect())
                })
                .collect()
        }
        SystemKind::A(_) => unreachable!("rank checked at parse time"),
        SystemKind::B(n) => {
            let mut out = Vec::new();
            for i in 0..n - 1 {
                let mut x = vec![0; n];
                x[i] = 1;
                x[i + 1] = -1;
                out.push(v(&x));
            }
            let mut x = vec![0; n];
            x[n - 1] = 1;
            out.push(v(&x));
            out
        }
        SystemKind::D(n) => {
            let mut out = Vec::new();
            for i in 0..n - 1 {
                let mut x = vec![0; n];
                x[i] = 1;
                x[i + 1] = -1;
                out.push(v(&x));
            }
            let mut x = vec![0; n];
            x[n - 2] = 1;
            x[n - 1] = 1;
            out.push(v(&x));
            out
        }
        SystemKind::G2 => vec![v(&[1, 0]), Vector(vec![q(-3, 2), &sqrt(3, 1) * &q(1, 2)])],
        SystemKind::F4 => vec![
            v(&[0, 1, -1, 0]),
            v(&[0, 0, 1, -1]),
            v(&[0, 0, 0, 1]),
            Vector(vec![q(1, 2), q(-1, 2), q(-1, 2), q(-1, 2)]),
        ],
        SystemKind::I2(m) => {
            let m = m as u32;
            vec![v(&[1, 0]), Vector(vec![-Cyclotomic::cos_2pi(1, 2 * m), Cyclotomic::sin_2pi(1, 2 * m)])]
        }
        SystemKind::H3 => {
            let t = tau();
            let s = &t - &Cyclotomic::from_int(1);
            let h = q(1, 2);
            vec![v(&[1, 0, 0]), Vector(vec![-(&t * &h), h.clone(), &s * &h]), v(&[0, -1, 0])]
        }
        SystemKind::H4 => {
            let t = tau();
            let s = &t - &Cyclotomic::from_int(1);
            let h = q(1, 2);
            let z = Cyclotomic::from_int(0);
            vec![
                v(&[1, 0, 0, 0]),
                Vector(vec![-(&t * &h), h.clone(), &s * &h, z.clone()]),
                v(&[0, -1, 0, 0]),
                Vector(vec![z, h.clone(), -(&t * &h), &s * &h]),
            ]
        }
    }
}

impl RootSystem {
    /// Builds a cataloged root system by name (`"A3"`, `"I2(7)"`, `"H4"`, ...).
    pub fn build(name: &str) -> Result<RootSystem, RootSystemError> {
        let kind: SystemKind = name.parse()?;
        Ok(Self::from_kind(kind))
    }

    pub fn from_kind(kind: SystemKind) -> RootSystem {
        let simple = simple_roots(kind);
        let rank = kind.rank();
        let mut rs = Self::from_simple_roots(&kind.to_string(), rank, simple).expect("catalog roots are well formed");
        rs.kind = Some(kind);
        rs
    }

    /// Closes a set of simple roots under their reflections.
    pub fn from_simple_roots(name: &str, rank: usize, simple: Vec<Vector>) -> Result<RootSystem, RootSystemError> {
        let conductor = common_conductor(&simple);
        let simple: Vec<Vector> = simple.iter().map(|v| v.embed(conductor)).collect();
        for (i, v) in simple.iter().enumerate() {
            if v.dim() != rank {
                return Err(RootSystemError::DimensionMismatch(i, v.dim(), rank));
            }
            if v.is_zero() {
                return Err(RootSystemError::ZeroVector);
            }
        }
        let mut roots: Vec<Vector> = Vec::new();
        let mut index: HashMap<Vec<Rational>, usize> = HashMap::new();
        let push = |v: Vector, roots: &mut Vec<Vector>, index: &mut HashMap<Vec<Rational>, usize>| {
            let k = v.key();
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(k) {
                e.insert(roots.len());
                roots.push(v);
            }
        };
        for v in &simple {
            push(v.clone(), &mut roots, &mut index);
        }
        let mut cursor = 0;
        while cursor < roots.len() {
            let r = roots[cursor].clone();
            for s in &simple {
                push(r.reflect_in(s), &mut roots, &mut index);
            }
            push(r.neg(), &mut roots, &mut index);
            cursor += 1;
        }
        let simple_idx: Vec<usize> = (0..simple.len()).collect();
        Self::assemble(name, None, rank, conductor, roots, simple_idx)
    }

    /// Wraps an explicit root list (used for validation of arbitrary sets).
    /// Reflection classes are computed using all roots as generators.
    pub fn from_roots(name: &str, rank: usize, roots: Vec<Vector>) -> Result<RootSystem, RootSystemError> {
        for (i, v) in roots.iter().enumerate() {
            if v.dim() != rank {
                return Err(RootSystemError::DimensionMismatch(i, v.dim(), rank));
            }
        }
        let conductor = common_conductor(&roots);
        let roots: Vec<Vector> = roots.iter().map(|v| v.embed(conductor)).collect();
        let all: Vec<usize> = (0..roots.len()).collect();
        Self::assemble(name, None, rank, conductor, roots, all)
    }

    fn assemble(
        name: &str,
        kind: Option<SystemKind>,
        rank: usize,
        conductor: u32,
        roots: Vec<Vector>,
        simple: Vec<usize>,
    ) -> Result<RootSystem, RootSystemError> {
        let index: HashMap<Vec<Rational>, usize> = roots.iter().enumerate().map(|(i, r)| (r.key(), i)).collect();
        let negation: Vec<usize> = roots.iter().map(|r| index.get(&r.neg().key()).copied().unwrap_or(usize::MAX)).collect();
        // reflection classes: orbits of roots under the generators, with ±v identified
        let mut parent: Vec<usize> = (0..roots.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let union = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(p, a), find(p, b));
            if ra != rb {
                p[ra.max(rb)] = ra.min(rb);
            }
        };
        for (i, r) in roots.iter().enumerate() {
            if negation[i] != usize::MAX {
                union(&mut parent, i, negation[i]);
            }
            if r.is_zero() {
                continue;
            }
            for &s in &simple {
                if roots[s].is_zero() {
                    continue;
                }
                if let Some(&j) = index.get(&r.reflect_in(&roots[s]).key()) {
                    union(&mut parent, i, j);
                }
            }
        }
        let mut label: HashMap<usize, usize> = HashMap::new();
        let mut class_of_root = Vec::with_capacity(roots.len());
        for i in 0..roots.len() {
            let r = find(&mut parent, i);
            let next = label.len();
            class_of_root.push(*label.entry(r).or_insert(next));
        }
        Ok(RootSystem {
            name: name.to_string(),
            kind,
            rank,
            conductor,
            num_classes: label.len(),
            roots,
            simple,
            negation,
            class_of_root,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> Option<SystemKind> {
        self.kind
    }

    /// Ambient dimension `N`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Cyclotomic conductor holding every root coordinate.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn roots(&self) -> &[Vector] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Vector {
        &self.roots[i]
    }

    /// Indices of the simple roots (generators of the group).
    pub fn simple_roots(&self) -> &[usize] {
        &self.simple
    }

    /// Index of `-v` for the root with index `i`.
    pub fn negation(&self, i: usize) -> Option<usize> {
        match self.negation[i] {
            usize::MAX => None,
            j => Some(j),
        }
    }

    pub fn class_of_root(&self, i: usize) -> usize {
        self.class_of_root[i]
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    /// Collapses every reflection class into a single coupling constant.
    pub fn with_single_class(mut self) -> Self {
        self.class_of_root.iter_mut().for_each(|c| *c = 0);
        self.num_classes = usize::from(!self.roots.is_empty());
        self
    }

    /// Index of a vector in the root list, if present.
    pub fn find_root(&self, v: &Vector) -> Option<usize> {
        let w = Vector(v.0.iter().map(|x| x.embed(self.conductor).ok()).collect::<Option<Vec<_>>>()?);
        self.roots.iter().position(|r| *r == w)
    }

    /// Checks both root-system axioms exhaustively and that class labels are
    /// invariant under every reflection.
    pub fn validate(&self) -> Result<ValidationReport, RootSystemError> {
        for (i, v) in self.roots.iter().enumerate() {
            if v.is_zero() {
                return Err(RootSystemError::AxiomViolation { axiom: Axiom::NonzeroRoots, first: i, second: i });
            }
        }
        let index: HashMap<Vec<Rational>, usize> = self.roots.iter().enumerate().map(|(i, r)| (r.key(), i)).collect();
        for (i, v) in self.roots.iter().enumerate() {
            for (j, u) in self.roots.iter().enumerate() {
                let image = u.reflect_in(v);
                match index.get(&image.key()) {
                    None => {
                        return Err(RootSystemError::AxiomViolation { axiom: Axiom::ReflectionInvariance, first: i, second: j })
                    }
                    Some(&k) => {
                        if self.class_of_root[k] != self.class_of_root[j] {
                            return Err(RootSystemError::AxiomViolation {
                                axiom: Axiom::ClassLabelsInvariant,
                                first: i,
                                second: j,
                            });
                        }
                    }
                }
                if i < j {
                    if let Some(c) = u.ratio_to(v) {
                        if !c.is_one() && !(-&c).is_one() {
                            return Err(RootSystemError::AxiomViolation {
                                axiom: Axiom::OnlyOppositeCollinear,
                                first: i,
                                second: j,
                            });
                        }
                    }
                }
            }
        }
        Ok(ValidationReport {
            roots: self.roots.len(),
            reflections: self.roots.len() / 2,
            classes: self.num_classes,
        })
    }
}

fn common_conductor(vs: &[Vector]) -> u32 {
    vs.iter().flat_map(|v| v.0.iter()).fold(1, |acc, x| lcm(acc, x.conductor()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::rat;

    #[test]
    fn a1_is_the_smallest_system() {
        let rs = RootSystem::build("A1").unwrap();
        assert_eq!(rs.roots().len(), 2);
        assert_eq!(rs.rank(), 1);
        assert_eq!(rs.num_classes(), 1);
        assert_eq!(rs.root(1), &rs.root(0).neg());
    }

    #[test]
    fn b2_has_eight_roots_in_two_classes() {
        // oracle: ±e_i (short) and ±e_1±e_2 (long)
        let rs = RootSystem::build("B2").unwrap();
        assert_eq!(rs.roots().len(), 8);
        assert_eq!(rs.num_classes(), 2);
        let short = Vector::from_ints(&[1, 0]);
        let long = Vector::from_ints(&[1, 1]);
        let is = rs.find_root(&short).unwrap();
        let il = rs.find_root(&long).unwrap();
        assert_ne!(rs.class_of_root(is), rs.class_of_root(il));
    }

    #[test]
    fn h3_over_q_zeta5() {
        let rs = RootSystem::build("H3").unwrap();
        assert_eq!(rs.roots().len(), 30);
        assert_eq!(rs.rank(), 3);
        assert_eq!(rs.conductor(), 5);
        rs.validate().unwrap();
    }

    #[test]
    fn catalog_root_counts() {
        let expected = [
            ("A0", 0),
            ("A2", 6),
            ("A3", 12),
            ("A4", 20),
            ("A5", 30),
            ("B3", 18),
            ("B4", 32),
            ("D4", 24),
            ("G2", 12),
            ("F4", 48),
            ("I2(7)", 14),
            ("I2(12)", 24),
            ("H4", 120),
        ];
        for (name, count) in expected {
            let rs = RootSystem::build(name).unwrap();
            assert_eq!(rs.roots().len(), count, "{name}");
            rs.validate().unwrap();
        }
    }

    #[test]
    fn unknown_and_out_of_range_names() {
        assert!(matches!(RootSystem::build("E8"), Err(RootSystemError::UnknownSystem(_))));
        assert!(matches!(RootSystem::build("A9"), Err(RootSystemError::RankOutOfRange { .. })));
        assert!(matches!(RootSystem::build("I2(13)"), Err(RootSystemError::RankOutOfRange { .. })));
        assert_eq!("i2(5)".parse::<SystemKind>().unwrap(), SystemKind::I2(5));
        assert!("C3".parse::<SystemKind>().is_err());
    }

    #[test]
    fn collinear_pair_is_rejected() {
        let v = Vector::from_ints(&[1, 0]);
        let rs = RootSystem::from_roots("bad", 2, vec![v.clone(), v.scale(&Cyclotomic::from_int(2)), v.neg(), v.scale(&Cyclotomic::from_int(-2))])
            .unwrap();
        let err = rs.validate().unwrap_err();
        assert!(matches!(err, RootSystemError::AxiomViolation { axiom: Axiom::OnlyOppositeCollinear, .. }));
    }

    #[test]
    fn lone_root_is_not_closed_but_a_pair_is() {
        let e1 = Vector::from_ints(&[1, 0]);
        let lone = RootSystem::from_roots("lone", 2, vec![e1.clone()]).unwrap();
        assert!(matches!(
            lone.validate().unwrap_err(),
            RootSystemError::AxiomViolation { axiom: Axiom::ReflectionInvariance, .. }
        ));
        let pair = RootSystem::from_roots("pair", 2, vec![e1.clone(), e1.neg()]).unwrap();
        pair.validate().unwrap();
        // adding a second root without closing under reflections fails
        let open = RootSystem::from_roots("open", 2, vec![e1.clone(), e1.neg(), Vector::from_ints(&[1, 1]), Vector::from_ints(&[-1, -1])]).unwrap();
        assert!(open.validate().is_err());
    }

    #[test]
    fn reflection_matrices() {
        let m = reflection_matrix(&Vector::from_ints(&[1, 0])).unwrap();
        assert_eq!(m, Matrix::from_rows(vec![vec![Cyclotomic::from_int(-1), Cyclotomic::from_int(0)], vec![Cyclotomic::from_int(0), Cyclotomic::from_int(1)]]));
        let swap = reflection_matrix(&Vector::from_ints(&[1, -1, 0])).unwrap();
        let mut expected = Matrix::zeros(3, 3);
        expected[(0, 1)] = Cyclotomic::from_int(1);
        expected[(1, 0)] = Cyclotomic::from_int(1);
        expected[(2, 2)] = Cyclotomic::from_int(1);
        assert_eq!(swap, expected);
        assert!(matches!(reflection_matrix(&Vector::zero(2)), Err(RootSystemError::ZeroVector)));
    }

    #[test]
    fn reflections_square_to_one_and_fix_roots_up_to_sign() {
        for name in ["A2", "B3", "G2", "H3", "I2(5)"] {
            let rs = RootSystem::build(name).unwrap();
            for v in rs.roots() {
                let m = reflection_matrix(v).unwrap();
                assert!(m.mul(&m).is_identity());
                assert_eq!(m.mul_vec(&v.0), v.neg().0);
            }
        }
    }

    #[test]
    fn reflections_preserve_the_form() {
        let rs = RootSystem::build("H3").unwrap();
        let x = Vector::from_rationals(&[rat(1, 3), rat(-2, 1), rat(5, 7)]);
        let y = Vector::from_rationals(&[rat(4, 1), rat(1, 2), rat(-1, 5)]);
        for v in rs.roots() {
            assert_eq!(x.reflect_in(v).dot(&y.reflect_in(v)), x.dot(&y));
        }
    }

    #[test]
    fn relation_coefficient_is_scale_invariant() {
        // (x,v)(y,v)/(v,v) is unchanged by v -> cv
        let rs = RootSystem::build("B3").unwrap();
        let x = Vector::from_rationals(&[rat(1, 3), rat(-2, 1), rat(5, 7)]);
        let y = Vector::from_rationals(&[rat(4, 1), rat(1, 2), rat(-1, 5)]);
        let coeff = |v: &Vector| &(&x.dot(v) * &y.dot(v)) * &v.norm2().inv().unwrap();
        for v in rs.roots() {
            let c = Cyclotomic::from_rational(rat(-7, 3));
            assert_eq!(coeff(&v.scale(&c)), coeff(v));
        }
    }

    #[test]
    fn scale_invariance_of_reflections() {
        let rs = RootSystem::build("H3").unwrap();
        let v = rs.root(4);
        for c in [rat(3, 1), rat(-2, 7), rat(5, 3)] {
            let c = Cyclotomic::from_rational(c);
            assert_eq!(reflection_matrix(&v.scale(&c)).unwrap(), reflection_matrix(v).unwrap());
        }
        let c = Cyclotomic::sqrt_rational(&rat(2, 1)).unwrap();
        assert_eq!(reflection_matrix(&v.scale(&c)).unwrap(), reflection_matrix(v).unwrap());
    }
}
