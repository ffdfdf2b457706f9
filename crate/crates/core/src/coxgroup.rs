//! The finite Coxeter group `W(R)` generated by the reflections of a root
//! system, with its conjugacy classes and eigenvalue census.
//!
//! Elements are stored as permutations of the root list; matrices are
//! recovered on demand from the images of a basis of roots.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::Matrix;
use crate::rootsystem::{RootSystem, Vector};
use crate::scalar::{Cyclotomic, Rational};

/// Default limit on the number of group elements produced by [`CoxeterGroup::generate`].
pub const DEFAULT_CLOSURE_BUDGET: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group closure exceeded the budget of {0} elements")]
    ClosureBudgetExceeded(usize),
    #[error("reflection in root #{0} does not permute the root set")]
    NotRootPermutation(usize),
    #[error("the group does not contain -I")]
    NoMinusIdentity,
    #[error("cannot parse {0:?} as kappa (expected +1 or -1)")]
    BadKappa(String),
}

/// The sign `κ = ±1` selecting traces (`+1`) or supertraces (`-1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kappa {
    Plus,
    Minus,
}

impl Kappa {
    pub fn value(self) -> i64 {
        match self {
            Kappa::Plus => 1,
            Kappa::Minus => -1,
        }
    }

    pub fn flip(self) -> Kappa {
        match self {
            Kappa::Plus => Kappa::Minus,
            Kappa::Minus => Kappa::Plus,
        }
    }

    pub fn scalar(self) -> Cyclotomic {
        Cyclotomic::from_int(self.value())
    }

    /// `κ^(p q)` for parities `p`, `q`.
    pub fn sign(self, p: usize, q: usize) -> i64 {
        if self == Kappa::Minus && p % 2 == 1 && q % 2 == 1 {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kappa::Plus => "+1",
            Kappa::Minus => "-1",
        })
    }
}

impl FromStr for Kappa {
    type Err = GroupError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "+1" | "1" | "+" => Ok(Kappa::Plus),
            "-1" | "-" => Ok(Kappa::Minus),
            other => Err(GroupError::BadKappa(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    pub representative: usize,
    /// Sorted element ids.
    pub members: Vec<usize>,
    pub order: usize,
    /// Dimension of the `+1` eigenspace of the representative.
    pub e_plus: usize,
    /// Dimension of the `-1` eigenspace of the representative.
    pub e_minus: usize,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn e(&self, kappa: Kappa) -> usize {
        match kappa {
            Kappa::Plus => self.e_plus,
            Kappa::Minus => self.e_minus,
        }
    }
}

type Perm = Vec<u16>;

pub struct CoxeterGroup {
    roots: Arc<RootSystem>,
    perms: Vec<Perm>,
    index: HashMap<Perm, usize>,
    /// `(generator position, parent id)` with `g = s · parent`; unused for the identity.
    parent: Vec<(usize, usize)>,
    generators: Vec<usize>,
    reflection_of_root: Vec<usize>,
    inverse: Vec<usize>,
    table: Option<Vec<u32>>,
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
    minus_identity: Option<usize>,
    /// Indices of roots forming a basis of their span.
    basis_roots: Vec<usize>,
    /// Basis of the orthogonal complement of the root span (fixed by `W`).
    complement: Vec<Vec<Cyclotomic>>,
    /// Inverse of `[basis roots | complement]`.
    frame_inverse: Matrix,
    matrices: Vec<OnceLock<Matrix>>,
}

impl fmt::Debug for CoxeterGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterGroup")
            .field("system", &self.roots.name())
            .field("order", &self.order())
            .field("classes", &self.classes.len())
            .finish()
    }
}

const TABLE_LIMIT: usize = 2000;

fn compose(a: &[u16], b: &[u16]) -> Perm {
    b.iter().map(|&i| a[i as usize]).collect()
}

impl CoxeterGroup {
    pub fn generate(rs: RootSystem) -> Result<CoxeterGroup, GroupError> {
        Self::generate_with_budget(rs, DEFAULT_CLOSURE_BUDGET)
    }

    /// Breadth-first closure over the generating reflections. The identity
    /// has id 0.
    pub fn generate_with_budget(rs: RootSystem, budget: usize) -> Result<CoxeterGroup, GroupError> {
        let n_roots = rs.roots().len();
        let root_index: HashMap<Vec<Rational>, usize> = rs.roots().iter().enumerate().map(|(i, r)| (r.key(), i)).collect();
        let reflection_perm = |v: &Vector, which: usize| -> Result<Perm, GroupError> {
            rs.roots()
                .iter()
                .map(|u| root_index.get(&u.reflect_in(v).key()).map(|&j| j as u16).ok_or(GroupError::NotRootPermutation(which)))
                .collect()
        };
        let root_perms: Vec<Perm> = (0..n_roots).map(|i| reflection_perm(rs.root(i), i)).collect::<Result<_, _>>()?;

        let identity: Perm = (0..n_roots as u16).collect();
        let mut perms = vec![identity.clone()];
        let mut parent = vec![(0usize, 0usize)];
        let mut index = HashMap::new();
        index.insert(identity, 0usize);
        let gen_perms: Vec<&Perm> = rs.simple_roots().iter().map(|&s| &root_perms[s]).collect();
        let mut cursor = 0;
        while cursor < perms.len() {
            for (k, s) in gen_perms.iter().enumerate() {
                let p = compose(s, &perms[cursor]);
                if !index.contains_key(&p) {
                    if perms.len() >= budget {
                        return Err(GroupError::ClosureBudgetExceeded(budget));
                    }
                    index.insert(p.clone(), perms.len());
                    perms.push(p);
                    parent.push((k, cursor));
                }
            }
            cursor += 1;
        }
        let order = perms.len();
        let lookup = |p: &Perm| *index.get(p).expect("group is closed");
        let generators: Vec<usize> = gen_perms.iter().map(|p| lookup(p)).collect();
        let reflection_of_root: Vec<usize> = root_perms.iter().map(lookup).collect();
        let inverse: Vec<usize> = perms
            .iter()
            .map(|p| {
                let mut inv = vec![0u16; p.len()];
                for (i, &j) in p.iter().enumerate() {
                    inv[j as usize] = i as u16;
                }
                lookup(&inv)
            })
            .collect();
        let table = (order <= TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; order * order];
            for a in 0..order {
                for b in 0..order {
                    t[a * order + b] = lookup(&compose(&perms[a], &perms[b])) as u32;
                }
            }
            t
        });
        let neg: Option<Perm> = (0..n_roots).map(|i| rs.negation(i).map(|j| j as u16)).collect();
        // the matrix check below rejects the case where the roots do not span V
        let minus_identity = neg.and_then(|p| index.get(&p).copied());

        let (basis_roots, complement, frame_inverse) = frame(&rs);
        let mut group = CoxeterGroup {
            roots: Arc::new(rs),
            perms,
            index,
            parent,
            generators,
            reflection_of_root,
            inverse,
            table,
            classes: Vec::new(),
            class_of: Vec::new(),
            minus_identity: None,
            basis_roots,
            complement,
            frame_inverse,
            matrices: (0..order).map(|_| OnceLock::new()).collect(),
        };
        group.minus_identity = minus_identity.filter(|&id| {
            let n = group.rank();
            group.matrix(id) == &Matrix::identity(n).scale(&Cyclotomic::from_int(-1))
        });
        group.compute_classes();
        Ok(group)
    }

    fn compute_classes(&mut self) {
        let order = self.order();
        let mut class_of = vec![usize::MAX; order];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for start in 0..order {
            if class_of[start] != usize::MAX {
                continue;
            }
            let label = orbits.len();
            let mut orbit = vec![start];
            class_of[start] = label;
            let mut cursor = 0;
            while cursor < orbit.len() {
                let x = orbit[cursor];
                for &s in &self.generators {
                    let y = self.mul(self.mul(s, x), s);
                    if class_of[y] == usize::MAX {
                        class_of[y] = label;
                        orbit.push(y);
                    }
                }
                cursor += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        let classes: Vec<ConjClass> = orbits
            .into_par_iter()
            .map(|members| {
                let rep = members[0];
                ConjClass {
                    representative: rep,
                    order: self.element_order(rep),
                    e_plus: self.eigen_multiplicity(rep, Kappa::Plus),
                    e_minus: self.eigen_multiplicity(rep, Kappa::Minus),
                    members,
                }
            })
            .collect();
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.roots
    }

    pub fn root_system_arc(&self) -> Arc<RootSystem> {
        Arc::clone(&self.roots)
    }

    /// Ambient dimension `N`.
    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Element ids of the generating (simple) reflections.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Element id of `R_v` for the root with index `i`.
    pub fn reflection(&self, root: usize) -> usize {
        self.reflection_of_root[root]
    }

    /// A shortest word `[k_1, ..., k_m]` (positions in [`Self::generators`]) with
    /// `g = s_{k_1} ⋯ s_{k_m}`.
    pub fn word(&self, g: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut x = g;
        while x != 0 {
            let (k, p) = self.parent[x];
            out.push(k);
            x = p;
        }
        out
    }

    /// Product of simple reflections given by positions in [`Self::generators`].
    pub fn from_word(&self, word: &[usize]) -> usize {
        word.iter().fold(self.identity(), |acc, &k| self.mul(acc, self.generators[k]))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[&compose(&self.perms[a], &self.perms[b])],
        }
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity(), |acc, _| self.mul(acc, a))
    }

    /// Index of the root `g(v_i)`.
    pub fn act_on_root(&self, g: usize, root: usize) -> usize {
        self.perms[g][root] as usize
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u32 {
        self.classes.iter().fold(1, |acc, c| crate::scalar::lcm(acc, c.order as u32))
    }

    /// Exact matrix of `g` in the coordinates of `V`.
    pub fn matrix(&self, g: usize) -> &Matrix {
        self.matrices[g].get_or_init(|| {
            let n = self.rank();
            let mut cols: Vec<Vec<Cyclotomic>> =
                self.basis_roots.iter().map(|&b| self.roots.root(self.act_on_root(g, b)).0.clone()).collect();
            cols.extend(self.complement.iter().cloned());
            Matrix::from_columns(&cols, n).mul(&self.frame_inverse)
        })
    }

    /// Id of the element with the given matrix, if it belongs to the group.
    pub fn element_of_matrix(&self, m: &Matrix) -> Option<usize> {
        let p: Option<Perm> = self
            .roots
            .roots()
            .iter()
            .map(|r| self.roots.find_root(&Vector(m.mul_vec(&r.0))).map(|j| j as u16))
            .collect();
        let id = *self.index.get(&p?)?;
        (self.matrix(id) == m).then_some(id)
    }

    /// `E(g) = N − rank(g − κ I)`.
    pub fn eigen_multiplicity(&self, g: usize, kappa: Kappa) -> usize {
        let n = self.rank();
        let shifted = self.matrix(g).sub(&Matrix::identity(n).scale(&kappa.scalar()));
        n - shifted.rank()
    }

    /// Basis of the κ-eigenspace of `g` (not orthonormalized).
    pub fn eigenspace(&self, g: usize, kappa: Kappa) -> Vec<Vec<Cyclotomic>> {
        let n = self.rank();
        self.matrix(g).sub(&Matrix::identity(n).scale(&kappa.scalar())).nullspace()
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    /// Number of classes without eigenvalue κ: `T_R` for κ = +1, `ST_R` for κ = −1.
    pub fn counts(&self, kappa: Kappa) -> usize {
        self.classes.iter().filter(|c| c.e(kappa) == 0).count()
    }

    pub fn has_minus_identity(&self) -> bool {
        self.minus_identity.is_some()
    }

    pub fn minus_identity(&self) -> Option<usize> {
        self.minus_identity
    }
}

/// Picks a basis of the root span among the roots and completes it by the
/// orthogonal complement; returns the inverse of the resulting frame.
fn frame(rs: &RootSystem) -> (Vec<usize>, Vec<Vec<Cyclotomic>>, Matrix) {
    let n = rs.rank();
    let mut basis: Vec<usize> = Vec::new();
    let mut rank = 0;
    let candidates: Vec<usize> = rs.simple_roots().iter().copied().chain(0..rs.roots().len()).collect();
    for s in candidates {
        if rank == n {
            break;
        }
        let mut cols: Vec<Vec<Cyclotomic>> = basis.iter().map(|&b| rs.root(b).0.clone()).collect();
        cols.push(rs.root(s).0.clone());
        let r = Matrix::from_columns(&cols, n).rank();
        if r > rank {
            basis.push(s);
            rank = r;
        }
    }
    let complement = if rank < n {
        let rows: Vec<Vec<Cyclotomic>> = basis.iter().map(|&b| rs.root(b).0.clone()).collect();
        if rows.is_empty() {
            (0..n).map(|i| Matrix::identity(n).column(i)).collect()
        } else {
            Matrix::from_rows(rows).nullspace()
        }
    } else {
        Vec::new()
    };
    let mut cols: Vec<Vec<Cyclotomic>> = basis.iter().map(|&b| rs.root(b).0.clone()).collect();
    cols.extend(complement.iter().cloned());
    let inv = Matrix::from_columns(&cols, n).inverse().expect("frame is a basis");
    (basis, complement, inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(name: &str) -> CoxeterGroup {
        CoxeterGroup::generate(RootSystem::build(name).unwrap()).unwrap()
    }

    #[test]
    fn orders_match_classical_formulas() {
        for name in ["A0", "A1", "A2", "A3", "B2", "B3", "G2", "I2(5)", "H3"] {
            let g = group(name);
            let kind = g.root_system().kind().unwrap();
            assert_eq!(g.order() as u64, kind.classical_order(), "{name}");
        }
    }

    #[test]
    fn class_sizes() {
        let a2 = group("A2");
        let mut sizes: Vec<usize> = a2.classes().iter().map(|c| c.size()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(group("B2").classes().len(), 5);
        assert_eq!(group("A0").classes().len(), 1);
    }

    #[test]
    fn matrices_are_orthogonal_and_multiplicative() {
        let g = group("H3");
        for a in [3, 17, 55, 101] {
            let m = g.matrix(a);
            assert!(m.transpose().mul(m).is_identity());
            for b in [0, 9, 64] {
                assert_eq!(&g.matrix(a).mul(g.matrix(b)), g.matrix(g.mul(a, b)));
            }
            assert_eq!(g.element_of_matrix(m), Some(a));
        }
    }

    #[test]
    fn reflections_have_one_minus_eigenvalue() {
        let g = group("B3");
        for r in 0..g.root_system().roots().len() {
            let id = g.reflection(r);
            assert_eq!(g.eigen_multiplicity(id, Kappa::Plus), 2);
            assert_eq!(g.eigen_multiplicity(id, Kappa::Minus), 1);
        }
        assert_eq!(g.eigen_multiplicity(0, Kappa::Plus), 3);
        assert_eq!(g.eigen_multiplicity(0, Kappa::Minus), 0);
    }

    #[test]
    fn b2_census() {
        let g = group("B2");
        assert_eq!(g.counts(Kappa::Plus), 2);
        assert_eq!(g.counts(Kappa::Minus), 2);
        assert!(g.has_minus_identity());
        assert!(!group("A2").has_minus_identity());
        assert!(group("I2(6)").has_minus_identity());
        assert!(!group("I2(7)").has_minus_identity());
    }

    #[test]
    fn words_reproduce_elements() {
        let g = group("H3");
        for x in 0..g.order() {
            let w = g.word(x);
            assert_eq!(g.from_word(&w), x);
        }
        assert!(g.word(0).is_empty());
        assert_eq!(g.word(g.generators()[1]), vec![1]);
    }

    #[test]
    fn budget_is_enforced() {
        let rs = RootSystem::build("B3").unwrap();
        assert_eq!(CoxeterGroup::generate_with_budget(rs, 10).unwrap_err(), GroupError::ClosureBudgetExceeded(10));
    }

    #[test]
    fn kappa_text() {
        assert_eq!("+1".parse::<Kappa>().unwrap(), Kappa::Plus);
        assert_eq!("-1".parse::<Kappa>().unwrap(), Kappa::Minus);
        assert!("2".parse::<Kappa>().is_err());
        assert_eq!(Kappa::Minus.sign(1, 3), -1);
        assert_eq!(Kappa::Minus.sign(2, 3), 1);
    }
}
