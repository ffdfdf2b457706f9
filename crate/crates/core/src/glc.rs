//! Ground Level Conditions: the linear constraints `str([c⁰_i, c¹_j] g) = 0`
//! on the restriction of a κ-trace to the group algebra.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::coxgroup::{CoxeterGroup, Kappa};
use crate::linalg::{dot, Matrix};
use crate::scalar::{Cyclotomic, NuPoly, Rational, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlcError {
    #[error("restriction of the solution space to the {expected} eigenvalue-free classes is not bijective (nullity {found})")]
    RestrictionNotBijective { expected: usize, found: usize },
    #[error("the group does not contain -I")]
    NoMinusIdentity,
    #[error("expected {expected} coupling constants, got {found}")]
    WrongNuCount { expected: usize, found: usize },
    #[error("symbolic solution leaves a nonzero residual in row {0}")]
    NonzeroResidual(usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A function on the group constant on conjugacy classes, indexed by class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralFunction {
    pub values: Vec<NuPoly>,
}

impl CentralFunction {
    pub fn value(&self, class: usize) -> &NuPoly {
        &self.values[class]
    }

    pub fn evaluate(&self, nu: &[Cyclotomic]) -> Result<Vec<Cyclotomic>, ScalarError> {
        self.values.iter().map(|v| v.evaluate(nu)).collect()
    }
}

/// One equation: `Σ_class coeffs[class] · x_class = 0`, coefficients affine in ν.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlcRow {
    /// Class of the group element the row was generated from.
    pub source: usize,
    /// Indices of the two eigenvectors.
    pub pair: (usize, usize),
    pub coeffs: BTreeMap<usize, NuPoly>,
}

#[derive(Debug, Clone)]
pub struct GlcSystem {
    pub kappa: Kappa,
    pub nvars: usize,
    pub unknowns: usize,
    pub rows: Vec<GlcRow>,
    /// Classes with `E(g) = 0`.
    pub free_classes: Vec<usize>,
}

/// Builds the conditions from one representative per class.
pub fn build_glc(group: &CoxeterGroup, kappa: Kappa) -> GlcSystem {
    let reps: Vec<usize> = group.classes().iter().map(|c| c.representative).collect();
    build_glc_from(group, kappa, &reps)
}

/// Builds the conditions from the given class representatives (one element
/// per class, in class order).
pub fn build_glc_from(group: &CoxeterGroup, kappa: Kappa, reps: &[usize]) -> GlcSystem {
    let rs = group.root_system();
    let nvars = rs.num_classes();
    let norms: Vec<Cyclotomic> = rs.roots().iter().map(|v| v.norm2().inv().expect("nonzero root")).collect();
    let rows: Vec<GlcRow> = reps
        .par_iter()
        .enumerate()
        .flat_map_iter(|(class, &g)| {
            let basis = if group.classes()[class].e(kappa) == 0 { Vec::new() } else { group.eigenspace(g, kappa) };
            let projections: Vec<Vec<Cyclotomic>> =
                basis.iter().map(|c| rs.roots().iter().map(|v| dot(c, &v.0)).collect()).collect();
            let mut out = Vec::new();
            for i in 0..basis.len() {
                for j in i..basis.len() {
                    let mut coeffs: BTreeMap<usize, NuPoly> = BTreeMap::new();
                    let constant = dot(&basis[i], &basis[j]);
                    coeffs.entry(class).or_insert_with(|| NuPoly::zero(nvars)).add_assign_ref(&NuPoly::constant(constant, nvars));
                    for (r, inv_norm) in norms.iter().enumerate() {
                        let c = &(&projections[i][r] * &projections[j][r]) * inv_norm;
                        if c.is_zero() {
                            continue;
                        }
                        let target = group.class_of(group.mul(group.reflection(r), g));
                        coeffs
                            .entry(target)
                            .or_insert_with(|| NuPoly::zero(nvars))
                            .add_assign_ref(&NuPoly::var_times(rs.class_of_root(r), c, nvars));
                    }
                    coeffs.retain(|_, p| !p.is_zero());
                    out.push(GlcRow { source: class, pair: (i, j), coeffs });
                }
            }
            out
        })
        .collect();
    let free_classes = group.classes().iter().enumerate().filter(|(_, c)| c.e(kappa) == 0).map(|(i, _)| i).collect();
    GlcSystem { kappa, nvars, unknowns: group.classes().len(), rows, free_classes }
}

impl GlcSystem {
    fn check_nu(&self, nu: &[Cyclotomic]) -> Result<(), GlcError> {
        if nu.len() != self.nvars {
            return Err(GlcError::WrongNuCount { expected: self.nvars, found: nu.len() });
        }
        Ok(())
    }

    /// Coefficient matrix at a numeric ν.
    pub fn matrix_at(&self, nu: &[Cyclotomic]) -> Result<Matrix, GlcError> {
        self.check_nu(nu)?;
        let mut m = Matrix::zeros(self.rows.len(), self.unknowns);
        for (i, row) in self.rows.iter().enumerate() {
            for (&c, p) in &row.coeffs {
                m[(i, c)] = p.evaluate(nu)?;
            }
        }
        Ok(m)
    }

    pub fn nullity(&self, nu: &[Cyclotomic]) -> Result<usize, GlcError> {
        Ok(self.unknowns - self.matrix_at(nu)?.rank())
    }

    pub fn nullity_rational(&self, nu: &[Rational]) -> Result<usize, GlcError> {
        self.nullity(&to_cyclotomic(nu))
    }

    /// Basis of the solution space normalized to the standard basis on the
    /// eigenvalue-free classes.
    pub fn solution_basis(&self, nu: &[Cyclotomic]) -> Result<Vec<Vec<Cyclotomic>>, GlcError> {
        let kernel = self.matrix_at(nu)?.nullspace();
        let free = &self.free_classes;
        if kernel.len() != free.len() {
            return Err(GlcError::RestrictionNotBijective { expected: free.len(), found: kernel.len() });
        }
        if kernel.is_empty() {
            return Ok(Vec::new());
        }
        let restriction = Matrix::from_rows(kernel.iter().map(|k| free.iter().map(|&c| k[c].clone()).collect()).collect());
        let inv = restriction
            .inverse()
            .ok_or(GlcError::RestrictionNotBijective { expected: free.len(), found: kernel.len() })?;
        // row f of inv · K has value δ on the free classes
        let k = Matrix::from_rows(kernel);
        let normalized = inv.mul(&k);
        Ok((0..normalized.rows()).map(|i| normalized.row(i).to_vec()).collect())
    }

    pub fn solution_basis_rational(&self, nu: &[Rational]) -> Result<Vec<Vec<Cyclotomic>>, GlcError> {
        self.solution_basis(&to_cyclotomic(nu))
    }

    /// Row values `Σ coeffs · x` for a numeric vector `x` at numeric ν.
    pub fn residuals(&self, x: &[Cyclotomic], nu: &[Cyclotomic]) -> Result<Vec<Cyclotomic>, GlcError> {
        Ok(self.matrix_at(nu)?.mul_vec(x))
    }

    /// Row values for a central function with polynomial values.
    pub fn symbolic_residuals(&self, f: &CentralFunction) -> Vec<NuPoly> {
        self.rows
            .iter()
            .map(|row| {
                let mut acc = NuPoly::zero(self.nvars);
                for (&c, p) in &row.coeffs {
                    acc.add_assign_ref(&(p * &f.values[c]));
                }
                acc
            })
            .collect()
    }
}

/// Solves the conditions over the polynomial ring in ν: each eigenvalue-free
/// class gets a basis function, extended to classes with `E(g) = k` from
/// those with `E = k − 1` using one eigenvector, then all rows are checked.
pub fn solve_symbolic(group: &CoxeterGroup, kappa: Kappa) -> Result<Vec<CentralFunction>, GlcError> {
    let sys = build_glc(group, kappa);
    let rs = group.root_system();
    let nvars = sys.nvars;
    let mut order: Vec<usize> = (0..group.classes().len()).collect();
    order.sort_by_key(|&c| group.classes()[c].e(kappa));
    let mut out = Vec::new();
    for &seed in &sys.free_classes {
        let mut values: Vec<Option<NuPoly>> = vec![None; group.classes().len()];
        for &c in &order {
            let class = &group.classes()[c];
            if class.e(kappa) == 0 {
                let v = if c == seed { NuPoly::one(nvars) } else { NuPoly::zero(nvars) };
                values[c] = Some(v);
                continue;
            }
            let g = class.representative;
            let eig = group.eigenspace(g, kappa);
            let cvec = &eig[0];
            let scale = -(dot(cvec, cvec).inv()?);
            let mut acc = NuPoly::zero(nvars);
            for (r, v) in rs.roots().iter().enumerate() {
                let p = dot(cvec, &v.0);
                if p.is_zero() {
                    continue;
                }
                let coeff = &(&(&p * &p) * &v.norm2().inv()?) * &scale;
                let target = group.class_of(group.mul(group.reflection(r), g));
                let known = values[target].as_ref().expect("lower level is solved first");
                acc.add_assign_ref(&(&NuPoly::var_times(rs.class_of_root(r), coeff, nvars) * known));
            }
            values[c] = Some(acc);
        }
        let f = CentralFunction { values: values.into_iter().map(|v| v.expect("every class visited")).collect() };
        if let Some(bad) = sys.symbolic_residuals(&f).iter().position(|p| !p.is_zero()) {
            return Err(GlcError::NonzeroResidual(bad));
        }
        out.push(f);
    }
    Ok(out)
}

/// `f ↦ (g ↦ f(g · K))` with `K = −I`; exchanges the κ = −1 and κ = +1
/// solution spaces.
pub fn klein_transport<T: Clone>(values: &[T], group: &CoxeterGroup) -> Result<Vec<T>, GlcError> {
    let k = group.minus_identity().ok_or(GlcError::NoMinusIdentity)?;
    Ok(group
        .classes()
        .iter()
        .map(|c| values[group.class_of(group.mul(c.representative, k))].clone())
        .collect())
}

fn to_cyclotomic(nu: &[Rational]) -> Vec<Cyclotomic> {
    nu.iter().cloned().map(Cyclotomic::from_rational).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::RootSystem;
    use crate::scalar::rational::{int, rat};

    fn group(name: &str) -> CoxeterGroup {
        CoxeterGroup::generate(RootSystem::build(name).unwrap()).unwrap()
    }

    #[test]
    fn a1_rows_by_hand() {
        // [c⁰, c¹] g with c = v, roots ±v: (c,c) g + 2ν R g
        let g = group("A1");
        let refl = g.reflection(0);
        let id_class = g.class_of(0);
        let r_class = g.class_of(refl);
        let nu = NuPoly::var(0, 1);
        let two_nu = nu.scale_rational(&int(2));

        let minus = build_glc(&g, Kappa::Minus);
        assert_eq!(minus.rows.len(), 1);
        assert_eq!(minus.rows[0].coeffs[&r_class], NuPoly::one(1));
        assert_eq!(minus.rows[0].coeffs[&id_class], two_nu);

        let plus = build_glc(&g, Kappa::Plus);
        assert_eq!(plus.rows.len(), 1);
        assert_eq!(plus.rows[0].coeffs[&id_class], NuPoly::one(1));
        assert_eq!(plus.rows[0].coeffs[&r_class], two_nu);
    }

    #[test]
    fn a1_solutions() {
        let g = group("A1");
        let r_class = g.class_of(g.reflection(0));
        let id_class = g.class_of(0);
        let nu = NuPoly::var(0, 1);
        let minus_two_nu = nu.scale_rational(&int(-2));
        let s = solve_symbolic(&g, Kappa::Minus).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].values[id_class], NuPoly::one(1));
        assert_eq!(s[0].values[r_class], minus_two_nu);
        let t = solve_symbolic(&g, Kappa::Plus).unwrap();
        assert_eq!(t[0].values[r_class], NuPoly::one(1));
        assert_eq!(t[0].values[id_class], minus_two_nu);
        for q in [rat(1, 2), rat(3, 7), int(0)] {
            assert_eq!(build_glc(&g, Kappa::Minus).nullity_rational(std::slice::from_ref(&q)).unwrap(), 1);
            let b = build_glc(&g, Kappa::Minus).solution_basis_rational(std::slice::from_ref(&q)).unwrap();
            assert_eq!(b[0][r_class], Cyclotomic::from_rational(-q * int(2)));
        }
    }

    #[test]
    fn a0_has_no_rows() {
        let g = group("A0");
        let sys = build_glc(&g, Kappa::Minus);
        assert!(sys.rows.is_empty());
        let b = sys.solution_basis(&[]).unwrap();
        assert_eq!(b, vec![vec![Cyclotomic::from_int(1)]]);
    }

    #[test]
    fn klein_transport_requires_minus_identity() {
        let g = group("A2");
        assert_eq!(klein_transport(&[1, 2, 3], &g), Err(GlcError::NoMinusIdentity));
    }

    #[test]
    fn wrong_nu_count() {
        let g = group("B2");
        let sys = build_glc(&g, Kappa::Plus);
        assert!(matches!(sys.nullity_rational(&[int(1)]), Err(GlcError::WrongNuCount { expected: 2, found: 1 })));
    }
}
