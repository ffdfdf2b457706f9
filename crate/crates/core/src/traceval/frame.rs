use crate::algebra::Letter;
use crate::coxgroup::{CoxeterGroup, Kappa};
use crate::linalg::Matrix;
use crate::scalar::{lcm, Cyclotomic, Rational};

/// Spectral projectors `P_λ = (1/n) Σ_j λ^{−j} g^j` of a group element of
/// order `n`, one per eigenvalue that actually occurs.
#[derive(Clone, Debug)]
pub struct Projectors {
    pub order: usize,
    /// `(k, P_λ)` with `λ = ζ_n^k`.
    pub parts: Vec<(usize, Matrix)>,
}

impl Projectors {
    pub fn new(group: &CoxeterGroup, g: usize) -> Projectors {
        let n = group.element_order(g);
        let dim = group.rank();
        let m = group.matrix(g);
        let mut powers = vec![Matrix::identity(dim)];
        for j in 1..n {
            powers.push(powers[j - 1].mul(m));
        }
        let inv_n = Cyclotomic::from_rational(Rational::new(1.into(), (n as i64).into()));
        let mut parts = Vec::new();
        for k in 0..n {
            let mut p = Matrix::zeros(dim, dim);
            for (j, mj) in powers.iter().enumerate() {
                let c = &Cyclotomic::zeta_pow(n as u32, -((j * k) as i64)) * &inv_n;
                p = p.add(&mj.scale(&c));
            }
            if p.entries().iter().any(|x| !x.is_zero()) {
                parts.push((k, p));
            }
        }
        Projectors { order: n, parts }
    }

    pub fn eigenvalue(&self, k: usize) -> Cyclotomic {
        Cyclotomic::zeta_pow(self.order as u32, k as i64)
    }

    /// Whether `ζ_n^k = κ`.
    pub fn is_kappa(&self, k: usize, kappa: Kappa) -> bool {
        match kappa {
            Kappa::Plus => k == 0,
            Kappa::Minus => 2 * k == self.order,
        }
    }

    pub fn kappa_part(&self, kappa: Kappa) -> Option<&Matrix> {
        self.parts.iter().find(|(k, _)| self.is_kappa(*k, kappa)).map(|(_, p)| p)
    }
}

/// An eigenbasis adapted to a group element `g`: `b_{0i} = a_0(u_i)` with
/// `g u_i = λ_i u_i`, and `b_{1i} = a_1(ũ_i)` for the dual basis
/// `(u_i, ũ_j) = δ_ij`, which has eigenvalues `1/λ_i`.
#[derive(Clone, Debug)]
pub struct EigenFrame {
    pub g: usize,
    /// Conductor of the field holding the frame.
    pub field: u32,
    pub letters: Vec<Letter>,
    pub eigenvalues: Vec<Cyclotomic>,
    /// `C_IJ`, the ν-independent part of `[b_I, b_J]`.
    pub symplectic: Matrix,
    /// Columns `u_i`; the change of basis from the standard coordinates.
    pub basis: Matrix,
}

pub fn eigenframe(group: &CoxeterGroup, g: usize) -> EigenFrame {
    let n = group.rank();
    let proj = Projectors::new(group, g);
    let field = lcm(group.root_system().conductor(), proj.order as u32);
    let m = group.matrix(g);
    let mut vectors: Vec<Vec<Cyclotomic>> = Vec::new();
    let mut eigenvalues = Vec::new();
    for (k, _) in &proj.parts {
        let lambda = proj.eigenvalue(*k);
        let shifted = m.sub(&Matrix::identity(n).scale(&lambda));
        for v in shifted.nullspace() {
            vectors.push(v);
            eigenvalues.push(lambda.clone());
        }
    }
    let u = Matrix::from_columns(&vectors, n);
    let dual = u.transpose().inverse().expect("eigenvectors form a basis");
    let mut letters = Vec::with_capacity(2 * n);
    let zero = vec![Cyclotomic::from_int(0); n];
    for v in &vectors {
        letters.push(Letter::from_parts(v.clone(), zero.clone()));
    }
    let mut all_eigs = eigenvalues.clone();
    for (i, lambda) in eigenvalues.iter().enumerate() {
        letters.push(Letter::from_parts(zero.clone(), dual.column(i)));
        all_eigs.push(lambda.inv().expect("root of unity"));
    }
    let mut c = Matrix::zeros(2 * n, 2 * n);
    for i in 0..2 * n {
        for j in 0..2 * n {
            c[(i, j)] = letters[i].pairing(&letters[j]);
        }
    }
    EigenFrame { g, field, letters, eigenvalues: all_eigs, symplectic: c, basis: u }
}
