use std::sync::Arc;

use crate::algebra::{Algebra, Monomial};
use crate::linalg::Matrix;
use crate::scalar::Cyclotomic;

use super::{KappaTrace, TraceError};

/// Gram matrix of `B(f, h) = str(f h)` on a monomial basis.
#[derive(Debug, Clone)]
pub struct GramReport {
    pub basis: Vec<Monomial>,
    pub matrix: Matrix,
    pub rank: usize,
}

impl GramReport {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn is_degenerate(&self) -> bool {
        self.rank < self.basis.len()
    }
}

/// All `A_0^{e0} A_1^{e1} g` with total degree at most `max_degree`, over
/// every group element.
pub fn monomial_basis(alg: &Arc<Algebra>, max_degree: usize) -> Vec<Monomial> {
    let n = alg.rank();
    let mut exps: Vec<Vec<u16>> = vec![vec![0; 2 * n]];
    let mut frontier = exps.clone();
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for e in &frontier {
            // extend only at or after the last nonzero slot so each exponent appears once
            let start = e.iter().rposition(|&x| x > 0).unwrap_or(0);
            for k in start..2 * n {
                let mut e2 = e.clone();
                e2[k] += 1;
                next.push(e2);
            }
        }
        exps.extend(next.iter().cloned());
        frontier = next;
    }
    let mut out = Vec::new();
    for g in 0..alg.group().order() {
        for e in &exps {
            out.push(Monomial { e0: e[..n].to_vec(), e1: e[n..].to_vec(), g });
        }
    }
    out
}

/// Requires a trace with numeric ν.
pub fn bilinear_gram(tr: &KappaTrace, max_degree: usize) -> Result<GramReport, TraceError> {
    if tr.nu().is_none() {
        return Err(TraceError::NumericNuRequired);
    }
    let alg = tr.algebra();
    let basis = monomial_basis(alg, max_degree);
    let elements: Vec<_> = basis
        .iter()
        .map(|m| {
            let mut x = alg.zero();
            x.add_term(m.clone(), crate::scalar::NuPoly::one(alg.nvars()));
            x
        })
        .collect();
    let dim = basis.len();
    let mut matrix = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let prod = alg.multiply(&elements[i], &elements[j])?;
            let v = tr.evaluate(&prod)?;
            matrix[(i, j)] = v.as_constant().unwrap_or_else(|| Cyclotomic::from_int(0));
        }
    }
    let rank = matrix.rank();
    Ok(GramReport { basis, matrix, rank })
}
