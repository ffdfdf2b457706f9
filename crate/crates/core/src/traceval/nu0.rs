use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraElement, Letter, Monomial};
use crate::coxgroup::{CoxeterGroup, Kappa};
use crate::linalg::Matrix;
use crate::scalar::rational::rat;
use crate::scalar::{Cyclotomic, NuPoly};

use super::TraceError;

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

/// `str(Sym(A_0^{e0} A_1^{e1}) g)` at ν = 0 from the Gaussian generating
/// function `str(exp(μ·a) g) = exp(μ_0ᵀ ω μ_1) str(g)`, where
/// `ω = ½(1 + κM)(1 − κM)⁻¹` and `M` is the matrix of `g`.
///
/// `central` is the value of the trace on `g`. When `g` has eigenvalue κ the
/// trace of every monomial times `g` vanishes at ν = 0; asking for a nonzero
/// central value there is an error.
pub fn nu0_oracle(group: &CoxeterGroup, kappa: Kappa, g: usize, central: &Cyclotomic, e0: &[u16], e1: &[u16]) -> Result<Cyclotomic, TraceError> {
    let n = group.rank();
    let zero = Cyclotomic::from_int(0);
    if group.eigen_multiplicity(g, kappa) != 0 {
        if !central.is_zero() {
            return Err(TraceError::EigenvalueKappaPresent);
        }
        return Ok(zero);
    }
    let d0: usize = e0.iter().map(|&e| e as usize).sum();
    let d1: usize = e1.iter().map(|&e| e as usize).sum();
    if d0 != d1 {
        return Ok(zero);
    }
    let m = group.matrix(g);
    let km = m.scale(&kappa.scalar());
    let id = Matrix::identity(n);
    let inv = id.sub(&km).inverse().ok_or(TraceError::EigenvalueKappaPresent)?;
    let omega = id.add(&km).mul(&inv).scale(&Cyclotomic::from_rational(rat(1, 2)));

    // Q^m / m! truncated to exponents below the target; keys are (e0, e1)
    let target: Vec<u16> = e0.iter().chain(e1).copied().collect();
    let mut power: HashMap<Vec<u16>, Cyclotomic> = HashMap::new();
    power.insert(vec![0; 2 * n], Cyclotomic::from_int(1));
    for step in 1..=d0 {
        let mut next: HashMap<Vec<u16>, Cyclotomic> = HashMap::new();
        for (key, c) in &power {
            for i in 0..n {
                if key[i] >= target[i] {
                    continue;
                }
                for j in 0..n {
                    if key[n + j] >= target[n + j] || omega[(i, j)].is_zero() {
                        continue;
                    }
                    let mut k2 = key.clone();
                    k2[i] += 1;
                    k2[n + j] += 1;
                    let term = c * &omega[(i, j)];
                    *next.entry(k2).or_insert_with(|| Cyclotomic::from_int(0)) += &term;
                }
            }
        }
        let inv_step = Cyclotomic::from_rational(rat(1, step as i64));
        power = next.into_iter().map(|(k, c)| (k, &c * &inv_step)).collect();
    }
    let coeff = power.remove(&target).unwrap_or(zero);
    let mut multiplicity: i64 = 1;
    for &e in e0.iter().chain(e1) {
        multiplicity *= factorial(e as usize);
    }
    Ok(&(&coeff * central) * &Cyclotomic::from_int(multiplicity))
}

/// The average over all distinct orderings of the letters of
/// `A_0^{e0} A_1^{e1}`, followed by `g`. With `nu` given, coefficients are
/// evaluated there as the products are formed.
pub fn symmetrized_monomial(alg: &Arc<Algebra>, m: &Monomial, nu: Option<&[Cyclotomic]>) -> AlgebraElement {
    let n = alg.rank();
    let mut counts: Vec<u16> = m.e0.iter().chain(&m.e1).copied().collect();
    let total: usize = counts.iter().map(|&c| c as usize).sum();
    let mut sum = alg.zero();
    let mut words: i64 = 0;
    // depth-first over distinct arrangements, sharing common prefixes
    fn walk(
        alg: &Arc<Algebra>,
        n: usize,
        prefix: &AlgebraElement,
        counts: &mut [u16],
        left: usize,
        nu: Option<&[Cyclotomic]>,
        sum: &mut AlgebraElement,
        words: &mut i64,
    ) {
        if left == 0 {
            sum.add_scaled(prefix, &NuPoly::one(alg.nvars()));
            *words += 1;
            return;
        }
        for slot in 0..2 * n {
            if counts[slot] == 0 {
                continue;
            }
            counts[slot] -= 1;
            let next = alg.mul_letter_at(prefix, &Letter::generator(slot / n, slot % n, n), nu);
            walk(alg, n, &next, counts, left - 1, nu, sum, words);
            counts[slot] += 1;
        }
    }
    walk(alg, n, &alg.one(), &mut counts, total, nu, &mut sum, &mut words);
    sum.scale(&NuPoly::from_rational(rat(1, words), alg.nvars())).mul_group(m.g)
}
