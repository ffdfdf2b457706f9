use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{format_rational, parse_rational, square_free_split, Rational};
use super::ScalarError;

/// Precomputed data for `Q(ζ_n)`: the cyclotomic polynomial and the reduced
/// forms of `x^j mod Φ_n` for `0 <= j < n`.
struct FieldData {
    phi: usize,
    /// Monic `Φ_n`, low degree first.
    poly: Vec<BigInt>,
    /// `powers[j]` = coefficients of `x^j mod Φ_n` (length `phi`).
    powers: Vec<Vec<BigInt>>,
}

fn field_cache() -> &'static RwLock<HashMap<u32, Arc<FieldData>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn field(n: u32) -> Arc<FieldData> {
    if let Some(f) = field_cache().read().unwrap().get(&n) {
        return f.clone();
    }
    let data = Arc::new(build_field(n));
    field_cache()
        .write()
        .unwrap()
        .entry(n)
        .or_insert(data)
        .clone()
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    let mut m = n;
    let mut result = n as usize;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p as usize;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m as usize;
    }
    result
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Möbius function.
fn mobius(n: u32) -> i32 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Integer polynomial division by a monic divisor (exact).
fn div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() < den.len() {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()));
    quot
}

fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    // Φ_n = (x^n - 1) / Π_{d | n, d < n} Φ_d
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let pd = field(d).poly.clone();
            num = div_monic(&num, &pd);
        }
    }
    num
}

fn build_field(n: u32) -> FieldData {
    assert!(n >= 1, "conductor must be positive");
    let poly = cyclotomic_poly(n);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![BigInt::zero(); phi];
    cur[0] = BigInt::one();
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce
        let top = cur[phi - 1].clone();
        let mut next = vec![BigInt::zero(); phi];
        for j in (1..phi).rev() {
            next[j] = cur[j - 1].clone();
        }
        if !top.is_zero() {
            for j in 0..phi {
                next[j] -= &top * &poly[j];
            }
        }
        cur = next;
    }
    FieldData { phi, poly, powers }
}

/// An element of the cyclotomic field `Q(ζ_n)`, stored as the canonical
/// residue modulo `Φ_n` (coefficient vector of length `φ(n)` in powers of
/// `ζ_n`).
///
/// Binary operations between elements of different conductors embed both
/// into `Q(ζ_lcm)`; equality is by value across conductors.
#[derive(Clone)]
pub struct Cyclotomic {
    n: u32,
    c: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero_in(n: u32) -> Self {
        let phi = field(n).phi;
        Cyclotomic {
            n,
            c: vec![Rational::zero(); phi],
        }
    }

    pub fn from_rational_in(q: Rational, n: u32) -> Self {
        let mut z = Self::zero_in(n);
        z.c[0] = q;
        z
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic { n: 1, c: vec![q] }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(k)))
    }

    /// `ζ_n^k` (any integer `k`).
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let f = field(n);
        let j = k.rem_euclid(n as i64) as usize;
        Cyclotomic {
            n,
            c: f.powers[j].iter().map(|b| Rational::from_integer(b.clone())).collect(),
        }
    }

    pub fn zeta(n: u32) -> Self {
        Self::zeta_pow(n, 1)
    }

    /// Builds an element from raw coefficients of `1, ζ, ζ², ...` (any
    /// length); the vector is reduced modulo `Φ_n`.
    pub fn from_coeffs(n: u32, raw: &[Rational]) -> Self {
        let f = field(n);
        let mut out = vec![Rational::zero(); f.phi];
        for (j, cj) in raw.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let p = &f.powers[j % n as usize];
            for (o, pk) in out.iter_mut().zip(p) {
                if !pk.is_zero() {
                    *o += cj * Rational::from_integer(pk.clone());
                }
            }
        }
        Cyclotomic { n, c: out }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|x| x.is_zero())
    }

    /// `Some(q)` when the element lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    /// Image under `ζ_m ↦ ζ_n^{n/m}`.
    pub fn embed(&self, n: u32) -> Result<Self, ScalarError> {
        if n == 0 || !n.is_multiple_of(self.n) {
            return Err(ScalarError::NotDivisible { from: self.n, to: n });
        }
        if n == self.n {
            return Ok(self.clone());
        }
        let step = (n / self.n) as usize;
        let f = field(n);
        let mut out = vec![Rational::zero(); f.phi];
        for (j, cj) in self.c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let p = &f.powers[(j * step) % n as usize];
            for (o, pk) in out.iter_mut().zip(p) {
                if !pk.is_zero() {
                    *o += cj * Rational::from_integer(pk.clone());
                }
            }
        }
        Ok(Cyclotomic { n, c: out })
    }

    fn embed_unchecked(&self, n: u32) -> Self {
        self.embed(n).expect("conductor divides target")
    }

    /// Brings two elements to a common conductor.
    fn align<'a>(a: &'a Self, b: &'a Self) -> (std::borrow::Cow<'a, Self>, std::borrow::Cow<'a, Self>) {
        use std::borrow::Cow;
        if a.n == b.n {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let n = lcm(a.n, b.n);
        let ea = if a.n == n { Cow::Borrowed(a) } else { Cow::Owned(a.embed_unchecked(n)) };
        let eb = if b.n == n { Cow::Borrowed(b) } else { Cow::Owned(b.embed_unchecked(n)) };
        (ea, eb)
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conjugate(&self) -> Self {
        let n = self.n as usize;
        let mut raw = vec![Rational::zero(); n];
        for (j, cj) in self.c.iter().enumerate() {
            raw[(n - j) % n] += cj;
        }
        Self::from_coeffs(self.n, &raw)
    }

    /// Galois automorphism `ζ ↦ ζ^k` (`k` coprime to the conductor).
    pub fn galois(&self, k: i64) -> Self {
        let n = self.n as i64;
        assert_eq!(k.gcd(&n), 1, "automorphism exponent must be a unit");
        let mut raw = vec![Rational::zero(); self.n as usize];
        for (j, cj) in self.c.iter().enumerate() {
            raw[(j as i64 * k).rem_euclid(n) as usize] += cj;
        }
        Self::from_coeffs(self.n, &raw)
    }

    /// `true` when fixed by complex conjugation.
    pub fn is_real(&self) -> bool {
        self.conjugate() == *self
    }

    fn mul_same(&self, other: &Self) -> Self {
        let f = field(self.n);
        let phi = f.phi;
        if phi == 1 {
            return Cyclotomic {
                n: self.n,
                c: vec![&self.c[0] * &other.c[0]],
            };
        }
        let mut raw = vec![Rational::zero(); 2 * phi - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<Rational> = raw[..phi].to_vec();
        for (d, cd) in raw.iter().enumerate().skip(phi) {
            if cd.is_zero() {
                continue;
            }
            let p = &f.powers[d % self.n as usize];
            for (o, pk) in out.iter_mut().zip(p) {
                if !pk.is_zero() {
                    *o += cd * Rational::from_integer(pk.clone());
                }
            }
        }
        Cyclotomic { n: self.n, c: out }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyclotomic {
            n: self.n,
            c: self.c.iter().map(|x| x * q).collect(),
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm modulo `Φ_n`.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(Self::from_rational_in(q.recip(), self.n));
        }
        let f = field(self.n);
        let modulus: Vec<Rational> = f.poly.iter().map(|b| Rational::from_integer(b.clone())).collect();
        let (g, s) = poly::gcdext(&self.c, &modulus);
        // g is a nonzero constant since Φ_n is irreducible
        debug_assert_eq!(g.len(), 1);
        let g0 = g[0].clone();
        let coeffs: Vec<Rational> = s.iter().map(|x| x / &g0).collect();
        Ok(Self::from_coeffs(self.n, &coeffs))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::from_rational_in(Rational::one(), self.n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    /// Arithmetic that refuses to embed: both operands must share a conductor.
    pub fn strict_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.same_conductor(other)?;
        Ok(self + other)
    }

    pub fn strict_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.same_conductor(other)?;
        Ok(self - other)
    }

    pub fn strict_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.same_conductor(other)?;
        Ok(self * other)
    }

    pub fn strict_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.same_conductor(other)?;
        self.checked_div(other)
    }

    fn same_conductor(&self, other: &Self) -> Result<(), ScalarError> {
        if self.n != other.n {
            return Err(ScalarError::ConductorMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// `cos(2πk/m)` as an element of `Q(ζ_m)`.
    pub fn cos_2pi(k: i64, m: u32) -> Self {
        let s = &Self::zeta_pow(m, k) + &Self::zeta_pow(m, -k);
        s.scale(&Rational::new(BigInt::one(), BigInt::from(2)))
    }

    /// `sin(2πk/m)` as an element of `Q(ζ_lcm(4,m))`.
    pub fn sin_2pi(k: i64, m: u32) -> Self {
        let n = lcm(4, m);
        let d = &Self::zeta_pow(m, k) - &Self::zeta_pow(m, -k);
        // (z - z^{-1}) / (2i) = -i (z - z^{-1}) / 2
        let minus_i_half = Self::zeta_pow(4, 3).scale(&Rational::new(BigInt::one(), BigInt::from(2)));
        (&d * &minus_i_half).embed(n).expect("lcm(4, m) is a common multiple")
    }

    /// A square root of a nonnegative rational, realized via quadratic Gauss
    /// sums. The sign is a fixed but unspecified choice; every use in this
    /// crate is invariant under the Galois action that flips it.
    pub fn sqrt_rational(q: &Rational) -> Result<Self, ScalarError> {
        if q.is_negative() {
            return Err(ScalarError::NegativeSqrt(format_rational(q)));
        }
        if q.is_zero() {
            return Ok(Self::from_int(0));
        }
        // sqrt(a/b) = sqrt(ab)/b
        let ab = q.numer() * q.denom();
        let ab = ab.to_u64().ok_or_else(|| ScalarError::Parse(format_rational(q)))?;
        let (s, d) = square_free_split(ab);
        let mut result = Self::from_rational(Rational::new(BigInt::from(s), q.denom().clone()));
        let mut m = d;
        let mut p = 2u64;
        while m > 1 {
            if m % p == 0 {
                m /= p;
                result = &result * &sqrt_prime(p as u32);
            }
            p += 1;
        }
        Ok(result)
    }

    /// Trace to `Q` divided by the degree; independent of the conductor the
    /// element is written in.
    pub fn normalized_trace(&self) -> Rational {
        let n = self.n;
        let mut acc = Rational::zero();
        for (k, ck) in self.c.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            let d = n / (k as u32).gcd(&n);
            let mu = mobius(d);
            if mu != 0 {
                acc += ck * Rational::new(BigInt::from(mu), BigInt::from(euler_phi(d) as u64));
            }
        }
        acc
    }

    /// Complex floating approximation (display only).
    pub fn approx(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, ck) in self.c.iter().enumerate() {
            let v = super::rational::approx(ck);
            let ang = 2.0 * std::f64::consts::PI * k as f64 / self.n as f64;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    /// Parses the canonical text form, e.g. `1+2*z^3` or `-1/2*z`, in `Q(ζ_n)`.
    pub fn parse(text: &str, n: u32) -> Result<Self, ScalarError> {
        let bad = || ScalarError::Parse(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'*' {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        let mut acc = Self::zero_in(n);
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, t.strip_prefix('+').unwrap_or(t)),
            };
            let (coef, power) = match body.find('z') {
                None => (parse_rational(body)?, 0i64),
                Some(pos) => {
                    let coef_part = &body[..pos];
                    let coef = if coef_part.is_empty() {
                        Rational::one()
                    } else {
                        parse_rational(coef_part.strip_suffix('*').ok_or_else(bad)?)?
                    };
                    let rest = &body[pos + 1..];
                    let power = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse::<i64>().map_err(|_| bad())?
                    };
                    (coef, power)
                }
            };
            let term = Self::zeta_pow(n, power).scale(&(coef * Rational::from_integer(BigInt::from(sign))));
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

/// `sqrt(p)` for a prime `p`.
fn sqrt_prime(p: u32) -> Cyclotomic {
    if p == 2 {
        // ζ_8 + ζ_8^{-1}
        return &Cyclotomic::zeta_pow(8, 1) + &Cyclotomic::zeta_pow(8, -1);
    }
    // quadratic Gauss sum g = Σ (a/p) ζ_p^a, g² = (-1)^{(p-1)/2} p
    let mut raw = vec![Rational::zero(); p as usize];
    for a in 1..p {
        let leg = legendre(a as u64, p as u64);
        raw[a as usize] = Rational::from_integer(BigInt::from(leg));
    }
    let g = Cyclotomic::from_coeffs(p, &raw);
    if p % 4 == 1 {
        g
    } else {
        // g = i sqrt(p)  =>  sqrt(p) = -i g
        let minus_i = Cyclotomic::zeta_pow(4, 3);
        &minus_i * &g
    }
}

fn legendre(a: u64, p: u64) -> i64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else if r == 0 {
        0
    } else {
        -1
    }
}

mod poly {
    //! Dense univariate polynomials over `Q`, low degree first.
    use super::Rational;
    use num_traits::Zero;

    fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
        while p.len() > 1 && p.last().is_some_and(|x| x.is_zero()) {
            p.pop();
        }
        if p.is_empty() {
            p.push(Rational::zero());
        }
        p
    }

    fn is_zero(p: &[Rational]) -> bool {
        p.iter().all(|x| x.is_zero())
    }

    fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); a.len().max(b.len())];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, x) in b.iter().enumerate() {
            out[i] -= x;
        }
        trim(out)
    }

    fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    fn divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        let db = b.len() - 1;
        let lead = b[db].clone();
        if r.len() < b.len() {
            return (vec![Rational::zero()], r);
        }
        let mut q = vec![Rational::zero(); r.len() - db];
        while r.len() >= b.len() && !is_zero(&r) {
            let shift = r.len() - b.len();
            let c = r[r.len() - 1].clone() / &lead;
            for (j, bj) in b.iter().enumerate() {
                r[shift + j] -= &c * bj;
            }
            q[shift] = c;
            r.pop();
            r = trim(r);
        }
        (trim(q), r)
    }

    /// Returns `(g, s)` with `s·a ≡ g (mod m)` and `g = gcd(a, m)`.
    pub fn gcdext(a: &[Rational], m: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut r0 = trim(m.to_vec());
        let mut r1 = trim(a.to_vec());
        let mut s0 = vec![Rational::zero()];
        let mut s1 = vec![Rational::from_integer(1.into())];
        while !is_zero(&r1) {
            let (q, r) = divmod(&r0, &r1);
            let s = sub(&s0, &mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        (r0, s0)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.c == other.c;
        }
        let (a, b) = Self::align(self, other);
        a.c == b.c
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [n={}]", self, self.n)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, ck) in self.c.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            let neg = ck.is_negative();
            let abs = ck.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", format_rational(&abs))?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{}*", format_rational(&abs))?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{}", k)?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Self::from_int(0)
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for Cyclotomic {
    fn from(k: i64) -> Self {
        Self::from_int(k)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::align(self, rhs);
        Cyclotomic {
            n: a.n,
            c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect(),
        }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::align(self, rhs);
        Cyclotomic {
            n: a.n,
            c: a.c.iter().zip(&b.c).map(|(x, y)| x - y).collect(),
        }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.c.len() == 1 && self.n <= 2 {
            return rhs.scale(&self.c[0]);
        }
        if rhs.c.len() == 1 && rhs.n <= 2 {
            return self.scale(&rhs.c[0]);
        }
        let (a, b) = Cyclotomic::align(self, rhs);
        a.mul_same(&b)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            n: self.n,
            c: self.c.iter().map(|x| -x).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if self.n == rhs.n {
            for (x, y) in self.c.iter_mut().zip(&rhs.c) {
                *x += y;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        if self.n == rhs.n {
            for (x, y) in self.c.iter_mut().zip(&rhs.c) {
                *x -= y;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::rat;

    #[test]
    fn phi_values() {
        let expected = [(1, 1), (2, 1), (3, 2), (4, 2), (5, 4), (8, 4), (12, 4), (20, 8), (24, 8)];
        for (n, p) in expected {
            assert_eq!(euler_phi(n), p);
            assert_eq!(field(n).phi, p);
        }
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = Cyclotomic::zeta(4);
        assert_eq!(&i * &i, Cyclotomic::from_int(-1));
    }

    #[test]
    fn fifth_roots_sum_to_zero() {
        let mut s = Cyclotomic::zero_in(5);
        for k in 0..5 {
            s = &s + &Cyclotomic::zeta_pow(5, k);
        }
        assert!(s.is_zero());
    }

    #[test]
    fn inverse_of_one_minus_zeta3() {
        // oracle: modulo x^2 + x + 1, (1 - x)(2 + x) = 2 - x - x^2 = 3
        let one = Cyclotomic::from_int(1);
        let z = Cyclotomic::zeta(3);
        let inv = (&one - &z).inv().unwrap();
        let expected = (&Cyclotomic::from_int(2) + &z).scale(&rat(1, 3));
        assert_eq!(inv, expected);
        assert!((&inv * &(&one - &z)).is_one());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(matches!(Cyclotomic::zero_in(5).inv(), Err(ScalarError::DivisionByZero)));
    }

    #[test]
    fn embeddings() {
        let m1 = Cyclotomic::from_int(-1).embed(4).unwrap();
        assert_eq!(m1.conductor(), 4);
        assert_eq!(m1, Cyclotomic::from_int(-1));
        assert_eq!(Cyclotomic::zeta(2).embed(4).unwrap(), Cyclotomic::zeta_pow(4, 2));
        // 1 + 2(ζ5 + ζ5^4) = sqrt 5
        let z = Cyclotomic::zeta(5);
        let s5 = &Cyclotomic::from_int(1) + &(&z + &z.pow(4)).scale(&rat(2, 1));
        let e = s5.embed(5).unwrap();
        assert_eq!(&e * &e, Cyclotomic::from_int(5));
        assert!(matches!(z.embed(12), Err(ScalarError::NotDivisible { from: 5, to: 12 })));
    }

    #[test]
    fn conjugation() {
        let i = Cyclotomic::zeta(4);
        assert_eq!(i.conjugate(), -&i);
        assert_eq!(Cyclotomic::from_rational(rat(3, 7)).conjugate(), Cyclotomic::from_rational(rat(3, 7)));
        let w = Cyclotomic::zeta(3);
        assert!((&w.conjugate() * &w).is_one());
    }

    #[test]
    fn square_roots() {
        for q in [rat(2, 1), rat(3, 1), rat(5, 1), rat(6, 1), rat(3, 4), rat(2, 3), rat(15, 1), rat(7, 1)] {
            let s = Cyclotomic::sqrt_rational(&q).unwrap();
            assert_eq!(&s * &s, Cyclotomic::from_rational(q.clone()), "sqrt({q})");
            assert!(s.is_real());
        }
    }

    #[test]
    fn trig_values() {
        // cos²+sin² = 1 for several angles
        for m in [5u32, 7, 8, 12] {
            for k in 0..m as i64 {
                let c = Cyclotomic::cos_2pi(k, m);
                let s = Cyclotomic::sin_2pi(k, m);
                assert!((&(&c * &c) + &(&s * &s)).is_one());
                assert!(c.is_real() && s.is_real());
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let x = Cyclotomic::parse("1+2*z^3-1/2*z", 8).unwrap();
        let y = Cyclotomic::parse(&x.to_string(), 8).unwrap();
        assert_eq!(x, y);
        assert_eq!(Cyclotomic::parse("z^4", 4).unwrap(), Cyclotomic::from_int(1));
        assert!(Cyclotomic::parse("1+*", 4).is_err());
    }

    #[test]
    fn strict_ops_refuse_mixed_conductors() {
        let a = Cyclotomic::zeta(4);
        let b = Cyclotomic::zeta(3);
        assert!(matches!(a.strict_add(&b), Err(ScalarError::ConductorMismatch { .. })));
        assert_eq!((&a + &b).conductor(), 12);
    }

    #[test]
    fn normalized_trace_is_conductor_independent() {
        let x = Cyclotomic::parse("3+z^2", 4).unwrap();
        assert_eq!(x.normalized_trace(), x.embed(12).unwrap().normalized_trace());
        assert_eq!(Cyclotomic::zeta(5).normalized_trace(), rat(-1, 4));
    }
}
