//! Dense univariate polynomials over F_p.
//!
//! Coefficients are stored lowest degree first with trailing zeros stripped,
//! so structural equality is polynomial equality. The zero polynomial has an
//! empty coefficient vector and degree `None`, which orders below every
//! `Some(d)`.

use std::collections::HashSet;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::PrimeModulus;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<u64>,
    p: PrimeModulus,
}

impl Polynomial {
    /// Builds a polynomial from coefficients in `[0, p)`, lowest degree first.
    pub fn new(p: PrimeModulus, coeffs: Vec<u64>) -> Result<Self> {
        if let Some(&value) = coeffs.iter().find(|&&c| c >= p.value()) {
            return Err(Error::CoefficientOutOfRange {
                value,
                p: p.value(),
            });
        }
        Ok(Self::from_reduced(p, coeffs))
    }

    /// Builds a polynomial reducing every coefficient mod p.
    pub fn from_unreduced(p: PrimeModulus, coeffs: &[u64]) -> Self {
        Self::from_reduced(p, coeffs.iter().map(|&c| p.reduce(c)).collect())
    }

    pub(crate) fn from_reduced(p: PrimeModulus, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial { coeffs, p }
    }

    pub fn zero(p: PrimeModulus) -> Self {
        Polynomial {
            coeffs: Vec::new(),
            p,
        }
    }

    pub fn one(p: PrimeModulus) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: PrimeModulus, c: u64) -> Self {
        Self::from_reduced(p, vec![p.reduce(c)])
    }

    /// The monomial `x`.
    pub fn x(p: PrimeModulus) -> Self {
        Self::monomial(p, 1, 1)
    }

    /// `c·x^k`.
    pub fn monomial(p: PrimeModulus, k: usize, c: u64) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = p.reduce(c);
        Self::from_reduced(p, coeffs)
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `x^j`, zero past the degree.
    pub fn coeff(&self, j: usize) -> u64 {
        self.coeffs.get(j).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of stored coefficients: `degree + 1`, or 0 for the zero polynomial.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `degree(self) < bound`.
    pub fn degree_below(&self, bound: usize) -> bool {
        self.coeffs.len() <= bound
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading_coeff(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    /// Coefficients zero-padded to exactly `width` entries.
    pub fn to_padded(&self, width: usize) -> Result<Vec<u64>> {
        if !self.degree_below(width) {
            return Err(Error::WidthExceeded {
                degree: self.coeffs.len() - 1,
                width,
            });
        }
        let mut out = self.coeffs.clone();
        out.resize(width, 0);
        Ok(out)
    }

    fn check_same_field(&self, other: &Polynomial) -> Result<()> {
        if self.p != other.p {
            Err(Error::ModulusMismatch(self.p.value(), other.p.value()))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_field(other)?;
        let p = self.p;
        let len = self.len().max(other.len());
        let coeffs = (0..len).map(|j| p.add(self.coeff(j), other.coeff(j))).collect();
        Ok(Self::from_reduced(p, coeffs))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_field(other)?;
        let p = self.p;
        let len = self.len().max(other.len());
        let coeffs = (0..len).map(|j| p.sub(self.coeff(j), other.coeff(j))).collect();
        Ok(Self::from_reduced(p, coeffs))
    }

    pub fn neg(&self) -> Polynomial {
        let p = self.p;
        Self::from_reduced(p, self.coeffs.iter().map(|&c| p.neg(c)).collect())
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        let p = self.p;
        let c = p.reduce(c);
        Self::from_reduced(p, self.coeffs.iter().map(|&a| p.mul(a, c)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Polynomial { coeffs, p: self.p }
    }

    /// Reduction modulo `x^k`.
    pub fn truncate(&self, k: usize) -> Polynomial {
        let end = k.min(self.len());
        Self::from_reduced(self.p, self.coeffs[..end].to_vec())
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_field(other)?;
        let p = self.p;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(p));
        }
        let mut out = vec![0u64; self.len() + other.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = p.add(out[i + j], p.mul(a, b));
            }
        }
        Ok(Self::from_reduced(p, out))
    }

    /// Euclidean division: `self = q·divisor + r` with `degree(r) < degree(divisor)`.
    pub fn divmod(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check_same_field(divisor)?;
        let p = self.p;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.len() < divisor.len() {
            return Ok((Self::zero(p), self.clone()));
        }
        let lead_inv = p
            .inv(divisor.leading_coeff())
            .expect("canonical polynomials have a nonzero leading coefficient");
        let dlen = divisor.len();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.len() - dlen + 1];
        for k in (0..quot.len()).rev() {
            let c = p.mul(rem[k + dlen - 1], lead_inv);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = p.sub(rem[k + j], p.mul(c, d));
            }
        }
        rem.truncate(dlen - 1);
        Ok((Self::from_reduced(p, quot), Self::from_reduced(p, rem)))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Scales to leading coefficient 1; the zero polynomial is returned as is.
    pub fn monic(&self) -> Polynomial {
        match self.p.inv(self.leading_coeff()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    /// `self^exp mod m`.
    pub fn pow_mod(&self, mut exp: u64, m: &Polynomial) -> Result<Polynomial> {
        let mut base = self.rem(m)?;
        let mut acc = Self::one(self.p).rem(m)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base)?.rem(m)?;
            }
            base = base.mul(&base)?.rem(m)?;
            exp >>= 1;
        }
        Ok(acc)
    }

    /// Evaluates at a field element by Horner's rule.
    pub fn eval(&self, v: u64) -> u64 {
        let p = self.p;
        let v = p.reduce(v);
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| p.add(p.mul(acc, v), c))
    }

    /// Extended Euclid: returns `(g, u, v)` with `g = u·a + v·b` and `g` monic.
    pub fn ext_gcd(a: &Polynomial, b: &Polynomial) -> Result<(Polynomial, Polynomial, Polynomial)> {
        a.check_same_field(b)?;
        let p = a.p;
        if a.is_zero() && b.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let s = s0.sub(&q.mul(&s1)?)?;
            let t = t0.sub(&q.mul(&t1)?)?;
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = p.inv(r0.leading_coeff()).expect("gcd is nonzero");
        Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
    }

    pub fn gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        Ok(Self::ext_gcd(a, b)?.0)
    }

    /// Inverse of `self` modulo `m`, reduced below `degree(m)`.
    pub fn inv_mod(&self, m: &Polynomial) -> Result<Polynomial> {
        self.check_same_field(m)?;
        if m.is_zero() {
            return Err(Error::ZeroModulus);
        }
        if m.degree() == Some(0) {
            return Err(Error::ConstantPolynomial);
        }
        let a = self.rem(m)?;
        if a.is_zero() {
            return Err(Error::NotCoprime);
        }
        let (g, u, _) = Self::ext_gcd(&a, m)?;
        if !g.is_one() {
            return Err(Error::NotCoprime);
        }
        u.rem(m)
    }

    /// Irreducibility via the distinct-degree criterion: a polynomial of
    /// degree d is irreducible iff `gcd(f, x^(p^k) - x) = 1` for every
    /// `k <= d/2`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = match self.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(d) => d,
        };
        if d == 1 {
            return Ok(true);
        }
        let f = self.monic();
        let x = Self::x(self.p);
        let mut frob = x.clone();
        for _ in 1..=d / 2 {
            frob = frob.pow_mod(self.p.value(), &f)?;
            let g = Self::gcd(&f, &frob.sub(&x)?)?;
            if !g.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Uniform polynomial with `bound` independent coefficients, i.e. degree < `bound`.
    pub fn random<R: Rng + ?Sized>(p: PrimeModulus, bound: usize, rng: &mut R) -> Result<Polynomial> {
        if bound == 0 {
            return Err(Error::InvalidArgument(
                "random polynomial needs a positive coefficient count".into(),
            ));
        }
        Ok(Self::random_below(p, bound, rng))
    }

    /// Like [`Polynomial::random`] but a zero bound yields the zero polynomial.
    pub(crate) fn random_below<R: Rng + ?Sized>(p: PrimeModulus, bound: usize, rng: &mut R) -> Polynomial {
        let coeffs = (0..bound).map(|_| rng.gen_range(0..p.value())).collect();
        Self::from_reduced(p, coeffs)
    }

    /// Parses the canonical text encoding: decimal coefficients, lowest degree
    /// first, comma separated. The empty string is the zero polynomial.
    pub fn parse(p: PrimeModulus, s: &str) -> Result<Polynomial> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Ok(Self::zero(p));
        }
        let base = s.len() - s.trim_start().len();
        let mut coeffs = Vec::new();
        let mut offset = base;
        for part in trimmed.split(',') {
            let value: u64 = part.trim().parse().map_err(|_| Error::Parse {
                offset,
                message: format!("invalid coefficient {:?}", part),
            })?;
            if value >= p.value() {
                return Err(Error::Parse {
                    offset,
                    message: format!("coefficient {value} not below p = {p}"),
                });
            }
            coeffs.push(value);
            offset += part.len() + 1;
        }
        Ok(Self::from_reduced(p, coeffs))
    }

    /// Text encoding padded with zeros to exactly `width` coefficients.
    pub fn to_padded_string(&self, width: usize) -> Result<String> {
        Ok(join(&self.to_padded(width)?))
    }
}

fn join(coeffs: &[u64]) -> String {
    coeffs
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Canonical text encoding; the zero polynomial prints as `0`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            f.write_str("0")
        } else {
            f.write_str(&join(&self.coeffs))
        }
    }
}

/// All monic polynomials of the given degree, in lexicographic order of the
/// lower coefficients.
pub fn monic_polynomials(p: PrimeModulus, degree: usize) -> impl Iterator<Item = Polynomial> {
    let count = p.checked_pow(degree).unwrap_or(u128::MAX);
    let pv = p.value();
    (0..count).map(move |mut index| {
        let mut coeffs = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            coeffs.push((index % pv as u128) as u64);
            index /= pv as u128;
        }
        coeffs.push(1);
        Polynomial::from_reduced(p, coeffs)
    })
}

const TRIAL_DIVISION_BUDGET: u128 = 1 << 24;

/// Irreducibility by exhaustive trial division by every monic polynomial of
/// degree `1..=d/2`.
pub fn is_irreducible_by_trial_division(f: &Polynomial) -> Result<bool> {
    let d = match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(d) => d,
    };
    let p = f.modulus();
    let work: u128 = (1..=d / 2)
        .map(|k| p.checked_pow(k).unwrap_or(u128::MAX))
        .fold(0u128, |a, b| a.saturating_add(b));
    if work > TRIAL_DIVISION_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "trial division needs {work} divisors (limit {TRIAL_DIVISION_BUDGET})"
        )));
    }
    for k in 1..=d / 2 {
        for g in monic_polynomials(p, k) {
            if f.rem(&g)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn mobius(mut n: usize) -> i32 {
    let mut result = 1;
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            n /= q;
            if n.is_multiple_of(q) {
                return 0;
            }
            result = -result;
        }
        q += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of monic irreducibles of the given degree (Gauss's necklace
/// formula), saturating at `u128::MAX`.
pub fn count_monic_irreducibles(p: PrimeModulus, degree: usize) -> u128 {
    if degree == 0 {
        return 0;
    }
    let mut positive: u128 = 0;
    let mut negative: u128 = 0;
    for k in (1..=degree).filter(|k| degree.is_multiple_of(*k)) {
        let term = match p.checked_pow(degree / k) {
            Some(t) => t,
            None => return u128::MAX,
        };
        match mobius(k) {
            1 => positive += term,
            -1 => negative += term,
            _ => {}
        }
    }
    (positive - negative) / degree as u128
}

const ENUMERATE_BELOW: u128 = 4096;

/// Uniformly chosen monic irreducible of the given degree, different from `x`
/// and from every polynomial in `exclusions`.
pub fn random_monic_irreducible<R: Rng + ?Sized>(
    p: PrimeModulus,
    degree: usize,
    rng: &mut R,
    exclusions: &[Polynomial],
) -> Result<Polynomial> {
    if degree == 0 {
        return Err(Error::InvalidArgument("irreducible degree must be at least 1".into()));
    }
    let x = Polynomial::x(p);
    let mut excluded: HashSet<&Polynomial> = exclusions
        .iter()
        .filter(|e| e.modulus() == p && e.degree() == Some(degree) && e.is_monic())
        .filter(|e| e.is_irreducible().unwrap_or(false))
        .collect();
    if degree == 1 {
        excluded.insert(&x);
    }
    let total = count_monic_irreducibles(p, degree);
    if total <= excluded.len() as u128 {
        return Err(Error::Exhausted { degree });
    }
    let space = p.checked_pow(degree).unwrap_or(u128::MAX);
    if space <= ENUMERATE_BELOW {
        let pool: Vec<Polynomial> = monic_polynomials(p, degree)
            .filter(|f| !excluded.contains(f))
            .filter(|f| f.is_irreducible().unwrap_or(false))
            .collect();
        return Ok(pool[rng.gen_range(0..pool.len())].clone());
    }
    loop {
        let mut coeffs: Vec<u64> = (0..degree).map(|_| rng.gen_range(0..p.value())).collect();
        coeffs.push(1);
        let f = Polynomial::from_reduced(p, coeffs);
        if !excluded.contains(&f) && f.is_irreducible()? {
            return Ok(f);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn field(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn poly(p: u64, c: &[u64]) -> Polynomial {
        Polynomial::new(field(p), c.to_vec()).unwrap()
    }

    #[test]
    fn addition_examples() {
        assert!(poly(2, &[1, 1]).add(&poly(2, &[1, 1])).unwrap().is_zero());
        let a = poly(5, &[3, 0, 4]);
        assert_eq!(a.add(&Polynomial::zero(field(5))).unwrap(), a);
        assert!(poly(3, &[2, 0, 1]).add(&poly(3, &[1, 0, 2])).unwrap().is_zero());
    }

    #[test]
    fn subtraction_examples() {
        let a = poly(7, &[1, 2, 3]);
        assert!(a.sub(&a).unwrap().is_zero());
        assert_eq!(poly(2, &[0, 1]).sub(&poly(2, &[1])).unwrap(), poly(2, &[1, 1]));
        assert_eq!(
            Polynomial::zero(field(3)).sub(&poly(3, &[0, 2])).unwrap(),
            poly(3, &[0, 1])
        );
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(poly(2, &[1, 1]).mul(&poly(2, &[1, 1])).unwrap(), poly(2, &[1, 0, 1]));
        let a = poly(11, &[4, 0, 9, 1]);
        assert_eq!(a.mul(&Polynomial::one(field(11))).unwrap(), a);
        assert_eq!(poly(3, &[1, 1]).mul(&poly(3, &[2, 1])).unwrap(), poly(3, &[2, 0, 1]));
    }

    #[test]
    fn modulus_mismatch() {
        assert_eq!(
            poly(2, &[1]).add(&poly(3, &[1])),
            Err(Error::ModulusMismatch(2, 3))
        );
        assert!(poly(2, &[1]).mul(&poly(3, &[1])).is_err());
        assert!(poly(2, &[1]).sub(&poly(3, &[1])).is_err());
    }

    #[test]
    fn coefficient_range_is_checked() {
        assert!(matches!(
            Polynomial::new(field(3), vec![1, 3]),
            Err(Error::CoefficientOutOfRange { value: 3, p: 3 })
        ));
        assert_eq!(Polynomial::new(field(3), vec![1, 0, 0]).unwrap().degree(), Some(0));
    }

    #[test]
    fn division_examples() {
        let (q, r) = poly(2, &[0, 1, 0, 1]).divmod(&poly(2, &[1, 0, 1])).unwrap();
        assert_eq!((q, r.is_zero()), (poly(2, &[0, 1]), true));
        let a = poly(5, &[1, 2]);
        let (q, r) = a.divmod(&poly(5, &[1, 1, 1])).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, a);
        let (q, r) = poly(2, &[1, 0, 1]).divmod(&poly(2, &[1, 1])).unwrap();
        assert_eq!(q, poly(2, &[1, 1]));
        assert!(r.is_zero());
        assert_eq!(
            a.divmod(&Polynomial::zero(field(5))),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn gcd_examples() {
        let (g, u, v) = Polynomial::ext_gcd(&poly(2, &[1, 0, 1]), &poly(2, &[1, 1])).unwrap();
        assert_eq!(g, poly(2, &[1, 1]));
        let bezout = u.mul(&poly(2, &[1, 0, 1])).unwrap().add(&v.mul(&poly(2, &[1, 1])).unwrap()).unwrap();
        assert_eq!(bezout, g);

        let (g, _, _) = Polynomial::ext_gcd(&poly(3, &[1, 0, 1]), &poly(3, &[1, 1])).unwrap();
        assert_eq!(g, poly(3, &[1]));

        let a = poly(7, &[3, 0, 2]);
        let (g, u, v) = Polynomial::ext_gcd(&a, &Polynomial::zero(field(7))).unwrap();
        assert_eq!(g, a.monic());
        assert_eq!(u, Polynomial::constant(field(7), field(7).inv(2).unwrap()));
        assert!(v.is_zero());

        let z = Polynomial::zero(field(7));
        assert_eq!(Polynomial::ext_gcd(&z, &z), Err(Error::GcdOfZeros));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(poly(3, &[0, 1]).inv_mod(&poly(3, &[1, 1])).unwrap(), poly(3, &[2]));
        let m = poly(5, &[2, 0, 1, 1]);
        assert_eq!(Polynomial::one(field(5)).inv_mod(&m).unwrap(), poly(5, &[1]));
        assert_eq!(
            poly(2, &[1, 1]).inv_mod(&poly(2, &[1, 0, 1])),
            Err(Error::NotCoprime)
        );
        assert_eq!(
            poly(2, &[1, 1]).inv_mod(&Polynomial::zero(field(2))),
            Err(Error::ZeroModulus)
        );
    }

    #[test]
    fn irreducibility_examples() {
        assert!(poly(2, &[1, 1, 1]).is_irreducible().unwrap());
        assert!(!poly(2, &[1, 0, 1]).is_irreducible().unwrap());
        for p in [2, 3, 5, 13, (1 << 31) - 1] {
            assert!(poly(p, &[0, 1]).is_irreducible().unwrap());
        }
        assert_eq!(poly(5, &[3]).is_irreducible(), Err(Error::ConstantPolynomial));
        // x^4 + x + 1 is irreducible over F_2; (x^2+x+1)^2 = x^4+x^2+1 is not
        assert!(poly(2, &[1, 1, 0, 0, 1]).is_irreducible().unwrap());
        assert!(!poly(2, &[1, 0, 1, 0, 1]).is_irreducible().unwrap());
    }

    #[test]
    fn necklace_counts() {
        // known values: over F_2 degrees 1..=6 give 2,1,2,3,6,9
        let f2 = field(2);
        let counts: Vec<u128> = (1..=6).map(|d| count_monic_irreducibles(f2, d)).collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6, 9]);
        assert_eq!(count_monic_irreducibles(field(3), 2), 3);
        for (p, d) in [(2, 5), (3, 3), (5, 2), (7, 2)] {
            let direct = monic_polynomials(field(p), d)
                .filter(|f| f.is_irreducible().unwrap())
                .count() as u128;
            assert_eq!(count_monic_irreducibles(field(p), d), direct);
        }
    }

    #[test]
    fn random_irreducible_examples() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let f2 = field(2);
        assert_eq!(
            random_monic_irreducible(f2, 2, &mut rng, &[]).unwrap(),
            poly(2, &[1, 1, 1])
        );
        assert_eq!(
            random_monic_irreducible(f2, 1, &mut rng, &[poly(2, &[0, 1]), poly(2, &[1, 1])]),
            Err(Error::Exhausted { degree: 1 })
        );
        for _ in 0..50 {
            let f = random_monic_irreducible(field(3), 1, &mut rng, &[]).unwrap();
            assert!(f == poly(3, &[1, 1]) || f == poly(3, &[2, 1]));
        }
        // large field takes the rejection-sampling path
        let big = field((1 << 61) - 1);
        let f = random_monic_irreducible(big, 3, &mut rng, &[]).unwrap();
        assert!(f.is_monic() && f.degree() == Some(3) && f.is_irreducible().unwrap());
    }

    #[test]
    fn random_poly_bounds() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let f2 = field(2);
        for _ in 0..100 {
            assert!(Polynomial::random(f2, 1, &mut rng).unwrap().degree_below(1));
            assert!(Polynomial::random(field(101), 5, &mut rng).unwrap().degree_below(5));
        }
        assert!(Polynomial::random(f2, 0, &mut rng).is_err());
    }

    #[test]
    fn random_poly_is_uniform() {
        // 9000 draws over the 9 polynomials of degree < 2 in F_3
        let mut rng = ChaCha20Rng::seed_from_u64(2024);
        let f3 = field(3);
        let mut counts = std::collections::HashMap::new();
        for _ in 0..9000 {
            *counts
                .entry(Polynomial::random(f3, 2, &mut rng).unwrap())
                .or_insert(0u32) += 1;
        }
        assert_eq!(counts.len(), 9);
        let chi2: f64 = counts
            .values()
            .map(|&c| (c as f64 - 1000.0).powi(2) / 1000.0)
            .sum();
        // chi-square critical value, 8 degrees of freedom, alpha = 0.001
        assert!(chi2 < 26.12, "chi2 = {chi2}");
        assert!(counts.values().all(|&c| (850..=1150).contains(&c)));
    }

    #[test]
    fn text_encoding() {
        let f = field(5);
        assert_eq!(Polynomial::parse(f, "1,0,1").unwrap(), poly(5, &[1, 0, 1]));
        assert_eq!(poly(5, &[1, 0, 1]).to_string(), "1,0,1");
        assert_eq!(Polynomial::zero(f).to_string(), "0");
        assert!(Polynomial::parse(f, "").unwrap().is_zero());
        assert!(Polynomial::parse(f, "0,0").unwrap().is_zero());
        assert_eq!(poly(5, &[2]).to_padded_string(3).unwrap(), "2,0,0");
        match Polynomial::parse(f, "1,7") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(Polynomial::parse(f, "1,,2"), Err(Error::Parse { offset: 2, .. })));
    }

    #[test]
    fn eval_and_truncate() {
        let f = poly(7, &[1, 2, 3]);
        assert_eq!(f.eval(2), (1 + 4 + 12) % 7);
        assert_eq!(f.truncate(2), poly(7, &[1, 2]));
        assert_eq!(f.shift(2), poly(7, &[0, 0, 1, 2, 3]));
    }
}
