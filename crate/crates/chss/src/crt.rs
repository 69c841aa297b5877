//! Chinese remaindering in F_p[x] for pairwise coprime moduli.

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// `true` iff every pair of moduli has monic gcd 1.
pub fn check_pairwise_coprime(moduli: &[Polynomial]) -> Result<bool> {
    Ok(first_shared_factor(moduli)?.is_none())
}

fn first_shared_factor(moduli: &[Polynomial]) -> Result<Option<(usize, usize)>> {
    for m in moduli {
        if m.is_zero() {
            return Err(Error::ZeroModulus);
        }
        if m.degree() == Some(0) {
            return Err(Error::ConstantPolynomial);
        }
    }
    for i in 0..moduli.len() {
        for j in i + 1..moduli.len() {
            if !Polynomial::gcd(&moduli[i], &moduli[j])?.is_one() {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// A validated system `y ≡ g_i (mod m_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceSystem {
    items: Vec<(Polynomial, Polynomial)>,
}

impl CongruenceSystem {
    /// Validates the system. Residues must already be reduced modulo their
    /// modulus and the moduli must be nonconstant and pairwise coprime.
    pub fn new(items: Vec<(Polynomial, Polynomial)>) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::EmptySystem);
        }
        let p = items[0].0.modulus();
        for (idx, (m, g)) in items.iter().enumerate() {
            for q in [m.modulus(), g.modulus()] {
                if q != p {
                    return Err(Error::ModulusMismatch(p.value(), q.value()));
                }
            }
            if m.is_zero() {
                return Err(Error::ZeroModulus);
            }
            if m.degree() == Some(0) {
                return Err(Error::ConstantPolynomial);
            }
            if g.len() >= m.len() {
                return Err(Error::ResidueNotReduced(idx));
            }
        }
        let moduli: Vec<Polynomial> = items.iter().map(|(m, _)| m.clone()).collect();
        if let Some((i, j)) = first_shared_factor(&moduli)? {
            return Err(Error::NotPairwiseCoprime(i, j));
        }
        Ok(CongruenceSystem { items })
    }

    /// Like [`CongruenceSystem::new`] but reduces each residue first.
    pub fn reducing(items: Vec<(Polynomial, Polynomial)>) -> Result<Self> {
        let items = items
            .into_iter()
            .map(|(m, g)| {
                if m.is_zero() {
                    return Err(Error::ZeroModulus);
                }
                let g = g.rem(&m)?;
                Ok((m, g))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(items)
    }

    pub fn items(&self) -> &[(Polynomial, Polynomial)] {
        &self.items
    }

    /// Product of all moduli.
    pub fn product(&self) -> Polynomial {
        let p = self.items[0].0.modulus();
        self.items
            .iter()
            .fold(Polynomial::one(p), |acc, (m, _)| acc.mul(m).expect("same field"))
    }

    /// The unique `y` with `degree(y) < degree(M)` and `y ≡ g_i (mod m_i)`,
    /// computed as `Σ λ_i·M_i·g_i mod M` with `M_i = M / m_i` and
    /// `λ_i = M_i^{-1} mod m_i`.
    pub fn solve(&self) -> Result<Polynomial> {
        let big_m = self.product();
        let p = big_m.modulus();
        let mut acc = Polynomial::zero(p);
        for (m, g) in &self.items {
            if g.is_zero() {
                continue;
            }
            let (cofactor, r) = big_m.divmod(m)?;
            debug_assert!(r.is_zero());
            let lambda = cofactor.inv_mod(m)?;
            // λ_i·g_i can be reduced mod m_i before scaling by M_i
            let term = lambda.mul(g)?.rem(m)?.mul(&cofactor)?;
            acc = acc.add(&term)?;
        }
        acc.rem(&big_m)
    }
}

/// Convenience wrapper: validate and solve.
pub fn crt_solve(items: Vec<(Polynomial, Polynomial)>) -> Result<Polynomial> {
    CongruenceSystem::new(items)?.solve()
}
