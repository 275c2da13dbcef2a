//! Integer polynomials, exact determinants over `Z[t]`, and rational power
//! series over `Z/m`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::modular::mod_inverse;

/// Polynomial in `t` with arbitrary-precision integer coefficients,
/// ascending degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficients reduced to canonical residues mod `m`, trailing zeros dropped.
    pub fn reduce_mod(&self, m: u64) -> Vec<u64> {
        let big_m = BigInt::from(m);
        let mut out: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| c.mod_floor(&big_m).to_u64().expect("residue fits in u64"))
            .collect();
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    /// `self / divisor` when the division is exact in `Z[t]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let Some(dr) = self.degree() else {
            return Some(Self::zero());
        };
        if dr < dd {
            return None;
        }
        let mut quot = vec![BigInt::zero(); dr - dd + 1];
        for i in (0..=dr - dd).rev() {
            let c = &rem[i + dd];
            if c.is_zero() {
                continue;
            }
            let (q, r) = c.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * d;
            }
            quot[i] = q;
        }
        rem.iter().all(Zero::is_zero).then(|| Self::new(quot))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: Self) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        IntPolynomial::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: Self) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: Self) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::new(coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = c.abs();
            match i {
                0 => write!(f, "{abs}")?,
                _ if abs.is_one() => {}
                _ => write!(f, "{abs}")?,
            }
            match i {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Determinant of a square matrix over `Z[t]` by fraction-free (Bareiss)
/// elimination; every division along the way is exact.
pub fn det_poly(matrix: &[Vec<IntPolynomial>]) -> IntPolynomial {
    let n = matrix.len();
    assert!(matrix.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 0 {
        return IntPolynomial::one();
    }
    let mut a = matrix.to_vec();
    let mut negate = false;
    let mut prev = IntPolynomial::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return IntPolynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss division is exact in Z[t]");
            }
            a[i][k] = IntPolynomial::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// `numerator / denominator` as a power series over `Z/m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    modulus: u64,
    numerator: Vec<u64>,
    denominator: Vec<u64>,
}

fn reduce(coeffs: Vec<u64>, m: u64) -> Vec<u64> {
    let mut v: Vec<u64> = coeffs.into_iter().map(|c| c % m).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

impl RationalSeries {
    /// Coefficients are ascending; they are reduced mod `modulus`.
    pub fn new(modulus: u64, numerator: Vec<u64>, denominator: Vec<u64>) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        Self {
            modulus,
            numerator: reduce(numerator, modulus),
            denominator: reduce(denominator, modulus),
        }
    }

    pub fn from_int(modulus: u64, numerator: &IntPolynomial, denominator: &IntPolynomial) -> Self {
        Self {
            modulus,
            numerator: numerator.reduce_mod(modulus),
            denominator: denominator.reduce_mod(modulus),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn numerator(&self) -> &[u64] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[u64] {
        &self.denominator
    }
}

/// First `count` coefficients of the series, from
/// `c_j = d_0^{-1} (n_j - Σ_{i=1..j} d_i c_{j-i})`.
pub fn series_expand(s: &RationalSeries, count: usize) -> Result<Vec<u64>> {
    let m = s.modulus as u128;
    let d0 = s.denominator.first().copied().unwrap_or(0);
    let inv = mod_inverse(d0, s.modulus).ok_or(Error::NonUnitConstantTerm {
        constant: d0,
        modulus: s.modulus,
    })? as u128;
    let mut c: Vec<u64> = Vec::with_capacity(count);
    for j in 0..count {
        let mut acc = s.numerator.get(j).copied().unwrap_or(0) as u128;
        for i in 1..=j.min(s.denominator.len().saturating_sub(1)) {
            let sub = s.denominator[i] as u128 * c[j - i] as u128 % m;
            acc = (acc + m - sub) % m;
        }
        c.push((acc * inv % m) as u64);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn arithmetic_and_canonical_form() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(&p(&[1, -1]) * &p(&[1, -2]), p(&[1, -3, 2]));
        assert_eq!(&p(&[1, 1]) - &p(&[1, 1]), IntPolynomial::zero());
        assert_eq!(p(&[1, -3, 2]).div_exact(&p(&[1, -1])), Some(p(&[1, -2])));
        assert_eq!(p(&[1, 0, 1]).div_exact(&p(&[1, 1])), None);
        assert_eq!(p(&[3]).div_exact(&p(&[2])), None);
        assert_eq!(p(&[-1, 3, 2]).reduce_mod(2), vec![1, 1]);
        assert_eq!(p(&[1, -3, 2]).to_string(), "1 - 3t + 2t^2");
    }

    #[test]
    fn odometer_characteristic_determinant() {
        // I - At for A = [[1,1],[0,2]]
        let m = vec![vec![p(&[1, -1]), p(&[0, -1])], vec![p(&[]), p(&[1, -2])]];
        assert_eq!(det_poly(&m), p(&[1, -3, 2]));
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det_poly(&[vec![p(&[1, -3])]]), p(&[1, -3]));
        let id = vec![vec![p(&[1]), p(&[])], vec![p(&[]), p(&[1])]];
        assert_eq!(det_poly(&id), p(&[1]));
        assert_eq!(det_poly(&[]), p(&[1]));
        // zero pivot forces a row swap
        let swap = vec![vec![p(&[]), p(&[1])], vec![p(&[1]), p(&[])]];
        assert_eq!(det_poly(&swap), p(&[-1]));
        let singular = vec![vec![p(&[1, 1]), p(&[2])], vec![p(&[1, 1]), p(&[2])]];
        assert_eq!(det_poly(&singular), IntPolynomial::zero());
    }

    #[test]
    fn expansions() {
        let geo = RationalSeries::new(2, vec![1], vec![1, 1]);
        assert_eq!(series_expand(&geo, 5).unwrap(), vec![1; 5]);
        let zero = RationalSeries::new(3, vec![], vec![1, 2, 1]);
        assert_eq!(series_expand(&zero, 4).unwrap(), vec![0; 4]);
        let poly = RationalSeries::new(3, vec![1, 1], vec![1]);
        assert_eq!(series_expand(&poly, 4).unwrap(), vec![1, 1, 0, 0]);
        // 1/(1 - t) over Z/6 = 1 + t + t^2 + ...
        let geo6 = RationalSeries::new(6, vec![1], vec![1, 5]);
        assert_eq!(series_expand(&geo6, 4).unwrap(), vec![1; 4]);
        // denominator constant 5 is a unit mod 6 with inverse 5
        let s = RationalSeries::new(6, vec![1], vec![5]);
        assert_eq!(series_expand(&s, 2).unwrap(), vec![5, 0]);
    }

    #[test]
    fn non_unit_constant_term() {
        let s = RationalSeries::new(4, vec![1], vec![2, 1]);
        assert_eq!(
            series_expand(&s, 3),
            Err(Error::NonUnitConstantTerm {
                constant: 2,
                modulus: 4
            })
        );
    }
}
