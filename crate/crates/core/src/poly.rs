//! Univariate polynomials with exact rational coefficients.

use std::fmt;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{self, int, to_f64, Q};

/// Coefficients in ascending degree; trailing zeros are trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Q>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        Poly::new(vec![c])
    }

    /// `a + b·x`.
    pub fn linear(a: Q, b: Q) -> Self {
        Poly::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    /// Multiplicity of the root at 0 (`None` for the zero polynomial).
    pub fn order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Exact division by `x^k`; the `k` lowest coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Poly {
        assert!(
            self.coeffs.iter().take(k).all(Zero::is_zero),
            "polynomial is not divisible by x^{k}"
        );
        Poly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// `Π (a_i + b_i x)`, multiplied over the integers after clearing
    /// denominators factor by factor.
    pub fn product_of_linear(factors: &[(Q, Q)]) -> Poly {
        let mut acc: Vec<BigInt> = vec![BigInt::one()];
        let mut scale = BigInt::one();
        for (a, b) in factors {
            let den = a.denom().lcm(b.denom());
            let a = a.numer() * (&den / a.denom());
            let b = b.numer() * (&den / b.denom());
            let mut next = vec![BigInt::zero(); acc.len() + 1];
            for (i, c) in acc.iter().enumerate() {
                next[i] += c * &a;
                next[i + 1] += c * &b;
            }
            acc = next;
            scale *= den;
        }
        Poly::new(acc.into_iter().map(|c| Q::new(c, scale.clone())).collect())
    }

    /// Coefficients times a positive integer, all integral.
    fn integer_coeffs(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        self.coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect()
    }

    /// Sign of `p(x)`, in integer arithmetic.
    pub fn sign_at(&self, x: &Q) -> Ordering {
        sign_with(&self.integer_coeffs(), x)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Q::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Q) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&int(-1))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    /// Antiderivative vanishing at 0.
    pub fn antiderivative(&self) -> Poly {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Q::zero());
        out.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c / int(i as i64 + 1)),
        );
        Poly::new(out)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }

    /// Remainder of Euclidean division.
    pub fn rem(&self, divisor: &Poly) -> Poly {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().expect("nonzero").clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let factor = &r[top] / &lead;
            if !factor.is_zero() {
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    r[top - dd + i] -= &factor * c;
                }
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&(Q::one() / l)),
            None => Poly::zero(),
        }
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`, by
    /// Sturm's theorem.
    pub fn count_real_roots(&self, a: &Q, b: &Q) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let mut chain = vec![self.monic(), self.derivative().monic()];
        loop {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg().monic_preserving_sign());
        }
        let chain: Vec<Vec<BigInt>> = chain.iter().map(Poly::integer_coeffs).collect();
        let variations = |x: &Q| {
            let signs: Vec<Ordering> = chain
                .iter()
                .map(|p| sign_with(p, x))
                .filter(|&s| s != Ordering::Equal)
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        variations(a).saturating_sub(variations(b))
    }

    /// Scales by a positive constant so the leading coefficient has magnitude 1.
    fn monic_preserving_sign(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&(Q::one() / l.abs())),
            None => Poly::zero(),
        }
    }
}

/// Sign of `Σ c_i x^i` for `x = p/q`, computed as `Σ c_i p^i q^{n−i}`.
fn sign_with(coeffs: &[BigInt], x: &Q) -> Ordering {
    let Some((last, rest)) = coeffs.split_last() else {
        return Ordering::Equal;
    };
    let (p, q) = (x.numer(), x.denom());
    let mut q_pow = BigInt::one();
    let mut acc = last.clone();
    for c in rest.iter().rev() {
        q_pow *= q;
        acc = acc * p + c * &q_pow;
    }
    acc.sign().cmp(&num_bigint::Sign::NoSign)
}

/// Horner evaluation of float coefficients (ascending order).
pub fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Bisects `p` on `[lo, hi]` with exact arithmetic, assuming `p(lo)` and
/// `p(hi)` have opposite strict signs, until the bracket is narrower than
/// `width`. Returns the final bracket.
pub fn bisect_root(p: &Poly, lo: &Q, hi: &Q, width: &Q) -> (Q, Q) {
    let coeffs = p.integer_coeffs();
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    let lo_sign = sign_with(&coeffs, &lo);
    debug_assert_eq!(lo_sign, sign_with(&coeffs, &hi).reverse());
    let two = int(2);
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        let v = sign_with(&coeffs, &mid);
        if v == Ordering::Equal {
            return (mid.clone(), mid);
        }
        if v == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", rational::format(c))?,
                1 => write!(f, "{} y", rational::format(c))?,
                _ => write!(f, "{} y^{i}", rational::format(c))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(a.mul(&b), p(&[-1, 0, 1]));
        assert_eq!(a.add(&b), p(&[0, 2]));
        assert_eq!(p(&[1, 2, 3]).derivative(), p(&[2, 6]));
        assert_eq!(
            p(&[2, 6]).antiderivative(),
            Poly::new(vec![int(0), int(2), int(3)])
        );
        assert_eq!(p(&[0, 0, 3, 1]).order_at_zero(), Some(2));
        assert_eq!(p(&[0, 0, 3, 1]).shift_down(2), p(&[3, 1]));
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(p(&[1, 2, 0]).degree(), Some(1));
    }

    #[test]
    fn evaluation() {
        let q = p(&[1, -3, 2]);
        assert_eq!(q.eval(&frac(1, 2)), int(0));
        assert!((horner(&q.to_f64_coeffs(), 3.0) - 10.0).abs() < 1e-12);
    }

    #[test]
    fn sturm_counts() {
        // (x − 1)(x − 2)(x + 3)
        let q = p(&[-1, 1]).mul(&p(&[-2, 1])).mul(&p(&[3, 1]));
        assert_eq!(q.count_real_roots(&int(0), &int(10)), 2);
        assert_eq!(q.count_real_roots(&int(-10), &int(10)), 3);
        assert_eq!(q.count_real_roots(&frac(3, 2), &int(10)), 1);
        assert_eq!(p(&[1, 0, 1]).count_real_roots(&int(-5), &int(5)), 0);
        // Double root counted once.
        let dbl = p(&[-1, 1]).mul(&p(&[-1, 1]));
        assert_eq!(dbl.count_real_roots(&int(0), &int(2)), 1);
    }

    #[test]
    fn linear_product_and_signs() {
        let factors = [(frac(1, 2), frac(2, 3)), (int(0), frac(1, 5)), (int(3), int(-1))];
        let naive = factors.iter().fold(Poly::constant(int(1)), |acc, (a, b)| {
            acc.mul(&Poly::linear(a.clone(), b.clone()))
        });
        let fast = Poly::product_of_linear(&factors);
        assert_eq!(fast, naive);
        assert_eq!(fast.sign_at(&int(1)), Ordering::Greater);
        assert_eq!(fast.sign_at(&int(3)), Ordering::Equal);
        assert_eq!(fast.sign_at(&frac(7, 2)), Ordering::Less);
        assert_eq!(fast.sign_at(&frac(-1, 3)), fast.eval(&frac(-1, 3)).signum().cmp(&int(0)));
    }

    #[test]
    fn bisection_brackets_root() {
        let q = p(&[-2, 0, 1]);
        let (lo, hi) = bisect_root(&q, &int(1), &int(2), &frac(1, 1 << 40));
        let r = 2f64.sqrt();
        assert!(to_f64(&lo) <= r && r <= to_f64(&hi));
    }
}
