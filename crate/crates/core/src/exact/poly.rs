//! Dense univariate polynomials over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Int, Rat};

/// Polynomial with rational coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Poly::new(coeffs.into_iter().map(|c| Rat::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[Int]) -> Self {
        Poly::new(coeffs.iter().cloned().map(Rat::from_integer).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `c x^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn x() -> Self {
        Poly::monomial(Rat::one(), 1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        self.scale(&lc.recip())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
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

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division. Panics on division by the zero polynomial.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = &rem[k] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &c * d;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation in interval arithmetic over `[lo, hi]`.
    pub fn eval_interval(&self, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
        let mut acc = (Rat::zero(), Rat::zero());
        for c in self.coeffs.iter().rev() {
            let p = [&acc.0 * lo, &acc.0 * hi, &acc.1 * lo, &acc.1 * hi];
            let mn = p.iter().min().unwrap().clone();
            let mx = p.iter().max().unwrap().clone();
            acc = (mn + c, mx + c);
        }
        acc
    }

    /// `p(x^2)`.
    pub fn substitute_square(&self) -> Poly {
        let mut out = vec![Rat::zero(); 2 * self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[2 * k] = c.clone();
        }
        Poly::new(out)
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Squarefree part `p / gcd(p, p')`, made monic.
    pub fn squarefree_part(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, if every coefficient is integral.
    pub fn integer_coeffs(&self) -> Option<Vec<Int>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Resultant via the Euclidean remainder sequence.
    pub fn resultant(&self, other: &Poly) -> Rat {
        let (Some(df), Some(dg)) = (self.degree(), other.degree()) else {
            return Rat::zero();
        };
        if dg == 0 {
            return other.leading().pow(df as i32);
        }
        let r = self.rem(other);
        let Some(dr) = r.degree() else {
            return Rat::zero();
        };
        let sign = if (df * dg) % 2 == 1 { -Rat::one() } else { Rat::one() };
        sign * other.leading().pow((df - dr) as i32) * other.resultant(&r)
    }

    /// Discriminant of a monic polynomial, `(-1)^(n(n-1)/2) res(p, p')`.
    pub fn discriminant(&self) -> Rat {
        let n = self.degree().unwrap_or(0);
        let r = self.resultant(&self.derivative());
        if (n * n.saturating_sub(1) / 2) % 2 == 1 {
            -r
        } else {
            r
        }
    }

    /// Rational roots of a polynomial (after clearing denominators), sorted.
    pub fn rational_roots(&self) -> Vec<Rat> {
        let Some(deg) = self.degree() else {
            return vec![];
        };
        let ints = self.primitive_integer();
        let mut roots = Vec::new();
        let mut p = ints.clone();
        // strip zero roots
        let mut lowest = 0;
        while lowest < p.len() && p[lowest].is_zero() {
            lowest += 1;
        }
        if lowest > 0 {
            roots.push(Rat::zero());
            p.drain(..lowest);
        }
        if p.len() <= 1 || deg == 0 {
            return roots;
        }
        let a0 = p[0].abs();
        let an = p.last().unwrap().abs();
        let poly = Poly::from_bigints(&p);
        for num in divisors(&a0) {
            for den in divisors(&an) {
                if !num.gcd(&den).is_one() {
                    continue;
                }
                for s in [BigInt::one(), -BigInt::one()] {
                    let r = BigRational::new(&s * &num, den.clone());
                    if poly.eval(&r).is_zero() && !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// Primitive integer polynomial proportional to `self` with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<Int> {
        if self.is_zero() {
            return vec![];
        }
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<Int> = self.coeffs.iter().map(|c| (c * &l).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.iter().map(|c| c / &g * &sign).collect()
    }

    /// Sturm sequence of `self`.
    pub fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r.neg());
        }
        seq
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_real_roots(&self, lo: &Rat, hi: &Rat) -> usize {
        let seq = self.sturm_sequence();
        let changes = |x: &Rat| {
            let signs: Vec<i8> = seq
                .iter()
                .map(|p| p.eval(x))
                .filter(|v| !v.is_zero())
                .map(|v| if v.is_positive() { 1 } else { -1 })
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        changes(lo).saturating_sub(changes(hi))
    }
}

fn divisors(n: &Int) -> Vec<Int> {
    // Trial division; only used for rational-root tests on small defining polynomials.
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let q = n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = k == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{}", abs)?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{}", k)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn division_roundtrip() {
        let a = Poly::from_ints([1, -3, 0, 2, 5]);
        let b = Poly::from_ints([2, 1, 3]);
        let (qt, r) = a.div_rem(&b);
        assert_eq!(qt.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn resultant_matches_root_product() {
        // res(x^2 - 2, x - 3) = (3^2 - 2) up to sign convention: a^{dg} prod g(alpha) = (sqrt2-3)(-sqrt2-3) = 7
        let f = Poly::from_ints([-2, 0, 1]);
        let g = Poly::from_ints([-3, 1]);
        assert_eq!(f.resultant(&g), q(7, 1));
        // discriminant of x^2 - 2 is 8, of x^3 + 3x - 1 is -4*27 - 27 = -135
        assert_eq!(f.discriminant(), q(8, 1));
        assert_eq!(Poly::from_ints([-1, 3, 0, 1]).discriminant(), q(-135, 1));
    }

    #[test]
    fn rational_roots_and_sturm() {
        let p = Poly::from_ints([-6, 11, -6, 1]); // (x-1)(x-2)(x-3)
        assert_eq!(p.rational_roots(), vec![q(1, 1), q(2, 1), q(3, 1)]);
        assert_eq!(p.count_real_roots(&q(0, 1), &q(5, 2)), 2);
        let f = Poly::from_ints([-2, 0, 1]);
        assert!(f.rational_roots().is_empty());
        assert_eq!(f.count_real_roots(&q(1, 1), &q(2, 1)), 1);
        assert_eq!(Poly::from_ints([1, 0, 1]).count_real_roots(&q(-10, 1), &q(10, 1)), 0);
    }

    #[test]
    fn display_and_xgcd() {
        assert_eq!(Poly::from_ints([-8, 0, 1]).to_string(), "x^2 - 8");
        assert_eq!(Poly::from_ints([-1, -2, 1]).to_string(), "x^2 - 2x - 1");
        let a = Poly::from_ints([1, 1]);
        let b = Poly::from_ints([-2, 0, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(g, Poly::one());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), Poly::one());
    }

    #[test]
    fn squarefree_part_drops_multiplicity() {
        let p = Poly::from_ints([-2, 0, 1]).pow(3);
        assert_eq!(p.squarefree_part(), Poly::from_ints([-2, 0, 1]));
        assert!(!p.is_squarefree());
    }
}
