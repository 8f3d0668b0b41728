//! Fixed-point complex approximations of polynomial roots.
//!
//! Nothing computed here is trusted on its own: callers use these values only
//! to propose candidates (square roots, factors) that are then checked with
//! exact arithmetic.

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive, Zero};

use super::poly::Poly;
use super::Rat;

/// Fractional bits of the fixed-point representation.
pub(crate) const PREC: u32 = 384;

/// Complex number `(re + i im) / 2^PREC`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Cfx {
    pub re: BigInt,
    pub im: BigInt,
}

fn fx_from_rat(r: &Rat) -> BigInt {
    (r.numer() << PREC) / r.denom()
}

fn fx_from_f64(x: f64) -> BigInt {
    let scaled = x * 2f64.powi(60);
    BigInt::from(scaled as i128) << (PREC - 60)
}

fn fx_sqrt(v: &BigInt) -> BigInt {
    if v.sign() != Sign::Plus {
        return BigInt::zero();
    }
    (v << PREC).sqrt()
}

impl Cfx {
    pub fn zero() -> Self {
        Cfx { re: BigInt::zero(), im: BigInt::zero() }
    }

    pub fn from_rat(r: &Rat) -> Self {
        Cfx { re: fx_from_rat(r), im: BigInt::zero() }
    }

    fn from_f64(re: f64, im: f64) -> Self {
        Cfx { re: fx_from_f64(re), im: fx_from_f64(im) }
    }

    pub fn add(&self, o: &Cfx) -> Cfx {
        Cfx { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &Cfx) -> Cfx {
        Cfx { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn conj(&self) -> Cfx {
        Cfx { re: self.re.clone(), im: -&self.im }
    }

    pub fn mul(&self, o: &Cfx) -> Cfx {
        let re = (&self.re * &o.re - &self.im * &o.im) >> PREC;
        let im = (&self.re * &o.im + &self.im * &o.re) >> PREC;
        Cfx { re, im }
    }

    pub fn div(&self, o: &Cfx) -> Cfx {
        let den = &o.re * &o.re + &o.im * &o.im;
        let re = ((&self.re * &o.re + &self.im * &o.im) << PREC) / &den;
        let im = ((&self.im * &o.re - &self.re * &o.im) << PREC) / &den;
        Cfx { re, im }
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Cfx {
        let modulus = (&self.re * &self.re + &self.im * &self.im).sqrt();
        let re = fx_sqrt(&((&modulus + &self.re) >> 1));
        let mut im = fx_sqrt(&((&modulus - &self.re) >> 1));
        if self.im.is_negative() {
            im = -im;
        }
        Cfx { re, im }
    }

    /// Max-norm magnitude as a fixed-point integer.
    pub fn abs_max(&self) -> BigInt {
        self.re.abs().max(self.im.abs())
    }

    #[cfg(test)]
    pub fn re_f64(&self) -> f64 {
        fx_to_f64(&self.re)
    }

    #[cfg(test)]
    pub fn im_f64(&self) -> f64 {
        fx_to_f64(&self.im)
    }
}

#[cfg(test)]
pub(crate) fn fx_to_f64(v: &BigInt) -> f64 {
    let shifted: BigInt = v >> (PREC - 60);
    shifted.to_f64().unwrap_or(f64::NAN) / 2f64.powi(60)
}

/// Rounds a fixed-point value times an integer scale to the nearest integer,
/// returning the integer and the distance to it in units of `2^-PREC`.
pub(crate) fn round_scaled(v: &BigInt, scale: &BigInt) -> (BigInt, BigInt) {
    let x = v * scale;
    let half = BigInt::from(1) << (PREC - 1);
    let r: BigInt = (&x + &half) >> PREC;
    let err = (&x - (&r << PREC)).abs();
    (r, err)
}

/// Evaluates a rational polynomial at a fixed-point complex value.
pub(crate) fn eval(p: &Poly, z: &Cfx) -> Cfx {
    let mut acc = Cfx::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z).add(&Cfx::from_rat(c));
    }
    acc
}

fn durand_kerner_f64(p: &Poly) -> Vec<(f64, f64)> {
    let n = p.degree().unwrap_or(0);
    let lc = p.leading();
    let c: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|a| (a / &lc).to_f64().unwrap_or(0.0))
        .collect();
    let bound = 1.0 + c[..n].iter().map(|a| a.abs()).fold(0.0, f64::max);
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            (0.5 * bound * ang.cos(), 0.5 * bound * ang.sin())
        })
        .collect();
    let ev = |x: (f64, f64)| {
        let mut acc = (0.0, 0.0);
        for a in c.iter().rev() {
            acc = (acc.0 * x.0 - acc.1 * x.1 + a, acc.0 * x.1 + acc.1 * x.0);
        }
        acc
    };
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let num = ev(z[i]);
            let mut den = (1.0, 0.0);
            for j in 0..n {
                if i != j {
                    let d = (z[i].0 - z[j].0, z[i].1 - z[j].1);
                    den = (den.0 * d.0 - den.1 * d.1, den.0 * d.1 + den.1 * d.0);
                }
            }
            let m = den.0 * den.0 + den.1 * den.1;
            if m == 0.0 {
                continue;
            }
            let q = ((num.0 * den.0 + num.1 * den.1) / m, (num.1 * den.0 - num.0 * den.1) / m);
            z[i] = (z[i].0 - q.0, z[i].1 - q.1);
            delta = delta.max(q.0.abs().max(q.1.abs()));
        }
        if delta < 1e-15 * bound {
            break;
        }
    }
    z
}

/// All complex roots of a squarefree rational polynomial, to roughly `PREC` bits.
pub(crate) fn complex_roots(p: &Poly) -> Vec<Cfx> {
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return vec![];
    }
    let monic = p.monic();
    let mut z: Vec<Cfx> = durand_kerner_f64(&monic)
        .into_iter()
        .map(|(re, im)| Cfx::from_f64(re, im))
        .collect();
    let one = Cfx { re: BigInt::from(1) << PREC, im: BigInt::zero() };
    let tol = BigInt::from(1) << 32;
    for _ in 0..200 {
        let mut worst = BigInt::zero();
        for i in 0..n {
            let num = eval(&monic, &z[i]);
            let mut den = one.clone();
            for j in 0..n {
                if i != j {
                    den = den.mul(&z[i].sub(&z[j]));
                }
            }
            if den.re.is_zero() && den.im.is_zero() {
                continue;
            }
            let q = num.div(&den);
            worst = worst.max(q.abs_max());
            z[i] = z[i].sub(&q);
        }
        if worst < tol {
            break;
        }
    }
    z
}
