//! Number fields `Q[x]/(f)` with one distinguished real embedding.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::linalg::rational_combination;
use super::matrix::{FieldScalar, Matrix, RatMatrix, Scalar};
use super::poly::Poly;
use super::roots::{self, Cfx, PREC};
use super::{Int, Rat};
use crate::error::{Error, Result};

/// Algebraic number field with a real embedding selected by an isolating interval.
pub struct NumberField {
    poly: Poly,
    /// Coefficients of the monic defining polynomial below the leading one.
    reduction: Vec<Rat>,
    lo: Rat,
    hi: Rat,
    degree: usize,
    refined: Mutex<(Rat, Rat)>,
    numerics: OnceLock<Numerics>,
}

struct Numerics {
    roots: Vec<Cfx>,
    distinguished: usize,
    real: Vec<bool>,
    /// For each root `j`, coefficients of `f(x) / ((x - r_j) f'(r_j))`.
    lagrange: Vec<Vec<Cfx>>,
    disc: Int,
}

pub type FieldMatrix = Matrix<FieldElem>;

impl NumberField {
    /// Builds `Q[x]/(f)` for a monic integer polynomial `f` (coefficients lowest
    /// first) and an interval `(lo, hi)` containing exactly one real root.
    pub fn new(coeffs: &[Int], lo: Rat, hi: Rat) -> Result<Arc<NumberField>> {
        let poly = Poly::from_bigints(coeffs);
        let degree = match poly.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::InvalidField("defining polynomial must have degree >= 1".into())),
        };
        if !poly.is_monic() {
            return Err(Error::InvalidField("defining polynomial must be monic".into()));
        }
        if lo >= hi {
            return Err(Error::InvalidField("root interval is empty".into()));
        }
        if poly.eval(&lo).is_zero() || poly.eval(&hi).is_zero() {
            return Err(Error::InvalidField("interval endpoint is a root".into()));
        }
        if poly.count_real_roots(&lo, &hi) != 1 {
            return Err(Error::InvalidField(format!(
                "interval ({}, {}) does not isolate exactly one real root of {}",
                lo, hi, poly
            )));
        }
        let field = NumberField::unchecked(poly, lo, hi, degree);
        field.check_irreducible()?;
        Ok(Arc::new(field))
    }

    fn unchecked(poly: Poly, lo: Rat, hi: Rat, degree: usize) -> NumberField {
        let reduction = (0..degree).map(|k| poly.coeff(k)).collect();
        NumberField {
            poly,
            reduction,
            refined: Mutex::new((lo.clone(), hi.clone())),
            lo,
            hi,
            degree,
            numerics: OnceLock::new(),
        }
    }

    /// The rational numbers, presented as `Q[x]/(x)`.
    pub fn rationals() -> Arc<NumberField> {
        static Q: OnceLock<Arc<NumberField>> = OnceLock::new();
        Q.get_or_init(|| {
            Arc::new(NumberField::unchecked(
                Poly::x(),
                -Rat::one(),
                Rat::one(),
                1,
            ))
        })
        .clone()
    }

    /// `Q(sqrt(d))` with the positive square root, `d > 1` squarefree.
    pub fn real_quadratic(d: i64) -> Result<Arc<NumberField>> {
        NumberField::new(
            &[Int::from(-d), Int::zero(), Int::one()],
            Rat::zero(),
            Rat::from_integer(Int::from(d + 1)),
        )
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn defining_poly(&self) -> &Poly {
        &self.poly
    }

    pub fn interval(&self) -> (&Rat, &Rat) {
        (&self.lo, &self.hi)
    }

    pub fn is_rationals(&self) -> bool {
        self.degree == 1
    }

    fn check_irreducible(&self) -> Result<()> {
        let n = self.degree;
        if n == 1 {
            return Ok(());
        }
        if !self.poly.is_squarefree() {
            return Err(Error::InvalidField(format!("{} is not squarefree", self.poly)));
        }
        if !self.poly.rational_roots().is_empty() {
            return Err(Error::InvalidField(format!("{} has a rational root", self.poly)));
        }
        if n < 4 {
            return Ok(());
        }
        // A monic integer factor is the product of some subset of the complex roots;
        // propose each subset numerically and confirm by exact division.
        let roots = &self.numerics().roots;
        for size in 2..=n / 2 {
            for subset in combinations(n, size) {
                let mut prod = vec![Cfx::from_rat(&Rat::one())];
                for &j in &subset {
                    let mut next = vec![Cfx::zero(); prod.len() + 1];
                    for (k, c) in prod.iter().enumerate() {
                        next[k + 1] = next[k + 1].add(c);
                        next[k] = next[k].sub(&c.mul(&roots[j]));
                    }
                    prod = next;
                }
                let mut coeffs = Vec::with_capacity(prod.len());
                let one = BigInt::one();
                let tol = BigInt::one() << (PREC - 40);
                let mut ok = true;
                for c in &prod {
                    let (r, err) = roots::round_scaled(&c.re, &one);
                    if err > tol || c.im.abs() > tol {
                        ok = false;
                        break;
                    }
                    coeffs.push(Rat::from_integer(r));
                }
                if !ok {
                    continue;
                }
                let factor = Poly::new(coeffs);
                if self.poly.rem(&factor).is_zero() {
                    return Err(Error::InvalidField(format!(
                        "{} has the factor {}",
                        self.poly, factor
                    )));
                }
            }
        }
        Ok(())
    }

    fn numerics(&self) -> &Numerics {
        self.numerics.get_or_init(|| {
            let roots = roots::complex_roots(&self.poly);
            let real_tol = BigInt::one() << (PREC / 2);
            let real: Vec<bool> = roots.iter().map(|r| r.im.abs() < real_tol).collect();
            // locate the distinguished root after tightening the interval
            let (lo, hi) = self.refine_interval(80);
            let mid = (&lo + &hi) / Rat::from_integer(2.into());
            let midf = Cfx::from_rat(&mid);
            let distinguished = (0..roots.len())
                .filter(|&j| real[j])
                .min_by_key(|&j| roots[j].sub(&midf).abs_max())
                .unwrap_or(0);
            let deriv = self.poly.derivative();
            let lagrange = roots
                .iter()
                .map(|r| {
                    // synthetic division of f by (x - r)
                    let c = self.poly.coeffs();
                    let n = c.len() - 1;
                    let mut q = vec![Cfx::zero(); n];
                    let mut acc = Cfx::zero();
                    for k in (1..=n).rev() {
                        acc = acc.mul(r).add(&Cfx::from_rat(&c[k]));
                        q[k - 1] = acc.clone();
                    }
                    let w = Cfx::from_rat(&Rat::one()).div(&roots::eval(&deriv, r));
                    q.iter().map(|x| x.mul(&w)).collect()
                })
                .collect();
            let disc = self.poly.discriminant().to_integer().abs();
            Numerics { roots, distinguished, real, lagrange, disc }
        })
    }

    /// Bisects the isolating interval until its width is below `2^-bits`.
    fn refine_interval(&self, bits: u32) -> (Rat, Rat) {
        let mut guard = self.refined.lock().unwrap();
        let width = Rat::new(Int::one(), Int::one() << bits);
        while &guard.1 - &guard.0 > width {
            let (lo, hi) = guard.clone();
            let (nlo, nhi) = self.bisect(lo, hi);
            *guard = (nlo, nhi);
        }
        guard.clone()
    }

    fn bisect(&self, lo: Rat, hi: Rat) -> (Rat, Rat) {
        let mid = (&lo + &hi) / Rat::from_integer(2.into());
        let fm = self.poly.eval(&mid);
        if fm.is_zero() {
            // only possible for degree one
            return (mid.clone(), mid);
        }
        let flo = self.poly.eval(&lo);
        if flo.is_positive() == fm.is_positive() {
            (mid, hi)
        } else {
            (lo, mid)
        }
    }

    fn reduce(&self, mut c: Vec<Rat>) -> Vec<Rat> {
        let n = self.degree;
        for k in (n..c.len()).rev() {
            let lead = std::mem::take(&mut c[k]);
            if lead.is_zero() {
                continue;
            }
            for (j, f) in self.reduction.iter().enumerate() {
                if !f.is_zero() {
                    c[k - n + j] -= &lead * f;
                }
            }
        }
        c.truncate(n);
        c.resize(n, Rat::zero());
        c
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.poly == other.poly && self.lo == other.lo && self.hi == other.hi)
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({}, ({}, {}))", self.poly, self.lo, self.hi)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Element of a number field in power-basis coordinates.
#[derive(Clone)]
pub struct FieldElem {
    field: Arc<NumberField>,
    coords: Vec<Rat>,
}

fn same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FieldElem {
    pub fn new(field: &Arc<NumberField>, coords: Vec<Rat>) -> Result<FieldElem> {
        if coords.len() != field.degree {
            return Err(Error::Dimension(format!(
                "{} coordinates for a degree {} field",
                coords.len(),
                field.degree
            )));
        }
        Ok(FieldElem { field: field.clone(), coords })
    }

    pub fn from_rat(field: &Arc<NumberField>, r: Rat) -> FieldElem {
        let mut coords = vec![Rat::zero(); field.degree];
        coords[0] = r;
        FieldElem { field: field.clone(), coords }
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> FieldElem {
        FieldElem::from_rat(field, Rat::from_integer(n.into()))
    }

    pub fn zero(field: &Arc<NumberField>) -> FieldElem {
        FieldElem::from_rat(field, Rat::zero())
    }

    pub fn one(field: &Arc<NumberField>) -> FieldElem {
        FieldElem::from_rat(field, Rat::one())
    }

    /// The class of `x`, i.e. the distinguished root of the defining polynomial.
    pub fn generator(field: &Arc<NumberField>) -> FieldElem {
        FieldElem::from_poly(field, &Poly::x())
    }

    pub fn from_poly(field: &Arc<NumberField>, p: &Poly) -> FieldElem {
        let coords = field.reduce(p.coeffs().to_vec());
        FieldElem { field: field.clone(), coords }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<Rat> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| self.coords[0].clone())
    }

    fn check(&self, other: &FieldElem) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, o: &FieldElem) -> Result<FieldElem> {
        self.check(o)?;
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect();
        Ok(FieldElem { field: self.field.clone(), coords })
    }

    pub fn try_sub(&self, o: &FieldElem) -> Result<FieldElem> {
        self.check(o)?;
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect();
        Ok(FieldElem { field: self.field.clone(), coords })
    }

    pub fn try_mul(&self, o: &FieldElem) -> Result<FieldElem> {
        self.check(o)?;
        let n = self.field.degree;
        let mut prod = vec![Rat::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(FieldElem { field: self.field.clone(), coords: self.field.reduce(prod) })
    }

    pub fn scale(&self, r: &Rat) -> FieldElem {
        FieldElem { field: self.field.clone(), coords: self.coords.iter().map(|c| c * r).collect() }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        if self.field.degree == 1 {
            return Some(FieldElem::from_rat(&self.field, self.coords[0].recip()));
        }
        let (g, s, _) = self.to_poly().xgcd(&self.field.poly);
        debug_assert!(g.degree() == Some(0));
        Some(FieldElem::from_poly(&self.field, &s))
    }

    pub fn try_div(&self, o: &FieldElem) -> Result<FieldElem> {
        self.check(o)?;
        let inv = o.inv().ok_or_else(|| Error::Domain("division by zero".into()))?;
        self.try_mul(&inv)
    }

    pub fn pow(&self, e: u32) -> FieldElem {
        let mut acc = FieldElem::one(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Sign of the embedded real value.
    pub fn sign(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        if self.field.degree == 1 {
            return self.coords[0].cmp(&Rat::zero());
        }
        let p = self.to_poly();
        let (mut lo, mut hi) = self.field.refined.lock().unwrap().clone();
        loop {
            let (a, b) = p.eval_interval(&lo, &hi);
            if a.is_positive() {
                break self.store_interval(lo, hi, Ordering::Greater);
            }
            if b.is_negative() {
                break self.store_interval(lo, hi, Ordering::Less);
            }
            (lo, hi) = self.field.bisect(lo, hi);
        }
    }

    fn store_interval(&self, lo: Rat, hi: Rat, o: Ordering) -> Ordering {
        let mut guard = self.field.refined.lock().unwrap();
        if &hi - &lo < &guard.1 - &guard.0 {
            *guard = (lo, hi);
        }
        o
    }

    /// Compares embedded real values; equality is decided exactly.
    pub fn compare_embedded(&self, other: &FieldElem) -> Result<Ordering> {
        Ok(self.try_sub(other)?.sign())
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn abs(&self) -> FieldElem {
        if self.sign() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Matrix of multiplication by `self` on the power basis (columns are images).
    pub fn mult_matrix(&self) -> RatMatrix {
        let n = self.field.degree;
        let mut cols = Vec::with_capacity(n);
        let mut cur = self.clone();
        let theta = FieldElem::generator(&self.field);
        for _ in 0..n {
            cols.push(cur.coords.clone());
            cur = &cur * &theta;
        }
        Matrix::from_fn(n, n, |i, j| cols[j][i].clone())
    }

    pub fn trace(&self) -> Rat {
        let m = self.mult_matrix();
        (0..m.rows()).fold(Rat::zero(), |acc, i| acc + m.get(i, i))
    }

    pub fn norm(&self) -> Rat {
        self.mult_matrix().det()
    }

    /// Monic minimal polynomial over the rationals.
    pub fn minimal_polynomial(&self) -> Poly {
        let n = self.field.degree;
        let mut powers = vec![FieldElem::one(&self.field).coords];
        let mut cur = FieldElem::one(&self.field);
        for j in 1..=n {
            cur = &cur * self;
            if let Some(c) = rational_combination(&powers, &cur.coords) {
                let mut coeffs: Vec<Rat> = c.iter().map(|x| -x).collect();
                coeffs.push(Rat::one());
                debug_assert_eq!(coeffs.len(), j + 1);
                return Poly::new(coeffs);
            }
            powers.push(cur.coords.clone());
        }
        unreachable!("powers of a field element are dependent by degree n")
    }

    pub fn is_algebraic_integer(&self) -> bool {
        self.minimal_polynomial().has_integer_coeffs()
    }

    /// The embedded-nonnegative square root when it lies in the field.
    pub fn sqrt(&self) -> Result<Option<FieldElem>> {
        match self.sign() {
            Ordering::Less => {
                return Err(Error::Domain("square root of a negative value".into()));
            }
            Ordering::Equal => return Ok(Some(self.clone())),
            Ordering::Greater => {}
        }
        if self.field.degree == 1 {
            return Ok(rational_sqrt(&self.coords[0]).map(|r| FieldElem::from_rat(&self.field, r)));
        }
        Ok(self.sqrt_candidates())
    }

    fn sqrt_candidates(&self) -> Option<FieldElem> {
        let num = self.field.numerics();
        let n = self.field.degree;
        let t = self.to_poly();
        let tol = BigInt::one() << (PREC / 2);
        let mut signed: Vec<Option<usize>> = Vec::new(); // roots whose sign is free
        let mut contrib: Vec<Vec<Cfx>> = vec![Vec::new(); n];
        for (j, r) in num.roots.iter().enumerate() {
            let v = roots::eval(&t, r);
            if num.real[j] && v.re.is_negative() && v.re.abs() > tol {
                return None;
            }
            let s = v.sqrt();
            contrib[j] = num.lagrange[j].iter().map(|c| c.mul(&s)).collect();
        }
        // conjugate pairs share one sign; complex roots are handled via their upper member
        let mut partner = vec![None; n];
        for j in 0..n {
            if num.real[j] || num.roots[j].im.is_negative() {
                continue;
            }
            let conj = num.roots[j].conj();
            partner[j] = (0..n)
                .filter(|&i| i != j && !num.real[i])
                .min_by_key(|&i| num.roots[i].sub(&conj).abs_max());
        }
        for j in 0..n {
            if j == num.distinguished {
                continue;
            }
            if num.real[j] || partner[j].is_some() {
                signed.push(Some(j));
            }
        }
        let den = self.coords.iter().fold(Int::one(), |l, c| l.lcm(c.denom())) * &num.disc;
        let round_tol = BigInt::one() << (PREC - 40);
        let total = |mask: u64| {
            let mut acc = vec![Cfx::zero(); n];
            for j in 0..n {
                let flip = signed
                    .iter()
                    .position(|&s| s == Some(j))
                    .is_some_and(|bit| mask >> bit & 1 == 1);
                let owner = if num.real[j] || num.roots[j].im.is_positive() || partner[j].is_some() {
                    j
                } else {
                    // lower member of a pair follows its partner's sign
                    (0..n).find(|&i| partner[i] == Some(j)).unwrap_or(j)
                };
                let flip = if owner == j {
                    flip
                } else {
                    signed
                        .iter()
                        .position(|&s| s == Some(owner))
                        .is_some_and(|bit| mask >> bit & 1 == 1)
                };
                // the lower member uses the conjugate of its partner's root
                let term: Vec<Cfx> = if owner != j {
                    let s = roots::eval(&t, &num.roots[owner]).sqrt().conj();
                    num.lagrange[j].iter().map(|c| c.mul(&s)).collect()
                } else {
                    contrib[j].clone()
                };
                for (a, c) in acc.iter_mut().zip(term) {
                    *a = if flip { a.sub(&c) } else { a.add(&c) };
                }
            }
            acc
        };
        for mask in 0..(1u64 << signed.len()) {
            let acc = total(mask);
            let mut coords = Vec::with_capacity(n);
            let mut ok = true;
            for c in &acc {
                let (r, err) = roots::round_scaled(&c.re, &den);
                if err > round_tol {
                    ok = false;
                    break;
                }
                coords.push(Rat::new(r, den.clone()));
            }
            if !ok {
                continue;
            }
            let cand = FieldElem { field: self.field.clone(), coords };
            if &cand * &cand == *self {
                return Some(cand.abs());
            }
        }
        None
    }
}

/// Exact square root of a nonnegative rational, if it is a rational square.
pub fn rational_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rat::new(n, d))
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.coords == other.coords
    }
}

impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Polynomial expression in the generator `a`, e.g. `1/2*a - 3`.
impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", r);
        }
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let abs = c.abs();
            match k {
                0 => write!(f, "{}", abs)?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{}*", abs)?;
                    }
                    if k == 1 {
                        write!(f, "a")?;
                    } else {
                        write!(f, "a^{}", k)?;
                    }
                }
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl<'a> $tr<&'a FieldElem> for &'a FieldElem {
            type Output = FieldElem;
            /// Panics when the operands live in different fields.
            fn $method(self, rhs: &'a FieldElem) -> FieldElem {
                self.$try(rhs).expect("field mismatch in arithmetic")
            }
        }
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$try(&rhs).expect("field mismatch in arithmetic")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { field: self.field.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl Scalar for FieldElem {
    fn zero_like(&self) -> Self {
        FieldElem::zero(&self.field)
    }
    fn one_like(&self) -> Self {
        FieldElem::one(&self.field)
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl FieldScalar for FieldElem {
    fn inv_ref(&self) -> Self {
        self.inv().expect("inverse of zero")
    }
}

impl FieldMatrix {
    pub fn from_rat(field: &Arc<NumberField>, m: &RatMatrix) -> FieldMatrix {
        m.map(|r| FieldElem::from_rat(field, r.clone()))
    }

    pub fn field_identity(field: &Arc<NumberField>, n: usize) -> FieldMatrix {
        Matrix::identity_like(n, &FieldElem::one(field))
    }

    /// Entry-wise rational matrix, if every entry is rational.
    pub fn to_rational(&self) -> Option<RatMatrix> {
        let entries: Option<Vec<Rat>> = self.entries().iter().map(FieldElem::as_rational).collect();
        entries.map(|e| Matrix::new(self.rows(), self.cols(), e).expect("same shape"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn q_sqrt2() -> Arc<NumberField> {
        NumberField::real_quadratic(2).unwrap()
    }

    #[test]
    fn compare_embedded_examples() {
        let k = q_sqrt2();
        let s = FieldElem::generator(&k);
        assert_eq!(s.compare_embedded(&FieldElem::one(&k)).unwrap(), Ordering::Greater);
        assert_eq!(s.compare_embedded(&s).unwrap(), Ordering::Equal);
        let two_s = s.scale(&rat(2, 1));
        assert_eq!(two_s.compare_embedded(&FieldElem::from_int(&k, 3)).unwrap(), Ordering::Less);
        let other = NumberField::real_quadratic(3).unwrap();
        assert_eq!(
            s.compare_embedded(&FieldElem::one(&other)),
            Err(Error::FieldMismatch)
        );
    }

    #[test]
    fn minimal_polynomial_examples() {
        let k = q_sqrt2();
        assert_eq!(FieldElem::from_int(&k, 3).minimal_polynomial(), Poly::from_ints([-3, 1]));
        let two_s = FieldElem::generator(&k).scale(&rat(2, 1));
        assert_eq!(two_s.minimal_polynomial(), Poly::from_ints([-8, 0, 1]));
        let one_plus = &FieldElem::one(&k) + &FieldElem::generator(&k);
        assert_eq!(one_plus.minimal_polynomial(), Poly::from_ints([-1, -2, 1]));
    }

    #[test]
    fn sqrt_examples() {
        let k = q_sqrt2();
        assert_eq!(FieldElem::from_int(&k, 2).sqrt().unwrap(), Some(FieldElem::generator(&k)));
        assert_eq!(FieldElem::from_int(&k, 3).sqrt().unwrap(), None);
        assert_eq!(FieldElem::zero(&k).sqrt().unwrap(), Some(FieldElem::zero(&k)));
        assert!(matches!(FieldElem::from_int(&k, -1).sqrt(), Err(Error::Domain(_))));
        // (1 + sqrt2)^2 = 3 + 2 sqrt2
        let t = FieldElem::new(&k, vec![rat(3, 1), rat(2, 1)]).unwrap();
        let r = t.sqrt().unwrap().unwrap();
        assert_eq!(r, FieldElem::new(&k, vec![rat(1, 1), rat(1, 1)]).unwrap());
        // (1 - sqrt2)^2 = 3 - 2 sqrt2, root must be the positive sqrt2 - 1
        let t = FieldElem::new(&k, vec![rat(3, 1), rat(-2, 1)]).unwrap();
        let r = t.sqrt().unwrap().unwrap();
        assert_eq!(r, FieldElem::new(&k, vec![rat(-1, 1), rat(1, 1)]).unwrap());
    }

    #[test]
    fn sqrt_in_cubic_field() {
        let k = NumberField::new(&[(-1).into(), 3.into(), 0.into(), 1.into()], rat(0, 1), rat(1, 1))
            .unwrap();
        let a = FieldElem::generator(&k);
        let x = &(&a * &a) + &FieldElem::from_int(&k, 2); // positive
        let sq = &x * &x;
        assert_eq!(sq.sqrt().unwrap(), Some(x.clone()));
        // 1/rho = rho^2 + 3 is not a square in the field
        let inv = a.inv().unwrap();
        assert_eq!(inv, &(&a * &a) + &FieldElem::from_int(&k, 3));
        assert_eq!(inv.sqrt().unwrap(), None);
    }

    #[test]
    fn rational_field() {
        let q = NumberField::rationals();
        let x = FieldElem::from_rat(&q, rat(9, 4));
        assert_eq!(x.sqrt().unwrap(), Some(FieldElem::from_rat(&q, rat(3, 2))));
        assert_eq!(FieldElem::from_int(&q, 8).sqrt().unwrap(), None);
        assert_eq!(x.minimal_polynomial(), Poly::new(vec![rat(-9, 4), rat(1, 1)]));
    }

    #[test]
    fn rejects_bad_fields() {
        // x^2 - 4 has rational roots
        assert!(NumberField::new(&[(-4).into(), 0.into(), 1.into()], rat(1, 1), rat(3, 1)).is_err());
        // x^4 + 1 is irreducible but has no real root
        assert!(NumberField::new(&[1.into(), 0.into(), 0.into(), 0.into(), 1.into()], rat(0, 1), rat(2, 1)).is_err());
        // (x^2 - 2)(x^2 - 3) has no rational root but factors
        let f: Vec<Int> = [6, 0, -5, 0, 1].iter().map(|&c| Int::from(c)).collect();
        let err = NumberField::new(&f, rat(1, 1), rat(3, 2)).unwrap_err();
        assert!(matches!(err, Error::InvalidField(ref m) if m.contains("factor")), "{err:?}");
        // x^4 - 10x^2 + 1 (minimal polynomial of sqrt2 + sqrt3) is irreducible
        let g: Vec<Int> = [1, 0, -10, 0, 1].iter().map(|&c| Int::from(c)).collect();
        assert!(NumberField::new(&g, rat(3, 1), rat(4, 1)).is_ok());
        // interval with two roots
        assert!(NumberField::new(&[(-2).into(), 0.into(), 1.into()], rat(-2, 1), rat(2, 1)).is_err());
    }

    #[test]
    fn inverse_and_norm() {
        let k = q_sqrt2();
        let x = FieldElem::new(&k, vec![rat(1, 1), rat(1, 1)]).unwrap();
        assert_eq!(&x * &x.inv().unwrap(), FieldElem::one(&k));
        assert_eq!(x.norm(), rat(-1, 1));
        assert_eq!(x.trace(), rat(2, 1));
        assert_eq!(x.to_string(), "a + 1");
    }
}
