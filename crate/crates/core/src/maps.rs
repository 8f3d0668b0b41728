//! Coincidence and similarity maps in module coordinates.
//!
//! A map is stored through its action on the generators: `W T = R W` for a
//! coincidence isometry `R`, and `W A = sqrt(s) R W` for a similarity with
//! primitive integral `A`.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::linalg::solve_linear_rational;
use crate::exact::{FieldElem, FieldMatrix, Int, IntMatrix, Rat, RatMatrix};
use crate::gram::GramModule;
use crate::scale::ScaleValue;

#[derive(Clone)]
pub struct CoincidenceMap {
    module: Arc<GramModule>,
    t: RatMatrix,
}

#[derive(Clone)]
pub struct SimilarityMap {
    module: Arc<GramModule>,
    a: IntMatrix,
    s: FieldElem,
}

fn same_module(a: &Arc<GramModule>, b: &Arc<GramModule>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::ModuleMismatch)
    }
}

/// `X^T Gamma Y` in the module's field.
fn gram_form(m: &GramModule, x: &RatMatrix, y: &RatMatrix) -> FieldMatrix {
    if let Some(g) = m.rational_gram() {
        let r = x.transpose().mul(g).mul(y);
        return FieldMatrix::from_rat(m.field(), &r);
    }
    let xf = FieldMatrix::from_rat(m.field(), x);
    let yf = FieldMatrix::from_rat(m.field(), y);
    xf.transpose().mul(m.gram()).mul(&yf)
}

pub fn make_coincidence(m: &Arc<GramModule>, t: &RatMatrix) -> Result<CoincidenceMap> {
    let k = m.rank();
    if t.rows() != k || t.cols() != k {
        return Err(Error::Dimension(format!("expected a {k}x{k} matrix")));
    }
    if t.det().is_zero() {
        return Err(Error::RankDeficient);
    }
    let ok = match m.rational_gram() {
        Some(g) => &t.transpose().mul(g).mul(t) == g,
        None => gram_form(m, t, t) == *m.gram(),
    };
    if !ok {
        return Err(Error::NotIsometry);
    }
    Ok(CoincidenceMap { module: m.clone(), t: t.clone() })
}

/// Primitive integral multiple of a nonzero rational matrix, and the factor used.
pub fn primitivize(a: &RatMatrix) -> (IntMatrix, Rat) {
    let (n, q) = a.clear_denominators();
    let content = n.content();
    let p = n.map(|x| x / &content);
    (p, Rat::new(q, content))
}

pub fn make_similarity(m: &Arc<GramModule>, a: &RatMatrix) -> Result<SimilarityMap> {
    let k = m.rank();
    if a.rows() != k || a.cols() != k {
        return Err(Error::Dimension(format!("expected a {k}x{k} matrix")));
    }
    if a.is_zero() {
        return Err(Error::NotSimilarity);
    }
    let (p, _) = primitivize(a);
    let pr = p.to_rat();
    let form = gram_form(m, &pr, &pr);
    // diagonal Gram entries are squared lengths, hence nonzero
    let s = form.get(0, 0).try_div(m.gram().get(0, 0))?;
    if !s.is_positive() {
        return Err(Error::NotSimilarity);
    }
    let scaled = m.gram().map(|g| g * &s);
    if form != scaled {
        return Err(Error::NotSimilarity);
    }
    Ok(SimilarityMap { module: m.clone(), a: p, s })
}

impl CoincidenceMap {
    pub fn module(&self) -> &Arc<GramModule> {
        &self.module
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.t
    }

    pub fn identity(m: &Arc<GramModule>) -> CoincidenceMap {
        CoincidenceMap { module: m.clone(), t: RatMatrix::identity(m.rank()) }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &CoincidenceMap) -> Result<CoincidenceMap> {
        same_module(&self.module, &other.module)?;
        Ok(CoincidenceMap { module: self.module.clone(), t: self.t.mul(&other.t) })
    }

    pub fn inverse(&self) -> CoincidenceMap {
        let t = self.t.inverse().expect("coincidence maps are invertible");
        CoincidenceMap { module: self.module.clone(), t }
    }

    /// Least common denominator of the entries; the lattice denominator.
    pub fn denominator_lcm(&self) -> Int {
        self.t.common_denominator()
    }

    pub fn as_similarity(&self) -> SimilarityMap {
        make_similarity(&self.module, &self.t).expect("an isometry is a similarity")
    }

    pub fn is_identity(&self) -> bool {
        self.t == RatMatrix::identity(self.t.rows())
    }
}

impl SimilarityMap {
    pub fn module(&self) -> &Arc<GramModule> {
        &self.module
    }

    /// Primitive integral representative `A`.
    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    /// `s` with `A^T Gamma A = s Gamma`.
    pub fn scale_squared(&self) -> &FieldElem {
        &self.s
    }

    /// `alpha = sqrt(s)`.
    pub fn alpha(&self) -> ScaleValue {
        ScaleValue::sqrt_of(&self.s).expect("scale is positive")
    }

    pub fn identity(m: &Arc<GramModule>) -> SimilarityMap {
        SimilarityMap {
            module: m.clone(),
            a: IntMatrix::identity(m.rank()),
            s: FieldElem::one(m.field()),
        }
    }

    pub fn compose(&self, other: &SimilarityMap) -> Result<SimilarityMap> {
        same_module(&self.module, &other.module)?;
        make_similarity(&self.module, &self.a.mul(&other.a).to_rat())
    }

    pub fn inverse(&self) -> SimilarityMap {
        let inv = self.a.to_rat().inverse().expect("similarities are invertible");
        make_similarity(&self.module, &inv).expect("inverse of a similarity")
    }

    pub fn pow(&self, e: u32) -> SimilarityMap {
        let mut acc = SimilarityMap::identity(&self.module);
        for _ in 0..e {
            acc = acc.compose(self).expect("same module");
        }
        acc
    }

    /// The isometry `R = A / sqrt(s)` as a coincidence map, when `R M` is
    /// commensurate with `M`.
    ///
    /// `W T = R W` with rational `T` is equivalent to `Gamma T = Gamma A / sqrt(s)`
    /// because `W^T` is injective, so the test is a rational-restricted solve.
    pub fn is_coincidence(&self) -> Option<CoincidenceMap> {
        let gamma = self.s.sqrt().ok().flatten()?;
        let m = &self.module;
        if let Some(g) = gamma.as_rational() {
            // Gamma has trivial rational kernel, so T = A / sqrt(s) is forced
            let t = self.a.to_rat().scale(&g.recip());
            return make_coincidence(m, &t).ok();
        }
        let ginv = gamma.inv()?;
        let af = FieldMatrix::from_rat(m.field(), &self.a.to_rat());
        let rhs = m.gram().mul(&af).map(|x| x * &ginv);
        let sol = solve_linear_rational(m.gram(), &rhs).ok().flatten()?;
        // Gamma has trivial rational kernel, so the solution is unique
        make_coincidence(m, &sol.particular).ok()
    }

    /// `R` maps `M` onto itself. For lattices this is `s = 1`; in general the
    /// coordinate matrix of `R` must be integral.
    pub fn is_symmetry(&self) -> bool {
        if self.s.is_one() {
            return true;
        }
        self.is_coincidence().is_some_and(|c| c.matrix().is_integral())
    }

    /// Lattice denominator `den(R) = sqrt(s)`, the least positive element of `Scal(R)`.
    pub fn denominator(&self) -> Result<ScaleValue> {
        if !self.module.is_lattice() {
            return Err(Error::Unsupported(
                "denominators are only defined here for lattices".into(),
            ));
        }
        Ok(self.alpha())
    }

    /// Orientation sign of `A`.
    pub fn is_proper(&self) -> bool {
        self.a.det().is_positive()
    }
}

impl fmt::Debug for CoincidenceMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoincidenceMap({})", self.t)
    }
}

impl fmt::Debug for SimilarityMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimilarityMap(A = {}, s = {})", self.a, self.s)
    }
}

impl PartialEq for CoincidenceMap {
    fn eq(&self, o: &Self) -> bool {
        self.t == o.t && *self.module == *o.module
    }
}

impl PartialEq for SimilarityMap {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.s == o.s && *self.module == *o.module
    }
}
