//! Multiplier rings `Scal_M(E)`, the modules `Scal_M(R)` and scale cosets.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::linalg::{kernel, rational_combination};
use crate::exact::normal_form::{column_echelon, lattice_coords, saturation, unimodular_inverse};
use crate::exact::{FieldElem, FieldMatrix, Int, IntMatrix, Matrix, Poly, Rat, RatMatrix};
use crate::gram::GramModule;
use crate::maps::SimilarityMap;
use crate::scale::ScaleValue;

/// Z-basis of all integral `B` with `Gamma B = beta * target`, `beta` in the field,
/// with the matching scalars. `first`, when given, is moved to the front of the basis.
fn integral_line(
    m: &GramModule,
    target: &FieldMatrix,
    first: Option<&IntMatrix>,
) -> Vec<(IntMatrix, FieldElem)> {
    let k = m.rank();
    let field = m.field();
    let deg = field.degree();
    let gram = m.gram();
    let theta_pows: Vec<FieldElem> =
        (0..deg).map(|u| FieldElem::generator(field).pow(u as u32)).collect();
    let unknowns = k * k + deg;
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let beta_terms: Vec<FieldElem> =
                theta_pows.iter().map(|p| p * target.get(i, j)).collect();
            for t in 0..deg {
                let mut row = vec![Rat::from_integer(0.into()); unknowns];
                for l in 0..k {
                    row[l * k + j] = gram.get(i, l).coords()[t].clone();
                }
                for (u, term) in beta_terms.iter().enumerate() {
                    row[k * k + u] = -term.coords()[t].clone();
                }
                rows.push(row);
            }
        }
    }
    let sys = Matrix::from_rows(rows).expect("rectangular");
    let ker = kernel(&sys);
    if ker.is_empty() {
        return vec![];
    }
    // the B-part determines beta, so project and saturate
    let proj = RatMatrix::from_fn(k * k, ker.len(), |r, c| ker[c][r].clone());
    let (ints, _) = proj.clear_denominators();
    let mut lat = saturation(&ints);
    if let Some(a) = first {
        lat = put_first(&lat, a.entries());
    }
    let (ti, tj) = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .find(|&(i, j)| !target.get(i, j).is_zero())
        .expect("target is nonzero");
    (0..lat.cols())
        .map(|c| {
            let b = Matrix::new(k, k, lat.col(c)).expect("k x k");
            let bf = FieldMatrix::from_rat(field, &b.to_rat());
            let beta = gram.mul(&bf).get(ti, tj) / target.get(ti, tj);
            (b, beta)
        })
        .collect()
}

/// Rebases the lattice spanned by the columns of `lat` so that the primitive
/// vector `v` becomes the first basis vector.
fn put_first(lat: &IntMatrix, v: &[Int]) -> IntMatrix {
    let Some(c) = lattice_coords(lat, v) else {
        return lat.clone();
    };
    let row = Matrix::new(1, c.len(), c).expect("row");
    let e = column_echelon(&row);
    // c^T U = (g, 0, ..., 0); with g = 1 the first column of U^{-T} is c
    if e.h.get(0, 0) != &Int::from(1) {
        return lat.clone();
    }
    let w = unimodular_inverse(&e.u.transpose()).expect("unimodular");
    lat.mul(&w)
}

/// `Scal_M(E)`: all real `alpha` with `alpha M` contained in `M`.
#[derive(Clone, Debug)]
pub struct MultiplierRing {
    module: Arc<GramModule>,
    basis: Vec<(IntMatrix, FieldElem)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingChecks {
    pub contains_identity: bool,
    pub closed: bool,
    pub algebraic_integers: bool,
    pub rank_divides_k: bool,
    pub rank_within_bound: bool,
}

impl RingChecks {
    pub fn all(&self) -> bool {
        self.contains_identity
            && self.closed
            && self.algebraic_integers
            && self.rank_divides_k
            && self.rank_within_bound
    }
}

/// Solves `Gamma A = alpha Gamma` for `(A, alpha)` and saturates to a Z-basis.
pub fn multiplier_ring(m: &Arc<GramModule>) -> MultiplierRing {
    let id = IntMatrix::identity(m.rank());
    let basis = integral_line(m, m.gram(), Some(&id));
    MultiplierRing { module: m.clone(), basis }
}

fn vectorize(ms: &[IntMatrix]) -> IntMatrix {
    let n = ms.first().map_or(0, |m| m.rows() * m.cols());
    IntMatrix::from_fn(n, ms.len(), |r, c| ms[c].entries()[r].clone())
}

/// Exact data of a scale value's minimal polynomial against the degree bound `k(k-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeReport {
    pub min_poly: Poly,
    pub degree: usize,
    pub monic_integral: bool,
    pub within_bound: bool,
}

pub fn degree_check(x: &ScaleValue, k: usize) -> DegreeReport {
    let p = x.minimal_polynomial();
    let degree = p.degree().unwrap_or(0);
    DegreeReport {
        monic_integral: p.is_monic() && p.has_integer_coeffs(),
        within_bound: degree <= k * k.saturating_sub(1) || degree <= 1,
        degree,
        min_poly: p,
    }
}

/// Class of a scale value modulo `scal_M(E)`.
#[derive(Clone, Debug)]
pub struct ScalCoset {
    pub representative: ScaleValue,
}

/// `Scal_M(R)` as a free Z-module: integral `B` with `W B = beta sqrt(s) R W`.
#[derive(Clone, Debug)]
pub struct ScalModule {
    pub basis: Vec<(IntMatrix, ScaleValue)>,
    lattice: IntMatrix,
}

impl ScalModule {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains_matrix(&self, b: &IntMatrix) -> bool {
        lattice_coords(&self.lattice, b.entries()).is_some()
    }

    /// Every product of a ring basis element with a basis element stays inside.
    pub fn is_stable_under(&self, ring: &MultiplierRing) -> bool {
        ring.basis.iter().all(|(a, _)| self.basis.iter().all(|(b, _)| self.contains_matrix(&a.mul(b))))
    }

    /// A basis element `g` with `Scal(R) = g Scal(E)`, if one exists.
    pub fn single_generator(&self, ring: &MultiplierRing) -> Option<ScaleValue> {
        if self.rank() != ring.rank() {
            return None;
        }
        let target = gram_det(&self.lattice);
        self.basis.iter().find_map(|(b, beta)| {
            let prods: Vec<IntMatrix> = ring.basis.iter().map(|(a, _)| a.mul(b)).collect();
            let span = vectorize(&prods);
            let inside = (0..span.cols()).all(|c| lattice_coords(&self.lattice, &span.col(c)).is_some());
            (inside && gram_det(&span) == target).then(|| beta.clone())
        })
    }
}

/// Squared covolume `det(B^T B)` of the column lattice of `b`.
fn gram_det(b: &IntMatrix) -> Int {
    b.transpose().mul(b).det()
}

impl MultiplierRing {
    pub fn module(&self) -> &Arc<GramModule> {
        &self.module
    }

    pub fn basis(&self) -> &[(IntMatrix, FieldElem)] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn scalars(&self) -> Vec<FieldElem> {
        self.basis.iter().map(|b| b.1.clone()).collect()
    }

    fn lattice(&self) -> IntMatrix {
        vectorize(&self.basis.iter().map(|b| b.0.clone()).collect::<Vec<_>>())
    }

    pub fn checks(&self) -> RingChecks {
        let k = self.module.rank();
        let d = self.module.ambient_dimension();
        let lat = self.lattice();
        let id = IntMatrix::identity(k);
        let contains_identity = lattice_coords(&lat, id.entries()).is_some();
        let closed = self.basis.iter().all(|(a, _)| {
            self.basis.iter().all(|(b, _)| lattice_coords(&lat, a.mul(b).entries()).is_some())
        });
        let algebraic_integers = self.basis.iter().all(|(_, x)| x.is_algebraic_integer());
        let r = self.rank();
        RingChecks {
            contains_identity,
            closed,
            algebraic_integers,
            rank_divides_k: r > 0 && k.is_multiple_of(r),
            rank_within_bound: r <= k / d,
        }
    }

    /// Membership in the fraction field `scal_M(E)`, which is the rational span
    /// of the ring.
    pub fn in_scal_field(&self, x: &ScaleValue) -> bool {
        let Some(c) = x.as_field_elem() else {
            return false;
        };
        if c.field() != self.module.field() {
            return false;
        }
        let cols: Vec<Vec<Rat>> = self.basis.iter().map(|b| b.1.coords().to_vec()).collect();
        rational_combination(&cols, c.coords()).is_some()
    }

    fn check_module(&self, f: &SimilarityMap) -> Result<()> {
        if Arc::ptr_eq(f.module(), &self.module) || **f.module() == *self.module {
            Ok(())
        } else {
            Err(Error::ModuleMismatch)
        }
    }

    pub fn coset_of(&self, f: &SimilarityMap) -> Result<ScalCoset> {
        self.check_module(f)?;
        Ok(ScalCoset { representative: f.alpha() })
    }

    pub fn unit_coset(&self) -> ScalCoset {
        ScalCoset { representative: ScaleValue::from_int(self.module.field(), 1) }
    }

    pub fn coset_mul(&self, a: &ScalCoset, b: &ScalCoset) -> Result<ScalCoset> {
        Ok(ScalCoset { representative: a.representative.mul(&b.representative)? })
    }

    pub fn coset_eq(&self, a: &ScalCoset, b: &ScalCoset) -> bool {
        match a.representative.div(&b.representative) {
            Ok(r) => self.in_scal_field(&r),
            Err(_) => false,
        }
    }

    pub fn is_unit(&self, c: &ScalCoset) -> bool {
        self.coset_eq(c, &self.unit_coset())
    }

    /// The coset of `f` is trivial, i.e. `f` lies in the kernel of the scale
    /// homomorphism.
    pub fn phi_kernel_test(&self, f: &SimilarityMap) -> Result<bool> {
        Ok(self.is_unit(&self.coset_of(f)?))
    }

    pub fn scal_module_of_map(&self, f: &SimilarityMap) -> Result<ScalModule> {
        self.check_module(f)?;
        let m = &self.module;
        let af = FieldMatrix::from_rat(m.field(), &f.matrix().to_rat());
        let target = m.gram().mul(&af);
        let line = integral_line(m, &target, Some(f.matrix()));
        let lattice = vectorize(&line.iter().map(|b| b.0.clone()).collect::<Vec<_>>());
        let basis = line
            .into_iter()
            .map(|(b, beta)| {
                let v = ScaleValue::new(beta, f.scale_squared().clone()).expect("positive scale");
                (b, v)
            })
            .collect();
        Ok(ScalModule { basis, lattice })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclotomic_module, multiplication_map, standard_lattice, xi8_index4_submodule};
    use crate::exact::rat;
    use crate::maps::make_similarity;

    #[test]
    fn lattice_ring_is_z() {
        let sq = Arc::new(standard_lattice("square").unwrap());
        let r = multiplier_ring(&sq);
        assert_eq!(r.rank(), 1);
        assert_eq!(r.basis()[0].0, IntMatrix::identity(2));
        assert!(r.checks().all());
        let q = sq.field().clone();
        assert!(r.in_scal_field(&ScaleValue::from_elem(FieldElem::from_rat(&q, rat(7, 3)))));
        assert!(!r.in_scal_field(&ScaleValue::sqrt_of(&FieldElem::from_int(&q, 2)).unwrap()));
    }

    #[test]
    fn xi8_submodule_ring() {
        let m = Arc::new(xi8_index4_submodule().unwrap());
        let r = multiplier_ring(&m);
        assert_eq!(r.rank(), 2);
        assert!(r.checks().all());
        let polys: Vec<Poly> = r.scalars().iter().map(|x| x.minimal_polynomial()).collect();
        assert!(polys.contains(&Poly::from_ints([-8, 0, 1])), "{polys:?}");
        let k = m.field().clone();
        let x = &FieldElem::generator(&k).scale(&rat(2, 1)) + &FieldElem::one(&k);
        assert!(r.in_scal_field(&ScaleValue::from_elem(x)));
    }

    #[test]
    fn scal_modules() {
        let sq = Arc::new(standard_lattice("square").unwrap());
        let ring = multiplier_ring(&sq);
        let r45 = make_similarity(&sq, &RatMatrix::from_i64(&[vec![1, -1], vec![1, 1]])).unwrap();
        let s = ring.scal_module_of_map(&r45).unwrap();
        assert_eq!(s.rank(), 1);
        assert_eq!(s.basis[0].1.to_string(), "sqrt(2)");
        assert!(!ring.phi_kernel_test(&r45).unwrap());
        let c = ring.coset_of(&r45).unwrap();
        assert!(ring.is_unit(&ring.coset_mul(&c, &c).unwrap()));

        let m8 = Arc::new(cyclotomic_module(8).unwrap());
        let ring8 = multiplier_ring(&m8);
        assert_eq!(ring8.rank(), 2);
        let xi = multiplication_map(&m8, &[0, 1]).unwrap();
        assert!(xi.is_symmetry());
        let s8 = ring8.scal_module_of_map(&xi).unwrap();
        assert_eq!(s8.rank(), 2);
        assert!(s8.is_stable_under(&ring8));
        assert!(s8.single_generator(&ring8).is_some());
    }
}
