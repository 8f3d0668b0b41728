//! Coincidence site modules, coincidence indices and the divisibility relations
//! between indices and denominators.

use std::collections::HashSet;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::catalog::{eisenstein_matrix, gaussian_matrix, PlanarRing};
use crate::error::{Error, Result};
use crate::exact::normal_form::{lattice_basis, lattice_coords, snf};
use crate::exact::{Int, IntMatrix, Rat, RatMatrix};
use crate::gram::GramModule;
use crate::maps::{make_similarity, CoincidenceMap, SimilarityMap};

/// Default bound on the number of cosets the breadth-first oracle will visit.
pub const ORACLE_CAP: u64 = 1_000_000;

/// Full-rank submodule of `Z^k`, stored by its Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Submodule {
    pub h: IntMatrix,
    pub index: Int,
}

impl Submodule {
    pub fn from_generators(gens: &IntMatrix) -> Result<Submodule> {
        let h = lattice_basis(gens);
        if h.cols() != gens.rows() {
            return Err(Error::RankDeficient);
        }
        let index = h.det().abs();
        Ok(Submodule { h, index })
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        lattice_coords(&self.h, v).is_some()
    }
}

/// `Z^k` intersected with `T Z^k`.
///
/// With `T^{-1} = N / q`, a vector `x` lies in the intersection iff
/// `N x = 0 (mod q)`. If `U N V = D`, then `x = V y` with
/// `d_i y_i = 0 (mod q)`, i.e. `y_i` a multiple of `q / gcd(d_i, q)`.
pub fn intersect_csm(t: &CoincidenceMap) -> Submodule {
    let tm = t.matrix();
    let k = tm.rows();
    let p = tm.inverse().expect("coincidence maps are invertible");
    let (n, q) = p.clear_denominators();
    let s = snf(&n);
    let diag = s.diagonal();
    let steps = IntMatrix::from_fn(k, k, |i, j| {
        if i == j {
            &q / diag[i].gcd(&q)
        } else {
            Int::zero()
        }
    });
    let h = lattice_basis(&s.v.mul(&steps));
    debug_assert_eq!(h, dual_route(tm), "intersection routes disagree");
    let index = h.det().abs();
    Submodule { h, index }
}

/// The intersection computed as the dual of `Z^k + T^{-T} Z^k`.
fn dual_route(t: &RatMatrix) -> IntMatrix {
    let k = t.rows();
    let tit = t.inverse().expect("invertible").transpose();
    let (n, q) = tit.clear_denominators();
    let scaled_id = IntMatrix::identity(k).map(|x| x * &q);
    let b = lattice_basis(&scaled_id.hstack(&n));
    let dual = b.to_rat().inverse().expect("full rank").transpose().scale(&Rat::from_integer(q));
    lattice_basis(&dual.to_int().expect("dual of a superlattice of Z^k is integral"))
}

/// Coincidence index `[Z^k : Z^k cap T Z^k]`.
pub fn sigma(t: &CoincidenceMap) -> Int {
    intersect_csm(t).index
}

/// `[Z^k + T Z^k : Z^k]`, computed from the Hermite basis of `q (Z^k + T Z^k)`.
pub fn sum_index(t: &CoincidenceMap) -> Int {
    let (n, q) = t.matrix().clear_denominators();
    let k = n.rows();
    let scaled_id = IntMatrix::identity(k).map(|x| x * &q);
    let h = lattice_basis(&scaled_id.hstack(&n));
    num_traits::pow(q, k) / h.det().abs()
}

/// Counts the cosets of `h Z^k` in `Z^k` by breadth-first search over unit steps.
///
/// Cosets are keyed by `adj(h) x mod det(h)`, which is independent of any
/// normal form computation.
pub fn oracle_index(h: &IntMatrix, cap: u64) -> Result<Int> {
    if !h.is_square() {
        return Err(Error::Dimension("square matrix required".into()));
    }
    let det = h.det().abs();
    if det.is_zero() {
        return Err(Error::RankDeficient);
    }
    if det > Int::from(cap) {
        return Err(Error::OracleCap { index: det, cap });
    }
    let k = h.rows();
    let modulus = det.to_i64().expect("bounded by the cap");
    // D * h^{-1} is integral with D = |det h|
    let inv = h.to_rat().inverse().expect("nonsingular");
    let steps: Vec<Vec<i64>> = (0..k)
        .map(|j| {
            (0..k)
                .map(|i| {
                    let v = (inv.get(i, j) * Rat::from_integer(det.clone())).to_integer();
                    v.mod_floor(&det).to_i64().unwrap()
                })
                .collect()
        })
        .collect();
    let start = vec![0i64; k];
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for step in &steps {
            let next: Vec<i64> = x.iter().zip(step).map(|(a, b)| (a + b) % modulus).collect();
            if seen.insert(next.clone()) {
                if seen.len() as u64 > cap {
                    return Err(Error::OracleCap { index: det, cap });
                }
                queue.push_back(next);
            }
        }
    }
    Ok(Int::from(seen.len()))
}

/// Index of `a (Z^k + T Z^k)` in `Z^k cap T Z^k`, when the former is contained
/// in the latter. Expected to equal `a^k / Sigma^2`.
pub fn chain_index(t: &CoincidenceMap, a: &Int) -> Option<Int> {
    let csm = intersect_csm(t);
    let (n, q) = t.matrix().clear_denominators();
    let k = n.rows();
    let scaled_id = IntMatrix::identity(k).map(|x| x * &q);
    let sum_q = lattice_basis(&scaled_id.hstack(&n));
    let scaled = sum_q.to_rat().scale(&Rat::new(a.clone(), q)).to_int()?;
    for j in 0..k {
        if !csm.contains(&scaled.col(j)) {
            return None;
        }
    }
    Some(scaled.det().abs() / csm.index)
}

/// Named divisibility relations between `den(R)`, `den(R^{-1})` and `Sigma(R)`
/// of a lattice coincidence isometry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityReport {
    pub dim: usize,
    pub den: Int,
    pub den_inv: Int,
    pub sigma: Int,
    /// `den(R^2)`, used for the multiplicativity relation with `S = R`.
    pub den_square: Int,
    pub checks: Vec<(&'static str, bool)>,
}

fn divides(a: &Int, b: &Int) -> bool {
    !a.is_zero() && b.is_multiple_of(a)
}

impl DivisibilityReport {
    pub fn from_numbers(dim: usize, den: Int, den_inv: Int, sigma: Int, den_square: Int) -> Self {
        let d = dim as u32;
        let l = den.lcm(&den_inv);
        let g = den.gcd(&den_inv);
        let mut checks = vec![
            ("den_product_over_composite", divides(&den_square, &(&den * &den))),
            ("den_times_den_inverse", (&den * &den_inv).is_positive()),
            ("den_power_over_den_inverse", divides(&den_inv, &num_traits::pow(den.clone(), d as usize - 1))),
            ("lcm_divides_sigma", divides(&l, &sigma)),
            ("sigma_divides_gcd_power", divides(&sigma, &num_traits::pow(g, d as usize))),
            ("sigma_squared_divides_lcm_power", divides(&(&sigma * &sigma), &num_traits::pow(l, d as usize))),
        ];
        if dim == 2 {
            checks.push(("planar_sigma_equals_den", sigma == den));
        }
        DivisibilityReport { dim, den, den_inv, sigma, den_square, checks }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.1)
    }

    /// Recomputes every check from the stored numbers.
    pub fn is_consistent(&self) -> bool {
        let again = DivisibilityReport::from_numbers(
            self.dim,
            self.den.clone(),
            self.den_inv.clone(),
            self.sigma.clone(),
            self.den_square.clone(),
        );
        again.checks == self.checks
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.1).map(|c| c.0).collect()
    }
}

fn integer_den(f: &SimilarityMap) -> Result<Int> {
    f.denominator()?
        .as_integer()
        .ok_or_else(|| Error::Domain("denominator of a coincidence isometry is not an integer".into()))
}

pub fn divisibility_report(f: &SimilarityMap) -> Result<DivisibilityReport> {
    if !f.module().is_lattice() {
        return Err(Error::Unsupported("divisibility relations need a lattice".into()));
    }
    let t = f
        .is_coincidence()
        .ok_or_else(|| Error::Domain("not a coincidence isometry".into()))?;
    let den = integer_den(f)?;
    let den_inv = integer_den(&f.inverse())?;
    let den_square = integer_den(&f.compose(f)?)?;
    Ok(DivisibilityReport::from_numbers(
        f.module().ambient_dimension(),
        den,
        den_inv,
        sigma(&t),
        den_square,
    ))
}

/// Reduces the binary form `[[a, b], [b, c]]` to `0 <= 2b <= a <= c`, allowing
/// improper equivalence.
pub fn reduce_binary_form(a: &Rat, b: &Rat, c: &Rat) -> (Rat, Rat, Rat) {
    let (mut a, mut b, mut c) = (a.clone(), b.clone(), c.clone());
    let two = Rat::from_integer(2.into());
    loop {
        if a > c {
            std::mem::swap(&mut a, &mut c);
        }
        // second vector minus m times the first, m the nearest integer to b / a
        let m = (&b / &a + Rat::new(1.into(), 2.into())).floor();
        if !m.is_zero() {
            let nb = &b - &m * &a;
            c = &c - &two * &m * &b + &m * &m * &a;
            b = nb;
        }
        b = b.abs();
        if a <= c && &two * &b <= a {
            return (a, b, c);
        }
    }
}

/// For a planar lattice, decides whether a full-rank sublattice is similar to
/// the whole lattice; returns the factor `lambda` with reduced forms
/// proportional, `Gamma_sub = lambda Gamma`.
pub fn is_similar_sublattice_2d(m: &GramModule, sub: &Submodule) -> Result<Option<Rat>> {
    let g = match m.rational_gram() {
        Some(g) if m.is_lattice() && m.rank() == 2 => g,
        _ => return Err(Error::Unsupported("planar lattices only".into())),
    };
    let h = sub.h.to_rat();
    let gs = h.transpose().mul(g).mul(&h);
    let (a0, b0, c0) = reduce_binary_form(g.get(0, 0), g.get(0, 1), g.get(1, 1));
    let (a1, b1, c1) = reduce_binary_form(gs.get(0, 0), gs.get(0, 1), gs.get(1, 1));
    let lambda = &a1 / &a0;
    Ok((b1 == &lambda * &b0 && c1 == &lambda * &c0).then_some(lambda))
}

/// A similarity `S` whose square represents a given planar coincidence rotation,
/// up to a rotation symmetry of the lattice.
#[derive(Clone, Debug)]
pub struct SquareRootWitness {
    pub root: SimilarityMap,
    pub z: (i64, i64),
    /// `None` when `S^2 = R` exactly; otherwise the integral rotation `P` with
    /// `S^2 = R P`.
    pub symmetry: Option<IntMatrix>,
}

pub fn planar_ring_of(m: &GramModule) -> Option<PlanarRing> {
    let g = m.rational_gram()?;
    if g == &RatMatrix::identity(2) {
        Some(PlanarRing::Gaussian)
    } else if g == &RatMatrix::from_i64(&[vec![2, 1], vec![1, 2]]) {
        Some(PlanarRing::Eisenstein)
    } else {
        None
    }
}

/// Searches `z` with norm `Sigma(R)` such that multiplication by `z` squares to
/// `R` (possibly times a symmetry) and spans the coincidence site lattice.
pub fn csl_square_root_witness(t: &CoincidenceMap) -> Result<SquareRootWitness> {
    let m = t.module();
    let ring = planar_ring_of(m)
        .ok_or_else(|| Error::Unsupported("square or hexagonal lattice required".into()))?;
    if t.matrix().det() != Rat::one() {
        return Err(Error::Domain("a rotation is required".into()));
    }
    let csm = intersect_csm(t);
    let sig = csm.index.to_i64().ok_or_else(|| Error::WitnessNotFound("index too large".into()))?;
    let bound = ((2 * sig) as f64).sqrt() as i64 + 1;
    let sig_t = t.matrix().scale(&Rat::from_integer(sig.into()));
    let t_inv = t.matrix().inverse().expect("invertible");
    let mut fallback = None;
    for mm in -bound..=bound {
        for nn in -bound..=bound {
            if ring.norm(mm, nn) != sig {
                continue;
            }
            let s = match ring {
                PlanarRing::Gaussian => gaussian_matrix(mm, nn),
                PlanarRing::Eisenstein => eisenstein_matrix(mm, nn),
            };
            if lattice_basis(&s) != csm.h {
                continue;
            }
            let sq = s.mul(&s).to_rat();
            let root = make_similarity(m, &s.to_rat())?;
            if sq == sig_t {
                return Ok(SquareRootWitness { root, z: (mm, nn), symmetry: None });
            }
            if fallback.is_none() {
                let p = t_inv.mul(&sq).scale(&Rat::new(1.into(), sig.into()));
                if let Some(p) = p.to_int() {
                    fallback = Some(SquareRootWitness { root, z: (mm, nn), symmetry: Some(p) });
                }
            }
        }
    }
    fallback.ok_or_else(|| Error::WitnessNotFound(format!("no root of norm {sig}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::gram::lattice_from_gram;
    use crate::maps::make_coincidence;
    use std::sync::Arc;

    fn square() -> Arc<GramModule> {
        Arc::new(lattice_from_gram(&RatMatrix::identity(2)).unwrap())
    }

    #[test]
    fn gaussian_two_one() {
        let sq = square();
        let t = make_coincidence(&sq, &RatMatrix::from_i64(&[vec![3, -4], vec![4, 3]]).scale(&rat(1, 5)))
            .unwrap();
        let csm = intersect_csm(&t);
        assert_eq!(csm.index, Int::from(5));
        assert_eq!(sum_index(&t), Int::from(5));
        assert_eq!(oracle_index(&csm.h, ORACLE_CAP).unwrap(), Int::from(5));
        assert_eq!(sigma(&t.inverse()), Int::from(5));
        let r = divisibility_report(&t.as_similarity()).unwrap();
        assert_eq!((r.den.clone(), r.den_inv.clone(), r.sigma.clone()), (5.into(), 5.into(), 5.into()));
        assert!(r.all_passed() && r.is_consistent());
        assert_eq!(chain_index(&t, &Int::from(5)), Some(Int::from(1)));
        assert_eq!(is_similar_sublattice_2d(&sq, &csm).unwrap(), Some(rat(5, 1)));
        let w = csl_square_root_witness(&t).unwrap();
        assert_eq!(w.z.0 * w.z.0 + w.z.1 * w.z.1, 5);
        assert!(w.symmetry.is_none());
    }

    #[test]
    fn identity_and_sublattices() {
        let sq = square();
        let id = CoincidenceMap::identity(&sq);
        assert_eq!(intersect_csm(&id).h, IntMatrix::identity(2));
        assert_eq!(sum_index(&id), Int::one());
        let two = Submodule::from_generators(&IntMatrix::from_i64(&[vec![2, 0], vec![0, 2]])).unwrap();
        assert_eq!(is_similar_sublattice_2d(&sq, &two).unwrap(), Some(rat(4, 1)));
        let rect = Submodule::from_generators(&IntMatrix::from_i64(&[vec![2, 0], vec![0, 1]])).unwrap();
        assert_eq!(is_similar_sublattice_2d(&sq, &rect).unwrap(), None);
        let w = csl_square_root_witness(&id).unwrap();
        let r = w.root.matrix();
        assert_eq!(r.mul(r), IntMatrix::identity(2));
        assert!(w.symmetry.is_none());
    }

    #[test]
    fn oracle_basics() {
        assert_eq!(oracle_index(&IntMatrix::identity(3), 10).unwrap(), Int::one());
        assert_eq!(oracle_index(&IntMatrix::from_i64(&[vec![2, 0], vec![0, 3]]), 10).unwrap(), Int::from(6));
        let big = IntMatrix::from_i64(&[vec![100, 0], vec![0, 100]]);
        assert!(matches!(oracle_index(&big, 1000), Err(Error::OracleCap { .. })));
    }

    #[test]
    fn reduction() {
        let (a, b, c) = reduce_binary_form(&rat(5, 1), &rat(7, 1), &rat(10, 1));
        assert_eq!((a.clone(), b.clone(), c.clone()), (rat(1, 1), rat(0, 1), rat(1, 1)));
        let (a, b, c) = reduce_binary_form(&rat(2, 1), &rat(-1, 1), &rat(2, 1));
        assert_eq!((a, b, c), (rat(2, 1), rat(1, 1), rat(2, 1)));
    }
}
