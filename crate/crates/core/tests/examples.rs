use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use coinsite::catalog::*;
use coinsite::engine::{csl_square_root_witness, divisibility_report, intersect_csm, oracle_index, sigma, sum_index, ORACLE_CAP};
use coinsite::exact::{FieldElem, FieldMatrix, Matrix, NumberField, Poly, RatMatrix};
use coinsite::gram::{lattice_from_gram, GramModule};
use coinsite::maps::{make_coincidence, make_similarity};
use coinsite::rings::{degree_check, multiplier_ring};
use coinsite::scale::ScaleValue;
use coinsite::Error;

fn r(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn sigmas(name: &str, max: u64) -> BTreeSet<u64> {
    enumerate_coincidence(name, max)
        .unwrap()
        .iter()
        .map(|e| e.sigma.to_string().parse().unwrap())
        .collect()
}

#[test]
fn square_spectrum() {
    assert_eq!(sigmas("square", 1), BTreeSet::from([1]));
    let s = sigmas("square", 30);
    for x in [1, 5, 13, 17, 25, 29] {
        assert!(s.contains(&x), "missing {x}");
    }
    for x in [2, 3, 4, 7, 9] {
        assert!(!s.contains(&x), "unexpected {x}");
    }
}

#[test]
fn cubic_spectrum_is_odd() {
    let s = sigmas("cubic", 10);
    assert!(s.iter().all(|x| x % 2 == 1));
    assert!(s.contains(&3) && s.contains(&5) && s.contains(&7) && s.contains(&9));
}

#[test]
fn enumeration_is_deterministic() {
    let a = enumerate_coincidence("hexagonal", 40).unwrap();
    let b = enumerate_coincidence("hexagonal", 40).unwrap();
    let key = |v: &[CatalogEntry]| v.iter().map(|e| (e.label.clone(), e.map.matrix().clone())).collect::<Vec<_>>();
    assert_eq!(key(&a), key(&b));
    assert!(matches!(enumerate_coincidence("diamond", 5), Err(Error::UnknownName(_))));
}

#[test]
fn dedup_classes_differ_by_symmetries() {
    let entries = enumerate_coincidence("square", 25).unwrap();
    let sq = entries[0].map.module().clone();
    let group = point_group(&sq);
    assert_eq!(group.len(), 8);
    for e in &entries {
        for g in &group {
            let t = make_coincidence(&sq, &e.map.matrix().mul(&g.to_rat())).unwrap();
            assert_eq!(intersect_csm(&t).h, e.csm.h);
        }
    }
}

#[test]
fn planar_examples() {
    let t = planar_unit_rotation(PlanarRing::Eisenstein, 3, 1).unwrap();
    assert_eq!(sigma(&t), BigInt::from(7));
    let csm = intersect_csm(&t);
    assert_eq!(oracle_index(&csm.h, ORACLE_CAP).unwrap(), BigInt::from(7));
    let w = csl_square_root_witness(&t).unwrap();
    assert_eq!(w.root.scale_squared().as_rational(), Some(r(7, 1)));
    assert!(matches!(planar_unit_rotation(PlanarRing::Gaussian, 1, 0), Err(Error::NotPrimitive(_))));
    assert!(matches!(planar_unit_rotation(PlanarRing::Gaussian, 2, 2), Err(Error::NotPrimitive(_))));
}

#[test]
fn quaternion_examples() {
    assert!(quaternion_rotation(1, 0, 0, 0).unwrap().is_identity());
    let t = quaternion_rotation(1, 1, 0, 0).unwrap();
    assert_eq!(t.matrix(), &RatMatrix::from_i64(&[vec![1, 0, 0], vec![0, 0, -1], vec![0, 1, 0]]));
    assert_eq!(sigma(&t), BigInt::from(1));
    let t = quaternion_rotation(1, 1, 1, 0).unwrap();
    assert_eq!(t.matrix().get(0, 0), &r(1, 3));
    assert_eq!(sigma(&t), BigInt::from(3));
    assert_eq!(sum_index(&t), BigInt::from(3));
    let rep = divisibility_report(&t.as_similarity()).unwrap();
    assert_eq!((rep.den.clone(), rep.den_inv.clone()), (BigInt::from(3), BigInt::from(3)));
    assert!(rep.all_passed());
    assert!(matches!(quaternion_matrix(0, 0, 0, 0), Err(Error::Domain(_))));
}

#[test]
fn cyclotomic_grams() {
    let m8 = cyclotomic_module(8).unwrap();
    let k = m8.field().clone();
    assert_eq!(m8.gram().get(0, 1), &FieldElem::generator(&k).scale(&r(1, 2)));
    assert_eq!(m8.ambient_dimension(), 2);
    let m12 = cyclotomic_module(12).unwrap();
    assert_eq!(m12.gram().get(0, 1), &FieldElem::generator(m12.field()).scale(&r(1, 2)));
    let m5 = cyclotomic_module(5).unwrap();
    let tau = FieldElem::generator(m5.field());
    assert_eq!(m5.gram().get(0, 1), &(&tau - &FieldElem::one(m5.field())).scale(&r(1, 2)));
    assert!(cyclotomic_module(7).is_err());
}

#[test]
fn multiplication_maps() {
    let m8 = Arc::new(cyclotomic_module(8).unwrap());
    let id = multiplication_map(&m8, &[1]).unwrap();
    assert!(id.scale_squared().is_one());
    let xi = multiplication_map(&m8, &[0, 1]).unwrap();
    assert!(xi.is_symmetry());
    let eta = Arc::new(eta_module().unwrap());
    let e = multiplication_map(&eta, &[0, 1]).unwrap();
    assert_eq!(e.matrix(), &coinsite::exact::IntMatrix::from_i64(&[vec![0, 0, 1], vec![1, 0, -3], vec![0, 1, 0]]));
    assert!(e.is_coincidence().is_none());
    assert!(!e.is_symmetry());
    let lat = Arc::new(standard_lattice("square").unwrap());
    assert!(multiplication_map(&lat, &[1]).is_err());
}

#[test]
fn eta_constants_are_validated() {
    let m = eta_module().unwrap();
    assert_eq!(m.rank(), 3);
    assert_eq!(m.gram().get(1, 1).minimal_polynomial().degree(), Some(3));
    let mut bad = ETA_GRAM;
    bad[2][2][0] = (10, 1);
    assert!(matches!(eta_module_from(&bad), Err(Error::CorruptedCatalog(_))));
    let ring = multiplier_ring(&Arc::new(m));
    assert_eq!(ring.rank(), 1);
}

#[test]
fn real_quadratic_module_similarity() {
    // Z[sqrt 2] in R with Gamma = [[1, sqrt 2], [sqrt 2, 2]]
    let k = NumberField::real_quadratic(2).unwrap();
    let s = FieldElem::generator(&k);
    let gram: FieldMatrix = Matrix::from_rows(vec![
        vec![FieldElem::one(&k), s.clone()],
        vec![s.clone(), FieldElem::from_int(&k, 2)],
    ])
    .unwrap();
    let m = Arc::new(GramModule::from_gram(&k, gram).unwrap());
    assert_eq!(m.rank(), 2);
    assert_eq!(m.ambient_dimension(), 1);
    let f = make_similarity(&m, &RatMatrix::from_i64(&[vec![0, 2], vec![1, 0]])).unwrap();
    assert_eq!(f.scale_squared(), &FieldElem::from_int(&k, 2));
    let ring = multiplier_ring(&m);
    assert_eq!(ring.rank(), 2);
    assert!(ring.in_scal_field(&ScaleValue::from_elem(&s + &FieldElem::one(&k))));
}

#[test]
fn degree_examples() {
    let q = NumberField::rationals();
    let five = degree_check(&ScaleValue::from_int(&q, 5), 2);
    assert_eq!((five.degree, five.min_poly.clone()), (1, Poly::from_ints([-5, 1])));
    let r2 = degree_check(&ScaleValue::sqrt_of(&FieldElem::from_int(&q, 2)).unwrap(), 2);
    assert!(r2.degree == 2 && r2.within_bound && r2.monic_integral);
}

#[test]
fn gram_validation() {
    assert!(lattice_from_gram(&RatMatrix::from_i64(&[vec![1, 2], vec![2, 1]])).is_err());
    assert!(lattice_from_gram(&RatMatrix::from_i64(&[vec![1, 0], vec![1, 1]])).is_err());
    let sq = Arc::new(standard_lattice("square").unwrap());
    assert!(matches!(make_coincidence(&sq, &RatMatrix::from_i64(&[vec![1, 1], vec![0, 1]])), Err(Error::NotIsometry)));
    assert!(matches!(make_coincidence(&sq, &RatMatrix::identity(3)), Err(Error::Dimension(_))));
}

#[test]
fn xi8_index() {
    assert_eq!(index_in_z_xi8(&xi8_index4_generators().unwrap()).unwrap(), BigInt::from(4));
    assert_eq!(xi8_index4_submodule().unwrap().ambient_dimension(), 2);
}
