use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::field::{Field, PrimeField};
use crate::grmatrix::GradedMatrix;
use crate::linalg;
use crate::polyring::{monomials_of_degree, parse_poly, Monomial, MultiPoly};

fn f() -> PrimeField {
    PrimeField::default()
}

fn koszul_u() -> GradedMatrix<PrimeField> {
    GradedMatrix::parse(&f(), vec![0], vec![1; 4], &[&["X", "Y", "Z", "T"]]).unwrap()
}

fn koszul_v() -> GradedMatrix<PrimeField> {
    GradedMatrix::parse(
        &f(),
        vec![1; 4],
        vec![2; 6],
        &[
            &["Y", "Z", "T", "0", "0", "0"],
            &["-X", "0", "0", "Z", "T", "0"],
            &["0", "-X", "0", "-Y", "0", "T"],
            &["0", "0", "-X", "0", "-Y", "-Z"],
        ],
    )
    .unwrap()
}

/// Dimension of the degree-`n` piece of the column module, by linear algebra
/// on all monomial multiples of the generators.
fn hf_oracle(m: &GradedMatrix<PrimeField>, n: i64) -> u64 {
    let space = DegreeSpace::new(m.row_degrees(), n);
    let mut rows = Vec::new();
    for j in 0..m.cols() {
        let d = n - m.col_degrees()[j];
        if d < 0 {
            continue;
        }
        for mono in monomials_of_degree(4, d as u32) {
            let mut row = vec![0u64; space.dim()];
            for i in 0..m.rows() {
                for (t, c) in m.entry(i, j).terms() {
                    row[space.index_of(ModTerm { mono: t.mul(mono), comp: i as u32 })] = *c;
                }
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return 0;
    }
    linalg::rank(&f(), rows) as u64
}

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn single_column_basis() {
    let m = GradedMatrix::parse(&f(), vec![0; 5], vec![1], &[&["X"], &["-Y"], &["0"], &["0"], &["0"]]).unwrap();
    let gb = groebner_basis(&m, None).unwrap();
    assert!(gb.is_complete());
    assert_eq!(gb.basis().len(), 1);
    assert_eq!(gb.minimal_generator_count().get(1), 1);
    for n in 0..6 {
        assert_eq!(gb.hilbert_function(n).unwrap(), hf_oracle(&m, n));
    }
}

#[test]
fn maximal_ideal() {
    let gb = groebner_basis(&koszul_u(), None).unwrap();
    assert_eq!(gb.minimal_generator_count().get(1), 4);
    assert_eq!(gb.minimal_generator_count().rank(), 4);
    assert_eq!(gb.hilbert_function(0).unwrap(), 0);
    assert_eq!(gb.hilbert_function(3).unwrap(), 20);
    // agrees with R outside degree 0
    assert_eq!(gb.hilbert_polynomial(None).unwrap(), HilbertPolynomial::free(0));
}

#[test]
fn koszul_image_is_kernel() {
    let v = koszul_v();
    let gb = groebner_basis(&v, None).unwrap();
    assert!(gb.is_complete());
    assert_eq!(gb.minimal_generator_count().get(2), 6);
    // the image of V is the kernel of U, of rank 3
    let hp = gb.hilbert_polynomial(None).unwrap();
    assert_eq!(hp.coeffs[3], BigRational::new(3.into(), 6.into()));
    for n in 0..8 {
        assert_eq!(gb.hilbert_function(n).unwrap(), hf_oracle(&v, n));
    }
    // X * e_2 + Y * e_1 is not in the image; the first column is
    let col = ModVec::from_column(&v, 0).unwrap();
    assert!(gb.contains(&col).unwrap());
    let w = GradedMatrix::parse(&f(), vec![1; 4], vec![2], &[&["Y"], &["X"], &["0"], &["0"]]).unwrap();
    assert!(!gb.contains(&ModVec::from_column(&w, 0).unwrap()).unwrap());
}

#[test]
fn free_module_hilbert_polynomials() {
    let r = GradedMatrix::parse(&f(), vec![0], vec![0], &[&["1"]]).unwrap();
    let gb = groebner_basis(&r, None).unwrap();
    assert_eq!(gb.hilbert_polynomial(None).unwrap(), HilbertPolynomial::free(0));
    let r2 = GradedMatrix::parse(&f(), vec![2], vec![2], &[&["1"]]).unwrap();
    let hp = groebner_basis(&r2, None).unwrap().hilbert_polynomial(None).unwrap();
    assert_eq!(hp, HilbertPolynomial::free(-2));
    assert_eq!(hp.eval(2), rational(1));
    assert_eq!(hp.eval(3), rational(4));
    assert_eq!(HilbertPolynomial::free(0).shifted(-2), hp);
}

#[test]
fn truncated_basis_reports_cap() {
    let m = GradedMatrix::parse(&f(), vec![0], vec![2, 2], &[&["X^2 + Y*Z", "Y^2 - X*T"]]).unwrap();
    let gb = groebner_basis(&m, Some(3)).unwrap();
    assert!(!gb.is_complete());
    assert!(gb.hilbert_function(3).is_ok());
    assert!(gb.hilbert_function(4).is_err());
    let full = groebner_basis(&m, None).unwrap();
    assert!(full.is_complete());
    // complete intersection of two quadrics: degree 4 curve
    let quot = HilbertPolynomial::free(0).sub(&full.hilbert_polynomial(None).unwrap());
    assert_eq!(quot.coeffs[1], rational(4));
    assert_eq!(quot.coeffs[3], rational(0));
}

#[test]
fn syzygies_of_koszul_maps() {
    let xy = GradedMatrix::parse(&f(), vec![0], vec![1, 1], &[&["X", "Y"]]).unwrap();
    let s = syzygies(&xy, 4).unwrap();
    assert_eq!(s.col_degrees(), &[2]);
    assert!(xy.compose(&s).unwrap().is_zero());

    let u = koszul_u();
    let s = syzygies(&u, 3).unwrap();
    assert_eq!(s.col_degrees(), &[2; 6]);
    assert!(u.compose(&s).unwrap().is_zero());
    // same module as the image of V
    let gb = groebner_basis(&koszul_v(), None).unwrap();
    for j in 0..s.cols() {
        assert!(gb.contains(&ModVec::from_column(&s, j).unwrap()).unwrap());
    }
    // second syzygies of V are the four Koszul relations in degree 3
    let s2 = syzygies(&koszul_v(), 4).unwrap();
    assert_eq!(s2.col_degrees(), &[3; 4]);
}

#[test]
fn projective_locus() {
    let p = |s: &str| parse_poly(&f(), s).unwrap();
    assert!(is_empty_projective_locus(&f(), &[p("X"), p("Y"), p("Z"), p("T")]).unwrap());
    assert!(!is_empty_projective_locus(&f(), &[p("X"), p("Y")]).unwrap());
    assert!(is_empty_projective_locus(&f(), &[p("X^2"), p("Y^3 + X*Y^2"), p("Z*T + X^2"), p("T^2 - Z^2")]).unwrap());
    assert!(!is_empty_projective_locus(&f(), &[p("X*Y"), p("Z*T"), p("X*Z")]).unwrap());
    assert!(!is_empty_projective_locus(&f(), &[]).unwrap());
    assert!(is_empty_projective_locus(&f(), &[p("5")]).unwrap());
}

fn random_module(seed: u64) -> GradedMatrix<PrimeField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = rng.gen_range(1..=3);
    let cols = rng.gen_range(1..=4);
    let row_degrees: Vec<i64> = (0..rows).map(|_| rng.gen_range(0..2)).collect();
    let col_degrees: Vec<i64> = (0..cols).map(|_| rng.gen_range(1..4)).collect();
    let mut entries = vec![vec![MultiPoly::zero(&f()); cols]; rows];
    for i in 0..rows {
        for j in 0..cols {
            let d = col_degrees[j] - row_degrees[i];
            if d < 0 || rng.gen_bool(0.3) {
                continue;
            }
            let mut terms: Vec<(Monomial, u64)> = Vec::new();
            for m in monomials_of_degree(4, d as u32) {
                if rng.gen_bool(0.4) {
                    terms.push((m, f().from_i64(rng.gen_range(-3..4))));
                }
            }
            entries[i][j] = MultiPoly::from_terms(&f(), terms);
        }
    }
    GradedMatrix::new(&f(), row_degrees, col_degrees, entries).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn hilbert_function_matches_linear_algebra(seed in any::<u64>()) {
        let m = random_module(seed);
        let gb = groebner_basis(&m, Some(6)).unwrap();
        for n in 0..=6 {
            prop_assert_eq!(gb.hilbert_function(n).unwrap(), hf_oracle(&m, n));
        }
    }

    #[test]
    fn generators_reduce_to_zero(seed in any::<u64>()) {
        let m = random_module(seed);
        let gb = groebner_basis(&m, Some(6)).unwrap();
        for j in 0..m.cols() {
            prop_assert!(gb.contains(&ModVec::from_column(&m, j).unwrap()).unwrap());
        }
        prop_assert!(gb.minimal_generator_count().rank() <= m.cols() as u64);
    }

    #[test]
    fn syzygies_compose_to_zero(seed in any::<u64>()) {
        let m = random_module(seed);
        let s = syzygies(&m, 5).unwrap();
        prop_assert!(m.compose(&s).unwrap().is_zero());
    }
}
