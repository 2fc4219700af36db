use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::error::Error;
use crate::field::{Field, PrimeField};
use crate::linalg;
use crate::polyring::{parse_poly, MultiPoly};

fn f() -> PrimeField {
    PrimeField::default()
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

#[test]
fn rejects_inhomogeneous_entries() {
    let bad = GradedMatrix::parse(&f(), vec![0], vec![1, 2], &[&["X", "Y"]]);
    assert!(matches!(bad, Err(Error::Inhomogeneous { row: 0, col: 1, expected: 2 })));
    let neg = GradedMatrix::parse(&f(), vec![2], vec![1], &[&["X"]]);
    assert!(matches!(neg, Err(Error::Inhomogeneous { .. })));
    // `a` carries degree 0
    assert!(GradedMatrix::parse(&f(), vec![1], vec![1], &[&["a"]]).is_ok());
    assert!(GradedMatrix::parse(&f(), vec![0], vec![1], &[&["a*X + Y"]]).is_ok());
}

#[test]
fn truncation_keeps_low_columns() {
    let m = GradedMatrix::parse(&f(), vec![0], vec![1, 2, 1], &[&["X", "Y^2", "Z"]]).unwrap();
    let t = m.truncate_columns(1);
    assert_eq!(t.col_degrees(), &[1, 1]);
    assert_eq!(t.entry(0, 1), &parse_poly(&f(), "Z").unwrap());
    assert_eq!(m.truncate_columns(0).cols(), 0);
    assert_eq!(t.row_degrees(), m.row_degrees());
}

#[test]
fn closed_point_kills_parameter() {
    let m = GradedMatrix::parse(&f(), vec![0, 0], vec![1, 1], &[&["a*X", "Y"], &["X", "0"]]).unwrap();
    let s = m.specialize_closed_point();
    assert!(s.entry(0, 0).is_zero());
    assert!(!s.has_parameter());
    assert_eq!(koszul_v().specialize_closed_point(), koszul_v());
}

#[test]
fn column_minors() {
    let m = GradedMatrix::parse(&f(), vec![0; 5], vec![1], &[&["X"], &["-Y"], &["0"], &["0"], &["0"]])
        .unwrap();
    let ms = m.minors(1, MinorSelection::All).unwrap();
    let want: Vec<_> = ["X", "-Y", "0", "0", "0"].iter().map(|s| parse_poly(&f(), s).unwrap()).collect();
    assert_eq!(ms, want);
    assert!(matches!(m.minors(2, MinorSelection::All), Err(Error::MinorSize { .. })));
}

#[test]
fn koszul_two_minors_match_direct_determinants() {
    let v = koszul_v();
    let idx = v.minor_indices(2, MinorSelection::All).unwrap();
    let ms = v.minors(2, MinorSelection::All).unwrap();
    assert_eq!(ms.len() as u64, binomial(4, 2) * binomial(6, 2));
    for ((r, c), m) in idx.iter().zip(&ms) {
        let e = |i: usize, j: usize| v.entry(r[i], c[j]).clone();
        let direct = e(0, 0).mul(&e(1, 1)).sub(&e(0, 1).mul(&e(1, 0)));
        assert_eq!(&direct, m);
    }
    assert!(ms.contains(&parse_poly(&f(), "X^2").unwrap()));
    assert!(ms.iter().any(|m| *m == parse_poly(&f(), "X*Y").unwrap() || *m == parse_poly(&f(), "-X*Y").unwrap()));
}

#[test]
fn random_minor_sample_is_deterministic() {
    let v = koszul_v();
    let sel = MinorSelection::Random { count: 10, seed: 7 };
    let a = v.minor_indices(3, sel).unwrap();
    assert_eq!(a, v.minor_indices(3, sel).unwrap());
    assert_eq!(a.len(), 10);
    let mut dedup = a.clone();
    dedup.sort();
    dedup.dedup();
    assert_eq!(dedup.len(), 10);
}

#[test]
fn ranks() {
    assert_eq!(koszul_v().rank_fraction_field(), 3);
    assert_eq!(koszul_v().rank_bareiss(), 3);
    assert_eq!(GradedMatrix::zero(&f(), vec![0; 3], vec![1; 2]).rank_fraction_field(), 0);
    let u = GradedMatrix::parse(&f(), vec![0], vec![1; 4], &[&["X", "Y", "Z", "T"]]).unwrap();
    assert_eq!(u.rank_fraction_field(), 1);
}

#[test]
fn rank_modulo_examples() {
    let x = parse_poly(&f(), "X").unwrap();
    let d = GradedMatrix::parse(&f(), vec![0, 0], vec![1, 1], &[&["X", "0"], &["0", "X"]]).unwrap();
    assert_eq!(d.rank_modulo_hypersurface(&x).unwrap(), 0);
    let u = GradedMatrix::parse(&f(), vec![0], vec![1; 4], &[&["X", "Y", "Z", "T"]]).unwrap();
    assert_eq!(u.rank_modulo_hypersurface(&x).unwrap(), 1);
    let t = GradedMatrix::parse(&f(), vec![0, 0], vec![1, 1], &[&["X", "Y"], &["0", "Z"]]).unwrap();
    let got = t.rank_modulo_hypersurface(&x).unwrap();
    // oracle: generic numeric rank on the plane X = 0
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let oracle = (0..5)
        .map(|_| {
            let mut p: [u64; 5] = std::array::from_fn(|_| f().random(&mut rng));
            p[0] = 0;
            linalg::rank(&f(), t.eval(&p))
        })
        .max()
        .unwrap();
    assert_eq!(got, oracle);
    assert_eq!(got, 1);
    assert!(matches!(t.rank_modulo_hypersurface(&parse_poly(&f(), "3").unwrap()), Err(Error::ConstantInput)));
}

#[test]
fn rank_modulo_reducible_takes_minimum() {
    // rank drops on X = 0 but not on Y = 0
    let m = GradedMatrix::parse(&f(), vec![0, 0], vec![1, 1], &[&["X", "0"], &["0", "Y + X"]]).unwrap();
    let f1 = parse_poly(&f(), "X*Y + Y^2").unwrap(); // Y (X + Y)
    assert_eq!(m.rank_modulo_hypersurface(&f1).unwrap(), 1);
    let f2 = parse_poly(&f(), "X*Y - Z^2").unwrap();
    assert_eq!(m.rank_modulo_hypersurface(&f2).unwrap(), 2);
    let f3 = parse_poly(&f(), "X^2 + X*Y").unwrap(); // X (X + Y)
    assert_eq!(m.rank_modulo_hypersurface(&f3).unwrap(), 1);
}

#[test]
fn block_decomposition() {
    let m = GradedMatrix::parse(
        &f(),
        vec![0, 0, 0],
        vec![1, 1, 1],
        &[&["X", "0", "0"], &["0", "0", "Y"], &["0", "0", "Z"]],
    )
    .unwrap();
    assert_eq!(m.blocks(), vec![(vec![0], vec![0]), (vec![1, 2], vec![2])]);
}

#[test]
fn compose_and_blocks() {
    let u = GradedMatrix::parse(&f(), vec![0], vec![1; 4], &[&["X", "Y", "Z", "T"]]).unwrap();
    let uv = u.compose(&koszul_v()).unwrap();
    assert!(uv.is_zero());
    assert_eq!(uv.col_degrees(), &[2; 6]);
}

#[test]
fn json_io() {
    let text = r#"{"field": {"kind": "prime", "characteristic": 32003},
        "row_degrees": [0], "col_degrees": [1, 1],
        "entries": [["X", "-a*Y"]]}"#;
    let file = MatrixFile::from_json(text).unwrap();
    let m = file.to_matrix(&f()).unwrap();
    assert_eq!(MatrixFile::from_matrix(&m).entries, vec![vec!["X".to_string(), "-Y*a".to_string()]]);
    let bad = r#"{"row_degrees": [0], "col_degrees": [1], "entries": [["X^2"]]}"#;
    assert!(MatrixFile::from_json(bad).unwrap().to_matrix(&f()).is_err());
}

fn max_nonzero_minor(m: &GradedMatrix<PrimeField>) -> usize {
    (1..=m.rows().min(m.cols()))
        .rev()
        .find(|&k| m.minors(k, MinorSelection::All).unwrap().iter().any(|p| !p.is_zero()))
        .unwrap_or(0)
}

/// Sparse random graded matrix whose entries are products of linear forms.
fn small_matrix(rows: usize, cols: usize, seed: u64, density: f64) -> GradedMatrix<PrimeField> {
    use rand::Rng;
    let field = f();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let row_degrees: Vec<i64> = (0..rows).map(|_| rng.gen_range(0..2)).collect();
    let col_degrees: Vec<i64> = (0..cols).map(|_| rng.gen_range(1..3)).collect();
    let lin = |rng: &mut ChaCha8Rng| {
        let terms = (0..4).map(|v| (crate::polyring::Monomial::var(v), f().from_i64(rng.gen_range(-2..3))));
        MultiPoly::from_terms(&f(), terms)
    };
    let mut entries = vec![vec![MultiPoly::zero(&field); cols]; rows];
    for i in 0..rows {
        for j in 0..cols {
            let d = col_degrees[j] - row_degrees[i];
            if d <= 0 || !rng.gen_bool(density) {
                continue;
            }
            let mut e = MultiPoly::one(&field);
            for _ in 0..d {
                e = e.mul(&lin(&mut rng));
            }
            entries[i][j] = e;
        }
    }
    GradedMatrix::new(&field, row_degrees, col_degrees, entries).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn rank_equals_largest_nonzero_minor(rows in 1usize..=5, cols in 1usize..=7, seed in any::<u64>(), density in 0.2f64..0.9) {
        let m = small_matrix(rows, cols, seed, density);
        let r = m.rank_fraction_field();
        prop_assert_eq!(r, max_nonzero_minor(&m));
        prop_assert_eq!(r, m.rank_bareiss());
    }

    #[test]
    fn rank_modulo_bounded_by_generic_rank(rows in 1usize..=3, cols in 1usize..=4, seed in any::<u64>()) {
        let m = small_matrix(rows, cols, seed, 0.7);
        let h = parse_poly(&f(), "X*Y - Z*T").unwrap();
        prop_assert!(m.rank_modulo_hypersurface(&h).unwrap() <= m.rank_fraction_field());
    }

    #[test]
    fn truncation_composes(n1 in 0i64..4, n2 in 0i64..4, seed in any::<u64>()) {
        let m = small_matrix(3, 5, seed, 0.6);
        prop_assert_eq!(m.truncate_columns(n1).truncate_columns(n2), m.truncate_columns(n1.min(n2)));
    }
}
