//! Koszul matrices, the block construction over the valuation ring, and
//! the worked examples with their expected invariants.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::grmatrix::{CharFunction, GradedMatrix};
use crate::modgb::syzygies;
use crate::polyring::{Monomial, MultiPoly, PARAM};
use crate::qprofile::B0;

/// Names accepted by [`example`].
pub const EXAMPLE_NAMES: [&str; 3] = ["3.2", "3.3", "3.4"];

/// The Koszul complex of `(X, Y, Z, T)`:
/// `R(-3)^4 -V'-> R(-2)^6 -V-> R(-1)^4 -U-> R`.
pub fn koszul_matrices<K: Field>(field: &K) -> (GradedMatrix<K>, GradedMatrix<K>, GradedMatrix<K>) {
    let u = GradedMatrix::parse(field, vec![0], vec![1; 4], &[&["X", "Y", "Z", "T"]]).expect("valid U");
    let v = GradedMatrix::parse(
        field,
        vec![1; 4],
        vec![2; 6],
        &[
            &["Y", "Z", "T", "0", "0", "0"],
            &["-X", "0", "0", "Z", "T", "0"],
            &["0", "-X", "0", "-Y", "0", "T"],
            &["0", "0", "-X", "0", "-Y", "-Z"],
        ],
    )
    .expect("valid V");
    let v2 = GradedMatrix::parse(
        field,
        vec![2; 6],
        vec![3; 4],
        &[
            &["0", "0", "-T", "Z"],
            &["0", "T", "0", "-Y"],
            &["0", "-Z", "Y", "0"],
            &["-T", "0", "0", "X"],
            &["Z", "0", "-X", "0"],
            &["-Y", "X", "0", "0"],
        ],
    )
    .expect("valid V'");
    (u, v, v2)
}

/// `s = [[sigma1, 0], [a I, sigma2]]`, where the identity has the size of
/// the columns of `sigma1`, which must match the rows of `sigma2` in degree.
pub fn block_dvr_matrix<K: Field>(sigma1: &GradedMatrix<K>, sigma2: &GradedMatrix<K>) -> Result<GradedMatrix<K>> {
    if sigma1.col_degrees() != sigma2.row_degrees() {
        return Err(Error::DegreeMismatch(format!(
            "columns of sigma1 have degrees {:?}, rows of sigma2 {:?}",
            sigma1.col_degrees(),
            sigma2.row_degrees()
        )));
    }
    let field = sigma1.field();
    let n = sigma1.cols();
    let a = MultiPoly::term(field, field.one(), Monomial::var(PARAM));
    let mut ident = vec![vec![MultiPoly::zero(field); n]; n];
    for (i, row) in ident.iter_mut().enumerate() {
        row[i] = a.clone();
    }
    let ident = GradedMatrix::new(field, sigma2.row_degrees().to_vec(), sigma1.col_degrees().to_vec(), ident)?;
    let zero = GradedMatrix::zero(field, sigma1.row_degrees().to_vec(), sigma2.col_degrees().to_vec());
    GradedMatrix::from_blocks(sigma1, &zero, &ident, sigma2)
}

/// The presentation `R(-1) + R(-2)^16 -> R^2` of a general module of length
/// 9 with Hilbert function (2, 7).
pub fn length_nine_sigma1<K: Field>(field: &K) -> GradedMatrix<K> {
    let mut cols = vec![1];
    cols.extend([2; 16]);
    let z = "0";
    GradedMatrix::parse(
        field,
        vec![0, 0],
        cols,
        &[
            &["X", "Y^2", "Z^2", "T^2", "Y*Z", "Y*T", "Z*T", z, z, z, z, z, z, z, z, z, z],
            &["-Y", z, z, z, z, z, z, "X^2", "Y^2", "Z^2", "T^2", "X*Y", "X*Z", "X*T", "Y*Z", "Y*T", "Z*T"],
        ],
    )
    .expect("valid sigma1")
}

/// Expected invariants of an example. `None` where nothing is asserted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    /// `(n, alpha_n, beta_n)`.
    pub alpha_beta: Vec<(i64, usize, usize)>,
    pub b0: B0,
    /// Values of `q` that are asserted; the full function when `q_complete`.
    pub q: CharFunction,
    pub q_complete: bool,
    pub h0: Option<i64>,
    pub d0: u64,
    pub g0: i64,
    /// Number and degree of the second syzygies, where recomputed.
    pub sigma2: Option<(usize, i64)>,
}

/// A named input matrix with the values it must reproduce.
#[derive(Clone, Debug)]
pub struct ExampleDescriptor<K: Field> {
    pub name: String,
    pub matrix: GradedMatrix<K>,
    pub expected: Expected,
    /// Column degrees of the lower right block.
    pub sigma2_degrees: Vec<i64>,
    /// Hypotheses that hold by construction rather than by certification.
    pub notes: Vec<String>,
}

/// Example `"3.2"`, `"3.3"` or `"3.4"`.
pub fn example<K: Field>(field: &K, name: &str) -> Result<ExampleDescriptor<K>> {
    example_with(field, name, false)
}

/// Like [`example`], with the first entry of `sigma1` replaced by zero when
/// `perturb` is set. Used as a negative control.
pub fn example_with<K: Field>(field: &K, name: &str, perturb: bool) -> Result<ExampleDescriptor<K>> {
    let (u, v, v2) = koszul_matrices(field);
    let by_construction = "L2 maps onto the sections of N by construction".to_string();
    let (sigma1, sigma2, expected, mut notes) = match name {
        "3.2" => (
            perturbed(&u, perturb)?,
            v,
            Expected {
                alpha_beta: vec![(1, 1, 1), (2, 4, 4)],
                b0: B0::Exact(0),
                q: CharFunction::from_pairs([(2, 3)]),
                q_complete: true,
                h0: Some(2),
                d0: 6,
                g0: 3,
                sigma2: None,
            },
            vec![by_construction],
        ),
        "3.3" => (
            perturbed(&v, perturb)?,
            v2,
            Expected {
                // the text prints the second pair as a_3, read as alpha_3
                alpha_beta: vec![(2, 3, 3), (3, 6, 6)],
                b0: B0::Exact(1),
                q: CharFunction::from_pairs([(2, 2), (3, 3)]),
                q_complete: true,
                h0: None,
                d0: 6,
                g0: 3,
                sigma2: None,
            },
            vec![
                by_construction,
                "identity block has size 6, the column count of V (printed as I_4)".to_string(),
            ],
        ),
        "3.4" => {
            let sigma1 = perturbed(&length_nine_sigma1(field), perturb)?;
            let sigma2 = syzygies(&sigma1, 3)?;
            if !perturb && (sigma2.cols() != 34 || sigma2.col_degrees().iter().any(|&d| d != 3)) {
                return Err(Error::Fixture(format!(
                    "expected 34 second syzygies of degree 3, found degrees {:?}",
                    sigma2.col_degrees()
                )));
            }
            (
                sigma1,
                sigma2,
                Expected {
                    alpha_beta: vec![(1, 1, 1)],
                    b0: B0::Exact(1),
                    q: CharFunction::from_pairs([(1, 1), (3, 15)]),
                    q_complete: false,
                    h0: None,
                    d0: 120,
                    g0: 1001,
                    sigma2: Some((34, 3)),
                },
                vec![
                    by_construction,
                    "the cokernel is locally free by construction; too many maximal minors to certify".to_string(),
                ],
            )
        }
        other => return Err(Error::UnknownFixture(other.to_string())),
    };
    if perturb {
        notes.push("perturbed: first entry of sigma1 set to zero".into());
    }
    Ok(ExampleDescriptor {
        name: name.to_string(),
        matrix: block_dvr_matrix(&sigma1, &sigma2)?,
        sigma2_degrees: sigma2.col_degrees().to_vec(),
        expected,
        notes,
    })
}

fn perturbed<K: Field>(m: &GradedMatrix<K>, perturb: bool) -> Result<GradedMatrix<K>> {
    if !perturb {
        return Ok(m.clone());
    }
    let mut entries = m.entries().to_vec();
    entries[0][0] = MultiPoly::zero(m.field());
    GradedMatrix::new(m.field(), m.row_degrees().to_vec(), m.col_degrees().to_vec(), entries)
}
