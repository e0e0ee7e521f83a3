//! JSON formats.
//!
//! Point file:
//!
//! ```json
//! {"field": "R", "n": 2, "k": 1,
//!  "A": [[[1.0, 0.0], [0.5, 0.0]], [[0.5, 0.0], 2.0]],
//!  "B": [[[0.0, 0.0]], [1.0]]}
//! ```
//!
//! `A` is any self-adjoint representative of the coset; entries are
//! `[re, im]` pairs or bare reals. Output always writes pairs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupElementJson};
use crate::linalg::{Field, Herm, Mat, Scalar};
use crate::spectral::Coset;
use crate::tol;
use crate::tower::{QuotientValue, ReprPoint};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Real(f64),
    Pair([f64; 2]),
}

impl From<Entry> for Scalar {
    fn from(e: Entry) -> Scalar {
        match e {
            Entry::Real(x) => Complex64::new(x, 0.0),
            Entry::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointFile {
    pub field: Field,
    pub n: usize,
    pub k: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<Entry>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<Entry>>,
}

pub fn mat_to_pairs(m: &Mat) -> Vec<Vec<[f64; 2]>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

fn entries_to_mat(rows: &[Vec<Entry>], n_rows: usize, n_cols: usize, name: &str) -> Result<Mat> {
    if rows.len() != n_rows || rows.iter().any(|r| r.len() != n_cols) {
        return Err(Error::InvalidInput(format!("{name} must be a {n_rows}x{n_cols} array")));
    }
    Ok(Mat::from_fn(n_rows, n_cols, |i, j| rows[i][j].into()))
}

impl PointFile {
    pub fn into_point(self) -> Result<ReprPoint> {
        let a = entries_to_mat(&self.a, self.n, self.n, "A")?;
        let b = entries_to_mat(&self.b, self.n, self.k, "B")?;
        if self.field == Field::Real && !(a.is_real() && b.is_real()) {
            return Err(Error::InvalidInput("complex entries in a real point".into()));
        }
        let a = Herm::try_from_mat(a, tol::ALGEBRAIC)?;
        ReprPoint::new(self.field, Coset::new(a), b)
    }

    pub fn from_point(p: &ReprPoint) -> PointFile {
        let pairs = |m: &Mat| {
            mat_to_pairs(m)
                .into_iter()
                .map(|r| r.into_iter().map(Entry::Pair).collect())
                .collect()
        };
        PointFile {
            field: p.field,
            n: p.n(),
            k: p.k(),
            a: pairs(p.coset.rep().as_mat()),
            b: pairs(&p.b),
        }
    }
}

pub fn parse_point(text: &str) -> Result<ReprPoint> {
    let file: PointFile =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed point file: {e}")))?;
    file.into_point()
}

pub fn point_to_json(p: &ReprPoint) -> String {
    serde_json::to_string(&PointFile::from_point(p)).expect("point serialization")
}

pub fn parse_group(text: &str) -> Result<GroupElement> {
    let g: GroupElementJson =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed group file: {e}")))?;
    let rows: Vec<Vec<Entry>> =
        g.c.iter()
            .map(|r| r.iter().copied().map(Entry::Pair).collect())
            .collect();
    let c = entries_to_mat(&rows, g.n, g.n, "C")?;
    let elem = GroupElement::from_matrix(g.field, c);
    if elem.matrix().unitarity_defect() > 1e-9 {
        return Err(Error::InvalidInput("group matrix is not unitary".into()));
    }
    Ok(elem)
}

pub fn group_to_json(g: &GroupElement) -> String {
    serde_json::to_string(&GroupElementJson::from(g)).expect("group serialization")
}

pub fn quotient_to_json(q: &QuotientValue) -> String {
    serde_json::to_string(q).expect("quotient serialization")
}

pub fn parse_quotient(text: &str) -> Result<QuotientValue> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed quotient value: {e}")))
}
