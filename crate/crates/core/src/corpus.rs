//! The named sample extensions used by the tests, the CLI fixtures and the
//! Python bindings.

use std::sync::Arc;

use crate::algebra::{Extension, FDAlgebra};
use crate::error::Result;
use crate::group::GroupData;
use crate::linalg::unit_vector;
use crate::scalar::Field;

pub const NAMES: [&str; 10] = [
    "q-s3-over-q-s3",
    "q-c2-over-q",
    "f2-c2-over-f2",
    "f3-c3-over-f3",
    "q-s3-over-q-a3",
    "f7-s3-over-f7-c2",
    "q-m2-over-q",
    "q-m2-over-q-t2",
    "q-q8-over-q-c4",
    "q-q-over-q",
];

/// `A3` inside `S3` (lexicographic permutation order).
pub const S3_A3: [usize; 3] = [0, 3, 4];
/// The transposition swapping the first two points, with the identity.
pub const S3_TRANSPOSITION: [usize; 2] = [0, 2];
/// `<i>` inside `Q8` ordered `1, -1, i, -i, j, -j, k, -k`.
pub const Q8_I: [usize; 4] = [0, 1, 2, 3];

pub fn extension(name: &str) -> Result<Option<Extension>> {
    let q = Field::Rational;
    let ext = match name {
        "q-s3-over-q-s3" => {
            let a = Arc::new(FDAlgebra::group_algebra(&GroupData::symmetric(3), q));
            Extension::identity(a)
        }
        "q-c2-over-q" => Extension::over_ground(Arc::new(FDAlgebra::group_algebra(&GroupData::cyclic(2), q))),
        "f2-c2-over-f2" => {
            Extension::over_ground(Arc::new(FDAlgebra::group_algebra(&GroupData::cyclic(2), Field::prime(2)?)))
        }
        "f3-c3-over-f3" => {
            Extension::over_ground(Arc::new(FDAlgebra::group_algebra(&GroupData::cyclic(3), Field::prime(3)?)))
        }
        "q-s3-over-q-a3" => Extension::from_subgroup(&GroupData::symmetric(3), q, &S3_A3)?,
        "f7-s3-over-f7-c2" => Extension::from_subgroup(&GroupData::symmetric(3), Field::prime(7)?, &S3_TRANSPOSITION)?,
        "q-m2-over-q" => Extension::over_ground(Arc::new(FDAlgebra::matrix_algebra(q, 2))),
        "q-m2-over-q-t2" => {
            let a = Arc::new(FDAlgebra::matrix_algebra(q, 2));
            let basis: Vec<_> = [0, 1, 3].iter().map(|&i| unit_vector(q, 4, i)).collect();
            Extension::subalgebra(a, &basis)?
        }
        "q-q8-over-q-c4" => Extension::from_subgroup(&GroupData::quaternion(), q, &Q8_I)?,
        "q-q-over-q" => Extension::over_ground(Arc::new(FDAlgebra::diagonal(q, 2))),
        _ => return Ok(None),
    };
    Ok(Some(ext))
}

/// The ambient group and subgroup indices for the group-algebra entries.
pub fn group(name: &str) -> Option<(GroupData, Vec<usize>)> {
    let (g, h): (GroupData, Vec<usize>) = match name {
        "q-s3-over-q-s3" => (GroupData::symmetric(3), (0..6).collect()),
        "q-c2-over-q" | "f2-c2-over-f2" => (GroupData::cyclic(2), vec![0]),
        "f3-c3-over-f3" => (GroupData::cyclic(3), vec![0]),
        "q-s3-over-q-a3" => (GroupData::symmetric(3), S3_A3.to_vec()),
        "f7-s3-over-f7-c2" => (GroupData::symmetric(3), S3_TRANSPOSITION.to_vec()),
        "q-q8-over-q-c4" => (GroupData::quaternion(), Q8_I.to_vec()),
        _ => return None,
    };
    Some((g, h))
}

/// The input document shipped for a corpus entry.
pub fn document(name: &str, seed: u64) -> Result<Option<serde_json::Value>> {
    let Some(ext) = extension(name)? else {
        return Ok(None);
    };
    let g = group(name);
    Ok(Some(crate::io::extension_document(
        name,
        &ext,
        g.as_ref().map(|(g, h)| (g, h.as_slice())),
        seed,
    )))
}

pub fn all() -> Vec<(&'static str, Extension)> {
    NAMES
        .iter()
        .map(|&n| (n, extension(n).expect("corpus extension builds").expect("known name")))
        .collect()
}
