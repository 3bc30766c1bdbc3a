//! Bundled exact data: the published polynomials, the candidate matrix, the
//! elimination tower and reference root digit strings, all content-hashed.
//!
//! Every consumer goes through [`bundled_text`], which checks the recorded
//! SHA-256 before handing the bytes out. `GFCERT_DATA_DIR` overrides the
//! embedded copies with files on disk (same names, same hashes).

use num_bigint::BigInt;
use num_traits::One;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::elim::{parse_matrix, RatMatrix};
use crate::multipoly::{load_tower, parse_multipoly, MultiPoly, Tower};
use crate::unipoly::{parse_unipoly, BiPoly, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DataError {
    #[error("unknown bundled file `{0}`")]
    Unknown(String),
    #[error("content hash mismatch for `{0}`: expected {1}, got {2}")]
    HashMismatch(String, String, String),
    #[error("cannot read `{0}` from data dir: {1}")]
    Io(String, String),
    #[error("bundled data failed to parse: {0}")]
    Parse(String),
}

/// (name, embedded content, sha256)
const FILES: &[(&str, &str, &str)] = &[
    (
        "candidate_n5.mat",
        include_str!("../data/candidate_n5.mat"),
        "c91f11bab9b64992d5c99a8ed03f817a0bb57b2ab3d336ce9a1db715bf85d9a8",
    ),
    (
        "elimination_tower.txt",
        include_str!("../data/elimination_tower.txt"),
        "a2aa88539364dc50c31391fe028c3ea54ebfaedeb4d95f5f129fe5c29355b8ab",
    ),
    (
        "extremal_3x3_a.mat",
        include_str!("../data/extremal_3x3_a.mat"),
        "449d48911cce2b9a7ba27987b3a3ef3d0948b55cb146bd6e7a6503d0e2b2fe45",
    ),
    (
        "extremal_3x3_b.mat",
        include_str!("../data/extremal_3x3_b.mat"),
        "1d669c6f176afb28b9b12efd87d6abd57f4677f46328b5fdf4ed8b94245f09dd",
    ),
    (
        "extremal_3x3_c.mat",
        include_str!("../data/extremal_3x3_c.mat"),
        "17e2b4416de471edb1bf3149901d4cf482d211ec04aec60c77b363bbe3216e61",
    ),
    (
        "gz_factor.mpoly",
        include_str!("../data/gz_factor.mpoly"),
        "93aa2bd35daa64ca325d26870f55ad4b38b53d5170c1ae406aabf31be2563024",
    ),
    (
        "octic_case4e.poly",
        include_str!("../data/octic_case4e.poly"),
        "c25367bf063f7aed062ac4c0a597727274811a4fca3b66c69dd520892e43583b",
    ),
    (
        "p1.mpoly",
        include_str!("../data/p1.mpoly"),
        "0a095821c328d6ec51bc718a156bec56c65914b8c0c1ef2017c88d7d1f8386f1",
    ),
    (
        "p2.mpoly",
        include_str!("../data/p2.mpoly"),
        "4c54e0d94f74431cdb347b62aca20befbf6fac57145611de37abb780e137bc3a",
    ),
    (
        "p3.mpoly",
        include_str!("../data/p3.mpoly"),
        "d368dcb218d36f4788c15a7260a9a581868c0cd3e0b5ad87f40345bb9de7cf3f",
    ),
    (
        "p5.poly",
        include_str!("../data/p5.poly"),
        "eb7a242fa4f62d964e1f360913e6d557838a40e10e7be8f0ec6dc97e9ee5bb67",
    ),
    (
        "p7.poly",
        include_str!("../data/p7.poly"),
        "4ab7b9f795902433b2665d364dab6256ec7d06dc3b849658b23b4707c6c7e6fe",
    ),
    (
        "root_g5_200.txt",
        include_str!("../data/root_g5_200.txt"),
        "7bb8030a9510c174179ab7893038f850872b09ab0dbe396e0531d566934a8087",
    ),
    (
        "root_g7.txt",
        include_str!("../data/root_g7.txt"),
        "7ad259c42056552302bb35f3d56f61f1dff5283055c6a1953aa5cf343e75e0af",
    ),
    (
        "root_octic_case4e.txt",
        include_str!("../data/root_octic_case4e.txt"),
        "df4bd575c2efb9cf165590d3ed6e0084938f97c9fd806a0411e96c7ae894bf80",
    ),
    (
        "xroot.poly",
        include_str!("../data/xroot.poly"),
        "a4ef034feb9910429e23d016dc0f6887cbf5ad478cf1831ee2de83fec08541ac",
    ),
    (
        "yroot.poly",
        include_str!("../data/yroot.poly"),
        "def154f1c8c684130e50ac53e66c2d079d3e8a08d6793132cbd6d170ccae42f6",
    ),
    (
        "zroot.poly",
        include_str!("../data/zroot.poly"),
        "169bc883162dd0bfb38f92f398e1b38dd65e310337d2e220f2c77270e287a6d2",
    ),
];

fn sha256_hex(text: &str) -> String {
    let mut h = Sha256::new();
    h.update(text.as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Fetch a bundled file (or its on-disk override) after hash verification.
pub fn bundled_text(name: &str) -> Result<String, DataError> {
    let (_, embedded, want) = FILES
        .iter()
        .find(|(n, _, _)| *n == name)
        .ok_or_else(|| DataError::Unknown(name.to_string()))?;
    let content = match std::env::var_os("GFCERT_DATA_DIR") {
        Some(dir) => {
            let path = std::path::Path::new(&dir).join(name);
            std::fs::read_to_string(&path)
                .map_err(|e| DataError::Io(path.display().to_string(), e.to_string()))?
        }
        None => embedded.to_string(),
    };
    let got = sha256_hex(&content);
    if got != *want {
        return Err(DataError::HashMismatch(name.to_string(), want.to_string(), got));
    }
    Ok(content)
}

/// Verify every bundled file; returns (name, hash) pairs on success.
pub fn verify_all() -> Result<Vec<(String, String)>, DataError> {
    let mut out = Vec::new();
    for (name, _, want) in FILES {
        bundled_text(name)?;
        out.push((name.to_string(), want.to_string()));
    }
    Ok(out)
}

fn unipoly_file(name: &str, expect_var: &str) -> Result<UniPoly, DataError> {
    let text = bundled_text(name)?;
    let (var, p) = parse_unipoly(&text).map_err(|e| DataError::Parse(e.to_string()))?;
    if var != expect_var {
        return Err(DataError::Parse(format!("{name}: expected variable {expect_var}, got {var}")));
    }
    Ok(p)
}

/// The degree-61 polynomial whose unique real root in (4,5) is the
/// conjectured 5x5 growth maximum.
pub fn p5() -> Result<UniPoly, DataError> {
    unipoly_file("p5.poly", "g")
}

/// The degree-6 polynomial for the n = 7 candidate growth.
pub fn p7() -> Result<UniPoly, DataError> {
    unipoly_file("p7.poly", "g")
}

/// The octic from the case analysis whose only root in [-1,1] is near
/// -0.1785.
pub fn octic() -> Result<UniPoly, DataError> {
    unipoly_file("octic_case4e.poly", "z")
}

pub fn xroot_poly() -> Result<UniPoly, DataError> {
    unipoly_file("xroot.poly", "x")
}

pub fn yroot_poly() -> Result<UniPoly, DataError> {
    unipoly_file("yroot.poly", "y")
}

pub fn zroot_poly() -> Result<UniPoly, DataError> {
    unipoly_file("zroot.poly", "z")
}

fn multipoly_file(name: &str) -> Result<MultiPoly, DataError> {
    let text = bundled_text(name)?;
    parse_multipoly(&text).map_err(|e| DataError::Parse(e.to_string()))
}

/// First constraint polynomial of the candidate system (in x, y, z).
pub fn p1_sys() -> Result<MultiPoly, DataError> {
    multipoly_file("p1.mpoly")
}

/// Second constraint polynomial (in x, y, z).
pub fn p2_sys() -> Result<MultiPoly, DataError> {
    multipoly_file("p2.mpoly")
}

/// Growth relation polynomial (in x, y, z, g).
pub fn p3_sys() -> Result<MultiPoly, DataError> {
    multipoly_file("p3.mpoly")
}

/// The degree-10-in-z eliminant factor whose z-discriminant factors through
/// the degree-61 polynomial.
pub fn gz_factor() -> Result<BiPoly, DataError> {
    let p = multipoly_file("gz_factor.mpoly")?;
    if p.vars() != ["z".to_string(), "g".to_string()] {
        return Err(DataError::Parse("gz_factor must be over (z, g)".into()));
    }
    let mut terms: Vec<(usize, usize, BigInt)> = Vec::with_capacity(p.num_terms());
    for (e, c) in p.terms() {
        if !c.denom().is_one() {
            return Err(DataError::Parse("gz_factor must have integer coefficients".into()));
        }
        terms.push((e[0] as usize, e[1] as usize, c.numer().clone()));
    }
    Ok(BiPoly::from_terms("z", "g", &terms))
}

/// The verified elimination tower for the candidate structure.
pub fn tower() -> Result<Tower, DataError> {
    let text = bundled_text("elimination_tower.txt")?;
    load_tower(&text).map_err(|e| DataError::Parse(e.to_string()))
}

/// The numerically printed 5x5 candidate matrix (6 significant digits).
pub fn candidate_matrix() -> Result<RatMatrix, DataError> {
    let text = bundled_text("candidate_n5.mat")?;
    parse_matrix(&text).map_err(|e| DataError::Parse(e.to_string()))
}

/// The three extremal completely pivoted normalized 3x3 matrices (growth
/// 9/4).
pub fn extremal_matrices() -> Result<[RatMatrix; 3], DataError> {
    let mut out = Vec::with_capacity(3);
    for name in ["extremal_3x3_a.mat", "extremal_3x3_b.mat", "extremal_3x3_c.mat"] {
        let text = bundled_text(name)?;
        out.push(parse_matrix(&text).map_err(|e| DataError::Parse(e.to_string()))?);
    }
    Ok(out.try_into().unwrap())
}

/// Reference digit strings (verified independently; see the repository
/// tests that recompute them from the bundled polynomials).
pub fn g5_root_digits() -> Result<String, DataError> {
    Ok(bundled_text("root_g5_200.txt")?.trim().to_string())
}

pub fn g7_root_digits() -> Result<String, DataError> {
    Ok(bundled_text("root_g7.txt")?.trim().to_string())
}

pub fn octic_root_digits() -> Result<String, DataError> {
    Ok(bundled_text("root_octic_case4e.txt")?.trim().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_hashes_verify() {
        let listed = verify_all().unwrap();
        assert_eq!(listed.len(), FILES.len());
    }

    #[test]
    fn loaders_parse() {
        assert_eq!(p5().unwrap().degree(), Some(61));
        assert_eq!(p7().unwrap().degree(), Some(6));
        assert_eq!(octic().unwrap().degree(), Some(8));
        assert_eq!(xroot_poly().unwrap().degree(), Some(61));
        assert_eq!(yroot_poly().unwrap().degree(), Some(61));
        assert_eq!(zroot_poly().unwrap().degree(), Some(61));
        assert_eq!(gz_factor().unwrap().degree(), Some(10));
        assert_eq!(candidate_matrix().unwrap().n(), 5);
        assert!(p1_sys().unwrap().num_terms() > 80);
        assert!(p2_sys().unwrap().num_terms() > 80);
        assert_eq!(p3_sys().unwrap().vars(), &["x", "y", "z", "g"]);
        let g5 = g5_root_digits().unwrap();
        assert_eq!(g5.len(), 202);
        assert!(g5.starts_with("4.1325170786"));
    }

    #[test]
    fn unknown_file_is_an_error() {
        assert!(matches!(bundled_text("nope.txt"), Err(DataError::Unknown(_))));
    }
}
