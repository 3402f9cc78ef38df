//! The group-spec file format: a small TOML document selecting a group
//! either by catalog name or by an explicit bond list.
//!
//! Canonical form, reproduced byte-for-byte by [`GroupSpec::canonical_string`]:
//!
//! ```toml
//! type = "B4"
//! ```
//!
//! or
//!
//! ```toml
//! rank = 4
//! bonds = [[0, 1, 4], [1, 2, 3], [2, 3, 3]]
//! ```
//!
//! `bonds` lists `[i, j, m]` triples with i < j, sorted, one per pair, only
//! for bonds different from the default 2; infinite bonds use the string
//! `"inf"`. Parsing accepts any valid TOML spelling of the same fields;
//! parse followed by serialize is the identity on canonical documents.

use serde::Deserialize;
use thiserror::Error;

use crate::system::{Bond, CatalogError, CoxeterMatrix, MatrixError, NamedType};

/// A group selection: a catalog name or an explicit matrix.
#[derive(Clone, PartialEq, Debug)]
pub enum GroupSpec {
    Named(NamedType),
    Explicit(CoxeterMatrix),
}

#[derive(Error, Debug, Clone, PartialEq)]
pub enum SpecFileError {
    #[error("not a valid group-spec document: {0}")]
    Syntax(String),
    #[error("a group spec needs either `type` or `rank`/`bonds`, not both")]
    AmbiguousSelector,
    #[error("a group spec needs a `type` field or a `rank` field")]
    MissingSelector,
    #[error("`bonds` requires a `rank` field")]
    BondsWithoutRank,
    #[error("bond triple {0:?} is malformed: expected [i, j, m] with m a positive integer or \"inf\"")]
    BadTriple(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    #[serde(rename = "type")]
    type_name: Option<String>,
    rank: Option<usize>,
    bonds: Option<Vec<toml::Value>>,
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self, SpecFileError> {
        let raw: RawSpec =
            toml::from_str(text).map_err(|e| SpecFileError::Syntax(e.to_string()))?;
        match (raw.type_name, raw.rank) {
            (Some(_), Some(_)) => Err(SpecFileError::AmbiguousSelector),
            (Some(name), None) => {
                if raw.bonds.is_some() {
                    return Err(SpecFileError::AmbiguousSelector);
                }
                Ok(GroupSpec::Named(NamedType::parse(&name)?))
            }
            (None, Some(rank)) => {
                let mut triples = Vec::new();
                for value in raw.bonds.unwrap_or_default() {
                    triples.push(parse_triple(&value)?);
                }
                Ok(GroupSpec::Explicit(CoxeterMatrix::from_bond_list(rank, &triples)?))
            }
            (None, None) => {
                if raw.bonds.is_some() {
                    Err(SpecFileError::BondsWithoutRank)
                } else {
                    Err(SpecFileError::MissingSelector)
                }
            }
        }
    }

    /// Resolves to the bond matrix.
    pub fn matrix(&self) -> CoxeterMatrix {
        match self {
            GroupSpec::Named(ty) => ty.matrix(),
            GroupSpec::Explicit(m) => m.clone(),
        }
    }

    pub fn named_type(&self) -> Option<NamedType> {
        match self {
            GroupSpec::Named(ty) => Some(*ty),
            GroupSpec::Explicit(_) => None,
        }
    }

    /// Canonical serialization; see the module docs for the exact shape.
    pub fn canonical_string(&self) -> String {
        match self {
            GroupSpec::Named(ty) => format!("type = \"{ty}\"\n"),
            GroupSpec::Explicit(m) => {
                let triples: Vec<String> = m
                    .canonical_bond_list()
                    .into_iter()
                    .map(|(i, j, b)| match b {
                        Bond::Finite(v) => format!("[{i}, {j}, {v}]"),
                        Bond::Infinite => format!("[{i}, {j}, \"inf\"]"),
                    })
                    .collect();
                format!("rank = {}\nbonds = [{}]\n", m.rank(), triples.join(", "))
            }
        }
    }
}

fn parse_triple(value: &toml::Value) -> Result<(usize, usize, Bond), SpecFileError> {
    let bad = || SpecFileError::BadTriple(value.to_string());
    let arr = value.as_array().ok_or_else(bad)?;
    if arr.len() != 3 {
        return Err(bad());
    }
    let idx = |v: &toml::Value| -> Option<usize> {
        v.as_integer().and_then(|i| usize::try_from(i).ok())
    };
    let i = idx(&arr[0]).ok_or_else(bad)?;
    let j = idx(&arr[1]).ok_or_else(bad)?;
    let m = match &arr[2] {
        toml::Value::Integer(v) if *v > 0 => Bond::Finite(*v as u32),
        toml::Value::String(s) if s.eq_ignore_ascii_case("inf") => Bond::Infinite,
        _ => return Err(bad()),
    };
    Ok((i, j, m))
}
