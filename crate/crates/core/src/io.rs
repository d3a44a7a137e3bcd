//! Versioned JSON documents for data, braces and censuses.
//!
//! Elements of K are written as their indices in K's canonical order.
//! Automorphisms of PSL₂(q) are written as semilinear pairs, those of the
//! other families as permutations of K's indices.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::brace::{brace_from_regular, regular_subgroup_of, Brace, BraceError};
use crate::gf::GfError;
use crate::group::perm::{alternating_group, automorphism_group, symmetric_group};
use crate::group::{
    close_subgroup, inner_automorphism_group, AutGroup, CosetIso, Elem, Group, GroupError, Subgroup, TableGroup,
    TABLE_LIMIT,
};
use crate::holomorph::{is_regular_subgroup, HolElem, Holomorph};
use crate::matgrp::{psl_group, Mat2, MatGroupError, Pgaml2, Semilinear};
use crate::oracle::{BraceCensus, CrossReport};
use crate::psl25::MatrixTable;
use crate::theorem_a::SubdirectDatum;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error("expected a {expected} document, found {found}")]
    Kind { expected: &'static str, found: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Matrix(#[from] MatGroupError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Brace(#[from] BraceError),
    #[error("{0}")]
    Invalid(String),
}

/// A group with a known automorphism group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum GroupSpec {
    Psl2 { q: u32 },
    Sym { n: usize },
    Alt { n: usize },
    Cyclic { n: usize },
}

impl GroupSpec {
    /// Roster names: `S3`, `S4`, `A5`, `PSL2(q)`, `C<n>`.
    pub fn parse_name(name: &str) -> Option<GroupSpec> {
        let num = |s: &str| s.parse::<usize>().ok();
        if let Some(q) = name.strip_prefix("PSL2(").and_then(|r| r.strip_suffix(')')) {
            return num(q).map(|q| GroupSpec::Psl2 { q: q as u32 });
        }
        if let Some(n) = name.strip_prefix('S') {
            return num(n).map(|n| GroupSpec::Sym { n });
        }
        if let Some(n) = name.strip_prefix('A') {
            return num(n).map(|n| GroupSpec::Alt { n });
        }
        if let Some(n) = name.strip_prefix('C') {
            return num(n).map(|n| GroupSpec::Cyclic { n });
        }
        None
    }

    pub fn name(&self) -> String {
        match self {
            GroupSpec::Psl2 { q } => format!("PSL2({q})"),
            GroupSpec::Sym { n } => format!("S{n}"),
            GroupSpec::Alt { n } => format!("A{n}"),
            GroupSpec::Cyclic { n } => format!("C{n}"),
        }
    }

    pub fn build(&self) -> Result<GroupContext, IoError> {
        let perm = |g: Arc<dyn Group>| -> Result<Arc<dyn AutGroup>, IoError> { Ok(Arc::new(automorphism_group(g)?)) };
        let (aut, pgaml) = match *self {
            GroupSpec::Psl2 { q } => {
                let p = Arc::new(Pgaml2::new(Arc::new(psl_group(q)?)));
                (p.clone() as Arc<dyn AutGroup>, Some(p))
            }
            GroupSpec::Sym { n } if (1..=6).contains(&n) => (perm(Arc::new(symmetric_group(n).0))?, None),
            GroupSpec::Alt { n } if (3..=6).contains(&n) => (perm(Arc::new(alternating_group(n).0))?, None),
            GroupSpec::Cyclic { n } if (1..=TABLE_LIMIT).contains(&n) => (perm(Arc::new(TableGroup::cyclic(n)))?, None),
            _ => return Err(IoError::Invalid(format!("unsupported group {}", self.name()))),
        };
        Ok(GroupContext {
            spec: self.clone(),
            aut,
            pgaml,
        })
    }
}

/// A built group plus the means to encode its automorphisms.
#[derive(Clone)]
pub struct GroupContext {
    pub spec: GroupSpec,
    pub aut: Arc<dyn AutGroup>,
    pub pgaml: Option<Arc<Pgaml2>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AutSpec {
    Semilinear { mat: [[String; 2]; 2], frob: u32 },
    Perm { perm: Vec<Elem> },
}

impl GroupContext {
    pub fn encode_aut(&self, phi: Elem) -> AutSpec {
        match &self.pgaml {
            Some(p) => {
                let s = p.semilinear(phi);
                AutSpec::Semilinear {
                    mat: s.mat.format(p.psl().field()),
                    frob: s.frob,
                }
            }
            None => AutSpec::Perm {
                perm: self.aut.permutation(phi),
            },
        }
    }

    pub fn decode_aut(&self, spec: &AutSpec) -> Result<Elem, IoError> {
        match (spec, &self.pgaml) {
            (AutSpec::Semilinear { mat, frob }, Some(p)) => {
                let rows = [
                    [mat[0][0].as_str(), mat[0][1].as_str()],
                    [mat[1][0].as_str(), mat[1][1].as_str()],
                ];
                let m = Mat2::parse(p.psl().field(), rows)?;
                Ok(p.element(Semilinear { mat: m, frob: *frob })?)
            }
            (AutSpec::Perm { perm }, _) => self
                .aut
                .find_permutation(perm)
                .ok_or_else(|| IoError::Invalid("permutation is not an automorphism of K".into())),
            (AutSpec::Semilinear { .. }, None) => Err(IoError::Invalid(format!(
                "semilinear automorphism given for {}",
                self.spec.name()
            ))),
        }
    }

    fn decode_subgroup(&self, gens: &[AutSpec]) -> Result<Subgroup, IoError> {
        let gens: Vec<Elem> = gens.iter().map(|g| self.decode_aut(g)).collect::<Result<_, _>>()?;
        Ok(close_subgroup(self.aut.as_ref(), &gens))
    }

    fn encode_subgroup(&self, s: &Subgroup) -> Vec<AutSpec> {
        s.generators().iter().map(|&g| self.encode_aut(g)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumDoc {
    pub version: u32,
    pub kind: String,
    #[serde(rename = "K")]
    pub k: GroupSpec,
    #[serde(rename = "X")]
    pub x: Vec<AutSpec>,
    #[serde(rename = "Y")]
    pub y: Vec<AutSpec>,
    #[serde(rename = "N")]
    pub n: Vec<AutSpec>,
    #[serde(rename = "M")]
    pub m: Vec<AutSpec>,
    /// Pairs `[y, x]` meaning `γ(yM) = xN`.
    pub gamma: Vec<[AutSpec; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceDoc {
    pub version: u32,
    pub kind: String,
    #[serde(rename = "K")]
    pub k: GroupSpec,
    pub n: usize,
    /// `λ_k` for each `k` in index order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<AutSpec>>,
    /// Row-major multiplication table, present when `n ≤ 4096`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mul: Option<Vec<Vec<Elem>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusDoc<'a> {
    pub version: u32,
    pub kind: &'static str,
    #[serde(rename = "K")]
    pub k: GroupSpec,
    pub entries: Vec<CensusEntry>,
    pub report: &'a CrossReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusEntry {
    /// `λ_k` for each `k` in index order.
    pub lambda: Vec<AutSpec>,
}

/// Replacement matrix entries for the order-7800 example.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleDoc {
    pub version: u32,
    pub kind: String,
    pub matrices: MatrixTable,
}

pub fn encode_example(matrices: MatrixTable) -> ExampleDoc {
    ExampleDoc {
        version: FORMAT_VERSION,
        kind: "example".into(),
        matrices,
    }
}

pub fn decode_example(text: &str) -> Result<MatrixTable, IoError> {
    let doc: ExampleDoc = serde_json::from_str(text)?;
    check_header(doc.version, &doc.kind, "example")?;
    Ok(doc.matrices)
}

fn check_header(version: u32, kind: &str, expected: &'static str) -> Result<(), IoError> {
    if version != FORMAT_VERSION {
        return Err(IoError::Version(version));
    }
    if kind != expected {
        return Err(IoError::Kind {
            expected,
            found: kind.to_string(),
        });
    }
    Ok(())
}

pub fn encode_datum(ctx: &GroupContext, d: &SubdirectDatum) -> DatumDoc {
    DatumDoc {
        version: FORMAT_VERSION,
        kind: "datum".into(),
        k: ctx.spec.clone(),
        x: ctx.encode_subgroup(&d.x),
        y: ctx.encode_subgroup(&d.y),
        n: ctx.encode_subgroup(&d.n),
        m: ctx.encode_subgroup(&d.m),
        gamma: d
            .gamma
            .pairs
            .iter()
            .map(|&(y, x)| [ctx.encode_aut(y), ctx.encode_aut(x)])
            .collect(),
    }
}

pub fn decode_datum(text: &str) -> Result<(GroupContext, SubdirectDatum), IoError> {
    let doc: DatumDoc = serde_json::from_str(text)?;
    check_header(doc.version, &doc.kind, "datum")?;
    let ctx = doc.k.build()?;
    let pairs = doc
        .gamma
        .iter()
        .map(|[y, x]| Ok((ctx.decode_aut(y)?, ctx.decode_aut(x)?)))
        .collect::<Result<Vec<_>, IoError>>()?;
    let inner = Arc::new(inner_automorphism_group(ctx.aut.as_ref()));
    let d = SubdirectDatum::with_inner(
        ctx.aut.clone(),
        inner,
        ctx.decode_subgroup(&doc.x)?,
        ctx.decode_subgroup(&doc.y)?,
        ctx.decode_subgroup(&doc.n)?,
        ctx.decode_subgroup(&doc.m)?,
        CosetIso { pairs },
    );
    Ok((ctx, d))
}

pub fn encode_brace(ctx: &GroupContext, b: &Brace) -> Result<BraceDoc, IoError> {
    let n = b.order();
    let lambda = match b.regular() {
        Some((_, h)) => Some(h.lambdas().to_vec()),
        None => {
            let hol = Holomorph::new(ctx.aut.clone());
            regular_subgroup_of(b, &hol).ok().map(|h| h.lambdas().to_vec())
        }
    };
    let mul = (n <= TABLE_LIMIT).then(|| b.mul_table().chunks(n).map(<[Elem]>::to_vec).collect());
    Ok(BraceDoc {
        version: FORMAT_VERSION,
        kind: "brace".into(),
        k: ctx.spec.clone(),
        n,
        lambda: lambda.map(|l| l.iter().map(|&phi| ctx.encode_aut(phi)).collect()),
        mul,
    })
}

pub fn decode_brace(text: &str) -> Result<(GroupContext, Brace), IoError> {
    let doc: BraceDoc = serde_json::from_str(text)?;
    check_header(doc.version, &doc.kind, "brace")?;
    let ctx = doc.k.build()?;
    let add = ctx.aut.base().clone();
    if doc.n != add.order() {
        return Err(IoError::Invalid(format!(
            "n = {} but |{}| = {}",
            doc.n,
            doc.k.name(),
            add.order()
        )));
    }
    if let Some(lambda) = &doc.lambda {
        if lambda.len() != doc.n {
            return Err(IoError::Invalid(format!(
                "{} λ entries for n = {}",
                lambda.len(),
                doc.n
            )));
        }
        let hol = Holomorph::new(ctx.aut.clone());
        let elems: Vec<HolElem> = lambda
            .iter()
            .enumerate()
            .map(|(k, a)| {
                Ok(HolElem {
                    k: k as Elem,
                    phi: ctx.decode_aut(a)?,
                })
            })
            .collect::<Result<_, IoError>>()?;
        let h = is_regular_subgroup(&hol, &elems).map_err(BraceError::from)?;
        return Ok((ctx, brace_from_regular(&hol, h)));
    }
    let rows = doc
        .mul
        .ok_or_else(|| IoError::Invalid("brace has neither lambda nor mul".into()))?;
    if rows.len() != doc.n || rows.iter().any(|r| r.len() != doc.n) {
        return Err(IoError::Invalid("multiplication table has the wrong shape".into()));
    }
    let table = rows.into_iter().flatten().collect();
    let b = Brace::from_table(add, table)?;
    Ok((ctx, b))
}

pub fn encode_census<'a>(ctx: &GroupContext, census: &BraceCensus, report: &'a CrossReport) -> CensusDoc<'a> {
    CensusDoc {
        version: FORMAT_VERSION,
        kind: "census",
        k: ctx.spec.clone(),
        entries: census
            .entries
            .iter()
            .map(|h| CensusEntry {
                lambda: h.lambdas().iter().map(|&phi| ctx.encode_aut(phi)).collect(),
            })
            .collect(),
        report,
    }
}
