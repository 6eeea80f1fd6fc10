//! JSON documents for quivers with potential, group actions, sections,
//! tilings, polygons and catalog entries.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catalog::CatalogEntry;
use crate::dimer::{BraneTiling, Color, DimerError, Edge, LatticePolygon, Node, TorusLattice};
use crate::quiver::{
    canonicalize_potential, parse_rational, validate, Arrow, Potential, Quiver, QuiverError,
    VertexId,
};
use crate::symmetry::GroupAction;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(String),
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Dimer(#[from] DimerError),
}

impl JsonError {
    pub fn code(&self) -> &'static str {
        match self {
            JsonError::Syntax(_) => "MalformedJson",
            JsonError::Schema(_) => "InvalidDocument",
            JsonError::Quiver(e) => e.code(),
            JsonError::Dimer(e) => e.code(),
        }
    }
}

impl From<serde_json::Error> for JsonError {
    fn from(e: serde_json::Error) -> Self {
        match e.classify() {
            serde_json::error::Category::Data => JsonError::Schema(e.to_string()),
            _ => JsonError::Syntax(e.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub id: String,
    pub src: VertexId,
    pub tgt: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coeff: String,
    pub cycle: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverDoc {
    pub vertices: Vec<VertexId>,
    pub arrows: Vec<ArrowDoc>,
    #[serde(default)]
    pub potential: Vec<TermDoc>,
}

impl QuiverDoc {
    pub fn from_parts(q: &Quiver, w: &Potential) -> Self {
        QuiverDoc {
            vertices: q.vertices().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowDoc {
                    id: a.id.clone(),
                    src: a.src,
                    tgt: a.tgt,
                })
                .collect(),
            potential: w
                .terms()
                .map(|(word, c)| TermDoc {
                    coeff: c.to_string(),
                    cycle: word.arrows().to_vec(),
                })
                .collect(),
        }
    }

    /// Builds and validates the quiver with potential.
    pub fn to_parts(&self) -> Result<(Quiver, Potential), JsonError> {
        let q = Quiver::new(
            self.vertices.clone(),
            self.arrows
                .iter()
                .map(|a| Arrow::new(a.id.clone(), a.src, a.tgt))
                .collect(),
        )?;
        let mut terms = Vec::with_capacity(self.potential.len());
        for t in &self.potential {
            let c = parse_rational(&t.coeff).ok_or_else(|| {
                JsonError::Schema(format!("coefficient '{}' is not a rational", t.coeff))
            })?;
            terms.push((t.cycle.clone(), c));
        }
        let w = canonicalize_potential(terms)?;
        validate(&q, &w)?;
        Ok((q, w))
    }
}

pub fn quiver_to_json(q: &Quiver, w: &Potential) -> String {
    to_pretty(&QuiverDoc::from_parts(q, w))
}

pub fn quiver_from_json(s: &str) -> Result<(Quiver, Potential), JsonError> {
    serde_json::from_str::<QuiverDoc>(s)?.to_parts()
}

pub fn action_to_json(a: &GroupAction) -> String {
    to_pretty(a)
}

pub fn action_from_json(s: &str) -> Result<GroupAction, JsonError> {
    let a: GroupAction = serde_json::from_str(s)?;
    if a.orders.len() != a.generators.len() {
        return Err(JsonError::Schema(format!(
            "{} orders but {} generators",
            a.orders.len(),
            a.generators.len()
        )));
    }
    Ok(a)
}

/// Section document `{"1'": 1, ...}`: quotient vertex (primed) → representative.
pub fn section_to_json(section: &BTreeMap<VertexId, VertexId>) -> String {
    let m: serde_json::Map<String, serde_json::Value> = section
        .iter()
        .map(|(k, v)| (format!("{k}'"), serde_json::Value::from(*v)))
        .collect();
    to_pretty(&m)
}

pub fn section_from_json(s: &str) -> Result<BTreeMap<VertexId, VertexId>, JsonError> {
    let m: BTreeMap<String, VertexId> = serde_json::from_str(s)?;
    m.into_iter()
        .map(|(k, v)| {
            let key = k.trim_end_matches('\'');
            key.parse::<VertexId>()
                .map(|k| (k, v))
                .map_err(|_| JsonError::Schema(format!("section key '{k}' is not a vertex")))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDoc {
    pub id: String,
    pub color: String,
    pub pos: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub id: String,
    pub black: String,
    pub white: String,
    pub offset: [i64; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingDoc {
    pub lattice: [[i64; 2]; 2],
    pub nodes: Vec<NodeDoc>,
    pub edges: Vec<EdgeDoc>,
}

impl TilingDoc {
    pub fn from_tiling(t: &BraneTiling) -> Self {
        TilingDoc {
            lattice: t.lattice.generators,
            nodes: t
                .nodes
                .iter()
                .map(|n| NodeDoc {
                    id: n.id.clone(),
                    color: n.color.name().to_string(),
                    pos: [n.pos[0].to_string(), n.pos[1].to_string()],
                })
                .collect(),
            edges: t
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    id: e.id.clone(),
                    black: e.black.clone(),
                    white: e.white.clone(),
                    offset: e.offset,
                })
                .collect(),
        }
    }

    pub fn to_tiling(&self) -> Result<BraneTiling, JsonError> {
        let lattice = TorusLattice::new(self.lattice[0], self.lattice[1])?;
        let mut nodes = Vec::with_capacity(self.nodes.len());
        for n in &self.nodes {
            let color = match n.color.as_str() {
                "black" => Color::Black,
                "white" => Color::White,
                other => {
                    return Err(JsonError::Schema(format!(
                        "node {} has color '{other}'",
                        n.id
                    )))
                }
            };
            let coord = |s: &str| {
                parse_rational(s).ok_or_else(|| {
                    JsonError::Schema(format!("node {} position '{s}' is not rational", n.id))
                })
            };
            nodes.push(Node {
                id: n.id.clone(),
                color,
                pos: [coord(&n.pos[0])?, coord(&n.pos[1])?],
            });
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                id: e.id.clone(),
                black: e.black.clone(),
                white: e.white.clone(),
                offset: e.offset,
            })
            .collect();
        Ok(BraneTiling::new(lattice, nodes, edges)?)
    }
}

pub fn tiling_to_json(t: &BraneTiling) -> String {
    to_pretty(&TilingDoc::from_tiling(t))
}

pub fn tiling_from_json(s: &str) -> Result<BraneTiling, JsonError> {
    serde_json::from_str::<TilingDoc>(s)?.to_tiling()
}

/// Support points as `[x, y, multiplicity]`, sorted.
pub fn polygon_to_json(p: &LatticePolygon) -> String {
    let rows: Vec<[i64; 3]> = p
        .multiplicities
        .iter()
        .map(|(pt, m)| [pt[0], pt[1], *m as i64])
        .collect();
    serde_json::to_string(&rows).expect("serializable")
}

pub fn polygon_from_json(s: &str) -> Result<LatticePolygon, JsonError> {
    let rows: Vec<[i64; 3]> = serde_json::from_str(s)?;
    let mut m = BTreeMap::new();
    for [x, y, k] in rows {
        if k < 0 {
            return Err(JsonError::Schema(format!(
                "negative multiplicity at ({x}, {y})"
            )));
        }
        *m.entry([x, y]).or_insert(0) += k as u64;
    }
    Ok(LatticePolygon::from_multiplicities(m))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogDoc {
    pub name: String,
    pub quiver: QuiverDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tiling: Option<TilingDoc>,
    #[serde(default)]
    pub actions: Vec<NamedAction>,
    #[serde(default)]
    pub lattices: Vec<NamedLattice>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedAction {
    pub name: String,
    pub action: GroupAction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedLattice {
    pub name: String,
    pub lattice: [[i64; 2]; 2],
}

pub fn catalog_to_json(e: &CatalogEntry) -> String {
    let doc = CatalogDoc {
        name: e.name.clone(),
        quiver: QuiverDoc::from_parts(&e.quiver, &e.potential),
        tiling: e.tiling.as_ref().map(TilingDoc::from_tiling),
        actions: e
            .actions
            .iter()
            .map(|(n, a)| NamedAction {
                name: n.clone(),
                action: a.clone(),
            })
            .collect(),
        lattices: e
            .lattices
            .iter()
            .map(|(n, l)| NamedLattice {
                name: n.clone(),
                lattice: l.generators,
            })
            .collect(),
        parameter: e.parameter,
    };
    to_pretty(&doc)
}

pub fn catalog_from_json(s: &str) -> Result<CatalogEntry, JsonError> {
    let doc: CatalogDoc = serde_json::from_str(s)?;
    let (quiver, potential) = doc.quiver.to_parts()?;
    let tiling = doc.tiling.as_ref().map(TilingDoc::to_tiling).transpose()?;
    let lattices = doc
        .lattices
        .iter()
        .map(|l| {
            Ok((
                l.name.clone(),
                TorusLattice::new(l.lattice[0], l.lattice[1])?,
            ))
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    Ok(CatalogEntry {
        name: doc.name,
        quiver,
        potential,
        tiling,
        actions: doc
            .actions
            .into_iter()
            .map(|a| (a.name, a.action))
            .collect(),
        lattices,
        parameter: doc.parameter,
    })
}

pub(crate) fn to_pretty<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}
