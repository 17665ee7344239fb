//! Finite relational structures on the universe `{0..n-1}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Relation tables are mirrored into a dense membership array; this caps
/// `size^arity` for any single relation.
const DENSE_LIMIT: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationSymbol {
    pub name: String,
    pub arity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    relations: Vec<RelationSymbol>,
}

impl Signature {
    pub fn new(relations: Vec<RelationSymbol>) -> Result<Self> {
        let mut names = BTreeSet::new();
        for r in &relations {
            if r.arity == 0 {
                return Err(Error::input(format!("relation {} has arity 0", r.name)));
            }
            if !names.insert(r.name.as_str()) {
                return Err(Error::input(format!("duplicate relation name {}", r.name)));
            }
        }
        Ok(Signature { relations })
    }

    /// No relation symbols at all: structures are bare sets.
    pub fn empty() -> Self {
        Signature::default()
    }

    /// One binary relation named `E`.
    pub fn digraph() -> Self {
        Signature {
            relations: vec![RelationSymbol {
                name: "E".into(),
                arity: 2,
            }],
        }
    }

    pub fn relations(&self) -> &[RelationSymbol] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn is_digraph(&self) -> bool {
        self.relations.len() == 1 && self.relations[0].arity == 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Relation {
    arity: usize,
    tuples: BTreeSet<Vec<usize>>,
    // index Σ t[i]·size^(arity-1-i)
    dense: Vec<bool>,
}

/// A finite structure in a relational signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinStructure {
    signature: Signature,
    size: usize,
    relations: Vec<Relation>,
}

impl FinStructure {
    /// `tables[i]` lists the tuples of the `i`-th relation of `signature`.
    pub fn new(signature: Signature, size: usize, tables: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        if tables.len() != signature.len() {
            return Err(Error::input(format!(
                "expected {} relation tables, got {}",
                signature.len(),
                tables.len()
            )));
        }
        let mut relations = Vec::with_capacity(tables.len());
        for (sym, table) in signature.relations.iter().zip(tables) {
            let cells = (size as u64)
                .checked_pow(sym.arity as u32)
                .filter(|&c| c <= DENSE_LIMIT)
                .ok_or(Error::TooLarge {
                    what: "relation table",
                    size: size as u64,
                    bound: DENSE_LIMIT,
                })?;
            let mut dense = vec![false; cells as usize];
            let mut tuples = BTreeSet::new();
            for t in table {
                if t.len() != sym.arity {
                    return Err(Error::input(format!(
                        "tuple {t:?} has length {}, relation {} has arity {}",
                        t.len(),
                        sym.name,
                        sym.arity
                    )));
                }
                if let Some(&v) = t.iter().find(|&&v| v >= size) {
                    return Err(Error::VertexOutOfRange { vertex: v, size });
                }
                dense[cell_index(size, &t)] = true;
                tuples.insert(t);
            }
            relations.push(Relation {
                arity: sym.arity,
                tuples,
                dense,
            });
        }
        Ok(FinStructure {
            signature,
            size,
            relations,
        })
    }

    /// A set with no relations.
    pub fn bare_set(size: usize) -> Self {
        FinStructure {
            signature: Signature::empty(),
            size,
            relations: Vec::new(),
        }
    }

    pub fn digraph(size: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        let table = arrows.iter().map(|&(u, v)| vec![u, v]).collect();
        FinStructure::new(Signature::digraph(), size, vec![table])
    }

    /// Digraph whose arrow `(i, j)` is bit `i·n + j` of `mask`.
    pub fn from_adjacency_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 8, "adjacency masks cover at most 8 vertices");
        let mut tuples = BTreeSet::new();
        let mut dense = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                if mask >> (i * n + j) & 1 == 1 {
                    tuples.insert(vec![i, j]);
                    dense[i * n + j] = true;
                }
            }
        }
        FinStructure {
            signature: Signature::digraph(),
            size: n,
            relations: vec![Relation {
                arity: 2,
                tuples,
                dense,
            }],
        }
    }

    /// Inverse of [`FinStructure::from_adjacency_mask`]; `None` unless this is a
    /// digraph on at most 8 vertices.
    pub fn adjacency_mask(&self) -> Option<u64> {
        if !self.signature.is_digraph() || self.size > 8 {
            return None;
        }
        let n = self.size;
        Some(
            self.relations[0]
                .tuples
                .iter()
                .fold(0u64, |m, t| m | 1 << (t[0] * n + t[1])),
        )
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Sorted tuples of relation `rel`.
    pub fn tuples(&self, rel: usize) -> impl Iterator<Item = &[usize]> + '_ {
        self.relations[rel].tuples.iter().map(Vec::as_slice)
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    pub fn arity(&self, rel: usize) -> usize {
        self.relations[rel].arity
    }

    #[inline]
    pub fn holds(&self, rel: usize, tuple: &[usize]) -> bool {
        self.relations[rel].dense[cell_index(self.size, tuple)]
    }

    /// Total number of tuples over all relations.
    pub fn tuple_count(&self) -> usize {
        self.relations.iter().map(|r| r.tuples.len()).sum()
    }

    /// The substructure induced on `subset`, re-indexed order-preservingly.
    /// Also returns the re-index map: new vertex `i` is old vertex `map[i]`.
    pub fn induced_substructure(&self, subset: &[usize]) -> Result<(FinStructure, Vec<usize>)> {
        let mut verts: Vec<usize> = subset.to_vec();
        verts.sort_unstable();
        verts.dedup();
        if let Some(&v) = verts.iter().find(|&&v| v >= self.size) {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                size: self.size,
            });
        }
        let mut new_index = vec![usize::MAX; self.size];
        for (i, &v) in verts.iter().enumerate() {
            new_index[v] = i;
        }
        let tables = self
            .relations
            .iter()
            .map(|r| {
                r.tuples
                    .iter()
                    .filter(|t| t.iter().all(|&v| new_index[v] != usize::MAX))
                    .map(|t| t.iter().map(|&v| new_index[v]).collect())
                    .collect()
            })
            .collect();
        let sub = FinStructure::new(self.signature.clone(), verts.len(), tables)?;
        Ok((sub, verts))
    }

    /// The structure `σ·S`: `R(σ(t))` holds in the result iff `R(t)` holds here.
    pub fn relabeled(&self, sigma: &Perm) -> FinStructure {
        assert_eq!(sigma.degree(), self.size, "relabeling degree mismatch");
        let tables = self
            .relations
            .iter()
            .map(|r| {
                r.tuples
                    .iter()
                    .map(|t| t.iter().map(|&v| sigma.apply(v)).collect())
                    .collect()
            })
            .collect();
        FinStructure::new(self.signature.clone(), self.size, tables)
            .expect("relabeling preserves validity")
    }

    /// Per vertex: for each relation, the number of tuples with the vertex at
    /// each position, plus whether the constant tuple `(v, .., v)` holds.
    /// For digraphs this is (out-degree, in-degree, loop).
    pub fn vertex_invariant(&self, v: usize) -> Vec<usize> {
        let mut inv = Vec::new();
        for r in &self.relations {
            for pos in 0..r.arity {
                inv.push(r.tuples.iter().filter(|t| t[pos] == v).count());
            }
            inv.push(self.holds_constant(r, v) as usize);
        }
        inv
    }

    fn holds_constant(&self, r: &Relation, v: usize) -> bool {
        let idx = (0..r.arity).fold(0, |acc, _| acc * self.size + v);
        r.dense[idx]
    }

    pub fn to_file(&self) -> StructureFile {
        StructureFile {
            signature: self.signature.relations.clone(),
            size: self.size,
            relations: self
                .signature
                .relations
                .iter()
                .zip(&self.relations)
                .map(|(sym, r)| (sym.name.clone(), r.tuples.iter().cloned().collect()))
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("structure files serialize")
    }

    pub fn from_json_str(text: &str) -> Result<FinStructure> {
        let file: StructureFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            context: "structure file".into(),
            message: e.to_string(),
        })?;
        file.into_structure()
    }
}

impl Serialize for FinStructure {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_file().serialize(serializer)
    }
}

#[inline]
fn cell_index(size: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &v| acc * size + v)
}

/// On-disk form:
/// `{"signature":[{"name":"E","arity":2}], "size": n, "relations": {"E": [[i,j],...]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub signature: Vec<RelationSymbol>,
    pub size: usize,
    #[serde(default)]
    pub relations: BTreeMap<String, Vec<Vec<usize>>>,
}

impl StructureFile {
    pub fn into_structure(self) -> Result<FinStructure> {
        let signature = Signature::new(self.signature).map_err(|e| Error::Parse {
            context: "signature".into(),
            message: e.to_string(),
        })?;
        let mut relations = self.relations;
        if let Some(extra) = relations
            .keys()
            .find(|k| !signature.relations.iter().any(|s| &s.name == *k))
        {
            return Err(Error::Parse {
                context: format!("relations.{extra}"),
                message: "relation not declared in signature".into(),
            });
        }
        let mut tables = Vec::with_capacity(signature.len());
        for sym in &signature.relations {
            let table = relations.remove(&sym.name).unwrap_or_default();
            for (i, t) in table.iter().enumerate() {
                if t.len() != sym.arity {
                    return Err(Error::Parse {
                        context: format!("relations.{}[{i}]", sym.name),
                        message: format!("tuple has length {}, arity is {}", t.len(), sym.arity),
                    });
                }
                if let Some((j, v)) = t.iter().enumerate().find(|(_, &v)| v >= self.size) {
                    return Err(Error::Parse {
                        context: format!("relations.{}[{i}][{j}]", sym.name),
                        message: format!("vertex {v} out of range 0..{}", self.size),
                    });
                }
            }
            tables.push(table);
        }
        FinStructure::new(signature, self.size, tables)
    }
}

impl fmt::Display for FinStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "size {}", self.size)?;
        for (sym, r) in self.signature.relations.iter().zip(&self.relations) {
            write!(f, "; {} = {{", sym.name)?;
            for (i, t) in r.tuples.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "(")?;
                for (j, v) in t.iter().enumerate() {
                    if j > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, ")")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}
