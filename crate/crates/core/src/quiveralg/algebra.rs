//! Quivers with relations and the finite-dimensional algebras they present.
//!
//! Paths are lists of arrows in traversal order: `[a, b]` means "first `a`,
//! then `b`". A representation evaluates that path as `M(b)·M(a)`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, Matrix};

const MAX_SEARCHED_BOUND: usize = 24;
const MAX_PATHS: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: usize, arrows: &[(usize, usize, &str)]) -> Self {
        Self {
            vertices,
            arrows: arrows
                .iter()
                .map(|&(source, target, name)| Arrow { source, target, name: name.to_string() })
                .collect(),
        }
    }

    fn validate(&self) -> Result<()> {
        let mut names = HashSet::new();
        for a in &self.arrows {
            if a.source >= self.vertices || a.target >= self.vertices {
                return Err(Error::Invalid(format!("arrow {} has an endpoint out of range", a.name)));
            }
            if !names.insert(a.name.as_str()) {
                return Err(Error::Invalid(format!("duplicate arrow name {}", a.name)));
            }
        }
        Ok(())
    }

    fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices,
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { source: a.target, target: a.source, name: a.name.clone() })
                .collect(),
        }
    }
}

/// One summand `coeff · path` of a relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RelationTerm {
    pub coeff: i64,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Relation {
    pub terms: Vec<RelationTerm>,
}

impl Relation {
    /// A relation from `(coeff, "a b c")` pairs; arrow names are separated by
    /// whitespace.
    pub fn parse(terms: &[(i64, &str)]) -> Self {
        Self {
            terms: terms
                .iter()
                .map(|&(coeff, p)| RelationTerm { coeff, path: p.split_whitespace().map(str::to_string).collect() })
                .collect(),
        }
    }

    /// The single-path relation `path = 0`.
    pub fn zero_path(path: &str) -> Self {
        Self::parse(&[(1, path)])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraPresentation {
    pub field: u32,
    pub quiver: Quiver,
    #[serde(default)]
    pub relations: Vec<Relation>,
    /// Paths of at least this length vanish. Searched for when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nilpotency_bound: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// A relation with arrow indices and reduced coefficients.
#[derive(Clone, Debug)]
pub struct IndexedRelation {
    pub source: usize,
    pub target: usize,
    pub terms: Vec<(u32, Vec<usize>)>,
}

#[derive(Debug)]
struct PathData {
    quiver: Quiver,
    relations: Vec<IndexedRelation>,
    basis: Vec<Path>,
    /// Normal form of every path shorter than the nilpotency bound.
    normal: HashMap<Path, Vec<(usize, u32)>>,
}

#[derive(Debug)]
struct AlgebraData {
    field: FieldSpec,
    presentation: AlgebraPresentation,
    bound: usize,
    sides: [PathData; 2],
}

/// A finite-dimensional algebra `kQ/I`, together with its opposite.
///
/// Cloning is cheap. [`Algebra::opposite`] shares the same data and flips the
/// orientation of every arrow.
#[derive(Clone)]
pub struct Algebra {
    data: Arc<AlgebraData>,
    flipped: bool,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(GF({}), {} vertices, dim {}{})", self.data.field.p(), self.vertex_count(), self.dim(), if self.flipped { ", opposite" } else { "" })
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.flipped == other.flipped && (Arc::ptr_eq(&self.data, &other.data) || self.data.presentation == other.data.presentation)
    }
}

impl Eq for Algebra {}

impl Algebra {
    pub fn build(pres: &AlgebraPresentation) -> Result<Algebra> {
        let field = FieldSpec::new(pres.field)?;
        pres.quiver.validate()?;
        let forward = index_relations(field, &pres.quiver, &pres.relations)?;
        let bound = match pres.nilpotency_bound {
            Some(n) => {
                if !vanishing_certificate(field, &pres.quiver, &forward, n)? {
                    return Err(Error::InfiniteDimensional(format!("some path of length {n} survives the relations")));
                }
                n
            }
            None => (1..=MAX_SEARCHED_BOUND)
                .find_map(|n| match vanishing_certificate(field, &pres.quiver, &forward, n) {
                    Ok(true) => Some(Ok(n)),
                    Ok(false) => None,
                    Err(e) => Some(Err(e)),
                })
                .transpose()?
                .ok_or_else(|| Error::InfiniteDimensional(format!("no nilpotency bound up to {MAX_SEARCHED_BOUND}")))?,
        };
        let fwd = path_data(field, pres.quiver.clone(), forward, bound)?;
        let opq = pres.quiver.opposite();
        let op_rel = fwd
            .relations
            .iter()
            .map(|r| IndexedRelation {
                source: r.target,
                target: r.source,
                terms: r.terms.iter().map(|(c, p)| (*c, p.iter().rev().copied().collect())).collect(),
            })
            .collect();
        let bwd = path_data(field, opq, op_rel, bound)?;
        Ok(Algebra {
            data: Arc::new(AlgebraData { field, presentation: pres.clone(), bound, sides: [fwd, bwd] }),
            flipped: false,
        })
    }

    fn side(&self) -> &PathData {
        &self.data.sides[self.flipped as usize]
    }

    pub fn field(&self) -> FieldSpec {
        self.data.field
    }

    /// The presentation this algebra (or its opposite) was built from.
    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.data.presentation
    }

    pub fn is_opposite(&self) -> bool {
        self.flipped
    }

    pub fn opposite(&self) -> Algebra {
        Algebra { data: self.data.clone(), flipped: !self.flipped }
    }

    pub fn vertex_count(&self) -> usize {
        self.side().quiver.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.side().quiver.arrows
    }

    pub fn quiver(&self) -> &Quiver {
        &self.side().quiver
    }

    pub fn relations(&self) -> &[IndexedRelation] {
        &self.side().relations
    }

    pub fn nilpotency_bound(&self) -> usize {
        self.data.bound
    }

    pub fn dim(&self) -> usize {
        self.side().basis.len()
    }

    /// Basis paths of the algebra, grouped by source vertex.
    pub fn basis(&self) -> &[Path] {
        &self.side().basis
    }

    /// Basis paths starting at `v`, as indices into [`Algebra::basis`].
    pub fn basis_from(&self, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.side().basis[i].source == v).collect()
    }

    /// Normal form of an arbitrary path as `(basis index, coefficient)` pairs.
    pub fn reduce(&self, path: &Path) -> Vec<(usize, u32)> {
        if path.len() >= self.data.bound {
            return Vec::new();
        }
        self.side().normal.get(path).cloned().unwrap_or_default()
    }

    /// Normal form of `basis[b]` followed by `arrow`, or empty when the two
    /// do not compose.
    pub fn extend(&self, b: usize, arrow: usize) -> Vec<(usize, u32)> {
        let base = &self.side().basis[b];
        let a = &self.arrows()[arrow];
        if base.target != a.source {
            return Vec::new();
        }
        let mut arrows = base.arrows.clone();
        arrows.push(arrow);
        self.reduce(&Path { source: base.source, target: a.target, arrows })
    }

    /// True when the algebra has one vertex and its arrows commute.
    pub fn is_commutative(&self) -> bool {
        if self.vertex_count() != 1 {
            return false;
        }
        let n = self.arrows().len();
        for i in 0..n {
            for j in i + 1..n {
                let ij = self.reduce(&Path { source: 0, target: 0, arrows: vec![i, j] });
                let ji = self.reduce(&Path { source: 0, target: 0, arrows: vec![j, i] });
                if ij != ji {
                    return false;
                }
            }
        }
        true
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<usize> {
        self.side().quiver.arrow_index(name)
    }
}

fn index_relations(field: FieldSpec, q: &Quiver, rels: &[Relation]) -> Result<Vec<IndexedRelation>> {
    let mut out = Vec::new();
    for (ri, r) in rels.iter().enumerate() {
        let mut ends: Option<(usize, usize)> = None;
        let mut acc: BTreeMap<Vec<usize>, u32> = BTreeMap::new();
        if r.terms.is_empty() {
            return Err(Error::MalformedRelation(format!("relation {ri} has no terms")));
        }
        for t in &r.terms {
            if t.path.is_empty() {
                return Err(Error::MalformedRelation(format!("relation {ri} contains an empty path")));
            }
            let mut idx: Vec<usize> = Vec::with_capacity(t.path.len());
            for name in &t.path {
                let a = q
                    .arrow_index(name)
                    .ok_or_else(|| Error::MalformedRelation(format!("relation {ri}: unknown arrow {name}")))?;
                if let Some(&prev) = idx.last() {
                    if q.arrows[prev].target != q.arrows[a].source {
                        return Err(Error::MalformedRelation(format!("relation {ri}: path {:?} does not compose", t.path)));
                    }
                }
                idx.push(a);
            }
            let s = q.arrows[idx[0]].source;
            let e = q.arrows[*idx.last().unwrap()].target;
            match ends {
                None => ends = Some((s, e)),
                Some(se) if se != (s, e) => {
                    return Err(Error::MalformedRelation(format!("relation {ri} mixes non-parallel paths")));
                }
                _ => {}
            }
            let c = acc.entry(idx).or_insert(0);
            *c = (*c + field.reduce(t.coeff)) % field.p();
        }
        let terms: Vec<(u32, Vec<usize>)> = acc.into_iter().filter(|(_, c)| *c != 0).map(|(p, c)| (c, p)).collect();
        if terms.is_empty() {
            continue;
        }
        let (source, target) = ends.unwrap();
        out.push(IndexedRelation { source, target, terms });
    }
    Ok(out)
}

fn all_paths(q: &Quiver, max_len: usize) -> Result<Vec<Path>> {
    let mut out: Vec<Path> = (0..q.vertices).map(|v| Path { source: v, target: v, arrows: vec![] }).collect();
    let mut frontier = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.source == p.target {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path { source: p.source, target: a.target, arrows });
                }
            }
        }
        out.extend(next.iter().cloned());
        if out.len() > MAX_PATHS {
            return Err(Error::InfiniteDimensional("path enumeration exceeded the size cap".into()));
        }
        frontier = next;
    }
    Ok(out)
}

/// Elements `p·r·q` with terms longer than `max_len` dropped. With `exact`,
/// only elements that need no dropping are produced.
fn ideal_spanners(q: &Quiver, rels: &[IndexedRelation], paths: &[Path], max_len: usize, exact: bool) -> Vec<Vec<(Path, u32)>> {
    let mut out = Vec::new();
    for r in rels {
        let min_len = r.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0);
        let max_rel = r.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0);
        for pre in paths.iter().filter(|p| p.target == r.source) {
            for post in paths.iter().filter(|p| p.source == r.target) {
                let outer = pre.len() + post.len();
                if outer + min_len > max_len || (exact && outer + max_rel > max_len) {
                    continue;
                }
                let mut elt = Vec::new();
                for (c, body) in &r.terms {
                    if outer + body.len() > max_len {
                        continue;
                    }
                    let mut arrows = pre.arrows.clone();
                    arrows.extend_from_slice(body);
                    arrows.extend_from_slice(&post.arrows);
                    let target = arrows.last().map_or(pre.source, |&a| q.arrows[a].target);
                    elt.push((Path { source: pre.source, target, arrows }, *c));
                }
                out.push(elt);
            }
        }
    }
    out
}

/// Checks that every path of length `n` lies in the ideal, using only
/// elements `p·r·q` whose terms have length at most `n + max relation length`.
fn vanishing_certificate(field: FieldSpec, q: &Quiver, rels: &[IndexedRelation], n: usize) -> Result<bool> {
    let max_rel = rels.iter().flat_map(|r| r.terms.iter().map(|(_, p)| p.len())).max().unwrap_or(0);
    let len_cap = n + max_rel;
    let paths = all_paths(q, len_cap)?;
    let targets: Vec<&Path> = paths.iter().filter(|p| p.len() == n).collect();
    if targets.is_empty() {
        return Ok(true);
    }
    if rels.is_empty() {
        return Ok(false);
    }
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let outer = all_paths(q, n)?;
    let full = ideal_spanners(q, rels, &outer, len_cap, true);
    let mut g = Matrix::zeros(field, full.len(), paths.len());
    for (r, e) in full.iter().enumerate() {
        for (p, c) in e {
            let col = index[p];
            let v = (g.get(r, col) + c) % field.p();
            g.set(r, col, v);
        }
    }
    let base_rank = g.rank();
    let mut t = Matrix::zeros(field, targets.len(), paths.len());
    for (r, p) in targets.iter().enumerate() {
        t.set(r, index[*p], 1);
    }
    let both = g.vstack(&t)?;
    Ok(both.rank() == base_rank)
}

fn path_data(field: FieldSpec, quiver: Quiver, relations: Vec<IndexedRelation>, bound: usize) -> Result<PathData> {
    let short: Vec<Path> = if bound == 0 { Vec::new() } else { all_paths(&quiver, bound - 1)? };
    // Longest paths first, so the surviving basis prefers short paths.
    let mut cols = short.clone();
    cols.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let index: HashMap<&Path, usize> = cols.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let max_len = bound.saturating_sub(1);
    let spanners = ideal_spanners(&quiver, &relations, &short, max_len, false);
    let mut g = Matrix::zeros(field, spanners.len(), cols.len());
    for (r, e) in spanners.iter().enumerate() {
        for (p, c) in e {
            let col = index[p];
            let v = (g.get(r, col) + c) % field.p();
            g.set(r, col, v);
        }
    }
    let rr = g.rref();
    let mut pivot_row = vec![None; cols.len()];
    for (i, &c) in rr.pivots.iter().enumerate() {
        pivot_row[c] = Some(i);
    }
    let mut basis: Vec<Path> = (0..cols.len()).filter(|&c| pivot_row[c].is_none()).map(|c| cols[c].clone()).collect();
    basis.sort_by(|a, b| a.source.cmp(&b.source).then(a.len().cmp(&b.len())).then_with(|| a.cmp(b)));
    let bindex: HashMap<&Path, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut normal = HashMap::new();
    for (c, p) in cols.iter().enumerate() {
        let nf = match pivot_row[c] {
            None => vec![(bindex[p], 1)],
            Some(r) => {
                let mut v: Vec<(usize, u32)> = (0..cols.len())
                    .filter(|&k| k != c && pivot_row[k].is_none())
                    .filter_map(|k| {
                        let e = rr.matrix.get(r, k);
                        (e != 0).then(|| (bindex[&cols[k]], field.p() - e))
                    })
                    .collect();
                v.sort();
                v
            }
        };
        normal.insert(p.clone(), nf);
    }
    Ok(PathData { quiver, relations, basis, normal })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(p: u32, q: Quiver, rels: Vec<Relation>) -> AlgebraPresentation {
        AlgebraPresentation { field: p, quiver: q, relations: rels, nilpotency_bound: None }
    }

    #[test]
    fn a2_has_dimension_three() {
        let a = Algebra::build(&pres(2, Quiver::new(2, &[(0, 1, "a")]), vec![])).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.opposite().dim(), 3);
    }

    #[test]
    fn dual_numbers_have_dimension_two() {
        let a = Algebra::build(&pres(3, Quiver::new(1, &[(0, 0, "x")]), vec![Relation::zero_path("x x")])).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.nilpotency_bound(), 2);
        assert!(a.is_commutative());
    }

    #[test]
    fn free_loop_is_infinite() {
        let err = Algebra::build(&pres(2, Quiver::new(1, &[(0, 0, "x")]), vec![])).unwrap_err();
        assert!(matches!(err, Error::InfiniteDimensional(_)));
    }

    #[test]
    fn explicit_bound_too_small_is_rejected() {
        let mut pr = pres(2, Quiver::new(1, &[(0, 0, "x")]), vec![Relation::zero_path("x x x")]);
        pr.nilpotency_bound = Some(2);
        assert!(Algebra::build(&pr).is_err());
        pr.nilpotency_bound = Some(3);
        assert_eq!(Algebra::build(&pr).unwrap().dim(), 3);
    }

    #[test]
    fn commuting_squares_algebra() {
        let q = Quiver::new(1, &[(0, 0, "x"), (0, 0, "y")]);
        let rels = vec![
            Relation::parse(&[(1, "x y"), (-1, "y x")]),
            Relation::zero_path("x x"),
            Relation::zero_path("y y"),
        ];
        let a = Algebra::build(&pres(3, q, rels)).unwrap();
        assert_eq!(a.dim(), 4);
        assert!(a.is_commutative());
    }

    #[test]
    fn malformed_relations() {
        let q = Quiver::new(2, &[(0, 1, "a"), (1, 0, "b")]);
        let bad = |r: Relation| Algebra::build(&pres(2, q.clone(), vec![r])).unwrap_err();
        assert!(matches!(bad(Relation::zero_path("a a")), Error::MalformedRelation(_)));
        assert!(matches!(bad(Relation::parse(&[(1, "a b"), (1, "b a")])), Error::MalformedRelation(_)));
        assert!(matches!(bad(Relation::zero_path("c")), Error::MalformedRelation(_)));
        assert!(matches!(bad(Relation { terms: vec![RelationTerm { coeff: 1, path: vec![] }] }), Error::MalformedRelation(_)));
    }

    #[test]
    fn cyclic_nakayama_basis() {
        let q = Quiver::new(2, &[(0, 1, "a"), (1, 0, "b")]);
        let a = Algebra::build(&pres(2, q, vec![Relation::zero_path("a b"), Relation::zero_path("b a")])).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.basis_from(0).len(), 2);
    }
}
