//! Representations of a bound quiver and the maps between them.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, Matrix};
use crate::quiveralg::algebra::Algebra;

/// A finite-dimensional representation: one vector space per vertex and one
/// matrix per arrow (`dims[target] × dims[source]`).
#[derive(Clone)]
pub struct Module {
    alg: Algebra,
    dims: Vec<usize>,
    action: Vec<Matrix>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module{:?}", self.dims)
    }
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.action == other.action && self.alg == other.alg
    }
}

impl Eq for Module {}

impl Hash for Module {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dims.hash(state);
        self.action.hash(state);
    }
}

impl Module {
    /// Builds a module, checking matrix shapes and every relation.
    pub fn new(alg: &Algebra, dims: Vec<usize>, action: Vec<Matrix>) -> Result<Module> {
        if dims.len() != alg.vertex_count() {
            return Err(Error::InvalidModule(format!(
                "{} dimensions given for {} vertices",
                dims.len(),
                alg.vertex_count()
            )));
        }
        if action.len() != alg.arrows().len() {
            return Err(Error::InvalidModule(format!(
                "{} matrices given for {} arrows",
                action.len(),
                alg.arrows().len()
            )));
        }
        for (m, a) in action.iter().zip(alg.arrows()) {
            if m.field() != alg.field() {
                return Err(Error::FieldMismatch(m.field().p(), alg.field().p()));
            }
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::InvalidModule(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.name,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let m = Module { alg: alg.clone(), dims, action };
        for (ri, r) in alg.relations().iter().enumerate() {
            let mut acc = Matrix::zeros(alg.field(), m.dims[r.target], m.dims[r.source]);
            for (c, path) in &r.terms {
                acc = acc.add(&m.evaluate(r.source, path).scale(*c))?;
            }
            if !acc.is_zero() {
                return Err(Error::InvalidModule(format!("relation {ri} does not vanish")));
            }
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(alg: &Algebra, dims: Vec<usize>, action: Vec<Matrix>) -> Module {
        let m = Module { alg: alg.clone(), dims, action };
        debug_assert!(Module::new(alg, m.dims.clone(), m.action.clone()).is_ok(), "invalid module constructed internally");
        m
    }

    pub fn zero(alg: &Algebra) -> Module {
        let dims = vec![0; alg.vertex_count()];
        let action = alg.arrows().iter().map(|_| Matrix::zeros(alg.field(), 0, 0)).collect();
        Module { alg: alg.clone(), dims, action }
    }

    pub fn simple(alg: &Algebra, v: usize) -> Module {
        let mut dims = vec![0; alg.vertex_count()];
        dims[v] = 1;
        let action = alg
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(alg.field(), dims[a.target], dims[a.source]))
            .collect();
        Module { alg: alg.clone(), dims, action }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn field(&self) -> FieldSpec {
        self.alg.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// The linear map of a path starting at `source` (identity for the empty
    /// path).
    pub fn evaluate(&self, source: usize, path: &[usize]) -> Matrix {
        let mut m = Matrix::identity(self.field(), self.dims[source]);
        for &a in path {
            m = self.action[a].dot(&m);
        }
        m
    }

    /// The module `D(M) = Hom_k(M, k)` over the opposite algebra.
    pub fn dual(&self) -> Module {
        Module {
            alg: self.alg.opposite(),
            dims: self.dims.clone(),
            action: self.action.iter().map(Matrix::transpose).collect(),
        }
    }

    /// Dimension of the top `M / rad M` at each vertex.
    pub fn top_dims(&self) -> Vec<usize> {
        (0..self.dims.len()).map(|v| self.dims[v] - self.radical_at(v).cols()).collect()
    }

    /// A basis (as columns) of `(rad M)_v`, the sum of images of arrows into `v`.
    pub fn radical_at(&self, v: usize) -> Matrix {
        let mut span = Matrix::zeros(self.field(), self.dims[v], 0);
        for (a, arrow) in self.alg.arrows().iter().enumerate() {
            if arrow.target == v {
                span = span.hstack(&self.action[a]).expect("same row count");
            }
        }
        span.column_space()
    }

    /// Dimension of the socle at each vertex.
    pub fn socle_dims(&self) -> Vec<usize> {
        self.dual().top_dims()
    }
}

/// A morphism of representations, one matrix per vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    blocks: Vec<Matrix>,
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMap({:?} -> {:?}, {:?})", self.source.dims, self.target.dims, self.blocks)
    }
}

impl ModuleMap {
    /// Builds a map, checking shapes and commutativity with every arrow.
    pub fn new(source: &Module, target: &Module, blocks: Vec<Matrix>) -> Result<ModuleMap> {
        if source.alg != target.alg {
            return Err(Error::AlgebraMismatch);
        }
        if blocks.len() != source.dims.len() {
            return Err(Error::InvalidMap(format!("{} blocks for {} vertices", blocks.len(), source.dims.len())));
        }
        for (v, b) in blocks.iter().enumerate() {
            if b.shape() != (target.dims[v], source.dims[v]) {
                return Err(Error::InvalidMap(format!(
                    "block {v} is {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    target.dims[v],
                    source.dims[v]
                )));
            }
        }
        let f = ModuleMap { source: source.clone(), target: target.clone(), blocks };
        if !f.commutes() {
            return Err(Error::InvalidMap("blocks do not commute with the arrow actions".into()));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: &Module, target: &Module, blocks: Vec<Matrix>) -> ModuleMap {
        let f = ModuleMap { source: source.clone(), target: target.clone(), blocks };
        debug_assert!(f.commutes(), "non-commuting module map constructed internally");
        f
    }

    fn commutes(&self) -> bool {
        self.source.alg.arrows().iter().enumerate().all(|(a, arrow)| {
            self.blocks[arrow.target].dot(&self.source.action[a]) == self.target.action[a].dot(&self.blocks[arrow.source])
        })
    }

    pub fn zero(source: &Module, target: &Module) -> ModuleMap {
        let f = source.field();
        let blocks = (0..source.dims.len()).map(|v| Matrix::zeros(f, target.dims[v], source.dims[v])).collect();
        ModuleMap { source: source.clone(), target: target.clone(), blocks }
    }

    pub fn identity(m: &Module) -> ModuleMap {
        let blocks = m.dims.iter().map(|&d| Matrix::identity(m.field(), d)).collect();
        ModuleMap { source: m.clone(), target: m.clone(), blocks }
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn block(&self, v: usize) -> &Matrix {
        &self.blocks[v]
    }

    pub fn field(&self) -> FieldSpec {
        self.source.field()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &ModuleMap) -> ModuleMap {
        assert_eq!(g.target.dims, self.source.dims, "composing maps with mismatched middle module");
        let blocks = self.blocks.iter().zip(&g.blocks).map(|(a, b)| a.dot(b)).collect();
        ModuleMap { source: g.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn try_compose(&self, g: &ModuleMap) -> Result<ModuleMap> {
        if g.target.dims != self.source.dims {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {:?}->{:?} after {:?}->{:?}",
                self.source.dims, self.target.dims, g.source.dims, g.target.dims
            )));
        }
        Ok(self.compose(g))
    }

    fn zip(&self, other: &ModuleMap, sub: bool) -> ModuleMap {
        assert_eq!(self.source.dims, other.source.dims, "adding maps with different sources");
        assert_eq!(self.target.dims, other.target.dims, "adding maps with different targets");
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| if sub { a.sub(b).unwrap() } else { a.add(b).unwrap() })
            .collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        self.zip(other, false)
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        self.zip(other, true)
    }

    pub fn neg(&self) -> ModuleMap {
        self.scale(self.field().minus_one())
    }

    pub fn scale(&self, s: u32) -> ModuleMap {
        ModuleMap { source: self.source.clone(), target: self.target.clone(), blocks: self.blocks.iter().map(|b| b.scale(s)).collect() }
    }

    /// Replaces source and target by modules with the same dimensions and
    /// actions (used when the same module was rebuilt elsewhere).
    pub fn retarget(&self, source: &Module, target: &Module) -> ModuleMap {
        debug_assert_eq!(source.dims, self.source.dims);
        debug_assert_eq!(target.dims, self.target.dims);
        ModuleMap { source: source.clone(), target: target.clone(), blocks: self.blocks.clone() }
    }

    /// `D(f): D(N) → D(M)` over the opposite algebra.
    pub fn dual(&self) -> ModuleMap {
        ModuleMap {
            source: self.target.dual(),
            target: self.source.dual(),
            blocks: self.blocks.iter().map(Matrix::transpose).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.source.dims == self.target.dims && self.is_injective()
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    /// The kernel with its inclusion into the source.
    pub fn kernel(&self) -> (Module, ModuleMap) {
        let alg = self.source.alg.clone();
        let incl: Vec<Matrix> = self.blocks.iter().map(Matrix::kernel_basis).collect();
        let dims: Vec<usize> = incl.iter().map(Matrix::cols).collect();
        let lefts: Vec<Matrix> = incl.iter().map(|i| i.left_inverse().expect("kernel basis has full column rank")).collect();
        let action = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| lefts[arrow.target].dot(&self.source.action[a]).dot(&incl[arrow.source]))
            .collect();
        let k = Module::new_unchecked(&alg, dims, action);
        let iota = ModuleMap::new_unchecked(&k, &self.source, incl);
        (k, iota)
    }

    /// The cokernel with its projection from the target.
    pub fn cokernel(&self) -> (Module, ModuleMap) {
        let alg = self.source.alg.clone();
        let proj: Vec<Matrix> = self.blocks.iter().map(Matrix::cokernel_projection).collect();
        let dims: Vec<usize> = proj.iter().map(Matrix::rows).collect();
        let rights: Vec<Matrix> = proj.iter().map(|p| p.right_inverse().expect("projection has full row rank")).collect();
        let action = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| proj[arrow.target].dot(&self.target.action[a]).dot(&rights[arrow.source]))
            .collect();
        let c = Module::new_unchecked(&alg, dims, action);
        let pi = ModuleMap::new_unchecked(&self.target, &c, proj);
        (c, pi)
    }

    /// The image with the factorization `self = incl ∘ onto`.
    pub fn image(&self) -> (Module, ModuleMap, ModuleMap) {
        let alg = self.source.alg.clone();
        let incl: Vec<Matrix> = self.blocks.iter().map(Matrix::column_space).collect();
        let dims: Vec<usize> = incl.iter().map(Matrix::cols).collect();
        let lefts: Vec<Matrix> = incl.iter().map(|i| i.left_inverse().expect("column space basis")).collect();
        let action = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| lefts[arrow.target].dot(&self.target.action[a]).dot(&incl[arrow.source]))
            .collect();
        let im = Module::new_unchecked(&alg, dims, action);
        let onto_blocks = self.blocks.iter().zip(&lefts).map(|(b, l)| l.dot(b)).collect();
        let onto = ModuleMap::new_unchecked(&self.source, &im, onto_blocks);
        let into = ModuleMap::new_unchecked(&im, &self.target, incl);
        (im, onto, into)
    }

    /// Concatenation of all blocks, row-major, vertex by vertex.
    pub fn vectorize(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| b.entries().iter().copied()).collect()
    }

    /// Inverse of [`ModuleMap::vectorize`]; the caller guarantees the result
    /// commutes with the arrows.
    pub(crate) fn from_vector(source: &Module, target: &Module, v: &[u32]) -> ModuleMap {
        let f = source.field();
        let mut off = 0;
        let mut blocks = Vec::with_capacity(source.dims.len());
        for w in 0..source.dims.len() {
            let (r, c) = (target.dims[w], source.dims[w]);
            let e: Vec<i64> = v[off..off + r * c].iter().map(|&x| x as i64).collect();
            blocks.push(Matrix::from_flat(f, r, c, &e).unwrap());
            off += r * c;
        }
        ModuleMap::new_unchecked(source, target, blocks)
    }

    pub fn vector_len(source: &Module, target: &Module) -> usize {
        source.dims.iter().zip(&target.dims).map(|(a, b)| a * b).sum()
    }
}

/// A direct sum `⊕ parts` with its structure maps. At each vertex the
/// coordinates of the parts are concatenated in order.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Module,
    pub parts: Vec<Module>,
    offsets: Vec<Vec<usize>>,
}

impl DirectSum {
    pub fn new(alg: &Algebra, parts: &[Module]) -> DirectSum {
        let n = alg.vertex_count();
        let mut offsets = Vec::with_capacity(parts.len());
        let mut dims = vec![0; n];
        for p in parts {
            offsets.push(dims.clone());
            for v in 0..n {
                dims[v] += p.dims[v];
            }
        }
        let f = alg.field();
        let action = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let mut m = Matrix::zeros(f, dims[arrow.target], dims[arrow.source]);
                for (i, p) in parts.iter().enumerate() {
                    m.paste(offsets[i][arrow.target], offsets[i][arrow.source], &p.action[a]);
                }
                m
            })
            .collect();
        let module = Module::new_unchecked(alg, dims, action);
        DirectSum { module, parts: parts.to_vec(), offsets }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn inclusion(&self, i: usize) -> ModuleMap {
        let p = &self.parts[i];
        let blocks = (0..p.dims.len()).map(|v| self.inclusion_block(i, v)).collect();
        ModuleMap::new_unchecked(p, &self.module, blocks)
    }

    pub fn projection(&self, i: usize) -> ModuleMap {
        let p = &self.parts[i];
        let blocks = (0..p.dims.len()).map(|v| self.inclusion_block(i, v).transpose()).collect();
        ModuleMap::new_unchecked(&self.module, p, blocks)
    }

    fn inclusion_block(&self, i: usize, v: usize) -> Matrix {
        let p = &self.parts[i];
        let f = p.field();
        let mut m = Matrix::zeros(f, self.module.dims[v], p.dims[v]);
        m.paste(self.offsets[i][v], 0, &Matrix::identity(f, p.dims[v]));
        m
    }

    /// The map `⊕ parts → target` whose restriction to part `i` is `maps[i]`.
    pub fn copair(&self, target: &Module, maps: &[ModuleMap]) -> ModuleMap {
        let f = target.field();
        let blocks = (0..target.dims.len())
            .map(|v| {
                let mut m = Matrix::zeros(f, target.dims[v], self.module.dims[v]);
                for (i, g) in maps.iter().enumerate() {
                    m.paste(0, self.offsets[i][v], &g.blocks[v]);
                }
                m
            })
            .collect();
        ModuleMap::new_unchecked(&self.module, target, blocks)
    }

    /// The map `source → ⊕ parts` whose component in part `i` is `maps[i]`.
    pub fn pair(&self, source: &Module, maps: &[ModuleMap]) -> ModuleMap {
        let f = source.field();
        let blocks = (0..source.dims.len())
            .map(|v| {
                let mut m = Matrix::zeros(f, self.module.dims[v], source.dims[v]);
                for (i, g) in maps.iter().enumerate() {
                    m.paste(self.offsets[i][v], 0, &g.blocks[v]);
                }
                m
            })
            .collect();
        ModuleMap::new_unchecked(source, &self.module, blocks)
    }

    /// A map between direct sums from a grid of components; `grid[r][c]` maps
    /// part `c` of `self` into part `r` of `target`. Missing entries are zero.
    pub fn matrix_to(&self, target: &DirectSum, grid: &[Vec<Option<ModuleMap>>]) -> ModuleMap {
        let f = self.module.field();
        let n = self.module.dims.len();
        let blocks = (0..n)
            .map(|v| {
                let mut m = Matrix::zeros(f, target.module.dims[v], self.module.dims[v]);
                for (r, row) in grid.iter().enumerate() {
                    for (c, entry) in row.iter().enumerate() {
                        if let Some(g) = entry {
                            m.paste(target.offsets[r][v], self.offsets[c][v], &g.blocks[v]);
                        }
                    }
                }
                m
            })
            .collect();
        ModuleMap::new_unchecked(&self.module, &target.module, blocks)
    }

    /// Component `part r of target ← part c of self` of a map between sums.
    pub fn component(&self, f: &ModuleMap, target: &DirectSum, r: usize, c: usize) -> ModuleMap {
        target.projection(r).compose(f).compose(&self.inclusion(c))
    }
}
