//! Hom spaces between representations.

use crate::exactlin::Matrix;
use crate::quiveralg::module::{Module, ModuleMap};

/// A basis of `Hom(source, target)` together with its coordinate matrix
/// (one vectorized basis map per column).
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Module,
    pub target: Module,
    pub basis: Vec<ModuleMap>,
    coords: Matrix,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `f` in the basis, or `None` if `f` is not a module map
    /// between these modules.
    pub fn coordinates(&self, f: &ModuleMap) -> Option<Vec<u32>> {
        let v = f.vectorize();
        let b = Matrix::from_flat(self.source.field(), v.len(), 1, &v.iter().map(|&x| x as i64).collect::<Vec<_>>()).ok()?;
        self.coords.solve(&b).ok().flatten().map(|x| x.column(0))
    }

    /// The linear combination `Σ λ_t basis[t]`.
    pub fn combine(&self, coeffs: &[u32]) -> ModuleMap {
        let p = self.source.field().p() as u64;
        let n = ModuleMap::vector_len(&self.source, &self.target);
        let mut v = vec![0u64; n];
        for (t, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (slot, x) in v.iter_mut().zip(self.basis[t].vectorize()) {
                *slot = (*slot + c as u64 * x as u64) % p;
            }
        }
        let v: Vec<u32> = v.into_iter().map(|x| x as u32).collect();
        ModuleMap::from_vector(&self.source, &self.target, &v)
    }
}

/// A basis of `Hom(m, n)`, as the null space of the commuting-square system
/// `B_t · M(a) − N(a) · B_s = 0` over all arrows `a: s → t`.
pub fn hom_space(m: &Module, n: &Module) -> HomSpace {
    let alg = m.algebra();
    let f = alg.field();
    let p = f.p() as u64;
    let nv = alg.vertex_count();
    let mut off = vec![0usize; nv + 1];
    for v in 0..nv {
        off[v + 1] = off[v] + n.dim_at(v) * m.dim_at(v);
    }
    let unknowns = off[nv];
    let rows: usize = alg.arrows().iter().map(|a| n.dim_at(a.target) * m.dim_at(a.source)).sum();
    let mut sys = Matrix::zeros(f, rows, unknowns);
    let mut row0 = 0;
    for (ai, a) in alg.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let ma = &m.action()[ai];
        let na = &n.action()[ai];
        let (nt, ms, mt, ns) = (n.dim_at(t), m.dim_at(s), m.dim_at(t), n.dim_at(s));
        for r in 0..nt {
            for c in 0..ms {
                let row = row0 + r * ms + c;
                // + Σ_k B_t[r,k] M(a)[k,c]
                for k in 0..mt {
                    let x = ma.get(k, c);
                    if x != 0 {
                        let col = off[t] + r * mt + k;
                        let cur = sys.get(row, col) as u64;
                        sys.set(row, col, ((cur + x as u64) % p) as u32);
                    }
                }
                // − Σ_k N(a)[r,k] B_s[k,c]
                for k in 0..ns {
                    let x = na.get(r, k);
                    if x != 0 {
                        let col = off[s] + k * ms + c;
                        let cur = sys.get(row, col) as u64;
                        sys.set(row, col, ((cur + p - x as u64) % p) as u32);
                    }
                }
            }
        }
        row0 += nt * ms;
    }
    let coords = sys.kernel_basis();
    let basis = (0..coords.cols()).map(|j| ModuleMap::from_vector(m, n, &coords.column(j))).collect();
    HomSpace { source: m.clone(), target: n.clone(), basis, coords }
}

/// Rank of the linear map `Hom(a, b) → (space of maps)` given by
/// `φ ↦ left ∘ φ ∘ right`, measured on the span of `space`.
pub fn induced_rank(space: &HomSpace, left: Option<&ModuleMap>, right: Option<&ModuleMap>) -> usize {
    if space.basis.is_empty() {
        return 0;
    }
    let images: Vec<Vec<u32>> = space
        .basis
        .iter()
        .map(|phi| {
            let mut g = phi.clone();
            if let Some(r) = right {
                g = g.compose(r);
            }
            if let Some(l) = left {
                g = l.compose(&g);
            }
            g.vectorize()
        })
        .collect();
    rank_of_vectors(space.source.field(), &images)
}

pub(crate) fn rank_of_vectors(f: crate::exactlin::FieldSpec, vs: &[Vec<u32>]) -> usize {
    let len = vs.first().map_or(0, Vec::len);
    if vs.is_empty() || len == 0 {
        return 0;
    }
    let flat: Vec<i64> = vs.iter().flat_map(|v| v.iter().map(|&x| x as i64)).collect();
    Matrix::from_flat(f, vs.len(), len, &flat).unwrap().rank()
}
