//! Linear systems whose unknowns are module maps.
//!
//! Each unknown `φ_u` ranges over a Hom space and is written in its basis, so
//! every solution is automatically a module map. An equation reads
//! `Σ c · L ∘ φ_u ∘ R = rhs` for fixed module maps `L`, `R`.

use crate::exactlin::{FieldSpec, Matrix};
use crate::quiveralg::{hom_space, HomSpace, Module, ModuleMap};

#[derive(Clone, Debug)]
struct Term {
    unknown: usize,
    coef: u32,
    left: Option<ModuleMap>,
    right: Option<ModuleMap>,
}

#[derive(Clone, Debug)]
struct Equation {
    source: Module,
    target: Module,
    terms: Vec<Term>,
    rhs: Option<ModuleMap>,
}

#[derive(Clone, Debug)]
pub struct MapSystem {
    field: FieldSpec,
    unknowns: Vec<HomSpace>,
    equations: Vec<Equation>,
}

impl MapSystem {
    pub fn new(field: FieldSpec) -> Self {
        Self { field, unknowns: Vec::new(), equations: Vec::new() }
    }

    /// Adds an unknown map `source → target`; returns its index.
    pub fn unknown(&mut self, source: &Module, target: &Module) -> usize {
        self.unknowns.push(hom_space(source, target));
        self.unknowns.len() - 1
    }

    pub fn unknown_count(&self) -> usize {
        self.unknowns.len()
    }

    /// Starts an equation between maps `source → target` with zero right side.
    pub fn equation(&mut self, source: &Module, target: &Module) -> usize {
        self.equations.push(Equation { source: source.clone(), target: target.clone(), terms: Vec::new(), rhs: None });
        self.equations.len() - 1
    }

    /// Adds `coef · left ∘ φ_unknown ∘ right` to the left side of `eq`.
    pub fn term(&mut self, eq: usize, unknown: usize, coef: u32, left: Option<&ModuleMap>, right: Option<&ModuleMap>) {
        self.equations[eq].terms.push(Term { unknown, coef: coef % self.field.p(), left: left.cloned(), right: right.cloned() });
    }

    /// Adds `rhs` to the right side of `eq`.
    pub fn rhs(&mut self, eq: usize, rhs: &ModuleMap) {
        let e = &mut self.equations[eq];
        e.rhs = Some(match &e.rhs {
            None => rhs.clone(),
            Some(r) => r.add(rhs),
        });
    }

    fn assemble(&self) -> (Matrix, Matrix, Vec<usize>) {
        let p = self.field.p() as u64;
        let mut col_off = vec![0usize; self.unknowns.len() + 1];
        for (u, s) in self.unknowns.iter().enumerate() {
            col_off[u + 1] = col_off[u] + s.dim();
        }
        let mut row_off = vec![0usize; self.equations.len() + 1];
        for (e, eq) in self.equations.iter().enumerate() {
            row_off[e + 1] = row_off[e] + ModuleMap::vector_len(&eq.source, &eq.target);
        }
        let (rows, cols) = (row_off[self.equations.len()], col_off[self.unknowns.len()]);
        let mut a = vec![0u64; rows * cols];
        let mut b = Matrix::zeros(self.field, rows, 1);
        for (e, eq) in self.equations.iter().enumerate() {
            for t in &eq.terms {
                let space = &self.unknowns[t.unknown];
                for (k, h) in space.basis.iter().enumerate() {
                    let mut g = h.clone();
                    if let Some(r) = &t.right {
                        g = g.compose(r);
                    }
                    if let Some(l) = &t.left {
                        g = l.compose(&g);
                    }
                    let col = col_off[t.unknown] + k;
                    for (i, x) in g.vectorize().into_iter().enumerate() {
                        if x != 0 {
                            let slot = &mut a[(row_off[e] + i) * cols + col];
                            *slot = (*slot + t.coef as u64 * x as u64) % p;
                        }
                    }
                }
            }
            if let Some(r) = &eq.rhs {
                for (i, x) in r.vectorize().into_iter().enumerate() {
                    b.set(row_off[e] + i, 0, x);
                }
            }
        }
        let a = Matrix::from_flat(self.field, rows, cols, &a.into_iter().map(|x| x as i64).collect::<Vec<_>>()).unwrap();
        (a, b, col_off)
    }

    fn split(&self, x: &[u32], col_off: &[usize]) -> Vec<ModuleMap> {
        self.unknowns
            .iter()
            .enumerate()
            .map(|(u, s)| s.combine(&x[col_off[u]..col_off[u + 1]]))
            .collect()
    }

    /// One solution (free coordinates zero), or `None` if inconsistent.
    pub fn solve(&self) -> Option<Vec<ModuleMap>> {
        let (a, b, col_off) = self.assemble();
        let x = a.solve(&b).expect("assembled shapes agree")?;
        Some(self.split(&x.column(0), &col_off))
    }

    /// A basis of the solutions of the homogeneous system.
    pub fn solution_space(&self) -> Vec<Vec<ModuleMap>> {
        let (a, _, col_off) = self.assemble();
        let k = a.kernel_basis();
        (0..k.cols()).map(|j| self.split(&k.column(j), &col_off)).collect()
    }
}
