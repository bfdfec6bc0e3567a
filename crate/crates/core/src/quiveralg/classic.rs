//! Projectives, injectives, covers, envelopes, syzygies and Ext.

use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::quiveralg::algebra::Algebra;
use crate::quiveralg::hom::{hom_space, induced_rank};
use crate::quiveralg::module::{DirectSum, Module, ModuleMap};

/// `P(v) = e_v A`: the representation spanned by basis paths leaving `v`.
pub fn projective(alg: &Algebra, v: usize) -> Module {
    let (dims, local, idx) = projective_layout(alg, v);
    let f = alg.field();
    let action = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut m = Matrix::zeros(f, dims[a.target], dims[a.source]);
            for &b in idx.iter().filter(|&&b| alg.basis()[b].target == a.source) {
                for (c, coef) in alg.extend(b, ai) {
                    let r = local[c].expect("extension stays among paths from v");
                    let col = local[b].unwrap();
                    m.set(r, col, (m.get(r, col) + coef) % f.p());
                }
            }
            m
        })
        .collect();
    Module::new(alg, dims, action).expect("projective representation satisfies the relations")
}

fn projective_layout(alg: &Algebra, v: usize) -> (Vec<usize>, Vec<Option<usize>>, Vec<usize>) {
    let idx = alg.basis_from(v);
    let mut dims = vec![0; alg.vertex_count()];
    let mut local = vec![None; alg.dim()];
    for &b in &idx {
        let w = alg.basis()[b].target;
        local[b] = Some(dims[w]);
        dims[w] += 1;
    }
    (dims, local, idx)
}

/// `I(v) = D(A e_v)`, built as the dual of the projective at `v` over the
/// opposite algebra.
pub fn injective(alg: &Algebra, v: usize) -> Module {
    projective(&alg.opposite(), v).dual()
}

pub fn indecomposable_projectives(alg: &Algebra) -> Vec<Module> {
    (0..alg.vertex_count()).map(|v| projective(alg, v)).collect()
}

pub fn indecomposable_injectives(alg: &Algebra) -> Vec<Module> {
    (0..alg.vertex_count()).map(|v| injective(alg, v)).collect()
}

pub fn simples(alg: &Algebra) -> Vec<Module> {
    (0..alg.vertex_count()).map(|v| Module::simple(alg, v)).collect()
}

/// The regular module `A = ⊕ P(v)`.
pub fn regular(alg: &Algebra) -> Module {
    DirectSum::new(alg, &indecomposable_projectives(alg)).module
}

/// The map `P(v) → M` sending the trivial path `e_v` to `elem ∈ M_v`.
pub fn from_projective(alg: &Algebra, v: usize, pv: &Module, m: &Module, elem: &[u32]) -> ModuleMap {
    let (dims, local, idx) = projective_layout(alg, v);
    debug_assert_eq!(dims.as_slice(), pv.dims());
    let f = alg.field();
    let e = Matrix::from_flat(f, elem.len(), 1, &elem.iter().map(|&x| x as i64).collect::<Vec<_>>()).unwrap();
    let mut blocks: Vec<Matrix> = (0..alg.vertex_count()).map(|w| Matrix::zeros(f, m.dim_at(w), dims[w])).collect();
    for &b in &idx {
        let path = &alg.basis()[b];
        let img = m.evaluate(v, &path.arrows).dot(&e);
        let w = path.target;
        blocks[w].paste(0, local[b].unwrap(), &img);
    }
    ModuleMap::new_unchecked(pv, m, blocks)
}

/// Projective cover `⊕ P(v)^{dim top(M)_v} → M`, generated by unit vectors
/// complementing the radical.
pub fn projective_cover(m: &Module) -> ModuleMap {
    let alg = m.algebra();
    let mut parts = Vec::new();
    let mut maps = Vec::new();
    for v in 0..alg.vertex_count() {
        let rad = m.radical_at(v);
        for u in rad.complement_units() {
            let mut elem = vec![0; m.dim_at(v)];
            elem[u] = 1;
            let pv = projective(alg, v);
            maps.push(from_projective(alg, v, &pv, m, &elem));
            parts.push(pv);
        }
    }
    DirectSum::new(alg, &parts).copair(m, &maps)
}

/// Injective envelope `M → ⊕ I(v)^{dim soc(M)_v}`.
pub fn injective_envelope(m: &Module) -> ModuleMap {
    let f = projective_cover(&m.dual()).dual();
    f.retarget(m, &f.target().clone())
}

pub fn is_projective(m: &Module) -> bool {
    let alg = m.algebra();
    let cover_dim: usize = m
        .top_dims()
        .iter()
        .enumerate()
        .map(|(v, &t)| t * projective(alg, v).total_dim())
        .sum();
    cover_dim == m.total_dim()
}

pub fn is_injective(m: &Module) -> bool {
    is_projective(&m.dual())
}

pub fn syzygy(m: &Module, k: usize) -> Module {
    let mut cur = m.clone();
    for _ in 0..k {
        cur = projective_cover(&cur).kernel().0;
    }
    cur
}

pub fn cosyzygy(m: &Module, k: usize) -> Module {
    let mut cur = m.clone();
    for _ in 0..k {
        cur = injective_envelope(&cur).cokernel().0;
    }
    cur
}

/// Projective dimension, or `None` if it exceeds `bound`.
pub fn projective_dimension(m: &Module, bound: usize) -> Option<usize> {
    let mut cur = m.clone();
    for n in 0..=bound {
        if is_projective(&cur) {
            return Some(n);
        }
        cur = syzygy(&cur, 1);
    }
    None
}

pub fn injective_dimension(m: &Module, bound: usize) -> Option<usize> {
    projective_dimension(&m.dual(), bound)
}

/// `[ε: P₀ → M, d₁: P₁ → P₀, …, d_len]` built from projective covers.
pub fn projective_resolution(m: &Module, len: usize) -> Vec<ModuleMap> {
    let mut out = Vec::with_capacity(len + 1);
    let eps = projective_cover(m);
    let mut incl = eps.kernel().1;
    out.push(eps);
    for _ in 0..len {
        let cover = projective_cover(incl.source());
        let d = incl.compose(&cover);
        incl = cover.kernel().1;
        out.push(d);
    }
    out
}

/// `[η: N → I⁰, d⁰: I⁰ → I¹, …]` built from injective envelopes.
pub fn injective_coresolution(n: &Module, len: usize) -> Vec<ModuleMap> {
    projective_resolution(&n.dual(), len).into_iter().map(|f| f.dual()).collect()
}

/// Default Ext bound: nilpotency bound × vertex count + 2.
pub fn default_ext_bound(alg: &Algebra) -> usize {
    alg.nilpotency_bound() * alg.vertex_count() + 2
}

/// `dim Ext^i(m, n)` from a projective resolution of `m`.
pub fn ext_dim(m: &Module, n: &Module, i: usize, bound: usize) -> Result<usize> {
    if i > bound {
        return Err(Error::Invalid(format!("degree {i} above the bound {bound}")));
    }
    let res = projective_resolution(m, i + 1);
    let pi = res[i].source().clone();
    let hom_i = hom_space(&pi, n);
    let out_rank = induced_rank(&hom_i, None, Some(&res[i + 1]));
    let in_rank = if i == 0 { 0 } else { induced_rank(&hom_space(res[i - 1].source(), n), None, Some(&res[i])) };
    Ok(hom_i.dim() - out_rank - in_rank)
}

/// `dim Ext^i(m, n)` from an injective coresolution of `n`.
pub fn ext_dim_via_injectives(m: &Module, n: &Module, i: usize, bound: usize) -> Result<usize> {
    if i > bound {
        return Err(Error::Invalid(format!("degree {i} above the bound {bound}")));
    }
    let cores = injective_coresolution(n, i + 1);
    let ii = cores[i].target().clone();
    let hom_i = hom_space(m, &ii);
    let out_rank = induced_rank(&hom_i, Some(&cores[i + 1]), None);
    let in_rank = if i == 0 { 0 } else { induced_rank(&hom_space(m, cores[i - 1].target()), Some(&cores[i]), None) };
    Ok(hom_i.dim() - out_rank - in_rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiveralg::algebra::{AlgebraPresentation, Quiver, Relation};

    fn a2(p: u32) -> Algebra {
        Algebra::build(&AlgebraPresentation { field: p, quiver: Quiver::new(2, &[(0, 1, "a")]), relations: vec![], nilpotency_bound: None }).unwrap()
    }

    fn dual_numbers(p: u32) -> Algebra {
        Algebra::build(&AlgebraPresentation {
            field: p,
            quiver: Quiver::new(1, &[(0, 0, "x")]),
            relations: vec![Relation::zero_path("x x")],
            nilpotency_bound: None,
        })
        .unwrap()
    }

    #[test]
    fn a2_projectives_and_injectives() {
        let a = a2(2);
        assert_eq!(projective(&a, 0).dims(), &[1, 1]);
        assert_eq!(projective(&a, 1).dims(), &[0, 1]);
        assert_eq!(injective(&a, 0).dims(), &[1, 0]);
        assert_eq!(injective(&a, 1).dims(), &[1, 1]);
        assert_eq!(projective(&a, 0), injective(&a, 1));
    }

    #[test]
    fn dual_numbers_regular_is_injective() {
        let a = dual_numbers(3);
        let p = projective(&a, 0);
        assert_eq!(p.total_dim(), 2);
        assert!(is_injective(&p));
        assert!(is_projective(&injective(&a, 0)));
    }

    #[test]
    fn hom_dimensions() {
        let a = a2(2);
        let s1 = Module::simple(&a, 0);
        let s2 = Module::simple(&a, 1);
        assert_eq!(hom_space(&s1, &s1).dim(), 1);
        assert_eq!(hom_space(&s1, &s2).dim(), 0);
        assert_eq!(hom_space(&projective(&a, 0), &s1).dim(), 1);
    }

    #[test]
    fn covers_and_syzygies() {
        let a = a2(3);
        let s1 = Module::simple(&a, 0);
        let cover = projective_cover(&s1);
        assert!(cover.is_surjective());
        assert_eq!(cover.source().dims(), &[1, 1]);
        assert_eq!(cover.kernel().0.dims(), &[0, 1]);
        assert_eq!(syzygy(&s1, 1), Module::simple(&a, 1));
        assert_eq!(syzygy(&s1, 0), s1);
        let z = Module::zero(&a);
        assert!(projective_cover(&z).source().is_zero());
        let p1 = projective(&a, 0);
        assert!(projective_cover(&p1).is_iso());
        let d = dual_numbers(2);
        let s = Module::simple(&d, 0);
        assert_eq!(syzygy(&s, 1), s);
    }

    #[test]
    fn envelopes() {
        let a = a2(2);
        let s2 = Module::simple(&a, 1);
        let env = injective_envelope(&s2);
        assert!(env.is_injective());
        assert_eq!(env.source(), &s2);
        assert_eq!(env.target().dims(), &[1, 1]);
        assert_eq!(cosyzygy(&s2, 1), Module::simple(&a, 0));
    }

    #[test]
    fn ext_between_a2_simples() {
        for p in [2, 3] {
            let a = a2(p);
            let s1 = Module::simple(&a, 0);
            let s2 = Module::simple(&a, 1);
            assert_eq!(ext_dim(&s1, &s2, 1, 4).unwrap(), 1);
            assert_eq!(ext_dim_via_injectives(&s1, &s2, 1, 4).unwrap(), 1);
            assert_eq!(ext_dim(&s1, &s2, 0, 4).unwrap(), 0);
            assert_eq!(ext_dim(&s2, &s1, 1, 4).unwrap(), 0);
            assert_eq!(ext_dim(&projective(&a, 0), &s2, 1, 4).unwrap(), 0);
        }
    }

    #[test]
    fn hom_from_projective_counts_vertex_dimension() {
        let d = dual_numbers(3);
        let p = projective(&d, 0);
        let s = Module::simple(&d, 0);
        assert_eq!(hom_space(&p, &s).dim(), 1);
        assert_eq!(hom_space(&p, &p).dim(), 2);
        assert_eq!(ext_dim(&s, &s, 3, 5).unwrap(), 1);
    }
}
