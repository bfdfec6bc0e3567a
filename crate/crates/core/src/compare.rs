//! Tensor products over a commutative one-vertex algebra, the dualizing
//! complex given by the injective coresolution of the regular module, and
//! the comparison map `η: F(G) → G ⊗ I` between the balanced-pair functor
//! and tensoring with it.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::approx::{membership, SubcatSpec};
use crate::balanced::is_right_acyclic;
use crate::complexes::{factor_up_to_homotopy, homotopy_inverse, mapping_cone, null_homotopy, ChainMap, Complex, Homotopy};
use crate::equivfunctor::FunctorSession;
use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::gorenstein::{is_gorenstein_injective, GorensteinProfile};
use crate::quiveralg::{indecomposable_injectives, injective_coresolution, regular, Algebra, DirectSum, Module, ModuleMap};

fn require_commutative(alg: &Algebra) -> Result<()> {
    if alg.is_commutative() {
        Ok(())
    } else {
        Err(Error::NotCommutative("tensor products need a commutative one-vertex algebra".into()))
    }
}

/// `M ⊗_R N` as a quotient of `M ⊗_k N`, with the projection `V → Q` and a
/// section `Q → V` by unit vectors.
#[derive(Clone, Debug)]
pub struct TensorModule {
    pub module: Module,
    proj: Matrix,
    section: Matrix,
}

pub fn tensor_modules(m: &Module, n: &Module) -> Result<TensorModule> {
    let alg = m.algebra();
    require_commutative(alg)?;
    let f = alg.field();
    let (dm, dn) = (m.dim_at(0), n.dim_at(0));
    let v = dm * dn;
    let (im, in_) = (Matrix::identity(f, dm), Matrix::identity(f, dn));
    let mut rel = Matrix::zeros(f, v, 0);
    let left: Vec<Matrix> = m.action().iter().map(|x| x.kron(&in_).unwrap()).collect();
    for (mx, nx) in m.action().iter().zip(n.action()) {
        let a = mx.kron(&in_).unwrap().sub(&im.kron(nx).unwrap()).unwrap();
        rel = rel.hstack(&a).unwrap();
    }
    let w = rel.column_space();
    let units = w.complement_units();
    let q = units.len();
    let mut section = Matrix::zeros(f, v, q);
    for (c, &u) in units.iter().enumerate() {
        section.set(u, c, 1);
    }
    let basis = w.hstack(&section).unwrap();
    let inv = basis.inverse().expect("column space plus complement is a basis");
    let proj = inv.submatrix(w.cols(), q, 0, v);
    let action = left.iter().map(|x| proj.dot(x).dot(&section)).collect();
    let module = Module::new(alg, vec![q], action)?;
    Ok(TensorModule { module, proj, section })
}

/// `f ⊗ g` between tensor modules.
pub fn tensor_maps(f: &ModuleMap, g: &ModuleMap, src: &TensorModule, tgt: &TensorModule) -> ModuleMap {
    let k = f.block(0).kron(g.block(0)).unwrap();
    ModuleMap::new_unchecked(&src.module, &tgt.module, vec![tgt.proj.dot(&k).dot(&src.section)])
}

/// The unit isomorphism `M → M ⊗ R`, `m ↦ m ⊗ 1`, followed by `1 ⊗ h` for a
/// map `h: R → N`; returns `m ↦ m ⊗ h(1)` into `M ⊗ N`.
pub fn unit_map(m: &Module, h: &ModuleMap, tm: &TensorModule) -> ModuleMap {
    let alg = m.algebra();
    let one = unit_position(alg);
    let f = alg.field();
    let mut e = Matrix::zeros(f, h.source().dim_at(0), 1);
    e.set(one, 0, 1);
    let u = h.block(0).dot(&e);
    let k = Matrix::identity(f, m.dim_at(0)).kron(&u).unwrap();
    ModuleMap::new_unchecked(m, &tm.module, vec![tm.proj.dot(&k)])
}

/// Index of the trivial path in the basis of the regular module.
fn unit_position(alg: &Algebra) -> usize {
    alg.basis_from(0).iter().position(|&b| alg.basis()[b].arrows.is_empty()).expect("trivial path")
}

/// The total complex of `K^{a,b} = P^a ⊗ Y^b` with differential
/// `d_P ⊗ 1 + (−1)^a 1 ⊗ d_Y`.
#[derive(Clone, Debug)]
pub struct TensorComplex {
    pub complex: Complex,
    pieces: BTreeMap<(i64, i64), TensorModule>,
    sums: BTreeMap<i64, (DirectSum, Vec<(i64, i64)>)>,
}

impl TensorComplex {
    pub fn piece(&self, a: i64, b: i64) -> Option<&TensorModule> {
        self.pieces.get(&(a, b))
    }

    fn slot(&self, n: i64, a: i64) -> Option<usize> {
        self.sums.get(&n).and_then(|(_, idx)| idx.iter().position(|&(x, _)| x == a))
    }

    fn inclusion(&self, n: i64, a: i64) -> ModuleMap {
        let (sum, _) = &self.sums[&n];
        sum.inclusion(self.slot(n, a).unwrap())
    }

    fn projection(&self, n: i64, a: i64) -> ModuleMap {
        let (sum, _) = &self.sums[&n];
        sum.projection(self.slot(n, a).unwrap())
    }
}

pub fn tensor_complex(p: &Complex, y: &Complex) -> Result<TensorComplex> {
    let alg = p.algebra().clone();
    require_commutative(&alg)?;
    let field = alg.field();
    if p.terms().is_empty() || y.terms().is_empty() {
        return Ok(TensorComplex { complex: Complex::zero(&alg), pieces: BTreeMap::new(), sums: BTreeMap::new() });
    }
    let mut pieces = BTreeMap::new();
    for a in p.degrees() {
        for b in y.degrees() {
            pieces.insert((a, b), tensor_modules(p.term(a), y.term(b))?);
        }
    }
    let (lo, hi) = (p.lo() + y.lo(), p.hi() + y.hi());
    let mut sums = BTreeMap::new();
    for n in lo..=hi + 1 {
        let idx: Vec<(i64, i64)> = p.degrees().map(|a| (a, n - a)).filter(|k| pieces.contains_key(k)).collect();
        let parts: Vec<Module> = idx.iter().map(|k| pieces[k].module.clone()).collect();
        sums.insert(n, (DirectSum::new(&alg, &parts), idx));
    }
    let piece_map = |n: i64| -> ModuleMap {
        let (src, sidx) = &sums[&n];
        let (tgt, tidx) = &sums[&(n + 1)];
        let grid: Vec<Vec<Option<ModuleMap>>> = tidx
            .iter()
            .map(|&(a2, b2)| {
                sidx.iter()
                    .map(|&(a, b)| {
                        let s = &pieces[&(a, b)];
                        let t = &pieces[&(a2, b2)];
                        if a2 == a + 1 && b2 == b {
                            Some(tensor_maps(&p.diff(a), &ModuleMap::identity(y.term(b)), s, t))
                        } else if a2 == a && b2 == b + 1 {
                            Some(tensor_maps(&ModuleMap::identity(p.term(a)), &y.diff(b), s, t).scale(field.sign(a)))
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        src.matrix_to(tgt, &grid)
    };
    let complex = Complex::from_fn(&alg, lo, hi, |n| sums[&n].0.module.clone(), piece_map);
    if !complex.is_valid() {
        return Err(Error::InvalidComplex("tensor differential does not square to zero".into()));
    }
    Ok(TensorComplex { complex, pieces, sums })
}

/// `f ⊗ id_Y` between tensor complexes built over the same `Y`.
pub fn tensor_complex_map(f: &ChainMap, src: &TensorComplex, tgt: &TensorComplex, y: &Complex) -> Result<ChainMap> {
    ChainMap::new(&src.complex, &tgt.complex, |n| {
        let (s, sidx) = &src.sums[&n];
        let (t, tidx) = &tgt.sums[&n];
        let grid: Vec<Vec<Option<ModuleMap>>> = tidx
            .iter()
            .map(|&(a2, b2)| {
                sidx.iter()
                    .map(|&(a, b)| {
                        (a == a2 && b == b2).then(|| {
                            tensor_maps(&f.component(a), &ModuleMap::identity(y.term(b)), &src.pieces[&(a, b)], &tgt.pieces[&(a, b)])
                        })
                    })
                    .collect()
            })
            .collect();
        s.matrix_to(t, &grid)
    })
}

/// The injective coresolution `0 → R → I^0 → ⋯ → I^d → 0`.
#[derive(Clone, Debug)]
pub struct DualizingData {
    pub algebra: Algebra,
    /// `I^0 → ⋯ → I^d` in degrees `0..d`.
    pub complex: Complex,
    pub epsilon: ModuleMap,
    /// `R → I^0 → ⋯ → I^d` with `R` in degree −1.
    pub augmented: Complex,
}

pub fn dualizing_data(alg: &Algebra, d: usize) -> Result<DualizingData> {
    require_commutative(alg)?;
    let r = regular(alg);
    let cores = injective_coresolution(&r, d + 1);
    if !cores[d + 1].target().is_zero() {
        return Err(Error::Invalid(format!("regular module has injective dimension above {d}")));
    }
    let di = d as i64;
    let complex = Complex::from_fn(alg, 0, di, |k| cores[k as usize].target().clone(), |k| cores[(k + 1) as usize].clone());
    let augmented = Complex::from_fn(
        alg,
        -1,
        di,
        |k| if k == -1 { r.clone() } else { cores[k as usize].target().clone() },
        |k| if k == -1 { cores[0].clone() } else { cores[(k + 1) as usize].clone() },
    );
    let inj = SubcatSpec::injectives(alg);
    if !complex.terms().iter().all(|t| membership(&inj, t)) || !augmented.is_acyclic() {
        return Err(Error::Invalid("injective coresolution of the regular module is malformed".into()));
    }
    Ok(DualizingData { algebra: alg.clone(), complex, epsilon: cores[0].clone(), augmented })
}

/// `Id ⊗ ε: G → G ⊗ I`, landing in the pieces `G^n ⊗ I^0`.
pub fn unit_chain_map(g: &Complex, dd: &DualizingData, gi: &TensorComplex) -> Result<ChainMap> {
    ChainMap::new(g, &gi.complex, |n| {
        let piece = gi.piece(n, 0).expect("piece G^n ⊗ I^0");
        gi.inclusion(n, n).compose(&unit_map(g.term(n), &dd.epsilon, piece))
    })
}

#[derive(Clone, Debug)]
pub struct EtaWitness {
    pub source: Complex,
    pub theta: ChainMap,
    pub unit: ChainMap,
    pub eta: ChainMap,
    /// Witnesses `η ∘ θ ≃ Id ⊗ ε`.
    pub homotopy: Homotopy,
    pub tensor: TensorComplex,
}

/// Solves for `η: F(G) → G ⊗ I` with `η ∘ θ ≃ Id ⊗ ε`, the map and the
/// homotopy in one linear system.
pub fn build_eta(s: &mut FunctorSession, dd: &DualizingData, g: &Complex) -> Result<EtaWitness> {
    let ct = s.f_object(g)?;
    let tensor = tensor_complex(g, &dd.complex)?;
    let unit = unit_chain_map(g, dd, &tensor)?;
    let (eta, homotopy) = factor_up_to_homotopy(&ct.theta, &unit)
        .ok_or_else(|| Error::FactorizationFailed("η does not exist: θ is not a Y-coresolution".into()))?;
    Ok(EtaWitness { source: g.clone(), theta: ct.theta, unit, eta, homotopy, tensor })
}

/// For `f: G → G'`, checks `η' ∘ F(f) ≃ (f ⊗ 1) ∘ η`.
pub fn eta_naturality(s: &mut FunctorSession, dd: &DualizingData, f: &ChainMap) -> Result<bool> {
    let a = build_eta(s, dd, f.source())?;
    let b = build_eta(s, dd, f.target())?;
    let (ff, _) = s.f_map(f)?;
    let ft = tensor_complex_map(f, &a.tensor, &b.tensor, &dd.complex)?;
    let diff = b.eta.compose(&ff).sub(&ft.compose(&a.eta));
    Ok(null_homotopy(&diff).is_some())
}

/// `Cone(Id ⊗ ε) → P ⊗ Y`, `diag((−1)^{n+1}·unit, id)`; returns whether
/// this is an isomorphism of complexes.
pub fn cone_identification(p: &Complex, dd: &DualizingData, pi: &TensorComplex, unit: &ChainMap) -> Result<bool> {
    let cone = mapping_cone(unit).complex;
    let py = tensor_complex(p, &dd.augmented)?;
    let alg = p.algebra().clone();
    let field = alg.field();
    let id_r = ModuleMap::identity(&regular(&alg));
    let phi = ChainMap::new(&cone, &py.complex, |n| {
        let src = DirectSum::new(&alg, &[p.term(n + 1).clone(), pi.complex.term(n).clone()]);
        let (tgt, idx) = &py.sums[&n];
        let grid: Vec<Vec<Option<ModuleMap>>> = idx
            .iter()
            .map(|&(a, b)| {
                if b == -1 {
                    vec![Some(unit_map(p.term(a), &id_r, &py.pieces[&(a, b)]).scale(field.sign(n + 1))), None]
                } else {
                    vec![None, pi.slot(n, a).map(|_| pi.projection(n, a))]
                }
            })
            .collect();
        src.matrix_to(tgt, &grid)
    });
    Ok(match phi {
        Ok(phi) => cone.degrees().chain(py.complex.degrees()).all(|n| phi.component(n).is_iso()),
        Err(_) => false,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TensorGiCheck {
    pub generator: usize,
    pub injective: usize,
    pub dim: usize,
    pub passed: bool,
}

/// `g ⊗ i` is Gorenstein injective for every Gorenstein-projective generator
/// `g` and indecomposable injective `i`.
pub fn check_tensor_gi(profile: &GorensteinProfile) -> Result<Vec<TensorGiCheck>> {
    let window = profile.window();
    let injectives = indecomposable_injectives(&profile.algebra);
    let mut out = Vec::new();
    for (gi, g) in profile.gproj.generators.iter().enumerate() {
        for (ii, i) in injectives.iter().enumerate() {
            let t = tensor_modules(g, i)?;
            out.push(TensorGiCheck { generator: gi, injective: ii, dim: t.module.total_dim(), passed: is_gorenstein_injective(&t.module, window) });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct EtaCheck {
    pub index: usize,
    pub eta_built: bool,
    /// `η` is a homotopy equivalence.
    pub eta_equivalence: bool,
    /// `P ⊗ Y` is right GProj-acyclic.
    pub tensor_acyclic: bool,
    pub agree: bool,
    pub cone_identified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EtaReport {
    pub note: String,
    pub tensor_gi: Vec<bool>,
    pub complexes: Vec<EtaCheck>,
    pub naturality: Vec<bool>,
    pub passed: bool,
}

pub fn eta_check(s: &mut FunctorSession, dd: &DualizingData, gproj: &SubcatSpec, p: &Complex, index: usize) -> Result<EtaCheck> {
    let w = build_eta(s, dd, p)?;
    let eta_equivalence = homotopy_inverse(&w.eta).is_some();
    let py = tensor_complex(p, &dd.augmented)?;
    let tensor_acyclic = is_right_acyclic(gproj, &py.complex);
    let cone_identified = cone_identification(p, dd, &w.tensor, &w.unit)?;
    Ok(EtaCheck {
        index,
        eta_built: true,
        eta_equivalence,
        tensor_acyclic,
        agree: eta_equivalence == tensor_acyclic,
        cone_identified,
        error: None,
    })
}

/// Runs the Prop. 6.2 pair of checks on every complex, the tensor
/// Gorenstein-injectivity checks on generator pairs, and naturality of `η`
/// on every map.
pub fn verify_eta(profile: &GorensteinProfile, complexes: &[Complex], maps: &[ChainMap], bound: usize) -> Result<EtaReport> {
    let alg = &profile.algebra;
    let dd = dualizing_data(alg, profile.d)?;
    let mut s = FunctorSession::new(&profile.gproj, &profile.ginj, bound);
    let tensor_gi = check_tensor_gi(profile)?.iter().map(|c| c.passed).collect::<Vec<_>>();
    let checks: Vec<EtaCheck> = complexes
        .iter()
        .enumerate()
        .map(|(i, p)| {
            eta_check(&mut s, &dd, &profile.gproj, p, i).unwrap_or_else(|e| EtaCheck {
                index: i,
                eta_built: false,
                eta_equivalence: false,
                tensor_acyclic: false,
                agree: false,
                cone_identified: false,
                error: Some(e.to_string()),
            })
        })
        .collect();
    let naturality: Vec<bool> = maps.iter().map(|f| eta_naturality(&mut s, &dd, f).unwrap_or(false)).collect();
    let passed = tensor_gi.iter().all(|&b| b)
        && checks.iter().all(|c| c.eta_built && c.eta_equivalence && c.tensor_acyclic && c.agree && c.cone_identified)
        && naturality.iter().all(|&b| b);
    Ok(EtaReport {
        note: format!("commutative Gorenstein algebra of dimension {}: the dualizing complex has {} term(s)", profile.d, profile.d + 1),
        tensor_gi,
        complexes: checks,
        naturality,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gorenstein::gorenstein_profile;
    use crate::quiveralg::{projective, AlgebraPresentation, Quiver, Relation};

    fn dual_numbers(p: u32) -> Algebra {
        Algebra::build(&AlgebraPresentation {
            field: p,
            quiver: Quiver::new(1, &[(0, 0, "x")]),
            relations: vec![Relation::zero_path("x x")],
            nilpotency_bound: None,
        })
        .unwrap()
    }

    fn plane(p: u32) -> Algebra {
        Algebra::build(&AlgebraPresentation {
            field: p,
            quiver: Quiver::new(1, &[(0, 0, "x"), (0, 0, "y")]),
            relations: vec![Relation::zero_path("x x"), Relation::zero_path("y y"), Relation::parse(&[(1, "x y"), (-1, "y x")])],
            nilpotency_bound: None,
        })
        .unwrap()
    }

    #[test]
    fn tensor_dimensions() {
        for p in [2, 3] {
            let a = dual_numbers(p);
            let (r, s) = (regular(&a), Module::simple(&a, 0));
            assert_eq!(tensor_modules(&s, &s).unwrap().module.dims(), &[1]);
            assert_eq!(tensor_modules(&r, &r).unwrap().module.dims(), &[2]);
            assert_eq!(tensor_modules(&s, &r).unwrap().module.dims(), &[1]);
            let b = plane(p);
            let rb = regular(&b);
            assert_eq!(tensor_modules(&rb, &rb).unwrap().module.dims(), &[4]);
            assert_eq!(tensor_modules(&rb, &Module::simple(&b, 0)).unwrap().module.dims(), &[1]);
        }
    }

    #[test]
    fn tensor_is_balanced_over_loops() {
        let a = plane(3);
        let r = regular(&a);
        let t = tensor_modules(&r, &r).unwrap();
        for x in r.action() {
            let l = t.proj.dot(&x.kron(&Matrix::identity(a.field(), 4)).unwrap());
            let rr = t.proj.dot(&Matrix::identity(a.field(), 4).kron(x).unwrap());
            assert_eq!(l, rr);
        }
    }

    #[test]
    fn unit_law_is_an_isomorphism() {
        let a = plane(2);
        let r = regular(&a);
        for m in [r.clone(), Module::simple(&a, 0), Module::zero(&a)] {
            let t = tensor_modules(&m, &r).unwrap();
            assert!(unit_map(&m, &ModuleMap::identity(&r), &t).is_iso());
        }
    }

    #[test]
    fn rejects_noncommutative() {
        let a = Algebra::build(&AlgebraPresentation { field: 2, quiver: Quiver::new(2, &[(0, 1, "a")]), relations: vec![], nilpotency_bound: None }).unwrap();
        let p = projective(&a, 0);
        assert!(matches!(tensor_modules(&p, &p), Err(Error::NotCommutative(_))));
    }

    #[test]
    fn tensor_of_two_term_complexes() {
        let a = dual_numbers(3);
        let r = regular(&a);
        let x = ModuleMap::new(&r, &r, vec![r.action()[0].clone()]).unwrap();
        let c = Complex::new(&a, 0, vec![r.clone(), r.clone()], vec![x]).unwrap();
        let t = tensor_complex(&c, &c).unwrap();
        assert_eq!(t.complex.lo(), 0);
        assert_eq!(t.complex.hi(), 2);
        assert_eq!(t.complex.terms().iter().map(|m| m.total_dim()).collect::<Vec<_>>(), vec![2, 4, 2]);
        assert!(t.complex.is_valid());
        let stalk = tensor_complex(&c, &Complex::stalk(&r, 0)).unwrap();
        assert_eq!(stalk.complex.terms().iter().map(|m| m.total_dim()).collect::<Vec<_>>(), vec![2, 2]);
    }

    #[test]
    fn dualizing_data_of_self_injective_ring() {
        let a = dual_numbers(2);
        let dd = dualizing_data(&a, 0).unwrap();
        assert_eq!(dd.complex.terms().len(), 1);
        assert!(dd.epsilon.is_iso());
        assert!(dualizing_data(&Algebra::build(&AlgebraPresentation { field: 2, quiver: Quiver::new(2, &[(0, 1, "a")]), relations: vec![], nilpotency_bound: None }).unwrap(), 1).is_err());
    }

    #[test]
    fn tensor_with_gorenstein_injective() {
        for p in [2, 3] {
            let prof = gorenstein_profile(&dual_numbers(p), 6).unwrap();
            let checks = check_tensor_gi(&prof).unwrap();
            assert!(!checks.is_empty());
            assert!(checks.iter().all(|c| c.passed));
        }
    }

    #[test]
    fn eta_on_stalks_and_two_term_complex() {
        for p in [2, 3] {
            let a = dual_numbers(p);
            let prof = gorenstein_profile(&a, 6).unwrap();
            let r = regular(&a);
            let x = ModuleMap::new(&r, &r, vec![r.action()[0].clone()]).unwrap();
            let two = Complex::new(&a, 0, vec![r.clone(), r.clone()], vec![x]).unwrap();
            let cs = vec![Complex::zero(&a), Complex::stalk(&r, 0), two.clone(), Complex::stalk(&Module::simple(&a, 0), 1)];
            let inc = ChainMap::new(&Complex::stalk(&r, 1), &two, |_| ModuleMap::identity(&r)).unwrap();
            let rep = verify_eta(&prof, &cs, &[inc], 6).unwrap();
            assert!(rep.passed, "{rep:?}");
            assert_eq!(rep.complexes.len(), 4);
        }
    }

    #[test]
    fn eta_over_the_plane() {
        let a = plane(3);
        let prof = gorenstein_profile(&a, 6).unwrap();
        assert_eq!(prof.d, 0);
        let r = regular(&a);
        let y = ModuleMap::new(&r, &r, vec![r.action()[1].clone()]).unwrap();
        let c = Complex::new(&a, -1, vec![r.clone(), r.clone()], vec![y]).unwrap();
        let rep = verify_eta(&prof, &[c], &[], 6).unwrap();
        assert!(rep.passed, "{rep:?}");
    }
}
