//! Gorenstein dimension, Gorenstein projective and injective generators,
//! the complete-resolution window test, and the restriction of the
//! balanced-pair equivalence to projective and injective complexes.

use serde::Serialize;

use crate::approx::{coresolution_dim, left_approximation, membership, resolution_dim, SubcatSpec};
use crate::balanced::{check_balanced_with, check_cotorsion_triple, is_right_acyclic, BalancedReport, CotorsionReport};
use crate::complexes::Complex;
use crate::equivfunctor::FunctorSession;
use crate::error::{Error, Result};
use crate::quiveralg::{
    cosyzygy, ext_dim, indecomposable_injectives, indecomposable_projectives, injective_coresolution, injective_dimension,
    is_injective, is_projective, projective_dimension, projective_resolution, regular, simples, syzygy, Algebra, Module,
    ModuleMap,
};

/// `max(id A_A, id _A A)`, computed as the injective dimension of the
/// regular module and the projective dimension of `D(A)`; `None` if either
/// exceeds `bound`.
pub fn gorenstein_dimension(alg: &Algebra, bound: usize) -> Option<usize> {
    let left = injective_dimension(&regular(alg), bound)?;
    let da: Vec<Module> = indecomposable_injectives(alg);
    let mut right = 0;
    for i in &da {
        right = right.max(projective_dimension(i, bound)?);
    }
    Some(left.max(right))
}

/// Builds the window `P_w → ⋯ → P_0 → Q^0 → ⋯ → Q^{w−1}` around `m` from
/// projective covers on the left and trimmed left projective
/// approximations on the right; `None` if some left approximation is not
/// monic.
pub fn complete_resolution_window(m: &Module, window: usize) -> Option<Complex> {
    let alg = m.algebra();
    let res = projective_resolution(m, window);
    let proj = SubcatSpec::projectives(alg).trimmed(true);
    let mut right: Vec<ModuleMap> = Vec::new();
    let mut cur = m.clone();
    let mut into_cur: Option<ModuleMap> = None;
    for _ in 0..window {
        let th = left_approximation(&proj, &cur).theta;
        if !th.is_injective() {
            return None;
        }
        let (c, pi) = th.cokernel();
        right.push(match &into_cur {
            None => th.clone(),
            Some(p) => th.compose(p),
        });
        into_cur = Some(pi);
        cur = c;
    }
    let w = window as i64;
    // Degrees: P_k at −k, Q^j at j + 1.
    let term = |n: i64| -> Module {
        if n <= 0 {
            res[(-n) as usize].source().clone()
        } else {
            right[(n - 1) as usize].target().clone()
        }
    };
    let terms: Vec<Module> = (-w..=w).map(term).collect();
    let diffs: Vec<ModuleMap> = (-w..w)
        .map(|n| {
            if n < 0 {
                res[(-n) as usize].clone()
            } else if n == 0 {
                right[0].compose(&res[0])
            } else {
                right[n as usize].clone()
            }
        })
        .collect();
    Complex::new(alg, -w, terms, diffs).ok()
}

/// Whether `m` is a cocycle of a complete resolution, tested on a finite
/// window: the window must be acyclic and `Hom(−, P)`-acyclic in its
/// interior degrees for every indecomposable projective `P`.
pub fn is_gorenstein_projective(m: &Module, window: usize) -> bool {
    if m.is_zero() || is_projective(m) {
        return true;
    }
    let Some(c) = complete_resolution_window(m, window.max(2)) else {
        return false;
    };
    let (lo, hi) = (c.lo(), c.hi());
    let interior = |n: i64| n > lo && n < hi;
    if c.cohomology_dims().iter().any(|(n, d)| interior(*n) && d.iter().any(|&x| x != 0)) {
        return false;
    }
    indecomposable_projectives(m.algebra())
        .iter()
        .all(|p| c.hom_to_cohomology(p).iter().all(|&(n, d)| d == 0 || !interior(-n)))
}

pub fn is_gorenstein_injective(m: &Module, window: usize) -> bool {
    is_injective(m) || is_gorenstein_projective(&m.dual(), window)
}

/// Data of an Iwanaga–Gorenstein algebra: its dimension `d`, additive
/// generators of GProj and GInj, and of the class of modules of finite
/// projective dimension.
#[derive(Clone, Debug)]
pub struct GorensteinProfile {
    pub algebra: Algebra,
    pub d: usize,
    pub gproj: SubcatSpec,
    pub ginj: SubcatSpec,
    pub finite_pd: SubcatSpec,
}

impl GorensteinProfile {
    pub fn window(&self) -> usize {
        2 * self.d + 4
    }
}

fn push_new(list: &mut Vec<Module>, m: Module) {
    if m.is_zero() {
        return;
    }
    if !list.is_empty() {
        let spec = SubcatSpec::new("tmp", list.clone()).unwrap();
        if membership(&spec, &m) {
            return;
        }
    }
    list.push(m);
}

/// Generators: projectives with `Ω^d` of the simples, injectives with
/// `Σ^d` of the simples, and projectives, injectives and simples of finite
/// projective dimension for the middle class. Every GP (GI) generator is
/// validated by the window test.
pub fn gorenstein_profile(alg: &Algebra, bound: usize) -> Result<GorensteinProfile> {
    let d = gorenstein_dimension(alg, bound).ok_or_else(|| Error::Invalid(format!("Gorenstein dimension exceeds {bound}")))?;
    let window = 2 * d + 4;
    let mut gp = Vec::new();
    for p in indecomposable_projectives(alg) {
        push_new(&mut gp, p);
    }
    for s in simples(alg) {
        push_new(&mut gp, syzygy(&s, d));
    }
    let mut gi = Vec::new();
    for i in indecomposable_injectives(alg) {
        push_new(&mut gi, i);
    }
    for s in simples(alg) {
        push_new(&mut gi, cosyzygy(&s, d));
    }
    if let Some(g) = gp.iter().find(|g| !is_gorenstein_projective(g, window)) {
        return Err(Error::Invalid(format!("candidate GP generator {:?} fails the window test", g.dims())));
    }
    if let Some(g) = gi.iter().find(|g| !is_gorenstein_injective(g, window)) {
        return Err(Error::Invalid(format!("candidate GI generator {:?} fails the window test", g.dims())));
    }
    let mut l = Vec::new();
    for m in indecomposable_projectives(alg).into_iter().chain(indecomposable_injectives(alg)) {
        push_new(&mut l, m);
    }
    for s in simples(alg) {
        if projective_dimension(&s, d).is_some() {
            push_new(&mut l, s);
        }
    }
    Ok(GorensteinProfile {
        algebra: alg.clone(),
        d,
        gproj: SubcatSpec::new("GProj", gp)?.trimmed(true),
        ginj: SubcatSpec::new("GInj", gi)?.trimmed(true),
        finite_pd: SubcatSpec::new("L", l)?,
    })
}

/// Probe corpus for an algebra: simples, indecomposable projectives and
/// injectives, and syzygies and cosyzygies of simples up to `depth`.
pub fn standard_probes(alg: &Algebra, depth: usize) -> Vec<Module> {
    let mut out: Vec<Module> = Vec::new();
    let mut add = |m: Module| {
        if !m.is_zero() && !out.contains(&m) {
            out.push(m);
        }
    };
    for s in simples(alg) {
        for k in 0..=depth {
            add(syzygy(&s, k));
            add(cosyzygy(&s, k));
        }
    }
    for p in indecomposable_projectives(alg) {
        add(p);
    }
    for i in indecomposable_injectives(alg) {
        add(i);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfileChecks {
    pub cotorsion: CotorsionReport,
    pub gproj_dimension: Option<usize>,
    pub ginj_dimension: Option<usize>,
    pub gorenstein_dimension: usize,
    pub dimensions_agree: bool,
    /// Augmented injective coresolutions of projectives are right
    /// GProj-acyclic.
    pub injective_coresolutions_acyclic: bool,
    /// `Ext^i(g, P) = 0` for GP generators `g`, projectives `P`, `1 ≤ i ≤ bound`.
    pub ext_vanishing: bool,
    pub passed: bool,
}

pub fn profile_checks(profile: &GorensteinProfile, probes: &[Module], bound: usize) -> Result<ProfileChecks> {
    let alg = &profile.algebra;
    let cotorsion = check_cotorsion_triple(&profile.gproj, &profile.finite_pd, &profile.ginj, probes, profile.d.max(1) + 1)?;
    let mut gdim = Some(0);
    let mut idim = Some(0);
    for m in probes {
        gdim = gdim.zip(resolution_dim(&profile.gproj, m, bound)).map(|(a, b)| a.max(b));
        idim = idim.zip(coresolution_dim(&profile.ginj, m, bound)).map(|(a, b)| a.max(b));
    }
    let dimensions_agree = gdim == Some(profile.d) && idim == Some(profile.d);
    let injective_coresolutions_acyclic = indecomposable_projectives(alg).iter().all(|p| {
        let cores = injective_coresolution(p, profile.d + 1);
        let n = cores.len() as i64;
        let aug = Complex::from_fn(
            alg,
            -1,
            n - 1,
            |k| if k == -1 { p.clone() } else { cores[k as usize].target().clone() },
            |k| if k == -1 { cores[0].clone() } else { cores[(k + 1) as usize].clone() },
        );
        // The last map may be truncated; drop its degree from the check.
        is_right_acyclic(&profile.gproj, &aug.window(-1, n - 2))
    });
    let mut ext_vanishing = true;
    for g in &profile.gproj.generators {
        for p in indecomposable_projectives(alg) {
            for i in 1..=bound.min(profile.d + 2) {
                if ext_dim(g, &p, i, bound)? != 0 {
                    ext_vanishing = false;
                }
            }
        }
    }
    let passed = cotorsion.passed && dimensions_agree && injective_coresolutions_acyclic && ext_vanishing;
    Ok(ProfileChecks {
        cotorsion,
        gproj_dimension: gdim,
        ginj_dimension: idim,
        gorenstein_dimension: profile.d,
        dimensions_agree,
        injective_coresolutions_acyclic,
        ext_vanishing,
        passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TermCheck {
    pub index: usize,
    pub image_dims: Vec<usize>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FunctorTermsReport {
    pub balanced: BalancedReport,
    /// `F` of each projective complex has injective terms.
    pub projective_side: Vec<TermCheck>,
    /// `G` of each injective complex has projective terms.
    pub injective_side: Vec<TermCheck>,
    pub passed: bool,
}

fn term_check(index: usize, r: Result<Complex>, good: impl Fn(&Module) -> bool) -> TermCheck {
    match r {
        Ok(c) => TermCheck {
            index,
            image_dims: c.terms().iter().map(Module::total_dim).collect(),
            passed: c.terms().iter().all(good),
            error: None,
        },
        Err(e) => TermCheck { index, image_dims: vec![], passed: false, error: Some(e.to_string()) },
    }
}

pub fn functor_terms_check(profile: &GorensteinProfile, probes: &[Module], proj_complexes: &[Complex], inj_complexes: &[Complex], bound: usize) -> FunctorTermsReport {
    let balanced = check_balanced_with(&profile.gproj, &profile.ginj, probes, &[], bound);
    let mut s = FunctorSession::new(&profile.gproj, &profile.ginj, bound);
    let projective_side = proj_complexes
        .iter()
        .enumerate()
        .map(|(i, c)| term_check(i, s.f_object(c).map(|ct| ct.total), is_injective))
        .collect::<Vec<_>>();
    let injective_side = inj_complexes
        .iter()
        .enumerate()
        .map(|(i, c)| term_check(i, s.g_object(c).map(|at| at.total), is_projective))
        .collect::<Vec<_>>();
    let passed = balanced.passed && projective_side.iter().all(|t| t.passed) && injective_side.iter().all(|t| t.passed);
    FunctorTermsReport { balanced, projective_side, injective_side, passed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiveralg::{projective, AlgebraPresentation, Quiver, Relation};

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

    fn semisimple(p: u32) -> Algebra {
        Algebra::build(&AlgebraPresentation { field: p, quiver: Quiver::new(2, &[]), relations: vec![], nilpotency_bound: None }).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(gorenstein_dimension(&dual_numbers(2), 5), Some(0));
        assert_eq!(gorenstein_dimension(&a2(3), 5), Some(1));
        assert_eq!(gorenstein_dimension(&semisimple(3), 5), Some(0));
    }

    #[test]
    fn window_test() {
        let d = dual_numbers(3);
        assert!(is_gorenstein_projective(&Module::simple(&d, 0), 6));
        assert!(is_gorenstein_injective(&Module::simple(&d, 0), 6));
        let a = a2(2);
        assert!(!is_gorenstein_projective(&Module::simple(&a, 0), 6));
        assert!(is_gorenstein_projective(&projective(&a, 0), 6));
    }

    #[test]
    fn profiles() {
        let p = gorenstein_profile(&dual_numbers(2), 5).unwrap();
        assert_eq!(p.d, 0);
        assert_eq!(p.gproj.generators.len(), 2);
        let q = gorenstein_profile(&a2(3), 5).unwrap();
        assert_eq!(q.d, 1);
        assert_eq!(q.gproj.generators.len(), 2);
        assert!(q.gproj.generators.iter().all(is_projective));
        let s = gorenstein_profile(&semisimple(2), 5).unwrap();
        assert_eq!(s.gproj.generators, simples(&semisimple(2)));
    }

    #[test]
    fn cotorsion_and_functor_terms_over_dual_numbers() {
        let a = dual_numbers(3);
        let prof = gorenstein_profile(&a, 5).unwrap();
        let probes = standard_probes(&a, 2);
        let l = profile_checks(&prof, &probes, 5).unwrap();
        assert!(l.passed, "{l:?}");
        let p = Complex::stalk(&projective(&a, 0), 0);
        let rep = functor_terms_check(&prof, &probes, &[p.clone()], &[p], 5);
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn functor_terms_over_a2() {
        let a = a2(2);
        let prof = gorenstein_profile(&a, 5).unwrap();
        let probes = standard_probes(&a, 2);
        assert!(profile_checks(&prof, &probes, 5).unwrap().passed);
        let p1 = Complex::stalk(&projective(&a, 0), 0);
        let p2 = Complex::stalk(&projective(&a, 1), 0);
        let rep = functor_terms_check(&prof, &probes, &[p1, p2], &[], 5);
        assert!(rep.passed, "{rep:?}");
        assert_eq!(rep.projective_side[1].image_dims, vec![2, 1]);
    }
}
