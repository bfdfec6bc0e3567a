//! Acyclicity tests against a subcategory, balanced-pair verification,
//! the balanced Hom isomorphism, the horseshoe construction and cotorsion
//! triple checks.

use serde::Serialize;

use crate::approx::{
    coresolution, coresolve, factor_through, is_admissible, is_coadmissible, left_approximation, membership,
    resolution, resolution_dim, coresolution_dim, resolve, right_approximation, Coresolution, Resolution, Stop,
    SubcatSpec,
};
use crate::complexes::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::mapsolve::MapSystem;
use crate::quiveralg::{
    default_ext_bound, ext_dim, hom_space, indecomposable_injectives, indecomposable_projectives, rank_of_vectors,
    DirectSum, HomSpace, Module, ModuleMap,
};

/// `Hom(g, z)` is acyclic for every generator `g`.
pub fn is_right_acyclic(x: &SubcatSpec, z: &Complex) -> bool {
    x.generators.iter().all(|g| z.hom_from_cohomology(g).iter().all(|&(_, d)| d == 0))
}

/// `Hom(z, g)` is acyclic for every generator `g`.
pub fn is_left_acyclic(y: &SubcatSpec, z: &Complex) -> bool {
    y.generators.iter().all(|g| z.hom_to_cohomology(g).iter().all(|&(_, d)| d == 0))
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeCheck {
    pub probe: usize,
    /// Length of the (co)resolution used; `None` when it was truncated at
    /// the bound.
    pub length: Option<usize>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AcyclicityCheck {
    pub complex: usize,
    pub right_acyclic: bool,
    pub left_acyclic: bool,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SideSummary {
    pub name: String,
    /// Approximations of every probe satisfy the surjectivity rank check.
    pub approximations_verified: bool,
    pub admissible: bool,
    pub structural: bool,
    pub failing_probes: Vec<usize>,
    /// Max (co)resolution dimension over the probes, `None` if some probe
    /// exceeds the bound.
    pub dimension: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BalancedReport {
    pub x: SideSummary,
    pub y: SideSummary,
    pub bp1: Vec<ProbeCheck>,
    pub bp2: Vec<ProbeCheck>,
    pub acyclicity: Vec<AcyclicityCheck>,
    pub admissibility_agrees: bool,
    pub dimensions_agree: bool,
    pub passed: bool,
}

impl BalancedReport {
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for c in self.bp1.iter().filter(|c| !c.passed) {
            out.push(format!("BP1 fails on probe {}", c.probe));
        }
        for c in self.bp2.iter().filter(|c| !c.passed) {
            out.push(format!("BP2 fails on probe {}", c.probe));
        }
        for c in self.acyclicity.iter().filter(|c| !c.agree) {
            out.push(format!("right/left acyclicity disagree on complex {}", c.complex));
        }
        if !self.admissibility_agrees {
            out.push("admissibility verdicts differ".into());
        }
        if !self.dimensions_agree {
            out.push("resolution and coresolution dimensions differ".into());
        }
        if !self.x.approximations_verified || !self.y.approximations_verified {
            out.push("an approximation failed its rank check".into());
        }
        out
    }
}

fn truncated(err: &Error) -> bool {
    matches!(err, Error::ResolutionTooLong(_))
}

/// BP1 for one probe: an X-resolution stays acyclic under `Hom(−, g)` for
/// every generator `g` of `y`. Resolutions longer than `bound` are truncated
/// and the last degree is not checked.
fn bp1_probe(x: &SubcatSpec, y: &SubcatSpec, m: &Module, idx: usize, bound: usize) -> ProbeCheck {
    let (res, length) = match resolution(x, m, bound) {
        Ok(r) => {
            let n = r.length();
            (r, Some(n))
        }
        Err(e) if truncated(&e) => match resolve(x, m, Stop::Steps(bound), bound + 1) {
            Ok(r) => (r, None),
            Err(e) => return ProbeCheck { probe: idx, length: None, passed: false, error: Some(e.to_string()) },
        },
        Err(e) => return ProbeCheck { probe: idx, length: None, passed: false, error: Some(e.to_string()) },
    };
    let aug = res.augmented();
    let skip = length.is_none().then(|| -aug.lo());
    let passed = y
        .generators
        .iter()
        .all(|g| aug.hom_to_cohomology(g).iter().all(|&(n, d)| d == 0 || Some(n) == skip));
    ProbeCheck { probe: idx, length, passed, error: None }
}

fn bp2_probe(x: &SubcatSpec, y: &SubcatSpec, m: &Module, idx: usize, bound: usize) -> ProbeCheck {
    let (cores, length): (Coresolution, Option<usize>) = match coresolution(y, m, bound) {
        Ok(c) => {
            let n = c.length();
            (c, Some(n))
        }
        Err(e) if truncated(&e) => match coresolve(y, m, Stop::Steps(bound), bound + 1) {
            Ok(c) => (c, None),
            Err(e) => return ProbeCheck { probe: idx, length: None, passed: false, error: Some(e.to_string()) },
        },
        Err(e) => return ProbeCheck { probe: idx, length: None, passed: false, error: Some(e.to_string()) },
    };
    let aug = cores.augmented();
    let skip = length.is_none().then(|| aug.hi());
    let passed = x
        .generators
        .iter()
        .all(|g| aug.hom_from_cohomology(g).iter().all(|&(n, d)| d == 0 || Some(n) == skip));
    ProbeCheck { probe: idx, length, passed, error: None }
}

pub fn check_balanced(x: &SubcatSpec, y: &SubcatSpec, probes: &[Module], complexes: &[Complex]) -> BalancedReport {
    check_balanced_with(x, y, probes, complexes, default_ext_bound(x.algebra()))
}

pub fn check_balanced_with(x: &SubcatSpec, y: &SubcatSpec, probes: &[Module], complexes: &[Complex], bound: usize) -> BalancedReport {
    let bp1: Vec<ProbeCheck> = probes.iter().enumerate().map(|(i, m)| bp1_probe(x, y, m, i, bound)).collect();
    let bp2: Vec<ProbeCheck> = probes.iter().enumerate().map(|(i, m)| bp2_probe(x, y, m, i, bound)).collect();
    let acyclicity: Vec<AcyclicityCheck> = complexes
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let r = is_right_acyclic(x, z);
            let l = is_left_acyclic(y, z);
            AcyclicityCheck { complex: i, right_acyclic: r, left_acyclic: l, agree: r == l }
        })
        .collect();
    let ax = is_admissible(x, probes);
    let ay = is_coadmissible(y, probes);
    let dim_x = max_dim(probes.iter().map(|m| resolution_dim(x, m, bound)));
    let dim_y = max_dim(probes.iter().map(|m| coresolution_dim(y, m, bound)));
    let x_ok = probes.iter().all(|m| right_approximation(x, m).verify(x));
    let y_ok = probes.iter().all(|m| left_approximation(y, m).verify(y));
    let xs = SideSummary {
        name: x.name.clone(),
        approximations_verified: x_ok,
        admissible: ax.admissible,
        structural: ax.structural,
        failing_probes: ax.failing_probes,
        dimension: dim_x,
    };
    let ys = SideSummary {
        name: y.name.clone(),
        approximations_verified: y_ok,
        admissible: ay.admissible,
        structural: ay.structural,
        failing_probes: ay.failing_probes,
        dimension: dim_y,
    };
    let admissibility_agrees = xs.admissible == ys.admissible;
    let dimensions_agree = dim_x == dim_y;
    let passed = bp1.iter().all(|c| c.passed)
        && bp2.iter().all(|c| c.passed)
        && acyclicity.iter().all(|c| c.agree)
        && admissibility_agrees
        && dimensions_agree
        && x_ok
        && y_ok;
    BalancedReport { x: xs, y: ys, bp1, bp2, acyclicity, admissibility_agrees, dimensions_agree, passed }
}

fn max_dim(it: impl Iterator<Item = Option<usize>>) -> Option<usize> {
    let mut best = 0;
    for d in it {
        best = best.max(d?);
    }
    Some(best)
}

/// A resolution of `m` long enough to read cohomology up to degree `top`:
/// the terminating one if it exists within `bound`, else a truncated one.
fn resolution_for(x: &SubcatSpec, m: &Module, top: usize, bound: usize) -> Result<Resolution> {
    match resolution(x, m, bound) {
        Err(e) if truncated(&e) => resolve(x, m, Stop::Steps(top + 1), top + 2),
        r => r,
    }
}

fn coresolution_for(y: &SubcatSpec, m: &Module, top: usize, bound: usize) -> Result<Coresolution> {
    match coresolution(y, m, bound) {
        Err(e) if truncated(&e) => coresolve(y, m, Stop::Steps(top + 1), top + 2),
        r => r,
    }
}

/// Per degree `n` in `degrees`, `(n, dim H^n Hom(X•, N), dim H^n Hom(M, Y•))`
/// for an X-resolution `X• → M` and a Y-coresolution `N → Y•`.
pub fn balanced_hom_iso(
    x: &SubcatSpec,
    y: &SubcatSpec,
    m: &Module,
    n: &Module,
    degrees: std::ops::RangeInclusive<usize>,
    bound: usize,
) -> Result<Vec<(usize, usize, usize)>> {
    let top = *degrees.end();
    let res = resolution_for(x, m, top, bound)?.complex();
    let cores = coresolution_for(y, n, top, bound)?.complex();
    let left = res.hom_to_cohomology(n);
    let right = cores.hom_from_cohomology(m);
    let at = |v: &[(i64, usize)], d: usize| v.iter().find(|&&(k, _)| k == d as i64).map_or(0, |&(_, c)| c);
    Ok(degrees.map(|d| (d, at(&left, d), at(&right, d))).collect())
}

/// A basis of the cocycles of `space` under `out`, as maps.
fn cocycles(space: &HomSpace, out: impl Fn(&ModuleMap) -> ModuleMap) -> Vec<ModuleMap> {
    if space.basis.is_empty() {
        return vec![];
    }
    let images: Vec<Vec<u32>> = space.basis.iter().map(|h| out(h).vectorize()).collect();
    let f = space.source.field();
    let len = images[0].len();
    if len == 0 {
        return space.basis.clone();
    }
    let flat: Vec<i64> = (0..len).flat_map(|r| images.iter().map(move |v| v[r] as i64)).collect();
    let k = Matrix::from_flat(f, len, images.len(), &flat).unwrap().kernel_basis();
    (0..k.cols()).map(|j| space.combine(&k.column(j))).collect()
}

/// Rank of the map on cohomology induced by `g`, given cocycles of the
/// source and a spanning set of the target coboundaries.
fn induced_cohomology_rank(cocycles: &[ModuleMap], g: impl Fn(&ModuleMap) -> ModuleMap, boundaries: &[ModuleMap]) -> usize {
    let f = match cocycles.first().or(boundaries.first()) {
        Some(m) => m.field(),
        None => return 0,
    };
    let b: Vec<Vec<u32>> = boundaries.iter().map(ModuleMap::vectorize).collect();
    let mut all = b.clone();
    all.extend(cocycles.iter().map(|z| g(z).vectorize()));
    rank_of_vectors(f, &all) - rank_of_vectors(f, &b)
}

/// One-map naturality of the balanced Hom isomorphism in the second
/// argument: for `g: N → N'`, the ranks of the maps induced on
/// `H^d Hom(X•, −)` and on `H^d Hom(M, Y•)` agree. Returns the two ranks.
pub fn balanced_hom_naturality(x: &SubcatSpec, y: &SubcatSpec, m: &Module, g: &ModuleMap, d: usize, bound: usize) -> Result<(usize, usize)> {
    let (n, n2) = (g.source(), g.target());
    let res = resolution_for(x, m, d, bound)?.complex();
    let deg = -(d as i64);
    // Left: Hom(X^{−d}, N) → Hom(X^{−d}, N') by postcomposition.
    let xs = res.term(deg);
    let z_left = cocycles(&hom_space(xs, n), |h| h.compose(&res.diff(deg - 1)));
    let b_left: Vec<ModuleMap> = hom_space(res.term(deg + 1), n2).basis.iter().map(|h| h.compose(&res.diff(deg))).collect();
    let left = induced_cohomology_rank(&z_left, |h| g.compose(h), &b_left);
    // Right: lift g to coresolutions, then postcompose in degree d.
    let c1 = coresolution_for(y, n, d, bound)?;
    let c2 = coresolution_for(y, n2, d, bound)?;
    let lift = crate::approx::lift_to_chain_map(&c2.dual, &c1.dual, &g.dual())?.dual();
    let (y1, y2) = (c1.complex(), c2.complex());
    let di = d as i64;
    let z_right = cocycles(&hom_space(m, y1.term(di)), |h| y1.diff(di).compose(h));
    let b_right: Vec<ModuleMap> = hom_space(m, y2.term(di - 1)).basis.iter().map(|h| y2.diff(di - 1).compose(h)).collect();
    let comp = lift.component(di).retarget(y1.term(di), y2.term(di));
    let right = induced_cohomology_rank(&z_right, |h| comp.compose(h), &b_right);
    Ok((left, right))
}

/// Horseshoe data over a short exact sequence `0 → M' → M → M'' → 0`:
/// augmented resolutions of the ends, the augmented middle resolution with
/// terms `X'^n ⊕ X''^n`, and the row maps between them.
#[derive(Clone, Debug)]
pub struct Horseshoe {
    pub left: Resolution,
    pub right: Resolution,
    pub middle: Complex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

pub fn horseshoe(x: &SubcatSpec, mono: &ModuleMap, epi: &ModuleMap, bound: usize) -> Result<Horseshoe> {
    let (m1, m, m2) = (mono.source(), mono.target(), epi.target());
    if epi.source() != m {
        return Err(Error::InvalidMap("the two maps are not composable".into()));
    }
    if !mono.is_injective() || !epi.is_surjective() || !epi.compose(mono).is_zero() || m1.total_dim() + m2.total_dim() != m.total_dim() {
        return Err(Error::InvalidMap("input is not a short exact sequence".into()));
    }
    let alg = m.algebra();
    let left = resolution(x, m1, bound)?;
    let right = resolution(x, m2, bound)?;
    let (l, r) = (left.complex(), right.complex());
    let len = left.length().max(right.length()) as i64;
    let fail = |k: i64| Error::FactorizationFailed(format!("horseshoe lift in degree {}: sequence is not Hom(X, −)-exact", -k));
    // σ: X''^0 → M with epi ∘ σ = ε''.
    let sigma = factor_through(epi, right.augmentation()).ok_or_else(|| fail(0))?;
    let eps1 = mono.compose(left.augmentation());
    // τ_k: X''^{−k} → X'^{−k+1} making the middle differential square to 0.
    let mut tau: Vec<ModuleMap> = vec![ModuleMap::zero(r.term(0), &Module::zero(alg))];
    for k in 1..=len {
        let d2 = r.diff(-k);
        let t = if k == 1 {
            let rhs = sigma.compose(&d2).neg();
            solve_left(&eps1, &rhs).ok_or_else(|| fail(k))?
        } else {
            let rhs = tau[(k - 1) as usize].compose(&d2).neg();
            solve_left(&l.diff(-k + 1).retarget(l.term(-k + 1), l.term(-k + 2)), &rhs).ok_or_else(|| fail(k))?
        };
        tau.push(t);
    }
    let sums: Vec<DirectSum> = (0..=len).map(|k| DirectSum::new(alg, &[l.term(-k).clone(), r.term(-k).clone()])).collect();
    let sum = |n: i64| &sums[(-n) as usize];
    let aug_target = DirectSum::new(alg, std::slice::from_ref(m));
    let middle = Complex::from_fn(
        alg,
        -len,
        1,
        |n| if n == 1 { m.clone() } else { sum(n).module.clone() },
        |n| {
            if n == 0 {
                let grid = vec![vec![Some(eps1.clone()), Some(sigma.clone())]];
                return sum(0).matrix_to(&aug_target, &grid).retarget(&sum(0).module, m);
            }
            let k = -n;
            let grid = vec![
                vec![Some(l.diff(n)), Some(tau[k as usize].clone())],
                vec![None, Some(r.diff(n))],
            ];
            sum(n).matrix_to(sum(n + 1), &grid)
        },
    );
    if !middle.is_valid() {
        return Err(Error::InvalidComplex("horseshoe middle differential does not square to zero".into()));
    }
    let (la, ra) = (left.augmented(), right.augmented());
    let inclusion = ChainMap::new(&la, &middle, |n| if n == 1 { mono.clone() } else { sum(n).inclusion(0) })?;
    let projection = ChainMap::new(&middle, &ra, |n| if n == 1 { epi.clone() } else { sum(n).projection(1) })?;
    Ok(Horseshoe { left, right, middle, inclusion, projection })
}

/// Solves `a ∘ s = rhs`, with `rhs` possibly recorded against a different
/// but equal-shaped target object.
fn solve_left(a: &ModuleMap, rhs: &ModuleMap) -> Option<ModuleMap> {
    let mut sys = MapSystem::new(a.field());
    let u = sys.unknown(rhs.source(), a.source());
    let eq = sys.equation(rhs.source(), a.target());
    sys.term(eq, u, 1, Some(a), None);
    sys.rhs(eq, &rhs.retarget(rhs.source(), a.target()));
    sys.solve().map(|mut v| v.remove(0))
}

#[derive(Clone, Debug, Serialize)]
pub struct CotorsionReport {
    pub ext1_xz_vanishes: bool,
    pub ext1_zy_vanishes: bool,
    /// `Ext^i` vanishing for `1 ≤ i ≤ ext_bound` on both generator pairs.
    pub hereditary: bool,
    pub x_contains_projectives: bool,
    pub y_contains_injectives: bool,
    /// Per probe: kernel of a trimmed right X-approximation lies in Z.
    pub special_right: Vec<bool>,
    /// Per probe: cokernel of a trimmed left Y-approximation lies in Z.
    pub special_left: Vec<bool>,
    pub balanced: BalancedReport,
    pub passed: bool,
}

pub fn check_cotorsion_triple(x: &SubcatSpec, z: &SubcatSpec, y: &SubcatSpec, probes: &[Module], ext_bound: usize) -> Result<CotorsionReport> {
    let ext_vanish = |a: &SubcatSpec, b: &SubcatSpec, top: usize| -> Result<bool> {
        for g in &a.generators {
            for h in &b.generators {
                for i in 1..=top {
                    if ext_dim(g, h, i, ext_bound.max(top))? != 0 {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    };
    let ext1_xz_vanishes = ext_vanish(x, z, 1)?;
    let ext1_zy_vanishes = ext_vanish(z, y, 1)?;
    let hereditary = ext_vanish(x, z, ext_bound)? && ext_vanish(z, y, ext_bound)?;
    let alg = x.algebra();
    let x_contains_projectives = indecomposable_projectives(alg).iter().all(|p| membership(x, p));
    let y_contains_injectives = indecomposable_injectives(alg).iter().all(|i| membership(y, i));
    let xt = x.clone().trimmed(true);
    let yt = y.clone().trimmed(true);
    let special_right: Vec<bool> = probes
        .iter()
        .map(|m| {
            let th = right_approximation(&xt, m).theta;
            th.is_surjective() && membership(z, &th.kernel().0)
        })
        .collect();
    let special_left: Vec<bool> = probes
        .iter()
        .map(|m| {
            let th = left_approximation(&yt, m).theta;
            th.is_injective() && membership(z, &th.cokernel().0)
        })
        .collect();
    let balanced = check_balanced(x, y, probes, &[]);
    let passed = ext1_xz_vanishes
        && ext1_zy_vanishes
        && hereditary
        && x_contains_projectives
        && y_contains_injectives
        && special_right.iter().all(|&b| b)
        && special_left.iter().all(|&b| b)
        && balanced.passed;
    Ok(CotorsionReport {
        ext1_xz_vanishes,
        ext1_zy_vanishes,
        hereditary,
        x_contains_projectives,
        y_contains_injectives,
        special_right,
        special_left,
        balanced,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiveralg::{projective, simples, Algebra, AlgebraPresentation, Quiver, Relation};

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
    fn acyclicity_examples() {
        let a = a2(3);
        let x = SubcatSpec::projectives(&a);
        let y = SubcatSpec::injectives(&a);
        let s1 = Module::simple(&a, 0);
        let aug = resolution(&x, &s1, 3).unwrap().augmented();
        assert!(is_right_acyclic(&x, &aug));
        assert!(is_left_acyclic(&y, &aug));
        let stalk = Complex::stalk(&s1, 0);
        assert!(!is_right_acyclic(&x, &stalk));
        assert!(!is_left_acyclic(&y, &stalk));
        let p1 = projective(&a, 0);
        let contractible = Complex::new(&a, 0, vec![p1.clone(), p1.clone()], vec![ModuleMap::identity(&p1)]).unwrap();
        assert!(is_right_acyclic(&x, &contractible));
        assert!(is_left_acyclic(&y, &contractible));
    }

    #[test]
    fn projective_injective_pair_is_balanced() {
        for p in [2, 3] {
            let a = a2(p);
            let rep = check_balanced(&SubcatSpec::projectives(&a), &SubcatSpec::injectives(&a), &simples(&a), &[]);
            assert!(rep.passed, "{:?}", rep.failures());
            assert_eq!(rep.x.dimension, Some(1));
            assert_eq!(rep.y.dimension, Some(1));
        }
    }

    #[test]
    fn projective_projective_pair_is_not_balanced() {
        let a = a2(2);
        let x = SubcatSpec::projectives(&a);
        let rep = check_balanced(&x, &x, &simples(&a), &[]);
        assert!(!rep.passed);
        assert!(rep.bp2.iter().any(|c| !c.passed));
    }

    #[test]
    fn hom_iso_dimensions() {
        let a = a2(3);
        let (x, y) = (SubcatSpec::projectives(&a), SubcatSpec::injectives(&a));
        let (s1, s2) = (Module::simple(&a, 0), Module::simple(&a, 1));
        let dims = balanced_hom_iso(&x, &y, &s1, &s2, 0..=2, 4).unwrap();
        assert_eq!(dims, vec![(0, 0, 0), (1, 1, 1), (2, 0, 0)]);
        let g = ModuleMap::identity(&s2);
        let (l, r) = balanced_hom_naturality(&x, &y, &s1, &g, 1, 4).unwrap();
        assert_eq!((l, r), (1, 1));
    }

    #[test]
    fn horseshoe_over_a2() {
        let a = a2(3);
        let x = SubcatSpec::projectives(&a);
        let s1 = Module::simple(&a, 0);
        let aug = resolution(&x, &s1, 3).unwrap().augmented();
        let mono = aug.diff(-1);
        let epi = aug.diff(0);
        let h = horseshoe(&x, &mono, &epi, 3).unwrap();
        assert_eq!(h.middle.term(0).dims(), &[1, 2]);
        assert!(h.middle.is_acyclic());
        assert!(is_right_acyclic(&x, &h.middle));
    }

    #[test]
    fn horseshoe_rejects_non_exact_input() {
        let a = a2(2);
        let x = SubcatSpec::projectives(&a);
        let s1 = Module::simple(&a, 0);
        let z = ModuleMap::zero(&s1, &s1);
        assert!(horseshoe(&x, &z, &z, 3).is_err());
    }

    #[test]
    fn cotorsion_triple_over_dual_numbers() {
        let a = dual_numbers(2);
        let all = SubcatSpec::new("all", vec![projective(&a, 0), Module::simple(&a, 0)]).unwrap();
        let proj = SubcatSpec::projectives(&a);
        let rep = check_cotorsion_triple(&all, &proj, &all, &[Module::simple(&a, 0), projective(&a, 0)], 3).unwrap();
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn cotorsion_triple_missing_projective_fails() {
        let a = a2(2);
        let x = SubcatSpec::new("s2", vec![Module::simple(&a, 1)]).unwrap();
        let all = SubcatSpec::new("all", vec![projective(&a, 0), Module::simple(&a, 0), Module::simple(&a, 1)]).unwrap();
        let rep = check_cotorsion_triple(&x, &all, &SubcatSpec::injectives(&a), &simples(&a), 3).unwrap();
        assert!(!rep.x_contains_projectives);
        assert!(!rep.passed);
    }
}
