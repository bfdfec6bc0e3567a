//! Subcategories given by additive generators; approximations, membership,
//! resolutions and resolution dimension.

use crate::complexes::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::mapsolve::MapSystem;
use crate::quiveralg::{
    hom_space, indecomposable_injectives, indecomposable_projectives, rank_of_vectors, Algebra, DirectSum, Module,
    ModuleMap,
};

/// The additive closure of a finite list of generators.
#[derive(Clone, Debug)]
pub struct SubcatSpec {
    pub name: String,
    pub generators: Vec<Module>,
    /// Drop redundant generator copies from approximations.
    pub trim: bool,
}

impl SubcatSpec {
    pub fn new(name: &str, generators: Vec<Module>) -> Result<SubcatSpec> {
        let Some(first) = generators.first() else {
            return Err(Error::Invalid(format!("subcategory {name} has no generators")));
        };
        if generators.iter().any(|g| g.algebra() != first.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(SubcatSpec { name: name.to_string(), generators, trim: false })
    }

    pub fn trimmed(mut self, trim: bool) -> SubcatSpec {
        self.trim = trim;
        self
    }

    pub fn projectives(alg: &Algebra) -> SubcatSpec {
        SubcatSpec { name: "proj".into(), generators: indecomposable_projectives(alg), trim: false }
    }

    pub fn injectives(alg: &Algebra) -> SubcatSpec {
        SubcatSpec { name: "inj".into(), generators: indecomposable_injectives(alg), trim: false }
    }

    pub fn algebra(&self) -> &Algebra {
        self.generators[0].algebra()
    }

    /// The dual subcategory over the opposite algebra.
    pub fn dual(&self) -> SubcatSpec {
        SubcatSpec {
            name: format!("D({})", self.name),
            generators: self.generators.iter().map(Module::dual).collect(),
            trim: self.trim,
        }
    }
}

/// Which side an approximation lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `θ: X₀ → M`.
    Right,
    /// `θ: M → Y₀`.
    Left,
}

/// An approximation `θ` together with the decomposition of its `X₀` (or
/// `Y₀`) into generator copies. `owners[i]` is the generator index of
/// summand `i`, or `None` when `θ` is an identity on a member of the
/// subcategory.
#[derive(Clone, Debug)]
pub struct Approximation {
    pub side: Side,
    pub theta: ModuleMap,
    pub parts: Vec<Module>,
    pub owners: Vec<Option<usize>>,
}

impl Approximation {
    /// The object of the subcategory (`X₀` for right, `Y₀` for left).
    pub fn object(&self) -> &Module {
        match self.side {
            Side::Right => self.theta.source(),
            Side::Left => self.theta.target(),
        }
    }

    pub fn module(&self) -> &Module {
        match self.side {
            Side::Right => self.theta.target(),
            Side::Left => self.theta.source(),
        }
    }

    fn identity(m: &Module, side: Side) -> Approximation {
        Approximation { side, theta: ModuleMap::identity(m), parts: vec![m.clone()], owners: vec![None] }
    }

    fn dual(&self) -> Approximation {
        Approximation {
            side: match self.side {
                Side::Right => Side::Left,
                Side::Left => Side::Right,
            },
            theta: self.theta.dual(),
            parts: self.parts.iter().map(Module::dual).collect(),
            owners: self.owners.clone(),
        }
    }

    /// Checks that `Hom(g, θ)` (right) or `Hom(θ, g)` (left) is surjective
    /// for every generator `g`, by a rank count.
    pub fn verify(&self, x: &SubcatSpec) -> bool {
        x.generators.iter().all(|g| match self.side {
            Side::Right => {
                let want = hom_space(g, self.module()).dim();
                let h = hom_space(g, self.object());
                crate::quiveralg::induced_rank(&h, Some(&self.theta), None) == want
            }
            Side::Left => {
                let want = hom_space(self.module(), g).dim();
                let h = hom_space(self.object(), g);
                crate::quiveralg::induced_rank(&h, None, Some(&self.theta)) == want
            }
        })
    }

    /// For each basis map `h: g → M` of `Hom(g, M)`, a preimage `s: g → X₀`
    /// with `θ ∘ s = h` (right approximations only).
    pub fn certificate(&self, g: &Module) -> Option<Vec<ModuleMap>> {
        assert_eq!(self.side, Side::Right, "certificates are stored for right approximations");
        hom_space(g, self.module())
            .basis
            .iter()
            .map(|h| factor_through(&self.theta, h))
            .collect()
    }
}

/// Solves `θ ∘ s = h` for `s`.
pub fn factor_through(theta: &ModuleMap, h: &ModuleMap) -> Option<ModuleMap> {
    let mut sys = MapSystem::new(theta.field());
    let u = sys.unknown(h.source(), theta.source());
    let eq = sys.equation(h.source(), theta.target());
    sys.term(eq, u, 1, Some(theta), None);
    sys.rhs(eq, h);
    sys.solve().map(|mut v| v.remove(0))
}

/// Solves `s ∘ θ = h` for `s`.
pub fn extend_through(theta: &ModuleMap, h: &ModuleMap) -> Option<ModuleMap> {
    let mut sys = MapSystem::new(theta.field());
    let u = sys.unknown(theta.target(), h.target());
    let eq = sys.equation(theta.source(), h.target());
    sys.term(eq, u, 1, None, Some(theta));
    sys.rhs(eq, h);
    sys.solve().map(|mut v| v.remove(0))
}

/// `θ: ⊕ᵢ gᵢ^{dim Hom(gᵢ, m)} → m`, one summand per Hom basis element.
pub fn right_approximation(x: &SubcatSpec, m: &Module) -> Approximation {
    let alg = m.algebra();
    let mut parts = Vec::new();
    let mut maps = Vec::new();
    let mut owners = Vec::new();
    let mut homs = Vec::new();
    for (i, g) in x.generators.iter().enumerate() {
        let h = hom_space(g, m);
        for b in &h.basis {
            parts.push(g.clone());
            maps.push(b.clone());
            owners.push(Some(i));
        }
        homs.push(h.dim());
    }
    if x.trim && !parts.is_empty() {
        let keep = trim_summands(x, &parts, &maps, &owners, &homs);
        parts = keep.iter().map(|&s| parts[s].clone()).collect();
        maps = keep.iter().map(|&s| maps[s].clone()).collect();
        owners = keep.iter().map(|&s| owners[s]).collect();
    }
    let sum = DirectSum::new(alg, &parts);
    let theta = sum.copair(m, &maps);
    Approximation { side: Side::Right, theta, parts, owners }
}

/// Greedily drops summands (last first) while every `Hom(g, θ)` stays
/// surjective.
fn trim_summands(x: &SubcatSpec, parts: &[Module], maps: &[ModuleMap], owners: &[Option<usize>], need: &[usize]) -> Vec<usize> {
    let f = parts[0].field();
    let gens = &x.generators;
    // images[g][s]: vectorized θ_s ∘ h for h in a basis of Hom(g, part s).
    let images: Vec<Vec<Vec<Vec<u32>>>> = gens
        .iter()
        .map(|g| {
            let cache: Vec<_> = gens.iter().map(|gj| hom_space(g, gj)).collect();
            (0..parts.len())
                .map(|s| {
                    let h = &cache[owners[s].unwrap()];
                    h.basis.iter().map(|b| maps[s].compose(b).vectorize()).collect()
                })
                .collect()
        })
        .collect();
    let mut keep: Vec<bool> = vec![true; parts.len()];
    for s in (0..parts.len()).rev() {
        keep[s] = false;
        let ok = (0..gens.len()).all(|g| {
            if need[g] == 0 {
                return true;
            }
            let vs: Vec<Vec<u32>> = (0..parts.len()).filter(|&t| keep[t]).flat_map(|t| images[g][t].iter().cloned()).collect();
            rank_of_vectors(f, &vs) == need[g]
        });
        if !ok {
            keep[s] = true;
        }
    }
    (0..parts.len()).filter(|&s| keep[s]).collect()
}

/// `θ: m → ⊕ᵢ gᵢ^{dim Hom(m, gᵢ)}`, via duality from the right version.
pub fn left_approximation(y: &SubcatSpec, m: &Module) -> Approximation {
    let a = right_approximation(&y.dual(), &m.dual()).dual();
    let target = a.theta.target().clone();
    Approximation { theta: a.theta.retarget(m, &target), ..a }
}

/// `m ∈ add(generators)`: the right approximation splits.
pub fn membership(x: &SubcatSpec, m: &Module) -> bool {
    if m.is_zero() || x.generators.iter().any(|g| g == m) {
        return true;
    }
    let theta = right_approximation(x, m).theta;
    if !theta.is_surjective() {
        return false;
    }
    factor_through(&theta, &ModuleMap::identity(m)).is_some()
}

#[derive(Clone, Debug)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    /// True when the verdict comes from all projectives (resp. injectives)
    /// lying in the subcategory, rather than from the probe list.
    pub structural: bool,
    pub failing_probes: Vec<usize>,
}

/// Right approximations are epic: structurally if every indecomposable
/// projective is a member, otherwise tested on `probes`.
pub fn is_admissible(x: &SubcatSpec, probes: &[Module]) -> AdmissibilityReport {
    if indecomposable_projectives(x.algebra()).iter().all(|p| membership(x, p)) {
        return AdmissibilityReport { admissible: true, structural: true, failing_probes: vec![] };
    }
    let failing: Vec<usize> = probes
        .iter()
        .enumerate()
        .filter(|(_, m)| !right_approximation(x, m).theta.is_surjective())
        .map(|(i, _)| i)
        .collect();
    AdmissibilityReport { admissible: failing.is_empty(), structural: false, failing_probes: failing }
}

/// Left approximations are monic (dual of [`is_admissible`]).
pub fn is_coadmissible(y: &SubcatSpec, probes: &[Module]) -> AdmissibilityReport {
    let duals: Vec<Module> = probes.iter().map(Module::dual).collect();
    is_admissible(&y.dual(), &duals)
}

/// One step `θ_k: X^{−k} → K_k` of a resolution, where `K_0 = M` and
/// `K_k = Ker θ_{k−1}` sits in `X^{−k+1}` via `kernel_incl`.
#[derive(Clone, Debug)]
pub struct ResolutionStep {
    pub kernel: Module,
    pub kernel_incl: Option<ModuleMap>,
    pub approx: Approximation,
    pub member: bool,
}

/// An X-resolution `⋯ → X^{−1} → X^0 → M → 0`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: Module,
    pub steps: Vec<ResolutionStep>,
}

/// How a resolution decides when to stop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stop {
    /// Close with an identity once a kernel lies in the subcategory.
    AtMember,
    /// Keep taking full approximations for exactly this many steps (or until
    /// a kernel vanishes).
    Steps(usize),
}

pub fn resolution(x: &SubcatSpec, m: &Module, max_len: usize) -> Result<Resolution> {
    resolve(x, m, Stop::AtMember, max_len)
}

pub fn resolve(x: &SubcatSpec, m: &Module, stop: Stop, max_len: usize) -> Result<Resolution> {
    let mut steps: Vec<ResolutionStep> = Vec::new();
    let mut kernel = m.clone();
    let mut incl: Option<ModuleMap> = None;
    loop {
        let k = steps.len();
        if k > max_len {
            return Err(Error::ResolutionTooLong(max_len));
        }
        let done = match stop {
            Stop::AtMember => membership(x, &kernel),
            Stop::Steps(n) => kernel.is_zero() || k == n,
        };
        if done && (stop == Stop::AtMember || kernel.is_zero()) {
            steps.push(ResolutionStep { kernel: kernel.clone(), kernel_incl: incl, approx: Approximation::identity(&kernel, Side::Right), member: true });
            break;
        }
        let approx = right_approximation(x, &kernel);
        if !approx.theta.is_surjective() {
            return Err(Error::NotAdmissible(format!("right {}-approximation of a kernel is not epic", x.name)));
        }
        let (next, next_incl) = approx.theta.kernel();
        steps.push(ResolutionStep { kernel: kernel.clone(), kernel_incl: incl, approx, member: false });
        if done {
            break;
        }
        kernel = next;
        incl = Some(next_incl);
    }
    Ok(Resolution { module: m.clone(), steps })
}

impl Resolution {
    /// Index `n₀` of the first kernel lying in the subcategory.
    pub fn length(&self) -> usize {
        self.steps.len() - 1
    }

    /// `X^{−k}`.
    pub fn term(&self, k: usize) -> &Module {
        self.steps[k].approx.object()
    }

    /// `d^{−k}: X^{−k} → X^{−k+1}` for `k ≥ 1`.
    pub fn diff(&self, k: usize) -> ModuleMap {
        let s = &self.steps[k];
        s.kernel_incl.as_ref().unwrap().compose(&s.approx.theta)
    }

    /// The augmentation `ε: X^0 → M`.
    pub fn augmentation(&self) -> &ModuleMap {
        &self.steps[0].approx.theta
    }

    /// `X^{−n} → ⋯ → X^0` in degrees `−n..0`.
    pub fn complex(&self) -> Complex {
        let n = self.length() as i64;
        let alg = self.module.algebra();
        Complex::from_fn(alg, -n, 0, |d| self.term((-d) as usize).clone(), |d| self.diff((-d) as usize))
    }

    /// `X^{−n} → ⋯ → X^0 → M` with `M` in degree 1.
    pub fn augmented(&self) -> Complex {
        let n = self.length() as i64;
        let alg = self.module.algebra();
        Complex::from_fn(
            alg,
            -n,
            1,
            |d| if d == 1 { self.module.clone() } else { self.term((-d) as usize).clone() },
            |d| if d == 0 { self.augmentation().clone() } else { self.diff((-d) as usize) },
        )
    }
}

/// A Y-coresolution `0 → M → Y^0 → Y^1 → ⋯`, stored as the dual of a
/// resolution over the opposite algebra.
#[derive(Clone, Debug)]
pub struct Coresolution {
    pub module: Module,
    pub dual: Resolution,
}

pub fn coresolution(y: &SubcatSpec, m: &Module, max_len: usize) -> Result<Coresolution> {
    coresolve(y, m, Stop::AtMember, max_len)
}

pub fn coresolve(y: &SubcatSpec, m: &Module, stop: Stop, max_len: usize) -> Result<Coresolution> {
    let dual = resolve(&y.dual(), &m.dual(), stop, max_len)?;
    Ok(Coresolution { module: m.clone(), dual })
}

impl Coresolution {
    pub fn length(&self) -> usize {
        self.dual.length()
    }

    /// `Y^0 → ⋯ → Y^n` in degrees `0..n`.
    pub fn complex(&self) -> Complex {
        self.dual.complex().dual()
    }

    /// `M → Y^0 → ⋯ → Y^n` with `M` in degree −1.
    pub fn augmented(&self) -> Complex {
        self.dual.augmented().dual()
    }

    pub fn coaugmentation(&self) -> ModuleMap {
        let e = self.dual.augmentation().dual();
        let t = e.target().clone();
        e.retarget(&self.module, &t)
    }
}

/// Smallest `n₀ ≤ bound` with `Ker d^{−n₀+1}` in the subcategory, or `None`
/// when the bound is exceeded.
pub fn resolution_dim(x: &SubcatSpec, m: &Module, bound: usize) -> Option<usize> {
    match resolution(x, m, bound) {
        Ok(r) => Some(r.length()),
        Err(_) => None,
    }
}

pub fn coresolution_dim(y: &SubcatSpec, m: &Module, bound: usize) -> Option<usize> {
    resolution_dim(&y.dual(), &m.dual(), bound)
}

/// A chain map between resolutions lying over `f: M → M'`, built degree by
/// degree by factoring through the target's differentials.
pub fn lift_to_chain_map(src: &Resolution, tgt: &Resolution, f: &ModuleMap) -> Result<ChainMap> {
    let cs = src.complex();
    let ct = tgt.complex();
    let mut comps: Vec<ModuleMap> = Vec::new();
    let first = f.compose(src.augmentation());
    let g0 = factor_through(tgt.augmentation(), &first.retarget(src.term(0), tgt.augmentation().target()))
        .ok_or_else(|| Error::FactorizationFailed("degree 0 of a resolution lift".into()))?;
    comps.push(g0);
    for k in 1..=src.length() {
        let rhs = comps[k - 1].compose(&src.diff(k));
        let g = if k > tgt.length() {
            if !rhs.is_zero() {
                return Err(Error::FactorizationFailed(format!("degree −{k} of a resolution lift")));
            }
            ModuleMap::zero(src.term(k), &Module::zero(src.module.algebra()))
        } else {
            factor_through(&tgt.diff(k), &rhs).ok_or_else(|| Error::FactorizationFailed(format!("degree −{k} of a resolution lift")))?
        };
        comps.push(g);
    }
    ChainMap::new(&cs, &ct, |n| comps.get((-n) as usize).cloned().unwrap_or_else(|| ModuleMap::zero(cs.term(n), ct.term(n))))
}

/// The direct sum of `counts[i]` copies of generator `i`.
pub fn random_member(x: &SubcatSpec, counts: &[usize]) -> Module {
    let parts: Vec<Module> = x
        .generators
        .iter()
        .zip(counts)
        .flat_map(|(g, &c)| std::iter::repeat_n(g.clone(), c))
        .collect();
    DirectSum::new(x.algebra(), &parts).module
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

    #[test]
    fn approximation_of_generator_splits() {
        let a = a2(3);
        let x = SubcatSpec::projectives(&a);
        let p1 = projective(&a, 0);
        let ap = right_approximation(&x, &p1);
        assert!(ap.verify(&x));
        assert!(factor_through(&ap.theta, &ModuleMap::identity(&p1)).is_some());
    }

    #[test]
    fn approximation_with_no_maps_is_zero() {
        let a = a2(2);
        let x = SubcatSpec::new("s1", vec![Module::simple(&a, 0)]).unwrap();
        let ap = right_approximation(&x, &Module::simple(&a, 1));
        assert!(ap.object().is_zero());
        assert!(!ap.theta.is_surjective());
        let rep = is_admissible(&x, &[Module::simple(&a, 1)]);
        assert!(!rep.admissible);
        assert!(!rep.structural);
    }

    #[test]
    fn projective_approximation_of_simple() {
        let a = a2(2);
        let x = SubcatSpec::projectives(&a);
        let s1 = Module::simple(&a, 0);
        let ap = right_approximation(&x, &s1);
        assert!(ap.theta.is_surjective());
        assert_eq!(ap.object().dims(), &[1, 1]);
        assert!(!membership(&x, &s1));
        assert!(membership(&x, &Module::zero(&a)));
        assert_eq!(ap.certificate(&projective(&a, 0)).unwrap().len(), 1);
    }

    #[test]
    fn left_approximation_of_simple_by_injectives() {
        let a = a2(3);
        let y = SubcatSpec::injectives(&a);
        let s2 = Module::simple(&a, 1);
        let ap = left_approximation(&y, &s2);
        assert!(ap.theta.is_injective());
        assert_eq!(ap.theta.source(), &s2);
        assert!(ap.verify(&y));
    }

    #[test]
    fn resolution_of_a2_simple() {
        let a = a2(3);
        let x = SubcatSpec::projectives(&a);
        let s1 = Module::simple(&a, 0);
        let r = resolution(&x, &s1, 4).unwrap();
        assert_eq!(r.length(), 1);
        assert_eq!(r.term(0).dims(), &[1, 1]);
        assert_eq!(r.term(1).dims(), &[0, 1]);
        assert!(r.augmented().is_acyclic());
        assert_eq!(resolution_dim(&x, &s1, 5), Some(1));
        assert_eq!(resolution_dim(&x, &projective(&a, 1), 5), Some(0));
    }

    #[test]
    fn dual_numbers_simple_has_infinite_projective_resolution() {
        let a = dual_numbers(2);
        let x = SubcatSpec::projectives(&a);
        let s = Module::simple(&a, 0);
        assert_eq!(resolution(&x, &s, 3).unwrap_err(), Error::ResolutionTooLong(3));
        assert_eq!(resolution_dim(&x, &s, 5), None);
    }

    #[test]
    fn coresolution_of_a2_projective() {
        let a = a2(3);
        let y = SubcatSpec::injectives(&a);
        let p2 = projective(&a, 1);
        let c = coresolution(&y, &p2, 4).unwrap();
        assert_eq!(c.length(), 1);
        let aug = c.augmented();
        assert_eq!(aug.lo(), -1);
        assert!(aug.is_acyclic());
        assert_eq!(c.complex().term(0).dims(), &[1, 1]);
        assert_eq!(c.complex().term(1).dims(), &[1, 0]);
    }

    #[test]
    fn lifts_between_resolutions() {
        let a = a2(3);
        let x = SubcatSpec::projectives(&a);
        let s1 = Module::simple(&a, 0);
        let r = resolution(&x, &s1, 4).unwrap();
        let full = resolve(&x, &s1, Stop::Steps(3), 5).unwrap();
        let g = lift_to_chain_map(&r, &full, &ModuleMap::identity(&s1)).unwrap();
        let h = lift_to_chain_map(&full, &r, &ModuleMap::identity(&s1)).unwrap();
        assert!(crate::complexes::homotopic(&h.compose(&g), &ChainMap::identity(&r.complex())));
        let z = lift_to_chain_map(&r, &r, &ModuleMap::zero(&s1, &s1)).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn trimmed_approximation_stays_an_approximation() {
        let a = dual_numbers(3);
        let gens = vec![projective(&a, 0), Module::simple(&a, 0)];
        let x = SubcatSpec::new("all", gens).unwrap().trimmed(true);
        let m = projective(&a, 0);
        let ap = right_approximation(&x, &m);
        assert!(ap.verify(&x));
        assert!(ap.parts.len() <= 2);
    }
}
