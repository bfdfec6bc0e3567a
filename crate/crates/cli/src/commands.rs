use std::path::{Path, PathBuf};

use anyhow::{bail, Result};
use balpair_core::approx::{coresolve, left_approximation, membership, resolve, right_approximation, Stop, SubcatSpec};
use balpair_core::balanced::check_balanced_with;
use balpair_core::compare::verify_eta;
use balpair_core::complexes::{ChainMap, Complex};
use balpair_core::corpus::{self, CorpusEntry, Shape};
use balpair_core::equivfunctor::{verify_equivalence, FunctorSession};
use balpair_core::gorenstein::{functor_terms_check, gorenstein_profile, profile_checks, standard_probes, GorensteinProfile};
use balpair_core::io::{ModuleTaskDoc, PairDoc};
use balpair_core::quiveralg::{default_ext_bound, is_injective, is_projective, Module};
use balpair_core::totalization::{auto_width, build_quasi_bicomplex, is_right_quasi_iso, lift_through_epsilon, totalize};
use balpair_core::Algebra;
use clap::ValueEnum;
use serde::Serialize;
use serde_json::json;

use crate::input::{load_algebra, load_complexes, load_corpus_dir, read_doc, semantic};
use crate::report::Verdict;

#[derive(Clone, Debug)]
pub struct Globals {
    pub field: u32,
    pub seed: u64,
    pub max_len: Option<usize>,
    pub width: Option<usize>,
    pub corpus: Option<PathBuf>,
}

impl Globals {
    fn bound(&self, alg: &Algebra) -> usize {
        self.max_len.unwrap_or_else(|| default_ext_bound(alg))
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SubcatKind {
    Proj,
    Inj,
    Gproj,
    Ginj,
}

impl SubcatKind {
    fn build(self, alg: &Algebra, g: &Globals) -> Result<SubcatSpec> {
        Ok(match self {
            SubcatKind::Proj => SubcatSpec::projectives(alg),
            SubcatKind::Inj => SubcatSpec::injectives(alg),
            SubcatKind::Gproj => gorenstein_profile(alg, g.bound(alg))?.gproj,
            SubcatKind::Ginj => gorenstein_profile(alg, g.bound(alg))?.ginj,
        })
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum PairKind {
    /// Gorenstein projectives and Gorenstein injectives.
    Gorenstein,
    /// Projectives and injectives.
    Classical,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SideArg {
    Right,
    Left,
}

/// Where the complexes of a command come from.
enum Source {
    Files { algebra: Algebra, complexes: Vec<Complex>, maps: Vec<ChainMap> },
    Generated(Box<CorpusEntry>),
}

impl Source {
    fn algebra(&self) -> &Algebra {
        match self {
            Source::Files { algebra, .. } => algebra,
            Source::Generated(e) => &e.algebra,
        }
    }

    fn origin(&self) -> &'static str {
        match self {
            Source::Files { .. } => "files",
            Source::Generated(_) => "generated from seed",
        }
    }
}

fn source(g: &Globals, algebra: Option<&str>, complexes: Option<&Path>) -> Result<Source> {
    if let Some(path) = complexes {
        let l = load_complexes(path)?;
        return Ok(Source::Files { algebra: l.algebra, complexes: l.complexes, maps: l.maps });
    }
    let Some(spec) = algebra else {
        bail!(crate::input::Malformed("either --complexes or --algebra is required".into()));
    };
    let alg = load_algebra(spec, g.field)?;
    if let Some(dir) = &g.corpus {
        let (complexes, maps) = load_corpus_dir(dir, &alg)?;
        return Ok(Source::Files { algebra: alg, complexes, maps });
    }
    Ok(Source::Generated(Box::new(corpus::entry("generated", &alg, g.seed, Shape::default())?)))
}

fn dims(c: &Complex) -> Vec<usize> {
    c.terms().iter().map(Module::total_dim).collect()
}

pub fn algebra_check(g: &Globals, algebra: &str) -> Result<Vec<Verdict>> {
    let alg = load_algebra(algebra, g.field)?;
    let per_vertex: Vec<usize> = (0..alg.vertex_count()).map(|v| alg.basis_from(v).len()).collect();
    let gdim = balpair_core::gorenstein::gorenstein_dimension(&alg, g.bound(&alg));
    Ok(vec![
        Verdict::new(
            "presentation",
            "relations span an admissible ideal and the path algebra modulo them is finite dimensional",
            true,
            json!({
                "field": alg.field().p(),
                "vertices": alg.vertex_count(),
                "arrows": alg.arrows().len(),
                "dim": alg.dim(),
                "dim_from_vertex": per_vertex,
                "nilpotency_bound": alg.nilpotency_bound(),
                "commutative": alg.is_commutative(),
            }),
        ),
        Verdict::info("gorenstein_dimension", gdim),
    ])
}

pub fn complex_check(path: &Path) -> Result<Vec<Verdict>> {
    let l = load_complexes(path)?;
    let per: Vec<_> = l
        .complexes
        .iter()
        .enumerate()
        .map(|(i, c)| json!({"index": i, "lo": c.lo(), "dims": dims(c), "cohomology": c.cohomology_dims(), "acyclic": c.is_acyclic()}))
        .collect();
    Ok(vec![
        Verdict::new("complexes", "d ∘ d = 0 in every degree", l.complexes.iter().all(Complex::is_valid), per),
        Verdict::new("maps", "d ∘ f = f ∘ d in every degree", l.maps.iter().all(ChainMap::is_chain_map), l.maps.len()),
    ])
}

pub fn approx(path: &Path, side: SideArg) -> Result<Vec<Verdict>> {
    let (x, m) = read_doc::<ModuleTaskDoc>(path)?.load().map_err(|e| semantic(path, e))?;
    let a = match side {
        SideArg::Right => right_approximation(&x, &m),
        SideArg::Left => left_approximation(&x, &m),
    };
    let (invariant, surj_or_inj) = match side {
        SideArg::Right => ("every map from a generator into M factors through θ: X₀ → M", a.theta.is_surjective()),
        SideArg::Left => ("every map from M into a generator factors through θ: M → Y₀", a.theta.is_injective()),
    };
    Ok(vec![
        Verdict::new(
            "approximation",
            invariant,
            a.verify(&x),
            json!({
                "object_dims": a.object().dims(),
                "summands": a.owners,
                "theta": balpair_core::io::MapDoc::from_map(&a.theta),
            }),
        ),
        Verdict::info("admissible_shape", json!({"epi_or_mono": surj_or_inj, "module_in_subcategory": membership(&x, &m)})),
    ])
}

pub fn resolve_cmd(g: &Globals, path: &Path, co: bool) -> Result<Vec<Verdict>> {
    let (x, m) = read_doc::<ModuleTaskDoc>(path)?.load().map_err(|e| semantic(path, e))?;
    let bound = g.bound(m.algebra());
    let out = if co {
        coresolve(&x, &m, Stop::AtMember, bound).map(|r| (r.length(), r.complex(), r.augmented()))
    } else {
        resolve(&x, &m, Stop::AtMember, bound).map(|r| (r.length(), r.complex(), r.augmented()))
    };
    let invariant = if co {
        "0 → M → Y⁰ → ⋯ is exact with terms in the subcategory"
    } else {
        "⋯ → X⁻¹ → X⁰ → M → 0 is exact with terms in the subcategory"
    };
    Ok(vec![match out {
        Ok((len, c, aug)) => Verdict::new(
            "resolution",
            invariant,
            aug.is_acyclic() && c.terms().iter().all(|t| membership(&x, t)),
            json!({"length": len, "lo": c.lo(), "dims": dims(&c)}),
        ),
        Err(e) => Verdict::new("resolution", invariant, false, json!({"error": e.to_string(), "max_len": bound})),
    }])
}

pub fn balanced_check(g: &Globals, path: &Path, complexes: Option<&Path>) -> Result<Vec<Verdict>> {
    let (x, y, probes) = read_doc::<PairDoc>(path)?.load().map_err(|e| semantic(path, e))?;
    let alg = x.algebra().clone();
    let probes = probes.unwrap_or_else(|| standard_probes(&alg, 2));
    let cs = match complexes {
        Some(p) => load_complexes(p)?.complexes,
        None => Vec::new(),
    };
    let rep = check_balanced_with(&x, &y, &probes, &cs, g.bound(&alg));
    Ok(vec![Verdict::new(
        "balanced_pair",
        "approximations exist on both sides; X-resolutions are Hom(−, Y)-acyclic and Y-coresolutions are Hom(X, −)-acyclic; right X-acyclic = left Y-acyclic",
        rep.passed,
        json!({"failures": rep.failures(), "report": rep}),
    )])
}

pub fn totalize_cmd(g: &Globals, algebra: Option<&str>, complexes: Option<&Path>, kind: SubcatKind) -> Result<Vec<Verdict>> {
    let src = source(g, algebra, complexes)?;
    let alg = src.algebra().clone();
    let x = kind.build(&alg, g)?;
    let bound = g.bound(&alg);
    let (cs, maps) = match &src {
        Source::Files { complexes, maps, .. } => (complexes.clone(), maps.clone()),
        Source::Generated(e) => (e.complexes.clone(), e.lift_maps.clone()),
    };
    #[derive(Serialize)]
    struct Row {
        index: usize,
        width: usize,
        identity_defects: usize,
        higher_corrections: usize,
        total_dims: Vec<usize>,
        total_squares_to_zero: bool,
        cone_acyclic: bool,
    }
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    let mut totals = Vec::new();
    for (i, c) in cs.iter().enumerate() {
        let built = auto_width(&x, c, bound).and_then(|w| {
            let w = g.width.map_or(w, |forced| forced.max(w));
            let qb = build_quasi_bicomplex(&x, c, w)?;
            let at = totalize(&qb, c)?;
            Ok((qb, at))
        });
        match built {
            Ok((qb, at)) => {
                rows.push(Row {
                    index: i,
                    width: qb.width,
                    identity_defects: qb.identity_defects().len(),
                    higher_corrections: qb.higher_corrections(),
                    total_dims: dims(&at.total),
                    total_squares_to_zero: at.total.is_valid(),
                    cone_acyclic: is_right_quasi_iso(&x, &at.epsilon),
                });
                totals.push(Some(at));
            }
            Err(e) => {
                errors.push(json!({"index": i, "error": e.to_string()}));
                totals.push(None);
            }
        }
    }
    let mut lifts = Vec::new();
    for (i, f) in maps.iter().enumerate() {
        if !f.source().terms().iter().all(|t| membership(&x, t)) {
            continue;
        }
        let Some(at) = cs.iter().position(|c| c == f.target()).and_then(|t| totals[t].as_ref()) else {
            continue;
        };
        let ok = lift_through_epsilon(at, f).map(|gm| at.epsilon.compose(&gm) == *f).unwrap_or(false);
        lifts.push(json!({"map": i, "exact": ok}));
    }
    let identities = errors.is_empty() && rows.iter().all(|r| r.identity_defects == 0 && r.total_squares_to_zero);
    Ok(vec![
        Verdict::new(
            "quasi_bicomplex",
            "Σ_{l=0}^{n} d_l ∘ d_{n−l} = 0 in every bidegree, and d_T² = 0",
            identities,
            json!({"subcategory": x.name, "source": src.origin(), "complexes": rows, "errors": errors}),
        ),
        Verdict::new("epsilon", "Cone(ε: T → C) is right X-acyclic", rows.iter().all(|r| r.cone_acyclic), rows.len()),
        Verdict::new("lifts", "ε ∘ g = f for the lift g of every map f from an X-complex", lifts.iter().all(|l| l["exact"] == true), lifts),
    ])
}

fn pair(alg: &Algebra, g: &Globals, kind: PairKind) -> Result<(SubcatSpec, SubcatSpec)> {
    Ok(match kind {
        PairKind::Gorenstein => {
            let p = gorenstein_profile(alg, g.bound(alg))?;
            (p.gproj, p.ginj)
        }
        PairKind::Classical => (SubcatSpec::projectives(alg), SubcatSpec::injectives(alg)),
    })
}

pub fn equiv_verify(g: &Globals, algebra: Option<&str>, complexes: Option<&Path>, y_complexes: Option<&Path>, kind: PairKind) -> Result<Vec<Verdict>> {
    let src = source(g, algebra, complexes)?;
    let alg = src.algebra().clone();
    let (x, y) = pair(&alg, g, kind)?;
    let (xs, ys, maps) = match &src {
        Source::Files { complexes, maps, .. } => {
            let ys = match y_complexes {
                Some(p) => load_complexes(p)?.complexes,
                None => Vec::new(),
            };
            (complexes.clone(), ys, maps.clone())
        }
        Source::Generated(e) => match kind {
            PairKind::Gorenstein => (e.x_complexes.clone(), e.y_complexes.clone(), e.x_maps.clone()),
            PairKind::Classical => (e.proj_complexes.clone(), e.inj_complexes.clone(), Vec::new()),
        },
    };
    let mut s = FunctorSession::new(&x, &y, g.bound(&alg));
    let rep = verify_equivalence(&mut s, &xs, &ys, &maps);
    Ok(vec![Verdict::new(
        "equivalence",
        "θ: C → F(C) and ε: G(D) → D are relative quasi-isomorphisms; G F ≃ id and F G ≃ id; F(C[1]) ≃ F(C)[1]; F(Cone f) ≃ Cone(F f)",
        rep.passed,
        json!({"pair": [x.name, y.name], "source": src.origin(), "report": rep}),
    )])
}

fn profile_summary(p: &GorensteinProfile) -> serde_json::Value {
    let nonproj = p.gproj.generators.iter().filter(|m| !is_projective(m)).count();
    let noninj = p.ginj.generators.iter().filter(|m| !is_injective(m)).count();
    json!({
        "d": p.d,
        "gproj_generators": p.gproj.generators.iter().map(|m| m.dims().to_vec()).collect::<Vec<_>>(),
        "ginj_generators": p.ginj.generators.iter().map(|m| m.dims().to_vec()).collect::<Vec<_>>(),
        "finite_pd_generators": p.finite_pd.generators.len(),
        "nonprojective_gproj": nonproj,
        "noninjective_ginj": noninj,
    })
}

pub fn gorenstein_profile_cmd(g: &Globals, algebra: &str) -> Result<Vec<Verdict>> {
    let alg = load_algebra(algebra, g.field)?;
    match gorenstein_profile(&alg, g.bound(&alg)) {
        Ok(p) => Ok(vec![Verdict::new("profile", "id(A) and the injective dimensions agree up to the bound", true, profile_summary(&p))]),
        Err(e) => Ok(vec![Verdict::new("profile", "id(A) and the injective dimensions agree up to the bound", false, e.to_string())]),
    }
}

pub fn gorenstein_check(g: &Globals, algebra: &str) -> Result<Vec<Verdict>> {
    let src = source(g, Some(algebra), None)?;
    let alg = src.algebra().clone();
    let bound = g.bound(&alg);
    let profile = gorenstein_profile(&alg, bound)?;
    let probes = standard_probes(&alg, profile.d.max(1));
    let (pc, ic) = match &src {
        Source::Files { complexes, .. } => (
            complexes.iter().filter(|c| c.terms().iter().all(is_projective)).cloned().collect::<Vec<_>>(),
            complexes.iter().filter(|c| c.terms().iter().all(is_injective)).cloned().collect::<Vec<_>>(),
        ),
        Source::Generated(e) => (e.proj_complexes.clone(), e.inj_complexes.clone()),
    };
    let checks = profile_checks(&profile, &probes, bound)?;
    let thm = functor_terms_check(&profile, &probes, &pc, &ic, bound);
    Ok(vec![
        Verdict::info("profile", profile_summary(&profile)),
        Verdict::new(
            "cotorsion",
            "(GProj, finite pd, GInj) is a complete hereditary cotorsion triple; Gorenstein dimensions equal d; Ext^i(GProj, Proj) = 0",
            checks.passed,
            checks,
        ),
        Verdict::new(
            "projectives_to_injectives",
            "F sends complexes of projectives to complexes of injectives and G sends complexes of injectives to complexes of projectives",
            thm.passed,
            thm,
        ),
    ])
}

pub fn eta_verify(g: &Globals, algebra: &str) -> Result<Vec<Verdict>> {
    let src = source(g, Some(algebra), None)?;
    let alg = src.algebra().clone();
    let bound = g.bound(&alg);
    let profile = gorenstein_profile(&alg, bound)?;
    let (cs, maps) = match &src {
        Source::Files { complexes, maps, .. } => (complexes.clone(), maps.clone()),
        Source::Generated(e) => (e.x_complexes.clone(), e.x_maps.clone()),
    };
    let invariant = "η: F(P) → P ⊗ I is a homotopy equivalence iff P ⊗ Y is right GProj-acyclic; η is natural; Cone(Id ⊗ ε) ≅ P ⊗ Y";
    Ok(vec![match verify_eta(&profile, &cs, &maps, bound) {
        Ok(rep) => Verdict::new("eta", invariant, rep.passed, json!({"source": src.origin(), "report": rep})),
        Err(e) => Verdict::new("eta", invariant, false, json!({"error": e.to_string()})),
    }])
}
