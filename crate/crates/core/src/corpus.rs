//! Shipped example algebras, balanced pairs and seeded random complexes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::approx::{random_member, SubcatSpec};
use crate::complexes::{chain_map_space, ChainMap, Complex};
use crate::error::Result;
use crate::exactlin::Matrix;
use crate::gorenstein::{gorenstein_profile, standard_probes, GorensteinProfile};
use crate::quiveralg::{default_ext_bound, hom_space, indecomposable_projectives, injective_coresolution, simples, Algebra, AlgebraPresentation, Module, ModuleMap, Quiver, Relation};

fn build(p: u32, quiver: Quiver, relations: Vec<Relation>) -> Result<Algebra> {
    Algebra::build(&AlgebraPresentation { field: p, quiver, relations, nilpotency_bound: None })
}

/// `k[x]/(x²)`.
pub fn dual_numbers(p: u32) -> Result<Algebra> {
    build(p, Quiver::new(1, &[(0, 0, "x")]), vec![Relation::zero_path("x x")])
}

/// The path algebra of `0 → 1`.
pub fn path_a2(p: u32) -> Result<Algebra> {
    build(p, Quiver::new(2, &[(0, 1, "a")]), vec![])
}

/// Two-cycle with both length-two paths zero; self-injective of Loewy length 2.
pub fn selfinjective_nakayama(p: u32) -> Result<Algebra> {
    build(p, Quiver::new(2, &[(0, 1, "a"), (1, 0, "b")]), vec![Relation::zero_path("a b"), Relation::zero_path("b a")])
}

/// Cyclic Nakayama algebra with Kupisch series `[3, 3, 3, 2]`: Gorenstein of
/// dimension 2 with non-projective Gorenstein-projective modules.
pub fn gorenstein_nakayama(p: u32) -> Result<Algebra> {
    build(
        p,
        Quiver::new(4, &[(0, 1, "a0"), (1, 2, "a1"), (2, 3, "a2"), (3, 0, "a3")]),
        vec![Relation::zero_path("a0 a1 a2"), Relation::zero_path("a1 a2 a3"), Relation::zero_path("a3 a0")],
    )
}

/// `k[x, y]/(x², y², xy − yx)`.
pub fn plane(p: u32) -> Result<Algebra> {
    build(
        p,
        Quiver::new(1, &[(0, 0, "x"), (0, 0, "y")]),
        vec![Relation::zero_path("x x"), Relation::zero_path("y y"), Relation::parse(&[(1, "x y"), (-1, "y x")])],
    )
}

/// Projectives on both sides over `A₂`: the second side is not balanced.
pub fn broken_pair(p: u32) -> Result<(SubcatSpec, SubcatSpec)> {
    let a = path_a2(p)?;
    let mut y = SubcatSpec::projectives(&a);
    y.name = "proj (as coresolving side)".into();
    Ok((SubcatSpec::projectives(&a), y))
}

/// One algebra with its Gorenstein pair and test complexes.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub algebra: Algebra,
    pub profile: GorensteinProfile,
    pub probes: Vec<Module>,
    /// Complexes with arbitrary terms.
    pub complexes: Vec<Complex>,
    pub x_complexes: Vec<Complex>,
    pub y_complexes: Vec<Complex>,
    /// Maps between members of `x_complexes`.
    pub x_maps: Vec<ChainMap>,
    /// Maps from `x_complexes` into `complexes`.
    pub lift_maps: Vec<ChainMap>,
    /// Complexes of projectives.
    pub proj_complexes: Vec<Complex>,
    /// Complexes of injectives.
    pub inj_complexes: Vec<Complex>,
}

impl CorpusEntry {
    pub fn x(&self) -> &SubcatSpec {
        &self.profile.gproj
    }

    pub fn y(&self) -> &SubcatSpec {
        &self.profile.ginj
    }
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub field: u32,
    pub seed: u64,
    pub entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn complex_count(&self) -> usize {
        self.entries.iter().map(|e| e.complexes.len()).sum()
    }

    pub fn entry(&self, name: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

/// Shape parameters for generated complexes.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub random_complexes: usize,
    pub max_len: usize,
    pub max_summands: usize,
    pub maps: usize,
}

impl Default for Shape {
    fn default() -> Self {
        Shape { random_complexes: 8, max_len: 4, max_summands: 3, maps: 8 }
    }
}

/// The four balanced-pair algebras with generated complexes.
pub fn shipped(p: u32, seed: u64) -> Result<Corpus> {
    shipped_with(p, seed, Shape::default())
}

pub fn shipped_with(p: u32, seed: u64, shape: Shape) -> Result<Corpus> {
    let algebras = [
        ("dual-numbers", dual_numbers(p)?),
        ("a2", path_a2(p)?),
        ("selfinjective-nakayama", selfinjective_nakayama(p)?),
        ("gorenstein-nakayama", gorenstein_nakayama(p)?),
    ];
    let entries = algebras
        .into_iter()
        .enumerate()
        .map(|(i, (name, alg))| entry(name, &alg, seed.wrapping_mul(31).wrapping_add(i as u64), shape))
        .collect::<Result<Vec<_>>>()?;
    Ok(Corpus { field: p, seed, entries })
}

/// The commutative algebras exercised by the tensor comparison.
pub fn commutative(p: u32, seed: u64) -> Result<Vec<CorpusEntry>> {
    let shape = Shape { random_complexes: 3, ..Shape::default() };
    Ok(vec![entry("dual-numbers", &dual_numbers(p)?, seed, shape)?, entry("plane", &plane(p)?, seed.wrapping_add(1), shape)?])
}

pub fn entry(name: &str, alg: &Algebra, seed: u64, shape: Shape) -> Result<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = default_ext_bound(alg);
    let profile = gorenstein_profile(alg, bound)?;
    let probes = standard_probes(alg, profile.d.max(1));
    let all = SubcatSpec::new("probe modules", probes.clone())?;
    let proj = SubcatSpec::projectives(alg);
    let inj = SubcatSpec::injectives(alg);

    let mut complexes = vec![Complex::zero(alg)];
    complexes.extend(probes.iter().map(|m| Complex::stalk(m, 0)));
    complexes.extend(simples(alg).iter().map(|m| coresolution_complex(m, profile.d + 1)));
    complexes.extend((0..shape.random_complexes).map(|_| random_complex(&all, &mut rng, shape)));

    let mut x_complexes = vec![Complex::zero(alg)];
    x_complexes.extend(profile.gproj.generators.iter().map(|g| Complex::stalk(g, 0)));
    x_complexes.extend((0..shape.random_complexes).map(|_| random_complex(&profile.gproj, &mut rng, shape)));

    let mut y_complexes = vec![Complex::zero(alg)];
    y_complexes.extend(profile.ginj.generators.iter().map(|g| Complex::stalk(g, 0)));
    y_complexes.extend((0..shape.random_complexes).map(|_| random_complex(&profile.ginj, &mut rng, shape)));

    let mut proj_complexes = vec![Complex::zero(alg)];
    proj_complexes.extend(indecomposable_projectives(alg).iter().map(|g| Complex::stalk(g, 0)));
    proj_complexes.extend((0..shape.random_complexes.min(3)).map(|_| random_complex(&proj, &mut rng, shape)));
    let inj_complexes: Vec<Complex> = (0..shape.random_complexes.min(3)).map(|_| random_complex(&inj, &mut rng, shape)).collect();

    let x_maps = random_maps(&x_complexes, &x_complexes, shape.maps, &mut rng);
    let lift_maps = random_maps(&x_complexes, &complexes, shape.maps, &mut rng);
    Ok(CorpusEntry {
        name: name.to_string(),
        algebra: alg.clone(),
        profile,
        probes,
        complexes,
        x_complexes,
        y_complexes,
        x_maps,
        lift_maps,
        proj_complexes,
        inj_complexes,
    })
}

/// `m → I^0 → ⋯ → I^{len−1}` with `m` in degree 0, truncated after `len` injectives.
pub fn coresolution_complex(m: &Module, len: usize) -> Complex {
    let maps = injective_coresolution(m, len);
    let alg = m.algebra();
    let term = |k: i64| if k == 0 { m.clone() } else { maps[(k - 1) as usize].target().clone() };
    Complex::from_fn(alg, 0, len as i64, term, |k| maps[k as usize].clone()).trimmed()
}

fn random_coeffs(n: usize, p: u32, rng: &mut ChaCha8Rng) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..p)).collect()
}

fn random_counts(x: &SubcatSpec, max_summands: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut counts = vec![0; x.generators.len()];
    if counts.is_empty() {
        return counts;
    }
    for _ in 0..rng.gen_range(1..=max_summands.max(1)) {
        counts[rng.gen_range(0..x.generators.len())] += 1;
    }
    counts
}

/// A random map `m → n` annihilating `prev` (that is, `h ∘ prev = 0`).
fn random_map_after(prev: Option<&ModuleMap>, m: &Module, n: &Module, rng: &mut ChaCha8Rng) -> ModuleMap {
    let space = hom_space(m, n);
    let f = m.field();
    if space.dim() == 0 {
        return ModuleMap::zero(m, n);
    }
    let basis: Vec<ModuleMap> = (0..space.dim())
        .map(|t| {
            let mut e = vec![0; space.dim()];
            e[t] = 1;
            space.combine(&e)
        })
        .collect();
    let coeffs = match prev {
        None => random_coeffs(basis.len(), f.p(), rng),
        Some(d) => {
            let cols: Vec<Vec<u32>> = basis.iter().map(|b| b.compose(d).vectorize()).collect();
            let rows = cols.first().map_or(0, Vec::len);
            let mut a = Matrix::zeros(f, rows, cols.len());
            for (c, col) in cols.iter().enumerate() {
                for (r, &v) in col.iter().enumerate() {
                    a.set(r, c, v);
                }
            }
            let k = a.kernel_basis();
            let lam = random_coeffs(k.cols(), f.p(), rng);
            (0..basis.len()).map(|t| (0..k.cols()).fold(0u64, |acc, j| (acc + k.get(t, j) as u64 * lam[j] as u64) % f.p() as u64) as u32).collect()
        }
    };
    space.combine(&coeffs)
}

/// A complex in degrees `lo..lo+len` with terms in `add(x)` and random
/// differentials squaring to zero.
pub fn random_complex(x: &SubcatSpec, rng: &mut ChaCha8Rng, shape: Shape) -> Complex {
    let alg = x.algebra();
    let len = rng.gen_range(1..=shape.max_len.max(1));
    let lo = rng.gen_range(-1..=0);
    let terms: Vec<Module> = (0..len).map(|_| random_member(x, &random_counts(x, shape.max_summands, rng))).collect();
    let mut diffs: Vec<ModuleMap> = Vec::new();
    for k in 0..len.saturating_sub(1) {
        let d = random_map_after(diffs.last(), &terms[k], &terms[k + 1], rng);
        diffs.push(d);
    }
    Complex::new(alg, lo, terms, diffs).expect("differentials square to zero").trimmed()
}

/// A random chain map from the solution space of the chain-map system.
pub fn random_chain_map(src: &Complex, tgt: &Complex, rng: &mut ChaCha8Rng) -> ChainMap {
    let basis = chain_map_space(src, tgt);
    let p = src.field().p();
    let mut f = ChainMap::zero(src, tgt);
    for b in &basis {
        f = f.add(&b.scale(rng.gen_range(0..p)));
    }
    if f.is_zero() {
        if let Some(b) = basis.first() {
            return b.clone();
        }
    }
    f
}

/// `count` maps between random members of `sources` and `targets`,
/// preferring pairs with nonzero maps.
pub fn random_maps(sources: &[Complex], targets: &[Complex], count: usize, rng: &mut ChaCha8Rng) -> Vec<ChainMap> {
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 20 * count.max(1) && !sources.is_empty() && !targets.is_empty() {
        attempts += 1;
        let s = &sources[rng.gen_range(0..sources.len())];
        let t = &targets[rng.gen_range(0..targets.len())];
        let f = random_chain_map(s, t, rng);
        if !f.is_zero() || attempts >= 10 * count.max(1) {
            out.push(f);
        }
    }
    out
}
