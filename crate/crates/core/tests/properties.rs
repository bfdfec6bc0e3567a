use balpair_core::approx::{left_approximation, lift_to_chain_map, resolution, resolution_dim, resolve, right_approximation, Stop, SubcatSpec};
use balpair_core::balanced::{horseshoe, is_right_acyclic};
use balpair_core::compare::verify_eta;
use balpair_core::complexes::{homotopy_inverse, mapping_cone, null_homotopy, ChainMap, Complex};
use balpair_core::corpus::{self, random_chain_map, random_complex, CorpusEntry, Shape};
use balpair_core::exactlin::{FieldSpec, Matrix};
use balpair_core::quiveralg::{
    default_ext_bound, ext_dim, ext_dim_via_injectives, hom_space, indecomposable_projectives, projective, Algebra, DirectSum, Module, ModuleMap,
};
use balpair_core::totalization::{auto_width, build_quasi_bicomplex, is_right_quasi_iso, lift_through_epsilon, totalize, IShriek};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn algebras(p: u32) -> Vec<Algebra> {
    vec![
        corpus::dual_numbers(p).unwrap(),
        corpus::path_a2(p).unwrap(),
        corpus::selfinjective_nakayama(p).unwrap(),
        corpus::gorenstein_nakayama(p).unwrap(),
    ]
}

fn small_entry(alg: &Algebra, seed: u64) -> CorpusEntry {
    corpus::entry("prop", alg, seed, Shape { random_complexes: 0, maps: 0, ..Shape::default() }).unwrap()
}

fn random_map(m: &Module, n: &Module, rng: &mut ChaCha8Rng) -> ModuleMap {
    let h = hom_space(m, n);
    let p = m.field().p();
    let coeffs: Vec<u32> = (0..h.dim()).map(|_| rng.gen_range(0..p)).collect();
    h.combine(&coeffs)
}

/// The cokernel of a random map between sums of probe modules.
fn random_module(e: &CorpusEntry, rng: &mut ChaCha8Rng) -> Module {
    let probes = SubcatSpec::new("probes", e.probes.clone()).unwrap();
    let shape = Shape { max_len: 1, max_summands: 2, ..Shape::default() };
    let a = random_complex(&probes, rng, shape);
    let b = random_complex(&probes, rng, shape);
    let (a, b) = (a.terms().first().cloned().unwrap_or(Module::zero(&e.algebra)), b.terms().first().cloned().unwrap_or(Module::zero(&e.algebra)));
    let f = random_map(&a, &b, rng);
    f.cokernel().0
}

fn matrix(field: FieldSpec, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let data: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(0..field.p() as i64)).collect();
    Matrix::from_flat(field, rows, cols, &data).unwrap()
}

fn setup(p_index: usize, alg_index: usize, seed: u64) -> (CorpusEntry, ChaCha8Rng) {
    let p = [2, 3][p_index];
    let alg = &algebras(p)[alg_index];
    (small_entry(alg, seed), ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn solve_kernel_rref(p in prop::sample::select(vec![2u32, 3, 5]), rows in 0usize..6, cols in 0usize..6, seed in any::<u64>()) {
        let f = FieldSpec::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = matrix(f, rows, cols, &mut rng);
        let x = matrix(f, cols, 2, &mut rng);
        let b = a.dot(&x);
        let y = a.solve(&b).unwrap().expect("consistent system");
        prop_assert_eq!(a.dot(&y), b);
        let k = a.kernel_basis();
        prop_assert!(a.dot(&k).is_zero());
        prop_assert_eq!(k.rank(), cols - a.rank());
        let r = a.rref().matrix;
        prop_assert_eq!(r.rref().matrix, r);
    }

    #[test]
    fn hom_from_projective_is_the_vertex_space(pi in 0usize..2, ai in 0usize..4, seed in any::<u64>()) {
        let (e, mut rng) = setup(pi, ai, seed);
        let m = random_module(&e, &mut rng);
        for v in 0..e.algebra.vertex_count() {
            prop_assert_eq!(hom_space(&projective(&e.algebra, v), &m).dim(), m.dim_at(v));
        }
    }

    #[test]
    fn ext_is_balanced(pi in 0usize..2, ai in 0usize..4, seed in any::<u64>()) {
        let (e, mut rng) = setup(pi, ai, seed);
        let m = random_module(&e, &mut rng);
        let n = random_module(&e, &mut rng);
        let b = default_ext_bound(&e.algebra);
        for i in 0..3 {
            prop_assert_eq!(ext_dim(&m, &n, i, b).unwrap(), ext_dim_via_injectives(&m, &n, i, b).unwrap());
        }
    }

    #[test]
    fn homotopy_witnesses(pi in 0usize..2, ai in 0usize..4, seed in any::<u64>()) {
        let (e, mut rng) = setup(pi, ai, seed);
        let probes = SubcatSpec::new("probes", e.probes.clone()).unwrap();
        let c = random_complex(&probes, &mut rng, Shape::default());
        let d = random_complex(&probes, &mut rng, Shape::default());
        let f = random_chain_map(&c, &d, &mut rng);
        if let Some(h) = null_homotopy(&f) {
            prop_assert!(h.witnesses(&f));
        }
        // d s + s d for a random s is null-homotopic, and f + (d s + s d) is homotopic to f.
        let s: Vec<(i64, ModuleMap)> = c.degrees().map(|n| (n, random_map(c.term(n), d.term(n - 1), &mut rng))).collect();
        let sm = |n: i64| s.iter().find(|(k, _)| *k == n).map(|(_, m)| m.clone()).unwrap_or_else(|| ModuleMap::zero(c.term(n), d.term(n - 1)));
        let ds = ChainMap::new(&c, &d, |n| d.diff(n - 1).compose(&sm(n)).add(&sm(n + 1).compose(&c.diff(n)))).unwrap();
        let h = null_homotopy(&ds);
        prop_assert!(h.as_ref().is_some_and(|h| h.witnesses(&ds)));
        prop_assert!(null_homotopy(&f.add(&ds).sub(&f)).is_some());
        let has_cohomology = c.cohomology_dims().iter().any(|(_, v)| v.iter().any(|&x| x > 0));
        prop_assert_eq!(null_homotopy(&ChainMap::identity(&c)).is_none(), has_cohomology);
    }

    #[test]
    fn cone_triangle(pi in 0usize..2, ai in 0usize..4, seed in any::<u64>()) {
        let (e, mut rng) = setup(pi, ai, seed);
        let probes = SubcatSpec::new("probes", e.probes.clone()).unwrap();
        let c = random_complex(&probes, &mut rng, Shape::default());
        let d = random_complex(&probes, &mut rng, Shape::default());
        let f = random_chain_map(&c, &d, &mut rng);
        let cone = mapping_cone(&f);
        prop_assert!(cone.complex.is_valid());
        prop_assert!(cone.into_cone.is_chain_map() && cone.to_shift.is_chain_map());
        prop_assert!(cone.to_shift.compose(&cone.into_cone).is_zero());
        prop_assert!(null_homotopy(&cone.into_cone.compose(&f)).is_some());
    }

    #[test]
    fn approximations_and_resolutions(pi in 0usize..2, ai in 0usize..4, seed in any::<u64>()) {
        let (e, mut rng) = setup(pi, ai, seed);
        let m = random_module(&e, &mut rng);
        let (x, y) = (e.x(), e.y());
        prop_assert!(right_approximation(x, &m).verify(x));
        prop_assert!(left_approximation(y, &m).verify(y));
        let b = default_ext_bound(&e.algebra);
        let mut gens = x.generators.clone();
        gens.reverse();
        let xr = SubcatSpec::new("reversed", gens).unwrap();
        let n0 = resolution_dim(x, &m, b);
        prop_assert_eq!(n0, resolution_dim(&xr, &m, b));
        let n0 = n0.expect("finite resolution dimension");
        // Relative Ext vanishes above the resolution dimension.
        let full = resolve(x, &m, Stop::Steps(n0 + 3), b + 3).unwrap().complex();
        for n in &e.probes {
            for (deg, dim) in full.hom_to_cohomology(n) {
                if deg > n0 as i64 && deg < (n0 + 3) as i64 {
                    prop_assert_eq!(dim, 0, "degree {}", deg);
                }
            }
        }
        // Two resolutions of m are homotopy equivalent over the identity.
        let r1 = resolution(x, &m, b).unwrap();
        let r2 = resolution(&xr, &m, b).unwrap();
        let id = ModuleMap::identity(&m);
        let f = lift_to_chain_map(&r1, &r2, &id).unwrap();
        let g = lift_to_chain_map(&r2, &r1, &id).unwrap();
        prop_assert!(null_homotopy(&g.compose(&f).sub(&ChainMap::identity(&r1.complex()))).is_some());
        prop_assert!(null_homotopy(&f.compose(&g).sub(&ChainMap::identity(&r2.complex()))).is_some());
    }

    #[test]
    fn horseshoe_rows_and_columns(pi in 0usize..2, ai in 0usize..4, seed in any::<u64>()) {
        let (e, mut rng) = setup(pi, ai, seed);
        let m = random_module(&e, &mut rng);
        let n = random_module(&e, &mut rng);
        let g = random_map(&m, &n, &mut rng);
        let (k, incl) = g.kernel();
        let (im, onto, _) = g.image();
        let split = DirectSum::new(&e.algebra, &[m.clone(), n.clone()]);
        let sequences = [(k, incl, im, onto, m.clone()), (m.clone(), split.inclusion(0), n.clone(), split.projection(1), split.module.clone())];
        for (k, incl, im, onto, mid) in sequences {
            let exact = e.x().generators.iter().all(|x| hom_space(x, &k).dim() + hom_space(x, &im).dim() == hom_space(x, &mid).dim());
            let h = horseshoe(e.x(), &incl, &onto, default_ext_bound(&e.algebra));
            prop_assert_eq!(h.is_ok(), exact);
            let Ok(h) = h else { continue };
            prop_assert!(h.middle.is_acyclic());
            prop_assert!(h.inclusion.is_chain_map() && h.projection.is_chain_map());
            prop_assert!(h.projection.compose(&h.inclusion).is_zero());
            for k in h.middle.degrees() {
                let (i, q) = (h.inclusion.component(k), h.projection.component(k));
                prop_assert!(i.is_injective() && q.is_surjective());
                prop_assert_eq!(i.rank() + q.rank(), h.middle.term(k).total_dim());
            }
        }
    }

    #[test]
    fn quasi_bicomplex_and_epsilon(pi in 0usize..2, ai in 0usize..4, seed in any::<u64>()) {
        let (e, mut rng) = setup(pi, ai, seed);
        let probes = SubcatSpec::new("probes", e.probes.clone()).unwrap();
        let c = random_complex(&probes, &mut rng, Shape { max_len: 4, max_summands: 3, ..Shape::default() });
        let b = default_ext_bound(&e.algebra);
        let w = auto_width(e.x(), &c, b).unwrap();
        for width in [w, w + 1] {
            let qb = build_quasi_bicomplex(e.x(), &c, width).unwrap();
            prop_assert!(qb.identity_defects().is_empty());
            let at = totalize(&qb, &c).unwrap();
            prop_assert!(at.total.is_valid());
            prop_assert!(at.total.terms().iter().all(|t| balpair_core::approx::membership(e.x(), t)));
            prop_assert!(is_right_quasi_iso(e.x(), &at.epsilon));
            let xc = random_complex(e.x(), &mut rng, Shape::default());
            let f = random_chain_map(&xc, &c, &mut rng);
            let lift = lift_through_epsilon(&at, &f).unwrap();
            prop_assert_eq!(at.epsilon.compose(&lift), f);
        }
    }

    #[test]
    fn acyclic_x_complexes_are_contractible(pi in 0usize..2, ai in 0usize..4, seed in any::<u64>()) {
        let (e, mut rng) = setup(pi, ai, seed);
        let c = random_complex(e.x(), &mut rng, Shape::default());
        let d = random_complex(e.x(), &mut rng, Shape::default());
        let f = random_chain_map(&c, &d, &mut rng);
        for z in [c.clone(), mapping_cone(&f).complex, mapping_cone(&ChainMap::identity(&c)).complex] {
            prop_assert_eq!(is_right_acyclic(e.x(), &z), null_homotopy(&ChainMap::identity(&z)).is_some());
        }
        let mut g = IShriek::new(e.x(), default_ext_bound(&e.algebra));
        let at = g.object(&c).unwrap();
        prop_assert!(homotopy_inverse(&at.epsilon).is_some());
    }

    #[test]
    fn comparison_on_projective_complexes(pi in 0usize..2, plane in any::<bool>(), seed in any::<u64>()) {
        let p = [2, 3][pi];
        let alg = if plane { corpus::plane(p).unwrap() } else { corpus::dual_numbers(p).unwrap() };
        let e = small_entry(&alg, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let proj = SubcatSpec::new("proj", indecomposable_projectives(&alg)).unwrap();
        let cs: Vec<Complex> = (0..2).map(|_| random_complex(&proj, &mut rng, Shape::default())).collect();
        let f = random_chain_map(&cs[0], &cs[1], &mut rng);
        let rep = verify_eta(&e.profile, &cs, &[f], default_ext_bound(&alg)).unwrap();
        for c in &rep.complexes {
            prop_assert!(c.agree && c.cone_identified);
        }
        prop_assert!(rep.passed);
    }
}
