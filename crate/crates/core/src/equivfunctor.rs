//! The functor `F: K(X) → K(Y)` given by Y-coresolutions of X-complexes,
//! its quasi-inverse `G` given by X-resolutions, and a verifier for the
//! equivalence (unit, counit, shift and cone compatibility).

use serde::Serialize;

use crate::approx::{membership, SubcatSpec};
use crate::balanced::is_left_acyclic;
use crate::complexes::{homotopy_inverse, mapping_cone, ChainMap, Complex, Homotopy};
use crate::error::{Error, Result};
use crate::quiveralg::DirectSum;
use crate::totalization::{cototalize, extend_through_theta, lift_through_epsilon, AugmentedTotal, CoaugmentedTotal, IShriek};

/// A balanced pair with memoized choices of `θ_C: C → F(C)` for
/// X-complexes and `ε_D: G(D) → D` for Y-complexes.
#[derive(Clone, Debug)]
pub struct FunctorSession {
    pub x: SubcatSpec,
    pub y: SubcatSpec,
    pub bound: usize,
    f_memo: Vec<(Complex, CoaugmentedTotal)>,
    g: IShriek,
}

impl FunctorSession {
    pub fn new(x: &SubcatSpec, y: &SubcatSpec, bound: usize) -> FunctorSession {
        FunctorSession { x: x.clone(), y: y.clone(), bound, f_memo: Vec::new(), g: IShriek::new(x, bound) }
    }

    fn check_terms(sub: &SubcatSpec, c: &Complex) -> Result<()> {
        match c.degrees().find(|&n| !membership(sub, c.term(n))) {
            Some(n) => Err(Error::InvalidComplex(format!("term in degree {n} is not in {}", sub.name))),
            None => Ok(()),
        }
    }

    /// `θ_C: C → F(C)`, computed once per complex.
    pub fn f_object(&mut self, c: &Complex) -> Result<CoaugmentedTotal> {
        if let Some((_, ct)) = self.f_memo.iter().find(|(k, _)| k == c) {
            return Ok(ct.clone());
        }
        Self::check_terms(&self.x, c)?;
        let ct = cototalize(&self.y, c, self.bound)?;
        self.f_memo.push((c.clone(), ct.clone()));
        Ok(ct)
    }

    /// Overrides the memo entry of `c` (used to inject faulty choices).
    pub fn seed_f(&mut self, c: &Complex, ct: CoaugmentedTotal) {
        self.f_memo.retain(|(k, _)| k != c);
        self.f_memo.push((c.clone(), ct));
    }

    /// `F(f)` with `F(f) ∘ θ_C = θ_{C'} ∘ f`; the square commutes exactly, so
    /// the attached homotopy is zero.
    pub fn f_map(&mut self, f: &ChainMap) -> Result<(ChainMap, Homotopy)> {
        let src = self.f_object(f.source())?;
        let tgt = self.f_object(f.target())?;
        let g = tgt.theta.compose(f);
        let h = extend_through_theta(&src, &g)?;
        let w = Homotopy::zero(&h.compose(&src.theta).sub(&g));
        Ok((h, w))
    }

    /// `ε_D: G(D) → D`.
    pub fn g_object(&mut self, d: &Complex) -> Result<AugmentedTotal> {
        Self::check_terms(&self.y, d)?;
        self.g.object(d)
    }

    pub fn g_map(&mut self, f: &ChainMap) -> Result<(ChainMap, Homotopy)> {
        self.g.map(f)
    }

    /// Unit comparison `u: C → G(F(C))` with `ε ∘ u = θ_C`.
    pub fn unit(&mut self, c: &Complex) -> Result<ChainMap> {
        let ct = self.f_object(c)?;
        let at = self.g.object(&ct.total)?;
        lift_through_epsilon(&at, &ct.theta)
    }

    /// Counit comparison `v: F(G(D)) → D` with `v ∘ θ = ε_D`.
    pub fn counit(&mut self, d: &Complex) -> Result<ChainMap> {
        let at = self.g_object(d)?;
        let ct = self.f_object(&at.total)?;
        extend_through_theta(&ct, &at.epsilon)
    }

    /// `s: F(C[1]) → F(C)[1]` with `s ∘ θ_{C[1]} = θ_C[1]`.
    pub fn shift_comparison(&mut self, c: &Complex) -> Result<ChainMap> {
        let ct = self.f_object(c)?;
        let shifted = c.shift(1);
        let cs = self.f_object(&shifted)?;
        extend_through_theta(&cs, &ct.theta.shift(1).retarget(&shifted, &ct.total.shift(1)))
    }

    /// `φ: F(Cone f) → Cone(F f)` extending `diag(θ_C, θ_{C'})`.
    pub fn cone_comparison(&mut self, f: &ChainMap) -> Result<ChainMap> {
        let (ff, _) = self.f_map(f)?;
        let src = self.f_object(f.source())?;
        let tgt = self.f_object(f.target())?;
        let cone = mapping_cone(f).complex;
        let fcone = mapping_cone(&ff).complex;
        let alg = cone.algebra().clone();
        let (c, c2) = (f.source(), f.target());
        let (fc, fc2) = (&src.total, &tgt.total);
        let kappa = ChainMap::new(&cone, &fcone, |n| {
            let a = DirectSum::new(&alg, &[c.term(n + 1).clone(), c2.term(n).clone()]);
            let b = DirectSum::new(&alg, &[fc.term(n + 1).clone(), fc2.term(n).clone()]);
            let grid = vec![vec![Some(src.theta.component(n + 1)), None], vec![None, Some(tgt.theta.component(n))]];
            a.matrix_to(&b, &grid)
        })?;
        let cc = self.f_object(&cone)?;
        extend_through_theta(&cc, &kappa)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ObjectWitness {
    pub index: usize,
    /// Dimension of each term of the image complex.
    pub image_dims: Vec<usize>,
    /// `θ` (resp. `ε`) has left Y-acyclic (resp. right X-acyclic) cone.
    pub quasi_iso: bool,
    /// The unit (resp. counit) comparison is a homotopy equivalence.
    pub round_trip: bool,
    /// `F(C[1]) ≃ F(C)[1]` (X-objects only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ObjectWitness {
    fn passed(&self) -> bool {
        self.error.is_none() && self.quasi_iso && self.round_trip && self.shift.unwrap_or(true)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleWitness {
    pub index: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub x_objects: Vec<ObjectWitness>,
    pub y_objects: Vec<ObjectWitness>,
    pub triangles: Vec<TriangleWitness>,
    pub passed: bool,
}

fn dims(c: &Complex) -> Vec<usize> {
    c.terms().iter().map(|t| t.total_dim()).collect()
}

fn witness_x(s: &mut FunctorSession, c: &Complex, index: usize) -> Result<ObjectWitness> {
    let ct = s.f_object(c)?;
    let quasi_iso = is_left_acyclic(&s.y, &mapping_cone(&ct.theta).complex);
    let round_trip = homotopy_inverse(&s.unit(c)?).is_some();
    let shift = Some(homotopy_inverse(&s.shift_comparison(c)?).is_some());
    Ok(ObjectWitness { index, image_dims: dims(&ct.total), quasi_iso, round_trip, shift, error: None })
}

fn witness_y(s: &mut FunctorSession, d: &Complex, index: usize) -> Result<ObjectWitness> {
    let at = s.g_object(d)?;
    let quasi_iso = crate::totalization::is_right_quasi_iso(&s.x, &at.epsilon);
    let round_trip = homotopy_inverse(&s.counit(d)?).is_some();
    Ok(ObjectWitness { index, image_dims: dims(&at.total), quasi_iso, round_trip, shift: None, error: None })
}

fn failed(index: usize, e: Error) -> ObjectWitness {
    ObjectWitness { index, image_dims: vec![], quasi_iso: false, round_trip: false, shift: None, error: Some(e.to_string()) }
}

/// Checks `G F ≃ id` on every X-complex, `F G ≃ id` on every Y-complex,
/// shift compatibility, and `F(Cone f) ≃ Cone(F f)` for every map.
pub fn verify_equivalence(s: &mut FunctorSession, x_complexes: &[Complex], y_complexes: &[Complex], maps: &[ChainMap]) -> EquivalenceReport {
    let x_objects: Vec<ObjectWitness> =
        x_complexes.iter().enumerate().map(|(i, c)| witness_x(s, c, i).unwrap_or_else(|e| failed(i, e))).collect();
    let y_objects: Vec<ObjectWitness> =
        y_complexes.iter().enumerate().map(|(i, d)| witness_y(s, d, i).unwrap_or_else(|e| failed(i, e))).collect();
    let triangles: Vec<TriangleWitness> = maps
        .iter()
        .enumerate()
        .map(|(i, f)| match s.cone_comparison(f) {
            Ok(phi) => TriangleWitness { index: i, passed: homotopy_inverse(&phi).is_some(), error: None },
            Err(e) => TriangleWitness { index: i, passed: false, error: Some(e.to_string()) },
        })
        .collect();
    let passed = x_objects.iter().all(ObjectWitness::passed)
        && y_objects.iter().all(ObjectWitness::passed)
        && triangles.iter().all(|t| t.passed);
    EquivalenceReport { x_objects, y_objects, triangles, passed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::homotopic;
    use crate::exactlin::Matrix;
    use crate::quiveralg::{injective, projective, Algebra, AlgebraPresentation, Module, ModuleMap, Quiver};

    fn a2(p: u32) -> Algebra {
        Algebra::build(&AlgebraPresentation { field: p, quiver: Quiver::new(2, &[(0, 1, "a")]), relations: vec![], nilpotency_bound: None }).unwrap()
    }

    fn session(a: &Algebra) -> FunctorSession {
        FunctorSession::new(&SubcatSpec::projectives(a), &SubcatSpec::injectives(a), 4)
    }

    fn p2_to_p1(a: &Algebra) -> ChainMap {
        let f = a.field();
        let (p1, p2) = (projective(a, 0), projective(a, 1));
        let m = ModuleMap::new(&p2, &p1, vec![Matrix::zeros(f, 1, 0), Matrix::identity(f, 1)]).unwrap();
        let s = Complex::stalk(&p2, 0);
        let t = Complex::stalk(&p1, 0);
        ChainMap::new(&s, &t, |_| m.clone()).unwrap()
    }

    #[test]
    fn f_of_projective_stalks() {
        let a = a2(3);
        let mut s = session(&a);
        let p2 = Complex::stalk(&projective(&a, 1), 0);
        let ct = s.f_object(&p2).unwrap();
        assert_eq!(dims(&ct.total), vec![2, 1]);
        assert_eq!(ct.total.term(1), &injective(&a, 0));
        let p1 = Complex::stalk(&projective(&a, 0), 0);
        assert_eq!(dims(&s.f_object(&p1).unwrap().total), vec![2]);
        let z = Complex::zero(&a);
        assert!(s.f_object(&z).unwrap().total.is_zero());
    }

    #[test]
    fn f_rejects_non_member_terms() {
        let a = a2(2);
        let mut s = session(&a);
        let c = Complex::stalk(&Module::simple(&a, 0), 0);
        assert!(s.f_object(&c).is_err());
    }

    #[test]
    fn functor_laws() {
        let a = a2(3);
        let mut s = session(&a);
        let f = p2_to_p1(&a);
        let (fi, _) = s.f_map(&ChainMap::identity(f.source())).unwrap();
        assert!(homotopic(&fi, &ChainMap::identity(&s.f_object(f.source()).unwrap().total)));
        let (ff, w) = s.f_map(&f).unwrap();
        let src = s.f_object(f.source()).unwrap();
        let tgt = s.f_object(f.target()).unwrap();
        assert!(w.witnesses(&ff.compose(&src.theta).sub(&tgt.theta.compose(&f))));
        let twice = f.scale(2);
        let (f2, _) = s.f_map(&twice).unwrap();
        assert!(homotopic(&f2, &ff.scale(2)));
    }

    #[test]
    fn equivalence_on_a2() {
        for p in [2, 3] {
            let a = a2(p);
            let mut s = session(&a);
            let xs: Vec<Complex> = (0..2).map(|v| Complex::stalk(&projective(&a, v), 0)).collect();
            let ys: Vec<Complex> = (0..2).map(|v| Complex::stalk(&injective(&a, v), 0)).collect();
            let rep = verify_equivalence(&mut s, &xs, &ys, &[p2_to_p1(&a)]);
            assert!(rep.passed, "{rep:?}");
        }
    }

    #[test]
    fn corrupted_memo_is_reported() {
        let a = a2(3);
        let mut s = session(&a);
        let c = Complex::stalk(&projective(&a, 1), 0);
        let mut ct = s.f_object(&c).unwrap();
        ct.theta = ChainMap::zero(&c, &ct.total);
        s.seed_f(&c, ct);
        let rep = verify_equivalence(&mut s, &[c], &[], &[]);
        assert!(!rep.passed);
        assert!(!rep.x_objects[0].quasi_iso);
    }

    #[test]
    fn empty_corpus_passes() {
        let a = a2(2);
        let mut s = session(&a);
        let z = Complex::zero(&a);
        assert!(verify_equivalence(&mut s, &[z.clone()], &[z], &[]).passed);
    }
}
