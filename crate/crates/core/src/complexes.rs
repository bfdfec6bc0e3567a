//! Bounded cochain complexes of modules, chain maps, homotopies and cones.
//!
//! Conventions: `X[1]^n = X^{n+1}` with `d_{X[1]} = −d_X`; `X(1)` is the same
//! shift without the sign. `Cone(f)^n = X^{n+1} ⊕ Y^n` with differential
//! `[[−d_X, 0], [f, d_Y]]`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::FieldSpec;
use crate::mapsolve::MapSystem;
use crate::quiveralg::{hom_space, induced_rank, Algebra, DirectSum, Module, ModuleMap};

/// A complex supported on `[lo, lo + terms.len())`; outside that window all
/// terms are zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Complex {
    alg: Algebra,
    lo: i64,
    terms: Vec<Module>,
    diffs: Vec<ModuleMap>,
    zero: Module,
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex[lo={}](", self.lo)?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " → ")?;
            }
            write!(f, "{:?}", t.dims())?;
        }
        write!(f, ")")
    }
}

impl Complex {
    /// Builds a complex from its terms and the `terms.len() − 1` differentials
    /// between consecutive terms, checking `d ∘ d = 0`.
    pub fn new(alg: &Algebra, lo: i64, terms: Vec<Module>, diffs: Vec<ModuleMap>) -> Result<Complex> {
        if terms.iter().any(|t| t.algebra() != alg) {
            return Err(Error::AlgebraMismatch);
        }
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::InvalidComplex(format!("{} terms need {} differentials, got {}", terms.len(), terms.len().saturating_sub(1), diffs.len())));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.source().dims() != terms[k].dims() || d.target().dims() != terms[k + 1].dims() {
                return Err(Error::InvalidComplex(format!("differential in degree {} has the wrong shape", lo + k as i64)));
            }
        }
        let c = Complex::assemble(alg, lo, terms, diffs);
        for n in c.lo..c.hi() {
            if !c.diff(n + 1).compose(&c.diff(n)).is_zero() {
                return Err(Error::InvalidComplex(format!("d∘d ≠ 0 at degree {n}")));
            }
        }
        Ok(c)
    }

    fn assemble(alg: &Algebra, lo: i64, terms: Vec<Module>, diffs: Vec<ModuleMap>) -> Complex {
        // Rebind maps to the stored term objects so sources and targets agree.
        let diffs = diffs
            .into_iter()
            .enumerate()
            .map(|(k, d)| d.retarget(&terms[k], &terms[k + 1]))
            .collect();
        Complex { alg: alg.clone(), lo, terms, diffs, zero: Module::zero(alg) }
    }

    pub(crate) fn new_unchecked(alg: &Algebra, lo: i64, terms: Vec<Module>, diffs: Vec<ModuleMap>) -> Complex {
        let c = Complex::assemble(alg, lo, terms, diffs);
        debug_assert!(c.is_valid(), "invalid complex constructed internally");
        c
    }

    /// Builds a complex on `[lo, hi]` from closures; differentials are
    /// requested for `n ∈ [lo, hi)`.
    pub fn from_fn(alg: &Algebra, lo: i64, hi: i64, term: impl Fn(i64) -> Module, diff: impl Fn(i64) -> ModuleMap) -> Complex {
        if hi < lo {
            return Complex::zero(alg);
        }
        let terms: Vec<Module> = (lo..=hi).map(term).collect();
        let diffs: Vec<ModuleMap> = (lo..hi).map(diff).collect();
        Complex::new_unchecked(alg, lo, terms, diffs)
    }

    pub fn zero(alg: &Algebra) -> Complex {
        Complex { alg: alg.clone(), lo: 0, terms: Vec::new(), diffs: Vec::new(), zero: Module::zero(alg) }
    }

    /// `m` concentrated in degree `n`.
    pub fn stalk(m: &Module, n: i64) -> Complex {
        Complex::new_unchecked(m.algebra(), n, vec![m.clone()], vec![])
    }

    pub fn is_valid(&self) -> bool {
        (self.lo..self.hi()).all(|n| self.diff(n + 1).compose(&self.diff(n)).is_zero())
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn field(&self) -> FieldSpec {
        self.alg.field()
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Last degree of the support window (`lo − 1` when empty).
    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn terms(&self) -> &[Module] {
        &self.terms
    }

    pub fn term(&self, n: i64) -> &Module {
        if n < self.lo || n > self.hi() {
            &self.zero
        } else {
            &self.terms[(n - self.lo) as usize]
        }
    }

    /// `d^n: X^n → X^{n+1}`.
    pub fn diff(&self, n: i64) -> ModuleMap {
        if n >= self.lo && n < self.hi() {
            self.diffs[(n - self.lo) as usize].clone()
        } else {
            ModuleMap::zero(self.term(n), self.term(n + 1))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(Module::is_zero)
    }

    pub fn total_dim(&self) -> usize {
        self.terms.iter().map(Module::total_dim).sum()
    }

    /// Drops zero terms at both ends.
    pub fn trimmed(&self) -> Complex {
        let nz: Vec<i64> = self.degrees().filter(|&n| !self.term(n).is_zero()).collect();
        match (nz.first(), nz.last()) {
            (Some(&a), Some(&b)) => self.window(a, b),
            _ => Complex::zero(&self.alg),
        }
    }

    /// The brutal restriction to `[a, b]` (which may extend the window with
    /// zero terms).
    pub fn window(&self, a: i64, b: i64) -> Complex {
        Complex::from_fn(&self.alg, a, b, |n| self.term(n).clone(), |n| self.diff(n))
    }

    /// `X[k]`: `X[k]^n = X^{n+k}` with differential `(−1)^k d^{n+k}`.
    pub fn shift(&self, k: i64) -> Complex {
        let s = self.field().sign(k);
        Complex::from_fn(&self.alg, self.lo - k, self.hi() - k, |n| self.term(n + k).clone(), |n| self.diff(n + k).scale(s))
    }

    /// `X(r)`: `X(r)^n = X^{n+r}` with unchanged differentials.
    pub fn degree_shift(&self, r: i64) -> Complex {
        Complex::from_fn(&self.alg, self.lo - r, self.hi() - r, |n| self.term(n + r).clone(), |n| self.diff(n + r))
    }

    /// `D(X)` over the opposite algebra: `D(X)^n = D(X^{−n})`, `d^n = D(d^{−n−1})`.
    pub fn dual(&self) -> Complex {
        let op = self.alg.opposite();
        if self.terms.is_empty() {
            return Complex::zero(&op);
        }
        Complex::from_fn(&op, -self.hi(), -self.lo, |n| self.term(-n).dual(), |n| self.diff(-n - 1).dual())
    }

    /// Per degree, the dimension vector of `H^n`.
    pub fn cohomology_dims(&self) -> Vec<(i64, Vec<usize>)> {
        let nv = self.alg.vertex_count();
        self.degrees()
            .map(|n| {
                let out = self.diff(n);
                let inc = self.diff(n - 1);
                let dims = (0..nv)
                    .map(|v| self.term(n).dim_at(v) - out.block(v).rank() - inc.block(v).rank())
                    .collect();
                (n, dims)
            })
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.cohomology_dims().iter().all(|(_, d)| d.iter().all(|&x| x == 0))
    }

    /// `dim H^n Hom(g, X)` for each degree in the support.
    pub fn hom_from_cohomology(&self, g: &Module) -> Vec<(i64, usize)> {
        self.degrees()
            .map(|n| {
                let hn = hom_space(g, self.term(n));
                let out = induced_rank(&hn, Some(&self.diff(n)), None);
                let inc = induced_rank(&hom_space(g, self.term(n - 1)), Some(&self.diff(n - 1)), None);
                (n, hn.dim() - out - inc)
            })
            .collect()
    }

    /// `dim H^n Hom(X, g)` where `Hom(X, g)^n = Hom(X^{−n}, g)`, for each
    /// degree `n` with `−n` in the support.
    pub fn hom_to_cohomology(&self, g: &Module) -> Vec<(i64, usize)> {
        self.degrees()
            .rev()
            .map(|m| {
                let hn = hom_space(self.term(m), g);
                // Hom(X^m, g) → Hom(X^{m−1}, g) via precomposition with d^{m−1}.
                let out = induced_rank(&hn, None, Some(&self.diff(m - 1)));
                let inc = induced_rank(&hom_space(self.term(m + 1), g), None, Some(&self.diff(m)));
                (-m, hn.dim() - out - inc)
            })
            .collect()
    }
}

/// A chain map, stored on the union of the supports of source and target.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    lo: i64,
    comps: Vec<ModuleMap>,
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainMap({:?} → {:?})", self.source, self.target)
    }
}

fn union_range(a: &Complex, b: &Complex) -> (i64, i64) {
    match (a.terms.is_empty(), b.terms.is_empty()) {
        (true, true) => (0, -1),
        (true, false) => (b.lo, b.hi()),
        (false, true) => (a.lo, a.hi()),
        (false, false) => (a.lo.min(b.lo), a.hi().max(b.hi())),
    }
}

impl ChainMap {
    /// Builds a chain map from a component closure (only consulted where both
    /// source and target can be nonzero), checking commutativity.
    pub fn new(source: &Complex, target: &Complex, comp: impl Fn(i64) -> ModuleMap) -> Result<ChainMap> {
        let f = ChainMap::build(source, target, comp)?;
        if let Some(n) = f.first_noncommuting_degree() {
            return Err(Error::NotChainMap(format!("square at degree {n} does not commute")));
        }
        Ok(f)
    }

    pub(crate) fn build(source: &Complex, target: &Complex, comp: impl Fn(i64) -> ModuleMap) -> Result<ChainMap> {
        if source.alg != target.alg {
            return Err(Error::AlgebraMismatch);
        }
        let (lo, hi) = union_range(source, target);
        let mut comps = Vec::new();
        for n in lo..=hi {
            let (s, t) = (source.term(n), target.term(n));
            let c = if s.is_zero() || t.is_zero() {
                ModuleMap::zero(s, t)
            } else {
                let c = comp(n);
                if c.source().dims() != s.dims() || c.target().dims() != t.dims() {
                    return Err(Error::NotChainMap(format!("component in degree {n} has the wrong shape")));
                }
                c.retarget(s, t)
            };
            comps.push(c);
        }
        Ok(ChainMap { source: source.clone(), target: target.clone(), lo, comps })
    }

    pub(crate) fn new_unchecked(source: &Complex, target: &Complex, comp: impl Fn(i64) -> ModuleMap) -> ChainMap {
        let f = ChainMap::build(source, target, comp).expect("component shapes");
        debug_assert!(f.first_noncommuting_degree().is_none(), "non-chain map constructed internally");
        f
    }

    fn first_noncommuting_degree(&self) -> Option<i64> {
        let (lo, hi) = union_range(&self.source, &self.target);
        (lo - 1..=hi).find(|&n| {
            let l = self.component(n + 1).compose(&self.source.diff(n));
            let r = self.target.diff(n).compose(&self.component(n));
            l != r
        })
    }

    pub fn is_chain_map(&self) -> bool {
        self.first_noncommuting_degree().is_none()
    }

    pub fn zero(source: &Complex, target: &Complex) -> ChainMap {
        ChainMap::new_unchecked(source, target, |n| ModuleMap::zero(source.term(n), target.term(n)))
    }

    pub fn identity(c: &Complex) -> ChainMap {
        ChainMap::new_unchecked(c, c, |n| ModuleMap::identity(c.term(n)))
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn component(&self, n: i64) -> ModuleMap {
        let idx = n - self.lo;
        if idx >= 0 && (idx as usize) < self.comps.len() {
            self.comps[idx as usize].clone()
        } else {
            ModuleMap::zero(self.source.term(n), self.target.term(n))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(ModuleMap::is_zero)
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &ChainMap) -> ChainMap {
        ChainMap::new_unchecked(&g.source, &self.target, |n| self.component(n).compose(&g.component(n)))
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        ChainMap::new_unchecked(&self.source, &self.target, |n| self.component(n).add(&other.component(n)))
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        ChainMap::new_unchecked(&self.source, &self.target, |n| self.component(n).sub(&other.component(n)))
    }

    pub fn neg(&self) -> ChainMap {
        self.scale(self.source.field().minus_one())
    }

    pub fn scale(&self, s: u32) -> ChainMap {
        ChainMap::new_unchecked(&self.source, &self.target, |n| self.component(n).scale(s))
    }

    /// `f[k]: X[k] → Y[k]`, components `f^{n+k}` (no sign).
    pub fn shift(&self, k: i64) -> ChainMap {
        ChainMap::new_unchecked(&self.source.shift(k), &self.target.shift(k), |n| self.component(n + k))
    }

    /// `D(f): D(Y) → D(X)`.
    pub fn dual(&self) -> ChainMap {
        ChainMap::new_unchecked(&self.target.dual(), &self.source.dual(), |n| self.component(-n).dual())
    }

    /// Same components viewed between equal-shaped complexes.
    pub fn retarget(&self, source: &Complex, target: &Complex) -> ChainMap {
        ChainMap::new_unchecked(source, target, |n| self.component(n))
    }
}

/// Maps `s^n: X^n → Y^{n−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    lo: i64,
    maps: Vec<ModuleMap>,
}

impl Homotopy {
    pub fn map(&self, n: i64) -> Option<&ModuleMap> {
        let idx = n - self.lo;
        (idx >= 0 && (idx as usize) < self.maps.len()).then(|| &self.maps[idx as usize])
    }

    /// Checks `f^n = d^{n−1} s^n + s^{n+1} d^n` in every degree.
    pub fn witnesses(&self, f: &ChainMap) -> bool {
        let (x, y) = (&f.source, &f.target);
        let s = |n: i64| self.map(n).cloned().unwrap_or_else(|| ModuleMap::zero(x.term(n), y.term(n - 1)));
        let (lo, hi) = union_range(x, y);
        (lo..=hi).all(|n| {
            let lhs = y.diff(n - 1).compose(&s(n)).add(&s(n + 1).compose(&x.diff(n)));
            lhs == f.component(n)
        })
    }

    pub fn zero(f: &ChainMap) -> Homotopy {
        let (lo, hi) = union_range(&f.source, &f.target);
        Homotopy { lo, maps: (lo..=hi).map(|n| ModuleMap::zero(f.source.term(n), f.target.term(n - 1))).collect() }
    }

    pub fn maps(&self) -> &[ModuleMap] {
        &self.maps
    }
}

/// Mapping cone of `f: X → Y` with its triangle maps `Y → Cone(f) → X[1]`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: Complex,
    pub into_cone: ChainMap,
    pub to_shift: ChainMap,
}

pub fn mapping_cone(f: &ChainMap) -> Cone {
    let (x, y) = (&f.source, &f.target);
    let alg = x.alg.clone();
    let (lo, hi) = if x.terms.is_empty() && y.terms.is_empty() {
        (0, -1)
    } else if x.terms.is_empty() {
        (y.lo, y.hi())
    } else if y.terms.is_empty() {
        (x.lo - 1, x.hi() - 1)
    } else {
        ((x.lo - 1).min(y.lo), (x.hi() - 1).max(y.hi()))
    };
    let sums: Vec<DirectSum> = (lo..=hi + 1).map(|n| DirectSum::new(&alg, &[x.term(n + 1).clone(), y.term(n).clone()])).collect();
    let sum = |n: i64| &sums[(n - lo) as usize];
    let complex = Complex::from_fn(
        &alg,
        lo,
        hi,
        |n| sum(n).module.clone(),
        |n| {
            let grid = vec![
                vec![Some(x.diff(n + 1).neg()), None],
                vec![Some(f.component(n + 1)), Some(y.diff(n))],
            ];
            sum(n).matrix_to(sum(n + 1), &grid)
        },
    );
    let into_cone = ChainMap::new_unchecked(y, &complex, |n| sum(n).inclusion(1));
    let shifted = x.shift(1);
    let to_shift = ChainMap::new_unchecked(&complex, &shifted, |n| sum(n).projection(0));
    Cone { complex, into_cone, to_shift }
}

/// Solves `d∘s + s∘d = f` as one linear system over all degrees.
pub fn null_homotopy(f: &ChainMap) -> Option<Homotopy> {
    let (x, y) = (&f.source, &f.target);
    let (lo, hi) = union_range(x, y);
    if f.is_zero() {
        return Some(Homotopy::zero(f));
    }
    let mut sys = MapSystem::new(x.field());
    let unk: Vec<usize> = (lo..=hi + 1).map(|n| sys.unknown(x.term(n), y.term(n - 1))).collect();
    let s = |n: i64| unk[(n - lo) as usize];
    for n in lo..=hi {
        if x.term(n).is_zero() || y.term(n).is_zero() {
            continue;
        }
        let eq = sys.equation(x.term(n), y.term(n));
        sys.term(eq, s(n), 1, Some(&y.diff(n - 1)), None);
        sys.term(eq, s(n + 1), 1, None, Some(&x.diff(n)));
        sys.rhs(eq, &f.component(n));
    }
    let sol = sys.solve()?;
    let maps = (lo..=hi).map(|n| sol[s(n)].clone()).collect();
    let h = Homotopy { lo, maps };
    debug_assert!(h.witnesses(f));
    Some(h)
}

pub fn is_null_homotopic(f: &ChainMap) -> bool {
    null_homotopy(f).is_some()
}

pub fn homotopic(f: &ChainMap, g: &ChainMap) -> bool {
    is_null_homotopic(&f.sub(g))
}

/// A basis of the space of chain maps `x → y`.
pub fn chain_map_space(x: &Complex, y: &Complex) -> Vec<ChainMap> {
    let (lo, hi) = union_range(x, y);
    let mut sys = MapSystem::new(x.field());
    let unk: Vec<usize> = (lo..=hi).map(|n| sys.unknown(x.term(n), y.term(n))).collect();
    let u = |n: i64| unk[(n - lo) as usize];
    for n in lo - 1..=hi {
        if x.term(n).is_zero() && x.term(n + 1).is_zero() {
            continue;
        }
        let eq = sys.equation(x.term(n), y.term(n + 1));
        if n < hi {
            sys.term(eq, u(n + 1), 1, None, Some(&x.diff(n)));
        }
        if n >= lo {
            sys.term(eq, u(n), x.field().minus_one(), Some(&y.diff(n)), None);
        }
    }
    sys.solution_space()
        .into_iter()
        .map(|sol| ChainMap::new_unchecked(x, y, |n| sol[u(n)].clone()))
        .collect()
}

/// Solves for `φ: P → Q` and a homotopy with `φ ∘ a ≃ b`, where
/// `a: X → P` and `b: X → Q`.
pub fn factor_up_to_homotopy(a: &ChainMap, b: &ChainMap) -> Option<(ChainMap, Homotopy)> {
    let (x, p, q) = (&a.source, &a.target, &b.target);
    assert_eq!(a.source.degrees(), b.source.degrees(), "factorization needs a common source");
    let all = [x, p, q];
    let lo = all.iter().filter(|c| !c.terms.is_empty()).map(|c| c.lo).min().unwrap_or(0);
    let hi = all.iter().filter(|c| !c.terms.is_empty()).map(|c| c.hi()).max().unwrap_or(-1);
    let field = x.field();
    let mut sys = MapSystem::new(field);
    let phi: Vec<usize> = (lo..=hi).map(|n| sys.unknown(p.term(n), q.term(n))).collect();
    let hom: Vec<usize> = (lo..=hi + 1).map(|n| sys.unknown(x.term(n), q.term(n - 1))).collect();
    let ph = |n: i64| (n >= lo && n <= hi).then(|| phi[(n - lo) as usize]);
    let hh = |n: i64| (n >= lo && n <= hi + 1).then(|| hom[(n - lo) as usize]);
    for n in lo - 1..=hi {
        // φ^{n+1} d_P^n − d_Q^n φ^n = 0
        let eq = sys.equation(p.term(n), q.term(n + 1));
        if let Some(u) = ph(n + 1) {
            sys.term(eq, u, 1, None, Some(&p.diff(n)));
        }
        if let Some(u) = ph(n) {
            sys.term(eq, u, field.minus_one(), Some(&q.diff(n)), None);
        }
    }
    for n in lo..=hi {
        // φ^n a^n − d_Q^{n−1} h^n − h^{n+1} d_X^n = b^n
        let eq = sys.equation(x.term(n), q.term(n));
        sys.term(eq, ph(n).unwrap(), 1, None, Some(&a.component(n)));
        sys.term(eq, hh(n).unwrap(), field.minus_one(), Some(&q.diff(n - 1)), None);
        sys.term(eq, hh(n + 1).unwrap(), field.minus_one(), None, Some(&x.diff(n)));
        sys.rhs(eq, &b.component(n));
    }
    let sol = sys.solve()?;
    let f = ChainMap::new_unchecked(p, q, |n| sol[ph(n).unwrap()].clone());
    let h = Homotopy { lo, maps: (lo..=hi).map(|n| sol[hh(n).unwrap()].clone()).collect() };
    debug_assert!(h.witnesses(&f.compose(a).sub(b)));
    Some((f, h))
}

/// Solves for `φ: Q → P` and a homotopy with `a ∘ φ ≃ b`, where
/// `a: P → X` and `b: Q → X`.
pub fn lift_up_to_homotopy(a: &ChainMap, b: &ChainMap) -> Option<(ChainMap, Homotopy)> {
    let (x, p, q) = (&a.target, &a.source, &b.source);
    let all = [x, p, q];
    let lo = all.iter().filter(|c| !c.terms.is_empty()).map(|c| c.lo).min().unwrap_or(0);
    let hi = all.iter().filter(|c| !c.terms.is_empty()).map(|c| c.hi()).max().unwrap_or(-1);
    let field = x.field();
    let mut sys = MapSystem::new(field);
    let phi: Vec<usize> = (lo..=hi).map(|n| sys.unknown(q.term(n), p.term(n))).collect();
    let hom: Vec<usize> = (lo..=hi + 1).map(|n| sys.unknown(q.term(n), x.term(n - 1))).collect();
    let ph = |n: i64| (n >= lo && n <= hi).then(|| phi[(n - lo) as usize]);
    let hh = |n: i64| (n >= lo && n <= hi + 1).then(|| hom[(n - lo) as usize]);
    for n in lo - 1..=hi {
        let eq = sys.equation(q.term(n), p.term(n + 1));
        if let Some(u) = ph(n + 1) {
            sys.term(eq, u, 1, None, Some(&q.diff(n)));
        }
        if let Some(u) = ph(n) {
            sys.term(eq, u, field.minus_one(), Some(&p.diff(n)), None);
        }
    }
    for n in lo..=hi {
        let eq = sys.equation(q.term(n), x.term(n));
        sys.term(eq, ph(n).unwrap(), 1, Some(&a.component(n)), None);
        sys.term(eq, hh(n).unwrap(), field.minus_one(), Some(&x.diff(n - 1)), None);
        sys.term(eq, hh(n + 1).unwrap(), field.minus_one(), None, Some(&q.diff(n)));
        sys.rhs(eq, &b.component(n));
    }
    let sol = sys.solve()?;
    let f = ChainMap::new_unchecked(q, p, |n| sol[ph(n).unwrap()].clone());
    let h = Homotopy { lo, maps: (lo..=hi).map(|n| sol[hh(n).unwrap()].clone()).collect() };
    debug_assert!(h.witnesses(&a.compose(&f).sub(b)));
    Some((f, h))
}

/// Witnesses that `u` is a homotopy equivalence: an inverse `v` with
/// homotopies for `v∘u ≃ id` and `u∘v ≃ id`.
#[derive(Clone, Debug)]
pub struct HomotopyEquivalence {
    pub map: ChainMap,
    pub inverse: ChainMap,
    pub left: Homotopy,
    pub right: Homotopy,
}

pub fn homotopy_inverse(u: &ChainMap) -> Option<HomotopyEquivalence> {
    let id_src = ChainMap::identity(&u.source);
    let (v, left) = factor_up_to_homotopy(u, &id_src)?;
    let right = null_homotopy(&u.compose(&v).sub(&ChainMap::identity(&u.target)))?;
    Some(HomotopyEquivalence { map: u.clone(), inverse: v, left, right })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Matrix;
    use crate::quiveralg::{projective, AlgebraPresentation, Quiver};

    fn a2(p: u32) -> Algebra {
        Algebra::build(&AlgebraPresentation { field: p, quiver: Quiver::new(2, &[(0, 1, "a")]), relations: vec![], nilpotency_bound: None }).unwrap()
    }

    /// `0 → P₂ → P₁ → 0` in degrees −1, 0.
    fn p2_to_p1(a: &Algebra) -> Complex {
        let p1 = projective(a, 0);
        let p2 = projective(a, 1);
        let f = a.field();
        let d = ModuleMap::new(&p2, &p1, vec![Matrix::zeros(f, 1, 0), Matrix::identity(f, 1)]).unwrap();
        Complex::new(a, -1, vec![p2, p1], vec![d]).unwrap()
    }

    #[test]
    fn shift_by_zero_and_twice() {
        let a = a2(3);
        let c = p2_to_p1(&a);
        assert_eq!(c.shift(0), c);
        let twice = c.shift(1).shift(1);
        assert_eq!(twice.diff(-3), c.diff(-1));
        assert_eq!(c.shift(1).diff(-2), c.diff(-1).neg());
        assert_eq!(c.degree_shift(1).diff(-2), c.diff(-1));
        let s = Complex::stalk(&Module::simple(&a, 0), 0);
        assert_eq!(s.shift(2).lo(), -2);
    }

    #[test]
    fn shift_equals_degree_shift_in_char_two() {
        let a = a2(2);
        let c = p2_to_p1(&a);
        assert_eq!(c.shift(1), c.degree_shift(1));
    }

    #[test]
    fn cone_dimensions_and_triangle() {
        let a = a2(3);
        let c = p2_to_p1(&a);
        let id = ChainMap::identity(&c);
        let cone = mapping_cone(&id);
        assert_eq!(cone.complex.term(-1).total_dim(), c.term(0).total_dim() + c.term(-1).total_dim());
        assert!(cone.into_cone.is_chain_map());
        assert!(cone.to_shift.is_chain_map());
        assert!(is_null_homotopic(&cone.to_shift.compose(&cone.into_cone)));
        // The cone of an identity is contractible.
        assert!(is_null_homotopic(&ChainMap::identity(&cone.complex)));
    }

    #[test]
    fn cone_of_zero_map_to_zero_is_shift() {
        let a = a2(3);
        let c = p2_to_p1(&a);
        let z = Complex::zero(&a);
        let cone = mapping_cone(&ChainMap::zero(&c, &z));
        assert_eq!(cone.complex.trimmed(), c.shift(1));
    }

    #[test]
    fn cohomology_of_projective_resolution() {
        let a = a2(2);
        let c = p2_to_p1(&a);
        let h = c.cohomology_dims();
        assert_eq!(h, vec![(-1, vec![0, 0]), (0, vec![1, 0])]);
        assert!(null_homotopy(&ChainMap::identity(&c)).is_none());
    }

    #[test]
    fn contractible_identity() {
        let a = a2(3);
        let p1 = projective(&a, 0);
        let c = Complex::new(&a, 0, vec![p1.clone(), p1.clone()], vec![ModuleMap::identity(&p1)]).unwrap();
        let h = null_homotopy(&ChainMap::identity(&c)).unwrap();
        assert!(h.witnesses(&ChainMap::identity(&c)));
        assert!(c.is_acyclic());
    }

    #[test]
    fn chain_maps_of_resolution() {
        let a = a2(3);
        let c = p2_to_p1(&a);
        let space = chain_map_space(&c, &c);
        assert!(space.iter().all(ChainMap::is_chain_map));
        assert!(!space.is_empty());
    }

    #[test]
    fn dual_complex_round_trip() {
        let a = a2(3);
        let c = p2_to_p1(&a);
        let d = c.dual();
        assert_eq!(d.lo(), 0);
        assert_eq!(d.dual(), c);
    }
}
