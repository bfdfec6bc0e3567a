//! Versioned JSON document types and conversions to the in-memory objects.
//! Matrices are row-major `{rows, cols, data}`; module actions are listed in
//! arrow order and vertices are 0-indexed.

use serde::{Deserialize, Serialize};

use crate::approx::SubcatSpec;
use crate::complexes::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, Matrix};
use crate::gorenstein::gorenstein_profile;
use crate::quiveralg::{default_ext_bound, Algebra, AlgebraPresentation, Module, ModuleMap, Quiver, Relation};

pub const SCHEMA: u32 = 1;

fn at(path: &str, e: Error) -> Error {
    Error::Invalid(format!("{path}: {e}"))
}

fn check_schema(schema: u32, path: &str) -> Result<()> {
    if schema == SCHEMA {
        Ok(())
    } else {
        Err(Error::Invalid(format!("{path}schema: unsupported version {schema}, expected {SCHEMA}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl MatrixDoc {
    pub fn from_matrix(m: &Matrix) -> MatrixDoc {
        MatrixDoc { rows: m.rows(), cols: m.cols(), data: m.entries().iter().map(|&x| x as i64).collect() }
    }

    pub fn to_matrix(&self, field: FieldSpec) -> Result<Matrix> {
        Matrix::from_flat(field, self.rows, self.cols, &self.data)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub schema: u32,
    pub field: u32,
    pub quiver: Quiver,
    #[serde(default)]
    pub relations: Vec<Relation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nilpotency_bound: Option<usize>,
}

impl AlgebraDoc {
    pub fn new(alg: &Algebra) -> AlgebraDoc {
        let p = alg.presentation().clone();
        AlgebraDoc { schema: SCHEMA, field: p.field, quiver: p.quiver, relations: p.relations, nilpotency_bound: p.nilpotency_bound }
    }

    pub fn build(&self) -> Result<Algebra> {
        check_schema(self.schema, "")?;
        Algebra::build(&AlgebraPresentation {
            field: self.field,
            quiver: self.quiver.clone(),
            relations: self.relations.clone(),
            nilpotency_bound: self.nilpotency_bound,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDoc {
    pub dims: Vec<usize>,
    /// One matrix per arrow, in arrow order.
    pub action: Vec<MatrixDoc>,
}

impl ModuleDoc {
    pub fn from_module(m: &Module) -> ModuleDoc {
        ModuleDoc { dims: m.dims().to_vec(), action: m.action().iter().map(MatrixDoc::from_matrix).collect() }
    }

    pub fn build(&self, alg: &Algebra, path: &str) -> Result<Module> {
        let action = self
            .action
            .iter()
            .enumerate()
            .map(|(i, m)| m.to_matrix(alg.field()).map_err(|e| at(&format!("{path}.action[{i}]"), e)))
            .collect::<Result<Vec<_>>>()?;
        Module::new(alg, self.dims.clone(), action).map_err(|e| at(path, e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    /// One block per vertex.
    pub blocks: Vec<MatrixDoc>,
}

impl MapDoc {
    pub fn from_map(f: &ModuleMap) -> MapDoc {
        MapDoc { blocks: f.blocks().iter().map(MatrixDoc::from_matrix).collect() }
    }

    pub fn build(&self, src: &Module, tgt: &Module, path: &str) -> Result<ModuleMap> {
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, m)| m.to_matrix(src.field()).map_err(|e| at(&format!("{path}.blocks[{i}]"), e)))
            .collect::<Result<Vec<_>>>()?;
        ModuleMap::new(src, tgt, blocks).map_err(|e| at(path, e))
    }
}

/// A bounded complex; `diffs[k]` maps `terms[k]` to `terms[k + 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexBody {
    pub lo: i64,
    pub terms: Vec<ModuleDoc>,
    #[serde(default)]
    pub diffs: Vec<MapDoc>,
}

impl ComplexBody {
    pub fn from_complex(c: &Complex) -> ComplexBody {
        ComplexBody {
            lo: c.lo(),
            terms: c.terms().iter().map(ModuleDoc::from_module).collect(),
            diffs: (c.lo()..c.hi()).map(|n| MapDoc::from_map(&c.diff(n))).collect(),
        }
    }

    pub fn build(&self, alg: &Algebra, path: &str) -> Result<Complex> {
        let terms = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| t.build(alg, &format!("{path}.terms[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        if self.diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::Invalid(format!("{path}.diffs: {} differentials for {} terms", self.diffs.len(), terms.len())));
        }
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(i, d)| d.build(&terms[i], &terms[i + 1], &format!("{path}.diffs[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        if terms.is_empty() {
            return Ok(Complex::zero(alg));
        }
        Complex::new(alg, self.lo, terms, diffs).map_err(|e| at(path, e))
    }
}

/// A chain map between two complexes; `components[k]` sits in degree `lo + k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainMapBody {
    pub source: usize,
    pub target: usize,
    pub lo: i64,
    pub components: Vec<MapDoc>,
}

impl ChainMapBody {
    pub fn from_chain_map(f: &ChainMap, source: usize, target: usize) -> ChainMapBody {
        let (s, t) = (f.source(), f.target());
        let lo = s.lo().min(t.lo());
        let hi = s.hi().max(t.hi());
        ChainMapBody { source, target, lo, components: (lo..=hi).map(|n| MapDoc::from_map(&f.component(n))).collect() }
    }

    pub fn build(&self, complexes: &[Complex], path: &str) -> Result<ChainMap> {
        let get = |i: usize, what: &str| {
            complexes.get(i).ok_or_else(|| Error::Invalid(format!("{path}.{what}: no complex with index {i}")))
        };
        let (s, t) = (get(self.source, "source")?, get(self.target, "target")?);
        let mut comps = Vec::new();
        for (k, c) in self.components.iter().enumerate() {
            let n = self.lo + k as i64;
            comps.push((n, c.build(s.term(n), t.term(n), &format!("{path}.components[{k}]"))?));
        }
        ChainMap::new(s, t, |n| {
            comps.iter().find(|(m, _)| *m == n).map(|(_, f)| f.clone()).unwrap_or_else(|| ModuleMap::zero(s.term(n), t.term(n)))
        })
        .map_err(|e| at(path, e))
    }
}

/// A subcategory as `add` of generators, or one of the named classes.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SubcatDoc {
    Projectives,
    Injectives,
    GorensteinProjectives,
    GorensteinInjectives,
    Generators {
        name: String,
        generators: Vec<ModuleDoc>,
        #[serde(default)]
        trim: bool,
    },
}

impl SubcatDoc {
    pub fn build(&self, alg: &Algebra, path: &str) -> Result<SubcatSpec> {
        match self {
            SubcatDoc::Projectives => Ok(SubcatSpec::projectives(alg)),
            SubcatDoc::Injectives => Ok(SubcatSpec::injectives(alg)),
            SubcatDoc::GorensteinProjectives => Ok(gorenstein_profile(alg, default_ext_bound(alg)).map_err(|e| at(path, e))?.gproj),
            SubcatDoc::GorensteinInjectives => Ok(gorenstein_profile(alg, default_ext_bound(alg)).map_err(|e| at(path, e))?.ginj),
            SubcatDoc::Generators { name, generators, trim } => {
                let gens = generators
                    .iter()
                    .enumerate()
                    .map(|(i, g)| g.build(alg, &format!("{path}.generators[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                Ok(SubcatSpec::new(name, gens).map_err(|e| at(path, e))?.trimmed(*trim))
            }
        }
    }
}

/// A set of complexes and maps over one algebra.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexesDoc {
    pub schema: u32,
    pub algebra: AlgebraPresentation,
    pub complexes: Vec<ComplexBody>,
    #[serde(default)]
    pub maps: Vec<ChainMapBody>,
}

#[derive(Clone, Debug)]
pub struct LoadedComplexes {
    pub algebra: Algebra,
    pub complexes: Vec<Complex>,
    pub maps: Vec<ChainMap>,
}

impl ComplexesDoc {
    pub fn new(alg: &Algebra, complexes: &[Complex], maps: &[(ChainMap, usize, usize)]) -> ComplexesDoc {
        ComplexesDoc {
            schema: SCHEMA,
            algebra: alg.presentation().clone(),
            complexes: complexes.iter().map(ComplexBody::from_complex).collect(),
            maps: maps.iter().map(|(f, s, t)| ChainMapBody::from_chain_map(f, *s, *t)).collect(),
        }
    }

    pub fn load(&self) -> Result<LoadedComplexes> {
        check_schema(self.schema, "")?;
        let algebra = Algebra::build(&self.algebra).map_err(|e| at("algebra", e))?;
        let complexes = self
            .complexes
            .iter()
            .enumerate()
            .map(|(i, c)| c.build(&algebra, &format!("complexes[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, f)| f.build(&complexes, &format!("maps[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        Ok(LoadedComplexes { algebra, complexes, maps })
    }
}

/// A module problem: one subcategory and one module.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleTaskDoc {
    pub schema: u32,
    pub algebra: AlgebraPresentation,
    pub subcategory: SubcatDoc,
    pub module: ModuleDoc,
}

impl ModuleTaskDoc {
    pub fn load(&self) -> Result<(SubcatSpec, Module)> {
        check_schema(self.schema, "")?;
        let alg = Algebra::build(&self.algebra).map_err(|e| at("algebra", e))?;
        Ok((self.subcategory.build(&alg, "subcategory")?, self.module.build(&alg, "module")?))
    }
}

/// A candidate balanced pair with probe modules.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairDoc {
    pub schema: u32,
    pub algebra: AlgebraPresentation,
    pub x: SubcatDoc,
    pub y: SubcatDoc,
    /// Defaults to the standard probes.
    #[serde(default)]
    pub probes: Option<Vec<ModuleDoc>>,
}

impl PairDoc {
    pub fn load(&self) -> Result<(SubcatSpec, SubcatSpec, Option<Vec<Module>>)> {
        check_schema(self.schema, "")?;
        let alg = Algebra::build(&self.algebra).map_err(|e| at("algebra", e))?;
        let x = self.x.build(&alg, "x")?;
        let y = self.y.build(&alg, "y")?;
        let probes = match &self.probes {
            None => None,
            Some(ps) => Some(ps.iter().enumerate().map(|(i, m)| m.build(&alg, &format!("probes[{i}]"))).collect::<Result<Vec<_>>>()?),
        };
        Ok((x, y, probes))
    }
}
