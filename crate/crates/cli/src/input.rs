use std::fmt;
use std::fs;
use std::path::Path;

use balpair_core::complexes::{ChainMap, Complex};
use balpair_core::corpus;
use balpair_core::io::{AlgebraDoc, ComplexesDoc, LoadedComplexes};
use balpair_core::Algebra;
use serde::de::DeserializeOwned;

/// Input that could not be read or parsed; maps to exit code 2.
#[derive(Debug)]
pub struct Malformed(pub String);

impl fmt::Display for Malformed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed input: {}", self.0)
    }
}

impl std::error::Error for Malformed {}

pub fn read_doc<T: DeserializeOwned>(path: &Path) -> Result<T, Malformed> {
    let text = fs::read_to_string(path).map_err(|e| Malformed(format!("{}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let at = e.path().to_string();
        Malformed(format!("{}: at {}: {}", path.display(), if at.is_empty() { "." } else { &at }, e.inner()))
    })
}

pub fn semantic(path: &Path, e: balpair_core::Error) -> Malformed {
    Malformed(format!("{}: {e}", path.display()))
}

/// A shipped algebra by name (`builtin:a2`) or an algebra document.
pub fn load_algebra(spec: &str, field: u32) -> Result<Algebra, Malformed> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        let alg = match name {
            "dual-numbers" => corpus::dual_numbers(field),
            "a2" => corpus::path_a2(field),
            "selfinjective-nakayama" => corpus::selfinjective_nakayama(field),
            "gorenstein-nakayama" => corpus::gorenstein_nakayama(field),
            "plane" => corpus::plane(field),
            _ => return Err(Malformed(format!("unknown builtin algebra {name}"))),
        };
        return alg.map_err(|e| Malformed(format!("{spec}: {e}")));
    }
    let path = Path::new(spec);
    read_doc::<AlgebraDoc>(path)?.build().map_err(|e| semantic(path, e))
}

pub fn load_complexes(path: &Path) -> Result<LoadedComplexes, Malformed> {
    read_doc::<ComplexesDoc>(path)?.load().map_err(|e| semantic(path, e))
}

/// Every `*.json` complexes document in `dir`, in file-name order, over
/// `alg`.
pub fn load_corpus_dir(dir: &Path, alg: &Algebra) -> Result<(Vec<Complex>, Vec<ChainMap>), Malformed> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .map_err(|e| Malformed(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let (mut complexes, mut maps) = (Vec::new(), Vec::new());
    for f in files {
        let loaded = load_complexes(&f)?;
        if loaded.algebra != *alg {
            return Err(Malformed(format!("{}: algebra differs from the one given", f.display())));
        }
        complexes.extend(loaded.complexes);
        maps.extend(loaded.maps);
    }
    Ok((complexes, maps))
}
