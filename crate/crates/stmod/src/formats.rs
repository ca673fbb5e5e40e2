//! JSON file formats for groups, modules and maps, plus the CLI
//! shorthands (`C2`, `C8`, `CpxCp:3`, `k`, `regular`, `cyclic:2`).
//!
//! Group specs are either a full table `{"name", "order", "table"}` or
//! the shorthands `{"cyclic": n}` / `{"product": [spec, spec]}`.
//! Module specs carry their group, the characteristic, the dimension
//! and matrices for a generating set of elements; the rest of the
//! action table is expanded and validated at load.

use crate::exactlin::{Matrix, PrimeField};
use crate::groups::{cyclic, direct_product, Group};
use crate::reps::{regular_module, trivial_module, Module, ModuleMap};
use crate::Error;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Cyclic { cyclic: usize },
    Product { product: (Box<GroupSpec>, Box<GroupSpec>) },
    Table {
        name: String,
        order: usize,
        table: Vec<Vec<usize>>,
    },
}

impl GroupSpec {
    pub fn to_group(&self) -> Result<Arc<Group>, Error> {
        match self {
            GroupSpec::Cyclic { cyclic: n } => cyclic(*n),
            GroupSpec::Product { product: (a, b) } => {
                let (a, b) = (a.to_group()?, b.to_group()?);
                direct_product(&a, &b)
            }
            GroupSpec::Table { name, order, table } => {
                if table.len() != *order {
                    return Err(Error::InvalidGroup("declared order does not match table".into()));
                }
                Group::from_table(name.clone(), table.clone())
            }
        }
    }

    pub fn from_group(group: &Group) -> GroupSpec {
        GroupSpec::Table {
            name: group.name().to_string(),
            order: group.order(),
            table: group.table().clone(),
        }
    }
}

/// Parses `--group` values: a path to a JSON spec, `C<n>`, or
/// `CpxCp:<p>`.
pub fn parse_group_arg(arg: &str) -> Result<Arc<Group>, Error> {
    if let Some(p) = arg.strip_prefix("CpxCp:") {
        let p: usize = p
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad prime in {arg}")))?;
        let c = cyclic(p)?;
        return direct_product(&c, &c);
    }
    if let Some(n) = arg.strip_prefix('C') {
        if let Ok(n) = n.parse::<usize>() {
            return cyclic(n);
        }
    }
    let spec: GroupSpec = read_json(Path::new(arg))?;
    spec.to_group()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub group: GroupSpec,
    pub p: u64,
    pub dim: usize,
    /// Element index (as a string key) -> matrix; any generating set.
    pub generators: BTreeMap<String, Vec<Vec<u64>>>,
}

impl ModuleSpec {
    pub fn to_module(&self) -> Result<Module, Error> {
        let group = self.group.to_group()?;
        let field = PrimeField::new(self.p)?;
        let n = group.order();
        let mut known: Vec<Option<Matrix>> = vec![None; n];
        known[0] = Some(Matrix::identity(field, self.dim));
        let mut gens = Vec::new();
        for (key, rows) in &self.generators {
            let idx: usize = key
                .parse()
                .map_err(|_| Error::InvalidModule(format!("bad element index {key:?}")))?;
            if idx >= n {
                return Err(Error::InvalidModule(format!("element index {idx} out of range")));
            }
            let mat = Matrix::from_rows(field, rows)?;
            if mat.rows() != self.dim || mat.cols() != self.dim {
                return Err(Error::InvalidModule(format!(
                    "matrix for element {idx} is not {0}x{0}",
                    self.dim
                )));
            }
            known[idx] = Some(mat.clone());
            gens.push((idx, mat));
        }
        // expand products until the table closes
        let mut changed = true;
        while changed {
            changed = false;
            for a in 0..n {
                let Some(ma) = known[a].clone() else { continue };
                for (g, mg) in &gens {
                    let b = group.mul(a, *g);
                    if known[b].is_none() {
                        known[b] = Some(ma.mul(mg)?);
                        changed = true;
                    }
                }
            }
        }
        let action: Option<Vec<Matrix>> = known.into_iter().collect();
        let action = action.ok_or_else(|| {
            Error::InvalidModule("generators do not generate the group".into())
        })?;
        Module::new(group, field, action)
    }

    /// Serializes the full action table, so the spec is self-contained.
    pub fn from_module(module: &Module) -> ModuleSpec {
        let mut generators = BTreeMap::new();
        for g in 1..module.group().order() {
            generators.insert(g.to_string(), module.action(g).to_rows());
        }
        if module.group().order() == 1 {
            generators.insert("0".to_string(), module.action(0).to_rows());
        }
        ModuleSpec {
            group: GroupSpec::from_group(module.group()),
            p: module.field().p(),
            dim: module.dim(),
            generators,
        }
    }
}

/// Parses `--module` values: a path, or `k` / `regular` /
/// `cyclic:<len>` relative to the given group and characteristic.
pub fn parse_module_arg(
    arg: &str,
    group: Option<&Arc<Group>>,
    p: Option<u64>,
) -> Result<Module, Error> {
    let shorthand = matches!(arg, "k" | "regular") || arg.starts_with("cyclic:");
    if shorthand {
        let group = group.ok_or_else(|| {
            Error::InvalidArgument("module shorthand needs --group".into())
        })?;
        let p = p
            .or_else(|| group.p_group_characteristic())
            .ok_or_else(|| Error::InvalidArgument("cannot infer characteristic".into()))?;
        let field = PrimeField::new(p)?;
        return match arg {
            "k" => Ok(trivial_module(group, field)),
            "regular" => Ok(regular_module(group, field)),
            _ => {
                let len: usize = arg["cyclic:".len()..]
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad length in {arg}")))?;
                crate::reps::cyclic_module(group, field, len)
            }
        };
    }
    let spec: ModuleSpec = read_json(Path::new(arg))?;
    spec.to_module()
}

/// A module reference inside a map file: inline spec or path.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleRef {
    Path(String),
    Inline(ModuleSpec),
}

impl ModuleRef {
    pub fn to_module(&self) -> Result<Module, Error> {
        match self {
            ModuleRef::Path(p) => {
                let spec: ModuleSpec = read_json(Path::new(p))?;
                spec.to_module()
            }
            ModuleRef::Inline(spec) => spec.to_module(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapSpec {
    pub source: ModuleRef,
    pub target: ModuleRef,
    pub matrix: Vec<Vec<u64>>,
}

impl MapSpec {
    pub fn to_map(&self) -> Result<ModuleMap, Error> {
        let source = self.source.to_module()?;
        let target = self.target.to_module()?;
        let mat = Matrix::from_rows(source.field(), &self.matrix)?;
        ModuleMap::new(source, target, mat)
    }

    pub fn from_map(map: &ModuleMap) -> MapSpec {
        MapSpec {
            source: ModuleRef::Inline(ModuleSpec::from_module(map.source())),
            target: ModuleRef::Inline(ModuleSpec::from_module(map.target())),
            matrix: map.mat().to_rows(),
        }
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("reading {}", path.display()), e))?;
    serde_json::from_str(&text).map_err(|e| Error::Json(format!("parsing {}", path.display()), e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::cyclic_module;

    #[test]
    fn group_spec_roundtrip_and_shorthands() {
        let g = parse_group_arg("C4").unwrap();
        assert_eq!(g.order(), 4);
        let v = parse_group_arg("CpxCp:3").unwrap();
        assert_eq!(v.order(), 9);
        assert!(!v.is_cyclic());
        let spec = GroupSpec::from_group(&g);
        assert_eq!(spec.to_group().unwrap().table(), g.table());
    }

    #[test]
    fn nested_product_spec() {
        let json = r#"{"product": [{"cyclic": 2}, {"product": [{"cyclic": 2}, {"cyclic": 2}]}]}"#;
        let spec: GroupSpec = serde_json::from_str(json).unwrap();
        assert_eq!(spec.to_group().unwrap().order(), 8);
    }

    #[test]
    fn module_spec_expands_generators() {
        let json = r#"{
            "group": {"cyclic": 4},
            "p": 2,
            "dim": 2,
            "generators": {"1": [[1, 0], [1, 1]]}
        }"#;
        let spec: ModuleSpec = serde_json::from_str(json).unwrap();
        let m = spec.to_module().unwrap();
        let g = cyclic(4).unwrap();
        let expected = cyclic_module(&g, PrimeField::new(2).unwrap(), 2).unwrap();
        assert_eq!(m, expected);
    }

    #[test]
    fn module_spec_rejects_non_generating_set() {
        let json = r#"{
            "group": {"cyclic": 4},
            "p": 2,
            "dim": 1,
            "generators": {"2": [[1]]}
        }"#;
        let spec: ModuleSpec = serde_json::from_str(json).unwrap();
        assert!(spec.to_module().is_err());
    }

    #[test]
    fn module_spec_rejects_inconsistent_matrices() {
        // sigma of order 4 cannot act with a matrix of order 3
        let json = r#"{
            "group": {"cyclic": 4},
            "p": 2,
            "dim": 2,
            "generators": {"1": [[0, 1], [1, 1]]}
        }"#;
        let spec: ModuleSpec = serde_json::from_str(json).unwrap();
        assert!(spec.to_module().is_err());
    }

    #[test]
    fn module_roundtrip() {
        let g = cyclic(4).unwrap();
        let m = cyclic_module(&g, PrimeField::new(2).unwrap(), 3).unwrap();
        let spec = ModuleSpec::from_module(&m);
        assert_eq!(spec.to_module().unwrap(), m);
    }

    #[test]
    fn map_spec_roundtrip_validates_intertwining() {
        let g = cyclic(2).unwrap();
        let field = PrimeField::new(2).unwrap();
        let reg = regular_module(&g, field);
        let k = trivial_module(&g, field);
        let aug = Matrix::from_rows(field, &[vec![1, 1]]).unwrap();
        let map = ModuleMap::new(reg, k, aug).unwrap();
        let spec = MapSpec::from_map(&map);
        let back = spec.to_map().unwrap();
        assert_eq!(back.mat(), map.mat());
        // corrupting the matrix breaks validation
        let mut bad = spec;
        bad.matrix = vec![vec![1, 0]];
        assert!(bad.to_map().is_err());
    }

    #[test]
    fn module_shorthands() {
        let g = cyclic(3).unwrap();
        let k = parse_module_arg("k", Some(&g), None).unwrap();
        assert_eq!(k.dim(), 1);
        let reg = parse_module_arg("regular", Some(&g), None).unwrap();
        assert_eq!(reg.dim(), 3);
        let c = parse_module_arg("cyclic:2", Some(&g), None).unwrap();
        assert_eq!(c.dim(), 2);
        assert!(parse_module_arg("k", None, None).is_err());
    }
}
