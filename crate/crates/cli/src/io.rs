use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use chromacode::chargraph::{FunctionSpecJson, JointPmfJson};
use chromacode::graph::GraphJson;
use chromacode::rational::{self, Q};
use chromacode::{worked, Error, FunctionSpec, Graph, JointPmf, Result};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Inputs read during a run, by name, with the digest of what was read.
#[derive(Default)]
pub struct Inputs {
    pub digests: BTreeMap<String, String>,
}

impl Inputs {
    fn read(&mut self, path: &str) -> Result<String> {
        let text = fs::read_to_string(path).map_err(|e| Error::invalid(format!("cannot read {path}: {e}")))?;
        self.digests.insert(path.to_string(), sha256_hex(text.as_bytes()));
        Ok(text)
    }

    fn builtin(&mut self, name: &str) {
        self.digests.insert(format!("builtin:{name}"), sha256_hex(name.as_bytes()));
    }

    /// A path to Graph JSON, or one of `cycle:N`, `complete:N`, `path:N`,
    /// `edgeless:N`, `prism`, `example5`.
    pub fn graph(&mut self, arg: &str) -> Result<Graph> {
        if let Some(g) = builtin_graph(arg)? {
            self.builtin(arg);
            return Ok(g);
        }
        let text = self.read(arg)?;
        let j: GraphJson = serde_json::from_str(&text).map_err(|e| Error::invalid(format!("{arg}: {e}")))?;
        Graph::from_json(&j)
    }

    /// A path to FunctionSpec JSON, or `example1` / `pentagon`. The builtins
    /// carry their own distribution.
    pub fn function(&mut self, spec: &str, pmf: Option<&str>) -> Result<(FunctionSpec, JointPmf)> {
        let (f, default) = match spec {
            "example1" => {
                self.builtin(spec);
                let (f, p) = worked::example1();
                (f, Some(p))
            }
            "pentagon" => {
                self.builtin(spec);
                let (f, p) = worked::pentagon_function();
                (f, Some(p))
            }
            path => {
                let text = self.read(path)?;
                let j: FunctionSpecJson =
                    serde_json::from_str(&text).map_err(|e| Error::invalid(format!("{path}: {e}")))?;
                (FunctionSpec::from_json(&j)?, None)
            }
        };
        let p = match (pmf, default) {
            (None | Some("uniform"), None) => JointPmf::uniform(f.dims().0, f.dims().1)?,
            (None, Some(p)) => p,
            (Some("uniform"), Some(_)) => JointPmf::uniform(f.dims().0, f.dims().1)?,
            (Some(path), _) => {
                let text = self.read(path)?;
                let j: JointPmfJson =
                    serde_json::from_str(&text).map_err(|e| Error::invalid(format!("{path}: {e}")))?;
                JointPmf::from_json(&j, f.dims())?
            }
        };
        Ok((f, p))
    }

    /// A vertex distribution: `uniform`, a JSON list of `"num/den"` strings,
    /// or a path to such a list.
    pub fn vertex_pmf(&mut self, arg: Option<&str>, v: usize) -> Result<Vec<Q>> {
        let text = match arg {
            None | Some("uniform") => return Ok(chromacode::entropy::uniform_pmf(v)),
            Some(s) if s.trim_start().starts_with('[') => s.to_string(),
            Some(path) => self.read(path)?,
        };
        let list: Vec<String> = serde_json::from_str(&text).map_err(|e| Error::invalid(format!("pmf: {e}")))?;
        if list.len() != v {
            return Err(Error::invalid(format!("pmf has {} entries for {v} vertices", list.len())));
        }
        list.iter().map(|s| rational::parse(s)).collect()
    }

    pub fn coloring(&mut self, path: &str) -> Result<chromacode::Coloring> {
        let text = self.read(path)?;
        let j = serde_json::from_str(&text).map_err(|e| Error::invalid(format!("{path}: {e}")))?;
        chromacode::Coloring::from_json(&j)
    }
}

fn builtin_graph(arg: &str) -> Result<Option<Graph>> {
    let size = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::invalid(format!("bad vertex count in {arg:?}")))
    };
    Ok(Some(match arg.split_once(':') {
        Some(("cycle", n)) => Graph::cycle(size(n)?)?,
        Some(("complete", n)) => Graph::complete(size(n)?)?,
        Some(("path", n)) => Graph::path(size(n)?)?,
        Some(("edgeless", n)) => Graph::edgeless(size(n)?),
        None if arg == "prism" => Graph::prism(),
        None if arg == "example5" => worked::example5_graph(),
        _ => return Ok(None),
    }))
}

/// Serializes through `Value`, whose maps are ordered, so keys come out sorted.
pub fn to_sorted_json<T: Serialize>(x: &T) -> String {
    let v: Value = serde_json::to_value(x).expect("output types serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub args: Vec<String>,
    pub inputs: BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub version: String,
    /// Output path (or `-` for stdout) to the sha256 of the bytes written.
    pub outputs: BTreeMap<String, String>,
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::invalid(format!("cannot create {}: {e}", dir.display())))?;
    }
    fs::write(path, bytes).map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display())))
}
