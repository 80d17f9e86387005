use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use sqfib::fiber::Family;
use sqfib::module::spec;
use sqfib::{GradedModule, ModuleHom, SteenrodAlgebra};

/// A module named on the command line, with the text its cache key hashes.
pub struct LoadedModule {
    pub module: Arc<GradedModule>,
    pub key_text: String,
}

/// `builtin:A`, `builtin:A/ASq1`, `builtin:F`, or a spec file (last module
/// unless `name` picks one).
pub fn load_module(arg: &str, name: Option<&str>, algebra: &Arc<SteenrodAlgebra>, t_max: usize) -> Result<LoadedModule> {
    if let Some(b) = arg.strip_prefix("builtin:") {
        let m = spec::builtin(b, algebra, t_max)?;
        return Ok(LoadedModule {
            module: m.module,
            key_text: format!("builtin:{b}"),
        });
    }
    let text = read(arg)?;
    let doc = spec::parse(&text, algebra, t_max).with_context(|| format!("parsing {arg}"))?;
    let (found, module) = match name {
        Some(n) => (n.to_string(), doc.module(n).with_context(|| format!("{arg} has no module {n:?}"))?),
        None => doc.modules.last().map(|(n, m)| (n.clone(), m)).with_context(|| format!("{arg} declares no module"))?,
    };
    Ok(LoadedModule {
        module: module.module.clone(),
        key_text: format!("file:{found}\n{text}"),
    })
}

/// `sq:n`, `sqz:n` or `bruner-u:i_max[,conj]`.
pub fn parse_family(arg: &str) -> Result<Option<Family>> {
    let Some((kind, rest)) = arg.split_once(':') else {
        return Ok(None);
    };
    let number = |s: &str| s.parse::<usize>().with_context(|| format!("bad number {s:?} in map {arg:?}"));
    let family = match kind {
        "sq" => Family::Fn { n: number(rest)? },
        "sqz" => Family::FnZ { n: number(rest)? },
        "bruner-u" => {
            let (i, conjugate) = match rest.split_once(',') {
                Some((i, "conj")) => (i, true),
                Some((_, other)) => bail!("unknown bruner-u option {other:?}, expected conj"),
                None => (rest, false),
            };
            Family::F {
                i_max: number(i)?,
                conjugate,
            }
        }
        _ => return Ok(None),
    };
    family.validate()?;
    Ok(Some(family))
}

/// A builtin map or a named map from a spec file (last one by default).
pub fn load_map(arg: &str, name: Option<&str>, algebra: &Arc<SteenrodAlgebra>, t_max: usize) -> Result<ModuleHom> {
    if let Some(family) = parse_family(arg)? {
        return Ok(family.map(algebra, t_max)?);
    }
    let text = read(arg)?;
    let doc = spec::parse(&text, algebra, t_max).with_context(|| format!("parsing {arg}"))?;
    let map = match name {
        Some(n) => doc.map(n).with_context(|| format!("{arg} has no map {n:?}"))?,
        None => doc.maps.last().map(|(_, m)| m).with_context(|| format!("{arg} declares no map"))?,
    };
    Ok(map.clone())
}

fn read(path: &str) -> Result<String> {
    if !Path::new(path).exists() {
        bail!("{path:?} is neither a builtin nor an existing spec file");
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
}
