//! Resolving monoid and space arguments.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use dold_thom::monoid::{parse_monoid_text, standard_monoid, Coefficients, MonoidDescription};
use dold_thom::simplicial::{parse_simplicial, sphere, wedge, SimplicialSet};
use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// A monoid argument: `builtin:<tag>` or a description file.
pub struct MonoidInput {
    pub hash: String,
    pub source: MonoidSource,
}

pub enum MonoidSource {
    Builtin(Coefficients),
    File(MonoidDescription),
}

impl MonoidInput {
    pub fn load(arg: &str) -> Result<Self> {
        if let Some(tag) = arg.strip_prefix("builtin:") {
            let coeffs = standard_monoid(tag)?;
            return Ok(MonoidInput { hash: coeffs.fingerprint(), source: MonoidSource::Builtin(coeffs) });
        }
        let bytes = fs::read(arg).with_context(|| format!("cannot read `{arg}`"))?;
        let text = String::from_utf8(bytes.clone()).with_context(|| format!("`{arg}` is not UTF-8"))?;
        let description = parse_monoid_text(&text).with_context(|| format!("cannot parse `{arg}`"))?;
        Ok(MonoidInput { hash: sha256_hex(&bytes), source: MonoidSource::File(description) })
    }

    /// Validated coefficients, or an error listing the violations.
    pub fn coefficients(self) -> Result<Coefficients> {
        match self.source {
            MonoidSource::Builtin(c) => Ok(c),
            MonoidSource::File(d) => {
                let (violations, coeffs) = d.validate();
                coeffs.ok_or_else(|| {
                    let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
                    anyhow!("invalid monoid: {}", list.join("; "))
                })
            }
        }
    }
}

/// Parses `sphere:n`, `wedge:<spec>*k`, or a simplicial interchange file,
/// materialized to `depth`. Returns the space and its input hash.
pub fn load_space(spec: &str, depth: usize) -> Result<(Arc<SimplicialSet>, String)> {
    let space = build_space(spec, depth)?;
    let hash = if is_builtin_space(spec) { space.fingerprint() } else { sha256_hex(&fs::read(spec)?) };
    Ok((Arc::new(space), hash))
}

fn is_builtin_space(spec: &str) -> bool {
    spec.starts_with("sphere:") || spec.starts_with("wedge:")
}

fn build_space(spec: &str, depth: usize) -> Result<SimplicialSet> {
    if let Some(n) = spec.strip_prefix("sphere:") {
        let n: usize = n.parse().with_context(|| format!("bad sphere dimension in `{spec}`"))?;
        return Ok(sphere(n, depth)?);
    }
    if let Some(rest) = spec.strip_prefix("wedge:") {
        let (inner, copies) = rest.rsplit_once('*').ok_or_else(|| anyhow!("expected `wedge:<spec>*<k>`, got `{spec}`"))?;
        let copies: usize = copies.parse().with_context(|| format!("bad copy count in `{spec}`"))?;
        return Ok(wedge(&build_space(inner, depth)?, copies)?);
    }
    if !Path::new(spec).exists() {
        bail!("`{spec}` is neither `sphere:n`, `wedge:<spec>*k` nor an existing file");
    }
    let text = fs::read_to_string(spec).with_context(|| format!("cannot read `{spec}`"))?;
    let x = parse_simplicial(&text).with_context(|| format!("cannot parse `{spec}`"))?;
    if x.depth() < depth {
        bail!("`{spec}` is materialized to depth {}, need {depth}", x.depth());
    }
    Ok(if x.depth() == depth { x } else { x.truncated(depth) })
}
