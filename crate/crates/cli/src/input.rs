//! Parsing of degree ranges and group files.

use std::ops::RangeInclusive;
use std::path::Path;

use anyhow::{bail, Context, Result};
use belyi_core::Permutation;

/// `"7"` or `"1..7"` (inclusive).
pub fn parse_degrees(s: &str) -> Result<RangeInclusive<usize>> {
    let num = |t: &str| t.trim().parse::<usize>().with_context(|| format!("bad degree {t:?}"));
    let r = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.trim_start_matches('='))?,
        None => {
            let d = num(s)?;
            d..=d
        }
    };
    if r.is_empty() || *r.start() == 0 {
        bail!("empty degree range {s:?}");
    }
    Ok(r)
}

/// Generators, one per line, in cycle notation `(1,2,3)(4,5)` or as an
/// image array `[2,3,1,5,4]`. Blank lines and `#` comments are skipped.
/// Cycle notation is padded to the largest point mentioned in the file.
pub fn parse_group_file(text: &str) -> Result<Vec<Permutation>> {
    let lines: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    if lines.is_empty() {
        bail!("no generators");
    }
    let parsed: Vec<Permutation> = lines
        .iter()
        .map(|l| l.parse::<Permutation>().map_err(anyhow::Error::from))
        .collect::<Result<_>>()?;
    let degree = parsed.iter().map(Permutation::degree).max().unwrap_or(1);
    lines
        .iter()
        .zip(parsed)
        .map(|(l, p)| {
            if p.degree() == degree {
                Ok(p)
            } else if l.starts_with('[') {
                bail!("image array {l:?} has degree {} but the group has degree {degree}", p.degree())
            } else {
                Ok(Permutation::parse_cycles(l, Some(degree))?)
            }
        })
        .collect()
}

pub fn read_group_file(path: &Path) -> Result<Vec<Permutation>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_group_file(&text).with_context(|| format!("in {}", path.display()))
}
