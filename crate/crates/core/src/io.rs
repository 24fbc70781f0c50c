//! Hypergraph file formats.
//!
//! Edge-list text: first non-comment line is `n r`, then one edge per line
//! as space-separated vertex indices; `#` starts a comment. JSON mirrors
//! `{"n":…,"r":…,"edges":[[…],…]}`. Writers always emit the canonical form
//! (sorted edges, sorted vertices), so parse→write round-trips are
//! byte-identical.

use std::path::Path;

use crate::error::Error;
use crate::hypergraph::UniformHypergraph;
use crate::Result;

pub fn parse_edge_list(text: &str) -> Result<UniformHypergraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<Vec<u16>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let nums: Vec<u64> = fields
            .iter()
            .map(|f| {
                f.parse::<u64>().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    msg: format!("expected an integer, found {:?}", f),
                })
            })
            .collect::<Result<_>>()?;
        match header {
            None => {
                if nums.len() != 2 {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        msg: "header must be two integers: n r".into(),
                    });
                }
                header = Some((nums[0] as usize, nums[1] as usize));
            }
            Some((_, r)) => {
                if nums.len() != r {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        msg: format!("edge has {} vertices, expected {}", nums.len(), r),
                    });
                }
                if let Some(&v) = nums.iter().find(|&&v| v > u16::MAX as u64) {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        msg: format!("vertex index {} too large", v),
                    });
                }
                edges.push(nums.into_iter().map(|v| v as u16).collect());
            }
        }
    }
    let (n, r) = header.ok_or(Error::Parse {
        line: 0,
        msg: "missing header line \"n r\"".into(),
    })?;
    UniformHypergraph::new(n, r, edges)
}

pub fn write_edge_list(h: &UniformHypergraph) -> String {
    let mut out = format!("{} {}\n", h.n(), h.r());
    for e in h.edges() {
        let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn to_json(h: &UniformHypergraph) -> Result<String> {
    Ok(serde_json::to_string_pretty(h)?)
}

pub fn from_json(text: &str) -> Result<UniformHypergraph> {
    Ok(serde_json::from_str(text)?)
}

/// Load from a path, inferring the format: `.json` files parse as JSON,
/// anything else as edge-list text.
pub fn load(path: &Path) -> Result<UniformHypergraph> {
    let text = std::fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        from_json(&text)
    } else {
        parse_edge_list(&text)
    }
}

pub fn save(path: &Path, h: &UniformHypergraph) -> Result<()> {
    let text = if path.extension().is_some_and(|e| e == "json") {
        to_json(h)?
    } else {
        write_edge_list(h)
    };
    std::fs::write(path, text)?;
    Ok(())
}
