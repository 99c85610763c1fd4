//! Simplicial-set interchange text.
//!
//! ```text
//! simplicial-set 1
//! meta <key> <value>                     # zero or more, sorted by key
//! depth <D>
//! level <k> count <n> basepoint <b>
//! <name> | <d0> .. <dk> | <s0> .. <sk>   # one line per simplex, n lines
//! ```
//!
//! Level 0 has an empty face list and the top level an empty degeneracy
//! list. Writing a parsed file reproduces it byte for byte.

use std::fmt::Write as _;

use super::{Level, SimplicialSet};
use crate::error::ParseError;

const HEADER: &str = "simplicial-set 1";

pub fn write_simplicial(x: &SimplicialSet) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    for (key, value) in x.meta() {
        let _ = writeln!(out, "meta {key} {value}");
    }
    let _ = writeln!(out, "depth {}", x.depth());
    for (k, level) in x.levels().iter().enumerate() {
        let _ = writeln!(out, "level {k} count {} basepoint {}", level.len(), level.basepoint());
        for s in 0..level.len() {
            out.push_str(&level.names()[s]);
            out.push_str(" |");
            for table in level.faces() {
                let _ = write!(out, " {}", table[s]);
            }
            out.push_str(" |");
            for table in level.degeneracies() {
                let _ = write!(out, " {}", table[s]);
            }
            out.push('\n');
        }
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn next_line(&mut self) -> Result<(usize, &'a str), ParseError> {
        match self.inner.next() {
            Some((i, line)) => {
                self.last = i + 1;
                Ok((i + 1, line))
            }
            None => Err(ParseError::new(self.last + 1, "unexpected end of input")),
        }
    }
}

fn number(tok: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    tok.and_then(|t| t.parse().ok()).ok_or_else(|| ParseError::new(line, format!("expected {what}")))
}

pub fn parse_simplicial(input: &str) -> Result<SimplicialSet, ParseError> {
    let mut lines = Lines { inner: input.lines().enumerate(), last: 0 };
    let (n, first) = lines.next_line()?;
    if first != HEADER {
        return Err(ParseError::new(n, format!("expected `{HEADER}`")));
    }
    let mut meta = Vec::new();
    let depth = loop {
        let (n, line) = lines.next_line()?;
        if let Some(rest) = line.strip_prefix("meta ") {
            let (key, value) = rest.split_once(' ').ok_or_else(|| ParseError::new(n, "expected `meta <key> <value>`"))?;
            meta.push((key.to_string(), value.to_string()));
        } else if let Some(rest) = line.strip_prefix("depth ") {
            break number(Some(rest), n, "a depth")?;
        } else {
            return Err(ParseError::new(n, format!("unexpected line `{line}`")));
        }
    };

    let mut raw_levels = Vec::with_capacity(depth + 1);
    for k in 0..=depth {
        let (n, line) = lines.next_line()?;
        let toks: Vec<&str> = line.split(' ').collect();
        if toks.len() != 6 || toks[0] != "level" || toks[2] != "count" || toks[4] != "basepoint" || number(Some(toks[1]), n, "a level")? != k {
            return Err(ParseError::new(n, format!("expected `level {k} count <n> basepoint <b>`")));
        }
        let count = number(Some(toks[3]), n, "a count")?;
        let basepoint = number(Some(toks[5]), n, "a basepoint")? as u32;
        let face_count = if k == 0 { 0 } else { k + 1 };
        let degen_count = if k == depth { 0 } else { k + 1 };
        let mut names = Vec::with_capacity(count);
        let mut faces = vec![Vec::with_capacity(count); face_count];
        let mut degeneracies = vec![Vec::with_capacity(count); degen_count];
        for _ in 0..count {
            let (n, line) = lines.next_line()?;
            let parts: Vec<&str> = line.split(" |").collect();
            if parts.len() != 3 {
                return Err(ParseError::new(n, "expected `<name> | <faces> | <degeneracies>`"));
            }
            let parse_list = |s: &str, want: usize| -> Result<Vec<u32>, ParseError> {
                let vals: Vec<u32> = if s.is_empty() {
                    Vec::new()
                } else {
                    s.strip_prefix(' ')
                        .ok_or_else(|| ParseError::new(n, "malformed index list"))?
                        .split(' ')
                        .map(|t| t.parse::<u32>().map_err(|_| ParseError::new(n, format!("bad index `{t}`"))))
                        .collect::<Result<_, _>>()?
                };
                if vals.len() != want {
                    return Err(ParseError::new(n, format!("expected {want} indices, found {}", vals.len())));
                }
                Ok(vals)
            };
            names.push(parts[0].to_string());
            for (table, v) in faces.iter_mut().zip(parse_list(parts[1], face_count)?) {
                table.push(v);
            }
            for (table, v) in degeneracies.iter_mut().zip(parse_list(parts[2], degen_count)?) {
                table.push(v);
            }
        }
        raw_levels.push((n, Level::new(names, basepoint, faces, degeneracies)));
    }
    if let Some((i, line)) = lines.inner.next() {
        return Err(ParseError::new(i + 1, format!("trailing content `{line}`")));
    }
    let last_line = raw_levels.last().map(|(n, _)| *n).unwrap_or(0);
    let mut set = SimplicialSet::new(raw_levels.into_iter().map(|(_, l)| l).collect())
        .map_err(|e| ParseError::new(last_line, e.to_string()))?;
    for (key, value) in meta {
        set.meta_mut().insert(key, value);
    }
    Ok(set)
}
