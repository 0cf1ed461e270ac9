use std::collections::{HashMap, VecDeque};

use super::{Assembler, LinkDiagram};
use crate::error::{Error, Result};

fn parse_tuples(text: &str) -> Result<Vec<[u64; 4]>> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    // Accept an optional `PD[...]` wrapper.
    if let Some(inner) = rest.strip_prefix("PD[").and_then(|r| r.strip_suffix(']')) {
        rest = inner.trim();
    }
    while !rest.is_empty() {
        rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
        if rest.is_empty() {
            break;
        }
        let body = rest
            .strip_prefix("X(")
            .or_else(|| rest.strip_prefix("X["))
            .ok_or_else(|| Error::Parse(format!("expected X(a,b,c,d) at {:?}", truncate(rest))))?;
        let close = body
            .find([')', ']'])
            .ok_or_else(|| Error::Parse("unterminated crossing".into()))?;
        let labels: Vec<&str> = body[..close].split(',').map(str::trim).collect();
        if labels.len() != 4 {
            return Err(Error::Parse(format!("crossing needs 4 labels, got {}", labels.len())));
        }
        let mut tuple = [0u64; 4];
        for (slot, l) in labels.iter().enumerate() {
            tuple[slot] =
                l.parse().map_err(|_| Error::Parse(format!("bad edge label {l:?}")))?;
        }
        out.push(tuple);
        rest = &body[close + 1..];
    }
    Ok(out)
}

fn truncate(s: &str) -> &str {
    let end = s.char_indices().nth(16).map(|(i, _)| i).unwrap_or(s.len());
    &s[..end]
}

/// Parse planar-diagram notation: whitespace-separated `X(a,b,c,d)` with the
/// incoming under-strand edge first, then counterclockwise. Over-strand
/// directions are inferred by propagating orientation along edges; strands
/// that are over at every crossing fall back to the edge numbering
/// (consecutive labels along the orientation). Empty input is the empty link.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let tuples = parse_tuples(text)?;
    if tuples.is_empty() {
        return Ok(LinkDiagram::empty());
    }

    let mut occurrences: HashMap<u64, Vec<(usize, usize)>> = HashMap::new();
    for (i, t) in tuples.iter().enumerate() {
        for (s, &l) in t.iter().enumerate() {
            occurrences.entry(l).or_default().push((i, s));
        }
    }
    let mut labels: Vec<u64> = occurrences.keys().copied().collect();
    labels.sort_unstable();
    for l in &labels {
        let n = occurrences[l].len();
        if n != 2 {
            return Err(Error::Parse(format!("edge label {l} appears {n} times (expected 2)")));
        }
    }

    // positive[i]: over strand runs slot 3 -> slot 1.
    let mut positive: Vec<Option<bool>> = vec![None; tuples.len()];
    // An occurrence is incoming if it is slot 0, or the over-in slot.
    let is_in = |pos: &[Option<bool>], (i, s): (usize, usize)| -> Option<bool> {
        match s {
            0 => Some(true),
            2 => Some(false),
            1 => pos[i].map(|p| !p),
            _ => pos[i],
        }
    };
    let mut queue: VecDeque<usize> = (0..tuples.len()).collect();
    let mut undecided = tuples.len();
    loop {
        while let Some(i) = queue.pop_front() {
            for s in 0..4 {
                let Some(dir) = is_in(&positive, (i, s)) else { continue };
                let l = tuples[i][s];
                let other = occurrences[&l].iter().copied().find(|&o| o != (i, s)).unwrap();
                let (j, t) = other;
                match is_in(&positive, other) {
                    Some(d) if d == dir => {
                        return Err(Error::Orientation(format!(
                            "edge {l} is {} at both ends",
                            if dir { "incoming" } else { "outgoing" }
                        )));
                    }
                    Some(_) => {}
                    None => {
                        // other end must have the opposite direction.
                        let other_in = !dir;
                        positive[j] = Some(if t == 3 { other_in } else { !other_in });
                        undecided -= 1;
                        queue.push_back(j);
                    }
                }
            }
        }
        if undecided == 0 {
            break;
        }
        let i = positive.iter().position(Option::is_none).unwrap();
        let [_, b, _, d] = tuples[i];
        let d_to_b = if b == d + 1 {
            true
        } else if d == b + 1 {
            false
        } else {
            b < d
        };
        positive[i] = Some(d_to_b);
        undecided -= 1;
        queue.push_back(i);
    }

    let mut asm = Assembler::new();
    let raw: HashMap<u64, usize> = labels.iter().map(|&l| (l, asm.edge(l))).collect();
    for (i, t) in tuples.iter().enumerate() {
        asm.crossing(t.map(|l| raw[&l]), positive[i].unwrap());
    }
    asm.finish()
}
