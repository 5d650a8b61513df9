//! Text formats for groups, subgroups, graphs and actions.
//!
//! Every format treats `#` as a comment to end of line and ignores blank
//! lines. Permutations use disjoint-cycle notation on 0-based points, e.g.
//! `(0 1)(2 3)`, with fixed points omitted and `()` for the identity.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::permgrp::{generate_group_bounded, Permutation, PermutationGroup, Subgroup};
use crate::quotspec::{GroupAction, WeightedGraph};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// Parses cycle notation on `degree` points.
pub fn parse_permutation(degree: usize, text: &str) -> std::result::Result<Permutation, String> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return Err(format!("expected '(' at {rest:?}"));
        };
        let close = body.find(')').ok_or_else(|| format!("unclosed cycle in {text:?}"))?;
        let inner = &body[..close];
        if inner.contains('(') {
            return Err(format!("nested '(' in {text:?}"));
        }
        let cycle = inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|tok| tok.parse::<usize>().map_err(|_| format!("bad point {tok:?}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = body[close + 1..].trim_start();
    }
    Permutation::from_cycles(degree, &cycles).map_err(|e| e.to_string())
}

/// `degree n` followed by one generator per line.
pub fn parse_group(text: &str, max_order: usize) -> Result<PermutationGroup> {
    let mut lines = content_lines(text);
    let (first, header) = lines.next().ok_or_else(|| parse_err(1, "missing `degree n` line"))?;
    let degree = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["degree", n] => n
            .parse::<usize>()
            .map_err(|_| parse_err(first, format!("bad degree {n:?}")))?,
        _ => return Err(parse_err(first, format!("expected `degree n`, found {header:?}"))),
    };
    if degree == 0 {
        return Err(parse_err(first, "degree must be at least 1"));
    }
    let gens = lines
        .map(|(no, line)| parse_permutation(degree, line).map_err(|m| parse_err(no, m)))
        .collect::<Result<Vec<_>>>()?;
    generate_group_bounded(degree, gens, max_order)
}

/// One element per line; the list must be a subgroup of `group`.
pub fn parse_subgroup(group: &PermutationGroup, text: &str) -> Result<Subgroup> {
    let mut elements = Vec::new();
    for (no, line) in content_lines(text) {
        let p = parse_permutation(group.degree(), line).map_err(|m| parse_err(no, m))?;
        let idx = group
            .index_of(&p)
            .ok_or_else(|| Error::Precondition(format!("line {no}: {p} is not an element of the group")))?;
        elements.push(idx);
    }
    if elements.is_empty() {
        return Err(parse_err(1, "subgroup file lists no elements"));
    }
    elements.sort_unstable();
    elements.dedup();
    Subgroup::from_elements(group, &elements)
}

pub fn format_subgroup(group: &PermutationGroup, h: &Subgroup) -> String {
    h.elements().iter().fold(String::new(), |mut out, &e| {
        let _ = writeln!(out, "{}", group.element(e));
        out
    })
}

pub fn format_group(group: &PermutationGroup) -> String {
    let mut out = format!("degree {}\n", group.degree());
    for g in group.generators() {
        let _ = writeln!(out, "{g}");
    }
    out
}

/// Lines `u v w`; an optional leading `vertices n` fixes the vertex count,
/// otherwise it is one more than the largest endpoint.
pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    let mut declared = None;
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut seen = std::collections::HashMap::new();
    for (no, line) in content_lines(text) {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if let ["vertices", n] = fields.as_slice() {
            if declared.is_some() || !edges.is_empty() {
                return Err(parse_err(no, "`vertices` must come first and only once"));
            }
            declared = Some(n.parse::<usize>().map_err(|_| parse_err(no, format!("bad vertex count {n:?}")))?);
            continue;
        }
        let [u, v, w] = fields.as_slice() else {
            return Err(parse_err(no, format!("expected `u v w`, found {line:?}")));
        };
        let u: usize = u.parse().map_err(|_| parse_err(no, format!("bad vertex {u:?}")))?;
        let v: usize = v.parse().map_err(|_| parse_err(no, format!("bad vertex {v:?}")))?;
        let w: f64 = w.parse().map_err(|_| parse_err(no, format!("bad weight {w:?}")))?;
        if u == v {
            return Err(parse_err(no, format!("self-loop at vertex {u}")));
        }
        if !(w.is_finite() && w > 0.0) {
            return Err(parse_err(no, format!("weight must be positive, got {w}")));
        }
        if let Some(prev) = seen.insert((u.min(v), u.max(v)), no) {
            return Err(parse_err(no, format!("edge {{{u}, {v}}} already given on line {prev}")));
        }
        edges.push((u, v, w));
    }
    let inferred = edges.iter().map(|&(u, v, _)| u.max(v) + 1).max().unwrap_or(0);
    let n = match declared {
        Some(n) if n < inferred => {
            return Err(parse_err(1, format!("edges mention vertex {} but only {n} vertices declared", inferred - 1)))
        }
        Some(n) => n,
        None => inferred,
    };
    WeightedGraph::from_edges(n, &edges)
}

pub fn format_graph(graph: &WeightedGraph) -> String {
    let mut out = format!("vertices {}\n", graph.n());
    for (u, v, w) in graph.edges() {
        let _ = writeln!(out, "{u}\t{v}\t{w}");
    }
    out
}

/// One vertex permutation per group generator, in generator order.
pub fn parse_action(group: Arc<PermutationGroup>, vertices: usize, text: &str) -> Result<GroupAction> {
    if group.generators().is_empty() {
        if content_lines(text).next().is_some() {
            return Err(parse_err(1, "the group has no generators, so the action file must be empty"));
        }
        return Ok(GroupAction::trivial(group, vertices));
    }
    let perms = content_lines(text)
        .map(|(no, line)| parse_permutation(vertices, line).map_err(|m| parse_err(no, m)))
        .collect::<Result<Vec<_>>>()?;
    GroupAction::from_generator_images(group, &perms)
}
