//! PACE-2017 `.td` files: `s td <bags> <width+1> <n>`, then `b <id> <v...>`
//! bag lines and `<i> <j>` tree edges, all 1-based. The first bag is the root.

use std::collections::VecDeque;

use thiserror::Error;

use super::TreeDecomposition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct TdParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> TdParseError {
    TdParseError {
        line,
        message: message.into(),
    }
}

/// Parses a `.td` file. Returns the decomposition rooted at bag 1 and the
/// declared vertex count.
pub fn parse_td(text: &str) -> Result<(TreeDecomposition, usize), TdParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let nums = |from: usize| -> Result<Vec<usize>, TdParseError> {
            tokens[from..]
                .iter()
                .map(|t| t.parse::<usize>().map_err(|_| err(line_no, format!("bad number `{t}`"))))
                .collect()
        };
        match (header, tokens[0]) {
            (None, "s") => {
                if tokens.get(1) != Some(&"td") || tokens.len() != 5 {
                    return Err(err(line_no, "malformed `s td` header"));
                }
                let v = nums(2)?;
                bags = vec![None; v[0]];
                header = Some((v[0], v[1], v[2]));
            }
            (None, _) => return Err(err(line_no, "expected `s td` header")),
            (Some(_), "s") => return Err(err(line_no, "duplicate header")),
            (Some((count, max_size, n)), "b") => {
                let v = nums(1)?;
                let Some((&id, members)) = v.split_first() else {
                    return Err(err(line_no, "bag line without id"));
                };
                if id == 0 || id > count {
                    return Err(err(line_no, format!("bag id {id} out of range")));
                }
                if bags[id - 1].is_some() {
                    return Err(err(line_no, format!("bag {id} declared twice")));
                }
                if members.len() > max_size {
                    return Err(err(line_no, format!("bag {id} larger than declared width")));
                }
                if let Some(&bad) = members.iter().find(|&&x| x == 0 || x > n) {
                    return Err(err(line_no, format!("vertex {bad} out of range 1..={n}")));
                }
                bags[id - 1] = Some(members.iter().map(|x| x - 1).collect());
            }
            (Some((count, _, _)), _) => {
                let v = nums(0)?;
                if v.len() != 2 {
                    return Err(err(line_no, "tree edge lines need two bag ids"));
                }
                if v.iter().any(|&x| x == 0 || x > count) {
                    return Err(err(line_no, "tree edge references a missing bag"));
                }
                edges.push((v[0] - 1, v[1] - 1));
            }
        }
    }

    let (_, _, n) = header.ok_or_else(|| err(last_line.max(1), "missing `s td` header"))?;
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| err(last_line, format!("bag {} never declared", i + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    let td = TreeDecomposition::from_tree_edges(bags, &edges, 0)
        .map_err(|e| err(last_line, e.to_string()))?;
    Ok((td, n))
}

/// Writes `td` in `.td` format for a graph with `n` vertices. Bags are
/// renumbered breadth-first from the root so the root becomes bag 1.
pub fn emit_td(td: &TreeDecomposition, n: usize) -> String {
    let children = td.children();
    let mut order = Vec::with_capacity(td.len());
    let mut queue = VecDeque::from([td.root()]);
    while let Some(t) = queue.pop_front() {
        order.push(t);
        queue.extend(children[t].iter().copied());
    }
    let mut id = vec![0; td.len()];
    for (i, &t) in order.iter().enumerate() {
        id[t] = i + 1;
    }

    let max_size = td.bags().iter().map(Vec::len).max().unwrap_or(0);
    let mut out = format!("s td {} {} {}\n", td.len(), max_size, n);
    for &t in &order {
        out.push_str(&format!("b {}", id[t]));
        for v in td.bag(t) {
            out.push_str(&format!(" {}", v + 1));
        }
        out.push('\n');
    }
    for &t in &order {
        if let Some(p) = td.parent(t) {
            out.push_str(&format!("{} {}\n", id[p], id[t]));
        }
    }
    out
}
