//! A deliberately small SMILES reader producing hydrogen-suppressed graphs.
//!
//! Bond orders are erased: single, double, triple and aromatic bonds all
//! become one plain edge. Aromatic atoms (`c`, `n`, ...) are stored under their
//! uppercase element symbol. Anything outside the supported subset (charges,
//! isotopes, explicit hydrogens, stereo marks, wildcards) is rejected with the
//! byte offset of the offending token.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::graph::Graph;

const ORGANIC: [&str; 10] = ["B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I"];
const AROMATIC: [&str; 6] = ["b", "c", "n", "o", "p", "s"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at byte {offset}")]
pub struct SmilesError {
    pub offset: usize,
    pub kind: SmilesErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmilesErrorKind {
    #[error("empty SMILES")]
    Empty,
    #[error("unsupported token `{0}`")]
    Unsupported(String),
    #[error("unknown or unsupported element `{0}`")]
    UnknownElement(String),
    #[error("unterminated bracket atom")]
    UnterminatedBracket,
    #[error("bond or ring closure without a preceding atom")]
    MissingAtom,
    #[error("bond not followed by an atom")]
    DanglingBond,
    #[error("ring closure {0} is never closed")]
    UnmatchedRingClosure(u32),
    #[error("ring closure {0} bonds an atom to itself")]
    RingSelfLoop(u32),
    #[error("unclosed branch")]
    UnclosedBranch,
    #[error("`)` without matching `(`")]
    UnmatchedParenthesis,
    #[error("empty branch")]
    EmptyBranch,
}

impl SmilesErrorKind {
    /// True for unbalanced ring closures and parentheses, false for lexical errors.
    pub fn is_structural(&self) -> bool {
        matches!(
            self,
            SmilesErrorKind::UnmatchedRingClosure(_)
                | SmilesErrorKind::RingSelfLoop(_)
                | SmilesErrorKind::UnclosedBranch
                | SmilesErrorKind::UnmatchedParenthesis
                | SmilesErrorKind::EmptyBranch
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Molecule {
    pub graph: Graph,
    pub source: String,
    pub name: Option<String>,
    pub warnings: Vec<String>,
}

impl Molecule {
    pub fn fragment_count(&self) -> usize {
        self.graph.components().len()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
    prev: Option<usize>,
    pending_bond: Option<usize>,
    branches: Vec<(Option<usize>, usize, bool)>,
    rings: BTreeMap<u32, (usize, usize)>,
    fragments: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, offset: usize, kind: SmilesErrorKind) -> SmilesError {
        SmilesError { offset, kind }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn add_atom(&mut self, symbol: String) {
        let id = self.labels.len();
        self.labels.push(symbol);
        if let Some(p) = self.prev {
            self.edges.push((p, id));
        }
        if let Some((_, _, seen_atom)) = self.branches.last_mut() {
            *seen_atom = true;
        }
        self.prev = Some(id);
        self.pending_bond = None;
    }

    fn organic_atom(&mut self) -> Result<(), SmilesError> {
        let start = self.pos;
        let rest = &self.src[start..];
        let two = rest.get(..2).map(|s| std::str::from_utf8(s).unwrap_or(""));
        let symbol = if two == Some("Cl") || two == Some("Br") {
            self.pos += 2;
            std::str::from_utf8(&rest[..2]).unwrap().to_string()
        } else {
            let c = (rest[0] as char).to_string();
            if !ORGANIC.contains(&c.as_str()) && !AROMATIC.contains(&c.as_str()) {
                return Err(self.err(start, SmilesErrorKind::UnknownElement(c)));
            }
            self.pos += 1;
            c.to_uppercase()
        };
        self.add_atom(symbol);
        Ok(())
    }

    fn bracket_atom(&mut self) -> Result<(), SmilesError> {
        let start = self.pos;
        let close = self.src[start..]
            .iter()
            .position(|&b| b == b']')
            .ok_or(self.err(start, SmilesErrorKind::UnterminatedBracket))?;
        let inner = std::str::from_utf8(&self.src[start + 1..start + close])
            .map_err(|_| self.err(start + 1, SmilesErrorKind::Unsupported("non-ASCII".into())))?;
        let bytes = inner.as_bytes();
        let sym_len = match bytes.first() {
            Some(b) if b.is_ascii_uppercase() => {
                1 + usize::from(bytes.get(1).is_some_and(u8::is_ascii_lowercase))
            }
            Some(b) if b.is_ascii_lowercase() => 1,
            Some(_) => {
                let c = inner.chars().next().unwrap();
                return Err(self.err(start + 1, SmilesErrorKind::Unsupported(c.to_string())));
            }
            None => return Err(self.err(start, SmilesErrorKind::Unsupported("[]".into()))),
        };
        let element = &inner[..sym_len];
        let symbol = if ORGANIC.contains(&element) {
            element.to_string()
        } else if AROMATIC.contains(&element) {
            element.to_uppercase()
        } else {
            return Err(self.err(start + 1, SmilesErrorKind::UnknownElement(element.to_string())));
        };
        if let Some(c) = inner[sym_len..].chars().next() {
            return Err(self.err(
                start + 1 + sym_len,
                SmilesErrorKind::Unsupported(c.to_string()),
            ));
        }
        self.pos = start + close + 1;
        self.add_atom(symbol);
        Ok(())
    }

    fn ring_closure(&mut self, number: u32, offset: usize) -> Result<(), SmilesError> {
        let atom = self.prev.ok_or(self.err(offset, SmilesErrorKind::MissingAtom))?;
        match self.rings.remove(&number) {
            Some((other, _)) => {
                if other == atom {
                    return Err(self.err(offset, SmilesErrorKind::RingSelfLoop(number)));
                }
                self.edges.push((other, atom));
            }
            None => {
                self.rings.insert(number, (atom, offset));
            }
        }
        self.pending_bond = None;
        Ok(())
    }

    fn parse(mut self) -> Result<(Graph, usize), SmilesError> {
        while let Some(b) = self.peek() {
            let at = self.pos;
            match b {
                b'[' => self.bracket_atom()?,
                b'A'..=b'Z' | b'a'..=b'z' => self.organic_atom()?,
                b'-' | b'=' | b'#' | b':' => {
                    if self.prev.is_none() || self.pending_bond.is_some() {
                        return Err(self.err(at, SmilesErrorKind::MissingAtom));
                    }
                    self.pending_bond = Some(at);
                    self.pos += 1;
                }
                b'0'..=b'9' => {
                    self.pos += 1;
                    self.ring_closure(u32::from(b - b'0'), at)?;
                }
                b'%' => {
                    let digits = self.src.get(at + 1..at + 3).filter(|d| d.iter().all(u8::is_ascii_digit));
                    let Some(d) = digits else {
                        return Err(self.err(at, SmilesErrorKind::Unsupported("%".into())));
                    };
                    let number = u32::from(d[0] - b'0') * 10 + u32::from(d[1] - b'0');
                    self.pos += 3;
                    self.ring_closure(number, at)?;
                }
                b'(' => {
                    if self.prev.is_none() || self.pending_bond.is_some() {
                        return Err(self.err(at, SmilesErrorKind::MissingAtom));
                    }
                    self.branches.push((self.prev, at, false));
                    self.pos += 1;
                }
                b')' => {
                    let (anchor, _, seen_atom) = self
                        .branches
                        .pop()
                        .ok_or(self.err(at, SmilesErrorKind::UnmatchedParenthesis))?;
                    if self.pending_bond.is_some() {
                        return Err(self.err(at, SmilesErrorKind::DanglingBond));
                    }
                    if !seen_atom {
                        return Err(self.err(at, SmilesErrorKind::EmptyBranch));
                    }
                    self.prev = anchor;
                    self.pos += 1;
                }
                b'.' => {
                    if self.pending_bond.is_some() {
                        return Err(self.err(at, SmilesErrorKind::DanglingBond));
                    }
                    if let Some(&(_, open, _)) = self.branches.last() {
                        return Err(self.err(open, SmilesErrorKind::UnclosedBranch));
                    }
                    if self.prev.is_none() {
                        return Err(self.err(at, SmilesErrorKind::MissingAtom));
                    }
                    self.prev = None;
                    self.fragments += 1;
                    self.pos += 1;
                }
                other => {
                    let token = self.src[at..]
                        .utf8_chunks()
                        .next()
                        .and_then(|c| c.valid().chars().next())
                        .unwrap_or(other as char);
                    return Err(self.err(at, SmilesErrorKind::Unsupported(token.to_string())));
                }
            }
        }
        if let Some(at) = self.pending_bond {
            return Err(self.err(at, SmilesErrorKind::DanglingBond));
        }
        if let Some(&(_, open, _)) = self.branches.last() {
            return Err(self.err(open, SmilesErrorKind::UnclosedBranch));
        }
        if let Some((&number, &(_, offset))) = self.rings.iter().next() {
            return Err(self.err(offset, SmilesErrorKind::UnmatchedRingClosure(number)));
        }
        if self.labels.is_empty() {
            return Err(self.err(0, SmilesErrorKind::Empty));
        }

        let mut g = Graph::new(self.labels.len());
        for (u, v) in self.edges {
            g.add_edge(u, v).expect("parser only emits valid atom pairs");
        }
        let g = g.with_labels(self.labels).expect("one label per atom");
        Ok((g, self.fragments + 1))
    }
}

/// Parses one SMILES string from the supported subset.
pub fn parse_smiles(s: &str) -> Result<Molecule, SmilesError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(SmilesError {
            offset: 0,
            kind: SmilesErrorKind::Empty,
        });
    }
    let parser = Parser {
        src: s.as_bytes(),
        pos: 0,
        labels: Vec::new(),
        edges: Vec::new(),
        prev: None,
        pending_bond: None,
        branches: Vec::new(),
        rings: BTreeMap::new(),
        fragments: 0,
    };
    let (graph, fragments) = parser.parse()?;
    let mut warnings = Vec::new();
    if fragments > 1 {
        warnings.push(format!("{fragments} dot-separated fragments; graph is disconnected"));
    }
    Ok(Molecule {
        graph,
        source: s.to_string(),
        name: None,
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub line: usize,
    pub molecule: Molecule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reject {
    pub line: usize,
    pub text: String,
    pub error: SmilesError,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    pub molecules: Vec<CorpusEntry>,
    pub rejects: Vec<Reject>,
}

impl Corpus {
    /// Non-comment, non-blank lines seen while reading.
    pub fn input_lines(&self) -> usize {
        self.molecules.len() + self.rejects.len()
    }
}

/// Parses corpus text: one `SMILES[\tNAME]` per line, `#` comments and
/// blank lines skipped. Bad lines are collected, never fatal.
pub fn parse_corpus(text: &str) -> Corpus {
    let mut corpus = Corpus::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let (smiles, name) = match line.split_once('\t') {
            Some((s, n)) => (s, Some(n.trim().to_string()).filter(|n| !n.is_empty())),
            None => (line, None),
        };
        match parse_smiles(smiles) {
            Ok(mut molecule) => {
                molecule.name = name;
                corpus.molecules.push(CorpusEntry {
                    line: idx + 1,
                    molecule,
                });
            }
            Err(error) => corpus.rejects.push(Reject {
                line: idx + 1,
                text: line.to_string(),
                error,
            }),
        }
    }
    corpus
}

pub fn load_corpus(path: impl AsRef<Path>) -> io::Result<Corpus> {
    Ok(parse_corpus(&fs::read_to_string(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees(g: &Graph) -> Vec<usize> {
        let mut d: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
        d.sort_unstable();
        d
    }

    #[test]
    fn methane() {
        let m = parse_smiles("C").unwrap();
        assert_eq!((m.graph.n(), m.graph.m()), (1, 0));
        assert_eq!(m.graph.labels().unwrap(), &["C".to_string()]);
    }

    #[test]
    fn cyclohexane_is_c6() {
        let g = parse_smiles("C1CCCCC1").unwrap().graph;
        assert_eq!((g.n(), g.m()), (6, 6));
        assert!(degrees(&g).iter().all(|&d| d == 2));
    }

    #[test]
    fn caffeine() {
        let g = parse_smiles("CN1C=NC2=C1C(=O)N(C(=O)N2C)C").unwrap().graph;
        assert_eq!((g.n(), g.m()), (14, 15));
        assert!(g.is_connected());
        let labels = g.labels().unwrap();
        assert_eq!(labels.iter().filter(|l| *l == "N").count(), 4);
        assert_eq!(labels.iter().filter(|l| *l == "O").count(), 2);
    }

    #[test]
    fn bond_orders_are_erased() {
        assert_eq!(parse_smiles("C=C").unwrap().graph, parse_smiles("CC").unwrap().graph);
        assert_eq!(parse_smiles("C#N").unwrap().graph.m(), 1);
        assert_eq!(
            parse_smiles("c1ccccc1").unwrap().graph,
            parse_smiles("C1=CC=CC=C1").unwrap().graph
        );
    }

    #[test]
    fn ring_opening_position_does_not_matter() {
        let reference = parse_smiles("CC1CCCCC1").unwrap().graph;
        for s in ["C1CCC(C)CC1", "C1CC(C)CCC1", "C(C)1CCCCC1", "C%12CCCC(C)C%12", "CC=1CCCCC1"] {
            let g = parse_smiles(s).unwrap().graph;
            assert_eq!((g.n(), g.m()), (7, 7), "{s}");
            assert_eq!(degrees(&g), degrees(&reference), "{s}");
        }
    }

    #[test]
    fn branches_and_halogens() {
        let m = parse_smiles("ClC(Br)(F)I").unwrap();
        assert_eq!((m.graph.n(), m.graph.m()), (5, 4));
        assert_eq!(m.graph.degree(1), 4);
        assert_eq!(m.graph.label(0), Some("Cl"));
        let b = parse_smiles("[C][n]").unwrap();
        assert_eq!(b.graph.label(1), Some("N"));
    }

    #[test]
    fn fragments_warn_but_parse() {
        let m = parse_smiles("CC.O").unwrap();
        assert_eq!(m.fragment_count(), 2);
        assert_eq!(m.warnings.len(), 1);
    }

    #[test]
    fn duplicate_ring_bond_collapses() {
        let g = parse_smiles("C1C1").unwrap().graph;
        assert_eq!((g.n(), g.m()), (2, 1));
    }

    #[test]
    fn rejects_unsupported_tokens_with_offsets() {
        let cases = [
            ("C[NH4+]", 3),
            ("[13C]", 1),
            ("C[C@H](O)N", 3),
            ("C*C", 1),
            ("C/C=C/C", 1),
            ("[Na]", 1),
            ("CX", 1),
        ];
        for (s, offset) in cases {
            let e = parse_smiles(s).unwrap_err();
            assert_eq!(e.offset, offset, "{s}: {e}");
            assert!(!e.kind.is_structural(), "{s}");
        }
    }

    #[test]
    fn structural_errors() {
        let e = parse_smiles("C1CC").unwrap_err();
        assert_eq!(e.kind, SmilesErrorKind::UnmatchedRingClosure(1));
        assert!(e.kind.is_structural());
        assert_eq!(parse_smiles("C(C").unwrap_err().kind, SmilesErrorKind::UnclosedBranch);
        assert_eq!(parse_smiles("CC)").unwrap_err().kind, SmilesErrorKind::UnmatchedParenthesis);
        assert_eq!(parse_smiles("C()C").unwrap_err().kind, SmilesErrorKind::EmptyBranch);
        assert_eq!(parse_smiles("C11").unwrap_err().kind, SmilesErrorKind::RingSelfLoop(1));
        assert_eq!(parse_smiles("C=").unwrap_err().kind, SmilesErrorKind::DanglingBond);
        assert_eq!(parse_smiles("=C").unwrap_err().kind, SmilesErrorKind::MissingAtom);
        assert_eq!(parse_smiles("   ").unwrap_err().kind, SmilesErrorKind::Empty);
    }

    #[test]
    fn corpus_collects_rejects() {
        let text = "# header\nCCO\tethanol\n\nC1CC\tbroken\nc1ccccc1\tbenzene\n";
        let c = parse_corpus(text);
        assert_eq!(c.molecules.len(), 2);
        assert_eq!(c.rejects.len(), 1);
        assert_eq!(c.rejects[0].line, 4);
        assert_eq!(c.molecules[0].molecule.name.as_deref(), Some("ethanol"));
        assert_eq!(c.input_lines(), 3);
        assert_eq!(parse_corpus(""), Corpus::default());
    }
}
