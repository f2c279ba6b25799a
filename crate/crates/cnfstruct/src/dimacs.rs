//! DIMACS CNF reading and writing. Repeated clauses become multiplicities.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{Clause, Lit, MultiClauseSet, MAX_VAR};

/// A parsed DIMACS file before clauses are merged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimacsDocument {
    pub declared_vars: u64,
    pub declared_clauses: u64,
    pub has_header: bool,
    pub clauses: Vec<Clause>,
}

impl DimacsDocument {
    pub fn to_multi(&self) -> MultiClauseSet {
        MultiClauseSet::from_clauses(self.clauses.iter().cloned())
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, msg: msg.into() }
}

/// Parses without checking header counts; a trailing unterminated clause is accepted.
pub fn parse_document(input: impl AsRef<[u8]>) -> Result<DimacsDocument> {
    parse_inner(input.as_ref(), true)
}

fn parse_inner(input: &[u8], allow_unterminated: bool) -> Result<DimacsDocument> {
    let text = std::str::from_utf8(input).map_err(|e| syntax(0, e.to_string()))?;
    let mut doc = DimacsDocument {
        declared_vars: 0,
        declared_clauses: 0,
        has_header: false,
        clauses: Vec::new(),
    };
    let mut current: Vec<Lit> = Vec::new();
    let mut open = false;
    let mut last_line = 0;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if doc.has_header {
                return Err(syntax(lineno, "second header line"));
            }
            if open || !doc.clauses.is_empty() {
                return Err(syntax(lineno, "header after clauses"));
            }
            let parts: Vec<&str> = trimmed.split_whitespace().collect();
            if parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
                return Err(syntax(lineno, format!("malformed header `{trimmed}`")));
            }
            let num = |s: &str| {
                s.parse::<u64>()
                    .map_err(|_| syntax(lineno, format!("bad header number `{s}`")))
            };
            doc.declared_vars = num(parts[2])?;
            doc.declared_clauses = num(parts[3])?;
            doc.has_header = true;
            continue;
        }
        for tok in trimmed.split_whitespace() {
            let v: i64 = tok
                .parse()
                .map_err(|_| syntax(lineno, format!("bad token `{tok}`")))?;
            if v == 0 {
                doc.clauses.push(Clause::new(current.drain(..))?);
                open = false;
            } else {
                if v.unsigned_abs() > MAX_VAR as u64 {
                    return Err(Error::VariableOutOfRange(v));
                }
                current.push(Lit::new(v as i32)?);
                open = true;
            }
        }
    }
    if open {
        if !allow_unterminated {
            return Err(syntax(last_line, "last clause not terminated by 0"));
        }
        doc.clauses.push(Clause::new(current.drain(..))?);
    }
    Ok(doc)
}

/// Parses DIMACS CNF. In strict mode a header is required, its counts must
/// match, and the final clause must be 0-terminated.
pub fn parse_dimacs(input: impl AsRef<[u8]>, strict: bool) -> Result<MultiClauseSet> {
    let doc = parse_inner(input.as_ref(), !strict)?;
    if strict {
        if !doc.has_header {
            return Err(Error::HeaderMismatch("missing `p cnf` header".into()));
        }
        if doc.clauses.len() as u64 != doc.declared_clauses {
            return Err(Error::HeaderMismatch(format!(
                "header declares {} clauses, found {}",
                doc.declared_clauses,
                doc.clauses.len()
            )));
        }
        if let Some(v) = doc.clauses.iter().filter_map(|c| c.max_var()).max() {
            if v as u64 > doc.declared_vars {
                return Err(Error::HeaderMismatch(format!(
                    "variable {v} exceeds declared {}",
                    doc.declared_vars
                )));
            }
        }
    }
    Ok(doc.to_multi())
}

/// Canonical DIMACS text: header `p cnf <max var> <c>`, clauses in canonical
/// order, each repeated by its multiplicity; ⊥ is a bare `0` line.
pub fn write_dimacs(f: &MultiClauseSet) -> String {
    let mut out = String::new();
    writeln!(out, "p cnf {} {}", f.max_var(), f.c()).unwrap();
    for c in f.occurrences() {
        for x in c.lits() {
            write!(out, "{} ", x.value()).unwrap();
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(cl: &[&[i32]]) -> MultiClauseSet {
        MultiClauseSet::from_ints(cl).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_dimacs("p cnf 2 2\n1 2 0\n-1 0\n", true).unwrap(),
            ms(&[&[1, 2], &[-1]])
        );
        let f = parse_dimacs("p cnf 1 2\n1 0\n1 0\n", true).unwrap();
        assert_eq!(f.multiplicity(&Clause::from_ints(&[1]).unwrap()), 2);
        assert!(matches!(
            parse_dimacs("p cnf 1 1\n1 -1 0\n", false),
            Err(Error::TautologicalClause { var: 1 })
        ));
    }

    #[test]
    fn write_examples() {
        let mut f = MultiClauseSet::top();
        f.add(Clause::from_ints(&[1]).unwrap(), 2);
        assert_eq!(write_dimacs(&f), "p cnf 1 2\n1 0\n1 0\n");
        assert_eq!(write_dimacs(&MultiClauseSet::top()), "p cnf 0 0\n");
        assert_eq!(write_dimacs(&ms(&[&[]])), "p cnf 0 1\n0\n");
    }

    #[test]
    fn whitespace_and_comments() {
        let text = "c hello\n\n p cnf 3 2 \n1\n -2   3\n0 c\n";
        assert!(parse_dimacs(text, true).is_err());
        let text = "c hello\n\n p cnf 3 2 \n1\n -2   3\n0 -3\n 0\n";
        assert_eq!(parse_dimacs(text, true).unwrap(), ms(&[&[1, -2, 3], &[-3]]));
    }

    #[test]
    fn strict_checks() {
        assert!(matches!(
            parse_dimacs("p cnf 1 2\n1 0\n", true),
            Err(Error::HeaderMismatch(_))
        ));
        assert!(parse_dimacs("p cnf 1 2\n1 0\n", false).is_ok());
        assert!(matches!(
            parse_dimacs("p cnf 1 1\n2 0\n", true),
            Err(Error::HeaderMismatch(_))
        ));
        assert!(matches!(parse_dimacs("1 2\n", true), Err(Error::Syntax { .. })));
        assert_eq!(parse_dimacs("1 2\n", false).unwrap(), ms(&[&[1, 2]]));
        assert!(parse_dimacs("", false).unwrap().is_top());
        assert!(matches!(parse_dimacs("p dnf 1 1\n", false), Err(Error::Syntax { .. })));
        assert!(matches!(parse_dimacs("1 x 0\n", false), Err(Error::Syntax { .. })));
    }

    #[test]
    fn noncontiguous_vars() {
        let f = ms(&[&[7, -3]]);
        let text = write_dimacs(&f);
        assert_eq!(text, "p cnf 7 1\n-3 7 0\n");
        assert_eq!(parse_dimacs(&text, true).unwrap(), f);
    }
}
