//! Text formats for every instance type.
//!
//! All parsers report errors with 1-based line numbers. Grammars:
//!
//! * DIMACS CNF: `c` comments, `p cnf V C` header, zero-terminated clauses.
//! * ECNF (quantified): `p ecnf V C`, optional `m cnf|dnf` matrix flag,
//!   one optional `f v.. 0` free-variable line, alternating `a v.. 0` /
//!   `e v.. 0` blocks, then C zero-terminated clauses (or DNF terms).
//!   Every variable must be declared free or quantified exactly once.
//! * Gamma formulas: `vars N`, `rel NAME ARITY {tuples}` with bit-string
//!   tuples, constraint lines `NAME(i,j,...)`; `#` comments.
//! * Graph: `v N` then `i j` edge lines. Hypergraph: one hyperedge per line.
//! * Database: `dom c1 c2 ...`, facts `p(a,b).`, dependencies
//!   `egd: p(X,Y), p(X,Z) -> Y = Z.` (capitalized names are variables).
//! * Diagnosis: `p mbd V N`, N `comp <clauses>` lines, one `mu <clauses>`
//!   line, clauses zero-terminated within each line.
//! * Abduction: `p abd V`, `gamma <clauses>` lines, `hyp <literals>`,
//!   `q <var>`.

use super::{
    Atom, BoolRelation, Clause, CnfFormula, DnfFormula, DnfTerm, Egd, EgdAtom, EgdTerm,
    AbductionInstance, DatabaseInstance, DiagnosisInstance, GammaFormula, Graph, Hypergraph,
    Literal, Matrix, QbfInstance, Quantifier, VarId,
};

/// Parse failure with the offending 1-based line.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, msg: msg.into() })
}

type Numbered<'a> = (usize, &'a str);

/// Non-blank lines with their 1-based numbers, comments stripped.
/// A `c` comment needs a word boundary (`c` alone or `c <text>`) so that
/// keywords like `comp` are not swallowed; `#` comments do not.
fn content_lines(input: &str, comment: char) -> Vec<Numbered<'_>> {
    let is_comment = move |l: &str| match comment {
        '#' => l.starts_with('#'),
        c => {
            let mut chars = l.chars();
            chars.next() == Some(c) && chars.next().is_none_or(char::is_whitespace)
        }
    };
    input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(move |(_, l)| !l.is_empty() && !is_comment(l))
        .collect()
}

fn parse_u32(line: usize, tok: &str, what: &str) -> Result<u32, ParseError> {
    tok.parse::<u32>()
        .map_err(|_| ParseError { line, msg: format!("expected {what}, got {tok:?}") })
}

fn literal_checked(line: usize, value: i64, num_vars: VarId) -> Result<Literal, ParseError> {
    let l = Literal::from_dimacs(value)
        .map_err(|e| ParseError { line, msg: e.to_string() })?;
    if l.var() > num_vars {
        return err(line, format!("literal {value} exceeds declared variable count {num_vars}"));
    }
    Ok(l)
}

/// Splits a stream of integer tokens into zero-terminated groups.
/// `(line, value)` pairs in; groups of literals out.
fn zero_terminated_groups(
    tokens: &[(usize, i64)],
    num_vars: VarId,
) -> Result<Vec<(usize, Vec<Literal>)>, ParseError> {
    let mut groups = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut start_line = tokens.first().map(|&(l, _)| l).unwrap_or(1);
    for &(line, v) in tokens {
        if current.is_empty() {
            start_line = line;
        }
        if v == 0 {
            groups.push((start_line, std::mem::take(&mut current)));
        } else {
            current.push(literal_checked(line, v, num_vars)?);
        }
    }
    if !current.is_empty() {
        let line = tokens.last().unwrap().0;
        return err(line, "unterminated clause (missing 0)");
    }
    Ok(groups)
}

fn int_tokens(lines: &[Numbered<'_>]) -> Result<Vec<(usize, i64)>, ParseError> {
    let mut toks = Vec::new();
    for &(ln, l) in lines {
        for t in l.split_whitespace() {
            let v = t
                .parse::<i64>()
                .map_err(|_| ParseError { line: ln, msg: format!("expected integer, got {t:?}") })?;
            toks.push((ln, v));
        }
    }
    Ok(toks)
}

/// DIMACS CNF.
pub fn parse_dimacs(input: &str) -> Result<CnfFormula, ParseError> {
    let lines = content_lines(input, 'c');
    let Some(&(hline, header)) = lines.first() else {
        return err(1, "empty input (missing p cnf header)");
    };
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "p" || toks[1] != "cnf" {
        return err(hline, format!("expected `p cnf V C` header, got {header:?}"));
    }
    let num_vars = parse_u32(hline, toks[2], "variable count")?;
    let num_clauses = parse_u32(hline, toks[3], "clause count")? as usize;
    let tokens = int_tokens(&lines[1..])?;
    let groups = zero_terminated_groups(&tokens, num_vars)?;
    if groups.len() != num_clauses {
        let line = lines.last().map(|&(l, _)| l).unwrap_or(hline);
        return err(
            line,
            format!("header declares {num_clauses} clauses, found {}", groups.len()),
        );
    }
    let mut f = CnfFormula::new(num_vars);
    for (line, lits) in groups {
        let c = Clause::new(lits).map_err(|e| ParseError { line, msg: e.to_string() })?;
        f.push_clause(c);
    }
    Ok(f)
}

/// ECNF: prenex QBF with free variables.
pub fn parse_ecnf(input: &str) -> Result<QbfInstance, ParseError> {
    let lines = content_lines(input, 'c');
    let Some(&(hline, header)) = lines.first() else {
        return err(1, "empty input (missing p ecnf header)");
    };
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "p" || toks[1] != "ecnf" {
        return err(hline, format!("expected `p ecnf V C` header, got {header:?}"));
    }
    let num_vars = parse_u32(hline, toks[2], "variable count")?;
    let num_clauses = parse_u32(hline, toks[3], "clause count")? as usize;

    let mut dnf = false;
    let mut free_vars: Option<Vec<VarId>> = None;
    let mut blocks: Vec<(Quantifier, Vec<VarId>)> = Vec::new();
    let mut rest_start = lines.len();
    let mut body_seen = false;

    for (idx, &(ln, l)) in lines.iter().enumerate().skip(1) {
        let mut parts = l.split_whitespace();
        let head = parts.next().unwrap();
        let quantifier = match head {
            "m" => {
                let mode = parts.next().unwrap_or("");
                match mode {
                    "dnf" => dnf = true,
                    "cnf" => dnf = false,
                    _ => return err(ln, format!("matrix flag must be `m cnf` or `m dnf`, got {l:?}")),
                }
                if parts.next().is_some() {
                    return err(ln, "trailing tokens after matrix flag");
                }
                continue;
            }
            "f" => None,
            "a" => Some(Quantifier::Forall),
            "e" => Some(Quantifier::Exists),
            _ => {
                rest_start = idx;
                body_seen = true;
                break;
            }
        };
        let mut vars = Vec::new();
        let mut terminated = false;
        for t in parts {
            let v = t
                .parse::<i64>()
                .map_err(|_| ParseError { line: ln, msg: format!("expected integer, got {t:?}") })?;
            if v == 0 {
                terminated = true;
                break;
            }
            if v < 0 {
                return err(ln, "quantifier lines take positive variable indices");
            }
            if v as u64 > num_vars as u64 {
                return err(ln, format!("variable {v} exceeds declared count {num_vars}"));
            }
            vars.push(v as VarId);
        }
        if !terminated {
            return err(ln, "quantifier line must end with 0");
        }
        match quantifier {
            None => {
                if free_vars.is_some() {
                    return err(ln, "duplicate free-variable line");
                }
                free_vars = Some(vars);
            }
            Some(q) => blocks.push((q, vars)),
        }
    }
    if !body_seen {
        rest_start = lines.len();
    }

    let tokens = int_tokens(&lines[rest_start..])?;
    let groups = zero_terminated_groups(&tokens, num_vars)?;
    if groups.len() != num_clauses {
        let line = lines.last().map(|&(l, _)| l).unwrap_or(hline);
        return err(
            line,
            format!("header declares {num_clauses} clauses, found {}", groups.len()),
        );
    }
    let matrix = if dnf {
        let mut f = DnfFormula::new(num_vars);
        for (line, lits) in groups {
            let t = DnfTerm::new(lits).map_err(|e| ParseError { line, msg: e.to_string() })?;
            f.push_term(t);
        }
        Matrix::Dnf(f)
    } else {
        let mut f = CnfFormula::new(num_vars);
        for (line, lits) in groups {
            let c = Clause::new(lits).map_err(|e| ParseError { line, msg: e.to_string() })?;
            f.push_clause(c);
        }
        Matrix::Cnf(f)
    };
    let inst = QbfInstance {
        num_vars,
        free_vars: free_vars.unwrap_or_default(),
        blocks,
        matrix,
    };
    inst.validate().map_err(|e| ParseError { line: hline, msg: e.to_string() })?;
    Ok(inst)
}

/// Gamma constraint formulas.
pub fn parse_gamma(input: &str) -> Result<GammaFormula, ParseError> {
    let lines = content_lines(input, '#');
    let mut num_vars: Option<VarId> = None;
    let mut relations: Vec<(usize, String, BoolRelation)> = Vec::new();
    let mut constraints: Vec<(usize, String, Vec<VarId>)> = Vec::new();

    for &(ln, l) in &lines {
        if let Some(rest) = l.strip_prefix("vars ") {
            if num_vars.is_some() {
                return err(ln, "duplicate vars line");
            }
            num_vars = Some(parse_u32(ln, rest.trim(), "variable count")?);
        } else if let Some(rest) = l.strip_prefix("rel ") {
            let (name, arity, rel) = parse_relation_decl(ln, rest)?;
            let _ = arity;
            relations.push((ln, name, rel));
        } else {
            constraints.push(parse_constraint_line(ln, l)?);
        }
    }

    let Some(n) = num_vars else {
        return err(1, "missing `vars N` line");
    };
    let mut f = GammaFormula::new(n);
    for (ln, name, rel) in relations {
        f.add_relation(&name, rel)
            .map_err(|e| ParseError { line: ln, msg: e.to_string() })?;
    }
    for (ln, name, vars) in constraints {
        f.add_constraint(&name, vars)
            .map_err(|e| ParseError { line: ln, msg: e.to_string() })?;
    }
    Ok(f)
}

fn parse_relation_decl(
    ln: usize,
    rest: &str,
) -> Result<(String, usize, BoolRelation), ParseError> {
    // NAME ARITY {t1,t2,...}
    let Some(brace) = rest.find('{') else {
        return err(ln, "relation declaration missing `{`");
    };
    let head: Vec<&str> = rest[..brace].split_whitespace().collect();
    if head.len() != 2 {
        return err(ln, "expected `rel NAME ARITY {tuples}`");
    }
    let name = head[0].to_string();
    let arity = parse_u32(ln, head[1], "relation arity")? as usize;
    let Some(close) = rest.find('}') else {
        return err(ln, "relation declaration missing `}`");
    };
    if close < brace {
        return err(ln, "mismatched braces in relation declaration");
    }
    let body = &rest[brace + 1..close];
    let mut tuples = Vec::new();
    for part in body.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let mut tuple = Vec::with_capacity(arity);
        for ch in part.chars() {
            match ch {
                '0' => tuple.push(false),
                '1' => tuple.push(true),
                _ => return err(ln, format!("tuple {part:?} must be a 0/1 string")),
            }
        }
        tuples.push(tuple);
    }
    let rel = BoolRelation::new(arity, tuples)
        .map_err(|e| ParseError { line: ln, msg: e.to_string() })?;
    Ok((name, arity, rel))
}

fn parse_constraint_line(
    ln: usize,
    l: &str,
) -> Result<(usize, String, Vec<VarId>), ParseError> {
    let Some(open) = l.find('(') else {
        return err(ln, format!("expected constraint `NAME(i,j,...)`, got {l:?}"));
    };
    if !l.ends_with(')') {
        return err(ln, "constraint must end with `)`");
    }
    let name = l[..open].trim().to_string();
    if name.is_empty() {
        return err(ln, "constraint with empty relation name");
    }
    let args = &l[open + 1..l.len() - 1];
    let mut vars = Vec::new();
    for part in args.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return err(ln, "empty argument in constraint");
        }
        vars.push(parse_u32(ln, part, "variable index")?);
    }
    Ok((ln, name, vars))
}

/// Graph: `v N` then edge lines `i j`.
pub fn parse_graph(input: &str) -> Result<Graph, ParseError> {
    let lines = content_lines(input, '#');
    let Some(&(hline, header)) = lines.first() else {
        return err(1, "empty input (missing `v N` line)");
    };
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 || toks[0] != "v" {
        return err(hline, format!("expected `v N` header, got {header:?}"));
    }
    let n = parse_u32(hline, toks[1], "vertex count")?;
    let mut g = Graph::new(n);
    for &(ln, l) in &lines[1..] {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return err(ln, format!("expected edge `i j`, got {l:?}"));
        }
        let u = parse_u32(ln, toks[0], "vertex")?;
        let v = parse_u32(ln, toks[1], "vertex")?;
        g.add_edge(u, v).map_err(|e| ParseError { line: ln, msg: e.to_string() })?;
    }
    Ok(g)
}

/// Hypergraph: one hyperedge per line, space-separated vertices.
pub fn parse_hypergraph(input: &str) -> Result<Hypergraph, ParseError> {
    let lines = content_lines(input, '#');
    let mut edges = Vec::new();
    for &(ln, l) in &lines {
        let mut edge = Vec::new();
        for t in l.split_whitespace() {
            edge.push(parse_u32(ln, t, "vertex")?);
        }
        if edge.contains(&0) {
            return err(ln, "vertices are 1-based");
        }
        edges.push(edge);
    }
    Hypergraph::new(edges).map_err(|e| ParseError { line: 1, msg: e.to_string() })
}

/// Database instances with EGDs.
pub fn parse_database(input: &str) -> Result<(DatabaseInstance, Vec<Egd>), ParseError> {
    let lines = content_lines(input, '#');
    let mut domain: Vec<String> = Vec::new();
    let mut atoms: Vec<Atom> = Vec::new();
    let mut egds: Vec<Egd> = Vec::new();
    for &(ln, l) in &lines {
        if let Some(rest) = l.strip_prefix("dom ") {
            for c in rest.split_whitespace() {
                domain.push(c.to_string());
            }
        } else if let Some(rest) = l.strip_prefix("egd:") {
            egds.push(parse_egd(ln, rest)?);
        } else {
            let Some(stripped) = l.strip_suffix('.') else {
                return err(ln, format!("fact must end with `.`, got {l:?}"));
            };
            let (pred, args) = parse_atom_syntax(ln, stripped.trim())?;
            atoms.push(Atom { predicate: pred, args });
        }
    }
    let db = DatabaseInstance::new(domain, atoms)
        .map_err(|e| ParseError { line: 1, msg: e.to_string() })?;
    for egd in &egds {
        egd.validate().map_err(|e| ParseError { line: 1, msg: e.to_string() })?;
    }
    Ok((db, egds))
}

fn parse_atom_syntax(ln: usize, s: &str) -> Result<(String, Vec<String>), ParseError> {
    let Some(open) = s.find('(') else {
        return err(ln, format!("expected `pred(args)`, got {s:?}"));
    };
    if !s.ends_with(')') {
        return err(ln, format!("atom must end with `)`: {s:?}"));
    }
    let pred = s[..open].trim().to_string();
    if pred.is_empty() {
        return err(ln, "atom with empty predicate name");
    }
    let args: Vec<String> = s[open + 1..s.len() - 1]
        .split(',')
        .map(|a| a.trim().to_string())
        .collect();
    if args.iter().any(|a| a.is_empty()) {
        return err(ln, format!("empty argument in atom {s:?}"));
    }
    Ok((pred, args))
}

fn is_egd_variable(token: &str) -> bool {
    token.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

fn parse_egd(ln: usize, rest: &str) -> Result<Egd, ParseError> {
    let Some(stripped) = rest.trim().strip_suffix('.') else {
        return err(ln, "EGD must end with `.`");
    };
    let Some((body_str, eq_str)) = stripped.split_once("->") else {
        return err(ln, "EGD missing `->`");
    };
    let mut body = Vec::new();
    // Body atoms are comma-separated, but commas also occur inside parens;
    // split at commas that sit at paren depth zero.
    let mut depth = 0usize;
    let mut start = 0usize;
    let bytes = body_str.as_bytes();
    let mut pieces = Vec::new();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth = depth.saturating_sub(1),
            b',' if depth == 0 => {
                pieces.push(&body_str[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    pieces.push(&body_str[start..]);
    for piece in pieces {
        let piece = piece.trim();
        if piece.is_empty() {
            return err(ln, "empty atom in EGD body");
        }
        let (pred, args) = parse_atom_syntax(ln, piece)?;
        let terms = args
            .into_iter()
            .map(|a| {
                if is_egd_variable(&a) {
                    EgdTerm::Var(a)
                } else {
                    EgdTerm::Const(a)
                }
            })
            .collect();
        body.push(EgdAtom { predicate: pred, args: terms });
    }
    let Some((lhs, rhs)) = eq_str.split_once('=') else {
        return err(ln, "EGD equation missing `=`");
    };
    let (lhs, rhs) = (lhs.trim().to_string(), rhs.trim().to_string());
    if !is_egd_variable(&lhs) || !is_egd_variable(&rhs) {
        return err(ln, "EGD equation must relate two variables (capitalized)");
    }
    Ok(Egd { body, lhs, rhs })
}

/// Diagnosis instances: `p mbd V N`, `comp` lines, `mu` line.
pub fn parse_diagnosis(input: &str) -> Result<DiagnosisInstance, ParseError> {
    let lines = content_lines(input, 'c');
    let Some(&(hline, header)) = lines.first() else {
        return err(1, "empty input (missing p mbd header)");
    };
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "p" || toks[1] != "mbd" {
        return err(hline, format!("expected `p mbd V N` header, got {header:?}"));
    }
    let num_vars = parse_u32(hline, toks[2], "variable count")?;
    let num_components = parse_u32(hline, toks[3], "component count")? as usize;
    let mut components = Vec::new();
    let mut mu: Option<CnfFormula> = None;
    for &(ln, l) in &lines[1..] {
        let (kind, rest) = match l.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r),
            None => (l, ""),
        };
        let f = parse_inline_clauses(ln, rest, num_vars)?;
        match kind {
            "comp" => components.push(f),
            "mu" => {
                if mu.is_some() {
                    return err(ln, "duplicate mu line");
                }
                mu = Some(f);
            }
            _ => return err(ln, format!("expected `comp` or `mu` line, got {l:?}")),
        }
    }
    if components.len() != num_components {
        return err(
            hline,
            format!("header declares {num_components} components, found {}", components.len()),
        );
    }
    let Some(mu) = mu else {
        return err(hline, "missing mu line");
    };
    let inst = DiagnosisInstance { num_vars, components, mu };
    inst.validate_shape()
        .map_err(|e| ParseError { line: hline, msg: e.to_string() })?;
    Ok(inst)
}

/// One line of zero-terminated clauses, e.g. `1 -2 0 2 3 0`.
fn parse_inline_clauses(ln: usize, s: &str, num_vars: VarId) -> Result<CnfFormula, ParseError> {
    let mut tokens = Vec::new();
    for t in s.split_whitespace() {
        let v = t
            .parse::<i64>()
            .map_err(|_| ParseError { line: ln, msg: format!("expected integer, got {t:?}") })?;
        tokens.push((ln, v));
    }
    let groups = zero_terminated_groups(&tokens, num_vars)?;
    let mut f = CnfFormula::new(num_vars);
    for (line, lits) in groups {
        let c = Clause::new(lits).map_err(|e| ParseError { line, msg: e.to_string() })?;
        f.push_clause(c);
    }
    Ok(f)
}

/// Abduction instances: `p abd V`, `gamma` clause lines, `hyp`, `q`.
pub fn parse_abduction(input: &str) -> Result<AbductionInstance, ParseError> {
    let lines = content_lines(input, 'c');
    let Some(&(hline, header)) = lines.first() else {
        return err(1, "empty input (missing p abd header)");
    };
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "p" || toks[1] != "abd" {
        return err(hline, format!("expected `p abd V` header, got {header:?}"));
    }
    let num_vars = parse_u32(hline, toks[2], "variable count")?;
    let mut gamma = CnfFormula::new(num_vars);
    let mut hypotheses: Option<Vec<Literal>> = None;
    let mut q: Option<VarId> = None;
    for &(ln, l) in &lines[1..] {
        let (kind, rest) = match l.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r),
            None => (l, ""),
        };
        match kind {
            "gamma" => {
                let f = parse_inline_clauses(ln, rest, num_vars)?;
                for c in f.clauses() {
                    gamma.push_clause(c.clone());
                }
            }
            "hyp" => {
                if hypotheses.is_some() {
                    return err(ln, "duplicate hyp line");
                }
                let mut hs = Vec::new();
                for t in rest.split_whitespace() {
                    let v = t.parse::<i64>().map_err(|_| ParseError {
                        line: ln,
                        msg: format!("expected literal, got {t:?}"),
                    })?;
                    hs.push(literal_checked(ln, v, num_vars)?);
                }
                hypotheses = Some(hs);
            }
            "q" => {
                if q.is_some() {
                    return err(ln, "duplicate q line");
                }
                q = Some(parse_u32(ln, rest.trim(), "query variable")?);
            }
            _ => return err(ln, format!("expected gamma/hyp/q line, got {l:?}")),
        }
    }
    let inst = AbductionInstance {
        gamma,
        hypotheses: hypotheses.unwrap_or_default(),
        q: q.ok_or(ParseError { line: hline, msg: "missing q line".into() })?,
    };
    inst.validate_shape()
        .map_err(|e| ParseError { line: hline, msg: e.to_string() })?;
    Ok(inst)
}
