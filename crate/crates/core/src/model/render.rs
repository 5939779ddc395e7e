//! Serializers mirroring the parsers in [`super::parse`]. Each renderer
//! produces text its parser accepts, so instances survive round trips.

use super::{
    AbductionInstance, CnfFormula, DatabaseInstance, DiagnosisInstance, Egd, EgdTerm,
    GammaFormula, Graph, Hypergraph, Matrix, QbfInstance, Quantifier,
};
use std::fmt::Write;

pub fn render_dimacs(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.num_vars(), f.clauses().len());
    for c in f.clauses() {
        for l in c.literals() {
            write!(out, "{} ", l.to_dimacs()).unwrap();
        }
        out.push_str("0\n");
    }
    out
}

pub fn render_ecnf(inst: &QbfInstance) -> String {
    let (mode, clause_count) = match &inst.matrix {
        Matrix::Cnf(f) => ("cnf", f.clauses().len()),
        Matrix::Dnf(f) => ("dnf", f.terms().len()),
    };
    let mut out = format!("p ecnf {} {clause_count}\nm {mode}\n", inst.num_vars);
    if !inst.free_vars.is_empty() {
        out.push('f');
        for v in &inst.free_vars {
            write!(out, " {v}").unwrap();
        }
        out.push_str(" 0\n");
    }
    for (q, vars) in &inst.blocks {
        out.push(match q {
            Quantifier::Forall => 'a',
            Quantifier::Exists => 'e',
        });
        for v in vars {
            write!(out, " {v}").unwrap();
        }
        out.push_str(" 0\n");
    }
    match &inst.matrix {
        Matrix::Cnf(f) => {
            for c in f.clauses() {
                for l in c.literals() {
                    write!(out, "{} ", l.to_dimacs()).unwrap();
                }
                out.push_str("0\n");
            }
        }
        Matrix::Dnf(f) => {
            for t in f.terms() {
                for l in t.literals() {
                    write!(out, "{} ", l.to_dimacs()).unwrap();
                }
                out.push_str("0\n");
            }
        }
    }
    out
}

pub fn render_gamma(f: &GammaFormula) -> String {
    let mut out = format!("vars {}\n", f.num_vars());
    for (name, rel) in f.language() {
        let tuples: Vec<String> = rel
            .tuples()
            .iter()
            .map(|t| t.iter().map(|&b| if b { '1' } else { '0' }).collect())
            .collect();
        writeln!(out, "rel {name} {} {{{}}}", rel.arity(), tuples.join(",")).unwrap();
    }
    for (name, vars) in f.constraints() {
        let args: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{name}({})", args.join(",")).unwrap();
    }
    out
}

pub fn render_graph(g: &Graph) -> String {
    let mut out = format!("v {}\n", g.num_vertices());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn render_hypergraph(h: &Hypergraph) -> String {
    let mut out = String::new();
    for e in h.edges() {
        let verts: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", verts.join(" ")).unwrap();
    }
    out
}

pub fn render_database(db: &DatabaseInstance, egds: &[Egd]) -> String {
    let mut out = String::from("dom");
    for c in &db.domain {
        write!(out, " {c}").unwrap();
    }
    out.push('\n');
    for a in &db.atoms {
        writeln!(out, "{a}.").unwrap();
    }
    for egd in egds {
        let body: Vec<String> = egd
            .body
            .iter()
            .map(|atom| {
                let args: Vec<String> = atom
                    .args
                    .iter()
                    .map(|t| match t {
                        EgdTerm::Var(v) => v.clone(),
                        EgdTerm::Const(c) => c.clone(),
                    })
                    .collect();
                format!("{}({})", atom.predicate, args.join(","))
            })
            .collect();
        writeln!(out, "egd: {} -> {} = {}.", body.join(", "), egd.lhs, egd.rhs).unwrap();
    }
    out
}

pub fn render_diagnosis(inst: &DiagnosisInstance) -> String {
    let mut out = format!("p mbd {} {}\n", inst.num_vars, inst.components.len());
    for comp in &inst.components {
        out.push_str("comp");
        for c in comp.clauses() {
            for l in c.literals() {
                write!(out, " {}", l.to_dimacs()).unwrap();
            }
            out.push_str(" 0");
        }
        out.push('\n');
    }
    out.push_str("mu");
    for c in inst.mu.clauses() {
        for l in c.literals() {
            write!(out, " {}", l.to_dimacs()).unwrap();
        }
        out.push_str(" 0");
    }
    out.push('\n');
    out
}

pub fn render_abduction(inst: &AbductionInstance) -> String {
    let mut out = format!("p abd {}\n", inst.gamma.num_vars());
    for c in inst.gamma.clauses() {
        out.push_str("gamma");
        for l in c.literals() {
            write!(out, " {}", l.to_dimacs()).unwrap();
        }
        out.push_str(" 0\n");
    }
    out.push_str("hyp");
    for h in &inst.hypotheses {
        write!(out, " {}", h.to_dimacs()).unwrap();
    }
    out.push('\n');
    writeln!(out, "q {}", inst.q).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    #[test]
    fn dimacs_round_trip() {
        let src = "p cnf 3 2\n1 -2 0\n2 3 0\n";
        let f = parse::parse_dimacs(src).unwrap();
        assert_eq!(render_dimacs(&f), src);
    }

    #[test]
    fn ecnf_round_trip() {
        let src = "p ecnf 4 2\nm dnf\nf 1 0\ne 2 3 0\na 4 0\n1 2 0\n-2 4 0\n";
        let inst = parse::parse_ecnf(src).unwrap();
        let rendered = render_ecnf(&inst);
        let again = parse::parse_ecnf(&rendered).unwrap();
        assert_eq!(inst, again);
    }

    #[test]
    fn gamma_round_trip() {
        let src = "vars 4\nrel R 3 {001,010,100}\nR(1,2,3)\nR(2,3,4)\n";
        let f = parse::parse_gamma(src).unwrap();
        let again = parse::parse_gamma(&render_gamma(&f)).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn graph_round_trip() {
        let g = parse::parse_graph("v 4\n1 2\n3 4\n").unwrap();
        let again = parse::parse_graph(&render_graph(&g)).unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn hypergraph_round_trip() {
        let h = parse::parse_hypergraph("1 2 3\n2 4\n").unwrap();
        let again = parse::parse_hypergraph(&render_hypergraph(&h)).unwrap();
        assert_eq!(h, again);
    }

    #[test]
    fn database_round_trip() {
        let src = "dom 0 1\nr(0,0).\nr(0,1).\negd: r(X,Y), r(X,Z) -> Y = Z.\n";
        let (db, egds) = parse::parse_database(src).unwrap();
        let (db2, egds2) = parse::parse_database(&render_database(&db, &egds)).unwrap();
        assert_eq!(db, db2);
        assert_eq!(egds, egds2);
    }

    #[test]
    fn diagnosis_round_trip() {
        let src = "p mbd 2 2\ncomp 1 0\ncomp -1 2 0\nmu -2 0\n";
        let inst = parse::parse_diagnosis(src).unwrap();
        let again = parse::parse_diagnosis(&render_diagnosis(&inst)).unwrap();
        assert_eq!(inst, again);
    }

    #[test]
    fn abduction_round_trip() {
        let src = "p abd 4\ngamma -1 2 0\ngamma -3 4 0\nhyp 1 3\nq 4\n";
        let inst = parse::parse_abduction(src).unwrap();
        let again = parse::parse_abduction(&render_abduction(&inst)).unwrap();
        assert_eq!(inst, again);
    }
}
