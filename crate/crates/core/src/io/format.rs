//! JSON documents for instances, assignments and sequences.
//!
//! Every document carries a `kind` tag. Output is canonical: keys sorted,
//! tuples in symbol-id order, rationals as `"num/den"` strings.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::{
    csp::{
        Assignment, Constraint, CspInstance, MultiAssignSequence, MultiAssignment, Pattern,
        ReconfigSequence, Sym, TupleSet,
    },
    graph::Graph,
    reductions::{EdgeBlock, SetCoverCorrespondence},
    setcover::{IndexSet, SetCoverInstance, SetCoverSequence},
    Error, Result, Value,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    Csp(CspDoc),
    Graph(GraphDoc),
    Setcover(SetCoverDoc),
    Assignment(AssignmentDoc),
    Sequence(SequenceDoc),
    MultiSequence(MultiSequenceDoc),
    CoverSequence(CoverSequenceDoc),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CspDoc {
    pub arity: usize,
    pub variables: Vec<String>,
    pub alphabet: Vec<String>,
    pub constraints: Vec<ConstraintDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domains: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoints: Option<EndpointsDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintDoc {
    pub scope: Vec<String>,
    pub allowed: Vec<Vec<String>>,
    /// Patterns whose `"*"` positions match any symbol.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub wildcard: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndpointsDoc {
    pub source: BTreeMap<String, String>,
    pub target: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetCoverDoc {
    pub universe: usize,
    pub sets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoints: Option<CoverEndpointsDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correspondence: Option<CorrespondenceDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverEndpointsDoc {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
}

/// Set `i` stands for `(variables[i / |alphabet|], alphabet[i % |alphabet|])`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrespondenceDoc {
    pub variables: Vec<String>,
    pub alphabet: Vec<String>,
    pub blocks: Vec<BlockDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDoc {
    pub offset: usize,
    pub pairs: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssignmentDoc {
    pub values: BTreeMap<String, String>,
}

/// Steps list one symbol per entry of `variables`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceDoc {
    pub variables: Vec<String>,
    pub steps: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiSequenceDoc {
    pub variables: Vec<String>,
    pub steps: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverSequenceDoc {
    pub steps: Vec<Vec<usize>>,
}

pub fn parse_document(text: &str) -> Result<Document> {
    Ok(serde_json::from_str(text)?)
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_canonical_string(doc: &Document) -> Result<String> {
    // `serde_json::Map` is ordered, so the round trip through `Value` sorts keys
    let value = serde_json::to_value(doc)?;
    let mut out = serde_json::to_string_pretty(&value)?;
    out.push('\n');
    Ok(out)
}

/// Parses and re-serializes.
pub fn canonicalize(text: &str) -> Result<String> {
    to_canonical_string(&parse_document(text)?)
}

pub fn rational_string(v: Value) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

pub fn parse_rational(s: &str) -> Result<Value> {
    let bad = || Error::Malformed(format!("`{s}` is not a rational"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: u64 = num.parse().map_err(|_| bad())?;
    let den: u64 = den.parse().map_err(|_| bad())?;
    if den == 0 {
        return Err(bad());
    }
    Ok(Value::new(num, den))
}

fn sym_name(inst: &CspInstance, s: Sym) -> String {
    inst.alphabet()[s as usize].clone()
}

fn assignment_map(inst: &CspInstance, asg: &Assignment) -> BTreeMap<String, String> {
    inst.describe(asg).into_iter().collect()
}

fn assignment_from_map(inst: &CspInstance, map: &BTreeMap<String, String>) -> Result<Assignment> {
    let mut values = vec![None; inst.num_vars()];
    for (var, sym) in map {
        values[inst.var_id(var)?] = Some(inst.sym_id(sym)?);
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(v, s)| {
            s.ok_or_else(|| Error::Malformed(format!("no value for `{}`", inst.variables()[v])))
        })
        .collect::<Result<Vec<_>>>()?;
    let asg = Assignment::new(values);
    inst.check_assignment(&asg)?;
    Ok(asg)
}

pub fn csp_to_doc(inst: &CspInstance, endpoints: Option<(&Assignment, &Assignment)>) -> CspDoc {
    let constraints = inst
        .constraints()
        .iter()
        .map(|c| ConstraintDoc {
            scope: c
                .scope
                .iter()
                .map(|&v| inst.variables()[v].clone())
                .collect(),
            allowed: c
                .allowed
                .iter()
                .map(|row| row.iter().map(|&s| sym_name(inst, s)).collect())
                .collect(),
            wildcard: c
                .wildcard
                .iter()
                .map(|p| {
                    p.iter()
                        .map(|slot| slot.map_or_else(|| "*".to_string(), |s| sym_name(inst, s)))
                        .collect()
                })
                .collect(),
        })
        .collect();
    let domains = inst.has_restricted_domains().then(|| {
        inst.variables()
            .iter()
            .enumerate()
            .map(|(v, name)| {
                let syms = inst.domain(v).iter().map(|&s| sym_name(inst, s)).collect();
                (name.clone(), syms)
            })
            .collect()
    });
    CspDoc {
        arity: inst.arity(),
        variables: inst.variables().to_vec(),
        alphabet: inst.alphabet().to_vec(),
        constraints,
        domains,
        endpoints: endpoints.map(|(s, t)| EndpointsDoc {
            source: assignment_map(inst, s),
            target: assignment_map(inst, t),
        }),
    }
}

pub type Endpoints = Option<(Assignment, Assignment)>;

pub fn csp_from_doc(doc: &CspDoc) -> Result<(CspInstance, Endpoints)> {
    let vars: BTreeMap<&str, usize> = doc
        .variables
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let syms: BTreeMap<&str, Sym> = doc
        .alphabet
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i as Sym))
        .collect();
    let var = |name: &str| {
        vars.get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    };
    let sym = |name: &str| {
        syms.get(name)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    };
    let mut constraints = Vec::with_capacity(doc.constraints.len());
    for c in &doc.constraints {
        let scope = c.scope.iter().map(|v| var(v)).collect::<Result<Vec<_>>>()?;
        let mut rows = Vec::with_capacity(c.allowed.len());
        for row in &c.allowed {
            if row.len() != doc.arity {
                return Err(Error::Malformed("allowed tuple of wrong arity".into()));
            }
            rows.push(row.iter().map(|s| sym(s)).collect::<Result<Vec<_>>>()?);
        }
        let wildcard = c
            .wildcard
            .iter()
            .map(|p| {
                p.iter()
                    .map(|s| if s == "*" { Ok(None) } else { sym(s).map(Some) })
                    .collect::<Result<Pattern>>()
            })
            .collect::<Result<Vec<_>>>()?;
        constraints
            .push(Constraint::new(scope, TupleSet::new(doc.arity, rows)).with_wildcard(wildcard));
    }
    let domains = match &doc.domains {
        None => None,
        Some(map) => {
            let mut d = vec![None; doc.variables.len()];
            for (name, list) in map {
                d[var(name)?] = Some(list.iter().map(|s| sym(s)).collect::<Result<Vec<_>>>()?);
            }
            Some(
                d.into_iter()
                    .enumerate()
                    .map(|(v, x)| {
                        x.ok_or_else(|| {
                            Error::Malformed(format!("no domain for `{}`", doc.variables[v]))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
            )
        }
    };
    let inst = CspInstance::new(
        doc.variables.clone(),
        doc.alphabet.clone(),
        doc.arity,
        constraints,
        domains,
    )?;
    let endpoints = match &doc.endpoints {
        None => None,
        Some(e) => Some((
            assignment_from_map(&inst, &e.source)?,
            assignment_from_map(&inst, &e.target)?,
        )),
    };
    Ok((inst, endpoints))
}

pub fn graph_to_doc(g: &Graph) -> GraphDoc {
    GraphDoc {
        vertices: g.num_vertices(),
        edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
    }
}

pub fn graph_from_doc(doc: &GraphDoc) -> Result<Graph> {
    Graph::new(
        doc.vertices,
        doc.edges.iter().map(|e| (e[0], e[1])).collect(),
    )
}

pub fn setcover_to_doc(
    inst: &SetCoverInstance,
    endpoints: Option<(&IndexSet, &IndexSet)>,
    corr: Option<(&SetCoverCorrespondence, &CspInstance)>,
) -> SetCoverDoc {
    SetCoverDoc {
        universe: inst.universe(),
        sets: inst.sets().to_vec(),
        endpoints: endpoints.map(|(s, t)| CoverEndpointsDoc {
            source: s.iter().copied().collect(),
            target: t.iter().copied().collect(),
        }),
        correspondence: corr.map(|(c, csp)| CorrespondenceDoc {
            variables: csp.variables().to_vec(),
            alphabet: csp.alphabet().to_vec(),
            blocks: c
                .blocks
                .iter()
                .map(|b| BlockDoc {
                    offset: b.offset,
                    pairs: b
                        .pairs
                        .iter()
                        .map(|&(a, x)| [sym_name(csp, a), sym_name(csp, x)])
                        .collect(),
                })
                .collect(),
        }),
    }
}

pub type CoverEndpoints = Option<(IndexSet, IndexSet)>;

pub fn setcover_from_doc(
    doc: &SetCoverDoc,
) -> Result<(
    SetCoverInstance,
    CoverEndpoints,
    Option<SetCoverCorrespondence>,
)> {
    let inst = SetCoverInstance::new(doc.universe, doc.sets.clone())?;
    let endpoints = doc.endpoints.as_ref().map(|e| {
        (
            e.source.iter().copied().collect(),
            e.target.iter().copied().collect(),
        )
    });
    let corr = match &doc.correspondence {
        None => None,
        Some(c) => {
            let sym = |name: &str| {
                c.alphabet
                    .iter()
                    .position(|s| s == name)
                    .map(|i| i as Sym)
                    .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
            };
            let blocks = c
                .blocks
                .iter()
                .map(|b| {
                    let pairs = b
                        .pairs
                        .iter()
                        .map(|[a, x]| Ok((sym(a)?, sym(x)?)))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(EdgeBlock {
                        offset: b.offset,
                        pairs,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let corr = SetCoverCorrespondence {
                num_vars: c.variables.len(),
                alphabet_size: c.alphabet.len(),
                blocks,
            };
            if corr.num_sets() != inst.num_sets() {
                return Err(Error::Malformed(
                    "correspondence does not match the set count".into(),
                ));
            }
            Some(corr)
        }
    };
    Ok((inst, endpoints, corr))
}

pub fn assignment_to_doc(inst: &CspInstance, asg: &Assignment) -> AssignmentDoc {
    AssignmentDoc {
        values: assignment_map(inst, asg),
    }
}

pub fn assignment_from_doc(inst: &CspInstance, doc: &AssignmentDoc) -> Result<Assignment> {
    assignment_from_map(inst, &doc.values)
}

/// Column permutation from the document's variable order to the instance's.
fn column_order(inst: &CspInstance, variables: &[String]) -> Result<Vec<usize>> {
    if variables.len() != inst.num_vars() {
        return Err(Error::DomainMismatch {
            expected: inst.num_vars(),
            found: variables.len(),
        });
    }
    let cols = variables
        .iter()
        .map(|v| inst.var_id(v))
        .collect::<Result<Vec<_>>>()?;
    if cols.iter().collect::<BTreeSet<_>>().len() != cols.len() {
        return Err(Error::Malformed(
            "repeated variable in sequence header".into(),
        ));
    }
    Ok(cols)
}

pub fn sequence_to_doc(inst: &CspInstance, steps: &[Assignment]) -> SequenceDoc {
    SequenceDoc {
        variables: inst.variables().to_vec(),
        steps: steps
            .iter()
            .map(|a| a.values().iter().map(|&s| sym_name(inst, s)).collect())
            .collect(),
    }
}

/// Raw steps; callers decide whether to build a validated [`ReconfigSequence`].
pub fn steps_from_doc(inst: &CspInstance, doc: &SequenceDoc) -> Result<Vec<Assignment>> {
    let cols = column_order(inst, &doc.variables)?;
    doc.steps
        .iter()
        .map(|row| {
            if row.len() != cols.len() {
                return Err(Error::Malformed("sequence row of wrong length".into()));
            }
            let mut values = vec![0; cols.len()];
            for (&c, s) in cols.iter().zip(row) {
                values[c] = inst.sym_id(s)?;
            }
            let asg = Assignment::new(values);
            inst.check_assignment(&asg)?;
            Ok(asg)
        })
        .collect()
}

pub fn sequence_from_doc(inst: &CspInstance, doc: &SequenceDoc) -> Result<ReconfigSequence> {
    ReconfigSequence::new(steps_from_doc(inst, doc)?)
}

pub fn multi_sequence_to_doc(inst: &CspInstance, seq: &MultiAssignSequence) -> MultiSequenceDoc {
    MultiSequenceDoc {
        variables: inst.variables().to_vec(),
        steps: seq
            .steps()
            .iter()
            .map(|m| {
                m.0.iter()
                    .map(|labels| labels.iter().map(|&s| sym_name(inst, s)).collect())
                    .collect()
            })
            .collect(),
    }
}

pub fn multi_sequence_from_doc(
    inst: &CspInstance,
    doc: &MultiSequenceDoc,
) -> Result<MultiAssignSequence> {
    let cols = column_order(inst, &doc.variables)?;
    let steps = doc
        .steps
        .iter()
        .map(|row| {
            if row.len() != cols.len() {
                return Err(Error::Malformed("sequence row of wrong length".into()));
            }
            let mut multi = MultiAssignment(vec![BTreeSet::new(); cols.len()]);
            for (&c, labels) in cols.iter().zip(row) {
                for s in labels {
                    multi.0[c].insert(inst.sym_id(s)?);
                }
            }
            Ok(multi)
        })
        .collect::<Result<Vec<_>>>()?;
    MultiAssignSequence::new(steps)
}

pub fn cover_sequence_to_doc(seq: &SetCoverSequence) -> CoverSequenceDoc {
    CoverSequenceDoc {
        steps: seq
            .steps()
            .iter()
            .map(|t| t.iter().copied().collect())
            .collect(),
    }
}

pub fn cover_sequence_from_doc(doc: &CoverSequenceDoc) -> Result<SetCoverSequence> {
    SetCoverSequence::new(
        doc.steps
            .iter()
            .map(|t| t.iter().copied().collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csp::binary_instance;

    #[test]
    fn csp_round_trip_with_wildcards_and_domains() {
        let variables = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let alphabet = vec!["x".to_string(), "y".to_string(), "z".to_string()];
        let c = Constraint::new(vec![0, 1, 2], TupleSet::new(3, vec![vec![0, 1, 2]]))
            .with_wildcard(vec![vec![Some(1), None, None]]);
        let inst = CspInstance::new(
            variables,
            alphabet,
            3,
            vec![c],
            Some(vec![vec![0, 1], vec![0, 1, 2], vec![2]]),
        )
        .unwrap();
        let s = Assignment::new(vec![0, 1, 2]);
        let t = Assignment::new(vec![1, 1, 2]);
        let doc = Document::Csp(csp_to_doc(&inst, Some((&s, &t))));
        let text = to_canonical_string(&doc).unwrap();
        assert!(text.contains("\"*\""));
        let Document::Csp(back) = parse_document(&text).unwrap() else {
            panic!("wrong kind");
        };
        let (inst2, ends) = csp_from_doc(&back).unwrap();
        assert_eq!(inst2, inst);
        assert_eq!(ends, Some((s, t)));
        assert_eq!(canonicalize(&text).unwrap(), text);
    }

    #[test]
    fn keys_are_sorted() {
        let g = Graph::new(3, vec![(0, 1)]).unwrap();
        let text = to_canonical_string(&Document::Graph(graph_to_doc(&g))).unwrap();
        let edges = text.find("\"edges\"").unwrap();
        let kind = text.find("\"kind\"").unwrap();
        let vertices = text.find("\"vertices\"").unwrap();
        assert!(edges < kind && kind < vertices);
    }

    #[test]
    fn sequence_columns_may_be_permuted() {
        let inst = binary_instance(2, 2, &[(0, 1)], |_, _, _| true).unwrap();
        let doc = SequenceDoc {
            variables: vec!["x1".into(), "x0".into()],
            steps: vec![vec!["1".into(), "0".into()], vec!["1".into(), "1".into()]],
        };
        let seq = sequence_from_doc(&inst, &doc).unwrap();
        assert_eq!(seq.source(), &Assignment::new(vec![0, 1]));
        assert_eq!(seq.target(), &Assignment::new(vec![1, 1]));
    }

    #[test]
    fn rationals() {
        assert_eq!(rational_string(Value::new(4, 6)), "2/3");
        assert_eq!(parse_rational("2/3").unwrap(), Value::new(2, 3));
        assert_eq!(parse_rational("1").unwrap(), Value::from_integer(1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(parse_document(r#"{"kind":"graph","vertices":2,"edges":[],"extra":1}"#).is_err());
        assert!(parse_document(r#"{"kind":"nope"}"#).is_err());
    }
}
