//! The printed Cuntz-Krieger families for G(Π_2) and G(Π_3), and the verifier
//! that adjudicates every relation both symbolically (exact integer
//! arithmetic) and numerically (window truncation).
//!
//! Families are constructed exactly as printed. Where the printed formulas
//! break a relation, the verifier reports the failure with a witness instead
//! of repairing the operators; suspected typos are listed in `errata` but
//! never applied silently. The one exception is the Π_3 operator for edge
//! x22→x31: the printed list names S_5 twice and S_10 never, so the second of
//! the two conflicting displays is used for that edge — otherwise the family
//! would not cover the graph at all (see `CKFamily::pi3`).

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ap_operator::{
    cover_naturals, APOperator, CoverWitness, OperatorError, TruncationWindow,
};
use crate::relation_graph::{DirectedMultigraph, GraphError, HamiltonianPath, Vertex};
use crate::truncation::{NumericCheck, TruncatedOp};

#[derive(Debug, Error)]
pub enum CkError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error("no isometry for edge {0}")]
    MissingEdge(String),
    #[error("unknown edge or alias {0}")]
    UnknownAlias(String),
    #[error("h-sequence is defined for n >= 2, got {0}")]
    HSequenceRange(u32),
    #[error("invalid family fixture: {0}")]
    Fixture(String),
}

/// Edge-indexed family of partial isometries on ℓ²(ℕ) together with the
/// per-path alias names the source attaches to them.
#[derive(Clone, Debug)]
pub struct CKFamily {
    name: String,
    graph: DirectedMultigraph,
    isometries: BTreeMap<String, APOperator>,
    alias_to_edge: BTreeMap<String, String>,
    edge_aliases: BTreeMap<String, Vec<String>>,
    vertex_projections: BTreeMap<Vertex, APOperator>,
    distinguished_paths: Vec<(String, HamiltonianPath)>,
    errata: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    PartialIsometry,
    RangeOrthogonality,
    #[serde(rename = "SstarS-equals-Ptarget")]
    SstarSEqualsPtarget,
    VertexSum,
    PathCompleteness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    /// A single index (shared row support, cover gap, cover multiplicity …).
    Index { index: i64 },
    /// A concrete matrix entry where two sides differ.
    Entry { row: i64, col: i64, value: [f64; 2] },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub kind: CheckKind,
    pub symbolic: Verdict,
    pub numeric: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Exact density Σ 1/slope of the summed progressions (path checks only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density: Option<[i64; 2]>,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.symbolic == Verdict::Pass && self.numeric == Verdict::Pass
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: String,
    pub window: usize,
    /// Smallest numeric safe region (rows, cols) any verdict was computed on.
    pub interior: [i64; 2],
    pub errata: Vec<String>,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(CheckRecord::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// Pairs of verdict vectors must agree check-for-check (oracle invariant).
    pub fn oracle_agreement(&self) -> bool {
        self.checks.iter().all(|c| c.symbolic == c.numeric)
    }
}

fn ap(rs: i64, ro: i64, cs: i64, co: i64) -> APOperator {
    APOperator::ap_sum(rs, ro, cs, co).expect("family progression data is valid")
}

impl CKFamily {
    /// The printed Π_2 family: S_e = Σ E_{6t,3t−2}, S_f = Σ E_{6t−4,3t−2},
    /// S_h = Σ E_{6t−3,3t}, S_g = Σ E_{6t−4,3t−1}, S_i = Σ E_{6t−1,3t},
    /// S_j = Σ E_{6t−3,3t−1}.
    pub fn pi2() -> Self {
        let graph = DirectedMultigraph::build(2).expect("n = 2 is valid");
        let table: [(&str, APOperator); 6] = [
            ("e", ap(6, 0, 3, -2)),
            ("f", ap(6, -4, 3, -2)),
            ("h", ap(6, -3, 3, 0)),
            ("g", ap(6, -4, 3, -1)),
            ("i", ap(6, -1, 3, 0)),
            ("j", ap(6, -3, 3, -1)),
        ];
        let isometries: BTreeMap<String, APOperator> =
            table.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        let alias_to_edge: BTreeMap<String, String> =
            isometries.keys().map(|k| (k.clone(), k.clone())).collect();
        let edge_aliases: BTreeMap<String, Vec<String>> =
            isometries.keys().map(|k| (k.clone(), vec![k.clone()])).collect();
        let paths = graph.hamiltonian_paths();
        let distinguished_paths = paths
            .into_iter()
            .enumerate()
            .map(|(i, p)| (format!("P{}", i + 1), p))
            .collect();
        let errata = vec![
            "S_f and S_g share the row progression 6t-4 as printed; their range projections coincide".to_string(),
            "S_h and S_j share the row progression 6t-3 as printed; their range projections coincide".to_string(),
        ];
        Self::assemble("pi2", graph, isometries, alias_to_edge, edge_aliases, distinguished_paths, errata)
    }

    /// The printed Π_3 family, one operator per alias group.
    ///
    /// The printed list gives S_5 twice (Σ E_{24t−6,8t−2} and Σ E_{32t−4,8t−2})
    /// and never names S_10; the second display is used for edge x22→x31 (the
    /// only edge left without an operator, and the only reading whose column
    /// class matches that edge's range vertex).
    pub fn pi3() -> Self {
        let graph = DirectedMultigraph::build(3).expect("n = 3 is valid");
        type Row = (&'static [&'static str], i64, i64, i64, i64, (u32, u32), (u32, u32));
        #[rustfmt::skip]
        let groups: [Row; 36] = [
            (&["e1", "f1"],             32, -31, 8,  0, (1, 1), (1, 2)),
            (&["g1", "h1"],             32, -23, 8, -1, (1, 1), (2, 1)),
            (&["i1"],                   32,  -7, 8, -2, (1, 1), (3, 1)),
            (&["j1"],                   32, -15, 8, -3, (1, 1), (1, 3)),
            (&["g2", "h2", "i4"],       40, -25, 8,  0, (2, 1), (1, 2)),
            (&["e2", "f2", "j4"],       40, -32, 8, -1, (1, 2), (2, 1)),
            (&["g4", "h4", "j2"],       48, -35, 8, -2, (1, 3), (3, 1)),
            (&["e4", "f4", "i2"],       48, -42, 8, -3, (3, 1), (1, 3)),
            (&["j3"],                   48, -10, 8,  0, (3, 1), (1, 2)),
            (&["i3"],                   48, -27, 8, -1, (1, 3), (2, 1)),
            (&["e3", "f3"],             40, -33, 8, -2, (2, 1), (3, 1)),
            (&["g3", "h3"],             40, -24, 8, -3, (1, 2), (1, 3)),
            (&["e5", "f5"],             48, -43, 8, -4, (1, 3), (2, 2)),
            (&["g5", "h5"],             48, -34, 8, -4, (3, 1), (2, 2)),
            (&["i5"],                   40,  -8, 8, -4, (1, 2), (2, 2)),
            (&["j5"],                   40,  -1, 8, -4, (2, 1), (2, 2)),
            (&["e6", "h6", "i6", "j6"], 32, -28, 8, -5, (2, 2), (3, 2)),
            (&["g6", "f6"],             24, -14, 8, -5, (2, 2), (2, 3)),
            (&["e7", "h7", "i7", "j7"], 24, -21, 8, -6, (3, 2), (2, 3)),
            (&["g7", "f7"],             32, -20, 8, -6, (2, 3), (3, 2)),
            (&["e8", "h8", "i8", "j8"], 24, -22, 8, -7, (2, 3), (3, 3)),
            (&["g8", "f8"],             24, -13, 8, -7, (3, 2), (3, 3)),
            (&["1"],                    48,  -2, 8, -7, (3, 1), (3, 3)),
            (&["2"],                    48,  -3, 8, -5, (1, 3), (3, 2)),
            (&["3"],                    24,  -5, 8, -3, (3, 2), (1, 3)),
            (&["4"],                    48, -29, 8, -7, (3, 1), (2, 3)),
            (&["5"],                    24,  -6, 8, -2, (2, 3), (3, 1)),
            (&["6"],                    40, -16, 8, -2, (1, 2), (3, 1)),
            (&["7"],                    48, -19, 8, -6, (1, 3), (2, 3)),
            (&["8"],                    40, -17, 8, -3, (2, 1), (1, 3)),
            (&["9"],                    32, -12, 8, -3, (2, 2), (1, 3)),
            (&["10"],                   32,  -4, 8, -2, (2, 2), (3, 1)),
            (&["11"],                   48, -26, 8, -5, (3, 1), (3, 2)),
            (&["12"],                   40,  -9, 8, -6, (2, 1), (2, 3)),
            (&["13"],                   40, -11, 8, -5, (1, 2), (3, 2)),
            (&["14"],                   48, -11, 8, -7, (1, 3), (3, 3)),
        ];
        let mut isometries = BTreeMap::new();
        let mut alias_to_edge = BTreeMap::new();
        let mut edge_aliases = BTreeMap::new();
        for (aliases, rs, ro, cs, co, src, dst) in groups {
            let edge = graph
                .edge_between(Vertex::new(src.0, src.1), Vertex::new(dst.0, dst.1))
                .expect("alias table matches the built graph")
                .id
                .clone();
            isometries.insert(edge.clone(), ap(rs, ro, cs, co));
            for a in aliases {
                alias_to_edge.insert(a.to_string(), edge.clone());
            }
            edge_aliases.insert(edge, aliases.iter().map(|a| a.to_string()).collect());
        }
        let path_aliases: [(&str, [&str; 8]); 6] = [
            ("H1", ["e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8"]),
            ("H2", ["f1", "f2", "f3", "f4", "f5", "f6", "f7", "f8"]),
            ("H3", ["g1", "g2", "g3", "g4", "g5", "g6", "g7", "g8"]),
            ("H4", ["h1", "h2", "h3", "h4", "h5", "h6", "h7", "h8"]),
            ("H5", ["i1", "i2", "i3", "i4", "i5", "i6", "i7", "i8"]),
            ("H6", ["j1", "j2", "j3", "j4", "j5", "j6", "j7", "j8"]),
        ];
        let distinguished_paths = path_aliases
            .into_iter()
            .map(|(name, aliases)| {
                let edge_ids: Vec<String> =
                    aliases.iter().map(|a| alias_to_edge[*a].clone()).collect();
                let edges: Vec<_> =
                    edge_ids.iter().map(|id| graph.edge(id).expect("edge exists")).collect();
                let mut vertices = vec![edges[0].src];
                vertices.extend(edges.iter().map(|e| e.dst));
                (name.to_string(), HamiltonianPath { edge_ids, vertices })
            })
            .collect();
        let errata = vec![
            "S_5 is printed twice (24t-6 and 32t-4 rows); the 32t-4 display is adopted for the unnamed S_10 on x22->x31".to_string(),
            "S_g6=S_f6 is printed with column 8t-5, but every other isometry into x23 has column 8t-6".to_string(),
            "S_g7=S_f7 is printed with column 8t-6, but every other isometry into x32 has column 8t-5".to_string(),
            "S_4 is printed with column 8t-7, but its range vertex x23 carries column 8t-6".to_string(),
        ];
        Self::assemble("pi3", graph, isometries, alias_to_edge, edge_aliases, distinguished_paths, errata)
    }

    fn assemble(
        name: &str,
        graph: DirectedMultigraph,
        isometries: BTreeMap<String, APOperator>,
        alias_to_edge: BTreeMap<String, String>,
        edge_aliases: BTreeMap<String, Vec<String>>,
        distinguished_paths: Vec<(String, HamiltonianPath)>,
        errata: Vec<String>,
    ) -> Self {
        let mut fam = Self {
            name: name.to_string(),
            graph,
            isometries,
            alias_to_edge,
            edge_aliases,
            vertex_projections: BTreeMap::new(),
            distinguished_paths,
            errata,
        };
        fam.vertex_projections = fam.derive_vertex_projections();
        fam
    }

    /// Derived P_v: at the source, the sum Σ_{s(e)=v} S_e S_e*; elsewhere
    /// S_e*S_e of the first in-edge in edge order.
    fn derive_vertex_projections(&self) -> BTreeMap<Vertex, APOperator> {
        let mut out = BTreeMap::new();
        for &v in self.graph.vertices() {
            let first_in = self.graph.edges().iter().find(|e| e.dst == v);
            let p = match first_in {
                Some(e) => {
                    let s = &self.isometries[&e.id];
                    s.adjoint().mul(s)
                }
                None => self
                    .graph
                    .edges()
                    .iter()
                    .filter(|e| e.src == v)
                    .map(|e| {
                        let s = &self.isometries[&e.id];
                        s.mul(&s.adjoint())
                    })
                    .fold(APOperator::zero(), |acc, p| acc.add(&p)),
            };
            out.insert(v, p);
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn graph(&self) -> &DirectedMultigraph {
        &self.graph
    }

    pub fn errata(&self) -> &[String] {
        &self.errata
    }

    pub fn isometry(&self, edge_id: &str) -> Option<&APOperator> {
        self.isometries.get(edge_id)
    }

    /// Looks an operator up by graph edge id or by any printed alias
    /// (`"e1"`, `"g8"`, `"14"`, …).
    pub fn by_alias(&self, name: &str) -> Result<&APOperator, CkError> {
        if let Some(op) = self.isometries.get(name) {
            return Ok(op);
        }
        let edge = self.alias_to_edge.get(name).ok_or_else(|| CkError::UnknownAlias(name.into()))?;
        Ok(&self.isometries[edge])
    }

    /// All printed aliases of the edge carrying `name` (itself an alias or an
    /// edge id).
    pub fn aliases(&self, name: &str) -> Result<&[String], CkError> {
        let edge = if self.isometries.contains_key(name) {
            name
        } else {
            self.alias_to_edge.get(name).ok_or_else(|| CkError::UnknownAlias(name.into()))?
        };
        Ok(&self.edge_aliases[edge])
    }

    pub fn vertex_projection(&self, v: Vertex) -> Option<&APOperator> {
        self.vertex_projections.get(&v)
    }

    pub fn distinguished_paths(&self) -> &[(String, HamiltonianPath)] {
        &self.distinguished_paths
    }

    /// Display label of an edge: its printed alias chain when one exists.
    pub fn edge_label(&self, edge_id: &str) -> String {
        match self.edge_aliases.get(edge_id) {
            Some(aliases) if !aliases.is_empty() => aliases.join("="),
            _ => edge_id.to_string(),
        }
    }

    fn op(&self, edge_id: &str) -> Result<&APOperator, CkError> {
        self.isometries.get(edge_id).ok_or_else(|| CkError::MissingEdge(edge_id.into()))
    }

    /// Runs every Cuntz-Krieger relation check at the given window.
    ///
    /// Every check is decided twice: exactly on the symbolic operators and
    /// numerically on window truncations restricted to their safe region. The
    /// two verdicts are recorded side by side and never reconciled.
    pub fn verify(&self, window: TruncationWindow, tol: f64) -> Result<VerificationReport, CkError> {
        let mut checks = Vec::new();
        let mut interior = [i64::MAX, i64::MAX];
        let note = |c: &NumericCheck, interior: &mut [i64; 2]| {
            interior[0] = interior[0].min(c.region.0);
            interior[1] = interior[1].min(c.region.1);
        };
        let atoms: BTreeMap<&str, TruncatedOp> = self
            .isometries
            .iter()
            .map(|(id, op)| (id.as_str(), TruncatedOp::atom(op, window)))
            .collect();

        // partial isometry: S S* S = S
        for e in self.graph.edges() {
            let s = self.op(&e.id)?;
            let diff = s.mul(&s.adjoint()).mul(s).sub(s);
            let symbolic = verdict(diff.is_zero());
            let t = &atoms[e.id.as_str()];
            let num = t.mul(&t.adjoint()).mul(t).eq_within(t, tol);
            note(&num, &mut interior);
            checks.push(CheckRecord {
                id: format!("pi:{}", self.edge_label(&e.id)),
                kind: CheckKind::PartialIsometry,
                symbolic,
                numeric: verdict(num.pass),
                witness: entry_witness(diff.first_nonzero_entry()).or(num_witness(&num)),
                density: None,
            });
        }

        // range orthogonality: (S_a S_a*)(S_b S_b*) = 0 for all distinct edges
        let edges = self.graph.edges();
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let (a, b) = (&edges[i], &edges[j]);
                let (sa, sb) = (self.op(&a.id)?, self.op(&b.id)?);
                let prod = sa.mul(&sa.adjoint()).mul(&sb.mul(&sb.adjoint()));
                let symbolic = verdict(prod.is_zero());
                let witness = prod
                    .first_nonzero_entry()
                    .map(|(r, _, _)| Witness::Index { index: r });
                let (ta, tb) = (&atoms[a.id.as_str()], &atoms[b.id.as_str()]);
                let num = ta.mul(&ta.adjoint()).mul(&tb.mul(&tb.adjoint())).is_zero_within(tol);
                note(&num, &mut interior);
                checks.push(CheckRecord {
                    id: format!("ro:{}|{}", self.edge_label(&a.id), self.edge_label(&b.id)),
                    kind: CheckKind::RangeOrthogonality,
                    symbolic,
                    numeric: verdict(num.pass),
                    witness: witness.or(num_witness(&num)),
                    density: None,
                });
            }
        }

        // S*S determined by the range vertex: S_a*S_a = S_b*S_b when r(a) = r(b)
        for &v in self.graph.vertices() {
            let into: Vec<_> = edges.iter().filter(|e| e.dst == v).collect();
            for i in 0..into.len() {
                for j in i + 1..into.len() {
                    let (a, b) = (into[i], into[j]);
                    let (sa, sb) = (self.op(&a.id)?, self.op(&b.id)?);
                    let diff = sa.adjoint().mul(sa).sub(&sb.adjoint().mul(sb));
                    let symbolic = verdict(diff.is_zero());
                    let (ta, tb) = (&atoms[a.id.as_str()], &atoms[b.id.as_str()]);
                    let num = ta.adjoint().mul(ta).eq_within(&tb.adjoint().mul(tb), tol);
                    note(&num, &mut interior);
                    checks.push(CheckRecord {
                        id: format!(
                            "ss:{}:{}|{}",
                            v.label(),
                            self.edge_label(&a.id),
                            self.edge_label(&b.id)
                        ),
                        kind: CheckKind::SstarSEqualsPtarget,
                        symbolic,
                        numeric: verdict(num.pass),
                        witness: entry_witness(diff.first_nonzero_entry()).or(num_witness(&num)),
                        density: None,
                    });
                }
            }
        }

        // vertex sum at non-sinks: Σ_{s(e)=v} S_e S_e* is a diagonal projection
        for &v in self.graph.vertices() {
            let out: Vec<_> = edges.iter().filter(|e| e.src == v).collect();
            if out.is_empty() {
                continue; // sink: no relation imposed
            }
            let mut sum = APOperator::zero();
            let mut tsum = TruncatedOp::zero();
            for e in &out {
                let s = self.op(&e.id)?;
                sum = sum.add(&s.mul(&s.adjoint()));
                let t = &atoms[e.id.as_str()];
                tsum = tsum.add(&t.mul(&t.adjoint()));
            }
            let infinite_rank = sum.terms().iter().any(|t| !t.is_singleton());
            let symbolic_ok = sum.is_diagonal_projection() && infinite_rank;
            let witness = vertex_sum_witness(&sum);
            let num = tsum.is_diag_projection_within(tol);
            note(&num, &mut interior);
            checks.push(CheckRecord {
                id: format!("vs:{}", v.label()),
                kind: CheckKind::VertexSum,
                symbolic: verdict(symbolic_ok),
                numeric: verdict(num.pass),
                witness: witness.or(num_witness(&num)),
                density: None,
            });
        }

        // path completeness for the distinguished Hamiltonian paths
        for (name, path) in &self.distinguished_paths {
            let rec = self.path_completeness_record(name, path, window, tol)?;
            interior[0] = interior[0].min(rec.1 .0);
            interior[1] = interior[1].min(rec.1 .1);
            checks.push(rec.0);
        }

        Ok(VerificationReport {
            family: self.name.clone(),
            window: window.steps,
            interior,
            errata: self.errata.clone(),
            checks,
        })
    }

    /// Σ_{ℓ∈path} S_ℓ*S_ℓ = I, decided by the exact progression-cover test.
    pub fn path_completeness(
        &self,
        path: &HamiltonianPath,
        window: TruncationWindow,
        tol: f64,
    ) -> Result<CheckRecord, CkError> {
        Ok(self.path_completeness_record("path", path, window, tol)?.0)
    }

    fn path_completeness_record(
        &self,
        name: &str,
        path: &HamiltonianPath,
        window: TruncationWindow,
        tol: f64,
    ) -> Result<(CheckRecord, (i64, i64)), CkError> {
        let mut progs = Vec::new();
        let mut bad_entry = None;
        let mut tsum = TruncatedOp::zero();
        for id in &path.edge_ids {
            let s = self.op(id)?;
            let sts = s.adjoint().mul(s);
            match sts.diagonal_progressions() {
                Ok(ps) => progs.extend(ps),
                Err(_) => bad_entry = bad_entry.or(sts.first_nonzero_entry()),
            }
            let t = TruncatedOp::atom(s, window);
            tsum = tsum.add(&t.adjoint().mul(&t));
        }
        let (symbolic, witness, density) = if bad_entry.is_some() {
            (Verdict::Fail, entry_witness(bad_entry), None)
        } else {
            let cover = cover_naturals(&progs)?;
            let witness = cover.witness.as_ref().map(|w| match w {
                CoverWitness::Gap { index } => Witness::Index { index: *index },
                CoverWitness::Multiple { index, .. } => Witness::Index { index: *index },
            });
            (verdict(cover.is_partition), witness, Some([cover.density.0, cover.density.1]))
        };
        let num = tsum.is_identity_within(tol);
        let rec = CheckRecord {
            id: format!("pc:{name}"),
            kind: CheckKind::PathCompleteness,
            symbolic,
            numeric: verdict(num.pass),
            witness: witness.or(num_witness(&num)),
            density,
        };
        Ok((rec, num.region))
    }

    /// Serializes the family as a fixture: name, n, and the edge → operator
    /// map in the operator JSON schema.
    pub fn to_fixture_json(&self) -> String {
        let repr = FamilyRepr {
            name: self.name.clone(),
            n: self.graph.n(),
            isometries: self.isometries.clone(),
        };
        serde_json::to_string_pretty(&repr).expect("family serialization")
    }

    /// Loads a fixture produced by [`Self::to_fixture_json`] (or written by
    /// hand against the operator schema). The graph is rebuilt from n and
    /// every edge must carry an operator.
    pub fn from_fixture_json(text: &str) -> Result<Self, CkError> {
        let repr: FamilyRepr =
            serde_json::from_str(text).map_err(|e| CkError::Fixture(e.to_string()))?;
        let graph = DirectedMultigraph::build(repr.n)?;
        for e in graph.edges() {
            if !repr.isometries.contains_key(&e.id) {
                return Err(CkError::Fixture(format!("missing operator for edge {}", e.id)));
            }
        }
        for id in repr.isometries.keys() {
            if graph.edge(id).is_none() {
                return Err(CkError::Fixture(format!("operator for unknown edge {id}")));
            }
        }
        let aliases: BTreeMap<String, Vec<String>> =
            repr.isometries.keys().map(|k| (k.clone(), vec![k.clone()])).collect();
        let alias_to_edge = repr.isometries.keys().map(|k| (k.clone(), k.clone())).collect();
        Ok(Self::assemble(&repr.name, graph, repr.isometries, alias_to_edge, aliases, Vec::new(), Vec::new()))
    }
}

#[derive(Serialize, Deserialize)]
struct FamilyRepr {
    name: String,
    n: u32,
    isometries: BTreeMap<String, APOperator>,
}

fn verdict(pass: bool) -> Verdict {
    if pass {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn entry_witness(e: Option<(i64, i64, Complex64)>) -> Option<Witness> {
    e.map(|(row, col, v)| Witness::Entry { row, col, value: [v.re, v.im] })
}

fn num_witness(c: &NumericCheck) -> Option<Witness> {
    c.witness.map(|(row, col, dev)| Witness::Entry { row, col, value: [dev, 0.0] })
}

fn vertex_sum_witness(sum: &APOperator) -> Option<Witness> {
    if let Ok(progs) = sum.diagonal_progressions() {
        for (i, p) in progs.iter().enumerate() {
            for q in &progs[i + 1..] {
                if let Some(x) = p.intersection(q) {
                    return Some(Witness::Index { index: x });
                }
            }
        }
        None
    } else {
        // some term is off-diagonal or has a non-unit coefficient
        sum.terms()
            .iter()
            .find(|t| t.row != t.col || t.coeff != Complex64::ONE)
            .map(|t| Witness::Entry {
                row: t.row.first(),
                col: t.col.first(),
                value: [t.coeff.re, t.coeff.im],
            })
    }
}

/// The recurrence h_2 = 3, h_{n+1} = h_n + 2n + 1; closed form n² − 1.
pub fn h_sequence(n: u32) -> Result<u64, CkError> {
    if n < 2 {
        return Err(CkError::HSequenceRange(n));
    }
    let mut h = 3u64;
    for k in 2..n {
        h += 2 * k as u64 + 1;
    }
    Ok(h)
}

/// Parameter ranges of the general-n family statement. The per-edge
/// assignment of ℰ and A is only exemplified in the source, so no concrete
/// family is synthesized for n ≥ 4; this records the documented ranges.
#[derive(Clone, Debug, Serialize)]
pub struct GeneralFamilyTemplate {
    pub n: u32,
    /// Column modulus h_n = n² − 1.
    pub column_modulus: u64,
    /// Edge index bound (n³+n²)(n−1)/2 = |edges of G(Π_n)|.
    pub edge_index_bound: u64,
    /// D ranges over 0..=n²−2.
    pub d_max: u64,
    /// Row moduli ℰ = deg·(n²−1), one per out-degree occurring at a non-sink.
    pub e_values: Vec<u64>,
    /// A ranges over 0..=max_deg·(n²−1).
    pub a_max: u64,
}

pub fn template_for(n: u32) -> Result<GeneralFamilyTemplate, CkError> {
    let column_modulus = h_sequence(n)?;
    let n64 = n as u64;
    let edge_index_bound = (n64.pow(3) + n64.pow(2)) * (n64 - 1) / 2;
    // out-degree of x_ij is i(n−j) + j(n−i)
    let mut degrees: Vec<u64> = Vec::new();
    for i in 1..=n64 {
        for j in 1..=n64 {
            if (i, j) == (n64, n64) {
                continue;
            }
            let d = i * (n64 - j) + j * (n64 - i);
            if !degrees.contains(&d) {
                degrees.push(d);
            }
        }
    }
    degrees.sort_unstable();
    let a_max = degrees.last().copied().unwrap_or(0) * column_modulus;
    Ok(GeneralFamilyTemplate {
        n,
        column_modulus,
        edge_index_bound,
        d_max: column_modulus - 1,
        e_values: degrees.iter().map(|d| d * column_modulus).collect(),
        a_max,
    })
}
