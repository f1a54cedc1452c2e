//! Quivers and their representation type.
//!
//! A connected quiver is of finite type iff its underlying graph is a simply
//! laced Dynkin diagram and tame iff it is an affine diagram (`Ã₀` is a loop,
//! `Ã₁` a double edge); anything else is wild. Recognition goes through an
//! explicit table of degree patterns and arm lengths.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    /// `(source, target) -> multiplicity`
    arrows: BTreeMap<(usize, usize), usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub source: String,
    pub target: String,
    pub mult: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowJson>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>) -> Self {
        Quiver {
            vertices,
            arrows: BTreeMap::new(),
        }
    }

    /// Vertices `0..k` labeled by their index.
    pub fn with_vertices(k: usize) -> Self {
        Quiver::new((0..k).map(|i| i.to_string()).collect())
    }

    pub fn from_arrows(k: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        let mut q = Quiver::with_vertices(k);
        for &(s, t) in arrows {
            q.add_arrow(s, t, 1)?;
        }
        Ok(q)
    }

    /// Path `0 → 1 → … → k−1`.
    pub fn path(k: usize) -> Self {
        let arrows: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        Quiver::from_arrows(k, &arrows).expect("valid path")
    }

    /// Star with `d` arrows out of vertex 0.
    pub fn star(d: usize) -> Self {
        let arrows: Vec<_> = (1..=d).map(|i| (0, i)).collect();
        Quiver::from_arrows(d + 1, &arrows).expect("valid star")
    }

    pub fn add_arrow(&mut self, source: usize, target: usize, mult: usize) -> Result<()> {
        let k = self.vertices.len();
        if source >= k || target >= k {
            return Err(Error::OutOfRange(format!(
                "arrow {source} → {target} in a quiver with {k} vertices"
            )));
        }
        if mult > 0 {
            *self.arrows.entry((source, target)).or_insert(0) += mult;
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.arrows.iter().map(|(&(s, t), &m)| (s, t, m))
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.values().sum()
    }

    pub fn has_loop(&self) -> bool {
        self.arrows.keys().any(|(s, t)| s == t)
    }

    /// Whether some arrow ends where another begins (a loop counts).
    pub fn has_path_of_length_two(&self) -> bool {
        let targets: BTreeSet<usize> = self.arrows.keys().map(|&(_, t)| t).collect();
        self.arrows.keys().any(|(s, _)| targets.contains(s))
    }

    /// All arrows reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|(&(s, t), &m)| ((t, s), m))
                .collect(),
        }
    }

    /// Vertices renamed by `perm[old] = new`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Quiver> {
        let k = self.vertices.len();
        let mut seen = vec![false; k];
        if perm.len() != k
            || perm
                .iter()
                .any(|&p| p >= k || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::Invalid("not a permutation of the vertices".into()));
        }
        let mut vertices = vec![String::new(); k];
        for (old, &new) in perm.iter().enumerate() {
            vertices[new] = self.vertices[old].clone();
        }
        Ok(Quiver {
            vertices,
            arrows: self
                .arrows
                .iter()
                .map(|(&(s, t), &m)| ((perm[s], perm[t]), m))
                .collect(),
        })
    }

    /// Full subquiver on `keep` (in that order).
    pub fn induced(&self, keep: &[usize]) -> Quiver {
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        Quiver {
            vertices: keep.iter().map(|&v| self.vertices[v].clone()).collect(),
            arrows: self
                .arrows
                .iter()
                .filter_map(|(&(s, t), &m)| Some(((*pos.get(&s)?, *pos.get(&t)?), m)))
                .collect(),
        }
    }

    fn sub_with_arrows(
        &self,
        keep: &[usize],
        arrows: impl Iterator<Item = ((usize, usize), usize)>,
    ) -> Quiver {
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        Quiver {
            vertices: keep.iter().map(|&v| self.vertices[v].clone()).collect(),
            arrows: arrows.map(|((s, t), m)| ((pos[&s], pos[&t]), m)).collect(),
        }
    }

    pub fn to_json(&self) -> QuiverJson {
        QuiverJson {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows()
                .map(|(s, t, m)| ArrowJson {
                    source: self.vertices[s].clone(),
                    target: self.vertices[t].clone(),
                    mult: m,
                })
                .collect(),
        }
    }

    pub fn from_json(j: &QuiverJson) -> Result<Quiver> {
        let index: BTreeMap<&str, usize> = j
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        if index.len() != j.vertices.len() {
            return Err(Error::Invalid("duplicate vertex label".into()));
        }
        let mut q = Quiver::new(j.vertices.clone());
        for a in &j.arrows {
            let find = |label: &str| {
                index.get(label).copied().ok_or_else(|| {
                    Error::Invalid(format!("arrow endpoint {label:?} is not a vertex"))
                })
            };
            q.add_arrow(find(&a.source)?, find(&a.target)?, a.mult)?;
        }
        Ok(q)
    }

    /// Graphviz digraph; multiplicities become edge labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph quiver {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  {};", dot_id(v));
        }
        for (s, t, m) in self.arrows() {
            let _ = writeln!(
                out,
                "  {} -> {} [label=\"{m}\"];",
                dot_id(&self.vertices[s]),
                dot_id(&self.vertices[t])
            );
        }
        out.push_str("}\n");
        out
    }

    /// Reads the subset of DOT written by [`Quiver::to_dot`]: node and edge
    /// statements one per line, optional `label` giving the multiplicity.
    pub fn from_dot(src: &str) -> Result<Quiver> {
        let body = src
            .split_once('{')
            .and_then(|(head, rest)| head.trim_start().starts_with("digraph").then_some(rest))
            .and_then(|rest| rest.rsplit_once('}'))
            .map(|(body, _)| body)
            .ok_or_else(|| Error::Parse("expected `digraph … { … }`".into()))?;
        let mut q = Quiver::new(Vec::new());
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        let mut vertex = |q: &mut Quiver, name: String| -> usize {
            *index.entry(name.clone()).or_insert_with(|| {
                q.vertices.push(name);
                q.vertices.len() - 1
            })
        };
        for stmt in body
            .split([';', '\n'])
            .map(str::trim)
            .filter(|s| !s.is_empty())
        {
            let (main, attrs) = match stmt.split_once('[') {
                Some((m, a)) => (m.trim(), Some(a.trim_end_matches(']'))),
                None => (stmt, None),
            };
            match main.split_once("->") {
                Some((s, t)) => {
                    let s = vertex(&mut q, parse_dot_id(s)?);
                    let t = vertex(&mut q, parse_dot_id(t)?);
                    let mult = match attrs.and_then(|a| a.split_once("label=")) {
                        Some((_, v)) => {
                            let v = v.trim().trim_matches('"');
                            v.parse()
                                .map_err(|_| Error::Parse(format!("bad multiplicity {v:?}")))?
                        }
                        None => 1,
                    };
                    q.add_arrow(s, t, mult)?;
                }
                None => {
                    vertex(&mut q, parse_dot_id(main)?);
                }
            }
        }
        Ok(q)
    }
}

fn dot_id(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

fn parse_dot_id(s: &str) -> Result<String> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('"').and_then(|r| r.strip_suffix('"')) {
        Ok(inner.replace("\\\"", "\"").replace("\\\\", "\\"))
    } else if !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_') {
        Ok(s.to_string())
    } else {
        Err(Error::Parse(format!("bad DOT identifier {s:?}")))
    }
}

/// Undirected multigraph; edges keyed by `(u, v)` with `u ≤ v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub vertex_count: usize,
    pub edges: BTreeMap<(usize, usize), usize>,
}

impl Graph {
    pub fn edge_count(&self) -> usize {
        self.edges.values().sum()
    }

    /// A loop contributes 2.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|(&(a, b), &m)| {
                if a == v && b == v {
                    2 * m
                } else if a == v || b == v {
                    m
                } else {
                    0
                }
            })
            .sum()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .keys()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertex_count];
        let mut out = Vec::new();
        for start in 0..self.vertex_count {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                for w in self.neighbors(comp[i]) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn induced(&self, keep: &[usize]) -> Graph {
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        Graph {
            vertex_count: keep.len(),
            edges: self
                .edges
                .iter()
                .filter_map(|(&(a, b), &m)| {
                    let (x, y) = (*pos.get(&a)?, *pos.get(&b)?);
                    Some(((x.min(y), x.max(y)), m))
                })
                .collect(),
        }
    }
}

pub fn underlying_graph(q: &Quiver) -> Graph {
    let mut edges = BTreeMap::new();
    for (s, t, m) in q.arrows() {
        *edges.entry((s.min(t), s.max(t))).or_insert(0) += m;
    }
    Graph {
        vertex_count: q.vertex_count(),
        edges,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeKind {
    Finite,
    Tame,
    Wild,
}

impl fmt::Display for TypeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeKind::Finite => "Finite",
            TypeKind::Tame => "Tame",
            TypeKind::Wild => "Wild",
        })
    }
}

/// Recognized diagram of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Diagram {
    Dynkin(String),
    Affine(String),
    /// Neither; the string says which test ruled it out.
    Other(String),
}

impl Diagram {
    pub fn kind(&self) -> TypeKind {
        match self {
            Diagram::Dynkin(_) => TypeKind::Finite,
            Diagram::Affine(_) => TypeKind::Tame,
            Diagram::Other(_) => TypeKind::Wild,
        }
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            Diagram::Dynkin(s) | Diagram::Affine(s) => Some(s),
            Diagram::Other(_) => None,
        }
    }
}

/// Recognizes a connected undirected multigraph.
pub fn recognize(g: &Graph) -> Diagram {
    let v = g.vertex_count;
    let e = g.edge_count();
    if v == 0 {
        return Diagram::Other("empty graph".into());
    }
    let loops: usize = g
        .edges
        .iter()
        .filter(|((a, b), _)| a == b)
        .map(|(_, m)| m)
        .sum();
    if loops > 0 {
        return if v == 1 && e == 1 {
            Diagram::Affine("Ã0".into())
        } else {
            Diagram::Other("loop together with further edges".into())
        };
    }
    if let Some(&m) = g.edges.values().max() {
        if m >= 2 {
            return if v == 2 && m == 2 && e == 2 {
                Diagram::Affine("Ã1".into())
            } else {
                Diagram::Other(format!("edge of multiplicity {m}"))
            };
        }
    }
    if e == v {
        return if (0..v).all(|x| g.degree(x) == 2) {
            Diagram::Affine(format!("Ã{}", v - 1))
        } else {
            Diagram::Other("cycle with an extra branch".into())
        };
    }
    if e > v || e + 1 != v {
        return Diagram::Other(format!("{e} edges on {v} vertices"));
    }
    // a tree
    let degrees: Vec<usize> = (0..v).map(|x| g.degree(x)).collect();
    let max_degree = degrees.iter().copied().max().unwrap_or(0);
    if max_degree >= 5 {
        return Diagram::Other(format!("vertex of degree {max_degree}"));
    }
    let branch: Vec<usize> = (0..v).filter(|&x| degrees[x] >= 3).collect();
    match branch.as_slice() {
        [] => Diagram::Dynkin(format!("A{v}")),
        [c] if degrees[*c] == 4 => {
            if v == 5 {
                Diagram::Affine("D̃4".into())
            } else {
                Diagram::Other("degree-4 vertex with a long arm".into())
            }
        }
        [c] => {
            let mut arms: Vec<usize> = g
                .neighbors(*c)
                .into_iter()
                .map(|w| arm_length(g, *c, w))
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, r] => Diagram::Dynkin(format!("D{}", r + 3)),
                [1, 2, 2] => Diagram::Dynkin("E6".into()),
                [1, 2, 3] => Diagram::Dynkin("E7".into()),
                [1, 2, 4] => Diagram::Dynkin("E8".into()),
                [2, 2, 2] => Diagram::Affine("Ẽ6".into()),
                [1, 3, 3] => Diagram::Affine("Ẽ7".into()),
                [1, 2, 5] => Diagram::Affine("Ẽ8".into()),
                other => Diagram::Other(format!("branch arms {other:?}")),
            }
        }
        [a, b] if degrees[*a] == 3 && degrees[*b] == 3 => {
            let leaves = |c: usize| {
                g.neighbors(c)
                    .into_iter()
                    .filter(|&w| degrees[w] == 1)
                    .count()
            };
            if leaves(*a) == 2 && leaves(*b) == 2 {
                Diagram::Affine(format!("D̃{}", v - 1))
            } else {
                Diagram::Other("two branch vertices with long arms".into())
            }
        }
        _ => Diagram::Other(format!("{} branch vertices", branch.len())),
    }
}

/// Number of vertices on the arm starting at `first` away from `center`.
fn arm_length(g: &Graph, center: usize, first: usize) -> usize {
    let (mut prev, mut cur, mut len) = (center, first, 1);
    loop {
        let next: Vec<usize> = g
            .neighbors(cur)
            .into_iter()
            .filter(|&w| w != prev)
            .collect();
        match next.as_slice() {
            [w] => {
                prev = cur;
                cur = *w;
                len += 1;
            }
            _ => return len,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentVerdict {
    pub vertices: Vec<usize>,
    pub diagram: Diagram,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeVerdict {
    pub kind: TypeKind,
    /// One entry per connected component of the underlying graph.
    pub components: Vec<ComponentVerdict>,
}

impl TypeVerdict {
    /// The component responsible for a Wild verdict.
    pub fn witness(&self) -> Option<&ComponentVerdict> {
        self.components
            .iter()
            .find(|c| c.diagram.kind() == TypeKind::Wild)
    }

    /// Re-derives every component verdict from `q` and the resulting kind.
    pub fn recheck(&self, q: &Quiver) -> bool {
        let g = underlying_graph(q);
        let mut covered: Vec<usize> = self
            .components
            .iter()
            .flat_map(|c| c.vertices.iter().copied())
            .collect();
        covered.sort_unstable();
        covered == (0..q.vertex_count()).collect::<Vec<_>>()
            && self.components.iter().all(|c| {
                let sub = g.induced(&c.vertices);
                sub.components().len() == 1
                    && recognize(&sub).kind() == c.diagram.kind()
                    && recognize(&sub).name() == c.diagram.name()
            })
            && self.kind == combine(self.components.iter().map(|c| c.diagram.kind()))
    }
}

fn combine(kinds: impl Iterator<Item = TypeKind>) -> TypeKind {
    kinds.max().unwrap_or(TypeKind::Finite)
}

pub fn classify(q: &Quiver) -> TypeVerdict {
    let g = underlying_graph(q);
    let components: Vec<ComponentVerdict> = g
        .components()
        .into_iter()
        .map(|vertices| {
            let diagram = recognize(&g.induced(&vertices));
            ComponentVerdict { vertices, diagram }
        })
        .collect();
    TypeVerdict {
        kind: combine(components.iter().map(|c| c.diagram.kind())),
        components,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WildnessCertificate {
    /// Vertices of `q` spanning the witness, and its arrows.
    pub vertices: Vec<usize>,
    #[serde(skip)]
    pub subquiver: Quiver,
    pub criteria: Vec<String>,
}

impl WildnessCertificate {
    /// Confirms the stated criteria on the stored subquiver.
    pub fn recheck(&self) -> bool {
        let g = underlying_graph(&self.subquiver);
        !self.subquiver.has_loop()
            && !self.subquiver.has_path_of_length_two()
            && g.components().len() == 1
            && recognize(&g).kind() == TypeKind::Wild
    }
}

/// Searches the whole quiver, then the out-star and in-star at every vertex,
/// for a connected loop-free subquiver without paths of length 2 whose
/// underlying graph is neither Dynkin nor affine.
pub fn wildness_certificate(q: &Quiver) -> Option<WildnessCertificate> {
    let mut candidates: Vec<(Vec<usize>, Quiver)> =
        vec![((0..q.vertex_count()).collect(), q.clone())];
    for c in 0..q.vertex_count() {
        for outgoing in [true, false] {
            let arrows: Vec<((usize, usize), usize)> = q
                .arrows
                .iter()
                .filter(|(&(s, t), _)| s != t && if outgoing { s == c } else { t == c })
                .map(|(&k, &m)| (k, m))
                .collect();
            if arrows.is_empty() {
                continue;
            }
            let mut keep: Vec<usize> = arrows
                .iter()
                .map(|&((s, t), _)| if outgoing { t } else { s })
                .collect();
            keep.insert(0, c);
            let sub = q.sub_with_arrows(&keep, arrows.into_iter());
            candidates.push((keep, sub));
        }
    }
    candidates.into_iter().find_map(|(vertices, sub)| {
        let g = underlying_graph(&sub);
        if sub.has_loop() || sub.has_path_of_length_two() || g.components().len() != 1 {
            return None;
        }
        match recognize(&g) {
            Diagram::Other(reason) => Some(WildnessCertificate {
                vertices,
                subquiver: sub,
                criteria: vec![
                    "connected".into(),
                    "no loops".into(),
                    "no path of length 2".into(),
                    format!("underlying graph neither Dynkin nor affine: {reason}"),
                ],
            }),
            _ => None,
        }
    })
}

/// `q(d) = Σ d_v² − Σ_{u→w} d_u d_w`, arrows counted with multiplicity.
pub fn tits_form(q: &Quiver, d: &[i64]) -> Result<i64> {
    if d.len() != q.vertex_count() {
        return Err(Error::Dimension(format!(
            "dimension vector has {} entries for {} vertices",
            d.len(),
            q.vertex_count()
        )));
    }
    if d.iter().any(|&x| x < 0) {
        return Err(Error::Invalid(
            "dimension vector has a negative entry".into(),
        ));
    }
    let squares: i64 = d.iter().map(|x| x * x).sum();
    let cross: i64 = q.arrows().map(|(s, t, m)| m as i64 * d[s] * d[t]).sum();
    Ok(squares - cross)
}

/// Counts of positive, zero and negative squares of the Tits form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
}

impl Inertia {
    /// Sign pattern expected of a connected quiver of the given type.
    pub fn matches(&self, kind: TypeKind) -> bool {
        match kind {
            TypeKind::Finite => self.zero == 0 && self.negative == 0,
            TypeKind::Tame => self.zero > 0 && self.negative == 0,
            TypeKind::Wild => self.negative > 0,
        }
    }
}

/// Inertia of the symmetrized Tits form, by exact congruence diagonalization.
pub fn tits_inertia(q: &Quiver) -> Inertia {
    let k = q.vertex_count();
    let mut m = vec![vec![Rational::zero(); k]; k];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::integer(2);
    }
    for (s, t, mult) in q.arrows() {
        let c = Rational::integer(mult as i64);
        m[s][t] = &m[s][t] - &c;
        m[t][s] = &m[t][s] - &c;
    }
    let mut inertia = Inertia {
        positive: 0,
        zero: 0,
        negative: 0,
    };
    let mut live: Vec<usize> = (0..k).collect();
    while let Some(&first) = live.first() {
        let pivot = live.iter().copied().find(|&i| !m[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => match live
                .iter()
                .copied()
                .find(|&j| j != first && !m[first][j].is_zero())
            {
                // x_first += x_j makes the diagonal 2·m[first][j] nonzero
                Some(j) => {
                    for r in 0..k {
                        let v = m[r][j].clone();
                        m[r][first] = &m[r][first] + &v;
                    }
                    for c in 0..k {
                        let v = m[j][c].clone();
                        m[first][c] = &m[first][c] + &v;
                    }
                    first
                }
                None => {
                    inertia.zero += 1;
                    live.retain(|&i| i != first);
                    continue;
                }
            },
        };
        let d = m[p][p].clone();
        if d.is_positive() {
            inertia.positive += 1;
        } else {
            inertia.negative += 1;
        }
        live.retain(|&i| i != p);
        for &i in &live {
            let f = &m[i][p] / &d;
            if f.is_zero() {
                continue;
            }
            for &j in &live {
                let v = &f * &m[p][j];
                m[i][j] = &m[i][j] - &v;
            }
        }
        for &i in &live {
            m[i][p] = Rational::zero();
            m[p][i] = Rational::zero();
        }
    }
    inertia
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn graph_quiver(k: usize, edges: &[(usize, usize)]) -> Quiver {
        Quiver::from_arrows(k, edges).unwrap()
    }

    fn name(q: &Quiver) -> Option<String> {
        let v = classify(q);
        assert_eq!(v.components.len(), 1);
        v.components[0].diagram.name().map(str::to_string)
    }

    #[test]
    fn underlying_graph_examples() {
        let g = underlying_graph(&Quiver::star(6));
        assert_eq!(g.degree(0), 6);
        assert_eq!(g.edge_count(), 6);
        let l = graph_quiver(1, &[(0, 0)]);
        assert_eq!(underlying_graph(&l).edges, BTreeMap::from([((0, 0), 1)]));
        assert_eq!(underlying_graph(&Quiver::path(3)).edge_count(), 2);
    }

    #[test]
    fn dynkin_table() {
        assert_eq!(name(&Quiver::path(3)).as_deref(), Some("A3"));
        assert_eq!(name(&Quiver::with_vertices(1)).as_deref(), Some("A1"));
        assert_eq!(name(&Quiver::star(3)).as_deref(), Some("D4"));
        assert_eq!(
            name(&graph_quiver(6, &[(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)])).as_deref(),
            Some("D6")
        );
        // arms (1,2,k)
        let e = |k: usize| {
            let mut edges = vec![(0, 1), (0, 2), (2, 3)];
            let mut prev = 0;
            for i in 0..k {
                edges.push((prev, 4 + i));
                prev = 4 + i;
            }
            graph_quiver(4 + k, &edges)
        };
        assert_eq!(name(&e(2)).as_deref(), Some("E6"));
        assert_eq!(name(&e(3)).as_deref(), Some("E7"));
        assert_eq!(name(&e(4)).as_deref(), Some("E8"));
        assert_eq!(name(&e(5)).as_deref(), Some("Ẽ8"));
        assert_eq!(classify(&e(6)).kind, TypeKind::Wild);
    }

    #[test]
    fn affine_table() {
        assert_eq!(name(&graph_quiver(1, &[(0, 0)])).as_deref(), Some("Ã0"));
        assert_eq!(
            name(&graph_quiver(2, &[(0, 1), (1, 0)])).as_deref(),
            Some("Ã1")
        );
        assert_eq!(
            name(&graph_quiver(4, &[(0, 1), (1, 2), (2, 3), (0, 3)])).as_deref(),
            Some("Ã3")
        );
        assert_eq!(name(&Quiver::star(4)).as_deref(), Some("D̃4"));
        assert_eq!(
            name(&graph_quiver(
                7,
                &[(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (4, 6)]
            ))
            .as_deref(),
            Some("D̃6")
        );
        assert_eq!(
            name(&graph_quiver(
                7,
                &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]
            ))
            .as_deref(),
            Some("Ẽ6")
        );
        assert_eq!(
            name(&graph_quiver(
                8,
                &[(0, 1), (0, 2), (2, 3), (3, 4), (0, 5), (5, 6), (6, 7)]
            ))
            .as_deref(),
            Some("Ẽ7")
        );
    }

    #[test]
    fn wild_examples() {
        for q in [
            Quiver::star(5),
            Quiver::star(6),
            graph_quiver(2, &[(0, 1), (0, 1), (0, 1)]),
            graph_quiver(1, &[(0, 0), (0, 0)]),
            graph_quiver(2, &[(0, 0), (0, 1)]),
            graph_quiver(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]),
        ] {
            let v = classify(&q);
            assert_eq!(v.kind, TypeKind::Wild, "{q:?}");
            assert!(v.witness().is_some());
            assert!(v.recheck(&q));
        }
    }

    #[test]
    fn star_family_law() {
        for d in 0..=9 {
            let expected = match d {
                0..=3 => TypeKind::Finite,
                4 => TypeKind::Tame,
                _ => TypeKind::Wild,
            };
            assert_eq!(classify(&Quiver::star(d)).kind, expected, "d = {d}");
        }
    }

    #[test]
    fn disconnected_combines() {
        let mut q = Quiver::with_vertices(3);
        q.add_arrow(0, 1, 1).unwrap();
        q.add_arrow(2, 2, 1).unwrap();
        let v = classify(&q);
        assert_eq!(v.kind, TypeKind::Tame);
        assert_eq!(v.components.len(), 2);
        assert!(v.recheck(&q));
        let mut tampered = v.clone();
        tampered.kind = TypeKind::Finite;
        assert!(!tampered.recheck(&q));
    }

    #[test]
    fn certificates() {
        let c = wildness_certificate(&Quiver::star(6)).unwrap();
        assert!(c.recheck());
        assert_eq!(c.vertices.len(), 7);
        assert!(wildness_certificate(&Quiver::star(2)).is_none());
        assert!(wildness_certificate(&Quiver::path(3)).is_none());
        assert!(wildness_certificate(&graph_quiver(1, &[(0, 0), (0, 0)])).is_none());
        // a length-2 path hanging off a wild out-star: found on the star
        let mut q = Quiver::star(5);
        let extra = Quiver::with_vertices(7);
        q.vertices = extra.vertices;
        q.add_arrow(6, 0, 1).unwrap();
        let c = wildness_certificate(&q).unwrap();
        assert_eq!(c.vertices[0], 0);
        assert!(c.recheck());
    }

    #[test]
    fn tits_form_examples() {
        assert_eq!(tits_form(&Quiver::path(2), &[1, 1]).unwrap(), 1);
        assert_eq!(tits_form(&graph_quiver(1, &[(0, 0)]), &[1]).unwrap(), 0);
        assert_eq!(
            tits_form(&Quiver::star(6), &[2, 1, 1, 1, 1, 1, 1]).unwrap(),
            -2
        );
        assert!(tits_form(&Quiver::path(2), &[1]).is_err());
    }

    #[test]
    fn inertia() {
        let i = |q: &Quiver| tits_inertia(q);
        assert_eq!(
            i(&Quiver::path(3)),
            Inertia {
                positive: 3,
                zero: 0,
                negative: 0
            }
        );
        assert_eq!(
            i(&Quiver::star(4)),
            Inertia {
                positive: 4,
                zero: 1,
                negative: 0
            }
        );
        assert_eq!(
            i(&graph_quiver(1, &[(0, 0)])),
            Inertia {
                positive: 0,
                zero: 1,
                negative: 0
            }
        );
        assert!(i(&Quiver::star(5)).negative > 0);
        assert!(i(&graph_quiver(2, &[(0, 1), (0, 1), (0, 1)])).matches(TypeKind::Wild));
    }

    #[test]
    fn dot_and_json_round_trip() {
        let mut q = Quiver::new(vec!["(1/2,1/2)".into(), "(3/2,1/2)".into()]);
        q.add_arrow(0, 1, 2).unwrap();
        let dot = q.to_dot();
        assert!(dot.contains("\"(1/2,1/2)\" -> \"(3/2,1/2)\" [label=\"2\"]"));
        assert_eq!(Quiver::from_dot(&dot).unwrap(), q);
        assert_eq!(Quiver::from_json(&q.to_json()).unwrap(), q);
        let bad = QuiverJson {
            vertices: vec!["a".into()],
            arrows: vec![ArrowJson {
                source: "a".into(),
                target: "b".into(),
                mult: 1,
            }],
        };
        assert!(Quiver::from_json(&bad).is_err());
        assert!(Quiver::from_dot("graph { a -- b }").is_err());
    }

    fn arb_quiver() -> impl Strategy<Value = Quiver> {
        (1usize..7).prop_flat_map(|k| {
            prop::collection::vec((0..k, 0..k), 0..9)
                .prop_map(move |arrows| Quiver::from_arrows(k, &arrows).unwrap())
        })
    }

    proptest! {
        #[test]
        fn verdict_ignores_orientation_and_labels(q in arb_quiver(), seed in any::<u64>()) {
            let k = q.vertex_count();
            let mut perm: Vec<usize> = (0..k).collect();
            let mut s = seed;
            for i in (1..k).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let v = classify(&q);
            prop_assert!(v.recheck(&q));
            prop_assert_eq!(classify(&q.opposite()).kind, v.kind);
            prop_assert_eq!(classify(&q.relabeled(&perm).unwrap()).kind, v.kind);
        }

        #[test]
        fn finite_quivers_have_positive_tits_form(q in arb_quiver(), d in prop::collection::vec(0i64..=3, 7)) {
            if classify(&q).kind == TypeKind::Finite {
                let d = &d[..q.vertex_count()];
                if d.iter().any(|&x| x > 0) {
                    prop_assert!(tits_form(&q, d).unwrap() >= 1);
                }
            }
        }

        #[test]
        fn inertia_matches_connected_verdicts(q in arb_quiver()) {
            let v = classify(&q);
            if v.components.len() == 1 {
                prop_assert!(tits_inertia(&q).matches(v.kind), "{:?} {:?}", v, tits_inertia(&q));
            }
        }

        #[test]
        fn certificates_recheck(q in arb_quiver()) {
            if let Some(c) = wildness_certificate(&q) {
                prop_assert!(c.recheck());
                prop_assert_eq!(classify(&q).kind, TypeKind::Wild);
            }
        }
    }
}
