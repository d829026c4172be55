use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::Deserialize;

use crate::error::{Error, Result};

/// Dimension vector, or more generally an element of the Grothendieck group Z^I.
pub type DimVector = Vec<i64>;

/// ADE label of a Dynkin diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

impl std::str::FromStr for DynkinType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().replace('_', "");
        let bad = || Error::InvalidQuiver(format!("unknown Dynkin type label {s:?}"));
        if s.len() < 2 {
            return Err(bad());
        }
        let n: usize = s[1..].parse().map_err(|_| bad())?;
        match s.as_bytes()[0].to_ascii_uppercase() {
            b'A' if n >= 1 => Ok(DynkinType::A(n)),
            b'D' if n >= 4 => Ok(DynkinType::D(n)),
            b'E' if (6..=8).contains(&n) => Ok(DynkinType::E(n)),
            _ => Err(bad()),
        }
    }
}

impl DynkinType {
    pub fn root_count(&self) -> usize {
        match *self {
            DynkinType::A(n) => n * (n + 1) / 2,
            DynkinType::D(n) => n * (n - 1),
            DynkinType::E(6) => 36,
            DynkinType::E(7) => 63,
            DynkinType::E(_) => 120,
        }
    }
}

/// A Dynkin quiver: an orientation of an ADE diagram.
pub struct DynkinQuiver {
    names: Vec<String>,
    arrows: Vec<(usize, usize)>,
    kind: DynkinType,
    topo: Vec<usize>,
    reach: Vec<Vec<bool>>,
    roots: OnceLock<Vec<DimVector>>,
}

impl fmt::Debug for DynkinQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [", self.kind)?;
        for (k, &(s, t)) in self.arrows.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}->{}", self.names[s], self.names[t])?;
        }
        write!(f, "]")
    }
}

impl PartialEq for DynkinQuiver {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.arrows == other.arrows
    }
}
impl Eq for DynkinQuiver {}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverFile {
    #[serde(rename = "type")]
    kind: Option<String>,
    vertices: Vec<String>,
    arrows: Vec<(String, String)>,
}

fn classify_tree(n: usize, arrows: &[(usize, usize)]) -> Result<DynkinType> {
    if n == 0 {
        return Err(Error::InvalidQuiver("quiver has no vertices".into()));
    }
    if arrows.len() != n - 1 {
        return Err(Error::InvalidQuiver(format!("{} arrows on {} vertices: not a tree", arrows.len(), n)));
    }
    let mut adj = vec![Vec::new(); n];
    let mut edges = BTreeSet::new();
    for &(s, t) in arrows {
        if s == t {
            return Err(Error::InvalidQuiver("loops are not allowed".into()));
        }
        if !edges.insert((s.min(t), s.max(t))) {
            return Err(Error::InvalidQuiver("multiple edges are not allowed".into()));
        }
        adj[s].push(t);
        adj[t].push(s);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::InvalidQuiver("underlying graph is disconnected".into()));
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    if branch.is_empty() {
        return Ok(DynkinType::A(n));
    }
    if branch.len() > 1 || adj[branch[0]].len() > 3 {
        return Err(Error::InvalidQuiver("graph is not of ADE type".into()));
    }
    let c = branch[0];
    let mut arms: Vec<usize> = adj[c]
        .iter()
        .map(|&start| {
            let (mut prev, mut cur, mut len) = (c, start, 1);
            loop {
                let next: Vec<usize> = adj[cur].iter().copied().filter(|&w| w != prev).collect();
                if next.is_empty() {
                    break len;
                }
                prev = cur;
                cur = next[0];
                len += 1;
            }
        })
        .collect();
    arms.sort();
    match (arms[0], arms[1], arms[2]) {
        (1, 1, _) => Ok(DynkinType::D(n)),
        (1, 2, 2) => Ok(DynkinType::E(6)),
        (1, 2, 3) => Ok(DynkinType::E(7)),
        (1, 2, 4) => Ok(DynkinType::E(8)),
        _ => Err(Error::InvalidQuiver(format!("branch arms {arms:?} are not of ADE type"))),
    }
}

impl DynkinQuiver {
    /// Validates the arrows against the ADE classification (and against `declared` when given).
    pub fn new(names: Vec<String>, arrows: Vec<(usize, usize)>, declared: Option<DynkinType>) -> Result<Self> {
        let n = names.len();
        if arrows.iter().any(|&(s, t)| s >= n || t >= n) {
            return Err(Error::InvalidQuiver("arrow endpoint out of range".into()));
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidQuiver("duplicate vertex names".into()));
        }
        let kind = classify_tree(n, &arrows)?;
        if let Some(d) = declared {
            if d != kind {
                return Err(Error::InvalidQuiver(format!("declared type {d} but graph has type {kind}")));
            }
        }
        // Kahn's algorithm; a tree orientation is always acyclic
        let mut indeg = vec![0; n];
        for &(_, t) in &arrows {
            indeg[t] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            topo.push(v);
            for &(s, t) in &arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        queue.push_back(t);
                    }
                }
            }
        }
        let mut reach = vec![vec![false; n]; n];
        for i in 0..n {
            reach[i][i] = true;
            let mut stack = vec![i];
            while let Some(v) = stack.pop() {
                for &(s, t) in &arrows {
                    if s == v && !reach[i][t] {
                        reach[i][t] = true;
                        stack.push(t);
                    }
                }
            }
        }
        Ok(DynkinQuiver { names, arrows, kind, topo, reach, roots: OnceLock::new() })
    }

    fn numbered(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    /// A_n with the linear orientation 1 → 2 → … → n.
    pub fn a_linear(n: usize) -> Self {
        Self::new(Self::numbered(n), (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(), None).unwrap()
    }

    /// A_n with arrows given as 1-based (source, target) pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if pairs.iter().any(|&(s, t)| s == 0 || t == 0) {
            return Err(Error::InvalidQuiver("vertices are numbered from 1".into()));
        }
        Self::new(Self::numbered(n), pairs.iter().map(|&(s, t)| (s - 1, t - 1)).collect(), None)
    }

    /// D_n: a path 1 → … → n−1 with an extra arrow n−2 → n.
    pub fn d_standard(n: usize) -> Self {
        let mut arrows: Vec<(usize, usize)> = (0..n - 2).map(|i| (i, i + 1)).collect();
        arrows.push((n - 3, n - 1));
        Self::new(Self::numbered(n), arrows, Some(DynkinType::D(n))).unwrap()
    }

    /// E_n: a path 1 → … → n−1 with an extra arrow 3 → n.
    pub fn e_standard(n: usize) -> Self {
        let mut arrows: Vec<(usize, usize)> = (0..n - 2).map(|i| (i, i + 1)).collect();
        arrows.push((2, n - 1));
        Self::new(Self::numbered(n), arrows, Some(DynkinType::E(n))).unwrap()
    }

    /// Parses the TOML quiver description: `type` (optional), `vertices`, `arrows = [[s, t], …]`.
    pub fn parse_spec(text: &str) -> Result<Self> {
        let file: QuiverFile = toml::from_str(text).map_err(|e| Error::InvalidQuiver(e.to_string()))?;
        let index: HashMap<&str, usize> = file.vertices.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut arrows = Vec::new();
        for (s, t) in &file.arrows {
            let lookup = |x: &str| {
                index.get(x).copied().ok_or_else(|| Error::InvalidQuiver(format!("arrow uses unknown vertex {x:?}")))
            };
            arrows.push((lookup(s)?, lookup(t)?));
        }
        let declared = file.kind.as_deref().map(str::parse).transpose()?;
        Self::new(file.vertices.clone(), arrows, declared)
    }

    pub fn to_spec(&self) -> String {
        let verts: Vec<String> = self.names.iter().map(|n| format!("{n:?}")).collect();
        let arrows: Vec<String> =
            self.arrows.iter().map(|&(s, t)| format!("[{:?}, {:?}]", self.names[s], self.names[t])).collect();
        format!("type = \"{}\"\nvertices = [{}]\narrows = [{}]\n", self.kind, verts.join(", "), arrows.join(", "))
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }
    pub fn kind(&self) -> DynkinType {
        self.kind
    }
    /// Vertices with every arrow pointing from earlier to later.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }
    /// Whether there is a (possibly trivial) path from `i` to `j`.
    pub fn reaches(&self, i: usize, j: usize) -> bool {
        self.reach[i][j]
    }

    /// The arrows along the unique path from `i` to `j`, in order.
    pub fn path(&self, i: usize, j: usize) -> Option<Vec<usize>> {
        if !self.reach[i][j] {
            return None;
        }
        let mut out = Vec::new();
        let mut cur = i;
        while cur != j {
            let (h, &(_, t)) =
                self.arrows.iter().enumerate().find(|(_, &(s, t))| s == cur && self.reach[t][j]).unwrap();
            out.push(h);
            cur = t;
        }
        Some(out)
    }

    pub fn zero_vector(&self) -> DimVector {
        vec![0; self.n()]
    }

    pub fn unit(&self, i: usize) -> DimVector {
        let mut v = self.zero_vector();
        v[i] = 1;
        v
    }

    /// Euler form ⟨a,b⟩ = Σ a_i b_i − Σ_h a_{s(h)} b_{t(h)}.
    pub fn euler_form(&self, a: &[i64], b: &[i64]) -> i64 {
        let diag: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        let off: i64 = self.arrows.iter().map(|&(s, t)| a[s] * b[t]).sum();
        diag - off
    }

    /// Symmetrized form (a,b) = ⟨a,b⟩ + ⟨b,a⟩.
    pub fn sym_euler_form(&self, a: &[i64], b: &[i64]) -> i64 {
        self.euler_form(a, b) + self.euler_form(b, a)
    }

    /// Cartan matrix entry a_ij = 2δ_ij − (number of edges between i and j).
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.sym_euler_form(&self.unit(i), &self.unit(j))
    }

    /// Dimension vector of the indecomposable projective P_i: (P_i)_j = 1 iff there is a path i → j.
    pub fn projective_dim(&self, i: usize) -> DimVector {
        (0..self.n()).map(|j| self.reach[i][j] as i64).collect()
    }

    /// Dimension vector of Σ_i m_i P_i.
    pub fn projective_sum_dim(&self, mult: &[usize]) -> DimVector {
        let mut d = self.zero_vector();
        for (i, &m) in mult.iter().enumerate() {
            for (j, x) in d.iter_mut().enumerate() {
                if self.reach[i][j] {
                    *x += m as i64;
                }
            }
        }
        d
    }

    /// Solves `Σ m_i dim P_i = d` for nonnegative integers m (unitriangular in topological order).
    pub fn projective_mult_from_dim(&self, d: &[i64]) -> Option<Vec<usize>> {
        let mut rest = d.to_vec();
        let mut m = vec![0usize; self.n()];
        for &i in &self.topo {
            let c = rest[i];
            if c < 0 {
                return None;
            }
            m[i] = c as usize;
            for (j, x) in rest.iter_mut().enumerate() {
                if self.reach[i][j] {
                    *x -= c;
                }
            }
        }
        Some(m)
    }

    /// Coxeter transformation inverse Φ^{-1}, with dim τ^{-1}X = Φ^{-1}(dim X) for non-injective X.
    fn coxeter_inverse(&self, x: &[i64]) -> DimVector {
        // z solves E^T z = −E x, with E the Euler matrix (⟨a,b⟩ = a^T E b)
        let n = self.n();
        let ex: Vec<i64> = (0..n)
            .map(|i| {
                let mut s = x[i];
                for &(src, t) in &self.arrows {
                    if src == i {
                        s -= x[t];
                    }
                }
                -s
            })
            .collect();
        // E^T is lower unitriangular in reverse topological order: (E^T z)_j = z_j − Σ_{h: s→j} z_s
        let mut z = vec![0i64; n];
        for &j in &self.topo {
            let mut s = ex[j];
            for &(src, t) in &self.arrows {
                if t == j {
                    s += z[src];
                }
            }
            z[j] = s;
        }
        z
    }

    /// All positive roots, listed in the fixed directed order: whenever Hom(I_a, I_b) ≠ 0 or
    /// Ext¹(I_b, I_a) ≠ 0 for a ≠ b, root a comes first. Ties are broken lexicographically.
    pub fn positive_roots(&self) -> &[DimVector] {
        self.roots.get_or_init(|| self.compute_directed_roots())
    }

    /// Positions of roots in the preprojective component, as (τ^{-r} index, vertex).
    fn knitted_roots(&self) -> Vec<(usize, usize, DimVector)> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            let mut x = self.projective_dim(i);
            let mut r = 0;
            while x.iter().all(|&c| c >= 0) && x.iter().any(|&c| c > 0) {
                out.push((r, i, x.clone()));
                x = self.coxeter_inverse(&x);
                r += 1;
            }
        }
        out
    }

    fn compute_directed_roots(&self) -> Vec<DimVector> {
        let knitted = self.knitted_roots();
        // slices τ^{-r}P with P_j before P_i whenever i → j: sinks first inside a slice
        let mut pos = vec![0usize; self.n()];
        for (k, &v) in self.topo.iter().rev().enumerate() {
            pos[v] = k;
        }
        let mut ar: Vec<(usize, usize, DimVector)> = knitted.into_iter().map(|(r, i, x)| (r, pos[i], x)).collect();
        ar.sort();
        let roots: Vec<DimVector> = ar.into_iter().map(|(_, _, x)| x).collect();
        let m = roots.len();
        // In the AR order, Hom(a,b) = ⟨a,b⟩ for a ≤ b and vanishes otherwise;
        // Ext¹(b,a) = −⟨b,a⟩ for a < b and vanishes otherwise.
        let mut succ = vec![Vec::new(); m];
        let mut indeg = vec![0; m];
        for a in 0..m {
            for b in a + 1..m {
                let hom = self.euler_form(&roots[a], &roots[b]);
                let ext = -self.euler_form(&roots[b], &roots[a]);
                if hom > 0 || ext > 0 {
                    succ[a].push(b);
                    indeg[b] += 1;
                }
            }
        }
        let mut ready: BTreeSet<(DimVector, usize)> =
            (0..m).filter(|&a| indeg[a] == 0).map(|a| (roots[a].clone(), a)).collect();
        let mut out = Vec::with_capacity(m);
        while let Some(first) = ready.iter().next().cloned() {
            ready.remove(&first);
            let a = first.1;
            out.push(roots[a].clone());
            for &b in &succ[a] {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    ready.insert((roots[b].clone(), b));
                }
            }
        }
        out
    }

    /// Index of a root in [`Self::positive_roots`].
    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.positive_roots().iter().position(|r| r.as_slice() == root)
    }

    /// dim Hom(I_a, I_b) for positive roots a, b (combinatorial, from the directed order).
    pub fn hom_dim_roots(&self, a: usize, b: usize) -> i64 {
        let roots = self.positive_roots();
        if a == b {
            return 1;
        }
        let h = self.euler_form(&roots[a], &roots[b]);
        if a < b && h > 0 {
            h
        } else {
            0
        }
    }

    /// dim Ext¹(I_a, I_b) for positive roots a, b.
    pub fn ext_dim_roots(&self, a: usize, b: usize) -> i64 {
        self.hom_dim_roots(a, b) - self.euler_form(&self.positive_roots()[a], &self.positive_roots()[b])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent root enumeration: vectors with Tits form 1 reachable by adding simple roots.
    fn tits_roots(q: &DynkinQuiver) -> BTreeSet<DimVector> {
        let mut found = BTreeSet::new();
        let mut frontier: Vec<DimVector> = (0..q.n()).map(|i| q.unit(i)).collect();
        while let Some(x) = frontier.pop() {
            if !found.insert(x.clone()) {
                continue;
            }
            for i in 0..q.n() {
                let mut y = x.clone();
                y[i] += 1;
                if q.euler_form(&y, &y) == 1 && !found.contains(&y) {
                    frontier.push(y);
                }
            }
        }
        found
    }

    #[test]
    fn root_counts_and_sets() {
        let qs = vec![
            DynkinQuiver::a_linear(1),
            DynkinQuiver::a_linear(2),
            DynkinQuiver::a_linear(3),
            DynkinQuiver::from_pairs(4, &[(2, 1), (2, 3), (4, 3)]).unwrap(),
            DynkinQuiver::d_standard(4),
            DynkinQuiver::d_standard(5),
            DynkinQuiver::e_standard(6),
            DynkinQuiver::e_standard(7),
            DynkinQuiver::e_standard(8),
        ];
        for q in &qs {
            let roots = q.positive_roots();
            assert_eq!(roots.len(), q.kind().root_count(), "{q:?}");
            let set: BTreeSet<DimVector> = roots.iter().cloned().collect();
            assert_eq!(set, tits_roots(q), "{q:?}");
        }
    }

    #[test]
    fn euler_form_examples() {
        let q = DynkinQuiver::a_linear(2);
        assert_eq!(q.euler_form(&[1, 0], &[0, 1]), -1);
        assert_eq!(q.euler_form(&[0, 1], &[1, 1]), 1);
        assert_eq!(q.euler_form(&[3, 5], &[0, 0]), 0);
        assert_eq!(q.sym_euler_form(&[1, 0], &[0, 1]), -1);
        assert_eq!(q.sym_euler_form(&[1, 0], &[1, 0]), 2);
    }

    #[test]
    fn a2_directed_order() {
        let q = DynkinQuiver::a_linear(2);
        assert_eq!(q.positive_roots(), &[vec![0, 1], vec![1, 1], vec![1, 0]]);
    }

    #[test]
    fn classification_and_parsing() {
        assert!(DynkinQuiver::new(DynkinQuiver::numbered(3), vec![(0, 1), (1, 2), (2, 0)], None).is_err());
        let star = vec![(0, 1), (0, 2), (0, 3), (0, 4)];
        assert!(DynkinQuiver::new(DynkinQuiver::numbered(5), star, None).is_err());
        let spec = "type = \"A3\"\nvertices = [\"a\", \"b\", \"c\"]\narrows = [[\"a\", \"b\"], [\"c\", \"b\"]]\n";
        let q = DynkinQuiver::parse_spec(spec).unwrap();
        assert_eq!(q.kind(), DynkinType::A(3));
        assert_eq!(DynkinQuiver::parse_spec(&q.to_spec()).unwrap(), q);
        let wrong = spec.replace("A3", "D4");
        assert!(DynkinQuiver::parse_spec(&wrong).is_err());
    }

    #[test]
    fn projective_multiplicities_invert_dimensions() {
        let q = DynkinQuiver::d_standard(5);
        let m = vec![1usize, 0, 2, 1, 3];
        assert_eq!(q.projective_mult_from_dim(&q.projective_sum_dim(&m)), Some(m));
    }
}
