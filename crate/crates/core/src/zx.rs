//! Phase-free ZX diagrams built from Tanner graphs, and a dense contraction
//! oracle for their semantics.
//!
//! Conventions: a Z-spider is `Σ_s |s…s⟩⟨s…s|`, an X-spider is a Z-spider with a
//! Hadamard on every leg, a Hadamard edge is the 2x2 Hadamard matrix. Matrices
//! are `2^outputs x 2^inputs` with leg 0 as the least significant index bit.
//! No renormalization is ever applied.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use num_complex::Complex64;

use crate::code::ClassicalCode;
use crate::dense::{CMatrix, ONE, ZERO};
use crate::error::{Error, Result};
use crate::f2::BinaryMatrix;

/// Default cap on the entries of any intermediate tensor during contraction.
pub const DEFAULT_BUDGET: usize = 1 << 26;
pub const MAX_BOUNDARY_LEGS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Z,
    X,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Plain,
    Hadamard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub kind: EdgeKind,
}

/// A boundary leg attached to one spider.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Leg {
    pub spider: usize,
    pub kind: EdgeKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductKind {
    Tensor,
    Check,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZxDiagram {
    spiders: Vec<Color>,
    edges: Vec<Edge>,
    inputs: Vec<Leg>,
    outputs: Vec<Leg>,
}

impl ZxDiagram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_spider(&mut self, color: Color) -> usize {
        self.spiders.push(color);
        self.spiders.len() - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize, kind: EdgeKind) {
        assert!(a < self.spiders.len() && b < self.spiders.len(), "edge to unknown spider");
        self.edges.push(Edge { a, b, kind });
    }

    pub fn add_input(&mut self, spider: usize, kind: EdgeKind) {
        assert!(spider < self.spiders.len(), "input leg on unknown spider");
        self.inputs.push(Leg { spider, kind });
    }

    pub fn add_output(&mut self, spider: usize, kind: EdgeKind) {
        assert!(spider < self.spiders.len(), "output leg on unknown spider");
        self.outputs.push(Leg { spider, kind });
    }

    pub fn spiders(&self) -> &[Color] {
        &self.spiders
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn inputs(&self) -> &[Leg] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[Leg] {
        &self.outputs
    }

    pub fn count(&self, color: Color) -> usize {
        self.spiders.iter().filter(|&&c| c == color).count()
    }

    /// Merges spider `b` into spider `a`.
    ///
    /// Both must share a color and be joined by at least one plain edge; one
    /// such edge is consumed, any parallel plain edges become self-loops.
    /// Spider ids above `b` shift down by one.
    pub fn fuse(&self, a: usize, b: usize) -> Result<ZxDiagram> {
        if a == b || a >= self.spiders.len() || b >= self.spiders.len() {
            return Err(Error::Argument(format!("cannot fuse spiders {a} and {b}")));
        }
        if self.spiders[a] != self.spiders[b] {
            return Err(Error::Argument(format!("spiders {a} and {b} differ in color")));
        }
        let joining = self.edges.iter().position(|e| {
            e.kind == EdgeKind::Plain && ((e.a == a && e.b == b) || (e.a == b && e.b == a))
        });
        let Some(joining) = joining else {
            return Err(Error::Argument(format!("spiders {a} and {b} share no plain edge")));
        };
        let remap = |s: usize| {
            let s = if s == b { a } else { s };
            if s > b {
                s - 1
            } else {
                s
            }
        };
        let mut out = ZxDiagram::new();
        out.spiders = self
            .spiders
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != b)
            .map(|(_, &c)| c)
            .collect();
        out.edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != joining)
            .map(|(_, e)| Edge { a: remap(e.a), b: remap(e.b), kind: e.kind })
            .collect();
        let relabel = |l: &Leg| Leg { spider: remap(l.spider), kind: l.kind };
        out.inputs = self.inputs.iter().map(relabel).collect();
        out.outputs = self.outputs.iter().map(relabel).collect();
        Ok(out)
    }

    /// Dense semantics with the default memory budget.
    pub fn contract(&self) -> Result<CMatrix> {
        self.contract_with_budget(DEFAULT_BUDGET)
    }

    /// Dense semantics; fails if any intermediate tensor would exceed `budget` entries.
    pub fn contract_with_budget(&self, budget: usize) -> Result<CMatrix> {
        let legs = self.inputs.len() + self.outputs.len();
        if legs > MAX_BOUNDARY_LEGS {
            return Err(Error::Resource(format!(
                "{legs} boundary legs exceed the limit of {MAX_BOUNDARY_LEGS}"
            )));
        }
        if 1usize << legs > budget {
            return Err(Error::Resource(format!(
                "a {legs}-leg result exceeds the budget of {budget} entries"
            )));
        }
        contract_diagram(self, budget)
    }
}

/// Plain-text adjacency listing, one spider per line.
impl fmt::Display for ZxDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = |kind: EdgeKind| if kind == EdgeKind::Hadamard { "h" } else { "" };
        for (id, color) in self.spiders.iter().enumerate() {
            let mut line = format!("{id} {color:?}");
            let mut nbrs = Vec::new();
            for e in &self.edges {
                if e.a == id {
                    nbrs.push(format!("{}{}", e.b, tag(e.kind)));
                }
                if e.b == id && e.a != id {
                    nbrs.push(format!("{}{}", e.a, tag(e.kind)));
                }
            }
            let _ = write!(line, " nbrs=[{}]", nbrs.join(","));
            let legs = |list: &[Leg]| {
                list.iter()
                    .enumerate()
                    .filter(|(_, l)| l.spider == id)
                    .map(|(k, l)| format!("{k}{}", tag(l.kind)))
                    .collect::<Vec<_>>()
                    .join(",")
            };
            let _ = write!(line, " in=[{}] out=[{}]", legs(&self.inputs), legs(&self.outputs));
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Bits become Z-spiders with an input leg each, checks become X-spiders with
/// a Hadamard output leg each, and every Tanner edge becomes a plain edge.
pub fn kw_diagram(code: &ClassicalCode) -> ZxDiagram {
    let mut d = ZxDiagram::new();
    let bits: Vec<usize> = (0..code.n()).map(|_| d.add_spider(Color::Z)).collect();
    let checks: Vec<usize> = (0..code.m()).map(|_| d.add_spider(Color::X)).collect();
    for (i, a) in code.edges() {
        d.add_edge(bits[i], checks[a], EdgeKind::Plain);
    }
    for &s in &bits {
        d.add_input(s, EdgeKind::Plain);
    }
    for &s in &checks {
        d.add_output(s, EdgeKind::Hadamard);
    }
    d
}

/// One three-legged spider per product bit: Z for the tensor merge, X for the
/// check merge. Inputs are all α legs then all β legs, each indexed `j*n1 + i`.
pub fn product_diagram(c1: &ClassicalCode, c2: &ClassicalCode, kind: ProductKind) -> ZxDiagram {
    let sites = c1.n() * c2.n();
    let color = match kind {
        ProductKind::Tensor => Color::Z,
        ProductKind::Check => Color::X,
    };
    let mut d = ZxDiagram::new();
    let spiders: Vec<usize> = (0..sites).map(|_| d.add_spider(color)).collect();
    for _layer in 0..2 {
        for &s in &spiders {
            d.add_input(s, EdgeKind::Plain);
        }
    }
    for &s in &spiders {
        d.add_output(s, EdgeKind::Plain);
    }
    d
}

/// `⟨y|D|x⟩ = 2^{-m/2} (-1)^{y·Hx}`, a `2^m x 2^n` matrix.
pub fn kw_matrix_oracle(h: &BinaryMatrix) -> Result<CMatrix> {
    let (m, n) = h.shape();
    if n + m > MAX_BOUNDARY_LEGS {
        return Err(Error::Resource(format!(
            "oracle for {m}x{n} needs n+m <= {MAX_BOUNDARY_LEGS}"
        )));
    }
    // column masks: Hx as a bit pattern over checks
    let col_mask: Vec<usize> = (0..n)
        .map(|i| h.col_support(i).iter().fold(0usize, |acc, &a| acc | 1 << a))
        .collect();
    let scale = (0.5f64).powf(m as f64 / 2.0);
    let mut out = CMatrix::zeros(1 << m, 1 << n);
    for x in 0..1usize << n {
        let hx = (0..n)
            .filter(|&i| x >> i & 1 == 1)
            .fold(0usize, |acc, i| acc ^ col_mask[i]);
        for y in 0..1usize << m {
            let sign = if (y & hx).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
            out[(y, x)] = Complex64::new(sign * scale, 0.0);
        }
    }
    Ok(out)
}

/// A tensor over binary variables; bit `k` of the table index is `vars[k]`.
#[derive(Debug, Clone)]
struct Factor {
    vars: Vec<usize>,
    table: Vec<Complex64>,
}

impl Factor {
    fn scalar(c: Complex64) -> Self {
        Self { vars: Vec::new(), table: vec![c] }
    }

    fn pair(u: usize, v: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        Self {
            vars: vec![u, v],
            table: (0..4).map(|k| f(k & 1, k >> 1)).collect(),
        }
    }
}

fn hadamard_entry(s: usize, t: usize) -> Complex64 {
    let v = std::f64::consts::FRAC_1_SQRT_2;
    Complex64::new(if s & t == 1 { -v } else { v }, 0.0)
}

fn delta_entry(s: usize, t: usize) -> Complex64 {
    if s == t {
        ONE
    } else {
        ZERO
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut cur = x;
    while parent[cur] != root {
        let next = parent[cur];
        parent[cur] = root;
        cur = next;
    }
    root
}

fn contract_diagram(d: &ZxDiagram, budget: usize) -> Result<CMatrix> {
    let ns = d.spiders.len();
    // X-spiders become Z-spiders with a Hadamard on each leg: flip every leg kind once per X end.
    let flip = |kind: EdgeKind, times: usize| {
        if times.is_multiple_of(2) {
            kind
        } else {
            match kind {
                EdgeKind::Plain => EdgeKind::Hadamard,
                EdgeKind::Hadamard => EdgeKind::Plain,
            }
        }
    };
    let is_x = |s: usize| usize::from(d.spiders[s] == Color::X);

    let mut parent: Vec<usize> = (0..ns).collect();
    let mut hadamard_edges = Vec::new();
    for e in &d.edges {
        match flip(e.kind, is_x(e.a) + is_x(e.b)) {
            EdgeKind::Plain => {
                let (ra, rb) = (find(&mut parent, e.a), find(&mut parent, e.b));
                if ra != rb {
                    parent[rb] = ra;
                }
            }
            EdgeKind::Hadamard => hadamard_edges.push((e.a, e.b)),
        }
    }

    // Spider classes are variables 0..classes; boundary legs follow.
    let mut class_of = HashMap::new();
    for s in 0..ns {
        let r = find(&mut parent, s);
        let next = class_of.len();
        class_of.entry(r).or_insert(next);
    }
    let var = |parent: &mut [usize], s: usize| class_of[&find(parent, s)];
    let classes = class_of.len();

    let mut factors = Vec::new();
    for (a, b) in hadamard_edges {
        let (u, v) = (var(&mut parent, a), var(&mut parent, b));
        if u == v {
            let w = std::f64::consts::FRAC_1_SQRT_2;
            factors.push(Factor {
                vars: vec![u],
                table: vec![Complex64::new(w, 0.0), Complex64::new(-w, 0.0)],
            });
        } else {
            factors.push(Factor::pair(u, v, hadamard_entry));
        }
    }
    let legs: Vec<&Leg> = d.inputs.iter().chain(d.outputs.iter()).collect();
    for (k, leg) in legs.iter().enumerate() {
        let u = var(&mut parent, leg.spider);
        let b = classes + k;
        let kind = flip(leg.kind, is_x(leg.spider));
        factors.push(match kind {
            EdgeKind::Plain => Factor::pair(b, u, delta_entry),
            EdgeKind::Hadamard => Factor::pair(b, u, hadamard_entry),
        });
    }
    // spider classes touching nothing still sum over both values
    let mut touched = vec![false; classes];
    for f in &factors {
        for &v in &f.vars {
            if v < classes {
                touched[v] = true;
            }
        }
    }
    let isolated = touched.iter().filter(|&&t| !t).count();
    factors.push(Factor::scalar(Complex64::new((2.0f64).powi(isolated as i32), 0.0)));

    let mut internal: Vec<usize> = (0..classes).filter(|&v| touched[v]).collect();
    while !internal.is_empty() {
        // cheapest variable: smallest merged factor
        let (pos, _) = internal
            .iter()
            .enumerate()
            .map(|(p, &v)| (p, merged_arity(&factors, v)))
            .min_by_key(|&(_, arity)| arity)
            .expect("non-empty");
        let v = internal.swap_remove(pos);
        let (with, without): (Vec<Factor>, Vec<Factor>) =
            factors.into_iter().partition(|f| f.vars.contains(&v));
        factors = without;
        factors.push(multiply(&with, Some(v), budget)?);
    }

    let total = multiply(&factors, None, budget)?;
    let n_in = d.inputs.len();
    let n_out = d.outputs.len();
    let mut out = CMatrix::zeros(1 << n_out, 1 << n_in);
    // every boundary variable survives in its leg factor
    let pos: Vec<usize> = (0..legs.len())
        .map(|k| {
            total
                .vars
                .iter()
                .position(|&v| v == classes + k)
                .expect("boundary leg kept")
        })
        .collect();
    for x in 0..1usize << n_in {
        for y in 0..1usize << n_out {
            let idx = pos.iter().enumerate().fold(0usize, |acc, (k, &p)| {
                let bit = if k < n_in { x >> k & 1 } else { y >> (k - n_in) & 1 };
                acc | bit << p
            });
            out[(y, x)] = total.table[idx];
        }
    }
    Ok(out)
}

fn merged_arity(factors: &[Factor], v: usize) -> usize {
    let mut vars: Vec<usize> = factors
        .iter()
        .filter(|f| f.vars.contains(&v))
        .flat_map(|f| f.vars.iter().copied())
        .collect();
    vars.sort_unstable();
    vars.dedup();
    vars.len()
}

/// Pointwise product of `factors`, summing out `eliminate` if given.
fn multiply(factors: &[Factor], eliminate: Option<usize>, budget: usize) -> Result<Factor> {
    let mut vars: Vec<usize> = factors.iter().flat_map(|f| f.vars.iter().copied()).collect();
    vars.sort_unstable();
    vars.dedup();
    if vars.len() >= usize::BITS as usize - 1 || 1usize << vars.len() > budget {
        return Err(Error::Resource(format!(
            "contraction needs a tensor over {} legs, beyond the budget of {budget} entries",
            vars.len()
        )));
    }
    let kept: Vec<usize> = vars.iter().copied().filter(|&v| Some(v) != eliminate).collect();
    let place = |v: usize| vars.iter().position(|&u| u == v).expect("var present");
    let maps: Vec<Vec<usize>> = factors
        .iter()
        .map(|f| f.vars.iter().map(|&v| place(v)).collect())
        .collect();
    let kept_pos: Vec<usize> = kept.iter().map(|&v| place(v)).collect();

    let mut table = vec![ZERO; 1 << kept.len()];
    for full in 0..1usize << vars.len() {
        let mut value = ONE;
        for (f, map) in factors.iter().zip(&maps) {
            let idx = map
                .iter()
                .enumerate()
                .fold(0usize, |acc, (k, &p)| acc | (full >> p & 1) << k);
            value *= f.table[idx];
            if value == ZERO {
                break;
            }
        }
        if value == ZERO {
            continue;
        }
        let out = kept_pos
            .iter()
            .enumerate()
            .fold(0usize, |acc, (k, &p)| acc | (full >> p & 1) << k);
        table[out] += value;
    }
    Ok(Factor { vars: kept, table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::{fidelity, hadamard_all, max_abs, unitarity_defect};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn single_wire_is_identity() {
        let mut d = ZxDiagram::new();
        let s = d.add_spider(Color::Z);
        d.add_input(s, EdgeKind::Plain);
        d.add_output(s, EdgeKind::Plain);
        let m = d.contract().unwrap();
        assert!(max_abs(&(m - CMatrix::identity(2, 2))) < 1e-15);
    }

    #[test]
    fn x_spider_is_parity() {
        let mut d = ZxDiagram::new();
        let s = d.add_spider(Color::X);
        d.add_input(s, EdgeKind::Plain);
        d.add_input(s, EdgeKind::Plain);
        d.add_output(s, EdgeKind::Plain);
        let m = d.contract().unwrap();
        // 2^{1-3/2} on even-parity entries
        let w = std::f64::consts::FRAC_1_SQRT_2;
        for x in 0..4usize {
            for y in 0..2usize {
                let even = (x.count_ones() as usize + y).is_multiple_of(2);
                assert!((m[(y, x)] - c(if even { w } else { 0.0 })).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn kw_unit_code_is_hadamard() {
        let code = ClassicalCode::from_matrix(BinaryMatrix::from_rows(&[[1]]));
        let d = kw_diagram(&code);
        assert_eq!((d.count(Color::Z), d.count(Color::X), d.edges().len()), (1, 1, 1));
        assert_eq!(d.outputs()[0].kind, EdgeKind::Hadamard);
        let m = d.contract().unwrap();
        assert!(fidelity(&m, &hadamard_all(1)) > 1.0 - 1e-12);
        let oracle = kw_matrix_oracle(code.parity_check()).unwrap();
        assert!(max_abs(&(oracle - hadamard_all(1))) < 1e-15);
    }

    #[test]
    fn kw_diagram_counts() {
        let d = kw_diagram(&ClassicalCode::ising_ring(3));
        assert_eq!((d.count(Color::Z), d.count(Color::X), d.edges().len()), (3, 3, 6));
        assert!(d.outputs().iter().all(|l| l.kind == EdgeKind::Hadamard));
        let d = kw_diagram(&ClassicalCode::ising_chain(3));
        assert_eq!((d.count(Color::Z), d.count(Color::X), d.edges().len()), (3, 2, 4));
    }

    #[test]
    fn kw_diagram_matches_oracle_for_ising3() {
        let code = ClassicalCode::ising_ring(3);
        let m = kw_diagram(&code).contract().unwrap();
        let oracle = kw_matrix_oracle(code.parity_check()).unwrap();
        assert!(fidelity(&m, &oracle) > 1.0 - 1e-10);
    }

    #[test]
    fn identity_code_oracle_is_hadamard_product() {
        for n in 1..4 {
            let o = kw_matrix_oracle(&BinaryMatrix::identity(n)).unwrap();
            assert!(max_abs(&(o - hadamard_all(n))) < 1e-14);
        }
    }

    /// Dense Pauli on `wires` qubits from (wire, 'X'|'Z') factors.
    fn pauli(wires: usize, factors: &[(usize, char)]) -> CMatrix {
        let dim = 1usize << wires;
        let mut m = CMatrix::identity(dim, dim);
        for &(w, p) in factors {
            let single = CMatrix::from_fn(dim, dim, |r, col| match p {
                'X' => c(f64::from(u8::from(r == col ^ (1 << w)))),
                _ => {
                    if r == col {
                        c(if col >> w & 1 == 1 { -1.0 } else { 1.0 })
                    } else {
                        ZERO
                    }
                }
            });
            m = single * m;
        }
        m
    }

    #[test]
    fn oracle_satisfies_pushing_relations_for_ising3() {
        let code = ClassicalCode::ising_ring(3);
        let d = kw_matrix_oracle(code.parity_check()).unwrap();
        for i in 0..3 {
            let lhs = &d * pauli(3, &[(i, 'X')]);
            let zs: Vec<(usize, char)> = code.bit_support(i).into_iter().map(|a| (a, 'Z')).collect();
            let rhs = pauli(3, &zs) * &d;
            assert!(max_abs(&(lhs - rhs)) < 1e-14);
        }
        for a in 0..3 {
            let zs: Vec<(usize, char)> = code.check_support(a).into_iter().map(|i| (i, 'Z')).collect();
            let lhs = &d * pauli(3, &zs);
            let rhs = pauli(3, &[(a, 'X')]) * &d;
            assert!(max_abs(&(lhs - rhs)) < 1e-14);
        }
    }

    #[test]
    fn oracle_unitary_iff_square_full_rank() {
        let cases = [
            (BinaryMatrix::from_rows(&[[1, 1], [0, 1]]), true),
            (BinaryMatrix::from_rows(&[[1, 0, 1], [1, 1, 0], [0, 1, 1]]), false),
            (BinaryMatrix::from_rows(&[[1, 1, 0], [0, 1, 1]]), false),
        ];
        for (h, unitary) in cases {
            let o = kw_matrix_oracle(&h).unwrap();
            let ok = o.is_square() && unitarity_defect(&o) < 1e-10;
            assert_eq!(ok, unitary, "{h:?}");
        }
    }

    #[test]
    fn products_of_single_sites() {
        let unit = ClassicalCode::from_matrix(BinaryMatrix::from_rows(&[[1]]));
        let t = product_diagram(&unit, &unit, ProductKind::Tensor).contract().unwrap();
        let mut copy = CMatrix::zeros(2, 4);
        copy[(0, 0)] = ONE;
        copy[(1, 3)] = ONE;
        assert!(max_abs(&(&t - copy)) < 1e-15);

        let k = product_diagram(&unit, &unit, ProductKind::Check).contract().unwrap();
        let conj = hadamard_all(1) * &t * hadamard_all(2);
        assert!(fidelity(&k, &conj) > 1.0 - 1e-12);
    }

    #[test]
    fn product_diagram_counts() {
        let c = ClassicalCode::ising_ring(3);
        let d = product_diagram(&c, &c, ProductKind::Tensor);
        assert_eq!((d.count(Color::Z), d.inputs().len(), d.outputs().len()), (9, 18, 9));
    }

    #[test]
    fn fusion_preserves_semantics() {
        let mut d = ZxDiagram::new();
        let a = d.add_spider(Color::X);
        let b = d.add_spider(Color::X);
        let z = d.add_spider(Color::Z);
        d.add_edge(a, b, EdgeKind::Plain);
        d.add_edge(a, b, EdgeKind::Plain);
        d.add_edge(b, z, EdgeKind::Hadamard);
        d.add_input(a, EdgeKind::Plain);
        d.add_input(z, EdgeKind::Plain);
        d.add_output(b, EdgeKind::Hadamard);
        d.add_output(z, EdgeKind::Plain);
        let before = d.contract().unwrap();
        let fused = d.fuse(a, b).unwrap();
        assert_eq!(fused.spiders().len(), 2);
        let after = fused.contract().unwrap();
        assert!(fidelity(&before, &after) > 1.0 - 1e-12);
        assert!(d.fuse(a, z).is_err());
    }

    #[test]
    fn hadamard_self_loop() {
        // Z spider with a Hadamard self-loop: (1/√2) diag(1, -1)
        let mut d = ZxDiagram::new();
        let s = d.add_spider(Color::Z);
        d.add_edge(s, s, EdgeKind::Hadamard);
        d.add_input(s, EdgeKind::Plain);
        d.add_output(s, EdgeKind::Plain);
        let m = d.contract().unwrap();
        let w = std::f64::consts::FRAC_1_SQRT_2;
        assert!((m[(0, 0)] - c(w)).norm() < 1e-15);
        assert!((m[(1, 1)] + c(w)).norm() < 1e-15);
    }

    #[test]
    fn budget_is_enforced() {
        let d = kw_diagram(&ClassicalCode::ising_ring(3));
        assert!(matches!(d.contract_with_budget(16), Err(Error::Resource(_))));
        let big = kw_diagram(&ClassicalCode::ising_ring(13));
        assert!(matches!(big.contract(), Err(Error::Resource(_))));
    }

    #[test]
    fn dump_lists_every_spider() {
        let d = kw_diagram(&ClassicalCode::ising_ring(3));
        let text = d.to_string();
        assert_eq!(text.lines().count(), 6);
        assert_eq!(text.lines().next().unwrap(), "0 Z nbrs=[3,4] in=[0] out=[]");
        assert_eq!(text.lines().nth(3).unwrap(), "3 X nbrs=[0,2] in=[] out=[0h]");
    }
}
