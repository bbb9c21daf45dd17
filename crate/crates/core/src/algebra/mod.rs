//! Basic algebras `kQ/I` given by bound quivers over a prime field.
//!
//! Paths are stored as arrow lists in the order the arrows are applied.
//! Multiplication is function-style: `x * y` means "first `y`, then `x`",
//! so `e_v A e_w` is spanned by paths from `w` to `v`, the projective
//! `A e_v` by paths starting at `v`, and `Hom(A e_a, A e_b) = e_a A e_b`
//! acting by right multiplication.

mod nakayama;
mod presentation;

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix, PrimeField};

pub use nakayama::Nakayama;
pub use presentation::{fixtures, Arrow, QuiverPresentation, Term};
pub use presentation::TermDoc;

/// Paths longer than this many are refused when enumerating the path space.
const MAX_PATHS: usize = 200_000;

/// A path in the quiver. Trivial paths have no arrows and equal endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Self { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Sparse vector in the path basis.
type Sparse = Vec<(usize, u64)>;

pub struct Algebra {
    pres: QuiverPresentation,
    field: PrimeField,
    basis: Vec<Path>,
    normal_forms: HashMap<Path, Sparse>,
    table: Vec<Sparse>,
    blocks: Vec<Vec<usize>>,
    pos_in_block: Vec<usize>,
    trivial: Vec<usize>,
    arrow_basis: Vec<usize>,
    nakayama: OnceLock<Option<Nakayama>>,
    symmetric: OnceLock<bool>,
    opposite: OnceLock<Arc<Algebra>>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Algebra(dim {}, {:?}, {} vertices)", self.dim(), self.field, self.num_vertices())
    }
}

/// Build `kQ/I` from a presentation. Computes the span of `I` among paths of
/// length at most `N`, a path basis of the quotient, structure constants,
/// and the Nakayama data when the algebra is self-injective.
pub fn build_algebra(q: &QuiverPresentation) -> Result<Arc<Algebra>> {
    let alg = Arc::new(Algebra::build_core(q)?);
    let nak = nakayama::compute(&alg, false)?;
    let _ = alg.nakayama.set(nak);
    let sym = nakayama::compute_symmetric(&alg);
    let _ = alg.symmetric.set(sym);
    if sym {
        let nak = alg.nakayama.get().and_then(|n| n.as_ref());
        assert!(
            nak.is_some_and(|n| n.perm.iter().enumerate().all(|(i, &j)| i == j)),
            "symmetric algebra with non-identity Nakayama permutation"
        );
        let mut fresh = Arc::new(Algebra::build_core(q)?);
        let id = Nakayama::identity(&fresh);
        let m = Arc::get_mut(&mut fresh).expect("unshared");
        let _ = m.nakayama.set(Some(id));
        let _ = m.symmetric.set(true);
        return Ok(fresh);
    }
    Ok(alg)
}

/// Like [`build_algebra`], but transports the Nakayama functor through a
/// different choice of isomorphisms `D(e_v A) -> A e_pi(v)`. Symmetric
/// algebras are not normalized to the identity here.
pub fn build_algebra_alternate(q: &QuiverPresentation) -> Result<Arc<Algebra>> {
    let alg = Arc::new(Algebra::build_core(q)?);
    let nak = nakayama::compute(&alg, true)?;
    let _ = alg.nakayama.set(nak);
    let sym = nakayama::compute_symmetric(&alg);
    let _ = alg.symmetric.set(sym);
    Ok(alg)
}

impl Algebra {
    fn build_core(q: &QuiverPresentation) -> Result<Self> {
        q.validate()?;
        let field = PrimeField::new(q.prime)?;
        let n_bound = q.nilpotency_bound;
        let nv = q.vertices.len();

        // all paths of length <= N
        let mut paths: Vec<Path> = (0..nv).map(Path::trivial).collect();
        let mut frontier = paths.clone();
        for _ in 0..n_bound {
            let mut next = Vec::new();
            for p in &frontier {
                for (ai, a) in q.arrows.iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path { source: p.source, target: a.target, arrows });
                    }
                }
            }
            paths.extend(next.iter().cloned());
            if paths.len() > MAX_PATHS {
                return Err(Error::Invalid(format!("more than {MAX_PATHS} paths of length <= {n_bound}")));
            }
            frontier = next;
        }
        // longest first, so elimination pivots on long paths
        paths.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let col: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let ncols = paths.len();

        let mut by_target: Vec<Vec<&Path>> = vec![Vec::new(); nv];
        let mut by_source: Vec<Vec<&Path>> = vec![Vec::new(); nv];
        for p in &paths {
            by_target[p.target].push(p);
            by_source[p.source].push(p);
        }

        let mut ideal = Echelon::new(field, ncols);
        for rel in &q.relations {
            let Some((s, t)) = rel.first().and_then(|term| q.path_endpoints(&term.path)) else {
                continue;
            };
            let min_len = rel.iter().map(|t| t.path.len()).min().unwrap_or(0);
            for before in &by_target[s] {
                for after in &by_source[t] {
                    if before.len() + after.len() + 2 > n_bound || before.len() + after.len() + min_len > n_bound {
                        continue;
                    }
                    let mut v = vec![0u64; ncols];
                    for term in rel {
                        let total = before.len() + term.path.len() + after.len();
                        if total > n_bound {
                            continue;
                        }
                        let mut arrows = before.arrows.clone();
                        arrows.extend(&term.path);
                        arrows.extend(&after.arrows);
                        let p = Path { source: before.source, target: after.target, arrows };
                        let c = col[&p];
                        v[c] = field.add(v[c], field.from_i64(term.coeff));
                    }
                    ideal.insert(&v);
                }
            }
        }

        let mut pivot_row: HashMap<usize, Vec<u64>> = HashMap::new();
        for (pc, row) in ideal.rows() {
            pivot_row.insert(pc, row.to_vec());
        }
        for (c, p) in paths.iter().enumerate() {
            if p.len() == n_bound && !pivot_row.contains_key(&c) {
                return Err(Error::Admissibility(format!(
                    "path {} of length {n_bound} is not in the ideal",
                    q.path_name(&p.arrows)
                )));
            }
        }

        let mut basis: Vec<Path> =
            paths.iter().enumerate().filter(|(c, _)| !pivot_row.contains_key(c)).map(|(_, p)| p.clone()).collect();
        basis.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let basis_index: HashMap<&Path, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();

        let mut normal_forms = HashMap::new();
        for (c, p) in paths.iter().enumerate() {
            if p.len() >= n_bound {
                continue;
            }
            let nf: Sparse = match pivot_row.get(&c) {
                None => vec![(basis_index[p], 1)],
                Some(row) => {
                    let mut out: Sparse = row
                        .iter()
                        .enumerate()
                        .filter(|&(j, &x)| x != 0 && j != c)
                        .map(|(j, &x)| (basis_index[&paths[j]], field.neg(x)))
                        .collect();
                    out.sort();
                    out
                }
            };
            normal_forms.insert(p.clone(), nf);
        }

        let dim = basis.len();
        let mut blocks = vec![Vec::new(); nv * nv];
        let mut pos_in_block = vec![0; dim];
        for (i, b) in basis.iter().enumerate() {
            let blk = &mut blocks[b.target * nv + b.source];
            pos_in_block[i] = blk.len();
            blk.push(i);
        }
        let trivial = (0..nv).map(|v| basis_index[&Path::trivial(v)]).collect();
        let arrow_basis = q
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| basis_index[&Path { source: a.source, target: a.target, arrows: vec![ai] }])
            .collect();

        let mut alg = Self {
            pres: q.clone(),
            field,
            basis,
            normal_forms,
            table: Vec::new(),
            blocks,
            pos_in_block,
            trivial,
            arrow_basis,
            nakayama: OnceLock::new(),
            symmetric: OnceLock::new(),
            opposite: OnceLock::new(),
        };
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let (bi, bj) = (&alg.basis[i], &alg.basis[j]);
                if bi.source != bj.target {
                    table.push(Vec::new());
                    continue;
                }
                let mut arrows = bj.arrows.clone();
                arrows.extend(&bi.arrows);
                let p = Path { source: bj.source, target: bi.target, arrows };
                table.push(alg.normal_form(&p));
            }
        }
        alg.table = table;
        alg.check_associative()?;
        Ok(alg)
    }

    fn normal_form(&self, p: &Path) -> Sparse {
        if p.len() >= self.pres.nilpotency_bound {
            return Vec::new();
        }
        self.normal_forms[p].clone()
    }

    fn check_associative(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let (x, y, z) = (self.basis_elem(i), self.basis_elem(j), self.basis_elem(k));
                    if self.mul(&self.mul(&x, &y), &z) != self.mul(&x, &self.mul(&y, &z)) {
                        return Err(Error::Invalid(format!("structure constants not associative at ({i},{j},{k})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn presentation(&self) -> &QuiverPresentation {
        &self.pres
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.pres.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.pres.arrows.len()
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.pres.vertices[v]
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.pres.arrows[a]
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn nilpotency_bound(&self) -> usize {
        self.pres.nilpotency_bound
    }

    /// Basis indices spanning `e_v A e_w` (paths from `w` to `v`).
    pub fn block(&self, v: usize, w: usize) -> &[usize] {
        &self.blocks[v * self.num_vertices() + w]
    }

    pub fn block_dim(&self, v: usize, w: usize) -> usize {
        self.block(v, w).len()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.dim()]
    }

    pub fn one(&self) -> Vec<u64> {
        let mut x = self.zero();
        for &i in &self.trivial {
            x[i] = 1;
        }
        x
    }

    pub fn basis_elem(&self, i: usize) -> Vec<u64> {
        let mut x = self.zero();
        x[i] = 1;
        x
    }

    pub fn idempotent(&self, v: usize) -> Vec<u64> {
        self.basis_elem(self.trivial[v])
    }

    pub fn idempotent_index(&self, v: usize) -> usize {
        self.trivial[v]
    }

    pub fn arrow_elem(&self, a: usize) -> Vec<u64> {
        self.basis_elem(self.arrow_basis[a])
    }

    pub fn arrow_index(&self, a: usize) -> usize {
        self.arrow_basis[a]
    }

    /// Structure constants of `b_i * b_j` as a sparse vector.
    pub fn product_of_basis(&self, i: usize, j: usize) -> &[(usize, u64)] {
        &self.table[i * self.dim() + j]
    }

    /// `x * y`: first `y`, then `x`.
    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let mut out = self.zero();
        self.mul_acc(&mut out, x, y, 1);
        out
    }

    /// `acc += c * x * y`.
    pub fn mul_acc(&self, acc: &mut [u64], x: &[u64], y: &[u64], c: u64) {
        let f = self.field;
        let d = self.dim();
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let cx = f.mul(c, xi);
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let cxy = f.mul(cx, yj);
                for &(k, s) in &self.table[i * d + j] {
                    acc[k] = f.add(acc[k], f.mul(cxy, s));
                }
            }
        }
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(&a, &b)| self.field.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(&a, &b)| self.field.sub(a, b)).collect()
    }

    pub fn scale(&self, x: &[u64], c: u64) -> Vec<u64> {
        x.iter().map(|&a| self.field.mul(a, c)).collect()
    }

    pub fn is_zero(x: &[u64]) -> bool {
        x.iter().all(|&a| a == 0)
    }

    /// Coefficient of the trivial path `e_v`.
    pub fn e_coeff(&self, x: &[u64], v: usize) -> u64 {
        x[self.trivial[v]]
    }

    /// Whether `x` lies in the arrow ideal.
    pub fn is_radical(&self, x: &[u64]) -> bool {
        self.trivial.iter().all(|&i| x[i] == 0)
    }

    pub fn in_block(&self, x: &[u64], v: usize, w: usize) -> bool {
        x.iter().enumerate().all(|(i, &c)| c == 0 || (self.basis[i].target == v && self.basis[i].source == w))
    }

    /// Coordinates of `x` in the basis of `e_v A e_w` (entries outside are ignored).
    pub fn block_coords(&self, x: &[u64], v: usize, w: usize) -> Vec<u64> {
        self.block(v, w).iter().map(|&i| x[i]).collect()
    }

    pub fn from_block_coords(&self, v: usize, w: usize, c: &[u64]) -> Vec<u64> {
        let mut x = self.zero();
        for (&i, &ci) in self.block(v, w).iter().zip(c) {
            x[i] = ci;
        }
        x
    }

    /// Position of basis element `i` inside its block.
    pub fn position_in_block(&self, i: usize) -> usize {
        self.pos_in_block[i]
    }

    /// Element represented by a path given in application order; trivial
    /// paths need the vertex.
    pub fn path_elem(&self, arrows: &[usize], vertex: usize) -> Result<Vec<u64>> {
        let p = if arrows.is_empty() {
            Path::trivial(vertex)
        } else {
            let (s, t) = self
                .pres
                .path_endpoints(arrows)
                .ok_or_else(|| Error::Invalid(format!("path {} is not composable", self.pres.path_name(arrows))))?;
            Path { source: s, target: t, arrows: arrows.to_vec() }
        };
        let mut x = self.zero();
        for (i, c) in self.normal_form(&p) {
            x[i] = c;
        }
        Ok(x)
    }

    /// Inverse of `x` in the local ring `e_v A e_v`, when the `e_v`
    /// coefficient is nonzero.
    pub fn corner_inverse(&self, x: &[u64], v: usize) -> Option<Vec<u64>> {
        let f = self.field;
        let c = self.e_coeff(x, v);
        if c == 0 || !self.in_block(x, v, v) {
            return None;
        }
        // x = c (e_v + r), x^-1 = c^-1 sum (-r)^k
        let ci = f.inv(c);
        let mut minus_r = self.scale(x, f.neg(ci));
        minus_r[self.trivial[v]] = 0;
        let e = self.idempotent(v);
        let mut sum = e.clone();
        let mut pow = e;
        for _ in 1..self.nilpotency_bound() {
            pow = self.mul(&pow, &minus_r);
            if Self::is_zero(&pow) {
                break;
            }
            sum = self.add(&sum, &pow);
        }
        Some(self.scale(&sum, ci))
    }

    /// Matrix of `y -> x * y` on the whole algebra, columns indexed by the
    /// basis of the input.
    pub fn left_mult_matrix(&self, x: &[u64]) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(self.field, d, d);
        for j in 0..d {
            let prod = self.mul(x, &self.basis_elem(j));
            for (i, c) in prod.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// Matrix of `y -> y * x` on the whole algebra.
    pub fn right_mult_matrix(&self, x: &[u64]) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(self.field, d, d);
        for j in 0..d {
            let prod = self.mul(&self.basis_elem(j), x);
            for (i, c) in prod.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// `dim e_v A e_w` for all `v, w`.
    pub fn cartan_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        (0..n).map(|v| (0..n).map(|w| self.block_dim(v, w)).collect()).collect()
    }

    /// Basis indices of the radical (paths of length at least one).
    pub fn radical_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.basis[i].is_trivial()).collect()
    }

    /// Smallest `L` with `rad^L = 0`.
    pub fn loewy_length(&self) -> usize {
        let d = self.dim();
        let rad: Vec<Vec<u64>> = self.radical_basis().into_iter().map(|i| self.basis_elem(i)).collect();
        let mut layer = rad.clone();
        let mut l = 1;
        while !layer.is_empty() {
            let mut next = Echelon::new(self.field, d);
            for x in &layer {
                for a in 0..self.num_arrows() {
                    next.insert(&self.mul(&self.arrow_elem(a), x));
                }
            }
            layer = next.rows().map(|(_, r)| r.to_vec()).collect();
            l += 1;
        }
        l
    }

    /// Every indecomposable projective has dimension at least two.
    pub fn has_no_semisimple_summand(&self) -> bool {
        (0..self.num_vertices()).all(|v| (0..self.num_vertices()).map(|u| self.block_dim(u, v)).sum::<usize>() >= 2)
    }

    pub fn nakayama(&self) -> Option<&Nakayama> {
        self.nakayama.get().and_then(|n| n.as_ref())
    }

    pub fn is_self_injective(&self) -> bool {
        self.nakayama().is_some()
    }

    pub fn nakayama_permutation(&self) -> Option<&[usize]> {
        self.nakayama().map(|n| n.perm.as_slice())
    }

    pub fn is_symmetric(&self) -> bool {
        *self.symmetric.get().unwrap_or(&false)
    }

    pub fn require_self_injective(&self) -> Result<&Nakayama> {
        self.nakayama().ok_or(Error::NotSelfInjective)
    }

    /// `nu` on `Hom(A e_i, A e_j) = e_i A e_j`, landing in `e_pi(i) A e_pi(j)`.
    pub fn nakayama_on_hom(&self, i: usize, j: usize, x: &[u64]) -> Result<Vec<u64>> {
        let nak = self.require_self_injective()?;
        Ok(nak.apply(self, i, j, x, false))
    }

    /// Inverse of [`Self::nakayama_on_hom`]: takes `x` in `e_i A e_j` to
    /// `e_pi^-1(i) A e_pi^-1(j)`.
    pub fn nakayama_inverse_on_hom(&self, i: usize, j: usize, x: &[u64]) -> Result<Vec<u64>> {
        let nak = self.require_self_injective()?;
        Ok(nak.apply(self, i, j, x, true))
    }

    /// The opposite algebra, built once on demand.
    pub fn opposite(&self) -> Arc<Algebra> {
        self.opposite
            .get_or_init(|| {
                let q = self.pres.opposite();
                let core = Algebra::build_core(&q).expect("opposite of a valid presentation is valid");
                Arc::new(core)
            })
            .clone()
    }

    /// Sum of terms `(coeff, path)` in application order, located in
    /// `e_v A e_w`; an empty path denotes `e_v` (requires `v == w`).
    pub fn elem_from_terms(&self, terms: &[(i64, Vec<usize>)], v: usize, w: usize) -> Result<Vec<u64>> {
        let mut x = self.zero();
        for (c, path) in terms {
            if path.is_empty() && v != w {
                return Err(Error::Invalid("trivial path between distinct vertices".into()));
            }
            let y = self.path_elem(path, v)?;
            if !path.is_empty() {
                let (s, t) = self.pres.path_endpoints(path).expect("checked by path_elem");
                if s != w || t != v {
                    return Err(Error::Invalid(format!(
                        "path {} does not run from {} to {}",
                        self.pres.path_name(path),
                        self.vertex_label(w),
                        self.vertex_label(v)
                    )));
                }
            }
            let c = self.field.from_i64(*c);
            x = self.add(&x, &self.scale(&y, c));
        }
        Ok(x)
    }

    pub(crate) fn elem_from_docs(&self, terms: &[TermDoc], v: usize, w: usize) -> Result<Vec<u64>> {
        let mut parsed = Vec::new();
        for t in terms {
            let path = t
                .path
                .iter()
                .map(|n| self.pres.arrow_index(n).ok_or_else(|| Error::Parse(format!("unknown arrow {n:?}"))))
                .collect::<Result<Vec<_>>>()?;
            parsed.push((t.coeff, path));
        }
        self.elem_from_terms(&parsed, v, w)
    }

    pub(crate) fn elem_to_docs(&self, x: &[u64]) -> Vec<TermDoc> {
        x.iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| TermDoc {
                coeff: self.field.signed(c),
                path: self.basis[i].arrows.iter().map(|&a| self.pres.arrows[a].name.clone()).collect(),
            })
            .collect()
    }

    /// Human-readable form such as `2*t*t + e1`.
    pub fn format_elem(&self, x: &[u64]) -> String {
        let mut s = String::new();
        for (i, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push_str(" + ");
            }
            let b = &self.basis[i];
            let name = if b.is_trivial() {
                format!("e{}", self.vertex_label(b.source))
            } else {
                self.pres.path_name(&b.arrows)
            };
            if c == 1 {
                let _ = write!(s, "{name}");
            } else {
                let _ = write!(s, "{}*{name}", self.field.signed(c));
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

/// Whether two handles denote the same algebra.
pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || a.pres == b.pres
}
