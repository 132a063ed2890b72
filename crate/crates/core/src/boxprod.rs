//! Box products of Mackey and Green functors over `C_n`, presented levelwise
//! as quotients of pure tensors and formal transfer classes.
//!
//! Level `m` of `M □ N` has one ambient component per `d | m`: the tensors
//! `M(d) ⊗ N(d)`, pure when `d = m` and transfer classes `[·]_d` otherwise.
//! Components are ordered with `d = m` first, then ascending `d`; within a
//! component the tensor `e_i ⊗ f_j` has index `i·dim N(d) + j`.

use std::collections::BTreeMap;

use crate::algebra::CommAlgebra;
use crate::display::render;
use crate::error::{usage, Error, Result};
use crate::field::{Field, Scalar};
use crate::green::{GreenFunctor, NormRule};
use crate::lattice::{gcd, Lattice};
use crate::linalg::{is_zero_vector, unit_vector, vec_add, vec_axpy, vec_kron, zero_vector, Matrix, Vector};
use crate::mackey::MackeyFunctor;
use crate::presented::{GenLabel, PresentedLevel};

/// One side of a box product.
#[derive(Clone, Debug)]
pub struct BoxFactor {
    pub mackey: MackeyFunctor,
    pub green: Option<GreenFunctor>,
}

impl BoxFactor {
    pub fn mackey(m: &MackeyFunctor) -> BoxFactor {
        BoxFactor { mackey: m.clone(), green: None }
    }

    pub fn green(g: &GreenFunctor) -> BoxFactor {
        BoxFactor { mackey: g.mackey().clone(), green: Some(g.clone()) }
    }
}

#[derive(Clone, Debug)]
struct Component {
    origin: usize,
    offset: usize,
    left: usize,
    right: usize,
}

/// Ambient generator layout of one level.
#[derive(Clone, Debug)]
pub struct Layout {
    level: usize,
    comps: Vec<Component>,
    total: usize,
}

impl Layout {
    fn comp(&self, d: usize) -> &Component {
        self.comps.iter().find(|c| c.origin == d).expect("component exists")
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Ambient index of `[e_i ⊗ f_j]_d`.
    pub fn index(&self, d: usize, i: usize, j: usize) -> usize {
        let c = self.comp(d);
        c.offset + i * c.right + j
    }

    /// `(origin, offset, size)` of every component, in layout order.
    pub fn components(&self) -> Vec<(usize, usize, usize)> {
        self.comps.iter().map(|c| (c.origin, c.offset, c.left * c.right)).collect()
    }
}

/// Ambient-level operations shared by the box product and its oracles.
#[derive(Clone, Debug)]
pub struct Engine {
    field: Field,
    lattice: Lattice,
    left: BoxFactor,
    right: BoxFactor,
    layouts: BTreeMap<usize, Layout>,
    tensor_algebras: Option<BTreeMap<usize, CommAlgebra>>,
}

impl Engine {
    pub fn new(left: &BoxFactor, right: &BoxFactor) -> Result<Engine> {
        let (a, b) = (&left.mackey, &right.mackey);
        if a.field() != b.field() {
            return usage(format!("box product of functors over {} and {}", a.field(), b.field()));
        }
        if a.lattice() != b.lattice() {
            return usage("box product of functors for different groups");
        }
        let lattice = a.lattice().clone();
        let mut layouts = BTreeMap::new();
        for &m in lattice.divisors() {
            let mut origins = vec![m];
            origins.extend(lattice.divisors_of(m).into_iter().filter(|&d| d != m));
            let mut comps = Vec::new();
            let mut offset = 0;
            for d in origins {
                let (l, r) = (a.dim(d), b.dim(d));
                comps.push(Component { origin: d, offset, left: l, right: r });
                offset += l * r;
            }
            layouts.insert(m, Layout { level: m, comps, total: offset });
        }
        let tensor_algebras = match (&left.green, &right.green) {
            (Some(g), Some(h)) => Some(
                lattice.divisors().iter().map(|&d| (d, g.algebra(d).tensor(h.algebra(d)))).collect(),
            ),
            _ => None,
        };
        Ok(Engine { field: a.field().clone(), lattice, left: left.clone(), right: right.clone(), layouts, tensor_algebras })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn layout(&self, m: usize) -> &Layout {
        &self.layouts[&m]
    }

    pub fn is_green(&self) -> bool {
        self.tensor_algebras.is_some()
    }

    fn n(&self) -> usize {
        self.lattice.n()
    }

    fn block<'a>(&self, m: usize, d: usize, v: &'a [Scalar]) -> &'a [Scalar] {
        let c = self.layouts[&m].comp(d);
        &v[c.offset..c.offset + c.left * c.right]
    }

    fn add_block(&self, m: usize, d: usize, out: &mut [Scalar], z: &[Scalar]) {
        let c = self.layouts[&m].comp(d);
        let one = self.field.one();
        vec_axpy(&self.field, &mut out[c.offset..c.offset + c.left * c.right], &one, z);
    }

    /// `res ⊗ res` from `M(d) ⊗ N(d)` to `M(g) ⊗ N(g)`.
    fn res_tensor(&self, g: usize, d: usize) -> Matrix {
        self.left.mackey.res_map(g, d).kron(&self.right.mackey.res_map(g, d))
    }

    fn weyl_tensor(&self, d: usize, power: usize) -> Matrix {
        self.left.mackey.weyl_pow(d, power).kron(&self.right.mackey.weyl_pow(d, power))
    }

    /// Display names of the ambient generators of level `m`.
    pub fn names(&self, m: usize) -> Vec<String> {
        let composite = !self.lattice.is_prime_order() && self.n() > 1;
        let mut out = Vec::new();
        for c in &self.layouts[&m].comps {
            for i in 0..c.left {
                for j in 0..c.right {
                    let t = format!("{}⊗{}", self.left.mackey.labels(c.origin)[i], self.right.mackey.labels(c.origin)[j]);
                    out.push(if c.origin == m {
                        t
                    } else if composite {
                        format!("[{t}]_{}", c.origin)
                    } else {
                        format!("[{t}]")
                    });
                }
            }
        }
        out
    }

    pub fn labels(&self, m: usize) -> Vec<GenLabel> {
        let mut out = Vec::new();
        for c in &self.layouts[&m].comps {
            for i in 0..c.left {
                for j in 0..c.right {
                    out.push(GenLabel { origin: c.origin, factors: vec![i, j] });
                }
            }
        }
        out
    }

    /// Weyl and Frobenius reciprocity relations of level `m`.
    pub fn relations(&self, m: usize) -> Vec<Vector> {
        let k = &self.field;
        let n = self.n();
        let lay = &self.layouts[&m];
        let (a, b) = (&self.left.mackey, &self.right.mackey);
        let mut rows = Vec::new();
        for c in &lay.comps {
            let d = c.origin;
            if d == m {
                continue;
            }
            // the generator of C_m/C_d acts diagonally
            let w = self.weyl_tensor(d, n / m);
            for z in 0..c.left * c.right {
                let mut row = zero_vector(k, lay.total);
                let mut col = w.col(z);
                col[z] = k.sub(&col[z], &k.one());
                self.add_block(m, d, &mut row, &col);
                rows.push(row);
            }
        }
        for &(dd, d) in self.lattice.covering_pairs() {
            if !m.is_multiple_of(d) {
                continue;
            }
            let (ta, ra) = (a.tr(dd, d), a.res(dd, d));
            let (tb, rb) = (b.tr(dd, d), b.res(dd, d));
            // [tr x ⊗ y]_d − [x ⊗ res y]_dd
            for i in 0..a.dim(dd) {
                for j in 0..b.dim(d) {
                    let mut row = zero_vector(k, lay.total);
                    self.add_block(m, d, &mut row, &vec_kron(k, &ta.col(i), &unit_vector(k, b.dim(d), j)));
                    let neg = vec_kron(k, &unit_vector(k, a.dim(dd), i), &rb.col(j));
                    self.add_block(m, dd, &mut row, &neg.iter().map(|x| k.neg(x)).collect::<Vector>());
                    rows.push(row);
                }
            }
            // [x ⊗ tr y]_d − [res x ⊗ y]_dd
            for i in 0..a.dim(d) {
                for j in 0..b.dim(dd) {
                    let mut row = zero_vector(k, lay.total);
                    self.add_block(m, d, &mut row, &vec_kron(k, &unit_vector(k, a.dim(d), i), &tb.col(j)));
                    let neg = vec_kron(k, &ra.col(i), &unit_vector(k, b.dim(dd), j));
                    self.add_block(m, dd, &mut row, &neg.iter().map(|x| k.neg(x)).collect::<Vector>());
                    rows.push(row);
                }
            }
        }
        rows
    }

    /// Restriction of an ambient vector from level `m` to level `to`, by the
    /// double coset formula on each component.
    pub fn ambient_res(&self, to: usize, m: usize, v: &[Scalar]) -> Vector {
        let k = &self.field;
        let n = self.n();
        let mut out = zero_vector(k, self.layouts[&to].total);
        for c in &self.layouts[&m].comps {
            let d = c.origin;
            let z = self.block(m, d, v);
            if is_zero_vector(k, z) {
                continue;
            }
            let g = gcd(d, to);
            let count = m * g / (d * to);
            let base = self.res_tensor(g, d).apply(z);
            for j in 0..count {
                let w = self.weyl_tensor(g, (n / m) * j).apply(&base);
                self.add_block(to, g, &mut out, &w);
            }
        }
        out
    }

    /// Transfer of an ambient vector from level `m` up to level `to`: each
    /// component keeps its origin.
    pub fn ambient_tr(&self, m: usize, to: usize, v: &[Scalar]) -> Vector {
        let mut out = zero_vector(&self.field, self.layouts[&to].total);
        for c in &self.layouts[&m].comps {
            self.add_block(to, c.origin, &mut out, self.block(m, c.origin, v));
        }
        out
    }

    pub fn ambient_weyl(&self, m: usize, v: &[Scalar]) -> Vector {
        let mut out = zero_vector(&self.field, self.layouts[&m].total);
        for c in &self.layouts[&m].comps {
            let w = self.weyl_tensor(c.origin, 1).apply(self.block(m, c.origin, v));
            self.add_block(m, c.origin, &mut out, &w);
        }
        out
    }

    /// Ambient unit `1 ⊗ 1` at level `m`.
    pub fn ambient_unit(&self, m: usize) -> Result<Vector> {
        let t = self.tensor_algebras.as_ref().ok_or_else(|| Error::Usage("factors are not Green functors".into()))?;
        let mut out = zero_vector(&self.field, self.layouts[&m].total);
        self.add_block(m, m, &mut out, t[&m].unit());
        Ok(out)
    }

    /// Ambient product at level `m`: pure tensors multiply componentwise,
    /// a pure tensor acts on a class through restriction, and a class
    /// multiplies by Frobenius reciprocity `[z]_d·b = tr(z·res b)`.
    pub fn ambient_mul(&self, m: usize, u: &[Scalar], v: &[Scalar]) -> Result<Vector> {
        let t = self.tensor_algebras.as_ref().ok_or_else(|| Error::Usage("factors are not Green functors".into()))?;
        let k = &self.field;
        let mut out = zero_vector(k, self.layouts[&m].total);
        let up = self.block(m, m, u);
        if !is_zero_vector(k, up) {
            for c in &self.layouts[&m].comps {
                let e = c.origin;
                let ve = self.block(m, e, v);
                if is_zero_vector(k, ve) {
                    continue;
                }
                let r = if e == m { up.to_vec() } else { self.res_tensor(e, m).apply(up) };
                self.add_block(m, e, &mut out, &t[&e].mul(&r, ve));
            }
        }
        for c in &self.layouts[&m].comps {
            let d = c.origin;
            if d == m {
                continue;
            }
            let z = self.block(m, d, u);
            if is_zero_vector(k, z) {
                continue;
            }
            let mut zp = zero_vector(k, self.layouts[&d].total);
            self.add_block(d, d, &mut zp, z);
            let rv = self.ambient_res(d, m, v);
            let prod = self.ambient_mul(d, &zp, &rv)?;
            out = vec_add(k, &out, &self.ambient_tr(d, m, &prod));
        }
        Ok(out)
    }

    /// Tensor `x ⊗ y` of factor vectors placed in component `d` of level `m`.
    pub fn ambient_tensor(&self, m: usize, d: usize, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zero_vector(&self.field, self.layouts[&m].total);
        self.add_block(m, d, &mut out, &vec_kron(&self.field, x, y));
        out
    }

    /// Matrix of a linear ambient map, column by column.
    fn ambient_matrix(&self, from: usize, rows: usize, f: impl Fn(&[Scalar]) -> Vector) -> Matrix {
        let total = self.layouts[&from].total;
        let cols: Vec<Vector> = (0..total).map(|i| f(&unit_vector(&self.field, total, i))).collect();
        Matrix::from_cols(&self.field, rows, &cols)
    }

    /// Reduce the ambient structure to the presented levels, checking on
    /// every relation row that each map descends to the quotient.
    pub fn reduce(&self, levels: &BTreeMap<usize, PresentedLevel>) -> Result<(MackeyFunctor, Option<GreenFunctor>)> {
        let lat = &self.lattice;
        let descend = |name: &str, from: usize, to: usize, f: &dyn Fn(&[Scalar]) -> Vector| -> Result<Matrix> {
            let src = &levels[&from];
            let tgt = &levels[&to];
            for (r, row) in src.relation_rows().iter().enumerate() {
                let img = f(row);
                if !tgt.vanishes(&img) {
                    return Err(Error::Descent(format!(
                        "{name} sends relation {r} of level {from} to {}",
                        render(&self.field, &tgt.canonicalize(&img), &tgt.basis_names())
                    )));
                }
            }
            let amb = self.ambient_matrix(from, self.layouts[&to].total, f);
            Ok(tgt.canonicalize_matrix().mul(&amb).mul(&src.lift_matrix()))
        };
        let mut res = BTreeMap::new();
        let mut tr = BTreeMap::new();
        let mut weyl = BTreeMap::new();
        let mut labels = BTreeMap::new();
        for &m in lat.divisors() {
            weyl.insert(m, descend(&format!("weyl[{m}]"), m, m, &|v| self.ambient_weyl(m, v))?);
            labels.insert(m, levels[&m].basis_names());
        }
        for &(d, m) in lat.covering_pairs() {
            res.insert((d, m), descend(&format!("res[{d}←{m}]"), m, d, &|v| self.ambient_res(d, m, v))?);
            tr.insert((d, m), descend(&format!("tr[{m}←{d}]"), d, m, &|v| self.ambient_tr(d, m, v))?);
        }
        let mackey = MackeyFunctor::new(&self.field, lat, labels, res, tr, weyl)?;
        if !self.is_green() {
            return Ok((mackey, None));
        }
        let mut algebras = BTreeMap::new();
        for &m in lat.divisors() {
            let p = &levels[&m];
            let total = self.layouts[&m].total;
            let k = &self.field;
            // table[a] has column b equal to the canonical form of e_a·e_b
            let mut table = Vec::with_capacity(total);
            for a in 0..total {
                let ea = unit_vector(k, total, a);
                let cols: Result<Vec<Vector>> =
                    (0..total).map(|b| Ok(p.canonicalize(&self.ambient_mul(m, &ea, &unit_vector(k, total, b))?))).collect();
                table.push(Matrix::from_cols(k, p.dim(), &cols?));
            }
            let combine = |v: &[Scalar]| {
                let mut acc = Matrix::zeros(k, p.dim(), total);
                for (a, c) in v.iter().enumerate() {
                    if !k.is_zero(c) {
                        acc = acc.add(&table[a].scale(c));
                    }
                }
                acc
            };
            for (r, row) in p.relation_rows().iter().enumerate() {
                let left_ok = combine(row).is_zero();
                let right_ok = table.iter().all(|t| is_zero_vector(k, &t.apply(row)));
                if !left_ok || !right_ok {
                    return Err(Error::Descent(format!("multiplication at level {m}: relation {r} does not generate an ideal")));
                }
            }
            let lift = p.lift_matrix();
            let left = (0..p.dim()).map(|i| combine(&lift.col(i)).mul(&lift)).collect();
            let unit = p.canonicalize(&self.ambient_unit(m)?);
            algebras.insert(m, CommAlgebra::new(&self.field, left, unit));
        }
        let green = GreenFunctor::new(mackey.clone(), algebras)?;
        Ok((mackey, Some(green)))
    }
}

/// A box product with its presented levels and induced structure.
#[derive(Clone, Debug)]
pub struct BoxProduct {
    engine: Engine,
    levels: BTreeMap<usize, PresentedLevel>,
    functor: MackeyFunctor,
    green: Option<GreenFunctor>,
    relative: bool,
}

fn build(left: &BoxFactor, right: &BoxFactor, relative: bool) -> Result<BoxProduct> {
    let engine = Engine::new(left, right)?;
    let mut levels = BTreeMap::new();
    for &m in engine.lattice().divisors() {
        let p = PresentedLevel::new(m, engine.field(), engine.labels(m), engine.names(m), &engine.relations(m));
        levels.insert(m, p);
    }
    let (functor, green) = engine.reduce(&levels)?;
    Ok(BoxProduct { engine, levels, functor, green, relative })
}

fn require_prime_scalars(f: &Field) -> Result<()> {
    if !f.is_prime_field() {
        return usage(format!(
            "absolute box products need prime-field or rational scalars, got {f}; use the relative box over the constant functor"
        ));
    }
    Ok(())
}

/// `M □ N` of Green functors; scalars must be a prime field or `Q`.
pub fn box_product(m: &GreenFunctor, n: &GreenFunctor) -> Result<BoxProduct> {
    require_prime_scalars(m.field())?;
    build(&BoxFactor::green(m), &BoxFactor::green(n), false)
}

/// `M □ N` of Mackey functors without ring structure.
pub fn box_mackey(m: &MackeyFunctor, n: &MackeyFunctor) -> Result<BoxProduct> {
    require_prime_scalars(m.field())?;
    build(&BoxFactor::mackey(m), &BoxFactor::mackey(n), false)
}

/// `(M □ R) □ N`.
pub fn box3(m: &GreenFunctor, r: &GreenFunctor, n: &GreenFunctor) -> Result<BoxProduct> {
    let inner = box_product(m, r)?;
    let g = inner.green().cloned().expect("box of Green functors is Green");
    box_product(&g, n)
}

/// Whether `base` is the constant functor of the field of `t`.
fn is_constant_field(base: &GreenFunctor, field: &Field, lattice: &Lattice) -> bool {
    let k = field;
    base.field() == field
        && base.lattice() == lattice
        && lattice.divisors().iter().all(|&m| base.dim(m) == 1 && base.unit(m) == &vec![k.one()])
        && base.mackey().constant_module_violations().is_empty()
        && lattice.covering_pairs().iter().all(|&(d, m)| base.mackey().res(d, m).is_identity())
}

/// `T □_{K^c} T`, with every component tensor taken over `K`.
pub fn relative_box(t: &GreenFunctor, base: &GreenFunctor) -> Result<BoxProduct> {
    if !is_constant_field(base, t.field(), t.lattice()) {
        return usage("relative box requires the constant functor of the scalar field as base");
    }
    build(&BoxFactor::green(t), &BoxFactor::green(t), true)
}

impl BoxProduct {
    pub(crate) fn from_parts(
        engine: Engine,
        levels: BTreeMap<usize, PresentedLevel>,
        functor: MackeyFunctor,
        green: Option<GreenFunctor>,
        relative: bool,
    ) -> BoxProduct {
        BoxProduct { engine, levels, functor, green, relative }
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn field(&self) -> &Field {
        self.engine.field()
    }

    pub fn lattice(&self) -> &Lattice {
        self.engine.lattice()
    }

    pub fn is_relative(&self) -> bool {
        self.relative
    }

    pub fn level(&self, m: usize) -> &PresentedLevel {
        &self.levels[&m]
    }

    pub fn levels(&self) -> &BTreeMap<usize, PresentedLevel> {
        &self.levels
    }

    pub fn functor(&self) -> &MackeyFunctor {
        &self.functor
    }

    pub fn green(&self) -> Option<&GreenFunctor> {
        self.green.as_ref()
    }

    pub fn left(&self) -> &BoxFactor {
        &self.engine.left
    }

    pub fn right(&self) -> &BoxFactor {
        &self.engine.right
    }

    pub fn dim(&self, m: usize) -> usize {
        self.levels[&m].dim()
    }

    pub fn basis_names(&self, m: usize) -> Vec<String> {
        self.levels[&m].basis_names()
    }

    /// Reduced coordinates of `x ⊗ y` for factor vectors at level `m`.
    pub fn pure(&self, m: usize, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.levels[&m].canonicalize(&self.engine.ambient_tensor(m, m, x, y))
    }

    /// Reduced coordinates of the class `[x ⊗ y]_d` at level `m`.
    pub fn class(&self, m: usize, d: usize, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.levels[&m].canonicalize(&self.engine.ambient_tensor(m, d, x, y))
    }

    pub fn render(&self, m: usize, v: &[Scalar]) -> String {
        render(self.field(), v, &self.basis_names(m))
    }

    pub fn mul(&self, m: usize, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        let g = self.green.as_ref().ok_or_else(|| Error::Usage("box product has no ring structure".into()))?;
        Ok(g.mul(m, x, y))
    }

    pub fn res(&self, d: usize, m: usize, x: &[Scalar]) -> Vector {
        self.functor.res_map(d, m).apply(x)
    }

    pub fn tr(&self, d: usize, m: usize, x: &[Scalar]) -> Vector {
        self.functor.tr_map(d, m).apply(x)
    }

    /// The same product with canonical forms recomputed from pivot scan
    /// orders given per level; levels not listed keep their order.
    pub fn with_orders(&self, orders: &BTreeMap<usize, Vec<usize>>) -> Result<BoxProduct> {
        let levels: BTreeMap<usize, PresentedLevel> = self
            .levels
            .iter()
            .map(|(&m, p)| (m, orders.get(&m).map_or_else(|| p.clone(), |o| p.with_order(o))))
            .collect();
        let (functor, green) = self.engine.reduce(&levels)?;
        Ok(BoxProduct { engine: self.engine.clone(), levels, functor, green, relative: self.relative })
    }

    /// The same product with both factors swapped, and the ambient
    /// permutation that transposes factor labels at each level.
    pub fn swapped(&self) -> Result<(BoxProduct, BTreeMap<usize, Vec<usize>>)> {
        let other = build(&self.engine.right, &self.engine.left, self.relative)?;
        let mut perms = BTreeMap::new();
        for &m in self.lattice().divisors() {
            let lay = self.engine.layout(m);
            let olay = other.engine.layout(m);
            let mut perm = vec![0; lay.total()];
            for (d, _, _) in lay.components() {
                let (l, r) = (self.engine.left.mackey.dim(d), self.engine.right.mackey.dim(d));
                for i in 0..l {
                    for j in 0..r {
                        perm[lay.index(d, i, j)] = olay.index(d, j, i);
                    }
                }
            }
            perms.insert(m, perm);
        }
        Ok((other, perms))
    }
}

/// Differences between two presentations of the same box product: ambient
/// generators, relation spans, reduced bases and all induced structure.
pub fn compare(a: &BoxProduct, b: &BoxProduct) -> Vec<String> {
    let mut out = Vec::new();
    if a.lattice() != b.lattice() || a.field() != b.field() {
        return vec!["different groups or fields".into()];
    }
    for &m in a.lattice().divisors() {
        let (la, lb) = (a.level(m), b.level(m));
        if la.generator_names() != lb.generator_names() {
            out.push(format!("level {m}: ambient generators differ"));
            continue;
        }
        let (ra, rb) = (la.relation_space(), lb.relation_space());
        if !ra.is_subspace_of(&rb) || !rb.is_subspace_of(&ra) {
            out.push(format!("level {m}: relation spans differ ({} vs {})", ra.dim(), rb.dim()));
        }
        if la.representatives() != lb.representatives() {
            out.push(format!("level {m}: reduced bases differ"));
        }
    }
    if !out.is_empty() {
        return out;
    }
    if a.functor() != b.functor() {
        out.push("induced restriction, transfer or Weyl action differ".into());
    }
    match (a.green(), b.green()) {
        (Some(x), Some(y)) => {
            for &m in a.lattice().divisors() {
                if x.algebra(m) != y.algebra(m) {
                    out.push(format!("level {m}: multiplication differs"));
                }
            }
        }
        (None, None) => {}
        _ => out.push("only one side has ring structure".into()),
    }
    out
}

/// Check `M □ N ≅ N □ M` through the factor swap, which must descend to an
/// isomorphism of the induced functors and, if present, of the rings.
pub fn symmetry_violations(b: &BoxProduct) -> Result<Vec<String>> {
    let (other, perms) = b.swapped()?;
    let k = b.field();
    let mut comps = BTreeMap::new();
    let mut out = Vec::new();
    for &m in b.lattice().divisors() {
        let (src, tgt) = (b.level(m), other.level(m));
        let total = src.ambient_dim();
        let p = Matrix::from_fn(k, total, total, |i, j| if perms[&m][j] == i { k.one() } else { k.zero() });
        for row in src.relation_rows() {
            if !tgt.vanishes(&p.apply(&row)) {
                out.push(format!("level {m}: swap does not preserve relations"));
                break;
            }
        }
        comps.insert(m, tgt.canonicalize_matrix().mul(&p).mul(&src.lift_matrix()));
    }
    let phi = crate::mackey::MackeyMorphism::new(comps);
    out.extend(phi.verify_iso(b.functor(), other.functor()).iter().map(|v| v.to_string()));
    if let (Some(g), Some(h)) = (b.green(), other.green()) {
        for &m in b.lattice().divisors() {
            let f = phi.component(m);
            let d = g.dim(m);
            if &f.apply(g.unit(m)) != h.unit(m) {
                out.push(format!("level {m}: swap does not preserve the unit"));
            }
            for i in 0..d {
                for j in 0..d {
                    let (x, y) = (unit_vector(k, d, i), unit_vector(k, d, j));
                    if f.apply(&g.mul(m, &x, &y)) != h.mul(m, &f.apply(&x), &f.apply(&y)) {
                        out.push(format!("level {m}: swap is not multiplicative"));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Tambara norm `level 1 → level 2` on a `C_2` box product, computed from
/// factorwise norms of pure tensors and
/// `norm(x + y) = norm(x) + norm(y) + tr(x·τy)`.
///
/// The element is expanded in three different pure-tensor decompositions;
/// they must agree.
pub fn norm_on_c2_box(b: &BoxProduct, rules: (NormRule, NormRule), x: &[Scalar]) -> Result<Vector> {
    if b.lattice().n() != 2 {
        return Err(Error::Unsupported("norms on box products are only implemented for C_2".into()));
    }
    let (gl, gr) = match (&b.left().green, &b.right().green) {
        (Some(l), Some(r)) => (l, r),
        _ => return usage("norm needs Green factors"),
    };
    let k = b.field();
    let (dl, dr) = (gl.dim(1), gr.dim(1));
    if x.len() != dl * dr {
        return usage("element must live at the free level");
    }
    let by_basis: Vec<(Vector, Vector)> = (0..dl)
        .flat_map(|i| (0..dr).map(move |j| (i, j)))
        .filter(|&(i, j)| !k.is_zero(&x[i * dr + j]))
        .map(|(i, j)| (crate::linalg::vec_scale(k, &x[i * dr + j], &unit_vector(k, dl, i)), unit_vector(k, dr, j)))
        .collect();
    let by_left: Vec<(Vector, Vector)> = (0..dl)
        .map(|i| (unit_vector(k, dl, i), x[i * dr..(i + 1) * dr].to_vec()))
        .filter(|(_, y)| !is_zero_vector(k, y))
        .collect();
    let by_right: Vec<(Vector, Vector)> = (0..dr)
        .map(|j| ((0..dl).map(|i| x[i * dr + j].clone()).collect::<Vector>(), unit_vector(k, dr, j)))
        .filter(|(u, _)| !is_zero_vector(k, u))
        .collect();
    let eval = |terms: &[(Vector, Vector)]| -> Result<Vector> {
        let tau = b.functor().weyl(1);
        let mut acc = vec![k.zero(); b.dim(2)];
        let mut rest = vec![k.zero(); b.dim(1)];
        // add terms from the back: norm(t + rest) = norm(t) + norm(rest) + tr(t·τ rest)
        for (u, v) in terms.iter().rev() {
            let nu = rules.0.evaluate(gl, 1, 2, u)?;
            let nv = rules.1.evaluate(gr, 1, 2, v)?;
            let t = b.pure(1, u, v);
            let cross = b.tr(1, 2, &b.mul(1, &t, &tau.apply(&rest))?);
            acc = vec_add(k, &vec_add(k, &acc, &b.pure(2, &nu, &nv)), &cross);
            rest = vec_add(k, &rest, &t);
        }
        Ok(acc)
    };
    let first = eval(&by_basis)?;
    let mut reversed = by_basis.clone();
    reversed.reverse();
    for other in [eval(&reversed)?, eval(&by_left)?, eval(&by_right)?] {
        if other != first {
            return Err(Error::Internal("norm depends on the pure-tensor decomposition".into()));
        }
    }
    Ok(first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::{build_extension, ExtensionSpec};
    use crate::green::{constant_field, fix_functor};

    fn artin_schreier_fix() -> GreenFunctor {
        let k = Field::prime(2).unwrap();
        fix_functor(&build_extension(&k, &ExtensionSpec::ArtinSchreier { a: k.one() }).unwrap()).unwrap().0
    }

    #[test]
    fn artin_schreier_square_fixed_level() {
        let t = artin_schreier_fix();
        let b = box_product(&t, &t).unwrap();
        assert_eq!(b.dim(2), 2);
        assert_eq!(b.basis_names(2), vec!["1⊗1", "[α⊗α]"]);
        assert_eq!(b.dim(1), 4);
        assert!(b.functor().check_axioms().is_empty());
        assert!(b.green().unwrap().check_green().is_empty());
    }

    #[test]
    fn constant_box_dimensions() {
        for p in [2, 3, 5] {
            let k = Field::prime(p).unwrap();
            for n in [2, 3, 4, 6] {
                let c = constant_field(&k, &Lattice::new(n).unwrap());
                let b = box_product(&c, &c).unwrap();
                assert!(b.functor().check_axioms().is_empty());
                assert!(b.green().unwrap().check_green().is_empty());
                assert!(b.functor().dims().iter().all(|&d| d == 1), "p = {p}, n = {n}");
            }
        }
    }

    #[test]
    fn extension_scalars_need_relative_box() {
        let f4 = Field::extension(2, vec![1, 1, 1]).unwrap();
        let c = constant_field(&f4, &Lattice::new(2).unwrap());
        assert!(matches!(box_product(&c, &c), Err(Error::Usage(_))));
        assert!(relative_box(&c, &c).is_ok());
    }

    #[test]
    fn mixed_lattices_rejected() {
        let k = Field::prime(3).unwrap();
        let a = constant_field(&k, &Lattice::new(2).unwrap());
        let b = constant_field(&k, &Lattice::new(4).unwrap());
        assert!(box_product(&a, &b).is_err());
    }

    fn kummer_fix(p: u64, n: usize, a: i64, z: i64) -> GreenFunctor {
        let k = Field::prime(p).unwrap();
        let ext = build_extension(&k, &ExtensionSpec::Kummer { n, a: k.from_int(a), zeta: k.from_int(z) }).unwrap();
        fix_functor(&ext).unwrap().0
    }

    fn e(k: &Field, n: usize, i: usize) -> Vector {
        unit_vector(k, n, i)
    }

    #[test]
    fn artin_schreier_structure_maps() {
        let t = artin_schreier_fix();
        let k = t.field().clone();
        let b = box_product(&t, &t).unwrap();
        let aa = b.class(2, 1, &e(&k, 2, 1), &e(&k, 2, 1));
        assert_eq!(b.render(1, &b.res(1, 2, &aa)), "1⊗1 + 1⊗α + α⊗1");
        assert_eq!(b.render(2, &b.tr(1, 2, &b.pure(1, &e(&k, 2, 0), &e(&k, 2, 1)))), "1⊗1");
        let u = vec_add(&k, &b.pure(2, &[k.one()], &[k.one()]), &aa);
        assert_eq!(b.mul(2, &u, &u).unwrap(), u);
        assert!(symmetry_violations(&b).unwrap().is_empty());
    }

    #[test]
    fn kummer_structure_maps() {
        let t = kummer_fix(5, 2, 2, 4);
        let k = t.field().clone();
        let b = box_product(&t, &t).unwrap();
        assert_eq!(b.basis_names(2), vec!["1⊗1", "[α⊗α]"]);
        let aa = b.class(2, 1, &e(&k, 2, 1), &e(&k, 2, 1));
        assert_eq!(b.render(1, &b.res(1, 2, &aa)), "2·α⊗α");
        assert_eq!(b.render(2, &b.tr(1, 2, &b.pure(1, &e(&k, 2, 0), &e(&k, 2, 0)))), "2·1⊗1");
        // [α⊗α]² = tr(α⊗α · 2α⊗α) = 2a²·tr(1⊗1) = 4a²
        assert_eq!(b.render(2, &b.mul(2, &aa, &aa).unwrap()), "1⊗1");
    }

    #[test]
    fn kummer_order_four_ambient_dims() {
        let t = kummer_fix(5, 4, 2, 2);
        let b = box_product(&t, &t).unwrap();
        let dims: Vec<usize> = b.engine().layout(4).components().iter().map(|c| c.2).collect();
        assert_eq!(dims, vec![1, 16, 4]);
        assert!(b.functor().check_axioms().is_empty());
        assert!(b.green().unwrap().check_green().is_empty());
        assert!(symmetry_violations(&b).unwrap().is_empty());
    }

    #[test]
    fn triple_box_artin_schreier() {
        let t = artin_schreier_fix();
        let k = t.field().clone();
        let c = constant_field(&k, t.lattice());
        let b = box3(&t, &c, &t).unwrap();
        assert_eq!(b.basis_names(2), vec!["1⊗1⊗1", "[α⊗1⊗α]"]);
        let x = b.level(2).generator(b.level(2).generator_names().iter().position(|s| s == "[α⊗1⊗α]").unwrap());
        assert_eq!(b.render(1, &b.res(1, 2, &x)), "1⊗1⊗1 + 1⊗1⊗α + α⊗1⊗1");
    }

    #[test]
    fn triple_box_kummer_transfers() {
        let t = kummer_fix(5, 2, 2, 4);
        let k = t.field().clone();
        let c = constant_field(&k, t.lattice());
        let b = box3(&t, &c, &t).unwrap();
        let names = b.level(1).generator_names().to_vec();
        let g = |s: &str| b.level(1).generator(names.iter().position(|x| x == s).unwrap());
        assert_eq!(b.render(2, &b.tr(1, 2, &g("1⊗1⊗1"))), "2·1⊗1⊗1");
        assert_eq!(b.render(2, &b.tr(1, 2, &g("α⊗1⊗1"))), "0");
    }

    #[test]
    fn norms_on_c2_boxes() {
        let t = artin_schreier_fix();
        let k = t.field().clone();
        let b = box_product(&t, &t).unwrap();
        let x = vec_add(&k, &b.pure(1, &e(&k, 2, 0), &e(&k, 2, 1)), &b.pure(1, &e(&k, 2, 1), &e(&k, 2, 0)));
        let nx = norm_on_c2_box(&b, (NormRule::FixedPoint, NormRule::FixedPoint), &x).unwrap();
        assert_eq!(b.render(2, &nx), "1⊗1 + [α⊗α]");

        let t = kummer_fix(5, 2, 2, 4);
        let k = t.field().clone();
        let b = box_product(&t, &t).unwrap();
        let x = crate::linalg::vec_sub(&k, &b.pure(1, &e(&k, 2, 0), &e(&k, 2, 1)), &b.pure(1, &e(&k, 2, 1), &e(&k, 2, 0)));
        let nx = norm_on_c2_box(&b, (NormRule::FixedPoint, NormRule::FixedPoint), &x).unwrap();
        // norm(1⊗α) = 1⊗(−a), norm(−α⊗1) = −a, cross term tr(1⊗α · α⊗1) = [α⊗α]
        assert_eq!(b.render(2, &nx), "1⊗1 + [α⊗α]");
        // independent route: res of the norm is the product of the two conjugates
        let tau = b.functor().weyl(1).apply(&x);
        assert_eq!(b.res(1, 2, &nx), b.mul(1, &x, &tau).unwrap());
    }
}
