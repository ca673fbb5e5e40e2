//! Finite-dimensional kG-modules as matrix representations.
//!
//! A module stores one invertible matrix per group element; validation
//! at construction checks the identity acts trivially and that the
//! action respects the full multiplication table. Groups are tiny, so
//! per-element storage makes composition, restriction and induction
//! plain table lookups.
//!
//! Basis conventions (the paper leaves these open): submodules carry a
//! fresh basis from deterministic elimination together with an explicit
//! embedding map; induced modules are indexed coset-major.

use crate::exactlin::{Matrix, PrimeField, RowSpace};
use crate::groups::{Group, Subgroup};
use crate::Error;
use std::sync::Arc;

/// A finite-dimensional kG-module given by its matrix action.
#[derive(Debug, Clone, PartialEq)]
pub struct Module {
    group: Arc<Group>,
    field: PrimeField,
    dim: usize,
    action: Vec<Matrix>,
}

impl Module {
    /// Validates the action table: identity acts as I and
    /// action(g) action(h) = action(gh) for all pairs.
    pub fn new(group: Arc<Group>, field: PrimeField, action: Vec<Matrix>) -> Result<Self, Error> {
        let n = group.order();
        if action.len() != n {
            return Err(Error::InvalidModule(format!(
                "need {n} matrices, got {}",
                action.len()
            )));
        }
        let dim = action[0].rows();
        for (g, m) in action.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidModule(format!("matrix for element {g} is not {dim}x{dim}")));
            }
            if m.field() != field {
                return Err(Error::InvalidModule("field mismatch in action".into()));
            }
        }
        if action[0] != Matrix::identity(field, dim) {
            return Err(Error::InvalidModule("identity does not act trivially".into()));
        }
        for g in 0..n {
            for h in 0..n {
                if action[g].mul(&action[h])? != action[group.mul(g, h)] {
                    return Err(Error::InvalidModule(format!(
                        "action({g}) action({h}) != action({g}{h})"
                    )));
                }
            }
        }
        Ok(Module {
            group,
            field,
            dim,
            action,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, g: usize) -> &Matrix {
        &self.action[g]
    }

    pub fn same_ambient(&self, other: &Module) -> bool {
        self.field == other.field && self.group.table() == other.group.table()
    }

    /// Sum of all group elements acting on the module. Its rank counts
    /// the free direct summands.
    pub fn norm_matrix(&self) -> Matrix {
        let mut acc = Matrix::zero(self.field, self.dim, self.dim);
        for m in &self.action {
            acc = acc.add(m).unwrap();
        }
        acc
    }
}

/// A kG-linear map between modules over the same group and field.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    mat: Matrix,
}

impl ModuleMap {
    /// Validates the intertwiner condition against every group element.
    pub fn new(source: Module, target: Module, mat: Matrix) -> Result<Self, Error> {
        if !source.same_ambient(&target) {
            return Err(Error::Mismatch("module map across different groups or fields".into()));
        }
        if mat.rows() != target.dim() || mat.cols() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "map matrix is {}x{}, expected {}x{}",
                mat.rows(),
                mat.cols(),
                target.dim(),
                source.dim()
            )));
        }
        for g in 0..source.group().order() {
            if mat.mul(source.action(g))? != target.action(g).mul(&mat)? {
                return Err(Error::InvalidModule(format!(
                    "matrix does not intertwine element {g}"
                )));
            }
        }
        Ok(ModuleMap {
            source,
            target,
            mat,
        })
    }

    pub fn zero(source: Module, target: Module) -> Result<Self, Error> {
        let mat = Matrix::zero(source.field(), target.dim(), source.dim());
        Self::new(source, target, mat)
    }

    pub fn identity(module: Module) -> Self {
        let mat = Matrix::identity(module.field(), module.dim());
        ModuleMap {
            source: module.clone(),
            target: module,
            mat,
        }
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn mat(&self) -> &Matrix {
        &self.mat
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    /// self after other: (self ∘ other)(x) = self(other(x)).
    pub fn compose(&self, other: &ModuleMap) -> Result<ModuleMap, Error> {
        if other.target.dim() != self.source.dim() || !other.target.same_ambient(&self.source) {
            return Err(Error::Mismatch("composition target/source mismatch".into()));
        }
        Ok(ModuleMap {
            source: other.source.clone(),
            target: self.target.clone(),
            mat: self.mat.mul(&other.mat)?,
        })
    }

    /// The dual map f*: N* -> M*, acting by the transpose.
    pub fn dual(&self) -> ModuleMap {
        ModuleMap {
            source: dual(&self.target),
            target: dual(&self.source),
            mat: self.mat.transpose(),
        }
    }
}

/// The trivial representation k: every element acts as [1].
pub fn trivial_module(group: &Arc<Group>, field: PrimeField) -> Module {
    let action = (0..group.order())
        .map(|_| Matrix::identity(field, 1))
        .collect();
    Module {
        group: Arc::clone(group),
        field,
        dim: 1,
        action,
    }
}

/// The regular module kG: g acts by the permutation matrix of left
/// multiplication on the element basis.
pub fn regular_module(group: &Arc<Group>, field: PrimeField) -> Module {
    let n = group.order();
    let action = (0..n)
        .map(|g| {
            let mut m = Matrix::zero(field, n, n);
            for h in 0..n {
                m.set(group.mul(g, h), h, 1);
            }
            m
        })
        .collect();
    Module {
        group: Arc::clone(group),
        field,
        dim: n,
        action,
    }
}

/// The cyclic module of length `len` over a cyclic p-group: in the
/// basis U, (sigma-1)U, ..., (sigma-1)^{len-1} U the generator acts as
/// a single Jordan block with eigenvalue 1.
pub fn cyclic_module(group: &Arc<Group>, field: PrimeField, len: usize) -> Result<Module, Error> {
    let n = group.order();
    let Some(gen) = group.cyclic_generator() else {
        return Err(Error::InvalidArgument("cyclic_module needs a cyclic group".into()));
    };
    if !group.is_p_group(field.p()) {
        return Err(Error::InvalidArgument(format!(
            "group order {n} is not a power of the characteristic {}",
            field.p()
        )));
    }
    if len == 0 || len > n {
        return Err(Error::InvalidArgument(format!(
            "cyclic module length {len} out of range 1..={n}"
        )));
    }
    // sigma sends basis vector b_j to b_j + b_{j+1}
    let mut sigma = Matrix::identity(field, len);
    for j in 0..len - 1 {
        sigma.set(j + 1, j, 1);
    }
    module_from_generator_powers(group, field, gen, &sigma)
}

/// Builds a module over a cyclic group from the matrix of a chosen
/// generator, by expanding powers along discrete logs.
pub fn module_from_generator_powers(
    group: &Arc<Group>,
    field: PrimeField,
    generator: usize,
    sigma: &Matrix,
) -> Result<Module, Error> {
    let n = group.order();
    let mut action = vec![Matrix::identity(field, sigma.rows()); n];
    let mut g = 0usize;
    let mut m = Matrix::identity(field, sigma.rows());
    for _ in 0..n {
        action[g] = m.clone();
        g = group.mul(g, generator);
        m = m.mul(sigma)?;
    }
    if g != 0 {
        return Err(Error::InvalidArgument("element does not generate the group".into()));
    }
    Module::new(Arc::clone(group), field, action)
}

/// Block-diagonal direct sum, first summand in the leading block.
pub fn direct_sum(a: &Module, b: &Module) -> Result<Module, Error> {
    if !a.same_ambient(b) {
        return Err(Error::Mismatch("direct sum across different groups or fields".into()));
    }
    let d = a.dim() + b.dim();
    let action = (0..a.group().order())
        .map(|g| {
            let mut m = Matrix::zero(a.field(), d, d);
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    m.set(i, j, a.action(g).get(i, j));
                }
            }
            for i in 0..b.dim() {
                for j in 0..b.dim() {
                    m.set(a.dim() + i, a.dim() + j, b.action(g).get(i, j));
                }
            }
            m
        })
        .collect();
    Ok(Module {
        group: Arc::clone(a.group()),
        field: a.field(),
        dim: d,
        action,
    })
}

/// The dual module: g acts by the transpose of the action of g^{-1}.
pub fn dual(m: &Module) -> Module {
    let action = (0..m.group().order())
        .map(|g| m.action(m.group().inverse(g)).transpose())
        .collect();
    Module {
        group: Arc::clone(m.group()),
        field: m.field(),
        dim: m.dim(),
        action,
    }
}

/// The space of kG-linear maps M -> N.
#[derive(Debug, Clone)]
pub struct HomSpace {
    source: Module,
    target: Module,
    basis: Vec<ModuleMap>,
}

impl HomSpace {
    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ModuleMap] {
        &self.basis
    }

    /// The map with the given coefficients against the basis.
    pub fn combination(&self, coeffs: &[u64]) -> Result<ModuleMap, Error> {
        if coeffs.len() != self.basis.len() {
            return Err(Error::DimensionMismatch("coefficient count".into()));
        }
        let mut mat = Matrix::zero(self.source.field(), self.target.dim(), self.source.dim());
        for (c, b) in coeffs.iter().zip(&self.basis) {
            mat = mat.add(&b.mat().scale(*c))?;
        }
        Ok(ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            mat,
        })
    }
}

/// Solves the intertwiner equations X a(g) = b(g) X for all g.
pub fn hom_space(source: &Module, target: &Module) -> Result<HomSpace, Error> {
    if !source.same_ambient(target) {
        return Err(Error::Mismatch("hom space across different groups or fields".into()));
    }
    let f = source.field();
    let dm = source.dim();
    let dn = target.dim();
    let n = source.group().order();
    // unknown X is dn x dm, row-major; one block of dn*dm equations per element
    let mut sys = Matrix::zero(f, n * dn * dm, dn * dm);
    for g in 0..n {
        let a = source.action(g);
        let b = target.action(g);
        for r in 0..dn {
            for s in 0..dm {
                let eq = g * dn * dm + r * dm + s;
                // (X a)_{rs} = sum_t X_{rt} a_{ts}
                for t in 0..dm {
                    let cur = sys.get(eq, r * dm + t);
                    sys.set(eq, r * dm + t, f.add(cur, a.get(t, s)));
                }
                // -(b X)_{rs} = -sum_t b_{rt} X_{ts}
                for t in 0..dn {
                    let cur = sys.get(eq, t * dm + s);
                    sys.set(eq, t * dm + s, f.sub(cur, b.get(r, t)));
                }
            }
        }
    }
    let ker = sys.kernel_basis();
    let basis = (0..ker.cols())
        .map(|j| {
            let mat = Matrix::from_vec(f, dn, dm, ker.col(j)).unwrap();
            ModuleMap {
                source: source.clone(),
                target: target.clone(),
                mat,
            }
        })
        .collect();
    Ok(HomSpace {
        source: source.clone(),
        target: target.clone(),
        basis,
    })
}

/// A submodule presented by an embedding into its ambient module.
#[derive(Debug, Clone)]
pub struct Submodule {
    pub module: Module,
    pub embedding: ModuleMap,
}

/// Builds the submodule spanned by the given ambient vectors, with a
/// fresh echelonized basis and the induced action.
pub fn submodule_from_spanning(ambient: &Module, vectors: &[Vec<u64>]) -> Result<Submodule, Error> {
    let f = ambient.field();
    let mut rs = RowSpace::new(f, ambient.dim());
    // closure under the action so an arbitrary spanning set works
    let mut queue: Vec<Vec<u64>> = vectors.to_vec();
    while let Some(v) = queue.pop() {
        if rs.insert(&v) {
            for g in 0..ambient.group().order() {
                queue.push(ambient.action(g).mul_vec(&v)?);
            }
        }
    }
    let basis = rs.basis();
    let embed = Matrix::from_cols(f, &basis, ambient.dim())?;
    let r = basis.len();
    let mut action = Vec::with_capacity(ambient.group().order());
    for g in 0..ambient.group().order() {
        let image = ambient.action(g).mul(&embed)?;
        let coords = embed
            .solve_matrix(&image)?
            .ok_or_else(|| Error::InvalidModule("span is not action-stable".into()))?;
        action.push(coords);
    }
    let module = Module::new(Arc::clone(ambient.group()), f, action)?;
    debug_assert_eq!(module.dim(), r);
    let embedding = ModuleMap::new(module.clone(), ambient.clone(), embed)?;
    Ok(Submodule { module, embedding })
}

/// rad M = span{(g - 1)m}; requires G a p-group for the characteristic
/// so that the radical of kG is the augmentation ideal.
pub fn radical(m: &Module) -> Result<Submodule, Error> {
    if !m.group().is_p_group(m.field().p()) {
        return Err(Error::InvalidArgument(format!(
            "radical requires a {}-group",
            m.field().p()
        )));
    }
    let f = m.field();
    let id = Matrix::identity(f, m.dim());
    let mut vectors = Vec::new();
    for g in 0..m.group().order() {
        let shifted = m.action(g).sub(&id)?;
        for j in 0..m.dim() {
            vectors.push(shifted.col(j));
        }
    }
    submodule_from_spanning(m, &vectors)
}

/// A projective cover P -> M with its kernel (the syzygy) embedded.
#[derive(Debug, Clone)]
pub struct CoverData {
    pub cover: Module,
    pub pi: ModuleMap,
    pub kernel: Submodule,
}

impl CoverData {
    pub fn omega(&self) -> &Module {
        &self.kernel.module
    }
}

/// Minimal projective cover: P = kG^t with t = dim(M / rad M). The top
/// generators are standard basis vectors completing the radical,
/// chosen deterministically.
pub fn projective_cover(m: &Module) -> Result<CoverData, Error> {
    let f = m.field();
    let rad = radical(m)?;
    let mut rs = RowSpace::new(f, m.dim());
    for j in 0..rad.module.dim() {
        rs.insert(&rad.embedding.mat().col(j));
    }
    let mut tops: Vec<Vec<u64>> = Vec::new();
    for j in 0..m.dim() {
        let mut e = vec![0u64; m.dim()];
        e[j] = 1;
        if rs.insert(&e) {
            tops.push(e);
        }
    }
    let t = tops.len();
    debug_assert_eq!(t, m.dim() - rad.module.dim());
    let n = m.group().order();
    let reg = regular_module(m.group(), f);
    let mut cover = reg.clone();
    for _ in 1..t {
        cover = direct_sum(&cover, &reg)?;
    }
    if t == 0 {
        // only the zero module; represent it with dim 0
        cover = Module {
            group: Arc::clone(m.group()),
            field: f,
            dim: 0,
            action: vec![Matrix::zero(f, 0, 0); n],
        };
    }
    // pi sends the basis vector (copy i, element g) to g . v_i
    let mut pi = Matrix::zero(f, m.dim(), cover.dim());
    for (i, v) in tops.iter().enumerate() {
        for g in 0..n {
            let img = m.action(g).mul_vec(v)?;
            for (r, &x) in img.iter().enumerate() {
                pi.set(r, i * n + g, x);
            }
        }
    }
    let pi = ModuleMap::new(cover.clone(), m.clone(), pi)?;
    if pi.mat().rank() != m.dim() {
        return Err(Error::InvalidModule("projective cover map is not surjective".into()));
    }
    let ker = pi.mat().kernel_basis();
    let ker_vectors: Vec<Vec<u64>> = (0..ker.cols()).map(|j| ker.col(j)).collect();
    let kernel = submodule_from_spanning(&cover, &ker_vectors)?;
    Ok(CoverData {
        cover,
        pi,
        kernel,
    })
}

/// Induction along H <= G: basis indexed (coset rep, module basis),
/// coset-major; g . (r ⊗ m) = r' ⊗ (h . m) where g r = r' h.
pub fn induce(sub: &Subgroup, m: &Module) -> Result<Module, Error> {
    let h_group = sub.as_group()?;
    if m.group().table() != h_group.table() {
        return Err(Error::Mismatch(
            "module is not over the subgroup's abstract group".into(),
        ));
    }
    let g_group = sub.parent();
    let f = m.field();
    let idx = sub.index_in_parent();
    let d = m.dim();
    let dim = idx * d;
    let mut action = Vec::with_capacity(g_group.order());
    for g in 0..g_group.order() {
        let mut mat = Matrix::zero(f, dim, dim);
        for (c, &r) in sub.coset_reps().iter().enumerate() {
            let gr = g_group.mul(g, r);
            let c2 = sub.coset_of(gr);
            let r2 = sub.coset_reps()[c2];
            let h = g_group.mul(g_group.inverse(r2), gr);
            let h_local = sub
                .local_index(h)
                .ok_or_else(|| Error::InvalidGroup("coset bookkeeping broke".into()))?;
            let block = m.action(h_local);
            for i in 0..d {
                for j in 0..d {
                    mat.set(c2 * d + i, c * d + j, block.get(i, j));
                }
            }
        }
        action.push(mat);
    }
    Module::new(Arc::clone(g_group), f, action)
}

/// Induction of a map: block-diagonal copies of the matrix, one per coset.
pub fn induce_map(sub: &Subgroup, f_map: &ModuleMap) -> Result<ModuleMap, Error> {
    let src = induce(sub, f_map.source())?;
    let tgt = induce(sub, f_map.target())?;
    let idx = sub.index_in_parent();
    let (dm, dn) = (f_map.source().dim(), f_map.target().dim());
    let mut mat = Matrix::zero(f_map.source().field(), idx * dn, idx * dm);
    for c in 0..idx {
        for i in 0..dn {
            for j in 0..dm {
                mat.set(c * dn + i, c * dm + j, f_map.mat().get(i, j));
            }
        }
    }
    ModuleMap::new(src, tgt, mat)
}

/// Restriction to a subgroup, same underlying space.
pub fn restrict(m: &Module, sub: &Subgroup) -> Result<Module, Error> {
    if m.group().table() != sub.parent().table() {
        return Err(Error::Mismatch("subgroup of a different group".into()));
    }
    let h_group = sub.as_group()?;
    let action = (0..h_group.order())
        .map(|i| m.action(sub.global_index(i)).clone())
        .collect();
    Module::new(h_group, m.field(), action)
}

/// Restriction of a map between G-modules to H-linear form.
pub fn restrict_map(f_map: &ModuleMap, sub: &Subgroup) -> Result<ModuleMap, Error> {
    ModuleMap::new(
        restrict(f_map.source(), sub)?,
        restrict(f_map.target(), sub)?,
        f_map.mat().clone(),
    )
}

/// Jordan block sizes of (sigma - 1) on a module over a cyclic p-group,
/// sorted descending. Computed from ranks of powers.
pub fn jordan_type(m: &Module) -> Result<Vec<usize>, Error> {
    let group = m.group();
    let Some(gen) = group.cyclic_generator() else {
        return Err(Error::InvalidArgument("jordan_type needs a cyclic group".into()));
    };
    if !group.is_p_group(m.field().p()) {
        return Err(Error::InvalidArgument("jordan_type needs a cyclic p-group".into()));
    }
    let f = m.field();
    let nil = m.action(gen).sub(&Matrix::identity(f, m.dim()))?;
    let n = group.order();
    // r[j] = rank((sigma-1)^j); blocks of size >= j: r[j-1] - r[j]
    let mut ranks = vec![m.dim()];
    let mut pw = Matrix::identity(f, m.dim());
    for _ in 0..n + 1 {
        pw = pw.mul(&nil)?;
        ranks.push(pw.rank());
    }
    let mut blocks = Vec::new();
    for j in 1..=n {
        let at_least_j = ranks[j - 1] - ranks[j];
        let at_least_j1 = ranks[j] - ranks[j + 1];
        for _ in 0..at_least_j.saturating_sub(at_least_j1) {
            blocks.push(j);
        }
    }
    blocks.sort_unstable_by(|a, b| b.cmp(a));
    debug_assert_eq!(blocks.iter().sum::<usize>(), m.dim());
    Ok(blocks)
}

/// The canonical module with the given Jordan type (blocks need not be
/// sorted; the construction sorts descending).
pub fn jordan_module(group: &Arc<Group>, field: PrimeField, blocks: &[usize]) -> Result<Module, Error> {
    let mut blocks = blocks.to_vec();
    blocks.sort_unstable_by(|a, b| b.cmp(a));
    let mut it = blocks.iter();
    let Some(&first) = it.next() else {
        return Err(Error::InvalidArgument("empty Jordan type".into()));
    };
    let mut m = cyclic_module(group, field, first)?;
    for &b in it {
        m = direct_sum(&m, &cyclic_module(group, field, b)?)?;
    }
    Ok(m)
}

/// A Jordan basis for the nilpotent operator (sigma - 1): returns an
/// invertible P whose columns are chain vectors, so that P conjugates
/// the canonical module of [`jordan_type`] into M.
pub fn jordan_basis(m: &Module) -> Result<(Matrix, Vec<usize>), Error> {
    let blocks = jordan_type(m)?;
    let f = m.field();
    let gen = m.group().cyclic_generator().unwrap();
    let nil = m.action(gen).sub(&Matrix::identity(f, m.dim()))?;
    let max_h = blocks.first().copied().unwrap_or(0);
    // kernel bases of powers
    let mut pw = Matrix::identity(f, m.dim());
    let mut kernels: Vec<Vec<Vec<u64>>> = vec![Vec::new()]; // K_0 = 0
    for _ in 0..max_h {
        pw = pw.mul(&nil)?;
        let k = pw.kernel_basis();
        kernels.push((0..k.cols()).map(|j| k.col(j)).collect());
    }
    // chains[c] = top vector and its height
    let mut chains: Vec<(usize, Vec<u64>)> = Vec::new();
    for j in (1..=max_h).rev() {
        let mut base = RowSpace::new(f, m.dim());
        for v in &kernels[j - 1] {
            base.insert(v);
        }
        for (h, top) in &chains {
            // the level-j element of a taller chain
            let mut v = top.clone();
            for _ in 0..h - j {
                v = nil.mul_vec(&v)?;
            }
            base.insert(&v);
        }
        for v in &kernels[j] {
            if base.insert(v) {
                chains.push((j, v.clone()));
            }
        }
    }
    chains.sort_by(|a, b| b.0.cmp(&a.0));
    let mut cols: Vec<Vec<u64>> = Vec::new();
    for (h, top) in &chains {
        let mut v = top.clone();
        for _ in 0..*h {
            cols.push(v.clone());
            v = nil.mul_vec(&v)?;
        }
    }
    let p = Matrix::from_cols(f, &cols, m.dim())?;
    if p.rank() != m.dim() {
        return Err(Error::InvalidModule("Jordan chain basis is singular".into()));
    }
    let chain_blocks: Vec<usize> = chains.iter().map(|(h, _)| *h).collect();
    debug_assert_eq!(chain_blocks, blocks);
    Ok((p, blocks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cyclic, direct_product, subgroup};

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn trivial_module_basics() {
        let g = cyclic(2).unwrap();
        let k = trivial_module(&g, f(2));
        assert_eq!(k.dim(), 1);
        assert_eq!(k.action(1).get(0, 0), 1);
        let c3 = cyclic(3).unwrap();
        let g9 = direct_product(&c3, &c3).unwrap();
        assert_eq!(trivial_module(&g9, f(3)).dim(), 1);
        assert_eq!(radical(&k).unwrap().module.dim(), 0);
    }

    #[test]
    fn regular_module_of_c2_is_the_swap() {
        let g = cyclic(2).unwrap();
        let m = regular_module(&g, f(2));
        assert_eq!(m.action(1).to_rows(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn regular_c4_generator_is_a_four_cycle() {
        let g = cyclic(4).unwrap();
        let m = regular_module(&g, f(2));
        let a = m.action(1);
        for j in 0..4 {
            assert_eq!(a.get((j + 1) % 4, j), 1);
        }
        assert_eq!(a.pow(4).unwrap(), Matrix::identity(f(2), 4));
    }

    #[test]
    fn sigma_minus_one_squares_to_zero_on_regular_kc2() {
        // kC2 = k[x]/(x^2): (sigma - 1)^2 = 0 over F2
        let g = cyclic(2).unwrap();
        let m = regular_module(&g, f(2));
        let s1 = m.action(1).sub(&Matrix::identity(f(2), 2)).unwrap();
        assert!(s1.mul(&s1).unwrap().is_zero());
    }

    #[test]
    fn cyclic_module_length_two_over_c4() {
        let g = cyclic(4).unwrap();
        let m = cyclic_module(&g, f(2), 2).unwrap();
        // sigma: U -> U + (sigma-1)U, (sigma-1)U -> (sigma-1)U
        assert_eq!(m.action(1).to_rows(), vec![vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn full_length_cyclic_module_is_regular() {
        let g = cyclic(4).unwrap();
        let m = cyclic_module(&g, f(2), 4).unwrap();
        let reg = regular_module(&g, f(2));
        // same Jordan type {4}, i.e. free of rank 1
        assert_eq!(jordan_type(&m).unwrap(), jordan_type(&reg).unwrap());
    }

    #[test]
    fn length_one_cyclic_module_is_trivial() {
        let g = cyclic(3).unwrap();
        let m = cyclic_module(&g, f(3), 1).unwrap();
        assert_eq!(m, trivial_module(&g, f(3)));
        assert!(cyclic_module(&g, f(3), 4).is_err());
    }

    #[test]
    fn dual_facts() {
        let g = cyclic(4).unwrap();
        let k = trivial_module(&g, f(2));
        assert_eq!(dual(&k), k);
        let m = cyclic_module(&g, f(2), 3).unwrap();
        assert_eq!(dual(&dual(&m)), m);
        let s = direct_sum(&m, &k).unwrap();
        assert_eq!(s.dim(), 4);
    }

    #[test]
    fn hom_space_of_scalars() {
        let g = cyclic(2).unwrap();
        let k = trivial_module(&g, f(2));
        assert_eq!(hom_space(&k, &k).unwrap().dim(), 1);
    }

    // oracle: enumerate all 1x2 / 2x1 matrices over F2 and test intertwining
    #[test]
    fn hom_space_regular_to_trivial_matches_enumeration() {
        let g = cyclic(2).unwrap();
        let k = trivial_module(&g, f(2));
        let reg = regular_module(&g, f(2));
        let mut count = 0;
        for bits in 0..4u64 {
            let mat = Matrix::from_vec(f(2), 1, 2, vec![bits & 1, (bits >> 1) & 1]).unwrap();
            if ModuleMap::new(reg.clone(), k.clone(), mat).is_ok() {
                count += 1;
            }
        }
        // a 2-element F2-space means dim 1
        assert_eq!(count, 2);
        assert_eq!(hom_space(&reg, &k).unwrap().dim(), 1);
        let mut count_rev = 0;
        for bits in 0..4u64 {
            let mat = Matrix::from_vec(f(2), 2, 1, vec![bits & 1, (bits >> 1) & 1]).unwrap();
            if ModuleMap::new(k.clone(), reg.clone(), mat).is_ok() {
                count_rev += 1;
            }
        }
        assert_eq!(count_rev, 2);
        assert_eq!(hom_space(&k, &reg).unwrap().dim(), 1);
    }

    #[test]
    fn radical_of_regular_kc2() {
        // oracle: image of (sigma - 1)
        let g = cyclic(2).unwrap();
        let m = regular_module(&g, f(2));
        let rad = radical(&m).unwrap();
        assert_eq!(rad.module.dim(), 1);
        assert_eq!(rad.embedding.mat().col(0), vec![1, 1]);
    }

    #[test]
    fn radical_of_length_two_cyclic_module() {
        let g = cyclic(4).unwrap();
        let m = cyclic_module(&g, f(2), 2).unwrap();
        assert_eq!(radical(&m).unwrap().module.dim(), 1);
    }

    #[test]
    fn radical_requires_p_group() {
        let g = cyclic(3).unwrap();
        let m = trivial_module(&g, f(2));
        assert!(radical(&m).is_err());
    }

    #[test]
    fn projective_cover_of_k_over_c4() {
        let g = cyclic(4).unwrap();
        let k = trivial_module(&g, f(2));
        let c = projective_cover(&k).unwrap();
        assert_eq!(c.cover.dim(), 4);
        // oracle: kernel_basis of pi has dimension 3
        assert_eq!(c.pi.mat().kernel_basis().cols(), 3);
        assert_eq!(c.omega().dim(), 3);
    }

    #[test]
    fn projective_cover_of_a_projective_is_itself() {
        let g = cyclic(4).unwrap();
        let reg = regular_module(&g, f(2));
        let c = projective_cover(&reg).unwrap();
        assert_eq!(c.cover.dim(), 4);
        assert_eq!(c.omega().dim(), 0);
    }

    #[test]
    fn projective_cover_of_k_plus_k_over_c2() {
        let g = cyclic(2).unwrap();
        let k = trivial_module(&g, f(2));
        let kk = direct_sum(&k, &k).unwrap();
        let c = projective_cover(&kk).unwrap();
        assert_eq!(c.cover.dim(), 4);
        assert_eq!(c.omega().dim(), 2);
    }

    #[test]
    fn cover_minimality_kernel_inside_radical() {
        let g = cyclic(4).unwrap();
        let m = cyclic_module(&g, f(2), 2).unwrap();
        let c = projective_cover(&m).unwrap();
        let rad = radical(&c.cover).unwrap();
        let mut rs = RowSpace::new(f(2), c.cover.dim());
        for j in 0..rad.module.dim() {
            rs.insert(&rad.embedding.mat().col(j));
        }
        for j in 0..c.omega().dim() {
            assert!(rs.contains(&c.kernel.embedding.mat().col(j)));
        }
        assert_eq!(c.omega().dim(), c.cover.dim() - m.dim());
    }

    #[test]
    fn induced_trivial_module_dimension_and_action() {
        let g = cyclic(4).unwrap();
        let h = subgroup(&g, &[2]).unwrap();
        let kh = trivial_module(&h.as_group().unwrap(), f(2));
        let ind = induce(&h, &kh).unwrap();
        assert_eq!(ind.dim(), 2);
        // oracle: sigma swaps the cosets {e, sigma^2} and {sigma, sigma^3}
        assert_eq!(ind.action(1).to_rows(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn induced_trivial_module_restricts_trivially_for_normal_h() {
        let g = cyclic(4).unwrap();
        let h = subgroup(&g, &[2]).unwrap();
        assert!(h.is_normal());
        let kh = trivial_module(&h.as_group().unwrap(), f(2));
        let ind = induce(&h, &kh).unwrap();
        let back = restrict(&ind, &h).unwrap();
        for i in 0..back.group().order() {
            assert_eq!(back.action(i), &Matrix::identity(f(2), 2));
        }
    }

    #[test]
    fn restriction_of_regular_is_free() {
        let g = cyclic(4).unwrap();
        let h = subgroup(&g, &[2]).unwrap();
        let reg = regular_module(&g, f(2));
        let res = restrict(&reg, &h).unwrap();
        // free of rank [G:H] over kH = kC2: Jordan type {2, 2}
        assert_eq!(jordan_type(&res).unwrap(), vec![2, 2]);
    }

    #[test]
    fn restriction_of_induction_contains_the_module() {
        // Prop-style retract at the module level: the identity-coset
        // block of res(ind(M)) is M itself
        let g = cyclic(8).unwrap();
        let h = subgroup(&g, &[2]).unwrap();
        let hg = h.as_group().unwrap();
        let m = cyclic_module(&hg, f(2), 2).unwrap();
        let ind = induce(&h, &m).unwrap();
        let res = restrict(&ind, &h).unwrap();
        for i in 0..hg.order() {
            for a in 0..m.dim() {
                for b in 0..m.dim() {
                    assert_eq!(res.action(i).get(a, b), m.action(i).get(a, b));
                }
            }
        }
    }

    #[test]
    fn adjunction_dimension_identity() {
        // dim Hom_G(M↑G, N) = dim Hom_H(M, N↓H)
        let g = cyclic(8).unwrap();
        let h = subgroup(&g, &[2]).unwrap();
        let hg = h.as_group().unwrap();
        for len_m in 1..=3 {
            let m = cyclic_module(&hg, f(2), len_m).unwrap();
            for len_n in 1..=4 {
                let n = cyclic_module(&g, f(2), len_n).unwrap();
                let lhs = hom_space(&induce(&h, &m).unwrap(), &n).unwrap().dim();
                let rhs = hom_space(&m, &restrict(&n, &h).unwrap()).unwrap().dim();
                assert_eq!(lhs, rhs, "lengths {len_m}, {len_n}");
            }
        }
    }

    #[test]
    fn jordan_type_of_regular_kc4() {
        let g = cyclic(4).unwrap();
        assert_eq!(jordan_type(&regular_module(&g, f(2))).unwrap(), vec![4]);
    }

    #[test]
    fn jordan_type_of_a_sum() {
        let g = cyclic(4).unwrap();
        let k = trivial_module(&g, f(2));
        let m2 = cyclic_module(&g, f(2), 2).unwrap();
        let s = direct_sum(&k, &m2).unwrap();
        assert_eq!(jordan_type(&s).unwrap(), vec![2, 1]);
    }

    #[test]
    fn jordan_type_blocks_bounded_by_group_order() {
        // oracle for kC2: rank of (sigma - 1) determines the type
        let g = cyclic(2).unwrap();
        let m = jordan_module(&g, f(2), &[2, 2, 1]).unwrap();
        assert_eq!(m.dim(), 5);
        let ty = jordan_type(&m).unwrap();
        assert!(ty.iter().all(|&b| b <= 2));
        assert_eq!(ty.iter().sum::<usize>(), 5);
        let nil = m.action(1).sub(&Matrix::identity(f(2), 5)).unwrap();
        assert_eq!(nil.rank(), ty.iter().filter(|&&b| b == 2).count());
    }

    #[test]
    fn jordan_basis_conjugates_to_canonical_form() {
        let g = cyclic(4).unwrap();
        let m = jordan_module(&g, f(2), &[3, 2, 1]).unwrap();
        assert_eq!(m.dim(), 6);
        let (p, blocks) = jordan_basis(&m).unwrap();
        assert_eq!(blocks, vec![3, 2, 1]);
        let canon = jordan_module(&g, f(2), &blocks).unwrap();
        // a(sigma) P = P J(sigma)
        let lhs = m.action(1).mul(&p).unwrap();
        let rhs = p.mul(canon.action(1)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn module_map_validation() {
        let g = cyclic(2).unwrap();
        let k = trivial_module(&g, f(2));
        let reg = regular_module(&g, f(2));
        // the augmentation map is kG-linear
        let aug = Matrix::from_rows(f(2), &[vec![1, 1]]).unwrap();
        assert!(ModuleMap::new(reg.clone(), k.clone(), aug).is_ok());
        // a coordinate projection is not
        let proj = Matrix::from_rows(f(2), &[vec![1, 0]]).unwrap();
        assert!(ModuleMap::new(reg, k, proj).is_err());
    }
}
