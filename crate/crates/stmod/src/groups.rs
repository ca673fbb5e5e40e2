//! Finite groups presented by multiplication tables.
//!
//! Every group is stored as a full Cayley table with the identity at
//! index 0; construction validates the Latin-square property,
//! two-sided identity, associativity and existence of inverses. The
//! groups this tool ever needs are tiny (orders 2 through 64), so the
//! O(n^3) associativity check is fine.
//!
//! Conventions that are part of the file format: element 0 is the
//! identity, and the generator of a cyclic group built by [`cyclic`]
//! sits at index 1.

use crate::Error;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    name: String,
    order: usize,
    table: Vec<Vec<usize>>,
}

impl Group {
    /// Validates and wraps a Cayley table. Index 0 must be a two-sided
    /// identity.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Arc<Self>, Error> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::InvalidGroup("table is not n x n over 0..n".into()));
            }
        }
        // identity at 0
        for i in 0..n {
            if table[0][i] != i || table[i][0] != i {
                return Err(Error::InvalidGroup("index 0 is not a two-sided identity".into()));
            }
        }
        // Latin square
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                if seen_row[table[i][j]] || seen_col[table[j][i]] {
                    return Err(Error::InvalidGroup("table is not a Latin square".into()));
                }
                seen_row[table[i][j]] = true;
                seen_col[table[j][i]] = true;
            }
        }
        // associativity
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let g = Group {
            name: name.into(),
            order: n,
            table,
        };
        // inverses exist by the Latin-square property in a finite
        // associative quasigroup with identity, but check anyway
        for a in 0..n {
            if g.inverse(a) >= n {
                return Err(Error::InvalidGroup(format!("no inverse for {a}")));
            }
        }
        Ok(Arc::new(g))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn table(&self) -> &Vec<Vec<usize>> {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order).find(|&b| self.table[a][b] == 0).unwrap()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// True iff |G| is a power of p (including p^0 = 1).
    pub fn is_p_group(&self, p: u64) -> bool {
        let mut n = self.order as u64;
        while n % p == 0 {
            n /= p;
        }
        n == 1
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|a| self.element_order(a) == self.order)
    }

    /// Smallest element index generating the whole group, if cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        (0..self.order).find(|&a| self.element_order(a) == self.order)
    }

    /// The unique prime p with |G| = p^m, for non-trivial p-groups.
    pub fn p_group_characteristic(&self) -> Option<u64> {
        if self.order < 2 {
            return None;
        }
        let p = (2..=self.order as u64).find(|d| self.order as u64 % d == 0)?;
        self.is_p_group(p).then_some(p)
    }
}

/// The cyclic group C_n with generator sigma at index 1; element i is
/// sigma^i.
pub fn cyclic(n: usize) -> Result<Arc<Group>, Error> {
    if n == 0 {
        return Err(Error::InvalidGroup("cyclic(0)".into()));
    }
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    Group::from_table(format!("C{n}"), table)
}

/// Direct product with lexicographic element indexing: (i1, i2) sits at
/// index i1 * |G2| + i2.
pub fn direct_product(g1: &Group, g2: &Group) -> Result<Arc<Group>, Error> {
    let n1 = g1.order();
    let n2 = g2.order();
    let n = n1 * n2;
    let mut table = vec![vec![0; n]; n];
    for a1 in 0..n1 {
        for a2 in 0..n2 {
            for b1 in 0..n1 {
                for b2 in 0..n2 {
                    table[a1 * n2 + a2][b1 * n2 + b2] = g1.mul(a1, b1) * n2 + g2.mul(a2, b2);
                }
            }
        }
    }
    Group::from_table(format!("{}x{}", g1.name(), g2.name()), table)
}

/// A subgroup together with deterministic left-coset representatives.
#[derive(Debug, Clone)]
pub struct Subgroup {
    parent: Arc<Group>,
    members: Vec<usize>,
    coset_reps: Vec<usize>,
    // global element index -> position in `members`, or None
    local_index: Vec<Option<usize>>,
}

impl Subgroup {
    pub fn parent(&self) -> &Arc<Group> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index_in_parent(&self) -> usize {
        self.parent.order() / self.members.len()
    }

    pub fn coset_reps(&self) -> &[usize] {
        &self.coset_reps
    }

    pub fn contains(&self, g: usize) -> bool {
        self.local_index[g].is_some()
    }

    pub fn local_index(&self, g: usize) -> Option<usize> {
        self.local_index[g]
    }

    pub fn global_index(&self, local: usize) -> usize {
        self.members[local]
    }

    /// The subgroup as an abstract group via the restricted table.
    /// Local index 0 is the identity since members are sorted.
    pub fn as_group(&self) -> Result<Arc<Group>, Error> {
        let k = self.members.len();
        let mut table = vec![vec![0; k]; k];
        for i in 0..k {
            for j in 0..k {
                let prod = self.parent.mul(self.members[i], self.members[j]);
                table[i][j] = self
                    .local_index[prod]
                    .ok_or_else(|| Error::InvalidGroup("subgroup not closed".into()))?;
            }
        }
        Group::from_table(format!("{}<{}>", self.parent.name(), k), table)
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        (0..g.order()).all(|x| {
            let xi = g.inverse(x);
            self.members.iter().all(|&h| self.contains(g.mul(g.mul(x, h), xi)))
        })
    }

    /// Index of the coset rep whose coset contains `g`.
    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_reps
            .iter()
            .position(|&r| self.contains(self.parent.mul(self.parent.inverse(r), g)))
            .expect("cosets cover the group")
    }
}

/// Closure of the generators, with coset representatives picked
/// smallest-unused-index first.
pub fn subgroup(parent: &Arc<Group>, generators: &[usize]) -> Result<Subgroup, Error> {
    let n = parent.order();
    if generators.iter().any(|&g| g >= n) {
        return Err(Error::InvalidArgument("generator index out of range".into()));
    }
    let mut in_sub = vec![false; n];
    in_sub[0] = true;
    let mut frontier = vec![0usize];
    for &g in generators {
        if !in_sub[g] {
            in_sub[g] = true;
            frontier.push(g);
        }
    }
    while let Some(a) = frontier.pop() {
        for b in 0..n {
            if !in_sub[b] {
                continue;
            }
            for prod in [parent.mul(a, b), parent.mul(b, a)] {
                if !in_sub[prod] {
                    in_sub[prod] = true;
                    frontier.push(prod);
                }
            }
        }
    }
    let members: Vec<usize> = (0..n).filter(|&i| in_sub[i]).collect();
    let mut local_index = vec![None; n];
    for (k, &m) in members.iter().enumerate() {
        local_index[m] = Some(k);
    }
    // left cosets gH, reps chosen smallest-first
    let mut covered = vec![false; n];
    let mut coset_reps = Vec::new();
    for g in 0..n {
        if covered[g] {
            continue;
        }
        coset_reps.push(g);
        for &h in &members {
            covered[parent.mul(g, h)] = true;
        }
    }
    Ok(Subgroup {
        parent: Arc::clone(parent),
        members,
        coset_reps,
        local_index,
    })
}

/// An element verified to commute with all of G.
#[derive(Debug, Clone)]
pub struct CentralElement {
    group: Arc<Group>,
    index: usize,
}

impl CentralElement {
    pub fn new(group: &Arc<Group>, index: usize) -> Result<Self, Error> {
        if index >= group.order() {
            return Err(Error::InvalidArgument("element index out of range".into()));
        }
        for g in 0..group.order() {
            if group.mul(index, g) != group.mul(g, index) {
                return Err(Error::InvalidArgument(format!(
                    "element {index} is not central"
                )));
            }
        }
        Ok(CentralElement {
            group: Arc::clone(group),
            index,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn index(&self) -> usize {
        self.index
    }
}

/// All central elements of G.
pub fn center(group: &Arc<Group>) -> Vec<CentralElement> {
    (0..group.order())
        .filter_map(|x| CentralElement::new(group, x).ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_four_has_generator_of_order_four() {
        let g = cyclic(4).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.element_order(1), 4);
    }

    #[test]
    fn cyclic_one_is_trivial() {
        let g = cyclic(1).unwrap();
        assert!(g.is_trivial());
    }

    #[test]
    fn cyclic_three_table() {
        let g = cyclic(3).unwrap();
        assert_eq!(g.mul(1, 2), 0);
    }

    #[test]
    fn klein_four_has_no_order_four_element() {
        let c2 = cyclic(2).unwrap();
        let v = direct_product(&c2, &c2).unwrap();
        assert_eq!(v.order(), 4);
        assert!((1..4).all(|i| v.element_order(i) == 2));
        assert!(!v.is_cyclic());
    }

    #[test]
    fn product_with_trivial_keeps_order() {
        let g = cyclic(6).unwrap();
        let e = cyclic(1).unwrap();
        let p = direct_product(&g, &e).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.table(), g.table());
    }

    #[test]
    fn c3xc3_has_exponent_three() {
        let c3 = cyclic(3).unwrap();
        let g = direct_product(&c3, &c3).unwrap();
        assert_eq!(g.order(), 9);
        assert!((1..9).all(|i| g.element_order(i) == 3));
    }

    #[test]
    fn subgroup_of_c4_generated_by_sigma_squared() {
        let g = cyclic(4).unwrap();
        let h = subgroup(&g, &[2]).unwrap();
        // oracle: closure of {sigma^2} under the table is {e, sigma^2}
        assert_eq!(h.members(), &[0, 2]);
        assert_eq!(h.coset_reps(), &[0, 1]);
    }

    #[test]
    fn empty_generators_give_trivial_subgroup() {
        let g = cyclic(6).unwrap();
        let h = subgroup(&g, &[]).unwrap();
        assert_eq!(h.order(), 1);
        assert_eq!(h.index_in_parent(), 6);
    }

    #[test]
    fn first_factor_of_klein_four() {
        let c2 = cyclic(2).unwrap();
        let v = direct_product(&c2, &c2).unwrap();
        // (sigma, e) has index 1 * |C2| + 0 = 2
        let h = subgroup(&v, &[2]).unwrap();
        assert_eq!(h.members(), &[0, 2]);
    }

    #[test]
    fn cosets_partition_the_group() {
        let g = cyclic(8).unwrap();
        let h = subgroup(&g, &[2]).unwrap();
        let mut seen = vec![false; 8];
        for &r in h.coset_reps() {
            for &m in h.members() {
                let x = g.mul(r, m);
                assert!(!seen[x]);
                seen[x] = true;
            }
        }
        assert!(seen.iter().all(|&b| b));
    }

    #[test]
    fn center_of_abelian_groups_is_everything() {
        assert_eq!(center(&cyclic(5).unwrap()).len(), 5);
        let c2 = cyclic(2).unwrap();
        let v = direct_product(&c2, &c2).unwrap();
        assert_eq!(center(&v).len(), 4);
        assert_eq!(center(&cyclic(1).unwrap()).len(), 1);
    }

    #[test]
    fn p_group_and_cyclicity_tests() {
        assert!(cyclic(8).unwrap().is_p_group(2));
        assert!(cyclic(8).unwrap().is_cyclic());
        let c3 = cyclic(3).unwrap();
        let g = direct_product(&c3, &c3).unwrap();
        assert!(g.is_p_group(3));
        assert!(!g.is_cyclic());
        assert!(!cyclic(6).unwrap().is_p_group(2));
        assert_eq!(cyclic(9).unwrap().p_group_characteristic(), Some(3));
        assert_eq!(cyclic(6).unwrap().p_group_characteristic(), None);
    }

    #[test]
    fn bad_tables_are_rejected() {
        // identity not at 0
        assert!(Group::from_table("bad", vec![vec![1, 0], vec![0, 1]]).is_err());
        // not a Latin square
        assert!(Group::from_table("bad", vec![vec![0, 1], vec![1, 1]]).is_err());
        // Latin square with identity but not associative: no such 5x5
        // exists below order 5; use the classic loop of order 5
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(Group::from_table("loop5", loop5).is_err());
    }

    #[test]
    fn subgroup_normality() {
        let g = cyclic(8).unwrap();
        assert!(subgroup(&g, &[4]).unwrap().is_normal());
    }

    #[test]
    fn central_element_rejects_non_central() {
        // S3 built from permutations of three points, identity first
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [0, 2, 1],
            [2, 1, 0],
            [1, 0, 2],
        ];
        let compose = |a: &[usize; 3], b: &[usize; 3]| [a[b[0]], a[b[1]], a[b[2]]];
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        let c = compose(a, b);
                        perms.iter().position(|p| *p == c).unwrap()
                    })
                    .collect()
            })
            .collect();
        let s3 = Group::from_table("S3", table).unwrap();
        assert!(CentralElement::new(&s3, 1).is_err());
        assert_eq!(center(&s3).len(), 1);
    }
}
