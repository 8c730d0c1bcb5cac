//! Finite groups over canonical element indices.
//!
//! A [`FiniteGroup`] is a cheap-to-clone handle around a verified Cayley table.
//! Element `0` is always the identity. Groups come either from an explicit
//! table or from permutation generators; in the latter case the elements are
//! the closure of the generators, sorted lexicographically by image array.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};

/// Index of an element of a [`FiniteGroup`].
pub type Elem = usize;

/// Largest group order representable in the table.
pub const MAX_ORDER: usize = 4096;
/// Largest degree accepted for permutation input.
pub const MAX_DEGREE: usize = 16;
/// Groups up to this order get a full associativity check.
const FULL_ASSOCIATIVITY_LIMIT: usize = 64;

/// Description of a group as accepted by [`FiniteGroup::build`].
#[derive(Clone, Debug)]
pub enum GroupDescription {
    Table {
        rows: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    },
    Permutations {
        generators: Vec<Vec<usize>>,
    },
}

struct PermData {
    perms: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, Elem>,
    generators: Vec<Elem>,
}

struct Inner {
    order: usize,
    table: Vec<u16>,
    inv: Vec<u16>,
    elem_orders: Vec<usize>,
    labels: Vec<String>,
    perms: Option<Vec<Vec<u8>>>,
    perm_index: Option<HashMap<Vec<u8>, Elem>>,
    perm_generators: Vec<Elem>,
}

/// A finite group with a verified multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<Inner>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order={})", self.order())
    }
}

impl FiniteGroup {
    pub fn build(desc: &GroupDescription, closure_cap: usize) -> Result<Self> {
        match desc {
            GroupDescription::Table { rows, labels } => Self::from_table(rows, labels.clone()),
            GroupDescription::Permutations { generators } => {
                Self::from_permutations(generators, closure_cap)
            }
        }
    }

    /// Builds a group from a Cayley table. Row `a`, column `b` holds `a*b`.
    /// The identity must be element 0.
    pub fn from_table(rows: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::CapExceeded {
                what: "table order",
                size: n as u128,
                cap: MAX_ORDER as u128,
            });
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::InvalidTable(format!(
                        "entry {x} in row {i} is out of range"
                    )));
                }
                table.push(x as u16);
            }
        }
        let labels = match labels {
            Some(l) if l.len() != n => {
                return Err(Error::InvalidTable(format!(
                    "{} labels given for {n} elements",
                    l.len()
                )))
            }
            Some(l) => l,
            None => (0..n).map(|i| format!("e{i}")).collect(),
        };
        Self::from_flat(n, table, labels, None, true)
    }

    /// Builds the group generated by the given permutations, each written as
    /// a 0-indexed image array. The product `p*q` applies `p` first.
    pub fn from_permutations(generators: &[Vec<usize>], closure_cap: usize) -> Result<Self> {
        let degree = match generators.first() {
            Some(g) => g.len(),
            None => return Err(Error::MalformedPermutation("no generators given".into())),
        };
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::MalformedPermutation(format!(
                "degree {degree} outside 1..={MAX_DEGREE}"
            )));
        }
        let mut gens: Vec<Vec<u8>> = Vec::with_capacity(generators.len());
        for (k, g) in generators.iter().enumerate() {
            if g.len() != degree {
                return Err(Error::MalformedPermutation(format!(
                    "generator {k} has degree {}, expected {degree}",
                    g.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(Error::MalformedPermutation(format!(
                        "generator {k} is not a bijection of 0..{degree}"
                    )));
                }
                seen[x] = true;
            }
            gens.push(g.iter().map(|&x| x as u8).collect());
        }
        let cap = closure_cap.min(MAX_ORDER);
        let identity: Vec<u8> = (0..degree as u8).collect();
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(identity.clone());
        queue.push_back(identity);
        while let Some(p) = queue.pop_front() {
            for g in &gens {
                let q = compose(&p, g);
                if seen.insert(q.clone()) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded {
                            what: "permutation closure",
                            size: seen.len() as u128,
                            cap: cap as u128,
                        });
                    }
                    queue.push_back(q);
                }
            }
        }
        let mut perms: Vec<Vec<u8>> = seen.into_iter().collect();
        perms.sort();
        let n = perms.len();
        let index: HashMap<Vec<u8>, Elem> = perms
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let mut table = Vec::with_capacity(n * n);
        for a in &perms {
            for b in &perms {
                table.push(index[&compose(a, b)] as u16);
            }
        }
        let labels = perms.iter().map(|p| cycle_notation(p)).collect();
        let generators = gens.iter().map(|g| index[g]).collect();
        let data = PermData {
            perms,
            index,
            generators,
        };
        // Composition of permutations is associative by construction.
        Self::from_flat(n, table, labels, Some(data), false)
    }

    /// Builds a group from a multiplication function on `0..order`, verifying
    /// the axioms. Used by the catalogue constructors.
    pub fn from_fn(
        order: usize,
        labels: Vec<String>,
        mul: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self> {
        let rows: Vec<Vec<usize>> = (0..order)
            .map(|a| (0..order).map(|b| mul(a, b)).collect())
            .collect();
        Self::from_table(&rows, Some(labels))
    }

    fn from_flat(
        n: usize,
        table: Vec<u16>,
        labels: Vec<String>,
        perms: Option<PermData>,
        check_associative: bool,
    ) -> Result<Self> {
        let at = |a: usize, b: usize| table[a * n + b] as usize;
        for a in 0..n {
            if at(0, a) != a || at(a, 0) != a {
                return Err(Error::InvalidTable(
                    "element 0 is not a two-sided identity".into(),
                ));
            }
        }
        // Latin square rows and columns.
        let mut seen = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let x = at(a, b);
                if seen[x] == a {
                    return Err(Error::InvalidTable(format!("row {a} repeats entry {x}")));
                }
                seen[x] = a;
            }
        }
        let mut seen = vec![usize::MAX; n];
        for b in 0..n {
            for a in 0..n {
                let x = at(a, b);
                if seen[x] == b {
                    return Err(Error::InvalidTable(format!("column {b} repeats entry {x}")));
                }
                seen[x] = b;
            }
        }
        if check_associative {
            let check = |a: usize, b: usize, c: usize| -> Result<()> {
                if at(at(a, b), c) != at(a, at(b, c)) {
                    Err(Error::NotAssociative { a, b, c })
                } else {
                    Ok(())
                }
            };
            if n <= FULL_ASSOCIATIVITY_LIMIT {
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            check(a, b, c)?;
                        }
                    }
                }
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
                for _ in 0..10 * n * n {
                    check(
                        rng.gen_range(0..n),
                        rng.gen_range(0..n),
                        rng.gen_range(0..n),
                    )?;
                }
            }
        }
        let inv = (0..n)
            .map(|a| {
                let b = (0..n)
                    .find(|&b| at(a, b) == 0)
                    .ok_or_else(|| Error::InvalidTable(format!("element {a} has no inverse")))?;
                if at(b, a) != 0 {
                    return Err(Error::InvalidTable(format!(
                        "inverse of {a} is only one-sided"
                    )));
                }
                Ok(b as u16)
            })
            .collect::<Result<Vec<u16>>>()?;
        let elem_orders = (0..n)
            .map(|a| {
                let mut x = a;
                let mut k = 1;
                while x != 0 {
                    x = at(x, a);
                    k += 1;
                }
                k
            })
            .collect();
        let (perms, perm_index, perm_generators) = match perms {
            Some(d) => (Some(d.perms), Some(d.index), d.generators),
            None => (None, None, Vec::new()),
        };
        Ok(FiniteGroup {
            inner: Arc::new(Inner {
                order: n,
                table,
                inv,
                elem_orders,
                labels,
                perms,
                perm_index,
                perm_generators,
            }),
        })
    }

    pub fn trivial() -> Self {
        Self::from_fn(1, vec!["e".into()], |_, _| 0).expect("trivial group")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.inner.order
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        0
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.inner.table[a * self.inner.order + b] as Elem
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inner.inv[a] as Elem
    }

    /// `g * x * g^-1`.
    pub fn conjugate(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: Elem, k: usize) -> Elem {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    #[inline]
    pub fn elem_order(&self, a: Elem) -> usize {
        self.inner.elem_orders[a]
    }

    pub fn elem_orders(&self) -> &[usize] {
        &self.inner.elem_orders
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order()
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.inner.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn check_elem(&self, a: Elem) -> Result<()> {
        if a < self.order() {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                index: a,
                order: self.order(),
            })
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn centralizer_size(&self, a: Elem) -> usize {
        self.elements()
            .filter(|&b| self.mul(a, b) == self.mul(b, a))
            .count()
    }

    /// Permutation image array of an element, for groups built from
    /// permutations.
    pub fn permutation(&self, a: Elem) -> Option<Vec<usize>> {
        self.inner
            .perms
            .as_ref()
            .map(|p| p[a].iter().map(|&x| x as usize).collect())
    }

    /// Looks up the element with the given permutation image array.
    pub fn find_permutation(&self, images: &[usize]) -> Option<Elem> {
        let key: Vec<u8> = images.iter().map(|&x| x as u8).collect();
        if images.iter().any(|&x| x > u8::MAX as usize) {
            return None;
        }
        self.inner.perm_index.as_ref()?.get(&key).copied()
    }

    pub fn is_permutation_group(&self) -> bool {
        self.inner.perms.is_some()
    }

    /// The input generators, for groups built from permutations.
    pub fn permutation_generators(&self) -> &[Elem] {
        &self.inner.perm_generators
    }

    /// Same underlying table (pointer identity or structural equality).
    pub fn same_as(&self, other: &FiniteGroup) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.order == other.inner.order && self.inner.table == other.inner.table)
    }

    /// A small deterministic generating set: repeatedly adds the element of
    /// largest order (ties by index) not yet in the generated subgroup.
    pub fn generating_set(&self) -> Vec<Elem> {
        let n = self.order();
        let mut by_order: Vec<Elem> = (1..n).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.elem_order(a)), a));
        let mut gens = Vec::new();
        let mut span = ElemSet::from_elems(n, [0]);
        for a in by_order {
            if span.len() == n {
                break;
            }
            if !span.contains(a) {
                gens.push(a);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// Element set of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[Elem]) -> ElemSet {
        let n = self.order();
        let mut set = ElemSet::from_elems(n, [0]);
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    stack.push(y);
                }
            }
        }
        set
    }

    /// Closure of an existing subgroup's element set extended by new
    /// generators.
    pub(crate) fn extend_closure(&self, base: &ElemSet, all_gens: &[Elem]) -> ElemSet {
        let mut set = base.clone();
        let mut stack: Vec<Elem> = base.iter().collect();
        while let Some(x) = stack.pop() {
            for &g in all_gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    stack.push(y);
                }
            }
        }
        set
    }
}

fn compose(p: &[u8], q: &[u8]) -> Vec<u8> {
    p.iter().map(|&x| q[x as usize]).collect()
}

/// Cycle notation for a permutation, `()` for the identity.
pub fn cycle_notation(p: &[u8]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start] as usize;
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x] as usize;
        }
        out.push('(');
        out.push_str(
            &cycle
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        );
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}
