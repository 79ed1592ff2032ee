//! Finite groups as Cayley tables, their automorphisms and orbits.
//!
//! Elements are the indices `0..n` and `0` is always the identity. Groups are
//! written additively whether or not they are abelian. Automorphisms act from
//! the right: the image of `x` under `phi` is `phi.map()[x]`, and the product
//! `phi.then(psi)` is "first `phi`, then `psi`".

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::hash::Hash;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on subsets tried when searching for a minimal generating set.
const GENERATOR_SEARCH_BUDGET: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    neg: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from an explicit Cayley table, checking every axiom.
    pub fn from_table(name: impl Into<String>, rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidGroup(format!("entry {v} in row {i} is out of range")));
                }
                table.push(v);
            }
        }
        Self::from_flat(name.into(), n, table)
    }

    /// Builds a group from a list of concrete elements and a binary operation.
    /// `elements[0]` must be the identity; it becomes index 0.
    pub fn from_operation<T, F>(name: impl Into<String>, elements: &[T], op: F) -> Result<Self>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let n = elements.len();
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        if index.len() != n {
            return Err(Error::InvalidGroup("duplicate elements".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for a in elements {
            for b in elements {
                let c = op(a, b);
                match index.get(&c) {
                    Some(&k) => table.push(k),
                    None => return Err(Error::InvalidGroup("operation is not closed".into())),
                }
            }
        }
        Self::from_flat(name.into(), n, table)
    }

    fn from_flat(name: String, n: usize, table: Vec<usize>) -> Result<Self> {
        for x in 0..n {
            if table[x] != x || table[x * n] != x {
                return Err(Error::InvalidGroup(format!("0 is not an identity (fails at {x})")));
            }
        }
        let mut neg = vec![0; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| table[x * n + y] == 0)
                .ok_or_else(|| Error::InvalidGroup(format!("{x} has no right inverse")))?;
            if table[y * n + x] != 0 {
                return Err(Error::InvalidGroup(format!("{y} is a right but not a left inverse of {x}")));
            }
            neg[x] = y;
        }
        for x in 0..n {
            for y in 0..n {
                let xy = table[x * n + y];
                for z in 0..n {
                    if table[xy * n + z] != table[x * n + table[y * n + z]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails for ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup { name, order: n, table, neg })
    }

    /// The integers modulo `n`, element `i` standing for the residue `i`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let table = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
        let neg = (0..n).map(|a| (n - a) % n).collect();
        FiniteGroup { name: format!("C{n}"), order: n, table, neg }
    }

    /// Direct product; the pair `(a, b)` gets index `a * |h| + b`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (m, k) = (g.order, h.order);
        let n = m * k;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let a = g.add(x / k, y / k);
                let b = h.add(x % k, y % k);
                table.push(a * k + b);
            }
        }
        let neg = (0..n).map(|x| g.neg(x / k) * k + h.neg(x % k)).collect();
        FiniteGroup { name: format!("{}x{}", g.name, h.name), order: n, table, neg }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x]
    }

    /// `x - y`, i.e. `x + (-y)`.
    #[inline]
    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg[y])
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// `k`-fold sum `x + x + ... + x`.
    pub fn multiple(&self, x: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.add(acc, x))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.add(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..x).all(|y| self.add(x, y) == self.add(y, x)))
    }

    /// Re-runs the full axiom check on the stored table.
    pub fn check_axioms(&self) -> Result<()> {
        Self::from_flat(self.name.clone(), self.order, self.table.clone()).map(|_| ())
    }

    /// The subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.add(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    /// A generating set of least size (lexicographically first among those),
    /// falling back to a greedy choice when the search space is too large.
    pub fn generating_set(&self) -> Vec<usize> {
        let n = self.order;
        if n == 1 {
            return Vec::new();
        }
        let mut tried = 0usize;
        for k in 1..n {
            for combo in (1..n).combinations(k) {
                if self.generated(&combo).len() == n {
                    return combo;
                }
                tried += 1;
                if tried > GENERATOR_SEARCH_BUDGET {
                    return self.greedy_generating_set();
                }
            }
        }
        self.greedy_generating_set()
    }

    fn greedy_generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0];
        while span.len() < self.order {
            let next = (1..self.order)
                .filter(|x| span.binary_search(x).is_err())
                .max_by_key(|&x| (self.element_order(x), std::cmp::Reverse(x)))
                .expect("proper subgroup has a missing element");
            gens.push(next);
            span = self.generated(&gens);
        }
        gens
    }

    /// Returns a description of the first failed subgroup axiom, if any.
    pub fn subgroup_violation(&self, set: &[usize]) -> Option<String> {
        let mut member = vec![false; self.order];
        for &x in set {
            if x >= self.order {
                return Some(format!("{x} is not an element"));
            }
            member[x] = true;
        }
        if !member[0] {
            return Some("0 is missing".into());
        }
        for &x in set {
            if !member[self.neg(x)] {
                return Some(format!("-{x} = {} is missing", self.neg(x)));
            }
            for &y in set {
                if !member[self.add(x, y)] {
                    return Some(format!("{x} + {y} = {} is missing", self.add(x, y)));
                }
            }
        }
        None
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        self.subgroup_violation(set).is_none()
    }

    /// Returns a witness `(g, x)` with `g + x - g` outside the set, if any.
    pub fn normality_violation(&self, set: &[usize]) -> Option<(usize, usize)> {
        let mut member = vec![false; self.order];
        for &x in set {
            member[x] = true;
        }
        for g in 0..self.order {
            for &x in set {
                if !member[self.sub(self.add(g, x), g)] {
                    return Some((g, x));
                }
            }
        }
        None
    }

    /// Every subgroup, each as a sorted element list, ordered by (size, members).
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let trivial = vec![0];
        found.insert(trivial.clone());
        let mut queue = VecDeque::from([trivial]);
        while let Some(h) = queue.pop_front() {
            let gens = h.clone();
            for x in 1..self.order {
                if h.binary_search(&x).is_ok() {
                    continue;
                }
                let mut g = gens.clone();
                g.push(x);
                let s = self.generated(&g);
                if found.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        let mut all: Vec<_> = found.into_iter().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all
    }

    /// All subgroups `h` with `h ∩ k = {0}` and `|h| |k| = |G|`.
    pub fn complements(&self, k: &[usize]) -> Vec<Vec<usize>> {
        if !self.order.is_multiple_of(k.len()) {
            return Vec::new();
        }
        let want = self.order / k.len();
        let mut in_k = vec![false; self.order];
        for &x in k {
            in_k[x] = true;
        }
        self.subgroups()
            .into_iter()
            .filter(|h| h.len() == want && h.iter().all(|&x| x == 0 || !in_k[x]))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Automorphism {
    map: Vec<usize>,
}

impl Automorphism {
    pub fn new(map: Vec<usize>) -> Self {
        Automorphism { map }
    }

    pub fn identity(n: usize) -> Self {
        Automorphism { map: (0..n).collect() }
    }

    /// `x -> -x`; an automorphism only for abelian groups.
    pub fn negation(group: &FiniteGroup) -> Self {
        Automorphism { map: group.elements().map(|x| group.neg(x)).collect() }
    }

    /// `x -> k x` (k-fold sum); an automorphism only when it validates.
    pub fn multiplication(group: &FiniteGroup, k: usize) -> Self {
        Automorphism { map: group.elements().map(|x| group.multiple(x, k)).collect() }
    }

    /// Parses `neg`, `id`, `mul:K` or `perm:A,B,...`. The result is not validated.
    pub fn from_spec(group: &FiniteGroup, spec: &str) -> Result<Self> {
        let bad = || Error::Argument(format!("cannot parse automorphism '{spec}' (expected neg, id, mul:K or perm:A,B,...)"));
        match spec.trim() {
            "neg" => Ok(Self::negation(group)),
            "id" => Ok(Self::identity(group.order())),
            s => {
                if let Some(k) = s.strip_prefix("mul:") {
                    let k: usize = k.trim().parse().map_err(|_| bad())?;
                    Ok(Self::multiplication(group, k % group.order()))
                } else if let Some(list) = s.strip_prefix("perm:") {
                    list.split(',')
                        .map(|x| x.trim().parse())
                        .collect::<std::result::Result<Vec<usize>, _>>()
                        .map(Self::new)
                        .map_err(|_| bad())
                } else {
                    Err(bad())
                }
            }
        }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// First `self`, then `other`.
    pub fn then(&self, other: &Automorphism) -> Automorphism {
        Automorphism { map: self.map.iter().map(|&x| other.map[x]).collect() }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Automorphism { map: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Nonzero elements fixed by this map.
    pub fn nonzero_fixed_points(&self) -> Vec<usize> {
        self.map.iter().enumerate().skip(1).filter(|(x, y)| x == *y).map(|(x, _)| x).collect()
    }

    pub fn validate(&self, group: &FiniteGroup) -> Result<()> {
        let n = group.order();
        if self.map.len() != n {
            return Err(Error::InvalidAutomorphism(format!(
                "map has length {}, group has order {n}",
                self.map.len()
            )));
        }
        let mut hit = vec![false; n];
        for &y in &self.map {
            if y >= n || hit[y] {
                return Err(Error::InvalidAutomorphism(format!("{:?} is not a bijection", self.map)));
            }
            hit[y] = true;
        }
        if self.map[0] != 0 {
            return Err(Error::InvalidAutomorphism("0 is not fixed".into()));
        }
        for x in 0..n {
            for y in 0..n {
                if self.map[group.add(x, y)] != group.add(self.map[x], self.map[y]) {
                    return Err(Error::InvalidAutomorphism(format!(
                        "not additive at ({x}, {y})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A finite group of automorphisms, stored with its composition table.
/// Elements are sorted by their maps, so the identity is always index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismGroup {
    degree: usize,
    elements: Vec<Automorphism>,
    identity_index: usize,
    compose: Vec<usize>,
    inverse: Vec<usize>,
    lookup: HashMap<Vec<usize>, usize>,
}

impl AutomorphismGroup {
    pub fn trivial(degree: usize) -> Self {
        Self::from_elements(degree, vec![Automorphism::identity(degree)])
            .expect("identity alone is a group")
    }

    /// Builds the group from its full element list, checking closure.
    pub fn from_elements(degree: usize, mut elements: Vec<Automorphism>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        if elements.iter().any(|e| e.degree() != degree) {
            return Err(Error::InvalidAutomorphism("degree mismatch".into()));
        }
        let lookup: HashMap<Vec<usize>, usize> =
            elements.iter().enumerate().map(|(i, e)| (e.map.clone(), i)).collect();
        let identity_index = *lookup
            .get(&Automorphism::identity(degree).map)
            .ok_or_else(|| Error::InvalidAutomorphism("identity missing".into()))?;
        let k = elements.len();
        let mut compose = Vec::with_capacity(k * k);
        for a in &elements {
            for b in &elements {
                let c = a.then(b);
                match lookup.get(&c.map) {
                    Some(&i) => compose.push(i),
                    None => {
                        return Err(Error::InvalidAutomorphism("set is not closed under composition".into()))
                    }
                }
            }
        }
        let inverse = (0..k)
            .map(|i| (0..k).find(|&j| compose[i * k + j] == identity_index))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidAutomorphism("an element has no inverse".into()))?;
        Ok(AutomorphismGroup { degree, elements, identity_index, compose, inverse, lookup })
    }

    /// Closure of a set of generators under composition.
    pub fn from_generators(degree: usize, generators: &[Automorphism]) -> Result<Self> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::InvalidAutomorphism("degree mismatch".into()));
            }
            let mut sorted = g.map.clone();
            sorted.sort_unstable();
            if sorted.iter().enumerate().any(|(i, &v)| i != v) {
                return Err(Error::InvalidAutomorphism(format!("{:?} is not a bijection", g.map)));
            }
        }
        let id = Automorphism::identity(degree);
        let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
        seen.insert(id.map.clone(), ());
        let mut all = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(a) = queue.pop_front() {
            for g in generators {
                let c = a.then(g);
                if seen.insert(c.map.clone(), ()).is_none() {
                    all.push(c.clone());
                    queue.push_back(c);
                }
            }
        }
        Self::from_elements(degree, all)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &Automorphism {
        &self.elements[i]
    }

    pub fn identity_index(&self) -> usize {
        self.identity_index
    }

    /// Index of "first `i`, then `j`".
    #[inline]
    pub fn compose(&self, i: usize, j: usize) -> usize {
        self.compose[i * self.elements.len() + j]
    }

    #[inline]
    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    #[inline]
    pub fn apply(&self, i: usize, x: usize) -> usize {
        self.elements[i].map[x]
    }

    pub fn index_of(&self, map: &[usize]) -> Option<usize> {
        self.lookup.get(map).copied()
    }

    pub fn is_abelian(&self) -> bool {
        let k = self.order();
        (0..k).all(|i| (0..k).all(|j| self.compose(i, j) == self.compose(j, i)))
    }

    /// Indices of the elements commuting with everything.
    pub fn centre_indices(&self) -> Vec<usize> {
        let k = self.order();
        (0..k).filter(|&i| (0..k).all(|j| self.compose(i, j) == self.compose(j, i))).collect()
    }

    /// The subgroup on the given element indices.
    pub fn subgroup(&self, indices: &[usize]) -> Result<AutomorphismGroup> {
        Self::from_elements(self.degree, indices.iter().map(|&i| self.elements[i].clone()).collect())
    }

    /// Indices of the subgroup generated by the given indices, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let k = self.order();
        let mut seen = vec![false; k];
        seen[self.identity_index] = true;
        let mut queue = VecDeque::from([self.identity_index]);
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let c = self.compose(a, g);
                if !seen[c] {
                    seen[c] = true;
                    queue.push_back(c);
                }
            }
        }
        (0..k).filter(|&i| seen[i]).collect()
    }

    /// A smallest generating set (as element indices).
    pub fn generators(&self) -> Vec<usize> {
        let k = self.order();
        if k == 1 {
            return Vec::new();
        }
        for size in 1..k {
            for combo in (0..k).filter(|&i| i != self.identity_index).combinations(size) {
                if self.closure(&combo).len() == k {
                    return combo;
                }
            }
        }
        unreachable!("the whole group generates itself")
    }

    /// True when no non-identity element fixes a nonzero point.
    pub fn is_fixed_point_free(&self) -> bool {
        self.elements
            .iter()
            .enumerate()
            .all(|(i, e)| i == self.identity_index || e.nonzero_fixed_points().is_empty())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub representative: usize,
    pub members: Vec<usize>,
}

impl Orbit {
    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

/// Every additive automorphism of `group`, found by trying all images of a
/// minimal generating set that respect element orders.
pub fn automorphism_group(group: &FiniteGroup) -> AutomorphismGroup {
    let n = group.order();
    let gens = group.generating_set();
    if gens.is_empty() {
        return AutomorphismGroup::trivial(n);
    }
    // Breadth-first words: every element is reached as `prev + gens[k]`.
    let mut word: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut order_seen = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (k, &g) in gens.iter().enumerate() {
            let y = group.add(x, g);
            if !seen[y] {
                seen[y] = true;
                word[y] = Some((x, k));
                order_seen.push(y);
                queue.push_back(y);
            }
        }
    }
    let orders: Vec<usize> = (0..n).map(|x| group.element_order(x)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (0..n).filter(|&y| orders[y] == orders[g]).collect())
        .collect();

    let mut found = Vec::new();
    let mut map = vec![0usize; n];
    for images in candidates.iter().map(|c| c.iter().copied()).multi_cartesian_product() {
        for &y in &order_seen[1..] {
            let (prev, k) = word[y].expect("reached elements have words");
            map[y] = group.add(map[prev], images[k]);
        }
        let additive = (0..n)
            .all(|x| gens.iter().zip(&images).all(|(&g, &img)| map[group.add(x, g)] == group.add(map[x], img)));
        if !additive {
            continue;
        }
        let mut hit = vec![false; n];
        if map.iter().all(|&y| !std::mem::replace(&mut hit[y], true)) {
            found.push(Automorphism::new(map.clone()));
        }
    }
    AutomorphismGroup::from_elements(n, found).expect("automorphisms of a group form a group")
}

pub fn is_fixed_point_free(phi: &AutomorphismGroup, group: &FiniteGroup) -> bool {
    phi.degree() == group.order() && phi.is_fixed_point_free()
}

/// Whether `x -> -x + x phi` is a bijection of the group.
pub fn minus_id_plus_phi_bijective(phi: &Automorphism, group: &FiniteGroup) -> bool {
    let n = group.order();
    let mut hit = vec![false; n];
    (0..n).all(|x| {
        let y = group.add(group.neg(x), phi.apply(x));
        !std::mem::replace(&mut hit[y], true)
    })
}

/// The orbits of `phi` on `group`, `{0}` first, then sorted by least member.
pub fn orbits(phi: &AutomorphismGroup, group: &FiniteGroup) -> Vec<Orbit> {
    let n = group.order();
    let mut assigned = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if assigned[x] {
            continue;
        }
        let mut members: Vec<usize> = phi.elements().iter().map(|e| e.apply(x)).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            assigned[m] = true;
        }
        out.push(Orbit { representative: x, members });
    }
    out
}

/// The centre `Z(phi)` as an automorphism group in its own right.
pub fn centre_of(phi: &AutomorphismGroup) -> AutomorphismGroup {
    phi.subgroup(&phi.centre_indices()).expect("the centre is a subgroup")
}
