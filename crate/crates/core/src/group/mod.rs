//! Finite groups stored as full multiplication tables.
//!
//! Element `0` is always the identity. Groups built from permutations list
//! their elements in breadth-first order from the identity, multiplying on the
//! right by the generators in the order given.

mod chartab;
mod rep;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

pub use chartab::{character_table, CharacterTable};
pub use rep::{irreducible_representation, Representation};

/// Default bound on the order of groups produced by closure.
pub const DEFAULT_MAX_GROUP_ORDER: usize = 5000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("multiplication table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("element 0 is not a two-sided identity")]
    BadIdentity,
    #[error("element {0} has no inverse")]
    MissingInverse(usize),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("closure exceeds the maximal group order {limit}")]
    OrderTooLarge { limit: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("map is not a homomorphism: f({0}*{1}) != f({0})*f({1})")]
    NotHomomorphism(usize, usize),
    #[error("element {0} is out of range")]
    OutOfRange(usize),
    #[error("subset is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("character table computation failed: {0}")]
    CharacterTable(String),
    #[error("representation construction failed: {0}")]
    Representation(String),
}

pub type Result<T> = std::result::Result<T, GroupError>;

/// A permutation of `0..n`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(GroupError::InvalidPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    /// Builds a permutation of `0..n` from 1-based cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cyc in cycles {
            for (k, &p) in cyc.iter().enumerate() {
                if p == 0 || p > n || used[p - 1] {
                    return Err(GroupError::InvalidPermutation(format!("{cycles:?}")));
                }
                used[p - 1] = true;
                images[p - 1] = cyc[(k + 1) % cyc.len()] - 1;
            }
        }
        Ok(Perm(images))
    }

    /// Parses cycle notation such as `(1,2)(3,4,5)`; `()` is the identity.
    pub fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
        let bad = || GroupError::InvalidPermutation(text.to_string());
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() || !t.starts_with('(') || !t.ends_with(')') {
            return Err(bad());
        }
        let mut cycles = Vec::new();
        for chunk in t[1..t.len() - 1].split(")(") {
            if chunk.is_empty() {
                continue;
            }
            let cyc = chunk
                .split(',')
                .map(|s| s.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            cycles.push(cyc);
        }
        Ok(cycles)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self * other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    fn padded(&self, n: usize) -> Perm {
        let mut v = self.0.clone();
        v.extend(self.0.len()..n);
        Perm(v)
    }
}

impl fmt::Display for Perm {
    /// Cycle notation with 1-based points.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut out = String::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push((i + 1).to_string());
                i = self.0[i];
            }
            out.push_str(&format!("({})", cyc.join(",")));
        }
        if out.is_empty() {
            out.push_str("()");
        }
        f.write_str(&out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    generators: Vec<usize>,
    labels: Vec<String>,
    perms: Option<Vec<Perm>>,
}

/// A subgroup together with its embedding into the ambient group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub group: FiniteGroup,
    /// Ambient index of each subgroup element, strictly increasing.
    pub embedding: Vec<usize>,
}

impl Subgroup {
    /// Local index of an ambient element, if it lies in the subgroup.
    pub fn local(&self, ambient: usize) -> Option<usize> {
        self.embedding.binary_search(&ambient).ok()
    }

    pub fn contains(&self, ambient: usize) -> bool {
        self.local(ambient).is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Smallest element index in the class.
    pub representative: usize,
    /// Members in increasing index order.
    pub elements: Vec<usize>,
}

/// Conjugacy classes, ordered by representative, with centralizers.
#[derive(Clone, Debug)]
pub struct ConjugacyData {
    pub classes: Vec<ConjugacyClass>,
    pub class_of: Vec<usize>,
    pub centralizers: Vec<Subgroup>,
}

impl FiniteGroup {
    /// Builds a group from a row-major table, validating every axiom.
    pub fn from_table(order: usize, table: Vec<usize>) -> Result<Self> {
        Self::from_table_labeled(order, table, None)
    }

    /// As [`FiniteGroup::from_table`], with one label per element.
    pub fn from_table_with_labels(
        order: usize,
        table: Vec<usize>,
        labels: Vec<String>,
    ) -> Result<Self> {
        if labels.len() != order {
            return Err(GroupError::InvalidTable(format!(
                "{} labels for {} elements",
                labels.len(),
                order
            )));
        }
        Self::from_table_labeled(order, table, Some(labels))
    }

    fn from_table_labeled(
        order: usize,
        table: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if order == 0 {
            return Err(GroupError::InvalidTable("empty group".into()));
        }
        if table.len() != order * order {
            return Err(GroupError::InvalidTable(format!(
                "expected {} entries, found {}",
                order * order,
                table.len()
            )));
        }
        if let Some(bad) = table.iter().find(|&&x| x >= order) {
            return Err(GroupError::OutOfRange(*bad));
        }
        let at = |a: usize, b: usize| table[a * order + b];
        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return Err(GroupError::BadIdentity);
            }
        }
        let mut inverses = vec![usize::MAX; order];
        for a in 0..order {
            let inv = (0..order).find(|&b| at(a, b) == 0 && at(b, a) == 0);
            inverses[a] = inv.ok_or(GroupError::MissingInverse(a))?;
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let labels = labels.unwrap_or_else(|| (0..order).map(|i| i.to_string()).collect());
        let mut g = FiniteGroup {
            order,
            table,
            inverses,
            generators: Vec::new(),
            labels,
            perms: None,
        };
        g.generators = g.greedy_generators();
        Ok(g)
    }

    // Unchecked constructor for tables derived from a valid group.
    fn from_trusted_table(order: usize, table: Vec<usize>, labels: Vec<String>) -> Self {
        let mut inverses = vec![0; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 {
                    inverses[a] = b;
                    break;
                }
            }
        }
        let mut g = FiniteGroup {
            order,
            table,
            inverses,
            generators: Vec::new(),
            labels,
            perms: None,
        };
        g.generators = g.greedy_generators();
        g
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0];
        for x in 1..self.order {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// Closes a set of permutations under composition.
    pub fn from_permutations(gens: &[Perm]) -> Result<Self> {
        Self::from_permutations_bounded(gens, DEFAULT_MAX_GROUP_ORDER)
    }

    pub fn from_permutations_bounded(gens: &[Perm], max_order: usize) -> Result<Self> {
        let degree = gens.iter().map(Perm::degree).max().unwrap_or(0);
        let gens: Vec<Perm> = gens.iter().map(|p| p.padded(degree)).collect();
        let mut elements = vec![Perm::identity(degree)];
        let mut index: HashMap<Perm, usize> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let y = elements[i].compose(g);
                if !index.contains_key(&y) {
                    if elements.len() == max_order {
                        return Err(GroupError::OrderTooLarge { limit: max_order });
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&elements[a].compose(&elements[b])];
            }
        }
        let labels = elements.iter().map(ToString::to_string).collect();
        let mut g = FiniteGroup::from_trusted_table(n, table, labels);
        g.generators = gens.iter().map(|p| index[p]).filter(|&i| i != 0).collect();
        g.generators.dedup();
        g.perms = Some(elements);
        Ok(g)
    }

    pub fn trivial() -> Self {
        FiniteGroup::from_trusted_table(1, vec![0], vec!["e".into()])
    }

    /// `Z_n` with element `k` standing for the `k`-th power of the generator.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let labels = (0..n).map(|k| k.to_string()).collect();
        let mut g = FiniteGroup::from_trusted_table(n, table, labels);
        g.generators = if n > 1 { vec![1] } else { vec![] };
        g
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[vec![1, 2]]).unwrap());
        }
        if n >= 3 {
            gens.push(Perm::from_cycles(n, &[(1..=n).collect()]).unwrap());
        }
        if gens.is_empty() {
            return FiniteGroup::trivial();
        }
        FiniteGroup::from_permutations(&gens).expect("symmetric group within bounds")
    }

    /// Dihedral group of order `2n` acting on an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 3, "dihedral group needs n >= 3");
        let rot = Perm::from_cycles(n, &[(1..=n).collect()]).unwrap();
        let refl_images: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        let refl = Perm::from_images(refl_images).unwrap();
        FiniteGroup::from_permutations(&[rot, refl]).expect("dihedral group within bounds")
    }

    /// Quaternion group, elements ordered `1, -1, i, -i, j, -j, k, -k`.
    pub fn quaternion() -> Self {
        // unit index: 0 = 1, 1 = i, 2 = j, 3 = k; sign bit
        let unit_mul = |a: usize, b: usize| -> (bool, usize) {
            match (a, b) {
                (0, x) | (x, 0) => (false, x),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 1) => (true, 3),
                (2, 3) => (false, 1),
                (3, 2) => (true, 1),
                (3, 1) => (false, 2),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let decode = |e: usize| (e % 2 == 1, e / 2);
        let encode = |neg: bool, u: usize| 2 * u + usize::from(neg);
        let mut table = vec![0; 64];
        for a in 0..8 {
            for b in 0..8 {
                let (sa, ua) = decode(a);
                let (sb, ub) = decode(b);
                let (s, u) = unit_mul(ua, ub);
                table[a * 8 + b] = encode(sa ^ sb ^ s, u);
            }
        }
        let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let mut g = FiniteGroup::from_trusted_table(8, table, labels);
        g.generators = vec![2, 4];
        g
    }

    /// Direct product; element `(a, b)` has index `a * |B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let (xa, xb) = (x / nb, x % nb);
                let (ya, yb) = (y / nb, y % nb);
                table[x * n + y] = a.mul(xa, ya) * nb + b.mul(xb, yb);
            }
        }
        let labels = (0..n)
            .map(|x| format!("({},{})", a.labels[x / nb], b.labels[x % nb]))
            .collect();
        let mut g = FiniteGroup::from_trusted_table(n, table, labels);
        g.generators = a
            .generators
            .iter()
            .map(|&x| x * nb)
            .chain(b.generators.iter().copied())
            .collect();
        g
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g a g^{-1}`.
    pub fn conjugate(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inverses[g])
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inverses[a] } else { a };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
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

    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1, |acc, a| num_integer::lcm(acc, self.element_order(a)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn permutations(&self) -> Option<&[Perm]> {
        self.perms.as_deref()
    }

    /// Row-major multiplication table.
    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// Replaces the generating set, which must generate the whole group.
    pub fn with_generators(mut self, gens: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = gens.iter().find(|&&x| x >= self.order) {
            return Err(GroupError::OutOfRange(bad));
        }
        if self.closure(&gens).len() != self.order {
            return Err(GroupError::InvalidTable(
                "generators do not generate the group".into(),
            ));
        }
        self.generators = gens;
        Ok(self)
    }

    /// Finds an element by its label or, failing that, by index.
    pub fn find_element(&self, token: &str) -> Option<usize> {
        let t: String = token.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(perms) = &self.perms {
            if let Ok(cycles) = Perm::parse_cycles(&t) {
                let deg = perms[0].degree();
                if let Ok(p) = Perm::from_cycles(deg, &cycles) {
                    return perms.iter().position(|q| *q == p);
                }
                return None;
            }
        }
        if let Some(i) = self.labels.iter().position(|l| *l == t) {
            return Some(i);
        }
        t.parse::<usize>().ok().filter(|&i| i < self.order)
    }

    /// Sorted closure of a set of elements under multiplication.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut list = vec![0];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        list
    }

    /// The subgroup on a sorted element set containing the identity.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup> {
        let mut emb = elements.to_vec();
        emb.sort_unstable();
        emb.dedup();
        if emb.first() != Some(&0) {
            return Err(GroupError::NotSubgroup("identity missing".into()));
        }
        let n = emb.len();
        let mut table = vec![0; n * n];
        for (i, &a) in emb.iter().enumerate() {
            for (j, &b) in emb.iter().enumerate() {
                let ab = self.mul(a, b);
                table[i * n + j] = emb.binary_search(&ab).map_err(|_| {
                    GroupError::NotSubgroup(format!(
                        "{} * {} leaves the subset",
                        self.labels[a], self.labels[b]
                    ))
                })?;
            }
        }
        let labels = emb.iter().map(|&a| self.labels[a].clone()).collect();
        let mut group = FiniteGroup::from_trusted_table(n, table, labels);
        if let Some(perms) = &self.perms {
            group.perms = Some(emb.iter().map(|&a| perms[a].clone()).collect());
        }
        Ok(Subgroup {
            group,
            embedding: emb,
        })
    }

    pub fn centralizer(&self, a: usize) -> Subgroup {
        let elems: Vec<usize> = (0..self.order)
            .filter(|&g| self.mul(g, a) == self.mul(a, g))
            .collect();
        self.subgroup(&elems).expect("centralizer is a subgroup")
    }

    pub fn conjugacy_data(&self) -> ConjugacyData {
        let n = self.order;
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let mut elems: Vec<usize> = (0..n).map(|g| self.conjugate(g, a)).collect();
            elems.sort_unstable();
            elems.dedup();
            for &x in &elems {
                class_of[x] = classes.len();
            }
            classes.push(ConjugacyClass {
                representative: a,
                elements: elems,
            });
        }
        let centralizers = classes
            .iter()
            .map(|c| self.centralizer(c.representative))
            .collect();
        ConjugacyData {
            classes,
            class_of,
            centralizers,
        }
    }

    /// Full associativity scan; cubic in the order.
    pub fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// Sorted element orders, a cheap isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }
}

/// A homomorphism between finite groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source: FiniteGroup,
    pub target: FiniteGroup,
    pub images: Vec<usize>,
}

impl GroupHom {
    /// Validates a full element map.
    pub fn new(source: FiniteGroup, target: FiniteGroup, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.order() {
            return Err(GroupError::InvalidTable(format!(
                "homomorphism needs {} images, got {}",
                source.order(),
                images.len()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&x| x >= target.order()) {
            return Err(GroupError::OutOfRange(bad));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if images[source.mul(a, b)] != target.mul(images[a], images[b]) {
                    return Err(GroupError::NotHomomorphism(a, b));
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            images,
        })
    }

    /// Extends images of `source.generators()` to a homomorphism.
    pub fn from_generator_images(
        source: FiniteGroup,
        target: FiniteGroup,
        gen_images: &[usize],
    ) -> Result<Self> {
        let gens = source.generators().to_vec();
        if gens.len() != gen_images.len() {
            return Err(GroupError::InvalidTable(format!(
                "expected {} generator images, got {}",
                gens.len(),
                gen_images.len()
            )));
        }
        if let Some(&bad) = gen_images.iter().find(|&&x| x >= target.order()) {
            return Err(GroupError::OutOfRange(bad));
        }
        let mut images = vec![usize::MAX; source.order()];
        images[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (g, &gi) in gens.iter().zip(gen_images) {
                let y = source.mul(x, *g);
                if images[y] == usize::MAX {
                    images[y] = target.mul(images[x], gi);
                    queue.push_back(y);
                }
            }
        }
        if images.contains(&usize::MAX) {
            return Err(GroupError::InvalidTable(
                "generators do not generate the source".into(),
            ));
        }
        GroupHom::new(source, target, images)
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            images: (0..g.order()).collect(),
        }
    }

    /// Inclusion of a subgroup.
    pub fn inclusion(sub: &Subgroup, ambient: &FiniteGroup) -> Self {
        GroupHom {
            source: sub.group.clone(),
            target: ambient.clone(),
            images: sub.embedding.clone(),
        }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.source.order())
            .filter(|&a| self.images[a] == 0)
            .collect()
    }

    pub fn image(&self) -> Vec<usize> {
        let mut v = self.images.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.order()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// How the set-theoretic section of a projection is chosen on each coset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SectionChoice {
    /// Smallest element index in each fiber.
    #[default]
    Minimal,
    /// Largest element index in each fiber (identity still maps to identity).
    Maximal,
}

/// A verified short exact sequence `1 -> G1 -> G2 -> J -> 1` with a section of the projection.
#[derive(Clone, Debug)]
pub struct ExactSequence {
    pub incl: GroupHom,
    pub proj: GroupHom,
    /// `section[j]` is an element of `G2` over `j`; `section[0] = 0`.
    pub section: Vec<usize>,
}

impl ExactSequence {
    pub fn g1(&self) -> &FiniteGroup {
        &self.incl.source
    }

    pub fn g2(&self) -> &FiniteGroup {
        &self.incl.target
    }

    pub fn quotient(&self) -> &FiniteGroup {
        &self.proj.target
    }
}

/// Checks exactness of `incl` followed by `proj` and picks a section.
pub fn exact_sequence_check(
    incl: &GroupHom,
    proj: &GroupHom,
    choice: SectionChoice,
) -> Result<ExactSequence> {
    if incl.target != proj.source {
        return Err(GroupError::NotExact("middle groups differ".into()));
    }
    let g2 = &incl.target;
    if let Some(&bad) = incl.kernel().get(1) {
        return Err(GroupError::NotExact(format!(
            "inclusion is not injective: {} maps to the identity",
            incl.source.label(bad)
        )));
    }
    let image = incl.image();
    for j in 0..proj.target.order() {
        if !proj.images.contains(&j) {
            return Err(GroupError::NotExact(format!(
                "projection misses {}",
                proj.target.label(j)
            )));
        }
    }
    let kernel = proj.kernel();
    for x in 0..g2.order() {
        let in_image = image.binary_search(&x).is_ok();
        let in_kernel = kernel.binary_search(&x).is_ok();
        if in_image != in_kernel {
            return Err(GroupError::NotExact(format!(
                "element {} is {} the image of the inclusion but {} the kernel of the projection",
                g2.label(x),
                if in_image { "in" } else { "not in" },
                if in_kernel { "in" } else { "not in" }
            )));
        }
    }
    for g in 0..g2.order() {
        for &x in &image {
            if image.binary_search(&g2.conjugate(g, x)).is_err() {
                return Err(GroupError::NotExact(format!(
                    "image is not normal: {} conjugated by {}",
                    g2.label(x),
                    g2.label(g)
                )));
            }
        }
    }
    let mut section = vec![usize::MAX; proj.target.order()];
    for x in 0..g2.order() {
        let j = proj.images[x];
        match choice {
            SectionChoice::Minimal => {
                if section[j] == usize::MAX {
                    section[j] = x;
                }
            }
            SectionChoice::Maximal => section[j] = x,
        }
    }
    section[0] = 0;
    Ok(ExactSequence {
        incl: incl.clone(),
        proj: proj.clone(),
        section,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, text: &str) -> Perm {
        Perm::from_cycles(n, &Perm::parse_cycles(text).unwrap()).unwrap()
    }

    #[test]
    fn closure_examples() {
        let z2 = FiniteGroup::from_permutations(&[perm(2, "(1,2)")]).unwrap();
        assert_eq!(z2.order(), 2);
        let s3 = FiniteGroup::from_permutations(&[perm(3, "(1,2)"), perm(3, "(1,2,3)")]).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.label(0), "()");
        assert_eq!(s3.label(1), "(1,2)");
        assert_eq!(FiniteGroup::from_permutations(&[]).unwrap().order(), 1);
        let big = FiniteGroup::from_permutations_bounded(
            &[perm(5, "(1,2)"), perm(5, "(1,2,3,4,5)")],
            100,
        );
        assert_eq!(big, Err(GroupError::OrderTooLarge { limit: 100 }));
    }

    #[test]
    fn all_small_groups_are_associative() {
        for g in [
            FiniteGroup::cyclic(7),
            FiniteGroup::symmetric(4),
            FiniteGroup::dihedral(4),
            FiniteGroup::quaternion(),
            FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::symmetric(3)),
        ] {
            g.check_associativity().unwrap();
            FiniteGroup::from_table(g.order(), g.table().to_vec()).unwrap();
        }
    }

    #[test]
    fn s3_classes_and_centralizers() {
        let s3 = FiniteGroup::symmetric(3);
        let cd = s3.conjugacy_data();
        let mut sizes: Vec<usize> = cd.classes.iter().map(|c| c.elements.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        let three_cycle = s3.find_element("(1,2,3)").unwrap();
        assert_eq!(s3.centralizer(three_cycle).group.order(), 3);
        // class equation
        let total: usize = cd
            .centralizers
            .iter()
            .map(|c| s3.order() / c.group.order())
            .sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4));
        assert_eq!(g.conjugacy_data().classes.len(), 8);
    }

    #[test]
    fn quaternion_profile() {
        let q8 = FiniteGroup::quaternion();
        assert_eq!(q8.order_profile(), vec![1, 2, 4, 4, 4, 4, 4, 4]);
        assert_eq!(q8.conjugacy_data().classes.len(), 5);
        assert_eq!(
            FiniteGroup::dihedral(4).order_profile(),
            vec![1, 2, 2, 2, 2, 2, 4, 4]
        );
    }

    #[test]
    fn bad_tables_are_rejected() {
        // a Latin square with identity 0 that is not associative
        let t = vec![
            0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0,
        ];
        assert!(matches!(
            FiniteGroup::from_table(5, t),
            Err(GroupError::NotAssociative(..))
        ));
        assert_eq!(
            FiniteGroup::from_table(2, vec![1, 0, 0, 1]),
            Err(GroupError::BadIdentity)
        );
    }

    fn s3_sequence() -> (GroupHom, GroupHom) {
        let s3 = FiniteGroup::symmetric(3);
        let rot = s3.closure(&[s3.find_element("(1,2,3)").unwrap()]);
        let sub = s3.subgroup(&rot).unwrap();
        let incl = GroupHom::inclusion(&sub, &s3);
        let z2 = FiniteGroup::cyclic(2);
        let sign: Vec<usize> = (0..6).map(|x| usize::from(!sub.contains(x))).collect();
        let proj = GroupHom::new(s3, z2, sign).unwrap();
        (incl, proj)
    }

    #[test]
    fn s3_over_z2_is_exact() {
        let (incl, proj) = s3_sequence();
        let seq = exact_sequence_check(&incl, &proj, SectionChoice::Minimal).unwrap();
        assert_eq!(seq.quotient().order(), 2);
        assert_eq!(seq.section[0], 0);
        assert_eq!(seq.g2().label(seq.section[1]), "(1,2)");
    }

    #[test]
    fn non_normal_inclusion_fails() {
        let s3 = FiniteGroup::symmetric(3);
        let t = s3.closure(&[s3.find_element("(1,2)").unwrap()]);
        let sub = s3.subgroup(&t).unwrap();
        let incl = GroupHom::inclusion(&sub, &s3);
        let (_, proj) = s3_sequence();
        assert!(matches!(
            exact_sequence_check(&incl, &proj, SectionChoice::Minimal),
            Err(GroupError::NotExact(_))
        ));
    }

    #[test]
    fn split_product_has_homomorphic_minimal_section() {
        let g1 = FiniteGroup::cyclic(3);
        let j = FiniteGroup::cyclic(2);
        let g2 = FiniteGroup::direct_product(&g1, &j);
        let incl = GroupHom::new(g1.clone(), g2.clone(), (0..3).map(|a| a * 2).collect()).unwrap();
        let proj = GroupHom::new(g2.clone(), j, (0..6).map(|x| x % 2).collect()).unwrap();
        let seq = exact_sequence_check(&incl, &proj, SectionChoice::Minimal).unwrap();
        assert_eq!(seq.section, vec![0, 1]);
        assert_eq!(g2.mul(1, 1), 0);
    }

    #[test]
    fn homomorphism_from_generators() {
        let z4 = FiniteGroup::cyclic(4);
        let z2 = FiniteGroup::cyclic(2);
        let h = GroupHom::from_generator_images(z4, z2, &[1]).unwrap();
        assert_eq!(h.images, vec![0, 1, 0, 1]);
        assert_eq!(h.kernel(), vec![0, 2]);
        let bad =
            GroupHom::from_generator_images(FiniteGroup::cyclic(3), FiniteGroup::cyclic(2), &[1]);
        assert!(matches!(bad, Err(GroupError::NotHomomorphism(..))));
    }

    #[test]
    fn cycle_notation_round_trip() {
        let p = perm(5, "(1,3,5)(2,4)");
        assert_eq!(p.to_string(), "(1,3,5)(2,4)");
        assert_eq!(Perm::identity(3).to_string(), "()");
        assert!(Perm::parse_cycles("(1,2").is_err());
        assert!(Perm::from_cycles(3, &[vec![1, 1]]).is_err());
    }
}
