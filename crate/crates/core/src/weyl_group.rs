//! Enumeration of a finite Weyl group, its conjugacy classes, centralisers and power maps.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::e6::E6Expectations;
use crate::exact_linalg::{char_poly, cyclotomic_multiset, kernel_basis_rational, IntMatrix};
use crate::root_system::{GroupElement, RootSystem, RootSystemError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("class {label}: {reason}")]
    ClassMatchFailure { label: String, reason: String },
    #[error("matrix entry does not fit a signed byte; canonical keys would collide")]
    KeyOverflow,
    #[error("cached group is inconsistent: {0}")]
    BadCache(String),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
}

/// The enumerated group. Elements are indexed `0..order`, identity first.
#[derive(Clone, Debug)]
pub struct Group {
    rank: usize,
    generators: Vec<GroupElement>,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
}

impl Group {
    /// Breadth-first closure of the simple reflections.
    pub fn enumerate(rs: &RootSystem) -> Result<Self, WeylError> {
        let n = rs.rank();
        let generators = rs.simple_reflections().to_vec();
        let identity = GroupElement::identity(n);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut head = 0;
        while head < elements.len() {
            let g = elements[head].clone();
            head += 1;
            for s in &generators {
                let h = g.mul(s);
                if !index.contains_key(&h) {
                    if h.canonical_key().is_none() {
                        return Err(WeylError::KeyOverflow);
                    }
                    index.insert(h.clone(), elements.len());
                    elements.push(h);
                }
            }
        }
        Ok(Self {
            rank: n,
            generators,
            elements,
            index,
        })
    }

    /// Rebuilds a group from a stored element list; checks closure under the generators.
    pub fn from_elements(rs: &RootSystem, elements: Vec<GroupElement>) -> Result<Self, WeylError> {
        let generators = rs.simple_reflections().to_vec();
        if elements.first().is_none_or(|e| !e.is_identity()) {
            return Err(WeylError::BadCache("identity must come first".into()));
        }
        let index: HashMap<GroupElement, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, g)| (g, i))
            .collect();
        if index.len() != elements.len() {
            return Err(WeylError::BadCache("duplicate elements".into()));
        }
        let group = Self {
            rank: rs.rank(),
            generators,
            elements,
            index,
        };
        for g in &group.elements {
            for s in &group.generators {
                if !group.index.contains_key(&g.mul(s)) {
                    return Err(WeylError::BadCache("not closed under generators".into()));
                }
            }
        }
        Ok(group)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g)
    }
}

/// A subgroup, stored as sorted indices into its parent group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub fn from_indices(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Self { members }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.members
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&i| other.contains_index(i))
    }

    pub fn elements<'a>(&'a self, group: &'a Group) -> impl Iterator<Item = &'a GroupElement> + 'a {
        self.members.iter().map(move |&i| group.element(i))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            members: self
                .members
                .iter()
                .copied()
                .filter(|&i| other.contains_index(i))
                .collect(),
        }
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generating_set(&self, group: &Group) -> Vec<GroupElement> {
        let mut gens: Vec<GroupElement> = Vec::new();
        let mut span = Subgroup::from_indices(vec![0]);
        for &i in &self.members {
            if span.order() == self.order() {
                break;
            }
            if span.contains_index(i) {
                continue;
            }
            gens.push(group.element(i).clone());
            span = subgroup_generated(group, &gens);
        }
        gens
    }
}

/// Closure of `gens` inside `group`.
pub fn subgroup_generated(group: &Group, gens: &[GroupElement]) -> Subgroup {
    let id = group
        .index_of(&GroupElement::identity(group.rank()))
        .expect("identity present");
    let mut seen = vec![false; group.order()];
    seen[id] = true;
    let mut members = vec![id];
    let mut queue = VecDeque::from([id]);
    while let Some(i) = queue.pop_front() {
        for s in gens {
            let j = group
                .index_of(&group.element(i).mul(s))
                .expect("generator outside group");
            if !seen[j] {
                seen[j] = true;
                members.push(j);
                queue.push_back(j);
            }
        }
    }
    Subgroup::from_indices(members)
}

/// `{g : gw = wg}` by a linear scan over the group.
pub fn centraliser(group: &Group, w: &GroupElement) -> Subgroup {
    let members = group
        .elements()
        .iter()
        .enumerate()
        .filter(|(_, g)| g.commutes_with(w))
        .map(|(i, _)| i)
        .collect();
    Subgroup { members }
}

/// `n − dim ker(I − w)`: the number of non-unit eigenvalues.
pub fn reflection_length(w: &GroupElement) -> usize {
    let n = w.dim();
    let i_minus_w = &IntMatrix::identity(n) - &w.matrix();
    n - kernel_basis_rational(&i_minus_w).len()
}

/// Cyclotomic multiset of the characteristic polynomial.
pub fn eigenvalue_orders(w: &GroupElement) -> Vec<(u32, u32)> {
    let p = char_poly(&w.matrix()).expect("square");
    cyclotomic_multiset(&p).expect("Weyl group elements have root-of-unity spectra")
}

/// Partition of the group into conjugacy classes.
#[derive(Clone, Debug)]
pub struct ClassPartition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl ClassPartition {
    /// Orbits under conjugation by the generators, seeded in index order.
    pub fn compute(group: &Group) -> Self {
        let inverses: Vec<GroupElement> = group
            .generators()
            .iter()
            .map(GroupElement::inverse)
            .collect();
        let mut class_of = vec![usize::MAX; group.order()];
        let mut classes = Vec::new();
        for seed in 0..group.order() {
            if class_of[seed] != usize::MAX {
                continue;
            }
            let c = classes.len();
            class_of[seed] = c;
            let mut members = vec![seed];
            let mut queue = VecDeque::from([seed]);
            while let Some(i) = queue.pop_front() {
                let x = group.element(i);
                for (s, s_inv) in group.generators().iter().zip(&inverses) {
                    let y = s_inv.mul(x).mul(s);
                    let j = group.index_of(&y).expect("conjugate stays in group");
                    if class_of[j] == usize::MAX {
                        class_of[j] = c;
                        members.push(j);
                        queue.push_back(j);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        Self { class_of, classes }
    }

    pub fn from_class_of(class_of: Vec<usize>) -> Self {
        let count = class_of.iter().copied().max().map_or(0, |m| m + 1);
        let mut classes = vec![Vec::new(); count];
        for (i, &c) in class_of.iter().enumerate() {
            classes[c].push(i);
        }
        Self { class_of, classes }
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element]
    }

    pub fn class_of_all(&self) -> &[usize] {
        &self.class_of
    }

    pub fn members(&self, class: usize) -> &[usize] {
        &self.classes[class]
    }
}

/// One conjugacy class with a chosen representative and its centraliser.
#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub label: String,
    /// Word for the representative, when one is known.
    pub word: Option<String>,
    pub representative: GroupElement,
    pub partition_index: usize,
    pub size: usize,
    pub eigenvalue_orders: Vec<(u32, u32)>,
    pub order: u64,
    pub centraliser: Subgroup,
    pub centraliser_generators: Vec<GroupElement>,
    pub elementary: Option<ElementaryPart>,
    /// Whether the reference centraliser generators generate the computed centraliser.
    pub reference_generators_generate: Option<bool>,
}

impl ConjugacyClass {
    pub fn centraliser_order(&self) -> usize {
        self.centraliser.order()
    }

    pub fn torus_dim(&self) -> usize {
        self.representative.dim() - reflection_length(&self.representative)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementaryPart {
    pub generators: Vec<String>,
    pub order: usize,
    pub index: usize,
}

/// Classes with representatives and centralisers; the input to all fixed-set computations.
#[derive(Clone, Debug)]
pub struct ClassTable {
    pub partition: ClassPartition,
    pub classes: Vec<ConjugacyClass>,
}

impl ClassTable {
    /// Generic table: representative = shortest-reflection-length member of least index.
    pub fn generic(group: &Group, partition: ClassPartition) -> Self {
        let mut seeds: Vec<(usize, usize, usize)> = (0..partition.class_count())
            .map(|c| {
                let best = partition
                    .members(c)
                    .iter()
                    .copied()
                    .min_by_key(|&i| (reflection_length(group.element(i)), i))
                    .expect("nonempty class");
                (reflection_length(group.element(best)), best, c)
            })
            .collect();
        seeds.sort_unstable();
        let classes = seeds
            .into_par_iter()
            .enumerate()
            .map(|(k, (_, rep, c))| {
                let representative = group.element(rep).clone();
                let centraliser = centraliser(group, &representative);
                let centraliser_generators = centraliser.generating_set(group);
                ConjugacyClass {
                    label: format!("c{k}"),
                    word: None,
                    eigenvalue_orders: eigenvalue_orders(&representative),
                    order: representative.order(),
                    representative,
                    partition_index: c,
                    size: partition.members(c).len(),
                    centraliser,
                    centraliser_generators,
                    elementary: None,
                    reference_generators_generate: None,
                }
            })
            .collect();
        Self { partition, classes }
    }

    /// E6 table: each class is matched to its reference row by eigenvalue data, and the
    /// reference word is checked to lie in that class.
    pub fn e6(
        rs: &RootSystem,
        group: &Group,
        partition: ClassPartition,
        expected: &E6Expectations,
    ) -> Result<Self, WeylError> {
        if partition.class_count() != expected.classes.len() {
            return Err(WeylError::ClassMatchFailure {
                label: "*".into(),
                reason: format!(
                    "{} classes computed, {} expected",
                    partition.class_count(),
                    expected.classes.len()
                ),
            });
        }
        let mut by_eigen: HashMap<Vec<(u32, u32)>, usize> = HashMap::new();
        for c in 0..partition.class_count() {
            let ev = eigenvalue_orders(group.element(partition.members(c)[0]));
            if by_eigen.insert(ev.clone(), c).is_some() {
                return Err(WeylError::ClassMatchFailure {
                    label: "*".into(),
                    reason: format!("two classes share eigenvalue data {ev:?}"),
                });
            }
        }
        let classes: Result<Vec<ConjugacyClass>, WeylError> = expected
            .classes
            .par_iter()
            .map(|row| {
                let fail = |reason: String| WeylError::ClassMatchFailure {
                    label: row.label.clone(),
                    reason,
                };
                let rep = rs.parse_word(&row.word)?;
                let c = *by_eigen.get(&row.eigenvalue_orders).ok_or_else(|| {
                    fail(format!(
                        "no class has eigenvalue data {:?}",
                        row.eigenvalue_orders
                    ))
                })?;
                let idx = group
                    .index_of(&rep)
                    .ok_or_else(|| fail("representative not in group".into()))?;
                if partition.class_of(idx) != c {
                    return Err(fail(
                        "representative is not conjugate into the class with its eigenvalues"
                            .into(),
                    ));
                }
                let centraliser = centraliser(group, &rep);
                let elementary_gens = row
                    .elementary_generators
                    .iter()
                    .map(|w| rs.parse_word(w))
                    .collect::<Result<Vec<_>, _>>()?;
                let elementary = subgroup_generated(group, &elementary_gens);
                if !elementary.is_subgroup_of(&centraliser) {
                    return Err(fail(
                        "elementary part does not centralise the representative".into(),
                    ));
                }
                let full_gens = row
                    .centraliser_generators
                    .iter()
                    .map(|w| rs.parse_word(w))
                    .collect::<Result<Vec<_>, _>>()?;
                let generate = subgroup_generated(group, &full_gens) == centraliser;
                let centraliser_generators = if generate {
                    full_gens
                } else {
                    centraliser.generating_set(group)
                };
                Ok(ConjugacyClass {
                    label: row.label.clone(),
                    word: Some(row.word.clone()),
                    eigenvalue_orders: eigenvalue_orders(&rep),
                    order: rep.order(),
                    representative: rep,
                    partition_index: c,
                    size: partition.members(c).len(),
                    elementary: Some(ElementaryPart {
                        generators: row.elementary_generators.clone(),
                        order: elementary.order(),
                        index: centraliser.order() / elementary.order(),
                    }),
                    centraliser,
                    centraliser_generators,
                    reference_generators_generate: Some(generate),
                })
            })
            .collect();
        Ok(Self {
            partition,
            classes: classes?,
        })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn by_label(&self, label: &str) -> Option<&ConjugacyClass> {
        self.classes.iter().find(|c| c.label == label)
    }

    /// Position in `classes` of the class containing group element `i`.
    pub fn class_position(&self, group_index: usize) -> usize {
        let p = self.partition.class_of(group_index);
        self.classes
            .iter()
            .position(|c| c.partition_index == p)
            .expect("every class is tabulated")
    }
}

/// Cyclotomic multiset as text, e.g. `Φ1^2 Φ3^2`.
pub fn eigenvalue_string(orders: &[(u32, u32)]) -> String {
    orders
        .iter()
        .map(|&(d, k)| {
            if k == 1 {
                format!("Φ{d}")
            } else {
                format!("Φ{d}^{k}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// One row of the class table, in serializable form.
#[derive(Clone, Debug, Serialize)]
pub struct ClassRow {
    pub label: String,
    pub word: Option<String>,
    pub representative: Vec<Vec<i32>>,
    pub eigenvalues: String,
    pub eigenvalue_orders: Vec<(u32, u32)>,
    pub element_order: u64,
    pub reflection_length: usize,
    pub class_size: usize,
    pub centraliser_order: usize,
    pub centraliser_generators: Vec<Vec<Vec<i32>>>,
    pub elementary: Option<ElementaryPart>,
    pub reference_generators_generate: Option<bool>,
}

impl ClassRow {
    pub fn new(c: &ConjugacyClass) -> Self {
        Self {
            label: c.label.clone(),
            word: c.word.clone(),
            representative: c.representative.rows(),
            eigenvalues: eigenvalue_string(&c.eigenvalue_orders),
            eigenvalue_orders: c.eigenvalue_orders.clone(),
            element_order: c.order,
            reflection_length: reflection_length(&c.representative),
            class_size: c.size,
            centraliser_order: c.centraliser_order(),
            centraliser_generators: c
                .centraliser_generators
                .iter()
                .map(GroupElement::rows)
                .collect(),
            elementary: c.elementary.clone(),
            reference_generators_generate: c.reference_generators_generate,
        }
    }
}

/// Class table in Markdown: type, word, eigenvalues, centraliser order, elementary part.
pub fn class_table_markdown(rows: &[ClassRow]) -> String {
    let mut out = String::from(
        "| Type | Representative | Eigenvalues | Order | Elementary part | Index |\n|---|---|---|---|---|---|\n",
    );
    for r in rows {
        let (gens, index) = match &r.elementary {
            Some(e) if e.index > 1 => (e.generators.join(", "), e.index.to_string()),
            Some(e) => (e.generators.join(", "), String::new()),
            None => (String::new(), String::new()),
        };
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} |\n",
            r.label,
            r.word.as_deref().unwrap_or(""),
            r.eigenvalues,
            r.centraliser_order,
            gens,
            index
        ));
    }
    out
}

/// One edge `class(rep^k)` of the power map.
#[derive(Clone, Debug, Serialize)]
pub struct PowerMapEntry {
    pub source: String,
    pub exponent: u64,
    pub target: String,
    /// `rep^k` equals the target's representative exactly.
    pub representative_level: bool,
    /// `Z_W(rep) ⊆ Z_W(rep^k)`.
    pub centraliser_inclusion: bool,
}

/// For every representative `w` and every divisor `k > 1` of its order, the class of `w^k`.
pub fn power_class_map(group: &Group, table: &ClassTable) -> Vec<PowerMapEntry> {
    table
        .classes
        .par_iter()
        .flat_map_iter(|c| {
            let w = &c.representative;
            (2..=c.order)
                .filter(move |k| c.order % k == 0)
                .map(move |k| {
                    let p = w.pow(k);
                    let idx = group.index_of(&p).expect("power in group");
                    let target = &table.classes[table.class_position(idx)];
                    let z_power = centraliser(group, &p);
                    PowerMapEntry {
                        source: c.label.clone(),
                        exponent: k,
                        target: target.label.clone(),
                        representative_level: p == target.representative,
                        centraliser_inclusion: c.centraliser.is_subgroup_of(&z_power),
                    }
                })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::cartan_from_edges;

    #[test]
    fn small_group_orders() {
        let a2 = RootSystem::from_cartan(&cartan_from_edges(2, &[(0, 1)])).unwrap();
        assert_eq!(Group::enumerate(&a2).unwrap().order(), 6);
        let d4 = RootSystem::from_cartan(&cartan_from_edges(4, &[(0, 1), (1, 2), (1, 3)])).unwrap();
        // |W(D_n)| = 2^{n−1} n!
        assert_eq!(Group::enumerate(&d4).unwrap().order(), 8 * 24);
    }

    #[test]
    fn a2_classes() {
        let a2 = RootSystem::from_cartan(&cartan_from_edges(2, &[(0, 1)])).unwrap();
        let g = Group::enumerate(&a2).unwrap();
        let p = ClassPartition::compute(&g);
        let t = ClassTable::generic(&g, p);
        let sizes: Vec<usize> = t.classes.iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        for c in &t.classes {
            assert_eq!(c.size * c.centraliser_order(), 6);
        }
        let lengths: Vec<usize> = t
            .classes
            .iter()
            .map(|c| reflection_length(&c.representative))
            .collect();
        assert_eq!(lengths, vec![0, 1, 2]);
    }

    #[test]
    fn generating_set_spans() {
        let a2 = RootSystem::from_cartan(&cartan_from_edges(2, &[(0, 1)])).unwrap();
        let g = Group::enumerate(&a2).unwrap();
        let whole = Subgroup::from_indices((0..6).collect());
        let gens = whole.generating_set(&g);
        assert!(gens.len() <= 2);
        assert_eq!(subgroup_generated(&g, &gens), whole);
    }

    #[test]
    fn d4_subgroup_inside_e6() {
        let rs = RootSystem::e6();
        let g = Group::enumerate(&rs).unwrap();
        let gens: Vec<GroupElement> = ["s0", "s1", "s5", "T"]
            .iter()
            .map(|w| rs.parse_word(w).unwrap())
            .collect();
        let d4 = subgroup_generated(&g, &gens);
        assert_eq!(d4.order(), 192);
        // s3 is the reflection in −2r_T + r0 + r1 + r5
        let sp = rs.special_elements().unwrap();
        let root: Vec<i64> = (0..6)
            .map(|i| -2 * sp.r_t[i] + sp.r0[i] + [1, 0, 0, 0, 0, 0][i] + [0, 0, 0, 0, 1, 0][i])
            .collect();
        let s3 = rs.reflection_matrix(&root).unwrap();
        assert_eq!(s3, rs.parse_word("s3").unwrap());
        assert!(d4.contains_index(g.index_of(&s3).unwrap()));
        let s0s6 = subgroup_generated(
            &g,
            &[rs.parse_word("s0").unwrap(), rs.parse_word("s6").unwrap()],
        );
        assert_eq!(s0s6.order(), 6);
    }
}
