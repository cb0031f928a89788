//! Structure of small finite groups given by their elements.

use std::collections::{BTreeMap, HashSet};
use std::hash::Hash;

use crate::cube::Isotopy;

/// Largest group whose structure is analysed.
pub const STRUCTURE_LIMIT: usize = 10_000;

pub trait GroupElement: Copy + Eq + Hash {
    fn op(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
}

impl GroupElement for Isotopy {
    fn op(&self, other: &Self) -> Self {
        self.compose(other)
    }

    fn inv(&self) -> Self {
        self.inverse().expect("isotopies are invertible")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupStructure {
    pub order: usize,
    pub abelian: bool,
    /// element order → number of elements of that order
    pub element_orders: BTreeMap<usize, usize>,
    /// Orders of the terms of the derived series, ending at its stable term.
    pub derived_series: Vec<usize>,
}

impl GroupStructure {
    pub fn solvable(&self) -> bool {
        self.derived_series.last() == Some(&1)
    }
}

/// Subgroup generated by `gens` inside a group with identity `id`.
pub fn generated<T: GroupElement>(id: T, gens: &[T]) -> HashSet<T> {
    let mut set = HashSet::from([id]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.op(g);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

/// Generating set, greedily from `elements` in their given order.
pub fn generating_set<T: GroupElement>(id: T, elements: &[T]) -> Vec<T> {
    let mut gens = Vec::new();
    let mut sub = HashSet::from([id]);
    for &e in elements {
        if !sub.contains(&e) {
            gens.push(e);
            sub = generated(id, &gens);
        }
    }
    gens
}

fn element_order<T: GroupElement>(id: T, x: T) -> usize {
    let mut k = 1;
    let mut y = x;
    while y != id {
        y = y.op(&x);
        k += 1;
    }
    k
}

/// Commutator subgroup of the subgroup generated by `gens`: the normal
/// closure of the commutators of generators.
fn derived<T: GroupElement>(id: T, gens: &[T]) -> (Vec<T>, HashSet<T>) {
    let mut dgens: Vec<T> = Vec::new();
    let mut sub = HashSet::from([id]);
    let add = |x: T, dgens: &mut Vec<T>, sub: &mut HashSet<T>| {
        if !sub.contains(&x) {
            dgens.push(x);
            *sub = generated(id, dgens);
        }
    };
    for a in gens {
        for b in gens {
            let c = a.op(b).op(&a.inv()).op(&b.inv());
            add(c, &mut dgens, &mut sub);
        }
    }
    loop {
        let mut grew = false;
        for k in 0..dgens.len() {
            for g in gens {
                let c = g.op(&dgens[k]).op(&g.inv());
                if !sub.contains(&c) {
                    add(c, &mut dgens, &mut sub);
                    grew = true;
                }
            }
        }
        if !grew {
            return (dgens, sub);
        }
    }
}

/// `None` above [`STRUCTURE_LIMIT`] elements.
pub fn structure<T: GroupElement>(id: T, elements: &[T]) -> Option<GroupStructure> {
    if elements.len() > STRUCTURE_LIMIT {
        return None;
    }
    let gens = generating_set(id, elements);
    let abelian = gens.iter().all(|a| gens.iter().all(|b| a.op(b) == b.op(a)));
    let mut element_orders = BTreeMap::new();
    for &x in elements {
        *element_orders.entry(element_order(id, x)).or_insert(0) += 1;
    }
    let mut derived_series = vec![elements.len()];
    let mut current = gens;
    loop {
        let (next, set) = derived(id, &current);
        if set.len() == *derived_series.last().unwrap() {
            break;
        }
        derived_series.push(set.len());
        if set.len() == 1 {
            break;
        }
        current = next;
    }
    Some(GroupStructure {
        order: elements.len(),
        abelian,
        element_orders,
        derived_series,
    })
}
