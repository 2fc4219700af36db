use std::cmp::Ordering;
use std::collections::HashMap;

use crate::polyring::{monomials_of_degree, Monomial};

/// A monomial `x^alpha e_comp` of a graded free module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModTerm {
    pub mono: Monomial,
    pub comp: u32,
}

impl Ord for ModTerm {
    /// Term over position: grevlex on the monomial, ties broken in favour
    /// of the smaller component index. Only terms of equal total degree are
    /// ever compared, so component shifts are accounted for by the monomial
    /// degree comparison.
    fn cmp(&self, other: &Self) -> Ordering {
        self.mono
            .cmp(&other.mono)
            .then_with(|| other.comp.cmp(&self.comp))
    }
}

impl PartialOrd for ModTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl ModTerm {
    pub fn divides(&self, other: &ModTerm) -> bool {
        self.comp == other.comp && self.mono.divides(other.mono)
    }
}

/// All module monomials of one total degree, sorted descending, with an
/// index for dense accumulation.
pub struct DegreeSpace {
    pub basis: Vec<ModTerm>,
    index: HashMap<(Monomial, u32), usize, MonoPairHasher>,
}

type MonoPairHasher = std::hash::BuildHasherDefault<PairHasher>;

#[derive(Default)]
pub struct PairHasher(u64);

impl std::hash::Hasher for PairHasher {
    fn finish(&self) -> u64 {
        self.0
    }
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.write_u64(b as u64);
        }
    }
    fn write_u64(&mut self, i: u64) {
        self.0 = (self.0.rotate_left(7) ^ i).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    }
    fn write_u32(&mut self, i: u32) {
        self.write_u64(i as u64);
    }
}

impl DegreeSpace {
    /// Module monomials of degree `d` in `R(-shifts[0]) + R(-shifts[1]) + ...`,
    /// over the four variables X, Y, Z, T.
    pub fn new(shifts: &[i64], d: i64) -> Self {
        let mut basis = Vec::new();
        for (i, &s) in shifts.iter().enumerate() {
            if d - s < 0 {
                continue;
            }
            for m in monomials_of_degree(4, (d - s) as u32) {
                basis.push(ModTerm { mono: m, comp: i as u32 });
            }
        }
        basis.sort_unstable_by(|a, b| b.cmp(a));
        let index = basis
            .iter()
            .enumerate()
            .map(|(k, t)| ((t.mono, t.comp), k))
            .collect();
        DegreeSpace { basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    #[inline]
    pub fn index_of(&self, t: ModTerm) -> usize {
        self.index[&(t.mono, t.comp)]
    }
}

/// Cache of degree spaces for one ambient module.
pub struct SpaceCache {
    shifts: Vec<i64>,
    spaces: HashMap<i64, std::rc::Rc<DegreeSpace>>,
}

impl SpaceCache {
    pub fn new(shifts: &[i64]) -> Self {
        SpaceCache {
            shifts: shifts.to_vec(),
            spaces: HashMap::new(),
        }
    }

    pub fn get(&mut self, d: i64) -> std::rc::Rc<DegreeSpace> {
        self.spaces
            .entry(d)
            .or_insert_with(|| std::rc::Rc::new(DegreeSpace::new(&self.shifts, d)))
            .clone()
    }
}
