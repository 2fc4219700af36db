use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::grmatrix::{CharFunction, GradedMatrix};
use crate::polyring::{monomials_of_degree, Monomial, MultiPoly};

use super::space::{DegreeSpace, ModTerm, SpaceCache};

/// A homogeneous element of a graded free module, terms sorted descending.
#[derive(Clone, Debug, PartialEq)]
pub struct ModVec<K: Field> {
    pub degree: i64,
    pub terms: Vec<(ModTerm, K::Elem)>,
}

impl<K: Field> ModVec<K> {
    pub fn lead(&self) -> Option<ModTerm> {
        self.terms.first().map(|t| t.0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Column `j` of `m` as a module element.
    pub fn from_column(m: &GradedMatrix<K>, j: usize) -> Result<Self> {
        let mut terms = Vec::new();
        for i in 0..m.rows() {
            let e = m.entry(i, j);
            if e.contains_var(crate::polyring::PARAM) {
                return Err(Error::Shape(
                    "module computations need entries free of the parameter `a`".into(),
                ));
            }
            for (mono, c) in e.terms() {
                terms.push((ModTerm { mono: *mono, comp: i as u32 }, c.clone()));
            }
        }
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Ok(ModVec {
            degree: m.col_degrees()[j],
            terms,
        })
    }

    /// Entries as polynomials, one per ambient component.
    pub fn to_column(&self, field: &K, rank: usize) -> Vec<MultiPoly<K>> {
        let mut parts: Vec<Vec<(Monomial, K::Elem)>> = vec![Vec::new(); rank];
        for (t, c) in &self.terms {
            parts[t.comp as usize].push((t.mono, c.clone()));
        }
        parts
            .into_iter()
            .map(|p| MultiPoly::from_terms(field, p))
            .collect()
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
    degree: i64,
}

/// A graded submodule of `L = sum R(-shifts[i])` given by generators,
/// together with a (possibly degree-truncated) reduced Gröbner basis for
/// the term-over-position grevlex order.
#[derive(Clone, Debug)]
pub struct SubmodulePresentation<K: Field> {
    field: K,
    shifts: Vec<i64>,
    generators: Vec<ModVec<K>>,
    basis: Vec<ModVec<K>>,
    cap: i64,
    complete: bool,
    min_gens: CharFunction,
}

/// Default degree cap: the largest generator degree plus eight.
pub fn default_cap(gens: &GradedMatrix<impl Field>) -> i64 {
    gens.col_degrees().iter().copied().max().unwrap_or(0) + 8
}

/// Computes a Gröbner basis of the column module of `gens` inside the free
/// module with degrees `gens.row_degrees()`. S-pairs of degree above `cap`
/// are not processed; the result then records that it is truncated.
pub fn groebner_basis<K: Field>(gens: &GradedMatrix<K>, cap: Option<i64>) -> Result<SubmodulePresentation<K>> {
    let cap = cap.unwrap_or_else(|| default_cap(gens));
    let mut generators = Vec::new();
    for j in 0..gens.cols() {
        let v = ModVec::from_column(gens, j)?;
        if !v.is_zero() {
            generators.push(v);
        }
    }
    let mut engine = Engine::new(gens.field(), gens.row_degrees());
    let (complete, min_gens) = engine.run(&generators, cap);
    Ok(SubmodulePresentation {
        field: gens.field().clone(),
        shifts: gens.row_degrees().to_vec(),
        generators,
        basis: engine.basis,
        cap,
        complete,
        min_gens,
    })
}

struct Engine<K: Field> {
    field: K,
    spaces: SpaceCache,
    basis: Vec<ModVec<K>>,
    /// Leading monomials by component: (monomial, basis index).
    leads: Vec<Vec<(Monomial, usize)>>,
    pairs: Vec<Pair>,
}

impl<K: Field> Engine<K> {
    fn new(field: &K, shifts: &[i64]) -> Self {
        Engine {
            field: field.clone(),
            spaces: SpaceCache::new(shifts),
            basis: Vec::new(),
            leads: vec![Vec::new(); shifts.len()],
            pairs: Vec::new(),
        }
    }

    fn run(&mut self, generators: &[ModVec<K>], cap: i64) -> (bool, CharFunction) {
        let mut by_degree: BTreeMap<i64, Vec<&ModVec<K>>> = BTreeMap::new();
        for g in generators {
            by_degree.entry(g.degree).or_default().push(g);
        }
        let mut min_gens = CharFunction::new();
        let Some(&first) = by_degree.keys().next() else {
            return (true, min_gens);
        };
        let last_gen = *by_degree.keys().next_back().unwrap();
        let mut d = first;
        loop {
            if d > cap {
                return (self.pairs.is_empty() && last_gen <= cap, min_gens);
            }
            let space = self.spaces.get(d);
            let mut added = Vec::new();
            let (now, later): (Vec<Pair>, Vec<Pair>) =
                std::mem::take(&mut self.pairs).into_iter().partition(|p| p.degree == d);
            self.pairs = later;
            for p in now {
                if let Some(v) = self.s_vector(&space, &p) {
                    added.push(self.insert(v));
                }
            }
            if let Some(gs) = by_degree.get(&d) {
                for g in gs {
                    let mut acc = self.to_dense(&space, g);
                    if let Some(v) = self.reduce(&space, &mut acc, 0, d) {
                        min_gens.add(d, 1);
                        added.push(self.insert(v));
                    }
                }
            }
            self.interreduce(&space, &added);
            if self.pairs.is_empty() && d >= last_gen {
                return (true, min_gens);
            }
            d += 1;
        }
    }

    fn to_dense(&self, space: &DegreeSpace, v: &ModVec<K>) -> Vec<K::Elem> {
        let mut acc = vec![self.field.zero(); space.dim()];
        for (t, c) in &v.terms {
            acc[space.index_of(*t)] = c.clone();
        }
        acc
    }

    /// Adds `c * m * basis[idx]` into the dense accumulator.
    fn add_multiple(&self, space: &DegreeSpace, acc: &mut [K::Elem], c: &K::Elem, m: Monomial, idx: usize) {
        for (t, e) in &self.basis[idx].terms {
            let k = space.index_of(ModTerm {
                mono: t.mono.mul(m),
                comp: t.comp,
            });
            acc[k] = self.field.add(&acc[k], &self.field.mul(c, e));
        }
    }

    fn find_reducer(&self, t: ModTerm) -> Option<(usize, Monomial)> {
        self.leads[t.comp as usize]
            .iter()
            .find_map(|&(m, idx)| m.quotient_of(t.mono).map(|q| (idx, q)))
    }

    /// Fully reduces the dense vector from position `start` on; returns the
    /// normalized remainder, if nonzero.
    fn reduce(&self, space: &DegreeSpace, acc: &mut [K::Elem], start: usize, degree: i64) -> Option<ModVec<K>> {
        let mut terms = Vec::new();
        for k in start..acc.len() {
            if self.field.is_zero(&acc[k]) {
                continue;
            }
            let t = space.basis[k];
            match self.find_reducer(t) {
                Some((idx, q)) => {
                    // basis elements are monic
                    let c = self.field.neg(&acc[k]);
                    self.add_multiple(space, acc, &c, q, idx);
                    debug_assert!(self.field.is_zero(&acc[k]));
                }
                None => terms.push((t, acc[k].clone())),
            }
        }
        if terms.is_empty() {
            return None;
        }
        let inv = self.field.inv(&terms[0].1).expect("nonzero lead");
        for (_, c) in terms.iter_mut() {
            *c = self.field.mul(c, &inv);
        }
        Some(ModVec { degree, terms })
    }

    fn s_vector(&self, space: &DegreeSpace, p: &Pair) -> Option<ModVec<K>> {
        let li = self.basis[p.i].lead().unwrap();
        let lj = self.basis[p.j].lead().unwrap();
        let mut acc = vec![self.field.zero(); space.dim()];
        let one = self.field.one();
        let minus = self.field.neg(&one);
        self.add_multiple(space, &mut acc, &one, li.mono.quotient_of(p.lcm).unwrap(), p.i);
        self.add_multiple(space, &mut acc, &minus, lj.mono.quotient_of(p.lcm).unwrap(), p.j);
        let start = space.index_of(ModTerm { mono: p.lcm, comp: p.comp });
        self.reduce(space, &mut acc, start, p.degree)
    }

    /// Inserts a reduced monic element and updates the pair set with the
    /// Gebauer-Möller criteria.
    fn insert(&mut self, h: ModVec<K>) -> usize {
        let hi = self.basis.len();
        let lead = h.lead().unwrap();
        let comp = lead.comp;
        let shift = h.degree - lead.mono.degree() as i64;
        // candidate pairs with older elements of the same component
        let mut cands: Vec<Pair> = self.leads[comp as usize]
            .iter()
            .map(|&(m, i)| {
                let lcm = m.lcm(lead.mono);
                Pair {
                    i,
                    j: hi,
                    lcm,
                    comp,
                    degree: lcm.degree() as i64 + shift,
                }
            })
            .collect();
        // M-criterion: drop pairs whose lcm is a multiple of another new lcm
        cands.sort_by_key(|p| (p.lcm.degree(), p.i));
        let mut kept: Vec<Pair> = Vec::new();
        for p in cands {
            if kept.iter().any(|q| q.lcm.divides(p.lcm)) {
                continue;
            }
            kept.push(p);
        }
        // B-criterion on old pairs
        self.pairs.retain(|p| {
            if p.comp != comp || !lead.mono.divides(p.lcm) {
                return true;
            }
            let li = self.basis[p.i].lead().unwrap().mono.lcm(lead.mono);
            let lj = self.basis[p.j].lead().unwrap().mono.lcm(lead.mono);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(kept);
        self.leads[comp as usize].push((lead.mono, hi));
        self.basis.push(h);
        hi
    }

    /// Tail-reduces the elements added in one degree against each other.
    fn interreduce(&mut self, space: &DegreeSpace, added: &[usize]) {
        if added.len() < 2 {
            return;
        }
        for &i in added {
            let mut acc = self.to_dense(space, &self.basis[i]);
            // keep the lead, reduce the tail
            let lead_idx = space.index_of(self.basis[i].lead().unwrap());
            let lead_c = acc[lead_idx].clone();
            acc[lead_idx] = self.field.zero();
            let degree = self.basis[i].degree;
            let tail = self.reduce_keep_scale(space, &mut acc, lead_idx + 1);
            let mut terms = vec![(space.basis[lead_idx], lead_c)];
            terms.extend(tail);
            self.basis[i] = ModVec { degree, terms };
        }
    }

    fn reduce_keep_scale(&self, space: &DegreeSpace, acc: &mut [K::Elem], start: usize) -> Vec<(ModTerm, K::Elem)> {
        let mut terms = Vec::new();
        for k in start..acc.len() {
            if self.field.is_zero(&acc[k]) {
                continue;
            }
            let t = space.basis[k];
            match self.find_reducer(t) {
                Some((idx, q)) => {
                    let c = self.field.neg(&acc[k]);
                    self.add_multiple(space, acc, &c, q, idx);
                }
                None => terms.push((t, acc[k].clone())),
            }
        }
        terms
    }
}

impl<K: Field> SubmodulePresentation<K> {
    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn basis(&self) -> &[ModVec<K>] {
        &self.basis
    }

    pub fn generators(&self) -> &[ModVec<K>] {
        &self.generators
    }

    /// True when every S-pair was processed, so the basis is a full
    /// Gröbner basis rather than one truncated at the degree cap.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn cap(&self) -> i64 {
        self.cap
    }

    /// Number of minimal generators in each degree.
    pub fn minimal_generator_count(&self) -> &CharFunction {
        &self.min_gens
    }

    /// Highest degree in which the Gröbner data is exact.
    pub fn valid_through(&self) -> Option<i64> {
        if self.complete {
            None
        } else {
            Some(self.cap)
        }
    }

    /// Normal form of a homogeneous element; zero means membership.
    pub fn reduce(&self, v: &ModVec<K>) -> Result<ModVec<K>> {
        if let Some(c) = self.valid_through() {
            if v.degree > c {
                return Err(Error::NotStabilized { cap: c });
            }
        }
        if v.is_zero() {
            return Ok(v.clone());
        }
        let mut engine = Engine::new(&self.field, &self.shifts);
        engine.basis = self.basis.clone();
        for (i, b) in self.basis.iter().enumerate() {
            let l = b.lead().unwrap();
            engine.leads[l.comp as usize].push((l.mono, i));
        }
        let space = DegreeSpace::new(&self.shifts, v.degree);
        let mut acc = engine.to_dense(&space, v);
        let terms = engine.reduce_keep_scale(&space, &mut acc, 0);
        Ok(ModVec {
            degree: v.degree,
            terms,
        })
    }

    pub fn contains(&self, v: &ModVec<K>) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// `dim_k` of the degree-`n` piece of the submodule.
    pub fn hilbert_function(&self, n: i64) -> Result<u64> {
        if let Some(c) = self.valid_through() {
            if n > c {
                return Err(Error::NotStabilized { cap: c });
            }
        }
        let mut leads: Vec<Vec<Monomial>> = vec![Vec::new(); self.shifts.len()];
        for b in &self.basis {
            let l = b.lead().unwrap();
            leads[l.comp as usize].push(l.mono);
        }
        let mut total = 0;
        for (i, &s) in self.shifts.iter().enumerate() {
            if n < s || leads[i].is_empty() {
                continue;
            }
            total += count_divisible(&leads[i], (n - s) as u32);
        }
        Ok(total)
    }

    /// `dim_k` of the degree-`n` piece of the ambient free module.
    pub fn ambient_dimension(&self, n: i64) -> u64 {
        ambient_dimension(&self.shifts, n)
    }

    /// Debug dump: one basis element per line, each term prefixed by its
    /// component index.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for b in &self.basis {
            let parts: Vec<String> = b
                .terms
                .iter()
                .map(|(t, c)| {
                    let coeff = self.field.fmt_elem(c);
                    if t.mono.is_one() {
                        format!("[{}] {}", t.comp, coeff)
                    } else {
                        format!("[{}] {}*{}", t.comp, coeff, t.mono)
                    }
                })
                .collect();
            out.push_str(&parts.join(" + "));
            out.push('\n');
        }
        out
    }
}

pub fn ambient_dimension(shifts: &[i64], n: i64) -> u64 {
    shifts
        .iter()
        .filter(|&&s| n >= s)
        .map(|&s| crate::grmatrix::binomial((n - s + 3) as usize, 3))
        .sum()
}

/// Number of monomials of degree `d` in X, Y, Z, T divisible by one of `leads`.
fn count_divisible(leads: &[Monomial], d: u32) -> u64 {
    let relevant: Vec<Monomial> = leads.iter().copied().filter(|m| m.degree() <= d).collect();
    if relevant.is_empty() {
        return 0;
    }
    monomials_of_degree(4, d)
        .into_iter()
        .filter(|m| relevant.iter().any(|l| l.divides(*m)))
        .count() as u64
}
