use std::cmp::Ordering;
use std::hash::{BuildHasherDefault, Hasher};

/// Number of variables: X, Y, Z, T and the uniformizer `a`.
pub const NVARS: usize = 5;
/// Index of the uniformizer `a`.
pub const PARAM: usize = 4;
pub const VAR_NAMES: [&str; NVARS] = ["X", "Y", "Z", "T", "a"];

const BITS: u32 = 10;
const FIELD_MASK: u64 = (1 << BITS) - 1;
const EXP_BITS: u32 = BITS * NVARS as u32;
const EXP_MASK: u64 = (1 << EXP_BITS) - 1;
/// Largest total degree representable; it also bounds every single exponent.
pub const MAX_DEGREE: u32 = FIELD_MASK as u32;

/// A monomial in X, Y, Z, T, a, packed as five 10-bit exponents with the
/// total degree stored above them. Ordered by graded reverse lexicographic
/// order with X > Y > Z > T > a.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn new(exps: [u32; NVARS]) -> Monomial {
        let mut packed = 0u64;
        let mut deg = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= MAX_DEGREE, "exponent {e} too large");
            packed |= (e as u64) << (BITS * i as u32);
            deg += e as u64;
        }
        assert!(deg <= MAX_DEGREE as u64, "degree {deg} too large");
        Monomial(packed | (deg << EXP_BITS))
    }

    pub fn var(i: usize) -> Monomial {
        let mut e = [0; NVARS];
        e[i] = 1;
        Monomial::new(e)
    }

    #[inline]
    pub fn degree(self) -> u32 {
        (self.0 >> EXP_BITS) as u32
    }

    #[inline]
    pub fn exp(self, i: usize) -> u32 {
        ((self.0 >> (BITS * i as u32)) & FIELD_MASK) as u32
    }

    pub fn exps(self) -> [u32; NVARS] {
        std::array::from_fn(|i| self.exp(i))
    }

    /// Degree with `a` counted as degree 0.
    #[inline]
    pub fn degree_xyzt(self) -> u32 {
        self.degree() - self.exp(PARAM)
    }

    #[inline]
    pub fn mul(self, other: Monomial) -> Monomial {
        let m = Monomial(self.0 + other.0);
        assert!(
            m.degree() <= MAX_DEGREE && m.degree() >= self.degree(),
            "monomial degree overflow"
        );
        m
    }

    #[inline]
    pub fn divides(self, other: Monomial) -> bool {
        if self.degree() > other.degree() {
            return false;
        }
        (0..NVARS).all(|i| self.exp(i) <= other.exp(i))
    }

    /// `other / self`, if `self` divides `other`.
    #[inline]
    pub fn quotient_of(self, other: Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0 - self.0))
        } else {
            None
        }
    }

    pub fn lcm(self, other: Monomial) -> Monomial {
        Monomial::new(std::array::from_fn(|i| self.exp(i).max(other.exp(i))))
    }

    pub fn gcd(self, other: Monomial) -> Monomial {
        Monomial::new(std::array::from_fn(|i| self.exp(i).min(other.exp(i))))
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    /// Replaces the exponent of variable `i`.
    pub fn with_exp(self, i: usize, e: u32) -> Monomial {
        let mut ex = self.exps();
        ex[i] = e;
        Monomial::new(ex)
    }

    pub fn raw(self) -> u64 {
        self.0
    }
}

impl Ord for Monomial {
    #[inline]
    fn cmp(&self, other: &Self) -> Ordering {
        // equal degrees: the larger packed value has the larger exponent in
        // the last differing variable, hence is smaller in grevlex
        (self.0 >> EXP_BITS)
            .cmp(&(other.0 >> EXP_BITS))
            .then_with(|| (other.0 & EXP_MASK).cmp(&(self.0 & EXP_MASK)))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, name) in VAR_NAMES.iter().enumerate() {
            let e = self.exp(i);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of total degree `d` in the first `nvars` variables, in
/// descending grevlex order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = [0u32; NVARS];
    fn rec(v: usize, nvars: usize, left: u32, exps: &mut [u32; NVARS], out: &mut Vec<Monomial>) {
        if v + 1 == nvars {
            exps[v] = left;
            out.push(Monomial::new(*exps));
            exps[v] = 0;
            return;
        }
        for e in (0..=left).rev() {
            exps[v] = e;
            rec(v + 1, nvars, left - e, exps, out);
        }
        exps[v] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::ONE);
        }
        return out;
    }
    rec(0, nvars, d, &mut exps, &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Multiplicative hasher for packed monomial keys.
#[derive(Default)]
pub struct MonoHasher(u64);

impl Hasher for MonoHasher {
    #[inline]
    fn finish(&self) -> u64 {
        self.0
    }
    #[inline]
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0.rotate_left(5) ^ b as u64).wrapping_mul(0x51_7c_c1_b7_27_22_0a_95);
        }
    }
    #[inline]
    fn write_u64(&mut self, i: u64) {
        self.0 = (self.0.rotate_left(5) ^ i).wrapping_mul(0x51_7c_c1_b7_27_22_0a_95);
    }
}

pub type MonoBuildHasher = BuildHasherDefault<MonoHasher>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_order() {
        let x = Monomial::var(0);
        let y = Monomial::var(1);
        let z = Monomial::var(2);
        // X^2 > XY > Y^2 > XZ > YZ > Z^2
        let x2 = x.mul(x);
        let xy = x.mul(y);
        let y2 = y.mul(y);
        let xz = x.mul(z);
        let yz = y.mul(z);
        let z2 = z.mul(z);
        let mut v = vec![z2, xz, y2, x2, yz, xy];
        v.sort_by(|a, b| b.cmp(a));
        assert_eq!(v, vec![x2, xy, y2, xz, yz, z2]);
        assert!(x > y && y > z);
        assert!(Monomial::var(3) > Monomial::var(4));
        assert!(z > Monomial::ONE);
    }

    #[test]
    fn divisibility_and_quotient() {
        let m = Monomial::new([2, 1, 0, 0, 0]);
        let x = Monomial::var(0);
        assert!(x.divides(m));
        assert_eq!(x.quotient_of(m), Some(Monomial::new([1, 1, 0, 0, 0])));
        assert!(!Monomial::var(2).divides(m));
        assert_eq!(m.lcm(Monomial::var(2)), Monomial::new([2, 1, 1, 0, 0]));
    }

    #[test]
    fn degree_counts() {
        assert_eq!(monomials_of_degree(4, 2).len(), 10);
        assert_eq!(monomials_of_degree(4, 0).len(), 1);
        assert_eq!(monomials_of_degree(3, 3).len(), 10);
        let ms = monomials_of_degree(4, 3);
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
    }
}
