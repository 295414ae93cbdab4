//! Arithmetic in prime fields `F_p` (odd `p`) and in `F_p[x]`.
//!
//! Residues are always stored canonically in `[0, p)`. Everything is exact;
//! root finding and square testing are plain scans, which is all the desk-scale
//! curves of this crate need.

use std::fmt;

use crate::error::{invalid, Error, Result};

/// The prime field `F_p` for an odd prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    /// Upper bound on the modulus; keeps every product of two residues in `u64`.
    pub const MAX_P: u64 = 1 << 31;

    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return invalid(format!("modulus {p} is not prime"));
        }
        if p == 2 {
            return invalid("characteristic 2 is not supported");
        }
        if p > Self::MAX_P {
            return invalid(format!("modulus {p} exceeds {}", Self::MAX_P));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Canonical residue of an arbitrary signed integer.
    #[inline]
    pub fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    /// Legendre symbol by Euler's criterion: 0, +1 or -1.
    pub fn legendre(&self, a: u64) -> i8 {
        let a = a % self.p;
        if a == 0 {
            return 0;
        }
        if self.pow(a, (self.p - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    /// The square roots of `a` in ascending order (empty for non-squares).
    pub fn sqrts(&self, a: u64) -> Vec<u64> {
        let a = a % self.p;
        (0..self.p).filter(|&y| self.mul(y, y) == a).collect()
    }

    /// Smallest quadratic non-residue.
    pub fn non_residue(&self) -> u64 {
        (2..self.p)
            .find(|&a| self.legendre(a) == -1)
            .expect("odd prime fields have non-residues")
    }
}

/// Polynomial over `F_p`, coefficients ascending, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly[F_{}]({})", self.p, self)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl FpPoly {
    pub fn zero(field: &PrimeField) -> Self {
        FpPoly { p: field.p, coeffs: Vec::new() }
    }

    pub fn one(field: &PrimeField) -> Self {
        FpPoly { p: field.p, coeffs: vec![1] }
    }

    pub fn x(field: &PrimeField) -> Self {
        FpPoly { p: field.p, coeffs: vec![0, 1] }
    }

    pub fn constant(field: &PrimeField, c: u64) -> Self {
        Self::from_residues(field, vec![c % field.p])
    }

    /// `x - a`
    pub fn linear(field: &PrimeField, a: u64) -> Self {
        FpPoly { p: field.p, coeffs: vec![field.neg(a % field.p), 1] }
    }

    /// Builds from signed integer coefficients (ascending), reducing mod p.
    pub fn from_coeffs(field: &PrimeField, coeffs: &[i64]) -> Self {
        Self::from_residues(field, coeffs.iter().map(|&c| field.reduce(c)).collect())
    }

    /// Builds from residues already in `[0, p)`.
    pub fn from_residues(field: &PrimeField, coeffs: Vec<u64>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < field.p));
        let mut poly = FpPoly { p: field.p, coeffs };
        poly.normalize();
        poly
    }

    /// Product of `(x - r)` over the given roots.
    pub fn from_roots(field: &PrimeField, roots: &[u64]) -> Self {
        roots
            .iter()
            .fold(Self::one(field), |acc, &r| acc.mul(&Self::linear(field, r)))
    }

    /// Parses the comma-separated ascending text form, e.g. `"9,0,2,4,9,3,5,1"`.
    pub fn parse(field: &PrimeField, text: &str) -> Result<Self> {
        let mut coeffs = Vec::new();
        for tok in text.split(',') {
            let tok = tok.trim();
            let c: i64 = tok
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad coefficient {tok:?} in {text:?}")))?;
            coeffs.push(c);
        }
        Ok(Self::from_coeffs(field, &coeffs))
    }

    /// Comma-separated ascending text form; the zero polynomial is `"0"`.
    pub fn to_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` standing for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Horner evaluation.
    pub fn eval(&self, a: u64) -> u64 {
        let fp = self.field();
        let a = a % self.p;
        self.coeffs.iter().rev().fold(0, |acc, &c| fp.add(fp.mul(acc, a), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let fp = self.field();
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| fp.add(self.coeff(i), other.coeff(i))).collect();
        Self::from_residues(&fp, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let fp = self.field();
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| fp.sub(self.coeff(i), other.coeff(i))).collect();
        Self::from_residues(&fp, coeffs)
    }

    pub fn neg(&self) -> Self {
        let fp = self.field();
        FpPoly { p: self.p, coeffs: self.coeffs.iter().map(|&c| fp.neg(c)).collect() }
    }

    pub fn scale(&self, c: u64) -> Self {
        let fp = self.field();
        Self::from_residues(&fp, self.coeffs.iter().map(|&a| fp.mul(a, c % self.p)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        if self.is_zero() || other.is_zero() {
            return FpPoly { p: self.p, coeffs: Vec::new() };
        }
        let fp = self.field();
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = fp.add(out[i + j], fp.mul(a, b));
            }
        }
        Self::from_residues(&fp, out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        debug_assert_eq!(self.p, divisor.p);
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let fp = self.field();
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(&fp), self.clone());
        }
        let inv_lead = fp.inv(divisor.leading());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = fp.mul(rem[k + dd], inv_lead);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = fp.sub(rem[k + j], fp.mul(c, b));
            }
        }
        rem.truncate(dd);
        (Self::from_residues(&fp, quot), Self::from_residues(&fp, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Quotient of an exact division; panics if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division {self} / {divisor}");
        q
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let fp = self.field();
        self.scale(fp.inv(self.leading()))
    }

    pub fn derivative(&self) -> Self {
        let fp = self.field();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| fp.mul(c, i as u64 % self.p))
            .collect();
        Self::from_residues(&fp, coeffs)
    }

    /// Monic gcd. Rejects two zero inputs.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return invalid("gcd of two zero polynomials");
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Extended Euclid: returns `(g, s, t)` with `g = s*self + t*other`, `g` monic.
    /// Both inputs zero yields `(0, 0, 0)`.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let fp = self.field();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(&fp), Self::zero(&fp));
        let (mut t0, mut t1) = (Self::zero(&fp), Self::one(&fp));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let c = fp.inv(r0.leading());
        (r0.scale(c), s0.scale(c), t0.scale(c))
    }

    /// `gcd(f, f') = 1`. Constant polynomials are rejected.
    pub fn is_squarefree(&self) -> Result<bool> {
        match self.degree() {
            None | Some(0) => invalid("squarefree test needs a non-constant polynomial"),
            Some(_) => Ok(self.gcd(&self.derivative())?.degree() == Some(0)),
        }
    }

    /// All roots in `F_p`, ascending, by exhaustive scan.
    pub fn roots(&self) -> Vec<u64> {
        assert!(!self.is_zero(), "roots of the zero polynomial");
        (0..self.p).filter(|&a| self.eval(a) == 0).collect()
    }

    /// True when the polynomial is a product of distinct linear factors
    /// (assuming squarefree input, when #roots equals the degree).
    pub fn splits(&self) -> bool {
        self.degree().is_some_and(|d| self.roots().len() == d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f11_defining_poly() -> FpPoly {
        let f11 = PrimeField::new(11).unwrap();
        FpPoly::parse(&f11, "9,0,2,4,9,3,5,1").unwrap()
    }

    #[test]
    fn field_rejects_bad_moduli() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(13).is_ok());
    }

    #[test]
    fn legendre_examples() {
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.legendre(0), 0);
        assert_eq!(f7.legendre(4), 1);
        assert_eq!(f7.legendre(6), -1);
        // squares mod 7 by enumeration
        let squares: Vec<u64> = {
            let mut s: Vec<u64> = (1..7).map(|y| y * y % 7).collect();
            s.sort();
            s.dedup();
            s
        };
        assert_eq!(squares, vec![1, 2, 4]);
        for a in 1..7 {
            assert_eq!(f7.legendre(a) == 1, squares.contains(&a));
        }
    }

    #[test]
    fn legendre_is_multiplicative() {
        for p in (3..50).filter(|&p| is_prime(p)) {
            let fp = PrimeField::new(p).unwrap();
            for a in 1..p {
                for b in 1..p {
                    assert_eq!(fp.legendre(fp.mul(a, b)), fp.legendre(a) * fp.legendre(b));
                }
            }
        }
    }

    #[test]
    fn eval_examples() {
        let f5 = PrimeField::new(5).unwrap();
        let x5_minus_x = FpPoly::from_coeffs(&f5, &[0, -1, 0, 0, 0, 1]);
        assert_eq!(x5_minus_x.eval(2), 0);
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(FpPoly::from_coeffs(&f3, &[1, 0, 1]).eval(1), 2);
        let f = f11_defining_poly();
        for r in f.roots() {
            assert_eq!(f.eval(r), 0);
        }
    }

    #[test]
    fn gcd_examples() {
        let f5 = PrimeField::new(5).unwrap();
        let f = FpPoly::from_coeffs(&f5, &[3, 0, 2]);
        assert_eq!(f.gcd(&FpPoly::zero(&f5)).unwrap(), f.monic());
        let a = FpPoly::from_coeffs(&f5, &[-1, 0, 1]);
        let b = FpPoly::from_coeffs(&f5, &[-1, 1]);
        assert_eq!(a.gcd(&b).unwrap(), b);
        let x5_minus_x = FpPoly::from_coeffs(&f5, &[0, -1, 0, 0, 0, 1]);
        let d = x5_minus_x.derivative();
        assert_eq!(d, FpPoly::constant(&f5, 4));
        assert_eq!(x5_minus_x.gcd(&d).unwrap(), FpPoly::one(&f5));
        assert!(FpPoly::zero(&f5).gcd(&FpPoly::zero(&f5)).is_err());
    }

    #[test]
    fn ext_gcd_bezout() {
        let f7 = PrimeField::new(7).unwrap();
        let a = FpPoly::from_roots(&f7, &[1, 2, 3]);
        let b = FpPoly::from_roots(&f7, &[2, 5]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, FpPoly::linear(&f7, 2));
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn squarefree_examples() {
        let f5 = PrimeField::new(5).unwrap();
        assert!(FpPoly::from_coeffs(&f5, &[0, -1, 0, 0, 0, 1]).is_squarefree().unwrap());
        let f7 = PrimeField::new(7).unwrap();
        assert!(!FpPoly::from_roots(&f7, &[1, 1]).is_squarefree().unwrap());
        assert!(f11_defining_poly().is_squarefree().unwrap());
        assert!(FpPoly::constant(&f7, 3).is_squarefree().is_err());
    }

    #[test]
    fn roots_examples() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(FpPoly::from_coeffs(&f5, &[0, -1, 0, 0, 0, 1]).roots(), vec![0, 1, 2, 3, 4]);
        assert_eq!(f11_defining_poly().roots().len(), 7);
        let f3 = PrimeField::new(3).unwrap();
        assert!(FpPoly::from_coeffs(&f3, &[1, 0, 1]).roots().is_empty());
    }

    #[test]
    fn text_form_round_trip() {
        let f = f11_defining_poly();
        assert_eq!(f.to_text(), "9,0,2,4,9,3,5,1");
        assert_eq!(f.degree(), Some(7));
        let f11 = PrimeField::new(11).unwrap();
        assert!(FpPoly::parse(&f11, "1,x").is_err());
    }

    /// Oracle: f is squarefree iff no monic polynomial of degree >= 1 has its
    /// square dividing f (trial division over all candidates).
    fn squarefree_by_trial(f: &FpPoly) -> bool {
        let fp = f.field();
        let p = fp.p();
        let d = f.degree().unwrap();
        for k in 1..=d / 2 {
            let count = p.pow(k as u32);
            for idx in 0..count {
                let mut coeffs = Vec::with_capacity(k + 1);
                let mut t = idx;
                for _ in 0..k {
                    coeffs.push(t % p);
                    t /= p;
                }
                coeffs.push(1);
                let g = FpPoly::from_residues(&fp, coeffs);
                if f.rem(&g.mul(&g)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn squarefree_matches_trial_division() {
        for p in [3u64, 5, 7] {
            let fp = PrimeField::new(p).unwrap();
            for deg in 1..=4usize {
                let count = p.pow(deg as u32);
                for idx in 0..count {
                    let mut coeffs = Vec::new();
                    let mut t = idx;
                    for _ in 0..deg {
                        coeffs.push(t % p);
                        t /= p;
                    }
                    coeffs.push(1);
                    let f = FpPoly::from_residues(&fp, coeffs);
                    assert_eq!(f.is_squarefree().unwrap(), squarefree_by_trial(&f), "{f:?}");
                }
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn root_count_bounded_by_degree(coeffs in proptest::collection::vec(0u64..13, 1..9)) {
            let fp = PrimeField::new(13).unwrap();
            let f = FpPoly::from_residues(&fp, coeffs);
            if let Some(d) = f.degree() {
                proptest::prop_assert!(f.roots().len() <= d);
            }
        }

        #[test]
        fn division_identity(a in proptest::collection::vec(0u64..11, 0..8),
                             b in proptest::collection::vec(0u64..11, 1..5)) {
            let fp = PrimeField::new(11).unwrap();
            let a = FpPoly::from_residues(&fp, a);
            let b = FpPoly::from_residues(&fp, b);
            proptest::prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            proptest::prop_assert_eq!(q.mul(&b).add(&r), a);
            proptest::prop_assert!(r.deg() < b.deg());
        }
    }
}
