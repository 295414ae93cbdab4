//! Exhaustive scan of squarefree polynomials over small prime fields.
//!
//! Leading coefficients are restricted to `{1, nu}` (`y -> c y` turns `f`
//! into `c^2 f`), and when `p` does not divide the degree the `x^{n-1}`
//! coefficient is fixed to zero (every `f` is a translate `f(x + c)` of such
//! a polynomial). Both substitutions preserve the place counts.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::fieldpoly::PrimeField;

/// Non-split squarefree polynomials with a given number of roots and inert
/// values, with the first and last representatives in scan order.
#[derive(Debug, Clone)]
pub struct Signature {
    /// Number of ramified rational places, `P_inf` included.
    pub r: usize,
    pub s: usize,
    pub count: u64,
    pub first: Vec<u64>,
    pub last: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct ScanResult {
    pub p: u64,
    pub degree: usize,
    pub scanned: u64,
    pub split: u64,
    pub not_squarefree: u64,
    pub signatures: Vec<Signature>,
}

impl ScanResult {
    pub fn non_split(&self) -> u64 {
        self.signatures.iter().map(|s| s.count).sum()
    }
}

const MAXD: usize = 16;

/// `gcd(f, f') = 1` for `f` of degree `deg` (`deg < MAXD`).
fn squarefree(f: &[u64], deg: usize, p: u64, inv: &[u64]) -> bool {
    let mut a = [0u64; MAXD];
    let mut b = [0u64; MAXD];
    a[..=deg].copy_from_slice(&f[..=deg]);
    let mut da = deg;
    let mut db = None;
    for i in 1..=deg {
        b[i - 1] = (i as u64 % p) * f[i] % p;
        if b[i - 1] != 0 {
            db = Some(i - 1);
        }
    }
    let Some(mut db) = db else { return false };
    loop {
        if db == 0 {
            return true;
        }
        // a <- a mod b
        let lead_inv = inv[b[db] as usize];
        loop {
            if da < db {
                break;
            }
            let factor = a[da] * lead_inv % p;
            let shift = da - db;
            for i in 0..=db {
                a[shift + i] = (a[shift + i] + p - factor * b[i] % p) % p;
            }
            while da > 0 && a[da] == 0 {
                da -= 1;
            }
            if da == 0 && a[0] == 0 {
                // b divides a: gcd has degree db >= 1
                return false;
            }
        }
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut da, &mut db);
    }
}

/// Scans monic and `nu`-leading polynomials of the given degree.
pub fn scan_non_split(p: u64, degree: usize) -> Result<ScanResult> {
    let fp = PrimeField::new(p)?;
    assert!(degree + 1 < MAXD, "degree too large for the scanner");
    let pu = p as usize;
    let inv: Vec<u64> = (0..p).map(|a| if a == 0 { 0 } else { fp.inv(a) }).collect();
    let nonres: Vec<bool> = (0..p).map(|a| fp.legendre(a) == -1).collect();
    let pow: Vec<Vec<u64>> = (0..=degree).map(|i| (0..p).map(|a| fp.pow(a, i as u64)).collect()).collect();
    let free: Vec<usize> = if !(degree as u64).is_multiple_of(p) { (0..degree - 1).collect() } else { (0..degree).collect() };

    let mut result =
        ScanResult { p, degree, scanned: 0, split: 0, not_squarefree: 0, signatures: Vec::new() };
    let mut sigs: BTreeMap<(usize, usize), Signature> = BTreeMap::new();
    for lead in [1, fp.non_residue()] {
        let mut coeffs = vec![0u64; degree + 1];
        coeffs[degree] = lead;
        let mut vals: Vec<u64> = (0..pu).map(|a| lead * pow[degree][a] % p).collect();
        loop {
            result.scanned += 1;
            let zeros = vals.iter().filter(|&&v| v == 0).count();
            if zeros == degree {
                result.split += 1;
            } else if !squarefree(&coeffs, degree, p, &inv) {
                result.not_squarefree += 1;
            } else {
                let s = vals.iter().filter(|&&v| nonres[v as usize]).count();
                let e = sigs.entry((zeros + 1, s)).or_insert_with(|| Signature {
                    r: zeros + 1,
                    s,
                    count: 0,
                    first: coeffs.clone(),
                    last: Vec::new(),
                });
                e.count += 1;
                e.last.clone_from(&coeffs);
            }
            // odometer step over the free coefficients
            let mut done = true;
            for &i in &free {
                coeffs[i] += 1;
                for (v, pw) in vals.iter_mut().zip(&pow[i]) {
                    *v = (*v + pw) % p;
                }
                if coeffs[i] == p {
                    coeffs[i] = 0;
                } else {
                    done = false;
                    break;
                }
            }
            if done {
                break;
            }
        }
    }
    result.signatures = sigs.into_values().collect();
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldpoly::FpPoly;

    #[test]
    fn squarefree_agrees_with_polynomial_gcd() {
        let fp = PrimeField::new(5).unwrap();
        let inv: Vec<u64> = (0..5).map(|a| if a == 0 { 0 } else { fp.inv(a) }).collect();
        // every monic quartic over F_5
        for code in 0..625u64 {
            let mut c: Vec<u64> = (0..4).map(|i| code / 5u64.pow(i) % 5).collect();
            c.push(1);
            let f = FpPoly::from_residues(&fp, c.clone());
            assert_eq!(squarefree(&c, 4, 5, &inv), f.is_squarefree().unwrap(), "{c:?}");
        }
    }

    #[test]
    fn small_scan_matches_direct_classification() {
        let r = scan_non_split(3, 5).unwrap();
        // leading coefficient in {1, 2}, x^4 coefficient fixed to 0
        assert_eq!(r.scanned, 2 * 81);
        for sig in &r.signatures {
            for rep in [&sig.first, &sig.last] {
                let m = crate::curves::HyperellipticModel::new(3, &FpPoly::from_residues(&PrimeField::new(3).unwrap(), rep.clone()))
                    .unwrap();
                let c = crate::curves::classify_places(&m);
                assert_eq!((c.r(), c.s()), (sig.r, sig.s));
            }
        }
    }
}
