use crate::error::{invalid, Result};
use crate::fieldpoly::{FpPoly, PrimeField};

/// The curve `y^2 = f(x)` over `F_p` with `f` squarefree of odd degree `2g + 1`.
/// The place at infinity is ramified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperellipticModel {
    field: PrimeField,
    f: FpPoly,
    genus: usize,
}

impl HyperellipticModel {
    pub fn new(p: u64, f: &FpPoly) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if f.field() != field {
            return invalid(format!("polynomial is over F_{}, model over F_{p}", f.field().p()));
        }
        let Some(d) = f.degree() else {
            return invalid("defining polynomial is zero");
        };
        if d < 3 || d % 2 == 0 {
            return invalid(format!("defining polynomial must have odd degree >= 3, got {d}"));
        }
        if !f.is_squarefree()? {
            return invalid(format!("defining polynomial {f} is not squarefree"));
        }
        Ok(HyperellipticModel { field, f: f.clone(), genus: (d - 1) / 2 })
    }

    /// Parses the comma-separated ascending coefficient form, e.g. `"9,0,2,4,9,3,5,1"`.
    pub fn parse(p: u64, text: &str) -> Result<Self> {
        let field = PrimeField::new(p)?;
        Self::new(p, &FpPoly::parse(&field, text)?)
    }

    pub fn from_coeffs(p: u64, coeffs: &[i64]) -> Result<Self> {
        let field = PrimeField::new(p)?;
        Self::new(p, &FpPoly::from_coeffs(&field, coeffs))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn f(&self) -> &FpPoly {
        &self.f
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// `f` is a product of distinct linear factors.
    pub fn splits(&self) -> bool {
        self.f.splits()
    }
}

/// Whether `sqrt(q) + 1/sqrt(q) > 2(2g - 1)`, decided as `(q + 1)^2 > 4 q (2g - 1)^2`.
pub fn hasse_weil_condition(q: u64, g: u64) -> bool {
    let lhs = (q as u128 + 1).pow(2);
    let rhs = 4 * q as u128 * (2 * g as u128 - 1).pow(2);
    lhs > rhs
}

/// `sum_{i <= g} C(2g + 1, i)`, the number of reduced divisors supported on
/// the finite ramified places of a split model; always `4^g`.
pub fn count_reduced_ramified(g: u32) -> u128 {
    let n = 2 * g as u128 + 1;
    let mut total = 0u128;
    let mut c = 1u128;
    for i in 0..=g as u128 {
        total += c;
        c = c * (n - i) / (i + 1);
    }
    debug_assert_eq!(total, 1u128 << (2 * g));
    total
}

/// Reduces ramified exponents mod 2 (subtracting the principal divisors
/// `2 P_i - 2 P_inf` of `x - alpha_i`).
pub fn semi_reduced_canonical(exponents: &[i64]) -> Vec<u8> {
    exponents.iter().map(|a| a.rem_euclid(2) as u8).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_models() {
        assert!(HyperellipticModel::parse(11, "9,0,2,4,9,3,5,0").is_err());
        assert!(HyperellipticModel::parse(7, "0,1").is_err());
        // (x - 1)^2 (x + 1)
        assert!(HyperellipticModel::from_coeffs(7, &[1, -1, -1, 1]).is_err());
        assert!(HyperellipticModel::parse(9, "1,0,0,1").is_err());
        let m = HyperellipticModel::parse(11, "9,0,2,4,9,3,5,1").unwrap();
        assert_eq!(m.genus(), 3);
    }

    #[test]
    fn hasse_weil_examples() {
        assert!(hasse_weil_condition(37, 2));
        assert!(!hasse_weil_condition(31, 2));
        assert!(hasse_weil_condition(5, 1));
    }

    #[test]
    fn reduced_ramified_counts() {
        assert_eq!(count_reduced_ramified(1), 4);
        assert_eq!(count_reduced_ramified(3), 64);
        // direct binomial sum for g = 5
        assert_eq!(1 + 11 + 55 + 165 + 330 + 462, 1024);
        assert_eq!(count_reduced_ramified(5), 1024);
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(semi_reduced_canonical(&[3, -2, 1]), vec![1, 0, 1]);
        assert_eq!(semi_reduced_canonical(&[0, 0]), vec![0, 0]);
        let mut seen = std::collections::BTreeSet::new();
        for a in -2..2 {
            for b in -2..2 {
                for c in -2..2 {
                    seen.insert(semi_reduced_canonical(&[a, b, c]));
                }
            }
        }
        assert_eq!(seen.len(), 8);
    }
}
