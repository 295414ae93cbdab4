//! Named verification checks, one per acceptance criterion.

mod checks;
pub mod oracle;
pub mod scan;

use std::fmt;

use crate::autgroup::DEFAULT_MAX_PERM_DIM;
use crate::error::{Error, Result};
use crate::latcore::DEFAULT_ENUM_CAP;

pub use checks::open_question_outputs;

/// Resource caps shared by all checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_enum: usize,
    pub max_perm_dim: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_enum: DEFAULT_ENUM_CAP, max_perm_dim: DEFAULT_MAX_PERM_DIM }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(String),
    Skipped(String),
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Fail(why) => write!(f, "fail({why})"),
            Status::Skipped(why) => write!(f, "skipped({why})"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub criterion: u8,
    pub status: Status,
    /// Computed values and what they were compared against.
    pub details: Vec<(String, String)>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Collects `key: value` lines; `expect` fails the check on a mismatch.
#[derive(Debug, Default)]
pub struct Details(Vec<(String, String)>);

impl Details {
    pub fn record(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.0.push((key.into(), value.to_string()));
    }

    pub fn expect<T: PartialEq + fmt::Debug>(&mut self, key: impl Into<String>, computed: T, expected: T) -> Result<()> {
        let key = key.into();
        let ok = computed == expected;
        self.0.push((key.clone(), format!("{computed:?} (expected {expected:?})")));
        if ok {
            Ok(())
        } else {
            Err(Error::Verification(format!("{key}: computed {computed:?}, expected {expected:?}")))
        }
    }

    pub fn require(&mut self, key: impl Into<String>, holds: bool) -> Result<()> {
        self.expect(key, holds, true)
    }
}

type CheckFn = fn(&Caps, &mut Details) -> Result<()>;

pub struct CheckInfo {
    pub name: &'static str,
    pub criterion: u8,
    pub summary: &'static str,
    run: CheckFn,
}

const CHECKS: &[CheckInfo] = &[
    CheckInfo {
        name: "rational_An",
        criterion: 1,
        summary: "rational-field lattice equals A_n for n = 2..20; det2 = n+1, minimum2 = 2, well-rounded",
        run: checks::rational_an,
    },
    CheckInfo {
        name: "hyper_2An",
        criterion: 2,
        summary: "non-split squarefree f of degree 5, 7 over odd p <= 13: ramified-inert lattice equals 2A_n",
        run: checks::hyper_2an,
    },
    CheckInfo {
        name: "hyper_g3_split",
        criterion: 3,
        summary: "F_11 genus-3 curve: reference 9x10 basis, minimum2 8, well-rounded, minimal basis, index 256, h0 64",
        run: checks::hyper_g3_split,
    },
    CheckInfo {
        name: "hyper_g2_minima",
        criterion: 4,
        summary: "F_7 split genus-2 curve: lambda2 = (6,6,6,6,6,8), not well-rounded, no minimal-vector basis",
        run: checks::hyper_g2_minima,
    },
    CheckInfo {
        name: "hyper_det_h0",
        criterion: 5,
        summary: "h0 = 2^(r-1) (non-split) or 2^(2g) (split) and det2 = (n+1) 4^s h0^2",
        run: checks::hyper_det_h0,
    },
    CheckInfo {
        name: "hyper_rational_minima",
        criterion: 6,
        summary: "F_11 all-rational lattice: lambda2 = 4, 6 x8, then >= 8; split pairs agree below norm 8",
        run: checks::hyper_rational_minima,
    },
    CheckInfo {
        name: "elliptic_barnes",
        criterion: 7,
        summary: "y^2 = x^3 + x + 1 over F_5: cyclic of order 9, lattice equals B_8, det2 729, minimum2 4",
        run: checks::elliptic_barnes,
    },
    CheckInfo {
        name: "elliptic_aut_subgroup",
        criterion: 8,
        summary: "same curve: translations and group automorphisms stabilize the lattice, subgroup order 54",
        run: checks::elliptic_aut_subgroup,
    },
    CheckInfo {
        name: "aut_An_and_scaled",
        criterion: 9,
        summary: "permutation stabilizer of A_n and 2A_n has order (n+1)! for n <= 7; Aut(A_2) has order 12",
        run: checks::aut_an_and_scaled,
    },
    CheckInfo {
        name: "aut_example_F11",
        criterion: 10,
        summary: "F_11 lattice: isometry order 161280 = 2^9 3^2 5 7; S_8 x S_2 transpositions; mixing rejected",
        run: checks::aut_example_f11,
    },
    CheckInfo {
        name: "barnes_aut_n11",
        criterion: 11,
        summary: "B_11 isometry order 2 * 12 * phi(12) = 96",
        run: checks::barnes_aut_n11,
    },
    CheckInfo {
        name: "dual_remark",
        criterion: 12,
        summary: "6 <= n <= 10: B_n^* has more vectors of norm <= n/(n+1) than A_n^*",
        run: checks::dual_remark,
    },
    CheckInfo {
        name: "pgl2_embedding",
        criterion: 13,
        summary: "q = 3, 5, 7: Moebius permutations form a group of order q^3 - q acting faithfully, stabilizing A_q",
        run: checks::pgl2_embedding,
    },
    CheckInfo {
        name: "class_number_condition",
        criterion: 14,
        summary: "genus-2 curve over F_37: all-rational lattice has det2 = h^2 (n+1), i.e. h0 = h",
        run: checks::class_number_condition,
    },
    CheckInfo {
        name: "property_suites",
        criterion: 15,
        summary: "even norms, generator norm bound, minimum2 >= 4, minima oracle, Cantor law, cross-construction",
        run: checks::property_suites,
    },
];

pub fn checks() -> &'static [CheckInfo] {
    CHECKS
}

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).collect()
}

fn execute(info: &CheckInfo, caps: &Caps) -> CheckOutcome {
    let mut details = Details::default();
    let status = match (info.run)(caps, &mut details) {
        Ok(()) => Status::Pass,
        Err(Error::Resource(why)) => Status::Skipped(why),
        Err(e) => Status::Fail(e.to_string()),
    };
    CheckOutcome { name: info.name, criterion: info.criterion, status, details: details.0 }
}

/// Runs one named check; unknown names are input errors.
pub fn run_check(name: &str, caps: &Caps) -> Result<CheckOutcome> {
    let info = CHECKS
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::InvalidInput(format!("unknown check {name:?}; known: {}", check_names().join(", "))))?;
    Ok(execute(info, caps))
}

pub fn run_all(caps: &Caps) -> Vec<CheckOutcome> {
    CHECKS.iter().map(|c| execute(c, caps)).collect()
}
