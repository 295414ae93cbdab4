use std::fmt;

use super::model::HyperellipticModel;

/// How a place of the curve lies over a place of `F_p(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlaceKind {
    /// Place `i` of the rational function field itself (no curve).
    Rational(usize),
    Infinity,
    Ramified(u64),
    Inert(u64),
    /// Sheet 1 carries the smaller square root `y` of `f(beta)`.
    Split { beta: u64, sheet: u8 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Place {
    pub kind: PlaceKind,
    pub degree: u32,
}

impl Place {
    pub fn new(kind: PlaceKind) -> Self {
        let degree = if matches!(kind, PlaceKind::Inert(_)) { 2 } else { 1 };
        Place { kind, degree }
    }

    /// Short label used for lattice coordinates.
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PlaceKind::Rational(i) => write!(f, "P{i}"),
            PlaceKind::Infinity => write!(f, "Pinf"),
            PlaceKind::Ramified(a) => write!(f, "R{a}"),
            PlaceKind::Inert(b) => write!(f, "Q{b}"),
            PlaceKind::Split { beta, sheet } => write!(f, "S{beta}.{sheet}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Selector {
    RationalField,
    EllipticAllRational,
    RamifiedInert,
    HyperellipticAllRational,
}

impl Selector {
    pub fn name(&self) -> &'static str {
        match self {
            Selector::RationalField => "rational",
            Selector::EllipticAllRational => "elliptic",
            Selector::RamifiedInert => "ramified-inert",
            Selector::HyperellipticAllRational => "all-rational",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [
            Selector::RationalField,
            Selector::EllipticAllRational,
            Selector::RamifiedInert,
            Selector::HyperellipticAllRational,
        ]
        .into_iter()
        .find(|x| x.name() == s)
    }

    /// 1 for the rational field, 2 for (hyper)elliptic models.
    pub fn gonality(&self) -> u32 {
        match self {
            Selector::RationalField => 1,
            _ => 2,
        }
    }
}

/// Behaviour of every `beta` in `F_p`: roots of `f`, inert and split values
/// (split values carry both square roots, ascending).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub roots: Vec<u64>,
    pub inert: Vec<u64>,
    pub split: Vec<(u64, [u64; 2])>,
}

impl Classification {
    /// Rational ramified places, infinity included.
    pub fn r(&self) -> usize {
        self.roots.len() + 1
    }

    pub fn s(&self) -> usize {
        self.inert.len()
    }

    pub fn t(&self) -> usize {
        self.split.len()
    }
}

pub fn classify_places(model: &HyperellipticModel) -> Classification {
    let fp = model.field();
    let mut c = Classification { roots: Vec::new(), inert: Vec::new(), split: Vec::new() };
    for beta in 0..fp.p() {
        let y2 = model.f().eval(beta);
        match fp.legendre(y2) {
            0 => c.roots.push(beta),
            -1 => c.inert.push(beta),
            _ => {
                let r = fp.sqrts(y2);
                c.split.push((beta, [r[0], r[1]]));
            }
        }
    }
    c
}

/// Ordered places fixing the lattice coordinates, with their counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaceSystem {
    pub selector: Selector,
    pub places: Vec<Place>,
    pub r: usize,
    pub s: usize,
    pub t: usize,
}

impl PlaceSystem {
    /// `n + 1` rational places of `F_q(x)`.
    pub fn rational(n: usize) -> Self {
        PlaceSystem {
            selector: Selector::RationalField,
            places: (0..=n).map(|i| Place::new(PlaceKind::Rational(i))).collect(),
            r: n + 1,
            s: 0,
            t: 0,
        }
    }

    /// `(P_inf, P_2..P_r, Q_1..Q_s)`.
    pub fn ramified_inert(model: &HyperellipticModel) -> Self {
        let c = classify_places(model);
        let mut places = vec![Place::new(PlaceKind::Infinity)];
        places.extend(c.roots.iter().map(|&a| Place::new(PlaceKind::Ramified(a))));
        places.extend(c.inert.iter().map(|&b| Place::new(PlaceKind::Inert(b))));
        PlaceSystem { selector: Selector::RamifiedInert, places, r: c.r(), s: c.s(), t: c.t() }
    }

    /// `(P_inf, P_2..P_r, S_11, S_12, ..., S_t1, S_t2)`, split pairs adjacent.
    pub fn all_rational(model: &HyperellipticModel) -> Self {
        let c = classify_places(model);
        let mut places = vec![Place::new(PlaceKind::Infinity)];
        places.extend(c.roots.iter().map(|&a| Place::new(PlaceKind::Ramified(a))));
        for &(beta, _) in &c.split {
            for sheet in [1, 2] {
                places.push(Place::new(PlaceKind::Split { beta, sheet }));
            }
        }
        PlaceSystem { selector: Selector::HyperellipticAllRational, places, r: c.r(), s: c.s(), t: c.t() }
    }

    pub fn len(&self) -> usize {
        self.places.len()
    }

    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.places.iter().map(|p| p.degree).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.places.iter().map(Place::label).collect()
    }

    /// Index of the first place of the given kind.
    pub fn position(&self, kind: PlaceKind) -> Option<usize> {
        self.places.iter().position(|p| p.kind == kind)
    }

    /// Coordinates of the finite ramified places, in order.
    pub fn ramified_indices(&self) -> Vec<usize> {
        self.indices(|k| matches!(k, PlaceKind::Ramified(_)))
    }

    pub fn inert_indices(&self) -> Vec<usize> {
        self.indices(|k| matches!(k, PlaceKind::Inert(_)))
    }

    /// Pairs of coordinates `(S_j1, S_j2)`.
    pub fn split_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, p) in self.places.iter().enumerate() {
            if let PlaceKind::Split { beta, sheet: 1 } = p.kind {
                if let Some(j) = self.position(PlaceKind::Split { beta, sheet: 2 }) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn indices(&self, pred: impl Fn(&PlaceKind) -> bool) -> Vec<usize> {
        self.places.iter().enumerate().filter(|(_, p)| pred(&p.kind)).map(|(i, _)| i).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_three_example_counts() {
        let m = HyperellipticModel::parse(11, "9,0,2,4,9,3,5,1").unwrap();
        let c = classify_places(&m);
        assert_eq!((c.r(), c.s(), c.t()), (8, 2, 2));
        assert_eq!(c.roots.len(), 7);
        for &a in &c.roots {
            assert_eq!(m.f().eval(a), 0);
        }
        let sys = PlaceSystem::ramified_inert(&m);
        assert_eq!(sys.len(), 10);
        assert_eq!(sys.degrees(), vec![1, 1, 1, 1, 1, 1, 1, 1, 2, 2]);
        assert_eq!(PlaceSystem::all_rational(&m).len(), 12);
    }

    #[test]
    fn genus_two_split_example() {
        // x(x-1)(x-2)(x-3)(x-4): f(5) = 120 = 1, f(6) = 720 = 6 mod 7
        let m = HyperellipticModel::from_coeffs(7, &[0, 24, -50, 35, -10, 1]).unwrap();
        let c = classify_places(&m);
        assert_eq!(c.roots, vec![0, 1, 2, 3, 4]);
        assert_eq!(c.inert, vec![6]);
        assert_eq!(c.split, vec![(5, [1, 6])]);
        assert_eq!(c.r(), 6);
    }

    #[test]
    fn full_split_has_no_inert_or_split() {
        let m = HyperellipticModel::from_coeffs(5, &[0, -1, 0, 0, 0, 1]).unwrap();
        let c = classify_places(&m);
        assert_eq!((c.r(), c.s(), c.t()), (6, 0, 0));
    }

    #[test]
    fn partition_property() {
        for p in [3u64, 5, 7, 11, 13] {
            for f in [vec![1i64, 1, 0, 1], vec![2, 0, 1, 0, 0, 1], vec![1, 3, 0, 2, 0, 0, 0, 1]] {
                let Ok(m) = HyperellipticModel::from_coeffs(p, &f) else { continue };
                let c = classify_places(&m);
                assert_eq!(c.roots.len() + c.s() + c.t(), p as usize);
            }
        }
    }

    #[test]
    fn selector_names_round_trip() {
        for s in ["rational", "elliptic", "ramified-inert", "all-rational"] {
            assert_eq!(Selector::from_name(s).unwrap().name(), s);
        }
        assert_eq!(Selector::RationalField.gonality(), 1);
        assert_eq!(Selector::RamifiedInert.gonality(), 2);
    }
}
