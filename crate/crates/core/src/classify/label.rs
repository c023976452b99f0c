use crate::error::{AcmsError, Result};
use std::fmt;
use std::str::FromStr;

/// A direct sum of the irreducible classes 𝒞₁…𝒞₁₂, stored as a bit set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassSet(u16);

impl ClassSet {
    pub const EMPTY: ClassSet = ClassSet(0);

    pub fn single(i: u8) -> Self {
        assert!((1..=12).contains(&i), "class index out of range");
        ClassSet(1 << (i - 1))
    }

    pub fn of(indices: &[u8]) -> Self {
        indices.iter().fold(Self::EMPTY, |acc, &i| acc.union(Self::single(i)))
    }

    pub fn range(lo: u8, hi: u8) -> Self {
        (lo..=hi).fold(Self::EMPTY, |acc, i| acc.union(Self::single(i)))
    }

    pub fn d1() -> Self {
        Self::range(1, 4)
    }

    pub fn d2() -> Self {
        Self::range(5, 11)
    }

    pub fn d3() -> Self {
        Self::single(12)
    }

    pub fn h_parallel() -> Self {
        Self::range(5, 12)
    }

    pub fn contains(self, i: u8) -> bool {
        self.0 & (1 << (i - 1)) != 0
    }

    pub fn insert(&mut self, i: u8) {
        *self = self.union(Self::single(i));
    }

    pub fn union(self, other: Self) -> Self {
        ClassSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ClassSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = u8> {
        (1..=12u8).filter(move |&i| self.contains(i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }
}

impl fmt::Display for ClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "C0");
        }
        let parts: Vec<String> = self.iter().map(|i| format!("C{i}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Label of an invariant subspace of 𝒞(V).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ClassLabel {
    Sum(ClassSet),
    /// `P = −2S` inside 𝒞₁₀⊕𝒞₁₁.
    Min,
    /// `λP = μS` inside 𝒞₁₀⊕𝒞₁₁, normalized to a unit vector with positive leading entry.
    LambdaMu { lambda: f64, mu: f64 },
}

impl ClassLabel {
    pub fn irreducible(i: u8) -> Self {
        ClassLabel::Sum(ClassSet::single(i))
    }

    pub fn lambda_mu(lambda: f64, mu: f64) -> Result<Self> {
        let r = lambda.hypot(mu);
        if r == 0.0 || !r.is_finite() {
            return Err(AcmsError::InvalidArgument("(λ, μ) must be a nonzero pair".into()));
        }
        let (mut l, mut m) = (lambda / r, mu / r);
        let lead = if l != 0.0 { l } else { m };
        if lead < 0.0 {
            l = -l;
            m = -m;
        }
        Ok(ClassLabel::LambdaMu { lambda: l + 0.0, mu: m + 0.0 })
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Sum(s) => write!(f, "{s}"),
            ClassLabel::Min => write!(f, "Cmin"),
            ClassLabel::LambdaMu { lambda, mu } => write!(f, "C({lambda},{mu})"),
        }
    }
}

impl FromStr for ClassLabel {
    type Err = AcmsError;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || AcmsError::UnknownLabel(s.to_string());
        if t.eq_ignore_ascii_case("cmin") {
            return Ok(ClassLabel::Min);
        }
        if let Some(inner) = t.strip_prefix("C(").and_then(|r| r.strip_suffix(')')) {
            let (a, b) = inner.split_once(',').ok_or_else(bad)?;
            let l: f64 = a.parse().map_err(|_| bad())?;
            let m: f64 = b.parse().map_err(|_| bad())?;
            return ClassLabel::lambda_mu(l, m);
        }
        let mut set = ClassSet::EMPTY;
        for part in t.split(['+', '⊕']) {
            let upper = part.to_ascii_uppercase();
            match upper.as_str() {
                "D1" => set = set.union(ClassSet::d1()),
                "D2" => set = set.union(ClassSet::d2()),
                "D3" => set = set.union(ClassSet::d3()),
                "C0" => {}
                _ => {
                    let i: u8 = upper.strip_prefix('C').and_then(|d| d.parse().ok()).ok_or_else(bad)?;
                    if !(1..=12).contains(&i) {
                        return Err(bad());
                    }
                    set.insert(i);
                }
            }
        }
        Ok(ClassLabel::Sum(set))
    }
}

impl serde::Serialize for ClassSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl serde::Serialize for ClassLabel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
