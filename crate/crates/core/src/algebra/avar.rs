use std::fmt;

/// The Taylor coefficient `A^l_{αβ̄}` of `w'^α w̄'^β v^l` in a boundary jet.
///
/// Conjugation swaps `alpha` and `beta`; diagonal variables (`alpha == beta`)
/// are real.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AVariable {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub l: u32,
}

impl AVariable {
    pub fn new(alpha: Vec<u32>, beta: Vec<u32>, l: u32) -> Self {
        debug_assert_eq!(alpha.len(), beta.len());
        AVariable { alpha, beta, l }
    }

    /// `|α| + |β| + 2l`.
    pub fn weight(&self) -> i32 {
        (self.alpha.iter().sum::<u32>() + self.beta.iter().sum::<u32>() + 2 * self.l) as i32
    }

    /// Block bidegree `(|α|, |β|)`.
    pub fn block(&self) -> (u32, u32) {
        (self.alpha.iter().sum(), self.beta.iter().sum())
    }

    pub fn conj(&self) -> Self {
        AVariable { alpha: self.beta.clone(), beta: self.alpha.clone(), l: self.l }
    }

    pub fn is_real(&self) -> bool {
        self.alpha == self.beta
    }
}

fn multi(idx: &[u32]) -> String {
    idx.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for AVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A^{}_({})({})", self.l, multi(&self.alpha), multi(&self.beta))
    }
}

impl fmt::Debug for AVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
