//! Monotone maps between finite ordinals and their canonical
//! coface/codegeneracy factorization.

use crate::report::{EngineError, Result};
use serde::{Deserialize, Serialize};

/// A monotone map `[m] -> [n]` between finite ordinals, stored pointwise.
///
/// `values[i]` is the image of `i`; the map is weakly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonotoneMap {
    /// Source ordinal is `[source_size]`, i.e. `{0, ..., source_size}`.
    pub source_size: usize,
    /// Target ordinal is `[target_size]`.
    pub target_size: usize,
    /// `source_size + 1` values, weakly increasing, each `<= target_size`.
    pub values: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source_size: usize, target_size: usize, values: Vec<usize>) -> Result<Self> {
        if values.len() != source_size + 1 {
            return Err(EngineError::MalformedData(format!(
                "monotone map [{}] -> [{}] needs {} values, got {}",
                source_size,
                target_size,
                source_size + 1,
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v > target_size) {
            return Err(EngineError::MalformedData(format!(
                "value {} exceeds target ordinal [{}]",
                v, target_size
            )));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(EngineError::MalformedData(format!(
                "values {:?} are not weakly increasing",
                values
            )));
        }
        Ok(MonotoneMap {
            source_size,
            target_size,
            values,
        })
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap {
            source_size: n,
            target_size: n,
            values: (0..=n).collect(),
        }
    }

    /// Coface `∂_i : [n-1] -> [n]`, the injection omitting `i`.
    pub fn coface(n: usize, i: usize) -> Result<Self> {
        if n == 0 || i > n {
            return Err(EngineError::DimensionOutOfRange(format!(
                "coface index {} into [{}]",
                i, n
            )));
        }
        let values = (0..n).map(|v| if v < i { v } else { v + 1 }).collect();
        Ok(MonotoneMap {
            source_size: n - 1,
            target_size: n,
            values,
        })
    }

    /// Codegeneracy `σ_i : [n+1] -> [n]`, the surjection repeating `i`.
    pub fn codegeneracy(n: usize, i: usize) -> Result<Self> {
        if i > n {
            return Err(EngineError::DimensionOutOfRange(format!(
                "codegeneracy index {} from [{}]",
                i,
                n + 1
            )));
        }
        let values = (0..=(n + 1)).map(|v| if v <= i { v } else { v - 1 }).collect();
        Ok(MonotoneMap {
            source_size: n + 1,
            target_size: n,
            values,
        })
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// Composite `self ∘ other`, defined when `other` lands in the source of `self`.
    pub fn compose(&self, other: &MonotoneMap) -> Result<Self> {
        if other.target_size != self.source_size {
            return Err(EngineError::MalformedData(format!(
                "cannot compose [{}]->[{}] after [{}]->[{}]",
                self.source_size, self.target_size, other.source_size, other.target_size
            )));
        }
        let values = other.values.iter().map(|&v| self.values[v]).collect();
        MonotoneMap::new(other.source_size, self.target_size, values)
    }

    /// Enumerate all monotone maps `[m] -> [n]` in lexicographic order.
    pub fn enumerate(m: usize, n: usize) -> Vec<MonotoneMap> {
        let mut out = Vec::new();
        let mut current = vec![0usize; m + 1];
        loop {
            out.push(MonotoneMap {
                source_size: m,
                target_size: n,
                values: current.clone(),
            });
            // advance to the next weakly increasing tuple
            let mut i = m + 1;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if current[i] < n {
                    current[i] += 1;
                    let v = current[i];
                    for item in current.iter_mut().skip(i + 1) {
                        *item = v;
                    }
                    break;
                }
            }
        }
    }
}

/// The canonical factorization of a monotone map into cofaces after
/// codegeneracies: `f = ∂_{i_1} ∘ … ∘ ∂_{i_s} ∘ σ_{j_t} ∘ … ∘ σ_{j_1}`
/// with `i_s < … < i_1` and `j_t < … < j_1`.
///
/// Both index lists are stored sorted increasing (`cofaces = [i_s, …, i_1]`,
/// `codegeneracies = [j_t, …, j_1]`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationWord {
    pub source_size: usize,
    pub target_size: usize,
    /// Strictly increasing coface indices `i_s < … < i_1` within `[target_size]`.
    pub cofaces: Vec<usize>,
    /// Strictly increasing codegeneracy indices `j_t < … < j_1` within `[source_size]`.
    pub codegeneracies: Vec<usize>,
}

impl FactorizationWord {
    /// Compose the word back into a pointwise monotone map.
    pub fn compose(&self) -> Result<MonotoneMap> {
        let mut f = MonotoneMap::identity(self.source_size);
        // apply codegeneracies innermost-first: σ_{j_1} is applied first to the
        // argument, so build the composite from the right end of the word.
        for (idx, &j) in self.codegeneracies.iter().enumerate().rev() {
            // σ_j here maps [m - k] -> [m - k - 1] where k codegeneracies
            // (those with larger indices) were already applied.
            let applied = self.codegeneracies.len() - 1 - idx;
            let target = self.source_size - applied - 1;
            let sigma = MonotoneMap::codegeneracy(target, j)?;
            f = sigma.compose(&f)?;
        }
        for (idx, &i) in self.cofaces.iter().enumerate() {
            // ∂_i maps into an ordinal that grows by one per coface; the
            // smallest index i_s is applied first.
            let inner = self.source_size - self.codegeneracies.len();
            let target = inner + idx + 1;
            let delta = MonotoneMap::coface(target, i)?;
            f = delta.compose(&f)?;
        }
        Ok(f)
    }
}

/// Factor a monotone map uniquely as cofaces after codegeneracies.
///
/// The codegeneracy indices are exactly the `j` with `f(j) = f(j+1)`; the
/// coface indices are exactly the points missing from the image.
pub fn factorize_monotone(f: &MonotoneMap) -> FactorizationWord {
    let codegeneracies: Vec<usize> = (0..f.source_size)
        .filter(|&j| f.values[j] == f.values[j + 1])
        .collect();
    let image: std::collections::BTreeSet<usize> = f.values.iter().copied().collect();
    let cofaces: Vec<usize> = (0..=f.target_size).filter(|v| !image.contains(v)).collect();
    FactorizationWord {
        source_size: f.source_size,
        target_size: f.target_size,
        cofaces,
        codegeneracies,
    }
}
