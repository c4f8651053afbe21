use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{site_mask, SparseOperator};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Pauli::X => "X",
            Pauli::Y => "Y",
            Pauli::Z => "Z",
        };
        f.write_str(s)
    }
}

/// `coefficient · ⊗_{site ∈ factors} σ^{label}_site`, identity elsewhere.
///
/// Only non-identity sites are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliString {
    n_sites: usize,
    factors: BTreeMap<usize, Pauli>,
    coefficient: Complex64,
}

impl PauliString {
    pub fn new(
        n_sites: usize,
        factors: impl IntoIterator<Item = (usize, Pauli)>,
        coefficient: Complex64,
    ) -> Result<Self> {
        if n_sites == 0 {
            return Err(Error::InvalidModel("a chain needs at least one site".into()));
        }
        let mut map = BTreeMap::new();
        for (site, p) in factors {
            if site >= n_sites {
                return Err(Error::SiteOutOfRange { site, n_sites });
            }
            if map.insert(site, p).is_some() {
                return Err(Error::InvalidModel(format!(
                    "site {site} listed twice in one Pauli string"
                )));
            }
        }
        Ok(Self { n_sites, factors: map, coefficient })
    }

    /// Real-coefficient string, the Hermitian case.
    pub fn real(
        n_sites: usize,
        factors: impl IntoIterator<Item = (usize, Pauli)>,
        coefficient: f64,
    ) -> Result<Self> {
        Self::new(n_sites, factors, Complex64::new(coefficient, 0.0))
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn factors(&self) -> &BTreeMap<usize, Pauli> {
        &self.factors
    }

    pub fn coefficient(&self) -> Complex64 {
        self.coefficient
    }

    pub fn is_hermitian(&self) -> bool {
        self.coefficient.im == 0.0
    }

    /// The same operator with every site index shifted into a longer chain.
    pub fn embedded(&self, n_sites: usize) -> Result<Self> {
        Self::new(n_sites, self.factors.iter().map(|(&s, &p)| (s, p)), self.coefficient)
    }

    /// Flip mask and phase such that `P|b⟩ = phase(b)·|b ^ flip⟩`.
    fn flip_mask(&self) -> usize {
        self.factors
            .iter()
            .filter(|(_, p)| matches!(p, Pauli::X | Pauli::Y))
            .fold(0, |m, (&s, _)| m | site_mask(self.n_sites, s))
    }

    fn phase(&self, b: usize) -> Complex64 {
        let mut ph = self.coefficient;
        for (&s, p) in &self.factors {
            let down = b & site_mask(self.n_sites, s) != 0;
            match (p, down) {
                (Pauli::X, _) => {}
                // Y|↑⟩ = i|↓⟩, Y|↓⟩ = -i|↑⟩
                (Pauli::Y, false) => ph *= Complex64::i(),
                (Pauli::Y, true) => ph *= -Complex64::i(),
                (Pauli::Z, false) => {}
                (Pauli::Z, true) => ph = -ph,
            }
        }
        ph
    }
}

/// The `2^n × 2^n` matrix of a Pauli string; one nonzero per column.
pub fn realize_pauli_string(p: &PauliString) -> SparseOperator {
    let dim = 1usize << p.n_sites;
    let flip = p.flip_mask();
    let entries = (0..dim).map(|col| (col ^ flip, col, p.phase(col)));
    SparseOperator::from_triplets(p.n_sites, entries)
}
