use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::dim_graded;

/// Default cap on the number of cells of any single matrix an operation may build.
pub const DEFAULT_CELL_BUDGET: u128 = 50_000_000;

/// Computation context: number of variables, coefficient field and size guard.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyRing {
    nvars: usize,
    field: PrimeField,
    cell_budget: u128,
}

impl PolyRing {
    pub fn new(nvars: usize, field: PrimeField) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::InvalidInput("polynomial ring needs n >= 1".into()));
        }
        Ok(Self {
            nvars,
            field,
            cell_budget: DEFAULT_CELL_BUDGET,
        })
    }

    pub fn with_budget(mut self, cells: u128) -> Self {
        self.cell_budget = cells;
        self
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn cell_budget(&self) -> u128 {
        self.cell_budget
    }

    /// `dim S^k`; zero for negative `k`.
    pub fn dim(&self, k: i64) -> Result<usize> {
        dim_graded(self.nvars, k)
    }

    /// Refuse a `rows x cols` matrix that does not fit the cell budget.
    pub fn check_budget(&self, what: &str, rows: usize, cols: usize) -> Result<()> {
        let cells = rows as u128 * cols as u128;
        if cells > self.cell_budget {
            return Err(Error::SizeBudget {
                what: what.to_string(),
                cells,
                budget: self.cell_budget,
            });
        }
        Ok(())
    }

    pub(crate) fn same_as(&self, other: &PolyRing) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        if self.nvars != other.nvars {
            return Err(Error::AmbientMismatch(format!(
                "{} vs {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }
}
