//! Composite orbital indices: a band index inside a unit cell plus the cell's
//! lattice coordinates, flattened as `p = i + M·(n₁ + N₁·(n₂ + N₂·n₃))`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CompositeIndex {
    pub band: usize,
    pub cell: [usize; 3],
}

/// Shape of the orbital lattice: `bands` orbitals per cell, `cells[k]` cells
/// along lattice direction `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lattice {
    bands: usize,
    cells: [usize; 3],
}

impl Lattice {
    pub fn new(bands: usize, cells: [usize; 3]) -> Result<Self> {
        if bands == 0 || cells.contains(&0) {
            return Err(Error::InvalidSystem(format!(
                "M and every N_i must be at least 1 (got M={bands}, N={cells:?})"
            )));
        }
        Ok(Self { bands, cells })
    }

    pub fn bands(&self) -> usize {
        self.bands
    }

    pub fn cells(&self) -> [usize; 3] {
        self.cells
    }

    pub fn num_cells(&self) -> usize {
        self.cells.iter().product()
    }

    /// Total number of spatial orbitals `P = M·N₁·N₂·N₃`.
    pub fn num_orbitals(&self) -> usize {
        self.bands * self.num_cells()
    }

    pub fn flatten(&self, idx: CompositeIndex) -> usize {
        debug_assert!(idx.band < self.bands);
        idx.band + self.bands * self.cell_flat(idx.cell)
    }

    pub fn unflatten(&self, p: usize) -> CompositeIndex {
        debug_assert!(p < self.num_orbitals());
        let band = p % self.bands;
        CompositeIndex {
            band,
            cell: self.cell_unflat(p / self.bands),
        }
    }

    pub fn cell_flat(&self, cell: [usize; 3]) -> usize {
        let [n1, n2, _] = self.cells;
        cell[0] + n1 * (cell[1] + n2 * cell[2])
    }

    pub fn cell_unflat(&self, mut c: usize) -> [usize; 3] {
        let [n1, n2, _] = self.cells;
        let a = c % n1;
        c /= n1;
        [a, c % n2, c / n2]
    }

    /// Shifts the cell of orbital `p` by `shift`, component-wise modulo `N_k`.
    pub fn translate(&self, p: usize, shift: [usize; 3]) -> usize {
        let mut idx = self.unflatten(p);
        for ((c, s), n) in idx.cell.iter_mut().zip(shift).zip(self.cells) {
            *c = (*c + s) % n;
        }
        self.flatten(idx)
    }

    /// The shift that maps `cell` back onto the origin cell.
    pub fn inverse_shift(&self, cell: [usize; 3]) -> [usize; 3] {
        let mut out = [0; 3];
        for k in 0..3 {
            out[k] = (self.cells[k] - cell[k] % self.cells[k]) % self.cells[k];
        }
        out
    }

    /// All lattice shifts, in flattened-cell order.
    pub fn shifts(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        (0..self.num_cells()).map(|c| self.cell_unflat(c))
    }
}
