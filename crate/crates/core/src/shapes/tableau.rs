use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Cell, YoungDiagram};
use crate::error::{Error, Result};

/// A filling of a Young diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tableau<T> {
    shape: YoungDiagram,
    rows: Vec<Vec<T>>,
}

impl<T> Tableau<T> {
    /// Builds a tableau from its rows; the shape is read off the row lengths.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let shape = YoungDiagram::new(rows.iter().map(Vec::len).collect())?;
        if shape.num_rows() != rows.len() {
            return Err(Error::InvalidShape("empty row inside a tableau".into()));
        }
        Ok(Self { shape, rows })
    }

    pub fn from_fn(shape: YoungDiagram, mut f: impl FnMut(Cell) -> T) -> Self {
        let rows = shape
            .rows()
            .iter()
            .enumerate()
            .map(|(i, &len)| (1..=len).map(|j| f(Cell::new(i + 1, j))).collect())
            .collect();
        Self { shape, rows }
    }

    pub fn shape(&self) -> &YoungDiagram {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn get(&self, cell: Cell) -> Option<&T> {
        if cell.row == 0 || cell.col == 0 {
            return None;
        }
        self.rows.get(cell.row - 1)?.get(cell.col - 1)
    }

    /// Entry at `(i, j)`; panics outside the shape.
    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.rows[i - 1][j - 1]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.rows[i - 1][j - 1]
    }

    /// Entries with their cells, row-major.
    pub fn iter(&self) -> impl Iterator<Item = (Cell, &T)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, v)| (Cell::new(i + 1, j + 1), v)))
    }

    /// Entries row-major.
    pub fn values(&self) -> impl Iterator<Item = &T> + '_ {
        self.rows.iter().flatten()
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Tableau<U> {
        Tableau {
            shape: self.shape.clone(),
            rows: self.rows.iter().map(|r| r.iter().map(&mut f).collect()).collect(),
        }
    }

    /// Restriction to the given cells, in the given order.
    pub fn restrict(&self, cells: &[Cell]) -> Vec<T>
    where
        T: Clone,
    {
        cells.iter().map(|c| self.at(c.row, c.col).clone()).collect()
    }
}

impl<T: PartialOrd> Tableau<T> {
    /// Weakly increasing along rows and columns.
    pub fn interlaces(&self) -> bool {
        self.iter().all(|(c, v)| {
            let left = c.col > 1 && *self.at(c.row, c.col - 1) > *v;
            let up = c.row > 1 && *self.at(c.row - 1, c.col) > *v;
            !left && !up
        })
    }
}

impl<T: fmt::Display> fmt::Display for Tableau<T> {
    /// Rows separated by `/`, entries by `,`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "/")?;
            }
            for (j, v) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl<T: FromStr> FromStr for Tableau<T>
where
    T::Err: fmt::Display,
{
    type Err = Error;

    /// Inverse of the `Display` form.
    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .trim()
            .split('/')
            .map(|r| {
                r.split(',')
                    .map(|v| v.trim().parse::<T>().map_err(|e| Error::Parse(format!("{v:?}: {e}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }
}
