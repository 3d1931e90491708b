//! Dense row-major 2-D grid used by maps and occupancy beliefs.

/// Cell index as (row, col). Row 0 is at y = 0 and rows grow with +y.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    pub fn manhattan(&self, other: &Cell) -> usize {
        self.row.abs_diff(other.row) + self.col.abs_diff(other.col)
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Grid<T> {
    data: Vec<T>,
    rows: usize,
    cols: usize,
}

impl<T: Clone> Grid<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Grid {
            data: vec![value; rows * cols],
            rows,
            cols,
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Grid { data, rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn in_bounds(&self, row: i64, col: i64) -> bool {
        row >= 0 && col >= 0 && (row as usize) < self.rows && (col as usize) < self.cols
    }

    pub fn get(&self, cell: Cell) -> &T {
        &self.data[cell.row * self.cols + cell.col]
    }

    pub fn get_mut(&mut self, cell: Cell) -> &mut T {
        &mut self.data[cell.row * self.cols + cell.col]
    }

    pub fn set(&mut self, cell: Cell, value: T) {
        self.data[cell.row * self.cols + cell.col] = value;
    }

    pub fn iter_cells(&self) -> impl Iterator<Item = (Cell, &T)> + '_ {
        self.data
            .iter()
            .enumerate()
            .map(move |(i, v)| (Cell::new(i / self.cols, i % self.cols), v))
    }

    /// Rotate the grid 90 degrees counterclockwise `quarter_turns` times.
    pub fn rotated_ccw(&self, quarter_turns: usize) -> Grid<T> {
        let mut out = self.clone();
        for _ in 0..(quarter_turns % 4) {
            let (r, c) = (out.rows, out.cols);
            let mut data = Vec::with_capacity(r * c);
            // new grid is c x r; new[(c', r')] with new_row = old_col, new_col = rows-1-old_row
            for nr in 0..c {
                for nc in 0..r {
                    let or = r - 1 - nc;
                    let oc = nr;
                    data.push(out.data[or * c + oc].clone());
                }
            }
            out = Grid {
                data,
                rows: c,
                cols: r,
            };
        }
        out
    }
}

/// Map a cell through the same counterclockwise rotation as [`Grid::rotated_ccw`].
pub fn rotate_cell_ccw(cell: Cell, rows: usize, cols: usize, quarter_turns: usize) -> Cell {
    let mut c = cell;
    let (mut r_dim, mut c_dim) = (rows, cols);
    for _ in 0..(quarter_turns % 4) {
        c = Cell::new(c.col, r_dim - 1 - c.row);
        std::mem::swap(&mut r_dim, &mut c_dim);
    }
    c
}
