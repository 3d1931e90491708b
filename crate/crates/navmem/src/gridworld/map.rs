use std::io::{BufRead, Write};
use std::path::Path;

use thiserror::Error;

use crate::grid::{rotate_cell_ccw, Cell, Grid};

use super::spec::{MapSpec, ObstacleKind};

/// Wall thickness in meters. At least one robot step, so a step can never
/// tunnel through a wall when only the destination cell is collision-checked.
pub const WALL_THICKNESS: f64 = 1.0;
/// Free margin around the obstacle envelope, in meters.
pub const MARGIN: f64 = 3.0;
/// Distance from the far wall face to the goal, in meters.
pub const GOAL_CLEARANCE: f64 = 2.0;
/// Start and goal are kept on a lattice with this many cells per robot step,
/// matching both sensor presets (1 m / 0.5 m cells, 0.5 m / 0.25 m steps).
pub const CELLS_PER_STEP: usize = 2;

#[derive(Error, Debug)]
pub enum MapError {
    #[error("infeasible map spec: {0}")]
    InfeasibleSpec(String),
    #[error("map file parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Rasterized map: occupancy grid, start cell, and goal region.
#[derive(Clone, PartialEq, Debug)]
pub struct GridMap {
    /// true = obstacle.
    pub occupancy: Grid<bool>,
    pub start: Cell,
    pub goal_region: Vec<Cell>,
    pub spec: MapSpec,
}

impl GridMap {
    pub fn resolution(&self) -> f64 {
        self.spec.resolution
    }

    pub fn rows(&self) -> usize {
        self.occupancy.rows()
    }

    pub fn cols(&self) -> usize {
        self.occupancy.cols()
    }

    /// Map bounds in meters as (width_x, height_y).
    pub fn bounds(&self) -> (f64, f64) {
        (
            self.cols() as f64 * self.resolution(),
            self.rows() as f64 * self.resolution(),
        )
    }

    pub fn cell_of(&self, x: f64, y: f64) -> Option<Cell> {
        let res = self.resolution();
        let col = (x / res).floor();
        let row = (y / res).floor();
        if self.occupancy.in_bounds(row as i64, col as i64) && x >= 0.0 && y >= 0.0 {
            Some(Cell::new(row as usize, col as usize))
        } else {
            None
        }
    }

    pub fn cell_center(&self, cell: Cell) -> (f64, f64) {
        let res = self.resolution();
        (
            (cell.col as f64 + 0.5) * res,
            (cell.row as f64 + 0.5) * res,
        )
    }

    pub fn is_occupied(&self, cell: Cell) -> bool {
        *self.occupancy.get(cell)
    }

    pub fn is_goal(&self, cell: Cell) -> bool {
        self.goal_region.contains(&cell)
    }

    /// Inverse of the orientation rotation: world cell -> unrotated frame.
    pub fn to_canonical_cell(&self, cell: Cell) -> Cell {
        let turns = (self.spec.orientation / 90) as usize;
        let back = (4 - turns % 4) % 4;
        // dims of the rotated (world) grid
        rotate_cell_ccw(cell, self.rows(), self.cols(), back)
    }

    pub fn write_to(&self, w: &mut impl Write) -> std::io::Result<()> {
        let s = &self.spec;
        writeln!(w, "kind={}", s.kind.as_str())?;
        writeln!(w, "length={}", s.length)?;
        writeln!(w, "width={}", s.width)?;
        writeln!(w, "orientation={}", s.orientation)?;
        writeln!(w, "row_disp={}", s.row_disp)?;
        writeln!(w, "col_disp={}", s.col_disp)?;
        writeln!(w, "resolution={}", s.resolution)?;
        writeln!(w, "start={},{}", self.start.row, self.start.col)?;
        let goal = self
            .goal_region
            .iter()
            .map(|c| format!("{},{}", c.row, c.col))
            .collect::<Vec<_>>()
            .join(";");
        writeln!(w, "goal={goal}")?;
        for row in 0..self.rows() {
            let mut line = String::with_capacity(self.cols());
            for col in 0..self.cols() {
                line.push(if self.is_occupied(Cell::new(row, col)) { '#' } else { '.' });
            }
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<(), MapError> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_to(&mut f)?;
        Ok(())
    }

    pub fn read_from(r: impl BufRead) -> Result<GridMap, MapError> {
        let mut header = std::collections::HashMap::new();
        let mut grid_lines: Vec<String> = Vec::new();
        for line in r.lines() {
            let line = line?;
            if line.is_empty() {
                continue;
            }
            if line.starts_with('.') || line.starts_with('#') {
                grid_lines.push(line);
            } else if grid_lines.is_empty() {
                let (k, v) = line
                    .split_once('=')
                    .ok_or_else(|| MapError::Parse(format!("bad header line {line:?}")))?;
                header.insert(k.to_string(), v.to_string());
            } else {
                return Err(MapError::Parse(format!(
                    "header line {line:?} after grid rows"
                )));
            }
        }
        let get = |k: &str| -> Result<String, MapError> {
            header
                .get(k)
                .cloned()
                .ok_or_else(|| MapError::Parse(format!("missing key {k}")))
        };
        let parse_cell = |s: &str| -> Result<Cell, MapError> {
            let (r, c) = s
                .split_once(',')
                .ok_or_else(|| MapError::Parse(format!("bad cell {s:?}")))?;
            Ok(Cell::new(
                r.parse().map_err(|e| MapError::Parse(format!("cell row: {e}")))?,
                c.parse().map_err(|e| MapError::Parse(format!("cell col: {e}")))?,
            ))
        };
        let spec = MapSpec {
            kind: ObstacleKind::parse(&get("kind")?)
                .ok_or_else(|| MapError::Parse("unknown kind".to_string()))?,
            length: parse_float(&get("length")?)?,
            width: parse_float(&get("width")?)?,
            orientation: get("orientation")?
                .parse()
                .map_err(|e| MapError::Parse(format!("orientation: {e}")))?,
            row_disp: parse_float(&get("row_disp")?)?,
            col_disp: parse_float(&get("col_disp")?)?,
            resolution: parse_float(&get("resolution")?)?,
        };
        if grid_lines.is_empty() {
            return Err(MapError::Parse("no grid rows".to_string()));
        }
        let cols = grid_lines[0].len();
        let rows = grid_lines.len();
        let mut data = Vec::with_capacity(rows * cols);
        for line in &grid_lines {
            if line.len() != cols {
                return Err(MapError::Parse("ragged grid rows".to_string()));
            }
            for ch in line.chars() {
                match ch {
                    '.' => data.push(false),
                    '#' => data.push(true),
                    other => {
                        return Err(MapError::Parse(format!("bad grid char {other:?}")))
                    }
                }
            }
        }
        let goal_region = get("goal")?
            .split(';')
            .map(parse_cell)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GridMap {
            occupancy: Grid::from_vec(rows, cols, data),
            start: parse_cell(&get("start")?)?,
            goal_region,
            spec,
        })
    }

    pub fn load(path: &Path) -> Result<GridMap, MapError> {
        let f = std::io::BufReader::new(std::fs::File::open(path)?);
        Self::read_from(f)
    }
}

fn parse_float(s: &str) -> Result<f64, MapError> {
    s.parse::<f64>()
        .map_err(|e| MapError::Parse(format!("bad float {s:?}: {e}")))
}

/// Axis-aligned rectangle in the unrotated frame, in meters.
struct Rect {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Rect {
    /// Half-open membership so that adjacent rectangles tile without overlap.
    fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x0 && x < self.x1 && y >= self.y0 && y < self.y1
    }
}

/// Rasterize the obstacle described by `spec` onto a fresh grid.
///
/// The corridor interior spans `length` meters along +x; the mouth is the
/// west opening. The goal sits `GOAL_CLEARANCE` past the far wall face,
/// snapped onto the start's step lattice so it is exactly reachable.
pub fn generate_map(spec: &MapSpec) -> Result<GridMap, MapError> {
    spec.validate().map_err(MapError::InfeasibleSpec)?;
    let res = spec.resolution;
    let t = WALL_THICKNESS;
    let (l, w) = (spec.length, spec.width);

    // unrotated-frame extents
    let total_x = MARGIN + l + t + GOAL_CLEARANCE + MARGIN;
    let total_y = MARGIN + t + w + t + MARGIN;
    let cols = (total_x / res).ceil() as usize;
    let rows = (total_y / res).ceil() as usize;

    let x0 = MARGIN; // corridor mouth plane
    let yc = MARGIN + t + w / 2.0; // corridor centerline

    let mut rects = vec![
        // south and north walls
        Rect { x0, x1: x0 + l, y0: yc - w / 2.0 - t, y1: yc - w / 2.0 },
        Rect { x0, x1: x0 + l, y0: yc + w / 2.0, y1: yc + w / 2.0 + t },
    ];
    if spec.kind == ObstacleKind::CulDeSac {
        rects.push(Rect {
            x0: x0 + l,
            x1: x0 + l + t,
            y0: yc - w / 2.0 - t,
            y1: yc + w / 2.0 + t,
        });
    }

    let mut occ = Grid::filled(rows, cols, false);
    for row in 0..rows {
        for col in 0..cols {
            let cx = (col as f64 + 0.5) * res;
            let cy = (row as f64 + 0.5) * res;
            if rects.iter().any(|r| r.contains(cx, cy)) {
                occ.set(Cell::new(row, col), true);
            }
        }
    }

    // Start at the mouth, shifted by the displacements (row = lateral,
    // col = along the corridor axis).
    let start_x = x0 + spec.col_disp;
    let start_y = yc + spec.row_disp;
    if spec.row_disp.abs() >= w / 2.0 {
        return Err(MapError::InfeasibleSpec(format!(
            "row displacement {} does not fit a corridor of width {}",
            spec.row_disp, w
        )));
    }
    let cell_at = |x: f64, y: f64| -> Result<Cell, MapError> {
        let col = (x / res).floor();
        let row = (y / res).floor();
        if !occ.in_bounds(row as i64, col as i64) {
            return Err(MapError::InfeasibleSpec(format!(
                "point ({x}, {y}) lies off-grid"
            )));
        }
        Ok(Cell::new(row as usize, col as usize))
    };
    let start = cell_at(start_x, start_y)?;
    if *occ.get(start) {
        return Err(MapError::InfeasibleSpec(
            "start cell lies inside the obstacle".to_string(),
        ));
    }

    // Nominal goal past the far wall face, snapped to the start's step
    // lattice so a single goal cell is always reachable.
    let goal_nominal = cell_at(x0 + l + t + GOAL_CLEARANCE, yc)?;
    let k = CELLS_PER_STEP;
    let snap = |g: usize, s: usize| -> usize {
        let diff = g as i64 - s as i64;
        (g as i64 - diff.rem_euclid(k as i64)) as usize
    };
    let goal = Cell::new(
        snap(goal_nominal.row, start.row),
        snap(goal_nominal.col, start.col),
    );
    if *occ.get(goal) {
        return Err(MapError::InfeasibleSpec(
            "goal cell lies inside the obstacle".to_string(),
        ));
    }

    // Rotate the rasterized layout into the requested orientation.
    let turns = (spec.orientation / 90) as usize;
    let occupancy = occ.rotated_ccw(turns);
    let start = rotate_cell_ccw(start, rows, cols, turns);
    let goal = rotate_cell_ccw(goal, rows, cols, turns);

    Ok(GridMap {
        occupancy,
        start,
        goal_region: vec![goal],
        spec: *spec,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(kind: ObstacleKind, length: f64, width: f64, orientation: u16) -> MapSpec {
        MapSpec {
            kind,
            length,
            width,
            orientation,
            row_disp: 0.0,
            col_disp: 0.0,
            resolution: 0.5,
        }
    }

    #[test]
    fn parallel_walls_open_both_ends() {
        // corridor open on both ends, start at the mouth center
        let m = generate_map(&spec(ObstacleKind::ParallelWalls, 10.0, 3.0, 0)).unwrap();
        let res = m.resolution();
        let yc = MARGIN + WALL_THICKNESS + 1.5;
        // centerline is free along the whole corridor and beyond
        for i in 0..((10.0 + WALL_THICKNESS + GOAL_CLEARANCE) / res) as usize {
            let x = MARGIN + (i as f64 + 0.5) * res;
            let c = m.cell_of(x, yc).unwrap();
            assert!(!m.is_occupied(c), "centerline blocked at x={x}");
        }
        // wall interior is occupied mid-corridor
        let wall = m.cell_of(MARGIN + 5.0, yc + 1.5 + 0.25).unwrap();
        assert!(m.is_occupied(wall));
        // start is at the mouth center
        let (sx, sy) = m.cell_center(m.start);
        assert!((sx - (MARGIN + 0.25)).abs() < 0.26);
        assert!((sy - yc).abs() < 0.26);
    }

    #[test]
    fn culdesac_far_end_closed() {
        let m = generate_map(&spec(ObstacleKind::CulDeSac, 10.0, 3.0, 0)).unwrap();
        let yc = MARGIN + WALL_THICKNESS + 1.5;
        let cap = m.cell_of(MARGIN + 10.0 + 0.25, yc).unwrap();
        assert!(m.is_occupied(cap));
        let walls = generate_map(&spec(ObstacleKind::ParallelWalls, 10.0, 3.0, 0)).unwrap();
        assert!(!walls.is_occupied(cap));
        // identical occupancy except in the cap rectangle
        let mut diff = 0usize;
        for (cell, v) in m.occupancy.iter_cells() {
            if *walls.occupancy.get(cell) != *v {
                diff += 1;
                let (x, _y) = m.cell_center(cell);
                assert!(x >= MARGIN + 10.0 && x <= MARGIN + 10.0 + WALL_THICKNESS);
            }
        }
        assert!(diff > 0);
    }

    #[test]
    fn rotation_180_is_point_reflection() {
        let a = generate_map(&spec(ObstacleKind::CulDeSac, 8.0, 2.0, 0)).unwrap();
        let b = generate_map(&spec(ObstacleKind::CulDeSac, 8.0, 2.0, 180)).unwrap();
        assert_eq!(a.rows(), b.rows());
        assert_eq!(a.cols(), b.cols());
        for (cell, v) in a.occupancy.iter_cells() {
            let reflected = Cell::new(a.rows() - 1 - cell.row, a.cols() - 1 - cell.col);
            assert_eq!(*v, b.is_occupied(reflected));
        }
        assert_eq!(
            b.start,
            Cell::new(a.rows() - 1 - a.start.row, a.cols() - 1 - a.start.col)
        );
    }

    #[test]
    fn small_culdesac_rasterization_matches_hand_count() {
        // 2m x 2m cul-de-sac at 0.5 m cells: each wall rectangle is 2m x 1m
        // = 4x2 cells, the cap is 1m x 4m = 2x8 cells.
        let m = generate_map(&spec(ObstacleKind::CulDeSac, 2.0, 2.0, 0)).unwrap();
        let occupied = m.occupancy.iter_cells().filter(|(_, v)| **v).count();
        let side_wall_cells = ((2.0 / 0.5) * (WALL_THICKNESS / 0.5)) as usize;
        let cap_cells = ((WALL_THICKNESS / 0.5) * ((2.0 + 2.0 * WALL_THICKNESS) / 0.5)) as usize;
        assert_eq!(occupied, 2 * side_wall_cells + cap_cells);
        // and the interior of the U is free
        let yc = MARGIN + WALL_THICKNESS + 1.0;
        for i in 0..4 {
            let c = m.cell_of(MARGIN + 0.25 + i as f64 * 0.5, yc - 0.25).unwrap();
            assert!(!m.is_occupied(c));
        }
    }

    #[test]
    fn goal_is_on_start_lattice_and_beyond_obstacle() {
        for kind in [ObstacleKind::CulDeSac, ObstacleKind::ParallelWalls] {
            for orientation in [0u16, 90, 180, 270] {
                let mut s = spec(kind, 12.0, 2.0, orientation);
                s.row_disp = 0.3;
                s.col_disp = -0.5;
                let m = generate_map(&s).unwrap();
                let g = m.goal_region[0];
                assert_eq!((g.row as i64 - m.start.row as i64) % CELLS_PER_STEP as i64, 0);
                assert_eq!((g.col as i64 - m.start.col as i64) % CELLS_PER_STEP as i64, 0);
                assert!(!m.is_occupied(g));
                assert!(m.start.manhattan(&g) as f64 * m.resolution() > s.length);
            }
        }
    }

    #[test]
    fn infeasible_displacement_rejected() {
        let mut s = spec(ObstacleKind::CulDeSac, 6.0, 2.0, 0);
        s.row_disp = 1.0; // on the wall face
        assert!(matches!(
            generate_map(&s),
            Err(MapError::InfeasibleSpec(_))
        ));
    }

    #[test]
    fn generation_is_pure() {
        let s = spec(ObstacleKind::ParallelWalls, 7.0, 3.0, 90);
        assert_eq!(generate_map(&s).unwrap(), generate_map(&s).unwrap());
    }

    #[test]
    fn map_file_roundtrip() {
        let mut s = spec(ObstacleKind::CulDeSac, 9.0, 2.0, 270);
        s.row_disp = -0.3;
        s.col_disp = 0.1;
        s.resolution = 0.25;
        let m = generate_map(&s).unwrap();
        let mut buf = Vec::new();
        m.write_to(&mut buf).unwrap();
        let back = GridMap::read_from(std::io::Cursor::new(&buf)).unwrap();
        assert_eq!(m, back);
        // and the serialized bytes are stable
        let mut buf2 = Vec::new();
        back.write_to(&mut buf2).unwrap();
        assert_eq!(buf, buf2);
    }
}
