use rand::Rng;
use serde::{Deserialize, Serialize};

/// Shape of the obstacle placed between the start and the goal.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ObstacleKind {
    /// U-shaped corridor with a closed far end.
    CulDeSac,
    /// Two parallel walls, open at both ends.
    ParallelWalls,
}

impl ObstacleKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ObstacleKind::CulDeSac => "cul_de_sac",
            ObstacleKind::ParallelWalls => "parallel_walls",
        }
    }

    pub fn parse(s: &str) -> Option<ObstacleKind> {
        match s {
            "cul_de_sac" => Some(ObstacleKind::CulDeSac),
            "parallel_walls" => Some(ObstacleKind::ParallelWalls),
            _ => None,
        }
    }
}

/// Generation parameters for one map. All distances are in meters.
///
/// In the unrotated frame the corridor runs along +x with its mouth on the
/// west side; `orientation` rotates the whole layout counterclockwise.
/// `row_disp` shifts the start across the corridor, `col_disp` along it,
/// both applied before rotation.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct MapSpec {
    pub kind: ObstacleKind,
    pub length: f64,
    pub width: f64,
    /// One of 0, 90, 180, 270.
    pub orientation: u16,
    pub row_disp: f64,
    pub col_disp: f64,
    /// Meters per grid cell.
    pub resolution: f64,
}

impl MapSpec {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.length > 0.0) {
            return Err(format!("length must be positive, got {}", self.length));
        }
        if !(self.width > 0.0) {
            return Err(format!("width must be positive, got {}", self.width));
        }
        if !(self.resolution > 0.0) {
            return Err(format!("resolution must be positive, got {}", self.resolution));
        }
        if !matches!(self.orientation, 0 | 90 | 180 | 270) {
            return Err(format!(
                "orientation must be one of 0/90/180/270, got {}",
                self.orientation
            ));
        }
        Ok(())
    }

    /// One `key=value` record, one spec per line in suite manifests.
    pub fn to_record(&self) -> String {
        format!(
            "kind={} length={} width={} orientation={} row_disp={} col_disp={} resolution={}",
            self.kind.as_str(),
            self.length,
            self.width,
            self.orientation,
            self.row_disp,
            self.col_disp,
            self.resolution
        )
    }

    pub fn parse_record(line: &str) -> Result<MapSpec, String> {
        let mut kind = None;
        let mut length = None;
        let mut width = None;
        let mut orientation = None;
        let mut row_disp = None;
        let mut col_disp = None;
        let mut resolution = None;
        for field in line.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| format!("malformed field {field:?}"))?;
            match key {
                "kind" => {
                    kind =
                        Some(ObstacleKind::parse(value).ok_or_else(|| {
                            format!("unknown obstacle kind {value:?}")
                        })?)
                }
                "length" => length = Some(parse_f64(key, value)?),
                "width" => width = Some(parse_f64(key, value)?),
                "orientation" => {
                    orientation =
                        Some(value.parse::<u16>().map_err(|e| format!("orientation: {e}"))?)
                }
                "row_disp" => row_disp = Some(parse_f64(key, value)?),
                "col_disp" => col_disp = Some(parse_f64(key, value)?),
                "resolution" => resolution = Some(parse_f64(key, value)?),
                other => return Err(format!("unknown key {other:?}")),
            }
        }
        let spec = MapSpec {
            kind: kind.ok_or("missing kind")?,
            length: length.ok_or("missing length")?,
            width: width.ok_or("missing width")?,
            orientation: orientation.ok_or("missing orientation")?,
            row_disp: row_disp.ok_or("missing row_disp")?,
            col_disp: col_disp.ok_or("missing col_disp")?,
            resolution: resolution.ok_or("missing resolution")?,
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64, String> {
    value.parse::<f64>().map_err(|e| format!("{key}: {e}"))
}

/// Candidate values for each map parameter; specs are drawn uniformly and
/// independently per parameter.
#[derive(Clone, PartialEq, Debug)]
pub struct ParamGrid {
    pub kinds: Vec<ObstacleKind>,
    pub lengths: Vec<f64>,
    pub widths: Vec<f64>,
    pub orientations: Vec<u16>,
    pub row_disps: Vec<f64>,
    pub col_disps: Vec<f64>,
    pub resolution: f64,
}

impl ParamGrid {
    pub fn validate(&self) -> Result<(), String> {
        if self.kinds.is_empty()
            || self.lengths.is_empty()
            || self.widths.is_empty()
            || self.orientations.is_empty()
            || self.row_disps.is_empty()
            || self.col_disps.is_empty()
        {
            return Err("every parameter set must be non-empty".to_string());
        }
        Ok(())
    }
}

/// Draw one spec from the grid, uniformly per parameter.
pub fn sample_spec<R: Rng>(grid: &ParamGrid, rng: &mut R) -> MapSpec {
    let pick_f = |v: &Vec<f64>, rng: &mut R| v[rng.gen_range(0..v.len())];
    MapSpec {
        kind: grid.kinds[rng.gen_range(0..grid.kinds.len())],
        length: pick_f(&grid.lengths, rng),
        width: pick_f(&grid.widths, rng),
        orientation: grid.orientations[rng.gen_range(0..grid.orientations.len())],
        row_disp: pick_f(&grid.row_disps, rng),
        col_disp: pick_f(&grid.col_disps, rng),
        resolution: grid.resolution,
    }
}
