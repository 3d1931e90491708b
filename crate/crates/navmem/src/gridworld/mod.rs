//! Deterministic 2-D grid environment: parameterized cul-de-sac / parallel-wall
//! maps, ray-cast lidar sensing, and step/reward semantics.

mod map;
mod sensor;
mod sim;
mod spec;

pub use crate::grid::{Cell, Grid};
pub use map::{GridMap, MapError};
pub use sensor::{ray_cells, GoalMode, GoalTerm, Observation, SensorConfig};
pub use sim::{initial_heading, step, Action, RobotState, StepOutcome, Terminal};
pub use spec::{sample_spec, MapSpec, ObstacleKind, ParamGrid};
