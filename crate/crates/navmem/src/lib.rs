//! Imitation-trained navigation policies with memory, plus tools to measure
//! how well an architecture can generalize.
//!
//! The crate has three layers:
//!
//! * a deterministic grid world with parameterized cul-de-sac / parallel-wall
//!   obstacles and ray-cast lidar sensing ([`gridworld`]), supervised by an
//!   incremental occupancy-mapping A* planner ([`expert`]);
//! * from-scratch policy networks (feedforward, LSTM, and external-memory
//!   variants) with truncated BPTT and RMSProp ([`nn`]), trained by parallel
//!   asynchronous imitation learners ([`dagger`]);
//! * measurement: episode metrics over map suites ([`eval`]) and a
//!   margin/enclosing-ball estimate of the readout layer's capacity
//!   ([`vcdim`]).

pub mod dagger;
pub mod eval;
pub mod expert;
pub mod gridworld;
pub mod nn;
pub mod presets;
pub mod vcdim;
