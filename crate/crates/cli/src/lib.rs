//! Library side of the `semiforge` command: the fixture verification runner.

pub mod verify;
