//! Configuration, text records, command dispatch and table export.

pub mod commands;
pub mod config;
pub mod export;
pub mod records;

pub use commands::{run_command, Report, Table, COMMANDS};
pub use config::{CommandArgs, Format, JobConfig, Mode, RepInput, Window};
pub use export::export_tables;
pub use records::{error_record, parse_dh, parse_element, serialize_dh, serialize_element, DHElementRecord, ElementRecord};
