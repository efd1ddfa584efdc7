//! Command entry points, scenario files and machine-readable reports.

mod commands;
mod poly_text;
mod recheck;
mod report;
mod scenario;
mod serial;

pub use commands::{bound_input_from_json, cmd_jacobian, cmd_pillai, cmd_rank_bound, cmd_verify_d5, cmd_verify_d6, default_bound_input, Overrides};
pub use poly_text::{format_poly, parse_int_poly, parse_poly, parse_surface, IntPoly};
pub use recheck::recheck;
pub use report::{split_seed, Check, Report, ReportBuilder, Status, Timing, SCHEMA_VERSION};
pub use scenario::{kubert_cubic, kubert_point, DivisorText, ExplicitPointJob, JacobianJob, JacobianOp, KubertJob, Scenario, SurfaceTag};
pub use serial::{
    elem_from_json, elem_json, matrix_from_json, matrix_json, point_from_json, point_json, poly_from_json, poly_json, rational_from_json,
    rational_json, SectionJson,
};

#[cfg(test)]
mod tests;
