//! Command-line driver for `jcm-core`: flat config files, parallel sampling
//! over a scaled-time grid `τ = λt`, and CSV / SVG output.
//!
//! ```no_run
//! let config = jcm_cli::parse_config("observables = entropy\ntau_end = 10\n").unwrap();
//! let series = jcm_cli::run(&config).unwrap();
//! jcm_cli::write_outputs(&series).unwrap();
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod output;
pub mod plot;
pub mod run;
pub mod verify;

use std::path::PathBuf;

pub use config::{parse_config, Observable, RunConfig, Sweep};
pub use error::{ConfigError, Error, RunError, VerifyError};
pub use output::{emit_csv, OutputPaths};
pub use plot::emit_plot;
pub use run::{run, ObservableSeries};
pub use verify::verify;

/// Writes the CSV, the config echo and (if enabled) the plots of every
/// series. Returns the paths written, in order.
pub fn write_outputs(series: &[ObservableSeries]) -> Result<Vec<PathBuf>, Error> {
    let mut written = Vec::new();
    for s in series {
        let paths = OutputPaths::new(s.config.output(), s.label.as_deref());
        let csv = paths.csv();
        emit_csv(s, &csv).map_err(|e| Error::io(&csv, e))?;
        written.push(csv);
        let meta = paths.metadata();
        output::emit_metadata(s, &meta).map_err(|e| Error::io(&meta, e))?;
        written.push(meta);
        if s.config.emit_plot() {
            let plots = emit_plot(s, &paths).map_err(|e| Error::io(paths.csv(), e))?;
            written.extend(plots);
        }
    }
    Ok(written)
}
