//! CSV and metadata files.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::config::Observable;
use crate::run::ObservableSeries;

/// Placeholder written for an undefined Mandel parameter.
pub const NA: &str = "NA";

/// Data columns in file order, after `tau`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    SF,
    ExSq,
    EpSq,
    Q,
    Vx,
    Vp,
}

impl Column {
    pub const ALL: [Column; 6] = [
        Column::SF,
        Column::ExSq,
        Column::EpSq,
        Column::Q,
        Column::Vx,
        Column::Vp,
    ];

    pub fn header(self) -> &'static str {
        match self {
            Column::SF => "S_F",
            Column::ExSq => "E_x_sq",
            Column::EpSq => "E_p_sq",
            Column::Q => "Q",
            Column::Vx => "V_x",
            Column::Vp => "V_p",
        }
    }

    pub fn observable(self) -> Observable {
        match self {
            Column::SF => Observable::Entropy,
            Column::ExSq | Column::EpSq => Observable::EntropySqueezing,
            Column::Q => Observable::Mandel,
            Column::Vx | Column::Vp => Observable::Quadrature,
        }
    }

    /// Values of this column, `None` when it was not requested.
    pub fn values(self, series: &ObservableSeries) -> Option<Vec<Option<f64>>> {
        let plain =
            |v: &Option<Vec<f64>>| v.as_ref().map(|v| v.iter().copied().map(Some).collect());
        match self {
            Column::SF => plain(&series.s_f),
            Column::ExSq => plain(&series.big_e_x),
            Column::EpSq => plain(&series.big_e_p),
            Column::Q => series.q.clone(),
            Column::Vx => plain(&series.v_x),
            Column::Vp => plain(&series.v_p),
        }
    }
}

/// Formats `v` with 12 significant digits, fixed notation for moderate
/// magnitudes and `1.5e-7` style otherwise, trailing zeros removed.
pub fn format_value(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes `tau` plus the requested columns, one row per sample, LF endings.
pub fn emit_csv(series: &ObservableSeries, path: &Path) -> io::Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    write_csv(series, &mut out)?;
    out.flush()
}

pub fn write_csv(series: &ObservableSeries, out: &mut impl Write) -> io::Result<()> {
    let columns: Vec<(Column, Vec<Option<f64>>)> = Column::ALL
        .into_iter()
        .filter_map(|c| c.values(series).map(|v| (c, v)))
        .collect();
    let mut header = String::from("tau");
    for (c, _) in &columns {
        header.push(',');
        header.push_str(c.header());
    }
    writeln!(out, "{header}")?;
    for (i, &tau) in series.tau.iter().enumerate() {
        let mut row = format_value(tau);
        for (_, values) in &columns {
            row.push(',');
            match values[i] {
                Some(v) => row.push_str(&format_value(v)),
                None => row.push_str(NA),
            }
        }
        writeln!(out, "{row}")?;
    }
    Ok(())
}

/// File names derived from the configured output path for one case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputPaths {
    dir: PathBuf,
    stem: String,
    extension: String,
}

impl OutputPaths {
    /// `out/run.csv` with label `p2` becomes `out/run_p2.csv`.
    pub fn new(output: &Path, label: Option<&str>) -> Self {
        let dir = output.parent().map(Path::to_path_buf).unwrap_or_default();
        let base = output
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "jcm".to_string());
        let extension = output
            .extension()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "csv".to_string());
        let stem = match label {
            Some(l) => format!("{base}_{l}"),
            None => base,
        };
        Self {
            dir,
            stem,
            extension,
        }
    }

    pub fn csv(&self) -> PathBuf {
        self.dir.join(format!("{}.{}", self.stem, self.extension))
    }

    /// Config echo written next to the CSV.
    pub fn metadata(&self) -> PathBuf {
        self.dir.join(format!("{}.cfg", self.stem))
    }

    pub fn plot(&self, observable: Observable) -> PathBuf {
        self.dir.join(format!("{}_{}.svg", self.stem, observable))
    }
}

/// Writes the case configuration as a parseable document.
pub fn emit_metadata(series: &ObservableSeries, path: &Path) -> io::Result<()> {
    let mut text = String::new();
    if let Some(label) = &series.label {
        text.push_str(&format!("# sweep member {label}\n"));
    }
    text.push_str(&series.config.to_document());
    std::fs::write(path, text)
}
