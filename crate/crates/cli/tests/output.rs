use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use jcm_cli::config::parse_config;
use jcm_cli::output::{format_value, OutputPaths, NA};
use jcm_cli::{emit_csv, emit_plot, run, write_outputs, Observable};

const FAST: [&str; 2] = ["alpha_sq = 4", "grid_points = 801"];

/// `extra` plus the fast defaults it does not override.
fn config(extra: &str, dir: &Path) -> jcm_cli::RunConfig {
    let mut text = format!("output = {}\n{extra}", dir.join("run.csv").display());
    for line in FAST {
        let key = line.split('=').next().unwrap().trim();
        if !extra.lines().any(|l| l.trim_start().starts_with(key)) {
            text.push_str(line);
            text.push('\n');
        }
    }
    parse_config(&text).unwrap()
}

/// Header and rows as text cells.
fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    (header, rows)
}

#[test]
fn entropy_at_tau_zero_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(
        "observables = entropy\ntau_end = 0.5\ntau_step = 1\n",
        dir.path(),
    );
    let series = run(&c).unwrap();
    assert_eq!(series.len(), 1);
    let s_f = series[0].s_f.as_ref().unwrap();
    assert_eq!(s_f.len(), 1);
    assert!(s_f[0].abs() < 1e-12);
    assert!(series[0].q.is_none() && series[0].v_x.is_none());
}

#[test]
fn revival_sample_on_the_grid() {
    let dir = tempfile::tempdir().unwrap();
    let step = 2.0 * PI / 50.0;
    let c = config(
        &format!(
            "observables = entropy\ntau_end = {}\ntau_step = {step}\n",
            2.0 * PI + 0.01
        ),
        dir.path(),
    );
    let series = run(&c).unwrap();
    let s_f = series[0].s_f.as_ref().unwrap();
    assert_eq!(s_f.len(), 51);
    assert!(s_f[50] <= 1e-6);
    assert!(s_f[25] > 1e-3);
}

#[test]
fn emitted_values_respect_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(
        "tau_end = 8\ntau_step = 0.1\nnonlinearity = trapped_ion\n",
        dir.path(),
    );
    let s = &run(&c).unwrap()[0];
    assert!(s
        .s_f
        .as_ref()
        .unwrap()
        .iter()
        .all(|&v| (0.0..=3f64.ln() + 1e-9).contains(&v)));
    for col in [&s.big_e_x, &s.big_e_p, &s.v_x, &s.v_p] {
        assert!(col.as_ref().unwrap().iter().all(|&v| v >= -1.0));
    }
}

#[test]
fn single_sample_csv_has_two_lines() {
    let dir = tempfile::tempdir().unwrap();
    let c = config("tau_end = 0.5\ntau_step = 1\n", dir.path());
    let series = run(&c).unwrap();
    let path = dir.path().join("one.csv");
    emit_csv(&series[0], &path).unwrap();
    let bytes = fs::read(&path).unwrap();
    let text = String::from_utf8(bytes).unwrap();
    assert!(!text.contains('\r'));
    assert_eq!(text.lines().count(), 2);
    assert!(text.ends_with('\n'));
    assert_eq!(
        text.lines().next().unwrap(),
        "tau,S_F,E_x_sq,E_p_sq,Q,V_x,V_p"
    );
}

#[test]
fn header_lists_requested_columns_in_fixed_order() {
    let dir = tempfile::tempdir().unwrap();
    for (observables, header) in [
        ("quadrature,entropy", "tau,S_F,V_x,V_p"),
        ("mandel", "tau,Q"),
        ("entropy_squeezing,mandel", "tau,E_x_sq,E_p_sq,Q"),
        ("", "tau"),
    ] {
        let c = config(
            &format!("observables = {observables}\ntau_end = 1\ntau_step = 0.5\n"),
            dir.path(),
        );
        let path = dir.path().join("h.csv");
        emit_csv(&run(&c).unwrap()[0], &path).unwrap();
        assert_eq!(read_csv(&path).0.join(","), header);
    }
}

#[test]
fn csv_round_trip_within_relative_tolerance() {
    let dir = tempfile::tempdir().unwrap();
    let c = config("tau_end = 3\ntau_step = 0.05\n", dir.path());
    let s = &run(&c).unwrap()[0];
    let path = dir.path().join("rt.csv");
    emit_csv(s, &path).unwrap();
    let (header, rows) = read_csv(&path);
    assert_eq!(rows.len(), s.tau.len());
    let columns = [
        &s.tau,
        s.s_f.as_ref().unwrap(),
        s.big_e_x.as_ref().unwrap(),
        s.big_e_p.as_ref().unwrap(),
    ];
    for (i, row) in rows.iter().enumerate() {
        for (j, col) in columns.iter().enumerate() {
            let parsed: f64 = row[j].parse().unwrap();
            let exact = col[i];
            assert!(
                (parsed - exact).abs() <= 1e-11 * exact.abs(),
                "{} row {i}: {} vs {exact}",
                header[j],
                row[j]
            );
        }
        let q: f64 = row[4].parse().unwrap();
        let exact = s.q.as_ref().unwrap()[i].unwrap();
        assert!((q - exact).abs() <= 1e-11 * exact.abs());
    }
}

#[test]
fn undefined_mandel_is_written_as_na() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(
        "alpha_sq = 0\nobservables = mandel\ntau_end = 1\ntau_step = 0.5\n",
        dir.path(),
    );
    let s = &run(&c).unwrap()[0];
    assert_eq!(s.q.as_ref().unwrap()[0], None);
    let path = dir.path().join("na.csv");
    emit_csv(s, &path).unwrap();
    let (_, rows) = read_csv(&path);
    assert_eq!(rows[0], ["0", NA]);
    assert!(rows[1][1].parse::<f64>().is_ok());
}

#[test]
fn number_formatting() {
    assert_eq!(format_value(0.0), "0");
    assert_eq!(format_value(-0.0), "0");
    assert_eq!(format_value(1.0), "1");
    assert_eq!(format_value(0.25), "0.25");
    assert_eq!(format_value(30.0), "30");
    assert_eq!(format_value(PI), "3.14159265359");
    assert_eq!(format_value(-PI * 1e-3), "-0.00314159265359");
    assert_eq!(format_value(1.5e-7), "1.5e-7");
    assert_eq!(format_value(-2.0e15), "-2e15");
    assert_eq!(format_value(9.9999999999999e-6), "0.00001");
    assert_eq!(format_value(0.1 + 0.2), "0.3");
    for v in [1.234567890123456e-300, 6.02214076e23, -0.0012345678901234] {
        let back: f64 = format_value(v).parse().unwrap();
        assert!((back - v).abs() <= 1e-11 * v.abs());
    }
}

#[test]
fn sweep_writes_one_labelled_set_per_member() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(
        "observables = entropy\nsweep_p = 1,2,3\ntau_end = 2\ntau_step = 0.1\n",
        dir.path(),
    );
    let series = run(&c).unwrap();
    assert_eq!(series.len(), 3);
    write_outputs(&series).unwrap();
    for p in 1..=3 {
        let csv = dir.path().join(format!("run_p{p}.csv"));
        let meta = fs::read_to_string(dir.path().join(format!("run_p{p}.cfg"))).unwrap();
        assert!(csv.exists());
        assert!(meta.lines().any(|l| l == format!("p = {p}")), "{meta}");
        let echo = parse_config(&meta).unwrap();
        assert_eq!(echo.params().p(), p);
    }
    assert!(!dir.path().join("run.csv").exists());
}

#[test]
fn plots_follow_the_observable_selection() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(
        "observables = entropy\ntau_end = 2\ntau_step = 0.1\n",
        dir.path(),
    );
    let s = &run(&c).unwrap()[0];
    let paths = OutputPaths::new(c.output(), None);
    let files = emit_plot(s, &paths).unwrap();
    assert_eq!(files, vec![dir.path().join("run_entropy.svg")]);
    let svg = fs::read_to_string(&files[0]).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains("<polyline"));
    assert!(!svg.contains("stroke-dasharray"));

    let c = config("observables =\ntau_end = 2\ntau_step = 0.1\n", dir.path());
    let s = &run(&c).unwrap()[0];
    let before = fs::read_dir(dir.path()).unwrap().count();
    assert!(emit_plot(s, &paths).unwrap().is_empty());
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), before);
}

#[test]
fn squeezing_plots_have_zero_line_and_two_curves() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(
        "observables = quadrature,entropy_squeezing\ntau_end = 2\ntau_step = 0.1\n",
        dir.path(),
    );
    let s = &run(&c).unwrap()[0];
    let files = emit_plot(s, &OutputPaths::new(c.output(), None)).unwrap();
    assert_eq!(files.len(), 2);
    for f in files {
        let svg = fs::read_to_string(f).unwrap();
        assert!(svg.contains("stroke-dasharray"));
        assert_eq!(svg.matches("<polyline").count(), 2);
    }
}

#[test]
fn sweep_plots_one_file_per_observable_and_member() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(
        "observables = entropy,mandel\nsweep_nonlinearity = identity,harmonious\nplot = true\ntau_end = 1\ntau_step = 0.1\n",
        dir.path(),
    );
    let written = write_outputs(&run(&c).unwrap()).unwrap();
    let svgs: Vec<_> = written
        .iter()
        .filter(|p| p.extension().is_some_and(|e| e == "svg"))
        .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    assert_eq!(
        svgs,
        [
            "run_identity_entropy.svg",
            "run_identity_mandel.svg",
            "run_harmonious_entropy.svg",
            "run_harmonious_mandel.svg"
        ]
    );
    assert_eq!(
        OutputPaths::new(c.output(), Some("x")).plot(Observable::Mandel),
        dir.path().join("run_x_mandel.svg")
    );
}

#[test]
fn identical_configs_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let text = "nonlinearity = poschl_teller\ntau_end = 4\ntau_step = 0.05\nplot = true\n";
    let mut outputs = Vec::new();
    for _ in 0..2 {
        let c = config(text, dir.path());
        let files = write_outputs(&run(&c).unwrap()).unwrap();
        outputs.push(
            files
                .iter()
                .map(|f| fs::read(f).unwrap())
                .collect::<Vec<_>>(),
        );
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn unwritable_path_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("no/such/dir");
    let c = config("observables = entropy\ntau_end = 1\n", &missing);
    let err = write_outputs(&run(&c).unwrap()).unwrap_err();
    assert!(matches!(err, jcm_cli::Error::Io { .. }), "{err}");
}
