use std::process::{Command, Output};

fn abc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abc-scatter")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn cross_section_integer_flux() {
    let o = abc(&["cross-section", "--gamma", "0.05", "--alpha", "0", "--energy", "1.25", "--theta", "30:180:16", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 16);
    assert!(rows.iter().all(|r| r.ends_with(",ClosedNu0")));
}

#[test]
fn bound_states_ground_level() {
    let o = abc(&["bound-states", "--gamma", "0.1", "--alpha", "0", "--nmax", "3", "--jmax", "5/2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let e: f64 = out.lines().nth(1).unwrap().split(',').nth(2).unwrap().parse().unwrap();
    assert!((e - 0.9797959).abs() < 1e-6);
    // n >= 1 levels pair up at integer flux
    assert!(out.lines().skip(1).all(|l| l.starts_with("0,") == l.ends_with(",1")));
}

#[test]
fn validate_passes_and_repeats() {
    let args = ["validate", "--gamma", "0.05", "--alpha", "0.2", "--energy", "1.25"];
    let a = abc(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let out = stdout(&a);
    let ode = out.lines().find(|l| l.starts_with("ode_vs_exact,")).unwrap();
    let dev: f64 = ode.split(',').nth(1).unwrap().parse().unwrap();
    assert!(dev < 1e-5);
    assert!(!out.contains(",fail,"));
    let b = abc(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
}

#[test]
fn json_rows_match_csv() {
    let base = ["amplitude", "--gamma", "0.05", "--alpha", "0.3", "--theta", "40:160:4"];
    let csv = stdout(&abc(&base));
    let mut args = base.to_vec();
    args.extend(["--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&abc(&args))).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for (line, row) in csv.lines().skip(1).zip(rows) {
        let cells: Vec<f64> = line.split(',').take(5).map(|x| x.parse().unwrap()).collect();
        for (i, key) in ["theta_deg", "re_f", "im_f", "abs_f", "sigma"].iter().enumerate() {
            assert_eq!(cells[i], row[key].as_f64().unwrap(), "{key}");
        }
    }
}

#[test]
fn bad_input_exits_two_without_output() {
    for args in [
        vec!["amplitude", "--gamma", "0.5"],
        vec!["amplitude", "--gamma", "0.1", "--energy", "0.8"],
        vec!["phase-shifts", "--gamma", "0.1", "--jmax", "2"],
        vec!["cross-section", "--gamma", "0.1", "--theta", "0:90:4"],
        vec!["bound-states", "--gamma", "-0.1"],
    ] {
        let o = abc(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}
