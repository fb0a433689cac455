use std::process::{Command, Output};

fn secrecap(args: &[&str]) -> Output {
    secrecap_env(args, &[])
}

fn secrecap_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_secrecap"));
    cmd.args(args).env_remove("SECRECAP_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field(line: &str, header: &str, name: &str) -> String {
    let idx = header.split(',').position(|h| h == name).unwrap();
    line.split(',').nth(idx).unwrap().to_owned()
}

const HEADER: &str = "scheme,gamma_m_db,gamma_w_db,epsilon,qt,qr,rate_bits,status,method";

#[test]
fn eval_conventional_point() {
    let o = secrecap(&[
        "eval",
        "--scheme",
        "conventional",
        "--gamma-m-db",
        "10",
        "--gamma-w-db",
        "-10",
        "--epsilon",
        "0.1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        format!("{HEADER}\nconventional,10,-10,0.1,1,1,0.90186605,ok,analytic\n")
    );
}

#[test]
fn eval_switching_with_equal_snrs_is_zero() {
    let o = secrecap(&[
        "eval",
        "--scheme",
        "switching",
        "--gamma-m-db",
        "10",
        "--gamma-w-db",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("switching,10,10,,1,1,0,ok,analytic\n"));
}

#[test]
fn eval_partial_csi_single_state_equals_conventional() {
    let args = [
        "--gamma-m-db",
        "12",
        "--gamma-w-db",
        "3",
        "--epsilon",
        "0.35",
    ];
    let conv = secrecap(&[&["eval", "--scheme", "conventional"][..], &args].concat());
    let part = secrecap(
        &[
            &["eval", "--scheme", "partial-csi", "--qt", "1", "--qr", "1"][..],
            &args,
        ]
        .concat(),
    );
    let strip = |o: &Output| {
        stdout(o)
            .lines()
            .nth(1)
            .unwrap()
            .split_once(',')
            .unwrap()
            .1
            .to_owned()
    };
    assert_eq!(strip(&conv), strip(&part));
}

#[test]
fn eval_infeasible_exits_two_with_record() {
    let o = secrecap(&[
        "eval",
        "--scheme",
        "conventional",
        "--gamma-m-db",
        "10",
        "--gamma-w-db",
        "5",
        "--epsilon",
        "0.24",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "infeasible");
    assert!(v["rate_bits"].is_null());
    assert_eq!(v["gamma_w_db"], 5.0);
}

#[test]
fn usage_errors_exit_one() {
    let cases: [&[&str]; 7] = [
        &[
            "eval",
            "--scheme",
            "bogus",
            "--gamma-m-db",
            "1",
            "--gamma-w-db",
            "1",
        ],
        &[
            "eval",
            "--scheme",
            "conventional",
            "--gamma-m-db",
            "1",
            "--gamma-w-db",
            "1",
        ],
        &[
            "eval",
            "--scheme",
            "switching",
            "--gamma-m-db",
            "1",
            "--gamma-w-db",
            "1",
            "--epsilon",
            "0.1",
        ],
        &[
            "eval",
            "--scheme",
            "full-csi",
            "--gamma-m-db",
            "1",
            "--gamma-w-db",
            "1",
            "--epsilon",
            "0.1",
        ],
        &[
            "eval",
            "--scheme",
            "conventional",
            "--gamma-m-db",
            "nan",
            "--gamma-w-db",
            "1",
            "--epsilon",
            "0.1",
        ],
        &["sweep", "--preset", "fig2", "--gamma-m-db", "3"],
        &[
            "mc",
            "--scheme",
            "conventional",
            "--gamma-m-db",
            "1",
            "--gamma-w-db",
            "1",
            "--rate",
            "1",
            "--epsilon",
            "0.1",
        ],
    ];
    for args in cases {
        let o = secrecap(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn full_csi_eval_points_to_mc() {
    let o = secrecap(&[
        "eval",
        "--scheme",
        "full-csi",
        "--gamma-m-db",
        "1",
        "--gamma-w-db",
        "1",
        "--epsilon",
        "0.1",
    ]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("secrecap mc"));
}

#[test]
fn help_and_version_exit_zero() {
    let help = secrecap(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("Usage: secrecap"));
    let version = secrecap(&["--version"]);
    assert_eq!(version.status.code(), Some(0));
    assert!(stdout(&version).starts_with("secrecap "));
}

#[test]
fn fig2_preset_rows() {
    let o = secrecap(&["sweep", "--preset", "fig2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some(HEADER));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3 * 2 * 99);
    assert!(rows.contains(&"conventional,10,-10,0.1,1,1,0.90186605,ok,analytic"));
    for eps in 1..=24 {
        let prefix = format!("conventional,10,5,{},", eps as f64 / 100.0);
        let row = rows.iter().find(|r| r.starts_with(&prefix)).unwrap();
        assert!(row.ends_with(",,infeasible,analytic"), "{row}");
    }
    assert!(rows
        .iter()
        .any(|r| r.starts_with("conventional,10,5,0.25,") && r.contains(",ok,")));
}

#[test]
fn sweep_json_mirrors_csv() {
    let args = [
        "sweep",
        "--preset",
        "custom",
        "--gamma-m-db",
        "-10,0,10",
        "--gamma-w-db",
        "0",
        "--epsilon",
        "0.1",
        "--schemes",
        "conventional,switching,partial-csi",
        "--qt",
        "2",
        "--qr",
        "3",
    ];
    let csv = stdout(&secrecap(&args));
    let json = stdout(&secrecap(&[&args[..], &["--format", "json"]].concat()));
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    let objs: Vec<serde_json::Value> = json
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 9);
    assert_eq!(rows.len(), objs.len());
    for (row, obj) in rows.iter().zip(&objs) {
        assert_eq!(field(row, HEADER, "scheme"), obj["scheme"]);
        assert_eq!(field(row, HEADER, "status"), obj["status"]);
        assert_eq!(field(row, HEADER, "qt"), obj["qt"].to_string());
        match obj["rate_bits"].as_f64() {
            Some(r) => assert_eq!(field(row, HEADER, "rate_bits").parse::<f64>().unwrap(), r),
            None => assert_eq!(field(row, HEADER, "rate_bits"), ""),
        }
    }
    // partial-csi echoes its state counts, conventional is single-antenna
    assert!(rows
        .iter()
        .any(|r| r.starts_with("partial-csi,10,0,0.1,2,3,")));
    assert!(rows
        .iter()
        .any(|r| r.starts_with("conventional,10,0,0.1,1,1,")));
}

#[test]
fn normalized_sweep_marks_undefined_points() {
    let o = secrecap(&[
        "sweep",
        "--preset",
        "custom",
        "--gamma-m-db",
        "-10,0,10",
        "--gamma-w-db",
        "0",
        "--epsilon",
        "0.1",
        "--schemes",
        "switching",
        "--normalize",
    ]);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert!(lines
        .next()
        .unwrap()
        .starts_with("# rate_bits is the secrecy rate divided by"));
    assert_eq!(lines.next(), Some(HEADER));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows[0], "switching,-10,0,0.1,1,1,,undefined,analytic");
    assert_eq!(rows[1], "switching,0,0,0.1,1,1,,undefined,analytic");
    let ratio: f64 = field(rows[2], HEADER, "rate_bits").parse().unwrap();
    assert!(ratio > 0.0 && ratio < 1.0);
}

#[test]
fn mc_conventional_matches_closed_form() {
    let o = secrecap(&[
        "mc",
        "--scheme",
        "conventional",
        "--rate",
        "1",
        "--gamma-m-db",
        "10",
        "--gamma-w-db",
        "-10",
        "--trials",
        "1000000",
        "--seed",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let (header, row) = out.trim_end().split_once('\n').unwrap();
    let p: f64 = field(row, header, "p_hat").parse().unwrap();
    let se: f64 = field(row, header, "std_err").parse().unwrap();
    assert!((p - 0.11290449212160827).abs() <= 4.0 * se, "{p} ± {se}");
}

#[test]
fn mc_full_csi_goldens() {
    let base = [
        "mc",
        "--scheme",
        "full-csi",
        "--qt",
        "5",
        "--qr",
        "5",
        "--gamma-m-db",
        "10",
        "--epsilon",
        "0.1",
        "--trials",
        "1000000",
        "--seed",
        "42",
    ];
    let header = "scheme,gamma_m_db,gamma_w_db,qt,qr,symbols,trials,seed,epsilon,rate_bits,status,rank,lower,upper,half_width";

    // a 20 dB eavesdropper leaves ~1/3 of blocks with zero secrecy capacity
    let o = secrecap(&[&base[..], &["--gamma-w-db", "20"]].concat());
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(
        stdout(&o),
        format!("{header}\nfull-csi,10,20,5,5,1,1000000,42,0.1,,infeasible,100000,0,0,0\n")
    );

    let o = secrecap(&[&base[..], &["--gamma-w-db", "0"]].concat());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        format!("{header}\nfull-csi,10,0,5,5,1,1000000,42,0.1,3.89902896,ok,100000,3.89725316,3.90084347,0.00179515298\n")
    );
}

#[test]
fn mc_output_ignores_shards_and_threads() {
    let base = [
        "mc",
        "--scheme",
        "partial-csi",
        "--qt",
        "4",
        "--qr",
        "3",
        "--gamma-m-db",
        "8",
        "--gamma-w-db",
        "2",
        "--epsilon",
        "0.2",
        "--trials",
        "150000",
        "--seed",
        "11",
    ];
    let reference = secrecap(&[&base[..], &["--shards", "1"]].concat());
    assert_eq!(reference.status.code(), Some(0));
    for (shards, threads) in [("2", "1"), ("8", "4"), ("8", "1"), ("37", "3")] {
        let o = secrecap_env(
            &[&base[..], &["--shards", shards]].concat(),
            &[("SECRECAP_THREADS", threads)],
        );
        assert_eq!(
            o.stdout, reference.stdout,
            "shards {shards} threads {threads}"
        );
    }
}

#[test]
fn mc_switching_ergodic_record() {
    let o = secrecap(&[
        "mc",
        "--scheme",
        "switching",
        "--qt",
        "2",
        "--qr",
        "2",
        "--symbols",
        "4",
        "--gamma-m-db",
        "10",
        "--gamma-w-db",
        "0",
        "--trials",
        "50000",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let secrecy = v["secrecy_bits"].as_f64().unwrap();
    assert!((secrecy - 2.04616743).abs() < 0.02, "{secrecy}");
    assert_eq!(v["symbols"], 4);
}

#[test]
fn bad_thread_cap_is_a_usage_error() {
    let o = secrecap_env(
        &[
            "mc",
            "--scheme",
            "conventional",
            "--rate",
            "1",
            "--gamma-m-db",
            "10",
            "--gamma-w-db",
            "0",
        ],
        &[("SECRECAP_THREADS", "zero")],
    );
    assert_eq!(o.status.code(), Some(1));
}
