use std::process::{Command, Output};

fn cy3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cy3lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = cy3(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn err(args: &[&str]) -> (i32, String) {
    let out = cy3(args);
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn quotient_reports_catalog_match() {
    let text = ok(&[
        "quiver",
        "quotient",
        "--name",
        "pdp5",
        "--action",
        "pi1",
        "--normalize",
        "group-order",
        "--format",
        "text",
    ]);
    assert!(text.contains("matches catalog p1xp1 (scale 1)"), "{text}");

    let json: serde_json::Value = serde_json::from_str(&ok(&[
        "quiver",
        "quotient",
        "--name",
        "pdp5",
        "--action",
        "pi1",
        "--normalize",
        "group-order",
    ]))
    .unwrap();
    assert_eq!(json["match"]["name"], "p1xp1");
    assert_eq!(json["match"]["scale"], "1");
    assert_eq!(json["quotient"]["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(json["orbits"]["vertices"].as_object().unwrap().len(), 8);
}

#[test]
fn raw_quotient_scale_is_group_order() {
    let json: serde_json::Value = serde_json::from_str(&ok(&[
        "quiver",
        "quotient",
        "--name",
        "pdp5",
        "--action",
        "pi1",
        "--normalize",
        "raw",
    ]))
    .unwrap();
    assert_eq!(json["match"]["scale"], "2");
}

#[test]
fn quotient_matches_for_orbifold_family() {
    for n in ["2", "3", "4", "5"] {
        let text = ok(&[
            "quiver", "quotient", "--name", "yN0", "--N", n, "--action", "rot", "--format", "text",
        ]);
        assert!(text.contains("matches catalog conifold"), "N={n}: {text}");
    }
    let dp3 = ok(&[
        "quiver", "quotient", "--name", "dp3", "--action", "pi3", "--format", "text",
    ]);
    assert!(dp3.contains("matches catalog dp3z2"), "{dp3}");
}

#[test]
fn spectrum_table_text_and_json() {
    let text = ok(&[
        "bps", "spectrum", "--name", "yN0", "--N", "2", "--window", "-2:2", "--format", "text",
    ]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7);
    assert!(lines.contains(&"Omega(g1 + n*v1) = 1    n in [-2, 2]"));
    assert!(lines.contains(&"Omega(0 + n*delta) = -4    n in [-2, 2], n != 0"));

    let json: serde_json::Value = serde_json::from_str(&ok(&[
        "bps", "spectrum", "--N", "2", "--window", "-3:3", "--format", "json",
    ]))
    .unwrap();
    let first = &json[0];
    assert_eq!(first["class"]["g1"], 1);
    assert_eq!(first["omega"], 1);
    assert_eq!(first["family"]["range"], serde_json::json!([-3, 3]));
}

#[test]
fn error_lines_and_exit_codes() {
    let (code, e) = err(&["catalog", "show", "--name", "nosuch"]);
    assert_eq!(code, 2);
    assert!(e.starts_with("ERROR UnknownEntry: "), "{e}");
    assert_eq!(e.lines().count(), 1);

    let (code, e) = err(&["catalog", "show", "--name", "yN0", "--N", "0"]);
    assert_eq!(code, 2);
    assert!(e.starts_with("ERROR BadParameter"));

    let (code, _) = err(&["catalog", "show", "--name", "conifold", "--bogus"]);
    assert_eq!(code, 64);
    let (code, _) = err(&["nonsense"]);
    assert_eq!(code, 64);
    let (code, e) = err(&["bps", "spectrum", "--N", "2", "--window", "3:1"]);
    assert_eq!(code, 2);
    assert!(e.starts_with("ERROR InvalidWindow"), "{e}");
    let (code, e) = err(&["bps", "expand", "--N", "2", "--order", "1000"]);
    assert_eq!(code, 2);
    assert!(e.starts_with("ERROR InvalidTruncation"), "{e}");
    let (code, e) = err(&["bps", "rays", "--N", "2", "--z", "1,-1,1,-1"]);
    assert_eq!(code, 2);
    assert!(e.starts_with("ERROR VanishingCentralCharge"), "{e}");
}

#[test]
fn outputs_are_byte_stable() {
    let cmds: [&[&str]; 6] = [
        &["catalog", "show", "--name", "pdp5"],
        &["quiver", "quotient", "--name", "dp3", "--action", "pi2"],
        &["dimer", "matchings", "--name", "p1xp1", "--format", "json"],
        &["bps", "rays", "--N", "3", "--format", "svg"],
        &["bps", "expand", "--N", "2", "--order", "4"],
        &[
            "dimer",
            "relattice",
            "--name",
            "pdp5",
            "--lattice-name",
            "p1xp1",
        ],
    ];
    for c in cmds {
        assert_eq!(ok(c), ok(c), "{c:?}");
    }
}

#[test]
fn files_in_and_out() {
    let dir = std::env::temp_dir().join(format!("cy3lab_cli_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let quiver = dir.join("q.json");
    let tiling = dir.join("t.json");
    // catalog JSON nests the quiver document; write it back out as a plain one
    let show: serde_json::Value =
        serde_json::from_str(&ok(&["catalog", "show", "--name", "conifold"])).unwrap();
    std::fs::write(&quiver, serde_json::to_string(&show["quiver"]).unwrap()).unwrap();
    std::fs::write(&tiling, serde_json::to_string(&show["tiling"]).unwrap()).unwrap();
    let q = quiver.to_str().unwrap();
    let t = tiling.to_str().unwrap();

    assert!(ok(&["quiver", "validate", "--in", q]).starts_with("ok: 2 vertices, 4 arrows, 2 terms"));
    assert_eq!(
        ok(&[
            "quiver",
            "isomorphic",
            "--in",
            q,
            "--other-name",
            "yN0",
            "--other-N",
            "1"
        ]),
        "isomorphic (scale 1)\n"
    );
    assert_eq!(ok(&["quiver", "euler", "--in", q]), "0 0\n0 0\n");

    let dual = dir.join("dual.json");
    assert_eq!(
        ok(&["dimer", "dual", "--in", t, "--out", dual.to_str().unwrap()]),
        ""
    );
    let d = dual.to_str().unwrap();
    assert_eq!(
        ok(&["quiver", "isomorphic", "--in", d, "--other", q]),
        "isomorphic (scale 1)\n"
    );

    let (code, e) = err(&["quiver", "validate", "--in", t]);
    assert_eq!(code, 2);
    assert!(e.starts_with("ERROR InvalidDocument"), "{e}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn polygons_from_both_methods_agree() {
    for name in ["conifold", "p1xp1", "pdp5", "dp3"] {
        let m = ok(&[
            "dimer", "polygon", "--name", name, "--method", "matching", "--format", "text",
        ]);
        let k = ok(&[
            "dimer",
            "polygon",
            "--name",
            name,
            "--method",
            "kasteleyn",
            "--format",
            "text",
        ]);
        let hull = |s: &str| s.lines().next().unwrap().to_string();
        assert_eq!(hull(&m), hull(&k), "{name}");
    }
    assert_eq!(
        ok(&["dimer", "polygon", "--name", "conifold"]),
        "[[0,0,1],[0,1,1],[1,0,1],[1,1,1]]\n"
    );
}

#[test]
fn series_dump_and_extraction() {
    assert_eq!(
        ok(&["bps", "expand", "--N", "1", "--order", "3"]),
        "[0]: 1\n[1]: 2\n[2]: 7\n[3]: 18\n"
    );
    let a = ok(&[
        "bps", "extract", "--N", "2", "--order", "6", "--window", "0:3",
    ]);
    let b = ok(&[
        "bps",
        "extract",
        "--N",
        "2",
        "--order",
        "6",
        "--window",
        "0:3",
        "--form",
        "two-character",
    ]);
    assert_eq!(a, b);
    assert!(a.contains("Omega(0 + n*delta) = -4"), "{a}");
}

#[test]
fn wallcrossing_and_rhp_checks() {
    let w = ok(&["bps", "check-wallcrossing", "--N", "2", "--order", "4"]);
    assert!(w.contains("pair sums in kernel: true"), "{w}");
    assert!(w.ends_with("wall-crossing trivial: true\n"), "{w}");
    assert_eq!(
        ok(&["bps", "check-rhp", "--name", "p1xp1", "--order", "6"]),
        "trivial RHP solution: true\n"
    );
    assert_eq!(
        ok(&["bps", "check-rhp", "--N", "3", "--order", "4"]),
        "trivial RHP solution: true\n"
    );
}

#[test]
fn svg_has_one_line_per_ray() {
    let svg = ok(&[
        "bps", "rays", "--N", "2", "--window", "-1:1", "--format", "svg",
    ]);
    let text = ok(&[
        "bps", "rays", "--N", "2", "--window", "-1:1", "--format", "text",
    ]);
    assert!(svg.contains("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<line").count(), text.lines().count());
}

#[test]
fn catalog_listing() {
    let list = ok(&["catalog", "list"]);
    assert_eq!(list.lines().count(), 9);
    assert!(list.lines().any(|l| l == "yN0"));
    let show = ok(&["catalog", "show", "--name", "p1xp1", "--format", "text"]);
    assert!(show.starts_with("p1xp1: 4 vertices, 8 arrows, 4 potential terms"));
}
