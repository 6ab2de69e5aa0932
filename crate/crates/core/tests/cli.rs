use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_giant-steps"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn gst_verbose_session() {
    let text = stdout(&["gst", "0011100011100", "--verbose"]);
    assert!(text.contains("The block configurations are R1, L2, L1, R2."));
    for m in [
        "[ [ 1, 1 ], [ 0, 1 ] ]",
        "[ [ 1, 0 ], [ 1, 0 ] ]",
        "[ [ 1, 0 ], [ 1, 1 ] ]",
        "[ [ 0, 1 ], [ 0, 1 ] ]",
    ] {
        assert!(text.contains(m), "missing {m}");
    }
    assert!(text.contains("M_k * ... * M_2 is [ [ 2, 2 ], [ 2, 2 ] ]"));
    assert!(text.contains("4 minimal giant step constructions"));
}

#[test]
fn gst_plain_and_json() {
    assert_eq!(stdout(&["gst", "0011100011100"]), "depth: 5\ncount: 4\n");
    assert_eq!(stdout(&["gst", "D"]), "depth: 1\ncount: 1\n");
    assert_eq!(
        stdout(&["gst", "--steps", "DRRRDRDLLLDLDRR"]),
        "depth: 5\ncount: 4\n"
    );

    let doc = json(&["gst", "0011100011100", "--json"]);
    assert_eq!(doc["schema_version"], "1.0");
    assert_eq!(doc["count"], "4");
    assert_eq!(doc["steps"], "DRRRDRDLLLDLDRR");
    assert_eq!(doc["configs"], serde_json::json!(["R1", "L2", "L1", "R2"]));
    assert_eq!(doc["product"], serde_json::json!([["2", "2"], ["2", "2"]]));
    assert_eq!(
        doc["lambda_profile"],
        serde_json::json!(["1", "2", "2", "2", "4"])
    );
    assert_eq!(
        doc["rho_profile"],
        serde_json::json!(["1", "1", "2", "4", "4"])
    );
    assert_eq!(doc["disposition"], "right_endpoint");

    let simple = json(&["gst", "D", "--json"]);
    assert!(simple["binary"].is_null());
    assert_eq!(simple["disposition"], "simple_tunnel");
}

#[test]
fn big_counts_are_exact_strings() {
    let doc = json(&["gst", &"10".repeat(100), "--json"]);
    assert_eq!(doc["count"], "573147844013817084101");
}

#[test]
fn parse_errors_exit_2_with_one_line() {
    for args in [
        &["gst", "DRLD"][..],
        &["gst", "01x"],
        &["gst", "--steps", "0101"],
        &["convert", "D", "--to", "binary"],
        &["corridor", "D"],
        &["farey", "2/4", "1/2"],
        &["farey", "1/2", "1/2"],
        &["farey", "1/0", "1/"],
        &["stats", "--length", "99"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
    }
    let err = String::from_utf8(run(&["gst", "DRLD"]).stderr).unwrap();
    assert!(err.contains("position 3"), "{err}");
    let err = String::from_utf8(run(&["corridor", "D"]).stderr).unwrap();
    assert!(err.contains("primitive triangle"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["stats"]).status.code(), Some(2));
    assert_eq!(run(&["convert", "101"]).status.code(), Some(2));
}

#[test]
fn convert_goldens() {
    assert_eq!(
        stdout(&["convert", "0011100011100", "--to", "steps"]),
        "DRRRDRDLLLDLDRR\n"
    );
    assert_eq!(
        stdout(&["convert", "DRRRDRDLLLDLDRR", "--to", "binary"]),
        "0011100011100\n"
    );
    assert_eq!(stdout(&["convert", "111", "--to", "turns"]), "LRLR\n");
    assert_eq!(stdout(&["convert", "", "--to", "steps"]), "DR\n");
}

#[test]
fn corridor_renders() {
    let doc = json(&["corridor", "DRDRD", "--render", "json"]);
    let c = &doc["corridor"];
    assert_eq!(c["vertices"].as_array().unwrap().len(), 7);
    assert_eq!(c["triangles"].as_array().unwrap().len(), 5);
    let depths: Vec<u64> = c["nabla_edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["depth"].as_u64().unwrap())
        .collect();
    assert_eq!(depths, [1, 2]);

    let text = stdout(&["corridor", "DR"]);
    assert!(text.starts_with("corridor DR: 4 vertices, 2 triangles\n"));
    assert!(text.contains("nabla(1)"));
}

#[test]
fn verify_exit_codes() {
    let out = run(&["verify", "--max-length", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "length  0:        1 inputs, 0 disagreements\nall 1 inputs agree\n"
    );
    assert_eq!(
        run(&["verify", "--max-length", "10"]).status.code(),
        Some(0)
    );

    let out = run(&["verify", "--max-length", "4", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("'1'"));
}

#[test]
fn stats_and_farey() {
    let doc = json(&["stats", "--length", "2", "--json"]);
    assert_eq!(
        doc["lengths"][0]["histogram"],
        serde_json::json!({"1": 3, "2": 1})
    );
    assert_eq!(doc["lengths"][0]["unique_fraction"], "3/4");

    assert_eq!(stdout(&["farey", "1/0", "5/3"]), "distance: 2\ncount: 1\n");
    assert_eq!(stdout(&["farey", "0/1", "1/1"]), "distance: 1\ncount: 1\n");
    let doc = json(&["farey", "0/1", "2/1", "--json"]);
    assert_eq!(
        (doc["distance"].as_u64(), &doc["count"]),
        (Some(2), &serde_json::json!("2"))
    );
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["gst", "0110101110", "--json"][..],
        &["corridor", "0011100011100", "--render", "json"],
        &["corridor", "0011100011100"],
        &["stats", "--range", "3", "9", "--json"],
        &["verify", "--max-length", "8"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn length_cap_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_giant-steps"))
        .args(["stats", "--length", "5"])
        .env("GIANT_STEPS_MAX_LENGTH", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
