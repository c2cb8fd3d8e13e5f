use std::process::{Command, Output};

fn fibotheta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibotheta")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_json_lines_have_the_schema_keys_in_order() {
    let o = fibotheta(&["verify", "--check", "eq453", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    let keys = ["name", "status", "lhs", "rhs", "gap_bound", "precision_digits", "elapsed_ms"];
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let obj = v.as_object().unwrap();
        assert_eq!(obj.len(), keys.len());
        let mut last = 0;
        for k in keys {
            assert!(obj.contains_key(k), "missing {k}");
            let at = line.find(&format!("\"{k}\"")).unwrap();
            assert!(at >= last, "{k} out of order");
            last = at;
        }
        assert_eq!(v["status"], "pass");
        assert_eq!(v["precision_digits"], 40);
    }
}

#[test]
fn full_registry_passes() {
    let o = fibotheta(&["verify", "--precision", "20", "--order", "80"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("30 pass, 0 fail, 0 inconclusive"));
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(fibotheta(&["verify", "--check", "no_such_check"]).status.code(), Some(3));
    assert_eq!(fibotheta(&["verify", "--precision", "5"]).status.code(), Some(3));
    assert_eq!(fibotheta(&["digits", "xi3", "--digits", "10"]).status.code(), Some(3));
    assert_eq!(fibotheta(&["probe", "--targets", "xi1,xi2,xi1", "--degree", "1", "--height", "10", "--precision", "20"]).status.code(), Some(3));
    assert_eq!(fibotheta(&[]).status.code(), Some(3));
}

#[test]
fn help_exits_0() {
    assert_eq!(fibotheta(&["--help"]).status.code(), Some(0));
}

#[test]
fn digits_with_shifted_convention() {
    let o = fibotheta(&["digits", "xi1", "--digits", "4", "--convention", "shifted"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "6.5754");
}

#[test]
fn probe_json_reports_a_relation() {
    let o = fibotheta(&["probe", "--targets", "theta4_beta4", "--degree", "4", "--height", "1000000", "--precision", "30", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    for k in ["found", "coefficients", "relation", "residual_bound", "search_params", "note"] {
        assert!(v.get(k).is_some(), "missing {k}");
    }
    assert_eq!(v["search_params"]["precision_digits"], 30);
}

#[test]
fn probe_without_relation_is_labelled_as_evidence() {
    let o = fibotheta(&["probe", "--targets", "xi1", "--degree", "3", "--height", "1000", "--precision", "40"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("evidence, not proof"));
}

#[test]
fn series_subcommand() {
    let o = fibotheta(&["series", "--identity", "tp3", "--order", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pass"));
}
