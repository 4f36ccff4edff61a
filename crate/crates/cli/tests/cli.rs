use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rbforest"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).trim_end().to_string(),
        String::from_utf8_lossy(&out.stderr).to_string(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn eval_examples() {
    assert_eq!(ok(&["eval", "[oo]*[o]"]), "[o[o]] + [[oo]] + L*[oo]");
    assert_eq!(ok(&["eval", "P(o)"]), "[o]");
    assert_eq!(
        ok(&["eval", "--lambda", "-1", "[oo]*[o]"]),
        "[o[o]] + [[oo]] - [oo]"
    );
    assert_eq!(ok(&["eval", "--lambda", "0", "[o]*[o]"]), "2*[[o]]");
    assert_eq!(
        ok(&["eval", "--json", "[o]*[o]"]),
        r#"{"terms":[{"forest":"[[o]]","deco":[],"coeff":"2"},{"forest":"[o]","deco":[],"coeff":"L"}]}"#
    );
}

#[test]
fn enumerate_examples() {
    assert_eq!(
        ok(&["enumerate", "--vertices", "4", "--trees", "--count"]),
        "5"
    );
    assert_eq!(ok(&["enumerate", "--vertices", "1"]), "o");
    assert_eq!(
        ok(&["enumerate", "--vertices", "3", "--ladder-free", "--count"]),
        "2"
    );
    assert_eq!(
        ok(&["enumerate", "--vertices", "3", "--forests"]),
        "[[o]]\n[o]o\n[oo]\no[o]\nooo"
    );
    assert_eq!(
        ok(&[
            "enumerate",
            "--vertices",
            "4",
            "--max-depth",
            "1",
            "--count"
        ]),
        "8"
    );
}

#[test]
fn check_examples() {
    assert!(ok(&["check", "--law", "assoc", "--max-vertices", "3"]).contains("PASS (512 tuples"));
    assert!(ok(&["check", "--law", "rb", "--max-vertices", "4"]).contains("PASS (484 tuples"));
    let json = ok(&[
        "check",
        "--law",
        "decorated_rb",
        "--max-vertices",
        "2",
        "--alphabet",
        "x,y",
        "--json",
    ]);
    assert!(json.starts_with(r#"{"law":"decorated_rb""#));
    assert_eq!(run(&["check", "--law", "nonsense"]).0, 3);
    assert_eq!(
        run(&["check", "--law", "morphism", "--max-vertices", "2"]).0,
        3
    );
}

#[test]
fn map_examples() {
    assert_eq!(
        ok(&["map", "--target", "scalar", "--lambda", "2", "--assign", "x=3", "{[oo];x}"]),
        "-6"
    );
    assert_eq!(
        ok(&["map", "--target", "scalar", "--lambda", "2", "o"]),
        "1"
    );
    assert_eq!(
        ok(&[
            "map",
            "--target",
            "partial-sum:3",
            "--lambda",
            "1",
            "--assign",
            "x=1,1,1",
            "P({oo;x})"
        ]),
        "(0,1,2)"
    );
    assert_eq!(
        ok(&[
            "map",
            "--target",
            "free",
            "--assign",
            "x={oo;y}",
            "--assign",
            "y=o",
            "{ooo;x,y}"
        ]),
        "{oo;y}"
    );
    assert_eq!(
        ok(&[
            "map",
            "--target",
            "partial-sum:2",
            "--lambda",
            "1/2",
            "--assign",
            "x=2,4",
            "--unitarize",
            "{[oo];x}"
        ]),
        "(0,1)"
    );
}

#[test]
fn map_usage_errors() {
    assert_eq!(
        run(&["map", "--target", "scalar", "--lambda", "2", "{oo;x}"]).0,
        3
    );
    assert_eq!(
        run(&["map", "--target", "partial-sum:x", "--lambda", "1", "o"]).0,
        3
    );
    assert_eq!(run(&["map", "--target", "scalar", "o"]).0, 3);
    assert_eq!(
        run(&[
            "map",
            "--target",
            "partial-sum:3",
            "--lambda",
            "1",
            "--assign",
            "x=1,1",
            "{oo;x}"
        ])
        .0,
        3
    );
    assert_eq!(
        run(&[
            "map",
            "--target",
            "scalar",
            "--lambda",
            "1",
            "--unitarize",
            "o"
        ])
        .0,
        3
    );
}

#[test]
fn render_formats() {
    assert_eq!(
        ok(&["render", "--format", "latex", "[o]*o"]),
        "\\lfloor \\bullet \\rfloor"
    );
    assert_eq!(
        ok(&["render", "--format", "ascii", "--raw", "P(o)*[o]"]),
        "P(o)*[o]"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["eval", "[oo"]).0, 1);
    assert_eq!(run(&["eval", "{ooo;x}"]).0, 1);
    assert_eq!(run(&["eval", "--lambda", "abc", "o"]).0, 3);
    assert_eq!(run(&["frobnicate"]).0, 3);
    assert_eq!(run(&["enumerate", "--vertices", "0"]).0, 3);
    assert_eq!(
        run(&["enumerate", "--vertices", "3", "--trees", "--forests"]).0,
        3
    );
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "check",
        "--law",
        "decorated_assoc",
        "--max-vertices",
        "2",
        "--alphabet",
        "x,y",
        "--json",
    ];
    assert_eq!(ok(&args), ok(&args));
}
