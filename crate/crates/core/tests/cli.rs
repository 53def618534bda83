use std::path::PathBuf;
use std::process::{Command, Output};

use toric_vsit::ample::AmpleCone;
use toric_vsit::cli::render_scene;
use toric_vsit::divisor::picard_basis;
use toric_vsit::fan::parse_fan;
use toric_vsit::instability::PotentialTable;
use toric_vsit::render::PlotScene;
use toric_vsit::walls::WallAtlas;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-vsit"))
        .args(args)
        .env("TORIC_VSIT_SEED", "7")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn walls_on_p1xp1() {
    let text = stdout(&["walls", &fixture("p1xp1.json"), "--base-cone", "2"]);
    assert!(text.contains("type one walls (0):"), "{text}");
    assert!(text.contains("type two walls (1):"), "{text}");
    assert!(text.contains("-1/2*a0^2 + 1/2*a2^2"), "{text}");
}

#[test]
fn stratify_area_one_chain() {
    let p = fixture("bl_pt_p2.json");
    let text = stdout(&["stratify", &p, "--base-cone", "2", "--divisor", "7,2"]);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 4, "{text}");
    assert!(rows[0].contains("[[], [1]]  norm2 82/5"), "{text}");
    assert!(rows[1].contains("[[1, 3], [3]]  norm2 25/3"), "{text}");
    assert!(rows[2].contains("[[0], [0, 2], [2]]  norm2 2"), "{text}");
    assert!(rows[3].trim_start().ends_with("ss"), "{text}");
}

#[test]
fn exit_codes() {
    let p = fixture("bl_pt_p2.json");
    let not_ample = run(&["stratify", &p, "--base-cone", "2", "--divisor", "0,0"]);
    assert_eq!(not_ample.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&not_ample.stderr).contains("ample"));

    let bad_number = run(&["stratify", &p, "--base-cone", "2", "--divisor", "1,x"]);
    assert_eq!(bad_number.status.code(), Some(2));

    let no_base = run(&["stratify", &p, "--divisor", "7,2"]);
    assert_eq!(no_base.status.code(), Some(2));

    let wrong_arity = run(&["stratify", &p, "--base-cone", "2", "--divisor", "7,2,1"]);
    assert_eq!(wrong_arity.status.code(), Some(2));

    let coarse = run(&["plot", &p, "--resolution", "8"]);
    assert_eq!(coarse.status.code(), Some(2));

    let missing = run(&["ample", &fixture("missing.json")]);
    assert_ne!(missing.status.code(), Some(0));
}

#[test]
fn cube_base_cone_is_not_cartier() {
    let out = run(&["ample", &fixture("cube.json"), "--base-cone", "0"]);
    assert_eq!(
        out.status.code(),
        Some(1),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn every_subcommand_runs() {
    let blp2 = fixture("bl_pt_p2.json");
    let hirz = fixture("bl_pt_hirzebruch.json");
    let (p2, p2w) = (fixture("p2.json"), fixture("p2_weighted.json"));
    for args in [
        vec!["ample", blp2.as_str()],
        vec!["primitives", hirz.as_str()],
        vec!["potentials", blp2.as_str(), "--base-cone", "2"],
        vec!["walls", hirz.as_str(), "--base-cone", "0", "--probe", "50"],
        vec![
            "compare",
            blp2.as_str(),
            "--base-cone",
            "2",
            "--divisor",
            "7,2",
            "--divisor2",
            "7,3",
        ],
        vec!["equiv", p2.as_str(), "--fan2", p2w.as_str()],
        vec!["plot", blp2.as_str(), "--resolution", "64"],
        vec![
            "stratify",
            blp2.as_str(),
            "--base-cone",
            "2",
            "--divisor",
            "3,2",
            "--format",
            "dot",
        ],
    ] {
        assert!(!stdout(&args).is_empty(), "{args:?}");
    }
}

#[test]
fn json_uses_rational_strings() {
    let p = fixture("bl_pt_p2.json");
    let text = stdout(&[
        "stratify",
        &p,
        "--base-cone",
        "2",
        "--divisor",
        "7,2",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let s = v.to_string();
    assert!(s.contains("\"82/5\""), "{s}");
    assert!(!s.contains("e-"), "floating point leaked: {s}");
}

#[test]
fn output_is_deterministic() {
    let h = fixture("bl_pt_hirzebruch.json");
    let args = [
        "plot",
        h.as_str(),
        "--slice",
        "1,0,1=1",
        "--resolution",
        "128",
    ];
    assert_eq!(stdout(&args), stdout(&args));
    let probe = ["walls", h.as_str(), "--probe", "40"];
    assert_eq!(stdout(&probe), stdout(&probe));
}

#[test]
fn empty_curve_list_draws_region_only() {
    let fan = parse_fan(include_str!("../fixtures/bl_pt_p2.json")).unwrap();
    let table = PotentialTable::build(&fan).unwrap();
    let cone = AmpleCone::new(&fan, picard_basis(&fan, 2).unwrap()).unwrap();
    let atlas = WallAtlas::build(&table, &cone);
    let mut scene = PlotScene::build(&atlas, &cone, None, 32).unwrap();
    assert!(render_scene(&scene).contains("<path"));
    scene.curves.clear();
    let svg = render_scene(&scene);
    assert!(svg.contains("class=\"ample\""));
    assert!(!svg.contains("<path"));
}
