use std::path::Path;
use std::process::{Command, Output};

fn tiltlab(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tiltlab")).args(args).env("TILTLAB_CACHE", cache).output().unwrap()
}

fn run(args: &str) -> (i32, String, String) {
    let dir = tempfile::tempdir().unwrap();
    let out = tiltlab(&args.split_whitespace().collect::<Vec<_>>(), dir.path());
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn mullineux_image() {
    assert_eq!(run("mullineux --p 3 --partition 8,4"), (0, "4,4,2,2\n".into(), String::new()));
}

#[test]
fn mullineux_rejects_singular() {
    assert_eq!(run("mullineux --p 3 --partition 4,4,4"), (1, String::new(), "error: partition 4,4,4 is not 3-regular\n".into()));
}

#[test]
fn tilting_socle_json() {
    let (code, out, _) = run("tilting-socle --p 3 --n 4 --d 6 --partition 3,2,1 --json");
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "{\"mu\":[3,2,1],\"n\":4,\"d\":6,\"p\":3,\"pivot\":[2,1,1,1,1],\"m\":5,\"fastpath_used\":false,\
         \"socle\":[{\"mu\":[2,2,2],\"mult\":1},{\"mu\":[3,1,1,1],\"mult\":1}]}\n"
    );
}

#[test]
fn tilting_socle_text() {
    assert_eq!(run("tilting-socle --p 3 --n 3 --d 12 --partition 8,4").1, "soc T(8,4) over S(3,12) = L(4,4,4)\n");
    assert_eq!(run("tilting-socle --p 3 --n 3 --d 5 --partition 5").1, "soc T(5) over S(3,5) = L(2,2,1)\n");
}

#[test]
fn bridge_conversions() {
    assert_eq!(run("bridge --weight 1,1,1").1, "weight 1,1,1\npartition 3,2,1\n");
    assert_eq!(run("bridge --weight 0,0 --p 3").1, "weight 0,0\npartition 0\nhat 8,4\npivot 4,4,2,2\n");
    assert_eq!(run("bridge --partition 2,2,1 --n 3 --json").1, "{\"weight\":[0,1],\"partition\":[2,2,1]}\n");
}

#[test]
fn tmc_rank_two() {
    let (code, out, _) = run("tmc --p 3 --rank 2");
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "(0): holds (d = 4, hat 4, pivot 2,2, m = 2)\n\
         (1): holds (d = 5, hat 4,1, pivot 3,2, m = 2)\n\
         (2): holds (d = 6, hat 4,2, pivot 4,2, m = 2)\n\
         SL_2, p = 3: 3 of 3 weights hold, 0 skipped\n"
    );
}

#[test]
fn premet_and_andersen_haboush() {
    let (code, out, _) = run("premet --p 3 --max-lambda 5 --direct");
    assert_eq!(code, 0);
    assert!(out.ends_with("4: indecomposable (confirmed)\n5: decomposable (confirmed)\n"));
    assert_eq!(
        run("andersen-haboush --p 3 --r 1 --rank 3 --gamma 1,0").1,
        "identity holds\nweight (5,2) = partition (7,2,0), d = 9: 3 summands isomorphic to St_1\n"
    );
}

#[test]
fn decnums_text() {
    assert_eq!(run("decnums --p 2 --n 2 --d 4").1, "4: (4) (3,1) (2,2)\n3,1: (3,1) (2,2)\n2,2: (2,2)\n");
}

#[test]
fn exit_codes() {
    assert_eq!(run("mullineux --p 3").0, 64);
    assert_eq!(run("mullineux --p 3 --partition 2 --bogus").0, 64);
    assert_eq!(run("frobnicate").0, 64);
    assert_eq!(run("--help").0, 0);
    assert_eq!(run("decnums --p 3 --n 2 --d 19").0, 2);
    assert_eq!(run("mullineux --p 4 --partition 2").0, 1);
    assert_eq!(run("tmc --p 3 --rank 3 --weight 0,0,0").0, 1);
}

#[test]
fn cache_does_not_change_answers() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["decnums", "--p", "3", "--n", "3", "--d", "9", "--json"];
    let cold = tiltlab(&args, dir.path());
    assert!(dir.path().join("decnum_n3_d9_p3.json").exists());
    let warm = tiltlab(&args, dir.path());
    let off = tiltlab(&[&["--no-cache"], &args[..]].concat(), dir.path());
    assert!(cold.status.success());
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, off.stdout);
    std::fs::write(dir.path().join("decnum_n3_d9_p3.json"), "{").unwrap();
    assert_eq!(tiltlab(&args, dir.path()).stdout, cold.stdout);
}

#[test]
fn appendix_differs_in_two_entries() {
    let (code, out, err) = run("reproduce-appendix");
    assert_eq!(code, 1);
    assert_eq!(err, "error: 2 of 19 entries differ from the fixture\n");
    let bad: Vec<&str> = out.lines().filter(|l| l.ends_with("MISMATCH")).collect();
    assert_eq!(bad, ["9,2,1: MISMATCH", "7,4,1: MISMATCH"]);
    assert_eq!(out.lines().filter(|l| l.ends_with(": ok")).count(), 17);
}
