use std::fs;
use std::path::PathBuf;

use padic_interp_cli::run;

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("padic-interp-{}-{name}", std::process::id()))
}

fn run_to_file(args: &[&str], name: &str) -> (i32, String) {
    let out = tmp(name);
    let mut full: Vec<String> = vec!["padic-interp".into(), "--out".into(), out.display().to_string()];
    full.extend(args.iter().map(|s| s.to_string()));
    let code = run(full);
    let text = fs::read_to_string(&out).unwrap_or_default();
    let _ = fs::remove_file(&out);
    (code, text)
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(["padic-interp", "frobnicate"]), 2);
    assert_eq!(run(["padic-interp", "-p", "4", "verify", "--suite", "ops"]), 2);
    assert_eq!(run(["padic-interp", "-M", "2", "verify", "--suite", "ops"]), 2);
    assert_eq!(run(["padic-interp", "lambda"]), 2);
}

#[test]
fn job_files_reject_unknown_keys_and_missing_files() {
    let path = tmp("bad.json");
    fs::write(&path, r#"{"p": 3, "M": 10, "eta": [], "kappa": [], "z": [], "colour": 1}"#).unwrap();
    assert_eq!(run(["padic-interp", "--config", path.to_str().unwrap(), "lambda"]), 2);
    let _ = fs::remove_file(&path);
    assert_eq!(run(["padic-interp", "--config", "/nonexistent/job.json", "lambda"]), 2);
}

#[test]
fn verify_gauss_passes() {
    let (code, text) = run_to_file(&["-p", "5", "verify", "--suite", "gauss", "--format", "text"], "gauss");
    assert_eq!(code, 0);
    assert!(text.contains("3 of 3 identities hold"), "{text}");
}

#[test]
fn mellin_rows_use_canonical_scalars() {
    let (code, text) =
        run_to_file(&["-p", "5", "-M", "12", "mellin", "--c", "2", "--j", "1", "--format", "csv"], "mellin");
    assert_eq!(code, 0);
    assert_eq!(text, "char;component;value;certified_mod\nx^1;0;val=0 residue=1 mod 5^12;5^12\n");
}

#[test]
fn certify_formats_agree() {
    let args = ["-p", "3", "certify", "--conductor", "4", "--j", "5", "--target", "8", "--format"];
    let (_, csv) = run_to_file(&[&args[..], &["csv"]].concat(), "cert-csv");
    let (_, text) = run_to_file(&[&args[..], &["text"]].concat(), "cert-text");
    let (_, json) = run_to_file(&[&args[..], &["json"]].concat(), "cert-json");
    assert!(csv.contains("p^4*x^5;true;2;1/3;-1/2;"), "{csv}");
    assert_eq!(text.lines().count(), csv.lines().count());
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["certificates"][0]["N"], 2);
    assert_eq!(v["certificates"][0]["slope"], "1/3");
}

#[test]
fn lambda_marks_rows_outside_the_domain() {
    let cfg = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs/trivial_p3.json");
    let (code, text) = run_to_file(&["--config", cfg.to_str().unwrap(), "lambda", "--format", "csv"], "lambda");
    assert_eq!(code, 0);
    assert_eq!(text.lines().filter(|l| l.contains("outside U_D")).count(), 3);
    assert!(text.lines().nth(1).unwrap().ends_with(" mod 3^8;3^8"), "{text}");
}
