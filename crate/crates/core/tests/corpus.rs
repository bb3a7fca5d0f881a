use std::path::{Path, PathBuf};

use schemata::frontend::*;
use schemata::kernel::CheckOptions;
use schemata::schema::{check_schema, evaluate_and_check};
use schemata::silk::{check_script, Verdict};
use schemata::translate::{is_ppsnf, silk_to_schema, to_ppsnf};

fn corpus() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
}

/// Unrolled proofs recurse deeply; run on a large stack.
fn big(f: impl FnOnce() + Send + 'static) {
    std::thread::Builder::new().stack_size(256 << 20).spawn(f).unwrap().join().unwrap();
}

fn load(p: &Path) -> Workspace {
    Workspace::load(p, None, None, false).unwrap_or_else(|e| panic!("{e}"))
}

#[test]
fn every_file_round_trips() {
    big(|| {
        let mut seen = 0;
        for p in corpus() {
            let ws = load(&p);
            let th = &ws.theory;
            match &ws.document {
                Document::Theory => assert_eq!(&parse_theory(&print_theory(th)).unwrap(), th, "{}", p.display()),
                Document::Lk(f) => assert_eq!(&parse_lk(&print_lk(f, th), th).unwrap(), f, "{}", p.display()),
                Document::Schema(f) => {
                    assert_eq!(&parse_schema(&print_schema(f, th), th).unwrap(), f, "{}", p.display())
                }
                Document::Script(f) => {
                    let back = parse_script(&print_script(f, th), th).unwrap();
                    assert_eq!(back.steps, f.steps, "{}", p.display());
                    assert_eq!(back.theory, f.theory);
                }
            }
            seen += 1;
        }
        assert!(seen >= 15, "{seen} corpus files");
    });
}

#[test]
fn every_script_is_a_proof_and_in_normal_form_after_ppsnf() {
    big(|| {
        let mut scripts = 0;
        for p in corpus() {
            let ws = load(&p);
            let Document::Script(f) = &ws.document else { continue };
            scripts += 1;
            let out = check_script(&f.steps, &ws.theory, ws.options);
            assert_eq!(out.verdict, Verdict::Proof, "{}: {:?}", p.display(), out.report.failures);
            let n = to_ppsnf(&f.steps, &ws.theory, ws.options).unwrap();
            assert!(is_ppsnf(&n, &ws.theory, ws.options).unwrap());
            assert_eq!(to_ppsnf(&n, &ws.theory, ws.options).unwrap(), n, "{}", p.display());
        }
        assert!(scripts >= 6);
    });
}

#[test]
fn every_schema_file_checks() {
    big(|| {
        for p in corpus() {
            let ws = load(&p);
            let Document::Schema(f) = &ws.document else { continue };
            let r = check_schema(&f.schema, &ws.theory, CheckOptions::default());
            assert!(r.accepted(), "{}: {:?}", p.display(), r.failures);
            for alpha in 0..=6 {
                assert!(
                    evaluate_and_check(&f.schema, alpha, &ws.theory, ws.options).0.accepted(),
                    "{} at {alpha}",
                    p.display()
                );
            }
        }
    });
}

#[test]
fn translated_schemata_print_and_reparse() {
    big(|| {
        for p in corpus() {
            let ws = load(&p);
            let Document::Script(f) = &ws.document else { continue };
            let schema = silk_to_schema(&f.steps, &ws.theory, ws.options).unwrap();
            let file = SchemaFile { theory: f.theory.clone(), schema };
            let text = print_schema(&file, &ws.theory);
            assert_eq!(parse_schema(&text, &ws.theory).unwrap(), file, "{}", p.display());
        }
    });
}
