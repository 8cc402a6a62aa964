//! The generated header compiles as C, and a C program linked against the
//! static library gets the same answers as the Rust API.

use std::path::{Path, PathBuf};
use std::process::Command;

fn header_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include")
}

/// `target/<profile>`, derived from this test binary's location in `deps/`.
fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_declares_the_api() {
    let text = std::fs::read_to_string(header_dir().join("gbs_ffi.h")).unwrap();
    for name in [
        "gbs_last_error",
        "gbs_string_free",
        "gbs_graph_from_json",
        "gbs_graph_free",
        "gbs_graph_reduce",
        "gbs_graph_to_json",
        "gbs_graph_classify",
        "gbs_primes_parse",
        "gbs_primes_free",
        "gbs_residual",
        "gbs_conjsep",
        "gbs_bs_are_conjugate",
        "gbs_h_are_conjugate",
        "gbs_in_xi",
        "gbs_fusion_witness",
        "typedef struct GbsGraph GbsGraph",
        "typedef struct GbsPrimeSet GbsPrimeSet",
        "GBS_STATUS_OK = 0",
        "GBS_ANSWER_UNKNOWN = 2",
    ] {
        assert!(text.contains(name), "missing {name}");
    }
}

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "gbs_ffi.h"

int main(void) {
    const char *json = "{\"vertices\":[\"v\"],\"edges\":[{\"id\":\"t\",\"from\":\"v\",\"to\":\"v\",\"label_from\":1,\"label_to\":2}]}";
    GbsGraph *g = NULL;
    GbsPrimeSet *all = NULL, *some = NULL;
    enum GbsAnswer a1, a2;
    bool conj = false;
    if (gbs_graph_from_json(json, &g) != GBS_STATUS_OK) return 10;
    if (gbs_primes_parse("all", &all) != GBS_STATUS_OK) return 11;
    if (gbs_primes_parse("{2,3}", &some) != GBS_STATUS_OK) return 12;
    if (gbs_conjsep(g, all, 1000, &a1, NULL) != GBS_STATUS_OK) return 13;
    if (gbs_conjsep(g, some, 1000, &a2, NULL) != GBS_STATUS_OK) return 14;
    if (gbs_bs_are_conjugate(-1, "t^2 a", "t^2 a^-1", &conj) != GBS_STATUS_OK) return 15;
    if (gbs_primes_parse("{2,", &some) != GBS_STATUS_PARSE) return 16;
    printf("%d %d %d %d\n", (int)a1, (int)a2, (int)conj, strlen(gbs_last_error()) > 0);
    gbs_primes_free(all);
    gbs_primes_free(some);
    gbs_graph_free(g);
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let exe = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let lib = profile_dir().join("libgbs_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(header_dir())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("cc not available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0 1 1 1\n");
}
