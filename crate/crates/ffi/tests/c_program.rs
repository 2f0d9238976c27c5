//! Compiles a C program against the generated header and the static
//! library, then runs it.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "diffnet.h"

int main(void) {
    DnNetwork *star = NULL, *cycle = NULL;
    uint32_t src[] = {0, 0, 0}, dst[] = {1, 2, 3};
    if (dn_network_from_edges(4, src, dst, 3, &star) != DN_STATUS_OK) return 1;
    if (dn_network_from_edge_list("a b\nb c\nc a\n", &cycle) != DN_STATUS_OK) return 2;
    double f[DN_FEATURE_COUNT];
    if (dn_features(star, f) != DN_STATUS_OK) return 3;
    double pd = -1.0, d = -1.0;
    if (dn_portrait_divergence(star, cycle, 0, &pd) != DN_STATUS_OK) return 4;
    if (dn_dgcd13(star, cycle, &d) != DN_STATUS_OK) return 5;
    DnNetwork *bad = NULL;
    if (dn_network_from_edge_list("x x\n", &bad) != DN_STATUS_PARSE) return 6;
    if (dn_last_error() == NULL || strstr(dn_last_error(), "self-loop") == NULL) return 7;
    printf("scc=%g lscc=%g wcc=%g lwcc=%g dwcc=%g kc=%g pd_ok=%d\n", f[0], f[1], f[2], f[3], f[4], f[6], pd > 0.0 && pd <= 1.0);
    dn_network_free(star);
    dn_network_free(cycle);
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // Test binaries live in target/<profile>/deps; the library one level up.
    let exe = std::env::current_exe().unwrap();
    let lib_dir = exe.parent().unwrap().parent().unwrap();
    let lib = lib_dir.join("libdiffnet_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());

    let work = tempfile::tempdir().unwrap();
    let source = work.path().join("main.c");
    std::fs::write(&source, PROGRAM).unwrap();
    let binary = work.path().join("main");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg(format!("-I{}", crate_dir.join("include").display()))
        .arg(&source)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&binary)
        .status()
        .expect("a C compiler on PATH");
    assert!(status.success());

    let out = Command::new(&binary).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        "scc=4 lscc=1 wcc=1 lwcc=4 dwcc=2 kc=1 pd_ok=1"
    );
}
