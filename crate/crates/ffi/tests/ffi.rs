use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use branchwidth_ffi::*;

const PETERSEN: &str = include_str!("../../core/tests/data/named/petersen.gr");

fn parse(text: &str, format: BwFormat) -> (BwStatus, *mut BwGraph) {
    let text = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    let status = unsafe { bw_graph_parse(text.as_ptr(), format, &mut g) };
    (status, g)
}

fn last_error() -> Option<String> {
    let p = bw_last_error_message();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

fn solve(g: *const BwGraph, alg: BwAlgorithm) -> (BwStatus, usize) {
    let mut w = usize::MAX;
    let status = unsafe { bw_solve(g, alg, -1.0, &mut w) };
    (status, w)
}

#[test]
fn petersen_width_for_every_algorithm() {
    let (status, g) = parse(PETERSEN, BwFormat::Gr);
    assert_eq!(status, BwStatus::Ok);
    unsafe {
        assert_eq!(bw_graph_vertex_count(g), 10);
        assert_eq!(bw_graph_edge_count(g), 15);
    }
    for alg in [BwAlgorithm::Hyper, BwAlgorithm::Blocks, BwAlgorithm::Root, BwAlgorithm::Oracle] {
        assert_eq!(solve(g, alg), (BwStatus::Ok, 4), "{alg:?}");
        for (k, want) in [(3, false), (4, true)] {
            let mut yes = !want;
            assert_eq!(unsafe { bw_decide(g, alg, k, -1.0, &mut yes) }, BwStatus::Ok);
            assert_eq!(yes, want, "{alg:?} k={k}");
        }
    }
    unsafe { bw_graph_free(g) };
}

#[test]
fn hypergraph_from_edges_and_decomposition_round_trip() {
    // Edges {0,1,2}, {1,2,3}, {2,3,4}, {0,4}.
    let offsets = [0usize, 3, 6, 9, 11];
    let vertices = [0usize, 1, 2, 1, 2, 3, 2, 3, 4, 0, 4];
    let mut g = ptr::null_mut();
    let status = unsafe { bw_graph_from_edges(5, 4, offsets.as_ptr(), vertices.as_ptr(), &mut g) };
    assert_eq!(status, BwStatus::Ok);
    let (_, oracle) = solve(g, BwAlgorithm::Oracle);
    for alg in [BwAlgorithm::Hyper, BwAlgorithm::Blocks, BwAlgorithm::Root] {
        let mut width = 0;
        let mut text: *mut c_char = ptr::null_mut();
        let status = unsafe { bw_solve_decomposition(g, alg, -1.0, &mut width, &mut text) };
        assert_eq!(status, BwStatus::Ok, "{alg:?}: {:?}", last_error());
        assert_eq!(width, oracle);
        let mut checked = 0;
        assert_eq!(unsafe { bw_check_decomposition(g, text, width, &mut checked) }, BwStatus::Ok);
        assert_eq!(checked, width);
        if width > 0 {
            let status = unsafe { bw_check_decomposition(g, text, width - 1, &mut checked) };
            assert_eq!(status, BwStatus::Invariant);
        }
        unsafe { bw_string_free(text) };
    }
    unsafe { bw_graph_free(g) };
}

#[test]
fn errors_map_to_status_codes() {
    let (status, g) = parse("p tw 2 1\n1 3\n", BwFormat::Gr);
    assert_eq!(status, BwStatus::Parse);
    assert!(g.is_null());
    assert!(last_error().unwrap().contains("line"));

    let (status, g) = parse(PETERSEN, BwFormat::Gr);
    assert_eq!(status, BwStatus::Ok);
    assert!(last_error().is_none());
    let mut w = 0;
    assert_eq!(unsafe { bw_solve(g, BwAlgorithm::Blocks, 0.0, &mut w) }, BwStatus::Timeout);
    assert_eq!(unsafe { bw_solve(g, BwAlgorithm::Blocks, -1.0, ptr::null_mut()) }, BwStatus::NullPointer);
    assert_eq!(unsafe { bw_solve(ptr::null(), BwAlgorithm::Blocks, -1.0, &mut w) }, BwStatus::NullPointer);
    unsafe { bw_graph_free(g) };

    let mut g = ptr::null_mut();
    let offsets = [0usize, 2, 1];
    let status = unsafe { bw_graph_from_edges(3, 2, offsets.as_ptr(), [0usize, 1].as_ptr(), &mut g) };
    assert_eq!(status, BwStatus::InvalidArgument);

    let offsets = [0usize, 2];
    let status = unsafe { bw_graph_from_edges(3, 1, offsets.as_ptr(), [0usize, 5].as_ptr(), &mut g) };
    assert_eq!(status, BwStatus::InvalidInput, "{:?}", last_error());

    let name = unsafe { CStr::from_ptr(bw_status_name(BwStatus::Timeout)) };
    assert_eq!(name.to_str().unwrap(), "timeout");
    unsafe {
        bw_graph_free(ptr::null_mut());
        bw_string_free(ptr::null_mut());
        assert_eq!(bw_graph_edge_count(ptr::null()), 0);
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/branchwidth.h")).unwrap();
    for name in [
        "bw_graph_parse",
        "bw_graph_from_edges",
        "bw_graph_free",
        "bw_graph_vertex_count",
        "bw_graph_edge_count",
        "bw_solve",
        "bw_decide",
        "bw_solve_decomposition",
        "bw_check_decomposition",
        "bw_string_free",
        "bw_last_error_message",
        "bw_status_name",
        "typedef struct BwGraph BwGraph",
        "BW_STATUS_TIMEOUT = 7",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

/// Compiles the C smoke program against the header and the static library.
#[test]
fn c_program_links_and_runs() {
    let Ok(exe) = std::env::current_exe() else { return };
    // target/<profile>/deps/<test> -> target/<profile>
    let profile_dir: PathBuf = exe.parent().and_then(Path::parent).unwrap().to_path_buf();
    let lib = profile_dir.join("libbranchwidth_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists() || Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: static library or C compiler not available");
        return;
    }
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let out = Path::new(env!("CARGO_TARGET_TMPDIR")).join("bw_ffi_smoke");
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "smoke program exited with {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
