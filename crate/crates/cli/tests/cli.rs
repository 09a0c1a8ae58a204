use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sdrep_cli::repfile;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn sdrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdrep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn info_sizes(path: &Path) -> (usize, usize, usize) {
    let o = sdrep(&["info", s(path)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let get = |key: &str| -> usize {
        text.lines()
            .find_map(|l| l.strip_prefix(&format!("{key}: ")))
            .unwrap_or_else(|| panic!("no {key} in {text}"))
            .parse()
            .unwrap()
    };
    (get("k"), get("n"), get("m"))
}

#[test]
fn bundled_files_are_in_canonical_form() {
    for name in ["hyperbola.rep", "origin.rep", "convhull.rep"] {
        let text = std::fs::read_to_string(data(name)).unwrap();
        let f = repfile::parse(&text).unwrap();
        assert_eq!(repfile::to_text(&f), text, "{name}");
    }
}

#[test]
fn conv_union_of_bundled_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("hull.rep");
    let o = sdrep(&[
        "compose",
        "conv-union",
        s(&data("hyperbola.rep")),
        s(&data("origin.rep")),
        "-o",
        s(&out),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert_eq!(info_sizes(&out), (14, 2, 5));
    // Identical to the bundled copy, provenance included.
    assert_eq!(
        std::fs::read_to_string(&out).unwrap(),
        std::fs::read_to_string(data("convhull.rep")).unwrap()
    );
}

#[test]
fn every_compose_op_writes_a_loadable_file() {
    let dir = tempfile::tempdir().unwrap();
    let h = data("hyperbola.rep");
    let o = data("origin.rep");
    let out = |n: &str| dir.path().join(n);
    type Case = (Vec<String>, PathBuf, (usize, usize, usize));
    let cases: Vec<Case> = vec![
        (
            vec!["cone-hull".into(), s(&h).into()],
            out("cone.rep"),
            (6, 2, 2),
        ),
        (
            vec!["homogenize".into(), s(&h).into()],
            out("hom.rep"),
            (6, 3, 1),
        ),
        (
            vec!["intersect".into(), s(&h).into(), s(&o).into()],
            out("int.rep"),
            (6, 2, 0),
        ),
        (
            vec!["minkowski".into(), s(&h).into(), s(&o).into()],
            out("mink.rep"),
            (6, 2, 2),
        ),
        (
            vec!["product".into(), s(&h).into(), s(&o).into()],
            out("prod.rep"),
            (6, 4, 0),
        ),
        (
            vec!["conv-union".into(), s(&h).into()],
            out("cu1.rep"),
            (6, 2, 1),
        ),
    ];
    for (args, path, sizes) in cases {
        let mut full: Vec<&str> = vec!["compose"];
        full.extend(args.iter().map(String::as_str));
        full.extend(["-o", s(&path)]);
        let r = sdrep(&full);
        assert_eq!(
            r.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&r.stderr)
        );
        assert_eq!(info_sizes(&path), sizes, "{args:?}");
        let f = repfile::load(&path).unwrap();
        assert!(f.provenance.last().unwrap().contains("hyperbola.rep"));
    }
    let hom = out("hom.rep");
    let sliced = out("slice.rep");
    assert_eq!(
        sdrep(&["compose", "slice", s(&hom), "-o", s(&sliced)])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(info_sizes(&sliced), (6, 2, 1));
}

#[test]
fn member_exit_codes() {
    let h = data("hyperbola.rep");
    let inside = sdrep(&["member", s(&h), "--point", "2,1"]);
    assert_eq!(inside.status.code(), Some(0));
    assert!(stdout(&inside).contains("status: StrictlyFeasible"));
    let outside = sdrep(&["member", s(&h), "--point", "-1,-1"]);
    assert_eq!(outside.status.code(), Some(2));
    assert!(stdout(&outside).contains("status: EpsInfeasible"));
    let hull = data("convhull.rep");
    let edge = sdrep(&["member", s(&hull), "--point", "1,1"]);
    assert_eq!(edge.status.code(), Some(0));
    assert!(stdout(&edge).contains("status: EpsFeasible"));
}

#[test]
fn usage_and_input_errors_exit_one() {
    let h = data("hyperbola.rep");
    assert_eq!(sdrep(&[]).status.code(), Some(1));
    assert_eq!(sdrep(&["member", s(&h)]).status.code(), Some(1));
    assert_eq!(
        sdrep(&["member", s(&h), "--point", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        sdrep(&["member", s(&h), "--point", "1,1", "--tol", "0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(sdrep(&["info", "/nonexistent.rep"]).status.code(), Some(1));
    assert_eq!(sdrep(&["--version"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.rep");
    std::fs::write(
        &bad,
        "format_version = 1\nk = 2\nn = 1\nm = 0\nA = [[1.0]]\nB = [[[1.0, 0.0], [0.0, 1.0]]]\n",
    )
    .unwrap();
    let r = sdrep(&["info", s(&bad)]);
    assert_eq!(r.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&r.stderr).contains("\"A\""));
}

#[test]
fn export_sdpa_block_structure() {
    let dir = tempfile::tempdir().unwrap();
    let cone = dir.path().join("cone.rep");
    let h = data("hyperbola.rep");
    sdrep(&["compose", "cone-hull", s(&h), "-o", s(&cone)]);
    let out = dir.path().join("cone.dat-s");
    let r = sdrep(&["export-sdpa", s(&cone), "--point", "1,-1", "-o", s(&out)]);
    assert_eq!(r.status.code(), Some(0));
    let p = sdrep_cli::sdpa::parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
    // One block from the input plus one 2×2 block per ambient coordinate.
    assert_eq!(p.block_sizes, vec![2, 2, 2]);
    assert_eq!(p.num_vars, 3);
}

#[test]
fn rasterize_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.pgm");
    let b = dir.path().join("b.pgm");
    let h = data("hyperbola.rep");
    for out in [&a, &b] {
        let r = sdrep(&[
            "rasterize",
            s(&h),
            "--xrange",
            "-1:3",
            "--yrange",
            "-1:3",
            "--res",
            "16",
            "-o",
            s(out),
        ]);
        assert_eq!(r.status.code(), Some(0));
    }
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    let header = b"P5\n16 16\n255\n";
    assert_eq!(&bytes[..header.len()], header);
    let px = &bytes[header.len()..];
    assert_eq!(px.len(), 256);
    // Top-right (x, y near 3) is inside; bottom-left (near −1) is not.
    assert!(px[15] > 128);
    assert!(px[240] < 128);
}

#[test]
fn sample_prints_members() {
    let h = data("hyperbola.rep");
    let r = sdrep(&[
        "sample",
        s(&h),
        "--count",
        "5",
        "--box",
        "0:4,0:4",
        "--seed",
        "3",
    ]);
    assert_eq!(r.status.code(), Some(0));
    let text = stdout(&r);
    let pts: Vec<Vec<f64>> = text
        .lines()
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(pts.len(), 5);
    for p in pts {
        assert!(
            p[0] * p[1] >= 1.0 - 1e-6 && p[0] >= 0.0 && p[1] >= 0.0,
            "{p:?}"
        );
    }
    assert_eq!(
        stdout(&sdrep(&[
            "sample",
            s(&h),
            "--count",
            "5",
            "--box",
            "0:4,0:4",
            "--seed",
            "3"
        ])),
        text
    );
}
