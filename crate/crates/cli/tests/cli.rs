use std::path::Path;
use std::process::{Command, Output};

fn compclust(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_compclust")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Output lines that are not `#` headers.
fn body(o: &Output) -> Vec<String> {
    stdout(o).lines().filter(|l| !l.starts_with('#')).map(String::from).collect()
}

fn kronecker(dir: &Path) -> String {
    let p = dir.join("kronecker.q");
    std::fs::write(&p, "# two arrows\nvertices 2\narrow 1 2\narrow 1 2\n").unwrap();
    p.display().to_string()
}

#[test]
fn delta_and_decompose_on_kronecker() {
    let dir = tempfile::tempdir().unwrap();
    let kr = kronecker(dir.path());
    let o = compclust(&["--quiver", &kr, "delta"]);
    assert!(o.status.success());
    assert_eq!(body(&o), ["(1,1)"]);
    let o = compclust(&["--quiver", &kr, "decompose", "2,2"]);
    assert_eq!(body(&o), ["(1,1) + (1,1)"]);
    let o = compclust(&["--quiver", &kr, "decompose", "-1,0"]);
    assert_eq!(body(&o), ["-e_1"]);
}

#[test]
fn headers_echo_the_configuration() {
    let dir = tempfile::tempdir().unwrap();
    let kr = kronecker(dir.path());
    let o = compclust(&["--quiver", &kr, "oracle", "ext", "1,2", "1,1", "--prime", "101", "--trials", "4", "--seed", "9"]);
    let out = stdout(&o);
    for line in ["# command: oracle ext", "# quiver: vertices 2; arrow 1 2; arrow 1 2", "# seed: 9", "# prime: 101", "# trials: 4"] {
        assert!(out.contains(line), "missing {line:?} in\n{out}");
    }
    assert!(body(&o).contains(&"agree true".to_string()));
}

#[test]
fn records_format_has_one_record_per_line() {
    let dir = tempfile::tempdir().unwrap();
    let kr = kronecker(dir.path());
    let o = compclust(&["--format", "records", "--quiver", &kr, "clusters", "--cap", "2,3"]);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with("config\tcommand=clusters\t"));
    assert!(lines[1..].iter().all(|l| l.starts_with("cluster\t") || l.starts_with("count\t")));
    assert!(lines.contains(&"cluster\tindex=4\tsize=1\troots=(1,1)"), "{out}");
    assert_eq!(*lines.last().unwrap(), "count\tclusters=7");
}

#[test]
fn mutate_and_exchange_from_cluster_files() {
    let dir = tempfile::tempdir().unwrap();
    let kr = kronecker(dir.path());
    let c1 = dir.path().join("c1");
    let c2 = dir.path().join("c2");
    std::fs::write(&c1, "-e_1\n-e_2  # all negatives\n").unwrap();
    std::fs::write(&c2, "(1,1)\n").unwrap();
    let o = compclust(&["--quiver", &kr, "mutate", "--cluster", c1.to_str().unwrap(), "--remove", "-e_2", "--cap", "2,3"]);
    assert_eq!(body(&o), ["input: {-e_1, -e_2}", "c0 size 2: {(0,1), -e_1}"]);

    // {(1,1)} and {(0,1), (1,2)} share nothing, so any pair is a mutation
    std::fs::write(&c1, "(0,1)\n(1,2)\n").unwrap();
    let o = compclust(&["--quiver", &kr, "exchange", "--c1", c2.to_str().unwrap(), "--c2", c1.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "two roots leave C2, so there is no single exchange pair");
    std::fs::write(&c1, "(1,2)\n(0,1)\n").unwrap();
    let o = compclust(&["--quiver", &kr, "exchange", "--c1", c1.to_str().unwrap(), "--c2", c2.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cc_and_verify_exchange() {
    let dir = tempfile::tempdir().unwrap();
    let kr = kronecker(dir.path());
    let o = compclust(&["--quiver", &kr, "cc", "--dim", "0,1"]);
    assert!(body(&o).contains(&"X = 1 * x1^0 x2^-1 + 1 * x1^2 x2^-1".to_string()), "{}", stdout(&o));
    let o = compclust(&["--quiver", &kr, "verify-exchange", "--beta", "1,2"]);
    assert!(o.status.success());
    let b = body(&o);
    assert!(b.contains(&"beta1 = (2,3)".to_string()) && b.contains(&"beta1' = (0,1)".to_string()));
    assert_eq!(b.last().unwrap(), "holds true");
}

#[test]
fn mutation_graph_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let kr = kronecker(dir.path());
    let dot = dir.path().join("g.dot");
    let o = compclust(&["--quiver", &kr, "mutation-graph", "--cap", "3,4", "--dot", dot.to_str().unwrap()]);
    assert_eq!(body(&o), ["9 clusters, 15 mutations, connected true"]);
    let text = std::fs::read_to_string(dot).unwrap();
    assert!(text.starts_with("graph mutations {\n"));
    assert!(text.contains("[label=\"(1,1)\"]"));
}

#[test]
fn paper_example_reports_both_orientations() {
    for o in ["A", "B"] {
        let out = compclust(&["paper-example", "--orientation", o]);
        assert!(out.status.success());
        assert!(body(&out).contains(&"wild bound 1".to_string()));
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let kr = kronecker(dir.path());
    assert_eq!(compclust(&["--quiver", &kr, "frobnicate"]).status.code(), Some(1));
    assert_eq!(compclust(&["--quiver", &kr, "delta", "--bogus"]).status.code(), Some(1));
    assert_eq!(compclust(&["delta"]).status.code(), Some(1));
    assert_eq!(compclust(&["--quiver", &kr, "schur", "1,2,3"]).status.code(), Some(2));
    assert_eq!(compclust(&["--quiver", "/nonexistent/q", "delta"]).status.code(), Some(2));
    assert_eq!(compclust(&["--quiver", &kr, "decompose", "40,40"]).status.code(), Some(3));
    assert_eq!(compclust(&["--quiver", &kr, "cc", "--dim", "4,4"]).status.code(), Some(3));
    let a3 = dir.path().join("a3.q");
    std::fs::write(&a3, "vertices 3\narrow 1 2\narrow 2 3\n").unwrap();
    assert_eq!(compclust(&["--quiver", a3.to_str().unwrap(), "delta"]).status.code(), Some(2));
    let bad = dir.path().join("bad.q");
    std::fs::write(&bad, "vertices 2\narrow 1 1\n").unwrap();
    let o = compclust(&["--quiver", bad.to_str().unwrap(), "classify"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}
