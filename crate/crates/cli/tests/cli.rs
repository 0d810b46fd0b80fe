use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use rlindex::{corpus, oracle, PackedText};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rlindex"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn rlindex")
}

fn run_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn rlindex");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stat(out: &str, key: &str) -> u64 {
    out.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} ")))
        .unwrap_or_else(|| panic!("no {key} in {out}"))
        .parse()
        .unwrap()
}

fn write(dir: &Path, name: &str, data: &[u8]) -> String {
    let p = dir.join(name);
    fs::write(&p, data).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn lz77_zip_example() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "z.txt", b"zzzzzipzip");
    let out = stdout(&run(&["lz77", &input, "-", "--verify"]));
    assert_eq!(out, "L z\nC 1 4\nL i\nL p\nC 5 3\n");
    let bin_out = dir.path().join("z.lz77");
    stdout(&run(&["lz77", &input, bin_out.to_str().unwrap(), "--format", "binary"]));
    let data = fs::read(&bin_out).unwrap();
    assert_eq!(&data[..4], b"LZ77");
    assert_eq!(u64::from_le_bytes(data[4..12].try_into().unwrap()), 5);
}

#[test]
fn stats_unary() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "a", &[b'a'; 100]);
    let out = stdout(&run(&["stats", &input, "--verify"]));
    assert_eq!(stat(&out, "r"), 2);
    assert_eq!(stat(&out, "n"), 101);
    assert_eq!(stat(&out, "z"), 2);
    assert_eq!(stat(&out, "m"), 1);
}

#[test]
fn fibonacci_pipeline() {
    let generated = run(&["gen", "fib", "--order", "20"]);
    let text = stdout(&generated);
    assert!(text.starts_with("# fib order 20\n10946 256\n"));
    let out = stdout(&run_stdin(&["stats", "-"], text.as_bytes()));
    let t = PackedText::from_bytes(&corpus::fibonacci(20), 1).unwrap();
    let r = oracle::count_runs(&oracle::rotation_bwt(&t.codes()));
    assert_eq!(stat(&out, "r"), r as u64);
    assert_eq!(stat(&out, "sigma"), 2);
}

#[test]
fn gen_repeat_is_seeded() {
    let args = ["gen", "repeat", "--block", "40", "--copies", "5", "--mut-rate", "0.05", "--seed", "9", "--bytes"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout.len(), 200);
    let ints = stdout(&run(&["gen", "repeat", "--block", "4", "--copies", "2", "--seed", "9"]));
    assert!(ints.lines().next().unwrap().contains("seed 9"));
}

#[test]
fn rlcsa_build_and_query() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "banana", b"banana");
    let idx = dir.path().join("banana.rcsa");
    let idx = idx.to_str().unwrap();
    run(&["rlcsa", "build", &input, idx, "--fanout", "2", "--verify"]);
    assert_eq!(stdout(&run(&["rlcsa", "query-sa", idx, "4", "1"])), "2\n7\n");
    assert_eq!(stdout(&run(&["rlcsa", "query-segment", idx, "3", "3"])), "4 2 1\n");
    let bad = run(&["rlcsa", "query-sa", idx, "8"]);
    assert!(!bad.status.success());
    assert!(String::from_utf8_lossy(&bad.stderr).contains("out of range"));
}

#[test]
fn textbook_and_lyndon_commands() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "banana", b"banana");
    assert_eq!(stdout(&run(&["distinct", &input, "--verify"])), "15\n");
    assert_eq!(stdout(&run(&["longest-k", &input, "--k", "2", "--verify"])), "3\n");
    assert_eq!(stdout(&run(&["longest-k", &input, "--k", "3", "--dense-fallback"])), "1\n");
    assert!(!run(&["longest-k", &input, "--k", "1"]).status.success());
    assert_eq!(stdout(&run(&["lyndon", &input, "-", "--verify"])), "1 1 1\n2 2 2\n6 1 1\n");
}

#[test]
fn bwt_and_plcp_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "banana", b"banana");
    let bwt = dir.path().join("b.rlbwt");
    stdout(&run(&["bwt", &input, bwt.to_str().unwrap(), "--verify"]));
    let back = rlindex::Rlbwt::read_from(&mut fs::read(&bwt).unwrap().as_slice()).unwrap();
    assert_eq!(back.decompress(), vec![1, 3, 3, 2, 0, 1, 1]);
    let plcp = dir.path().join("b.plcp");
    stdout(&run(&["plcp", &input, plcp.to_str().unwrap(), "--verify", "--tau2", "2"]));
    let succ = rlindex::plcp::PlcpSucc::read_from(&mut fs::read(&plcp).unwrap().as_slice()).unwrap();
    assert_eq!(succ.decode(), vec![0, 3, 2, 1, 0, 0, 0]);
}

#[test]
fn integer_input_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    // banana as integers
    let input = write(dir.path(), "ints", b"# comment\n6 3\n1\n0\n2\n0\n2\n0\n");
    assert_eq!(stdout(&run(&["distinct", &input])), "15\n");
    let forced = stdout(&run(&["distinct", &input, "--input-format", "bytes"]));
    assert_ne!(forced, "15\n");
    let empty = write(dir.path(), "empty", b"");
    assert!(!run(&["stats", &empty]).status.success());
    assert!(!run(&["stats", "/nonexistent/file"]).status.success());
}
