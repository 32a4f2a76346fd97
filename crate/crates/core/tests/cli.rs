use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn tangle3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tangle3")).args(args).output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(format!("{}-{name}", std::process::id()))
}

/// Checks the subset of the DOT grammar the exporter emits: an undirected
/// graph of `node [..];` defaults, `vN [..];` statements and `vA -- vB [..];`
/// edges with quoted or bare attribute values. Returns (nodes, edges).
fn parse_dot(text: &str) -> Result<(usize, usize), String> {
    let body = text
        .strip_prefix("graph complex {\n")
        .and_then(|b| b.strip_suffix("}\n"))
        .ok_or("bad header or trailer")?;
    let (mut nodes, mut edges) = (0, 0);
    for line in body.lines() {
        let stmt = line.trim().strip_suffix(';').ok_or(format!("missing ';' in {line}"))?;
        let (head, attrs) = match stmt.find('[') {
            Some(k) => (stmt[..k].trim(), &stmt[k..]),
            None => (stmt, ""),
        };
        if !attrs.is_empty() {
            attr_list(attrs).map_err(|e| format!("{e} in {line}"))?;
        }
        let id = |s: &str| s.strip_prefix('v').is_some_and(|n| !n.is_empty() && n.bytes().all(|b| b.is_ascii_digit()));
        if head == "node" {
            continue;
        } else if let Some((a, b)) = head.split_once(" -- ") {
            if !(id(a) && id(b)) {
                return Err(format!("bad edge {head}"));
            }
            edges += 1;
        } else if id(head) {
            nodes += 1;
        } else {
            return Err(format!("bad statement {line}"));
        }
    }
    Ok((nodes, edges))
}

fn attr_list(s: &str) -> Result<(), String> {
    let inner = s.strip_prefix('[').and_then(|x| x.strip_suffix(']')).ok_or("unbalanced brackets")?;
    let mut rest = inner;
    while !rest.is_empty() {
        let eq = rest.find('=').ok_or("attribute without '='")?;
        let key = rest[..eq].trim();
        if key.is_empty() || !key.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_') {
            return Err(format!("bad key {key:?}"));
        }
        rest = &rest[eq + 1..];
        if let Some(q) = rest.strip_prefix('"') {
            let mut end = None;
            let mut escaped = false;
            for (k, ch) in q.char_indices() {
                match (escaped, ch) {
                    (true, _) => escaped = false,
                    (false, '\\') => escaped = true,
                    (false, '"') => {
                        end = Some(k);
                        break;
                    }
                    _ => {}
                }
            }
            let end = end.ok_or("unterminated string")?;
            rest = &q[end + 1..];
        } else {
            let end = rest.find(',').unwrap_or(rest.len());
            let v = rest[..end].trim();
            if v.is_empty() || !v.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'.') {
                return Err(format!("bad value {v:?}"));
            }
            rest = &rest[end..];
        }
        rest = rest.trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
        } else if !rest.is_empty() {
            return Err("expected ','".into());
        }
    }
    Ok(())
}

#[test]
fn dot_checker_rejects_garbage() {
    assert!(parse_dot("graph complex {\n  v0 [label=\"x];\n}\n").is_err());
    assert!(parse_dot("graph complex {\n  v0 -> v1;\n}\n").is_err());
    assert!(parse_dot("digraph complex {\n}\n").is_err());
    assert_eq!(parse_dot("graph complex {\n  v0;\n  v1;\n  v0 -- v1 [style=dashed];\n}\n"), Ok((2, 1)));
}

#[test]
fn explore_writes_dot_and_json() {
    let (dot, js) = (scratch("ball.dot"), scratch("ball.json"));
    let o = tangle3(&[
        "explore",
        "(2,1,2,-1,2,0)",
        "--radius",
        "4",
        "--dot",
        dot.to_str().unwrap(),
        "--json",
        js.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(parse_dot(&text), Ok((91, 90)));
    let ball: Value = serde_json::from_str(&std::fs::read_to_string(&js).unwrap()).unwrap();
    assert_eq!(ball["vertices"].as_array().unwrap().len(), 91);
    assert_eq!(ball, json(&o));

    // same input, same bytes
    let o2 = tangle3(&["explore", "2,1,2,-1,2,0", "--radius", "4", "--dot", dot.to_str().unwrap()]);
    assert_eq!(o2.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&dot).unwrap(), text);
}

#[test]
fn rep_of_infinity() {
    let o = tangle3(&["rep", "0,0,0,0,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["representative"], serde_json::json!([0, 0, 0, 0, 0, 0]));
    assert_eq!(v["branch"], "INFINITY");
}

#[test]
fn minimize_reports_plateau() {
    let o = tangle3(&["minimize", "2,0,2,0,2,0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v["plateau"].as_array().is_some_and(|p| !p.is_empty()));
    assert_eq!(v["minimal"], serde_json::json!([2, 0, 2, 0, 2, 0]));
}

#[test]
fn exit_codes() {
    assert_eq!(tangle3(&["validate", "(2,0,1,0,1,0)"]).status.code(), Some(2));
    assert_eq!(tangle3(&["validate", "2,0,2"]).status.code(), Some(2));
    assert_eq!(tangle3(&["validate", "{\"p\":[2,2,2],\"q\":[0,0,0],\"x\":1}"]).status.code(), Some(2));
    assert_eq!(tangle3(&["equiv", "2,0,2,0,2,0", "2,0,2,0,2,0"]).status.code(), Some(0));
    assert_eq!(tangle3(&["equiv", "2,0,2,0,2,0", "0,0,0,0,0,0"]).status.code(), Some(1));
    let o = tangle3(&["validate", "2,0,1,0,1,0"]);
    let e: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(e["error"], "odd_window");
}

#[test]
fn equivalent_neighbours() {
    let o = tangle3(&["neighbors", "2,0,2,0,2,0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let first = v["neighbors"][0]["result"].as_array().unwrap();
    let c: Vec<String> = first.iter().map(|x| x.to_string()).collect();
    let o = tangle3(&["equiv", "2,0,2,0,2,0", &c.join(",")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn random_is_seeded() {
    let args = ["random", "--bound", "8", "--qbound", "4", "--count", "100", "--seed", "42"];
    let a = tangle3(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, tangle3(&args).stdout);
}
