#![allow(dead_code)]

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use serde_json::{json, Value};
use wayfinder_cli::api::{router, Store};

/// Serves a fresh store on an ephemeral port for the rest of the process.
pub async fn spawn_server() -> (String, Arc<Store>) {
    let store = Arc::new(Store::new());
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr: SocketAddr = listener.local_addr().unwrap();
    let app = router(store.clone(), None);
    tokio::spawn(async move { axum::serve(listener, app).await.unwrap() });
    (format!("http://{addr}"), store)
}

pub struct Step {
    pub method: &'static str,
    /// `{id}` stands for the session id.
    pub path: &'static str,
    pub body: Option<Value>,
}

fn step(method: &'static str, path: &'static str, body: Option<Value>) -> Step {
    Step { method, path, body }
}

fn mv(m: Value) -> Step {
    step("POST", "/sessions/{id}/moves", Some(json!({ "move": m })))
}

fn select(n: &str) -> Step {
    mv(json!({"kind": "select_current", "node": n}))
}

fn label(n: &str, dist: f64, last: Option<&str>) -> Step {
    match last {
        Some(l) => mv(json!({"kind": "set_label", "node": n, "dist": dist, "last": l})),
        None => mv(json!({"kind": "set_label", "node": n, "dist": dist})),
    }
}

fn shade(n: &str) -> Step {
    mv(json!({"kind": "shade_current", "node": n}))
}

/// A full worksheet on the six-node example network from origin A, with a
/// few wrong turns and error cases along the way.
pub fn fig2_script() -> Vec<Step> {
    vec![
        step(
            "POST",
            "/sessions",
            Some(json!({"graph": wayfinder::fixtures::FIG2_EDGES, "origin": "A"})),
        ),
        step("GET", "/graphs/fixtures", None),
        step("GET", "/sessions/nonexistent", None),
        select("B"),
        select("C"),
        label("B", 4.0, Some("A")),
        shade("C"),
        mv(json!({"kind": "set_label", "node": "B"})),
        label("A", 0.0, None),
        label("B", 3.0, Some("C")),
        label("D", 10.0, Some("C")),
        label("E", 12.0, Some("C")),
        shade("C"),
        step("GET", "/sessions/{id}", None),
        select("B"),
        label("A", 0.0, None),
        label("C", 2.0, Some("A")),
        label("D", 8.0, Some("B")),
        shade("B"),
        select("D"),
        label("B", 3.0, Some("C")),
        label("C", 2.0, Some("A")),
        label("E", 10.0, Some("D")),
        label("F", 14.0, Some("D")),
        shade("D"),
        select("E"),
        label("C", 2.0, Some("A")),
        label("D", 8.0, Some("B")),
        label("F", 13.0, Some("E")),
        shade("E"),
        select("F"),
        label("D", 8.0, Some("B")),
        label("E", 10.0, Some("D")),
        shade("F"),
        select("A"),
        mv(json!({"kind": "finish"})),
        mv(json!({"kind": "finish"})),
        step("GET", "/sessions/{id}/solution", None),
    ]
}

/// Runs `script` and renders every exchange as text, with the session id
/// replaced by `{id}`. Response bodies are kept byte for byte.
pub async fn transcript(base: &str, script: &[Step]) -> String {
    let client = reqwest::Client::new();
    let mut id: Option<String> = None;
    let mut out = String::new();
    for st in script {
        let path = match &id {
            Some(id) => st.path.replace("{id}", id),
            None => st.path.to_string(),
        };
        let mut req = match st.method {
            "GET" => client.get(format!("{base}{path}")),
            _ => client.post(format!("{base}{path}")),
        };
        let body = st.body.as_ref().map(|b| serde_json::to_string(b).unwrap());
        if let Some(b) = &body {
            req = req
                .header("content-type", "application/json")
                .body(b.clone());
        }
        let resp = req.send().await.unwrap();
        let status = resp.status().as_u16();
        let text = resp.text().await.unwrap();
        if id.is_none() && status == 201 {
            let v: Value = serde_json::from_str(&text).unwrap();
            id = Some(v["id"].as_str().unwrap().to_string());
        }
        let text = match &id {
            Some(id) => text.replace(id.as_str(), "{id}"),
            None => text,
        };
        out.push_str(&format!(">>> {} {}\n", st.method, st.path));
        if let Some(b) = body {
            out.push_str(&b);
            out.push('\n');
        }
        out.push_str(&format!("<<< {status}\n{text}\n\n"));
    }
    out
}

pub fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/fig2_session.transcript")
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}
