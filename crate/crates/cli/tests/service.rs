use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use ifn_cli::service::{handle, router, Reply};
use serde_json::{json, Value};
use tokio::io::{AsyncReadExt, AsyncWriteExt};
use tower::ServiceExt;

fn post(path: &str, body: Value) -> Reply {
    handle("POST", path, "", body.to_string().as_bytes())
}

fn get(path: &str, query: &str) -> Reply {
    handle("GET", path, query, b"")
}

#[test]
fn compose_endpoint() {
    let r = post("/api/compose", json!({"signature": "ab"}));
    assert_eq!(r.status, 200);
    assert_eq!(
        r.body,
        json!({"nodes": ["a", "b"], "matrix": [[0, 1], [1, 0]], "kappa": 2, "premagic": true, "irreducible": true})
    );
    let r = post("/api/compose", json!({"signature": "ab + cd"}));
    assert_eq!(r.body["irreducible"], false);
    let r = post(
        "/api/compose",
        json!({"signature": "ab + cd", "strict": true}),
    );
    assert_eq!(r.status, 422);
    assert_eq!(r.body["error"], "NotIrreducible");
}

#[test]
fn relate_endpoint() {
    let r = post(
        "/api/relate",
        json!({"sig1": "a + abcd + 3b + bd", "sig2": "3b + a + bcd + abd"}),
    );
    assert_eq!((r.status, r.body), (200, json!({"relation": "equivalent"})));
    let r = post("/api/relate", json!({"sig1": "bca + 2cab", "sig2": "3abc"}));
    assert_eq!(r.body, json!({"relation": "identical"}));
}

#[test]
fn random_endpoint() {
    let r = get("/api/random", "nodes=1&kappa=5&seed=1");
    assert_eq!((r.status, r.body), (200, json!({"signature": "5a"})));
    let a = get("/api/random", "nodes=7&kappa=60&seed=3");
    let b = get("/api/random", "seed=3&kappa=60&nodes=7");
    assert_eq!(a, b);
    let r = get("/api/random", "nodes=4&kappa=3&seed=1");
    assert_eq!(
        (r.status, r.body["error"].clone()),
        (422, json!("InfeasibleKappa"))
    );
    let r = get("/api/random", "nodes=4&kappa=x&seed=1");
    assert_eq!(
        (r.status, r.body["error"].clone()),
        (400, json!("InvalidParameter"))
    );
    let r = get("/api/random", "nodes=4&kappa=9");
    assert_eq!(
        (r.status, r.body["error"].clone()),
        (400, json!("MissingParameter"))
    );
    let r = get("/api/random", "nodes=100000&kappa=100000&seed=1");
    assert_eq!(r.status, 400);
}

#[test]
fn premier_endpoint() {
    let r = get("/api/premier", "complete=2&selfLoops=true");
    assert_eq!(
        r.body,
        json!({"signature": "a + ab + b", "nodes": ["a", "b"], "matrix": [[1, 1], [1, 1]]})
    );
    let r = get("/api/premier", "complete=3");
    assert_eq!(r.body["matrix"], json!([[0, 2, 2], [2, 0, 2], [2, 2, 0]]));
    let r = get("/api/premier", "complete=3&selfLoops=maybe");
    assert_eq!(r.status, 400);
    let r = get("/api/premier", "complete=12");
    assert_eq!(
        (r.status, r.body["error"].clone()),
        (422, json!("CycleBudgetExceeded"))
    );
}

#[test]
fn decompose_endpoint() {
    let example = json!({"nodes": ["a", "b", "c", "d"], "matrix": [[1, 1, 0, 0], [0, 3, 1, 1], [0, 0, 0, 1], [1, 1, 0, 0]]});
    let r = post("/api/decompose", example.clone());
    assert_eq!(r.body, json!({"signature": "a + abcd + 3b + bd"}));
    let mut linear = example;
    linear["method"] = json!("linear");
    assert_eq!(
        post("/api/decompose", linear).body,
        json!({"signature": "a + abd + 3b + bcd"})
    );

    let r = post(
        "/api/decompose",
        json!({"nodes": ["a", "b", "c", "d"], "matrix": [[0, 1, 2, 0], [2, 0, 1, 2], [0, 0, 0, 3], [1, 4, 0, 0]], "method": "linear"}),
    );
    assert_eq!(r.status, 200);
    assert!(r.body.get("signature").is_none());
    assert_eq!(r.body["residual"].as_array().unwrap().len(), 8);
    assert_eq!(r.body["witness"][0], json!({"cycle": "ab", "weight": "-2"}));

    let r = post(
        "/api/decompose",
        json!({"nodes": ["a", "b"], "matrix": [[0, 2], [1, 0]]}),
    );
    assert_eq!(
        (r.status, r.body["error"].clone()),
        (422, json!("NotPremagic"))
    );
    let r = post(
        "/api/decompose",
        json!({"nodes": ["a"], "matrix": [[1]], "method": "magic"}),
    );
    assert_eq!(r.status, 400);
}

#[test]
fn check_endpoint_names_unbalanced_nodes() {
    let r = post(
        "/api/check",
        json!({"nodes": ["a", "b", "c"], "matrix": [[0, 2, 0], [1, 0, 1], [0, 1, 0]]}),
    );
    assert_eq!(r.status, 200);
    assert_eq!(r.body["premagic"], false);
    assert_eq!(r.body["irreducible"], true);
    assert_eq!(r.body["idealFlow"], false);
    assert_eq!(
        r.body["unbalancedNodes"],
        json!([{"node": "a", "outFlow": 2, "inFlow": 1}, {"node": "b", "outFlow": 2, "inFlow": 3}])
    );
}

#[test]
fn markov_and_analyze_endpoints() {
    let r = post(
        "/api/markov",
        json!({"nodes": ["a", "b"], "matrix": [["0", "1"], ["1/2", "1/2"]]}),
    );
    assert_eq!(
        r.body,
        json!({"nodes": ["a", "b"], "matrix": [[0, 1], [1, 1]]})
    );
    let r = post(
        "/api/markov",
        json!({"nodes": ["a", "b"], "matrix": [["0", "1"], ["1/2", "1/3"]]}),
    );
    assert_eq!(
        (r.status, r.body["error"].clone()),
        (422, json!("NotStochastic"))
    );

    let r = post("/api/analyze", json!({"signature": "a + abcd + 3b + bd"}));
    assert_eq!(r.body["kappa"], 10);
    assert_eq!(r.body["probabilityMatrix"][1][1], "3/10");
}

#[test]
fn malformed_requests_are_client_errors() {
    let cases = [
        handle("POST", "/api/compose", "", b"{not json"),
        handle("POST", "/api/compose", "", b"[1,2]"),
        handle("POST", "/api/compose", "", b"\xff\xfe"),
        post("/api/compose", json!({})),
        post("/api/compose", json!({"signature": 5})),
        post("/api/compose", json!({"signature": "ab +"})),
        post("/api/compose", json!({"signature": "ab", "strict": "yes"})),
        post("/api/analyze", json!({"signature": ""})),
        post("/api/relate", json!({"sig1": "ab"})),
        post("/api/check", json!({"nodes": ["a"], "matrix": [[1, 2]]})),
        post("/api/check", json!({"nodes": ["a"], "matrix": [[-1]]})),
        post("/api/markov", json!({"nodes": "a", "matrix": [[1]]})),
    ];
    for r in cases {
        assert_eq!(r.status, 400, "{:?}", r.body);
        assert!(r.body["error"].is_string());
        assert!(r.body["detail"].is_string());
    }
    assert_eq!(get("/api/nothing", "").status, 404);
    assert_eq!(handle("GET", "/api/compose", "", b"").status, 405);
    assert_eq!(handle("POST", "/api/random", "", b"{}").status, 405);
}

async fn send(request: Request<Body>) -> (StatusCode, String, Option<String>) {
    let response = router().oneshot(request).await.unwrap();
    let status = response.status();
    let content_type = response
        .headers()
        .get("content-type")
        .map(|v| v.to_str().unwrap().to_owned());
    let bytes = response.into_body().collect().await.unwrap().to_bytes();
    (
        status,
        String::from_utf8(bytes.to_vec()).unwrap(),
        content_type,
    )
}

#[tokio::test]
async fn router_serves_canonical_json() {
    let request = Request::post("/api/compose")
        .header("content-type", "application/json")
        .body(Body::from(r#"{"signature":"ab"}"#))
        .unwrap();
    let (status, body, content_type) = send(request).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(content_type.as_deref(), Some("application/json"));
    assert_eq!(
        body,
        "{\"irreducible\":true,\"kappa\":2,\"matrix\":[[0,1],[1,0]],\"nodes\":[\"a\",\"b\"],\"premagic\":true}\n"
    );

    let request = Request::get("/api/random?nodes=1&kappa=5&seed=1")
        .body(Body::empty())
        .unwrap();
    assert_eq!(send(request).await.1, "{\"signature\":\"5a\"}\n");

    let request = Request::post("/api/compose")
        .body(Body::from("garbage"))
        .unwrap();
    assert_eq!(send(request).await.0, StatusCode::BAD_REQUEST);
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn concurrent_requests_match_sequential_ones() {
    let signatures: Vec<String> = (0..24)
        .map(|i| {
            handle(
                "GET",
                "/api/random",
                &format!("nodes=6&kappa=40&seed={i}"),
                b"",
            )
            .body["signature"]
                .as_str()
                .unwrap()
                .to_owned()
        })
        .collect();
    let sequential: Vec<Reply> = signatures
        .iter()
        .map(|s| post("/api/analyze", json!({"signature": s})))
        .collect();
    let tasks: Vec<_> = signatures
        .iter()
        .cloned()
        .map(|s| {
            tokio::spawn(async move {
                let request = Request::post("/api/analyze")
                    .body(Body::from(json!({"signature": s}).to_string()))
                    .unwrap();
                send(request).await.1
            })
        })
        .collect();
    for (task, expected) in tasks.into_iter().zip(sequential) {
        let body: Value = serde_json::from_str(&task.await.unwrap()).unwrap();
        assert_eq!(body, expected.body);
    }
}

#[tokio::test]
async fn serves_over_tcp() {
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(async move { axum::serve(listener, router()).await.unwrap() });

    let mut stream = tokio::net::TcpStream::connect(addr).await.unwrap();
    let body = r#"{"sig1":"a","sig2":"b"}"#;
    let request = format!(
        "POST /api/relate HTTP/1.1\r\nHost: {addr}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    );
    stream.write_all(request.as_bytes()).await.unwrap();
    let mut response = String::new();
    stream.read_to_string(&mut response).await.unwrap();
    assert!(response.starts_with("HTTP/1.1 200"), "{response}");
    assert!(
        response.ends_with("{\"relation\":\"distinct\"}\n"),
        "{response}"
    );
}
